//! Runs the branching methods, spreading the Steinberg sums over a rayon pool.

use std::collections::BTreeMap;

use kmbranch_core::branching::{
    self, combine_methods, dotted_dominant_candidates, signed_path_sums, steinberg_keys, MethodValues,
    Steinberg,
};
use kmbranch_core::{AffineAlgebra, BranchTable, Error, Method, WindingData, Weight};
use rayon::prelude::*;

use crate::error::CliError;

/// Worker count from `KMBRANCH_THREADS`; `None` leaves rayon's default.
pub fn thread_count() -> Result<Option<usize>, CliError> {
    match std::env::var("KMBRANCH_THREADS") {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!("KMBRANCH_THREADS must be a positive integer, got {s:?}"))),
        },
        Err(_) => Ok(None),
    }
}

fn pool() -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count()? {
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Usage(e.to_string()))
}

/// Steinberg coefficients at `keys`, one context (and partition-function
/// cache) per worker. Results are keyed, so order does not depend on
/// scheduling.
pub fn steinberg_values(
    algebra: &AffineAlgebra,
    lambda: &Weight,
    winding: &WindingData,
    keys: &[Weight],
) -> Result<BTreeMap<Weight, u128>, Error> {
    Steinberg::new(algebra, winding)?;
    keys.par_iter()
        .map_init(
            || Steinberg::new(algebra, winding).expect("context was built once already"),
            |st, key| st.coefficient(lambda, key).map(|v| (key.clone(), v)),
        )
        .collect()
}

pub fn branch(
    algebra: &AffineAlgebra,
    lambda: &Weight,
    u: i64,
    depth: u32,
    margin: u32,
    method: Option<Method>,
) -> Result<BranchTable, CliError> {
    let winding = WindingData::new(algebra, u)?;
    let table = pool()?.install(|| run(algebra, lambda, &winding, depth, margin, method))?;
    Ok(table)
}

fn run(
    algebra: &AffineAlgebra,
    lambda: &Weight,
    winding: &WindingData,
    depth: u32,
    margin: u32,
    method: Option<Method>,
) -> Result<BranchTable, Error> {
    match method {
        Some(Method::Paths) => branching::branch_via_paths(algebra, lambda, winding, depth),
        Some(Method::Steinberg) => {
            let keys = dotted_dominant_candidates(algebra, lambda, winding, depth)?;
            let counts = steinberg_values(algebra, lambda, winding, &keys)?;
            BranchTable::from_counts(algebra, winding, lambda, depth, 0, Method::Steinberg, counts)
        }
        Some(Method::Signed) => branching::branch_signed_paths(algebra, lambda, winding, depth, margin),
        Some(Method::Peel) => branching::peel_oracle(algebra, lambda, winding, depth, margin),
        None => {
            let (paths, (signed, peel)) = rayon::join(
                || branching::branch_via_paths(algebra, lambda, winding, depth),
                || {
                    rayon::join(
                        || signed_path_sums(algebra, lambda, winding, depth, margin),
                        || branching::peel_oracle(algebra, lambda, winding, depth, margin),
                    )
                },
            );
            let mut values = MethodValues {
                paths: paths?.to_map(),
                steinberg: BTreeMap::new(),
                signed: signed?,
                peel: peel?.to_map(),
            };
            let keys = steinberg_keys(algebra, lambda, winding, depth, &values)?;
            values.steinberg = steinberg_values(algebra, lambda, winding, &keys)?;
            combine_methods(algebra, lambda, winding, depth, margin, &values)
        }
    }
}
