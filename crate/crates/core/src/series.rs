//! Finitely supported formal sums `Σ c_μ e^μ`, truncated by δ-depth.

use alloc::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::weight::Weight;

/// Coefficients are known for keys at most `depth` below the reference
/// d-value `top_d`; deeper keys are never stored. Zero coefficients are
/// never stored either.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries {
    top_d: Rat,
    depth: u32,
    terms: BTreeMap<Weight, i128>,
}

impl FormalSeries {
    pub fn new(top: &Weight, depth: u32) -> FormalSeries {
        FormalSeries { top_d: top.d().clone(), depth, terms: BTreeMap::new() }
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn top_d(&self) -> &Rat {
        &self.top_d
    }

    /// δ-depth of `mu` below the reference.
    pub fn depth_of(&self, mu: &Weight) -> Rat {
        &self.top_d - mu.d()
    }

    pub fn within(&self, mu: &Weight, depth: u32) -> bool {
        self.depth_of(mu) <= Rat::from_integer(depth.into())
    }

    pub fn coeff(&self, mu: &Weight) -> i128 {
        self.terms.get(mu).copied().unwrap_or(0)
    }

    /// Adds `c·e^μ`; terms beyond the truncation depth are dropped.
    pub fn add_term(&mut self, mu: Weight, c: i128) -> Result<()> {
        if c == 0 || !self.within(&mu, self.depth) {
            return Ok(());
        }
        let entry = self.terms.entry(mu);
        match entry {
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().checked_add(c).ok_or(Error::Overflow)?;
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &i128)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Product of two truncated series; the result is exact to the smaller depth.
    pub fn mul(&self, other: &FormalSeries) -> Result<FormalSeries> {
        let depth = self.depth.min(other.depth);
        let mut out = FormalSeries { top_d: &self.top_d + &other.top_d, depth, terms: BTreeMap::new() };
        for (x, cx) in &self.terms {
            for (y, cy) in &other.terms {
                let c = cx.checked_mul(*cy).ok_or(Error::Overflow)?;
                out.add_term(x + y, c)?;
            }
        }
        Ok(out)
    }

    /// Keys where the two series differ, restricted to depth `depth`.
    pub fn differences(&self, other: &FormalSeries, depth: u32) -> BTreeMap<Weight, (i128, i128)> {
        self.terms
            .keys()
            .chain(other.terms.keys())
            .filter(|k| self.within(k, depth))
            .filter_map(|k| {
                let (a, b) = (self.coeff(k), other.coeff(k));
                (a != b).then(|| (k.clone(), (a, b)))
            })
            .collect()
    }
}
