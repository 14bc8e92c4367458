//! Positive roots with multiplicities and the generalized Kostant partition
//! function.
//!
//! Everything here works on integer coordinates over the simple roots. The
//! dotted root system of 𝔤[u] has the same Cartan matrix as 𝔤, so the same
//! catalogue and partition function serve both once a weight is expressed in
//! the matching coordinates.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::AffineAlgebra;
use crate::error::{Error, Result};
use crate::rational::{rat, to_i64, Rat};
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootWithMult {
    pub root: Weight,
    /// Coordinates over the simple roots; `coords[0]` is the δ-depth.
    pub coords: Vec<i64>,
    pub mult: u32,
    pub is_imaginary: bool,
}

/// Supplies the positive roots of an affine algebra, with multiplicities,
/// ordered by δ-depth.
pub trait RootSystem {
    fn positive_roots(&self, algebra: &AffineAlgebra, max_depth: u32) -> Result<Vec<RootWithMult>>;
}

/// Built-in catalogue for untwisted types `X_l^{(1)}`: real roots `β + nδ`
/// of multiplicity one and imaginary roots `nδ` of multiplicity `l`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Untwisted;

impl RootSystem for Untwisted {
    fn positive_roots(&self, algebra: &AffineAlgebra, max_depth: u32) -> Result<Vec<RootWithMult>> {
        let finite = finite_positive_roots(algebra.cartan());
        if !is_untwisted(algebra, &finite) {
            return Err(Error::TwistedUnsupported);
        }
        let n = algebra.rank();
        let l = u32::try_from(n - 1).map_err(|_| Error::Overflow)?;
        let make = |coords: Vec<i64>, mult: u32, is_imaginary: bool| RootWithMult {
            root: algebra.from_root_coords(&coords.iter().map(|&x| rat(x)).collect::<Vec<_>>()),
            coords,
            mult,
            is_imaginary,
        };
        let lift = |beta: &[i64], sign: i64, depth: i64| -> Vec<i64> {
            let mut c: Vec<i64> = algebra.a().iter().map(|&a| a * depth).collect();
            for (x, b) in c[1..].iter_mut().zip(beta) {
                *x += sign * b;
            }
            c
        };
        let mut out: Vec<RootWithMult> = finite.iter().map(|b| make(lift(b, 1, 0), 1, false)).collect();
        for depth in 1..=i64::from(max_depth) {
            for sign in [-1, 1] {
                out.extend(finite.iter().map(|b| make(lift(b, sign, depth), 1, false)));
            }
            out.push(make(lift(&vec![0; n - 1], 1, depth), l, true));
        }
        Ok(out)
    }
}

/// Positive roots of the finite root system on nodes `1..=l`, as coordinates
/// over `α_1, …, α_l`, sorted by height then lexicographically.
pub fn finite_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let l = cartan.len() - 1;
    let unit = |j: usize| {
        let mut v = vec![0i64; l];
        v[j] = 1;
        v
    };
    let pairing = |beta: &[i64], j: usize| -> i64 { (0..l).map(|i| beta[i] * cartan[j + 1][i + 1]).sum() };
    let mut all: BTreeSet<Vec<i64>> = (0..l).map(unit).collect();
    let mut layer: Vec<Vec<i64>> = (0..l).map(unit).collect();
    let mut out = layer.clone();
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for beta in &layer {
            for j in 0..l {
                // α_j-string through β: β − pα_j, …, β + qα_j with p − q = ⟨β, α_j^∨⟩
                let mut p = 0;
                loop {
                    let mut down = beta.clone();
                    down[j] -= p + 1;
                    if all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let q = p - pairing(beta, j);
                if q > 0 {
                    let mut up = beta.clone();
                    up[j] += 1;
                    next.insert(up);
                }
            }
        }
        layer = next.into_iter().filter(|b| !all.contains(b)).collect();
        all.extend(layer.iter().cloned());
        out.extend(layer.iter().cloned());
    }
    out
}

/// `a_0 = 1` and `α_0 = δ − θ` for the highest root `θ` of the finite part.
fn is_untwisted(algebra: &AffineAlgebra, finite: &[Vec<i64>]) -> bool {
    algebra.a()[0] == 1 && finite.last().map(Vec::as_slice) == Some(&algebra.a()[1..])
}

/// The untwisted catalogue up to `max_depth`.
pub fn positive_roots_up_to_depth(algebra: &AffineAlgebra, max_depth: u32) -> Result<Vec<RootWithMult>> {
    Untwisted.positive_roots(algebra, max_depth)
}

/// Memoizing evaluator of the partition function for one algebra.
///
/// Holds mutable memo state, so each worker should own its own instance.
pub struct PartitionFunction {
    algebra: AffineAlgebra,
    roots: Box<dyn RootSystem + Send + Sync>,
    catalogue: Vec<RootWithMult>,
    catalogue_depth: Option<u32>,
    memo: BTreeMap<Vec<i64>, u128>,
}

impl PartitionFunction {
    pub fn new(algebra: &AffineAlgebra) -> Result<PartitionFunction> {
        PartitionFunction::with_roots(algebra, Untwisted)
    }

    pub fn with_roots(algebra: &AffineAlgebra, roots: impl RootSystem + Send + Sync + 'static) -> Result<PartitionFunction> {
        let mut pf = PartitionFunction {
            algebra: algebra.clone(),
            roots: Box::new(roots),
            catalogue: Vec::new(),
            catalogue_depth: None,
            memo: BTreeMap::new(),
        };
        pf.ensure_depth(0)?;
        Ok(pf)
    }

    fn ensure_depth(&mut self, depth: u32) -> Result<()> {
        if self.catalogue_depth.is_some_and(|d| d >= depth) {
            return Ok(());
        }
        self.catalogue = self.roots.positive_roots(&self.algebra, depth)?;
        self.catalogue_depth = Some(depth);
        Ok(())
    }

    /// `𝒫(ζ)` for a weight of 𝔤; zero off the nonnegative integer root lattice.
    pub fn value(&mut self, zeta: &Weight) -> Result<u128> {
        let Some(k) = self.algebra.root_coords(zeta) else { return Ok(0) };
        self.value_at_rational(&k)
    }

    /// `𝒫` at rational simple-root coordinates.
    pub fn value_at_rational(&mut self, k: &[Rat]) -> Result<u128> {
        let mut ints = Vec::with_capacity(k.len());
        for x in k {
            match to_i64(x) {
                Some(v) if v >= 0 => ints.push(v),
                _ => return Ok(0),
            }
        }
        self.count(&ints)
    }

    /// `𝒫` at integer simple-root coordinates.
    pub fn count(&mut self, k: &[i64]) -> Result<u128> {
        if k.len() != self.algebra.rank() {
            return Err(Error::DimensionMismatch { expected: self.algebra.rank(), found: k.len() });
        }
        if k.iter().any(|&x| x < 0) {
            return Ok(0);
        }
        if let Some(&v) = self.memo.get(k) {
            return Ok(v);
        }
        let depth = u32::try_from(k[0]).map_err(|_| Error::Overflow)?;
        self.ensure_depth(depth)?;
        let table = dp_box(k, self.catalogue.iter().filter(|r| r.coords[0] <= k[0]))?;
        let value = *table.last().expect("box contains the target");
        for_each_in_box(k, |idx, v| {
            self.memo.insert(v.to_vec(), table[idx]);
        });
        Ok(value)
    }
}

/// Counts multisets of roots (with multiplicity copies) summing to every
/// vector of the box `[0, k_0] × … × [0, k_l]`, in row-major order.
fn dp_box<'a>(k: &[i64], roots: impl Iterator<Item = &'a RootWithMult>) -> Result<Vec<u128>> {
    let dims: Vec<usize> = k.iter().map(|&x| x as usize + 1).collect();
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let size = strides[0] * dims[0];
    let mut table = vec![0u128; size];
    table[0] = 1;
    for r in roots {
        if r.coords.iter().zip(k).any(|(c, b)| c > b) {
            continue;
        }
        let offset: usize = r.coords.iter().zip(&strides).map(|(&c, s)| c as usize * s).sum();
        for _ in 0..r.mult {
            let mut overflow = false;
            for_each_in_box(k, |idx, v| {
                if v.iter().zip(&r.coords).all(|(x, c)| x >= c) {
                    match table[idx].checked_add(table[idx - offset]) {
                        Some(s) => table[idx] = s,
                        None => overflow = true,
                    }
                }
            });
            if overflow {
                return Err(Error::Overflow);
            }
        }
    }
    Ok(table)
}

/// Visits every integer vector of the box in row-major order with its flat index.
fn for_each_in_box(k: &[i64], mut f: impl FnMut(usize, &[i64])) {
    let mut v = vec![0i64; k.len()];
    let mut idx = 0;
    loop {
        f(idx, &v);
        idx += 1;
        let mut pos = k.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if v[pos] < k[pos] {
                v[pos] += 1;
                break;
            }
            v[pos] = 0;
        }
    }
}

/// `𝒫(ζ)` with a fresh memo.
pub fn partition_value(algebra: &AffineAlgebra, zeta: &Weight) -> Result<u128> {
    PartitionFunction::new(algebra)?.value(zeta)
}
