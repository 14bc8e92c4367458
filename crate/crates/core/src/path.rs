//! Piecewise-linear paths and the root operators `e_α`, `f_α`.
//!
//! A path is stored as its sequence of segment vectors in canonical form: no
//! zero segments and no two consecutive segments pointing the same way. Two
//! paths are reparametrizations of each other exactly when their canonical
//! forms coincide, so `Path` equality is equality of the underlying classes.
//!
//! The operators cut a path where `h_α(t) = ⟨π(t), α^∨⟩` meets the levels `Q`
//! and `Q + 1`, reflect the middle piece and glue the pieces back. Cuts are
//! made exactly by inserting the crossing points as extra breakpoints first;
//! after that every `p`, `q`, `x`, `y` of the construction is a breakpoint.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{integral_part, Rat};
use crate::weight::Weight;
use crate::weyl::{reflect_unchecked, Basis};
use crate::winding::WindingData;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    rank: usize,
    segments: Vec<Weight>,
}

impl Path {
    /// The constant path at 0.
    pub fn empty(rank: usize) -> Path {
        Path { rank, segments: Vec::new() }
    }

    /// The straight line from 0 to `lambda`.
    pub fn straight(lambda: &Weight) -> Path {
        Path::from_segments(lambda.rank(), core::iter::once(lambda.clone()))
    }

    /// Builds the canonical path with the given segment vectors.
    pub fn from_segments(rank: usize, segments: impl IntoIterator<Item = Weight>) -> Path {
        let mut out: Vec<Weight> = Vec::new();
        for s in segments {
            debug_assert_eq!(s.rank(), rank);
            if s.is_zero() {
                continue;
            }
            match out.last_mut() {
                Some(prev) if s.positive_multiple_of(prev).is_some() => *prev = &*prev + &s,
                _ => out.push(s),
            }
        }
        Path { rank, segments: out }
    }

    /// Canonical path through the given breakpoints, which start at 0.
    pub fn from_breakpoints(points: &[Weight]) -> Result<Path> {
        let Some(first) = points.first() else {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        };
        if !first.is_zero() {
            return Err(Error::Parse(alloc::string::String::from("paths start at 0")));
        }
        let rank = first.rank();
        for p in points {
            p.check_rank(rank)?;
        }
        Ok(Path::from_segments(rank, points.windows(2).map(|w| &w[1] - &w[0])))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn segments(&self) -> &[Weight] {
        &self.segments
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// `π(1)`.
    pub fn endpoint(&self) -> Weight {
        self.segments.iter().fold(Weight::zero(self.rank), |acc, s| &acc + s)
    }

    /// `0 = b_0, b_1, …, b_r = π(1)`.
    pub fn breakpoints(&self) -> Vec<Weight> {
        let mut pts = Vec::with_capacity(self.segments.len() + 1);
        let mut cur = Weight::zero(self.rank);
        pts.push(cur.clone());
        for s in &self.segments {
            cur = &cur + s;
            pts.push(cur.clone());
        }
        pts
    }

    /// `π_1 * π_2`.
    pub fn concat(&self, other: &Path) -> Path {
        Path::from_segments(self.rank, self.segments.iter().chain(&other.segments).cloned())
    }

    /// `s_i(π)(t) = s_i(π(t))`.
    pub fn reflect(&self, basis: &Basis, i: usize) -> Result<Path> {
        basis.check_index(i)?;
        Ok(Path::from_segments(
            self.rank,
            self.segments.iter().map(|s| reflect_unchecked(basis, i, s)),
        ))
    }

    /// The image lies in the dominant chamber of `basis`. Checking the
    /// breakpoints suffices since the chamber is convex.
    pub fn is_dominant_for(&self, basis: &Basis) -> bool {
        self.breakpoints().iter().all(|b| basis.is_dominant(b))
    }

    pub fn h_profile(&self, basis: &Basis, i: usize) -> Result<HProfile> {
        basis.check_index(i)?;
        let values: Vec<Rat> = self.breakpoints().iter().map(|b| b.pair(basis.coroot(i))).collect();
        Ok(HProfile::new(values))
    }

    /// The lowering operator `f_i`; `None` stands for the zero path.
    pub fn f(&self, basis: &Basis, i: usize) -> Result<Option<Path>> {
        let prof = self.h_profile(basis, i)?;
        if prof.f_string_length().is_zero() {
            return Ok(None);
        }
        let q = prof.q_min.clone();
        let upper = &q + Rat::one();
        let (pts, h) = self.refined(basis, i, &[&q, &upper]);
        let p = h.iter().rposition(|v| *v == q).expect("Q is attained");
        let x = p + h[p..].iter().position(|v| *v == upper).expect("Q + 1 is attained after p");
        let alpha = basis.root(i);
        let moved: Vec<Weight> = pts
            .iter()
            .zip(&h)
            .enumerate()
            .map(|(k, (b, hv))| {
                if k <= p {
                    b.clone()
                } else if k <= x {
                    b.add_scaled(&-(hv - &q), alpha)
                } else {
                    b.add_scaled(&-Rat::one(), alpha)
                }
            })
            .collect();
        Path::from_breakpoints(&moved).map(Some)
    }

    /// The raising operator `e_i`; `None` stands for the zero path.
    pub fn e(&self, basis: &Basis, i: usize) -> Result<Option<Path>> {
        let prof = self.h_profile(basis, i)?;
        if prof.e_string_length().is_zero() {
            return Ok(None);
        }
        let q = prof.q_min.clone();
        let upper = &q + Rat::one();
        let (pts, h) = self.refined(basis, i, &[&q, &upper]);
        let qi = h.iter().position(|v| *v == q).expect("Q is attained");
        let y = h[..qi].iter().rposition(|v| *v == upper).expect("Q + 1 is attained before q");
        let alpha = basis.root(i);
        let moved: Vec<Weight> = pts
            .iter()
            .zip(&h)
            .enumerate()
            .map(|(k, (b, hv))| {
                if k <= y {
                    b.clone()
                } else if k <= qi {
                    b.add_scaled(&-(hv - &upper), alpha)
                } else {
                    b.add_scaled(&Rat::one(), alpha)
                }
            })
            .collect();
        Path::from_breakpoints(&moved).map(Some)
    }

    /// `f_i^n`, or `None` as soon as an application vanishes.
    pub fn f_pow(&self, basis: &Basis, i: usize, n: usize) -> Result<Option<Path>> {
        let mut cur = self.clone();
        for _ in 0..n {
            match cur.f(basis, i)? {
                Some(p) => cur = p,
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }

    pub fn e_pow(&self, basis: &Basis, i: usize, n: usize) -> Result<Option<Path>> {
        let mut cur = self.clone();
        for _ in 0..n {
            match cur.e(basis, i)? {
                Some(p) => cur = p,
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }

    /// Breakpoints with every crossing of the given h-levels inserted, and
    /// the h-values at them.
    fn refined(&self, basis: &Basis, i: usize, levels: &[&Rat]) -> (Vec<Weight>, Vec<Rat>) {
        let h_i = basis.coroot(i);
        let bps = self.breakpoints();
        let mut pts = Vec::with_capacity(bps.len() + 4);
        let mut hs = Vec::with_capacity(bps.len() + 4);
        pts.push(bps[0].clone());
        hs.push(bps[0].pair(h_i));
        for (seg, end) in self.segments.iter().zip(&bps[1..]) {
            let start = pts.last().expect("nonempty").clone();
            let h0 = hs.last().expect("nonempty").clone();
            let slope = seg.pair(h_i);
            if !slope.is_zero() {
                let mut cuts: Vec<Rat> = levels
                    .iter()
                    .map(|v| (*v - &h0) / &slope)
                    .filter(|t| t.is_positive() && *t < Rat::one())
                    .collect();
                cuts.sort();
                cuts.dedup();
                for t in cuts {
                    let pt = start.add_scaled(&t, seg);
                    hs.push(pt.pair(h_i));
                    pts.push(pt);
                }
            }
            hs.push(end.pair(h_i));
            pts.push(end.clone());
        }
        (pts, hs)
    }
}

/// Values of `h_α` at the breakpoints of a path, with the derived minimum data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HProfile {
    pub values: Vec<Rat>,
    /// Minimum of `h_α` over the whole path.
    pub min: Rat,
    /// `Q`: the least integer attained by `h_α`.
    pub q_min: Rat,
}

impl HProfile {
    fn new(values: Vec<Rat>) -> HProfile {
        let min = values.iter().min().cloned().unwrap_or_else(Rat::zero);
        let q_min = min.ceil();
        HProfile { values, min, q_min }
    }

    pub fn end(&self) -> &Rat {
        self.values.last().expect("at least the origin")
    }

    /// `−Q`: how often `e_α` applies before vanishing.
    pub fn e_string_length(&self) -> Rat {
        -self.q_min.clone()
    }

    /// `[h_α(1) − Q]`: how often `f_α` applies before vanishing.
    pub fn f_string_length(&self) -> Rat {
        integral_part(&(self.end() - &self.q_min)).max(Rat::zero())
    }
}

/// Paths reachable from the straight path to `lambda` by plain `f_i`, with
/// endpoints at δ-depth at most `max_depth` below `lambda`.
///
/// `f_0` lowers the depth by one and the other `f_i` keep it, so cutting at
/// `max_depth` drops nothing that could lead back inside.
pub fn enumerate_ls_paths(basis: &Basis, lambda: &Weight, max_depth: u32) -> Result<BTreeSet<Path>> {
    lambda.check_rank(basis.rank())?;
    if !basis.is_dominant_integral(lambda) {
        return Err(Error::NotDominantIntegral);
    }
    let limit = Rat::from_integer(max_depth.into());
    let mut seen = BTreeSet::new();
    let start = Path::straight(lambda);
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(path) = queue.pop_front() {
        for i in 0..basis.rank() {
            let Some(child) = path.f(basis, i)? else { continue };
            if lambda.d() - child.endpoint().d() > limit || seen.contains(&child) {
                continue;
            }
            seen.insert(child.clone());
            queue.push_back(child);
        }
    }
    Ok(seen)
}

/// Every breakpoint satisfies `⟨b, ḣ_i⟩ ≥ 0`.
pub fn is_dominant_path(winding: &WindingData, path: &Path) -> bool {
    path.breakpoints()
        .iter()
        .all(|b| winding.coroots().iter().all(|h| !b.pair(h).is_negative()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AffineAlgebra;
    use crate::rational::{rat, ratio};
    use alloc::vec;

    fn setup() -> (AffineAlgebra, Basis) {
        let alg = AffineAlgebra::affine_a(1).unwrap();
        let b = Basis::plain(&alg);
        (alg, b)
    }

    #[test]
    fn canonical_form_merges_and_drops() {
        let lam = Weight::from_ints(&[1, 0], 0);
        let half = lam.scale(&ratio(1, 2));
        let z = Weight::zero(2);
        assert_eq!(Path::from_breakpoints(&[z.clone(), half.clone(), lam.clone()]).unwrap(), Path::straight(&lam));
        assert_eq!(Path::from_breakpoints(&[z.clone(), lam.clone(), lam.clone()]).unwrap(), Path::straight(&lam));
        let a1 = Weight::from_ints(&[-2, 2], 0);
        let p = Path::from_breakpoints(&[z.clone(), lam.clone(), &lam - &a1]).unwrap();
        assert_eq!(p.segments().len(), 2);
        assert!(Path::straight(&z).is_empty());
        assert_eq!(Path::straight(&z).endpoint(), z);
    }

    #[test]
    fn concatenation() {
        let lam = Weight::from_ints(&[1, 0], 0);
        let mu = Weight::from_ints(&[0, 1], 0);
        let pl = Path::straight(&lam);
        assert_eq!(pl.concat(&Path::straight(&mu)).endpoint(), &lam + &mu);
        assert_eq!(pl.concat(&Path::empty(2)), pl);
        assert_eq!(pl.concat(&pl), Path::straight(&lam.scale(&rat(2))));
    }

    #[test]
    fn reflection_of_paths() {
        let (alg, b) = setup();
        let l1 = alg.fundamental_weight(1).unwrap();
        let p = Path::straight(&l1);
        let r = p.reflect(&b, 1).unwrap();
        assert_eq!(r, Path::straight(&(&l1 - &alg.simple_root(1).unwrap())));
        assert_eq!(r.reflect(&b, 1).unwrap(), p);
        assert!(p.reflect(&b, 5).is_err());
    }

    #[test]
    fn f_on_straight_paths() {
        let (alg, b) = setup();
        let l1 = alg.fundamental_weight(1).unwrap();
        let a0 = alg.simple_root(0).unwrap();
        let a1 = alg.simple_root(1).unwrap();
        let p = Path::straight(&l1);
        let low = &l1 - &a1;
        assert_eq!(p.f(&b, 1).unwrap(), Some(Path::straight(&low)));
        assert_eq!(p.f(&b, 0).unwrap(), None);

        let half = low.scale(&ratio(1, 2));
        let two = Path::straight(&low).f(&b, 0).unwrap().unwrap();
        assert_eq!(two.segments(), &[&half - &a0, half.clone()]);
        assert_eq!(two.endpoint(), &low - &a0);
        assert_eq!(two.e(&b, 0).unwrap(), Some(Path::straight(&low)));
    }

    #[test]
    fn e_examples() {
        let (alg, b) = setup();
        let l1 = alg.fundamental_weight(1).unwrap();
        for lam in [l1.clone(), alg.fundamental_weight(0).unwrap(), alg.rho()] {
            for i in 0..2 {
                assert_eq!(Path::straight(&lam).e(&b, i).unwrap(), None);
            }
        }
        let down = Path::straight(&l1).f(&b, 1).unwrap().unwrap();
        assert_eq!(down.e(&b, 1).unwrap(), Some(Path::straight(&l1)));
    }

    #[test]
    fn small_ls_sets() {
        let (alg, b) = setup();
        let l1 = alg.fundamental_weight(1).unwrap();
        let set = enumerate_ls_paths(&b, &l1, 0).unwrap();
        let expected: BTreeSet<Path> =
            [Path::straight(&l1), Path::straight(&(&l1 - &alg.simple_root(1).unwrap()))].into();
        assert_eq!(set, expected);

        let l0 = alg.fundamental_weight(0).unwrap();
        assert_eq!(enumerate_ls_paths(&b, &l0, 0).unwrap(), [Path::straight(&l0)].into());
        assert_eq!(enumerate_ls_paths(&b, &Weight::zero(2), 3).unwrap(), [Path::empty(2)].into());
        assert_eq!(
            enumerate_ls_paths(&b, &Weight::from_ints(&[-1, 1], 0), 1),
            Err(Error::NotDominantIntegral)
        );
    }

    #[test]
    fn dominance_for_winding() {
        let (alg, _) = setup();
        let w = WindingData::new(&alg, 2).unwrap();
        assert!(is_dominant_path(&w, &Path::empty(2)));
        let l0 = alg.fundamental_weight(0).unwrap();
        assert!(is_dominant_path(&w, &Path::straight(&l0)));
        let l1 = alg.fundamental_weight(1).unwrap();
        let low = &l1 - &alg.simple_root(1).unwrap();
        assert!(!is_dominant_path(&w, &Path::straight(&low)));
    }

    #[test]
    fn non_integral_minimum_uses_least_attained_integer() {
        let (_, b) = setup();
        // h_1 runs 0 → −1/2 → 3/2
        let p = Path::from_segments(2, [Weight::new(vec![rat(0), ratio(-1, 2)], rat(0)), Weight::from_ints(&[0, 2], 0)]);
        let prof = p.h_profile(&b, 1).unwrap();
        assert_eq!(prof.min, ratio(-1, 2));
        assert_eq!(prof.q_min, rat(0));
        assert_eq!(prof.f_string_length(), rat(1));
        assert_eq!(p.e(&b, 1).unwrap(), None);
        let f = p.f(&b, 1).unwrap().unwrap();
        assert_eq!(f.endpoint(), &p.endpoint() - b.root(1));
    }
}
