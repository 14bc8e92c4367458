//! Simple reflections, straightening into the dominant chamber, and signed
//! orbit enumeration for the plain and dotted root bases.
//!
//! Orbit enumeration walks downward from a strictly dominant start: from a
//! point `ν` it applies `s_i` only when `⟨ν, h_i⟩ > 0`, which lowers `ν` by a
//! positive multiple of the simple root and raises the length by one. Every
//! orbit point is reached by such a chain, and along it `start − ν` grows
//! coordinate-wise, so any box or depth bound on `start − ν` can be enforced
//! during the walk without losing points.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::algebra::{AffineAlgebra, Frame};
use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::weight::{Coroot, Weight};
use crate::winding::WindingData;

/// Reflections allowed in [`to_dominant_signed`] before giving up.
pub const DEFAULT_STEP_BUDGET: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisTag {
    Plain,
    Dotted(i64),
}

/// Simple roots and coroots of either 𝔤 or 𝔤[u], with the matching Weyl vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    tag: BasisTag,
    roots: Vec<Weight>,
    coroots: Vec<Coroot>,
    rho: Weight,
    frame: Frame,
}

impl Basis {
    pub fn plain(algebra: &AffineAlgebra) -> Basis {
        let n = algebra.rank();
        Basis {
            tag: BasisTag::Plain,
            roots: (0..n).map(|i| algebra.simple_root(i).expect("index in range")).collect(),
            coroots: (0..n).map(|i| Coroot::simple(n, i)).collect(),
            rho: algebra.rho(),
            frame: algebra.frame().clone(),
        }
    }

    pub fn dotted(winding: &WindingData) -> Basis {
        Basis {
            tag: BasisTag::Dotted(winding.u()),
            roots: winding.simple_roots().to_vec(),
            coroots: winding.coroots().to_vec(),
            rho: winding.rho().clone(),
            frame: Frame::new(winding.simple_roots().to_vec()),
        }
    }

    pub fn tag(&self) -> BasisTag {
        self.tag
    }

    pub fn rank(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, i: usize) -> &Weight {
        &self.roots[i]
    }

    pub fn roots(&self) -> &[Weight] {
        &self.roots
    }

    pub fn coroot(&self, i: usize) -> &Coroot {
        &self.coroots[i]
    }

    pub fn coroots(&self) -> &[Coroot] {
        &self.coroots
    }

    /// `ρ` for the plain basis, `ρ̇` for the dotted one.
    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn labels(&self, lambda: &Weight) -> Vec<Rat> {
        self.coroots.iter().map(|h| lambda.pair(h)).collect()
    }

    /// Coordinates of `ν` over this basis' simple roots.
    pub fn coords(&self, nu: &Weight) -> Option<Vec<Rat>> {
        self.frame.coords(nu)
    }

    pub fn from_coords(&self, k: &[Rat]) -> Weight {
        self.frame.combine(k)
    }

    pub fn is_dominant(&self, lambda: &Weight) -> bool {
        self.coroots.iter().all(|h| !lambda.pair(h).is_negative())
    }

    pub fn is_strictly_dominant(&self, lambda: &Weight) -> bool {
        self.coroots.iter().all(|h| lambda.pair(h).is_positive())
    }

    pub fn is_dominant_integral(&self, lambda: &Weight) -> bool {
        self.coroots.iter().all(|h| {
            let x = lambda.pair(h);
            x.is_integer() && !x.is_negative()
        })
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, rank: self.rank() })
        }
    }
}

/// `s_i(λ) = λ − ⟨λ, h_i⟩ α_i` in the given basis.
pub fn reflect(basis: &Basis, i: usize, lambda: &Weight) -> Result<Weight> {
    basis.check_index(i)?;
    lambda.check_rank(basis.rank())?;
    Ok(reflect_unchecked(basis, i, lambda))
}

pub(crate) fn reflect_unchecked(basis: &Basis, i: usize, lambda: &Weight) -> Weight {
    let k = -lambda.pair(&basis.coroots[i]);
    lambda.add_scaled(&k, &basis.roots[i])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Straightened {
    pub dominant: Weight,
    /// `+1`/`−1` by parity of `length`; `0` marks a wall (see [`straighten_shifted`]).
    pub sign: i8,
    pub length: usize,
}

/// Reflects at the lowest index with a negative label until the weight is
/// dominant. The sign is the parity of the number of reflections.
pub fn to_dominant_signed(basis: &Basis, mu: &Weight) -> Result<Straightened> {
    to_dominant_signed_with_budget(basis, mu, DEFAULT_STEP_BUDGET)
}

pub fn to_dominant_signed_with_budget(basis: &Basis, mu: &Weight, budget: usize) -> Result<Straightened> {
    mu.check_rank(basis.rank())?;
    let mut cur = mu.clone();
    let mut length = 0;
    loop {
        let neg = basis.coroots.iter().position(|h| cur.pair(h).is_negative());
        let Some(i) = neg else {
            let sign = if length % 2 == 0 { 1 } else { -1 };
            return Ok(Straightened { dominant: cur, sign, length });
        };
        if length == budget {
            return Err(Error::NotInTitsCone { steps: budget });
        }
        cur = reflect_unchecked(basis, i, &cur);
        length += 1;
    }
}

/// The ρ-shifted straightening `p(μ)`, `{μ}`: the unique `w` with
/// `w(μ + ρ) − ρ` dominant, returned as that weight with sign `ε(w)`.
///
/// When `μ + ρ` straightens onto a wall the stabilizer is nontrivial and the
/// sign is `0`; the returned weight is then `w(μ + ρ) − ρ` for the word found.
pub fn straighten_shifted(basis: &Basis, mu: &Weight) -> Result<Straightened> {
    let shifted = mu + &basis.rho;
    let s = to_dominant_signed(basis, &shifted)?;
    let on_wall = basis.coroots.iter().any(|h| s.dominant.pair(h).is_zero());
    Ok(Straightened {
        dominant: &s.dominant - &basis.rho,
        sign: if on_wall { 0 } else { s.sign },
        length: s.length,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPoint {
    pub weight: Weight,
    /// Coordinates of `start − weight` over the basis' simple roots.
    pub coords: Vec<Rat>,
    pub length: usize,
    pub sign: i8,
    /// Index of the reflection that produced this point from its parent.
    pub parent_edge: Option<usize>,
}

/// All `w(start)` with `start − w(start)` inside the coordinate box `budget`
/// (over this basis' simple roots), in breadth-first order.
pub fn signed_orbit_in_box(basis: &Basis, start: &Weight, budget: &[Rat]) -> Result<Vec<OrbitPoint>> {
    if budget.len() != basis.rank() {
        return Err(Error::DimensionMismatch { expected: basis.rank(), found: budget.len() });
    }
    walk_orbit(basis, start, |p| p.coords.iter().zip(budget).all(|(x, b)| x <= b))
}

/// All `w(start)` whose δ-depth below `start` is at most `max_depth`.
pub fn signed_orbit_to_depth(basis: &Basis, start: &Weight, max_depth: &Rat) -> Result<Vec<OrbitPoint>> {
    walk_orbit(basis, start, |p| &(start.d() - p.weight.d()) <= max_depth)
}

fn walk_orbit(basis: &Basis, start: &Weight, keep: impl Fn(&OrbitPoint) -> bool) -> Result<Vec<OrbitPoint>> {
    start.check_rank(basis.rank())?;
    if !basis.is_strictly_dominant(start) {
        return Err(Error::NotStrictlyDominant);
    }
    let root = OrbitPoint {
        weight: start.clone(),
        coords: alloc::vec![Rat::zero(); basis.rank()],
        length: 0,
        sign: 1,
        parent_edge: None,
    };
    if !keep(&root) {
        return Ok(Vec::new());
    }
    let mut out = alloc::vec![root];
    let mut frontier = 0..1;
    while !frontier.is_empty() {
        let mut next: BTreeMap<Vec<Rat>, OrbitPoint> = BTreeMap::new();
        for idx in frontier.clone() {
            let p = &out[idx];
            for i in 0..basis.rank() {
                let k = p.weight.pair(&basis.coroots[i]);
                if !k.is_positive() {
                    continue;
                }
                let mut coords = p.coords.clone();
                coords[i] += &k;
                if next.contains_key(&coords) {
                    continue;
                }
                let child = OrbitPoint {
                    weight: p.weight.add_scaled(&-k, &basis.roots[i]),
                    coords: coords.clone(),
                    length: p.length + 1,
                    sign: -p.sign,
                    parent_edge: Some(i),
                };
                if keep(&child) {
                    next.insert(coords, child);
                }
            }
        }
        let begin = out.len();
        out.extend(next.into_values());
        frontier = begin..out.len();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};
    use alloc::collections::BTreeSet;
    use alloc::vec;
    use proptest::prelude::*;

    fn a1() -> AffineAlgebra {
        AffineAlgebra::affine_a(1).unwrap()
    }

    #[test]
    fn reflection_examples() {
        let alg = a1();
        let plain = Basis::plain(&alg);
        let l1 = alg.fundamental_weight(1).unwrap();
        assert_eq!(reflect(&plain, 1, &l1).unwrap(), Weight::from_ints(&[2, -1], 0));

        let dotted = Basis::dotted(&WindingData::new(&alg, 2).unwrap());
        let l0 = alg.fundamental_weight(0).unwrap();
        let expected = l0.add_scaled(&rat(-2), dotted.root(0));
        assert_eq!(reflect(&dotted, 0, &l0).unwrap(), expected);

        for b in [&plain, &dotted] {
            for i in 0..2 {
                assert_eq!(reflect(b, i, &alg.delta()).unwrap(), alg.delta());
            }
        }
        assert!(matches!(reflect(&plain, 2, &l0), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn straightening_examples() {
        let plain = Basis::plain(&a1());
        let s = to_dominant_signed(&plain, &Weight::from_ints(&[1, 1], 0)).unwrap();
        assert_eq!((s.dominant, s.sign, s.length), (Weight::from_ints(&[1, 1], 0), 1, 0));
        let s = to_dominant_signed(&plain, &Weight::from_ints(&[2, -1], 0)).unwrap();
        assert_eq!((s.dominant, s.sign, s.length), (Weight::from_ints(&[0, 1], 0), -1, 1));
    }

    #[test]
    fn shifted_straightening_detects_walls() {
        let alg = a1();
        let plain = Basis::plain(&alg);
        // μ = −α_1/2-ish point whose shift lands on the s_1 wall: μ + ρ = (1, 0)
        let s = straighten_shifted(&plain, &Weight::from_ints(&[0, -1], 0)).unwrap();
        assert_eq!(s.sign, 0);
        // μ = s_1·0 = −α_1: p = −1, {μ} = 0
        let s = straighten_shifted(&plain, &(-&alg.simple_root(1).unwrap())).unwrap();
        assert_eq!((s.sign, s.dominant), (-1, Weight::zero(2)));
    }

    #[test]
    fn level_zero_off_cone_hits_budget() {
        let plain = Basis::plain(&a1());
        let mu = Weight::from_ints(&[1, -1], 0);
        assert_eq!(
            to_dominant_signed_with_budget(&plain, &mu, 50),
            Err(Error::NotInTitsCone { steps: 50 })
        );
    }

    #[test]
    fn orbit_of_rho_in_unit_box() {
        let alg = a1();
        let plain = Basis::plain(&alg);
        let rho = alg.rho();
        let pts = signed_orbit_in_box(&plain, &rho, &[rat(1), rat(1)]).unwrap();
        let got: BTreeSet<(Weight, i8)> = pts.iter().map(|p| (p.weight.clone(), p.sign)).collect();
        let a0 = alg.simple_root(0).unwrap();
        let a1r = alg.simple_root(1).unwrap();
        let expected: BTreeSet<(Weight, i8)> =
            [(rho.clone(), 1), (&rho - &a0, -1), (&rho - &a1r, -1)].into_iter().collect();
        assert_eq!(got, expected);

        let pts = signed_orbit_in_box(&plain, &rho, &[rat(0), rat(0)]).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].weight, rho);
        assert_eq!(
            signed_orbit_in_box(&plain, &alg.fundamental_weight(0).unwrap(), &[rat(1), rat(1)]),
            Err(Error::NotStrictlyDominant)
        );
    }

    /// Every word of length ≤ `max_len`, deduplicated by image, keeping the
    /// shortest word per image.
    fn brute_orbit(basis: &Basis, start: &Weight, max_len: usize) -> BTreeMap<Weight, usize> {
        let mut seen = BTreeMap::new();
        seen.insert(start.clone(), 0);
        let mut layer = vec![start.clone()];
        for len in 1..=max_len {
            let mut next = Vec::new();
            for w in &layer {
                for i in 0..basis.rank() {
                    let r = reflect(basis, i, w).unwrap();
                    if !seen.contains_key(&r) {
                        seen.insert(r.clone(), len);
                        next.push(r);
                    }
                }
            }
            layer = next;
        }
        seen
    }

    #[test]
    fn pruned_orbit_matches_brute_force_words() {
        let alg = a1();
        for basis in [Basis::plain(&alg), Basis::dotted(&WindingData::new(&alg, 2).unwrap())] {
            for start in [basis.rho().clone(), basis.rho() + &alg.fundamental_weight(1).unwrap()] {
                let brute = brute_orbit(&basis, &start, 6);
                for depth in 0..=3 {
                    let budget = vec![rat(depth), rat(depth)];
                    let pts = signed_orbit_in_box(&basis, &start, &budget).unwrap();
                    let expected: BTreeMap<Weight, usize> = brute
                        .iter()
                        .filter(|(w, _)| {
                            basis.coords(&(&start - *w)).unwrap().iter().zip(&budget).all(|(x, b)| x <= b)
                        })
                        .map(|(w, l)| (w.clone(), *l))
                        .collect();
                    let got: BTreeMap<Weight, usize> =
                        pts.iter().map(|p| (p.weight.clone(), p.length)).collect();
                    assert_eq!(got, expected, "{:?} depth {depth}", basis.tag());
                }
            }
        }
    }

    #[test]
    fn parent_chain_reproduces_points() {
        let alg = AffineAlgebra::affine_a(2).unwrap();
        let basis = Basis::plain(&alg);
        let start = alg.rho();
        let pts = signed_orbit_in_box(&basis, &start, &[rat(3), rat(4), rat(4)]).unwrap();
        let index: BTreeMap<&Weight, &OrbitPoint> = pts.iter().map(|p| (&p.weight, p)).collect();
        for p in &pts {
            assert_eq!(p.sign, if p.length % 2 == 0 { 1 } else { -1 });
            let mut cur = p;
            let mut steps = 0;
            while let Some(i) = cur.parent_edge {
                let parent = reflect(&basis, i, &cur.weight).unwrap();
                cur = index[&parent];
                steps += 1;
            }
            assert_eq!(cur.weight, start);
            assert_eq!(steps, p.length);
        }
    }

    #[test]
    fn orbit_to_depth_matches_box_enumeration() {
        let alg = a1();
        let basis = Basis::plain(&alg);
        let start = alg.rho();
        let by_depth = signed_orbit_to_depth(&basis, &start, &rat(4)).unwrap();
        let by_box = signed_orbit_in_box(&basis, &start, &[rat(4), rat(40)]).unwrap();
        let depth_ok: BTreeSet<Weight> = by_box
            .iter()
            .filter(|p| p.coords[0] <= rat(4))
            .map(|p| p.weight.clone())
            .collect();
        let got: BTreeSet<Weight> = by_depth.iter().map(|p| p.weight.clone()).collect();
        assert_eq!(got, depth_ok);
    }

    proptest! {
        #[test]
        fn reflections_are_involutions_preserving_level(
            labels in proptest::collection::vec((-9i64..9, 1i64..4), 3),
            d in -5i64..5,
            i in 0usize..3,
            u in 1i64..5,
        ) {
            let alg = AffineAlgebra::affine_a(2).unwrap();
            let w = WindingData::new(&alg, u).unwrap();
            let lambda = Weight::new(labels.into_iter().map(|(p, q)| ratio(p, q)).collect(), rat(d));
            for basis in [Basis::plain(&alg), Basis::dotted(&w)] {
                let r = reflect(&basis, i, &lambda).unwrap();
                prop_assert_eq!(reflect(&basis, i, &r).unwrap(), lambda.clone());
                prop_assert_eq!(alg.level(&r), alg.level(&lambda));
            }
        }

        #[test]
        fn pruning_is_monotone(b0 in 0i64..3, b1 in 0i64..4, e0 in 0i64..2, e1 in 0i64..2) {
            let alg = a1();
            let basis = Basis::plain(&alg);
            let start = &alg.rho() + &alg.fundamental_weight(0).unwrap();
            let small = signed_orbit_in_box(&basis, &start, &[rat(b0), rat(b1)]).unwrap();
            let large = signed_orbit_in_box(&basis, &start, &[rat(b0 + e0), rat(b1 + e1)]).unwrap();
            let large: BTreeMap<Weight, (usize, i8)> =
                large.into_iter().map(|p| (p.weight, (p.length, p.sign))).collect();
            for p in small {
                prop_assert_eq!(large.get(&p.weight), Some(&(p.length, p.sign)));
            }
        }
    }
}
