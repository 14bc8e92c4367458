//! The winding subalgebra 𝔤[u]: the realization with simple roots
//! `α̇_0 = α_0 + ((u−1)/a_0)δ`, `α̇_i = α_i` and coroots
//! `ḣ_0 = h_0 + ((u−1)/c_0)K`, `ḣ_i = h_i`.

use alloc::vec::Vec;

use num_integer::Integer;

use crate::algebra::AffineAlgebra;
use crate::error::{Error, Result};
use crate::rational::{rat, ratio, Rat};
use crate::weight::{Coroot, Weight};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindingData {
    u: i64,
    roots: Vec<Weight>,
    coroots: Vec<Coroot>,
    fundamentals: Vec<Weight>,
    rho: Weight,
}

impl WindingData {
    pub fn new(algebra: &AffineAlgebra, u: i64) -> Result<WindingData> {
        if u <= 0 {
            return Err(Error::NonPositive(u));
        }
        let a0 = algebra.a()[0];
        let c0 = algebra.c()[0];
        if u.gcd(&a0) != 1 {
            return Err(Error::NotCoprime { u, a0 });
        }
        let n = algebra.rank();
        let mut roots: Vec<Weight> = (0..n).map(|i| algebra.simple_root(i)).collect::<Result<_>>()?;
        roots[0] = roots[0].add_scaled(&ratio(u - 1, a0), &algebra.delta());

        let mut coroots: Vec<Coroot> = (0..n).map(|i| Coroot::simple(n, i)).collect();
        coroots[0] = &coroots[0] + &algebra.central_element().scale(&ratio(u - 1, c0));

        // Λ̇_i = Λ_i + (1/u − 1)(c_i/c_0)Λ_0
        let shift = ratio(1, u) - rat(1);
        let lambda0 = algebra.fundamental_weight(0)?;
        let fundamentals: Vec<Weight> = (0..n)
            .map(|i| {
                let k = &shift * ratio(algebra.c()[i], c0);
                algebra.fundamental_weight(i).map(|w| w.add_scaled(&k, &lambda0))
            })
            .collect::<Result<_>>()?;
        let rho = fundamentals.iter().fold(Weight::zero(n), |acc, w| &acc + w);
        Ok(WindingData { u, roots, coroots, fundamentals, rho })
    }

    pub fn u(&self) -> i64 {
        self.u
    }

    pub fn rank(&self) -> usize {
        self.roots.len()
    }

    /// The dotted simple roots `α̇_i`.
    pub fn simple_roots(&self) -> &[Weight] {
        &self.roots
    }

    /// The dotted simple coroots `ḣ_i`.
    pub fn coroots(&self) -> &[Coroot] {
        &self.coroots
    }

    pub fn fundamentals(&self) -> &[Weight] {
        &self.fundamentals
    }

    /// `ρ̇ = Σ Λ̇_i`.
    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// `K̇ = Σ c_i ḣ_i`, which equals `u·K`.
    pub fn central_element(&self, algebra: &AffineAlgebra) -> Coroot {
        let n = self.rank();
        self.coroots
            .iter()
            .zip(algebra.c())
            .fold(Coroot::new(alloc::vec![rat(0); n], rat(0)), |acc, (h, &c)| &acc + &h.scale(&rat(c)))
    }

    /// `⟨λ, ḣ_i⟩` for every `i`.
    pub fn dotted_labels(&self, lambda: &Weight) -> Vec<Rat> {
        self.coroots.iter().map(|h| lambda.pair(h)).collect()
    }

    /// `⟨λ, ḣ_i⟩ ≥ 0` and integral for every `i`.
    pub fn is_dotted_dominant_integral(&self, lambda: &Weight) -> bool {
        self.dotted_labels(lambda)
            .iter()
            .all(|x| x.is_integer() && *x >= rat(0))
    }
}
