//! Weights in 𝔥* and coroots in 𝔥, both with exact rational coordinates.
//!
//! A weight is stored by its evaluations on the basis `(h_0, …, h_l, d)` of 𝔥:
//! the labels `λ(h_i)` and the value `λ(d)`. A coroot is stored by its
//! coefficients over the same basis, so the pairing is a plain dot product.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, rat, Rat};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    labels: Vec<Rat>,
    d: Rat,
}

impl Weight {
    pub fn new(labels: Vec<Rat>, d: Rat) -> Self {
        Weight { labels, d }
    }

    pub fn from_ints(labels: &[i64], d: i64) -> Self {
        Weight::new(labels.iter().map(|&x| rat(x)).collect(), rat(d))
    }

    pub fn zero(rank: usize) -> Self {
        Weight::new(vec![Rat::zero(); rank], Rat::zero())
    }

    /// Number of labels, i.e. `l + 1`.
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Rat] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &Rat {
        &self.labels[i]
    }

    pub fn d(&self) -> &Rat {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.d.is_zero() && self.labels.iter().all(Zero::is_zero)
    }

    pub fn pair(&self, h: &Coroot) -> Rat {
        debug_assert_eq!(self.rank(), h.rank());
        let mut acc = &self.d * &h.d;
        for (x, y) in self.labels.iter().zip(&h.h) {
            acc += x * y;
        }
        acc
    }

    pub fn scale(&self, k: &Rat) -> Weight {
        Weight::new(self.labels.iter().map(|x| x * k).collect(), &self.d * k)
    }

    /// `self + k·other`.
    pub fn add_scaled(&self, k: &Rat, other: &Weight) -> Weight {
        Weight::new(
            self.labels.iter().zip(&other.labels).map(|(x, y)| x + k * y).collect(),
            &self.d + k * &other.d,
        )
    }

    /// Every label is a nonnegative integer.
    pub fn is_dominant_integral(&self) -> bool {
        self.labels.iter().all(|x| x.is_integer() && !x.is_negative())
    }

    /// `Some(c)` with `self = c·other` and `c > 0`.
    pub fn positive_multiple_of(&self, other: &Weight) -> Option<Rat> {
        let k = other
            .labels
            .iter()
            .chain(core::iter::once(&other.d))
            .position(|x| !x.is_zero())?;
        let mine = self.labels.iter().chain(core::iter::once(&self.d)).nth(k)?;
        let theirs = other.labels.iter().chain(core::iter::once(&other.d)).nth(k)?;
        let c = mine / theirs;
        if c.is_positive() && other.scale(&c) == *self {
            Some(c)
        } else {
            None
        }
    }

    pub(crate) fn check_rank(&self, rank: usize) -> Result<()> {
        if self.rank() == rank {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: rank, found: self.rank() })
        }
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight::new(
            self.labels.iter().zip(&rhs.labels).map(|(x, y)| x + y).collect(),
            &self.d + &rhs.d,
        )
    }
}

impl Sub<&Weight> for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight::new(
            self.labels.iter().zip(&rhs.labels).map(|(x, y)| x - y).collect(),
            &self.d - &rhs.d,
        )
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(self.labels.iter().map(|x| -x).collect(), -&self.d)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&format_rational(x))?;
        }
        write!(f, "; d={})", format_rational(&self.d))
    }
}

/// Element of 𝔥 over the basis `(h_0, …, h_l, d)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coroot {
    h: Vec<Rat>,
    d: Rat,
}

impl Coroot {
    pub fn new(h: Vec<Rat>, d: Rat) -> Self {
        Coroot { h, d }
    }

    /// The simple coroot `h_i` of an algebra with `rank` nodes.
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut h = vec![Rat::zero(); rank];
        h[i] = rat(1);
        Coroot::new(h, Rat::zero())
    }

    pub fn rank(&self) -> usize {
        self.h.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.h
    }

    pub fn d_coeff(&self) -> &Rat {
        &self.d
    }

    pub fn scale(&self, k: &Rat) -> Coroot {
        Coroot::new(self.h.iter().map(|x| x * k).collect(), &self.d * k)
    }
}

impl Add<&Coroot> for &Coroot {
    type Output = Coroot;
    fn add(self, rhs: &Coroot) -> Coroot {
        Coroot::new(self.h.iter().zip(&rhs.h).map(|(x, y)| x + y).collect(), &self.d + &rhs.d)
    }
}
