//! Affine generalized Cartan matrices and the data derived from them.
//!
//! Conventions: `α_i(h_j) = A_ji` and `α_i(d) = δ_{i0}`, fundamental weights
//! have `Λ_i(h_j) = δ_ij` and `Λ_i(d) = 0`. Under these conventions
//! `δ = Σ a_i α_i` has zero labels and `δ(d) = a_0`, and for `ν = Σ k_i α_i`
//! the α_0-coordinate `k_0` equals `ν(d)`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{rat, Rat};
use crate::weight::{Coroot, Weight};

/// Solves `ν = Σ k_i r_i` for a family of simple roots `r_i` whose d-values
/// vanish except at index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Frame {
    roots: Vec<Weight>,
    // Inverse of the square system built from the d-row and labels 1..=l.
    inv: Matrix,
}

impl Frame {
    pub(crate) fn new(roots: Vec<Weight>) -> Frame {
        let n = roots.len();
        let mut sys: Matrix = Vec::with_capacity(n);
        sys.push(roots.iter().map(|r| r.d().clone()).collect());
        for j in 1..n {
            sys.push(roots.iter().map(|r| r.label(j).clone()).collect());
        }
        let inv = linalg::inverse(&sys).expect("finite part of an affine matrix is nonsingular");
        Frame { roots, inv }
    }

    pub(crate) fn coords(&self, nu: &Weight) -> Option<Vec<Rat>> {
        let n = self.roots.len();
        if nu.rank() != n {
            return None;
        }
        let mut rhs = Vec::with_capacity(n);
        rhs.push(nu.d().clone());
        rhs.extend(nu.labels()[1..].iter().cloned());
        let k = linalg::mul_vec(&self.inv, &rhs);
        (self.combine(&k) == *nu).then_some(k)
    }

    pub(crate) fn combine(&self, k: &[Rat]) -> Weight {
        let n = self.roots.len();
        k.iter()
            .zip(&self.roots)
            .fold(Weight::zero(n), |acc, (c, r)| acc.add_scaled(c, r))
    }
}

/// A validated affine generalized Cartan matrix with its null vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineAlgebra {
    name: Option<String>,
    cartan: Vec<Vec<i64>>,
    a: Vec<i64>,
    c: Vec<i64>,
    coxeter: i64,
    dual_coxeter: i64,
    frame: Frame,
}

impl AffineAlgebra {
    /// Validates `matrix` as an affine GCM and computes its null vectors.
    pub fn new(matrix: &[Vec<i64>]) -> Result<AffineAlgebra> {
        let n = matrix.len();
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotGcm(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for (j, &x) in row.iter().enumerate() {
                if i == j && x != 2 {
                    return Err(Error::NotGcm(format!("diagonal entry ({i},{i}) is {x}")));
                }
                if i != j && x > 0 {
                    return Err(Error::NotGcm(format!("off-diagonal entry ({i},{j}) is positive")));
                }
                if i != j && (x == 0) != (matrix[j][i] == 0) {
                    return Err(Error::NotGcm(format!("zero pattern differs at ({i},{j})")));
                }
            }
        }
        if n < 2 {
            return Err(Error::NotAffine(String::from("fewer than two nodes")));
        }
        let m = linalg::from_integers(matrix);
        let corank = n - linalg::rank(&m);
        if corank != 1 {
            return Err(Error::NotAffine(format!("corank is {corank}, expected 1")));
        }
        let a = linalg::primitive_integer(&linalg::kernel(&m)[0]);
        let c = linalg::primitive_integer(&linalg::kernel(&linalg::transpose(&m))[0]);
        if a.iter().chain(&c).any(|&x| x <= 0) {
            return Err(Error::NotAffine(String::from("null vector is not strictly positive")));
        }
        let roots = (0..n).map(|i| simple_root_of(matrix, i)).collect();
        Ok(AffineAlgebra {
            name: None,
            cartan: matrix.to_vec(),
            coxeter: a.iter().sum(),
            dual_coxeter: c.iter().sum(),
            a,
            c,
            frame: Frame::new(roots),
        })
    }

    /// The untwisted type `A_l^{(1)}`, `l ≥ 1`.
    pub fn affine_a(l: usize) -> Result<AffineAlgebra> {
        if l == 0 {
            return Err(Error::NotAffine(String::from("A_0^(1) does not exist")));
        }
        let n = l + 1;
        let matrix: Vec<Vec<i64>> = if l == 1 {
            alloc::vec![alloc::vec![2, -2], alloc::vec![-2, 2]]
        } else {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                2
                            } else if (i + 1) % n == j || (j + 1) % n == i {
                                -1
                            } else {
                                0
                            }
                        })
                        .collect()
                })
                .collect()
        };
        let mut alg = AffineAlgebra::new(&matrix)?;
        alg.name = Some(format!("A{l}_1"));
        Ok(alg)
    }

    /// Presets `A1_1` … `A4_1`.
    pub fn preset(name: &str) -> Result<AffineAlgebra> {
        let l = name
            .strip_prefix('A')
            .and_then(|s| s.strip_suffix("_1"))
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|l| (1..=4).contains(l))
            .ok_or_else(|| Error::Parse(format!("unknown preset {name:?}; expected A1_1 … A4_1")))?;
        AffineAlgebra::affine_a(l)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Number of simple roots, `l + 1`.
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn c(&self) -> &[i64] {
        &self.c
    }

    pub fn coxeter_number(&self) -> i64 {
        self.coxeter
    }

    pub fn dual_coxeter_number(&self) -> i64 {
        self.dual_coxeter
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, rank: self.rank() })
        }
    }

    pub fn simple_root(&self, i: usize) -> Result<Weight> {
        self.check_index(i)?;
        Ok(simple_root_of(&self.cartan, i))
    }

    pub fn simple_coroot(&self, i: usize) -> Result<Coroot> {
        self.check_index(i)?;
        Ok(Coroot::simple(self.rank(), i))
    }

    pub fn fundamental_weight(&self, i: usize) -> Result<Weight> {
        self.check_index(i)?;
        let mut labels = alloc::vec![0; self.rank()];
        labels[i] = 1;
        Ok(Weight::from_ints(&labels, 0))
    }

    pub fn rho(&self) -> Weight {
        Weight::from_ints(&alloc::vec![1; self.rank()], 0)
    }

    /// The null root `δ = Σ a_i α_i`.
    pub fn delta(&self) -> Weight {
        self.frame.combine(&self.a.iter().map(|&x| rat(x)).collect::<Vec<_>>())
    }

    /// The canonical central element `K = Σ c_i h_i`.
    pub fn central_element(&self) -> Coroot {
        Coroot::new(self.c.iter().map(|&x| rat(x)).collect(), Rat::zero())
    }

    /// The weight with labels `labels` and `d`-value zero.
    pub fn weight(&self, labels: &[i64]) -> Result<Weight> {
        let w = Weight::from_ints(labels, 0);
        w.check_rank(self.rank())?;
        Ok(w)
    }

    /// `λ(K)`.
    pub fn level(&self, lambda: &Weight) -> Rat {
        lambda.pair(&self.central_element())
    }

    /// Coordinates `k` with `ν = Σ k_i α_i`, if `ν` lies in the root span.
    pub fn root_coords(&self, nu: &Weight) -> Option<Vec<Rat>> {
        self.frame.coords(nu)
    }

    /// `Σ k_i α_i`.
    pub fn from_root_coords(&self, k: &[Rat]) -> Weight {
        self.frame.combine(k)
    }

    pub(crate) fn frame(&self) -> &Frame {
        &self.frame
    }
}

fn simple_root_of(cartan: &[Vec<i64>], i: usize) -> Weight {
    let labels: Vec<i64> = cartan.iter().map(|row| row[i]).collect();
    Weight::from_ints(&labels, i64::from(i == 0))
}

/// δ-depth of `μ` below `top`: the α_0-coordinate of `top − μ`.
pub fn depth_below(top: &Weight, mu: &Weight) -> Rat {
    top.d() - mu.d()
}
