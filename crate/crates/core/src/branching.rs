//! Branching `L(λ)|_{𝔤[u]} = ⊕ c_λ^{λ′} L̇(λ′)`, computed several ways.
//!
//! * [`branch_via_paths`] counts 𝔤[u]-dominant LS paths by endpoint.
//! * [`branch_via_steinberg`] evaluates the double Weyl-group sum over `𝒫`.
//! * [`peel_oracle`] strips dotted characters off the plain character.
//! * [`branch_signed_paths`] straightens every path endpoint with signs.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::algebra::{depth_below, AffineAlgebra};
use crate::error::{Error, Result};
use crate::kostant::PartitionFunction;
use crate::path::{enumerate_ls_paths, is_dominant_path, Path};
use crate::rational::{format_rational, rat, to_i64, Rat};
use crate::series::FormalSeries;
use crate::weight::Weight;
use crate::weyl::{signed_orbit_in_box, signed_orbit_to_depth, straighten_shifted, Basis};
use crate::winding::WindingData;

/// Nonnegative integer coordinates of `nu` over the basis, or `None`.
fn lattice_coords(basis: &Basis, nu: &Weight) -> Option<Vec<i64>> {
    basis.coords(nu)?
        .iter()
        .map(|x| to_i64(x).filter(|v| *v >= 0))
        .collect()
}

fn depth_of(top: &Weight, mu: &Weight) -> Option<u32> {
    to_i64(&depth_below(top, mu)).and_then(|d| u32::try_from(d).ok())
}

fn check_highest_weight(algebra: &AffineAlgebra, lambda: &Weight) -> Result<()> {
    lambda.check_rank(algebra.rank())?;
    if !Basis::plain(algebra).is_dominant_integral(lambda) {
        return Err(Error::NotDominantIntegral);
    }
    if !algebra.level(lambda).is_positive() {
        return Err(Error::NotPositiveLevel);
    }
    Ok(())
}

/// Weight multiplicities of `L(λ)` (or `L̇(λ)`) by the Kostant-type formula
/// `m_λ(μ) = Σ_w ε(w) 𝒫(w(λ+ρ) − (μ+ρ))`, over the roots of `basis`.
pub struct KostantMultiplicity {
    basis: Basis,
    pf: PartitionFunction,
}

impl KostantMultiplicity {
    pub fn plain(algebra: &AffineAlgebra) -> Result<KostantMultiplicity> {
        Ok(KostantMultiplicity { basis: Basis::plain(algebra), pf: PartitionFunction::new(algebra)? })
    }

    /// Multiplicities for 𝔤[u]; the dotted root system is a copy of the plain one.
    pub fn dotted(algebra: &AffineAlgebra, winding: &WindingData) -> Result<KostantMultiplicity> {
        Ok(KostantMultiplicity { basis: Basis::dotted(winding), pf: PartitionFunction::new(algebra)? })
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn multiplicity(&mut self, lambda: &Weight, mu: &Weight) -> Result<u128> {
        self.signed_sum(lambda, mu, 0)
    }

    /// As [`multiplicity`](Self::multiplicity), then again with every box
    /// side enlarged by one; the two must agree.
    pub fn checked_multiplicity(&mut self, lambda: &Weight, mu: &Weight) -> Result<u128> {
        let before = self.signed_sum(lambda, mu, 0)?;
        let after = self.signed_sum(lambda, mu, 1)?;
        if before != after {
            return Err(Error::CutoffUnstable { before: before as i128, after: after as i128 });
        }
        Ok(before)
    }

    fn signed_sum(&mut self, lambda: &Weight, mu: &Weight, slack: i64) -> Result<u128> {
        lambda.check_rank(self.basis.rank())?;
        mu.check_rank(self.basis.rank())?;
        if !self.basis.is_dominant_integral(lambda) {
            return Err(Error::NotDominantIntegral);
        }
        let Some(budget) = lattice_coords(&self.basis, &(lambda - mu)) else { return Ok(0) };
        let boxed: Vec<Rat> = budget.iter().map(|b| rat(b + slack)).collect();
        let orbit = signed_orbit_in_box(&self.basis, &(lambda + self.basis.rho()), &boxed)?;
        let mut total: i128 = 0;
        for point in orbit {
            let arg: Option<Vec<i64>> = budget
                .iter()
                .zip(&point.coords)
                .map(|(b, x)| to_i64(x).map(|x| b - x))
                .collect();
            let Some(arg) = arg else { continue };
            let p = i128::try_from(self.pf.count(&arg)?).map_err(|_| Error::Overflow)?;
            total = if point.sign > 0 { total.checked_add(p) } else { total.checked_sub(p) }.ok_or(Error::Overflow)?;
        }
        u128::try_from(total).map_err(|_| Error::NegativeMultiplicity(total))
    }

    /// The character of the module with highest weight `lambda`, restricted to
    /// weights at most `depth` below `top`.
    pub fn character(&mut self, lambda: &Weight, top: &Weight, depth: u32) -> Result<FormalSeries> {
        let mut out = FormalSeries::new(top, depth);
        if !out.within(lambda, depth) {
            return Ok(out);
        }
        let mut seen = BTreeSet::from([lambda.clone()]);
        let mut stack = alloc::vec![lambda.clone()];
        while let Some(mu) = stack.pop() {
            let m = self.multiplicity(lambda, &mu)?;
            if m == 0 {
                continue;
            }
            out.add_term(mu.clone(), i128::try_from(m).map_err(|_| Error::Overflow)?)?;
            for root in self.basis.roots() {
                let next = &mu - root;
                if out.within(&next, depth) && !seen.contains(&next) {
                    seen.insert(next.clone());
                    stack.push(next);
                }
            }
        }
        Ok(out)
    }
}

/// `m_λ(μ)` for the plain algebra.
pub fn weight_multiplicity(algebra: &AffineAlgebra, lambda: &Weight, mu: &Weight, cutoff_check: bool) -> Result<u128> {
    let mut km = KostantMultiplicity::plain(algebra)?;
    if cutoff_check {
        km.checked_multiplicity(lambda, mu)
    } else {
        km.multiplicity(lambda, mu)
    }
}

/// `ch_λ` to the given depth, as endpoint counts of LS paths.
pub fn character_by_paths(algebra: &AffineAlgebra, lambda: &Weight, depth: u32) -> Result<FormalSeries> {
    let paths = enumerate_ls_paths(&Basis::plain(algebra), lambda, depth)?;
    let mut out = FormalSeries::new(lambda, depth);
    for p in paths {
        out.add_term(p.endpoint(), 1)?;
    }
    Ok(out)
}

/// `ch_λ` to the given depth, from the Kostant-type multiplicity formula.
pub fn character_by_kostant(algebra: &AffineAlgebra, lambda: &Weight, depth: u32) -> Result<FormalSeries> {
    KostantMultiplicity::plain(algebra)?.character(lambda, lambda, depth)
}

/// Checks `ch_λ · Σ ε(w)e^{w(ρ)} = Σ ε(w)e^{w(λ+ρ)}` on every weight at most
/// `depth − margin` below `λ + ρ`, with `ch_λ` taken from LS paths.
pub fn verify_kac_character(algebra: &AffineAlgebra, lambda: &Weight, depth: u32, margin: u32) -> Result<bool> {
    let ch = character_by_paths(algebra, lambda, depth)?;
    kac_identity_holds(algebra, lambda, &ch, margin)
}

/// The identity check of [`verify_kac_character`] for an arbitrary
/// candidate character `ch` (truncated at its own depth).
pub fn kac_identity_holds(algebra: &AffineAlgebra, lambda: &Weight, ch: &FormalSeries, margin: u32) -> Result<bool> {
    let plain = Basis::plain(algebra);
    let depth = ch.depth();
    let limit = Rat::from_integer(depth.into());
    let rho = algebra.rho();
    let top = lambda + &rho;

    let mut numerator = FormalSeries::new(&top, depth);
    for p in signed_orbit_to_depth(&plain, &top, &limit)? {
        numerator.add_term(p.weight, p.sign.into())?;
    }
    let mut denominator = FormalSeries::new(&rho, depth);
    for p in signed_orbit_to_depth(&plain, &rho, &limit)? {
        denominator.add_term(p.weight, p.sign.into())?;
    }
    let product = ch.mul(&denominator)?;
    Ok(depth < margin || product.differences(&numerator, depth - margin).is_empty())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Paths,
    Steinberg,
    Signed,
    Peel,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Paths, Method::Steinberg, Method::Signed, Method::Peel];

    pub fn name(self) -> &'static str {
        match self {
            Method::Paths => "paths",
            Method::Steinberg => "steinberg",
            Method::Signed => "signed",
            Method::Peel => "peel",
        }
    }

    pub fn from_name(s: &str) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchRow {
    pub weight: Weight,
    /// δ-depth of `weight` below the highest weight.
    pub depth: u32,
    pub mult: u128,
    /// Methods whose value at this row equals `mult`.
    pub methods: Vec<Method>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchTable {
    pub algebra: AffineAlgebra,
    pub u: i64,
    pub lambda: Weight,
    pub depth: u32,
    pub margin: u32,
    /// Sorted by `(depth, weight)`.
    pub rows: Vec<BranchRow>,
    /// Set only when independent methods were compared and all agreed.
    pub verified: bool,
}

impl BranchTable {
    /// A single-method table; zero counts are dropped and rows sorted.
    pub fn from_counts(
        algebra: &AffineAlgebra,
        winding: &WindingData,
        lambda: &Weight,
        depth: u32,
        margin: u32,
        method: Method,
        counts: BTreeMap<Weight, u128>,
    ) -> Result<BranchTable> {
        let mut rows = Vec::new();
        for (weight, mult) in counts {
            if mult == 0 {
                continue;
            }
            let d = depth_of(lambda, &weight)
                .ok_or_else(|| Error::InconsistentTruncation(format!("component {weight} is not below {lambda}")))?;
            rows.push(BranchRow { weight, depth: d, mult, methods: alloc::vec![method] });
        }
        rows.sort_by(|a, b| (a.depth, &a.weight).cmp(&(b.depth, &b.weight)));
        Ok(BranchTable {
            algebra: algebra.clone(),
            u: winding.u(),
            lambda: lambda.clone(),
            depth,
            margin,
            rows,
            verified: false,
        })
    }

    pub fn multiplicity(&self, weight: &Weight) -> u128 {
        self.rows.iter().find(|r| &r.weight == weight).map_or(0, |r| r.mult)
    }

    pub fn to_map(&self) -> BTreeMap<Weight, u128> {
        self.rows.iter().map(|r| (r.weight.clone(), r.mult)).collect()
    }

    /// Rows at most `depth` below the highest weight.
    pub fn restricted(&self, depth: u32) -> BTreeMap<Weight, u128> {
        self.rows.iter().filter(|r| r.depth <= depth).map(|r| (r.weight.clone(), r.mult)).collect()
    }
}

/// Counts 𝔤[u]-dominant LS paths of shape `λ` by endpoint.
pub fn branch_via_paths(algebra: &AffineAlgebra, lambda: &Weight, winding: &WindingData, depth: u32) -> Result<BranchTable> {
    let counts = dominant_path_counts(algebra, lambda, winding, depth)?;
    BranchTable::from_counts(algebra, winding, lambda, depth, 0, Method::Paths, counts)
}

fn dominant_path_counts(
    algebra: &AffineAlgebra,
    lambda: &Weight,
    winding: &WindingData,
    depth: u32,
) -> Result<BTreeMap<Weight, u128>> {
    check_highest_weight(algebra, lambda)?;
    let mut counts = BTreeMap::new();
    for p in enumerate_ls_paths(&Basis::plain(algebra), lambda, depth)? {
        if is_dominant_path(winding, &p) {
            *counts.entry(p.endpoint()).or_insert(0u128) += 1;
        }
    }
    Ok(counts)
}

/// Evaluator for `c_λ^{λ′} = Σ_{σ,τ} ε(στ) 𝒫(σ(λ+ρ) + τ(ρ̇) − (λ′+ρ+ρ̇))`.
///
/// Holds a partition-function memo; reuse one instance across many `λ′`.
pub struct Steinberg {
    algebra: AffineAlgebra,
    winding: WindingData,
    plain: Basis,
    dotted: Basis,
    pf: PartitionFunction,
}

impl Steinberg {
    pub fn new(algebra: &AffineAlgebra, winding: &WindingData) -> Result<Steinberg> {
        Ok(Steinberg {
            algebra: algebra.clone(),
            winding: winding.clone(),
            plain: Basis::plain(algebra),
            dotted: Basis::dotted(winding),
            pf: PartitionFunction::new(algebra)?,
        })
    }

    pub fn coefficient(&mut self, lambda: &Weight, lambda_prime: &Weight) -> Result<u128> {
        check_highest_weight(&self.algebra, lambda)?;
        lambda_prime.check_rank(self.algebra.rank())?;
        if !self.winding.is_dotted_dominant_integral(lambda_prime) {
            return Err(Error::NotDominant);
        }
        let expected = self.algebra.level(lambda) * rat(self.winding.u());
        let found = lambda_prime.pair(&self.winding.central_element(&self.algebra));
        if expected != found {
            return Err(Error::LevelMismatch { expected: format_rational(&expected), found: format_rational(&found) });
        }
        let Some(budget) = lattice_coords(&self.plain, &(lambda - lambda_prime)) else { return Ok(0) };
        let boxed: Vec<Rat> = budget.iter().map(|&b| rat(b)).collect();

        let xs = signed_orbit_in_box(&self.plain, &(lambda + self.plain.rho()), &boxed)?;
        // Dotted coordinates of an element of Q̇_+ never exceed its plain ones,
        // so the plain box is a valid (loose) dotted box; filter exactly below.
        let rho_dot = self.dotted.rho().clone();
        let mut ys = Vec::new();
        for p in signed_orbit_in_box(&self.dotted, &rho_dot, &boxed)? {
            let Some(y) = lattice_coords(&self.plain, &(&rho_dot - &p.weight)) else {
                return Err(Error::InconsistentTruncation(format!("ρ̇ − {} is not in Q_+", p.weight)));
            };
            if y.iter().zip(&budget).all(|(a, b)| a <= b) {
                ys.push((y, p.sign));
            }
        }

        let mut total: i128 = 0;
        for x in &xs {
            let xi: Vec<i64> = x.coords.iter().map(|c| to_i64(c).expect("integral orbit")).collect();
            for (y, ysign) in &ys {
                let arg: Vec<i64> = budget.iter().zip(&xi).zip(y).map(|((b, a), c)| b - a - c).collect();
                if arg.iter().any(|&v| v < 0) {
                    continue;
                }
                let p = i128::try_from(self.pf.count(&arg)?).map_err(|_| Error::Overflow)?;
                total = if x.sign * ysign > 0 { total.checked_add(p) } else { total.checked_sub(p) }
                    .ok_or(Error::Overflow)?;
            }
        }
        u128::try_from(total).map_err(|_| Error::NegativeMultiplicity(total))
    }
}

/// `c_λ^{λ′}` by the double Weyl-group sum.
pub fn branch_via_steinberg(
    algebra: &AffineAlgebra,
    lambda: &Weight,
    lambda_prime: &Weight,
    winding: &WindingData,
) -> Result<u128> {
    Steinberg::new(algebra, winding)?.coefficient(lambda, lambda_prime)
}

/// Every dotted-dominant integral `λ′` of level `u·k` with `λ − λ′ ∈ Q_+` at
/// most `depth` below `λ`, sorted by `(depth, weight)`.
pub fn dotted_dominant_candidates(
    algebra: &AffineAlgebra,
    lambda: &Weight,
    winding: &WindingData,
    depth: u32,
) -> Result<Vec<Weight>> {
    check_highest_weight(algebra, lambda)?;
    let plain = Basis::plain(algebra);
    let level = to_i64(&(algebra.level(lambda) * rat(winding.u()))).ok_or(Error::NotDominantIntegral)?;
    let mut label_vectors = Vec::new();
    compositions(algebra.c(), level, &mut Vec::new(), &mut label_vectors);

    let mut out = Vec::new();
    for labels in label_vectors {
        let finite = labels
            .iter()
            .zip(winding.fundamentals())
            .fold(Weight::zero(algebra.rank()), |acc, (&n, w)| acc.add_scaled(&rat(n), w));
        for t in 0..=depth {
            let candidate = Weight::new(finite.labels().to_vec(), lambda.d() - rat(t.into()));
            if lattice_coords(&plain, &(lambda - &candidate)).is_some() {
                out.push((t, candidate));
            }
        }
    }
    out.sort();
    Ok(out.into_iter().map(|(_, w)| w).collect())
}

/// Nonnegative `n` with `Σ c_i n_i = total`.
fn compositions(c: &[i64], total: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    let i = prefix.len();
    if i == c.len() {
        if total == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    for n in 0..=total / c[i] {
        prefix.push(n);
        compositions(c, total - n * c[i], prefix, out);
        prefix.pop();
    }
}

/// The Steinberg sum evaluated at every candidate component to `depth`.
pub fn branch_table_via_steinberg(
    algebra: &AffineAlgebra,
    lambda: &Weight,
    winding: &WindingData,
    depth: u32,
) -> Result<BranchTable> {
    let mut st = Steinberg::new(algebra, winding)?;
    let mut counts = BTreeMap::new();
    for candidate in dotted_dominant_candidates(algebra, lambda, winding, depth)? {
        let c = st.coefficient(lambda, &candidate)?;
        counts.insert(candidate, c);
    }
    BranchTable::from_counts(algebra, winding, lambda, depth, 0, Method::Steinberg, counts)
}

/// One LS path and its ρ̇-shifted straightened endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedContribution {
    pub path: Path,
    pub endpoint: Weight,
    /// `{π(1)}`: dotted-dominant representative of `π(1)` under the ρ̇-shifted action.
    pub straightened: Weight,
    /// `p(π(1))`, zero on walls.
    pub sign: i8,
}

/// Straightens the endpoint of every LS path of shape `λ` to `depth`.
pub fn signed_path_contributions(
    algebra: &AffineAlgebra,
    lambda: &Weight,
    winding: &WindingData,
    depth: u32,
) -> Result<Vec<SignedContribution>> {
    check_highest_weight(algebra, lambda)?;
    let dotted = Basis::dotted(winding);
    let mut out = Vec::new();
    for path in enumerate_ls_paths(&Basis::plain(algebra), lambda, depth)? {
        let endpoint = path.endpoint();
        let s = straighten_shifted(&dotted, &endpoint)?;
        out.push(SignedContribution { path, endpoint, straightened: s.dominant, sign: s.sign });
    }
    Ok(out)
}

/// Net signed counts `Σ p(π(1))` per straightened endpoint, for endpoints at
/// most `depth − margin` below `λ`.
pub fn signed_path_sums(
    algebra: &AffineAlgebra,
    lambda: &Weight,
    winding: &WindingData,
    depth: u32,
    margin: u32,
) -> Result<BTreeMap<Weight, i128>> {
    let limit = Rat::from_integer(depth.saturating_sub(margin).into());
    let mut sums: BTreeMap<Weight, i128> = BTreeMap::new();
    if margin > depth {
        return Ok(sums);
    }
    for c in signed_path_contributions(algebra, lambda, winding, depth)? {
        if c.sign == 0 || depth_below(lambda, &c.straightened) > limit {
            continue;
        }
        *sums.entry(c.straightened).or_insert(0) += i128::from(c.sign);
    }
    sums.retain(|_, v| *v != 0);
    Ok(sums)
}

/// Branching read off the signed path sums; rows beyond `depth − margin` are
/// not reported.
pub fn branch_signed_paths(
    algebra: &AffineAlgebra,
    lambda: &Weight,
    winding: &WindingData,
    depth: u32,
    margin: u32,
) -> Result<BranchTable> {
    let sums = signed_path_sums(algebra, lambda, winding, depth, margin)?;
    let mut counts = BTreeMap::new();
    for (w, v) in sums {
        let v = u128::try_from(v).map_err(|_| Error::NegativeMultiplicity(v))?;
        counts.insert(w, v);
    }
    BranchTable::from_counts(algebra, winding, lambda, depth, margin, Method::Signed, counts)
}

/// The partner `π̄` of a non-dominant path: with `s` the first time some
/// `⟨π(s), ḣ_α⟩` reaches `−1` (lowest `α` on ties), `π̄ = f_α^n π` where
/// `n = 1 + ⟨π(1), ḣ_α⟩`, or `e_α^{−n} π` when `n < 0`.
pub fn cancel_partner(path: &Path, winding: &WindingData) -> Result<Path> {
    let dotted = Basis::dotted(winding);
    if is_dominant_path(winding, path) {
        return Err(Error::DominantInput);
    }
    let points = path.breakpoints();
    let minus_one = rat(-1);
    // (segment, fraction within the segment, index)
    let mut best: Option<(usize, Rat, usize)> = None;
    for (i, h) in winding.coroots().iter().enumerate() {
        let values: Vec<Rat> = points.iter().map(|b| b.pair(h)).collect();
        let hit = values.windows(2).enumerate().find_map(|(j, w)| {
            if w[1] > minus_one {
                return None;
            }
            // w[0] > −1 ≥ w[1] (the first crossing), unless the segment starts there
            let t = if w[0] == minus_one { Rat::zero() } else { (&minus_one - &w[0]) / (&w[1] - &w[0]) };
            Some((j, t))
        });
        if let Some((j, t)) = hit {
            let candidate = (j, t, i);
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        }
    }
    let Some((_, _, alpha)) = best else { return Err(Error::PartnerUndefined) };
    let n = to_i64(&(rat(1) + path.endpoint().pair(&winding.coroots()[alpha]))).ok_or(Error::PartnerUndefined)?;
    let steps = usize::try_from(n.unsigned_abs()).map_err(|_| Error::Overflow)?;
    let partner = if n >= 0 { path.f_pow(&dotted, alpha, steps)? } else { path.e_pow(&dotted, alpha, steps)? };
    partner.ok_or(Error::PartnerUndefined)
}

/// Peels 𝔤[u]-characters off `ch_λ` (computed by the Kostant-type formula).
pub fn peel_oracle(
    algebra: &AffineAlgebra,
    lambda: &Weight,
    winding: &WindingData,
    depth: u32,
    margin: u32,
) -> Result<BranchTable> {
    check_highest_weight(algebra, lambda)?;
    let ch = character_by_kostant(algebra, lambda, depth)?;
    let counts = peel_series(algebra, lambda, winding, &ch, margin)?;
    BranchTable::from_counts(algebra, winding, lambda, depth, margin, Method::Peel, counts)
}

/// Writes a truncated character `ch` with top `lambda` as a nonnegative
/// combination of dotted characters; returns the coefficients at most
/// `ch.depth() − margin` below `lambda`.
pub fn peel_series(
    algebra: &AffineAlgebra,
    lambda: &Weight,
    winding: &WindingData,
    ch: &FormalSeries,
    margin: u32,
) -> Result<BTreeMap<Weight, u128>> {
    let depth = ch.depth();
    let mut dotted = KostantMultiplicity::dotted(algebra, winding)?;
    let finite_height = |mu: &Weight| -> Rat {
        algebra.root_coords(&(lambda - mu)).map_or_else(Rat::zero, |k| k[1..].iter().sum())
    };
    let order_key = |mu: &Weight| (depth_below(lambda, mu), finite_height(mu), mu.clone());

    let mut residual = ch.clone();
    let mut queue: BTreeSet<(Rat, Rat, Weight)> = residual
        .iter()
        .filter(|(w, _)| winding.is_dotted_dominant_integral(w))
        .map(|(w, _)| order_key(w))
        .collect();
    let mut found = BTreeMap::new();
    while let Some(key) = queue.pop_first() {
        let eta = key.2;
        let c = residual.coeff(&eta);
        if c < 0 {
            return Err(Error::InconsistentTruncation(format!("coefficient {c} at {eta}")));
        }
        if c == 0 {
            continue;
        }
        found.insert(eta.clone(), c as u128);
        let component = dotted.character(&eta, lambda, depth)?;
        for (mu, m) in component.iter() {
            let before = residual.coeff(mu);
            residual.add_term(mu.clone(), -c.checked_mul(*m).ok_or(Error::Overflow)?)?;
            if before == 0 && winding.is_dotted_dominant_integral(mu) {
                let k = order_key(mu);
                if k > (depth_below(lambda, &eta), finite_height(&eta), eta.clone()) {
                    queue.insert(k);
                }
            }
        }
    }

    let limit = depth.checked_sub(margin);
    let bad: Vec<String> = residual
        .iter()
        .filter(|(w, _)| limit.is_some_and(|l| residual.within(w, l)))
        .map(|(w, c)| format!("{c} at {w}"))
        .collect();
    if !bad.is_empty() {
        return Err(Error::InconsistentTruncation(format!("nonzero residual: {}", bad.join(", "))));
    }
    Ok(found
        .into_iter()
        .filter(|(w, _)| limit.is_some_and(|l| residual.within(w, l)))
        .collect())
}

/// Values reported by each method; `None` where a method was not evaluated.
#[derive(Clone, Debug, Default)]
pub struct MethodValues {
    pub paths: BTreeMap<Weight, u128>,
    pub steinberg: BTreeMap<Weight, u128>,
    pub signed: BTreeMap<Weight, i128>,
    pub peel: BTreeMap<Weight, u128>,
}

impl MethodValues {
    /// Every component reported by any method.
    pub fn keys(&self) -> BTreeSet<Weight> {
        self.paths
            .keys()
            .chain(self.steinberg.keys())
            .chain(self.signed.keys())
            .chain(self.peel.keys())
            .cloned()
            .collect()
    }
}

/// Paths, signed paths and peeling, computed serially. The Steinberg values
/// are left for the caller to fill in at [`steinberg_keys`].
pub fn collect_method_values(
    algebra: &AffineAlgebra,
    lambda: &Weight,
    winding: &WindingData,
    depth: u32,
    margin: u32,
) -> Result<MethodValues> {
    Ok(MethodValues {
        paths: dominant_path_counts(algebra, lambda, winding, depth)?,
        steinberg: BTreeMap::new(),
        signed: signed_path_sums(algebra, lambda, winding, depth, margin)?,
        peel: peel_oracle(algebra, lambda, winding, depth, margin)?.to_map(),
    })
}

/// Where the Steinberg sum has to be evaluated: every candidate component
/// and every endpoint some other method reported.
pub fn steinberg_keys(
    algebra: &AffineAlgebra,
    lambda: &Weight,
    winding: &WindingData,
    depth: u32,
    values: &MethodValues,
) -> Result<Vec<Weight>> {
    let mut keys = values.keys();
    keys.extend(dotted_dominant_candidates(algebra, lambda, winding, depth)?);
    Ok(keys.into_iter().collect())
}

/// Merges per-method values into one table. Each row reports the Steinberg
/// value, which needs no margin; the other methods are compared with it on
/// rows at most `depth − margin` below `λ`, and `verified` records whether
/// they all agree there.
pub fn combine_methods(
    algebra: &AffineAlgebra,
    lambda: &Weight,
    winding: &WindingData,
    depth: u32,
    margin: u32,
    values: &MethodValues,
) -> Result<BranchTable> {
    let inner = depth.checked_sub(margin);
    let mut rows = Vec::new();
    let mut verified = true;
    for weight in values.keys() {
        let d = depth_of(lambda, &weight)
            .ok_or_else(|| Error::InconsistentTruncation(format!("component {weight} is not below {lambda}")))?;
        let mult = *values.steinberg.get(&weight).ok_or_else(|| {
            Error::InconsistentTruncation(format!("steinberg value missing at {weight}"))
        })?;
        let compared = inner.is_some_and(|l| d <= l);
        let others = [
            (Method::Paths, values.paths.get(&weight).map_or(0, |&v| v as i128)),
            (Method::Signed, values.signed.get(&weight).copied().unwrap_or(0)),
            (Method::Peel, values.peel.get(&weight).map_or(0, |&v| v as i128)),
        ];
        let mut methods = alloc::vec![Method::Steinberg];
        for (m, v) in others {
            // signed and peel values are only meaningful inside the margin
            if v == mult as i128 && (compared || m == Method::Paths) {
                methods.push(m);
            } else if compared {
                verified = false;
            }
        }
        methods.sort();
        if mult != 0 || compared {
            rows.push(BranchRow { weight, depth: d, mult, methods });
        }
    }
    rows.retain(|r| r.mult != 0 || r.methods.len() < 4);
    rows.sort_by(|a, b| (a.depth, &a.weight).cmp(&(b.depth, &b.weight)));
    Ok(BranchTable {
        algebra: algebra.clone(),
        u: winding.u(),
        lambda: lambda.clone(),
        depth,
        margin,
        rows,
        verified,
    })
}

/// All four methods, serially, merged by [`combine_methods`].
pub fn branch_all(
    algebra: &AffineAlgebra,
    lambda: &Weight,
    winding: &WindingData,
    depth: u32,
    margin: u32,
) -> Result<BranchTable> {
    let mut values = collect_method_values(algebra, lambda, winding, depth, margin)?;
    let mut st = Steinberg::new(algebra, winding)?;
    for key in steinberg_keys(algebra, lambda, winding, depth, &values)? {
        let v = st.coefficient(lambda, &key)?;
        values.steinberg.insert(key, v);
    }
    combine_methods(algebra, lambda, winding, depth, margin, &values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use alloc::vec;

    fn a1() -> AffineAlgebra {
        AffineAlgebra::affine_a(1).unwrap()
    }

    fn lam(alg: &AffineAlgebra, labels: &[i64]) -> Weight {
        alg.weight(labels).unwrap()
    }

    #[test]
    fn multiplicity_examples() {
        let alg = a1();
        let l0 = lam(&alg, &[1, 0]);
        let delta = alg.delta();
        assert_eq!(weight_multiplicity(&alg, &l0, &l0, true).unwrap(), 1);
        assert_eq!(weight_multiplicity(&alg, &l0, &(&l0 - &delta), true).unwrap(), 1);
        assert_eq!(weight_multiplicity(&alg, &l0, &(&l0 - &delta.scale(&rat(2))), true).unwrap(), 2);
        // λ − μ outside Q_+
        assert_eq!(weight_multiplicity(&alg, &l0, &(&l0 + &delta), false).unwrap(), 0);
        let off_lattice = Weight::new(vec![rat(1), rat(0)], ratio(-1, 2));
        assert_eq!(weight_multiplicity(&alg, &l0, &off_lattice, false).unwrap(), 0);
        assert_eq!(
            weight_multiplicity(&alg, &Weight::from_ints(&[-1, 1], 0), &l0, false),
            Err(Error::NotDominantIntegral)
        );
    }

    #[test]
    fn lambda1_depth0_character() {
        let alg = a1();
        let l1 = lam(&alg, &[0, 1]);
        let ch = character_by_paths(&alg, &l1, 0).unwrap();
        assert_eq!(ch.len(), 2);
        assert_eq!(ch.coeff(&l1), 1);
        assert_eq!(ch.coeff(&(&l1 - &alg.simple_root(1).unwrap())), 1);
    }

    #[test]
    fn kac_identity_and_mutation() {
        let alg = a1();
        assert!(verify_kac_character(&alg, &Weight::zero(2), 3, 1).unwrap());
        let l0 = lam(&alg, &[1, 0]);
        assert!(verify_kac_character(&alg, &l0, 3, 1).unwrap());
        let mut ch = character_by_paths(&alg, &l0, 3).unwrap();
        ch.add_term(&l0 - &alg.delta(), 1).unwrap();
        assert!(!kac_identity_holds(&alg, &l0, &ch, 1).unwrap());
    }

    #[test]
    fn u_one_is_irreducible() {
        let alg = a1();
        let w = WindingData::new(&alg, 1).unwrap();
        for labels in [[1, 0], [0, 1], [1, 1], [2, 0]] {
            let l = lam(&alg, &labels);
            for d in 0..=3 {
                let t = branch_via_paths(&alg, &l, &w, d).unwrap();
                assert_eq!(t.to_map(), BTreeMap::from([(l.clone(), 1)]));
                assert_eq!(peel_oracle(&alg, &l, &w, d, 0).unwrap().to_map(), BTreeMap::from([(l.clone(), 1)]));
            }
        }
    }

    #[test]
    fn depth_zero_l0_u2() {
        let alg = a1();
        let w = WindingData::new(&alg, 2).unwrap();
        let l0 = lam(&alg, &[1, 0]);
        let t = branch_via_paths(&alg, &l0, &w, 0).unwrap();
        assert_eq!(t.to_map(), BTreeMap::from([(l0.clone(), 1)]));
        assert_eq!(w.dotted_labels(&l0), vec![rat(2), rat(0)]);
    }

    #[test]
    fn steinberg_trivial_cases() {
        let alg = a1();
        let w = WindingData::new(&alg, 2).unwrap();
        let l0 = lam(&alg, &[1, 0]);
        assert_eq!(branch_via_steinberg(&alg, &l0, &l0, &w).unwrap(), 1);
        assert_eq!(branch_via_steinberg(&alg, &l0, &(&l0 + &alg.delta()), &w).unwrap(), 0);
        assert!(matches!(
            branch_via_steinberg(&alg, &l0, &Weight::from_ints(&[1, 0], 0).scale(&rat(2)), &w),
            Err(Error::LevelMismatch { .. })
        ));
        assert_eq!(
            branch_via_steinberg(&alg, &l0, &Weight::from_ints(&[3, -1], 0), &w),
            Err(Error::NotDominant)
        );
    }

    #[test]
    fn independent_methods_agree_l0_u2() {
        let alg = a1();
        let w = WindingData::new(&alg, 2).unwrap();
        let l0 = lam(&alg, &[1, 0]);
        let stein = branch_table_via_steinberg(&alg, &l0, &w, 3).unwrap();
        let peel = peel_oracle(&alg, &l0, &w, 3, 0).unwrap();
        assert_eq!(stein.to_map(), peel.to_map());
        let signed = branch_signed_paths(&alg, &l0, &w, 4, 2).unwrap();
        assert_eq!(signed.to_map(), stein.restricted(2));
        let all = branch_all(&alg, &l0, &w, 3, 2).unwrap();
        assert!(all.verified, "{all:?}");
        assert_eq!(all.to_map(), stein.to_map());
    }

    // m(Λ_0 − 2δ) = 2 but the top component L̇(Λ_0) only accounts for one of
    // them, so Λ_0 − 2δ is a component. Neither LS path ending there stays in
    // the dotted chamber: ⟨π(t), ḣ_0⟩ bottoms out at −2/3 on one of them.
    #[test]
    fn dominant_paths_miss_a_component() {
        let alg = a1();
        let w = WindingData::new(&alg, 2).unwrap();
        let l0 = lam(&alg, &[1, 0]);
        let target = &l0 - &alg.delta().scale(&rat(2));
        assert_eq!(weight_multiplicity(&alg, &l0, &target, true).unwrap(), 2);
        let mut top = KostantMultiplicity::dotted(&alg, &w).unwrap();
        assert_eq!(top.multiplicity(&l0, &target).unwrap(), 1);
        assert_eq!(branch_via_steinberg(&alg, &l0, &target, &w).unwrap(), 1);
        assert_eq!(branch_via_paths(&alg, &l0, &w, 2).unwrap().multiplicity(&target), 0);
        let below = &l0 - &alg.simple_root(0).unwrap();
        assert_eq!(branch_via_paths(&alg, &l0, &w, 1).unwrap().multiplicity(&below), 1);
        assert_eq!(branch_via_steinberg(&alg, &l0, &below, &w).unwrap(), 1);
    }

    #[test]
    fn partner_examples() {
        let alg = a1();
        let w = WindingData::new(&alg, 2).unwrap();
        let dotted = Basis::dotted(&w);
        let l1 = lam(&alg, &[0, 1]);
        let pi = Path::straight(&(&l1 - &alg.simple_root(1).unwrap()));
        assert_eq!(pi.segments()[0].labels()[1], rat(-1));
        let partner = cancel_partner(&pi, &w).unwrap();
        let a = straighten_shifted(&dotted, &pi.endpoint()).unwrap();
        let b = straighten_shifted(&dotted, &partner.endpoint()).unwrap();
        assert_eq!(a.dominant, b.dominant);
        assert_eq!(a.sign, -b.sign);

        assert_eq!(cancel_partner(&Path::straight(&l1), &w), Err(Error::DominantInput));
    }

    #[test]
    fn peel_rejects_an_inconsistent_series() {
        let alg = a1();
        let w = WindingData::new(&alg, 2).unwrap();
        let l0 = lam(&alg, &[1, 0]);
        let mut ch = character_by_kostant(&alg, &l0, 2).unwrap();
        // drop one non-dominant weight of the top component
        let hole = &l0 - &alg.simple_root(0).unwrap();
        let c = ch.coeff(&hole);
        assert!(c > 0);
        ch.add_term(hole, -c).unwrap();
        assert!(matches!(peel_series(&alg, &l0, &w, &ch, 0), Err(Error::InconsistentTruncation(_))));
    }

    #[test]
    fn candidates_satisfy_table_invariants() {
        let alg = AffineAlgebra::affine_a(2).unwrap();
        let w = WindingData::new(&alg, 3).unwrap();
        let l = lam(&alg, &[1, 1, 0]);
        let kd = w.central_element(&alg);
        for c in dotted_dominant_candidates(&alg, &l, &w, 2).unwrap() {
            assert!(w.is_dotted_dominant_integral(&c));
            assert_eq!(c.pair(&kd), rat(6));
            assert!(depth_of(&l, &c).is_some_and(|d| d <= 2));
        }
    }
}
