//! JSON shapes. Rationals are strings ("p/q", or an integer) so nothing is
//! lost on the way through a JSON number type.

use kmbranch_core::branching::{BranchRow, BranchTable, Method};
use kmbranch_core::rational::{format_rational, parse_rational};
use kmbranch_core::{AffineAlgebra, Error, Path, Weight};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightJson {
    pub labels: Vec<String>,
    pub d: String,
}

impl From<&Weight> for WeightJson {
    fn from(w: &Weight) -> Self {
        WeightJson { labels: w.labels().iter().map(format_rational).collect(), d: format_rational(w.d()) }
    }
}

impl TryFrom<&WeightJson> for Weight {
    type Error = Error;

    fn try_from(w: &WeightJson) -> Result<Weight, Error> {
        let labels = w.labels.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(Weight::new(labels, parse_rational(&w.d)?))
    }
}

/// An LS path as the list of its segment vectors.
pub type PathJson = Vec<WeightJson>;

pub fn path_to_json(p: &Path) -> PathJson {
    p.segments().iter().map(WeightJson::from).collect()
}

pub fn path_from_json(rank: usize, p: &PathJson) -> Result<Path, Error> {
    let segments = p.iter().map(Weight::try_from).collect::<Result<Vec<_>, _>>()?;
    if let Some(bad) = segments.iter().find(|s| s.rank() != rank) {
        return Err(Error::DimensionMismatch { expected: rank, found: bad.rank() });
    }
    Ok(Path::from_segments(rank, segments))
}

/// Algebra input: `{"cartan": [[...]]}`, optionally with a preset name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub cartan: Vec<Vec<i64>>,
}

impl From<&AffineAlgebra> for AlgebraJson {
    fn from(a: &AffineAlgebra) -> Self {
        AlgebraJson { name: a.name().map(str::to_owned), cartan: a.cartan().to_vec() }
    }
}

impl TryFrom<&AlgebraJson> for AffineAlgebra {
    type Error = Error;

    fn try_from(a: &AlgebraJson) -> Result<AffineAlgebra, Error> {
        if let Some(name) = &a.name {
            let alg = AffineAlgebra::preset(name)?;
            if alg.cartan() == a.cartan.as_slice() {
                return Ok(alg);
            }
        }
        AffineAlgebra::new(&a.cartan)
    }
}

/// Everything `kmbranch algebra` reports.
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub cartan: Vec<Vec<i64>>,
    pub rank: usize,
    pub a: Vec<i64>,
    pub c: Vec<i64>,
    pub coxeter_number: i64,
    pub dual_coxeter_number: i64,
    pub rho: WeightJson,
    pub delta: WeightJson,
}

impl From<&AffineAlgebra> for AlgebraReport {
    fn from(a: &AffineAlgebra) -> Self {
        AlgebraReport {
            name: a.name().map(str::to_owned),
            cartan: a.cartan().to_vec(),
            rank: a.rank(),
            a: a.a().to_vec(),
            c: a.c().to_vec(),
            coxeter_number: a.coxeter_number(),
            dual_coxeter_number: a.dual_coxeter_number(),
            rho: (&a.rho()).into(),
            delta: (&a.delta()).into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowJson {
    pub labels: Vec<String>,
    pub d: String,
    pub depth: u32,
    pub mult: u128,
    pub methods: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub algebra: AlgebraJson,
    pub u: i64,
    pub lambda: WeightJson,
    pub depth: u32,
    pub margin: u32,
    pub rows: Vec<RowJson>,
    pub verified: bool,
}

impl From<&BranchTable> for TableJson {
    fn from(t: &BranchTable) -> Self {
        TableJson {
            algebra: (&t.algebra).into(),
            u: t.u,
            lambda: (&t.lambda).into(),
            depth: t.depth,
            margin: t.margin,
            rows: t
                .rows
                .iter()
                .map(|r| {
                    let w = WeightJson::from(&r.weight);
                    RowJson {
                        labels: w.labels,
                        d: w.d,
                        depth: r.depth,
                        mult: r.mult,
                        methods: r.methods.iter().map(|m| m.name().to_owned()).collect(),
                    }
                })
                .collect(),
            verified: t.verified,
        }
    }
}

impl TryFrom<&TableJson> for BranchTable {
    type Error = Error;

    fn try_from(t: &TableJson) -> Result<BranchTable, Error> {
        let rows = t
            .rows
            .iter()
            .map(|r| {
                let weight = Weight::try_from(&WeightJson { labels: r.labels.clone(), d: r.d.clone() })?;
                let methods = r
                    .methods
                    .iter()
                    .map(|m| Method::from_name(m).ok_or_else(|| Error::Parse(format!("unknown method {m:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(BranchRow { weight, depth: r.depth, mult: r.mult, methods })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(BranchTable {
            algebra: AffineAlgebra::try_from(&t.algebra)?,
            u: t.u,
            lambda: Weight::try_from(&t.lambda)?,
            depth: t.depth,
            margin: t.margin,
            rows,
            verified: t.verified,
        })
    }
}
