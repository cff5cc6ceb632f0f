//! Report value objects shared by the bounds module, the JSON schema and
//! the CLI.

use crate::equitable::QuotientMatrix2;
use crate::graph::{AmplyParams, VertexSet};
use crate::Rat;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;

/// A number that is either exact (rational) or approximate (float).
/// Exact values serialize as {"num": …, "den": …}; floats carry an explicit
/// "approx": true marker so tightness information survives serialization.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum Scalar {
    Exact(Rat),
    Approx(f64),
}

impl Scalar {
    pub fn as_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => *r.numer() as f64 / *r.denom() as f64,
            Scalar::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<Rat> {
        match self {
            Scalar::Exact(r) => Some(*r),
            Scalar::Approx(_) => None,
        }
    }
}

impl From<Rat> for Scalar {
    fn from(r: Rat) -> Self {
        Scalar::Exact(r)
    }
}

impl From<i64> for Scalar {
    fn from(i: i64) -> Self {
        Scalar::Exact(Rat::from(i))
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::Approx(x)
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Exact(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Exact(r) => write!(f, "{}/{} ({:.6})", r.numer(), r.denom(), self.as_f64()),
            Scalar::Approx(x) => write!(f, "{x:.9}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(r) => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("num", r.numer())?;
                map.serialize_entry("den", r.denom())?;
                map.end()
            }
            Scalar::Approx(x) => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("value", x)?;
                map.serialize_entry("approx", &true)?;
                map.end()
            }
        }
    }
}

/// Tightness verdict of a bound evaluation. `Tight` is only ever issued on
/// the strength of the exact combinatorial verifier; a floating-point
/// equality that could not be confirmed exactly reports
/// `NumericTightUnverified`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tightness {
    Tight,
    NotTight,
    NumericTightUnverified,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub set: Vec<usize>,
    #[serde(serialize_with = "serialize_quotient")]
    pub quotient: QuotientMatrix2,
}

fn serialize_quotient<S: Serializer>(q: &QuotientMatrix2, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(2))?;
    seq.serialize_element(&[q.a, q.b])?;
    seq.serialize_element(&[q.c, q.d])?;
    seq.end()
}

/// Evaluation of one named bound: its value, what the given subset attains,
/// the tightness verdict, a verified witness when tight, and named
/// intermediate quantities.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub value: Scalar,
    pub attained: Scalar,
    pub tightness: Tightness,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub detail: BTreeMap<String, Scalar>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn new(name: &str, value: Scalar, attained: Scalar) -> Self {
        BoundReport {
            name: name.to_string(),
            value,
            attained,
            tightness: Tightness::NotTight,
            witness: None,
            detail: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn is_tight(&self) -> bool {
        self.tightness == Tightness::Tight
    }

    pub fn with_witness(mut self, set: &VertexSet, quotient: QuotientMatrix2) -> Self {
        self.tightness = Tightness::Tight;
        self.witness = Some(Witness {
            set: set.iter().collect(),
            quotient,
        });
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AmplyParamsSummary {
    pub r: usize,
    pub lambda_g: usize,
    pub mu: usize,
    pub p2: Scalar,
    pub p1: Scalar,
    pub p0: Scalar,
}

impl From<&AmplyParams> for AmplyParamsSummary {
    fn from(p: &AmplyParams) -> Self {
        AmplyParamsSummary {
            r: p.r,
            lambda_g: p.lambda_g,
            mu: p.mu,
            p2: p.p2.into(),
            p1: p.p1.into(),
            p0: p.p0.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub edge_count: usize,
    pub regular: Option<usize>,
    pub connected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub amply_regular: Option<AmplyParamsSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub amply_regular_rejection: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumEntry {
    pub value: f64,
    pub multiplicity: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integral: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ColoringEntry {
    pub set: Vec<usize>,
    #[serde(serialize_with = "serialize_quotient")]
    pub quotient: QuotientMatrix2,
    pub eigenvalue: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleSummary {
    pub objective: String,
    pub value: Scalar,
    pub best: Vec<usize>,
    pub optima: Vec<Vec<usize>>,
}

/// Top-level JSON document emitted by the CLI.
#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub tolerance: f64,
    pub graph: GraphSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Vec<SpectrumEntry>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub bounds: Vec<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colorings: Option<Vec<ColoringEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified_quotient: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ReportDocument {
    pub fn new(graph: GraphSummary, tolerance: f64) -> Self {
        ReportDocument {
            tool: "equipart".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            tolerance,
            graph,
            spectrum: None,
            bounds: Vec::new(),
            colorings: None,
            oracle: None,
            verified_quotient: None,
            notes: Vec::new(),
        }
    }
}
