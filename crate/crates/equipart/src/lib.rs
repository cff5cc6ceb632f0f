//! Spectral extremal bounds for regular graphs, exact verification and
//! search of perfect 2-colorings (equitable partitions), and the graph
//! interchange formats used by the `equipart` CLI.
//!
//! Counting quantities (edge counts between sets, average internal degrees,
//! quotient matrices) are exact integer/rational arithmetic throughout, so
//! tightness of a bound is decidable; floating point only enters through
//! the eigensolver and is never the authority on a tightness claim.

pub mod bitset;
pub mod bounds;
pub mod equitable;
pub mod families;
pub mod graph;
pub mod io;
pub mod report;
pub mod search;
pub mod spectral;

/// Exact rational number used for all counting quantities.
pub type Rat = num_rational::Rational64;

pub use bitset::BitSet;
pub use bounds::BoundsError;
pub use equitable::{QuotientMatrix2, SpectralQuotient};
pub use families::Family;
pub use graph::{AmplyParams, Graph, GraphError, VertexSet};
pub use report::{BoundReport, ReportDocument, Scalar, Tightness};
pub use search::{Objective, OracleResult, SearchConstraints};
pub use spectral::{IndicatorExpansion, Spectrum};
