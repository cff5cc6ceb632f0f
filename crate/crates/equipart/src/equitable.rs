//! Exact verification of perfect colorings and quotient-matrix arithmetic.
//!
//! Everything here is integer counting; spectral data only ever enters
//! through `quotient_from_spectral_data`, whose output is marked exact only
//! when the eigenvalue is integral and the entries reconfirm in rationals.

use crate::graph::{AmplyParams, Graph, VertexSet};
use crate::Rat;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum EquitableError {
    #[error("graph is not regular")]
    NotRegular,
    #[error("both classes of a 2-coloring must be nonempty")]
    TrivialClass,
    #[error("color class {0} is empty")]
    EmptyClass(usize),
    #[error("rows of a quotient matrix must have equal sums")]
    RowSumMismatch,
    #[error("quotient entry {0} is not a nonnegative integer")]
    NonIntegerEntry(String),
    #[error("lambda must differ from the degree r")]
    DegenerateEigenvalue,
    #[error("class sizes must be positive")]
    EmptySide,
    #[error("zero denominator in class-size formula")]
    ZeroDenominator,
}

/// Quotient matrix ((a,b),(c,d)) of a 2-class equitable partition.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct QuotientMatrix2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl QuotientMatrix2 {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, EquitableError> {
        if a + b != c + d {
            return Err(EquitableError::RowSumMismatch);
        }
        Ok(QuotientMatrix2 { a, b, c, d })
    }

    pub fn degree(&self) -> i64 {
        self.a + self.b
    }

    /// Quotient with the class roles swapped.
    pub fn transposed_roles(&self) -> QuotientMatrix2 {
        QuotientMatrix2 { a: self.d, b: self.c, c: self.b, d: self.a }
    }
}

impl std::fmt::Display for QuotientMatrix2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(({},{}),({},{}))", self.a, self.b, self.c, self.d)
    }
}

/// Second eigenvalue r − b − c of a 2-class quotient matrix.
pub fn quotient_second_eigenvalue(q: &QuotientMatrix2) -> i64 {
    q.degree() - q.b - q.c
}

/// Checks whether {S, V∖S} is an equitable partition by exact counting.
/// Returns the quotient matrix when it is.
pub fn verify_two_coloring(
    g: &Graph,
    s: &VertexSet,
) -> Result<Option<QuotientMatrix2>, EquitableError> {
    let r = g.is_regular().ok_or(EquitableError::NotRegular)? as i64;
    if s.is_empty() || s.size() == g.n() {
        return Err(EquitableError::TrivialClass);
    }
    let mut a: Option<i64> = None;
    let mut c: Option<i64> = None;
    for v in 0..g.n() {
        let into_s = g.neighbors(v).intersection_len(s.members()) as i64;
        let slot = if s.contains(v) { &mut a } else { &mut c };
        match slot {
            None => *slot = Some(into_s),
            Some(k) if *k != into_s => return Ok(None),
            _ => {}
        }
    }
    let (a, c) = (a.unwrap(), c.unwrap());
    Ok(Some(QuotientMatrix2 { a, b: r - a, c, d: r - c }))
}

/// Checks whether a k-coloring is perfect; returns the k×k quotient matrix.
/// Colors must be `0..k` with every class nonempty.
pub fn verify_coloring(
    g: &Graph,
    colors: &[usize],
) -> Result<Option<Vec<Vec<i64>>>, EquitableError> {
    assert_eq!(colors.len(), g.n(), "one color per vertex");
    let k = colors.iter().copied().max().map_or(0, |m| m + 1);
    let mut class_size = vec![0usize; k];
    for &c in colors {
        class_size[c] += 1;
    }
    if let Some(i) = class_size.iter().position(|&s| s == 0) {
        return Err(EquitableError::EmptyClass(i));
    }
    let mut q: Vec<Vec<Option<i64>>> = vec![vec![None; k]; k];
    for v in 0..g.n() {
        let mut counts = vec![0i64; k];
        for u in g.neighbors(v).iter() {
            counts[colors[u]] += 1;
        }
        let row = &mut q[colors[v]];
        for (j, &cnt) in counts.iter().enumerate() {
            match row[j] {
                None => row[j] = Some(cnt),
                Some(expect) if expect != cnt => return Ok(None),
                _ => {}
            }
        }
    }
    Ok(Some(
        q.into_iter()
            .map(|row| row.into_iter().map(|x| x.unwrap()).collect())
            .collect(),
    ))
}

/// Quotient matrix produced from spectral parameters. `exact` is true only
/// when the eigenvalue was integral and the entries reconfirmed in rational
/// arithmetic; approximate quotients must not be used for tightness claims.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SpectralQuotient {
    pub q: QuotientMatrix2,
    pub exact: bool,
}

/// Builds the quotient matrix an equitable partition with eigenvalue λ and
/// class sizes (|A|, |B|) would have to carry:
/// ((r|A|+λ|B|)/n, (r−λ)|B|/n; (r−λ)|A|/n, (r|B|+λ|A|)/n).
pub fn quotient_from_spectral_data(
    r: i64,
    lambda: f64,
    size_a: usize,
    size_b: usize,
) -> Result<SpectralQuotient, EquitableError> {
    if size_a == 0 || size_b == 0 {
        return Err(EquitableError::EmptySide);
    }
    if (lambda - r as f64).abs() < 1e-12 {
        return Err(EquitableError::DegenerateEigenvalue);
    }
    let n = (size_a + size_b) as f64;
    let (sa, sb) = (size_a as f64, size_b as f64);
    let entries = [
        ((r as f64) * sa + lambda * sb, "a"),
        ((r as f64 - lambda) * sb, "b"),
        ((r as f64 - lambda) * sa, "c"),
        ((r as f64) * sb + lambda * sa, "d"),
    ];
    let mut snapped = [0i64; 4];
    for (i, (numer, name)) in entries.iter().enumerate() {
        let value = numer / n;
        let rounded = value.round();
        if (value - rounded).abs() > 1e-6 || rounded < 0.0 {
            return Err(EquitableError::NonIntegerEntry(format!("{name} = {value}")));
        }
        snapped[i] = rounded as i64;
    }
    let q = QuotientMatrix2::new(snapped[0], snapped[1], snapped[2], snapped[3])?;

    let rounded_lambda = lambda.round();
    let exact = if (lambda - rounded_lambda).abs() <= 1e-6 {
        // reconfirm every entry as an exact rational
        let lam = Rat::from(rounded_lambda as i64);
        let (ra, rb) = (Rat::from(size_a as i64), Rat::from(size_b as i64));
        let rn = ra + rb;
        let rr = Rat::from(r);
        (rr * ra + lam * rb) / rn == Rat::from(q.a)
            && (rr - lam) * rb / rn == Rat::from(q.b)
            && (rr - lam) * ra / rn == Rat::from(q.c)
            && (rr * rb + lam * ra) / rn == Rat::from(q.d)
    } else {
        false
    };
    Ok(SpectralQuotient { q, exact })
}

/// Class size forced by the quotient matrix of a perfect 2-coloring of an
/// amply regular graph: (β−p(a))·n / (p₂(r−a)² + β−p(a)).
pub fn predicted_class_size(
    params: &AmplyParams,
    q: &QuotientMatrix2,
    n: usize,
) -> Result<Rat, EquitableError> {
    let a = Rat::from(q.a);
    let beta = params.p2 * (a * a + Rat::from(q.b * q.c)) + params.p1 * a + params.p0;
    let pa = params.eval(a);
    let r = Rat::from(params.r as i64);
    let denom = params.p2 * (r - a) * (r - a) + beta - pa;
    if denom == Rat::from(0) {
        return Err(EquitableError::ZeroDenominator);
    }
    Ok((beta - pa) * Rat::from(n as i64) / denom)
}

/// σ₂ value forced on the first class: β = p₂(a²+bc) + p₁a + p₀.
pub fn quotient_beta(params: &AmplyParams, q: &QuotientMatrix2) -> Rat {
    let a = Rat::from(q.a);
    params.p2 * (a * a + Rat::from(q.b * q.c)) + params.p1 * a + params.p0
}
