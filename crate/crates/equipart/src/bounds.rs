//! Spectral and combinatorial extremal bounds with tightness certification.
//!
//! Every tightness verdict is decided by the exact integer verifier in the
//! `equitable` module. Numeric equality that cannot be confirmed exactly
//! (irrational eigenvalues) is reported as `NumericTightUnverified`.

use crate::equitable::{verify_coloring, verify_two_coloring, QuotientMatrix2};
use crate::graph::{AmplyParams, Graph, VertexSet};
use crate::report::{BoundReport, Scalar, Tightness};
use crate::spectral::Spectrum;
use crate::Rat;
use num_traits::Signed;
use thiserror::Error;

/// Numeric slack for float-side tightness detection.
pub const NUMERIC_TIGHT_TOL: f64 = 1e-8;

#[derive(Debug, Error, PartialEq)]
pub enum BoundsError {
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex set must be a nonempty proper subset")]
    TrivialSet,
    #[error("vertex {vertex} violates the hypothesis: {reason}")]
    VertexViolation { vertex: usize, reason: String },
    #[error("degenerate denominator: 2r - a - d must be positive")]
    DegenerateDenominator,
    #[error("sigma(S) = {sigma} exceeds a = {a}")]
    SigmaExceedsBound { sigma: Rat, a: Rat },
    #[error("sigma2(C) = {sigma2} exceeds beta = {beta}")]
    Sigma2ExceedsBeta { sigma2: Rat, beta: Rat },
    #[error("beta = {beta} does not exceed p(a) = {pa}")]
    BetaBelowPolynomial { beta: Rat, pa: Rat },
    #[error("sigma(C) = {0} equals the degree; the bound degenerates")]
    DegenerateAverageDegree(Rat),
    #[error("coloring is not proper: edge ({0},{1}) is monochromatic")]
    ImproperColoring(usize, usize),
    #[error("graph does not match the amply-regular parameters")]
    ParamsMismatch,
    #[error("spectrum was computed for a different graph")]
    SpectrumMismatch,
}

fn rat(n: i64) -> Rat {
    Rat::from(n)
}

fn check_spectrum(g: &Graph, spec: &Spectrum) -> Result<(), BoundsError> {
    if spec.n() != g.n() {
        Err(BoundsError::SpectrumMismatch)
    } else {
        Ok(())
    }
}

fn require_proper_subset(g: &Graph, s: &VertexSet) -> Result<(), BoundsError> {
    if s.is_empty() || s.size() == g.n() {
        Err(BoundsError::TrivialSet)
    } else {
        Ok(())
    }
}

/// Confirms tightness through the exact verifier: the partition must be
/// equitable and carry the expected quotient matrix.
fn certify(g: &Graph, s: &VertexSet, expected: QuotientMatrix2) -> Option<QuotientMatrix2> {
    match verify_two_coloring(g, s) {
        Ok(Some(q)) if q == expected => Some(q),
        _ => None,
    }
}

/// Hamming-type density bound: if every x ∈ S has at most `a` neighbors in S
/// and every y ∉ S has at least `d` neighbors outside S, then
/// |S|/n ≤ (r−d)/(2r−a−d).
pub fn hamming_type(
    g: &Graph,
    s: &VertexSet,
    a: i64,
    d: i64,
) -> Result<BoundReport, BoundsError> {
    let r = g.is_regular().ok_or(BoundsError::NotRegular)? as i64;
    require_proper_subset(g, s)?;
    for v in 0..g.n() {
        let into_s = g.neighbors(v).intersection_len(s.members()) as i64;
        if s.contains(v) {
            if into_s > a {
                return Err(BoundsError::VertexViolation {
                    vertex: v,
                    reason: format!("{into_s} neighbors in S, hypothesis allows at most {a}"),
                });
            }
        } else if r - into_s < d {
            return Err(BoundsError::VertexViolation {
                vertex: v,
                reason: format!(
                    "{} neighbors outside S, hypothesis requires at least {d}",
                    r - into_s
                ),
            });
        }
    }
    if 2 * r - a - d <= 0 {
        return Err(BoundsError::DegenerateDenominator);
    }
    let value = Rat::new(r - d, 2 * r - a - d);
    let attained = Rat::new(s.size() as i64, g.n() as i64);
    let mut report = BoundReport::new("hamming_type", value.into(), attained.into());
    report.detail.insert("a".into(), a.into());
    report.detail.insert("d".into(), d.into());
    if attained == value {
        let expected = QuotientMatrix2 { a, b: r - a, c: r - d, d };
        match certify(g, s, expected) {
            Some(q) => report = report.with_witness(s, q),
            None => report
                .notes
                .push("density matches the bound but the verifier rejected the quotient".into()),
        }
    }
    Ok(report)
}

/// Hoffman average-degree bound: σ(S) ≤ a implies
/// |S| ≤ (a−λ_min)·n/(r−λ_min).
pub fn hoffman_average(
    g: &Graph,
    spec: &Spectrum,
    s: &VertexSet,
    a: Rat,
) -> Result<BoundReport, BoundsError> {
    let r = g.is_regular().ok_or(BoundsError::NotRegular)? as i64;
    check_spectrum(g, spec)?;
    require_proper_subset(g, s)?;
    let sigma = g.sigma(s).expect("nonempty");
    if sigma > a {
        return Err(BoundsError::SigmaExceedsBound { sigma, a });
    }
    let n = rat(g.n() as i64);
    let attained = rat(s.size() as i64);
    let mut report;
    match spec.lambda_min_integral() {
        Some(lmin) => {
            let value = (a - rat(lmin)) * n / (rat(r) - rat(lmin));
            report = BoundReport::new("hoffman_average", value.into(), attained.into());
            report.detail.insert("lambda_min".into(), lmin.into());
            if attained == value {
                if a.is_integer() {
                    let ai = a.to_integer();
                    let expected = QuotientMatrix2 {
                        a: ai,
                        b: r - ai,
                        c: ai - lmin,
                        d: r + lmin - ai,
                    };
                    match certify(g, s, expected) {
                        Some(q) => report = report.with_witness(s, q),
                        None => report.notes.push(
                            "size matches the bound but the verifier rejected the quotient".into(),
                        ),
                    }
                } else {
                    report.notes.push("non-integer a cannot yield an integer quotient".into());
                }
            }
        }
        None => {
            let lmin = spec.lambda_min();
            let value =
                (a.to_f64() - lmin) * g.n() as f64 / (r as f64 - lmin);
            report = BoundReport::new("hoffman_average", value.into(), attained.into());
            report.detail.insert("lambda_min".into(), lmin.into());
            if (s.size() as f64 - value).abs() <= NUMERIC_TIGHT_TOL {
                report.tightness = Tightness::NumericTightUnverified;
            }
        }
    }
    report.detail.insert("sigma".into(), sigma.into());
    Ok(report)
}

/// Chromatic corollary: a proper k-coloring with k = (λ_min−r)/λ_min is a
/// perfect k-coloring.
pub fn chromatic_corollary_check(
    g: &Graph,
    spec: &Spectrum,
    colors: &[usize],
) -> Result<BoundReport, BoundsError> {
    let r = g.is_regular().ok_or(BoundsError::NotRegular)? as i64;
    check_spectrum(g, spec)?;
    for (u, v) in g.edges() {
        if colors[u] == colors[v] {
            return Err(BoundsError::ImproperColoring(u, v));
        }
    }
    let k = colors.iter().copied().max().map_or(0, |m| m + 1) as i64;
    let mut report;
    match spec.lambda_min_integral() {
        Some(lmin) if lmin != 0 => {
            let value = Rat::new(lmin - r, lmin);
            report = BoundReport::new("chromatic_corollary", value.into(), k.into());
            if rat(k) == value {
                match verify_coloring(g, colors) {
                    Ok(Some(_)) => {
                        report.tightness = Tightness::Tight;
                        report.notes.push("coloring is perfect".into());
                    }
                    _ => report
                        .notes
                        .push("k matches but the coloring failed exact verification".into()),
                }
            } else {
                report.tightness = Tightness::NotApplicable;
                report.notes.push("corollary not applicable: k differs from (lambda_min - r)/lambda_min".into());
            }
        }
        _ => {
            let lmin = spec.lambda_min();
            let value = (lmin - r as f64) / lmin;
            report = BoundReport::new("chromatic_corollary", value.into(), k.into());
            report.tightness = Tightness::NotApplicable;
            report.notes.push("corollary not applicable: non-integral lambda_min".into());
        }
    }
    Ok(report)
}

fn side_factor(n: i64, size: i64) -> Rat {
    Rat::new(size * (n - size), n)
}

/// Expander Mixing Lemma:
/// |e(A,B) − r|A||B|/n| ≤ |λ|·√(|A||B|(1−|A|/n)(1−|B|/n)).
pub fn expander_mixing(
    g: &Graph,
    spec: &Spectrum,
    a: &VertexSet,
    b: &VertexSet,
) -> Result<BoundReport, BoundsError> {
    let r = g.is_regular().ok_or(BoundsError::NotRegular)? as i64;
    check_spectrum(g, spec)?;
    if !g.is_connected() {
        return Err(BoundsError::Disconnected);
    }
    require_proper_subset(g, a)?;
    require_proper_subset(g, b)?;
    let n = g.n() as i64;
    let (sa, sb) = (a.size() as i64, b.size() as i64);
    let e_ab = g.edge_count_between(a, b) as i64;
    let lhs = (rat(e_ab) - Rat::new(r * sa * sb, n)).abs();
    let lambda = spec.second_max_modulus().expect("n >= 2 for a proper subset");
    let rhs_sq_num =
        rat(sa * sb) * (rat(1) - Rat::new(sa, n)) * (rat(1) - Rat::new(sb, n));
    let rhs = lambda.abs() * rhs_sq_num.to_f64().sqrt();
    let mut report = BoundReport::new("expander_mixing", rhs.into(), lhs.into());
    report.detail.insert("lambda".into(), lambda.into());
    report.detail.insert("e_ab".into(), e_ab.into());

    let lambda_int = {
        let rounded = lambda.round();
        ((lambda - rounded).abs() <= 1e-6).then_some(rounded as i64)
    };
    let tight = match lambda_int {
        Some(li) => lhs * lhs == rat(li * li) * rhs_sq_num,
        None => (lhs.to_f64() - rhs).abs() <= NUMERIC_TIGHT_TOL,
    };
    if tight {
        let complement_pair = *b == a.complement();
        let same = a == b;
        if (same || complement_pair) && lambda_int.is_some() {
            if let Ok(Some(q)) = verify_two_coloring(g, a) {
                let qe = crate::equitable::quotient_second_eigenvalue(&q);
                if qe.abs() == lambda_int.unwrap().abs() {
                    report = report.with_witness(a, q);
                }
            }
        }
        if report.tightness != Tightness::Tight {
            report.tightness = Tightness::NumericTightUnverified;
            report.notes.push("bound attained numerically but not certified".into());
        }
    }
    Ok(report)
}

fn eig_scalar(value: f64, integral: Option<i64>) -> Scalar {
    match integral {
        Some(i) => i.into(),
        None => value.into(),
    }
}

/// One side of the cut / internal-edge corollaries, certified against the
/// expected quotient eigenvalue.
fn certified_side(
    g: &Graph,
    s: &VertexSet,
    name: &str,
    value: Scalar,
    attained: Rat,
    eigenvalue: (f64, Option<i64>),
) -> BoundReport {
    let mut report = BoundReport::new(name, value, attained.into());
    report.detail.insert("eigenvalue".into(), eig_scalar(eigenvalue.0, eigenvalue.1));
    let tight = match (value.exact(), eigenvalue.1) {
        (Some(v), Some(_)) => v == attained,
        _ => (value.as_f64() - attained.to_f64()).abs() <= NUMERIC_TIGHT_TOL,
    };
    if tight {
        match (eigenvalue.1, verify_two_coloring(g, s)) {
            (Some(ei), Ok(Some(q)))
                if crate::equitable::quotient_second_eigenvalue(&q) == ei =>
            {
                report = report.with_witness(s, q);
            }
            _ => {
                report.tightness = Tightness::NumericTightUnverified;
                report.notes.push("bound attained numerically but not certified".into());
            }
        }
    }
    report
}

/// Cut-size corollary: (r−λ₁)|A||B|/n ≤ e(A,B) ≤ (r−λ_k)|A||B|/n for the cut
/// {A, V∖A}. Returns (lower, upper) reports; the upper one also carries the
/// max-cut consequence (r−λ_k)·n/4.
pub fn cut_size_bounds(
    g: &Graph,
    spec: &Spectrum,
    a: &VertexSet,
) -> Result<(BoundReport, BoundReport), BoundsError> {
    let r = g.is_regular().ok_or(BoundsError::NotRegular)? as i64;
    check_spectrum(g, spec)?;
    if !g.is_connected() {
        return Err(BoundsError::Disconnected);
    }
    require_proper_subset(g, a)?;
    let n = g.n() as i64;
    let b = a.complement();
    let cut = rat(g.edge_count_between(a, &b) as i64);
    let factor = side_factor(n, a.size() as i64);
    let lambda1 = spec.second_largest().expect("proper subset implies n >= 2");
    let lambdak = spec.lambda_min();
    let (l1_int, lk_int) = (spec.second_largest_integral(), spec.lambda_min_integral());

    let lower_value = match l1_int {
        Some(l1) => Scalar::from((rat(r) - rat(l1)) * factor),
        None => Scalar::from((r as f64 - lambda1) * factor.to_f64()),
    };
    let upper_value = match lk_int {
        Some(lk) => Scalar::from((rat(r) - rat(lk)) * factor),
        None => Scalar::from((r as f64 - lambdak) * factor.to_f64()),
    };
    let lower = certified_side(g, a, "cut_lower", lower_value, cut, (lambda1, l1_int));
    let mut upper = certified_side(g, a, "cut_upper", upper_value, cut, (lambdak, lk_int));
    let max_cut = match lk_int {
        Some(lk) => Scalar::from((rat(r) - rat(lk)) * rat(n) / rat(4)),
        None => Scalar::from((r as f64 - lambdak) * n as f64 / 4.0),
    };
    upper.detail.insert("max_cut_bound".into(), max_cut);
    Ok((lower, upper))
}

/// Internal-edge corollary:
/// λ_k|C| + (r−λ_k)|C|²/n ≤ e(C,C) ≤ λ₁|C| + (r−λ₁)|C|²/n.
pub fn internal_edge_bounds(
    g: &Graph,
    spec: &Spectrum,
    c: &VertexSet,
) -> Result<(BoundReport, BoundReport), BoundsError> {
    let r = g.is_regular().ok_or(BoundsError::NotRegular)? as i64;
    check_spectrum(g, spec)?;
    if !g.is_connected() {
        return Err(BoundsError::Disconnected);
    }
    require_proper_subset(g, c)?;
    let n = g.n() as i64;
    let size = c.size() as i64;
    let internal = rat(g.edge_count_between(c, c) as i64);
    let lambda1 = spec.second_largest().expect("proper subset implies n >= 2");
    let lambdak = spec.lambda_min();
    let (l1_int, lk_int) = (spec.second_largest_integral(), spec.lambda_min_integral());

    let bound = |lam: f64, lam_int: Option<i64>| -> Scalar {
        match lam_int {
            Some(l) => Scalar::from(rat(l * size) + (rat(r) - rat(l)) * Rat::new(size * size, n)),
            None => Scalar::from(
                lam * size as f64 + (r as f64 - lam) * (size * size) as f64 / n as f64,
            ),
        }
    };
    let lower = certified_side(
        g,
        c,
        "internal_lower",
        bound(lambdak, lk_int),
        internal,
        (lambdak, lk_int),
    );
    let upper = certified_side(
        g,
        c,
        "internal_upper",
        bound(lambda1, l1_int),
        internal,
        (lambda1, l1_int),
    );
    Ok((lower, upper))
}

/// σ₂ bound through the quotient polynomial: σ₂(S) ≤ (p(Q))₁₁ and
/// σ₂(V∖S) ≤ (p(Q))₂₂ with Q = ((a, r−a),(r−d, d)), a = σ(S), d = σ(V∖S).
/// Both inequalities are equalities exactly when {S, V∖S} is equitable with
/// quotient Q.
pub fn krotov_sigma2(
    params: &AmplyParams,
    g: &Graph,
    s: &VertexSet,
) -> Result<BoundReport, BoundsError> {
    if g.is_regular() != Some(params.r) {
        return Err(BoundsError::ParamsMismatch);
    }
    require_proper_subset(g, s)?;
    let r = rat(params.r as i64);
    let comp = s.complement();
    let a = g.sigma(s).expect("nonempty");
    let d = g.sigma(&comp).expect("proper subset");
    let d2 = g.distance2_graph();
    let sigma2_s = d2.sigma(s).expect("nonempty");
    let sigma2_comp = d2.sigma(&comp).expect("proper subset");
    // p(Q) for Q = ((a, r−a),(r−d, d)) in exact rationals
    let off = (r - a) * (r - d);
    let p11 = params.p2 * (a * a + off) + params.p1 * a + params.p0;
    let p22 = params.p2 * (d * d + off) + params.p1 * d + params.p0;

    let mut report = BoundReport::new("krotov_sigma2", p11.into(), sigma2_s.into());
    report.detail.insert("p_q_11".into(), p11.into());
    report.detail.insert("p_q_22".into(), p22.into());
    report.detail.insert("sigma2_s".into(), sigma2_s.into());
    report.detail.insert("sigma2_complement".into(), sigma2_comp.into());
    report.detail.insert("sigma_s".into(), a.into());
    report.detail.insert("sigma_complement".into(), d.into());
    if sigma2_s == p11 && sigma2_comp == p22 && a.is_integer() && d.is_integer() {
        let (ai, di) = (a.to_integer(), d.to_integer());
        let expected = QuotientMatrix2 {
            a: ai,
            b: params.r as i64 - ai,
            c: params.r as i64 - di,
            d: di,
        };
        if let Some(q) = certify(g, s, expected) {
            report = report.with_witness(s, q);
        }
    }
    Ok(report)
}

/// σ₂ cap for independent sets: σ₂(S) ≤ −p₂·r·(λ_min+1), with equality
/// exactly on perfect 2-colorings with eigenvalue λ_min.
pub fn independent_sigma2_max(
    params: &AmplyParams,
    g: &Graph,
    spec: &Spectrum,
    s: Option<&VertexSet>,
) -> Result<BoundReport, BoundsError> {
    check_spectrum(g, spec)?;
    let r = rat(params.r as i64);
    let (value, lmin_int) = match spec.lambda_min_integral() {
        Some(lmin) => (Scalar::from(-params.p2 * r * (rat(lmin) + rat(1))), Some(lmin)),
        None => (
            Scalar::from(-params.p2.to_f64() * params.r as f64 * (spec.lambda_min() + 1.0)),
            None,
        ),
    };
    let mut report = match s {
        Some(s) => {
            require_proper_subset(g, s)?;
            if g.sigma(s).expect("nonempty") != rat(0) {
                return Err(BoundsError::VertexViolation {
                    vertex: s.iter().next().unwrap(),
                    reason: "set is not independent".into(),
                });
            }
            let sigma2 = g.sigma2(s).expect("nonempty");
            let mut report = BoundReport::new("independent_sigma2_max", value, sigma2.into());
            if let (Some(v), Some(lmin)) = (value.exact(), lmin_int) {
                if sigma2 == v {
                    if let Ok(Some(q)) = verify_two_coloring(g, s) {
                        if crate::equitable::quotient_second_eigenvalue(&q) == lmin {
                            report = report.with_witness(s, q);
                        }
                    }
                }
            }
            report
        }
        None => BoundReport::new("independent_sigma2_max", value, value),
    };
    report.detail.insert(
        "lambda_min".into(),
        eig_scalar(spec.lambda_min(), lmin_int),
    );
    Ok(report)
}

/// Size bound from a fixed average degree and a σ₂ cap:
/// |C| ≤ (β−p(a))·n / (p₂(r−a)² + β−p(a)) with a = σ(C), σ₂(C) ≤ β.
/// Equality forces {C, V∖C} to be an equitable partition.
pub fn eppc_size_bound(
    params: &AmplyParams,
    g: &Graph,
    c: &VertexSet,
    beta: Rat,
) -> Result<BoundReport, BoundsError> {
    if g.is_regular() != Some(params.r) {
        return Err(BoundsError::ParamsMismatch);
    }
    require_proper_subset(g, c)?;
    let a = g.sigma(c).expect("nonempty");
    let r = rat(params.r as i64);
    if a == r {
        return Err(BoundsError::DegenerateAverageDegree(a));
    }
    let sigma2 = g.sigma2(c).expect("nonempty");
    if sigma2 > beta {
        return Err(BoundsError::Sigma2ExceedsBeta { sigma2, beta });
    }
    let pa = params.eval(a);
    if beta <= pa {
        return Err(BoundsError::BetaBelowPolynomial { beta, pa });
    }
    let n = rat(g.n() as i64);
    let excess = beta - pa;
    let value = excess * n / (params.p2 * (r - a) * (r - a) + excess);
    let attained = rat(c.size() as i64);
    let theta = a - excess / (params.p2 * (r - a));
    let mut report = BoundReport::new("eppc_size", value.into(), attained.into());
    report.detail.insert("a".into(), a.into());
    report.detail.insert("beta".into(), beta.into());
    report.detail.insert("p_a".into(), pa.into());
    report.detail.insert("theta".into(), theta.into());
    report.detail.insert("rho".into(), Rat::new(c.size() as i64, g.n() as i64).into());
    if attained == value {
        match verify_two_coloring(g, c) {
            Ok(Some(q)) => report = report.with_witness(c, q),
            _ => report
                .notes
                .push("size matches the bound but the partition is not equitable".into()),
        }
    }
    Ok(report)
}

/// Compares the independent-set density bound 1/(1 + p₂r²/(β+p₂r)) against
/// the Hoffman density −λ_min/(r−λ_min). The comparison is meaningful only
/// for β below the σ₂ cap −p₂r(λ_min+1); at the cap the two densities
/// coincide.
pub fn compare_new_vs_hoffman(
    params: &AmplyParams,
    spec: &Spectrum,
    beta: Rat,
) -> Result<BoundReport, BoundsError> {
    let r = rat(params.r as i64);
    let new_density = rat(1) / (rat(1) + params.p2 * r * r / (beta + params.p2 * r));
    let (hoffman, threshold) = match spec.lambda_min_integral() {
        Some(lmin) => (
            Scalar::from(rat(-lmin) / (r - rat(lmin))),
            Scalar::from(-params.p2 * r * (rat(lmin) + rat(1))),
        ),
        None => {
            let lmin = spec.lambda_min();
            let rf = params.r as f64;
            (
                Scalar::from(-lmin / (rf - lmin)),
                Scalar::from(-params.p2.to_f64() * rf * (lmin + 1.0)),
            )
        }
    };
    let mut report = BoundReport::new("compare_new_vs_hoffman", new_density.into(), hoffman);
    report.tightness = Tightness::NotApplicable;
    report.detail.insert("new_density".into(), new_density.into());
    report.detail.insert("hoffman_density".into(), hoffman);
    report.detail.insert("beta".into(), beta.into());
    report.detail.insert("sigma2_cap".into(), threshold);
    let verdict = match threshold.exact() {
        Some(cap) => {
            if beta < cap {
                "new bound is strictly better than the Hoffman bound"
            } else if beta == cap {
                "densities coincide"
            } else {
                "regimes coincide or Hoffman binds"
            }
        }
        None => {
            let cap = threshold.as_f64();
            let b = beta.to_f64();
            if b < cap - NUMERIC_TIGHT_TOL {
                "new bound is strictly better than the Hoffman bound"
            } else if b > cap + NUMERIC_TIGHT_TOL {
                "regimes coincide or Hoffman binds"
            } else {
                "densities coincide"
            }
        }
    };
    report.notes.push(verdict.to_string());
    Ok(report)
}

/// Extension trait used internally: f64 conversion for rationals.
trait RatExt {
    fn to_f64(&self) -> f64;
}

impl RatExt for Rat {
    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}
