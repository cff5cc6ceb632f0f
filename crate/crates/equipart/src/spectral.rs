//! Dense symmetric eigendecomposition (cyclic Jacobi), eigenspace
//! projections of indicator vectors, and the eigenfunction-shift test for
//! equitable 2-partitions.

use crate::graph::{Graph, VertexSet};
use thiserror::Error;

/// Default relative convergence tolerance of the Jacobi sweep.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Eigenvalues closer than this (times max(1, λ_max)) are merged into one
/// eigenspace; values this close to an integer get the integral annotation.
pub const GROUPING_TOLERANCE: f64 = 1e-6;

const MAX_SWEEPS: usize = 100;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("Jacobi iteration did not converge: off-diagonal residual {residual:e} after {sweeps} sweeps")]
    NotConverged { residual: f64, sweeps: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not regular")]
    NotRegular,
    #[error("vertex set is empty")]
    EmptySet,
    #[error("vertex set must be a nonempty proper subset")]
    TrivialSet,
    #[error("spectrum was computed for a graph on {expected} vertices, got {actual}")]
    GraphMismatch { expected: usize, actual: usize },
}

/// One eigenspace: a (possibly merged) eigenvalue with its orthonormal basis.
#[derive(Clone, Debug)]
pub struct Eigenspace {
    pub value: f64,
    /// Set when the value lies within the grouping tolerance of an integer.
    pub integral: Option<i64>,
    pub basis: Vec<Vec<f64>>,
}

impl Eigenspace {
    pub fn multiplicity(&self) -> usize {
        self.basis.len()
    }
}

/// Full spectrum of an adjacency matrix, eigenspaces sorted by descending
/// eigenvalue.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub spaces: Vec<Eigenspace>,
    pub tolerance: f64,
    n: usize,
}

impl Spectrum {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda_max(&self) -> f64 {
        self.spaces[0].value
    }

    pub fn lambda_min(&self) -> f64 {
        self.spaces[self.spaces.len() - 1].value
    }

    /// λ₁: the largest eigenvalue below the top one.
    pub fn second_largest(&self) -> Option<f64> {
        if self.spaces[0].multiplicity() > 1 {
            // top eigenvalue repeats (disconnected regular graph)
            Some(self.spaces[0].value)
        } else {
            self.spaces.get(1).map(|s| s.value)
        }
    }

    /// Second maximum modulus eigenvalue: exclude a single copy of the top
    /// eigenvalue, then take the value of largest absolute value. For a
    /// connected bipartite r-regular graph this returns −r.
    pub fn second_max_modulus(&self) -> Option<f64> {
        if self.spaces[0].multiplicity() > 1 {
            return Some(self.spaces[0].value);
        }
        self.spaces[1..]
            .iter()
            .map(|s| s.value)
            .max_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap())
    }

    /// The integral annotation of λ_min, if present.
    pub fn lambda_min_integral(&self) -> Option<i64> {
        self.spaces[self.spaces.len() - 1].integral
    }

    pub fn second_largest_integral(&self) -> Option<i64> {
        if self.spaces[0].multiplicity() > 1 {
            self.spaces[0].integral
        } else {
            self.spaces.get(1).and_then(|s| s.integral)
        }
    }

    /// Whether `value` is within `slack` of some eigenvalue.
    pub fn contains(&self, value: f64, slack: f64) -> bool {
        self.spaces.iter().any(|s| (s.value - value).abs() <= slack)
    }

    pub fn eigenvalues_with_multiplicity(&self) -> Vec<(f64, usize)> {
        self.spaces.iter().map(|s| (s.value, s.multiplicity())).collect()
    }
}

/// Squared eigenspace projections of an indicator vector 1_S and the three
/// moments Σα²ᵢ, Σα²ᵢλᵢ, Σα²ᵢλ²ᵢ taken over the non-principal eigenspaces.
#[derive(Clone, Debug)]
pub struct IndicatorExpansion {
    /// (eigenvalue, Σ (1_S, φ)² over that eigenspace), principal space excluded.
    pub coefficients: Vec<(f64, f64)>,
    /// (1_S, φ₀) = |S|/√n.
    pub alpha0: f64,
    pub m0: f64,
    pub m1: f64,
    pub m2: f64,
}

fn adjacency_matrix(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut m = vec![vec![0.0; n]; n];
    for u in 0..n {
        for v in g.neighbors(u).iter() {
            m[u][v] = 1.0;
        }
    }
    m
}

fn off_diagonal_norm(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let mut s = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            s += 2.0 * a[p][q] * a[p][q];
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi on a symmetric matrix. Returns (eigenvalues, eigenvectors as
/// columns of an orthogonal matrix stored row-major).
fn jacobi(mut a: Vec<Vec<f64>>, tolerance: f64) -> Result<(Vec<f64>, Vec<Vec<f64>>), SpectralError> {
    let n = a.len();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    if n == 1 {
        return Ok((vec![a[0][0]], v));
    }
    let frob: f64 = a
        .iter()
        .flat_map(|r| r.iter())
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
        .max(1.0);
    let target = tolerance * frob;
    for _sweep in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            let lambdas = (0..n).map(|i| a[i][i]).collect();
            return Ok((lambdas, v));
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq.abs() <= f64::EPSILON * frob {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let app = a[p][p];
                let aqq = a[q][q];
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for i in 0..n {
                    if i != p && i != q {
                        let aip = a[i][p];
                        let aiq = a[i][q];
                        a[i][p] = aip - s * (aiq + tau * aip);
                        a[p][i] = a[i][p];
                        a[i][q] = aiq + s * (aip - tau * aiq);
                        a[q][i] = a[i][q];
                    }
                }
                for row in v.iter_mut() {
                    let vip = row[p];
                    let viq = row[q];
                    row[p] = vip - s * (viq + tau * vip);
                    row[q] = viq + s * (vip - tau * viq);
                }
            }
        }
    }
    Err(SpectralError::NotConverged {
        residual: off_diagonal_norm(&a),
        sweeps: MAX_SWEEPS,
    })
}

pub fn eigen_decompose(g: &Graph) -> Result<Spectrum, SpectralError> {
    eigen_decompose_with(g, DEFAULT_TOLERANCE)
}

pub fn eigen_decompose_with(g: &Graph, tolerance: f64) -> Result<Spectrum, SpectralError> {
    let n = g.n();
    let (lambdas, v) = jacobi(adjacency_matrix(g), tolerance)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| lambdas[j].partial_cmp(&lambdas[i]).unwrap());

    let scale = lambdas.iter().fold(1.0f64, |m, l| m.max(l.abs()));
    let merge = GROUPING_TOLERANCE * scale;
    let mut spaces: Vec<Eigenspace> = Vec::new();
    for &idx in &order {
        let lambda = lambdas[idx];
        let column: Vec<f64> = (0..n).map(|i| v[i][idx]).collect();
        match spaces.last_mut() {
            Some(space) if (space.value - lambda).abs() <= merge => {
                // keep the representative value as the running mean
                let k = space.basis.len() as f64;
                space.value = (space.value * k + lambda) / (k + 1.0);
                space.basis.push(column);
            }
            _ => spaces.push(Eigenspace {
                value: lambda,
                integral: None,
                basis: vec![column],
            }),
        }
    }
    for space in &mut spaces {
        let rounded = space.value.round();
        if (space.value - rounded).abs() <= merge {
            space.integral = Some(rounded as i64);
            space.value = rounded;
        }
    }
    Ok(Spectrum { spaces, tolerance, n })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn mat_vec(g: &Graph, x: &[f64]) -> Vec<f64> {
    (0..g.n())
        .map(|u| g.neighbors(u).iter().map(|v| x[v]).sum())
        .collect()
}

pub fn indicator_expansion(
    g: &Graph,
    s: &VertexSet,
    spec: &Spectrum,
) -> Result<IndicatorExpansion, SpectralError> {
    if s.is_empty() {
        return Err(SpectralError::EmptySet);
    }
    if spec.n() != g.n() {
        return Err(SpectralError::GraphMismatch { expected: spec.n(), actual: g.n() });
    }
    if !g.is_connected() {
        return Err(SpectralError::Disconnected);
    }
    let n = g.n();
    let ind: Vec<f64> = (0..n).map(|v| if s.contains(v) { 1.0 } else { 0.0 }).collect();
    let alpha0 = s.size() as f64 / (n as f64).sqrt();
    let mut coefficients = Vec::new();
    let (mut m0, mut m1, mut m2) = (0.0, 0.0, 0.0);
    for (k, space) in spec.spaces.iter().enumerate() {
        if k == 0 {
            continue; // principal eigenspace: φ₀ alone for a connected graph
        }
        let alpha_sq: f64 = space.basis.iter().map(|phi| dot(&ind, phi).powi(2)).sum();
        coefficients.push((space.value, alpha_sq));
        m0 += alpha_sq;
        m1 += alpha_sq * space.value;
        m2 += alpha_sq * space.value * space.value;
    }
    Ok(IndicatorExpansion { coefficients, alpha0, m0, m1, m2 })
}

/// Tests whether 1_S − (|S|/n)·1_V is an eigenvector of the adjacency matrix;
/// returns the eigenvalue when it is. For a connected regular graph this is
/// equivalent to {S, V∖S} being an equitable partition.
pub fn eigenfunction_shift_test(
    g: &Graph,
    s: &VertexSet,
    spec: &Spectrum,
) -> Result<Option<f64>, SpectralError> {
    let r = g.is_regular().ok_or(SpectralError::NotRegular)?;
    if !g.is_connected() {
        return Err(SpectralError::Disconnected);
    }
    if s.is_empty() || s.size() == g.n() {
        return Err(SpectralError::TrivialSet);
    }
    let n = g.n();
    let density = s.size() as f64 / n as f64;
    let shifted: Vec<f64> = (0..n)
        .map(|v| if s.contains(v) { 1.0 - density } else { -density })
        .collect();
    let image = mat_vec(g, &shifted);
    let lambda = dot(&shifted, &image) / dot(&shifted, &shifted);
    let slack = spec.tolerance * (r as f64).max(1.0) * (n as f64);
    let residual = shifted
        .iter()
        .zip(&image)
        .map(|(x, y)| (y - lambda * x).abs())
        .fold(0.0f64, f64::max);
    Ok((residual <= slack).then_some(lambda))
}
