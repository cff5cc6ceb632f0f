//! Eigenvalue-filtered backtracking search for perfect 2-colorings and the
//! exhaustive subset oracle used as ground truth by the test suites.

use crate::bitset::BitSet;
use crate::equitable::{verify_two_coloring, QuotientMatrix2};
use crate::graph::{Graph, VertexSet};
use crate::spectral::{Spectrum, GROUPING_TOLERANCE};
use crate::Rat;
use rayon::prelude::*;
use thiserror::Error;

/// Hard cap on the oracle's exhaustive scan.
pub const ORACLE_MAX_N: usize = 24;

#[derive(Debug, Error, PartialEq)]
pub enum SearchError {
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("{n} vertices exceed the oracle cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("no subset satisfies the objective")]
    NoFeasibleSubset,
}

#[derive(Clone, PartialEq, Debug)]
pub enum Objective {
    AllPerfectTwoColorings,
    MaxSetWithSigmaAtMost(Rat),
    MaxSetWithSigmaEqAndSigma2AtMost(Rat, Rat),
    MaxIndependent,
    MaxCut,
}

impl Objective {
    pub fn name(&self) -> String {
        match self {
            Objective::AllPerfectTwoColorings => "all_perfect_2colorings".into(),
            Objective::MaxSetWithSigmaAtMost(a) => format!("max_set_with(sigma <= {a})"),
            Objective::MaxSetWithSigmaEqAndSigma2AtMost(a, b) => {
                format!("max_set_with(sigma = {a}, sigma2 <= {b})")
            }
            Objective::MaxIndependent => "max_independent".into(),
            Objective::MaxCut => "max_cut".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConstraints {
    pub target_quotient: Option<QuotientMatrix2>,
    pub max_results: usize,
    pub objective: Objective,
}

impl Default for SearchConstraints {
    fn default() -> Self {
        SearchConstraints {
            target_quotient: None,
            max_results: usize::MAX,
            objective: Objective::AllPerfectTwoColorings,
        }
    }
}

/// Canonical representative of a 2-coloring: the smaller class, ties broken
/// by the lexicographically least bit set, with the quotient roles aligned.
pub fn canonicalize(s: VertexSet, q: QuotientMatrix2) -> (VertexSet, QuotientMatrix2) {
    let comp = s.complement();
    if s.size() < comp.size() || (s.size() == comp.size() && s.members() <= comp.members()) {
        (s, q)
    } else {
        (comp, q.transposed_roles())
    }
}

/// Enumerates every perfect 2-coloring of a connected regular graph.
///
/// Candidate quotients ((r−b, b),(c, r−c)) are filtered by the necessary
/// conditions that λ = r−b−c is an eigenvalue (slack of 10× the grouping
/// tolerance; the exact verifier is the final arbiter) and that the class
/// size c·n/(b+c) is integral. Output is canonical, deduplicated and sorted.
pub fn enumerate_perfect_two_colorings(
    g: &Graph,
    spec: &Spectrum,
    cons: &SearchConstraints,
) -> Result<Vec<(VertexSet, QuotientMatrix2)>, SearchError> {
    let r = g.is_regular().ok_or(SearchError::NotRegular)? as i64;
    if !g.is_connected() {
        return Err(SearchError::Disconnected);
    }
    let n = g.n();
    let slack = 10.0 * GROUPING_TOLERANCE * (r as f64).max(1.0);
    let mut found: std::collections::BTreeMap<BitSet, (VertexSet, QuotientMatrix2)> =
        std::collections::BTreeMap::new();
    for b in 1..=r {
        for c in 1..=r {
            let q = QuotientMatrix2 { a: r - b, b, c, d: r - c };
            if let Some(target) = &cons.target_quotient {
                if q != *target && q != target.transposed_roles() {
                    continue;
                }
            }
            let lambda = (r - b - c) as f64;
            if !spec.contains(lambda, slack) {
                continue;
            }
            if (c as usize * n) % (b + c) as usize != 0 {
                continue;
            }
            let size_s = c as usize * n / (b + c) as usize;
            if size_s == 0 || size_s == n {
                continue;
            }
            for s in backtrack_colorings(g, &q, size_s) {
                // the verifier is authoritative
                if let Ok(Some(verified)) = verify_two_coloring(g, &s) {
                    if verified == q {
                        let (cs, cq) = canonicalize(s, verified);
                        found.entry(cs.members().clone()).or_insert((cs, cq));
                    }
                }
            }
        }
    }
    let mut out: Vec<_> = found.into_values().collect();
    out.sort_by(|a, b| (a.0.size(), a.0.members()).cmp(&(b.0.size(), b.0.members())));
    out.truncate(cons.max_results);
    Ok(out)
}

/// Backtracking over vertices in index order. Feasibility cuts: a vertex
/// whose S-neighbor count already exceeds its quotient allowance fails, and
/// one whose remaining uncolored neighbors cannot reach the required count
/// fails.
fn backtrack_colorings(g: &Graph, q: &QuotientMatrix2, size_s: usize) -> Vec<VertexSet> {
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        Unset,
        In,
        Out,
    }
    struct State<'a> {
        g: &'a Graph,
        q: QuotientMatrix2,
        size_s: usize,
        colors: Vec<Color>,
        s_neighbors: Vec<i64>,
        uncolored_neighbors: Vec<i64>,
        in_count: usize,
        out: Vec<VertexSet>,
    }
    impl State<'_> {
        fn required(&self, v: usize) -> i64 {
            match self.colors[v] {
                Color::In => self.q.a,
                Color::Out => self.q.c,
                Color::Unset => unreachable!(),
            }
        }

        fn feasible(&self, v: usize) -> bool {
            let need = self.required(v);
            self.s_neighbors[v] <= need
                && self.s_neighbors[v] + self.uncolored_neighbors[v] >= need
        }

        fn assign(&mut self, v: usize, into_s: bool) -> bool {
            self.colors[v] = if into_s { Color::In } else { Color::Out };
            if into_s {
                self.in_count += 1;
            }
            let mut ok = true;
            for u in self.g.neighbors(v).iter() {
                self.uncolored_neighbors[u] -= 1;
                if into_s {
                    self.s_neighbors[u] += 1;
                }
                if self.colors[u] != Color::Unset && !self.feasible(u) {
                    ok = false;
                }
            }
            ok && self.feasible(v)
        }

        fn unassign(&mut self, v: usize, into_s: bool) {
            self.colors[v] = Color::Unset;
            if into_s {
                self.in_count -= 1;
            }
            for u in self.g.neighbors(v).iter() {
                self.uncolored_neighbors[u] += 1;
                if into_s {
                    self.s_neighbors[u] -= 1;
                }
            }
        }

        fn search(&mut self, v: usize) {
            let n = self.g.n();
            if v == n {
                let set = VertexSet::from_indices(
                    n,
                    (0..n).filter(|&u| self.colors[u] == Color::In),
                );
                self.out.push(set);
                return;
            }
            for &into_s in &[true, false] {
                if into_s && self.in_count == self.size_s {
                    continue;
                }
                if !into_s && v - self.in_count == n - self.size_s {
                    continue;
                }
                let ok = self.assign(v, into_s);
                if ok {
                    self.search(v + 1);
                }
                self.unassign(v, into_s);
            }
        }
    }

    let mut state = State {
        g,
        q: *q,
        size_s,
        colors: vec![Color::Unset; g.n()],
        s_neighbors: vec![0; g.n()],
        uncolored_neighbors: (0..g.n()).map(|v| g.degree(v) as i64).collect(),
        in_count: 0,
        out: Vec::new(),
    };
    state.search(0);
    state.out
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub best: VertexSet,
    pub value: Rat,
    pub all_optima: Vec<VertexSet>,
}

/// Incremental subset counters maintained along a Gray-code walk.
struct GrayScan {
    adj: Vec<u32>,
    d2: Vec<u32>,
    degree: Vec<i64>,
    mask: u32,
    size: i64,
    /// ordered internal incidences e(S,S)
    e1: i64,
    /// the same on the distance-2 graph
    e2: i64,
    degsum: i64,
}

impl GrayScan {
    fn new(g: &Graph, d2: &Graph, start_mask: u32) -> Self {
        let pack = |g: &Graph| -> Vec<u32> {
            (0..g.n())
                .map(|v| g.neighbors(v).iter().fold(0u32, |m, u| m | 1 << u))
                .collect()
        };
        let mut scan = GrayScan {
            adj: pack(g),
            d2: pack(d2),
            degree: (0..g.n()).map(|v| g.degree(v) as i64).collect(),
            mask: 0,
            size: 0,
            e1: 0,
            e2: 0,
            degsum: 0,
        };
        let mut m = start_mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            scan.toggle(v);
        }
        scan
    }

    fn toggle(&mut self, v: usize) {
        let bit = 1u32 << v;
        let in_before = self.mask & bit != 0;
        let without = self.mask & !bit;
        let k1 = (self.adj[v] & without).count_ones() as i64;
        let k2 = (self.d2[v] & without).count_ones() as i64;
        if in_before {
            self.mask &= !bit;
            self.size -= 1;
            self.e1 -= 2 * k1;
            self.e2 -= 2 * k2;
            self.degsum -= self.degree[v];
        } else {
            self.mask |= bit;
            self.size += 1;
            self.e1 += 2 * k1;
            self.e2 += 2 * k2;
            self.degsum += self.degree[v];
        }
    }
}

fn gray(k: u32) -> u32 {
    k ^ (k >> 1)
}

/// Exhaustive scan over all nonempty proper subsets, exact arithmetic
/// throughout. Subset ranges are evaluated concurrently and merged in a
/// fixed order, so the output is deterministic.
pub fn brute_force_oracle(
    g: &Graph,
    cons: &SearchConstraints,
) -> Result<OracleResult, SearchError> {
    let n = g.n();
    if n > ORACLE_MAX_N {
        return Err(SearchError::TooLarge { n, cap: ORACLE_MAX_N });
    }
    if let Objective::AllPerfectTwoColorings = cons.objective {
        return oracle_all_colorings(g, cons);
    }
    let d2 = g.distance2_graph();
    let total: u64 = 1u64 << n;
    let chunks = (rayon::current_num_threads() * 4).max(1) as u64;
    let chunk_len = total.div_ceil(chunks);
    let full_mask = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };

    // per-chunk best: (value, masks attaining it)
    let partials: Vec<Option<(Rat, Vec<u32>)>> = (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let lo = ci * chunk_len;
            let hi = ((ci + 1) * chunk_len).min(total);
            if lo >= hi {
                return None;
            }
            let mut scan = GrayScan::new(g, &d2, gray(lo as u32));
            let mut best: Option<(Rat, Vec<u32>)> = None;
            for k in lo..hi {
                if k != lo {
                    let flip = (gray(k as u32) ^ gray(k as u32 - 1)).trailing_zeros() as usize;
                    scan.toggle(flip);
                }
                let mask = scan.mask;
                if mask == 0 || mask == full_mask {
                    continue;
                }
                if let Some(value) = evaluate(&scan, &cons.objective) {
                    match &mut best {
                        Some((bv, masks)) => {
                            if value > *bv {
                                *bv = value;
                                masks.clear();
                                masks.push(mask);
                            } else if value == *bv {
                                masks.push(mask);
                            }
                        }
                        None => best = Some((value, vec![mask])),
                    }
                }
            }
            best
        })
        .collect();

    let mut best: Option<(Rat, Vec<u32>)> = None;
    for partial in partials.into_iter().flatten() {
        match &mut best {
            Some((bv, masks)) => {
                if partial.0 > *bv {
                    *bv = partial.0;
                    *masks = partial.1;
                } else if partial.0 == *bv {
                    masks.extend(partial.1);
                }
            }
            None => best = Some(partial),
        }
    }
    let (value, mut masks) = best.ok_or(SearchError::NoFeasibleSubset)?;
    masks.sort_unstable();
    masks.dedup();
    let to_set = |mask: u32| VertexSet::from_indices(n, (0..n).filter(|&v| mask >> v & 1 == 1));
    let all_optima: Vec<VertexSet> = masks.iter().map(|&m| to_set(m)).collect();
    Ok(OracleResult {
        best: all_optima[0].clone(),
        value,
        all_optima,
    })
}

fn evaluate(scan: &GrayScan, objective: &Objective) -> Option<Rat> {
    let size = Rat::from(scan.size);
    match objective {
        Objective::AllPerfectTwoColorings => unreachable!("handled separately"),
        Objective::MaxSetWithSigmaAtMost(a) => {
            (Rat::from(scan.e1) <= *a * size).then_some(size)
        }
        Objective::MaxSetWithSigmaEqAndSigma2AtMost(a, beta) => {
            (Rat::from(scan.e1) == *a * size && Rat::from(scan.e2) <= *beta * size)
                .then_some(size)
        }
        Objective::MaxIndependent => (scan.e1 == 0).then_some(size),
        Objective::MaxCut => Some(Rat::from(scan.degsum - scan.e1)),
    }
}

fn oracle_all_colorings(g: &Graph, cons: &SearchConstraints) -> Result<OracleResult, SearchError> {
    let n = g.n();
    let mut optima: Vec<VertexSet> = scan_two_colorings(g)
        .into_iter()
        .filter(|(_, q)| match &cons.target_quotient {
            Some(t) => q == t || *q == t.transposed_roles(),
            None => true,
        })
        .map(|(s, _)| s)
        .collect();
    optima.sort();
    let count = optima.len();
    let best = optima
        .first()
        .cloned()
        .unwrap_or_else(|| VertexSet::from_indices(n, []));
    Ok(OracleResult {
        best,
        value: Rat::from(count as i64),
        all_optima: optima,
    })
}

/// Ground-truth enumeration: every nonempty proper subset pushed through the
/// exact verifier, canonicalized and sorted. Quadratic-exponential but
/// independent of the backtracking search.
pub fn scan_two_colorings(g: &Graph) -> Vec<(VertexSet, QuotientMatrix2)> {
    let n = g.n();
    assert!(n <= ORACLE_MAX_N, "scan capped at {ORACLE_MAX_N} vertices");
    let mut found: std::collections::BTreeMap<BitSet, (VertexSet, QuotientMatrix2)> =
        std::collections::BTreeMap::new();
    for mask in 1..(1u64 << n) - 1 {
        let s = VertexSet::from_indices(n, (0..n).filter(|&v| mask >> v & 1 == 1));
        if let Ok(Some(q)) = verify_two_coloring(g, &s) {
            let (cs, cq) = canonicalize(s, q);
            found.entry(cs.members().clone()).or_insert((cs, cq));
        }
    }
    let mut out: Vec<_> = found.into_values().collect();
    out.sort_by(|a, b| (a.0.size(), a.0.members()).cmp(&(b.0.size(), b.0.members())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate_family, Family};
    use crate::spectral::eigen_decompose;

    #[test]
    fn enumerate_q3() {
        let g = generate_family(Family::Hypercube, &[3]).unwrap();
        let spec = eigen_decompose(&g).unwrap();
        let found =
            enumerate_perfect_two_colorings(&g, &spec, &SearchConstraints::default()).unwrap();
        let quotients: Vec<QuotientMatrix2> = found.iter().map(|(_, q)| *q).collect();
        assert!(quotients.contains(&QuotientMatrix2 { a: 0, b: 3, c: 3, d: 0 }));
        assert!(quotients.contains(&QuotientMatrix2 { a: 2, b: 1, c: 1, d: 2 }));
        // ground truth equality
        assert_eq!(found, scan_two_colorings(&g));
    }

    #[test]
    fn enumerate_petersen() {
        let g = generate_family(Family::Petersen, &[]).unwrap();
        let spec = eigen_decompose(&g).unwrap();
        let found =
            enumerate_perfect_two_colorings(&g, &spec, &SearchConstraints::default()).unwrap();
        let tight: Vec<_> = found
            .iter()
            .filter(|(_, q)| *q == QuotientMatrix2 { a: 0, b: 3, c: 2, d: 1 })
            .collect();
        assert_eq!(tight.len(), 5);
        assert_eq!(found, scan_two_colorings(&g));
    }

    #[test]
    fn enumerate_k4_singletons() {
        let g = generate_family(Family::Complete, &[4]).unwrap();
        let spec = eigen_decompose(&g).unwrap();
        let found =
            enumerate_perfect_two_colorings(&g, &spec, &SearchConstraints::default()).unwrap();
        let singletons: Vec<_> = found.iter().filter(|(s, _)| s.size() == 1).collect();
        assert_eq!(singletons.len(), 4);
        for (_, q) in &singletons {
            assert_eq!(*q, QuotientMatrix2 { a: 0, b: 3, c: 1, d: 2 });
        }
    }

    #[test]
    fn oracle_examples() {
        let g = generate_family(Family::Petersen, &[]).unwrap();
        let cons = SearchConstraints {
            objective: Objective::MaxIndependent,
            ..Default::default()
        };
        let result = brute_force_oracle(&g, &cons).unwrap();
        assert_eq!(result.value, Rat::from(4));
        assert_eq!(result.all_optima.len(), 5);

        let cons = SearchConstraints {
            objective: Objective::MaxSetWithSigmaEqAndSigma2AtMost(Rat::from(0), Rat::from(2)),
            ..Default::default()
        };
        let result = brute_force_oracle(&g, &cons).unwrap();
        assert_eq!(result.value, Rat::from(3));

        let q3 = generate_family(Family::Hypercube, &[3]).unwrap();
        let cons = SearchConstraints {
            objective: Objective::MaxCut,
            ..Default::default()
        };
        let result = brute_force_oracle(&q3, &cons).unwrap();
        assert_eq!(result.value, Rat::from(12));
        let parity = VertexSet::from_indices(8, (0..8usize).filter(|v| v.count_ones() % 2 == 0));
        assert!(result.all_optima.contains(&parity));
    }

    #[test]
    fn oracle_rejects_large_graphs() {
        let g = generate_family(Family::Hypercube, &[5]).unwrap();
        let cons = SearchConstraints {
            objective: Objective::MaxIndependent,
            ..Default::default()
        };
        assert_eq!(
            brute_force_oracle(&g, &cons).unwrap_err(),
            SearchError::TooLarge { n: 32, cap: ORACLE_MAX_N }
        );
    }

    #[test]
    fn oracle_deterministic() {
        let g = generate_family(Family::Petersen, &[]).unwrap();
        let cons = SearchConstraints {
            objective: Objective::MaxIndependent,
            ..Default::default()
        };
        let a = brute_force_oracle(&g, &cons).unwrap();
        let b = brute_force_oracle(&g, &cons).unwrap();
        assert_eq!(a.all_optima, b.all_optima);
        assert_eq!(a.best, b.best);
    }
}
