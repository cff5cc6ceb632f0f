//! Standard graph family generators with fixed canonical vertex numbering.
//!
//! Numbering conventions:
//! - `complete(n)`, `cycle(n)`: vertices `0..n`, cycle edge `i — (i+1) mod n`.
//! - `complete_bipartite(m, n)`: side one is `0..m`, side two is `m..m+n`.
//! - `hypercube(d)`: vertex `v` is its bit string; edges flip one bit.
//! - `hamming(d, q)`: vertex `v` encodes the word `(v % q, v/q % q, ...)`;
//!   edges join words differing in one coordinate.
//! - `johnson(n, k)` / `kneser(n, k)`: vertices are the k-subsets of `{0..n}`
//!   in lexicographic order of their sorted element lists.
//! - `petersen`: kneser(5, 2).

use crate::graph::{Graph, GraphError};
use std::str::FromStr;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    Complete,
    CompleteBipartite,
    Cycle,
    Hypercube,
    Hamming,
    Petersen,
    Johnson,
    Kneser,
}

impl FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        match s {
            "complete" => Ok(Family::Complete),
            "complete_bipartite" => Ok(Family::CompleteBipartite),
            "cycle" => Ok(Family::Cycle),
            "hypercube" => Ok(Family::Hypercube),
            "hamming" => Ok(Family::Hamming),
            "petersen" => Ok(Family::Petersen),
            "johnson" => Ok(Family::Johnson),
            "kneser" => Ok(Family::Kneser),
            other => Err(GraphError::UnknownFamily(other.to_string())),
        }
    }
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Complete => "complete",
            Family::CompleteBipartite => "complete_bipartite",
            Family::Cycle => "cycle",
            Family::Hypercube => "hypercube",
            Family::Hamming => "hamming",
            Family::Petersen => "petersen",
            Family::Johnson => "johnson",
            Family::Kneser => "kneser",
        }
    }
}

fn bad_params(family: Family, reason: &str) -> GraphError {
    GraphError::InvalidFamilyParams {
        family: family.name().to_string(),
        reason: reason.to_string(),
    }
}

fn expect_params(family: Family, params: &[usize], count: usize) -> Result<(), GraphError> {
    if params.len() != count {
        Err(bad_params(
            family,
            &format!("expected {count} parameter(s), got {}", params.len()),
        ))
    } else {
        Ok(())
    }
}

/// All k-subsets of `0..n` in lexicographic order.
fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

pub fn generate_family(family: Family, params: &[usize]) -> Result<Graph, GraphError> {
    match family {
        Family::Complete => {
            expect_params(family, params, 1)?;
            let n = params[0];
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    edges.push((u, v));
                }
            }
            Graph::build(n, &edges)
        }
        Family::CompleteBipartite => {
            expect_params(family, params, 2)?;
            let (m, n) = (params[0], params[1]);
            let mut edges = Vec::new();
            for u in 0..m {
                for v in 0..n {
                    edges.push((u, m + v));
                }
            }
            Graph::build(m + n, &edges)
        }
        Family::Cycle => {
            expect_params(family, params, 1)?;
            let n = params[0];
            if n < 3 {
                return Err(bad_params(family, "cycle needs at least 3 vertices"));
            }
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Graph::build(n, &edges)
        }
        Family::Hypercube => {
            expect_params(family, params, 1)?;
            let d = params[0];
            if d == 0 || d > 20 {
                return Err(bad_params(family, "dimension must be in 1..=20"));
            }
            let n = 1usize << d;
            let mut edges = Vec::new();
            for v in 0..n {
                for bit in 0..d {
                    let u = v ^ (1 << bit);
                    if v < u {
                        edges.push((v, u));
                    }
                }
            }
            Graph::build(n, &edges)
        }
        Family::Hamming => {
            expect_params(family, params, 2)?;
            let (d, q) = (params[0], params[1]);
            if d == 0 || q < 2 {
                return Err(bad_params(family, "need d >= 1 and q >= 2"));
            }
            let n = q.checked_pow(d as u32).filter(|&n| n <= 1 << 20)
                .ok_or_else(|| bad_params(family, "q^d too large"))?;
            let mut edges = Vec::new();
            for v in 0..n {
                let mut stride = 1;
                for _ in 0..d {
                    let digit = v / stride % q;
                    for other in 0..q {
                        if other != digit {
                            let u = (v as i64 + (other as i64 - digit as i64) * stride as i64) as usize;
                            if v < u {
                                edges.push((v, u));
                            }
                        }
                    }
                    stride *= q;
                }
            }
            Graph::build(n, &edges)
        }
        Family::Petersen => {
            expect_params(family, params, 0)?;
            generate_family(Family::Kneser, &[5, 2])
        }
        Family::Johnson => {
            expect_params(family, params, 2)?;
            let (n, k) = (params[0], params[1]);
            if k == 0 || k > n {
                return Err(bad_params(family, "need 1 <= k <= n"));
            }
            let subsets = k_subsets(n, k);
            let mut edges = Vec::new();
            for i in 0..subsets.len() {
                for j in (i + 1)..subsets.len() {
                    if intersection_size(&subsets[i], &subsets[j]) == k - 1 {
                        edges.push((i, j));
                    }
                }
            }
            Graph::build(subsets.len(), &edges)
        }
        Family::Kneser => {
            expect_params(family, params, 2)?;
            let (n, k) = (params[0], params[1]);
            if k == 0 || k > n {
                return Err(bad_params(family, "need 1 <= k <= n"));
            }
            let subsets = k_subsets(n, k);
            let mut edges = Vec::new();
            for i in 0..subsets.len() {
                for j in (i + 1)..subsets.len() {
                    if intersection_size(&subsets[i], &subsets[j]) == 0 {
                        edges.push((i, j));
                    }
                }
            }
            if edges.is_empty() && 2 * k > n {
                return Err(bad_params(family, "k > n/2 yields an edgeless kneser graph"));
            }
            Graph::build(subsets.len(), &edges)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn girth(g: &Graph) -> usize {
        // shortest cycle via BFS from every vertex
        let mut best = usize::MAX;
        for s in 0..g.n() {
            let mut dist = vec![usize::MAX; g.n()];
            let mut parent = vec![usize::MAX; g.n()];
            dist[s] = 0;
            let mut q = std::collections::VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for u in g.neighbors(v).iter() {
                    if dist[u] == usize::MAX {
                        dist[u] = dist[v] + 1;
                        parent[u] = v;
                        q.push_back(u);
                    } else if parent[v] != u {
                        best = best.min(dist[v] + dist[u] + 1);
                    }
                }
            }
        }
        best
    }

    #[test]
    fn hypercube_q3() {
        let g = generate_family(Family::Hypercube, &[3]).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.is_regular(), Some(3));
    }

    #[test]
    fn petersen_basics() {
        let g = generate_family(Family::Petersen, &[]).unwrap();
        assert_eq!(g.n(), 10);
        assert_eq!(g.edge_count(), 15);
        assert_eq!(girth(&g), 5);
    }

    #[test]
    fn hamming_2_3() {
        let g = generate_family(Family::Hamming, &[2, 3]).unwrap();
        assert_eq!(g.n(), 9);
        assert_eq!(g.is_regular(), Some(4));
    }

    #[test]
    fn johnson_matches_petersen_complement_structure() {
        // J(5,2) is the complement of K(5,2) on the same vertex labels
        let j = generate_family(Family::Johnson, &[5, 2]).unwrap();
        let k = generate_family(Family::Kneser, &[5, 2]).unwrap();
        for u in 0..10 {
            for v in 0..10 {
                if u != v {
                    assert_eq!(j.has_edge(u, v), !k.has_edge(u, v));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_params() {
        assert!(generate_family(Family::Cycle, &[2]).is_err());
        assert!(generate_family(Family::Kneser, &[4, 3]).is_err());
        assert!(generate_family(Family::Hamming, &[2]).is_err());
        assert!("nosuch".parse::<Family>().is_err());
    }
}
