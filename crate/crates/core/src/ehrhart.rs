//! Brute-force Ehrhart oracle for root polytopes of bipartite graphs.
//!
//! A nonnegative integer vector `v = (a | b)` lies in the `t`-th dilate of the
//! root polytope `Q_H` iff `sum a = sum b = t` and the transportation problem
//! with supplies `a`, demands `b` and lanes `E(H)` is feasible. The flow
//! polytope is integral, so an integral max-flow decides this exactly.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{bipartite_double, BipartiteGraph, Graph};
use crate::poly::{binomial, IntPolynomial};

/// Largest number of composition pairs enumerated per dilation level.
pub const MAX_PAIRS_PER_LEVEL: u64 = 10_000_000;

/// An integer point in the ambient space `R^{p+q}` of a root polytope:
/// `V1` coordinates first, then `V2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(pub Vec<i64>);

/// The root polytope `Q_H = conv{e_i + e_j̄ : (i, j) ∈ E(H)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootPolytope {
    graph: BipartiteGraph,
    vertices: Vec<LatticeVector>,
}

impl RootPolytope {
    pub fn new(graph: BipartiteGraph) -> Self {
        let (p, q) = (graph.p(), graph.q());
        let vertices = graph
            .edges()
            .iter()
            .map(|&(i, j)| {
                let mut v = vec![0; p + q];
                v[i] = 1;
                v[p + j] = 1;
                LatticeVector(v)
            })
            .collect();
        Self { graph, vertices }
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }

    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    pub fn ambient_dim(&self) -> usize {
        self.graph.p() + self.graph.q()
    }
}

/// Generating points of the PQ-type adjacency polytope of `g` in `R^{2n}`:
/// `(e_i, e_i)` for every vertex and `(e_i, e_j)`, `(e_j, e_i)` for every
/// edge `{i, j}`, in lexicographic order of `(i, j)`.
pub fn pq_vertices(g: &Graph) -> Vec<LatticeVector> {
    let n = g.n();
    let mut pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    for &(a, b) in g.edges() {
        pairs.push((a, b));
        pairs.push((b, a));
    }
    pairs.sort_unstable();
    pairs
        .into_iter()
        .map(|(i, j)| {
            let mut v = vec![0; 2 * n];
            v[i] = 1;
            v[n + j] = 1;
            LatticeVector(v)
        })
        .collect()
}

/// Whether `v` is a lattice point of `t Q_H`.
pub fn contains_in_dilation(poly: &RootPolytope, t: u64, v: &LatticeVector) -> Result<bool> {
    let (p, q) = (poly.graph.p(), poly.graph.q());
    if v.0.len() != p + q {
        return Err(Error::LengthMismatch { expected: p + q, got: v.0.len() });
    }
    if let Some(k) = v.0.iter().position(|&x| x < 0) {
        return Err(Error::NegativeEntry(k));
    }
    let t = t as i64;
    if v.0[..p].iter().sum::<i64>() != t || v.0[p..].iter().sum::<i64>() != t {
        return Ok(false);
    }
    Ok(max_flow(&poly.graph, &v.0[..p], &v.0[p..]) == t)
}

/// Edmonds–Karp on source → V1 → V2 → sink with unbounded lanes.
fn max_flow(h: &BipartiteGraph, supply: &[i64], demand: &[i64]) -> i64 {
    let (p, q) = (h.p(), h.q());
    let n = p + q + 2;
    let (source, sink) = (0, n - 1);
    let mut cap = vec![vec![0i64; n]; n];
    let lane = supply.iter().sum::<i64>();
    for i in 0..p {
        cap[source][1 + i] = supply[i];
    }
    for j in 0..q {
        cap[1 + p + j][sink] = demand[j];
    }
    for &(i, j) in h.edges() {
        cap[1 + i][1 + p + j] = lane;
    }
    let mut flow = 0;
    loop {
        let mut parent = vec![usize::MAX; n];
        parent[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for w in 0..n {
                if parent[w] == usize::MAX && cap[u][w] > 0 {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if parent[sink] == usize::MAX {
            return flow;
        }
        let mut push = i64::MAX;
        let mut w = sink;
        while w != source {
            let u = parent[w];
            push = push.min(cap[u][w]);
            w = u;
        }
        let mut w = sink;
        while w != source {
            let u = parent[w];
            cap[u][w] -= push;
            cap[w][u] += push;
            w = u;
        }
        flow += push;
    }
}

/// Compositions of `t` into `parts` nonnegative parts, in colexicographic
/// order (last coordinate most significant).
pub fn compositions(t: u64, parts: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if parts == 0 {
        if t == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0i64; parts];
    fill_compositions(t as i64, parts - 1, &mut cur, &mut out);
    out
}

fn fill_compositions(left: i64, k: usize, cur: &mut [i64], out: &mut Vec<Vec<i64>>) {
    if k == 0 {
        cur[0] = left;
        out.push(cur.to_vec());
        return;
    }
    for x in 0..=left {
        cur[k] = x;
        fill_compositions(left - x, k - 1, cur, out);
    }
    cur[k] = 0;
}

/// The pair count grows with `t`, so checking the top level up front
/// rejects an instance before any counting starts.
fn check_level(p: usize, q: usize, t: u64) -> Result<()> {
    let pairs = binomial(t + p as u64 - 1, p as i64 - 1) * binomial(t + q as u64 - 1, q as i64 - 1);
    if pairs > BigInt::from(MAX_PAIRS_PER_LEVEL) {
        return Err(Error::GuardExceeded {
            guard: format!("at most {MAX_PAIRS_PER_LEVEL} composition pairs per dilation level"),
            instance: format!("{pairs} pairs at t = {t} (p = {p}, q = {q})"),
        });
    }
    Ok(())
}

/// `L(t) = |t Q_H ∩ Z^{p+q}|`.
pub fn lattice_point_count(poly: &RootPolytope, t: u64) -> Result<BigInt> {
    if t == 0 {
        return Ok(BigInt::one());
    }
    let (p, q) = (poly.graph.p(), poly.graph.q());
    check_level(p, q, t)?;
    let left = compositions(t, p);
    let right = compositions(t, q);
    let count: u64 = left
        .par_iter()
        .map(|a| {
            right
                .iter()
                .filter(|b| max_flow(&poly.graph, a, b) == t as i64)
                .count() as u64
        })
        .sum();
    Ok(BigInt::from(count))
}

/// Affine dimension: rank of `{v - v_0}` by fraction-free elimination.
pub fn dimension(poly: &RootPolytope) -> usize {
    let Some(v0) = poly.vertices.first() else {
        return 0;
    };
    let rows: Vec<Vec<BigInt>> = poly.vertices[1..]
        .iter()
        .map(|v| v.0.iter().zip(&v0.0).map(|(a, b)| BigInt::from(a - b)).collect())
        .collect();
    rank(rows)
}

/// Bareiss elimination; returns the rank.
fn rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        for i in r + 1..rows {
            for k in c + 1..cols {
                let v = (&m[r][c] * &m[i][k] - &m[i][c] * &m[r][k]) / &prev;
                m[i][k] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// `h*_k = sum_{i <= k} (-1)^i C(d+1, i) L(k - i)` for `k = 0..=d`, given
/// `counts[t] = L(t)` for `t = 0..=d`.
pub fn hstar_from_counts(d: usize, counts: &[BigInt]) -> IntPolynomial {
    assert!(counts.len() > d, "need L(0..=d)");
    let coeffs = (0..=d)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let term = binomial(d as u64 + 1, i as i64) * &counts[k - i];
                    if i % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect();
    IntPolynomial::from_coeffs(coeffs)
}

/// Everything the oracle computed for one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhrhartData {
    pub dimension: usize,
    /// `L(0), ..., L(d)`.
    pub counts: Vec<BigInt>,
    pub hstar: IntPolynomial,
}

/// h* of the PQ-type adjacency polytope of `g` by lattice-point counting in
/// `Q_{D(g)}`, with the standard postconditions checked.
pub fn ehrhart_data(g: &Graph) -> Result<EhrhartData> {
    let poly = RootPolytope::new(bipartite_double(g));
    let d = dimension(&poly);
    if d > 0 {
        check_level(poly.graph.p(), poly.graph.q(), d as u64)?;
    }
    let counts = (0..=d as u64)
        .map(|t| lattice_point_count(&poly, t))
        .collect::<Result<Vec<_>>>()?;
    let hstar = hstar_from_counts(d, &counts);
    if hstar.coeff(0) != BigInt::one() {
        return Err(Error::Internal(format!("oracle: h*_0 = {}", hstar.coeff(0))));
    }
    if let Some(k) = hstar.first_negative() {
        return Err(Error::Internal(format!("oracle: h*_{k} = {} < 0", hstar.coeff(k))));
    }
    if d >= 1 {
        let expected = &counts[1] - BigInt::from(d + 1);
        if hstar.coeff(1) != expected {
            return Err(Error::Internal(format!(
                "oracle: h*_1 = {} but L(1) - (d + 1) = {expected}",
                hstar.coeff(1)
            )));
        }
    }
    Ok(EhrhartData { dimension: d, counts, hstar })
}

pub fn hstar_via_ehrhart(g: &Graph) -> Result<IntPolynomial> {
    Ok(ehrhart_data(g)?.hstar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_graph, Family};

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector(v.to_vec())
    }

    #[test]
    fn pq_vertex_lists() {
        assert_eq!(pq_vertices(&Graph::complete(1)), vec![lv(&[1, 1])]);
        assert_eq!(pq_vertices(&Graph::complete(2)).len(), 4);
    }

    #[test]
    fn pq_vertices_match_root_polytope_of_double() {
        let mut graphs = vec![Graph::empty(3), Graph::complete(4), make_graph(&Family::Cycle(4)).unwrap()];
        graphs.push(make_graph(&Family::Path(4)).unwrap());
        for g in graphs {
            let root = RootPolytope::new(bipartite_double(&g));
            assert_eq!(pq_vertices(&g), root.vertices());
        }
    }

    #[test]
    fn membership() {
        let k22 = RootPolytope::new(BipartiteGraph::complete(2, 2));
        for v in k22.vertices() {
            assert!(contains_in_dilation(&k22, 1, v).unwrap());
        }
        assert!(contains_in_dilation(&k22, 2, &lv(&[2, 0, 0, 2])).unwrap());
        assert!(!contains_in_dilation(&k22, 2, &lv(&[2, 0, 0, 1])).unwrap());
        let de2 = RootPolytope::new(bipartite_double(&Graph::empty(2)));
        assert!(!contains_in_dilation(&de2, 1, &lv(&[1, 0, 0, 1])).unwrap());
        assert_eq!(contains_in_dilation(&de2, 1, &lv(&[1, 0, -1, 1])), Err(Error::NegativeEntry(2)));
    }

    #[test]
    fn counts() {
        let k44 = RootPolytope::new(BipartiteGraph::complete(4, 4));
        assert_eq!(lattice_point_count(&k44, 0).unwrap(), BigInt::one());
        assert_eq!(lattice_point_count(&k44, 1).unwrap(), BigInt::from(16));
        let dk2 = RootPolytope::new(bipartite_double(&Graph::complete(2)));
        assert_eq!(lattice_point_count(&dk2, 1).unwrap(), BigInt::from(4));
    }

    #[test]
    fn composition_order() {
        let c = compositions(2, 2);
        assert_eq!(c, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(compositions(3, 3).len(), 10);
        assert_eq!(compositions(0, 0), vec![Vec::<i64>::new()]);
    }

    #[test]
    fn dimensions() {
        for m in 1..=4 {
            assert_eq!(dimension(&RootPolytope::new(BipartiteGraph::complete(m, m))), 2 * m - 2);
        }
        assert_eq!(dimension(&RootPolytope::new(BipartiteGraph::complete(1, 1))), 0);
        let c4 = make_graph(&Family::Cycle(4)).unwrap();
        assert_eq!(dimension(&RootPolytope::new(bipartite_double(&c4))), 6);
    }

    #[test]
    fn guard_is_enforced() {
        let big = RootPolytope::new(BipartiteGraph::complete(9, 9));
        assert!(matches!(lattice_point_count(&big, 16), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn unit_cube_self_test() {
        // L(t) = (t+1)^k for the k-cube; h* is the Eulerian polynomial
        let eulerian = [vec![1], vec![1], vec![1, 1], vec![1, 4, 1]];
        for (k, expected) in eulerian.iter().enumerate() {
            let counts: Vec<BigInt> = (0..=k as u32).map(|t| BigInt::from(t + 1).pow(k as u32)).collect();
            assert_eq!(hstar_from_counts(k, &counts), IntPolynomial::from_i64(expected));
        }
    }

    #[test]
    fn small_oracle_values() {
        assert_eq!(hstar_via_ehrhart(&Graph::complete(2)).unwrap(), IntPolynomial::from_i64(&[1, 1]));
        assert_eq!(hstar_via_ehrhart(&Graph::complete(3)).unwrap(), IntPolynomial::from_i64(&[1, 4, 1]));
        let data = ehrhart_data(&Graph::complete(2)).unwrap();
        assert_eq!(data.dimension, 2);
        assert_eq!(data.counts[1], BigInt::from(4));
    }

    #[test]
    fn oversized_instance_fails_before_counting() {
        let start = std::time::Instant::now();
        let err = ehrhart_data(&Graph::complete(7)).unwrap_err();
        assert!(matches!(err, Error::GuardExceeded { .. }), "{err}");
        assert!(start.elapsed().as_secs() < 5);
    }
}
