//! Matching polynomials, perfectly matchable sets and the PMS polytope.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph};
use crate::poly::IntPolynomial;

/// Vertex limit for subset enumeration and for exhaustive (non-bipartite)
/// perfect matching search.
pub const MAX_VERTICES: usize = 24;

/// Vertex limit for matching enumeration (vertex sets are `u64` masks).
pub const MAX_MATCHING_VERTICES: usize = 64;

/// A vertex set whose induced subgraph has a perfect matching.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatchableSet {
    vertices: Vec<usize>,
}

impl MatchableSet {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Half the size: the number of edges in a perfect matching of the set.
    pub fn k(&self) -> usize {
        self.vertices.len() / 2
    }

    fn from_mask(mask: u64) -> Self {
        Self { vertices: (0..64).filter(|&v| mask & (1 << v) != 0).collect() }
    }
}

fn guard(n: usize, limit: usize, what: &str) -> Result<()> {
    if n > limit {
        return Err(Error::GuardExceeded {
            guard: format!("{what}: n <= {limit}"),
            instance: format!("n = {n}"),
        });
    }
    Ok(())
}

/// `g(G, x) = sum_k m_G(k) x^k`, `m_G(k)` the number of `k`-matchings.
pub fn matching_generating_polynomial(g: &Graph) -> Result<IntPolynomial> {
    guard(g.n(), MAX_MATCHING_VERTICES, "matching enumeration")?;
    let mut counts = vec![0u64; g.n() / 2 + 1];
    count_matchings(g.edges(), 0, 0, 0, &mut counts);
    Ok(IntPolynomial::from_u64(&counts))
}

fn count_matchings(edges: &[(usize, usize)], k: usize, used: u64, size: usize, counts: &mut [u64]) {
    if k == edges.len() {
        counts[size] += 1;
        return;
    }
    count_matchings(edges, k + 1, used, size, counts);
    let (a, b) = edges[k];
    let both = (1u64 << a) | (1u64 << b);
    if used & both == 0 {
        count_matchings(edges, k + 1, used | both, size + 1, counts);
    }
}

/// Whether `g` has a perfect matching. Bipartite graphs use augmenting paths;
/// other graphs use exhaustive search, limited to [`MAX_VERTICES`] vertices.
pub fn has_perfect_matching(g: &Graph) -> Result<bool> {
    let n = g.n();
    if n % 2 == 1 {
        return Ok(false);
    }
    match g.two_coloring() {
        Some(color) => Ok(bipartite_perfect(&g.adjacency(), &color, &(0..n).collect::<Vec<_>>())),
        None => {
            guard(n, MAX_VERTICES, "exhaustive perfect matching")?;
            let adj = g.adjacency_masks();
            let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            Ok(exhaustive_perfect(&adj, full, &mut HashSet::new()))
        }
    }
}

/// Kuhn's augmenting-path matching restricted to `vertices`.
fn bipartite_perfect(adj: &[Vec<usize>], color: &[bool], vertices: &[usize]) -> bool {
    let n = adj.len();
    let mut inside = vec![false; n];
    for &v in vertices {
        inside[v] = true;
    }
    let left: Vec<usize> = vertices.iter().copied().filter(|&v| !color[v]).collect();
    if 2 * left.len() != vertices.len() {
        return false;
    }
    let mut mate: Vec<Option<usize>> = vec![None; n];
    for &v in &left {
        let mut seen = vec![false; n];
        if !augment(v, adj, &inside, &mut mate, &mut seen) {
            return false;
        }
    }
    true
}

fn augment(v: usize, adj: &[Vec<usize>], inside: &[bool], mate: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &u in &adj[v] {
        if !inside[u] || seen[u] {
            continue;
        }
        seen[u] = true;
        let free = match mate[u] {
            None => true,
            Some(w) => augment(w, adj, inside, mate, seen),
        };
        if free {
            mate[u] = Some(v);
            return true;
        }
    }
    false
}

/// Match the lowest vertex of `mask` every possible way; failed masks are
/// remembered.
fn exhaustive_perfect(adj: &[u64], mask: u64, failed: &mut HashSet<u64>) -> bool {
    if mask == 0 {
        return true;
    }
    if failed.contains(&mask) {
        return false;
    }
    let v = mask.trailing_zeros();
    let rest = mask & !(1u64 << v);
    let mut cand = adj[v as usize] & rest;
    while cand != 0 {
        let u = cand.trailing_zeros();
        if exhaustive_perfect(adj, rest & !(1u64 << u), failed) {
            return true;
        }
        cand &= cand - 1;
    }
    failed.insert(mask);
    false
}

/// Perfect-matchability of every vertex subset of a non-bipartite graph,
/// filled in increasing mask order.
fn matchable_table(g: &Graph) -> Vec<bool> {
    let adj = g.adjacency_masks();
    let n = g.n();
    let mut pm = vec![false; 1 << n];
    pm[0] = true;
    for mask in 1usize..(1 << n) {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut cand = adj[v] as usize & rest;
        while cand != 0 {
            let u = cand.trailing_zeros() as usize;
            if pm[rest & !(1 << u)] {
                pm[mask] = true;
                break;
            }
            cand &= cand - 1;
        }
    }
    pm
}

/// Masks of all perfectly matchable sets, in increasing mask order.
fn matchable_masks(g: &Graph) -> Result<Vec<u64>> {
    let n = g.n();
    guard(n, MAX_VERTICES, "perfectly matchable set enumeration")?;
    let masks = match g.two_coloring() {
        Some(color) => {
            let adj = g.adjacency();
            (0u64..(1 << n))
                .into_par_iter()
                .filter(|m| m.count_ones() % 2 == 0)
                .filter(|&m| {
                    let verts: Vec<usize> = (0..n).filter(|&v| m & (1 << v) != 0).collect();
                    bipartite_perfect(&adj, &color, &verts)
                })
                .collect()
        }
        None => {
            let pm = matchable_table(g);
            (0u64..(1 << n)).filter(|&m| pm[m as usize]).collect()
        }
    };
    Ok(masks)
}

/// All perfectly matchable sets, including `∅`, ordered by `k` and then by
/// vertex list.
pub fn perfectly_matchable_sets(g: &Graph) -> Result<Vec<MatchableSet>> {
    let mut sets: Vec<MatchableSet> = matchable_masks(g)?.into_iter().map(MatchableSet::from_mask).collect();
    sets.sort_by(|a, b| a.k().cmp(&b.k()).then_with(|| a.vertices.cmp(&b.vertices)));
    Ok(sets)
}

/// `p(G, x) = sum_k |PM(G, k)| x^k`.
pub fn pms_polynomial(g: &Graph) -> Result<IntPolynomial> {
    let mut counts = vec![0u64; g.n() / 2 + 1];
    for m in matchable_masks(g)? {
        counts[m.count_ones() as usize / 2] += 1;
    }
    Ok(IntPolynomial::from_u64(&counts))
}

/// Membership in the PMS polytope of a bipartite graph, via its Hall-type
/// inequality description. `x` lists the `V1` coordinates then the `V2`
/// coordinates.
pub fn pms_polytope_contains(h: &BipartiteGraph, x: &[BigRational]) -> Result<bool> {
    let (p, q) = (h.p(), h.q());
    if x.len() != p + q {
        return Err(Error::LengthMismatch { expected: p + q, got: x.len() });
    }
    guard(p, crate::interior::MAX_LEFT, "PMS polytope inequalities over subsets of V1")?;
    // clear denominators: compare integers y = x * lcm
    let lcm = x.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let y: Vec<BigInt> = x.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    if y.iter().any(|v| v.is_negative() || *v > lcm) {
        return Ok(false);
    }
    let left: BigInt = y[..p].iter().sum();
    let right: BigInt = y[p..].iter().sum();
    if left != right {
        return Ok(false);
    }
    let adj = h.left_adjacency();
    for s in 1usize..(1 << p) {
        let mut lhs = BigInt::zero();
        let mut hit = vec![false; q];
        for i in (0..p).filter(|i| s & (1 << i) != 0) {
            lhs += &y[i];
            for &j in &adj[i] {
                hit[j] = true;
            }
        }
        let rhs: BigInt = (0..q).filter(|&j| hit[j]).map(|j| &y[p + j]).sum();
        if lhs > rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
