//! Hypertrees and interior polynomials of connected bipartite graphs.
//!
//! A hypertree is a vector `f` indexed by `V1` with `sum f = q - 1` and
//! `sum_{v in S} f(v) <= |Γ(S)| - 1` for every nonempty `S ⊆ V1`. Position
//! `j` is internally inactive when one unit can move from `v_j` to some
//! earlier `v_{j'}` and the result is still a hypertree. The interior
//! polynomial counts hypertrees by their number of inactive positions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::poly::IntPolynomial;

/// Largest `|V1|` accepted by the subset-table routines.
pub const MAX_LEFT: usize = 22;

/// Largest `|V2|` accepted by the spanning-tree oracle.
pub const MAX_RIGHT_SPANNING: usize = 10;

/// A hypertree, indexed by the `V1` order of its graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hypertree(pub Vec<u32>);

impl Hypertree {
    pub fn values(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Hypertree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `|Γ(S)|` for every `S ⊆ V1`, indexed by bitmask.
struct SubsetTable {
    p: usize,
    q: usize,
    gamma: Vec<u32>,
}

impl SubsetTable {
    fn new(h: &BipartiteGraph) -> Result<Self> {
        let p = h.p();
        if p > MAX_LEFT {
            return Err(Error::GuardExceeded {
                guard: format!("|V1| <= {MAX_LEFT}"),
                instance: format!("|V1| = {p}"),
            });
        }
        let adj = h.left_adjacency();
        let mut gamma = vec![0u32; 1 << p];
        // Gray-code walk: one vertex toggles per step.
        let mut hits = vec![0u32; h.q()];
        let mut size = 0u32;
        let mut prev = 0usize;
        for step in 1usize..(1 << p) {
            let gray = step ^ (step >> 1);
            let v = (gray ^ prev).trailing_zeros() as usize;
            let adding = gray & (1 << v) != 0;
            for &j in &adj[v] {
                if adding {
                    if hits[j] == 0 {
                        size += 1;
                    }
                    hits[j] += 1;
                } else {
                    hits[j] -= 1;
                    if hits[j] == 0 {
                        size -= 1;
                    }
                }
            }
            gamma[gray] = size;
            prev = gray;
        }
        Ok(Self { p, q: h.q(), gamma })
    }

    /// `sum_{v in S} f(v)` for every `S`.
    fn subset_sums(&self, f: &[u32]) -> Vec<i64> {
        let mut sums = vec![0i64; 1 << self.p];
        for s in 1usize..(1 << self.p) {
            let low = s.trailing_zeros() as usize;
            sums[s] = sums[s & (s - 1)] + f[low] as i64;
        }
        sums
    }

    /// Condition (ii) on every nonempty subset.
    fn satisfies_subset_bounds(&self, f: &[u32]) -> bool {
        let sums = self.subset_sums(f);
        (1usize..(1 << self.p)).all(|s| sums[s] < self.gamma[s] as i64)
    }

    fn is_hypertree(&self, f: &[u32]) -> bool {
        f.iter().map(|&x| x as i64).sum::<i64>() == self.q as i64 - 1 && self.satisfies_subset_bounds(f)
    }

    /// Inactive positions, via tight sets: moving a unit from `j` to `j'`
    /// breaks condition (ii) exactly when some set containing `j'` but not
    /// `j` is tight.
    fn inactivity(&self, f: &[u32]) -> u32 {
        let p = self.p;
        let full = (1usize << p) - 1;
        let sums = self.subset_sums(f);
        let mut blocked = vec![0usize; p];
        for s in 1usize..=full {
            if sums[s] + 1 == self.gamma[s] as i64 {
                let outside = full & !s;
                let mut rest = s;
                while rest != 0 {
                    let jp = rest.trailing_zeros() as usize;
                    blocked[jp] |= outside;
                    rest &= rest - 1;
                }
            }
        }
        (1..p)
            .filter(|&j| f[j] > 0 && (0..j).any(|jp| blocked[jp] & (1 << j) == 0))
            .count() as u32
    }
}

fn check_input(h: &BipartiteGraph) -> Result<()> {
    if h.q() == 0 {
        return Err(Error::InvalidGraph("V2 must be nonempty".into()));
    }
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

fn check_length(h: &BipartiteGraph, f: &[u32]) -> Result<()> {
    if f.len() != h.p() {
        return Err(Error::LengthMismatch { expected: h.p(), got: f.len() });
    }
    Ok(())
}

/// Whether `f` satisfies both hypertree conditions on `h`.
pub fn is_hypertree(h: &BipartiteGraph, f: &[u32]) -> Result<bool> {
    check_input(h)?;
    check_length(h, f)?;
    Ok(SubsetTable::new(h)?.is_hypertree(f))
}

/// All hypertrees of `h` in lexicographic order.
pub fn hypertrees(h: &BipartiteGraph) -> Result<Vec<Hypertree>> {
    check_input(h)?;
    let table = SubsetTable::new(h)?;
    Ok(enumerate(&table).into_iter().map(Hypertree).collect())
}

/// Depth-first assignment of `f(v_1), f(v_2), ...`. When `v_k` is assigned,
/// condition (ii) is checked on every subset of `{v_1..v_k}` containing it,
/// which bounds the value from above.
fn enumerate(table: &SubsetTable) -> Vec<Vec<u32>> {
    let p = table.p;
    let target = table.q as i64 - 1;
    if p == 0 {
        return if target == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let first_max = (table.gamma[1] as i64 - 1).min(target);
    (0..=first_max.max(-1))
        .into_par_iter()
        .map(|first| {
            let mut sums = vec![0i64; 1 << p];
            let mut f = vec![0u32; p];
            let mut out = Vec::new();
            sums[1] = first;
            f[0] = first as u32;
            descend(table, 1, target - first, &mut sums, &mut f, &mut out);
            out
        })
        .flatten()
        .collect()
}

fn descend(
    table: &SubsetTable,
    k: usize,
    remaining: i64,
    sums: &mut [i64],
    f: &mut [u32],
    out: &mut Vec<Vec<u32>>,
) {
    let p = table.p;
    if k == p {
        if remaining == 0 {
            out.push(f.to_vec());
        }
        return;
    }
    let bit = 1usize << k;
    let mut bound = remaining;
    for s in 0..bit {
        bound = bound.min(table.gamma[s | bit] as i64 - 1 - sums[s]);
    }
    if bound < 0 {
        return;
    }
    let low = if k + 1 == p { remaining } else { 0 };
    for val in low..=bound {
        for s in 0..bit {
            sums[s | bit] = sums[s] + val;
        }
        f[k] = val as u32;
        descend(table, k + 1, remaining - val, sums, f, out);
    }
}

/// Number of internally inactive positions of hypertree `f`.
///
/// For each `j` with `f(v_j) > 0`, tries every `j' < j`: the transfer of one
/// unit from `v_j` to `v_{j'}` is accepted on the first candidate that still
/// satisfies the subset bounds.
pub fn internal_inactivity(h: &BipartiteGraph, f: &Hypertree) -> Result<u32> {
    check_input(h)?;
    check_length(h, &f.0)?;
    let table = SubsetTable::new(h)?;
    if !table.is_hypertree(&f.0) {
        return Err(Error::NotAHypertree(f.0.clone()));
    }
    let mut count = 0;
    for j in 0..h.p() {
        if f.0[j] == 0 {
            continue;
        }
        for jp in 0..j {
            let mut g = f.0.clone();
            g[j] -= 1;
            g[jp] += 1;
            if table.satisfies_subset_bounds(&g) {
                count += 1;
                break;
            }
        }
    }
    Ok(count)
}

/// `I_H(x) = sum_f x^{inactivity(f)}` over all hypertrees of `h`.
pub fn interior_polynomial(h: &BipartiteGraph) -> Result<IntPolynomial> {
    check_input(h)?;
    let table = SubsetTable::new(h)?;
    let trees = enumerate(&table);
    let counts = trees
        .par_iter()
        .map(|f| table.inactivity(f) as usize)
        .fold(Vec::new, |mut acc: Vec<u64>, k| {
            if acc.len() <= k {
                acc.resize(k + 1, 0);
            }
            acc[k] += 1;
            acc
        })
        .reduce(Vec::new, |mut a, b| {
            if a.len() < b.len() {
                a.resize(b.len(), 0);
            }
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        });
    Ok(IntPolynomial::from_u64(&counts))
}

/// For every `V1` degree vector realised by a spanning tree of `h`, the
/// number of spanning trees realising it.
///
/// Spanning trees are generated one `V1` star at a time. Since every edge
/// has a `V1` endpoint, after the stars of `v_1..v_k` are placed the forest
/// is described by the partition it induces on `V2`; trees sharing that
/// partition and degree prefix are merged and counted together.
pub fn spanning_tree_profiles(h: &BipartiteGraph) -> Result<BTreeMap<Vec<u32>, BigUint>> {
    check_input(h)?;
    let q = h.q();
    if q > MAX_RIGHT_SPANNING {
        return Err(Error::GuardExceeded {
            guard: format!("|V2| <= {MAX_RIGHT_SPANNING} for spanning-tree enumeration"),
            instance: format!("|V2| = {q}"),
        });
    }
    let adj = h.left_adjacency();
    type States = HashMap<Vec<u8>, HashMap<Vec<u32>, BigUint>>;
    let mut states: States = HashMap::new();
    let start: Vec<u8> = (0..q as u8).collect();
    states.entry(start).or_default().insert(Vec::new(), BigUint::one());

    for nbrs in &adj {
        let mut next: States = HashMap::new();
        for (partition, prefixes) in &states {
            // neighbours of this vertex grouped by forest component
            let mut groups: Vec<(u8, u32)> = Vec::new();
            for &j in nbrs {
                let c = partition[j];
                match groups.iter_mut().find(|(g, _)| *g == c) {
                    Some((_, n)) => *n += 1,
                    None => groups.push((c, 1)),
                }
            }
            for choice in 1usize..(1 << groups.len()) {
                let chosen: Vec<u8> = (0..groups.len())
                    .filter(|b| choice & (1 << b) != 0)
                    .map(|b| groups[b].0)
                    .collect();
                let ways: u64 = (0..groups.len())
                    .filter(|b| choice & (1 << b) != 0)
                    .map(|b| groups[b].1 as u64)
                    .product();
                let merged = canonical_merge(partition, &chosen);
                let slot = next.entry(merged).or_default();
                for (prefix, count) in prefixes {
                    let mut deg = prefix.clone();
                    deg.push(chosen.len() as u32);
                    *slot.entry(deg).or_default() += count * ways;
                }
            }
        }
        states = next;
    }
    let single: Vec<u8> = vec![0; q];
    Ok(states.remove(&single).unwrap_or_default().into_iter().collect())
}

fn canonical_merge(partition: &[u8], chosen: &[u8]) -> Vec<u8> {
    let target = chosen[0];
    let mut relabel: Vec<Option<u8>> = vec![None; partition.len()];
    let mut next = 0u8;
    partition
        .iter()
        .map(|&c| {
            let c = if chosen.contains(&c) { target } else { c };
            *relabel[c as usize].get_or_insert_with(|| {
                next += 1;
                next - 1
            })
        })
        .collect()
}

/// Hypertrees as `deg - 1` vectors of spanning trees.
pub fn hypertrees_via_spanning_trees(h: &BipartiteGraph) -> Result<Vec<Hypertree>> {
    Ok(spanning_tree_profiles(h)?
        .into_keys()
        .map(|deg| Hypertree(deg.into_iter().map(|d| d - 1).collect()))
        .collect())
}

pub fn spanning_tree_count(h: &BipartiteGraph) -> Result<BigUint> {
    Ok(spanning_tree_profiles(h)?.into_values().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bipartite_double, join, make_graph, Family, Graph};
    use crate::poly::narayana_square_poly;

    fn ht(v: &[u32]) -> Hypertree {
        Hypertree(v.to_vec())
    }

    /// Independent spanning-tree oracle for tiny graphs: every edge subset of
    /// size `p + q - 1` that connects the graph.
    fn brute_force_profiles(h: &BipartiteGraph) -> BTreeMap<Vec<u32>, u64> {
        let g = h.to_graph();
        let e = g.num_edges();
        let need = g.n() - 1;
        let mut out = BTreeMap::new();
        for mask in 0u64..(1 << e) {
            if mask.count_ones() as usize != need {
                continue;
            }
            let edges: Vec<_> = (0..e).filter(|k| mask & (1 << k) != 0).map(|k| g.edges()[k]).collect();
            let sub = Graph::new(g.n(), edges.clone()).unwrap();
            if !sub.is_connected() {
                continue;
            }
            let mut deg = vec![0u32; h.p()];
            for &(a, _) in &edges {
                deg[a] += 1;
            }
            *out.entry(deg).or_default() += 1;
        }
        out
    }

    #[test]
    fn single_edge() {
        let h = BipartiteGraph::complete(1, 1);
        assert!(is_hypertree(&h, &[0]).unwrap());
        assert_eq!(hypertrees(&h).unwrap(), vec![ht(&[0])]);
        assert_eq!(hypertrees_via_spanning_trees(&h).unwrap(), vec![ht(&[0])]);
        assert_eq!(interior_polynomial(&h).unwrap(), IntPolynomial::one());
    }

    #[test]
    fn k33_membership() {
        let h = BipartiteGraph::complete(3, 3);
        assert!(is_hypertree(&h, &[2, 0, 0]).unwrap());
        assert!(!is_hypertree(&h, &[3, 0, 0]).unwrap());
        assert!(matches!(is_hypertree(&h, &[1, 1]), Err(Error::LengthMismatch { .. })));
        assert_eq!(hypertrees(&h).unwrap().len(), 6);
    }

    #[test]
    fn disconnected_is_an_error() {
        let h = bipartite_double(&Graph::empty(2));
        assert_eq!(is_hypertree(&h, &[0, 0]), Err(Error::Disconnected));
        assert_eq!(hypertrees(&h), Err(Error::Disconnected));
        assert_eq!(interior_polynomial(&h), Err(Error::Disconnected));
        assert_eq!(hypertrees_via_spanning_trees(&h), Err(Error::Disconnected));
    }

    #[test]
    fn lexicographic_order() {
        let h = BipartiteGraph::complete(3, 3);
        let all = hypertrees(&h).unwrap();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(all[0], ht(&[0, 0, 2]));
    }

    #[test]
    fn inactivity_examples() {
        let h = BipartiteGraph::complete(3, 3);
        assert_eq!(internal_inactivity(&h, &ht(&[0, 2, 0])).unwrap(), 1);
        assert_eq!(internal_inactivity(&h, &ht(&[2, 0, 0])).unwrap(), 0);
        assert_eq!(internal_inactivity(&h, &ht(&[1, 1, 0])).unwrap(), 1);
        assert!(matches!(
            internal_inactivity(&h, &ht(&[3, 0, 0])),
            Err(Error::NotAHypertree(_))
        ));
    }

    #[test]
    fn complete_bipartite_squares() {
        for m in 2..=4 {
            assert_eq!(
                interior_polynomial(&BipartiteGraph::complete(m, m)).unwrap(),
                narayana_square_poly(m as u64)
            );
        }
    }

    #[test]
    fn trees_have_interior_one() {
        let path = make_graph(&Family::Path(6)).unwrap();
        let h = crate::graph::as_bipartite(&path).unwrap();
        assert_eq!(interior_polynomial(&h).unwrap(), IntPolynomial::one());
        assert_eq!(spanning_tree_count(&h).unwrap(), BigUint::one());
    }

    #[test]
    fn wheel_four_hypertree_count() {
        let w4 = join(&[make_graph(&Family::Cycle(4)).unwrap(), Graph::complete(1)]).unwrap();
        assert_eq!(hypertrees(&bipartite_double(&w4)).unwrap().len(), 66);
    }

    #[test]
    fn spanning_tree_counts() {
        let k22 = BipartiteGraph::complete(2, 2);
        assert_eq!(spanning_tree_count(&k22).unwrap(), BigUint::from(4u32));
        assert_eq!(hypertrees_via_spanning_trees(&k22).unwrap(), vec![ht(&[0, 1]), ht(&[1, 0])]);
        let k33 = BipartiteGraph::complete(3, 3);
        assert_eq!(spanning_tree_count(&k33).unwrap(), BigUint::from(81u32));
        assert_eq!(hypertrees_via_spanning_trees(&k33).unwrap().len(), 6);
    }

    #[test]
    fn profiles_match_brute_force() {
        let graphs = [
            BipartiteGraph::complete(2, 3),
            BipartiteGraph::complete(3, 3),
            bipartite_double(&make_graph(&Family::Path(3)).unwrap()),
            bipartite_double(&make_graph(&Family::Cycle(3)).unwrap()),
            BipartiteGraph::new(3, 2, [(0, 0), (1, 0), (1, 1), (2, 1)]).unwrap(),
        ];
        for h in &graphs {
            let dp: BTreeMap<Vec<u32>, u64> = spanning_tree_profiles(h)
                .unwrap()
                .into_iter()
                .map(|(k, v)| (k, v.try_into().unwrap()))
                .collect();
            assert_eq!(dp, brute_force_profiles(h), "{h:?}");
        }
    }

    #[test]
    fn fast_and_literal_inactivity_agree() {
        let graphs = [
            BipartiteGraph::complete(3, 4),
            bipartite_double(&make_graph(&Family::Cycle(4)).unwrap()),
            bipartite_double(&make_graph(&Family::Wheel(4)).unwrap()),
            BipartiteGraph::new(3, 3, [(0, 0), (0, 1), (1, 1), (1, 2), (2, 0), (2, 2)]).unwrap(),
        ];
        for h in &graphs {
            let table = SubsetTable::new(h).unwrap();
            for f in hypertrees(h).unwrap() {
                assert_eq!(table.inactivity(&f.0), internal_inactivity(h, &f).unwrap());
            }
        }
    }

    #[test]
    fn guard_on_left_size() {
        let h = BipartiteGraph::complete(MAX_LEFT + 1, 1);
        assert!(matches!(hypertrees(&h), Err(Error::GuardExceeded { .. })));
    }
}
