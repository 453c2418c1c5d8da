//! Simple graphs, bipartite graphs, and the constructions on them: named
//! families, joins, the bipartite double `D(G)` and the cone construction.
//!
//! Vertices are 0-based indices internally. The textual graph language and
//! the CLI use 1-based labels; vertex `i` there is index `i - 1` here.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// A finite simple undirected graph on vertices `0..n`.
///
/// Edges are stored as `(i, j)` with `i < j`, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Named graph families understood by [`make_graph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `K_n`
    Complete(usize),
    /// `E_n`, no edges.
    Empty(usize),
    /// `C_n`, `n >= 3`.
    Cycle(usize),
    /// `P_n`, the path on `n` vertices.
    Path(usize),
    /// `W_n = C_n + K_1`, hub is the last vertex.
    Wheel(usize),
    /// `K_{m_1, ..., m_s}`, parts in consecutive label blocks.
    CompleteMultipartite(Vec<usize>),
    /// Explicit edge list with 1-based labels.
    EdgeList { n: usize, edges: Vec<(usize, usize)> },
}

impl Graph {
    /// Builds a graph from 0-based edges. Loops and out-of-range endpoints are
    /// rejected; duplicate edges (in either orientation) are merged.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut canon = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {}", a + 1)));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {}-{} references a vertex outside 1..{n}",
                    a + 1,
                    b + 1
                )));
            }
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort_unstable();
        canon.dedup();
        Ok(Self { n, edges: canon })
    }

    pub fn empty(n: usize) -> Self {
        Self { n, edges: Vec::new() }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Self { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Neighbourhoods as bitmasks. Only valid for `n <= 64`.
    pub(crate) fn adjacency_masks(&self) -> Vec<u64> {
        debug_assert!(self.n <= 64);
        let mut adj = vec![0u64; self.n];
        for &(a, b) in &self.edges {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        connected(self.n, &self.adjacency())
    }

    /// Edges with 1-based labels, as printed by the graph language.
    pub fn labeled_edges(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&(a, b)| (a + 1, b + 1)).collect()
    }

    /// A proper 2-colouring (`false` = first side) if the graph is bipartite.
    /// Each component's smallest vertex gets colour `false`.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let adj = self.adjacency();
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let c = color[v].unwrap();
                for &u in &adj[v] {
                    match color[u] {
                        None => {
                            color[u] = Some(!c);
                            queue.push_back(u);
                        }
                        Some(cu) if cu == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(Option::unwrap).collect())
    }
}

fn connected(n: usize, adj: &[Vec<usize>]) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count == n
}

/// Builds a member of a named family with canonical labels.
pub fn make_graph(family: &Family) -> Result<Graph> {
    match family {
        Family::Complete(n) => Ok(Graph::complete(*n)),
        Family::Empty(n) => Ok(Graph::empty(*n)),
        Family::Cycle(n) => {
            if *n < 3 {
                return Err(Error::InvalidGraph(format!("C_{n} needs n >= 3")));
            }
            Graph::new(*n, (0..*n).map(|i| (i, (i + 1) % n)))
        }
        Family::Path(n) => Graph::new(*n, (1..*n).map(|i| (i - 1, i))),
        Family::Wheel(n) => {
            if *n < 3 {
                return Err(Error::InvalidGraph(format!("W_{n} needs n >= 3")));
            }
            join(&[make_graph(&Family::Cycle(*n))?, Graph::complete(1)])
        }
        Family::CompleteMultipartite(parts) => {
            if parts.is_empty() || parts.contains(&0) {
                return Err(Error::InvalidGraph(
                    "complete multipartite parts must be nonempty and >= 1".into(),
                ));
            }
            let blocks: Vec<Graph> = parts.iter().map(|&m| Graph::empty(m)).collect();
            join(&blocks)
        }
        Family::EdgeList { n, edges } => {
            let mut zero_based = Vec::with_capacity(edges.len());
            for &(a, b) in edges {
                if a == 0 || b == 0 || a > *n || b > *n {
                    return Err(Error::InvalidGraph(format!(
                        "edge {a}-{b} references a vertex outside 1..{n}"
                    )));
                }
                zero_based.push((a - 1, b - 1));
            }
            Graph::new(*n, zero_based)
        }
    }
}

/// The join `G_1 + ... + G_s`: disjoint union with every edge between
/// distinct parts. Part `i` occupies the `i`-th consecutive label block.
pub fn join(parts: &[Graph]) -> Result<Graph> {
    if parts.is_empty() {
        return Err(Error::InvalidGraph("join of an empty part list".into()));
    }
    let mut offsets = Vec::with_capacity(parts.len());
    let mut n = 0;
    for g in parts {
        offsets.push(n);
        n += g.n;
    }
    let mut edges = Vec::new();
    for (g, &off) in parts.iter().zip(&offsets) {
        edges.extend(g.edges.iter().map(|&(a, b)| (a + off, b + off)));
    }
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            for a in 0..parts[i].n {
                for b in 0..parts[j].n {
                    edges.push((offsets[i] + a, offsets[j] + b));
                }
            }
        }
    }
    Graph::new(n, edges)
}

/// A bipartite graph with an ordered bipartition `(V1, V2)`, `|V1| = p`,
/// `|V2| = q`. Edges are `(i, j)` with `i` indexing `V1` and `j` indexing `V2`.
///
/// The order of `V1` is part of the value: internal activity is defined
/// relative to it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    p: usize,
    q: usize,
    edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(p: usize, q: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut edges: Vec<_> = edges.into_iter().collect();
        for &(i, j) in &edges {
            if i >= p {
                return Err(Error::IndexOutOfRange { index: i, size: p });
            }
            if j >= q {
                return Err(Error::IndexOutOfRange { index: j, size: q });
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self { p, q, edges })
    }

    pub fn complete(p: usize, q: usize) -> Self {
        let edges = (0..p).flat_map(|i| (0..q).map(move |j| (i, j))).collect();
        Self { p, q, edges }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.binary_search(&(i, j)).is_ok()
    }

    /// For each `V1` vertex, its `V2` neighbours in increasing order.
    pub fn left_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.p];
        for &(i, j) in &self.edges {
            adj[i].push(j);
        }
        adj
    }

    /// `Γ(S)`: the `V2` vertices adjacent to some vertex of `S ⊆ V1`.
    pub fn neighborhood(&self, s: &[usize]) -> Result<Vec<usize>> {
        if let Some(&bad) = s.iter().find(|&&i| i >= self.p) {
            return Err(Error::IndexOutOfRange { index: bad, size: self.p });
        }
        let mut hit = vec![false; self.q];
        for &(i, j) in &self.edges {
            if s.contains(&i) {
                hit[j] = true;
            }
        }
        Ok((0..self.q).filter(|&j| hit[j]).collect())
    }

    pub fn is_connected(&self) -> bool {
        self.to_graph().is_connected()
    }

    /// Flattens to a [`Graph`]: `V1` becomes `0..p`, `V2` becomes `p..p+q`.
    pub fn to_graph(&self) -> Graph {
        Graph {
            n: self.p + self.q,
            edges: self.edges.iter().map(|&(i, j)| (i, self.p + j)).collect(),
        }
    }

    /// The cone construction: a new `V2` vertex `u` joined to all of `V1`, and
    /// a new `V1` vertex `w` joined to all of `V2 ∪ {u}`. Both are appended
    /// last in their part.
    pub fn tilde(&self) -> Self {
        let (p, q) = (self.p, self.q);
        let mut edges = self.edges.clone();
        edges.extend((0..p).map(|i| (i, q)));
        edges.extend((0..=q).map(|j| (p, j)));
        Self::new(p + 1, q + 1, edges).expect("tilde indices are in range")
    }

    /// Reorders `V1`: old vertex `perm[k]` becomes new vertex `k`.
    pub fn permute_left(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.p)?;
        let mut inverse = vec![0; self.p];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        Self::new(self.p, self.q, self.edges.iter().map(|&(i, j)| (inverse[i], j)))
    }

    /// Exchanges the roles of `V1` and `V2`.
    pub fn swap_sides(&self) -> Self {
        Self::new(self.q, self.p, self.edges.iter().map(|&(i, j)| (j, i)))
            .expect("swapped indices are in range")
    }
}

fn check_permutation(perm: &[usize], len: usize) -> Result<()> {
    if perm.len() != len {
        return Err(Error::LengthMismatch { expected: len, got: perm.len() });
    }
    let mut seen = vec![false; len];
    for &k in perm {
        if k >= len || std::mem::replace(&mut seen[k], true) {
            return Err(Error::InvalidGraph(format!("{perm:?} is not a permutation")));
        }
    }
    Ok(())
}

/// `D(G)`: `V1 = V2 = V(G)`, diagonal edges `(i, i)`, and `(i, j)`, `(j, i)`
/// for every edge `{i, j}` of `G`.
pub fn bipartite_double(g: &Graph) -> BipartiteGraph {
    let mut edges: Vec<_> = (0..g.n).map(|i| (i, i)).collect();
    for &(a, b) in &g.edges {
        edges.push((a, b));
        edges.push((b, a));
    }
    BipartiteGraph::new(g.n, g.n, edges).expect("double indices are in range")
}

/// Splits a connected bipartite [`Graph`] into a [`BipartiteGraph`], the side
/// of vertex 1 becoming `V1`, preserving label order within each side.
pub fn as_bipartite(g: &Graph) -> Result<BipartiteGraph> {
    let color = g
        .two_coloring()
        .ok_or_else(|| Error::InvalidGraph("graph is not bipartite".into()))?;
    let mut index = vec![0; g.n];
    let (mut p, mut q) = (0, 0);
    for v in 0..g.n {
        if color[v] {
            index[v] = q;
            q += 1;
        } else {
            index[v] = p;
            p += 1;
        }
    }
    let edges = g.edges.iter().map(|&(a, b)| {
        if color[a] {
            (index[b], index[a])
        } else {
            (index[a], index[b])
        }
    });
    BipartiteGraph::new(p, q, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(f: Family) -> Graph {
        make_graph(&f).unwrap()
    }

    #[test]
    fn star_and_cycle() {
        let star = fam(Family::CompleteMultipartite(vec![1, 5]));
        assert_eq!((star.n(), star.num_edges()), (6, 5));
        let c4 = fam(Family::Cycle(4));
        assert_eq!(c4.labeled_edges(), vec![(1, 2), (1, 4), (2, 3), (3, 4)]);
    }

    #[test]
    fn wheel_three_is_k4() {
        assert_eq!(fam(Family::Wheel(3)), Graph::complete(4));
        let w5 = fam(Family::Wheel(5));
        assert_eq!((w5.n(), w5.num_edges()), (6, 10));
        assert!((0..5).all(|i| w5.has_edge(i, 5)));
    }

    #[test]
    fn family_errors() {
        assert!(make_graph(&Family::Cycle(2)).is_err());
        assert!(make_graph(&Family::Wheel(2)).is_err());
        assert!(make_graph(&Family::CompleteMultipartite(vec![2, 0])).is_err());
        let bad = Family::EdgeList { n: 3, edges: vec![(1, 4)] };
        assert!(make_graph(&bad).is_err());
        let lp = Family::EdgeList { n: 3, edges: vec![(2, 2)] };
        assert!(matches!(make_graph(&lp), Err(Error::InvalidGraph(m)) if m.contains("loop")));
    }

    #[test]
    fn joins() {
        assert_eq!(join(&[Graph::complete(2), Graph::complete(3)]).unwrap(), Graph::complete(5));
        assert_eq!(
            join(&[Graph::empty(2), Graph::empty(3)]).unwrap(),
            fam(Family::CompleteMultipartite(vec![2, 3]))
        );
        let c5 = fam(Family::Cycle(5));
        assert_eq!(join(std::slice::from_ref(&c5)).unwrap(), c5);
        assert!(join(&[]).is_err());
    }

    #[test]
    fn join_is_associative() {
        let (a, b, c) = (fam(Family::Cycle(4)), fam(Family::Path(3)), Graph::empty(2));
        let nested = join(&[join(&[a.clone(), b.clone()]).unwrap(), c.clone()]).unwrap();
        assert_eq!(nested, join(&[a, b, c]).unwrap());
    }

    #[test]
    fn doubles() {
        assert_eq!(bipartite_double(&Graph::complete(4)), BipartiteGraph::complete(4, 4));
        let d = bipartite_double(&Graph::empty(3));
        assert_eq!(d.edges(), &[(0, 0), (1, 1), (2, 2)]);
        let c4 = fam(Family::Cycle(4));
        assert_eq!(bipartite_double(&c4).num_edges(), 12);
        assert!(bipartite_double(&c4).is_connected());
    }

    #[test]
    fn tilde_matches_double_of_cone() {
        let c4 = fam(Family::Cycle(4));
        let lhs = bipartite_double(&c4).tilde();
        let rhs = bipartite_double(&join(&[c4, Graph::complete(1)]).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn tilde_small_cases() {
        let t = BipartiteGraph::complete(1, 1).tilde();
        assert_eq!((t.p(), t.q(), t.num_edges()), (2, 2, 4));
        assert!(t.is_connected());
        let lone = BipartiteGraph::new(1, 0, []).unwrap().tilde();
        // v - u - w
        assert_eq!(lone.edges(), &[(0, 0), (1, 0)]);
        assert_eq!(lone.to_graph().num_edges(), 2);
        assert!(lone.is_connected());
    }

    #[test]
    fn neighborhoods() {
        let dk = bipartite_double(&Graph::complete(3));
        assert_eq!(dk.neighborhood(&[0]).unwrap(), vec![0, 1, 2]);
        assert!(dk.neighborhood(&[]).unwrap().is_empty());
        let de = bipartite_double(&Graph::empty(4));
        assert_eq!(de.neighborhood(&[2]).unwrap(), vec![2]);
        assert!(matches!(de.neighborhood(&[4]), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn connectivity() {
        assert!(!Graph::empty(2).is_connected());
        assert!(join(&[Graph::empty(2), Graph::empty(2)]).unwrap().is_connected());
        assert!(!bipartite_double(&Graph::empty(2)).is_connected());
    }

    #[test]
    fn permute_and_swap() {
        let h = BipartiteGraph::new(2, 3, [(0, 0), (0, 1), (1, 2)]).unwrap();
        let r = h.permute_left(&[1, 0]).unwrap();
        assert_eq!(r.edges(), &[(0, 2), (1, 0), (1, 1)]);
        assert_ne!(h, r);
        assert_eq!(h.swap_sides().swap_sides(), h);
        assert!(h.permute_left(&[0, 0]).is_err());
    }

    #[test]
    fn bipartite_split() {
        let c6 = fam(Family::Cycle(6));
        let b = as_bipartite(&c6).unwrap();
        assert_eq!((b.p(), b.q(), b.num_edges()), (3, 3, 6));
        assert!(as_bipartite(&fam(Family::Cycle(5))).is_err());
    }
}
