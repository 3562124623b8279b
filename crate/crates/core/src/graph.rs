//! Simple undirected graphs on dense vertex labels `0..n`.
//!
//! Adjacency is stored as one [`VertexSet`] bitmask per vertex, which caps the
//! order at [`MAX_VERTICES`]. Every builder documents its labeling so that
//! certificates produced from its output are reproducible.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Largest vertex count representable by [`Graph`].
pub const MAX_VERTICES: usize = 128;

/// A set of vertices drawn from `0..MAX_VERTICES`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 128 {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u128 << v)
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in it {
            s.insert(v);
        }
        s
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 128 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u128 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u128 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest element, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// The unique element of a singleton set.
    pub fn single(self) -> Option<usize> {
        (self.len() == 1).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexSetIter {
        VertexSetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexSetIter;
    fn into_iter(self) -> VertexSetIter {
        self.iter()
    }
}

pub struct VertexSetIter(u128);

impl Iterator for VertexSetIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// Unordered vertex pair, stored with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", try_from = "[usize; 2]")]
pub struct Pair {
    lo: usize,
    hi: usize,
}

impl Pair {
    /// Panics if `a == b`.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "a pair needs two distinct vertices");
        Pair {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    pub fn lo(self) -> usize {
        self.lo
    }

    pub fn hi(self) -> usize {
        self.hi
    }

    pub fn contains(self, v: usize) -> bool {
        self.lo == v || self.hi == v
    }
}

impl From<Pair> for [usize; 2] {
    fn from(p: Pair) -> Self {
        [p.lo, p.hi]
    }
}

impl TryFrom<[usize; 2]> for Pair {
    type Error = String;
    fn try_from(v: [usize; 2]) -> Result<Self, String> {
        if v[0] == v[1] {
            Err(format!("degenerate pair [{}, {}]", v[0], v[1]))
        } else {
            Ok(Pair::new(v[0], v[1]))
        }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges().map(<[usize; 2]>::from).collect(),
        }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = GraphError;

    fn try_from(r: GraphRepr) -> Result<Self, GraphError> {
        Graph::from_edges(r.n, r.edges.into_iter().map(|[a, b]| (a, b)))
    }
}

/// Shortest-path distance; unreachable pairs are `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

/// A simple undirected graph on vertices `0..n`. Serializes as
/// `{"n": n, "edges": [[i, j], ...]}` with edges in lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "GraphRepr", try_from = "GraphRepr")]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges().map(|p| (p.lo, p.hi)).collect();
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &edges)
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (a, b) in edges {
            g.insert_edge(a, b)?;
        }
        Ok(g)
    }

    pub(crate) fn insert_edge(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        if a >= self.n || b >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: a.max(b),
                n: self.n,
            });
        }
        if a == b {
            return Err(GraphError::Loop(a));
        }
        self.adj[a].insert(b);
        self.adj[b].insert(a);
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && self.adj[a].contains(b)
    }

    /// Open neighbourhood.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        let mut s = self.adj[v];
        s.insert(v);
        s
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|s| s.len()).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges in lexicographic order of `(lo, hi)`.
    pub fn edges(&self) -> impl Iterator<Item = Pair> + '_ {
        (0..self.n).flat_map(move |i| {
            self.adj[i]
                .iter()
                .filter(move |&j| j > i)
                .map(move |j| Pair { lo: i, hi: j })
        })
    }

    /// Non-adjacent pairs in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = Pair> + '_ {
        (0..self.n).flat_map(move |i| {
            (i + 1..self.n)
                .filter(move |&j| !self.adj[i].contains(j))
                .map(move |j| Pair { lo: i, hi: j })
        })
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n
            && self
                .adj
                .iter()
                .zip(&other.adj)
                .all(|(a, b)| a.is_subset(*b))
    }

    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.n);
        let adj = (0..self.n)
            .map(|v| {
                let mut s = full.difference(self.adj[v]);
                s.remove(v);
                s
            })
            .collect();
        Graph { n: self.n, adj }
    }

    /// Copy of `self` with extra edges.
    pub fn add_edges<I>(&self, pairs: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = Pair>,
    {
        let mut g = self.clone();
        for p in pairs {
            g.insert_edge(p.lo, p.hi)?;
        }
        Ok(g)
    }

    /// In-place edge insertion used by the forcing loop.
    pub(crate) fn add_pair(&mut self, p: Pair) {
        self.adj[p.lo].insert(p.hi);
        self.adj[p.hi].insert(p.lo);
    }

    #[cfg(test)]
    pub(crate) fn remove_pair(&mut self, p: Pair) {
        self.adj[p.lo].remove(p.hi);
        self.adj[p.hi].remove(p.lo);
    }

    /// Induced subgraph on `verts`, relabeled in increasing vertex order.
    pub fn induced(&self, verts: &[usize]) -> Result<Graph, GraphError> {
        let mut sorted = verts.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&v) = sorted.iter().find(|&&v| v >= self.n) {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        let mut g = Graph::empty(sorted.len())?;
        for (a, &u) in sorted.iter().enumerate() {
            for (b, &w) in sorted.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, w) {
                    g.add_pair(Pair::new(a, b));
                }
            }
        }
        Ok(g)
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::InvalidParameter(format!(
                "permutation of length {} for graph of order {}",
                perm.len(),
                self.n
            )));
        }
        let image = VertexSet::from_iter(perm.iter().copied().filter(|&v| v < self.n));
        if image.len() != self.n {
            return Err(GraphError::InvalidParameter(
                "relabeling is not a permutation".into(),
            ));
        }
        Graph::from_edges(self.n, self.edges().map(|p| (perm[p.lo], perm[p.hi])))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(self.vertices())
            .into_iter()
            .map(VertexSet::to_vec)
            .collect()
    }

    /// Components of the subgraph induced on `within`.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut left = within;
        let mut out = Vec::new();
        while let Some(start) = left.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier {
                    next = next.union(self.adj[v]);
                }
                frontier = next.intersection(within).difference(comp);
                comp = comp.union(frontier);
            }
            left = left.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components_within(self.vertices()).len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edge_count() + 1 == self.n && self.is_connected()
    }

    pub fn is_unicyclic(&self) -> bool {
        self.n >= 3 && self.edge_count() == self.n && self.is_connected()
    }

    pub fn is_regular(&self) -> bool {
        let mut d = self.adj.iter().map(|s| s.len());
        match d.next() {
            None => true,
            Some(first) => d.all(|x| x == first),
        }
    }

    /// The cycle of a connected unicyclic graph, in cyclic order starting at
    /// its smallest vertex and continuing to the smaller of its two cycle
    /// neighbours.
    pub fn unique_cycle(&self) -> Result<Vec<usize>, GraphError> {
        if !self.is_unicyclic() {
            return Err(GraphError::NotUnicyclic);
        }
        // Strip leaves until only the cycle remains.
        let mut alive = self.vertices();
        let mut deg = self.degrees();
        let mut stack: Vec<usize> = (0..self.n).filter(|&v| deg[v] == 1).collect();
        while let Some(v) = stack.pop() {
            if !alive.contains(v) {
                continue;
            }
            alive.remove(v);
            for w in self.adj[v].intersection(alive) {
                deg[w] -= 1;
                if deg[w] == 1 {
                    stack.push(w);
                }
            }
        }
        let start = alive.first().ok_or(GraphError::NotUnicyclic)?;
        let mut order = vec![start];
        let mut prev = start;
        let mut cur = self.adj[start].intersection(alive).first().unwrap();
        while cur != start {
            order.push(cur);
            let next = self.adj[cur]
                .intersection(alive)
                .iter()
                .find(|&w| w != prev)
                .unwrap();
            prev = cur;
            cur = next;
        }
        Ok(order)
    }

    /// BFS distances from `src`.
    pub fn distances_from(&self, src: usize) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinite; self.n];
        dist[src] = Distance::Finite(0);
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            let Distance::Finite(d) = dist[v] else { unreachable!() };
            for w in self.adj[v] {
                if dist[w] == Distance::Infinite {
                    dist[w] = Distance::Finite(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, a: usize, b: usize) -> Distance {
        self.distances_from(a)[b]
    }

    /// Pairs at shortest-path distance exactly `r`, lexicographically ordered.
    pub fn distance_layer(&self, r: usize) -> Vec<Pair> {
        let mut out = Vec::new();
        for i in 0..self.n {
            let dist = self.distances_from(i);
            for (j, d) in dist.iter().enumerate().skip(i + 1) {
                if *d == Distance::Finite(r) {
                    out.push(Pair::new(i, j));
                }
            }
        }
        out
    }
}

/// Barbell partition `{R, W1, W2}` of a graph's vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarbellPartition {
    pub r: Vec<usize>,
    pub w1: Vec<usize>,
    pub w2: Vec<usize>,
}

impl BarbellPartition {
    /// Checks every defining condition against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), GraphError> {
        let bad = |why: &str| Err(GraphError::InvalidPartition(why.to_string()));
        let r = VertexSet::from_iter(self.r.iter().copied());
        let w1 = VertexSet::from_iter(self.w1.iter().copied());
        let w2 = VertexSet::from_iter(self.w2.iter().copied());
        let total = self.r.len() + self.w1.len() + self.w2.len();
        if total != g.order() || r.union(w1).union(w2) != g.vertices() {
            return bad("parts do not partition the vertex set");
        }
        if w1.is_empty() || w2.is_empty() {
            return bad("W1 and W2 must be nonempty");
        }
        if w1.iter().any(|v| !g.neighbors(v).intersection(w2).is_empty()) {
            return bad("an edge joins W1 to W2");
        }
        for v in r {
            let nb = g.neighbors(v);
            if nb.intersection(w1).len() == 1 || nb.intersection(w2).len() == 1 {
                return bad("an R vertex has exactly one neighbour in W1 or W2");
            }
        }
        Ok(())
    }
}

/// An induced spider `Y_h`: a centre joined to the first vertex of three
/// disjoint induced paths of `h` vertices each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spider {
    pub center: usize,
    /// Each leg lists its vertices from the centre outward.
    pub legs: [Vec<usize>; 3],
}

impl Spider {
    pub fn h(&self) -> usize {
        self.legs[0].len()
    }

    pub fn vertex_set(&self) -> VertexSet {
        let mut s = VertexSet::singleton(self.center);
        for leg in &self.legs {
            for &v in leg {
                s.insert(v);
            }
        }
        s
    }

    /// Distance inside `Y_h` between two of its vertices given as
    /// `(leg, depth)` coordinates, the centre being depth 0.
    fn coord(&self, v: usize) -> Option<(usize, usize)> {
        if v == self.center {
            return Some((0, 0));
        }
        self.legs
            .iter()
            .enumerate()
            .find_map(|(l, leg)| leg.iter().position(|&w| w == v).map(|p| (l, p + 1)))
    }

    pub fn internal_distance(&self, a: usize, b: usize) -> Option<usize> {
        let (la, da) = self.coord(a)?;
        let (lb, db) = self.coord(b)?;
        Some(if da == 0 || db == 0 || la == lb {
            da.abs_diff(db)
        } else {
            da + db
        })
    }

    /// All pairs of spider vertices at internal distance exactly `r`.
    pub fn layer(&self, r: usize) -> Vec<Pair> {
        let verts = self.vertex_set().to_vec();
        let mut out = Vec::new();
        for (i, &a) in verts.iter().enumerate() {
            for &b in &verts[i + 1..] {
                if self.internal_distance(a, b) == Some(r) {
                    out.push(Pair::new(a, b));
                }
            }
        }
        out
    }

    /// True iff the spider's vertices induce exactly `Y_h` in `g`.
    pub fn is_induced_in(&self, g: &Graph) -> bool {
        let h = self.h();
        if h == 0 || self.legs.iter().any(|l| l.len() != h) {
            return false;
        }
        let verts = self.vertex_set();
        if verts.len() != 3 * h + 1 || verts.iter().any(|v| v >= g.order()) {
            return false;
        }
        verts.to_vec().iter().enumerate().all(|(i, &a)| {
            verts
                .to_vec()
                .iter()
                .skip(i + 1)
                .all(|&b| g.has_edge(a, b) == (self.internal_distance(a, b) == Some(1)))
        })
    }
}
