//! Graph families and binary graph operations.
//!
//! Labelings:
//! - `path(n)`: `0 - 1 - ... - (n-1)`.
//! - `cycle(n)`: `path(n)` plus `{0, n-1}`.
//! - `complete_bipartite(m, n)`: parts `0..m` and `m..m+n`.
//! - `lollipop(m, n)`: pendant path `0 - 1 - ... - (n-1)`, vertex `n-1`
//!   joined to clique vertex `n`, clique on `n..n+m`. With `m = 3, n = 2`
//!   vertex `v` is the figure label `v + 1` of the standard drawing of `L_{3,2}`.
//! - `spider(h1, h2, h3)`: centre `0`; leg `k` occupies the next `h_k`
//!   labels, listed from the centre outward.
//! - `path_with_chord(n, m)`: the path visits `0, ..., m-1, n-1, m, ..., n-2`
//!   and the chord is `{m-1, m}` (1-based: path `1..m, n, m+1..n-1`, chord `{m, m+1}`).
//! - `join(G, H)`, `disjoint_union(G, H)`: `G` keeps its labels, `H` is shifted by `|G|`.
//! - `tensor(G, H)`: `(u, u')` becomes `u * |H| + u'`, matching `A_G ⊗ A_H`.
//! - `corona_empty(G, k)`: pendant `t` (1-based, `t <= k`) of `v` is `t * |G| + v`,
//!   matching the block order of `S ⊗ A` with an `(k+1) x (k+1)` left factor.

use crate::error::GraphError;
use crate::graph::{Graph, Pair, Spider};

fn param(cond: bool, msg: impl FnOnce() -> String) -> Result<(), GraphError> {
    if cond {
        Ok(())
    } else {
        Err(GraphError::InvalidParameter(msg()))
    }
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    param(n >= 1, || "path needs n >= 1".into())?;
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    param(n >= 3, || format!("cycle needs n >= 3, got {n}"))?;
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph, GraphError> {
    param(m >= 1 && n >= 1, || "complete_bipartite needs m, n >= 1".into())?;
    Graph::from_edges(m + n, (0..m).flat_map(|i| (m..m + n).map(move |j| (i, j))))
}

pub fn lollipop(m: usize, n: usize) -> Result<Graph, GraphError> {
    param(m >= 1, || "lollipop needs a clique of size >= 1".into())?;
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    if n >= 1 {
        edges.push((n - 1, n));
    }
    for i in n..n + m {
        for j in i + 1..n + m {
            edges.push((i, j));
        }
    }
    Graph::from_edges(m + n, edges)
}

pub fn spider(h1: usize, h2: usize, h3: usize) -> Result<Graph, GraphError> {
    Ok(spider_with_legs(h1, h2, h3)?.0)
}

/// Spider graph together with its leg structure.
pub fn spider_with_legs(h1: usize, h2: usize, h3: usize) -> Result<(Graph, Spider), GraphError> {
    param(h1 >= 1 && h2 >= 1 && h3 >= 1, || "spider legs need length >= 1".into())?;
    let mut next = 1;
    let mut legs: [Vec<usize>; 3] = Default::default();
    let mut edges = Vec::new();
    for (leg, h) in legs.iter_mut().zip([h1, h2, h3]) {
        let mut prev = 0;
        for _ in 0..h {
            edges.push((prev, next));
            leg.push(next);
            prev = next;
            next += 1;
        }
    }
    let g = Graph::from_edges(next, edges)?;
    Ok((g, Spider { center: 0, legs }))
}

pub fn path_with_chord(n: usize, m: usize) -> Result<Graph, GraphError> {
    param(m >= 1 && m + 2 <= n, || {
        format!("path_with_chord needs 1 <= m <= n-2, got n={n}, m={m}")
    })?;
    let order: Vec<usize> = (0..m).chain([n - 1]).chain(m..n - 1).collect();
    let mut edges: Vec<(usize, usize)> = order.windows(2).map(|w| (w[0], w[1])).collect();
    edges.push((m - 1, m));
    Graph::from_edges(n, edges)
}

/// `K_n` with the triangle on `{n-3, n-2, n-1}` removed.
pub fn complete_minus_triangle(n: usize) -> Result<Graph, GraphError> {
    param(n >= 3, || "K_n - C_3 needs n >= 3".into())?;
    let k = complete(n)?;
    let tri = [(n - 3, n - 2), (n - 2, n - 1), (n - 3, n - 1)];
    Graph::from_edges(
        n,
        k.edges()
            .map(|p| (p.lo(), p.hi()))
            .filter(|e| !tri.contains(e)),
    )
}

/// `K_n` with the 4-cycle `0 - 1 - 2 - 3 - 0` removed.
pub fn complete_minus_c4(n: usize) -> Result<Graph, GraphError> {
    param(n >= 4, || "K_n - C_4 needs n >= 4".into())?;
    let c4 = [(0, 1), (1, 2), (2, 3), (0, 3)];
    Graph::from_edges(
        n,
        complete(n)?
            .edges()
            .map(|p| (p.lo(), p.hi()))
            .filter(|e| !c4.contains(e)),
    )
}

/// `K_{2n}` minus the perfect matching `{2i, 2i+1}`.
pub fn cocktail_party(n: usize) -> Result<Graph, GraphError> {
    param(n >= 1, || "cocktail party needs n >= 1".into())?;
    Graph::from_edges(
        2 * n,
        complete(2 * n)?
            .edges()
            .map(|p| (p.lo(), p.hi()))
            .filter(|&(a, b)| !(a % 2 == 0 && b == a + 1)),
    )
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner).collect::<Vec<_>>())
        .expect("petersen graph")
}

pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    let off = g.order();
    Graph::from_edges(
        off + h.order(),
        g.edges()
            .map(|p| (p.lo(), p.hi()))
            .chain(h.edges().map(|p| (p.lo() + off, p.hi() + off)))
            .collect::<Vec<_>>(),
    )
}

pub fn join(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    let off = g.order();
    let mut u = disjoint_union(g, h)?;
    for a in 0..off {
        for b in 0..h.order() {
            u.add_pair(Pair::new(a, off + b));
        }
    }
    Ok(u)
}

pub fn tensor(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    let m = h.order();
    let mut edges = Vec::new();
    for e in g.edges() {
        for f in h.edges() {
            edges.push((e.lo() * m + f.lo(), e.hi() * m + f.hi()));
            edges.push((e.lo() * m + f.hi(), e.hi() * m + f.lo()));
        }
    }
    Graph::from_edges(g.order() * m, edges)
}

pub fn corona_empty(g: &Graph, k: usize) -> Result<Graph, GraphError> {
    let n = g.order();
    let mut edges: Vec<(usize, usize)> = g.edges().map(|p| (p.lo(), p.hi())).collect();
    for t in 1..=k {
        for v in 0..n {
            edges.push((v, t * n + v));
        }
    }
    Graph::from_edges(n * (k + 1), edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_counts_match_closed_forms() {
        for n in 1..10 {
            assert_eq!(path(n).unwrap().edge_count(), n - 1);
            assert_eq!(complete(n).unwrap().edge_count(), n * (n - 1) / 2);
        }
        for m in 1..6 {
            for n in 0..6 {
                assert_eq!(lollipop(m, n).unwrap().edge_count(), m * (m - 1) / 2 + n);
            }
        }
        for (a, b, c) in [(1, 1, 1), (2, 3, 4), (5, 1, 2)] {
            assert_eq!(spider(a, b, c).unwrap().edge_count(), a + b + c);
        }
    }

    #[test]
    fn lollipop_3_2_matches_figure() {
        // Figure labels 1..5 shifted down by one.
        let expected = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(lollipop(3, 2).unwrap(), expected);
    }

    #[test]
    fn spider_2_3_4_has_one_branch_vertex() {
        let g = spider(2, 3, 4).unwrap();
        assert_eq!(g.order(), 10);
        assert!(g.is_tree());
        assert_eq!(g.degrees().iter().filter(|&&d| d == 3).count(), 1);
    }

    #[test]
    fn chord_spans_distance_two_in_underlying_path() {
        for n in 3..10 {
            for m in 1..=n - 2 {
                let g = path_with_chord(n, m).unwrap();
                let mut p = g.clone();
                p.remove_pair(Pair::new(m - 1, m));
                assert!(p.is_tree() && p.max_degree() <= 2);
                assert_eq!(p.distance(m - 1, m), crate::graph::Distance::Finite(2));
            }
        }
        assert!(path_with_chord(5, 4).is_err());
    }

    #[test]
    fn small_operations() {
        let k13 = complete_bipartite(1, 3).unwrap();
        assert_eq!(join(&complete(1).unwrap(), &Graph::empty(3).unwrap()).unwrap(), k13);
        assert_eq!(corona_empty(&complete(1).unwrap(), 3).unwrap(), k13);
        let k2 = complete(2).unwrap();
        let t = tensor(&k2, &k2).unwrap();
        // Brute force over the four vertex pairs.
        let mut expected = Graph::empty(4).unwrap();
        for u in 0..2 {
            for up in 0..2 {
                for v in 0..2 {
                    for vp in 0..2 {
                        if k2.has_edge(u, v) && k2.has_edge(up, vp) {
                            expected.add_pair(Pair::new(u * 2 + up, v * 2 + vp));
                        }
                    }
                }
            }
        }
        assert_eq!(t, expected);
        assert_eq!(t.edge_count(), 2);
        assert_eq!(t.components().len(), 2);
    }

    #[test]
    fn special_graphs() {
        let p = petersen();
        assert!(p.is_regular() && p.degree(0) == 3 && p.edge_count() == 15);
        assert_eq!(cocktail_party(2).unwrap().complement().edge_count(), 2);
        assert_eq!(complete_minus_triangle(4).unwrap(), complete_bipartite(1, 3).unwrap());
        assert_eq!(complete_minus_c4(4).unwrap().edge_count(), 2);
    }
}
