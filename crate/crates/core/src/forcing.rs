//! Forcing rules and their closure.
//!
//! A state is a supergraph `G_l` of the base graph `G` whose edges mark
//! entries of `X` already known to vanish. A pair `{i, j}` is *focused* on
//! `U` when `N_G[i] \ N_{G_l}[j]` and `N_G[j] \ N_{G_l}[i]` both lie in `U`;
//! the equation `[A, X]_{ij} = 0` then only involves unknowns indexed by `U`.
//!
//! - Rule 1: a pair focused on a single vertex `k` forces one new edge.
//! - Rule 2: an odd-cycle component of `complement(G_l)[N_G(i)]` whose pairs
//!   with `i` are all focused on the cycle forces the whole cycle.
//! - Rule 3: an induced spider `Y_h` whose pairs at distance `2..=h` are
//!   known, whose distance-`(h+1)` pairs are not, and whose distance-`h`
//!   pairs are focused on it, forces its distance-`(h+1)` layer.
//!
//! [`close`] applies rule 1 until it stalls, then rule 2, then rule 3,
//! returning to rule 1 after every success.

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::{Graph, Pair, Spider, VertexSet};

/// Upper bound on spider search nodes explored from a single centre.
const SPIDER_BUDGET: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule")]
pub enum ForcingStep {
    EdgeForce {
        via: Pair,
        pivot: usize,
        added: Pair,
    },
    OddCycleForce {
        vertex: usize,
        cycle: Vec<usize>,
        added: Vec<Pair>,
    },
    SpiderForce {
        spider: Spider,
        h: usize,
        added: Vec<Pair>,
    },
}

impl ForcingStep {
    pub fn added(&self) -> Vec<Pair> {
        match self {
            ForcingStep::EdgeForce { added, .. } => vec![*added],
            ForcingStep::OddCycleForce { added, .. } | ForcingStep::SpiderForce { added, .. } => {
                added.clone()
            }
        }
    }

    pub fn rule_name(&self) -> &'static str {
        match self {
            ForcingStep::EdgeForce { .. } => "EdgeForce",
            ForcingStep::OddCycleForce { .. } => "OddCycleForce",
            ForcingStep::SpiderForce { .. } => "SpiderForce",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcingCertificate {
    pub base: Graph,
    pub steps: Vec<ForcingStep>,
    pub final_graph: Graph,
}

impl ForcingCertificate {
    /// A replay-valid certificate ending at `K_n`.
    pub fn proves_membership(&self) -> bool {
        self.final_graph.is_complete() && replay(self)
    }
}

fn check_supergraph(g: &Graph, gl: &Graph) -> Result<(), GraphError> {
    if g.order() != gl.order() || !g.is_subgraph_of(gl) {
        return Err(GraphError::InvalidParameter(
            "G_l must be a supergraph of G on the same vertex set".into(),
        ));
    }
    Ok(())
}

/// `(N_G[i] \ N_{G_l}[j], N_G[j] \ N_{G_l}[i])`.
fn focus_sets(g: &Graph, gl: &Graph, i: usize, j: usize) -> (VertexSet, VertexSet) {
    (
        g.closed_neighborhood(i).difference(gl.closed_neighborhood(j)),
        g.closed_neighborhood(j).difference(gl.closed_neighborhood(i)),
    )
}

pub fn is_focused(g: &Graph, gl: &Graph, i: usize, j: usize, u: VertexSet) -> bool {
    let (s1, s2) = focus_sets(g, gl, i, j);
    s1.is_subset(u) && s2.is_subset(u)
}

fn rule1_at(g: &Graph, gl: &Graph, i: usize, j: usize) -> Option<(usize, Pair)> {
    let (s1, s2) = focus_sets(g, gl, i, j);
    let pick = |s: VertexSet| s.single().filter(|&k| k != i && k != j);
    match (pick(s1), pick(s2)) {
        (Some(k), None) if s2.is_empty() => Some((k, Pair::new(j, k))),
        (None, Some(k)) if s1.is_empty() => Some((k, Pair::new(i, k))),
        _ => None,
    }
}

/// First rule-1 instance over pairs `i < j` in lexicographic order.
pub fn find_rule1(g: &Graph, gl: &Graph) -> Result<Option<ForcingStep>, GraphError> {
    check_supergraph(g, gl)?;
    let n = g.order();
    for i in 0..n {
        for j in i + 1..n {
            if let Some((pivot, added)) = rule1_at(g, gl, i, j) {
                return Ok(Some(ForcingStep::EdgeForce {
                    via: Pair::new(i, j),
                    pivot,
                    added,
                }));
            }
        }
    }
    Ok(None)
}

/// Vertices of an induced odd cycle in `h` restricted to `comp`, listed in
/// cycle order from the smallest vertex, or `None` if `comp` is not one.
fn as_odd_cycle(comp: VertexSet, nonadj: impl Fn(usize) -> VertexSet) -> Option<Vec<usize>> {
    let len = comp.len();
    if len < 3 || len % 2 == 0 {
        return None;
    }
    if comp.iter().any(|v| nonadj(v).intersection(comp).len() != 2) {
        return None;
    }
    let start = comp.first()?;
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = nonadj(start).intersection(comp).first()?;
    while cur != start {
        order.push(cur);
        let next = nonadj(cur).intersection(comp).difference(VertexSet::singleton(prev));
        prev = cur;
        cur = next.first()?;
        if order.len() > len {
            return None;
        }
    }
    (order.len() == len).then_some(order)
}

fn cycle_edges(cycle: &[usize]) -> Vec<Pair> {
    let mut e: Vec<Pair> = (0..cycle.len())
        .map(|t| Pair::new(cycle[t], cycle[(t + 1) % cycle.len()]))
        .collect();
    e.sort();
    e
}

pub fn find_rule2(g: &Graph, gl: &Graph) -> Result<Option<ForcingStep>, GraphError> {
    check_supergraph(g, gl)?;
    let comp_graph = gl.complement();
    for i in 0..g.order() {
        let nb = g.neighbors(i);
        for comp in comp_graph.components_within(nb) {
            let Some(cycle) = as_odd_cycle(comp, |v| comp_graph.neighbors(v).intersection(nb))
            else {
                continue;
            };
            if comp.iter().all(|j| is_focused(g, gl, i, j, comp)) {
                return Ok(Some(ForcingStep::OddCycleForce {
                    vertex: i,
                    added: cycle_edges(&cycle),
                    cycle,
                }));
            }
        }
    }
    Ok(None)
}

/// Sound form of the spider conditions; see the module docs.
fn spider_accepts(g: &Graph, gl: &Graph, y: &Spider) -> bool {
    let h = y.h();
    let verts = y.vertex_set();
    let known = (2..=h).all(|r| y.layer(r).iter().all(|p| gl.has_edge(p.lo(), p.hi())));
    known
        && y.layer(h + 1).iter().all(|p| !gl.has_edge(p.lo(), p.hi()))
        && y
            .layer(h)
            .iter()
            .all(|p| is_focused(g, gl, p.lo(), p.hi(), verts))
}

struct SpiderSearch<'a> {
    g: &'a Graph,
    gl: &'a Graph,
    budget: usize,
}

impl SpiderSearch<'_> {
    fn extensions(&self, y: &Spider, leg: usize, taken: VertexSet) -> Vec<usize> {
        let verts = y.vertex_set();
        let end = *y.legs[leg].last().expect("legs are nonempty");
        self.g
            .neighbors(end)
            .difference(verts.union(taken))
            .iter()
            .filter(|&x| self.g.neighbors(x).intersection(verts) == VertexSet::singleton(end))
            .filter(|&x| self.g.neighbors(x).intersection(taken).is_empty())
            .collect()
    }

    fn dfs(&mut self, y: &mut Spider) -> Option<Spider> {
        if self.budget == 0 {
            return None;
        }
        self.budget -= 1;
        if spider_accepts(self.g, self.gl, y) {
            return Some(y.clone());
        }
        if 3 * (y.h() + 1) + 1 > self.g.order() {
            return None;
        }
        for a in self.extensions(y, 0, VertexSet::EMPTY) {
            for b in self.extensions(y, 1, VertexSet::singleton(a)) {
                let taken = VertexSet::from_iter([a, b]);
                for c in self.extensions(y, 2, taken) {
                    for (leg, v) in y.legs.iter_mut().zip([a, b, c]) {
                        leg.push(v);
                    }
                    let found = self.dfs(y);
                    for leg in y.legs.iter_mut() {
                        leg.pop();
                    }
                    if found.is_some() {
                        return found;
                    }
                }
            }
        }
        None
    }
}

/// First centre (ascending) admitting an acceptable induced spider.
pub fn find_rule3(g: &Graph, gl: &Graph) -> Result<Option<ForcingStep>, GraphError> {
    check_supergraph(g, gl)?;
    for center in 0..g.order() {
        let nb = g.neighbors(center).to_vec();
        if nb.len() < 3 {
            continue;
        }
        let mut search = SpiderSearch {
            g,
            gl,
            budget: SPIDER_BUDGET,
        };
        for (x, &a) in nb.iter().enumerate() {
            for (y, &b) in nb.iter().enumerate().skip(x + 1) {
                for &c in nb.iter().skip(y + 1) {
                    if g.has_edge(a, b) || g.has_edge(a, c) || g.has_edge(b, c) {
                        continue;
                    }
                    let mut spider = Spider {
                        center,
                        legs: [vec![a], vec![b], vec![c]],
                    };
                    if let Some(found) = search.dfs(&mut spider) {
                        let h = found.h();
                        let added = found.layer(h + 1);
                        return Ok(Some(ForcingStep::SpiderForce {
                            spider: found,
                            h,
                            added,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn apply(gl: &mut Graph, step: &ForcingStep) {
    for p in step.added() {
        gl.add_pair(p);
    }
}

pub fn close(g: &Graph) -> ForcingCertificate {
    let mut gl = g.clone();
    let mut steps = Vec::new();
    let finders: [fn(&Graph, &Graph) -> Result<Option<ForcingStep>, GraphError>; 3] =
        [find_rule1, find_rule2, find_rule3];
    'outer: while !gl.is_complete() {
        for find in finders {
            if let Some(step) = find(g, &gl).expect("G_l is a supergraph of G") {
                apply(&mut gl, &step);
                steps.push(step);
                continue 'outer;
            }
        }
        break;
    }
    ForcingCertificate {
        base: g.clone(),
        steps,
        final_graph: gl,
    }
}

/// Re-validates every step from scratch; `Err` names the first unsound step.
pub fn replay_check(cert: &ForcingCertificate) -> Result<(), String> {
    let g = &cert.base;
    let n = g.order();
    let mut gl = g.clone();
    let in_range = |v: usize| v < n;
    for (idx, step) in cert.steps.iter().enumerate() {
        let fail = |why: &str| Err(format!("step {idx} ({}): {why}", step.rule_name()));
        let added = step.added();
        if added.is_empty() {
            return fail("adds nothing");
        }
        if added.iter().any(|p| !in_range(p.hi())) {
            return fail("vertex out of range");
        }
        if added.iter().any(|p| gl.has_edge(p.lo(), p.hi())) {
            return fail("added pair is already known");
        }
        match step {
            ForcingStep::EdgeForce { via, pivot, added } => {
                if !in_range(via.hi()) || !in_range(*pivot) {
                    return fail("vertex out of range");
                }
                if !gl.has_edge(via.lo(), via.hi()) {
                    return fail("forcing pair is not an edge of the current state");
                }
                match rule1_at(g, &gl, via.lo(), via.hi()) {
                    Some((k, p)) if k == *pivot && p == *added => {}
                    _ => return fail("pair is not focused on the pivot"),
                }
            }
            ForcingStep::OddCycleForce {
                vertex,
                cycle,
                added,
            } => {
                if !in_range(*vertex) || cycle.iter().any(|&v| !in_range(v)) {
                    return fail("vertex out of range");
                }
                let comp = VertexSet::from_iter(cycle.iter().copied());
                if comp.len() != cycle.len() {
                    return fail("cycle repeats a vertex");
                }
                let nb = g.neighbors(*vertex);
                let complement = gl.complement();
                if !comp.is_subset(nb) || !complement.components_within(nb).contains(&comp) {
                    return fail("cycle is not a component of the neighbourhood complement");
                }
                let Some(order) = as_odd_cycle(comp, |v| complement.neighbors(v).intersection(nb))
                else {
                    return fail("component is not an odd cycle");
                };
                if cycle_edges(&order) != cycle_edges(cycle) || cycle_edges(cycle) != *added {
                    return fail("added pairs are not the cycle edges");
                }
                if !comp.iter().all(|j| is_focused(g, &gl, *vertex, j, comp)) {
                    return fail("a pair is not focused on the cycle");
                }
            }
            ForcingStep::SpiderForce { spider, h, added } => {
                if spider.legs.iter().flatten().chain([&spider.center]).any(|&v| !in_range(v)) {
                    return fail("vertex out of range");
                }
                if spider.h() != *h || !spider.is_induced_in(g) {
                    return fail("spider is not an induced Y_h");
                }
                if !spider_accepts(g, &gl, spider) {
                    return fail("spider conditions fail");
                }
                let mut a = added.clone();
                a.sort();
                if a != spider.layer(h + 1) {
                    return fail("added pairs are not the next spider layer");
                }
            }
        }
        apply(&mut gl, step);
    }
    if gl != cert.final_graph {
        return Err("final graph does not match the replayed state".into());
    }
    Ok(())
}

pub fn replay(cert: &ForcingCertificate) -> bool {
    replay_check(cert).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, complete_minus_triangle, cycle, lollipop, path, spider, spider_with_legs};

    fn pairs(v: &[(usize, usize)]) -> Vec<Pair> {
        v.iter().map(|&(a, b)| Pair::new(a, b)).collect()
    }

    #[test]
    fn rule1_on_lollipop() {
        let g = lollipop(3, 2).unwrap();
        let step = find_rule1(&g, &g).unwrap().unwrap();
        // Figure labels {1,2} force {1,3}.
        assert_eq!(
            step,
            ForcingStep::EdgeForce {
                via: Pair::new(0, 1),
                pivot: 2,
                added: Pair::new(0, 2)
            }
        );
    }

    #[test]
    fn lollipop_closure_matches_figure() {
        let cert = close(&lollipop(3, 2).unwrap());
        assert!(cert.final_graph.is_complete());
        assert_eq!(cert.steps.len(), 5);
        let mut added: Vec<Pair> = cert.steps.iter().flat_map(|s| s.added()).collect();
        added.sort();
        assert_eq!(added, pairs(&[(0, 2), (0, 3), (0, 4), (1, 3), (1, 4)]));
        assert!(replay(&cert));
    }

    #[test]
    fn nothing_applies_to_c4_or_kn() {
        let c4 = cycle(4).unwrap();
        assert_eq!(find_rule1(&c4, &c4).unwrap(), None);
        assert_eq!(find_rule2(&c4, &c4).unwrap(), None);
        assert_eq!(find_rule3(&c4, &c4).unwrap(), None);
        let cert = close(&c4);
        assert!(cert.steps.is_empty() && cert.final_graph == c4);
        let k5 = complete(5).unwrap();
        assert_eq!(find_rule1(&k5, &k5).unwrap(), None);
    }

    #[test]
    fn supergraph_is_required() {
        let p = path(4).unwrap();
        assert!(find_rule1(&complete(4).unwrap(), &p).is_err());
        assert!(find_rule2(&p, &path(5).unwrap()).is_err());
    }

    #[test]
    fn odd_cycle_on_complete_minus_triangle() {
        for n in 4..9 {
            let g = complete_minus_triangle(n).unwrap();
            let step = find_rule2(&g, &g).unwrap().unwrap();
            match &step {
                ForcingStep::OddCycleForce { vertex, cycle, added } => {
                    assert!(*vertex < n - 3);
                    assert_eq!(cycle.len(), 3);
                    assert_eq!(added.len(), 3);
                }
                _ => unreachable!(),
            }
            let cert = close(&g);
            assert!(cert.proves_membership());
        }
    }

    #[test]
    fn star_spider() {
        // On K_{1,3} the distance-1 layer is the spider itself, so h = 1 applies.
        let g = spider(1, 1, 1).unwrap();
        match find_rule3(&g, &g).unwrap() {
            Some(ForcingStep::SpiderForce { h: 1, added, .. }) => {
                assert_eq!(added, pairs(&[(1, 2), (1, 3), (2, 3)]))
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(find_rule3(&path(6).unwrap(), &path(6).unwrap()).unwrap(), None);
    }

    #[test]
    fn spider_234_uses_all_rules() {
        let g = spider(2, 3, 4).unwrap();
        let cert = close(&g);
        assert!(cert.proves_membership());
        let has = |name| cert.steps.iter().any(|s| s.rule_name() == name);
        assert!(has("OddCycleForce") && has("SpiderForce"));
    }

    #[test]
    fn spider_layer_at_phase_three_state() {
        // State after the first two phases: legs cliqued with the centre, and
        // the centre's neighbours joined.
        let (g, y) = spider_with_legs(2, 3, 4).unwrap();
        let mut gl = g.clone();
        for leg in &y.legs {
            let mut part = leg.clone();
            part.push(y.center);
            for (a, &u) in part.iter().enumerate() {
                for &v in &part[a + 1..] {
                    gl.add_pair(Pair::new(u, v));
                }
            }
        }
        let firsts = [y.legs[0][0], y.legs[1][0], y.legs[2][0]];
        for (a, &u) in firsts.iter().enumerate() {
            for &v in &firsts[a + 1..] {
                gl.add_pair(Pair::new(u, v));
            }
        }
        match find_rule3(&g, &gl).unwrap() {
            Some(ForcingStep::SpiderForce { h, added, spider }) => {
                assert_eq!(h, 2);
                assert_eq!(spider.center, 0);
                assert_eq!(added.len(), 6);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn paths_close() {
        for n in 1..=12 {
            let cert = close(&path(n).unwrap());
            assert!(cert.proves_membership(), "P_{n}");
            assert!(cert.steps.iter().all(|s| matches!(s, ForcingStep::EdgeForce { .. })));
        }
    }

    #[test]
    fn tampering_is_detected() {
        let mut cert = close(&path(6).unwrap());
        assert!(replay(&cert));
        let mut missing = cert.clone();
        missing.steps.remove(3);
        assert!(!replay(&missing));
        cert.final_graph = path(6).unwrap();
        assert!(!replay(&cert));

        // A rule-1 step claimed at the start of P_4 from {1,2}, whose
        // difference set {0, 1, 2} \ {1, 2, 3} = {0} pairs with {3}.
        let g = path(4).unwrap();
        let bogus = ForcingCertificate {
            base: g.clone(),
            steps: vec![ForcingStep::EdgeForce {
                via: Pair::new(1, 2),
                pivot: 0,
                added: Pair::new(0, 2),
            }],
            final_graph: g.add_edges([Pair::new(0, 2)]).unwrap(),
        };
        assert!(!replay(&bogus));
    }
}
