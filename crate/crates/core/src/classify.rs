//! The verdict engine.
//!
//! [`classify`] runs twelve stages in a fixed order and stops at the first
//! conclusive one. Cheap structural tests come first, then the explicit
//! constructions and the known table, then exponential search (barbell
//! partitions, forcing closure), and finally random sampling, which can
//! only refute. Every stage is sound on its own, so [`run_stage`] may be
//! called on any graph.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::forcing::{close, replay_check, ForcingCertificate};
use crate::graph::{Graph, VertexSet};
use crate::iso::{find_isomorphism, ISO_MAX_ORDER};
use crate::refute::{
    barbell_search, barbell_witness, barbell_with_r, cocktail_witness, complement_path_witness,
    g98_witness, g99_witness, kn_minus_c4_witness, regular_witness, sample_refute, Witness,
    BARBELL_CAP, RETRY_BUDGET,
};
use crate::strong::is_tree_or_odd_unicyclic_forest;

pub const DEFAULT_TRIALS: u64 = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Complete,
    Tree,
    Regular,
    Unicyclic,
    CutVertex,
    ComplementPath,
    KnownTable,
    Structure,
    Join,
    Barbell,
    Forcing,
    Sampling,
}

impl Stage {
    pub const ALL: [Stage; 12] = [
        Stage::Complete,
        Stage::Tree,
        Stage::Regular,
        Stage::Unicyclic,
        Stage::CutVertex,
        Stage::ComplementPath,
        Stage::KnownTable,
        Stage::Structure,
        Stage::Join,
        Stage::Barbell,
        Stage::Forcing,
        Stage::Sampling,
    ];

    /// Position in the pipeline, 1 to 12.
    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Stage::Complete => "complete",
            Stage::Tree => "tree",
            Stage::Regular => "regular",
            Stage::Unicyclic => "unicyclic",
            Stage::CutVertex => "cut-vertex",
            Stage::ComplementPath => "complement-path",
            Stage::KnownTable => "known-table",
            Stage::Structure => "structure",
            Stage::Join => "join",
            Stage::Barbell => "barbell",
            Stage::Forcing => "forcing",
            Stage::Sampling => "sampling",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Hard-coded small graphs whose status is settled by hand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KnownGraph {
    /// 4-cycle `0-1-2-3-0` with the pendant edge `3-4`.
    C4Pendant,
    /// `Y_2^{(2)}`: centre `0`, legs `1-4`, `2-5`, `3-6`, plus all pairs at
    /// distance two.
    SpiderSquare,
    G98,
    G99,
}

impl KnownGraph {
    pub const ALL: [KnownGraph; 4] = [
        KnownGraph::C4Pendant,
        KnownGraph::SpiderSquare,
        KnownGraph::G98,
        KnownGraph::G99,
    ];

    pub fn graph(self) -> Graph {
        match self {
            KnownGraph::C4Pendant => {
                Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (0, 3), (3, 4)]).expect("C4 + pendant")
            }
            KnownGraph::SpiderSquare => Graph::from_edges(
                7,
                [
                    (0, 1),
                    (0, 2),
                    (0, 3),
                    (1, 4),
                    (2, 5),
                    (3, 6),
                    (1, 2),
                    (2, 3),
                    (1, 3),
                    (0, 4),
                    (0, 5),
                    (0, 6),
                ],
            )
            .expect("Y_2^(2)"),
            KnownGraph::G98 => g98_witness().graph,
            KnownGraph::G99 => g99_witness().graph,
        }
    }

    pub fn is_member(self) -> bool {
        matches!(self, KnownGraph::C4Pendant | KnownGraph::SpiderSquare)
    }

    pub fn witness(self) -> Option<Witness> {
        match self {
            KnownGraph::G98 => Some(g98_witness()),
            KnownGraph::G99 => Some(g99_witness()),
            _ => None,
        }
    }
}

/// Why a graph is in `G^SSP`. Every variant can be re-checked with
/// [`MembershipProof::check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "basis", rename_all = "kebab-case")]
pub enum MembershipProof {
    Complete,
    /// A tree with no vertex of degree four or more and at most one of
    /// degree three. The forcing certificate is optional.
    TreeTheorem {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        forcing: Option<ForcingCertificate>,
    },
    Forcing {
        certificate: ForcingCertificate,
    },
    /// `entry.graph().relabel(map)` is the graph.
    KnownTable {
        entry: KnownGraph,
        map: Vec<usize>,
    },
    /// Every vertex of `left` is adjacent to every vertex of `right`, the
    /// induced graph on `left` is a member, and the induced graph on `right`
    /// is a member (`right_proof`) or, when `right_proof` is absent, has a
    /// complement whose components are trees or odd unicyclic graphs.
    Join {
        left: Vec<usize>,
        right: Vec<usize>,
        left_proof: Box<MembershipProof>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        right_proof: Option<Box<MembershipProof>>,
    },
}

fn sorted_strict(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

fn tree_theorem_holds(g: &Graph) -> bool {
    g.is_tree() && g.max_degree() <= 3 && g.degrees().iter().filter(|&&d| d == 3).count() <= 1
}

impl MembershipProof {
    pub fn check(&self, g: &Graph) -> Result<(), String> {
        match self {
            MembershipProof::Complete => {
                if g.is_complete() {
                    Ok(())
                } else {
                    Err("graph is not complete".into())
                }
            }
            MembershipProof::TreeTheorem { forcing } => {
                if !tree_theorem_holds(g) {
                    return Err("graph is not a tree meeting the degree conditions".into());
                }
                match forcing {
                    Some(cert) => check_forcing(cert, g),
                    None => Ok(()),
                }
            }
            MembershipProof::Forcing { certificate } => check_forcing(certificate, g),
            MembershipProof::KnownTable { entry, map } => {
                if !entry.is_member() {
                    return Err(format!("{entry:?} is not a member of the table"));
                }
                let h = entry.graph();
                let mut seen = vec![false; g.order()];
                if map.len() != h.order() || map.iter().any(|&v| v >= g.order() || std::mem::replace(&mut seen[v], true)) {
                    return Err("map is not a permutation of the vertices".into());
                }
                match h.relabel(map) {
                    Ok(r) if r == *g => Ok(()),
                    _ => Err("relabelled table graph differs from the graph".into()),
                }
            }
            MembershipProof::Join {
                left,
                right,
                left_proof,
                right_proof,
            } => {
                if left.is_empty() || right.is_empty() || !sorted_strict(left) || !sorted_strict(right) {
                    return Err("join sides must be nonempty and strictly increasing".into());
                }
                let n = g.order();
                if left.iter().chain(right).any(|&v| v >= n) {
                    return Err("join side names a missing vertex".into());
                }
                let (l, r) = (
                    VertexSet::from_iter(left.iter().copied()),
                    VertexSet::from_iter(right.iter().copied()),
                );
                if !l.intersection(r).is_empty()
                    || l.union(r) != g.vertices()
                {
                    return Err("join sides do not partition the vertices".into());
                }
                if left.iter().any(|&u| !r.is_subset(g.neighbors(u))) {
                    return Err("a left vertex misses a right vertex".into());
                }
                let gl = g.induced(left).map_err(|e| e.to_string())?;
                let gr = g.induced(right).map_err(|e| e.to_string())?;
                left_proof.check(&gl).map_err(|e| format!("left side: {e}"))?;
                match right_proof {
                    Some(p) => p.check(&gr).map_err(|e| format!("right side: {e}")),
                    None if is_tree_or_odd_unicyclic_forest(&gr.complement()) => Ok(()),
                    None => Err("right complement is not a union of trees and odd unicyclic graphs".into()),
                }
            }
        }
    }

    /// For a tree-theorem proof, attaches the forcing closure when it reaches
    /// `K_n`. Other proofs are returned unchanged.
    pub fn with_forcing(self, g: &Graph) -> MembershipProof {
        match self {
            MembershipProof::TreeTheorem { forcing: None } => {
                let cert = close(g);
                MembershipProof::TreeTheorem {
                    forcing: cert.proves_membership().then_some(cert),
                }
            }
            other => other,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            MembershipProof::Complete => "complete graph".into(),
            MembershipProof::TreeTheorem { .. } => "tree theorem".into(),
            MembershipProof::Forcing { certificate } => {
                format!("forcing certificate, {} steps", certificate.steps.len())
            }
            MembershipProof::KnownTable { entry, .. } => format!("known table entry {entry:?}"),
            MembershipProof::Join { left, right, .. } => {
                format!("join of {} and {} vertices", left.len(), right.len())
            }
        }
    }
}

fn check_forcing(cert: &ForcingCertificate, g: &Graph) -> Result<(), String> {
    if cert.base != *g {
        return Err("certificate base differs from the graph".into());
    }
    replay_check(cert)?;
    if !cert.final_graph.is_complete() {
        return Err("forcing stalls before K_n".into());
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    In { proof: MembershipProof, stage: Stage },
    Out { witness: Witness, reason: Stage },
    Unknown { samples_passed: u64 },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::In { .. } => "in",
            Verdict::Out { .. } => "out",
            Verdict::Unknown { .. } => "unknown",
        }
    }

    pub fn stage(&self) -> Option<Stage> {
        match self {
            Verdict::In { stage, .. } => Some(*stage),
            Verdict::Out { reason, .. } => Some(*reason),
            Verdict::Unknown { .. } => None,
        }
    }

    pub fn is_in(&self) -> bool {
        matches!(self, Verdict::In { .. })
    }

    pub fn is_out(&self) -> bool {
        matches!(self, Verdict::Out { .. })
    }

    /// Re-checks the evidence against `g`; `Unknown` always passes.
    pub fn check(&self, g: &Graph) -> Result<(), String> {
        match self {
            Verdict::In { proof, .. } => proof.check(g),
            Verdict::Out { witness, .. } => {
                if witness.graph != *g {
                    return Err("witness is for a different graph".into());
                }
                witness.check().map_err(|e| e.to_string())
            }
            Verdict::Unknown { .. } => Ok(()),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Verdict::In { proof, .. } => proof.describe(),
            Verdict::Out { witness, .. } => format!("witness: {}", witness.provenance),
            Verdict::Unknown { samples_passed } => {
                format!("{samples_passed} samples passed the SSP check")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Base seed for sampling and the randomized constructions.
    pub seed: u64,
    /// Number of random samples in the last stage.
    pub trials: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            seed: 0,
            trials: DEFAULT_TRIALS,
        }
    }
}

pub fn classify(g: &Graph) -> Verdict {
    classify_with(g, &ClassifyOptions::default())
}

pub fn classify_with(g: &Graph, opts: &ClassifyOptions) -> Verdict {
    Stage::ALL
        .iter()
        .find_map(|&s| run_stage(g, s, opts))
        .unwrap_or(Verdict::Unknown {
            samples_passed: opts.trials,
        })
}

/// Runs one stage in isolation; `None` when it is inconclusive.
pub fn run_stage(g: &Graph, stage: Stage, opts: &ClassifyOptions) -> Option<Verdict> {
    let out = |witness: Witness| Verdict::Out {
        witness,
        reason: stage,
    };
    let forced = |certificate: ForcingCertificate| {
        certificate.proves_membership().then(|| Verdict::In {
            proof: MembershipProof::Forcing { certificate },
            stage,
        })
    };
    match stage {
        Stage::Complete => g.is_complete().then_some(Verdict::In {
            proof: MembershipProof::Complete,
            stage,
        }),
        Stage::Tree => classify_tree(g).ok(),
        Stage::Regular => regular_witness(g).map(out),
        Stage::Unicyclic => unicyclic_partition(g).and_then(|r| barbell_out(g, &r, stage)),
        Stage::CutVertex => {
            if !g.is_connected() {
                return barbell_out(g, &[], stage);
            }
            (0..g.order()).find_map(|v| barbell_out(g, &[v], stage))
        }
        Stage::ComplementPath => {
            let order = complement_path_order(g)?;
            let n = order.len();
            if n % 3 == 0 {
                if n < 6 {
                    return None;
                }
                let w = complement_path_witness(n / 3, opts.seed).ok()?;
                Some(out(w.relabel(&order).expect("relabelled witness verifies")))
            } else {
                forced(close(g))
            }
        }
        Stage::KnownTable => known_table(g, opts),
        Stage::Structure => {
            let detected = is_lollipop(g) || is_path_with_chord(g) || is_complete_minus_triangle(g);
            if detected {
                forced(close(g))
            } else {
                None
            }
        }
        Stage::Join => join_split(g, opts),
        Stage::Barbell => {
            if g.order() > BARBELL_CAP {
                return None;
            }
            let p = barbell_search(g).ok()??;
            Some(out(barbell_witness(g, &p).expect("barbell partitions yield witnesses")))
        }
        Stage::Forcing => forced(close(g)),
        Stage::Sampling => sample_refute(g, opts.trials, opts.seed).map(out),
    }
}

fn barbell_out(g: &Graph, r: &[usize], stage: Stage) -> Option<Verdict> {
    let p = barbell_with_r(g, r)?;
    Some(Verdict::Out {
        witness: barbell_witness(g, &p).expect("barbell partitions yield witnesses"),
        reason: stage,
    })
}

/// Breadth-first search from `sources`; returns parent pointers (sources
/// point to themselves) and distances.
fn bfs(g: &Graph, sources: &[usize]) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    let n = g.order();
    let mut parent = vec![None; n];
    let mut dist = vec![None; n];
    let mut queue = VecDeque::new();
    for &s in sources {
        parent[s] = Some(s);
        dist[s] = Some(0);
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        for v in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(dist[u].expect("queued vertices have distances") + 1);
                parent[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    (parent, dist)
}

/// Walks parent pointers from `v` back to a source.
fn trace_back(parent: &[Option<usize>], mut v: usize) -> Vec<usize> {
    let mut path = vec![v];
    while let Some(p) = parent[v].filter(|&p| p != v) {
        path.push(p);
        v = p;
    }
    path
}

/// A tree is in `G^SSP` exactly when it has no vertex of degree four or
/// more and at most one vertex of degree three. Otherwise a barbell witness
/// is built on a high-degree vertex or on the path joining the two closest
/// degree-three vertices.
pub fn classify_tree(t: &Graph) -> Result<Verdict, GraphError> {
    if !t.is_tree() {
        return Err(GraphError::NotATree);
    }
    if tree_theorem_holds(t) {
        return Ok(Verdict::In {
            proof: MembershipProof::TreeTheorem { forcing: None },
            stage: Stage::Tree,
        });
    }
    let degrees = t.degrees();
    let r = match degrees.iter().position(|&d| d >= 4) {
        Some(v) => vec![v],
        None => {
            let threes: Vec<usize> = (0..t.order()).filter(|&v| degrees[v] == 3).collect();
            let mut best: Option<Vec<usize>> = None;
            for &u in &threes {
                let (parent, dist) = bfs(t, &[u]);
                for &w in threes.iter().filter(|&&w| w > u) {
                    let d = dist[w].expect("trees are connected");
                    if best.as_ref().is_none_or(|b| d + 1 < b.len()) {
                        best = Some(trace_back(&parent, w));
                    }
                }
            }
            best.expect("two degree-three vertices exist")
        }
    };
    let p = barbell_with_r(t, &r)
        .or_else(|| barbell_search(t).ok().flatten())
        .expect("trees outside the theorem have barbell partitions");
    Ok(Verdict::Out {
        witness: barbell_witness(t, &p).expect("barbell partitions yield witnesses"),
        reason: Stage::Tree,
    })
}

/// `R` for a unicyclic graph with a vertex of degree at least four or a
/// degree-three vertex off the cycle: the high-degree vertex, or the path
/// from the off-cycle degree-three vertex nearest the cycle down to it.
fn unicyclic_partition(g: &Graph) -> Option<Vec<usize>> {
    if !g.is_unicyclic() {
        return None;
    }
    let degrees = g.degrees();
    if let Some(v) = degrees.iter().position(|&d| d >= 4) {
        return Some(vec![v]);
    }
    let cycle = g.unique_cycle().ok()?;
    let on_cycle = VertexSet::from_iter(cycle.iter().copied());
    let (parent, dist) = bfs(g, &cycle);
    let w = (0..g.order())
        .filter(|&v| degrees[v] == 3 && !on_cycle.contains(v))
        .min_by_key(|&v| dist[v])?;
    Some(trace_back(&parent, w))
}

/// Vertex order along the complement when the complement is a path,
/// starting from its smaller endpoint.
fn complement_path_order(g: &Graph) -> Option<Vec<usize>> {
    let h = g.complement();
    let n = h.order();
    if n < 2 || !h.is_tree() || h.max_degree() > 2 {
        return None;
    }
    let start = (0..n).find(|&v| h.degree(v) == 1)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(next) = h.neighbors(cur).iter().find(|&v| v != prev) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    Some(order)
}

fn known_table(g: &Graph, opts: &ClassifyOptions) -> Option<Verdict> {
    let n = g.order();
    if n <= ISO_MAX_ORDER {
        for entry in KnownGraph::ALL {
            let h = entry.graph();
            if h.order() != n {
                continue;
            }
            let Some(map) = find_isomorphism(&h, g).expect("orders are within the cap") else {
                continue;
            };
            return Some(match entry.witness() {
                None => Verdict::In {
                    proof: MembershipProof::KnownTable { entry, map },
                    stage: Stage::KnownTable,
                },
                Some(w) => Verdict::Out {
                    witness: w.relabel(&map).expect("relabelled witness verifies"),
                    reason: Stage::KnownTable,
                },
            });
        }
    }
    let out = |w: Witness, perm: &[usize]| Verdict::Out {
        witness: w.relabel(perm).expect("relabelled witness verifies"),
        reason: Stage::KnownTable,
    };
    let h = g.complement();
    let touched: Vec<usize> = (0..n).filter(|&v| h.degree(v) > 0).collect();
    // K_n - C_4: the complement is a 4-cycle plus isolated vertices.
    if touched.len() == 4 && h.edge_count() == 4 && touched.iter().all(|&v| h.degree(v) == 2) {
        let c0 = touched[0];
        let c1 = h.neighbors(c0).first()?;
        let c2 = h.neighbors(c1).difference(VertexSet::singleton(c0)).first()?;
        let c3 = h.neighbors(c0).difference(VertexSet::singleton(c1)).first()?;
        if h.has_edge(c2, c3) {
            let mut perm = vec![c0, c1, c2, c3];
            perm.extend((0..n).filter(|v| !touched.contains(v)));
            return Some(out(kn_minus_c4_witness(n).ok()?, &perm));
        }
    }
    // Cocktail party: the complement is a perfect matching.
    if n >= 4 && touched.len() == n && h.max_degree() == 1 {
        let perm: Vec<usize> = h.edges().flat_map(|p| [p.lo(), p.hi()]).collect();
        let w = (opts.seed..opts.seed.saturating_add(RETRY_BUDGET))
            .find_map(|s| cocktail_witness(n / 2, s).ok())?;
        return Some(out(w, &perm));
    }
    None
}

/// A clique with a pendant path hanging from one clique vertex.
fn is_lollipop(g: &Graph) -> bool {
    if !g.is_connected() {
        return false;
    }
    (0..g.order()).filter(|&v| g.degree(v) == 1).any(|leaf| {
        let mut tail = vec![leaf];
        let mut prev = usize::MAX;
        let mut cur = leaf;
        let attach = loop {
            let Some(next) = g.neighbors(cur).iter().find(|&v| v != prev) else {
                return false;
            };
            if g.degree(next) != 2 {
                break next;
            }
            tail.push(next);
            prev = cur;
            cur = next;
        };
        let clique: Vec<usize> = (0..g.order()).filter(|v| !tail.contains(v)).collect();
        let k = clique.len();
        k >= 2
            && clique.contains(&attach)
            && g.induced(&clique).is_ok_and(|c| c.is_complete())
            && g.edge_count() == k * (k - 1) / 2 + tail.len()
    })
}

/// A degree-two vertex `v` with adjacent neighbours such that `G - v` is a
/// path on which those neighbours are consecutive.
fn is_path_with_chord(g: &Graph) -> bool {
    let n = g.order();
    (0..n).filter(|&v| g.degree(v) == 2).any(|v| {
        let nb = g.neighbors(v).to_vec();
        if !g.has_edge(nb[0], nb[1]) {
            return false;
        }
        let rest: Vec<usize> = (0..n).filter(|&u| u != v).collect();
        g.induced(&rest)
            .is_ok_and(|h| h.is_tree() && h.max_degree() <= 2)
    })
}

/// The complement is a triangle plus isolated vertices, `n >= 4`.
fn is_complete_minus_triangle(g: &Graph) -> bool {
    let h = g.complement();
    let touched: Vec<usize> = (0..g.order()).filter(|&v| h.degree(v) > 0).collect();
    g.order() >= 4 && touched.len() == 3 && h.edge_count() == 3
}

/// `G = G_1 ∨ H` along the components of the complement: `G_1` must be a
/// member and `H` a member or have a complement made of trees and odd
/// unicyclic graphs.
fn join_split(g: &Graph, opts: &ClassifyOptions) -> Option<Verdict> {
    let comps = g.complement().components();
    if comps.len() < 2 {
        return None;
    }
    let all = g.vertices();
    for comp in &comps {
        let c = VertexSet::from_iter(comp.iter().copied());
        let rest = all.difference(c).to_vec();
        for (left, right) in [(comp.clone(), rest.clone()), (rest, comp.clone())] {
            let gr = g.induced(&right).expect("valid vertices");
            let gl = g.induced(&left).expect("valid vertices");
            let right_proof = if is_tree_or_odd_unicyclic_forest(&gr.complement()) {
                None
            } else {
                match classify_with(&gr, opts) {
                    Verdict::In { proof, .. } => Some(Box::new(proof)),
                    _ => continue,
                }
            };
            if let Verdict::In { proof, .. } = classify_with(&gl, opts) {
                return Some(Verdict::In {
                    proof: MembershipProof::Join {
                        left,
                        right,
                        left_proof: Box::new(proof),
                        right_proof,
                    },
                    stage: Stage::Join,
                });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{
        complete, complete_bipartite, complete_minus_triangle, cycle, join, lollipop, path,
        path_with_chord, spider,
    };

    fn complement_of_path(n: usize) -> Result<Graph, GraphError> {
        Ok(path(n)?.complement())
    }

    fn assert_valid(g: &Graph, v: &Verdict) {
        v.check(g).unwrap_or_else(|e| panic!("{g:?}: {e}"));
    }

    #[test]
    fn trees() {
        for g in [path(9).unwrap(), spider(2, 3, 4).unwrap()] {
            let v = classify_tree(&g).unwrap();
            assert!(v.is_in());
            assert_valid(&g, &v);
            let MembershipProof::TreeTheorem { forcing: Some(cert) } =
                MembershipProof::TreeTheorem { forcing: None }.with_forcing(&g)
            else {
                panic!("closure did not reach K_n");
            };
            assert!(cert.proves_membership());
        }
        let star = complete_bipartite(1, 4).unwrap();
        let v = classify_tree(&star).unwrap();
        assert!(v.is_out());
        assert_valid(&star, &v);
        // Two degree-three vertices joined by a path of length three.
        let t = Graph::from_edges(8, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (5, 6), (5, 7)]).unwrap();
        let v = classify_tree(&t).unwrap();
        assert!(v.is_out());
        assert_valid(&t, &v);
        assert_eq!(classify_tree(&cycle(4).unwrap()), Err(GraphError::NotATree));
    }

    #[test]
    fn complements_of_paths() {
        for n in 4..=9 {
            let g = complement_of_path(n).unwrap();
            let v = classify(&g);
            assert_valid(&g, &v);
            assert_eq!(v.is_out(), n % 3 == 0, "n = {n}: {v:?}");
            assert!(v.is_in() || v.is_out());
        }
        let v = classify(&complement_of_path(6).unwrap());
        assert_eq!(v.stage(), Some(Stage::ComplementPath));
    }

    #[test]
    fn relabelled_complement_path() {
        let g = complement_of_path(6).unwrap().relabel(&[3, 0, 5, 1, 4, 2]).unwrap();
        let v = classify(&g);
        assert!(v.is_out());
        assert_valid(&g, &v);
    }

    #[test]
    fn known_table_entries() {
        for entry in KnownGraph::ALL {
            let g = entry.graph().relabel(&(0..entry.graph().order()).rev().collect::<Vec<_>>()).unwrap();
            let v = classify(&g);
            assert_valid(&g, &v);
            assert_eq!(v.is_in(), entry.is_member(), "{entry:?}");
            assert_eq!(v.stage(), Some(Stage::KnownTable), "{entry:?}");
        }
    }

    #[test]
    fn dense_families() {
        for n in 5..=8 {
            let g = crate::families::complete_minus_c4(n).unwrap();
            let v = classify(&g);
            assert!(v.is_out());
            assert_valid(&g, &v);
            let g = complete_minus_triangle(n).unwrap();
            let v = classify(&g);
            assert!(v.is_in());
            assert_valid(&g, &v);
        }
    }

    #[test]
    fn structures() {
        let l = lollipop(4, 3).unwrap().relabel(&[6, 5, 4, 3, 2, 1, 0]).unwrap();
        assert!(is_lollipop(&l));
        assert!(!is_lollipop(&cycle(5).unwrap()));
        assert!(is_path_with_chord(&path_with_chord(7, 3).unwrap()));
        assert!(!is_path_with_chord(&cycle(5).unwrap()));
        let g = path_with_chord(8, 2).unwrap();
        let v = classify(&g);
        assert!(v.is_in());
        assert_valid(&g, &v);
    }

    #[test]
    fn join_with_forest_complement() {
        // K_2 joined with C_5: the complement of C_5 is C_5, an odd cycle.
        let g = join(&complete(2).unwrap(), &cycle(5).unwrap()).unwrap();
        let v = run_stage(&g, Stage::Join, &ClassifyOptions::default()).unwrap();
        assert!(matches!(v, Verdict::In { proof: MembershipProof::Join { .. }, .. }));
        assert_valid(&g, &v);
    }

    #[test]
    fn tampered_join_is_rejected() {
        let g = join(&complete(2).unwrap(), &cycle(5).unwrap()).unwrap();
        let Some(Verdict::In { proof, .. }) = run_stage(&g, Stage::Join, &ClassifyOptions::default()) else {
            panic!("join stage failed");
        };
        let mut h = g.clone();
        h.remove_pair(crate::graph::Pair::new(0, 2));
        assert!(proof.check(&h).is_err());
    }

    #[test]
    fn disconnected_and_regular() {
        let g = Graph::empty(3).unwrap();
        let v = classify(&g);
        assert!(v.is_out());
        assert_valid(&g, &v);
        let c = cycle(7).unwrap();
        assert_eq!(classify(&c).stage(), Some(Stage::Regular));
    }

    #[test]
    fn deterministic() {
        let g = complement_of_path(9).unwrap();
        let opts = ClassifyOptions { seed: 11, trials: 10 };
        assert_eq!(classify_with(&g, &opts), classify_with(&g, &opts));
    }
}
