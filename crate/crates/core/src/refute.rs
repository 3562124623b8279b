//! Witness pairs `(A, X)` proving that a graph is not in `G^SSP`.
//!
//! Every constructor verifies its output exactly before returning it.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GraphError, RefuteError};
use crate::graph::{BarbellPartition, Graph, VertexSet};
use crate::linalg::{in_s, rat, ratio, sample_in_s, Rat, RatMatrix, DEFAULT_SAMPLE_BOUND};
use crate::strong::{property_witness, PropertyKind};

/// Largest order accepted by [`barbell_search`].
pub const BARBELL_CAP: usize = 14;

/// Seeds tried by the randomized constructions before giving up.
pub const RETRY_BUDGET: u64 = 32;

/// Deserialization does not verify; call [`Witness::check`] on parsed input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub graph: Graph,
    pub a: RatMatrix,
    pub x: RatMatrix,
    pub provenance: String,
}

impl Witness {
    /// Builds a witness, rejecting it unless every condition holds.
    pub fn new(
        graph: Graph,
        a: RatMatrix,
        x: RatMatrix,
        provenance: impl Into<String>,
    ) -> Result<Self, RefuteError> {
        let w = Witness {
            graph,
            a,
            x,
            provenance: provenance.into(),
        };
        w.check()?;
        Ok(w)
    }

    pub fn check(&self) -> Result<(), RefuteError> {
        let fail = |why: &str| Err(RefuteError::InvalidWitness(why.to_string()));
        let n = self.graph.order();
        if self.a.shape() != (n, n) || self.x.shape() != (n, n) {
            return fail("matrix sides differ from the graph order");
        }
        if !in_s(&self.a, &self.graph)? {
            return fail("A is not in S(G)");
        }
        if !self.x.is_symmetric() {
            return fail("X is not symmetric");
        }
        if self.x.is_zero() {
            return fail("X is zero");
        }
        if !self.a.hadamard(&self.x)?.is_zero() {
            return fail("A ∘ X is nonzero");
        }
        if (0..n).any(|i| !self.x[(i, i)].is_zero()) {
            return fail("X has a nonzero diagonal entry");
        }
        if !self.a.commutator(&self.x)?.is_zero() {
            return fail("[A, X] is nonzero");
        }
        Ok(())
    }

    /// Moves vertex `v` to `perm[v]` in the graph and both matrices.
    pub fn relabel(&self, perm: &[usize]) -> Result<Witness, RefuteError> {
        Witness::new(
            self.graph.relabel(perm)?,
            self.a.permute_symmetric(perm),
            self.x.permute_symmetric(perm),
            self.provenance.clone(),
        )
    }

    /// True when additionally `AX = 0`, so `A` also lacks the SAP.
    pub fn refutes_sap(&self) -> bool {
        self.a.try_mul(&self.x).is_ok_and(|m| m.is_zero())
    }
}

pub fn verify_witness(w: &Witness) -> bool {
    w.check().is_ok()
}

/// `A = adj(G)`, `X = J - A - I` for a regular graph other than `K_n`.
pub fn regular_witness(g: &Graph) -> Option<Witness> {
    if !g.is_regular() || g.is_complete() {
        return None;
    }
    let n = g.order();
    let a = RatMatrix::adjacency(g);
    let x = &(&RatMatrix::ones(n, n) - &a) - &RatMatrix::identity(n);
    Some(Witness::new(g.clone(), a, x, "regular").expect("regular construction verifies"))
}

/// Colours components of `G - R` into `W1`/`W2` by backtracking.
struct BarbellColoring<'a> {
    g: &'a Graph,
    r: Vec<usize>,
    comps: Vec<VertexSet>,
    // Per R vertex: neighbours in W1, in W2, and in still uncoloured components.
    counts: Vec<[usize; 3]>,
    side: Vec<bool>,
}

impl BarbellColoring<'_> {
    fn hits(&self, ri: usize, comp: VertexSet) -> usize {
        self.g.neighbors(self.r[ri]).intersection(comp).len()
    }

    fn search(&mut self, idx: usize, used: [bool; 2]) -> bool {
        if idx == self.comps.len() {
            return used[0] && used[1] && self.counts.iter().all(|c| c[0] != 1 && c[1] != 1);
        }
        // Fixing the first component in W1 removes the mirror symmetry.
        let sides: &[bool] = if idx == 0 { &[false] } else { &[false, true] };
        for &s in sides {
            let comp = self.comps[idx];
            let k = s as usize;
            let mut ok = true;
            for ri in 0..self.r.len() {
                let h = self.hits(ri, comp);
                self.counts[ri][k] += h;
                self.counts[ri][2] -= h;
                let c = self.counts[ri];
                if c[2] == 0 && (c[0] == 1 || c[1] == 1) {
                    ok = false;
                }
            }
            let mut used2 = used;
            used2[k] = true;
            if ok {
                self.side.push(s);
                if self.search(idx + 1, used2) {
                    return true;
                }
                self.side.pop();
            }
            for ri in 0..self.r.len() {
                let h = self.hits(ri, comp);
                self.counts[ri][k] -= h;
                self.counts[ri][2] += h;
            }
        }
        false
    }
}

fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            if rec(n, k, v + 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(n, k, 0, &mut Vec::with_capacity(k), &mut f)
}

/// Completes `R` to a barbell partition by splitting the components of
/// `G - R` between `W1` and `W2`, if any split works.
pub fn barbell_with_r(g: &Graph, r: &[usize]) -> Option<BarbellPartition> {
    let rset = VertexSet::from_iter(r.iter().copied());
    let rest = g.vertices().difference(rset);
    // A vertex of R with a single neighbour outside R can never work.
    if r.iter().any(|&v| g.neighbors(v).intersection(rest).len() == 1) {
        return None;
    }
    let comps = g.components_within(rest);
    if comps.len() < 2 {
        return None;
    }
    let counts = r
        .iter()
        .map(|&v| [0, 0, g.neighbors(v).intersection(rest).len()])
        .collect();
    let mut col = BarbellColoring {
        g,
        r: r.to_vec(),
        comps,
        counts,
        side: Vec::new(),
    };
    if !col.search(0, [false, false]) {
        return None;
    }
    let (mut w1, mut w2) = (Vec::new(), Vec::new());
    for (comp, &s) in col.comps.iter().zip(&col.side) {
        if s { &mut w2 } else { &mut w1 }.extend(comp.iter());
    }
    w1.sort_unstable();
    w2.sort_unstable();
    let mut r = r.to_vec();
    r.sort_unstable();
    Some(BarbellPartition { r, w1, w2 })
}

/// First barbell partition with `R` of least size, `R` in lexicographic order.
pub fn barbell_search(g: &Graph) -> Result<Option<BarbellPartition>, GraphError> {
    let n = g.order();
    if n > BARBELL_CAP {
        return Err(GraphError::Unsupported { n, cap: BARBELL_CAP });
    }
    let mut found = None;
    for size in 0..n.saturating_sub(1) {
        let done = combinations(n, size, |r| {
            found = barbell_with_r(g, r);
            found.is_some()
        });
        if done {
            break;
        }
    }
    Ok(found)
}

/// Block witness on a barbell partition: adjacency on `R`, Laplacians on
/// `W1`, `W2`, zero-column-sum couplings, and `X = J` between `W1` and `W2`.
pub fn barbell_witness(g: &Graph, p: &BarbellPartition) -> Result<Witness, RefuteError> {
    p.validate(g)?;
    let n = g.order();
    let mut m = RatMatrix::zeros(n, n);
    let r = VertexSet::from_iter(p.r.iter().copied());
    for e in g.edges() {
        let (u, v) = (e.lo(), e.hi());
        if r.contains(u) && r.contains(v) {
            m[(u, v)] = Rat::one();
            m[(v, u)] = Rat::one();
        }
    }
    for part in [&p.w1, &p.w2] {
        let w = VertexSet::from_iter(part.iter().copied());
        for &u in part.iter() {
            let nb = g.neighbors(u).intersection(w);
            m[(u, u)] = rat(nb.len() as i64);
            for v in nb {
                m[(u, v)] = rat(-1);
            }
        }
        for &v in &p.r {
            let nb = g.neighbors(v).intersection(w).to_vec();
            let k = nb.len();
            for (t, &u) in nb.iter().enumerate() {
                let val = if t + 1 == k { rat(1 - k as i64) } else { Rat::one() };
                m[(u, v)] = val.clone();
                m[(v, u)] = val;
            }
        }
    }
    let mut x = RatMatrix::zeros(n, n);
    for &u in &p.w1 {
        for &v in &p.w2 {
            x[(u, v)] = Rat::one();
            x[(v, u)] = Rat::one();
        }
    }
    let w = Witness::new(g.clone(), m, x, "barbell")?;
    if !w.refutes_sap() {
        return Err(RefuteError::InvalidWitness("M X is nonzero".into()));
    }
    Ok(w)
}

/// `Â = Σ S_j ⊗ A^j`, `X̂ = T ⊗ X`, on the support graph of `Â`.
pub fn kron_lift(s_list: &[RatMatrix], t: &RatMatrix, base: &Witness) -> Result<Witness, RefuteError> {
    base.check()?;
    let hyp = |why: String| Err(RefuteError::Hypothesis(why));
    let m = t.rows();
    if !t.is_square() || !t.is_symmetric() {
        return hyp("T must be square and symmetric".into());
    }
    if s_list.iter().all(RatMatrix::is_zero) {
        return Err(RefuteError::DegenerateLift);
    }
    let n = base.graph.order();
    let mut a_hat = RatMatrix::zeros(m * n, m * n);
    let mut power = RatMatrix::identity(n);
    for (j, s) in s_list.iter().enumerate() {
        if s.shape() != (m, m) || !s.is_symmetric() {
            return hyp(format!("S_{j} must be symmetric with the side of T"));
        }
        if !s.commutator(t)?.is_zero() {
            return hyp(format!("S_{j} does not commute with T"));
        }
        if j >= 2 && !s.hadamard(t)?.is_zero() {
            return hyp(format!("S_{j} ∘ T is nonzero"));
        }
        if j > 0 {
            power = power.try_mul(&base.a)?;
        }
        if !s.is_zero() {
            a_hat = a_hat.try_add(&s.kron(&power))?;
        }
    }
    let x_hat = t.kron(&base.x);
    if x_hat.is_zero() {
        return hyp("T ⊗ X is zero".into());
    }
    let graph = a_hat.support_graph()?;
    Witness::new(graph, a_hat, x_hat, format!("kron-lift({})", base.provenance))
}

/// Lift with `T = I_m`, `S_1 = adj(H)`; the graph is the support of
/// `adj(H) ⊗ A`, which contains `H × G` and equals it when `diag(A) = 0`.
pub fn tensor_lift(base: &Witness, h: &Graph) -> Result<Witness, RefuteError> {
    let m = h.order();
    let w = kron_lift(
        &[RatMatrix::zeros(m, m), RatMatrix::adjacency(h)],
        &RatMatrix::identity(m),
        base,
    )?;
    Ok(Witness {
        provenance: format!("tensor-lift({})", base.provenance),
        ..w
    })
}

/// Lift onto `G ⊙ K_k^c` with `T = I_{k+1}`, `S_0` the star at block 0 and
/// `S_1 = E_00`; vertex labels follow [`crate::families::corona_empty`].
pub fn corona_lift(base: &Witness, k: usize) -> Result<Witness, RefuteError> {
    let m = k + 1;
    let mut s0 = RatMatrix::zeros(m, m);
    for j in 1..m {
        s0[(0, j)] = Rat::one();
        s0[(j, 0)] = Rat::one();
    }
    let w = kron_lift(&[s0, RatMatrix::unit(m, 0, 0)], &RatMatrix::identity(m), base)?;
    Ok(Witness {
        provenance: format!("corona-lift({})", base.provenance),
        ..w
    })
}

/// `(sin θ, cos θ)` from primitive Pythagorean triples; neighbours in the
/// list have sines of different magnitude.
const ANGLES: [(i64, i64, i64); 16] = [
    (3, 4, 5),
    (5, 12, 13),
    (8, 15, 17),
    (7, 24, 25),
    (20, 21, 29),
    (12, 35, 37),
    (9, 40, 41),
    (28, 45, 53),
    (11, 60, 61),
    (33, 56, 65),
    (16, 63, 65),
    (48, 55, 73),
    (13, 84, 85),
    (36, 77, 85),
    (39, 80, 89),
    (65, 72, 97),
];

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> Rat {
    let v = rng.gen_range(1..=bound);
    rat(if rng.gen_bool(0.5) { v } else { -v })
}

fn complement_path_attempt(m: usize, seed: u64) -> Result<Witness, RefuteError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sc: Vec<(Rat, Rat)> = (0..m)
        .map(|k| {
            let (s, c, h) = ANGLES[k % ANGLES.len()];
            (ratio(s, h), ratio(c, h))
        })
        .collect();
    let mut ca = RatMatrix::zeros(m, m);
    let mut cb = RatMatrix::zeros(m, m);
    let mut cc = RatMatrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            for coef in [&mut ca, &mut cb, &mut cc] {
                let v = nonzero(&mut rng, DEFAULT_SAMPLE_BOUND);
                coef[(i, j)] = v.clone();
                coef[(j, i)] = v;
            }
        }
        // Kills entries (1,2) and (2,3) of each diagonal block.
        cc[(i, i)] = cb[(i, i)].clone();
    }
    // Entry (3,1) of block (k, k+1):
    // -s_k c_{k+1} a + (1/2) c_k s_{k+1} (b + c) = 0.
    for k in 0..m.saturating_sub(1) {
        let (sk, ck) = &sc[k];
        let (sk1, ck1) = &sc[k + 1];
        let v = ck * sk1 * (&cb[(k, k + 1)] + &cc[(k, k + 1)]) / (rat(2) * sk * ck1);
        ca[(k, k + 1)] = v.clone();
        ca[(k + 1, k)] = v;
    }
    let vecs = |s: &Rat, c: &Rat| {
        let one = Rat::one();
        [
            [c.clone(), Rat::zero(), -s],
            [s.clone(), one.clone(), c.clone()],
            [s.clone(), -one, c.clone()],
        ]
    };
    let half = ratio(1, 2);
    let n = 3 * m;
    let mut big = RatMatrix::zeros(n, n);
    for i in 0..m {
        let [xi, yi, zi] = vecs(&sc[i].0, &sc[i].1);
        for j in 0..m {
            let [xj, yj, zj] = vecs(&sc[j].0, &sc[j].1);
            for r in 0..3 {
                for c in 0..3 {
                    big[(3 * i + r, 3 * j + c)] = &ca[(i, j)] * &xi[r] * &xj[c]
                        + &cb[(i, j)] * &half * &yi[r] * &yj[c]
                        + &cc[(i, j)] * &half * &zi[r] * &zj[c];
                }
            }
        }
    }
    let mut x = RatMatrix::zeros(n, n);
    for (k, (s, c)) in sc.iter().enumerate() {
        x[(3 * k, 3 * k + 1)] = s.clone();
        x[(3 * k + 1, 3 * k)] = s.clone();
        x[(3 * k + 1, 3 * k + 2)] = c.clone();
        x[(3 * k + 2, 3 * k + 1)] = c.clone();
    }
    let graph = crate::families::path(n)?.complement();
    Witness::new(graph, big, x, "complement-path")
}

/// Witness on `P_{3m}^c` (path `0 - 1 - ... - (3m-1)` complemented),
/// retrying seeds `seed, seed+1, ...` until the pattern is exact.
pub fn complement_path_witness(m: usize, seed: u64) -> Result<Witness, RefuteError> {
    if m < 2 {
        return Err(RefuteError::Hypothesis(format!("complement path needs m >= 2, got {m}")));
    }
    let mut tried = Vec::new();
    for s in seed..seed.saturating_add(RETRY_BUDGET) {
        tried.push(s);
        match complement_path_attempt(m, s) {
            Ok(w) => return Ok(w),
            Err(RefuteError::InvalidWitness(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(RefuteError::RetriesExhausted { seeds: tried })
}

/// Witness on `K_n - C_4` with the 4-cycle `0-1-2-3-0` removed.
pub fn kn_minus_c4_witness(n: usize) -> Result<Witness, RefuteError> {
    let g = crate::families::complete_minus_c4(n)?;
    let a = RatMatrix::from_i64_rows(&[[1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1]]);
    let x = RatMatrix::from_i64_rows(&[[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0]]);
    let k = n - 4;
    let f = RatMatrix::from_fn(4, k, |i, _| if i < 2 { rat(1) } else { rat(-1) });
    let m = RatMatrix::from_blocks(&[vec![a, f.clone()], vec![f.transpose(), RatMatrix::ones(k, k)]])?;
    let y = RatMatrix::direct_sum(&[x, RatMatrix::zeros(k, k)]);
    Witness::new(g, m, y, "kn-minus-c4")
}

/// The unicyclic graph `G_98`: 4-cycle `0-1-2-3-0` with pendants `4` at `2`
/// and `5` at `3`, with its published matrices.
pub fn g98_witness() -> Witness {
    let g = Graph::from_edges(6, [(0, 1), (0, 3), (1, 2), (2, 3), (2, 4), (3, 5)]).expect("G_98");
    let a = RatMatrix::from_i64_rows(&[
        [0, 2, 0, 1, 0, 0],
        [2, 0, 1, 0, 0, 0],
        [0, 1, 0, 1, 1, 0],
        [1, 0, 1, 0, 0, 1],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
    ]);
    let x = RatMatrix::from_i64_rows(&[
        [0, 0, 1, 0, 0, 1],
        [0, 0, 0, 1, 1, 0],
        [1, 0, 0, 0, 0, -1],
        [0, 1, 0, 0, -1, 0],
        [0, 1, 0, -1, 0, 0],
        [1, 0, -1, 0, 0, 0],
    ]);
    Witness::new(g, a, x, "g98").expect("G_98 matrices verify")
}

/// The unicyclic graph `G_99`: 4-cycle `0-1-2-3-0` with pendants `4` at `1`
/// and `5` at `3`, with its published matrices.
pub fn g99_witness() -> Witness {
    let g = Graph::from_edges(6, [(0, 1), (0, 3), (1, 2), (1, 4), (2, 3), (3, 5)]).expect("G_99");
    let a = RatMatrix::from_i64_rows(&[
        [0, 1, 0, 1, 0, 0],
        [1, 0, 1, 0, 1, 0],
        [0, 1, 0, -1, 0, 0],
        [1, 0, -1, 0, 0, 1],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
    ]);
    let x = RatMatrix::from_i64_rows(&[
        [0, 0, 0, 0, 1, 1],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, -1, 1],
        [0, 1, 0, 0, 0, 0],
        [1, 0, -1, 0, 0, -1],
        [1, 0, 1, 0, -1, 0],
    ]);
    Witness::new(g, a, x, "g99").expect("G_99 matrices verify")
}

/// Witness on the cocktail-party graph `K_{2n}` minus the matching
/// `{2i, 2i+1}`, with seeded nonzero block coefficients.
pub fn cocktail_witness(n: usize, seed: u64) -> Result<Witness, RefuteError> {
    let g = crate::families::cocktail_party(n)?;
    if n < 2 {
        return Err(RefuteError::Hypothesis("cocktail witness needs n >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = RatMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        let d = nonzero(&mut rng, DEFAULT_SAMPLE_BOUND);
        a[(2 * i, 2 * i)] = d.clone();
        a[(2 * i + 1, 2 * i + 1)] = d;
        for j in i + 1..n {
            let p = nonzero(&mut rng, DEFAULT_SAMPLE_BOUND);
            let q = nonzero(&mut rng, DEFAULT_SAMPLE_BOUND);
            for (r, c, v) in [(0, 0, &p), (1, 1, &p), (0, 1, &q), (1, 0, &q)] {
                a[(2 * i + r, 2 * j + c)] = v.clone();
                a[(2 * j + c, 2 * i + r)] = v.clone();
            }
        }
    }
    let y = nonzero(&mut rng, DEFAULT_SAMPLE_BOUND);
    let mut x = RatMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        x[(2 * i, 2 * i + 1)] = y.clone();
        x[(2 * i + 1, 2 * i)] = y.clone();
    }
    Witness::new(g, a, x, "cocktail-party")
}

/// Random search: seeds `seed..seed + trials`, first sample lacking the SSP.
pub fn sample_refute(g: &Graph, trials: u64, seed: u64) -> Option<Witness> {
    (0..trials).find_map(|t| {
        let a = sample_in_s(g, seed.wrapping_add(t), DEFAULT_SAMPLE_BOUND);
        let x = property_witness(&a, PropertyKind::Ssp).expect("samples are symmetric")?;
        Some(Witness::new(g.clone(), a, x, "sampled").expect("kernel witness verifies"))
    })
}
