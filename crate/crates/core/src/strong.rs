//! Per-matrix decision procedures for the SSP, SMP and SAP.
//!
//! For symmetric `A` with support graph `G`, the unknowns are the entries
//! `x_pq` of a symmetric `X` with zero diagonal supported on the non-edges of
//! `G` (so `A ∘ X = I ∘ X = 0` holds by construction). Columns are the
//! non-edges in lexicographic order. A property holds iff the constraint
//! matrix has full column rank.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::LinalgError;
use crate::graph::{Graph, Pair};
use crate::linalg::{in_s, nullspace_basis, q_of, rank_exact, rat, Rat, RatMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PropertyKind {
    Ssp,
    Smp,
    Sap,
}

impl PropertyKind {
    pub const ALL: [PropertyKind; 3] = [PropertyKind::Ssp, PropertyKind::Smp, PropertyKind::Sap];
}

impl fmt::Display for PropertyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PropertyKind::Ssp => "ssp",
            PropertyKind::Smp => "smp",
            PropertyKind::Sap => "sap",
        })
    }
}

impl FromStr for PropertyKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "ssp" => Ok(PropertyKind::Ssp),
            "smp" => Ok(PropertyKind::Smp),
            "sap" => Ok(PropertyKind::Sap),
            _ => Err(format!("unknown property {s:?}, expected ssp, smp or sap")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub matrix: RatMatrix,
    pub pairs: Vec<Pair>,
    pub column_index: BTreeMap<Pair, usize>,
}

impl ConstraintSystem {
    /// Symmetric `X` from a column vector of unknowns.
    pub fn assemble(&self, n: usize, v: &RatMatrix) -> RatMatrix {
        let mut x = RatMatrix::zeros(n, n);
        for (c, p) in self.pairs.iter().enumerate() {
            x[(p.lo(), p.hi())] = v[(c, 0)].clone();
            x[(p.hi(), p.lo())] = v[(c, 0)].clone();
        }
        x
    }
}

/// `(A E)_{ij}` for `E = E_pq + E_qp`.
fn ae(a: &RatMatrix, p: usize, q: usize, i: usize, j: usize) -> Rat {
    let mut v = Rat::zero();
    if j == q {
        v += &a[(i, p)];
    }
    if j == p {
        v += &a[(i, q)];
    }
    v
}

pub fn build_system(
    a: &RatMatrix,
    g: &Graph,
    kind: PropertyKind,
) -> Result<ConstraintSystem, LinalgError> {
    if !in_s(a, g)? {
        return Err(LinalgError::PatternMismatch);
    }
    let n = g.order();
    let pairs: Vec<Pair> = g.non_edges().collect();
    let column_index = pairs.iter().enumerate().map(|(c, &p)| (p, c)).collect();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    match kind {
        PropertyKind::Ssp | PropertyKind::Smp => {
            // [A, E] = AE - (AE)^T for symmetric A, E.
            for i in 0..n {
                for j in i + 1..n {
                    rows.push(
                        pairs
                            .iter()
                            .map(|p| ae(a, p.lo(), p.hi(), i, j) - ae(a, p.lo(), p.hi(), j, i))
                            .collect(),
                    );
                }
            }
            if kind == PropertyKind::Smp {
                let q = q_of(a)?;
                let mut power = a.clone();
                for _ in 2..=q {
                    power = power.try_mul(a)?;
                    rows.push(
                        pairs
                            .iter()
                            .map(|p| &power[(p.lo(), p.hi())] * rat(2))
                            .collect(),
                    );
                }
            }
        }
        PropertyKind::Sap => {
            for i in 0..n {
                for j in 0..n {
                    rows.push(pairs.iter().map(|p| ae(a, p.lo(), p.hi(), i, j)).collect());
                }
            }
        }
    }
    let cols = pairs.len();
    let matrix = RatMatrix::from_vec(rows.len(), cols, rows.into_iter().flatten().collect());
    Ok(ConstraintSystem {
        matrix,
        pairs,
        column_index,
    })
}

fn symmetric_support(a: &RatMatrix) -> Result<Graph, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            op: "has_property",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if !a.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    a.support_graph()
}

pub fn has_property(a: &RatMatrix, kind: PropertyKind) -> Result<bool, LinalgError> {
    let g = symmetric_support(a)?;
    let sys = build_system(a, &g, kind)?;
    Ok(rank_exact(&sys.matrix) == sys.matrix.cols())
}

/// Scales a nonzero rational matrix to a primitive integer matrix.
pub(crate) fn primitive(m: &RatMatrix) -> RatMatrix {
    let l = m
        .entries()
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let g = m
        .entries()
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x.numer()));
    if g.is_zero() {
        return m.clone();
    }
    m.scale(&Rat::new(l, BigInt::one())).scale(&Rat::new(BigInt::one(), g))
}

/// Checks every defining constraint of `kind` on a candidate `X`.
pub fn satisfies_constraints(
    a: &RatMatrix,
    x: &RatMatrix,
    kind: PropertyKind,
) -> Result<bool, LinalgError> {
    let n = a.rows();
    if !a.is_square() || x.shape() != a.shape() {
        return Err(LinalgError::ShapeMismatch {
            op: "satisfies_constraints",
            left: a.shape(),
            right: x.shape(),
        });
    }
    let base = !x.is_zero()
        && x.is_symmetric()
        && a.hadamard(x)?.is_zero()
        && RatMatrix::identity(n).hadamard(x)?.is_zero();
    if !base {
        return Ok(false);
    }
    Ok(match kind {
        PropertyKind::Ssp => a.commutator(x)?.is_zero(),
        PropertyKind::Smp => {
            if !a.commutator(x)?.is_zero() {
                return Ok(false);
            }
            let q = q_of(a)?;
            let mut power = a.clone();
            for _ in 2..=q {
                power = power.try_mul(a)?;
                if !power.try_mul(x)?.trace().is_zero() {
                    return Ok(false);
                }
            }
            true
        }
        PropertyKind::Sap => a.try_mul(x)?.is_zero(),
    })
}

/// A nonzero `X` violating `kind` for `A`, or `None` if `A` has the property.
/// The returned matrix is scaled to primitive integers and checked exactly.
pub fn property_witness(
    a: &RatMatrix,
    kind: PropertyKind,
) -> Result<Option<RatMatrix>, LinalgError> {
    let g = symmetric_support(a)?;
    let sys = build_system(a, &g, kind)?;
    let Some(v) = nullspace_basis(&sys.matrix).into_iter().next() else {
        return Ok(None);
    };
    let x = primitive(&sys.assemble(g.order(), &v));
    assert!(
        satisfies_constraints(a, &x, kind)?,
        "kernel vector failed {kind} verification"
    );
    Ok(Some(x))
}

/// Which sufficient condition certified the block matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockCondition {
    BHasSsp,
    ComplementForest,
    FullColumnRank,
}

/// Every component is a tree or a unicyclic graph whose cycle is odd.
pub fn is_tree_or_odd_unicyclic_forest(h: &Graph) -> bool {
    h.components().into_iter().all(|comp| {
        let c = h.induced(&comp).expect("component vertices are valid");
        c.is_tree() || (c.is_unicyclic() && c.unique_cycle().is_ok_and(|cy| cy.len() % 2 == 1))
    })
}

/// Sufficient conditions for `M = [[A, C], [C^T, B]]` to have the SSP
/// given that `A` does. Returns the first condition that applies.
pub fn block_ssp_sufficient(
    a: &RatMatrix,
    b: &RatMatrix,
    c: &RatMatrix,
) -> Result<Option<BlockCondition>, LinalgError> {
    let (n, m) = (a.rows(), b.rows());
    if !a.is_square() || !b.is_square() || c.shape() != (n, m) {
        return Err(LinalgError::ShapeMismatch {
            op: "block_ssp_sufficient",
            left: (n, m),
            right: c.shape(),
        });
    }
    if n == 0 {
        return Err(LinalgError::Precondition("A must be nonempty".into()));
    }
    if !b.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    for i in 0..n {
        for j in 0..m {
            if c[(i, j)].is_zero() {
                return Err(LinalgError::ZeroEntry(i, j));
            }
        }
    }
    if !has_property(a, PropertyKind::Ssp)? {
        return Err(LinalgError::Precondition("A must have the SSP".into()));
    }
    if has_property(b, PropertyKind::Ssp)? {
        return Ok(Some(BlockCondition::BHasSsp));
    }
    if is_tree_or_odd_unicyclic_forest(&b.support_graph()?.complement()) {
        return Ok(Some(BlockCondition::ComplementForest));
    }
    if m <= n && rank_exact(c) == m {
        return Ok(Some(BlockCondition::FullColumnRank));
    }
    Ok(None)
}

pub fn block_matrix(a: &RatMatrix, b: &RatMatrix, c: &RatMatrix) -> Result<RatMatrix, LinalgError> {
    RatMatrix::from_blocks(&[vec![a.clone(), c.clone()], vec![c.transpose(), b.clone()]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, path};
    use crate::linalg::{ratio, sample_in_s};
    use proptest::prelude::*;

    #[test]
    fn complete_graphs_have_empty_systems() {
        let k4 = complete(4).unwrap();
        let a = sample_in_s(&k4, 1, 10);
        for kind in PropertyKind::ALL {
            let sys = build_system(&a, &k4, kind).unwrap();
            assert_eq!(sys.matrix.cols(), 0);
            assert!(has_property(&a, kind).unwrap());
        }
        assert!(has_property(&RatMatrix::from_i64_rows(&[[0, 1, 2], [1, 5, 3], [2, 3, 0]]), PropertyKind::Ssp).unwrap());
    }

    #[test]
    fn c4_systems() {
        let c4 = cycle(4).unwrap();
        let a = RatMatrix::adjacency(&c4);
        let ssp = build_system(&a, &c4, PropertyKind::Ssp).unwrap();
        assert_eq!(ssp.matrix.shape(), (6, 2));
        assert_eq!(ssp.pairs, vec![Pair::new(0, 2), Pair::new(1, 3)]);
        let smp = build_system(&a, &c4, PropertyKind::Smp).unwrap();
        assert_eq!(smp.matrix.rows(), 8);
        let x = property_witness(&a, PropertyKind::Ssp).unwrap().unwrap();
        let jai = &(&RatMatrix::ones(4, 4) - &a) - &RatMatrix::identity(4);
        assert_eq!(x, jai);
        assert!(!has_property(&a, PropertyKind::Ssp).unwrap());
    }

    #[test]
    fn path_has_ssp() {
        let a = RatMatrix::adjacency(&path(3).unwrap());
        assert!(has_property(&a, PropertyKind::Ssp).unwrap());
        assert!(property_witness(&a, PropertyKind::Ssp).unwrap().is_none());
    }

    #[test]
    fn non_symmetric_is_rejected() {
        let a = RatMatrix::from_i64_rows(&[[0, 1], [2, 0]]);
        assert_eq!(has_property(&a, PropertyKind::Ssp), Err(LinalgError::NotSymmetric));
    }

    #[test]
    fn block_conditions() {
        let a = RatMatrix::from_i64_rows(&[[2, 1], [1, 0]]);
        let one = RatMatrix::from_i64_rows(&[[3]]);
        let col = RatMatrix::from_i64_rows(&[[1], [2]]);
        assert_eq!(
            block_ssp_sufficient(&a, &one, &col).unwrap(),
            Some(BlockCondition::BHasSsp)
        );
        // B = I_3 on 3K_1 commutes with everything; its complement is K_3.
        let b = RatMatrix::identity(3);
        assert!(!has_property(&b, PropertyKind::Ssp).unwrap());
        let c = RatMatrix::ones(2, 3);
        assert_eq!(
            block_ssp_sufficient(&a, &b, &c).unwrap(),
            Some(BlockCondition::ComplementForest)
        );
        let m = block_matrix(&a, &b, &c).unwrap();
        assert!(has_property(&m, PropertyKind::Ssp).unwrap());
        let j = RatMatrix::ones(2, 2);
        assert!(block_ssp_sufficient(&a, &a, &j).unwrap().is_some());
        assert!(has_property(&block_matrix(&a, &a, &j).unwrap(), PropertyKind::Ssp).unwrap());
        let mut zero = c.clone();
        zero[(1, 2)] = rat(0);
        assert_eq!(block_ssp_sufficient(&a, &b, &zero), Err(LinalgError::ZeroEntry(1, 2)));
    }

    #[test]
    fn full_rank_condition() {
        // B on 2K_2 lacks the SSP and its complement is C_4, so only the
        // rank condition can apply.
        let a = &RatMatrix::ones(4, 4) + &RatMatrix::diagonal(&[rat(0), rat(1), rat(2), rat(3)]);
        let b = RatMatrix::adjacency(&cycle(4).unwrap().complement());
        let c = RatMatrix::from_fn(4, 4, |i, j| rat(((i + 1) * (j + 1) * (j + 1)) as i64 + (i == j) as i64));
        assert_eq!(
            block_ssp_sufficient(&a, &b, &c).unwrap(),
            Some(BlockCondition::FullColumnRank)
        );
        assert!(has_property(&block_matrix(&a, &b, &c).unwrap(), PropertyKind::Ssp).unwrap());
    }

    fn random_symmetric() -> impl Strategy<Value = RatMatrix> {
        (2usize..6).prop_flat_map(|n| {
            (
                prop::collection::vec(prop::bool::weighted(0.55), n * n),
                prop::collection::vec(-3i64..=3, n * n),
            )
                .prop_map(move |(mask, vals)| {
                    RatMatrix::from_fn(n, n, |i, j| {
                        let (a, b) = if i <= j { (i, j) } else { (j, i) };
                        if a == b {
                            rat(vals[a * n + b])
                        } else if mask[a * n + b] {
                            let v = vals[a * n + b];
                            rat(if v == 0 { 1 } else { v })
                        } else {
                            rat(0)
                        }
                    })
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn monotone_chain(a in random_symmetric()) {
            let ssp = has_property(&a, PropertyKind::Ssp).unwrap();
            let smp = has_property(&a, PropertyKind::Smp).unwrap();
            let sap = has_property(&a, PropertyKind::Sap).unwrap();
            prop_assert!(!ssp || smp);
            prop_assert!(!smp || sap);
        }

        #[test]
        fn witnesses_verify(a in random_symmetric()) {
            for kind in PropertyKind::ALL {
                match property_witness(&a, kind).unwrap() {
                    Some(x) => {
                        prop_assert!(!has_property(&a, kind).unwrap());
                        prop_assert!(satisfies_constraints(&a, &x, kind).unwrap());
                    }
                    None => prop_assert!(has_property(&a, kind).unwrap()),
                }
            }
        }

        #[test]
        fn scaling_and_shift(a in random_symmetric(), p in 1i64..7, q in 1i64..5, s in -4i64..4) {
            let c = ratio(p, q);
            for kind in PropertyKind::ALL {
                prop_assert_eq!(has_property(&a.scale(&c), kind).unwrap(), has_property(&a, kind).unwrap());
            }
            let shifted = &a + &RatMatrix::identity(a.rows()).scale(&rat(s));
            prop_assert_eq!(
                has_property(&shifted, PropertyKind::Ssp).unwrap(),
                has_property(&a, PropertyKind::Ssp).unwrap()
            );
        }
    }
}
