use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::LinalgError;
use crate::graph::Graph;

use super::{rat, RatMatrix};

pub const DEFAULT_SAMPLE_BOUND: i64 = 10;

/// Seeded random element of `S(G)`: diagonal entries uniform in
/// `[-bound, bound]`, edge entries uniform over the nonzero integers in that
/// range. Draw order is the diagonal `0..n`, then edges lexicographically.
pub fn sample_in_s(g: &Graph, seed: u64, bound: i64) -> RatMatrix {
    assert!(bound >= 1, "sample bound must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.order();
    let mut a = RatMatrix::zeros(n, n);
    for i in 0..n {
        a[(i, i)] = rat(rng.gen_range(-bound..=bound));
    }
    for e in g.edges() {
        let mag = rng.gen_range(1..=bound);
        let v = if rng.gen_bool(0.5) { mag } else { -mag };
        a[(e.lo(), e.hi())] = rat(v);
        a[(e.hi(), e.lo())] = rat(v);
    }
    a
}

fn check_side(m: &RatMatrix, g: &Graph, op: &'static str) -> Result<(), LinalgError> {
    let n = g.order();
    if m.shape() != (n, n) {
        return Err(LinalgError::ShapeMismatch {
            op,
            left: m.shape(),
            right: (n, n),
        });
    }
    Ok(())
}

/// Symmetric with off-diagonal support exactly `E(G)`.
pub fn in_s(a: &RatMatrix, g: &Graph) -> Result<bool, LinalgError> {
    check_side(a, g, "in_S")?;
    let n = g.order();
    Ok(a.is_symmetric()
        && (0..n).all(|i| (i + 1..n).all(|j| a[(i, j)].is_zero() != g.has_edge(i, j))))
}

/// Symmetric, zero diagonal, off-diagonal support contained in `E(H)`.
pub fn in_sbar0(x: &RatMatrix, h: &Graph) -> Result<bool, LinalgError> {
    check_side(x, h, "in_Sbar0")?;
    let n = h.order();
    Ok(x.is_symmetric()
        && (0..n).all(|i| x[(i, i)].is_zero())
        && (0..n).all(|i| (i + 1..n).all(|j| x[(i, j)].is_zero() || h.has_edge(i, j))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle};
    use proptest::prelude::*;

    #[test]
    fn edgeless_samples_are_diagonal() {
        let g = Graph::empty(2).unwrap();
        let a = sample_in_s(&g, 3, DEFAULT_SAMPLE_BOUND);
        assert!(a[(0, 1)].is_zero() && a[(1, 0)].is_zero());
    }

    #[test]
    fn k2_sample() {
        let a = sample_in_s(&complete(2).unwrap(), 11, 5);
        assert_eq!(a[(0, 1)], a[(1, 0)]);
        assert!(!a[(0, 1)].is_zero());
        assert!(a[(0, 1)] >= rat(-5) && a[(0, 1)] <= rat(5));
    }

    #[test]
    fn pattern_predicates() {
        let c4 = cycle(4).unwrap();
        let a = RatMatrix::adjacency(&c4);
        assert!(in_s(&a, &c4).unwrap());
        let broken = &a + &(&RatMatrix::unit(4, 0, 2) + &RatMatrix::unit(4, 2, 0));
        assert!(!in_s(&broken, &c4).unwrap());
        assert!(in_sbar0(&RatMatrix::zeros(4, 4), &c4).unwrap());
        assert!(!in_sbar0(&RatMatrix::identity(4), &complete(4).unwrap()).unwrap());
        assert!(in_s(&RatMatrix::zeros(3, 3), &c4).is_err());
    }

    proptest! {
        #[test]
        fn samples_are_deterministic_and_in_pattern(mask in 0u32..1024, seed: u64, bound in 1i64..12) {
            let pairs: Vec<(usize, usize)> =
                (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
            let g = Graph::from_edges(
                5,
                pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e),
            )
            .unwrap();
            let a = sample_in_s(&g, seed, bound);
            prop_assert_eq!(&a, &sample_in_s(&g, seed, bound));
            prop_assert!(in_s(&a, &g).unwrap());
            prop_assert!(a.entries().iter().all(|x| *x >= rat(-bound) && *x <= rat(bound)));
        }
    }
}
