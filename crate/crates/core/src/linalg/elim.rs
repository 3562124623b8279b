use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rat, RatMatrix};

/// Clears denominators row by row; each integer row is a positive multiple
/// of the original.
fn integer_rows(m: &RatMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Rank over the rationals by Bareiss fraction-free elimination.
pub fn rank_exact(m: &RatMatrix) -> usize {
    let mut a = integer_rows(m);
    let (rows, cols) = m.shape();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                // Bareiss: the division is exact.
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

fn normalize(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Integer Gauss-Jordan with content removal. Returns the reduced rows and
/// the pivot column of each. Pivot rows have zeros in every other pivot column.
fn reduce(m: &RatMatrix) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut a = integer_rows(m);
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Smallest nonzero pivot keeps entries short.
        let Some(p) = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by(|&x, &y| a[x][c].abs().cmp(&a[y][c].abs()))
        else {
            continue;
        };
        a.swap(r, p);
        normalize(&mut a[r]);
        let pivot_row = a[r].clone();
        let pv = &pivot_row[c];
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let g = pv.gcd(&row[c]);
            let fp = pv / &g;
            let fr = &row[c] / &g;
            for j in 0..cols {
                row[j] = &fp * &row[j] - &fr * &pivot_row[j];
            }
            normalize(row);
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Rank by a second elimination order, used to cross-check [`rank_exact`].
pub fn rank_gauss_jordan(m: &RatMatrix) -> usize {
    reduce(m).1.len()
}

/// Basis of the right kernel as column vectors, each checked against `m`.
pub fn nullspace_basis(m: &RatMatrix) -> Vec<RatMatrix> {
    let cols = m.cols();
    let (a, pivots) = reduce(m);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for f in (0..cols).filter(|&f| !is_pivot[f]) {
        let mut v = RatMatrix::zeros(cols, 1);
        v[(f, 0)] = Rat::one();
        for (row, &c) in a.iter().zip(&pivots) {
            if !row[f].is_zero() {
                v[(c, 0)] = -Rat::new(row[f].clone(), row[c].clone());
            }
        }
        assert!((m * &v).is_zero(), "nullspace vector failed verification");
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::path;
    use crate::linalg::{rat, ratio};
    use proptest::prelude::*;

    #[test]
    fn small_ranks() {
        assert_eq!(rank_exact(&RatMatrix::identity(3)), 3);
        assert_eq!(rank_exact(&RatMatrix::ones(3, 3)), 1);
        assert_eq!(rank_exact(&RatMatrix::adjacency(&path(4).unwrap())), 4);
        assert_eq!(rank_exact(&RatMatrix::zeros(2, 5)), 0);
        assert_eq!(rank_exact(&RatMatrix::zeros(0, 3)), 0);
    }

    #[test]
    fn small_kernels() {
        let k = nullspace_basis(&RatMatrix::ones(2, 2));
        assert_eq!(k, vec![RatMatrix::from_i64_rows(&[[-1], [1]])]);
        assert!(nullspace_basis(&RatMatrix::identity(2)).is_empty());
        let k = nullspace_basis(&RatMatrix::from_i64_rows(&[[1, 2, 3]]));
        assert_eq!(k.len(), 2);
        let both = RatMatrix::from_fn(3, 2, |i, j| k[j][(i, 0)].clone());
        assert_eq!(rank_exact(&both), 2);
    }

    #[test]
    fn fractional_entries() {
        let m = RatMatrix::from_vec(2, 2, vec![ratio(1, 2), ratio(1, 3), rat(3), rat(2)]);
        assert_eq!(rank_exact(&m), 1);
        let k = nullspace_basis(&m);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], RatMatrix::from_vec(2, 1, vec![ratio(-2, 3), rat(1)]));
    }

    fn int_matrix(max_dim: usize) -> impl Strategy<Value = RatMatrix> {
        (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
            prop::collection::vec(-3i64..=3, r * c)
                .prop_map(move |v| RatMatrix::from_vec(r, c, v.into_iter().map(rat).collect()))
        })
    }

    proptest! {
        #[test]
        fn elimination_orders_agree(m in int_matrix(7)) {
            let r = rank_exact(&m);
            prop_assert_eq!(r, rank_gauss_jordan(&m));
            prop_assert_eq!(r, rank_exact(&m.transpose()));
        }

        #[test]
        fn kernel_dimension(m in int_matrix(7)) {
            let k = nullspace_basis(&m);
            prop_assert_eq!(k.len(), m.cols() - rank_exact(&m));
            for v in &k {
                prop_assert!((&m * v).is_zero());
            }
        }

        #[test]
        fn rank_of_low_rank_product(a in int_matrix(5), seed in 0i64..50) {
            // A times a 1-row matrix has rank at most 1.
            let row = RatMatrix::from_fn(1, 4, |_, j| rat(seed - j as i64));
            let col = RatMatrix::from_fn(a.rows(), 1, |i, _| a[(i, 0)].clone());
            prop_assert!(rank_exact(&(&col * &row)) <= 1);
        }
    }
}
