use std::fmt;

use num_traits::{One, Zero};

use crate::error::LinalgError;

use super::{rat, Rat, RatMatrix};

/// Polynomial over the rationals, coefficients lowest degree first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let l = l.clone();
                Self::new(self.coeffs.iter().map(|c| c / &l).collect())
            }
        }
    }

    /// Remainder of division by a nonzero polynomial.
    pub fn rem(&self, d: &RatPoly) -> RatPoly {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let f = &r[top] / &lead;
            if !f.is_zero() {
                for (k, c) in d.coeffs.iter().enumerate() {
                    r[top - dd + k] -= &f * c;
                }
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        RatPoly::new(r)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, a: &RatMatrix) -> Result<RatMatrix, LinalgError> {
        if !a.is_square() {
            return Err(LinalgError::NotSquare {
                op: "eval_matrix",
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let n = a.rows();
        let mut acc = RatMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(a)?.try_add(&RatMatrix::identity(n).scale(c))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

/// `det(xI - A)` by the Faddeev-LeVerrier recurrence.
pub fn char_poly(a: &RatMatrix) -> Result<RatPoly, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            op: "char_poly",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut c = vec![Rat::zero(); n + 1];
    c[n] = Rat::one();
    let mut m = RatMatrix::zeros(n, n);
    for k in 1..=n {
        m = a.try_mul(&m)?.try_add(&RatMatrix::identity(n).scale(&c[n - k + 1]))?;
        c[n - k] = -(a.try_mul(&m)?.trace()) / rat(k as i64);
    }
    Ok(RatPoly::new(c))
}

/// Number of distinct eigenvalues of a symmetric matrix.
pub fn q_of(a: &RatMatrix) -> Result<usize, LinalgError> {
    if !a.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    if a.rows() == 0 {
        return Ok(0);
    }
    let p = char_poly(a)?;
    let g = p.gcd(&p.derivative());
    Ok(p.degree().unwrap() - g.degree().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cycle, path};
    use crate::linalg::ratio;
    use proptest::prelude::*;

    #[test]
    fn small_characteristic_polynomials() {
        let p3 = RatMatrix::adjacency(&path(3).unwrap());
        assert_eq!(char_poly(&p3).unwrap(), RatPoly::from_i64(&[0, -2, 0, 1]));
        assert_eq!(char_poly(&RatMatrix::identity(2)).unwrap(), RatPoly::from_i64(&[1, -2, 1]));
        assert_eq!(char_poly(&RatMatrix::zeros(2, 2)).unwrap(), RatPoly::from_i64(&[0, 0, 1]));
        let c4 = RatMatrix::adjacency(&cycle(4).unwrap());
        assert_eq!(char_poly(&c4).unwrap(), RatPoly::from_i64(&[0, 0, -4, 0, 1]));
    }

    #[test]
    fn distinct_eigenvalue_counts() {
        assert_eq!(q_of(&RatMatrix::identity(5)).unwrap(), 1);
        assert_eq!(q_of(&RatMatrix::diagonal(&[rat(1), rat(2), rat(2)])).unwrap(), 2);
        assert_eq!(q_of(&RatMatrix::adjacency(&path(3).unwrap())).unwrap(), 3);
        assert_eq!(q_of(&RatMatrix::adjacency(&cycle(4).unwrap())).unwrap(), 3);
        assert!(matches!(
            q_of(&RatMatrix::from_i64_rows(&[[0, 1], [0, 0]])),
            Err(LinalgError::NotSymmetric)
        ));
    }

    #[test]
    fn gcd_and_rem() {
        // (x-1)^2 (x+2) and its derivative share (x-1).
        let p = RatPoly::from_i64(&[2, -3, 0, 1]);
        assert_eq!(p.gcd(&p.derivative()), RatPoly::from_i64(&[-1, 1]));
        assert_eq!(p.eval(&rat(1)), rat(0));
        assert_eq!(p.rem(&RatPoly::from_i64(&[-1, 1])), RatPoly::zero());
        assert_eq!(RatPoly::zero().gcd(&RatPoly::zero()), RatPoly::zero());
    }

    fn sym_matrix(max_n: usize) -> impl Strategy<Value = RatMatrix> {
        (1..=max_n).prop_flat_map(|n| {
            prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
                RatMatrix::from_fn(n, n, |i, j| {
                    let (a, b) = if i <= j { (i, j) } else { (j, i) };
                    rat(v[a * n + b])
                })
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn cayley_hamilton(a in sym_matrix(6)) {
            let p = char_poly(&a).unwrap();
            prop_assert_eq!(p.degree(), Some(a.rows()));
            prop_assert!(p.eval_matrix(&a).unwrap().is_zero());
        }

        #[test]
        fn scalar_matrices_have_one_eigenvalue(n in 1usize..7, p in -20i64..20, q in 1i64..9) {
            let c = ratio(p, q);
            prop_assert_eq!(q_of(&RatMatrix::identity(n).scale(&c)).unwrap(), 1);
        }
    }
}
