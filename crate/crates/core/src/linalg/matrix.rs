use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LinalgError, ParseError};
use crate::graph::Graph;

use super::Rat;

/// Dense row-major matrix of exact rationals. Serializes as a list of rows
/// of decimal strings `"p"` or `"p/q"`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<String>>", try_from = "Vec<Vec<String>>")]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// All-ones matrix `J`.
    pub fn ones(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::one(); rows * cols],
        }
    }

    /// `E_ij`: a single one at `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = Rat::one();
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
        RatMatrix { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.as_ref().len(), c, "ragged matrix rows");
            data.extend(row.as_ref().iter().map(|&x| rat(x)));
        }
        RatMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Adjacency matrix of `g`.
    pub fn adjacency(g: &Graph) -> Self {
        let n = g.order();
        Self::from_fn(n, n, |i, j| if g.has_edge(i, j) { Rat::one() } else { Rat::zero() })
    }

    pub fn diagonal(entries: &[Rat]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { Rat::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    fn same_shape(&self, other: &Self, op: &'static str) -> Result<(), LinalgError> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(LinalgError::ShapeMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_shape(other, "add")?;
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_shape(other, "sub")?;
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Entrywise product `A ∘ B`.
    pub fn hadamard(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_shape(other, "hadamard")?;
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a * b).collect(),
        })
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                op: "commutator",
                rows: self.rows,
                cols: self.cols,
            });
        }
        self.same_shape(other, "commutator")?;
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    /// Kronecker product; block `(i, j)` is `a_ij * B`.
    pub fn kron(&self, other: &Self) -> Self {
        let (p, q) = other.shape();
        Self::from_fn(self.rows * p, self.cols * q, |r, c| {
            let a = &self[(r / p, c / q)];
            if a.is_zero() {
                Rat::zero()
            } else {
                a * &other[(r % p, c % q)]
            }
        })
    }

    pub fn pow(&self, k: u32) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                op: "pow",
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Block matrix from a grid of blocks with consistent row/column sizes.
    pub fn from_blocks(blocks: &[Vec<RatMatrix>]) -> Result<Self, LinalgError> {
        let heights: Vec<usize> = blocks.iter().map(|row| row[0].rows).collect();
        let widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        for (bi, row) in blocks.iter().enumerate() {
            if row.len() != widths.len() {
                return Err(LinalgError::Precondition("ragged block grid".into()));
            }
            for (bj, b) in row.iter().enumerate() {
                if b.shape() != (heights[bi], widths[bj]) {
                    return Err(LinalgError::ShapeMismatch {
                        op: "from_blocks",
                        left: (heights[bi], widths[bj]),
                        right: b.shape(),
                    });
                }
            }
        }
        let total_r: usize = heights.iter().sum();
        let total_c: usize = widths.iter().sum();
        let mut out = Self::zeros(total_r, total_c);
        let mut r0 = 0;
        for (bi, row) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                    }
                }
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    pub fn direct_sum(parts: &[RatMatrix]) -> Self {
        let r: usize = parts.iter().map(|p| p.rows).sum();
        let c: usize = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            for i in 0..p.rows {
                for j in 0..p.cols {
                    out[(r0 + i, c0 + j)] = p[(i, j)].clone();
                }
            }
            r0 += p.rows;
            c0 += p.cols;
        }
        out
    }

    /// `out[perm[i]][perm[j]] = self[i][j]`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Self {
        assert!(self.is_square() && perm.len() == self.rows);
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(perm[i], perm[j])] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Graph on the off-diagonal support of a square matrix.
    pub fn support_graph(&self) -> Result<Graph, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                op: "support_graph",
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !self[(i, j)].is_zero() || !self[(j, i)].is_zero() {
                    edges.push((i, j));
                }
            }
        }
        Ok(Graph::from_edges(n, edges)?)
    }

    /// Text form: `"rows cols"` on the first line, then one row per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the text form; entries are integers or `p/q` and may be spread
    /// over lines arbitrarily.
    pub fn parse_text(text: &str) -> Result<Self, ParseError> {
        let mut tokens = text.split_whitespace();
        let mut dim = || -> Result<usize, ParseError> {
            tokens
                .next()
                .ok_or(ParseError::MatrixHeader)?
                .parse()
                .map_err(|_| ParseError::MatrixHeader)
        };
        let rows = dim()?;
        let cols = dim()?;
        let expected = rows
            .checked_mul(cols)
            .filter(|&e| e <= 1 << 24)
            .ok_or(ParseError::MatrixHeader)?;
        let mut data = Vec::with_capacity(expected.min(4096));
        for tok in tokens {
            data.push(parse_rat(tok)?);
        }
        if data.len() != expected {
            return Err(ParseError::MatrixEntryCount {
                expected,
                found: data.len(),
            });
        }
        Ok(RatMatrix { rows, cols, data })
    }
}

impl From<RatMatrix> for Vec<Vec<String>> {
    fn from(m: RatMatrix) -> Self {
        (0..m.rows)
            .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
            .collect()
    }
}

impl TryFrom<Vec<Vec<String>>> for RatMatrix {
    type Error = ParseError;

    fn try_from(rows: Vec<Vec<String>>) -> Result<Self, ParseError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in &rows {
            if row.len() != cols {
                return Err(ParseError::MatrixEntryCount {
                    expected: cols,
                    found: row.len(),
                });
            }
            for tok in row {
                data.push(parse_rat(tok)?);
            }
        }
        Ok(RatMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }
}

fn parse_rat(tok: &str) -> Result<Rat, ParseError> {
    let bad = || ParseError::BadToken {
        token: tok.to_string(),
    };
    match tok.split_once('/') {
        None => BigInt::from_str(tok).map(Rat::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p = BigInt::from_str(p).map_err(|_| bad())?;
            let q = BigInt::from_str(q).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(ParseError::ZeroDenominator(tok.to_string()));
            }
            Ok(Rat::new(p, q))
        }
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix {}", self.to_text())
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

// Operator sugar panics on shape mismatch; the `try_` forms report it.
impl<'a> Add<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_add(rhs).expect("matrix add")
    }
}

impl<'a> Sub<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_sub(rhs).expect("matrix sub")
    }
}

impl<'a> Mul<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_mul(rhs).expect("matrix mul")
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        self.scale(&rat(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_and_hadamard() {
        let a = RatMatrix::from_i64_rows(&[[1, 2], [3, 4]]);
        assert!(a.commutator(&a).unwrap().is_zero());
        let j3 = RatMatrix::ones(3, 3);
        assert_eq!(RatMatrix::identity(3).hadamard(&j3).unwrap(), RatMatrix::identity(3));
        assert!(matches!(
            a.hadamard(&j3),
            Err(LinalgError::ShapeMismatch { op: "hadamard", .. })
        ));
    }

    #[test]
    fn commutator_of_symmetric_matrices_is_skew() {
        let a = RatMatrix::from_i64_rows(&[[1, 2, 0], [2, 0, 5], [0, 5, -1]]);
        let x = RatMatrix::from_i64_rows(&[[0, 0, 3], [0, 0, 0], [3, 0, 0]]);
        let c = a.commutator(&x).unwrap();
        assert_eq!(c.transpose(), -&c);
    }

    #[test]
    fn kron_with_identity_is_block_diagonal() {
        let a = RatMatrix::from_i64_rows(&[[1, 2], [3, 4]]);
        let k = RatMatrix::identity(2).kron(&a);
        assert_eq!(k, RatMatrix::direct_sum(&[a.clone(), a]));
    }

    #[test]
    fn kron_mixed_product() {
        let a = RatMatrix::from_i64_rows(&[[1, 2], [0, -1]]);
        let b = RatMatrix::from_i64_rows(&[[3, 1, 0], [1, 0, 2]]);
        let c = RatMatrix::from_i64_rows(&[[2, 0], [1, 1]]);
        let d = RatMatrix::from_i64_rows(&[[1], [4], [-2]]);
        assert_eq!(&a.kron(&b) * &c.kron(&d), (&a * &c).kron(&(&b * &d)));
    }

    #[test]
    fn text_round_trip() {
        let m = RatMatrix::from_vec(2, 2, vec![ratio(1, 2), rat(-3), ratio(4, 6), rat(0)]);
        let t = m.to_text();
        assert_eq!(t, "2 2\n1/2 -3\n2/3 0\n");
        assert_eq!(RatMatrix::parse_text(&t).unwrap(), m);
        assert!(matches!(
            RatMatrix::parse_text("2 2\n1 2 3"),
            Err(ParseError::MatrixEntryCount { expected: 4, found: 3 })
        ));
        assert!(matches!(RatMatrix::parse_text("2 2 1 1/0 1 1"), Err(ParseError::ZeroDenominator(_))));
        assert!(matches!(RatMatrix::parse_text("x"), Err(ParseError::MatrixHeader)));
        assert!(matches!(RatMatrix::parse_text("1 1 a"), Err(ParseError::BadToken { .. })));
    }
}
