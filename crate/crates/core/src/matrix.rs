//! Dense matrices over the integers.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use rug::{Complete, Integer, Rational};

use crate::error::{Error, Result};

/// A dense row-major matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Integer>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Integer::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Integer::from(1);
        }
        m
    }

    pub fn diagonal(entries: &[Integer]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Builds a matrix from its rows, which must all have the same length.
    pub fn from_rows(rows: Vec<Vec<Integer>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|row| row.len() != c) {
            return Err(Error::InvalidInput(format!(
                "ragged matrix: row {bad} has length {}, expected {c}",
                rows[bad].len()
            )));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for literals; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Integer::from(x)).collect())
            .collect();
        Self::from_rows(rows).expect("ragged matrix literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Integer] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].cmp0().is_eq()))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k * row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &Integer) {
        debug_assert_ne!(dst, src);
        for j in 0..self.cols {
            let delta = Integer::from(k * &self.data[src * self.cols + j]);
            self.data[dst * self.cols + j] += delta;
        }
    }

    /// `col[dst] += k * col[src]`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &Integer) {
        debug_assert_ne!(dst, src);
        for i in 0..self.rows {
            let delta = Integer::from(k * &self.data[i * self.cols + src]);
            self.data[i * self.cols + dst] += delta;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let e = &mut self.data[i * self.cols + j];
            *e = -std::mem::take(e);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<Integer> {
        if !self.is_square() {
            return Err(Error::InvalidInput(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Integer::from(1));
        }
        let mut a = self.clone();
        let mut sign = 1i32;
        let mut prev = Integer::from(1);
        for k in 0..n - 1 {
            if a[(k, k)].cmp0().is_eq() {
                match (k + 1..n).find(|&i| !a[(i, k)].cmp0().is_eq()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(Integer::ZERO),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = Integer::from(&a[(i, j)] * &a[(k, k)]) - Integer::from(&a[(i, k)] * &a[(k, j)]);
                    // Exact by Sylvester's identity.
                    a[(i, j)] = v.div_exact(&prev);
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(Integer::from(&a[(n - 1, n - 1)] * sign))
    }

    /// Inertia `(positive, negative, zero)` of a symmetric matrix, by
    /// congruence diagonalization over the rationals.
    pub fn symmetric_inertia(&self) -> Result<Inertia> {
        if !self.is_symmetric() {
            return Err(Error::InvalidInput("inertia of a non-symmetric matrix".into()));
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| self.row(i).iter().map(Rational::from).collect())
            .collect();
        let mut inertia = Inertia::default();
        for k in 0..n {
            if a[k][k].cmp0().is_eq() {
                if let Some(i) = (k + 1..n).find(|&i| !a[i][i].cmp0().is_eq()) {
                    a.swap(i, k);
                    for row in a.iter_mut() {
                        row.swap(i, k);
                    }
                } else if let Some((i, j)) = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].cmp0().is_eq())
                {
                    // All remaining diagonal entries vanish: adding row/column j to i
                    // puts 2 a_ij on the diagonal.
                    for c in 0..n {
                        let v = a[j][c].clone();
                        a[i][c] += v;
                    }
                    for row in a.iter_mut() {
                        let v = row[j].clone();
                        row[i] += v;
                    }
                    a.swap(i, k);
                    for row in a.iter_mut() {
                        row.swap(i, k);
                    }
                } else {
                    inertia.zero += n - k;
                    break;
                }
            }
            let pivot = a[k][k].clone();
            match pivot.cmp0() {
                std::cmp::Ordering::Greater => inertia.positive += 1,
                _ => inertia.negative += 1,
            }
            for i in k + 1..n {
                if a[i][k].cmp0().is_eq() {
                    continue;
                }
                let f = (&a[i][k] / &pivot).complete();
                for c in k..n {
                    let d = (&f * &a[k][c]).complete();
                    a[i][c] -= d;
                }
            }
            // The column updates mirror the row updates; only the trailing block
            // is read again, so clearing column k is enough.
            for row in a.iter_mut().skip(k + 1) {
                row[k] = Rational::new();
            }
        }
        Ok(inertia)
    }
}

/// Counts of positive, negative and zero eigenvalues of a symmetric matrix.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = Integer;

    fn index(&self, (i, j): (usize, usize)) -> &Integer {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Integer {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.cmp0().is_eq() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Laplace expansion along the first row.
    fn laplace(m: &[Vec<i64>]) -> i128 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        let mut total = 0i128;
        for c in 0..n {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect())
                .collect();
            let term = m[0][c] as i128 * laplace(&minor);
            total += if c % 2 == 0 { term } else { -term };
        }
        total
    }

    fn to_matrix(m: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(m.iter().map(|r| r.iter().map(|&x| Integer::from(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn determinant_matches_laplace() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(0..6);
            let m: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(-3..4)).collect())
                .collect();
            assert_eq!(to_matrix(&m).determinant().unwrap(), laplace(&m), "{m:?}");
        }
    }

    #[test]
    fn determinant_examples() {
        let q = IntMatrix::from_i64(&[&[4, 2, 1], &[2, 0, 0], &[1, 0, 4225]]);
        assert_eq!(q.determinant().unwrap(), -16900);
        assert_eq!(IntMatrix::identity(5).determinant().unwrap(), 1);
        assert!(IntMatrix::zeros(2, 3).determinant().is_err());
    }

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_i64(&[&[1, 2], &[3, 4], &[5, 6]]);
        let b = IntMatrix::from_i64(&[&[1, 0, -1], &[2, 1, 0]]);
        assert_eq!(&a * &b, IntMatrix::from_i64(&[&[5, 2, -1], &[11, 4, -3], &[17, 6, -5]]));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(&IntMatrix::identity(3) * &a, a);
    }

    #[test]
    fn inertia_examples() {
        let h = IntMatrix::from_i64(&[&[-4, 2], &[2, -4]]);
        assert_eq!(h.symmetric_inertia().unwrap().signature(), -2);
        // Hyperbolic plane: zero diagonal.
        let hyp = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let i = hyp.symmetric_inertia().unwrap();
        assert_eq!((i.positive, i.negative, i.zero), (1, 1, 0));
        let sing = IntMatrix::from_i64(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 0]]);
        let i = sing.symmetric_inertia().unwrap();
        assert_eq!((i.positive, i.negative, i.zero), (1, 0, 2));
        let q = IntMatrix::from_i64(&[&[4, 2, 1], &[2, 0, 0], &[1, 0, 4225]]);
        assert_eq!(q.symmetric_inertia().unwrap().signature(), 1);
    }

    #[test]
    fn inertia_agrees_with_minors_on_definite_matrices() {
        // A^T A + I is positive definite.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(1..7);
            let a: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-5..6)).collect()).collect();
            let a = to_matrix(&a);
            let mut s = &a.transpose() * &a;
            for i in 0..n {
                s[(i, i)] += 1;
            }
            assert_eq!(s.symmetric_inertia().unwrap().positive, n);
            let mut neg = s.clone();
            for i in 0..n {
                neg.negate_row(i);
            }
            assert_eq!(neg.symmetric_inertia().unwrap().negative, n);
        }
    }
}
