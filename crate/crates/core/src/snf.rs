//! Smith normal form and cokernels of integer matrices.

use rug::{Complete, Integer};

use crate::matrix::IntMatrix;

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal, each diagonal
/// entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// The `min(rows, cols)` diagonal entries of `D`, non-negative.
    pub diagonal: Vec<Integer>,
    /// Diagonal entries greater than 1.
    pub invariant_factors: Vec<Integer>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.cmp0().is_eq()).count()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (rows, cols) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block.
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&ij| !d[ij].cmp0().is_eq())
                .min_by(|&x, &y| d[x].cmp_abs(&d[y]));
            let Some((pi, pj)) = pivot else {
                break;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if d[(i, t)].cmp0().is_eq() {
                    continue;
                }
                let q = -d[(i, t)].div_rem_floor_ref(&d[(t, t)]).complete().0;
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d[(i, t)].cmp0().is_eq();
            }
            for j in t + 1..cols {
                if d[(t, j)].cmp0().is_eq() {
                    continue;
                }
                let q = -d[(t, j)].div_rem_floor_ref(&d[(t, t)]).complete().0;
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= d[(t, j)].cmp0().is_eq();
            }
            if !clean {
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_divisible(&d[(t, t)])));
            match offender {
                Some(i) => {
                    let one = Integer::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].cmp0().is_lt() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    let diagonal: Vec<Integer> = (0..rows.min(cols)).map(|i| d[(i, i)].clone()).collect();
    let invariant_factors = diagonal.iter().filter(|x| **x > 1).cloned().collect();
    SnfResult {
        u,
        d,
        v,
        diagonal,
        invariant_factors,
    }
}

/// Structure of the cokernel `Z^rows / A Z^cols`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CokernelInfo {
    pub invariant_factors: Vec<Integer>,
    pub free_rank: usize,
    pub is_cyclic: bool,
    pub min_generators: usize,
    /// `None` when the cokernel is infinite.
    pub order: Option<Integer>,
}

pub fn cokernel_analysis(a: &IntMatrix) -> CokernelInfo {
    let snf = smith_normal_form(a);
    let free_rank = a.rows() - snf.rank();
    let min_generators = snf.invariant_factors.len() + free_rank;
    let order = (free_rank == 0).then(|| snf.invariant_factors.iter().product());
    CokernelInfo {
        is_cyclic: min_generators <= 1,
        min_generators,
        order,
        free_rank,
        invariant_factors: snf.invariant_factors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ints(xs: &[i64]) -> Vec<Integer> {
        xs.iter().map(|&x| Integer::from(x)).collect()
    }

    pub(crate) fn check_snf(a: &IntMatrix, s: &SnfResult) {
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        assert!(s.d.is_diagonal());
        assert_eq!(s.u.determinant().unwrap().abs(), 1);
        assert_eq!(s.v.determinant().unwrap().abs(), 1);
        for w in s.diagonal.windows(2) {
            assert!(w[0].cmp0().is_ge());
            if w[0].cmp0().is_eq() {
                assert!(w[1].cmp0().is_eq());
            } else {
                assert!(w[1].is_divisible(&w[0]), "{} does not divide {}", w[0], w[1]);
            }
        }
    }

    #[test]
    fn examples() {
        let id = IntMatrix::identity(3);
        let s = smith_normal_form(&id);
        assert_eq!(s.d, id);
        assert!(s.invariant_factors.is_empty());

        let s = smith_normal_form(&IntMatrix::diagonal(&ints(&[4, 6])));
        assert_eq!(s.invariant_factors, ints(&[2, 12]));

        let q = IntMatrix::from_i64(&[&[4, 2, 1], &[2, 0, 0], &[1, 0, 4225]]);
        let s = smith_normal_form(&q);
        check_snf(&q, &s);
        assert_eq!(s.diagonal, ints(&[1, 1, 16900]));
    }

    #[test]
    fn cokernel_examples() {
        let c = cokernel_analysis(&IntMatrix::diagonal(&ints(&[2, 4])));
        assert_eq!((c.is_cyclic, c.min_generators, c.order), (false, 2, Some(8.into())));
        let c = cokernel_analysis(&IntMatrix::from_i64(&[&[100]]));
        assert_eq!((c.is_cyclic, c.min_generators, c.order), (true, 1, Some(100.into())));
        let c = cokernel_analysis(&IntMatrix::from_i64(&[&[2, 0], &[0, 0]]));
        assert_eq!((c.free_rank, c.min_generators, c.order), (1, 2, None));
        // Z^2 / <(2, 4)> = Z/2 + Z.
        let c = cokernel_analysis(&IntMatrix::from_i64(&[&[2], &[4]]));
        assert_eq!((c.invariant_factors, c.free_rank), (ints(&[2]), 1));
        let c = cokernel_analysis(&IntMatrix::zeros(0, 0));
        assert_eq!((c.is_cyclic, c.order), (true, Some(1.into())));
    }

    #[test]
    fn randomized_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let (r, c) = (rng.gen_range(0..7), rng.gen_range(0..7));
            let rows = (0..r)
                .map(|_| (0..c).map(|_| Integer::from(rng.gen_range(-20i64..21))).collect())
                .collect();
            let a = IntMatrix::from_rows(rows).unwrap_or_else(|_| IntMatrix::zeros(r, c));
            check_snf(&a, &smith_normal_form(&a));
        }
    }

    #[test]
    fn order_is_absolute_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let n = rng.gen_range(1..6);
            let rows = (0..n)
                .map(|_| (0..n).map(|_| Integer::from(rng.gen_range(-9i64..10))).collect())
                .collect();
            let a = IntMatrix::from_rows(rows).unwrap();
            let det = a.determinant().unwrap();
            let c = cokernel_analysis(&a);
            if det.cmp0().is_eq() {
                assert_eq!(c.order, None);
            } else {
                assert_eq!(c.order, Some(det.abs()));
            }
        }
    }
}
