//! Negative continued fractions and the surgery matrices built from them.
//!
//! `p/q = [a_1, ..., a_n]^- = a_1 - 1/(a_2 - 1/(... - 1/a_n))` with every
//! `a_i >= 2`. Surgery on the chain of unknots framed `a_1, ..., a_n` gives
//! `p/q`-surgery on the unknot.

use std::cmp::Ordering;

use rug::{Complete, Integer, Rational};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

fn check_fraction(p: &Integer, q: &Integer) -> Result<()> {
    if q.cmp0() != Ordering::Greater || p <= q {
        return Err(Error::InvalidFraction(format!("need p > q >= 1, got {p}/{q}")));
    }
    if p.gcd_ref(q).complete() != 1 {
        return Err(Error::InvalidFraction(format!("{p}/{q} is not in lowest terms")));
    }
    Ok(())
}

/// The expansion with all coefficients `>= 2`, via `a = ceil(p/q)`,
/// `p/q -> q/(aq - p)`.
pub fn neg_continued_fraction(p: &Integer, q: &Integer) -> Result<Vec<Integer>> {
    check_fraction(p, q)?;
    let (mut p, mut q) = (p.clone(), q.clone());
    let mut out = Vec::new();
    while q.cmp0() == Ordering::Greater {
        let a = p.div_rem_ceil_ref(&q).complete().0;
        let r = Integer::from(&a * &q) - &p;
        out.push(a);
        p = std::mem::replace(&mut q, r);
    }
    debug_assert_eq!(p, 1);
    Ok(out)
}

/// [`neg_continued_fraction`] in machine integers, for bulk sweeps.
pub fn neg_continued_fraction_u64(p: u64, q: u64) -> Result<Vec<u64>> {
    let bad = || Error::InvalidFraction(format!("need p > q >= 1 coprime, got {p}/{q}"));
    if q == 0 || p <= q || gcd_u64(p, q) != 1 {
        return Err(bad());
    }
    let (mut x, mut y) = (p, q);
    let mut out = Vec::new();
    while y > 0 {
        // Long runs of 2 are the common case; skip the division for them.
        let a = if x <= 2 * y { 2 } else { x.div_ceil(y) };
        out.push(a);
        (x, y) = (y, a * y - x);
    }
    debug_assert_eq!(x, 1);
    Ok(out)
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Evaluates `[a_1, ..., a_n]^-` exactly. Fails if some tail evaluates to 0.
pub fn eval_neg_continued_fraction(coeffs: &[Integer]) -> Result<Rational> {
    let (last, rest) = coeffs
        .split_last()
        .ok_or_else(|| Error::InvalidInput("empty continued fraction".into()))?;
    let mut x = Rational::from(last);
    for a in rest.iter().rev() {
        if x.cmp0().is_eq() {
            return Err(Error::InvalidInput("continued fraction divides by zero".into()));
        }
        x = Rational::from(a) - x.recip();
    }
    Ok(x)
}

/// Linking matrix of the framed chain: framings on the diagonal, 1 between
/// neighbours.
pub fn chain_linking_matrix(framings: &[Integer]) -> IntMatrix {
    let n = framings.len();
    let mut m = IntMatrix::diagonal(framings);
    for i in 1..n {
        m[(i - 1, i)] = Integer::from(1);
        m[(i, i - 1)] = Integer::from(1);
    }
    m
}

/// Leading principal minors `D_1, ..., D_n` of the chain matrix:
/// `D_k = a_k D_{k-1} - D_{k-2}`.
pub fn chain_minors(framings: &[Integer]) -> Vec<Integer> {
    let (mut prev, mut cur) = (Integer::ZERO, Integer::from(1));
    let mut out = Vec::with_capacity(framings.len());
    for a in framings {
        let next = Integer::from(a * &cur) - &prev;
        out.push(next.clone());
        prev = std::mem::replace(&mut cur, next);
    }
    out
}

/// Determinant of [`chain_linking_matrix`] (a continuant).
pub fn chain_determinant(framings: &[Integer]) -> Integer {
    chain_minors(framings).pop().unwrap_or_else(|| Integer::from(1))
}

/// [`chain_determinant`] in machine integers; `None` on overflow.
pub fn chain_determinant_u64(framings: &[u64]) -> Option<i64> {
    let (mut prev, mut cur) = (0i64, 1i64);
    for &a in framings {
        let next = i64::try_from(a).ok()?.checked_mul(cur)?.checked_sub(prev)?;
        (prev, cur) = (cur, next);
    }
    Some(cur)
}

/// Signature of the chain matrix. When no leading minor vanishes this is
/// `n - 2 * (sign changes in 1, D_1, ..., D_n)`; otherwise it falls back to
/// exact congruence diagonalization.
pub fn chain_signature(framings: &[Integer]) -> i64 {
    let minors = chain_minors(framings);
    if minors.iter().all(|d| !d.cmp0().is_eq()) {
        let mut negatives = 0i64;
        let mut prev_sign = Ordering::Greater;
        for d in &minors {
            let s = d.cmp0();
            if s != prev_sign {
                negatives += 1;
            }
            prev_sign = s;
        }
        return framings.len() as i64 - 2 * negatives;
    }
    chain_linking_matrix(framings)
        .symmetric_inertia()
        .expect("chain matrices are symmetric")
        .signature()
}

/// The `(v+2) x (v+2)` plumbing matrix
///
/// ```text
/// a+2  2  1    ...  1
///  2   0  0    ...  0
///  1   0  n_1^2
///  :   :        ...
///  1   0              n_v^2
/// ```
pub fn plumbing_matrix_q(a: &Integer, n: &[Integer]) -> Result<IntMatrix> {
    if n.is_empty() {
        return Err(Error::InvalidInput("plumbing needs at least one n_j".into()));
    }
    let size = n.len() + 2;
    let mut q = IntMatrix::zeros(size, size);
    q[(0, 0)] = Integer::from(a + 2u32);
    q[(0, 1)] = Integer::from(2);
    q[(1, 0)] = Integer::from(2);
    for (j, nj) in n.iter().enumerate() {
        q[(0, j + 2)] = Integer::from(1);
        q[(j + 2, 0)] = Integer::from(1);
        q[(j + 2, j + 2)] = nj.square_ref().complete();
    }
    Ok(q)
}
