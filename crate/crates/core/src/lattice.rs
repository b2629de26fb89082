//! Lattice-point counts behind the torus-knot signature.
//!
//! Every count here concerns the finite set
//! `S(p, q) = { i/p + j/q : 1 <= i < p, 1 <= j < q } ⊂ (0, 2)`.
//! Points below 1 are counted under a line with a Euclidean floor sum. Points
//! above 1 are counted through the bijection `(i, j) -> (iq + jp) mod pq`
//! between `S(p, q) \ {1}` and the residues `k` in `(0, pq)` prime to both
//! `p` and `q`, which folds `1 + A` onto `A` for any `A ⊂ (0, 1)`.
//! All work is `O(log max(p, q))` big-integer steps.

use std::cmp::Ordering;

use rug::{Complete, Integer, Rational};

use crate::error::{Error, Result};

/// `sum_{i=0}^{n-1} floor((a*i + b) / m)` for `n, a, b >= 0` and `m >= 1`.
pub fn floor_sum(n: &Integer, m: &Integer, a: &Integer, b: &Integer) -> Integer {
    assert!(m.cmp0() == Ordering::Greater, "floor_sum: m must be positive");
    assert!(
        n.cmp0() != Ordering::Less && a.cmp0() != Ordering::Less && b.cmp0() != Ordering::Less,
        "floor_sum: n, a, b must be non-negative"
    );
    let (mut n, mut m, mut a, mut b) = (n.clone(), m.clone(), a.clone(), b.clone());
    let mut ans = Integer::ZERO;
    loop {
        if a >= m {
            let (qa, ra) = a.div_rem_floor_ref(&m).complete();
            let tri = (&n * Integer::from(&n - 1u32)) / 2u32;
            ans += tri * qa;
            a = ra;
        }
        if b >= m {
            let (qb, rb) = b.div_rem_floor_ref(&m).complete();
            ans += Integer::from(&n * &qb);
            b = rb;
        }
        let y_max = Integer::from(&a * &n) + &b;
        if y_max < m {
            break;
        }
        let (qy, ry) = y_max.div_rem_floor_ref(&m).complete();
        n = qy;
        b = ry;
        std::mem::swap(&mut m, &mut a);
    }
    ans
}

/// A bound `num/den` on `s`, kept unreduced so that huge parameters never pay
/// for a gcd.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Frac<'a> {
    pub num: &'a Integer,
    pub den: &'a Integer,
}

fn check_params(p: &Integer, q: &Integer) -> Result<()> {
    if *p < 1 || *q < 1 {
        return Err(Error::InvalidInput(format!(
            "lattice parameters must be positive, got ({p}, {q})"
        )));
    }
    if p.gcd_ref(q).complete() != 1 {
        return Err(Error::NotCoprime(p.to_string(), q.to_string()));
    }
    Ok(())
}

/// `#{(i, j) : i, j >= 1, i/p + j/q < h}` (or `<= h` when not strict), for
/// `0 <= h <= 1`. In that range the box constraints `i < p`, `j < q` are implied.
fn triangle_count(p: &Integer, q: &Integer, h: Frac<'_>, strict: bool) -> Integer {
    // d*q*i + d*p*j <= c*p*q (- 1 if strict)
    let coef_i = Integer::from(h.den * q);
    let coef_j = Integer::from(h.den * p);
    let mut bound = Integer::from(h.num * p) * q;
    if strict {
        bound -= 1u32;
    }
    // Shift to i, j >= 0.
    let rest = bound - &coef_i - &coef_j;
    if rest.cmp0() == Ordering::Less {
        return Integer::ZERO;
    }
    let n = Integer::from(&rest / &coef_i) + 1u32;
    let r = rest - (&coef_i * Integer::from(&n - 1u32));
    floor_sum(&n, &coef_j, &coef_i, &r) + n
}

/// `#{1 <= k <= K : p ∤ k, q ∤ k}`.
fn coprime_residues_upto(p: &Integer, q: &Integer, k: &Integer) -> Integer {
    if k.cmp0() != Ordering::Greater {
        return Integer::ZERO;
    }
    let pq = Integer::from(p * q);
    (k - Integer::from(k / p)) - Integer::from(k / q) + Integer::from(k / &pq)
}

/// Number of `k` with `0 < k/pq < h` (or `<= h`), `p ∤ k`, `q ∤ k`, for `0 <= h <= 1`.
/// These `k/pq` are exactly the arguments of the roots of the torus-knot
/// Alexander polynomial.
fn root_count_below(p: &Integer, q: &Integer, h: Frac<'_>, strict: bool) -> Integer {
    let x = Integer::from(h.num * p) * q;
    let kmax = if strict {
        // ceil(x/den) - 1
        let (qt, r) = x.div_rem_floor_ref(h.den).complete();
        if r.cmp0() == Ordering::Equal {
            qt - 1u32
        } else {
            qt
        }
    } else {
        x.div_rem_floor_ref(h.den).complete().0
    };
    coprime_residues_upto(p, q, &kmax)
}

/// `#{s in S(p, q) : s < h}` (or `<= h`) for `0 <= h <= 2`.
fn count_below(p: &Integer, q: &Integer, h: Frac<'_>, strict: bool) -> Integer {
    if h.num == h.den {
        return Integer::from(p - 1u32) * Integer::from(q - 1u32) / 2u32;
    }
    if h.num < h.den {
        return triangle_count(p, q, h, strict);
    }
    // Points below 1: half of S, since s -> 2 - s is a bijection and s = 1 never occurs.
    let half = Integer::from(p - 1u32) * Integer::from(q - 1u32) / 2u32;
    let shifted = Integer::from(h.num - h.den);
    let g = Frac {
        num: &shifted,
        den: h.den,
    };
    let upper = root_count_below(p, q, g, strict) - triangle_count(p, q, g, strict);
    half + upper
}

pub(crate) fn count_between(
    p: &Integer,
    q: &Integer,
    lo: Frac<'_>,
    hi: Frac<'_>,
    lo_strict: bool,
    hi_strict: bool,
) -> Integer {
    count_below(p, q, hi, hi_strict) - count_below(p, q, lo, !lo_strict)
}

/// Number of points `s in S(p, q)` with `lo < s < hi`, where each inequality
/// is strict or not according to its flag.
///
/// Requires `gcd(p, q) = 1` and `0 <= lo < hi <= 2`.
pub fn count_lattice(
    p: &Integer,
    q: &Integer,
    lo: &Rational,
    hi: &Rational,
    lo_strict: bool,
    hi_strict: bool,
) -> Result<Integer> {
    check_params(p, q)?;
    if lo.cmp0() == Ordering::Less || *hi > 2 || lo >= hi {
        return Err(Error::InvalidInput(format!(
            "need 0 <= lo < hi <= 2, got lo = {lo}, hi = {hi}"
        )));
    }
    let (lo_n, lo_d) = (lo.numer(), lo.denom());
    let (hi_n, hi_d) = (hi.numer(), hi.denom());
    Ok(count_between(
        p,
        q,
        Frac { num: lo_n, den: lo_d },
        Frac { num: hi_n, den: hi_d },
        lo_strict,
        hi_strict,
    ))
}

/// Number of `k` with `t0 < k/pq < t1`, `p ∤ k`, `q ∤ k` (open arc), for
/// `0 <= t0 < t1 <= 1`.
pub fn root_count_in_open_arc(
    p: &Integer,
    q: &Integer,
    t0: &Rational,
    t1: &Rational,
) -> Result<Integer> {
    check_params(p, q)?;
    if t0.cmp0() == Ordering::Less || *t1 > 1 || t0 >= t1 {
        return Err(Error::InvalidInput(format!(
            "need 0 <= t0 < t1 <= 1, got t0 = {t0}, t1 = {t1}"
        )));
    }
    let hi = Frac {
        num: t1.numer(),
        den: t1.denom(),
    };
    let lo = Frac {
        num: t0.numer(),
        den: t0.denom(),
    };
    Ok(root_count_below(p, q, hi, true) - root_count_below(p, q, lo, false))
}
