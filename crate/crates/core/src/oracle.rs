//! Seifert-matrix route to Levine–Tristram signatures, used to cross-check
//! the lattice-count formulas.
//!
//! `hermitian_signature` evaluates the signature of
//! `H = (1 - w) V + (1 - conj w) V^T` numerically and certifies it. For a
//! shift `s`, banded `L D L^*` factorizations of `H - s I` and `H + s I` give
//! the exact inertias of `H -+ s I + E` with `|E|_2` bounded a priori from the
//! computed factors. Once that bound is below `s`, Weyl's inequality sandwiches
//! `#{l < 0}` and `#{l <= 0}` between the two negative counts. If the counts
//! differ, the gap must equal the nullity of `H`, which is taken from the rank
//! of `H` reduced modulo primes `P = 1 mod ord(w)`.

use num_complex::Complex64;
use rug::integer::IsPrime;
use rug::{Complete, Integer, Rational};

use crate::angle::RationalAngle;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Default bound on `pq` for [`seifert_matrix_torus`].
pub const DEFAULT_ORACLE_CAP: u64 = 1000;

/// `(n-1) x (n-1)`: -1 on the diagonal, 1 on the superdiagonal.
fn lambda(n: usize) -> Vec<Vec<i64>> {
    let k = n - 1;
    let mut m = vec![vec![0; k]; k];
    for i in 0..k {
        m[i][i] = -1;
        if i + 1 < k {
            m[i][i + 1] = 1;
        }
    }
    m
}

/// A Seifert matrix of `T(p,q)`, of size `(p-1)(q-1)`, with `pq` at most
/// [`DEFAULT_ORACLE_CAP`].
pub fn seifert_matrix_torus(p: &Integer, q: &Integer) -> Result<IntMatrix> {
    seifert_matrix_torus_capped(p, q, DEFAULT_ORACLE_CAP)
}

/// `V = -(Lambda_q (x) Lambda_p)`, the Seifert form of the fibre surface of
/// `T(p,q)` seen as the join of `p` and `q` points.
pub fn seifert_matrix_torus_capped(p: &Integer, q: &Integer, cap: u64) -> Result<IntMatrix> {
    if *p < 2 || *q < 2 || p.gcd_ref(q).complete() != 1 {
        return Err(Error::InvalidKnot(format!("T({p},{q}) is not a torus knot")));
    }
    let pq = Integer::from(p * q);
    if pq > cap {
        return Err(Error::CapExceeded(format!(
            "Seifert matrix of T({p},{q}) needs pq <= {cap}"
        )));
    }
    // Put the smaller parameter on the inner index so the matrix is banded
    // with half-bandwidth min(p, q).
    let (lo, hi) = if p < q { (p, q) } else { (q, p) };
    let (a, b) = (lo.to_usize().unwrap(), hi.to_usize().unwrap());
    let (la, lb) = (lambda(a), lambda(b));
    let n = (a - 1) * (b - 1);
    let mut v = IntMatrix::zeros(n, n);
    for i in 0..b - 1 {
        for k in 0..b - 1 {
            if lb[i][k] == 0 {
                continue;
            }
            for j in 0..a - 1 {
                for l in 0..a - 1 {
                    let e = lb[i][k] * la[j][l];
                    if e != 0 {
                        v[(i * (a - 1) + j, k * (a - 1) + l)] = Integer::from(-e);
                    }
                }
            }
        }
    }
    Ok(v)
}

/// `det(V - t V^T)` as a coefficient list (constant term first), by exact
/// evaluation at `t = 0, ..., n` and interpolation.
pub fn seifert_polynomial(v: &IntMatrix) -> Result<Vec<Integer>> {
    if !v.is_square() {
        return Err(Error::InvalidInput("Seifert matrix must be square".into()));
    }
    let n = v.rows();
    let vt = v.transpose();
    let xs: Vec<Integer> = (0..=n).map(Integer::from).collect();
    let mut ys = Vec::with_capacity(n + 1);
    for t in &xs {
        let mut m = v.clone();
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] -= Integer::from(t * &vt[(i, j)]);
            }
        }
        ys.push(Rational::from(m.determinant()?));
    }
    // Newton divided differences.
    let mut coef = ys;
    for level in 1..=n {
        for i in (level..=n).rev() {
            let d = Rational::from(&coef[i] - &coef[i - 1]);
            coef[i] = d / Integer::from(&xs[i] - &xs[i - level]);
        }
    }
    let mut poly = vec![Rational::new(); n + 1];
    for k in (0..=n).rev() {
        // poly = poly * (t - x_k) + coef[k]
        let mut next = vec![Rational::new(); n + 1];
        for (d, c) in poly.iter().enumerate() {
            if d < n {
                next[d + 1] += c;
            }
            next[d] -= Rational::from(c * &xs[k]);
        }
        next[0] += &coef[k];
        poly = next;
    }
    poly.into_iter()
        .map(|c| {
            if *c.denom() == 1 {
                Ok(c.into_numer_denom().0)
            } else {
                Err(Error::Internal("non-integral interpolated coefficient".into()))
            }
        })
        .collect()
}

/// `(t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1))`.
pub fn torus_alexander_polynomial(p: usize, q: usize) -> Vec<Integer> {
    let binom = |k: usize| {
        let mut c = vec![Integer::ZERO; k + 1];
        c[0] = Integer::from(-1);
        c[k] = Integer::from(1);
        c
    };
    let num = poly_mul(&binom(p * q), &binom(1));
    let den = poly_mul(&binom(p), &binom(q));
    poly_div_exact(&num, &den)
}

fn poly_mul(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
    let mut out = vec![Integer::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += Integer::from(x * y);
        }
    }
    out
}

/// Division by a monic polynomial that is known to divide.
fn poly_div_exact(num: &[Integer], den: &[Integer]) -> Vec<Integer> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![Integer::ZERO; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= Integer::from(&c * d);
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|r| r.cmp0().is_eq()));
    quot
}

/// Equality up to multiplication by `+-t^k`.
pub fn equal_up_to_units(a: &[Integer], b: &[Integer]) -> bool {
    fn trim(p: &[Integer]) -> &[Integer] {
        let start = p.iter().position(|c| c.cmp0().is_ne()).unwrap_or(p.len());
        let end = p.iter().rposition(|c| c.cmp0().is_ne()).map_or(start, |e| e + 1);
        &p[start..end]
    }
    let (a, b) = (trim(a), trim(b));
    a.len() == b.len()
        && (a.iter().zip(b).all(|(x, y)| x == y)
            || a.iter().zip(b).all(|(x, y)| Integer::from(-x) == *y))
}

const UNIT: f64 = f64::EPSILON / 2.0;

/// Lower band of a Hermitian matrix: entry `(i, j)` with `i - b <= j <= i`.
struct Band {
    n: usize,
    b: usize,
    data: Vec<Complex64>,
}

impl Band {
    fn new(n: usize, b: usize) -> Self {
        Band {
            n,
            b,
            data: vec![Complex64::new(0.0, 0.0); n * (b + 1)],
        }
    }

    fn lo(&self, i: usize) -> usize {
        i.saturating_sub(self.b)
    }

    fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * (self.b + 1) + j + self.b - i]
    }

    fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * (self.b + 1) + j + self.b - i] = z;
    }
}

/// Signature of `(1 - w) V + (1 - conj w) V^T` for `w = e^{2 pi i theta}`.
pub fn hermitian_signature(v: &IntMatrix, theta: &RationalAngle) -> Result<i64> {
    if !v.is_square() {
        return Err(Error::InvalidInput("Seifert matrix must be square".into()));
    }
    if theta.is_trivial() {
        return Err(Error::TrivialAngle);
    }
    let n = v.rows();
    let limit = 1i64 << 40;
    let mut vi = Vec::with_capacity(n * n);
    for i in 0..n {
        for e in v.row(i) {
            match e.to_i64() {
                Some(x) if x.abs() < limit => vi.push(x),
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "oracle entries must be below 2^40 in absolute value, got {e}"
                    )))
                }
            }
        }
    }
    let b = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| vi[i * n + j] != 0)
        .map(|(i, j)| i.abs_diff(j))
        .max()
        .unwrap_or(0);

    let x = theta.to_f64() * std::f64::consts::TAU;
    let w = Complex64::new(x.cos(), x.sin());
    let (c1, c2) = (Complex64::new(1.0, 0.0) - w, Complex64::new(1.0, 0.0) - w.conj());
    let mut h = Band::new(n, b);
    let mut vnorm = 0.0;
    for i in 0..n {
        for j in h.lo(i)..=i {
            let (a, t) = (vi[i * n + j] as f64, vi[j * n + i] as f64);
            let mut z = c1 * a + c2 * t;
            if i == j {
                z.im = 0.0;
            }
            h.set(i, j, z);
            let s = (a.abs() + t.abs()).powi(2);
            vnorm += if i == j { s } else { 2.0 * s };
        }
    }
    // |w_computed - w| is a few units in the last place; 32u is generous.
    let input_err = 32.0 * UNIT * vnorm.sqrt();

    // Shifts are tried from small to large; jitter keeps them off the
    // eigenvalues of leading blocks.
    let diag_max = (0..n).map(|i| h.at(i, i).re.abs()).fold(0.0, f64::max);
    let shifts: Vec<f64> = (-11..0)
        .flat_map(|e| [1.0, 2.37, 5.13].map(|m| m * 10f64.powi(e)))
        .collect();
    let mut nullity = None;
    let mut last = String::from("no usable shift");
    // The first pass lets the latest error bound skip hopeless shifts. A
    // near-singular leading block at one shift can mislead it, so a second
    // pass tries every shift.
    for skip in [true, false] {
        let mut floor = input_err;
        for &s in &shifts {
            if skip && s <= floor {
                continue;
            }
            let Some((above, b1)) = negatives(&h, -s, diag_max) else {
                continue;
            };
            floor = b1 + input_err;
            if floor >= s {
                continue;
            }
            let Some((below, b2)) = negatives(&h, s, diag_max) else {
                continue;
            };
            floor = b2 + input_err;
            if floor >= s || above < below {
                continue;
            }
            // below <= #{l < 0} and #{l <= 0} <= above.
            let window = above - below;
            if window > 0 {
                let k = match nullity {
                    Some(k) => k,
                    None => *nullity.insert(modular_nullity(&vi, n, theta)?),
                };
                if window != k {
                    // Some nonzero eigenvalue lies within s of zero; larger
                    // shifts only widen the window.
                    last = format!("{window} eigenvalues within {s:e} of zero but nullity {k}");
                    break;
                }
            }
            return Ok(n as i64 - above as i64 - below as i64);
        }
    }
    Err(Error::Uncertified(format!("{last} for a {n}x{n} matrix at {theta}")))
}

/// Number of negative pivots of `H + shift I` under `L D L^*` without
/// pivoting, together with a bound on the backward error: the computed factors
/// satisfy `L D L^* = H + shift I + E` with `|E| <= g |L| |D| |L^*|` entrywise,
/// so `|E|_2` is at most `g` times the largest row sum of that product.
fn negatives(h: &Band, shift: f64, diag_max: f64) -> Option<(usize, f64)> {
    let (n, b) = (h.n, h.b);
    let mut l = Band::new(n, b);
    let mut d = vec![0.0f64; n];
    for j in 0..n {
        let mut dj = h.at(j, j).re + shift;
        for k in l.lo(j)..j {
            dj -= l.at(j, k).norm_sqr() * d[k];
        }
        if dj == 0.0 || !dj.is_finite() {
            return None;
        }
        d[j] = dj;
        l.set(j, j, Complex64::new(1.0, 0.0));
        for i in j + 1..n.min(j + b + 1) {
            let mut s = h.at(i, j);
            for k in l.lo(i)..j {
                s -= l.at(i, k) * d[k] * l.at(j, k).conj();
            }
            l.set(i, j, s / dj);
        }
    }

    // Row sums of |L| |D| |L^*| via three banded products with the ones vector.
    let mut y = vec![0.0f64; n];
    for i in 0..n {
        for k in l.lo(i)..=i {
            y[k] += l.at(i, k).norm();
        }
    }
    let mut top = 0.0f64;
    for i in 0..n {
        let r: f64 = (l.lo(i)..=i).map(|k| l.at(i, k).norm() * d[k].abs() * y[k]).sum();
        top = top.max(r);
    }
    let g = 8.0 * (b as f64 + 3.0) * UNIT;
    let g = g / (1.0 - g);
    // Forming h_ii + shift rounds once more.
    let bound = (g * top + UNIT * (diag_max + shift.abs())) * (1.0 + 1e-6);
    let neg = d.iter().filter(|&&v| v < 0.0).count();
    bound.is_finite().then_some((neg, bound))
}

// Moduli stay below 2^31, so products fit in a u64.
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The largest primes below `2^31` that are `1 mod order`, with an element of
/// exact multiplicative order `order` in each.
fn cyclotomic_primes(order: u64, count: usize) -> Vec<(u64, u64)> {
    let factors = prime_factors(order);
    let mut out = Vec::with_capacity(count);
    let mut cand = ((1u64 << 31) - 1) / order * order + 1;
    while out.len() < count {
        cand -= order;
        if Integer::from(cand).is_probably_prime(24) == IsPrime::No {
            continue;
        }
        let root = (2..)
            .map(|h| pow_mod(h, (cand - 1) / order, cand))
            .find(|&g| factors.iter().all(|&f| pow_mod(g, order / f, cand) != 1))
            .expect("a primitive root exists");
        out.push((cand, root));
    }
    out
}

/// `n - rank` of `H` reduced along `w -> g` modulo two primes, taking the
/// larger rank. Reduction can only lower the rank; a drop modulo both primes
/// requires both to divide the norm of a fixed nonzero minor.
fn modular_nullity(vi: &[i64], n: usize, theta: &RationalAngle) -> Result<usize> {
    let order = theta
        .den()
        .to_u64()
        .filter(|&o| o < 1 << 20)
        .ok_or_else(|| Error::InvalidInput(format!("angle {theta} has too large an order for the oracle")))?;
    let mut best = 0;
    for (p, g) in cyclotomic_primes(order, 2) {
        let ginv = pow_mod(g, order - 1, p);
        let (c1, c2) = ((1 + p - g) % p, (1 + p - ginv) % p);
        let red = |x: i64| x.rem_euclid(p as i64) as u64;
        let mut m = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = (mul_mod(c1, red(vi[i * n + j]), p) + mul_mod(c2, red(vi[j * n + i]), p)) % p;
            }
        }
        best = best.max(rank_mod(&mut m, n, p));
    }
    Ok(n - best)
}

/// Rank by Gaussian elimination without row exchanges, tracking each row's
/// rightmost nonzero so that banded inputs cost `O(n b^2)`.
fn rank_mod(m: &mut [u64], n: usize, p: u64) -> usize {
    let mut hi: Vec<usize> = (0..n)
        .map(|i| (0..n).rev().find(|&j| m[i * n + j] != 0).unwrap_or(0))
        .collect();
    let lo: Vec<usize> = (0..n)
        .map(|i| (0..n).find(|&j| m[i * n + j] != 0).unwrap_or(n))
        .collect();
    let mut used = vec![false; n];
    let mut rank = 0;
    // Rows whose leading column is at most c; rows join in order of lo.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&r| lo[r]);
    let mut active: Vec<usize> = Vec::new();
    let mut next = 0;
    for c in 0..n {
        while next < n && lo[order[next]] <= c {
            active.push(order[next]);
            next += 1;
        }
        active.retain(|&r| !used[r]);
        let Some(&s) = active.iter().find(|&&r| m[r * n + c] != 0) else {
            continue;
        };
        used[s] = true;
        rank += 1;
        let inv = pow_mod(m[s * n + c], p - 2, p);
        for &r in &active {
            if r == s || m[r * n + c] == 0 {
                continue;
            }
            let f = mul_mod(m[r * n + c], inv, p);
            for j in c..=hi[s] {
                let sub = mul_mod(f, m[s * n + j], p);
                m[r * n + j] = (m[r * n + j] + p - sub) % p;
            }
            hi[r] = hi[r].max(hi[s]);
        }
    }
    rank
}
