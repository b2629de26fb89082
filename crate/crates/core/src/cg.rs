//! Casson–Gordon signatures of surgeries, computed from a surgery link with
//! colours `n_i` on its components:
//!
//! ```text
//! sigma(Y, phi) = sigma_L(alpha) - sum_{i<j} L_ij - sign(L)
//!                 + (2/t^2) sum_{i,j} (t - n_i) n_j L_ij
//! ```
//!
//! where `L` is the linking matrix and `t` the order of the character. For a
//! knot the colour is `a` and `sigma_L` is the Levine–Tristram signature at
//! `a/t`; for a chain of unknots `sigma_L` vanishes.

use std::fmt;

use rug::{Complete, Integer, Rational};

use crate::angle::RationalAngle;
use crate::chain::{chain_linking_matrix, chain_signature, neg_continued_fraction};
use crate::error::{Error, Result};
use crate::knot::KnotExpr;
use crate::signature::lt_signature;

/// A Casson–Gordon signature. Always an integer; construction checks this.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CgValue {
    pub value: Rational,
}

impl CgValue {
    fn checked(value: Rational, what: impl FnOnce() -> String) -> Result<Self> {
        if *value.denom() != 1 {
            return Err(Error::Internal(format!("{} evaluated to non-integer {value}", what())));
        }
        Ok(CgValue { value })
    }

    pub fn from_integer(v: Integer) -> Self {
        CgValue { value: v.into() }
    }

    pub fn integer(&self) -> &Integer {
        self.value.numer()
    }
}

impl fmt::Display for CgValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

fn check_character(m: &Integer, a: &Integer) -> Result<()> {
    if *m < 2 {
        return Err(Error::InvalidInput(format!("character order must be at least 2, got {m}")));
    }
    if a.cmp0().is_le() || a >= m {
        return Err(Error::InvalidInput(format!("need 1 <= a < {m}, got a = {a}")));
    }
    if a.gcd_ref(m).complete() != 1 {
        return Err(Error::NotCoprime(a.to_string(), m.to_string()));
    }
    Ok(())
}

/// `sigma_K(e^{2 pi i a/m}) - 1 + 2a(m - a)`: the invariant of `m^2`-surgery on
/// `K` for the character sending the meridian to `a/m`.
pub fn cg_integer_surgery(knot: &KnotExpr, m: &Integer, a: &Integer) -> Result<CgValue> {
    check_character(m, a)?;
    let theta = RationalAngle::normalize(a, m)?;
    let sigma = lt_signature(knot, &theta)?.value;
    let v = sigma - 1u32 + Integer::from(2u32 * a) * Integer::from(m - a);
    Ok(CgValue::from_integer(v))
}

/// Colours of the chain for the character of order `t` sending the first
/// meridian to `a`: `n_{i+1} = -a_i n_i - n_{i-1} mod t`, closing with
/// `a_n n_n + n_{n-1} = 0 mod t`.
pub fn chain_colors(t: &Integer, a: &Integer, framings: &[Integer]) -> Result<Vec<Integer>> {
    if *t < 2 {
        return Err(Error::InvalidInput(format!("character order must be at least 2, got {t}")));
    }
    if a.cmp0().is_le() || a >= t {
        return Err(Error::InvalidInput(format!("need 1 <= a < {t}, got a = {a}")));
    }
    if framings.is_empty() {
        return Err(Error::InvalidInput("empty chain".into()));
    }
    let mut colors = vec![a.clone()];
    let mut prev = Integer::ZERO;
    for f in &framings[..framings.len() - 1] {
        let cur = colors.last().unwrap();
        let next = (-Integer::from(f * cur) - &prev).div_rem_euc_ref(t).complete().1;
        prev = cur.clone();
        colors.push(next);
    }
    let last = colors.len() - 1;
    let closing = Integer::from(&framings[last] * &colors[last]) + &prev;
    if !closing.is_divisible(t) {
        return Err(Error::InvalidCharacter(format!(
            "colour {a} does not extend over the chain {framings:?} mod {t}"
        )));
    }
    for (i, n) in colors.iter().enumerate() {
        if n.cmp0().is_eq() || n.gcd_ref(t).complete() != 1 {
            return Err(Error::Unsupported(format!(
                "colour {n} on component {} is not a unit mod {t}",
                i + 1
            )));
        }
    }
    Ok(colors)
}

/// The invariant of `L(p, -q) = S^3_{p/q}(U)` for the character of order `t`
/// sending the first meridian of the chain presentation to `a`.
pub fn cg_lens(p: &Integer, q: &Integer, t: &Integer, a: &Integer) -> Result<CgValue> {
    let framings = neg_continued_fraction(p, q)?;
    let colors = chain_colors(t, a, &framings)?;
    let lambda = chain_linking_matrix(&framings);
    let n = framings.len();

    let mut linking = Integer::ZERO;
    let mut weighted = Integer::ZERO;
    for i in 0..n {
        for j in i.saturating_sub(1)..(i + 2).min(n) {
            let l = &lambda[(i, j)];
            if i < j {
                linking += l;
            }
            weighted += Integer::from(t - &colors[i]) * &colors[j] * l;
        }
    }
    let t2 = t.square_ref().complete();
    let value = Rational::from((weighted * 2u32, t2)) - linking - chain_signature(&framings);
    CgValue::checked(value, || format!("cg_lens({p}, {q}, {t}, {a})"))
}

/// `sigma_K(e^{2 pi i a/m}) + sigma(L(m^2, -q), chi_a)`, the invariant of
/// `m^2/q`-surgery on `K`.
pub fn cg_rational_surgery(knot: &KnotExpr, m: &Integer, q: &Integer, a: &Integer) -> Result<CgValue> {
    check_character(m, a)?;
    let m2 = m.square_ref().complete();
    if q.cmp0().is_le() || *q >= m2 {
        return Err(Error::InvalidInput(format!("need 1 <= q < m^2 = {m2}, got q = {q}")));
    }
    if q.gcd_ref(&m2).complete() != 1 {
        return Err(Error::NotCoprime(q.to_string(), m2.to_string()));
    }
    let theta = RationalAngle::normalize(a, m)?;
    let sigma = lt_signature(knot, &theta)?.value;
    let lens = cg_lens(&m2, q, m, a)?;
    Ok(CgValue { value: lens.value + sigma })
}

/// Invariants add under connected sum.
pub fn cg_connected_sum(values: &[CgValue]) -> CgValue {
    CgValue { value: values.iter().map(|v| &v.value).sum() }
}
