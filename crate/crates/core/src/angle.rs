//! Exact points `e^{2 pi i a/m}` on the unit circle.

use std::fmt;
use std::str::FromStr;

use rug::{Complete, Integer};

use crate::error::{Error, Result};

/// The root of unity `e^{2 pi i num/den}`, stored as a reduced fraction with
/// `0 <= num < den`.
///
/// `den == 1` is exactly the trivial angle (`omega = 1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalAngle {
    num: Integer,
    den: Integer,
}

impl RationalAngle {
    /// Reduces `a/m` to its representative in `[0, 1)` in lowest terms.
    pub fn normalize(a: &Integer, m: &Integer) -> Result<Self> {
        if m.cmp0() != std::cmp::Ordering::Greater {
            return Err(Error::InvalidAngle(format!(
                "denominator must be positive, got {m}"
            )));
        }
        let mut num = a.div_rem_euc_ref(m).complete().1;
        let g = num.gcd_ref(m).complete();
        // gcd(0, m) = m, which collapses 0/m to 0/1.
        num /= &g;
        let den = Integer::from(m / &g);
        Ok(RationalAngle { num, den })
    }

    /// Convenience constructor for machine-sized inputs.
    pub fn new(a: i64, m: i64) -> Result<Self> {
        Self::normalize(&Integer::from(a), &Integer::from(m))
    }

    pub fn trivial() -> Self {
        RationalAngle {
            num: Integer::ZERO,
            den: Integer::from(1),
        }
    }

    pub fn num(&self) -> &Integer {
        &self.num
    }

    pub fn den(&self) -> &Integer {
        &self.den
    }

    pub fn is_trivial(&self) -> bool {
        self.den == 1
    }

    /// `omega^k`.
    pub fn power(&self, k: &Integer) -> Self {
        let a = Integer::from(&self.num * k);
        Self::normalize(&a, &self.den).expect("denominator is positive")
    }

    pub fn power_i64(&self, k: i64) -> Self {
        self.power(&Integer::from(k))
    }

    /// Complex conjugate, `omega^{-1}`.
    pub fn conjugate(&self) -> Self {
        self.power_i64(-1)
    }

    /// Multiplicative order of `omega`.
    pub fn order(&self) -> &Integer {
        &self.den
    }

    /// The angle as an exact fraction of a full turn.
    pub fn to_rational(&self) -> rug::Rational {
        rug::Rational::from((self.num.clone(), self.den.clone()))
    }

    /// Approximate value of `num/den`, for numerical oracles only.
    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64()
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for RationalAngle {
    type Err = Error;

    /// Parses `"a/m"` (unreduced input allowed) or a bare integer `"a"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (a, m) = match s.split_once('/') {
            Some((a, m)) => (a.trim(), m.trim()),
            None => (s, "1"),
        };
        let parse = |t: &str| {
            Integer::from_str_radix(t, 10)
                .map_err(|_| Error::InvalidAngle(format!("not an integer: {t:?}")))
        };
        Self::normalize(&parse(a)?, &parse(m)?)
    }
}
