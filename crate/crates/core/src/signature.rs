//! Levine–Tristram signatures `sigma_K(omega)` at roots of unity.
//!
//! Torus knots are evaluated by counting the points
//! `s = i/p + j/q` (`1 <= i < p`, `1 <= j < q`) against `x` and `1 + x`:
//!
//! ```text
//! sigma_{T(p,q)}(e^{2 pi i x}) = -2 (#{1 < s < 1+x} - #{0 < s < x})
//!                                -  (#{s = 1+x}     - #{s = x})
//! ```
//!
//! The boundary terms give the value at an Alexander root as the average of
//! the two one-sided limits. Positive torus knots have negative signature.
//! Cables use `sigma_{C(m,n;J)}(omega) = sigma_{T(m,n)}(omega) + sigma_J(omega^m)`
//! and connected sums are additive.

use std::fmt;

use rug::Integer;

use crate::angle::RationalAngle;
use crate::error::{Error, Result};
use crate::knot::KnotExpr;
use crate::lattice::{self, Frac};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureValue {
    pub value: Integer,
    /// `theta` is an Alexander root; `value` is then the average of the one-sided limits.
    pub at_jump: bool,
}

impl fmt::Display for SignatureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)?;
        if self.at_jump {
            write!(f, " (at jump)")?;
        }
        Ok(())
    }
}

/// `sigma_K(e^{2 pi i theta})` for a nontrivial angle.
pub fn lt_signature(knot: &KnotExpr, theta: &RationalAngle) -> Result<SignatureValue> {
    if theta.is_trivial() {
        return Err(Error::TrivialAngle);
    }
    Ok(SignatureValue {
        value: signature_value(knot, theta),
        at_jump: knot.has_root_at(theta),
    })
}

/// The signature function including the trivial angle, where it vanishes.
pub(crate) fn signature_value(knot: &KnotExpr, theta: &RationalAngle) -> Integer {
    if theta.is_trivial() {
        return Integer::ZERO;
    }
    match knot {
        KnotExpr::Unknot => Integer::ZERO,
        KnotExpr::Torus { p, q } => torus_signature(p, q, theta),
        KnotExpr::Cable { m, n, companion } => {
            let pattern = KnotExpr::cable_pattern(m, n);
            signature_value(&pattern, theta) + signature_value(companion, &theta.power(m))
        }
        KnotExpr::Sum(parts) => parts
            .iter()
            .map(|k| signature_value(k, theta))
            .fold(Integer::ZERO, |acc, v| acc + v),
    }
}

fn torus_signature(p: &Integer, q: &Integer, theta: &RationalAngle) -> Integer {
    let den = theta.den();
    let zero = Integer::ZERO;
    let x = Frac {
        num: theta.num(),
        den,
    };
    let one = Frac { num: den, den };
    let one_plus = Integer::from(den + theta.num());
    let one_plus_x = Frac {
        num: &one_plus,
        den,
    };
    let origin = Frac { num: &zero, den };

    let lower = lattice::count_between(p, q, origin, x, true, true);
    let upper = lattice::count_between(p, q, one, one_plus_x, true, true);
    let on_lower = lattice::count_between(p, q, origin, x, true, false) - &lower;
    let on_upper = lattice::count_between(p, q, one, one_plus_x, true, false) - &upper;

    let strict = Integer::from(&upper - &lower) * -2i32;
    strict - (on_upper - on_lower)
}
