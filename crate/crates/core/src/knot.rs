//! Knot expressions: torus knots, their cables and connected sums.
//!
//! Text syntax (whitespace is ignored):
//!
//! ```text
//! expr := term ("#" term)*
//! term := "U" | "T(" int "," int ")" | "C(" int "," int ";" expr ")"
//! ```
//!
//! `C(m,n;J)` is the `(m,n)`-cable of `J`. Expressions are canonicalized on
//! construction (torus parameters ordered, sums flattened and sorted, unknot
//! summands dropped) so that equal knots compare equal structurally.

use std::fmt;
use std::str::FromStr;

use rug::{Complete, Integer, Rational};

use crate::angle::RationalAngle;
use crate::error::{Error, Result};
use crate::lattice;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KnotExpr {
    Unknot,
    /// The positive torus knot `T(p,q)`, stored with `2 <= p < q`.
    Torus { p: Integer, q: Integer },
    /// The `(m,n)`-cable of `companion`: `m >= 2`, `n >= 1`, `gcd(m,n) = 1`.
    Cable {
        m: Integer,
        n: Integer,
        companion: Box<KnotExpr>,
    },
    /// At least two non-trivial summands, none of them a sum, sorted.
    Sum(Vec<KnotExpr>),
}

impl KnotExpr {
    pub fn torus(p: Integer, q: Integer) -> Result<Self> {
        if p < 2 || q < 2 {
            return Err(Error::InvalidKnot(format!(
                "torus parameters must be at least 2 (write T(1,q) as U), got T({p},{q})"
            )));
        }
        if p.gcd_ref(&q).complete() != 1 {
            return Err(Error::InvalidKnot(format!(
                "non-coprime torus parameters in T({p},{q})"
            )));
        }
        Ok(Self::torus_unchecked(p, q))
    }

    /// Builds `T(p,q)` without the coprimality check, for parameters whose
    /// coprimality is known by construction and too large to re-verify cheaply.
    pub(crate) fn torus_unchecked(p: Integer, q: Integer) -> Self {
        debug_assert!(p >= 2 && q >= 2);
        if p <= q {
            KnotExpr::Torus { p, q }
        } else {
            KnotExpr::Torus { p: q, q: p }
        }
    }

    pub fn torus_i64(p: i64, q: i64) -> Result<Self> {
        Self::torus(Integer::from(p), Integer::from(q))
    }

    pub fn cable(m: Integer, n: Integer, companion: KnotExpr) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidKnot(format!(
                "cable winding number must be at least 2, got C({m},{n};..)"
            )));
        }
        if n < 1 {
            return Err(Error::InvalidKnot(format!(
                "negative cables are not supported, got C({m},{n};..)"
            )));
        }
        if m.gcd_ref(&n).complete() != 1 {
            return Err(Error::InvalidKnot(format!(
                "non-coprime cable parameters in C({m},{n};..)"
            )));
        }
        Ok(KnotExpr::Cable {
            m,
            n,
            companion: Box::new(companion),
        })
    }

    /// Connected sum, canonicalized.
    pub fn sum(parts: Vec<KnotExpr>) -> KnotExpr {
        let mut flat = Vec::new();
        for part in parts {
            match part {
                KnotExpr::Unknot => {}
                KnotExpr::Sum(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        flat.sort();
        match flat.len() {
            0 => KnotExpr::Unknot,
            1 => flat.pop().unwrap(),
            _ => KnotExpr::Sum(flat),
        }
    }

    /// The cable pattern `T(m,n)` as a knot in its own right (the unknot when `n = 1`).
    pub(crate) fn cable_pattern(m: &Integer, n: &Integer) -> KnotExpr {
        if *n == 1 {
            KnotExpr::Unknot
        } else {
            KnotExpr::torus_unchecked(m.clone(), n.clone())
        }
    }

    /// Whether `e^{2 pi i theta}` is a root of the Alexander polynomial.
    pub fn is_alexander_root(&self, theta: &RationalAngle) -> Result<bool> {
        if theta.is_trivial() {
            return Err(Error::TrivialAngle);
        }
        Ok(self.has_root_at(theta))
    }

    /// As [`is_alexander_root`](Self::is_alexander_root), with `false` at the
    /// trivial angle (`Delta(1) = 1`).
    pub(crate) fn has_root_at(&self, theta: &RationalAngle) -> bool {
        if theta.is_trivial() {
            return false;
        }
        match self {
            KnotExpr::Unknot => false,
            KnotExpr::Torus { p, q } => torus_root(p, q, theta),
            KnotExpr::Cable { m, n, companion } => {
                Self::cable_pattern(m, n).has_root_at(theta)
                    || companion.has_root_at(&theta.power(m))
            }
            KnotExpr::Sum(parts) => parts.iter().any(|k| k.has_root_at(theta)),
        }
    }

    /// Number of Alexander roots `e^{2 pi i t}` with `t0 < t < t1`, for a torus knot.
    /// The roots are simple, so this is also the number of jumps of the
    /// signature function on the open arc.
    pub fn count_alexander_roots_in_arc(&self, t0: &Rational, t1: &Rational) -> Result<Integer> {
        match self {
            KnotExpr::Torus { p, q } => lattice::root_count_in_open_arc(p, q, t0, t1),
            other => Err(Error::NotTorus(other.to_string())),
        }
    }
}

/// `theta = k/pq` with `p ∤ k`, `q ∤ k`.
fn torus_root(p: &Integer, q: &Integer, theta: &RationalAngle) -> bool {
    let pq = Integer::from(p * q);
    if !pq.is_divisible(theta.den()) {
        return false;
    }
    let k = Integer::from(&pq / theta.den()) * theta.num();
    !k.is_divisible(p) && !k.is_divisible(q)
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Unknot => write!(f, "U"),
            KnotExpr::Torus { p, q } => write!(f, "T({p},{q})"),
            KnotExpr::Cable { m, n, companion } => write!(f, "C({m},{n};{companion})"),
            KnotExpr::Sum(parts) => {
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " # ")?;
                    }
                    write!(f, "{part}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for KnotExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let expr = parser.expr()?;
        parser.skip_ws();
        if parser.pos < parser.src.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(expr)
    }
}

pub fn parse(text: &str) -> Result<KnotExpr> {
    text.parse()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn int(&mut self) -> Result<Integer> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a non-negative integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(Integer::from_str_radix(digits, 10).expect("digits parse"))
    }

    fn expr(&mut self) -> Result<KnotExpr> {
        let mut parts = vec![self.term()?];
        while self.peek() == Some(b'#') {
            self.pos += 1;
            parts.push(self.term()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            KnotExpr::sum(parts)
        })
    }

    fn term(&mut self) -> Result<KnotExpr> {
        match self.peek() {
            Some(b'U') => {
                self.pos += 1;
                Ok(KnotExpr::Unknot)
            }
            Some(b'T') => {
                self.pos += 1;
                self.expect(b'(')?;
                let at = self.pos;
                let p = self.int()?;
                self.expect(b',')?;
                let q = self.int()?;
                self.expect(b')')?;
                KnotExpr::torus(p, q).map_err(|e| self.at(at, e))
            }
            Some(b'C') => {
                self.pos += 1;
                self.expect(b'(')?;
                let at = self.pos;
                let m = self.int()?;
                self.expect(b',')?;
                let n = self.int()?;
                self.expect(b';')?;
                let companion = self.expr()?;
                self.expect(b')')?;
                KnotExpr::cable(m, n, companion).map_err(|e| self.at(at, e))
            }
            Some(_) => Err(self.error("expected 'U', 'T(' or 'C('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn at(&self, pos: usize, err: Error) -> Error {
        match err {
            Error::InvalidKnot(msg) => Error::InvalidKnot(format!("{msg} (at position {pos})")),
            other => other,
        }
    }
}
