//! The Fibonacci torus-knot family.
//!
//! `p_1 = 5`, `p_{j+1} = 6 prod_{k<=j} (p_k^2 + 2 p_k) - 1`,
//! `K_j = T(F_{p_j}^2, F_{p_j + 2}^2)` and `n_j = F_{p_j} F_{p_j + 2}`. Each
//! `n_j^2`-surgery on `K_j` has Casson–Gordon signature 2 at the character
//! sending the meridian to `1/n_j`, so the connected sum of the first `v`
//! needs at least `2v - 1` 1-handles in any rational ball it bounds.

use rug::{Complete, Integer};

use crate::cg::{cg_integer_surgery, CgValue};
use crate::error::{Error, Result};
use crate::knot::KnotExpr;

/// Members beyond the third have Fibonacci indices near `10^21`.
pub const MAX_FAMILY_SIZE: u32 = 3;

pub fn fibonacci(n: u32) -> Integer {
    Integer::fibonacci(n).complete()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibFamily {
    pub v: u32,
    pub p: Vec<Integer>,
    pub knots: Vec<KnotExpr>,
    pub n: Vec<Integer>,
}

/// The indices `p_1, ..., p_v`, for any `v`.
pub fn family_indices(v: u32) -> Vec<Integer> {
    let mut p = Vec::with_capacity(v as usize);
    let mut prod = Integer::from(1);
    for j in 0..v {
        let next = if j == 0 { Integer::from(5) } else { Integer::from(&prod * 6u32) - 1u32 };
        prod *= Integer::from(next.square_ref()) + Integer::from(&next * 2u32);
        p.push(next);
    }
    p
}

pub fn fib_family(v: u32) -> Result<FibFamily> {
    if v == 0 {
        return Err(Error::InvalidInput("family size must be at least 1".into()));
    }
    if v > MAX_FAMILY_SIZE {
        return Err(Error::CapExceeded(format!(
            "family size {v}: member {} has Fibonacci index {}",
            MAX_FAMILY_SIZE + 1,
            family_indices(MAX_FAMILY_SIZE + 1)[MAX_FAMILY_SIZE as usize]
        )));
    }
    let p = family_indices(v);
    let (mut knots, mut n) = (Vec::new(), Vec::new());
    for pj in &p {
        let i = pj.to_u32().expect("indices of the first three members fit in u32");
        let (a, b) = (fibonacci(i), fibonacci(i + 2));
        // gcd(F_i, F_{i+2}) = F_gcd(i, 2) = 1.
        knots.push(KnotExpr::torus_unchecked(a.square_ref().complete(), b.square_ref().complete()));
        n.push(a * b);
    }
    for (j, nj) in n.iter().enumerate() {
        if nj.is_even() {
            return Err(Error::Internal(format!("n_{} is even", j + 1)));
        }
        for (k, nk) in n.iter().enumerate().skip(j + 1) {
            if nj.gcd_ref(nk).complete() != 1 {
                return Err(Error::Internal(format!("n_{} and n_{} share a factor", j + 1, k + 1)));
            }
        }
    }
    Ok(FibFamily { v, p, knots, n })
}

/// `(2v - 1, [sigma_1, ..., sigma_v])` with each summand value checked to be 2.
pub fn family_lower_bound(v: u32) -> Result<(Integer, Vec<CgValue>)> {
    let family = fib_family(v)?;
    let mut certificate = Vec::new();
    for (j, (k, nj)) in family.knots.iter().zip(&family.n).enumerate() {
        let value = cg_integer_surgery(k, nj, &Integer::from(1))?;
        if *value.integer() != 2 {
            return Err(Error::Internal(format!("summand {} has value {value}, expected 2", j + 1)));
        }
        certificate.push(value);
    }
    Ok((Integer::from(2 * v - 1), certificate))
}
