//! Obstructions to rational homology balls with few 1-handles, and lower
//! bounds on fusion numbers.
//!
//! If `Y` bounds a rational homology ball with a single 1-handle and no
//! 3-handles, every Casson–Gordon signature of `Y` for a character of the
//! right kind has absolute value at most 1. More generally a ball contains at
//! least `|sigma(Y, phi)| - 1` odd-index handles.

use std::collections::HashMap;
use std::fmt;

use rug::{Complete, Integer};

use crate::abelian::{characters_vanishing_on, enumerate_subgroups_of_index, FiniteAbelianGroup, Subgroup};
use crate::cg::{cg_integer_surgery, cg_lens, cg_rational_surgery, CgValue};
use crate::error::{Error, Result};
use crate::knot::KnotExpr;
use crate::matrix::IntMatrix;
use crate::snf::cokernel_analysis;

/// Largest `m` accepted by the character sweeps.
pub const SWEEP_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Obstructed,
    Pass,
    /// No obstruction among the evaluated characters, but some were skipped.
    PassPartial,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Obstructed => "obstructed",
            Verdict::Pass => "pass",
            Verdict::PassPartial => "pass (partial)",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub verdict: Verdict,
    /// Every evaluated `(a, value)`, sorted by `a`.
    pub values: Vec<(u64, Integer)>,
    /// The evaluated pairs with `|value| > 1`.
    pub witnesses: Vec<(u64, Integer)>,
    pub skipped: Vec<(u64, String)>,
}

impl ObstructionReport {
    fn from_sweep(values: Vec<(u64, Integer)>, skipped: Vec<(u64, String)>) -> Self {
        let witnesses: Vec<_> = values.iter().filter(|(_, v)| v.cmp_abs(&Integer::from(1)).is_gt()).cloned().collect();
        let verdict = if !witnesses.is_empty() {
            Verdict::Obstructed
        } else if skipped.is_empty() {
            Verdict::Pass
        } else {
            Verdict::PassPartial
        };
        ObstructionReport {
            verdict,
            values,
            witnesses,
            skipped,
        }
    }
}

fn sweep_modulus(m: &Integer) -> Result<u64> {
    match m.to_u64() {
        Some(v) if (2..=SWEEP_CAP).contains(&v) => Ok(v),
        Some(v) if v < 2 => Err(Error::InvalidInput(format!("m must be at least 2, got {m}"))),
        _ => Err(Error::CapExceeded(format!("character sweeps need m <= {SWEEP_CAP}, got {m}"))),
    }
}

fn sweep(m: u64, mut eval: impl FnMut(&Integer) -> Result<CgValue>) -> Result<ObstructionReport> {
    let (mut values, mut skipped) = (Vec::new(), Vec::new());
    for a in (1..m).filter(|&a| gcd(a, m) == 1) {
        match eval(&Integer::from(a)) {
            Ok(v) => values.push((a, v.integer().clone())),
            Err(e @ (Error::Unsupported(_) | Error::InvalidCharacter(_))) => skipped.push((a, e.to_string())),
            Err(e) => return Err(e),
        }
    }
    Ok(ObstructionReport::from_sweep(values, skipped))
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Sweeps `cg_integer_surgery(K, m, a)` over the units `a` mod `m`.
pub fn one_handle_obstruction_integer(knot: &KnotExpr, m: &Integer) -> Result<ObstructionReport> {
    let mv = sweep_modulus(m)?;
    sweep(mv, |a| cg_integer_surgery(knot, m, a))
}

/// Sweeps `cg_rational_surgery(K, m, q, a)` over the units `a` mod `m`.
pub fn one_handle_obstruction_rational(knot: &KnotExpr, m: &Integer, q: &Integer) -> Result<ObstructionReport> {
    let mv = sweep_modulus(m)?;
    let m2 = m.square_ref().complete();
    if q.gcd_ref(&m2).complete() != 1 {
        return Err(Error::NotCoprime(q.to_string(), m2.to_string()));
    }
    sweep(mv, |a| cg_rational_surgery(knot, m, q, a))
}

/// `max(0, |sigma| - 1)` odd-index handles are forced.
pub fn odd_handle_lower_bound(sigma: &CgValue) -> Integer {
    let v = Integer::from(sigma.integer().abs_ref()) - 1u32;
    v.max(Integer::ZERO)
}

/// For `H_1(Y)` cyclic of order `m^2`: whether characters of order `k` are
/// among those the obstruction applies to, i.e. `k | m`.
pub fn character_extends(order: &Integer, k: &Integer) -> Result<bool> {
    if order.cmp0().is_le() || !order.is_perfect_square() {
        return Err(Error::NonSquareOrder(order.to_string()));
    }
    if k.cmp0().is_le() {
        return Err(Error::InvalidInput(format!("character order must be positive, got {k}")));
    }
    Ok(order.sqrt_ref().complete().is_divisible(k))
}

/// `ceil(g/2)` 1-handles, `g` the minimal number of generators of the group
/// presented by `a`.
pub fn generator_one_handle_bound(a: &IntMatrix) -> usize {
    cokernel_analysis(a).min_generators.div_ceil(2)
}

/// Per-subgroup data of a min-max fusion bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupMax {
    pub subgroup: Subgroup,
    /// Largest `|sigma|` over the evaluated characters; 0 if none were.
    pub max_abs: Integer,
    /// A character attaining `max_abs`, as coefficients on the summands.
    pub argmax: Option<Vec<u64>>,
    pub evaluated: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionMinMax {
    pub bound: Integer,
    /// Each summand `L(p, q)` as the surgery `p/q'` on the unknot.
    pub conversions: Vec<(u64, u64, u64)>,
    pub subgroups: Vec<SubgroupMax>,
}

/// `min_H max_phi |sigma(Y, phi)| - 1` (at least 0) for `Y` the connected sum
/// of the lens spaces `L(p_i, q_i)`, over subgroups `H` of index
/// `sqrt(prod p_i)` and nontrivial characters vanishing on `H`.
///
/// `L(p, q)` is `p/q'`-surgery on the unknot with `q' = -q mod p`. A character
/// sends the first chain meridian of summand `i` to `c_i / p_i`; summands where
/// it is trivial contribute 0. Characters with an unsupported colour are
/// skipped, which can only lower the maximum, so the bound stays valid.
pub fn fusion_bound_minmax(summands: &[(u64, u64)]) -> Result<FusionMinMax> {
    if summands.is_empty() {
        return Err(Error::InvalidInput("need at least one lens space summand".into()));
    }
    let mut conversions = Vec::new();
    for &(p, q) in summands {
        if p < 2 || q == 0 || gcd(p, q) != 1 {
            return Err(Error::InvalidInput(format!("L({p},{q}) needs p >= 2 and q coprime to p")));
        }
        let q_prime = (p - q % p) % p;
        conversions.push((p, q, q_prime));
    }
    let group = FiniteAbelianGroup::new(summands.iter().map(|s| s.0).collect())?;
    let order = Integer::from(group.order());
    if !order.is_perfect_square() {
        return Err(Error::NonSquareOrder(order.to_string()));
    }
    let index = order.sqrt().to_u64().expect("below the group cap");

    // sigma of summand i at coefficient c, cached.
    let mut cache: HashMap<(usize, u64), Option<Integer>> = HashMap::new();
    let mut summand_value = |i: usize, c: u64| -> Result<Option<Integer>> {
        if let Some(v) = cache.get(&(i, c)) {
            return Ok(v.clone());
        }
        let (p, _, qp) = conversions[i];
        let g = gcd(c, p);
        let v = if c == 0 {
            Some(Integer::ZERO)
        } else {
            let (t, a) = (Integer::from(p / g), Integer::from(c / g));
            match cg_lens(&Integer::from(p), &Integer::from(qp), &t, &a) {
                Ok(v) => Some(v.integer().clone()),
                Err(Error::Unsupported(_)) => None,
                Err(Error::InvalidCharacter(msg)) => {
                    return Err(Error::Internal(format!("a character of H_1 failed the chain relations: {msg}")))
                }
                Err(e) => return Err(e),
            }
        };
        cache.insert((i, c), v.clone());
        Ok(v)
    };

    let mut subgroups = Vec::new();
    for h in enumerate_subgroups_of_index(&group, index)? {
        let mut best = SubgroupMax {
            subgroup: h.clone(),
            max_abs: Integer::ZERO,
            argmax: None,
            evaluated: 0,
            skipped: 0,
        };
        for chi in characters_vanishing_on(&group, &h) {
            let coeffs = chi.coefficients(&group);
            let mut total = Some(Integer::ZERO);
            for (i, &c) in coeffs.iter().enumerate() {
                total = match (total, summand_value(i, c)?) {
                    (Some(t), Some(v)) => Some(t + v),
                    _ => None,
                };
            }
            match total {
                Some(t) => {
                    best.evaluated += 1;
                    let t = t.abs();
                    if t > best.max_abs || best.argmax.is_none() {
                        best.max_abs = t;
                        best.argmax = Some(coeffs);
                    }
                }
                None => best.skipped += 1,
            }
        }
        subgroups.push(best);
    }
    let min = subgroups
        .iter()
        .map(|s| s.max_abs.clone())
        .min()
        .ok_or_else(|| Error::Internal("no subgroup of square-root index".into()))?;
    let bound = (min - 1u32).max(Integer::ZERO);
    Ok(FusionMinMax {
        bound,
        conversions,
        subgroups,
    })
}

/// Fusion number bound from a surgery description of the double branched
/// cover, `Sigma(K) = S^3_{m^2}(J)`: a ribbon disc with one band would give a
/// ball with one 1-handle and no 3-handles, so an obstruction forces 2.
pub fn fusion_bound_via_surgery(surgery_knot: &KnotExpr, m: &Integer) -> Result<Integer> {
    let report = one_handle_obstruction_integer(surgery_knot, m)?;
    Ok(Integer::from(if report.verdict == Verdict::Obstructed { 2 } else { 1 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::parse;

    fn z(x: i64) -> Integer {
        Integer::from(x)
    }

    fn pairs(xs: &[(u64, i64)]) -> Vec<(u64, Integer)> {
        xs.iter().map(|&(a, v)| (a, z(v))).collect()
    }

    #[test]
    fn integer_sweeps() {
        let r = one_handle_obstruction_integer(&parse("T(4,25)").unwrap(), &z(10)).unwrap();
        assert_eq!(r.verdict, Verdict::Obstructed);
        assert!(r.witnesses.contains(&(1, z(2))));
        assert!(r.witnesses.contains(&(3, z(2))));

        let r = one_handle_obstruction_integer(&KnotExpr::Unknot, &z(2)).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.values, pairs(&[(1, 1)]));

        let r = one_handle_obstruction_integer(&parse("T(25,169)").unwrap(), &z(65)).unwrap();
        assert_eq!(r.verdict, Verdict::Obstructed);
        assert!(r.witnesses.contains(&(1, z(2))));
        assert!(one_handle_obstruction_integer(&KnotExpr::Unknot, &z(1)).is_err());
    }

    #[test]
    fn rational_sweeps() {
        let r = one_handle_obstruction_rational(&KnotExpr::Unknot, &z(5), &z(4)).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.values.len(), 4);
        assert!(r.values.iter().all(|(_, v)| v.cmp_abs(&z(1)).is_le()));

        let t = parse("T(4,25)").unwrap();
        let r = one_handle_obstruction_rational(&t, &z(10), &z(1)).unwrap();
        assert_eq!(r, one_handle_obstruction_integer(&t, &z(10)).unwrap());

        let r = one_handle_obstruction_rational(&KnotExpr::Unknot, &z(3), &z(1)).unwrap();
        assert_eq!(r.verdict, Verdict::Obstructed);
        assert!(r.witnesses.contains(&(1, z(3))));
        assert!(one_handle_obstruction_rational(&KnotExpr::Unknot, &z(3), &z(3)).is_err());
    }

    #[test]
    fn skipped_characters_make_a_partial_pass() {
        // 4/3 surgery on U is L(4,-3): chain [2,2,2], whose middle colour is
        // even for the order-2 character.
        let r = one_handle_obstruction_rational(&KnotExpr::Unknot, &z(2), &z(3)).unwrap();
        assert_eq!(r.verdict, Verdict::PassPartial);
        assert_eq!(r.skipped.len(), 1);
    }

    #[test]
    fn witnesses_come_in_conjugate_pairs() {
        for (k, m) in [("T(4,25)", 10), ("T(2,3) # T(2,5)", 12), ("T(3,7)", 9)] {
            let r = one_handle_obstruction_integer(&parse(k).unwrap(), &z(m)).unwrap();
            for (a, v) in &r.witnesses {
                assert!(r.witnesses.contains(&(m as u64 - a, v.clone())), "{k} {m} {a}");
            }
        }
    }

    #[test]
    fn small_bounds() {
        assert_eq!(odd_handle_lower_bound(&CgValue::from_integer(z(2))), 1);
        assert_eq!(odd_handle_lower_bound(&CgValue::from_integer(z(0))), 0);
        assert_eq!(odd_handle_lower_bound(&CgValue::from_integer(z(-6))), 5);

        assert!(character_extends(&z(100), &z(5)).unwrap());
        assert!(!character_extends(&z(100), &z(4)).unwrap());
        assert!(matches!(character_extends(&z(99), &z(3)), Err(Error::NonSquareOrder(_))));

        let d = |xs: &[i64]| IntMatrix::diagonal(&xs.iter().map(|&x| z(x)).collect::<Vec<_>>());
        assert_eq!(generator_one_handle_bound(&d(&[2, 2])), 1);
        assert_eq!(generator_one_handle_bound(&d(&[2, 2, 2, 2])), 2);
        assert_eq!(generator_one_handle_bound(&d(&[100])), 1);
    }

    #[test]
    fn fusion_minmax_examples() {
        let r = fusion_bound_minmax(&[(25, 6)]).unwrap();
        assert_eq!(r.bound, 0);
        assert_eq!(r.conversions, vec![(25, 6, 19)]);
        assert_eq!(r.subgroups.len(), 1);
        assert_eq!(r.subgroups[0].evaluated, 4);

        assert_eq!(fusion_bound_minmax(&[(9, 4)]).unwrap().bound, 0);
        assert!(matches!(fusion_bound_minmax(&[(8, 3)]), Err(Error::NonSquareOrder(_))));
    }

    #[test]
    fn fusion_minmax_two_summands() {
        let r = fusion_bound_minmax(&[(25, 6), (169, 144)]).unwrap();
        assert_eq!(r.subgroups.len(), 1);
        let s = &r.subgroups[0];
        assert_eq!((s.evaluated, s.skipped), (64, 0));
        assert_eq!(s.max_abs, 2);
        assert_eq!(s.argmax, Some(vec![5, 13]));
        assert_eq!(r.bound, 1);
    }

    #[test]
    fn fusion_via_surgery() {
        assert_eq!(fusion_bound_via_surgery(&parse("T(25,169)").unwrap(), &z(65)).unwrap(), 2);
        assert_eq!(fusion_bound_via_surgery(&parse("T(4,25)").unwrap(), &z(10)).unwrap(), 2);
        assert_eq!(fusion_bound_via_surgery(&KnotExpr::Unknot, &z(2)).unwrap(), 1);
    }
}
