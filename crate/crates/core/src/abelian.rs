//! Finite abelian groups `Z/d_1 + ... + Z/d_r`, their subgroups and
//! characters.
//!
//! A subgroup `H` is the image of a lattice `L` with `R <= L <= Z^r`, where
//! `R = d_1 Z + ... + d_r Z` is the relation lattice, and `[G : H] = [Z^r : L]`.
//! Lattices are stored by their upper triangular Hermite normal form, so equal
//! subgroups compare equal.

use std::fmt;

use crate::angle::RationalAngle;
use crate::error::{Error, Result};

pub const DEFAULT_GROUP_CAP: u64 = 10_000_000;
pub const MAX_FACTORS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        Self::with_cap(factors, DEFAULT_GROUP_CAP)
    }

    pub fn with_cap(factors: Vec<u64>, cap: u64) -> Result<Self> {
        if factors.len() > MAX_FACTORS {
            return Err(Error::CapExceeded(format!(
                "{} cyclic factors, at most {MAX_FACTORS} supported",
                factors.len()
            )));
        }
        if let Some(d) = factors.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidInput(format!("cyclic factor orders must be at least 2, got {d}")));
        }
        let order = factors.iter().try_fold(1u64, |acc, &d| acc.checked_mul(d));
        match order {
            Some(n) if n < cap => Ok(FiniteAbelianGroup { factors }),
            _ => Err(Error::CapExceeded(format!("group order of {factors:?} is not below {cap}"))),
        }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    fn reduce(&self, x: &[i64]) -> Vec<u64> {
        x.iter()
            .zip(&self.factors)
            .map(|(&v, &d)| v.rem_euclid(d as i64) as u64)
            .collect()
    }

    /// Order of an element given by its coordinates.
    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.factors)
            .map(|(&v, &d)| d / gcd(v % d, d))
            .fold(1, lcm)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A subgroup, given by generators in coordinates of the ambient group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    /// Rows of the Hermite normal form of the lattice, reduced into the group.
    pub generators: Vec<Vec<u64>>,
    pub order: u64,
    hnf: Vec<Vec<i64>>,
}

impl Subgroup {
    pub fn index(&self, g: &FiniteAbelianGroup) -> u64 {
        g.order() / self.order
    }
}

/// A character `x -> exp(2 pi i sum_i c_i x_i / d_i)`, recorded as the angle
/// `c_i / d_i` it assigns to each cyclic generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterSpec {
    pub values: Vec<RationalAngle>,
}

impl CharacterSpec {
    /// The numerators `c_i`, in `[0, d_i)`.
    pub fn coefficients(&self, g: &FiniteAbelianGroup) -> Vec<u64> {
        self.values
            .iter()
            .zip(g.factors())
            .map(|(v, &d)| (v.num().to_u64().unwrap() * d) / v.den().to_u64().unwrap())
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.is_trivial())
    }

    /// Whether the character is 1 on the element `x`.
    pub fn vanishes_on(&self, g: &FiniteAbelianGroup, x: &[u64]) -> bool {
        let mut num = 0u128;
        let n = g.order() as u128;
        for ((c, &xi), &d) in self.coefficients(g).iter().zip(x).zip(g.factors()) {
            num += *c as u128 * xi as u128 * (n / d as u128);
        }
        num.is_multiple_of(n)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Solves `x B = v` for upper triangular `B`; `true` if `x` is integral.
fn in_lattice(b: &[Vec<i64>], v: &[i64]) -> bool {
    let r = b.len();
    let mut rest: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    for i in 0..r {
        let piv = b[i][i] as i128;
        if rest[i] % piv != 0 {
            return false;
        }
        let x = rest[i] / piv;
        for j in i..r {
            rest[j] -= x * b[i][j] as i128;
        }
    }
    true
}

/// All subgroups of index `k`, each once.
pub fn enumerate_subgroups_of_index(g: &FiniteAbelianGroup, k: u64) -> Result<Vec<Subgroup>> {
    let n = g.order();
    if k == 0 || !n.is_multiple_of(k) {
        return Err(Error::InvalidInput(format!("index {k} does not divide the group order {n}")));
    }
    let r = g.rank();
    let mut out = Vec::new();
    // Diagonal entries: b_ii | d_i, product k.
    let mut diag = vec![0u64; r];
    diagonals(g.factors(), k, 0, &mut diag, &mut |diag| {
        let mut b: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let mut row = vec![0i64; r];
                row[i] = diag[i] as i64;
                row
            })
            .collect();
        fill_above_diagonal(g, &mut b, 0, 1, &mut out);
    });
    out.sort();
    Ok(out)
}

fn diagonals(d: &[u64], k: u64, i: usize, cur: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
    if i == d.len() {
        if k == 1 {
            f(cur);
        }
        return;
    }
    for h in divisors(gcd(d[i], k)) {
        cur[i] = h;
        diagonals(d, k / h, i + 1, cur, f);
    }
}

/// Chooses entry `(i, j)`, `i < j`, in `[0, b_jj)`, column by column.
fn fill_above_diagonal(g: &FiniteAbelianGroup, b: &mut Vec<Vec<i64>>, i: usize, j: usize, out: &mut Vec<Subgroup>) {
    let r = b.len();
    if j >= r {
        let contains_relations = (0..r).all(|t| {
            let mut v = vec![0i64; r];
            v[t] = g.factors()[t] as i64;
            in_lattice(b, &v)
        });
        if contains_relations {
            out.push(subgroup_from_hnf(g, b.clone()));
        }
        return;
    }
    let (ni, nj) = if i + 1 < j { (i + 1, j) } else { (0, j + 1) };
    for v in 0..b[j][j] {
        b[i][j] = v;
        fill_above_diagonal(g, b, ni, nj, out);
    }
    b[i][j] = 0;
}

fn subgroup_from_hnf(g: &FiniteAbelianGroup, hnf: Vec<Vec<i64>>) -> Subgroup {
    let index: u64 = (0..hnf.len()).map(|i| hnf[i][i] as u64).product();
    Subgroup {
        generators: hnf.iter().map(|row| g.reduce(row)).collect(),
        order: g.order() / index,
        hnf,
    }
}

/// The nontrivial characters of `G / H`, pulled back to `G`.
pub fn characters_vanishing_on(g: &FiniteAbelianGroup, h: &Subgroup) -> Vec<CharacterSpec> {
    let r = g.rank();
    let b = &h.hnf;
    let box_sizes: Vec<u64> = (0..r).map(|i| b[i][i] as u64).collect();
    let mut out = Vec::new();
    // y = B^-1 z over the box 0 <= z_i < b_ii; then c_i = d_i y_i.
    let mut z = vec![0u64; r];
    loop {
        // Back substitution in exact rationals with the common denominator
        // [Z^r : L] = prod b_ii.
        let k: i128 = box_sizes.iter().map(|&x| x as i128).product();
        let mut y = vec![0i128; r];
        for i in (0..r).rev() {
            let mut s = z[i] as i128 * k;
            for j in i + 1..r {
                s -= b[i][j] as i128 * y[j];
            }
            y[i] = s / b[i][i] as i128;
        }
        let coeffs: Vec<u64> = (0..r)
            .map(|i| {
                let d = g.factors()[i] as i128;
                debug_assert_eq!(y[i] * d % k, 0);
                (y[i] * d / k).rem_euclid(d) as u64
            })
            .collect();
        if coeffs.iter().any(|&c| c != 0) {
            let values = coeffs
                .iter()
                .zip(g.factors())
                .map(|(&c, &d)| RationalAngle::new(c as i64, d as i64).expect("d >= 2"))
                .collect();
            let chi = CharacterSpec { values };
            assert!(
                h.generators.iter().all(|x| chi.vanishes_on(g, x)),
                "character does not vanish on the subgroup"
            );
            out.push(chi);
        }
        // Next z in the box.
        let mut t = 0;
        while t < r {
            z[t] += 1;
            if z[t] < box_sizes[t] {
                break;
            }
            z[t] = 0;
            t += 1;
        }
        if t == r {
            break;
        }
    }
    out
}

/// Every subgroup, as a sorted element list of mixed-radix indices, found by
/// closing under one extra generator at a time. Exponential in nothing but
/// slow; intended for groups of order at most `10^4` as a cross-check.
pub fn brute_force_subgroups(g: &FiniteAbelianGroup) -> Vec<Vec<u32>> {
    let n = g.order() as usize;
    let d: Vec<usize> = g.factors().iter().map(|&x| x as usize).collect();
    let mut stride = vec![1usize; d.len()];
    for i in (0..d.len().saturating_sub(1)).rev() {
        stride[i] = stride[i + 1] * d[i + 1];
    }
    let coords: Vec<Vec<usize>> = (0..n).map(|x| (0..d.len()).map(|i| x / stride[i] % d[i]).collect()).collect();
    let add = |x: usize, y: usize| -> usize {
        let (a, b) = (&coords[x], &coords[y]);
        (0..d.len()).map(|i| (a[i] + b[i]) % d[i] * stride[i]).sum()
    };

    let mut seen = std::collections::HashSet::new();
    let mut queue = vec![vec![0u32]];
    seen.insert(vec![0u32]);
    let mut idx = 0;
    while idx < queue.len() {
        let s = queue[idx].clone();
        idx += 1;
        let mut member = vec![false; n];
        for &x in &s {
            member[x as usize] = true;
        }
        let mut tried = member.clone();
        for gen in 0..n {
            if tried[gen] {
                continue;
            }
            // <S, gen> is the union of the cosets S + k gen.
            let mut multiples = Vec::new();
            let mut inside = member.clone();
            let mut m = gen;
            while !inside[m] {
                multiples.push(m);
                for &x in &s {
                    inside[add(m, x as usize)] = true;
                }
                m = add(m, gen);
            }
            // k gen + S gives the same extension whenever k is a unit mod
            // the order of gen modulo S.
            let ord = multiples.len() + 1;
            let mut elems = s.clone();
            for (k, &mk) in multiples.iter().enumerate() {
                let unit = gcd(k as u64 + 1, ord as u64) == 1;
                for &x in &s {
                    let e = add(mk, x as usize);
                    elems.push(e as u32);
                    if unit {
                        tried[e] = true;
                    }
                }
            }
            elems.sort_unstable();
            if seen.insert(elems.clone()) {
                queue.push(elems);
            }
        }
    }
    queue.sort();
    queue
}
