//! Published reference values, recomputed.

use rug::{Integer, Rational};

use crate::cg::{cg_connected_sum, cg_integer_surgery, cg_lens};
use crate::error::Result;
use crate::family::{family_indices, family_lower_bound, fibonacci};
use crate::knot::{parse, KnotExpr};
use crate::obstruct::{
    fusion_bound_minmax, fusion_bound_via_surgery, odd_handle_lower_bound, one_handle_obstruction_integer,
    one_handle_obstruction_rational, Verdict,
};
use crate::signature::lt_signature;
use crate::snf::cokernel_analysis;
use crate::{chain::plumbing_matrix_q, RationalAngle};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub claim: String,
    pub computed: String,
    pub expected: String,
    pub pass: bool,
}

fn row(claim: &str, computed: Result<String>, expected: &str) -> Claim {
    let computed = computed.unwrap_or_else(|e| format!("error: {e}"));
    Claim {
        claim: claim.to_string(),
        pass: computed == expected,
        computed,
        expected: expected.to_string(),
    }
}

fn z(x: i64) -> Integer {
    Integer::from(x)
}

fn sig(knot: &str, a: i64, m: i64) -> Result<String> {
    Ok(lt_signature(&parse(knot)?, &RationalAngle::new(a, m)?)?.value.to_string())
}

fn cg(knot: &str, m: i64, a: i64) -> Result<String> {
    Ok(cg_integer_surgery(&parse(knot)?, &z(m), &z(a))?.to_string())
}

fn verdict(knot: &KnotExpr, m: i64) -> Result<String> {
    Ok(one_handle_obstruction_integer(knot, &z(m))?.verdict.to_string())
}

/// Every reference value with its recomputation, in a fixed order.
pub fn reference_claims() -> Vec<Claim> {
    let mut out = vec![
        row("sigma of T(4,25) at 1/10", sig("T(4,25)", 1, 10), "-15"),
        row("CG value of 100-surgery on T(4,25), a = 1", cg("T(4,25)", 10, 1), "2"),
        row(
            "100-surgery on T(4,25) bounds no ball with one 1-handle",
            parse("T(4,25)").and_then(|k| verdict(&k, 10)),
            &Verdict::Obstructed.to_string(),
        ),
        row(
            "odd-index handles forced by |sigma| = 2",
            Ok(odd_handle_lower_bound(&crate::cg::CgValue::from_integer(z(2))).to_string()),
            "1",
        ),
        row(
            "L(25,21) # L(4,3) total at a = 1",
            (|| {
                let a = cg_lens(&z(25), &z(4), &z(5), &z(1))?;
                let b = cg_lens(&z(4), &z(1), &z(2), &z(1))?;
                Ok(cg_connected_sum(&[a, b]).to_string())
            })(),
            "2",
        ),
        row(
            "L(25,21) bounds a ball with one 1-handle (all characters within 1)",
            one_handle_obstruction_rational(&KnotExpr::Unknot, &z(5), &z(4)).map(|r| r.verdict.to_string()),
            &Verdict::Pass.to_string(),
        ),
        row("sigma of T(25,169) at 1/65 (5 - 2ab)", sig("T(25,169)", 1, 65), "-125"),
        row(
            "Alexander roots of T(25,169) on (0, 1/65) (ab - 1 - floor(b/a))",
            parse("T(25,169)").and_then(|k| {
                Ok(k.count_alexander_roots_in_arc(&Rational::new(), &Rational::from((1, 65)))?.to_string())
            }),
            "62",
        ),
        row("CG value of 65^2-surgery on T(25,169), a = 1", cg("T(25,169)", 65, 1), "2"),
        row(
            "fusion number of K_{5,13} via the double cover",
            parse("T(25,169)").and_then(|k| Ok(fusion_bound_via_surgery(&k, &z(65))?.to_string())),
            "2",
        ),
        row(
            "prime-power characters on L(25,6) give no fusion bound",
            fusion_bound_minmax(&[(25, 6)]).map(|r| r.bound.to_string()),
            "0",
        ),
        row("CG value of 400-surgery on C(2,201;T(4,25)), a = 1", cg("C(2,201;T(4,25))", 20, 1), "2"),
        row(
            "CG value of 195^2-surgery on C(3,12676;T(25,169)), a = 1",
            cg("C(3,12676;T(25,169))", 195, 1),
            "2",
        ),
        row(
            "plumbing Q(2, [65]) has cyclic cokernel of order (2*65)^2",
            plumbing_matrix_q(&z(2), &[z(65)]).map(|q| {
                let c = cokernel_analysis(&q);
                format!("cyclic={} order={}", c.is_cyclic, c.order.map_or("inf".into(), |o| o.to_string()))
            }),
            "cyclic=true order=16900",
        ),
        row("gcd(F_10, F_15) = F_5", Ok(fibonacci(10).gcd(&fibonacci(15)).to_string()), "5"),
        row(
            "family indices p_1, p_2, p_3",
            Ok(family_indices(3).iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")),
            "5, 209, 9260789",
        ),
    ];
    for v in 1..=3u32 {
        let computed = family_lower_bound(v).map(|(b, cert)| {
            let c: Vec<String> = cert.iter().map(|x| x.to_string()).collect();
            format!("{b} [{}]", c.join(", "))
        });
        let expected = format!("{} [{}]", 2 * v - 1, vec!["2"; v as usize].join(", "));
        out.push(row(&format!("1-handles for the v = {v} family sum"), computed, &expected));
    }
    out
}
