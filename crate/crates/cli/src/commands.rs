use std::path::Path;

use cgsig::cg::{cg_integer_surgery, cg_lens, cg_rational_surgery, chain_colors};
use cgsig::chain::{neg_continued_fraction, plumbing_matrix_q};
use cgsig::family::{family_lower_bound, fib_family};
use cgsig::knot::parse;
use cgsig::obstruct::{
    fusion_bound_minmax, fusion_bound_via_surgery, generator_one_handle_bound, one_handle_obstruction_integer,
    one_handle_obstruction_rational, ObstructionReport,
};
use cgsig::reference::reference_claims;
use cgsig::{cokernel_analysis, lt_signature, IntMatrix, KnotExpr, RationalAngle};
use rug::Integer;
use serde_json::{json, Value};

use crate::report::{table, Failure, Report};
use crate::{CgCommand, Command, FusionCommand, H1Args, ObstructCommand};

type Out = Result<Report, Failure>;

pub fn run(command: &Command) -> Out {
    match command {
        Command::Sig { knot, angle } => sig(knot, angle),
        Command::Cg(CgCommand::Surgery { knot, m, a, q }) => cg_surgery(knot, m, a, q.as_deref()),
        Command::Cg(CgCommand::Lens { p, q, order, a }) => cg_lens_cmd(p, q, order, a),
        Command::H1(args) => h1(args),
        Command::Obstruct(ObstructCommand::OneHandle { knot, m, q }) => one_handle(knot, m, q.as_deref()),
        Command::Fusion(FusionCommand::Minmax { lens }) => fusion_minmax(lens),
        Command::Fusion(FusionCommand::Surgery { knot, m }) => fusion_surgery(knot, m),
        Command::Family { v } => family(v),
        Command::ReproducePaper => reproduce(),
    }
}

fn int(name: &str, s: &str) -> Result<Integer, Failure> {
    s.trim()
        .parse::<Integer>()
        .map_err(|_| Failure::Input(format!("{name}: expected an integer, got {s:?}")))
}

fn knot(s: &str) -> Result<KnotExpr, Failure> {
    Ok(parse(s)?)
}

fn strs(xs: &[Integer]) -> Value {
    json!(xs.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn sig(knot_s: &str, angle: &str) -> Out {
    let k = knot(knot_s)?;
    let theta: RationalAngle = angle.parse()?;
    let s = lt_signature(&k, &theta)?;
    let text = format!(
        "sigma_{k}(exp(2 pi i {theta})) = {}{}\n",
        s.value,
        if s.at_jump { "  (Alexander root: average of one-sided limits)" } else { "" }
    );
    Ok(Report::new(
        "sig",
        json!({"knot": k.to_string(), "theta": theta.to_string()}),
        json!({"value": s.value.to_string(), "at_jump": s.at_jump}),
        text,
    ))
}

fn cg_surgery(knot_s: &str, m: &str, a: &str, q: Option<&str>) -> Out {
    let k = knot(knot_s)?;
    let (m, a) = (int("--m", m)?, int("--a", a)?);
    let mut inputs = json!({"knot": k.to_string(), "m": m.to_string(), "a": a.to_string()});
    let (value, what) = match q {
        None => (cg_integer_surgery(&k, &m, &a)?, format!("{}-surgery", Integer::from(m.square_ref()))),
        Some(q) => {
            let q = int("--q", q)?;
            inputs["q"] = json!(q.to_string());
            let v = cg_rational_surgery(&k, &m, &q, &a)?;
            (v, format!("{}/{q}-surgery", Integer::from(m.square_ref())))
        }
    };
    let text = format!("sigma({what} on {k}, a = {a}/{m}) = {value}\n");
    Ok(Report::new("cg surgery", inputs, json!({"value": value.to_string()}), text))
}

fn cg_lens_cmd(p: &str, q: &str, order: &str, a: &str) -> Out {
    let (p, q, t, a) = (int("--p", p)?, int("--q", q)?, int("--order", order)?, int("--a", a)?);
    let value = cg_lens(&p, &q, &t, &a)?;
    let framings = neg_continued_fraction(&p, &q)?;
    let colors = chain_colors(&t, &a, &framings)?;
    let text = format!(
        "sigma(S^3_{p}/{q}(U), order {t}, a = {a}) = {value}\nchain framings {}\ncolours        {}\n",
        join(&framings),
        join(&colors)
    );
    Ok(Report::new(
        "cg lens",
        json!({"p": p.to_string(), "q": q.to_string(), "order": t.to_string(), "a": a.to_string()}),
        json!({"value": value.to_string(), "framings": strs(&framings), "colors": strs(&colors)}),
        text,
    ))
}

fn join(xs: &[Integer]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn read_matrix(path: &Path) -> Result<IntMatrix, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let bad = || Failure::Input(format!("{}: expected an array of rows of integers", path.display()));
    let rows = v.as_array().ok_or_else(bad)?;
    let mut out = Vec::new();
    for r in rows {
        let mut row = Vec::new();
        for e in r.as_array().ok_or_else(bad)? {
            let x = match e {
                Value::Number(n) => n.as_i64().map(Integer::from).ok_or_else(bad)?,
                Value::String(s) => int("matrix entry", s)?,
                _ => return Err(bad()),
            };
            row.push(x);
        }
        out.push(row);
    }
    Ok(IntMatrix::from_rows(out)?)
}

fn plumbing(args: &[String]) -> Result<(Integer, Vec<Integer>), Failure> {
    let (mut a, mut n) = (None, None);
    for arg in args {
        match arg.split_once('=') {
            Some(("a", v)) => a = Some(int("plumbing a", v)?),
            Some(("n", v)) => {
                n = Some(v.split(',').map(|x| int("plumbing n", x)).collect::<Result<Vec<_>, _>>()?)
            }
            _ => return Err(Failure::Input(format!("--plumbing expects a=<int> n=<list>, got {arg:?}"))),
        }
    }
    match (a, n) {
        (Some(a), Some(n)) => Ok((a, n)),
        _ => Err(Failure::Input("--plumbing needs both a=<int> and n=<list>".into())),
    }
}

fn h1(args: &H1Args) -> Out {
    let (matrix, inputs) = match (&args.matrix, &args.plumbing) {
        (Some(path), _) => {
            let m = read_matrix(path)?;
            let rows: Vec<Value> = (0..m.rows()).map(|i| strs(m.row(i))).collect();
            (m, json!({"matrix": rows}))
        }
        (None, Some(p)) => {
            let (a, n) = plumbing(p)?;
            let inputs = json!({"plumbing": {"a": a.to_string(), "n": strs(&n)}});
            (plumbing_matrix_q(&a, &n)?, inputs)
        }
        (None, None) => return Err(Failure::Input("h1 needs --matrix or --plumbing".into())),
    };
    let info = cokernel_analysis(&matrix);
    let bound = generator_one_handle_bound(&matrix);
    let order = info.order.as_ref().map(|o| o.to_string());
    let mut text = String::new();
    text += &format!("invariant factors   {}\n", if info.invariant_factors.is_empty() { "(none)".into() } else { join(&info.invariant_factors) });
    text += &format!("free rank           {}\n", info.free_rank);
    text += &format!("order               {}\n", order.clone().unwrap_or_else(|| "infinite".into()));
    text += &format!("cyclic              {}\n", info.is_cyclic);
    text += &format!("min generators      {}\n", info.min_generators);
    text += &format!("1-handle bound      {bound}\n");
    Ok(Report::new(
        "h1",
        inputs,
        json!({
            "invariant_factors": strs(&info.invariant_factors),
            "free_rank": info.free_rank,
            "order": order,
            "is_cyclic": info.is_cyclic,
            "min_generators": info.min_generators,
            "one_handle_bound": bound,
        }),
        text,
    ))
}

fn pairs_json(xs: &[(u64, Integer)]) -> Value {
    json!(xs.iter().map(|(a, v)| json!({"a": a, "value": v.to_string()})).collect::<Vec<_>>())
}

fn sweep_report(command: &'static str, inputs: Value, r: &ObstructionReport) -> Report {
    let rows: Vec<Vec<String>> = r
        .values
        .iter()
        .map(|(a, v)| vec![a.to_string(), v.to_string(), if v.cmp_abs(&Integer::from(1)).is_gt() { "witness".into() } else { String::new() }])
        .chain(r.skipped.iter().map(|(a, why)| vec![a.to_string(), "-".into(), format!("skipped: {why}")]))
        .collect();
    let mut text = format!("verdict: {}\n\n", r.verdict);
    text += &table(&["a", "value", "note"], &rows);
    let mut report = Report::new(
        command,
        inputs,
        json!({"verdict": r.verdict.to_string(), "values": pairs_json(&r.values)}),
        text,
    );
    report.witnesses = Some(pairs_json(&r.witnesses));
    report.skipped = Some(json!(r.skipped.iter().map(|(a, why)| json!({"a": a, "reason": why})).collect::<Vec<_>>()));
    report
}

fn one_handle(knot_s: &str, m: &str, q: Option<&str>) -> Out {
    let k = knot(knot_s)?;
    let m = int("--m", m)?;
    let mut inputs = json!({"knot": k.to_string(), "m": m.to_string()});
    let r = match q {
        None => one_handle_obstruction_integer(&k, &m)?,
        Some(q) => {
            let q = int("--q", q)?;
            inputs["q"] = json!(q.to_string());
            one_handle_obstruction_rational(&k, &m, &q)?
        }
    };
    Ok(sweep_report("obstruct one-handle", inputs, &r))
}

fn fusion_minmax(lens: &[String]) -> Out {
    let mut summands = Vec::new();
    for s in lens {
        let parsed = s.split_once(',').and_then(|(p, q)| Some((p.trim().parse::<u64>().ok()?, q.trim().parse::<u64>().ok()?)));
        summands.push(parsed.ok_or_else(|| Failure::Input(format!("--lens expects p,q, got {s:?}")))?);
    }
    let r = fusion_bound_minmax(&summands)?;
    let conversions: Vec<Value> = r
        .conversions
        .iter()
        .map(|(p, q, qp)| json!({"lens": format!("L({p},{q})"), "surgery": format!("{p}/{qp}")}))
        .collect();
    let subgroups: Vec<Value> = r
        .subgroups
        .iter()
        .map(|s| {
            json!({
                "generators": s.subgroup.generators,
                "order": s.subgroup.order,
                "max_abs": s.max_abs.to_string(),
                "argmax": s.argmax,
                "evaluated": s.evaluated,
                "skipped": s.skipped,
            })
        })
        .collect();
    let mut text = String::new();
    for (p, q, qp) in &r.conversions {
        text += &format!("L({p},{q}) = S^3_{p}/{qp}(U)\n");
    }
    text += "\n";
    let rows: Vec<Vec<String>> = r
        .subgroups
        .iter()
        .map(|s| {
            vec![
                format!("{:?}", s.subgroup.generators),
                s.max_abs.to_string(),
                s.argmax.as_ref().map_or("-".into(), |c| format!("{c:?}")),
                s.evaluated.to_string(),
                s.skipped.to_string(),
            ]
        })
        .collect();
    text += &table(&["subgroup generators", "max |sigma|", "attained at", "evaluated", "skipped"], &rows);
    text += &format!("\nfusion number >= {}\n", r.bound);
    let total_skipped: usize = r.subgroups.iter().map(|s| s.skipped).sum();
    let mut report = Report::new(
        "fusion minmax",
        json!({"lens": summands.iter().map(|(p, q)| json!([p, q])).collect::<Vec<_>>()}),
        json!({"bound": r.bound.to_string(), "conversions": conversions, "subgroups": subgroups}),
        text,
    );
    report.skipped = Some(json!(total_skipped));
    Ok(report)
}

fn fusion_surgery(knot_s: &str, m: &str) -> Out {
    let k = knot(knot_s)?;
    let m = int("--m", m)?;
    let bound = fusion_bound_via_surgery(&k, &m)?;
    let r = one_handle_obstruction_integer(&k, &m)?;
    let text = format!(
        "one-handle sweep of {}-surgery on {k}: {}\nfusion number >= {bound}\n",
        Integer::from(m.square_ref()),
        r.verdict
    );
    let mut report = Report::new(
        "fusion surgery",
        json!({"knot": k.to_string(), "m": m.to_string()}),
        json!({"bound": bound.to_string(), "verdict": r.verdict.to_string()}),
        text,
    );
    report.witnesses = Some(pairs_json(&r.witnesses));
    Ok(report)
}

fn family(v: &str) -> Out {
    let v: u32 = v.trim().parse().map_err(|_| Failure::Input(format!("--v: expected a positive integer, got {v:?}")))?;
    let fam = fib_family(v)?;
    let (bound, cert) = family_lower_bound(v)?;
    let digits: Vec<usize> = fam.n.iter().map(|n| n.to_string_radix(10).len()).collect();
    let rows: Vec<Vec<String>> = (0..v as usize)
        .map(|j| vec![(j + 1).to_string(), fam.p[j].to_string(), digits[j].to_string(), cert[j].to_string()])
        .collect();
    let mut text = table(&["j", "p_j", "digits of n_j", "sigma_j"], &rows);
    text += &format!("\n1-handles needed >= {bound}\n");
    Ok(Report::new(
        "family",
        json!({"v": v}),
        json!({
            "bound": bound.to_string(),
            "certificate": cert.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "p": strs(&fam.p),
            "n_digits": digits,
        }),
        text,
    ))
}

fn reproduce() -> Out {
    let claims = reference_claims();
    let rows: Vec<Vec<String>> = claims
        .iter()
        .map(|c| vec![c.claim.clone(), c.computed.clone(), c.expected.clone(), status(c.pass).into()])
        .collect();
    let passed = claims.iter().filter(|c| c.pass).count();
    let mut text = table(&["claim", "computed", "expected", "status"], &rows);
    text += &format!("\n{passed}/{} reproduced\n", claims.len());
    let mut report = Report::new(
        "reproduce-paper",
        json!({}),
        json!({
            "rows": claims.iter().map(|c| json!({
                "claim": c.claim, "computed": c.computed, "expected": c.expected, "status": status(c.pass),
            })).collect::<Vec<_>>(),
            "all_pass": passed == claims.len(),
        }),
        text,
    );
    report.consistent = passed == claims.len();
    Ok(report)
}

fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}
