use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use twoplus::arith::RationalPoly;
use twoplus::elliptic::{self, CurvePoint};
use twoplus::octahedral::group_checks;
use twoplus::quadform::{br2_add, obstruction_class, witt_sum_check, Br2Element};
use twoplus::reproduce::{reproduce_case, Options, CASES};
use twoplus::ternary::{enumerate_classes, EnumerateOptions};
use twoplus::Error;

use crate::cache::Cache;
use crate::{Cli, Command, Format};

type Outcome = Result<(Value, u8), (String, u8)>;

/// 1 mathematical mismatch, 2 input error, 3 precision exhaustion.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Input(_) | Error::Domain(_) | Error::OffCurve | Error::TorsionPoint | Error::NotSquarefree => 2,
        Error::SignatureMismatch | Error::DiscriminantMismatch => 2,
        Error::Precision(_) | Error::InsufficientPrecision { .. } | Error::Truncation { .. } => 3,
        _ => 1,
    }
}

fn fail(e: Error) -> (String, u8) {
    let c = exit_code(&e);
    (e.to_string(), c)
}

pub fn run(cli: &Cli, cache: &Cache) -> Result<(String, u8), (String, u8)> {
    let (value, code) = match &cli.command {
        Command::Enumerate { level, square_disc, kohnen } => {
            let input = json!({"level": level, "square_disc": square_disc, "kohnen": kohnen});
            cache.run("enumerate", &input, || enumerate(*level, *square_disc, *kohnen))?
        }
        Command::Obstruction { curve, point, quartic_file } => obstruction(curve.as_deref(), point, quartic_file.as_deref())?,
        Command::VerifyGroup => cache.run("verify-group", &json!({}), verify_group)?,
        Command::Reproduce { case } => reproduce(cli, cache, case)?,
    };
    let text = match cli.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&value).unwrap()),
        Format::Tsv => tsv(&cli.command, &value),
    };
    Ok((text, code))
}

fn enumerate(level: i64, square_disc: bool, kohnen: bool) -> Outcome {
    if level <= 0 || level % 2 != 0 {
        return Err(("level must be a positive even integer".into(), 2));
    }
    let forms = enumerate_classes(level, EnumerateOptions { square_disc, kohnen });
    let rows: Vec<Value> = forms
        .iter()
        .map(|t| {
            let (d, n) = t.invariants().map_err(fail)?;
            Ok(json!({"a1": t.a1, "a2": t.a2, "a3": t.a3, "a23": t.a23, "a13": t.a13, "a12": t.a12, "disc": d, "level": n}))
        })
        .collect::<Result<_, _>>()?;
    Ok((json!({"level": level, "count": rows.len(), "forms": rows}), 0))
}

fn parse_rational(s: &str) -> Result<BigRational, (String, u8)> {
    BigRational::from_str(s.trim()).map_err(|_| (format!("not a rational number: {s:?}"), 2))
}

fn parse_point(s: &str) -> Result<CurvePoint, (String, u8)> {
    let t = s.trim().trim_start_matches('[').trim_start_matches('(').trim_end_matches(']').trim_end_matches(')');
    let parts: Vec<&str> = t.split(',').collect();
    if parts.len() != 2 {
        return Err((format!("point must be x,y: {s:?}"), 2));
    }
    Ok(CurvePoint::Affine(parse_rational(parts[0])?, parse_rational(parts[1])?))
}

fn point_str(p: &CurvePoint) -> String {
    match p {
        CurvePoint::Infinity => "O".into(),
        CurvePoint::Affine(x, y) => format!("[{x},{y}]"),
    }
}

fn places(b: &Br2Element) -> Vec<String> {
    b.places().map(|v| v.to_string()).collect()
}

fn obstruction(curve: Option<&str>, points: &[String], file: Option<&std::path::Path>) -> Outcome {
    if let Some(path) = file {
        let text = std::fs::read_to_string(path).map_err(|e| (format!("{}: {e}", path.display()), 2))?;
        let desc: Vec<BigRational> = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(parse_rational)
            .collect::<Result<_, _>>()?;
        if desc.len() != 5 {
            return Err(("quartic file needs five coefficients".into(), 2));
        }
        let f = RationalPoly::new(desc.into_iter().rev().collect());
        let b = obstruction_class(&f).map_err(fail)?;
        let row = json!({"source": path.display().to_string(), "quartic": f.to_string(), "support": places(&b), "trivial": b.is_trivial()});
        return Ok((json!({"entries": [row]}), 0));
    }
    let label = curve.ok_or_else(|| ("give a curve label or --quartic-file".to_string(), 2))?;
    let (e, registered) = elliptic::curve(label).map_err(fail)?;
    let pts: Vec<CurvePoint> = if points.is_empty() {
        registered
    } else {
        points.iter().map(|s| parse_point(s)).collect::<Result<_, _>>()?
    };
    let mut rows = Vec::new();
    let mut quartics = Vec::new();
    let mut sum = Br2Element::default();
    for p in &pts {
        let f = e.halving_quartic(p).map_err(fail)?;
        let b = obstruction_class(&f).map_err(fail)?;
        sum = br2_add(&sum, &b);
        rows.push(json!({"source": point_str(p), "quartic": f.to_string(), "support": places(&b), "trivial": b.is_trivial()}));
        quartics.push(f);
    }
    let mut out = json!({"curve": label, "entries": rows, "sum_support": places(&sum)});
    // P1 + P2 = P3 lets the three trace forms be compared through (2, D_L)
    if pts.len() == 3 && e.add_points(&pts[0], &pts[1]).map_err(fail)? == pts[2] {
        let d = BigRational::from_integer(e.discriminant().numer().clone());
        let d_l = twoplus::arith::squarefree_part(&d).map_err(fail)?;
        let ok = witt_sum_check(&quartics[0], &quartics[1], &quartics[2], &d_l).map_err(fail)?;
        out["witt_sum_check"] = json!(ok);
    }
    Ok((out, 0))
}

fn verify_group() -> Outcome {
    let checks = group_checks();
    let passed = checks.iter().all(|c| c.passed);
    Ok((json!({"checks": checks, "passed": passed}), if passed { 0 } else { 1 }))
}

fn reproduce(cli: &Cli, cache: &Cache, case: &str) -> Outcome {
    let cases: Vec<&str> = match case {
        "all" => CASES.to_vec(),
        "43" | "172" => vec!["43"],
        "563" | "643" => vec![if case == "563" { "563" } else { "643" }],
        other => return Err((format!("unknown case {other}; expected 43, 563, 643 or all"), 2)),
    };
    let opts = Options { digits: cli.precision, bound: cli.truncation, ..Options::default() };
    let one = |c: &str| -> Outcome {
        let input = json!({"case": c, "options": serde_json::to_value(&opts).unwrap()});
        cache.run("reproduce", &input, || {
            let r = reproduce_case(c, &opts).map_err(|e| (e.to_string(), exit_code(&e.error)))?;
            let code = if r.all_match() { 0 } else { 1 };
            Ok((serde_json::to_value(&r).unwrap(), code))
        })
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build()
        .map_err(|e| (e.to_string(), 2))?;
    let results: Vec<Outcome> = pool.install(|| cases.par_iter().map(|c| one(c)).collect());
    let mut reports = Vec::new();
    let mut code = 0;
    for r in results {
        let (v, c) = r?;
        reports.push(v);
        code = code.max(c);
    }
    Ok((json!({"cases": reports, "match": code == 0}), code))
}

fn s(v: &Value) -> String {
    match v {
        Value::String(x) => x.clone(),
        Value::Array(a) => a.iter().map(s).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn tsv(cmd: &Command, v: &Value) -> String {
    let mut out = String::new();
    match cmd {
        Command::Enumerate { .. } => {
            out.push_str("a1\ta2\ta3\ta23\ta13\ta12\tdisc\tlevel\n");
            for f in v["forms"].as_array().into_iter().flatten() {
                let cols: Vec<String> =
                    ["a1", "a2", "a3", "a23", "a13", "a12", "disc", "level"].iter().map(|k| s(&f[*k])).collect();
                let _ = writeln!(out, "{}", cols.join("\t"));
            }
        }
        Command::Obstruction { .. } => {
            out.push_str("source\tquartic\tsupport\tverdict\n");
            for e in v["entries"].as_array().into_iter().flatten() {
                let verdict = if e["trivial"] == json!(true) { "trivial" } else { "nontrivial" };
                let _ = writeln!(out, "{}\t{}\t{}\t{}", s(&e["source"]), s(&e["quartic"]), s(&e["support"]), verdict);
            }
            if let Some(x) = v.get("sum_support") {
                let _ = writeln!(out, "sum\t\t{}\t{}", s(x), if s(x).is_empty() { "trivial" } else { "nontrivial" });
            }
            if let Some(w) = v.get("witt_sum_check") {
                let _ = writeln!(out, "witt_sum_check\t\t\t{}", s(w));
            }
        }
        Command::VerifyGroup => {
            out.push_str("check\tstatus\texpected\tobserved\n");
            for c in v["checks"].as_array().into_iter().flatten() {
                let st = if c["passed"] == json!(true) { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{}\t{}\t{}\t{}", s(&c["name"]), st, s(&c["expected"]), s(&c["observed"]));
            }
        }
        Command::Reproduce { .. } => {
            out.push_str("case\tform\tcurve\tmatch\tmismatches\thecke_p2\tcoefficients\n");
            for c in v["cases"].as_array().into_iter().flatten() {
                for f in c["forms"].as_array().into_iter().flatten() {
                    let hecke: Vec<String> = f["hecke_checks"]
                        .as_array()
                        .into_iter()
                        .flatten()
                        .map(|h| format!("{}:{}:{}", h[0], h[1], if h[2] == json!(true) { "ok" } else { "FAIL" }))
                        .collect();
                    let _ = writeln!(
                        out,
                        "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                        s(&c["case"]),
                        s(&f["label"]),
                        s(&f["curve"]),
                        s(&f["matches"]),
                        s(&f["mismatches"]),
                        hecke.join(" "),
                        s(&f["computed"])
                    );
                }
                for ch in c["choices"].as_array().into_iter().flatten() {
                    let _ = writeln!(out, "# case {}: a_{} = {} chosen from {{{}}}", s(&c["case"]), s(&ch[0]), s(&ch[1]), s(&ch[2]));
                }
            }
        }
    }
    out
}
