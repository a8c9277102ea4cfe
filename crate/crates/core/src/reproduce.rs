//! End-to-end construction of the weight 3/2 eigenforms attached to the
//! curves 43A, 172A, 563A and 643A.
//!
//! For each case the weight 1 octahedral form is built from Frobenius traces
//! in the Galois closure of the degree 24 field, multiplied by a unary theta
//! series and thrown together with ternary theta series. Hecke eigenforms in
//! that span are then located from the curves' a_p.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{primes_up_to, RationalPoly};
use crate::elliptic;
use crate::embed::{gamma_cases, sqrt_gamma_polynomial, GaloisClosure, GammaCase};
use crate::error::{Error, Result};
use crate::halfint::{
    eigenform_search_with, expand_4z, hecke_matrix, is_eigenform, product_weight_3_2, rank_and_basis, QExpansion,
    Qs2, Weight,
};
use crate::octahedral::{frobenius_table, frobenius_trace, weight1_coefficients, FrobeniusTable, RamifiedRule};
use crate::ternary;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Options {
    /// Decimal digits for the complex root computations.
    pub digits: u32,
    /// Length of the weight 3/2 expansions.
    pub bound: usize,
    /// Number of coefficients used to solve for span coordinates.
    pub b_express: usize,
    pub search_primes: Vec<u64>,
    /// Eigenform checks run for good primes up to this.
    pub verify_up_to: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { digits: 120, bound: 18050, b_express: 50, search_primes: vec![3, 5, 7], verify_up_to: 19 }
    }
}

/// A target expansion: sparse (n, c_n) for n up to 50.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Golden {
    pub case: String,
    pub curve: String,
    pub terms: Vec<(usize, i64)>,
}

impl Golden {
    pub fn dense(&self, bound: usize) -> Vec<i64> {
        let mut v = vec![0; bound + 1];
        for &(n, c) in &self.terms {
            if n <= bound {
                v[n] = c;
            }
        }
        v
    }

    pub fn lead(&self) -> (usize, i64) {
        self.terms[0]
    }

    pub fn max_index(&self) -> usize {
        self.terms.last().map(|t| t.0).unwrap_or(0)
    }
}

pub fn goldens() -> BTreeMap<String, Golden> {
    serde_json::from_str(include_str!("../data/expansions.json")).expect("golden expansions")
}

/// Static description of one of the three weight 1 constructions.
struct Setup {
    case: &'static str,
    /// Level and discriminant of the weight 1 form.
    w1_level: u64,
    disc: i64,
    ramified: Vec<(u64, RamifiedRule)>,
    /// Theta series come from these ternary tables, in this order.
    tables: Vec<i64>,
    /// Level of the weight 3/2 space.
    level: u64,
    /// Weight 1 form used at z (true) or at 4z (false).
    direct: bool,
    theta_d: u64,
}

fn setup(case: &str) -> Result<Setup> {
    Ok(match case {
        "43" => Setup {
            case: "43",
            w1_level: 344,
            disc: -43,
            ramified: vec![(2, RamifiedRule::Zero), (43, RamifiedRule::Inertia)],
            tables: vec![172, 344],
            level: 344,
            direct: true,
            theta_d: 43,
        },
        "563" => Setup {
            case: "563",
            w1_level: 563,
            disc: -563,
            ramified: vec![(563, RamifiedRule::Inertia)],
            tables: vec![2252],
            level: 2252,
            direct: false,
            theta_d: 563,
        },
        "643" => Setup {
            case: "643",
            w1_level: 643,
            disc: -643,
            ramified: vec![(643, RamifiedRule::Inertia)],
            tables: vec![2572],
            level: 2572,
            direct: false,
            theta_d: 643,
        },
        other => return Err(Error::Input(format!("unknown case {other}"))),
    })
}

pub const CASES: [&str; 3] = ["43", "563", "643"];

/// A pipeline failure tagged with the stage it happened in.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{stage}: {error}")]
pub struct StageError {
    pub stage: &'static str,
    pub error: Error,
}

fn at(stage: &'static str) -> impl Fn(Error) -> StageError {
    move |error| StageError { stage, error }
}

pub type StageResult<T> = std::result::Result<T, StageError>;

/// Everything shared by the eigenform searches of one case.
#[derive(Clone, Debug)]
pub struct CaseSpan {
    pub case: String,
    pub level: u64,
    pub quartic: RationalPoly,
    pub poly24: RationalPoly,
    /// Primes where neither patterns nor the closure fixed a_p, with the
    /// value retained by the Hecke consistency test and the alternatives.
    pub choices: Vec<(u64, Qs2, Vec<Qs2>)>,
    /// First coefficients of the weight 1 form.
    pub weight1_head: Vec<Qs2>,
    pub labels: Vec<String>,
    pub basis: Vec<QExpansion>,
    /// Number of theta series offered before independence filtering.
    pub offered: usize,
    pub b_express: usize,
}

/// Every trace compatible with the patterns that are squarefree at p.
pub fn candidate_traces(table: &FrobeniusTable, quartic: &RationalPoly, poly24: &RationalPoly, p: u64) -> Vec<Qs2> {
    let pq = quartic.factorization_pattern_mod_p(p).ok().filter(|f| f.squarefree).map(|f| f.degrees());
    let p24 = poly24.factorization_pattern_mod_p(p).ok().filter(|f| f.squarefree).map(|f| f.degrees());
    let mut out: Vec<Qs2> = Vec::new();
    for c in &table.classes {
        let ok_q = pq.as_ref().map_or(true, |d| *d == c.quartic_pattern);
        let ok_24 = p24.as_ref().map_or(true, |d| *d == c.coset_pattern);
        if ok_q && ok_24 && !out.contains(&c.trace) {
            out.push(c.trace.clone());
        }
    }
    out
}

fn weight1_form(
    s: &Setup,
    table: &FrobeniusTable,
    gc: &GaloisClosure,
    quartic: &RationalPoly,
    poly24: &RationalPoly,
    fixed: &BTreeMap<u64, Qs2>,
    bound: usize,
) -> Result<QExpansion> {
    let ramified: BTreeMap<u64, RamifiedRule> = s.ramified.iter().copied().collect();
    let resolver = |p: u64| -> Result<Option<Qs2>> {
        if let Some(v) = fixed.get(&p) {
            return Ok(Some(v.clone()));
        }
        match gc.frobenius_trace(p) {
            Ok(t) => Ok(Some(t)),
            Err(Error::UnknownPattern(_)) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let w = weight1_coefficients(table, quartic, poly24, s.disc, &ramified, bound, Some(&resolver))?;
    if let Some(&p) = w.ambiguous.first() {
        return Err(Error::UnknownPattern(p));
    }
    Ok(QExpansion::new(w.coeffs, Weight::One, s.w1_level, s.disc))
}

fn real_part(f: &QExpansion) -> QExpansion {
    QExpansion::new(f.coeffs.iter().map(|c| Qs2::rat(c.x.clone())).collect(), f.weight, f.level, f.character)
}

/// The weight 3/2 forms manufactured from the weight 1 form g.
fn lifted_forms(s: &Setup, g: &QExpansion, bound: usize) -> Result<Vec<(String, QExpansion)>> {
    if s.direct {
        let h = product_weight_3_2(g, s.theta_d, bound)?;
        // (f + fbar)/2 and sqrt(-2)(f - fbar)/2 times the theta series
        let f1 = real_part(&h);
        let two = BigRational::from_integer(BigInt::from(-2));
        let f2 = QExpansion::new(h.coeffs.iter().map(|c| Qs2::rat(&c.y * &two)).collect(), h.weight, h.level, 1);
        Ok(vec![("F1".into(), f1), ("F2".into(), f2)])
    } else {
        let g4 = expand_4z(g, bound)?;
        let h = product_weight_3_2(&g4, s.theta_d, bound)?;
        Ok(vec![(format!("f_{}", s.case), real_part(&h))])
    }
}

fn theta_forms(s: &Setup, bound: usize) -> Result<Vec<(String, QExpansion)>> {
    let mut out = Vec::new();
    for &lv in &s.tables {
        let forms = ternary::table(lv).ok_or_else(|| Error::Input(format!("no ternary table for level {lv}")))?;
        for (i, t) in forms.iter().enumerate() {
            let mut th = ternary::theta_series(t, bound)?;
            th.level = s.level;
            out.push((format!("Q_{}_{}", lv / 4, i + 1), th));
        }
    }
    Ok(out)
}

/// Keeps the forms that are linearly independent on every available
/// coefficient, then finds the smallest b_express (doubling from the
/// configured value) at which the survivors are already independent.
fn independent(
    forms: Vec<(String, QExpansion)>,
    b_express: usize,
    ceiling: usize,
) -> Result<(Vec<(String, QExpansion)>, usize)> {
    let exps: Vec<QExpansion> = forms.iter().map(|f| f.1.clone()).collect();
    let (r1, keep) = rank_and_basis(&exps, ceiling);
    // the rank must have settled by the ceiling, else dependencies are fake
    let have = exps.iter().map(|f| f.bound()).min().unwrap_or(0);
    let (r2, _) = rank_and_basis(&exps, (2 * ceiling).min(have));
    if r2 > r1 {
        return Err(Error::InsufficientPrecision { rank: r1, size: r2, bound: ceiling });
    }
    let kept: Vec<(String, QExpansion)> = keep.iter().map(|&i| forms[i].clone()).collect();
    let kexp: Vec<QExpansion> = kept.iter().map(|f| f.1.clone()).collect();
    let mut b = b_express;
    loop {
        let (r, _) = rank_and_basis(&kexp, b);
        if r == kept.len() {
            return Ok((kept, b));
        }
        if b >= ceiling {
            return Err(Error::InsufficientPrecision { rank: r, size: kept.len(), bound: b });
        }
        b = (2 * b).min(ceiling);
    }
}

fn hecke_stable(basis: &[QExpansion], primes: &[u64], b: usize) -> Result<bool> {
    for &p in primes {
        match hecke_matrix(basis, p, b) {
            Ok(_) => {}
            Err(Error::NotInSpan { .. }) | Err(Error::InsufficientPrecision { .. }) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

/// Builds the span for a case. Primes where a_p is still undetermined are
/// settled by trying every admissible value and keeping the one for which
/// the span is stable under T_{p^2} for the search primes.
pub fn build_span(case: &str, opts: &Options) -> StageResult<CaseSpan> {
    let s = setup(case).map_err(at("input"))?;
    let GammaCase { quartic, gamma } =
        gamma_cases().remove(case).ok_or_else(|| Error::Input(format!("no gamma data for {case}")))
            .map_err(at("input"))?;
    let poly24 = sqrt_gamma_polynomial(&quartic, &gamma, &BigRational::from_integer(1.into()), opts.digits.max(200))
        .map_err(at("degree 24 polynomial"))?;
    let gc = GaloisClosure::new(&quartic, &gamma, opts.digits).map_err(at("galois closure"))?;
    let table = frobenius_table();
    let w1_bound = if s.direct { opts.bound } else { opts.bound / 4 };

    let ramified: Vec<u64> = s.ramified.iter().map(|r| r.0).collect();
    let mut open: Vec<(u64, Vec<Qs2>)> = Vec::new();
    for p in primes_up_to(w1_bound as u64) {
        if ramified.contains(&p) || matches!(frobenius_trace(&table, &quartic, &poly24, p), Ok(Some(_))) {
            continue;
        }
        if gc.frobenius_class(p).is_ok() {
            continue;
        }
        let cands = candidate_traces(&table, &quartic, &poly24, p);
        if cands.is_empty() {
            return Err(at("frobenius")(Error::UnknownPattern(p)));
        }
        open.push((p, cands));
    }

    let max_p = *opts.search_primes.iter().max().unwrap_or(&3);
    let ceiling = opts.bound / (max_p * max_p) as usize;
    let thetas = theta_forms(&s, opts.bound).map_err(at("theta series"))?;
    let offered = thetas.len();

    let ncombo: usize = open.iter().map(|o| o.1.len()).product();
    let mut found: Vec<(BTreeMap<u64, Qs2>, QExpansion, Vec<(String, QExpansion)>, usize)> = Vec::new();
    for k in 0..ncombo {
        let mut fixed = BTreeMap::new();
        let mut r = k;
        for (p, c) in &open {
            fixed.insert(*p, c[r % c.len()].clone());
            r /= c.len();
        }
        let g = weight1_form(&s, &table, &gc, &quartic, &poly24, &fixed, w1_bound).map_err(at("weight 1 form"))?;
        let mut forms = thetas.clone();
        forms.extend(lifted_forms(&s, &g, opts.bound).map_err(at("weight 3/2 lift"))?);
        let (kept, b) = independent(forms, opts.b_express, ceiling).map_err(at("span"))?;
        let exps: Vec<QExpansion> = kept.iter().map(|f| f.1.clone()).collect();
        if hecke_stable(&exps, &opts.search_primes, b).map_err(at("hecke"))? {
            found.push((fixed, g, kept, b));
        }
    }
    if found.len() != 1 {
        return Err(at("frobenius")(Error::Input(format!(
            "case {case}: {} of {ncombo} trace assignments give a Hecke stable span",
            found.len()
        ))));
    }
    let (fixed, g, kept, b) = found.pop().unwrap();
    let choices = open.into_iter().map(|(p, c)| (p, fixed[&p].clone(), c)).collect();
    Ok(CaseSpan {
        case: case.to_string(),
        level: s.level,
        quartic,
        poly24,
        choices,
        weight1_head: g.coeffs[..=g.bound().min(60)].to_vec(),
        labels: kept.iter().map(|f| f.0.clone()).collect(),
        basis: kept.into_iter().map(|f| f.1).collect(),
        offered,
        b_express: b,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FormReport {
    pub label: String,
    pub curve: String,
    /// c_0..c_50 of the computed eigenform.
    pub computed: Vec<String>,
    pub matches: bool,
    pub mismatches: Vec<usize>,
    /// Nonzero coordinates in the span, by basis label.
    pub combination: Vec<(String, String)>,
    pub eigenvalues: Vec<(u64, i64)>,
    /// (p, a_p, T_{p^2} F == a_p F on every available coefficient).
    pub hecke_checks: Vec<(u64, i64, bool)>,
    /// Coefficients covered by the p = verify_up_to check.
    pub checked_to: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub level: u64,
    pub offered: usize,
    pub basis: Vec<String>,
    pub b_express: usize,
    pub choices: Vec<(u64, String, Vec<String>)>,
    pub weight1_head: Vec<String>,
    pub forms: Vec<FormReport>,
}

pub fn eigenform_report(span: &CaseSpan, label: &str, golden: &Golden, opts: &Options) -> StageResult<FormReport> {
    let (e, _) = elliptic::curve(&golden.curve).map_err(at("curve"))?;
    let eig: Vec<(u64, i64)> =
        opts.search_primes.iter().map(|&p| Ok((p, e.ap(p)?))).collect::<Result<_>>().map_err(at("point counting"))?;
    let (_, lead) = golden.lead();
    let ef = eigenform_search_with(&span.basis, &eig, span.b_express, &Qs2::int(lead)).map_err(at("eigenform search"))?;
    let nshow = golden.max_index().max(50);
    let want = golden.dense(nshow);
    let computed: Vec<String> = ef.expansion.coeffs[..=nshow].iter().map(|c| c.to_string()).collect();
    let mismatches: Vec<usize> = (0..=nshow)
        .filter(|&n| {
            let c = &ef.expansion.coeffs[n];
            !(c.y.is_zero() && c.x.is_integer() && c.x.to_integer().to_i64() == Some(want[n]))
        })
        .collect();
    let mut hecke_checks = Vec::new();
    for p in primes_up_to(opts.verify_up_to) {
        if span.level % p == 0 {
            continue;
        }
        let ap = e.ap(p).map_err(at("point counting"))?;
        hecke_checks.push((p, ap, is_eigenform(&ef.expansion, p, ap).map_err(at("eigenform check"))?));
    }
    let last = *primes_up_to(opts.verify_up_to).iter().filter(|&&p| span.level % p != 0).last().unwrap_or(&3);
    let combination = span
        .labels
        .iter()
        .zip(&ef.combination)
        .filter(|(_, c)| !c.is_zero())
        .map(|(l, c)| (l.clone(), c.to_string()))
        .collect();
    Ok(FormReport {
        label: label.to_string(),
        curve: golden.curve.clone(),
        computed,
        matches: mismatches.is_empty(),
        mismatches,
        combination,
        eigenvalues: eig,
        hecke_checks,
        checked_to: ef.expansion.bound() / (last * last) as usize,
    })
}

/// Runs one case and all of its target forms.
pub fn reproduce_case(case: &str, opts: &Options) -> StageResult<CaseReport> {
    let span = build_span(case, opts)?;
    let mut forms = Vec::new();
    for (label, g) in goldens().iter().filter(|(_, g)| g.case == case) {
        forms.push(eigenform_report(&span, label, g, opts)?);
    }
    Ok(CaseReport {
        case: case.to_string(),
        level: span.level,
        offered: span.offered,
        basis: span.labels.clone(),
        b_express: span.b_express,
        choices: span
            .choices
            .iter()
            .map(|(p, v, c)| (*p, v.to_string(), c.iter().map(|x| x.to_string()).collect()))
            .collect(),
        weight1_head: span.weight1_head.iter().map(|c| c.to_string()).collect(),
        forms,
    })
}

/// Coefficient list helper for callers comparing against integer data.
pub fn as_integers(f: &QExpansion, upto: usize) -> Option<Vec<i64>> {
    f.coeffs[..=upto]
        .iter()
        .map(|c| if c.y.is_zero() && c.x.is_integer() { c.x.to_integer().to_i64() } else { None })
        .collect()
}


impl CaseReport {
    /// Every target matched and passed every eigenform check.
    pub fn all_match(&self) -> bool {
        self.forms.iter().all(|f| f.matches && f.hecke_checks.iter().all(|h| h.2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_data() {
        let g = goldens();
        assert_eq!(g.len(), 4);
        assert_eq!(g["F_563A"].lead(), (3, -2));
        assert_eq!(g["G_172A"].lead(), (1, 1));
        assert_eq!(g["G_43A"].dense(50).iter().filter(|c| **c != 0).count(), 24);
        assert!(g.values().all(|x| x.max_index() <= 50));
    }

    #[test]
    fn candidates_at_unresolved_primes() {
        let c = &gamma_cases()["643"];
        let p24 = sqrt_gamma_polynomial(&c.quartic, &c.gamma, &BigRational::from_integer(1.into()), 200).unwrap();
        let t = frobenius_table();
        // chi(2) = -1 and the quartic is irreducible mod 2: an order-8 class
        let mut two = candidate_traces(&t, &c.quartic, &p24, 2);
        two.sort_by_key(|x| x.to_string());
        assert_eq!(two, vec![-&Qs2::s(), Qs2::s()]);
        assert_eq!(candidate_traces(&t, &c.quartic, &p24, 5), vec![Qs2::zero()]);
    }

    #[test]
    fn bad_case() {
        assert_eq!(build_span("11", &Options::default()).unwrap_err().stage, "input");
    }
}
