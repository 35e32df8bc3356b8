//! Suite of reproducible claims, each re-derived from scratch with its
//! certificates. Documented disagreements are reported as deviations and do
//! not fail the suite.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::enumerate::{self, CandidateFilter, FilterOutcome};
use crate::families::{self, InvValue, ReportStatus};
use crate::graphs;
use crate::parity;
use crate::polyz::{self, IntPoly};
use crate::rank1::{self, Filter, SearchBounds, VanishingSum};
use crate::fields;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Pass,
    Fail,
    Deviation,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimResult {
    pub id: &'static str,
    pub description: &'static str,
    pub status: ClaimStatus,
    pub details: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub claims: Vec<ClaimResult>,
    pub passed: usize,
    pub failed: usize,
    pub deviations: usize,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

type ClaimFn = fn(u64) -> (ClaimStatus, Value);

pub const CLAIMS: [(&str, &str, ClaimFn); 14] = [
    ("quadratic-ell", "ell = k for x^2 - (k-2)x - 1, k = 3..10, search and closed form agree", quadratic_ell),
    ("cubic-ell", "ell = A + 2 for x^3 + Ax + 1, A = 1..6, search and closed form agree", cubic_ell),
    ("cubic-ell-69", "ell = 69 for x^3 + x^2 + 66x + 1 from matching bounds", cubic_69),
    ("cubic-t", "ell = 4t^4 - 4t + 2 for x^3 + x^2 + (4t^4 - 4t - 1)x + 1; search at t = -1", cubic_t),
    ("length-ratio-bound", "L(f) <= 2^deg f * L(fg) on 500 random pairs", length_ratio),
    ("closed-form-lower-bound", "L(fg) >= L(f) for the three closed-form shapes, 200 random g each", closed_form_lower),
    ("even-power-witness", "an even power e^n with n = 2^m - 1 for 50 random unit polynomials", even_power),
    ("resultant-parity-grid", "|Res(x^n - 1, f)| even implies e^n even (deg <= 4, H <= 5, n <= 8)", resultant_grid),
    ("od-infinite-family", "od = infinity for x^d + 2A^2 x + 2, d = 2..5, A = 1..5", od_infinite),
    ("ev4-family", "ev = 4 for x(x-2)...(x-N) - 1 instances", ev4),
    ("cyclotomic-odd-unit", "Phi_n(1) odd for n <= 300 not a power of 2; the zeta_8 candidate", cyclotomic_odd),
    ("unit-graph-cycles", "cycles of length 3, 4, 5 and ten +2 extensions; no odd cycle below od", unit_graph_cycles),
    ("mini-enumeration", "degree 2, L(f) <= 8, k = 3 agrees with the exceptional-unit scan", mini_enumeration),
    ("upper-bound-formula", "bound constant 1/d and the regulator bound on 20 random (d, D)", upper_bound_formula),
];

fn status(ok: bool) -> ClaimStatus {
    if ok {
        ClaimStatus::Pass
    } else {
        ClaimStatus::Fail
    }
}

fn finite(v: Option<InvValue>) -> Option<u64> {
    match v {
        Some(InvValue::Finite(k)) => Some(k),
        _ => None,
    }
}

fn family_rows(reports: &[families::FamilyReport], search_expected: bool) -> (bool, Vec<Value>) {
    let mut ok = true;
    let mut rows = Vec::new();
    for r in reports {
        let v = &r.verification;
        let agree = v.value == Some(r.claimed.value) && v.lower == v.upper && v.upper == Some(r.claimed.value);
        let search = v.search.as_ref().and_then(|c| c.k);
        let search_ok = !search_expected || search.map(u64::from) == finite(Some(r.claimed.value));
        ok &= agree && search_ok && r.status != ReportStatus::Deviation;
        rows.push(json!({
            "f": r.f_text,
            "claimed": r.claimed.value,
            "lower": v.lower,
            "upper": v.upper,
            "search": search,
            "h": v.search.as_ref().and_then(|c| c.h.as_ref()).map(|h| h.to_string()),
            "fundamental": v.fundamental,
            "status": r.status,
        }));
    }
    (ok, rows)
}

fn quadratic_ell(_: u64) -> (ClaimStatus, Value) {
    let mut reps = Vec::new();
    for k in 3..=10 {
        match families::quad_family(k) {
            Ok(r) => reps.push(r),
            Err(e) => return (ClaimStatus::Fail, json!({"k": k, "error": e.to_string()})),
        }
    }
    let (ok, rows) = family_rows(&reps, true);
    (status(ok), json!({"instances": rows}))
}

fn cubic_ell(_: u64) -> (ClaimStatus, Value) {
    let mut reps = Vec::new();
    for a in 1..=6u64 {
        match families::cubic_family(a + 2) {
            Ok(r) => reps.push(r),
            Err(e) => return (ClaimStatus::Fail, json!({"A": a, "error": e.to_string()})),
        }
    }
    let (ok, rows) = family_rows(&reps, true);
    (status(ok), json!({"instances": rows}))
}

fn cubic_69(_: u64) -> (ClaimStatus, Value) {
    match families::cubic_family(69) {
        Ok(r) => {
            let (ok, rows) = family_rows(std::slice::from_ref(&r), false);
            let ok = ok && r.f == Some(IntPoly::from_i64s(&[1, 66, 1, 1])) && r.claimed.value == InvValue::Finite(69);
            (status(ok), json!({"instances": rows, "notes": r.notes}))
        }
        Err(e) => (ClaimStatus::Fail, json!({"error": e.to_string()})),
    }
}

fn cubic_t(_: u64) -> (ClaimStatus, Value) {
    let mut ok = true;
    let mut rows = Vec::new();
    // full search at t = -1, window 24
    let f = IntPoly::from_i64s(&[1, 7, 1, 1]);
    let search = rank1::make_order(&f)
        .map_err(|e| e.to_string())
        .and_then(|o| {
            rank1::min_vanishing_length(&o, SearchBounds::new(10).with_window(24), Filter::Any).map_err(|e| e.to_string())
        });
    let search_k = search.as_ref().ok().and_then(|c| c.k);
    ok &= search_k == Some(10);
    let search_row = json!({
        "f": f.to_string(),
        "k": search_k,
        "h": search.as_ref().ok().and_then(|c| c.h.as_ref()).map(|h| h.to_string()),
        "error": search.as_ref().err(),
    });
    for t in (-20i64..=20).filter(|t| *t != 0 && *t != 1) {
        match families::cubic_t_family(t, Some(families::DEFAULT_CUBIC_T_CITATION)) {
            Ok(r) => {
                let (good, mut row) = family_rows(std::slice::from_ref(&r), false);
                let expected = InvValue::Finite((4 * t.pow(4) - 4 * t + 2) as u64);
                ok &= good && r.claimed.value == expected;
                let mut row = row.remove(0);
                row["t"] = json!(t);
                rows.push(row);
            }
            Err(e) => {
                ok = false;
                rows.push(json!({"t": t, "error": e.to_string()}));
            }
        }
    }
    (status(ok), json!({"search": search_row, "bound_pairs": rows}))
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize, h: i64) -> IntPoly {
    let n = rng.gen_range(1..=max_deg + 1);
    IntPoly::from_i64s(&(0..n).map(|_| rng.gen_range(-h..=h)).collect::<Vec<_>>())
}

fn length_ratio(seed: u64) -> (ClaimStatus, Value) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5);
    let mut violations = Vec::new();
    let mut tested = 0;
    while tested < 500 {
        let f = random_poly(&mut rng, 6, 9);
        let g = random_poly(&mut rng, 6, 9);
        if f.is_zero() || g.is_zero() {
            continue;
        }
        tested += 1;
        let lhs = rank1::mignotte_lower_bound(&f);
        if BigRational::from_integer((&f * &g).length()) < lhs {
            violations.push(json!({"f": f.to_string(), "g": g.to_string()}));
        }
    }
    (status(violations.is_empty()), json!({"pairs": tested, "violations": violations}))
}

fn closed_form_lower(seed: u64) -> (ClaimStatus, Value) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6);
    let mut violations = Vec::new();
    let mut tested = 0;
    for shape in 0..3 {
        for _ in 0..200 {
            let a = rng.gen_range(if shape == 2 { 3 } else { 1 }..=10i64);
            let f = match shape {
                0 => IntPoly::from_i64s(&[-1, -a, 1]),
                1 => IntPoly::from_i64s(&[1, a, 0, 1]),
                _ => IntPoly::from_i64s(&[1, a, 1, 1]),
            };
            let g = loop {
                let g = random_poly(&mut rng, 8, 5);
                if !g.is_zero() {
                    break g;
                }
            };
            tested += 1;
            let lb = rank1::closed_form_lower_bound(&f);
            if lb != f.length().try_into().ok() || (&f * &g).length() < f.length() {
                violations.push(json!({"f": f.to_string(), "g": g.to_string()}));
            }
        }
    }
    (status(violations.is_empty()), json!({"pairs": tested, "violations": violations}))
}

/// Random monic polynomials of degree 2..4 with `|f(0)| = 1` defining an
/// order of unit rank one without extra torsion.
pub fn random_rank1_units(seed: u64, count: usize) -> Vec<IntPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<IntPoly> = Vec::new();
    while out.len() < count {
        let d = rng.gen_range(2..=4usize);
        let mut c = vec![if rng.gen_bool(0.5) { 1 } else { -1 }];
        c.extend((1..d).map(|_| rng.gen_range(-4..=4i64)));
        c.push(1);
        let f = IntPoly::from_i64s(&c);
        if !out.contains(&f) && rank1::make_order(&f).is_ok() {
            out.push(f);
        }
    }
    out
}

fn even_power(seed: u64) -> (ClaimStatus, Value) {
    let mut ok = true;
    let mut rows = Vec::new();
    for f in random_rank1_units(seed ^ 0x7, 50) {
        match parity::even_power_exponent(&f) {
            Ok((n, mp)) => {
                let recomputed = polyz::power_minpoly(&f, n).ok();
                let even = mp.eval_i64(1).is_even();
                let good = even && recomputed.as_ref() == Some(&mp) && (n + 1).is_power_of_two();
                ok &= good;
                rows.push(json!({"f": f.to_string(), "n": n, "minpoly": mp.to_string(), "ok": good}));
            }
            Err(e) => {
                ok = false;
                rows.push(json!({"f": f.to_string(), "error": e.to_string()}));
            }
        }
    }
    (status(ok), json!({"instances": rows}))
}

fn middle(n: usize, h: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-h..=h).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

fn resultant_grid(_: u64) -> (ClaimStatus, Value) {
    let mut checked = 0u64;
    let mut sufficient = 0u64;
    let mut violations = Vec::new();
    for d in 1..=4usize {
        for m in middle(d - 1, 5) {
            for s in [-1i64, 1] {
                let mut c = vec![s];
                c.extend_from_slice(&m);
                c.push(1);
                let f = IntPoly::from_i64s(&c);
                if !fields::irreducible_small(&f).unwrap_or(false) {
                    continue;
                }
                for n in 1..=8u64 {
                    checked += 1;
                    if parity::power_even_sufficient(&f, n).unwrap_or(false) {
                        sufficient += 1;
                        let mp = polyz::power_minpoly(&f, n).expect("monic");
                        if !parity::is_even_poly(&mp) {
                            violations.push(json!({"f": f.to_string(), "n": n}));
                        }
                    }
                }
            }
        }
    }
    (
        status(violations.is_empty()),
        json!({"pairs": checked, "resultant_even": sufficient, "violations": violations}),
    )
}

fn od_infinite(_: u64) -> (ClaimStatus, Value) {
    let mut ok = true;
    let mut rows = Vec::new();
    for d in 2..=5usize {
        for a in 1..=5i64 {
            match families::od_infinite_family(d, a, 20) {
                Ok(r) => {
                    let good = r.status == ReportStatus::Confirmed;
                    ok &= good;
                    rows.push(json!({
                        "f": r.f_text,
                        "eisenstein": r.verification.checks["eisenstein_at_2"],
                        "witness": r.verification.checks["norm_two_witness"],
                        "sampled_powers_even": r.verification.checks["sampled_unit_powers_even"],
                        "status": r.status,
                    }));
                }
                Err(e) => {
                    ok = false;
                    rows.push(json!({"d": d, "A": a, "error": e.to_string()}));
                }
            }
        }
    }
    (status(ok), json!({"instances": rows}))
}

fn ev4(_: u64) -> (ClaimStatus, Value) {
    let mut cases: Vec<(usize, Vec<i64>, i64)> = (3..=12).map(|n| (3, vec![], n)).collect();
    cases.push((4, vec![3], 5));
    cases.push((4, vec![4], 7));
    let mut ok = true;
    let mut rows = Vec::new();
    for (d, gaps, n) in cases {
        match families::ev4_family(d, &gaps, n) {
            Ok(r) => {
                ok &= r.status == ReportStatus::Confirmed;
                rows.push(json!({"f": r.f_text, "checks": r.verification.checks, "status": r.status}));
            }
            Err(e) => {
                ok = false;
                rows.push(json!({"d": d, "N": n, "error": e.to_string()}));
            }
        }
    }
    (status(ok), json!({"instances": rows}))
}

fn cyclotomic_odd(_: u64) -> (ClaimStatus, Value) {
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 3..=300u64 {
        if n.is_power_of_two() {
            continue;
        }
        count += 1;
        let v = polyz::cyclotomic(n).expect("small n").eval_i64(1);
        if v.is_even() {
            bad.push(n);
        }
    }
    let r8 = families::cyclotomic_odd_unit(8);
    let (st, probe) = match &r8 {
        Ok(r) => {
            let computed = r.verification.checks.get("computed_minpoly").cloned();
            let dev = r.status == ReportStatus::Deviation;
            (
                if !bad.is_empty() {
                    ClaimStatus::Fail
                } else if dev {
                    ClaimStatus::Deviation
                } else {
                    ClaimStatus::Pass
                },
                json!({
                    "computed_minpoly": computed,
                    "computed_parity": r.verification.checks.get("computed_parity"),
                    "stated_minpoly": families::STATED_ZETA8_MINPOLY,
                    "matches_stated": r.verification.checks.get("matches_stated"),
                    "status": r.status,
                    "notes": r.notes,
                }),
            )
        }
        Err(e) => (ClaimStatus::Fail, json!({"error": e.to_string()})),
    };
    (st, json!({"checked_n": count, "even_values": bad, "zeta8_probe": probe}))
}

fn cycle_rows(g: &graphs::ArithmeticGraph) -> Value {
    json!({"length": g.len(), "graph": g})
}

fn unit_graph_cycles(seed: u64) -> (ClaimStatus, Value) {
    let run = || -> Result<Value, String> {
        let golden = rank1::make_order(&IntPoly::from_i64s(&[-1, -1, 1])).map_err(|e| e.to_string())?;
        let o5 = rank1::make_order(&IntPoly::from_i64s(&[-1, -3, 1])).map_err(|e| e.to_string())?;
        let silver = rank1::make_order(&IntPoly::from_i64s(&[-1, -2, 1])).map_err(|e| e.to_string())?;
        let e = |x: graphs::GraphError| x.to_string();
        let tri = graphs::cycle_from_vanishing_sum(&golden, &VanishingSum::from_coeffs(&[-1, -1, 1])).map_err(e)?;
        let c5 = rank1::min_vanishing_length(&o5, SearchBounds::new(5), Filter::OddOnly).map_err(|x| x.to_string())?;
        let pent = graphs::cycle_from_vanishing_sum(&o5, c5.terms.as_ref().ok_or("no 5-term sum")?).map_err(e)?;
        let (u, four) = graphs::four_cycle(&golden, 60).map_err(e)?;
        let mut lengths = Vec::new();
        let mut g = tri.clone();
        for _ in 0..10 {
            g = graphs::extend_cycle_by_two(&golden, &g, 60).map_err(e)?;
            lengths.push(graphs::verify_cycle(&g).map_err(e)?.len());
        }
        let scans = [
            graphs::odd_girth_report(&golden, Some(3), seed, 200, 9).map_err(e)?,
            graphs::odd_girth_report(&o5, Some(5), seed, 200, 9).map_err(e)?,
            graphs::odd_girth_report(&silver, None, seed, 200, 9).map_err(e)?,
        ];
        let ok = tri.len() == 3
            && pent.len() == 5
            && four.len() == 4
            && lengths == (1..=10).map(|s| 3 + 2 * s).collect::<Vec<_>>()
            && scans.iter().all(|s| s.violations == 0);
        Ok(json!({
            "ok": ok,
            "triangle": cycle_rows(&tri),
            "pentagon": cycle_rows(&pent),
            "four_cycle": {"unit": u.to_string(), "graph": four},
            "extension_lengths": lengths,
            "last_extension": cycle_rows(&g),
            "odd_girth_scans": scans,
        }))
    };
    match run() {
        Ok(v) => (status(v["ok"] == json!(true)), v),
        Err(msg) => (ClaimStatus::Fail, json!({"error": msg})),
    }
}

/// Canonical representatives of real quadratic `x^2 + ax + s`, `|a| <= 6`,
/// with `|f(1)| = 1`, found without the enumeration module.
fn exceptional_quadratics() -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for a in -6i64..=6 {
        for s in [-1i64, 1] {
            let disc = a * a - 4 * s;
            let root = (disc as f64).sqrt().round() as i64;
            if disc <= 0 || root * root == disc {
                continue;
            }
            if (1 + a + s).abs() == 1 {
                let f = IntPoly::from_i64s(&[s, a, 1]);
                out.insert(enumerate::canonical(&f).to_string());
            }
        }
    }
    out
}

fn mini_enumeration(_: u64) -> (ClaimStatus, Value) {
    let filter = CandidateFilter::new(3, vec![2], 8);
    let reports = match enumerate::enumerate_candidates(&filter) {
        Ok(r) => r,
        Err(e) => return (ClaimStatus::Fail, json!({"error": e.to_string()})),
    };
    let found: BTreeSet<String> = reports.iter().filter(|r| r.ell_at_most_k()).map(|r| r.f.to_string()).collect();
    let oracle = exceptional_quadratics();
    let witnessed = reports.iter().all(|r| {
        if r.included {
            r.classification.is_some()
        } else {
            r.filters.values().any(|o| matches!(o, FilterOutcome::Fail { .. }))
        }
    });
    let ok = found == oracle && witnessed;
    (
        status(ok),
        json!({
            "candidates": reports.len(),
            "ell_at_most_3": found,
            "oracle": oracle,
            "every_report_witnessed": witnessed,
        }),
    )
}

fn upper_bound_formula(seed: u64) -> (ClaimStatus, Value) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xe);
    let mut ok = true;
    let mut rows = Vec::new();
    for _ in 0..20 {
        let d: u32 = rng.gen_range(2..=6);
        let disc: i64 = rng.gen_range(2..=1_000_000) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let reg = rank1::regulator_upper_bound(&BigInt::from(disc), d).unwrap_or(f64::NAN);
        let ad = disc.abs() as f64;
        let expect = ad.sqrt() * ad.ln().max(1.0).powi(d as i32 - 1);
        let c = rank1::bounds::upper_bound_constant(d, 1).unwrap_or(f64::NAN);
        let r = rng.gen_range(0.1..3.0);
        let ub = rank1::min_sum_upper_bound(d, 1, r).unwrap_or(f64::NAN);
        let ub_expect = 2.0 * (d as f64 + 1.0) * (r / d as f64).exp();
        let rel = |a: f64, b: f64| ((a - b) / b).abs();
        let good = rel(reg, expect) < 1e-12 && c == 1.0 / d as f64 && rel(ub, ub_expect) < 1e-12 && ub >= ub_expect;
        ok &= good;
        rows.push(json!({"d": d, "D": disc, "regulator_bound": format!("{reg:.12e}"), "upper_bound": format!("{ub:.12e}"), "ok": good}));
    }
    (status(ok), json!({"instances": rows}))
}

/// Runs the claims (all, or those named in `only`) in a fixed order.
pub fn run_claims(only: &[String], seed: u64) -> Result<SuiteReport, String> {
    for id in only {
        if !CLAIMS.iter().any(|(c, _, _)| c == id) {
            return Err(format!("unknown claim {id:?}"));
        }
    }
    let mut claims = Vec::new();
    for (id, description, f) in CLAIMS {
        if !only.is_empty() && !only.iter().any(|o| o == id) {
            continue;
        }
        let (status, details) = f(seed);
        claims.push(ClaimResult {
            id,
            description,
            status,
            details,
        });
    }
    let count = |s| claims.iter().filter(|c: &&ClaimResult| c.status == s).count();
    Ok(SuiteReport {
        seed,
        passed: count(ClaimStatus::Pass),
        failed: count(ClaimStatus::Fail),
        deviations: count(ClaimStatus::Deviation),
        claims,
    })
}
