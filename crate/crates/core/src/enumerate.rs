//! Enumeration of unit polynomials of degree 2 to 4 up to a length cap,
//! with exact field filters and a classification of `ell <= k`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

pub use crate::fields::{
    discriminant, has_real_quadratic_subfield, irreducible_small, quadratic_subfields, resolvent_cubic, signature,
    torsion_probe, FieldError, TorsionVerdict,
};
use crate::polyz::{self, ElementRep, IntPoly};
use crate::rank1::{self, CertKind, Certificate, Filter, SearchBounds};

#[derive(Debug, Error)]
pub enum EnumerateError {
    #[error("invalid filter: {0}")]
    InvalidFilter(String),
    #[error("refusing to enumerate about {estimate} candidates (limit {limit}); lower the cap or raise the limit")]
    Refused { estimate: u128, limit: u128 },
    #[error("checkpoint does not match this enumeration: {0}")]
    Checkpoint(String),
    #[error("output sink failed: {0}")]
    Sink(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum QuarticTorsionMode {
    /// fields containing `i` are excluded; the report keeps the `16k^2` bound
    Exclude,
    /// fields containing `i` are classified by a search over sums of `i^s e^a`
    GaussianBranch { max_k: u32, window: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateFilter {
    pub k: u32,
    pub degrees: Vec<usize>,
    pub length_cap: u64,
    pub quartic_torsion_mode: QuarticTorsionMode,
    /// exponent window of the classification search
    pub window: u32,
    /// refusal threshold on the number of raw candidates
    pub max_candidates: u128,
}

impl CandidateFilter {
    pub const DEFAULT_MAX_CANDIDATES: u128 = 2_000_000;

    /// Filter with `length_cap = min(16k, user_cap)`.
    pub fn new(k: u32, degrees: Vec<usize>, user_cap: u64) -> Self {
        CandidateFilter {
            k,
            degrees,
            length_cap: user_cap.min(16 * k as u64),
            quartic_torsion_mode: QuarticTorsionMode::Exclude,
            window: 2 * k,
            max_candidates: Self::DEFAULT_MAX_CANDIDATES,
        }
    }

    pub fn validate(&self) -> Result<(), EnumerateError> {
        let bad = |m: String| Err(EnumerateError::InvalidFilter(m));
        if self.k < 3 {
            return bad(format!("k = {} < 3", self.k));
        }
        if self.length_cap < 3 {
            return bad(format!("length cap {} < 3", self.length_cap));
        }
        if self.degrees.is_empty() || self.degrees.iter().any(|d| !(2..=4).contains(d)) {
            return bad(format!("degrees {:?} must be a nonempty subset of {{2, 3, 4}}", self.degrees));
        }
        if self.window == 0 {
            return bad("window must be positive".into());
        }
        SearchBounds::new(self.k)
            .with_window(self.window)
            .validate()
            .map_err(|e| EnumerateError::InvalidFilter(e.to_string()))?;
        if let QuarticTorsionMode::GaussianBranch { max_k, window } = self.quartic_torsion_mode {
            if !(3..=6).contains(&max_k) || !(1..=8).contains(&window) {
                return bad("gaussian branch needs 3 <= max_k <= 6 and 1 <= window <= 8".into());
            }
        }
        Ok(())
    }
}

/// `L(P) + L(Q)`, the length of `P + iQ`.
pub fn lstar(p: &IntPoly, q: &IntPoly) -> BigInt {
    p.length() + q.length()
}

/// `16 k^2`, the length bound for fields containing `i`.
pub fn gaussian_branch_bound(k: u64) -> u64 {
    16 * k * k
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum FilterOutcome {
    Pass,
    Fail { witness: Value },
    Inconclusive { reason: String },
}

/// Explicit units summing to zero, each with its norm.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnitSum {
    pub terms: Vec<IntPoly>,
    pub norms: Vec<String>,
    pub vanishes: bool,
}

impl UnitSum {
    fn check(f: &IntPoly, terms: Vec<IntPoly>) -> Result<UnitSum, polyz::PolyError> {
        let norms = terms
            .iter()
            .map(|t| ElementRep::new(f, t).and_then(|e| e.norm(f)))
            .collect::<Result<Vec<_>, _>>()?;
        let total = terms.iter().fold(IntPoly::zero(), |s, t| &s + t);
        Ok(UnitSum {
            vanishes: total.rem_monic(f)?.is_zero(),
            norms: norms.iter().map(|n| n.to_string()).collect(),
            terms,
        })
    }

    pub fn is_valid(&self) -> bool {
        self.vanishes && self.norms.iter().all(|n| n == "1" || n == "-1")
    }
}

/// `P(e) + i Q(e) = 0` with `i = generator(e) / denominator`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussianSum {
    pub p: IntPoly,
    pub q: IntPoly,
    pub i_generator: IntPoly,
    #[serde(serialize_with = "polyz::ser_bigint")]
    pub i_denominator: BigInt,
    #[serde(serialize_with = "polyz::ser_bigint")]
    pub lstar: BigInt,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum EllWitness {
    /// `e + (1 - e) - 1 = 0` or `(1 + e) - e - 1 = 0`
    ExceptionalUnit(UnitSum),
    Search(Certificate),
    Gaussian(GaussianSum),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum Classification {
    EllAtMostK { ell: u32, certificate: EllWitness },
    EllAboveKWithinBounds { certificate: Certificate },
    Deferred { reason: String, length_bound: u64 },
    Undecided { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldReport {
    pub f: IntPoly,
    pub signature: Option<(usize, usize)>,
    pub disc: Option<String>,
    pub filters: BTreeMap<String, FilterOutcome>,
    pub included: bool,
    pub classification: Option<Classification>,
}

impl FieldReport {
    pub fn ell_at_most_k(&self) -> bool {
        matches!(self.classification, Some(Classification::EllAtMostK { .. }))
    }
}

/// `(-1)^d f(-x)`.
pub fn negate_monic(f: &IntPoly) -> IntPoly {
    let g = f.negate_variable();
    if f.degree().unwrap_or(0) % 2 == 1 {
        -g
    } else {
        g
    }
}

/// `x^d f(1/x) / f(0)`, monic when `f(0) = +-1`.
pub fn reciprocal_monic(f: &IntPoly) -> IntPoly {
    let r = f.reversed();
    if f.coeff(0).is_negative() {
        -r
    } else {
        r
    }
}

fn canon_key(f: &IntPoly) -> Vec<BigInt> {
    f.coeffs().iter().rev().cloned().collect()
}

/// Least element, by coefficients from the top, of the orbit under
/// `x -> -x` and `x -> 1/x`.
pub fn canonical(f: &IntPoly) -> IntPoly {
    let n = negate_monic(f);
    let r = reciprocal_monic(f);
    let nr = negate_monic(&r);
    [f.clone(), n, r, nr]
        .into_iter()
        .min_by_key(canon_key)
        .expect("nonempty orbit")
}

/// Integer vectors of dimension `n` with `sum |v_i| <= m`.
fn l1_ball_count(n: u64, m: u64) -> u128 {
    let binom = |a: u64, b: u64| -> u128 {
        if b > a {
            return 0;
        }
        let mut r: u128 = 1;
        for i in 0..b {
            r = r * (a - i) as u128 / (i + 1) as u128;
        }
        r
    };
    (0..=n.min(m)).map(|j| (1u128 << j) * binom(n, j) * binom(m, j)).sum()
}

/// Raw candidates before symmetry reduction.
pub fn candidate_count(filter: &CandidateFilter) -> u128 {
    filter
        .degrees
        .iter()
        .map(|&d| 2 * l1_ball_count(d as u64 - 1, filter.length_cap.saturating_sub(2)))
        .sum()
}

fn middle_vectors(n: usize, budget: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    for c in -budget..=budget {
        cur.push(c);
        middle_vectors(n, budget - c.abs(), cur, out);
        cur.pop();
    }
}

/// Canonical candidates in enumeration order: degree ascending, then length,
/// then coefficients from the top.
pub fn candidates(filter: &CandidateFilter) -> Result<Vec<IntPoly>, EnumerateError> {
    filter.validate()?;
    let estimate = candidate_count(filter);
    if estimate > filter.max_candidates {
        return Err(EnumerateError::Refused {
            estimate,
            limit: filter.max_candidates,
        });
    }
    let mut degrees = filter.degrees.clone();
    degrees.sort_unstable();
    degrees.dedup();
    let budget = filter.length_cap as i64 - 2;
    let mut out = Vec::new();
    for d in degrees {
        let mut mids = Vec::new();
        middle_vectors(d - 1, budget, &mut Vec::new(), &mut mids);
        let mut polys: Vec<IntPoly> = Vec::new();
        for m in &mids {
            for s in [-1i64, 1] {
                let mut c = vec![s];
                c.extend_from_slice(m);
                c.push(1);
                let f = IntPoly::from_i64s(&c);
                if canonical(&f) == f {
                    polys.push(f);
                }
            }
        }
        polys.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| canon_key(a).cmp(&canon_key(b))));
        out.extend(polys);
    }
    Ok(out)
}

fn wanted_signature(d: usize) -> (usize, usize) {
    match d {
        2 => (2, 0),
        3 => (1, 1),
        _ => (0, 2),
    }
}

fn exceptional_fast_path(f: &IntPoly) -> Result<Option<UnitSum>, polyz::PolyError> {
    let one = BigInt::from(1);
    let terms = if f.eval_i64(1).abs() == one {
        vec![IntPoly::x(), IntPoly::from_i64s(&[1, -1]), IntPoly::from_i64s(&[-1])]
    } else if f.eval_i64(-1).abs() == one {
        vec![IntPoly::from_i64s(&[1, 1]), IntPoly::from_i64s(&[0, -1]), IntPoly::from_i64s(&[-1])]
    } else {
        return Ok(None);
    };
    let s = UnitSum::check(f, terms)?;
    assert!(s.is_valid(), "fast-path identity failed for {f}");
    Ok(Some(s))
}

/// Filters and classification of a single candidate; a pure function of
/// `f` and `filter`.
pub fn classify(f: &IntPoly, filter: &CandidateFilter) -> FieldReport {
    let mut rep = FieldReport {
        f: f.clone(),
        signature: None,
        disc: None,
        filters: BTreeMap::new(),
        included: false,
        classification: None,
    };
    let d = f.degree().unwrap_or(0);
    let k = filter.k;
    macro_rules! fail {
        ($name:expr, $outcome:expr) => {{
            rep.filters.insert($name.to_string(), $outcome);
            return rep;
        }};
    }
    let err = |e: &dyn std::fmt::Display| FilterOutcome::Inconclusive { reason: e.to_string() };

    match crate::fields::small_factor(f) {
        Ok(None) => {
            rep.filters.insert("irreducible".into(), FilterOutcome::Pass);
        }
        Ok(Some(g)) => fail!("irreducible", FilterOutcome::Fail { witness: json!({"factor": g.to_string()}) }),
        Err(e) => fail!("irreducible", err(&e)),
    }
    match signature(f) {
        Ok(sig) => {
            rep.signature = Some(sig);
            if sig != wanted_signature(d) {
                fail!("signature", FilterOutcome::Fail { witness: json!({"r1": sig.0, "r2": sig.1}) });
            }
            rep.filters.insert("signature".into(), FilterOutcome::Pass);
        }
        Err(e) => fail!("signature", err(&e)),
    }
    rep.disc = discriminant(f).ok().map(|v| v.to_string());

    let mut gaussian: Option<(IntPoly, BigInt)> = None;
    if d == 4 {
        match quadratic_subfields(f) {
            Ok(subs) => match subs.into_iter().find(|s| s.real) {
                Some(s) => fail!("real_quadratic_subfield", FilterOutcome::Fail { witness: serde_json::to_value(s).expect("plain data") }),
                None => {
                    rep.filters.insert("real_quadratic_subfield".into(), FilterOutcome::Pass);
                }
            },
            Err(e) => fail!("real_quadratic_subfield", err(&e)),
        }
        match torsion_probe(f, 3) {
            Ok(TorsionVerdict::Absent) => {
                rep.filters.insert("zeta3".into(), FilterOutcome::Pass);
            }
            Ok(v @ TorsionVerdict::Present { .. }) => {
                fail!("zeta3", FilterOutcome::Fail { witness: serde_json::to_value(v).expect("plain data") })
            }
            Ok(TorsionVerdict::Inconclusive { reason }) => fail!("zeta3", FilterOutcome::Inconclusive { reason }),
            Err(e) => fail!("zeta3", err(&e)),
        }
        match torsion_probe(f, 4) {
            Ok(TorsionVerdict::Absent) => {
                rep.filters.insert("gaussian".into(), FilterOutcome::Pass);
            }
            Ok(TorsionVerdict::Present { generator, denominator }) => match filter.quartic_torsion_mode {
                QuarticTorsionMode::Exclude => fail!(
                    "gaussian",
                    FilterOutcome::Fail {
                        witness: json!({
                            "i_generator": generator.to_string(),
                            "i_denominator": denominator.to_string(),
                            "length_bound": gaussian_branch_bound(k as u64),
                        })
                    }
                ),
                QuarticTorsionMode::GaussianBranch { .. } => {
                    rep.filters.insert("gaussian".into(), FilterOutcome::Pass);
                    gaussian = Some((generator, denominator));
                }
            },
            Ok(TorsionVerdict::Inconclusive { reason }) => fail!("gaussian", FilterOutcome::Inconclusive { reason }),
            Err(e) => fail!("gaussian", err(&e)),
        }
    }
    rep.included = true;

    rep.classification = Some(match exceptional_fast_path(f) {
        Ok(Some(s)) => Classification::EllAtMostK {
            ell: 3,
            certificate: EllWitness::ExceptionalUnit(s),
        },
        Err(e) => Classification::Undecided { reason: e.to_string() },
        Ok(None) => match (&gaussian, filter.quartic_torsion_mode) {
            (Some((g, den)), QuarticTorsionMode::GaussianBranch { max_k, window }) => {
                gaussian_classify(f, g, den, k.min(max_k), window)
            }
            _ => search_classify(f, filter),
        },
    });
    rep
}

fn search_classify(f: &IntPoly, filter: &CandidateFilter) -> Classification {
    let order = match rank1::make_order(f) {
        Ok(o) => o,
        Err(e) => return Classification::Undecided { reason: e.to_string() },
    };
    let bounds = SearchBounds::new(filter.k).with_window(filter.window);
    match rank1::min_vanishing_length(&order, bounds, Filter::Any) {
        Ok(c) if c.kind == CertKind::ExceedsSearch => Classification::EllAboveKWithinBounds { certificate: c },
        Ok(c) => Classification::EllAtMostK {
            ell: c.k.expect("finite certificate"),
            certificate: EllWitness::Search(c),
        },
        Err(e) => Classification::Undecided { reason: e.to_string() },
    }
}

/// Smallest `P + iQ` with `P(e) + i Q(e) = 0`, `L(P) + L(Q) <= max_k`,
/// exponents in `0..=window` and exponent 0 used.
fn gaussian_classify(f: &IntPoly, g: &IntPoly, den: &BigInt, max_k: u32, window: u32) -> Classification {
    let d = f.degree().unwrap_or(0);
    let fit = |p: &IntPoly| -> Option<Vec<i128>> {
        (0..d).map(|j| p.coeff(j).to_i64().map(i128::from)).collect()
    };
    let mut cols: Vec<(Vec<i128>, Vec<i128>)> = Vec::new();
    for j in 0..=window as usize {
        let ej = match IntPoly::monomial(1, j).rem_monic(f) {
            Ok(v) => v,
            Err(e) => return Classification::Undecided { reason: e.to_string() },
        };
        let a = ej.scale(den);
        let b = match polyz::mul_mod(g, &ej, f) {
            Ok(v) => v,
            Err(e) => return Classification::Undecided { reason: e.to_string() },
        };
        match (fit(&a), fit(&b)) {
            (Some(a), Some(b)) => cols.push((a, b)),
            _ => {
                return Classification::Undecided {
                    reason: "gaussian branch coordinates exceed machine range".into(),
                }
            }
        }
    }
    for k in 3..=max_k as i64 {
        let mut digits = vec![(0i64, 0i64); cols.len()];
        let mut acc = vec![0i128; d];
        if gaussian_dfs(&cols, 0, k, &mut acc, &mut digits) {
            let p = IntPoly::from_i64s(&digits.iter().map(|x| x.0).collect::<Vec<_>>());
            let q = IntPoly::from_i64s(&digits.iter().map(|x| x.1).collect::<Vec<_>>());
            // exact recheck: den P(e) + g(e) Q(e) = 0 mod f
            let lhs = &p.scale(den) + &polyz::mul_mod(g, &q, f).expect("monic modulus");
            assert!(lhs.rem_monic(f).expect("monic").is_zero(), "gaussian witness failed recheck");
            return Classification::EllAtMostK {
                ell: k as u32,
                certificate: EllWitness::Gaussian(GaussianSum {
                    lstar: lstar(&p, &q),
                    p,
                    q,
                    i_generator: g.clone(),
                    i_denominator: den.clone(),
                }),
            };
        }
    }
    let mut c = Certificate::exceeds(f, SearchBounds::new(max_k).with_window(window));
    c.reason = Some(format!(
        "no P + iQ with L(P) + L(Q) <= {max_k} and exponents at most {window} vanishes"
    ));
    Classification::EllAboveKWithinBounds { certificate: c }
}

fn gaussian_dfs(
    cols: &[(Vec<i128>, Vec<i128>)],
    pos: usize,
    rem: i64,
    acc: &mut Vec<i128>,
    digits: &mut Vec<(i64, i64)>,
) -> bool {
    if rem == 0 {
        return acc.iter().all(|v| *v == 0);
    }
    if pos == cols.len() {
        return false;
    }
    let (a, b) = &cols[pos];
    for w in 0..=rem {
        // position 0 must carry weight
        if pos == 0 && w == 0 {
            continue;
        }
        for p in -w..=w {
            let qa = w - p.abs();
            for q in if qa == 0 { vec![0] } else { vec![-qa, qa] } {
                for (i, v) in acc.iter_mut().enumerate() {
                    *v += p as i128 * a[i] + q as i128 * b[i];
                }
                digits[pos] = (p, q);
                if gaussian_dfs(cols, pos + 1, rem - w, acc, digits) {
                    return true;
                }
                for (i, v) in acc.iter_mut().enumerate() {
                    *v -= p as i128 * a[i] + q as i128 * b[i];
                }
                digits[pos] = (0, 0);
            }
        }
    }
    false
}

/// Position in a candidate list, written after each emitted report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub index: usize,
    pub last: String,
}

/// Classifies candidates from `start` on, in parallel chunks, handing
/// reports to `sink` in enumeration order.
pub fn run_enumeration(
    filter: &CandidateFilter,
    resume: Option<&Checkpoint>,
    mut sink: impl FnMut(&FieldReport, &Checkpoint) -> Result<(), String>,
) -> Result<usize, EnumerateError> {
    let cands = candidates(filter)?;
    let start = match resume {
        None => 0,
        Some(cp) => {
            let at = cands.get(cp.index).map(|f| f.to_string());
            if at.as_deref() != Some(cp.last.as_str()) {
                return Err(EnumerateError::Checkpoint(format!(
                    "candidate {} is {:?}, checkpoint says {:?}",
                    cp.index, at, cp.last
                )));
            }
            cp.index + 1
        }
    };
    let mut emitted = 0;
    for (chunk_no, chunk) in cands[start.min(cands.len())..].chunks(256).enumerate() {
        let reports: Vec<FieldReport> = chunk.par_iter().map(|f| classify(f, filter)).collect();
        for (i, r) in reports.iter().enumerate() {
            let cp = Checkpoint {
                index: start + chunk_no * 256 + i,
                last: r.f.to_string(),
            };
            sink(r, &cp).map_err(EnumerateError::Sink)?;
            emitted += 1;
        }
    }
    Ok(emitted)
}

/// Collects every report; convenience for tests and small runs.
pub fn enumerate_candidates(filter: &CandidateFilter) -> Result<Vec<FieldReport>, EnumerateError> {
    let mut out = Vec::new();
    run_enumeration(filter, None, |r, _| {
        out.push(r.clone());
        Ok(())
    })?;
    Ok(out)
}
