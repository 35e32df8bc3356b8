//! Orders `Z[e]` of unit rank one with torsion `{+1, -1}` and their smallest
//! vanishing sums of units.
//!
//! Every unit of such an order is `+-eta^a` for a fundamental unit `eta`; when
//! `e` itself is fundamental, a vanishing sum of `k` units is the same thing as
//! a nonzero multiple `h` of `f` with `h(0) != 0` and length `L(h) = k`.

pub mod bounds;
pub mod fundamental;
pub mod search;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::embed::{self, EmbedError, RootBall};
use crate::fields::{self, FieldError, TorsionVerdict};
use crate::parity;
use crate::polyz::{self, IntPoly, PolyError};

pub use bounds::{closed_form_lower_bound, mignotte_lower_bound, regulator_upper_bound, min_sum_upper_bound};
pub use fundamental::{trinomial_cubic_factor, verify_fundamental, FundamentalStatus, Scope};
use search::{Engine, EngineError};

/// Orders of roots of unity that can occur in a quartic field besides `+-1`.
pub const QUARTIC_TORSION_ORDERS: [u64; 7] = [3, 4, 5, 6, 8, 10, 12];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("defining polynomial must be monic")]
    NotMonic,
    #[error("degree {0} is outside 2..=4")]
    Degree(usize),
    #[error("constant term {0} is not +-1, so the root is not a unit")]
    NotUnit(String),
    #[error("polynomial is reducible (factor {0})")]
    Reducible(String),
    #[error("signature ({r1},{r2}) gives unit rank {rank}, not 1")]
    Rank { r1: usize, r2: usize, rank: isize },
    #[error("the field contains a primitive {0}-th root of unity")]
    Torsion(u64),
    #[error("could not decide whether the field contains roots of unity of order {0}")]
    TorsionUndecided(u64),
    #[error("coefficients too large for the search engine")]
    TooLarge,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Numeric(#[from] EmbedError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("invalid search bounds: {0}")]
    InvalidBounds(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("certificate failed re-verification: {0}")]
    Certificate(String),
    #[error("conflicting certificates: {0}")]
    Conflict(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone)]
pub struct Rank1Order {
    f: IntPoly,
    coeffs: Vec<i64>,
    signature: (usize, usize),
    disc: BigInt,
    fundamental: FundamentalStatus,
    places: Vec<RootBall>,
}

#[derive(Serialize)]
struct OrderSummary<'a> {
    f: &'a IntPoly,
    text: String,
    signature: (usize, usize),
    #[serde(serialize_with = "polyz::ser_bigint")]
    disc: &'a BigInt,
    unit_rank: usize,
    torsion: &'static str,
    fundamental: &'a FundamentalStatus,
}

impl Serialize for Rank1Order {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        OrderSummary {
            f: &self.f,
            text: self.f.to_string(),
            signature: self.signature,
            disc: &self.disc,
            unit_rank: 1,
            torsion: "+-1",
            fundamental: &self.fundamental,
        }
        .serialize(serializer)
    }
}

/// Builds and validates `Z[e]`, `f(e) = 0`.
pub fn make_order(f: &IntPoly) -> Result<Rank1Order, OrderError> {
    make_order_with(f, None)
}

/// As [`make_order`], with an optional citation that is recorded as the
/// fundamentality status when no method can decide it.
pub fn make_order_with(f: &IntPoly, citation: Option<&str>) -> Result<Rank1Order, OrderError> {
    if !f.is_monic() {
        return Err(OrderError::NotMonic);
    }
    let d = f.degree().unwrap_or(0);
    if !(2..=4).contains(&d) {
        return Err(OrderError::Degree(d));
    }
    let c0 = f.coeff(0);
    if c0.abs() != BigInt::from(1) {
        return Err(OrderError::NotUnit(c0.to_string()));
    }
    if let Some(w) = fields::small_factor(f)? {
        return Err(OrderError::Reducible(w.to_string()));
    }
    let (r1, r2) = fields::signature(f)?;
    let rank = r1 as isize + r2 as isize - 1;
    if rank != 1 {
        return Err(OrderError::Rank { r1, r2, rank });
    }
    if r1 == 0 {
        for m in QUARTIC_TORSION_ORDERS {
            match fields::torsion_probe(f, m)? {
                TorsionVerdict::Absent => {}
                TorsionVerdict::Present { .. } => return Err(OrderError::Torsion(m)),
                TorsionVerdict::Inconclusive { .. } => return Err(OrderError::TorsionUndecided(m)),
            }
        }
    }
    let coeffs = f
        .to_i64s()
        .filter(|v| v.iter().all(|c| c.abs() < 1 << 40))
        .ok_or(OrderError::TooLarge)?;
    let disc = fields::discriminant(f)?;
    let places = embed::places(f, r1)?;
    let fundamental = verify_fundamental(f, (r1, r2), &disc, &places, citation);
    Ok(Rank1Order {
        f: f.clone(),
        coeffs,
        signature: (r1, r2),
        disc,
        fundamental,
        places,
    })
}

impl Rank1Order {
    pub fn f(&self) -> &IntPoly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn unit_rank(&self) -> usize {
        1
    }

    pub fn torsion_ok(&self) -> bool {
        true
    }

    pub fn fundamental(&self) -> &FundamentalStatus {
        &self.fundamental
    }

    pub fn places(&self) -> &[RootBall] {
        &self.places
    }

    pub fn coeffs_i64(&self) -> &[i64] {
        &self.coeffs
    }

    /// Search engine over digits `c * 1` with exponents in `0..=window`.
    pub fn engine(&self, window: u32) -> Engine {
        let mut one = vec![0i64; self.degree()];
        one[0] = 1;
        Engine::new(&self.coeffs, &self.places, vec![one], window)
    }

    /// Whether every unit of `Z[e]` is `+-e^a`, so that searching over powers
    /// of `e` is complete. False when some proper root of `e` lies in `Z[e]`
    /// or when undecided.
    pub fn powers_are_all_units(&self) -> bool {
        matches!(
            self.fundamental,
            FundamentalStatus::Certified { .. }
                | FundamentalStatus::Assumed { .. }
                | FundamentalStatus::Exception {
                    order_fundamental: true,
                    ..
                }
        )
    }

    /// Whether invariants of `Z[e]` are also invariants of its fraction field:
    /// `e` is known to generate the full unit group of the maximal order.
    pub fn field_level(&self) -> bool {
        matches!(
            self.fundamental,
            FundamentalStatus::Certified {
                scope: Scope::Field,
                ..
            }
        )
    }
}

/// A signed multiset of powers of `e`, sorted by `(exponent, sign)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VanishingSum {
    terms: Vec<(i8, u32)>,
}

impl Serialize for VanishingSum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for &(s, a) in &self.terms {
            seq.serialize_element(&[s as i64, a as i64])?;
        }
        seq.end()
    }
}

impl VanishingSum {
    /// Validates normalization: signs are `+-1`, the least exponent is 0 and
    /// no exponent carries both signs.
    pub fn new(mut terms: Vec<(i8, u32)>) -> Result<Self, String> {
        if terms.iter().any(|&(s, _)| s != 1 && s != -1) {
            return Err("signs must be +1 or -1".into());
        }
        terms.sort_by_key(|&(s, a)| (a, s));
        if let Some(&(_, a0)) = terms.first() {
            if a0 != 0 {
                return Err("least exponent must be 0".into());
            }
        }
        for w in terms.windows(2) {
            if w[0].1 == w[1].1 && w[0].0 != w[1].0 {
                return Err(format!("exponent {} carries both signs", w[0].1));
            }
        }
        Ok(VanishingSum { terms })
    }

    /// Terms read off a coefficient vector: `c_a` copies of `sign(c_a) e^a`.
    pub fn from_coeffs(c: &[i64]) -> Self {
        let mut terms = Vec::new();
        for (a, &ca) in c.iter().enumerate() {
            for _ in 0..ca.unsigned_abs() {
                terms.push((ca.signum() as i8, a as u32));
            }
        }
        VanishingSum { terms }
    }

    pub fn terms(&self) -> &[(i8, u32)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// All exponents shifted by `n`; the result is no longer normalized, so
    /// it is only meaningful through [`sum_to_poly`].
    pub fn shifted(&self, n: u32) -> Vec<(i8, u32)> {
        self.terms.iter().map(|&(s, a)| (s, a + n)).collect()
    }
}

impl fmt::Display for VanishingSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(s, a)) in self.terms.iter().enumerate() {
            let sign = if s < 0 { "-" } else if i > 0 { "+" } else { "" };
            write!(f, "{sign}e^{a}")?;
        }
        Ok(())
    }
}

/// `sum s_i x^(a_i)`.
pub fn sum_to_poly(s: &VanishingSum) -> IntPoly {
    terms_to_poly(&s.terms)
}

fn terms_to_poly(terms: &[(i8, u32)]) -> IntPoly {
    let n = terms.iter().map(|&(_, a)| a as usize + 1).max().unwrap_or(0);
    let mut c = vec![0i64; n];
    for &(s, a) in terms {
        c[a as usize] += s as i64;
    }
    IntPoly::from_i64s(&c)
}

pub fn is_vanishing(order: &Rank1Order, s: &VanishingSum) -> bool {
    is_vanishing_terms(order, &s.terms)
}

/// As [`is_vanishing`] for an arbitrary (possibly shifted) term list.
pub fn is_vanishing_terms(order: &Rank1Order, terms: &[(i8, u32)]) -> bool {
    polyz::divides(&order.f, &terms_to_poly(terms))
        .expect("f is nonzero")
        .is_some()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum SubsumStatus {
    Free,
    Has { witness: IntPoly },
    Unchecked { terms: usize, cap: u32 },
    NotRequired,
}

/// Whether some proper nonempty sub-multiset of `s` vanishes. Sums longer
/// than `cap` are reported as unchecked.
pub fn has_proper_vanishing_subsum(
    order: &Rank1Order,
    s: &VanishingSum,
    cap: u32,
) -> Result<SubsumStatus, SearchError> {
    if s.len() > cap as usize {
        return Ok(SubsumStatus::Unchecked {
            terms: s.len(),
            cap,
        });
    }
    let h = sum_to_poly(s).to_i64s().expect("small coefficients");
    let eng = order.engine(h.len() as u32);
    Ok(match search::proper_dominated_multiple(&eng, &h)? {
        Some(w) => SubsumStatus::Has {
            witness: IntPoly::from_i64s(&w),
        },
        None => SubsumStatus::Free,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub max_k: u32,
    pub exp_window: u32,
    pub subsum_check_cap: u32,
}

impl SearchBounds {
    pub const DEFAULT_SUBSUM_CAP: u32 = 24;

    /// `max_k` with the default window `2 * max_k`.
    pub fn new(max_k: u32) -> Self {
        SearchBounds {
            max_k,
            exp_window: 2 * max_k,
            subsum_check_cap: Self::DEFAULT_SUBSUM_CAP,
        }
    }

    pub fn with_window(mut self, w: u32) -> Self {
        self.exp_window = w;
        self
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.max_k == 0 || self.exp_window == 0 || self.subsum_check_cap == 0 {
            return Err(SearchError::InvalidBounds("all bounds must be positive".into()));
        }
        if self.max_k > 200 {
            return Err(SearchError::InvalidBounds("max_k above 200".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filter {
    Any,
    OddOnly,
    EvenSubsumFree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertKind {
    ExactWithinBounds,
    UpperBound,
    LowerBoundClosedForm,
    /// no qualifying sum with at most `max_k` terms inside the window
    ExceedsSearch,
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundChecks {
    pub closed_form: Option<u64>,
    pub mignotte: String,
    pub coherent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Checks {
    pub divides: Option<bool>,
    pub length_matches: Option<bool>,
    pub subsum_free: SubsumStatus,
    pub bounds: BoundChecks,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub kind: CertKind,
    pub k: Option<u32>,
    /// strict lower bound information for `ExceedsSearch`: no sum with fewer
    /// than this many terms exists inside the window
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at_least: Option<u32>,
    pub terms: Option<VanishingSum>,
    pub h: Option<IntPoly>,
    pub checks: Checks,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchBounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Certificate {
    pub fn is_finite(&self) -> bool {
        self.k.is_some()
    }

    pub fn is_infinite(&self) -> bool {
        self.kind == CertKind::Infinite
    }

    fn bound_checks(f: &IntPoly, k: Option<u32>) -> BoundChecks {
        let closed_form = closed_form_lower_bound(f);
        let mig = mignotte_lower_bound(f);
        let coherent = match k {
            Some(k) => {
                closed_form.is_none_or(|l| k as u64 >= l) && BigRational::from_integer(k.into()) >= mig
            }
            None => true,
        };
        BoundChecks {
            closed_form,
            mignotte: mig.to_string(),
            coherent,
        }
    }

    /// A certificate for `L(h) = k` built from a coefficient vector, with every
    /// check recomputed from scratch.
    pub fn from_multiple(
        order: &Rank1Order,
        coeffs: &[i64],
        kind: CertKind,
        require_subsum_free: bool,
        bounds: Option<SearchBounds>,
        subsum_cap: u32,
    ) -> Result<Certificate, SearchError> {
        let sum = VanishingSum::from_coeffs(coeffs);
        let h = IntPoly::from_i64s(coeffs);
        let k = sum.len() as u32;
        let divides = polyz::divides(&order.f, &h)?.is_some();
        let length_matches = h.length() == BigInt::from(k);
        let subsum = if require_subsum_free || k <= subsum_cap {
            has_proper_vanishing_subsum(order, &sum, subsum_cap)?
        } else {
            SubsumStatus::NotRequired
        };
        let bounds_check = Self::bound_checks(&order.f, Some(k));
        if !divides || !length_matches || !bounds_check.coherent {
            return Err(SearchError::Certificate(format!(
                "h = {h}: divides {divides}, length {length_matches}, bounds {}",
                bounds_check.coherent
            )));
        }
        if require_subsum_free && subsum != SubsumStatus::Free {
            return Err(SearchError::Certificate(format!(
                "h = {h} is not verified subsum-free: {subsum:?}"
            )));
        }
        Ok(Certificate {
            kind,
            k: Some(k),
            at_least: None,
            terms: Some(sum),
            h: Some(h),
            checks: Checks {
                divides: Some(divides),
                length_matches: Some(length_matches),
                subsum_free: subsum,
                bounds: bounds_check,
            },
            search: bounds,
            reason: None,
        })
    }

    fn without_sum(f: &IntPoly, kind: CertKind, at_least: Option<u32>, search: Option<SearchBounds>, reason: Option<String>) -> Certificate {
        Certificate {
            kind,
            k: None,
            at_least,
            terms: None,
            h: None,
            checks: Checks {
                divides: None,
                length_matches: None,
                subsum_free: SubsumStatus::NotRequired,
                bounds: Self::bound_checks(f, None),
            },
            search,
            reason,
        }
    }

    pub fn infinite(f: &IntPoly, reason: impl Into<String>) -> Certificate {
        Self::without_sum(f, CertKind::Infinite, None, None, Some(reason.into()))
    }

    pub fn exceeds(f: &IntPoly, bounds: SearchBounds) -> Certificate {
        Self::without_sum(
            f,
            CertKind::ExceedsSearch,
            Some(bounds.max_k + 1),
            Some(bounds),
            Some(format!(
                "no qualifying sum with at most {} terms and exponents at most {}",
                bounds.max_k, bounds.exp_window
            )),
        )
    }

    /// Closed-form lower bound `k >= value`.
    pub fn closed_form_lower(f: &IntPoly, value: u32, method: &str) -> Certificate {
        let mut c = Self::without_sum(f, CertKind::LowerBoundClosedForm, Some(value), None, Some(method.into()));
        c.k = Some(value);
        c
    }
}

fn k_sequence(filter: Filter, max_k: u32) -> Vec<u32> {
    match filter {
        Filter::Any => (3..=max_k).collect(),
        Filter::OddOnly => (3..=max_k).step_by(2).collect(),
        Filter::EvenSubsumFree => (4..=max_k).step_by(2).collect(),
    }
}

fn flatten(digits: &[Vec<i64>]) -> Vec<i64> {
    digits.iter().map(|d| d[0]).collect()
}

/// Smallest `k` admitting a vanishing sum of `k` units (subject to `filter`)
/// inside the bounds, by iterative deepening on `k`. The certificate holds the
/// least term list among the minimal sums.
pub fn min_vanishing_length(
    order: &Rank1Order,
    bounds: SearchBounds,
    filter: Filter,
) -> Result<Certificate, SearchError> {
    bounds.validate()?;
    if filter == Filter::EvenSubsumFree && bounds.max_k > bounds.subsum_check_cap {
        return Err(SearchError::InvalidBounds(format!(
            "subsum-free search needs max_k <= subsum_check_cap ({})",
            bounds.subsum_check_cap
        )));
    }
    let eng = order.engine(bounds.exp_window);
    let subsum_free = |digits: &[Vec<i64>]| -> bool {
        let h = flatten(digits);
        matches!(search::proper_dominated_multiple(&eng, &h), Ok(None))
    };
    let any = |_: &[Vec<i64>]| true;
    for k in k_sequence(filter, bounds.max_k) {
        let hit = match filter {
            Filter::EvenSubsumFree => eng.search(k, &subsum_free, true)?,
            _ => eng.search(k, &any, false)?,
        };
        if let Some(digits) = hit {
            let kind = if order.powers_are_all_units() {
                CertKind::ExactWithinBounds
            } else {
                CertKind::UpperBound
            };
            return Certificate::from_multiple(
                order,
                &flatten(&digits),
                kind,
                filter == Filter::EvenSubsumFree,
                Some(bounds),
                bounds.subsum_check_cap,
            );
        }
    }
    Ok(Certificate::exceeds(&order.f, bounds))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Invariants {
    pub ell: Certificate,
    pub od: Certificate,
    pub ev: Certificate,
    pub scope: Scope,
}

/// `ell`, `od` and `ev` of the order, combining search with the parity
/// criteria that force `od` to be infinite.
pub fn invariants_of_order(order: &Rank1Order, bounds: SearchBounds) -> Result<Invariants, SearchError> {
    let ell = min_vanishing_length(order, bounds, Filter::Any)?;
    let od = if let Ok(true) = parity::od_infinite_by_even_fundamental(order) {
        Certificate::infinite(&order.f, "fundamental unit is even, so every unit is even")
    } else if let Some(w) = parity::all_units_even_criterion(&order.f) {
        Certificate::infinite(
            &order.f,
            format!("f({}) = {}: every unit is 1 modulo a prime of norm 2", w.shift, w.value),
        )
    } else {
        min_vanishing_length(order, bounds, Filter::OddOnly)?
    };
    let ev_bounds = SearchBounds {
        max_k: bounds.max_k.min(bounds.subsum_check_cap),
        ..bounds
    };
    let ev = min_vanishing_length(order, ev_bounds, Filter::EvenSubsumFree)?;

    if let Some(k) = ell.k {
        if k % 2 == 1 && od.is_infinite() {
            return Err(SearchError::Conflict(format!("odd sum of {k} units but od is infinite")));
        }
        let (partner, reach) = if k % 2 == 1 { (&od, bounds.max_k) } else { (&ev, ev_bounds.max_k) };
        if k <= reach && !partner.is_infinite() && partner.k != Some(k) {
            return Err(SearchError::Conflict(format!(
                "ell = {k} but the parity-filtered search reports {:?}",
                partner.k
            )));
        }
    }
    for c in [&od, &ev] {
        if let (Some(kc), Some(kl)) = (c.k, ell.k) {
            if kc < kl {
                return Err(SearchError::Conflict(format!("filtered minimum {kc} below ell = {kl}")));
            }
        }
        if c.k.is_some() && ell.kind == CertKind::ExceedsSearch {
            return Err(SearchError::Conflict("filtered sum found but unfiltered search failed".into()));
        }
    }
    Ok(Invariants {
        ell,
        od,
        ev,
        scope: if order.field_level() { Scope::Field } else { Scope::Order },
    })
}

/// All `k <= cap` admitting a subsum-free vanishing sum of `k` units with
/// exponents in `0..=window`.
pub fn lengths_spectrum(order: &Rank1Order, cap: u32, window: u32) -> Result<BTreeSet<u32>, SearchError> {
    if cap > SearchBounds::DEFAULT_SUBSUM_CAP {
        return Err(SearchError::InvalidBounds(format!(
            "spectrum cap {cap} above {}",
            SearchBounds::DEFAULT_SUBSUM_CAP
        )));
    }
    let eng = order.engine(window);
    let subsum_free = |digits: &[Vec<i64>]| matches!(search::proper_dominated_multiple(&eng, &flatten(digits)), Ok(None));
    let mut out = BTreeSet::new();
    for k in 3..=cap {
        if eng.search(k, &subsum_free, true)?.is_some() {
            out.insert(k);
        }
    }
    Ok(out)
}

/// Runs `f` on a dedicated pool of `workers` threads.
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool")
        .install(f)
}

/// `|f(1)|` as a machine integer when it fits; convenience for reports.
pub fn value_at_one(f: &IntPoly) -> Option<i64> {
    f.eval_i64(1).to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn golden() -> Rank1Order {
        make_order(&p("x^2-x-1")).unwrap()
    }

    fn vs(t: &[(i8, u32)]) -> VanishingSum {
        VanishingSum::new(t.to_vec()).unwrap()
    }

    #[test]
    fn order_construction() {
        let o = golden();
        assert_eq!(o.signature(), (2, 0));
        assert_eq!(o.unit_rank(), 1);
        assert!(matches!(o.fundamental(), FundamentalStatus::Certified { .. }));
        assert_eq!(make_order(&p("x^3+3x+1")).unwrap().signature(), (1, 1));
        assert!(matches!(make_order(&p("x^2+x+1")), Err(OrderError::Rank { .. })));
        assert!(matches!(make_order(&p("x^3+2x+2")), Err(OrderError::NotUnit(_))));
        assert!(matches!(make_order(&p("x^2-1")), Err(OrderError::Reducible(_))));
        assert!(matches!(make_order(&p("x^3-2x-1")), Err(OrderError::Reducible(_))));
        assert!(matches!(make_order(&p("x^4+1")), Err(OrderError::Torsion(_))));
        assert!(matches!(make_order(&p("x^3-3x+1")), Err(OrderError::Rank { .. })));
    }

    #[test]
    fn sums_and_polys() {
        assert_eq!(sum_to_poly(&vs(&[(1, 2), (-1, 1), (-1, 0)])), p("x^2-x-1"));
        assert_eq!(sum_to_poly(&VanishingSum::default()), IntPoly::zero());
        assert_eq!(sum_to_poly(&vs(&[(1, 3), (-1, 1), (-1, 1), (-1, 0)])), p("x^3-2x-1"));
        assert!(VanishingSum::new(vec![(1, 1), (-1, 1)]).is_err());
        assert!(VanishingSum::new(vec![(1, 1)]).is_err());
    }

    #[test]
    fn vanishing_checks() {
        let o = golden();
        assert!(is_vanishing(&o, &vs(&[(1, 2), (-1, 1), (-1, 0)])));
        assert!(!is_vanishing(&o, &vs(&[(1, 1), (-1, 0)])));
        assert!(is_vanishing(&o, &vs(&[(1, 3), (-1, 1), (-1, 1), (-1, 0)])));
    }

    #[test]
    fn subsums() {
        let o = golden();
        let three = vs(&[(1, 2), (-1, 1), (-1, 0)]);
        assert_eq!(has_proper_vanishing_subsum(&o, &three, 24).unwrap(), SubsumStatus::Free);
        let mut six = three.terms().to_vec();
        six.extend(three.shifted(3));
        let six = VanishingSum::new(six).unwrap();
        assert!(matches!(has_proper_vanishing_subsum(&o, &six, 24).unwrap(), SubsumStatus::Has { .. }));
        let four = vs(&[(1, 3), (-1, 1), (-1, 1), (-1, 0)]);
        assert_eq!(has_proper_vanishing_subsum(&o, &four, 24).unwrap(), SubsumStatus::Free);
        assert!(matches!(
            has_proper_vanishing_subsum(&o, &six, 5).unwrap(),
            SubsumStatus::Unchecked { terms: 6, cap: 5 }
        ));
    }

    #[test]
    fn golden_minima() {
        let o = golden();
        let any = min_vanishing_length(&o, SearchBounds::new(6), Filter::Any).unwrap();
        assert_eq!(any.k, Some(3));
        assert_eq!(any.h, Some(p("x^2-x-1")));
        let ev = min_vanishing_length(&o, SearchBounds::new(6), Filter::EvenSubsumFree).unwrap();
        assert_eq!(ev.k, Some(4));
        assert_eq!(ev.h, Some(p("x^3-2x-1")));
        assert_eq!(ev.checks.subsum_free, SubsumStatus::Free);
    }

    #[test]
    fn small_family_minima() {
        let o = make_order(&p("x^2-3x-1")).unwrap();
        assert_eq!(min_vanishing_length(&o, SearchBounds::new(6), Filter::Any).unwrap().k, Some(5));
        let o = make_order(&p("x^3+3x+1")).unwrap();
        assert_eq!(min_vanishing_length(&o, SearchBounds::new(6), Filter::Any).unwrap().k, Some(5));
    }

    #[test]
    fn invariants() {
        let inv = invariants_of_order(&golden(), SearchBounds::new(6)).unwrap();
        assert_eq!((inv.ell.k, inv.od.k, inv.ev.k), (Some(3), Some(3), Some(4)));
        let silver = make_order(&p("x^2-2x-1")).unwrap();
        let inv = invariants_of_order(&silver, SearchBounds::new(8)).unwrap();
        assert!(inv.od.is_infinite());
        assert_eq!(inv.ev.k, Some(4));
        assert_eq!(inv.ell.k, Some(4));
    }

    #[test]
    fn spectrum() {
        let o = golden();
        let s = lengths_spectrum(&o, 4, 8).unwrap();
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![3, 4]);
        assert!(lengths_spectrum(&o, 2, 8).unwrap().is_empty());
    }

    #[test]
    fn bad_bounds() {
        let o = golden();
        let b = SearchBounds { max_k: 0, exp_window: 4, subsum_check_cap: 24 };
        assert!(min_vanishing_length(&o, b, Filter::Any).is_err());
        let b = SearchBounds { max_k: 30, exp_window: 4, subsum_check_cap: 24 };
        assert!(min_vanishing_length(&o, b, Filter::EvenSubsumFree).is_err());
    }
}
