//! Deciding whether a unit `e` generates its unit group modulo torsion.
//!
//! Real quadratic units: `e` generates the units of `Z[e]` except for
//! `(3 +- sqrt 5)/2`; an exact root test upgrades this to the maximal order.
//! Complex cubic trinomials `x^3 + A x +- 1`: the classification of cubic
//! factors of `x^(3m) + A x^m +- 1`. Other complex cubics: Artin's inequality
//! `|d_K| < 4 eta^3 + 24` bounds the exponent, and each surviving exponent
//! gets an exact root test.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::embed::{self, RootBall};
use crate::fields;
use crate::polyz::{self, IntPoly, PolyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    /// the unit group of `Z[e]`
    Order,
    /// the unit group of the maximal order of `Q(e)`
    Field,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Louboutin,
    LouboutinPowerTest,
    TverbergBremner,
    /// classical inequality plus exact root tests; not a published certificate
    ArtinInequality,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum FundamentalStatus {
    Certified {
        method: Method,
        scope: Scope,
    },
    /// `e = +-eta^power` for the unit `eta` with minimal polynomial `fundamental`.
    /// `order_fundamental`: no `eta^j` with `j` a proper divisor of `power`
    /// lies in `Z[e]`, so `e` still generates the units of `Z[e]`.
    Exception {
        fundamental: IntPoly,
        power: u32,
        method: Method,
        scope: Scope,
        order_fundamental: bool,
    },
    /// taken from the configured citation, not checked
    Assumed {
        citation: String,
    },
    Unknown {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FundamentalError {
    #[error("E must be +1 or -1, got {0}")]
    BadSign(i64),
    #[error("m must be at least 2, got {0}")]
    SmallExponent(u32),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Smallest unit above 1 in a real quadratic field: the golden ratio, rounded down.
const MIN_REAL_QUADRATIC_UNIT: f64 = 1.618_033;
/// Smallest unit above 1 in a complex cubic field: the real root of
/// `x^3 - x - 1`, rounded down.
const MIN_COMPLEX_CUBIC_UNIT: f64 = 1.324_717;

/// The irreducible cubic factor of `x^(3m) + A x^m + E`, if it has one.
/// Every returned factor is checked by exact division.
pub fn trinomial_cubic_factor(m: u32, a: i64, e: i64) -> Result<Option<IntPoly>, FundamentalError> {
    if e != 1 && e != -1 {
        return Err(FundamentalError::BadSign(e));
    }
    if m < 2 {
        return Err(FundamentalError::SmallExponent(m));
    }
    let cand = if (m, a, e) == (11, 67, 1) {
        Some(IntPoly::from_i64s(&[1, 1, 0, 1]))
    } else if (m, a, e) == (4, 1040, -1) {
        Some(IntPoly::from_i64s(&[-1, 6, -2, 1]))
    } else if m == 2 && e == -1 {
        quartic_t(a).map(|t| IntPoly::from_i64s(&[-1, 2 * t * t, -2 * t, 1]))
    } else {
        None
    };
    let Some(c) = cand else { return Ok(None) };
    let mut tri = vec![BigInt::zero(); 3 * m as usize + 1];
    tri[0] = e.into();
    tri[m as usize] = a.into();
    tri[3 * m as usize] = BigInt::one();
    let tri = IntPoly::from_coeffs(tri);
    Ok(polyz::divides(&c, &tri)?.map(|_| c))
}

/// `t` with `4t^4 - 4t = a` and `t` outside `{0, 1}`.
pub fn quartic_t(a: i64) -> Option<i64> {
    if a <= 0 {
        return None;
    }
    let r = ((a / 4) as f64).powf(0.25) as i64 + 2;
    (-r..=r).find(|&t| {
        t != 0 && t != 1 && (4 * t).checked_mul(t * t * t).is_some_and(|v| v - 4 * t == a)
    })
}

fn same_up_to_sign(g: &IntPoly, f: &IntPoly) -> bool {
    g == f || &-g.clone() == f
}

/// Whether `eta^m` is a root of `f` or of `-f(-x)`, checked exactly.
fn check_power(eta: &IntPoly, m: u32, f: &IntPoly) -> bool {
    match polyz::power_minpoly(eta, m as u64) {
        Ok(mp) => same_up_to_sign(&mp, f) || same_up_to_sign(&mp, &f.negate_variable()),
        Err(_) => false,
    }
}

/// Largest `s` with `s^2 | n`, by trial division. None when `n` is too large
/// to finish.
pub fn square_part(n: &BigInt) -> Option<BigInt> {
    let mut n = n.abs().to_u128()?;
    if n == 0 {
        return None;
    }
    let mut s: u128 = 1;
    let mut p: u128 = 2;
    while p * p * p <= n {
        if p > 4_000_000 {
            return None;
        }
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        p += if p == 2 { 1 } else { 2 };
    }
    // what remains is 1, a prime, a prime square or a product of two primes
    let r = n.sqrt();
    if r * r == n {
        s *= r;
    }
    Some(BigInt::from(s))
}

enum RootTest {
    Found(IntPoly),
    None,
    Imprecise,
}

/// Looks for `eta` in the maximal order with `eta^m = +-e`, written as
/// `P(e) / scale` where `scale` is a multiple of the index of `Z[e]`.
/// Candidates come from every choice of `m`-th root at every place; each is
/// rounded and then checked exactly.
fn mth_root(f: &IntPoly, places: &[RootBall], r1: usize, m: u32, scale: &BigInt) -> RootTest {
    let n = f.degree().unwrap_or(0);
    let Some(sc) = scale.to_f64() else { return RootTest::Imprecise };
    // options per place
    let mut options: Vec<Vec<Complex64>> = Vec::new();
    for (i, b) in places.iter().enumerate() {
        let z = b.z;
        let mag = z.norm().powf(1.0 / m as f64);
        if i < r1 {
            options.push(vec![Complex64::new(mag, 0.0), Complex64::new(-mag, 0.0)]);
        } else {
            let arg = z.arg();
            options.push(
                (0..2 * m)
                    .map(|j| Complex64::from_polar(mag, (arg + j as f64 * std::f64::consts::PI) / m as f64))
                    .collect(),
            );
        }
    }
    let mut roots = Vec::with_capacity(n);
    for (i, b) in places.iter().enumerate() {
        roots.push(b.z);
        if i >= r1 {
            roots.push(b.z.conj());
        }
    }
    let total: usize = options.iter().map(Vec::len).product();
    let target = IntPoly::monomial(scale.pow(m), 1);
    let mut imprecise = false;
    for idx in 0..total {
        let mut rest = idx;
        let mut vals = Vec::with_capacity(n);
        for (i, opt) in options.iter().enumerate() {
            let v = opt[rest % opt.len()];
            rest /= opt.len();
            vals.push(v);
            if i >= r1 {
                vals.push(v.conj());
            }
        }
        let Some(q) = embed::vandermonde_solve(&roots, &vals) else {
            imprecise = true;
            continue;
        };
        let mut coeffs = Vec::with_capacity(n);
        let mut ok = true;
        for c in &q {
            let v = c.re * sc;
            if !v.is_finite() || v.abs() > 2f64.powi(40) {
                imprecise = true;
                ok = false;
                break;
            }
            let r = v.round();
            if (v - r).abs() > 0.25 || (c.im * sc).abs() > 0.25 {
                ok = false;
                break;
            }
            coeffs.push(r as i64);
        }
        if !ok {
            continue;
        }
        let p = IntPoly::from_i64s(&coeffs);
        let Ok(pm) = polyz::pow_mod(&p, m as u64, f) else { continue };
        if pm == target || pm == -target.clone() {
            if let Some(eta) = scaled_minpoly(f, &p, scale) {
                return RootTest::Found(eta);
            }
        }
    }
    if imprecise {
        RootTest::Imprecise
    } else {
        RootTest::None
    }
}

/// Minimal polynomial of `p(e) / s`, when it is monic with integer coefficients.
fn scaled_minpoly(f: &IntPoly, p: &IntPoly, s: &BigInt) -> Option<IntPoly> {
    let mp = polyz::minpoly_of_element(f, p).ok()?;
    let d = mp.degree()?;
    let mut out = Vec::with_capacity(d + 1);
    for (i, c) in mp.coeffs().iter().enumerate() {
        let den = s.pow((d - i) as u32);
        if !(c % &den).is_zero() {
            return None;
        }
        out.push(c / den);
    }
    Some(IntPoly::from_coeffs(out))
}

/// Largest proper power: tries `m = m_max, ..., 2` and returns the first hit.
fn power_scan(
    f: &IntPoly,
    places: &[RootBall],
    r1: usize,
    m_max: u32,
    scale: &BigInt,
    excluded: impl Fn(u32) -> bool,
) -> Result<Option<(IntPoly, u32)>, String> {
    let mut imprecise = Vec::new();
    for m in (2..=m_max).rev() {
        if excluded(m) {
            continue;
        }
        match mth_root(f, places, r1, m, scale) {
            RootTest::Found(eta) => {
                if check_power(&eta, m, f) {
                    return Ok(Some((eta, m)));
                }
                imprecise.push(m);
            }
            RootTest::None => {}
            RootTest::Imprecise => imprecise.push(m),
        }
    }
    if imprecise.is_empty() {
        Ok(None)
    } else {
        Err(format!("root test inconclusive for exponents {imprecise:?}"))
    }
}

fn unit_log(places: &[RootBall]) -> f64 {
    places
        .iter()
        .map(|b| {
            let a = b.z.norm() + b.radius;
            a.max(1.0 / (b.z.norm() - b.radius).max(f64::MIN_POSITIVE))
        })
        .fold(1.0f64, f64::max)
        .ln()
}

fn quadratic(f: &IntPoly, disc: &BigInt, places: &[RootBall]) -> FundamentalStatus {
    let c = f.to_i64s().unwrap_or_default();
    if c == [1, -3, 1] || c == [1, 3, 1] {
        let eta = IntPoly::from_i64s(&[-1, -1, 1]);
        debug_assert!(check_power(&eta, 2, f));
        return FundamentalStatus::Exception {
            fundamental: eta,
            power: 2,
            method: Method::Louboutin,
            scope: Scope::Field,
            order_fundamental: false,
        };
    }
    let m_max = (unit_log(places) / MIN_REAL_QUADRATIC_UNIT.ln()).floor() as u32;
    let Some(s) = square_part(disc) else {
        return FundamentalStatus::Certified {
            method: Method::Louboutin,
            scope: Scope::Order,
        };
    };
    // quadratic orders have index dividing s, and 2 covers the half-integers
    let scale = s * 2;
    match power_scan(f, places, 2, m_max, &scale, |_| false) {
        Ok(None) => FundamentalStatus::Certified {
            method: Method::LouboutinPowerTest,
            scope: Scope::Field,
        },
        Ok(Some((eta, m))) => FundamentalStatus::Exception {
            fundamental: eta,
            power: m,
            method: Method::LouboutinPowerTest,
            scope: Scope::Field,
            order_fundamental: false,
        },
        Err(_) => FundamentalStatus::Certified {
            method: Method::Louboutin,
            scope: Scope::Order,
        },
    }
}

/// `f = x^3 + a x +- 1`; both signs are covered since `x -> -x` swaps them.
fn trinomial(f: &IntPoly, a: i64) -> FundamentalStatus {
    let found = [(11u32, 1i64), (4, -1), (2, -1)]
        .iter()
        .find_map(|&(m, e)| match trinomial_cubic_factor(m, a, e) {
            Ok(Some(eta)) if check_power(&eta, m, f) => Some((eta, m)),
            _ => None,
        });
    match found {
        Some((eta, m)) => FundamentalStatus::Exception {
            fundamental: eta,
            power: m,
            method: Method::TverbergBremner,
            scope: Scope::Field,
            order_fundamental: false,
        },
        None => FundamentalStatus::Certified {
            method: Method::TverbergBremner,
            scope: Scope::Field,
        },
    }
}

fn complex_cubic(f: &IntPoly, disc: &BigInt, places: &[RootBall]) -> FundamentalStatus {
    let log_r = unit_log(places);
    let m_max = (log_r / MIN_COMPLEX_CUBIC_UNIT.ln()).floor() as u32;
    let Some(s) = square_part(disc) else {
        return FundamentalStatus::Unknown {
            reason: "discriminant too large to factor".into(),
        };
    };
    let Some(dk_lower) = (disc.abs() / (&s * &s)).to_f64() else {
        return FundamentalStatus::Unknown {
            reason: "discriminant too large".into(),
        };
    };
    let excluded = |m: u32| {
        let eta3 = (3.0 * log_r / m as f64).exp();
        dk_lower > (4.0 * eta3 + 24.0) * (1.0 + 1e-9)
    };
    match power_scan(f, places, 1, m_max, &s, excluded) {
        Ok(None) => FundamentalStatus::Certified {
            method: Method::ArtinInequality,
            scope: Scope::Field,
        },
        Ok(Some((eta, m))) => FundamentalStatus::Exception {
            fundamental: eta,
            power: m,
            method: Method::ArtinInequality,
            scope: Scope::Field,
            order_fundamental: false,
        },
        Err(reason) => FundamentalStatus::Unknown { reason },
    }
}

/// Whether `eta^j` lies in `Z[e]` for some proper divisor `j` of `m`, where
/// `e = +-eta^m`. Since `Z[e]` is contained in `Z[eta^j]`, equality holds
/// exactly when the two discriminants agree.
fn root_in_order(eta: &IntPoly, m: u32, disc: &BigInt) -> bool {
    (1..m).filter(|j| m % j == 0).any(|j| {
        polyz::power_minpoly(eta, j as u64)
            .ok()
            .and_then(|g| fields::discriminant(&g).ok())
            .map_or(true, |d| &d == disc)
    })
}

/// Fundamentality of a root `e` of `f` (monic irreducible, unit rank 1).
/// `places` are as returned by [`embed::places`]. A configured citation turns
/// an undecided outcome into `Assumed`.
pub fn verify_fundamental(
    f: &IntPoly,
    signature: (usize, usize),
    disc: &BigInt,
    places: &[RootBall],
    citation: Option<&str>,
) -> FundamentalStatus {
    let c = f.to_i64s().unwrap_or_default();
    let status = match (signature, c.as_slice()) {
        ((2, 0), _) => quadratic(f, disc, places),
        ((1, 1), [e0, a, 0, 1]) if e0.abs() == 1 => trinomial(f, *a),
        ((1, 1), _) => complex_cubic(f, disc, places),
        _ => FundamentalStatus::Unknown {
            reason: format!("no method for signature {signature:?}"),
        },
    };
    let status = match status {
        FundamentalStatus::Exception {
            fundamental,
            power,
            method,
            scope,
            ..
        } => FundamentalStatus::Exception {
            order_fundamental: !root_in_order(&fundamental, power, disc),
            fundamental,
            power,
            method,
            scope,
        },
        s => s,
    };
    match (status, citation) {
        (FundamentalStatus::Unknown { .. }, Some(c)) => FundamentalStatus::Assumed {
            citation: c.to_string(),
        },
        (s, _) => s,
    }
}
