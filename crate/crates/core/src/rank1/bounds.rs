//! Closed-form lower bounds on lengths of multiples, and the upper bound on
//! the smallest vanishing sum in terms of degree, unit rank and regulator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::polyz::IntPoly;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("degree must be at least 2, got {0}")]
    Degree(u32),
    #[error("unit rank must be at least 1, got {0}")]
    Rank(u32),
    #[error("regulator must be positive and finite, got {0}")]
    Regulator(f64),
    #[error("discriminant must be nonzero")]
    ZeroDisc,
    #[error("bound overflows f64")]
    Overflow,
}

/// `L(f)` when `f` is `x^2 - a x - 1` (`a >= 1`), `x^3 + a x + 1` (`a >= 1`)
/// or `x^3 + x^2 + a x + 1` (`a >= 3`). For these shapes every nonzero
/// multiple of `f` has length at least `L(f)`.
pub fn closed_form_lower_bound(f: &IntPoly) -> Option<u64> {
    let c = f.to_i64s()?;
    let matches = match c.as_slice() {
        [-1, a, 1] => -a >= 1,
        [1, a, 0, 1] => *a >= 1,
        [1, a, 1, 1] => *a >= 3,
        _ => false,
    };
    if matches {
        f.length().to_u64()
    } else {
        None
    }
}

/// `L(f) / 2^deg f`, a lower bound for `L(h)` over nonzero multiples `h`.
pub fn mignotte_lower_bound(f: &IntPoly) -> BigRational {
    let n = f.degree().unwrap_or(0);
    BigRational::new(f.length(), BigInt::one() << n)
}

fn nudge_up(v: f64) -> f64 {
    // a few ulps above, covering the rounding of exp and the products
    let mut x = v;
    for _ in 0..8 {
        x = f64::from_bits(x.to_bits() + 1);
    }
    x
}

fn factorial(r: u32) -> f64 {
    (1..=r).map(f64::from).product()
}

/// Exponent constant: `1/d` for rank 1, `29 e sqrt(r-1) r! log d` otherwise.
pub fn upper_bound_constant(d: u32, r: u32) -> Result<f64, BoundsError> {
    if d < 2 {
        return Err(BoundsError::Degree(d));
    }
    if r < 1 {
        return Err(BoundsError::Rank(r));
    }
    Ok(if r == 1 {
        1.0 / d as f64
    } else {
        29.0 * std::f64::consts::E * ((r - 1) as f64).sqrt() * factorial(r) * (d as f64).ln()
    })
}

/// `2 (d+1) exp(c R)`, rounded upward.
pub fn min_sum_upper_bound(d: u32, r: u32, regulator: f64) -> Result<f64, BoundsError> {
    if !(regulator > 0.0 && regulator.is_finite()) {
        return Err(BoundsError::Regulator(regulator));
    }
    let c = upper_bound_constant(d, r)?;
    let v = 2.0 * (d as f64 + 1.0) * (c * regulator).exp();
    if !v.is_finite() {
        return Err(BoundsError::Overflow);
    }
    Ok(nudge_up(v))
}

/// `|D|^(1/2) (log* |D|)^(d-1)` with `log* x = max(log x, 1)`.
pub fn regulator_upper_bound(disc: &BigInt, d: u32) -> Result<f64, BoundsError> {
    if disc.is_zero() {
        return Err(BoundsError::ZeroDisc);
    }
    let ad = disc.abs().to_f64().filter(|v| v.is_finite()).ok_or(BoundsError::Overflow)?;
    let log_star = ad.ln().max(1.0);
    let exp = d.saturating_sub(1) as i32;
    let v = ad.sqrt() * log_star.powi(exp);
    if !v.is_finite() {
        return Err(BoundsError::Overflow);
    }
    Ok(v)
}
