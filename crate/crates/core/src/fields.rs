//! Exact facts about the fields defined by small-degree polynomials:
//! irreducibility, signature, discriminant, quadratic subfields of quartics,
//! and roots of unity.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::embed::{self, EmbedError};
use crate::polyz::{self, IntPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("degree {0} exceeds the supported maximum of 4")]
    DegreeTooLarge(usize),
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("polynomial must be nonconstant")]
    Constant,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial is reducible over Q")]
    Reducible,
    #[error("polynomial must have degree 4")]
    NotQuartic,
    #[error("numeric stage failed: {0}")]
    Numeric(#[from] EmbedError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("could not exhibit a generator for a subfield predicted by the resolvent")]
    Unverified,
    #[error("integer too large: {0}")]
    TooLarge(String),
}

/// Positive divisors of a nonzero integer, ascending.
pub fn divisors(n: &BigInt) -> Result<Vec<u64>, FieldError> {
    let m = n
        .abs()
        .to_u64()
        .filter(|m| *m > 0 && *m < 1 << 40)
        .ok_or_else(|| FieldError::TooLarge(n.to_string()))?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

fn check_small_monic(f: &IntPoly) -> Result<usize, FieldError> {
    let d = f.degree().ok_or(FieldError::Constant)?;
    if d > 4 {
        return Err(FieldError::DegreeTooLarge(d));
    }
    if !f.is_monic() {
        return Err(FieldError::NotMonic);
    }
    Ok(d)
}

/// A nontrivial monic factor over Z of a monic polynomial of degree at most 4,
/// if one exists. Rational-root test, then an exact solve for quadratic
/// factors `(x^2+ax+b)(x^2+cx+d)` over every divisor pair `b*d = f(0)`.
pub fn small_factor(f: &IntPoly) -> Result<Option<IntPoly>, FieldError> {
    let deg = check_small_monic(f)?;
    if deg <= 1 {
        return Ok(None);
    }
    let c0 = f.coeff(0);
    if c0.is_zero() {
        return Ok(Some(IntPoly::x()));
    }
    let divs = divisors(&c0)?;
    for &d in &divs {
        for r in [BigInt::from(d), -BigInt::from(d)] {
            if f.eval(&r).is_zero() {
                return Ok(Some(IntPoly::from_coeffs(vec![-r, BigInt::one()])));
            }
        }
    }
    if deg < 4 {
        return Ok(None);
    }
    let (p1, p2, p3) = (f.coeff(1), f.coeff(2), f.coeff(3));
    for &dv in &divs {
        for sign in [1i64, -1] {
            let b = BigInt::from(dv) * sign;
            let d = &c0 / &b;
            // a^2 - p3 a + (p2 - b - d) = 0, c = p3 - a, a d + b c = p1
            let disc = &p3 * &p3 - BigInt::from(4) * (&p2 - &b - &d);
            if disc.is_negative() {
                continue;
            }
            let s = num_integer::Roots::sqrt(&disc);
            if &s * &s != disc {
                continue;
            }
            for root in [&p3 + &s, &p3 - &s] {
                if (&root % 2u32) != BigInt::zero() {
                    continue;
                }
                let a = root / 2;
                let c = &p3 - &a;
                if &a * &d + &b * &c == p1 {
                    return Ok(Some(IntPoly::from_coeffs(vec![b.clone(), a, BigInt::one()])));
                }
            }
        }
    }
    Ok(None)
}

/// Exact irreducibility over Q for monic polynomials of degree at most 4.
pub fn irreducible_small(f: &IntPoly) -> Result<bool, FieldError> {
    let d = check_small_monic(f)?;
    if d == 0 {
        return Ok(false);
    }
    Ok(small_factor(f)?.is_none())
}

/// `(-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
pub fn discriminant(f: &IntPoly) -> Result<BigInt, FieldError> {
    let n = f.degree().ok_or(FieldError::Constant)?;
    if n == 0 {
        return Err(FieldError::Constant);
    }
    let r = polyz::resultant(f, &f.derivative())? / f.leading_coeff();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
}

/// Sturm sequence with every remainder scaled by positive constants only.
pub fn sturm_chain(f: &IntPoly) -> Result<Vec<IntPoly>, FieldError> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(FieldError::Constant);
    }
    let mut chain = vec![f.primitive_part()];
    chain.push(chain[0].derivative().primitive_part());
    loop {
        let n = chain.len();
        let (a, b) = (&chain[n - 2], &chain[n - 1]);
        if b.degree() == Some(0) {
            break;
        }
        let mut r = a.pseudo_rem(b)?;
        let delta = a.degree().unwrap() - b.degree().unwrap();
        if b.leading_coeff().is_negative() && delta % 2 == 0 {
            r = -r;
        }
        if r.is_zero() {
            return Err(FieldError::NotSquarefree);
        }
        let c = r.content();
        chain.push(-IntPoly::from_coeffs(r.coeffs().iter().map(|x| x / &c).collect()));
    }
    Ok(chain)
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Number of distinct real roots, from the Sturm sign changes at +-infinity.
pub fn count_real_roots(f: &IntPoly) -> Result<usize, FieldError> {
    let chain = sturm_chain(f)?;
    let sgn = |b: BigInt| if b.is_positive() { 1i8 } else { -1 };
    let at_pos = sign_changes(chain.iter().map(|p| sgn(p.leading_coeff())));
    let at_neg = sign_changes(chain.iter().map(|p| {
        let s = sgn(p.leading_coeff());
        if p.degree().unwrap() % 2 == 1 {
            -s
        } else {
            s
        }
    }));
    Ok(at_neg - at_pos)
}

/// `(r1, r2)`: real embeddings and pairs of complex embeddings.
pub fn signature(f: &IntPoly) -> Result<(usize, usize), FieldError> {
    let n = f.degree().ok_or(FieldError::Constant)?;
    let r1 = count_real_roots(f)?;
    Ok((r1, (n - r1) / 2))
}

fn quartic_coeffs(f: &IntPoly) -> Result<[BigInt; 4], FieldError> {
    if f.degree() != Some(4) {
        return Err(FieldError::NotQuartic);
    }
    if !f.is_monic() {
        return Err(FieldError::NotMonic);
    }
    Ok([f.coeff(3), f.coeff(2), f.coeff(1), f.coeff(0)])
}

/// Resolvent cubic of `x^4+ax^3+bx^2+cx+d`, whose roots are
/// `r1 r2 + r3 r4` and its two conjugates:
/// `y^3 - b y^2 + (ac - 4d) y - (a^2 d - 4bd + c^2)`.
pub fn resolvent_cubic(f: &IntPoly) -> Result<IntPoly, FieldError> {
    let [a, b, c, d] = quartic_coeffs(f)?;
    let four = BigInt::from(4);
    Ok(IntPoly::from_coeffs(vec![
        -(&a * &a * &d - &four * &b * &d + &c * &c),
        &a * &c - &four * &d,
        -b,
        BigInt::one(),
    ]))
}

/// A quadratic subfield of a quartic field, exhibited as
/// `generator(e) / denominator` together with the minimal polynomial of the
/// numerator `generator(e)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticSubfield {
    #[serde(serialize_with = "polyz::ser_bigint")]
    pub resolvent_root: BigInt,
    pub generator: IntPoly,
    #[serde(serialize_with = "polyz::ser_bigint")]
    pub denominator: BigInt,
    pub minpoly: IntPoly,
    pub real: bool,
}

fn integer_roots(p: &IntPoly) -> Result<Vec<BigInt>, FieldError> {
    let c0 = p.coeff(0);
    if c0.is_zero() {
        let mut out = vec![BigInt::zero()];
        let q = polyz::divides(&IntPoly::x(), p)?.expect("x divides p");
        out.extend(integer_roots(&q)?.into_iter().filter(|r| !r.is_zero()));
        return Ok(out);
    }
    let mut out = Vec::new();
    for d in divisors(&c0)? {
        for r in [BigInt::from(d), -BigInt::from(d)] {
            if p.eval(&r).is_zero() {
                out.push(r);
            }
        }
    }
    Ok(out)
}

/// Rounds scaled numeric coordinates to integers; `None` when any coordinate
/// is not within `tol` of an integer.
fn round_coords(q: &[Complex64], scale: f64, tol: f64) -> Option<Vec<BigInt>> {
    q.iter()
        .map(|c| {
            let v = c * scale;
            let r = v.re.round();
            ((v.re - r).abs() <= tol && v.im.abs() <= tol).then(|| BigInt::from(r as i64))
        })
        .collect()
}

/// Every quadratic subfield of the quartic field `Q[x]/(f)`, one per rational
/// root of the resolvent cubic, each verified by an explicit generator.
pub fn quadratic_subfields(f: &IntPoly) -> Result<Vec<QuadraticSubfield>, FieldError> {
    quartic_coeffs(f)?;
    if !irreducible_small(f)? {
        return Err(FieldError::Reducible);
    }
    let res = resolvent_cubic(f)?;
    let thetas = integer_roots(&res)?;
    if thetas.is_empty() {
        return Ok(Vec::new());
    }
    let disc = discriminant(f)?.abs();
    let scale = disc.to_f64().ok_or_else(|| FieldError::TooLarge(disc.to_string()))?;
    let roots: Vec<Complex64> = embed::root_balls(f)?.iter().map(|b| b.z).collect();
    let pairings = [[1usize, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
    let mut out = Vec::new();
    for theta in thetas {
        let t = theta.to_f64().unwrap_or(f64::INFINITY);
        let partner = pairings
            .iter()
            .min_by(|p, q| {
                let v = |m: &[usize; 4]| {
                    let j = (1..4).find(|&j| j != m[0]).expect("four roots");
                    (roots[0] * roots[m[0]] + roots[j] * roots[m[j]] - t).norm()
                };
                v(p).total_cmp(&v(q))
            })
            .expect("three pairings");
        let mut found = None;
        let sums: Vec<Complex64> = (0..4).map(|k| roots[k] + roots[partner[k]]).collect();
        let prods: Vec<Complex64> = (0..4).map(|k| roots[k] * roots[partner[k]]).collect();
        for values in [sums, prods] {
            let Some(q) = embed::vandermonde_solve(&roots, &values) else {
                continue;
            };
            let Some(coords) = round_coords(&q, scale, 1e-3) else {
                continue;
            };
            let g = IntPoly::from_coeffs(coords);
            let Ok(mp) = polyz::minpoly_of_element(f, &g) else {
                continue;
            };
            if mp.degree() == Some(2) {
                let dq = discriminant(&mp)?;
                found = Some(QuadraticSubfield {
                    resolvent_root: theta.clone(),
                    generator: g,
                    denominator: disc.clone(),
                    minpoly: mp,
                    real: dq.is_positive(),
                });
                break;
            }
        }
        out.push(found.ok_or(FieldError::Unverified)?);
    }
    Ok(out)
}

pub fn has_real_quadratic_subfield(f: &IntPoly) -> Result<bool, FieldError> {
    Ok(quadratic_subfields(f)?.iter().any(|s| s.real))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum TorsionVerdict {
    /// `generator(e) / denominator` is a primitive m-th root of unity.
    Present {
        generator: IntPoly,
        #[serde(serialize_with = "polyz::ser_bigint")]
        denominator: BigInt,
    },
    Absent,
    Inconclusive { reason: String },
}

/// Euler's totient for small arguments.
pub fn totient(n: u64) -> u64 {
    (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count() as u64
}

/// Decides whether a primitive m-th root of unity lies in `Q[x]/(f)`.
///
/// Every assignment of primitive m-th roots of unity to the complex roots of
/// `f` proposes power-basis coordinates with denominator `|disc f|`; a
/// proposal is accepted only after the exact check `Phi_m(candidate) = 0 mod f`.
pub fn torsion_probe(f: &IntPoly, m: u64) -> Result<TorsionVerdict, FieldError> {
    let n = f.degree().ok_or(FieldError::Constant)?;
    if !f.is_monic() {
        return Err(FieldError::NotMonic);
    }
    let phi = polyz::cyclotomic(m)?;
    let k = phi.degree().unwrap();
    if n % k != 0 {
        return Ok(TorsionVerdict::Absent);
    }
    let disc = discriminant(f)?.abs();
    let scale = disc.to_f64().ok_or_else(|| FieldError::TooLarge(disc.to_string()))?;
    let roots: Vec<Complex64> = embed::root_balls(f)?.iter().map(|b| b.z).collect();
    let prim: Vec<Complex64> = (1..=m)
        .filter(|j| num_integer::gcd(*j, m) == 1)
        .map(|j| Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / m as f64))
        .collect();
    let total = prim.len().pow(n as u32);
    let mut ambiguous = false;
    for idx in 0..total {
        let mut rest = idx;
        let values: Vec<Complex64> = (0..n)
            .map(|_| {
                let v = prim[rest % prim.len()];
                rest /= prim.len();
                v
            })
            .collect();
        let Some(q) = embed::vandermonde_solve(&roots, &values) else {
            ambiguous = true;
            continue;
        };
        let Some(coords) = round_coords(&q, scale, 1e-6) else {
            if round_coords(&q, scale, 1e-2).is_some() {
                ambiguous = true;
            }
            continue;
        };
        let g = IntPoly::from_coeffs(coords);
        // D^k Phi_m(g/D) = sum_j phi_j g^j D^(k-j), reduced mod f
        let mut acc = IntPoly::zero();
        let mut gpow = IntPoly::one();
        for j in 0..=k {
            let dpow = num_traits::pow(disc.clone(), k - j);
            acc = &acc + &gpow.scale(&(phi.coeff(j) * dpow));
            gpow = polyz::mul_mod(&gpow, &g, f)?;
        }
        if acc.rem_monic(f)?.is_zero() {
            return Ok(TorsionVerdict::Present {
                generator: g,
                denominator: disc,
            });
        }
    }
    Ok(if ambiguous {
        TorsionVerdict::Inconclusive {
            reason: "numeric coordinates too close to call".into(),
        }
    } else {
        TorsionVerdict::Absent
    })
}
