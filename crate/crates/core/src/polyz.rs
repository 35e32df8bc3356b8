//! Dense arbitrary-precision integer polynomials.
//!
//! Coefficients are stored little-endian (`coeffs[i]` multiplies `x^i`) and the
//! top stored coefficient is always nonzero, so the zero polynomial is the
//! empty vector. Everything here is exact; nothing touches floating point.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("resultant of two zero polynomials is undefined")]
    BothZero,
    #[error("{0} must be monic")]
    NotMonic(&'static str),
    #[error("characteristic polynomial is not a power of an irreducible polynomial; the modulus is reducible")]
    Reducible,
    #[error("{0}")]
    InvalidArgument(String),
}

/// Syntax error in polynomial text, with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn x() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c * x^n`
    pub fn monomial(c: impl Into<BigInt>, n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = c.into();
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Coefficients as machine integers, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    /// Sum of the absolute values of the coefficients.
    pub fn length(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Largest absolute value of a coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Exact value at an integer point (Horner).
    pub fn eval(&self, c: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, a| acc * c + a)
    }

    pub fn eval_i64(&self, c: i64) -> BigInt {
        self.eval(&BigInt::from(c))
    }

    /// Multiply by `x^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    fn div_scalar_exact(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a / c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * BigInt::from(i))
                .collect(),
        )
    }

    /// `f(-x)`.
    pub fn negate_variable(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| if i % 2 == 1 { -a } else { a.clone() })
                .collect(),
        )
    }

    /// `x^deg f(1/x)`, the coefficient-reversed polynomial.
    pub fn reversed(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Nonnegative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// The polynomial divided by its content, with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// `lc(b)^(deg a - deg b + 1) * a mod b`, computed without fractions.
    pub fn pseudo_rem(&self, b: &IntPoly) -> Result<IntPoly, PolyError> {
        let db = b.degree().ok_or(PolyError::ZeroDivisor)?;
        let Some(da) = self.degree() else {
            return Ok(Self::zero());
        };
        if da < db {
            return Ok(self.clone());
        }
        let lb = b.leading_coeff();
        let mut r = self.coeffs.clone();
        let mut steps = 0u32;
        let mut top = da;
        loop {
            while r.len() > top + 1 {
                r.pop();
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            if r.is_empty() || r.len() - 1 < db {
                break;
            }
            top = r.len() - 1;
            let lr = r[top].clone();
            let off = top - db;
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                r[off + j] -= &lr * bj;
            }
            steps += 1;
        }
        let extra = (da - db + 1) as u32 - steps;
        let mut out = Self::from_coeffs(r);
        if extra > 0 {
            out = out.scale(&num_traits::pow(lb, extra as usize));
        }
        Ok(out)
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, m: &IntPoly) -> Result<IntPoly, PolyError> {
        if !m.is_monic() {
            return Err(PolyError::NotMonic("modulus"));
        }
        let dm = m.degree().unwrap_or(0);
        let mut r = self.coeffs.clone();
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top].clone();
            if !c.is_zero() {
                let off = top - dm;
                for (j, mj) in m.coeffs.iter().enumerate() {
                    r[off + j] -= &c * mj;
                }
            }
            r.pop();
        }
        Ok(Self::from_coeffs(r))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(self))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", format_poly(self))
    }
}

/// Serialized as the little-endian coefficient list; coefficients outside the
/// `i64` range become decimal strings.
impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

/// Serializes an integer as a JSON number when it fits in `i64`, else as a
/// decimal string.
pub fn ser_bigint<S: Serializer>(v: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => serializer.serialize_i64(x),
        None => serializer.serialize_str(&v.to_string()),
    }
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

/// Exact divisibility in `Z[x]`: returns the quotient `g` with `h = f * g`
/// when it exists.
pub fn divides(f: &IntPoly, h: &IntPoly) -> Result<Option<IntPoly>, PolyError> {
    let df = f.degree().ok_or(PolyError::ZeroDivisor)?;
    let Some(dh) = h.degree() else {
        return Ok(Some(IntPoly::zero()));
    };
    if dh < df {
        return Ok(None);
    }
    let lf = f.leading_coeff();
    let mut rem = h.coeffs.clone();
    let mut q = vec![BigInt::zero(); dh - df + 1];
    for i in (0..=dh - df).rev() {
        let c = &rem[i + df];
        if c.is_zero() {
            continue;
        }
        let (qq, r) = c.div_rem(&lf);
        if !r.is_zero() {
            return Ok(None);
        }
        for (j, fj) in f.coeffs.iter().enumerate() {
            rem[i + j] -= &qq * fj;
        }
        q[i] = qq;
    }
    if rem.iter().all(Zero::is_zero) {
        Ok(Some(IntPoly::from_coeffs(q)))
    } else {
        Ok(None)
    }
}

/// Sylvester resultant, `Res(f, g) = lc(f)^deg(g) * prod_{f(a)=0} g(a)`.
///
/// Subresultant PRS over the primitive parts; contents are folded back in at
/// the end.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt, PolyError> {
    if f.is_zero() && g.is_zero() {
        return Err(PolyError::BothZero);
    }
    if f.is_zero() || g.is_zero() {
        // Res(0, c) = 1 for a nonzero constant c by the empty-product convention.
        let other = if f.is_zero() { g } else { f };
        return Ok(if other.degree() == Some(0) {
            BigInt::one()
        } else {
            BigInt::zero()
        });
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut s = BigInt::one();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            s = -s;
        }
    }
    let ca = a.content();
    let cb = b.content();
    a = a.div_scalar_exact(&ca);
    b = b.div_scalar_exact(&cb);
    let t = num_traits::pow(ca, b.degree().unwrap()) * num_traits::pow(cb, a.degree().unwrap());
    let mut gg = BigInt::one();
    let mut h = BigInt::one();
    while b.degree().unwrap() > 0 {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b)?;
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        a = b;
        let div = &gg * num_traits::pow(h.clone(), delta);
        b = r.div_scalar_exact(&div);
        gg = a.leading_coeff();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(gg.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
    }
    let da = a.degree().unwrap();
    let lb = b.leading_coeff();
    // h <- lc(b)^deg(a) / h^(deg(a) - 1)
    let hf = if da == 0 {
        BigInt::one() // both inputs were constants
    } else {
        num_traits::pow(lb, da) / num_traits::pow(h, da - 1)
    };
    Ok(s * t * hf)
}

pub fn content(f: &IntPoly) -> BigInt {
    f.content()
}

pub fn primitive_part(f: &IntPoly) -> IntPoly {
    f.primitive_part()
}

/// Primitive gcd over `Z[x]` (positive leading coefficient). `gcd(0, 0) = 0`.
pub fn gcd_primitive(f: &IntPoly, g: &IntPoly) -> IntPoly {
    let mut a = f.primitive_part();
    let mut b = g.primitive_part();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.pseudo_rem(&b).expect("b nonzero");
        a = b;
        b = r.primitive_part();
    }
    a
}

/// `f / gcd(f, f')`, primitive with positive leading coefficient.
pub fn squarefree_part(f: &IntPoly) -> Result<IntPoly, PolyError> {
    if f.is_zero() {
        return Err(PolyError::InvalidArgument(
            "squarefree part of the zero polynomial".into(),
        ));
    }
    let p = f.primitive_part();
    if p.is_constant() {
        return Ok(IntPoly::one());
    }
    let g = gcd_primitive(&p, &p.derivative());
    let q = divides(&g, &p)?.expect("gcd divides its argument");
    Ok(q.primitive_part())
}

/// `a * b mod m` for monic `m`.
pub fn mul_mod(a: &IntPoly, b: &IntPoly, m: &IntPoly) -> Result<IntPoly, PolyError> {
    (a * b).rem_monic(m)
}

/// `a^n mod m` for monic `m`.
pub fn pow_mod(a: &IntPoly, mut n: u64, m: &IntPoly) -> Result<IntPoly, PolyError> {
    let mut base = a.rem_monic(m)?;
    let mut acc = IntPoly::one().rem_monic(m)?;
    while n > 0 {
        if n & 1 == 1 {
            acc = mul_mod(&acc, &base, m)?;
        }
        n >>= 1;
        if n > 0 {
            base = mul_mod(&base, &base, m)?;
        }
    }
    Ok(acc)
}

/// Characteristic polynomial of multiplication by `g(e)` on `Z[e] = Z[x]/(f)`,
/// which equals `Res_y(f(y), x - g(y))` for monic `f`.
///
/// Faddeev-LeVerrier on the integer multiplication matrix; every division is
/// exact.
pub fn charpoly(f: &IntPoly, g: &IntPoly) -> Result<IntPoly, PolyError> {
    if !f.is_monic() {
        return Err(PolyError::NotMonic("modulus"));
    }
    let n = f.degree().unwrap();
    if n == 0 {
        return Ok(IntPoly::one());
    }
    let g = g.rem_monic(f)?;
    // column j holds the coordinates of g * x^j mod f
    let mut cols = Vec::with_capacity(n);
    let mut cur = g.clone();
    for j in 0..n {
        if j > 0 {
            cur = cur.shift(1).rem_monic(f)?;
        }
        cols.push(cur.clone());
    }
    let a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| cols[j].coeff(i)).collect())
        .collect();
    let matmul = |x: &Vec<Vec<BigInt>>, y: &Vec<Vec<BigInt>>| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| &x[i][k] * &y[k][j]).sum())
                    .collect()
            })
            .collect()
    };
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        let mut am = matmul(&a, &m);
        for (i, row) in am.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        m = am;
        let prod = matmul(&a, &m);
        let tr: BigInt = (0..n).map(|i| prod[i][i].clone()).sum();
        c[n - k] = -(tr / BigInt::from(k));
    }
    Ok(IntPoly::from_coeffs(c))
}

/// Monic minimal polynomial over `Q` of `g(e)` where `f(e) = 0`.
///
/// The characteristic polynomial is `minpoly^(deg f / deg minpoly)` when `f` is
/// irreducible; its squarefree part is therefore the minimal polynomial. A
/// characteristic polynomial that is not such a power reveals a reducible `f`.
pub fn minpoly_of_element(f: &IntPoly, g: &IntPoly) -> Result<IntPoly, PolyError> {
    let cp = charpoly(f, g)?;
    let mut mp = squarefree_part(&cp)?;
    if mp.leading_coeff().is_negative() {
        mp = -mp;
    }
    if !mp.is_monic() {
        return Err(PolyError::Reducible);
    }
    let n = cp.degree().unwrap();
    let m = mp.degree().unwrap();
    if m == 0 || n % m != 0 || mp.pow((n / m) as u32) != cp {
        return Err(PolyError::Reducible);
    }
    // a repeated factor of f can hide behind a clean charpoly; check mp(g) = 0
    let g = g.rem_monic(f)?;
    let mut acc = IntPoly::zero();
    for c in mp.coeffs.iter().rev() {
        acc = &mul_mod(&acc, &g, f)? + &IntPoly::constant(c.clone());
    }
    if !acc.rem_monic(f)?.is_zero() {
        return Err(PolyError::Reducible);
    }
    Ok(mp)
}

/// Minimal polynomial of `e^n` where `f(e) = 0`.
pub fn power_minpoly(f: &IntPoly, n: u64) -> Result<IntPoly, PolyError> {
    if n == 0 {
        return Err(PolyError::InvalidArgument("exponent must be positive".into()));
    }
    if !f.is_monic() {
        return Err(PolyError::NotMonic("modulus"));
    }
    let g = pow_mod(&IntPoly::x(), n, f)?;
    minpoly_of_element(f, &g)
}

/// The n-th cyclotomic polynomial, by dividing `x^n - 1` by every `Phi_d`
/// with `d | n`, `d < n`.
pub fn cyclotomic(n: u64) -> Result<IntPoly, PolyError> {
    if n == 0 {
        return Err(PolyError::InvalidArgument(
            "cyclotomic index must be positive".into(),
        ));
    }
    let mut memo = HashMap::new();
    Ok(cyclotomic_memo(n, &mut memo))
}

fn cyclotomic_memo(n: u64, memo: &mut HashMap<u64, IntPoly>) -> IntPoly {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut p = &IntPoly::monomial(1, n as usize) - &IntPoly::one();
    for d in 1..n {
        if n % d == 0 {
            let phi = cyclotomic_memo(d, memo);
            p = divides(&phi, &p)
                .expect("nonzero divisor")
                .expect("Phi_d divides x^n - 1");
        }
    }
    memo.insert(n, p.clone());
    p
}

/// Canonical text form: descending powers, explicit signs, `0` for zero.
pub fn format_poly(f: &IntPoly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, c) in f.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let a = c.abs();
        if i == 0 || !a.is_one() {
            out.push_str(&a.to_string());
        }
        match i {
            0 => {}
            1 => out.push('x'),
            _ => {
                out.push_str("x^");
                out.push_str(&i.to_string());
            }
        }
    }
    out
}

/// Parses `x^2-3x+1`-style sums of terms or a little-endian coefficient list
/// `[c0,c1,...]`. Whitespace is ignored; repeated powers are summed.
pub fn parse_poly(text: &str) -> Result<IntPoly, ParseError> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    if chars.is_empty() {
        return Err(ParseError {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    let mut p = Parser {
        chars: &chars,
        i: 0,
        end: text.len(),
    };
    if chars[0].1 == '[' || chars.iter().any(|&(_, c)| c == ',') {
        p.list()
    } else {
        p.sum()
    }
}

struct Parser<'a> {
    chars: &'a [(usize, char)],
    i: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.i).map_or(self.end, |&(p, _)| p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.i;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        (self.i > start).then(|| self.chars[start..self.i].iter().map(|&(_, c)| c).collect())
    }

    fn signed_integer(&mut self) -> Result<BigInt, ParseError> {
        let neg = match self.peek() {
            Some('-') => {
                self.i += 1;
                true
            }
            Some('+') => {
                self.i += 1;
                false
            }
            _ => false,
        };
        match self.digits() {
            Some(d) => {
                let v: BigInt = d.parse().expect("ascii digits");
                Ok(if neg { -v } else { v })
            }
            None => self.err("expected an integer"),
        }
    }

    fn list(&mut self) -> Result<IntPoly, ParseError> {
        let bracket = self.peek() == Some('[');
        if bracket {
            self.i += 1;
        }
        let mut coeffs = Vec::new();
        loop {
            coeffs.push(self.signed_integer()?);
            match self.peek() {
                Some(',') => self.i += 1,
                Some(']') if bracket => {
                    self.i += 1;
                    break;
                }
                None if !bracket => break,
                None => return self.err("missing closing ']'"),
                Some(c) => return self.err(format!("unexpected '{c}' in coefficient list")),
            }
        }
        if self.i != self.chars.len() {
            return self.err("trailing characters after coefficient list");
        }
        Ok(IntPoly::from_coeffs(coeffs))
    }

    fn sum(&mut self) -> Result<IntPoly, ParseError> {
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut first = true;
        while self.i < self.chars.len() {
            let neg = match self.peek() {
                Some('+') => {
                    self.i += 1;
                    false
                }
                Some('-') => {
                    self.i += 1;
                    true
                }
                _ if first => false,
                Some(c) => return self.err(format!("expected '+' or '-', found '{c}'")),
                None => unreachable!(),
            };
            first = false;
            let (c, e) = self.term()?;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigInt::zero());
            }
            if neg {
                coeffs[e] -= c;
            } else {
                coeffs[e] += c;
            }
        }
        Ok(IntPoly::from_coeffs(coeffs))
    }

    fn term(&mut self) -> Result<(BigInt, usize), ParseError> {
        let coeff = self.digits().map(|d| d.parse::<BigInt>().expect("ascii digits"));
        if coeff.is_some() && self.peek() == Some('*') {
            self.i += 1;
            if self.peek() != Some('x') {
                return self.err("expected 'x' after '*'");
            }
        }
        if self.peek() == Some('x') {
            self.i += 1;
            let mut e = 1usize;
            if self.peek() == Some('^') {
                self.i += 1;
                let pos = self.pos();
                let d = match self.digits() {
                    Some(d) => d,
                    None => return self.err("expected exponent after '^'"),
                };
                e = d.parse().map_err(|_| ParseError {
                    pos,
                    msg: "exponent too large".into(),
                })?;
            }
            Ok((coeff.unwrap_or_else(BigInt::one), e))
        } else {
            match coeff {
                Some(c) => Ok((c, 0)),
                None => match self.peek() {
                    Some(c) => self.err(format!("unexpected '{c}'")),
                    None => self.err("expected a term"),
                },
            }
        }
    }
}

impl FromStr for IntPoly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

/// An element `g(e)` of `Z[e] = Z[x]/(f)`, stored reduced (degree below `deg f`).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct ElementRep {
    num: IntPoly,
}

impl ElementRep {
    pub fn new(f: &IntPoly, g: &IntPoly) -> Result<Self, PolyError> {
        Ok(ElementRep {
            num: g.rem_monic(f)?,
        })
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        ElementRep {
            num: IntPoly::constant(c),
        }
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn add(&self, other: &ElementRep) -> ElementRep {
        ElementRep {
            num: &self.num + &other.num,
        }
    }

    pub fn sub(&self, other: &ElementRep) -> ElementRep {
        ElementRep {
            num: &self.num - &other.num,
        }
    }

    pub fn mul(&self, other: &ElementRep, f: &IntPoly) -> Result<ElementRep, PolyError> {
        Ok(ElementRep {
            num: mul_mod(&self.num, &other.num, f)?,
        })
    }

    /// Field norm up to sign, `Res(f, g)`.
    pub fn norm(&self, f: &IntPoly) -> Result<BigInt, PolyError> {
        resultant(f, &self.num)
    }
}

impl fmt::Display for ElementRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.num)
    }
}
