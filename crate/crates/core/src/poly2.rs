//! Polynomials over GF(2), bit-packed into 64-bit words.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::polyz::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("division by the zero polynomial over GF(2)")]
    ZeroDivisor,
    #[error("the zero polynomial has no factorization")]
    ZeroInput,
}

/// Bit `i` of `words` is the coefficient of `x^i`; no trailing zero words.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Gf2Poly { words: vec![1] }
    }

    pub fn x() -> Self {
        Gf2Poly { words: vec![2] }
    }

    pub fn monomial(n: usize) -> Self {
        let mut p = Self::zero();
        p.flip(n);
        p
    }

    /// Little-endian coefficient bits, e.g. `[1, 1, 1]` for `x^2 + x + 1`.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut p = Self::zero();
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                p.flip(i);
            }
        }
        p
    }

    fn normalize(mut self) -> Self {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some(64 * (self.words.len() - 1) + 63 - top.leading_zeros() as usize)
    }

    pub fn bit(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    fn flip(&mut self, i: usize) {
        if self.words.len() <= i / 64 {
            self.words.resize(i / 64 + 1, 0);
        }
        self.words[i / 64] ^= 1 << (i % 64);
        let n = std::mem::take(&mut self.words);
        *self = Gf2Poly { words: n }.normalize();
    }

    fn shl(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (ws, bs) = (n / 64, n % 64);
        let mut out = vec![0u64; self.words.len() + ws + 1];
        for (i, &w) in self.words.iter().enumerate() {
            out[i + ws] ^= w << bs;
            if bs > 0 {
                out[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        Gf2Poly { words: out }.normalize()
    }

    pub fn add(&self, other: &Gf2Poly) -> Gf2Poly {
        let n = self.words.len().max(other.words.len());
        let words = (0..n)
            .map(|i| self.words.get(i).unwrap_or(&0) ^ other.words.get(i).unwrap_or(&0))
            .collect();
        Gf2Poly { words }.normalize()
    }

    /// Shift-and-xor multiplication.
    pub fn mul(&self, other: &Gf2Poly) -> Gf2Poly {
        let Some(da) = self.degree() else {
            return Self::zero();
        };
        let mut acc = vec![0u64; self.words.len() + other.words.len()];
        for i in 0..=da {
            if self.bit(i) {
                let (ws, bs) = (i / 64, i % 64);
                for (j, &w) in other.words.iter().enumerate() {
                    acc[j + ws] ^= w << bs;
                    if bs > 0 {
                        acc[j + ws + 1] ^= w >> (64 - bs);
                    }
                }
            }
        }
        Gf2Poly { words: acc }.normalize()
    }

    pub fn divrem(&self, b: &Gf2Poly) -> Result<(Gf2Poly, Gf2Poly), Gf2Error> {
        let db = b.degree().ok_or(Gf2Error::ZeroDivisor)?;
        let mut r = self.clone();
        let mut q = Self::zero();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            q.flip(dr - db);
            r = r.add(&b.shl(dr - db));
        }
        Ok((q, r))
    }

    pub fn rem(&self, b: &Gf2Poly) -> Result<Gf2Poly, Gf2Error> {
        Ok(self.divrem(b)?.1)
    }

    pub fn gcd(&self, other: &Gf2Poly) -> Gf2Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b nonzero");
            a = b;
            b = r;
        }
        a
    }

    pub fn derivative(&self) -> Gf2Poly {
        let mut out = Self::zero();
        if let Some(d) = self.degree() {
            for i in (1..=d).step_by(2) {
                if self.bit(i) {
                    out.flip(i - 1);
                }
            }
        }
        out
    }

    /// Square root of a polynomial whose odd coefficients vanish.
    fn sqrt_even(&self) -> Gf2Poly {
        let mut out = Self::zero();
        if let Some(d) = self.degree() {
            for i in (0..=d).step_by(2) {
                if self.bit(i) {
                    out.flip(i / 2);
                }
            }
        }
        out
    }

    fn mulmod(&self, other: &Gf2Poly, m: &Gf2Poly) -> Gf2Poly {
        self.mul(other).rem(m).expect("modulus nonzero")
    }

    fn exact_div(&self, b: &Gf2Poly) -> Gf2Poly {
        let (q, r) = self.divrem(b).expect("nonzero divisor");
        debug_assert!(r.is_zero());
        q
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.degree() else {
            return f.write_str("0");
        };
        let mut first = true;
        for i in (0..=d).rev() {
            if !self.bit(i) {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match i {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({self})")
    }
}

/// Coefficientwise reduction mod 2.
pub fn reduce_mod2(f: &IntPoly) -> Gf2Poly {
    let mut p = Gf2Poly::zero();
    for (i, c) in f.coeffs().iter().enumerate() {
        if c.is_odd() {
            p.flip(i);
        }
    }
    p
}

/// Complete factorization into irreducibles with multiplicities, sorted by
/// degree then bit pattern.
pub fn factor(a: &Gf2Poly) -> Result<Vec<(Gf2Poly, u32)>, Gf2Error> {
    if a.is_zero() {
        return Err(Gf2Error::ZeroInput);
    }
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(a) {
        for (g, k) in distinct_degree(&part) {
            for p in equal_degree(&g, k) {
                out.push((p, mult));
            }
        }
    }
    out.sort_by(|(p, _), (q, _)| p.degree().cmp(&q.degree()).then_with(|| p.cmp(q)));
    Ok(out)
}

fn squarefree_decomposition(f: &Gf2Poly) -> Vec<(Gf2Poly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.exact_div(&w);
        i += 1;
    }
    if !c.is_one() {
        for (g, m) in squarefree_decomposition(&c.sqrt_even()) {
            out.push((g, 2 * m));
        }
    }
    out
}

/// Splits a squarefree polynomial into products of irreducibles of equal degree.
fn distinct_degree(f: &Gf2Poly) -> Vec<(Gf2Poly, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut h = Gf2Poly::x().rem(&f).expect("nonzero");
    let mut i = 1;
    while f.degree().unwrap_or(0) >= 2 * i {
        h = h.mulmod(&h, &f);
        let g = f.gcd(&h.add(&Gf2Poly::x()));
        if !g.is_one() {
            f = f.exact_div(&g);
            h = h.rem(&f).expect("nonzero");
            out.push((g, i));
        }
        i += 1;
    }
    if f.degree().unwrap_or(0) > 0 {
        let d = f.degree().unwrap();
        out.push((f, d));
    }
    out
}

/// Deterministic equal-degree splitting with the trace map
/// `v + v^2 + ... + v^(2^(k-1))` applied to the basis `x^j`.
fn equal_degree(g: &Gf2Poly, k: usize) -> Vec<Gf2Poly> {
    let n = g.degree().unwrap_or(0);
    if n == k {
        return vec![g.clone()];
    }
    for j in 1..n {
        let v = Gf2Poly::monomial(j).rem(g).expect("nonzero");
        let mut t = v.clone();
        let mut s = v;
        for _ in 1..k {
            s = s.mulmod(&s, g);
            t = t.add(&s);
        }
        let d = g.gcd(&t);
        let dd = d.degree().unwrap_or(0);
        if !d.is_zero() && dd > 0 && dd < n {
            let mut out = equal_degree(&d, k);
            out.extend(equal_degree(&g.exact_div(&d), k));
            return out;
        }
    }
    unreachable!("trace images of a basis span all of GF(2)^r");
}

/// Irreducibility via `gcd(p, x^(2^k) - x) = 1` for `k < deg p` and
/// `x^(2^deg p) = x mod p`.
pub fn is_irreducible(p: &Gf2Poly) -> bool {
    let Some(n) = p.degree() else {
        return false;
    };
    if n == 0 {
        return false;
    }
    let x = Gf2Poly::x().rem(p).expect("nonzero");
    let mut h = x.clone();
    for k in 1..=n {
        h = h.mulmod(&h, p);
        if k < n {
            if !p.gcd(&h.add(&x)).is_one() {
                return false;
            }
        } else {
            return h == x;
        }
    }
    unreachable!()
}

/// Degrees of the irreducible factors of `f mod 2`.
pub fn irreducible_factor_degrees(f: &IntPoly) -> Result<BTreeSet<usize>, Gf2Error> {
    let a = reduce_mod2(f);
    if a.is_zero() {
        return Err(Gf2Error::ZeroInput);
    }
    Ok(factor(&a)?
        .into_iter()
        .map(|(p, _)| p.degree().unwrap())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(bits: &[u8]) -> Gf2Poly {
        Gf2Poly::from_bits(bits)
    }

    fn ip(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn reduction() {
        assert_eq!(reduce_mod2(&ip("x^2-3x+1")), b(&[1, 1, 1]));
        assert!(reduce_mod2(&ip("2x+4")).is_zero());
        assert_eq!(reduce_mod2(&ip("x^4+1")), b(&[1, 0, 0, 0, 1]));
    }

    #[test]
    fn arithmetic() {
        let xp1 = b(&[1, 1]);
        assert_eq!(xp1.mul(&xp1), b(&[1, 0, 1]));
        assert_eq!(b(&[1, 0, 1]).gcd(&xp1), xp1);
        assert!(b(&[1, 0, 0, 0, 1]).rem(&xp1).unwrap().is_zero());
        assert_eq!(xp1.rem(&Gf2Poly::zero()), Err(Gf2Error::ZeroDivisor));
        assert_eq!(Gf2Poly::monomial(130).degree(), Some(130));
        assert_eq!(Gf2Poly::monomial(70).mul(&Gf2Poly::monomial(70)), Gf2Poly::monomial(140));
    }

    #[test]
    fn factorizations() {
        assert_eq!(factor(&b(&[1, 0, 0, 0, 1])).unwrap(), vec![(b(&[1, 1]), 4)]);
        assert_eq!(factor(&b(&[1, 1, 1])).unwrap(), vec![(b(&[1, 1, 1]), 1)]);
        assert_eq!(factor(&b(&[1, 1, 0, 1])).unwrap(), vec![(b(&[1, 1, 0, 1]), 1)]);
        assert_eq!(factor(&Gf2Poly::zero()), Err(Gf2Error::ZeroInput));
        // x^3 + 1 = (x+1)(x^2+x+1)
        assert_eq!(
            factor(&b(&[1, 0, 0, 1])).unwrap(),
            vec![(b(&[1, 1]), 1), (b(&[1, 1, 1]), 1)]
        );
        // x^15 - 1 has one linear, one quadratic and three quartic factors
        let f = factor(&Gf2Poly::monomial(15).add(&Gf2Poly::one())).unwrap();
        let degs: Vec<usize> = f.iter().map(|(p, _)| p.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 2, 4, 4, 4]);
    }

    #[test]
    fn factor_degrees() {
        let s = |v: &[usize]| v.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(irreducible_factor_degrees(&ip("x^2-3x+1")).unwrap(), s(&[2]));
        assert_eq!(irreducible_factor_degrees(&ip("x^4+1")).unwrap(), s(&[1]));
        assert_eq!(irreducible_factor_degrees(&ip("x^3+x+1")).unwrap(), s(&[3]));
        assert!(irreducible_factor_degrees(&ip("2x^2+4")).is_err());
    }

    #[test]
    fn irreducibility_test() {
        assert!(is_irreducible(&b(&[1, 1, 1])));
        assert!(!is_irreducible(&b(&[1, 0, 1])));
        assert!(is_irreducible(&b(&[1, 1, 0, 1])));
        assert!(!is_irreducible(&Gf2Poly::one()));
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = Gf2Poly> {
        proptest::collection::vec(0u8..2, 1..=max_deg + 1).prop_map(|v| Gf2Poly::from_bits(&v))
    }

    fn x_pow_2n_minus_x(n: usize) -> Gf2Poly {
        Gf2Poly::monomial(1 << n).add(&Gf2Poly::x())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn factorization_recomposes(a in arb_poly(64)) {
            prop_assume!(!a.is_zero());
            let fs = factor(&a).unwrap();
            let mut prod = Gf2Poly::one();
            for (p, m) in &fs {
                prop_assert!(is_irreducible(p), "{} not irreducible", p);
                for _ in 0..*m {
                    prod = prod.mul(p);
                }
            }
            prop_assert_eq!(prod, a);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn factors_divide_field_polynomial(a in arb_poly(12)) {
            prop_assume!(!a.is_zero());
            for (p, _) in factor(&a).unwrap() {
                let n = p.degree().unwrap();
                prop_assert!(x_pow_2n_minus_x(n).rem(&p).unwrap().is_zero());
            }
        }
    }
}
