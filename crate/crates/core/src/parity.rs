//! Odd and even units. A unit with minimal polynomial `f` is even when `f(1)`
//! is even, i.e. when it is congruent to 1 modulo some prime above 2.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::fields;
use crate::poly2::{self, Gf2Error};
use crate::polyz::{self, IntPoly, PolyError};
use crate::rank1::{FundamentalStatus, Rank1Order};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParityError {
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error("polynomial must be monic of degree at least 1")]
    NotMonic,
    #[error("constant term must be +-1")]
    NotUnit,
    #[error("input is the cyclotomic polynomial Phi_{0}")]
    Cyclotomic(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("postcondition violated: {0}")]
    Postcondition(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    ValueAtOne(BigInt),
    /// `e^n` has minimal polynomial `minpoly`
    PowerExponent { n: u64, minpoly: IntPoly },
    /// `|f(shift)| = 2`
    NormTwoElement { shift: i64, value: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityReport {
    pub subject: IntPoly,
    pub parity: Parity,
    pub witness: Witness,
}

impl Serialize for ParityReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ParityReport", 4)?;
        st.serialize_field("subject", &self.subject)?;
        st.serialize_field("parity", &self.parity)?;
        match &self.witness {
            Witness::ValueAtOne(v) => {
                st.serialize_field("witness_kind", "value-at-one")?;
                st.serialize_field("witness_data", &serde_json::json!({ "value": v.to_string() }))?;
            }
            Witness::PowerExponent { n, minpoly } => {
                st.serialize_field("witness_kind", "power-exponent")?;
                st.serialize_field("witness_data", &serde_json::json!({ "n": n, "minpoly": minpoly, "text": minpoly.to_string() }))?;
            }
            Witness::NormTwoElement { shift, value } => {
                st.serialize_field("witness_kind", "norm-two-element")?;
                st.serialize_field("witness_data", &serde_json::json!({ "shift": shift, "value": value }))?;
            }
        }
        st.end()
    }
}

impl ParityReport {
    /// Re-derives the parity from the witness alone.
    pub fn recheck(&self) -> bool {
        match &self.witness {
            Witness::ValueAtOne(v) => {
                *v == self.subject.eval_i64(1) && (self.parity == Parity::Even) == v.is_even()
            }
            Witness::PowerExponent { n, minpoly } => {
                polyz::power_minpoly(&self.subject, *n).as_ref() == Ok(minpoly)
                    && (self.parity == Parity::Even) == is_even_poly(minpoly)
            }
            Witness::NormTwoElement { shift, value } => {
                value.abs() == 2
                    && self.subject.eval_i64(*shift) == BigInt::from(*value)
                    && self.parity == Parity::Even
            }
        }
    }
}

pub fn is_even_poly(f: &IntPoly) -> bool {
    f.eval_i64(1).is_even()
}

/// Parity of the unit with minimal polynomial `f`, witnessed by `f(1)`.
pub fn parity_report(f: &IntPoly) -> ParityReport {
    let v = f.eval_i64(1);
    ParityReport {
        subject: f.clone(),
        parity: if v.is_even() { Parity::Even } else { Parity::Odd },
        witness: Witness::ValueAtOne(v),
    }
}

/// Parity of `e^n`, witnessed by its minimal polynomial.
pub fn power_report(f: &IntPoly, n: u64) -> Result<ParityReport, ParityError> {
    if n == 0 {
        return Err(ParityError::ZeroExponent);
    }
    let mp = polyz::power_minpoly(f, n)?;
    Ok(ParityReport {
        subject: f.clone(),
        parity: if is_even_poly(&mp) { Parity::Even } else { Parity::Odd },
        witness: Witness::PowerExponent { n, minpoly: mp },
    })
}

/// True when `|Res(x^n - 1, f)|` is even, which forces `e^n` to be even.
/// False says nothing.
pub fn power_even_sufficient(f: &IntPoly, n: u64) -> Result<bool, ParityError> {
    if n == 0 {
        return Err(ParityError::ZeroExponent);
    }
    let xn1 = &IntPoly::monomial(1, n as usize) - &IntPoly::one();
    Ok(polyz::resultant(&xn1, f)?.is_even())
}

/// `Phi_n` equal to `f`, among all `n` with `phi(n) = deg f`.
pub fn cyclotomic_index(f: &IntPoly) -> Option<u64> {
    let d = f.degree()? as u64;
    if d == 0 {
        return None;
    }
    // phi(n) >= sqrt(n/2), so phi(n) = d forces n <= 2 d^2
    (1..=2 * d * d + 2)
        .filter(|&n| fields::totient(n) == d)
        .find(|&n| polyz::cyclotomic(n).as_ref() == Ok(f))
}

/// `n = 2^m - 1` with `m` the least degree of an irreducible factor of `f`
/// modulo 2, and the minimal polynomial of `e^n`, which is even.
pub fn even_power_exponent(f: &IntPoly) -> Result<(u64, IntPoly), ParityError> {
    if !f.is_monic() || f.degree().unwrap_or(0) < 1 {
        return Err(ParityError::NotMonic);
    }
    if f.coeff(0).abs() != BigInt::from(1) {
        return Err(ParityError::NotUnit);
    }
    if let Some(n) = cyclotomic_index(f) {
        return Err(ParityError::Cyclotomic(n));
    }
    let degs = poly2::irreducible_factor_degrees(f)?;
    let m = *degs.iter().next().expect("monic f has a factor mod 2");
    let n = (1u64 << m) - 1;
    let mp = polyz::power_minpoly(f, n)?;
    if !is_even_poly(&mp) {
        return Err(ParityError::Postcondition(format!("minimal polynomial of e^{n} is {mp}, which is odd")));
    }
    Ok((n, mp))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NormTwo {
    pub shift: i64,
    pub value: i64,
}

/// An integer `c` with `|f(c)| = 2`, scanning `0, 1, -1, 2, -2, ...`. Then
/// `e - c` generates a prime of norm 2, every unit is 1 modulo it, and there
/// is no vanishing sum of an odd number of units.
pub fn all_units_even_criterion(f: &IntPoly) -> Option<NormTwo> {
    if !f.is_monic() {
        return None;
    }
    // |c| >= H + 2 puts c at distance >= 2 from every root, so |f(c)| >= 4
    let h = f.height().to_i64()?;
    let bound = h.checked_add(2)?;
    let mut c = 0i64;
    loop {
        if c.abs() > bound {
            return None;
        }
        let v = f.eval_i64(c);
        if v.abs() == BigInt::from(2) {
            return Some(NormTwo {
                shift: c,
                value: v.to_i64().expect("small"),
            });
        }
        c = if c > 0 { -c } else { -c + 1 };
    }
}

/// Whether `e` is even and generates the unit group, so that every unit is
/// even. Requires certified fundamentality.
pub fn od_infinite_by_even_fundamental(order: &Rank1Order) -> Result<bool, ParityError> {
    match order.fundamental() {
        FundamentalStatus::Certified { .. } => Ok(is_even_poly(order.f())),
        other => Err(ParityError::Precondition(format!(
            "fundamentality of e is not certified: {other:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank1::{self, Filter, SearchBounds};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn basic_parity() {
        assert!(!is_even_poly(&p("x^3+x^2+66x+1")));
        assert!(is_even_poly(&p("x-1")));
        assert!(is_even_poly(&p("x^2-2x-1")));
        let r = parity_report(&p("x^2-2x-1"));
        assert_eq!(r.parity, Parity::Even);
        assert!(r.recheck());
    }

    #[test]
    fn resultant_test() {
        assert!(power_even_sufficient(&p("x^2-3x+1"), 3).unwrap());
        assert!(!power_even_sufficient(&p("x^2-3x+1"), 2).unwrap());
        assert_eq!(power_even_sufficient(&p("x^2-x-1"), 1).unwrap(), is_even_poly(&p("x^2-x-1")));
        assert!(power_even_sufficient(&p("x^2-x-1"), 0).is_err());
    }

    #[test]
    fn even_powers() {
        let (n, mp) = even_power_exponent(&p("x^2-3x+1")).unwrap();
        assert_eq!((n, mp), (3, p("x^2-18x+1")));
        assert_eq!(even_power_exponent(&p("x^3+x+1")).unwrap().0, 7);
        let (n, mp) = even_power_exponent(&p("x^2-2x-1")).unwrap();
        assert_eq!((n, mp), (1, p("x^2-2x-1")));
        assert_eq!(even_power_exponent(&p("x^4+1")), Err(ParityError::Cyclotomic(8)));
        assert_eq!(even_power_exponent(&p("x^2+x+1")), Err(ParityError::Cyclotomic(3)));
        assert_eq!(even_power_exponent(&p("x^2+x+2")), Err(ParityError::NotUnit));
    }

    #[test]
    fn norm_two() {
        assert_eq!(all_units_even_criterion(&p("x^3+2x+2")), Some(NormTwo { shift: 0, value: 2 }));
        assert_eq!(all_units_even_criterion(&p("x^4+1")), Some(NormTwo { shift: 1, value: 2 }));
        assert_eq!(all_units_even_criterion(&p("x^2-x-1")), None);
    }

    #[test]
    fn even_fundamental() {
        let silver = rank1::make_order(&p("x^2-2x-1")).unwrap();
        assert_eq!(od_infinite_by_even_fundamental(&silver), Ok(true));
        let golden = rank1::make_order(&p("x^2-x-1")).unwrap();
        assert_eq!(od_infinite_by_even_fundamental(&golden), Ok(false));
        let c = rank1::make_order(&p("x^3+x^2+66x+1")).unwrap();
        assert_eq!(od_infinite_by_even_fundamental(&c), Ok(false));
        let exc = rank1::make_order(&p("x^2-3x+1")).unwrap();
        assert!(od_infinite_by_even_fundamental(&exc).is_err());
    }

    #[test]
    fn serialization_fields() {
        let r = power_report(&p("x^2-3x+1"), 3).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["parity"], "even");
        assert_eq!(v["witness_kind"], "power-exponent");
        assert_eq!(v["witness_data"]["n"], 3);
        assert!(r.recheck());
    }

    /// Monic polynomials of degree `1..=4`, height `<= 5`, constant term `+-1`.
    fn unit_polys() -> impl Iterator<Item = IntPoly> {
        (1usize..=4).flat_map(|d| {
            let span = 11i64.pow(d as u32 - 1);
            (0..2 * span).map(move |idx| {
                let mut c = vec![if idx < span { 1 } else { -1 }];
                let mut r = idx % span;
                for _ in 1..d {
                    c.push(r % 11 - 5);
                    r /= 11;
                }
                c.push(1);
                IntPoly::from_i64s(&c)
            })
        })
    }

    #[test]
    fn resultant_grid() {
        let mut checked = 0;
        for f in unit_polys().filter(|f| fields::irreducible_small(f).unwrap_or(false)).step_by(7) {
            for n in 1..=8 {
                if power_even_sufficient(&f, n).unwrap() {
                    assert!(is_even_poly(&polyz::power_minpoly(&f, n).unwrap()), "{f} n={n}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn even_power_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut done = 0;
        while done < 200 {
            let d = rng.gen_range(2..=4);
            let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-6..=6)).collect();
            c[0] = if rng.gen_bool(0.5) { 1 } else { -1 };
            c.push(1);
            let f = IntPoly::from_i64s(&c);
            if !fields::irreducible_small(&f).unwrap() || cyclotomic_index(&f).is_some() {
                continue;
            }
            let (n, mp) = even_power_exponent(&f).unwrap();
            assert!(is_even_poly(&mp) && n >= 1);
            done += 1;
        }
    }

    #[test]
    fn odd_search_never_hits_even_fundamental() {
        for s in ["x^2-2x-1", "x^2-4x-1", "x^3+2x+1"] {
            let o = rank1::make_order(&p(s)).unwrap();
            if od_infinite_by_even_fundamental(&o) == Ok(true) {
                let c = rank1::min_vanishing_length(&o, SearchBounds::new(7), Filter::OddOnly).unwrap();
                assert!(c.k.is_none(), "{s}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn norm_two_forces_even_powers(d in 2usize..=5, a in 1i64..=5, m in 1u64..=30) {
            let mut c = vec![0i64; d + 1];
            c[0] = 2;
            c[1] += 2 * a * a;
            c[d] += 1;
            let f = IntPoly::from_i64s(&c);
            prop_assert!(all_units_even_criterion(&f).is_some());
            // 1 + A^2 e has norm +-1 since f(-1/A^2) = (-1)^d / A^(2d)
            let u = IntPoly::from_i64s(&[1, a * a]);
            let um = polyz::pow_mod(&u, m, &f).unwrap();
            let mp = polyz::minpoly_of_element(&f, &um).unwrap();
            prop_assert_eq!(mp.coeff(0).abs(), BigInt::from(1));
            prop_assert!(is_even_poly(&mp));
        }
    }
}
