//! Floating-point complex roots with certified enclosing discs.
//!
//! Roots come from Aberth iteration followed by Newton polishing. Each root
//! `z` gets the radius `n * |f(z)| / |f'(z)|` inflated by a bound on the
//! rounding error of the evaluation; pairwise disjoint discs of this radius
//! each contain exactly one root. Callers only ever use the discs to derive
//! one-sided bounds, never to accept or reject a candidate outright.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::polyz::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("polynomial of degree < 1 has no roots")]
    Degenerate,
    #[error("coefficient too large for floating-point root finding")]
    Overflow,
    #[error("root enclosures are not separated")]
    NotSeparated,
    #[error("signature does not match the numeric roots")]
    SignatureMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBall {
    pub z: Complex64,
    pub radius: f64,
}

impl RootBall {
    /// Upper bound on `|root|`.
    pub fn abs_hi(&self) -> f64 {
        (self.z.norm() + self.radius) * (1.0 + 4.0 * f64::EPSILON)
    }

    /// Lower bound on `|root|`.
    pub fn abs_lo(&self) -> f64 {
        ((self.z.norm() - self.radius) * (1.0 - 4.0 * f64::EPSILON)).max(0.0)
    }
}

fn to_f64s(f: &IntPoly) -> Result<Vec<f64>, EmbedError> {
    f.coeffs()
        .iter()
        .map(|c| c.to_f64().filter(|v| v.is_finite()).ok_or(EmbedError::Overflow))
        .collect()
}

fn horner(a: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in a.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of a squarefree polynomial, with enclosing discs.
pub fn root_balls(f: &IntPoly) -> Result<Vec<RootBall>, EmbedError> {
    let n = f.degree().ok_or(EmbedError::Degenerate)?;
    if n == 0 {
        return Err(EmbedError::Degenerate);
    }
    let a = to_f64s(f)?;
    let lc = a[n];
    let monic: Vec<f64> = a.iter().map(|c| c / lc).collect();
    let bound = 1.0 + monic[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));

    let mut zs: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(0.5 * bound, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner(&monic, zs[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (zs[i] - zs[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if w.is_finite() {
                zs[i] -= w;
                moved = moved.max(w.norm() / zs[i].norm().max(1.0));
            }
        }
        if moved < 1e-17 {
            break;
        }
    }
    for z in zs.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&monic, *z);
            let step = p / dp;
            if step.is_finite() {
                *z -= step;
            }
        }
    }

    let u = f64::EPSILON;
    let mut balls = Vec::with_capacity(n);
    for &z in &zs {
        let (p, dp) = horner(&monic, z);
        let r = z.norm();
        let absum: f64 = monic.iter().enumerate().map(|(i, c)| c.abs() * r.powi(i as i32)).sum();
        let dabsum: f64 = monic
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| i as f64 * c.abs() * r.powi(i as i32 - 1))
            .sum();
        let err = 4.0 * (n as f64 + 2.0) * u * absum;
        let derr = 4.0 * (n as f64 + 2.0) * u * dabsum;
        let denom = dp.norm() - derr;
        if !(denom > 0.0) {
            return Err(EmbedError::NotSeparated);
        }
        let radius = (n as f64 * (p.norm() + err) / denom) * (1.0 + 8.0 * u) + f64::MIN_POSITIVE;
        if !radius.is_finite() {
            return Err(EmbedError::NotSeparated);
        }
        balls.push(RootBall { z, radius });
    }
    for i in 0..n {
        for j in i + 1..n {
            if (balls[i].z - balls[j].z).norm() <= balls[i].radius + balls[j].radius {
                return Err(EmbedError::NotSeparated);
            }
        }
    }
    Ok(balls)
}

/// One disc per archimedean place: the `r1` real roots (snapped onto the real
/// axis) followed by one root from each complex-conjugate pair (upper half
/// plane). `r1` must come from an exact real-root count.
pub fn places(f: &IntPoly, r1: usize) -> Result<Vec<RootBall>, EmbedError> {
    let mut balls = root_balls(f)?;
    let n = balls.len();
    if r1 > n || (n - r1) % 2 != 0 {
        return Err(EmbedError::SignatureMismatch);
    }
    balls.sort_by(|a, b| a.z.im.abs().total_cmp(&b.z.im.abs()));
    let mut out = Vec::with_capacity(r1 + (n - r1) / 2);
    for b in &balls[..r1] {
        if b.z.im.abs() > b.radius {
            return Err(EmbedError::SignatureMismatch);
        }
        out.push(RootBall {
            z: Complex64::new(b.z.re, 0.0),
            radius: b.radius,
        });
    }
    let upper: Vec<RootBall> = balls[r1..].iter().filter(|b| b.z.im > 0.0).copied().collect();
    if upper.len() * 2 != n - r1 || upper.iter().any(|b| b.z.im <= b.radius) {
        return Err(EmbedError::SignatureMismatch);
    }
    let mut real: Vec<RootBall> = out;
    real.sort_by(|a, b| a.z.re.total_cmp(&b.z.re));
    let mut upper = upper;
    upper.sort_by(|a, b| a.z.re.total_cmp(&b.z.re).then(a.z.im.total_cmp(&b.z.im)));
    real.extend(upper);
    Ok(real)
}

/// Solves `sum_j q_j z_k^j = v_k` for the coordinates `q` of an element in the
/// power basis, given its values at every root. Gaussian elimination with
/// partial pivoting.
pub fn vandermonde_solve(roots: &[Complex64], values: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = roots.len();
    let mut m: Vec<Vec<Complex64>> = roots
        .iter()
        .zip(values)
        .map(|(&z, &v)| {
            let mut row: Vec<Complex64> = (0..n).map(|j| z.powu(j as u32)).collect();
            row.push(v);
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm()))?;
        if m[piv][col].norm() == 0.0 {
            return None;
        }
        m.swap(col, piv);
        for r in 0..n {
            if r != col {
                let factor = m[r][col] / m[col][col];
                for c in col..=n {
                    let t = m[col][c];
                    m[r][c] -= factor * t;
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn golden_roots() {
        let balls = places(&p("x^2-x-1"), 2).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((balls[1].z.re - phi).abs() < 1e-14);
        assert!((balls[0].z.re + 1.0 / phi).abs() < 1e-14);
        assert!(balls.iter().all(|b| b.radius < 1e-12));
        assert!(balls[1].abs_hi() >= phi && balls[1].abs_lo() <= phi);
    }

    #[test]
    fn complex_cubic_places() {
        let balls = places(&p("x^3+3x+1"), 1).unwrap();
        assert_eq!(balls.len(), 2);
        assert_eq!(balls[0].z.im, 0.0);
        assert!(balls[1].z.im > 0.0);
        // product of the roots is -1
        let prod = balls[0].z.re * balls[1].z.norm_sqr();
        assert!((prod + 1.0).abs() < 1e-12);
    }

    #[test]
    fn quartic_without_real_roots() {
        let balls = places(&p("x^4+1"), 0).unwrap();
        assert_eq!(balls.len(), 2);
        assert!(balls.iter().all(|b| (b.z.norm() - 1.0).abs() < 1e-13));
        assert_eq!(places(&p("x^4+1"), 2), Err(EmbedError::SignatureMismatch));
    }

    #[test]
    fn repeated_roots_are_not_separated() {
        assert!(root_balls(&p("x^2-2x+1")).is_err());
        assert_eq!(root_balls(&p("5")), Err(EmbedError::Degenerate));
    }

    #[test]
    fn vandermonde_recovers_coordinates() {
        // element 2 - 3x + x^2 in Q(sqrt 2)
        let balls = root_balls(&p("x^2-2")).unwrap();
        let zs: Vec<Complex64> = balls.iter().map(|b| b.z).collect();
        let vals: Vec<Complex64> = zs.iter().map(|&z| 2.0 - 3.0 * z + z * z).collect();
        let q = vandermonde_solve(&zs, &vals).unwrap();
        assert!((q[0].re - 4.0).abs() < 1e-12);
        assert!((q[1].re + 3.0).abs() < 1e-12);
    }
}
