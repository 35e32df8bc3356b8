//! Depth-first enumeration of vanishing sums `sum_i d_i e^i = 0`, where each
//! digit `d_i` is an integer combination of torsion units and the cost of a
//! sum is the total number of unit terms.
//!
//! Reading the sum from the lowest exponent, the state after position `i` is
//! `(d_0 + ... + d_i e^i) / e^(i+1)`, an element of `Z[e]` kept in power-basis
//! coordinates. A complete sum is exactly a path whose state returns to zero
//! after the last digit. States are pruned when, at some archimedean place,
//! they are provably larger than anything the remaining budget can cancel.

use std::collections::HashSet;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::embed::RootBall;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("state coordinates overflowed 64-bit integers")]
    Overflow,
    #[error("search exceeded the node limit of {0}")]
    NodeLimit(u64),
}

struct Place {
    /// `z^j` for `j < d`
    pows: Vec<Complex64>,
    /// bound on `|(z + delta)^j - z^j|` over the enclosing disc, plus rounding
    pow_err: Vec<f64>,
    /// `max(1, |sigma(e)|^m)` upper bounds, indexed by `m`
    growth: Vec<f64>,
}

/// Arithmetic and pruning data for one order `Z[x]/(f)` with `|f(0)| = 1`.
pub struct Engine {
    d: usize,
    /// `f_1 .. f_(d-1)` followed by the leading 1
    tail: Vec<i64>,
    f0: i64,
    /// power-basis coordinates of the torsion units used as digit generators
    gens: Vec<Vec<i64>>,
    places: Vec<Place>,
    window: u32,
    node_limit: u64,
}

/// Decides whether a complete digit sequence is reported. Must be a pure
/// function of the sequence.
pub type Accept<'a> = dyn Fn(&[Vec<i64>]) -> bool + Sync + 'a;

enum Outcome {
    Found(Vec<Vec<i64>>),
    /// some complete sum was reached from this state, none accepted
    RawOnly,
    Dead,
}

struct Branch<'a> {
    eng: &'a Engine,
    k: u32,
    accept: &'a Accept<'a>,
    history_dependent: bool,
    memo: HashSet<Vec<i64>>,
    digits: Vec<Vec<i64>>,
    nodes: u64,
}

impl Engine {
    /// `f` little-endian, monic, `|f(0)| = 1`. `places` holds one disc per
    /// archimedean place; `gens` the torsion generators' coordinates.
    pub fn new(f: &[i64], places: &[RootBall], gens: Vec<Vec<i64>>, window: u32) -> Engine {
        let d = f.len() - 1;
        let u = f64::EPSILON;
        let places = places
            .iter()
            .map(|b| {
                let zabs = b.z.norm();
                let pows: Vec<Complex64> = (0..d).map(|j| b.z.powu(j as u32)).collect();
                let pow_err = (0..d)
                    .map(|j| {
                        let j = j as i32;
                        ((zabs + b.radius).powi(j) - zabs.powi(j)) * (1.0 + 1e-12)
                            + 64.0 * u * (zabs + b.radius).powi(j)
                    })
                    .collect();
                let hi = b.abs_hi();
                let growth = (0..=window as i32 + 1)
                    .map(|m| hi.powi(m).max(1.0) * (1.0 + 1e-12))
                    .collect();
                Place {
                    pows,
                    pow_err,
                    growth,
                }
            })
            .collect();
        Engine {
            d,
            tail: f[1..].to_vec(),
            f0: f[0],
            gens,
            places,
            window,
            node_limit: u64::MAX,
        }
    }

    pub fn with_node_limit(mut self, limit: u64) -> Self {
        self.node_limit = limit;
        self
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    /// `(a + sum_b c_b g_b) / e`
    pub fn step(&self, a: &[i64], digit: &[i64]) -> Result<Vec<i64>, EngineError> {
        let mut s = a.to_vec();
        for (g, &c) in self.gens.iter().zip(digit) {
            if c != 0 {
                for (sj, gj) in s.iter_mut().zip(g) {
                    *sj = gj
                        .checked_mul(c)
                        .and_then(|t| sj.checked_add(t))
                        .ok_or(EngineError::Overflow)?;
                }
            }
        }
        self.div_e(&s)
    }

    fn div_e(&self, a: &[i64]) -> Result<Vec<i64>, EngineError> {
        let t = a[0].checked_mul(self.f0).ok_or(EngineError::Overflow)?;
        let mut b = Vec::with_capacity(self.d);
        for j in 0..self.d - 1 {
            let v = t
                .checked_mul(self.tail[j])
                .and_then(|x| a[j + 1].checked_sub(x))
                .ok_or(EngineError::Overflow)?;
            b.push(v);
        }
        b.push(t.checked_neg().ok_or(EngineError::Overflow)?);
        Ok(b)
    }

    /// Certified lower bound on `|sigma(a)|` at place `p`.
    fn lower_abs(&self, p: &Place, a: &[i64]) -> f64 {
        let mut v = Complex64::new(0.0, 0.0);
        let mut slack = 0.0;
        for j in 0..self.d {
            if a[j] != 0 {
                let c = a[j] as f64;
                v += p.pows[j] * c;
                slack += c.abs() * p.pow_err[j];
            }
        }
        v.norm() * (1.0 - 4.0 * f64::EPSILON) - slack
    }

    /// Whether state `a` can still be cancelled by digits of total cost
    /// `budget` at exponent offsets `0..=span`.
    pub fn admissible(&self, a: &[i64], budget: u32, span: u32) -> bool {
        self.places.iter().all(|p| {
            let bound = budget as f64 * p.growth[span as usize];
            self.lower_abs(p, a) <= bound
        })
    }

    /// Whether state `a` can be cancelled by `sum_m w_m e^m` with integer
    /// weights bounded by `suffix` (`|w_m| <= suffix[m]`).
    pub fn admissible_weighted(&self, a: &[i64], suffix: &[u32]) -> bool {
        self.places.iter().all(|p| {
            let bound: f64 = suffix
                .iter()
                .enumerate()
                .map(|(m, &w)| w as f64 * p.growth[m])
                .sum();
            self.lower_abs(p, a) <= bound * (1.0 + 1e-12)
        })
    }

    /// Digit vectors of cost at most `rem`, in search order. With a single
    /// generator the order is `-rem, ..., -1, rem, ..., 1, 0`, which makes the
    /// first complete sum found the least one in term-list order.
    fn digit_choices(&self, rem: u32) -> Vec<Vec<i64>> {
        let rank = |c: i64| -> (u8, i64) {
            if c < 0 {
                (0, c)
            } else if c > 0 {
                (1, -c)
            } else {
                (2, 0)
            }
        };
        let r = rem as i64;
        let mut out: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..self.gens.len() {
            let mut next = Vec::new();
            for prefix in &out {
                let used: i64 = prefix.iter().map(|c: &i64| c.abs()).sum();
                for c in -(r - used)..=(r - used) {
                    let mut v = prefix.clone();
                    v.push(c);
                    next.push(v);
                }
            }
            out = next;
        }
        out.sort_by_key(|v| v.iter().map(|&c| rank(c)).collect::<Vec<_>>());
        out
    }

    /// First accepted vanishing sum of cost exactly `k` with at most
    /// `window + 1` digits, in search order; the first digit is nonzero.
    ///
    /// Top-level branches (choices of the first digit) run in parallel; the
    /// earliest branch with a hit wins, so the answer does not depend on the
    /// number of workers.
    pub fn search(
        &self,
        k: u32,
        accept: &Accept<'_>,
        history_dependent: bool,
    ) -> Result<Option<Vec<Vec<i64>>>, EngineError> {
        let zero = vec![0i64; self.d];
        let firsts: Vec<Vec<i64>> = self
            .digit_choices(k)
            .into_iter()
            .filter(|v| v.iter().any(|&c| c != 0))
            .collect();
        let hit = firsts
            .par_iter()
            .map(|first| {
                let mut br = Branch {
                    eng: self,
                    k,
                    accept,
                    history_dependent,
                    memo: HashSet::new(),
                    digits: Vec::new(),
                    nodes: 0,
                };
                br.try_digit(0, &zero, 0, first)
            })
            .find_first(|r| !matches!(r, Ok(Outcome::Dead) | Ok(Outcome::RawOnly)));
        match hit {
            None => Ok(None),
            Some(Err(e)) => Err(e),
            Some(Ok(Outcome::Found(v))) => Ok(Some(v)),
            Some(Ok(_)) => unreachable!(),
        }
    }
}

fn cost(digit: &[i64]) -> u32 {
    digit.iter().map(|c| c.unsigned_abs() as u32).sum()
}

fn canonical_sign(digit: &[i64]) -> bool {
    digit.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
}

impl Branch<'_> {
    /// Places `digit` at position `pos` on top of `state` (cost so far `spent`).
    fn try_digit(
        &mut self,
        pos: u32,
        state: &[i64],
        spent: u32,
        digit: &[i64],
    ) -> Result<Outcome, EngineError> {
        self.nodes += 1;
        if self.nodes > self.eng.node_limit {
            return Err(EngineError::NodeLimit(self.eng.node_limit));
        }
        let next = self.eng.step(state, digit)?;
        let spent = spent + cost(digit);
        self.digits.push(digit.to_vec());
        let out = if next.iter().all(|&c| c == 0) {
            if spent == self.k {
                if canonical_sign(digit) && (self.accept)(&self.digits) {
                    Outcome::Found(self.digits.clone())
                } else {
                    Outcome::RawOnly
                }
            } else {
                // a proper prefix already vanishes
                Outcome::Dead
            }
        } else if spent < self.k
            && pos < self.eng.window
            && self.eng.admissible(&next, self.k - spent, self.eng.window - pos - 1)
        {
            self.expand(pos + 1, &next, spent)?
        } else {
            Outcome::Dead
        };
        self.digits.pop();
        Ok(out)
    }

    fn expand(&mut self, pos: u32, state: &[i64], spent: u32) -> Result<Outcome, EngineError> {
        let rem = self.k - spent;
        let mut key = state.to_vec();
        key.push(pos as i64);
        key.push(rem as i64);
        if self.memo.contains(&key) {
            return Ok(Outcome::Dead);
        }
        let mut raw = false;
        for digit in self.eng.digit_choices(rem) {
            match self.try_digit(pos, state, spent, &digit)? {
                Outcome::Found(v) => return Ok(Outcome::Found(v)),
                Outcome::RawOnly => raw = true,
                Outcome::Dead => {}
            }
        }
        if !raw || !self.history_dependent {
            self.memo.insert(key);
        }
        Ok(if raw { Outcome::RawOnly } else { Outcome::Dead })
    }
}

/// Searches for a nonzero `h'` with `h'_i` between `0` and `h_i` (same sign),
/// `h' != h`, and `f | h'`. Returns such an `h'` if one exists.
pub fn proper_dominated_multiple(eng: &Engine, h: &[i64]) -> Result<Option<Vec<i64>>, EngineError> {
    let n = h.len();
    // suffix[i][m] = |h_(i+m)|
    let suffixes: Vec<Vec<u32>> = (0..=n)
        .map(|i| h[i.min(n)..].iter().map(|c| c.unsigned_abs() as u32).collect())
        .collect();
    let mut memo = HashSet::new();
    let mut chosen = Vec::with_capacity(n);
    let zero = vec![0i64; eng.degree()];
    sub_dfs(eng, h, &suffixes, 0, &zero, false, false, &mut chosen, &mut memo)
}

#[allow(clippy::too_many_arguments)]
fn sub_dfs(
    eng: &Engine,
    h: &[i64],
    suffixes: &[Vec<u32>],
    pos: usize,
    state: &[i64],
    nonzero: bool,
    short: bool,
    chosen: &mut Vec<i64>,
    memo: &mut HashSet<Vec<i64>>,
) -> Result<Option<Vec<i64>>, EngineError> {
    if pos == h.len() {
        let ok = state.iter().all(|&c| c == 0) && nonzero && short;
        return Ok(ok.then(|| chosen.clone()));
    }
    let mut key = state.to_vec();
    key.extend([pos as i64, nonzero as i64, short as i64]);
    if memo.contains(&key) {
        return Ok(None);
    }
    let hi = h[pos];
    let sgn = hi.signum();
    for mag in 0..=hi.abs() {
        let c = sgn * mag;
        let next = eng.step(state, &[c])?;
        if !eng.admissible_weighted(&next, &suffixes[pos + 1]) {
            continue;
        }
        chosen.push(c);
        let r = sub_dfs(
            eng,
            h,
            suffixes,
            pos + 1,
            &next,
            nonzero || c != 0,
            short || c != hi,
            chosen,
            memo,
        )?;
        chosen.pop();
        if r.is_some() {
            return Ok(r);
        }
    }
    memo.insert(key);
    Ok(None)
}
