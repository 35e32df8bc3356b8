//! Graphs on elements of `Z[e]` whose edges join elements differing by a
//! unit, and the constructions of cycles in them.

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::polyz::{self, IntPoly, PolyError};
use crate::rank1::{search::EngineError, Rank1Order, VanishingSum};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertices {0} and {1} coincide")]
    Duplicate(usize, usize),
    #[error("{0} is not a unit")]
    NotUnit(String),
    #[error("the terms do not sum to zero")]
    NotVanishing,
    #[error("not a cycle: {0}")]
    NotCycle(String),
    #[error("no suitable unit among +-e^m, m <= {cap}")]
    Inconclusive { cap: u32 },
    #[error("equivalence changed the adjacency matrix")]
    NotIsomorphic,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// `|N(g)| = 1` in `Z[x]/(f)`.
pub fn is_unit_mod(f: &IntPoly, g: &IntPoly) -> bool {
    if g.is_zero() {
        return false;
    }
    polyz::resultant(f, g).map(|r| r.abs() == BigInt::from(1)).unwrap_or(false)
}

pub fn is_unit_element(order: &Rank1Order, g: &IntPoly) -> bool {
    is_unit_mod(order.f(), g)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArithmeticGraph {
    pub f: IntPoly,
    pub vertices: Vec<IntPoly>,
    pub adjacency: Vec<Vec<bool>>,
}

impl Serialize for ArithmeticGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let verts: Vec<Vec<String>> = self
            .vertices
            .iter()
            .map(|v| (0..self.f.degree().unwrap_or(1)).map(|j| v.coeff(j).to_string()).collect())
            .collect();
        let mut s = serializer.serialize_struct("ArithmeticGraph", 3)?;
        s.serialize_field("f", &self.f)?;
        s.serialize_field("vertices", &verts)?;
        s.serialize_field("edges", &self.edges())?;
        s.end()
    }
}

impl ArithmeticGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> Vec<[usize; 2]> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (i + 1..n).filter(move |&j| self.adjacency[i][j]).map(move |j| [i, j]))
            .collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].iter().filter(|&&b| b).count()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  {i} [label=\"{v}\"];");
        }
        for [i, j] in self.edges() {
            let _ = writeln!(s, "  {i} -- {j};");
        }
        s.push_str("}\n");
        s
    }
}

/// Full pairwise adjacency; vertices are reduced mod `f` first.
pub fn build_graph_mod(f: &IntPoly, vertices: &[IntPoly]) -> Result<ArithmeticGraph, GraphError> {
    let vs: Vec<IntPoly> = vertices.iter().map(|v| v.rem_monic(f)).collect::<Result<_, _>>()?;
    let n = vs.len();
    for i in 0..n {
        for j in i + 1..n {
            if vs[i] == vs[j] {
                return Err(GraphError::Duplicate(i, j));
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let flags: Vec<bool> = pairs.par_iter().map(|&(i, j)| is_unit_mod(f, &(&vs[i] - &vs[j]))).collect();
    let mut adjacency = vec![vec![false; n]; n];
    for (&(i, j), &e) in pairs.iter().zip(&flags) {
        adjacency[i][j] = e;
        adjacency[j][i] = e;
    }
    Ok(ArithmeticGraph {
        f: f.clone(),
        vertices: vs,
        adjacency,
    })
}

pub fn build_graph(order: &Rank1Order, vertices: &[IntPoly]) -> Result<ArithmeticGraph, GraphError> {
    build_graph_mod(order.f(), vertices)
}

/// `e a + b` for every vertex `a`; the adjacency matrix must be unchanged.
pub fn apply_equivalence(
    order: &Rank1Order,
    vertices: &[IntPoly],
    unit: &IntPoly,
    shift: &IntPoly,
) -> Result<Vec<IntPoly>, GraphError> {
    let f = order.f();
    if !is_unit_mod(f, unit) {
        return Err(GraphError::NotUnit(unit.to_string()));
    }
    let out: Vec<IntPoly> = vertices
        .iter()
        .map(|a| polyz::mul_mod(unit, a, f).and_then(|p| (&p + shift).rem_monic(f)))
        .collect::<Result<_, _>>()?;
    let g = build_graph_mod(f, vertices)?;
    let h = build_graph_mod(f, &out)?;
    if g.adjacency != h.adjacency {
        return Err(GraphError::NotIsomorphic);
    }
    Ok(out)
}

/// Checks that the graph is a single cycle through all vertices and returns
/// the vertex indices in cycle order starting at 0.
pub fn verify_cycle(g: &ArithmeticGraph) -> Result<Vec<usize>, GraphError> {
    let n = g.len();
    if n < 3 {
        return Err(GraphError::NotCycle(format!("{n} vertices")));
    }
    for i in 0..n {
        if g.adjacency[i][i] {
            return Err(GraphError::NotCycle(format!("loop at {i}")));
        }
        for j in 0..n {
            if g.adjacency[i][j] != g.adjacency[j][i] {
                return Err(GraphError::NotCycle(format!("asymmetric at {i}, {j}")));
            }
        }
        let d = g.degree(i);
        if d != 2 {
            return Err(GraphError::NotCycle(format!("vertex {i} has degree {d}")));
        }
    }
    let mut order = vec![0usize];
    let mut prev = usize::MAX;
    let mut cur = 0;
    loop {
        let next = (0..n).find(|&j| g.adjacency[cur][j] && j != prev).expect("degree 2");
        if next == 0 {
            break;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    if order.len() != n {
        return Err(GraphError::NotCycle(format!("component of size {} out of {n}", order.len())));
    }
    Ok(order)
}

fn signed_power(f: &IntPoly, sign: i8, a: u32) -> Result<IntPoly, PolyError> {
    let p = polyz::pow_mod(&IntPoly::x(), a as u64, f)?;
    Ok(if sign < 0 { -p } else { p })
}

/// Partial sums of an ordered list of signed powers; vertex `i` is the sum
/// of the first `i + 1` terms, so the last vertex is 0.
pub fn cycle_from_terms(order: &Rank1Order, terms: &[(i8, u32)]) -> Result<ArithmeticGraph, GraphError> {
    let f = order.f();
    let mut acc = IntPoly::zero();
    let mut verts = Vec::with_capacity(terms.len());
    for &(s, a) in terms {
        acc = (&acc + &signed_power(f, s, a)?).rem_monic(f)?;
        verts.push(acc.clone());
    }
    if !acc.is_zero() {
        return Err(GraphError::NotVanishing);
    }
    let g = build_graph_mod(f, &verts)?;
    let cyc = verify_cycle(&g)?;
    // consecutive partial sums must be adjacent, in this order
    let n = g.len();
    if cyc.len() != n || (0..n).any(|i| !g.adjacency[i][(i + 1) % n]) {
        return Err(GraphError::NotCycle("partial sums are not in cycle order".into()));
    }
    Ok(g)
}

/// Cycle on the partial sums of a vanishing sum, terms read from the highest
/// exponent down.
pub fn cycle_from_vanishing_sum(order: &Rank1Order, s: &VanishingSum) -> Result<ArithmeticGraph, GraphError> {
    let mut terms = s.terms().to_vec();
    terms.reverse();
    cycle_from_terms(order, &terms)
}

/// `+-e^m` for `m = 1, 2, ...` up to `cap`, both signs.
fn unit_scan(f: &IntPoly, cap: u32) -> impl Iterator<Item = Result<IntPoly, PolyError>> + '_ {
    (1..=cap).flat_map(move |m| {
        [1i8, -1].into_iter().map(move |s| signed_power(f, s, m))
    })
}

/// The cycle `{0, 1, 1 + u, u}` for the first unit `u = +-e^m` with neither
/// `1 + u` nor `1 - u` a unit.
pub fn four_cycle(order: &Rank1Order, cap: u32) -> Result<(IntPoly, ArithmeticGraph), GraphError> {
    let f = order.f();
    let one = IntPoly::one();
    for u in unit_scan(f, cap) {
        let u = u?;
        if is_unit_mod(f, &(&one + &u)) || is_unit_mod(f, &(&one - &u)) {
            continue;
        }
        let verts = [IntPoly::zero(), one.clone(), &one + &u, u.clone()];
        let g = build_graph_mod(f, &verts)?;
        let cyc = verify_cycle(&g)?;
        assert_eq!(cyc, vec![0, 1, 2, 3]);
        return Ok((u, g));
    }
    Err(GraphError::Inconclusive { cap })
}

/// Vertex list in cycle order.
fn in_cycle_order(g: &ArithmeticGraph) -> Result<Vec<IntPoly>, GraphError> {
    Ok(verify_cycle(g)?.into_iter().map(|i| g.vertices[i].clone()).collect())
}

/// For a cycle `a_1 .. a_t` (`t >= 4`), the cycle
/// `a_1, a_1 + u, a_2 + u, .., a_(t-1) + u, a_(t-1), a_t` for the first
/// scanned unit `u` meeting the non-coincidence and non-unit conditions.
/// A triangle has `a_1` adjacent to `a_(t-1)`, so for `t = 3` a 5-cycle is
/// searched for directly instead.
pub fn extend_cycle_by_two(order: &Rank1Order, g: &ArithmeticGraph, cap: u32) -> Result<ArithmeticGraph, GraphError> {
    let f = order.f();
    let a = in_cycle_order(g)?;
    let t = a.len();
    if t == 3 {
        return odd_cycle_by_search(order, 5, 10);
    }
    'scan: for u in unit_scan(f, cap) {
        let u = u?;
        for i in 0..t - 1 {
            let shifted = (&a[i] + &u).rem_monic(f)?;
            for j in [0, t - 2, t - 1] {
                if i == j {
                    continue;
                }
                let diff = &shifted - &a[j];
                if diff.is_zero() || is_unit_mod(f, &diff) {
                    continue 'scan;
                }
            }
        }
        let mut verts = vec![a[0].clone()];
        for ai in &a[..t - 1] {
            verts.push(&(ai.clone()) + &u);
        }
        verts.push(a[t - 2].clone());
        verts.push(a[t - 1].clone());
        let h = match build_graph_mod(f, &verts) {
            Ok(h) => h,
            Err(GraphError::Duplicate(..)) => continue,
            Err(e) => return Err(e),
        };
        if verify_cycle(&h).is_ok() {
            return Ok(h);
        }
    }
    Err(GraphError::Inconclusive { cap })
}

/// A cycle of length `k` on partial sums of `k` signed powers of `e` with
/// exponents in `0..=window`: a vanishing sum whose cyclically consecutive
/// pair sums are neither zero nor units.
pub fn odd_cycle_by_search(order: &Rank1Order, k: u32, window: u32) -> Result<ArithmeticGraph, GraphError> {
    let f = order.f();
    let eng = order.engine(window);
    let pows: Vec<IntPoly> = (0..=window)
        .map(|a| polyz::pow_mod(&IntPoly::x(), a as u64, f))
        .collect::<Result<_, _>>()?;
    let terms_of = |digits: &[Vec<i64>]| -> Vec<(i8, u32)> {
        let mut t = Vec::new();
        for (a, d) in digits.iter().enumerate() {
            for _ in 0..d[0].unsigned_abs() {
                t.push((d[0].signum() as i8, a as u32));
            }
        }
        t
    };
    let value = |&(s, a): &(i8, u32)| -> IntPoly {
        let p = pows[a as usize].clone();
        if s < 0 {
            -p
        } else {
            p
        }
    };
    let arrange = |terms: &[(i8, u32)]| -> Option<Vec<(i8, u32)>> {
        let n = terms.len();
        let mut perm: Vec<usize> = (0..n).collect();
        // fix the first term; permute the rest in lexicographic order
        loop {
            let seq: Vec<(i8, u32)> = perm.iter().map(|&i| terms[i]).collect();
            let ok = (0..n).all(|i| {
                let s = &value(&seq[i]) + &value(&seq[(i + 1) % n]);
                !s.is_zero() && !is_unit_mod(f, &s)
            });
            if ok {
                return Some(seq);
            }
            if !next_permutation(&mut perm[1..]) {
                return None;
            }
        }
    };
    let accept = |digits: &[Vec<i64>]| arrange(&terms_of(digits)).is_some();
    let hit = eng.search(k, &accept, true)?;
    let Some(digits) = hit else {
        return Err(GraphError::Inconclusive { cap: window });
    };
    let seq = arrange(&terms_of(&digits)).expect("accepted");
    cycle_from_terms(order, &seq)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Length of the shortest odd cycle, via shortest paths in the bipartite
/// double cover.
pub fn odd_girth(g: &ArithmeticGraph) -> Option<usize> {
    let n = g.len();
    let mut best: Option<usize> = None;
    for s in 0..n {
        let mut dist = vec![[usize::MAX; 2]; n];
        dist[s][0] = 0;
        let mut q = VecDeque::from([(s, 0usize)]);
        while let Some((v, p)) = q.pop_front() {
            let dv = dist[v][p];
            for w in 0..n {
                if g.adjacency[v][w] && dist[w][1 - p] == usize::MAX {
                    dist[w][1 - p] = dv + 1;
                    q.push_back((w, 1 - p));
                }
            }
        }
        if dist[s][1] != usize::MAX {
            best = Some(best.map_or(dist[s][1], |b| b.min(dist[s][1])));
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OddGirthReport {
    pub f: IntPoly,
    /// smallest odd vanishing length; `None` for infinity
    pub od: Option<u32>,
    pub seed: u64,
    pub trials: u32,
    pub max_vertices: usize,
    pub edges_seen: usize,
    pub shortest_odd_cycle: Option<usize>,
    pub violations: u32,
}

/// Random vertex sets grown by unit steps from existing vertices mixed with
/// random small elements; every odd cycle found must have length at least
/// `od`.
pub fn odd_girth_report(
    order: &Rank1Order,
    od: Option<u32>,
    seed: u64,
    trials: u32,
    max_vertices: usize,
) -> Result<OddGirthReport, GraphError> {
    let f = order.f();
    let d = f.degree().unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pows: Vec<IntPoly> = (0..=6)
        .map(|a| polyz::pow_mod(&IntPoly::x(), a as u64, f))
        .collect::<Result<_, _>>()?;
    let mut rep = OddGirthReport {
        f: f.clone(),
        od,
        seed,
        trials,
        max_vertices,
        edges_seen: 0,
        shortest_odd_cycle: None,
        violations: 0,
    };
    for _ in 0..trials {
        let size = rng.gen_range(3..=max_vertices.max(3));
        let mut verts: Vec<IntPoly> = vec![IntPoly::zero()];
        let mut guard = 0;
        while verts.len() < size && guard < 100 {
            guard += 1;
            let v = if rng.gen_bool(0.7) {
                let base = verts[rng.gen_range(0..verts.len())].clone();
                let step = &pows[rng.gen_range(0..pows.len())];
                if rng.gen_bool(0.5) {
                    &base + step
                } else {
                    &base - step
                }
            } else {
                let c: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
                IntPoly::from_i64s(&c)
            };
            let v = v.rem_monic(f)?;
            if !verts.contains(&v) {
                verts.push(v);
            }
        }
        let g = build_graph_mod(f, &verts)?;
        rep.edges_seen += g.edges().len();
        if let Some(l) = odd_girth(&g) {
            rep.shortest_odd_cycle = Some(rep.shortest_odd_cycle.map_or(l, |b| b.min(l)));
            if od.is_none_or(|od| (l as u32) < od) {
                rep.violations += 1;
            }
        }
    }
    Ok(rep)
}
