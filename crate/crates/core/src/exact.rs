//! Exact weights for a fixed ordering by solving the window constraints.
//!
//! With `dmin = 0` every condition is a bound on `w_i + w_j`, on
//! `w_i - w_{i+1}`, or on a single weight once its partner is fixed. Such a
//! system is solved on the doubled difference graph with nodes `w_i` and
//! `-w_i`: a feasible potential `pi` yields the weights
//! `(pi(+i) - pi(-i)) / 2`. Strict bounds carry an infinitesimal `eps`, so
//! path lengths are pairs `(a, b)` read as `a + b * eps`.

use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::eval::verify_witness;
use crate::gap::{PairColor, ProperColoring};
use crate::graph::Graph;
use crate::perm::VertexOrdering;
use crate::rational::{int, Rational};
use crate::synthesis::{PositionMirrors, StarPCR};

/// Scalar type of path lengths.
pub trait Coord:
    Clone + Ord + Zero + One + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self>
{
    fn rational(&self) -> Rational;
}

impl Coord for i64 {
    fn rational(&self) -> Rational {
        int(*self)
    }
}

impl Coord for Rational {
    fn rational(&self) -> Rational {
        self.clone()
    }
}

type Len<T> = (T, T);

fn add<T: Coord>(x: &Len<T>, y: &Len<T>) -> Len<T> {
    (x.0.clone() + y.0.clone(), x.1.clone() + y.1.clone())
}

fn neg<T: Coord>(x: Len<T>) -> Len<T> {
    (-x.0, -x.1)
}

/// `c - eps`, `c`, or `c + eps`.
fn bound<T: Coord>(c: T, e: i8) -> Len<T> {
    let b = match e {
        -1 => -T::one(),
        0 => T::zero(),
        _ => T::one(),
    };
    (c, b)
}

/// Edge `from -> to` of weight `c` encodes `pi(to) - pi(from) <= c`.
struct System<T> {
    edges: Vec<(usize, usize, Len<T>)>,
}

impl<T: Coord> System<T> {
    fn plus(i: usize) -> usize {
        2 * i
    }

    fn minus(i: usize) -> usize {
        2 * i + 1
    }

    /// `w_i + w_j <= c`.
    fn sum_at_most(&mut self, i: usize, j: usize, c: Len<T>) {
        self.edges.push((Self::minus(j), Self::plus(i), c.clone()));
        self.edges.push((Self::minus(i), Self::plus(j), c));
    }

    /// `w_i + w_j >= c`.
    fn sum_at_least(&mut self, i: usize, j: usize, c: Len<T>) {
        let c = neg(c);
        self.edges.push((Self::plus(j), Self::minus(i), c.clone()));
        self.edges.push((Self::plus(i), Self::minus(j), c));
    }

    /// `w_i <= w_j`, or `w_i < w_j` when `strict`.
    fn at_most(&mut self, i: usize, j: usize, strict: bool) {
        let c = bound(T::zero(), if strict { -1 } else { 0 });
        self.edges.push((Self::plus(j), Self::plus(i), c.clone()));
        self.edges.push((Self::minus(i), Self::minus(j), c));
    }

    /// `w_i <= c`.
    fn single_at_most(&mut self, i: usize, c: Len<T>) {
        let c = add(&c, &c);
        self.edges.push((Self::minus(i), Self::plus(i), c));
    }

    /// `w_i >= c`.
    fn single_at_least(&mut self, i: usize, c: Len<T>) {
        let c = add(&c, &c);
        self.edges.push((Self::plus(i), Self::minus(i), neg(c)));
    }

    /// Shortest distances from `source`; unreachable nodes are `None`. The
    /// system must have no negative cycle.
    fn distances_from(&self, nodes: usize, source: usize) -> Vec<Option<Len<T>>> {
        let mut dist: Vec<Option<Len<T>>> = vec![None; nodes];
        dist[source] = Some((T::zero(), T::zero()));
        for _ in 0..nodes {
            let mut changed = false;
            for (u, v, c) in &self.edges {
                let Some(du) = &dist[*u] else { continue };
                let d = add(du, c);
                if dist[*v].as_ref().is_none_or(|dv| &d < dv) {
                    dist[*v] = Some(d);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        dist
    }

    /// Shortest distances from a virtual source joined to every node, or
    /// `None` on a negative cycle.
    fn potentials(&self, nodes: usize) -> Option<Vec<Len<T>>> {
        let mut pi = vec![(T::zero(), T::zero()); nodes];
        for _ in 0..=nodes {
            let mut changed = false;
            for (u, v, c) in &self.edges {
                let d = add(&pi[*u], c);
                if d < pi[*v] {
                    pi[*v] = d;
                    changed = true;
                }
            }
            if !changed {
                return Some(pi);
            }
        }
        None
    }
}

/// Window conditions on positions `0..n` with `dmin = 0` and the given
/// `dmax`: red sums below 0, green sums strictly inside, blue sums above
/// `dmax`, weights nondecreasing and strictly increasing across non-mirror
/// neighbours. Weights in `fixed` are constants; their constraints become
/// bounds on the partner or direct checks.
fn build<T: Coord>(
    g: &Graph,
    sigma: &VertexOrdering,
    c: &ProperColoring,
    mir: &PositionMirrors,
    dmax: &T,
    fixed: &[Option<T>],
) -> Option<System<T>> {
    let n = sigma.len();
    let mut sys = System { edges: Vec::new() };
    // Each pair contributes sum constraints `(at_least, at_most)`.
    for i in 0..n {
        for j in i + 1..n {
            let color = c.color(i + 1, j + 1);
            if (color == PairColor::Green) != g.has_edge(sigma.at(i), sigma.at(j)) {
                return None;
            }
            let (lo, hi) = match color {
                PairColor::Red => (None, Some(bound(T::zero(), -1))),
                PairColor::Green => (Some(bound(T::zero(), 1)), Some(bound(dmax.clone(), -1))),
                PairColor::Blue => (Some(bound(dmax.clone(), 1)), None),
            };
            match (&fixed[i], &fixed[j]) {
                (None, None) => {
                    if let Some(lo) = lo {
                        sys.sum_at_least(i, j, lo);
                    }
                    if let Some(hi) = hi {
                        sys.sum_at_most(i, j, hi);
                    }
                }
                (Some(v), None) | (None, Some(v)) => {
                    let free = if fixed[i].is_none() { i } else { j };
                    if let Some(lo) = lo {
                        sys.single_at_least(free, (lo.0 - v.clone(), lo.1));
                    }
                    if let Some(hi) = hi {
                        sys.single_at_most(free, (hi.0 - v.clone(), hi.1));
                    }
                }
                (Some(x), Some(y)) => {
                    let s = (x.clone() + y.clone(), T::zero());
                    if lo.is_some_and(|lo| s < lo) || hi.is_some_and(|hi| s > hi) {
                        return None;
                    }
                }
            }
        }
    }
    for i in 0..n.saturating_sub(1) {
        let strict = !mir.adjacent(i + 1);
        match (&fixed[i], &fixed[i + 1]) {
            (None, None) => sys.at_most(i, i + 1, strict),
            (Some(v), None) => sys.single_at_least(i + 1, bound(v.clone(), if strict { 1 } else { 0 })),
            (None, Some(v)) => sys.single_at_most(i, bound(v.clone(), if strict { -1 } else { 0 })),
            (Some(x), Some(y)) => {
                if x > y || (strict && x == y) {
                    return None;
                }
            }
        }
    }
    for (i, v) in fixed.iter().enumerate() {
        if let Some(v) = v {
            sys.single_at_most(i, (v.clone(), T::zero()));
            sys.single_at_least(i, (v.clone(), T::zero()));
        }
    }
    Some(sys)
}

/// Concrete weights from symbolic ones `a + b * eps`, with `eps` small
/// enough that every pair sum and neighbour difference keeps its side of
/// 0 and `dmax`.
fn concrete(sym: &[Len<Rational>], dmax: &Rational) -> Vec<Rational> {
    let mut eps = Rational::one();
    let mut tighten = |a: &Rational, b: &Rational| {
        if !a.is_zero() && !b.is_zero() {
            let limit = a.abs() / b.abs() / int(2);
            if limit < eps {
                eps = limit;
            }
        }
    };
    for i in 0..sym.len() {
        for j in i + 1..sym.len() {
            let s = add(&sym[i], &sym[j]);
            tighten(&s.0, &s.1);
            tighten(&(&s.0 - dmax), &s.1);
        }
        if i + 1 < sym.len() {
            tighten(&(&sym[i + 1].0 - &sym[i].0), &(&sym[i + 1].1 - &sym[i].1));
        }
    }
    sym.iter().map(|(a, b)| a + &eps * b).collect()
}

fn solve<T: Coord>(
    g: &Graph,
    sigma: &VertexOrdering,
    c: &ProperColoring,
    mir: &PositionMirrors,
    dmax: &T,
    fixed: &[Option<T>],
) -> Option<Vec<Len<Rational>>> {
    let n = sigma.len();
    let sys = build(g, sigma, c, mir, dmax, fixed)?;
    let pi = sys.potentials(2 * n)?;
    let two = int(2);
    Some(
        (0..n)
            .map(|i| {
                let (p, m) = (&pi[System::<T>::plus(i)], &pi[System::<T>::minus(i)]);
                (
                    (p.0.clone() - m.0.clone()).rational() / &two,
                    (p.1.clone() - m.1.clone()).rational() / &two,
                )
            })
            .collect(),
    )
}

/// Weights along `sigma` realizing `g` with colors `c` in the window
/// `[0, 1]`, or `None` when the constraints admit no solution.
pub fn solve_window(
    g: &Graph,
    sigma: &VertexOrdering,
    c: &ProperColoring,
    mir: &PositionMirrors,
) -> Option<StarPCR> {
    let fixed = vec![None; sigma.len()];
    let sym = solve::<i64>(g, sigma, c, mir, &1, &fixed)?;
    let pcr = StarPCR {
        weights: concrete(&sym, &int(1)),
        dmin: int(0),
        dmax: int(1),
    };
    verify_witness(g, &pcr, sigma).then_some(pcr)
}

/// Weights for all positions in the window `[0, dmax]` extending the fixed
/// ones (0-based), or `None` when no extension exists.
pub fn complete_window(
    g: &Graph,
    sigma: &VertexOrdering,
    c: &ProperColoring,
    mir: &PositionMirrors,
    dmax: &Rational,
    fixed: &[Option<Rational>],
) -> Option<Vec<Rational>> {
    let sym = match scaled(dmax, fixed) {
        Some((scale, dmax_int, fixed_int)) => {
            let sym = solve::<i64>(g, sigma, c, mir, &dmax_int, &fixed_int)?;
            let scale = int(scale);
            sym.into_iter().map(|(a, b)| (a / &scale, b / &scale)).collect()
        }
        None => solve::<Rational>(g, sigma, c, mir, dmax, fixed)?,
    };
    let weights = concrete(&sym, dmax);
    let pcr = StarPCR {
        weights,
        dmin: int(0),
        dmax: dmax.clone(),
    };
    debug_assert!(fixed.iter().zip(&pcr.weights).all(|(f, w)| f.as_ref().is_none_or(|f| f == w)));
    verify_witness(g, &pcr, sigma).then_some(pcr.weights)
}

/// Bounds `(low, high)` on `w_x` (0-based) over all solutions extending
/// the fixed weights, as `a + b * eps`; `None` marks an unbounded side.
type Range = (Option<Len<Rational>>, Option<Len<Rational>>);

fn range<T: Coord>(
    g: &Graph,
    sigma: &VertexOrdering,
    c: &ProperColoring,
    mir: &PositionMirrors,
    dmax: &T,
    fixed: &[Option<T>],
    x: usize,
) -> Option<Range> {
    let sys = build(g, sigma, c, mir, dmax, fixed)?;
    let nodes = 2 * sigma.len();
    let (plus, minus) = (System::<T>::plus(x), System::<T>::minus(x));
    let two = int(2);
    let half = |l: &Len<T>| (l.0.rational() / &two, l.1.rational() / &two);
    // 2 w_x = pi(+x) - pi(-x) is at most dist(-x, +x) and at least
    // -dist(+x, -x).
    let high = sys.distances_from(nodes, minus)[plus].as_ref().map(half);
    let low = sys.distances_from(nodes, plus)[minus].as_ref().map(|l| {
        let (a, b) = half(l);
        (-a, -b)
    });
    Some((low, high))
}

/// A value for position `x` (0-based) inside its feasible range given the
/// fixed weights: the midpoint when bounded on both sides, else one past the
/// finite bound. `None` when the range is empty or too thin for this rule.
pub fn range_point(
    g: &Graph,
    sigma: &VertexOrdering,
    c: &ProperColoring,
    mir: &PositionMirrors,
    dmax: &Rational,
    fixed: &[Option<Rational>],
    x: usize,
) -> Option<Rational> {
    let (low, high) = match scaled(dmax, fixed) {
        Some((scale, dmax_int, fixed_int)) => {
            let (low, high) = range::<i64>(g, sigma, c, mir, &dmax_int, &fixed_int, x)?;
            let scale = int(scale);
            let down = |l: Len<Rational>| (l.0 / &scale, l.1 / &scale);
            (low.map(down), high.map(down))
        }
        None => range::<Rational>(g, sigma, c, mir, dmax, fixed, x)?,
    };
    match (low, high) {
        (Some(lo), Some(hi)) => (lo.0 < hi.0).then(|| (lo.0 + hi.0) / int(2)),
        (Some(lo), None) => Some(lo.0 + int(1)),
        (None, Some(hi)) => Some(hi.0 - int(1)),
        (None, None) => Some(Rational::zero()),
    }
}

/// Whether position `x` (0-based) of a full assignment meets the window
/// conditions against every other position and its neighbours.
pub fn fits_at(
    g: &Graph,
    sigma: &VertexOrdering,
    c: &ProperColoring,
    mir: &PositionMirrors,
    dmax: &Rational,
    weights: &[Rational],
    x: usize,
) -> bool {
    let zero = Rational::zero();
    let pairs_ok = (0..weights.len()).filter(|&j| j != x).all(|j| {
        let s = &weights[x] + &weights[j];
        match c.color(x + 1, j + 1) {
            PairColor::Red => s < zero,
            PairColor::Green => g.has_edge(sigma.at(x), sigma.at(j)) && s > zero && &s < dmax,
            PairColor::Blue => &s > dmax,
        }
    });
    let step_ok = |i: usize| {
        let (lo, hi) = (&weights[i], &weights[i + 1]);
        lo < hi || (lo == hi && mir.adjacent(i + 1))
    };
    pairs_ok && (x == 0 || step_ok(x - 1)) && (x + 1 >= weights.len() || step_ok(x))
}

/// The common denominator of `dmax` and the fixed weights, with all of them
/// scaled to integers, when they stay far enough below the `i64` range for
/// path sums over the whole graph.
fn scaled(dmax: &Rational, fixed: &[Option<Rational>]) -> Option<(i64, i64, Vec<Option<i64>>)> {
    let limit = BigInt::from(1i64 << 40);
    let mut den = dmax.denom().clone();
    for v in fixed.iter().flatten() {
        den = den.lcm(v.denom());
        if den > limit {
            return None;
        }
    }
    let to_int = |v: &Rational| {
        let x = (v * Rational::from_integer(den.clone())).to_integer();
        (x.abs() < limit).then(|| x.to_i64()).flatten()
    };
    let fixed_int = fixed
        .iter()
        .map(|v| v.as_ref().map(to_int).map_or(Some(None), |x| x.map(Some)))
        .collect::<Option<Vec<_>>>()?;
    Some((den.to_i64()?, to_int(dmax)?, fixed_int))
}
