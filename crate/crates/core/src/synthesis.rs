//! Exact star weights for gap-free orderings.
//!
//! Weights are built outward from the middle block of the ordering, where
//! every pair is an edge. The low wing is filled right to left with the high
//! frontier held at `i_blue`, then the high wing left to right. Each step
//! first tries the closed-form case value and checks it against every pair
//! already placed; when the value falls outside the admissible interval, a
//! point inside the interval is used instead and the step is marked as a
//! fallback. If the greedy pass gets stuck or its weights do not realize
//! the graph, it is repeated with a guard: a case value is kept only if the
//! window conditions on all positions stay solvable with it, and otherwise
//! the step takes its value from an exact solution. Should the middle seed
//! itself admit no extension, the whole system is solved exactly instead.
//! The trace records both.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::verify_witness;
use crate::exact::{complete_window, fits_at, range_point, solve_window};
use crate::gap::{proper_coloring, PairColor, ProperColoring};
use crate::graph::{induced_subgraph, mirror_pairs, Graph, MirrorPairSet};
use crate::perm::{Permutation, VertexOrdering};
use crate::rational::{int, Rational};

/// Star weights by position along an ordering, with the distance window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarPCR {
    pub weights: Vec<Rational>,
    pub dmin: Rational,
    pub dmax: Rational,
}

/// Mirror relation between consecutive positions of an ordering.
#[derive(Clone, Debug)]
pub struct PositionMirrors {
    /// `next[i]` is true when positions `i` and `i + 1` (1-based) hold a
    /// mirror pair. Index 0 is unused.
    next: Vec<bool>,
}

impl PositionMirrors {
    pub fn new(m: &MirrorPairSet, sigma: &VertexOrdering) -> Self {
        let n = sigma.len();
        let mut next = vec![false; n + 1];
        for (i, slot) in next.iter_mut().enumerate().take(n).skip(1) {
            *slot = m.contains(sigma.at(i - 1), sigma.at(i));
        }
        PositionMirrors { next }
    }

    /// Positions `i` and `i + 1` hold a mirror pair.
    pub fn adjacent(&self, i: usize) -> bool {
        self.next.get(i).copied().unwrap_or(false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Low,
    High,
}

/// Which closed-form rule produced the candidate weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepCase {
    /// Copy the neighbor weight of a mirror twin.
    Mirror,
    /// The boundary index is unchanged from the previous position.
    Equal,
    /// The boundary index moved by at least one position.
    Shift,
    /// The boundary index lies beyond the opposite frontier.
    Beyond,
    /// No rule applies.
    Unmatched,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub phase: Phase,
    /// 1-based position that received a weight.
    pub position: usize,
    pub case: StepCase,
    /// The case value was rejected and an interval point used instead.
    pub fallback: bool,
    /// The case value fit the placed weights but left the remaining
    /// positions without a solution.
    pub lookahead: bool,
    /// High phase only: the literal printed variant of the case formula
    /// gives a different value (or is undefined).
    pub printed_differs: bool,
}

/// Partial assignment over positions `p + 1 ..= q - 1`.
#[derive(Clone, Debug)]
pub struct SynthesisWindow {
    pub p: usize,
    pub q: usize,
    /// 1-based; index 0 unused.
    pub weights: Vec<Option<Rational>>,
    pub dmin: Rational,
    pub dmax: Rational,
    /// When set, every case value must leave the remaining positions
    /// solvable, and a rejected step takes its value from an exact solution.
    guard: Option<Guard>,
}

#[derive(Clone, Debug)]
struct Guard {
    graph: Graph,
    sigma: VertexOrdering,
    /// A full solution that keeps every placed weight.
    plan: Vec<Rational>,
}

#[derive(Clone, Debug)]
struct Bound {
    value: Rational,
    inclusive: bool,
}

#[derive(Clone, Debug, Default)]
struct Interval {
    lo: Option<Bound>,
    hi: Option<Bound>,
}

impl Interval {
    fn raise(&mut self, value: Rational, inclusive: bool) {
        let tighter = match &self.lo {
            None => true,
            Some(b) => value > b.value || (value == b.value && !inclusive),
        };
        if tighter {
            self.lo = Some(Bound { value, inclusive });
        }
    }

    fn lower(&mut self, value: Rational, inclusive: bool) {
        let tighter = match &self.hi {
            None => true,
            Some(b) => value < b.value || (value == b.value && !inclusive),
        };
        if tighter {
            self.hi = Some(Bound { value, inclusive });
        }
    }

    fn contains(&self, x: &Rational) -> bool {
        let above = self
            .lo
            .as_ref()
            .is_none_or(|b| x > &b.value || (b.inclusive && x == &b.value));
        let below = self
            .hi
            .as_ref()
            .is_none_or(|b| x < &b.value || (b.inclusive && x == &b.value));
        above && below
    }

    fn pick(&self) -> Option<Rational> {
        match (&self.lo, &self.hi) {
            (Some(l), Some(h)) => {
                if l.value < h.value {
                    Some((&l.value + &h.value) / int(2))
                } else if l.value == h.value && l.inclusive && h.inclusive {
                    Some(l.value.clone())
                } else {
                    None
                }
            }
            (Some(l), None) => Some(&l.value + int(1)),
            (None, Some(h)) => Some(&h.value - int(1)),
            (None, None) => Some(int(0)),
        }
    }
}

impl SynthesisWindow {
    /// Seeds the middle block `i_red + 1 ..= i_blue - 1`, where all pairs are
    /// edges: `dmin = 0`, the first weight is 1 and each next weight stays
    /// equal across a mirror pair or grows by one.
    pub fn seed_middle(c: &ProperColoring, mir: &PositionMirrors) -> Self {
        let n = c.n;
        assert!(
            c.i_red + 1 < c.i_blue,
            "the middle block of a proper coloring is nonempty"
        );
        let mut weights = vec![None; n + 1];
        let first = c.i_red + 1;
        weights[first] = Some(int(1));
        for i in first + 1..c.i_blue {
            let prev = weights[i - 1].clone().unwrap();
            weights[i] = Some(if mir.adjacent(i - 1) {
                prev
            } else {
                prev + int(1)
            });
        }
        let top = weights[c.i_blue - 1].clone().unwrap();
        SynthesisWindow {
            p: c.i_red,
            q: c.i_blue,
            weights,
            dmin: int(0),
            dmax: top * int(2) + int(1),
            guard: None,
        }
    }

    fn w(&self, i: usize) -> Option<&Rational> {
        self.weights.get(i).and_then(Option::as_ref)
    }

    /// Admissible weights for position `x` given every placed partner.
    fn interval(&self, x: usize, c: &ProperColoring, mir: &PositionMirrors) -> Interval {
        let mut iv = Interval::default();
        for j in 1..self.weights.len() {
            if j == x {
                continue;
            }
            let Some(wj) = self.w(j) else { continue };
            match c.color(x, j) {
                PairColor::Red => iv.lower(&self.dmin - wj, false),
                PairColor::Green => {
                    iv.raise(&self.dmin - wj, false);
                    iv.lower(&self.dmax - wj, false);
                }
                PairColor::Blue => iv.raise(&self.dmax - wj, false),
            }
        }
        if let Some(next) = self.w(x + 1) {
            iv.lower(next.clone(), mir.adjacent(x));
        }
        if x > 0 {
            if let Some(prev) = self.w(x - 1) {
                iv.raise(prev.clone(), mir.adjacent(x - 1));
            }
        }
        iv
    }

    fn place(
        &mut self,
        x: usize,
        candidate: Option<Rational>,
        c: &ProperColoring,
        mir: &PositionMirrors,
    ) -> Result<(bool, bool)> {
        let iv = self.interval(x, c, mir);
        let candidate = candidate.filter(|v| iv.contains(v));
        let Some(mut gd) = self.guard.take() else {
            let fallback = candidate.is_none();
            let value = candidate.or_else(|| iv.pick());
            self.weights[x] = Some(value.ok_or(Error::EmptyInterval { position: x })?);
            return Ok((fallback, false));
        };
        let mut lookahead = false;
        if let Some(v) = candidate {
            let old = std::mem::replace(&mut gd.plan[x - 1], v.clone());
            let kept = fits_at(&gd.graph, &gd.sigma, c, mir, &self.dmax, &gd.plan, x - 1) || {
                self.weights[x] = Some(v.clone());
                let solved = complete_window(&gd.graph, &gd.sigma, c, mir, &self.dmax, &self.weights[1..]);
                self.weights[x] = None;
                solved.map(|w| gd.plan = w).is_some()
            };
            if kept {
                self.weights[x] = Some(v);
                self.guard = Some(gd);
                return Ok((false, false));
            }
            gd.plan[x - 1] = old;
            lookahead = true;
        }
        // Prefer a point well inside the feasible range over the plan's
        // value, which tends to sit on a bound.
        let placed = &self.weights[1..];
        let inner = range_point(&gd.graph, &gd.sigma, c, mir, &self.dmax, placed, x - 1).and_then(|v| {
            let mut fixed = placed.to_vec();
            fixed[x - 1] = Some(v);
            complete_window(&gd.graph, &gd.sigma, c, mir, &self.dmax, &fixed)
        });
        if let Some(plan) = inner {
            gd.plan = plan;
        }
        self.weights[x] = Some(gd.plan[x - 1].clone());
        self.guard = Some(gd);
        Ok((true, lookahead))
    }


    /// Assigns position `p` and moves the low frontier to `p - 1`.
    pub fn extend_low(&mut self, c: &ProperColoring, mir: &PositionMirrors) -> Result<Step> {
        let p = self.p;
        assert!(p >= 1, "low frontier already at the start");
        let q = self.q;
        let two = int(2);
        let wp1 = self.w(p + 1).cloned().expect("window holds p + 1");
        // A mirror pair straddling i_red is red next to a green pair, so
        // equal weights only work strictly inside the low wing.
        let (case, candidate) = if mir.adjacent(p) && p < c.i_red {
            (StepCase::Mirror, Some(wp1.clone()))
        } else {
            let (ap, ap1) = (c.a(p), c.a(p + 1));
            if q <= ap {
                let wq1 = self.w(q - 1).expect("window holds q - 1");
                let m = std::cmp::min(wp1.clone(), &self.dmin - wq1);
                (StepCase::Beyond, Some(m - int(1)))
            } else if ap1 == ap {
                let v = self.w(ap).map(|wa| {
                    let alpha = &wp1 + wa - &self.dmin;
                    &wp1 - alpha / &two
                });
                (StepCase::Equal, v)
            } else if ap1 < ap {
                let v = match (self.w(ap - 1), self.w(ap)) {
                    (Some(wa1), Some(wa)) => {
                        let beta = &wp1 + wa1 - &self.dmin;
                        let delta = wa - wa1;
                        Some(&wp1 - beta - delta / &two)
                    }
                    _ => None,
                };
                (StepCase::Shift, v)
            } else {
                (StepCase::Unmatched, None)
            }
        };
        let (fallback, lookahead) = self.place(p, candidate, c, mir)?;
        self.p = p - 1;
        Ok(Step {
            phase: Phase::Low,
            position: p,
            case,
            fallback,
            lookahead,
            printed_differs: false,
        })
    }

    /// Assigns position `q` and moves the high frontier to `q + 1`.
    ///
    /// The case rules use `b(q)` where the printed ones use `b(p)`; the
    /// admissible interval accounts for every placed weight including the
    /// low wing.
    pub fn extend_high(&mut self, c: &ProperColoring, mir: &PositionMirrors) -> Result<Step> {
        let q = self.q;
        assert!(q <= c.n, "high frontier already past the end");
        let pp = self.p;
        let two = int(2);
        let wq1 = self.w(q - 1).cloned().expect("window holds q - 1");
        let mut printed = None;
        let (case, candidate) = if mir.adjacent(q - 1) && q > c.i_blue {
            (StepCase::Mirror, Some(wq1.clone()))
        } else {
            let (bq, bq1) = (c.b(q), c.b(q - 1));
            if bq <= pp {
                let wp1 = self.w(pp + 1).expect("middle block is placed");
                let m = std::cmp::max(wq1.clone(), &self.dmax - wp1);
                printed = Some(std::cmp::max(wq1.clone(), &self.dmax - &wq1) + int(1));
                (StepCase::Beyond, Some(m + int(1)))
            } else if bq == bq1 {
                let alpha = |b: usize| self.w(b).map(|wb| &self.dmax - (wb + &wq1));
                if pp >= 1 {
                    printed = alpha(c.b(pp)).map(|a| &wq1 + a / &two);
                }
                (StepCase::Equal, alpha(bq).map(|a| &wq1 + a / &two))
            } else if bq < bq1 {
                let shifted = |b: usize| match (self.w(b), self.w(b + 1)) {
                    (Some(wb), Some(wb1)) => {
                        let beta = &self.dmax - (wb1 + &wq1);
                        let delta = wb1 - wb;
                        Some(&wq1 + beta + delta / &two)
                    }
                    _ => None,
                };
                if pp >= 1 {
                    printed = shifted(c.b(pp));
                }
                (StepCase::Shift, shifted(bq))
            } else {
                (StepCase::Unmatched, None)
            }
        };
        let printed_differs = case != StepCase::Mirror && printed != candidate;
        let (fallback, lookahead) = self.place(q, candidate, c, mir)?;
        self.q = q + 1;
        Ok(Step {
            phase: Phase::High,
            position: q,
            case,
            fallback,
            lookahead,
            printed_differs,
        })
    }

    /// Checks the window conditions over the placed block: red sums below
    /// `dmin`, green sums strictly inside the window, blue sums above `dmax`,
    /// nondecreasing weights that strictly increase across non-mirror
    /// neighbors.
    pub fn check(&self, c: &ProperColoring, mir: &PositionMirrors) -> std::result::Result<(), String> {
        let placed: Vec<usize> = (1..self.weights.len()).filter(|&i| self.w(i).is_some()).collect();
        for w in placed.windows(2) {
            if w[1] != w[0] + 1 {
                return Err(format!("placed positions are not contiguous at {}", w[0]));
            }
            let (a, b) = (self.w(w[0]).unwrap(), self.w(w[1]).unwrap());
            if a > b || (a == b && !mir.adjacent(w[0])) {
                return Err(format!("weights at {} and {} violate monotonicity", w[0], w[1]));
            }
        }
        for (x, &j) in placed.iter().enumerate() {
            for &k in &placed[x + 1..] {
                let s = self.w(j).unwrap() + self.w(k).unwrap();
                let ok = match c.color(j, k) {
                    PairColor::Red => s < self.dmin,
                    PairColor::Green => s > self.dmin && s < self.dmax,
                    PairColor::Blue => s > self.dmax,
                };
                if !ok {
                    return Err(format!("pair ({j},{k}) with sum {s} breaks its color"));
                }
            }
        }
        Ok(())
    }

    fn into_pcr(self) -> StarPCR {
        StarPCR {
            weights: self.weights.into_iter().skip(1).map(Option::unwrap).collect(),
            dmin: self.dmin,
            dmax: self.dmax,
        }
    }
}

/// Record of one synthesis run.
#[derive(Clone, Debug, Serialize)]
pub struct SynthesisTrace {
    pub coloring: ProperColoring,
    pub steps: Vec<Step>,
    /// Window-condition failures found by the optional audit.
    pub violations: Vec<String>,
    /// Why the plain greedy pass was repeated under the feasibility guard.
    /// The steps are those of the guarded pass.
    pub guarded: Option<String>,
    /// Why the greedy passes were abandoned for the exact solve, if they were.
    pub exact_fallback: Option<String>,
}

/// Weights for a gap-free ordering of a graph without isolated vertices,
/// checked by forward evaluation before returning.
pub fn synthesize_weights(g: &Graph, sigma: &VertexOrdering) -> Result<StarPCR> {
    synthesize_traced(g, sigma, false).map(|(pcr, _)| pcr)
}

/// Like [`synthesize_weights`], also returning the per-step record. With
/// `audit`, the window conditions are rechecked after every step.
pub fn synthesize_traced(
    g: &Graph,
    sigma: &VertexOrdering,
    audit: bool,
) -> Result<(StarPCR, SynthesisTrace)> {
    let c = proper_coloring(g, sigma)?;
    let mir = PositionMirrors::new(&mirror_pairs(g), sigma);
    let mut trace = SynthesisTrace {
        coloring: c.clone(),
        steps: Vec::new(),
        violations: Vec::new(),
        guarded: None,
        exact_fallback: None,
    };
    let why = |e: Error| match e {
        Error::EmptyInterval { position } => Ok(format!("no admissible weight for position {position}")),
        Error::SynthesisFailure(msg) => Ok(msg),
        e => Err(e),
    };
    let reason = match greedy(g, sigma, &c, &mir, audit, false, &mut trace) {
        Ok(pcr) => return Ok((pcr, trace)),
        Err(e) => why(e)?,
    };
    trace.guarded = Some(reason);
    trace.steps.clear();
    trace.violations.clear();
    let reason = match greedy(g, sigma, &c, &mir, audit, true, &mut trace) {
        Ok(pcr) => return Ok((pcr, trace)),
        Err(e) => why(e)?,
    };
    match solve_window(g, sigma, &c, &mir) {
        Some(pcr) => {
            trace.exact_fallback = Some(reason);
            Ok((pcr, trace))
        }
        None => Err(Error::SynthesisFailure(format!(
            "{reason}; the window conditions for ordering {sigma} have no solution"
        ))),
    }
}

fn greedy(
    g: &Graph,
    sigma: &VertexOrdering,
    c: &ProperColoring,
    mir: &PositionMirrors,
    audit: bool,
    guard: bool,
    trace: &mut SynthesisTrace,
) -> Result<StarPCR> {
    let mut win = SynthesisWindow::seed_middle(c, mir);
    if guard {
        let plan = complete_window(g, sigma, c, mir, &win.dmax, &win.weights[1..])
            .ok_or_else(|| Error::SynthesisFailure("the middle seed admits no extension".into()))?;
        win.guard = Some(Guard {
            graph: g.clone(),
            sigma: sigma.clone(),
            plan,
        });
    }
    let audit_step = |win: &SynthesisWindow, trace: &mut SynthesisTrace, at: &str| {
        if audit {
            if let Err(e) = win.check(c, mir) {
                trace.violations.push(format!("{at}: {e}"));
            }
        }
    };
    audit_step(&win, trace, "seed");
    while win.p >= 1 {
        let step = win.extend_low(c, mir)?;
        audit_step(&win, trace, &format!("low {}", step.position));
        trace.steps.push(step);
    }
    while win.q <= c.n {
        let step = win.extend_high(c, mir)?;
        audit_step(&win, trace, &format!("high {}", step.position));
        trace.steps.push(step);
    }
    let pcr = win.into_pcr();
    if !verify_witness(g, &pcr, sigma) {
        return Err(Error::SynthesisFailure(format!(
            "greedy weights for ordering {sigma} do not realize the graph"
        )));
    }
    Ok(pcr)
}

/// Weight shared by prepended isolated vertices: low enough that every pair
/// involving one sums below `dmin`, and no larger than the first weight.
pub fn isolated_weight(pcr: &StarPCR) -> Rational {
    let first = pcr.weights.first().expect("nonempty witness");
    let last = pcr.weights.last().expect("nonempty witness");
    let m = std::cmp::min(first.clone(), &pcr.dmin - last);
    std::cmp::min(m, &pcr.dmin / int(2)) - int(1)
}

/// Weights for a gap-free ordering whose isolated vertices, if any, all come
/// first. An edgeless graph gets weight 1 everywhere and the window `[3, 4]`.
pub fn synthesize_with_isolated(g: &Graph, sigma: &VertexOrdering) -> Result<StarPCR> {
    let n = g.n();
    let iso = sigma.iter().take_while(|&v| g.degree(v) == 0).count();
    if let Some(v) = sigma.iter().skip(iso).find(|&v| g.degree(v) == 0) {
        return Err(Error::Contract(format!(
            "isolated vertex {v} is not in the leading block of the ordering"
        )));
    }
    if iso == n {
        return Ok(StarPCR {
            weights: vec![int(1); n],
            dmin: int(3),
            dmax: int(4),
        });
    }
    let rest: Vec<usize> = sigma.iter().skip(iso).collect();
    let sub = induced_subgraph(g, &rest);
    let mut fwd = vec![usize::MAX; n];
    for (i, &v) in sub.back.iter().enumerate() {
        fwd[v] = i;
    }
    let local = Permutation::new(rest.iter().map(|&v| fwd[v]).collect())?;
    let core = synthesize_weights(&sub.graph, &local)?;
    let w_iso = isolated_weight(&core);
    let mut weights = vec![w_iso; iso];
    weights.extend(core.weights);
    Ok(StarPCR {
        weights,
        dmin: core.dmin,
        dmax: core.dmax,
    })
}

/// Integer witness with positive weights and `0 < dmin < dmax` realizing
/// the same graph.
///
/// Clears denominators, shifts every weight by `s` and both bounds by `2s`,
/// and widens a degenerate window by one when no pair sum sits directly
/// above it (doubling everything first when one does).
pub fn normalize(pcr: &StarPCR) -> StarPCR {
    let mut lcm = num_bigint::BigInt::one();
    for r in pcr.weights.iter().chain([&pcr.dmin, &pcr.dmax]) {
        lcm = lcm.lcm(r.denom());
    }
    let scale = Rational::from_integer(lcm);
    let mut weights: Vec<Rational> = pcr.weights.iter().map(|w| w * &scale).collect();
    let mut dmin = &pcr.dmin * &scale;
    let mut dmax = &pcr.dmax * &scale;

    let one = Rational::one();
    let mut shift = Rational::zero();
    if let Some(lowest) = weights.iter().min() {
        shift = std::cmp::max(shift, &one - lowest);
    }
    let need = (&one - &dmin).to_integer().div_ceil(&2.into());
    shift = std::cmp::max(shift, Rational::from_integer(need));
    if shift.is_positive() {
        for w in &mut weights {
            *w += &shift;
        }
        dmin += &shift * int(2);
        dmax += &shift * int(2);
    }

    if dmin == dmax {
        let n = weights.len();
        let mut above: Option<Rational> = None;
        for i in 0..n {
            for j in i + 1..n {
                let s = &weights[i] + &weights[j];
                if s > dmax && above.as_ref().is_none_or(|a| &s < a) {
                    above = Some(s);
                }
            }
        }
        let tight = above.is_some_and(|a| a < &dmax + int(2));
        if tight {
            for w in &mut weights {
                *w *= int(2);
            }
            dmin *= int(2);
            dmax *= int(2);
        }
        dmax += int(1);
    }
    StarPCR {
        weights,
        dmin,
        dmax,
    }
}
