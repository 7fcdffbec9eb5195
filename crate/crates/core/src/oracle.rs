//! Exhaustive search and seeded instance generators.

use rand::seq::SliceRandom;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gap::find_gap;
use crate::graph::Graph;
use crate::orderings::family::{is_consecutive, is_contiguous, SetFamily};
use crate::perm::{ElementOrdering, Permutation, VertexOrdering};
use crate::rational::int;
use crate::synthesis::StarPCR;

pub const DEFAULT_GRAPH_LIMIT: usize = 9;
pub const FAMILY_LIMIT: usize = 8;

/// Deterministic generator for a seed.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rearranges `v` into the next permutation in lexicographic order; false
/// after the last one.
pub fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn first_permutation(n: usize, mut accept: impl FnMut(&Permutation) -> bool) -> Option<Permutation> {
    let mut order: Vec<usize> = (0..n).collect();
    loop {
        let p = Permutation::new(order.clone()).expect("permutation");
        if accept(&p) {
            return Some(p);
        }
        if !next_permutation(&mut order) {
            return None;
        }
    }
}

/// The lexicographically first gap-free ordering, by exhaustion.
pub fn brute_force_gap_free(g: &Graph, limit: usize) -> Result<Option<VertexOrdering>> {
    if g.n() > limit {
        return Err(Error::LimitExceeded { n: g.n(), limit });
    }
    Ok(first_permutation(g.n(), |p| find_gap(g, p).is_none()))
}

pub fn brute_force_consecutive(f: &SetFamily) -> Result<Option<ElementOrdering>> {
    if f.ground() > FAMILY_LIMIT {
        return Err(Error::LimitExceeded {
            n: f.ground(),
            limit: FAMILY_LIMIT,
        });
    }
    Ok(first_permutation(f.ground(), |p| is_consecutive(f, p)))
}

pub fn brute_force_contiguous(f: &SetFamily) -> Result<Option<ElementOrdering>> {
    if f.ground() > FAMILY_LIMIT {
        return Err(Error::LimitExceeded {
            n: f.ground(),
            limit: FAMILY_LIMIT,
        });
    }
    Ok(first_permutation(f.ground(), |p| is_contiguous(f, p)))
}

/// Every permutation of `0..n` accepted by `accept`, in lexicographic order.
pub fn all_permutations(n: usize, mut accept: impl FnMut(&Permutation) -> bool) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    loop {
        let p = Permutation::new(order.clone()).expect("permutation");
        if accept(&p) {
            out.push(p);
        }
        if !next_permutation(&mut order) {
            return out;
        }
    }
}

/// Each pair becomes an edge independently with probability `p`.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let p = p.clamp(0.0, 1.0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("generated edges are simple")
}

/// A family of `sets` random nonempty subsets of `0..ground`.
pub fn random_family<R: Rng + ?Sized>(ground: usize, sets: usize, rng: &mut R) -> SetFamily {
    let mut out = Vec::with_capacity(sets);
    if ground > 0 {
        for _ in 0..sets {
            let p = rng.random_range(0.15..0.85);
            let mut s: Vec<usize> = (0..ground).filter(|_| rng.random_bool(p)).collect();
            if s.is_empty() {
                s.push(rng.random_range(0..ground));
            }
            out.push(s);
        }
    }
    SetFamily::new(ground, out).expect("generated sets are valid")
}

/// A graph realized by random sorted integer weights and a window spanned by
/// two random pair sums, on randomly shuffled vertex ids.
pub fn random_star_pcg<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (Graph, StarPCR, VertexOrdering) {
    assert!(n >= 1, "need at least one vertex");
    let top = 3 * n as i64;
    let mut w: Vec<i64> = (0..n).map(|_| rng.random_range(1..=top)).collect();
    w.sort_unstable();
    let (dmin, dmax) = if n == 1 {
        (2 * w[0], 2 * w[0])
    } else {
        let pick = |rng: &mut R| {
            let i = rng.random_range(0..n);
            let mut j = rng.random_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            w[i] + w[j]
        };
        let (a, b) = (pick(rng), pick(rng));
        (a.min(b), a.max(b))
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let sigma = Permutation::new(order).expect("shuffle is a permutation");
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let s = w[i] + w[j];
            if dmin <= s && s <= dmax {
                edges.push((sigma.at(i), sigma.at(j)));
            }
        }
    }
    let g = Graph::from_edges(n, &edges).expect("generated edges are simple");
    let pcr = StarPCR {
        weights: w.into_iter().map(int).collect(),
        dmin: int(dmin),
        dmax: int(dmax),
    };
    (g, pcr, sigma)
}
