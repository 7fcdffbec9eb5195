//! Gaps of ordered graphs and the pair coloring of gap-free orderings.
//!
//! Positions in this module are 1-based, matching how the coloring indices
//! `a(i)`, `b(i)`, `i_red` and `i_blue` are usually written.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::VertexOrdering;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GapTag {
    /// Two neighbors of the lower vertex straddle the upper one.
    G1a,
    /// Two neighbors of the upper vertex straddle the lower one.
    G1b,
    /// The lower vertex has a neighbor above the pair and the upper vertex
    /// a neighbor below it.
    G2,
    /// The lower vertex has a neighbor below the upper one, and the upper
    /// vertex a neighbor above the lower one.
    G3,
}

impl fmt::Display for GapTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GapTag::G1a => "g1a",
            GapTag::G1b => "g1b",
            GapTag::G2 => "g2",
            GapTag::G3 => "g3",
        })
    }
}

/// A non-adjacent pair whose sum is forced between two edge sums.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapCertificate {
    /// 1-based positions, `i < j`.
    pub i: usize,
    pub j: usize,
    /// The vertices at positions `i` and `j`.
    pub u: usize,
    pub v: usize,
    pub tag: GapTag,
    /// Witness edges as vertex pairs.
    pub e1: (usize, usize),
    pub e2: (usize, usize),
}

impl fmt::Display for GapCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "non-edge {{{},{}}} at positions ({},{}) is a {} gap witnessed by edges {{{},{}}} and {{{},{}}}",
            self.u, self.v, self.i, self.j, self.tag, self.e1.0, self.e1.1, self.e2.0, self.e2.1
        )
    }
}

/// 1-based smallest and largest neighbor positions of the vertex at each
/// position (index 0 unused); `None` for isolated vertices.
fn neighbor_span(g: &Graph, sigma: &VertexOrdering) -> Vec<Option<(usize, usize)>> {
    let n = g.n();
    let mut span = vec![None; n + 1];
    for (p, slot) in span.iter_mut().enumerate().skip(1) {
        let v = sigma.at(p - 1);
        let mut it = g.neighbors(v).iter().map(|&u| sigma.position(u) + 1);
        if let Some(first) = it.next() {
            let (lo, hi) = it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x)));
            *slot = Some((lo, hi));
        }
    }
    span
}

/// The lexicographically smallest gapped pair, or `None` when `sigma` is
/// gap-free.
pub fn find_gap(g: &Graph, sigma: &VertexOrdering) -> Option<GapCertificate> {
    let n = g.n();
    assert_eq!(sigma.len(), n, "ordering must cover the graph");
    let span = neighbor_span(g, sigma);
    let at = |p: usize| sigma.at(p - 1);
    for i in 1..=n {
        let Some((lo_i, hi_i)) = span[i] else {
            continue;
        };
        for j in i + 1..=n {
            let Some((lo_j, hi_j)) = span[j] else {
                continue;
            };
            let (u, v) = (at(i), at(j));
            if g.has_edge(u, v) {
                continue;
            }
            let found = if lo_i < j && j < hi_i {
                Some((GapTag::G1a, (u, at(lo_i)), (u, at(hi_i))))
            } else if lo_j < i && i < hi_j {
                Some((GapTag::G1b, (at(lo_j), v), (at(hi_j), v)))
            } else if lo_j < i && hi_i > j {
                Some((GapTag::G2, (u, at(hi_i)), (v, at(lo_j))))
            } else if lo_i < j && hi_j > i {
                Some((GapTag::G3, (u, at(lo_i)), (v, at(hi_j))))
            } else {
                None
            };
            if let Some((tag, e1, e2)) = found {
                return Some(GapCertificate {
                    i,
                    j,
                    u,
                    v,
                    tag,
                    e1,
                    e2,
                });
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairColor {
    /// Sum below the window.
    Red,
    /// Sum inside the window: an edge.
    Green,
    /// Sum above the window.
    Blue,
}

/// Pair coloring of a gap-free ordering.
///
/// For the vertex at position `i`, its red partners are exactly the
/// positions below `a(i)` other than `i`, and its blue partners exactly the
/// positions above `b(i)` other than `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProperColoring {
    pub n: usize,
    /// `a[i - 1]` is `a(i)`.
    pub a: Vec<usize>,
    /// `b[i - 1]` is `b(i)`.
    pub b: Vec<usize>,
    /// Largest `i` with `i < a(i)`, or 0.
    pub i_red: usize,
    /// Smallest `i` with `b(i) < i`, or `n + 1`.
    pub i_blue: usize,
}

impl ProperColoring {
    pub fn a(&self, i: usize) -> usize {
        self.a[i - 1]
    }

    pub fn b(&self, i: usize) -> usize {
        self.b[i - 1]
    }

    /// Color of the pair at 1-based positions `i != j`.
    pub fn color(&self, i: usize, j: usize) -> PairColor {
        debug_assert!(i != j);
        if j < self.a(i) {
            PairColor::Red
        } else if j > self.b(i) {
            PairColor::Blue
        } else {
            PairColor::Green
        }
    }
}

/// Builds the coloring of a gap-free ordering of a graph without isolated
/// vertices.
///
/// A non-neighbor before the neighborhood block of a vertex is a red
/// partner, one after it a blue partner.
pub fn proper_coloring(g: &Graph, sigma: &VertexOrdering) -> Result<ProperColoring> {
    let n = g.n();
    if let Some(&v) = g.isolated_vertices().first() {
        return Err(Error::IsolatedVertex(v));
    }
    if let Some(cert) = find_gap(g, sigma) {
        return Err(Error::GapPresent(cert));
    }
    let span = neighbor_span(g, sigma);
    let mut a = vec![1; n];
    let mut b = vec![n; n];
    for i in 1..=n {
        let (lo, hi) = span[i].expect("no isolated vertices");
        let v = sigma.at(i - 1);
        for j in 1..=n {
            if j == i || g.has_edge(v, sigma.at(j - 1)) {
                continue;
            }
            if j < lo {
                a[i - 1] = a[i - 1].max(j + 1);
            } else if j > hi {
                b[i - 1] = b[i - 1].min(j - 1);
            } else {
                unreachable!("a non-neighbor inside the neighborhood block is a gap");
            }
        }
    }
    let i_red = (1..=n).rev().find(|&i| i < a[i - 1]).unwrap_or(0);
    let i_blue = (1..=n).find(|&i| b[i - 1] < i).unwrap_or(n + 1);
    Ok(ProperColoring {
        n,
        a,
        b,
        i_red,
        i_blue,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn p4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    fn order(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn p4_path_order_has_g3_gap() {
        let cert = find_gap(&p4(), &order(&[0, 1, 2, 3])).unwrap();
        assert_eq!((cert.i, cert.j, cert.tag), (1, 3, GapTag::G3));
        assert_eq!((cert.e1, cert.e2), ((0, 1), (2, 3)));
    }

    #[test]
    fn p4_cabd_is_gap_free() {
        assert!(find_gap(&p4(), &order(&[2, 0, 1, 3])).is_none());
    }

    #[test]
    fn complete_graphs_are_gap_free() {
        assert!(find_gap(&Graph::complete(3), &order(&[2, 0, 1])).is_none());
    }

    #[test]
    fn p4_coloring() {
        let c = proper_coloring(&p4(), &order(&[2, 0, 1, 3])).unwrap();
        assert_eq!(c.a, vec![3, 2, 1, 1]);
        assert_eq!(c.b, vec![4, 3, 3, 1]);
        assert_eq!((c.i_red, c.i_blue), (1, 4));
        assert_eq!(c.color(1, 2), PairColor::Red);
        assert_eq!(c.color(2, 4), PairColor::Blue);
        assert_eq!(c.color(3, 4), PairColor::Blue);
        assert_eq!(c.color(1, 4), PairColor::Green);
    }

    #[test]
    fn complete_graph_coloring() {
        let c = proper_coloring(&Graph::complete(3), &Permutation::identity(3)).unwrap();
        assert_eq!((c.a.clone(), c.b.clone()), (vec![1, 1, 1], vec![3, 3, 3]));
        assert_eq!((c.i_red, c.i_blue), (0, 4));
        let c = proper_coloring(&Graph::complete(2), &Permutation::identity(2)).unwrap();
        assert_eq!((c.i_red, c.i_blue), (0, 3));
    }

    #[test]
    fn coloring_contract_errors() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(matches!(
            proper_coloring(&g, &Permutation::identity(3)),
            Err(Error::IsolatedVertex(2))
        ));
        assert!(matches!(
            proper_coloring(&p4(), &Permutation::identity(4)),
            Err(Error::GapPresent(_))
        ));
    }
}
