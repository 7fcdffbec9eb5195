//! The star-PCG decision pipeline.
//!
//! Isolated vertices are set aside, each remaining component is ordered on
//! its own, and the component orderings are nested into one ordering of the
//! whole graph. Any ordering produced this way is gap-checked, turned into
//! exact weights and verified by forward evaluation before it is reported.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::verify_witness;
use crate::gap::find_gap;
use crate::graph::{
    bipartition, common_neighbors, components, induced_subgraph, triangle_vertices, Bipartition,
    Graph,
};
use crate::orderings::contiguous::contiguous_ordering;
use crate::orderings::family::{equivalence_classes, SetFamily};
use crate::perm::{Permutation, VertexOrdering};
use crate::rational::int;
use crate::synthesis::{normalize, synthesize_with_isolated, StarPCR};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RefusalKind {
    TwoNonbipartiteComponents,
    ComponentRefused,
    ExhaustedCandidates,
}

impl RefusalKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RefusalKind::TwoNonbipartiteComponents => "two_nonbipartite_components",
            RefusalKind::ComponentRefused => "component_refused",
            RefusalKind::ExhaustedCandidates => "exhausted_candidates",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Refusal {
    pub kind: RefusalKind,
    pub details: String,
    /// Set when the refusal comes from an internal failure rather than a
    /// structural reason; such a refusal is not trustworthy.
    pub internal: bool,
}

#[derive(Clone, Debug)]
pub struct Acceptance {
    pub ordering: VertexOrdering,
    /// Normalized witness: positive integer weights, `0 < dmin < dmax`.
    pub witness: StarPCR,
    /// Witness as synthesized, before normalization.
    pub raw: StarPCR,
    pub verified: bool,
}

#[derive(Clone, Debug)]
pub enum RecognitionOutcome {
    Yes(Acceptance),
    No(Refusal),
}

impl RecognitionOutcome {
    pub fn is_yes(&self) -> bool {
        matches!(self, RecognitionOutcome::Yes(_))
    }

    pub fn is_internal_failure(&self) -> bool {
        matches!(self, RecognitionOutcome::No(r) if r.internal)
    }
}

fn refuse(kind: RefusalKind, details: String) -> RecognitionOutcome {
    RecognitionOutcome::No(Refusal {
        kind,
        details,
        internal: false,
    })
}

fn internal(kind: RefusalKind, details: String) -> RecognitionOutcome {
    RecognitionOutcome::No(Refusal {
        kind,
        details,
        internal: true,
    })
}

/// Ordering of one component. Bipartite components record the length of
/// their first side block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentOrdering {
    pub order: Vec<usize>,
    pub split: Option<usize>,
}

/// Decides whether `g` is a star-PCG.
pub fn recognize(g: &Graph) -> RecognitionOutcome {
    let isolated = g.isolated_vertices();
    let mut parts = Vec::new();
    let mut odd = Vec::new();
    let mut bipartite = Vec::new();
    for comp in components(g).into_iter().filter(|c| c.len() > 1) {
        let sub = induced_subgraph(g, &comp);
        match bipartition(&sub.graph) {
            Ok(Bipartition::Sides(..)) => bipartite.push(sub),
            Ok(Bipartition::OddCycle(cycle)) => {
                let cycle: Vec<usize> = cycle.iter().map(|&v| sub.back[v]).collect();
                odd.push((sub, cycle));
            }
            Err(e) => return internal(RefusalKind::ComponentRefused, e.to_string()),
        }
    }
    if odd.len() >= 2 {
        return refuse(
            RefusalKind::TwoNonbipartiteComponents,
            format!(
                "odd cycles {:?} and {:?} lie in different components",
                odd[0].1, odd[1].1
            ),
        );
    }
    for (sub, _) in &odd {
        match recognize_connected_nonbipartite(&sub.graph) {
            Ok(Some(sigma)) => parts.push(ComponentOrdering {
                order: sigma.iter().map(|v| sub.back[v]).collect(),
                split: None,
            }),
            Ok(None) => {
                return refuse(
                    RefusalKind::ExhaustedCandidates,
                    format!("no core edge of component {:?} gives a gap-free ordering", sub.back),
                )
            }
            Err(e) => return internal(RefusalKind::ExhaustedCandidates, e.to_string()),
        }
    }
    for sub in &bipartite {
        match recognize_connected_bipartite(&sub.graph) {
            Ok(Some((sigma, k))) => parts.push(ComponentOrdering {
                order: sigma.iter().map(|v| sub.back[v]).collect(),
                split: Some(k),
            }),
            Ok(None) => {
                return refuse(
                    RefusalKind::ComponentRefused,
                    format!("bipartite component {:?} has no gap-free ordering", sub.back),
                )
            }
            Err(e) => return internal(RefusalKind::ComponentRefused, e.to_string()),
        }
    }
    let sigma = match assemble_disconnected(g, &parts, &isolated) {
        Ok(s) => s,
        Err(e) => return internal(RefusalKind::ComponentRefused, e.to_string()),
    };
    match witness_for(g, &sigma) {
        Ok(outcome) => outcome,
        Err(e) => internal(RefusalKind::ComponentRefused, e.to_string()),
    }
}

fn witness_for(g: &Graph, sigma: &VertexOrdering) -> Result<RecognitionOutcome> {
    if let Some(cert) = find_gap(g, sigma) {
        return Err(Error::GapPresent(cert));
    }
    let raw = if g.n() == 0 {
        StarPCR {
            weights: Vec::new(),
            dmin: int(1),
            dmax: int(2),
        }
    } else {
        synthesize_with_isolated(g, sigma)?
    };
    let witness = normalize(&raw);
    let verified = verify_witness(g, &raw, sigma) && verify_witness(g, &witness, sigma);
    if !verified {
        return Err(Error::SynthesisFailure("normalized witness does not verify".into()));
    }
    Ok(RecognitionOutcome::Yes(Acceptance {
        ordering: sigma.clone(),
        witness,
        raw,
        verified,
    }))
}

/// Gap-free ordering of a connected bipartite graph with its side split.
///
/// Each side is ordered contiguously to the neighborhoods of the other side;
/// one of the two ways of joining the side orderings is gap-free when the
/// graph is a star-PCG.
pub fn recognize_connected_bipartite(g: &Graph) -> Result<Option<(VertexOrdering, usize)>> {
    if g.edge_count() == 0 {
        return Err(Error::Contract("bipartite component needs an edge".into()));
    }
    let (side1, side2) = match bipartition(g)? {
        Bipartition::Sides(a, b) => (a, b),
        Bipartition::OddCycle(_) => {
            return Err(Error::Contract("graph is not bipartite".into()))
        }
    };
    let Some(o1) = order_side(g, &side1, &side2) else {
        return Ok(None);
    };
    let Some(o2) = order_side(g, &side2, &side1) else {
        return Ok(None);
    };
    let reversed: Vec<usize> = o2.iter().rev().copied().collect();
    for tail in [o2, reversed] {
        let mut order = o1.clone();
        order.extend(tail);
        let sigma = Permutation::new(order)?;
        if find_gap(g, &sigma).is_none() {
            return Ok(Some((sigma, side1.len())));
        }
    }
    Ok(None)
}

/// Contiguous ordering of `side` to the neighborhoods of `other`.
fn order_side(g: &Graph, side: &[usize], other: &[usize]) -> Option<Vec<usize>> {
    let mut idx = vec![usize::MAX; g.n()];
    for (i, &v) in side.iter().enumerate() {
        idx[v] = i;
    }
    let sets = other
        .iter()
        .map(|&v| g.neighbors(v).iter().map(|&u| idx[u]).collect::<Vec<_>>());
    let family = SetFamily::new(side.len(), sets).ok()?;
    let sigma = contiguous_ordering(&family)?;
    Some(sigma.iter().map(|i| side[i]).collect())
}

/// Gap-free ordering of a connected non-bipartite graph.
///
/// Every edge inside triangles (every edge when there are no triangles) is
/// tried as the seed of the middle clique. The clique is the seed edge plus
/// the common neighbors of its ends; the rest of the graph must two-color
/// with the private neighbors of each seed end on opposite sides.
pub fn recognize_connected_nonbipartite(g: &Graph) -> Result<Option<VertexOrdering>> {
    if components(g).len() != 1 {
        return Err(Error::Contract("graph is not connected".into()));
    }
    if let Bipartition::Sides(..) = bipartition(g)? {
        return Err(Error::Contract("graph is bipartite".into()));
    }
    let (vt, _) = triangle_vertices(g);
    let candidates: Vec<(usize, usize)> = g
        .edges()
        .filter(|(u, v)| vt.is_empty() || (vt.contains(u) && vt.contains(v)))
        .collect();
    for (a, b) in candidates {
        if let Some(sigma) = try_core(g, a, b) {
            return Ok(Some(sigma));
        }
    }
    Ok(None)
}

/// Candidate core grown from edge `v1 v2` together with the two sides of
/// the rest of the graph.
#[derive(Clone, Debug)]
pub struct CoreSplit {
    pub core: Vec<usize>,
    /// `side[v]` is 0 for the side next to `v2`, 1 for the side next to
    /// `v1`, `None` for core vertices.
    pub side: Vec<Option<u8>>,
    /// Neighborhoods of all non-core vertices plus the core itself.
    pub family: SetFamily,
}

/// The core grown from edge `v1 v2` and its set family, or `None` when the
/// core is not a clique or the rest does not split into the two sides.
pub fn core_split(g: &Graph, v1: usize, v2: usize) -> Option<CoreSplit> {
    let n = g.n();
    let mut core = common_neighbors(g, v1, v2);
    core.push(v1);
    core.push(v2);
    core.sort_unstable();
    for (x, &u) in core.iter().enumerate() {
        if core[x + 1..].iter().any(|&v| !g.has_edge(u, v)) {
            return None;
        }
    }
    let mut in_core = vec![false; n];
    for &v in &core {
        in_core[v] = true;
    }

    let mut side: Vec<Option<u8>> = vec![None; n];
    let mut queue = VecDeque::new();
    for (seed_of, mark) in [(v2, 0u8), (v1, 1u8)] {
        for &u in g.neighbors(seed_of) {
            if !in_core[u] {
                side[u] = Some(mark);
                queue.push_back(u);
            }
        }
    }
    for u in 0..n {
        if !in_core[u] && side[u].is_none() && g.neighbors(u).iter().any(|&x| in_core[x]) {
            return None;
        }
    }
    while let Some(u) = queue.pop_front() {
        let s = side[u].unwrap();
        for &x in g.neighbors(u) {
            if in_core[x] {
                continue;
            }
            match side[x] {
                None => {
                    side[x] = Some(1 - s);
                    queue.push_back(x);
                }
                Some(t) if t == s => return None,
                Some(_) => {}
            }
        }
    }
    if (0..n).any(|u| !in_core[u] && side[u].is_none()) {
        return None;
    }

    let mut sets: Vec<Vec<usize>> = (0..n)
        .filter(|&u| !in_core[u])
        .map(|u| g.neighbors(u).to_vec())
        .collect();
    sets.push(core.clone());
    let family = SetFamily::new(n, sets).ok()?;
    Some(CoreSplit { core, side, family })
}

/// Rebuilds a contiguous ordering of the core family as side 0, core,
/// side 1.
///
/// The family does not see the core neighborhoods of side vertices: a side
/// vertex adjacent only to the core lies in no set, and members of one
/// equivalence class may differ in how much of the core they see. Side 0
/// vertices are therefore ordered by class (as they appear in `sigma`) and
/// then by growing core neighborhood, with the vertices in no set placed
/// last, next to the core; side 1 mirrors this.
///
/// `forward[k]` says whether block `k` (side 0, core, side 1) keeps the
/// direction it has in `sigma`. The family may have several contiguous
/// orderings in which whole blocks are mirrored against each other, so
/// callers try every combination.
pub fn arrange_core_ordering(
    g: &Graph,
    split: &CoreSplit,
    sigma: &VertexOrdering,
    forward: [bool; 3],
) -> VertexOrdering {
    let n = g.n();
    let mut in_core = vec![false; n];
    for &v in &split.core {
        in_core[v] = true;
    }
    let core_deg: Vec<usize> = (0..n)
        .map(|v| g.neighbors(v).iter().filter(|&&u| in_core[u]).count())
        .collect();
    let mut covered = vec![false; n];
    for s in split.family.sets() {
        for &e in s {
            covered[e] = true;
        }
    }
    let rank = |v: usize| {
        let block = match split.side[v] {
            Some(0) => 0,
            None => 1,
            Some(_) => 2,
        };
        if forward[block] {
            sigma.position(v)
        } else {
            n - 1 - sigma.position(v)
        }
    };
    let classes = equivalence_classes(&split.family);
    let mut class_rank = vec![0; n];
    for class in &classes {
        let r = class.iter().map(|&v| rank(v)).min().unwrap();
        for &v in class {
            class_rank[v] = r;
        }
    }
    let pick = |s: u8, cov: bool| -> Vec<usize> {
        (0..n)
            .filter(|&v| split.side[v] == Some(s) && covered[v] == cov)
            .collect()
    };
    let mut low_in = pick(0, true);
    low_in.sort_by_key(|&v| (class_rank[v], core_deg[v], v));
    let mut low_out = pick(0, false);
    low_out.sort_by_key(|&v| (core_deg[v], v));
    let mut core = split.core.clone();
    core.sort_by_key(|&v| rank(v));
    let mut high_out = pick(1, false);
    high_out.sort_by_key(|&v| (std::cmp::Reverse(core_deg[v]), v));
    let mut high_in = pick(1, true);
    high_in.sort_by_key(|&v| (class_rank[v], std::cmp::Reverse(core_deg[v]), v));

    let order: Vec<usize> = [low_in, low_out, core, high_out, high_in].concat();
    Permutation::new(order).expect("sides and core partition the vertices")
}

fn try_core(g: &Graph, v1: usize, v2: usize) -> Option<VertexOrdering> {
    let split = core_split(g, v1, v2)?;
    let sigma = contiguous_ordering(&split.family)?;
    if find_gap(g, &sigma).is_none() {
        return Some(sigma);
    }
    for mask in 0..8u8 {
        let forward = [mask & 1 == 0, mask & 2 == 0, mask & 4 == 0];
        let arranged = arrange_core_ordering(g, &split, &sigma, forward);
        if find_gap(g, &arranged).is_none() {
            return Some(arranged);
        }
        if let Some(refined) = refine_sides(g, &split, arranged) {
            return Some(refined);
        }
    }
    None
}

/// Re-sorts each side against the current positions of everything else
/// until the ordering is gap-free or stops changing.
///
/// In a gap-free ordering the lowest and highest neighbor positions never
/// increase from one vertex to the next, and along the core the part of the
/// neighborhood on side 0 grows while the part on side 1 shrinks. Orders
/// left open by the family, such as between classes that differ only in
/// singleton sets, are settled by sorting on these keys.
pub fn refine_sides(g: &Graph, split: &CoreSplit, start: VertexOrdering) -> Option<VertexOrdering> {
    let n = g.n();
    let block = |v: usize| match split.side[v] {
        Some(0) => 0,
        None => 1,
        Some(_) => 2,
    };
    let outside = |v: usize, s: u8| {
        g.neighbors(v)
            .iter()
            .filter(|&&u| split.side[u] == Some(s))
            .count()
    };
    let mut order = start.as_slice().to_vec();
    for _ in 0..=n {
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let span = |v: usize| {
            let ps = g.neighbors(v).iter().map(|&u| pos[u]);
            let lo = ps.clone().min().unwrap_or(pos[v]);
            let hi = ps.max().unwrap_or(pos[v]);
            (std::cmp::Reverse(lo), std::cmp::Reverse(hi))
        };
        let mut next = order.clone();
        next.sort_by_key(|&v| {
            let key = match split.side[v] {
                None => (
                    std::cmp::Reverse(0),
                    std::cmp::Reverse(0),
                    outside(v, 0),
                    std::cmp::Reverse(outside(v, 1)),
                ),
                Some(_) => {
                    let (lo, hi) = span(v);
                    (lo, hi, 0, std::cmp::Reverse(0))
                }
            };
            (block(v), key, pos[v])
        });
        let sigma = Permutation::new(next.clone()).expect("sorting keeps a permutation");
        if find_gap(g, &sigma).is_none() {
            return Some(sigma);
        }
        if next == order {
            return None;
        }
        order = next;
    }
    None
}

/// Nests component orderings into one ordering of `g`.
///
/// Starts from the non-bipartite part, or the largest bipartite one, and
/// wraps every other bipartite part around it as `(first side, inner,
/// second side)`, larger parts outermost last. Isolated vertices go first.
pub fn assemble_disconnected(
    g: &Graph,
    parts: &[ComponentOrdering],
    isolated: &[usize],
) -> Result<VertexOrdering> {
    let mut rest: Vec<&ComponentOrdering> = parts.iter().collect();
    rest.sort_by(|a, b| {
        a.split
            .is_some()
            .cmp(&b.split.is_some())
            .then(b.order.len().cmp(&a.order.len()))
            .then(a.order.iter().min().cmp(&b.order.iter().min()))
    });
    let mut inner: Vec<usize> = Vec::new();
    let mut iter = rest.into_iter();
    if let Some(first) = iter.next() {
        inner = first.order.clone();
    }
    for part in iter {
        let k = part
            .split
            .ok_or_else(|| Error::Contract("at most one non-bipartite part".into()))?;
        let mut wrapped = part.order[..k].to_vec();
        wrapped.extend(inner);
        wrapped.extend_from_slice(&part.order[k..]);
        inner = wrapped;
    }
    let mut order = isolated.to_vec();
    order.extend(inner);
    let sigma = Permutation::new(order)?;
    if sigma.len() != g.n() {
        return Err(Error::Contract("parts do not cover the graph".into()));
    }
    if let Some(cert) = find_gap(g, &sigma) {
        return Err(Error::GapPresent(cert));
    }
    Ok(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn accepted(g: &Graph) -> Acceptance {
        match recognize(g) {
            RecognitionOutcome::Yes(a) => {
                assert!(verify_witness(g, &a.witness, &a.ordering));
                a
            }
            RecognitionOutcome::No(r) => panic!("refused: {r:?}"),
        }
    }

    #[test]
    fn small_yes_instances() {
        accepted(&graph(4, &[(0, 1), (1, 2), (2, 3)]));
        accepted(&graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]));
        accepted(&graph(4, &[(0, 1), (0, 2), (0, 3)]));
        accepted(&graph(4, &[(0, 1), (2, 3)]));
        accepted(&graph(4, &[(1, 2), (2, 3), (1, 3)]));
        accepted(&Graph::empty(3));
        accepted(&Graph::empty(0));
        for n in 1..=8 {
            accepted(&Graph::complete(n));
        }
    }

    #[test]
    fn two_triangles_are_refused() {
        let g = graph(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        match recognize(&g) {
            RecognitionOutcome::No(r) => {
                assert_eq!(r.kind, RefusalKind::TwoNonbipartiteComponents);
                assert!(!r.internal);
            }
            RecognitionOutcome::Yes(_) => panic!("two triangles accepted"),
        }
    }

    #[test]
    fn bipartite_examples() {
        let k22 = graph(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        let (sigma, k) = recognize_connected_bipartite(&k22).unwrap().unwrap();
        assert_eq!(k, 2);
        assert!(find_gap(&k22, &sigma).is_none());
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        let (sigma, k) = recognize_connected_bipartite(&star).unwrap().unwrap();
        assert!(find_gap(&star, &sigma).is_none());
        assert_eq!(k, 1);
        assert!(recognize_connected_bipartite(&Graph::complete(3)).is_err());
    }

    #[test]
    fn nonbipartite_examples() {
        for n in 3..6 {
            let k = Graph::complete(n);
            assert!(recognize_connected_nonbipartite(&k).unwrap().is_some());
        }
        assert!(recognize_connected_nonbipartite(&graph(4, &[(0, 1), (1, 2), (2, 3)])).is_err());
    }

    #[test]
    fn assembly_wraps_bipartite_parts() {
        let g = graph(4, &[(0, 1), (2, 3)]);
        let parts = [
            ComponentOrdering {
                order: vec![0, 1],
                split: Some(1),
            },
            ComponentOrdering {
                order: vec![2, 3],
                split: Some(1),
            },
        ];
        let sigma = assemble_disconnected(&g, &parts, &[]).unwrap();
        assert_eq!(sigma.as_slice(), &[2, 0, 1, 3]);
    }
}
