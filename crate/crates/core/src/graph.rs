//! Simple undirected graphs over dense vertex ids `0..n`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::text::Tokens;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge_unchecked(u, v);
            }
        }
        g
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::Contract(format!(
                "edge {u}-{v} has an endpoint outside 0..{n}"
            )));
        }
        if u == v {
            return Err(Error::Contract(format!("self-loop at vertex {u}")));
        }
        if self.has_edge(u, v) {
            return Err(Error::Contract(format!("duplicate edge {u}-{v}")));
        }
        self.add_edge_unchecked(u, v);
        Ok(())
    }

    fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        let a = &mut self.adj[u];
        let i = a.partition_point(|&x| x < v);
        a.insert(i, v);
        let b = &mut self.adj[v];
        let j = b.partition_point(|&x| x < u);
        b.insert(j, u);
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.adj[v].is_empty()).collect()
    }

    /// Same graph with vertex `v` renamed to `map[v]`.
    pub fn relabel(&self, map: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n());
        for (u, v) in self.edges() {
            g.add_edge_unchecked(map[u], map[v]);
        }
        g
    }

    /// Serializes in the graph file format accepted by [`parse_graph`].
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n(), self.edge_count());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Parses the graph file format: `n m` followed by `m` pairs `u v`.
/// Lines starting with `#` are comments.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut tokens = Tokens::new(text);
    let (_, n) = tokens.next::<usize>("vertex count")?;
    let (_, m) = tokens.next::<usize>("edge count")?;
    let mut g = Graph::empty(n);
    for _ in 0..m {
        let (line, u) = tokens.next::<usize>("edge endpoint")?;
        let (_, v) = tokens.next::<usize>("edge endpoint")?;
        if u >= n || v >= n {
            return Err(Error::parse(
                line,
                format!("vertex out of range in edge {u} {v} (n = {n})"),
            ));
        }
        if u == v {
            return Err(Error::parse(line, format!("self-loop at vertex {u}")));
        }
        if g.has_edge(u, v) {
            return Err(Error::parse(line, format!("duplicate edge {u} {v}")));
        }
        g.add_edge_unchecked(u, v);
    }
    tokens.finish()?;
    Ok(g)
}

/// Connected components, each sorted, ordered by smallest vertex.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                    stack.push(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bipartition {
    /// The side containing the smallest vertex comes first.
    Sides(Vec<usize>, Vec<usize>),
    /// Vertices of an odd cycle in traversal order.
    OddCycle(Vec<usize>),
}

/// Two-colors a connected graph or returns an odd cycle.
pub fn bipartition(g: &Graph) -> Result<Bipartition> {
    let n = g.n();
    if n == 0 {
        return Ok(Bipartition::Sides(Vec::new(), Vec::new()));
    }
    if components(g).len() != 1 {
        return Err(Error::Contract("bipartition expects a connected graph".into()));
    }
    let mut color = vec![u8::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    color[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if color[v] == u8::MAX {
                color[v] = 1 - color[u];
                parent[v] = u;
                depth[v] = depth[u] + 1;
                queue.push_back(v);
            } else if color[v] == color[u] {
                return Ok(Bipartition::OddCycle(odd_cycle(u, v, &parent, &depth)));
            }
        }
    }
    let (a, b): (Vec<usize>, Vec<usize>) = (0..n).partition(|&v| color[v] == 0);
    Ok(Bipartition::Sides(a, b))
}

fn odd_cycle(u: usize, v: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut x, mut y) = (u, v);
    let mut left = Vec::new();
    let mut right = Vec::new();
    while depth[x] > depth[y] {
        left.push(x);
        x = parent[x];
    }
    while depth[y] > depth[x] {
        right.push(y);
        y = parent[y];
    }
    while x != y {
        left.push(x);
        right.push(y);
        x = parent[x];
        y = parent[y];
    }
    left.push(x);
    right.reverse();
    left.extend(right);
    left.reverse();
    left
}

/// Unordered vertex pairs `{u, v}` with `N(u) \ {v} = N(v) \ {u}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MirrorPairSet {
    pairs: BTreeSet<(usize, usize)>,
}

impl MirrorPairSet {
    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.pairs.contains(&(u.min(v), u.max(v)))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }
}

pub fn mirror_pairs(g: &Graph) -> MirrorPairSet {
    let mut pairs = BTreeSet::new();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let a = g.neighbors(u).iter().filter(|&&x| x != v);
            let b = g.neighbors(v).iter().filter(|&&x| x != u);
            if a.eq(b) {
                pairs.insert((u, v));
            }
        }
    }
    MirrorPairSet { pairs }
}

/// Vertices and edges lying on at least one triangle.
pub fn triangle_vertices(g: &Graph) -> (BTreeSet<usize>, BTreeSet<(usize, usize)>) {
    let mut vt = BTreeSet::new();
    let mut et = BTreeSet::new();
    for (u, v) in g.edges() {
        if has_common(g.neighbors(u), g.neighbors(v)) {
            vt.insert(u);
            vt.insert(v);
            et.insert((u, v));
        }
    }
    (vt, et)
}

fn has_common(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Sorted intersection of two sorted vertex lists.
pub fn common_neighbors(g: &Graph, u: usize, v: usize) -> Vec<usize> {
    let (a, b) = (g.neighbors(u), g.neighbors(v));
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// `G[keep]` relabeled densely in ascending id order.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `back[new_id]` is the original vertex id.
    pub back: Vec<usize>,
}

pub fn induced_subgraph(g: &Graph, keep: &[usize]) -> InducedSubgraph {
    let mut back: Vec<usize> = keep.to_vec();
    back.sort_unstable();
    back.dedup();
    let mut fwd = vec![usize::MAX; g.n()];
    for (i, &v) in back.iter().enumerate() {
        fwd[v] = i;
    }
    let mut sub = Graph::empty(back.len());
    for (i, &v) in back.iter().enumerate() {
        sub.adj[i] = g
            .neighbors(v)
            .iter()
            .filter_map(|&u| (fwd[u] != usize::MAX).then_some(fwd[u]))
            .collect();
        sub.adj[i].sort_unstable();
    }
    InducedSubgraph { graph: sub, back }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn parses_p3() {
        let g = parse_graph("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g, path(3));
        let h = parse_graph("# comment\n3 2\n1 2\n# mid\n1 0\n").unwrap();
        assert_eq!(h, g);
    }

    #[test]
    fn parses_single_vertex() {
        let g = parse_graph("1 0\n").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = parse_graph("2 1\n0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        assert!(err.to_string().contains("self-loop"));
        let err = parse_graph("3 2\n0 1\n1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(err.to_string().contains("duplicate"));
        assert!(matches!(
            parse_graph("2 1\n0 5\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("2 1\n0 x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_graph("2 2\n0 1\n").is_err());
        assert!(parse_graph("2 1\n0 1\n1").is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = cycle(5);
        assert_eq!(parse_graph(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn components_examples() {
        assert_eq!(components(&path(3)), vec![vec![0, 1, 2]]);
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(components(&g), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(components(&Graph::empty(3)), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn bipartition_examples() {
        assert_eq!(
            bipartition(&cycle(4)).unwrap(),
            Bipartition::Sides(vec![0, 2], vec![1, 3])
        );
        match bipartition(&Graph::complete(3)).unwrap() {
            Bipartition::OddCycle(mut c) => {
                c.sort_unstable();
                assert_eq!(c, vec![0, 1, 2]);
            }
            other => panic!("expected odd cycle, got {other:?}"),
        }
        assert_eq!(
            bipartition(&Graph::complete(2)).unwrap(),
            Bipartition::Sides(vec![0], vec![1])
        );
        assert!(bipartition(&Graph::empty(2)).is_err());
    }

    #[test]
    fn odd_cycle_is_a_closed_walk() {
        for n in [3, 5, 7, 9] {
            let g = cycle(n);
            let Bipartition::OddCycle(c) = bipartition(&g).unwrap() else {
                panic!("C{n} is not bipartite");
            };
            assert_eq!(c.len() % 2, 1);
            for i in 0..c.len() {
                assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
            }
        }
    }

    #[test]
    fn mirror_pair_examples() {
        let k2 = mirror_pairs(&Graph::complete(2));
        assert_eq!(k2.iter().collect::<Vec<_>>(), vec![(0, 1)]);
        let p3 = mirror_pairs(&path(3));
        assert_eq!(p3.iter().collect::<Vec<_>>(), vec![(0, 2)]);
        assert!(mirror_pairs(&path(4)).is_empty());
        assert!(p3.contains(2, 0));
    }

    #[test]
    fn triangle_examples() {
        let (vt, et) = triangle_vertices(&Graph::complete(3));
        assert_eq!(vt.len(), 3);
        assert_eq!(et.len(), 3);
        let (vt, et) = triangle_vertices(&cycle(4));
        assert!(vt.is_empty() && et.is_empty());
        let mut k4e = Graph::complete(4);
        k4e = Graph::from_edges(
            4,
            &k4e.edges().filter(|&e| e != (0, 1)).collect::<Vec<_>>(),
        )
        .unwrap();
        let (vt, et) = triangle_vertices(&k4e);
        assert_eq!(vt.len(), 4);
        assert_eq!(et.len(), 5);
    }

    #[test]
    fn induced_examples() {
        let sub = induced_subgraph(&Graph::complete(3), &[0, 2]);
        assert_eq!(sub.graph, Graph::complete(2));
        assert_eq!(sub.back, vec![0, 2]);
        let g = cycle(5);
        let all: Vec<_> = (0..5).collect();
        assert_eq!(induced_subgraph(&g, &all).graph, g);
        let mid = induced_subgraph(&path(4), &[1, 2]);
        assert_eq!(mid.graph, Graph::complete(2));
        assert_eq!(mid.back, vec![1, 2]);
    }
}
