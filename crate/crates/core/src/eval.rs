//! Forward evaluation of weighted trees and star witnesses.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::VertexOrdering;
use crate::rational::{parse_rational, Rational};
use crate::synthesis::StarPCR;
use crate::text::Tokens;

/// An edge-weighted tree whose labeled nodes stand for graph vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedTree {
    nodes: usize,
    adj: Vec<Vec<(usize, Rational)>>,
    /// `leaves[v]` is the node carrying graph vertex `v`.
    leaves: Vec<usize>,
}

impl WeightedTree {
    pub fn new(
        nodes: usize,
        edges: Vec<(usize, usize, Rational)>,
        leaves: Vec<usize>,
    ) -> Result<Self> {
        if nodes == 0 {
            return Err(Error::Contract("a tree needs at least one node".into()));
        }
        if edges.len() != nodes - 1 {
            return Err(Error::Contract(format!(
                "a tree on {nodes} nodes has {} edges, not {}",
                nodes - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); nodes];
        for (u, v, w) in edges {
            if u >= nodes || v >= nodes || u == v {
                return Err(Error::Contract(format!("bad tree edge {u} {v}")));
            }
            adj[u].push((v, w.clone()));
            adj[v].push((u, w));
        }
        let mut seen = vec![false; nodes];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(v, _) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        if seen.contains(&false) {
            return Err(Error::Contract("tree is not connected".into()));
        }
        let mut used = vec![false; nodes];
        for &l in &leaves {
            if l >= nodes || used[l] {
                return Err(Error::Contract(format!("bad leaf label node {l}")));
            }
            if adj[l].len() > 1 {
                return Err(Error::Contract(format!("labeled node {l} is not a leaf")));
            }
            used[l] = true;
        }
        Ok(WeightedTree { nodes, adj, leaves })
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    /// Number of labeled leaves, i.e. graph vertices.
    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn leaf_node(&self, v: usize) -> usize {
        self.leaves[v]
    }

    fn distances_from(&self, root: usize) -> Vec<Rational> {
        let mut dist = vec![Rational::zero(); self.nodes];
        let mut seen = vec![false; self.nodes];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(u) = stack.pop() {
            for (v, w) in &self.adj[u] {
                if !seen[*v] {
                    seen[*v] = true;
                    dist[*v] = &dist[u] + w;
                    stack.push(*v);
                }
            }
        }
        dist
    }
}

/// Path-weight sums between all labeled leaves, indexed by graph vertex.
pub fn leaf_distances(t: &WeightedTree) -> Vec<Vec<Rational>> {
    t.leaves
        .iter()
        .map(|&root| {
            let dist = t.distances_from(root);
            t.leaves.iter().map(|&l| dist[l].clone()).collect()
        })
        .collect()
}

/// The graph on the labeled leaves with an edge exactly when the leaf
/// distance lies in the closed window `[dmin, dmax]`.
pub fn evaluate_pcr(t: &WeightedTree, dmin: &Rational, dmax: &Rational) -> Result<Graph> {
    if dmin > dmax {
        return Err(Error::Contract(format!("dmin {dmin} exceeds dmax {dmax}")));
    }
    let d = leaf_distances(t);
    let n = t.leaf_count();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if dmin <= &d[u][v] && &d[u][v] <= dmax {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Star with center node 0 and node `1 + v` for vertex `v`, whose leaf edge
/// carries the weight of `v`'s position in `sigma`.
pub fn star_of(pcr: &StarPCR, sigma: &VertexOrdering) -> WeightedTree {
    let n = sigma.len();
    let edges = (0..n)
        .map(|v| (0, 1 + v, pcr.weights[sigma.position(v)].clone()))
        .collect();
    WeightedTree::new(n + 1, edges, (1..=n).collect()).expect("a star is a tree")
}

/// The star built from `pcr` and `sigma` realizes exactly `g`, and the
/// weights are sorted along `sigma`.
pub fn verify_witness(g: &Graph, pcr: &StarPCR, sigma: &VertexOrdering) -> bool {
    if sigma.len() != g.n() || pcr.weights.len() != g.n() || pcr.dmin > pcr.dmax {
        return false;
    }
    if pcr.weights.windows(2).any(|w| w[0] > w[1]) {
        return false;
    }
    match evaluate_pcr(&star_of(pcr, sigma), &pcr.dmin, &pcr.dmax) {
        Ok(h) => h == *g,
        Err(_) => false,
    }
}

/// Reads a tree file: node count `k`, then `k - 1` lines `u v num/den`, then
/// the node ids carrying graph vertices `0, 1, ...` in order.
pub fn parse_tree(text: &str) -> Result<WeightedTree> {
    let mut tok = Tokens::new(text);
    let (line, k) = tok.next::<usize>("node count")?;
    if k == 0 {
        return Err(Error::parse(line, "a tree needs at least one node"));
    }
    let mut edges = Vec::with_capacity(k - 1);
    for _ in 0..k - 1 {
        let (line, u) = tok.next::<usize>("edge endpoint")?;
        let (_, v) = tok.next::<usize>("edge endpoint")?;
        let (_, w) = tok.next_raw("edge weight")?;
        if u >= k || v >= k {
            return Err(Error::parse(line, format!("node out of range in edge {u} {v}")));
        }
        let w = parse_rational(w)
            .ok_or_else(|| Error::parse(line, format!("malformed weight `{w}`")))?;
        edges.push((u, v, w));
    }
    let mut leaves = Vec::new();
    let leaf_line = tok.peek_line();
    while tok.peek_line().is_some() {
        leaves.push(tok.next::<usize>("leaf node")?.1);
    }
    tok.finish()?;
    WeightedTree::new(k, edges, leaves)
        .map_err(|e| Error::parse(leaf_line.unwrap_or(line), e.to_string()))
}
