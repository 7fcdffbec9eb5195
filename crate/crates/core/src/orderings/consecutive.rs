//! Consecutive-ones testing by partition refinement over overlap components.
//!
//! Sets that overlap (share elements while neither contains the other) are
//! grouped into components. Within a component, adding sets in an order where
//! each new set overlaps an earlier one pins the layout of the component's
//! union down to an ordered partition into blocks, unique up to reversal.
//! Unions of distinct components never overlap, and a smaller union always
//! falls inside a single block of any larger component containing it, so the
//! final ordering nests the component layouts along that containment tree.

use std::collections::VecDeque;

use super::family::{overlaps, SetFamily};
use crate::perm::{ElementOrdering, Permutation};

struct Component {
    union: Vec<bool>,
    size: usize,
    min: usize,
    blocks: Vec<Vec<usize>>,
    single: bool,
}

/// An ordering under which every set is a contiguous block, or `None` when
/// the family has no such ordering.
pub fn consecutive_ordering(f: &SetFamily) -> Option<ElementOrdering> {
    let n = f.ground();
    let sets = f.sets();
    if sets.is_empty() || n <= 1 {
        return Some(Permutation::identity(n));
    }

    let m = sets.len();
    let mut adjacent = vec![Vec::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            if overlaps(&sets[i], &sets[j]) {
                adjacent[i].push(j);
                adjacent[j].push(i);
            }
        }
    }

    let mut comps = Vec::new();
    let mut seen = vec![false; m];
    for start in 0..m {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut layout = Layout::new(n, &sets[start]);
        let mut count = 0;
        while let Some(s) = queue.pop_front() {
            count += 1;
            if s != start && !layout.add(&sets[s]) {
                return None;
            }
            for &t in &adjacent[s] {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        comps.push(layout.into_component(count == 1));
    }

    // Parents before children: larger unions first, and on equal unions the
    // single-set component (one block spanning the union) first.
    comps.sort_by(|a, b| b.size.cmp(&a.size).then(b.single.cmp(&a.single)).then(a.min.cmp(&b.min)));

    // home[c] = (component, block) that directly hosts component c.
    let mut home: Vec<Option<(usize, usize)>> = vec![None; comps.len()];
    for c in 0..comps.len() {
        home[c] = smallest_host(&comps[..c], |e| comps[c].union[e], comps[c].size);
    }
    let mut element_home: Vec<Option<(usize, usize)>> = vec![None; n];
    for (e, slot) in element_home.iter_mut().enumerate() {
        *slot = smallest_host(&comps, |x| x == e, 1);
    }

    // Items hosted by each block (and by the root), keyed by smallest element.
    enum Item {
        Elem(usize),
        Comp(usize),
    }
    let mut root: Vec<(usize, Item)> = Vec::new();
    let mut hosted: Vec<Vec<Vec<(usize, Item)>>> =
        comps.iter().map(|c| c.blocks.iter().map(|_| Vec::new()).collect()).collect();
    for (c, h) in home.iter().enumerate() {
        let item = (comps[c].min, Item::Comp(c));
        match h {
            Some((p, b)) => hosted[*p][*b].push(item),
            None => root.push(item),
        }
    }
    for (e, h) in element_home.iter().enumerate() {
        match h {
            Some((p, b)) => hosted[*p][*b].push((e, Item::Elem(e))),
            None => root.push((e, Item::Elem(e))),
        }
    }
    root.sort_by_key(|x| x.0);
    for blocks in &mut hosted {
        for items in blocks.iter_mut() {
            items.sort_by_key(|x| x.0);
        }
    }

    fn emit(
        items: &[(usize, Item)],
        hosted: &[Vec<Vec<(usize, Item)>>],
        out: &mut Vec<usize>,
    ) {
        for (_, item) in items {
            match item {
                Item::Elem(e) => out.push(*e),
                Item::Comp(c) => {
                    for block in &hosted[*c] {
                        emit(block, hosted, out);
                    }
                }
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    emit(&root, &hosted, &mut order);
    debug_assert_eq!(order.len(), n);
    let perm = Permutation::new(order).expect("layout emits each element once");
    debug_assert!(super::family::is_consecutive(f, &perm));
    Some(perm)
}

/// The smallest block among `comps` that contains every element accepted by
/// `member` (`size` of them).
fn smallest_host(
    comps: &[Component],
    member: impl Fn(usize) -> bool,
    size: usize,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (p, comp) in comps.iter().enumerate() {
        for (b, block) in comp.blocks.iter().enumerate() {
            if block.len() < size || best.is_some_and(|(_, _, len)| len <= block.len()) {
                continue;
            }
            if block.iter().filter(|&&e| member(e)).count() == size {
                best = Some((p, b, block.len()));
            }
        }
    }
    best.map(|(p, b, _)| (p, b))
}

/// Ordered partition of the union of the sets added so far.
struct Layout {
    in_union: Vec<bool>,
    blocks: Vec<Vec<usize>>,
    scratch: Vec<bool>,
}

impl Layout {
    fn new(n: usize, first: &[usize]) -> Self {
        let mut in_union = vec![false; n];
        for &e in first {
            in_union[e] = true;
        }
        Layout {
            in_union,
            blocks: vec![first.to_vec()],
            scratch: vec![false; n],
        }
    }

    /// Refines the layout with a set overlapping one already added.
    fn add(&mut self, set: &[usize]) -> bool {
        for &e in set {
            self.scratch[e] = true;
        }
        let ok = self.refine(set);
        for &e in set {
            self.scratch[e] = false;
        }
        ok
    }

    fn refine(&mut self, set: &[usize]) -> bool {
        let in_set = &self.scratch;
        let outside: Vec<usize> = set.iter().copied().filter(|&e| !self.in_union[e]).collect();
        let counts: Vec<usize> = self
            .blocks
            .iter()
            .map(|b| b.iter().filter(|&&e| in_set[e]).count())
            .collect();
        let Some(i) = counts.iter().position(|&c| c > 0) else {
            return false;
        };
        let j = counts.iter().rposition(|&c| c > 0).unwrap();
        if (i + 1..j).any(|b| counts[b] != self.blocks[b].len()) {
            return false;
        }
        let full_i = counts[i] == self.blocks[i].len();
        let full_j = counts[j] == self.blocks[j].len();
        let k = self.blocks.len();

        if outside.is_empty() {
            if i == j {
                // A set inside one block cannot overlap any added set.
                return false;
            }
            if !full_j {
                let (inside, rest) = self.split(j);
                self.blocks.splice(j..=j, [inside, rest]);
            }
            if !full_i {
                let (inside, rest) = self.split(i);
                self.blocks.splice(i..=i, [rest, inside]);
            }
        } else {
            let right = j == k - 1 && (i == j || full_j);
            let left = i == 0 && (i == j || full_i);
            if right && (!left || k == 1) {
                if !full_i {
                    let (inside, rest) = self.split(i);
                    self.blocks.splice(i..=i, [rest, inside]);
                }
                self.blocks.push(outside.clone());
            } else if left && !right {
                if !full_j {
                    let (inside, rest) = self.split(j);
                    self.blocks.splice(j..=j, [inside, rest]);
                }
                self.blocks.insert(0, outside.clone());
            } else {
                return false;
            }
            for &e in &outside {
                self.in_union[e] = true;
            }
        }
        true
    }

    fn split(&self, b: usize) -> (Vec<usize>, Vec<usize>) {
        self.blocks[b].iter().partition(|&&e| self.scratch[e])
    }

    fn into_component(self, single: bool) -> Component {
        let size = self.blocks.iter().map(Vec::len).sum();
        let min = self.blocks.iter().flatten().copied().min().unwrap_or(0);
        Component {
            union: self.in_union,
            size,
            min,
            blocks: self.blocks,
            single,
        }
    }
}
