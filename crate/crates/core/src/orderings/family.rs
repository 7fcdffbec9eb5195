use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::ElementOrdering;
use crate::text::Tokens;

/// A family of nonempty subsets of the ground set `0..ground`.
///
/// Sets are stored sorted and deduplicated, in first-occurrence order.
/// Ground elements may belong to no set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    ground: usize,
    sets: Vec<Vec<usize>>,
}

impl SetFamily {
    pub fn new<I, S>(ground: usize, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = usize>,
    {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for set in sets {
            let mut s: Vec<usize> = set.into_iter().collect();
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(Error::Contract("set families hold nonempty sets".into()));
            }
            if let Some(&e) = s.iter().find(|&&e| e >= ground) {
                return Err(Error::Contract(format!(
                    "element {e} outside ground set 0..{ground}"
                )));
            }
            if seen.insert(s.clone()) {
                out.push(s);
            }
        }
        Ok(SetFamily { ground, sets: out })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains_set(&self, set: &[usize]) -> bool {
        self.sets.iter().any(|s| s == set)
    }

    /// Serializes in the set-family file format accepted by [`parse_family`].
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.ground, self.sets.len());
        for set in &self.sets {
            s.push_str(&set.len().to_string());
            for e in set {
                s.push_str(&format!(" {e}"));
            }
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Parses `n m` followed by `m` records `k e1 .. ek`.
pub fn parse_family(text: &str) -> Result<SetFamily> {
    let mut tokens = Tokens::new(text);
    let (_, ground) = tokens.next::<usize>("ground size")?;
    let (_, m) = tokens.next::<usize>("set count")?;
    let mut sets = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, k) = tokens.next::<usize>("set size")?;
        if k == 0 {
            return Err(Error::parse(line, "empty set"));
        }
        let mut set = Vec::with_capacity(k);
        for _ in 0..k {
            let (l, e) = tokens.next::<usize>("element")?;
            if e >= ground {
                return Err(Error::parse(l, format!("element {e} outside 0..{ground}")));
            }
            set.push(e);
        }
        sets.push(set);
    }
    tokens.finish()?;
    SetFamily::new(ground, sets)
}

// Relations between sorted sets.

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    if a.len() > b.len() {
        return false;
    }
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

pub(crate) fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// True when `a ∩ b`, `a \ b` and `b \ a` are all nonempty.
pub fn overlaps(a: &[usize], b: &[usize]) -> bool {
    let common = intersection_size(a, b);
    common > 0 && common < a.len() && common < b.len()
}

fn is_trivial(set_len: usize, ground: usize) -> bool {
    set_len <= 1 || set_len == ground
}

/// Every set occupies a contiguous block of positions.
pub fn is_consecutive(f: &SetFamily, order: &ElementOrdering) -> bool {
    if order.len() != f.ground() {
        return false;
    }
    f.sets().iter().all(|s| block(s, order).is_some())
}

/// 0-based `(first, last)` positions of `s` when it is a contiguous block.
pub(crate) fn block(s: &[usize], order: &ElementOrdering) -> Option<(usize, usize)> {
    let lo = s.iter().map(|&e| order.position(e)).min()?;
    let hi = s.iter().map(|&e| order.position(e)).max()?;
    (hi - lo + 1 == s.len()).then_some((lo, hi))
}

/// Consecutive, and every nested pair shares its first or last position.
pub fn is_contiguous(f: &SetFamily, order: &ElementOrdering) -> bool {
    if order.len() != f.ground() {
        return false;
    }
    let Some(blocks) = f
        .sets()
        .iter()
        .map(|s| block(s, order))
        .collect::<Option<Vec<_>>>()
    else {
        return false;
    };
    for (i, inner) in f.sets().iter().enumerate() {
        for (j, outer) in f.sets().iter().enumerate() {
            if i != j && is_subset(inner, outer) {
                let (a, b) = (blocks[i], blocks[j]);
                if a.0 != b.0 && a.1 != b.1 {
                    return false;
                }
            }
        }
    }
    true
}

/// `c` is non-trivial and no set of `f` overlaps it.
pub fn is_cut(f: &SetFamily, c: &[usize]) -> bool {
    let mut c = c.to_vec();
    c.sort_unstable();
    c.dedup();
    if c.iter().any(|&e| e >= f.ground()) || is_trivial(c.len(), f.ground()) {
        return false;
    }
    f.sets().iter().all(|s| !overlaps(s, &c))
}

/// Indices of the member sets that are cuts of the family.
pub fn member_cut_indices(f: &SetFamily) -> Vec<usize> {
    let cuts: Vec<usize> = (0..f.len())
        .filter(|&i| is_cut(f, &f.sets()[i]))
        .collect();
    for (x, &i) in cuts.iter().enumerate() {
        for &j in &cuts[x + 1..] {
            assert!(
                !overlaps(&f.sets()[i], &f.sets()[j]),
                "member cuts must form a laminar family"
            );
        }
    }
    cuts
}

/// The member sets that are cuts; the result is laminar.
pub fn member_cuts(f: &SetFamily) -> Vec<Vec<usize>> {
    member_cut_indices(f)
        .into_iter()
        .map(|i| f.sets()[i].clone())
        .collect()
}

/// A non-trivial member that no other member contains or overlaps.
pub fn is_separator(f: &SetFamily, idx: usize) -> bool {
    let s = &f.sets()[idx];
    if is_trivial(s.len(), f.ground()) {
        return false;
    }
    f.sets()
        .iter()
        .enumerate()
        .all(|(j, t)| j == idx || is_subset(t, s) || intersection_size(s, t) == 0)
}

pub fn is_separator_free(f: &SetFamily) -> bool {
    (0..f.len()).all(|i| !is_separator(f, i))
}

/// Partition of the ground set into maximal classes of elements that no set
/// separates. Classes are sorted and listed by smallest element.
pub fn equivalence_classes(f: &SetFamily) -> Vec<Vec<usize>> {
    let mut signature: Vec<Vec<usize>> = vec![Vec::new(); f.ground()];
    for (i, s) in f.sets().iter().enumerate() {
        for &e in s {
            signature[e].push(i);
        }
    }
    let mut classes: BTreeMap<&[usize], Vec<usize>> = BTreeMap::new();
    for (e, sig) in signature.iter().enumerate() {
        classes.entry(sig.as_slice()).or_default().push(e);
    }
    let mut out: Vec<Vec<usize>> = classes.into_values().collect();
    out.sort_unstable_by_key(|c| c[0]);
    out
}

/// Inclusion-wise minimal and maximal members, in family order.
pub fn minimal_maximal(f: &SetFamily) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let (mins, maxs) = minimal_maximal_indices(f);
    let pick = |ix: Vec<usize>| ix.into_iter().map(|i| f.sets()[i].clone()).collect();
    (pick(mins), pick(maxs))
}

fn minimal_maximal_indices(f: &SetFamily) -> (Vec<usize>, Vec<usize>) {
    let sets = f.sets();
    let proper = |a: &[usize], b: &[usize]| a.len() < b.len() && is_subset(a, b);
    let mins = (0..sets.len())
        .filter(|&i| !sets.iter().any(|t| proper(t, &sets[i])))
        .collect();
    let maxs = (0..sets.len())
        .filter(|&i| !sets.iter().any(|t| proper(&sets[i], t)))
        .collect();
    (mins, maxs)
}

/// Some maximal set properly contains at least three minimal sets, which
/// rules out any contiguous ordering.
pub fn has_triple_violation(f: &SetFamily) -> bool {
    let (mins, maxs) = minimal_maximal_indices(f);
    let sets = f.sets();
    maxs.iter().any(|&b| {
        mins.iter()
            .filter(|&&a| a != b && is_subset(&sets[a], &sets[b]))
            .count()
            >= 3
    })
}

/// Adds `B \ A` for every minimal `A` properly inside a maximal `B`.
///
/// A consecutive ordering of the result is a contiguous ordering of `f`.
/// Requires `f` to be separator-free.
pub fn extend_family(f: &SetFamily) -> Result<SetFamily> {
    if let Some(i) = (0..f.len()).find(|&i| is_separator(f, i)) {
        return Err(Error::Contract(format!(
            "extend_family needs a separator-free family; set {:?} is a separator",
            f.sets()[i]
        )));
    }
    let (mins, maxs) = minimal_maximal_indices(f);
    let sets = f.sets();
    let mut out = sets.to_vec();
    for &b in &maxs {
        for &a in &mins {
            if a != b && is_subset(&sets[a], &sets[b]) {
                let diff: Vec<usize> = sets[b]
                    .iter()
                    .copied()
                    .filter(|e| sets[a].binary_search(e).is_err())
                    .collect();
                out.push(diff);
            }
        }
    }
    SetFamily::new(f.ground(), out)
}
