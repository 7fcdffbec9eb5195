//! Contiguous orderings: consecutive orderings in which every nested pair of
//! sets shares a first or last element.

use super::consecutive::consecutive_ordering;
use super::family::{
    equivalence_classes, extend_family, has_triple_violation, is_separator,
    is_subset, member_cut_indices, SetFamily,
};
use crate::error::{Error, Result};
use crate::perm::{ElementOrdering, Permutation};

/// Solves a separator-free family.
///
/// Rejects on a triple violation, contracts every equivalence class to one
/// representative, adds the differences of nested minimal/maximal pairs and
/// asks for a consecutive ordering of the result. Classes are expanded in
/// ascending element order.
pub fn contiguous_separator_free(f: &SetFamily) -> Result<Option<ElementOrdering>> {
    if let Some(i) = (0..f.len()).find(|&i| is_separator(f, i)) {
        return Err(Error::Contract(format!(
            "family has separator {:?}",
            f.sets()[i]
        )));
    }
    if f.ground() <= 1 || f.is_empty() {
        return Ok(Some(Permutation::identity(f.ground())));
    }
    if has_triple_violation(f) {
        return Ok(None);
    }

    let classes = equivalence_classes(f);
    let mut class_of = vec![0; f.ground()];
    for (c, class) in classes.iter().enumerate() {
        for &e in class {
            class_of[e] = c;
        }
    }
    let contracted = SetFamily::new(
        classes.len(),
        f.sets().iter().map(|s| {
            let mut t: Vec<usize> = s.iter().map(|&e| class_of[e]).collect();
            t.dedup();
            t
        }),
    )?;
    let extended = extend_family(&contracted)?;
    let Some(order) = consecutive_ordering(&extended) else {
        return Ok(None);
    };
    let expanded: Vec<usize> = order
        .iter()
        .flat_map(|c| classes[c].iter().copied())
        .collect();
    Ok(Some(Permutation::new(expanded)?))
}

/// Solved layout of one member cut.
struct CutLayout {
    /// Elements of the cut in order, oriented so that every proper subset in
    /// the family touches the front (when they all touch one end).
    order: Vec<usize>,
    /// Length of the front segment covered by the proper subsets, or `None`
    /// when the cut has no proper subsets.
    anchored: Option<usize>,
    /// Proper subsets touch both ends.
    two_sided: bool,
}

/// A contiguous ordering of the family, or `None` when none exists.
///
/// Member cuts are solved innermost first. Each scope (a member cut, or the
/// whole ground set on top) is reduced to a separator-free quotient in which
/// every maximal inner cut `Y` is contracted. A contracted cut keeps what its
/// enclosing sets need to see of it: one element when nothing inside it must
/// reach an outer end, otherwise two elements `y1 y2` plus the singleton
/// `{y1}` marking the end that its inner sets touch.
pub fn contiguous_ordering(f: &SetFamily) -> Option<ElementOrdering> {
    let n = f.ground();
    if n <= 1 || f.is_empty() {
        return Some(Permutation::identity(n));
    }
    let sets = f.sets();
    let mut cuts = member_cut_indices(f);
    cuts.sort_by_key(|&c| (sets[c].len(), sets[c][0]));

    // parent[x] = smallest cut strictly containing cut x.
    let parent: Vec<Option<usize>> = cuts
        .iter()
        .enumerate()
        .map(|(x, &c)| {
            cuts[x + 1..]
                .iter()
                .position(|&d| is_subset(&sets[c], &sets[d]))
                .map(|off| x + 1 + off)
        })
        .collect();
    let has_superset = |c: usize| {
        sets.iter()
            .any(|s| s.len() > sets[c].len() && is_subset(&sets[c], s))
    };

    let mut solved: Vec<Option<CutLayout>> = (0..cuts.len()).map(|_| None).collect();
    for x in 0..cuts.len() {
        let children: Vec<usize> = (0..x).filter(|&y| parent[y] == Some(x)).collect();
        let scope = &sets[cuts[x]];
        let order = solve_scope(f, scope, Some(cuts[x]), &cuts, &children, &solved, &has_superset)?;
        let layout = orient(f, cuts[x], order);
        if layout.two_sided && has_superset(cuts[x]) {
            return None;
        }
        solved[x] = Some(layout);
    }
    let top: Vec<usize> = (0..cuts.len()).filter(|&y| parent[y].is_none()).collect();
    let ground: Vec<usize> = (0..n).collect();
    let order = solve_scope(f, &ground, None, &cuts, &top, &solved, &has_superset)?;
    let perm = Permutation::new(order).ok()?;
    debug_assert!(super::family::is_contiguous(f, &perm));
    Some(perm)
}

#[allow(clippy::too_many_arguments)]
fn solve_scope(
    f: &SetFamily,
    scope: &[usize],
    scope_set: Option<usize>,
    cuts: &[usize],
    children: &[usize],
    solved: &[Option<CutLayout>],
    has_superset: &dyn Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let sets = f.sets();
    // Quotient ids: plain elements first, then child tokens.
    let mut qid = vec![usize::MAX; f.ground()];
    let mut tokens: Vec<Token> = Vec::new();
    let mut child_of = vec![usize::MAX; f.ground()];
    for (ci, &y) in children.iter().enumerate() {
        for &e in &sets[cuts[y]] {
            child_of[e] = ci;
        }
    }
    for &e in scope {
        if child_of[e] == usize::MAX {
            qid[e] = tokens.len();
            tokens.push(Token::Elem(e));
        }
    }
    let mut child_ids: Vec<(usize, Option<usize>)> = Vec::new();
    let mut extra_sets: Vec<Vec<usize>> = Vec::new();
    for (ci, &y) in children.iter().enumerate() {
        let layout = solved[y].as_ref().expect("children are solved first");
        let keep_anchor = has_superset(cuts[y]);
        let first = tokens.len();
        match layout.anchored {
            Some(len) if keep_anchor => {
                tokens.push(Token::Front(ci));
                tokens.push(Token::Back(ci));
                child_ids.push((first, Some(first + 1)));
                extra_sets.push(vec![first]);
                extra_sets.push(vec![first, first + 1]);
                debug_assert!(len < layout.order.len());
            }
            _ => {
                tokens.push(Token::Whole(ci));
                child_ids.push((first, None));
                if keep_anchor {
                    extra_sets.push(vec![first]);
                }
            }
        }
    }

    let mut qsets = Vec::new();
    for (si, s) in sets.iter().enumerate() {
        let inside_scope = match scope_set {
            Some(sc) => si == sc || (s.len() < sets[sc].len() && is_subset(s, &sets[sc])),
            None => true,
        };
        if !inside_scope {
            continue;
        }
        let c = child_of[s[0]];
        if c != usize::MAX && s.iter().all(|&e| child_of[e] == c) {
            continue;
        }
        let mut q = Vec::new();
        let mut seen_child = vec![false; children.len()];
        for &e in s {
            let c = child_of[e];
            if c == usize::MAX {
                q.push(qid[e]);
            } else if !seen_child[c] {
                seen_child[c] = true;
                let (a, b) = child_ids[c];
                q.push(a);
                q.extend(b);
            }
        }
        qsets.push(q);
    }
    qsets.extend(extra_sets);

    let quotient = SetFamily::new(tokens.len(), qsets).ok()?;
    let qorder = contiguous_separator_free(&quotient)
        .expect("scope quotients are separator-free")?;

    let mut out = Vec::with_capacity(scope.len());
    let mut placed = vec![false; children.len()];
    for t in qorder.iter() {
        match tokens[t] {
            Token::Elem(e) => out.push(e),
            Token::Whole(ci) | Token::Front(ci) | Token::Back(ci) => {
                if placed[ci] {
                    continue;
                }
                placed[ci] = true;
                let layout = solved[children[ci]].as_ref().unwrap();
                if matches!(tokens[t], Token::Back(_)) {
                    out.extend(layout.order.iter().rev());
                } else {
                    out.extend(layout.order.iter());
                }
            }
        }
    }
    Some(out)
}

#[derive(Clone, Copy)]
enum Token {
    Elem(usize),
    Whole(usize),
    Front(usize),
    Back(usize),
}

/// Records which ends of cut `c` its proper subsets touch and orients the
/// layout so that a one-sided cut is anchored at the front.
fn orient(f: &SetFamily, c: usize, mut order: Vec<usize>) -> CutLayout {
    let sets = f.sets();
    let cut = &sets[c];
    let perm_pos = {
        let mut pos = vec![usize::MAX; f.ground()];
        for (p, &e) in order.iter().enumerate() {
            pos[e] = p;
        }
        pos
    };
    let last = order.len() - 1;
    let (mut front, mut back) = (0usize, 0usize);
    for s in sets {
        if s.len() < cut.len() && is_subset(s, cut) {
            let lo = s.iter().map(|&e| perm_pos[e]).min().unwrap();
            let hi = s.iter().map(|&e| perm_pos[e]).max().unwrap();
            if lo == 0 {
                front = front.max(s.len());
            }
            if hi == last {
                back = back.max(s.len());
            }
        }
    }
    let two_sided = front > 0 && back > 0;
    let anchored = if front > 0 {
        Some(front)
    } else if back > 0 {
        order.reverse();
        Some(back)
    } else {
        None
    };
    CutLayout {
        order,
        anchored,
        two_sided,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_force_contiguous;
    use crate::orderings::family::is_contiguous;

    fn fam(ground: usize, sets: &[&[usize]]) -> SetFamily {
        SetFamily::new(ground, sets.iter().map(|s| s.to_vec())).unwrap()
    }

    #[test]
    fn separator_free_examples() {
        let f = fam(4, &[&[0, 1, 2, 3], &[1, 2]]);
        let p = contiguous_separator_free(&f).unwrap().unwrap();
        assert!(is_contiguous(&f, &p), "{p}");
        assert!(contiguous_separator_free(&fam(3, &[&[0], &[1], &[2], &[0, 1, 2]]))
            .unwrap()
            .is_none());
        let p = contiguous_separator_free(&fam(3, &[&[0, 1], &[1, 2]]))
            .unwrap()
            .unwrap();
        assert!(p.as_slice() == [0, 1, 2] || p.as_slice() == [2, 1, 0]);
        assert!(contiguous_separator_free(&fam(4, &[&[0, 1], &[2, 3]])).is_err());
    }

    #[test]
    fn general_examples() {
        let f = fam(4, &[&[0, 1], &[2, 3], &[0, 1, 2, 3]]);
        let p = contiguous_ordering(&f).unwrap();
        assert!(is_contiguous(&f, &p), "{p}");
        assert_eq!(contiguous_ordering(&fam(1, &[&[0]])).unwrap().as_slice(), &[0]);
        assert!(contiguous_ordering(&fam(3, &[&[0, 1], &[1, 2], &[0, 2]])).is_none());
    }

    #[test]
    fn inner_sets_of_a_cut_must_face_the_outer_end() {
        // {0,1,2} is a cut whose inner sets {0} and {2} sit at both of its
        // ends, yet both must also sit at an end of {0..4}.
        let f = fam(5, &[&[0, 1, 2, 3, 4], &[0, 1, 2], &[0], &[2]]);
        assert!(contiguous_ordering(&f).is_none());
        // Dropping the outer set leaves a valid instance.
        let f = fam(5, &[&[0, 1, 2], &[0], &[2]]);
        let p = contiguous_ordering(&f).unwrap();
        assert!(is_contiguous(&f, &p), "{p}");
    }

    #[test]
    fn nested_cuts_are_spliced_with_the_right_orientation() {
        // {1,2,3} must be reversed so that {3} and {2,3} face the front of
        // {0,...,5}.
        let f = fam(
            7,
            &[&[1, 2, 3], &[2, 3], &[3], &[4, 5], &[0, 1, 2, 3, 4, 5]],
        );
        let p = contiguous_ordering(&f).unwrap();
        assert!(is_contiguous(&f, &p), "{p}");
        let f = fam(
            7,
            &[&[0, 1, 2, 3, 4, 5, 6], &[1, 2, 3], &[2, 3], &[3], &[4, 5], &[0, 1, 2, 3, 4, 5]],
        );
        assert!(brute_force_contiguous(&f).unwrap().is_none());
        assert!(contiguous_ordering(&f).is_none());
    }
}
