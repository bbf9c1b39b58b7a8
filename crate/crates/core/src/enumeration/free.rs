//! Free trees in constant amortized time per tree, following Wright,
//! Richmond, Odlyzko and McKay on top of Beyer-Hedetniemi level sequences.

use super::{CanonicalTree, EnumerationError};
use crate::graph::Graph;

/// Largest order accepted unless the caller raises the cap.
pub const DEFAULT_CAP: usize = 16;

/// Largest order accepted at all.
pub const HARD_CAP: usize = 18;

/// Iterator over one representative per isomorphism class of trees on `n` vertices.
#[derive(Debug, Clone)]
pub struct FreeTrees {
    n: usize,
    next: Option<Vec<usize>>,
}

pub fn free_trees(n: usize) -> Result<FreeTrees, EnumerationError> {
    free_trees_with_cap(n, DEFAULT_CAP)
}

/// Like [`free_trees`] with a custom cap, itself limited to [`HARD_CAP`].
pub fn free_trees_with_cap(n: usize, cap: usize) -> Result<FreeTrees, EnumerationError> {
    let cap = cap.min(HARD_CAP);
    if n == 0 {
        return Err(EnumerationError::EmptyOrder);
    }
    if n > cap {
        return Err(EnumerationError::OrderCapExceeded { n, cap });
    }
    let first = if n <= 2 {
        (0..n).collect()
    } else {
        // the path, rooted at its center
        (0..=n / 2).chain(1..n.div_ceil(2)).collect()
    };
    Ok(FreeTrees { n, next: Some(first) })
}

impl FreeTrees {
    pub fn order(&self) -> usize {
        self.n
    }
}

impl Iterator for FreeTrees {
    type Item = CanonicalTree;

    fn next(&mut self) -> Option<CanonicalTree> {
        let candidate = self.next.take()?;
        if self.n <= 2 {
            return Some(CanonicalTree::new(level_sequence_tree(&candidate)));
        }
        let layout = next_valid(candidate)?;
        self.next = next_rooted(&layout, None);
        Some(CanonicalTree::new(level_sequence_tree(&layout)))
    }
}

/// Tree whose preorder depths are `levels` (root at depth 0).
pub fn level_sequence_tree(levels: &[usize]) -> Graph {
    let mut parent = vec![0; levels.len()];
    let mut last_at = vec![0; levels.len() + 1];
    for (i, &l) in levels.iter().enumerate().skip(1) {
        parent[i] = last_at[l - 1];
        last_at[l] = i;
    }
    Graph::from_parents(&parent)
}

/// Successor of a rooted level sequence, changing positions from `p` on.
fn next_rooted(pred: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = pred.len() - 1;
            while pred[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] + 1 != pred[p] {
        q -= 1;
    }
    let mut out = pred.to_vec();
    for i in p..out.len() {
        out[i] = out[i - p + q];
    }
    Some(out)
}

/// Splits at the second child of the root: the first subtree (levels
/// shifted up) and the rest of the tree.
fn split(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = layout.iter().enumerate().skip(2).find(|&(_, &l)| l == 1).map_or(layout.len(), |(i, _)| i);
    let left = layout[1..m].iter().map(|l| l - 1).collect();
    let mut rest = vec![0];
    rest.extend_from_slice(&layout[m..]);
    (left, rest)
}

fn is_canonical_free(left: &[usize], rest: &[usize]) -> bool {
    let lh = left.iter().copied().max().unwrap_or(0);
    let rh = rest.iter().copied().max().unwrap_or(0);
    if rh != lh {
        return rh > lh;
    }
    left.len() < rest.len() || (left.len() == rest.len() && left <= rest)
}

/// Advances `candidate` to the first sequence, at or after it, that is the
/// canonical rooting of a free tree.
fn next_valid(mut candidate: Vec<usize>) -> Option<Vec<usize>> {
    loop {
        let (left, rest) = split(&candidate);
        if is_canonical_free(&left, &rest) {
            return Some(candidate);
        }
        let p = left.len();
        let mut jumped = next_rooted(&candidate, Some(p))?;
        if candidate[p] > 2 {
            let (new_left, _) = split(&jumped);
            let h = new_left.iter().copied().max().unwrap_or(0);
            let len = jumped.len();
            for (slot, level) in jumped[len - (h + 1)..].iter_mut().zip(1..) {
                *slot = level;
            }
        }
        candidate = jumped;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    const COUNTS: [usize; 13] = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301];

    #[test]
    fn known_counts() {
        for n in 1..=13 {
            let trees: Vec<_> = free_trees(n).unwrap().collect();
            assert_eq!(trees.len(), COUNTS[n - 1], "n = {n}");
            let codes: HashSet<&str> = trees.iter().map(|t| t.code()).collect();
            assert_eq!(codes.len(), trees.len(), "duplicate at n = {n}");
            assert!(trees.iter().all(|t| t.order() == n && t.tree().is_tree()));
        }
    }

    #[test]
    fn caps() {
        assert!(matches!(free_trees(17), Err(EnumerationError::OrderCapExceeded { n: 17, cap: 16 })));
        assert!(matches!(free_trees_with_cap(19, 30), Err(EnumerationError::OrderCapExceeded { n: 19, cap: 18 })));
        assert!(matches!(free_trees(0), Err(EnumerationError::EmptyOrder)));
        assert_eq!(free_trees_with_cap(17, 17).unwrap().count(), 48629);
    }

    #[test]
    fn level_sequences() {
        let g = level_sequence_tree(&[0, 1, 2, 1, 1]);
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.degree(1), 2);
    }
}
