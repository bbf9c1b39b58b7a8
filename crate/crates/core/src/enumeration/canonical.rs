use std::cmp::Ordering;

use crate::graph::Graph;

/// A tree together with its center-rooted AHU code.
///
/// Two trees are isomorphic exactly when their codes are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalTree {
    tree: Graph,
    code: String,
}

impl CanonicalTree {
    pub fn new(tree: Graph) -> Self {
        let code = canonical_code(&tree);
        Self { tree, code }
    }

    pub fn tree(&self) -> &Graph {
        &self.tree
    }

    pub fn code(&self) -> &str {
        &self.code
    }

    pub fn into_tree(self) -> Graph {
        self.tree
    }

    pub fn order(&self) -> usize {
        self.tree.order()
    }

    pub fn diameter(&self) -> usize {
        self.tree.diametrical_path().len() - 1
    }
}

impl PartialOrd for CanonicalTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.code.cmp(&other.code)
    }
}

/// One or two central vertices of a tree, from the middle of a diametrical path.
pub fn centers(tree: &Graph) -> Vec<usize> {
    let path = tree.diametrical_path();
    let d = path.len() - 1;
    if d % 2 == 0 {
        vec![path[d / 2]]
    } else {
        vec![path[d / 2], path[d / 2 + 1]]
    }
}

/// AHU code of the subtree hanging from `root`, never entering `blocked`.
fn rooted_code(tree: &Graph, root: usize, blocked: Option<usize>) -> String {
    let n = tree.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![root];
    parent[root] = root;
    if let Some(b) = blocked {
        parent[b] = b;
    }
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        for &v in tree.neighbors(u) {
            if parent[v] == usize::MAX {
                parent[v] = u;
                order.push(v);
            }
        }
        i += 1;
    }
    let mut child_codes: Vec<Vec<String>> = vec![Vec::new(); n];
    let mut code = String::new();
    for &u in order.iter().rev() {
        let mut kids = std::mem::take(&mut child_codes[u]);
        kids.sort_unstable();
        code = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
        code.push('(');
        for k in &kids {
            code.push_str(k);
        }
        code.push(')');
        if u != root {
            child_codes[parent[u]].push(code.clone());
        }
    }
    code
}

/// Center-rooted AHU code. Bicentral trees get the two half codes, sorted and
/// concatenated.
pub fn canonical_code(tree: &Graph) -> String {
    match centers(tree)[..] {
        [c] => rooted_code(tree, c, None),
        [c1, c2] => {
            let mut halves = [rooted_code(tree, c1, Some(c2)), rooted_code(tree, c2, Some(c1))];
            halves.sort_unstable();
            halves.concat()
        }
        _ => unreachable!("a tree has one or two centers"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;

    #[test]
    fn small_codes() {
        let k1 = Graph::from_edge_list(1, &[]).unwrap();
        assert_eq!(canonical_code(&k1), "()");
        let k2 = FamilySpec::Path { n: 2 }.build().unwrap();
        assert_eq!(canonical_code(&k2), "()()");
        assert_eq!(canonical_code(&FamilySpec::Star { n: 4 }.build().unwrap()), "(()()())");
        assert_eq!(canonical_code(&FamilySpec::Path { n: 4 }.build().unwrap()), "(())(())");
    }

    #[test]
    fn relabeling_invariance() {
        let a = FamilySpec::even(6, 1, 2, 1).build().unwrap();
        let n = a.order();
        let perm: Vec<usize> = (0..n).map(|i| (i * 5 + 3) % n).collect();
        let edges: Vec<(usize, usize)> = a.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        let b = Graph::from_edge_list(n, &edges).unwrap();
        assert_eq!(canonical_code(&a), canonical_code(&b));
        let c = FamilySpec::even(6, 0, 2, 2).build().unwrap();
        assert_ne!(canonical_code(&a), canonical_code(&c));
    }

    #[test]
    fn mirrored_caterpillars_agree() {
        let a = FamilySpec::odd(5, 1, 3).build_unchecked().unwrap();
        let b = FamilySpec::odd(5, 3, 1).build_unchecked().unwrap();
        assert_eq!(canonical_code(&a), canonical_code(&b));
    }
}
