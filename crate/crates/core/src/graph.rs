//! Connected simple graphs, BFS distances and the eccentricity matrix.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::matrix::IntSymMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("graph is disconnected ({components} components)")]
    DisconnectedGraph { components: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Undirected, simple, connected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Validates `pairs` and connectivity. Edges are stored as `(min, max)` in input order.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adj = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(pairs.len());
        let mut seen = HashSet::with_capacity(pairs.len());
        for &(u, v) in pairs {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
            adj[u].push(v);
            adj[v].push(u);
            edges.push(e);
        }
        let g = Self { adj, edges };
        let components = g.component_count();
        if components != 1 {
            return Err(GraphError::DisconnectedGraph { components });
        }
        Ok(g)
    }

    /// Tree from a parent array where `parent[0]` is ignored and `parent[i] < n`.
    pub(crate) fn from_parents(parent: &[usize]) -> Self {
        let pairs: Vec<_> = (1..parent.len()).map(|i| (parent[i], i)).collect();
        Self::from_edge_list(parent.len(), &pairs).expect("parent array describes a tree")
    }

    fn component_count(&self) -> usize {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        count
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.order()
    }

    /// A star `K_{1,n-1}` (including `K_1`, `K_2` and `P_3`).
    pub fn is_star(&self) -> bool {
        self.is_tree() && (self.order() <= 2 || self.adj.iter().any(|a| a.len() + 1 == self.order()))
    }

    pub fn bfs(&self, src: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.order()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == u32::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance_matrix(&self) -> IntSymMatrix {
        let rows: Vec<Vec<u32>> = (0..self.order()).map(|s| self.bfs(s)).collect();
        IntSymMatrix::from_upper(self.order(), |i, j| rows[i][j])
    }

    pub fn ecc_profile(&self) -> EccProfile {
        let dist = self.distance_matrix();
        let ecc: Vec<u32> = dist.rows().map(|r| r.iter().copied().max().unwrap_or(0)).collect();
        let diameter = ecc.iter().copied().max().unwrap_or(0);
        EccProfile { dist, ecc, diameter }
    }

    pub fn eccentricity_matrix(&self) -> IntSymMatrix {
        self.ecc_profile().eccentricity_matrix()
    }

    /// Vertices of a longest shortest path, from one end to the other.
    ///
    /// For trees the double BFS sweep is exact; for other graphs the path is
    /// taken between a pair realizing the diameter.
    pub fn diametrical_path(&self) -> Vec<usize> {
        let (start, end) = if self.is_tree() {
            let a = argmax(&self.bfs(0));
            let b = argmax(&self.bfs(a));
            (a, b)
        } else {
            let prof = self.ecc_profile();
            let a = argmax(&prof.ecc);
            (a, argmax(prof.dist.row(a)))
        };
        let dist = self.bfs(end);
        let mut path = vec![start];
        let mut cur = start;
        while cur != end {
            cur = *self.adj[cur].iter().find(|&&v| dist[v] + 1 == dist[cur]).expect("BFS layers are consecutive");
            path.push(cur);
        }
        path
    }

    /// Parses the edge-list format: `u v` per line, `#` comments, optional leading `n <count>`.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut declared = None;
        let mut pairs = Vec::new();
        let mut first = true;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let err = |message: String| GraphError::Parse { line: line_no, message };
            if fields.first() == Some(&"n") {
                if !first {
                    return Err(err("header `n <count>` must come before any edge".into()));
                }
                if fields.len() != 2 {
                    return Err(err(format!("expected `n <count>`, found `{line}`")));
                }
                let n =
                    fields[1].parse::<usize>().map_err(|e| err(format!("bad vertex count `{}`: {e}", fields[1])))?;
                declared = Some(n);
            } else {
                if fields.len() != 2 {
                    return Err(err(format!("expected `u v`, found `{line}`")));
                }
                let parse = |s: &str| s.parse::<usize>().map_err(|e| err(format!("bad vertex `{s}`: {e}")));
                pairs.push((parse(fields[0])?, parse(fields[1])?));
            }
            first = false;
        }
        let n = match declared {
            Some(n) => n,
            None => pairs
                .iter()
                .map(|&(u, v)| u.max(v) + 1)
                .max()
                .ok_or_else(|| GraphError::Parse { line: 0, message: "no edges and no `n` header".into() })?,
        };
        Self::from_edge_list(n, &pairs)
    }

    /// Inverse of [`Graph::parse_edge_list`]; always writes the `n` header.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.order());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn argmax(xs: &[u32]) -> usize {
    // first maximum, so results do not depend on iteration quirks
    let mut best = 0;
    for (i, &x) in xs.iter().enumerate() {
        if x > xs[best] {
            best = i;
        }
    }
    best
}

/// Distances, eccentricities and diameter of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EccProfile {
    pub dist: IntSymMatrix,
    pub ecc: Vec<u32>,
    pub diameter: u32,
}

impl EccProfile {
    /// Keeps `d(u,v)` exactly where it equals `min(e(u), e(v))`.
    pub fn eccentricity_matrix(&self) -> IntSymMatrix {
        IntSymMatrix::from_upper(self.dist.dim(), |u, v| {
            let d = self.dist.get(u, v);
            if d == self.ecc[u].min(self.ecc[v]) {
                d
            } else {
                0
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &pairs).unwrap()
    }

    fn star(n: usize) -> Graph {
        let pairs: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Graph::from_edge_list(n, &pairs).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Graph::from_edge_list(4, &[(0, 1), (2, 3)]), Err(GraphError::DisconnectedGraph { components: 2 }));
        assert_eq!(Graph::from_edge_list(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::from_edge_list(2, &[(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(Graph::from_edge_list(2, &[(0, 2)]), Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 }));
        assert_eq!(Graph::from_edge_list(0, &[]), Err(GraphError::Empty));
    }

    #[test]
    fn k2_and_p4() {
        let k2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        assert!(k2.is_tree());
        assert_eq!(k2.eccentricity_matrix(), IntSymMatrix::new(2, vec![0, 1, 1, 0]).unwrap());

        let p4 = path(4);
        let prof = p4.ecc_profile();
        assert_eq!(prof.ecc, vec![3, 2, 2, 3]);
        assert_eq!(prof.diameter, 3);
        // hand evaluation of the definition on the six pairs
        let expected = IntSymMatrix::new(4, vec![0, 0, 2, 3, 0, 0, 0, 2, 2, 0, 0, 0, 3, 2, 0, 0]).unwrap();
        assert_eq!(p4.eccentricity_matrix(), expected);
    }

    #[test]
    fn star_profile() {
        let s = star(5);
        let prof = s.ecc_profile();
        assert_eq!(prof.ecc, vec![1, 2, 2, 2, 2]);
        assert_eq!(prof.diameter, 2);
        let e = s.eccentricity_matrix();
        for v in 1..5 {
            assert_eq!(e.get(0, v), 1);
            for w in (v + 1)..5 {
                assert_eq!(e.get(v, w), 2);
            }
        }
        assert!(s.is_star());
        assert!(!path(4).is_star());
    }

    #[test]
    fn non_tree_graph() {
        // C4: every vertex has eccentricity 2
        let c4 = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(!c4.is_tree());
        let e = c4.eccentricity_matrix();
        assert_eq!(e.get(0, 2), 2);
        assert_eq!(e.get(0, 1), 0);
        assert_eq!(c4.diametrical_path().len(), 3);
    }

    #[test]
    fn diametrical_path_of_path() {
        let p = path(7);
        let dp = p.diametrical_path();
        assert_eq!(dp.len(), 7);
        assert_eq!(dp.len() as u32 - 1, p.ecc_profile().diameter);
    }

    #[test]
    fn edge_list_parsing() {
        let g = Graph::parse_edge_list("# P4\n0 1\n1 2\n\n2 3\n").unwrap();
        assert_eq!(g, path(4));
        let g = Graph::parse_edge_list("n 2\n0 1\n").unwrap();
        assert_eq!(g.order(), 2);
        let g = Graph::parse_edge_list(&path(5).to_edge_list()).unwrap();
        assert_eq!(g, path(5));
        assert!(matches!(Graph::parse_edge_list("0 1\n1 x\n"), Err(GraphError::Parse { line: 2, .. })));
        assert!(matches!(Graph::parse_edge_list("0 1\nn 2\n"), Err(GraphError::Parse { line: 2, .. })));
        assert!(matches!(Graph::parse_edge_list("n 3\n0 1\n"), Err(GraphError::DisconnectedGraph { .. })));
        assert!(Graph::parse_edge_list("n 1\n").is_ok());
    }
}
