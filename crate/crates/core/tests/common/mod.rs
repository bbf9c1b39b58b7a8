//! Brute-force tree classes from Prüfer sequences, for cross-checking the generator.

use std::collections::HashSet;

pub fn prufer_edges(seq: &[usize]) -> Vec<(usize, usize)> {
    let n = seq.len() + 2;
    let mut degree = [1u8; 32];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let mut rest = (0..n).filter(|&v| degree[v] == 1);
    edges.push((rest.next().unwrap(), rest.next().unwrap()));
    edges
}

const MAX_N: usize = 16;

struct Adjacency {
    degree: [usize; MAX_N],
    nbrs: [[usize; MAX_N]; MAX_N],
}

/// Rooted code as a bit string: 1, children in sorted order, 0.
fn rooted_bits(adj: &Adjacency, v: usize, parent: usize) -> (u32, u64) {
    let mut kids = [(0u32, 0u64); MAX_N];
    let mut k = 0;
    for &u in &adj.nbrs[v][..adj.degree[v]] {
        if u != parent {
            kids[k] = rooted_bits(adj, u, v);
            k += 1;
        }
    }
    kids[..k].sort_unstable();
    let (mut len, mut bits) = (1u32, 1u64);
    for &(l, b) in &kids[..k] {
        bits = (bits << l) | b;
        len += l;
    }
    (len + 1, bits << 1)
}

/// Root-independent canonical form: the smaller rooted code at the centers,
/// which are found by repeatedly stripping leaves.
pub fn free_bits(n: usize, edges: &[(usize, usize)]) -> u64 {
    let mut adj = Adjacency { degree: [0; MAX_N], nbrs: [[0; MAX_N]; MAX_N] };
    for &(u, v) in edges {
        adj.nbrs[u][adj.degree[u]] = v;
        adj.degree[u] += 1;
        adj.nbrs[v][adj.degree[v]] = u;
        adj.degree[v] += 1;
    }
    let mut left = adj.degree;
    let mut layer = [0usize; MAX_N];
    let mut len = 0;
    for (v, &deg) in left[..n].iter().enumerate() {
        if deg <= 1 {
            layer[len] = v;
            len += 1;
        }
    }
    let mut remaining = n;
    while remaining > 2 {
        remaining -= len;
        let mut next = [0usize; MAX_N];
        let mut next_len = 0;
        for &leaf in &layer[..len] {
            for &u in &adj.nbrs[leaf][..adj.degree[leaf]] {
                left[u] -= 1;
                if left[u] == 1 {
                    next[next_len] = u;
                    next_len += 1;
                }
            }
        }
        layer = next;
        len = next_len;
    }
    layer[..len].iter().map(|&r| rooted_bits(&adj, r, usize::MAX).1).min().unwrap()
}

/// Isomorphism classes of labeled trees on `n` vertices, by brute force.
pub fn prufer_classes(n: usize) -> HashSet<u64> {
    if n <= 2 {
        let edges: &[(usize, usize)] = if n == 2 { &[(0, 1)] } else { &[] };
        return HashSet::from([free_bits(n, edges)]);
    }
    let len = n - 2;
    let mut seq = vec![0; len];
    let mut out = HashSet::new();
    loop {
        out.insert(free_bits(n, &prufer_edges(&seq)));
        let mut i = 0;
        while i < len {
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
        if i == len {
            return out;
        }
    }
}
