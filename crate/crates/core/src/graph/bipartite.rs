//! Simple bipartite graphs with labeled sides.

use std::fmt::Write as _;

use serde::Serialize;

/// A simple bipartite graph.
///
/// Vertices are addressed either per side (`left[a]`, `right[b]`) or by a
/// combined id: `0..L` for the left side followed by `L..L+R` for the right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BipartiteGraph {
    left: Vec<String>,
    right: Vec<String>,
    /// Sorted right-neighbors of each left vertex.
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left: Vec<String>, right: Vec<String>) -> Self {
        let adj = vec![Vec::new(); left.len()];
        BipartiteGraph { left, right, adj }
    }

    /// Adds the edge `left[a] - right[b]`; repeated edges are ignored.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a < self.left.len() && b < self.right.len(), "edge out of range");
        if let Err(pos) = self.adj[a].binary_search(&b) {
            self.adj[a].insert(pos, b);
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn left_len(&self) -> usize {
        self.left.len()
    }

    pub fn right_len(&self) -> usize {
        self.right.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn left_label(&self, a: usize) -> &str {
        &self.left[a]
    }

    pub fn right_label(&self, b: usize) -> &str {
        &self.right[b]
    }

    /// Label of a combined vertex id.
    pub fn label(&self, v: usize) -> &str {
        if v < self.left.len() {
            &self.left[v]
        } else {
            &self.right[v - self.left.len()]
        }
    }

    pub fn left_neighbors(&self, a: usize) -> &[usize] {
        &self.adj[a]
    }

    pub fn is_left(&self, v: usize) -> bool {
        v < self.left.len()
    }

    /// Combined adjacency lists, sorted.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let l = self.left.len();
        let mut out = vec![Vec::new(); self.vertex_count()];
        for (a, nbrs) in self.adj.iter().enumerate() {
            for &b in nbrs {
                out[a].push(l + b);
                out[l + b].push(a);
            }
        }
        for list in &mut out {
            list.sort_unstable();
        }
        out
    }

    /// Biadjacency matrix, rows = left side.
    pub fn biadjacency(&self) -> Vec<Vec<bool>> {
        self.adj
            .iter()
            .map(|nbrs| {
                let mut row = vec![false; self.right.len()];
                for &b in nbrs {
                    row[b] = true;
                }
                row
            })
            .collect()
    }

    /// Graphviz rendering; left vertices as boxes, right as ellipses.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        writeln!(s, "graph \"{name}\" {{").unwrap();
        for (a, label) in self.left.iter().enumerate() {
            writeln!(s, "  l{a} [label=\"{label}\", shape=box];").unwrap();
        }
        for (b, label) in self.right.iter().enumerate() {
            writeln!(s, "  r{b} [label=\"{label}\"];").unwrap();
        }
        for (a, nbrs) in self.adj.iter().enumerate() {
            for b in nbrs {
                writeln!(s, "  l{a} -- r{b};").unwrap();
            }
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_are_simple() {
        let mut g = BipartiteGraph::new(vec!["x1".into()], vec!["t1".into(), "t2".into()]);
        g.add_edge(0, 1);
        g.add_edge(0, 1);
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(0, 1) && !g.has_edge(0, 0));
        assert_eq!(g.adjacency(), vec![vec![2], vec![], vec![0]]);
        assert_eq!(g.label(2), "t2");
    }

    #[test]
    fn dot_lists_every_edge() {
        let mut g = BipartiteGraph::new(vec!["x1".into(), "x2".into()], vec!["t1".into()]);
        g.add_edge(0, 0);
        g.add_edge(1, 0);
        let dot = g.to_dot("g");
        assert!(dot.starts_with("graph \"g\" {"));
        assert_eq!(dot.matches(" -- ").count(), 2);
    }
}
