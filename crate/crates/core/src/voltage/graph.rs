use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// Simple undirected graph stored as sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Graph on `vertex_count` vertices and no edges.
    pub fn empty(vertex_count: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); vertex_count],
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, duplicate
    /// edges and out-of-range endpoints.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {vertex_count} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({v}, {})",
                    w[0]
                )));
            }
        }
        Ok(Graph { adjacency })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency
            .get(u)
            .is_some_and(|list| list.binary_search(&v).is_ok())
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adjacency.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    /// One component. The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == n
    }

    /// BFS 2-colouring over every component.
    pub fn is_bipartite(&self) -> bool {
        let n = self.vertex_count();
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut queue = VecDeque::new();
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &w in &self.adjacency[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    pub fn is_cubic(&self) -> bool {
        self.adjacency.iter().all(|list| list.len() == 3)
    }

    /// Adjacency-list text: one line `v: n1 n2 n3` per vertex.
    pub fn to_adjacency_text(&self) -> String {
        self.to_string()
    }

    /// Parses the format written by [`Graph::to_adjacency_text`].
    pub fn from_adjacency_text(text: &str) -> Result<Self> {
        let mut adjacency = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::InvalidGraph(format!("malformed line {}: {line:?}", lineno + 1));
            let (head, tail) = line.split_once(':').ok_or_else(bad)?;
            let v: usize = head.trim().parse().map_err(|_| bad())?;
            if v != adjacency.len() {
                return Err(Error::InvalidGraph(format!(
                    "expected vertex {} on line {}, found {v}",
                    adjacency.len(),
                    lineno + 1
                )));
            }
            let list = tail
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            adjacency.push(list);
        }
        let n = adjacency.len();
        let mut edges = Vec::new();
        for (u, list) in adjacency.iter().enumerate() {
            for &v in list {
                if v >= n || !adjacency[v].contains(&u) {
                    return Err(Error::InvalidGraph(format!("asymmetric entry {u} -> {v}")));
                }
                if u < v {
                    edges.push((u, v));
                }
                if u == v {
                    return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
                }
            }
        }
        Graph::from_edges(n, &edges)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, list) in self.adjacency.iter().enumerate() {
            write!(f, "{v}:")?;
            for w in list {
                write!(f, " {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
