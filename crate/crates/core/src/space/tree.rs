//! Weighted metric trees: points live on edges, distances are path lengths.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One weighted edge of a metric tree. `len` is the metric length of the edge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeEdge {
    pub a: String,
    pub b: String,
    pub len: f64,
}

/// A finite metric tree given by named vertices and weighted edges.
///
/// The edge list doubles as the identifier space for points: a point on the
/// tree is an edge index plus an offset from the edge's `a` endpoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricTree {
    pub vertices: Vec<String>,
    pub edges: Vec<TreeEdge>,
}

impl MetricTree {
    /// Builds a tree and checks it is connected, acyclic and positively weighted.
    pub fn new(vertices: Vec<String>, edges: Vec<TreeEdge>) -> Result<Self> {
        let tree = MetricTree { vertices, edges };
        tree.validate()?;
        Ok(tree)
    }

    pub fn validate(&self) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::InvalidParameter("tree has no vertices".into()));
        }
        // Points live on edges, so a tree with no edges has no points.
        if self.edges.is_empty() {
            return Err(Error::InvalidParameter("tree has no edges".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for v in &self.vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidParameter(format!("duplicate vertex {v:?}")));
            }
        }
        for e in &self.edges {
            if !(e.len > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "edge {}-{} has nonpositive length {}",
                    e.a, e.b, e.len
                )));
            }
            if self.vertex_index(&e.a).is_none() || self.vertex_index(&e.b).is_none() {
                return Err(Error::InvalidParameter(format!(
                    "edge {}-{} references an unknown vertex",
                    e.a, e.b
                )));
            }
            if e.a == e.b {
                return Err(Error::InvalidParameter(format!("self-loop at {}", e.a)));
            }
        }
        // A connected graph on n vertices with n-1 edges is a tree.
        if self.edges.len() + 1 != self.vertices.len() {
            return Err(Error::InvalidParameter(format!(
                "{} edges on {} vertices cannot form a tree",
                self.edges.len(),
                self.vertices.len()
            )));
        }
        let mut reached = vec![false; self.vertices.len()];
        let mut stack = vec![0usize];
        reached[0] = true;
        while let Some(v) = stack.pop() {
            for (u, _, _) in self.neighbors(v) {
                if !reached[u] {
                    reached[u] = true;
                    stack.push(u);
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return Err(Error::InvalidParameter("tree is not connected".into()));
        }
        Ok(())
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// Neighbors of vertex `v` as (vertex index, edge index, edge length).
    fn neighbors(&self, v: usize) -> Vec<(usize, usize, f64)> {
        let name = &self.vertices[v];
        let mut out = Vec::new();
        for (ei, e) in self.edges.iter().enumerate() {
            if &e.a == name {
                out.push((self.vertex_index(&e.b).unwrap(), ei, e.len));
            } else if &e.b == name {
                out.push((self.vertex_index(&e.a).unwrap(), ei, e.len));
            }
        }
        out
    }

    /// Vertex-to-vertex path as a list of vertex indices, endpoints included.
    pub fn vertex_path(&self, from: usize, to: usize) -> Vec<usize> {
        if from == to {
            return vec![from];
        }
        let mut parent = vec![usize::MAX; self.vertices.len()];
        let mut stack = vec![from];
        parent[from] = from;
        while let Some(v) = stack.pop() {
            if v == to {
                break;
            }
            for (u, _, _) in self.neighbors(v) {
                if parent[u] == usize::MAX {
                    parent[u] = v;
                    stack.push(u);
                }
            }
        }
        let mut path = vec![to];
        let mut v = to;
        while v != from {
            v = parent[v];
            path.push(v);
        }
        path.reverse();
        path
    }

    pub fn vertex_distance(&self, from: usize, to: usize) -> f64 {
        let path = self.vertex_path(from, to);
        let mut d = 0.0;
        for w in path.windows(2) {
            d += self.edge_between(w[0], w[1]).unwrap().1;
        }
        d
    }

    /// Edge joining two adjacent vertices as (edge index, length, reversed),
    /// where `reversed` means the edge is stored as (to, from).
    fn edge_between(&self, from: usize, to: usize) -> Option<(usize, f64, bool)> {
        let fa = &self.vertices[from];
        let fb = &self.vertices[to];
        for (ei, e) in self.edges.iter().enumerate() {
            if &e.a == fa && &e.b == fb {
                return Some((ei, e.len, false));
            }
            if &e.a == fb && &e.b == fa {
                return Some((ei, e.len, true));
            }
        }
        None
    }

    pub fn edge_len(&self, edge: usize) -> Result<f64> {
        self.edges
            .get(edge)
            .map(|e| e.len)
            .ok_or_else(|| Error::InvalidPoint(format!("edge index {edge} out of range")))
    }

    fn edge_endpoints(&self, edge: usize) -> (usize, usize) {
        let e = &self.edges[edge];
        (
            self.vertex_index(&e.a).unwrap(),
            self.vertex_index(&e.b).unwrap(),
        )
    }

    pub fn check_point(&self, edge: usize, offset: f64) -> Result<()> {
        let len = self.edge_len(edge)?;
        if !(0.0..=len + 1e-9).contains(&offset) || !offset.is_finite() {
            return Err(Error::InvalidPoint(format!(
                "offset {offset} outside edge of length {len}"
            )));
        }
        Ok(())
    }

    /// Distance between two on-edge points.
    pub fn point_distance(&self, e1: usize, t1: f64, e2: usize, t2: f64) -> f64 {
        if e1 == e2 {
            return (t1 - t2).abs();
        }
        // The path must leave through one endpoint of each edge.
        let (a1, b1) = self.edge_endpoints(e1);
        let (a2, b2) = self.edge_endpoints(e2);
        let l1 = self.edges[e1].len;
        let l2 = self.edges[e2].len;
        let mut best = f64::INFINITY;
        for (u, du) in [(a1, t1), (b1, l1 - t1)] {
            for (v, dv) in [(a2, t2), (b2, l2 - t2)] {
                let d = du + self.vertex_distance(u, v) + dv;
                if d < best {
                    best = d;
                }
            }
        }
        best
    }

    /// The point at arc length `s` along the path from (e1,t1) to (e2,t2).
    pub fn point_walk(&self, e1: usize, t1: f64, e2: usize, t2: f64, s: f64) -> (usize, f64) {
        if e1 == e2 {
            let t = t1 + (t2 - t1).signum() * s.min((t2 - t1).abs());
            return (e1, t.clamp(0.0, self.edges[e1].len));
        }
        let (a1, b1) = self.edge_endpoints(e1);
        let (a2, b2) = self.edge_endpoints(e2);
        let l1 = self.edges[e1].len;
        let l2 = self.edges[e2].len;
        // Pick the exit/entry endpoints realizing the distance.
        let mut best = (f64::INFINITY, a1, a2);
        for (u, du) in [(a1, t1), (b1, l1 - t1)] {
            for (v, dv) in [(a2, t2), (b2, l2 - t2)] {
                let d = du + self.vertex_distance(u, v) + dv;
                if d < best.0 {
                    best = (d, u, v);
                }
            }
        }
        let (_, exit, entry) = best;
        // March along: (e1 towards exit), vertex path, (entry towards t2).
        let mut remaining = s;
        let first_leg = if exit == a1 { t1 } else { l1 - t1 };
        if remaining <= first_leg {
            let t = if exit == a1 { t1 - remaining } else { t1 + remaining };
            return (e1, t.clamp(0.0, l1));
        }
        remaining -= first_leg;
        let vpath = self.vertex_path(exit, entry);
        for w in vpath.windows(2) {
            let (ei, len, reversed) = self.edge_between(w[0], w[1]).unwrap();
            if remaining <= len {
                let t = if reversed { len - remaining } else { remaining };
                return (ei, t.clamp(0.0, len));
            }
            remaining -= len;
        }
        // Final leg: from `entry` into edge e2 toward (e2,t2).
        let t = if entry == a2 {
            remaining
        } else {
            l2 - remaining
        };
        (e2, t.clamp(0.0, l2))
    }

    /// Canonical representation of a vertex as an on-edge point.
    pub fn vertex_point(&self, v: usize) -> (usize, f64) {
        for (ei, e) in self.edges.iter().enumerate() {
            if self.vertex_index(&e.a).unwrap() == v {
                return (ei, 0.0);
            }
            if self.vertex_index(&e.b).unwrap() == v {
                return (ei, e.len);
            }
        }
        // validate() guarantees every vertex touches an edge (n >= 2);
        // a single-vertex tree has no points at all, reject earlier.
        unreachable!("vertex {v} touches no edge")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star() -> MetricTree {
        // r -- a (1), r -- b (2), r -- c (0.5)
        MetricTree::new(
            vec!["r".into(), "a".into(), "b".into(), "c".into()],
            vec![
                TreeEdge { a: "r".into(), b: "a".into(), len: 1.0 },
                TreeEdge { a: "r".into(), b: "b".into(), len: 2.0 },
                TreeEdge { a: "r".into(), b: "c".into(), len: 0.5 },
            ],
        )
        .unwrap()
    }

    #[test]
    fn leaf_to_leaf_distance_sums_path() {
        let t = star();
        // leaf a = (edge 0, offset 1), leaf b = (edge 1, offset 2)
        assert!((t.point_distance(0, 1.0, 1, 2.0) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn same_edge_distance_is_offset_gap() {
        let t = star();
        assert!((t.point_distance(1, 0.25, 1, 1.5) - 1.25).abs() < 1e-12);
    }

    #[test]
    fn rejects_cycle() {
        let r = MetricTree::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![
                TreeEdge { a: "x".into(), b: "y".into(), len: 1.0 },
                TreeEdge { a: "y".into(), b: "z".into(), len: 1.0 },
                TreeEdge { a: "z".into(), b: "x".into(), len: 1.0 },
            ],
        );
        assert!(r.is_err());
    }

    #[test]
    fn rejects_disconnected() {
        let r = MetricTree::new(
            vec!["x".into(), "y".into(), "z".into(), "w".into()],
            vec![
                TreeEdge { a: "x".into(), b: "y".into(), len: 1.0 },
                TreeEdge { a: "x".into(), b: "y".into(), len: 2.0 },
                TreeEdge { a: "z".into(), b: "w".into(), len: 1.0 },
            ],
        );
        assert!(r.is_err());
    }

    #[test]
    fn walk_consumes_arc_length() {
        let t = star();
        // From leaf a toward leaf b, the path has length 3; s = 0.75 crosses r? No:
        // first leg (a -> r) has length 1, so s = 0.75 stays on edge 0 at offset 0.25.
        let (e, off) = t.point_walk(0, 1.0, 1, 2.0, 0.75);
        assert_eq!(e, 0);
        assert!((off - 0.25).abs() < 1e-12);
        // s = 1.5 is 0.5 into edge 1.
        let (e, off) = t.point_walk(0, 1.0, 1, 2.0, 1.5);
        assert_eq!(e, 1);
        assert!((off - 0.5).abs() < 1e-12);
    }
}
