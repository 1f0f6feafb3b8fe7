//! Zero-divisor graphs: `Γ(R)` on `Z(R)∖{0}` with `a -- b` iff `a ≠ b` and
//! `ab = 0`, and its quotient `Γ(R/∼)` on the associate classes.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::associates::AssocData;
use crate::factor::bits::Bits;
use crate::ring::{Elem, Ring};

/// Vertex count beyond which graphs are not built.
pub const MAX_VERTICES: usize = 1 << 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph would have {0} vertices (limit {MAX_VERTICES})")]
    TooLarge(usize),
    #[error("unknown graph mode `{0}` (expected plain or quotient)")]
    Mode(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphMode {
    Plain,
    /// Vertices are `∼`-classes.
    Quotient,
}

impl FromStr for GraphMode {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(GraphMode::Plain),
            "quotient" | "associate" | "associate-quotient" => Ok(GraphMode::Quotient),
            other => Err(GraphError::Mode(other.to_string())),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ZdGraph {
    mode: GraphMode,
    /// Members of each vertex, smallest first; vertices sorted by it.
    vertices: Vec<Vec<Elem>>,
    labels: Vec<String>,
    adj: Vec<Bits>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Census {
    /// Complete subgraphs `K^r` with `r ≥ 2`, counted up to the cap.
    pub count: u64,
    pub overflow: bool,
}

#[derive(Serialize)]
struct GraphJson<'a> {
    mode: GraphMode,
    vertices: &'a [String],
    edges: Vec<[&'a str; 2]>,
}

impl ZdGraph {
    pub fn build(ring: &Ring, mode: GraphMode) -> Result<ZdGraph, GraphError> {
        let sharp = ring.nonzero_nonunits();
        if sharp.len() > MAX_VERTICES {
            return Err(GraphError::TooLarge(sharp.len()));
        }
        let vertices: Vec<Vec<Elem>> = match mode {
            GraphMode::Plain => sharp.iter().map(|&a| vec![a]).collect(),
            GraphMode::Quotient => {
                let data = AssocData::get(ring);
                let mut by_ideal: Vec<Vec<Elem>> = vec![Vec::new(); data.ideal_count()];
                for &a in sharp {
                    by_ideal[data.ideal_of(a) as usize].push(a);
                }
                let mut v: Vec<Vec<Elem>> = by_ideal.into_iter().filter(|c| !c.is_empty()).collect();
                v.sort();
                v
            }
        };
        let n = vertices.len();
        let mut adj = vec![Bits::new(n); n];
        for i in 0..n {
            for j in i + 1..n {
                let zero = ring.mul(vertices[i][0], vertices[j][0]) == 0;
                if mode == GraphMode::Quotient {
                    for &a in &vertices[i] {
                        for &b in &vertices[j] {
                            assert_eq!(
                                ring.mul(a, b) == 0,
                                zero,
                                "quotient adjacency depends on representatives"
                            );
                        }
                    }
                }
                if zero {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        let labels = vertices
            .iter()
            .map(|v| match mode {
                GraphMode::Plain => ring.format_elem(v[0]),
                GraphMode::Quotient => format!("[{}]", ring.format_elem(v[0])),
            })
            .collect();
        Ok(ZdGraph {
            mode,
            vertices,
            labels,
            adj,
        })
    }

    pub fn mode(&self) -> GraphMode {
        self.mode
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vec<Elem>] {
        &self.vertices
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    /// Edges as vertex index pairs `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.vertex_count())
            .flat_map(|i| self.adj[i].iter().filter(move |&j| j > i).map(move |j| (i, j)))
            .collect()
    }

    /// Edges by representative element.
    pub fn edge_elems(&self) -> Vec<(Elem, Elem)> {
        self.edges()
            .into_iter()
            .map(|(i, j)| (self.vertices[i][0], self.vertices[j][0]))
            .collect()
    }

    fn distances_from(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for v in self.adj[u].iter() {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    /// Largest eccentricity; `None` when disconnected. Empty and single-vertex
    /// graphs have diameter 0.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.vertex_count() {
            for d in self.distances_from(s) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    /// Clique number by Bron–Kerbosch with pivoting. 0 for the empty graph.
    pub fn clique_number(&self) -> usize {
        self.max_clique().len()
    }

    /// A maximum clique, as vertex indices.
    pub fn max_clique(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut best = Vec::new();
        let mut current = Vec::new();
        self.bron_kerbosch(&mut current, Bits::full(n), Bits::new(n), &mut best);
        best
    }

    fn bron_kerbosch(&self, r: &mut Vec<usize>, mut p: Bits, mut x: Bits, best: &mut Vec<usize>) {
        if p.is_empty() {
            if x.is_empty() && r.len() > best.len() {
                *best = r.clone();
            }
            return;
        }
        if r.len() + p.count() <= best.len() {
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .max_by_key(|&u| count_and(&p, &self.adj[u]))
            .expect("p is non-empty");
        let candidates: Vec<usize> = p.iter().filter(|&v| !self.adj[pivot].contains(v)).collect();
        for v in candidates {
            r.push(v);
            self.bron_kerbosch(r, and(&p, &self.adj[v]), and(&x, &self.adj[v]), best);
            r.pop();
            p.remove(v);
            x.insert(v);
        }
    }

    /// Counts complete subgraphs on at least two vertices, stopping at `cap`.
    pub fn clique_census(&self, cap: u64) -> Census {
        let n = self.vertex_count();
        let mut count = 0u64;
        let mut overflow = false;
        for v in 0..n {
            let mut later = Bits::new(n);
            for u in self.adj[v].iter().filter(|&u| u > v) {
                later.insert(u);
            }
            if !self.census_from(&later, cap, &mut count) {
                overflow = true;
                break;
            }
        }
        Census { count, overflow }
    }

    fn census_from(&self, candidates: &Bits, cap: u64, count: &mut u64) -> bool {
        for u in candidates.iter() {
            if *count >= cap {
                return false;
            }
            *count += 1;
            let mut next = and(candidates, &self.adj[u]);
            for w in next.clone().iter().filter(|&w| w <= u) {
                next.remove(w);
            }
            if !self.census_from(&next, cap, count) {
                return false;
            }
        }
        true
    }

    /// Deterministic DOT text.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let name = match self.mode {
            GraphMode::Plain => "zero_divisors",
            GraphMode::Quotient => "zero_divisor_classes",
        };
        writeln!(out, "graph {name} {{").unwrap();
        for l in &self.labels {
            writeln!(out, "  \"{l}\";").unwrap();
        }
        for (i, j) in self.edges() {
            writeln!(out, "  \"{}\" -- \"{}\";", self.labels[i], self.labels[j]).unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let edges = self
            .edges()
            .into_iter()
            .map(|(i, j)| [self.labels[i].as_str(), self.labels[j].as_str()])
            .collect();
        serde_json::to_value(GraphJson {
            mode: self.mode,
            vertices: &self.labels,
            edges,
        })
        .expect("graph serializes")
    }
}

fn and(a: &Bits, b: &Bits) -> Bits {
    let mut out = a.clone();
    out.intersect_with(b);
    out
}

fn count_and(a: &Bits, b: &Bits) -> usize {
    and(a, b).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(spec: &str, mode: GraphMode) -> ZdGraph {
        ZdGraph::build(&Ring::parse(spec).unwrap(), mode).unwrap()
    }

    #[test]
    fn z12_edges() {
        let g = graph("Z/12", GraphMode::Plain);
        assert_eq!(g.labels(), ["2", "3", "4", "6", "8", "9", "10"]);
        assert_eq!(
            g.edge_elems(),
            vec![(2, 6), (3, 4), (3, 8), (4, 6), (4, 9), (6, 8), (6, 10), (8, 9)]
        );
        assert_eq!(g.clique_number(), 2);
        assert!(g.is_connected());
        assert!(g.diameter().unwrap() <= 3);
    }

    #[test]
    fn small_cases() {
        let g = graph("Z/4", GraphMode::Plain);
        assert_eq!(g.vertex_count(), 1);
        assert!(g.edges().is_empty());
        assert_eq!(g.diameter(), Some(0));
        assert_eq!(g.to_dot(), "graph zero_divisors {\n  \"2\";\n}\n");

        let g = graph("Z/6", GraphMode::Plain);
        assert_eq!(g.diameter(), Some(2));
        let q = graph("Z/6", GraphMode::Quotient);
        assert_eq!(q.labels(), ["[2]", "[3]"]);
        assert_eq!(q.edges(), vec![(0, 1)]);

        let g = graph("GF(7)", GraphMode::Plain);
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(g.clique_number(), 0);
        assert_eq!(g.to_dot(), "graph zero_divisors {\n}\n");
    }

    #[test]
    fn clique_numbers() {
        assert_eq!(graph("Z/30", GraphMode::Plain).clique_number(), 3);
        assert_eq!(graph("GF(2) x Z/4", GraphMode::Plain).clique_number(), 2);
        assert_eq!(graph("GF(2) x GF(3) x GF(5) x GF(2)", GraphMode::Plain).clique_number(), 4);
    }

    #[test]
    fn census() {
        // Z/6: edges 2-3, 3-4 and no triangle
        let g = graph("Z/6", GraphMode::Plain);
        assert_eq!(g.clique_census(100), Census { count: 2, overflow: false });
        // triangles in F2 x F3 x F5 pick a non-zero value in each factor
        let g = graph("Z/30", GraphMode::Plain);
        let c = g.clique_census(1_000_000);
        assert!(!c.overflow);
        assert_eq!(c.count as usize, g.edges().len() + 8);
        assert!(g.clique_census(3).overflow);
    }
}
