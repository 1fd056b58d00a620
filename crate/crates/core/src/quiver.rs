//! Finite connected acyclic quivers, the line-oriented quiver file format, and
//! the double quiver.
//!
//! Vertices are labelled `1..=r` in files and in error messages; internally
//! they are 0-based indices.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("quiver has a directed cycle through vertex {vertex}")]
    Cycle { vertex: usize },
    #[error("quiver is disconnected: vertex {vertex} is not reachable from vertex 1")]
    Disconnected { vertex: usize },
    #[error("duplicate arrow name `{0}`")]
    DuplicateArrowName(String),
    #[error("arrow `{name}` refers to vertex {vertex}, but the quiver has {vertex_count} vertices")]
    VertexOutOfRange {
        name: String,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("a quiver needs at least one vertex")]
    NoVertices,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    /// 0-based tail (source) vertex.
    pub tail: usize,
    /// 0-based head (target) vertex.
    pub head: usize,
}

/// A validated quiver: connected, acyclic, uniquely named arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Validates and builds a quiver from 0-based arrow endpoints.
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Self, QuiverError> {
        if vertex_count == 0 {
            return Err(QuiverError::NoVertices);
        }
        let mut names = HashSet::new();
        for a in &arrows {
            for v in [a.tail, a.head] {
                if v >= vertex_count {
                    return Err(QuiverError::VertexOutOfRange {
                        name: a.name.clone(),
                        vertex: v + 1,
                        vertex_count,
                    });
                }
            }
            if !names.insert(a.name.as_str()) {
                return Err(QuiverError::DuplicateArrowName(a.name.clone()));
            }
        }
        let q = Quiver {
            vertex_count,
            arrows,
        };
        q.check_acyclic()?;
        q.check_connected()?;
        Ok(q)
    }

    /// Convenience constructor from 1-based `(name, tail, head)` triples.
    pub fn from_edges(vertex_count: usize, edges: &[(&str, usize, usize)]) -> Result<Self, QuiverError> {
        let mut arrows = Vec::with_capacity(edges.len());
        for &(name, tail, head) in edges {
            for v in [tail, head] {
                if v == 0 || v > vertex_count {
                    return Err(QuiverError::VertexOutOfRange {
                        name: name.to_string(),
                        vertex: v,
                        vertex_count,
                    });
                }
            }
            arrows.push(Arrow {
                name: name.to_string(),
                tail: tail - 1,
                head: head - 1,
            });
        }
        Self::new(vertex_count, arrows)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// The same quiver with arrow `index` reversed (useful for orientation checks).
    pub fn with_reversed_arrow(&self, index: usize) -> Result<Self, QuiverError> {
        let mut arrows = self.arrows.clone();
        let a = &mut arrows[index];
        std::mem::swap(&mut a.tail, &mut a.head);
        Self::new(self.vertex_count, arrows)
    }

    fn check_acyclic(&self) -> Result<(), QuiverError> {
        // Kahn's algorithm; whatever is left over lies on or behind a cycle.
        let n = self.vertex_count;
        let mut indegree = vec![0usize; n];
        for a in &self.arrows {
            indegree[a.head] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = stack.pop() {
            removed += 1;
            for a in self.arrows.iter().filter(|a| a.tail == v) {
                indegree[a.head] -= 1;
                if indegree[a.head] == 0 {
                    stack.push(a.head);
                }
            }
        }
        if removed < n {
            let vertex = (0..n).find(|&v| indegree[v] > 0).unwrap_or(0);
            return Err(QuiverError::Cycle { vertex: vertex + 1 });
        }
        Ok(())
    }

    fn check_connected(&self) -> Result<(), QuiverError> {
        let n = self.vertex_count;
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                let other = if a.tail == v {
                    a.head
                } else if a.head == v {
                    a.tail
                } else {
                    continue;
                };
                if !seen[other] {
                    seen[other] = true;
                    stack.push(other);
                }
            }
        }
        match seen.iter().position(|&s| !s) {
            Some(v) => Err(QuiverError::Disconnected { vertex: v + 1 }),
            None => Ok(()),
        }
    }

    /// `[V]`: entry `(i, j)` counts arrows `i -> j`.
    pub fn arrow_matrix(&self) -> IntMatrix {
        let n = self.vertex_count;
        let mut counts = vec![vec![0i64; n]; n];
        for a in &self.arrows {
            counts[a.tail][a.head] += 1;
        }
        IntMatrix::from_rows(&counts)
    }

    /// Adjacency matrix `C = [V] + [V]^t` of the double quiver.
    pub fn adjacency(&self) -> IntMatrix {
        let v = self.arrow_matrix();
        &v + &v.transpose()
    }

    /// Arrows of the double quiver: each arrow `α` is followed by its opposite `α*`.
    pub fn double(&self) -> Vec<DoubleArrow> {
        let mut out = Vec::with_capacity(2 * self.arrows.len());
        for (k, a) in self.arrows.iter().enumerate() {
            out.push(DoubleArrow {
                name: a.name.clone(),
                tail: a.tail,
                head: a.head,
                starred: false,
                partner: 2 * k + 1,
            });
            out.push(DoubleArrow {
                name: format!("{}*", a.name),
                tail: a.head,
                head: a.tail,
                starred: true,
                partner: 2 * k,
            });
        }
        out
    }

    /// Adjacency matrix together with `[V]` and the double arrows.
    pub fn double_and_adjacency(&self) -> (Vec<DoubleArrow>, IntMatrix, IntMatrix) {
        (self.double(), self.arrow_matrix(), self.adjacency())
    }

    /// Tits form `q(d) = Σ d_i^2 - Σ_arrows d_tail d_head`.
    pub fn tits_form(&self, d: &[i64]) -> i64 {
        assert_eq!(d.len(), self.vertex_count);
        let diag: i64 = d.iter().map(|x| x * x).sum();
        let off: i64 = self.arrows.iter().map(|a| d[a.tail] * d[a.head]).sum();
        diag - off
    }

    /// Serializes in the quiver file format.
    pub fn to_file_string(&self) -> String {
        let mut s = format!("vertices {}\n", self.vertex_count);
        for a in &self.arrows {
            s.push_str(&format!("arrow {} {} {}\n", a.name, a.tail + 1, a.head + 1));
        }
        s
    }
}

/// An arrow of the double quiver `Q̄`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DoubleArrow {
    pub name: String,
    pub tail: usize,
    pub head: usize,
    /// True for the added opposite arrows `α*`.
    pub starred: bool,
    /// Index of the paired arrow (`α <-> α*`) in the double arrow list.
    pub partner: usize,
}

/// Parses the quiver file format:
///
/// ```text
/// # comment
/// vertices 3
/// arrow a 1 2
/// arrow b 2 3
/// ```
pub fn parse_quiver(text: &str) -> Result<Quiver, QuiverError> {
    let mut vertex_count: Option<usize> = None;
    let mut arrows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| QuiverError::Parse {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "vertices" => {
                if vertex_count.is_some() {
                    return Err(err("`vertices` given twice".into()));
                }
                if fields.len() != 2 {
                    return Err(err("expected `vertices <count>`".into()));
                }
                let r: usize = fields[1]
                    .parse()
                    .map_err(|_| err(format!("invalid vertex count `{}`", fields[1])))?;
                if r == 0 {
                    return Err(QuiverError::NoVertices);
                }
                vertex_count = Some(r);
            }
            "arrow" => {
                let r = vertex_count.ok_or_else(|| err("`arrow` before `vertices`".into()))?;
                if fields.len() != 4 {
                    return Err(err("expected `arrow <name> <tail> <head>`".into()));
                }
                let name = fields[1].to_string();
                let mut ends = [0usize; 2];
                for (slot, f) in ends.iter_mut().zip(&fields[2..]) {
                    let v: usize = f.parse().map_err(|_| err(format!("invalid vertex `{f}`")))?;
                    if v == 0 || v > r {
                        return Err(QuiverError::VertexOutOfRange {
                            name: name.clone(),
                            vertex: v,
                            vertex_count: r,
                        });
                    }
                    *slot = v - 1;
                }
                arrows.push(Arrow {
                    name,
                    tail: ends[0],
                    head: ends[1],
                });
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    let r = vertex_count.ok_or(QuiverError::Parse {
        line: 0,
        message: "missing `vertices` line".into(),
    })?;
    Quiver::new(r, arrows)
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_file_string())
    }
}
