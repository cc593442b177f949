//! Edge-labeled graphs (diagrams) and the algebra presentations they
//! define.
//!
//! A diagram has vertices `1..=n` and undirected edges labeled by an
//! integer `m ≥ 3` or `∞`. Each diagram presents an algebra on idempotent
//! generators `p1, …, pn`:
//!
//! * every vertex contributes `p_k² = p_k`;
//! * every non-adjacent pair commutes, `p_i p_j = p_j p_i`;
//! * every edge `{i, j}` with finite label `m` contributes the pair of
//!   braid-like relations `alt(i, j, m) = lower(i, j, m)` and
//!   `alt(j, i, m) = lower(j, i, m)`, where `alt(x, y, m)` is the
//!   alternating word `x y x y …` of length `m` and the lower-order side
//!   depends on the label: `t·p_x` for `m = 3`, `t·p_x p_y` for `m = 4`,
//!   `t1·p_x p_y p_x − t2·p_x` for `m = 5`, and `t·alt(x, y, m−2)` for
//!   `m ≥ 6` (a proportionality convention for high labels; the tool
//!   flags it whenever such labels are present);
//! * an edge labeled `∞` contributes no relation beyond the idempotents.
//!
//! The module also provides the named families used throughout (paths,
//! forks, cycles, stars, and the numbered example graphs with their
//! free-pair witness words), plus the three diagram surgeries — adding a
//! leaf, adding an edge, splitting a vertex — under which growth can only
//! increase.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeffs::ParamScalar;
use crate::freealg::{MonomialOrder, NCPoly, Word};

/// Errors from diagram construction, presets, and file parsing.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoxeterError {
    /// Vertex index outside `1..=n`.
    #[error("vertex {vertex} outside 1..={max}")]
    VertexOutOfRange {
        /// The offending vertex.
        vertex: u32,
        /// Number of vertices.
        max: u8,
    },
    /// Edges must join distinct vertices.
    #[error("self-loop at vertex {vertex}")]
    SelfLoop {
        /// The offending vertex.
        vertex: u8,
    },
    /// Each pair carries at most one edge.
    #[error("duplicate edge {{{i}, {j}}}")]
    DuplicateEdge {
        /// Smaller endpoint.
        i: u8,
        /// Larger endpoint.
        j: u8,
    },
    /// Finite labels start at 3.
    #[error("edge label {label} is invalid; labels are integers ≥ 3 or \"inf\"")]
    InvalidLabel {
        /// The offending label.
        label: u32,
    },
    /// A diagram needs at least one vertex and at most 255.
    #[error("vertex count {count} outside 1..=255")]
    BadVertexCount {
        /// The offending count.
        count: u32,
    },
    /// Unknown preset family name.
    #[error("unknown preset family {name:?}")]
    UnknownPreset {
        /// The name as given.
        name: String,
    },
    /// The family requires a rank argument.
    #[error("preset family {name:?} requires a rank argument")]
    MissingRank {
        /// The family name.
        name: String,
    },
    /// The family does not take a rank argument.
    #[error("preset family {name:?} does not take an argument")]
    UnexpectedRank {
        /// The family name.
        name: String,
    },
    /// The rank argument could not be parsed or is out of range.
    #[error("invalid rank {rank:?} for family {name:?}: {reason}")]
    InvalidRank {
        /// The family name.
        name: String,
        /// The rank as given.
        rank: String,
        /// Constraint violated.
        reason: String,
    },
    /// No example graph with this tag.
    #[error("unknown example tag {tag:?} (valid tags are 4.1 through 4.22)")]
    UnknownFigTag {
        /// The tag as given.
        tag: String,
    },
    /// A graph file that could not be read as JSON.
    #[error("graph file is not valid JSON: {message}")]
    BadJson {
        /// Parser message.
        message: String,
    },
    /// A graph file with an unsupported version.
    #[error("unsupported graph file version {version} (expected 1)")]
    BadVersion {
        /// The version as given.
        version: u32,
    },
    /// Splitting a vertex can only move actual neighbors.
    #[error("vertex {vertex} is not a neighbor of {pivot}")]
    NotANeighbor {
        /// The vertex that was to be moved.
        vertex: u8,
        /// The vertex being split.
        pivot: u8,
    },
}

/// An edge label: an integer `m ≥ 3` or `∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// A finite label.
    Finite(u32),
    /// The unbounded label.
    Infinite,
}

impl Label {
    /// The finite value, if any.
    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinite => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => f.write_str("inf"),
        }
    }
}

/// A finite edge-labeled graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxGraph {
    n: u8,
    edges: BTreeMap<(u8, u8), Label>,
}

impl CoxGraph {
    /// An edgeless diagram on `n ≥ 1` vertices.
    pub fn new(n: u8) -> Result<CoxGraph, CoxeterError> {
        if n == 0 {
            return Err(CoxeterError::BadVertexCount { count: 0 });
        }
        Ok(CoxGraph {
            n,
            edges: BTreeMap::new(),
        })
    }

    /// A diagram from an explicit edge list.
    pub fn with_edges(n: u8, edges: &[(u8, u8, Label)]) -> Result<CoxGraph, CoxeterError> {
        let mut g = CoxGraph::new(n)?;
        for &(i, j, label) in edges {
            g.insert_edge(i, j, label)?;
        }
        Ok(g)
    }

    fn check_vertex(&self, v: u8) -> Result<(), CoxeterError> {
        if v == 0 || v > self.n {
            return Err(CoxeterError::VertexOutOfRange {
                vertex: u32::from(v),
                max: self.n,
            });
        }
        Ok(())
    }

    fn insert_edge(&mut self, i: u8, j: u8, label: Label) -> Result<(), CoxeterError> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(CoxeterError::SelfLoop { vertex: i });
        }
        if let Label::Finite(m) = label {
            if m < 3 {
                return Err(CoxeterError::InvalidLabel { label: m });
            }
        }
        let key = (i.min(j), i.max(j));
        if self.edges.contains_key(&key) {
            return Err(CoxeterError::DuplicateEdge { i: key.0, j: key.1 });
        }
        self.edges.insert(key, label);
        Ok(())
    }

    /// Number of vertices.
    pub fn n_vertices(&self) -> u8 {
        self.n
    }

    /// The label on `{i, j}`, if they are adjacent.
    pub fn label(&self, i: u8, j: u8) -> Option<Label> {
        self.edges.get(&(i.min(j), i.max(j))).copied()
    }

    /// Edges as `(i, j, label)` with `i < j`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (u8, u8, Label)> + '_ {
        self.edges.iter().map(|(&(i, j), &l)| (i, j, l))
    }

    /// Number of edges.
    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Neighbors of `v` with labels, ascending.
    pub fn neighbors(&self, v: u8) -> Vec<(u8, Label)> {
        let mut out = Vec::new();
        for (i, j, l) in self.edges() {
            if i == v {
                out.push((j, l));
            } else if j == v {
                out.push((i, l));
            }
        }
        out.sort_unstable_by_key(|&(u, _)| u);
        out
    }

    /// Number of neighbors of `v`.
    pub fn degree(&self, v: u8) -> usize {
        self.neighbors(v).len()
    }

    /// Whether some finite label is at least `m`.
    pub fn has_label_at_least(&self, m: u32) -> bool {
        self.edges
            .values()
            .any(|l| matches!(l, Label::Finite(k) if *k >= m))
    }

    /// Connected components as sorted vertex lists, sorted by first vertex.
    pub fn components(&self) -> Vec<Vec<u8>> {
        let mut seen = vec![false; self.n as usize + 1];
        let mut out = Vec::new();
        for start in 1..=self.n {
            if seen[start as usize] {
                continue;
            }
            let mut comp = vec![start];
            seen[start as usize] = true;
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for (u, _) in self.neighbors(v) {
                    if !seen[u as usize] {
                        seen[u as usize] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Whether the diagram is connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// The induced subdiagram on `vertices`, relabeled `1..=k` in the given
    /// order.
    ///
    /// # Panics
    /// If `vertices` repeats or mentions an unknown vertex.
    pub fn induced(&self, vertices: &[u8]) -> CoxGraph {
        let mut position = vec![0u8; self.n as usize + 1];
        for (k, &v) in vertices.iter().enumerate() {
            assert!(v >= 1 && v <= self.n, "unknown vertex {v}");
            assert!(position[v as usize] == 0, "repeated vertex {v}");
            position[v as usize] = (k + 1) as u8;
        }
        let mut g = CoxGraph::new(vertices.len() as u8).expect("nonempty vertex list");
        for (i, j, l) in self.edges() {
            let (pi, pj) = (position[i as usize], position[j as usize]);
            if pi != 0 && pj != 0 {
                g.insert_edge(pi, pj, l).expect("induced edges are valid");
            }
        }
        g
    }

    /// The natural monomial order on this diagram's generators.
    pub fn monomial_order(&self) -> MonomialOrder {
        MonomialOrder::natural(self.n)
    }

    /// The defining relations:
    /// one idempotent per vertex, one commutation per non-adjacent pair,
    /// and two braid-like relations per finitely-labeled edge.
    pub fn relations(&self) -> Vec<NCPoly> {
        let mut out = Vec::new();
        for k in 1..=self.n {
            let p = NCPoly::generator(k);
            out.push(p.mul(&p).sub(&p));
        }
        for i in 1..self.n {
            for j in (i + 1)..=self.n {
                match self.label(i, j) {
                    None => {
                        let ij = NCPoly::generator(i).mul(&NCPoly::generator(j));
                        let ji = NCPoly::generator(j).mul(&NCPoly::generator(i));
                        out.push(ij.sub(&ji));
                    }
                    Some(Label::Finite(m)) => {
                        out.push(braid_relation(i, j, m));
                        out.push(braid_relation(j, i, m));
                    }
                    Some(Label::Infinite) => {}
                }
            }
        }
        out
    }

    /// Add a new leaf vertex `n+1` attached to `attach`.
    pub fn add_leaf(&self, attach: u8, label: Label) -> Result<CoxGraph, CoxeterError> {
        self.check_vertex(attach)?;
        let count = u32::from(self.n) + 1;
        if count > 255 {
            return Err(CoxeterError::BadVertexCount { count });
        }
        let mut g = self.clone();
        g.n += 1;
        g.insert_edge(attach, g.n, label)?;
        Ok(g)
    }

    /// Add an edge between existing non-adjacent vertices.
    pub fn add_edge(&self, i: u8, j: u8, label: Label) -> Result<CoxGraph, CoxeterError> {
        let mut g = self.clone();
        g.insert_edge(i, j, label)
            .map(|()| g)
    }

    /// Split vertex `pivot`: a new vertex `n+1` is joined to `pivot` by a
    /// plain (label 3) edge, and the neighbors listed in `moved` re-attach
    /// to the new vertex with their original labels.
    pub fn split_vertex(&self, pivot: u8, moved: &[u8]) -> Result<CoxGraph, CoxeterError> {
        self.check_vertex(pivot)?;
        let count = u32::from(self.n) + 1;
        if count > 255 {
            return Err(CoxeterError::BadVertexCount { count });
        }
        for &v in moved {
            if self.label(pivot, v).is_none() {
                return Err(CoxeterError::NotANeighbor { vertex: v, pivot });
            }
        }
        let mut g = CoxGraph::new(self.n + 1)?;
        let new = self.n + 1;
        for (i, j, l) in self.edges() {
            let mut a = i;
            let mut b = j;
            if a == pivot && moved.contains(&b) {
                a = new;
            } else if b == pivot && moved.contains(&a) {
                b = new;
            }
            g.insert_edge(a, b, l)?;
        }
        g.insert_edge(pivot, new, Label::Finite(3))?;
        Ok(g)
    }

    /// All label-preserving vertex bijections from `self` onto `other`
    /// (empty when the graphs are not isomorphic). Entry `k-1` of each
    /// returned map is the image of vertex `k`.
    pub fn isomorphisms_onto(&self, other: &CoxGraph) -> Vec<Vec<u8>> {
        let n = self.n;
        if n != other.n || self.n_edges() != other.n_edges() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut image = vec![0u8; usize::from(n)];
        let mut used = vec![false; usize::from(n) + 1];
        self.extend_map(other, 1, &mut image, &mut used, &mut out);
        out
    }

    fn extend_map(
        &self,
        other: &CoxGraph,
        v: u8,
        image: &mut [u8],
        used: &mut [bool],
        out: &mut Vec<Vec<u8>>,
    ) {
        if v > self.n {
            out.push(image.to_vec());
            return;
        }
        'candidates: for w in 1..=self.n {
            if used[usize::from(w)] || self.degree(v) != other.degree(w) {
                continue;
            }
            for prev in 1..v {
                if self.label(v, prev) != other.label(w, image[usize::from(prev) - 1]) {
                    continue 'candidates;
                }
            }
            image[usize::from(v) - 1] = w;
            used[usize::from(w)] = true;
            self.extend_map(other, v + 1, image, used, out);
            used[usize::from(w)] = false;
        }
    }

    /// Serialize in the graph file format.
    pub fn to_json(&self) -> String {
        let file = GraphFile {
            version: 1,
            vertices: self.n,
            edges: self
                .edges()
                .map(|(i, j, l)| {
                    (
                        i,
                        j,
                        match l {
                            Label::Finite(m) => LabelRepr::Num(m),
                            Label::Infinite => LabelRepr::Str("inf".to_string()),
                        },
                    )
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("graph files serialize")
    }

    /// Parse the graph file format:
    /// `{"version": 1, "vertices": n, "edges": [[i, j, m], …]}` with `m`
    /// an integer ≥ 3 or the string `"inf"`.
    pub fn from_json(text: &str) -> Result<CoxGraph, CoxeterError> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| CoxeterError::BadJson {
            message: e.to_string(),
        })?;
        if file.version != 1 {
            return Err(CoxeterError::BadVersion {
                version: file.version,
            });
        }
        let mut g = CoxGraph::new(file.vertices)?;
        for (i, j, repr) in file.edges {
            let label = match repr {
                LabelRepr::Num(m) => Label::Finite(m),
                LabelRepr::Str(s) if s == "inf" => Label::Infinite,
                LabelRepr::Str(s) => {
                    return Err(CoxeterError::BadJson {
                        message: format!("edge label {s:?} is not an integer or \"inf\""),
                    })
                }
            };
            g.insert_edge(i, j, label)?;
        }
        Ok(g)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    version: u32,
    vertices: u8,
    edges: Vec<(u8, u8, LabelRepr)>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum LabelRepr {
    Num(u32),
    Str(String),
}

/// The alternating word `x y x y …` of the given length.
pub fn alternating(x: u8, y: u8, len: usize) -> Word {
    let letters = (0..len).map(|k| if k % 2 == 0 { x } else { y }).collect();
    Word::new(letters)
}

/// The relation `alt(x, y, m) − lower(x, y, m)` for an edge labeled `m`.
fn braid_relation(x: u8, y: u8, m: u32) -> NCPoly {
    let alt = NCPoly::from_term(alternating(x, y, m as usize), ParamScalar::one());
    let lower = match m {
        3 => NCPoly::from_term(Word::single(x), ParamScalar::t()),
        4 => NCPoly::from_term(alternating(x, y, 2), ParamScalar::t()),
        5 => {
            let mut p = NCPoly::from_term(alternating(x, y, 3), ParamScalar::t1());
            p.add_term(Word::single(x), -ParamScalar::t2());
            p
        }
        m => NCPoly::from_term(alternating(x, y, m as usize - 2), ParamScalar::t()),
    };
    alt.sub(&lower)
}

// ---------------------------------------------------------------------------
// Named families
// ---------------------------------------------------------------------------

/// A named diagram family, possibly with a rank parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyId {
    /// Path on `n ≥ 1` vertices.
    A { n: u8 },
    /// Path on `n ≥ 2` vertices, first edge labeled 4.
    B { n: u8 },
    /// Fork: leaves 1, 2 joined to 3, then a path to `n ≥ 4`.
    D { n: u8 },
    /// Path `1..n−1` with vertex `n` attached at vertex 3; `n ≥ 6`
    /// (ranks beyond 8 extend the same shape).
    E { n: u8 },
    /// Path on `n ≥ 4` vertices, edge {2,3} labeled 4.
    F { n: u8 },
    /// Path on `n ≥ 2` vertices, first edge labeled 5.
    H { n: u8 },
    /// Two vertices joined by an edge labeled `p ≥ 3`.
    L2 { p: u32 },
    /// Path on three vertices, edge {1,2} labeled `s ≥ 3`.
    L3 { s: u32 },
    /// Cycle on `n ≥ 3` vertices.
    TildeA { n: u8 },
    /// Fork with the far end of the tail labeled 4; `n ≥ 4` vertices.
    TildeB { n: u8 },
    /// Path on `n+1` vertices with both end edges labeled 4; `n ≥ 2`.
    TildeC { n: u8 },
    /// Double fork on `n+1 ≥ 5` vertices.
    TildeD { n: u8 },
    /// Three arms of two edges each from a common center (7 vertices).
    TildeE6,
    /// Path on 7 vertices with an extra vertex at the middle (8 vertices).
    TildeE7,
    /// Path on `n ≥ 6` vertices, edge {3,4} labeled 4.
    TildeF { n: u8 },
    /// Two vertices joined by an edge labeled 6.
    TildeG2,
    /// Two vertices joined by an edge labeled ∞.
    TildeA1,
    /// Star: center 2 with leaves 1, 3, 4, …, n; `n ≥ 3` vertices.
    Star { n: u8 },
    /// One of the numbered example graphs, by tag (e.g. `4.7`).
    Fig {
        /// The tag, `4.1` through `4.22`.
        tag: String,
    },
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyId::A { n } => write!(f, "A{n}"),
            FamilyId::B { n } => write!(f, "B{n}"),
            FamilyId::D { n } => write!(f, "D{n}"),
            FamilyId::E { n } => write!(f, "E{n}"),
            FamilyId::F { n } => write!(f, "F{n}"),
            FamilyId::H { n } => write!(f, "H{n}"),
            FamilyId::L2 { p } => write!(f, "l2({p})"),
            FamilyId::L3 { s } => write!(f, "l3({s})"),
            FamilyId::TildeA { n } => write!(f, "tilde-A{n}"),
            FamilyId::TildeB { n } => write!(f, "tilde-B{n}"),
            FamilyId::TildeC { n } => write!(f, "tilde-C{n}"),
            FamilyId::TildeD { n } => write!(f, "tilde-D{n}"),
            FamilyId::TildeE6 => f.write_str("tilde-E6"),
            FamilyId::TildeE7 => f.write_str("tilde-E7"),
            FamilyId::TildeF { n } => write!(f, "tilde-F{n}"),
            FamilyId::TildeG2 => f.write_str("tilde-G2"),
            FamilyId::TildeA1 => f.write_str("tilde-A1"),
            FamilyId::Star { n } => write!(f, "star{n}"),
            FamilyId::Fig { tag } => write!(f, "fig({tag})"),
        }
    }
}

fn rank_u8(name: &str, arg: &str, min: u8) -> Result<u8, CoxeterError> {
    let bad = |reason: &str| CoxeterError::InvalidRank {
        name: name.to_string(),
        rank: arg.to_string(),
        reason: reason.to_string(),
    };
    let value: u32 = arg.parse().map_err(|_| bad("not a number"))?;
    if value < u32::from(min) {
        return Err(bad(&format!("minimum rank is {min}")));
    }
    if value > 250 {
        return Err(bad("maximum rank is 250"));
    }
    Ok(value as u8)
}

fn rank_u32(name: &str, arg: &str, min: u32) -> Result<u32, CoxeterError> {
    let bad = |reason: &str| CoxeterError::InvalidRank {
        name: name.to_string(),
        rank: arg.to_string(),
        reason: reason.to_string(),
    };
    let value: u32 = arg.parse().map_err(|_| bad("not a number"))?;
    if value < min {
        return Err(bad(&format!("minimum label is {min}")));
    }
    if value > 10_000 {
        return Err(bad("maximum label is 10000"));
    }
    Ok(value)
}

impl FamilyId {
    /// Parse a command-line `NAME [ARG]` pair into a family id and check
    /// the rank constraint.
    pub fn from_cli(name: &str, arg: Option<&str>) -> Result<FamilyId, CoxeterError> {
        let need = |()| CoxeterError::MissingRank {
            name: name.to_string(),
        };
        let fixed = |id: FamilyId| -> Result<FamilyId, CoxeterError> {
            if arg.is_some() {
                Err(CoxeterError::UnexpectedRank {
                    name: name.to_string(),
                })
            } else {
                Ok(id)
            }
        };
        match name {
            "A" => Ok(FamilyId::A {
                n: rank_u8(name, arg.ok_or_else(|| need(()))?, 1)?,
            }),
            "B" => Ok(FamilyId::B {
                n: rank_u8(name, arg.ok_or_else(|| need(()))?, 2)?,
            }),
            "D" => Ok(FamilyId::D {
                n: rank_u8(name, arg.ok_or_else(|| need(()))?, 4)?,
            }),
            "E" => Ok(FamilyId::E {
                n: rank_u8(name, arg.ok_or_else(|| need(()))?, 6)?,
            }),
            "F" => Ok(FamilyId::F {
                n: rank_u8(name, arg.ok_or_else(|| need(()))?, 4)?,
            }),
            "H" => Ok(FamilyId::H {
                n: rank_u8(name, arg.ok_or_else(|| need(()))?, 2)?,
            }),
            "l2" => Ok(FamilyId::L2 {
                p: rank_u32(name, arg.ok_or_else(|| need(()))?, 3)?,
            }),
            "l3" => Ok(FamilyId::L3 {
                s: rank_u32(name, arg.ok_or_else(|| need(()))?, 3)?,
            }),
            "tilde-A" => Ok(FamilyId::TildeA {
                n: rank_u8(name, arg.ok_or_else(|| need(()))?, 3)?,
            }),
            "tilde-B" => Ok(FamilyId::TildeB {
                n: rank_u8(name, arg.ok_or_else(|| need(()))?, 4)?,
            }),
            "tilde-C" => Ok(FamilyId::TildeC {
                n: rank_u8(name, arg.ok_or_else(|| need(()))?, 2)?,
            }),
            "tilde-D" => Ok(FamilyId::TildeD {
                n: rank_u8(name, arg.ok_or_else(|| need(()))?, 4)?,
            }),
            "tilde-E6" => fixed(FamilyId::TildeE6),
            "tilde-E7" => fixed(FamilyId::TildeE7),
            "tilde-F" => Ok(FamilyId::TildeF {
                n: rank_u8(name, arg.ok_or_else(|| need(()))?, 6)?,
            }),
            "tilde-G2" => fixed(FamilyId::TildeG2),
            "tilde-A1" => fixed(FamilyId::TildeA1),
            "star" => Ok(FamilyId::Star {
                n: rank_u8(name, arg.ok_or_else(|| need(()))?, 3)?,
            }),
            "fig" => {
                let tag = arg.ok_or_else(|| need(()))?;
                if witness_fixture(tag).is_none() {
                    return Err(CoxeterError::UnknownFigTag {
                        tag: tag.to_string(),
                    });
                }
                Ok(FamilyId::Fig {
                    tag: tag.to_string(),
                })
            }
            other => Err(CoxeterError::UnknownPreset {
                name: other.to_string(),
            }),
        }
    }
}

/// One line per preset family: name, argument form, and shape.
pub fn preset_catalog() -> Vec<(&'static str, &'static str)> {
    vec![
        ("A n", "path on n vertices (n ≥ 1)"),
        ("B n", "path on n vertices, edge {1,2} labeled 4 (n ≥ 2)"),
        ("D n", "leaves 1,2 on vertex 3, then a path (n ≥ 4 vertices)"),
        ("E n", "path 1..n-1 with vertex n attached at 3 (n ≥ 6)"),
        ("F n", "path on n vertices, edge {2,3} labeled 4 (n ≥ 4)"),
        ("H n", "path on n vertices, edge {1,2} labeled 5 (n ≥ 2)"),
        ("l2 p", "two vertices, edge labeled p (p ≥ 3)"),
        ("l3 s", "path on three vertices, edge {1,2} labeled s (s ≥ 3)"),
        ("tilde-A n", "cycle on n vertices (n ≥ 3)"),
        (
            "tilde-B n",
            "leaves 1,2 on vertex 3, path to n, last edge labeled 4 (n ≥ 4)",
        ),
        (
            "tilde-C n",
            "path on n+1 vertices, both end edges labeled 4 (n ≥ 2)",
        ),
        ("tilde-D n", "double fork on n+1 vertices (n ≥ 4)"),
        ("tilde-E6", "three arms of two edges from a center (7 vertices)"),
        ("tilde-E7", "path on 7 vertices plus a middle vertex (8 vertices)"),
        ("tilde-F n", "path on n vertices, edge {3,4} labeled 4 (n ≥ 6)"),
        ("tilde-G2", "two vertices, edge labeled 6"),
        ("tilde-A1", "two vertices, edge labeled inf"),
        ("star n", "center 2 with leaves 1,3,…,n (n ≥ 3)"),
        ("fig TAG", "numbered example graph (tags 4.1 through 4.22)"),
    ]
}

/// Construct the diagram of a family.
pub fn preset(id: &FamilyId) -> Result<CoxGraph, CoxeterError> {
    let path =
        |n: u8| -> Vec<(u8, u8, Label)> { (1..n).map(|i| (i, i + 1, Label::Finite(3))).collect() };
    match id {
        FamilyId::A { n } => CoxGraph::with_edges(*n, &path(*n)),
        FamilyId::B { n } => {
            let mut edges = path(*n);
            edges[0].2 = Label::Finite(4);
            CoxGraph::with_edges(*n, &edges)
        }
        FamilyId::D { n } => {
            let mut edges = vec![(1, 3, Label::Finite(3)), (2, 3, Label::Finite(3))];
            edges.extend((3..*n).map(|i| (i, i + 1, Label::Finite(3))));
            CoxGraph::with_edges(*n, &edges)
        }
        FamilyId::E { n } => {
            let mut edges: Vec<(u8, u8, Label)> =
                (1..*n - 1).map(|i| (i, i + 1, Label::Finite(3))).collect();
            edges.push((3, *n, Label::Finite(3)));
            CoxGraph::with_edges(*n, &edges)
        }
        FamilyId::F { n } => {
            let mut edges = path(*n);
            edges[1].2 = Label::Finite(4);
            CoxGraph::with_edges(*n, &edges)
        }
        FamilyId::H { n } => {
            let mut edges = path(*n);
            edges[0].2 = Label::Finite(5);
            CoxGraph::with_edges(*n, &edges)
        }
        FamilyId::L2 { p } => CoxGraph::with_edges(2, &[(1, 2, Label::Finite(*p))]),
        FamilyId::L3 { s } => CoxGraph::with_edges(
            3,
            &[(1, 2, Label::Finite(*s)), (2, 3, Label::Finite(3))],
        ),
        FamilyId::TildeA { n } => {
            let mut edges = path(*n);
            edges.push((1, *n, Label::Finite(3)));
            CoxGraph::with_edges(*n, &edges)
        }
        FamilyId::TildeB { n } => {
            let mut edges = vec![(1, 3, Label::Finite(3)), (2, 3, Label::Finite(3))];
            edges.extend((3..*n).map(|i| (i, i + 1, Label::Finite(3))));
            let last = edges.len() - 1;
            edges[last].2 = Label::Finite(4);
            CoxGraph::with_edges(*n, &edges)
        }
        FamilyId::TildeC { n } => {
            let v = *n + 1;
            let mut edges = path(v);
            edges[0].2 = Label::Finite(4);
            let last = edges.len() - 1;
            edges[last].2 = Label::Finite(4);
            CoxGraph::with_edges(v, &edges)
        }
        FamilyId::TildeD { n } => {
            let v = *n + 1;
            let mut edges = vec![(1, 3, Label::Finite(3)), (2, 3, Label::Finite(3))];
            edges.extend((3..*n - 1).map(|i| (i, i + 1, Label::Finite(3))));
            edges.push((*n - 1, *n, Label::Finite(3)));
            edges.push((*n - 1, v, Label::Finite(3)));
            CoxGraph::with_edges(v, &edges)
        }
        FamilyId::TildeE6 => CoxGraph::with_edges(
            7,
            &[
                (1, 2, Label::Finite(3)),
                (2, 3, Label::Finite(3)),
                (3, 4, Label::Finite(3)),
                (4, 5, Label::Finite(3)),
                (3, 6, Label::Finite(3)),
                (6, 7, Label::Finite(3)),
            ],
        ),
        FamilyId::TildeE7 => {
            let mut edges: Vec<(u8, u8, Label)> =
                (1..7).map(|i| (i, i + 1, Label::Finite(3))).collect();
            edges.push((4, 8, Label::Finite(3)));
            CoxGraph::with_edges(8, &edges)
        }
        FamilyId::TildeF { n } => {
            let mut edges = path(*n);
            edges[2].2 = Label::Finite(4);
            CoxGraph::with_edges(*n, &edges)
        }
        FamilyId::TildeG2 => CoxGraph::with_edges(2, &[(1, 2, Label::Finite(6))]),
        FamilyId::TildeA1 => CoxGraph::with_edges(2, &[(1, 2, Label::Infinite)]),
        FamilyId::Star { n } => {
            let mut edges = vec![(1, 2, Label::Finite(3))];
            edges.extend((3..=*n).map(|i| (2, i, Label::Finite(3))));
            CoxGraph::with_edges(*n, &edges)
        }
        FamilyId::Fig { tag } => witness_fixture(tag)
            .map(|fx| fx.graph.clone())
            .ok_or_else(|| CoxeterError::UnknownFigTag { tag: tag.clone() }),
    }
}

// ---------------------------------------------------------------------------
// Numbered example graphs with witness words
// ---------------------------------------------------------------------------

/// A numbered example: a diagram together with a printed pair of candidate
/// free-pair witness words and whether that pair passes verification as
/// printed (a few contain typos, which verification detects).
#[derive(Clone, Debug)]
pub struct WitnessFixture {
    /// Tag, `4.1` through `4.22`.
    pub tag: String,
    /// The diagram.
    pub graph: CoxGraph,
    /// First candidate word, as printed.
    pub q1: Word,
    /// Second candidate word, as printed.
    pub q2: Word,
    /// Whether the printed pair passes free-pair verification.
    pub pair_verifies: bool,
    /// Annotation for pairs that verification rejects verbatim.
    pub note: Option<String>,
}

#[derive(Deserialize)]
struct FixtureFile {
    version: u32,
    entries: Vec<FixtureEntry>,
}

#[derive(Deserialize)]
struct FixtureEntry {
    tag: String,
    vertices: u8,
    edges: Vec<(u8, u8, u32)>,
    q1: Vec<u8>,
    q2: Vec<u8>,
    pair_verifies: bool,
    #[serde(default)]
    note: Option<String>,
}

static FIXTURES: OnceLock<Vec<WitnessFixture>> = OnceLock::new();

/// All numbered examples, in tag order.
pub fn witness_fixtures() -> &'static [WitnessFixture] {
    FIXTURES.get_or_init(|| {
        let file: FixtureFile = serde_json::from_str(include_str!(
            "../fixtures/section4_witnesses.json"
        ))
        .expect("bundled fixture file parses");
        assert_eq!(file.version, 1, "bundled fixture file version");
        file.entries
            .into_iter()
            .map(|e| {
                let edges: Vec<(u8, u8, Label)> = e
                    .edges
                    .iter()
                    .map(|&(i, j, m)| (i, j, Label::Finite(m)))
                    .collect();
                WitnessFixture {
                    tag: e.tag,
                    graph: CoxGraph::with_edges(e.vertices, &edges)
                        .expect("bundled fixture graphs are valid"),
                    q1: Word::new(e.q1),
                    q2: Word::new(e.q2),
                    pair_verifies: e.pair_verifies,
                    note: e.note,
                }
            })
            .collect()
    })
}

/// Look up a numbered example by tag.
pub fn witness_fixture(tag: &str) -> Option<&'static WitnessFixture> {
    witness_fixtures().iter().find(|f| f.tag == tag)
}
