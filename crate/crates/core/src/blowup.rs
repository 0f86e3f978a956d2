//! Blow-ups `G[H_1, ..., H_n]` and the split of betweenness into global and
//! local parts.
//!
//! Every base vertex `v_i` is replaced by a part `H_i`; two vertices in
//! different parts are adjacent exactly when their base vertices are. Vertices
//! of the blown graph are numbered contiguously part by part in base order.
//!
//! [`BlownGraph::decompose`] classifies every endpoint pair from first
//! principles. The closed forms ([`BlownGraph::closed_form_neighbor_contribution`],
//! [`BlownGraph::global_leaf_neighbor_formula`]) are computed separately so
//! the two can be checked against each other.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::betweenness::{betweenness_exact, PathTable};
use crate::graph::{Graph, Graph6Error};
use crate::rational::Rational;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum BlowupError {
    #[error("base graph must have at least two vertices, got {0}")]
    BaseTooSmall(usize),
    #[error("base graph must be connected")]
    BaseDisconnected,
    #[error("expected one part per base vertex ({expected}), got {found}")]
    PartCountMismatch { expected: usize, found: usize },
    #[error("part {0} is empty")]
    EmptyPart(usize),
    #[error("part index {0} out of range")]
    InvalidPart(usize),
    #[error("vertex {0} out of range")]
    InvalidVertex(usize),
    #[error("vertex {vertex} is not in part {part}")]
    VertexNotInPart { vertex: usize, part: usize },
    #[error("expected two distinct vertices")]
    SameVertex,
    #[error("parts {0} and {1} are not adjacent in the base graph")]
    NotBaseNeighbors(usize, usize),
    #[error("base vertex {0} is not a leaf")]
    NotLeaf(usize),
    #[error("base graph is not a tree")]
    BaseNotTree,
    #[error(
        "base vertex {part} next to the leaf has degree {degree}; the leaf-neighbour formula needs degree at most 2"
    )]
    BranchingLeafNeighbor { part: usize, degree: usize },
    #[error("delta is undefined: the vertex next to the leaf carries no global or differential load")]
    ZeroDenominator,
    #[error("invalid graph6 in spec: {0}")]
    Graph6(#[from] Graph6Error),
}

/// The graph substituted for one base vertex.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum PartDescriptor {
    /// `I_m`.
    #[serde(rename = "I")]
    Independent { size: usize },
    /// `K_m`.
    #[serde(rename = "K")]
    Clique { size: usize },
    #[serde(rename = "X")]
    Explicit {
        #[serde(with = "graph6_string")]
        graph6: Graph,
    },
}

impl PartDescriptor {
    pub fn independent(size: usize) -> Self {
        PartDescriptor::Independent { size }
    }

    pub fn clique(size: usize) -> Self {
        PartDescriptor::Clique { size }
    }

    pub fn explicit(graph: Graph) -> Self {
        PartDescriptor::Explicit { graph6: graph }
    }

    pub fn size(&self) -> usize {
        match self {
            PartDescriptor::Independent { size } | PartDescriptor::Clique { size } => *size,
            PartDescriptor::Explicit { graph6 } => graph6.order(),
        }
    }

    pub fn graph(&self) -> Graph {
        match self {
            PartDescriptor::Independent { size } => Graph::empty(*size),
            PartDescriptor::Clique { size } => Graph::from_fn(*size, |_, _| true),
            PartDescriptor::Explicit { graph6 } => graph6.clone(),
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        match self {
            PartDescriptor::Independent { .. } => false,
            PartDescriptor::Clique { .. } => a != b,
            PartDescriptor::Explicit { graph6 } => graph6.has_edge(a, b),
        }
    }
}

impl fmt::Display for PartDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartDescriptor::Independent { size } => write!(f, "I_{size}"),
            PartDescriptor::Clique { size } => write!(f, "K_{size}"),
            PartDescriptor::Explicit { graph6 } => write!(f, "X({})", graph6.to_graph6()),
        }
    }
}

impl fmt::Debug for PartDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

mod graph6_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::graph::Graph;

    pub fn serialize<S: Serializer>(g: &Graph, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&g.to_graph6())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Graph, D::Error> {
        let text = String::deserialize(d)?;
        Graph::parse_graph6(&text).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    base: String,
    parts: Vec<PartDescriptor>,
}

/// A base graph with one part per base vertex. Validated on construction.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SpecJson", into = "SpecJson")]
pub struct BlowupSpec {
    base: Graph,
    parts: Vec<PartDescriptor>,
}

impl TryFrom<SpecJson> for BlowupSpec {
    type Error = BlowupError;

    fn try_from(json: SpecJson) -> Result<Self, Self::Error> {
        BlowupSpec::new(Graph::parse_graph6(&json.base)?, json.parts)
    }
}

impl From<BlowupSpec> for SpecJson {
    fn from(spec: BlowupSpec) -> Self {
        SpecJson {
            base: spec.base.to_graph6(),
            parts: spec.parts,
        }
    }
}

impl BlowupSpec {
    pub fn new(base: Graph, parts: Vec<PartDescriptor>) -> Result<Self, BlowupError> {
        if base.order() < 2 {
            return Err(BlowupError::BaseTooSmall(base.order()));
        }
        if !base.is_connected() {
            return Err(BlowupError::BaseDisconnected);
        }
        if parts.len() != base.order() {
            return Err(BlowupError::PartCountMismatch {
                expected: base.order(),
                found: parts.len(),
            });
        }
        if let Some(i) = parts.iter().position(|p| p.size() == 0) {
            return Err(BlowupError::EmptyPart(i));
        }
        Ok(BlowupSpec { base, parts })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn parts(&self) -> &[PartDescriptor] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &PartDescriptor {
        &self.parts[i]
    }

    pub fn total_vertices(&self) -> usize {
        self.parts.iter().map(PartDescriptor::size).sum()
    }

    /// `n_i`: total size of the parts adjacent to part `i` in the base.
    pub fn neighbor_mass(&self, i: usize) -> Result<usize, BlowupError> {
        if i >= self.parts.len() {
            return Err(BlowupError::InvalidPart(i));
        }
        Ok(self.base.neighbors(i).iter().map(|&j| self.parts[j].size()).sum())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }
}

impl fmt::Display for BlowupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.base.to_graph6())?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for BlowupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `G[H_1, ..., H_n]` with provenance.
#[derive(Debug, Clone)]
pub struct BlownGraph {
    spec: BlowupSpec,
    graph: Graph,
    part_of: Vec<usize>,
    part_vertices: Vec<Vec<usize>>,
}

/// Builds the blow-up. Part `i` occupies a contiguous block of vertices
/// following the blocks of parts `0..i`.
pub fn blow_up(spec: &BlowupSpec) -> BlownGraph {
    let mut part_of = Vec::with_capacity(spec.total_vertices());
    let mut part_vertices = Vec::with_capacity(spec.parts.len());
    for (i, part) in spec.parts.iter().enumerate() {
        let start = part_of.len();
        part_of.extend(std::iter::repeat_n(i, part.size()));
        part_vertices.push((start..part_of.len()).collect::<Vec<_>>());
    }
    let offset: Vec<usize> = part_vertices.iter().map(|vs| vs[0]).collect();
    let n = part_of.len();
    let mut adj = vec![Vec::new(); n];
    for (u, list) in adj.iter_mut().enumerate() {
        let i = part_of[u];
        let local = u - offset[i];
        // Neighbouring parts and the own part, visited in vertex order.
        let mut blocks: Vec<usize> = spec.base.neighbors(i).to_vec();
        blocks.push(i);
        blocks.sort_unstable();
        for j in blocks {
            if j == i {
                let part = &spec.parts[i];
                list.extend(
                    (0..part.size())
                        .filter(|&b| part.has_edge(local, b))
                        .map(|b| offset[i] + b),
                );
            } else {
                list.extend(part_vertices[j].iter().copied());
            }
        }
    }
    BlownGraph {
        spec: spec.clone(),
        graph: Graph::from_sorted_adjacency(adj),
        part_of,
        part_vertices,
    }
}

/// Split of `B(v)` by where the endpoints of each contributing pair live.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub vertex: usize,
    pub part: usize,
    /// Pairs with endpoints in two different parts.
    pub global_part: Rational,
    /// Pairs inside the vertex's own part.
    pub own_local: Rational,
    /// Pairs inside each base-neighbour part, keyed by part index.
    pub neighbor_locals: BTreeMap<usize, Rational>,
}

impl Decomposition {
    pub fn total(&self) -> Rational {
        &self.global_part + &self.own_local + self.neighbor_locals.values().sum::<Rational>()
    }

    pub fn neighbor_local(&self, j: usize) -> &Rational {
        &self.neighbor_locals[&j]
    }
}

/// `Δ(x, y)` for a leaf part and its neighbour part, with the terms that make it up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaReport {
    pub leaf_part: usize,
    pub neighbor_part: usize,
    pub x: usize,
    pub y: usize,
    /// `B^{H_2}(x) - B^{H_2}(y)`.
    pub numerator: Rational,
    /// `B^G(y) + (B^{H_1}(y) - B^{H_1}(x)) + Σ_{j ≠ 1} B^{H_j}(y)`.
    pub denominator: Rational,
    pub delta: Rational,
    pub betweenness_x: Rational,
    pub betweenness_y: Rational,
}

impl BlownGraph {
    pub fn spec(&self) -> &BlowupSpec {
        &self.spec
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn part_count(&self) -> usize {
        self.part_vertices.len()
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    pub fn part_assignment(&self) -> &[usize] {
        &self.part_of
    }

    pub fn part_vertices(&self, i: usize) -> &[usize] {
        &self.part_vertices[i]
    }

    pub fn all_part_vertices(&self) -> &[Vec<usize>] {
        &self.part_vertices
    }

    fn check_part(&self, i: usize) -> Result<(), BlowupError> {
        if i < self.part_count() {
            Ok(())
        } else {
            Err(BlowupError::InvalidPart(i))
        }
    }

    fn check_vertex(&self, v: usize) -> Result<(), BlowupError> {
        if v < self.graph.order() {
            Ok(())
        } else {
            Err(BlowupError::InvalidVertex(v))
        }
    }

    fn check_in_part(&self, v: usize, i: usize) -> Result<(), BlowupError> {
        self.check_vertex(v)?;
        if self.part_of[v] == i {
            Ok(())
        } else {
            Err(BlowupError::VertexNotInPart { vertex: v, part: i })
        }
    }

    pub fn neighbor_mass(&self, i: usize) -> Result<usize, BlowupError> {
        self.spec.neighbor_mass(i)
    }

    /// `σ^{H_i,G'}_{u,v}`: shortest `u`-`v` paths of `G'` that stay inside part `i`.
    ///
    /// With a connected base of order at least two, every part has a neighbour
    /// part, so non-adjacent vertices of a part are at distance exactly two and
    /// the count is the number of common neighbours inside the part.
    pub fn sigma_within(&self, i: usize, u: usize, v: usize) -> Result<u64, BlowupError> {
        self.check_part(i)?;
        self.check_in_part(u, i)?;
        self.check_in_part(v, i)?;
        if u == v {
            return Err(BlowupError::SameVertex);
        }
        if self.graph.has_edge(u, v) {
            return Ok(1);
        }
        let inside = self
            .graph
            .neighbors(u)
            .iter()
            .filter(|&&w| self.part_of[w] == i && self.graph.has_edge(w, v))
            .count();
        Ok(inside as u64)
    }

    /// First-principles decomposition of `B(v)`.
    pub fn decompose(&self, v: usize) -> Result<Decomposition, BlowupError> {
        self.check_vertex(v)?;
        let table = PathTable::new(&self.graph);
        Ok(self.decompose_with(&table, v))
    }

    /// Decompositions of every vertex, sharing one path table.
    pub fn decompose_all(&self) -> Vec<Decomposition> {
        let table = PathTable::new(&self.graph);
        self.graph.vertices().map(|v| self.decompose_with(&table, v)).collect()
    }

    fn decompose_with(&self, table: &PathTable, v: usize) -> Decomposition {
        let own = self.part_of[v];
        let mut global_part = Rational::zero();
        let mut local: BTreeMap<usize, Rational> = BTreeMap::new();
        let n = self.graph.order();
        for x in 0..n {
            for y in x + 1..n {
                if x == v || y == v {
                    continue;
                }
                let share = table.pair_share(x, y, v);
                if share.is_zero() {
                    continue;
                }
                let (px, py) = (self.part_of[x], self.part_of[y]);
                if px != py {
                    global_part += share;
                } else {
                    *local.entry(px).or_insert_with(Rational::zero) += share;
                }
            }
        }
        let own_local = local.remove(&own).unwrap_or_else(Rational::zero);
        let neighbors = self.spec.base.neighbors(own);
        let stray: Vec<usize> = local.keys().copied().filter(|j| !neighbors.contains(j)).collect();
        assert!(
            stray.is_empty(),
            "vertex {v} picked up local load from non-adjacent parts {stray:?}"
        );
        let neighbor_locals = neighbors
            .iter()
            .map(|&j| (j, local.remove(&j).unwrap_or_else(Rational::zero)))
            .collect();
        Decomposition {
            vertex: v,
            part: own,
            global_part,
            own_local,
            neighbor_locals,
        }
    }

    /// Closed form for `B^{H_j}(x)`, `x` in part `i` adjacent to part `j`:
    /// the sum over non-adjacent pairs of part `j` of `1 / (σ^{H_j,G'} + n_j)`.
    pub fn closed_form_neighbor_contribution(&self, i: usize, j: usize) -> Result<Rational, BlowupError> {
        self.check_part(i)?;
        self.check_part(j)?;
        if !self.spec.base.has_edge(i, j) {
            return Err(BlowupError::NotBaseNeighbors(i, j));
        }
        let mass = self.neighbor_mass(j)?;
        let members = &self.part_vertices[j];
        let mut total = Rational::zero();
        for (a, &u) in members.iter().enumerate() {
            for &w in &members[a + 1..] {
                if self.graph.has_edge(u, w) {
                    continue;
                }
                let sigma = self.sigma_within(j, u, w)? as usize;
                total += Rational::from(sigma + mass).recip();
            }
        }
        Ok(total)
    }

    /// Global load of `y`, a vertex of the part next to leaf part `leaf`:
    /// `|H_1| (|V(G')| - |H_1| - |H_2|) / |H_2|`.
    ///
    /// Requires a tree base and a neighbour of degree at most two, which is when
    /// the leaf's pairs are the only global pairs routed through `H_2`.
    pub fn global_leaf_neighbor_formula(&self, leaf: usize, y: usize) -> Result<Rational, BlowupError> {
        self.check_part(leaf)?;
        let base = &self.spec.base;
        if !base.is_tree() {
            return Err(BlowupError::BaseNotTree);
        }
        if base.degree(leaf) != 1 {
            return Err(BlowupError::NotLeaf(leaf));
        }
        let second = base.neighbors(leaf)[0];
        self.check_in_part(y, second)?;
        if base.degree(second) > 2 {
            return Err(BlowupError::BranchingLeafNeighbor {
                part: second,
                degree: base.degree(second),
            });
        }
        let h1 = self.spec.parts[leaf].size();
        let h2 = self.spec.parts[second].size();
        let rest = self.graph.order() - h1 - h2;
        Ok(Rational::from(h1 * rest) / Rational::from(h2))
    }

    fn leaf_and_neighbor(&self, leaf: usize) -> Result<usize, BlowupError> {
        self.check_part(leaf)?;
        if self.spec.base.degree(leaf) != 1 {
            return Err(BlowupError::NotLeaf(leaf));
        }
        Ok(self.spec.base.neighbors(leaf)[0])
    }

    fn delta_from(
        &self,
        leaf: usize,
        second: usize,
        dx: &Decomposition,
        dy: &Decomposition,
    ) -> Result<DeltaReport, BlowupError> {
        let numerator = dx.neighbor_local(second) - &dy.own_local;
        let mut denominator = &dy.global_part + (dy.neighbor_local(leaf) - &dx.own_local);
        for (&j, value) in &dy.neighbor_locals {
            if j != leaf {
                denominator += value;
            }
        }
        if denominator.is_zero() {
            return Err(BlowupError::ZeroDenominator);
        }
        Ok(DeltaReport {
            leaf_part: leaf,
            neighbor_part: second,
            x: dx.vertex,
            y: dy.vertex,
            delta: &numerator / &denominator,
            numerator,
            denominator,
            betweenness_x: dx.total(),
            betweenness_y: dy.total(),
        })
    }

    /// `Δ(x, y)` for explicit `x` in the leaf part and `y` in its neighbour part.
    pub fn delta_xy(&self, leaf: usize, x: usize, y: usize) -> Result<DeltaReport, BlowupError> {
        let second = self.leaf_and_neighbor(leaf)?;
        self.check_in_part(x, leaf)?;
        self.check_in_part(y, second)?;
        let table = PathTable::new(&self.graph);
        let dx = self.decompose_with(&table, x);
        let dy = self.decompose_with(&table, y);
        self.delta_from(leaf, second, &dx, &dy)
    }

    /// `Δ(x, y)` with `x` maximising `B` over the leaf part and `y` minimising
    /// `B` over its neighbour part (lowest index on ties).
    pub fn delta_extremal(&self, leaf: usize) -> Result<DeltaReport, BlowupError> {
        let second = self.leaf_and_neighbor(leaf)?;
        let profile = betweenness_exact(&self.graph);
        let pick = |part: usize, better: fn(&Rational, &Rational) -> bool| {
            let mut best = self.part_vertices[part][0];
            for &v in &self.part_vertices[part][1..] {
                if better(profile.get(v), profile.get(best)) {
                    best = v;
                }
            }
            best
        };
        let x = pick(leaf, |a, b| a > b);
        let y = pick(second, |a, b| a < b);
        let table = PathTable::new(&self.graph);
        let dx = self.decompose_with(&table, x);
        let dy = self.decompose_with(&table, y);
        self.delta_from(leaf, second, &dx, &dy)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, is_isomorphic, GraphKind};

    fn path(n: usize) -> Graph {
        generate(GraphKind::Path, n).unwrap()
    }

    fn i(m: usize) -> PartDescriptor {
        PartDescriptor::independent(m)
    }

    fn k(m: usize) -> PartDescriptor {
        PartDescriptor::clique(m)
    }

    fn spec(base: Graph, parts: Vec<PartDescriptor>) -> BlowupSpec {
        BlowupSpec::new(base, parts).unwrap()
    }

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(
            BlowupSpec::new(Graph::empty(1), vec![i(1)]),
            Err(BlowupError::BaseTooSmall(1))
        );
        assert_eq!(
            BlowupSpec::new(Graph::empty(2), vec![i(1), i(1)]),
            Err(BlowupError::BaseDisconnected)
        );
        assert_eq!(
            BlowupSpec::new(path(2), vec![i(1)]),
            Err(BlowupError::PartCountMismatch { expected: 2, found: 1 })
        );
        assert_eq!(
            BlowupSpec::new(path(2), vec![i(1), k(0)]),
            Err(BlowupError::EmptyPart(1))
        );
    }

    #[test]
    fn two_cliques_make_k6() {
        let bg = blow_up(&spec(path(2), vec![k(3), k(3)]));
        assert_eq!(bg.graph().size(), 15);
        assert!(is_isomorphic(bg.graph(), &generate(GraphKind::Complete, 6).unwrap()));
    }

    #[test]
    fn p3_k1_i2_k1_is_c4() {
        let bg = blow_up(&spec(path(3), vec![k(1), i(2), k(1)]));
        assert_eq!(bg.graph().order(), 4);
        assert!(is_isomorphic(bg.graph(), &generate(GraphKind::Cycle, 4).unwrap()));
    }

    #[test]
    fn join_edge_count() {
        let bg = blow_up(&spec(path(3), vec![i(2), i(3), i(1)]));
        assert_eq!(bg.graph().order(), 6);
        assert_eq!(bg.graph().size(), 2 * 3 + 3);
        assert_eq!(bg.part_vertices(1), &[2, 3, 4]);
        assert_eq!(bg.part_assignment(), &[0, 0, 1, 1, 1, 2]);
    }

    #[test]
    fn neighbor_mass_examples() {
        let s = spec(path(3), vec![i(2), i(3), i(1)]);
        assert_eq!(s.neighbor_mass(1), Ok(3));
        assert_eq!(s.neighbor_mass(0), Ok(3));
        assert_eq!(s.neighbor_mass(3), Err(BlowupError::InvalidPart(3)));
        let s4 = spec(path(4), vec![k(2), i(2), i(2), k(2)]);
        assert_eq!(s4.neighbor_mass(1), Ok(4));
    }

    #[test]
    fn sigma_within_cases() {
        let bg = blow_up(&spec(path(2), vec![k(2), PartDescriptor::explicit(path(3))]));
        // Clique part: adjacent.
        assert_eq!(bg.sigma_within(0, 0, 1), Ok(1));
        // Explicit P_3 part (vertices 2, 3, 4): the endpoints share the middle vertex.
        assert_eq!(bg.sigma_within(1, 2, 4), Ok(1));
        assert_eq!(bg.sigma_within(1, 2, 3), Ok(1));
        let ind = blow_up(&spec(path(2), vec![i(3), k(1)]));
        assert_eq!(ind.sigma_within(0, 0, 2), Ok(0));
        assert_eq!(
            ind.sigma_within(0, 0, 3),
            Err(BlowupError::VertexNotInPart { vertex: 3, part: 0 })
        );
        assert_eq!(ind.sigma_within(0, 1, 1), Err(BlowupError::SameVertex));
    }

    #[test]
    fn sigma_within_matches_path_enumeration() {
        // Brute force: count length-2 paths u-w-v with w in the part.
        let bg = blow_up(&spec(
            path(3),
            vec![
                PartDescriptor::explicit(generate(GraphKind::Cycle, 4).unwrap()),
                PartDescriptor::explicit(generate(GraphKind::Star, 3).unwrap()),
                i(2),
            ],
        ));
        let g = bg.graph();
        for part in 0..3 {
            let members = bg.part_vertices(part);
            for &u in members {
                for &v in members {
                    if u == v {
                        continue;
                    }
                    let expected = if g.has_edge(u, v) {
                        1
                    } else {
                        members
                            .iter()
                            .filter(|&&w| g.has_edge(u, w) && g.has_edge(w, v))
                            .count() as u64
                    };
                    assert_eq!(bg.sigma_within(part, u, v), Ok(expected));
                }
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        let c4 = blow_up(&spec(path(3), vec![k(1), i(2), k(1)]));
        let d = c4.decompose(0).unwrap();
        assert!(d.global_part.is_zero());
        assert!(d.own_local.is_zero());
        // The middle pair has two shortest paths, one through each end vertex.
        assert_eq!(d.neighbor_locals, BTreeMap::from([(1, Rational::new(1, 2))]));
        assert_eq!(d.total(), *betweenness_exact(c4.graph()).get(0));

        let k6 = blow_up(&spec(path(2), vec![k(3), k(3)]));
        for d in k6.decompose_all() {
            assert!(d.total().is_zero());
            assert_eq!(d.neighbor_locals.len(), 1);
        }
        assert_eq!(k6.decompose(6), Err(BlowupError::InvalidVertex(6)));
    }

    #[test]
    fn leaf_parts_have_no_global_load() {
        let bg = blow_up(&spec(path(4), vec![k(2), i(2), i(3), i(2)]));
        for v in bg.part_vertices(0).iter().chain(bg.part_vertices(3)) {
            assert!(bg.decompose(*v).unwrap().global_part.is_zero());
        }
    }

    #[test]
    fn closed_form_examples() {
        let bg = blow_up(&spec(path(3), vec![i(2), i(5), i(3)]));
        // Middle part I_5 seen from part 0: C(5,2) / (2 + 3).
        assert_eq!(bg.closed_form_neighbor_contribution(0, 1), Ok(Rational::new(10, 5)));
        assert_eq!(
            bg.closed_form_neighbor_contribution(0, 2),
            Err(BlowupError::NotBaseNeighbors(0, 2))
        );
        let cl = blow_up(&spec(path(2), vec![k(4), i(2)]));
        assert_eq!(cl.closed_form_neighbor_contribution(1, 0), Ok(Rational::zero()));
    }

    #[test]
    fn leaf_neighbor_formula_examples() {
        let bg = blow_up(&spec(path(4), vec![k(2), i(2), i(2), k(2)]));
        assert_eq!(bg.global_leaf_neighbor_formula(0, 2), Ok(Rational::from_integer(4)));
        assert_eq!(bg.decompose(2).unwrap().global_part, Rational::from_integer(4));
        assert_eq!(bg.global_leaf_neighbor_formula(1, 2), Err(BlowupError::NotLeaf(1)));
        let star = blow_up(&spec(
            generate(GraphKind::Star, 3).unwrap(),
            vec![i(1), i(1), i(1), i(3)],
        ));
        assert_eq!(
            star.global_leaf_neighbor_formula(0, 3),
            Err(BlowupError::BranchingLeafNeighbor { part: 3, degree: 3 })
        );
    }

    #[test]
    fn delta_examples() {
        let c4 = blow_up(&spec(path(3), vec![i(1), i(2), i(1)]));
        let d = c4.delta_extremal(0).unwrap();
        assert_eq!(d.delta, Rational::one());
        assert_eq!(d.betweenness_x, d.betweenness_y);

        let p4 = blow_up(&spec(path(4), vec![k(2), i(2), i(2), k(2)]));
        let d = p4.delta_extremal(0).unwrap();
        assert!(d.delta < 1);
        assert!(d.betweenness_x < d.betweenness_y);
        assert_eq!(p4.delta_xy(0, 1, 3).unwrap().delta, d.delta);

        let k2 = blow_up(&spec(path(2), vec![k(2), k(2)]));
        assert_eq!(k2.delta_extremal(0), Err(BlowupError::ZeroDenominator));
    }

    #[test]
    fn spec_json_roundtrip() {
        let s = spec(path(3), vec![i(2), k(3), PartDescriptor::explicit(path(3))]);
        let json = s.to_json();
        assert_eq!(
            json,
            r#"{"base":"Bg","parts":[{"kind":"I","size":2},{"kind":"K","size":3},{"kind":"X","graph6":"Bg"}]}"#
        );
        let back: BlowupSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<BlowupSpec>(
            r#"{"base":"A?","parts":[{"kind":"I","size":1},{"kind":"I","size":1}]}"#
        )
        .is_err());
        assert_eq!(s.to_string(), "Bg[I_2,K_3,X(Bg)]");
    }
}
