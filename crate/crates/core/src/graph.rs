//! Decorated dual trees of genus-zero prestable maps.
//!
//! Vertices are irreducible components of the source curve. An *active*
//! vertex maps with positive degree onto the coarse target line; a
//! *contracted* vertex is sent to a single point of the target. Edges are
//! nodes, carrying the ramification index of the map on the active side(s)
//! and the order of the node stabilizer. Marked points carry the prescribed
//! tangency, the point they map to and their gerbe order.
//!
//! The encoding deliberately forgets continuous moduli (positions of points,
//! cross-ratios); everything here is about combinatorial types.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::twisted::{StackyTarget, TargetIssue};

/// Version of the JSON layout written by this crate.
pub const SCHEMA_VERSION: u32 = 1;

macro_rules! id_type {
    ($(#[$m:meta])* $name:ident, $prefix:literal) => {
        $(#[$m])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub u32);

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, concat!($prefix, "{}"), self.0)
            }
        }
    };
}

id_type!(
    /// Identifier of a component of the source curve.
    VertexId,
    "v"
);
id_type!(
    /// Identifier of a node.
    EdgeId,
    "n"
);
id_type!(
    /// Identifier of a marked point. Marks are matched to tangency data by id.
    MarkId,
    "p"
);

/// Label of a point of the target curve. Its kind (relative, generic or
/// stacky) is resolved against a [`StackyTarget`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TargetPointId(pub String);

impl TargetPointId {
    pub fn new(label: impl Into<String>) -> Self {
        TargetPointId(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for TargetPointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for TargetPointId {
    fn from(s: &str) -> Self {
        TargetPointId(s.into())
    }
}

fn one() -> u32 {
    1
}

fn is_one(v: &u32) -> bool {
    *v == 1
}

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

/// What a component does under the map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum VertexRole {
    Active { degree: u32 },
    Contracted { target: TargetPointId },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: VertexId,
    #[serde(flatten)]
    pub role: VertexRole,
}

impl Vertex {
    pub fn active(id: u32, degree: u32) -> Self {
        Vertex { id: VertexId(id), role: VertexRole::Active { degree } }
    }

    pub fn contracted(id: u32, target: impl Into<TargetPointId>) -> Self {
        Vertex { id: VertexId(id), role: VertexRole::Contracted { target: target.into() } }
    }

    pub fn is_active(&self) -> bool {
        matches!(self.role, VertexRole::Active { .. })
    }

    /// Degree of the map on this component; zero when contracted.
    pub fn degree(&self) -> u32 {
        match self.role {
            VertexRole::Active { degree } => degree,
            VertexRole::Contracted { .. } => 0,
        }
    }

    pub fn contracted_target(&self) -> Option<&TargetPointId> {
        match &self.role {
            VertexRole::Contracted { target } => Some(target),
            VertexRole::Active { .. } => None,
        }
    }
}

/// Local ramification data of a node.
///
/// `Single(e)` is the ramification index of the active side (or of both sides
/// when they agree). `Pair(a, b)` stores both local indices of a node between
/// two active components, ordered as the edge endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ramification {
    Single(u32),
    Pair(u32, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub endpoints: (VertexId, VertexId),
    pub ramification: Ramification,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub stabilizer_order: u32,
    /// Common image of a node joining two active components, when recorded.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub over: Option<TargetPointId>,
}

impl Edge {
    pub fn new(id: u32, a: u32, b: u32, ramification: u32) -> Self {
        Edge {
            id: EdgeId(id),
            endpoints: (VertexId(a), VertexId(b)),
            ramification: Ramification::Single(ramification),
            stabilizer_order: 1,
            over: None,
        }
    }

    pub fn touches(&self, v: VertexId) -> bool {
        self.endpoints.0 == v || self.endpoints.1 == v
    }

    /// The endpoint opposite to `v`.
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.endpoints.0 == v {
            self.endpoints.1
        } else {
            self.endpoints.0
        }
    }

    /// Ramification index of the map at this node, seen from component `v`.
    pub fn ramification_at(&self, v: VertexId) -> u32 {
        match self.ramification {
            Ramification::Single(e) => e,
            Ramification::Pair(a, b) => {
                if self.endpoints.0 == v {
                    a
                } else {
                    b
                }
            }
        }
    }

    fn ramifications(&self) -> [u32; 2] {
        match self.ramification {
            Ramification::Single(e) => [e, e],
            Ramification::Pair(a, b) => [a, b],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedPoint {
    pub id: MarkId,
    pub vertex: VertexId,
    /// Prescribed contact order; zero for a free mark.
    #[serde(default)]
    pub tangency: u32,
    /// Image of the mark (for marks on active components) or the point it
    /// is required to map to.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<TargetPointId>,
    /// Local ramification of the map at the mark; defaults to the tangency.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ramification: Option<u32>,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub stabilizer_order: u32,
}

impl MarkedPoint {
    pub fn new(id: u32, vertex: u32, tangency: u32, target: Option<&str>) -> Self {
        MarkedPoint {
            id: MarkId(id),
            vertex: VertexId(vertex),
            tangency,
            target: target.map(TargetPointId::from),
            ramification: None,
            stabilizer_order: 1,
        }
    }

    pub fn with_ramification(mut self, e: u32) -> Self {
        self.ramification = Some(e);
        self
    }

    pub fn local_ramification(&self) -> u32 {
        self.ramification.unwrap_or(self.tangency.max(1))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFlags {
    /// Whether the marks and contracted components account for the whole
    /// fiber over a relative point. Missing entries read as `true`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub full_fiber: BTreeMap<TargetPointId, bool>,
    /// Distinguish marks by id in canonical forms.
    #[serde(default, skip_serializing_if = "core::ops::Not::not")]
    pub labeled_marks: bool,
}

/// Decorated dual tree of a genus-zero prestable (possibly twisted) map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualMapGraph {
    #[serde(default = "schema_version")]
    pub schema: u32,
    pub target: StackyTarget,
    pub degree: u32,
    pub vertices: Vec<Vertex>,
    #[serde(default)]
    pub edges: Vec<Edge>,
    #[serde(default)]
    pub marks: Vec<MarkedPoint>,
    #[serde(default)]
    pub flags: GraphFlags,
}

/// One violated invariant, naming the offending item.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Issue {
    UnsupportedSchema { version: u32 },
    Target { issue: TargetIssue },
    EmptyGraph,
    ZeroTotalDegree,
    DuplicateVertex { vertex: VertexId },
    DuplicateEdge { edge: EdgeId },
    DuplicateMark { mark: MarkId },
    UnknownEndpoint { edge: EdgeId, vertex: VertexId },
    UnknownMarkVertex { mark: MarkId, vertex: VertexId },
    SelfLoop { edge: EdgeId },
    NotATree { edge: EdgeId },
    Disconnected { vertex: VertexId },
    ZeroDegree { vertex: VertexId },
    DegreeMismatch { sum: u64, expected: u32 },
    UnstableContractedVertex { vertex: VertexId, special_points: usize },
    ZeroRamification { edge: EdgeId },
    ZeroMarkRamification { mark: MarkId },
    ZeroEdgeStabilizer { edge: EdgeId },
    ZeroMarkStabilizer { mark: MarkId },
    PairOnContractedNode { edge: EdgeId },
    OverOnContractedNode { edge: EdgeId },
    ContractedTargetsDiffer { edge: EdgeId },
    FlagNotRelative { point: TargetPointId },
    TangentMarkNotRelative { mark: MarkId },
    MarkTargetMismatch { mark: MarkId },
    FiberOverflow { vertex: VertexId, point: TargetPointId, accounted: u64, degree: u32 },
    FiberIncomplete { vertex: VertexId, point: TargetPointId, accounted: u64, degree: u32 },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Issue::*;
        match self {
            UnsupportedSchema { version } => write!(f, "unsupported schema version {version}"),
            Target { issue } => write!(f, "invalid target: {issue}"),
            EmptyGraph => write!(f, "graph has no vertices"),
            ZeroTotalDegree => write!(f, "total degree must be positive"),
            DuplicateVertex { vertex } => write!(f, "duplicate vertex id {vertex}"),
            DuplicateEdge { edge } => write!(f, "duplicate edge id {edge}"),
            DuplicateMark { mark } => write!(f, "duplicate mark id {mark}"),
            UnknownEndpoint { edge, vertex } => write!(f, "edge {edge} references unknown vertex {vertex}"),
            UnknownMarkVertex { mark, vertex } => write!(f, "mark {mark} lies on unknown vertex {vertex}"),
            SelfLoop { edge } => write!(f, "not a tree: edge {edge} is a loop"),
            NotATree { edge } => write!(f, "not a tree: edge {edge} closes a cycle"),
            Disconnected { vertex } => write!(f, "not a tree: vertex {vertex} is disconnected"),
            ZeroDegree { vertex } => write!(f, "active vertex {vertex} has degree 0"),
            DegreeMismatch { sum, expected } => {
                write!(f, "active degrees sum to {sum}, expected total degree {expected}")
            }
            UnstableContractedVertex { vertex, special_points } => write!(
                f,
                "unstable contracted vertex {vertex}: {special_points} special points, need at least 3"
            ),
            ZeroRamification { edge } => write!(f, "edge {edge} has ramification 0"),
            ZeroMarkRamification { mark } => write!(f, "mark {mark} has ramification 0"),
            ZeroEdgeStabilizer { edge } => write!(f, "edge {edge} has stabilizer order 0"),
            ZeroMarkStabilizer { mark } => write!(f, "mark {mark} has stabilizer order 0"),
            PairOnContractedNode { edge } => {
                write!(f, "edge {edge} touches a contracted vertex but stores two ramification indices")
            }
            OverOnContractedNode { edge } => {
                write!(f, "edge {edge} touches a contracted vertex but records an image point")
            }
            ContractedTargetsDiffer { edge } => {
                write!(f, "edge {edge} joins vertices contracted to different points")
            }
            FlagNotRelative { point } => write!(f, "fiber flag set for {point}, which is not a relative point"),
            TangentMarkNotRelative { mark } => {
                write!(f, "mark {mark} has positive tangency but no relative target point")
            }
            MarkTargetMismatch { mark } => {
                write!(f, "mark {mark} records a target different from its contracted vertex")
            }
            FiberOverflow { vertex, point, accounted, degree } => write!(
                f,
                "vertex {vertex}: fiber over {point} accounts for {accounted} > degree {degree}"
            ),
            FiberIncomplete { vertex, point, accounted, degree } => write!(
                f,
                "vertex {vertex}: fiber over {point} accounts for {accounted} < degree {degree} but is flagged full"
            ),
        }
    }
}

/// Every invariant violated by a graph. Empty means well formed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return f.write_str("valid");
        }
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("invalid graph: {0}")]
    Invalid(ValidationReport),
}

/// Position-based adjacency of a graph whose ids resolve.
#[derive(Clone, Debug)]
pub(crate) struct Topology {
    pub index: BTreeMap<VertexId, usize>,
    /// Per vertex position: (edge position, neighbour position).
    pub adjacent: Vec<Vec<(usize, usize)>>,
    /// Per vertex position: mark positions.
    pub marks_at: Vec<Vec<usize>>,
}

impl Topology {
    /// Builds adjacency, skipping edges and marks that reference unknown vertices.
    pub fn new(g: &DualMapGraph) -> Self {
        let index: BTreeMap<VertexId, usize> =
            g.vertices.iter().enumerate().map(|(i, v)| (v.id, i)).collect();
        let mut adjacent = vec![Vec::new(); g.vertices.len()];
        for (k, e) in g.edges.iter().enumerate() {
            if let (Some(&a), Some(&b)) = (index.get(&e.endpoints.0), index.get(&e.endpoints.1)) {
                adjacent[a].push((k, b));
                if a != b {
                    adjacent[b].push((k, a));
                }
            }
        }
        let mut marks_at = vec![Vec::new(); g.vertices.len()];
        for (k, m) in g.marks.iter().enumerate() {
            if let Some(&a) = index.get(&m.vertex) {
                marks_at[a].push(k);
            }
        }
        Topology { index, adjacent, marks_at }
    }

    pub fn special_points(&self, v: usize) -> usize {
        self.adjacent[v].len() + self.marks_at[v].len()
    }
}

/// Minimal union-find over positions.
#[derive(Clone, Debug)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

impl DualMapGraph {
    /// A graph over `target` with no components yet.
    pub fn new(target: StackyTarget, degree: u32) -> Self {
        DualMapGraph {
            schema: SCHEMA_VERSION,
            target,
            degree,
            vertices: Vec::new(),
            edges: Vec::new(),
            marks: Vec::new(),
            flags: GraphFlags::default(),
        }
    }

    pub fn vertex(&self, id: VertexId) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn mark(&self, id: MarkId) -> Option<&MarkedPoint> {
        self.marks.iter().find(|m| m.id == id)
    }

    pub fn marks_on(&self, v: VertexId) -> impl Iterator<Item = &MarkedPoint> {
        self.marks.iter().filter(move |m| m.vertex == v)
    }

    pub fn edges_at(&self, v: VertexId) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.touches(v))
    }

    pub fn is_full_fiber(&self, point: &TargetPointId) -> bool {
        self.flags.full_fiber.get(point).copied().unwrap_or(true)
    }

    /// The point a mark maps to: its contracted vertex's target, or the
    /// recorded target for marks on active components.
    pub fn mark_image<'a>(&'a self, m: &'a MarkedPoint) -> Option<&'a TargetPointId> {
        match self.vertex(m.vertex).map(|v| &v.role) {
            Some(VertexRole::Contracted { target }) => Some(target),
            _ => m.target.as_ref(),
        }
    }

    /// How much of the fiber of active vertex `v` over `point` is accounted
    /// for by marks, nodes to contracted components, and recorded active nodes.
    pub fn fiber_accounted(&self, v: VertexId, point: &TargetPointId) -> u64 {
        let marks: u64 = self
            .marks_on(v)
            .filter(|m| m.target.as_ref() == Some(point))
            .map(|m| u64::from(m.local_ramification()))
            .sum();
        let nodes: u64 = self
            .edges_at(v)
            .filter(|e| {
                let w = e.other(v);
                match self.vertex(w).map(|x| &x.role) {
                    Some(VertexRole::Contracted { target }) => target == point,
                    Some(VertexRole::Active { .. }) => e.over.as_ref() == Some(point),
                    None => false,
                }
            })
            .map(|e| u64::from(e.ramification_at(v)))
            .sum();
        marks + nodes
    }

    /// Checks every structural invariant and lists all violations.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        if self.schema != SCHEMA_VERSION {
            issues.push(Issue::UnsupportedSchema { version: self.schema });
        }
        issues.extend(self.target.check().into_iter().map(|issue| Issue::Target { issue }));
        if self.vertices.is_empty() {
            issues.push(Issue::EmptyGraph);
        }
        if self.degree == 0 {
            issues.push(Issue::ZeroTotalDegree);
        }

        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v.id) {
                issues.push(Issue::DuplicateVertex { vertex: v.id });
            }
        }
        let mut seen = BTreeSet::new();
        for e in &self.edges {
            if !seen.insert(e.id) {
                issues.push(Issue::DuplicateEdge { edge: e.id });
            }
        }
        let mut seen = BTreeSet::new();
        for m in &self.marks {
            if !seen.insert(m.id) {
                issues.push(Issue::DuplicateMark { mark: m.id });
            }
        }

        let topo = Topology::new(self);

        // Components.
        let mut degree_sum = 0u64;
        for (i, v) in self.vertices.iter().enumerate() {
            match &v.role {
                VertexRole::Active { degree } => {
                    if *degree == 0 {
                        issues.push(Issue::ZeroDegree { vertex: v.id });
                    }
                    degree_sum += u64::from(*degree);
                }
                VertexRole::Contracted { .. } => {
                    let special = topo.special_points(i);
                    if special < 3 {
                        issues.push(Issue::UnstableContractedVertex { vertex: v.id, special_points: special });
                    }
                }
            }
        }
        if !self.vertices.is_empty() && degree_sum != u64::from(self.degree) {
            issues.push(Issue::DegreeMismatch { sum: degree_sum, expected: self.degree });
        }

        // Nodes and tree shape.
        let mut components = DisjointSets::new(self.vertices.len());
        for e in &self.edges {
            let ends = [e.endpoints.0, e.endpoints.1];
            let mut resolved = true;
            for w in ends {
                if !topo.index.contains_key(&w) {
                    issues.push(Issue::UnknownEndpoint { edge: e.id, vertex: w });
                    resolved = false;
                }
            }
            if e.ramifications().contains(&0) {
                issues.push(Issue::ZeroRamification { edge: e.id });
            }
            if e.stabilizer_order == 0 {
                issues.push(Issue::ZeroEdgeStabilizer { edge: e.id });
            }
            if !resolved {
                continue;
            }
            if e.endpoints.0 == e.endpoints.1 {
                issues.push(Issue::SelfLoop { edge: e.id });
                continue;
            }
            let (a, b) = (topo.index[&e.endpoints.0], topo.index[&e.endpoints.1]);
            if !components.union(a, b) {
                issues.push(Issue::NotATree { edge: e.id });
            }
            let (va, vb) = (&self.vertices[a], &self.vertices[b]);
            let touches_contracted = !va.is_active() || !vb.is_active();
            if touches_contracted {
                if matches!(e.ramification, Ramification::Pair(..)) {
                    issues.push(Issue::PairOnContractedNode { edge: e.id });
                }
                if e.over.is_some() {
                    issues.push(Issue::OverOnContractedNode { edge: e.id });
                }
            }
            if let (Some(ta), Some(tb)) = (va.contracted_target(), vb.contracted_target()) {
                if ta != tb {
                    issues.push(Issue::ContractedTargetsDiffer { edge: e.id });
                }
            }
        }
        if !self.vertices.is_empty() {
            for i in 1..self.vertices.len() {
                if components.find(i) != components.find(0) {
                    issues.push(Issue::Disconnected { vertex: self.vertices[i].id });
                }
            }
        }

        // Marks.
        for m in &self.marks {
            let vertex = topo.index.get(&m.vertex).map(|&i| &self.vertices[i]);
            if vertex.is_none() {
                issues.push(Issue::UnknownMarkVertex { mark: m.id, vertex: m.vertex });
            }
            if m.stabilizer_order == 0 {
                issues.push(Issue::ZeroMarkStabilizer { mark: m.id });
            }
            if m.ramification == Some(0) {
                issues.push(Issue::ZeroMarkRamification { mark: m.id });
            }
            if m.tangency > 0 {
                let relative = m.target.as_ref().is_some_and(|p| self.target.is_relative(p));
                if !relative {
                    issues.push(Issue::TangentMarkNotRelative { mark: m.id });
                }
            } else if let (Some(t), Some(vt)) =
                (&m.target, vertex.and_then(|v| v.contracted_target()))
            {
                // A free mark on a contracted component can only map where the component does.
                if t != vt {
                    issues.push(Issue::MarkTargetMismatch { mark: m.id });
                }
            }
        }
        for p in self.flags.full_fiber.keys() {
            if !self.target.is_relative(p) {
                issues.push(Issue::FlagNotRelative { point: p.clone() });
            }
        }

        // Fiber bookkeeping over relative points.
        for v in self.vertices.iter().filter(|v| v.is_active()) {
            let degree = v.degree();
            for x in &self.target.relative_points {
                let accounted = self.fiber_accounted(v.id, x);
                if accounted > u64::from(degree) {
                    issues.push(Issue::FiberOverflow { vertex: v.id, point: x.clone(), accounted, degree });
                } else if accounted < u64::from(degree) && self.is_full_fiber(x) {
                    issues.push(Issue::FiberIncomplete { vertex: v.id, point: x.clone(), accounted, degree });
                }
            }
        }

        ValidationReport { issues }
    }

    /// `Ok(())` when [`validate`](Self::validate) reports nothing.
    pub fn ensure_valid(&self) -> Result<(), GraphError> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(GraphError::Invalid(report))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p1_inf() -> StackyTarget {
        StackyTarget::projective_line().with_relative_point("inf")
    }

    fn kinds(report: &ValidationReport) -> Vec<&Issue> {
        report.issues.iter().collect()
    }

    #[test]
    fn smooth_irreducible_case_is_valid() {
        let mut g = DualMapGraph::new(p1_inf(), 2);
        g.vertices.push(Vertex::active(0, 2));
        g.marks.push(MarkedPoint::new(0, 0, 1, Some("inf")));
        g.marks.push(MarkedPoint::new(1, 0, 1, Some("inf")));
        assert!(g.validate().is_valid(), "{}", g.validate());
    }

    #[test]
    fn cycle_is_not_a_tree() {
        let mut g = DualMapGraph::new(StackyTarget::projective_line(), 3);
        for i in 0..3 {
            g.vertices.push(Vertex::active(i, 1));
        }
        g.edges.push(Edge::new(0, 0, 1, 1));
        g.edges.push(Edge::new(1, 1, 2, 1));
        g.edges.push(Edge::new(2, 2, 0, 1));
        let r = g.validate();
        assert_eq!(kinds(&r), vec![&Issue::NotATree { edge: EdgeId(2) }]);
        assert!(r.to_string().contains("not a tree"));
    }

    #[test]
    fn two_special_points_is_unstable() {
        let mut g = DualMapGraph::new(p1_inf(), 1);
        g.vertices.push(Vertex::active(0, 1));
        g.vertices.push(Vertex::contracted(1, "inf"));
        g.edges.push(Edge::new(0, 0, 1, 1));
        g.marks.push(MarkedPoint::new(0, 1, 1, Some("inf")));
        let r = g.validate();
        assert_eq!(
            kinds(&r),
            vec![&Issue::UnstableContractedVertex { vertex: VertexId(1), special_points: 2 }]
        );
        assert!(r.to_string().contains("unstable contracted vertex"));
    }

    #[test]
    fn disconnected_and_degree_mismatch() {
        let mut g = DualMapGraph::new(StackyTarget::projective_line(), 3);
        g.vertices.push(Vertex::active(0, 1));
        g.vertices.push(Vertex::active(1, 1));
        let r = g.validate();
        assert!(r.issues.contains(&Issue::Disconnected { vertex: VertexId(1) }));
        assert!(r.issues.contains(&Issue::DegreeMismatch { sum: 2, expected: 3 }));
    }

    #[test]
    fn fiber_bookkeeping() {
        let mut g = DualMapGraph::new(p1_inf(), 3);
        g.vertices.push(Vertex::active(0, 3));
        g.marks.push(MarkedPoint::new(0, 0, 1, Some("inf")));
        let r = g.validate();
        assert_eq!(
            r.issues,
            vec![Issue::FiberIncomplete {
                vertex: VertexId(0),
                point: "inf".into(),
                accounted: 1,
                degree: 3
            }]
        );
        g.flags.full_fiber.insert("inf".into(), false);
        assert!(g.validate().is_valid());
        g.marks.push(MarkedPoint::new(1, 0, 3, Some("inf")));
        assert!(matches!(g.validate().issues[0], Issue::FiberOverflow { accounted: 4, .. }));
    }

    #[test]
    fn contracted_neighbours_must_share_target() {
        let t = StackyTarget::projective_line().with_relative_point("inf").with_relative_point("zero");
        let mut g = DualMapGraph::new(t, 1);
        g.flags.full_fiber.insert("inf".into(), false);
        g.flags.full_fiber.insert("zero".into(), false);
        g.vertices.push(Vertex::active(0, 1));
        g.vertices.push(Vertex::contracted(1, "inf"));
        g.vertices.push(Vertex::contracted(2, "zero"));
        g.edges.push(Edge::new(0, 0, 1, 1));
        g.edges.push(Edge::new(1, 1, 2, 1));
        for k in 0..2 {
            g.marks.push(MarkedPoint::new(k, 1, 0, None));
            g.marks.push(MarkedPoint::new(k + 2, 2, 0, None));
        }
        let r = g.validate();
        assert_eq!(r.issues, vec![Issue::ContractedTargetsDiffer { edge: EdgeId(1) }]);
    }

    #[test]
    fn tangent_marks_need_relative_targets() {
        let t = StackyTarget::weighted_projective(4, 6).unwrap().with_relative_point("inf");
        let mut g = DualMapGraph::new(t, 2);
        g.vertices.push(Vertex::active(0, 2));
        g.marks.push(MarkedPoint::new(0, 0, 2, Some("[1:0]")));
        g.marks.push(MarkedPoint::new(1, 0, 2, Some("nowhere")));
        g.marks.push(MarkedPoint::new(2, 0, 2, Some("inf")));
        let r = g.validate();
        assert!(r.issues.contains(&Issue::TangentMarkNotRelative { mark: MarkId(0) }));
        assert!(r.issues.contains(&Issue::TangentMarkNotRelative { mark: MarkId(1) }));
        assert!(!r.issues.iter().any(|i| matches!(i, Issue::TangentMarkNotRelative { mark: MarkId(2) })));
    }
}
