//! The relative condition at each relative point `x`:
//!
//! 1. every mark with tangency data over `x` maps to `x`;
//! 2. every point of the fiber over `x` is a marked point or lies on a
//!    component contracted to `x`;
//! 3. for every maximal connected subtree `T` contracted to `x`, the
//!    tangencies of the marks on `T` sum to the ramification indices of the
//!    nodes where `T` meets the rest of the curve. A mark over `x` on an
//!    active component is the degenerate case `T = {q}`: the map must be
//!    ramified at `q` to order exactly its tangency.
//!
//! A map satisfying all three at every relative point is smoothable; the
//! predicates [`is_k_gamma`], [`is_n_gamma`] and [`is_m_gamma`] expose the
//! nested loci.
//!
//! Tangency data lists `n_0` free marks first, then the marks of each
//! relative point in order; mark `k` of the graph is the `k`-th entry.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{DisjointSets, DualMapGraph, EdgeId, GraphError, MarkId, TargetPointId, Topology, VertexId, VertexRole};

/// `Γ = (n_0, {Γ_1, x_1}, ..., {Γ_r, x_r})`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangencyData {
    #[serde(default)]
    pub free_marks: u32,
    #[serde(default)]
    pub fibers: Vec<FiberTangency>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberTangency {
    pub point: TargetPointId,
    pub tangencies: Vec<u32>,
    /// Gerbe orders of the marks, if prescribed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gerbe_orders: Option<Vec<u32>>,
}

impl FiberTangency {
    pub fn new(point: impl Into<TargetPointId>, tangencies: &[u32]) -> Self {
        FiberTangency { point: point.into(), tangencies: tangencies.to_vec(), gerbe_orders: None }
    }

    pub fn total(&self) -> u64 {
        self.tangencies.iter().map(|&d| u64::from(d)).sum()
    }
}

/// What the tangency data asks of one mark.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Requirement {
    pub point: Option<TargetPointId>,
    pub tangency: u32,
}

impl TangencyData {
    pub fn new(free_marks: u32, fibers: Vec<FiberTangency>) -> Self {
        TangencyData { free_marks, fibers }
    }

    /// Total number of marks `n`.
    pub fn mark_count(&self) -> usize {
        self.free_marks as usize + self.fibers.iter().map(|f| f.tangencies.len()).sum::<usize>()
    }

    /// Requirements indexed by mark id.
    pub fn requirements(&self) -> Vec<Requirement> {
        let mut out: Vec<Requirement> =
            (0..self.free_marks).map(|_| Requirement { point: None, tangency: 0 }).collect();
        for f in &self.fibers {
            out.extend(f.tangencies.iter().map(|&d| Requirement { point: Some(f.point.clone()), tangency: d }));
        }
        out
    }

    pub fn points(&self) -> impl Iterator<Item = &TargetPointId> {
        self.fibers.iter().map(|f| &f.point)
    }

    /// The tangency data a graph implicitly carries: marks with positive
    /// tangency are required at their recorded target, all others are free.
    /// Only meaningful when mark ids are `0..n` with free marks first.
    pub fn implied_by(g: &DualMapGraph) -> BTreeMap<MarkId, Requirement> {
        g.marks
            .iter()
            .map(|m| {
                let point = if m.tangency > 0 { m.target.clone() } else { None };
                (m.id, Requirement { point, tangency: m.tangency })
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph has {graph} marks but tangency data describes {gamma}")]
    MarkCount { graph: usize, gamma: usize },
    #[error("mark {0} has no counterpart in the tangency data")]
    UnmatchedMark(MarkId),
    #[error("mark {mark} has tangency {graph} in the graph but {gamma} in the tangency data")]
    Tangency { mark: MarkId, graph: u32, gamma: u32 },
    #[error("point {0} is not a relative point of the target")]
    NotRelative(TargetPointId),
    #[error("relative point {0} appears twice in the tangency data")]
    DuplicatePoint(TargetPointId),
    #[error("tangencies over {0} must be positive")]
    ZeroTangency(TargetPointId),
    #[error("gerbe orders over {0} do not match its marks")]
    GerbeOrders(TargetPointId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// A mark required over `x` that lands elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvaluationWitness {
    pub mark: MarkId,
    pub vertex: VertexId,
    pub found: Option<TargetPointId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FiberWitness {
    /// Part of the fiber of an active component is neither marked nor contracted.
    Deficit { vertex: VertexId, accounted: u64, degree: u32 },
    /// A node between two active components lies over `x`.
    UnmarkedNode { edge: EdgeId },
    /// The tangencies over `x` do not add up to the total degree.
    FiberTotal { tangency_sum: u64, degree: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BalanceWitness {
    /// A maximal contracted subtree whose mark tangencies and outgoing
    /// ramifications disagree.
    Subtree { vertices: Vec<VertexId>, tangency_sum: u64, ramification_sum: u64 },
    /// A mark over `x` on an active component, ramified to the wrong order.
    Mark { mark: MarkId, vertex: VertexId, tangency: u32, ramification: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statuses {
    pub evaluation: Status,
    pub fiber: Status,
    pub balance: Status,
}

/// Outcome of the three conditions at one relative point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointReport {
    pub point: TargetPointId,
    pub status: Statuses,
    pub evaluation: Vec<EvaluationWitness>,
    pub fiber: Vec<FiberWitness>,
    pub balance: Vec<BalanceWitness>,
}

impl PointReport {
    pub fn passes(&self) -> bool {
        self.evaluation.is_empty() && self.fiber.is_empty() && self.balance.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub points: Vec<PointReport>,
}

impl ConditionReport {
    /// All conditions hold at every relative point: membership in `K_Γ`.
    pub fn passes(&self) -> bool {
        self.points.iter().all(PointReport::passes)
    }

    pub fn point(&self, x: &TargetPointId) -> Option<&PointReport> {
        self.points.iter().find(|p| &p.point == x)
    }

    pub fn statuses(&self) -> Vec<(TargetPointId, Statuses)> {
        self.points.iter().map(|p| (p.point.clone(), p.status)).collect()
    }
}

/// Maximal connected sets of vertices contracted to `x`, as vertex positions.
pub(crate) fn contracted_subtrees(g: &DualMapGraph, topo: &Topology, x: &TargetPointId) -> Vec<Vec<usize>> {
    let over_x = |i: usize| g.vertices[i].contracted_target() == Some(x);
    let mut sets = DisjointSets::new(g.vertices.len());
    for (i, adj) in topo.adjacent.iter().enumerate() {
        if over_x(i) {
            for &(_, w) in adj {
                if over_x(w) {
                    sets.union(i, w);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in (0..g.vertices.len()).filter(|&i| over_x(i)) {
        groups.entry(sets.find(i)).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Evaluates the conditions at `x` against per-mark requirements.
pub(crate) fn check_point(
    g: &DualMapGraph,
    topo: &Topology,
    requirements: &BTreeMap<MarkId, Requirement>,
    x: &TargetPointId,
    tangency_total: Option<u64>,
) -> PointReport {
    let required_here = |m: MarkId| -> u32 {
        requirements
            .get(&m)
            .filter(|r| r.point.as_ref() == Some(x))
            .map_or(0, |r| r.tangency)
    };

    // (1) evaluation.
    let mut evaluation = Vec::new();
    for m in &g.marks {
        let wanted = requirements.get(&m.id).and_then(|r| r.point.as_ref());
        if wanted == Some(x) {
            let found = g.mark_image(m);
            if found != Some(x) {
                evaluation.push(EvaluationWitness { mark: m.id, vertex: m.vertex, found: found.cloned() });
            }
        }
    }

    // (2) fiber containment.
    let mut fiber = Vec::new();
    for v in g.vertices.iter().filter(|v| v.is_active()) {
        let accounted = g.fiber_accounted(v.id, x);
        if accounted < u64::from(v.degree()) {
            fiber.push(FiberWitness::Deficit { vertex: v.id, accounted, degree: v.degree() });
        }
    }
    for e in &g.edges {
        let both_active = [e.endpoints.0, e.endpoints.1]
            .iter()
            .all(|&w| g.vertex(w).is_some_and(|v| v.is_active()));
        if both_active && e.over.as_ref() == Some(x) {
            fiber.push(FiberWitness::UnmarkedNode { edge: e.id });
        }
    }
    if let Some(total) = tangency_total {
        if g.is_full_fiber(x) && total != u64::from(g.degree) {
            fiber.push(FiberWitness::FiberTotal { tangency_sum: total, degree: g.degree });
        }
    }

    // (3) ramification balance.
    let mut balance = Vec::new();
    for group in contracted_subtrees(g, topo, x) {
        let tangency_sum: u64 = group
            .iter()
            .flat_map(|&i| topo.marks_at[i].iter())
            .map(|&k| u64::from(required_here(g.marks[k].id)))
            .sum();
        let ramification_sum: u64 = group
            .iter()
            .flat_map(|&i| topo.adjacent[i].iter().map(move |&(e, w)| (i, e, w)))
            .filter(|&(_, _, w)| !group.contains(&w))
            .map(|(_, e, w)| u64::from(g.edges[e].ramification_at(g.vertices[w].id)))
            .sum();
        if tangency_sum != ramification_sum {
            let mut vertices: Vec<VertexId> = group.iter().map(|&i| g.vertices[i].id).collect();
            vertices.sort();
            balance.push(BalanceWitness::Subtree { vertices, tangency_sum, ramification_sum });
        }
    }
    for m in &g.marks {
        let on_active = g.vertex(m.vertex).is_some_and(|v| v.is_active());
        if on_active && m.target.as_ref() == Some(x) {
            let tangency = required_here(m.id);
            let ramification = m.local_ramification();
            if tangency != ramification {
                balance.push(BalanceWitness::Mark { mark: m.id, vertex: m.vertex, tangency, ramification });
            }
        }
    }

    PointReport {
        point: x.clone(),
        status: Statuses {
            evaluation: Status::of(evaluation.is_empty()),
            fiber: Status::of(fiber.is_empty()),
            balance: Status::of(balance.is_empty()),
        },
        evaluation,
        fiber,
        balance,
    }
}

fn match_marks(g: &DualMapGraph, gamma: &TangencyData) -> Result<BTreeMap<MarkId, Requirement>, CheckError> {
    let mut seen = alloc::collections::BTreeSet::new();
    for f in &gamma.fibers {
        if !g.target.is_relative(&f.point) {
            return Err(CheckError::NotRelative(f.point.clone()));
        }
        if !seen.insert(&f.point) {
            return Err(CheckError::DuplicatePoint(f.point.clone()));
        }
        if f.tangencies.contains(&0) {
            return Err(CheckError::ZeroTangency(f.point.clone()));
        }
        if f.gerbe_orders.as_ref().is_some_and(|o| o.len() != f.tangencies.len() || o.contains(&0)) {
            return Err(CheckError::GerbeOrders(f.point.clone()));
        }
    }
    let reqs = gamma.requirements();
    if reqs.len() != g.marks.len() {
        return Err(CheckError::MarkCount { graph: g.marks.len(), gamma: reqs.len() });
    }
    let mut out = BTreeMap::new();
    for m in &g.marks {
        let r = reqs.get(m.id.0 as usize).ok_or(CheckError::UnmatchedMark(m.id))?;
        if r.tangency != m.tangency {
            return Err(CheckError::Tangency { mark: m.id, graph: m.tangency, gamma: r.tangency });
        }
        out.insert(m.id, r.clone());
    }
    Ok(out)
}

/// Checks the three conditions at every relative point of `gamma`.
pub fn check_relative(g: &DualMapGraph, gamma: &TangencyData) -> Result<ConditionReport, CheckError> {
    g.ensure_valid()?;
    let requirements = match_marks(g, gamma)?;
    let topo = Topology::new(g);
    let points = gamma
        .fibers
        .iter()
        .map(|f| check_point(g, &topo, &requirements, &f.point, Some(f.total())))
        .collect();
    Ok(ConditionReport { points })
}

/// Checks the conditions at `x` using the tangencies and targets recorded on
/// the graph's own marks.
pub fn check_point_implied(g: &DualMapGraph, x: &TargetPointId) -> Result<PointReport, CheckError> {
    g.ensure_valid()?;
    if !g.target.is_relative(x) {
        return Err(CheckError::NotRelative(x.clone()));
    }
    let requirements = TangencyData::implied_by(g);
    let total: u64 = requirements
        .values()
        .filter(|r| r.point.as_ref() == Some(x))
        .map(|r| u64::from(r.tangency))
        .sum();
    let any = requirements.values().any(|r| r.point.as_ref() == Some(x));
    Ok(check_point(g, &Topology::new(g), &requirements, x, any.then_some(total)))
}

/// Merges every maximal connected set of components contracted to a common
/// point into a single contracted component carrying all of its marks and
/// outgoing nodes. The representative keeps the smallest vertex id.
pub fn reduce_contracted(g: &DualMapGraph) -> Result<DualMapGraph, GraphError> {
    g.ensure_valid()?;
    let topo = Topology::new(g);
    let n = g.vertices.len();
    let mut sets = DisjointSets::new(n);
    let mut internal = alloc::vec![false; g.edges.len()];
    for (k, e) in g.edges.iter().enumerate() {
        let (a, b) = (topo.index[&e.endpoints.0], topo.index[&e.endpoints.1]);
        if !g.vertices[a].is_active() && !g.vertices[b].is_active() {
            sets.union(a, b);
            internal[k] = true;
        }
    }
    // Representative: smallest id in each class.
    let mut rep: BTreeMap<usize, VertexId> = BTreeMap::new();
    for i in 0..n {
        let root = sets.find(i);
        let id = g.vertices[i].id;
        rep.entry(root).and_modify(|r| *r = (*r).min(id)).or_insert(id);
    }
    let new_id = |id: VertexId, sets: &mut DisjointSets| rep[&sets.find(topo.index[&id])];

    let mut out = g.clone();
    out.vertices.retain(|v| {
        let i = topo.index[&v.id];
        rep[&sets.find(i)] == v.id
    });
    out.edges = g
        .edges
        .iter()
        .zip(&internal)
        .filter(|(_, &inside)| !inside)
        .map(|(e, _)| {
            let mut e = e.clone();
            e.endpoints = (new_id(e.endpoints.0, &mut sets), new_id(e.endpoints.1, &mut sets));
            e
        })
        .collect();
    for m in &mut out.marks {
        m.vertex = new_id(m.vertex, &mut sets);
    }
    Ok(out)
}

/// Membership in the nested loci `M_Γ ⊂ N_Γ ⊂ K_Γ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub is_m: bool,
    pub is_n: bool,
    pub is_k: bool,
}

/// Classifies `g` from one run of the checker.
pub fn membership(g: &DualMapGraph, gamma: &TangencyData) -> Result<Membership, CheckError> {
    let report = check_relative(g, gamma)?;
    Ok(membership_from_report(g, gamma, &report))
}

pub fn membership_from_report(g: &DualMapGraph, gamma: &TangencyData, report: &ConditionReport) -> Membership {
    let is_k = report.passes();
    let over_relative = |p: &TargetPointId| gamma.points().any(|x| x == p);
    let smooth_near_fibers = !g.vertices.iter().any(|v| match &v.role {
        VertexRole::Contracted { target } => over_relative(target),
        VertexRole::Active { .. } => false,
    }) && !g.edges.iter().any(|e| e.over.as_ref().is_some_and(over_relative));
    let is_n = is_k && smooth_near_fibers;
    let is_m = is_n && g.vertices.len() == 1;
    Membership { is_m, is_n, is_k }
}

/// Every relative point of `gamma` satisfies all three conditions. With no
/// relative points this holds for every valid graph: genus-zero maps to a
/// weighted projective line always smooth.
pub fn is_k_gamma(g: &DualMapGraph, gamma: &TangencyData) -> Result<bool, CheckError> {
    Ok(membership(g, gamma)?.is_k)
}

/// `is_k_gamma` and the source is smooth near every fiber over a relative point.
pub fn is_n_gamma(g: &DualMapGraph, gamma: &TangencyData) -> Result<bool, CheckError> {
    Ok(membership(g, gamma)?.is_n)
}

/// `is_n_gamma` and the source is a single smooth component.
pub fn is_m_gamma(g: &DualMapGraph, gamma: &TangencyData) -> Result<bool, CheckError> {
    Ok(membership(g, gamma)?.is_m)
}
