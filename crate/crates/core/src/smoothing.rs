//! Explicit smoothing certificates over one relative point `x`.
//!
//! Let `E` be a component contracted to `x` meeting active components
//! `C_1, ..., C_r` at nodes with ramification `e_1, ..., e_r`. Smoothing the
//! map produces a total space with an `A_{m_j - 1}` singularity at the
//! `j`-th node, where
//!
//! ```text
//! a   = e_1 e_2 ... e_r          (coefficient of E in the pullback of x)
//! m_j = a / e_j                  (product of the other ramifications)
//! ```
//!
//! and the intersection numbers on the total space are
//! `E·C_j = 1/m_j`, `E² = -Σ 1/m_j`. The pullback `D + Σ a E` of the fiber
//! over `x` then meets every `E` in degree zero exactly when the tangencies
//! on `E` sum to the ramifications leaving it. This module computes the
//! data and checks every identity in exact rationals.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::conditions::{check_point, CheckError, PointReport, Requirement};
pub use crate::exact::Exact;
use crate::graph::{DualMapGraph, EdgeId, GraphError, MarkId, TargetPointId, Topology, VertexId};

/// How the ramification indices enter the product formulas.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "edges", rename_all = "snake_case")]
pub enum Multipliers {
    /// `a = Π e_j`, `m_j = a / e_j`.
    #[default]
    Unit,
    /// Every listed `e_j` is replaced by `r_j e_j` in both formulas.
    /// Unlisted edges keep `r_j = 1`.
    Scaled(BTreeMap<EdgeId, u32>),
    /// The smallest multiple `a` of `Π e_j` such that every `m_j = a / e_j`
    /// is divisible by the listed integer.
    DivisibleBy(BTreeMap<EdgeId, u32>),
}

impl Multipliers {
    fn edges(&self) -> Option<&BTreeMap<EdgeId, u32>> {
        match self {
            Multipliers::Unit => None,
            Multipliers::Scaled(m) | Multipliers::DivisibleBy(m) => Some(m),
        }
    }

    fn at(&self, e: EdgeId) -> u32 {
        self.edges().and_then(|m| m.get(&e).copied()).unwrap_or(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRecipe {
    pub edge: EdgeId,
    /// The active component on the other side.
    pub active: VertexId,
    /// `e_j`, ramification of the active side.
    pub ramification: u32,
    /// `r_j` for scaled recipes, the prescribed divisor otherwise (1 by default).
    pub multiplier: u32,
    /// `m_j`.
    pub order: u64,
    /// `A_{m_j - 1}`.
    pub singularity: String,
    /// Order of the node stabilizer, `μ_{m_j}`.
    pub stabilizer_order: u64,
    /// Exponent of the smoothing parameter: local equation `xy = t^{m_j}`.
    pub smoothing_exponent: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecipe {
    pub vertex: VertexId,
    /// `a`.
    pub coefficient: u64,
    /// Sum of the tangencies of the marks on the component.
    pub mark_weight: u64,
    pub nodes: Vec<NodeRecipe>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothingRecipe {
    pub point: TargetPointId,
    pub construction: Multipliers,
    pub components: Vec<ComponentRecipe>,
    /// Nodes not meeting a component contracted to the point.
    pub untouched_nodes: Vec<EdgeId>,
}

impl SmoothingRecipe {
    pub fn component(&self, v: VertexId) -> Option<&ComponentRecipe> {
        self.components.iter().find(|c| c.vertex == v)
    }

    /// Least common multiple of all singularity orders.
    pub fn order_lcm(&self) -> u64 {
        self.components
            .iter()
            .flat_map(|c| c.nodes.iter())
            .fold(1u64, |acc, n| acc.lcm(&n.order))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RecipeError {
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("edge {edge} joins two components contracted to {point}; reduce the graph first")]
    Unreduced { edge: EdgeId, point: TargetPointId },
    #[error("the relative condition fails at {}", .0.point)]
    ConditionsFail(PointReport),
    #[error("multiplier given for edge {0}, which does not meet a component contracted to the point")]
    StrayMultiplier(EdgeId),
    #[error("multiplier for edge {0} must be positive")]
    ZeroMultiplier(EdgeId),
    #[error("coefficient overflows 64 bits at vertex {0}")]
    Overflow(VertexId),
}

impl From<GraphError> for RecipeError {
    fn from(e: GraphError) -> Self {
        RecipeError::Check(CheckError::Graph(e))
    }
}

fn requirements(g: &DualMapGraph) -> BTreeMap<MarkId, Requirement> {
    crate::conditions::TangencyData::implied_by(g)
}

fn weight_over(g: &DualMapGraph, v: VertexId, x: &TargetPointId) -> u64 {
    g.marks_on(v)
        .filter(|m| m.tangency > 0 && m.target.as_ref() == Some(x))
        .map(|m| u64::from(m.tangency))
        .sum()
}

/// The recipe at `x`, requiring the graph to be reduced at `x` and to satisfy
/// the relative condition there (with tangencies read off the graph's marks).
pub fn recipe(g: &DualMapGraph, x: &TargetPointId, multipliers: &Multipliers) -> Result<SmoothingRecipe, RecipeError> {
    let rec = recipe_unchecked(g, x, multipliers)?;
    let report = check_point(g, &Topology::new(g), &requirements(g), x, total_over(g, x));
    if !report.passes() {
        return Err(RecipeError::ConditionsFail(report));
    }
    Ok(rec)
}

fn total_over(g: &DualMapGraph, x: &TargetPointId) -> Option<u64> {
    let mut tangent = g.marks.iter().filter(|m| m.tangency > 0 && m.target.as_ref() == Some(x)).peekable();
    tangent.peek()?;
    Some(tangent.map(|m| u64::from(m.tangency)).sum())
}

/// The recipe at `x` without checking the relative condition, so that the
/// intersection identities can be evaluated on unbalanced configurations.
pub fn recipe_unchecked(
    g: &DualMapGraph,
    x: &TargetPointId,
    multipliers: &Multipliers,
) -> Result<SmoothingRecipe, RecipeError> {
    g.ensure_valid()?;
    if !g.target.is_relative(x) {
        return Err(CheckError::NotRelative(x.clone()).into());
    }
    let over_x = |v: VertexId| g.vertex(v).and_then(|v| v.contracted_target()) == Some(x);
    for e in &g.edges {
        if over_x(e.endpoints.0) && over_x(e.endpoints.1) {
            return Err(RecipeError::Unreduced { edge: e.id, point: x.clone() });
        }
    }
    if let Some(map) = multipliers.edges() {
        for (&e, &r) in map {
            let edge = g.edge(e).ok_or(RecipeError::StrayMultiplier(e))?;
            if !over_x(edge.endpoints.0) && !over_x(edge.endpoints.1) {
                return Err(RecipeError::StrayMultiplier(e));
            }
            if r == 0 {
                return Err(RecipeError::ZeroMultiplier(e));
            }
        }
    }

    let mut components = Vec::new();
    let mut touched = alloc::collections::BTreeSet::new();
    for v in g.vertices.iter().filter(|v| over_x(v.id)) {
        let nodes: Vec<(EdgeId, VertexId, u32, u32)> = g
            .edges_at(v.id)
            .map(|e| {
                let w = e.other(v.id);
                (e.id, w, e.ramification_at(w), multipliers.at(e.id))
            })
            .collect();
        let overflow = || RecipeError::Overflow(v.id);
        let product = |scale: bool| {
            nodes.iter().try_fold(1u64, |acc, &(_, _, e, r)| {
                let factor = if scale { u64::from(e) * u64::from(r) } else { u64::from(e) };
                acc.checked_mul(factor)
            })
        };
        let (coefficient, effective): (u64, Vec<u64>) = match multipliers {
            Multipliers::Unit => {
                (product(false).ok_or_else(overflow)?, nodes.iter().map(|n| u64::from(n.2)).collect())
            }
            Multipliers::Scaled(_) => (
                product(true).ok_or_else(overflow)?,
                nodes.iter().map(|n| u64::from(n.2) * u64::from(n.3)).collect(),
            ),
            Multipliers::DivisibleBy(_) => {
                let mut a = product(false).ok_or_else(overflow)?;
                for &(_, _, e, t) in &nodes {
                    let need = u64::from(e) * u64::from(t);
                    a = a.checked_div(a.gcd(&need)).and_then(|q| q.checked_mul(need)).ok_or_else(overflow)?;
                }
                (a, nodes.iter().map(|n| u64::from(n.2)).collect())
            }
        };
        let nodes = nodes
            .iter()
            .zip(effective)
            .map(|(&(edge, active, ramification, multiplier), eff)| {
                touched.insert(edge);
                let order = coefficient / eff;
                NodeRecipe {
                    edge,
                    active,
                    ramification,
                    multiplier,
                    order,
                    singularity: format!("A_{}", order - 1),
                    stabilizer_order: order,
                    smoothing_exponent: order,
                }
            })
            .collect();
        components.push(ComponentRecipe { vertex: v.id, coefficient, mark_weight: weight_over(g, v.id, x), nodes });
    }
    let untouched_nodes = g.edges.iter().map(|e| e.id).filter(|e| !touched.contains(e)).collect();
    Ok(SmoothingRecipe { point: x.clone(), construction: multipliers.clone(), components, untouched_nodes })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeIntersection {
    pub edge: EdgeId,
    pub active: VertexId,
    /// `E·C`.
    pub e_dot_c: Exact,
    /// `a E·C`.
    pub weighted: Exact,
    /// `e`, or `r e` for scaled recipes.
    pub expected: Exact,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentIntersections {
    pub vertex: VertexId,
    /// `E²`.
    pub self_intersection: Exact,
    /// `D·E`.
    pub mark_degree: Exact,
    /// `(D + Σ a E)·E`.
    pub total: Exact,
    pub nodes: Vec<NodeIntersection>,
    pub balanced: bool,
}

/// `E_i·E_k` for distinct contracted components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossTerm {
    pub first: VertexId,
    pub second: VertexId,
    pub value: Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionReport {
    pub point: TargetPointId,
    pub components: Vec<ComponentIntersections>,
    pub cross_terms: Vec<CrossTerm>,
    /// `a E·C = e` at every node.
    pub node_identities_hold: bool,
    /// `(D + Σ a E)·E = 0` on every contracted component.
    pub balance_identity_holds: bool,
    /// Every denominator divides the lcm of the singularity orders.
    pub denominators_divide_lcm: bool,
}

impl IntersectionReport {
    pub fn all_hold(&self) -> bool {
        self.node_identities_hold && self.balance_identity_holds && self.denominators_divide_lcm
    }

    /// Contracted components where `(D + Σ a E)·E ≠ 0`.
    pub fn unbalanced(&self) -> Vec<VertexId> {
        self.components.iter().filter(|c| !c.balanced).map(|c| c.vertex).collect()
    }
}

fn zero() -> Ratio<i128> {
    Ratio::from_integer(0)
}

fn ratio(n: u64, d: u64) -> Exact {
    Exact::new(i128::from(n), i128::from(d))
}

/// Evaluates the intersection numbers of the recipe and checks the identities.
pub fn verify_intersections(g: &DualMapGraph, rec: &SmoothingRecipe) -> IntersectionReport {
    let x = &rec.point;
    let mut components = Vec::new();
    for c in &rec.components {
        let a = Exact::integer(i128::from(c.coefficient));
        let self_intersection = Exact(-c.nodes.iter().map(|n| ratio(1, n.order).0).sum::<Ratio<i128>>());
        let mark_degree = Exact::integer(i128::from(weight_over(g, c.vertex, x)));
        let total = Exact(mark_degree.0 + a.0 * self_intersection.0);
        let nodes = c
            .nodes
            .iter()
            .map(|n| {
                let e_dot_c = ratio(1, n.order);
                let weighted = Exact(a.0 * e_dot_c.0);
                let scale = if matches!(rec.construction, Multipliers::Scaled(_)) { n.multiplier } else { 1 };
                let expected = Exact::integer(i128::from(n.ramification) * i128::from(scale));
                NodeIntersection { edge: n.edge, active: n.active, e_dot_c, weighted, expected, holds: weighted == expected }
            })
            .collect();
        components.push(ComponentIntersections {
            vertex: c.vertex,
            self_intersection,
            mark_degree,
            total,
            nodes,
            balanced: total.is_zero(),
        });
    }
    let mut cross_terms = Vec::new();
    for (i, ci) in rec.components.iter().enumerate() {
        for ck in &rec.components[i + 1..] {
            let shared = g
                .edges
                .iter()
                .filter(|e| e.touches(ci.vertex) && e.touches(ck.vertex))
                .count();
            cross_terms.push(CrossTerm {
                first: ci.vertex,
                second: ck.vertex,
                value: Exact::integer(shared as i128),
            });
        }
    }
    let lcm = i128::from(rec.order_lcm());
    let denominators_divide_lcm = components.iter().all(|c| {
        [c.self_intersection, c.mark_degree, c.total]
            .iter()
            .chain(c.nodes.iter().flat_map(|n| [&n.e_dot_c, &n.weighted]))
            .all(|q| lcm % q.denom() == 0)
    });
    IntersectionReport {
        point: x.clone(),
        node_identities_hold: components.iter().all(|c| c.nodes.iter().all(|n| n.holds)),
        balance_identity_holds: components.iter().all(|c| c.balanced)
            && cross_terms.iter().all(|t| t.value.is_zero()),
        denominators_divide_lcm,
        components,
        cross_terms,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDegree {
    pub vertex: VertexId,
    pub active: bool,
    /// `deg (D + Σ a E - B)` on the component.
    pub degree: Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub point: TargetPointId,
    pub components: Vec<ComponentDegree>,
    pub all_zero: bool,
}

impl DegreeReport {
    pub fn nonzero(&self) -> Vec<VertexId> {
        self.components.iter().filter(|c| !c.degree.is_zero()).map(|c| c.vertex).collect()
    }
}

/// Degree of `D + Σ a E - B` on every component, where `B` has degree
/// `deg(v)` on an active component and 0 on a contracted one. All zero means
/// the divisor is trivial on the central fiber, so the smoothed family maps
/// to the target and restricts to the original map.
pub fn verify_degree_zero(g: &DualMapGraph, rec: &SmoothingRecipe) -> DegreeReport {
    let x = &rec.point;
    let mut weighted: BTreeMap<VertexId, Ratio<i128>> = BTreeMap::new();
    let mut contracted: BTreeMap<VertexId, Ratio<i128>> = BTreeMap::new();
    for c in &rec.components {
        let a = Ratio::from_integer(i128::from(c.coefficient));
        let mut self_term = Ratio::from_integer(0);
        for n in &c.nodes {
            let meet = ratio(1, n.order).0;
            *weighted.entry(n.active).or_insert_with(|| Ratio::from_integer(0)) += a * meet;
            self_term -= a * meet;
        }
        contracted.insert(c.vertex, self_term);
    }
    let components: Vec<ComponentDegree> = g
        .vertices
        .iter()
        .map(|v| {
            let d = Ratio::from_integer(i128::from(weight_over(g, v.id, x)));
            let (active, degree) = if v.is_active() {
                let b = Ratio::from_integer(i128::from(v.degree()));
                (true, d + weighted.get(&v.id).copied().unwrap_or_else(zero) - b)
            } else {
                (false, d + contracted.get(&v.id).copied().unwrap_or_else(zero))
            };
            ComponentDegree { vertex: v.id, active, degree: Exact(degree) }
        })
        .collect();
    DegreeReport { point: x.clone(), all_zero: components.iter().all(|c| c.degree.is_zero()), components }
}

/// A node or a marked point: the places where a log structure can be twisted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "id", rename_all = "snake_case")]
pub enum LogPoint {
    Node(EdgeId),
    Mark(MarkId),
}

impl fmt::Display for LogPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogPoint::Node(e) => write!(f, "{e}"),
            LogPoint::Mark(m) => write!(f, "{m}"),
        }
    }
}

/// Multipliers `φ = (m_1, ..., m_r)` of a simple morphism of log structures.
///
/// A multiplier `m` at a node is the same datum as an `A_{m-1}` singularity
/// of the total space there, and as a `μ_m` stabilizer on the twisted node.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleExtension {
    #[serde(with = "log_point_map")]
    pub multipliers: BTreeMap<LogPoint, u64>,
}

impl SimpleExtension {
    pub fn get(&self, p: LogPoint) -> u64 {
        self.multipliers.get(&p).copied().unwrap_or(1)
    }
}

/// `m_j` at every smoothed node, 1 at every other node.
pub fn simple_extension(rec: &SmoothingRecipe) -> SimpleExtension {
    let mut multipliers: BTreeMap<LogPoint, u64> =
        rec.untouched_nodes.iter().map(|&e| (LogPoint::Node(e), 1)).collect();
    for n in rec.components.iter().flat_map(|c| c.nodes.iter()) {
        multipliers.insert(LogPoint::Node(n.edge), n.order);
    }
    SimpleExtension { multipliers }
}

/// JSON maps need string keys; the multipliers serialize as a list of pairs.
mod log_point_map {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct Entry {
        #[serde(flatten)]
        at: LogPoint,
        multiplier: u64,
    }

    pub fn serialize<S: Serializer>(map: &BTreeMap<LogPoint, u64>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(map.iter().map(|(&at, &multiplier)| Entry { at, multiplier }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<LogPoint, u64>, D::Error> {
        let entries = Vec::<Entry>::deserialize(d)?;
        Ok(entries.into_iter().map(|e| (e.at, e.multiplier)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, MarkedPoint, Vertex};
    use crate::twisted::StackyTarget;
    use alloc::vec;

    /// Contracted vertex 0 over ∞ joined to active vertices of degree
    /// `e_j` with ramification `e_j`, carrying marks with the given tangencies.
    fn star(es: &[u32], marks: &[u32]) -> DualMapGraph {
        let d = es.iter().sum();
        let mut g = DualMapGraph::new(StackyTarget::projective_line().with_relative_point("inf"), d);
        g.vertices.push(Vertex::contracted(0, "inf"));
        for (j, &e) in es.iter().enumerate() {
            let j = j as u32;
            g.vertices.push(Vertex::active(j + 1, e));
            g.edges.push(Edge::new(j, 0, j + 1, e));
        }
        for (k, &t) in marks.iter().enumerate() {
            g.marks.push(MarkedPoint::new(k as u32, 0, t, Some("inf")));
        }
        g
    }

    fn inf() -> TargetPointId {
        "inf".into()
    }

    fn orders(rec: &SmoothingRecipe) -> Vec<u64> {
        rec.components[0].nodes.iter().map(|n| n.order).collect()
    }

    #[test]
    fn two_three_recipe() {
        let g = star(&[2, 3], &[2, 3]);
        let rec = recipe(&g, &inf(), &Multipliers::Unit).unwrap();
        assert_eq!(rec.components[0].coefficient, 6);
        assert_eq!(orders(&rec), vec![3, 2]);
        assert_eq!(rec.components[0].nodes[0].singularity, "A_2");
        let report = verify_intersections(&g, &rec);
        assert!(report.all_hold(), "{report:?}");
        let c = &report.components[0];
        assert_eq!(c.self_intersection, Exact::new(-5, 6));
        assert_eq!(c.mark_degree, Exact::integer(5));
        assert_eq!(c.total, Exact::integer(0));
        assert!(verify_degree_zero(&g, &rec).all_zero);
        let ext = simple_extension(&rec);
        assert_eq!(ext.get(LogPoint::Node(EdgeId(0))), 3);
        assert_eq!(ext.get(LogPoint::Node(EdgeId(1))), 2);
    }

    #[test]
    fn unbalanced_component_fails_second_identity() {
        let g = {
            let mut g = star(&[2, 3], &[1, 3]);
            g.flags.full_fiber.insert(inf(), true);
            g
        };
        assert!(matches!(recipe(&g, &inf(), &Multipliers::Unit), Err(RecipeError::ConditionsFail(_))));
        let rec = recipe_unchecked(&g, &inf(), &Multipliers::Unit).unwrap();
        let report = verify_intersections(&g, &rec);
        assert!(report.node_identities_hold);
        assert!(!report.balance_identity_holds);
        assert_eq!(report.components[0].total, Exact::integer(-1));
        assert_eq!(verify_degree_zero(&g, &rec).nonzero(), vec![VertexId(0)]);
    }

    #[test]
    fn comb_recipe_is_smooth() {
        let g = star(&[4], &[1, 1, 1, 1]);
        let rec = recipe(&g, &inf(), &Multipliers::Unit).unwrap();
        assert_eq!(rec.components[0].coefficient, 4);
        assert_eq!(orders(&rec), vec![1]);
        assert_eq!(rec.components[0].nodes[0].singularity, "A_0");
        let report = verify_intersections(&g, &rec);
        assert_eq!(report.components[0].nodes[0].weighted, Exact::integer(4));
        assert!(report.all_hold());
        let deg = verify_degree_zero(&g, &rec);
        assert!(deg.all_zero);
        assert_eq!(deg.components.len(), 2);
        assert_eq!(simple_extension(&rec).multipliers.len(), 1);
    }

    #[test]
    fn scaled_recipe_follows_substitution() {
        let g = star(&[2, 3], &[2, 3]);
        let m = Multipliers::Scaled([(EdgeId(1), 2)].into_iter().collect());
        let rec = recipe(&g, &inf(), &m).unwrap();
        assert_eq!(rec.components[0].coefficient, 12);
        assert_eq!(orders(&rec), vec![6, 2]);
        let report = verify_intersections(&g, &rec);
        assert!(report.node_identities_hold);
        assert_eq!(report.components[0].nodes[1].weighted, Exact::integer(6));
        // 5 - 12 (1/6 + 1/2) = -3: the substitution alone does not keep the
        // pullback trivial on E.
        assert_eq!(report.components[0].total, Exact::integer(-3));
        assert!(!report.balance_identity_holds);
        let ext = simple_extension(&rec);
        assert_eq!(ext.get(LogPoint::Node(EdgeId(0))), 6);
        assert_eq!(ext.get(LogPoint::Node(EdgeId(1))), 2);
    }

    #[test]
    fn divisible_recipe_keeps_identities() {
        let g = star(&[2, 3], &[2, 3]);
        let m = Multipliers::DivisibleBy([(EdgeId(1), 4)].into_iter().collect());
        let rec = recipe(&g, &inf(), &m).unwrap();
        assert_eq!(rec.components[0].coefficient, 12);
        assert_eq!(orders(&rec), vec![6, 4]);
        assert!(verify_intersections(&g, &rec).all_hold());
        assert!(verify_degree_zero(&g, &rec).all_zero);
    }

    #[test]
    fn no_contracted_vertices() {
        let mut g = DualMapGraph::new(StackyTarget::projective_line().with_relative_point("inf"), 3);
        g.vertices.push(Vertex::active(0, 3));
        g.marks.push(MarkedPoint::new(0, 0, 1, Some("inf")));
        g.marks.push(MarkedPoint::new(1, 0, 2, Some("inf")));
        let rec = recipe(&g, &inf(), &Multipliers::Unit).unwrap();
        assert!(rec.components.is_empty());
        assert!(verify_intersections(&g, &rec).all_hold());
        let deg = verify_degree_zero(&g, &rec);
        assert_eq!(deg.components[0].degree, Exact::integer(0));
    }

    #[test]
    fn unreduced_and_stray_inputs_are_rejected() {
        let mut g = star(&[2], &[1]);
        g.vertices.push(Vertex::contracted(9, "inf"));
        g.edges.push(Edge::new(7, 0, 9, 1));
        g.marks.push(MarkedPoint::new(1, 9, 1, Some("inf")));
        g.marks.push(MarkedPoint::new(2, 9, 0, None));
        assert!(matches!(recipe(&g, &inf(), &Multipliers::Unit), Err(RecipeError::Unreduced { .. })));
        let g = star(&[2, 3], &[2, 3]);
        let m = Multipliers::Scaled([(EdgeId(5), 2)].into_iter().collect());
        assert_eq!(recipe(&g, &inf(), &m), Err(RecipeError::StrayMultiplier(EdgeId(5))));
    }

}
