//! Stacky targets and stabilizer bookkeeping.
//!
//! Targets are rational orbifold curves: a coarse projective line with a
//! generic stabilizer and finitely many special points of larger order. The
//! weighted projective line `P(a, b)` is the main instance; its generic
//! stabilizer has order `gcd(a, b)` and `P(a, b) -> P(a/k, b/k)` is étale,
//! so smoothability questions reduce to the coprime case.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::conditions::{check_relative, CheckError, ConditionReport, FiberTangency, TangencyData};
use crate::graph::{DualMapGraph, Edge, EdgeId, GraphError, MarkId, MarkedPoint, TargetPointId, Vertex};
use crate::smoothing::{LogPoint, SimpleExtension};

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialPoint {
    pub label: TargetPointId,
    pub order: u32,
}

/// A rational orbifold curve together with its labelled relative points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StackyTarget {
    #[serde(default = "one")]
    pub generic_order: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub special_points: Vec<SpecialPoint>,
    /// Points with generic stabilizer at which tangency is imposed.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relative_points: Vec<TargetPointId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointKind {
    /// Index into `relative_points`.
    Relative(usize),
    Generic,
    StackySpecial { order: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TargetIssue {
    ZeroGenericOrder,
    SpecialOrderNotMultiple { point: TargetPointId, order: u32 },
    DuplicatePoint { point: TargetPointId },
}

impl fmt::Display for TargetIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetIssue::ZeroGenericOrder => f.write_str("generic stabilizer order must be positive"),
            TargetIssue::SpecialOrderNotMultiple { point, order } => {
                write!(f, "special point {point} has order {order}, not a multiple of the generic order")
            }
            TargetIssue::DuplicatePoint { point } => write!(f, "point {point} is declared twice"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TwistedError {
    #[error("weights must be positive, got ({0}, {1})")]
    NonPositiveWeights(u32, u32),
    #[error("no contact exponent for {0} over a stacky point")]
    MissingContact(LogPoint),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl StackyTarget {
    /// The schematic projective line.
    pub fn projective_line() -> Self {
        StackyTarget { generic_order: 1, special_points: Vec::new(), relative_points: Vec::new() }
    }

    /// `P(a, b)`: generic stabilizer `gcd(a, b)`, and `[1:0]`, `[0:1]` with
    /// stabilizers of orders `a` and `b` (listed only when larger than generic).
    pub fn weighted_projective(a: u32, b: u32) -> Result<Self, TwistedError> {
        if a == 0 || b == 0 {
            return Err(TwistedError::NonPositiveWeights(a, b));
        }
        let k = a.gcd(&b);
        let special_points = [("[1:0]", a), ("[0:1]", b)]
            .into_iter()
            .filter(|&(_, order)| order > k)
            .map(|(label, order)| SpecialPoint { label: label.into(), order })
            .collect();
        Ok(StackyTarget { generic_order: k, special_points, relative_points: Vec::new() })
    }

    pub fn with_relative_point(mut self, label: impl Into<TargetPointId>) -> Self {
        self.relative_points.push(label.into());
        self
    }

    /// Resolves a label. Labels not declared as relative or special name
    /// generic points.
    pub fn kind_of(&self, p: &TargetPointId) -> PointKind {
        if let Some(i) = self.relative_points.iter().position(|x| x == p) {
            return PointKind::Relative(i);
        }
        if let Some(s) = self.special_points.iter().find(|s| &s.label == p) {
            return PointKind::StackySpecial { order: s.order };
        }
        PointKind::Generic
    }

    pub fn is_relative(&self, p: &TargetPointId) -> bool {
        matches!(self.kind_of(p), PointKind::Relative(_))
    }

    /// Stabilizer order at `p`.
    pub fn order_at(&self, p: &TargetPointId) -> u32 {
        match self.kind_of(p) {
            PointKind::StackySpecial { order } => order,
            _ => self.generic_order,
        }
    }

    pub fn check(&self) -> Vec<TargetIssue> {
        let mut issues = Vec::new();
        if self.generic_order == 0 {
            issues.push(TargetIssue::ZeroGenericOrder);
        }
        let mut seen = BTreeSet::new();
        for s in &self.special_points {
            if self.generic_order != 0 && (s.order == 0 || s.order % self.generic_order != 0) {
                issues.push(TargetIssue::SpecialOrderNotMultiple { point: s.label.clone(), order: s.order });
            }
            if !seen.insert(&s.label) {
                issues.push(TargetIssue::DuplicatePoint { point: s.label.clone() });
            }
        }
        for p in &self.relative_points {
            if !seen.insert(p) {
                issues.push(TargetIssue::DuplicatePoint { point: p.clone() });
            }
        }
        issues
    }
}

/// `(a, b) -> (a/k, b/k, k)` with `k = gcd(a, b)`.
pub fn coprime_reduce(a: u32, b: u32) -> Result<(u32, u32, u32), TwistedError> {
    if a == 0 || b == 0 {
        return Err(TwistedError::NonPositiveWeights(a, b));
    }
    let k = a.gcd(&b);
    Ok((a / k, b / k, k))
}

/// Smallest `s >= 1` with `b | s * c`.
pub fn minimal_order(b: u32, c: u32) -> u32 {
    b / b.gcd(&c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StabilizerViolation {
    /// A mark over a point with generic stabilizer must have order dividing it.
    MarkOrder { mark: MarkId, point: TargetPointId, order: u32, generic_order: u32 },
    ZeroNodeOrder { edge: EdgeId },
    ZeroMarkOrder { mark: MarkId },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerReport {
    pub violations: Vec<StabilizerViolation>,
}

impl StabilizerReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Representability checks for stabilizer orders recorded on `g`.
pub fn check_stabilizers(g: &DualMapGraph, target: &StackyTarget) -> StabilizerReport {
    let mut violations = Vec::new();
    for m in &g.marks {
        if m.stabilizer_order == 0 {
            violations.push(StabilizerViolation::ZeroMarkOrder { mark: m.id });
            continue;
        }
        if let Some(p) = g.mark_image(m) {
            if target.is_relative(p)
                && !target.generic_order.is_multiple_of(m.stabilizer_order)
            {
                violations.push(StabilizerViolation::MarkOrder {
                    mark: m.id,
                    point: p.clone(),
                    order: m.stabilizer_order,
                    generic_order: target.generic_order,
                });
            }
        }
    }
    for e in &g.edges {
        if e.stabilizer_order == 0 {
            violations.push(StabilizerViolation::ZeroNodeOrder { edge: e.id });
        }
    }
    StabilizerReport { violations }
}

/// Minimal stabilizer orders at every special point of `g` over a stacky
/// point of `target`: a point with contact exponent `c` over a point with
/// stabilizer of order `b` needs order `b / gcd(b, c)`.
pub fn minimal_stabilizers(
    g: &DualMapGraph,
    target: &StackyTarget,
) -> Result<BTreeMap<LogPoint, u32>, TwistedError> {
    let stacky = |p: &TargetPointId| match target.kind_of(p) {
        PointKind::StackySpecial { order } => Some(order),
        _ => None,
    };
    let mut out = BTreeMap::new();
    for m in &g.marks {
        let Some(v) = g.vertex(m.vertex) else { continue };
        let Some(p) = g.mark_image(m) else { continue };
        let Some(b) = stacky(p) else { continue };
        let c = if v.is_active() {
            m.local_ramification()
        } else if m.tangency > 0 {
            m.tangency
        } else {
            return Err(TwistedError::MissingContact(LogPoint::Mark(m.id)));
        };
        out.insert(LogPoint::Mark(m.id), minimal_order(b, c));
    }
    for e in &g.edges {
        let (Some(a), Some(b)) = (g.vertex(e.endpoints.0), g.vertex(e.endpoints.1)) else { continue };
        let image = a.contracted_target().or(b.contracted_target()).or(e.over.as_ref());
        let Some(order) = image.and_then(stacky) else { continue };
        let s = [a, b]
            .iter()
            .filter(|v| v.is_active())
            .map(|v| minimal_order(order, e.ramification_at(v.id)))
            .fold(1u32, |acc, s| acc.lcm(&s));
        out.insert(LogPoint::Node(e.id), s);
    }
    Ok(out)
}

/// Combines stabilizer requirements with a simple extension by taking lcms.
pub fn compose_with_extension(stabilizers: &BTreeMap<LogPoint, u32>, ext: &SimpleExtension) -> SimpleExtension {
    let mut multipliers = ext.multipliers.clone();
    for (&p, &s) in stabilizers {
        let entry = multipliers.entry(p).or_insert(1);
        *entry = entry.lcm(&u64::from(s));
    }
    SimpleExtension { multipliers }
}

// --- Elliptic fibrations -------------------------------------------------

/// Label used for `j = ∞` on the `P(4, 6)` target.
pub const J_INFINITY: &str = "j=inf";

/// A marked multiplicative singular fiber `I_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedFiber {
    /// Kodaira symbol, e.g. `"I2"` or `"I_7"`.
    pub fiber: String,
    #[serde(default = "one")]
    pub stabilizer_order: u32,
}

impl MarkedFiber {
    pub fn multiplicative(n: u32) -> Self {
        MarkedFiber { fiber: format!("I{n}"), stabilizer_order: 1 }
    }

    /// The `n` of an `I_n` fiber; `None` for any other Kodaira type.
    pub fn multiplicative_order(&self) -> Option<u32> {
        let s = self.fiber.trim();
        let rest = s.strip_prefix('I')?;
        let rest = rest.strip_prefix('_').unwrap_or(rest);
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        rest.parse().ok().filter(|&n| n > 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "j", rename_all = "snake_case")]
pub enum JMap {
    /// Non-constant j-map of the given degree.
    Varying { degree: u32 },
    /// Component whose j-invariant is identically ∞.
    ConstantInfinity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllipticComponent {
    #[serde(flatten)]
    pub j_map: JMap,
    #[serde(default)]
    pub marked_fibers: Vec<MarkedFiber>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attachment {
    pub components: (u32, u32),
    /// Ramification of the j-map at the node on the varying side.
    #[serde(default = "one")]
    pub ramification: u32,
    #[serde(default = "one")]
    pub stabilizer_order: u32,
}

/// A twisted elliptic surface over a tree of rational curves with marked
/// multiplicative fibers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllipticConfig {
    pub components: Vec<EllipticComponent>,
    #[serde(default)]
    pub attachments: Vec<Attachment>,
    /// Whether the marked fibers and attachments exhaust `j^{-1}(∞)`.
    /// Every fiber of type I_n over `j = ∞` is marked, so each varying
    /// component's j-degree must equal its marked orders plus attachments.
    #[serde(default)]
    pub full_fiber: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EllipticError {
    #[error("component {component}: fiber {fiber:?} is not multiplicative (I_n)")]
    NonMultiplicative { component: usize, fiber: String },
    #[error("component {component}: j-degree must be positive")]
    ZeroDegree { component: usize },
    #[error("component {component}: j-degree {degree} but marked orders and attachments account for {accounted}")]
    InconsistentDegree { component: usize, degree: u32, accounted: u64 },
    #[error("attachment references unknown component {0}")]
    UnknownComponent(u32),
    #[error("no component has a varying j-map")]
    NoVaryingComponent,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Check(#[from] CheckError),
}

/// Translates a fibration to the dual graph of its j-map over `P(4, 6)`:
/// an `I_n` fiber becomes a mark of tangency `n` over `j = ∞`; a component
/// of j-degree `m` an active vertex of degree `m`; a component with
/// `j ≡ ∞` a contracted vertex.
pub fn elliptic_to_gamma(cfg: &EllipticConfig) -> Result<(DualMapGraph, TangencyData), EllipticError> {
    let inf = TargetPointId::from(J_INFINITY);
    let target = StackyTarget::weighted_projective(4, 6)
        .expect("positive weights")
        .with_relative_point(inf.clone());

    let n = cfg.components.len() as u32;
    for a in &cfg.attachments {
        for c in [a.components.0, a.components.1] {
            if c >= n {
                return Err(EllipticError::UnknownComponent(c));
            }
        }
    }

    let mut total = 0u32;
    let mut deficit = false;
    let mut g = DualMapGraph::new(target, 0);
    let mut tangencies = Vec::new();
    for (i, comp) in cfg.components.iter().enumerate() {
        let id = i as u32;
        let active = match comp.j_map {
            JMap::Varying { degree } => {
                if degree == 0 {
                    return Err(EllipticError::ZeroDegree { component: i });
                }
                total += degree;
                g.vertices.push(Vertex::active(id, degree));
                true
            }
            JMap::ConstantInfinity => {
                g.vertices.push(Vertex::contracted(id, inf.clone()));
                false
            }
        };
        let mut accounted = 0u64;
        for f in &comp.marked_fibers {
            let order = f.multiplicative_order().ok_or_else(|| EllipticError::NonMultiplicative {
                component: i,
                fiber: f.fiber.clone(),
            })?;
            let mut m = MarkedPoint::new(tangencies.len() as u32, id, order, Some(J_INFINITY));
            m.stabilizer_order = f.stabilizer_order;
            if active {
                // The j-map has a pole of order n at an I_n fiber.
                m = m.with_ramification(order);
            }
            g.marks.push(m);
            tangencies.push(order);
            accounted += u64::from(order);
        }
        if let JMap::Varying { degree } = comp.j_map {
            for a in &cfg.attachments {
                let other = if a.components.0 == id {
                    a.components.1
                } else if a.components.1 == id {
                    a.components.0
                } else {
                    continue;
                };
                if matches!(cfg.components[other as usize].j_map, JMap::ConstantInfinity) {
                    accounted += u64::from(a.ramification);
                }
            }
            let d = u64::from(degree);
            if accounted > d || (cfg.full_fiber && accounted < d) {
                return Err(EllipticError::InconsistentDegree { component: i, degree, accounted });
            }
            deficit |= accounted < d;
        }
    }
    if total == 0 {
        return Err(EllipticError::NoVaryingComponent);
    }
    g.degree = total;
    for (k, a) in cfg.attachments.iter().enumerate() {
        let mut e = Edge::new(k as u32, a.components.0, a.components.1, a.ramification);
        e.stabilizer_order = a.stabilizer_order;
        g.edges.push(e);
    }
    if deficit {
        g.flags.full_fiber.insert(inf.clone(), false);
    }
    g.ensure_valid()?;

    let gamma = TangencyData {
        free_marks: 0,
        fibers: if tangencies.is_empty() {
            Vec::new()
        } else {
            alloc::vec![FiberTangency { point: inf, tangencies, gerbe_orders: None }]
        },
    };
    Ok((g, gamma))
}

/// Smoothability verdict for a marked elliptic fibration, with the checker report.
pub fn elliptic_verdict(cfg: &EllipticConfig) -> Result<(bool, ConditionReport), EllipticError> {
    let (g, gamma) = elliptic_to_gamma(cfg)?;
    let report = check_relative(&g, &gamma)?;
    Ok((report.passes(), report))
}

/// Marks on vertices contracted to stacky points, for diagnostics.
pub fn marks_over_stacky_points(g: &DualMapGraph, target: &StackyTarget) -> Vec<MarkId> {
    g.marks
        .iter()
        .filter(|m| {
            g.mark_image(m)
                .is_some_and(|p| matches!(target.kind_of(p), PointKind::StackySpecial { .. }))
        })
        .map(|m| m.id)
        .collect()
}
