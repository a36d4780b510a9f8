//! Boundary strata of the space of relative maps with fixed tangency data.
//!
//! A stratum is the combinatorial type of a map: a dual tree whose
//! degenerations all happen over the relative points. Active components
//! meet the fibers over the relative points in their marks and in nodes to
//! components contracted to those points; no two contracted components
//! meet (every type is emitted in reduced form) and no two active
//! components meet. Degenerations over other points of the target are not
//! enumerated.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use serde::{Deserialize, Serialize};

use crate::canonical::{canonical_form, CanonicalKey};
use crate::conditions::{check_relative, membership_from_report, Membership, TangencyData};
use crate::graph::{DualMapGraph, Edge, GraphError, MarkedPoint, Topology, Vertex, VertexRole};
use crate::hurwitz::{realizable_any, vertex_problem, HurwitzError, RamificationProblem};
use crate::twisted::StackyTarget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateOptions {
    pub max_degree: u32,
    pub max_marks: usize,
    pub max_contracted_per_fiber: usize,
    /// Degree cap passed to the Hurwitz search.
    pub hurwitz_max_degree: u32,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            max_degree: 6,
            max_marks: 8,
            max_contracted_per_fiber: 4,
            hurwitz_max_degree: crate::hurwitz::DEFAULT_MAX_DEGREE,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StrataError {
    #[error("degree {degree} exceeds the enumeration limit {max}")]
    DegreeCapacity { degree: u32, max: u32 },
    #[error("{marks} marks exceed the enumeration limit {max}")]
    MarkCapacity { marks: usize, max: usize },
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("tangencies over {point} sum to {sum}, not to the degree {degree}")]
    FiberTotal { point: String, sum: u64, degree: u32 },
    #[error("{0} is not a relative point of the target")]
    NotRelative(String),
    #[error("relative point {0} appears twice")]
    DuplicatePoint(String),
    #[error("tangencies over {0} must be positive")]
    ZeroTangency(String),
    #[error(transparent)]
    Hurwitz(#[from] HurwitzError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub key: CanonicalKey,
    pub graph: DualMapGraph,
    pub dimension: i64,
    /// Codimension in the space of maps from a smooth source.
    pub codimension: i64,
    pub flags: Membership,
}

/// Dimension of the stratum of `g`: each active component contributes
/// `2 deg + k - 2` minus the contact orders at its points with prescribed
/// image, each contracted component `max(0, k - 3)`, with `k` its number of
/// special points. A node between two active components not over a fixed
/// point imposes one matching condition.
pub fn dimension(g: &DualMapGraph) -> Result<i64, GraphError> {
    g.ensure_valid()?;
    let topo = Topology::new(g);
    let mut dim = 0i64;
    for (i, v) in g.vertices.iter().enumerate() {
        let k = topo.special_points(i) as i64;
        match &v.role {
            VertexRole::Active { degree } => {
                let marks: i64 = g
                    .marks_on(v.id)
                    .filter(|m| m.target.is_some())
                    .map(|m| i64::from(m.local_ramification()))
                    .sum();
                let nodes: i64 = g
                    .edges_at(v.id)
                    .filter(|e| {
                        let w = g.vertex(e.other(v.id)).expect("valid graph");
                        !w.is_active() || e.over.is_some()
                    })
                    .map(|e| i64::from(e.ramification_at(v.id)))
                    .sum();
                dim += 2 * i64::from(*degree) + k - 2 - marks - nodes;
            }
            VertexRole::Contracted { .. } => dim += (k - 3).max(0),
        }
    }
    let matching = g
        .edges
        .iter()
        .filter(|e| {
            e.over.is_none()
                && [e.endpoints.0, e.endpoints.1].iter().all(|&w| g.vertex(w).is_some_and(|v| v.is_active()))
        })
        .count() as i64;
    Ok(dim - matching)
}

/// Dimension of the locus of maps from a smooth source with tangency data
/// `gamma`: `2d + n - 2 - Σ d_jk`.
pub fn smooth_dimension(gamma: &TangencyData, degree: u32) -> i64 {
    let tangency: i64 = gamma.fibers.iter().map(|f| f.total() as i64).sum();
    2 * i64::from(degree) + gamma.mark_count() as i64 - 2 - tangency
}

/// Partitions of `d` into active component degrees, largest first.
pub fn degree_partitions(d: u32) -> Vec<Vec<u32>> {
    crate::hurwitz::partitions(d, d)
}

fn check_input(gamma: &TangencyData, target: &StackyTarget, degree: u32, opts: &EnumerateOptions) -> Result<(), StrataError> {
    if degree == 0 {
        return Err(StrataError::ZeroDegree);
    }
    if degree > opts.max_degree {
        return Err(StrataError::DegreeCapacity { degree, max: opts.max_degree });
    }
    let marks = gamma.mark_count();
    if marks > opts.max_marks {
        return Err(StrataError::MarkCapacity { marks, max: opts.max_marks });
    }
    let mut seen = BTreeSet::new();
    for f in &gamma.fibers {
        let name = || f.point.0.clone();
        if !target.is_relative(&f.point) {
            return Err(StrataError::NotRelative(name()));
        }
        if !seen.insert(&f.point) {
            return Err(StrataError::DuplicatePoint(name()));
        }
        if f.tangencies.contains(&0) {
            return Err(StrataError::ZeroTangency(name()));
        }
        if f.total() != u64::from(degree) {
            return Err(StrataError::FiberTotal { point: name(), sum: f.total(), degree });
        }
    }
    Ok(())
}

/// One way of arranging the fiber over a single relative point.
#[derive(Clone, Debug)]
struct FiberLayout {
    contracted: usize,
    /// Slot of each mark (in fiber order): `< A` is an active vertex,
    /// otherwise contracted vertex `slot - A`.
    slots: Vec<usize>,
    /// `weights[v][c]`: ramification of the node between active `v` and
    /// contracted `c`, 0 for no node.
    weights: Vec<Vec<u32>>,
}

/// Nonnegative integer matrices with the given row and column sums.
fn matrices(rows: &[u32], cols: &[u32]) -> Vec<Vec<Vec<u32>>> {
    fn fill(r: usize, c: usize, rows: &mut Vec<u32>, cols: &mut Vec<u32>, m: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        let (nr, nc) = (rows.len(), cols.len());
        if r == nr {
            if cols.iter().all(|&x| x == 0) {
                out.push(m.clone());
            }
            return;
        }
        if c == nc {
            if rows[r] == 0 {
                fill(r + 1, 0, rows, cols, m, out);
            }
            return;
        }
        let hi = rows[r].min(cols[c]);
        // The last column of a row takes everything that is left.
        let lo = if c + 1 == nc { rows[r] } else { 0 };
        if lo > hi {
            return;
        }
        for x in lo..=hi {
            rows[r] -= x;
            cols[c] -= x;
            m[r][c] = x;
            fill(r, c + 1, rows, cols, m, out);
            m[r][c] = 0;
            rows[r] += x;
            cols[c] += x;
        }
    }
    let mut out = Vec::new();
    let mut m = vec![vec![0; cols.len()]; rows.len()];
    fill(0, 0, &mut rows.to_vec(), &mut cols.to_vec(), &mut m, &mut out);
    out
}

/// Assignments of marks to slots, nondecreasing along runs of equal
/// tangency, every contracted slot used, no active vertex overfull.
fn slot_assignments(tangencies: &[u32], degrees: &[u32], contracted: usize) -> Vec<Vec<usize>> {
    struct Walk<'a> {
        t: &'a [u32],
        degrees: &'a [u32],
        slots: usize,
        load: Vec<u32>,
        current: Vec<usize>,
        out: Vec<Vec<usize>>,
    }
    impl Walk<'_> {
        fn go(&mut self, k: usize) {
            let a = self.degrees.len();
            if k == self.t.len() {
                if (a..self.slots).all(|s| self.load[s] > 0) {
                    self.out.push(self.current.clone());
                }
                return;
            }
            let start = if k > 0 && self.t[k] == self.t[k - 1] { self.current[k - 1] } else { 0 };
            for s in start..self.slots {
                if s < a && self.load[s] + self.t[k] > self.degrees[s] {
                    continue;
                }
                self.load[s] += self.t[k];
                self.current.push(s);
                self.go(k + 1);
                self.current.pop();
                self.load[s] -= self.t[k];
            }
        }
    }
    let slots = degrees.len() + contracted;
    let mut w = Walk { t: tangencies, degrees, slots, load: vec![0; slots], current: Vec::new(), out: Vec::new() };
    w.go(0);
    w.out
}

fn fiber_layouts(tangencies: &[u32], degrees: &[u32], max_contracted: usize) -> Vec<FiberLayout> {
    let a = degrees.len();
    let mut out = Vec::new();
    for contracted in 0..=max_contracted.min(tangencies.len()) {
        for slots in slot_assignments(tangencies, degrees, contracted) {
            let mut rows: Vec<u32> = degrees.to_vec();
            let mut cols = vec![0u32; contracted];
            for (&s, &t) in slots.iter().zip(tangencies) {
                if s < a {
                    rows[s] -= t;
                } else {
                    cols[s - a] += t;
                }
            }
            for weights in matrices(&rows, &cols) {
                out.push(FiberLayout { contracted, slots: slots.clone(), weights });
            }
        }
    }
    out
}

/// Multisets of size `n` from `0..slots`, as nondecreasing sequences.
fn multisets(n: usize, slots: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    if slots == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for rest in multisets(n - 1, slots) {
        let lo = rest.last().copied().unwrap_or(0);
        for s in lo..slots {
            let mut next = rest.clone();
            next.push(s);
            out.push(next);
        }
    }
    out
}

/// Cache of Hurwitz verdicts keyed by the multiset of profiles.
#[derive(Default)]
pub struct RealizabilityCache {
    verdicts: HashMap<Vec<(bool, Vec<u32>)>, bool>,
}

impl RealizabilityCache {
    pub fn realizable(&mut self, p: &RamificationProblem, max_degree: u32) -> Result<bool, HurwitzError> {
        let mut key: Vec<(bool, Vec<u32>)> = p.prescribed.iter().map(|q| (q.partial, q.parts.clone())).collect();
        key.push((false, vec![p.degree]));
        key.sort();
        if let Some(&v) = self.verdicts.get(&key) {
            return Ok(v);
        }
        let v = realizable_any(p, max_degree)?;
        self.verdicts.insert(key, v);
        Ok(v)
    }
}

/// Strata whose active components have the given degrees.
pub fn enumerate_partition(
    gamma: &TangencyData,
    target: &StackyTarget,
    degrees: &[u32],
    opts: &EnumerateOptions,
) -> Result<Vec<Stratum>, StrataError> {
    let degree: u32 = degrees.iter().sum();
    check_input(gamma, target, degree, opts)?;
    let a = degrees.len();

    // Fiber marks sorted by tangency, remembering their ids.
    let mut next_id = gamma.free_marks;
    let fibers: Vec<(Vec<u32>, Vec<u32>, Vec<u32>)> = gamma
        .fibers
        .iter()
        .map(|f| {
            let mut order: Vec<usize> = (0..f.tangencies.len()).collect();
            order.sort_by_key(|&k| core::cmp::Reverse(f.tangencies[k]));
            let ids: Vec<u32> = order.iter().map(|&k| next_id + k as u32).collect();
            let t: Vec<u32> = order.iter().map(|&k| f.tangencies[k]).collect();
            let gerbes: Vec<u32> =
                order.iter().map(|&k| f.gerbe_orders.as_ref().map_or(1, |g| g[k])).collect();
            next_id += f.tangencies.len() as u32;
            (t, ids, gerbes)
        })
        .collect();
    let layouts: Vec<Vec<FiberLayout>> =
        fibers.iter().map(|(t, _, _)| fiber_layouts(t, degrees, opts.max_contracted_per_fiber)).collect();

    let mut cache = RealizabilityCache::default();
    let mut found: BTreeMap<CanonicalKey, Stratum> = BTreeMap::new();
    let mut choice = vec![0usize; layouts.len()];
    if layouts.iter().any(Vec::is_empty) {
        return Ok(Vec::new());
    }
    loop {
        let picked: Vec<&FiberLayout> = choice.iter().zip(&layouts).map(|(&i, l)| &l[i]).collect();
        let vertices = a + picked.iter().map(|l| l.contracted).sum::<usize>();
        let edges: usize = picked.iter().map(|l| l.weights.iter().flatten().filter(|&&w| w > 0).count()).sum();
        if edges + 1 == vertices {
            for free in multisets(gamma.free_marks as usize, vertices) {
                let g = build(gamma, target, degrees, &fibers, &picked, &free);
                if let Some(s) = admit(g, gamma, opts, &mut cache)? {
                    found.entry(s.key.clone()).or_insert(s);
                }
            }
        }
        // Advance the mixed-radix counter.
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return Ok(found.into_values().collect());
            }
            choice[pos] += 1;
            if choice[pos] < layouts[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

fn build(
    gamma: &TangencyData,
    target: &StackyTarget,
    degrees: &[u32],
    fibers: &[(Vec<u32>, Vec<u32>, Vec<u32>)],
    picked: &[&FiberLayout],
    free: &[usize],
) -> DualMapGraph {
    let a = degrees.len();
    let mut g = DualMapGraph::new(target.clone(), degrees.iter().sum());
    for (i, &d) in degrees.iter().enumerate() {
        g.vertices.push(Vertex::active(i as u32, d));
    }
    for x in &target.relative_points {
        if !gamma.points().any(|p| p == x) {
            g.flags.full_fiber.insert(x.clone(), false);
        }
    }
    let mut offset = a;
    for ((fiber, layout), (tangencies, ids, gerbes)) in gamma.fibers.iter().zip(picked).zip(fibers) {
        let x = fiber.point.as_str();
        for c in 0..layout.contracted {
            g.vertices.push(Vertex::contracted((offset + c) as u32, x));
        }
        for (v, row) in layout.weights.iter().enumerate() {
            for (c, &w) in row.iter().enumerate() {
                if w > 0 {
                    let id = g.edges.len() as u32;
                    g.edges.push(Edge::new(id, v as u32, (offset + c) as u32, w));
                }
            }
        }
        for (k, &s) in layout.slots.iter().enumerate() {
            let vertex = if s < a { s } else { offset + s - a };
            let mut m = MarkedPoint::new(ids[k], vertex as u32, tangencies[k], Some(x));
            m.stabilizer_order = gerbes[k];
            g.marks.push(m);
        }
        offset += layout.contracted;
    }
    for (k, &s) in free.iter().enumerate() {
        g.marks.push(MarkedPoint::new(k as u32, s as u32, 0, None));
    }
    g.marks.sort_by_key(|m| m.id);
    g
}

fn admit(
    g: DualMapGraph,
    gamma: &TangencyData,
    opts: &EnumerateOptions,
    cache: &mut RealizabilityCache,
) -> Result<Option<Stratum>, StrataError> {
    if !g.validate().is_valid() {
        return Ok(None);
    }
    let report = match check_relative(&g, gamma) {
        Ok(r) => r,
        Err(_) => return Ok(None),
    };
    if !report.passes() {
        return Ok(None);
    }
    for v in g.vertices.iter().filter(|v| v.is_active()) {
        let problem = vertex_problem(&g, v.id)?;
        if !cache.realizable(&problem, opts.hurwitz_max_degree)? {
            return Ok(None);
        }
    }
    let flags = membership_from_report(&g, gamma, &report);
    let key = canonical_form(&g)?;
    let dim = dimension(&g)?;
    Ok(Some(Stratum { key, codimension: smooth_dimension(gamma, g.degree) - dim, dimension: dim, graph: g, flags }))
}

/// Deduplicates by canonical key and sorts.
pub fn merge(parts: impl IntoIterator<Item = Vec<Stratum>>) -> Vec<Stratum> {
    let mut all: BTreeMap<CanonicalKey, Stratum> = BTreeMap::new();
    for s in parts.into_iter().flatten() {
        all.entry(s.key.clone()).or_insert(s);
    }
    all.into_values().collect()
}

/// All strata of degree `degree` with tangency data `gamma`, sorted by key.
pub fn enumerate(
    gamma: &TangencyData,
    target: &StackyTarget,
    degree: u32,
    opts: &EnumerateOptions,
) -> Result<Vec<Stratum>, StrataError> {
    check_input(gamma, target, degree, opts)?;
    let parts = degree_partitions(degree)
        .iter()
        .map(|p| enumerate_partition(gamma, target, p, opts))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(merge(parts))
}
