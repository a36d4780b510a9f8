//! Realizability of ramification data by genus-zero covers of the line.
//!
//! A degree-`d` cover of `P¹` with branch profiles `λ_1, ..., λ_s` and `b`
//! further simple branch points is the same as a tuple of permutations
//! `σ_1, ..., σ_s, τ_1, ..., τ_b` in `S_d` with `σ_i` of cycle type `λ_i`,
//! every `τ_k` a transposition, product the identity, and transitive joint
//! action. Riemann–Hurwitz fixes `b = 2d - 2 - Σ (d - ℓ(λ_i))` in genus 0.
//!
//! Tuples are counted by dynamic programming over pairs (partial product,
//! partition of `{1..d}` into orbits), with the first factor fixed to a
//! class representative.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::exact::Exact;
use crate::graph::{DualMapGraph, DisjointSets, GraphError, VertexId, VertexRole};

/// Largest degree the permutation representation supports.
pub const HARD_MAX_DEGREE: u32 = 12;
/// Default degree cap; raising it is allowed up to [`HARD_MAX_DEGREE`].
pub const DEFAULT_MAX_DEGREE: u32 = 7;

const N: usize = HARD_MAX_DEGREE as usize;

/// A permutation of `{0, ..., n-1}`, `n ≤ 12`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: [u8; N],
    n: u8,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.img[..self.n as usize]).finish()
    }
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        let mut img = [0u8; N];
        for (i, x) in img.iter_mut().enumerate().take(n) {
            *x = i as u8;
        }
        Perm { img, n: n as u8 }
    }

    pub fn from_images(images: &[u8]) -> Self {
        let mut p = Perm::identity(images.len());
        p.img[..images.len()].copy_from_slice(images);
        p
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.img[..self.n as usize]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        let mut out = *self;
        for i in 0..self.len() {
            out.img[i] = self.img[other.img[i] as usize];
        }
        out
    }

    pub fn inverse(&self) -> Perm {
        let mut out = *self;
        for i in 0..self.len() {
            out.img[self.img[i] as usize] = i as u8;
        }
        out
    }

    /// Cycle lengths in decreasing order.
    pub fn cycle_type(&self) -> Vec<u32> {
        let mut seen = [false; N];
        let mut lengths = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.apply(i);
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }
}

/// A set partition of `{0, ..., n-1}`, each point labelled by the smallest
/// point of its block.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Blocks([u8; N]);

impl Blocks {
    fn discrete(n: usize) -> Self {
        Blocks(Perm::identity(n).img)
    }

    /// Join with the cycles of `p`.
    fn join(&self, p: &Perm) -> Self {
        let n = p.len();
        let mut sets = DisjointSets::new(n);
        for i in 0..n {
            sets.union(i, self.0[i] as usize);
            sets.union(i, p.apply(i));
        }
        let mut out = [0u8; N];
        let mut least = [u8::MAX; N];
        for (i, slot) in out.iter_mut().enumerate().take(n) {
            let r = sets.find(i);
            if least[r] == u8::MAX {
                least[r] = i as u8;
            }
            *slot = least[r];
        }
        Blocks(out)
    }

    fn is_single(&self, n: usize) -> bool {
        self.0[..n].iter().all(|&b| b == 0)
    }
}

/// All permutations of `{0..n-1}` with the given cycle type.
pub fn class_elements(n: usize, cycle_type: &[u32]) -> Vec<Perm> {
    fn go(p: &mut Perm, used: &mut [bool; N], remaining: &mut Vec<u32>, out: &mut Vec<Perm>) {
        let n = p.len();
        let Some(start) = (0..n).find(|&i| !used[i]) else {
            out.push(*p);
            return;
        };
        let mut lengths = remaining.clone();
        lengths.sort_unstable();
        lengths.dedup();
        for len in lengths {
            let pos = remaining.iter().position(|&l| l == len).expect("length present");
            remaining.swap_remove(pos);
            used[start] = true;
            let mut cycle = vec![start];
            extend(p, used, remaining, out, &mut cycle, len as usize);
            used[start] = false;
            remaining.push(len);
        }
    }

    fn extend(p: &mut Perm, used: &mut [bool; N], remaining: &mut Vec<u32>, out: &mut Vec<Perm>, cycle: &mut Vec<usize>, len: usize) {
        if cycle.len() == len {
            for k in 0..len {
                p.img[cycle[k]] = cycle[(k + 1) % len] as u8;
            }
            go(p, used, remaining, out);
            return;
        }
        for j in 0..p.len() {
            if !used[j] {
                used[j] = true;
                cycle.push(j);
                extend(p, used, remaining, out, cycle, len);
                cycle.pop();
                used[j] = false;
            }
        }
    }

    let mut out = Vec::new();
    let mut p = Perm::identity(n);
    let mut used = [false; N];
    let mut remaining = cycle_type.to_vec();
    go(&mut p, &mut used, &mut remaining, &mut out);
    out
}

/// `n! / Π_k (k^{m_k} m_k!)`, the size of the conjugacy class.
pub fn class_size(n: usize, cycle_type: &[u32]) -> u128 {
    factorial(n) / centralizer_order(cycle_type)
}

/// Order of the centralizer of a permutation of the given cycle type.
pub fn centralizer_order(cycle_type: &[u32]) -> u128 {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &l in cycle_type {
        *counts.entry(l).or_default() += 1;
    }
    counts
        .iter()
        .map(|(&k, &m)| u128::from(k).pow(m as u32) * factorial(m))
        .product()
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// A prescribed branch profile over one point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrescribedProfile {
    pub point: String,
    /// Cycle lengths.
    pub parts: Vec<u32>,
    /// The parts sum to at most `d`, the remainder being unconstrained.
    #[serde(default, skip_serializing_if = "core::ops::Not::not")]
    pub partial: bool,
}

impl PrescribedProfile {
    pub fn full(point: impl Into<String>, parts: &[u32]) -> Self {
        let mut parts = parts.to_vec();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        PrescribedProfile { point: point.into(), parts, partial: false }
    }

    pub fn partial(point: impl Into<String>, parts: &[u32]) -> Self {
        PrescribedProfile { partial: true, ..PrescribedProfile::full(point, parts) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationProblem {
    pub degree: u32,
    #[serde(default)]
    pub prescribed: Vec<PrescribedProfile>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HurwitzError {
    #[error("degree {degree} exceeds the limit {max}")]
    Capacity { degree: u32, max: u32 },
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("profile over {0} has a zero part")]
    ZeroPart(String),
    #[error("profile over {point} sums to {sum}, but the degree is {degree}")]
    BadSum { point: String, sum: u64, degree: u32 },
    #[error("profile over {0} is partial; complete it first")]
    Partial(String),
    #[error("vertex {0} is not an active component")]
    NotActive(VertexId),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Outcome of a Hurwitz search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realizability {
    pub exists: bool,
    /// Number of extra simple branch points forced by Riemann–Hurwitz.
    pub rh_extra_branch_points: i64,
    /// Transitive tuples with product the identity.
    pub tuples: u128,
    /// `tuples / d!`: covers weighted by `1 / |Aut|`.
    pub count: Exact,
    /// Isomorphism classes of covers, when the enumeration fit the budget.
    pub covers: Option<u64>,
}

impl RamificationProblem {
    pub fn new(degree: u32, prescribed: Vec<PrescribedProfile>) -> Self {
        RamificationProblem { degree, prescribed }
    }

    pub fn check(&self, max_degree: u32) -> Result<(), HurwitzError> {
        if self.degree == 0 {
            return Err(HurwitzError::ZeroDegree);
        }
        let max = max_degree.min(HARD_MAX_DEGREE);
        if self.degree > max {
            return Err(HurwitzError::Capacity { degree: self.degree, max });
        }
        for p in &self.prescribed {
            if p.parts.contains(&0) {
                return Err(HurwitzError::ZeroPart(p.point.clone()));
            }
            let sum: u64 = p.parts.iter().map(|&x| u64::from(x)).sum();
            let d = u64::from(self.degree);
            if sum > d || (!p.partial && sum != d) {
                return Err(HurwitzError::BadSum { point: p.point.clone(), sum, degree: self.degree });
            }
        }
        Ok(())
    }

    pub fn is_full(&self) -> bool {
        self.prescribed.iter().all(|p| !p.partial)
    }

    /// `2d - 2 - Σ (d - ℓ(λ))` over the full profiles.
    pub fn extra_branch_points(&self) -> i64 {
        let d = i64::from(self.degree);
        2 * d - 2 - self.prescribed.iter().map(|p| d - p.parts.len() as i64).sum::<i64>()
    }
}

/// Partitions of `n` with parts at most `max`, in decreasing order.
pub fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every way of completing the partial profiles to partitions of `d`.
pub fn complete_profiles(p: &RamificationProblem) -> Result<Vec<RamificationProblem>, HurwitzError> {
    p.check(HARD_MAX_DEGREE)?;
    let mut out = vec![RamificationProblem::new(p.degree, Vec::new())];
    for prof in &p.prescribed {
        let options: Vec<Vec<u32>> = if prof.partial {
            let rest = p.degree - prof.parts.iter().sum::<u32>();
            let mut opts: Vec<Vec<u32>> = partitions(rest, rest)
                .into_iter()
                .map(|extra| {
                    let mut all = prof.parts.clone();
                    all.extend(extra);
                    all.sort_unstable_by(|a, b| b.cmp(a));
                    all
                })
                .collect();
            opts.sort_unstable_by(|a, b| b.cmp(a));
            opts.dedup();
            opts
        } else {
            vec![prof.parts.clone()]
        };
        out = out
            .into_iter()
            .flat_map(|partial| {
                options.iter().map(move |parts| {
                    let mut next = partial.clone();
                    next.prescribed.push(PrescribedProfile::full(prof.point.clone(), parts));
                    next
                })
            })
            .collect();
    }
    Ok(out)
}

/// Budget on tuples visited when counting isomorphism classes of covers.
pub const COVER_BUDGET: u64 = 2_000_000;

/// Counts transitive factorizations of the identity for a problem with full
/// profiles.
pub fn realizable(p: &RamificationProblem, max_degree: u32) -> Result<Realizability, HurwitzError> {
    p.check(max_degree)?;
    if let Some(q) = p.prescribed.iter().find(|q| q.partial) {
        return Err(HurwitzError::Partial(q.point.clone()));
    }
    let b = p.extra_branch_points();
    let d = p.degree as usize;
    if b < 0 {
        return Ok(Realizability { exists: false, rh_extra_branch_points: b, tuples: 0, count: Exact::integer(0), covers: Some(0) });
    }
    let mut classes: Vec<Vec<u32>> = p.prescribed.iter().map(|q| q.parts.clone()).collect();
    let mut transposition = vec![1u32; d.saturating_sub(2)];
    if d >= 2 {
        transposition.insert(0, 2);
    }
    classes.extend((0..b).map(|_| transposition.clone()));
    let tuples = count_tuples(d, &classes);
    let count = Exact(Ratio::new(tuples as i128, factorial(d) as i128));
    let covers = if tuples == 0 { Some(0) } else { count_covers(d, &classes, COVER_BUDGET) };
    Ok(Realizability { exists: tuples > 0, rh_extra_branch_points: b, tuples, count, covers })
}

/// Whether some completion of the (possibly partial) profiles is realizable.
pub fn realizable_any(p: &RamificationProblem, max_degree: u32) -> Result<bool, HurwitzError> {
    p.check(max_degree)?;
    for q in complete_profiles(p)? {
        if q.extra_branch_points() >= 0 && exists(&q) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn exists(p: &RamificationProblem) -> bool {
    let d = p.degree as usize;
    let b = p.extra_branch_points();
    if b < 0 {
        return false;
    }
    let mut classes: Vec<Vec<u32>> = p.prescribed.iter().map(|q| q.parts.clone()).collect();
    let mut t = vec![1u32; d.saturating_sub(2)];
    if d >= 2 {
        t.insert(0, 2);
    }
    classes.extend((0..b).map(|_| t.clone()));
    count_tuples(d, &classes) > 0
}

fn drop_trivial(classes: &[Vec<u32>]) -> Vec<Vec<u32>> {
    classes.iter().filter(|c| c.iter().any(|&l| l > 1)).cloned().collect()
}

/// Transitive tuples `(g_1, ..., g_k)` with `g_i` in the given classes and
/// `g_1 ⋯ g_k = 1`.
pub fn count_tuples(d: usize, classes: &[Vec<u32>]) -> u128 {
    // Identity factors contribute exactly one choice each.
    let classes = drop_trivial(classes);
    match classes.len() {
        0 => return u128::from(d == 1),
        1 => return 0,
        _ => {}
    }
    let (first, rest) = classes.split_first().expect("nonempty");
    let (last, middle) = rest.split_last().expect("at least two");
    let rep = class_elements(d, first)[0];
    let mut states: HashMap<(Perm, Blocks), u128> = HashMap::new();
    states.insert((rep, Blocks::discrete(d).join(&rep)), class_size(d, first));
    for class in middle {
        let elements = class_elements(d, class);
        let mut next: HashMap<(Perm, Blocks), u128> = HashMap::with_capacity(states.len() * 2);
        for ((p, blocks), c) in &states {
            for g in &elements {
                let q = p.compose(g);
                *next.entry((q, blocks.join(g))).or_insert(0) += c;
            }
        }
        states = next;
    }
    states
        .iter()
        .filter(|((p, blocks), _)| blocks.is_single(d) && &p.cycle_type() == last)
        .map(|(_, &c)| c)
        .sum()
}

/// Size of the centralizer of a transitive tuple: every element commuting
/// with all generators is fixed by the image of 0.
fn tuple_centralizer(d: usize, gens: &[Perm]) -> u64 {
    let mut total = 0;
    'target: for j in 0..d {
        let mut phi = [u8::MAX; N];
        phi[0] = j as u8;
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            for g in gens {
                let (src, dst) = (g.apply(i), g.apply(phi[i] as usize) as u8);
                if phi[src] == u8::MAX {
                    phi[src] = dst;
                    stack.push(src);
                } else if phi[src] != dst {
                    continue 'target;
                }
            }
        }
        // A map commuting with a transitive group is automatically a bijection.
        total += 1;
    }
    total
}

/// Number of simultaneous-conjugacy orbits of transitive tuples, or `None`
/// if more than `budget` partial tuples would be visited.
pub fn count_covers(d: usize, classes: &[Vec<u32>], budget: u64) -> Option<u64> {
    let classes = drop_trivial(classes);
    match classes.len() {
        0 => return Some(u64::from(d == 1)),
        1 => return Some(0),
        _ => {}
    }
    let (first, rest) = classes.split_first().expect("nonempty");
    let (last, middle) = rest.split_last().expect("at least two");
    let elements: Vec<Vec<Perm>> = middle.iter().map(|c| class_elements(d, c)).collect();
    let estimate: u128 = elements.iter().map(|e| e.len() as u128).product();
    if estimate > u128::from(budget) {
        return None;
    }
    let rep = class_elements(d, first)[0];
    let mut gens = vec![rep];
    let mut weighted = 0u64;
    fn walk(d: usize, level: usize, product: Perm, elements: &[Vec<Perm>], last: &[u32], gens: &mut Vec<Perm>, weighted: &mut u64) {
        if level == elements.len() {
            let closing = product.inverse();
            if closing.cycle_type() != last {
                return;
            }
            gens.push(closing);
            let mut blocks = Blocks::discrete(d);
            for g in gens.iter() {
                blocks = blocks.join(g);
            }
            if blocks.is_single(d) {
                *weighted += tuple_centralizer(d, gens);
            }
            gens.pop();
            return;
        }
        for g in &elements[level] {
            gens.push(*g);
            walk(d, level + 1, product.compose(g), elements, last, gens, weighted);
            gens.pop();
        }
    }
    walk(d, 0, rep, &elements, last, &mut gens, &mut weighted);
    let z = centralizer_order(first) as u64;
    debug_assert_eq!(weighted % z, 0);
    Some(weighted / z)
}

/// The ramification problem an active vertex has to solve: its marks and
/// nodes grouped by the point of the target they map to. Fibers known to be
/// complete give full profiles; everything else is partial.
pub fn vertex_problem(g: &DualMapGraph, v: VertexId) -> Result<RamificationProblem, HurwitzError> {
    g.ensure_valid()?;
    let vertex = g.vertex(v).ok_or(HurwitzError::NotActive(v))?;
    if !vertex.is_active() {
        return Err(HurwitzError::NotActive(v));
    }
    let mut named: BTreeMap<String, Vec<u32>> = BTreeMap::new();
    let mut anonymous: Vec<u32> = Vec::new();
    for m in g.marks_on(v) {
        let r = m.local_ramification();
        match &m.target {
            Some(t) => named.entry(t.0.clone()).or_default().push(r),
            None => anonymous.push(r),
        }
    }
    for e in g.edges_at(v) {
        let r = e.ramification_at(v);
        let w = g.vertex(e.other(v)).expect("valid graph");
        let point = match &w.role {
            VertexRole::Contracted { target } => Some(target),
            VertexRole::Active { .. } => e.over.as_ref(),
        };
        match point {
            Some(t) => named.entry(t.0.clone()).or_default().push(r),
            None => anonymous.push(r),
        }
    }
    let mut prescribed: Vec<PrescribedProfile> = named
        .into_iter()
        .map(|(point, parts)| {
            let full = g.target.is_relative(&point.as_str().into()) && g.is_full_fiber(&point.as_str().into());
            if full {
                PrescribedProfile::full(point, &parts)
            } else {
                PrescribedProfile::partial(point, &parts)
            }
        })
        .collect();
    for (k, r) in anonymous.into_iter().enumerate().filter(|&(_, r)| r > 1) {
        prescribed.push(PrescribedProfile::partial(alloc::format!("#{k}"), &[r]));
    }
    Ok(RamificationProblem::new(vertex.degree(), prescribed))
}

/// Whether the active vertex `v` can be an honest cover with its recorded
/// ramification.
pub fn vertex_realizable(g: &DualMapGraph, v: VertexId, max_degree: u32) -> Result<bool, HurwitzError> {
    realizable_any(&vertex_problem(g, v)?, max_degree)
}
