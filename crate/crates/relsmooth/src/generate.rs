//! Seeded random instances for property tests and the `sample` command.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use relsmooth_core::conditions::{FiberTangency, TangencyData};
use relsmooth_core::graph::{Edge, EdgeId, MarkId, MarkedPoint, Ramification, Vertex, VertexId};
use relsmooth_core::{DualMapGraph, StackyTarget, TargetPointId};

pub const INF: &str = "inf";

/// Random composition of `total` into `parts` positive integers.
fn composition<R: Rng>(rng: &mut R, total: u32, parts: usize) -> Vec<u32> {
    assert!(parts >= 1 && total as usize >= parts);
    let mut cuts: Vec<u32> = (1..total).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<u32> = cuts.into_iter().take(parts - 1).collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts.into_iter().chain([total]) {
        out.push(c - prev);
        prev = c;
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub struct StarOptions {
    pub max_ramification: u32,
    pub max_edges: usize,
    pub max_stars: usize,
}

impl Default for StarOptions {
    fn default() -> Self {
        StarOptions { max_ramification: 12, max_edges: 6, max_stars: 3 }
    }
}

/// Contracted components over [`INF`] joined to active components. Each
/// contracted component is the centre of a star; consecutive stars share one
/// active component, so the result is a tree. Every active degree equals the
/// sum of its node ramifications, and the contracted components listed in
/// `unbalanced` carry mark tangencies whose sum differs from the sum of their
/// node ramifications. The rest are balanced.
#[derive(Clone, Debug)]
pub struct StarConfig {
    pub graph: DualMapGraph,
    pub contracted: Vec<VertexId>,
    pub unbalanced: BTreeSet<VertexId>,
}

pub fn star_config<R: Rng>(rng: &mut R, opts: &StarOptions, unbalanced_share: f64) -> StarConfig {
    let stars = rng.gen_range(1..=opts.max_stars);
    let target = StackyTarget::projective_line().with_relative_point(INF);
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut degrees: Vec<u32> = Vec::new();
    let mut edges = Vec::new();
    let mut marks = Vec::new();
    let mut contracted = Vec::new();
    let mut unbalanced = BTreeSet::new();
    let mut shared: Option<usize> = None;

    for _ in 0..stars {
        let centre = vertices.len() as u32;
        vertices.push(Vertex::contracted(centre, INF));
        degrees.push(0);
        contracted.push(VertexId(centre));
        let k = rng.gen_range(1..=opts.max_edges);
        let mut ram_sum = 0u32;
        let mut leaves = Vec::new();
        for j in 0..k {
            // The first edge of every star after the first reuses an active
            // component of the previous star.
            let active = match (j, shared) {
                (0, Some(s)) => s,
                _ => {
                    let id = vertices.len();
                    vertices.push(Vertex::active(id as u32, 0));
                    degrees.push(0);
                    id
                }
            };
            let lo = if k == 1 { 2 } else { 1 };
            let e = rng.gen_range(lo..=opts.max_ramification.max(lo));
            edges.push(Edge::new(edges.len() as u32, centre, active as u32, e));
            degrees[active] += e;
            ram_sum += e;
            leaves.push(active);
        }
        shared = leaves.choose(rng).copied();

        let min_marks = 3usize.saturating_sub(k).max(1);
        let skew = rng.gen_bool(unbalanced_share);
        let total = if skew {
            unbalanced.insert(VertexId(centre));
            let mut t = ram_sum;
            while t == ram_sum || (t as usize) < min_marks {
                t = rng.gen_range(1..=ram_sum + 4);
            }
            t
        } else {
            ram_sum
        };
        let count = rng.gen_range(min_marks..=(total as usize).min(min_marks + 4));
        for t in composition(rng, total, count) {
            marks.push(MarkedPoint::new(marks.len() as u32, centre, t, Some(INF)));
        }
    }

    for (v, d) in vertices.iter_mut().zip(&degrees) {
        if v.is_active() {
            *v = Vertex::active(v.id.0, *d);
        }
    }
    let degree = degrees.iter().sum();
    let mut graph = DualMapGraph::new(target, degree);
    graph.vertices = vertices;
    graph.edges = edges;
    graph.marks = marks;
    StarConfig { graph, contracted, unbalanced }
}

/// Tangency data of a star configuration: every mark lies over [`INF`] and
/// mark ids run in list order.
pub fn star_gamma(g: &DualMapGraph) -> TangencyData {
    let mut marks: Vec<&MarkedPoint> = g.marks.iter().collect();
    marks.sort_by_key(|m| m.id);
    let tangencies: Vec<u32> = marks.iter().map(|m| m.tangency).collect();
    TangencyData::new(0, vec![FiberTangency::new(INF, &tangencies)])
}

/// Replaces one contracted component having at least four special points by
/// two adjacent contracted components over the same point, each keeping at
/// least two of the original special points. Returns `None` when no
/// component qualifies.
pub fn split_contracted<R: Rng>(rng: &mut R, g: &DualMapGraph) -> Option<DualMapGraph> {
    let candidates: Vec<&Vertex> = g
        .vertices
        .iter()
        .filter(|v| !v.is_active() && g.edges_at(v.id).count() + g.marks_on(v.id).count() >= 4)
        .collect();
    let v = *candidates.choose(rng)?;
    let x = v.contracted_target()?.clone();
    let new_vertex = VertexId(g.vertices.iter().map(|w| w.id.0).max().unwrap_or(0) + 1);
    let new_edge = EdgeId(g.edges.iter().map(|e| e.id.0).max().map_or(0, |m| m + 1));

    // Special points of `v`: edges as `Ok(position)`, marks as `Err(position)`.
    let mut special: Vec<Result<usize, usize>> = g
        .edges
        .iter()
        .enumerate()
        .filter(|(_, e)| e.touches(v.id))
        .map(|(k, _)| Ok(k))
        .chain(g.marks.iter().enumerate().filter(|(_, m)| m.vertex == v.id).map(|(k, _)| Err(k)))
        .collect();
    special.shuffle(rng);
    let moved = rng.gen_range(2..=special.len() - 2);

    let mut out = g.clone();
    out.vertices.push(Vertex::contracted(new_vertex.0, x));
    for s in &special[..moved] {
        match *s {
            Ok(k) => {
                let e = &mut out.edges[k];
                if e.endpoints.0 == v.id {
                    e.endpoints.0 = new_vertex;
                } else {
                    e.endpoints.1 = new_vertex;
                }
            }
            Err(k) => out.marks[k].vertex = new_vertex,
        }
    }
    out.edges.push(Edge::new(new_edge.0, v.id.0, new_vertex.0, 1));
    Some(out)
}

#[derive(Clone, Copy, Debug)]
pub struct GraphOptions {
    pub max_vertices: usize,
    pub relative_points: usize,
    pub max_ramification: u32,
    /// Probability that a vertex is contracted; children of contracted
    /// vertices use the square root of it, which favours contracted subtrees.
    pub contracted_share: f64,
}

impl Default for GraphOptions {
    fn default() -> Self {
        GraphOptions { max_vertices: 8, relative_points: 2, max_ramification: 3, contracted_share: 0.45 }
    }
}

const POINTS: [&str; 3] = [INF, "0", "1"];

/// A random valid graph together with the tangency data read off its marks.
///
/// Mark ids are numbered free marks first and then fiber by fiber, matching
/// the order of the returned tangency data. Active degrees are the largest
/// amount of fiber accounted for over any relative point, occasionally plus
/// one, so both passing and failing instances occur.
pub fn random_graph<R: Rng>(rng: &mut R, opts: &GraphOptions) -> (DualMapGraph, TangencyData) {
    loop {
        if let Some(found) = try_random_graph(rng, opts) {
            return found;
        }
    }
}

fn try_random_graph<R: Rng>(rng: &mut R, opts: &GraphOptions) -> Option<(DualMapGraph, TangencyData)> {
    let points: Vec<TargetPointId> = POINTS[..opts.relative_points.clamp(1, POINTS.len())]
        .iter()
        .map(|&p| TargetPointId::from(p))
        .collect();
    let mut target = StackyTarget::projective_line();
    target.relative_points = points.clone();

    let n = rng.gen_range(1..=opts.max_vertices.max(1));
    let mut parent = vec![None; n];
    let mut roles: Vec<Option<TargetPointId>> = vec![None; n];
    for i in 0..n {
        if i > 0 {
            parent[i] = Some(rng.gen_range(0..i));
        }
        let inherited = parent[i].and_then(|p| roles[p].clone());
        let share = if inherited.is_some() { opts.contracted_share.sqrt() } else { opts.contracted_share };
        if rng.gen_bool(share) {
            roles[i] = Some(inherited.unwrap_or_else(|| points.choose(rng).expect("nonempty").clone()));
        }
    }
    if roles.iter().all(Option::is_some) {
        roles[rng.gen_range(0..n)] = None;
    }

    let mut edges = Vec::new();
    for (i, p) in parent.iter().enumerate() {
        let Some(p) = *p else { continue };
        let id = edges.len() as u32;
        let e = rng.gen_range(1..=opts.max_ramification);
        let mut edge = Edge::new(id, p as u32, i as u32, e);
        if roles[i].is_none() && roles[p].is_none() {
            if rng.gen_bool(0.3) {
                edge.ramification = Ramification::Pair(e, rng.gen_range(1..=opts.max_ramification));
            }
            if rng.gen_bool(0.25) {
                edge.over = Some(points.choose(rng).expect("nonempty").clone());
            }
        } else if roles[i].is_some() && roles[p].is_some() {
            edge.ramification = Ramification::Single(1);
        }
        edges.push(edge);
    }

    // Marks: (vertex, tangency, target, ramification override).
    let mut raw: Vec<(usize, u32, Option<TargetPointId>, Option<u32>)> = Vec::new();
    let mut special = vec![0usize; n];
    for (i, p) in parent.iter().enumerate() {
        if let Some(p) = *p {
            special[i] += 1;
            special[p] += 1;
        }
    }
    for i in 0..n {
        match &roles[i] {
            Some(x) => {
                let extra = rng.gen_range(0..=2usize);
                let count = 3usize.saturating_sub(special[i]).max(usize::from(rng.gen_bool(0.6))) + extra / 2;
                for _ in 0..count {
                    let t = rng.gen_range(1..=opts.max_ramification);
                    raw.push((i, t, Some(x.clone()), None));
                }
            }
            None => {
                for _ in 0..rng.gen_range(0..=2) {
                    let x = points.choose(rng).expect("nonempty").clone();
                    let t = rng.gen_range(1..=2);
                    let ram = rng.gen_bool(0.2).then(|| rng.gen_range(1..=2));
                    raw.push((i, t, Some(x), ram));
                }
                if rng.gen_bool(0.3) {
                    raw.push((i, 0, None, None));
                }
            }
        }
    }

    // Free marks first, then fiber by fiber.
    raw.sort_by_key(|(_, t, x, _)| match x {
        None => (0usize, 0u32),
        Some(p) => (1 + points.iter().position(|q| q == p).expect("declared"), *t),
    });
    raw.shuffle_within_groups(rng, |(_, _, x, _)| x.clone());

    let mut g = DualMapGraph::new(target, 1);
    g.vertices = roles
        .iter()
        .enumerate()
        .map(|(i, r)| match r {
            Some(x) => Vertex::contracted(i as u32, x.clone()),
            None => Vertex::active(i as u32, 1),
        })
        .collect();
    g.edges = edges;
    g.marks = raw
        .iter()
        .enumerate()
        .map(|(id, (v, t, x, ram))| {
            let mut m = MarkedPoint::new(id as u32, *v as u32, *t, x.as_ref().map(TargetPointId::as_str));
            m.ramification = *ram;
            m
        })
        .collect();

    let mut total = 0u32;
    for (i, role) in roles.iter().enumerate() {
        if role.is_some() {
            continue;
        }
        let id = VertexId(i as u32);
        let need = points.iter().map(|x| g.fiber_accounted(id, x)).max().unwrap_or(0).max(1) as u32;
        let d = need + u32::from(rng.gen_bool(0.15));
        g.vertices[i] = Vertex::active(i as u32, d);
        total += d;
    }
    g.degree = total;
    for x in &points {
        let full = g.vertices.iter().filter(|v| v.is_active()).all(|v| g.fiber_accounted(v.id, x) == u64::from(v.degree()));
        if !full {
            g.flags.full_fiber.insert(x.clone(), false);
        }
    }
    if !g.validate().is_valid() {
        return None;
    }

    let mut gamma = TangencyData::default();
    for (_, t, x, _) in &raw {
        match x {
            None => gamma.free_marks += 1,
            Some(p) => match gamma.fibers.last_mut() {
                Some(f) if &f.point == p => f.tangencies.push(*t),
                _ => gamma.fibers.push(FiberTangency::new(p.clone(), &[*t])),
            },
        }
    }
    Some((g, gamma))
}

trait ShuffleGroups<T> {
    fn shuffle_within_groups<R: Rng, K: PartialEq>(&mut self, rng: &mut R, key: impl Fn(&T) -> K);
}

impl<T> ShuffleGroups<T> for Vec<T> {
    fn shuffle_within_groups<R: Rng, K: PartialEq>(&mut self, rng: &mut R, key: impl Fn(&T) -> K) {
        let mut start = 0;
        while start < self.len() {
            let k = key(&self[start]);
            let end = start + self[start..].iter().take_while(|x| key(x) == k).count();
            self[start..end].shuffle(rng);
            start = end;
        }
    }
}

/// Renumbers vertices and edges, reorders every list, flips edge endpoints
/// and permutes the ids of marks with identical decorations.
pub fn relabel<R: Rng>(rng: &mut R, g: &DualMapGraph) -> DualMapGraph {
    let mut out = g.clone();
    let mut vids: Vec<u32> = (0..g.vertices.len() as u32).map(|i| i * 3 + 7).collect();
    vids.shuffle(rng);
    let vmap: BTreeMap<VertexId, VertexId> =
        g.vertices.iter().zip(&vids).map(|(v, &n)| (v.id, VertexId(n))).collect();
    let mut eids: Vec<u32> = (0..g.edges.len() as u32).map(|i| i * 5 + 2).collect();
    eids.shuffle(rng);

    for v in &mut out.vertices {
        v.id = vmap[&v.id];
    }
    for (e, &id) in out.edges.iter_mut().zip(&eids) {
        e.id = EdgeId(id);
        e.endpoints = (vmap[&e.endpoints.0], vmap[&e.endpoints.1]);
        if rng.gen_bool(0.5) {
            e.endpoints = (e.endpoints.1, e.endpoints.0);
            if let Ramification::Pair(a, b) = e.ramification {
                e.ramification = Ramification::Pair(b, a);
            }
        }
    }
    for m in &mut out.marks {
        m.vertex = vmap[&m.vertex];
    }

    let mut classes: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, m) in out.marks.iter().enumerate() {
        let key = format!("{}|{}|{:?}|{:?}|{}", m.vertex, m.tangency, m.target, m.ramification, m.stabilizer_order);
        classes.entry(key).or_default().push(i);
    }
    for members in classes.values() {
        let mut ids: Vec<MarkId> = members.iter().map(|&i| out.marks[i].id).collect();
        ids.shuffle(rng);
        for (&i, id) in members.iter().zip(ids) {
            out.marks[i].id = id;
        }
    }

    out.vertices.shuffle(rng);
    out.edges.shuffle(rng);
    out.marks.shuffle(rng);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use relsmooth_core::canonical_form;
    use relsmooth_core::check_relative;

    #[test]
    fn split_keeps_graph_valid_and_verdict() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut split = 0;
        for _ in 0..300 {
            let cfg = star_config(&mut rng, &StarOptions::default(), 0.5);
            let gamma = star_gamma(&cfg.graph);
            let Some(h) = split_contracted(&mut rng, &cfg.graph) else { continue };
            assert!(h.validate().is_valid(), "{h:?}");
            assert_eq!(h.vertices.len(), cfg.graph.vertices.len() + 1);
            let before = check_relative(&cfg.graph, &gamma).unwrap().passes();
            assert_eq!(before, cfg.unbalanced.is_empty());
            assert_eq!(check_relative(&h, &gamma).unwrap().passes(), before);
            split += 1;
        }
        assert!(split > 200);
    }

    #[test]
    fn compositions_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for total in 1..20 {
            for parts in 1..=total as usize {
                let c = composition(&mut rng, total, parts);
                assert_eq!(c.len(), parts);
                assert_eq!(c.iter().sum::<u32>(), total);
                assert!(c.iter().all(|&x| x > 0));
            }
        }
    }

    #[test]
    fn stars_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..300 {
            let s = star_config(&mut rng, &StarOptions::default(), 0.3);
            assert!(s.graph.validate().is_valid(), "{}", s.graph.validate());
        }
    }

    #[test]
    fn random_graphs_are_valid_and_checkable() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut passes = 0;
        let mut with_contracted = 0;
        for _ in 0..300 {
            let (g, gamma) = random_graph(&mut rng, &GraphOptions::default());
            assert!(g.validate().is_valid());
            let report = check_relative(&g, &gamma).unwrap();
            passes += usize::from(report.passes());
            with_contracted += usize::from(g.vertices.iter().any(|v| !v.is_active()));
        }
        assert!(passes > 0);
        assert!(passes < 300);
        assert!(with_contracted > 100);
    }

    #[test]
    fn relabel_keeps_validity_and_key() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let (g, _) = random_graph(&mut rng, &GraphOptions::default());
            let h = relabel(&mut rng, &g);
            assert!(h.validate().is_valid());
            assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        }
    }
}
