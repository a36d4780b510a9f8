//! Dimension of comb strata checked against an explicit parameter count.
//!
//! A stratum with one active component `C` and one contracted component `E`
//! has dimension `dim(maps C -> P^1 with the prescribed behaviour at the
//! node, modulo Aut(C, node)) + dim M_{0, k_E}`. The first term is computed
//! by writing the maps down: coefficient vectors of `P/Q` with the node at
//! `z = ∞`, and the infinitesimal action of `z -> az + b` on them. The
//! quotient dimension is the number of coefficients minus the rank of the
//! orbit tangent vectors, evaluated at a sample map in exact arithmetic.

use num_rational::Ratio;
use relsmooth_core::graph::{Edge, MarkedPoint, Vertex};
use relsmooth_core::strata::dimension;
use relsmooth_core::{DualMapGraph, StackyTarget};

type Q = Ratio<i128>;

fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != Q::from_integer(0)) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c];
        for i in 0..rows.len() {
            if i != r && rows[i][c] != Q::from_integer(0) {
                let f = rows[i][c] / pivot;
                let row_r = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(row_r) {
                    *x -= f * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Coefficients, constant term first.
fn derivative(p: &[Q]) -> Vec<Q> {
    let mut out: Vec<Q> = p.iter().enumerate().skip(1).map(|(k, &c)| c * Q::from_integer(k as i128)).collect();
    out.push(Q::from_integer(0));
    out
}

fn times_z(p: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::from_integer(0)];
    out.extend_from_slice(&p[..p.len() - 1]);
    out
}

fn sample(len: usize, seed: i128) -> Vec<Q> {
    (0..len).map(|k| Q::from_integer((k as i128 * 7 + seed) % 11 + 1)).collect()
}

/// Polynomial maps of degree `n` (totally ramified over ∞ at `z = ∞`):
/// `n + 1` coefficients, orbit tangents `z P'` and `P'`.
fn totally_ramified_moduli(n: usize) -> usize {
    let p = sample(n + 1, 3);
    let dp = derivative(&p);
    let tangents = vec![times_z(&dp), dp];
    (n + 1) - rank(tangents)
}

/// `P / Q` with `deg P = n`, `Q` monic of degree `n - 1`, so `z = ∞` is a
/// simple point over ∞. Coordinates: all of `P`, the lower coefficients of
/// `Q`. Rescaling `z -> az` is compensated by dividing by `a^{n-1}` to keep
/// `Q` monic, giving the tangent `(z P' - (n-1) P, z Q' - (n-1) Q)`.
fn simple_node_moduli(n: usize) -> usize {
    let p = sample(n + 1, 2);
    let mut q = sample(n - 1, 5);
    q.push(Q::from_integer(1));
    let shift = Q::from_integer(n as i128 - 1);
    let scale_p: Vec<Q> = times_z(&derivative(&p)).iter().zip(&p).map(|(a, b)| a - shift * b).collect();
    let scale_q: Vec<Q> = times_z(&derivative(&q)).iter().zip(&q).map(|(a, b)| a - shift * b).collect();
    let trans_p = derivative(&p);
    let trans_q = derivative(&q);
    assert_eq!(*scale_q.last().unwrap(), Q::from_integer(0));
    assert_eq!(*trans_q.last().unwrap(), Q::from_integer(0));
    let row = |a: &[Q], b: &[Q]| -> Vec<Q> { a.iter().chain(&b[..b.len() - 1]).copied().collect() };
    let coordinates = (n + 1) + (n - 1);
    coordinates - rank(vec![row(&scale_p, &scale_q), row(&trans_p, &trans_q)])
}

/// `n` marks of tangency 1 on a component contracted to ∞, attached to a
/// degree-`n` component by a node of ramification `e`.
fn comb(n: u32, e: u32) -> DualMapGraph {
    let mut g = DualMapGraph::new(StackyTarget::projective_line().with_relative_point("inf"), n);
    g.vertices.push(Vertex::active(0, n));
    g.vertices.push(Vertex::contracted(1, "inf"));
    g.edges.push(Edge::new(0, 0, 1, e));
    for k in 0..n {
        g.marks.push(MarkedPoint::new(k, 1, 1, Some("inf")));
    }
    if e < n {
        g.flags.full_fiber.insert("inf".into(), false);
    }
    g
}

fn contracted_moduli(special_points: usize) -> usize {
    special_points - 3
}

#[test]
fn parameter_count_of_polynomial_maps() {
    assert_eq!(totally_ramified_moduli(2), 1);
    assert_eq!(totally_ramified_moduli(3), 2);
    assert_eq!(simple_node_moduli(2), 2);
    assert_eq!(simple_node_moduli(3), 4);
}

#[test]
fn comb_with_simple_node_matches_parameter_count() {
    for n in 2..=5u32 {
        let count = simple_node_moduli(n as usize) + contracted_moduli(n as usize + 1);
        let dim = dimension(&comb(n, 1)).unwrap();
        assert_eq!(dim, count as i64, "n = {n}");
        let maps = 2 * i64::from(n) - 2;
        assert_eq!(dim, maps + i64::from(n) - 2);
        assert_eq!(dim, 3 * i64::from(n) - 4);
    }
}

#[test]
fn totally_ramified_comb_is_a_divisor() {
    for n in 2..=5u32 {
        let count = totally_ramified_moduli(n as usize) + contracted_moduli(n as usize + 1);
        let dim = dimension(&comb(n, n)).unwrap();
        assert_eq!(dim, count as i64, "n = {n}");
        let maps = 2 * i64::from(n) - 2;
        assert_eq!(dim, maps - 1);
    }
}
