use relsmooth_core::conditions::{check_relative, FiberTangency, TangencyData};
use relsmooth_core::graph::VertexRole;
use relsmooth_core::hurwitz::vertex_realizable;
use relsmooth_core::strata::{dimension, enumerate, smooth_dimension, EnumerateOptions, Stratum};
use relsmooth_core::{canonical_form, DualMapGraph, StackyTarget};

fn p1(points: &[&str]) -> StackyTarget {
    let mut t = StackyTarget::projective_line();
    for p in points {
        t = t.with_relative_point(*p);
    }
    t
}

fn run(gamma: &TangencyData, d: u32) -> Vec<Stratum> {
    let target = p1(&gamma.fibers.iter().map(|f| f.point.as_str()).collect::<Vec<_>>());
    enumerate(gamma, &target, d, &EnumerateOptions::default()).unwrap()
}

/// (number of active vertices, their sorted degrees, number of contracted vertices)
fn shape(g: &DualMapGraph) -> (Vec<u32>, usize) {
    let mut degrees: Vec<u32> = g.vertices.iter().filter(|v| v.is_active()).map(|v| v.degree()).collect();
    degrees.sort_unstable();
    let contracted = g.vertices.iter().filter(|v| matches!(v.role, VertexRole::Contracted { .. })).count();
    (degrees, contracted)
}

fn shapes(strata: &[Stratum]) -> Vec<((Vec<u32>, usize), i64)> {
    let mut out: Vec<_> = strata.iter().map(|s| (shape(&s.graph), s.dimension)).collect();
    out.sort();
    out
}

#[test]
fn two_unramified_points_in_degree_two() {
    let gamma = TangencyData::new(0, vec![FiberTangency::new("inf", &[1, 1])]);
    let strata = run(&gamma, 2);
    // Hand enumeration: the smooth conic-type map; one degree-2 component
    // totally ramified at a node to a contracted component holding both
    // marks; and two lines meeting a contracted component holding both marks.
    assert_eq!(
        shapes(&strata),
        vec![((vec![1, 1], 1), 1), ((vec![2], 0), 2), ((vec![2], 1), 1)]
    );
    let comb = strata.iter().find(|s| shape(&s.graph) == (vec![2], 1)).unwrap();
    assert_eq!(comb.graph.edges[0].ramification_at(comb.graph.vertices[0].id), 2);
}

#[test]
fn one_ramified_point_in_degree_two() {
    let gamma = TangencyData::new(0, vec![FiberTangency::new("inf", &[2])]);
    let strata = run(&gamma, 2);
    assert_eq!(shapes(&strata), vec![((vec![1, 1], 1), 0), ((vec![2], 0), 1)]);
    let smooth = strata.iter().find(|s| s.flags.is_m).unwrap();
    assert_eq!(smooth.graph.marks[0].local_ramification(), 2);
}

#[test]
fn empty_data_in_degree_one() {
    let strata = run(&TangencyData::default(), 1);
    assert_eq!(strata.len(), 1);
    assert_eq!(shape(&strata[0].graph), (vec![1], 0));
    assert_eq!(strata[0].dimension, 0);
}

fn cases() -> Vec<(TangencyData, u32)> {
    let at = |point: &str, t: &[u32]| FiberTangency::new(point, t);
    vec![
        (TangencyData::new(0, vec![at("inf", &[1, 1])]), 2),
        (TangencyData::new(0, vec![at("inf", &[2])]), 2),
        (TangencyData::new(1, vec![at("inf", &[1, 1])]), 2),
        (TangencyData::new(0, vec![at("inf", &[1, 1, 1])]), 3),
        (TangencyData::new(0, vec![at("inf", &[2, 1])]), 3),
        (TangencyData::new(0, vec![at("inf", &[3])]), 3),
        (TangencyData::new(0, vec![at("inf", &[2, 1]), at("0", &[3])]), 3),
        (TangencyData::new(0, vec![at("inf", &[2, 2])]), 4),
        (TangencyData::new(0, vec![at("inf", &[1, 1, 1, 1])]), 4),
        (TangencyData::new(0, vec![at("inf", &[3, 2])]), 5),
        (TangencyData::new(0, vec![at("inf", &[4, 1])]), 5),
        (TangencyData::default(), 3),
    ]
}

#[test]
fn emitted_strata_reverify() {
    for (gamma, d) in cases() {
        let strata = run(&gamma, d);
        assert!(!strata.is_empty());
        let smooth: Vec<&Stratum> = strata.iter().filter(|s| s.flags.is_m).collect();
        assert_eq!(smooth.len(), 1, "one smooth stratum for {gamma:?}");
        let top = smooth[0].dimension;
        assert_eq!(top, smooth_dimension(&gamma, d));
        let mut keys = std::collections::BTreeSet::new();
        for s in &strata {
            let g = &s.graph;
            assert!(g.validate().is_valid());
            assert!(check_relative(g, &gamma).unwrap().passes());
            for v in g.vertices.iter().filter(|v| v.is_active()) {
                assert!(vertex_realizable(g, v.id, 7).unwrap());
            }
            assert_eq!(canonical_form(g).unwrap(), s.key);
            assert!(keys.insert(s.key.clone()), "duplicate key {}", s.key);
            assert_eq!(dimension(g).unwrap(), s.dimension);
            assert!(s.dimension >= 0);
            assert!(!s.flags.is_m || s.flags.is_n);
            assert!(!s.flags.is_n || s.flags.is_k);
            assert!(s.flags.is_k);
            if !s.flags.is_m {
                assert!(s.dimension < top, "boundary stratum {} not below {top}", s.key);
            }
        }
    }
}

#[test]
fn enumeration_is_deterministic_and_sorted() {
    for (gamma, d) in cases() {
        let a = run(&gamma, d);
        let b = run(&gamma, d);
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0].key < w[1].key));
    }
}
