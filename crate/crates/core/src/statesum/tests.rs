use super::*;
use crate::diagram::{contract, parse_diagram, validate, Dir, MorseDiagram};
use crate::laurent::{qnum, LaurentPoly, RatFn, Var};

fn fixture(name: &str) -> MorseDiagram {
    let path = format!("{}/fixtures/{name}.morse", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap();
    let d = parse_diagram(&text).unwrap();
    validate(&d).unwrap_or_else(|e| panic!("{name}: {e}"));
    d
}

fn inv(p: LaurentPoly) -> RatFn {
    RatFn::new(LaurentPoly::one(Var::Q), p).unwrap()
}

const CROSSINGLESS: &[&str] = &[
    "circle1",
    "circle2",
    "circle3",
    "theta",
    "theta_heights",
    "theta_snake",
    "theta_thin",
    "theta_wide",
    "double_theta",
    "double_theta_thin",
    "ladder",
    "two_component",
    "two_circles",
];

#[test]
fn circles() {
    for j in 1..=3 {
        let d = fixture(&format!("circle{j}"));
        assert_eq!(evaluate_full(&d).unwrap().value, inv(qnum(2 * j, Var::Q)), "circle {j}");
    }
}

#[test]
fn theta_is_one() {
    for name in ["theta", "theta_heights", "theta_snake", "theta_thin"] {
        let v = evaluate_full(&fixture(name)).unwrap().value;
        assert_eq!(v, RatFn::one(Var::Q), "{name}");
    }
}

#[test]
fn disconnected_vanish() {
    for name in ["two_circles", "two_component"] {
        assert!(evaluate_full(&fixture(name)).unwrap().value.is_zero(), "{name}");
        assert!(evaluate_planar(&fixture(name)).unwrap().value.is_zero(), "{name}");
    }
}

#[test]
fn assignments_sum_to_contraction() {
    let table = WeightTable::standard();
    for name in CROSSINGLESS {
        let d = fixture(name);
        let n = d.edges.len();
        let mut total = LaurentPoly::zero(Var::Q);
        for bits in 0u64..(1 << n) {
            let solid: Vec<bool> = (0..n).map(|e| bits >> e & 1 == 1).collect();
            total = &total + &assignment_weight(&d, &solid, table).unwrap();
        }
        let layout = resolve(&d).unwrap();
        let mats = slice_matrices(&d.edges, &layout, table).unwrap();
        let (v, _) = transfer(StateVector::basis(1, 0), &layout, &mats);
        assert_eq!(total, v.amplitude(0), "{name}");
    }
}

#[test]
fn planar_matches_full() {
    for name in CROSSINGLESS {
        let d = fixture(name);
        let full = evaluate_full(&d).unwrap();
        let planar = evaluate_planar(&d).unwrap();
        assert_eq!(planar.value, full.value, "{name}");
    }
}

#[test]
fn isotopic_presentations_agree() {
    let a = evaluate_full(&fixture("theta")).unwrap().value;
    for name in ["theta_heights", "theta_snake"] {
        assert_eq!(evaluate_full(&fixture(name)).unwrap().value, a, "{name}");
    }
}

/// Brute force: every assignment with a dotted cut edge and balanced solid
/// in/out counts at each vertex.
fn filtered_count(name: &str) -> usize {
    let g = contract(&fixture(name)).unwrap();
    let n = g.edges.len();
    (0u64..(1 << n))
        .filter(|bits| {
            let s: Vec<bool> = (0..n).map(|e| bits >> e & 1 == 1).collect();
            !s[g.cut_edge]
                && g.vertices.iter().all(|v| {
                    let c = |es: Vec<usize>| es.iter().filter(|&&e| s[e]).count();
                    c(v.in_edges()) == c(v.out_edges())
                })
        })
        .count()
}

#[test]
fn state_counts() {
    let expect = [
        ("circle1", 1),
        ("theta", 1),
        ("theta_thin", 2),
        ("double_theta", 1),
        ("double_theta_thin", 3),
        ("ladder", 1),
    ];
    for (name, n) in expect {
        let g = contract(&fixture(name)).unwrap();
        let states = enumerate_planar_states(&g);
        assert_eq!(states.len(), filtered_count(name), "{name}");
        assert_eq!(states.len(), n, "{name}");
    }
}

#[test]
fn signs() {
    let g = contract(&fixture("theta_thin")).unwrap();
    let states = enumerate_planar_states(&g);
    let signs: Vec<i64> = states.iter().map(|s| planar_sign(s, &g).unwrap()).collect();
    assert_eq!(signs, vec![1, -1]);
    let solid: Vec<String> = states[1].solid_edges().iter().map(|&e| g.edges[e].name.clone()).collect();
    assert_eq!(solid, vec!["b", "c"]);

    // Two disjoint solid curves give +1.
    let g = contract(&fixture("double_theta_thin")).unwrap();
    let states = enumerate_planar_states(&g);
    let by_curves: Vec<(usize, i64)> =
        states.iter().map(|s| (s.solid_edges().len(), planar_sign(s, &g).unwrap())).collect();
    assert!(by_curves.contains(&(0, 1)));
    assert!(by_curves.iter().all(|&(n, sign)| n == 0 || sign != 0));

    let bad = EdgeState { solid: vec![false, true, false] };
    let theta = contract(&fixture("theta")).unwrap();
    assert!(matches!(planar_sign(&bad, &theta), Err(StateSumError::Integrity(_))));
}

#[test]
fn planar_rejects_crossings_and_negative_colors() {
    let text = "morse v1\nedge e -1 1\ncut e down\nslice 1 min e r2l\nslice 0 max\n";
    let d = parse_diagram(text).unwrap();
    assert!(matches!(evaluate_planar(&d), Err(StateSumError::Unsupported(_))));
    // The full sum is fine with negative multiplicities.
    assert_eq!(evaluate_full(&d).unwrap().value, inv(qnum(-2, Var::Q)));
}

#[test]
fn cut_direction_does_not_matter() {
    let up = "morse v1\nedge e 2 1\ncut e up\nslice 1 min e l2r\nslice 0 max\n";
    let d = parse_diagram(up).unwrap();
    validate(&d).unwrap();
    assert_eq!(d.cut_direction, Dir::Up);
    assert_eq!(evaluate_full(&d).unwrap().value, inv(qnum(4, Var::Q)));
}

#[test]
fn cells_are_recorded() {
    let r = evaluate_full(&fixture("theta")).unwrap();
    assert!(!r.cells.is_empty());
    assert_eq!(r.method, Method::Transfer);
    assert_eq!(r.to_json()["invariant"], "gl11");
}
