use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::diagram::{parse_diagram, validate};

fn fixture(name: &str) -> MorseDiagram {
    let path = format!("{}/fixtures/{name}.morse", env!("CARGO_MANIFEST_DIR"));
    let d = parse_diagram(&std::fs::read_to_string(&path).unwrap()).unwrap();
    validate(&d).unwrap_or_else(|e| panic!("{name}: {e}"));
    d
}

fn graph(name: &str) -> ColoredDigraph {
    contract(&fixture(name)).unwrap()
}

const GRAPHS: &[&str] =
    &["theta", "theta_heights", "theta_snake", "theta_thin", "theta_wide", "double_theta", "double_theta_thin", "ladder"];

fn u(terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(Var::U, terms.iter().copied())
}

/// Laplace expansion along the first row.
fn cofactor_det(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    if m.is_empty() {
        return LaurentPoly::one(Var::U);
    }
    let mut acc = LaurentPoly::zero(Var::U);
    for c in 0..m.len() {
        let minor: Vec<Vec<LaurentPoly>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, e)| e.clone()).collect()).collect();
        let t = &m[0][c] * &cofactor_det(&minor);
        acc = if c % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

#[test]
fn determinant_matches_cofactors() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 0..=5 {
        for _ in 0..6 {
            let m: Vec<Vec<LaurentPoly>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            if rng.gen_bool(0.3) {
                                LaurentPoly::zero(Var::U)
                            } else {
                                let terms: Vec<(i64, i64)> =
                                    (0..rng.gen_range(1..3)).map(|_| (rng.gen_range(-3..=3), rng.gen_range(-4..=4))).collect();
                                u(&terms)
                            }
                        })
                        .collect()
                })
                .collect();
            assert_eq!(determinant(&m, Var::U).unwrap(), cofactor_det(&m), "{m:?}");
        }
    }
}

#[test]
fn determinant_needs_a_row_swap() {
    let m = vec![vec![u(&[]), u(&[(1, 1)])], vec![u(&[(-1, 2)]), u(&[(0, 1)])]];
    assert_eq!(determinant(&m, Var::U).unwrap(), u(&[(0, -2)]));
}

#[test]
fn theta_matrix_and_polynomial() {
    let g = graph("theta");
    let m = fox_matrix(&g).unwrap();
    let k = qnum(2, Var::U);
    let odd = g.vertices.iter().find(|v| v.kind == VertexKind::Odd).unwrap().id;
    let even = 1 - odd;
    assert_eq!(m.get(odd, odd), &k);
    assert_eq!(m.get(even, even), &k);
    // The even vertex's out-edge is the cut edge.
    assert!(m.get(even, odd).is_zero());
    assert_eq!(m.get(odd, even), &-k.clone());
    assert_eq!(m.determinant().unwrap(), &k * &k);
    let a = alexander_via_fox(&g).unwrap();
    assert_eq!(a.delta, u(&[(1, 1), (-1, 1)]));
    assert_eq!(a.normal.normal, u(&[(0, 1), (2, 1)]));
}

#[test]
fn odd_row_is_asymmetric() {
    let g = graph("theta_wide");
    let m = fox_matrix(&g).unwrap();
    let v = g.vertices.iter().find(|v| v.kind == VertexKind::Odd).unwrap();
    let (i, j) = (g.edges[v.left].color.multiplicity, g.edges[v.right].color.multiplicity);
    assert_ne!(i, j);
    let head = g.edges[v.left].head.unwrap();
    // Both out-edges end at the even vertex; their entries add up.
    let want = -(&(&LaurentPoly::power(Var::U, j) * &qnum(i, Var::U)) + &(&LaurentPoly::power(Var::U, -i) * &qnum(j, Var::U)));
    assert_eq!(m.get(v.id, head), &want);
    // u^j {i} + u^-i {j} = u^(i+j) - u^-(i+j).
    assert_eq!(want, -qnum(i + j, Var::U));
}

#[test]
fn small_graphs_are_rejected() {
    let g = graph("circle1");
    assert!(matches!(alexander_via_fox(&g), Err(FoxError::Unsupported(_))));
    assert!(matches!(compare_with_gl11(&fixture("circle2")), Err(FoxError::Unsupported(_))));
}

#[test]
fn determinant_is_the_hat_sum() {
    let table = WeightTable::standard();
    for name in GRAPHS {
        let g = graph(name);
        assert_eq!(fox_matrix(&g).unwrap().determinant().unwrap(), hat_state_sum(&g, table).unwrap(), "{name}");
    }
}

#[test]
fn heegaard_signs() {
    for name in GRAPHS {
        let g = graph(name);
        let hs = heegaard_states(&g).unwrap();
        assert!(!hs.is_empty());
        for h in &hs {
            assert!(h.sign_identity_holds(), "{name}: {:?}", h.sigma);
            assert_eq!(planar_sign(&h.state, &g).unwrap() == 1, h.solid_curves % 2 == 0);
        }
    }
}

#[test]
fn permutation_sign_by_inversions() {
    let perms: [&[usize]; 5] = [&[0, 1, 2], &[1, 0, 2], &[1, 2, 0], &[2, 1, 0], &[3, 0, 1, 2]];
    for p in perms {
        let inversions = (0..p.len()).flat_map(|a| (a + 1..p.len()).map(move |b| (a, b))).filter(|&(a, b)| p[a] > p[b]).count();
        assert_eq!(permutation_sign(p), if inversions % 2 == 0 { 1 } else { -1 }, "{p:?}");
    }
}

#[test]
fn determinant_groups_by_permutation() {
    let table = WeightTable::standard();
    for name in GRAPHS {
        let g = graph(name);
        let terms = permutation_terms(&g, table).unwrap();
        for t in &terms {
            assert!(t.agrees(), "{name}: σ = {:?}: {} vs {}", t.sigma, t.matrix_product, t.state_sum);
        }
        let total = terms.iter().fold(LaurentPoly::zero(Var::U), |a, t| {
            let p = if permutation_sign(&t.sigma) < 0 { -t.matrix_product.clone() } else { t.matrix_product.clone() };
            &a + &p
        });
        assert_eq!(total, fox_matrix(&g).unwrap().determinant().unwrap(), "{name}");
    }
}

#[test]
fn tilde_equals_hat_per_state() {
    let table = WeightTable::standard();
    for name in GRAPHS {
        let g = graph(name);
        for s in enumerate_planar_states(&g) {
            let (t, h) = tilde_hat_per_state(&g, &s, table).unwrap();
            assert_eq!(t, h, "{name}");
        }
    }
}

#[test]
fn specialized_hat_matches_planar_weights() {
    let table = WeightTable::standard();
    for name in GRAPHS {
        let g = graph(name);
        for s in enumerate_planar_states(&g) {
            let (hat, wt) = specialized_state_pair(&g, &s, table).unwrap();
            assert_eq!(hat, wt, "{name}: {:?}", s.solid_edges());
        }
    }
}

#[test]
fn comparisons_agree() {
    for name in GRAPHS {
        let c = compare_with_gl11(&fixture(name)).unwrap();
        assert!(c.equal, "{name}: {} vs {}", c.lhs.normal, c.rhs.normal);
    }
    let c = compare_with_gl11(&fixture("theta")).unwrap();
    let want = LaurentPoly::from_terms(Var::Q, [(0, 1), (4, 1)]);
    assert_eq!(c.lhs.normal, want);
    assert!(c.verdict().starts_with("EQUAL up to unit"));
}

#[test]
fn weights_other_than_one_are_rejected() {
    let d = parse_diagram(
        "morse v1\nedge a 1 1\nedge b 1 3\nedge c 2 3\ncut c up\nslice 0 split c a b\nslice 0 merge a b c\n",
    )
    .unwrap();
    validate(&d).unwrap();
    assert!(matches!(alexander_of_diagram(&d), Err(FoxError::Unsupported(_))));
    assert!(matches!(compare_with_gl11(&d), Err(FoxError::Unsupported(_))));
}
