use graphalex::diagram::{
    contract, parse_diagram, validate, DiagramBuilder, DiagramError, Dir, Horizontal, MorseDiagram, NewEdge,
};
use graphalex::foxcalc::{
    compare_with_gl11, fox_matrix, hat_state_sum, heegaard_states, specialized_state_pair, tilde_hat_per_state,
};
use graphalex::laurent::{normalize_unit, qnum, specialize_t_to_q, LaurentPoly, RatFn, Var};
use graphalex::statesum::{enumerate_planar_states, evaluate_full, evaluate_planar};
use graphalex::weights::WeightTable;
use proptest::prelude::*;

fn poly(var: Var) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -20i64..=20), 0..5).prop_map(move |t| LaurentPoly::from_terms(var, t))
}

fn nonzero(var: Var) -> impl Strategy<Value = LaurentPoly> {
    poly(var).prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(Var::Q), b in poly(Var::Q), c in poly(Var::Q)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a + &-a.clone()).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(Var::Q), a.clone());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(Var::U), b in nonzero(Var::U)) {
        prop_assert_eq!((&a * &b).try_div_exact(&b).unwrap(), a);
    }

    #[test]
    fn brackets(k in -12i64..=12) {
        prop_assert_eq!(qnum(-k, Var::Q), -qnum(k, Var::Q));
        prop_assert_eq!(specialize_t_to_q(&qnum(k, Var::U)).unwrap(), -qnum(2 * k, Var::Q));
    }

    #[test]
    fn rational_equality_is_cross_multiplication(
        a in poly(Var::Q), b in nonzero(Var::Q), c in poly(Var::Q), d in nonzero(Var::Q), k in nonzero(Var::Q),
    ) {
        let x = RatFn::new(a.clone(), b.clone()).unwrap();
        let y = RatFn::new(c.clone(), d.clone()).unwrap();
        prop_assert_eq!(x == y, &a * &d == &b * &c);
        let scaled = RatFn::new(&a * &k, &b * &k).unwrap();
        prop_assert_eq!(&scaled, &x);
        if !y.is_zero() {
            prop_assert_eq!(x.mul(&y).unwrap().div(&y).unwrap(), x.clone());
        }
        prop_assert_eq!(x.add(&y).unwrap().sub(&y).unwrap(), x);
    }

    #[test]
    fn unit_normal_form_ignores_units(p in nonzero(Var::U), m in -9i64..=9, neg in any::<bool>()) {
        let n = normalize_unit(&p).unwrap();
        let mut moved = p.shift(m);
        if neg {
            moved = -moved;
        }
        let n2 = normalize_unit(&moved).unwrap();
        prop_assert_eq!(&n2.normal, &n.normal);
        prop_assert_eq!(n2.unit_exponent, n.unit_exponent + m);
        prop_assert_eq!(n2.unit_sign, if neg { -n.unit_sign } else { n.unit_sign });
        prop_assert_eq!(n.normal.min_exp(), Some(0));
    }
}

#[derive(Debug, Clone)]
enum Op {
    Split(usize, usize),
    Merge(usize),
    Cup(usize, i64, bool),
    Cap(usize),
    Snake(usize, bool),
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        3 => (0usize..8, 0usize..8).prop_map(|(p, r)| Op::Split(p, r)),
        3 => (0usize..8).prop_map(Op::Merge),
        2 => (0usize..8, 1i64..=3, any::<bool>()).prop_map(|(p, m, h)| Op::Cup(p, m, h)),
        1 => (0usize..8).prop_map(Op::Cap),
        1 => (0usize..8, any::<bool>()).prop_map(|(p, s)| Op::Snake(p, s)),
    ]
}

/// Signed multiplicity of a strand: positive when it points up. The sum over a
/// level is the cut's signed multiplicity at every height.
fn signed(b: &DiagramBuilder, p: usize) -> i64 {
    let s = b.level()[p];
    let m = b.edge_decl(s.edge).color.multiplicity;
    if s.dir == Dir::Up {
        m
    } else {
        -m
    }
}

/// A crossingless graph with all weights 1, grown by random splits, merges,
/// cups, caps and zig-zags, then merged back down to the cut edge. Returns
/// `None` when the final merges get stuck.
fn build(cut_m: i64, dir: Dir, ops: &[Op]) -> Option<MorseDiagram> {
    let mut b = DiagramBuilder::closed(NewEdge::new("c", cut_m, 1), dir).ok()?;
    let mut fresh = 0;
    let mut name = || {
        fresh += 1;
        format!("e{fresh}")
    };
    let mut vertices = 0;
    for o in ops {
        let w = b.width();
        match *o {
            Op::Split(p, r) if vertices < 8 && w < 5 => {
                let p = p % w;
                let s = signed(&b, p);
                let xs: Vec<i64> = (-3..=3 + s.abs()).filter(|&x| x != 0 && x != s && (s - x).abs() <= 5).collect();
                let x = xs[r % xs.len()];
                b.split(p, NewEdge::new(name(), x.abs(), 1), NewEdge::auto(name(), (s - x).abs())).ok()?;
                vertices += 1;
            }
            Op::Merge(p) if w >= 2 && vertices < 8 => {
                let p = p % (w - 1);
                let s = signed(&b, p) + signed(&b, p + 1);
                if s != 0 {
                    b.merge(p, NewEdge::auto(name(), s.abs())).ok()?;
                    vertices += 1;
                }
            }
            Op::Cup(p, m, h) if w < 4 => {
                let h = if h { Horizontal::LeftToRight } else { Horizontal::RightToLeft };
                b.min(p % (w + 1), NewEdge::new(name(), m, 1), h).ok()?;
            }
            Op::Cap(p) if w >= 2 => {
                let p = p % (w - 1);
                let (l, r) = (b.level()[p], b.level()[p + 1]);
                if l.edge == r.edge && l.dir != r.dir && l.edge != 0 {
                    b.max(p).ok()?;
                }
            }
            Op::Snake(p, right) if w < 4 => {
                let p = p % w;
                let s = b.level()[p];
                let e = b.edge_decl(s.edge).clone();
                let edge = NewEdge::new(e.name, e.color.multiplicity, e.color.weight);
                let up = s.dir == Dir::Up;
                if right {
                    b.min(p + 1, edge, if up { Horizontal::LeftToRight } else { Horizontal::RightToLeft }).ok()?;
                    b.max(p).ok()?;
                } else {
                    b.min(p, edge, if up { Horizontal::RightToLeft } else { Horizontal::LeftToRight }).ok()?;
                    b.max(p + 1).ok()?;
                }
            }
            _ => {}
        }
    }
    if b.width() == 1 && b.level()[0].edge != 0 {
        let s = signed(&b, 0);
        let x = s + s.signum();
        b.split(0, NewEdge::new(name(), x.abs(), 1), NewEdge::auto(name(), 1)).ok()?;
    }
    while b.width() > 1 {
        let w = b.width();
        let p = (0..w - 1).find(|&p| signed(&b, p) + signed(&b, p + 1) != 0)?;
        let out = if w == 2 { NewEdge::auto("c", cut_m) } else { NewEdge::auto(name(), (signed(&b, p) + signed(&b, p + 1)).abs()) };
        b.merge(p, out).ok()?;
    }
    b.finish().ok()
}

fn graph_case() -> impl Strategy<Value = MorseDiagram> {
    (1i64..=3, any::<bool>(), prop::collection::vec(op(), 0..16))
        .prop_filter_map("final merges got stuck", |(m, up, ops)| build(m, if up { Dir::Up } else { Dir::Down }, &ops))
}

fn weights_are_one(d: &MorseDiagram) -> bool {
    d.edges.iter().all(|e| e.color.weight == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn text_round_trip(d in graph_case()) {
        let text = d.to_text();
        let back = parse_diagram(&text).unwrap();
        validate(&back).unwrap();
        prop_assert_eq!(back.to_text(), text);
        prop_assert_eq!(evaluate_full(&back).unwrap().value, evaluate_full(&d).unwrap().value);
    }

    #[test]
    fn planar_sum_matches_transfer(d in graph_case()) {
        let full = evaluate_full(&d).unwrap().value;
        let planar = evaluate_planar(&d).unwrap().value;
        prop_assert_eq!(full, planar);
    }

    #[test]
    fn fox_side_identities(d in graph_case()) {
        let g = contract(&d).unwrap();
        prop_assert!(weights_are_one(&d));
        prop_assume!(g.vertices.len() >= 2 && g.is_connected());
        let table = WeightTable::standard();
        let det = fox_matrix(&g).unwrap().determinant().unwrap();
        prop_assert_eq!(det, hat_state_sum(&g, table).unwrap());
        for h in heegaard_states(&g).unwrap() {
            prop_assert!(h.sign_identity_holds());
            let (t, hat) = tilde_hat_per_state(&g, &h.state, table).unwrap();
            prop_assert_eq!(t, hat);
        }
        for s in enumerate_planar_states(&g) {
            let (hat, wt) = specialized_state_pair(&g, &s, table).unwrap();
            prop_assert_eq!(hat, wt);
        }
        let c = compare_with_gl11(&d).unwrap();
        prop_assert!(c.equal, "{} vs {}", c.lhs.normal, c.rhs.normal);
    }

    #[test]
    fn weight_mutation_is_rejected(d in graph_case(), pick in any::<prop::sample::Index>(), delta in prop::sample::select(vec![-2i64, -1, 1, 2])) {
        let g = contract(&d).unwrap();
        let touched: Vec<usize> = (0..d.edges.len()).filter(|&e| g.edges[e].tail.is_some()).collect();
        prop_assume!(!touched.is_empty());
        let e = touched[pick.index(touched.len())];
        let mut m = d.clone();
        m.edges[e].color.weight += delta;
        let err = validate(&m).unwrap_err();
        prop_assert!(matches!(err, DiagramError::WeightAdmissibility { .. }), "{err}");
    }
}

#[test]
fn generator_reaches_many_states() {
    // Sample the generator and make sure it produces graphs with several states.
    use proptest::strategy::ValueTree;
    use proptest::test_runner::TestRunner;
    let mut runner = TestRunner::deterministic();
    let mut best = 0;
    let mut downward = 0;
    for _ in 0..200 {
        let d = graph_case().new_tree(&mut runner).unwrap().current();
        let g = contract(&d).unwrap();
        best = best.max(enumerate_planar_states(&g).len());
        downward += usize::from(d.to_text().contains(" min "));
    }
    eprintln!("max states {best}, {downward} of 200 with cups");
    assert!(best >= 4, "max states {best}");
    assert!(downward > 20);
}
