use super::*;
use crate::laurent::{LaurentPoly, Var};

fn t() -> &'static WeightTable {
    WeightTable::standard()
}

#[test]
fn square_entries() {
    let s = ColorSample::new(1, 1, 1, 1);
    let a = local_morphism(Local::VSquare, &s, t()).unwrap();
    let want = &br(4).pow(2) - &(&(&br(2) * &br(2)) * &q(-4));
    assert_eq!(a.get(0, 0), want);
    assert_eq!(a.get(1, 1), br(2).pow(2));
}

#[test]
fn crossing_corner_entry() {
    let s = ColorSample::new(2, 1, 1, 1).weights(1, -2, 0);
    let x = local_morphism(Local::CrossingPos, &s, t()).unwrap();
    // -q^(-i-j-iJ-jI) with i=2, j=1, I=1, J=-2
    assert_eq!(x.get(3, 3), -q(-2 - 1 + 4 - 1));
}

#[test]
fn v_identity_and_negative_control() {
    let s = ColorSample::new(2, 1, 1, 1).weights(0, 2, -1);
    assert!(check_matrix_relation(Relation::V, &s, t()).unwrap().equal);

    let a = local_morphism(Local::VSquare, &s, t()).unwrap();
    let mut b = local_morphism(Local::VVertical, &s, t()).unwrap();
    let id = local_morphism(Local::VParallel, &s, t()).unwrap();
    b.set(3, 3, &b.get(3, 3) + &LaurentPoly::one(Var::Q), None);
    let rhs = combine(&[(br(6), &b), (br(2).pow(2), &id)]);
    assert!(!a.same_values(&rhs));
}

#[test]
fn vii_with_equal_rungs() {
    let s = ColorSample::new(1, 2, 1, 1);
    assert!(check_matrix_relation(Relation::VIIZero, &s, t()).unwrap().equal);
    assert!(check_closed_relation(Relation::VIIZero, &s, t()).unwrap().equal);
    // Without the coincidence the general form applies instead.
    assert!(matches!(check_matrix_relation(Relation::VII, &s, t()), Err(RelationError::Skipped(_))));
}

#[test]
fn zero_rungs() {
    assert_eq!(zero_multiplicity_value(ZeroRung::Leftward, 2, 3).unwrap(), br(6));
    assert_eq!(zero_multiplicity_value(ZeroRung::Rightward, 2, 3).unwrap(), br(4));
    assert!(zero_multiplicity_value(ZeroRung::Leftward, 0, 3).is_err());
}

#[test]
fn closed_examples() {
    let s = ColorSample::new(2, 1, 1, 1);
    let (lhs, rhs) = closed_sides(Relation::I, &s, t()).unwrap();
    assert_eq!(lhs, rhs);
    assert_eq!(lhs, RatFn::new(LaurentPoly::one(Var::Q), br(4)).unwrap());

    let (lhs, rhs) = closed_sides(Relation::IIIa, &s, t()).unwrap();
    assert_eq!(lhs, rhs);
    let plain = closed_sides(Relation::I, &s, t()).unwrap().0;
    assert_eq!(lhs, plain.mul(&RatFn::from_poly(q(-2))).unwrap());

    // A bubble of sides 1 and 1 on a strand colored 2, closed up, is 1.
    let (lhs, _) = closed_sides(Relation::IV, &ColorSample::new(1, 1, 1, 1), t()).unwrap();
    assert_eq!(lhs, RatFn::one(Var::Q));

    assert!(closed_sides(Relation::II, &s, t()).unwrap().0.is_zero());
}

#[test]
fn every_relation_on_samples() {
    for rel in Relation::ALL {
        for level in [Level::Matrix, Level::Closed] {
            if level == Level::Matrix && !rel.has_matrix_level() {
                continue;
            }
            let reps = run_relation(rel, level, 5, 7, t()).unwrap_or_else(|e| panic!("{rel} {level:?}: {e}"));
            for r in &reps {
                assert!(r.equal, "{rel} {level:?} {:?}", r.sample);
            }
            let nonzero = reps.iter().filter(|r| match &r.lhs {
                Side::Matrix(m) => !m.is_zero(),
                Side::Value(v) => !v.is_zero(),
            });
            if rel != Relation::II {
                assert_eq!(nonzero.count(), reps.len(), "{rel} {level:?} has a vanishing side");
            }
        }
    }
}

#[test]
fn levels_see_the_same_samples() {
    let a = run_relation(Relation::VIIIc, Level::Matrix, 4, 3, t()).unwrap();
    let b = run_relation(Relation::VIIIc, Level::Closed, 4, 3, t()).unwrap();
    let sa: Vec<_> = a.iter().map(|r| r.sample).collect();
    let sb: Vec<_> = b.iter().map(|r| r.sample).collect();
    assert_eq!(sa, sb);
}

#[test]
fn selection() {
    assert_eq!(Relation::select("iii").unwrap(), vec![Relation::IIIa, Relation::IIIb]);
    assert_eq!(Relation::select("vii").unwrap(), vec![Relation::VII]);
    assert_eq!(Relation::select("VIII-B").unwrap(), vec![Relation::VIIIb]);
    assert!(Relation::select("ix").is_err());
}

#[test]
fn mutations_are_caught() {
    let cells: Vec<usize> = used_cells(3, 1, t()).unwrap().into_iter().collect();
    assert!(cells.len() > 20);
    let missed: Vec<String> =
        mutation_controls(&cells, 3, 1, t()).into_iter().filter(|m| !m.detected()).map(|m| m.key).collect();
    assert!(missed.is_empty(), "undetected: {missed:?}");
}

