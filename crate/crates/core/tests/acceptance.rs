//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::path::PathBuf;
use std::time::Instant;

use graphalex::diagram::{
    contract, parse_diagram, rotation_numbers, validate, Color, Horizontal, MorseDiagram, PieceKind,
};
use graphalex::foxcalc::{
    compare_with_gl11, fox_matrix, hat_state_sum, heegaard_states, specialized_state_pair, tilde_hat_per_state,
};
use graphalex::laurent::{qnum, LaurentPoly, RatFn, Var};
use graphalex::relations::{mutation_controls, run_relation, used_cells, Level, Relation};
use graphalex::statesum::{enumerate_planar_states, evaluate_full, evaluate_planar};
use graphalex::weights::{extremum_weight, StrandState, WeightTable};

const SEED: u64 = 7;

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

/// Connected fixtures with at least two vertices.
const GRAPHS: &[&str] =
    &["theta", "theta_heights", "theta_snake", "theta_thin", "theta_wide", "double_theta", "double_theta_thin", "ladder"];

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.morse"))
}

fn fixture(name: &str) -> Result<MorseDiagram, String> {
    let text = std::fs::read_to_string(fixture_path(name)).map_err(|e| format!("{name}: {e}"))?;
    let d = parse_diagram(&text).map_err(|e| format!("{name}: {e}"))?;
    validate(&d).map_err(|e| format!("{name}: {e}"))?;
    Ok(d)
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn circle_value() -> Outcome {
    for i in 1..=3 {
        let v = evaluate_full(&fixture(&format!("circle{i}"))?).map_err(|e| e.to_string())?.value;
        let want = RatFn::new(LaurentPoly::one(Var::Q), qnum(2 * i, Var::Q)).unwrap();
        ensure(v == want, || format!("circle ({i},1): got {v}, want {want}"))?;
    }
    Ok("1/{2i} for i = 1, 2, 3".into())
}

fn disconnected() -> Outcome {
    let v = evaluate_full(&fixture("two_component")?).map_err(|e| e.to_string())?.value;
    ensure(v.is_zero(), || format!("got {v}"))?;
    Ok("two-component fixture is 0".into())
}

fn relation_runs(rels: &[Relation], level: Level, n: usize) -> Result<usize, String> {
    let table = WeightTable::standard();
    let mut checked = 0;
    for &r in rels {
        let reps = run_relation(r, level, n, SEED, table).map_err(|e| format!("{r}: {e}"))?;
        if let Some(bad) = reps.iter().find(|x| !x.equal) {
            return Err(format!("{r} fails on {:?}", bad.sample));
        }
        checked += reps.len();
    }
    Ok(checked)
}

fn twist() -> Outcome {
    let n = relation_runs(&[Relation::IIIa, Relation::IIIb], Level::Closed, 5)?;
    Ok(format!("{n} samples, both twist signs"))
}

fn moy_matrices() -> Outcome {
    let rels: Vec<Relation> = Relation::ALL.into_iter().filter(|r| r.has_matrix_level()).collect();
    let n = relation_runs(&rels, Level::Matrix, 20)?;
    let table = WeightTable::standard();
    let cells: Vec<usize> = used_cells(20, SEED, table).map_err(|e| e.to_string())?.into_iter().collect();
    let outcomes = mutation_controls(&cells, 20, SEED, table);
    let missed: Vec<&str> = outcomes.iter().filter(|o| !o.detected()).map(|o| o.key.as_str()).collect();
    ensure(missed.is_empty(), || format!("mutations not caught: {missed:?}"))?;
    Ok(format!("{n} matrix identities; {} used cells, every mutation caught", cells.len()))
}

fn closed_suite() -> Outcome {
    let n = relation_runs(&Relation::ALL, Level::Closed, 20)?;
    Ok(format!("{} relations, {n} closed samples", Relation::ALL.len()))
}

fn planar_full() -> Outcome {
    for name in CROSSINGLESS {
        let d = fixture(name)?;
        let full = evaluate_full(&d).map_err(|e| e.to_string())?.value;
        let planar = evaluate_planar(&d).map_err(|e| e.to_string())?.value;
        ensure(full == planar, || format!("{name}: full {full}, planar {planar}"))?;
    }
    Ok(format!("{} crossingless fixtures", CROSSINGLESS.len()))
}

fn fox_hat() -> Outcome {
    let table = WeightTable::standard();
    for name in GRAPHS {
        let g = contract(&fixture(name)?).map_err(|e| e.to_string())?;
        let det = fox_matrix(&g).and_then(|m| m.determinant()).map_err(|e| e.to_string())?;
        let hat = hat_state_sum(&g, table).map_err(|e| e.to_string())?;
        ensure(det == hat, || format!("{name}: det {det}, hat sum {hat}"))?;
    }
    Ok(format!("{} graphs", GRAPHS.len()))
}

fn sign_and_tilde_hat() -> Outcome {
    let table = WeightTable::standard();
    let mut states = 0;
    for name in GRAPHS {
        let g = contract(&fixture(name)?).map_err(|e| e.to_string())?;
        for h in heegaard_states(&g).map_err(|e| e.to_string())? {
            ensure(h.sign_identity_holds(), || format!("{name}: sign identity fails for sigma {:?}", h.sigma))?;
            let (t, hat) = tilde_hat_per_state(&g, &h.state, table).map_err(|e| e.to_string())?;
            ensure(t == hat, || format!("{name}: tilde {t} vs hat {hat}"))?;
            states += 1;
        }
    }
    Ok(format!("{states} states"))
}

fn specialization() -> Outcome {
    let table = WeightTable::standard();
    let mut states = 0;
    for name in GRAPHS {
        let g = contract(&fixture(name)?).map_err(|e| e.to_string())?;
        for s in enumerate_planar_states(&g) {
            let (hat, wt) = specialized_state_pair(&g, &s, table).map_err(|e| e.to_string())?;
            ensure(hat == wt, || format!("{name}: {hat} vs {wt}"))?;
            states += 1;
        }
    }
    Ok(format!("{states} states"))
}

fn alexander_vs_gl11() -> Outcome {
    for name in GRAPHS {
        let c = compare_with_gl11(&fixture(name)?).map_err(|e| format!("{name}: {e}"))?;
        ensure(c.equal, || format!("{name}: {} vs {}", c.lhs.normal, c.rhs.normal))?;
    }
    let c = compare_with_gl11(&fixture("theta")?).map_err(|e| e.to_string())?;
    let want = LaurentPoly::from_terms(Var::Q, [(0, 1), (4, 1)]);
    ensure(c.lhs.normal == want && c.rhs.normal == want, || format!("theta: {} / {}", c.lhs.normal, c.rhs.normal))?;
    Ok(format!("{} graphs; theta normal form 1 + q^4", GRAPHS.len()))
}

fn calibration() -> Outcome {
    let mut combos = 0;
    for j in [1, 2, 3] {
        for (min_h, max_h) in
            [(Horizontal::RightToLeft, Horizontal::LeftToRight), (Horizontal::LeftToRight, Horizontal::RightToLeft)]
        {
            let text = format!(
                "morse v1\nedge e 1 1\nedge f {j} 1\ncut e down\nslice 1 min f {}\nslice 1 max\n",
                min_h.keyword()
            );
            let d = parse_diagram(&text).map_err(|e| e.to_string())?;
            let rot = rotation_numbers(&d)
                .map_err(|e| e.to_string())?
                .into_iter()
                .find(|c| c.edges == vec![1])
                .ok_or("circle not traced")?
                .rotation;
            for (s, sign) in [(StrandState::Dotted, 1), (StrandState::Solid, -1)] {
                let col = Color::new(j, 1);
                let w = &extremum_weight(PieceKind::Min, min_h, s, col).map_err(|e| e.to_string())?
                    * &extremum_weight(PieceKind::Max, max_h, s, col).map_err(|e| e.to_string())?;
                let want = LaurentPoly::monomial(Var::Q, sign, 2 * j * rot);
                ensure(w == want, || format!("j={j} rot={rot} {s:?}: {w} vs {want}"))?;
                combos += 1;
            }
        }
    }
    Ok(format!("{combos} orientation/state/color combinations"))
}

fn isotopy() -> Outcome {
    let mut outputs = Vec::new();
    for name in ["theta", "theta_heights", "theta_snake"] {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = graphalex::cli::run(["graphalex", "gl11", fixture_path(name).to_str().unwrap()], &mut out, &mut err);
        ensure(code == 0, || format!("{name}: exit {code}: {}", String::from_utf8_lossy(&err)))?;
        outputs.push(out);
    }
    ensure(outputs.windows(2).all(|w| w[0] == w[1]), || "outputs differ".into())?;
    Ok(format!("3 presentations print `{}`", String::from_utf8_lossy(&outputs[0]).trim()))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("circle value", circle_value),
        ("disconnected diagrams vanish", disconnected),
        ("half-twist factor", twist),
        ("matrix identities and mutation controls", moy_matrices),
        ("closed relation suite", closed_suite),
        ("planar sum equals full sum", planar_full),
        ("Fox determinant equals hat sum", fox_hat),
        ("sign identity and tilde = hat", sign_and_tilde_hat),
        ("per-state specialization", specialization),
        ("Alexander vs gl(1|1)", alexander_vs_gl11),
        ("critical point calibration", calibration),
        ("isotopy smoke", isotopy),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match r {
            Ok(detail) => println!("criterion {:>2}: PASS  {name}: {detail} ({ms} ms)", n + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {e} ({ms} ms)", n + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
