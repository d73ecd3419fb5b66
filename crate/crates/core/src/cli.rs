//! The `graphalex` command line.
//!
//! Exit status: 0 on success, 1 when a check fails, 2 on bad input.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::diagram::{contract, parse_diagram, validate, ColoredDigraph, DiagramError, MorseDiagram};
use crate::foxcalc::{
    alexander_via_fox, compare_with_gl11_with, fox_matrix, heegaard_states, tilde_hat_per_state, FoxError,
};
use crate::relations::{run_relation, Level, Relation, RelationError, RelationReport};
use crate::statesum::{
    enumerate_planar_states, evaluate_full_with, evaluate_planar_with, local_state, planar_sign, StateSumError,
};
use crate::weights::{PlanarFamily, WeightTable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "graphalex", version, about = "gl(1|1) state sums and Alexander polynomials of colored trivalent graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Weight table to use instead of the built-in one.
    #[arg(long, global = true, value_name = "PATH")]
    table: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a diagram.
    Validate {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// The gl(1|1) invariant.
    Gl11 {
        file: PathBuf,
        /// Use the planar edge-state sum (crossingless diagrams only).
        #[arg(long)]
        planar: bool,
        #[command(flatten)]
        common: Common,
    },
    /// The Alexander polynomial from the Fox matrix, in unit normal form.
    Alexander {
        file: PathBuf,
        #[arg(long)]
        show_matrix: bool,
        #[arg(long)]
        show_states: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the specialized Alexander polynomial with the gl(1|1) invariant.
    Compare {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Check the local relations on seeded color samples.
    Relations {
        /// Every relation (the default when no --rel is given).
        #[arg(long)]
        all: bool,
        /// A relation id such as `v` or `viii-a`; a family name selects all its equations.
        #[arg(long = "rel", value_name = "ID")]
        rel: Vec<String>,
        #[arg(long, value_enum, default_value_t = LevelArg::Both)]
        level: LevelArg,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// List the planar edge states with their vertex weights.
    States {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum LevelArg {
    Matrix,
    Closed,
    Both,
}

/// A failure with its exit status.
struct Failure {
    code: i32,
    msg: String,
}

impl Failure {
    fn input(msg: impl std::fmt::Display) -> Self {
        Failure { code: EXIT_INPUT, msg: msg.to_string() }
    }

    fn check(msg: impl std::fmt::Display) -> Self {
        Failure { code: EXIT_CHECK_FAILED, msg: msg.to_string() }
    }
}

impl From<DiagramError> for Failure {
    fn from(e: DiagramError) -> Self {
        Failure::input(e)
    }
}

impl From<StateSumError> for Failure {
    fn from(e: StateSumError) -> Self {
        match e {
            StateSumError::Integrity(_) => Failure::check(e),
            e => Failure::input(e),
        }
    }
}

impl From<FoxError> for Failure {
    fn from(e: FoxError) -> Self {
        match e {
            FoxError::Integrity(_) | FoxError::StateSum(StateSumError::Integrity(_)) => Failure::check(e),
            e => Failure::input(e),
        }
    }
}

/// Output of one subcommand: text, JSON, and whether its check passed.
struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, ok: true }
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let pool = match std::env::var("GRAPHALEX_THREADS").ok().map(|s| s.parse::<usize>()) {
        None => rayon::ThreadPoolBuilder::new().build(),
        Some(Ok(n)) if n > 0 => rayon::ThreadPoolBuilder::new().num_threads(n).build(),
        Some(_) => {
            let _ = writeln!(err, "error: GRAPHALEX_THREADS must be a positive integer");
            return EXIT_INPUT;
        }
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let json = command_common(&cli.command).json;
    match pool.install(|| dispatch(cli.command)) {
        Ok(o) => {
            let _ = if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("json"))
            } else {
                write!(out, "{}", o.text)
            };
            if o.ok {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(f) => {
            let _ = if json {
                writeln!(err, "{}", json!({ "error": f.msg, "exit": f.code }))
            } else {
                writeln!(err, "error: {}", f.msg)
            };
            f.code
        }
    }
}

fn command_common(c: &Command) -> &Common {
    match c {
        Command::Validate { common, .. }
        | Command::Gl11 { common, .. }
        | Command::Alexander { common, .. }
        | Command::Compare { common, .. }
        | Command::Relations { common, .. }
        | Command::States { common, .. } => common,
    }
}

fn load_table(c: &Common) -> Result<WeightTable, Failure> {
    match &c.table {
        None => Ok(WeightTable::standard().clone()),
        Some(p) => WeightTable::load(p).map_err(Failure::input),
    }
}

fn load_diagram(path: &Path) -> Result<MorseDiagram, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let d = parse_diagram(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    validate(&d).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok(d)
}

fn dispatch(c: Command) -> Result<Outcome, Failure> {
    match c {
        Command::Validate { file, .. } => cmd_validate(&file),
        Command::Gl11 { file, planar, common } => cmd_gl11(&file, planar, &load_table(&common)?),
        Command::Alexander { file, show_matrix, show_states, common } => {
            cmd_alexander(&file, show_matrix, show_states, &load_table(&common)?)
        }
        Command::Compare { file, common } => cmd_compare(&file, &load_table(&common)?),
        Command::Relations { all, rel, level, samples, seed, common } => {
            cmd_relations(all, &rel, level, samples, seed, &load_table(&common)?)
        }
        Command::States { file, common } => cmd_states(&file, &load_table(&common)?),
    }
}

fn cmd_validate(file: &Path) -> Result<Outcome, Failure> {
    let d = load_diagram(file)?;
    let g = contract(&d)?;
    let text = format!(
        "ok: {} edges, {} slices, {} vertices, cut `{}` {}\n",
        d.edges.len(),
        d.slices.len(),
        g.vertices.len(),
        d.edge(d.cut_edge).name,
        d.cut_direction
    );
    let json = json!({
        "valid": true,
        "edges": d.edges.len(),
        "slices": d.slices.len(),
        "crossings": d.has_crossings(),
        "twists": d.has_twists(),
        "graph": g.to_json(),
    });
    Ok(Outcome::ok(text, json))
}

fn cmd_gl11(file: &Path, planar: bool, table: &WeightTable) -> Result<Outcome, Failure> {
    let d = load_diagram(file)?;
    let r = if planar { evaluate_planar_with(&d, table)? } else { evaluate_full_with(&d, table)? };
    Ok(Outcome::ok(format!("{}\n", r.value), r.to_json()))
}

fn heegaard_json(g: &ColoredDigraph, table: &WeightTable) -> Result<(String, Value), Failure> {
    let mut text = String::new();
    let mut rows = Vec::new();
    for h in heegaard_states(g)? {
        let (tilde, hat) = tilde_hat_per_state(g, &h.state, table)?;
        let solid: Vec<&str> = h.state.solid_edges().iter().map(|&e| g.edges[e].name.as_str()).collect();
        text.push_str(&format!(
            "  solid {{{}}} sigma {:?} curves {} hat {}\n",
            solid.join(","),
            h.sigma,
            h.solid_curves,
            hat
        ));
        let mut j = h.to_json(g);
        j["tilde"] = tilde.json();
        j["hat"] = hat.json();
        j["sign_identity"] = json!(h.sign_identity_holds());
        rows.push(j);
    }
    Ok((text, Value::Array(rows)))
}

fn cmd_alexander(file: &Path, show_matrix: bool, show_states: bool, table: &WeightTable) -> Result<Outcome, Failure> {
    let d = load_diagram(file)?;
    if d.has_crossings() || d.has_twists() {
        return Err(Failure::input("the Alexander polynomial is computed for planar (crossingless, twistless) diagrams"));
    }
    let g = contract(&d)?;
    let a = alexander_via_fox(&g)?;
    let mut text = format!("{}  (unit {})\n", a.normal.normal, a.normal.unit_string());
    let mut json = a.to_json();
    if show_matrix {
        let m = fox_matrix(&g)?;
        text.push_str("matrix:\n");
        for row in &m.rows {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            text.push_str(&format!("  [{}]\n", cells.join(" | ")));
        }
        json["matrix"] = m.to_json();
    }
    if show_states {
        let (t, j) = heegaard_json(&g, table)?;
        text.push_str("states:\n");
        text.push_str(&t);
        json["states"] = j;
    }
    Ok(Outcome::ok(text, json))
}

fn cmd_compare(file: &Path, table: &WeightTable) -> Result<Outcome, Failure> {
    let d = load_diagram(file)?;
    let c = compare_with_gl11_with(&d, table)?;
    let text = format!(
        "alexander  {}\ngl11       {}\nlhs        {}\nrhs        {}\n{}\n",
        c.alexander.normal.normal,
        c.gl11,
        c.lhs.normal,
        c.rhs.normal,
        c.verdict()
    );
    Ok(Outcome { text, json: c.to_json(), ok: c.equal })
}

fn cmd_relations(
    all: bool,
    ids: &[String],
    level: LevelArg,
    samples: usize,
    seed: u64,
    table: &WeightTable,
) -> Result<Outcome, Failure> {
    if samples == 0 {
        return Err(Failure::input("--samples must be positive"));
    }
    let mut rels: Vec<Relation> = Vec::new();
    if all || ids.is_empty() {
        rels.extend(Relation::ALL);
    }
    for id in ids {
        for r in Relation::select(id).map_err(Failure::input)? {
            if !rels.contains(&r) {
                rels.push(r);
            }
        }
    }
    let levels: &[Level] = match level {
        LevelArg::Matrix => &[Level::Matrix],
        LevelArg::Closed => &[Level::Closed],
        LevelArg::Both => &[Level::Matrix, Level::Closed],
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for &rel in &rels {
        for &lv in levels {
            if lv == Level::Matrix && !rel.has_matrix_level() {
                continue;
            }
            let (pass, detail, reports): (bool, String, Vec<RelationReport>) =
                match run_relation(rel, lv, samples, seed, table) {
                    Ok(reps) => {
                        let bad = reps.iter().filter(|r| !r.equal).count();
                        (bad == 0, format!("{}/{} samples equal", reps.len() - bad, reps.len()), reps)
                    }
                    Err(e @ RelationError::Unknown(_)) => return Err(Failure::input(e)),
                    Err(e) => (false, e.to_string(), Vec::new()),
                };
            ok &= pass;
            text.push_str(&format!(
                "{:<4} {:<10} {:<7} {}\n",
                if pass { "PASS" } else { "FAIL" },
                rel.id(),
                lv.name(),
                detail
            ));
            let failing: Vec<Value> = reports.iter().filter(|r| !r.equal).map(|r| r.to_json()).collect();
            rows.push(json!({
                "relation": rel.id(),
                "level": lv.name(),
                "pass": pass,
                "detail": detail,
                "samples": reports.iter().map(|r| json!(r.sample)).collect::<Vec<_>>(),
                "failures": failing,
            }));
        }
    }
    let json = json!({ "seed": seed, "samples": samples, "pass": ok, "results": rows });
    Ok(Outcome { text, json, ok })
}

fn cmd_states(file: &Path, table: &WeightTable) -> Result<Outcome, Failure> {
    let d = load_diagram(file)?;
    if d.has_crossings() || d.has_twists() {
        return Err(Failure::input("edge states are listed for planar (crossingless, twistless) diagrams"));
    }
    let g = contract(&d)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let states = enumerate_planar_states(&g);
    for s in &states {
        let sign = planar_sign(s, &g)?;
        let mut vs = Vec::new();
        let mut parts = Vec::new();
        for v in &g.vertices {
            let st = local_state(v, s);
            let (i, j) = (g.edges[v.left].color.multiplicity, g.edges[v.right].color.multiplicity);
            let w = table.planar_weight(PlanarFamily::Wt, v.kind, st, i, j).map_err(Failure::input)?;
            parts.push(format!("v{}:{}={}", v.id, st.key(), w));
            vs.push(json!({ "vertex": v.id, "type": v.kind.name(), "state": st.key(), "weight": w.json() }));
        }
        let solid: Vec<&str> = s.solid_edges().iter().map(|&e| g.edges[e].name.as_str()).collect();
        text.push_str(&format!("{:+} {{{}}} {}\n", sign, solid.join(","), parts.join(" ")));
        rows.push(json!({ "solid": solid, "sign": sign, "vertices": vs }));
    }
    text.push_str(&format!("{} states\n", states.len()));
    Ok(Outcome::ok(text, json!({ "num_states": states.len(), "states": rows })))
}
