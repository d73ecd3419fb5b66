//! Exact instance checks of the graph relations.
//!
//! Matrix-level checks compare the morphisms of the local pictures directly
//! (denominators cleared). Closed checks put every picture of a relation into
//! the same closure and compare full state sums.

mod pictures;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

pub use pictures::Local;
use pictures::{bubble, strand, triple_merge, triple_split, twisted_strand, two_circles, Picture};

use crate::diagram::{DiagramError, Sign};
use crate::laurent::{qnum, LaurentPoly, RatFn, Var};
use crate::statesum::{evaluate_full_with, StateSumError};
use crate::weights::{PieceMatrix, WeightTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RelationError {
    #[error("skipped: {0}")]
    Skipped(String),
    #[error(transparent)]
    StateSum(#[from] StateSumError),
    #[error(transparent)]
    Diagram(DiagramError),
    #[error("unknown relation `{0}`")]
    Unknown(String),
    #[error("relation {0} has no matrix-level check")]
    NoMatrixLevel(&'static str),
    #[error("only {found} of {wanted} samples for relation {relation} could be checked")]
    Exhausted { relation: &'static str, wanted: usize, found: usize },
    #[error("a zero multiplicity is only allowed on an edge inside a local picture")]
    ZeroMultiplicity,
    #[error("internal invariant violated: {0}")]
    Integrity(String),
}

impl From<DiagramError> for RelationError {
    fn from(e: DiagramError) -> Self {
        match e {
            DiagramError::MultiplicityAdmissibility { .. } => {
                RelationError::Skipped(format!("orientation not determined by the colors ({e})"))
            }
            e => RelationError::Diagram(e),
        }
    }
}

/// One relation, or one equation of a relation that has several.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    I,
    II,
    IIIa,
    IIIb,
    IV,
    V,
    VIa,
    VIb,
    VII,
    VIIZero,
    VIIIa,
    VIIIb,
    VIIIc,
    VIIId,
    VIIIZero,
}

impl Relation {
    pub const ALL: [Relation; 15] = [
        Relation::I,
        Relation::II,
        Relation::IIIa,
        Relation::IIIb,
        Relation::IV,
        Relation::V,
        Relation::VIa,
        Relation::VIb,
        Relation::VII,
        Relation::VIIZero,
        Relation::VIIIa,
        Relation::VIIIb,
        Relation::VIIIc,
        Relation::VIIId,
        Relation::VIIIZero,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Relation::I => "i",
            Relation::II => "ii",
            Relation::IIIa => "iii-a",
            Relation::IIIb => "iii-b",
            Relation::IV => "iv",
            Relation::V => "v",
            Relation::VIa => "vi-a",
            Relation::VIb => "vi-b",
            Relation::VII => "vii",
            Relation::VIIZero => "vii-zero",
            Relation::VIIIa => "viii-a",
            Relation::VIIIb => "viii-b",
            Relation::VIIIc => "viii-c",
            Relation::VIIId => "viii-d",
            Relation::VIIIZero => "viii-zero",
        }
    }

    /// Resolves an id; a bare family name (`iii`, `vi`, `viii`) selects all its equations.
    pub fn select(s: &str) -> Result<Vec<Relation>, RelationError> {
        let s = s.trim().to_ascii_lowercase();
        if let Some(r) = Relation::ALL.iter().find(|r| r.id() == s) {
            return Ok(vec![*r]);
        }
        let family: Vec<Relation> =
            Relation::ALL.iter().copied().filter(|r| r.id().strip_prefix(s.as_str()).is_some_and(|t| t.starts_with('-'))).collect();
        if family.is_empty() {
            Err(RelationError::Unknown(s))
        } else {
            Ok(family)
        }
    }

    pub fn has_matrix_level(self) -> bool {
        matches!(
            self,
            Relation::V
                | Relation::VII
                | Relation::VIIZero
                | Relation::VIIIa
                | Relation::VIIIb
                | Relation::VIIIc
                | Relation::VIIId
                | Relation::VIIIZero
        )
    }

    /// Sampled colors this relation can be drawn with: every edge nonzero and
    /// every denominator nonvanishing.
    pub fn admits(self, s: &ColorSample) -> bool {
        let nz = |xs: &[i64]| xs.iter().all(|&x| x != 0);
        let (i, j, k, l) = (s.i, s.j, s.k, s.l);
        match self {
            Relation::I | Relation::IIIa | Relation::IIIb => nz(&[i]),
            Relation::II => nz(&[i, j]),
            Relation::IV => nz(&[i, j, i + j]),
            Relation::V => nz(&[i, j, i + j, i - j]),
            Relation::VIa | Relation::VIb => nz(&[i, j, k, i + j, j + k, i + j + k]),
            Relation::VII => nz(&[i, j, k, l, i + j, i + k, j - k, i + k - l, j + l - k, k - l]),
            Relation::VIIZero => k == l && nz(&[i, j, k, i + j, i + k, j - k]),
            Relation::VIIIa | Relation::VIIIb | Relation::VIIIc | Relation::VIIId => nz(&[i, j, i + j, i - j]),
            Relation::VIIIZero => i == j && s.wi == s.wj && nz(&[i]),
        }
    }

    /// Forces the coincidences a zero-rung variant is about.
    fn specialize(self, s: &mut ColorSample) {
        match self {
            Relation::VIIZero => s.l = s.k,
            Relation::VIIIZero => {
                s.j = s.i;
                s.wj = s.wi;
            }
            _ => {}
        }
    }
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Level {
    #[serde(rename = "matrix")]
    Matrix,
    #[serde(rename = "closed")]
    Closed,
}

impl Level {
    pub fn name(self) -> &'static str {
        match self {
            Level::Matrix => "matrix",
            Level::Closed => "closed",
        }
    }
}

/// Colors for one instance. Relations read only the fields they mention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ColorSample {
    pub i: i64,
    pub j: i64,
    pub k: i64,
    pub l: i64,
    #[serde(rename = "I")]
    pub wi: i64,
    #[serde(rename = "J")]
    pub wj: i64,
    #[serde(rename = "K")]
    pub wk: i64,
}

impl ColorSample {
    pub fn new(i: i64, j: i64, k: i64, l: i64) -> Self {
        ColorSample { i, j, k, l, wi: 1, wj: 1, wk: 1 }
    }

    pub fn weights(mut self, wi: i64, wj: i64, wk: i64) -> Self {
        (self.wi, self.wj, self.wk) = (wi, wj, wk);
        self
    }

    fn draw(rng: &mut ChaCha8Rng) -> Self {
        let mut m = || loop {
            let x = rng.gen_range(-5..=5);
            if x != 0 {
                break x;
            }
        };
        let (i, j, k, l) = (m(), m(), m(), m());
        let (wi, wj, wk) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        ColorSample { i, j, k, l, wi, wj, wk }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Side {
    Matrix(PieceMatrix),
    Value(RatFn),
}

impl Side {
    pub fn to_json(&self) -> Value {
        match self {
            Side::Matrix(m) => m.to_json(),
            Side::Value(v) => v.json(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub relation: Relation,
    pub level: Level,
    pub sample: ColorSample,
    pub lhs: Side,
    pub rhs: Side,
    pub equal: bool,
}

impl RelationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "relation": self.relation.id(),
            "level": self.level.name(),
            "sample": self.sample,
            "equal": self.equal,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
        })
    }
}

fn br(k: i64) -> LaurentPoly {
    qnum(k, Var::Q)
}

fn q(e: i64) -> LaurentPoly {
    LaurentPoly::power(Var::Q, e)
}

/// The morphism of a local picture, in the basis ordered by strand states with
/// the leftmost strand most significant.
pub fn local_morphism(local: Local, s: &ColorSample, table: &WeightTable) -> Result<PieceMatrix, RelationError> {
    Ok(local.picture(s).matrix(table)?.0)
}

/// Matrices of several pictures, required to share both boundaries.
fn matrices(pics: &[Picture], table: &WeightTable) -> Result<Vec<PieceMatrix>, RelationError> {
    let mut out = Vec::new();
    let mut top0 = None;
    for p in pics {
        let (m, top) = p.matrix(table)?;
        if p.bottom() != pics[0].bottom() || top0.get_or_insert_with(|| top.clone()) != &top {
            return Err(RelationError::Integrity("pictures of one relation have different boundaries".into()));
        }
        out.push(m);
    }
    Ok(out)
}

/// `Σ c_k · M_k`.
fn combine(terms: &[(LaurentPoly, &PieceMatrix)]) -> PieceMatrix {
    let (c0, m0) = &terms[0];
    terms[1..].iter().fold(m0.scale(c0), |acc, (c, m)| acc.add(&m.scale(c)))
}

/// The proof identity of a relation between local morphisms, with
/// denominators cleared: returns (lhs, rhs).
pub fn matrix_sides(rel: Relation, s: &ColorSample, table: &WeightTable) -> Result<(PieceMatrix, PieceMatrix), RelationError> {
    let (i, j, k, l, wi, wj) = (s.i, s.j, s.k, s.l, s.wi, s.wj);
    let pics = |ls: &[Local]| matrices(&ls.iter().map(|x| x.picture(s)).collect::<Vec<_>>(), table);
    let cross = i * wj + j * wi;
    match rel {
        Relation::V => {
            let m = pics(&[Local::VSquare, Local::VVertical, Local::VParallel])?;
            let rhs = combine(&[(br(2 * i + 2 * j), &m[1]), (br(2 * j).pow(2), &m[2])]);
            Ok((m[0].clone(), rhs))
        }
        Relation::VII => {
            let m = pics(&[Local::ViiLadder, Local::ViiH, Local::ViiRung])?;
            let lhs = m[0].scale(&br(2 * j + 2 * l - 2 * k));
            let rhs = combine(&[
                (&br(2 * j) * &br(2 * l), &m[1]),
                (&br(2 * i + 2 * k - 2 * l) * &br(2 * j - 2 * k), &m[2]),
            ]);
            Ok((lhs, rhs))
        }
        Relation::VIIZero => {
            // The k−l rung has color zero and stands for {2j} times two strands.
            let m = pics(&[Local::ViiLadder, Local::ViiH, Local::UpParallel])?;
            let rung = zero_multiplicity_value(ZeroRung::Leftward, i, j)?;
            let rhs = combine(&[(br(2 * l), &m[1]), (&(&br(2 * i) * &br(2 * j - 2 * k)) * &rung.scale_by_inverse(&br(2 * j))?, &m[2])]);
            Ok((m[0].clone(), rhs))
        }
        Relation::VIIIa | Relation::VIIIc => {
            let (x, a, b) = if rel == Relation::VIIIa {
                (Local::CrossingPos, q(i - j - cross), -q(-i - j - cross))
            } else {
                (Local::CrossingNeg, q(j - i + cross), -q(i + j + cross))
            };
            let m = pics(&[x, Local::ViiiH, Local::ViiiRungLeft])?;
            Ok((m[0].scale(&br(2 * i)), combine(&[(a, &m[1]), (b, &m[2])])))
        }
        Relation::VIIIb | Relation::VIIId => {
            let (x, a, b) = if rel == Relation::VIIIb {
                (Local::CrossingPos, q(j - i - cross), -q(-i - j - cross))
            } else {
                (Local::CrossingNeg, q(i - j + cross), -q(i + j + cross))
            };
            let m = pics(&[x, Local::ViiiH, Local::ViiiRungRight])?;
            Ok((m[0].scale(&br(2 * j)), combine(&[(a, &m[1]), (b, &m[2])])))
        }
        Relation::VIIIZero => {
            // i = j: the i−j rung has color zero and stands for {2i} times two strands.
            let m = pics(&[Local::CrossingPos, Local::ViiiH, Local::UpParallel])?;
            let rung = zero_multiplicity_value(ZeroRung::Rightward, i, j)?;
            let rhs = combine(&[(q(j - i - cross), &m[1]), (&-q(-i - j - cross) * &rung, &m[2])]);
            Ok((m[0].scale(&br(2 * j)), rhs))
        }
        _ => Err(RelationError::NoMatrixLevel(rel.id())),
    }
}

trait ExactDiv: Sized {
    fn scale_by_inverse(&self, d: &LaurentPoly) -> Result<Self, RelationError>;
}

impl ExactDiv for LaurentPoly {
    fn scale_by_inverse(&self, d: &LaurentPoly) -> Result<Self, RelationError> {
        self.try_div_exact(d).map_err(|e| RelationError::Integrity(e.to_string()))
    }
}

pub fn check_matrix_relation(rel: Relation, s: &ColorSample, table: &WeightTable) -> Result<RelationReport, RelationError> {
    if !rel.admits(s) {
        return Err(RelationError::Skipped(format!("colors {s:?} make an edge or a denominator vanish")));
    }
    let (lhs, rhs) = matrix_sides(rel, s, table)?;
    let equal = lhs.same_values(&rhs);
    Ok(RelationReport { relation: rel, level: Level::Matrix, sample: *s, lhs: Side::Matrix(lhs), rhs: Side::Matrix(rhs), equal })
}

fn value(p: &Picture, table: &WeightTable) -> Result<RatFn, RelationError> {
    Ok(evaluate_full_with(&p.close()?, table)?.value)
}

fn rat(p: LaurentPoly) -> RatFn {
    RatFn::from_poly(p)
}

fn frac(n: LaurentPoly, d: LaurentPoly) -> Result<RatFn, RelationError> {
    RatFn::new(n, d).map_err(|e| RelationError::Integrity(e.to_string()))
}

/// `Σ c_k · v_k` over RatFn.
fn linear(terms: &[(RatFn, RatFn)]) -> Result<RatFn, RelationError> {
    let mut acc = RatFn::zero(Var::Q);
    for (c, v) in terms {
        acc = acc.add(&c.mul(v).map_err(|e| RelationError::Integrity(e.to_string()))?).map_err(|e| RelationError::Integrity(e.to_string()))?;
    }
    Ok(acc)
}

/// Both sides of a relation on closed diagrams.
pub fn closed_sides(rel: Relation, s: &ColorSample, table: &WeightTable) -> Result<(RatFn, RatFn), RelationError> {
    let (i, j, k, l, wi, wj) = (s.i, s.j, s.k, s.l, s.wi, s.wj);
    let v = |p: &Picture| value(p, table);
    let loc = |x: Local| value(&x.picture(s), table);
    let cross = i * wj + j * wi;
    match rel {
        Relation::I => Ok((v(&strand(i, wi))?, frac(LaurentPoly::one(Var::Q), br(2 * i))?)),
        Relation::II => Ok((evaluate_full_with(&two_circles(s)?, table)?.value, RatFn::zero(Var::Q))),
        Relation::IIIa | Relation::IIIb => {
            let (sign, e) = if rel == Relation::IIIa { (Sign::Pos, -i * wi) } else { (Sign::Neg, i * wi) };
            let rhs = linear(&[(rat(q(e)), v(&strand(i, wi))?)])?;
            Ok((v(&twisted_strand(i, wi, sign))?, rhs))
        }
        Relation::IV => {
            let b = bubble(s);
            let plain = strand(i + j, b.legs[0].0.weight.unwrap());
            Ok((v(&b)?, linear(&[(rat(br(2 * i + 2 * j)), v(&plain)?)])?))
        }
        Relation::V => {
            let rhs = linear(&[
                (rat(br(2 * i + 2 * j)), loc(Local::VVertical)?),
                (rat(br(2 * j).pow(2)), loc(Local::VParallel)?),
            ])?;
            Ok((loc(Local::VSquare)?, rhs))
        }
        Relation::VIa => {
            let c = frac(br(2 * i + 2 * j), br(2 * j + 2 * k))?;
            Ok((v(&triple_split(s, true))?, linear(&[(c, v(&triple_split(s, false))?)])?))
        }
        Relation::VIb => Ok((v(&triple_merge(s, true))?, v(&triple_merge(s, false))?)),
        Relation::VII => {
            let d = br(2 * j + 2 * l - 2 * k);
            let rhs = linear(&[
                (frac(&br(2 * j) * &br(2 * l), d.clone())?, loc(Local::ViiH)?),
                (frac(&br(2 * i + 2 * k - 2 * l) * &br(2 * j - 2 * k), d)?, loc(Local::ViiRung)?),
            ])?;
            Ok((loc(Local::ViiLadder)?, rhs))
        }
        Relation::VIIZero => {
            let rung = rat(zero_multiplicity_value(ZeroRung::Leftward, i, j)?);
            let c2 = frac(&br(2 * i) * &br(2 * j - 2 * k), br(2 * j))?;
            let rhs = linear(&[
                (rat(br(2 * l)), loc(Local::ViiH)?),
                (c2.mul(&rung).map_err(|e| RelationError::Integrity(e.to_string()))?, loc(Local::UpParallel)?),
            ])?;
            Ok((loc(Local::ViiLadder)?, rhs))
        }
        Relation::VIIIa | Relation::VIIIb | Relation::VIIIc | Relation::VIIId => {
            let (x, rung, d, a, b) = match rel {
                Relation::VIIIa => (Local::CrossingPos, Local::ViiiRungLeft, 2 * i, q(i - j - cross), -q(-i - j - cross)),
                Relation::VIIIb => (Local::CrossingPos, Local::ViiiRungRight, 2 * j, q(j - i - cross), -q(-i - j - cross)),
                Relation::VIIIc => (Local::CrossingNeg, Local::ViiiRungLeft, 2 * i, q(j - i + cross), -q(i + j + cross)),
                _ => (Local::CrossingNeg, Local::ViiiRungRight, 2 * j, q(i - j + cross), -q(i + j + cross)),
            };
            let rhs = linear(&[(frac(a, br(d))?, loc(Local::ViiiH)?), (frac(b, br(d))?, loc(rung)?)])?;
            Ok((loc(x)?, rhs))
        }
        Relation::VIIIZero => {
            let rung = zero_multiplicity_value(ZeroRung::Rightward, i, j)?;
            let rhs = linear(&[
                (frac(q(j - i - cross), br(2 * j))?, loc(Local::ViiiH)?),
                (frac(&-q(-i - j - cross) * &rung, br(2 * j))?, loc(Local::UpParallel)?),
            ])?;
            Ok((loc(Local::CrossingPos)?, rhs))
        }
    }
}

pub fn check_closed_relation(rel: Relation, s: &ColorSample, table: &WeightTable) -> Result<RelationReport, RelationError> {
    if !rel.admits(s) {
        return Err(RelationError::Skipped(format!("colors {s:?} make an edge or a denominator vanish")));
    }
    let (lhs, rhs) = closed_sides(rel, s, table)?;
    let equal = lhs == rhs;
    Ok(RelationReport { relation: rel, level: Level::Closed, sample: *s, lhs: Side::Value(lhs), rhs: Side::Value(rhs), equal })
}

/// Orientation of a rung of multiplicity zero between two upward strands
/// colored i (left) and j (right).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroRung {
    /// Rising from the right strand to the left one.
    Leftward,
    /// Rising from the left strand to the right one.
    Rightward,
}

/// The factor a zero rung is replaced by in front of two plain strands.
pub fn zero_multiplicity_value(rung: ZeroRung, i: i64, j: i64) -> Result<LaurentPoly, RelationError> {
    if i == 0 || j == 0 {
        return Err(RelationError::ZeroMultiplicity);
    }
    Ok(match rung {
        ZeroRung::Leftward => br(2 * j),
        ZeroRung::Rightward => br(2 * i),
    })
}

fn rng_for(rel: Relation, seed: u64) -> ChaCha8Rng {
    let salt = (rel as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

/// `n` admissible samples for a relation from a fixed seed. The stream depends
/// only on (relation, seed), so both levels see the same colors.
pub fn samples(rel: Relation, n: usize, seed: u64) -> Vec<ColorSample> {
    let mut rng = rng_for(rel, seed);
    let mut out = Vec::with_capacity(n);
    let mut tries = 0;
    while out.len() < n && tries < 10_000 * n.max(1) {
        tries += 1;
        let mut s = ColorSample::draw(&mut rng);
        rel.specialize(&mut s);
        if rel.admits(&s) {
            out.push(s);
        }
    }
    out
}

/// Runs a relation on `n` checkable samples, drawing replacements for skipped ones.
pub fn run_relation(
    rel: Relation,
    level: Level,
    n: usize,
    seed: u64,
    table: &WeightTable,
) -> Result<Vec<RelationReport>, RelationError> {
    if level == Level::Matrix && !rel.has_matrix_level() {
        return Err(RelationError::NoMatrixLevel(rel.id()));
    }
    let check = |s: &ColorSample| match level {
        Level::Matrix => check_matrix_relation(rel, s, table),
        Level::Closed => check_closed_relation(rel, s, table),
    };
    let mut pool = samples(rel, 4 * n, seed);
    let mut out = Vec::new();
    let mut from = 0;
    while out.len() < n && from < pool.len() {
        let to = (from + n - out.len()).min(pool.len());
        let batch: Vec<Result<RelationReport, RelationError>> = pool[from..to].par_iter().map(check).collect();
        for r in batch {
            match r {
                Ok(rep) => out.push(rep),
                Err(RelationError::Skipped(_)) => {}
                Err(e) => return Err(e),
            }
        }
        from = to;
    }
    pool.clear();
    if out.len() < n {
        return Err(RelationError::Exhausted { relation: rel.id(), wanted: n, found: out.len() });
    }
    Ok(out)
}

/// Table cells read by the matrix-level checks over the given samples.
pub fn used_cells(n: usize, seed: u64, table: &WeightTable) -> Result<BTreeSet<usize>, RelationError> {
    let locals = [
        Local::VSquare,
        Local::VVertical,
        Local::ViiLadder,
        Local::ViiH,
        Local::ViiRung,
        Local::CrossingPos,
        Local::CrossingNeg,
        Local::ViiiH,
        Local::ViiiRungLeft,
        Local::ViiiRungRight,
    ];
    let mut cells = BTreeSet::new();
    for rel in Relation::ALL.into_iter().filter(|r| r.has_matrix_level()) {
        for s in samples(rel, n, seed) {
            for x in locals {
                if let Ok(m) = local_morphism(x, &s, table) {
                    cells.extend(m.cells().iter().copied());
                }
            }
        }
    }
    Ok(cells)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationOutcome {
    pub cell: usize,
    pub key: String,
    /// Matrix-level relations that failed with the mutated cell.
    pub broken: Vec<Relation>,
}

impl MutationOutcome {
    pub fn detected(&self) -> bool {
        !self.broken.is_empty()
    }
}

/// Mutates each cell in turn and reruns the matrix-level relations on it.
pub fn mutation_controls(cells: &[usize], n: usize, seed: u64, table: &WeightTable) -> Vec<MutationOutcome> {
    cells
        .par_iter()
        .map(|&cell| {
            let t = table.mutated(cell);
            let broken = Relation::ALL
                .into_iter()
                .filter(|r| r.has_matrix_level())
                .filter(|&r| match run_relation(r, Level::Matrix, n, seed, &t) {
                    Ok(reps) => reps.iter().any(|x| !x.equal),
                    Err(_) => true,
                })
                .collect();
            MutationOutcome { cell, key: table.cell_key(cell).to_string(), broken }
        })
        .collect()
}

#[cfg(test)]
mod tests;
