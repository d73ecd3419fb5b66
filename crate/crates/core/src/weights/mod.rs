//! Boltzmann weights as data, and the matrices of elementary pieces.
//!
//! Every cell lives in `data/weights.tbl`; this module only parses records,
//! binds color symbols and assembles matrices. Rows of a [`PieceMatrix`] are
//! indexed by the top state tuple and columns by the bottom tuple; the leftmost
//! strand is the most significant bit and `1` is solid.

mod expr;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use serde_json::{json, Value};

pub use expr::{parse_expr, Binding, Expr, ExprError, IExpr};

use crate::diagram::{Color, Dir, Horizontal, PieceKind, Sign, VertexKind};
use crate::laurent::{LaurentPoly, Var};

const STANDARD_TEXT: &str = include_str!("../../data/weights.tbl");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StrandState {
    Dotted,
    Solid,
}

impl StrandState {
    pub fn bit(self) -> u64 {
        match self {
            StrandState::Dotted => 0,
            StrandState::Solid => 1,
        }
    }

    pub fn from_bit(b: u64) -> Self {
        if b & 1 == 1 {
            StrandState::Solid
        } else {
            StrandState::Dotted
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryPoint {
    pub dir: Dir,
    pub color: Color,
    pub state: StrandState,
}

impl BoundaryPoint {
    pub fn new(dir: Dir, color: Color, state: StrandState) -> Self {
        BoundaryPoint { dir, color, state }
    }
}

/// One pictured configuration: a piece with direction, color and state at each
/// boundary point (left to right).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalConfig {
    pub kind: PieceKind,
    pub bottom: Vec<BoundaryPoint>,
    pub top: Vec<BoundaryPoint>,
}

/// Address of one table cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellKey {
    pub kind: String,
    pub orientation: String,
    pub state: String,
}

impl fmt::Display for CellKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}|{}", self.kind, self.orientation, self.state)
    }
}

/// Vertex-local states of the planar tables: everything dotted, or the lone
/// edge solid together with the left or the right edge of the pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexState {
    Dotted,
    Left,
    Right,
}

impl VertexState {
    pub fn key(self) -> &'static str {
        match self {
            VertexState::Dotted => "dotted",
            VertexState::Left => "left",
            VertexState::Right => "right",
        }
    }
}

/// The three per-vertex weight families used by the planar and Fox sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlanarFamily {
    /// Multiplicity-only weights in `q`.
    Wt,
    /// Per-permutation weights in `u`.
    Tilde,
    /// Row-scaled weights in `u`.
    Hat,
}

impl PlanarFamily {
    pub fn kind(self) -> &'static str {
        match self {
            PlanarFamily::Wt => "planar",
            PlanarFamily::Tilde => "tilde",
            PlanarFamily::Hat => "hat",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightError {
    #[error("weight table line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cell {cell}: {err}")]
    Expr { cell: CellKey, err: ExprError },
    #[error("no tabulated weights for `{kind}` with orientation `{orientation}`; outside the certified scope")]
    OutOfScope { kind: String, orientation: String },
    #[error("malformed configuration: {0}")]
    Malformed(String),
    #[error("colors are not admissible: {0}")]
    Inadmissible(String),
    #[error("cannot read weight table: {0}")]
    Io(String),
}

#[derive(Debug, Clone)]
struct Record {
    key: CellKey,
    source: String,
    expr: Expr,
}

/// A parsed weight table. Rows are `(kind, orientation)` pairs; a row that is
/// present answers zero for cells it does not list.
#[derive(Debug, Clone)]
pub struct WeightTable {
    records: Vec<Record>,
    index: BTreeMap<CellKey, usize>,
    rows: BTreeSet<(String, String)>,
}

fn kind_var(kind: &str) -> Option<Var> {
    match kind {
        "min" | "max" | "twpos" | "twneg" | "xpos" | "xneg" | "split" | "merge" | "planar" => Some(Var::Q),
        "tilde" | "hat" => Some(Var::U),
        _ => None,
    }
}

fn dir_key(dirs: impl IntoIterator<Item = Dir>) -> String {
    dirs.into_iter().map(|d| if d == Dir::Up { 'u' } else { 'd' }).collect()
}

fn bits_key(width: usize, tuple: u64) -> String {
    (0..width).map(|p| if tuple >> (width - 1 - p) & 1 == 1 { '1' } else { '0' }).collect()
}

impl WeightTable {
    /// The shipped table.
    pub fn standard() -> &'static WeightTable {
        static T: OnceLock<WeightTable> = OnceLock::new();
        T.get_or_init(|| WeightTable::parse(STANDARD_TEXT).expect("shipped weight table parses"))
    }

    pub fn standard_text() -> &'static str {
        STANDARD_TEXT
    }

    pub fn load(path: &Path) -> Result<Self, WeightError> {
        let text = std::fs::read_to_string(path).map_err(|e| WeightError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, WeightError> {
        let mut t = WeightTable { records: Vec::new(), index: BTreeMap::new(), rows: BTreeSet::new() };
        let mut header = false;
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            if !header {
                if body != "weights v1" {
                    return Err(WeightError::Parse { line, msg: "expected `weights v1` header".into() });
                }
                header = true;
                continue;
            }
            let parts: Vec<&str> = body.split('|').map(str::trim).collect();
            let [kind, orientation, state, source] = parts[..] else {
                return Err(WeightError::Parse { line, msg: "expected kind|orientation|state|expression".into() });
            };
            let key = CellKey { kind: kind.into(), orientation: orientation.into(), state: state.into() };
            t.insert(key, source).map_err(|msg| WeightError::Parse { line, msg })?;
        }
        if !header {
            return Err(WeightError::Parse { line: 1, msg: "empty weight table".into() });
        }
        Ok(t)
    }

    fn insert(&mut self, key: CellKey, source: &str) -> Result<(), String> {
        let var = kind_var(&key.kind).ok_or_else(|| format!("unknown kind `{}`", key.kind))?;
        let expr = parse_expr(source, var).map_err(|e| format!("{key}: {e}"))?;
        if self.index.contains_key(&key) {
            return Err(format!("duplicate cell {key}"));
        }
        self.rows.insert((key.kind.clone(), key.orientation.clone()));
        self.index.insert(key.clone(), self.records.len());
        self.records.push(Record { key, source: source.to_string(), expr });
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn cell_key(&self, id: usize) -> &CellKey {
        &self.records[id].key
    }

    pub fn cell_source(&self, id: usize) -> &str {
        &self.records[id].source
    }

    pub fn cell_id(&self, key: &CellKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Copy with cell `id` replaced by `(E)+x`, the fixed negative-control mutation.
    pub fn mutated(&self, id: usize) -> WeightTable {
        let mut t = self.clone();
        let rec = &mut t.records[id];
        let var = kind_var(&rec.key.kind).unwrap();
        rec.expr = rec.expr.clone().plus_variable(var);
        rec.source = format!("({})+{}", rec.source, var.symbol());
        t
    }

    /// Copy with one cell set to a new expression (adding it if absent).
    pub fn with_cell(&self, key: CellKey, source: &str) -> Result<WeightTable, WeightError> {
        let var = kind_var(&key.kind).ok_or_else(|| WeightError::Malformed(format!("unknown kind `{}`", key.kind)))?;
        let expr = parse_expr(source, var).map_err(|err| WeightError::Expr { cell: key.clone(), err })?;
        let mut t = self.clone();
        match t.index.get(&key) {
            Some(&id) => t.records[id] = Record { key, source: source.into(), expr },
            None => t.insert(key, source).map_err(WeightError::Malformed)?,
        }
        Ok(t)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("weights v1\n");
        for r in &self.records {
            out += &format!("{}|{}|{}|{}\n", r.key.kind, r.key.orientation, r.key.state, r.source);
        }
        out
    }

    /// Value of a cell and the record it came from; `None` means a listed row
    /// without this cell (weight 0).
    pub fn lookup(
        &self,
        kind: &str,
        orientation: &str,
        state: &str,
        binding: &Binding,
    ) -> Result<(LaurentPoly, Option<usize>), WeightError> {
        let var = kind_var(kind).ok_or_else(|| WeightError::Malformed(format!("unknown kind `{kind}`")))?;
        let key = CellKey { kind: kind.into(), orientation: orientation.into(), state: state.into() };
        match self.index.get(&key) {
            Some(&id) => {
                let v = self.records[id].expr.eval(var, binding).map_err(|err| WeightError::Expr { cell: key, err })?;
                Ok((v, Some(id)))
            }
            None if self.rows.contains(&(key.kind.clone(), key.orientation.clone())) => {
                Ok((LaurentPoly::zero(var), None))
            }
            None => Err(WeightError::OutOfScope { kind: key.kind, orientation: key.orientation }),
        }
    }

    pub fn extremum_weight(
        &self,
        kind: PieceKind,
        horizontal: Horizontal,
        state: StrandState,
        color: Color,
    ) -> Result<LaurentPoly, WeightError> {
        // Right to left along a cup: rising left leg; along a cap: falling left leg.
        let (orient, st) = match (kind, horizontal) {
            (PieceKind::Min, Horizontal::RightToLeft) => ("/ud", "/"),
            (PieceKind::Min, Horizontal::LeftToRight) => ("/du", "/"),
            (PieceKind::Max, Horizontal::RightToLeft) => ("du/", ""),
            (PieceKind::Max, Horizontal::LeftToRight) => ("ud/", ""),
            _ => return Err(WeightError::Malformed(format!("`{}` is not a critical point", kind.keyword()))),
        };
        let s = if state == StrandState::Solid { "11" } else { "00" };
        let state_key = if st == "/" { format!("/{s}") } else { format!("{s}/") };
        let b = Binding::new().with('j', color.multiplicity).with('J', color.weight);
        Ok(self.lookup(kind.keyword(), orient, &state_key, &b)?.0)
    }

    pub fn twist_weight(&self, sign: Sign, color: Color) -> Result<LaurentPoly, WeightError> {
        let kind = if sign == Sign::Pos { "twpos" } else { "twneg" };
        let b = Binding::new().with('j', color.multiplicity).with('J', color.weight);
        Ok(self.lookup(kind, "u/u", "0/0", &b)?.0)
    }

    pub fn crossing_weight(&self, sign: Sign, config: &LocalConfig) -> Result<LaurentPoly, WeightError> {
        let want = if sign == Sign::Pos { PieceKind::PosCrossing } else { PieceKind::NegCrossing };
        if config.kind != want {
            return Err(WeightError::Malformed(format!("expected a {} configuration", want.keyword())));
        }
        self.config_weight(config)
    }

    pub fn vertex_weight(&self, config: &LocalConfig) -> Result<LaurentPoly, WeightError> {
        if !config.kind.is_vertex() {
            return Err(WeightError::Malformed(format!("`{}` is not a vertex", config.kind.keyword())));
        }
        self.config_weight(config)
    }

    /// Weight of any configuration; colors at vertices must be admissible.
    pub fn config_weight(&self, c: &LocalConfig) -> Result<LaurentPoly, WeightError> {
        let (nb, nt) = c.kind.arity();
        if c.bottom.len() != nb || c.top.len() != nt {
            return Err(WeightError::Malformed(format!(
                "`{}` takes {nb} bottom and {nt} top points",
                c.kind.keyword()
            )));
        }
        if c.kind == PieceKind::Identity {
            let same = c.bottom[0].state == c.top[0].state;
            return Ok(LaurentPoly::constant(Var::Q, i64::from(same)));
        }
        let bottom: Vec<(Dir, Color)> = c.bottom.iter().map(|p| (p.dir, p.color)).collect();
        let top: Vec<(Dir, Color)> = c.top.iter().map(|p| (p.dir, p.color)).collect();
        let b = binding_for(c.kind, &bottom, &top)?;
        let orient = format!("{}/{}", dir_key(bottom.iter().map(|p| p.0)), dir_key(top.iter().map(|p| p.0)));
        let st = |pts: &[BoundaryPoint]| -> String {
            pts.iter().map(|p| if p.state == StrandState::Solid { '1' } else { '0' }).collect()
        };
        let state = format!("{}/{}", st(&c.bottom), st(&c.top));
        Ok(self.lookup(c.kind.keyword(), &orient, &state, &b)?.0)
    }

    /// Matrix of a piece whose boundary points carry the given directions and colors.
    pub fn piece_matrix(
        &self,
        kind: PieceKind,
        bottom: &[(Dir, Color)],
        top: &[(Dir, Color)],
    ) -> Result<PieceMatrix, WeightError> {
        let (nb, nt) = kind.arity();
        if bottom.len() != nb || top.len() != nt {
            return Err(WeightError::Malformed(format!("`{}` takes {nb} bottom and {nt} top points", kind.keyword())));
        }
        if kind == PieceKind::Identity {
            return Ok(PieceMatrix::identity(1));
        }
        let b = binding_for(kind, bottom, top)?;
        let orient = format!("{}/{}", dir_key(bottom.iter().map(|p| p.0)), dir_key(top.iter().map(|p| p.0)));
        let mut m = PieceMatrix::zero(nb, nt);
        for row in 0..(1u64 << nt) {
            for col in 0..(1u64 << nb) {
                let state = format!("{}/{}", bits_key(nb, col), bits_key(nt, row));
                let (v, cell) = self.lookup(kind.keyword(), &orient, &state, &b)?;
                if !v.is_zero() || cell.is_some() {
                    m.set(row, col, v, cell);
                }
            }
        }
        Ok(m)
    }

    pub fn planar_weight(
        &self,
        family: PlanarFamily,
        kind: VertexKind,
        state: VertexState,
        left: i64,
        right: i64,
    ) -> Result<LaurentPoly, WeightError> {
        let b = Binding::new().with('i', left).with('j', right);
        Ok(self.lookup(family.kind(), kind.name(), state.key(), &b)?.0)
    }
}

/// Symbol binding for one piece. Crossings: `i,I` bottom-left and `j,J`
/// bottom-right. Split: `i` top-left, `j` top-right, `k` bottom. Merge: `i`
/// bottom-left, `j` bottom-right, `k` top. Extrema and twists: `j,J`.
fn binding_for(kind: PieceKind, bottom: &[(Dir, Color)], top: &[(Dir, Color)]) -> Result<Binding, WeightError> {
    let put = |b: Binding, s: char, w: char, c: Color| b.with(s, c.multiplicity).with(w, c.weight);
    Ok(match kind {
        PieceKind::Identity => Binding::new(),
        PieceKind::Min => {
            check_pair(top)?;
            put(Binding::new(), 'j', 'J', top[0].1)
        }
        PieceKind::Max => {
            check_pair(bottom)?;
            put(Binding::new(), 'j', 'J', bottom[0].1)
        }
        PieceKind::PosTwist | PieceKind::NegTwist => {
            if bottom[0] != top[0] {
                return Err(WeightError::Malformed("a twist keeps its strand".into()));
            }
            put(Binding::new(), 'j', 'J', bottom[0].1)
        }
        PieceKind::PosCrossing | PieceKind::NegCrossing => {
            if bottom[0] != top[1] || bottom[1] != top[0] {
                return Err(WeightError::Malformed("crossing strands must keep direction and color".into()));
            }
            put(put(Binding::new(), 'i', 'I', bottom[0].1), 'j', 'J', bottom[1].1)
        }
        PieceKind::Split => {
            admissible(&[(bottom[0], false), (top[0], true), (top[1], true)])?;
            put(put(put(Binding::new(), 'i', 'I', top[0].1), 'j', 'J', top[1].1), 'k', 'K', bottom[0].1)
        }
        PieceKind::Merge => {
            admissible(&[(bottom[0], false), (bottom[1], false), (top[0], true)])?;
            put(put(put(Binding::new(), 'i', 'I', bottom[0].1), 'j', 'J', bottom[1].1), 'k', 'K', top[0].1)
        }
    })
}

fn check_pair(pts: &[(Dir, Color)]) -> Result<(), WeightError> {
    if pts[0].1 != pts[1].1 || pts[0].0 == pts[1].0 {
        return Err(WeightError::Malformed("a cup or cap joins one edge with opposite directions".into()));
    }
    Ok(())
}

fn admissible(pts: &[((Dir, Color), bool)]) -> Result<(), WeightError> {
    let eps: Vec<i64> = pts.iter().map(|((d, _), top)| if (*d == Dir::Up) == *top { 1 } else { -1 }).collect();
    if eps.iter().all(|&e| e == eps[0]) {
        return Err(WeightError::Inadmissible("vertex is a source or a sink".into()));
    }
    let sj: i64 = pts.iter().zip(&eps).map(|(p, e)| e * p.0 .1.multiplicity).sum();
    if sj != 0 {
        return Err(WeightError::Inadmissible(format!("signed multiplicities sum to {sj}")));
    }
    let sw: i64 = pts.iter().zip(&eps).map(|(p, e)| e * p.0 .1.weight).sum();
    let target = -eps.iter().product::<i64>();
    if sw != target {
        return Err(WeightError::Inadmissible(format!("signed weights sum to {sw}, expected {target}")));
    }
    Ok(())
}

/// A matrix between tensor powers of the two-state strand space, remembering
/// which table cells went into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceMatrix {
    pub bottom: usize,
    pub top: usize,
    entries: BTreeMap<(u64, u64), LaurentPoly>,
    cells: BTreeSet<usize>,
}

impl PieceMatrix {
    pub fn zero(bottom: usize, top: usize) -> Self {
        PieceMatrix { bottom, top, entries: BTreeMap::new(), cells: BTreeSet::new() }
    }

    pub fn identity(width: usize) -> Self {
        let mut m = Self::zero(width, width);
        for s in 0..(1u64 << width) {
            m.entries.insert((s, s), LaurentPoly::one(Var::Q));
        }
        m
    }

    /// Square matrix on `width` strands from dense rows.
    pub fn from_rows(width: usize, rows: Vec<Vec<LaurentPoly>>) -> Self {
        let mut m = Self::zero(width, width);
        for (r, row) in rows.into_iter().enumerate() {
            for (c, v) in row.into_iter().enumerate() {
                m.set(r as u64, c as u64, v, None);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        1 << self.top
    }

    pub fn cols(&self) -> usize {
        1 << self.bottom
    }

    pub fn get(&self, row: u64, col: u64) -> LaurentPoly {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(|| LaurentPoly::zero(Var::Q))
    }

    pub fn set(&mut self, row: u64, col: u64, v: LaurentPoly, cell: Option<usize>) {
        self.cells.extend(cell);
        if v.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), v);
        }
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (u64, u64, &LaurentPoly)> + '_ {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    /// Table cells looked up while building this matrix, zero cells included.
    pub fn cells(&self) -> &BTreeSet<usize> {
        &self.cells
    }

    pub fn note_cells(&mut self, cells: impl IntoIterator<Item = usize>) {
        self.cells.extend(cells);
    }

    /// `self` after `below`, i.e. the matrix product `self * below`.
    pub fn compose(&self, below: &PieceMatrix) -> PieceMatrix {
        assert_eq!(self.bottom, below.top, "composing mismatched widths");
        let mut by_col: BTreeMap<u64, Vec<(u64, &LaurentPoly)>> = BTreeMap::new();
        for (&(r, m), v) in &self.entries {
            by_col.entry(m).or_default().push((r, v));
        }
        let mut out = Self::zero(below.bottom, self.top);
        for (&(m, c), bv) in &below.entries {
            for &(r, av) in by_col.get(&m).map(Vec::as_slice).unwrap_or(&[]) {
                let e = out.entries.entry((r, c)).or_insert_with(|| LaurentPoly::zero(Var::Q));
                *e = &*e + &(av * bv);
            }
        }
        out.entries.retain(|_, v| !v.is_zero());
        out.cells = self.cells.union(&below.cells).copied().collect();
        out
    }

    /// `self ⊗ right`, with `self` on the leftmost strands.
    pub fn tensor(&self, right: &PieceMatrix) -> PieceMatrix {
        let mut out = Self::zero(self.bottom + right.bottom, self.top + right.top);
        for (&(r1, c1), v1) in &self.entries {
            for (&(r2, c2), v2) in &right.entries {
                out.entries.insert(((r1 << right.top) | r2, (c1 << right.bottom) | c2), v1 * v2);
            }
        }
        out.cells = self.cells.union(&right.cells).copied().collect();
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> PieceMatrix {
        let mut m = self.clone();
        for v in m.entries.values_mut() {
            *v = &*v * c;
        }
        m.entries.retain(|_, v| !v.is_zero());
        m
    }

    pub fn add(&self, o: &PieceMatrix) -> PieceMatrix {
        assert_eq!((self.bottom, self.top), (o.bottom, o.top), "adding mismatched shapes");
        let mut m = self.clone();
        for (k, v) in &o.entries {
            let e = m.entries.entry(*k).or_insert_with(|| LaurentPoly::zero(Var::Q));
            *e = &*e + v;
        }
        m.entries.retain(|_, v| !v.is_zero());
        m.cells.extend(o.cells.iter().copied());
        m
    }

    pub fn sub(&self, o: &PieceMatrix) -> PieceMatrix {
        self.add(&o.scale(&LaurentPoly::constant(Var::Q, -1)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Equal entries, provenance ignored.
    pub fn same_values(&self, o: &PieceMatrix) -> bool {
        (self.bottom, self.top) == (o.bottom, o.top) && self.entries == o.entries
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.rows() as u64)
            .map(|r| Value::Array((0..self.cols() as u64).map(|c| self.get(r, c).json()).collect()))
            .collect();
        json!({ "bottom": self.bottom, "top": self.top, "rows": rows })
    }
}

impl fmt::Display for PieceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows() as u64 {
            let row: Vec<String> = (0..self.cols() as u64).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn extremum_weight(kind: PieceKind, horizontal: Horizontal, state: StrandState, color: Color) -> Result<LaurentPoly, WeightError> {
    WeightTable::standard().extremum_weight(kind, horizontal, state, color)
}

pub fn twist_weight(sign: Sign, color: Color) -> Result<LaurentPoly, WeightError> {
    WeightTable::standard().twist_weight(sign, color)
}

pub fn crossing_weight(sign: Sign, config: &LocalConfig) -> Result<LaurentPoly, WeightError> {
    WeightTable::standard().crossing_weight(sign, config)
}

pub fn vertex_weight(config: &LocalConfig) -> Result<LaurentPoly, WeightError> {
    WeightTable::standard().vertex_weight(config)
}

pub fn piece_matrix(kind: PieceKind, bottom: &[(Dir, Color)], top: &[(Dir, Color)]) -> Result<PieceMatrix, WeightError> {
    WeightTable::standard().piece_matrix(kind, bottom, top)
}
