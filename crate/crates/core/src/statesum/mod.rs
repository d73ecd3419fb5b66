//! Vertex state sums: transfer-matrix contraction of a cut-open diagram and the
//! simplified planar sum over edge states.

mod planar;

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde_json::{json, Value};

pub use planar::{
    enumerate_planar_states, evaluate_planar, evaluate_planar_with, local_state, planar_sign, solid_curve_count, state_product, EdgeState,
};

use crate::diagram::{resolve, Color, DiagramError, Dir, EdgeDecl, Layout, MorseDiagram, PieceKind, ResolvedSlice};
use crate::laurent::{qnum, AlgebraError, LaurentPoly, RatFn, Var};
use crate::weights::{PieceMatrix, WeightError, WeightTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StateSumError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("internal invariant violated: {0}")]
    Integrity(String),
}

/// Amplitudes over `{dotted, solid}^width`, keyed by bitmask (leftmost strand
/// most significant, solid = 1). Missing keys are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateVector {
    width: usize,
    amps: HashMap<u64, LaurentPoly>,
}

/// Above this support size a transfer step is split across the rayon pool.
const PARALLEL_SUPPORT: usize = 512;

impl StateVector {
    pub fn basis(width: usize, tuple: u64) -> Self {
        assert!(width < 64, "state width {width} too large");
        let mut amps = HashMap::new();
        amps.insert(tuple, LaurentPoly::one(Var::Q));
        StateVector { width, amps }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn support(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitude(&self, tuple: u64) -> LaurentPoly {
        self.amps.get(&tuple).cloned().unwrap_or_else(|| LaurentPoly::zero(Var::Q))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &LaurentPoly)> + '_ {
        self.amps.iter().map(|(k, v)| (*k, v))
    }

    /// Applies `m` to the strands `pos..pos + m.bottom`, leaving the others alone.
    pub fn apply(&mut self, pos: usize, m: &PieceMatrix) {
        assert!(pos + m.bottom <= self.width, "piece does not fit");
        let right = self.width - pos - m.bottom;
        let new_width = self.width - m.bottom + m.top;
        assert!(new_width < 64, "state width {new_width} too large");
        let mut by_col: HashMap<u64, Vec<(u64, &LaurentPoly)>> = HashMap::new();
        for (r, c, v) in m.nonzero() {
            by_col.entry(c).or_default().push((r, v));
        }
        let rmask = (1u64 << right) - 1;
        let mmask = (1u64 << m.bottom) - 1;
        let step = |(&s, a): (&u64, &LaurentPoly), out: &mut HashMap<u64, LaurentPoly>| {
            let lo = s & rmask;
            let mid = (s >> right) & mmask;
            let hi = s >> (right + m.bottom);
            for &(r, v) in by_col.get(&mid).map(Vec::as_slice).unwrap_or(&[]) {
                let t = (hi << (m.top + right)) | (r << right) | lo;
                let e = out.entry(t).or_insert_with(|| LaurentPoly::zero(Var::Q));
                *e = &*e + &(a * v);
            }
        };
        let mut out: HashMap<u64, LaurentPoly> = if self.amps.len() >= PARALLEL_SUPPORT {
            let entries: Vec<(&u64, &LaurentPoly)> = self.amps.iter().collect();
            entries
                .par_chunks(PARALLEL_SUPPORT / 4)
                .map(|chunk| {
                    let mut part = HashMap::new();
                    for &(k, v) in chunk {
                        step((k, v), &mut part);
                    }
                    part
                })
                .reduce(HashMap::new, |mut a, b| {
                    for (k, v) in b {
                        let e = a.entry(k).or_insert_with(|| LaurentPoly::zero(Var::Q));
                        *e = &*e + &v;
                    }
                    a
                })
        } else {
            let mut part = HashMap::new();
            for kv in &self.amps {
                step(kv, &mut part);
            }
            part
        };
        out.retain(|_, v| !v.is_zero());
        self.amps = out;
        self.width = new_width;
    }
}

type Points = Vec<(Dir, Color)>;

fn boundary(edges: &[EdgeDecl], rs: &ResolvedSlice) -> (Points, Points) {
    let f = |ss: &[crate::diagram::Strand]| ss.iter().map(|s| (s.dir, edges[s.edge].color)).collect();
    (f(&rs.bottom), f(&rs.top))
}

/// The matrix of every slice of a layout, in order.
pub fn slice_matrices(
    edges: &[EdgeDecl],
    layout: &Layout,
    table: &WeightTable,
) -> Result<Vec<PieceMatrix>, StateSumError> {
    layout
        .slices
        .iter()
        .map(|rs| {
            let (b, t) = boundary(edges, rs);
            table.piece_matrix(rs.kind, &b, &t).map_err(StateSumError::from)
        })
        .collect()
}

/// Contraction of a whole layout. Returns the final vector and the largest
/// support seen along the way.
pub fn transfer(
    start: StateVector,
    layout: &Layout,
    matrices: &[PieceMatrix],
) -> (StateVector, usize) {
    let mut v = start;
    let mut peak = v.support();
    for (rs, m) in layout.slices.iter().zip(matrices) {
        v.apply(rs.position, m);
        peak = peak.max(v.support());
    }
    (v, peak)
}

/// The matrix of an open tangle, assembled column by column.
pub fn tangle_matrix(edges: &[EdgeDecl], layout: &Layout, table: &WeightTable) -> Result<PieceMatrix, StateSumError> {
    let mats = slice_matrices(edges, layout, table)?;
    let nb = layout.levels[0].len();
    let nt = layout.levels.last().unwrap().len();
    let mut out = PieceMatrix::zero(nb, nt);
    for col in 0..(1u64 << nb) {
        let (v, _) = transfer(StateVector::basis(nb, col), layout, &mats);
        for (row, a) in v.iter() {
            out.set(row, col, a.clone(), None);
        }
    }
    for m in &mats {
        out.note_cells(m.cells().iter().copied());
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Transfer,
    Planar,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Transfer => "transfer",
            Method::Planar => "planar",
        }
    }
}

/// A gl(1|1) value with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlResult {
    pub value: RatFn,
    /// Planar: number of edge states. Transfer: peak support of the state vector.
    pub num_states: usize,
    pub method: Method,
    /// Table cells consulted.
    pub cells: BTreeSet<usize>,
}

impl GlResult {
    pub fn to_json(&self) -> Value {
        json!({
            "invariant": "gl11",
            "value": self.value.json(),
            "num_states": self.num_states,
            "method": self.method.name(),
        })
    }
}

/// Closing arc on the left of the cut strand, as a pair of dotted critical
/// points, together with the direction of its vertical segment.
fn closure_factor(d: &MorseDiagram, table: &WeightTable) -> Result<(LaurentPoly, Dir), StateSumError> {
    let color = d.cut_color();
    let cut = d.cut_direction;
    let seg = cut.flip();
    let dots = |k: PieceKind, b: &[(Dir, Color)], t: &[(Dir, Color)]| -> Result<LaurentPoly, StateSumError> {
        Ok(table.piece_matrix(k, b, t)?.get(0, 0))
    };
    let cup = dots(PieceKind::Min, &[], &[(seg, color), (cut, color)])?;
    let cap = dots(PieceKind::Max, &[(seg, color), (cut, color)], &[])?;
    Ok((&cup * &cap, seg))
}

/// Full vertex state sum with the shipped weight table.
pub fn evaluate_full(d: &MorseDiagram) -> Result<GlResult, StateSumError> {
    evaluate_full_with(d, WeightTable::standard())
}

/// Contracts the cut-open diagram from a dotted bottom strand, reads the dotted
/// top amplitude, closes the cut on the left and applies the normalization
/// `q^((-1)^θ 2j) / {2j}` where θ = 0 iff the closing segment points down.
pub fn evaluate_full_with(d: &MorseDiagram, table: &WeightTable) -> Result<GlResult, StateSumError> {
    let layout = resolve(d)?;
    let mats = slice_matrices(&d.edges, &layout, table)?;
    let (v, peak) = transfer(StateVector::basis(1, 0), &layout, &mats);
    let z = v.amplitude(0);
    let (closure, seg) = closure_factor(d, table)?;
    let j = d.cut_color().multiplicity;
    let theta_sign = if seg == Dir::Down { 1 } else { -1 };
    let num = &(&z * &closure) * &LaurentPoly::power(Var::Q, theta_sign * 2 * j);
    let value = RatFn::new(num, qnum(2 * j, Var::Q))?;
    let mut cells: BTreeSet<usize> = BTreeSet::new();
    for m in &mats {
        cells.extend(m.cells().iter().copied());
    }
    Ok(GlResult { value, num_states: peak, method: Method::Transfer, cells })
}

/// Weight of one edge assignment on a crossingless diagram: the product of the
/// cells each slice sees. Summing over all assignments gives the contraction.
pub fn assignment_weight(d: &MorseDiagram, solid: &[bool], table: &WeightTable) -> Result<LaurentPoly, StateSumError> {
    if d.has_crossings() {
        return Err(StateSumError::Unsupported("strand states are not constant along edges through crossings".into()));
    }
    if solid[d.cut_edge] {
        return Ok(LaurentPoly::zero(Var::Q));
    }
    let layout = resolve(d)?;
    let mut w = LaurentPoly::one(Var::Q);
    for rs in &layout.slices {
        let (b, t) = boundary(&d.edges, rs);
        let m = table.piece_matrix(rs.kind, &b, &t)?;
        let tuple = |ss: &[crate::diagram::Strand]| ss.iter().fold(0u64, |acc, s| (acc << 1) | u64::from(solid[s.edge]));
        w = &w * &m.get(tuple(&rs.top), tuple(&rs.bottom));
        if w.is_zero() {
            break;
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests;
