//! The planar sum over edge states with multiplicity-only vertex weights.

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{GlResult, Method, StateSumError};
use crate::diagram::{cabled_rotation_sum, contract, ColoredDigraph, EdgeId, MorseDiagram, Vertex};
use crate::laurent::{qnum, LaurentPoly, RatFn, Var};
use crate::weights::{PlanarFamily, VertexState, WeightTable};

/// A map `E -> {0, 1}` (solid = true) with the cut edge dotted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeState {
    pub solid: Vec<bool>,
}

impl EdgeState {
    pub fn is_solid(&self, e: EdgeId) -> bool {
        self.solid[e]
    }

    pub fn solid_edges(&self) -> Vec<EdgeId> {
        (0..self.solid.len()).filter(|&e| self.solid[e]).collect()
    }

    pub fn to_json(&self, g: &ColoredDigraph) -> Value {
        json!({
            "solid": self.solid_edges().iter().map(|&e| g.edges[e].name.clone()).collect::<Vec<_>>(),
        })
    }
}

fn flow_ok(v: &Vertex, s: &[bool]) -> bool {
    let ins: u32 = v.in_edges().iter().map(|&e| u32::from(s[e])).sum();
    let outs: u32 = v.out_edges().iter().map(|&e| u32::from(s[e])).sum();
    ins == outs
}

struct Search<'a> {
    g: &'a ColoredDigraph,
    /// Vertices whose last incident edge (in assignment order) is this edge.
    closes: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn run(&self, at: usize, s: &mut Vec<bool>, stop: usize, out: &mut Vec<Vec<bool>>) {
        if at == stop {
            out.push(s.clone());
            return;
        }
        let choices: &[bool] = if at == self.g.cut_edge { &[false] } else { &[false, true] };
        for &c in choices {
            s[at] = c;
            if self.closes[at].iter().all(|&v| flow_ok(&self.g.vertices[v], s)) {
                self.run(at + 1, s, stop, out);
            }
        }
        s[at] = false;
    }
}

/// All flow-respecting states, in lexicographic order of the edge bits.
pub fn enumerate_planar_states(g: &ColoredDigraph) -> Vec<EdgeState> {
    let n = g.edges.len();
    let mut closes = vec![Vec::new(); n];
    for v in &g.vertices {
        let last = [v.single, v.left, v.right].into_iter().max().unwrap();
        closes[last].push(v.id);
    }
    let search = Search { g, closes };
    // Enumerate short prefixes serially, then finish each one in parallel.
    let split = n.min(6);
    let mut prefixes = Vec::new();
    search.run(0, &mut vec![false; n], split, &mut prefixes);
    let parts: Vec<Vec<Vec<bool>>> = prefixes
        .into_par_iter()
        .map(|mut p| {
            let mut out = Vec::new();
            search.run(split, &mut p, n, &mut out);
            out
        })
        .collect();
    parts.into_iter().flatten().map(|solid| EdgeState { solid }).collect()
}

/// Number of closed curves formed by the solid edges.
pub fn solid_curve_count(s: &EdgeState, g: &ColoredDigraph) -> Result<usize, StateSumError> {
    let mut parent: Vec<usize> = (0..g.edges.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for v in &g.vertices {
        let solid: Vec<EdgeId> = [v.single, v.left, v.right].into_iter().filter(|&e| s.solid[e]).collect();
        match solid.as_slice() {
            [] => {}
            [a, b] => {
                let (ra, rb) = (find(&mut parent, *a), find(&mut parent, *b));
                parent[ra] = rb;
            }
            _ => {
                return Err(StateSumError::Integrity(format!(
                    "vertex {} has {} solid edges; solid edges do not close up",
                    v.id,
                    solid.len()
                )))
            }
        }
    }
    let mut roots: Vec<usize> = s.solid_edges().into_iter().map(|e| find(&mut parent, e)).collect();
    roots.sort_unstable();
    roots.dedup();
    Ok(roots.len())
}

/// `(-1)^(number of solid curves)`.
pub fn planar_sign(s: &EdgeState, g: &ColoredDigraph) -> Result<i64, StateSumError> {
    Ok(if solid_curve_count(s, g)? % 2 == 0 { 1 } else { -1 })
}

/// Which column of the planar tables a vertex is in.
pub fn local_state(v: &Vertex, s: &EdgeState) -> VertexState {
    if !s.solid[v.single] {
        VertexState::Dotted
    } else if s.solid[v.left] {
        VertexState::Left
    } else {
        VertexState::Right
    }
}

/// Product over vertices of one weight family for a state.
pub fn state_product(
    g: &ColoredDigraph,
    s: &EdgeState,
    family: PlanarFamily,
    table: &WeightTable,
) -> Result<LaurentPoly, StateSumError> {
    let var = if family == PlanarFamily::Wt { Var::Q } else { Var::U };
    let mut w = LaurentPoly::one(var);
    for v in &g.vertices {
        let (i, j) = (g.edges[v.left].color.multiplicity, g.edges[v.right].color.multiplicity);
        w = &w * &table.planar_weight(family, v.kind, local_state(v, s), i, j)?;
    }
    Ok(w)
}

pub fn evaluate_planar(d: &MorseDiagram) -> Result<GlResult, StateSumError> {
    evaluate_planar_with(d, WeightTable::standard())
}

/// `q^(2 Rot) / {2j} · Σ_s sign(s) Π_v Wt(v; s)`.
pub fn evaluate_planar_with(d: &MorseDiagram, table: &WeightTable) -> Result<GlResult, StateSumError> {
    if d.has_crossings() || d.has_twists() {
        return Err(StateSumError::Unsupported("the planar sum needs a crossingless, twistless diagram".into()));
    }
    if let Some(e) = d.edges.iter().find(|e| e.color.multiplicity <= 0) {
        return Err(StateSumError::Unsupported(format!("edge `{}` has nonpositive multiplicity", e.name)));
    }
    let g = contract(d)?;
    let states = enumerate_planar_states(&g);
    let terms: Vec<LaurentPoly> = states
        .par_iter()
        .map(|s| -> Result<LaurentPoly, StateSumError> {
            let w = state_product(&g, s, PlanarFamily::Wt, table)?;
            Ok(if planar_sign(s, &g)? < 0 { -w } else { w })
        })
        .collect::<Result<_, _>>()?;
    let sum = terms.iter().fold(LaurentPoly::zero(Var::Q), |a, b| &a + b);
    let rot = cabled_rotation_sum(d)?;
    let j = d.cut_color().multiplicity;
    let value = RatFn::new(&sum * &LaurentPoly::power(Var::Q, 2 * rot), qnum(2 * j, Var::Q))?;
    Ok(GlResult { value, num_states: states.len(), method: Method::Planar, cells: Default::default() })
}
