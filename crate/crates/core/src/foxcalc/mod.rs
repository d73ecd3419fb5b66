//! The Alexander polynomial of a colored planar graph from its Fox matrix, and
//! the Heegaard-state bookkeeping that ties it to the planar state sum.
//!
//! Work is in `Z[u, u^-1]` with `u = t^(1/2)`, so half-integer powers of `t`
//! stay integral.

mod det;

use std::collections::HashMap;

use serde_json::{json, Value};

pub use det::determinant;

use crate::diagram::{contract, ColoredDigraph, DiagramError, MorseDiagram, VertexKind};
use crate::laurent::{normalize_unit, qnum, specialize_t_to_q, AlgebraError, LaurentPoly, RatFn, UnitNormalForm, Var};
use crate::statesum::{
    enumerate_planar_states, evaluate_full_with, planar_sign, solid_curve_count, state_product, EdgeState, StateSumError,
};
use crate::weights::{PlanarFamily, WeightError, WeightTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FoxError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    StateSum(#[from] StateSumError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("internal invariant violated: {0}")]
    Integrity(String),
}

/// Rows and columns are indexed by vertex id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoxMatrix {
    pub rows: Vec<Vec<LaurentPoly>>,
}

impl FoxMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.rows[r][c]
    }

    pub fn determinant(&self) -> Result<LaurentPoly, FoxError> {
        Ok(determinant(&self.rows, Var::U)?)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "variable": "u = t^(1/2)",
            "vertices": (0..self.size()).collect::<Vec<_>>(),
            "rows": self.rows.iter().map(|r| r.iter().map(|e| e.json()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

fn check_supported(g: &ColoredDigraph) -> Result<(), FoxError> {
    for e in &g.edges {
        if e.color.multiplicity <= 0 {
            return Err(FoxError::Unsupported(format!("edge `{}` has nonpositive multiplicity", e.name)));
        }
        if e.color.weight != 1 {
            return Err(FoxError::Unsupported(format!(
                "edge `{}` has weight {}; the Alexander side is defined for weight 1",
                e.name, e.color.weight
            )));
        }
    }
    Ok(())
}

fn head_of(g: &ColoredDigraph, e: usize) -> Result<usize, FoxError> {
    g.edges[e].head.ok_or_else(|| FoxError::Integrity(format!("edge `{}` has no head", g.edges[e].name)))
}

/// Row-scaled Fox derivatives with the cut edge's generator deleted.
///
/// An even vertex with out-color `c` has `{c}` on the diagonal and `-{c}` at the
/// head of its out-edge. An odd vertex splitting `c = i + j` into a left edge of
/// color `i` and a right edge of color `j` has `{c}` on the diagonal,
/// `-u^j {i}` at the head of the left edge and `-u^-i {j}` at the head of the
/// right edge. Here `{k} = u^k - u^-k`.
pub fn fox_matrix(g: &ColoredDigraph) -> Result<FoxMatrix, FoxError> {
    check_supported(g)?;
    let n = g.vertices.len();
    let mut rows = vec![vec![LaurentPoly::zero(Var::U); n]; n];
    let mut add = |r: usize, c: usize, p: LaurentPoly| rows[r][c] = &rows[r][c] + &p;
    for v in &g.vertices {
        let c = g.vertex_color(v.id);
        add(v.id, v.id, qnum(c, Var::U));
        let off: Vec<(usize, LaurentPoly)> = match v.kind {
            VertexKind::Even => vec![(v.single, -qnum(c, Var::U))],
            VertexKind::Odd => {
                let i = g.edges[v.left].color.multiplicity;
                let j = g.edges[v.right].color.multiplicity;
                vec![
                    (v.left, -(&LaurentPoly::power(Var::U, j) * &qnum(i, Var::U))),
                    (v.right, -(&LaurentPoly::power(Var::U, -i) * &qnum(j, Var::U))),
                ]
            }
        };
        for (e, p) in off {
            if e != g.cut_edge {
                add(v.id, head_of(g, e)?, p);
            }
        }
    }
    Ok(FoxMatrix { rows })
}

/// `Δ` together with the determinant it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alexander {
    pub determinant: LaurentPoly,
    pub delta: LaurentPoly,
    pub normal: UnitNormalForm,
}

impl Alexander {
    pub fn to_json(&self) -> Value {
        json!({
            "invariant": "alexander",
            "variable": "u = t^(1/2)",
            "determinant": self.determinant.json(),
            "delta": self.delta.json(),
            "normal_form": self.normal.normal.json(),
            "unit": self.normal.unit_string(),
        })
    }
}

/// `Δ = det M / ((u^j - u^-j)(u - u^-1)^(|V|-1))` with `j` the cut color.
pub fn alexander_via_fox(g: &ColoredDigraph) -> Result<Alexander, FoxError> {
    if g.vertices.len() < 2 {
        return Err(FoxError::Unsupported("the Alexander polynomial needs at least two vertices".into()));
    }
    let m = fox_matrix(g)?;
    let det = m.determinant()?;
    let den = &qnum(g.cut_color().multiplicity, Var::U) * &qnum(1, Var::U).pow(g.vertices.len() as u32 - 1);
    let delta = det
        .try_div_exact(&den)
        .map_err(|_| FoxError::Integrity(format!("det M = {det} is not divisible by {den}")))?;
    let normal = normalize_unit(&delta)?;
    Ok(Alexander { determinant: det, delta, normal })
}

pub fn alexander_of_diagram(d: &MorseDiagram) -> Result<Alexander, FoxError> {
    alexander_via_fox(&contract(d)?)
}

/// A planar state read as a bijection of vertices: each vertex goes to the
/// head of its solid out-edge, or to itself when no out-edge is solid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeegaardState {
    pub state: EdgeState,
    pub sigma: Vec<usize>,
    pub solid_curves: usize,
}

impl HeegaardState {
    pub fn from_state(g: &ColoredDigraph, state: EdgeState) -> Result<Self, FoxError> {
        let mut sigma = Vec::with_capacity(g.vertices.len());
        for v in &g.vertices {
            let solid: Vec<usize> = v.out_edges().into_iter().filter(|&e| state.solid[e]).collect();
            sigma.push(match solid.as_slice() {
                [] => v.id,
                [e] => head_of(g, *e)?,
                _ => return Err(FoxError::Integrity(format!("vertex {} has two solid out-edges", v.id))),
            });
        }
        let mut seen = vec![false; sigma.len()];
        for &s in &sigma {
            if std::mem::replace(&mut seen[s], true) {
                return Err(FoxError::Integrity(format!("state does not give a bijection: {sigma:?}")));
            }
        }
        let solid_curves = solid_curve_count(&state, g)?;
        Ok(HeegaardState { state, sigma, solid_curves })
    }

    pub fn permutation_sign(&self) -> i64 {
        permutation_sign(&self.sigma)
    }

    /// `Π_v (-1)^(δ(v, σ(v)) + 1)`.
    pub fn kronecker_sign(&self) -> i64 {
        let moved = self.sigma.iter().enumerate().filter(|(v, s)| v != *s).count();
        if moved % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// The sign bookkeeping identity: `sign(σ) · Π(-1)^(δ+1) = (-1)^(#solid curves)`.
    pub fn sign_identity_holds(&self) -> bool {
        let curves = if self.solid_curves.is_multiple_of(2) { 1 } else { -1 };
        self.permutation_sign() * self.kronecker_sign() == curves
    }

    pub fn to_json(&self, g: &ColoredDigraph) -> Value {
        json!({
            "solid": self.state.to_json(g)["solid"],
            "sigma": self.sigma,
            "solid_curves": self.solid_curves,
            "sign": if self.solid_curves.is_multiple_of(2) { 1 } else { -1 },
        })
    }
}

pub fn permutation_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for s in 0..p.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

pub fn heegaard_states(g: &ColoredDigraph) -> Result<Vec<HeegaardState>, FoxError> {
    enumerate_planar_states(g).into_iter().map(|s| HeegaardState::from_state(g, s)).collect()
}

/// `Σ_s sign(s) Π_v hat(v; s)`.
pub fn hat_state_sum(g: &ColoredDigraph, table: &WeightTable) -> Result<LaurentPoly, FoxError> {
    check_supported(g)?;
    let mut sum = LaurentPoly::zero(Var::U);
    for s in enumerate_planar_states(g) {
        let w = state_product(g, &s, PlanarFamily::Hat, table)?;
        sum = if planar_sign(&s, g)? < 0 { &sum - &w } else { &sum + &w };
    }
    Ok(sum)
}

/// The tilde and hat products of one state; they agree state by state.
pub fn tilde_hat_per_state(
    g: &ColoredDigraph,
    s: &EdgeState,
    table: &WeightTable,
) -> Result<(LaurentPoly, LaurentPoly), FoxError> {
    Ok((state_product(g, s, PlanarFamily::Tilde, table)?, state_product(g, s, PlanarFamily::Hat, table)?))
}

/// One permutation's term of the determinant against its states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationTerm {
    pub sigma: Vec<usize>,
    /// `Π_v M[v][σ(v)]`.
    pub matrix_product: LaurentPoly,
    /// `Σ_{s: σ_s = σ} Π_v (-1)^(δ+1) tilde(v; s)`.
    pub state_sum: LaurentPoly,
}

impl PermutationTerm {
    pub fn agrees(&self) -> bool {
        self.matrix_product == self.state_sum
    }
}

/// Expands the determinant permutation by permutation (only those with every
/// factor nonzero) and pairs each with the states inducing it.
pub fn permutation_terms(g: &ColoredDigraph, table: &WeightTable) -> Result<Vec<PermutationTerm>, FoxError> {
    let n = g.vertices.len();
    if n > 10 {
        return Err(FoxError::Unsupported(format!("{n} vertices is too many to expand the determinant")));
    }
    let m = fox_matrix(g)?;
    let mut by_sigma: HashMap<Vec<usize>, LaurentPoly> = HashMap::new();
    for h in heegaard_states(g)? {
        let w = state_product(g, &h.state, PlanarFamily::Tilde, table)?;
        let w = if h.kronecker_sign() < 0 { -w } else { w };
        let slot = by_sigma.entry(h.sigma).or_insert_with(|| LaurentPoly::zero(Var::U));
        *slot = &*slot + &w;
    }
    let mut out = Vec::new();
    let mut sigma = Vec::with_capacity(n);
    let mut used = vec![false; n];
    expand(&m, &mut sigma, &mut used, LaurentPoly::one(Var::U), &mut |sigma, p| {
        let state_sum = by_sigma.remove(sigma).unwrap_or_else(|| LaurentPoly::zero(Var::U));
        out.push(PermutationTerm { sigma: sigma.to_vec(), matrix_product: p, state_sum });
    });
    // States whose permutation has a zero matrix term.
    for (sigma, state_sum) in by_sigma {
        out.push(PermutationTerm { sigma, matrix_product: LaurentPoly::zero(Var::U), state_sum });
    }
    Ok(out)
}

fn expand(
    m: &FoxMatrix,
    sigma: &mut Vec<usize>,
    used: &mut [bool],
    acc: LaurentPoly,
    emit: &mut dyn FnMut(&[usize], LaurentPoly),
) {
    let r = sigma.len();
    if r == m.size() {
        emit(sigma, acc);
        return;
    }
    for c in 0..m.size() {
        if used[c] || m.get(r, c).is_zero() {
            continue;
        }
        used[c] = true;
        sigma.push(c);
        expand(m, sigma, used, &acc * m.get(r, c), emit);
        sigma.pop();
        used[c] = false;
    }
}

/// `Π_{v even} {2c(v)}_q`.
pub fn even_product(g: &ColoredDigraph) -> LaurentPoly {
    g.vertices
        .iter()
        .filter(|v| v.kind == VertexKind::Even)
        .fold(LaurentPoly::one(Var::Q), |a, v| &a * &qnum(2 * v.color, Var::Q))
}

/// Per state: the hat product at `u = q^-2` against `Π_even {2c(v)} · Π Wt`.
pub fn specialized_state_pair(
    g: &ColoredDigraph,
    s: &EdgeState,
    table: &WeightTable,
) -> Result<(LaurentPoly, LaurentPoly), FoxError> {
    let hat = specialize_t_to_q(&state_product(g, s, PlanarFamily::Hat, table)?)?;
    let wt = &even_product(g) * &state_product(g, s, PlanarFamily::Wt, table)?;
    Ok((hat, wt))
}

/// Both sides of the comparison between the specialized Alexander polynomial
/// and the gl(1|1) invariant, each reduced to unit normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub alexander: Alexander,
    pub gl11: RatFn,
    /// `Δ(u = q^-2)`.
    pub lhs: UnitNormalForm,
    /// `Π_even {2c(v)} · gl11 / (q^2 - q^-2)^(|V|-1)`.
    pub rhs: UnitNormalForm,
    pub equal: bool,
    /// `lhs = ratio_sign · q^ratio_exponent · rhs` when equal.
    pub ratio_sign: i8,
    pub ratio_exponent: i64,
}

impl Comparison {
    pub fn verdict(&self) -> String {
        if self.equal {
            let sign = if self.ratio_sign < 0 { "-" } else { "+" };
            format!("EQUAL up to unit ({sign}, q^{})", self.ratio_exponent)
        } else {
            "DIFFERENT".to_string()
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "invariant": "compare",
            "alexander": self.alexander.normal.normal.json(),
            "gl11": self.gl11.json(),
            "lhs": self.lhs.normal.json(),
            "rhs": self.rhs.normal.json(),
            "equal": self.equal,
            "unit": { "sign": self.ratio_sign, "exponent": self.ratio_exponent },
            "verdict": self.verdict(),
        })
    }
}

pub fn compare_with_gl11(d: &MorseDiagram) -> Result<Comparison, FoxError> {
    compare_with_gl11_with(d, WeightTable::standard())
}

pub fn compare_with_gl11_with(d: &MorseDiagram, table: &WeightTable) -> Result<Comparison, FoxError> {
    if d.has_crossings() || d.has_twists() {
        return Err(FoxError::Unsupported("the comparison needs a planar (crossingless, twistless) diagram".into()));
    }
    let g = contract(d)?;
    check_supported(&g)?;
    let alexander = alexander_via_fox(&g)?;
    let gl11 = evaluate_full_with(d, table)?.value;
    let den = qnum(2, Var::Q).pow(g.vertices.len() as u32 - 1);
    let rhs = RatFn::from_poly(even_product(&g)).mul(&gl11)?.div(&RatFn::from_poly(den))?;
    let rhs = rhs
        .to_laurent()
        .ok_or_else(|| FoxError::Integrity(format!("Π{{2c}} · gl11 / (q^2 - q^-2)^(|V|-1) = {rhs} is not a Laurent polynomial")))?;
    let lhs = normalize_unit(&specialize_t_to_q(&alexander.delta)?)?;
    let rhs = normalize_unit(&rhs)?;
    let equal = lhs.normal == rhs.normal;
    Ok(Comparison {
        ratio_sign: lhs.unit_sign * rhs.unit_sign,
        ratio_exponent: lhs.unit_exponent - rhs.unit_exponent,
        alexander,
        gl11,
        lhs,
        rhs,
        equal,
    })
}

#[cfg(test)]
mod tests;
