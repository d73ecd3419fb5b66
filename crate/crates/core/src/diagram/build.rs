//! Programmatic construction of diagrams and open tangles.
//!
//! Vertex orientations are inferred as the validator does, and a single missing
//! weight at a vertex is solved from the weight equation, so callers only choose
//! the free parameters.

use super::resolve::{epsilon, infer_vertex_dirs, resolve, Layout, Strand, Walker};
use super::{Color, DiagramError, Dir, EdgeDecl, EdgeId, Horizontal, MorseDiagram, Piece, Sign, Slice};

/// An edge referenced by a builder step. A `None` weight is solved or looked up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewEdge {
    pub name: String,
    pub multiplicity: i64,
    pub weight: Option<i64>,
}

impl NewEdge {
    pub fn new(name: impl Into<String>, multiplicity: i64, weight: i64) -> Self {
        NewEdge { name: name.into(), multiplicity, weight: Some(weight) }
    }

    pub fn auto(name: impl Into<String>, multiplicity: i64) -> Self {
        NewEdge { name: name.into(), multiplicity, weight: None }
    }
}

/// An open diagram with arbitrary bottom and top boundaries.
#[derive(Debug, Clone)]
pub struct Tangle {
    pub edges: Vec<EdgeDecl>,
    pub bottom: Vec<(EdgeId, Dir)>,
    pub slices: Vec<Slice>,
    pub layout: Layout,
}

impl Tangle {
    pub fn top(&self) -> &[Strand] {
        self.layout.levels.last().expect("at least one level")
    }
}

pub struct DiagramBuilder {
    edges: Vec<EdgeDecl>,
    slices: Vec<Slice>,
    levels: Vec<Vec<Strand>>,
    resolved: Vec<super::ResolvedSlice>,
    walker: Walker,
    bottom: Vec<(EdgeId, Dir)>,
}

impl DiagramBuilder {
    /// Starts from the given bottom boundary; every edge needs a weight.
    pub fn open(bottom: &[(NewEdge, Dir)]) -> Result<Self, DiagramError> {
        let mut b = DiagramBuilder {
            edges: Vec::new(),
            slices: Vec::new(),
            levels: Vec::new(),
            resolved: Vec::new(),
            walker: Walker::default(),
            bottom: Vec::new(),
        };
        let mut first = Vec::new();
        for (e, dir) in bottom {
            let id = b.declare(e, None)?;
            b.bottom.push((id, *dir));
            first.push(Strand { edge: id, dir: *dir, segment: b.walker.fresh() });
        }
        b.levels.push(first);
        Ok(b)
    }

    pub fn closed(cut: NewEdge, dir: Dir) -> Result<Self, DiagramError> {
        Self::open(&[(cut, dir)])
    }

    pub fn width(&self) -> usize {
        self.level().len()
    }

    pub fn level(&self) -> &[Strand] {
        self.levels.last().unwrap()
    }

    pub fn edge_decl(&self, id: EdgeId) -> &EdgeDecl {
        &self.edges[id]
    }

    pub fn edge_color(&self, name: &str) -> Option<Color> {
        self.edges.iter().find(|e| e.name == name).map(|e| e.color)
    }

    fn declare(&mut self, e: &NewEdge, solved: Option<i64>) -> Result<EdgeId, DiagramError> {
        let weight = e.weight.or(solved);
        if e.multiplicity == 0 {
            return Err(DiagramError::ZeroMultiplicity { line: 0, name: e.name.clone() });
        }
        if let Some(id) = self.edges.iter().position(|d| d.name == e.name) {
            let have = self.edges[id].color;
            if have.multiplicity != e.multiplicity || weight.is_some_and(|w| w != have.weight) {
                return Err(DiagramError::Unsupported(format!(
                    "edge `{}` redeclared with a different color",
                    e.name
                )));
            }
            return Ok(id);
        }
        let w = weight.ok_or_else(|| DiagramError::Unsupported(format!("edge `{}` needs a weight", e.name)))?;
        self.edges.push(EdgeDecl { name: e.name.clone(), color: Color::new(e.multiplicity, w) });
        Ok(self.edges.len() - 1)
    }

    fn known_weight(&self, e: &NewEdge) -> Option<i64> {
        e.weight.or_else(|| self.edge_color(&e.name).map(|c| c.weight))
    }

    fn push(&mut self, position: usize, piece: Piece) -> Result<(), DiagramError> {
        let slice = Slice { position, piece, line: None };
        let idx = self.slices.len();
        let (rs, next) = self.walker.step(&self.edges, self.levels.last().unwrap(), idx, &slice)?;
        self.slices.push(slice);
        self.resolved.push(rs);
        self.levels.push(next);
        Ok(())
    }

    fn strand_at(&self, pos: usize) -> Result<Strand, DiagramError> {
        self.level().get(pos).copied().ok_or(DiagramError::Position {
            slice: self.slices.len(),
            position: pos,
            width: self.width(),
            kind: "piece",
        })
    }

    pub fn min(&mut self, pos: usize, edge: NewEdge, h: Horizontal) -> Result<&mut Self, DiagramError> {
        let id = self.declare(&edge, None)?;
        self.push(pos, Piece::Min { edge: id, horizontal: h })?;
        Ok(self)
    }

    pub fn max(&mut self, pos: usize) -> Result<&mut Self, DiagramError> {
        self.push(pos, Piece::Max)?;
        Ok(self)
    }

    pub fn crossing(&mut self, pos: usize, sign: Sign) -> Result<&mut Self, DiagramError> {
        self.push(pos, Piece::Crossing(sign))?;
        Ok(self)
    }

    pub fn twist(&mut self, pos: usize, sign: Sign) -> Result<&mut Self, DiagramError> {
        self.push(pos, Piece::Twist(sign))?;
        Ok(self)
    }

    /// Solves the one unknown weight among `(weight, dir, is_top)` points.
    fn solve_weight(pts: &[(Option<i64>, Dir, bool)]) -> Result<Vec<i64>, DiagramError> {
        let eps: Vec<i64> = pts.iter().map(|p| epsilon(p.1, p.2)).collect();
        let target = -eps.iter().product::<i64>();
        let unknown: Vec<usize> = (0..pts.len()).filter(|&i| pts[i].0.is_none()).collect();
        match unknown.as_slice() {
            [] => Ok(pts.iter().map(|p| p.0.unwrap()).collect()),
            [u] => {
                let known: i64 = pts.iter().zip(&eps).filter_map(|(p, e)| p.0.map(|w| w * e)).sum();
                let mut out: Vec<i64> = pts.iter().map(|p| p.0.unwrap_or(0)).collect();
                out[*u] = eps[*u] * (target - known);
                Ok(out)
            }
            _ => Err(DiagramError::Unsupported("more than one unknown weight at a vertex".into())),
        }
    }

    pub fn split(&mut self, pos: usize, left: NewEdge, right: NewEdge) -> Result<&mut Self, DiagramError> {
        let b = self.strand_at(pos)?;
        let cb = self.edges[b.edge].color;
        let dirs = infer_vertex_dirs(&[
            (cb.multiplicity, Some(b.dir), false),
            (left.multiplicity, None, true),
            (right.multiplicity, None, true),
        ])
        .map_err(|detail| DiagramError::MultiplicityAdmissibility { slice: self.slices.len(), detail })?;
        let w = Self::solve_weight(&[
            (Some(cb.weight), b.dir, false),
            (self.known_weight(&left), dirs[0], true),
            (self.known_weight(&right), dirs[1], true),
        ])?;
        let l = self.declare(&left, Some(w[1]))?;
        let r = self.declare(&right, Some(w[2]))?;
        self.push(pos, Piece::Split { input: b.edge, left: l, right: r })?;
        Ok(self)
    }

    pub fn merge(&mut self, pos: usize, output: NewEdge) -> Result<&mut Self, DiagramError> {
        let (l, r) = (self.strand_at(pos)?, self.strand_at(pos + 1)?);
        let (cl, cr) = (self.edges[l.edge].color, self.edges[r.edge].color);
        let dirs = infer_vertex_dirs(&[
            (cl.multiplicity, Some(l.dir), false),
            (cr.multiplicity, Some(r.dir), false),
            (output.multiplicity, None, true),
        ])
        .map_err(|detail| DiagramError::MultiplicityAdmissibility { slice: self.slices.len(), detail })?;
        let w = Self::solve_weight(&[
            (Some(cl.weight), l.dir, false),
            (Some(cr.weight), r.dir, false),
            (self.known_weight(&output), dirs[0], true),
        ])?;
        let o = self.declare(&output, Some(w[2]))?;
        self.push(pos, Piece::Merge { left: l.edge, right: r.edge, output: o })?;
        Ok(self)
    }

    pub fn finish(self) -> Result<MorseDiagram, DiagramError> {
        if self.bottom.len() != 1 {
            return Err(DiagramError::Boundary("a closed diagram starts from one strand".into()));
        }
        let (cut_edge, cut_direction) = self.bottom[0];
        let d = MorseDiagram { edges: self.edges, cut_edge, cut_direction, slices: self.slices };
        resolve(&d)?;
        Ok(d)
    }

    pub fn finish_tangle(self) -> Tangle {
        Tangle {
            edges: self.edges,
            bottom: self.bottom,
            slices: self.slices,
            layout: Layout { levels: self.levels, slices: self.resolved },
        }
    }
}
