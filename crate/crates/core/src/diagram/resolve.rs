//! Slice-by-slice walk that fixes strand directions and checks every invariant.

use super::{DiagramError, Dir, EdgeDecl, EdgeId, MorseDiagram, Piece, PieceKind, Slice};

/// A strand between two slices. `segment` identifies the connected run of
/// strand pieces it belongs to inside the diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Strand {
    pub edge: EdgeId,
    pub dir: Dir,
    pub segment: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedSlice {
    pub index: usize,
    pub kind: PieceKind,
    pub position: usize,
    /// Boundary strands of the piece, left to right.
    pub bottom: Vec<Strand>,
    pub top: Vec<Strand>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    /// `levels[0]` is the bottom boundary, `levels[s + 1]` lies above slice `s`.
    pub levels: Vec<Vec<Strand>>,
    pub slices: Vec<ResolvedSlice>,
}

impl Layout {
    pub fn max_width(&self) -> usize {
        self.levels.iter().map(Vec::len).max().unwrap_or(0)
    }
}

pub(crate) fn epsilon(dir: Dir, top: bool) -> i64 {
    // +1 when the edge points away from the vertex.
    if (dir == Dir::Up) == top {
        1
    } else {
        -1
    }
}

/// Finds the unique direction assignment for the unknown boundary points of a
/// vertex that satisfies the multiplicity equation without a source or sink.
/// Points are `(multiplicity, known direction, is_top)`.
pub(crate) fn infer_vertex_dirs(points: &[(i64, Option<Dir>, bool)]) -> Result<Vec<Dir>, String> {
    let unknown: Vec<usize> = (0..points.len()).filter(|&i| points[i].1.is_none()).collect();
    let mut found: Vec<Vec<Dir>> = Vec::new();
    for mask in 0..(1u32 << unknown.len()) {
        let mut dirs: Vec<Dir> = points.iter().map(|p| p.1.unwrap_or(Dir::Up)).collect();
        for (b, &i) in unknown.iter().enumerate() {
            dirs[i] = if mask >> b & 1 == 1 { Dir::Down } else { Dir::Up };
        }
        let eps: Vec<i64> = points.iter().zip(&dirs).map(|(p, d)| epsilon(*d, p.2)).collect();
        if eps.iter().all(|&e| e == eps[0]) {
            continue;
        }
        let flow: i64 = points.iter().zip(&eps).map(|(p, e)| e * p.0).sum();
        if flow == 0 {
            found.push(unknown.iter().map(|&i| dirs[i]).collect());
        }
    }
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        0 => Err(format!(
            "multiplicities {}",
            points.iter().map(|p| p.0.to_string()).collect::<Vec<_>>().join(", ")
        )),
        _ => Err("orientation is ambiguous".into()),
    }
}

/// Checks `Σ ε J = −Π ε` at a vertex given `(weight, dir, is_top)` triples.
pub(crate) fn weight_admissible(points: &[(i64, Dir, bool)]) -> Result<(), String> {
    let eps: Vec<i64> = points.iter().map(|p| epsilon(p.1, p.2)).collect();
    let lhs: i64 = points.iter().zip(&eps).map(|(p, e)| e * p.0).sum();
    let rhs: i64 = -eps.iter().product::<i64>();
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("sum of signed weights is {lhs}, expected {rhs}"))
    }
}

#[derive(Default)]
pub(crate) struct Walker {
    parent: Vec<usize>,
    /// `(edge, vertex is the tail)` per vertex attachment.
    pub(crate) attachments: Vec<(EdgeId, bool)>,
}

impl Walker {
    pub(crate) fn fresh(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    pub(crate) fn step(
        &mut self,
        edges: &[EdgeDecl],
        level: &[Strand],
        index: usize,
        slice: &Slice,
    ) -> Result<(ResolvedSlice, Vec<Strand>), DiagramError> {
        let kind = slice.piece.kind();
        let (nb, _) = kind.arity();
        let pos = slice.position;
        if pos + nb > level.len() || (nb == 0 && pos > level.len()) {
            return Err(DiagramError::Position { slice: index, position: pos, width: level.len(), kind: kind.keyword() });
        }
        let bottom: Vec<Strand> = level[pos..pos + nb].to_vec();
        let name = |id: EdgeId| edges[id].name.clone();
        let color = |id: EdgeId| edges[id].color;
        let expect = |at: usize, s: &Strand, want: EdgeId| -> Result<(), DiagramError> {
            if s.edge == want {
                Ok(())
            } else {
                Err(DiagramError::StrandEdge { slice: index, position: at, expected: name(want), found: name(s.edge) })
            }
        };
        let top: Vec<Strand> = match &slice.piece {
            Piece::Min { edge, horizontal } => {
                let seg = self.fresh();
                let left = match horizontal {
                    super::Horizontal::LeftToRight => Dir::Down,
                    super::Horizontal::RightToLeft => Dir::Up,
                };
                vec![
                    Strand { edge: *edge, dir: left, segment: seg },
                    Strand { edge: *edge, dir: left.flip(), segment: seg },
                ]
            }
            Piece::Max => {
                let (l, r) = (bottom[0], bottom[1]);
                if l.edge != r.edge {
                    return Err(DiagramError::MaxEdges { slice: index, left: name(l.edge), right: name(r.edge) });
                }
                if l.dir == r.dir {
                    return Err(DiagramError::MaxDirection { slice: index, edge: name(l.edge), dir: l.dir });
                }
                self.union(l.segment, r.segment);
                vec![]
            }
            Piece::Crossing(_) => vec![bottom[1], bottom[0]],
            Piece::Twist(_) => vec![bottom[0]],
            Piece::Split { input, left, right } => {
                let b = bottom[0];
                expect(pos, &b, *input)?;
                let (cb, cl, cr) = (color(*input), color(*left), color(*right));
                let dirs = infer_vertex_dirs(&[
                    (cb.multiplicity, Some(b.dir), false),
                    (cl.multiplicity, None, true),
                    (cr.multiplicity, None, true),
                ])
                .map_err(|detail| DiagramError::MultiplicityAdmissibility {
                    slice: index,
                    detail: format!("split {}→{},{}: {detail}", name(*input), name(*left), name(*right)),
                })?;
                self.vertex_checks(index, &[(*input, b.dir, false), (*left, dirs[0], true), (*right, dirs[1], true)], edges)?;
                vec![
                    Strand { edge: *left, dir: dirs[0], segment: self.fresh() },
                    Strand { edge: *right, dir: dirs[1], segment: self.fresh() },
                ]
            }
            Piece::Merge { left, right, output } => {
                let (l, r) = (bottom[0], bottom[1]);
                expect(pos, &l, *left)?;
                expect(pos + 1, &r, *right)?;
                let (cl, cr, co) = (color(*left), color(*right), color(*output));
                let dirs = infer_vertex_dirs(&[
                    (cl.multiplicity, Some(l.dir), false),
                    (cr.multiplicity, Some(r.dir), false),
                    (co.multiplicity, None, true),
                ])
                .map_err(|detail| DiagramError::MultiplicityAdmissibility {
                    slice: index,
                    detail: format!("merge {},{}→{}: {detail}", name(*left), name(*right), name(*output)),
                })?;
                self.vertex_checks(index, &[(*left, l.dir, false), (*right, r.dir, false), (*output, dirs[0], true)], edges)?;
                vec![Strand { edge: *output, dir: dirs[0], segment: self.fresh() }]
            }
        };
        let mut next = level[..pos].to_vec();
        next.extend_from_slice(&top);
        next.extend_from_slice(&level[pos + nb..]);
        Ok((ResolvedSlice { index, kind, position: pos, bottom, top }, next))
    }

    fn vertex_checks(&mut self, index: usize, pts: &[(EdgeId, Dir, bool)], edges: &[EdgeDecl]) -> Result<(), DiagramError> {
        let w: Vec<(i64, Dir, bool)> = pts.iter().map(|(e, d, t)| (edges[*e].color.weight, *d, *t)).collect();
        weight_admissible(&w).map_err(|detail| DiagramError::WeightAdmissibility {
            slice: index,
            detail: format!(
                "{} with weights {}: {detail}",
                pts.iter().map(|p| edges[p.0].name.as_str()).collect::<Vec<_>>().join(","),
                w.iter().map(|p| p.0.to_string()).collect::<Vec<_>>().join(",")
            ),
        })?;
        for (e, d, t) in pts {
            self.attachments.push((*e, epsilon(*d, *t) == 1));
        }
        Ok(())
    }
}

/// Walks an open tangle from the given bottom boundary.
pub fn resolve_tangle(edges: &[EdgeDecl], bottom: &[(EdgeId, Dir)], slices: &[Slice]) -> Result<Layout, DiagramError> {
    let mut w = Walker::default();
    resolve_with(&mut w, edges, bottom, slices)
}

fn resolve_with(w: &mut Walker, edges: &[EdgeDecl], bottom: &[(EdgeId, Dir)], slices: &[Slice]) -> Result<Layout, DiagramError> {
    let first: Vec<Strand> = bottom.iter().map(|&(edge, dir)| Strand { edge, dir, segment: w.fresh() }).collect();
    let mut levels = vec![first];
    let mut out = Vec::with_capacity(slices.len());
    for (i, s) in slices.iter().enumerate() {
        let (rs, next) = w.step(edges, levels.last().unwrap(), i, s)?;
        out.push(rs);
        levels.push(next);
    }
    Ok(Layout { levels, slices: out })
}

/// Validates a cut-open diagram and returns its resolved layout.
pub fn resolve(d: &MorseDiagram) -> Result<Layout, DiagramError> {
    if d.edges.iter().any(|e| e.color.multiplicity == 0) {
        let e = d.edges.iter().find(|e| e.color.multiplicity == 0).unwrap();
        return Err(DiagramError::ZeroMultiplicity { line: 0, name: e.name.clone() });
    }
    let mut w = Walker::default();
    let layout = resolve_with(&mut w, &d.edges, &[(d.cut_edge, d.cut_direction)], &d.slices)?;
    let top = layout.levels.last().unwrap();
    let cut_name = &d.edges[d.cut_edge].name;
    if top.len() != 1 || top[0].edge != d.cut_edge || top[0].dir != d.cut_direction {
        let found = top.iter().map(|s| format!("{}:{}", d.edges[s.edge].name, s.dir)).collect::<Vec<_>>().join(" ");
        return Err(DiagramError::Boundary(format!(
            "top boundary is [{found}], expected [{cut_name}:{}]",
            d.cut_direction
        )));
    }
    w.union(layout.levels[0][0].segment, top[0].segment);

    let mut roots: Vec<Vec<usize>> = vec![Vec::new(); d.edges.len()];
    for level in &layout.levels {
        for s in level {
            let r = w.find(s.segment);
            if !roots[s.edge].contains(&r) {
                roots[s.edge].push(r);
            }
        }
    }
    let mut ends = vec![(0usize, 0usize); d.edges.len()];
    for &(e, tail) in &w.attachments {
        if tail {
            ends[e].0 += 1;
        } else {
            ends[e].1 += 1;
        }
    }
    for (id, e) in d.edges.iter().enumerate() {
        let (tails, heads) = ends[id];
        if roots[id].is_empty() && tails + heads == 0 {
            return Err(DiagramError::UnusedEdge(e.name.clone()));
        }
        if roots[id].len() > 1 {
            return Err(DiagramError::NotAnArc { edge: e.name.clone(), detail: format!("{} disjoint pieces", roots[id].len()) });
        }
        if !matches!((tails, heads), (0, 0) | (1, 1)) {
            return Err(DiagramError::NotAnArc {
                edge: e.name.clone(),
                detail: format!("{tails} tail and {heads} head vertices"),
            });
        }
    }
    Ok(layout)
}

pub fn validate(d: &MorseDiagram) -> Result<(), DiagramError> {
    resolve(d).map(|_| ())
}

#[cfg(test)]
mod tests {
    use super::super::parse_diagram;
    use super::*;

    fn check(text: &str) -> Result<Layout, DiagramError> {
        resolve(&parse_diagram(text).unwrap())
    }

    const HEAD: &str = "morse v1\nedge a 1 1\nedge b 1 1\nedge c 2 1\ncut c up\n";

    #[test]
    fn theta_resolves() {
        let l = check(&format!("{HEAD}slice 0 split c a b\nslice 0 merge a b c\n")).unwrap();
        assert_eq!(l.levels.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 2, 1]);
        assert!(l.levels[1].iter().all(|s| s.dir == Dir::Up));
    }

    #[test]
    fn multiplicity_violation() {
        let t = "morse v1\nedge a 1 1\nedge b 1 1\nedge c 3 1\ncut c up\nslice 0 split c a b\nslice 0 merge a b c\n";
        assert!(matches!(check(t), Err(DiagramError::MultiplicityAdmissibility { slice: 0, .. })));
    }

    #[test]
    fn weight_violation() {
        let t = "morse v1\nedge a 1 1\nedge b 1 2\nedge c 2 1\ncut c up\nslice 0 split c a b\nslice 0 merge a b c\n";
        assert!(matches!(check(t), Err(DiagramError::WeightAdmissibility { slice: 0, .. })));
    }

    #[test]
    fn max_over_different_edges() {
        let t = "morse v1\nedge a 1 1\nedge b 1 1\ncut a up\nslice 1 min b l2r\nslice 0 max\n";
        assert!(matches!(check(t), Err(DiagramError::MaxEdges { slice: 1, .. })));
    }

    #[test]
    fn max_direction_and_boundary() {
        let t = "morse v1\nedge a 1 1\ncut a up\nslice 0 min a r2l\nslice 1 max\n";
        assert!(check(t).is_ok(), "snake");
        let t = "morse v1\nedge a 1 1\ncut a up\nslice 1 min a r2l\nslice 0 max\n";
        assert!(matches!(check(t), Err(DiagramError::MaxDirection { slice: 1, .. })));
        let t = "morse v1\nedge a 1 1\nedge b 1 1\ncut a up\nslice 0 min b l2r\n";
        assert!(matches!(check(t), Err(DiagramError::Boundary(_))));
    }

    #[test]
    fn position_and_strand_errors() {
        let t = format!("{HEAD}slice 1 split c a b\n");
        assert!(matches!(check(&t), Err(DiagramError::Position { slice: 0, .. })));
        let t = format!("{HEAD}slice 0 split a c b\n");
        assert!(matches!(check(&t), Err(DiagramError::StrandEdge { slice: 0, .. })));
    }

    #[test]
    fn unused_and_broken_edges() {
        let t = "morse v1\nedge a 1 1\nedge b 1 1\ncut a up\n";
        assert_eq!(check(t), Err(DiagramError::UnusedEdge("b".into())));
        // Two separate circles sharing one name.
        let t = "morse v1\nedge a 1 1\nedge b 1 1\ncut a up\nslice 1 min b l2r\nslice 1 max\nslice 1 min b l2r\nslice 1 max\n";
        assert!(matches!(check(t), Err(DiagramError::NotAnArc { .. })));
    }
}
