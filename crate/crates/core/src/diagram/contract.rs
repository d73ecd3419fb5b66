//! Recovering the abstract colored digraph from a diagram.

use serde_json::{json, Value};

use super::resolve::{epsilon, resolve};
use super::{Color, DiagramError, EdgeId, MorseDiagram, PieceKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    /// One edge in, two out.
    Odd,
    /// Two edges in, one out.
    Even,
}

impl VertexKind {
    pub fn name(self) -> &'static str {
        match self {
            VertexKind::Odd => "odd",
            VertexKind::Even => "even",
        }
    }
}

/// A trivalent vertex. `single` is the lone in-edge of an odd vertex or the lone
/// out-edge of an even one; `left`/`right` are the other two as seen by an
/// observer travelling along the pair's common direction in the plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: usize,
    pub kind: VertexKind,
    /// Sum of multiplicities of out-edges.
    pub color: i64,
    pub slice: usize,
    pub single: EdgeId,
    pub left: EdgeId,
    pub right: EdgeId,
}

impl Vertex {
    pub fn out_edges(&self) -> Vec<EdgeId> {
        match self.kind {
            VertexKind::Odd => vec![self.left, self.right],
            VertexKind::Even => vec![self.single],
        }
    }

    pub fn in_edges(&self) -> Vec<EdgeId> {
        match self.kind {
            VertexKind::Odd => vec![self.single],
            VertexKind::Even => vec![self.left, self.right],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigraphEdge {
    pub id: EdgeId,
    pub name: String,
    pub color: Color,
    pub tail: Option<usize>,
    pub head: Option<usize>,
    pub is_cut: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredDigraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<DigraphEdge>,
    pub cut_edge: EdgeId,
}

impl ColoredDigraph {
    pub fn cut_color(&self) -> Color {
        self.edges[self.cut_edge].color
    }

    pub fn vertex_color(&self, v: usize) -> i64 {
        self.vertices[v].color
    }

    /// Connected as an abstract graph (a lone circle counts as connected).
    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return self.edges.len() == 1;
        }
        if self.edges.iter().any(|e| e.tail.is_none()) {
            return false;
        }
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                let (a, b) = (e.tail.unwrap(), e.head.unwrap());
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vertices": self.vertices.iter().map(|v| json!({
                "id": v.id,
                "type": v.kind.name(),
                "color": v.color,
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!({
                "id": e.id,
                "name": e.name,
                "tail": e.tail,
                "head": e.head,
                "j": e.color.multiplicity,
                "J": e.color.weight,
                "is_cut": e.is_cut,
            })).collect::<Vec<_>>(),
        })
    }
}

/// One vertex per vertex piece (in slice order), one edge per declared edge.
pub fn contract(d: &MorseDiagram) -> Result<ColoredDigraph, DiagramError> {
    let layout = resolve(d)?;
    let mut edges: Vec<DigraphEdge> = d
        .edges
        .iter()
        .enumerate()
        .map(|(id, e)| DigraphEdge {
            id,
            name: e.name.clone(),
            color: e.color,
            tail: None,
            head: None,
            is_cut: id == d.cut_edge,
        })
        .collect();
    let mut vertices = Vec::new();
    for rs in layout.slices.iter().filter(|s| s.kind.is_vertex()) {
        // Clockwise around the vertex: tops left to right, then bottoms right to left.
        let ring: Vec<(EdgeId, i64)> = match rs.kind {
            PieceKind::Split => vec![
                (rs.top[0].edge, epsilon(rs.top[0].dir, true)),
                (rs.top[1].edge, epsilon(rs.top[1].dir, true)),
                (rs.bottom[0].edge, epsilon(rs.bottom[0].dir, false)),
            ],
            _ => vec![
                (rs.top[0].edge, epsilon(rs.top[0].dir, true)),
                (rs.bottom[1].edge, epsilon(rs.bottom[1].dir, false)),
                (rs.bottom[0].edge, epsilon(rs.bottom[0].dir, false)),
            ],
        };
        let outs = ring.iter().filter(|p| p.1 == 1).count();
        let kind = if outs == 2 { VertexKind::Odd } else { VertexKind::Even };
        let lone = if outs == 2 { -1 } else { 1 };
        let s = ring.iter().position(|p| p.1 == lone).expect("trivalent vertex");
        let (succ, pred) = (ring[(s + 1) % 3].0, ring[(s + 2) % 3].0);
        let (left, right) = match kind {
            VertexKind::Odd => (succ, pred),
            VertexKind::Even => (pred, succ),
        };
        let id = vertices.len();
        let color: i64 = ring.iter().filter(|p| p.1 == 1).map(|p| d.edges[p.0].color.multiplicity).sum();
        for &(e, eps) in &ring {
            if eps == 1 {
                edges[e].tail = Some(id);
            } else {
                edges[e].head = Some(id);
            }
        }
        vertices.push(Vertex { id, kind, color, slice: rs.index, single: ring[s].0, left, right });
    }
    Ok(ColoredDigraph { vertices, edges, cut_edge: d.cut_edge })
}
