//! Colored framed trivalent graph diagrams in Morse position.
//!
//! A [`MorseDiagram`] is the cut-open form of a closed diagram: one strand enters
//! at the bottom, one leaves at the top, both on the cut edge. Everything else is
//! derived: [`resolve`] walks the slices and fixes every strand direction,
//! [`contract`] recovers the abstract digraph, and [`cable`] traces rotation data.

mod build;
pub mod cable;
mod contract;
mod parse;
mod resolve;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use build::{DiagramBuilder, NewEdge, Tangle};
pub use cable::{cabled_rotation_sum, rotation_numbers, TracedCurve};
pub use contract::{contract, ColoredDigraph, DigraphEdge, Vertex, VertexKind};
pub use parse::parse_diagram;
pub use resolve::{resolve, resolve_tangle, validate, Layout, ResolvedSlice, Strand};

pub type EdgeId = usize;

/// Multiplicity `j` (nonzero) and weight `J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Color {
    pub multiplicity: i64,
    pub weight: i64,
}

impl Color {
    pub const fn new(multiplicity: i64, weight: i64) -> Self {
        Color { multiplicity, weight }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.multiplicity, self.weight)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    Up,
    Down,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Up => Dir::Down,
            Dir::Down => Dir::Up,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Dir::Up => 'u',
            Dir::Down => 'd',
        }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dir::Up => "up",
            Dir::Down => "down",
        })
    }
}

/// Horizontal travel direction at a critical point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Horizontal {
    LeftToRight,
    RightToLeft,
}

impl Horizontal {
    pub fn keyword(self) -> &'static str {
        match self {
            Horizontal::LeftToRight => "l2r",
            Horizontal::RightToLeft => "r2l",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

/// Elementary piece kinds with their (bottom, top) arities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PieceKind {
    Identity,
    Min,
    Max,
    PosCrossing,
    NegCrossing,
    PosTwist,
    NegTwist,
    Split,
    Merge,
}

impl PieceKind {
    pub fn arity(self) -> (usize, usize) {
        match self {
            PieceKind::Identity | PieceKind::PosTwist | PieceKind::NegTwist => (1, 1),
            PieceKind::Min => (0, 2),
            PieceKind::Max => (2, 0),
            PieceKind::PosCrossing | PieceKind::NegCrossing => (2, 2),
            PieceKind::Split => (1, 2),
            PieceKind::Merge => (2, 1),
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            PieceKind::Identity => "id",
            PieceKind::Min => "min",
            PieceKind::Max => "max",
            PieceKind::PosCrossing => "xpos",
            PieceKind::NegCrossing => "xneg",
            PieceKind::PosTwist => "twpos",
            PieceKind::NegTwist => "twneg",
            PieceKind::Split => "split",
            PieceKind::Merge => "merge",
        }
    }

    pub fn is_vertex(self) -> bool {
        matches!(self, PieceKind::Split | PieceKind::Merge)
    }

    pub fn is_crossing(self) -> bool {
        matches!(self, PieceKind::PosCrossing | PieceKind::NegCrossing)
    }

    pub fn is_twist(self) -> bool {
        matches!(self, PieceKind::PosTwist | PieceKind::NegTwist)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Piece {
    Min { edge: EdgeId, horizontal: Horizontal },
    Max,
    Crossing(Sign),
    Twist(Sign),
    Split { input: EdgeId, left: EdgeId, right: EdgeId },
    Merge { left: EdgeId, right: EdgeId, output: EdgeId },
}

impl Piece {
    pub fn kind(&self) -> PieceKind {
        match self {
            Piece::Min { .. } => PieceKind::Min,
            Piece::Max => PieceKind::Max,
            Piece::Crossing(Sign::Pos) => PieceKind::PosCrossing,
            Piece::Crossing(Sign::Neg) => PieceKind::NegCrossing,
            Piece::Twist(Sign::Pos) => PieceKind::PosTwist,
            Piece::Twist(Sign::Neg) => PieceKind::NegTwist,
            Piece::Split { .. } => PieceKind::Split,
            Piece::Merge { .. } => PieceKind::Merge,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slice {
    pub position: usize,
    pub piece: Piece,
    /// Source line, when parsed from text.
    pub line: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeDecl {
    pub name: String,
    pub color: Color,
}

/// A cut-open diagram, bottom slice first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseDiagram {
    pub edges: Vec<EdgeDecl>,
    pub cut_edge: EdgeId,
    pub cut_direction: Dir,
    pub slices: Vec<Slice>,
}

impl MorseDiagram {
    pub fn edge(&self, id: EdgeId) -> &EdgeDecl {
        &self.edges[id]
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn cut_color(&self) -> Color {
        self.edges[self.cut_edge].color
    }

    pub fn has_crossings(&self) -> bool {
        self.slices.iter().any(|s| matches!(s.piece, Piece::Crossing(_)))
    }

    pub fn has_twists(&self) -> bool {
        self.slices.iter().any(|s| matches!(s.piece, Piece::Twist(_)))
    }

    /// Serializes back to `morse v1` text.
    pub fn to_text(&self) -> String {
        let mut out = String::from("morse v1\n");
        for e in &self.edges {
            out += &format!("edge {} {} {}\n", e.name, e.color.multiplicity, e.color.weight);
        }
        out += &format!("cut {} {}\n", self.edges[self.cut_edge].name, self.cut_direction);
        let name = |id: EdgeId| self.edges[id].name.as_str();
        for s in &self.slices {
            let body = match &s.piece {
                Piece::Min { edge, horizontal } => format!("min {} {}", name(*edge), horizontal.keyword()),
                Piece::Max => "max".into(),
                Piece::Crossing(Sign::Pos) => "xpos".into(),
                Piece::Crossing(Sign::Neg) => "xneg".into(),
                Piece::Twist(Sign::Pos) => "twpos".into(),
                Piece::Twist(Sign::Neg) => "twneg".into(),
                Piece::Split { input, left, right } => {
                    format!("split {} {} {}", name(*input), name(*left), name(*right))
                }
                Piece::Merge { left, right, output } => {
                    format!("merge {} {} {}", name(*left), name(*right), name(*output))
                }
            };
            out += &format!("slice {} {}\n", s.position, body);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("missing `morse v1` header")]
    MissingHeader,
    #[error("line {line}: unknown edge `{name}`")]
    UnknownEdge { line: usize, name: String },
    #[error("line {line}: edge `{name}` declared twice")]
    DuplicateEdge { line: usize, name: String },
    #[error("line {line}: edge `{name}` has multiplicity 0")]
    ZeroMultiplicity { line: usize, name: String },
    #[error("line {line}: second `cut` declaration")]
    DuplicateCut { line: usize },
    #[error("no `cut` declaration")]
    MissingCut,
    #[error("slice {slice}: position {position} out of range for a {kind} on {width} strands")]
    Position { slice: usize, position: usize, width: usize, kind: &'static str },
    #[error("slice {slice}: strand {position} carries edge `{found}`, expected `{expected}`")]
    StrandEdge { slice: usize, position: usize, expected: String, found: String },
    #[error("slice {slice}: max joins strands of different edges `{left}` and `{right}`")]
    MaxEdges { slice: usize, left: String, right: String },
    #[error("slice {slice}: max joins two `{edge}` strands with equal direction {dir}")]
    MaxDirection { slice: usize, edge: String, dir: Dir },
    #[error("slice {slice}: no orientation satisfies multiplicity admissibility ({detail})")]
    MultiplicityAdmissibility { slice: usize, detail: String },
    #[error("slice {slice}: weight admissibility fails ({detail})")]
    WeightAdmissibility { slice: usize, detail: String },
    #[error("boundary mismatch: {0}")]
    Boundary(String),
    #[error("edge `{edge}` does not form a single arc: {detail}")]
    NotAnArc { edge: String, detail: String },
    #[error("edge `{0}` is declared but never drawn")]
    UnusedEdge(String),
    #[error("{0}")]
    Unsupported(String),
}
