//! `morse v1` text format.

use super::{Color, DiagramError, Dir, EdgeDecl, EdgeId, Horizontal, MorseDiagram, Piece, Sign, Slice};

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token { text: &body[s..i], col: s + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &body[s..], col: s + 1 });
    }
    out
}

struct LineCursor<'a> {
    line: usize,
    toks: Vec<Token<'a>>,
    at: usize,
    end_col: usize,
}

impl<'a> LineCursor<'a> {
    fn err(&self, col: usize, msg: impl Into<String>) -> DiagramError {
        DiagramError::Syntax { line: self.line, col, msg: msg.into() }
    }

    fn next(&mut self, what: &str) -> Result<Token<'a>, DiagramError> {
        let col = self.toks.get(self.at).map_or(self.end_col, |t| t.col);
        let t = *self.toks.get(self.at).ok_or_else(|| self.err(col, format!("expected {what}")))?;
        self.at += 1;
        Ok(t)
    }

    fn int(&mut self, what: &str) -> Result<i64, DiagramError> {
        let line = self.line;
        let t = self.next(what)?;
        t.text.parse::<i64>().map_err(|_| DiagramError::Syntax {
            line,
            col: t.col,
            msg: format!("expected {what}, found `{}`", t.text),
        })
    }

    fn name(&mut self, what: &str) -> Result<(String, usize), DiagramError> {
        let line = self.line;
        let t = self.next(what)?;
        let ok = t.text.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && t.text.chars().all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '\''));
        if !ok {
            return Err(DiagramError::Syntax { line, col: t.col, msg: format!("bad edge name `{}`", t.text) });
        }
        Ok((t.text.to_string(), t.col))
    }

    fn done(&self) -> Result<(), DiagramError> {
        match self.toks.get(self.at) {
            Some(t) => Err(self.err(t.col, format!("unexpected `{}`", t.text))),
            None => Ok(()),
        }
    }
}

/// Parses `morse v1` text and resolves edge names. Geometry is checked by [`super::validate`].
pub fn parse_diagram(text: &str) -> Result<MorseDiagram, DiagramError> {
    let mut edges: Vec<EdgeDecl> = Vec::new();
    let mut cut: Option<(EdgeId, Dir)> = None;
    let mut slices = Vec::new();
    let mut header = false;
    // Slices may name edges declared further down; resolve after the pass.
    let mut pending: Vec<(usize, usize, PendingPiece)> = Vec::new();
    let mut pending_cut: Option<(usize, usize, String, Dir)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = tokenize(raw);
        if toks.is_empty() {
            continue;
        }
        let end_col = raw.split('#').next().unwrap_or("").trim_end().chars().count() + 1;
        let mut cur = LineCursor { line, toks, at: 0, end_col };
        if !header {
            let a = cur.next("header")?.text;
            let b = cur.toks.get(1).map(|t| t.text);
            if a != "morse" || b != Some("v1") {
                return Err(DiagramError::MissingHeader);
            }
            cur.at = 2;
            cur.done()?;
            header = true;
            continue;
        }
        let kw = cur.next("keyword")?;
        let kw_col = kw.col;
        match kw.text {
            "edge" => {
                let (name, _) = cur.name("edge name")?;
                let j = cur.int("multiplicity")?;
                let jj = cur.int("weight")?;
                cur.done()?;
                if edges.iter().any(|e| e.name == name) {
                    return Err(DiagramError::DuplicateEdge { line, name });
                }
                if j == 0 {
                    return Err(DiagramError::ZeroMultiplicity { line, name });
                }
                edges.push(EdgeDecl { name, color: Color::new(j, jj) });
            }
            "cut" => {
                let (name, _) = cur.name("edge name")?;
                let d = cur.next("direction")?;
                let dir = match d.text {
                    "up" => Dir::Up,
                    "down" => Dir::Down,
                    other => return Err(cur.err(d.col, format!("expected up|down, found `{other}`"))),
                };
                cur.done()?;
                if pending_cut.is_some() {
                    return Err(DiagramError::DuplicateCut { line });
                }
                pending_cut = Some((line, kw_col, name, dir));
            }
            "slice" => {
                let pos = cur.int("position")?;
                if pos < 0 {
                    return Err(cur.err(cur.toks[1].col, "negative position"));
                }
                let piece = parse_piece(&mut cur)?;
                cur.done()?;
                pending.push((line, pos as usize, piece));
            }
            other => return Err(cur.err(kw_col, format!("unknown keyword `{other}`"))),
        }
    }
    if !header {
        return Err(DiagramError::MissingHeader);
    }
    let lookup = |line: usize, name: &str| -> Result<EdgeId, DiagramError> {
        edges
            .iter()
            .position(|e| e.name == name)
            .ok_or_else(|| DiagramError::UnknownEdge { line, name: name.to_string() })
    };
    if let Some((line, _, name, dir)) = &pending_cut {
        cut = Some((lookup(*line, name)?, *dir));
    }
    for (line, position, p) in pending {
        let piece = match p {
            PendingPiece::Min(e, h) => Piece::Min { edge: lookup(line, &e)?, horizontal: h },
            PendingPiece::Plain(piece) => piece,
            PendingPiece::Split(a, b, c) => Piece::Split {
                input: lookup(line, &a)?,
                left: lookup(line, &b)?,
                right: lookup(line, &c)?,
            },
            PendingPiece::Merge(a, b, c) => Piece::Merge {
                left: lookup(line, &a)?,
                right: lookup(line, &b)?,
                output: lookup(line, &c)?,
            },
        };
        slices.push(Slice { position, piece, line: Some(line) });
    }
    let (cut_edge, cut_direction) = cut.ok_or(DiagramError::MissingCut)?;
    Ok(MorseDiagram { edges, cut_edge, cut_direction, slices })
}

enum PendingPiece {
    Min(String, Horizontal),
    Plain(Piece),
    Split(String, String, String),
    Merge(String, String, String),
}

fn parse_piece(cur: &mut LineCursor<'_>) -> Result<PendingPiece, DiagramError> {
    let t = cur.next("piece")?;
    let col = t.col;
    Ok(match t.text {
        "min" => {
            let (e, _) = cur.name("edge name")?;
            let h = cur.next("l2r|r2l")?;
            let h = match h.text {
                "l2r" => Horizontal::LeftToRight,
                "r2l" => Horizontal::RightToLeft,
                other => return Err(cur.err(h.col, format!("expected l2r|r2l, found `{other}`"))),
            };
            PendingPiece::Min(e, h)
        }
        "max" => PendingPiece::Plain(Piece::Max),
        "xpos" => PendingPiece::Plain(Piece::Crossing(Sign::Pos)),
        "xneg" => PendingPiece::Plain(Piece::Crossing(Sign::Neg)),
        "twpos" => PendingPiece::Plain(Piece::Twist(Sign::Pos)),
        "twneg" => PendingPiece::Plain(Piece::Twist(Sign::Neg)),
        "split" => {
            let a = cur.name("input edge")?.0;
            let b = cur.name("left output edge")?.0;
            let c = cur.name("right output edge")?.0;
            PendingPiece::Split(a, b, c)
        }
        "merge" => {
            let a = cur.name("left input edge")?.0;
            let b = cur.name("right input edge")?.0;
            let c = cur.name("output edge")?.0;
            PendingPiece::Merge(a, b, c)
        }
        other => return Err(cur.err(col, format!("unknown piece `{other}`"))),
    })
}
