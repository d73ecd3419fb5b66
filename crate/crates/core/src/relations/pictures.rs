//! The local pictures appearing in the relations and the closures that turn
//! them into closed diagrams.

use super::{ColorSample, RelationError};
use crate::diagram::{Color, DiagramBuilder, Dir, Horizontal, MorseDiagram, NewEdge, Sign};
use crate::statesum::tangle_matrix;
use crate::weights::{PieceMatrix, WeightTable};

type Draw = Box<dyn Fn(&mut DiagramBuilder, usize) -> Result<(), RelationError> + Send + Sync>;

/// How a picture is closed up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Closure {
    /// One strand in, one out: a round circle through the cut.
    Circle,
    /// The bottom legs split off a single cut strand and the top ones merge back.
    Vertices,
}

pub(crate) struct Picture {
    pub legs: Vec<(NewEdge, Dir)>,
    pub closure: Closure,
    draw: Draw,
}

fn eps(dir: Dir, top: bool) -> i64 {
    if (dir == Dir::Up) == top {
        1
    } else {
        -1
    }
}

fn sgn(dir: Dir) -> i64 {
    if dir == Dir::Up {
        1
    } else {
        -1
    }
}

/// Weight of an upward strand below a split whose tops are `l` and `r`.
fn joined_weight(l: (i64, Dir), r: (i64, Dir)) -> i64 {
    let (el, er, eb) = (eps(l.1, true), eps(r.1, true), eps(Dir::Up, false));
    eb * (-(el * er * eb) - el * l.0 - er * r.0)
}

fn leg(name: &str, m: i64, w: i64, dir: Dir) -> (NewEdge, Dir) {
    (NewEdge::new(name, m, w), dir)
}

fn up2(s: &ColorSample) -> Vec<(NewEdge, Dir)> {
    vec![leg("i", s.i, s.wi, Dir::Up), leg("j", s.j, s.wj, Dir::Up)]
}

impl Picture {
    fn new(legs: Vec<(NewEdge, Dir)>, closure: Closure, draw: Draw) -> Self {
        Picture { legs, closure, draw }
    }

    fn empty(legs: Vec<(NewEdge, Dir)>, closure: Closure) -> Self {
        Picture::new(legs, closure, Box::new(|_, _| Ok(())))
    }

    /// The picture as an open tangle, with its top boundary.
    pub fn matrix(&self, table: &WeightTable) -> Result<(PieceMatrix, Vec<(Dir, Color)>), RelationError> {
        let mut b = DiagramBuilder::open(&self.legs)?;
        (self.draw)(&mut b, 0)?;
        let t = b.finish_tangle();
        let top = t.top().iter().map(|s| (s.dir, t.edges[s.edge].color)).collect();
        Ok((tangle_matrix(&t.edges, &t.layout, table)?, top))
    }

    pub fn bottom(&self) -> Vec<(Dir, Color)> {
        self.legs.iter().map(|(e, d)| (*d, Color::new(e.multiplicity, e.weight.unwrap()))).collect()
    }

    pub fn close(&self) -> Result<MorseDiagram, RelationError> {
        match self.closure {
            Closure::Circle => {
                let (e, d) = &self.legs[0];
                if *d != Dir::Up {
                    return Err(RelationError::Integrity("circle closures run up the picture".into()));
                }
                let mut b = DiagramBuilder::closed(e.clone(), Dir::Down)?;
                b.min(1, NewEdge::auto(e.name.clone(), e.multiplicity), Horizontal::RightToLeft)?;
                (self.draw)(&mut b, 1)?;
                b.max(0)?;
                Ok(b.finish()?)
            }
            Closure::Vertices => self.close_with_vertices(),
        }
    }

    fn close_with_vertices(&self) -> Result<MorseDiagram, RelationError> {
        let n = self.legs.len();
        let mut b;
        let cut: NewEdge;
        if n == 1 {
            cut = self.legs[0].0.clone();
            b = DiagramBuilder::closed(cut.clone(), self.legs[0].1)?;
        } else {
            // acc[k] joins legs 0..=k into one upward strand.
            let mut acc: Vec<(NewEdge, Dir)> = vec![self.legs[0].clone()];
            for k in 1..n {
                let (p, pd) = &acc[k - 1];
                let (q, qd) = &self.legs[k];
                let m = sgn(*pd) * p.multiplicity + sgn(*qd) * q.multiplicity;
                if m == 0 {
                    return Err(RelationError::Skipped("closure strand has multiplicity zero".into()));
                }
                let w = joined_weight((p.weight.unwrap(), *pd), (q.weight.unwrap(), *qd));
                let name = if k == n - 1 { "c".to_string() } else { format!("c{k}") };
                acc.push((NewEdge::new(name, m, w), Dir::Up));
            }
            cut = acc[n - 1].0.clone();
            b = DiagramBuilder::closed(cut.clone(), Dir::Up)?;
            for k in (1..n).rev() {
                b.split(0, acc[k - 1].0.clone(), self.legs[k].0.clone())?;
            }
            let dirs: Vec<Dir> = b.level().iter().map(|s| s.dir).collect();
            if dirs != self.legs.iter().map(|l| l.1).collect::<Vec<_>>() {
                return Err(RelationError::Skipped("closure orientation differs from the picture".into()));
            }
        }
        (self.draw)(&mut b, 0)?;
        let mut fresh = 0;
        while b.width() > 1 {
            let (l, r) = (b.level()[0], b.level()[1]);
            let lc = b_color(&b, l.edge);
            let rc = b_color(&b, r.edge);
            let m = sgn(l.dir) * lc + sgn(r.dir) * rc;
            if m == 0 {
                return Err(RelationError::Skipped("closure strand has multiplicity zero".into()));
            }
            let out = if b.width() == 2 {
                NewEdge::auto(cut.name.clone(), cut.multiplicity)
            } else {
                fresh += 1;
                NewEdge::auto(format!("t{fresh}"), m)
            };
            b.merge(0, out)?;
        }
        Ok(b.finish()?)
    }
}

fn b_color(b: &DiagramBuilder, edge: usize) -> i64 {
    b.edge_decl(edge).color.multiplicity
}

/// Named local diagrams used by the relation checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Local {
    /// Square with horizontal edges of color i+j on strands `j` up, `i` down.
    VSquare,
    /// The H-shaped diagram with a vertical edge of color i−j.
    VVertical,
    /// Two plain strands `j` up, `i` down.
    VParallel,
    /// Ladder with rungs k (leftward) and l (rightward).
    ViiLadder,
    /// Merge to i+j, then split to (i+k−l, j+l−k).
    ViiH,
    /// One rung of color k−l, rising leftward.
    ViiRung,
    /// Two parallel upward strands colored i and j.
    UpParallel,
    /// Positive crossing, the i strand on top.
    CrossingPos,
    /// Negative crossing, the j strand on top.
    CrossingNeg,
    /// Merge to i+j, then split to (j, i).
    ViiiH,
    /// One rung of color j−i rising leftward.
    ViiiRungLeft,
    /// One rung of color i−j rising rightward.
    ViiiRungRight,
}

impl Local {
    pub(crate) fn picture(self, s: &ColorSample) -> Picture {
        let s = *s;
        let (i, j, k, l, wi, wj, wk) = (s.i, s.j, s.k, s.l, s.wi, s.wj, s.wk);
        let v_legs = || vec![leg("j", j, wj, Dir::Up), leg("i", i, wi, Dir::Down)];
        let vx = Closure::Vertices;
        match self {
            Local::VSquare => Picture::new(
                v_legs(),
                vx,
                Box::new(move |b, o| {
                    b.split(o, NewEdge::new("p", i, wk), NewEdge::auto("h", i + j))?;
                    b.merge(o + 1, NewEdge::auto("r", j))?;
                    b.split(o + 1, NewEdge::auto("g", i + j), NewEdge::new("it", i, wi))?;
                    b.merge(o, NewEdge::new("jt", j, wj))?;
                    Ok(())
                }),
            ),
            Local::VVertical => Picture::new(
                v_legs(),
                vx,
                Box::new(move |b, o| {
                    b.merge(o, NewEdge::auto("m", i - j))?;
                    b.split(o, NewEdge::new("jt", j, wj), NewEdge::new("it", i, wi))?;
                    Ok(())
                }),
            ),
            Local::VParallel => Picture::empty(v_legs(), vx),
            // The rung l carries the same weight as k; top weights come out as (I, J).
            Local::ViiLadder => Picture::new(
                up2(&s),
                vx,
                Box::new(move |b, o| {
                    b.split(o + 1, NewEdge::new("k", k, wk), NewEdge::auto("jk", j - k))?;
                    b.merge(o, NewEdge::auto("ik", i + k))?;
                    b.split(o, NewEdge::auto("tl", i + k - l), NewEdge::new("l", l, wk))?;
                    b.merge(o + 1, NewEdge::new("tr", j + l - k, wj))?;
                    Ok(())
                }),
            ),
            Local::ViiH => Picture::new(
                up2(&s),
                vx,
                Box::new(move |b, o| {
                    b.merge(o, NewEdge::auto("s", i + j))?;
                    b.split(o, NewEdge::new("tl", i + k - l, wi), NewEdge::new("tr", j + l - k, wj))?;
                    Ok(())
                }),
            ),
            Local::ViiRung => Picture::new(
                up2(&s),
                vx,
                Box::new(move |b, o| {
                    b.split(o + 1, NewEdge::auto("r", k - l), NewEdge::new("tr", j + l - k, wj))?;
                    b.merge(o, NewEdge::new("tl", i + k - l, wi))?;
                    Ok(())
                }),
            ),
            Local::UpParallel => Picture::empty(up2(&s), vx),
            Local::CrossingPos | Local::CrossingNeg => {
                let sign = if self == Local::CrossingPos { Sign::Pos } else { Sign::Neg };
                Picture::new(
                    up2(&s),
                    vx,
                    Box::new(move |b, o| {
                        b.crossing(o, sign)?;
                        Ok(())
                    }),
                )
            }
            Local::ViiiH => Picture::new(
                up2(&s),
                vx,
                Box::new(move |b, o| {
                    b.merge(o, NewEdge::auto("s", i + j))?;
                    b.split(o, NewEdge::new("tj", j, wj), NewEdge::new("ti", i, wi))?;
                    Ok(())
                }),
            ),
            Local::ViiiRungLeft => Picture::new(
                up2(&s),
                vx,
                Box::new(move |b, o| {
                    b.split(o + 1, NewEdge::auto("r", j - i), NewEdge::new("ti", i, wi))?;
                    b.merge(o, NewEdge::new("tj", j, wj))?;
                    Ok(())
                }),
            ),
            Local::ViiiRungRight => Picture::new(
                up2(&s),
                vx,
                Box::new(move |b, o| {
                    b.split(o, NewEdge::new("tj", j, wj), NewEdge::auto("r", i - j))?;
                    b.merge(o + 1, NewEdge::new("ti", i, wi))?;
                    Ok(())
                }),
            ),
        }
    }
}

/// A plain upward strand colored `(m, w)`, closed into a circle.
pub(crate) fn strand(m: i64, w: i64) -> Picture {
    Picture::empty(vec![leg("e", m, w, Dir::Up)], Closure::Circle)
}

/// A strand with one half-twist.
pub(crate) fn twisted_strand(m: i64, w: i64, sign: Sign) -> Picture {
    Picture::new(
        vec![leg("e", m, w, Dir::Up)],
        Closure::Circle,
        Box::new(move |b, o| {
            b.twist(o, sign)?;
            Ok(())
        }),
    )
}

/// A strand of color i+j opening into a bigon with sides i and j.
pub(crate) fn bubble(s: &ColorSample) -> Picture {
    let (i, j, wi, wj) = (s.i, s.j, s.wi, s.wj);
    let w = joined_weight((wi, Dir::Up), (wj, Dir::Up));
    Picture::new(
        vec![leg("e", i + j, w, Dir::Up)],
        Closure::Circle,
        Box::new(move |b, o| {
            b.split(o, NewEdge::new("a", i, wi), NewEdge::new("b", j, wj))?;
            b.merge(o, NewEdge::auto("e", i + j))?;
            Ok(())
        }),
    )
}

/// Two circles side by side, the left one cut.
pub(crate) fn two_circles(s: &ColorSample) -> Result<MorseDiagram, RelationError> {
    let mut b = DiagramBuilder::closed(NewEdge::new("e", s.i, s.wi), Dir::Down)?;
    b.min(1, NewEdge::new("f", s.j, s.wj), Horizontal::RightToLeft)?;
    b.max(1)?;
    Ok(b.finish()?)
}

/// The splitting pictures of (vi): `left` splits off i+j first, otherwise j+k.
pub(crate) fn triple_split(s: &ColorSample, left: bool) -> Picture {
    let (i, j, k, wi, wj, wk) = (s.i, s.j, s.k, s.wi, s.wj, s.wk);
    let wij = joined_weight((wi, Dir::Up), (wj, Dir::Up));
    let wjk = joined_weight((wj, Dir::Up), (wk, Dir::Up));
    let wc = joined_weight((wij, Dir::Up), (wk, Dir::Up));
    Picture::new(
        vec![leg("c", i + j + k, wc, Dir::Up)],
        Closure::Vertices,
        Box::new(move |b, o| {
            if left {
                b.split(o, NewEdge::new("x", i + j, wij), NewEdge::new("k", k, wk))?;
                b.split(o, NewEdge::new("a", i, wi), NewEdge::new("b", j, wj))?;
            } else {
                b.split(o, NewEdge::new("a", i, wi), NewEdge::new("y", j + k, wjk))?;
                b.split(o + 1, NewEdge::new("b", j, wj), NewEdge::new("k", k, wk))?;
            }
            Ok(())
        }),
    )
}

/// The merging pictures of (vi) on legs i, j, k.
pub(crate) fn triple_merge(s: &ColorSample, left: bool) -> Picture {
    let (i, j, k) = (s.i, s.j, s.k);
    let legs = vec![leg("a", i, s.wi, Dir::Up), leg("b", j, s.wj, Dir::Up), leg("k", k, s.wk, Dir::Up)];
    Picture::new(
        legs,
        Closure::Vertices,
        Box::new(move |b, o| {
            if left {
                b.merge(o, NewEdge::auto("x", i + j))?;
            } else {
                b.merge(o + 1, NewEdge::auto("y", j + k))?;
            }
            b.merge(o, NewEdge::auto("c", i + j + k))?;
            Ok(())
        }),
    )
}
