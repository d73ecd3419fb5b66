//! Curve tracing on (cabled) crossingless diagrams and rotation numbers.
//!
//! Every Min or Max an oriented curve passes contributes a half turn: `+1` half
//! when it is traversed clockwise (a cup travelled right to left, a cap travelled
//! left to right), `-1` otherwise. Inside a cabled vertex the parallel strands are
//! joined by the unique noncrossing matching of in-points to out-points around
//! the vertex; pairs landing on the same side act as extra cups or caps.

use std::collections::BTreeSet;

use super::resolve::{epsilon, resolve, Layout};
use super::{DiagramError, Dir, EdgeId, MorseDiagram, PieceKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracedCurve {
    pub rotation: i64,
    /// The curve runs through the cut (only possible for cut-edge cables).
    pub through_cut: bool,
    pub edges: Vec<EdgeId>,
}

struct Tracer {
    parent: Vec<usize>,
    halves: Vec<i64>,
    edges: Vec<BTreeSet<EdgeId>>,
    boundary: Vec<bool>,
}

impl Tracer {
    fn fresh(&mut self, edge: EdgeId) -> usize {
        let n = self.parent.len();
        self.parent.push(n);
        self.halves.push(0);
        self.edges.push(BTreeSet::from([edge]));
        self.boundary.push(false);
        n
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn touch(&mut self, node: usize, edge: EdgeId) {
        self.edges[node].insert(edge);
    }
}

/// Half turn of a cup or cap whose left leg has direction `left_dir`. A rising
/// left leg means right-to-left along a cup bottom or left-to-right along a cap
/// top, both clockwise.
fn turn(left_dir: Dir) -> i64 {
    if left_dir == Dir::Up {
        1
    } else {
        -1
    }
}

#[derive(Clone, Copy)]
struct RingPoint {
    top: bool,
    dir: Dir,
    edge: EdgeId,
    /// Horizontal order among the points on the same side.
    x: usize,
    node: Option<usize>,
}

fn trace(
    d: &MorseDiagram,
    layout: &Layout,
    widths: &[usize],
    close: bool,
) -> Result<Vec<TracedCurve>, DiagramError> {
    let mut t = Tracer { parent: vec![], halves: vec![], edges: vec![], boundary: vec![] };
    let cut_w = widths[d.cut_edge];
    let bottom_nodes: Vec<usize> = (0..cut_w).map(|_| t.fresh(d.cut_edge)).collect();
    let mut cab: Vec<Vec<usize>> = vec![bottom_nodes.clone()];

    for rs in &layout.slices {
        let pos = rs.position;
        let (nb, _) = rs.kind.arity();
        let new_top: Vec<Vec<usize>> = match rs.kind {
            PieceKind::Identity | PieceKind::PosTwist | PieceKind::NegTwist => cab[pos..pos + nb].to_vec(),
            PieceKind::PosCrossing | PieceKind::NegCrossing => {
                return Err(DiagramError::Unsupported(format!("slice {}: crossings are not planar", rs.index)));
            }
            PieceKind::Min => {
                let e = rs.top[0].edge;
                let m = widths[e];
                let mut left = vec![0; m];
                let mut right = vec![0; m];
                for a in 0..m {
                    let n = t.fresh(e);
                    left[a] = n;
                    right[m - 1 - a] = n;
                    t.halves[n] += turn(rs.top[0].dir);
                }
                vec![left, right]
            }
            PieceKind::Max => {
                let (l, r) = (cab[pos].clone(), cab[pos + 1].clone());
                let m = l.len();
                for a in 0..m {
                    t.halves[l[a]] += turn(rs.bottom[0].dir);
                    t.union(l[a], r[m - 1 - a]);
                }
                vec![]
            }
            PieceKind::Split | PieceKind::Merge => {
                let mut ring: Vec<RingPoint> = Vec::new();
                let mut x = 0;
                for s in &rs.top {
                    for _ in 0..widths[s.edge] {
                        ring.push(RingPoint { top: true, dir: s.dir, edge: s.edge, x, node: None });
                        x += 1;
                    }
                }
                let mut bottoms = Vec::new();
                let mut x = 0;
                for (k, s) in rs.bottom.iter().enumerate() {
                    for &n in &cab[pos + k] {
                        bottoms.push(RingPoint { top: false, dir: s.dir, edge: s.edge, x, node: Some(n) });
                        x += 1;
                    }
                }
                ring.extend(bottoms.into_iter().rev());
                let len = ring.len();
                let eps: Vec<i64> = ring.iter().map(|p| epsilon(p.dir, p.top)).collect();
                let n_in = eps.iter().filter(|&&e| e == -1).count();
                if 2 * n_in != len {
                    return Err(DiagramError::Unsupported(format!(
                        "slice {}: cable counts do not balance at the vertex",
                        rs.index
                    )));
                }
                let s = (0..len)
                    .find(|&i| eps[i] == -1 && eps[(i + len - 1) % len] == 1)
                    .expect("in-points form one block");
                let mut top_nodes: Vec<Option<usize>> = vec![None; rs.top.iter().map(|s| widths[s.edge]).sum()];
                for k in 0..n_in {
                    let p = ring[(s + n_in - 1 - k) % len];
                    let q = ring[(s + n_in + k) % len];
                    match (p.top, q.top) {
                        (false, false) => {
                            let (l, _) = if p.x < q.x { (p, q) } else { (q, p) };
                            let (a, b) = (p.node.unwrap(), q.node.unwrap());
                            t.halves[a] += turn(l.dir);
                            t.union(a, b);
                        }
                        (true, true) => {
                            let (l, _) = if p.x < q.x { (p, q) } else { (q, p) };
                            let n = t.fresh(p.edge);
                            t.touch(n, q.edge);
                            t.halves[n] += turn(l.dir);
                            top_nodes[p.x] = Some(n);
                            top_nodes[q.x] = Some(n);
                        }
                        _ => {
                            let (b, tp) = if p.top { (q, p) } else { (p, q) };
                            let n = b.node.unwrap();
                            t.touch(n, tp.edge);
                            top_nodes[tp.x] = Some(n);
                        }
                    }
                }
                let mut it = top_nodes.into_iter().map(|n| n.expect("every top point matched"));
                rs.top.iter().map(|s| (0..widths[s.edge]).map(|_| it.next().unwrap()).collect()).collect()
            }
        };
        cab.splice(pos..pos + nb, new_top);
    }

    let top_nodes = cab.pop().expect("single top strand");
    let closing = match d.cut_direction {
        Dir::Up => -2,
        Dir::Down => 2,
    };
    for r in 0..cut_w {
        if close {
            t.halves[top_nodes[r]] += closing;
            t.union(top_nodes[r], bottom_nodes[r]);
        }
        t.boundary[top_nodes[r]] = true;
        t.boundary[bottom_nodes[r]] = true;
    }

    let mut order: Vec<usize> = Vec::new();
    let mut agg: std::collections::HashMap<usize, (i64, bool, BTreeSet<EdgeId>)> = Default::default();
    for n in 0..t.parent.len() {
        let r = t.find(n);
        let entry = agg.entry(r).or_insert_with(|| {
            order.push(r);
            (0, false, BTreeSet::new())
        });
        entry.0 += t.halves[n];
        entry.1 |= t.boundary[n];
        entry.2.extend(t.edges[n].iter().copied());
    }
    Ok(order
        .into_iter()
        .map(|r| {
            let (h, b, e) = agg.remove(&r).unwrap();
            debug_assert!(!close || h % 2 == 0, "closed curve with odd half-turn count");
            TracedCurve { rotation: h / 2, through_cut: b, edges: e.into_iter().collect() }
        })
        .collect())
}

/// Rotation numbers of the closed curves of a vertex-free, crossingless diagram
/// (the cut strand is closed up on the left).
pub fn rotation_numbers(d: &MorseDiagram) -> Result<Vec<TracedCurve>, DiagramError> {
    let layout = resolve(d)?;
    if layout.slices.iter().any(|s| s.kind.is_vertex()) {
        return Err(DiagramError::Unsupported("rotation numbers are traced on vertex-free diagrams".into()));
    }
    trace(d, &layout, &vec![1; d.edges.len()], true)
}

/// Sum of rotation numbers of the cabled curves that avoid the cut.
///
/// Every cable strand of the cut edge belongs to a curve through the cut, so all
/// of them are excluded.
pub fn cabled_rotation_sum(d: &MorseDiagram) -> Result<i64, DiagramError> {
    if let Some(e) = d.edges.iter().find(|e| e.color.multiplicity <= 0) {
        return Err(DiagramError::Unsupported(format!("edge `{}` has nonpositive multiplicity", e.name)));
    }
    let layout = resolve(d)?;
    let widths: Vec<usize> = d.edges.iter().map(|e| e.color.multiplicity as usize).collect();
    Ok(trace(d, &layout, &widths, false)?.iter().filter(|c| !c.through_cut).map(|c| c.rotation).sum())
}

#[cfg(test)]
mod tests {
    use super::super::parse_diagram;
    use super::*;

    fn diagram(t: &str) -> MorseDiagram {
        parse_diagram(t).unwrap()
    }

    #[test]
    fn circle_orientation() {
        // Downward cut strand closed on the left: up on the left, down on the right.
        let cw = diagram("morse v1\nedge e 1 1\ncut e down\n");
        assert_eq!(rotation_numbers(&cw).unwrap()[0].rotation, 1);
        let ccw = diagram("morse v1\nedge e 1 1\ncut e up\n");
        assert_eq!(rotation_numbers(&ccw).unwrap()[0].rotation, -1);
    }

    #[test]
    fn nested_clockwise_pair() {
        // Cut strand plus a clockwise circle to its right.
        let d = diagram("morse v1\nedge e 1 1\nedge f 1 1\ncut e down\nslice 1 min f r2l\nslice 1 max\n");
        let rots: Vec<i64> = rotation_numbers(&d).unwrap().iter().map(|c| c.rotation).collect();
        assert_eq!(rots, vec![1, 1]);
    }

    #[test]
    fn cabled_circle() {
        for j in 1..=3 {
            let d = diagram(&format!("morse v1\nedge e {j} 1\ncut e down\n"));
            assert_eq!(cabled_rotation_sum(&d).unwrap(), 0);
        }
        let d = diagram("morse v1\nedge e -1 1\ncut e down\n");
        assert!(cabled_rotation_sum(&d).is_err());
    }

    #[test]
    fn vertices_rejected_for_plain_rotation() {
        let d = diagram("morse v1\nedge a 1 1\nedge b 1 1\nedge c 2 1\ncut c up\nslice 0 split c a b\nslice 0 merge a b c\n");
        assert!(rotation_numbers(&d).is_err());
        assert_eq!(cabled_rotation_sum(&d).unwrap(), 0);
    }
}
