//! Planar realizability of Gauss codes.
//!
//! Crossing signs, rail-crossing directions and the fixed rail frame determine
//! the cyclic order of edges around every vertex, so a code is realizable in
//! the plane exactly when that rotation system has genus zero. The rails are
//! closed up through a single vertex at infinity where they meet in the order
//! rail 1 top, rail 2 top, rail 2 bottom, rail 1 bottom.
//!
//! The side from which the arc leaves the leg (and reaches the head) is not
//! part of the code; a rail knotoid code is realizable if some choice of the
//! two sides is.

use super::{ArcEvent, Dir, LinkDiagram, Rail, RailItem, RailKnotoidDiagram, Role, Side, Sign};
use std::collections::HashMap;

/// Rotation system under construction. Darts `2e` and `2e + 1` are the two
/// ends of edge `e`.
struct Rotations {
    edges: usize,
    next: Vec<usize>,
    vertices: usize,
}

impl Rotations {
    fn new(edges: usize) -> Self {
        Rotations { edges, next: vec![usize::MAX; 2 * edges], vertices: 0 }
    }

    /// Registers a vertex whose darts appear in the given counterclockwise order.
    fn vertex(&mut self, darts: &[usize]) {
        for (i, &d) in darts.iter().enumerate() {
            self.next[d] = darts[(i + 1) % darts.len()];
        }
        self.vertices += 1;
    }

    fn faces_as_edges(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.next.len()];
        let mut faces = Vec::new();
        for start in 0..self.next.len() {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                face.push(d / 2);
                d = self.next[d ^ 1];
            }
            faces.push(face);
        }
        faces
    }

    fn euler_characteristic(&self) -> i64 {
        debug_assert!(self.next.iter().all(|&n| n != usize::MAX), "unassigned dart");
        self.vertices as i64 - self.edges as i64 + self.faces_as_edges().len() as i64
    }
}

/// Counterclockwise dart order at a crossing given the darts of both strands.
fn crossing_rotation(sign: Sign, over: (usize, usize), under: (usize, usize)) -> [usize; 4] {
    let (over_in, over_out) = over;
    let (under_in, under_out) = under;
    match sign {
        Sign::Pos => [over_out, under_out, over_in, under_in],
        Sign::Neg => [over_out, under_in, over_in, under_out],
    }
}

/// Whether the code has a planar realization for some choice of departure sides.
pub fn is_realizable(d: &RailKnotoidDiagram) -> bool {
    realizing_sides(d).is_some()
}

/// The first `(leg side, head side)` pair for which the code is planar.
pub fn realizing_sides(d: &RailKnotoidDiagram) -> Option<(Side, Side)> {
    if !d.is_valid() {
        return None;
    }
    for leg in Side::BOTH {
        for head in Side::BOTH {
            if genus_zero(d, leg, head) {
                return Some((leg, head));
            }
        }
    }
    None
}

/// Genus-zero test for fixed departure sides. `d` must be valid.
pub fn genus_zero(d: &RailKnotoidDiagram, leg_side: Side, head_side: Side) -> bool {
    rotation_system(d, leg_side, head_side).euler_characteristic() == 2
}

/// Edge numbering: arc edge `k` runs from event `k - 1` to event `k` (edge 0
/// starts at the leg, edge `n` ends at the head); rail edges follow, edge `k`
/// of a rail lying just below its item `k`.
fn rail_base(d: &RailKnotoidDiagram) -> [usize; 2] {
    let n = d.arc_events.len();
    [n + 1, n + 1 + d.rails[0].len() + 1]
}

fn rotation_system(d: &RailKnotoidDiagram, leg_side: Side, head_side: Side) -> Rotations {
    let n = d.arc_events.len();
    let rail_len = [d.rails[0].len(), d.rails[1].len()];
    let rail_base = rail_base(d);
    let rail_edge = |r: usize, k: usize| rail_base[r] + k;
    let edges = rail_base[1] + rail_len[1] + 1;
    let mut rot = Rotations::new(edges);

    // Event i sits between arc edges i and i + 1: its incoming dart is the end
    // of edge i and its outgoing dart the start of edge i + 1.
    let arc_in = |i: usize| 2 * i + 1;
    let arc_out = |i: usize| 2 * (i + 1);
    // Rail item p sits between rail edges p and p + 1.
    let rail_down = |r: usize, p: usize| 2 * rail_edge(r, p) + 1;
    let rail_up = |r: usize, p: usize| 2 * rail_edge(r, p + 1);

    let mut self_passes: HashMap<u32, [Option<usize>; 2]> = HashMap::new();
    let mut rail_pass_at: HashMap<u32, usize> = HashMap::new();
    for (i, ev) in d.arc_events.iter().enumerate() {
        match *ev {
            ArcEvent::SelfPass { id, role } => {
                let slot = self_passes.entry(id).or_default();
                slot[(role == Role::Under) as usize] = Some(i);
            }
            ArcEvent::RailPass { id, .. } => {
                rail_pass_at.insert(id, i);
            }
        }
    }
    for (id, passes) in &self_passes {
        let (o, u) = (passes[0].unwrap(), passes[1].unwrap());
        rot.vertex(&crossing_rotation(d.self_crossings[id], (arc_in(o), arc_out(o)), (arc_in(u), arc_out(u))));
    }

    for rail in Rail::BOTH {
        let r = rail.index();
        for (p, item) in d.rail(rail).iter().enumerate() {
            let (up, down) = (rail_up(r, p), rail_down(r, p));
            match item {
                RailItem::Crossing(c) => {
                    let i = rail_pass_at[&c.id];
                    let (a_in, a_out) = (arc_in(i), arc_out(i));
                    match c.dir {
                        Dir::LeftToRight => rot.vertex(&[a_out, up, a_in, down]),
                        Dir::RightToLeft => rot.vertex(&[a_out, down, a_in, up]),
                    }
                }
                RailItem::Endpoint => {
                    let (arc, side) = match rail {
                        Rail::One => (0, leg_side),
                        Rail::Two => (2 * n + 1, head_side),
                    };
                    match side {
                        Side::Right => rot.vertex(&[arc, up, down]),
                        Side::Left => rot.vertex(&[arc, down, up]),
                    }
                }
            }
        }
    }

    // Vertex at infinity.
    let top = |r: usize| 2 * rail_edge(r, rail_len[r]) + 1;
    let bottom = |r: usize| 2 * rail_edge(r, 0);
    rot.vertex(&[top(0), top(1), bottom(1), bottom(0)]);
    rot
}

/// Whether a closed link code is planar: `V - E + F = 2` on every connected
/// piece. Crossingless components are free circles and always fine.
pub fn link_is_planar(l: &LinkDiagram) -> bool {
    if l.validate().is_err() {
        return false;
    }
    let comps: Vec<_> = l.components.iter().filter(|c| !c.is_empty()).collect();
    let mut base = Vec::with_capacity(comps.len());
    let mut edges = 0;
    for c in &comps {
        base.push(edges);
        edges += c.len();
    }
    let mut rot = Rotations::new(edges);
    let mut passes: HashMap<u32, [(usize, usize); 2]> = HashMap::new();
    // Union-find over edges to count connected pieces.
    let mut parent: Vec<usize> = (0..edges).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for (ci, c) in comps.iter().enumerate() {
        let k = c.len();
        for (j, pass) in c.iter().enumerate() {
            let prev = base[ci] + (j + k - 1) % k;
            let cur = base[ci] + j;
            let (a, b) = (find(&mut parent, prev), find(&mut parent, cur));
            parent[a] = b;
            passes.entry(pass.id).or_default()[(pass.role == Role::Under) as usize] = (2 * prev + 1, 2 * cur);
        }
    }
    for (id, [over, under]) in &passes {
        rot.vertex(&crossing_rotation(l.crossing_signs[id], *over, *under));
        let (a, b) = (find(&mut parent, over.0 / 2), find(&mut parent, under.0 / 2));
        parent[a] = b;
    }
    let pieces = (0..edges).filter(|&e| find(&mut parent, e) == e).count() as i64;
    rot.euler_characteristic() == 2 * pieces
}

/// Faces of a planar realization, each as the sorted list of its edges.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub leg_side: Side,
    pub head_side: Side,
    rail_base: [usize; 2],
    faces: Vec<Vec<usize>>,
}

impl Embedding {
    /// The realization for the first planar choice of departure sides.
    pub fn of(d: &RailKnotoidDiagram) -> Option<Embedding> {
        let (leg_side, head_side) = realizing_sides(d)?;
        let rot = rotation_system(d, leg_side, head_side);
        let mut faces = rot.faces_as_edges();
        for f in &mut faces {
            f.sort_unstable();
        }
        Some(Embedding { leg_side, head_side, rail_base: rail_base(d), faces })
    }

    pub fn departure_side(&self, rail: Rail) -> Side {
        match rail {
            Rail::One => self.leg_side,
            Rail::Two => self.head_side,
        }
    }

    /// Whether some face is bounded by exactly these edges.
    pub fn is_face(&self, edges: &[EdgeRef]) -> bool {
        let mut want: Vec<usize> = edges
            .iter()
            .map(|e| match *e {
                EdgeRef::Arc(k) => k,
                EdgeRef::Rail(rail, k) => self.rail_base[rail.index()] + k,
            })
            .collect();
        want.sort_unstable();
        self.faces.iter().any(|f| *f == want)
    }
}

/// An edge of the diagram graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeRef {
    /// The arc edge between events `k - 1` and `k`; edge 0 starts at the leg
    /// and edge `n` ends at the head.
    Arc(usize),
    /// The rail edge just below item `k` of the rail.
    Rail(Rail, usize),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{CrossPass, Flag, RailCrossing};

    #[test]
    fn empty_diagram_needs_inward_departures() {
        let d = RailKnotoidDiagram::empty();
        assert!(genus_zero(&d, Side::Right, Side::Left));
        assert!(!genus_zero(&d, Side::Left, Side::Left));
        assert!(!genus_zero(&d, Side::Right, Side::Right));
        assert_eq!(realizing_sides(&d), Some((Side::Right, Side::Left)));
    }

    #[test]
    fn leg_loop_across_rail_one() {
        // Leaves the leg to the left and crosses rail 1 above it going right.
        let mut d = RailKnotoidDiagram::empty();
        d.arc_events.push(ArcEvent::RailPass { rail: Rail::One, id: 1 });
        d.rails[0].push(RailItem::Crossing(RailCrossing { id: 1, flag: Flag::ArcUnderRail, dir: Dir::LeftToRight }));
        assert_eq!(realizing_sides(&d), Some((Side::Left, Side::Left)));
        d.rails[0][1] = RailItem::Crossing(RailCrossing { id: 1, flag: Flag::ArcUnderRail, dir: Dir::RightToLeft });
        assert!(!is_realizable(&d));
    }

    #[test]
    fn finger_over_rail_one() {
        // Arc leaves to the right, dips back across rail 1 and returns.
        let mk = |lower: Dir, upper: Dir, first: u32| {
            let mut d = RailKnotoidDiagram::empty();
            let second = 3 - first;
            d.arc_events = vec![
                ArcEvent::RailPass { rail: Rail::One, id: first },
                ArcEvent::RailPass { rail: Rail::One, id: second },
            ];
            d.rails[0].push(RailItem::Crossing(RailCrossing { id: 1, flag: Flag::ArcUnderRail, dir: lower }));
            d.rails[0].push(RailItem::Crossing(RailCrossing { id: 2, flag: Flag::ArcUnderRail, dir: upper }));
            d
        };
        // First crossing (lower) goes right-to-left, the return above it left-to-right.
        assert!(is_realizable(&mk(Dir::RightToLeft, Dir::LeftToRight, 1)));
        assert!(!is_realizable(&mk(Dir::LeftToRight, Dir::RightToLeft, 1)));
        assert!(!is_realizable(&mk(Dir::LeftToRight, Dir::RightToLeft, 2)));
    }

    #[test]
    fn link_codes() {
        let pass = |id, role| CrossPass { id, role };
        let (o, u) = (Role::Over, Role::Under);
        let mut trefoil = LinkDiagram {
            components: vec![vec![pass(1, o), pass(2, u), pass(3, o), pass(1, u), pass(2, o), pass(3, u)]],
            crossing_signs: [(1, Sign::Pos), (2, Sign::Pos), (3, Sign::Pos)].into_iter().collect(),
        };
        assert!(link_is_planar(&trefoil));
        trefoil.crossing_signs.insert(2, Sign::Neg);
        assert!(!link_is_planar(&trefoil));

        // Virtual trefoil: O1 O2 U1 U2.
        let virt = LinkDiagram {
            components: vec![vec![pass(1, o), pass(2, o), pass(1, u), pass(2, u)]],
            crossing_signs: [(1, Sign::Pos), (2, Sign::Pos)].into_iter().collect(),
        };
        assert!(!link_is_planar(&virt));

        let hopf = LinkDiagram {
            components: vec![vec![pass(1, o), pass(2, u)], vec![pass(1, u), pass(2, o)], vec![]],
            crossing_signs: [(1, Sign::Pos), (2, Sign::Pos)].into_iter().collect(),
        };
        assert!(link_is_planar(&hopf));
        assert!(link_is_planar(&LinkDiagram::unknot()));
    }
}
