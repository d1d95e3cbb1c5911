//! Code-level rewrite rules, one per move kind.
//!
//! Every rule checks its pattern conditions and reports the first one that
//! fails. Removal rules and the triangle moves also report the cell of the
//! move (monogon, bigon or triangle) in the input, which must be an empty
//! face of a planar realization for the rewrite to be a genuine move.

use super::{Move, Vertical};
use crate::diagram::planar::EdgeRef;
use crate::diagram::{ArcEvent, CrossingId, Dir, Flag, Rail, RailCrossing, RailItem, RailKnotoidDiagram, Role, Sign};

pub(super) struct Outcome {
    pub result: RailKnotoidDiagram,
    /// Cell in the input; `None` for the insertion kinds.
    pub cell: Option<Vec<EdgeRef>>,
    /// The move undoing this one on `result`.
    pub inverse: Move,
}

type Rule = Result<Outcome, String>;

fn fail<T>(msg: impl Into<String>) -> Result<T, String> {
    Err(msg.into())
}

fn self_pass(d: &RailKnotoidDiagram, pos: usize) -> Option<(CrossingId, Role)> {
    match d.arc_events.get(pos)? {
        ArcEvent::SelfPass { id, role } => Some((*id, *role)),
        ArcEvent::RailPass { .. } => None,
    }
}

fn rail_crossing_at(d: &RailKnotoidDiagram, rail: Rail, i: usize) -> Option<RailCrossing> {
    match d.rail(rail).get(i)? {
        RailItem::Crossing(c) => Some(*c),
        RailItem::Endpoint => None,
    }
}

fn rail_pass_position(d: &RailKnotoidDiagram, rail: Rail, id: CrossingId) -> usize {
    d.arc_position(ArcEvent::RailPass { rail, id }).expect("valid diagram")
}

fn rail_index(d: &RailKnotoidDiagram, rail: Rail, id: CrossingId) -> usize {
    d.rail(rail)
        .iter()
        .position(|item| matches!(item, RailItem::Crossing(c) if c.id == id))
        .expect("valid diagram")
}

/// Index of the rail item on the given side of the endpoint.
fn beside_endpoint(d: &RailKnotoidDiagram, rail: Rail, at: Vertical) -> Option<usize> {
    let e = d.endpoint_position(rail)?;
    match at {
        Vertical::Above => Some(e + 1).filter(|&i| i < d.rail(rail).len()),
        Vertical::Below => e.checked_sub(1),
    }
}

/// Arc edge leaving the leg or entering the head.
fn terminal_edge(d: &RailKnotoidDiagram, rail: Rail) -> EdgeRef {
    match rail {
        Rail::One => EdgeRef::Arc(0),
        Rail::Two => EdgeRef::Arc(d.arc_events.len()),
    }
}

/// Heights among three strands are acyclic iff one strand lies over both others.
fn acyclic(over: impl Fn(usize, usize) -> bool) -> bool {
    (0..3).any(|i| (0..3).filter(|&j| j != i).all(|j| over(i, j)))
}

/// Consistency of a crossing triangle with its signs.
///
/// Strand `k` meets the other two strands in the order given by
/// `first_partner[k]`; `o(i, j)` is the sign of the crossing of strands `i`
/// and `j`, negated when `i` is the under strand. Placing the triangle's
/// corners at fixed points determines every strand direction, and a real
/// triangle agrees with that placement, or with its mirror image, at all
/// three corners at once.
fn triangle_consistent(first_partner: [usize; 3], o: impl Fn(usize, usize) -> i32) -> bool {
    let corner = |i: usize, j: usize| -> (i32, i32) {
        match (i.min(j), i.max(j)) {
            (0, 1) => (0, 0),
            (0, 2) => (1, 0),
            _ => (0, 1),
        }
    };
    let dir = |k: usize| {
        let first = first_partner[k];
        let second = 3 - k - first;
        let (a, b) = (corner(k, first), corner(k, second));
        (b.0 - a.0, b.1 - a.1)
    };
    let g = |i: usize, j: usize| {
        let (di, dj) = (dir(i), dir(j));
        (di.0 * dj.1 - di.1 * dj.0).signum()
    };
    let p01 = o(0, 1) * g(0, 1);
    p01 == o(0, 2) * g(0, 2) && p01 == o(1, 2) * g(1, 2)
}

pub(super) fn rewrite(d: &RailKnotoidDiagram, m: &Move) -> Rule {
    match *m {
        Move::R1Add { gap, sign, over_first } => r1_add(d, gap, sign, over_first),
        Move::R1Remove { pos } => r1_remove(d, pos),
        Move::R2Add { gaps, over_first, reversed, first_sign } => r2_add(d, gaps, over_first, reversed, first_sign),
        Move::R2Remove { pos } => r2_remove(d, pos),
        Move::R3 { pos } => r3(d, pos),
        Move::RailR1Add { rail, at, flag, dir } => rail_r1_add(d, rail, at, flag, dir),
        Move::RailR1Remove { rail } => rail_r1_remove(d, rail),
        Move::RailR2Add { rail, gap, rail_gap, flag, first_dir, first_lower } => {
            rail_r2_add(d, rail, gap, rail_gap, flag, first_dir, first_lower)
        }
        Move::RailR2Remove { rail, pos } => rail_r2_remove(d, rail, pos),
        Move::RailR3 { rail, rail_pos, cross } => rail_r3(d, rail, rail_pos, cross),
        Move::SlideAdd { rail, toward, side } => slide_add(d, rail, toward, side),
        Move::SlideRemove { rail, toward } => slide_remove(d, rail, toward),
    }
}

fn r1_add(d: &RailKnotoidDiagram, gap: usize, sign: Sign, over_first: bool) -> Rule {
    if gap > d.arc_events.len() {
        return fail(format!("gap {gap} is past the end of the arc"));
    }
    let x = d.fresh_id();
    let (first, second) = if over_first { (Role::Over, Role::Under) } else { (Role::Under, Role::Over) };
    let mut out = d.clone();
    out.self_crossings.insert(x, sign);
    out.arc_events.insert(gap, ArcEvent::SelfPass { id: x, role: second });
    out.arc_events.insert(gap, ArcEvent::SelfPass { id: x, role: first });
    Ok(Outcome { result: out, cell: None, inverse: Move::R1Remove { pos: gap } })
}

fn r1_remove(d: &RailKnotoidDiagram, pos: usize) -> Rule {
    let (Some((a, _)), Some((b, _))) = (self_pass(d, pos), self_pass(d, pos + 1)) else {
        return fail(format!("events {pos} and {} are not both self passes", pos + 1));
    };
    if a != b {
        return fail(format!("events {pos} and {} belong to different crossings", pos + 1));
    }
    let first_over = self_pass(d, pos).map(|(_, r)| r == Role::Over).unwrap_or(false);
    let sign = d.self_crossings[&a];
    let mut out = d.clone();
    out.arc_events.drain(pos..pos + 2);
    out.self_crossings.remove(&a);
    Ok(Outcome {
        result: out,
        cell: Some(vec![EdgeRef::Arc(pos + 1)]),
        inverse: Move::R1Add { gap: pos, sign, over_first: first_over },
    })
}

fn r2_add(d: &RailKnotoidDiagram, gaps: [usize; 2], over_first: bool, reversed: bool, first_sign: Sign) -> Rule {
    let [g1, g2] = gaps;
    if !(g1 <= g2 && g2 <= d.arc_events.len()) {
        return fail(format!("gaps {g1} and {g2} must be ordered and within the arc"));
    }
    let a = d.fresh_id();
    let b = a + 1;
    let (r1, r2) = if over_first { (Role::Over, Role::Under) } else { (Role::Under, Role::Over) };
    let mut out = d.clone();
    out.self_crossings.insert(a, first_sign);
    out.self_crossings.insert(b, first_sign.flip());
    let (p, q) = if reversed { (b, a) } else { (a, b) };
    out.arc_events.insert(g2, ArcEvent::SelfPass { id: q, role: r2 });
    out.arc_events.insert(g2, ArcEvent::SelfPass { id: p, role: r2 });
    out.arc_events.insert(g1, ArcEvent::SelfPass { id: b, role: r1 });
    out.arc_events.insert(g1, ArcEvent::SelfPass { id: a, role: r1 });
    Ok(Outcome { result: out, cell: None, inverse: Move::R2Remove { pos: [g1, g2 + 2] } })
}

fn r2_remove(d: &RailKnotoidDiagram, pos: [usize; 2]) -> Rule {
    let [p, q] = pos;
    if p + 1 >= q {
        return fail("the two strand segments overlap");
    }
    let seg = |k: usize| Some((self_pass(d, k)?, self_pass(d, k + 1)?));
    let (Some(((a, ra), (b, rb))), Some(((c, rc), (e, re)))) = (seg(p), seg(q)) else {
        return fail("a strand segment is not a pair of self passes");
    };
    if a == b || ra != rb {
        return fail(format!("events {p}, {} are not two passes at the same height", p + 1));
    }
    if rc != re || rc == ra {
        return fail(format!("events {q}, {} are not the opposite passes", q + 1));
    }
    let reversed = match (c, e) {
        _ if (c, e) == (a, b) => false,
        _ if (c, e) == (b, a) => true,
        _ => return fail("the segments do not share both crossings"),
    };
    let sa = d.self_crossings[&a];
    if sa == d.self_crossings[&b] {
        return fail("the crossings have equal signs");
    }
    let mut out = d.clone();
    out.arc_events.drain(q..q + 2);
    out.arc_events.drain(p..p + 2);
    out.self_crossings.remove(&a);
    out.self_crossings.remove(&b);
    Ok(Outcome {
        result: out,
        cell: Some(vec![EdgeRef::Arc(p + 1), EdgeRef::Arc(q + 1)]),
        inverse: Move::R2Add { gaps: [p, q - 2], over_first: ra == Role::Over, reversed, first_sign: sa },
    })
}

fn r3(d: &RailKnotoidDiagram, pos: [usize; 3]) -> Rule {
    if !(pos[0] + 1 < pos[1] && pos[1] + 1 < pos[2]) {
        return fail("segments must be disjoint and increasing");
    }
    let mut segs = [[(0, Role::Over); 2]; 3];
    for (k, &p) in pos.iter().enumerate() {
        match (self_pass(d, p), self_pass(d, p + 1)) {
            (Some(u), Some(v)) if u.0 != v.0 => segs[k] = [u, v],
            _ => return fail(format!("events {p}, {} are not passes of two crossings", p + 1)),
        }
    }
    // Crossing shared by segments i and j, and its pass on segment i.
    let shared = |i: usize, j: usize| -> Option<(CrossingId, Role, usize)> {
        let mut found = None;
        for (slot, &(id, role)) in segs[i].iter().enumerate() {
            if segs[j].iter().any(|&(other, _)| other == id) {
                if found.is_some() {
                    return None;
                }
                found = Some((id, role, slot));
            }
        }
        found
    };
    let pairs = [(0, 1), (0, 2), (1, 2)];
    for &(i, j) in &pairs {
        if shared(i, j).is_none() {
            return fail(format!("segments {i} and {j} do not share exactly one crossing"));
        }
    }
    let over = |i: usize, j: usize| shared(i, j).unwrap().1 == Role::Over;
    if !acyclic(over) {
        return fail("no segment lies over both others");
    }
    let first_partner: [usize; 3] =
        std::array::from_fn(|k| (0..3).find(|&j| j != k && shared(k, j).unwrap().2 == 0).unwrap());
    let o = |i: usize, j: usize| {
        let (id, role, _) = shared(i, j).unwrap();
        d.self_crossings[&id].value() * if role == Role::Over { 1 } else { -1 }
    };
    if !triangle_consistent(first_partner, o) {
        return fail("the crossing signs do not bound a triangle");
    }
    let mut out = d.clone();
    for &p in &pos {
        out.arc_events.swap(p, p + 1);
    }
    Ok(Outcome {
        result: out,
        cell: Some(pos.iter().map(|&p| EdgeRef::Arc(p + 1)).collect()),
        inverse: Move::R3 { pos },
    })
}

fn rail_r1_add(d: &RailKnotoidDiagram, rail: Rail, at: Vertical, flag: Flag, dir: Dir) -> Rule {
    let e = d.endpoint_position(rail).expect("valid diagram");
    let id = d.fresh_id();
    let mut out = d.clone();
    let item = RailItem::Crossing(RailCrossing { id, flag, dir });
    out.rail_mut(rail).insert(if at == Vertical::Above { e + 1 } else { e }, item);
    let ev = ArcEvent::RailPass { rail, id };
    match rail {
        Rail::One => out.arc_events.insert(0, ev),
        Rail::Two => out.arc_events.push(ev),
    }
    Ok(Outcome { result: out, cell: None, inverse: Move::RailR1Remove { rail } })
}

fn rail_r1_remove(d: &RailKnotoidDiagram, rail: Rail) -> Rule {
    let n = d.arc_events.len();
    if n == 0 {
        return fail("the arc has no events");
    }
    let t = if rail == Rail::One { 0 } else { n - 1 };
    let ArcEvent::RailPass { rail: r, id } = d.arc_events[t] else {
        return fail("the terminal event is not a rail pass");
    };
    if r != rail {
        return fail("the terminal event crosses the other rail");
    }
    let e = d.endpoint_position(rail).expect("valid diagram");
    let i = rail_index(d, rail, id);
    if i.abs_diff(e) != 1 {
        return fail("the terminal rail crossing is not next to the endpoint");
    }
    let c = rail_crossing_at(d, rail, i).unwrap();
    let mut out = d.clone();
    out.arc_events.remove(t);
    out.rail_mut(rail).remove(i);
    let at = if i > e { Vertical::Above } else { Vertical::Below };
    Ok(Outcome {
        result: out,
        cell: Some(vec![terminal_edge(d, rail), EdgeRef::Rail(rail, i.max(e))]),
        inverse: Move::RailR1Add { rail, at, flag: c.flag, dir: c.dir },
    })
}

fn rail_r2_add(
    d: &RailKnotoidDiagram,
    rail: Rail,
    gap: usize,
    rail_gap: usize,
    flag: Flag,
    first_dir: Dir,
    first_lower: bool,
) -> Rule {
    if gap > d.arc_events.len() || rail_gap > d.rail(rail).len() {
        return fail("insertion point out of range");
    }
    let c1 = RailCrossing { id: d.fresh_id(), flag, dir: first_dir };
    let c2 = RailCrossing { id: c1.id + 1, flag, dir: first_dir.flip() };
    let mut out = d.clone();
    let (lower, upper) = if first_lower { (c1, c2) } else { (c2, c1) };
    out.rail_mut(rail).insert(rail_gap, RailItem::Crossing(upper));
    out.rail_mut(rail).insert(rail_gap, RailItem::Crossing(lower));
    out.arc_events.insert(gap, ArcEvent::RailPass { rail, id: c2.id });
    out.arc_events.insert(gap, ArcEvent::RailPass { rail, id: c1.id });
    Ok(Outcome { result: out, cell: None, inverse: Move::RailR2Remove { rail, pos: gap } })
}

fn rail_r2_remove(d: &RailKnotoidDiagram, rail: Rail, pos: usize) -> Rule {
    let pass = |k: usize| match d.arc_events.get(k) {
        Some(&ArcEvent::RailPass { rail: r, id }) if r == rail => Some(id),
        _ => None,
    };
    let (Some(id1), Some(id2)) = (pass(pos), pass(pos + 1)) else {
        return fail(format!("events {pos}, {} are not both passes of this rail", pos + 1));
    };
    let (i1, i2) = (rail_index(d, rail, id1), rail_index(d, rail, id2));
    if i1.abs_diff(i2) != 1 {
        return fail("the crossings are not adjacent on the rail");
    }
    let (c1, c2) = (rail_crossing_at(d, rail, i1).unwrap(), rail_crossing_at(d, rail, i2).unwrap());
    if c1.flag != c2.flag {
        return fail("the crossings have different heights");
    }
    if c1.dir == c2.dir {
        return fail("the crossings run in the same direction");
    }
    let mut out = d.clone();
    out.arc_events.drain(pos..pos + 2);
    out.rail_mut(rail).drain(i1.min(i2)..i1.min(i2) + 2);
    Ok(Outcome {
        result: out,
        cell: Some(vec![EdgeRef::Arc(pos + 1), EdgeRef::Rail(rail, i1.max(i2))]),
        inverse: Move::RailR2Add {
            rail,
            gap: pos,
            rail_gap: i1.min(i2),
            flag: c1.flag,
            first_dir: c1.dir,
            first_lower: i1 < i2,
        },
    })
}

fn rail_r3(d: &RailKnotoidDiagram, rail: Rail, rail_pos: usize, x: CrossingId) -> Rule {
    let (Some(c1), Some(c2)) = (rail_crossing_at(d, rail, rail_pos), rail_crossing_at(d, rail, rail_pos + 1)) else {
        return fail("the rail items are not two adjacent crossings");
    };
    let Some((po, pu)) = d.self_pass_positions(x) else {
        return fail(format!("{x} is not a self-crossing"));
    };
    let (a1, a2) = (rail_pass_position(d, rail, c1.id), rail_pass_position(d, rail, c2.id));
    let (x1, x2) = if po.abs_diff(a1) == 1 && pu.abs_diff(a2) == 1 {
        (po, pu)
    } else if pu.abs_diff(a1) == 1 && po.abs_diff(a2) == 1 {
        (pu, po)
    } else {
        return fail("the self-crossing is not next to both rail passes");
    };
    // Strands: 0 the rail, 1 through c1 and 2 through c2.
    let x1_over = x1 == po;
    let over = |i: usize, j: usize| match (i, j) {
        (0, 1) => c1.flag == Flag::ArcUnderRail,
        (0, 2) => c2.flag == Flag::ArcUnderRail,
        (1, 2) => x1_over,
        (1, 0) => c1.flag == Flag::ArcOverRail,
        (2, 0) => c2.flag == Flag::ArcOverRail,
        _ => !x1_over,
    };
    if !acyclic(over) {
        return fail("no strand lies over both others");
    }
    let first_partner = [1, if a1 < x1 { 0 } else { 2 }, if a2 < x2 { 0 } else { 1 }];
    let rail_o = |c: RailCrossing| if c.dir == Dir::LeftToRight { -1 } else { 1 };
    let x_o = d.self_crossings[&x].value() * if x1_over { 1 } else { -1 };
    let o = |i: usize, j: usize| match (i.min(j), i.max(j)) {
        (0, 1) => rail_o(c1) * if i == 0 { 1 } else { -1 },
        (0, 2) => rail_o(c2) * if i == 0 { 1 } else { -1 },
        _ => x_o * if i == 1 { 1 } else { -1 },
    };
    if !triangle_consistent(first_partner, o) {
        return fail("the crossing data do not bound a triangle");
    }
    let mut out = d.clone();
    out.rail_mut(rail).swap(rail_pos, rail_pos + 1);
    out.arc_events.swap(a1, x1);
    out.arc_events.swap(a2, x2);
    Ok(Outcome {
        result: out,
        cell: Some(vec![
            EdgeRef::Rail(rail, rail_pos + 1),
            EdgeRef::Arc(a1.max(x1)),
            EdgeRef::Arc(a2.max(x2)),
        ]),
        inverse: Move::RailR3 { rail, rail_pos, cross: x },
    })
}

/// Sign of the crossing between the terminal segment and the strand through `c`.
fn slide_sign(c: RailCrossing, terminal_dir: (i32, i32)) -> (Role, Sign) {
    let terminal_role = if c.flag == Flag::ArcUnderRail { Role::Over } else { Role::Under };
    let s_dir = c.dir.vector();
    let sign = match terminal_role {
        Role::Over => Sign::of_frame(terminal_dir, s_dir),
        Role::Under => Sign::of_frame(s_dir, terminal_dir),
    };
    (terminal_role, sign)
}

/// Direction of the terminal segment when the crossing lies `at` the endpoint.
fn terminal_dir(rail: Rail, at: Vertical) -> (i32, i32) {
    match rail {
        Rail::One => (0, at.dy()),
        Rail::Two => (0, -at.dy()),
    }
}

fn slide_add(d: &RailKnotoidDiagram, rail: Rail, toward: Vertical, side: crate::diagram::Side) -> Rule {
    let Some(ci) = beside_endpoint(d, rail, toward) else {
        return fail("no rail item on that side of the endpoint");
    };
    let Some(c) = rail_crossing_at(d, rail, ci) else { unreachable!("one endpoint per rail") };
    let n = d.arc_events.len();
    let a = rail_pass_position(d, rail, c.id);
    if (rail == Rail::One && a == 0) || (rail == Rail::Two && a == n - 1) {
        return fail("the crossing lies on the terminal segment itself");
    }
    let e = d.endpoint_position(rail).unwrap();
    // After the slide the crossing lies on the opposite side of the endpoint.
    let (terminal_role, sign) = slide_sign(c, terminal_dir(rail, toward.flip()));
    let x = d.fresh_id();
    let mut out = d.clone();
    out.self_crossings.insert(x, sign);
    let s_pass = ArcEvent::SelfPass { id: x, role: terminal_role.flip() };
    out.arc_events.insert(if c.dir.target() == side { a + 1 } else { a }, s_pass);
    let t_pass = ArcEvent::SelfPass { id: x, role: terminal_role };
    match rail {
        Rail::One => out.arc_events.insert(0, t_pass),
        Rail::Two => out.arc_events.push(t_pass),
    }
    out.rail_mut(rail).swap(e, ci);
    Ok(Outcome { result: out, cell: None, inverse: Move::SlideRemove { rail, toward: toward.flip() } })
}

fn slide_remove(d: &RailKnotoidDiagram, rail: Rail, toward: Vertical) -> Rule {
    let Some(ci) = beside_endpoint(d, rail, toward) else {
        return fail("no rail item on that side of the endpoint");
    };
    let Some(c) = rail_crossing_at(d, rail, ci) else { unreachable!("one endpoint per rail") };
    let n = d.arc_events.len();
    let t = if rail == Rail::One { 0 } else { n - 1 };
    let Some((x, terminal_role)) = self_pass(d, t) else {
        return fail("the terminal event is not a self pass");
    };
    let (po, pu) = d.self_pass_positions(x).unwrap();
    let sp = if po == t { pu } else { po };
    let a = rail_pass_position(d, rail, c.id);
    if sp.abs_diff(a) != 1 {
        return fail("the terminal crossing is not next to the rail pass");
    }
    let (want_role, want_sign) = slide_sign(c, terminal_dir(rail, toward));
    if terminal_role != want_role {
        return fail("the terminal crossing heights do not match the rail crossing");
    }
    if d.self_crossings[&x] != want_sign {
        return fail("the terminal crossing has the wrong sign");
    }
    let e = d.endpoint_position(rail).unwrap();
    let mut out = d.clone();
    out.arc_events.remove(sp.max(t));
    out.arc_events.remove(sp.min(t));
    out.self_crossings.remove(&x);
    out.rail_mut(rail).swap(e, ci);
    let a_after = rail_pass_position(&out, rail, c.id);
    if (rail == Rail::One && a_after == 0) || (rail == Rail::Two && a_after == out.arc_events.len() - 1) {
        return fail("the crossing would end up on the terminal segment");
    }
    let side = if sp > a { c.dir.target() } else { c.dir.flip().target() };
    Ok(Outcome {
        result: out,
        cell: Some(vec![terminal_edge(d, rail), EdgeRef::Arc(sp.max(a)), EdgeRef::Rail(rail, e.max(ci))]),
        inverse: Move::SlideAdd { rail, toward: toward.flip(), side },
    })
}
