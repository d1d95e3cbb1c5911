//! Companion loops of rail knotoid diagrams and forget-rails closures.
//!
//! The closing path starts at the head, runs along rail 2 to the far end
//! (top for [`ClosureSide::Over`], bottom for [`ClosureSide::Under`]), crosses
//! to rail 1 without meeting anything and returns along rail 1 to the leg.
//! Every rail crossing met on the way becomes a crossing of the loop; those on
//! the other side of an endpoint disappear.

use crate::diagram::{
    ArcEvent, CrossPass, DiagramError, LinkDiagram, Orientation, Rail, RailItem, RailKnotoidDiagram, Role, Sign,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosureSide {
    Over,
    Under,
}

impl ClosureSide {
    pub const BOTH: [ClosureSide; 2] = [ClosureSide::Over, ClosureSide::Under];
}

/// Height rule for rail crossings met by the closing path.
#[derive(Clone, Copy)]
enum Heights {
    /// Keep the diagram's over/under data.
    Inherit,
    /// The closing path lies above (or below) everything it meets.
    Forced(Role),
}

/// The over or under companion loop, oriented from the leg to the head.
pub fn companion(d: &RailKnotoidDiagram, side: ClosureSide) -> Result<LinkDiagram, DiagramError> {
    close(d, side, Heights::Inherit)
}

/// The knotoid closure along the same path with the connecting strand
/// passing entirely over (side Over) or under (side Under).
pub fn forget_rails_closure(d: &RailKnotoidDiagram, side: ClosureSide) -> Result<LinkDiagram, DiagramError> {
    let role = match side {
        ClosureSide::Over => Role::Over,
        ClosureSide::Under => Role::Under,
    };
    close(d, side, Heights::Forced(role))
}

fn close(d: &RailKnotoidDiagram, side: ClosureSide, heights: Heights) -> Result<LinkDiagram, DiagramError> {
    d.ensure_valid()?;
    // Closing path: rail 2 away from the head, then rail 1 back to the leg.
    let mut path: Vec<(RailItem, i32)> = Vec::new();
    for (rail, toward_far_end) in [(Rail::Two, true), (Rail::One, false)] {
        let items = d.rail(rail);
        let e = d.endpoint_position(rail).expect("validated");
        let (mut segment, up): (Vec<RailItem>, bool) = match side {
            ClosureSide::Over => (items[e + 1..].to_vec(), toward_far_end),
            ClosureSide::Under => (items[..e].to_vec(), !toward_far_end),
        };
        if !up {
            segment.reverse();
        }
        path.extend(segment.into_iter().map(|item| (item, if up { 1 } else { -1 })));
    }

    let mut signs = d.self_crossings.clone();
    let mut converted = std::collections::BTreeMap::new();
    let mut closing = Vec::with_capacity(path.len());
    for (item, vy) in path {
        let RailItem::Crossing(c) = item else { unreachable!("one endpoint per rail") };
        let arc_role = match heights {
            Heights::Inherit => c.flag.arc_role(),
            Heights::Forced(closure_role) => closure_role.flip(),
        };
        let (arc_dir, closure_dir) = (c.dir.vector(), (0, vy));
        let sign = match arc_role {
            Role::Over => Sign::of_frame(arc_dir, closure_dir),
            Role::Under => Sign::of_frame(closure_dir, arc_dir),
        };
        signs.insert(c.id, sign);
        converted.insert(c.id, arc_role);
        closing.push(CrossPass { id: c.id, role: arc_role.flip() });
    }

    let mut component: Vec<CrossPass> = d
        .arc_events
        .iter()
        .filter_map(|ev| match *ev {
            ArcEvent::SelfPass { id, role } => Some(CrossPass { id, role }),
            ArcEvent::RailPass { id, .. } => converted.get(&id).map(|&role| CrossPass { id, role }),
        })
        .collect();
    component.extend(closing);
    Ok(LinkDiagram { components: vec![component], crossing_signs: signs })
}

/// Reverses the loop for [`Orientation::Minus`]; signs are unaffected since
/// both strands of every crossing turn around.
pub fn orient(l: &LinkDiagram, o: Orientation) -> Result<LinkDiagram, DiagramError> {
    if l.components.len() != 1 {
        return Err(DiagramError::InvalidLink(format!(
            "expected a single component, found {}",
            l.components.len()
        )));
    }
    let mut out = l.clone();
    if o == Orientation::Minus {
        out.components[0].reverse();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{Dir, Flag, RailCrossing};

    fn one_rail_crossing() -> RailKnotoidDiagram {
        let mut d = RailKnotoidDiagram::empty();
        d.arc_events.push(ArcEvent::RailPass { rail: Rail::One, id: 1 });
        d.rails[0].push(RailItem::Crossing(RailCrossing { id: 1, flag: Flag::ArcUnderRail, dir: Dir::LeftToRight }));
        d
    }

    #[test]
    fn empty_closes_to_unknot() {
        let d = RailKnotoidDiagram::empty();
        for side in ClosureSide::BOTH {
            assert_eq!(companion(&d, side).unwrap(), LinkDiagram::unknot());
            assert_eq!(forget_rails_closure(&d, side).unwrap(), LinkDiagram::unknot());
        }
    }

    #[test]
    fn single_rail_crossing() {
        let d = one_rail_crossing();
        let over = companion(&d, ClosureSide::Over).unwrap();
        assert_eq!(over.render_gauss(), "U1+ O1+");
        assert_eq!(companion(&d, ClosureSide::Under).unwrap(), LinkDiagram::unknot());
    }

    #[test]
    fn forced_heights_override_flags() {
        let d = one_rail_crossing();
        assert_eq!(forget_rails_closure(&d, ClosureSide::Over).unwrap().render_gauss(), "U1+ O1+");
        let mut flipped = d.clone();
        flipped.rails[0][1] =
            RailItem::Crossing(RailCrossing { id: 1, flag: Flag::ArcOverRail, dir: Dir::LeftToRight });
        assert_eq!(companion(&flipped, ClosureSide::Over).unwrap().render_gauss(), "O1- U1-");
        assert_eq!(forget_rails_closure(&flipped, ClosureSide::Over).unwrap().render_gauss(), "U1+ O1+");
    }

    #[test]
    fn closing_path_order() {
        // Two crossings on each rail, one above and one below each endpoint.
        let mut d = RailKnotoidDiagram::empty();
        let c = |id, flag| RailItem::Crossing(RailCrossing { id, flag, dir: Dir::LeftToRight });
        d.rails[0] = vec![c(1, Flag::ArcOverRail), RailItem::Endpoint, c(2, Flag::ArcOverRail)];
        d.rails[1] = vec![c(3, Flag::ArcUnderRail), RailItem::Endpoint, c(4, Flag::ArcUnderRail)];
        d.arc_events = [(Rail::One, 2), (Rail::One, 1), (Rail::Two, 3), (Rail::Two, 4)]
            .into_iter()
            .map(|(rail, id)| ArcEvent::RailPass { rail, id })
            .collect();
        let over = companion(&d, ClosureSide::Over).unwrap();
        let ids: Vec<_> = over.components[0].iter().map(|p| p.id).collect();
        assert_eq!(ids, vec![2, 4, 4, 2]);
        let under = companion(&d, ClosureSide::Under).unwrap();
        let ids: Vec<_> = under.components[0].iter().map(|p| p.id).collect();
        assert_eq!(ids, vec![1, 3, 3, 1]);
    }

    #[test]
    fn orientation_reversal() {
        let l = companion(&one_rail_crossing(), ClosureSide::Over).unwrap();
        let minus = orient(&l, Orientation::Minus).unwrap();
        assert_eq!(minus.render_gauss(), "O1+ U1+");
        assert_eq!(minus.writhe(), l.writhe());
        assert_eq!(orient(&l, Orientation::Plus).unwrap(), l);
        let two = LinkDiagram { components: vec![vec![], vec![]], crossing_signs: Default::default() };
        assert!(orient(&two, Orientation::Plus).is_err());
    }
}
