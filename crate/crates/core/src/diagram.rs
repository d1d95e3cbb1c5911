//! Combinatorial model of rail knotoid diagrams and closed link diagrams.
//!
//! A rail knotoid diagram is stored as a signed Gauss code of its arc plus the
//! bottom-to-top order of items on each rail. The global frame is fixed: both
//! rails point up and rail 1 stands to the left of rail 2. Crossing signs,
//! rail-crossing directions and all geometry derived from them refer to it.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

mod json;
pub mod planar;

pub use json::{parse_diagram, serialize_diagram};

pub type CrossingId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    /// Sign of a crossing whose over and under strands run along the given
    /// directions: positive iff `under` is counterclockwise from `over`.
    pub fn of_frame(over: (i32, i32), under: (i32, i32)) -> Sign {
        let cross = over.0 * under.1 - over.1 * under.0;
        debug_assert!(cross != 0, "parallel strands");
        if cross > 0 {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn flip(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }

    fn letter(self) -> char {
        match self {
            Role::Over => 'O',
            Role::Under => 'U',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rail {
    One,
    Two,
}

impl Rail {
    pub const BOTH: [Rail; 2] = [Rail::One, Rail::Two];

    pub fn index(self) -> usize {
        match self {
            Rail::One => 0,
            Rail::Two => 1,
        }
    }

    pub fn number(self) -> u8 {
        self.index() as u8 + 1
    }

    pub fn from_number(n: u64) -> Option<Rail> {
        match n {
            1 => Some(Rail::One),
            2 => Some(Rail::Two),
            _ => None,
        }
    }
}

/// Height of the arc relative to the rail at a rail crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    ArcOverRail,
    ArcUnderRail,
}

impl Flag {
    /// Role of the arc at this crossing.
    pub fn arc_role(self) -> Role {
        match self {
            Flag::ArcOverRail => Role::Over,
            Flag::ArcUnderRail => Role::Under,
        }
    }
}

/// Direction in which the arc crosses an upward rail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    LeftToRight,
    RightToLeft,
}

impl Dir {
    pub fn vector(self) -> (i32, i32) {
        match self {
            Dir::LeftToRight => (1, 0),
            Dir::RightToLeft => (-1, 0),
        }
    }

    pub fn flip(self) -> Dir {
        match self {
            Dir::LeftToRight => Dir::RightToLeft,
            Dir::RightToLeft => Dir::LeftToRight,
        }
    }

    /// Direction of travel from `side` across the rail.
    pub fn leaving(side: Side) -> Dir {
        match side {
            Side::Left => Dir::LeftToRight,
            Side::Right => Dir::RightToLeft,
        }
    }

    /// The side of the rail the arc is on after crossing.
    pub fn target(self) -> Side {
        match self {
            Dir::LeftToRight => Side::Right,
            Dir::RightToLeft => Side::Left,
        }
    }
}

/// A side of a rail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Left, Side::Right];

    pub fn x(self) -> i32 {
        match self {
            Side::Left => -1,
            Side::Right => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArcEvent {
    SelfPass { id: CrossingId, role: Role },
    RailPass { rail: Rail, id: CrossingId },
}

impl ArcEvent {
    pub fn id(&self) -> CrossingId {
        match *self {
            ArcEvent::SelfPass { id, .. } | ArcEvent::RailPass { id, .. } => id,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RailCrossing {
    pub id: CrossingId,
    pub flag: Flag,
    pub dir: Dir,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RailItem {
    /// The leg on rail 1, the head on rail 2.
    Endpoint,
    Crossing(RailCrossing),
}

/// A rail knotoid diagram as a signed Gauss code.
///
/// `self_crossings` holds the oriented sign of every self-crossing of the arc
/// (both strands oriented leg to head). `arc_events` lists the arc's passes
/// from leg to head and `rails[r]` the items of rail `r + 1` from bottom to top.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RailKnotoidDiagram {
    pub self_crossings: BTreeMap<CrossingId, Sign>,
    pub arc_events: Vec<ArcEvent>,
    pub rails: [Vec<RailItem>; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("self-crossing {id}: expected one over and one under pass, found {over} over and {under} under")]
    SelfPasses { id: CrossingId, over: usize, under: usize },
    #[error("arc event {position}: self-crossing {id} has no sign")]
    UnsignedSelfCrossing { id: CrossingId, position: usize },
    #[error("rail crossing {id}: expected one arc pass, found {count}")]
    RailArcPasses { id: CrossingId, count: usize },
    #[error("rail crossing {id}: expected one rail entry, found {count}")]
    RailEntries { id: CrossingId, count: usize },
    #[error("rail crossing {id}: arc pass names rail {event_rail} but the crossing sits on rail {list_rail}")]
    RailMismatch { id: CrossingId, event_rail: u8, list_rail: u8 },
    #[error("rail {rail}: expected exactly one endpoint, found {count}")]
    EndpointCount { rail: u8, count: usize },
    #[error("crossing id {id} is used both as a self-crossing and as a rail crossing")]
    SharedId { id: CrossingId },
}

impl Violation {
    pub fn id(&self) -> Option<CrossingId> {
        match *self {
            Violation::SelfPasses { id, .. }
            | Violation::UnsignedSelfCrossing { id, .. }
            | Violation::RailArcPasses { id, .. }
            | Violation::RailEntries { id, .. }
            | Violation::RailMismatch { id, .. }
            | Violation::SharedId { id } => Some(id),
            Violation::EndpointCount { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed diagram document: {0}")]
    Syntax(String),
    #[error("invalid diagram: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("invalid link diagram: {0}")]
    InvalidLink(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

impl RailKnotoidDiagram {
    /// The arc running straight from the leg to the head.
    pub fn empty() -> Self {
        RailKnotoidDiagram {
            self_crossings: BTreeMap::new(),
            arc_events: Vec::new(),
            rails: [vec![RailItem::Endpoint], vec![RailItem::Endpoint]],
        }
    }

    pub fn rail(&self, rail: Rail) -> &[RailItem] {
        &self.rails[rail.index()]
    }

    pub fn rail_mut(&mut self, rail: Rail) -> &mut Vec<RailItem> {
        &mut self.rails[rail.index()]
    }

    pub fn rail_crossing_count(&self) -> usize {
        self.rails.iter().map(|r| r.len().saturating_sub(1)).sum()
    }

    pub fn crossing_count(&self) -> usize {
        self.self_crossings.len() + self.rail_crossing_count()
    }

    /// Smallest id not used by any crossing.
    pub fn fresh_id(&self) -> CrossingId {
        let max_event = self.arc_events.iter().map(|e| e.id()).max();
        let max_self = self.self_crossings.keys().next_back().copied();
        max_event.max(max_self).map_or(1, |m| m + 1)
    }

    pub fn endpoint_position(&self, rail: Rail) -> Option<usize> {
        self.rail(rail).iter().position(|i| *i == RailItem::Endpoint)
    }

    /// Rail, position in the rail list and data of a rail crossing.
    pub fn find_rail_crossing(&self, id: CrossingId) -> Option<(Rail, usize, RailCrossing)> {
        Rail::BOTH.into_iter().find_map(|r| {
            self.rail(r).iter().enumerate().find_map(|(i, item)| match item {
                RailItem::Crossing(c) if c.id == id => Some((r, i, *c)),
                _ => None,
            })
        })
    }

    pub fn arc_position(&self, event: ArcEvent) -> Option<usize> {
        self.arc_events.iter().position(|e| *e == event)
    }

    /// Positions of the over and under pass of a self-crossing.
    pub fn self_pass_positions(&self, id: CrossingId) -> Option<(usize, usize)> {
        let over = self.arc_position(ArcEvent::SelfPass { id, role: Role::Over })?;
        let under = self.arc_position(ArcEvent::SelfPass { id, role: Role::Under })?;
        Some((over, under))
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut self_counts: BTreeMap<CrossingId, (usize, usize)> =
            self.self_crossings.keys().map(|&id| (id, (0, 0))).collect();
        let mut rail_passes: BTreeMap<CrossingId, Vec<Rail>> = BTreeMap::new();
        for (position, ev) in self.arc_events.iter().enumerate() {
            match *ev {
                ArcEvent::SelfPass { id, role } => {
                    if !self.self_crossings.contains_key(&id) {
                        out.push(Violation::UnsignedSelfCrossing { id, position });
                    }
                    let e = self_counts.entry(id).or_default();
                    match role {
                        Role::Over => e.0 += 1,
                        Role::Under => e.1 += 1,
                    }
                }
                ArcEvent::RailPass { rail, id } => rail_passes.entry(id).or_default().push(rail),
            }
        }
        for (&id, &(over, under)) in &self_counts {
            if over != 1 || under != 1 {
                out.push(Violation::SelfPasses { id, over, under });
            }
        }

        let mut rail_entries: BTreeMap<CrossingId, Vec<Rail>> = BTreeMap::new();
        for rail in Rail::BOTH {
            let mut endpoints = 0;
            for item in self.rail(rail) {
                match item {
                    RailItem::Endpoint => endpoints += 1,
                    RailItem::Crossing(c) => rail_entries.entry(c.id).or_default().push(rail),
                }
            }
            if endpoints != 1 {
                out.push(Violation::EndpointCount { rail: rail.number(), count: endpoints });
            }
        }
        let mut rail_ids: Vec<CrossingId> = rail_passes.keys().chain(rail_entries.keys()).copied().collect();
        rail_ids.sort_unstable();
        rail_ids.dedup();
        for id in rail_ids {
            let passes = rail_passes.get(&id).map_or(&[][..], |v| v.as_slice());
            let entries = rail_entries.get(&id).map_or(&[][..], |v| v.as_slice());
            if passes.len() != 1 {
                out.push(Violation::RailArcPasses { id, count: passes.len() });
            }
            if entries.len() != 1 {
                out.push(Violation::RailEntries { id, count: entries.len() });
            }
            if let ([p], [e]) = (passes, entries) {
                if p != e {
                    out.push(Violation::RailMismatch { id, event_rail: p.number(), list_rail: e.number() });
                }
            }
            if self_counts.contains_key(&id) {
                out.push(Violation::SharedId { id });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn ensure_valid(&self) -> Result<(), DiagramError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(DiagramError::Invalid(v))
        }
    }

    /// One-line Gauss-code rendering of the arc, e.g. `O1+ U2- R1:3u→`.
    pub fn render_gauss(&self) -> String {
        let mut words = Vec::with_capacity(self.arc_events.len());
        for ev in &self.arc_events {
            match *ev {
                ArcEvent::SelfPass { id, role } => {
                    let sign = self.self_crossings.get(&id).map_or('?', |s| s.symbol());
                    words.push(format!("{}{id}{sign}", role.letter()));
                }
                ArcEvent::RailPass { rail, id } => {
                    let (flag, dir) = match self.find_rail_crossing(id) {
                        Some((_, _, c)) => (
                            match c.flag {
                                Flag::ArcOverRail => 'o',
                                Flag::ArcUnderRail => 'u',
                            },
                            match c.dir {
                                Dir::LeftToRight => '→',
                                Dir::RightToLeft => '←',
                            },
                        ),
                        None => ('?', '?'),
                    };
                    words.push(format!("R{}:{id}{flag}{dir}", rail.number()));
                }
            }
        }
        words.join(" ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossPass {
    pub id: CrossingId,
    pub role: Role,
}

/// A closed link diagram: cyclic pass sequences plus oriented crossing signs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LinkDiagram {
    pub components: Vec<Vec<CrossPass>>,
    pub crossing_signs: BTreeMap<CrossingId, Sign>,
}

/// Orientation of a companion loop relative to the leg-to-head direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Plus,
    Minus,
}

impl LinkDiagram {
    /// The 0-crossing unknot.
    pub fn unknot() -> Self {
        LinkDiagram { components: vec![Vec::new()], crossing_signs: BTreeMap::new() }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossing_signs.len()
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        if self.components.is_empty() {
            return Err(DiagramError::InvalidLink("no components".into()));
        }
        let mut counts: BTreeMap<CrossingId, (usize, usize)> = BTreeMap::new();
        for p in self.components.iter().flatten() {
            let e = counts.entry(p.id).or_default();
            match p.role {
                Role::Over => e.0 += 1,
                Role::Under => e.1 += 1,
            }
        }
        for (id, (o, u)) in &counts {
            if (*o, *u) != (1, 1) {
                return Err(DiagramError::InvalidLink(format!(
                    "crossing {id} has {o} over and {u} under passes"
                )));
            }
            if !self.crossing_signs.contains_key(id) {
                return Err(DiagramError::InvalidLink(format!("crossing {id} has no sign")));
            }
        }
        if let Some(id) = self.crossing_signs.keys().find(|id| !counts.contains_key(id)) {
            return Err(DiagramError::InvalidLink(format!("crossing {id} has no passes")));
        }
        Ok(())
    }

    pub fn writhe(&self) -> i32 {
        self.crossing_signs.values().map(|s| s.value()).sum()
    }

    /// Components joined by ` | `, each rendered as `O1+ U2-`.
    pub fn render_gauss(&self) -> String {
        self.components
            .iter()
            .map(|c| {
                c.iter()
                    .map(|p| {
                        let sign = self.crossing_signs.get(&p.id).map_or('?', |s| s.symbol());
                        format!("{}{}{sign}", p.role.letter(), p.id)
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_gauss())
    }
}

impl fmt::Display for RailKnotoidDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_gauss())
    }
}
