//! Rail moves as rewrites of the Gauss code, random walks through them and a
//! greedy simplifier.
//!
//! A move is applicable when its local code pattern matches. On diagrams with
//! a planar realization the enumeration also demands that the move's cell be
//! an empty face, so that every enumerated move is a genuine planar move;
//! insertions are checked through their inverse on the result.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::planar::Embedding;
use crate::diagram::{CrossingId, Dir, Flag, Rail, RailKnotoidDiagram, Side, Sign};

mod rewrite;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    R1Add,
    R1Remove,
    R2Add,
    R2Remove,
    R3,
    RailR1Add,
    RailR1Remove,
    RailR2Add,
    RailR2Remove,
    RailR3,
    SlideAdd,
    SlideRemove,
}

impl MoveKind {
    pub const ALL: [MoveKind; 12] = [
        MoveKind::R1Add,
        MoveKind::R1Remove,
        MoveKind::R2Add,
        MoveKind::R2Remove,
        MoveKind::R3,
        MoveKind::RailR1Add,
        MoveKind::RailR1Remove,
        MoveKind::RailR2Add,
        MoveKind::RailR2Remove,
        MoveKind::RailR3,
        MoveKind::SlideAdd,
        MoveKind::SlideRemove,
    ];

    /// Curl moves change the rail brackets by a unit and are left out of
    /// regular walks.
    pub fn is_curl(self) -> bool {
        matches!(self, MoveKind::R1Add | MoveKind::R1Remove | MoveKind::RailR1Add | MoveKind::RailR1Remove)
    }

    pub fn is_removal(self) -> bool {
        matches!(
            self,
            MoveKind::R1Remove
                | MoveKind::R2Remove
                | MoveKind::RailR1Remove
                | MoveKind::RailR2Remove
                | MoveKind::SlideRemove
        )
    }

    pub fn is_insertion(self) -> bool {
        matches!(
            self,
            MoveKind::R1Add | MoveKind::R2Add | MoveKind::RailR1Add | MoveKind::RailR2Add | MoveKind::SlideAdd
        )
    }

    /// Crossings an insertion adds.
    fn growth(self) -> usize {
        match self {
            MoveKind::R1Add | MoveKind::RailR1Add | MoveKind::SlideAdd => 1,
            MoveKind::R2Add | MoveKind::RailR2Add => 2,
            _ => 0,
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Above or below a rail position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertical {
    Below,
    Above,
}

impl Vertical {
    pub const BOTH: [Vertical; 2] = [Vertical::Below, Vertical::Above];

    pub fn dy(self) -> i32 {
        match self {
            Vertical::Below => -1,
            Vertical::Above => 1,
        }
    }

    pub fn flip(self) -> Vertical {
        match self {
            Vertical::Below => Vertical::Above,
            Vertical::Above => Vertical::Below,
        }
    }
}

/// One move at one site. Arc positions index `arc_events`, gaps index the
/// slots between events (gap `k` lies just before event `k`), rail positions
/// index the rail order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    /// A curl at `gap` whose first pass is over when `over_first`.
    R1Add { gap: usize, sign: Sign, over_first: bool },
    /// Removes the curl whose passes are events `pos` and `pos + 1`.
    R1Remove { pos: usize },
    /// Pushes the strand at `gaps[1]` across the strand at `gaps[0]`; equal
    /// gaps fold one edge over itself. The first strand gets two passes of the
    /// same height; the second meets the new crossings in reverse order when
    /// `reversed`.
    R2Add { gaps: [usize; 2], over_first: bool, reversed: bool, first_sign: Sign },
    /// Removes the bigon between the pass pairs starting at `pos[0]` and `pos[1]`.
    R2Remove { pos: [usize; 2] },
    /// The triangle whose sides are the pass pairs starting at `pos`.
    R3 { pos: [usize; 3] },
    /// A terminal curl around the rail next to the endpoint.
    RailR1Add { rail: Rail, at: Vertical, flag: Flag, dir: Dir },
    RailR1Remove { rail: Rail },
    /// Pushes the arc at `gap` across the rail at `rail_gap`.
    RailR2Add { rail: Rail, gap: usize, rail_gap: usize, flag: Flag, first_dir: Dir, first_lower: bool },
    /// Removes the rail bigon whose passes are events `pos` and `pos + 1`.
    RailR2Remove { rail: Rail, pos: usize },
    /// Passes the self-crossing `cross` across the rail between rail items
    /// `rail_pos` and `rail_pos + 1`.
    RailR3 { rail: Rail, rail_pos: usize, cross: CrossingId },
    /// Slides the endpoint past its neighbour in direction `toward`; the new
    /// crossing on the neighbour's strand lies on `side` of the rail.
    SlideAdd { rail: Rail, toward: Vertical, side: Side },
    /// Slides the endpoint back toward `toward`, removing the terminal crossing.
    SlideRemove { rail: Rail, toward: Vertical },
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::R1Add { .. } => MoveKind::R1Add,
            Move::R1Remove { .. } => MoveKind::R1Remove,
            Move::R2Add { .. } => MoveKind::R2Add,
            Move::R2Remove { .. } => MoveKind::R2Remove,
            Move::R3 { .. } => MoveKind::R3,
            Move::RailR1Add { .. } => MoveKind::RailR1Add,
            Move::RailR1Remove { .. } => MoveKind::RailR1Remove,
            Move::RailR2Add { .. } => MoveKind::RailR2Add,
            Move::RailR2Remove { .. } => MoveKind::RailR2Remove,
            Move::RailR3 { .. } => MoveKind::RailR3,
            Move::SlideAdd { .. } => MoveKind::SlideAdd,
            Move::SlideRemove { .. } => MoveKind::SlideRemove,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("{kind} does not apply: {reason}")]
    NotApplicable { kind: MoveKind, reason: String },
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
}

/// Applies `m` after checking its pattern conditions.
///
/// Only the code pattern is checked here; use [`enumerate_moves`] for moves
/// that are also planar on realizable diagrams.
pub fn apply_move(d: &RailKnotoidDiagram, m: &Move) -> Result<RailKnotoidDiagram, MoveError> {
    d.ensure_valid().map_err(|e| MoveError::InvalidDiagram(e.to_string()))?;
    rewrite::rewrite(d, m)
        .map(|o| o.result)
        .map_err(|reason| MoveError::NotApplicable { kind: m.kind(), reason })
}

/// The move that undoes `m` on `apply_move(d, m)`.
pub fn inverse(d: &RailKnotoidDiagram, m: &Move) -> Result<Move, MoveError> {
    rewrite::rewrite(d, m).map(|o| o.inverse).map_err(|reason| MoveError::NotApplicable { kind: m.kind(), reason })
}

fn candidates(d: &RailKnotoidDiagram, kind: MoveKind) -> Vec<Move> {
    let n = d.arc_events.len();
    let bools = [false, true];
    let signs = [Sign::Pos, Sign::Neg];
    let flags = [Flag::ArcOverRail, Flag::ArcUnderRail];
    let dirs = [Dir::LeftToRight, Dir::RightToLeft];
    let mut out = Vec::new();
    match kind {
        MoveKind::R1Add => {
            for gap in 0..=n {
                for sign in signs {
                    for over_first in bools {
                        out.push(Move::R1Add { gap, sign, over_first });
                    }
                }
            }
        }
        MoveKind::R1Remove => out.extend((0..n.saturating_sub(1)).map(|pos| Move::R1Remove { pos })),
        MoveKind::R2Add => {
            for g2 in 0..=n {
                for g1 in 0..=g2 {
                    for over_first in bools {
                        for reversed in bools {
                            for first_sign in signs {
                                out.push(Move::R2Add { gaps: [g1, g2], over_first, reversed, first_sign });
                            }
                        }
                    }
                }
            }
        }
        MoveKind::R2Remove => {
            for p in 0..n.saturating_sub(1) {
                for q in p + 2..n - 1 {
                    out.push(Move::R2Remove { pos: [p, q] });
                }
            }
        }
        MoveKind::R3 => {
            for p0 in 0..n.saturating_sub(1) {
                for p1 in p0 + 2..n.saturating_sub(1) {
                    for p2 in p1 + 2..n - 1 {
                        out.push(Move::R3 { pos: [p0, p1, p2] });
                    }
                }
            }
        }
        MoveKind::RailR1Add => {
            for rail in Rail::BOTH {
                for at in Vertical::BOTH {
                    for flag in flags {
                        for dir in dirs {
                            out.push(Move::RailR1Add { rail, at, flag, dir });
                        }
                    }
                }
            }
        }
        MoveKind::RailR1Remove => out.extend(Rail::BOTH.map(|rail| Move::RailR1Remove { rail })),
        MoveKind::RailR2Add => {
            for rail in Rail::BOTH {
                for gap in 0..=n {
                    for rail_gap in 0..=d.rail(rail).len() {
                        for flag in flags {
                            for first_dir in dirs {
                                for first_lower in bools {
                                    out.push(Move::RailR2Add { rail, gap, rail_gap, flag, first_dir, first_lower });
                                }
                            }
                        }
                    }
                }
            }
        }
        MoveKind::RailR2Remove => {
            for rail in Rail::BOTH {
                out.extend((0..n.saturating_sub(1)).map(|pos| Move::RailR2Remove { rail, pos }));
            }
        }
        MoveKind::RailR3 => {
            for rail in Rail::BOTH {
                for rail_pos in 0..d.rail(rail).len().saturating_sub(1) {
                    for &cross in d.self_crossings.keys() {
                        out.push(Move::RailR3 { rail, rail_pos, cross });
                    }
                }
            }
        }
        MoveKind::SlideAdd => {
            for rail in Rail::BOTH {
                for toward in Vertical::BOTH {
                    out.extend(Side::BOTH.map(|side| Move::SlideAdd { rail, toward, side }));
                }
            }
        }
        MoveKind::SlideRemove => {
            for rail in Rail::BOTH {
                out.extend(Vertical::BOTH.map(|toward| Move::SlideRemove { rail, toward }));
            }
        }
    }
    out
}

/// Whether an applicable rewrite is also a planar move of a realizable diagram.
fn is_planar_move(d: &RailKnotoidDiagram, emb: &Embedding, outcome: &rewrite::Outcome) -> bool {
    if let Some(cell) = &outcome.cell {
        return emb.is_face(cell);
    }
    let Some(result_emb) = Embedding::of(&outcome.result) else {
        return false;
    };
    match rewrite::rewrite(&outcome.result, &outcome.inverse) {
        Ok(back) => back.result == *d && back.cell.as_ref().is_some_and(|c| result_emb.is_face(c)),
        Err(_) => false,
    }
}

fn enumerate_kind(d: &RailKnotoidDiagram, kind: MoveKind, emb: Option<&Embedding>) -> Vec<Move> {
    candidates(d, kind)
        .into_iter()
        .filter(|m| match rewrite::rewrite(d, m) {
            Ok(outcome) => emb.map_or(true, |e| is_planar_move(d, e, &outcome)),
            Err(_) => false,
        })
        .collect()
}

/// All applicable moves of the given kinds, sorted by kind and site.
///
/// Invalid diagrams have no moves. On diagrams without a planar realization
/// only the code patterns are checked.
pub fn enumerate_moves(d: &RailKnotoidDiagram, kinds: &BTreeSet<MoveKind>) -> Vec<Move> {
    if !d.is_valid() {
        return Vec::new();
    }
    let emb = Embedding::of(d);
    let mut moves: Vec<Move> = kinds.iter().flat_map(|&k| enumerate_kind(d, k, emb.as_ref())).collect();
    moves.sort();
    moves
}

pub fn all_kinds() -> BTreeSet<MoveKind> {
    MoveKind::ALL.into_iter().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkSpec {
    pub steps: usize,
    pub seed: u64,
    /// Leave out the curl moves.
    pub regular_only: bool,
    /// Skip insertions that would take the diagram past this many crossings.
    pub max_crossings: Option<usize>,
}

impl WalkSpec {
    pub fn new(steps: usize, seed: u64) -> Self {
        WalkSpec { steps, seed, regular_only: false, max_crossings: None }
    }

    pub fn regular(mut self) -> Self {
        self.regular_only = true;
        self
    }

    pub fn capped(mut self, max_crossings: usize) -> Self {
        self.max_crossings = Some(max_crossings);
        self
    }
}

/// A seeded walk: each step picks a kind uniformly among those with an
/// applicable move, then one of its moves uniformly in sorted order.
pub fn random_walk(d: &RailKnotoidDiagram, w: &WalkSpec) -> RailKnotoidDiagram {
    random_walk_logged(d, w).0
}

/// [`random_walk`] together with the moves it applied.
pub fn random_walk_logged(d: &RailKnotoidDiagram, w: &WalkSpec) -> (RailKnotoidDiagram, Vec<Move>) {
    let mut rng = ChaCha8Rng::seed_from_u64(w.seed);
    let mut current = d.clone();
    let mut log = Vec::new();
    if !d.is_valid() {
        return (current, log);
    }
    for _ in 0..w.steps {
        let emb = Embedding::of(&current);
        let crossings = current.crossing_count();
        let per_kind: Vec<Vec<Move>> = MoveKind::ALL
            .into_iter()
            .filter(|k| !(w.regular_only && k.is_curl()))
            .filter(|k| w.max_crossings.map_or(true, |cap| crossings + k.growth() <= cap))
            .map(|k| enumerate_kind(&current, k, emb.as_ref()))
            .filter(|ms| !ms.is_empty())
            .collect();
        let Some(moves) = per_kind.choose(&mut rng) else { break };
        let m = *moves.choose(&mut rng).expect("non-empty");
        current = rewrite::rewrite(&current, &m).expect("enumerated moves apply").result;
        log.push(m);
    }
    (current, log)
}

/// Applies the first removal move until none is left.
pub fn simplify(d: &RailKnotoidDiagram) -> RailKnotoidDiagram {
    let removals: BTreeSet<MoveKind> = MoveKind::ALL.into_iter().filter(|k| k.is_removal()).collect();
    let mut current = d.clone();
    while let Some(m) = enumerate_moves(&current, &removals).first() {
        current = rewrite::rewrite(&current, m).expect("enumerated moves apply").result;
    }
    current
}
