//! Exhaustive search over diagrams whose arc only crosses the rails.
//!
//! Tracking the region the arc is in (left of rail 1, between the rails,
//! right of rail 2) fixes every crossing direction, so a candidate is a
//! choice of leg side, rail sequence, rail orders and heights.

use itertools::Itertools;

use crate::closure::{companion, forget_rails_closure, ClosureSide};
use crate::diagram::planar::is_realizable;
use crate::diagram::{ArcEvent, Dir, Flag, Rail, RailCrossing, RailItem, RailKnotoidDiagram};
use crate::invariants::{jones, Bounds};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Region {
    Left,
    Middle,
    Right,
}

/// Rail sequences of length `k` with their crossing directions.
fn rail_paths(k: usize) -> Vec<Vec<(Rail, Dir)>> {
    let mut out = Vec::new();
    for start in [Region::Left, Region::Middle] {
        let mut stack = vec![(start, Vec::new())];
        while let Some((region, path)) = stack.pop() {
            if path.len() == k {
                if region != Region::Left {
                    out.push(path);
                }
                continue;
            }
            let steps: &[(Rail, Dir, Region)] = match region {
                Region::Left => &[(Rail::One, Dir::LeftToRight, Region::Middle)],
                Region::Middle => &[
                    (Rail::One, Dir::RightToLeft, Region::Left),
                    (Rail::Two, Dir::LeftToRight, Region::Right),
                ],
                Region::Right => &[(Rail::Two, Dir::RightToLeft, Region::Middle)],
            };
            for &(rail, dir, next) in steps.iter().rev() {
                let mut p = path.clone();
                p.push((rail, dir));
                stack.push((next, p));
            }
        }
    }
    out
}

fn candidates(k: usize) -> impl Iterator<Item = RailKnotoidDiagram> {
    rail_paths(k).into_iter().flat_map(move |path| {
        let on = |r: Rail| -> Vec<usize> { (0..k).filter(|&i| path[i].0 == r).collect() };
        let (one, two) = (on(Rail::One), on(Rail::Two));
        let orders = |ids: Vec<usize>| -> Vec<Vec<Option<usize>>> {
            let mut items: Vec<Option<usize>> = ids.into_iter().map(Some).collect();
            items.push(None);
            let len = items.len();
            items.into_iter().permutations(len).collect()
        };
        let (orders1, orders2) = (orders(one), orders(two));
        let path = path.clone();
        orders1
            .into_iter()
            .cartesian_product(orders2)
            .cartesian_product(0..1u32 << k)
            .map(move |((o1, o2), heights)| {
                let flag = |i: usize| if heights >> i & 1 == 1 { Flag::ArcUnderRail } else { Flag::ArcOverRail };
                let mut d = RailKnotoidDiagram::empty();
                d.arc_events =
                    path.iter().enumerate().map(|(i, &(rail, _))| ArcEvent::RailPass { rail, id: i as u32 + 1 }).collect();
                for (rail, order) in [(Rail::One, &o1), (Rail::Two, &o2)] {
                    *d.rail_mut(rail) = order
                        .iter()
                        .map(|slot| match *slot {
                            None => RailItem::Endpoint,
                            Some(i) => RailItem::Crossing(RailCrossing { id: i as u32 + 1, flag: flag(i), dir: path[i].1 }),
                        })
                        .collect();
                }
                d
            })
    })
}

fn is_witness(d: &RailKnotoidDiagram, bounds: &Bounds) -> bool {
    if !is_realizable(d) {
        return false;
    }
    let nontrivial = companion(d, ClosureSide::Over)
        .ok()
        .and_then(|l| jones(&l, bounds).ok())
        .is_some_and(|j| !j.is_one());
    nontrivial
        && ClosureSide::BOTH.iter().all(|&side| {
            forget_rails_closure(d, side).ok().and_then(|l| jones(&l, bounds).ok()).is_some_and(|j| j.is_one())
        })
}

/// The first witness in search order: fewest rail crossings first.
pub fn find_witness(max_rail_crossings: usize) -> Option<RailKnotoidDiagram> {
    let bounds = Bounds::default();
    (0..=max_rail_crossings).find_map(|k| candidates(k).find(|d| is_witness(d, &bounds)))
}

/// Number of realizable candidates with at most `k` rail crossings.
pub fn realizable_count(max_rail_crossings: usize) -> usize {
    (0..=max_rail_crossings).map(|k| candidates(k).filter(is_realizable).count()).sum()
}
