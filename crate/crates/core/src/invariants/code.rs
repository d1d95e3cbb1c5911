//! Compact working form of a link diagram for the skein recursions.
//!
//! Crossings are labelled `0..n`; every rewrite relabels them densely in
//! order of first appearance.

use crate::diagram::{LinkDiagram, Role};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Pass {
    pub x: u32,
    pub over: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Code {
    pub comps: Vec<Vec<Pass>>,
    /// `true` for a positive crossing.
    pub positive: Vec<bool>,
}

/// Location of one pass: component and index within it.
type Loc = (usize, usize);

impl Code {
    pub fn from_link(l: &LinkDiagram) -> Code {
        let ids: Vec<_> = l.crossing_signs.keys().copied().collect();
        let index = |id| ids.binary_search(&id).expect("validated link") as u32;
        let comps = l
            .components
            .iter()
            .map(|c| c.iter().map(|p| Pass { x: index(p.id), over: p.role == Role::Over }).collect())
            .collect();
        let positive = l.crossing_signs.values().map(|s| s.value() > 0).collect();
        Code { comps, positive }.relabelled()
    }

    pub fn crossings(&self) -> usize {
        self.positive.len()
    }

    pub fn writhe(&self) -> i32 {
        self.positive.iter().map(|&p| if p { 1 } else { -1 }).sum()
    }

    /// Over and under locations of every crossing.
    pub fn locations(&self) -> Vec<[Loc; 2]> {
        let mut out = vec![[(0, 0); 2]; self.crossings()];
        for (ci, c) in self.comps.iter().enumerate() {
            for (k, p) in c.iter().enumerate() {
                out[p.x as usize][!p.over as usize] = (ci, k);
            }
        }
        out
    }

    /// A crossing whose two passes are consecutive on one component.
    pub fn find_kink(&self) -> Option<u32> {
        for c in &self.comps {
            let n = c.len();
            for k in 0..n {
                if c[k].x == c[(k + 1) % n].x {
                    return Some(c[k].x);
                }
            }
        }
        None
    }

    /// The first crossing met at its under pass when the components are
    /// walked in order from their first pass.
    pub fn first_undercrossing(&self) -> Option<u32> {
        let mut seen = vec![false; self.crossings()];
        for p in self.comps.iter().flatten() {
            if !seen[p.x as usize] {
                if !p.over {
                    return Some(p.x);
                }
                seen[p.x as usize] = true;
            }
        }
        None
    }

    pub fn without(&self, x: u32) -> Code {
        let comps = self.comps.iter().map(|c| c.iter().copied().filter(|p| p.x != x).collect()).collect();
        Code { comps, positive: self.positive.clone() }.relabelled()
    }

    pub fn switched(&self, x: u32) -> Code {
        let mut out = self.clone();
        for p in out.comps.iter_mut().flatten() {
            if p.x == x {
                p.over = !p.over;
            }
        }
        out.positive[x as usize] = !out.positive[x as usize];
        out
    }

    /// Orientation-respecting smoothing at `x`.
    pub fn smoothed_oriented(&self, x: u32) -> Code {
        let [(i, a), (j, b)] = self.locations()[x as usize];
        let mut comps: Vec<Vec<Pass>> = Vec::with_capacity(self.comps.len() + 1);
        if i != j {
            let mut merged = after(&self.comps[i], a);
            merged.extend(after(&self.comps[j], b));
            comps.push(merged);
        } else {
            let (a, b) = (a.min(b), a.max(b));
            let c = &self.comps[i];
            comps.push(c[a + 1..b].to_vec());
            comps.push(c[b + 1..].iter().chain(&c[..a]).copied().collect());
        }
        comps.extend(self.comps.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, c)| c.clone()));
        Code { comps, positive: self.positive.clone() }.without(x)
    }

    /// Orientation-breaking smoothing at `x`; the reversed strand flips the
    /// sign of every crossing it shares with the rest of the diagram.
    pub fn smoothed_unoriented(&self, x: u32) -> Code {
        let [(i, a), (j, b)] = self.locations()[x as usize];
        let (kept, reversed) = if i != j {
            (after(&self.comps[i], a), after(&self.comps[j], b))
        } else {
            let (a, b) = (a.min(b), a.max(b));
            let c = &self.comps[i];
            (c[a + 1..b].to_vec(), c[b + 1..].iter().chain(&c[..a]).copied().collect())
        };
        let mut in_reversed = vec![0u8; self.crossings()];
        for p in &reversed {
            in_reversed[p.x as usize] += 1;
        }
        let mut positive = self.positive.clone();
        for (k, &count) in in_reversed.iter().enumerate() {
            if count == 1 {
                positive[k] = !positive[k];
            }
        }
        let mut merged = kept;
        merged.extend(reversed.into_iter().rev());
        let mut comps = vec![merged];
        comps.extend(self.comps.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, c)| c.clone()));
        Code { comps, positive }.without(x)
    }

    /// Dense relabelling in order of first appearance; drops unused signs.
    fn relabelled(mut self) -> Code {
        let mut map = vec![u32::MAX; self.positive.len()];
        let mut positive = Vec::with_capacity(self.positive.len());
        for p in self.comps.iter_mut().flatten() {
            let slot = &mut map[p.x as usize];
            if *slot == u32::MAX {
                *slot = positive.len() as u32;
                positive.push(self.positive[p.x as usize]);
            }
            p.x = *slot;
        }
        self.positive = positive;
        self
    }

    /// Memo key invariant under relabelling and rotation of each component.
    /// Components keep their order; each is rotated to the start that gives
    /// the smallest encoding given the labels already fixed.
    pub fn key(&self) -> Vec<u32> {
        let mut map = vec![u32::MAX; self.crossings()];
        let mut next = 0u32;
        let mut out = Vec::with_capacity(2 * self.crossings() + self.comps.len());
        for c in &self.comps {
            let n = c.len();
            let mut best: Option<(Vec<u32>, Vec<u32>, u32)> = None;
            for r in 0..n {
                let mut trial_map = map.clone();
                let mut trial_next = next;
                let enc: Vec<u32> = (0..n)
                    .map(|k| {
                        let p = c[(r + k) % n];
                        let slot = &mut trial_map[p.x as usize];
                        if *slot == u32::MAX {
                            *slot = trial_next;
                            trial_next += 1;
                        }
                        (*slot << 2) | ((!p.over as u32) << 1) | (!self.positive[p.x as usize] as u32)
                    })
                    .collect();
                if best.as_ref().is_none_or(|(b, _, _)| enc < *b) {
                    best = Some((enc, trial_map, trial_next));
                }
            }
            if let Some((enc, m, nx)) = best {
                out.extend(enc);
                map = m;
                next = nx;
            }
            out.push(u32::MAX);
        }
        out
    }
}

/// The cyclic sequence after position `a`, ending just before it.
fn after(c: &[Pass], a: usize) -> Vec<Pass> {
    c[a + 1..].iter().chain(&c[..a]).copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(spec: &[&[(u32, bool)]], positive: &[bool]) -> Code {
        Code {
            comps: spec.iter().map(|c| c.iter().map(|&(x, over)| Pass { x, over }).collect()).collect(),
            positive: positive.to_vec(),
        }
    }

    #[test]
    fn kink_removal_and_relabel() {
        let c = code(&[&[(0, true), (1, true), (1, false), (0, false)]], &[true, false]);
        assert_eq!(c.find_kink(), Some(1));
        let d = c.without(1);
        assert_eq!(d, code(&[&[(0, true), (0, false)]], &[true]));
    }

    #[test]
    fn smoothing_a_kink() {
        let kink = code(&[&[(0, true), (0, false)]], &[true]);
        assert_eq!(kink.smoothed_oriented(0).comps, vec![vec![], vec![]]);
        assert_eq!(kink.smoothed_unoriented(0).comps, vec![Vec::<Pass>::new()]);
    }

    #[test]
    fn key_ignores_rotation_and_labels() {
        let a = code(&[&[(0, true), (1, false), (2, true), (0, false), (1, true), (2, false)]], &[true; 3]);
        let b = code(&[&[(5, true), (7, false), (6, true), (5, false), (7, true), (6, false)]], &[true; 8]);
        let b = b.relabelled();
        let mut rotated = a.clone();
        rotated.comps[0].rotate_left(2);
        assert_eq!(a.key(), b.key());
        assert_eq!(a.key(), rotated.key());
        assert_ne!(a.key(), a.switched(0).key());
    }

    #[test]
    fn descending_detection() {
        let a = code(&[&[(0, true), (1, false), (0, false), (1, true)]], &[true, true]);
        assert_eq!(a.first_undercrossing(), Some(1));
        let b = code(&[&[(0, true), (1, true), (0, false), (1, false)]], &[true, true]);
        assert_eq!(b.first_undercrossing(), None);
    }
}
