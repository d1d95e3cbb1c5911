//! Brute-force bracket through planar diagram codes, kept apart from the
//! main invariant code.
//!
//! Each crossing becomes `X[a, b, c, d]`: its four edge ends counterclockwise
//! starting from the incoming under end. The A-smoothing joins `a-b` and
//! `c-d`, the B-smoothing `a-d` and `b-c`; loops are counted by union-find.

use std::collections::BTreeMap;

use crate::diagram::{LinkDiagram, Role, Sign};
use crate::poly::{Laurent1, Var1};

/// Planar diagram code plus the number of crossingless components.
pub struct Pd {
    pub crossings: Vec<[usize; 4]>,
    pub edges: usize,
    pub free_loops: usize,
}

pub fn pd_code(l: &LinkDiagram) -> Pd {
    let mut edges = 0;
    let mut ends: BTreeMap<u32, [(usize, usize); 2]> = BTreeMap::new();
    let mut free_loops = 0;
    for comp in &l.components {
        let k = comp.len();
        if k == 0 {
            free_loops += 1;
            continue;
        }
        for (j, pass) in comp.iter().enumerate() {
            let incoming = edges + (j + k - 1) % k;
            let outgoing = edges + j;
            let slot = if pass.role == Role::Over { 0 } else { 1 };
            ends.entry(pass.id).or_default()[slot] = (incoming, outgoing);
        }
        edges += k;
    }
    let crossings = ends
        .iter()
        .map(|(id, &[(oi, oo), (ui, uo)])| {
            // Under strand pointing north: a positive crossing has its over
            // strand running west to east.
            match l.crossing_signs[id] {
                Sign::Pos => [ui, oo, uo, oi],
                Sign::Neg => [ui, oi, uo, oo],
            }
        })
        .collect();
    Pd { crossings, edges, free_loops }
}

fn root(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Exponent-to-coefficient map of `⟨l⟩` with `⟨unknot⟩ = 1`.
pub fn bracket_terms(l: &LinkDiagram) -> BTreeMap<i32, i64> {
    let pd = pd_code(l);
    let n = pd.crossings.len();
    // delta^j expanded once: delta = -A^2 - A^-2.
    let max_loops = pd.edges + pd.free_loops + 1;
    let mut delta_pow: Vec<BTreeMap<i32, i64>> = vec![BTreeMap::from([(0, 1)])];
    for j in 1..max_loops {
        let mut next = BTreeMap::new();
        for (&e, &c) in &delta_pow[j - 1] {
            *next.entry(e + 2).or_insert(0) -= c;
            *next.entry(e - 2).or_insert(0) -= c;
        }
        delta_pow.push(next);
    }
    let mut total: BTreeMap<i32, i64> = BTreeMap::new();
    for state in 0u64..(1u64 << n) {
        let mut parent: Vec<usize> = (0..pd.edges).collect();
        let mut a_count = 0i32;
        for (i, &[a, b, c, d]) in pd.crossings.iter().enumerate() {
            let pairs = if state >> i & 1 == 0 {
                a_count += 1;
                [(a, b), (c, d)]
            } else {
                [(a, d), (b, c)]
            };
            for (x, y) in pairs {
                let (rx, ry) = (root(&mut parent, x), root(&mut parent, y));
                parent[rx] = ry;
            }
        }
        let loops = (0..pd.edges).filter(|&e| root(&mut parent, e) == e).count() + pd.free_loops;
        let exp = a_count - (n as i32 - a_count);
        for (&e, &c) in &delta_pow[loops - 1] {
            *total.entry(exp + e).or_insert(0) += c;
        }
    }
    total.retain(|_, c| *c != 0);
    total
}

pub fn bracket(l: &LinkDiagram) -> Laurent1 {
    Laurent1::from_terms(Var1::A, bracket_terms(l))
}

/// Sum of crossing signs, recomputed from the sign table.
pub fn writhe(l: &LinkDiagram) -> i32 {
    l.crossing_signs.values().map(|s| if *s == Sign::Pos { 1 } else { -1 }).sum()
}

/// `(-A^3)^-w ⟨l⟩` from the oracle bracket.
pub fn normalized(l: &LinkDiagram) -> Laurent1 {
    let w = writhe(l);
    let unit = Laurent1::monomial(Var1::A, -3 * w, if w % 2 == 0 { 1 } else { -1 });
    unit * bracket(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::CrossPass;

    fn trefoil(sign: Sign) -> LinkDiagram {
        let (o, u) = (Role::Over, Role::Under);
        let seq = [(1, o), (2, u), (3, o), (1, u), (2, o), (3, u)];
        LinkDiagram {
            components: vec![seq.iter().map(|&(id, role)| CrossPass { id, role }).collect()],
            crossing_signs: (1..=3).map(|i| (i, sign)).collect(),
        }
    }

    #[test]
    fn standard_values() {
        let kink = LinkDiagram {
            components: vec![vec![CrossPass { id: 1, role: Role::Over }, CrossPass { id: 1, role: Role::Under }]],
            crossing_signs: [(1, Sign::Pos)].into_iter().collect(),
        };
        assert_eq!(bracket_terms(&kink), BTreeMap::from([(3, -1)]));
        assert_eq!(bracket_terms(&LinkDiagram::unknot()), BTreeMap::from([(0, 1)]));
        // Right-handed trefoil: A^-7 - A^-3 - A^5.
        assert_eq!(bracket_terms(&trefoil(Sign::Pos)), BTreeMap::from([(-7, 1), (-3, -1), (5, -1)]));
        assert_eq!(bracket_terms(&trefoil(Sign::Neg)), BTreeMap::from([(-5, -1), (3, -1), (7, 1)]));
    }
}
