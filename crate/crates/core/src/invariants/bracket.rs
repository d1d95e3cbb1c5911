//! Kauffman bracket by explicit state sum.

use num_bigint::BigInt;

use super::code::Code;
use crate::poly::{Laurent1, Var1};

/// `δ = -A^2 - A^-2`.
pub(crate) fn delta() -> Laurent1 {
    Laurent1::from_terms(Var1::A, [(-2, -1), (2, -1)])
}

/// Sum over all `2^n` states. Loops are counted with a union-find over the
/// edges between consecutive passes; crossingless components are loops of
/// their own.
pub(crate) fn state_sum(code: &Code) -> Laurent1 {
    let n = code.crossings();
    let mut edge_base = Vec::with_capacity(code.comps.len());
    let mut edges = 0usize;
    for c in &code.comps {
        edge_base.push(edges);
        edges += c.len();
    }
    let free_loops = code.comps.iter().filter(|c| c.is_empty()).count();

    // For every crossing the incoming and outgoing edge of its over and under pass.
    let mut ends = vec![[0usize; 4]; n];
    for (ci, c) in code.comps.iter().enumerate() {
        let len = c.len();
        for (k, p) in c.iter().enumerate() {
            let incoming = edge_base[ci] + (k + len - 1) % len;
            let outgoing = edge_base[ci] + k;
            let slot = if p.over { 0 } else { 2 };
            ends[p.x as usize][slot] = incoming;
            ends[p.x as usize][slot + 1] = outgoing;
        }
    }
    // Pairs joined by the A-smoothing and by the B-smoothing.
    let joins: Vec<[[(usize, usize); 2]; 2]> = (0..n)
        .map(|x| {
            let [oi, oo, ui, uo] = ends[x];
            let oriented = [(oi, uo), (ui, oo)];
            let unoriented = [(oi, ui), (oo, uo)];
            if code.positive[x] {
                [oriented, unoriented]
            } else {
                [unoriented, oriented]
            }
        })
        .collect();

    // histogram[a][loops]: states with `a` A-smoothings and `loops` loops.
    let max_loops = edges + free_loops + 1;
    let mut histogram = vec![vec![0u64; max_loops + 1]; n + 1];
    let mut parent = vec![0usize; edges];
    for state in 0u64..(1u64 << n) {
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i;
        }
        let mut loops = edges;
        for (x, join) in joins.iter().enumerate() {
            for &(u, v) in &join[(state >> x & 1) as usize] {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru] = rv;
                    loops -= 1;
                }
            }
        }
        let a_count = n - state.count_ones() as usize;
        histogram[a_count][loops + free_loops] += 1;
    }

    let d = delta();
    let mut delta_pow = vec![Laurent1::one(Var1::A)];
    for _ in 1..max_loops {
        let next = delta_pow.last().unwrap() * &d;
        delta_pow.push(next);
    }
    let mut total = Laurent1::zero(Var1::A);
    for (a_count, row) in histogram.iter().enumerate() {
        let mut by_a = Laurent1::zero(Var1::A);
        for (loops, &count) in row.iter().enumerate() {
            if count > 0 {
                by_a = by_a + delta_pow[loops - 1].scale(&BigInt::from(count));
            }
        }
        total = total + by_a.shift(2 * a_count as i32 - n as i32);
    }
    total
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}
