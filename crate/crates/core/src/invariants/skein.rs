//! Skein recursions for HOMFLYPT and the Kauffman polynomial.
//!
//! Both reduce a diagram to a descending one: walking the components in
//! order from their first pass, the first crossing met at its under pass is
//! switched, and the skein relation accounts for the difference. A
//! descending diagram is an unlink. Curls are stripped first; memo keys are
//! taken after stripping.

use std::collections::HashMap;

use super::code::Code;
use crate::poly::{Laurent2, Var2};

fn lm(l: i32, m: i32, c: i64) -> Laurent2 {
    Laurent2::monomial(Var2::LM, (l, m), c)
}

fn az(a: i32, z: i32, c: i64) -> Laurent2 {
    Laurent2::monomial(Var2::AZ, (a, z), c)
}

/// HOMFLYPT with `l P(L+) + l^-1 P(L-) + m P(L0) = 0` and `P(unknot) = 1`.
pub(crate) fn homflypt(code: &Code) -> Laurent2 {
    let mu = lm(1, -1, -1) + lm(-1, -1, -1);
    homfly_rec(code.clone(), &mu, &mut HashMap::new())
}

fn homfly_rec(mut code: Code, mu: &Laurent2, memo: &mut HashMap<Vec<u32>, Laurent2>) -> Laurent2 {
    while let Some(x) = code.find_kink() {
        code = code.without(x);
    }
    let key = code.key();
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let value = match code.first_undercrossing() {
        None => mu.pow(code.comps.len() as i64 - 1).expect("non-negative power"),
        Some(x) => {
            let switched = homfly_rec(code.switched(x), mu, memo);
            let smoothed = homfly_rec(code.smoothed_oriented(x), mu, memo);
            if code.positive[x as usize] {
                // P+ = -l^-2 P- - l^-1 m P0
                lm(-2, 0, -1) * switched + lm(-1, 1, -1) * smoothed
            } else {
                // P- = -l^2 P+ - l m P0
                lm(2, 0, -1) * switched + lm(1, 1, -1) * smoothed
            }
        }
    };
    memo.insert(key, value.clone());
    value
}

/// Kauffman polynomial `F = a^-w Λ`, where `Λ(D) + Λ(D') = z (Λ(D0) + Λ(D∞))`
/// for a crossing switch `D'` and its two smoothings, `Λ` of a positive
/// (negative) curl is `a` (`a^-1`) and `Λ(unknot) = 1`.
pub(crate) fn kauffman_f(code: &Code) -> Laurent2 {
    let delta = az(1, -1, 1) + az(-1, -1, 1) + az(0, 0, -1);
    let lambda = lambda_rec(code.clone(), &delta, &mut HashMap::new());
    az(-code.writhe(), 0, 1) * lambda
}

fn lambda_rec(mut code: Code, delta: &Laurent2, memo: &mut HashMap<Vec<u32>, Laurent2>) -> Laurent2 {
    let mut curls = 0;
    while let Some(x) = code.find_kink() {
        curls += if code.positive[x as usize] { 1 } else { -1 };
        code = code.without(x);
    }
    let key = code.key();
    let value = if let Some(v) = memo.get(&key) {
        v.clone()
    } else {
        let value = match code.first_undercrossing() {
            None => az(code.writhe(), 0, 1) * delta.pow(code.comps.len() as i64 - 1).expect("non-negative power"),
            Some(x) => {
                let switched = lambda_rec(code.switched(x), delta, memo);
                let zero = lambda_rec(code.smoothed_oriented(x), delta, memo);
                let infinity = lambda_rec(code.smoothed_unoriented(x), delta, memo);
                az(0, 1, 1) * (zero + infinity) - switched
            }
        };
        memo.insert(key, value.clone());
        value
    };
    az(curls, 0, 1) * value
}
