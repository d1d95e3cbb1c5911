//! Specializations of the two-variable polynomials to the normalized bracket.

use crate::poly::{Laurent1, Laurent2, PolyError, Var1};

fn a(exp: i32, coef: i64) -> Laurent1 {
    Laurent1::monomial(Var1::A, exp, coef)
}

/// Substitutes `x^i y^j -> coef(i, j) * A^k(i) * base^j`, clearing negative
/// powers of `base` by exact division.
fn substitute(
    p: &Laurent2,
    base: &Laurent1,
    monomial: impl Fn(i32, i32) -> Result<(i64, i32), PolyError>,
) -> Result<Laurent1, PolyError> {
    let lowest = p.terms().map(|((_, j), _)| j).min().unwrap_or(0).min(0);
    let shift = -lowest;
    let mut total = Laurent1::zero(Var1::A);
    for ((i, j), c) in p.terms() {
        let (sign, exp) = monomial(i, j)?;
        let term = base.pow((j + shift) as i64)?.shift(exp).scale(&(c * sign));
        total = total + term;
    }
    total.div_exact(&base.pow(shift as i64)?)
}

/// HOMFLYPT at `l = i A^4`, `m = i (A^2 - A^-2)`.
pub fn homflypt_to_x(p: &Laurent2) -> Result<Laurent1, PolyError> {
    let base = a(2, 1) + a(-2, -1);
    substitute(p, &base, |i, j| {
        if (i + j) % 2 != 0 {
            return Err(PolyError::NotDivisible);
        }
        let sign = if ((i + j) / 2).rem_euclid(2) == 0 { 1 } else { -1 };
        Ok((sign, 4 * i))
    })
}

/// Kauffman polynomial at `a = -A^3`, `z = A + A^-1`.
pub fn kauffman_to_x(f: &Laurent2) -> Result<Laurent1, PolyError> {
    let base = a(1, 1) + a(-1, 1);
    substitute(f, &base, |i, _| Ok((if i.rem_euclid(2) == 0 { 1 } else { -1 }, 3 * i)))
}
