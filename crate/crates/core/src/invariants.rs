//! Polynomial invariants of link diagrams and of rail knotoid diagrams
//! through their companion loops.

use std::fmt;

use thiserror::Error;

use crate::closure::{companion, orient, ClosureSide};
use crate::diagram::{DiagramError, LinkDiagram, Orientation, RailKnotoidDiagram};
use crate::poly::{Laurent1, Laurent2, PolyError, Var1};

mod bracket;
mod certificate;
pub(crate) mod code;
mod skein;
mod specialize;

pub use certificate::{certificate, compare, InvariantCertificate, Verdict, INVARIANT_FIELDS};
pub use specialize::{homflypt_to_x, kauffman_to_x};

use code::Code;

/// Largest crossing count each exponential algorithm accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub bracket: usize,
    pub homflypt: usize,
    pub kauffman: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { bracket: 20, homflypt: 14, kauffman: 12 }
    }
}

impl Bounds {
    pub const ENV_VAR: &'static str = "RAILKNOT_MAX_CROSSINGS";

    pub fn uniform(n: usize) -> Self {
        Bounds { bracket: n, homflypt: n, kauffman: n }
    }

    /// Defaults, or a uniform bound taken from `RAILKNOT_MAX_CROSSINGS`.
    pub fn from_env() -> Result<Self, InvariantError> {
        match std::env::var(Self::ENV_VAR) {
            Ok(v) => v
                .trim()
                .parse()
                .map(Bounds::uniform)
                .map_err(|_| InvariantError::Config(format!("{}={v:?} is not a crossing count", Self::ENV_VAR))),
            Err(_) => Ok(Bounds::default()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("{invariant} is limited to {limit} crossings; the diagram has {crossings}")]
    TooManyCrossings { invariant: &'static str, crossings: usize, limit: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{0}")]
    Config(String),
}

fn checked_code(l: &LinkDiagram, invariant: &'static str, limit: usize) -> Result<Code, InvariantError> {
    l.validate()?;
    let crossings = l.crossing_count();
    if crossings > limit {
        return Err(InvariantError::TooManyCrossings { invariant, crossings, limit });
    }
    Ok(Code::from_link(l))
}

pub fn writhe(l: &LinkDiagram) -> i32 {
    l.writhe()
}

/// Kauffman bracket with `⟨unknot⟩ = 1`.
pub fn bracket(l: &LinkDiagram, bounds: &Bounds) -> Result<Laurent1, InvariantError> {
    Ok(bracket::state_sum(&checked_code(l, "bracket", bounds.bracket)?))
}

/// `(-A^3)^-w ⟨l⟩`.
pub fn normalized_bracket(l: &LinkDiagram, bounds: &Bounds) -> Result<Laurent1, InvariantError> {
    let b = bracket(l, bounds)?;
    Ok(Laurent1::monomial(Var1::A, -3 * l.writhe(), if l.writhe() % 2 == 0 { 1 } else { -1 }) * b)
}

/// Jones polynomial in `t^{1/4}` via `A = t^{-1/4}`.
pub fn jones(l: &LinkDiagram, bounds: &Bounds) -> Result<Laurent1, InvariantError> {
    Ok(normalized_bracket(l, bounds)?.substitute_a_to_t())
}

/// HOMFLYPT polynomial in `(l, m)`.
pub fn homflypt(l: &LinkDiagram, bounds: &Bounds) -> Result<Laurent2, InvariantError> {
    Ok(skein::homflypt(&checked_code(l, "homflypt", bounds.homflypt)?))
}

/// Kauffman polynomial `F` in `(a, z)`.
pub fn kauffman_f(l: &LinkDiagram, bounds: &Bounds) -> Result<Laurent2, InvariantError> {
    Ok(skein::kauffman_f(&checked_code(l, "kauffman", bounds.kauffman)?))
}

/// `⟨K⟩_o` or `⟨K⟩_u`.
pub fn rail_bracket(d: &RailKnotoidDiagram, side: ClosureSide, bounds: &Bounds) -> Result<Laurent1, InvariantError> {
    bracket(&companion(d, side)?, bounds)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    X,
    Jones,
    Homflypt,
}

/// Value of a one- or two-variable invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyValue {
    One(Laurent1),
    Two(Laurent2),
}

impl fmt::Display for PolyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyValue::One(p) => p.fmt(f),
            PolyValue::Two(p) => p.fmt(f),
        }
    }
}

/// An oriented invariant of the chosen companion loop.
pub fn rail_invariant(
    d: &RailKnotoidDiagram,
    family: Family,
    side: ClosureSide,
    o: Orientation,
    bounds: &Bounds,
) -> Result<PolyValue, InvariantError> {
    let l = orient(&companion(d, side)?, o)?;
    Ok(match family {
        Family::X => PolyValue::One(normalized_bracket(&l, bounds)?),
        Family::Jones => PolyValue::One(jones(&l, bounds)?),
        Family::Homflypt => PolyValue::Two(homflypt(&l, bounds)?),
    })
}

/// `𝕂_o` or `𝕂_u`.
pub fn rail_kauffman(d: &RailKnotoidDiagram, side: ClosureSide, bounds: &Bounds) -> Result<Laurent2, InvariantError> {
    kauffman_f(&companion(d, side)?, bounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{CrossPass, Role, Sign};
    use crate::poly::Var2;

    fn knot(passes: &[(u32, Role)], signs: &[(u32, Sign)]) -> LinkDiagram {
        LinkDiagram {
            components: vec![passes.iter().map(|&(id, role)| CrossPass { id, role }).collect()],
            crossing_signs: signs.iter().copied().collect(),
        }
    }

    fn trefoil(sign: Sign) -> LinkDiagram {
        use Role::*;
        knot(
            &[(1, Over), (2, Under), (3, Over), (1, Under), (2, Over), (3, Under)],
            &[(1, sign), (2, sign), (3, sign)],
        )
    }

    fn kink(sign: Sign) -> LinkDiagram {
        knot(&[(1, Role::Over), (1, Role::Under)], &[(1, sign)])
    }

    fn p1(text: &str) -> Laurent1 {
        Laurent1::parse(text, Var1::A).unwrap()
    }

    #[test]
    fn small_brackets() {
        let b = Bounds::default();
        assert!(bracket(&LinkDiagram::unknot(), &b).unwrap().is_one());
        assert_eq!(bracket(&kink(Sign::Pos), &b).unwrap(), p1("-1*A^3"));
        assert_eq!(bracket(&kink(Sign::Neg), &b).unwrap(), p1("-1*A^-3"));
        let unlink = LinkDiagram { components: vec![vec![], vec![]], crossing_signs: Default::default() };
        assert_eq!(bracket(&unlink, &b).unwrap(), p1("-1*A^-2 + -1*A^2"));
        assert!(normalized_bracket(&kink(Sign::Pos), &b).unwrap().is_one());
    }

    #[test]
    fn trefoil_jones_both_chiralities() {
        let b = Bounds::default();
        let right = jones(&trefoil(Sign::Pos), &b).unwrap();
        assert_eq!(right.to_string(), "1*t^1 + 1*t^3 + -1*t^4");
        let left = jones(&trefoil(Sign::Neg), &b).unwrap();
        assert_eq!(left.to_string(), "-1*t^-4 + 1*t^-3 + 1*t^-1");
    }

    #[test]
    fn trefoil_homflypt() {
        let b = Bounds::default();
        let p = homflypt(&trefoil(Sign::Pos), &b).unwrap();
        let expected = Laurent2::parse("-1*l^-4*m^0 + -2*l^-2*m^0 + 1*l^-2*m^2", Var2::LM).unwrap();
        assert_eq!(p, expected);
        assert_eq!(homflypt_to_x(&p).unwrap(), normalized_bracket(&trefoil(Sign::Pos), &b).unwrap());
    }

    #[test]
    fn trefoil_kauffman_specializes_to_x() {
        let b = Bounds::default();
        for s in [Sign::Pos, Sign::Neg] {
            let f = kauffman_f(&trefoil(s), &b).unwrap();
            assert_eq!(kauffman_to_x(&f).unwrap(), normalized_bracket(&trefoil(s), &b).unwrap());
        }
    }

    #[test]
    fn curls_are_invisible_to_normalized_invariants() {
        let b = Bounds::default();
        for s in [Sign::Pos, Sign::Neg] {
            assert!(kauffman_f(&kink(s), &b).unwrap().is_one());
            assert!(homflypt(&kink(s), &b).unwrap().is_one());
        }
    }

    #[test]
    fn bounds_are_enforced() {
        let tight = Bounds::uniform(2);
        let err = bracket(&trefoil(Sign::Pos), &tight).unwrap_err();
        assert_eq!(err, InvariantError::TooManyCrossings { invariant: "bracket", crossings: 3, limit: 2 });
        assert!(homflypt(&trefoil(Sign::Pos), &tight).is_err());
        assert!(kauffman_f(&trefoil(Sign::Pos), &tight).is_err());
    }
}
