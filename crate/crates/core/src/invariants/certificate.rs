//! The full invariant tuple of a rail knotoid diagram.

use std::fmt;

use serde_json::{Map, Value};

use super::{bracket, homflypt, jones, kauffman_f, normalized_bracket, Bounds, InvariantError};
use crate::closure::{companion, orient, ClosureSide};
use crate::diagram::{Orientation, RailKnotoidDiagram};
use crate::poly::{Laurent1, Laurent2, Var1, Var2};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantCertificate {
    pub bracket_o: Laurent1,
    pub bracket_u: Laurent1,
    pub writhe_o_plus: i32,
    pub writhe_u_plus: i32,
    pub x_o_plus: Laurent1,
    pub x_o_minus: Laurent1,
    pub x_u_plus: Laurent1,
    pub x_u_minus: Laurent1,
    pub jones_o_plus: Laurent1,
    pub jones_o_minus: Laurent1,
    pub jones_u_plus: Laurent1,
    pub jones_u_minus: Laurent1,
    pub homfly_o_plus: Laurent2,
    pub homfly_o_minus: Laurent2,
    pub homfly_u_plus: Laurent2,
    pub homfly_u_minus: Laurent2,
    pub kauffman_o: Laurent2,
    pub kauffman_u: Laurent2,
}

/// Fields that are invariant under every rail move. The rail brackets and
/// writhes change under curl moves and are left out of comparisons.
pub const INVARIANT_FIELDS: [&str; 14] = [
    "x_o_plus",
    "x_o_minus",
    "x_u_plus",
    "x_u_minus",
    "jones_o_plus",
    "jones_o_minus",
    "jones_u_plus",
    "jones_u_minus",
    "homfly_o_plus",
    "homfly_o_minus",
    "homfly_u_plus",
    "homfly_u_minus",
    "kauffman_o",
    "kauffman_u",
];

struct SideValues {
    bracket: Laurent1,
    writhe: i32,
    x: [Laurent1; 2],
    jones: [Laurent1; 2],
    homfly: [Laurent2; 2],
    kauffman: Laurent2,
}

fn side_values(d: &RailKnotoidDiagram, side: ClosureSide, bounds: &Bounds) -> Result<SideValues, InvariantError> {
    let plus = companion(d, side)?;
    let minus = orient(&plus, Orientation::Minus)?;
    Ok(SideValues {
        bracket: bracket(&plus, bounds)?,
        writhe: plus.writhe(),
        x: [normalized_bracket(&plus, bounds)?, normalized_bracket(&minus, bounds)?],
        jones: [jones(&plus, bounds)?, jones(&minus, bounds)?],
        homfly: [homflypt(&plus, bounds)?, homflypt(&minus, bounds)?],
        kauffman: kauffman_f(&plus, bounds)?,
    })
}

pub fn certificate(d: &RailKnotoidDiagram, bounds: &Bounds) -> Result<InvariantCertificate, InvariantError> {
    let o = side_values(d, ClosureSide::Over, bounds)?;
    let u = side_values(d, ClosureSide::Under, bounds)?;
    let [x_o_plus, x_o_minus] = o.x;
    let [x_u_plus, x_u_minus] = u.x;
    let [jones_o_plus, jones_o_minus] = o.jones;
    let [jones_u_plus, jones_u_minus] = u.jones;
    let [homfly_o_plus, homfly_o_minus] = o.homfly;
    let [homfly_u_plus, homfly_u_minus] = u.homfly;
    Ok(InvariantCertificate {
        bracket_o: o.bracket,
        bracket_u: u.bracket,
        writhe_o_plus: o.writhe,
        writhe_u_plus: u.writhe,
        x_o_plus,
        x_o_minus,
        x_u_plus,
        x_u_minus,
        jones_o_plus,
        jones_o_minus,
        jones_u_plus,
        jones_u_minus,
        homfly_o_plus,
        homfly_o_minus,
        homfly_u_plus,
        homfly_u_minus,
        kauffman_o: o.kauffman,
        kauffman_u: u.kauffman,
    })
}

/// A rendered field: polynomials as canonical strings, writhes as integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldValue {
    Poly(String),
    Int(i32),
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldValue::Poly(s) => f.write_str(s),
            FieldValue::Int(n) => write!(f, "{n}"),
        }
    }
}

impl InvariantCertificate {
    /// All fields in their fixed order.
    pub fn fields(&self) -> Vec<(&'static str, FieldValue)> {
        let p = |x: &dyn fmt::Display| FieldValue::Poly(x.to_string());
        vec![
            ("bracket_o", p(&self.bracket_o)),
            ("bracket_u", p(&self.bracket_u)),
            ("writhe_o_plus", FieldValue::Int(self.writhe_o_plus)),
            ("writhe_u_plus", FieldValue::Int(self.writhe_u_plus)),
            ("x_o_plus", p(&self.x_o_plus)),
            ("x_o_minus", p(&self.x_o_minus)),
            ("x_u_plus", p(&self.x_u_plus)),
            ("x_u_minus", p(&self.x_u_minus)),
            ("jones_o_plus", p(&self.jones_o_plus)),
            ("jones_o_minus", p(&self.jones_o_minus)),
            ("jones_u_plus", p(&self.jones_u_plus)),
            ("jones_u_minus", p(&self.jones_u_minus)),
            ("homfly_o_plus", p(&self.homfly_o_plus)),
            ("homfly_o_minus", p(&self.homfly_o_minus)),
            ("homfly_u_plus", p(&self.homfly_u_plus)),
            ("homfly_u_minus", p(&self.homfly_u_minus)),
            ("kauffman_o", p(&self.kauffman_o)),
            ("kauffman_u", p(&self.kauffman_u)),
        ]
    }

    pub fn to_json_value(&self) -> Value {
        let mut map = Map::new();
        for (name, value) in self.fields() {
            let v = match value {
                FieldValue::Poly(s) => Value::String(s),
                FieldValue::Int(n) => Value::from(n),
            };
            map.insert(name.to_string(), v);
        }
        Value::Object(map)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("certificates serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, InvariantError> {
        let bad = |m: String| InvariantError::Config(format!("malformed certificate: {m}"));
        let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        let obj = v.as_object().ok_or_else(|| bad("not an object".into()))?;
        let text_of = |k: &str| -> Result<&str, InvariantError> {
            obj.get(k).and_then(Value::as_str).ok_or_else(|| bad(format!("missing field {k}")))
        };
        let a = |k: &str| -> Result<Laurent1, InvariantError> { Ok(Laurent1::parse(text_of(k)?, Var1::A)?) };
        let t = |k: &str| -> Result<Laurent1, InvariantError> { Ok(Laurent1::parse(text_of(k)?, Var1::TQuarter)?) };
        let lm = |k: &str| -> Result<Laurent2, InvariantError> { Ok(Laurent2::parse(text_of(k)?, Var2::LM)?) };
        let az = |k: &str| -> Result<Laurent2, InvariantError> { Ok(Laurent2::parse(text_of(k)?, Var2::AZ)?) };
        let int = |k: &str| -> Result<i32, InvariantError> {
            obj.get(k)
                .and_then(Value::as_i64)
                .and_then(|n| i32::try_from(n).ok())
                .ok_or_else(|| bad(format!("missing field {k}")))
        };
        Ok(InvariantCertificate {
            bracket_o: a("bracket_o")?,
            bracket_u: a("bracket_u")?,
            writhe_o_plus: int("writhe_o_plus")?,
            writhe_u_plus: int("writhe_u_plus")?,
            x_o_plus: a("x_o_plus")?,
            x_o_minus: a("x_o_minus")?,
            x_u_plus: a("x_u_plus")?,
            x_u_minus: a("x_u_minus")?,
            jones_o_plus: t("jones_o_plus")?,
            jones_o_minus: t("jones_o_minus")?,
            jones_u_plus: t("jones_u_plus")?,
            jones_u_minus: t("jones_u_minus")?,
            homfly_o_plus: lm("homfly_o_plus")?,
            homfly_o_minus: lm("homfly_o_minus")?,
            homfly_u_plus: lm("homfly_u_plus")?,
            homfly_u_minus: lm("homfly_u_minus")?,
            kauffman_o: az("kauffman_o")?,
            kauffman_u: az("kauffman_u")?,
        })
    }

    /// Names of the fields in which two certificates differ.
    pub fn differing_fields(&self, other: &Self) -> Vec<&'static str> {
        self.fields()
            .into_iter()
            .zip(other.fields())
            .filter(|((_, a), (_, b))| a != b)
            .map(|((name, _), _)| name)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Distinguished(Vec<&'static str>),
    IndistinguishableByComputedInvariants,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Distinguished(fields) => write!(f, "DISTINGUISHED: {}", fields.join(", ")),
            Verdict::IndistinguishableByComputedInvariants => f.write_str("INDISTINGUISHABLE"),
        }
    }
}

impl Verdict {
    pub fn from_certificates(a: &InvariantCertificate, b: &InvariantCertificate) -> Verdict {
        let fields: Vec<_> =
            a.differing_fields(b).into_iter().filter(|f| INVARIANT_FIELDS.contains(f)).collect();
        if fields.is_empty() {
            Verdict::IndistinguishableByComputedInvariants
        } else {
            Verdict::Distinguished(fields)
        }
    }
}

/// Compares two diagrams on the move-invariant fields of their certificates.
pub fn compare(a: &RailKnotoidDiagram, b: &RailKnotoidDiagram, bounds: &Bounds) -> Result<Verdict, InvariantError> {
    Ok(Verdict::from_certificates(&certificate(a, bounds)?, &certificate(b, bounds)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_certificate_is_trivial_and_round_trips() {
        let c = certificate(&RailKnotoidDiagram::empty(), &Bounds::default()).unwrap();
        for (name, value) in c.fields() {
            match value {
                FieldValue::Int(n) => assert_eq!(n, 0, "{name}"),
                FieldValue::Poly(_) => {}
            }
        }
        assert!(c.bracket_o.is_one() && c.kauffman_u.is_one() && c.homfly_o_minus.is_one());
        let again = InvariantCertificate::from_json(&c.to_json()).unwrap();
        assert_eq!(again, c);
        assert_eq!(
            compare(&RailKnotoidDiagram::empty(), &RailKnotoidDiagram::empty(), &Bounds::default()).unwrap(),
            Verdict::IndistinguishableByComputedInvariants
        );
    }
}
