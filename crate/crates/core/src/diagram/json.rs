//! JSON document format for rail knotoid diagrams.
//!
//! ```json
//! {
//!   "self_crossings": {"1": 1, "2": -1},
//!   "arc_events": [{"self": 1, "role": "O"}, {"rail": 1, "id": 3}, {"self": 1, "role": "U"}],
//!   "rail1": ["endpoint", {"id": 3, "flag": "under", "dir": "l2r"}],
//!   "rail2": ["endpoint"]
//! }
//! ```

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};

use super::{
    ArcEvent, CrossingId, DiagramError, Dir, Flag, Rail, RailCrossing, RailItem, RailKnotoidDiagram, Role,
    Sign,
};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    self_crossings: SignTable,
    arc_events: Vec<EventDoc>,
    rail1: Vec<ItemDoc>,
    rail2: Vec<ItemDoc>,
}

/// Crossing id to sign map that rejects repeated keys.
struct SignTable(Vec<(String, i64)>);

impl Serialize for SignTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(k, v)| (k, v)))
    }
}

impl<'de> Deserialize<'de> for SignTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = SignTable;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from crossing id to sign")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<SignTable, A::Error> {
                let mut out: Vec<(String, i64)> = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, i64>()? {
                    if out.iter().any(|(seen, _)| *seen == k) {
                        return Err(de::Error::custom(format!("duplicated crossing id {k}")));
                    }
                    out.push((k, v));
                }
                Ok(SignTable(out))
            }
        }
        d.deserialize_map(V)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EventDoc {
    SelfPass(SelfPassDoc),
    RailPass(RailPassDoc),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SelfPassDoc {
    #[serde(rename = "self")]
    id: CrossingId,
    role: RoleDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RailPassDoc {
    rail: u8,
    id: CrossingId,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
enum RoleDoc {
    O,
    U,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ItemDoc {
    Endpoint(EndpointTag),
    Crossing(CrossingDoc),
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum EndpointTag {
    Endpoint,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CrossingDoc {
    id: CrossingId,
    flag: FlagDoc,
    dir: DirDoc,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum FlagDoc {
    Over,
    Under,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum DirDoc {
    L2r,
    R2l,
}

fn syntax(msg: impl fmt::Display) -> DiagramError {
    DiagramError::Syntax(msg.to_string())
}

/// Parses a diagram document and checks the structural invariants.
pub fn parse_diagram(text: &[u8]) -> Result<RailKnotoidDiagram, DiagramError> {
    let doc: Document = serde_json::from_slice(text).map_err(syntax)?;
    let mut d = RailKnotoidDiagram::default();
    for (key, value) in doc.self_crossings.0 {
        let id: CrossingId = key.parse().map_err(|_| syntax(format!("bad crossing id {key:?}")))?;
        let sign = Sign::from_value(value).ok_or_else(|| syntax(format!("crossing {id}: sign must be 1 or -1")))?;
        if d.self_crossings.insert(id, sign).is_some() {
            return Err(syntax(format!("duplicated crossing id {id}")));
        }
    }
    for ev in doc.arc_events {
        d.arc_events.push(match ev {
            EventDoc::SelfPass(p) => ArcEvent::SelfPass {
                id: p.id,
                role: match p.role {
                    RoleDoc::O => Role::Over,
                    RoleDoc::U => Role::Under,
                },
            },
            EventDoc::RailPass(p) => ArcEvent::RailPass {
                rail: Rail::from_number(p.rail as u64).ok_or_else(|| syntax(format!("no rail {}", p.rail)))?,
                id: p.id,
            },
        });
    }
    for (rail, items) in [(Rail::One, doc.rail1), (Rail::Two, doc.rail2)] {
        for item in items {
            let item = match item {
                ItemDoc::Endpoint(_) => RailItem::Endpoint,
                ItemDoc::Crossing(c) => RailItem::Crossing(RailCrossing {
                    id: c.id,
                    flag: match c.flag {
                        FlagDoc::Over => Flag::ArcOverRail,
                        FlagDoc::Under => Flag::ArcUnderRail,
                    },
                    dir: match c.dir {
                        DirDoc::L2r => Dir::LeftToRight,
                        DirDoc::R2l => Dir::RightToLeft,
                    },
                }),
            };
            d.rail_mut(rail).push(item);
        }
    }
    d.ensure_valid()?;
    Ok(d)
}

/// Canonical document: pretty-printed, self-crossings in ascending id order,
/// terminated by a newline.
pub fn serialize_diagram(d: &RailKnotoidDiagram) -> Vec<u8> {
    let rail_doc = |items: &[RailItem]| -> Vec<ItemDoc> {
        items
            .iter()
            .map(|item| match item {
                RailItem::Endpoint => ItemDoc::Endpoint(EndpointTag::Endpoint),
                RailItem::Crossing(c) => ItemDoc::Crossing(CrossingDoc {
                    id: c.id,
                    flag: match c.flag {
                        Flag::ArcOverRail => FlagDoc::Over,
                        Flag::ArcUnderRail => FlagDoc::Under,
                    },
                    dir: match c.dir {
                        Dir::LeftToRight => DirDoc::L2r,
                        Dir::RightToLeft => DirDoc::R2l,
                    },
                }),
            })
            .collect()
    };
    let signs: BTreeMap<CrossingId, Sign> = d.self_crossings.clone();
    let doc = Document {
        self_crossings: SignTable(signs.iter().map(|(id, s)| (id.to_string(), s.value() as i64)).collect()),
        arc_events: d
            .arc_events
            .iter()
            .map(|ev| match *ev {
                ArcEvent::SelfPass { id, role } => EventDoc::SelfPass(SelfPassDoc {
                    id,
                    role: match role {
                        Role::Over => RoleDoc::O,
                        Role::Under => RoleDoc::U,
                    },
                }),
                ArcEvent::RailPass { rail, id } => EventDoc::RailPass(RailPassDoc { rail: rail.number(), id }),
            })
            .collect(),
        rail1: rail_doc(d.rail(Rail::One)),
        rail2: rail_doc(d.rail(Rail::Two)),
    };
    let mut out = serde_json::to_vec_pretty(&doc).expect("diagram documents always serialize");
    out.push(b'\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = r#"{
      "self_crossings": {"1": 1, "2": 1, "3": 1},
      "arc_events": [
        {"self": 1, "role": "O"}, {"self": 2, "role": "U"}, {"self": 3, "role": "O"},
        {"self": 1, "role": "U"}, {"self": 2, "role": "O"}, {"self": 3, "role": "U"}
      ],
      "rail1": ["endpoint"],
      "rail2": ["endpoint"]
    }"#;

    #[test]
    fn parses_empty_document() {
        let d = parse_diagram(br#"{"self_crossings": {}, "arc_events": [], "rail1": ["endpoint"], "rail2": ["endpoint"]}"#)
            .unwrap();
        assert_eq!(d, RailKnotoidDiagram::empty());
    }

    #[test]
    fn parses_open_trefoil() {
        let d = parse_diagram(TREFOIL.as_bytes()).unwrap();
        assert_eq!(d.self_crossings.len(), 3);
        assert_eq!(d.arc_events.len(), 6);
    }

    #[test]
    fn duplicated_id_is_named() {
        let text = r#"{"self_crossings": {"4": 1, "4": -1}, "arc_events": [], "rail1": ["endpoint"], "rail2": ["endpoint"]}"#;
        let err = parse_diagram(text.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("duplicated crossing id 4"), "{err}");

        let text = r#"{"self_crossings": {"4": 1}, "arc_events": [{"self": 4, "role": "O"}, {"self": 4, "role": "O"}],
                       "rail1": ["endpoint"], "rail2": ["endpoint"]}"#;
        let err = parse_diagram(text.as_bytes()).unwrap_err();
        assert!(matches!(err, DiagramError::Invalid(ref v) if v[0].id() == Some(4)), "{err}");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"self_crossings": {}, "arc_events": [], "rail1": ["endpoint"], "rail2": ["endpoint"], "x": 1}"#;
        assert!(matches!(parse_diagram(text.as_bytes()), Err(DiagramError::Syntax(_))));
        let text = r#"{"self_crossings": {}, "arc_events": [{"rail": 1, "id": 2, "extra": 0}],
                       "rail1": ["endpoint", {"id": 2, "flag": "over", "dir": "l2r"}], "rail2": ["endpoint"]}"#;
        assert!(matches!(parse_diagram(text.as_bytes()), Err(DiagramError::Syntax(_))));
    }

    #[test]
    fn canonical_round_trip() {
        let d = parse_diagram(TREFOIL.as_bytes()).unwrap();
        let bytes = serialize_diagram(&d);
        let again = parse_diagram(&bytes).unwrap();
        assert_eq!(again, d);
        assert_eq!(serialize_diagram(&again), bytes);
    }
}
