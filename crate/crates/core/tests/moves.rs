use std::collections::BTreeSet;

use proptest::prelude::*;
use railknot::acceptance::{fixture, FIXTURES};
use railknot::closure::ClosureSide;
use railknot::diagram::planar::is_realizable;
use railknot::diagram::{parse_diagram, Dir, Flag, Rail, RailCrossing, RailItem, RailKnotoidDiagram, Sign};
use railknot::invariants::{certificate, rail_bracket, Bounds, INVARIANT_FIELDS};
use railknot::moves::*;
use railknot::poly::{Laurent1, Var1};

fn kinds(ks: &[MoveKind]) -> BTreeSet<MoveKind> {
    ks.iter().copied().collect()
}

fn kink() -> RailKnotoidDiagram {
    parse_diagram(br#"{"self_crossings": {"1": 1}, "arc_events": [{"self": 1, "role": "O"}, {"self": 1, "role": "U"}], "rail1": ["endpoint"], "rail2": ["endpoint"]}"#).unwrap()
}

#[test]
fn empty_diagram_moves() {
    let e = RailKnotoidDiagram::empty();
    let moves = enumerate_moves(&e, &all_kinds());
    for sign in [Sign::Pos, Sign::Neg] {
        assert!(moves.iter().any(|m| matches!(m, Move::R1Add { gap: 0, sign: s, .. } if *s == sign)));
    }
    assert!(moves.iter().any(|m| m.kind() == MoveKind::R2Add));
    for rail in Rail::BOTH {
        for rail_gap in [0, 1] {
            assert!(
                moves.iter().any(|m| matches!(m, Move::RailR2Add { rail: r, rail_gap: g, .. } if *r == rail && *g == rail_gap)),
                "no RailR2Add on {rail:?} at {rail_gap}"
            );
        }
    }
    assert!(moves.iter().all(|m| !m.kind().is_removal()));
    let mut sorted = moves.clone();
    sorted.sort();
    assert_eq!(moves, sorted);
}

#[test]
fn kink_has_one_curl_removal() {
    let removals: Vec<_> =
        enumerate_moves(&kink(), &all_kinds()).into_iter().filter(|m| m.kind() == MoveKind::R1Remove).collect();
    assert_eq!(removals, vec![Move::R1Remove { pos: 0 }]);
}

#[test]
fn curl_insertion_encoding() {
    let m = Move::R1Add { gap: 0, sign: Sign::Pos, over_first: true };
    let d = apply_move(&RailKnotoidDiagram::empty(), &m).unwrap();
    assert_eq!(d.render_gauss(), "O1+ U1+");
    assert_eq!(d, kink());
}

#[test]
fn rail_bigon_encoding_and_planarity() {
    // Lower crossing l2r first: a valid code but not a planar move on the empty diagram.
    let lower_first = Move::RailR2Add {
        rail: Rail::One,
        gap: 0,
        rail_gap: 1,
        flag: Flag::ArcUnderRail,
        first_dir: Dir::LeftToRight,
        first_lower: true,
    };
    let d = apply_move(&RailKnotoidDiagram::empty(), &lower_first).unwrap();
    let c = |id, dir| RailItem::Crossing(RailCrossing { id, flag: Flag::ArcUnderRail, dir });
    assert_eq!(d.rails[0], vec![RailItem::Endpoint, c(1, Dir::LeftToRight), c(2, Dir::RightToLeft)]);
    assert!(!is_realizable(&d));
    let planar = enumerate_moves(&RailKnotoidDiagram::empty(), &kinds(&[MoveKind::RailR2Add]));
    assert!(!planar.contains(&lower_first));
    let flipped = Move::RailR2Add {
        rail: Rail::One,
        gap: 0,
        rail_gap: 1,
        flag: Flag::ArcUnderRail,
        first_dir: Dir::RightToLeft,
        first_lower: true,
    };
    assert!(planar.contains(&flipped));
    let d = apply_move(&RailKnotoidDiagram::empty(), &flipped).unwrap();
    assert!(is_realizable(&d));
    assert_eq!(
        enumerate_moves(&d, &kinds(&[MoveKind::RailR2Remove])),
        vec![Move::RailR2Remove { rail: Rail::One, pos: 0 }]
    );
}

#[test]
fn rejection_names_the_condition() {
    let err = apply_move(&RailKnotoidDiagram::empty(), &Move::R1Remove { pos: 0 }).unwrap_err();
    assert!(matches!(err, MoveError::NotApplicable { kind: MoveKind::R1Remove, .. }));
    assert!(err.to_string().contains("self passes"), "{err}");
}

#[test]
fn slide_round_trip_keeps_certificate() {
    let d = fixture("rail_witness");
    let b = Bounds::default();
    let before = certificate(&d, &b).unwrap();
    let slides = enumerate_moves(&d, &kinds(&[MoveKind::SlideAdd]));
    assert!(!slides.is_empty());
    for m in slides {
        let after = apply_move(&d, &m).unwrap();
        let back = enumerate_moves(&after, &kinds(&[MoveKind::SlideRemove]));
        let inv = inverse(&d, &m).unwrap();
        assert!(back.contains(&inv));
        let restored = apply_move(&after, &inv).unwrap();
        assert_eq!(restored, d);
        assert_eq!(certificate(&after, &b).unwrap(), before);
    }
}

#[test]
fn simplify_examples() {
    assert_eq!(simplify(&kink()), RailKnotoidDiagram::empty());
    assert_eq!(simplify(&RailKnotoidDiagram::empty()), RailKnotoidDiagram::empty());
    let b = Bounds::default();
    let empty_cert = certificate(&RailKnotoidDiagram::empty(), &b).unwrap();
    for seed in 0..5 {
        let walked = random_walk(&RailKnotoidDiagram::empty(), &WalkSpec::new(15, seed).capped(10));
        let s = simplify(&walked);
        assert!(s.crossing_count() <= walked.crossing_count());
        let c = certificate(&s, &b).unwrap();
        let diff: Vec<_> =
            empty_cert.differing_fields(&c).into_iter().filter(|f| INVARIANT_FIELDS.contains(f)).collect();
        assert!(diff.is_empty(), "{diff:?}");
    }
}

#[test]
fn walks_are_deterministic() {
    let d = fixture("trefoil_arc");
    assert_eq!(random_walk(&d, &WalkSpec::new(0, 3)), d);
    let w = WalkSpec::new(12, 99).capped(12);
    assert_eq!(random_walk_logged(&d, &w), random_walk_logged(&d, &w));
}

#[test]
fn regular_walks_keep_rail_brackets() {
    let b = Bounds::default();
    let d = fixture("knotted_companion");
    for seed in 0..5 {
        let after = random_walk(&d, &WalkSpec::new(10, seed).regular().capped(12));
        for side in ClosureSide::BOTH {
            assert_eq!(rail_bracket(&after, side, &b).unwrap(), rail_bracket(&d, side, &b).unwrap());
        }
    }
}

#[test]
fn triangle_moves_occur() {
    let mut seen = BTreeSet::new();
    for (name, _) in FIXTURES {
        for seed in 0..20 {
            let (_, log) = random_walk_logged(&fixture(name), &WalkSpec::new(15, seed).regular().capped(10));
            seen.extend(log.iter().map(Move::kind));
        }
    }
    assert!(seen.contains(&MoveKind::R3) && seen.contains(&MoveKind::RailR3), "{seen:?}");
}

fn arb_diagram() -> impl Strategy<Value = RailKnotoidDiagram> {
    (0..FIXTURES.len(), any::<u64>(), 0usize..10, any::<bool>()).prop_map(|(i, seed, steps, regular)| {
        let mut w = WalkSpec::new(steps, seed).capped(9);
        w.regular_only = regular;
        random_walk(&fixture(FIXTURES[i].0), &w)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn insertions_are_undone_exactly(d in arb_diagram()) {
        let adds: BTreeSet<_> = MoveKind::ALL.into_iter().filter(|k| k.is_insertion()).collect();
        for m in enumerate_moves(&d, &adds) {
            let after = apply_move(&d, &m).unwrap();
            let inv = inverse(&d, &m).unwrap();
            prop_assert!(enumerate_moves(&after, &kinds(&[inv.kind()])).contains(&inv), "{m:?} -> {inv:?}");
            prop_assert_eq!(apply_move(&after, &inv).unwrap(), d.clone());
        }
    }

    #[test]
    fn moves_keep_validity_and_realizability(d in arb_diagram()) {
        prop_assert!(is_realizable(&d));
        for m in enumerate_moves(&d, &all_kinds()) {
            let after = apply_move(&d, &m).unwrap();
            prop_assert!(after.is_valid(), "{m:?}");
            prop_assert!(is_realizable(&after), "{m:?} on {d}");
        }
    }

    #[test]
    fn every_kind_keeps_the_certificate(d in arb_diagram(), pick in any::<prop::sample::Index>()) {
        let b = Bounds::default();
        let before = certificate(&d, &b).unwrap();
        for kind in MoveKind::ALL {
            let moves = enumerate_moves(&d, &kinds(&[kind]));
            if moves.is_empty() {
                continue;
            }
            let m = *pick.get(&moves);
            let after = certificate(&apply_move(&d, &m).unwrap(), &b).unwrap();
            let diff: Vec<_> = before
                .differing_fields(&after)
                .into_iter()
                .filter(|f| !kind.is_curl() || INVARIANT_FIELDS.contains(f))
                .collect();
            prop_assert!(diff.is_empty(), "{:?} changed {:?}", m, diff);
        }
    }

    #[test]
    fn curls_scale_rail_brackets(d in arb_diagram()) {
        let b = Bounds::default();
        for m in enumerate_moves(&d, &kinds(&[MoveKind::R1Add])) {
            let Move::R1Add { sign, .. } = m else { unreachable!() };
            let factor = match sign {
                Sign::Pos => Laurent1::monomial(Var1::A, 3, -1),
                Sign::Neg => Laurent1::monomial(Var1::A, -3, -1),
            };
            let after = apply_move(&d, &m).unwrap();
            for side in ClosureSide::BOTH {
                prop_assert_eq!(
                    rail_bracket(&after, side, &b).unwrap(),
                    factor.clone() * rail_bracket(&d, side, &b).unwrap()
                );
            }
        }
    }

    #[test]
    fn simplify_shrinks(d in arb_diagram()) {
        let s = simplify(&d);
        prop_assert!(s.crossing_count() <= d.crossing_count());
        prop_assert!(enumerate_moves(&s, &MoveKind::ALL.into_iter().filter(|k| k.is_removal()).collect()).is_empty());
    }
}
