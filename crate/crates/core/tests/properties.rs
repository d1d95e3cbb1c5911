use proptest::prelude::*;
use railknot::acceptance::{corpus, fixture, FIXTURES};
use railknot::closure::{companion, forget_rails_closure, orient, ClosureSide};
use railknot::diagram::{parse_diagram, serialize_diagram, ArcEvent, Orientation, RailItem, RailKnotoidDiagram};
use railknot::invariants::{
    certificate, compare, jones, rail_bracket, rail_invariant, Bounds, Family, PolyValue, Verdict,
};
use railknot::moves::{apply_move, enumerate_moves, random_walk, Move, MoveKind, WalkSpec};
use railknot::poly::{Laurent1, Laurent2, Var1, Var2};

fn l2(tag: Var2, terms: &[((i32, i32), i64)]) -> Laurent2 {
    Laurent2::from_terms(tag, terms.iter().copied())
}

fn arb_diagram() -> impl Strategy<Value = RailKnotoidDiagram> {
    (0..FIXTURES.len(), any::<u64>(), 0usize..10, any::<bool>()).prop_map(|(i, seed, steps, regular)| {
        let mut w = WalkSpec::new(steps, seed).capped(9);
        w.regular_only = regular;
        random_walk(&fixture(FIXTURES[i].0), &w)
    })
}

/// Rail crossings lying on the traversed side of the endpoint.
fn traversed(d: &RailKnotoidDiagram, side: ClosureSide) -> usize {
    d.rails
        .iter()
        .map(|items| {
            let e = items.iter().position(|i| *i == RailItem::Endpoint).unwrap();
            match side {
                ClosureSide::Over => items.len() - e - 1,
                ClosureSide::Under => e,
            }
        })
        .sum()
}

fn self_crossings(d: &RailKnotoidDiagram) -> usize {
    d.arc_events.iter().filter(|e| matches!(e, ArcEvent::SelfPass { .. })).count() / 2
}

#[test]
fn corpus_round_trips_through_json() {
    for (name, d) in corpus() {
        let bytes = serialize_diagram(&d);
        let back = parse_diagram(&bytes).unwrap();
        assert_eq!(back, d, "{name}");
        assert_eq!(serialize_diagram(&back), bytes, "{name}");
    }
    for (name, text) in FIXTURES {
        assert_eq!(serialize_diagram(&parse_diagram(text.as_bytes()).unwrap()), text.as_bytes(), "{name}");
    }
}

#[test]
fn figure_eight_values() {
    let b = Bounds::default();
    let c = certificate(&fixture("figure_eight"), &b).unwrap();
    let j = Laurent1::from_terms(Var1::TQuarter, [(-8, 1), (-4, -1), (0, 1), (4, -1), (8, 1)]);
    let h = l2(Var2::LM, &[((-2, 0), -1), ((0, 0), -1), ((2, 0), -1), ((0, 2), 1)]);
    let f = l2(
        Var2::AZ,
        &[
            ((-2, 0), -1),
            ((0, 0), -1),
            ((2, 0), -1),
            ((-1, 1), -1),
            ((1, 1), -1),
            ((-2, 2), 1),
            ((0, 2), 2),
            ((2, 2), 1),
            ((-1, 3), 1),
            ((1, 3), 1),
        ],
    );
    for v in [&c.jones_o_plus, &c.jones_o_minus, &c.jones_u_plus, &c.jones_u_minus] {
        assert_eq!(v, &j);
    }
    for v in [&c.homfly_o_plus, &c.homfly_o_minus, &c.homfly_u_plus, &c.homfly_u_minus] {
        assert_eq!(v, &h);
    }
    assert_eq!((&c.kauffman_o, &c.kauffman_u), (&f, &f));
    let mirrored = Laurent1::from_terms(Var1::TQuarter, j.terms().map(|(e, c)| (-e, c.clone())));
    assert_eq!(mirrored, j);
}

#[test]
fn compare_examples() {
    let b = Bounds::default();
    let empty = RailKnotoidDiagram::empty();
    assert_eq!(compare(&empty, &empty, &b).unwrap(), Verdict::IndistinguishableByComputedInvariants);
    match compare(&empty, &fixture("trefoil_arc"), &b).unwrap() {
        Verdict::Distinguished(fields) => assert!(fields.contains(&"jones_o_plus"), "{fields:?}"),
        v => panic!("{v:?}"),
    }
    for seed in 0..4 {
        let d = fixture("rail_witness");
        let w = random_walk(&d, &WalkSpec::new(10, seed).capped(11));
        assert_eq!(compare(&d, &w, &b).unwrap(), Verdict::IndistinguishableByComputedInvariants);
    }
}

#[test]
fn rail_pair_off_the_closing_path_is_invisible() {
    let mut checked = 0;
    for (_, d) in corpus() {
        for m in enumerate_moves(&d, &[MoveKind::RailR2Add].into()) {
            let Move::RailR2Add { rail, rail_gap, .. } = m else { unreachable!() };
            let e = d.rails[rail.index()].iter().position(|i| *i == RailItem::Endpoint).unwrap();
            let side = if rail_gap <= e { ClosureSide::Over } else { ClosureSide::Under };
            let after = apply_move(&d, &m).unwrap();
            assert_eq!(
                companion(&after, side).unwrap().render_gauss(),
                companion(&d, side).unwrap().render_gauss(),
                "{m:?}"
            );
            checked += 1;
        }
    }
    assert!(checked > 0);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn companions_are_single_valid_loops(d in arb_diagram()) {
        for side in ClosureSide::BOTH {
            let l = companion(&d, side).unwrap();
            prop_assert!(l.validate().is_ok());
            prop_assert_eq!(l.components.len(), 1);
            prop_assert_eq!(l.crossing_count(), self_crossings(&d) + traversed(&d, side));
            let f = forget_rails_closure(&d, side).unwrap();
            prop_assert_eq!(f.crossing_count(), l.crossing_count());
        }
        if d.rail_crossing_count() == 0 {
            prop_assert_eq!(companion(&d, ClosureSide::Over).unwrap(), companion(&d, ClosureSide::Under).unwrap());
        }
    }

    #[test]
    fn reversal_keeps_writhe_and_values(d in arb_diagram()) {
        let b = Bounds::default();
        for side in ClosureSide::BOTH {
            let l = companion(&d, side).unwrap();
            let r = orient(&l, Orientation::Minus).unwrap();
            prop_assert_eq!(r.writhe(), l.writhe());
            prop_assert_eq!(orient(&l, Orientation::Plus).unwrap(), l.clone());
        }
        let c = certificate(&d, &b).unwrap();
        prop_assert_eq!(&c.x_o_plus, &c.x_o_minus);
        prop_assert_eq!(&c.jones_u_plus, &c.jones_u_minus);
        prop_assert_eq!(&c.homfly_o_plus, &c.homfly_o_minus);
        prop_assert_eq!(&c.homfly_u_plus, &c.homfly_u_minus);
    }

    #[test]
    fn normalized_bracket_identity(d in arb_diagram()) {
        let b = Bounds::default();
        for side in ClosureSide::BOTH {
            let w = companion(&d, side).unwrap().writhe();
            let expected = Laurent1::monomial(Var1::A, 3, -1).pow(-w as i64).unwrap() * rail_bracket(&d, side, &b).unwrap();
            let x = rail_invariant(&d, Family::X, side, Orientation::Plus, &b).unwrap();
            prop_assert_eq!(x, PolyValue::One(expected));
        }
    }
}

#[test]
fn arcs_without_self_crossings_forget_to_unknots() {
    let b = Bounds::default();
    let mut checked = 0;
    for seed in 0..120 {
        let d = random_walk(&fixture("rail_crossing"), &WalkSpec::new(1 + seed as usize % 8, seed).capped(8));
        if self_crossings(&d) > 0 {
            continue;
        }
        for side in ClosureSide::BOTH {
            let l = forget_rails_closure(&d, side).unwrap();
            assert!(jones(&l, &b).unwrap().is_one(), "{d}");
        }
        checked += 1;
    }
    assert!(checked >= 10, "{checked}");
}
