//! The acceptance suite: eight criteria, each reported as pass or fail.
//!
//! Shared by the `acceptance` test target and `railknot selftest`.

use std::fmt;
use std::time::{Duration, Instant};

use crate::closure::{companion, forget_rails_closure, orient, ClosureSide};
use crate::diagram::{parse_diagram, serialize_diagram, LinkDiagram, Orientation, RailKnotoidDiagram, Sign};
use crate::invariants::{
    certificate, homflypt, homflypt_to_x, jones, kauffman_f, kauffman_to_x, normalized_bracket, rail_bracket,
    rail_invariant, Bounds, Family, PolyValue, INVARIANT_FIELDS,
};
use crate::moves::{enumerate_moves, random_walk, random_walk_logged, Move, MoveKind, WalkSpec};
use crate::poly::{Laurent1, Var1};

pub mod oracle;
pub mod search;

/// Fixture documents shipped with the crate.
pub const FIXTURES: [(&str, &str); 7] = [
    ("empty", include_str!("../fixtures/empty.json")),
    ("kink", include_str!("../fixtures/kink.json")),
    ("rail_crossing", include_str!("../fixtures/rail_crossing.json")),
    ("trefoil_arc", include_str!("../fixtures/trefoil_arc.json")),
    ("figure_eight", include_str!("../fixtures/figure_eight.json")),
    ("knotted_companion", include_str!("../fixtures/knotted_companion.json")),
    ("rail_witness", include_str!("../fixtures/rail_witness.json")),
];

pub fn fixture(name: &str) -> RailKnotoidDiagram {
    let (_, text) = FIXTURES.iter().find(|(n, _)| *n == name).unwrap_or_else(|| panic!("no fixture {name}"));
    parse_diagram(text.as_bytes()).expect("fixtures parse")
}

pub fn fixtures() -> Vec<(String, RailKnotoidDiagram)> {
    FIXTURES.iter().map(|(n, _)| (n.to_string(), fixture(n))).collect()
}

/// Fixtures plus seeded regular walks from each of them.
pub fn corpus() -> Vec<(String, RailKnotoidDiagram)> {
    let mut out = fixtures();
    for (name, d) in fixtures() {
        for seed in 0..3 {
            let w = WalkSpec::new(6, 1000 + seed).regular().capped(10);
            out.push((format!("{name}+walk{seed}"), random_walk(&d, &w)));
        }
    }
    out
}

/// Outcome of one criterion.
#[derive(Debug, Clone)]
pub struct Report {
    pub number: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} {}: {} ({:.2}s) {}",
            self.number,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn a_unit(exp: i32) -> Laurent1 {
    Laurent1::monomial(Var1::A, exp, if exp % 2 == 0 { 1 } else { -1 })
}

pub const TITLES: [&str; 8] = [
    "trivial baseline",
    "move invariance of the certificate",
    "regular invariance and curl factors of the rail brackets",
    "normalized bracket identity against a brute-force state sum",
    "open trefoil companions",
    "rail-essential diagram with trivial forget-rails closure",
    "cross-oracle consistency",
    "determinism",
];

pub fn run(number: u8) -> Report {
    let start = Instant::now();
    let result = match number {
        1 => trivial_baseline(),
        2 => move_invariance(),
        3 => regular_invariance(),
        4 => bracket_identity(),
        5 => open_trefoil(),
        6 => rail_essential_witness(),
        7 => cross_oracle(),
        8 => determinism(),
        _ => Err(format!("no criterion {number}")),
    };
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    let title = TITLES.get(number as usize - 1).copied().unwrap_or("unknown");
    Report { number, title, passed, detail, elapsed: start.elapsed() }
}

pub fn run_all() -> Vec<Report> {
    (1..=8).map(run).collect()
}

fn trivial_baseline() -> Check {
    let c = certificate(&RailKnotoidDiagram::empty(), &Bounds::default()).map_err(|e| e.to_string())?;
    let polys = [
        c.bracket_o.is_one(),
        c.bracket_u.is_one(),
        c.x_o_plus.is_one() && c.x_o_minus.is_one() && c.x_u_plus.is_one() && c.x_u_minus.is_one(),
        c.jones_o_plus.is_one() && c.jones_o_minus.is_one() && c.jones_u_plus.is_one() && c.jones_u_minus.is_one(),
        c.homfly_o_plus.is_one() && c.homfly_o_minus.is_one() && c.homfly_u_plus.is_one() && c.homfly_u_minus.is_one(),
        c.kauffman_o.is_one() && c.kauffman_u.is_one(),
    ];
    ensure(polys.iter().all(|&p| p), || format!("non-trivial field in {}", c.to_json()))?;
    ensure(c.writhe_o_plus == 0 && c.writhe_u_plus == 0, || "non-zero writhe".into())?;
    Ok("all 16 polynomial fields are 1, writhes 0".into())
}

/// Regular walks must keep every field; full walks the move-invariant ones.
fn move_invariance() -> Check {
    let bounds = Bounds::default();
    let bases = fixtures();
    let mut pairs = 0;
    let mut kinds_seen = std::collections::BTreeSet::new();
    for (name, d) in &bases {
        let before = certificate(d, &bounds).map_err(|e| e.to_string())?;
        for seed in 0..15u64 {
            let regular = seed % 3 != 2;
            let mut w = WalkSpec::new(1 + (seed as usize * 7) % 15, seed).capped(12);
            w.regular_only = regular;
            let (after, log) = random_walk_logged(d, &w);
            kinds_seen.extend(log.iter().map(Move::kind));
            let cert = certificate(&after, &bounds).map_err(|e| format!("{name} seed {seed}: {e}"))?;
            let diff: Vec<_> = before
                .differing_fields(&cert)
                .into_iter()
                .filter(|f| regular || INVARIANT_FIELDS.contains(f))
                .collect();
            ensure(diff.is_empty(), || format!("{name} seed {seed}: {diff:?} changed after {log:?}"))?;
            pairs += 1;
        }
    }
    let required = [
        MoveKind::R2Add,
        MoveKind::R2Remove,
        MoveKind::R3,
        MoveKind::RailR2Add,
        MoveKind::RailR2Remove,
        MoveKind::RailR3,
        MoveKind::SlideAdd,
        MoveKind::SlideRemove,
    ];
    let missing: Vec<_> = required.iter().filter(|k| !kinds_seen.contains(k)).collect();
    ensure(missing.is_empty(), || format!("walks never used {missing:?}"))?;
    Ok(format!("{pairs} walks, {} move kinds exercised", kinds_seen.len()))
}

fn regular_invariance() -> Check {
    let bounds = Bounds::default();
    let mut walks = 0;
    let mut curls = 0;
    for (name, d) in fixtures() {
        let before: Vec<Laurent1> = ClosureSide::BOTH
            .iter()
            .map(|&s| rail_bracket(&d, s, &bounds))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        for seed in 0..4 {
            let after = random_walk(&d, &WalkSpec::new(10, 77 + seed).regular().capped(12));
            for (i, &s) in ClosureSide::BOTH.iter().enumerate() {
                let b = rail_bracket(&after, s, &bounds).map_err(|e| e.to_string())?;
                ensure(b == before[i], || format!("{name} seed {seed}: rail bracket changed"))?;
            }
            walks += 1;
        }
        let kinds = [MoveKind::R1Add].into_iter().collect();
        for m in enumerate_moves(&d, &kinds) {
            let Move::R1Add { sign, .. } = m else { unreachable!() };
            let next = crate::moves::apply_move(&d, &m).map_err(|e| e.to_string())?;
            let factor = a_unit(if sign == Sign::Pos { 3 } else { -3 });
            for (i, &s) in ClosureSide::BOTH.iter().enumerate() {
                let b = rail_bracket(&next, s, &bounds).map_err(|e| e.to_string())?;
                ensure(b == factor.clone() * before[i].clone(), || format!("{name}: {m:?} factor wrong"))?;
            }
            curls += 1;
        }
    }
    Ok(format!("{walks} regular walks, {curls} single curls"))
}

fn bracket_identity() -> Check {
    let bounds = Bounds::default();
    let mut checked = 0;
    for (name, d) in corpus() {
        for side in ClosureSide::BOTH {
            let unoriented = companion(&d, side).map_err(|e| e.to_string())?;
            let bracket = rail_bracket(&d, side, &bounds).map_err(|e| e.to_string())?;
            ensure(bracket == oracle::bracket(&unoriented), || format!("{name}: bracket disagrees with the oracle"))?;
            for o in [Orientation::Plus, Orientation::Minus] {
                let oriented = orient(&unoriented, o).map_err(|e| e.to_string())?;
                let w = oracle::writhe(&oriented);
                let PolyValue::One(x) = rail_invariant(&d, Family::X, side, o, &bounds).map_err(|e| e.to_string())?
                else {
                    return Err("X is one-variable".into());
                };
                ensure(x == a_unit(-3 * w) * bracket.clone(), || format!("{name}: X is not the normalized bracket"))?;
                ensure(x == oracle::normalized(&oriented), || format!("{name}: X disagrees with the oracle"))?;
                let PolyValue::One(j) =
                    rail_invariant(&d, Family::Jones, side, o, &bounds).map_err(|e| e.to_string())?
                else {
                    return Err("Jones is one-variable".into());
                };
                ensure(j == x.substitute_a_to_t(), || format!("{name}: Jones is not the substitution of X"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (diagram, side, orientation) triples"))
}

pub const RIGHT_TREFOIL_JONES: &str = "1*t^1 + 1*t^3 + -1*t^4";

fn open_trefoil() -> Check {
    let d = fixture("trefoil_arc");
    let c = certificate(&d, &Bounds::default()).map_err(|e| e.to_string())?;
    let over = companion(&d, ClosureSide::Over).map_err(|e| e.to_string())?;
    let under = companion(&d, ClosureSide::Under).map_err(|e| e.to_string())?;
    ensure(over == under, || "over and under companions differ".into())?;
    for j in [&c.jones_o_plus, &c.jones_u_plus, &c.jones_o_minus, &c.jones_u_minus] {
        ensure(j.to_string() == RIGHT_TREFOIL_JONES, || format!("companion Jones {j}"))?;
    }
    let brute = oracle::normalized(&over).substitute_a_to_t();
    ensure(brute.to_string() == RIGHT_TREFOIL_JONES, || format!("oracle Jones {brute}"))?;
    Ok(format!("jones_o = jones_u = {RIGHT_TREFOIL_JONES}"))
}

fn trivial_closures(d: &RailKnotoidDiagram) -> Result<bool, String> {
    for side in ClosureSide::BOTH {
        let l = forget_rails_closure(d, side).map_err(|e| e.to_string())?;
        if !jones(&l, &Bounds::default()).map_err(|e| e.to_string())?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn rail_essential_witness() -> Check {
    let found = search::find_witness(5).ok_or("no witness with at most 5 rail crossings")?;
    let stored = fixture("rail_witness");
    ensure(found == stored, || {
        format!("search found {found}, fixture holds {stored}:\n{}", String::from_utf8_lossy(&serialize_diagram(&found)))
    })?;
    ensure(found.self_crossings.is_empty(), || "witness has self-crossings".into())?;
    let c = certificate(&found, &Bounds::default()).map_err(|e| e.to_string())?;
    ensure(!c.jones_o_plus.is_one(), || "witness over companion is trivial".into())?;
    ensure(trivial_closures(&found)?, || "witness forget-rails closure is knotted".into())?;
    let pictured = fixture("knotted_companion");
    let p = certificate(&pictured, &Bounds::default()).map_err(|e| e.to_string())?;
    ensure(!p.jones_o_plus.is_one() && trivial_closures(&pictured)?, || "pictured example fails".into())?;
    Ok(format!(
        "witness {found} with {} rail crossings, jones_o = {}; pictured example jones_o = {}",
        found.rail_crossing_count(),
        c.jones_o_plus,
        p.jones_o_plus
    ))
}

fn unknot_with_kinks(signs: &[Sign], over_first: &[bool]) -> LinkDiagram {
    use crate::diagram::{CrossPass, Role};
    let mut comp = Vec::new();
    for (i, &first_over) in over_first.iter().enumerate() {
        let id = i as u32 + 1;
        let (a, b) = if first_over { (Role::Over, Role::Under) } else { (Role::Under, Role::Over) };
        comp.push(CrossPass { id, role: a });
        comp.push(CrossPass { id, role: b });
    }
    LinkDiagram {
        components: vec![comp],
        crossing_signs: signs.iter().enumerate().map(|(i, &s)| (i as u32 + 1, s)).collect(),
    }
}

fn cross_oracle() -> Check {
    let bounds = Bounds::default();
    let mut companions = 0;
    for (name, d) in corpus() {
        for side in ClosureSide::BOTH {
            let l = companion(&d, side).map_err(|e| e.to_string())?;
            if l.crossing_count() > 10 {
                continue;
            }
            let h = homflypt(&l, &bounds).map_err(|e| e.to_string())?;
            let via_h = homflypt_to_x(&h).map_err(|e| e.to_string())?.substitute_a_to_t();
            let j = jones(&l, &bounds).map_err(|e| e.to_string())?;
            ensure(via_h == j, || format!("{name}: HOMFLYPT specialization {via_h} vs Jones {j}"))?;
            let f = kauffman_f(&l, &bounds).map_err(|e| e.to_string())?;
            let x = normalized_bracket(&l, &bounds).map_err(|e| e.to_string())?;
            ensure(kauffman_to_x(&f).map_err(|e| e.to_string())? == x, || format!("{name}: Kauffman specialization"))?;
            companions += 1;
        }
    }
    let mut kinked = 0;
    for k in 0..=3usize {
        for mask in 0..1u32 << (2 * k) {
            let signs: Vec<Sign> = (0..k).map(|i| if mask >> i & 1 == 1 { Sign::Pos } else { Sign::Neg }).collect();
            let over_first: Vec<bool> = (0..k).map(|i| mask >> (k + i) & 1 == 1).collect();
            let f = kauffman_f(&unknot_with_kinks(&signs, &over_first), &bounds).map_err(|e| e.to_string())?;
            ensure(f.is_one(), || format!("kinked unknot {signs:?} has F = {f}"))?;
            kinked += 1;
        }
    }
    Ok(format!("{companions} companions, {kinked} kinked unknots"))
}

fn determinism() -> Check {
    let mut runs = 0;
    for (name, text) in FIXTURES {
        for seed in [0u64, 7, 12345] {
            let walk = WalkSpec::new(12, seed).capped(10);
            let a = crate::cli::perturb_document(text.as_bytes(), &walk).map_err(|e| e.to_string())?;
            let b = crate::cli::perturb_document(text.as_bytes(), &walk).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("{name} seed {seed}: perturb differs between runs"))?;
            let d = parse_diagram(&a).map_err(|e| e.to_string())?;
            let c1 = certificate(&d, &Bounds::default()).map_err(|e| e.to_string())?.to_json();
            let c2 = certificate(&d, &Bounds::default()).map_err(|e| e.to_string())?.to_json();
            ensure(c1 == c2, || format!("{name} seed {seed}: certificate differs between runs"))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} perturb and certificate runs repeated bit-identically"))
}
