//! The `railknot` command line.
//!
//! Exit codes: 0 success, 1 validation failure or failed self-test, 2 usage
//! or parse error, 3 diagrams distinguished, 4 resource bound exceeded.
//! Errors are also reported on stderr as one JSON object per line.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::acceptance;
use crate::closure::{companion, forget_rails_closure, orient, ClosureSide};
use crate::diagram::{parse_diagram, serialize_diagram, DiagramError, Orientation, RailKnotoidDiagram};
use crate::invariants::{
    certificate, rail_bracket, rail_invariant, rail_kauffman, Bounds, Family, InvariantError, Verdict,
};
use crate::moves::{random_walk, WalkSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DISTINGUISHED: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "railknot", version, about = "Rail knotoid diagrams: moves, companion loops and invariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a diagram file against the structural invariants.
    Validate { file: PathBuf },
    /// Print the invariant certificate, or the selected fields of it.
    Invariants {
        file: PathBuf,
        #[arg(long, value_enum)]
        side: Option<SideArg>,
        #[arg(long, value_enum)]
        orient: Option<OrientArg>,
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        #[arg(long, value_name = "N")]
        max_crossings: Option<usize>,
    },
    /// Print the Gauss code of a companion loop or forget-rails closure.
    Closure {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Both)]
        side: SideArg,
        #[arg(long, value_enum, default_value_t = OrientArg::Plus)]
        orient: OrientArg,
        #[arg(long)]
        forget_rails: bool,
    },
    /// Compare two diagrams on the move-invariant certificate fields.
    Compare {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long, value_name = "N")]
        max_crossings: Option<usize>,
    },
    /// Apply a seeded random walk of moves and print the resulting diagram.
    Perturb {
        file: PathBuf,
        #[arg(long, value_name = "N")]
        steps: usize,
        #[arg(long, value_name = "S")]
        seed: u64,
        /// Leave out the curl moves.
        #[arg(long)]
        regular: bool,
        /// Skip insertions that would exceed this many crossings.
        #[arg(long, value_name = "N")]
        max_crossings: Option<usize>,
    },
    /// Run the acceptance suite.
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Over,
    Under,
    Both,
}

impl SideArg {
    fn sides(self) -> Vec<ClosureSide> {
        match self {
            SideArg::Over => vec![ClosureSide::Over],
            SideArg::Under => vec![ClosureSide::Under],
            SideArg::Both => ClosureSide::BOTH.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrientArg {
    Plus,
    Minus,
}

impl From<OrientArg> for Orientation {
    fn from(o: OrientArg) -> Self {
        match o {
            OrientArg::Plus => Orientation::Plus,
            OrientArg::Minus => Orientation::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Bracket,
    X,
    Jones,
    Homflypt,
    Kauffman,
    All,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
    pub details: Option<Value>,
}

impl Failure {
    fn new(code: i32, kind: &'static str, message: impl Into<String>) -> Self {
        Failure { code, kind, message: message.into(), details: None }
    }

    fn to_json(&self) -> String {
        let mut obj = json!({ "error": self.kind, "message": self.message, "exit_code": self.code });
        if let Some(d) = &self.details {
            obj["details"] = d.clone();
        }
        obj.to_string()
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::TooManyCrossings { .. } => Failure::new(EXIT_RESOURCE, "resource_bound", e.to_string()),
            InvariantError::Diagram(d) => d.into(),
            InvariantError::Poly(_) => Failure::new(EXIT_USAGE, "internal", e.to_string()),
            InvariantError::Config(_) => Failure::new(EXIT_USAGE, "config", e.to_string()),
        }
    }
}

impl From<DiagramError> for Failure {
    fn from(e: DiagramError) -> Self {
        let kind = match e {
            DiagramError::Syntax(_) => "parse",
            DiagramError::Invalid(_) | DiagramError::InvalidLink(_) => "invalid_diagram",
        };
        Failure::new(EXIT_USAGE, kind, e.to_string())
    }
}

/// Output of a successful command.
pub struct Success {
    pub code: i32,
    pub stdout: Vec<u8>,
}

fn read_input(path: &Path, stdin: &mut dyn Read) -> Result<Vec<u8>, Failure> {
    if path == Path::new("-") {
        let mut buf = Vec::new();
        stdin.read_to_end(&mut buf).map_err(|e| Failure::new(EXIT_USAGE, "io", format!("stdin: {e}")))?;
        return Ok(buf);
    }
    std::fs::read(path).map_err(|e| Failure::new(EXIT_USAGE, "io", format!("{}: {e}", path.display())))
}

fn load(path: &Path, stdin: &mut dyn Read) -> Result<RailKnotoidDiagram, Failure> {
    Ok(parse_diagram(&read_input(path, stdin)?)?)
}

fn bounds(flag: Option<usize>) -> Result<Bounds, Failure> {
    match flag {
        Some(n) => Ok(Bounds::uniform(n)),
        None => Ok(Bounds::from_env()?),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum FieldFamily {
    Bracket,
    Writhe,
    One(Family),
    Kauffman,
}

/// Certificate fields with the family, side and orientation each depends on.
fn field_table() -> Vec<(&'static str, FieldFamily, ClosureSide, Option<Orientation>)> {
    use ClosureSide::{Over, Under};
    use FieldFamily as F;
    use Orientation::{Minus, Plus};
    vec![
        ("bracket_o", F::Bracket, Over, None),
        ("bracket_u", F::Bracket, Under, None),
        ("writhe_o_plus", F::Writhe, Over, Some(Plus)),
        ("writhe_u_plus", F::Writhe, Under, Some(Plus)),
        ("x_o_plus", F::One(Family::X), Over, Some(Plus)),
        ("x_o_minus", F::One(Family::X), Over, Some(Minus)),
        ("x_u_plus", F::One(Family::X), Under, Some(Plus)),
        ("x_u_minus", F::One(Family::X), Under, Some(Minus)),
        ("jones_o_plus", F::One(Family::Jones), Over, Some(Plus)),
        ("jones_o_minus", F::One(Family::Jones), Over, Some(Minus)),
        ("jones_u_plus", F::One(Family::Jones), Under, Some(Plus)),
        ("jones_u_minus", F::One(Family::Jones), Under, Some(Minus)),
        ("homfly_o_plus", F::One(Family::Homflypt), Over, Some(Plus)),
        ("homfly_o_minus", F::One(Family::Homflypt), Over, Some(Minus)),
        ("homfly_u_plus", F::One(Family::Homflypt), Under, Some(Plus)),
        ("homfly_u_minus", F::One(Family::Homflypt), Under, Some(Minus)),
        ("kauffman_o", F::Kauffman, Over, None),
        ("kauffman_u", F::Kauffman, Under, None),
    ]
}

fn family_selected(family: FamilyArg, f: FieldFamily) -> bool {
    match (family, f) {
        (FamilyArg::All, _) => true,
        (FamilyArg::Bracket, FieldFamily::Bracket) => true,
        (FamilyArg::X, FieldFamily::One(Family::X)) => true,
        (FamilyArg::Jones, FieldFamily::One(Family::Jones)) => true,
        (FamilyArg::Homflypt, FieldFamily::One(Family::Homflypt)) => true,
        (FamilyArg::Kauffman, FieldFamily::Kauffman) => true,
        _ => false,
    }
}

/// The selected certificate fields as a JSON object. With no selection the
/// whole certificate is returned.
pub fn invariants_json(
    d: &RailKnotoidDiagram,
    side: Option<SideArg>,
    orient: Option<OrientArg>,
    family: Option<FamilyArg>,
    b: &Bounds,
) -> Result<Value, InvariantError> {
    if side.is_none() && orient.is_none() && family.is_none() {
        return Ok(certificate(d, b)?.to_json_value());
    }
    let sides = side.unwrap_or(SideArg::Both).sides();
    let orientation: Orientation = orient.unwrap_or(OrientArg::Plus).into();
    let family = family.unwrap_or(FamilyArg::All);
    let mut map = Map::new();
    for (name, f, s, o) in field_table() {
        if !sides.contains(&s) || !family_selected(family, f) || o.is_some_and(|o| o != orientation) {
            continue;
        }
        let value = match f {
            FieldFamily::Bracket => Value::String(rail_bracket(d, s, b)?.to_string()),
            FieldFamily::Writhe => Value::from(companion(d, s)?.writhe()),
            FieldFamily::One(fam) => Value::String(rail_invariant(d, fam, s, orientation, b)?.to_string()),
            FieldFamily::Kauffman => Value::String(rail_kauffman(d, s, b)?.to_string()),
        };
        map.insert(name.to_string(), value);
    }
    Ok(Value::Object(map))
}

fn pretty(v: &Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s.into_bytes()
}

/// The perturbed document for `perturb`, as a pure function of its inputs.
pub fn perturb_document(text: &[u8], walk: &WalkSpec) -> Result<Vec<u8>, DiagramError> {
    let d = parse_diagram(text)?;
    Ok(serialize_diagram(&random_walk(&d, walk)))
}

/// Runs one parsed command.
pub fn execute(cmd: &Command, stdin: &mut dyn Read) -> Result<Success, Failure> {
    let ok = |stdout: Vec<u8>| Ok(Success { code: EXIT_OK, stdout });
    match cmd {
        Command::Validate { file } => {
            let text = read_input(file, stdin)?;
            match parse_diagram(&text) {
                Ok(_) => ok(b"OK\n".to_vec()),
                Err(DiagramError::Invalid(violations)) => {
                    let lines: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
                    let mut f = Failure::new(EXIT_INVALID, "validation", format!("{} violation(s)", lines.len()));
                    f.details = Some(json!(lines));
                    Err(f)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Invariants { file, side, orient, family, max_crossings } => {
            let b = bounds(*max_crossings)?;
            let d = load(file, stdin)?;
            ok(pretty(&invariants_json(&d, *side, *orient, *family, &b)?))
        }
        Command::Closure { file, side, orient: orientation, forget_rails } => {
            let d = load(file, stdin)?;
            let sides = side.sides();
            let mut out = String::new();
            for s in &sides {
                let loop_ = if *forget_rails { forget_rails_closure(&d, *s)? } else { companion(&d, *s)? };
                let loop_ = orient(&loop_, (*orientation).into())?;
                if sides.len() > 1 {
                    out.push_str(if *s == ClosureSide::Over { "over: " } else { "under: " });
                }
                out.push_str(&loop_.render_gauss());
                out.push('\n');
            }
            ok(out.into_bytes())
        }
        Command::Compare { file_a, file_b, max_crossings } => {
            let b = bounds(*max_crossings)?;
            let a = certificate(&load(file_a, stdin)?, &b)?;
            let c = certificate(&load(file_b, stdin)?, &b)?;
            let verdict = Verdict::from_certificates(&a, &c);
            let code = match verdict {
                Verdict::Distinguished(_) => EXIT_DISTINGUISHED,
                Verdict::IndistinguishableByComputedInvariants => EXIT_OK,
            };
            Ok(Success { code, stdout: format!("{verdict}\n").into_bytes() })
        }
        Command::Perturb { file, steps, seed, regular, max_crossings } => {
            let text = read_input(file, stdin)?;
            let walk = WalkSpec { steps: *steps, seed: *seed, regular_only: *regular, max_crossings: *max_crossings };
            ok(perturb_document(&text, &walk)?)
        }
        Command::Selftest => {
            let reports = acceptance::run_all();
            let mut out = String::new();
            for r in &reports {
                out.push_str(&r.to_string());
                out.push('\n');
            }
            let code = if reports.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_INVALID };
            Ok(Success { code, stdout: out.into_bytes() })
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if !e.use_stderr() {
                let _ = stdout.write_all(rendered.as_bytes());
                return EXIT_OK;
            }
            let f = Failure::new(EXIT_USAGE, "usage", rendered.trim_end());
            let _ = writeln!(stderr, "{}", f.to_json());
            return EXIT_USAGE;
        }
    };
    match execute(&cli.command, stdin) {
        Ok(s) => {
            let _ = stdout.write_all(&s.stdout);
            s.code
        }
        Err(f) => {
            if let Some(Value::Array(lines)) = &f.details {
                for line in lines.iter().filter_map(Value::as_str) {
                    let _ = writeln!(stdout, "{line}");
                }
            }
            let _ = writeln!(stderr, "{}", f.to_json());
            f.code
        }
    }
}
