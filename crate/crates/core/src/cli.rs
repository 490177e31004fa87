//! Command-line front end. [`dispatch`] never touches the process streams,
//! so it can be driven from tests.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::{group_from_spec, FiniteGroup};
use crate::catdata::{load_data, save_data, verify_data, SphericalData, VerifyOptions};
use crate::cocycle::{averaged_identity_check, check_cocycle, coboundary, random_cochain3, FourCochain, ThreeCochain};
use crate::complex::{orient, orient_pinned, parse_triangulation, validate, OrientedTriangulation, Triangulation4};
use crate::engine::{
    invariant, invariant_group_fast, oracle_invariant, EngineOptions, DEFAULT_ORACLE_BUDGET,
};
use crate::homcount::{count_homs, presentation, DEFAULT_HOM_BUDGET};
use crate::pachner::{apply_move_oriented, enumerate_moves, random_walk, site_at, MoveKind};
use crate::{Error, Result};

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "statesum", version, about = "State-sum invariants of triangulated 4-manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a triangulation is a closed connected pseudomanifold.
    Validate { file: PathBuf },
    /// Orient a triangulation and emit it with its reference sign pinned.
    Orient {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        reference: usize,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        sign: i8,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List, apply or randomly chain Pachner moves.
    Moves {
        #[command(subcommand)]
        action: MovesCommand,
    },
    /// Evaluate the state sum.
    Invariant(InvariantArgs),
    /// Cocycle checks and coboundaries.
    Cocycle {
        #[command(subcommand)]
        action: CocycleCommand,
    },
    /// Build or verify tabulated data.
    Data {
        #[command(subcommand)]
        action: DataCommand,
    },
    /// Count homomorphisms from the fundamental group.
    Homs {
        file: PathBuf,
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value_t = DEFAULT_HOM_BUDGET)]
        budget: u64,
        /// Skip the invariant when it would visit more flat colourings.
        #[arg(long, default_value_t = 1 << 26)]
        invariant_budget: u128,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

#[derive(Subcommand, Debug)]
enum MovesCommand {
    List {
        file: PathBuf,
    },
    Apply {
        file: PathBuf,
        /// Vertices of the support simplex, e.g. `0,1,2,3,4`.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        support: Vec<usize>,
        /// Expected move kind; inferred from the support size if omitted.
        #[arg(long)]
        kind: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Walk {
        file: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        max_vertices: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum CocycleCommand {
    Check {
        #[arg(long)]
        group: String,
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// δη for a given η, or for a seeded random η when `--eta` is omitted.
    Coboundary {
        #[arg(long)]
        group: String,
        #[arg(long)]
        eta: Option<PathBuf>,
        #[arg(long)]
        modulus: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum DataCommand {
    /// Tabulate the data of a group and cocycle.
    Build {
        #[arg(long)]
        group: String,
        #[arg(long)]
        cocycle: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Verify {
        file: PathBuf,
        /// Largest number of cases tested per check before sampling.
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        skip_local_moves: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Engine {
    Fast,
    Generic,
    Oracle,
}

#[derive(Args, Debug)]
struct InvariantArgs {
    file: PathBuf,
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    cocycle: Option<PathBuf>,
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long, value_enum)]
    engine: Option<Engine>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Reference facet for the orientation; overrides a pin in the file.
    #[arg(long)]
    reference: Option<usize>,
    /// Colouring budget of the oracle engine.
    #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
    budget: u128,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl<E: Into<Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Domain(e.into())
    }
}

type Run = std::result::Result<Report, Failure>;

#[derive(Default)]
struct Report {
    out: String,
    err: String,
    /// Domain-level negative answer (exit 1) with a complete report.
    failed: bool,
}

/// Parses `argv` (including the program name) and runs one subcommand.
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match run(cli.command) {
        Ok(r) => Outcome { code: if r.failed { 1 } else { 0 }, stdout: r.out, stderr: r.err },
        Err(Failure::Usage(m)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(Failure::Domain(e)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

/// Writes `text` to `output` and returns `note`, or returns `text` itself.
fn emit(output: Option<&Path>, text: String, note: String) -> Result<Report> {
    match output {
        Some(p) => {
            write(p, &text)?;
            Ok(Report { out: note, ..Report::default() })
        }
        None => Ok(Report { out: text, err: note, failed: false }),
    }
}

fn load_oriented(path: &Path, reference: Option<usize>) -> Result<OrientedTriangulation> {
    let file = parse_triangulation(&read(path)?)?;
    let o = match (reference, file.pin) {
        (Some(r), _) => orient(&file.complex, r)?,
        (None, Some((r, s))) => orient_pinned(&file.complex, r, s)?,
        (None, None) => orient(&file.complex, 0)?,
    };
    Ok(o)
}

fn pin_of(o: &OrientedTriangulation) -> Option<(usize, i8)> {
    Some((0, o.epsilon()[0]))
}

fn load_cocycle(g: &FiniteGroup, path: Option<&Path>) -> Result<FourCochain> {
    Ok(match path {
        Some(p) => FourCochain::parse(&read(p)?, g.order())?,
        None => FourCochain::trivial(g.order(), 1)?,
    })
}

fn run(cmd: Command) -> Run {
    match cmd {
        Command::Validate { file } => run_validate(&file),
        Command::Orient { file, reference, sign, output } => {
            if sign != 1 && sign != -1 {
                return Err(Failure::Usage("--sign must be 1 or -1".into()));
            }
            let t = parse_triangulation(&read(&file)?)?.complex;
            let o = orient_pinned(&t, reference, sign)?;
            let signs: String = o.epsilon().iter().map(|&e| if e > 0 { '+' } else { '-' }).collect();
            Ok(emit(output.as_deref(), t.to_text(Some((reference, sign))), format!("orientable yes\nsigns {signs}\n"))?)
        }
        Command::Moves { action } => run_moves(action),
        Command::Invariant(args) => run_invariant(args),
        Command::Cocycle { action } => run_cocycle(action),
        Command::Data { action } => run_data(action),
        Command::Homs { file, group, budget, invariant_budget, workers } => {
            run_homs(&file, group.as_deref(), budget, invariant_budget, workers)
        }
    }
}

fn run_validate(file: &Path) -> Run {
    let t = parse_triangulation(&read(file)?)?.complex;
    let r = validate(&t);
    let mut out = String::new();
    let yn = |b: bool| if b { "yes" } else { "no" };
    writeln!(out, "vertices {}", t.vertex_count()).ok();
    writeln!(out, "facets {}", t.facets().len()).ok();
    writeln!(out, "tetrahedra {}", t.tetrahedra().len()).ok();
    writeln!(out, "triangles {}", t.triangles().len()).ok();
    writeln!(out, "edges {}", t.edges().len()).ok();
    writeln!(out, "closed {}", yn(r.is_closed_pseudomanifold)).ok();
    writeln!(out, "connected {}", yn(r.is_connected)).ok();
    for (tet, count) in &r.offending_tetrahedra {
        writeln!(out, "tetrahedron {tet:?} in {count} facets").ok();
    }
    if !r.notes.is_empty() {
        writeln!(out, "note {}", r.notes).ok();
    }
    Ok(Report { out, err: String::new(), failed: !(r.is_closed_pseudomanifold && r.is_connected) })
}

fn run_moves(action: MovesCommand) -> Run {
    match action {
        MovesCommand::List { file } => {
            let t = parse_triangulation(&read(&file)?)?.complex;
            let mut out = String::new();
            for s in enumerate_moves(&t) {
                writeln!(out, "{s}").ok();
            }
            Ok(Report { out, ..Report::default() })
        }
        MovesCommand::Apply { file, support, kind, output } => {
            let o = load_oriented(&file, None)?;
            let mut support = support;
            support.sort_unstable();
            let site = site_at(o.base(), &support).ok_or_else(|| {
                Error::Move(crate::pachner::MoveError::InvalidSite {
                    kind: MoveKind::ALL
                        .into_iter()
                        .find(|k| k.support_len() == support.len())
                        .unwrap_or(MoveKind::OneFive),
                    support: support.clone(),
                })
            })?;
            if let Some(k) = kind {
                let k: MoveKind = k.parse().map_err(|e: crate::pachner::MoveError| Failure::Usage(e.to_string()))?;
                if k != site.kind {
                    return Err(Failure::Usage(format!("support of size {} is a {} site, not {k}", support.len(), site.kind)));
                }
            }
            let next = apply_move_oriented(&o, &site)?;
            let note = format!("applied {site}\nvertices {} facets {}\n", next.base().vertex_count(), next.base().facets().len());
            Ok(emit(output.as_deref(), next.base().to_text(pin_of(&next)), note)?)
        }
        MovesCommand::Walk { file, steps, seed, max_vertices, output } => {
            let o = load_oriented(&file, None)?;
            let report = random_walk(o.base(), steps, seed, max_vertices)?;
            let mut cur = o;
            let mut note = String::new();
            for site in &report.applied {
                cur = apply_move_oriented(&cur, site)?;
                writeln!(note, "applied {site}").ok();
            }
            if report.stuck {
                writeln!(note, "stopped early: no admissible move").ok();
            }
            writeln!(note, "vertices {} facets {}", cur.base().vertex_count(), cur.base().facets().len()).ok();
            Ok(emit(output.as_deref(), cur.base().to_text(pin_of(&cur)), note)?)
        }
    }
}

fn run_invariant(a: InvariantArgs) -> Run {
    let opts = EngineOptions { workers: a.workers.max(1) };
    if a.data.is_some() && (a.group.is_some() || a.cocycle.is_some()) {
        return Err(Failure::Usage("--data cannot be combined with --group or --cocycle".into()));
    }
    if a.group.is_none() && a.data.is_none() {
        return Err(Failure::Usage("one of --group or --data is required".into()));
    }
    let o = load_oriented(&a.file, a.reference)?;
    let value = if let Some(path) = &a.data {
        match a.engine.unwrap_or(Engine::Generic) {
            Engine::Generic => invariant(&o, &load_data(&read(path)?)?, &opts)?,
            e => return Err(Failure::Usage(format!("engine {e:?} needs --group; tabulated data uses --engine generic"))),
        }
    } else {
        let g = group_from_spec(a.group.as_deref().unwrap_or_default())?;
        let pi = load_cocycle(&g, a.cocycle.as_deref())?;
        match a.engine.unwrap_or(Engine::Fast) {
            Engine::Fast => invariant_group_fast(&o, &g, &pi, &opts)?,
            Engine::Generic => {
                let check = check_cocycle(&g, &pi)?;
                if let Some(v) = check.first_violation {
                    return Err(crate::engine::EngineError::NotCocycle(v).into());
                }
                invariant(&o, &SphericalData::from_group_cocycle(&g, &pi)?, &opts)?
            }
            Engine::Oracle => oracle_invariant(&o, &g, &pi, a.budget)?.value,
        }
    };
    Ok(Report { out: format!("{value}\n"), ..Report::default() })
}

fn run_cocycle(action: CocycleCommand) -> Run {
    match action {
        CocycleCommand::Check { group, cocycle } => {
            let g = group_from_spec(&group)?;
            let pi = FourCochain::parse(&read(&cocycle)?, g.order())?;
            let check = check_cocycle(&g, &pi)?;
            if let Some(v) = check.first_violation {
                return Ok(Report {
                    out: format!("cocycle no\nviolation {} {} {} {} {}\n", v[0], v[1], v[2], v[3], v[4]),
                    err: String::new(),
                    failed: true,
                });
            }
            let avg = averaged_identity_check(&g, &pi)?;
            let mut out = String::from("cocycle yes\n");
            match avg.first_violation {
                None => out.push_str("averaged 1-5 identity yes\n"),
                Some(v) => writeln!(out, "averaged 1-5 identity no at {} {} {} {}", v[0], v[1], v[2], v[3]).unwrap(),
            }
            Ok(Report { out, err: String::new(), failed: !avg.holds })
        }
        CocycleCommand::Coboundary { group, eta, modulus, seed, output } => {
            let g = group_from_spec(&group)?;
            let eta = match (eta, modulus) {
                (Some(p), None) => ThreeCochain::parse(&read(&p)?, g.order())?,
                (None, Some(n)) => random_cochain3(g.order(), n, seed)?,
                (Some(_), Some(_)) => return Err(Failure::Usage("--modulus only applies to a random η".into())),
                (None, None) => return Err(Failure::Usage("give --eta <file> or --modulus <N> for a random η".into())),
            };
            let pi = coboundary(&g, &eta)?;
            Ok(emit(output.as_deref(), pi.to_text(), format!("coboundary of order {} modulus {}\n", g.order(), pi.modulus()))?)
        }
    }
}

fn run_data(action: DataCommand) -> Run {
    match action {
        DataCommand::Build { group, cocycle, output } => {
            let g = group_from_spec(&group)?;
            let pi = load_cocycle(&g, cocycle.as_deref())?;
            let data = SphericalData::from_group_cocycle(&g, &pi)?;
            Ok(emit(output.as_deref(), save_data(&data), format!("objects {}\n", data.object_count()))?)
        }
        DataCommand::Verify { file, budget, seed, skip_local_moves } => {
            let data = load_data(&read(&file)?)?;
            let opts = VerifyOptions { sample_budget: budget, seed, local_moves: !skip_local_moves };
            let report = verify_data(&data, &opts);
            let mut out = report.to_string();
            writeln!(out, "K {}", data.k()).ok();
            writeln!(out, "verdict {}", if report.passed() { "pass" } else { "FAIL" }).ok();
            Ok(Report { out, err: String::new(), failed: !report.passed() })
        }
    }
}

fn run_homs(file: &Path, group: Option<&str>, budget: u64, invariant_budget: u128, workers: usize) -> Run {
    let t: Triangulation4 = parse_triangulation(&read(file)?)?.complex;
    let p = presentation(&t)?;
    let mut out = format!("generators {}\nrelators {}\n", p.generators, p.relators.len());
    let mut failed = false;
    if let Some(spec) = group {
        let g = group_from_spec(spec)?;
        let homs = count_homs(&p, &g, budget)?;
        writeln!(out, "homs {homs}").ok();
        // A connected complex has |G|^(v-1) flat colourings per homomorphism.
        let flat = (g.order() as u128).checked_pow(t.vertex_count() as u32 - 1).and_then(|x| x.checked_mul(homs as u128));
        if flat.is_none_or(|f| f > invariant_budget) {
            writeln!(out, "invariant skipped: more than {invariant_budget} flat colourings").ok();
            return Ok(Report { out, ..Report::default() });
        }
        let o = orient(&t, 0)?;
        let pi = FourCochain::trivial(g.order(), 1)?;
        let inv = invariant_group_fast(&o, &g, &pi, &EngineOptions { workers })?;
        let scaled = &inv * &crate::algebra::Cyclotomic::from_int(1, g.order() as i64);
        let matches = scaled == crate::algebra::Cyclotomic::from_int(1, homs as i64);
        writeln!(out, "invariant {inv}").ok();
        writeln!(out, "order*invariant {scaled}").ok();
        writeln!(out, "match {}", if matches { "yes" } else { "no" }).ok();
        failed = !matches;
    }
    Ok(Report { out, err: String::new(), failed })
}
