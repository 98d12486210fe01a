//! `rectlink`: command-line front end for grid diagrams, move scripts,
//! exchange classes and the related group computations.
//!
//! Exit codes: 0 success, 1 a check or verification failed, 2 usage or input
//! error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rectlink::distinguish::{distinguish, SymAssumption, Verdict};
use rectlink::exchange::{enumerate_class, gap_obstruction, load_class, same_class, store_class, DEFAULT_MEMBER_LIMIT};
use rectlink::flype::{generate_antidiagonal_symmetry_script, generate_flype_sequence, generate_type_i_script, isotopy_spot_check};
use rectlink::group::{finite_quotients, nine48, power, unfixed_in_quotients, verify_map_respects_relations, wirtinger};
use rectlink::invariants::{format_report, invariant_report};
use rectlink::moves::{enumerate_destabilizations, enumerate_exchanges, enumerate_stabilizations};
use rectlink::render::{render_ascii, render_svg};
use rectlink::script::{emit_diagram, emit_move, emit_script, endpoint_hash, parse_diagram, parse_script, verify_script, KindMask, MoveScript};
use rectlink::{canonicalize, classify, GridDiagram, MoveSpec};

#[derive(Parser)]
#[command(name = "rectlink", version, about = "Grid diagrams, elementary moves and exchange classes")]
struct Cli {
    /// Output format; not every command supports every format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Maximum number of exchange-class members to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_MEMBER_LIMIT)]
    limit: usize,
    /// Move kinds to allow: any, exchange, I, II, or a `+` combination.
    #[arg(long, global = true)]
    mask: Option<KindMask>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a file holds a valid diagram.
    Validate { file: PathBuf },
    /// Print the canonical representative and its hash.
    Canon { file: PathBuf },
    /// Tabulate classical invariants of both structures.
    Invariants {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// List the elementary moves applicable to a diagram.
    Moves { file: PathBuf },
    /// Exchange-class operations.
    Class {
        #[command(subcommand)]
        action: ClassAction,
    },
    /// Flype scripts and the isotopy spot check.
    Flype {
        #[command(subcommand)]
        action: FlypeAction,
    },
    /// Replay a move script and print its certificate.
    Verify { script: PathBuf },
    /// Knot group computations.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Draw a diagram, or one step of a script, as SVG or ASCII.
    Render {
        file: PathBuf,
        /// For scripts: 0 draws the initial diagram, k draws the diagram
        /// before step k with that move's rectangle, past the end draws the
        /// endpoint.
        #[arg(long, default_value_t = 0)]
        step: usize,
    },
    /// Run the separation pipeline for two diagrams.
    Distinguish {
        first: PathBuf,
        second: PathBuf,
        /// Exchange and type II script starting at the first diagram.
        #[arg(long)]
        evidence: PathBuf,
        /// Exchange and type I script joining the evidence endpoint and the
        /// second diagram.
        #[arg(long)]
        bridge: Option<PathBuf>,
        /// Citation for the assumption that every symmetry of the knot is
        /// realized by type II moves.
        #[arg(long)]
        sym: Option<String>,
    },
}

#[derive(Subcommand)]
enum ClassAction {
    /// Enumerate the exchange class: members and adjacency.
    Enumerate { file: PathBuf },
    /// Decide whether two diagrams lie in one exchange class.
    Same { first: PathBuf, second: PathBuf },
    /// Load a stored class and re-check closure and connectivity.
    Check { file: PathBuf },
}

#[derive(Subcommand)]
enum FlypeAction {
    /// Emit the script of the anti-diagonal flype.
    Generate {
        file: PathBuf,
        /// Emit the type I conjugate instead.
        #[arg(long, conflicts_with = "antidiagonal")]
        type_i: bool,
        /// Emit a script ending at the anti-diagonal reflection itself.
        #[arg(long)]
        antidiagonal: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sample trajectories of the join-coordinate isotopy.
    SpotCheck {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 64)]
        steps: usize,
    },
}

#[derive(Subcommand)]
enum GroupAction {
    /// Print the Wirtinger presentation of a diagram.
    Wirtinger { file: PathBuf },
    /// Check the built-in automorphisms of the 9_48 group in its finite
    /// permutation quotients.
    Check {
        #[arg(long, default_value_t = 6)]
        degree: usize,
    },
}

enum CliError {
    Usage(String),
    Failed(String),
}

type Res = Result<String, CliError>;

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_diagram(path: &Path) -> Result<GridDiagram, CliError> {
    parse_diagram(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_script(path: &Path) -> Result<MoveScript, CliError> {
    parse_script(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn is_script(text: &str) -> bool {
    text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')) == Some("script")
}

fn only(cli: &Cli, allowed: &[Format]) -> Result<(), CliError> {
    if allowed.contains(&cli.format) {
        Ok(())
    } else {
        Err(usage("this command does not support the requested --format"))
    }
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn cmd_validate(file: &Path) -> Res {
    let text = read(file)?;
    let d = parse_diagram(&text).map_err(|e| CliError::Failed(format!("invalid: {e}")))?;
    Ok(format!("valid n={} components={}\n", d.size(), d.component_count()))
}

fn cmd_canon(file: &Path) -> Res {
    let c = canonicalize(&load_diagram(file)?);
    Ok(format!("# sha256={}\n{}", endpoint_hash(&c), emit_diagram(c.diagram())))
}

fn cmd_invariants(cli: &Cli, files: &[PathBuf]) -> Res {
    only(cli, &[Format::Text, Format::Csv])?;
    let mut ds = Vec::new();
    for f in files {
        let name = f.file_stem().map_or_else(|| f.display().to_string(), |s| s.to_string_lossy().into_owned());
        ds.push((name, load_diagram(f)?));
    }
    Ok(format_report(&invariant_report(&ds, cli.limit), cli.format == Format::Csv))
}

fn cmd_moves(cli: &Cli, file: &Path) -> Res {
    only(cli, &[Format::Text, Format::Csv])?;
    let d = load_diagram(file)?;
    let mask = cli.mask.unwrap_or(KindMask::ANY);
    let mut all = Vec::new();
    for m in enumerate_exchanges(&d) {
        let k = classify(&d, &m).map_err(|e| CliError::Failed(e.to_string()))?;
        all.push((m, k));
    }
    all.extend(enumerate_stabilizations(&d));
    all.extend(enumerate_destabilizations(&d));
    let mut out = String::new();
    if cli.format == Format::Csv {
        out.push_str("kind,move\n");
    }
    for (m, k) in all.iter().filter(|(_, k)| mask.allows(k)) {
        match cli.format {
            Format::Csv => writeln!(out, "{},{}", csv_quote(&k.to_string()), csv_quote(&emit_move(m))),
            _ => writeln!(out, "{k}\t{}", emit_move(m)),
        }
        .unwrap();
    }
    Ok(out)
}

fn cmd_class(cli: &Cli, action: &ClassAction) -> Res {
    match action {
        ClassAction::Enumerate { file } => {
            only(cli, &[Format::Text, Format::Csv])?;
            let d = load_diagram(file)?;
            let c = enumerate_class(&d, cli.limit).map_err(|e| CliError::Failed(e.to_string()))?;
            if cli.format == Format::Text {
                return Ok(store_class(&c));
            }
            let mut out = String::from("index,black,white,comp,degree,gap\n");
            for (i, m) in c.members.iter().enumerate() {
                let deg = c.edges.iter().filter(|(a, b)| *a == i || *b == i).count();
                let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
                let d = m.diagram();
                let comp: Vec<usize> = d.components().iter().map(|&x| x as usize).collect();
                writeln!(out, "{i},{},{},{},{deg},{}", join(d.black()), join(d.white()), join(&comp), gap_obstruction(d)).unwrap();
            }
            Ok(out)
        }
        ClassAction::Same { first, second } => {
            let (a, b) = (load_diagram(first)?, load_diagram(second)?);
            let same = same_class(&a, &b, cli.limit).map_err(|e| CliError::Failed(e.to_string()))?;
            Ok(if same { "same class\n" } else { "different classes\n" }.to_string())
        }
        ClassAction::Check { file } => {
            let c = load_class(&read(file)?).map_err(|e| CliError::Failed(e.to_string()))?;
            Ok(format!("ok members={} edges={} closed={}\n", c.members.len(), c.edges.len(), c.closed))
        }
    }
}

fn cmd_flype(cli: &Cli, action: &FlypeAction) -> Res {
    match action {
        FlypeAction::Generate { file, type_i, antidiagonal, output } => {
            let d = load_diagram(file)?;
            let s = if *type_i {
                generate_type_i_script(&d)
            } else if *antidiagonal {
                generate_antidiagonal_symmetry_script(&d)
            } else {
                generate_flype_sequence(&d)
            }
            .map_err(|e| CliError::Failed(e.to_string()))?;
            let text = emit_script(&s);
            match output {
                Some(p) => {
                    std::fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display())))?;
                    Ok(format!("wrote {} moves to {}\n", s.moves.len(), p.display()))
                }
                None => Ok(text),
            }
        }
        FlypeAction::SpotCheck { samples, steps } => {
            let r = isotopy_spot_check(*samples, *steps, cli.seed);
            let text = format!(
                "samples={} steps={} seed={}\nmax conservation deviation {:.3e}\nmax endpoint deviation {:.3e}\nmax containment excess {:.3e}\nfailures {}\n",
                r.samples,
                r.steps,
                cli.seed,
                r.max_conservation_dev,
                r.max_endpoint_dev,
                r.max_containment_excess,
                r.failures.len()
            );
            if r.passed() {
                Ok(text)
            } else {
                Err(CliError::Failed(text))
            }
        }
    }
}

fn cmd_verify(cli: &Cli, script: &Path) -> Res {
    let mut s = load_script(script)?;
    if cli.mask.is_some() {
        s.allowed_kinds = cli.mask;
    }
    let cert = verify_script(&s).map_err(|e| CliError::Failed(format!("verification failed: {e}")))?;
    Ok(cert.to_string())
}

fn cmd_group(action: &GroupAction) -> Res {
    match action {
        GroupAction::Wirtinger { file } => Ok(wirtinger(&load_diagram(file)?).presentation.to_text()),
        GroupAction::Check { degree } => {
            let p = nine48::presentation();
            let qs = finite_quotients(&p, *degree);
            let mut out = String::new();
            let mut ok = true;
            writeln!(out, "quotients of degree <= {degree}: {}", qs.len()).unwrap();
            for (name, m) in [("T", nine48::t_map()), ("S", nine48::s_map())] {
                let r = verify_map_respects_relations(&m, &p, &qs);
                ok &= r.passed();
                writeln!(out, "{name} respects the relations: {}", if r.passed() { "yes" } else { "no" }).unwrap();
            }
            let moved = unfixed_in_quotients(&power(&nine48::s_map(), 2), &nine48::GENERATING_SET, &qs);
            ok &= moved.is_empty();
            writeln!(out, "S^2 fixes the generating set: {}", if moved.is_empty() { "yes" } else { "no" }).unwrap();
            if ok {
                Ok(out)
            } else {
                Err(CliError::Failed(out))
            }
        }
    }
}

fn cmd_render(cli: &Cli, file: &Path, step: usize) -> Res {
    only(cli, &[Format::Text, Format::Svg])?;
    let text = read(file)?;
    let (d, overlay): (GridDiagram, Option<MoveSpec>) = if is_script(&text) {
        let s = parse_script(&text).map_err(usage)?;
        let states = s.replay().map_err(|(i, e)| CliError::Failed(format!("step {}: {e}", i + 1)))?;
        match step {
            0 => (s.initial.clone(), None),
            k if k <= s.moves.len() => (states[k - 1].clone(), Some(s.moves[k - 1].clone())),
            _ => (states.last().cloned().unwrap_or(s.initial.clone()), None),
        }
    } else {
        (parse_diagram(&text).map_err(usage)?, None)
    };
    match cli.format {
        Format::Svg => render_svg(&d, overlay.as_ref()).map_err(|e| CliError::Failed(e.to_string())),
        _ => Ok(render_ascii(&d)),
    }
}

fn cmd_distinguish(cli: &Cli, first: &Path, second: &Path, evidence: &Path, bridge: Option<&Path>, sym: Option<&str>) -> Res {
    let (r, r2) = (load_diagram(first)?, load_diagram(second)?);
    let ev = load_script(evidence)?;
    let br = bridge.map(load_script).transpose()?;
    let sym = sym.map(|c| SymAssumption { citation: c.to_string() });
    let rep = distinguish(&r, &r2, &ev, br.as_ref(), sym.as_ref(), cli.limit).map_err(|e| CliError::Failed(e.to_string()))?;
    debug_assert!(rep.verdict == Verdict::Inconclusive || rep.reasons.is_empty());
    Ok(rep.to_string())
}

fn run(cli: &Cli) -> Res {
    match &cli.command {
        Command::Validate { file } => cmd_validate(file),
        Command::Canon { file } => cmd_canon(file),
        Command::Invariants { files } => cmd_invariants(cli, files),
        Command::Moves { file } => cmd_moves(cli, file),
        Command::Class { action } => cmd_class(cli, action),
        Command::Flype { action } => cmd_flype(cli, action),
        Command::Verify { script } => cmd_verify(cli, script),
        Command::Group { action } => cmd_group(action),
        Command::Render { file, step } => cmd_render(cli, file, *step),
        Command::Distinguish { first, second, evidence, bridge, sym } => {
            cmd_distinguish(cli, first, second, evidence, bridge.as_deref(), sym.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Failed(msg)) => {
            eprint!("{msg}");
            if !msg.ends_with('\n') {
                eprintln!();
            }
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
