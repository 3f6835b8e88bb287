//! Command-line front end: validate algebra files, close function sets,
//! construct and check representations, run the bounded search, and print
//! the built-in example gallery.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use pfrep::construction::{
    canonical_future, canonical_present, construct, realisables_algebraic,
    realisables_from_representation, size_bound, size_bound_recurrence,
};
use pfrep::decide::{
    brute_force_decide, counterexample_f, decide_via_construction, prefix_model_f, s3, z2, z3,
    Decision, Outcome, MAX_SEARCH_BASE,
};
use pfrep::dot::network_to_dot;
use pfrep::files::{
    AlgebraFile, DecisionFile, NetworkFile, ProfileFile, RepresentationFile, TraceFile,
};
use pfrep::network::{from_concrete, is_representation, representation_from_network};
use pfrep::{ConcreteAlgebra, Error, FiniteAlgebra, Representation};

/// Default ceiling on closure size for `abstract`, overridden by the
/// `PFREP_MAX_CLOSURE` environment variable.
const DEFAULT_CLOSURE_CAP: usize = 10_000;

#[derive(Parser)]
#[command(
    name = "pfrep",
    version,
    about = "Finite algebras of partial functions: representations, constructions, decisions"
)]
struct Cli {
    /// Worker threads for the representation checker; defaults to all cores.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Write the primary output here instead of stdout.
    #[arg(short, long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an algebra file: tables, consistency, and the laws every
    /// representable algebra satisfies
    Validate(ValidateArgs),
    /// Close the functions of a representation file under its signature
    /// and print the abstract algebra
    Abstract(AbstractArgs),
    /// Print the realisability profile of an algebra
    Realisable(RealisableArgs),
    /// Build a network representing an algebra from its profile
    Construct(ConstructArgs),
    /// Check that a representation file represents an algebra
    Check(CheckArgs),
    /// Search for a representation on bases of bounded size
    Decide(DecideArgs),
    /// Print the size bound governing the construction
    Bound(BoundArgs),
    /// Print the canonical future or present of a domain element
    Future(FutureArgs),
    /// Built-in examples with known status
    Demo(DemoArgs),
}

#[derive(Args)]
struct ValidateArgs {
    /// Algebra file (JSON)
    algebra: PathBuf,
}

#[derive(Args)]
struct AbstractArgs {
    /// Representation file (JSON) whose functions act as generators
    representation: PathBuf,
    /// Also write the closed function set to this path
    #[arg(long, value_name = "PATH")]
    representation_out: Option<PathBuf>,
}

#[derive(Args)]
struct RealisableArgs {
    /// Algebra file (JSON)
    algebra: PathBuf,
    /// Read the profile off this representation instead of the tables
    #[arg(long, value_name = "PATH")]
    from_representation: Option<PathBuf>,
}

#[derive(Args)]
struct ConstructArgs {
    /// Algebra file (JSON)
    algebra: PathBuf,
    /// Compute the profile from the tables (the default)
    #[arg(long)]
    algebraic: bool,
    /// Read the profile from this file instead of computing it
    #[arg(long, value_name = "PATH", conflicts_with = "algebraic")]
    profile: Option<PathBuf>,
    /// Copies of each equivalence class per stage; defaults to the carrier size
    #[arg(long, value_name = "M")]
    multiplicity: Option<usize>,
    /// Print the stage-by-stage trace instead of the bare network
    #[arg(long, conflicts_with = "functions")]
    trace: bool,
    /// Print the result as named partial functions instead of a network
    #[arg(long)]
    functions: bool,
    /// Also write the network in DOT form to this path
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Algebra file (JSON)
    algebra: PathBuf,
    /// Representation file (JSON)
    representation: PathBuf,
    /// Also write the induced network in DOT form to this path
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct DecideArgs {
    /// Algebra file (JSON)
    algebra: PathBuf,
    /// Largest base size to search exhaustively
    #[arg(long, default_value_t = MAX_SEARCH_BASE, value_name = "K")]
    max_base: usize,
    /// Decide through the profile construction instead of searching
    #[arg(long, conflicts_with = "max_base")]
    construction: bool,
}

#[derive(Args)]
struct BoundArgs {
    /// Algebra file (JSON)
    algebra: PathBuf,
}

#[derive(Args)]
struct FutureArgs {
    /// Algebra file (JSON)
    algebra: PathBuf,
    /// Carrier element to start from, by name
    element: String,
    /// Restrict to the present: the vertices sharing their future with the root
    #[arg(long)]
    present: bool,
    /// Also write the network in DOT form to this path
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct DemoArgs {
    #[command(subcommand)]
    which: DemoCommand,
}

#[derive(Subcommand)]
enum DemoCommand {
    /// A group with zero, represented by its right translations
    Group {
        #[arg(value_enum)]
        name: GroupName,
    },
    /// The five-element algebra with no finite representation
    Counterexample {
        /// Largest base size for the bundled exhaustive search
        #[arg(long, default_value_t = 4, value_name = "K")]
        max_base: usize,
        /// Cross-check the tables against a finite prefix of the
        /// infinite model with this many levels
        #[arg(long, value_name = "K")]
        prefix_levels: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupName {
    Z2,
    Z3,
    S3,
}

struct Failure {
    kind: String,
    message: String,
    code: u8,
}

impl Failure {
    fn new(kind: &str, message: String) -> Self {
        let code = if kind == "unsupported-signature" { 3 } else { 1 };
        Failure {
            kind: kind.to_string(),
            message,
            code,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::MalformedInput(_) => "malformed-input",
            Error::Capacity(_) => "capacity",
            Error::ClosureViolation(_) => "closure-violation",
            Error::NotARepresentation(_) => "not-a-representation",
            Error::Inconsistent(_) => "inconsistent",
            Error::ConstructionFailure(_) => "construction-failure",
            Error::UnsupportedSignature(_) => "unsupported-signature",
            Error::InvalidProfile(_) => "invalid-profile",
        };
        Failure::new(kind, e.to_string())
    }
}

/// A command's primary output together with its exit code.
type CommandResult = Result<(String, ExitCode), Failure>;

/// Writes to stdout, treating a closed pipe as a normal early exit.
fn emit(content: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(content.as_bytes()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("{}", json!({ "error": { "kind": "io", "message": e.to_string() } }));
        std::process::exit(1);
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new("io", format!("cannot read `{}`: {e}", path.display())))
}

fn write_out(path: &Path, content: &str) -> Result<(), Failure> {
    fs::write(path, content)
        .map_err(|e| Failure::new("io", format!("cannot write `{}`: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<FiniteAlgebra, Failure> {
    Ok(AlgebraFile::parse(&read(path)?)?.to_algebra()?)
}

fn pretty(body: &serde_json::Value) -> String {
    let mut rendered = serde_json::to_string_pretty(body).expect("serializable");
    rendered.push('\n');
    rendered
}

/// Pairs a representation file's functions with an algebra's carrier: each
/// carrier element must appear among the file's function names.
fn representation_for(
    alg: &FiniteAlgebra,
    file: &RepresentationFile,
) -> Result<Representation, Failure> {
    let (_sig, base, names, functions) = file.to_parts()?;
    let matched = alg
        .names()
        .iter()
        .map(|want| {
            names
                .iter()
                .position(|have| have == want)
                .map(|i| functions[i].clone())
                .ok_or_else(|| {
                    Failure::new(
                        "malformed-input",
                        format!("representation file has no function named `{want}`"),
                    )
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Representation {
        base,
        functions: matched,
    })
}

fn closure_cap() -> Result<usize, Failure> {
    match std::env::var("PFREP_MAX_CLOSURE") {
        Ok(v) => v.parse().map_err(|_| {
            Failure::new(
                "malformed-input",
                format!("PFREP_MAX_CLOSURE must be a positive integer, got `{v}`"),
            )
        }),
        Err(_) => Ok(DEFAULT_CLOSURE_CAP),
    }
}

fn decision_code(decision: &Decision) -> ExitCode {
    match decision.outcome {
        Outcome::Representable => ExitCode::SUCCESS,
        Outcome::NotOnBase | Outcome::Inconclusive => ExitCode::from(2),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            return report(Failure::new("threads", e.to_string()));
        }
    }
    let outcome = match cli.command {
        Command::Validate(args) => run_validate(args),
        Command::Abstract(args) => run_abstract(args),
        Command::Realisable(args) => run_realisable(args),
        Command::Construct(args) => run_construct(args),
        Command::Check(args) => run_check(args),
        Command::Decide(args) => run_decide(args),
        Command::Bound(args) => run_bound(args),
        Command::Future(args) => run_future(args),
        Command::Demo(args) => run_demo(args),
    };
    match outcome {
        Ok((output, code)) => match cli.output {
            Some(path) => match write_out(&path, &output) {
                Ok(()) => code,
                Err(failure) => report(failure),
            },
            None => {
                emit(&output);
                code
            }
        },
        Err(failure) => report(failure),
    }
}

fn report(failure: Failure) -> ExitCode {
    let body = json!({ "error": { "kind": failure.kind, "message": failure.message } });
    eprintln!("{body}");
    ExitCode::from(failure.code)
}

fn run_validate(args: ValidateArgs) -> CommandResult {
    let alg = load_algebra(&args.algebra)?;
    let consistency = alg.validate();
    let laws = alg.necessary_laws();
    let pass = consistency.pass() && laws.pass();
    let body = json!({
        "pass": pass,
        "consistency": consistency.checks,
        "laws": laws.checks,
    });
    let code = if pass { ExitCode::SUCCESS } else { ExitCode::from(2) };
    Ok((pretty(&body), code))
}

fn run_abstract(args: AbstractArgs) -> CommandResult {
    let file = RepresentationFile::parse(&read(&args.representation)?)?;
    let (sig, base, _names, functions) = file.to_parts()?;
    let conc = ConcreteAlgebra::from_generators(sig, base, &functions, closure_cap()?)?;
    let alg = conc.abstract_algebra()?;
    if let Some(out) = args.representation_out {
        let rep = conc.representation();
        write_out(&out, &RepresentationFile::from_representation(&alg, &rep).render())?;
    }
    Ok((AlgebraFile::from_algebra(&alg).render(), ExitCode::SUCCESS))
}

fn run_realisable(args: RealisableArgs) -> CommandResult {
    let alg = load_algebra(&args.algebra)?;
    let profile = match args.from_representation {
        Some(path) => {
            let file = RepresentationFile::parse(&read(&path)?)?;
            let rep = representation_for(&alg, &file)?;
            let net = from_concrete(&alg, &rep)?;
            realisables_from_representation(&net, &alg)?
        }
        None => realisables_algebraic(&alg)?,
    };
    Ok((ProfileFile::from_profile(&alg, &profile).render(), ExitCode::SUCCESS))
}

fn run_construct(args: ConstructArgs) -> CommandResult {
    let alg = load_algebra(&args.algebra)?;
    let profile = match &args.profile {
        Some(path) => ProfileFile::parse(&read(path)?)?.to_profile(&alg)?,
        None => realisables_algebraic(&alg)?,
    };
    let multiplicity = args.multiplicity.unwrap_or_else(|| alg.n().max(1));
    let trace = construct(&alg, &profile, multiplicity)?;
    if let Some(path) = &args.dot {
        write_out(path, &network_to_dot(&trace.network, &alg))?;
    }
    let output = if args.trace {
        TraceFile::from_trace(&alg, &profile, &trace).render()
    } else if args.functions {
        let rep = representation_from_network(&trace.network, &alg)?;
        RepresentationFile::from_representation(&alg, &rep).render()
    } else {
        NetworkFile::from_network(&trace.network).render()
    };
    Ok((output, ExitCode::SUCCESS))
}

fn run_check(args: CheckArgs) -> CommandResult {
    let alg = load_algebra(&args.algebra)?;
    let file = RepresentationFile::parse(&read(&args.representation)?)?;
    let rep = representation_for(&alg, &file)?;
    let net = match from_concrete(&alg, &rep) {
        Ok(net) => net,
        Err(Error::NotARepresentation(msg)) => {
            let body = json!({
                "pass": false,
                "failures": [{ "condition": "induced-network", "message": msg }],
            });
            return Ok((pretty(&body), ExitCode::from(2)));
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(path) = &args.dot {
        write_out(path, &network_to_dot(&net, &alg))?;
    }
    let verdict = is_representation(&net, &alg);
    let body = json!({ "pass": verdict.pass(), "failures": verdict.failures });
    let code = if verdict.pass() { ExitCode::SUCCESS } else { ExitCode::from(2) };
    Ok((pretty(&body), code))
}

fn run_decide(args: DecideArgs) -> CommandResult {
    let alg = load_algebra(&args.algebra)?;
    let decision = if args.construction {
        decide_via_construction(&alg)?
    } else {
        brute_force_decide(&alg, args.max_base)?
    };
    let output = DecisionFile::from_decision(&alg, &decision).render();
    Ok((output, decision_code(&decision)))
}

fn run_bound(args: BoundArgs) -> CommandResult {
    let alg = load_algebra(&args.algebra)?;
    let profile = realisables_algebraic(&alg)?;
    let depth = profile.max_depth().unwrap_or(0);
    let bound = size_bound(alg.n(), depth)?;
    let stages = size_bound_recurrence(alg.n(), depth)?;
    let body = json!({
        "elements": alg.n(),
        "maxDepth": depth,
        "bound": bound.to_string(),
        "stages": stages.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
    });
    Ok((pretty(&body), ExitCode::SUCCESS))
}

fn run_future(args: FutureArgs) -> CommandResult {
    let alg = load_algebra(&args.algebra)?;
    let elem = alg.index_of(&args.element).ok_or_else(|| {
        Failure::new(
            "malformed-input",
            format!("unknown carrier element `{}`", args.element),
        )
    })?;
    let cf = if args.present {
        canonical_present(&alg, elem)?
    } else {
        canonical_future(&alg, elem)?
    };
    if let Some(path) = &args.dot {
        write_out(path, &network_to_dot(&cf.network, &alg))?;
    }
    Ok((NetworkFile::from_network(&cf.network).render(), ExitCode::SUCCESS))
}

fn run_demo(args: DemoArgs) -> CommandResult {
    match args.which {
        DemoCommand::Group { name } => {
            let (alg, rep) = match name {
                GroupName::Z2 => z2(),
                GroupName::Z3 => z3(),
                GroupName::S3 => s3(),
            };
            let body = json!({
                "algebra": AlgebraFile::from_algebra(&alg),
                "representation": RepresentationFile::from_representation(&alg, &rep),
            });
            Ok((pretty(&body), ExitCode::SUCCESS))
        }
        DemoCommand::Counterexample {
            max_base,
            prefix_levels,
        } => {
            let (alg, argument) = counterexample_f();
            let decision = brute_force_decide(&alg, max_base)?;
            let mut body = json!({
                "algebra": AlgebraFile::from_algebra(&alg),
                "argument": argument,
                "decision": DecisionFile::from_decision(&alg, &decision),
            });
            if let Some(k) = prefix_levels {
                let model = prefix_model_f(k)?;
                body["prefix"] = json!({ "levels": k, "report": model.report });
            }
            Ok((pretty(&body), decision_code(&decision)))
        }
    }
}
