//! `dibelief`: check, close, query and change desirability-indifference
//! models from JSON files, and run the conformance suites.
//!
//! Exit codes: 0 on success, 1 when a violation or an inconsistent result is
//! found, 2 on usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use dibelief::change::{contract, expand_event, revise};
use dibelief::files::{
    assessment_to_json, closure_to_json, derived_json, event_space, load_assessment, load_event, load_model, load_option,
    space_of, AnySpace,
};
use dibelief::harness::{hunt_bc7, replay_instance, run_suite, GenConfig, SpaceKind, Suite};
use dibelief::io::SpaceIo;
use dibelief::models::{check_axioms_di, check_axioms_m, check_coherent_d, close, Closure, StatementModel};
use dibelief::report::{AxiomReport, Outcome};
use dibelief::sample::Sampling;
use dibelief::space::{ClassicalSpace, OptionSpace, SpaceDescriptor};
use dibelief::{with_space, Error};

#[derive(Parser)]
#[command(name = "dibelief", version, about = "Belief change for sets of desirable and indifferent options")]
struct Cli {
    /// Omit witnesses from reports.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check M1–M4, the DI conditions and coherence of a model.
    Check {
        model: PathBuf,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Least resolved model containing an assessment.
    Close { assessment: PathBuf },
    /// Accept/reject/desirable/indifferent status of an option.
    Member { model: PathBuf, option: PathBuf },
    /// Revise (condition) a model on an event.
    Revise(Change),
    /// Expand a model by the news that an event occurred.
    Expand(Change),
    /// Contract a model by an event.
    Contract(Change),
    /// Regular, proper or improper.
    Classify { event: PathBuf },
    /// The meet of two events.
    Meet { e1: PathBuf, e2: PathBuf },
    /// Run conformance suites on random instances.
    Verify(VerifyArgs),
    /// Search for counterexamples to a postulate.
    Hunt(HuntArgs),
}

#[derive(Args)]
struct Change {
    model: PathBuf,
    event: PathBuf,
    /// Also write the resulting model here.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Events,
    Models,
    Revision,
    Contraction,
    Identities,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Classical,
    Quantum,
    Both,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    #[arg(long, value_enum, default_value = "classical")]
    space: SpaceArg,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    max_atoms: usize,
    #[arg(long, default_value_t = 3)]
    max_dim: usize,
    /// Replay one serialized instance instead of sampling.
    #[arg(long)]
    instance: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Axiom {
    #[value(name = "BC7")]
    Bc7,
}

#[derive(Args)]
struct HuntArgs {
    #[arg(long, value_enum)]
    axiom: Axiom,
    #[arg(long, default_value_t = 10000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    max_atoms: usize,
    /// Write the witness instance here.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// A command's JSON result and whether it found a violation.
struct Reply {
    doc: Value,
    violation: bool,
}

fn ok(doc: Value) -> Reply {
    Reply { doc, violation: false }
}

fn read_json(path: &Path) -> Result<Value, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn write_json(path: &Path, v: &Value) -> Result<(), Error> {
    fs::write(path, serde_json::to_string_pretty(v)? + "\n")?;
    Ok(())
}

fn strip(mut r: AxiomReport, quiet: bool) -> AxiomReport {
    if quiet {
        r.strip_witnesses();
    }
    r
}

fn check<Sp: SpaceIo + Sampling>(space: &Sp, doc: &Value, samples: usize, seed: u64, quiet: bool) -> Result<Reply, Error> {
    let Closure::Model(m) = load_model(space, doc)? else {
        return Ok(Reply { doc: json!({"consistent": false}), violation: true });
    };
    let mut results = check_axioms_m(space, &m, samples, seed)?;
    if m.indifference().is_some() {
        results.extend(check_axioms_di(space, &m, samples, seed)?);
    }
    let generator_form = doc.get("derived").is_none() && doc.get("excluded_bases").is_none() && doc.get("reject_rays").is_none();
    if generator_form && m.is_restricted_di() {
        let gens = space.options_from_json(doc.get("desirable_generators").unwrap_or(&Value::Null))?;
        let background = doc.get("include_background").and_then(Value::as_bool).unwrap_or(true);
        results.extend(check_coherent_d(space, &gens, background)?);
    }
    let report = AxiomReport { suite: "check".into(), space: kind_of(space).into(), seed, trials: 1, results };
    let violation = report.has_failures();
    Ok(Reply { doc: json!({"consistent": true, "report": strip(report, quiet)}), violation })
}

fn kind_of<Sp: OptionSpace>(space: &Sp) -> &'static str {
    match space.descriptor() {
        SpaceDescriptor::Classical { .. } => "classical",
        SpaceDescriptor::Quantum { .. } => "quantum",
    }
}

fn change<Sp: SpaceIo + Sampling>(space: &Sp, op: &str, mdoc: &Value, edoc: &Value) -> Result<Reply, Error> {
    let m = load_model(space, mdoc)?.into_model()?;
    let e = load_event(space, edoc)?;
    let result = match op {
        "revise" => Closure::Model(revise(space, &m, &e)?),
        "contract" => Closure::Model(contract(space, &m, &e)?),
        _ => expand_event(space, &m, &e)?,
    };
    let mut inputs = Map::new();
    inputs.insert("model".into(), mdoc.clone());
    inputs.insert("event".into(), edoc.clone());
    let doc = closure_to_json(space, &result, || derived_json(space, op, inputs));
    Ok(Reply { doc, violation: result.is_inconsistent() })
}

fn member<Sp: SpaceIo + Sampling>(space: &Sp, mdoc: &Value, odoc: &Value) -> Result<Reply, Error> {
    let m = load_model(space, mdoc)?;
    let u = load_option(space, odoc)?;
    match m {
        Closure::Inconsistent => Ok(Reply { doc: json!({"consistent": false}), violation: true }),
        Closure::Model(m) => Ok(ok(json!({"option": space.option_to_json(&u), "status": m.status(space, &u)?}))),
    }
}

fn close_doc<Sp: SpaceIo + Sampling>(space: &Sp, doc: &Value) -> Result<Reply, Error> {
    let a = load_assessment(space, doc)?;
    let c = close(space, &a, &StatementModel::vacuous(space))?;
    let mut inputs = Map::new();
    inputs.insert("assessment".into(), assessment_to_json(space, &a));
    let out = closure_to_json(space, &c, || derived_json(space, "close", inputs));
    Ok(Reply { doc: out, violation: c.is_inconsistent() })
}

/// Classical events carry no Ω unless the file names its atoms.
fn classify(doc: &Value) -> Result<Reply, Error> {
    let class = match event_space(doc)? {
        Some(any) => with_space!(&any, s => serde_json::to_value(s.classify(&load_event(s, doc)?))?),
        None => {
            let empty = doc.get("subset").and_then(Value::as_array).is_some_and(|a| a.is_empty());
            if !empty {
                return Err(Error::Input("classifying a classical event needs its \"atoms\"".into()));
            }
            json!("improper")
        }
    };
    Ok(ok(json!({"event": doc, "class": class})))
}

fn subset_atoms(doc: &Value) -> Vec<String> {
    doc.get("subset")
        .and_then(Value::as_array)
        .map(|a| a.iter().filter_map(|x| x.as_str().map(String::from)).collect())
        .unwrap_or_default()
}

fn meet_docs(d1: &Value, d2: &Value) -> Result<Reply, Error> {
    let any = match (event_space(d1)?, event_space(d2)?) {
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => {
            // The meet of subsets does not depend on Ω.
            let mut atoms = subset_atoms(d1);
            for a in subset_atoms(d2) {
                if !atoms.contains(&a) {
                    atoms.push(a);
                }
            }
            if atoms.is_empty() {
                return Ok(ok(json!({"kind": "classical", "subset": []})));
            }
            AnySpace::Classical(ClassicalSpace::new(atoms)?)
        }
    };
    with_space!(&any, s => {
        let e = s.meet(&load_event(s, d1)?, &load_event(s, d2)?);
        Ok(ok(s.event_to_json(&e)))
    })
}

fn suites(arg: SuiteArg) -> Vec<Suite> {
    match arg {
        SuiteArg::Events => vec![Suite::Events],
        SuiteArg::Models => vec![Suite::Models],
        SuiteArg::Revision => vec![Suite::Revision],
        SuiteArg::Contraction => vec![Suite::Contraction],
        SuiteArg::Identities => vec![Suite::Identities],
        SuiteArg::All => Suite::ALL.to_vec(),
    }
}

fn verify(args: &VerifyArgs, quiet: bool) -> Result<Reply, Error> {
    let cfg = GenConfig {
        trials: args.trials,
        seed: args.seed,
        max_atoms: args.max_atoms,
        max_dim: args.max_dim,
        ..GenConfig::default()
    };
    if cfg.max_atoms < 2 || cfg.max_dim < 2 {
        return Err(Error::Input("--max-atoms and --max-dim must be at least 2".into()));
    }
    let mut reports = Vec::new();
    if let Some(path) = &args.instance {
        let doc = read_json(path)?;
        for suite in suites(args.suite).into_iter().filter(|s| !matches!(s, Suite::Events | Suite::Models)) {
            reports.push(strip(replay_instance(suite, &doc, args.seed)?, quiet));
        }
    } else {
        let kinds = match args.space {
            SpaceArg::Classical => vec![SpaceKind::Classical],
            SpaceArg::Quantum => vec![SpaceKind::Quantum],
            SpaceArg::Both => vec![SpaceKind::Classical, SpaceKind::Quantum],
        };
        for kind in kinds {
            for suite in suites(args.suite) {
                reports.push(strip(run_suite(suite, kind, &cfg), quiet));
            }
        }
    }
    let violation = reports.iter().any(AxiomReport::has_failures);
    let expected = reports.iter().flat_map(|r| &r.results).any(|r| r.outcome == Outcome::ExpectedCounterexample);
    let status = if violation {
        "fail"
    } else if expected {
        "pass-with-expected-counterexamples"
    } else {
        "pass"
    };
    Ok(Reply { doc: json!({"command": "verify", "status": status, "reports": reports}), violation })
}

fn hunt(args: &HuntArgs, quiet: bool) -> Result<Reply, Error> {
    let Axiom::Bc7 = args.axiom;
    if args.max_atoms < 2 {
        return Err(Error::Input("--max-atoms must be at least 2".into()));
    }
    let cfg = GenConfig { trials: args.trials, seed: args.seed, max_atoms: args.max_atoms, ..GenConfig::default() };
    let report = hunt_bc7(&cfg);
    if let (Some(path), Some(w)) = (&args.output, &report.found) {
        write_json(path, &w.instance)?;
    }
    let found = report.found.is_some();
    let mut doc = serde_json::to_value(&report)?;
    if quiet {
        if let Some(f) = doc.get_mut("found").and_then(Value::as_object_mut) {
            f.remove("violation");
        }
    }
    // The hunt fails when it comes back empty-handed.
    Ok(Reply { doc, violation: !found })
}

fn run(cli: &Cli) -> Result<Reply, Error> {
    match &cli.command {
        Command::Check { model, samples, seed } => {
            let doc = read_json(model)?;
            with_space!(&space_of(&doc)?, s => check(s, &doc, *samples, *seed, cli.quiet))
        }
        Command::Close { assessment } => {
            let doc = read_json(assessment)?;
            with_space!(&space_of(&doc)?, s => close_doc(s, &doc))
        }
        Command::Member { model, option } => {
            let (mdoc, odoc) = (read_json(model)?, read_json(option)?);
            with_space!(&space_of(&mdoc)?, s => member(s, &mdoc, &odoc))
        }
        Command::Revise(c) | Command::Expand(c) | Command::Contract(c) => {
            let op = match &cli.command {
                Command::Revise(_) => "revise",
                Command::Expand(_) => "expand",
                _ => "contract",
            };
            let (mdoc, edoc) = (read_json(&c.model)?, read_json(&c.event)?);
            let out = with_space!(&space_of(&mdoc)?, s => change(s, op, &mdoc, &edoc))?;
            if let Some(path) = &c.output {
                write_json(path, &out.doc)?;
            }
            Ok(out)
        }
        Command::Classify { event } => classify(&read_json(event)?),
        Command::Meet { e1, e2 } => meet_docs(&read_json(e1)?, &read_json(e2)?),
        Command::Verify(args) => verify(args, cli.quiet),
        Command::Hunt(args) => hunt(args, cli.quiet),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            println!("{}", serde_json::to_string_pretty(&out.doc).expect("JSON values serialize"));
            ExitCode::from(if out.violation { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
