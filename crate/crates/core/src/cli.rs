//! The `geodd` command line.
//!
//! Exit status: 0 proved (or a clean check), 1 not proved (or violations
//! found), 2 input error, 3 a saturation limit was reached.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::catalog::{self, catalog_identity, load_catalog};
use crate::engine::{EngineConfig, Fixpoint, Limits, ProofResult, ProveError, Rule, RuleSource};
use crate::fof::{print_unit, FsLoader};
use crate::oracle::{self, ConstructionRecipe, Model};
use crate::problem::Problem;
use crate::proof::{check_trace_with, collect_ndgs, register_lemma, ProofTrace};
use crate::render::{
    config_hash, parse_structured, render_prose, render_structured, render_table, OutputFormat, TemplateCatalog,
    TraceMeta,
};

pub const EXIT_PROVED: i32 = 0;
pub const EXIT_NOT_PROVED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "geodd", version, about = "Deductive database geometry prover")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Prove the conjecture of a problem file.
    Prove {
        problem: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Saturate and print statistics and the fixpoint.
    Saturate {
        problem: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Audit a fixpoint, or a stored trace, on coordinate models.
    Check {
        /// A problem file, or a structured trace with --trace.
        input: PathBuf,
        #[arg(long)]
        trace: bool,
        /// Number of sampled models.
        #[arg(long, conflicts_with = "model_file")]
        models: Option<usize>,
        #[arg(long)]
        model_file: Option<PathBuf>,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Re-render a structured trace.
    Render {
        trace: PathBuf,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Prove a problem and append it as a rule to a catalog file.
    Lemma {
        problem: PathBuf,
        #[arg(long)]
        name: String,
        #[arg(long)]
        append_to: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
    },
}

#[derive(Debug, Args, Default)]
struct RunOpts {
    /// Rule catalogs: `year7` or files. Default: the problem's own rules.
    #[arg(long = "rules", num_args = 1..)]
    rules: Vec<String>,
    #[arg(long = "lemma-file")]
    lemma_files: Vec<PathBuf>,
    #[arg(long)]
    max_facts: Option<usize>,
    #[arg(long)]
    max_firings: Option<usize>,
    #[arg(long)]
    time_budget_ms: Option<u64>,
    /// Ground enumeration variables over all point pairs.
    #[arg(long)]
    all_pairs: bool,
    #[arg(long)]
    eqangle_exchange: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Extra sentence templates (TOML, `label = "template"`).
    #[arg(long)]
    templates: Option<PathBuf>,
    /// TOML file with defaults for any of these options.
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Options read from `--config`; flags take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    rules: Option<Vec<String>>,
    lemma_files: Option<Vec<PathBuf>>,
    format: Option<OutputFormat>,
    max_facts: Option<usize>,
    max_firings: Option<usize>,
    time_budget_ms: Option<u64>,
    all_pairs: Option<bool>,
    eqangle_exchange: Option<bool>,
    seed: Option<u64>,
    models: Option<usize>,
    templates: Option<PathBuf>,
}

/// Fully resolved options of one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub rule_set: Vec<String>,
    pub lemma_files: Vec<PathBuf>,
    pub engine: EngineConfig,
    pub format: OutputFormat,
    pub seed: u64,
    pub models: usize,
    pub templates: Option<PathBuf>,
}

pub const DEFAULT_SEED: u64 = 0x5EED;
pub const DEFAULT_MODELS: usize = 100;

struct Failure {
    code: i32,
    message: String,
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: e.to_string(),
    }
}

fn pick<T: Clone>(flag: &[T], file: Option<Vec<T>>) -> Vec<T> {
    if flag.is_empty() {
        file.unwrap_or_default()
    } else {
        flag.to_vec()
    }
}

impl RunOpts {
    fn resolve(&self, format: Option<OutputFormat>, models: Option<usize>) -> Result<RunConfig, Failure> {
        let file: ConfigFile = match &self.config {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| input(format!("{}: {e}", p.display())))?;
                toml::from_str(&text).map_err(|e| input(format!("{}: {e}", p.display())))?
            }
            None => ConfigFile::default(),
        };
        let defaults = Limits::default();
        let engine = EngineConfig {
            limits: Limits {
                max_facts: self.max_facts.or(file.max_facts).unwrap_or(defaults.max_facts),
                max_firings: self.max_firings.or(file.max_firings).unwrap_or(defaults.max_firings),
                time_budget: self
                    .time_budget_ms
                    .or(file.time_budget_ms)
                    .map(Duration::from_millis)
                    .unwrap_or(defaults.time_budget),
            },
            all_pairs_enumeration: self.all_pairs || file.all_pairs.unwrap_or(false),
            eqangle_exchange: self.eqangle_exchange || file.eqangle_exchange.unwrap_or(false),
        };
        Ok(RunConfig {
            rule_set: pick(&self.rules, file.rules),
            lemma_files: pick(&self.lemma_files, file.lemma_files),
            engine,
            format: format.or(file.format).unwrap_or_default(),
            seed: self.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            models: models.or(file.models).unwrap_or(DEFAULT_MODELS),
            templates: self.templates.clone().or(file.templates),
        })
    }
}

impl RunConfig {
    /// Catalog rules, then lemma files.
    fn rules(&self, problem: Option<&Problem>) -> Result<Vec<Rule>, Failure> {
        let loader = FsLoader::from_env();
        let mut rules: Vec<Rule> = Vec::new();
        if !self.rule_set.is_empty() {
            for sel in &self.rule_set {
                rules.extend(load_catalog(sel, &loader).map_err(input)?);
            }
        } else if let Some(p) = problem.filter(|p| !p.rules.is_empty()) {
            rules = p.rules.clone();
        } else {
            rules = catalog::year7();
        }
        for f in &self.lemma_files {
            for mut r in load_catalog(&f.to_string_lossy(), &loader).map_err(input)? {
                r.source = RuleSource::Lemma;
                rules.push(r);
            }
        }
        for (i, r) in rules.iter().enumerate() {
            if rules[..i].iter().any(|q| q.name == r.name) {
                return Err(input(format!("rule name `{}` is defined twice", r.name)));
            }
        }
        Ok(rules)
    }

    fn templates(&self, rules: &[Rule]) -> Result<TemplateCatalog, Failure> {
        let mut t = TemplateCatalog::builtin();
        if let Some(p) = &self.templates {
            t = t.merge_file(p).map_err(input)?;
        }
        t.for_rules(rules).map_err(input)
    }

    fn meta(&self, rules: &[Rule]) -> TraceMeta {
        TraceMeta {
            catalog: catalog_identity(rules),
            config: config_hash(&self.engine),
        }
    }

    fn render(&self, trace: &ProofTrace, rules: &[Rule]) -> Result<String, Failure> {
        Ok(match self.format {
            OutputFormat::Table => render_table(trace),
            OutputFormat::Prose => render_prose(trace, &self.templates(rules)?).map_err(input)?,
            OutputFormat::Structured => render_structured(trace, &self.meta(rules)),
        })
    }
}

fn load_problem(path: &Path) -> Result<Problem, Failure> {
    Problem::load(path, &FsLoader::from_env()).map_err(input)
}

fn emit(out: &mut dyn Write, target: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match target {
        Some(p) => std::fs::write(p, text).map_err(|e| input(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(input),
    }
}

fn limit_failure(e: ProveError) -> Failure {
    match e {
        ProveError::Geometry(g) => input(g),
        ProveError::Limit { .. } => Failure {
            code: EXIT_LIMIT,
            message: e.to_string(),
        },
    }
}

fn prove_cmd(
    problem: &Path,
    cfg: &RunConfig,
    out_path: &Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let problem = load_problem(problem)?;
    let rules = cfg.rules(Some(&problem))?;
    if cfg.format == OutputFormat::Prose {
        cfg.templates(&rules)?;
    }
    match problem.prove(&rules, &cfg.engine).map_err(limit_failure)? {
        ProofResult::Proved { trace, .. } => {
            emit(out, out_path, &cfg.render(&trace, &rules)?)?;
            Ok(EXIT_PROVED)
        }
        ProofResult::NotProved {
            fixpoint,
            missing,
            advice,
        } => {
            let mut text = String::from("Not proved.\n");
            for g in &missing {
                let _ = writeln!(text, "not deduced: {}", fixpoint.display_fact(g));
            }
            let _ = writeln!(text, "{advice}");
            emit(out, out_path, &text)?;
            Ok(EXIT_NOT_PROVED)
        }
    }
}

fn saturate_cmd(problem: &Path, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let problem = load_problem(problem)?;
    let rules = cfg.rules(Some(&problem))?;
    let fp = problem.saturate(&rules, &cfg.engine).map_err(input)?;
    let mut text = format!("exhausted: {}\n{}", fp.exhausted, fp.stats);
    text.push_str("facts:\n");
    for (_, f) in fp.db.iter() {
        let _ = writeln!(text, "  {}", fp.display_fact(f));
    }
    emit(out, &None, &text)?;
    Ok(match fp.tripped {
        Some(_) => EXIT_LIMIT,
        None => EXIT_PROVED,
    })
}

/// Models for a problem: sampled from the matching recipe, or read.
fn models(cfg: &RunConfig, model_file: &Option<PathBuf>, problem: &Problem) -> Result<Vec<Model>, Failure> {
    match model_file {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| input(format!("{}: {e}", p.display())))?;
            Ok(vec![Model::parse(&text, &problem.points).map_err(input)?])
        }
        None => {
            let recipe = ConstructionRecipe::for_hypotheses(&problem.hypotheses, &problem.points, cfg.seed);
            oracle::sample_models(&recipe, cfg.models).map_err(input)
        }
    }
}

fn all_ndgs(fp: &Fixpoint) -> Vec<crate::geometry::Fact> {
    let mut v: Vec<_> = (0..fp.db.len())
        .flat_map(|i| fp.db.provenance(crate::engine::FactId(i as u32)).ndgs.clone())
        .collect();
    v.sort();
    v.dedup();
    v
}

fn check_cmd(
    input_path: &Path,
    is_trace: bool,
    model_file: &Option<PathBuf>,
    cfg: &RunConfig,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let mut text = String::new();
    let (points, hypotheses, facts, ndgs, goals) = if is_trace {
        let raw = std::fs::read_to_string(input_path).map_err(|e| input(format!("{}: {e}", input_path.display())))?;
        let (trace, _) = parse_structured(&raw).map_err(input)?;
        let rules = cfg.rules(None)?;
        match check_trace_with(&trace, &rules, cfg.engine.symmetries()) {
            Ok(()) => text.push_str("trace: valid\n"),
            Err(d) => {
                let _ = writeln!(text, "trace: invalid: {d}");
                emit(out, &None, &text)?;
                return Ok(EXIT_NOT_PROVED);
            }
        }
        let facts: Vec<_> = trace.steps.iter().flat_map(|s| s.new_facts.clone()).collect();
        (trace.points.clone(), trace.hypotheses.clone(), facts, collect_ndgs(&trace), trace.goals.clone())
    } else {
        let problem = load_problem(input_path)?;
        let rules = cfg.rules(Some(&problem))?;
        let fp = problem.saturate(&rules, &cfg.engine).map_err(input)?;
        let facts = fp.db.facts().to_vec();
        let ndgs = all_ndgs(&fp);
        (problem.points, problem.hypotheses, facts, ndgs, problem.goals)
    };
    let problem = Problem {
        name: String::new(),
        points: points.clone(),
        hypotheses: hypotheses.clone(),
        goals: goals.clone(),
        rules: Vec::new(),
    };
    let all = models(cfg, model_file, &problem)?;
    let admissible: Vec<Model> = all
        .into_iter()
        .filter(|m| oracle::admissible(m, &hypotheses, &ndgs))
        .collect();
    let _ = writeln!(text, "admissible models: {}", admissible.len());
    if admissible.is_empty() {
        emit(out, &None, &text)?;
        return Err(input("no model satisfies the hypotheses and provisos"));
    }
    let violations = oracle::check_facts(&admissible, &facts);
    for v in &violations {
        let _ = writeln!(text, "violation: {} in model {}", v.fact.display(&points), v.model);
    }
    for g in &goals {
        let failing = oracle::check_facts(&admissible, std::slice::from_ref(g));
        if let Some(v) = failing.first() {
            let _ = writeln!(text, "goal {} is false in model {}", g.display(&points), v.model);
        }
    }
    let _ = writeln!(text, "violations: {}", violations.len());
    emit(out, &None, &text)?;
    Ok(if violations.is_empty() { EXIT_PROVED } else { EXIT_NOT_PROVED })
}

fn render_cmd(path: &Path, cfg: &RunConfig, out_path: &Option<PathBuf>, out: &mut dyn Write) -> Result<i32, Failure> {
    let raw = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let (trace, meta) = parse_structured(&raw).map_err(input)?;
    let rules = cfg.rules(None)?;
    if cfg.format == OutputFormat::Prose {
        if let Some(s) = trace
            .steps
            .iter()
            .find(|s| !s.is_trivial() && !rules.iter().any(|r| r.label() == s.rule))
        {
            return Err(input(format!("trace cites rule `{}` outside the catalog", s.rule)));
        }
    }
    let text = match cfg.format {
        OutputFormat::Structured => render_structured(&trace, &meta),
        _ => cfg.render(&trace, &rules)?,
    };
    emit(out, out_path, &text)?;
    Ok(EXIT_PROVED)
}

fn lemma_cmd(problem: &Path, name: &str, target: &Path, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let problem = load_problem(problem)?;
    let rules = cfg.rules(Some(&problem))?;
    let mut existing = rules.clone();
    if target.exists() {
        existing.extend(load_catalog(&target.to_string_lossy(), &FsLoader::from_env()).map_err(input)?);
    }
    let trace = match problem.prove(&rules, &cfg.engine).map_err(limit_failure)? {
        ProofResult::Proved { trace, .. } => trace,
        ProofResult::NotProved { advice, .. } => {
            emit(out, &None, &format!("Not proved.\n{advice}\n"))?;
            return Ok(EXIT_NOT_PROVED);
        }
    };
    let lemma = register_lemma(name, &problem.hypotheses, &problem.goals, &trace, &existing).map_err(input)?;
    let mut file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(target)
        .map_err(|e| input(format!("{}: {e}", target.display())))?;
    let line = print_unit(&lemma.to_unit());
    writeln!(file, "{line}").map_err(input)?;
    emit(out, &None, &format!("{line}\n"))?;
    Ok(EXIT_PROVED)
}

/// Runs one command line; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PROVED };
            if e.use_stderr() {
                let _ = write!(err, "{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Prove {
            problem,
            opts,
            format,
            out: target,
        } => opts
            .resolve(*format, None)
            .and_then(|cfg| prove_cmd(problem, &cfg, target, out)),
        Command::Saturate { problem, opts } => opts.resolve(None, None).and_then(|cfg| saturate_cmd(problem, &cfg, out)),
        Command::Check {
            input: path,
            trace,
            models,
            model_file,
            opts,
        } => opts
            .resolve(None, *models)
            .and_then(|cfg| check_cmd(path, *trace, model_file, &cfg, out)),
        Command::Render {
            trace,
            format,
            out: target,
            opts,
        } => opts
            .resolve(*format, None)
            .and_then(|cfg| render_cmd(trace, &cfg, target, out)),
        Command::Lemma {
            problem,
            name,
            append_to,
            opts,
        } => opts
            .resolve(None, None)
            .and_then(|cfg| lemma_cmd(problem, name, append_to, &cfg, out)),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Entry point of the binary.
pub fn main() -> i32 {
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run(std::env::args_os(), &mut out, &mut err)
}
