//! Argument parsing and command dispatch.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use preord::carriers::{cone_validate, morphism_validate};
use preord::corpus::{builtin_catalog, Catalog};
use preord::galois::GaloisTag;
use preord::Verdict;

use crate::census::{census_corpus, run_census, summary};
use crate::checks::{run_check, Options, Outcome, Record, Target};
use crate::dump::catalog_model;
use crate::explain::{explain_morphism, explain_object};
use crate::model::{parse_model, print_model};
use crate::report::{emit_report, exit_code, Format, EXIT_ERROR, EXIT_HOLDS};
use crate::resolve::{resolve, Model, OBJECT_PREDICATES};

/// Search bound for word groups that do not declare one.
pub const DEFAULT_WORD_BOUND: u32 = 6;

const EXIT_HELP: &str = "Exit codes:
  0  every check holds
  1  some check fails
  2  some check is unknown up to its bound, none fails
  3  model or usage error
A failure outranks an unknown, so pipelines stop on refutations.";

#[derive(Parser, Debug)]
#[command(name = "preord", version, about = "Decision procedures for preordered groups", after_help = EXIT_HELP)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Search bound for word groups (default 6, or the group's own bound).
    #[arg(long, global = true)]
    bound: Option<u32>,
    /// Worker threads for independent checks.
    #[arg(long, global = true, default_value_t = 1)]
    parallel: usize,
    /// Report 0 for every timing, making output byte-stable.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a model file and validate every object and morphism.
    Validate { file: PathBuf },
    /// Run the check directives of a model file.
    Check { file: PathBuf },
    /// Sweep catalog surjections through the extension predicates.
    Census {
        #[arg(long, default_value_t = 8)]
        max_order: usize,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Show the reflections of an object, or the squares of a morphism.
    Explain {
        name: String,
        /// Look the name up in this model file instead of the catalog.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Print the catalog in the model format.
    Dump,
}

/// Exit code with the text for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn error(message: impl Into<String>) -> Self {
        Output {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: message.into() + "\n",
        }
    }

    fn records(records: &[Record], format: Format) -> Self {
        Output {
            code: exit_code(records),
            stdout: emit_report(records, format),
            stderr: String::new(),
        }
    }
}

fn load(path: &PathBuf, catalog: &Catalog, bound: u32) -> Result<Model, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file = parse_model(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    resolve(file, catalog, bound).map_err(|e| format!("{}: {e}", path.display()))
}

fn validate(model: &Model) -> Vec<Record> {
    let mut out = Vec::new();
    let rec = |predicate: &str, name: &str, v: preord::Result<Verdict>| Record {
        predicate: predicate.into(),
        target: name.into(),
        outcome: match v {
            Ok(v) => Outcome::Verdict(v),
            Err(e) => Outcome::Error(e.to_string()),
        },
        millis: 0,
    };
    for (n, x) in &model.objects {
        out.push(rec("validate", n, cone_validate(x)));
    }
    for (n, m) in &model.morphisms {
        out.push(rec("validate", n, morphism_validate(m)));
    }
    out
}

fn check(model: &Model, catalog: &Catalog, cli_bound: Option<u32>, timing: bool) -> Vec<Record> {
    model
        .checks
        .par_iter()
        .map(|c| {
            let p = c.predicate.text.as_str();
            let name = c.target.text.as_str();
            let target = if OBJECT_PREDICATES.contains(&p) {
                Target::Object(model.object(name).or_else(|| catalog.object(name)).expect("resolved"))
            } else {
                Target::Morphism(model.morphism(name).or_else(|| catalog.morphism(name)).expect("resolved"))
            };
            let own_bound = match &target {
                Target::Morphism(m) => [&m.domain, &m.codomain]
                    .iter()
                    .filter_map(|x| x.as_word().map(|(w, _)| w.bound()))
                    .max(),
                Target::Object(x) => x.as_word().map(|(w, _)| w.bound()),
            };
            let bound = c.bound.or(cli_bound).or(own_bound).unwrap_or(DEFAULT_WORD_BOUND);
            let base = c
                .base
                .as_ref()
                .map(|b| model.object(&b.text).or_else(|| catalog.object(&b.text)).expect("resolved"));
            let tag = match c.tag.as_ref().map(|t| t.text.as_str()) {
                Some("gc") => GaloisTag::GammaC,
                _ => GaloisTag::Gamma,
            };
            let opts = Options { bound, base, tag };
            run_check(p, name, target, &opts, timing)
        })
        .collect()
}

fn explain(name: &str, file: Option<&PathBuf>, catalog: &Catalog, bound: u32) -> Output {
    let model = match file {
        Some(f) => match load(f, catalog, bound) {
            Ok(m) => Some(m),
            Err(e) => return Output::error(e),
        },
        None => None,
    };
    let object = model.as_ref().and_then(|m| m.object(name)).or_else(|| catalog.object(name));
    let morphism = model.as_ref().and_then(|m| m.morphism(name)).or_else(|| catalog.morphism(name));
    let text = match (morphism, object) {
        (Some(m), _) => match explain_morphism(name, m) {
            Ok(t) => t,
            Err(e) => return Output::error(format!("explain {name}: {e}")),
        },
        (None, Some(x)) => explain_object(name, x),
        (None, None) => return Output::error(format!("unknown name '{name}'")),
    };
    Output {
        code: EXIT_HOLDS,
        stdout: text,
        stderr: String::new(),
    }
}

fn dispatch(cli: Cli) -> Output {
    let catalog = builtin_catalog();
    let timing = !cli.no_timing;
    let file_bound = cli.bound.unwrap_or(DEFAULT_WORD_BOUND);
    match &cli.command {
        Command::Validate { file } => match load(file, &catalog, file_bound) {
            Ok(model) => Output::records(&validate(&model), cli.format),
            Err(e) => Output::error(e),
        },
        Command::Check { file } => match load(file, &catalog, file_bound) {
            Ok(model) => Output::records(&check(&model, &catalog, cli.bound, timing), cli.format),
            Err(e) => Output::error(e),
        },
        Command::Census { max_order, limit } => {
            let corpus = census_corpus(&catalog, *max_order, *limit);
            let records = run_census(&corpus, file_bound, timing);
            let stdout = match cli.format {
                Format::Text => summary(corpus.len(), &records),
                Format::Json => emit_report(&records, Format::Json),
            };
            Output {
                code: exit_code(&records),
                stdout,
                stderr: String::new(),
            }
        }
        Command::Explain { name, file } => explain(name, file.as_ref(), &catalog, file_bound),
        Command::Dump => Output {
            code: EXIT_HOLDS,
            stdout: print_model(&catalog_model(&catalog)),
            stderr: String::new(),
        },
    }
}

/// Runs the tool on `argv` (program name first).
pub fn run_command<I, S>(argv: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_HOLDS };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let threads = cli.parallel.max(1);
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(|| dispatch(cli)),
        Err(e) => Output::error(format!("cannot start {threads} workers: {e}")),
    }
}
