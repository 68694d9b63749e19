// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Command-line front end behind the `tokswap` binary.
//!
//! Every command prints a [`RunReport`]. With `--format machine` the report
//! is one line of compact JSON; `--format table` prints the same content as
//! aligned text. Exit codes: 0 success, 2 validation failure, 3 bad
//! parameters or unreadable input, 4 search budget exceeded.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::approx::{cycle_algorithm, default_greedy_budget, greedy_locally_optimal, ApproxResult};
use crate::barriers::{constructive_sequence_51, gen_local_opt_barrier, gen_ratio_barrier};
use crate::error::Error;
use crate::exact::{solve_bfs, solve_idastar, solve_weighted, DEFAULT_STATE_BUDGET};
use crate::experiments::{
    approx_ratio, barrier_51, barrier_52, completeness, max_ratio, setcover_equivalence, ApproxRatioParams,
    Barrier51Params, Barrier52Params, CompletenessParams, ExperimentReport, Outcome, SetCoverParams,
};
use crate::model::io::InstanceDocument;
use crate::model::{
    half_total_lower_bound, is_locally_optimal, region_swap_counts, sequence_weight, total, validate, EdgeRegions,
    Instance, SwapSequence, Weight, WeightedInstance,
};
use crate::reductions::{build_from_label_cover, build_from_set_cover, LabelCoverInstance, SetCoverInstance};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_PARAMS: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "tokswap", version, about = "Token swapping solvers, reductions and barrier instances")]
pub struct Cli {
    /// Output format of the run report.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Machine,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a barrier instance and its annotations.
    Gen(GenArgs),
    /// Reduce a label-cover or set-cover file to a token swapping instance.
    Reduce(ReduceArgs),
    /// Solve or approximate an instance.
    Solve(SolveArgs),
    /// Validate a swap sequence against an instance.
    Check(CheckArgs),
    /// Run a named experiment suite.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    LocalOptBarrier,
    RatioBarrier,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub family: Family,
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub q: usize,
    /// Instance file to write; annotations go next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    LabelCover,
    SetCover,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[arg(value_enum)]
    pub source: Source,
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    ExactBfs,
    ExactIda,
    ExactWeighted,
    ApproxCycle,
    Greedy,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// State budget for exact modes, step budget for greedy.
    #[arg(long)]
    pub budget: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Where to write the resulting swap sequence.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub input: PathBuf,
    pub sequence: PathBuf,
    /// Annotation file with `edge_regions`, for per-region swap counts.
    #[arg(long)]
    pub annotations: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExperimentName {
    Completeness,
    SetcoverEquivalence,
    #[value(name = "barrier-51")]
    Barrier51,
    #[value(name = "barrier-52")]
    Barrier52,
    ApproxRatio,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(value_enum)]
    pub name: ExperimentName,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub budget: Option<usize>,
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
    #[arg(long, default_value_t = 0.3)]
    pub density: f64,
    #[arg(long, default_value_t = 5)]
    pub max_universe: usize,
    #[arg(long, default_value_t = 4)]
    pub max_sets: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [2, 4])]
    pub degrees: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [1, 2])]
    pub alphabets: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [2, 3])]
    pub sides: Vec<usize>,
    /// Barrier sizes as `PxQ`, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_size)]
    pub sizes: Vec<(usize, usize)>,
}

fn parse_size(text: &str) -> Result<(usize, usize), String> {
    let (p, q) = text
        .split_once('x')
        .ok_or_else(|| format!("expected PxQ, got {text:?}"))?;
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|e| format!("{s:?}: {e}"));
    Ok((parse(p)?, parse(q)?))
}

/// Report printed by every command. `timing_ms` is the only field that may
/// differ between identical runs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fingerprint: Option<String>,
    pub results: Value,
    pub timing_ms: u64,
}

impl RunReport {
    fn new(command: &[String], fingerprint: Option<String>, results: Value) -> Self {
        RunReport {
            command: command.to_vec(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            fingerprint,
            results,
            timing_ms: 0,
        }
    }

    pub fn to_machine(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command                  {}\n", self.command.join(" ")));
        out.push_str(&format!("version                  {}\n", self.version));
        if let Some(fp) = &self.fingerprint {
            out.push_str(&format!("fingerprint              {fp}\n"));
        }
        match &self.results {
            Value::Object(map) => {
                for (key, value) in map {
                    if key == "rows" {
                        continue;
                    }
                    out.push_str(&format!("{key:<24} {}\n", compact(value)));
                }
                if let Some(Value::Array(rows)) = map.get("rows") {
                    out.push_str("rows\n");
                    for row in rows {
                        out.push_str(&format!(
                            "  {:<7} {}  bound {}  observed {}{}\n",
                            row["outcome"].as_str().unwrap_or("?"),
                            compact(&row["params"]),
                            compact(&row["bound"]),
                            compact(&row["observed"]),
                            row.get("note")
                                .and_then(Value::as_str)
                                .map(|n| format!("  ({n})"))
                                .unwrap_or_default(),
                        ));
                    }
                }
            }
            other => out.push_str(&format!("results                  {}\n", compact(other))),
        }
        out.push_str(&format!("timing_ms                {}\n", self.timing_ms));
        out
    }
}

fn compact(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// An error together with the exit code it maps to and any partial results.
#[derive(Debug)]
struct Failure {
    code: i32,
    results: Value,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::NonEdge { .. }
            | Error::NotAWalk { .. }
            | Error::ClaimViolated(_)
            | Error::NotFullySatisfying
            | Error::NotACover { .. } => EXIT_INVALID,
            _ => EXIT_PARAMS,
        };
        Failure {
            code,
            results: error_value(&err),
        }
    }
}

fn error_value(err: &Error) -> Value {
    let mut v = json!({"error": err.to_string()});
    if let Error::NonEdge { index, u, v: w } = err {
        v["non_edge"] = json!({"index": index, "edge": [u, w]});
    }
    v
}

/// Parses `args` (including the program name), runs the command and writes
/// the report to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_PARAMS } else { EXIT_OK };
            let _ = err.print();
            return code;
        }
    };
    let echo = echo(&cli);
    let started = Instant::now();
    let (code, fingerprint, results) = match execute(&cli.command) {
        Ok((fp, results, code)) => (code, fp, results),
        Err(failure) => (failure.code, None, failure.results),
    };
    let mut report = RunReport::new(&echo, fingerprint, results);
    report.timing_ms = started.elapsed().as_millis() as u64;
    let text = match cli.format {
        Format::Machine => report.to_machine() + "\n",
        Format::Table => report.to_table(),
    };
    if out.write_all(text.as_bytes()).is_err() {
        return EXIT_PARAMS;
    }
    code
}

fn echo(cli: &Cli) -> Vec<String> {
    let mut words = vec!["tokswap".to_string()];
    match &cli.command {
        Command::Gen(a) => {
            words.extend(["gen".into(), value_name(a.family), format!("p={}", a.p), format!("q={}", a.q)]);
        }
        Command::Reduce(a) => {
            words.extend(["reduce".into(), value_name(a.source), file_name(&a.input)]);
        }
        Command::Solve(a) => {
            words.extend([
                "solve".into(),
                file_name(&a.input),
                value_name(a.mode),
                format!("seed={}", a.seed),
                format!("budget={}", a.budget.map_or("default".into(), |b| b.to_string())),
            ]);
        }
        Command::Check(a) => {
            words.extend(["check".into(), file_name(&a.input), file_name(&a.sequence)]);
        }
        Command::Experiment(a) => {
            words.extend(["experiment".into(), value_name(a.name), format!("seed={}", a.seed)]);
        }
    }
    words
}

fn value_name(value: impl ValueEnum) -> String {
    value
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default()
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|f| f.to_string_lossy().into_owned())
        .unwrap_or_default()
}

type Outcome3 = (Option<String>, Value, i32);

fn execute(command: &Command) -> Result<Outcome3, Failure> {
    match command {
        Command::Gen(a) => cmd_gen(a),
        Command::Reduce(a) => cmd_reduce(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Check(a) => cmd_check(a),
        Command::Experiment(a) => cmd_experiment(a),
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// `dir/stem.suffix.json` next to `path`.
fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".into());
    path.with_file_name(format!("{stem}.{suffix}.json"))
}

fn sequence_json(seq: &SwapSequence) -> String {
    serde_json::to_string(seq).expect("sequences always serialize")
}

fn cmd_gen(a: &GenArgs) -> Result<Outcome3, Failure> {
    let (doc, annotations, constructive) = match a.family {
        Family::LocalOptBarrier => {
            let (inst, ann) = gen_local_opt_barrier(a.p, a.q)?;
            let seq = constructive_sequence_51(&inst, &ann);
            (InstanceDocument::unweighted(inst), Some(ann.to_json()), Some(seq))
        }
        Family::RatioBarrier => (InstanceDocument::unweighted(gen_ratio_barrier(a.p, a.q)?), None, None),
    };
    let mut written = Vec::new();
    if let Some(path) = &a.out {
        write(path, &doc.to_pretty_json())?;
        written.push(file_name(path));
        if let Some(ann) = &annotations {
            let p = sibling(path, "annotations");
            write(&p, ann)?;
            written.push(file_name(&p));
        }
        if let Some(seq) = &constructive {
            let p = sibling(path, "constructive");
            write(&p, &sequence_json(seq))?;
            written.push(file_name(&p));
        }
    }
    let inst = &doc.instance;
    let mut results = json!({
        "n": inst.vertex_count(),
        "edges": inst.graph().edge_count(),
        "total": total(inst),
        "written": written,
    });
    if let Some(seq) = &constructive {
        results["constructive_length"] = json!(seq.len());
    }
    Ok((Some(doc.fingerprint()), results, EXIT_OK))
}

fn cmd_reduce(a: &ReduceArgs) -> Result<Outcome3, Failure> {
    let text = read(&a.input)?;
    let (doc, annotations) = match a.source {
        Source::LabelCover => {
            let phi = LabelCoverInstance::from_json(&text)?;
            let (inst, map) = build_from_label_cover(&phi)?;
            (InstanceDocument::unweighted(inst), map.to_json())
        }
        Source::SetCover => {
            let phi = SetCoverInstance::from_json(&text)?;
            let (winst, roles) = build_from_set_cover(&phi)?;
            (InstanceDocument::weighted(winst), roles.to_json())
        }
    };
    let mut written = Vec::new();
    if let Some(path) = &a.out {
        write(path, &doc.to_pretty_json())?;
        let p = sibling(path, "annotations");
        write(&p, &annotations)?;
        written.push(file_name(path));
        written.push(file_name(&p));
    }
    let inst = &doc.instance;
    let results = json!({
        "n": inst.vertex_count(),
        "edges": inst.graph().edge_count(),
        "weighted": doc.weights.is_some(),
        "total": total(inst),
        "written": written,
    });
    Ok((Some(doc.fingerprint()), results, EXIT_OK))
}

fn load_instance(path: &Path) -> Result<InstanceDocument, Error> {
    InstanceDocument::from_json(&read(path)?).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn cmd_solve(a: &SolveArgs) -> Result<Outcome3, Failure> {
    let doc = load_instance(&a.input)?;
    let inst = &doc.instance;
    let mut results = json!({
        "mode": value_name(a.mode),
        "n": inst.vertex_count(),
        "total": total(inst),
        "half_total_lower_bound": half_total_lower_bound(inst),
    });
    let sequence = match a.mode {
        Mode::ExactBfs | Mode::ExactIda => {
            let budget = a.budget.unwrap_or(DEFAULT_STATE_BUDGET);
            let solved = if a.mode == Mode::ExactBfs {
                solve_bfs(inst, budget)?
            } else {
                solve_idastar(inst, budget)?
            };
            results["opt_length"] = json!(solved.opt_length);
            results["expanded_states"] = json!(solved.expanded_states);
            solved.witness
        }
        Mode::ExactWeighted => {
            let winst = doc
                .weighted_instance()
                .unwrap_or_else(|| WeightedInstance::uniform(inst.clone(), Weight::from_integer(1)));
            let solved = solve_weighted(&winst, a.budget.unwrap_or(DEFAULT_STATE_BUDGET))?;
            results["opt_weight"] = json!(solved.opt_weight.to_string());
            results["expanded_states"] = json!(solved.expanded_states);
            solved.witness
        }
        Mode::ApproxCycle | Mode::Greedy => {
            let approx = if a.mode == Mode::ApproxCycle {
                cycle_algorithm(inst)
            } else {
                let budget = a.budget.unwrap_or_else(|| default_greedy_budget(inst));
                greedy_locally_optimal(inst, a.seed, budget)?
            };
            approx_results(inst, &approx, &mut results)?;
            approx.sequence
        }
    };
    let report = validate(inst, &sequence)?;
    results["length"] = json!(sequence.len());
    results["reaches_target"] = json!(report.reaches_target);
    if let Some(winst) = doc.weighted_instance() {
        results["weight"] = json!(sequence_weight(&winst, &sequence)?.to_string());
    }
    if let Some(path) = &a.out {
        write(path, &sequence_json(&sequence))?;
    }
    let code = if report.reaches_target { EXIT_OK } else { EXIT_INVALID };
    Ok((Some(doc.fingerprint()), results, code))
}

fn approx_results(inst: &Instance, approx: &ApproxResult, results: &mut Value) -> Result<(), Error> {
    results["ratio_to_lower_bound"] = approx.ratio_to_lower_bound().map_or(Value::Null, |r| json!(r));
    results["locally_optimal"] = json!(is_locally_optimal(inst, &approx.sequence)?.locally_optimal);
    Ok(())
}

fn load_regions(path: &Path) -> Result<EdgeRegions<String>, Error> {
    let value: Value = serde_json::from_str(&read(path)?)?;
    let entries = value
        .get("edge_regions")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse(format!("{}: no edge_regions list", path.display())))?;
    let mut regions = EdgeRegions::new();
    for entry in entries {
        let edge = entry["edge"]
            .as_array()
            .filter(|e| e.len() == 2)
            .and_then(|e| Some((e[0].as_u64()? as usize, e[1].as_u64()? as usize)))
            .ok_or_else(|| Error::Parse(format!("{}: malformed edge entry {entry}", path.display())))?;
        let region = match &entry["region"] {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        regions.insert((edge.0.min(edge.1), edge.0.max(edge.1)), region);
    }
    Ok(regions)
}

fn cmd_check(a: &CheckArgs) -> Result<Outcome3, Failure> {
    let doc = load_instance(&a.input)?;
    let seq: SwapSequence = serde_json::from_str(&read(&a.sequence)?)
        .map_err(|e| Error::Parse(format!("{}: {e}", a.sequence.display())))?;
    let inst = &doc.instance;
    let fingerprint = Some(doc.fingerprint());
    let report = match validate(inst, &seq) {
        Ok(r) => r,
        Err(err) => {
            let mut results = error_value(&err);
            results["reaches_target"] = json!(false);
            return Ok((fingerprint, results, EXIT_INVALID));
        }
    };
    let local = is_locally_optimal(inst, &seq)?;
    let mut results = json!({
        "length": report.length,
        "reaches_target": report.reaches_target,
        "locally_optimal": local.locally_optimal,
        "half_total_lower_bound": half_total_lower_bound(inst),
    });
    if let Some(index) = local.first_violation {
        results["first_violation"] = json!(index);
    }
    if let Some(winst) = doc.weighted_instance() {
        results["weight"] = json!(sequence_weight(&winst, &seq)?.to_string());
    }
    if let Some(path) = &a.annotations {
        let regions = load_regions(path)?;
        results["region_swap_counts"] = json!(region_swap_counts(inst, &seq, &regions)?);
    }
    let code = if report.reaches_target { EXIT_OK } else { EXIT_INVALID };
    Ok((fingerprint, results, code))
}

fn cmd_experiment(a: &ExperimentArgs) -> Result<Outcome3, Failure> {
    let budget = a.budget.unwrap_or(DEFAULT_STATE_BUDGET);
    let report: ExperimentReport = match a.name {
        ExperimentName::Completeness => completeness(&CompletenessParams {
            degrees: a.degrees.clone(),
            alphabets: a.alphabets.clone(),
            sides: a.sides.clone(),
            seed: a.seed,
            budget,
        }),
        ExperimentName::SetcoverEquivalence => setcover_equivalence(&SetCoverParams {
            max_universe: a.max_universe,
            max_sets: a.max_sets,
            budget,
        }),
        ExperimentName::Barrier51 => {
            let mut params = Barrier51Params {
                seed: a.seed,
                ..Barrier51Params::default()
            };
            if !a.sizes.is_empty() {
                params.sizes = a.sizes.clone();
            }
            barrier_51(&params)
        }
        ExperimentName::Barrier52 => {
            let mut params = Barrier52Params {
                budget,
                ..Barrier52Params::default()
            };
            if !a.sizes.is_empty() {
                params.sizes = a.sizes.clone();
            }
            barrier_52(&params)
        }
        ExperimentName::ApproxRatio => {
            if !(0.0..=1.0).contains(&a.density) {
                return Err(Error::BadParams(format!("density {} is not a probability", a.density)).into());
            }
            approx_ratio(&ApproxRatioParams {
                trials: a.trials,
                max_n: a.max_n,
                density: a.density,
                seed: a.seed,
                budget,
            })
        }
    };
    let mut results = json!({
        "experiment": report.name,
        "passed": report.passed(),
        "pass": report.count(Outcome::Pass),
        "fail": report.count(Outcome::Fail),
        "budget": report.count(Outcome::Budget),
    });
    if a.name == ExperimentName::ApproxRatio {
        results["max_ratio"] = max_ratio(&report).map_or(Value::Null, |r| json!(r));
    }
    results["rows"] = serde_json::to_value(&report.rows).expect("rows always serialize");
    let code = if report.passed() { EXIT_OK } else { EXIT_INVALID };
    Ok((None, results, code))
}
