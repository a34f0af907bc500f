//! `flipstr` command-line front end.
//!
//! Standard output carries results only (text, or one JSON document per
//! input with `--json`); diagnostics, timings and progress go to standard
//! error. Exit codes: 0 success, 1 domain or usage error, 2 verification
//! failure, 3 budget exceeded.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flipstr::classify::{self, GroupingClass, SortingClass};
use flipstr::oracle::{
    diameter_with_progress, grouping_distance_bfs, pair_distance_bfs, sorting_distance_bfs, DistanceTable, Goal,
    SearchBudget,
};
use flipstr::reductions::{
    certificate_3p, encode_3p, encode_rsw, lift_flips_rsw, solve_3p, ThreePartitionInstance, TripletPartition,
};
use flipstr::solve::{self, Epsilon, SolveResult};
use flipstr::verify::{self, CheckKind, VerificationReport};
use flipstr::{FlipSequence, NormalizedString, RawString};
use serde::Serialize;
use serde_json::json;

/// Largest alphabet accepted on the command line (one digit per symbol).
const MAX_ARITY: usize = 10;

#[derive(Parser)]
#[command(
    name = "flipstr",
    version,
    about = "Prefix reversals on strings over small alphabets"
)]
struct Cli {
    /// Emit one JSON document per result instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// States a single search may hold in memory.
    #[arg(long, global = true, value_name = "N")]
    budget_states: Option<u64>,
    /// Total BFS visits of a diameter run.
    #[arg(long, global = true, value_name = "N")]
    budget_visits: Option<u64>,
    /// Deepest search level.
    #[arg(long, global = true, value_name = "N")]
    budget_depth: Option<usize>,
    /// Lift all budget caps and report progress on long runs.
    #[arg(long, global = true)]
    extended: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Sorting,
    Grouping,
}

impl Mode {
    fn goal(self) -> Goal {
        match self {
            Mode::Sorting => Goal::Sorting,
            Mode::Grouping => Goal::Grouping,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Mode::Sorting => "d_s",
            Mode::Grouping => "d_g",
        }
    }
}

#[derive(Args)]
struct Inputs {
    /// Digit strings, or @path for a file with one string per line.
    #[arg(required = true, value_name = "STRING")]
    strings: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Collapse runs of equal symbols.
    Normalize(Inputs),
    /// Apply a flip sequence such as 4,2,2.
    Flip {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_name = "SEQ")]
        flips: String,
        /// Flip normalized strings, where prefixes count runs.
        #[arg(long)]
        normalized: bool,
    },
    /// Classify fully ternary strings and give the closed-form distance.
    Classify {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_enum, default_value = "sorting")]
        mode: Mode,
    },
    /// Optimal sorting flips for binary and ternary strings.
    Sort {
        #[command(flatten)]
        inputs: Inputs,
        /// Give prefixes in raw positions instead of runs.
        #[arg(long)]
        raw: bool,
    },
    /// Optimal grouping flips for binary and ternary strings.
    Group {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        raw: bool,
    },
    /// Exact distance by search.
    Distance {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_enum, default_value = "sorting")]
        mode: Mode,
        /// Distance to this compatible string instead of the sorted one.
        #[arg(long, value_name = "STRING")]
        to: Option<String>,
    },
    /// Largest distance between compatible strings of length n over k symbols.
    Diameter {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        k: usize,
        /// Heartbeat per frequency class on standard error.
        #[arg(long)]
        progress: bool,
    },
    /// Approximate sorting or grouping within a factor 1 + epsilon.
    Ptas {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_enum, default_value = "sorting")]
        mode: Mode,
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
    },
    /// Build the gadget pair for a 3-Partition instance file.
    Reduce3p {
        /// File with "k N" on the first line and 3k sizes on the second.
        instance: PathBuf,
        /// Triples of 1-based indices, e.g. "1,2,3 4,5,6".
        #[arg(long, value_name = "TRIPLES", conflicts_with = "solve")]
        partition: Option<String>,
        /// Search for a partition and emit its certificate.
        #[arg(long)]
        solve: bool,
    },
    /// Encode a compatible pair into binary fragment strings.
    Reducersw {
        x: String,
        y: String,
        /// Flip sequence on x to carry over to the encoding.
        #[arg(long, value_name = "SEQ")]
        flips: Option<String>,
    },
    /// Run the table and characterization checks.
    Verify {
        /// Checks to run; all when omitted.
        #[arg(long = "check", value_enum)]
        checks: Vec<Check>,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 15)]
        binary_n_max: usize,
    },
    /// Distance histogram over every fully k-ary string of length n.
    Survey {
        #[arg(short, long)]
        k: usize,
        #[arg(short, long)]
        n: usize,
        #[arg(long, value_enum, default_value = "grouping")]
        mode: Mode,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    GroupingChildren,
    GroupingParents,
    SortingTable,
    BadLists,
    SortingCharacterization,
    GroupingCharacterization,
    Binary,
}

enum Failure {
    Domain(anyhow::Error),
    Verification,
    Budget(anyhow::Error),
}

impl From<flipstr::Error> for Failure {
    fn from(e: flipstr::Error) -> Self {
        match e {
            flipstr::Error::BudgetExceeded(_) => Failure::Budget(e.into()),
            e => Failure::Domain(e.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<flipstr::Error>() {
            Some(flipstr::Error::BudgetExceeded(_)) => Failure::Budget(e),
            _ => Failure::Domain(e),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(e.into())
    }
}

type Outcome<T = ()> = std::result::Result<T, Failure>;

struct Out {
    json: bool,
    lines: Vec<String>,
}

impl Out {
    fn emit<T: Serialize>(&mut self, value: &T, text: impl Display) {
        if self.json {
            self.lines
                .push(serde_json::to_string(value).expect("output serializes"));
        } else {
            self.lines.push(text.to_string());
        }
    }

    fn flush(&mut self) {
        let mut stdout = std::io::stdout().lock();
        for line in self.lines.drain(..) {
            let _ = writeln!(stdout, "{line}");
        }
    }
}

fn expand(inputs: &Inputs) -> Outcome<Vec<String>> {
    let mut out = Vec::new();
    for arg in &inputs.strings {
        match arg.strip_prefix('@') {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Domain(anyhow::anyhow!("cannot read {path}: {e}")))?;
                out.extend(text.lines().map(str::trim).filter(|l| !l.is_empty()).map(String::from));
            }
            None => out.push(arg.clone()),
        }
    }
    Ok(out)
}

fn parse_raw(text: &str) -> Outcome<RawString> {
    Ok(RawString::parse_with_arity(text, MAX_ARITY)?)
}

fn budget(cli: &Cli) -> Outcome<SearchBudget> {
    let mut b = if cli.extended {
        SearchBudget::extended()
    } else {
        SearchBudget::default()
    };
    if let Some(v) = cli.budget_states {
        b.max_states = v;
    }
    if let Some(v) = cli.budget_visits {
        b.max_visits = v;
    }
    if let Some(v) = cli.budget_depth {
        b.max_depth = v;
    }
    b.validate()?;
    Ok(b)
}

fn flips_text(seq: &FlipSequence) -> String {
    if seq.is_empty() {
        "-".into()
    } else {
        seq.to_string()
    }
}

fn labelled(multi: bool, input: &str, text: String) -> String {
    if multi {
        format!("{input}: {text}")
    } else {
        text
    }
}

fn grouping_reason(c: GroupingClass) -> String {
    match c {
        GroupingClass::Good => "good".into(),
        GroupingClass::BadTypeIV(i) => format!("bad (X{i})"),
        c => format!("bad (type {})", &c.tag()[4..]),
    }
}

fn sorting_reason(c: SortingClass) -> String {
    match c {
        SortingClass::Good => "good".into(),
        SortingClass::BadTypeIX(i) => format!("bad (type IX, Y{i})"),
        SortingClass::Exceptional0212 => "bad (0212 exceptional)".into(),
        c => format!("bad (type {})", &c.tag()[4..]),
    }
}

fn cmd_normalize(out: &mut Out, inputs: &Inputs) -> Outcome {
    let items = expand(inputs)?;
    for text in &items {
        let n = parse_raw(text)?.normalize();
        out.emit(
            &json!({"input": text, "normalized": n.to_string(), "length": n.len(), "arity": n.arity()}),
            labelled(items.len() > 1, text, n.to_string()),
        );
    }
    Ok(())
}

fn cmd_flip(out: &mut Out, inputs: &Inputs, flips: &str, normalized: bool) -> Outcome {
    let seq: FlipSequence = flips.parse()?;
    let items = expand(inputs)?;
    for text in &items {
        let raw = parse_raw(text)?;
        let result = if normalized {
            let n: NormalizedString = text.parse()?;
            n.apply(&seq)?.to_string()
        } else {
            raw.apply(&seq)?.to_string()
        };
        out.emit(
            &json!({"input": text, "flips": seq, "result": result}),
            labelled(items.len() > 1, text, result.clone()),
        );
    }
    Ok(())
}

fn cmd_classify(out: &mut Out, inputs: &Inputs, mode: Mode) -> Outcome {
    let items = expand(inputs)?;
    for text in &items {
        let n = parse_raw(text)?.normalize();
        let (tag, reason, d) = match mode {
            Mode::Sorting => {
                let c = classify::sorting_class(&n)?;
                (c.tag(), sorting_reason(c), classify::sorting_distance(&n)?)
            }
            Mode::Grouping => {
                let c = classify::grouping_class(&n)?;
                (c.tag(), grouping_reason(c), classify::grouping_distance(&n)?)
            }
        };
        out.emit(
            &json!({"input": text, "normalized": n.to_string(), "mode": mode, "class": tag, "distance": d}),
            labelled(items.len() > 1, text, format!("{reason}, {} = {d}", mode.symbol())),
        );
    }
    Ok(())
}

#[derive(Serialize)]
struct SolveOutput<'a> {
    input: &'a str,
    flips: FlipSequence,
    length: usize,
    optimal: bool,
    result: String,
}

fn emit_solution(out: &mut Out, multi: bool, text: &str, result: String, r: &SolveResult) -> Outcome {
    let quality = if r.optimal { "optimal" } else { "approximate" };
    let line = format!(
        "flips: {} ({} flips, {quality})",
        flips_text(&r.sequence),
        r.achieved_length
    );
    out.emit(
        &SolveOutput {
            input: text,
            flips: r.sequence.clone(),
            length: r.achieved_length,
            optimal: r.optimal,
            result,
        },
        labelled(multi, text, line),
    );
    Ok(())
}

/// Prefixes count runs unless `raw` is set.
fn cmd_solve(out: &mut Out, inputs: &Inputs, mode: Mode, raw: bool) -> Outcome {
    let items = expand(inputs)?;
    for text in &items {
        let s = parse_raw(text)?;
        let n = s.normalize();
        let mut r = match mode {
            Mode::Sorting => solve::sort_optimal(&n)?,
            Mode::Grouping => solve::group_optimal(&n)?,
        };
        let result = if raw {
            r.sequence = solve::lift_to_raw(&s, &r.sequence)?;
            s.apply(&r.sequence)?.to_string()
        } else {
            n.apply(&r.sequence)?.to_string()
        };
        emit_solution(out, items.len() > 1, text, result, &r)?;
    }
    Ok(())
}

fn cmd_distance(out: &mut Out, inputs: &Inputs, mode: Mode, to: Option<&str>, b: &SearchBudget) -> Outcome {
    let items = expand(inputs)?;
    let target = to.map(parse_raw).transpose()?;
    for text in &items {
        let raw = parse_raw(text)?;
        let (d, flips) = match &target {
            Some(t) => (pair_distance_bfs(&raw, t, b)?, None),
            None => {
                let n = raw.normalize();
                let (d, seq) = match mode {
                    Mode::Sorting => sorting_distance_bfs(&n, b)?,
                    Mode::Grouping => grouping_distance_bfs(&n, b)?,
                };
                (d, Some(solve::lift_to_raw(&raw, &seq)?))
            }
        };
        let mut value = json!({"input": text, "distance": d});
        let line = match (&target, &flips) {
            (Some(t), _) => {
                value["to"] = json!(t.to_string());
                format!("d = {d}")
            }
            (None, Some(seq)) => {
                value["mode"] = json!(mode);
                value["flips"] = json!(seq);
                format!("{} = {d}, flips: {}", mode.symbol(), flips_text(seq))
            }
            (None, None) => unreachable!(),
        };
        out.emit(&value, labelled(items.len() > 1, text, line));
    }
    Ok(())
}

fn cmd_diameter(out: &mut Out, n: usize, k: usize, progress: bool, b: &SearchBudget) -> Outcome {
    let report = diameter_with_progress(n, k, b, |p| {
        if progress {
            eprintln!(
                "class {}/{} {:?}: {} strings, eccentricity {}",
                p.done, p.total, p.freq, p.size, p.ecc
            );
        }
    })?;
    let text = format!(
        "delta({n},{k}) = {}, witness {} -> {}",
        report.delta, report.witness.0, report.witness.1
    );
    out.emit(&report, text);
    Ok(())
}

fn cmd_ptas(out: &mut Out, inputs: &Inputs, mode: Mode, epsilon: f64) -> Outcome {
    let eps = Epsilon::new(epsilon)?;
    let items = expand(inputs)?;
    for text in &items {
        let raw = parse_raw(text)?;
        let r = match mode {
            Mode::Sorting => solve::sort_ptas(&raw, eps)?,
            Mode::Grouping => solve::group_ptas(&raw, eps)?,
        };
        let result = raw.apply(&r.sequence)?.to_string();
        emit_solution(out, items.len() > 1, text, result, &r)?;
    }
    Ok(())
}

fn parse_partition(text: &str) -> Outcome<TripletPartition> {
    let bad = || {
        Failure::Domain(anyhow::anyhow!(
            "partition must look like \"1,2,3 4,5,6\", got {text:?}"
        ))
    };
    let triples = text
        .split_whitespace()
        .map(|t| {
            let v: Vec<usize> = t
                .split(',')
                .map(|x| x.parse().map_err(|_| bad()))
                .collect::<Outcome<_>>()?;
            <[usize; 3]>::try_from(v).map_err(|_| bad())
        })
        .collect::<Outcome<Vec<_>>>()?;
    Ok(TripletPartition::new(triples))
}

fn cmd_reduce3p(out: &mut Out, path: &PathBuf, partition: Option<&str>, search: bool, b: &SearchBudget) -> Outcome {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Domain(anyhow::anyhow!("cannot read {}: {e}", path.display())))?;
    let inst: ThreePartitionInstance = text.parse()?;
    let g = encode_3p(&inst);
    let mut value = json!({
        "k": inst.k(), "target": inst.target(), "s": g.s.to_string(), "t": g.t.to_string(), "bound": g.bound,
    });
    let mut lines = vec![format!("s: {}", g.s), format!("t: {}", g.t), format!("B: {}", g.bound)];
    let chosen = match partition {
        Some(p) => Some(parse_partition(p)?),
        None if search => match solve_3p(&inst, b.max_states)? {
            Some(p) => Some(p),
            None => {
                value["partition"] = serde_json::Value::Null;
                lines.push("partition: none".into());
                None
            }
        },
        None => None,
    };
    if let Some(p) = chosen {
        p.validate(&inst)?;
        let cert = certificate_3p(&inst, &p)?;
        lines.push(format!("partition: {p}"));
        lines.push(format!("certificate: {} ({} flips)", flips_text(&cert), cert.len()));
        value["partition"] = json!(p);
        value["certificate"] = json!(cert);
    }
    out.emit(&value, lines.join("\n"));
    Ok(())
}

fn cmd_reducersw(out: &mut Out, x: &str, y: &str, flips: Option<&str>) -> Outcome {
    let (x, y) = (parse_raw(x)?, parse_raw(y)?);
    let enc = encode_rsw(&x, &y)?;
    let mut value = json!({
        "x": enc.x.to_string(), "y": enc.y.to_string(), "boundaries": enc.boundaries, "subfragments": enc.subfragments,
    });
    let mut lines = vec![
        format!("x: {}", enc.x),
        format!("y: {}", enc.y),
        format!(
            "boundaries: {}",
            enc.boundaries
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        ),
    ];
    if let Some(seq) = flips {
        let lifted = lift_flips_rsw(&enc, &seq.parse()?)?;
        lines.push(format!("lifted: {}", flips_text(&lifted)));
        value["lifted"] = json!(lifted);
    }
    out.emit(&value, lines.join("\n"));
    Ok(())
}

#[derive(Serialize)]
struct ReportOutput<'a> {
    name: &'a str,
    population: usize,
    passed: bool,
    failures: &'a [verify::Failure],
}

fn cmd_verify(out: &mut Out, checks: &[Check], n_max: usize, binary_n_max: usize) -> Outcome {
    let all = Check::value_variants();
    let selected: Vec<Check> = if checks.is_empty() {
        all.to_vec()
    } else {
        all.iter().copied().filter(|c| checks.contains(c)).collect()
    };
    let mut failed = false;
    for check in selected {
        let report: VerificationReport = match check {
            Check::GroupingChildren => verify::check_grouping_children(),
            Check::GroupingParents => verify::check_grouping_parents(),
            Check::SortingTable => verify::check_sorting_table(),
            Check::BadLists => verify::check_bad_lists()?,
            Check::SortingCharacterization => verify::check_characterization(CheckKind::Sorting, n_max)?,
            Check::GroupingCharacterization => verify::check_characterization(CheckKind::Grouping, n_max)?,
            Check::Binary => verify::check_binary(binary_n_max)?,
        };
        eprintln!("{}: {:.2}s", report.name, report.elapsed.as_secs_f64());
        failed |= !report.passed();
        let mut text = format!(
            "{} {} ({} checked, {} failed)",
            if report.passed() { "PASS" } else { "FAIL" },
            report.name,
            report.population,
            report.failures.len()
        );
        for f in &report.failures {
            text.push_str(&format!("\n  {}: expected {}, got {}", f.string, f.expected, f.actual));
        }
        out.emit(
            &ReportOutput {
                name: &report.name,
                population: report.population,
                passed: report.passed(),
                failures: &report.failures,
            },
            text,
        );
    }
    if failed {
        return Err(Failure::Verification);
    }
    Ok(())
}

fn cmd_survey(out: &mut Out, k: usize, n: usize, mode: Mode, b: &SearchBudget) -> Outcome {
    if n < k {
        return Err(Failure::Domain(anyhow::anyhow!(
            "survey needs n >= k, got n={n}, k={k}"
        )));
    }
    let table = DistanceTable::build(k, n, mode.goal(), b.max_states)?;
    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
    let mut at_n_minus_2 = Vec::new();
    for (s, d) in table.strings(n) {
        *histogram.entry(d).or_default() += 1;
        if d + 2 == n {
            at_n_minus_2.push(s.to_string());
        }
    }
    let population: usize = histogram.values().sum();
    let mut lines = vec![format!("{mode:?} survey, k={k}, n={n}: {population} strings").to_lowercase()];
    lines.extend(histogram.iter().map(|(d, c)| format!("  d = {d}: {c}")));
    lines.push(format!("at n-2: {}", at_n_minus_2.join(" ")));
    let histogram: Vec<_> = histogram
        .iter()
        .map(|(d, c)| json!({"distance": d, "count": c}))
        .collect();
    out.emit(
        &json!({"mode": mode, "k": k, "n": n, "population": population, "histogram": histogram,
                "at_n_minus_2": at_n_minus_2}),
        lines.join("\n"),
    );
    Ok(())
}

fn run(cli: &Cli, out: &mut Out) -> Outcome {
    let b = budget(cli)?;
    match &cli.command {
        Command::Normalize(inputs) => cmd_normalize(out, inputs),
        Command::Flip {
            inputs,
            flips,
            normalized,
        } => cmd_flip(out, inputs, flips, *normalized),
        Command::Classify { inputs, mode } => cmd_classify(out, inputs, *mode),
        Command::Sort { inputs, raw } => cmd_solve(out, inputs, Mode::Sorting, *raw),
        Command::Group { inputs, raw } => cmd_solve(out, inputs, Mode::Grouping, *raw),
        Command::Distance { inputs, mode, to } => cmd_distance(out, inputs, *mode, to.as_deref(), &b),
        Command::Diameter { n, k, progress } => cmd_diameter(out, *n, *k, *progress || cli.extended, &b),
        Command::Ptas { inputs, mode, epsilon } => cmd_ptas(out, inputs, *mode, *epsilon),
        Command::Reduce3p {
            instance,
            partition,
            solve,
        } => cmd_reduce3p(out, instance, partition.as_deref(), *solve, &b),
        Command::Reducersw { x, y, flips } => cmd_reducersw(out, x, y, flips.as_deref()),
        Command::Verify {
            checks,
            n_max,
            binary_n_max,
        } => cmd_verify(out, checks, *n_max, *binary_n_max),
        Command::Survey { k, n, mode } => cmd_survey(out, *k, *n, *mode, &b),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let mut out = Out {
        json: cli.json,
        lines: Vec::new(),
    };
    let result = run(&cli, &mut out);
    out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Verification) => {
            eprintln!("verification failed");
            ExitCode::from(2)
        }
        Err(Failure::Budget(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
