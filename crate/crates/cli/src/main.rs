//! `katzred`: analysis, single transforms, reduction and confluence of
//! differential operators from the command line.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 unsupported structure
//! or a failed precondition, 3 non-semisimple leading term, 4 non-rigid
//! input, 5 internal cross-validation or round-trip failure.

mod structured;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use katzred_core::datum::{render_table, rigidity_index};
use katzred_core::engine::{
    deconfluence, parse_script, reduce, render_script, replay, trivial_power, FuchsianStep, ReductionScript, Replay,
    StepKind,
};
use katzred_core::expr::{parse_operator, parse_scalar, render_operator, render_scalar};
use katzred_core::lattice::{alpha_of, classify, render_dynkin, Classification};
use katzred_core::local::{local_datum, newton_polygon};
use katzred_core::weyl::{ade, euler, laplace, laplace_inv, rad_power, reduced_rep, TwistSpec, WeylOperator};
use katzred_core::Error;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "katzred", version, about = "Exact analysis and reduction of rigid differential operators")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Local datum table, Newton polygon, rigidity index and root vector.
    Analyze { expr: String },
    /// Applies one transform: laplace, laplace-inv, add:c,f, ade:alpha,beta or euler:alpha,f.
    Transform {
        expr: String,
        #[arg(long = "op")]
        op: String,
    },
    /// Reduces a rigid operator to an order-one operator.
    Reduce {
        expr: String,
        /// Writes the reduction script to this file.
        #[arg(long)]
        script: Option<PathBuf>,
        /// Prints the operator after every step.
        #[arg(long)]
        trace: bool,
    },
    /// Builds a Fuchsian family whose limit is the operator.
    Confluence { expr: String },
    /// Replays a script file carrying an `operator` header.
    Replay { file: PathBuf },
}

enum Failure {
    Core(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Core(e) => match e {
                Error::Parse { .. } => 1,
                Error::NonSemiSimple(_) => 3,
                Error::NotRigid { .. } => 4,
                Error::CrossValidationFailure { .. } | Error::RoundTripFailure(_) => 5,
                _ => 2,
            },
        }
    }

    fn kind(&self) -> String {
        match self {
            Failure::Input(_) => "Input".into(),
            Failure::Core(e) => format!("{:?}", e).split([' ', '(', '{']).next().unwrap_or("").to_string(),
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Input(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

/// A command result in both output formats.
struct Report {
    text: String,
    data: Value,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli.command) {
        Ok(report) => {
            match cli.format {
                Format::Text => emit(&report.text),
                Format::Structured => print_json(report.data),
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            if cli.format == Format::Structured {
                print_json(json!({ "error": { "kind": f.kind(), "message": f.message(), "exit_code": f.code() } }));
            }
            ExitCode::from(f.code())
        }
    }
}

fn print_json(mut data: Value) {
    if let Value::Object(m) = &mut data {
        m.insert("schema".into(), json!(structured::SCHEMA));
    }
    emit(&format!("{}\n", serde_json::to_string_pretty(&data).expect("JSON values always serialize")));
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn reflections(n: usize) -> String {
    if n == 1 {
        "1 reflection".into()
    } else {
        format!("{} reflections", n)
    }
}

fn run(cmd: &Command) -> Result<Report, Failure> {
    match cmd {
        Command::Analyze { expr } => analyze(&parse_operator(expr)?),
        Command::Transform { expr, op } => transform(&parse_operator(expr)?, op),
        Command::Reduce { expr, script, trace } => reduce_cmd(&parse_operator(expr)?, script.as_ref(), *trace),
        Command::Confluence { expr } => confluence(&parse_operator(expr)?),
        Command::Replay { file } => replay_cmd(file),
    }
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {}\n", l)).collect()
}

fn classification_text(c: &Classification) -> String {
    match c {
        Classification::RealOrbit { simple, steps } => {
            format!("real root, {} to the simple root {}", reflections(steps.len()), simple)
        }
        Classification::VMember { reached, steps } => {
            format!("real root, {} to the reducible vector {}", reflections(steps.len()), reached)
        }
        Classification::ImaginaryRoot { certificate, steps } => {
            format!("imaginary root, {} to {}", reflections(steps.len()), certificate)
        }
        Classification::NotRootLike { reached, steps } => {
            format!("not a root, {} to {}", reflections(steps.len()), reached)
        }
    }
}

fn analyze(p: &WeylOperator) -> Result<Report, Failure> {
    let poly = newton_polygon(p)?;
    let t = local_datum(p)?;
    let idx = rigidity_index(&t);
    let (f, a) = alpha_of(&t);
    let class = classify(&f, &a);
    let slopes: Vec<String> = poly.edges.iter().map(|e| format!("{} (length {})", e.slope, e.length)).collect();
    let mut text = format!("operator: {}\norder: {}\n", render_operator(p), p.order());
    text.push_str(&format!("newton polygon slopes: {}\n", slopes.join(", ")));
    text.push_str(&format!("table:\n{}", indent(&render_table(&t))));
    text.push_str(&format!("rigidity index: {}\n", idx));
    text.push_str(&format!("alpha_P: {}\n", a));
    text.push_str(&format!("classification: {}\n", classification_text(&class)));
    text.push_str(&format!("dynkin:\n{}", indent(&render_dynkin(&f, &a))));
    let data = json!({
        "command": "analyze",
        "operator": structured::operator(p),
        "order": p.order(),
        "newton_polygon": structured::newton_polygon(&poly),
        "table": structured::table(&t),
        "rigidity_index": idx,
        "alpha_p": structured::root(&f, &a),
        "classification": structured::classification(&class),
    });
    Ok(Report { text, data })
}

fn scalars(args: &str, n: usize, op: &str) -> Result<Vec<katzred_core::scalar::ParamRat>, Failure> {
    let parts: Vec<&str> = args.split(',').collect();
    if parts.len() != n {
        return Err(Failure::Input(format!("--op {} takes {} comma-separated scalars", op, n)));
    }
    Ok(parts.iter().map(|s| parse_scalar(s.trim())).collect::<Result<_, _>>()?)
}

fn transform(p: &WeylOperator, spec: &str) -> Result<Report, Failure> {
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    let image = match name {
        "laplace" => laplace(p),
        "laplace-inv" => laplace_inv(p),
        "add" => {
            let v = scalars(args, 2, name)?;
            rad_power(&v[0], &v[1], p)?
        }
        "ade" => {
            let v = scalars(args, 2, name)?;
            ade(&TwistSpec::new(v[0].clone(), v[1].clone()), p)
        }
        "euler" => {
            let v = scalars(args, 2, name)?;
            euler(&v[0], &v[1], p)?
        }
        _ => {
            return Err(Failure::Input(format!(
                "unknown transform {:?}; expected laplace, laplace-inv, add:c,f, ade:alpha,beta or euler:alpha,f",
                name
            )))
        }
    };
    let image = reduced_rep(&image)?;
    Ok(Report {
        text: format!("{}\n", render_operator(&image)),
        data: json!({ "command": "transform", "op": spec, "operator": structured::operator(&image) }),
    })
}

/// The operator just before the terminal collapse, or the last one.
fn pre_collapse<'a>(s: &ReductionScript, run: &'a Replay) -> &'a WeylOperator {
    match s.steps.last().map(|st| &st.kind) {
        Some(StepKind::TerminalCollapse { .. }) => &run.trace[run.trace.len() - 2],
        _ => run.last(),
    }
}

fn reduction_report(command: &str, p: &WeylOperator, s: &ReductionScript, run: &Replay, trace: bool) -> Report {
    let fin = pre_collapse(s, run);
    let script = render_script(s, Some(p));
    let mut text = format!("final: {}\n", render_operator(fin));
    let mut data = json!({
        "command": command,
        "operator": structured::operator(p),
        "final": structured::operator(fin),
        "euler_steps": s.euler_steps(),
        "script": structured::script(&script),
    });
    if let Some((alpha, beta, n)) = &s.final_form {
        let triv = trivial_power(alpha, beta, *n);
        text.push_str(&format!("trivial form: {}\n", render_operator(&triv)));
        data["trivial_form"] = structured::operator(&triv);
    }
    text.push_str(&format!("euler steps: {}\n", s.euler_steps()));
    if trace {
        let lines: Vec<&str> = script.lines().filter(|l| !l.starts_with("operator") && !l.starts_with("table")).collect();
        text.push_str("trace:\n");
        text.push_str(&format!("  start: {}\n", render_operator(&run.trace[0])));
        for (k, line) in lines.iter().enumerate() {
            text.push_str(&format!("  {}: {}\n", line, render_operator(&run.trace[k + 1])));
        }
        data["trace"] = run.trace.iter().map(structured::operator).collect();
    }
    text.push_str(&format!("script:\n{}", indent(&script)));
    Report { text, data }
}

fn reduce_cmd(p: &WeylOperator, out: Option<&PathBuf>, trace: bool) -> Result<Report, Failure> {
    let (s, run) = reduce(p)?;
    if let Some(path) = out {
        std::fs::write(path, render_script(&s, Some(p)))
            .map_err(|e| Failure::Input(format!("cannot write {}: {}", path.display(), e)))?;
    }
    Ok(reduction_report("reduce", p, &s, &run, trace))
}

fn step_text(step: &FuchsianStep) -> String {
    match step {
        FuchsianStep::Versal(v) => {
            let l: Vec<String> = v.lambdas.iter().map(render_scalar).collect();
            let a: Vec<String> = v.a_params.iter().map(|s| s.to_string()).collect();
            format!("versal lambda=({}) a=({})", l.join(", "), a.join(", "))
        }
        FuchsianStep::Add { point, f } => format!("add {} {}", render_scalar(point), render_scalar(f)),
        FuchsianStep::Euler { f } => format!("euler {}", render_scalar(f)),
    }
}

fn confluence(p: &WeylOperator) -> Result<Report, Failure> {
    let (s, run) = reduce(p)?;
    let d = deconfluence(&s, &run)?;
    let limit = d.limit()?;
    let params: Vec<String> = d.a_params.iter().map(|s| s.to_string()).collect();
    let steps: Vec<String> = d.steps.iter().map(step_text).collect();
    let mut text = format!("seed: {}\nsteps:\n", render_operator(&d.seed));
    text.push_str(&steps.iter().map(|l| format!("  {}\n", l)).collect::<String>());
    text.push_str(&format!("family: {}\n", render_operator(&d.family)));
    text.push_str(&format!("confluence parameters: {}\n", params.join(", ")));
    text.push_str(&format!("limit: {}\n", render_operator(&limit)));
    let data = json!({
        "command": "confluence",
        "operator": structured::operator(p),
        "seed": structured::operator(&d.seed),
        "steps": steps,
        "family": structured::operator(&d.family),
        "a_params": params,
        "limit": structured::operator(&limit),
    });
    Ok(Report { text, data })
}

fn replay_cmd(file: &PathBuf) -> Result<Report, Failure> {
    let src = std::fs::read_to_string(file).map_err(|e| Failure::Input(format!("cannot read {}: {}", file.display(), e)))?;
    let parsed = parse_script(&src)?;
    let p = parsed
        .operator
        .ok_or_else(|| Error::Precondition("the script has no operator header".into()))?;
    let run = replay(&p, &parsed.script)?;
    Ok(reduction_report("replay", &p, &parsed.script, &run, false))
}
