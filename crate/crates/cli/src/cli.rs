//! `twostep` subcommands.
//!
//! Exit codes: 0 on success, 1 when a check fails or a command errors,
//! 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use twostep_core::{
    classical_backward, compare_gradients, finite_difference_gradients, train, two_step_backward,
    ActivationKind, BiasMode, ColumnVector, GradCheckReport, LossKind, Network, NetworkSpec,
    TrainConfig,
};

use crate::{dataset, model_file, report, trace_dump, Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "twostep",
    version,
    about = "Train and inspect feedforward networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Train a network with per-sample gradient descent and save it.
    Train(TrainArgs),
    /// Compare two-step gradients with central finite differences over a dataset.
    Gradcheck(GradcheckArgs),
    /// Compare the two-step rule with classical backpropagation on one sample.
    CompareRules(CompareArgs),
    /// Print the network output for one input.
    Forward(ForwardArgs),
    /// Print every X^h, Y^h, δ_up^h, δ_down^h and δ_W^h for one sample.
    DumpTrace(SampleArgs),
}

#[derive(Debug, Args)]
struct TrainArgs {
    /// Layer sizes N_0,…,N_L, e.g. "2,2,1".
    #[arg(long, value_parser = parse_arch)]
    arch: std::vec::Vec<usize>,
    #[arg(long, default_value = "augmented")]
    bias: BiasMode,
    #[arg(long, default_value = "tanh")]
    hidden_act: ActivationKind,
    #[arg(long, default_value = "identity")]
    output_act: ActivationKind,
    #[arg(long, default_value = "squared-error")]
    loss: LossKind,
    #[arg(long, default_value_t = 0.1)]
    lr: f64,
    #[arg(long, default_value_t = 1000)]
    epochs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    init_scale: f64,
    /// Visit samples in file order instead of reshuffling every epoch.
    #[arg(long)]
    no_shuffle: bool,
    #[arg(long)]
    data: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct GradcheckArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    data: PathBuf,
    #[arg(long, default_value = "squared-error")]
    loss: LossKind,
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,
    #[arg(long, default_value_t = 1e-5)]
    tol: f64,
    /// Print the report as JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long)]
    model: PathBuf,
    /// Comma-separated input values.
    #[arg(long, value_parser = parse_values, required_unless_present = "data", conflicts_with = "data")]
    input: Option<std::vec::Vec<f64>>,
    /// Comma-separated target values; zeros when omitted.
    #[arg(long, value_parser = parse_values, requires = "input")]
    target: Option<std::vec::Vec<f64>>,
    /// Take the sample from a CSV dataset instead.
    #[arg(long)]
    data: Option<PathBuf>,
    /// Row of --data to use, counting from 0.
    #[arg(long, default_value_t = 0, requires = "data")]
    row: usize,
    #[arg(long, default_value = "squared-error")]
    loss: LossKind,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[command(flatten)]
    sample: SampleArgs,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct ForwardArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long, value_parser = parse_values)]
    input: std::vec::Vec<f64>,
}

fn parse_values(s: &str) -> std::result::Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| format!("`{}`: {e}", t.trim()))
        })
        .collect()
}

fn parse_arch(s: &str) -> std::result::Result<Vec<usize>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| format!("`{}`: {e}", t.trim()))
        })
        .collect()
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Reports go to `out`, diagnostics to `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                2
            } else {
                let _ = write!(out, "{}", e.render());
                0
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Train(args) => cmd_train(args, out),
        Command::Gradcheck(args) => cmd_gradcheck(args, out),
        Command::CompareRules(args) => cmd_compare(args, out),
        Command::Forward(args) => cmd_forward(args, out),
        Command::DumpTrace(args) => cmd_dump(args, out),
    };
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Error::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| Error::io("<stdout>", e))
}

fn cmd_train(args: TrainArgs, out: &mut dyn Write) -> Result<bool> {
    let spec = NetworkSpec::new(args.arch, args.hidden_act, args.output_act, args.bias)
        .map_err(|e| Error::Usage(e.to_string()))?;
    let data = dataset::load_csv(&args.data, spec.input_dim(), spec.output_dim())?;
    let config = TrainConfig {
        spec,
        loss: args.loss,
        learning_rate: args.lr,
        epochs: args.epochs,
        seed: args.seed,
        init_scale: args.init_scale,
        shuffle: !args.no_shuffle,
    };
    config.validate().map_err(|e| Error::Usage(e.to_string()))?;
    let (net, history) = train(&config, &data)?;
    model_file::save(&args.out, &net)?;
    let first = history[0];
    let last = history[history.len() - 1];
    emit(
        out,
        &format!(
            "trained {} epochs on {} samples: mean loss {first:.6e} -> {last:.6e}\nwrote {}\n",
            history.len(),
            data.len(),
            args.out.display()
        ),
    )?;
    Ok(true)
}

fn cmd_gradcheck(args: GradcheckArgs, out: &mut dyn Write) -> Result<bool> {
    let net = model_file::load(&args.model)?;
    let spec = net.spec();
    let data = dataset::load_csv(&args.data, spec.input_dim(), spec.output_dim())?;
    let mut merged: Option<GradCheckReport> = None;
    for (x, y) in data.iter() {
        let trace = net.forward(x)?;
        let seed = args.loss.grad(trace.output(), y)?;
        let (_, analytic) = two_step_backward(&net, &trace, &seed)?;
        let numeric = finite_difference_gradients(&net, args.loss, x, y, args.eps)?;
        let report = compare_gradients(&analytic, &numeric, args.tol)?;
        match merged.as_mut() {
            Some(m) => m.merge(&report),
            None => merged = Some(report),
        }
    }
    let report = merged.expect("dataset is non-empty");
    print_report(out, &report, args.json)?;
    Ok(report.pass)
}

fn cmd_compare(args: CompareArgs, out: &mut dyn Write) -> Result<bool> {
    let (net, x, y) = load_sample(&args.sample)?;
    let trace = net.forward(&x)?;
    let seed = args.sample.loss.grad(trace.output(), &y)?;
    let (_, two_step) = two_step_backward(&net, &trace, &seed)?;
    let classical = classical_backward(&net, &trace, &seed)?;
    let report = compare_gradients(&two_step, &classical, args.tol)?;
    print_report(out, &report, args.json)?;
    Ok(report.pass)
}

fn cmd_forward(args: ForwardArgs, out: &mut dyn Write) -> Result<bool> {
    let net = model_file::load(&args.model)?;
    let x = ColumnVector::new(args.input)?;
    let y = net.predict(&x)?;
    let values: Vec<String> = y.iter().map(readable).collect();
    emit(out, &format!("{}\n", values.join(",")))?;
    Ok(true)
}

fn cmd_dump(args: SampleArgs, out: &mut dyn Write) -> Result<bool> {
    let (net, x, y) = load_sample(&args)?;
    let trace = net.forward(&x)?;
    let seed = args.loss.grad(trace.output(), &y)?;
    let (deltas, grads) = two_step_backward(&net, &trace, &seed)?;
    emit(out, &trace_dump::render(&trace, &deltas, &grads))?;
    Ok(true)
}

fn load_sample(args: &SampleArgs) -> Result<(Network, ColumnVector, ColumnVector)> {
    let net = model_file::load(&args.model)?;
    let spec = net.spec();
    if let Some(path) = &args.data {
        let data = dataset::load_csv(path, spec.input_dim(), spec.output_dim())?;
        if args.row >= data.len() {
            return Err(Error::Usage(format!(
                "--row {} is out of range for {} samples",
                args.row,
                data.len()
            )));
        }
        let (x, y) = data.sample(args.row);
        return Ok((net.clone(), x.clone(), y.clone()));
    }
    let input = args
        .input
        .clone()
        .expect("clap requires --input without --data");
    let x = ColumnVector::new(input)?;
    let y = match &args.target {
        Some(t) => ColumnVector::from_slice(t)?,
        None => ColumnVector::zeros(spec.output_dim()),
    };
    Ok((net, x, y))
}

fn print_report(out: &mut dyn Write, report: &GradCheckReport, json: bool) -> Result<()> {
    if json {
        emit(out, &format!("{}\n", report::to_json(report)))
    } else {
        emit(out, &report::render_table(report))
    }
}

/// Rounds to 15 significant digits, which hides the last-bit noise of
/// decimal inputs such as `2 * 1.1 - 1`.
fn readable(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    format!("{v:.14e}")
        .parse::<f64>()
        .map_or_else(|_| v.to_string(), |r| r.to_string())
}
