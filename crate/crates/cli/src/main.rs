// Copyright 2026 The superpose Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//! `superpose`: command-line driver for the superposition simulator.

mod parse;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use superpose_core::analysis::{self, format_number, Mode, SweepRow, Tamper};
use superpose_core::enhanced::geometry_report;
use superpose_core::nmr::{compile_sequence, partial_tomography, pseudo_pure, run_sequence_from};
use superpose_core::{
    fidelity, make_qubit, run_direct, run_enhanced, run_hybrid, run_three_qubit, run_two_qubit_reduced, Checkpoint,
    ProtocolResult, PulseSequence, QubitParams, ReferenceSpec, SpinSystem, StateVector, SuperpositionSpec, SweepGrid,
    C64,
};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] superpose_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("{failures} formula checks exceeded the tolerance")]
    Verification { failures: usize },
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Io { .. } | CliError::Csv(_) => "io",
            CliError::Input(_) => "argument",
            CliError::Verification { .. } => "verification_failed",
        }
    }

    fn exit_code(&self) -> u8 {
        match self.kind() {
            "verification_failed" => 1,
            "argument" => 2,
            "zero_overlap" => 3,
            "degenerate_input" => 4,
            "invariant" => 5,
            _ => 6,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "superpose",
    version,
    about = "Superpose pure quantum states with partial prior information"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Two-qubit protocol: encode, phase gate, ancilla Hadamard, post-select.
    RunDirect {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Protocols driven by overlaps with the reference state.
    RunReference {
        #[arg(long, value_enum)]
        mode: ReferenceMode,
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// n qudit states with a qunit ancilla and a Fourier transform.
    Qudit(QuditArgs),
    /// Enhanced protocol harvesting both reference outcomes.
    Enhanced {
        #[command(flatten)]
        pair: PairArgs,
        /// Add the overlaps and azimuths behind the geometry label.
        #[arg(long)]
        geometry_report: bool,
    },
    /// Pulse-level NMR simulation of a benchmark dataset or a given sequence.
    Pulse(PulseArgs),
    /// Two- to three-qubit success ratio over a grid, written as CSV.
    SweepRp(SweepArgs),
    /// Reproduce the eleven benchmark datasets, written as CSV.
    Table1 {
        #[arg(long, value_enum)]
        mode: TableMode,
        #[arg(long)]
        out: PathBuf,
    },
    /// Randomized check of simulated probabilities against closed forms.
    Verify {
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        /// Bias added to the first overlap in the closed forms.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        tamper_c1: f64,
    },
}

#[derive(Args)]
struct PairArgs {
    /// First input as theta,phi[,gamma].
    #[arg(long, value_parser = parse::qubit, allow_hyphen_values = true)]
    psi1: QubitParams,
    /// Second input as theta,phi[,gamma].
    #[arg(long, value_parser = parse::qubit, allow_hyphen_values = true)]
    psi2: QubitParams,
    /// Weight of the first input as re[,im]; weights are normalized.
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    a: C64,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    b: C64,
    /// Reference state as theta,phi.
    #[arg(long, value_parser = parse::qubit, default_value = "0,0", allow_hyphen_values = true)]
    chi: QubitParams,
}

impl PairArgs {
    fn weights(&self) -> CliResult<(C64, C64)> {
        let n = (self.a.norm_sqr() + self.b.norm_sqr()).sqrt();
        if !(n.is_finite() && n > 0.0) {
            return Err(CliError::Input("weights must not both vanish".into()));
        }
        Ok((self.a / n, self.b / n))
    }

    fn spec(&self) -> CliResult<SuperpositionSpec> {
        let (a, b) = self.weights()?;
        Ok(SuperpositionSpec::new(
            a,
            b,
            self.psi1,
            self.psi2,
            self.chi.without_phase(),
        )?)
    }

    fn states(&self) -> (StateVector, StateVector, StateVector) {
        (
            make_qubit(self.psi1),
            make_qubit(self.psi2),
            make_qubit(self.chi.without_phase()),
        )
    }
}

#[derive(Args)]
struct FormatArgs {
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReferenceMode {
    ThreeQubit,
    Reduced,
}

#[derive(Args)]
#[command(group(ArgGroup::new("reference").required(true).args(["chi_index", "chi"])))]
struct QuditArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    /// JSON array of states, each {"dims": [d], "amps": [[re, im], ...]}.
    #[arg(long)]
    states: PathBuf,
    /// Comma-separated weights, each re or re:im; weights are normalized.
    #[arg(long, value_parser = parse::weight, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    weights: Vec<C64>,
    /// Use the computational basis state |K> as the reference.
    #[arg(long)]
    chi_index: Option<usize>,
    /// Reference state as a JSON state file.
    #[arg(long)]
    chi: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckpointArg {
    I,
    Ii,
    Iii,
    Iv,
    V,
}

impl From<CheckpointArg> for Checkpoint {
    fn from(c: CheckpointArg) -> Self {
        match c {
            CheckpointArg::I => Checkpoint::I,
            CheckpointArg::Ii => Checkpoint::Ii,
            CheckpointArg::Iii => Checkpoint::Iii,
            CheckpointArg::Iv => Checkpoint::Iv,
            CheckpointArg::V => Checkpoint::V,
        }
    }
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).multiple(true).args(["dataset", "sequence"])))]
struct PulseArgs {
    /// Benchmark dataset (1..=11) to compile.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=11))]
    dataset: Option<u8>,
    #[arg(long, value_enum, default_value = "iv")]
    checkpoint: CheckpointArg,
    /// Scalar coupling in Hz.
    #[arg(long, default_value_t = 215.0, allow_negative_numbers = true)]
    j: f64,
    /// Pseudo-pure purity of the initial state.
    #[arg(long, default_value_t = 1.0)]
    epsilon: f64,
    /// Run this PulseSequence JSON instead of the compiled one.
    #[arg(long)]
    sequence: Option<PathBuf>,
    /// Write the sequence that is run to this file.
    #[arg(long)]
    emit_sequence: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    rc_min: f64,
    #[arg(long)]
    rc_max: f64,
    #[arg(long)]
    rc_steps: usize,
    /// Comma-separated |b|^2 values.
    #[arg(long, value_delimiter = ',', required = true)]
    bsq: Vec<f64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableMode {
    Gate,
    Pulse,
    Both,
}

fn print_json<T: Serialize>(value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Input(e.to_string()))?;
    let mut out = io::stdout().lock();
    writeln!(out, "{text}").map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn csv_writer(path: &Path) -> CliResult<csv::Writer<fs::File>> {
    let file = fs::File::create(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(csv::Writer::from_writer(file))
}

fn emit_protocol(result: &ProtocolResult, format: &FormatArgs) -> CliResult<()> {
    if !format.csv {
        return print_json(result);
    }
    let mut header = vec!["success_prob".to_string(), "norm_sq".into(), "fidelity".into()];
    let mut record = vec![
        format_number(result.success_prob),
        format_number(result.norm_sq),
        format_number(result.fidelity_to_target),
    ];
    for (k, z) in result.final_state.amps().iter().enumerate() {
        header.extend([format!("amp{k}_re"), format!("amp{k}_im")]);
        record.extend([format_number(z.re), format_number(z.im)]);
    }
    let mut w = csv::Writer::from_writer(io::stdout());
    w.write_record(&header)?;
    w.write_record(&record)?;
    w.flush().map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

fn qudit(args: &QuditArgs) -> CliResult<()> {
    let states: Vec<StateVector> = read_json(&args.states)?;
    if states.len() != args.n {
        return Err(CliError::Input(format!(
            "--n {} but {} states were given",
            args.n,
            states.len()
        )));
    }
    if let Some(s) = states.iter().find(|s| s.dims() != [args.d]) {
        return Err(CliError::Input(format!(
            "--d {} but a state has dims {:?}",
            args.d,
            s.dims()
        )));
    }
    let states = states.iter().map(|s| s.normalize()).collect::<Result<Vec<_>, _>>()?;
    let chi = match (args.chi_index, &args.chi) {
        (Some(k), _) => StateVector::basis(vec![args.d], k)?,
        (None, Some(path)) => read_json::<StateVector>(path)?.normalize()?,
        (None, None) => unreachable!("clap requires one reference"),
    };
    let norm = args.weights.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
    if !(norm.is_finite() && norm > 0.0) {
        return Err(CliError::Input("weights must not all vanish".into()));
    }
    let weights = args.weights.iter().map(|w| w / norm).collect();
    let result = run_hybrid(&ReferenceSpec::new(weights, states, chi)?)?;
    print_json(&result)
}

fn pulse(args: &PulseArgs) -> CliResult<()> {
    let sys = SpinSystem::from_hz(0.0, 0.0, args.j)?;
    let dataset = args.dataset.map(|id| analysis::table1_datasets()[usize::from(id) - 1]);
    let spec = dataset.map(|d| d.spec()).transpose()?;
    let seq = match (&args.sequence, &spec) {
        (Some(path), _) => read_json::<PulseSequence>(path)?,
        (None, Some(spec)) => compile_sequence(spec, &sys),
        (None, None) => unreachable!("clap requires a dataset or a sequence"),
    };
    if let Some(path) = &args.emit_sequence {
        let text = serde_json::to_string_pretty(&seq).map_err(|e| CliError::Input(e.to_string()))?;
        fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
    }
    let checkpoint = Checkpoint::from(args.checkpoint);
    let states = run_sequence_from(&seq, &sys, &pseudo_pure(args.epsilon)?)?;
    let rho = states
        .get(&checkpoint)
        .ok_or_else(|| CliError::Input(format!("sequence has no checkpoint {}", checkpoint.label())))?;
    let readout = partial_tomography(rho).ok();
    let at_output = matches!(checkpoint, Checkpoint::Iv | Checkpoint::V);
    let (fidelity_to_target, gate_success_prob) = match (&spec, &readout, at_output) {
        (Some(spec), Some((qubit, _)), true) => {
            let target = spec.weighted_sum().normalize()?.to_density()?;
            (Some(fidelity(qubit, &target)?), Some(run_direct(spec)?.success_prob))
        }
        _ => (None, None),
    };
    print_json(&json!({
        "dataset": args.dataset,
        "checkpoint": checkpoint,
        "j_hz": args.j,
        "epsilon": args.epsilon,
        "events": seq.events().len(),
        "rho": rho,
        "block_trace": readout.as_ref().map(|r| r.1),
        "qubit_state": readout.as_ref().map(|r| &r.0),
        "fidelity_to_target": fidelity_to_target,
        "gate_success_prob": gate_success_prob,
    }))
}

fn sweep(args: &SweepArgs) -> CliResult<()> {
    let grid = SweepGrid::linear(args.rc_min, args.rc_max, args.rc_steps, args.bsq.clone())?;
    let rows = analysis::sweep_rp(&grid);
    let mut w = csv_writer(&args.out)?;
    w.write_record(SweepRow::HEADER)?;
    for row in &rows {
        w.write_record(row.record())?;
    }
    w.flush().map_err(|source| CliError::Io {
        path: args.out.clone(),
        source,
    })?;
    print_json(&json!({ "rows": rows.len(), "out": args.out }))
}

fn table1(mode: TableMode, out: &Path) -> CliResult<()> {
    let mode = match mode {
        TableMode::Gate => Mode::Gate,
        TableMode::Pulse => Mode::Pulse,
        TableMode::Both => Mode::Both,
    };
    let rows = analysis::reproduce_table1(mode)?;
    let mut w = csv_writer(out)?;
    w.write_record(analysis::Table1Row::HEADER)?;
    for row in &rows {
        w.write_record(row.record())?;
    }
    w.flush().map_err(|source| CliError::Io {
        path: out.to_path_buf(),
        source,
    })?;
    let min = |f: fn(&analysis::Table1Row) -> Option<f64>| rows.iter().filter_map(f).reduce(f64::min);
    print_json(&json!({
        "rows": rows.len(),
        "out": out,
        "min_fidelity_gate": min(|r| r.sim_fidelity_gate),
        "min_fidelity_pulse": min(|r| r.sim_fidelity_pulse),
    }))
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::RunDirect { pair, format } => emit_protocol(&run_direct(&pair.spec()?)?, &format),
        Command::RunReference { mode, pair, format } => {
            let (a, b) = pair.weights()?;
            let (p1, p2, chi) = pair.states();
            let result = match mode {
                ReferenceMode::ThreeQubit => run_three_qubit(a, b, &p1, &p2, &chi)?,
                ReferenceMode::Reduced => run_two_qubit_reduced(a, b, &p1, &p2, &chi)?,
            };
            emit_protocol(&result, &format)
        }
        Command::Qudit(args) => qudit(&args),
        Command::Enhanced {
            pair,
            geometry_report: report,
        } => {
            let (a, b) = pair.weights()?;
            let (p1, p2, chi) = pair.states();
            let result = run_enhanced(a, b, &p1, &p2, &chi)?;
            if report {
                print_json(&json!({ "result": result, "geometry_report": geometry_report(&p1, &p2, &chi)? }))
            } else {
                print_json(&result)
            }
        }
        Command::Pulse(args) => pulse(&args),
        Command::SweepRp(args) => sweep(&args),
        Command::Table1 { mode, out } => table1(mode, &out),
        Command::Verify {
            trials,
            seed,
            tamper_c1,
        } => {
            let report = analysis::verify_with_tamper(trials, seed, Tamper { c1_bias: tamper_c1 })?;
            print_json(&report)?;
            if report.passed {
                Ok(())
            } else {
                Err(CliError::Verification {
                    failures: report.failure_count,
                })
            }
        }
    }
}

fn report_error(kind: &str, message: &str) {
    let body: Value = json!({ "error": kind, "message": message });
    eprintln!("{body}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            report_error("argument", e.to_string().trim());
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            report_error(e.kind(), &e.to_string());
            ExitCode::from(e.exit_code())
        }
    }
}
