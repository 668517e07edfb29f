//! Command-line front end. Every subcommand prints its headline result to
//! stdout and, with `--out DIR`, writes data files plus `artifact.json`.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use deuteron_vqe::ansatz::{amplitudes, build_ansatz_circuit, HypersphericalParams, LogicalCircuit};
use deuteron_vqe::compiler::{
    logical_unitary, native_unitary, optimize_native, phase_distance, propagate_known_input, transpile,
};
use deuteron_vqe::driver::{
    convergence_report, fit_quadratic_minimum, landscape_scan, vqe_run, zne_run, Problem, RunConfig, ScanSpec,
    ZneEvaluation,
};
use deuteron_vqe::estimator::{richardson_extrapolate, FitKind, ZnePoint, ZneSeries};
use deuteron_vqe::hamiltonian::{build_oscillator_hamiltonian, EftConfig};
use deuteron_vqe::io::{
    convergence_csv, convergence_points, landscape_csv, read_json, write_json, JsonlWriter, LandscapeRecord,
    RunArtifact, Settings,
};
use deuteron_vqe::pauli::{jordan_wigner, Pauli};
use deuteron_vqe::reference::TABLE_ONE;
use deuteron_vqe::{Error, Result};

#[derive(Parser)]
#[command(name = "deuteron-vqe", version, about = "Deuteron EFT variational eigensolver workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum Command {
    /// Oscillator-basis Hamiltonian and its qubit form.
    Ham,
    /// Ansatz amplitudes, exact energy and logical circuit.
    Ansatz,
    /// Compile a logical circuit to native trapped-ion gates.
    Transpile,
    /// Noisy measurement of the ansatz at each fold level, no extrapolation.
    Simulate,
    /// Zero-noise extrapolation of a simulated run or of a given series.
    Zne,
    /// Variational optimization of the extrapolated energy.
    Vqe,
    /// Energy landscape along one angle.
    Scan,
    /// Energy against basis size, with reference values.
    Report,
}

#[derive(Args)]
struct Common {
    /// Flat JSON file with defaults for any of these flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Number of oscillator states (qubits).
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Shots per measurement setting; 0 gives exact noiseless expectations.
    #[arg(long, global = true)]
    shots: Option<usize>,
    #[arg(long, global = true)]
    p1: Option<f64>,
    #[arg(long, global = true)]
    p2: Option<f64>,
    #[arg(long, global = true)]
    readout_eps: Option<f64>,
    /// Fold levels M (noise scale r = 2M + 1).
    #[arg(long, global = true, value_delimiter = ',')]
    fold: Option<Vec<usize>>,
    /// linear or quadratic.
    #[arg(long, global = true)]
    fit: Option<FitKind>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include raw histograms in printed and written output.
    #[arg(long, global = true)]
    emit_counts: bool,
    /// Specialize to the |0...0> input and peephole-optimize.
    #[arg(long, global = true)]
    optimize: bool,
    /// Logical circuit JSON for `transpile`.
    #[arg(long, global = true)]
    circuit: Option<PathBuf>,
    /// Angle to vary in `scan`, e.g. lambda1.
    #[arg(long, global = true)]
    vary: Option<String>,
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    values: Option<Vec<f64>>,
    /// Series `r:value:sigma,...` for `zne`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    series: Option<String>,
    #[arg(long, global = true)]
    hbar_omega: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    v0: Option<f64>,
    /// Ansatz angles; defaults to the exact optimum.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    params: Option<Vec<f64>>,
    /// Equal-weight fits instead of 1/sigma^2.
    #[arg(long, global = true)]
    unweighted: bool,
    /// Skip readout-error inversion.
    #[arg(long, global = true)]
    no_spam: bool,
    /// Extrapolate each Pauli term separately.
    #[arg(long, global = true)]
    per_term: bool,
    /// Objective evaluations allowed to `vqe`.
    #[arg(long, global = true)]
    max_evals: Option<usize>,
}

fn set(flag: bool) -> Option<bool> {
    flag.then_some(true)
}

impl Common {
    fn settings(self) -> Result<Settings> {
        let file = match &self.config {
            Some(p) => Settings::load(p)?,
            None => Settings::default(),
        };
        let cli = Settings {
            n: self.n,
            seed: self.seed,
            shots: self.shots,
            p1: self.p1,
            p2: self.p2,
            readout_eps: self.readout_eps,
            fold: self.fold,
            fit: self.fit,
            out: self.out,
            emit_counts: set(self.emit_counts),
            optimize: set(self.optimize),
            circuit: self.circuit,
            vary: self.vary,
            values: self.values,
            series: self.series,
            hbar_omega: self.hbar_omega,
            v0: self.v0,
            params: self.params,
            unweighted: set(self.unweighted),
            no_spam: set(self.no_spam),
            per_term: set(self.per_term),
            max_evals: self.max_evals,
        };
        Ok(file.overlay(cli))
    }
}

/// Output directory plus the list of files written, for the artifact.
struct Outputs {
    dir: Option<PathBuf>,
    written: Vec<PathBuf>,
}

impl Outputs {
    fn new(dir: Option<PathBuf>) -> Result<Self> {
        if let Some(d) = &dir {
            std::fs::create_dir_all(d)?;
        }
        Ok(Self { dir, written: Vec::new() })
    }

    fn path(&mut self, name: &str) -> Option<PathBuf> {
        let p = self.dir.as_ref()?.join(name);
        self.written.push(p.clone());
        Some(p)
    }

    fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        match self.path(name) {
            Some(p) => write_json(&p, value),
            None => Ok(()),
        }
    }

    fn text(&mut self, name: &str, text: &str) -> Result<()> {
        match self.path(name) {
            Some(p) => Ok(std::fs::write(p, text)?),
            None => Ok(()),
        }
    }

    fn finish<C: Serialize>(self, command: &str, config: &C, seeds: Vec<u64>) -> Result<()> {
        if let Some(d) = &self.dir {
            let artifact = RunArtifact::new(command, config, seeds, self.written.clone())?;
            write_json(&d.join("artifact.json"), &artifact)?;
        }
        Ok(())
    }
}

fn eft(s: &Settings, default_n: usize) -> EftConfig {
    let cfg = s.run_config(default_n);
    EftConfig {
        hbar_omega: cfg.hbar_omega,
        v0: cfg.v0,
        n_states: cfg.n_states,
    }
}

fn cmd_ham(s: &Settings) -> Result<()> {
    let cfg = eft(s, 2);
    let osc = build_oscillator_hamiltonian(&cfg)?;
    let pauli = jordan_wigner(&osc)?;
    let mut out = Outputs::new(s.out.clone())?;
    out.json("oscillator.json", &osc)?;
    out.json("pauli.json", &pauli)?;
    if out.dir.is_none() {
        println!("{}", serde_json::to_string_pretty(&serde_json::json!({ "oscillator": osc, "pauli": pauli }))?);
    } else {
        for t in pauli.terms() {
            println!("{:>12.6}  {}", t.coeff, t.word);
        }
    }
    out.finish("ham", &cfg, vec![])
}

fn params_or_optimum(s: &Settings, problem: &Problem) -> Result<HypersphericalParams> {
    match &s.params {
        Some(p) => HypersphericalParams::new(p.clone()),
        None => problem.initial_params(),
    }
}

fn cmd_ansatz(s: &Settings) -> Result<()> {
    let cfg = RunConfig { shots: 0, ..s.run_config(2) };
    let problem = Problem::new(cfg.clone())?;
    let params = params_or_optimum(s, &problem)?;
    params.check_states(cfg.n_states)?;
    let amps = amplitudes(&params, cfg.convention);
    let energy = problem.theory(&params)?;
    let circuit = build_ansatz_circuit(cfg.n_states, &params, cfg.convention)?;
    println!("params: {:?}", params.lambdas());
    println!("amplitudes: {amps:?}");
    println!("energy: {energy:.6} MeV");
    let mut out = Outputs::new(s.out.clone())?;
    out.json(&format!("c{}.json", cfg.n_states), &circuit)?;
    if out.dir.is_none() {
        println!("{}", serde_json::to_string(&circuit)?);
    }
    out.finish("ansatz", &cfg, vec![])
}

fn cmd_transpile(s: &Settings) -> Result<()> {
    let logical: LogicalCircuit = match &s.circuit {
        Some(p) => read_json(p)?,
        None => {
            let cfg = RunConfig { shots: 0, ..s.run_config(4) };
            let problem = Problem::new(cfg.clone())?;
            build_ansatz_circuit(cfg.n_states, &params_or_optimum(s, &problem)?, cfg.convention)?
        }
    };
    let optimize = Settings::flag(s.optimize);
    let (reference, native) = if optimize {
        let specialized = propagate_known_input(&logical)?;
        let native = optimize_native(&transpile(&specialized)?);
        (specialized, native)
    } else {
        (logical.clone(), transpile(&logical)?)
    };
    let distance = phase_distance(&logical_unitary(&reference)?, &native_unitary(&native)?);
    println!("{}", native.counts());
    println!("nearest_neighbor: {}", native.is_nearest_neighbor());
    println!("phase_distance: {distance:.3e}");
    let mut out = Outputs::new(s.out.clone())?;
    out.json("native.json", &native)?;
    if out.dir.is_none() {
        println!("{}", serde_json::to_string(&native)?);
    }
    out.finish("transpile", &serde_json::json!({ "circuit": logical, "optimize": optimize }), vec![])
}

fn write_trace(out: &mut Outputs, name: &str, ev: &ZneEvaluation, emit_counts: bool) -> Result<()> {
    let Some(p) = out.path(name) else { return Ok(()) };
    let mut w = JsonlWriter::create(&p)?;
    for rec in &ev.records {
        let level = ev.levels.iter().find(|l| l.m == rec.m).expect("level for record");
        let terms: Vec<_> = level
            .estimate
            .terms
            .iter()
            .filter(|t| t.word.letters().iter().all(|&l| l == Pauli::I || l == rec.basis.pauli()))
            .collect();
        w.write(&serde_json::json!({
            "kind": "setting",
            "params": ev.params,
            "m": rec.m,
            "r": level.r,
            "basis": rec.basis,
            "seed": rec.seed,
            "counts": if emit_counts { serde_json::to_value(&rec.counts)? } else { serde_json::Value::Null },
            "terms": terms,
        }))?;
    }
    w.write(&serde_json::json!({
        "kind": "summary",
        "params": ev.params,
        "seed": ev.seed,
        "series": ev.series,
        "fit": ev.fit,
        "energy": ev.energy,
        "sigma": ev.sigma,
    }))?;
    w.finish()
}

fn print_levels(ev: &ZneEvaluation, emit_counts: bool) -> Result<()> {
    for l in &ev.levels {
        println!("r = {}: {:.6} +- {:.6} MeV", l.r, l.estimate.value, l.estimate.sigma);
    }
    if emit_counts {
        for rec in &ev.records {
            if let Some(h) = &rec.counts {
                println!("m = {} basis {}: {}", rec.m, rec.basis, serde_json::to_string(h)?);
            }
        }
    }
    Ok(())
}

fn cmd_simulate(s: &Settings) -> Result<()> {
    let cfg = RunConfig { fit: FitKind::Linear, ..s.run_config(3) };
    let problem = Problem::new(cfg.clone())?;
    let params = params_or_optimum(s, &problem)?;
    let ev = problem.evaluate(&params, cfg.seed)?;
    let emit = Settings::flag(s.emit_counts);
    print_levels(&ev, emit)?;
    let mut out = Outputs::new(s.out.clone())?;
    write_trace(&mut out, "simulate.jsonl", &ev, emit)?;
    out.finish("simulate", &cfg, vec![cfg.seed])
}

fn parse_series(text: &str) -> Result<ZneSeries> {
    let bad = |item: &str| Error::Parse {
        context: "--series".into(),
        message: format!("expected r:value:sigma, got {item:?}"),
    };
    let points = text
        .split(',')
        .map(|item| {
            let f: Vec<&str> = item.split(':').collect();
            if f.len() != 3 {
                return Err(bad(item));
            }
            Ok(ZnePoint {
                r: f[0].trim().parse().map_err(|_| bad(item))?,
                value: f[1].trim().parse().map_err(|_| bad(item))?,
                sigma: f[2].trim().parse().map_err(|_| bad(item))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ZneSeries::new(points)
}

fn cmd_zne(s: &Settings) -> Result<()> {
    let cfg = s.run_config(3);
    let mut out = Outputs::new(s.out.clone())?;
    if let Some(text) = &s.series {
        let series = parse_series(text)?;
        let fit = richardson_extrapolate(&series, cfg.fit, cfg.weighted)?;
        println!("intercept: {} +- {}", fit.intercept, fit.intercept_sigma);
        println!("slope: {}", fit.slope);
        out.json("zne.json", &fit)?;
        return out.finish("zne", &serde_json::json!({ "series": series, "fit": cfg.fit, "weighted": cfg.weighted }), vec![]);
    }
    let ev = zne_run(&cfg)?;
    let emit = Settings::flag(s.emit_counts);
    print_levels(&ev, emit)?;
    println!("extrapolated: {:.6} +- {:.6} MeV", ev.energy, ev.sigma);
    write_trace(&mut out, "zne.jsonl", &ev, emit)?;
    out.json("zne.json", &serde_json::json!({ "series": ev.series, "fit": ev.fit, "term_fits": ev.term_fits, "energy": ev.energy, "sigma": ev.sigma }))?;
    out.finish("zne", &cfg, vec![cfg.seed])
}

fn cmd_vqe(s: &Settings) -> Result<()> {
    let cfg = s.run_config(3);
    let outcome = vqe_run(&cfg)?;
    println!("params: {:?}", outcome.params);
    println!("evaluations: {} (converged: {})", outcome.evaluations, outcome.converged);
    println!("theory at params: {:.6} MeV", outcome.theory);
    println!("energy: {:.6} +- {:.6} MeV", outcome.result.energy, outcome.result.sigma);
    let mut out = Outputs::new(s.out.clone())?;
    if let Some(p) = out.path("vqe_trace.jsonl") {
        let mut w = JsonlWriter::create(&p)?;
        for t in &outcome.trace {
            w.write(t)?;
        }
        w.finish()?;
    }
    out.text(
        "vqe.csv",
        &format!(
            "{},energy,sigma,theory\n{},{},{},{}\n",
            (0..outcome.params.len()).map(|i| format!("lambda{i}")).collect::<Vec<_>>().join(","),
            outcome.params.iter().map(f64::to_string).collect::<Vec<_>>().join(","),
            outcome.result.energy,
            outcome.result.sigma,
            outcome.theory
        ),
    )?;
    write_trace(&mut out, "vqe_final.jsonl", &outcome.result, Settings::flag(s.emit_counts))?;
    out.finish("vqe", &cfg, vec![cfg.seed])
}

fn cmd_scan(s: &Settings) -> Result<()> {
    let cfg = s.run_config(4);
    let problem = Problem::new(cfg.clone())?;
    let vary = s.vary.as_deref().ok_or_else(|| Error::InvalidArgument("scan needs --vary lambdaK".into()))?;
    let index: usize = vary
        .strip_prefix("lambda")
        .and_then(|k| k.parse().ok())
        .ok_or_else(|| Error::InvalidArgument(format!("--vary expects lambdaK, got {vary:?}")))?;
    let values = s.values.clone().ok_or_else(|| Error::InvalidArgument("scan needs --values".into()))?;
    let base = match &s.params {
        Some(p) => p.clone(),
        None if cfg.n_states == 4 => TABLE_ONE[0].lambdas.to_vec(),
        None => problem.initial_params()?.lambdas().to_vec(),
    };
    let spec = ScanSpec::new(index, values, base)?;
    let rows = landscape_scan(&cfg, &spec)?;
    let records: Vec<LandscapeRecord> = rows.iter().map(LandscapeRecord::from).collect();
    let csv = landscape_csv(&records)?;
    print!("{csv}");
    if rows.len() >= 3 {
        let pts: Vec<(f64, f64, f64)> = rows.iter().map(|r| (r.params[index], r.energy, r.sigma)).collect();
        match fit_quadratic_minimum(&pts, cfg.weighted) {
            Ok(q) => println!("quadratic minimum: {:.6} +- {:.6} MeV at {vary} = {:.4}", q.energy, q.sigma, q.location),
            Err(Error::ConcaveFit(a)) => println!("quadratic fit is concave (a = {a}), no minimum"),
            Err(e) => return Err(e),
        }
    }
    let mut out = Outputs::new(s.out.clone())?;
    out.text("scan.csv", &csv)?;
    out.json("scan.json", &rows)?;
    out.finish("scan", &serde_json::json!({ "run": cfg, "scan": spec }), vec![cfg.seed])
}

fn cmd_report(s: &Settings) -> Result<()> {
    let base = s.run_config(4);
    let max_n = base.n_states.max(2);
    let mut results = BTreeMap::new();
    for n in 2..=max_n {
        let cfg = RunConfig { n_states: n, params: None, ..base.clone() };
        let ev = zne_run(&cfg)?;
        results.insert(n, (ev.energy, ev.sigma));
    }
    let report = convergence_report(&results, &eft(s, 4))?;
    for r in &report.rows {
        match (r.energy, r.sigma) {
            (Some(e), Some(sig)) => println!("N = {}: {e:.6} +- {sig:.6} MeV (UCCS {:.6})", r.n_states, r.uccs),
            _ => println!("N = {}: missing (UCCS {:.6})", r.n_states, r.uccs),
        }
    }
    println!("exact: {} MeV", report.exact_energy);
    let mut out = Outputs::new(s.out.clone())?;
    out.text("convergence.csv", &convergence_csv(&convergence_points(&report))?)?;
    out.json("report.json", &report)?;
    out.finish("report", &base, vec![base.seed])
}

fn run(cli: Cli) -> Result<()> {
    let s = cli.common.settings()?;
    match cli.command {
        Command::Ham => cmd_ham(&s),
        Command::Ansatz => cmd_ansatz(&s),
        Command::Transpile => cmd_transpile(&s),
        Command::Simulate => cmd_simulate(&s),
        Command::Zne => cmd_zne(&s),
        Command::Vqe => cmd_vqe(&s),
        Command::Scan => cmd_scan(&s),
        Command::Report => cmd_report(&s),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
