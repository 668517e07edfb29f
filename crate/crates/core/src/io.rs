//! Persistence: JSON and JSON-lines files, the landscape and convergence
//! CSV tables, run artifacts and the flat JSON configuration file.

use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::ansatz::AngleConvention;
use crate::driver::{ConvergenceReport, ExtrapolationMode, RunConfig, ScanRow};
use crate::estimator::FitKind;
use crate::{Error, Result};

fn parse_error(context: impl Into<String>, message: impl ToString) -> Error {
    Error::Parse {
        context: context.into(),
        message: message.to_string(),
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| parse_error(path.display().to_string(), e))
}

/// One JSON document per line.
pub struct JsonlWriter {
    inner: BufWriter<File>,
}

impl JsonlWriter {
    pub fn create(path: &Path) -> Result<Self> {
        Ok(Self {
            inner: BufWriter::new(File::create(path)?),
        })
    }

    pub fn write<T: Serialize>(&mut self, record: &T) -> Result<()> {
        serde_json::to_writer(&mut self.inner, record)?;
        self.inner.write_all(b"\n")?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        self.inner.flush()?;
        Ok(())
    }
}

pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let reader = BufReader::new(File::open(path)?);
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| parse_error(format!("{}:{}", path.display(), i + 1), e))?);
    }
    Ok(out)
}

/// Row of the landscape table: angles, measured (or simulated) energy with
/// its uncertainty, and the exact value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LandscapeRecord {
    pub lambdas: Vec<f64>,
    pub experiment: f64,
    pub experiment_sigma: f64,
    pub theory: f64,
}

impl From<&ScanRow> for LandscapeRecord {
    fn from(r: &ScanRow) -> Self {
        Self {
            lambdas: r.params.clone(),
            experiment: r.energy,
            experiment_sigma: r.sigma,
            theory: r.theory,
        }
    }
}

fn parse_f64(field: &str, context: &str) -> Result<f64> {
    field
        .trim()
        .parse()
        .map_err(|e| parse_error(context, format!("{field:?}: {e}")))
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .skip(1)
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l))
}

pub fn landscape_csv(rows: &[LandscapeRecord]) -> Result<String> {
    let k = rows.first().map_or(0, |r| r.lambdas.len());
    if rows.iter().any(|r| r.lambdas.len() != k) {
        return Err(Error::invalid("landscape rows have different angle counts"));
    }
    let mut out: Vec<String> = (0..k).map(|i| format!("lambda{i}")).collect();
    out.extend(["experiment", "experiment_sigma", "theory"].map(String::from));
    let mut text = out.join(",") + "\n";
    for r in rows {
        let mut fields: Vec<String> = r.lambdas.iter().map(f64::to_string).collect();
        fields.extend([r.experiment, r.experiment_sigma, r.theory].map(|v| v.to_string()));
        text += &(fields.join(",") + "\n");
    }
    Ok(text)
}

pub fn parse_landscape_csv(text: &str) -> Result<Vec<LandscapeRecord>> {
    let header: Vec<&str> = text.lines().next().unwrap_or_default().split(',').collect();
    let k = header.iter().take_while(|h| h.starts_with("lambda")).count();
    if header.len() != k + 3 || header[k..] != ["experiment", "experiment_sigma", "theory"] {
        return Err(parse_error("landscape csv:1", format!("unexpected header {header:?}")));
    }
    data_lines(text)
        .map(|(line, l)| {
            let ctx = format!("landscape csv:{line}");
            let v = l.split(',').map(|f| parse_f64(f, &ctx)).collect::<Result<Vec<_>>>()?;
            if v.len() != k + 3 {
                return Err(parse_error(ctx, format!("expected {} fields, got {}", k + 3, v.len())));
            }
            Ok(LandscapeRecord {
                lambdas: v[..k].to_vec(),
                experiment: v[k],
                experiment_sigma: v[k + 1],
                theory: v[k + 2],
            })
        })
        .collect()
}

/// Row of the energy-versus-N plot data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotPoint {
    pub platform: String,
    pub n: usize,
    pub energy: f64,
    pub sigma: f64,
}

/// Flattens a report: `simulation` rows for supplied results, `UCCS` rows for
/// the exact ansatz minima, one `exact` row per N at the infinite-basis
/// energy, then the literature points.
pub fn convergence_points(report: &ConvergenceReport) -> Vec<PlotPoint> {
    let mut out = Vec::new();
    for r in &report.rows {
        if let (Some(energy), Some(sigma)) = (r.energy, r.sigma) {
            out.push(PlotPoint {
                platform: "simulation".into(),
                n: r.n_states,
                energy,
                sigma,
            });
        }
    }
    for r in &report.rows {
        out.push(PlotPoint {
            platform: "UCCS".into(),
            n: r.n_states,
            energy: r.uccs,
            sigma: 0.0,
        });
    }
    for r in &report.rows {
        out.push(PlotPoint {
            platform: "exact".into(),
            n: r.n_states,
            energy: report.exact_energy,
            sigma: 0.0,
        });
    }
    out.extend(report.literature.iter().map(|l| PlotPoint {
        platform: l.platform.clone(),
        n: l.n_states,
        energy: l.energy,
        sigma: l.sigma,
    }));
    out
}

pub fn convergence_csv(points: &[PlotPoint]) -> Result<String> {
    let mut text = String::from("platform,n,energy,sigma\n");
    for p in points {
        if p.platform.contains([',', '\n']) {
            return Err(Error::invalid(format!("platform name {:?} cannot be stored in csv", p.platform)));
        }
        text += &format!("{},{},{},{}\n", p.platform, p.n, p.energy, p.sigma);
    }
    Ok(text)
}

pub fn parse_convergence_csv(text: &str) -> Result<Vec<PlotPoint>> {
    if text.lines().next() != Some("platform,n,energy,sigma") {
        return Err(parse_error("convergence csv:1", "unexpected header"));
    }
    data_lines(text)
        .map(|(line, l)| {
            let ctx = format!("convergence csv:{line}");
            let f: Vec<&str> = l.split(',').collect();
            if f.len() != 4 {
                return Err(parse_error(ctx, format!("expected 4 fields, got {}", f.len())));
            }
            Ok(PlotPoint {
                platform: f[0].to_string(),
                n: f[1].trim().parse().map_err(|e| parse_error(ctx.clone(), format!("{:?}: {e}", f[1])))?,
                energy: parse_f64(f[2], &ctx)?,
                sigma: parse_f64(f[3], &ctx)?,
            })
        })
        .collect()
}

/// Provenance of one command invocation. Replaying `config` with `seeds`
/// reproduces the listed outputs bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunArtifact {
    pub command: String,
    pub version: String,
    pub config: serde_json::Value,
    /// SHA-256 of the compact JSON encoding of `config`.
    pub content_hash: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub seeds: Vec<u64>,
    pub outputs: Vec<PathBuf>,
}

pub fn content_hash(config: &serde_json::Value) -> String {
    let digest = Sha256::digest(config.to_string().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

impl RunArtifact {
    pub fn new<C: Serialize>(command: &str, config: &C, seeds: Vec<u64>, outputs: Vec<PathBuf>) -> Result<Self> {
        let config = serde_json::to_value(config)?;
        Ok(Self {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            content_hash: content_hash(&config),
            config,
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            seeds,
            outputs,
        })
    }

    /// True when `config` still hashes to `content_hash`.
    pub fn verify(&self) -> bool {
        content_hash(&self.config) == self.content_hash
    }
}

/// Flat configuration mirroring the command-line flags. Every field is
/// optional; [`Settings::overlay`] lets flags override a file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct Settings {
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub shots: Option<usize>,
    pub p1: Option<f64>,
    pub p2: Option<f64>,
    pub readout_eps: Option<f64>,
    pub fold: Option<Vec<usize>>,
    pub fit: Option<FitKind>,
    pub out: Option<PathBuf>,
    pub emit_counts: Option<bool>,
    pub optimize: Option<bool>,
    pub circuit: Option<PathBuf>,
    pub vary: Option<String>,
    pub values: Option<Vec<f64>>,
    pub series: Option<String>,
    pub hbar_omega: Option<f64>,
    pub v0: Option<f64>,
    pub params: Option<Vec<f64>>,
    pub unweighted: Option<bool>,
    pub no_spam: Option<bool>,
    pub per_term: Option<bool>,
    pub max_evals: Option<usize>,
}

macro_rules! overlay_fields {
    ($base:ident, $top:ident, $($f:ident),*) => {
        Settings { $($f: $top.$f.or($base.$f)),* }
    };
}

impl Settings {
    pub fn from_json(text: &str, context: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| parse_error(context, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?, &path.display().to_string())
    }

    /// Fields set in `top` win.
    pub fn overlay(self, top: Settings) -> Settings {
        overlay_fields!(
            self, top, n, seed, shots, p1, p2, readout_eps, fold, fit, out, emit_counts, optimize, circuit, vary,
            values, series, hbar_omega, v0, params, unweighted, no_spam, per_term, max_evals
        )
    }

    pub fn flag(v: Option<bool>) -> bool {
        v.unwrap_or(false)
    }

    /// Run configuration with library defaults for unset fields.
    pub fn run_config(&self, default_n: usize) -> RunConfig {
        let d = RunConfig::new(self.n.unwrap_or(default_n));
        RunConfig {
            hbar_omega: self.hbar_omega.unwrap_or(d.hbar_omega),
            v0: self.v0.unwrap_or(d.v0),
            params: self.params.clone().or(d.params),
            shots: self.shots.unwrap_or(d.shots),
            folds: self.fold.clone().unwrap_or(d.folds.clone()),
            p1: self.p1.unwrap_or(d.p1),
            p2: self.p2.unwrap_or(d.p2),
            readout_eps: self.readout_eps.unwrap_or(d.readout_eps),
            spam_correction: !Self::flag(self.no_spam),
            seed: self.seed.unwrap_or(d.seed),
            fit: self.fit.unwrap_or(d.fit),
            weighted: !Self::flag(self.unweighted),
            extrapolation: if Self::flag(self.per_term) {
                ExtrapolationMode::PerTerm
            } else {
                ExtrapolationMode::WholeEnergy
            },
            convention: AngleConvention::RESOLVED,
            max_evals: self.max_evals.unwrap_or(d.max_evals),
            ..d
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::driver::convergence_report;
    use crate::hamiltonian::EftConfig;
    use std::collections::BTreeMap;

    #[test]
    fn landscape_round_trip() {
        let rows = vec![
            LandscapeRecord {
                lambdas: vec![0.858, 0.958, 0.758],
                experiment: -2.256,
                experiment_sigma: 0.179,
                theory: -2.1428571428571432,
            },
            LandscapeRecord {
                lambdas: vec![0.1 + 0.2, -0.51, 1e-17],
                experiment: f64::MIN_POSITIVE,
                experiment_sigma: 0.0,
                theory: -1.0 / 3.0,
            },
        ];
        let text = landscape_csv(&rows).unwrap();
        assert!(text.starts_with("lambda0,lambda1,lambda2,experiment,experiment_sigma,theory\n"));
        assert_eq!(parse_landscape_csv(&text).unwrap(), rows);
    }

    #[test]
    fn landscape_errors_name_the_line() {
        let bad = "lambda0,experiment,experiment_sigma,theory\n0.1,0.2,0.3,0.4\n0.1,x,0.3,0.4\n";
        match parse_landscape_csv(bad) {
            Err(Error::Parse { context, .. }) => assert_eq!(context, "landscape csv:3"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn convergence_round_trip() {
        let mut res = BTreeMap::new();
        res.insert(3, (-2.03, 0.034));
        let rep = convergence_report(&res, &EftConfig::default()).unwrap();
        let pts = convergence_points(&rep);
        assert!(pts.iter().any(|p| p.platform == "exact" && p.energy == -2.224));
        assert_eq!(pts.iter().filter(|p| p.platform == "simulation").count(), 1);
        let text = convergence_csv(&pts).unwrap();
        assert_eq!(parse_convergence_csv(&text).unwrap(), pts);
    }

    #[test]
    fn json_and_jsonl_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = RunConfig::new(4);
        let p = dir.path().join("cfg.json");
        write_json(&p, &cfg).unwrap();
        assert_eq!(read_json::<RunConfig>(&p).unwrap(), cfg);
        let p = dir.path().join("t.jsonl");
        let mut w = JsonlWriter::create(&p).unwrap();
        for i in 0..3 {
            w.write(&(i, 0.1 * i as f64)).unwrap();
        }
        w.finish().unwrap();
        assert_eq!(read_jsonl::<(i32, f64)>(&p).unwrap(), vec![(0, 0.0), (1, 0.1), (2, 0.2)]);
    }

    #[test]
    fn artifact_hash() {
        let a = RunArtifact::new("vqe", &RunConfig::new(2), vec![7], vec![]).unwrap();
        assert!(a.verify());
        assert_eq!(a.content_hash.len(), 64);
        let b = RunArtifact::new("vqe", &RunConfig::new(2), vec![7], vec![]).unwrap();
        assert_eq!(a.content_hash, b.content_hash);
        let c = RunArtifact::new("vqe", &RunConfig::new(3), vec![7], vec![]).unwrap();
        assert_ne!(a.content_hash, c.content_hash);
    }

    #[test]
    fn settings_overlay_and_diagnostics() {
        let file = Settings::from_json(r#"{"n": 3, "shots": 100, "fold": [0, 1], "fit": "quadratic"}"#, "f").unwrap();
        let cli = Settings {
            shots: Some(5),
            ..Default::default()
        };
        let merged = file.overlay(cli);
        assert_eq!(merged.n, Some(3));
        assert_eq!(merged.shots, Some(5));
        let cfg = merged.run_config(2);
        assert_eq!((cfg.n_states, cfg.shots, cfg.folds.clone(), cfg.fit), (3, 5, vec![0, 1], FitKind::Quadratic));
        match Settings::from_json("{\n  \"n\": 3,\n  \"shot\": 4\n}", "cfg.json") {
            Err(Error::Parse { context, message }) => {
                assert_eq!(context, "cfg.json");
                assert!(message.contains("shot") && message.contains("line 3"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }
}
