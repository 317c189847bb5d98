//! Commands behind the `quanton` binary.
//!
//! Output files are CSV with `#`-prefixed header comments recording the tool
//! version, the canonical command line (output path and thread count omitted) and
//! the seed. Numbers are written with 12 significant digits. Rows are produced in
//! a fixed order whatever the thread count, so identical commands give
//! byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    bures_distance, min_particle_distance, particle_distance, relative_overlap_params,
};
use crate::linalg::Complex;
use crate::quanton::{self, build_state, extract_params, PolarizationBasis, StateVector4};
use crate::sampler::{random_quanton_fixed_d, SampleSeed};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Maximum `|‖ψ‖² − 1|` accepted from a state file before renormalizing.
pub const STATE_FILE_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "quanton",
    version,
    about = "Bures geometry of single-photon quanton states"
)]
pub struct Cli {
    /// Worker threads for sampling (defaults to all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Duality parameters and nearest particle of a state read from a JSON state file
    Analyze {
        input: PathBuf,
        /// Normalization tolerance on the squared norm
        #[arg(long, default_value_t = STATE_FILE_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Particle-to-quanton distance on a (γ, D̄) grid
    SweepParticleDistance {
        #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5,0.75,1")]
        gamma_list: Vec<f64>,
        /// D̄ grid as start:stop:step
        #[arg(long, default_value = "0:1:0.01")]
        grid: GridSpec,
        /// CSV output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample states of fixed D̄ and compare their distance to a particle with the closed form
    VerifyEquidistance {
        #[arg(long)]
        dbar: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest accepted |measured − predicted|
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Per-sample CSV output path
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Pairwise distances between the particle, wave and entanglon exemplars
    PweTriangle {
        /// CSV output path
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

/// `start:stop:step`, inclusive of both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        let span = self.stop - self.start;
        let n = (span / self.step).round() as usize;
        if n == 0 {
            return vec![self.start];
        }
        (0..=n)
            .map(|i| {
                if i == n {
                    self.stop
                } else {
                    self.start + span * i as f64 / n as f64
                }
            })
            .collect()
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, step] = parts.as_slice() else {
            return Err(Error::Parse(format!("grid `{s}` is not start:stop:step")));
        };
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::Parse(format!("grid `{s}`: `{t}` is not a number")))
        };
        let g = GridSpec {
            start: num(start)?,
            stop: num(stop)?,
            step: num(step)?,
        };
        if g.step <= 0.0 || g.stop < g.start {
            return Err(Error::Parse(format!(
                "grid `{s}` needs step > 0 and stop >= start"
            )));
        }
        let span = g.stop - g.start;
        let n = (span / g.step).round();
        if (n * g.step - span).abs() > 1e-9 * span.max(1.0) {
            return Err(Error::Parse(format!(
                "grid `{s}`: step does not divide the range"
            )));
        }
        Ok(g)
    }
}

impl std::fmt::Display for GridSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

/// `%.12g`: 12 significant digits, trailing zeros trimmed.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let fixed = format!("{:.*}", (11 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    } else {
        format!("{}e{}", trim_zeros(mantissa), exp)
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Exit status of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }
}

/// On-disk state: four `[re, im]` amplitudes in the order
/// `[path0⊗pol0, path0⊗pol1, path1⊗pol0, path1⊗pol1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn from_state(state: &StateVector4, label: Option<String>) -> Self {
        StateFile {
            label,
            amplitudes: state.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("state file: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Validates against `tol` and renormalizes. The flag is set when the input
    /// was off by more than [`quanton::TOL_NORM`].
    pub fn to_state(&self, tol: f64) -> Result<(StateVector4, bool)> {
        let amp: [Complex; 4] = self
            .amplitudes
            .iter()
            .map(|[re, im]| Complex::new(*re, *im))
            .collect::<Vec<_>>()
            .try_into()
            .map_err(|v: Vec<Complex>| {
                Error::Parse(format!("state file has {} amplitudes, expected 4", v.len()))
            })?;
        let raw = StateVector4::with_tolerance(amp, tol)?;
        let renormalized = (raw.norm_sq() - 1.0).abs() > quanton::TOL_NORM;
        Ok((StateVector4::normalize(amp)?, renormalized))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyzeReport {
    pub label: Option<String>,
    pub d: f64,
    pub v: f64,
    pub c: f64,
    pub alpha: f64,
    pub beta: f64,
    pub predictability: f64,
    pub triality_residual: f64,
    pub paths_swapped: bool,
    pub min_particle_distance: f64,
    pub witness_path: usize,
    pub witness_polarization: [[f64; 2]; 2],
}

pub fn analyze(file: &StateFile, tol: f64) -> Result<(AnalyzeReport, bool)> {
    let (state, renormalized) = file.to_state(tol)?;
    let r = extract_params(&state)?;
    let w = min_particle_distance(&state)?;
    let report = AnalyzeReport {
        label: file.label.clone(),
        d: r.params.d,
        v: r.params.v,
        c: r.params.c,
        alpha: r.params.alpha,
        beta: r.params.beta,
        predictability: r.predictability,
        triality_residual: r.params.triality_residual(),
        paths_swapped: r.paths_swapped,
        min_particle_distance: w.distance,
        witness_path: w.path,
        witness_polarization: w.polarization.map(|z| [z.re, z.im]),
    };
    Ok((report, renormalized))
}

impl AnalyzeReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(label) = &self.label {
            let _ = writeln!(s, "label: {label}");
        }
        let rows = [
            ("D", self.d),
            ("V", self.v),
            ("C", self.c),
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("P", self.predictability),
            ("triality_residual", self.triality_residual),
            ("min_particle_distance", self.min_particle_distance),
        ];
        for (k, v) in rows {
            let _ = writeln!(s, "{k}: {}", fmt_num(v));
        }
        let [p0, p1] = self.witness_polarization;
        let _ = writeln!(
            s,
            "witness: path {}, polarization ({}, {}) + i({}, {})",
            self.witness_path,
            fmt_num(p0[0]),
            fmt_num(p1[0]),
            fmt_num(p0[1]),
            fmt_num(p1[1])
        );
        if self.paths_swapped {
            let _ = writeln!(s, "note: path 1 dominates; arms relabeled for extraction");
        }
        s
    }
}

fn csv_header(command: &str, seed: Option<u64>, columns: &[&str]) -> String {
    let seed = seed.map_or_else(|| "none".to_string(), |s| s.to_string());
    format!(
        "# quanton {VERSION}\n# command: {command}\n# seed: {seed}\n{}\n",
        columns.join(",")
    )
}

fn csv_row(values: &[f64]) -> String {
    let mut s = values
        .iter()
        .map(|&x| fmt_num(x))
        .collect::<Vec<_>>()
        .join(",");
    s.push('\n');
    s
}

pub fn sweep_particle_distance(gammas: &[f64], grid: &GridSpec) -> Result<String> {
    let dbars = grid.points();
    let gamma_list = gammas
        .iter()
        .map(|g| g.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let command = format!("sweep-particle-distance --gamma-list {gamma_list} --grid {grid}");
    let mut out = csv_header(&command, None, &["gamma", "dbar", "distance"]);
    for &g in gammas {
        for &d in &dbars {
            out.push_str(&csv_row(&[g, d, particle_distance(g, d)?]));
        }
    }
    Ok(out)
}

/// One sample of the equidistance experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquidistanceRow {
    pub sample: u64,
    pub dbar: f64,
    pub vbar: f64,
    pub cbar: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub distance: f64,
    pub predicted: f64,
    pub residual: f64,
}

/// Distance from `|0⟩⊗(1,0)` to sample `sample` of the fixed-`dbar` family,
/// next to the closed-form prediction from its `γ`.
pub fn equidistance_row(dbar: f64, seed: u64, sample: u64) -> Result<EquidistanceRow> {
    let (params, basis) = random_quanton_fixed_d(dbar, SampleSeed::new(seed, sample))?;
    let state = build_state(&params, &basis)?;
    let particle = StateVector4::particle(0, PolarizationBasis::standard().phi0)?;
    let extracted = extract_params(&state)?;
    let gamma = relative_overlap_params(&PolarizationBasis::standard(), &extracted.basis)?.gamma;
    let distance = bures_distance(&particle, &state)?;
    let predicted = particle_distance(gamma, dbar)?;
    Ok(EquidistanceRow {
        sample,
        dbar,
        vbar: params.v,
        cbar: params.c,
        alpha: params.alpha,
        beta: params.beta,
        gamma,
        distance,
        predicted,
        residual: (distance - predicted).abs(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquidistanceSummary {
    pub dbar: f64,
    pub samples: u64,
    pub seed: u64,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

pub fn verify_equidistance(
    dbar: f64,
    samples: u64,
    seed: u64,
    tol: f64,
) -> Result<(Vec<EquidistanceRow>, EquidistanceSummary)> {
    crate::error::check_range("dbar", dbar, 0.0, 1.0)?;
    if samples == 0 {
        return Err(Error::Range {
            name: "samples",
            value: 0.0,
            min: 1.0,
            max: f64::INFINITY,
        });
    }
    let rows = (0..samples)
        .into_par_iter()
        .map(|k| equidistance_row(dbar, seed, k))
        .collect::<Result<Vec<_>>>()?;
    let max_residual = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
    let summary = EquidistanceSummary {
        dbar,
        samples,
        seed,
        max_residual,
        tolerance: tol,
        pass: max_residual < tol,
    };
    Ok((rows, summary))
}

pub fn equidistance_csv(rows: &[EquidistanceRow], summary: &EquidistanceSummary) -> String {
    let command = format!(
        "verify-equidistance --dbar {} --samples {} --seed {} --tol {:e}",
        summary.dbar, summary.samples, summary.seed, summary.tolerance
    );
    let mut out = csv_header(
        &command,
        Some(summary.seed),
        &[
            "sample",
            "dbar",
            "vbar",
            "cbar",
            "alpha",
            "beta",
            "gamma",
            "distance",
            "predicted",
            "residual",
        ],
    );
    for r in rows {
        out.push_str(&csv_row(&[
            r.sample as f64,
            r.dbar,
            r.vbar,
            r.cbar,
            r.alpha,
            r.beta,
            r.gamma,
            r.distance,
            r.predicted,
            r.residual,
        ]));
    }
    out
}

/// Particle, wave and entanglon sharing `φ0 = (1, 0)`.
pub fn pwe_exemplars() -> Result<[(&'static str, StateVector4); 3]> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Ok([
        ("P", StateVector4::from_real([1.0, 0.0, 0.0, 0.0])?),
        ("W", StateVector4::from_real([h, 0.0, h, 0.0])?),
        ("E", StateVector4::from_real([h, 0.0, 0.0, h])?),
    ])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairDistance {
    pub pair: String,
    pub distance: f64,
}

/// `d(P,W)`, `d(P,E)`, `d(E,W)`.
pub fn pwe_triangle() -> Result<Vec<PairDistance>> {
    let [p, w, e] = pwe_exemplars()?;
    [(&p, &w), (&p, &e), (&e, &w)]
        .into_iter()
        .map(|(a, b)| {
            Ok(PairDistance {
                pair: format!("{}-{}", a.0, b.0),
                distance: bures_distance(&a.1, &b.1)?,
            })
        })
        .collect()
}

pub fn pwe_csv(rows: &[PairDistance]) -> String {
    let mut out = csv_header("pwe-triangle", None, &["pair", "distance"]);
    for r in rows {
        let _ = writeln!(out, "{},{}", r.pair, fmt_num(r.distance));
    }
    out
}

fn write_output(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents)?;
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

/// Runs one parsed command line.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<Outcome> {
    let pool = cli
        .threads
        .map(|n| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Parse(format!("--threads: {e}")))
        })
        .transpose()?;
    run_command(&cli.command, pool.as_ref(), stdout, stderr)
}

fn run_command(
    cmd: &Command,
    pool: Option<&rayon::ThreadPool>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<Outcome> {
    match cmd {
        Command::Analyze { input, tol, json } => {
            let file = StateFile::read(input)?;
            let (report, renormalized) = analyze(&file, *tol)?;
            if renormalized {
                writeln!(stderr, "warning: {} was renormalized", input.display())?;
            }
            if *json {
                writeln!(stdout, "{}", to_json(&report))?;
            } else {
                write!(stdout, "{}", report.to_text())?;
            }
            Ok(Outcome::Pass)
        }
        Command::SweepParticleDistance {
            gamma_list,
            grid,
            out,
        } => {
            let csv = sweep_particle_distance(gamma_list, grid)?;
            match out {
                Some(path) => write_output(path, &csv)?,
                None => write!(stdout, "{csv}")?,
            }
            Ok(Outcome::Pass)
        }
        Command::VerifyEquidistance {
            dbar,
            samples,
            seed,
            tol,
            out,
            json,
        } => {
            let verify = || verify_equidistance(*dbar, *samples, *seed, *tol);
            let (rows, summary) = match pool {
                Some(pool) => pool.install(verify)?,
                None => verify()?,
            };
            if let Some(path) = out {
                write_output(path, &equidistance_csv(&rows, &summary))?;
            }
            if *json {
                writeln!(stdout, "{}", to_json(&summary))?;
            } else {
                writeln!(
                    stdout,
                    "dbar {} samples {} seed {}: max residual {:e} tolerance {:e}: {}",
                    summary.dbar,
                    summary.samples,
                    summary.seed,
                    summary.max_residual,
                    summary.tolerance,
                    if summary.pass { "PASS" } else { "FAIL" }
                )?;
            }
            Ok(if summary.pass {
                Outcome::Pass
            } else {
                Outcome::Fail
            })
        }
        Command::PweTriangle { out, json } => {
            let rows = pwe_triangle()?;
            if let Some(path) = out {
                write_output(path, &pwe_csv(&rows))?;
            }
            if *json {
                writeln!(stdout, "{}", to_json(&rows))?;
            } else {
                for r in &rows {
                    writeln!(stdout, "d({}) = {}", r.pair, fmt_num(r.distance))?;
                }
            }
            Ok(Outcome::Pass)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fmt_num_twelve_digits() {
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(std::f64::consts::SQRT_2), "1.41421356237");
        assert_eq!(
            fmt_num((2.0 - std::f64::consts::SQRT_2).sqrt()),
            "0.765366864730".trim_end_matches('0')
        );
        assert_eq!(fmt_num(-0.25), "-0.25");
        assert_eq!(fmt_num(1.1102230246251565e-16), "1.11022302463e-16");
        assert_eq!(fmt_num(123456789012345.0), "1.23456789012e14");
        assert_eq!(fmt_num(0.99999999999999), "1");
        assert_eq!(fmt_num(10000.0), "10000");
    }

    #[test]
    fn grid_parsing() {
        let g: GridSpec = "0:1:0.01".parse().unwrap();
        let pts = g.points();
        assert_eq!(pts.len(), 101);
        assert_eq!(pts[0], 0.0);
        assert_eq!(pts[100], 1.0);
        assert!((pts[37] - 0.37).abs() < 1e-15);
        assert_eq!(
            "0.5:0.5:0.1".parse::<GridSpec>().unwrap().points(),
            vec![0.5]
        );
        assert!("0:1".parse::<GridSpec>().is_err());
        assert!("0:1:0.3".parse::<GridSpec>().is_err());
        assert!("1:0:0.1".parse::<GridSpec>().is_err());
        assert!("0:1:-0.1".parse::<GridSpec>().is_err());
        assert!("0:x:0.1".parse::<GridSpec>().is_err());
    }

    #[test]
    fn state_file_parsing() {
        let f = StateFile::parse(r#"{"label":"bell","amplitudes":[[0.7071067811865476,0],[0,0],[0,0],[0.7071067811865476,0]]}"#)
            .unwrap();
        assert_eq!(f.label.as_deref(), Some("bell"));
        let (s, renorm) = f.to_state(STATE_FILE_TOL).unwrap();
        assert!(!renorm);
        assert!((quanton::concurrence(&s).unwrap() - 1.0).abs() < 1e-15);

        let slightly_off = StateFile {
            label: None,
            amplitudes: vec![[1.0 + 1e-10, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
        };
        let (s, renorm) = slightly_off.to_state(STATE_FILE_TOL).unwrap();
        assert!(renorm);
        assert!((s.norm_sq() - 1.0).abs() < 1e-15);

        let far_off = StateFile {
            label: None,
            amplitudes: vec![[1.1, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
        };
        assert!(matches!(
            far_off.to_state(STATE_FILE_TOL),
            Err(Error::Normalization { .. })
        ));

        let short = StateFile {
            label: None,
            amplitudes: vec![[1.0, 0.0]],
        };
        assert!(matches!(
            short.to_state(STATE_FILE_TOL),
            Err(Error::Parse(_))
        ));
        assert!(StateFile::parse("{\"amps\": []}").is_err());
    }

    #[test]
    fn sweep_rows() {
        let csv = sweep_particle_distance(&[0.0, 1.0], &"0:1:0.5".parse().unwrap()).unwrap();
        let body: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(body[0], "gamma,dbar,distance");
        assert_eq!(body[1], "0,0,1.41421356237");
        assert_eq!(body[4], "1,0,0.76536686473");
        assert_eq!(body[6], "1,1,0");
        assert!(sweep_particle_distance(&[1.5], &"0:1:0.5".parse().unwrap()).is_err());
    }

    #[test]
    fn single_sample_equidistance() {
        let (rows, summary) = verify_equidistance(0.3, 1, 99, 1e-10).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(summary.pass);
        assert!(verify_equidistance(0.3, 0, 99, 1e-10).is_err());
        assert!(verify_equidistance(-0.3, 10, 99, 1e-10).is_err());
    }

    #[test]
    fn triangle_values() {
        let rows = pwe_triangle().unwrap();
        assert_eq!(rows[0].pair, "P-W");
        assert!((rows[0].distance - rows[1].distance).abs() < 1e-12);
        assert!((rows[2].distance - 1.0).abs() < 1e-9);
    }
}
