//! Command-line and JSON configuration.

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(name = "cayley", version, about = "Periodic billiard trajectories inside ellipsoids")]
pub struct Cli {
    /// Read the whole run configuration from a JSON file instead of flags.
    #[arg(long)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

/// One run. The JSON form is tagged by `"command"`, e.g.
/// `{"command": "check-cayley", "axes": "1,2", "caustics": "2/3", "m": 2}`.
#[derive(Subcommand, Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Decide whether trajectories with the given caustics are periodic.
    CheckCayley(CheckArgs),
    /// Caustic parameters of the period-m trajectories of a caustic type.
    SolveCaustics(SolveArgs),
    /// Run the billiard map and report closure and winding numbers.
    Simulate(SimulateArgs),
    /// Rotation number of a caustic inside an ellipse.
    RotationNumber(RotationArgs),
    /// Existence verdicts of every closed-form family over a parameter grid.
    Sweep(SweepArgs),
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct CheckArgs {
    /// Axis parameters a_j of sum x_j^2 / a_j = 1, comma separated ("p/q" or decimals).
    #[arg(long)]
    pub axes: String,
    /// Caustic parameters, comma separated.
    #[arg(long)]
    pub caustics: String,
    /// Elliptic period.
    #[arg(long)]
    pub m: usize,
    /// Relative singular value threshold for float inputs.
    #[arg(long, default_value_t = 1e-9)]
    #[serde(default = "default_rank_tol")]
    pub tol: f64,
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct SolveArgs {
    #[arg(long)]
    pub axes: String,
    /// Dimension; inferred from the axes when omitted.
    #[arg(long)]
    #[serde(default)]
    pub n: Option<usize>,
    /// Caustic type: E, H, EH1, H1H1, EH2, H1H2 or an explicit vector.
    #[arg(long = "type")]
    #[serde(rename = "type")]
    pub kind: String,
    #[arg(long)]
    pub m: usize,
    /// Signature, comma separated; every signature is tried when omitted.
    #[arg(long)]
    #[serde(default)]
    pub tau: Option<String>,
    /// Seed for the restarts of the numerical solver.
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    pub seed: u64,
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct SimulateArgs {
    #[arg(long)]
    pub axes: String,
    #[arg(long)]
    pub caustics: String,
    #[arg(long, default_value_t = 1000)]
    #[serde(default = "default_bounces")]
    pub max_bounces: usize,
    /// Sup-norm tolerance of the closure test.
    #[arg(long, default_value_t = 1e-8)]
    #[serde(default = "default_closure_tol")]
    pub tol: f64,
    /// Seed choosing the launch point and direction.
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    pub seed: u64,
    /// Write one row per bounce here.
    #[arg(long)]
    #[serde(default)]
    pub csv: Option<PathBuf>,
    /// Write a picture of a planar trajectory here.
    #[arg(long)]
    #[serde(default)]
    pub svg: Option<PathBuf>,
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct RotationArgs {
    /// The two axis parameters of the ellipse.
    #[arg(long)]
    pub axes: String,
    #[arg(long)]
    pub lambda: String,
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct SweepArgs {
    /// Value or range `lo:hi:count` for a (the largest axis parameter).
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
    /// Third axis parameter; omit for a planar sweep.
    #[arg(long)]
    #[serde(default)]
    pub c: Option<String>,
    /// CSV output path; standard output when omitted.
    #[arg(long)]
    #[serde(default)]
    pub out: Option<PathBuf>,
}

fn default_rank_tol() -> f64 {
    1e-9
}

fn default_bounces() -> usize {
    1000
}

fn default_closure_tol() -> f64 {
    1e-8
}

/// Malformed configuration (exit code 2).
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Arithmetic chosen from the literal forms of the numeric inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

/// `p/q` literals select exact arithmetic and decimal literals floats;
/// plain integers fit either. Mixing the two kinds is refused.
pub fn infer_mode(lists: &[&str]) -> Result<Mode, UsageError> {
    let items = lists.iter().flat_map(|l| l.split(','));
    let (mut exact, mut float) = (false, false);
    for item in items {
        let t = item.trim();
        if t.contains('/') {
            exact = true;
        } else if t.contains(['.', 'e', 'E']) {
            float = true;
        }
    }
    match (exact, float) {
        (true, true) => Err(UsageError(
            "mixed exact (p/q) and decimal literals; use one kind throughout".into(),
        )),
        (false, true) => Ok(Mode::Float),
        _ => Ok(Mode::Exact),
    }
}

/// A sweep axis: one value or `count` evenly spaced values.
pub fn parse_range(text: &str) -> Result<Vec<f64>, UsageError> {
    let bad = || UsageError(format!("bad value or range {text:?} (expected x or lo:hi:count)"));
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [v] => Ok(vec![v.trim().parse().map_err(|_| bad())?]),
        [lo, hi, count] => {
            let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
            let count: usize = count.trim().parse().map_err(|_| bad())?;
            if count == 0 {
                return Err(bad());
            }
            if count == 1 {
                return Ok(vec![lo]);
            }
            Ok((0..count)
                .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
                .collect())
        }
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mode_from_literals() {
        assert_eq!(infer_mode(&["1,2", "2/3"]).unwrap(), Mode::Exact);
        assert_eq!(infer_mode(&["1,2", "3"]).unwrap(), Mode::Exact);
        assert_eq!(infer_mode(&["4,1,0.2"]).unwrap(), Mode::Float);
        assert!(infer_mode(&["1/5,0.5"]).is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2").unwrap(), vec![2.0]);
        assert_eq!(parse_range("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(parse_range("0:1").is_err());
        assert!(parse_range("0:1:0").is_err());
    }

    #[test]
    fn json_round_trip() {
        let cmd = Command::SolveCaustics(SolveArgs {
            axes: "4,1,1/4".into(),
            n: Some(3),
            kind: "H1H1".into(),
            m: 3,
            tau: None,
            seed: 0,
        });
        let text = serde_json::to_string(&cmd).unwrap();
        assert!(text.contains("\"command\":\"solve-caustics\""));
        assert_eq!(serde_json::from_str::<Command>(&text).unwrap(), cmd);
        let minimal: Command =
            serde_json::from_str(r#"{"command":"check-cayley","axes":"1,2","caustics":"2/3","m":2}"#)
                .unwrap();
        let Command::CheckCayley(args) = minimal else { panic!() };
        assert_eq!(args.tol, 1e-9);
    }
}
