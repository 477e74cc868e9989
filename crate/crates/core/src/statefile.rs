//! JSON state files.
//!
//! ```json
//! { "dim": 3, "kind": "pure", "amplitudes": [[re, im], ...] }
//! { "dim": 3, "kind": "density", "entries": [[[re, im], ...], ...] }
//! ```
//!
//! Numbers are written with 17 significant digits so every `f64` survives
//! a write/read cycle unchanged.

use std::fs;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Deserialize;
use serde_json::{json, Number, Value};

use crate::qsystem::{check_dimension, pure_density, DensityMatrix, StateVector};
use crate::{Error, Result};

/// `x` with 17 significant digits in scientific notation, exponent signed
/// (`1.0000000000000000e+0`).
pub fn format_f64(x: f64) -> String {
    if !x.is_finite() {
        return "null".to_string();
    }
    let s = format!("{x:.16e}");
    match s.split_once('e') {
        Some((mantissa, exp)) if !exp.starts_with('-') => format!("{mantissa}e+{exp}"),
        _ => s,
    }
}

/// A JSON number carrying exactly the digits of [`format_f64`].
pub fn json_number(x: f64) -> Value {
    format_f64(x)
        .parse::<Number>()
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

fn json_complex(z: &Complex64) -> Value {
    Value::Array(vec![json_number(z.re), json_number(z.im)])
}

#[derive(Debug, Clone, PartialEq)]
pub enum LoadedState {
    Pure(StateVector),
    Density(DensityMatrix),
}

impl LoadedState {
    pub fn dim(&self) -> usize {
        match self {
            LoadedState::Pure(s) => s.dim(),
            LoadedState::Density(rho) => rho.dim(),
        }
    }

    pub fn density(&self) -> Result<DensityMatrix> {
        match self {
            LoadedState::Pure(s) => pure_density(s),
            LoadedState::Density(rho) => Ok(rho.clone()),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            LoadedState::Pure(_) => "pure",
            LoadedState::Density(_) => "density",
        }
    }
}

pub fn pure_to_json(state: &StateVector) -> Value {
    json!({
        "dim": state.dim(),
        "kind": "pure",
        "amplitudes": state.amplitudes().iter().map(json_complex).collect::<Vec<_>>(),
    })
}

pub fn density_to_json(rho: &DensityMatrix) -> Value {
    let m = rho.entries();
    let rows: Vec<Value> = (0..m.nrows())
        .map(|r| Value::Array((0..m.ncols()).map(|c| json_complex(&m[(r, c)])).collect()))
        .collect();
    json!({
        "dim": rho.dim(),
        "kind": "density",
        "entries": rows,
    })
}

pub fn export_pure(state: &StateVector) -> String {
    serde_json::to_string_pretty(&pure_to_json(state)).expect("serializable")
}

pub fn export_density(rho: &DensityMatrix) -> String {
    serde_json::to_string_pretty(&density_to_json(rho)).expect("serializable")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawState {
    dim: usize,
    kind: String,
    amplitudes: Option<Vec<[f64; 2]>>,
    entries: Option<Vec<Vec<[f64; 2]>>>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::StateFile(msg.into())
}

pub fn parse_state(text: &str) -> Result<LoadedState> {
    let raw: RawState = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    check_dimension(raw.dim)?;
    let d = raw.dim;
    let c = |p: &[f64; 2]| Complex64::new(p[0], p[1]);
    match (raw.kind.as_str(), raw.amplitudes, raw.entries) {
        ("pure", Some(amps), None) => {
            if amps.len() != d {
                return Err(bad(format!(
                    "expected {d} amplitudes, found {}",
                    amps.len()
                )));
            }
            Ok(LoadedState::Pure(StateVector::new(
                amps.iter().map(c).collect(),
            )?))
        }
        ("density", None, Some(rows)) => {
            if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                return Err(bad(format!("entries must be {d} rows of {d} values")));
            }
            let m = DMatrix::from_fn(d, d, |r, s| c(&rows[r][s]));
            Ok(LoadedState::Density(DensityMatrix::validate(m)?))
        }
        ("pure", _, _) => Err(bad("kind \"pure\" requires `amplitudes` and no `entries`")),
        ("density", _, _) => Err(bad(
            "kind \"density\" requires `entries` and no `amplitudes`",
        )),
        (other, _, _) => Err(bad(format!("unknown kind {other:?}"))),
    }
}

pub fn read_state_file(path: impl AsRef<Path>) -> Result<LoadedState> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    parse_state(&text)
}

pub fn write_state_file(path: impl AsRef<Path>, state: &LoadedState) -> Result<()> {
    let text = match state {
        LoadedState::Pure(s) => export_pure(s),
        LoadedState::Density(rho) => export_density(rho),
    };
    let path = path.as_ref();
    fs::write(path, text + "\n").map_err(|e| bad(format!("{}: {e}", path.display())))
}
