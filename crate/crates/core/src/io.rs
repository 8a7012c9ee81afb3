//! Text formats: state dumps, distribution/curve/sweep CSV, and walk specs.
//!
//! Floats are written with 10 significant digits using Rust's own
//! formatting, so output does not depend on locale.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{OrthoPair, Plate, SU2Params, WalkKind, WalkVariant};
use crate::state::{Coin, Site, WalkState};

/// How far a typed-in pair may be from orthonormal before it is rejected.
pub const PAIR_INPUT_TOL: f64 = 1e-6;

/// Rounds to 10 significant digits and prints the shortest form of the
/// rounded value (`1.0`, `0.25`, `1.234567891e-5`).
pub fn format_sig10(value: f64) -> String {
    if !value.is_finite() {
        return value.to_string();
    }
    let rounded: f64 = format!("{value:.9e}").parse().unwrap();
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    format!("{rounded:?}")
}

/// `x,m,probability`, one row per populated site in `(x, m)` order.
pub fn distribution_csv(state: &WalkState) -> String {
    let mut out = String::from("x,m,probability\n");
    for (site, p) in state.probability_distribution() {
        writeln!(out, "{},{},{}", site.x, site.m, format_sig10(p)).unwrap();
    }
    out
}

/// `n,negativity`.
pub fn curve_csv(curve: &[(usize, f64)]) -> String {
    let mut out = String::from("n,negativity\n");
    for (n, v) in curve {
        writeln!(out, "{n},{}", format_sig10(*v)).unwrap();
    }
    out
}

/// `angle_rad,negativity`.
pub fn sweep_csv(sweep: &[(f64, f64)]) -> String {
    let mut out = String::from("angle_rad,negativity\n");
    for (a, v) in sweep {
        writeln!(out, "{},{}", format_sig10(*a), format_sig10(*v)).unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeRecord {
    pub coin: String,
    pub x: i64,
    pub m: i64,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateDump {
    pub steps: usize,
    pub amplitudes: Vec<AmplitudeRecord>,
}

impl StateDump {
    pub fn from_state(state: &WalkState) -> Self {
        StateDump {
            steps: state.steps(),
            amplitudes: state
                .coin_entries()
                .map(|(coin, site, amp)| AmplitudeRecord {
                    coin: coin.label().to_string(),
                    x: site.x,
                    m: site.m,
                    re: amp.re,
                    im: amp.im,
                })
                .collect(),
        }
    }

    pub fn to_state(&self) -> Result<WalkState> {
        let entries = self
            .amplitudes
            .iter()
            .map(|r| {
                let coin = match r.coin.as_str() {
                    "H" => Coin::H,
                    "V" => Coin::V,
                    other => return Err(Error::InvalidSpec(format!("unknown coin {other:?}"))),
                };
                Ok((coin, Site::new(r.x, r.m), Complex64::new(r.re, r.im)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WalkState::from_coin_entries(self.steps, entries))
    }
}

pub fn state_to_json(state: &WalkState) -> Result<String> {
    Ok(serde_json::to_string_pretty(&StateDump::from_state(state))?)
}

pub fn state_from_json(text: &str) -> Result<WalkState> {
    serde_json::from_str::<StateDump>(text)?.to_state()
}

/// Plate as written in a walk spec: `"q"`, `{xi, zeta, theta}`, or
/// `{u1: [re, im, re, im], u2: [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PlateSpec {
    Named(String),
    Params { xi: f64, zeta: f64, theta: f64 },
    Pair { u1: [f64; 4], u2: [f64; 4] },
}

impl PlateSpec {
    /// Accepts `q` or a JSON object.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "q" {
            return Ok(PlateSpec::Named("q".into()));
        }
        serde_json::from_str(t).map_err(|e| Error::InvalidSpec(format!("bad plate {t:?}: {e}")))
    }

    pub fn to_plate(&self) -> Result<Plate> {
        match self {
            PlateSpec::Named(name) if name == "q" => Ok(Plate::Q),
            PlateSpec::Named(name) => Err(Error::InvalidSpec(format!("unknown plate {name:?}"))),
            PlateSpec::Params { xi, zeta, theta } => {
                if ![xi, zeta, theta].iter().all(|v| v.is_finite()) {
                    return Err(Error::InvalidSpec("plate parameters must be finite".into()));
                }
                Ok(Plate::Params(SU2Params::new(*xi, *zeta, *theta)))
            }
            PlateSpec::Pair { u1, u2 } => {
                let v = |a: &[f64; 4]| [Complex64::new(a[0], a[1]), Complex64::new(a[2], a[3])];
                Ok(Plate::Pair(OrthoPair::orthonormalized(
                    v(u1),
                    v(u2),
                    PAIR_INPUT_TOL,
                )?))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariantSpec {
    pub kind: String,
    pub plate: PlateSpec,
}

impl VariantSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    pub fn to_variant(&self) -> Result<WalkVariant> {
        let kind: WalkKind = self.kind.parse()?;
        Ok(WalkVariant::new(kind, self.plate.to_plate()?))
    }
}
