//! JSON and CSV rendering.

use std::fs;
use std::io::Write;
use std::path::Path;

use brenke_core::numerics::{BallReal, ExactRational, Scalar};
use serde::Serialize;

use crate::error::{AppError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Decimal midpoint and radius of a ball, or an exact fraction.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Number {
    Exact { exact: String, approx: f64 },
    Ball { mid: String, rad: String, approx: f64 },
}

impl Number {
    pub fn of<T: Scalar>(x: &T) -> Number {
        match x.as_rational() {
            Some(q) if T::EXACT => Number::exact(&q),
            _ => Number::ball(&x.to_ball()),
        }
    }

    pub fn exact(q: &ExactRational) -> Number {
        Number::Exact { exact: q.to_string(), approx: brenke_core::numerics::rational::rational_to_f64(q) }
    }

    pub fn ball(b: &BallReal) -> Number {
        Number::Ball { mid: b.mid_decimal(), rad: b.rad_decimal(), approx: b.mid_f64() }
    }

    pub fn approx(&self) -> f64 {
        match self {
            Number::Exact { approx, .. } | Number::Ball { approx, .. } => *approx,
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| AppError::Output(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn to_csv<R: Serialize>(rows: &[R]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| AppError::Output(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| AppError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| AppError::Output(e.to_string()))
}

/// Writes the JSON document or the CSV rows to `path`, or to stdout.
pub fn emit<T: Serialize, R: Serialize>(format: Format, path: Option<&Path>, doc: &T, rows: &[R]) -> Result<()> {
    let text = match format {
        Format::Json => to_json(doc)?,
        Format::Csv => to_csv(rows)?,
    };
    match path {
        Some(p) => fs::write(p, text).map_err(|e| AppError::Output(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| AppError::Output(e.to_string()))
        }
    }
}
