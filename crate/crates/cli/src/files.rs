//! JSON file formats. All rationals travel as strings, `"p"` or `"p/q"`,
//! so files round-trip bit-exactly; matrices are row-major string arrays.

use std::collections::BTreeMap;
use std::str::FromStr;

use jcd_core::{Mat, Rational};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;

/// Provenance of a generated instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

/// A problem instance: the diagonalizable part `S` and nilpotent part `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub format: u32,
    pub n: usize,
    #[serde(rename = "S")]
    pub s: Vec<Vec<String>>,
    #[serde(rename = "N")]
    pub n_part: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

/// Single-matrix variant accepted by the `oracle` subcommand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub format: u32,
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
}

/// One driver round in a serialized trace. Matrices appear only under
/// `--trace=full`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceEntry {
    pub gamma: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chosen_eigenvalue: Option<String>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<Vec<String>>>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n_part: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chosen_matrix: Option<Vec<Vec<String>>>,
}

/// Output of `decompose`, `verify`, and `oracle`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultFile {
    pub format: u32,
    #[serde(rename = "S_prime")]
    pub s_prime: Vec<Vec<String>>,
    #[serde(rename = "N_prime")]
    pub n_prime: Vec<Vec<String>>,
    pub loops: usize,
    pub gamma_trace: Vec<Vec<usize>>,
    pub checks: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceEntry>>,
}

/// Parses `"p"` or `"p/q"` into an exact rational; rejects zero
/// denominators instead of panicking on them.
pub fn parse_rational(text: &str) -> Result<Rational, CliError> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), Some(q.trim())),
        None => (t, None),
    };
    let p =
        BigInt::from_str(num).map_err(|_| CliError::Parse(format!("malformed rational {t:?}")))?;
    let q = match den {
        Some(d) => {
            BigInt::from_str(d).map_err(|_| CliError::Parse(format!("malformed rational {t:?}")))?
        }
        None => BigInt::from(1),
    };
    if q.is_zero() {
        return Err(CliError::Parse(format!("zero denominator in {t:?}")));
    }
    Ok(Rational::new(p, q))
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn mat_to_strings(m: &Mat) -> Vec<Vec<String>> {
    let n = m.dim();
    (0..n)
        .map(|i| (0..n).map(|j| format_rational(m.at(i, j))).collect())
        .collect()
}

pub fn mat_from_strings(n: usize, rows: &[Vec<String>], label: &str) -> Result<Mat, CliError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Parse(format!("{label} must be a {n}x{n} array")));
    }
    let parsed = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Mat::from_rows(parsed).map_err(|e| CliError::Parse(format!("{label}: {e}")))
}

fn check_header(format: u32, n: usize) -> Result<(), CliError> {
    if format != FORMAT_VERSION {
        return Err(CliError::Parse(format!(
            "unsupported format version {format} (expected {FORMAT_VERSION})"
        )));
    }
    if n == 0 {
        return Err(CliError::Parse("n must be at least 1".into()));
    }
    Ok(())
}

impl InstanceFile {
    pub fn from_matrices(s: &Mat, n_part: &Mat, metadata: Option<Metadata>) -> InstanceFile {
        InstanceFile {
            format: FORMAT_VERSION,
            n: s.dim(),
            s: mat_to_strings(s),
            n_part: mat_to_strings(n_part),
            metadata,
        }
    }

    /// Validates the header and parses both matrices.
    pub fn matrices(&self) -> Result<(Mat, Mat), CliError> {
        check_header(self.format, self.n)?;
        let s = mat_from_strings(self.n, &self.s, "S")?;
        let n_part = mat_from_strings(self.n, &self.n_part, "N")?;
        Ok((s, n_part))
    }
}

impl MatrixFile {
    pub fn matrix(&self) -> Result<Mat, CliError> {
        check_header(self.format, self.n)?;
        mat_from_strings(self.n, &self.a, "A")
    }
}

/// Reads and validates an instance file from disk.
pub fn read_instance(path: &std::path::Path) -> Result<(InstanceFile, Mat, Mat), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let file: InstanceFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let (s, n_part) = file.matrices()?;
    Ok((file, s, n_part))
}

/// Reads the input of the `oracle` subcommand: either a single-matrix file
/// or a full instance (then the matrix is `S + N`).
pub fn read_oracle_input(path: &std::path::Path) -> Result<Mat, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    if let Ok(single) = serde_json::from_str::<MatrixFile>(&text) {
        return single.matrix();
    }
    let file: InstanceFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let (s, n_part) = file.matrices()?;
    s.add(&n_part).map_err(CliError::from)
}

pub fn read_result(path: &std::path::Path) -> Result<ResultFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}
