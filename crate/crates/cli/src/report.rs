//! Report types and writers. JSON floats are printed with 17 significant
//! digits (`{:.16e}`) so identical runs give byte-identical files; CSV uses
//! the same rendering, with empty fields for missing or non-finite values.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use krein_core::eigcore::RealMatrix;
use krein_core::krein::{OracleCheck, OracleReport};
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::error::CliError;

/// Pretty JSON with fixed-precision floats.
pub struct FixedFormatter<'a> {
    inner: PrettyFormatter<'a>,
}

impl Default for FixedFormatter<'_> {
    fn default() -> Self {
        Self {
            inner: PrettyFormatter::with_indent(b"  "),
        }
    }
}

impl Formatter for FixedFormatter<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object_value(w)
    }
}

pub fn to_json_string<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFormatter::default());
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    std::fs::write(path, to_json_string(value)?)?;
    Ok(())
}

/// CSV field for a float: `{:.16e}`, empty when missing or non-finite.
pub fn num(x: impl Into<Option<f64>>) -> String {
    match x.into() {
        Some(v) if v.is_finite() => format!("{v:.16e}"),
        _ => String::new(),
    }
}

pub fn write_csv(
    path: &Path,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(BufWriter::new(File::create(path)?));
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// `{"n": …, "entries": [row-major]}`.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<f64>,
}

impl From<&RealMatrix> for MatrixJson {
    fn from(m: &RealMatrix) -> Self {
        Self {
            n: m.order(),
            entries: m.as_slice().to_vec(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyEntry {
    pub lambda0: f64,
    pub case: String,
    pub overlap: f64,
    pub regular_value: Option<f64>,
    pub multiplicity_before: usize,
    pub multiplicity_after: usize,
    pub predicted_projector: MatrixJson,
}

pub const CLASSIFY_COLUMNS: [&str; 6] = [
    "lambda0",
    "case",
    "overlap",
    "regular_value",
    "multiplicity_before",
    "multiplicity_after",
];

impl ClassifyEntry {
    fn row(&self) -> Vec<String> {
        vec![
            num(self.lambda0),
            self.case.clone(),
            num(self.overlap),
            num(self.regular_value),
            self.multiplicity_before.to_string(),
            self.multiplicity_after.to_string(),
        ]
    }
}

/// Case analysis at `k0 = nπ` next to the directly computed `σ(B)`.
#[derive(Clone, Debug, Serialize)]
pub struct ModeEntry {
    pub mode: usize,
    pub k0: f64,
    pub lambda0: f64,
    pub case: String,
    pub overlap: f64,
    pub overlap_analytic: f64,
    pub regular_value: Option<f64>,
    pub multiplicity_before: usize,
    pub multiplicity_after: usize,
    /// Eigenvalues of `B` within the cluster tolerance of `λ0`.
    pub oracle_multiplicity: usize,
    /// Eigenvalues of `B` within `1e-3·λ0` of `λ0`.
    pub perturbed_within_window: usize,
    pub nearest_perturbed_distance: f64,
    pub half_gap: f64,
    /// No eigenvalue of `B` within half the spectral gap of `λ0`.
    pub removed: bool,
}

pub const MODE_COLUMNS: [&str; 14] = [
    "mode",
    "k0",
    "lambda0",
    "case",
    "overlap",
    "overlap_analytic",
    "regular_value",
    "multiplicity_before",
    "multiplicity_after",
    "oracle_multiplicity",
    "perturbed_within_window",
    "nearest_perturbed_distance",
    "half_gap",
    "removed",
];

impl ModeEntry {
    fn row(&self) -> Vec<String> {
        vec![
            self.mode.to_string(),
            num(self.k0),
            num(self.lambda0),
            self.case.clone(),
            num(self.overlap),
            num(self.overlap_analytic),
            num(self.regular_value),
            self.multiplicity_before.to_string(),
            self.multiplicity_after.to_string(),
            self.oracle_multiplicity.to_string(),
            self.perturbed_within_window.to_string(),
            num(self.nearest_perturbed_distance),
            num(self.half_gap),
            self.removed.to_string(),
        ]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootEntry {
    pub lambda: f64,
    /// `1/√λ` for `λ > 0`.
    pub k: Option<f64>,
    /// `‖Bv − λv‖` for the eigenvector built from the root.
    pub residual: f64,
}

pub const ROOT_COLUMNS: [&str; 3] = ["lambda", "k", "residual"];

impl RootEntry {
    fn row(&self) -> Vec<String> {
        vec![num(self.lambda), num(self.k), num(self.residual)]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyEntry {
    pub kind: &'static str,
    pub lambda: f64,
    pub case: Option<String>,
    pub overlap: Option<f64>,
    pub regular_value: Option<f64>,
    pub multiplicity_before: usize,
    pub multiplicity_after: usize,
    pub oracle_multiplicity: usize,
    pub projector_frobenius_error: Option<f64>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl From<&OracleCheck> for VerifyEntry {
    fn from(c: &OracleCheck) -> Self {
        Self {
            kind: c.kind.as_str(),
            lambda: c.lambda,
            case: c.case.map(|t| t.as_str().to_owned()),
            overlap: c.overlap,
            regular_value: c.regular_value,
            multiplicity_before: c.multiplicity_before,
            multiplicity_after: c.multiplicity_after,
            oracle_multiplicity: c.oracle_multiplicity,
            projector_frobenius_error: c.projector_frobenius_error,
            passed: c.passed,
            error: c.error.as_ref().map(|e| e.to_string()),
        }
    }
}

pub const VERIFY_COLUMNS: [&str; 11] = [
    "kind",
    "lambda",
    "case",
    "overlap",
    "regular_value",
    "multiplicity_before",
    "multiplicity_after",
    "oracle_multiplicity",
    "projector_frobenius_error",
    "passed",
    "error",
];

impl VerifyEntry {
    fn row(&self) -> Vec<String> {
        vec![
            self.kind.to_owned(),
            num(self.lambda),
            self.case.clone().unwrap_or_default(),
            num(self.overlap),
            num(self.regular_value),
            self.multiplicity_before.to_string(),
            self.multiplicity_after.to_string(),
            self.oracle_multiplicity.to_string(),
            num(self.projector_frobenius_error),
            self.passed.to_string(),
            self.error.clone().unwrap_or_default(),
        ]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    /// Lower end of the checked spectral window, when restricted.
    pub window_lower_bound: Option<f64>,
    pub checks: Vec<VerifyEntry>,
}

impl VerifyReport {
    pub fn new(r: &OracleReport, window_lower_bound: Option<f64>) -> Self {
        Self {
            passed: r.passed,
            window_lower_bound,
            checks: r.checks.iter().map(VerifyEntry::from).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CurvePoint {
    pub k: Option<f64>,
    pub lambda: f64,
    pub w: f64,
}

pub const CURVE_COLUMNS: [&str; 3] = ["k", "lambda", "w"];
pub const SAMPLE_COLUMNS: [&str; 2] = ["x", "value"];

#[derive(Clone, Debug, Serialize)]
pub struct Samples {
    pub name: String,
    pub x: Vec<f64>,
    pub value: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub kind: &'static str,
    pub seed: Option<u64>,
    pub cluster_tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolved_modes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classify: Option<Vec<ClassifyEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modes: Option<Vec<ModeEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<RootEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub secular_curve: Option<Vec<CurvePoint>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub samples: Vec<Samples>,
    pub passed: bool,
}

impl Report {
    /// Writes `report.json`, or one CSV per section. Curves and samples are
    /// also written as CSV in JSON mode, for plotting.
    pub fn write(
        &self,
        dir: &Path,
        format: crate::scenario::Format,
    ) -> Result<Vec<PathBuf>, CliError> {
        std::fs::create_dir_all(dir)?;
        let mut files = Vec::new();
        let mut put = |name: &str| {
            let p = dir.join(name);
            files.push(p.clone());
            p
        };
        if format == crate::scenario::Format::Json {
            write_json(&put("report.json"), self)?;
        } else {
            if let Some(c) = &self.classify {
                write_csv(
                    &put("classify.csv"),
                    &CLASSIFY_COLUMNS,
                    c.iter().map(ClassifyEntry::row),
                )?;
            }
            if let Some(m) = &self.modes {
                write_csv(
                    &put("modes.csv"),
                    &MODE_COLUMNS,
                    m.iter().map(ModeEntry::row),
                )?;
            }
            if let Some(r) = &self.roots {
                write_csv(
                    &put("roots.csv"),
                    &ROOT_COLUMNS,
                    r.iter().map(RootEntry::row),
                )?;
            }
            if let Some(v) = &self.verify {
                write_csv(
                    &put("verify.csv"),
                    &VERIFY_COLUMNS,
                    v.checks.iter().map(VerifyEntry::row),
                )?;
            }
        }
        if let Some(curve) = &self.secular_curve {
            let rows = curve
                .iter()
                .map(|p| vec![num(p.k), num(p.lambda), num(p.w)]);
            write_csv(&put("secular_curve.csv"), &CURVE_COLUMNS, rows)?;
        }
        for s in &self.samples {
            let rows =
                s.x.iter()
                    .zip(&s.value)
                    .map(|(&x, &v)| vec![num(x), num(v)]);
            write_csv(&put(&format!("{}.csv", s.name)), &SAMPLE_COLUMNS, rows)?;
        }
        Ok(files)
    }
}
