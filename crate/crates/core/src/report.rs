//! Machine-readable reports.
//!
//! Every floating-point number is written in scientific notation with 17
//! significant digits (`{:.16e}`), which round-trips `f64` exactly and keeps
//! reports bit-identical across runs. Non-finite values are written as
//! `null` in JSON and as `NaN`/`inf` in CSV.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use ndarray::{Array2, Array3};
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::atlas::{CompositionAlgebra, LoopChart, MultiplicationTable};
use crate::suites::{Calibration, CalibrationTable, SuiteOutcome};
use crate::tensors::{structure_constants, ConventionLedger, PointTensors};
use crate::{Error, Result};

pub const TOOL: &str = "moufang";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `f64` that serializes with 17 significant digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sci(pub f64);

pub fn fmt_sci(x: f64) -> String {
    format!("{x:.16e}")
}

impl fmt::Display for Sci {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_sci(self.0))
    }
}

impl Serialize for Sci {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            RawValue::from_string(fmt_sci(self.0))
                .map_err(serde::ser::Error::custom)?
                .serialize(serializer)
        } else {
            serializer.serialize_none()
        }
    }
}

/// `serialize_with` adapter for plain `f64` fields.
pub fn sci<S: Serializer>(x: &f64, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    Sci(*x).serialize(serializer)
}

fn vec_sci(v: &[f64]) -> Vec<Sci> {
    v.iter().copied().map(Sci).collect()
}

fn matrix_sci(m: &Array2<f64>) -> Vec<Vec<Sci>> {
    m.rows()
        .into_iter()
        .map(|r| r.iter().copied().map(Sci).collect())
        .collect()
}

fn tensor_sci(t: &Array3<f64>) -> Vec<Vec<Vec<Sci>>> {
    t.outer_iter().map(|m| matrix_sci(&m.to_owned())).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}` (expected json or csv)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyReport {
    pub name: String,
    pub max: Sci,
    pub mean: Sci,
    pub pass: bool,
    pub argmax_index: usize,
    pub argmax_g: Vec<Sci>,
    /// `null` for families that only use `g`.
    pub argmax_h: Option<Vec<Sci>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub argmax_k: Option<Vec<Sci>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub tool: String,
    pub version: String,
    pub loop_spec: String,
    pub seed: u64,
    pub radius: Sci,
    pub samples: usize,
    pub tolerance: Sci,
    pub conventions: ConventionLedger,
    /// The integrability condition is evaluated with `∂(gh)/∂h` on its
    /// `h`-term.
    pub integrability_h_term_corrected: bool,
    pub families: Vec<FamilyReport>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn from_outcome(outcome: &SuiteOutcome) -> Self {
        let families = outcome
            .families
            .iter()
            .map(|f| {
                let s = &outcome.samples[f.argmax];
                FamilyReport {
                    name: f.family.name().to_string(),
                    max: Sci(f.max),
                    mean: Sci(f.mean),
                    pass: f.passes(outcome.tolerance),
                    argmax_index: f.argmax,
                    argmax_g: vec_sci(&s.g),
                    argmax_h: (!f.family.is_single_point()).then(|| vec_sci(&s.h)),
                    argmax_k: (f.family == crate::suites::Family::Moufang).then(|| vec_sci(&s.k)),
                }
            })
            .collect();
        Self {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            loop_spec: outcome.plan.loop_spec.clone(),
            seed: outcome.plan.seed,
            radius: Sci(outcome.plan.radius),
            samples: outcome.plan.count,
            tolerance: Sci(outcome.tolerance),
            conventions: outcome.ledger,
            integrability_h_term_corrected: true,
            families,
            pass: outcome.passed(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// Flat CSV with columns `record,family,field,index,value`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["record", "family", "field", "index", "value"])?;
        let meta = [
            ("tool", self.tool.clone()),
            ("version", self.version.clone()),
            ("loop_spec", self.loop_spec.clone()),
            ("seed", self.seed.to_string()),
            ("radius", self.radius.to_string()),
            ("samples", self.samples.to_string()),
            ("tolerance", self.tolerance.to_string()),
            (
                "bracket_sign",
                sign_str(self.conventions.bracket_sign.value()),
            ),
            ("lemma_sign", sign_str(self.conventions.lemma_sign.value())),
            (
                "integrability_h_term_corrected",
                self.integrability_h_term_corrected.to_string(),
            ),
            ("pass", self.pass.to_string()),
        ];
        for (field, value) in meta {
            w.write_record(["meta", "", field, "", &value])?;
        }
        for f in &self.families {
            let mut row = |field: &str, index: &str, value: String| {
                w.write_record(["family", &f.name, field, index, &value])
            };
            row("max", "", f.max.to_string())?;
            row("mean", "", f.mean.to_string())?;
            row("pass", "", f.pass.to_string())?;
            row("argmax_index", "", f.argmax_index.to_string())?;
            for (field, coords) in [
                ("argmax_g", Some(&f.argmax_g)),
                ("argmax_h", f.argmax_h.as_ref()),
                ("argmax_k", f.argmax_k.as_ref()),
            ] {
                for (i, x) in coords.into_iter().flatten().enumerate() {
                    row(field, &i.to_string(), x.to_string())?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn write(&self, path: &Path, format: Format) -> Result<()> {
        std::fs::write(path, self.render(format)?)?;
        Ok(())
    }
}

fn sign_str(v: f64) -> String {
    if v > 0.0 { "1" } else { "-1" }.to_string()
}

const TENSOR_LAYOUT: &str = "Upper index first, then lower indices in order: u[s][j] = u^s_j, \
c[i][j][k] = C^i_jk, u_jk[s][j][k] = u^s_jk. u and v generate left and right translations, \
w = -(u + v); y_jk = (u_jk + v_jk + w_jk) / 6; lr_jk and rl_jk are the coefficients of \
[L_x, R_y] and [R_x, L_y].";

#[derive(Debug, Clone, Serialize)]
pub struct TensorDump {
    pub tool: String,
    pub version: String,
    pub loop_spec: String,
    pub layout: String,
    pub point: Vec<Sci>,
    pub bracket_sign: crate::tensors::Sign,
    pub u: Vec<Vec<Sci>>,
    pub v: Vec<Vec<Sci>>,
    pub w: Vec<Vec<Sci>>,
    pub c: Vec<Vec<Vec<Sci>>>,
    pub u_jk: Vec<Vec<Vec<Sci>>>,
    pub v_jk: Vec<Vec<Vec<Sci>>>,
    pub w_jk: Vec<Vec<Vec<Sci>>>,
    pub y_jk: Vec<Vec<Vec<Sci>>>,
    pub lr_jk: Vec<Vec<Vec<Sci>>>,
    pub rl_jk: Vec<Vec<Vec<Sci>>>,
}

impl TensorDump {
    pub fn compute(loop_: &LoopChart, point: &[f64], ledger: ConventionLedger) -> Result<Self> {
        let t = PointTensors::compute(loop_, point)?;
        let c = structure_constants(loop_, ledger.bracket_sign);
        let s = &t.secondary;
        Ok(Self {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            loop_spec: loop_.name().to_string(),
            layout: TENSOR_LAYOUT.to_string(),
            point: vec_sci(point),
            bracket_sign: ledger.bracket_sign,
            u: matrix_sci(&t.aux.u),
            v: matrix_sci(&t.aux.v),
            w: matrix_sci(&t.aux.w),
            c: tensor_sci(&c.c),
            u_jk: tensor_sci(&s.u_jk),
            v_jk: tensor_sci(&s.v_jk),
            w_jk: tensor_sci(&s.w_jk),
            y_jk: tensor_sci(&s.y_jk),
            lr_jk: tensor_sci(&s.lr_jk),
            rl_jk: tensor_sci(&s.rl_jk),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CalibrationReport {
    pub tool: String,
    pub version: String,
    pub loops: Vec<String>,
    pub unique: bool,
    pub ledger: Option<ConventionLedger>,
    pub table: CalibrationTable,
}

impl CalibrationReport {
    pub fn from_result(loops: &[LoopChart], result: &Result<Calibration>) -> Option<Self> {
        let (ledger, table) = match result {
            Ok(cal) => (Some(cal.ledger), cal.table.clone()),
            Err(Error::Calibration { table, .. }) => (None, (**table).clone()),
            Err(_) => return None,
        };
        Some(Self {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            loops: loops.iter().map(|l| l.name().to_string()).collect(),
            unique: ledger.is_some(),
            ledger,
            table,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// The basis multiplication table, `e_i e_j = sign · e_index`.
pub fn table_json(algebra: CompositionAlgebra) -> Result<String> {
    #[derive(Serialize)]
    struct TableDump<'a> {
        algebra: CompositionAlgebra,
        convention: &'static str,
        #[serde(flatten)]
        table: &'a MultiplicationTable,
    }
    let dump = TableDump {
        algebra,
        convention: "Cayley-Dickson doubling (a,b)(c,d) = (ac - conj(d) b, da + b conj(c)); \
                     e_i e_j = sign[i][j] * e_{index[i][j]}; e_0 = 1",
        table: algebra.table(),
    };
    Ok(serde_json::to_string_pretty(&dump)? + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(fmt_sci(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_sci(0.0), "0.0000000000000000e0");
        assert_eq!(fmt_sci(-2.0), "-2.0000000000000000e0");
        for x in [0.1, 1.0 / 3.0, 6.02e23, -1e-300, f64::MIN_POSITIVE] {
            assert_eq!(fmt_sci(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }

    #[test]
    fn sci_serializes_as_json_number() {
        let v = serde_json::to_string(&vec![Sci(0.5), Sci(f64::NAN)]).unwrap();
        assert_eq!(v, "[5.0000000000000000e-1,null]");
        let back: Vec<Option<f64>> = serde_json::from_str(&v).unwrap();
        assert_eq!(back, vec![Some(0.5), None]);
    }

    #[test]
    fn format_parsing() {
        assert_eq!("JSON".parse::<Format>().unwrap(), Format::Json);
        assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
        assert!("xml".parse::<Format>().is_err());
    }

    #[test]
    fn quaternion_table_dump() {
        let v: serde_json::Value =
            serde_json::from_str(&table_json(CompositionAlgebra::Quaternion).unwrap()).unwrap();
        assert_eq!(v["index"][1][2], 3);
        assert_eq!(v["sign"][1][2], 1);
        assert_eq!(v["sign"][2][1], -1);
    }
}
