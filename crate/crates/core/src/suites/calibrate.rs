//! Empirical choice of the bracket and Lemma sign conventions.

use serde::Serialize;

use super::residuals::{lemma_from, lry_from, mc_from};
use super::sampling::{draw_samples, SamplePlan, DEFAULT_RADIUS};
use super::DEFAULT_TOLERANCE;
use crate::atlas::LoopChart;
use crate::tensors::{structure_constants, ConventionLedger, PointTensors, Sign};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibrationSettings {
    pub seed: u64,
    pub count: usize,
    pub radius: f64,
    pub tolerance: f64,
}

impl Default for CalibrationSettings {
    fn default() -> Self {
        Self {
            seed: 42,
            count: 20,
            radius: DEFAULT_RADIUS,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

/// Max residuals of the convention-dependent families on one loop.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoopCalibration {
    pub loop_spec: String,
    #[serde(serialize_with = "crate::report::sci")]
    pub mc: f64,
    #[serde(serialize_with = "crate::report::sci")]
    pub lry: f64,
    #[serde(serialize_with = "crate::report::sci")]
    pub lemma: f64,
}

impl LoopCalibration {
    fn passes(&self, tolerance: f64) -> bool {
        self.mc <= tolerance && self.lry <= tolerance && self.lemma <= tolerance
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CalibrationRow {
    pub ledger: ConventionLedger,
    pub loops: Vec<LoopCalibration>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CalibrationTable {
    #[serde(serialize_with = "crate::report::sci")]
    pub tolerance: f64,
    pub rows: Vec<CalibrationRow>,
}

impl CalibrationTable {
    pub fn passing(&self) -> impl Iterator<Item = &CalibrationRow> {
        self.rows.iter().filter(|r| r.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Calibration {
    pub ledger: ConventionLedger,
    pub table: CalibrationTable,
}

/// Tries all four `(bracket_sign, lemma_sign)` assignments and returns the
/// one under which MC, LRY and LEMMA pass on every loop.
///
/// Fails when zero or several assignments pass; the error carries the full
/// table. An all-abelian set is degenerate: every assignment passes.
pub fn calibrate_conventions(
    loops: &[LoopChart],
    settings: &CalibrationSettings,
) -> Result<Calibration> {
    // Tensors do not depend on the conventions; compute them once per point.
    let mut per_loop = Vec::with_capacity(loops.len());
    for l in loops {
        let plan = SamplePlan::new(l.name(), settings.seed, settings.count, settings.radius);
        let points = draw_samples(l, &plan)?
            .iter()
            .map(|s| PointTensors::compute(l, &s.g))
            .collect::<Result<Vec<_>>>()?;
        let constants = Sign::BOTH.map(|s| structure_constants(l, s));
        per_loop.push((l, points, constants));
    }

    let rows: Vec<CalibrationRow> = ConventionLedger::all()
        .map(|ledger| {
            let loops: Vec<LoopCalibration> = per_loop
                .iter()
                .map(|(l, points, constants)| {
                    let c = match ledger.bracket_sign {
                        Sign::Plus => &constants[0],
                        Sign::Minus => &constants[1],
                    };
                    let worst = |f: &dyn Fn(&PointTensors) -> f64| {
                        points.iter().map(f).fold(0.0f64, |m, r| {
                            if r.is_nan() || m.is_nan() {
                                f64::NAN
                            } else {
                                m.max(r)
                            }
                        })
                    };
                    LoopCalibration {
                        loop_spec: l.name().to_string(),
                        mc: worst(&|t| mc_from(t, c).max_abs()),
                        lry: worst(&|t| lry_from(t, c).max_abs()),
                        lemma: worst(&|t| lemma_from(t, c, ledger).max_abs()),
                    }
                })
                .collect();
            let pass = loops.iter().all(|r| r.passes(settings.tolerance));
            CalibrationRow {
                ledger,
                loops,
                pass,
            }
        })
        .collect();

    let table = CalibrationTable {
        tolerance: settings.tolerance,
        rows,
    };
    let passing: Vec<ConventionLedger> = table.passing().map(|r| r.ledger).collect();
    match passing.as_slice() {
        [ledger] => Ok(Calibration {
            ledger: *ledger,
            table,
        }),
        _ => Err(Error::Calibration {
            passing: passing.len(),
            table: Box::new(table),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loops(specs: &[&str]) -> Vec<LoopChart> {
        specs
            .iter()
            .map(|s| LoopChart::builtin(s).unwrap())
            .collect()
    }

    #[test]
    fn abelian_only_is_degenerate() {
        let res = calibrate_conventions(&loops(&["abelian:n=3"]), &CalibrationSettings::default());
        match res {
            Err(Error::Calibration { passing, table }) => {
                assert_eq!(passing, 4);
                assert_eq!(table.rows.len(), 4);
            }
            other => panic!("expected degenerate calibration, got {other:?}"),
        }
    }

    #[test]
    fn affine_and_quaternion_pick_one() {
        let cal = calibrate_conventions(
            &loops(&["affine", "quaternion"]),
            &CalibrationSettings::default(),
        )
        .unwrap();
        assert_eq!(cal.ledger, ConventionLedger::CALIBRATED);
        assert_eq!(cal.table.passing().count(), 1);
    }
}
