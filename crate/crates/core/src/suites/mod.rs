//! Identity families evaluated over sampled points.

mod calibrate;
mod residuals;
mod sampling;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::atlas::{moufang_residual, LoopChart};
use crate::tensors::{aux_tensors, structure_constants, ConventionLedger, PointTensors};
use crate::{Error, Result};

pub use calibrate::{
    calibrate_conventions, Calibration, CalibrationRow, CalibrationSettings, CalibrationTable,
    LoopCalibration,
};
pub use residuals::*;
pub use sampling::{draw_samples, Sample, SamplePlan, DEFAULT_RADIUS, MAX_SPHERE_RADIUS};

/// Default absolute tolerance on residual entries.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Family {
    Gle,
    Constraint,
    Mc,
    Lry,
    Lemma,
    Gle2,
    Integrability,
    Moufang,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Gle,
        Family::Constraint,
        Family::Mc,
        Family::Lry,
        Family::Lemma,
        Family::Gle2,
        Family::Integrability,
        Family::Moufang,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gle => "GLE",
            Family::Constraint => "CONSTRAINT",
            Family::Mc => "MC",
            Family::Lry => "LRY",
            Family::Lemma => "LEMMA",
            Family::Gle2 => "GLE2",
            Family::Integrability => "INTEGRABILITY",
            Family::Moufang => "MOUFANG",
        }
    }

    /// Families that only look at `g`.
    pub fn is_single_point(self) -> bool {
        matches!(
            self,
            Family::Constraint | Family::Mc | Family::Lry | Family::Lemma
        )
    }

    /// Parses `all` or a comma-separated list of family names.
    pub fn parse_list(list: &str) -> Result<Vec<Family>> {
        if list.trim().eq_ignore_ascii_case("all") {
            return Ok(Family::ALL.to_vec());
        }
        let mut out: Vec<Family> = list.split(',').map(str::parse).collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// Aggregated residuals of one family over a sample set.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyResidual {
    pub family: Family,
    /// Max-abs residual entry of each sample, in sample order.
    pub per_sample: Vec<f64>,
    pub max: f64,
    pub mean: f64,
    pub argmax: usize,
}

impl FamilyResidual {
    fn aggregate(family: Family, per_sample: Vec<f64>) -> Self {
        let mut argmax = 0;
        let mut max = f64::NEG_INFINITY;
        for (i, &r) in per_sample.iter().enumerate() {
            if r.is_nan() {
                argmax = i;
                max = f64::NAN;
                break;
            }
            if r > max {
                max = r;
                argmax = i;
            }
        }
        let mean = per_sample.iter().sum::<f64>() / per_sample.len() as f64;
        Self {
            family,
            per_sample,
            max,
            mean,
            argmax,
        }
    }

    /// `max ≤ tolerance`; NaN never passes.
    pub fn passes(&self, tolerance: f64) -> bool {
        self.max <= tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub plan: SamplePlan,
    pub tolerance: f64,
    pub ledger: ConventionLedger,
    pub samples: Vec<Sample>,
    pub families: Vec<FamilyResidual>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.families.iter().all(|f| f.passes(self.tolerance))
    }

    pub fn family(&self, family: Family) -> Option<&FamilyResidual> {
        self.families.iter().find(|f| f.family == family)
    }
}

/// Per-sample max-abs residual of each requested family, in `families` order.
fn evaluate_sample(
    loop_: &LoopChart,
    sample: &Sample,
    families: &[Family],
    ledger: ConventionLedger,
    constants: &crate::tensors::StructureConstants,
) -> Result<Vec<f64>> {
    let wants = |f: Family| families.contains(&f);
    let (g, h) = (&sample.g[..], &sample.h[..]);

    let needs_point = [Family::Mc, Family::Lry, Family::Lemma]
        .into_iter()
        .any(wants);
    let needs_pair = wants(Family::Gle2) || wants(Family::Integrability);
    let needs_jets = wants(Family::Gle) || needs_pair;

    let jets = if needs_jets {
        Some(ProductJets::compute(loop_, g, h)?)
    } else {
        None
    };
    let point_g = if needs_point || needs_pair {
        Some(PointTensors::compute(loop_, g)?)
    } else {
        None
    };
    let pair = match (&jets, needs_pair) {
        (Some(j), true) => Some((
            PointTensors::compute(loop_, h)?,
            PointTensors::compute(loop_, &j.gh)?,
        )),
        _ => None,
    };

    families
        .iter()
        .map(|&family| {
            Ok(match family {
                Family::Constraint => max_abs(constraint_from(&aux_tensors(loop_, g)?).iter()),
                Family::Gle => {
                    let jets = jets.as_ref().expect("jets computed for GLE");
                    let (at_g, at_h, at_gh) = match (&point_g, &pair) {
                        (Some(pg), Some((ph, pgh))) => {
                            (pg.aux.clone(), ph.aux.clone(), pgh.aux.clone())
                        }
                        _ => (
                            aux_tensors(loop_, g)?,
                            aux_tensors(loop_, h)?,
                            aux_tensors(loop_, &jets.gh)?,
                        ),
                    };
                    gle_from(jets, &at_g, &at_h, &at_gh).max_abs()
                }
                Family::Mc => {
                    mc_from(point_g.as_ref().expect("point tensors"), constants).max_abs()
                }
                Family::Lry => {
                    lry_from(point_g.as_ref().expect("point tensors"), constants).max_abs()
                }
                Family::Lemma => {
                    lemma_from(point_g.as_ref().expect("point tensors"), constants, ledger)
                        .max_abs()
                }
                Family::Gle2 => {
                    let (ph, pgh) = pair.as_ref().expect("pair tensors");
                    gle2_from(
                        jets.as_ref().expect("jets"),
                        point_g.as_ref().expect("point"),
                        ph,
                        pgh,
                    )
                    .max_abs()
                }
                Family::Integrability => {
                    let (ph, pgh) = pair.as_ref().expect("pair tensors");
                    max_abs(
                        integrability_from(
                            jets.as_ref().expect("jets"),
                            point_g.as_ref().expect("point"),
                            ph,
                            pgh,
                        )
                        .iter(),
                    )
                }
                Family::Moufang => {
                    max_abs(moufang_residual(loop_, g, &sample.h, &sample.k)?.iter())
                }
            })
        })
        .collect()
}

/// Evaluates `families` over the samples of `plan`.
///
/// Samples are evaluated in parallel; aggregation runs over the results in
/// sample order, so the outcome is bit-identical for a fixed plan.
pub fn run_suite(
    plan: &SamplePlan,
    families: &[Family],
    tolerance: f64,
    ledger: ConventionLedger,
) -> Result<SuiteOutcome> {
    let loop_ = LoopChart::builtin(&plan.loop_spec)?;
    run_suite_on(&loop_, plan, families, tolerance, ledger)
}

pub fn run_suite_on(
    loop_: &LoopChart,
    plan: &SamplePlan,
    families: &[Family],
    tolerance: f64,
    ledger: ConventionLedger,
) -> Result<SuiteOutcome> {
    if tolerance.is_nan() || tolerance < 0.0 {
        return Err(Error::InvalidPlan(format!(
            "tolerance must be nonnegative, got {tolerance}"
        )));
    }
    let samples = draw_samples(loop_, plan)?;
    let constants = structure_constants(loop_, ledger.bracket_sign);
    let rows: Vec<Vec<f64>> = samples
        .par_iter()
        .map(|s| evaluate_sample(loop_, s, families, ledger, &constants))
        .collect::<Result<_>>()?;

    let families = families
        .iter()
        .enumerate()
        .map(|(col, &family)| {
            FamilyResidual::aggregate(family, rows.iter().map(|r| r[col]).collect())
        })
        .collect();

    Ok(SuiteOutcome {
        plan: plan.clone(),
        tolerance,
        ledger,
        samples,
        families,
    })
}
