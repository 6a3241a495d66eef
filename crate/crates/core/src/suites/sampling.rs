//! Seeded, order-independent sampling of point triples in a ball.
//!
//! Sample `i` is drawn from its own ChaCha stream (`stream = i`), so the set
//! of samples depends only on `(seed, count, radius, loop)` and never on how
//! evaluation is scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::atlas::{moufang_residual, LoopChart, LoopPoint};
use crate::{Error, Result};

/// Largest radius accepted for sphere charts.
pub const MAX_SPHERE_RADIUS: f64 = 0.3;

/// Default sampling radius, well inside the chart-exit boundary.
pub const DEFAULT_RADIUS: f64 = 0.2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SamplePlan {
    pub seed: u64,
    pub count: usize,
    pub radius: f64,
    pub loop_spec: String,
}

impl SamplePlan {
    pub fn new(loop_spec: impl Into<String>, seed: u64, count: usize, radius: f64) -> Self {
        Self {
            seed,
            count,
            radius,
            loop_spec: loop_spec.into(),
        }
    }

    pub fn validate(&self, loop_: &LoopChart) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidPlan("sample count must be at least 1".into()));
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::InvalidPlan(format!(
                "radius must be positive and finite, got {}",
                self.radius
            )));
        }
        if loop_.is_sphere_chart() && self.radius > MAX_SPHERE_RADIUS {
            return Err(Error::InvalidPlan(format!(
                "radius {} exceeds {MAX_SPHERE_RADIUS} for sphere chart `{loop_}`",
                self.radius
            )));
        }
        Ok(())
    }
}

/// A point triple; one-point families use `g`, pair families `(g, h)`, the
/// Moufang identity all three.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    pub g: LoopPoint,
    pub h: LoopPoint,
    pub k: LoopPoint,
}

fn ball_point<R: Rng>(rng: &mut R, dim: usize, radius: f64) -> LoopPoint {
    loop {
        let x: Vec<f64> = (0..dim)
            .map(|_| rng.random_range(-radius..radius))
            .collect();
        if x.iter().map(|c| c * c).sum::<f64>() <= radius * radius {
            return LoopPoint(x);
        }
    }
}

/// Whether every product any family evaluates stays in the chart.
fn admissible(loop_: &LoopChart, s: &Sample) -> Result<bool> {
    let checks = loop_
        .product(&s.g, &s.h)
        .and_then(|_| moufang_residual(loop_, &s.g, &s.h, &s.k));
    match checks {
        Ok(_) => Ok(true),
        Err(Error::ChartExit { .. } | Error::Domain { .. }) => Ok(false),
        Err(other) => Err(other),
    }
}

/// Draws `plan.count` admissible samples. Rejected draws count toward a cap
/// of `10 × count` attempts.
pub fn draw_samples(loop_: &LoopChart, plan: &SamplePlan) -> Result<Vec<Sample>> {
    plan.validate(loop_)?;
    let cap = 10 * plan.count;
    let mut attempts = 0;
    let mut out = Vec::with_capacity(plan.count);
    let n = loop_.dim();
    for i in 0..plan.count {
        let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
        rng.set_stream(i as u64);
        loop {
            attempts += 1;
            if attempts > cap {
                return Err(Error::SamplingExhausted {
                    attempts: cap,
                    accepted: out.len(),
                    requested: plan.count,
                });
            }
            let s = Sample {
                g: ball_point(&mut rng, n, plan.radius),
                h: ball_point(&mut rng, n, plan.radius),
                k: ball_point(&mut rng, n, plan.radius),
            };
            if admissible(loop_, &s)? {
                out.push(s);
                break;
            }
        }
    }
    Ok(out)
}
