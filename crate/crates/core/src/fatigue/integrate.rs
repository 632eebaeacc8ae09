//! Fixed-step RK4 integration for sampled, time-varying loads.

use alloc::vec::Vec;

use super::{FatigueParams, SECONDS_PER_MINUTE};
use super::schedule::{CapacityTrajectory, Sample};
use crate::error::{Error, Result};

fn rate(p: &FatigueParams, load: f64, c: f64) -> f64 {
    if load > 0.0 {
        -p.fatigue_rate_per_min() * c * load / p.max_strength_nm()
    } else {
        p.recovery_per_min() * (p.max_strength_nm() - c)
    }
}

/// Integrates a fresh joint through `loads`, where `loads[i]` (N·m) holds on
/// `[i·dt, (i+1)·dt)`. The fatigue equation drives steps with a positive load,
/// the recovery equation steps with zero load.
///
/// Integration always runs to the end of the samples; `failure_time_s` marks
/// the first crossing of capacity below load, linearly interpolated inside
/// the step. Boundaries are recorded wherever the load value changes.
pub fn integrate_variable_load(p: &FatigueParams, loads: &[f64], dt_s: f64) -> Result<CapacityTrajectory> {
    if !(dt_s.is_finite() && dt_s > 0.0) {
        return Err(Error::InvalidInput(alloc::format!("dt_s must be positive, got {dt_s}")));
    }
    if let Some(&bad) = loads.iter().find(|l| !(l.is_finite() && **l >= 0.0)) {
        return Err(Error::InvalidLoad(bad));
    }
    let h = dt_s / SECONDS_PER_MINUTE;
    let mut c = p.max_strength_nm();
    let start = Sample { t_s: 0.0, capacity_nm: c };
    let mut samples = Vec::with_capacity(loads.len() + 1);
    samples.push(start);
    let mut boundaries = alloc::vec![start];
    let mut failure_time_s = None;

    for (i, &load) in loads.iter().enumerate() {
        let t0 = i as f64 * dt_s;
        let k1 = rate(p, load, c);
        let k2 = rate(p, load, c + 0.5 * h * k1);
        let k3 = rate(p, load, c + 0.5 * h * k2);
        let k4 = rate(p, load, c + h * k3);
        let next = c + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if failure_time_s.is_none() && load > 0.0 {
            if c <= load {
                failure_time_s = Some(t0);
            } else if next <= load {
                let frac = (c - load) / (c - next);
                failure_time_s = Some(t0 + frac * dt_s);
            }
        }
        c = next;
        let sample = Sample { t_s: (i + 1) as f64 * dt_s, capacity_nm: c };
        samples.push(sample);
        if loads.get(i + 1).is_none_or(|&n| n != load) {
            boundaries.push(sample);
        }
    }
    Ok(CapacityTrajectory {
        max_strength_nm: p.max_strength_nm(),
        samples,
        boundaries,
        failure_time_s,
        horizon_s: loads.len() as f64 * dt_s,
    })
}
