//! Joint fatigue and recovery.
//!
//! Under a static moment load the current capacity decays as
//! `dC/dt = -k · (C / Γ_max) · Γ_load`, and at rest it recovers as
//! `dC/dt = R · (Γ_max − C)`. The fatigue index is `(Γ_max − C) / Γ_max`.
//!
//! **Units.** Fatigue resistance `m = 1/k` is in minutes and the recovery
//! rate `R` in 1/min. Every public function takes and returns time in
//! seconds and converts at the boundary.

mod integrate;
mod schedule;

use crate::error::{Error, Result};

pub use integrate::integrate_variable_load;
pub use schedule::{
    endurance_time, endurance_time_with, simulate_schedule, CapacityTrajectory, Endurance, EnduranceResult, Phase,
    Sample, ScheduleSegment, ScheduleTemplate, SimulationOptions, TemplateSegment, WorkLoad, WorkRestSchedule,
};

pub const SECONDS_PER_MINUTE: f64 = 60.0;

/// Capacity, fatigue and recovery parameters of one joint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FatigueParams {
    max_strength_nm: f64,
    resistance_min: f64,
    recovery_per_min: f64,
}

impl FatigueParams {
    /// `resistance_min` is the fatigue resistance m (min); `recovery_per_min`
    /// the recovery rate R (1/min).
    pub fn new(max_strength_nm: f64, resistance_min: f64, recovery_per_min: f64) -> Result<Self> {
        if !(max_strength_nm.is_finite() && max_strength_nm > 0.0) {
            return Err(Error::InvalidStrength(max_strength_nm));
        }
        if !(resistance_min.is_finite() && resistance_min > 0.0) {
            return Err(Error::InvalidParameter { name: "fatigue_resistance", value: resistance_min });
        }
        if !(recovery_per_min.is_finite() && recovery_per_min >= 0.0) {
            return Err(Error::InvalidParameter { name: "recovery_rate", value: recovery_per_min });
        }
        Ok(FatigueParams { max_strength_nm, resistance_min, recovery_per_min })
    }

    /// Same as [`FatigueParams::new`] but from the fatigue rate k (1/min).
    pub fn from_fatigue_rate(max_strength_nm: f64, fatigue_rate_per_min: f64, recovery_per_min: f64) -> Result<Self> {
        if !(fatigue_rate_per_min.is_finite() && fatigue_rate_per_min > 0.0) {
            return Err(Error::InvalidParameter { name: "fatigue_rate", value: fatigue_rate_per_min });
        }
        Self::new(max_strength_nm, 1.0 / fatigue_rate_per_min, recovery_per_min)
    }

    pub fn max_strength_nm(&self) -> f64 {
        self.max_strength_nm
    }

    pub fn resistance_min(&self) -> f64 {
        self.resistance_min
    }

    pub fn fatigue_rate_per_min(&self) -> f64 {
        1.0 / self.resistance_min
    }

    pub fn recovery_per_min(&self) -> f64 {
        self.recovery_per_min
    }

    /// Copy with a different maximum strength.
    pub fn with_max_strength(&self, max_strength_nm: f64) -> Result<Self> {
        Self::new(max_strength_nm, self.resistance_min, self.recovery_per_min)
    }

    pub(crate) fn check_capacity(&self, capacity_nm: f64) -> Result<()> {
        if capacity_nm > 0.0 && capacity_nm <= self.max_strength_nm {
            Ok(())
        } else {
            Err(Error::InvalidState { value: capacity_nm, max: self.max_strength_nm })
        }
    }
}

pub(crate) fn check_load(load_nm: f64) -> Result<()> {
    if load_nm.is_finite() && load_nm >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidLoad(load_nm))
    }
}

fn check_time(t_s: f64) -> Result<()> {
    if t_s.is_finite() && t_s >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(alloc::format!("time {t_s} s must be finite and non-negative")))
    }
}

/// Capacity after holding a constant load for `t_s` seconds from `c0_nm`.
pub fn fatigue_closed_form(c0_nm: f64, p: &FatigueParams, load_nm: f64, t_s: f64) -> Result<f64> {
    p.check_capacity(c0_nm)?;
    check_load(load_nm)?;
    check_time(t_s)?;
    Ok(decay(c0_nm, p, load_nm, t_s))
}

/// Capacity after resting for `t_s` seconds from `c0_nm`.
pub fn recovery_closed_form(c0_nm: f64, p: &FatigueParams, t_s: f64) -> Result<f64> {
    p.check_capacity(c0_nm)?;
    check_time(t_s)?;
    Ok(recover(c0_nm, p, t_s))
}

pub(crate) fn decay(c0: f64, p: &FatigueParams, load: f64, t_s: f64) -> f64 {
    let t_min = t_s / SECONDS_PER_MINUTE;
    c0 * libm::exp(-(load / p.max_strength_nm) * t_min / p.resistance_min)
}

pub(crate) fn recover(c0: f64, p: &FatigueParams, t_s: f64) -> f64 {
    let t_min = t_s / SECONDS_PER_MINUTE;
    let gap = p.max_strength_nm - c0;
    p.max_strength_nm - gap * libm::exp(-p.recovery_per_min * t_min)
}

/// Normalized strength reduction `(Γ_max − C) / Γ_max`, in [0, 1).
pub fn fatigue_index(p: &FatigueParams, capacity_nm: f64) -> Result<f64> {
    p.check_capacity(capacity_nm)?;
    Ok(index(p, capacity_nm))
}

pub(crate) fn index(p: &FatigueParams, capacity_nm: f64) -> f64 {
    (p.max_strength_nm - capacity_nm) / p.max_strength_nm
}

/// Time (s) for the capacity to fall from `c0_nm` to a constant `load_nm`:
/// `m · (Γ_max / load) · ln(c0 / load)` minutes. `Some(0.0)` when the load
/// already meets or exceeds the capacity, `None` for zero load.
pub fn time_to_failure_s(c0_nm: f64, p: &FatigueParams, load_nm: f64) -> Result<Option<f64>> {
    p.check_capacity(c0_nm)?;
    check_load(load_nm)?;
    Ok(failure_offset_s(c0_nm, p, load_nm))
}

pub(crate) fn failure_offset_s(c0: f64, p: &FatigueParams, load: f64) -> Option<f64> {
    if load <= 0.0 {
        return None;
    }
    if c0 <= load {
        return Some(0.0);
    }
    let minutes = p.resistance_min * (p.max_strength_nm / load) * libm::log(c0 / load);
    Some(minutes * SECONDS_PER_MINUTE)
}
