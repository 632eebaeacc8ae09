//! Piecewise work/rest schedules, propagated segment by segment with the
//! closed-form solutions.

use alloc::vec::Vec;

use super::{check_load, decay, failure_offset_s, index, recover, FatigueParams};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Phase {
    /// Holding a constant moment load, N·m.
    Work { load_nm: f64 },
    Rest,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduleSegment {
    pub phase: Phase,
    pub duration_s: f64,
}

impl ScheduleSegment {
    pub fn work(duration_s: f64, load_nm: f64) -> Self {
        ScheduleSegment { phase: Phase::Work { load_nm }, duration_s }
    }

    pub fn rest(duration_s: f64) -> Self {
        ScheduleSegment { phase: Phase::Rest, duration_s }
    }

    /// Work load, or 0 for rest.
    pub fn load_nm(&self) -> f64 {
        match self.phase {
            Phase::Work { load_nm } => load_nm,
            Phase::Rest => 0.0,
        }
    }
}

/// An ordered sequence of work and rest segments starting at t = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct WorkRestSchedule {
    segments: Vec<ScheduleSegment>,
}

impl WorkRestSchedule {
    pub fn new(segments: Vec<ScheduleSegment>) -> Result<Self> {
        for (i, s) in segments.iter().enumerate() {
            if !(s.duration_s.is_finite() && s.duration_s > 0.0) {
                return Err(Error::InvalidSchedule(alloc::format!(
                    "segment {} has non-positive duration {}",
                    i + 1,
                    s.duration_s
                )));
            }
            if let Phase::Work { load_nm } = s.phase {
                check_load(load_nm)?;
            }
        }
        Ok(WorkRestSchedule { segments })
    }

    /// `cycles` repetitions of `work_s` under `load_nm` followed by `rest_s`.
    pub fn cycles(cycles: usize, work_s: f64, rest_s: f64, load_nm: f64) -> Result<Self> {
        let mut segments = Vec::with_capacity(2 * cycles);
        for _ in 0..cycles {
            segments.push(ScheduleSegment::work(work_s, load_nm));
            segments.push(ScheduleSegment::rest(rest_s));
        }
        Self::new(segments)
    }

    pub fn segments(&self) -> &[ScheduleSegment] {
        &self.segments
    }

    pub fn horizon_s(&self) -> f64 {
        self.segments.iter().map(|s| s.duration_s).sum()
    }
}

/// Load of a work segment in a schedule template.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WorkLoad {
    Fixed(f64),
    /// The task load computed for whoever performs the schedule.
    Task,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TemplateSegment {
    Work { duration_s: f64, load: WorkLoad },
    Rest { duration_s: f64 },
}

/// A schedule whose work loads may refer to a per-subject task load.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScheduleTemplate {
    pub segments: Vec<TemplateSegment>,
}

impl ScheduleTemplate {
    /// `cycles` repetitions of task work followed by rest.
    pub fn task_cycles(cycles: usize, work_s: f64, rest_s: f64) -> Self {
        let mut segments = Vec::with_capacity(2 * cycles);
        for _ in 0..cycles {
            segments.push(TemplateSegment::Work { duration_s: work_s, load: WorkLoad::Task });
            segments.push(TemplateSegment::Rest { duration_s: rest_s });
        }
        ScheduleTemplate { segments }
    }

    pub fn resolve(&self, task_load_nm: f64) -> Result<WorkRestSchedule> {
        let segments = self
            .segments
            .iter()
            .map(|s| match *s {
                TemplateSegment::Work { duration_s, load } => ScheduleSegment::work(
                    duration_s,
                    match load {
                        WorkLoad::Fixed(v) => v,
                        WorkLoad::Task => task_load_nm,
                    },
                ),
                TemplateSegment::Rest { duration_s } => ScheduleSegment::rest(duration_s),
            })
            .collect();
        WorkRestSchedule::new(segments)
    }

    pub fn horizon_s(&self) -> f64 {
        self.segments
            .iter()
            .map(|s| match *s {
                TemplateSegment::Work { duration_s, .. } | TemplateSegment::Rest { duration_s } => duration_s,
            })
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t_s: f64,
    pub capacity_nm: f64,
}

/// Capacity over time for one joint.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityTrajectory {
    pub max_strength_nm: f64,
    /// Time-ordered samples. Segment boundaries appear once, with the exact
    /// closed-form boundary value.
    pub samples: Vec<Sample>,
    /// Capacity at t = 0 and at the end of every propagated segment.
    pub boundaries: Vec<Sample>,
    /// First instant the capacity fell to the concurrent work load.
    pub failure_time_s: Option<f64>,
    pub horizon_s: f64,
}

impl CapacityTrajectory {
    pub fn fatigue_index_at(&self, sample: &Sample) -> f64 {
        (self.max_strength_nm - sample.capacity_nm) / self.max_strength_nm
    }

    pub fn last(&self) -> Sample {
        *self.samples.last().expect("trajectory always holds the initial sample")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationOptions {
    pub sample_dt_s: f64,
    pub continue_past_failure: bool,
}

impl Default for SimulationOptions {
    fn default() -> Self {
        SimulationOptions { sample_dt_s: 1.0, continue_past_failure: false }
    }
}

/// Propagates a fresh joint (capacity = Γ_max at t = 0) through a schedule.
pub fn simulate_schedule(p: &FatigueParams, sched: &WorkRestSchedule, opts: SimulationOptions) -> Result<CapacityTrajectory> {
    if !(opts.sample_dt_s.is_finite() && opts.sample_dt_s > 0.0) {
        return Err(Error::InvalidInput(alloc::format!("sample_dt_s must be positive, got {}", opts.sample_dt_s)));
    }
    let dt = opts.sample_dt_s;
    let start = Sample { t_s: 0.0, capacity_nm: p.max_strength_nm() };
    let mut samples = alloc::vec![start];
    let mut boundaries = alloc::vec![start];
    let mut failure_time_s = None;
    let mut t0 = 0.0;
    let mut c0 = p.max_strength_nm();

    for seg in sched.segments() {
        let load = seg.load_nm();
        let at = |offset: f64| match seg.phase {
            Phase::Work { .. } => decay(c0, p, load, offset),
            Phase::Rest => recover(c0, p, offset),
        };
        let fail_offset = match (failure_time_s, seg.phase) {
            (None, Phase::Work { .. }) => failure_offset_s(c0, p, load).filter(|&off| off <= seg.duration_s),
            _ => None,
        };
        if let Some(off) = fail_offset {
            failure_time_s = Some(t0 + off);
        }
        let stop_at = fail_offset.filter(|_| !opts.continue_past_failure);
        let interior_end = stop_at.unwrap_or(seg.duration_s);

        let mut k = 1.0;
        while k * dt < interior_end {
            samples.push(Sample { t_s: t0 + k * dt, capacity_nm: at(k * dt) });
            k += 1.0;
        }
        if let Some(off) = stop_at {
            if off > 0.0 {
                samples.push(Sample { t_s: t0 + off, capacity_nm: at(off) });
            }
            break;
        }
        c0 = at(seg.duration_s);
        t0 += seg.duration_s;
        let end = Sample { t_s: t0, capacity_nm: c0 };
        samples.push(end);
        boundaries.push(end);
    }
    Ok(CapacityTrajectory {
        max_strength_nm: p.max_strength_nm(),
        samples,
        boundaries,
        failure_time_s,
        horizon_s: sched.horizon_s(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Endurance {
    /// Capacity fell to the load at this time, s.
    Failed { at_s: f64 },
    /// No failure within the schedule horizon, s.
    Exceeds { horizon_s: f64 },
}

impl Endurance {
    /// Failure time, or the horizon for censored results.
    pub fn seconds(&self) -> f64 {
        match *self {
            Endurance::Failed { at_s } => at_s,
            Endurance::Exceeds { horizon_s } => horizon_s,
        }
    }

    pub fn is_censored(&self) -> bool {
        matches!(self, Endurance::Exceeds { .. })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnduranceResult {
    pub endurance: Endurance,
    /// Fatigue index at min(failure, horizon).
    pub final_fatigue_index: f64,
    pub trajectory: CapacityTrajectory,
}

pub fn endurance_time(p: &FatigueParams, sched: &WorkRestSchedule) -> Result<EnduranceResult> {
    endurance_time_with(p, sched, SimulationOptions::default())
}

pub fn endurance_time_with(p: &FatigueParams, sched: &WorkRestSchedule, opts: SimulationOptions) -> Result<EnduranceResult> {
    let opts = SimulationOptions { continue_past_failure: false, ..opts };
    let trajectory = simulate_schedule(p, sched, opts)?;
    let final_capacity = trajectory.last().capacity_nm;
    let endurance = match trajectory.failure_time_s {
        Some(at_s) => Endurance::Failed { at_s },
        None => Endurance::Exceeds { horizon_s: trajectory.horizon_s },
    };
    Ok(EnduranceResult { endurance, final_fatigue_index: index(p, final_capacity), trajectory })
}
