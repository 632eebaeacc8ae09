//! Three-level factorial populations (height × weight × strength × fatigue
//! resistance = 81 subgroups) and endurance sweeps over a task.

use alloc::string::String;
use alloc::vec::Vec;

use nalgebra::Vector3;

use crate::anthro::{expand_levels, scale_segments, CoefficientTable, FactorLevels, PopulationSpec, SubjectProfile};
use crate::error::{Error, Result};
use crate::fatigue::{endurance_time_with, EnduranceResult, FatigueParams, ScheduleTemplate, SimulationOptions};
use crate::skeleton::{build_default_skeleton, Posture};
use crate::statics::{static_joint_loads, ExternalLoad};

pub const SUBGROUP_COUNT: usize = 81;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Low,
    Average,
    High,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::Low, Level::Average, Level::High];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Which factor a level belongs to; used for labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    Height,
    Weight,
    Strength,
    Resistance,
}

impl Factor {
    pub fn label(self, level: Level) -> &'static str {
        use Level::*;
        match (self, level) {
            (Factor::Height, Low) => "Low",
            (Factor::Height, Average) => "Average",
            (Factor::Height, High) => "Tall",
            (Factor::Weight, Low) => "Light",
            (Factor::Weight, Average) => "Average",
            (Factor::Weight, High) => "Heavy",
            (Factor::Strength, Low) => "Weak",
            (Factor::Strength, Average) => "Average",
            (Factor::Strength, High) => "Strong",
            (Factor::Resistance, Low) => "Small",
            (Factor::Resistance, Average) => "Average",
            (Factor::Resistance, High) => "Large",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LevelCombo {
    pub height: Level,
    pub weight: Level,
    pub strength: Level,
    pub resistance: Level,
}

impl LevelCombo {
    /// All 81 combinations in lexicographic (height, weight, strength,
    /// resistance) order, low < average < high.
    pub fn all() -> impl Iterator<Item = LevelCombo> {
        Level::ALL.into_iter().flat_map(|height| {
            Level::ALL.into_iter().flat_map(move |weight| {
                Level::ALL.into_iter().flat_map(move |strength| {
                    Level::ALL.into_iter().map(move |resistance| LevelCombo { height, weight, strength, resistance })
                })
            })
        })
    }

    /// 1-based subgroup id in the lexicographic order.
    pub fn subgroup_id(&self) -> usize {
        1 + 27 * self.height.index() + 9 * self.weight.index() + 3 * self.strength.index() + self.resistance.index()
    }
}

/// Task geometry shared by every subgroup.
#[derive(Debug, Clone, PartialEq)]
pub struct TaskGeometry {
    pub posture: Posture,
    pub loads: Vec<ExternalLoad>,
    /// Joint whose fatigue is analyzed, e.g. `shoulder_R_flexion`.
    pub joint: String,
    pub gravity: Vector3<f64>,
    pub coefficients: CoefficientTable,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Subgroup {
    pub id: usize,
    pub levels: LevelCombo,
    pub profile: SubjectProfile,
    /// Static moment demand at the analyzed joint, N·m.
    pub load_nm: f64,
    pub params: FatigueParams,
}

/// Builds the 81 subgroups, computing each one's task load on a body scaled
/// to its height and weight levels.
pub fn build_subgroups(spec: &PopulationSpec, task: &TaskGeometry) -> Result<Vec<Subgroup>> {
    let levels = expand_levels(spec)?;
    let mut out = Vec::with_capacity(SUBGROUP_COUNT);
    // Load depends only on (height, weight).
    let mut loads = [[0.0; 3]; 3];
    for h in Level::ALL {
        for w in Level::ALL {
            loads[h.index()][w.index()] =
                task_load(levels.height_m[h.index()], levels.weight_kg[w.index()], task)?;
        }
    }
    for combo in LevelCombo::all() {
        let height_m = levels.height_m[combo.height.index()];
        let weight_kg = levels.weight_kg[combo.weight.index()];
        let strength = levels.strength_nm[combo.strength.index()];
        let resistance_min = levels.resistance_min[combo.resistance.index()];
        let mut strengths = spec.base_strengths.clone();
        strengths.insert(spec.analyzed_group.clone(), strength);
        let profile = SubjectProfile {
            label: alloc::format!(
                "{}/{}/{}/{}",
                Factor::Height.label(combo.height),
                Factor::Weight.label(combo.weight),
                Factor::Strength.label(combo.strength),
                Factor::Resistance.label(combo.resistance)
            ),
            height_m,
            weight_kg,
            strengths,
            strength_tables: Vec::new(),
            resistance_min,
            recovery_per_min: spec.recovery_per_min,
        };
        profile.validate()?;
        out.push(Subgroup {
            id: combo.subgroup_id(),
            levels: combo,
            params: FatigueParams::new(strength, resistance_min, spec.recovery_per_min)?,
            profile,
            load_nm: loads[combo.height.index()][combo.weight.index()],
        });
    }
    Ok(out)
}

/// |axis moment| at the analyzed joint for a body of the given size.
pub fn task_load(height_m: f64, weight_kg: f64, task: &TaskGeometry) -> Result<f64> {
    let dims = scale_segments(height_m, weight_kg, &task.coefficients)?;
    let model = build_default_skeleton(&dims)?;
    let joint = model.joint_by_name(&task.joint).ok_or_else(|| Error::UnknownJoint(task.joint.clone()))?.id;
    let profile = static_joint_loads(&model, &task.posture, &dims, &task.loads, task.gravity)?;
    Ok(profile.axis_moment(joint).abs())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub subgroup: Subgroup,
    pub result: EnduranceResult,
}

/// Endurance of every subgroup under one task schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub levels: FactorLevels,
    pub horizon_s: f64,
    pub rows: Vec<SweepRow>,
}

impl SweepGrid {
    pub fn row(&self, combo: LevelCombo) -> &SweepRow {
        &self.rows[combo.subgroup_id() - 1]
    }

    /// Endurance in seconds with censored rows at the horizon.
    pub fn endurance_s(&self, combo: LevelCombo) -> f64 {
        self.row(combo).result.endurance.seconds()
    }

    /// Largest relative endurance spread `(max − min) / max` across the nine
    /// height/weight cells at any fixed (strength, resistance).
    pub fn height_weight_spread(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for s in Level::ALL {
            for r in Level::ALL {
                let cells = Level::ALL.into_iter().flat_map(|h| {
                    Level::ALL.into_iter().map(move |w| LevelCombo { height: h, weight: w, strength: s, resistance: r })
                });
                worst = worst.max(self.relative_spread(cells));
            }
        }
        worst
    }

    /// Smallest relative endurance spread across the nine strength/resistance
    /// cells at any fixed (height, weight).
    pub fn strength_resistance_spread(&self) -> f64 {
        let mut least = f64::INFINITY;
        for h in Level::ALL {
            for w in Level::ALL {
                let cells = Level::ALL.into_iter().flat_map(|s| {
                    Level::ALL.into_iter().map(move |r| LevelCombo { height: h, weight: w, strength: s, resistance: r })
                });
                least = least.min(self.relative_spread(cells));
            }
        }
        least
    }

    fn relative_spread(&self, cells: impl Iterator<Item = LevelCombo>) -> f64 {
        let (lo, hi) = cells
            .map(|c| self.endurance_s(c))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), e| (lo.min(e), hi.max(e)));
        if hi > 0.0 {
            (hi - lo) / hi
        } else {
            0.0
        }
    }
}

/// Runs the endurance prediction for every subgroup. Rows keep the
/// subgroups' order.
pub fn sweep_endurance(subgroups: &[Subgroup], levels: FactorLevels, template: &ScheduleTemplate, opts: SimulationOptions) -> Result<SweepGrid> {
    let rows = subgroups
        .iter()
        .map(|sg| {
            let sched = template.resolve(sg.load_nm)?;
            let result = endurance_time_with(&sg.params, &sched, opts)?;
            Ok(SweepRow { subgroup: sg.clone(), result })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepGrid { levels, horizon_s: template.horizon_s(), rows })
}

/// Subgroup ids that can sustain the task for `required_s` seconds.
pub fn select_workers(grid: &SweepGrid, required_s: f64) -> Result<Vec<usize>> {
    if !(required_s <= grid.horizon_s) {
        return Err(Error::UnderSpecifiedTask { required: required_s, horizon: grid.horizon_s });
    }
    Ok(grid
        .rows
        .iter()
        .filter(|r| r.result.endurance.is_censored() || r.result.endurance.seconds() >= required_s)
        .map(|r| r.subgroup.id)
        .collect())
}
