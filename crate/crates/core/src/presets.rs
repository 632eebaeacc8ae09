//! The shipped drilling task: a two-handed drill held at chest height in
//! front of the body, worked in five 60 s bouts with 30 s pauses.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use nalgebra::Vector3;

use crate::anthro::{CoefficientTable, FactorStats, PopulationSpec, THEORETICAL_RESISTANCE};
use crate::cohort::TaskGeometry;
use crate::fatigue::ScheduleTemplate;
use crate::skeleton::{Posture, HUMAN_DOF};
use crate::statics::{ExternalLoad, DEFAULT_GRAVITY};

pub const DRILL_MASS_KG: f64 = 5.0;
pub const DRILL_FEED_N: f64 = 49.0;
pub const ANALYZED_JOINT: &str = "shoulder_R_flexion";
pub const DRILL_RECOVERY_PER_MIN: f64 = 1.0;

/// (joint, angle in degrees) for the held drilling posture; other joints 0.
pub const DRILL_POSTURE_DEG: [(&str, f64); 4] = [
    ("shoulder_R_flexion", 40.0),
    ("elbow_R_flexion", 60.0),
    ("shoulder_L_flexion", 40.0),
    ("elbow_L_flexion", 60.0),
];

/// Mean strength of each joint group, N·m.
pub const MEAN_STRENGTHS_NM: [(&str, f64); 6] = [
    ("shoulder_R", 95.0),
    ("shoulder_L", 90.0),
    ("elbow_R", 70.0),
    ("elbow_L", 66.0),
    ("waist", 240.0),
    ("hip_R", 180.0),
];

/// Shoulder strength SD as a fraction of the mean.
pub const SHOULDER_STRENGTH_CV: f64 = 0.224;

pub fn drilling_posture() -> Posture {
    let names = crate::skeleton::default_joint_names();
    let mut q = alloc::vec![0.0; HUMAN_DOF];
    for (joint, deg) in DRILL_POSTURE_DEG {
        let i = names.iter().position(|n| *n == joint).expect("joint in default layout");
        q[i] = deg.to_radians();
    }
    Posture::new(q)
}

/// Tool weight and feed reaction, split evenly between the two hands.
pub fn drilling_loads() -> Vec<ExternalLoad> {
    let mut out = Vec::new();
    for side in ["R", "L"] {
        let hand = alloc::format!("hand_{side}");
        out.push(ExternalLoad::weight(&hand, DRILL_MASS_KG / 2.0, DEFAULT_GRAVITY, "drill weight"));
        out.push(ExternalLoad {
            segment: hand,
            offset: Vector3::zeros(),
            force: Vector3::new(-DRILL_FEED_N / 2.0, 0.0, 0.0),
            label: "feed force".into(),
        });
    }
    out
}

pub fn drilling_task() -> TaskGeometry {
    TaskGeometry {
        posture: drilling_posture(),
        loads: drilling_loads(),
        joint: String::from(ANALYZED_JOINT),
        gravity: DEFAULT_GRAVITY,
        coefficients: CoefficientTable::default_table(),
    }
}

pub fn drilling_population() -> PopulationSpec {
    let base_strengths: BTreeMap<String, f64> = MEAN_STRENGTHS_NM.iter().map(|(k, v)| (String::from(*k), *v)).collect();
    PopulationSpec {
        height_m: FactorStats::new(1.755, 0.07, 2.0),
        weight_kg: FactorStats::new(78.0, 10.0, 2.0),
        strength_nm: FactorStats::new(MEAN_STRENGTHS_NM[0].1, SHOULDER_STRENGTH_CV * MEAN_STRENGTHS_NM[0].1, 2.0),
        resistance_min: THEORETICAL_RESISTANCE,
        recovery_per_min: DRILL_RECOVERY_PER_MIN,
        analyzed_group: String::from("shoulder_R"),
        base_strengths,
    }
}

/// Five cycles of 60 s drilling and 30 s rest, 450 s in total.
pub fn drilling_schedule() -> ScheduleTemplate {
    ScheduleTemplate::task_cycles(5, 60.0, 30.0)
}
