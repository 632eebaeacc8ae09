//! Default 28-DOF human joint table.
//!
//! World axes: x forward, y left, z up. The root frame sits at the hip-centre
//! height with its x axis pointing up the trunk. In the reference posture
//! (all q = 0) the subject stands upright with arms hanging at the sides.
//!
//! Allocation: waist 2, spine 4, neck 2, each arm shoulder 3 + elbow 2,
//! each leg hip 3 + knee 1 + ankle 1.
//!
//! Sign conventions (both sides unless noted):
//! * every `*_flexion` is positive for forward flexion of the trunk, neck,
//!   shoulder, elbow and hip; knee flexion is positive bending the shank
//!   backwards and ankle flexion is positive for plantarflexion;
//! * `*_abduction` is positive moving the limb away from the midline, so the
//!   right side rotates about −x and the left side about +x;
//! * `*_rotation` and `elbow_*_pronation` are mirrored: positive is internal
//!   rotation / pronation on the right side and the opposite on the left.
//!
//! The four spine DOFs are split between the thoracolumbar junction
//! (flexion, lateral bend, axial rotation) and mid-thorax (upper flexion).
//! The two neck DOFs (flexion, axial rotation) sit at the base of the neck.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{IsometryMatrix3, Matrix3, Rotation3, Translation3, Vector3};

use super::{DhParams, JointId, JointSpec, SegmentId, SegmentSpec, SkeletonModel};
use crate::anthro::{SegmentDimensions, SEGMENT_NAMES};
use crate::error::{Error, Result};

pub const HUMAN_DOF: usize = 28;

const H: f64 = FRAC_PI_2;

/// Link-length source for a DH entry.
#[derive(Clone, Copy)]
enum Len {
    Zero,
    Seg(usize, f64),
    ShoulderHalf(f64),
    HipHalf(f64),
}

struct Row {
    name: &'static str,
    parent: usize,
    a: Len,
    alpha: f64,
    d: Len,
    theta: f64,
    lo_deg: f64,
    hi_deg: f64,
}

const fn row(
    name: &'static str,
    parent: usize,
    a: Len,
    alpha: f64,
    d: Len,
    theta: f64,
    lo_deg: f64,
    hi_deg: f64,
) -> Row {
    Row { name, parent, a, alpha, d, theta, lo_deg, hi_deg }
}

// Segment indices into SEGMENT_NAMES.
const PELVIS: usize = 0;
const ABDOMEN: usize = 1;
const THORAX: usize = 2;
const UPPER_ARM: usize = 4;
const FOREARM: usize = 5;
const THIGH: usize = 10;
const SHANK: usize = 11;

use Len::{HipHalf, Seg, ShoulderHalf, Zero};

#[rustfmt::skip]
const ROWS: [Row; HUMAN_DOF] = [
    //   name                    parent a                  alpha d                   theta  limits (deg)
    row("waist_flexion",         0,  Seg(PELVIS, 1.0),    0.0, Zero,                0.0,   -30.0,  90.0),
    row("waist_lateral",         1,  Zero,                 -H, Zero,                0.0,   -35.0,  35.0),
    row("spine_flexion",         2,  Seg(ABDOMEN, 1.0),     H, Zero,                0.0,   -20.0,  45.0),
    row("spine_lateral",         3,  Zero,                 -H, Zero,                  H,   -30.0,  30.0),
    row("spine_rotation",        4,  Zero,                  H, Seg(THORAX, 0.5),      H,   -45.0,  45.0),
    row("spine_upper_flexion",   5,  Zero,                 -H, Zero,                 -H,   -15.0,  30.0),
    row("neck_flexion",          6,  Seg(THORAX, 0.5),    0.0, Zero,                  H,   -60.0,  50.0),
    row("neck_rotation",         7,  Zero,                  H, Zero,                0.0,   -70.0,  70.0),
    row("shoulder_R_flexion",    6,  Seg(THORAX, 0.5),     PI, ShoulderHalf(1.0),    PI,   -50.0, 180.0),
    row("shoulder_R_abduction",  9,  Zero,                  H, Zero,                  H,   -30.0, 180.0),
    row("shoulder_R_rotation",  10,  Zero,                  H, Seg(UPPER_ARM, 1.0),   H,   -80.0,  80.0),
    row("elbow_R_flexion",      11,  Zero,                  H, Zero,                0.0,     0.0, 145.0),
    row("elbow_R_pronation",    12,  Zero,                 -H, Seg(FOREARM, 1.0),   0.0,   -80.0,  80.0),
    row("shoulder_L_flexion",    6,  Seg(THORAX, 0.5),     PI, ShoulderHalf(-1.0),   PI,   -50.0, 180.0),
    row("shoulder_L_abduction", 14,  Zero,                 -H, Zero,                  H,   -30.0, 180.0),
    row("shoulder_L_rotation",  15,  Zero,                  H, Seg(UPPER_ARM + 3, 1.0), H, -80.0,  80.0),
    row("elbow_L_flexion",      16,  Zero,                 -H, Zero,                0.0,     0.0, 145.0),
    row("elbow_L_pronation",    17,  Zero,                  H, Seg(FOREARM + 3, 1.0), 0.0, -80.0,  80.0),
    row("hip_R_flexion",         0,  Zero,                 PI, HipHalf(1.0),         PI,   -20.0, 120.0),
    row("hip_R_abduction",      19,  Zero,                  H, Zero,                  H,   -30.0,  45.0),
    row("hip_R_rotation",       20,  Zero,                  H, Seg(THIGH, 1.0),       H,   -40.0,  40.0),
    row("knee_R_flexion",       21,  Zero,                 -H, Zero,                 -H,     0.0, 140.0),
    row("ankle_R_flexion",      22,  Seg(SHANK, 1.0),     0.0, Zero,                0.0,   -20.0,  50.0),
    row("hip_L_flexion",         0,  Zero,                 PI, HipHalf(-1.0),        PI,   -20.0, 120.0),
    row("hip_L_abduction",      24,  Zero,                 -H, Zero,                  H,   -30.0,  45.0),
    row("hip_L_rotation",       25,  Zero,                  H, Seg(THIGH + 3, 1.0),   H,   -40.0,  40.0),
    row("knee_L_flexion",       26,  Zero,                  H, Zero,                  H,     0.0, 140.0),
    row("ankle_L_flexion",      27,  Seg(SHANK + 3, 1.0), 0.0, Zero,                0.0,   -20.0,  50.0),
];

/// Segment placement: attachment joint (0 = root), local axis along the
/// segment, and where the proximal end sits along that axis as a fraction
/// of the segment length.
#[rustfmt::skip]
const SEGMENT_PLACEMENT: [(usize, [f64; 3], f64); 16] = [
    (0,  [1.0, 0.0, 0.0],  0.0), // pelvis
    (2,  [1.0, 0.0, 0.0],  0.0), // abdomen
    (6,  [1.0, 0.0, 0.0], -0.5), // thorax
    (8,  [0.0, 0.0, 1.0],  0.0), // head_neck
    (11, [0.0, 0.0, 1.0], -1.0), // upper_arm_R
    (13, [0.0, 0.0, 1.0], -1.0), // forearm_R
    (13, [0.0, 0.0, 1.0],  0.0), // hand_R
    (16, [0.0, 0.0, 1.0], -1.0), // upper_arm_L
    (18, [0.0, 0.0, 1.0], -1.0), // forearm_L
    (18, [0.0, 0.0, 1.0],  0.0), // hand_L
    (21, [0.0, 0.0, 1.0], -1.0), // thigh_R
    (22, [1.0, 0.0, 0.0],  0.0), // shank_R
    (23, [0.0, -1.0, 0.0], 0.0), // foot_R
    (26, [0.0, 0.0, 1.0], -1.0), // thigh_L
    (27, [1.0, 0.0, 0.0],  0.0), // shank_L
    (28, [0.0, -1.0, 0.0], 0.0), // foot_L
];

fn ordered_dims(dims: &SegmentDimensions) -> Result<Vec<&crate::anthro::SegmentDimension>> {
    SEGMENT_NAMES
        .iter()
        .map(|name| {
            let d = dims.get(name).ok_or_else(|| Error::UnknownSegment(name.to_string()))?;
            if !(d.length_m.is_finite() && d.length_m > 0.0) {
                return Err(Error::InvalidDimension { name: d.name.clone(), value: d.length_m });
            }
            if !(0.0..=1.0).contains(&d.com_ratio) {
                return Err(Error::InvalidDimension { name: d.name.clone(), value: d.com_ratio });
            }
            Ok(d)
        })
        .collect()
}

/// The default joint table evaluated for a set of segment dimensions.
/// Joint names of the default layout, in id order.
pub fn default_joint_names() -> [&'static str; HUMAN_DOF] {
    let mut out = [""; HUMAN_DOF];
    let mut i = 0;
    while i < HUMAN_DOF {
        out[i] = ROWS[i].name;
        i += 1;
    }
    out
}

pub fn default_joint_table(dims: &SegmentDimensions) -> Result<Vec<JointSpec>> {
    let segs = ordered_dims(dims)?;
    let b = &dims.breadths;
    for (name, v) in [
        ("shoulder_half_width", b.shoulder_half_width_m),
        ("hip_half_width", b.hip_half_width_m),
        ("ankle_height", b.ankle_height_m),
    ] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::InvalidDimension { name: name.to_string(), value: v });
        }
    }
    let length = |l: Len| match l {
        Zero => 0.0,
        Seg(i, f) => f * segs[i].length_m,
        ShoulderHalf(s) => s * b.shoulder_half_width_m,
        HipHalf(s) => s * b.hip_half_width_m,
    };
    Ok(ROWS
        .iter()
        .enumerate()
        .map(|(i, r)| JointSpec {
            id: JointId(i + 1),
            name: r.name.to_string(),
            dh: DhParams::new(length(r.a), r.alpha, length(r.d), r.theta),
            lower_limit: r.lo_deg.to_radians(),
            upper_limit: r.hi_deg.to_radians(),
            parent: (r.parent > 0).then_some(JointId(r.parent)),
        })
        .collect())
}

/// Builds the 28-DOF skeleton for the given body dimensions.
pub fn build_default_skeleton(dims: &SegmentDimensions) -> Result<SkeletonModel> {
    let joints = default_joint_table(dims)?;
    let segs = ordered_dims(dims)?;
    let segments = SEGMENT_PLACEMENT
        .iter()
        .zip(segs)
        .enumerate()
        .map(|(i, (&(joint, axis, start), dim))| SegmentSpec {
            id: SegmentId(i),
            name: dim.name.clone(),
            joint: (joint > 0).then_some(JointId(joint)),
            com_local: Vector3::from(axis) * ((start + dim.com_ratio) * dim.length_m),
        })
        .collect();

    let hip_height = dims.get("thigh_R").map(|d| d.length_m).unwrap_or(0.0)
        + dims.get("shank_R").map(|d| d.length_m).unwrap_or(0.0)
        + dims.breadths.ankle_height_m;
    // Root axes: x up, y forward, z left.
    #[rustfmt::skip]
    let rot = Matrix3::new(
        0.0, 1.0, 0.0,
        0.0, 0.0, 1.0,
        1.0, 0.0, 0.0,
    );
    let root = IsometryMatrix3::from_parts(
        Translation3::new(0.0, 0.0, hip_height),
        Rotation3::from_matrix_unchecked(rot),
    );
    let model = SkeletonModel::new(joints, segments, root)?;
    check_human_layout(&model)?;
    Ok(model)
}

/// Checks that a model carries the 28-joint human layout.
pub fn check_human_layout(model: &SkeletonModel) -> Result<()> {
    if model.dof() != HUMAN_DOF {
        return Err(Error::InvalidModel(alloc::format!(
            "human skeleton needs {HUMAN_DOF} joints, got {}",
            model.dof()
        )));
    }
    Ok(())
}
