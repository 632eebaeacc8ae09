//! Quasi-static inverse dynamics: joint moments from segment weights and
//! external point loads, with velocities and accelerations taken as zero.
//!
//! The moment reported at a joint is the moment of every load distal to it,
//! `Σ (r_point − r_joint) × F`, in world coordinates. The muscles must supply
//! the opposite moment to hold the posture.

use alloc::string::String;
use alloc::vec::Vec;

use nalgebra::Vector3;

use crate::anthro::SegmentDimensions;
use crate::error::{Error, Result};
use crate::skeleton::{forward_kinematics, JointId, Posture, SegmentFrames, SkeletonModel};

/// Standard gravity, pointing down the world z axis.
pub const DEFAULT_GRAVITY: Vector3<f64> = Vector3::new(0.0, 0.0, -9.81);

/// A point force applied to a body segment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExternalLoad {
    pub segment: String,
    /// Application point relative to the segment's centre of mass, in the
    /// segment's attachment frame.
    pub offset: Vector3<f64>,
    /// Force in world coordinates, N.
    pub force: Vector3<f64>,
    pub label: String,
}

impl ExternalLoad {
    /// A mass hanging at the segment's centre of mass under `gravity`.
    pub fn weight(segment: &str, mass_kg: f64, gravity: Vector3<f64>, label: &str) -> Self {
        ExternalLoad {
            segment: segment.into(),
            offset: Vector3::zeros(),
            force: gravity * mass_kg,
            label: label.into(),
        }
    }
}

/// Static load at every joint for one posture and load case.
#[derive(Debug, Clone, PartialEq)]
pub struct JointLoadProfile {
    /// Moment of the distal loads about each joint origin, N·m (world).
    pub moments: Vec<Vector3<f64>>,
    /// Sum of the distal forces, N (world).
    pub forces: Vec<Vector3<f64>>,
    /// Joint rotation axes, world.
    pub axes: Vec<Vector3<f64>>,
    /// Moment component about each joint axis, N·m (signed).
    pub axis_moments: Vec<f64>,
    pub posture: Posture,
}

impl JointLoadProfile {
    pub fn axis_moment(&self, joint: JointId) -> f64 {
        self.axis_moments[joint.index()]
    }
}

/// Attachment joint (`None` for the root), world point and world force.
pub type PointLoad = (Option<JointId>, Vector3<f64>, Vector3<f64>);

/// Application point (world) and force for every distal contribution, with
/// the joint frame it rides on. Shared by the recursion and by callers that
/// want to inspect the load set.
pub fn world_point_loads(
    model: &SkeletonModel,
    frames: &SegmentFrames,
    segs: &SegmentDimensions,
    loads: &[ExternalLoad],
    gravity: Vector3<f64>,
) -> Result<Vec<PointLoad>> {
    if !gravity.iter().all(|g| g.is_finite()) {
        return Err(Error::InvalidInput("non-finite gravity".into()));
    }
    let mut out = Vec::with_capacity(model.segments().len() + loads.len());
    for (seg, com) in model.segments().iter().zip(&frames.segment_com) {
        let dim = segs.get(&seg.name).ok_or_else(|| Error::UnknownSegment(seg.name.clone()))?;
        if !(dim.mass_kg.is_finite() && dim.mass_kg >= 0.0) {
            return Err(Error::InvalidDimension { name: seg.name.clone(), value: dim.mass_kg });
        }
        out.push((seg.joint, *com, gravity * dim.mass_kg));
    }
    for load in loads {
        let seg = model
            .segment_by_name(&load.segment)
            .ok_or_else(|| Error::UnknownSegment(load.segment.clone()))?;
        if !load.force.iter().chain(load.offset.iter()).all(|v| v.is_finite()) {
            return Err(Error::InvalidInput(alloc::format!("load `{}` has non-finite components", load.label)));
        }
        let frame = frames.attachment_frame(seg.joint);
        let point = frame.transform_point(&(seg.com_local + load.offset).into()).coords;
        out.push((seg.joint, point, load.force));
    }
    Ok(out)
}

/// Joint moments and forces by backward recursion from the leaves.
pub fn static_joint_loads(
    model: &SkeletonModel,
    posture: &Posture,
    segs: &SegmentDimensions,
    loads: &[ExternalLoad],
    gravity: Vector3<f64>,
) -> Result<JointLoadProfile> {
    let frames = forward_kinematics(model, posture)?;
    let point_loads = world_point_loads(model, &frames, segs, loads, gravity)?;
    let n = model.dof();
    let origin = |j: usize| frames.joints[j].translation.vector;

    let mut forces = alloc::vec![Vector3::zeros(); n];
    let mut moments = alloc::vec![Vector3::zeros(); n];
    for (joint, point, force) in point_loads {
        if let Some(j) = joint {
            let i = j.index();
            forces[i] += force;
            moments[i] += (point - origin(i)).cross(&force);
        }
    }
    for i in (0..n).rev() {
        if let Some(p) = model.joints()[i].parent {
            let pi = p.index();
            let f = forces[i];
            let m = moments[i] + (origin(i) - origin(pi)).cross(&f);
            forces[pi] += f;
            moments[pi] += m;
        }
    }
    let axes: Vec<Vector3<f64>> = (0..n).map(|i| frames.joint_axis(JointId(i + 1))).collect();
    let axis_moments = moments.iter().zip(&axes).map(|(m, a)| m.dot(a)).collect();
    Ok(JointLoadProfile { moments, forces, axes, axis_moments, posture: posture.clone() })
}

/// Demand-to-capacity ratio |Γ_load| / Γ_max at one joint.
pub fn load_ratio(profile: &JointLoadProfile, joint: JointId, max_strength_nm: f64) -> Result<f64> {
    if !(max_strength_nm.is_finite() && max_strength_nm > 0.0) {
        return Err(Error::InvalidStrength(max_strength_nm));
    }
    let m = profile
        .axis_moments
        .get(joint.index())
        .ok_or_else(|| Error::UnknownJoint(alloc::format!("{}", joint.0)))?;
    Ok(m.abs() / max_strength_nm)
}
