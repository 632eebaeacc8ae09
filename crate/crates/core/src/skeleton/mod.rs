//! Kinematic skeleton: a tree of revolute joints described with modified
//! Denavit–Hartenberg parameters, and its forward kinematics.
//!
//! The transform from a parent frame to a child joint frame is
//! `RotX(alpha) · TransX(a) · RotZ(theta_offset + q) · TransZ(d)`; the joint
//! rotates about the z axis of its own frame.

mod default_table;

use alloc::string::String;
use alloc::vec::Vec;

use nalgebra::{IsometryMatrix3, Matrix3, Rotation3, Translation3, Vector3};

use crate::error::{Error, Result};

pub use default_table::{build_default_skeleton, default_joint_names, default_joint_table, HUMAN_DOF};

/// 1-based joint identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JointId(pub usize);

impl JointId {
    /// Zero-based position in the joint list and posture vector.
    pub fn index(self) -> usize {
        self.0 - 1
    }
}

/// Zero-based segment identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SegmentId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DhParams {
    pub a: f64,
    pub alpha: f64,
    pub d: f64,
    pub theta_offset: f64,
}

impl DhParams {
    pub const fn new(a: f64, alpha: f64, d: f64, theta_offset: f64) -> Self {
        DhParams { a, alpha, d, theta_offset }
    }

    /// Parent ← joint transform at joint coordinate `q`.
    pub fn transform(&self, q: f64) -> IsometryMatrix3<f64> {
        let (st, ct) = libm::sincos(self.theta_offset + q);
        let (sa, ca) = libm::sincos(self.alpha);
        #[rustfmt::skip]
        let rot = Matrix3::new(
            ct,      -st,      0.0,
            st * ca,  ct * ca, -sa,
            st * sa,  ct * sa,  ca,
        );
        let trans = Vector3::new(self.a, -sa * self.d, ca * self.d);
        IsometryMatrix3::from_parts(Translation3::from(trans), Rotation3::from_matrix_unchecked(rot))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JointSpec {
    pub id: JointId,
    pub name: String,
    pub dh: DhParams,
    pub lower_limit: f64,
    pub upper_limit: f64,
    /// `None` for joints attached to the root frame.
    pub parent: Option<JointId>,
}

/// A rigid body segment riding on a joint frame (or on the root).
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentSpec {
    pub id: SegmentId,
    pub name: String,
    /// Frame the segment is fixed to; `None` is the root frame.
    pub joint: Option<JointId>,
    /// Centre of mass in the attachment frame, metres.
    pub com_local: Vector3<f64>,
}

/// Immutable joint tree with segments and a root pose.
#[derive(Debug, Clone, PartialEq)]
pub struct SkeletonModel {
    joints: Vec<JointSpec>,
    segments: Vec<SegmentSpec>,
    root: IsometryMatrix3<f64>,
}

impl SkeletonModel {
    /// Validates and assembles a model. Joints must be listed in id order
    /// (1..n) with every parent preceding its children.
    pub fn new(joints: Vec<JointSpec>, segments: Vec<SegmentSpec>, root: IsometryMatrix3<f64>) -> Result<Self> {
        for (i, j) in joints.iter().enumerate() {
            if j.id != JointId(i + 1) {
                return Err(Error::InvalidModel(alloc::format!(
                    "joint `{}` has id {} at position {}",
                    j.name,
                    j.id.0,
                    i + 1
                )));
            }
            if let Some(p) = j.parent {
                if p.0 == 0 || p >= j.id {
                    return Err(Error::InvalidModel(alloc::format!(
                        "joint `{}` (id {}) has parent {} which does not precede it",
                        j.name,
                        j.id.0,
                        p.0
                    )));
                }
            }
            let dh = &j.dh;
            if ![dh.a, dh.alpha, dh.d, dh.theta_offset].iter().all(|v| v.is_finite()) {
                return Err(Error::InvalidModel(alloc::format!("joint `{}` has non-finite DH parameters", j.name)));
            }
            if !(j.lower_limit <= j.upper_limit) {
                return Err(Error::InvalidModel(alloc::format!(
                    "joint `{}` lower limit {} exceeds upper limit {}",
                    j.name,
                    j.lower_limit,
                    j.upper_limit
                )));
            }
            if joints[..i].iter().any(|o| o.name == j.name) {
                return Err(Error::InvalidModel(alloc::format!("duplicate joint name `{}`", j.name)));
            }
        }
        for (i, s) in segments.iter().enumerate() {
            if s.id != SegmentId(i) {
                return Err(Error::InvalidModel(alloc::format!("segment `{}` out of order", s.name)));
            }
            if let Some(j) = s.joint {
                if j.0 == 0 || j.0 > joints.len() {
                    return Err(Error::InvalidModel(alloc::format!(
                        "segment `{}` attached to missing joint {}",
                        s.name,
                        j.0
                    )));
                }
            }
            if !s.com_local.iter().all(|v| v.is_finite()) {
                return Err(Error::InvalidModel(alloc::format!("segment `{}` has non-finite centre of mass", s.name)));
            }
        }
        Ok(SkeletonModel { joints, segments, root })
    }

    pub fn dof(&self) -> usize {
        self.joints.len()
    }

    pub fn joints(&self) -> &[JointSpec] {
        &self.joints
    }

    pub fn segments(&self) -> &[SegmentSpec] {
        &self.segments
    }

    pub fn root_frame(&self) -> &IsometryMatrix3<f64> {
        &self.root
    }

    pub fn joint(&self, id: JointId) -> Option<&JointSpec> {
        id.0.checked_sub(1).and_then(|i| self.joints.get(i))
    }

    pub fn joint_by_name(&self, name: &str) -> Option<&JointSpec> {
        self.joints.iter().find(|j| j.name == name)
    }

    pub fn segment_by_name(&self, name: &str) -> Option<&SegmentSpec> {
        self.segments.iter().find(|s| s.name == name)
    }

    /// Segment → attachment joint map.
    pub fn segment_attachment(&self, segment: SegmentId) -> Option<Option<JointId>> {
        self.segments.get(segment.0).map(|s| s.joint)
    }

    /// True when `joint` lies on the path from `descendant` to the root
    /// (a joint is its own ancestor).
    pub fn is_ancestor(&self, joint: JointId, descendant: JointId) -> bool {
        let mut cur = Some(descendant);
        while let Some(c) = cur {
            if c == joint {
                return true;
            }
            cur = self.joints[c.index()].parent;
        }
        false
    }

    /// Copy with joint parameters replaced; segments and root are kept.
    pub fn with_joints(&self, joints: Vec<JointSpec>) -> Result<Self> {
        SkeletonModel::new(joints, self.segments.clone(), self.root)
    }

    fn check_posture(&self, posture: &Posture) -> Result<()> {
        if posture.q.len() != self.dof() {
            return Err(Error::DimensionMismatch { expected: self.dof(), actual: posture.q.len() });
        }
        Ok(())
    }
}

/// Generalized coordinates, one angle per joint (radians).
#[derive(Debug, Clone, PartialEq)]
pub struct Posture {
    pub q: Vec<f64>,
    pub timestamp: Option<f64>,
}

impl Posture {
    pub fn new(q: Vec<f64>) -> Self {
        Posture { q, timestamp: None }
    }

    pub fn zeros(n: usize) -> Self {
        Posture::new(alloc::vec![0.0; n])
    }
}

/// World poses of every joint frame and every segment's centre of mass.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentFrames {
    pub root: IsometryMatrix3<f64>,
    /// world ← joint, indexed by `JointId::index`.
    pub joints: Vec<IsometryMatrix3<f64>>,
    /// Segment centres of mass in world coordinates, by segment id.
    pub segment_com: Vec<Vector3<f64>>,
}

impl SegmentFrames {
    pub fn joint_frame(&self, id: JointId) -> &IsometryMatrix3<f64> {
        &self.joints[id.index()]
    }

    pub fn joint_position(&self, id: JointId) -> Vector3<f64> {
        self.joints[id.index()].translation.vector
    }

    /// Rotation axis (frame z) of a joint in world coordinates.
    pub fn joint_axis(&self, id: JointId) -> Vector3<f64> {
        self.joints[id.index()].rotation.matrix().column(2).into_owned()
    }

    /// Frame a segment is attached to.
    pub fn attachment_frame(&self, attachment: Option<JointId>) -> &IsometryMatrix3<f64> {
        match attachment {
            Some(j) => &self.joints[j.index()],
            None => &self.root,
        }
    }
}

pub fn forward_kinematics(model: &SkeletonModel, posture: &Posture) -> Result<SegmentFrames> {
    model.check_posture(posture)?;
    if let Some(i) = posture.q.iter().position(|q| !q.is_finite()) {
        return Err(Error::InvalidInput(alloc::format!("non-finite angle for joint {}", i + 1)));
    }
    let mut frames: Vec<IsometryMatrix3<f64>> = Vec::with_capacity(model.dof());
    for (joint, &q) in model.joints.iter().zip(&posture.q) {
        let parent = match joint.parent {
            Some(p) => &frames[p.index()],
            None => &model.root,
        };
        let frame = parent * joint.dh.transform(q);
        frames.push(frame);
    }
    let segment_com = model
        .segments
        .iter()
        .map(|s| {
            let frame = match s.joint {
                Some(j) => &frames[j.index()],
                None => &model.root,
            };
            frame.transform_point(&s.com_local.into()).coords
        })
        .collect();
    Ok(SegmentFrames { root: model.root, joints: frames, segment_com })
}

/// One joint moved back inside its limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitViolation {
    pub joint: JointId,
    /// Signed correction applied (clamped − original), radians.
    pub correction: f64,
}

impl LimitViolation {
    pub fn magnitude(&self) -> f64 {
        self.correction.abs()
    }
}

/// Clamps every coordinate into its closed limit interval.
pub fn clamp_posture(model: &SkeletonModel, posture: &Posture) -> Result<(Posture, Vec<LimitViolation>)> {
    model.check_posture(posture)?;
    let mut out = posture.clone();
    let mut violations = Vec::new();
    for (joint, q) in model.joints.iter().zip(out.q.iter_mut()) {
        let clamped = q.clamp(joint.lower_limit, joint.upper_limit);
        if clamped != *q {
            violations.push(LimitViolation { joint: joint.id, correction: clamped - *q });
            *q = clamped;
        }
    }
    Ok((out, violations))
}
