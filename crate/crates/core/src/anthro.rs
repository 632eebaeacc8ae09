//! Anthropometric scaling, subject characterization and population levels.
//!
//! Segment lengths scale with stature and masses with body weight through a
//! coefficient table. The shipped table follows the classic body-segment
//! parameter proportions (Drillis–Contini lengths, Winter masses and
//! centre-of-mass ratios), with the trunk split into pelvis, abdomen and
//! thorax so that it fits the 28-DOF chain.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::skeleton::{JointId, Posture, SkeletonModel};

/// Scaling coefficients for one body segment.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentCoefficients {
    pub name: String,
    /// Length as a fraction of stature.
    pub length: f64,
    /// Mass as a fraction of body weight.
    pub mass: f64,
    /// Centre of mass, fraction of length from the proximal end.
    pub com_ratio: f64,
}

/// Breadth-type measures that position the limb chains on the trunk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Breadths {
    pub shoulder_half_width_m: f64,
    pub hip_half_width_m: f64,
    pub ankle_height_m: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    pub segments: Vec<SegmentCoefficients>,
    /// Breadths as fractions of stature.
    pub breadths: Breadths,
}

/// Segment names of the default full-body model, in segment-id order.
pub const SEGMENT_NAMES: [&str; 16] = [
    "pelvis",
    "abdomen",
    "thorax",
    "head_neck",
    "upper_arm_R",
    "forearm_R",
    "hand_R",
    "upper_arm_L",
    "forearm_L",
    "hand_L",
    "thigh_R",
    "shank_R",
    "foot_R",
    "thigh_L",
    "shank_L",
    "foot_L",
];

// (length/H, mass/W, com ratio from proximal end)
const DEFAULT_ROWS: [(f64, f64, f64); 16] = [
    (0.070, 0.142, 0.105),
    (0.080, 0.139, 0.440),
    (0.138, 0.216, 0.500),
    (0.182, 0.081, 0.600),
    (0.186, 0.028, 0.436),
    (0.146, 0.016, 0.430),
    (0.108, 0.006, 0.506),
    (0.186, 0.028, 0.436),
    (0.146, 0.016, 0.430),
    (0.108, 0.006, 0.506),
    (0.245, 0.100, 0.433),
    (0.246, 0.0465, 0.433),
    (0.152, 0.0145, 0.500),
    (0.245, 0.100, 0.433),
    (0.246, 0.0465, 0.433),
    (0.152, 0.0145, 0.500),
];

impl CoefficientTable {
    /// The shipped default table. Mass fractions sum to 1.0.
    pub fn default_table() -> Self {
        let segments = SEGMENT_NAMES
            .iter()
            .zip(DEFAULT_ROWS.iter())
            .map(|(name, &(length, mass, com_ratio))| SegmentCoefficients {
                name: name.to_string(),
                length,
                mass,
                com_ratio,
            })
            .collect();
        CoefficientTable {
            segments,
            breadths: Breadths {
                shoulder_half_width_m: 0.1295,
                hip_half_width_m: 0.0955,
                ankle_height_m: 0.039,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mut mass_sum = 0.0;
        for c in &self.segments {
            positive(&c.name, c.length)?;
            positive(&c.name, c.mass)?;
            if !(0.0..=1.0).contains(&c.com_ratio) {
                return Err(Error::InvalidDimension { name: c.name.clone(), value: c.com_ratio });
            }
            mass_sum += c.mass;
        }
        if mass_sum > 1.0 + 1e-9 {
            return Err(Error::InvalidInput(alloc::format!(
                "segment mass fractions sum to {mass_sum} > 1"
            )));
        }
        let b = &self.breadths;
        positive("shoulder_half_width", b.shoulder_half_width_m)?;
        positive("hip_half_width", b.hip_half_width_m)?;
        positive("ankle_height", b.ankle_height_m)?;
        Ok(())
    }
}

impl Default for CoefficientTable {
    fn default() -> Self {
        Self::default_table()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SegmentDimension {
    pub name: String,
    pub length_m: f64,
    pub mass_kg: f64,
    pub com_ratio: f64,
}

/// Absolute segment dimensions of one body.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentDimensions {
    pub segments: Vec<SegmentDimension>,
    pub breadths: Breadths,
}

impl SegmentDimensions {
    pub fn get(&self, name: &str) -> Option<&SegmentDimension> {
        self.segments.iter().find(|s| s.name == name)
    }

    pub fn total_mass(&self) -> f64 {
        self.segments.iter().map(|s| s.mass_kg).sum()
    }

    /// Every length multiplied by `factor`; masses untouched.
    pub fn scale_lengths(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for s in &mut out.segments {
            s.length_m *= factor;
        }
        out.breadths.shoulder_half_width_m *= factor;
        out.breadths.hip_half_width_m *= factor;
        out.breadths.ankle_height_m *= factor;
        out
    }
}

fn positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidDimension { name: name.to_string(), value })
    }
}

/// Scales a coefficient table to a body of the given stature and weight.
pub fn scale_segments(height_m: f64, weight_kg: f64, table: &CoefficientTable) -> Result<SegmentDimensions> {
    positive("height", height_m)?;
    positive("weight", weight_kg)?;
    table.validate()?;
    let segments = table
        .segments
        .iter()
        .map(|c| SegmentDimension {
            name: c.name.clone(),
            length_m: c.length * height_m,
            mass_kg: c.mass * weight_kg,
            com_ratio: c.com_ratio,
        })
        .collect();
    let b = table.breadths;
    Ok(SegmentDimensions {
        segments,
        breadths: Breadths {
            shoulder_half_width_m: b.shoulder_half_width_m * height_m,
            hip_half_width_m: b.hip_half_width_m * height_m,
            ankle_height_m: b.ankle_height_m * height_m,
        },
    })
}

/// Piecewise-linear strength curve over one joint coordinate.
///
/// Queries outside the breakpoint range take the nearest end value.
#[derive(Debug, Clone, PartialEq)]
pub struct StrengthTable {
    /// Joint group the curve applies to, e.g. `shoulder_R`.
    pub group: String,
    /// Name of the joint whose angle drives the lookup, e.g. `elbow_R_flexion`.
    pub coordinate: String,
    /// `(angle_rad, strength_nm)` breakpoints, strictly increasing in angle.
    pub points: Vec<(f64, f64)>,
}

impl StrengthTable {
    pub fn validate(&self) -> Result<()> {
        if self.points.is_empty() {
            return Err(Error::InvalidInput(alloc::format!("strength table `{}` is empty", self.group)));
        }
        for w in self.points.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::InvalidInput(alloc::format!(
                    "strength table `{}` angles not strictly increasing",
                    self.group
                )));
            }
        }
        for &(angle, value) in &self.points {
            if !angle.is_finite() || !(value > 0.0) || !value.is_finite() {
                return Err(Error::InvalidStrength(value));
            }
        }
        Ok(())
    }

    pub fn interpolate(&self, angle: f64) -> f64 {
        let pts = &self.points;
        let first = pts[0];
        let last = pts[pts.len() - 1];
        if angle <= first.0 {
            return first.1;
        }
        if angle >= last.0 {
            return last.1;
        }
        let i = pts.partition_point(|p| p.0 <= angle);
        let (x0, y0) = pts[i - 1];
        let (x1, y1) = pts[i];
        y0 + (y1 - y0) * (angle - x0) / (x1 - x0)
    }
}

/// One subject's body, strength and fatigue characterization.
#[derive(Debug, Clone, PartialEq)]
pub struct SubjectProfile {
    pub label: String,
    pub height_m: f64,
    pub weight_kg: f64,
    /// Maximum joint moment per joint group (or per joint name), N·m.
    pub strengths: BTreeMap<String, f64>,
    pub strength_tables: Vec<StrengthTable>,
    /// Fatigue resistance m, minutes (k = 1/m).
    pub resistance_min: f64,
    /// Recovery rate R, 1/min.
    pub recovery_per_min: f64,
}

impl SubjectProfile {
    pub fn validate(&self) -> Result<()> {
        positive("height", self.height_m)?;
        positive("weight", self.weight_kg)?;
        for &v in self.strengths.values() {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidStrength(v));
            }
        }
        for t in &self.strength_tables {
            t.validate()?;
        }
        if !(self.resistance_min.is_finite() && self.resistance_min > 0.0) {
            return Err(Error::InvalidParameter { name: "fatigue_resistance", value: self.resistance_min });
        }
        if !(self.recovery_per_min.is_finite() && self.recovery_per_min >= 0.0) {
            return Err(Error::InvalidParameter { name: "recovery_rate", value: self.recovery_per_min });
        }
        Ok(())
    }

    /// Fatigue rate k = 1/m, 1/min.
    pub fn fatigue_rate_per_min(&self) -> f64 {
        1.0 / self.resistance_min
    }
}

/// Joint group of a joint name: everything before the last `_`
/// (`shoulder_R_flexion` → `shoulder_R`).
pub fn joint_group(joint_name: &str) -> &str {
    match joint_name.rfind('_') {
        Some(i) => &joint_name[..i],
        None => joint_name,
    }
}

/// Maximum joint moment of `joint` for a subject in a given posture.
///
/// A strength table configured for the joint's group takes precedence and is
/// interpolated at its coordinate angle; otherwise the scalar strength keyed
/// by the joint name or its group is returned.
pub fn strength_for_posture(
    profile: &SubjectProfile,
    model: &SkeletonModel,
    joint: JointId,
    posture: &Posture,
) -> Result<f64> {
    let spec = model.joint(joint).ok_or_else(|| Error::UnknownJoint(alloc::format!("{}", joint.0)))?;
    let group = joint_group(&spec.name);
    if let Some(table) = profile.strength_tables.iter().find(|t| t.group == group || t.group == spec.name) {
        table.validate()?;
        let coord = model
            .joint_by_name(&table.coordinate)
            .ok_or_else(|| Error::UnknownJoint(table.coordinate.clone()))?;
        let angle = *posture
            .q
            .get(coord.id.index())
            .ok_or(Error::DimensionMismatch { expected: model.dof(), actual: posture.q.len() })?;
        return Ok(table.interpolate(angle));
    }
    profile
        .strengths
        .get(&spec.name)
        .or_else(|| profile.strengths.get(group))
        .copied()
        .ok_or_else(|| Error::MissingStrength(spec.name.clone()))
}

/// Mean, standard deviation and level half-width (in SDs) of one factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorStats {
    pub mean: f64,
    pub sd: f64,
    pub sigmas: f64,
}

impl FactorStats {
    pub const fn new(mean: f64, sd: f64, sigmas: f64) -> Self {
        FactorStats { mean, sd, sigmas }
    }

    /// Low, average and high level: mean ∓ sigmas·sd.
    pub fn levels(&self) -> [f64; 3] {
        let delta = self.sigmas * self.sd;
        [self.mean - delta, self.mean, self.mean + delta]
    }
}

/// Theoretical shoulder fatigue resistance statistics, minutes.
pub const THEORETICAL_RESISTANCE: FactorStats = FactorStats::new(0.7562, 0.4347, 1.0);
/// Fatigue resistance measured on trained industrial workers, minutes.
pub const MEASURED_WORKER_RESISTANCE: FactorStats = FactorStats::new(1.32, 0.62, 1.0);

/// Factorial population description: three levels per factor.
#[derive(Debug, Clone, PartialEq)]
pub struct PopulationSpec {
    pub height_m: FactorStats,
    pub weight_kg: FactorStats,
    /// Strength of the analyzed joint group, N·m.
    pub strength_nm: FactorStats,
    pub resistance_min: FactorStats,
    pub recovery_per_min: f64,
    /// Joint group whose strength varies by level.
    pub analyzed_group: String,
    /// Mean strengths of every joint group; the analyzed group's entry is
    /// replaced by its level.
    pub base_strengths: BTreeMap<String, f64>,
}

/// Level triples `[low, average, high]` per factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorLevels {
    pub height_m: [f64; 3],
    pub weight_kg: [f64; 3],
    pub strength_nm: [f64; 3],
    pub resistance_min: [f64; 3],
}

pub fn expand_levels(spec: &PopulationSpec) -> Result<FactorLevels> {
    let factors: [(&'static str, &FactorStats); 4] = [
        ("height", &spec.height_m),
        ("weight", &spec.weight_kg),
        ("strength", &spec.strength_nm),
        ("fatigue_resistance", &spec.resistance_min),
    ];
    let mut out = [[0.0; 3]; 4];
    for (slot, (factor, stats)) in out.iter_mut().zip(factors) {
        if !(stats.sd >= 0.0 && stats.sigmas >= 0.0 && stats.mean.is_finite() && stats.sd.is_finite()) {
            return Err(Error::InvalidInput(alloc::format!("invalid statistics for factor `{factor}`")));
        }
        let levels = stats.levels();
        if let Some(&bad) = levels.iter().find(|v| !(**v > 0.0)) {
            return Err(Error::DegenerateLevel { factor, value: bad });
        }
        *slot = levels;
    }
    Ok(FactorLevels {
        height_m: out[0],
        weight_kg: out[1],
        strength_nm: out[2],
        resistance_min: out[3],
    })
}
