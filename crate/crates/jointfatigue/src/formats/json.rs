//! JSON documents and their conversions to core types.

use std::collections::BTreeMap;
use std::path::Path;

use jointfatigue_core::anthro::{
    Breadths, CoefficientTable, FactorStats, PopulationSpec, SegmentCoefficients, StrengthTable, SubjectProfile,
};
use jointfatigue_core::fatigue::{ScheduleTemplate, TemplateSegment, WorkLoad};
use jointfatigue_core::skeleton::{DhParams, JointId, JointSpec, SkeletonModel};
use jointfatigue_core::statics::ExternalLoad;
use nalgebra::Vector3;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn from_json_str<T: DeserializeOwned>(text: &str, source: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Json { path: source.into(), source: e })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    from_json_str(&text, &path.display().to_string())
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

// ---- model override ----

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JointRow {
    pub id: usize,
    pub name: String,
    pub parent: Option<usize>,
    pub a_m: f64,
    pub alpha_rad: f64,
    pub d_m: f64,
    pub theta_offset_rad: f64,
    pub q_lower_rad: f64,
    pub q_upper_rad: f64,
}

impl JointRow {
    pub fn from_spec(j: &JointSpec) -> Self {
        JointRow {
            id: j.id.0,
            name: j.name.clone(),
            parent: j.parent.map(|p| p.0),
            a_m: j.dh.a,
            alpha_rad: j.dh.alpha,
            d_m: j.dh.d,
            theta_offset_rad: j.dh.theta_offset,
            q_lower_rad: j.lower_limit,
            q_upper_rad: j.upper_limit,
        }
    }

    pub fn to_spec(&self) -> JointSpec {
        JointSpec {
            id: JointId(self.id),
            name: self.name.clone(),
            dh: DhParams::new(self.a_m, self.alpha_rad, self.d_m, self.theta_offset_rad),
            lower_limit: self.q_lower_rad,
            upper_limit: self.q_upper_rad,
            parent: self.parent.map(JointId),
        }
    }
}

/// Replaces the joint table of `model` with the rows of an override file.
pub fn apply_model_override(model: &SkeletonModel, rows: &[JointRow]) -> Result<SkeletonModel> {
    Ok(model.with_joints(rows.iter().map(JointRow::to_spec).collect())?)
}

// ---- load case ----

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoadDoc {
    pub segment: String,
    #[serde(default)]
    pub offset_m: [f64; 3],
    #[serde(rename = "force_N")]
    pub force_n: [f64; 3],
    #[serde(default)]
    pub label: String,
}

impl LoadDoc {
    pub fn from_load(l: &ExternalLoad) -> Self {
        LoadDoc { segment: l.segment.clone(), offset_m: l.offset.into(), force_n: l.force.into(), label: l.label.clone() }
    }

    pub fn to_load(&self) -> ExternalLoad {
        ExternalLoad {
            segment: self.segment.clone(),
            offset: Vector3::from(self.offset_m),
            force: Vector3::from(self.force_n),
            label: self.label.clone(),
        }
    }
}

pub fn loads_from_docs(docs: &[LoadDoc]) -> Vec<ExternalLoad> {
    docs.iter().map(LoadDoc::to_load).collect()
}

// ---- subject profile ----

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrengthTableDoc {
    pub group: String,
    pub coordinate: String,
    /// `[angle_rad, strength_Nm]` breakpoints.
    pub points: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDoc {
    #[serde(default)]
    pub label: String,
    pub height_m: f64,
    pub weight_kg: f64,
    /// Maximum joint moment per joint group or joint name, N·m.
    pub strengths: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub strength_tables: Vec<StrengthTableDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_per_min: Option<f64>,
    #[serde(rename = "R_per_min")]
    pub r_per_min: f64,
}

impl ProfileDoc {
    pub fn from_profile(p: &SubjectProfile) -> Self {
        ProfileDoc {
            label: p.label.clone(),
            height_m: p.height_m,
            weight_kg: p.weight_kg,
            strengths: p.strengths.iter().map(|(k, v)| (k.clone(), *v)).collect(),
            strength_tables: p
                .strength_tables
                .iter()
                .map(|t| StrengthTableDoc {
                    group: t.group.clone(),
                    coordinate: t.coordinate.clone(),
                    points: t.points.iter().map(|&(a, s)| [a, s]).collect(),
                })
                .collect(),
            m_min: Some(p.resistance_min),
            k_per_min: None,
            r_per_min: p.recovery_per_min,
        }
    }

    pub fn to_profile(&self) -> Result<SubjectProfile> {
        let resistance_min = match (self.m_min, self.k_per_min) {
            (Some(m), None) => m,
            (None, Some(k)) if k > 0.0 => 1.0 / k,
            (None, Some(k)) => {
                return Err(jointfatigue_core::Error::InvalidParameter { name: "fatigue_rate", value: k }.into())
            }
            _ => return Err(Error::Config("profile needs exactly one of `m_min` and `k_per_min`".into())),
        };
        let profile = SubjectProfile {
            label: self.label.clone(),
            height_m: self.height_m,
            weight_kg: self.weight_kg,
            strengths: self.strengths.iter().map(|(k, v)| (k.clone(), *v)).collect(),
            strength_tables: self
                .strength_tables
                .iter()
                .map(|t| StrengthTable {
                    group: t.group.clone(),
                    coordinate: t.coordinate.clone(),
                    points: t.points.iter().map(|p| (p[0], p[1])).collect(),
                })
                .collect(),
            resistance_min,
            recovery_per_min: self.r_per_min,
        };
        profile.validate()?;
        Ok(profile)
    }
}

// ---- schedule ----

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ScheduleEntry {
    Work {
        duration_s: f64,
        #[serde(rename = "load_Nm", default, skip_serializing_if = "Option::is_none")]
        load_nm: Option<f64>,
        /// Names the task load case; the load is the analyzed joint's
        /// moment under it.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        load_case: Option<String>,
    },
    Rest {
        duration_s: f64,
    },
}

pub fn schedule_to_docs(t: &ScheduleTemplate) -> Vec<ScheduleEntry> {
    t.segments
        .iter()
        .map(|s| match *s {
            TemplateSegment::Work { duration_s, load: WorkLoad::Fixed(v) } => {
                ScheduleEntry::Work { duration_s, load_nm: Some(v), load_case: None }
            }
            TemplateSegment::Work { duration_s, load: WorkLoad::Task } => {
                ScheduleEntry::Work { duration_s, load_nm: None, load_case: Some("task".into()) }
            }
            TemplateSegment::Rest { duration_s } => ScheduleEntry::Rest { duration_s },
        })
        .collect()
}

pub fn schedule_from_docs(docs: &[ScheduleEntry]) -> Result<ScheduleTemplate> {
    let segments = docs
        .iter()
        .enumerate()
        .map(|(i, d)| match d {
            ScheduleEntry::Work { duration_s, load_nm: Some(v), load_case: None } => {
                Ok(TemplateSegment::Work { duration_s: *duration_s, load: WorkLoad::Fixed(*v) })
            }
            ScheduleEntry::Work { duration_s, load_nm: None, load_case: Some(_) } => {
                Ok(TemplateSegment::Work { duration_s: *duration_s, load: WorkLoad::Task })
            }
            ScheduleEntry::Work { .. } => {
                Err(Error::Config(format!("schedule entry {}: give exactly one of `load_Nm` and `load_case`", i + 1)))
            }
            ScheduleEntry::Rest { duration_s } => Ok(TemplateSegment::Rest { duration_s: *duration_s }),
        })
        .collect::<Result<Vec<_>>>()?;
    let template = ScheduleTemplate { segments };
    // Validate durations and fixed loads early.
    template.resolve(0.0)?;
    Ok(template)
}

// ---- population ----

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorDoc {
    pub mean: f64,
    pub sd: f64,
    /// Level half-width in SDs.
    pub sigmas: f64,
}

impl From<FactorStats> for FactorDoc {
    fn from(f: FactorStats) -> Self {
        FactorDoc { mean: f.mean, sd: f.sd, sigmas: f.sigmas }
    }
}

impl From<FactorDoc> for FactorStats {
    fn from(f: FactorDoc) -> Self {
        FactorStats::new(f.mean, f.sd, f.sigmas)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PopulationDoc {
    pub height_m: FactorDoc,
    pub weight_kg: FactorDoc,
    #[serde(rename = "strength_Nm")]
    pub strength_nm: FactorDoc,
    pub m_min: FactorDoc,
    #[serde(rename = "R_per_min")]
    pub r_per_min: f64,
    pub analyzed_group: String,
    pub base_strengths: BTreeMap<String, f64>,
}

impl PopulationDoc {
    pub fn from_spec(s: &PopulationSpec) -> Self {
        PopulationDoc {
            height_m: s.height_m.into(),
            weight_kg: s.weight_kg.into(),
            strength_nm: s.strength_nm.into(),
            m_min: s.resistance_min.into(),
            r_per_min: s.recovery_per_min,
            analyzed_group: s.analyzed_group.clone(),
            base_strengths: s.base_strengths.iter().map(|(k, v)| (k.clone(), *v)).collect(),
        }
    }

    pub fn to_spec(&self) -> PopulationSpec {
        PopulationSpec {
            height_m: self.height_m.into(),
            weight_kg: self.weight_kg.into(),
            strength_nm: self.strength_nm.into(),
            resistance_min: self.m_min.into(),
            recovery_per_min: self.r_per_min,
            analyzed_group: self.analyzed_group.clone(),
            base_strengths: self.base_strengths.iter().map(|(k, v)| (k.clone(), *v)).collect(),
        }
    }
}

// ---- coefficient table ----

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentCoefficientDoc {
    pub name: String,
    pub length: f64,
    pub mass: f64,
    pub com_ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BreadthDoc {
    pub shoulder_half_width: f64,
    pub hip_half_width: f64,
    pub ankle_height: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientDoc {
    pub segments: Vec<SegmentCoefficientDoc>,
    pub breadths: BreadthDoc,
}

impl CoefficientDoc {
    pub fn from_table(t: &CoefficientTable) -> Self {
        CoefficientDoc {
            segments: t
                .segments
                .iter()
                .map(|s| SegmentCoefficientDoc { name: s.name.clone(), length: s.length, mass: s.mass, com_ratio: s.com_ratio })
                .collect(),
            breadths: BreadthDoc {
                shoulder_half_width: t.breadths.shoulder_half_width_m,
                hip_half_width: t.breadths.hip_half_width_m,
                ankle_height: t.breadths.ankle_height_m,
            },
        }
    }

    pub fn to_table(&self) -> Result<CoefficientTable> {
        let t = CoefficientTable {
            segments: self
                .segments
                .iter()
                .map(|s| SegmentCoefficients { name: s.name.clone(), length: s.length, mass: s.mass, com_ratio: s.com_ratio })
                .collect(),
            breadths: Breadths {
                shoulder_half_width_m: self.breadths.shoulder_half_width,
                hip_half_width_m: self.breadths.hip_half_width,
                ankle_height_m: self.breadths.ankle_height,
            },
        };
        t.validate()?;
        Ok(t)
    }
}
