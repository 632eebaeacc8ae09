//! capture → average posture → static loads → fatigue trajectory →
//! endurance → reports.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use jointfatigue_core::anthro::{scale_segments, strength_for_posture, CoefficientTable, SegmentDimensions, SubjectProfile};
use jointfatigue_core::cohort::{build_subgroups, sweep_endurance, SweepGrid, TaskGeometry};
use jointfatigue_core::fatigue::{
    endurance_time_with, simulate_schedule, CapacityTrajectory, EnduranceResult, FatigueParams, ScheduleTemplate,
    SimulationOptions, TemplateSegment, WorkLoad, WorkRestSchedule,
};
use jointfatigue_core::skeleton::{build_default_skeleton, clamp_posture, forward_kinematics, JointId, Posture, SegmentFrames, SkeletonModel};
use jointfatigue_core::statics::{static_joint_loads, ExternalLoad, JointLoadProfile};
use nalgebra::Vector3;

use crate::config::{PostureInput, RunConfig, Source};
use crate::error::{Error, Result, StageExt};
use crate::formats::json::{
    apply_model_override, from_json_str, loads_from_docs, schedule_from_docs, CoefficientDoc, JointRow, LoadDoc,
    PopulationDoc, ProfileDoc, ScheduleEntry,
};
use crate::formats::posture::{average_posture, clamp_capture, parse_posture_text, warn_violation, PostureCapture};
use crate::report;

/// Everything a run needs, parsed and validated.
#[derive(Debug, Clone)]
pub struct Inputs {
    pub coefficients: CoefficientTable,
    pub profile: SubjectProfile,
    pub dims: SegmentDimensions,
    pub model: SkeletonModel,
    pub loads: Vec<ExternalLoad>,
    pub template: ScheduleTemplate,
    pub capture: Option<PostureCapture>,
    /// Averaged and clamped posture.
    pub posture: Posture,
    pub joint: JointId,
    pub gravity: Vector3<f64>,
    pub opts: SimulationOptions,
}

fn read_doc<T: serde::de::DeserializeOwned>(src: &Source, stage: &'static str) -> Result<T> {
    let path = src.describe();
    let text = src.read().stage(stage, &path)?;
    from_json_str(&text, &path).stage(stage, &path)
}

pub fn read_coefficients(cfg: &RunConfig) -> Result<CoefficientTable> {
    match &cfg.coefficients {
        Some(src) => read_doc::<CoefficientDoc>(src, "coefficients")?.to_table().stage("coefficients", &src.describe()),
        None => Ok(CoefficientTable::default_table()),
    }
}

pub fn read_schedule(src: &Source) -> Result<ScheduleTemplate> {
    schedule_from_docs(&read_doc::<Vec<ScheduleEntry>>(src, "schedule")?).stage("schedule", &src.describe())
}

pub fn load_inputs(cfg: &RunConfig) -> Result<Inputs> {
    let coefficients = read_coefficients(cfg)?;
    let profile_src = cfg.profile.describe();
    let profile = read_doc::<ProfileDoc>(&cfg.profile, "profile")?.to_profile().stage("profile", &profile_src)?;
    let dims = scale_segments(profile.height_m, profile.weight_kg, &coefficients).stage("body scaling", &profile_src)?;
    let mut model = build_default_skeleton(&dims).stage("model", &profile_src)?;
    if let Some(src) = &cfg.model {
        let rows: Vec<JointRow> = read_doc(src, "model override")?;
        model = apply_model_override(&model, &rows).stage("model override", &src.describe())?;
    }
    let loads = loads_from_docs(&read_doc::<Vec<LoadDoc>>(&cfg.load_case, "load case")?);
    let template = read_schedule(&cfg.schedule)?;
    let (capture, posture) = resolve_posture(cfg, &model)?;
    let joint = model
        .joint_by_name(&cfg.joint)
        .map(|j| j.id)
        .ok_or_else(|| Error::Model(jointfatigue_core::Error::UnknownJoint(cfg.joint.clone())))?;
    Ok(Inputs {
        coefficients,
        profile,
        dims,
        model,
        loads,
        template,
        capture,
        posture,
        joint,
        gravity: Vector3::from(cfg.gravity),
        opts: SimulationOptions { sample_dt_s: cfg.sample_dt_s, continue_past_failure: cfg.continue_past_failure },
    })
}

/// The analyzed posture: the averaged capture, or the inline angles, clamped
/// into the joint limits.
pub fn resolve_posture(cfg: &RunConfig, model: &SkeletonModel) -> Result<(Option<PostureCapture>, Posture)> {
    match &cfg.posture {
        PostureInput::Capture(src) => {
            let path = src.describe();
            let text = src.read().stage("posture", &path)?;
            let mut capture = parse_posture_text(&text, &path, model.dof()).stage("posture", &path)?;
            clamp_capture(&mut capture, model).stage("posture", &path)?;
            let mean = average_posture(&capture).stage("posture", &path)?;
            let posture = clamp_with_warnings(model, &mean, &format!("{path} average"))?;
            Ok((Some(capture), posture))
        }
        PostureInput::Inline(map) => {
            let mut q = vec![0.0; model.dof()];
            for (name, v) in map {
                let j = model
                    .joint_by_name(name)
                    .ok_or_else(|| Error::Model(jointfatigue_core::Error::UnknownJoint(name.clone())))?;
                q[j.id.index()] = *v;
            }
            Ok((None, clamp_with_warnings(model, &Posture::new(q), "inline posture")?))
        }
    }
}

fn clamp_with_warnings(model: &SkeletonModel, p: &Posture, context: &str) -> Result<Posture> {
    let (out, violations) = clamp_posture(model, p)?;
    for v in &violations {
        warn_violation(model, context, v);
    }
    Ok(out)
}

/// Fatigue outcome of one joint under the task.
#[derive(Debug, Clone)]
pub struct JointVerdict {
    pub joint: JointId,
    pub name: String,
    pub load_nm: f64,
    pub strength_nm: f64,
    pub result: EnduranceResult,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub inputs: Inputs,
    pub frames: SegmentFrames,
    pub loads: JointLoadProfile,
    /// Analyzed joint.
    pub trajectory: CapacityTrajectory,
    pub verdict: JointVerdict,
    /// Every joint with a configured strength, in joint order.
    pub joints: Vec<JointVerdict>,
}

/// Work segments with a fixed load keep it for the analyzed joint; for every
/// other joint all work runs at that joint's own task load.
fn schedule_for(template: &ScheduleTemplate, task_load: f64, analyzed: bool) -> Result<WorkRestSchedule> {
    if analyzed {
        return Ok(template.resolve(task_load)?);
    }
    let t = ScheduleTemplate {
        segments: template
            .segments
            .iter()
            .map(|s| match *s {
                TemplateSegment::Work { duration_s, .. } => TemplateSegment::Work { duration_s, load: WorkLoad::Task },
                rest => rest,
            })
            .collect(),
    };
    Ok(t.resolve(task_load)?)
}

pub fn run_pipeline(cfg: &RunConfig) -> Result<RunReport> {
    let inputs = load_inputs(cfg)?;
    run_with_inputs(inputs)
}

pub fn run_with_inputs(inputs: Inputs) -> Result<RunReport> {
    let frames = forward_kinematics(&inputs.model, &inputs.posture).stage("kinematics", "posture")?;
    let loads = static_joint_loads(&inputs.model, &inputs.posture, &inputs.dims, &inputs.loads, inputs.gravity)
        .stage("statics", "load case")?;

    let mut joints = Vec::new();
    let mut verdict = None;
    for spec in inputs.model.joints() {
        let analyzed = spec.id == inputs.joint;
        let strength = match strength_for_posture(&inputs.profile, &inputs.model, spec.id, &inputs.posture) {
            Ok(s) => s,
            Err(jointfatigue_core::Error::MissingStrength(_)) if !analyzed => continue,
            Err(e) => return Err(Error::from(e).at_stage("strength", "profile")),
        };
        let params = FatigueParams::new(strength, inputs.profile.resistance_min, inputs.profile.recovery_per_min)?;
        let load = loads.axis_moment(spec.id).abs();
        let sched = schedule_for(&inputs.template, load, analyzed).stage("schedule", &spec.name)?;
        let result = endurance_time_with(&params, &sched, inputs.opts).stage("fatigue", &spec.name)?;
        let v = JointVerdict { joint: spec.id, name: spec.name.clone(), load_nm: load, strength_nm: strength, result };
        if analyzed {
            verdict = Some(v.clone());
        }
        joints.push(v);
    }
    let verdict = verdict.expect("analyzed joint always evaluated");
    let params = FatigueParams::new(verdict.strength_nm, inputs.profile.resistance_min, inputs.profile.recovery_per_min)?;
    let sched = schedule_for(&inputs.template, verdict.load_nm, true)?;
    let trajectory = simulate_schedule(&params, &sched, inputs.opts).stage("fatigue", &verdict.name)?;
    Ok(RunReport { inputs, frames, loads, trajectory, verdict, joints })
}

pub fn summary_text(r: &RunReport) -> String {
    let mut s = String::new();
    let p = &r.inputs.profile;
    let _ = writeln!(s, "subject: {} (height {:.3} m, weight {:.1} kg)", p.label, p.height_m, p.weight_kg);
    let _ = writeln!(s, "fatigue resistance m = {} min, recovery R = {} 1/min", p.resistance_min, p.recovery_per_min);
    if let Some(c) = &r.inputs.capture {
        let rate = c.rate_hz.map_or("n/a".to_string(), |h| format!("{h:.1} Hz"));
        let _ = writeln!(s, "posture: mean of {} frames from {} ({rate})", c.frames.len(), c.source);
    }
    let _ = writeln!(s, "schedule horizon: {:.1} s", r.inputs.template.horizon_s());
    let v = &r.verdict;
    let _ = writeln!(s);
    let _ = writeln!(s, "analyzed joint: {}", v.name);
    let _ = writeln!(s, "  load {:.3} N·m, strength {:.3} N·m, ratio {:.4}", v.load_nm, v.strength_nm, v.load_nm / v.strength_nm);
    let _ = writeln!(s, "  fatigue index {:.4}", v.result.final_fatigue_index);
    let _ = writeln!(s, "  endurance: {}", verdict_text(&v.result));
    let _ = writeln!(s);
    let _ = writeln!(s, "{:<24}{:>12}{:>14}{:>10}{:>12}", "joint", "load_Nm", "strength_Nm", "index", "endurance");
    for j in &r.joints {
        let _ = writeln!(
            s,
            "{:<24}{:>12.3}{:>14.3}{:>10.4}{:>12}",
            j.name,
            j.load_nm,
            j.strength_nm,
            j.result.final_fatigue_index,
            report::endurance_cell(&j.result.endurance)
        );
    }
    s
}

fn verdict_text(r: &EnduranceResult) -> String {
    match r.endurance {
        jointfatigue_core::fatigue::Endurance::Failed { at_s } => format!("fails at {at_s:.1} s"),
        jointfatigue_core::fatigue::Endurance::Exceeds { horizon_s } => format!("sustains the full {horizon_s:.0} s"),
    }
}

fn write_file(dir: &Path, name: &str, text: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let path = dir.join(name);
    std::fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

/// Writes `trajectory.csv`, `loads.csv` and `summary.txt`.
pub fn write_run_reports(r: &RunReport, dir: &Path) -> Result<Vec<PathBuf>> {
    Ok(vec![
        write_file(dir, "trajectory.csv", &report::trajectory_csv(&r.trajectory)?)?,
        write_file(dir, "loads.csv", &report::load_profile_csv(&r.inputs.model, &r.loads)?)?,
        write_file(dir, "summary.txt", &summary_text(r))?,
    ])
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub grid: SweepGrid,
    pub recovery_per_min: f64,
}

/// The 81-subgroup sweep for the configured population and task.
pub fn run_sweep(cfg: &RunConfig) -> Result<SweepReport> {
    let src = cfg.population.as_ref().ok_or_else(|| Error::Config("sweep needs a `population` file".into()))?;
    let spec = read_doc::<PopulationDoc>(src, "population")?.to_spec();
    let template = read_schedule(cfg.sweep_schedule.as_ref().unwrap_or(&cfg.schedule))?;
    let coefficients = read_coefficients(cfg)?;
    let dims = scale_segments(spec.height_m.mean, spec.weight_kg.mean, &coefficients).stage("body scaling", &src.describe())?;
    let model = build_default_skeleton(&dims)?;
    let (_, posture) = resolve_posture(cfg, &model)?;
    let task = TaskGeometry {
        posture,
        loads: loads_from_docs(&read_doc::<Vec<LoadDoc>>(&cfg.load_case, "load case")?),
        joint: cfg.joint.clone(),
        gravity: Vector3::from(cfg.gravity),
        coefficients,
    };
    let groups = build_subgroups(&spec, &task).stage("population", &src.describe())?;
    let levels = jointfatigue_core::anthro::expand_levels(&spec)?;
    let opts = SimulationOptions { sample_dt_s: cfg.sample_dt_s, continue_past_failure: false };
    let grid = sweep_endurance(&groups, levels, &template, opts).stage("sweep", &src.describe())?;
    Ok(SweepReport { grid, recovery_per_min: spec.recovery_per_min })
}

/// Writes `sweep.csv` and `sweep_table.txt`.
pub fn write_sweep_reports(r: &SweepReport, dir: &Path) -> Result<Vec<PathBuf>> {
    Ok(vec![
        write_file(dir, "sweep.csv", &report::sweep_csv(&r.grid)?)?,
        write_file(dir, "sweep_table.txt", &report::sweep_table(&r.grid, r.recovery_per_min))?,
    ])
}

/// Joint frames for the configured subject and posture.
pub fn kinematics(inputs: &Inputs) -> Result<String> {
    report::fk_csv(&inputs.model, &forward_kinematics(&inputs.model, &inputs.posture)?)
}
