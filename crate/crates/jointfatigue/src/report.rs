//! CSV and text reports. Numbers use fixed decimals so identical inputs give
//! byte-identical files.

use std::fmt::Write as _;

use jointfatigue_core::cohort::{Factor, Level, LevelCombo, SweepGrid};
use jointfatigue_core::fatigue::{CapacityTrajectory, Endurance};
use jointfatigue_core::skeleton::{SegmentFrames, SkeletonModel};
use jointfatigue_core::statics::JointLoadProfile;

use crate::error::Result;

fn f6(x: f64) -> String {
    format!("{x:.6}")
}

fn to_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn trajectory_csv(traj: &CapacityTrajectory) -> Result<String> {
    to_csv(
        &["t_s", "gamma_cem_Nm", "fatigue_index"],
        traj.samples.iter().map(|s| vec![f6(s.t_s), f6(s.capacity_nm), f6(traj.fatigue_index_at(s))]),
    )
}

pub fn load_profile_csv(model: &SkeletonModel, p: &JointLoadProfile) -> Result<String> {
    to_csv(
        &[
            "joint_id", "joint", "axis_moment_Nm", "moment_x_Nm", "moment_y_Nm", "moment_z_Nm", "force_x_N", "force_y_N",
            "force_z_N",
        ],
        model.joints().iter().map(|j| {
            let i = j.id.index();
            let (m, f) = (p.moments[i], p.forces[i]);
            vec![j.id.0.to_string(), j.name.clone(), f6(p.axis_moments[i]), f6(m.x), f6(m.y), f6(m.z), f6(f.x), f6(f.y), f6(f.z)]
        }),
    )
}

pub fn fk_csv(model: &SkeletonModel, frames: &SegmentFrames) -> Result<String> {
    to_csv(
        &["joint_id", "joint", "x_m", "y_m", "z_m", "axis_x", "axis_y", "axis_z"],
        model.joints().iter().map(|j| {
            let p = frames.joint_position(j.id);
            let a = frames.joint_axis(j.id);
            vec![j.id.0.to_string(), j.name.clone(), f6(p.x), f6(p.y), f6(p.z), f6(a.x), f6(a.y), f6(a.z)]
        }),
    )
}

pub fn endurance_cell(e: &Endurance) -> String {
    match e {
        Endurance::Failed { at_s } => format!("{at_s:.1}"),
        Endurance::Exceeds { horizon_s } => format!(">{horizon_s:.0}"),
    }
}

pub fn sweep_csv(grid: &SweepGrid) -> Result<String> {
    to_csv(
        &[
            "subgroup_id", "height", "weight", "strength", "resistance", "height_m", "weight_kg", "strength_Nm", "m_min",
            "load_Nm", "endurance_s_or_censored", "final_fatigue_index",
        ],
        grid.rows.iter().map(|r| {
            let sg = &r.subgroup;
            let l = sg.levels;
            vec![
                sg.id.to_string(),
                Factor::Height.label(l.height).into(),
                Factor::Weight.label(l.weight).into(),
                Factor::Strength.label(l.strength).into(),
                Factor::Resistance.label(l.resistance).into(),
                f6(sg.profile.height_m),
                f6(sg.profile.weight_kg),
                f6(sg.params.max_strength_nm()),
                f6(sg.params.resistance_min()),
                f6(sg.load_nm),
                endurance_cell(&r.result.endurance),
                f6(r.result.final_fatigue_index),
            ]
        }),
    )
}

/// Height × weight blocks, one row per strength level, one column per
/// resistance level from large to small.
pub fn sweep_table(grid: &SweepGrid, recovery_per_min: f64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Endurance time (s); horizon {:.0} s; R = {recovery_per_min} 1/min", grid.horizon_s);
    let cols = [Level::High, Level::Average, Level::Low];
    let _ = write!(out, "{:<9}{:<9}{:<10}", "Height", "Weight", "Strength");
    for c in cols {
        let _ = write!(out, "{:>9}", Factor::Resistance.label(c));
    }
    out.push('\n');
    for h in Level::ALL {
        for w in Level::ALL {
            for s in Level::ALL {
                let hl = if w == Level::Low && s == Level::Low { Factor::Height.label(h) } else { "" };
                let wl = if s == Level::Low { Factor::Weight.label(w) } else { "" };
                let _ = write!(out, "{hl:<9}{wl:<9}{:<10}", Factor::Strength.label(s));
                for r in cols {
                    let combo = LevelCombo { height: h, weight: w, strength: s, resistance: r };
                    let _ = write!(out, "{:>9}", endurance_cell(&grid.row(combo).result.endurance));
                }
                out.push('\n');
            }
        }
    }
    out
}
