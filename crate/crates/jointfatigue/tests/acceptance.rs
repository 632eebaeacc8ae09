//! Acceptance suite. Each test prints one `[PASS]`/`[FAIL]` line to stderr
//! (uncaptured) and then asserts.

#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

use std::io::Write;
use std::time::Instant;

use jointfatigue::config::RunConfig;
use jointfatigue::formats::json::{from_json_str, schedule_from_docs, schedule_to_docs, ProfileDoc, ScheduleEntry};
use jointfatigue::formats::posture::{parse_posture_text, write_posture_text, PostureCapture};
use jointfatigue::formats::round_sig12;
use jointfatigue::pipeline;
use jointfatigue_core::anthro::{expand_levels, scale_segments, CoefficientTable, SubjectProfile};
use jointfatigue_core::cohort::{build_subgroups, sweep_endurance, Level, LevelCombo};
use jointfatigue_core::fatigue::*;
use jointfatigue_core::presets;
use jointfatigue_core::skeleton::*;
use jointfatigue_core::statics::{static_joint_loads, ExternalLoad};
use nalgebra::{IsometryMatrix3, Rotation3, Translation3, Vector3};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

fn verdict(name: &str, ok: bool, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "[{tag}] {name}: {detail}");
    assert!(ok, "{name}: {detail}");
}

fn run_prop<S: Strategy>(cases: u32, s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&s, f).map_err(|e| e.to_string())
}

const M_BAR: f64 = 0.7562;
const SIGMA_M: f64 = 0.4347;
/// Strength reduction after 180 s; rows m̄, m̄+σ, m̄+2σ; columns S−2σ … S+2σ.
const TABLE: [[Option<f64>; 5]; 3] = [
    [None, None, Some(69.9), Some(62.5), Some(56.3)],
    [None, Some(63.2), Some(53.2), Some(46.4), Some(40.8)],
    [Some(64.9), Some(51.9), Some(43.0), Some(36.7), Some(31.9)],
];

/// Load ratio anchored on the (m̄, S) cell and strength CV from (m̄, S+σ).
fn anchored() -> (f64, f64) {
    let r0 = M_BAR * (1.0f64 / (1.0 - 0.699)).ln() / 3.0;
    let cv = (1.0f64 / 0.301).ln() / (1.0f64 / 0.375).ln() - 1.0;
    (r0, cv)
}

fn cell_params(row: usize, col: usize) -> (FatigueParams, f64) {
    let (r0, cv) = anchored();
    let gmax = 1.0 + (col as f64 - 2.0) * cv;
    let m = M_BAR + row as f64 * SIGMA_M;
    (FatigueParams::new(gmax, m, 1.0).unwrap(), r0)
}

#[test]
fn strength_reduction_grid() {
    let start = Instant::now();
    let mut cells = Vec::new();
    let mut worst: f64 = 0.0;
    for (row, vals) in TABLE.iter().enumerate() {
        for (col, want) in vals.iter().enumerate() {
            let Some(want) = want else { continue };
            let (p, load) = cell_params(row, col);
            let c = fatigue_closed_form(p.max_strength_nm(), &p, load, 180.0).unwrap();
            let got = 100.0 * fatigue_index(&p, c).unwrap();
            worst = worst.max((got - want).abs());
            cells.push(got);
        }
    }
    let n = cells.len() as f64;
    let mean = cells.iter().sum::<f64>() / n;
    let sd = (cells.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    let elapsed = start.elapsed().as_secs_f64();
    let (r0, cv) = anchored();
    let ok = cells.len() == 12 && worst <= 1.5 && (mean - 51.7).abs() <= 0.5 && (sd - 12.1).abs() <= 0.5 && elapsed < 1.0;
    verdict(
        "strength reduction grid",
        ok,
        &format!(
            "ratio {r0:.4}, sigma_S/S {cv:.4}, max cell error {worst:.2} pp, mean {mean:.2}%, sd {sd:.2}%, {elapsed:.3} s"
        ),
    );
}

#[test]
fn censored_strength_reduction_cells() {
    let mut failing = Vec::new();
    let mut detail = Vec::new();
    for row in 0..3 {
        for col in 0..5 {
            let (p, load) = cell_params(row, col);
            let sched = WorkRestSchedule::new(vec![ScheduleSegment::work(180.0, load)]).unwrap();
            let e = endurance_time(&p, &sched).unwrap().endurance;
            if !e.is_censored() {
                failing.push((row, col));
                detail.push(format!("(m{row},S{:+}) {:.1} s", col as i32 - 2, e.seconds()));
            }
        }
    }
    let expected = vec![(0, 0), (0, 1), (1, 0)];
    let blanks_fail = expected.iter().all(|c| failing.contains(c));
    verdict(
        "censored strength reduction cells",
        failing == expected,
        &format!(
            "blank cells fail before 180 s: {blanks_fail}; cells failing before 180 s: {}",
            detail.join(", ")
        ),
    );
}

#[test]
fn single_bout_endurance_formula() {
    let result = run_prop(500, (0.1..4.0f64, 1.0..300.0f64, 0.01..0.99f64), |(m, g, ratio)| {
        let p = FatigueParams::new(g, m, 1.0).unwrap();
        let want = oracle::single_bout_endurance_s(m, g, g, ratio * g);
        let sched = WorkRestSchedule::new(vec![ScheduleSegment::work(2.0 * want + 1.0, ratio * g)]).unwrap();
        let got = endurance_time(&p, &sched).unwrap().endurance.seconds();
        prop_assert!(((got - want) / want).abs() < 1e-9, "{got} vs {want}");
        Ok(())
    });
    let (r0, _) = anchored();
    let p = FatigueParams::new(1.0, M_BAR, 1.0).unwrap();
    let spot = time_to_failure_s(1.0, &p, r0).unwrap().unwrap();
    let ok = result.is_ok() && (spot - 179.2).abs() < 0.05;
    verdict("single-bout endurance formula", ok, &format!("500 random cases {:?}; spot value {spot:.2} s", result.map(|_| "ok")));
}

#[test]
fn integrator_consistency() {
    let start = Instant::now();
    let strategy = (
        (20.0..200.0f64, 0.2..3.0f64, 0.0..3.0f64),
        any::<bool>(),
        prop::collection::vec((1..300u32, 0.02..0.9f64), 1..10),
    );
    let result = run_prop(200, strategy, |((g, m, r), first_work, segs)| {
        let p = FatigueParams::new(g, m, r).unwrap();
        let segments: Vec<ScheduleSegment> = segs
            .iter()
            .enumerate()
            .map(|(i, &(n, ratio))| {
                let d = n as f64 * 0.6;
                if (i % 2 == 0) == first_work { ScheduleSegment::work(d, ratio * g) } else { ScheduleSegment::rest(d) }
            })
            .collect();
        let mut loads = Vec::new();
        for s in &segments {
            loads.extend(std::iter::repeat(s.load_nm()).take((s.duration_s / 0.6).round() as usize));
        }
        let sched = WorkRestSchedule::new(segments).unwrap();
        let exact = simulate_schedule(&p, &sched, SimulationOptions { sample_dt_s: 0.6, continue_past_failure: true }).unwrap();
        let num = integrate_variable_load(&p, &loads, 0.6).unwrap();
        prop_assert_eq!(num.boundaries.len(), exact.boundaries.len());
        for (a, b) in num.boundaries.iter().zip(&exact.boundaries) {
            prop_assert!(((a.capacity_nm - b.capacity_nm) / b.capacity_nm).abs() < 1e-6);
        }
        Ok(())
    });
    let elapsed = start.elapsed().as_secs_f64();
    verdict(
        "integrator consistency",
        result.is_ok() && elapsed < 10.0,
        &format!("200 random schedules, dt 0.6 s, tol 1e-6: {:?}, {elapsed:.2} s", result.map(|_| "ok")),
    );
}

#[test]
fn sweep_structure_and_ordering() {
    let start = Instant::now();
    let spec = presets::drilling_population();
    let groups = build_subgroups(&spec, &presets::drilling_task()).unwrap();
    let grid = sweep_endurance(&groups, expand_levels(&spec).unwrap(), &presets::drilling_schedule(), SimulationOptions::default())
        .unwrap();
    let elapsed = start.elapsed().as_secs_f64();

    let mut ids: Vec<usize> = grid.rows.iter().map(|r| r.subgroup.id).collect();
    ids.dedup();
    let count_ok = grid.rows.len() == 81 && ids.len() == 81;

    let censoring_ok = grid.rows.iter().all(|r| {
        let l = r.subgroup.levels;
        let must = l.strength == Level::High || (l.strength == Level::Average && l.resistance != Level::Low);
        !must || r.result.endurance.is_censored()
    });

    let mut violations = 0;
    for c in LevelCombo::all() {
        let e = grid.endurance_s(c);
        let up = |l: Level| match l {
            Level::Low => Some(Level::Average),
            Level::Average => Some(Level::High),
            Level::High => None,
        };
        if let Some(s) = up(c.strength) {
            violations += (grid.endurance_s(LevelCombo { strength: s, ..c }) < e) as usize;
        }
        if let Some(r) = up(c.resistance) {
            violations += (grid.endurance_s(LevelCombo { resistance: r, ..c }) < e) as usize;
        }
        if let Some(h) = up(c.height) {
            violations += (grid.endurance_s(LevelCombo { height: h, ..c }) > e) as usize;
        }
        if let Some(w) = up(c.weight) {
            violations += (grid.endurance_s(LevelCombo { weight: w, ..c }) > e) as usize;
        }
    }
    let hw = grid.height_weight_spread();
    let sm = grid.strength_resistance_spread();
    let ok = count_ok && censoring_ok && violations == 0 && hw < sm && elapsed < 5.0;
    verdict(
        "sweep structure and ordering",
        ok,
        &format!(
            "81 rows {count_ok}, censoring pattern {censoring_ok}, monotonicity violations {violations}, \
             height/weight spread {hw:.3} < strength/resistance spread {sm:.3}, {elapsed:.3} s"
        ),
    );
}

fn planar_arm() -> (f64, f64) {
    // Joint axes along world y; the arm lies along world x.
    let root = IsometryMatrix3::from_parts(Translation3::identity(), Rotation3::from_axis_angle(&Vector3::x_axis(), -std::f64::consts::FRAC_PI_2));
    let joint = |id, name: &str, a, parent| JointSpec {
        id: JointId(id),
        name: name.into(),
        dh: DhParams::new(a, 0.0, 0.0, 0.0),
        lower_limit: -3.0,
        upper_limit: 3.0,
        parent,
    };
    let seg = |id, name: &str, j, x| SegmentSpec { id: SegmentId(id), name: name.into(), joint: Some(JointId(j)), com_local: Vector3::new(x, 0.0, 0.0) };
    let model = SkeletonModel::new(
        vec![joint(1, "shoulder", 0.0, None), joint(2, "elbow", 0.3, Some(JointId(1)))],
        vec![seg(0, "upper_arm", 1, 0.15), seg(1, "forearm", 2, 0.35)],
        root,
    )
    .unwrap();
    let mut dims = scale_segments(1.0, 1.0, &CoefficientTable::default_table()).unwrap();
    dims.segments = ["upper_arm", "forearm"]
        .iter()
        .map(|n| jointfatigue_core::anthro::SegmentDimension { name: (*n).into(), length_m: 0.3, mass_kg: 0.0, com_ratio: 0.5 })
        .collect();
    let g = Vector3::new(0.0, 0.0, -9.81);
    let loads = [ExternalLoad::weight("forearm", 5.0, g, "mass")];
    let p = static_joint_loads(&model, &Posture::zeros(2), &dims, &loads, g).unwrap();
    (p.axis_moment(JointId(1)).abs(), p.axis_moment(JointId(2)).abs())
}

#[test]
fn statics_oracle_equivalence() {
    let result = run_prop(500, oracle::gen::chain(8), |c| {
        let g = Vector3::new(0.0, 0.0, -9.81);
        let got = static_joint_loads(&c.model, &Posture::new(c.q.clone()), &c.segs, &c.loads, g).unwrap();
        let want = oracle::brute_force_moments(&c.model, &c.q, &c.segs, &c.loads, oracle::v3(&g));
        for (j, (m, _, scale)) in want.iter().enumerate() {
            for i in 0..3 {
                prop_assert!((got.moments[j][i] - m[i]).abs() <= 1e-9 * scale.max(f64::MIN_POSITIVE));
            }
        }
        Ok(())
    });
    let (shoulder, elbow) = planar_arm();
    let arm_ok = format!("{shoulder:.2}") == "31.88" && format!("{elbow:.2}") == "17.17";
    verdict(
        "statics oracle equivalence",
        result.is_ok() && arm_ok,
        &format!("500 random chains {:?}; planar arm shoulder {shoulder:.4} N·m, elbow {elbow:.4} N·m", result.map(|_| "ok")),
    );
}

#[test]
fn kinematics_oracle_equivalence() {
    let strategy = (prop::collection::vec(-std::f64::consts::PI..std::f64::consts::PI, HUMAN_DOF), 1.4..2.1f64, 40.0..130.0f64);
    let result = run_prop(1000, strategy, |(q, h, w)| {
        let model = build_default_skeleton(&scale_segments(h, w, &CoefficientTable::default_table()).unwrap()).unwrap();
        let frames = forward_kinematics(&model, &Posture::new(q.clone())).unwrap();
        for (got, want) in frames.joints.iter().zip(oracle::fk(&model, &q)) {
            let got4 = oracle::from_isometry(got);
            for i in 0..4 {
                for j in 0..4 {
                    prop_assert!((got4[i][j] - want[i][j]).abs() <= 1e-12);
                }
            }
            let r = got.rotation.matrix();
            prop_assert!((r.transpose() * r - nalgebra::Matrix3::identity()).abs().max() < 1e-12);
            prop_assert!((r.determinant() - 1.0).abs() < 1e-12);
        }
        Ok(())
    });
    verdict("kinematics oracle equivalence", result.is_ok(), &format!("1000 random 28-DOF postures, tol 1e-12: {:?}", result.map(|_| "ok")));
}

fn quantized(v: f64) -> f64 {
    round_sig12(v)
}

#[test]
fn fatigue_model_invariants() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut check = |name: &str, r: Result<(), String>| {
        if let Err(e) = r {
            failures.push(format!("{name}: {e}"));
        }
    };
    let params = (20.0..200.0f64, 0.2..3.0f64, 0.0..3.0f64);

    check(
        "bounds",
        run_prop(300, (params.clone(), prop::collection::vec((1.0..120.0f64, 0.0..1.5f64), 1..10)), |((g, m, r), segs)| {
            let p = FatigueParams::new(g, m, r).unwrap();
            let s = WorkRestSchedule::new(
                segs.iter().map(|&(d, ratio)| if ratio < 0.3 { ScheduleSegment::rest(d) } else { ScheduleSegment::work(d, ratio * g) }).collect(),
            )
            .unwrap();
            let t = simulate_schedule(&p, &s, SimulationOptions { sample_dt_s: 0.5, continue_past_failure: true }).unwrap();
            prop_assert!(t.samples.iter().all(|x| x.capacity_nm > 0.0 && x.capacity_nm <= g));
            Ok(())
        }),
    );
    check(
        "monotone decay and recovery",
        run_prop(300, (params.clone(), 0.01..1.0f64, 0.05..1.0f64, 0.0..600.0f64, 0.0..600.0f64), |((g, m, r), ratio, c0, t, dt)| {
            let p = FatigueParams::new(g, m, r).unwrap();
            let a = fatigue_closed_form(c0 * g, &p, ratio * g, t).unwrap();
            let b = fatigue_closed_form(c0 * g, &p, ratio * g, t + dt).unwrap();
            prop_assert!(b <= a);
            let a = recovery_closed_form(c0 * g, &p, t).unwrap();
            let b = recovery_closed_form(c0 * g, &p, t + dt).unwrap();
            prop_assert!(a <= b && b <= g);
            Ok(())
        }),
    );
    check(
        "ratio scale invariance",
        run_prop(300, (params.clone(), 0.05..0.9f64, 0.1..10.0f64), |((g, m, r), ratio, k)| {
            let a = FatigueParams::new(g, m, r).unwrap();
            let b = FatigueParams::new(g * k, m, r).unwrap();
            let ta = simulate_schedule(&a, &WorkRestSchedule::cycles(3, 60.0, 30.0, ratio * g).unwrap(), SimulationOptions::default()).unwrap();
            let tb = simulate_schedule(&b, &WorkRestSchedule::cycles(3, 60.0, 30.0, ratio * g * k).unwrap(), SimulationOptions::default()).unwrap();
            prop_assert_eq!(ta.samples.len(), tb.samples.len());
            for (x, y) in ta.samples.iter().zip(&tb.samples) {
                prop_assert!((ta.fatigue_index_at(x) - tb.fatigue_index_at(y)).abs() < 1e-12);
            }
            Ok(())
        }),
    );
    let model = build_default_skeleton(&scale_segments(1.75, 75.0, &CoefficientTable::default_table()).unwrap()).unwrap();
    check(
        "clamp idempotence",
        run_prop(300, prop::collection::vec(-6.0..6.0f64, HUMAN_DOF), |q| {
            let (once, _) = clamp_posture(&model, &Posture::new(q)).unwrap();
            let (twice, v) = clamp_posture(&model, &once).unwrap();
            prop_assert_eq!(once, twice);
            prop_assert!(v.is_empty());
            Ok(())
        }),
    );
    check(
        "posture file round trip",
        run_prop(100, prop::collection::vec(prop::collection::vec(-3.0..3.0f64, HUMAN_DOF), 1..6), |frames| {
            let frames: Vec<Posture> = frames
                .into_iter()
                .enumerate()
                .map(|(i, q)| Posture { q: q.into_iter().map(quantized).collect(), timestamp: Some(quantized(i as f64 * 0.04)) })
                .collect();
            let cap = PostureCapture::new(frames, "mem");
            let text = write_posture_text(&cap);
            let back = parse_posture_text(&text, "mem", HUMAN_DOF).unwrap();
            prop_assert_eq!(&back.frames, &cap.frames);
            prop_assert_eq!(write_posture_text(&back), text);
            Ok(())
        }),
    );
    check(
        "schedule and profile round trip",
        run_prop(200, (prop::collection::vec((any::<bool>(), 0.1..500.0f64, prop::option::of(0.0..200.0f64)), 1..8), 1.0..2.2f64, 30.0..150.0f64, params.clone()), |(segs, h, w, (g, m, r))| {
            let template = ScheduleTemplate {
                segments: segs
                    .iter()
                    .map(|&(work, d, load)| match (work, load) {
                        (true, Some(v)) => TemplateSegment::Work { duration_s: d, load: WorkLoad::Fixed(v) },
                        (true, None) => TemplateSegment::Work { duration_s: d, load: WorkLoad::Task },
                        (false, _) => TemplateSegment::Rest { duration_s: d },
                    })
                    .collect(),
            };
            let text = serde_json::to_string(&schedule_to_docs(&template)).unwrap();
            let docs: Vec<ScheduleEntry> = from_json_str(&text, "mem").unwrap();
            prop_assert_eq!(&schedule_from_docs(&docs).unwrap(), &template);

            let profile = SubjectProfile {
                label: "x".into(),
                height_m: h,
                weight_kg: w,
                strengths: [("shoulder_R".to_string(), g)].into_iter().collect(),
                strength_tables: vec![],
                resistance_min: m,
                recovery_per_min: r,
            };
            let text = serde_json::to_string(&ProfileDoc::from_profile(&profile)).unwrap();
            let doc: ProfileDoc = from_json_str(&text, "mem").unwrap();
            prop_assert_eq!(doc.to_profile().unwrap(), profile);
            Ok(())
        }),
    );
    let report = || {
        let r = pipeline::run_pipeline(&RunConfig::builtin()).unwrap();
        (
            jointfatigue::report::trajectory_csv(&r.trajectory).unwrap(),
            jointfatigue::report::load_profile_csv(&r.inputs.model, &r.loads).unwrap(),
            pipeline::summary_text(&r),
        )
    };
    if report() != report() {
        failures.push("report determinism: outputs differ between identical runs".into());
    }
    let elapsed = start.elapsed().as_secs_f64();
    verdict(
        "fatigue model invariants",
        failures.is_empty() && elapsed < 30.0,
        &if failures.is_empty() {
            format!("bounds, monotonicity, scale invariance, clamp idempotence, file round trips, determinism; {elapsed:.2} s")
        } else {
            failures.join("; ")
        },
    );
}
