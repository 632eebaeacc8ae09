use jointfatigue_core::anthro::expand_levels;
use jointfatigue_core::cohort::*;
use jointfatigue_core::fatigue::SimulationOptions;
use jointfatigue_core::presets;

fn grid() -> SweepGrid {
    let spec = presets::drilling_population();
    let groups = build_subgroups(&spec, &presets::drilling_task()).unwrap();
    sweep_endurance(&groups, expand_levels(&spec).unwrap(), &presets::drilling_schedule(), SimulationOptions::default()).unwrap()
}

#[test]
fn selection_respects_dominance() {
    let g = grid();
    for required in [0.0, 60.0, 120.0, 200.0, 300.0, 449.0, 450.0] {
        let picked = select_workers(&g, required).unwrap();
        for a in LevelCombo::all() {
            for b in LevelCombo::all() {
                let same_body = a.height == b.height && a.weight == b.weight;
                let dominates = a.strength >= b.strength && a.resistance >= b.resistance;
                if same_body && dominates && picked.contains(&b.subgroup_id()) {
                    assert!(picked.contains(&a.subgroup_id()), "{a:?} should follow {b:?} at {required}");
                }
            }
        }
    }
}

#[test]
fn weakest_heaviest_tallest_cell_is_the_minimum() {
    let g = grid();
    let min = g.rows.iter().map(|r| r.result.endurance.seconds()).fold(f64::INFINITY, f64::min);
    let worst = LevelCombo { height: Level::High, weight: Level::High, strength: Level::Low, resistance: Level::Low };
    assert_eq!(g.endurance_s(worst), min);
}

#[test]
fn final_fatigue_index_matches_trajectory() {
    let g = grid();
    for r in &g.rows {
        let t = &r.result.trajectory;
        assert_eq!(r.result.final_fatigue_index, t.fatigue_index_at(&t.last()));
        assert!(r.result.final_fatigue_index >= 0.0 && r.result.final_fatigue_index < 1.0);
    }
}
