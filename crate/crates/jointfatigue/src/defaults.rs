//! The shipped drilling inputs, compiled into the binary so the CLI runs
//! without a config file.

const FILES: [(&str, &str); 8] = [
    ("drilling_config.json", include_str!("../data/drilling_config.json")),
    ("drilling_profile.json", include_str!("../data/drilling_profile.json")),
    ("drilling_single_bout.json", include_str!("../data/drilling_single_bout.json")),
    ("drilling_cycles.json", include_str!("../data/drilling_cycles.json")),
    ("drilling_loads.json", include_str!("../data/drilling_loads.json")),
    ("drilling_posture.txt", include_str!("../data/drilling_posture.txt")),
    ("population.json", include_str!("../data/population.json")),
    ("coefficients.json", include_str!("../data/coefficients.json")),
];

pub fn builtin(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

/// The static name of a built-in file.
pub fn builtin_name(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(n, _)| *n)
}

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}
