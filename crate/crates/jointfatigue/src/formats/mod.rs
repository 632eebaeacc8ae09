//! On-disk formats: whitespace posture series and JSON configuration.

pub mod json;
pub mod posture;

/// Scientific notation with 12 significant digits. Values that already have
/// at most 12 significant digits survive a write/parse cycle bit for bit.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Rounds to 12 significant digits through the text form.
pub fn round_sig12(x: f64) -> f64 {
    sig12(x).parse().expect("formatted float parses")
}
