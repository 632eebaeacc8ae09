//! Posture series: one frame per line, `t_s q1 … qN`.
//!
//! ```text
//! # t_s q1..q28 (rad)
//! 0.00  0.0 0.0 …
//! 0.04  0.0 0.0 …
//! ```
//!
//! Lines starting with `#` are comments. A comment containing `(deg)` before
//! the first frame switches the file to degrees.

use jointfatigue_core::skeleton::{clamp_posture, LimitViolation, Posture, SkeletonModel};

use super::sig12;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PostureCapture {
    /// Frames with `timestamp` set, in strictly increasing time.
    pub frames: Vec<Posture>,
    pub source: String,
    /// Mean frame rate, Hz; `None` for a single frame.
    pub rate_hz: Option<f64>,
}

impl PostureCapture {
    pub fn new(frames: Vec<Posture>, source: impl Into<String>) -> Self {
        let rate_hz = match (frames.first().and_then(|f| f.timestamp), frames.last().and_then(|f| f.timestamp)) {
            (Some(a), Some(b)) if frames.len() > 1 && b > a => Some((frames.len() - 1) as f64 / (b - a)),
            _ => None,
        };
        PostureCapture { frames, source: source.into(), rate_hz }
    }
}

pub fn parse_posture_text(text: &str, source: &str, dof: usize) -> Result<PostureCapture> {
    let mut degrees = false;
    let mut frames: Vec<Posture> = Vec::new();
    let mut prev: Option<f64> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if frames.is_empty() && comment.contains("(deg)") {
                degrees = true;
            }
            continue;
        }
        let parse_err = |message: String| Error::Parse { path: source.into(), line: line_no, message };
        let values = line
            .split_whitespace()
            .map(|tok| tok.parse::<f64>().map_err(|_| parse_err(format!("`{tok}` is not a number"))))
            .collect::<Result<Vec<f64>>>()?;
        if values.len() != dof + 1 {
            return Err(parse_err(format!("expected time and {dof} angles, found {} values", values.len())));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(parse_err(format!("non-finite value {bad}")));
        }
        let t = values[0];
        if let Some(p) = prev {
            if t <= p {
                return Err(Error::Ordering { path: source.into(), line: line_no, t_s: t, prev_s: p });
            }
        }
        prev = Some(t);
        let q = values[1..].iter().map(|v| if degrees { v.to_radians() } else { *v }).collect();
        frames.push(Posture { q, timestamp: Some(t) });
    }
    Ok(PostureCapture::new(frames, source))
}

pub fn write_posture_text(capture: &PostureCapture) -> String {
    let dof = capture.frames.first().map_or(0, |f| f.q.len());
    let mut out = format!("# t_s q1..q{dof} (rad)\n");
    for (i, f) in capture.frames.iter().enumerate() {
        let t = f.timestamp.unwrap_or(i as f64);
        out.push_str(&sig12(t));
        for q in &f.q {
            out.push(' ');
            out.push_str(&sig12(*q));
        }
        out.push('\n');
    }
    out
}

/// Clamps every frame into the model's joint limits and logs a warning per
/// corrected joint.
pub fn clamp_capture(capture: &mut PostureCapture, model: &SkeletonModel) -> Result<Vec<(usize, LimitViolation)>> {
    let mut all = Vec::new();
    for (i, frame) in capture.frames.iter_mut().enumerate() {
        let (clamped, violations) = clamp_posture(model, frame)?;
        for v in violations {
            warn_violation(model, &format!("{} frame {}", capture.source, i + 1), &v);
            all.push((i, v));
        }
        *frame = clamped;
    }
    Ok(all)
}

pub(crate) fn warn_violation(model: &SkeletonModel, context: &str, v: &LimitViolation) {
    let name = model.joint(v.joint).map_or("?", |j| j.name.as_str());
    log::warn!("{context}: `{name}` clamped by {:.4} rad", v.correction);
}

/// Per-joint arithmetic mean over all frames.
pub fn average_posture(capture: &PostureCapture) -> Result<Posture> {
    let first = capture.frames.first().ok_or_else(|| Error::Empty { path: capture.source.clone() })?;
    let n = capture.frames.len() as f64;
    let mut q = vec![0.0; first.q.len()];
    for f in &capture.frames {
        for (acc, v) in q.iter_mut().zip(&f.q) {
            *acc += v;
        }
    }
    for v in &mut q {
        *v /= n;
    }
    Ok(Posture::new(q))
}
