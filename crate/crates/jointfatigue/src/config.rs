//! Run configuration: which inputs to read and how to simulate.
//!
//! A config file is JSON; relative paths resolve against the file's
//! directory. Names in the built-in configuration refer to the shipped data
//! files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::defaults;
use crate::error::{Error, Result};
use crate::formats::json::from_json_str;

/// Where an input comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    File(PathBuf),
    Builtin(&'static str),
}

impl Source {
    pub fn read(&self) -> Result<String> {
        match self {
            Source::File(p) => std::fs::read_to_string(p).map_err(|e| Error::io(p, e)),
            Source::Builtin(name) => defaults::builtin(name)
                .map(str::to_owned)
                .ok_or_else(|| Error::Config(format!("no built-in file `{name}`"))),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Source::File(p) => p.display().to_string(),
            Source::Builtin(name) => format!("builtin:{name}"),
        }
    }
}

/// How the analyzed posture is given.
#[derive(Debug, Clone, PartialEq)]
pub enum PostureInput {
    Capture(Source),
    /// Joint name → angle (rad); unnamed joints are 0.
    Inline(BTreeMap<String, f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunConfigDoc {
    #[serde(default)]
    model: Option<String>,
    #[serde(default)]
    coefficients: Option<String>,
    profile: String,
    schedule: String,
    load_case: String,
    #[serde(default)]
    posture: Option<String>,
    #[serde(default)]
    posture_inline: Option<BTreeMap<String, f64>>,
    #[serde(default)]
    population: Option<String>,
    #[serde(default)]
    sweep_schedule: Option<String>,
    joint: String,
    #[serde(default)]
    gravity: Option<[f64; 3]>,
    #[serde(default)]
    out_dir: Option<String>,
    #[serde(default)]
    continue_past_failure: bool,
    #[serde(default)]
    sample_dt_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: Option<Source>,
    pub coefficients: Option<Source>,
    pub profile: Source,
    pub schedule: Source,
    pub load_case: Source,
    pub posture: PostureInput,
    pub population: Option<Source>,
    pub sweep_schedule: Option<Source>,
    /// Joint whose trajectory is reported, e.g. `shoulder_R_flexion`.
    pub joint: String,
    pub gravity: [f64; 3],
    pub out_dir: PathBuf,
    pub continue_past_failure: bool,
    pub sample_dt_s: f64,
}

enum Base<'a> {
    Dir(&'a Path),
    Builtin,
}

impl RunConfig {
    /// The shipped drilling configuration.
    pub fn builtin() -> Self {
        Self::parse(defaults::builtin("drilling_config.json").expect("shipped"), "builtin:drilling_config.json", Base::Builtin)
            .expect("shipped config is valid")
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let dir = path.parent().unwrap_or(Path::new("."));
        let cfg = Self::parse(&text, &path.display().to_string(), Base::Dir(dir))?;
        cfg.check_paths()?;
        Ok(cfg)
    }

    fn parse(text: &str, source: &str, base: Base) -> Result<Self> {
        let doc: RunConfigDoc = from_json_str(text, source)?;
        let src = |name: &str| -> Result<Source> {
            match &base {
                Base::Dir(dir) => Ok(Source::File(dir.join(name))),
                Base::Builtin => defaults::builtin_name(name)
                    .map(Source::Builtin)
                    .ok_or_else(|| Error::Config(format!("no built-in file `{name}`"))),
            }
        };
        let opt = |name: &Option<String>| name.as_deref().map(src).transpose();
        let posture = match (&doc.posture, &doc.posture_inline) {
            (Some(p), None) => PostureInput::Capture(src(p)?),
            (None, Some(map)) => PostureInput::Inline(map.clone()),
            _ => return Err(Error::Config("give exactly one of `posture` and `posture_inline`".into())),
        };
        let sample_dt_s = doc.sample_dt_s.unwrap_or(1.0);
        if !(sample_dt_s.is_finite() && sample_dt_s > 0.0) {
            return Err(Error::Config(format!("sample_dt_s must be positive, got {sample_dt_s}")));
        }
        let out_dir = match (&base, &doc.out_dir) {
            (Base::Dir(dir), Some(o)) => dir.join(o),
            (_, Some(o)) => PathBuf::from(o),
            (_, None) => PathBuf::from("out"),
        };
        Ok(RunConfig {
            model: opt(&doc.model)?,
            coefficients: opt(&doc.coefficients)?,
            profile: src(&doc.profile)?,
            schedule: src(&doc.schedule)?,
            load_case: src(&doc.load_case)?,
            posture,
            population: opt(&doc.population)?,
            sweep_schedule: opt(&doc.sweep_schedule)?,
            joint: doc.joint,
            gravity: doc.gravity.unwrap_or([0.0, 0.0, -9.81]),
            out_dir,
            continue_past_failure: doc.continue_past_failure,
            sample_dt_s,
        })
    }

    fn sources(&self) -> Vec<&Source> {
        let mut out = vec![&self.profile, &self.schedule, &self.load_case];
        out.extend(self.model.iter().chain(&self.coefficients).chain(&self.population).chain(&self.sweep_schedule));
        if let PostureInput::Capture(s) = &self.posture {
            out.push(s);
        }
        out
    }

    /// Every referenced file must exist before anything runs.
    pub fn check_paths(&self) -> Result<()> {
        for s in self.sources() {
            if let Source::File(p) = s {
                if !p.is_file() {
                    return Err(Error::Config(format!("referenced file {} not found", p.display())));
                }
            }
        }
        Ok(())
    }
}
