//! Batch front end shared by the `gv` binary: run configuration, surface
//! presets, report emission and verification runs.

pub mod suites;

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gv::{all_pass, compute_reports, GvReport, ReportRequest};
use crate::series::{degree_vectors, ZPath};
pub use suites::{run_suite, CheckReport, Suite, SuiteScale};

/// Framing vectors of the toric surfaces with a preset name.
pub const PRESETS: [(&str, &str, &[i64]); 5] = [
    ("P2", "projective plane", &[1, 1, 1]),
    ("F0", "P1 x P1", &[0, 0, 0, 0]),
    ("F1", "first Hirzebruch surface", &[1, 0, -1, 0]),
    ("B2", "P2 blown up at two points", &[0, 0, -1, -1, -1]),
    (
        "B3",
        "P2 blown up at three points",
        &[-1, -1, -1, -1, -1, -1],
    ),
];

pub fn preset(name: &str) -> Option<Vec<i64>> {
    PRESETS
        .iter()
        .find(|(n, _, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, _, g)| g.to_vec())
}

/// A preset name or an explicit comma-separated framing vector.
pub fn parse_gamma(text: &str) -> Result<Vec<i64>> {
    if let Some(g) = preset(text.trim()) {
        return Ok(g);
    }
    let gamma = text
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::Config(format!("bad gamma {text:?}: {e}")))?;
    if gamma.len() < 2 {
        return Err(Error::Config(format!(
            "gamma {text:?} needs at least two entries"
        )));
    }
    Ok(gamma)
}

fn parse_degree(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|s| s.trim().parse::<u32>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::Config(format!("bad degree {text:?}: {e}")))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathName {
    Def,
    Matrix,
    Graphs,
}

impl PathName {
    fn path(self) -> ZPath {
        match self {
            PathName::Def => ZPath::Definition,
            PathName::Matrix => ZPath::Matrix,
            PathName::Graphs => ZPath::Graphs,
        }
    }

    pub fn parse(text: &str) -> Result<PathName> {
        match text.trim() {
            "def" => Ok(PathName::Def),
            "matrix" => Ok(PathName::Matrix),
            "graphs" => Ok(PathName::Graphs),
            other => Err(Error::Config(format!(
                "unknown path {other:?} (def, matrix, graphs)"
            ))),
        }
    }
}

/// Everything one run needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub gamma: Vec<i64>,
    pub max_total_degree: u32,
    /// Componentwise cap on the degree vectors.
    pub bound: Option<Vec<u32>>,
    /// Explicit degree vectors; overrides the range.
    pub degrees: Option<Vec<Vec<u32>>>,
    pub paths: Vec<PathName>,
    pub verify_suites: Vec<Suite>,
    pub scale: SuiteScale,
    pub output_format: OutputFormat,
    pub jobs: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            gamma: vec![1, 1, 1],
            max_total_degree: 3,
            bound: None,
            degrees: None,
            paths: vec![PathName::Def],
            verify_suites: Vec::new(),
            scale: SuiteScale::default(),
            output_format: OutputFormat::Json,
            jobs: None,
        }
    }
}

/// Config file contents; every field optional.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub gamma: Option<String>,
    pub max_total_degree: Option<u32>,
    pub bound: Option<Vec<u32>>,
    pub degrees: Option<Vec<Vec<u32>>>,
    pub paths: Option<Vec<PathName>>,
    pub verify_suites: Option<Vec<Suite>>,
    pub scale: Option<SuiteScale>,
    pub output_format: Option<OutputFormat>,
    pub jobs: Option<usize>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<ConfigFile> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}

/// Command-line values; `None` means not given.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub gamma: Option<String>,
    pub max_total_degree: Option<u32>,
    pub bound: Option<String>,
    pub degrees: Vec<String>,
    pub paths: Vec<String>,
    pub verify_suites: Vec<String>,
    pub output_format: Option<OutputFormat>,
    pub jobs: Option<usize>,
}

impl RunConfig {
    /// Defaults, then the config file, then flags.
    pub fn resolve(file: Option<ConfigFile>, flags: Overrides) -> Result<RunConfig> {
        let mut config = RunConfig::default();
        if let Some(file) = file {
            if let Some(g) = file.gamma {
                config.gamma = parse_gamma(&g)?;
            }
            config.max_total_degree = file.max_total_degree.unwrap_or(config.max_total_degree);
            config.bound = file.bound.or(config.bound);
            config.degrees = file.degrees.or(config.degrees);
            config.paths = file.paths.unwrap_or(config.paths);
            config.verify_suites = file.verify_suites.unwrap_or(config.verify_suites);
            config.scale = file.scale.unwrap_or(config.scale);
            config.output_format = file.output_format.unwrap_or(config.output_format);
            config.jobs = file.jobs.or(config.jobs);
        }
        if let Some(g) = flags.gamma {
            config.gamma = parse_gamma(&g)?;
        }
        if let Some(d) = flags.max_total_degree {
            config.max_total_degree = d;
        }
        if let Some(b) = flags.bound {
            config.bound = Some(parse_degree(&b)?);
        }
        if !flags.degrees.is_empty() {
            config.degrees = Some(
                flags
                    .degrees
                    .iter()
                    .map(|d| parse_degree(d))
                    .collect::<Result<_>>()?,
            );
        }
        if !flags.paths.is_empty() {
            config.paths = flags
                .paths
                .iter()
                .flat_map(|p| p.split(','))
                .map(PathName::parse)
                .collect::<Result<_>>()?;
        }
        if !flags.verify_suites.is_empty() {
            config.verify_suites = flags
                .verify_suites
                .iter()
                .map(|s| {
                    Suite::parse(s).ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
                })
                .collect::<Result<_>>()?;
        }
        config.output_format = flags.output_format.unwrap_or(config.output_format);
        config.jobs = flags.jobs.or(config.jobs);
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.gamma.len();
        if r < 2 {
            return Err(Error::Config("gamma needs at least two entries".into()));
        }
        if self.paths.is_empty() {
            return Err(Error::Config(
                "at least one partition-function path is required".into(),
            ));
        }
        if let Some(b) = &self.bound {
            if b.len() != r {
                return Err(Error::Config(format!("bound {b:?} does not match r = {r}")));
            }
        }
        for d in self.degrees.iter().flatten() {
            if d.len() != r || d.iter().all(|&x| x == 0) {
                return Err(Error::Config(format!(
                    "degree {d:?} must be nonzero with length {r}"
                )));
            }
        }
        if self.jobs == Some(0) {
            return Err(Error::Config("jobs must be positive".into()));
        }
        Ok(())
    }

    /// Requested degrees in graded-lex order.
    pub fn degree_list(&self) -> Vec<Vec<u32>> {
        let mut list = match &self.degrees {
            Some(list) => list.clone(),
            None => degree_vectors(
                self.gamma.len(),
                self.max_total_degree,
                self.bound.as_deref(),
            )
            .into_iter()
            .skip(1)
            .collect(),
        };
        list.sort_by(|a, b| (a.iter().sum::<u32>(), a).cmp(&(b.iter().sum::<u32>(), b)));
        list.dedup();
        list
    }

    fn in_pool<T: Send>(&self, work: impl FnOnce() -> T + Send) -> Result<T> {
        match self.jobs {
            None => Ok(work()),
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map(|pool| pool.install(work))
                .map_err(|e| Error::Config(format!("thread pool: {e}"))),
        }
    }
}

/// Summary line closing a compute stream.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputeSummary {
    pub gamma: Vec<i64>,
    pub reports: usize,
    pub integral: usize,
    pub paths_agree: bool,
    pub pass: bool,
}

/// Computes the reports of `config`; ordering is independent of `jobs`.
pub fn compute(config: &RunConfig) -> Result<Vec<GvReport>> {
    config.validate()?;
    let request = ReportRequest {
        gamma: config.gamma.clone(),
        degrees: config.degree_list(),
        paths: config.paths.iter().map(|p| p.path()).collect(),
    };
    config.in_pool(|| compute_reports(&request))?
}

fn emit_err(e: std::io::Error) -> Error {
    Error::Config(format!("cannot write output: {e}"))
}

/// Writes reports plus a summary; returns whether everything passed.
pub fn emit_reports(config: &RunConfig, reports: &[GvReport], out: &mut dyn Write) -> Result<bool> {
    let pass = all_pass(reports);
    match config.output_format {
        OutputFormat::Json => {
            for report in reports {
                let line = serde_json::to_string(report).expect("reports serialize");
                writeln!(out, "{line}").map_err(emit_err)?;
            }
            let summary = ComputeSummary {
                gamma: config.gamma.clone(),
                reports: reports.len(),
                integral: reports.iter().filter(|r| r.integral).count(),
                paths_agree: reports.iter().all(|r| r.paths_agree),
                pass,
            };
            let line = serde_json::json!({ "summary": summary });
            writeln!(out, "{line}").map_err(emit_err)?;
        }
        OutputFormat::Csv => {
            writeln!(out, "degree,g,n,integral").map_err(emit_err)?;
            for report in reports {
                let degree = report
                    .degree
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(" ");
                if report.gv_numbers.is_empty() {
                    writeln!(out, "{degree},,,{}", report.integral).map_err(emit_err)?;
                }
                for n in &report.gv_numbers {
                    writeln!(out, "{degree},{},{},{}", n.g, n.n, report.integral)
                        .map_err(emit_err)?;
                }
            }
        }
    }
    Ok(pass)
}

/// Runs the configured suites, one JSON line each; returns whether all
/// passed.
pub fn verify(config: &RunConfig, out: &mut dyn Write) -> Result<bool> {
    let suites = if config.verify_suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        config.verify_suites.clone()
    };
    let mut pass = true;
    for suite in suites {
        let report = config.in_pool(|| run_suite(suite, &config.scale))??;
        pass &= report.passed();
        let line = serde_json::json!({
            "suite": suite.name(),
            "checks": report.checks,
            "pass": report.passed(),
            "failures": report.failures,
        });
        writeln!(out, "{line}").map_err(emit_err)?;
    }
    Ok(pass)
}

/// Preset table, one line per surface.
pub fn list_surfaces(out: &mut dyn Write) -> Result<()> {
    for (name, description, gamma) in PRESETS {
        let gamma = gamma
            .iter()
            .map(i64::to_string)
            .collect::<Vec<_>>()
            .join(",");
        writeln!(out, "{name}\t({gamma})\t{description}").map_err(emit_err)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_resolve() {
        assert_eq!(parse_gamma("P2").unwrap(), vec![1, 1, 1]);
        assert_eq!(parse_gamma("b3").unwrap(), vec![-1; 6]);
        assert_eq!(parse_gamma(" -1,-1").unwrap(), vec![-1, -1]);
        assert!(parse_gamma("5").is_err());
        assert!(parse_gamma("P9").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file: ConfigFile = toml::from_str(
            "gamma = \"F0\"\nmax_total_degree = 2\npaths = [\"def\", \"matrix\"]\noutput_format = \"csv\"\n",
        )
        .unwrap();
        let flags = Overrides {
            max_total_degree: Some(1),
            ..Overrides::default()
        };
        let config = RunConfig::resolve(Some(file), flags).unwrap();
        assert_eq!(config.gamma, vec![0, 0, 0, 0]);
        assert_eq!(config.max_total_degree, 1);
        assert_eq!(config.paths, vec![PathName::Def, PathName::Matrix]);
        assert_eq!(config.output_format, OutputFormat::Csv);
        assert!(toml::from_str::<ConfigFile>("colour = 1").is_err());
    }

    #[test]
    fn rejects_bad_config() {
        let flags = Overrides {
            gamma: Some("1,1".into()),
            degrees: vec!["1,0,0".into()],
            ..Overrides::default()
        };
        assert!(RunConfig::resolve(None, flags).is_err());
        let flags = Overrides {
            paths: vec!["fast".into()],
            ..Overrides::default()
        };
        assert!(RunConfig::resolve(None, flags).is_err());
    }

    #[test]
    fn output_is_independent_of_jobs() {
        let mut config = RunConfig {
            max_total_degree: 2,
            ..RunConfig::default()
        };
        let mut first = Vec::new();
        emit_reports(&config, &compute(&config).unwrap(), &mut first).unwrap();
        config.jobs = Some(1);
        let mut second = Vec::new();
        emit_reports(&config, &compute(&config).unwrap(), &mut second).unwrap();
        assert_eq!(first, second);
        let text = String::from_utf8(first).unwrap();
        assert!(text
            .lines()
            .next()
            .unwrap()
            .contains("\"t_times_G\":[\"-1\"]"));
    }

    #[test]
    fn csv_rows() {
        let config = RunConfig {
            max_total_degree: 1,
            output_format: OutputFormat::Csv,
            ..RunConfig::default()
        };
        let mut out = Vec::new();
        assert!(emit_reports(&config, &compute(&config).unwrap(), &mut out).unwrap());
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert!(text.contains("0 0 1,0,1,true"));
    }
}
