use std::collections::HashSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::baselines::{De, DeParams, Pso, PsoParams};
use crate::benchmarks::BenchmarkId;
use crate::error::{Error, Result};
use crate::optimizer::Optimizer;
use crate::sms::{Sms, SmsParams};

/// An experiment grid: every optimizer runs `runs` times on every benchmark.
///
/// ```toml
/// runs = 30
/// population = 50
/// base_seed = 1
/// output_dir = "results"
///
/// [[benchmarks]]
/// id = "f1"
/// n = 30
/// instance_seed = 7
///
/// [[optimizers]]
/// name = "sms"
///
/// [[optimizers]]
/// name = "de"
/// params = { cr = 0.5 }
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub benchmarks: Vec<BenchmarkEntry>,
    pub optimizers: Vec<OptimizerEntry>,
    #[serde(default = "default_runs")]
    pub runs: usize,
    #[serde(default = "default_population")]
    pub population: usize,
    /// Overrides every benchmark's default iteration budget.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generations: Option<usize>,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    /// Keep per-iteration traces and write one trace file per cell.
    #[serde(default)]
    pub traces: bool,
    /// One instance per benchmark for all runs; when false, run `r` uses
    /// instance seed `instance_seed + r`.
    #[serde(default = "default_true")]
    pub share_instance: bool,
}

fn default_runs() -> usize {
    30
}

fn default_population() -> usize {
    50
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("results")
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchmarkEntry {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default)]
    pub instance_seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generations: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimizerEntry {
    pub name: String,
    /// Optimizer-specific overrides; population and generations come from
    /// the experiment.
    #[serde(default, skip_serializing_if = "toml::Table::is_empty")]
    pub params: toml::Table,
}

/// A benchmark entry after validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResolvedBenchmark {
    pub id: BenchmarkId,
    pub n: usize,
    pub instance_seed: u64,
    pub generations: usize,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::config(e.to_string().trim_end().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config is always representable")
    }

    /// Checks everything and reports all problems in one error.
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if self.runs < 1 {
            problems.push("runs must be at least 1".to_string());
        }
        if self.generations == Some(0) {
            problems.push("generations must be at least 1".to_string());
        }
        if self.benchmarks.is_empty() {
            problems.push("no benchmarks listed".to_string());
        }
        if self.optimizers.is_empty() {
            problems.push("no optimizers listed".to_string());
        }

        let mut seen = HashSet::new();
        for (i, entry) in self.benchmarks.iter().enumerate() {
            match self.resolve_benchmark(entry) {
                Ok(b) => {
                    if !seen.insert(b.id) {
                        problems.push(format!("benchmarks[{i}]: {} listed more than once", b.id));
                    }
                }
                Err(e) => problems.push(format!("benchmarks[{i}]: {e}")),
            }
        }

        let mut names = HashSet::new();
        for (i, entry) in self.optimizers.iter().enumerate() {
            if !names.insert(entry.name.as_str()) {
                problems.push(format!("optimizers[{i}]: {} listed more than once", entry.name));
            }
            if let Err(e) = self.build_optimizer(entry, 1) {
                problems.push(format!("optimizers[{i}]: {e}"));
            }
        }

        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(problems.join("\n")))
        }
    }

    pub fn resolve_benchmark(&self, entry: &BenchmarkEntry) -> Result<ResolvedBenchmark> {
        let id: BenchmarkId = entry.id.parse()?;
        let n = entry.n.unwrap_or(id.default_dim());
        if n == 0 {
            return Err(Error::config(format!("{id}: dimension must be at least 1")));
        }
        if let Some(fixed) = id.fixed_dim() {
            if n != fixed {
                return Err(Error::config(format!("{id} is only defined for n = {fixed}, got {n}")));
            }
        }
        if id.number() == 17 && n < 2 {
            return Err(Error::config(format!("{id} needs n >= 2")));
        }
        let generations = entry
            .generations
            .or(self.generations)
            .unwrap_or(id.default_generations());
        if generations == 0 {
            return Err(Error::config(format!("{id}: generations must be at least 1")));
        }
        Ok(ResolvedBenchmark { id, n, instance_seed: entry.instance_seed, generations })
    }

    pub fn resolved_benchmarks(&self) -> Result<Vec<ResolvedBenchmark>> {
        self.benchmarks.iter().map(|b| self.resolve_benchmark(b)).collect()
    }

    /// Instantiates an optimizer entry for a given iteration budget.
    pub fn build_optimizer(&self, entry: &OptimizerEntry, generations: usize) -> Result<Box<dyn Optimizer>> {
        for reserved in ["population", "generations"] {
            if entry.params.contains_key(reserved) {
                return Err(Error::config(format!(
                    "{}: `{reserved}` is set at experiment level, not per optimizer",
                    entry.name
                )));
            }
        }
        let table = toml::Value::Table(entry.params.clone());
        let bad = |e: toml::de::Error| Error::config(format!("{}: {}", entry.name, e.message()));
        let np = self.population;
        let opt: Box<dyn Optimizer> = match entry.name.as_str() {
            "sms" => {
                let params = SmsParams { population: np, generations, ..table.try_into().map_err(bad)? };
                params.validate()?;
                Box::new(Sms::new(params))
            }
            "pso" => {
                let params = PsoParams { population: np, generations, ..table.try_into().map_err(bad)? };
                params.validate()?;
                Box::new(Pso::new(params))
            }
            "de" => {
                let params = DeParams { population: np, generations, ..table.try_into().map_err(bad)? };
                params.validate()?;
                Box::new(De::new(params))
            }
            other => return Err(Error::config(format!("unknown optimizer `{other}` (expected sms, pso or de)"))),
        };
        Ok(opt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
        [[benchmarks]]
        id = "f1"

        [[optimizers]]
        name = "sms"
    "#;

    #[test]
    fn defaults_fill_in() {
        let cfg = ExperimentConfig::from_toml_str(MINIMAL).unwrap();
        assert_eq!((cfg.runs, cfg.population, cfg.base_seed), (30, 50, 0));
        assert!(cfg.share_instance && !cfg.traces);
        let b = cfg.resolved_benchmarks().unwrap();
        assert_eq!((b[0].n, b[0].generations), (30, 1000));
    }

    #[test]
    fn fixed_dimension_budget() {
        let cfg = ExperimentConfig::from_toml_str(
            "[[benchmarks]]\nid = \"f13\"\n[[optimizers]]\nname = \"pso\"\n",
        )
        .unwrap();
        let b = cfg.resolved_benchmarks().unwrap();
        assert_eq!((b[0].n, b[0].generations), (6, 500));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = format!("colour = \"red\"\n{MINIMAL}");
        assert!(matches!(ExperimentConfig::from_toml_str(&text), Err(Error::Config(_))));
        let text = MINIMAL.replace("name = \"sms\"", "name = \"sms\"\nparams = { gamma = 1.0 }");
        assert!(ExperimentConfig::from_toml_str(&text).is_err());
    }

    #[test]
    fn every_problem_is_reported() {
        let text = r#"
            runs = 0
            [[benchmarks]]
            id = "f99"
            [[benchmarks]]
            id = "f12"
            n = 5
            [[optimizers]]
            name = "ga"
            [[optimizers]]
            name = "de"
            params = { cr = 2.0 }
        "#;
        let Err(Error::Config(msg)) = ExperimentConfig::from_toml_str(text) else {
            panic!("expected config error");
        };
        assert_eq!(msg.lines().count(), 5, "{msg}");
        for needle in ["runs", "f99", "f12", "ga", "CR"] {
            assert!(msg.contains(needle), "{needle} missing from {msg}");
        }
    }

    #[test]
    fn overrides_are_typed() {
        let text = MINIMAL.replace("name = \"sms\"", "name = \"pso\"\nparams = { c1 = 1.5, w_end = 0.4 }");
        let cfg = ExperimentConfig::from_toml_str(&text).unwrap();
        assert!(cfg.build_optimizer(&cfg.optimizers[0], 10).is_ok());
        let text = MINIMAL.replace("name = \"sms\"", "name = \"pso\"\nparams = { population = 3 }");
        assert!(ExperimentConfig::from_toml_str(&text).is_err());
    }

    #[test]
    fn round_trips_through_toml() {
        let cfg = ExperimentConfig::from_toml_str(
            &MINIMAL.replace("name = \"sms\"", "name = \"de\"\nparams = { f = 0.5 }"),
        )
        .unwrap();
        assert_eq!(ExperimentConfig::from_toml_str(&cfg.to_toml_string()).unwrap(), cfg);
    }
}
