//! Experiment configuration and its `key = value` file form.
//!
//! Keys mirror the long flag names with dashes. Blank lines and lines
//! starting with `#` are ignored. Flags given on the command line override
//! the file; the file overrides environment defaults.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentKind {
    /// mad < 4 instances, exact check that Delta + 2 colors suffice.
    Theorem2,
    /// mad < 3 instances, exact check that Delta + 1 colors suffice.
    Theorem3,
    /// mad < 4 instances colored by the move-based colorer at Delta + 2.
    Colorer,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Theorem2 => "theorem2",
            ExperimentKind::Theorem3 => "theorem3",
            ExperimentKind::Colorer => "colorer",
        }
    }
}

impl FromStr for ExperimentKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "theorem2" => Ok(ExperimentKind::Theorem2),
            "theorem3" => Ok(ExperimentKind::Theorem3),
            "colorer" => Ok(ExperimentKind::Colorer),
            other => Err(format!("unknown experiment `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub n: usize,
    /// Fixed edge count; drawn from `[n, 2n)` per instance when absent.
    pub m: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    pub budget_nodes: u64,
    pub budget_secs: f64,
    /// Colorer move budget; `50 |E|` when absent.
    pub move_budget: Option<usize>,
    pub fallback: bool,
    pub sequential: bool,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(kind: ExperimentKind) -> Self {
        ExperimentConfig {
            kind,
            n: 12,
            m: None,
            trials: 100,
            seed: 0,
            budget_nodes: crate::DEFAULT_BUDGET_NODES,
            budget_secs: crate::DEFAULT_BUDGET_SECS,
            move_budget: None,
            fallback: true,
            sequential: false,
            output: None,
        }
    }

    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        let mut put = |k: &str, v: &dyn fmt::Display| out.push_str(&format!("{k} = {v}\n"));
        put("kind", &self.kind.name());
        put("n", &self.n);
        if let Some(m) = self.m {
            put("m", &m);
        }
        put("trials", &self.trials);
        put("seed", &self.seed);
        put("budget-nodes", &self.budget_nodes);
        put("budget-secs", &self.budget_secs);
        if let Some(b) = self.move_budget {
            put("move-budget", &b);
        }
        put("fallback", &self.fallback);
        put("sequential", &self.sequential);
        if let Some(p) = &self.output {
            put("output", &p.display());
        }
        out
    }

    pub fn from_kv(text: &str) -> Result<Self, CliError> {
        let map = parse_kv(text)?;
        let kind_line = map.get("kind").ok_or_else(|| CliError::Config("missing key `kind`".into()))?;
        let mut c = ExperimentConfig::new(value(kind_line, "kind")?);
        c.apply(&map)?;
        Ok(c)
    }

    /// Overwrites fields named in `map`.
    pub fn apply(&mut self, map: &BTreeMap<String, (usize, String)>) -> Result<(), CliError> {
        for (key, entry) in map {
            match key.as_str() {
                "kind" => self.kind = value(entry, key)?,
                "n" => self.n = value(entry, key)?,
                "m" => self.m = Some(value(entry, key)?),
                "trials" => self.trials = value(entry, key)?,
                "seed" => self.seed = value(entry, key)?,
                "budget-nodes" => self.budget_nodes = value(entry, key)?,
                "budget-secs" => self.budget_secs = value(entry, key)?,
                "move-budget" => self.move_budget = Some(value(entry, key)?),
                "fallback" => self.fallback = value(entry, key)?,
                "sequential" => self.sequential = value(entry, key)?,
                "output" => self.output = Some(PathBuf::from(&entry.1)),
                other => {
                    return Err(CliError::Config(format!("line {}: unknown key `{other}`", entry.0)));
                }
            }
        }
        Ok(())
    }
}

/// Key to `(line, value)`.
pub fn parse_kv(text: &str) -> Result<BTreeMap<String, (usize, String)>, CliError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(CliError::Config(format!("line {}: expected `key = value`", i + 1)));
        };
        let k = k.trim().to_string();
        if map.insert(k.clone(), (i + 1, v.trim().to_string())).is_some() {
            return Err(CliError::Config(format!("line {}: duplicate key `{k}`", i + 1)));
        }
    }
    Ok(map)
}

fn value<T: FromStr>(entry: &(usize, String), key: &str) -> Result<T, CliError> {
    entry
        .1
        .parse()
        .map_err(|_| CliError::Config(format!("line {}: bad value `{}` for `{key}`", entry.0, entry.1)))
}
