#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn json(&self) -> Value {
        serde_json::from_str(&self.stdout)
            .unwrap_or_else(|e| panic!("stdout is not JSON ({e}):\n{}", self.stdout))
    }
}

pub fn run_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_aecolor"));
    cmd.args(args)
        .env_remove("AECOLOR_BUDGET_NODES")
        .env_remove("AECOLOR_BUDGET_SECS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

pub fn run(args: &[&str]) -> Run {
    run_env(args, &[])
}

pub struct Scratch {
    dir: TempDir,
}

impl Scratch {
    pub fn new() -> Self {
        Scratch {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    pub fn file(&self, name: &str, contents: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, contents).unwrap();
        p
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

pub fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

pub fn edge_list(n: usize, edges: &[(usize, usize)]) -> String {
    let mut out = format!("p {n} {}\n", edges.len());
    for (u, v) in edges {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

pub fn cycle(n: usize) -> String {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edge_list(n, &edges)
}

pub fn complete(n: usize) -> String {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    edge_list(n, &edges)
}

/// Coloring file from `[u, v, color]` triples.
pub fn coloring_file(k: u64, triples: &Value) -> String {
    let mut out = format!("k {k}\n");
    for t in triples.as_array().unwrap() {
        out.push_str(&format!("{} {} {}\n", t[0], t[1], t[2]));
    }
    out
}
