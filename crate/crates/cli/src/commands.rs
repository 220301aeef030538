use std::path::Path;
use std::time::Instant;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use aecolor::coloring::{find_conflict, has_bichromatic_cycle, is_acyclic};
use aecolor::colorer::{choose_palette, color_graph, ColorerConfig, ColoringOutcome, FallbackVerdict};
use aecolor::generate::{generate_sparse, random_graph};
use aecolor::io::{parse_coloring, to_dot, write_coloring, write_edge_list};
use aecolor::lab::discharge::{discharge as run_discharge, discharging_contradiction_report};
use aecolor::lab::lemmas::{lemma_suite, LemmaStatus};
use aecolor::lab::sweep::critical_sweep as run_sweep;
use aecolor::mad::mad_exact;
use aecolor::solver::{decide, is_critical, Decision, SolveBudget};
use aecolor::{Color, EdgeColoring, Graph, Rational};

use crate::config::{parse_kv, ExperimentConfig, ExperimentKind};
use crate::report::{
    coloring_triples, edge_pairs, GraphStats, InstanceOutcome, InstanceRecord, RunReport, Summary,
};
use crate::{execution, load_graph, make_budget, read, write, CheckArgs, ChiArgs, CliError, ColorArgs};
use crate::{DischargeArgs, Exit, ExperimentArgs, GenerateArgs, LemmaArgs, Output, SweepArgs};

fn valid_total(g: &Graph, c: &EdgeColoring, k: Color) -> bool {
    c.is_total(g) && is_acyclic(g, c) && c.colors_used(g) <= k as usize
}

pub fn color(a: &ColorArgs) -> Result<Output, CliError> {
    let g = load_graph(&a.file)?;
    let mad = mad_exact(&g).mad;
    let choice = choose_palette(&g, mad);
    let k = a.k.unwrap_or(choice.k);
    let config = ColorerConfig {
        move_budget: a.move_budget,
        fallback: if a.no_fallback { None } else { Some(a.budget.resolve()?) },
        seed: a.seed,
        verify_each_step: false,
        ..ColorerConfig::new(k)
    };
    let report = color_graph(&g, &config);
    if let Some(path) = &a.output {
        write(path, &write_coloring(&g, &report.coloring))?;
    }
    if let Some(path) = &a.trace {
        write(path, &serde_json::to_string_pretty(&report.trace).expect("trace serializes"))?;
    }
    if let Some(path) = &a.dot {
        write(path, &to_dot(&g, Some(&report.coloring)))?;
    }
    let mut value = serde_json::to_value(&report).expect("report serializes");
    value["coloring"] = json!(coloring_triples(&g, &report.coloring));
    value["mad"] = json!(mad);
    value["guarantee"] = json!(choice.guarantee);
    let exit = match (report.outcome, report.fallback) {
        (ColoringOutcome::Failure, FallbackVerdict::NotColorable) => Exit::False,
        (ColoringOutcome::Failure, _) => Exit::Unknown,
        _ => Exit::Success,
    };
    Ok(Output::json(&value, exit))
}

pub fn check(a: &CheckArgs) -> Result<Output, CliError> {
    let g = load_graph(&a.graph)?;
    let c = parse_coloring(&g, &read(&a.coloring)?).map_err(|source| CliError::Parse {
        path: a.coloring.clone(),
        source,
    })?;
    let conflict = find_conflict(&g, &c);
    let cycle = match conflict {
        Some(_) => None,
        None => has_bichromatic_cycle(&g, &c).map_err(|e| CliError::Invalid(e.to_string()))?,
    };
    let total = c.is_total(&g);
    let proper = conflict.is_none();
    let acyclic = proper && cycle.is_none();
    let valid = acyclic && (total || a.allow_partial);
    let cycle_json = cycle.map(|t| {
        json!({
            "colors": [t.colors.0, t.colors.1],
            "vertices": t.vertices,
            "edges": t.edges.iter().map(|&e| {
                let (u, v) = g.endpoints(e).expect("trace edges are live");
                [u.0, v.0]
            }).collect::<Vec<_>>(),
        })
    });
    let value = json!({
        "valid": valid,
        "proper": proper,
        "acyclic": acyclic,
        "total": total,
        "k": c.palette(),
        "colors_used": c.colors_used(&g),
        "colored_edges": c.colored_count(&g),
        "edges": g.edge_count(),
        "conflict_vertex": conflict,
        "bichromatic_cycle": cycle_json,
    });
    Ok(Output::json(&value, if valid { Exit::Success } else { Exit::False }))
}

pub fn chi_a(a: &ChiArgs) -> Result<Output, CliError> {
    let g = load_graph(&a.file)?;
    let budget = a.budget.resolve()?;
    let mut meter = budget.meter();
    let delta = g.max_degree() as Color;
    let max_k = a.max_k.unwrap_or(Color::MAX);
    // Every k below Delta is refuted outright.
    let mut decided_up_to = delta as i64 - 1;
    let mut found: Option<(Color, EdgeColoring)> = None;
    let mut k = delta;
    while k <= max_k {
        match decide(&g, k, &mut meter) {
            Decision::Colorable(c) => {
                decided_up_to = k as i64;
                found = Some((k, c));
                break;
            }
            Decision::NotColorable => decided_up_to = k as i64,
            Decision::Unknown => break,
        }
        k += 1;
    }
    let value = json!({
        "chi_a": found.as_ref().map(|(k, _)| *k),
        "decided_up_to": decided_up_to,
        "coloring": found.as_ref().map(|(_, c)| coloring_triples(&g, c)).unwrap_or_default(),
        "nodes": meter.nodes_used(),
    });
    Ok(Output::json(&value, if found.is_some() { Exit::Success } else { Exit::Unknown }))
}

pub fn mad(file: &Path) -> Result<Output, CliError> {
    let g = load_graph(file)?;
    let r = mad_exact(&g);
    let value = json!({
        "mad": r.mad,
        "witness": r.witness,
        "bounds": {
            "lt4": r.mad < Rational::from_integer(4),
            "lt3": r.mad < Rational::from_integer(3),
        },
    });
    Ok(Output::json(&value, Exit::Success))
}

pub fn lemmas(a: &LemmaArgs) -> Result<Output, CliError> {
    let g = load_graph(&a.file)?;
    let results = lemma_suite(&g, a.k);
    let criticality = if a.certify {
        Some(is_critical(&g, a.k, &a.budget.resolve()?).criticality)
    } else {
        None
    };
    let holds = results.iter().all(|r| r.holds());
    let value = json!({
        "k": a.k,
        "max_degree": g.max_degree(),
        "holds": holds,
        "violated": results.iter().filter(|r| matches!(r.status, LemmaStatus::Violated { .. })).count(),
        "results": results,
        "criticality": criticality,
    });
    Ok(Output::json(&value, if holds { Exit::Success } else { Exit::False }))
}

pub fn discharge(a: &DischargeArgs) -> Result<Output, CliError> {
    let g = load_graph(&a.file)?;
    if a.report {
        let r = discharging_contradiction_report(&g, a.rules, None).map_err(|e| CliError::Invalid(e.to_string()))?;
        return Ok(Output::json(&r, Exit::Success));
    }
    let s = run_discharge(&g, a.rules);
    let value = json!({
        "rules": s.rules,
        "initial_total": s.initial_total(),
        "final_total": s.final_total(),
        "conserved": s.is_conserved(),
        "negative": s.negative_vertices(),
        "initial": s.initial,
        "charges": s.charges,
        "log": s.log,
    });
    let exit = if s.is_conserved() { Exit::Success } else { Exit::False };
    Ok(Output::json(&value, exit))
}

pub fn critical_sweep(a: &SweepArgs) -> Result<Output, CliError> {
    if a.n_max > 9 {
        return Err(CliError::Invalid(format!("--n-max {} is beyond desk scale (at most 9)", a.n_max)));
    }
    let s = run_sweep(a.n_max, &a.budget.resolve()?, execution(a.sequential));
    let exit = if !s.findings.iter().all(|f| f.passed()) {
        Exit::False
    } else if !s.unknown.is_empty() {
        Exit::Unknown
    } else {
        Exit::Success
    };
    Ok(Output::json(&s, exit))
}

pub fn generate(a: &GenerateArgs) -> Result<Output, CliError> {
    let g = generate_sparse(a.n, a.m, a.seed).map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(Output {
        stdout: write_edge_list(&g).trim_end().to_string(),
        exit: Exit::Success,
    })
}

/// Flags over config file over environment defaults.
pub fn experiment_config(a: &ExperimentArgs) -> Result<ExperimentConfig, CliError> {
    let mut c = ExperimentConfig::new(a.kind);
    let (nodes, secs) = a.budget.limits()?;
    c.budget_nodes = nodes;
    c.budget_secs = secs;
    if let Some(path) = &a.config {
        let map = parse_kv(&read(path)?)?;
        c.apply(&map)?;
    }
    c.kind = a.kind;
    if let Some(n) = a.n {
        c.n = n;
    }
    if let Some(t) = a.trials {
        c.trials = t;
    }
    if let Some(s) = a.seed {
        c.seed = s;
    }
    if let Some(n) = a.budget.budget_nodes {
        c.budget_nodes = n;
    }
    if let Some(s) = a.budget.budget_secs {
        c.budget_secs = s;
    }
    if a.m.is_some() {
        c.m = a.m;
    }
    if a.move_budget.is_some() {
        c.move_budget = a.move_budget;
    }
    if a.no_fallback {
        c.fallback = false;
    }
    if a.sequential {
        c.sequential = true;
    }
    if a.output.is_some() {
        c.output = a.output.clone();
    }
    Ok(c)
}

fn run_instance(c: &ExperimentConfig, budget: &SolveBudget, index: usize, seed: u64) -> InstanceRecord {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_m = c.n * (c.n - 1) / 2;
    let m = c.m.unwrap_or_else(|| rng.random_range(c.n..2 * c.n)).min(max_m);
    let g = random_graph(c.n, m, &mut rng).expect("edge count clamped to fit");
    let mad = mad_exact(&g);
    let threshold = match c.kind {
        ExperimentKind::Theorem3 => 3,
        ExperimentKind::Theorem2 | ExperimentKind::Colorer => 4,
    };
    let delta = g.max_degree() as Color;
    let k = match c.kind {
        ExperimentKind::Theorem3 => delta + 1,
        ExperimentKind::Theorem2 | ExperimentKind::Colorer => delta + 2,
    };
    let mut record = InstanceRecord {
        index,
        seed,
        stats: GraphStats::of(&g, mad.mad),
        outcome: InstanceOutcome::Skipped,
        k,
        elapsed_ms: 0.0,
        edges: None,
        coloring: None,
        mad_witness: Some(mad.witness),
        moves: None,
    };
    if mad.mad < Rational::from_integer(threshold) {
        record.edges = Some(edge_pairs(&g));
        let (outcome, coloring) = match c.kind {
            ExperimentKind::Theorem2 | ExperimentKind::Theorem3 => match decide(&g, k, &mut budget.meter()) {
                Decision::Colorable(col) if valid_total(&g, &col, k) => (InstanceOutcome::Success, Some(col)),
                Decision::Colorable(col) => (InstanceOutcome::Violation, Some(col)),
                Decision::NotColorable => (InstanceOutcome::Violation, None),
                Decision::Unknown => (InstanceOutcome::Unknown, None),
            },
            ExperimentKind::Colorer => {
                let config = ColorerConfig {
                    move_budget: c.move_budget,
                    fallback: c.fallback.then_some(*budget),
                    seed,
                    verify_each_step: false,
                    ..ColorerConfig::new(k)
                };
                let r = color_graph(&g, &config);
                record.moves = Some(r.moves);
                let outcome = match (r.outcome, r.fallback) {
                    (_, _) if r.succeeded() && !valid_total(&g, &r.coloring, k) => InstanceOutcome::Violation,
                    (ColoringOutcome::Success, _) => InstanceOutcome::Success,
                    (ColoringOutcome::FallbackSuccess, _) => InstanceOutcome::FallbackSuccess,
                    (ColoringOutcome::Failure, FallbackVerdict::NotColorable) => InstanceOutcome::Violation,
                    (ColoringOutcome::Failure, _) => InstanceOutcome::Unknown,
                };
                (outcome, Some(r.coloring))
            }
        };
        record.outcome = outcome;
        record.coloring = coloring.map(|col| coloring_triples(&g, &col));
    }
    record.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    record
}

pub fn run_experiment(c: &ExperimentConfig) -> Result<RunReport, CliError> {
    if c.n < 2 {
        return Err(CliError::Invalid("experiments need n >= 2".into()));
    }
    let budget = make_budget(c.budget_nodes, c.budget_secs)?;
    let start = Instant::now();
    let mut master = ChaCha8Rng::seed_from_u64(c.seed);
    let jobs: Vec<(usize, u64)> = (0..c.trials).map(|i| (i, master.next_u64())).collect();
    let records = execution(c.sequential).map(&jobs, |&(i, seed)| run_instance(c, &budget, i, seed));
    let summary = Summary::of(&records, start.elapsed().as_secs_f64() * 1e3);
    Ok(RunReport {
        experiment: c.kind.name(),
        config: c.clone(),
        records,
        summary,
    })
}

pub fn experiment(a: &ExperimentArgs) -> Result<Output, CliError> {
    let c = experiment_config(a)?;
    let report = run_experiment(&c)?;
    let out = Output::json(
        &report,
        if report.summary.violation > 0 {
            Exit::False
        } else if report.summary.unknown > 0 {
            Exit::Unknown
        } else {
            Exit::Success
        },
    );
    if let Some(path) = &c.output {
        write(path, &out.stdout)?;
    }
    Ok(out)
}

/// Strips timing fields, which are the only nondeterministic part of a report.
pub fn without_timings(mut v: Value) -> Value {
    match &mut v {
        Value::Object(map) => {
            map.remove("elapsed_ms");
            for (_, x) in map.iter_mut() {
                *x = without_timings(x.take());
            }
        }
        Value::Array(xs) => {
            for x in xs.iter_mut() {
                *x = without_timings(x.take());
            }
        }
        _ => {}
    }
    v
}
