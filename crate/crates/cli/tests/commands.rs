mod common;

use common::*;
use serde_json::Value;

use aecolor_cli::commands::without_timings;

#[test]
fn check_accepts_valid_and_names_c4_cycle() {
    let t = Scratch::new();
    let g = t.file("c4.edges", &cycle(4));
    let good = t.file("good.col", "k 3\n0 1 1\n1 2 2\n2 3 1\n3 0 3\n");
    let r = run(&["check", s(&g), s(&good)]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.json()["valid"], true);

    let bad = t.file("bad.col", "k 2\n0 1 1\n1 2 2\n2 3 1\n3 0 2\n");
    let r = run(&["check", s(&g), s(&bad)]);
    assert_eq!(r.code, 1);
    let j = r.json();
    assert_eq!(j["proper"], true);
    assert_eq!(j["acyclic"], false);
    let cyc = &j["bichromatic_cycle"];
    assert_eq!(cyc["colors"], serde_json::json!([1, 2]));
    assert_eq!(cyc["edges"].as_array().unwrap().len(), 4);
    let walk = cyc["vertices"].as_array().unwrap();
    assert_eq!(walk.first(), walk.last());
}

#[test]
fn check_flags_improper_and_partial() {
    let t = Scratch::new();
    let g = t.file("c4.edges", &cycle(4));
    let clash = t.file("clash.col", "k 3\n0 1 1\n1 2 1\n2 3 2\n3 0 3\n");
    let r = run(&["check", s(&g), s(&clash)]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["proper"], false);
    assert_eq!(r.json()["conflict_vertex"], 1);

    let partial = t.file("partial.col", "k 3\n0 1 1\n1 2 2\n2 3 0\n3 0 0\n");
    assert_eq!(run(&["check", s(&g), s(&partial)]).code, 1);
    let r = run(&["check", s(&g), s(&partial), "--allow-partial"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["total"], false);
}

#[test]
fn malformed_inputs_exit_2_with_line_numbers() {
    let t = Scratch::new();
    let bad = t.file("bad.edges", "p 3 2\n# fine\ne 0 1\ne 1 7\n");
    let r = run(&["mad", s(&bad)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 4"), "{}", r.stderr);
    assert!(r.json()["error"].as_str().unwrap().contains("line 4"));

    let g = t.file("c4.edges", &cycle(4));
    let col = t.file("bad.col", "k 3\n0 1 1\n0 2 2\n");
    let r = run(&["check", s(&g), s(&col)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 3"), "{}", r.stderr);

    let conf = t.file("bad.conf", "n = 10\ntrials = lots\n");
    let r = run(&["experiment", "colorer", "--config", s(&conf)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);

    let missing = t.path("missing.edges");
    assert_eq!(run(&["mad", s(&missing)]).code, 2);
}

#[test]
fn chi_a_known_values() {
    let t = Scratch::new();
    for (text, want) in [(complete(4), 5), (cycle(7), 3), (cycle(5), 3)] {
        let g = t.file("g.edges", &text);
        let r = run(&["chi-a", s(&g)]);
        assert_eq!(r.code, 0);
        let j = r.json();
        assert_eq!(j["chi_a"], want);
        assert_eq!(j["decided_up_to"], want);
        let col = t.file("g.col", &coloring_file(want, &j["coloring"]));
        assert_eq!(run(&["check", s(&g), s(&col)]).code, 0);
    }
}

#[test]
fn chi_a_respects_max_k() {
    let t = Scratch::new();
    let g = t.file("k4.edges", &complete(4));
    let r = run(&["chi-a", s(&g), "--max-k", "4"]);
    assert_eq!(r.code, 2);
    let j = r.json();
    assert_eq!(j["chi_a"], Value::Null);
    assert_eq!(j["decided_up_to"], 4);
}

#[test]
fn mad_reports_exact_value() {
    let t = Scratch::new();
    let g = t.file("k4.edges", &complete(4));
    let j = run(&["mad", s(&g)]).json();
    assert_eq!(j["mad"], "3/1");
    assert_eq!(j["bounds"]["lt4"], true);
    assert_eq!(j["bounds"]["lt3"], false);
    // K4 plus a pendant path: the densest part is still K4.
    let g = t.file("k4p.edges", &edge_list(6, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5)]));
    let j = run(&["mad", s(&g)]).json();
    assert_eq!(j["mad"], "3/1");
    assert_eq!(j["witness"], serde_json::json!([0, 1, 2, 3]));
}

#[test]
fn color_output_round_trips_through_check() {
    let t = Scratch::new();
    let gen = run(&["generate", "--n", "60", "--m", "100", "--seed", "5"]);
    assert_eq!(gen.code, 0);
    let g = t.file("g.edges", &gen.stdout);
    let out = t.path("g.col");
    let trace = t.path("g.trace.json");
    let dot = t.path("g.dot");
    let r = run(&["color", s(&g), "-o", s(&out), "--trace", s(&trace), "--dot", s(&dot), "--seed", "3"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let j = r.json();
    assert!(matches!(j["outcome"].as_str(), Some("success" | "fallback-success")));
    assert_eq!(run(&["check", s(&g), s(&out)]).code, 0);
    // The triples in the report are the same coloring.
    let again = t.file("again.col", &coloring_file(j["k"].as_u64().unwrap(), &j["coloring"]));
    assert_eq!(run(&["check", s(&g), s(&again)]).code, 0);

    let moves: Value = serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert!(!moves["moves"].as_array().unwrap().is_empty());
    let dot = std::fs::read_to_string(&dot).unwrap();
    assert!(dot.starts_with("graph"));
    assert_eq!(dot.matches(" -- ").count(), 100);
}

#[test]
fn color_failure_exit_codes() {
    let t = Scratch::new();
    let g = t.file("k4.edges", &complete(4));
    // Four colors never suffice for K4, and the fallback proves it.
    let r = run(&["color", s(&g), "--k", "4"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["fallback"], "not-colorable");
    let r = run(&["color", s(&g), "--k", "4", "--no-fallback"]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json()["outcome"], "failure");
    assert_eq!(r.json()["fallback"], "not-run");
}

#[test]
fn generate_is_deterministic_and_checked() {
    let a = run(&["generate", "--n", "10", "--m", "9", "--seed", "1"]);
    let b = run(&["generate", "--n", "10", "--m", "9", "--seed", "1"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.starts_with("p 10 9\n"));
    assert_eq!(a.stdout.lines().filter(|l| l.starts_with("e ")).count(), 9);
    assert_eq!(run(&["generate", "--n", "4", "--m", "7"]).code, 2);
}

#[test]
fn lemmas_and_certify() {
    let t = Scratch::new();
    let g = t.file("k4.edges", &complete(4));
    let r = run(&["lemmas", s(&g), "--k", "4", "--certify"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let j = r.json();
    assert_eq!(j["criticality"]["verdict"], "critical");
    assert_eq!(j["results"].as_array().unwrap().len(), 10);
    // A path is far from critical and trips the 2-connectivity predicate.
    let p = t.file("p4.edges", &edge_list(4, &[(0, 1), (1, 2), (2, 3)]));
    let r = run(&["lemmas", s(&p), "--k", "2"]);
    assert_eq!(r.code, 1);
    let j = r.json();
    let tc = j["results"].as_array().unwrap().iter().find(|r| r["lemma"] == "two-connected").unwrap();
    assert_eq!(tc["status"], "violated");
}

#[test]
fn discharge_conserves_and_reports() {
    let t = Scratch::new();
    let g = t.file("c6.edges", &cycle(6));
    let r = run(&["discharge", s(&g), "--rules", "mad3"]);
    assert_eq!(r.code, 0);
    let j = r.json();
    assert_eq!(j["initial_total"], "-6/1");
    assert_eq!(j["final_total"], "-6/1");
    assert_eq!(j["conserved"], true);
    assert_eq!(j["log"].as_array().unwrap().len(), 12);

    let r = run(&["discharge", s(&g), "--rules", "mad3", "--report"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["explained"], true);
    // K4 has mad 3, not below the mad3 threshold.
    let k4 = t.file("k4.edges", &complete(4));
    assert_eq!(run(&["discharge", s(&k4), "--rules", "mad3", "--report"]).code, 2);
    assert_eq!(run(&["discharge", s(&k4), "--rules", "mad5"]).code, 2);
}

#[test]
fn critical_sweep_small() {
    let r = run(&["critical-sweep", "--n-max", "5"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let j = r.json();
    // Connected graphs on 2 to 5 vertices; the single vertex has no edges.
    assert_eq!(j["examined"], 1 + 2 + 6 + 21);
    let found: Vec<_> = j["findings"].as_array().unwrap().iter().map(|f| f["graph6"].as_str().unwrap()).collect();
    assert!(found.contains(&"C~"), "{found:?}");
    let seq = run(&["critical-sweep", "--n-max", "5", "--sequential"]);
    assert_eq!(seq.json(), j);
    assert_eq!(run(&["critical-sweep", "--n-max", "12"]).code, 2);
}

fn experiment(args: &[&str]) -> Value {
    let mut all = vec!["experiment"];
    all.extend_from_slice(args);
    let r = run(&all);
    assert_eq!(r.code, 0, "{}\n{}", r.stdout, r.stderr);
    r.json()
}

#[test]
fn experiment_theorem2_counts() {
    let j = experiment(&["theorem2", "--n", "12", "--trials", "200", "--seed", "7"]);
    let sum = &j["summary"];
    assert_eq!(sum["instances"], 200);
    assert!(sum["eligible"].as_u64().unwrap() > 0);
    assert_eq!(sum["violation"], 0);
    assert_eq!(sum["unknown"], 0);
    assert_eq!(sum["success"], sum["eligible"]);
}

#[test]
fn experiment_is_reproducible() {
    let args = ["colorer", "--n", "40", "--trials", "12", "--seed", "11"];
    let a = without_timings(experiment(&args));
    let b = without_timings(experiment(&args));
    assert_eq!(a, b);
    let mut seq = args.to_vec();
    seq.push("--sequential");
    let mut c = without_timings(experiment(&seq));
    c["config"]["sequential"] = Value::Bool(false);
    assert_eq!(a, c);
    let other = without_timings(experiment(&["colorer", "--n", "40", "--trials", "12", "--seed", "12"]));
    assert_ne!(a["records"], other["records"]);
}

#[test]
fn experiment_records_reverify() {
    let t = Scratch::new();
    for kind in ["theorem3", "colorer"] {
        let j = experiment(&[kind, "--n", "14", "--trials", "20", "--seed", "2"]);
        for rec in j["records"].as_array().unwrap() {
            if rec["outcome"] == "skipped" {
                continue;
            }
            let n = rec["stats"]["n"].as_u64().unwrap() as usize;
            let edges: Vec<(usize, usize)> = rec["edges"]
                .as_array()
                .unwrap()
                .iter()
                .map(|e| (e[0].as_u64().unwrap() as usize, e[1].as_u64().unwrap() as usize))
                .collect();
            let g = t.file("g.edges", &edge_list(n, &edges));
            let col = t.file("g.col", &coloring_file(rec["k"].as_u64().unwrap(), &rec["coloring"]));
            assert_eq!(run(&["check", s(&g), s(&col)]).code, 0, "{kind} record {}", rec["index"]);
            let mad = run(&["mad", s(&g)]).json();
            assert_eq!(mad["mad"], rec["stats"]["mad"]);
        }
    }
}

#[test]
fn experiment_config_file_and_precedence() {
    let t = Scratch::new();
    let out = t.path("report.json");
    let conf = t.file(
        "run.conf",
        &format!("# small run\nn = 16\ntrials = 6\nseed = 4\nbudget-nodes = 5000000\noutput = {}\n", out.display()),
    );
    let j = experiment(&["theorem2", "--config", s(&conf), "--trials", "3"]);
    let c = &j["config"];
    assert_eq!(c["n"], 16);
    assert_eq!(c["trials"], 3);
    assert_eq!(c["seed"], 4);
    assert_eq!(c["budget_nodes"], 5_000_000);
    assert_eq!(j["records"].as_array().unwrap().len(), 3);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(without_timings(written), without_timings(j.clone()));

    // The resolved config, written back out, reproduces the run.
    let cfg: aecolor_cli::ExperimentConfig = serde_json::from_value(j["config"].clone()).unwrap();
    let again = t.file("again.conf", &cfg.to_kv());
    let k = experiment(&["theorem2", "--config", s(&again)]);
    assert_eq!(without_timings(k["records"].clone()), without_timings(j["records"].clone()));
}

#[test]
fn budget_environment_override() {
    let t = Scratch::new();
    let g = t.file("k4.edges", &complete(4));
    let r = run_env(&["chi-a", s(&g)], &[("AECOLOR_BUDGET_NODES", "1")]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json()["chi_a"], Value::Null);
    // A flag beats the environment.
    let r = run_env(&["chi-a", s(&g), "--budget-nodes", "1000000"], &[("AECOLOR_BUDGET_NODES", "1")]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["chi_a"], 5);

    let r = run_env(&["experiment", "colorer", "--n", "10", "--trials", "1"], &[("AECOLOR_BUDGET_SECS", "7.5")]);
    assert_eq!(r.json()["config"]["budget_secs"], 7.5);
    let r = run_env(&["chi-a", s(&g)], &[("AECOLOR_BUDGET_NODES", "many")]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("AECOLOR_BUDGET_NODES"));
}
