#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use lll_core::apps::{gen_hypergraph_2col, Topology};
use lll_core::process::run;
use lll_core::witness::traceback;
use lll_core::{Instance, Table};

pub fn lll(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lll")).args(args).output().expect("spawn lll")
}

pub fn lll_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_lll"));
    c.args(args);
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("spawn lll")
}

pub fn write_hypergraph(dir: &Path, k: usize, n: usize) -> String {
    let p = dir.join(format!("h{k}_{n}.json"));
    let h = gen_hypergraph_2col(k, n, Topology::Cyclic).unwrap();
    std::fs::write(&p, h.instance.to_json()).unwrap();
    p.to_str().unwrap().to_string()
}

/// Smallest seed whose lex run resamples, its first (step, domain) and pile.
pub fn first_selection(inst: &Instance) -> (u64, usize, usize, String) {
    for seed in 0.. {
        let tr = run(inst, &mut Table::seeded(seed), 10_000).unwrap();
        if let Some((n, rec)) = tr.steps.iter().enumerate().find(|(_, r)| !r.selected.is_empty()) {
            let d = rec.selected[0];
            let pile = traceback(inst, &tr, d, n).unwrap();
            return (seed, n, d, serde_json::to_string(&pile).unwrap());
        }
    }
    unreachable!()
}

/// One invocation per subcommand, small enough to run in a few seconds.
pub fn command_matrix(dir: &Path) -> Vec<Vec<String>> {
    let h = write_hypergraph(dir, 6, 60);
    let inst = Instance::from_json(&std::fs::read_to_string(&h).unwrap()).unwrap();
    let (seed, step, dom, pile) = first_selection(&inst);
    let pile_path = dir.join("pile.json");
    std::fs::write(&pile_path, pile).unwrap();
    let pile_path = pile_path.to_str().unwrap().to_string();
    let w = |name: &str| dir.join(name).to_str().unwrap().to_string();
    let (seed, step, dom) = (seed.to_string(), step.to_string(), dom.to_string());
    let cases: Vec<Vec<&str>> = vec![
        vec!["check", "--instance", &h, "--mode", "slll"],
        vec!["check", "--instance", &h, "--mode", "glll", "--omega-const", "0.0909"],
        vec!["check", "--instance", &h, "--mode", "eps", "--epsilon", "0.99"],
        vec!["solve", "--instance", &h, "--seed", "7"],
        vec!["solve", "--instance", &h, "--seed", "3", "--replicas", "4", "--rule", "random"],
        vec!["witness", "validate", "--pile", &pile_path, "--instance", &h, "--seed", &seed],
        vec!["witness", "traceback", "--instance", &h, "--seed", &seed, "--domain", &dom, "--step", &step],
        vec!["witness", "bound", "--instance", &h, "--tables", "200", "--omega-const", "0.0909"],
        vec!["approx", "--instance", &h, "--n", "3", "--seeds", "3", "--omega-const", "0.0909"],
        vec!["apps", "hypergraph", "--k", "5", "--n", "100", "--seed", "2"],
        vec!["apps", "listcolor", "--graph", "bounded:100,8,300,1", "--seed", "4"],
        vec!["apps", "nonrep", "--graph", "path:6", "--palette", "4", "--brute"],
        vec!["apps", "acyclic", "--graph", "cycle:6", "--palette", "3", "--cmax", "6"],
        vec!["apps", "goodcolor", "--graph", "regular-tf:60,4,0", "--step-limit", "300"],
        vec!["apps", "regularize", "--graph", "cycle:5", "--d", "3", "--depth", "2"],
        vec!["entropy", "tile", "--m", "100", "--tiles", "3,5"],
        vec!["entropy", "code", "--m", "256", "--p", "0.2", "--samples", "3"],
        vec!["entropy", "estimate", "--samples", "2000", "--window", "4"],
        vec!["entropy", "counting", "--n", "8", "--c", "2"],
        vec!["entropy", "params"],
        vec!["entropy", "complexity", "--ring", "32"],
    ];
    let mut out: Vec<Vec<String>> = cases.into_iter().map(|c| c.into_iter().map(String::from).collect()).collect();
    let gh = w("gen_h.json");
    let gn = w("gen_n.json");
    let ga = w("gen_a.json");
    out.push(vec!["gen", "hypergraph", "--k", "4", "--n", "20", "--write", &gh].into_iter().map(String::from).collect());
    out.push(vec!["gen", "nonrep", "--graph", "path:6", "--write", &gn].into_iter().map(String::from).collect());
    out.push(vec!["gen", "acyclic", "--graph", "cycle:6", "--write", &ga].into_iter().map(String::from).collect());
    out
}

/// Run a command, then replay its report; returns (ok, first report, detail).
pub fn replay_identical(dir: &Path, idx: usize, args: &[String]) -> (bool, String, String) {
    let first = dir.join(format!("r{idx}.json"));
    let second = dir.join(format!("r{idx}_replay.json"));
    let mut a: Vec<&str> = args.iter().map(String::as_str).collect();
    a.extend(["--out", first.to_str().unwrap()]);
    let o = lll(&a);
    if !o.status.success() {
        return (false, String::new(), format!("exit {:?}: {}", o.status.code(), String::from_utf8_lossy(&o.stderr)));
    }
    let o = lll(&["replay", "--report", first.to_str().unwrap(), "--out", second.to_str().unwrap()]);
    if !o.status.success() {
        return (false, String::new(), format!("replay exit {:?}: {}", o.status.code(), String::from_utf8_lossy(&o.stderr)));
    }
    let x = std::fs::read(&first).unwrap();
    let y = std::fs::read(&second).unwrap();
    let text = String::from_utf8(x.clone()).unwrap();
    if x == y {
        (true, text, String::new())
    } else {
        (false, text, "replayed report differs".into())
    }
}
