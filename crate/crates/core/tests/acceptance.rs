//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so every verdict is printed even when an earlier one fails.

use std::ops::ControlFlow;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stargraph::cuts::{
    cut_size_formula, first_symbol_reach_violations, is_k_edge_cut, is_k_vertex_cut,
    isolated_copy_cut, spread_position, symbol_profile, unique_neighbor_check,
};
use stargraph::decomposition::{validate_first_structure, validate_second_structure};
use stargraph::oracle::{
    classical_connectivity, exact_super, CutMode, OracleKind, SearchBudget, Strategy,
};
use stargraph::subgraphs::{for_each_connected_set, sample_min_degree_subgraph};
use stargraph::{AdjacencyMode, StarGraph, VertexId, VertexSet};

type Verdict = Result<String, String>;

fn graph(n: usize) -> StarGraph {
    StarGraph::new(n, AdjacencyMode::Auto).expect("small star graph")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn small_exact_values() -> Verdict {
    let cases = [(2, 0, 1), (3, 0, 2), (3, 1, 2), (4, 0, 3), (4, 1, 4), (4, 2, 6)];
    let budget = SearchBudget {
        strategy: Strategy::SubsetEnumeration,
        ..SearchBudget::default()
    };
    for (n, k, want) in cases {
        for mode in [CutMode::Vertex, CutMode::Edge] {
            let r = exact_super(n, k, mode, &budget).map_err(|e| e.to_string())?;
            ensure(r.kind == OracleKind::Exact && r.value == Some(want), || {
                format!("S_{n} k={k} {mode:?}: {:?} {:?}, expected exact {want}", r.kind, r.value)
            })?;
        }
    }
    Ok("12 oracle runs exact: 1, 2, 2, 3, 4, 6".into())
}

fn stretch_instance() -> Verdict {
    let budget = SearchBudget {
        max_wall_time: Duration::from_secs(30 * 60),
        ..SearchBudget::default()
    };
    let mut notes = Vec::new();
    for mode in [CutMode::Vertex, CutMode::Edge] {
        let r = exact_super(5, 1, mode, &budget).map_err(|e| e.to_string())?;
        ensure(r.value == Some(6), || format!("{mode:?}: value {:?}, expected 6", r.value))?;
        match r.kind {
            OracleKind::Exact => notes.push(format!("{mode:?} exact 6 ({} nodes)", r.stats.nodes)),
            OracleKind::UpperBoundOnly => notes.push(format!("{mode:?} budget exhausted, upper bound 6")),
            OracleKind::NoCutExists => return Err(format!("{mode:?}: no cut reported")),
        }
    }
    Ok(notes.join("; "))
}

fn construction_validation() -> Verdict {
    let mut cases = 0;
    for n in 2..=8 {
        let g = graph(n);
        for k in 0..=n - 2 {
            let c = isolated_copy_cut(&g, k).map_err(|e| format!("S_{n} k={k}: {e}"))?;
            let want = cut_size_formula(n, k).unwrap();
            ensure(c.t.len() == want && c.f.len() == want, || {
                format!("S_{n} k={k}: |T| = {}, |F| = {}, expected {want}", c.t.len(), c.f.len())
            })?;
            let v = is_k_vertex_cut(&g, &c.t, k).map_err(|e| e.to_string())?;
            let e = is_k_edge_cut(&g, &c.f, k).map_err(|e| e.to_string())?;
            ensure(v.valid && e.valid, || {
                format!("S_{n} k={k}: verdicts {:?} / {:?}", v.reason, e.reason)
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (n, k) pairs with 2 <= n <= 8"))
}

fn structure_suites() -> Verdict {
    let mut runs = 0;
    for n in 2..=7 {
        let g = graph(n);
        for j in 2..=n {
            let r = validate_first_structure(&g, j).map_err(|e| e.to_string())?;
            ensure(r.pass, || format!("S_{n} position {j}: {:?}", r.failing_pairs))?;
            runs += 1;
        }
        for i in 1..=n {
            let r = validate_second_structure(&g, i).map_err(|e| e.to_string())?;
            ensure(r.pass, || format!("S_{n} symbol {i} fails"))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} partitions validated for n <= 7"))
}

fn classical_values() -> Verdict {
    for n in 2..=6 {
        let got = classical_connectivity(&graph(n)).map_err(|e| e.to_string())?;
        ensure(got == (n - 1, n - 1), || format!("S_{n}: {got:?}"))?;
    }
    Ok("(n-1, n-1) for 2 <= n <= 6".into())
}

fn spread_and_profiles() -> Verdict {
    let mut exhaustive = [0usize; 3];
    let g = graph(4);
    let mut failure = None;
    for_each_connected_set(&g, g.order(), |members| {
        let x: VertexSet = members.iter().copied().collect();
        let delta = g.induced_min_degree(&x);
        for k in 1..=2 {
            if delta < k {
                continue;
            }
            exhaustive[k] += 1;
            let ok = spread_position(&g, &x, k).is_ok()
                && first_symbol_reach_violations(&g, &x, k).is_ok_and(|v| v.is_empty());
            if !ok {
                failure = Some(format!("S_4 k={k}: {:?}", x.as_slice()));
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    if let Some(f) = failure {
        return Err(f);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in [5, 6] {
        let g = graph(n);
        for k in 1..=3 {
            let mut found = 0;
            let mut attempts = 0;
            while found < 1000 {
                attempts += 1;
                ensure(attempts <= 100_000, || format!("S_{n} k={k}: only {found} samples"))?;
                let Some(x) = sample_min_degree_subgraph(&g, &mut rng, k) else {
                    continue;
                };
                found += 1;
                spread_position(&g, &x, k).map_err(|e| format!("S_{n} k={k}: {e}"))?;
                let bad = first_symbol_reach_violations(&g, &x, k).map_err(|e| e.to_string())?;
                ensure(bad.is_empty(), || format!("S_{n} k={k}: first-symbol reach below k"))?;
            }
        }
    }

    let mut profiles = 0;
    for n in [4, 5, 6] {
        let g = graph(n);
        for _ in 0..10_000 {
            let size = rng.gen_range(1..=g.order());
            let x: VertexSet = sample(&mut rng, g.order(), size).into_iter().map(VertexId).collect();
            let p = symbol_profile(&g, &x).map_err(|e| e.to_string())?;
            ensure(p.duality_holds() && p.position_total() == p.symbol_total(), || {
                format!("S_{n}: profile identity fails on {size} vertices")
            })?;
            profiles += 1;
        }
    }
    Ok(format!(
        "S_4 exhaustive ({} sets with min degree >= 1, {} with >= 2); 1000 samples each for S_5, S_6 at k = 1, 2, 3; {profiles} profiles",
        exhaustive[1], exhaustive[2]
    ))
}

fn unique_neighbors() -> Verdict {
    let mut cases = 0;
    for n in 2..=6 {
        let g = graph(n);
        for k in 0..=n - 2 {
            let c = isolated_copy_cut(&g, k).map_err(|e| e.to_string())?;
            let r = unique_neighbor_check(&g, &c.x).map_err(|e| e.to_string())?;
            ensure(r.pass && r.boundary_size == c.t.len(), || {
                format!("S_{n} k={k}: histogram {:?}", r.histogram)
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (n, k) pairs with 2 <= n <= 6"))
}

fn table_determinism() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_stargraph");
    let run = |threads: Option<&str>| -> Result<Vec<u8>, String> {
        let mut cmd = Command::new(bin);
        cmd.args(["table", "--max-n", "5", "--seed", "7"]);
        if let Some(t) = threads {
            cmd.args(["--threads", t]);
        }
        let out = cmd.output().map_err(|e| e.to_string())?;
        ensure(out.status.success(), || {
            format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr))
        })?;
        Ok(out.stdout)
    };
    let first = run(None)?;
    for threads in [None, None, Some("1"), Some("8")] {
        ensure(run(threads)? == first, || format!("output differs with threads {threads:?}"))?;
    }
    ensure(
        first.starts_with(b"n,k,formula,construction_ok,oracle_kind,oracle_value,agree\n"),
        || "unexpected CSV header".into(),
    )?;
    Ok(format!("{} bytes identical over 3 runs and --threads 1 / 8", first.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 8] = [
        ("exact values for n <= 4", small_exact_values),
        ("S_5 with k = 1", stretch_instance),
        ("construction for n <= 8", construction_validation),
        ("decomposition structure for n <= 7", structure_suites),
        ("classical connectivity for n <= 6", classical_values),
        ("spread position and symbol profiles", spread_and_profiles),
        ("unique neighbors for n <= 6", unique_neighbors),
        ("table determinism", table_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let verdict = check();
        let secs = started.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("criterion {}: PASS  {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
