//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed.
//!
//! cargo test -p listcolor --test acceptance

use std::time::Instant;

use listcolor::certificates::{
    build_proper_trees, count_proper_triples, enumerate_proper_triples, find_2bad_pair, find_bad_triple,
    find_tree_bad, is_2bad, is_bad_triple, is_tree_bad, moore_bound, OrderedSeq, ProperPair, ProperTriple,
};
use listcolor::graph::{self, connected_graphs, write_graph, Graph};
use listcolor::harness::{records_csv, sweep, SweepConfig};
use listcolor::lists::{sample_assignment, write_lists, ListAssignment, SeedSpec};
use listcolor::moments::{
    bad_triple_probability_bound, chebyshev_lower_bound, expected_identical_cliques_exact, factorial,
    pair_probability_bound, pi_bound_clique_union, proper_triple_count_bound, tree_order,
};
use listcolor::solver::{brute_force_colorable, solve};
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;

const CORPUS_ORDER: usize = 7;
const CORPUS_TRIALS: u64 = 200;
const CORPUS_KS: [u32; 2] = [2, 3];
const CORPUS_SIGMAS: [u32; 3] = [3, 4, 5];

/// Tallies over the solver/certificate corpus, shared by criteria 1 to 4.
#[derive(Default)]
struct Corpus {
    graphs: usize,
    instances: u64,
    uncolorable: u64,
    solver_mismatch: Vec<String>,
    triple_checked: u64,
    triple_fail: Vec<String>,
    pair_checked: u64,
    pair_fail: Vec<String>,
    tree_checked: u64,
    tree_fail: Vec<String>,
}

impl Corpus {
    fn merge(mut self, o: Corpus) -> Corpus {
        self.graphs += o.graphs;
        self.instances += o.instances;
        self.uncolorable += o.uncolorable;
        self.solver_mismatch.extend(o.solver_mismatch);
        self.triple_checked += o.triple_checked;
        self.triple_fail.extend(o.triple_fail);
        self.pair_checked += o.pair_checked;
        self.pair_fail.extend(o.pair_fail);
        self.tree_checked += o.tree_checked;
        self.tree_fail.extend(o.tree_fail);
        self
    }
}

fn instance_text(g: &Graph, l: &ListAssignment) -> String {
    format!("{}{}", write_graph(g), write_lists(l))
}

fn check_graph(gi: usize, g: &Graph) -> Corpus {
    let mut c = Corpus {
        graphs: 1,
        ..Corpus::default()
    };
    let girth_above_three = g.girth().is_some_and(|x| x > 3);
    let mut index = gi as u64 * 10_000;
    for k in CORPUS_KS {
        for sigma in CORPUS_SIGMAS {
            for _ in 0..CORPUS_TRIALS {
                let lists = sample_assignment(g, k, sigma, SeedSpec::new(0xACCE, index)).unwrap();
                index += 1;
                c.instances += 1;
                let colorable = solve(g, &lists).is_colorable();
                if brute_force_colorable(g, lists.lists()).unwrap() != colorable {
                    c.solver_mismatch.push(instance_text(g, &lists));
                }
                if colorable {
                    continue;
                }
                c.uncolorable += 1;

                c.triple_checked += 1;
                match find_bad_triple(g, &lists) {
                    Ok(Some(b)) if matches!(is_bad_triple(g, &lists, &b.triple), Ok(Some(_))) => {}
                    other => c.triple_fail.push(format!("{other:?}\n{}", instance_text(g, &lists))),
                }

                if k == 2 {
                    c.pair_checked += 1;
                    let ok = match find_2bad_pair(g, &lists) {
                        Ok(Some(p)) => {
                            p.h1.second() != p.h2.second() && matches!(is_2bad(g, &p, &lists), Ok(Some(_)))
                        }
                        _ => false,
                    };
                    if !ok {
                        c.pair_fail.push(instance_text(g, &lists));
                    }
                }

                if girth_above_three {
                    c.tree_checked += 1;
                    let ok = match find_tree_bad(g, &lists) {
                        Ok(Some(t)) => is_tree_bad(g, &t.tree, &lists).is_some(),
                        _ => false,
                    };
                    if !ok {
                        c.tree_fail.push(instance_text(g, &lists));
                    }
                }
            }
        }
    }
    c
}

fn run_corpus() -> Corpus {
    let graphs = connected_graphs(CORPUS_ORDER);
    graphs
        .par_iter()
        .enumerate()
        .map(|(gi, g)| check_graph(gi, g))
        .reduce(Corpus::default, Corpus::merge)
}

fn zero_failures(what: &str, checked: u64, failures: &[String]) -> Outcome {
    if checked == 0 {
        return Err(format!("no {what} instances were checked"));
    }
    if failures.is_empty() {
        Ok(format!("{checked} {what} instances, 0 failures"))
    } else {
        Err(format!(
            "{} of {checked} {what} instances failed; first:\n{}",
            failures.len(),
            failures[0]
        ))
    }
}

fn criterion_1(c: &Corpus) -> Outcome {
    let detail = format!("{} graphs, {} instances", c.graphs, c.instances);
    if c.solver_mismatch.is_empty() {
        Ok(format!("{detail}, solver agrees with brute force on all"))
    } else {
        Err(format!("{detail}, {} disagreements; first:\n{}", c.solver_mismatch.len(), c.solver_mismatch[0]))
    }
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    for g in connected_graphs(CORPUS_ORDER) {
        let n = g.n();
        let delta = g.max_degree() as u64;
        let counts = count_proper_triples(&g, n).map_err(|e| e.to_string())?;
        for (m, &count) in counts.iter().enumerate().skip(1) {
            let bound = (n as u64 * delta.pow(m as u32 - 1)) as f64 * factorial(m as u64 - 1).value();
            let reported = proper_triple_count_bound(n as u64, delta, m as u64).unwrap().value();
            if (reported - bound).abs() > 1e-9 * bound {
                return Err(format!("bound function gives {reported}, direct {bound}"));
            }
            if count as f64 > bound {
                return Err(format!("m={m}: {count} proper triples > {bound} in\n{}", write_graph(&g)));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (graph, m) pairs, 0 violations"))
}

/// Number of triangles of `clique_union(n, 4)` whose three lists coincide.
fn identical_triangles(n: usize, lists: &ListAssignment) -> u64 {
    let mut count = 0;
    for block in 0..n / 5 {
        let b = 5 * block;
        for x in b..b + 5 {
            for y in x + 1..b + 5 {
                if lists.list(x) != lists.list(y) {
                    continue;
                }
                for z in y + 1..b + 5 {
                    if lists.list(y) == lists.list(z) {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

fn criterion_6() -> Outcome {
    let g = graph::clique_union(60, 4).unwrap();
    let trials = 100_000u64;
    let counts: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| identical_triangles(60, &sample_assignment(&g, 2, 6, SeedSpec::new(6, t)).unwrap()) as f64)
        .collect();
    let mean = counts.iter().sum::<f64>() / trials as f64;
    let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
    let se = (var / trials as f64).sqrt();
    let e = expected_identical_cliques_exact(60, 4, 2, 6).unwrap().value();
    let detail = format!("mean {mean:.5} vs expectation {e:.5}, se {se:.5}");
    if (e - 0.53333).abs() > 1e-4 {
        return Err(format!("expectation {e} is not 0.53333"));
    }
    if (mean - e).abs() <= 3.0 * se {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_7() -> Outcome {
    let (k, sigma) = (2u32, 5u32);
    let mut pool: Vec<(Graph, ProperTriple)> = Vec::new();
    for g in connected_graphs(CORPUS_ORDER) {
        if g.max_degree() > 4 {
            continue;
        }
        for t in enumerate_proper_triples(&g, 5).map_err(|e| e.to_string())? {
            if t.len() >= 3 {
                pool.push((g.clone(), t));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let chosen: Vec<&(Graph, ProperTriple)> = pool.choose_multiple(&mut rng, 20).collect();
    let trials = 100_000u64;
    let mut lines = Vec::new();
    let mut violations = 0;
    for (i, (g, t)) in chosen.iter().enumerate() {
        let delta = g.max_degree() as u64;
        let bound = bad_triple_probability_bound(t.len() as u64, delta, k as u64, sigma as u64).unwrap().value();
        let bad = (0..trials)
            .into_par_iter()
            .filter(|&s| {
                let l = sample_assignment(g, k, sigma, SeedSpec::new(70 + i as u64, s)).unwrap();
                matches!(is_bad_triple(g, &l, t), Ok(Some(_)))
            })
            .count();
        let freq = bad as f64 / trials as f64;
        if freq > bound {
            violations += 1;
        }
        lines.push(format!("m={} Δ={delta}: {freq:.5} <= {bound:.4}", t.len()));
    }
    let reference = bad_triple_probability_bound(4, 3, 2, 5).unwrap().value();
    if (reference - 8.1).abs() > 1e-9 {
        return Err(format!("bound at (4,3,2,5) is {reference}, not 8.1"));
    }
    if violations == 0 {
        Ok(format!("20 triples, 0 violations ({})", lines[..3].join("; ")))
    } else {
        Err(format!("{violations} violations: {}", lines.join("; ")))
    }
}

fn criterion_8() -> Outcome {
    let g = graph::complete(3);
    let h1 = OrderedSeq::cycle(&g, vec![0, 1, 2]).unwrap();
    let h2 = OrderedSeq::cycle(&g, vec![0, 2, 1]).unwrap();
    let pair = ProperPair::new(&g, h1, h2).unwrap();
    let bound = pair_probability_bound(3, 0, 5).unwrap().value();
    let trials = 100_000u64;
    let bad = (0..trials)
        .into_par_iter()
        .filter(|&t| {
            let l = sample_assignment(&g, 2, 5, SeedSpec::new(8, t)).unwrap();
            matches!(is_2bad(&g, &pair, &l), Ok(Some(_)))
        })
        .count();
    let p = bad as f64 / trials as f64;
    let se = (p * (1.0 - p) / trials as f64).sqrt();
    let detail = format!("frequency {p:.5} (se {se:.5}) vs bound {bound:.5}");
    if (bound - 0.02).abs() > 1e-12 {
        return Err(format!("bound is {bound}, not 0.02"));
    }
    if p <= bound + 3.0 * se {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_9() -> Outcome {
    // 225 blocks of K5 with σ=6 put the expectation at 10.
    let n = 1125;
    let g = graph::clique_union(n, 4).unwrap();
    let e = expected_identical_cliques_exact(n as u64, 4, 2, 6).unwrap().value();
    let pi = pi_bound_clique_union(n as u64, 4, 2, 6).unwrap().value();
    let lb = chebyshev_lower_bound(e, pi).unwrap().value();
    let trials = 20_000u64;
    let positive = (0..trials)
        .into_par_iter()
        .filter(|&t| identical_triangles(n, &sample_assignment(&g, 2, 6, SeedSpec::new(9, t)).unwrap()) > 0)
        .count();
    let p = positive as f64 / trials as f64;
    let se = (p * (1.0 - p) / trials as f64).sqrt().max(1.0 / trials as f64);
    let detail = format!("E={e:.3}, Π={pi:.4}, P[X>0]={p:.5} vs lower bound {lb:.4}");
    if (e - 10.0).abs() > 0.5 {
        return Err(format!("expectation {e} is not near 10"));
    }
    if p >= lb - 3.0 * se {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_10() -> Outcome {
    let a = SweepConfig::from_json(
        r#"{
            "family": {"type": "clique_union", "delta": 4},
            "n": [200],
            "k": 2,
            "sigma": [4, 6, 8, 9, 10, 11, 12, 14, 16, 20, 24, 32],
            "trials": 1000,
            "base_seed": 10
        }"#,
    )
    .unwrap();
    let ra = sweep(&a).map_err(|e| e.to_string())?;
    let crossing = ra.crossings[0].sigma;
    let a_ok = ra.is_monotone() && crossing.is_some();
    let detail_a = format!(
        "(a) clique_union(200,4): monotone {}, crossing {:?}",
        ra.is_monotone(),
        crossing.map(|s| (s * 100.0).round() / 100.0)
    );

    let b = SweepConfig::from_json(
        r#"{
            "family": {"type": "complete_bipartite"},
            "n": [30],
            "k": 2,
            "sigma": ["n", "4*n"],
            "trials": 10000,
            "base_seed": 10
        }"#,
    )
    .unwrap();
    let rb = sweep(&b).map_err(|e| e.to_string())?;
    let (lo, hi) = (rb.points[0].p_hat, rb.points[1].p_hat);
    let b_ok = lo < 0.2 && hi > 0.8;
    let detail = format!("{detail_a}; (b) K30,30: p(30)={lo:.4}, p(120)={hi:.4}");
    if a_ok && b_ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_11() -> Outcome {
    let q = [(3, 5, 10), (3, 4, 6), (4, 6, 26)];
    for (k, g, want) in q {
        if moore_bound(k, g) != want || tree_order(k, g) != want as f64 {
            return Err(format!("Q({k},{g}) = {} / {}, want {want}", moore_bound(k, g), tree_order(k, g)));
        }
    }
    let p = graph::petersen();
    let mut trees = 0;
    for v in 0..p.n() {
        for t in build_proper_trees(&p, 3, v).map_err(|e| e.to_string())? {
            if t.len() != 10 {
                return Err(format!("tree at {v} has {} vertices", t.len()));
            }
            trees += 1;
        }
    }
    if trees == 0 {
        return Err("no trees built on the Petersen graph".into());
    }
    Ok(format!("Q(3,5)=10, Q(3,4)=6, Q(4,6)=26; {trees} Petersen trees, all on 10 vertices"))
}

fn criterion_12() -> Outcome {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs");
    let mut configs: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| format!("{dir}: {e}"))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    configs.sort();
    if configs.is_empty() {
        return Err("no sweep configs found".into());
    }
    for path in &configs {
        let mut cfg = SweepConfig::from_json(&std::fs::read_to_string(path).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        cfg.workers = Some(1);
        let first = records_csv(&sweep(&cfg).map_err(|e| e.to_string())?.records, false);
        cfg.workers = None;
        let second = records_csv(&sweep(&cfg).map_err(|e| e.to_string())?.records, false);
        if first != second {
            return Err(format!("{} produced different records.csv", path.display()));
        }
    }
    Ok(format!("{} configs, byte-identical records.csv across reruns and worker counts", configs.len()))
}

fn main() {
    let mut failed = 0;
    let mut report = |id: u32, name: &str, start: Instant, outcome: Outcome| {
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {id:>2} {name} ({secs:.1}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {id:>2} {name} ({secs:.1}s): {detail}");
            }
        }
    };

    let start = Instant::now();
    let corpus = run_corpus();
    report(1, "solver matches brute force", start, criterion_1(&corpus));
    report(
        2,
        "bad triple on every uncolorable instance",
        start,
        zero_failures("uncolorable", corpus.triple_checked, &corpus.triple_fail),
    );
    report(
        3,
        "2-bad pair on every uncolorable 2-list instance",
        start,
        zero_failures("uncolorable k=2", corpus.pair_checked, &corpus.pair_fail),
    );
    report(
        4,
        "tree-bad tree on every uncolorable instance of girth > 3",
        start,
        zero_failures("uncolorable girth>3", corpus.tree_checked, &corpus.tree_fail),
    );
    let start = Instant::now();
    report(5, "proper triple count bound", start, criterion_5());
    let start = Instant::now();
    report(6, "identical-list clique expectation", start, criterion_6());
    let start = Instant::now();
    report(7, "bad triple probability bound", start, criterion_7());
    let start = Instant::now();
    report(8, "2-bad pair probability bound", start, criterion_8());
    let start = Instant::now();
    report(9, "second moment lower bound", start, criterion_9());
    let start = Instant::now();
    report(10, "threshold trends", start, criterion_10());
    let start = Instant::now();
    report(11, "tree orders and Petersen trees", start, criterion_11());
    let start = Instant::now();
    report(12, "sweep determinism", start, criterion_12());

    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 12 acceptance criteria passed");
}
