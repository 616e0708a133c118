//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p tilegeo --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tilegeo::gadgets::{builtin_catalog, check_contract};
use tilegeo::gg::{
    generate, generate_sized, gg_solve, normalize, write_instance, GeoInstance, GeoPosition, GgLimits, Vertex,
};
use tilegeo::layout::AREA_CONSTANT;
use tilegeo::reduce::{add_isolated_tokens, reduce, verify_equivalence, EquivalenceReport, VerifyLimits};
use tilegeo::tt::{parse_board, solve, solve_calls_on_this_thread, write_board, Board, SolveLimits, SolveResult};
use tilegeo::Player;

use common::{gg_naive_winner, tt_naive_winner};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn random_board(rng: &mut ChaCha8Rng) -> Board {
    let w = rng.gen_range(1..=4);
    let h = rng.gen_range(1..=4);
    let mut cells = vec![0u8; w * h];
    let colored = rng.gen_range(0..=8usize.min(w * h - 1));
    let mut order: Vec<usize> = (0..w * h).collect();
    for i in 0..order.len() {
        let j = rng.gen_range(i..order.len());
        order.swap(i, j);
    }
    for &i in &order[..colored] {
        cells[i] = rng.gen_range(1..=2);
    }
    let free: Vec<usize> = order[colored..].to_vec();
    let ntok = rng.gen_range(1..=free.len().min(2));
    let tokens: Vec<(usize, usize)> = free[..ntok].iter().map(|&i| (i % w, i / w)).collect();
    let turn = rng.gen_range(1..=2u8);
    let mut text = format!("TT v1\nturn {}\n", if turn == 1 { "B" } else { "R" });
    for y in 0..h {
        for x in 0..w {
            let i = y * w + x;
            text.push(match cells[i] {
                1 => 'b',
                2 => 'r',
                _ if tokens.contains(&(x, y)) => '*',
                _ => '.',
            });
        }
        text.push('\n');
    }
    parse_board(&text).unwrap()
}

fn random_instance(rng: &mut ChaCha8Rng) -> GeoInstance {
    let n = rng.gen_range(2..=12);
    let vertices: Vec<Vertex> = (0..n)
        .map(|i| Vertex {
            name: format!("v{i:02}"),
            color: if rng.gen_bool(0.5) { Player::Blue } else { Player::Red },
        })
        .collect();
    let names: Vec<String> = vertices.iter().map(|v| v.name.clone()).collect();
    let p = 2.5 / n as f64;
    let mut arcs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.gen_bool(p.min(1.0)) {
                arcs.push((names[a].as_str(), names[b].as_str()));
            }
        }
    }
    GeoInstance::new(vertices, &arcs, &names[0]).unwrap()
}

fn gg_winner(g: &GeoInstance) -> Option<Player> {
    gg_solve(&GeoPosition::start(g).ok()?, &GgLimits::default())
        .ok()
        .map(|r| r.winner)
}

struct Bounds {
    boards: usize,
    violations: usize,
}

impl Bounds {
    fn record(&mut self, side: usize, token_branching: usize, depth: usize) {
        self.boards += 1;
        if token_branching > 4 * side || depth > side * side {
            self.violations += 1;
        }
    }

    fn record_result(&mut self, board: &Board, r: &SolveResult) {
        self.record(board.side(), r.max_token_branching, r.max_depth);
    }
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let catalog = builtin_catalog();
    let mut passed = 0;
    let mut cases = 0;
    let mut failures = Vec::new();
    for g in &catalog {
        match check_contract(g) {
            Ok(r) => {
                cases += r.cases.len();
                if r.passed() {
                    passed += 1;
                } else {
                    failures.push(format!("{} {:?}", g.kind, g.owner));
                }
            }
            Err(e) => failures.push(format!("{} {:?}: {e}", g.kind, g.owner)),
        }
    }
    let elapsed = t.elapsed();
    outcome(
        failures.is_empty() && elapsed < Duration::from_secs(60),
        format!(
            "{passed}/{} gadgets, {cases} cases, {:.2} s (limit 60 s){}",
            catalog.len(),
            elapsed.as_secs_f64(),
            if failures.is_empty() {
                String::new()
            } else {
                format!("; failing: {}", failures.join(", "))
            }
        ),
    )
}

fn corpus() -> Vec<(String, GeoInstance)> {
    (0..200u64)
        .map(|s| (format!("gen-{s:03}"), generate(8, s).expect("generator succeeds")))
        .collect()
}

fn criterion_2(corpus: &[(String, GeoInstance)]) -> (Outcome, EquivalenceReport) {
    let t = Instant::now();
    let report = verify_equivalence(corpus, &VerifyLimits::default());
    let elapsed = t.elapsed();
    let bad: Vec<String> = report.mismatches().map(|r| r.id.clone()).collect();
    let pass = report.solved() == corpus.len()
        && report.all_match()
        && report.exhausted() == 0
        && corpus.len() >= 200
        && elapsed < Duration::from_secs(600);
    (
        outcome(
            pass,
            format!(
                "{}, {:.1} s (limit 600 s){}",
                report.summary(),
                elapsed.as_secs_f64(),
                if bad.is_empty() {
                    String::new()
                } else {
                    format!("; mismatches: {}", bad.join(", "))
                }
            ),
        ),
        report,
    )
}

fn criterion_3(bounds: &mut Bounds) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut tt_agree = 0;
    let tt_total = 10_000;
    for _ in 0..tt_total {
        let board = random_board(&mut rng);
        let r = solve(&board, &SolveLimits::default());
        bounds.record_result(&board, &r);
        if r.winner == Some(tt_naive_winner(&board)) {
            tt_agree += 1;
        }
    }
    let mut gg_agree = 0;
    let gg_total = 500;
    for _ in 0..gg_total {
        let g = random_instance(&mut rng);
        if gg_winner(&g) == Some(gg_naive_winner(&g)) {
            gg_agree += 1;
        }
    }
    outcome(
        tt_agree == tt_total && gg_agree == gg_total,
        format!("tt {tt_agree}/{tt_total} boards, gg {gg_agree}/{gg_total} instances agree with naive minimax"),
    )
}

fn criterion_4(bounds: &Bounds, report: &EquivalenceReport) -> Outcome {
    let mut b = Bounds {
        boards: bounds.boards,
        violations: bounds.violations,
    };
    for r in &report.rows {
        b.record(r.board_side, r.tt_max_token_branching, r.tt_max_depth);
    }
    outcome(
        b.violations == 0,
        format!("{} boards, {} exceed 4N branching or N^2 depth", b.boards, b.violations),
    )
}

fn criterion_5(corpus: &[(String, GeoInstance)]) -> Outcome {
    let mut extra: Vec<GeoInstance> = (0..200u64).map(|s| generate(12, 1000 + s).unwrap()).collect();
    extra.extend(corpus.iter().map(|(_, g)| g.clone()));
    let (mut same, mut compared, mut changed) = (0, 0, 0);
    for g in &extra {
        let Ok(n) = normalize(g) else { continue };
        let (Some(a), Some(b)) = (gg_winner(g), gg_winner(&n)) else {
            continue;
        };
        compared += 1;
        if n != *g {
            changed += 1;
        }
        if a == b {
            same += 1;
        }
    }
    outcome(
        same == compared && compared > 0,
        format!("{same}/{compared} winners preserved ({changed} instances changed by normalization)"),
    )
}

fn criterion_6(corpus: &[(String, GeoInstance)], report: &EquivalenceReport) -> Outcome {
    let mut same = 0;
    let mut total = 0;
    for ((id, g), row) in corpus.iter().zip(&report.rows) {
        assert_eq!(id, &row.id);
        let Ok(trace) = reduce(g) else { continue };
        let padded = trace.board.padded(1);
        for k in 1..=4 {
            total += 1;
            let Ok(b) = add_isolated_tokens(&padded, k, k as u64) else {
                continue;
            };
            if solve(&b, &SolveLimits::default()).winner == row.tt_winner && row.tt_winner.is_some() {
                same += 1;
            }
        }
    }
    outcome(
        same == total && total == 4 * corpus.len(),
        format!("{same}/{total} padded boards with 1..4 isolated tokens keep their winner"),
    )
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let mut worst_ratio: f64 = 0.0;
    let mut points = Vec::new();
    for n in 4..=24usize {
        let mut time = Duration::ZERO;
        let mut area = 0usize;
        for seed in 0..3u64 {
            let g = generate_sized(n, seed).unwrap();
            let calls = solve_calls_on_this_thread();
            let started = Instant::now();
            let result = reduce(&g);
            time += started.elapsed();
            if solve_calls_on_this_thread() != calls {
                failures.push(format!("n={n} seed={seed}: reduce called the solver"));
            }
            match result {
                Ok(t) => {
                    let v = t.normalized.len();
                    if t.area.area > AREA_CONSTANT * v * v {
                        failures.push(format!("n={n} seed={seed}: area {} > C*{v}^2", t.area.area));
                    }
                    worst_ratio = worst_ratio.max(t.area.area as f64 / (v * v) as f64);
                    area += t.area.area;
                }
                Err(e) => failures.push(format!("n={n} seed={seed}: {e}")),
            }
        }
        points.push((n as f64, time.as_secs_f64() / 3.0, area as f64 / 3.0));
    }
    let slope = |f: &dyn Fn(&(f64, f64, f64)) -> f64| {
        let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
        let ys: Vec<f64> = points.iter().map(|p| f(p).max(1e-9).ln()).collect();
        let (mx, my) = (
            xs.iter().sum::<f64>() / xs.len() as f64,
            ys.iter().sum::<f64>() / ys.len() as f64,
        );
        let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        num / den
    };
    outcome(
        failures.is_empty(),
        format!(
            "|V| 4..24: max area/|V|^2 = {worst_ratio:.1} (C = {AREA_CONSTANT}), log-log slope area {:.2} time {:.2}, no solver calls{}",
            slope(&|p| p.2),
            slope(&|p| p.1),
            if failures.is_empty() { String::new() } else { format!("; {}", failures.join("; ")) }
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut diffs = Vec::new();
    for s in 0..20u64 {
        let a = write_instance(&generate(8, s).unwrap());
        let b = write_instance(&generate(8, s).unwrap());
        if a != b {
            diffs.push(format!("gen seed {s}"));
        }
        let g = generate(8, s).unwrap();
        if write_board(&reduce(&g).unwrap().board) != write_board(&reduce(&g).unwrap().board) {
            diffs.push(format!("reduce seed {s}"));
        }
    }
    let small: Vec<(String, GeoInstance)> = (0..20u64)
        .map(|s| (format!("d{s:02}"), generate(8, s).unwrap()))
        .collect();
    let a = verify_equivalence(&small, &VerifyLimits::default()).to_string();
    let b = verify_equivalence(&small, &VerifyLimits::default()).to_string();
    if a != b {
        diffs.push("verify report".into());
    }
    outcome(
        diffs.is_empty(),
        if diffs.is_empty() {
            "gen, reduce and verify repeat byte for byte over 20 seeds".to_string()
        } else {
            format!("differences: {}", diffs.join(", "))
        },
    )
}

fn main() -> ExitCode {
    let mut all = true;
    let mut emit = |n: usize, name: &str, o: Outcome| {
        all &= o.pass;
        println!("{} {n} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    };
    emit(1, "gadget contracts", criterion_1());
    let corpus = corpus();
    let (c2, report) = criterion_2(&corpus);
    emit(2, "winner equivalence", c2);
    let mut bounds = Bounds {
        boards: 0,
        violations: 0,
    };
    emit(3, "solver oracles", criterion_3(&mut bounds));
    emit(4, "membership bounds", criterion_4(&bounds, &report));
    emit(5, "normalization preserves winners", criterion_5(&corpus));
    emit(6, "isolated tokens", criterion_6(&corpus, &report));
    emit(7, "polynomial size", criterion_7());
    emit(8, "determinism", criterion_8());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
