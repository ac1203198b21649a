//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::Command as Proc;
use std::time::{Duration, Instant};

use clap::Parser;
use qci::algebra::{twisted_tensor, twisted_tensor_matches};
use qci::certificates::{build_w, membership_full, membership_two_sided, sigma_power_vanishes, symmetric_sum_vanishes};
use qci::cli::{self, Cli, Report};
use qci::fdalgebra::Dimension;
use qci::towers::{graded_endomorphism_algebra, upper_bound_report, EndKind, Generator};
use qci::{par, Field, Qci, Scalar};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn run_cli(args: &[&str]) -> Report {
    let cli = Cli::try_parse_from(std::iter::once("qci").chain(args.iter().copied())).expect("arguments parse");
    cli::execute(&cli.command).expect("command runs")
}

fn check_passed(r: &Report, id: &str) -> bool {
    r.checks.iter().any(|c| c.id == id && c.passed && c.instances > 0)
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let mut instances = 0;
    let mut failures = 0;
    for (n, a) in [(1, 2), (2, 2), (2, 3), (3, 2), (3, 3), (4, 2)] {
        for field in common::standard_fields(a) {
            let alg = Qci::homogeneous(&field, n, a).unwrap();
            let mut rng = common::rng(1000 + n as u64 * 10 + a as u64);
            let alphas: Vec<Vec<Scalar>> =
                (0..100).map(|_| (0..n).map(|_| field.sample(&mut rng, 3)).collect()).collect();
            let ok = par::map(&alphas, |al| {
                sigma_power_vanishes(&alg, al).unwrap() && (0..n).all(|i| symmetric_sum_vanishes(&alg, al, i).unwrap())
            });
            instances += ok.len();
            failures += ok.iter().filter(|b| !**b).count();
        }
    }
    let t = start.elapsed();
    outcome(failures == 0 && t < Duration::from_secs(60), format!("{instances} tuples, {failures} failures, {t:.2?}"))
}

fn ac2() -> Outcome {
    let f = Field::prime(101).unwrap();
    let mut rng = common::rng(2);
    let mut algs = Vec::new();
    for exps in common::exponent_tuples(256) {
        algs.push(common::random_presentation(&f, &exps, &mut rng));
        let a = exps[0];
        if exps.iter().all(|&e| e == a) && 100 % a == 0 {
            algs.push(Qci::homogeneous(&f, exps.len(), a).unwrap());
        }
    }
    let results = par::map(&algs, |alg| {
        let d = alg.dim();
        let mut bad = 0usize;
        for l in 0..d {
            for r in 0..d {
                if alg.monomial_product(l, r) != common::oracle_monomial_product(alg, l, r) {
                    bad += 1;
                }
            }
        }
        (d * d, bad)
    });
    let pairs: usize = results.iter().map(|r| r.0).sum();
    let bad: usize = results.iter().map(|r| r.1).sum();
    outcome(bad == 0, format!("{} presentations, {pairs} monomial pairs, {bad} mismatches", algs.len()))
}

fn sweep() -> Report {
    run_cli(&["sweep-membership", "--n", "4", "--a", "2", "--field", "p:5", "--trials", "500", "--seed", "3"])
}

fn ac3(r: &Report) -> Outcome {
    let cert = &r.checks[0];
    let ok = check_passed(r, "infinitefieldeven-certificate") && check_passed(r, "infinitefieldeven-distinguished");
    outcome(ok, format!("{} certified of 500, {} disagreements; distinguished tuples in V: {}", cert.instances, cert.failures, r.checks[1].passed))
}

fn ac4() -> Outcome {
    let cases: [(usize, u32, u64); 8] =
        [(2, 2, 5), (2, 3, 7), (2, 4, 5), (2, 5, 11), (2, 6, 7), (2, 7, 29), (2, 8, 17), (4, 2, 5)];
    let mut instances = 0;
    let mut bad = 0;
    for (n, a, p) in cases {
        let f = Field::prime(p).unwrap();
        let alg = Qci::homogeneous(&f, n, a).unwrap();
        let mut rng = common::rng(40 + a as u64);
        let alphas: Vec<Vec<Scalar>> = (0..30).map(|_| common::leading_nonzero_tuple(&f, n, &mut rng)).collect();
        let agree = par::map(&alphas, |al| {
            let w = build_w(&alg, al).unwrap();
            membership_two_sided(&alg, al, &w).unwrap().member == membership_full(&alg, al, &w).unwrap()
        });
        instances += agree.len();
        bad += agree.iter().filter(|b| !**b).count();
    }
    outcome(bad == 0, format!("{instances} instances, {bad} disagreements"))
}

fn ac5() -> Outcome {
    let mut ok = true;
    let mut total = 0;
    for (n, a, p) in [(2, 2, 5), (2, 3, 7), (3, 2, 5)] {
        let field = format!("p:{p}");
        let r = run_cli(&["periodicity", "--n", &n.to_string(), "--a", &a.to_string(), "--field", &field, "--trials", "20", "--seed", "5"]);
        ok &= r.passed;
        total += r.checks[0].instances;
    }
    outcome(ok, format!("{total} (alpha, p) diagrams"))
}

fn ac6() -> Outcome {
    let mut ok = true;
    let mut details = Vec::new();
    for n in [2usize, 4] {
        let start = Instant::now();
        let ns = n.to_string();
        let mut runs = vec![run_cli(&["ghost", "--n", &ns, "--a", "2", "--field", "p:5", "--module", "simple", "--seed", "6"])];
        for seed in 0..5 {
            let s = seed.to_string();
            runs.push(run_cli(&["ghost", "--n", &ns, "--a", "2", "--field", "p:5", "--module", "cyclic", "--seed", &s]));
        }
        for r in &runs {
            ok &= r.passed && r.data["lower_bound"] == serde_json::json!(n + 1);
        }
        let t = start.elapsed();
        ok &= t < Duration::from_secs(300);
        details.push(format!("n={n}: {} modules, {t:.2?}", runs.len()));
    }
    outcome(ok, format!("{}; lower bound n+1", details.join("; ")))
}

fn ac7(r: &Report) -> Outcome {
    let c = r.checks.iter().find(|c| c.id == "factoring-stable-zero").unwrap();
    outcome(c.passed && c.instances == 500, format!("{} tuples, {} disagreements", c.instances, c.failures))
}

fn ac8() -> Outcome {
    let mut steps = 0;
    let mut ok = true;
    for exps in ["2", "2,3", "2,3,2", "2,3,2,3"] {
        for field in ["p:101", "cyclo:6"] {
            let r = run_cli(&["tower", "--exponents", exps, "--field", field, "--seed", "8"]);
            ok &= r.passed;
            steps += r.checks[0].instances;
        }
    }
    outcome(ok, format!("{steps} chain steps"))
}

fn ac9() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for a in [2u32, 3] {
        let f = Field::cyclotomic(a).unwrap();
        let g = Generator::auslander_n1(&f, a).unwrap();
        let end = graded_endomorphism_algebra(g.graded(), EndKind::Full)
            .unwrap()
            .with_idempotents(&g.summand_projections())
            .unwrap();
        let gd = end.algebra.global_dimension(6).unwrap();
        ok &= gd.value == Dimension::Exact(2) && gd.simples_one_dimensional;
        parts.push(format!("a={a}: gldim {}", gd.value));
    }
    let f = Field::cyclotomic(2).unwrap();
    let r = upper_bound_report(&f, 2, 2, 64).unwrap();
    ok &= r.gldim.is_exact() && r.gldim.value() <= 4 && r.simples_one_dimensional;
    parts.push(format!("n=2 graded gldim {}", r.gldim));
    let one = Qci::homogeneous(&f, 1, 2).unwrap();
    let q = f.from_i64(-1);
    let big = Qci::homogeneous_with(&f, 2, 2, q.clone()).unwrap();
    let tw = twisted_tensor(&one, &one, std::slice::from_ref(&q)).unwrap();
    let same = twisted_tensor_matches(&one, &one, &[q], &big) && tw.commutators() == big.commutators();
    ok &= same;
    parts.push(format!("twisted tensor matches: {same}"));
    outcome(ok, parts.join(", "))
}

fn ac10() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_qci");
    let cmds: [&[&str]; 6] = [
        &["verify-lemmas", "--n", "2", "--a", "3", "--trials", "20"],
        &["sweep-membership", "--n", "4", "--a", "2", "--field", "p:5", "--trials", "50"],
        &["ghost", "--n", "2", "--a", "2", "--field", "p:5", "--module", "cyclic"],
        &["upper", "--n", "2", "--a", "2"],
        &["tower", "--exponents", "2,3,2"],
        &["periodicity", "--n", "2", "--a", "2", "--field", "p:5", "--trials", "5", "--format", "csv"],
    ];
    let mut ok = true;
    for args in cmds {
        let out = |threads: &str| {
            Proc::new(bin).args(args).args(["--seed", "17"]).env("RAYON_NUM_THREADS", threads).output().unwrap()
        };
        let (x, y) = (out("1"), out("4"));
        ok &= x.status.success() && x.stdout == y.stdout && !x.stdout.is_empty();
    }
    outcome(ok, format!("{} commands rerun with different thread counts", cmds.len()))
}

fn main() {
    let report = sweep();
    type Criterion<'a> = (&'a str, &'a str, Box<dyn Fn() -> Outcome + 'a>);
    let results: Vec<Criterion> = vec![
        ("AC1", "identity suite", Box::new(ac1)),
        ("AC2", "multiplication oracle", Box::new(ac2)),
        ("AC3", "membership certificate", Box::new(|| ac3(&report))),
        ("AC4", "degree restriction", Box::new(ac4)),
        ("AC5", "periodicity diagrams", Box::new(ac5)),
        ("AC6", "ghost witness", Box::new(ac6)),
        ("AC7", "stable-zero agreement", Box::new(|| ac7(&report))),
        ("AC8", "tower freeness", Box::new(ac8)),
        ("AC9", "upper bound", Box::new(ac9)),
        ("AC10", "determinism", Box::new(ac10)),
    ];
    let mut failed = 0;
    for (id, name, f) in results {
        let o = f();
        let tag = if o.ok { "PASS" } else { "FAIL" };
        println!("{tag} {id} {name}: {}", o.detail);
        failed += usize::from(!o.ok);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
