//! Acceptance suite: nine checks covering accuracy, oracle agreement,
//! relative speed, scaling, the factorization, minimum-norm solutions,
//! hand-worked fixtures, determinism, and the CLI verify contract.
//!
//! Run with `-- --nocapture` to see the per-criterion lines as they pass.

use std::collections::HashMap;
use std::fs;
use std::process::Command;
use std::time::Instant;

use pinv_core::{
    full_rank_cholesky, gram, is_valid_pinv, nullspace_orthogonality, penrose_residuals,
    pinv_geninv, random_rank_deficient, solve_min_norm, uniform_stream, AlgorithmConfig,
    GramSide, Matrix, MatrixFamilySpec, PinvAlgorithm, ToleranceConfig,
};

const BOUND: f64 = 2e-10;
const SIZES: [usize; 4] = [32, 64, 128, 256];
const SEEDS: [u64; 5] = [0, 1, 2, 3, 4];

struct Outcome {
    label: &'static str,
    pass: bool,
    detail: String,
}

fn report(results: &mut Vec<Outcome>, label: &'static str, pass: bool, detail: String) {
    println!(
        "criterion {}: {} ({})",
        results.len() + 1,
        if pass { "pass" } else { "FAIL" },
        detail
    );
    results.push(Outcome {
        label,
        pass,
        detail,
    });
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.total_cmp(b));
    let k = v.len();
    if k % 2 == 1 {
        v[k / 2]
    } else {
        0.5 * (v[k / 2 - 1] + v[k / 2])
    }
}

#[test]
fn acceptance_criteria() {
    let mut results = Vec::new();
    let cfg = AlgorithmConfig::default();

    // Criteria 1-4 share one sweep: every algorithm on every family
    // instance, each run timed once.
    let mut worst_residual = 0.0f64;
    let mut residual_failures = Vec::new();
    let mut oracle_failures = Vec::new();
    let mut worst_oracle = 0.0f64;
    let mut times: HashMap<(PinvAlgorithm, usize), Vec<f64>> = HashMap::new();
    for &n in &SIZES {
        for &seed in &SEEDS {
            let spec = MatrixFamilySpec::benchmark_default(n, seed);
            let (g, _, _) = random_rank_deficient(&spec).unwrap();
            let mut svd_result = None;
            for &alg in PinvAlgorithm::ALL.iter().rev() {
                let t0 = Instant::now();
                let x = match alg.compute(&g, &cfg) {
                    Ok(x) => x,
                    Err(e) => {
                        residual_failures.push(format!("{alg} n={n} seed={seed}: {e}"));
                        continue;
                    }
                };
                times
                    .entry((alg, n))
                    .or_default()
                    .push(t0.elapsed().as_secs_f64());
                let r = penrose_residuals(&g, &x).unwrap();
                worst_residual = worst_residual.max(r.max());
                if !is_valid_pinv(&r, BOUND) {
                    residual_failures.push(format!(
                        "{alg} n={n} seed={seed}: max residual {:e}",
                        r.max()
                    ));
                }
                match (alg, &svd_result) {
                    (PinvAlgorithm::Svd, _) => svd_result = Some(x),
                    (_, Some(oracle)) => {
                        let diff = x.subtract(oracle).unwrap().max_abs();
                        let allowed = 1e-8 * oracle.max_abs().max(1.0);
                        worst_oracle = worst_oracle.max(diff);
                        if diff > allowed {
                            oracle_failures
                                .push(format!("{alg} n={n} seed={seed}: diff {diff:e}"));
                        }
                    }
                    _ => unreachable!("svd runs first"),
                }
            }
        }
    }
    report(
        &mut results,
        "Penrose accuracy at 2e-10 across the family",
        residual_failures.is_empty(),
        if residual_failures.is_empty() {
            format!("worst residual {worst_residual:.2e}")
        } else {
            residual_failures.join("; ")
        },
    );
    report(
        &mut results,
        "agreement with the SVD oracle",
        oracle_failures.is_empty(),
        if oracle_failures.is_empty() {
            format!("worst diff {worst_oracle:.2e}")
        } else {
            oracle_failures.join("; ")
        },
    );

    let med = |alg: PinvAlgorithm, n: usize| {
        times
            .get(&(alg, n))
            .map(|t| median(t.clone()))
            .unwrap_or(f64::INFINITY)
    };
    let geninv_256 = med(PinvAlgorithm::Geninv, 256);
    let mut ordering_detail = format!("geninv {geninv_256:.3}s");
    let mut ordering_ok = true;
    for alg in [
        PinvAlgorithm::Greville,
        PinvAlgorithm::GsoQr,
        PinvAlgorithm::Hyperpower,
        PinvAlgorithm::Svd,
    ] {
        let t = med(alg, 256);
        ordering_detail += &format!(", {alg} {t:.3}s");
        ordering_ok &= geninv_256 < t;
    }
    report(
        &mut results,
        "fastest algorithm at n=256",
        ordering_ok,
        ordering_detail,
    );

    let ratio = geninv_256 / med(PinvAlgorithm::Geninv, 128);
    report(
        &mut results,
        "cubic scaling ratio t(256)/t(128) in [3, 20]",
        (3.0..=20.0).contains(&ratio),
        format!("ratio {ratio:.1}"),
    );

    // Criterion 5: factorization reconstruction, rank recovery, and the
    // hand-worked factor examples.
    let tol_cfg = ToleranceConfig::default();
    let mut chol_failures = Vec::new();
    for &n in &[8usize, 16, 32, 64] {
        for seed in 0..20u64 {
            let spec = MatrixFamilySpec::benchmark_default(n, seed);
            let (g, _, _) = random_rank_deficient(&spec).unwrap();
            let a = gram(&g, GramSide::Left);
            let f = full_rank_cholesky(&a, &tol_cfg).unwrap();
            if f.rank != spec.rank {
                chol_failures.push(format!("n={n} seed={seed}: rank {} != {}", f.rank, spec.rank));
            }
            let resid = gram(&f.l.transpose(), GramSide::Left)
                .subtract(&a)
                .unwrap()
                .max_abs();
            if resid > 1e-10 * a.max_abs().max(1.0) {
                chol_failures.push(format!("n={n} seed={seed}: reconstruction {resid:e}"));
            }
        }
    }
    {
        let f = full_rank_cholesky(&Matrix::from_rows(&[&[1.0, 1.0], &[1.0, 1.0]]), &tol_cfg)
            .unwrap();
        let want = Matrix::from_rows(&[&[1.0], &[1.0]]);
        if f.rank != 1 || f.l.subtract(&want).unwrap().max_abs() > 1e-15 {
            chol_failures.push(format!("ones 2x2: rank {} L {:?}", f.rank, f.l));
        }
        let f = full_rank_cholesky(&Matrix::from_rows(&[&[4.0, 2.0], &[2.0, 2.0]]), &tol_cfg)
            .unwrap();
        let want = Matrix::from_rows(&[&[2.0, 0.0], &[1.0, 1.0]]);
        if f.rank != 2 || f.l.subtract(&want).unwrap().max_abs() > 1e-15 {
            chol_failures.push(format!("[[4,2],[2,2]]: rank {} L {:?}", f.rank, f.l));
        }
        let f = full_rank_cholesky(&Matrix::zeros(3, 3), &tol_cfg).unwrap();
        if f.rank != 0 {
            chol_failures.push(format!("zero 3x3: rank {}", f.rank));
        }
    }
    report(
        &mut results,
        "factorization reconstruction and rank recovery",
        chol_failures.is_empty(),
        if chol_failures.is_empty() {
            "80 random instances + 3 hand-worked factors".into()
        } else {
            chol_failures.join("; ")
        },
    );

    // Criterion 6: minimum-norm solutions are orthogonal to the null space.
    let mut worst_ortho = 0.0f64;
    for seed in 0..10u64 {
        let spec = MatrixFamilySpec::benchmark_default(32, seed);
        let (g, _, c) = random_rank_deficient(&spec).unwrap();
        let f = Matrix::from_vec(
            g.rows(),
            1,
            uniform_stream(9100 + seed).take(g.rows()).collect(),
        );
        let w = solve_min_norm(&g, &f, &tol_cfg).unwrap();
        // null(G) = null(C) because G = B C with B of full column rank;
        // project random vectors onto it with I - C+ C.
        let c_pinv = pinv_geninv(&c, &tol_cfg).unwrap();
        let proj = Matrix::identity(g.cols())
            .subtract(&c_pinv.matmul(&c).unwrap())
            .unwrap();
        for k in 0..5u64 {
            let v = Matrix::from_vec(
                g.cols(),
                1,
                uniform_stream(9700 + 10 * seed + k)
                    .take(g.cols())
                    .collect(),
            );
            let z = proj.matmul(&v).unwrap();
            let ortho = nullspace_orthogonality(&w, &z).unwrap();
            worst_ortho = worst_ortho.max(ortho);
        }
    }
    report(
        &mut results,
        "minimum-norm solutions orthogonal to the null space",
        worst_ortho <= 1e-8,
        format!("worst |cos| {worst_ortho:.2e}"),
    );

    // Criterion 7: hand-worked pseudoinverse fixtures for all algorithms.
    let fixtures: Vec<(&str, Matrix, Matrix)> = vec![
        ("identity", Matrix::identity(3), Matrix::identity(3)),
        ("zero", Matrix::zeros(3, 2), Matrix::zeros(2, 3)),
        (
            "rank-one",
            Matrix::from_rows(&[&[1.0, 2.0], &[2.0, 4.0]]),
            Matrix::from_rows(&[&[1.0, 2.0], &[2.0, 4.0]]).scale(1.0 / 25.0),
        ),
        (
            "full column rank",
            Matrix::from_rows(&[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]),
            Matrix::from_rows(&[&[2.0, -1.0, 1.0], &[-1.0, 2.0, 1.0]]).scale(1.0 / 3.0),
        ),
        (
            "orthonormal rows",
            Matrix::from_rows(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]),
            Matrix::from_rows(&[&[1.0, 0.0], &[0.0, 1.0], &[0.0, 0.0]]),
        ),
    ];
    let mut fixture_failures = Vec::new();
    for (name, g, want) in &fixtures {
        for &alg in &PinvAlgorithm::ALL {
            let x = alg.compute(g, &cfg).unwrap();
            let diff = x.subtract(want).unwrap().max_abs();
            if diff > 1e-12 {
                fixture_failures.push(format!("{alg} on {name}: diff {diff:e}"));
            }
        }
    }
    report(
        &mut results,
        "hand-worked fixtures for every algorithm",
        fixture_failures.is_empty(),
        if fixture_failures.is_empty() {
            "5 fixtures x 5 algorithms to 1e-12".into()
        } else {
            fixture_failures.join("; ")
        },
    );

    // Criteria 8 and 9 exercise the CLI binary.
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_pinv"))
            .args(args)
            .current_dir(d)
            .output()
            .expect("binary runs")
    };

    let gen_args = ["gen", "--n", "32", "--seed", "20060524", "--out", "g.txt"];
    run(&gen_args);
    let first = fs::read(d.join("g.txt")).unwrap();
    run(&gen_args);
    let second = fs::read(d.join("g.txt")).unwrap();
    let bench_args = [
        "bench", "--sizes", "24,32", "--seeds", "3", "--reps", "1", "--algorithms",
        "geninv,greville,svd",
    ];
    let strip_times = |raw: &[u8]| {
        String::from_utf8_lossy(raw)
            .lines()
            .map(|l| {
                let mut f: Vec<&str> = l.split(',').collect();
                if f.len() == 12 {
                    f[5] = "-";
                }
                f.join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")
    };
    let bench_a = run(&bench_args);
    let bench_b = run(&bench_args);
    let deterministic = first == second
        && strip_times(&bench_a.stdout) == strip_times(&bench_b.stdout)
        && bench_a.status.code() == Some(0);
    report(
        &mut results,
        "determinism of gen and bench outputs",
        deterministic,
        format!(
            "gen bytes {}, bench rows {}",
            if first == second { "identical" } else { "DIFFER" },
            if strip_times(&bench_a.stdout) == strip_times(&bench_b.stdout) {
                "identical"
            } else {
                "DIFFER"
            }
        ),
    );

    let pinv_out = run(&["pinv", "g.txt", "--out", "x.txt"]);
    let ok_code = run(&["verify", "g.txt", "x.txt"]).status.code();
    let text = fs::read_to_string(d.join("x.txt")).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let mut fields: Vec<String> = lines[1].split(' ').map(String::from).collect();
    let v: f64 = fields[0].parse().unwrap();
    fields[0] = format!("{:e}", v + 1e-6);
    lines[1] = fields.join(" ");
    fs::write(d.join("x.txt"), lines.join("\n") + "\n").unwrap();
    let bad_code = run(&["verify", "g.txt", "x.txt"]).status.code();
    report(
        &mut results,
        "verify exit codes on exact and perturbed candidates",
        pinv_out.status.success() && ok_code == Some(0) && bad_code == Some(1),
        format!("exact -> {ok_code:?}, perturbed -> {bad_code:?}"),
    );

    let failed: Vec<&Outcome> = results.iter().filter(|o| !o.pass).collect();
    assert!(
        failed.is_empty(),
        "{} criteria failed: {}",
        failed.len(),
        failed
            .iter()
            .map(|o| format!("{}: {}", o.label, o.detail))
            .collect::<Vec<_>>()
            .join(" | ")
    );
}
