//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Randomness is seeded, so every run sees the same
//! instances.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use maxplus::mmipp::{default_horizon, simulate};
use maxplus::pdiag::{
    apply_scaling, check_pdiag, diagonalize, pdiag_gamma_lambda, pdiag_power, pdiag_stability,
    pdiagable_eig, pdiagable_gamma_lambda, StabilityKind,
};
use maxplus::roots::{kth_root, root_condition, root_counterexample};
use maxplus::special::{optimal_nodes, separable_factor};
use maxplus::spectral::{
    cyclicity, eigen_residual, eigenbasis, empirical_period, max_cycle_mean, same_span,
};
use maxplus::{conjugate, GenPerm, Matrix, MaxPlus, Tolerance};
use maxplus_oracle as oracle;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: Tolerance = Tolerance::DEFAULT;

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

fn grid(a: &Matrix) -> Vec<Vec<f64>> {
    a.to_f64_rows()
}

fn values(v: &[MaxPlus]) -> Vec<f64> {
    v.iter().map(|x| x.value()).collect()
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, lim: f64) -> Matrix {
    Matrix::from_fn(n, n, |_, _| MaxPlus::new(rng.gen_range(-lim..=lim)))
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize, lim: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-lim..=lim)).collect()
}

/// diag(p) ⊗ pdiag(d) ⊗ diag(p)^{-1}.
fn conjugated_pdiag(d: &[f64], p: Vec<f64>) -> Matrix {
    conjugate(&Matrix::pdiag(d), &GenPerm::diagonal(p).unwrap()).unwrap()
}

fn random_pdiagable(rng: &mut ChaCha8Rng, n: usize) -> (Matrix, Vec<f64>) {
    let d = random_vec(rng, n, 5.0);
    let p = random_vec(rng, n, 10.0);
    (conjugated_pdiag(&d, p), d)
}

fn random_genperm(rng: &mut ChaCha8Rng, n: usize) -> GenPerm {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    GenPerm::new(perm, random_vec(rng, n, 10.0)).unwrap()
}

/// Diagonal with the given sign pattern: 0 → exact zero, 1 → negative,
/// 2 → positive, 3 → anything in [-5, 5].
fn patterned_diagonal(rng: &mut ChaCha8Rng, pattern: &[u8]) -> Vec<f64> {
    pattern
        .iter()
        .map(|&s| match s {
            0 => 0.0,
            1 => -rng.gen_range(0.25..=5.0),
            2 => rng.gen_range(0.25..=5.0),
            _ => rng.gen_range(-5.0..=5.0),
        })
        .collect()
}

fn criterion_1_and_2() -> (Outcome, Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut inputs = Vec::new();
    for t in 0..1000 {
        let n = 2 + t % 6;
        if t % 2 == 0 {
            inputs.push(random_pdiagable(&mut rng, n).0);
        } else {
            inputs.push(random_matrix(&mut rng, n, 10.0));
        }
    }
    let start = Instant::now();
    let verdicts: Vec<bool> = inputs.iter().map(|a| check_pdiag(a, TOL).unwrap().verdict).collect();
    let elapsed = start.elapsed();
    let mut mismatches = 0;
    for (a, &v) in inputs.iter().zip(&verdicts) {
        if v != oracle::is_pseudo_diagonalizable(&grid(a), 1e-9) {
            mismatches += 1;
        }
    }
    let positives = verdicts.iter().filter(|&&v| v).count();
    let c1 = outcome(
        mismatches == 0 && elapsed < Duration::from_secs(5),
        format!(
            "{} instances ({positives} verdict-true), {mismatches} mismatches vs triple check, {:.3}s",
            inputs.len(),
            elapsed.as_secs_f64()
        ),
    );

    let mut worst = 0.0f64;
    let mut diagonal_errors = 0;
    for (a, _) in inputs.iter().zip(&verdicts).filter(|(_, &v)| v) {
        let cert = diagonalize(a, TOL).unwrap();
        let canon = apply_scaling(a, cert.scaling.as_ref().unwrap()).unwrap();
        let n = a.rows();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    if canon.get(i, i) != a.get(i, i) {
                        diagonal_errors += 1;
                    }
                } else {
                    worst = worst.max(canon.get(i, j).value().abs());
                }
            }
        }
    }
    let c2 = outcome(
        worst <= 1e-9 && diagonal_errors == 0,
        format!(
            "{positives} certificates, max |off-diagonal| = {worst:.1e}, {diagonal_errors} diagonal mismatches"
        ),
    );
    (c1, c2)
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut patterns: Vec<Vec<u8>> = Vec::new();
    for n in 2..=8usize {
        // Uniform patterns, boundary zeros, a single positive, a tie at the
        // top, and free draws.
        for s in 0..=3u8 {
            patterns.push(vec![s; n]);
        }
        let mut mixed = vec![1; n];
        mixed[n - 1] = 0;
        patterns.push(mixed);
        let mut single = vec![1; n];
        single[0] = 2;
        patterns.push(single);
        let mut half = vec![1; n];
        for v in half.iter_mut().skip(n / 2) {
            *v = 2;
        }
        patterns.push(half);
        patterns.push((0..n).map(|i| (i % 3) as u8).collect());
    }
    let mut cases = Vec::new();
    for pattern in &patterns {
        for k in 2..=12 {
            let mut d = patterned_diagonal(&mut rng, pattern);
            if pattern.iter().all(|&s| s == 2) && k % 3 == 0 {
                // Ties at the maximum.
                let top = d.iter().copied().fold(f64::MIN, f64::max);
                d[0] = top;
            }
            cases.push((d, k));
        }
    }
    let start = Instant::now();
    let closed: Vec<Matrix> = cases.iter().map(|(d, k)| pdiag_power(d, *k).unwrap()).collect();
    let elapsed = start.elapsed();
    let mut worst = 0.0f64;
    let mut parity_cases = 0;
    for ((d, k), c) in cases.iter().zip(&closed) {
        if d.len() == 2 && d.iter().all(|&x| x < 0.0) {
            parity_cases += 1;
        }
        let iterated = oracle::power(&grid(&Matrix::pdiag(d)), *k);
        worst = worst.max(oracle::max_diff(&grid(c), &iterated));
    }
    outcome(
        worst <= 1e-9 && cases.len() >= 500 && parity_cases > 0 && elapsed < Duration::from_secs(5),
        format!(
            "{} instances ({parity_cases} on the 2x2 negative parity branch), max diff {worst:.1e}, {:.3}s",
            cases.len(),
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = Vec::new();
    let mut worst_residual = 0.0f64;
    let mut pdiagable_checked = 0;
    for t in 0..600 {
        let n = 1 + t % 6;
        let a = if t % 2 == 0 || n < 2 {
            random_matrix(&mut rng, n, 10.0)
        } else {
            random_pdiagable(&mut rng, n).0
        };
        let e = eigenbasis(&a, TOL).unwrap();
        for x in &e.eigenbasis {
            worst_residual = worst_residual.max(eigen_residual(&a, x, e.lambda).unwrap());
        }
        let brute = oracle::max_cycle_mean(&grid(&a));
        if (brute - e.lambda.value()).abs() > 1e-9 {
            failures.push(format!("lambda mismatch at instance {t}"));
        }
        if n >= 2 && check_pdiag(&a, TOL).unwrap().verdict {
            pdiagable_checked += 1;
            let fast = pdiagable_eig(&a, TOL).unwrap();
            if !TOL.eq(fast.lambda, e.lambda)
                || fast.dimension() != e.dimension()
                || !same_span(&fast.eigenbasis, &e.eigenbasis, TOL)
            {
                failures.push(format!("shortcut disagrees at instance {t}"));
            }
        }
    }
    outcome(
        failures.is_empty() && worst_residual <= 1e-9,
        format!(
            "600 instances ({pdiagable_checked} pseudo-diagonalizable), max residual {worst_residual:.1e}, {} failures{}",
            failures.len(),
            failures.first().map(|f| format!(": {f}")).unwrap_or_default()
        ),
    )
}

/// The n-term closure of A − λ(A), computed by the oracle.
fn gamma_reference(a: &Matrix) -> Vec<Vec<f64>> {
    let g = grid(a);
    oracle::closure(&oracle::shift(&g, -oracle::max_cycle_mean(&g)))
}

fn criterion_5() -> (Outcome, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut two_step, mut zero, mut positive, mut nonpositive) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut counts = [0usize; 4];
    let (mut literal_fail, mut literal_fail_outside, mut below) = (0, 0, 0);
    while counts.iter().any(|&c| c < 200) {
        let n = rng.gen_range(2..=7);
        // D_λ ⊕ D_λ² on any pseudo-diagonal matrix.
        let d = random_vec(&mut rng, n, 5.0);
        let reference = gamma_reference(&Matrix::pdiag(&d));
        two_step = two_step.max(oracle::max_diff(&grid(&pdiag_gamma_lambda(&d).unwrap()), &reference));
        counts[0] += 1;

        // Γ = 0 for a nonpositive diagonal.
        let neg: Vec<f64> = d.iter().map(|x| -x.abs()).collect();
        let zeros = vec![vec![0.0; n]; n];
        let fast = grid(&pdiag_gamma_lambda(&neg).unwrap());
        zero = zero
            .max(oracle::max_diff(&fast, &zeros))
            .max(oracle::max_diff(&gamma_reference(&Matrix::pdiag(&neg)), &zeros));
        counts[1] += 1;

        // Positive and nonpositive diagonals on conjugated instances.
        let (a, d) = random_pdiagable(&mut rng, n);
        let reference = gamma_reference(&a);
        let fast = grid(&pdiagable_gamma_lambda(&a, TOL).unwrap());
        let top = d.iter().copied().fold(f64::MIN, f64::max);
        if top > 0.0 {
            positive = positive.max(oracle::max_diff(&fast, &reference));
            counts[2] += 1;
            let literal = oracle::shift(&grid(&a), -top);
            let holds = oracle::max_diff(&literal, &reference) <= 1e-9;
            let has_low = d.iter().any(|&x| x < -top);
            below += usize::from(has_low);
            if !holds {
                literal_fail += 1;
                literal_fail_outside += usize::from(!has_low);
            }
        } else {
            let expected = Matrix::identity(n).oplus(&a).unwrap();
            nonpositive = nonpositive
                .max(oracle::max_diff(&fast, &reference))
                .max(oracle::max_diff(&grid(&expected), &reference));
            counts[3] += 1;
        }
    }
    let pass = [two_step, zero, positive, nonpositive].iter().all(|&e| e <= 1e-9);
    let note = format!(
        "literal Γ(A_λ) = A_λ fails on {literal_fail} of {} positive-diagonal instances; all {} instances with some a_ii < -λ fail it, {literal_fail_outside} others do",
        counts[2], below
    );
    (
        outcome(
            pass,
            format!(
                "instances {:?}; max diff: D_λ ⊕ D_λ² {two_step:.1e}, zero closure {zero:.1e}, positive-diagonal shortcut {positive:.1e}, I ⊕ A {nonpositive:.1e}",
                counts
            ),
        ),
        note,
    )
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut agree, mut disagree, mut not_found, mut longest) = (0, 0, 0, 0);
    for t in 0..300 {
        let n = 1 + t % 5;
        let a = Matrix::from_fn(n, n, |_, _| MaxPlus::new(f64::from(rng.gen_range(-5..=5))));
        match empirical_period(&a, 60, TOL).unwrap() {
            Some(p) if p.period == cyclicity(&a, TOL).unwrap() => {
                agree += 1;
                longest = longest.max(p.transient);
            }
            Some(_) => disagree += 1,
            None => not_found += 1,
        }
    }
    outcome(
        disagree == 0 && not_found == 0,
        format!(
            "300 integer matrices up to 5x5: {agree} agree, {disagree} disagree, {not_found} beyond horizon 60; longest transient {longest}"
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut matrices = Vec::new();
    while matrices.len() < 240 {
        let n = rng.gen_range(1..=6);
        if matrices.len() % 2 == 0 {
            // Separable plus a raised diagonal.
            let (u, v) = (random_vec(&mut rng, n, 8.0), random_vec(&mut rng, n, 8.0));
            let c: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..=5.0)).collect();
            matrices.push(Matrix::from_fn(n, n, |i, j| {
                MaxPlus::new(u[i] + v[j] + if i == j { c[i] } else { 0.0 })
            }));
        } else {
            let b = random_matrix(&mut rng, n, 4.0);
            let sq = b.otimes(&b).unwrap();
            if root_condition(&sq, TOL).unwrap().holds {
                matrices.push(sq);
            }
        }
    }
    let mut worst = 0.0f64;
    for a in &matrices {
        for k in 2..=4 {
            let b = kth_root(a, k, TOL).unwrap();
            worst = worst.max(oracle::max_diff(&oracle::power(&grid(&b), k), &grid(a)));
        }
    }
    let c = root_counterexample(2, &[0.0, 1.0, 2.0], TOL).unwrap();
    let expected = Matrix::from_rows(&[[0.0, 1.0, 2.0], [1.0, 2.0, 2.0], [2.0, 2.0, 4.0]]).unwrap();
    let squared = Matrix::pdiag(&[0.0, 1.0, 2.0]).pow(2).unwrap();
    let witness = c.report.witness;
    let witness_ok = witness.is_some_and(|w| w.lhs < w.rhs);
    let pass = worst <= 1e-9 && c.matrix == expected && !c.report.holds && witness_ok && squared == expected;
    outcome(
        pass,
        format!(
            "{} matrices x k in 2..=4, max diff {worst:.1e}; counterexample D matches, condition fails at {}, pdiag(0,1,2)^2 = D: {}",
            matrices.len(),
            witness.map_or_else(|| "no witness".to_string(), |w| w.to_string()),
            squared == expected
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();
    let mut with_nodes = 0;
    let mut separable_count = 0;
    for t in 0..300 {
        let n = rng.gen_range(2..=6);
        let a = match t % 3 {
            0 => {
                let (u, v) = (random_vec(&mut rng, n, 8.0), random_vec(&mut rng, n, 8.0));
                Matrix::from_fn(n, n, |i, j| MaxPlus::new(u[i] + v[j]))
            }
            1 => {
                // One nonnegative diagonal entry, the rest nonpositive.
                let mut d: Vec<f64> = (0..n).map(|_| -rng.gen_range(0.0..=5.0)).collect();
                d[rng.gen_range(0..n)] = rng.gen_range(0.0..=5.0);
                conjugated_pdiag(&d, random_vec(&mut rng, n, 10.0))
            }
            _ => random_matrix(&mut rng, n, 10.0),
        };
        let p = random_genperm(&mut rng, n);
        let pi = p.perm().to_vec();

        // Optimal nodes of P⁻¹AP are π(K(A)).
        let nodes = optimal_nodes(&a, TOL).unwrap();
        with_nodes += usize::from(!nodes.is_empty());
        let b = conjugate(&a, &p.inverse()).unwrap();
        let mut mapped: Vec<usize> = nodes.iter().map(|&k| pi[k]).collect();
        mapped.sort_unstable();
        if optimal_nodes(&b, TOL).unwrap() != mapped {
            failures.push(format!("optimal nodes at {t}"));
        }

        // Separability under PAP⁻¹.
        let c = conjugate(&a, &p).unwrap();
        let sep = separable_factor(&a, TOL).unwrap().is_some();
        separable_count += usize::from(sep);
        if sep != separable_factor(&c, TOL).unwrap().is_some() {
            failures.push(format!("separability at {t}"));
        }

        // λ and eigenvectors.
        let la = max_cycle_mean(&a).unwrap();
        if !TOL.eq(la, max_cycle_mean(&c).unwrap()) {
            failures.push(format!("lambda at {t}"));
        }
        for x in &eigenbasis(&a, TOL).unwrap().eigenbasis {
            let px = p.apply(x).unwrap();
            if !oracle::is_eigenvector(&grid(&c), &values(&px), la.value(), 1e-9) {
                failures.push(format!("eigenvector at {t}"));
            }
        }
    }
    outcome(
        failures.is_empty() && with_nodes > 0 && separable_count > 0,
        format!(
            "300 (A, P) pairs ({with_nodes} optimal-node, {separable_count} separable), {} failures{}",
            failures.len(),
            failures.first().map(|f| format!(": {f}")).unwrap_or_default()
        ),
    )
}

fn criterion_9() -> (Outcome, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let d = Matrix::pdiag(&[-2.0, -1.0]);
    let osc = simulate(&d, &[MaxPlus::new(0.0), MaxPlus::new(5.0)], 50, TOL).unwrap();
    let never = osc.steady_index.is_none();

    let mut equal_ok = true;
    for _ in 0..20 {
        let v = MaxPlus::new(rng.gen_range(-10.0..=10.0));
        let trace = simulate(&d, &[v, v], 10, TOL).unwrap();
        equal_ok &= trace.steady_index == Some(0);
    }

    let integer = strongly_stable_runs(&mut rng, |rng| f64::from(rng.gen_range(-5..=5)));
    let continuous = strongly_stable_runs(&mut rng, |rng| rng.gen_range(-5.0..=5.0));
    let note = format!(
        "continuous diagonals in [-5,5]: {}/{} starts steady within max(2n², 64); the rest within {} steps (near-tied maxima lengthen the transient)",
        continuous.reached, continuous.starts, continuous.longest
    );
    (
        outcome(
            never && equal_ok && integer.reached == integer.starts,
            format!(
                "(0,5) never steady in 50 steps: {never}; x1 = x2 steady at step 0: {equal_ok}; strongly stable integer diagonals: {}/{} starts over 100 matrices steady within max(2n², 64)",
                integer.reached, integer.starts
            ),
        ),
        note,
    )
}

struct StabilityRuns {
    starts: usize,
    reached: usize,
    /// Largest steady index seen, allowing a much longer horizon.
    longest: usize,
}

fn strongly_stable_runs(
    rng: &mut ChaCha8Rng,
    mut entry: impl FnMut(&mut ChaCha8Rng) -> f64,
) -> StabilityRuns {
    let mut runs = StabilityRuns {
        starts: 0,
        reached: 0,
        longest: 0,
    };
    let mut instances = 0;
    while instances < 100 {
        let n = rng.gen_range(2..=6);
        let diag: Vec<f64> = (0..n).map(|_| entry(rng)).collect();
        if pdiag_stability(&diag).unwrap().kind != StabilityKind::StronglyStable {
            continue;
        }
        instances += 1;
        let a = Matrix::pdiag(&diag);
        for _ in 0..20 {
            let x: Vec<MaxPlus> = random_vec(rng, n, 10.0).into_iter().map(MaxPlus::new).collect();
            runs.starts += 1;
            if simulate(&a, &x, default_horizon(n), TOL).unwrap().reached_eigenvector() {
                runs.reached += 1;
            }
            let long = simulate(&a, &x, 20_000, TOL).unwrap();
            runs.longest = runs.longest.max(long.steady_index.unwrap_or(usize::MAX));
        }
    }
    runs
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

fn run_cli(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_maxplus"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn criterion_10() -> Outcome {
    let example = data("data/example.txt");
    let pdiag012 = data("data/pdiag012.txt");
    let root2 = data("data/root2.txt");
    let cases: [(&str, Vec<&str>); 3] = [
        ("power.txt", vec!["power", "--k", "2", pdiag012.to_str().unwrap()]),
        ("roots.txt", vec!["roots", "--k", "2", root2.to_str().unwrap()]),
        (
            "simulate.txt",
            vec!["simulate", "--steps", "10", "--x0", "0 0 0", example.to_str().unwrap()],
        ),
    ];
    let mut problems = Vec::new();
    for (golden, args) in &cases {
        let (first, code) = run_cli(args);
        let (second, _) = run_cli(args);
        let expected = std::fs::read(data(&format!("golden/{golden}"))).unwrap_or_default();
        if code != 0 {
            problems.push(format!("{golden}: exit {code}"));
        }
        if first != second {
            problems.push(format!("{golden}: runs differ"));
        }
        if first != expected {
            problems.push(format!("{golden}: differs from golden file"));
        }
    }
    let (power, _) = run_cli(&cases[0].1);
    let (roots, _) = run_cli(&cases[1].1);
    let (sim, _) = run_cli(&cases[2].1);
    let power = String::from_utf8_lossy(&power);
    let roots = String::from_utf8_lossy(&roots);
    let sim = String::from_utf8_lossy(&sim);
    if !(power.contains("  0 1 2\n  1 2 2\n  2 2 4\n") && power.contains("match: true")) {
        problems.push("power content".into());
    }
    if !(roots.contains("root:\n  1 0\n  0 1\n") && roots.contains("verified: true")) {
        problems.push("roots content".into());
    }
    if !sim.starts_with("# lambda=5 steady_index=2\n") {
        problems.push("simulate content".into());
    }
    outcome(
        problems.is_empty(),
        if problems.is_empty() {
            "power, roots and simulate reports byte-identical across runs and to golden files".to_string()
        } else {
            problems.join("; ")
        },
    )
}

fn main() {
    let (c1, c2) = criterion_1_and_2();
    let (c5, note5) = criterion_5();
    let (c9, note9) = criterion_9();
    let results = [
        ("1", "verifier soundness/completeness", c1),
        ("2", "constructive canonical form", c2),
        ("3", "closed-form powers", criterion_3()),
        ("4", "spectral correctness", criterion_4()),
        ("5", "closure short-circuits", c5),
        ("6", "cyclicity vs empirical period", criterion_6()),
        ("7", "roots", criterion_7()),
        ("8", "similarity invariance", criterion_8()),
        ("9", "stability", c9),
        ("10", "CLI golden reports", criterion_10()),
    ];
    let mut failed = 0;
    for (id, name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} [{tag}] {name}: {}", o.detail);
        failed += usize::from(!o.pass);
    }
    println!("note (criterion 5): {note5}");
    println!("note (criterion 9): {note9}");
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
