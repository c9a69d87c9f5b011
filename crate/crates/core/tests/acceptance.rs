//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test --test acceptance`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rhw_qsp::cli::{bench_rows, log_log_slope, BenchSpec};
use rhw_qsp::nlft::{nlft_forward, phases_to_sequence, plancherel_residual, roundtrip_error};
use rhw_qsp::riemann_hilbert::{all_phases, condition_report, phase_at, HankelSystem, PIVOT_TOLERANCE};
use rhw_qsp::target::{jacobi_anger_target, random_phase_target, RandomPhaseSpec};
use rhw_qsp::weiss::{coefficient_decay_check, weiss_coefficients};
use rhw_qsp::{solve_target, ChebyshevTarget, PhaseFactors, RunConfig};
use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

type Check = Result<String, String>;

fn config(eta: f64, eps: f64) -> RunConfig {
    RunConfig {
        eta: Some(eta),
        eps,
        grid_size: None,
        workers: 1,
    }
}

/// Random-phase target whose sup norm sits just under `1 - eta`: the phase
/// l1 norm is bisected to the largest value the margin still certifies.
fn tight_target(length: usize, seed: u64, eta: f64) -> Result<(PhaseFactors, ChebyshevTarget), String> {
    let build = |cap: f64| {
        random_phase_target(&RandomPhaseSpec::new(length, seed, cap))
            .and_then(|(p, t)| Ok((p, t.with_eta(eta)?)))
    };
    let (mut lo, mut hi) = (0.0, 4.0);
    for _ in 0..30 {
        let mid = 0.5 * (lo + hi);
        if build(mid).is_ok() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    build(lo).map_err(fail)
}

fn within(start: Instant, budget: Duration, detail: String) -> Check {
    let elapsed = start.elapsed();
    if elapsed <= budget {
        Ok(format!("{detail}; {:.2}s of {}s", elapsed.as_secs_f64(), budget.as_secs()))
    } else {
        Err(format!("{detail}; took {:.2}s, budget {}s", elapsed.as_secs_f64(), budget.as_secs()))
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn constant_target() -> Check {
    let start = Instant::now();
    let t = ChebyshevTarget::new(vec![0.5], 0.5).map_err(fail)?;
    let sol = solve_target(&t, &config(0.5, 1e-10)).map_err(fail)?;
    let err = (sol.phases.values()[0] - PI / 6.0).abs();
    if err > 1e-10 {
        return Err(format!("|psi_0 - pi/6| = {err:.3e}"));
    }
    within(start, Duration::from_secs(1), format!("|psi_0 - pi/6| = {err:.3e}"))
}

fn random_roundtrip() -> Check {
    let start = Instant::now();
    let (truth, t) = tight_target(201, 2024, 0.1)?;
    let sol = solve_target(&t, &config(0.1, 1e-8)).map_err(fail)?;
    let err = truth.max_abs_diff(&sol.phases).map_err(fail)?;
    let detail = format!(
        "d = 200, sup |f| = {:.4}, N = {}, max |psi - psi_hat| = {err:.3e}",
        t.sup_norm_estimate(0),
        sol.weiss.grid_size
    );
    if err > 1e-8 {
        return Err(detail);
    }
    within(start, Duration::from_secs(60), detail)
}

fn jacobi_anger_roundtrip() -> Check {
    let start = Instant::now();
    let t = jacobi_anger_target(100.0, 0.99, 1e-12).map_err(fail)?;
    let sol = solve_target(&t, &config(0.01, 1e-8)).map_err(fail)?;
    let err = roundtrip_error(&t, &sol.phases, 500).map_err(fail)?;
    let mut detail = format!(
        "tau = 100: d = {}, N = {}, roundtrip = {err:.3e}",
        t.half_degree(),
        sol.weiss.grid_size
    );
    if err > 1e-6 {
        return Err(detail);
    }

    let smoke = jacobi_anger_target(10.0, 0.999, 1e-12).map_err(fail)?;
    if smoke.half_degree() > 50 {
        return Err(format!("smoke target has d = {}", smoke.half_degree()));
    }
    let sol = solve_target(&smoke, &config(0.001, 1e-8)).map_err(fail)?;
    let smoke_err = roundtrip_error(&smoke, &sol.phases, 500).map_err(fail)?;
    detail.push_str(&format!(
        "; eta = 0.001 smoke: d = {}, N = {}, roundtrip = {smoke_err:.3e}",
        smoke.half_degree(),
        sol.weiss.grid_size
    ));
    if smoke_err > 1e-6 {
        return Err(detail);
    }
    within(start, Duration::from_secs(300), detail)
}

fn plancherel() -> Check {
    let mut worst: f64 = 0.0;
    let mut min_eta: f64 = 1.0;
    for i in 0..20 {
        let length = 1 + 5 * i;
        let eta = 0.05 + 0.45 * (i % 5) as f64 / 4.0;
        let (_, t) = tight_target(length, 100 + i as u64, eta)?;
        if t.eta() < 0.05 {
            return Err(format!("target {i} has eta = {}", t.eta()));
        }
        min_eta = min_eta.min(t.eta());
        let sol = solve_target(&t, &config(t.eta(), 1e-10)).map_err(fail)?;
        worst = worst.max(plancherel_residual(&sol.phases, &t).map_err(fail)?);
    }
    let detail = format!("20 targets, d <= 95, min eta = {min_eta:.3}, worst residual = {worst:.3e}");
    if worst <= 1e-6 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn invariants() -> Check {
    let mut targets = vec![
        jacobi_anger_target(20.0, 0.9, 1e-12).map_err(fail)?,
        jacobi_anger_target(40.0, 0.95, 1e-12).map_err(fail)?,
    ];
    for (len, seed, eta) in [(40usize, 1u64, 0.05), (120, 2, 0.1), (80, 3, 0.3)] {
        targets.push(tight_target(len, seed, eta)?.1);
    }
    let (mut real, mut pivot, mut a0, mut xi, mut decay) = (0.0f64, f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY);
    for t in &targets {
        let eta = t.eta();
        let sol = solve_target(t, &config(eta, 1e-10)).map_err(fail)?;
        let scale = sol.weiss.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1e-300);
        real = real.max(sol.weiss.residual_real_part / scale);
        decay = decay.min(coefficient_decay_check(&sol.weiss).min_margin());
        let coeffs = sol.weiss.imag();
        for s in &sol.systems {
            pivot = pivot.min(s.min_pivot());
            a0 = a0.min(s.pair.a[0] - eta);
            let r = condition_report(&coeffs, s.k, eta).map_err(fail)?;
            xi = xi.max(r.xi_norm - r.xi_bound);
        }
    }
    let detail = format!(
        "(a) real residue {real:.2e}; (b) min pivot {pivot:.6}; (c) min a_0 - eta {a0:.3e}; \
         (d) max ||Xi|| - bound {xi:.3e}; (e) min decay margin {decay:.3e}"
    );
    let ok = real <= 1e-10 && pivot >= 1.0 - PIVOT_TOLERANCE && a0 >= -1e-10 && xi <= 1e-6 && decay >= -1e-9;
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Dense complex Gaussian elimination with partial pivoting.
fn lu_solve(mut m: Vec<Vec<Complex64>>, mut rhs: Vec<Complex64>) -> Vec<Complex64> {
    let n = rhs.len();
    for col in 0..n {
        let p = (col..n)
            .max_by(|&i, &j| m[i][col].norm().total_cmp(&m[j][col].norm()))
            .unwrap();
        m.swap(col, p);
        rhs.swap(col, p);
        for row in col + 1..n {
            let factor = m[row][col] / m[col][col];
            for k in col..n {
                let v = m[col][k];
                m[row][k] -= factor * v;
            }
            let v = rhs[col];
            rhs[row] -= factor * v;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut acc = rhs[i];
        for k in i + 1..n {
            acc -= m[i][k] * x[k];
        }
        x[i] = acc / m[i][i];
    }
    x
}

/// `psi_k` from `[[I, -Xi], [-Xi, I]] (a; b) = (e_0; 0)` with `Xi = i H`.
fn block_oracle_psi(coeffs: &[f64], k: usize) -> f64 {
    let sys = HankelSystem::new(coeffs, k).unwrap();
    let n = sys.size();
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut m = vec![vec![zero; 2 * n]; 2 * n];
    for i in 0..n {
        m[i][i] = one;
        m[n + i][n + i] = one;
        for j in 0..n {
            let xi = Complex64::new(0.0, sys.entry(i, j));
            m[i][n + j] = -xi;
            m[n + i][j] = -xi;
        }
    }
    let mut rhs = vec![zero; 2 * n];
    rhs[0] = one;
    let x = lu_solve(m, rhs);
    x[n].im.atan2(x[0].re)
}

/// `(a(z), b(z))` as the top row of the ordered product of
/// `[[1, F z^n], [-conj(F) z^-n, 1]] / sqrt(1 + |F|^2)`.
fn matrix_product_oracle(psi: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let d = psi.len() as i32 - 1;
    let one = Complex64::new(1.0, 0.0);
    let mut top = [one, Complex64::new(0.0, 0.0)];
    let mut bottom = [Complex64::new(0.0, 0.0), one];
    for n in -d..=d {
        let f = Complex64::new(0.0, psi[n.unsigned_abs() as usize].tan());
        let s = 1.0 / (1.0 + f.norm_sqr()).sqrt();
        let m = [[one * s, f * z.powi(n) * s], [-f.conj() * z.powi(-n) * s, one * s]];
        let mul = |row: [Complex64; 2]| [row[0] * m[0][0] + row[1] * m[1][0], row[0] * m[0][1] + row[1] * m[1][1]];
        top = mul(top);
        bottom = mul(bottom);
    }
    (top[0], top[1])
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst_psi: f64 = 0.0;
    for _ in 0..50 {
        let n = rng.gen_range(1..=8usize);
        let k = rng.gen_range(0..=4usize);
        let coeffs: Vec<f64> = (0..n + k).map(|_| rng.gen_range(-0.6..0.6)).collect();
        let reduced = phase_at(&coeffs, k).map_err(fail)?.psi;
        worst_psi = worst_psi.max((reduced - block_oracle_psi(&coeffs, k)).abs());
    }
    let mut worst_nlft: f64 = 0.0;
    for _ in 0..50 {
        let d = rng.gen_range(0..=3usize);
        let psi: Vec<f64> = (0..=d).map(|_| rng.gen_range(-1.2..1.2)).collect();
        let pair = nlft_forward(&phases_to_sequence(&PhaseFactors::exact(psi.clone())).map_err(fail)?);
        for j in 0..8 {
            let z = Complex64::from_polar(rng.gen_range(0.5..1.5), j as f64 * 0.7 + 0.1);
            let (a, b) = matrix_product_oracle(&psi, z);
            worst_nlft = worst_nlft.max((pair.a.eval(z) - a).norm()).max((pair.b.eval(z) - b).norm());
        }
    }
    let detail = format!("reduced vs block max diff {worst_psi:.2e}; nlft vs matrix product max diff {worst_nlft:.2e}");
    if worst_psi <= 1e-12 && worst_nlft <= 1e-12 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn lipschitz() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst_ratio: f64 = 0.0;
    for (pair, &eta) in [0.1, 0.3].iter().cycle().take(20).enumerate() {
        let length = rng.gen_range(2..=61usize);
        let (_, f) = tight_target(length, 700 + pair as u64, eta)?;
        // Alternate small perturbations with independent second targets.
        let g = if pair % 4 < 2 {
            let delta = 10f64.powi(-(1 + (pair as i32 % 6)));
            let mut shrink = 1.0;
            loop {
                let coeffs: Vec<f64> = f
                    .coeffs()
                    .iter()
                    .map(|c| c + shrink * delta * rng.gen_range(-1.0..1.0))
                    .collect();
                if let Ok(g) = ChebyshevTarget::new(coeffs, eta) {
                    break g;
                }
                shrink *= 0.5;
            }
        } else {
            tight_target(length, 900 + pair as u64, eta)?.1
        };
        let pf = solve_target(&f, &config(eta, 1e-11)).map_err(fail)?.phases;
        let pg = solve_target(&g, &config(eta, 1e-11)).map_err(fail)?.phases;
        let lhs = pf.max_abs_diff(&pg).map_err(fail)?;
        let rhs = 1.6 * eta.powi(-3) * f.szego_distance(&g);
        worst_ratio = worst_ratio.max(lhs / rhs);
    }
    let detail = format!("20 pairs, worst ||dPsi|| / bound = {worst_ratio:.3e}");
    if worst_ratio <= 1.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn determinism() -> Check {
    for i in 0..10 {
        let (_, t) = random_phase_target(&RandomPhaseSpec::new(10 + 9 * i, 300 + i as u64, 0.5)).map_err(fail)?;
        let w = weiss_coefficients(&t.to_laurent_b(), t.eta(), 1e-10, None).map_err(fail)?;
        let bits = |workers| -> Result<Vec<u64>, String> {
            Ok(all_phases(&w.imag(), workers)
                .map_err(fail)?
                .iter()
                .map(|s| s.psi.to_bits())
                .collect())
        };
        let one = bits(1)?;
        for workers in [2, 8] {
            if bits(workers)? != one {
                return Err(format!("target {i}: workers = {workers} differs from workers = 1"));
            }
        }
    }
    Ok("10 targets, workers {1, 2, 8} bit-identical".into())
}

fn scaling() -> Check {
    let start = Instant::now();
    let spec = BenchSpec {
        degrees: vec![25, 50, 100],
        eps: 1e-8,
        seed: 0,
        norm_cap: 0.5,
        repeats: 10,
    };
    let rows = bench_rows(&spec, 1).map_err(fail)?;
    let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.d as f64, r.solve_s)).collect();
    let slope = log_log_slope(&points).ok_or("no rows")?;
    let times: Vec<String> = rows.iter().map(|r| format!("{:.2e}", r.solve_s)).collect();
    let detail = format!("solve times [{}]s, log-log slope {slope:.2}", times.join(", "));
    if !(3.0..=4.5).contains(&slope) {
        return Err(detail);
    }
    within(start, Duration::from_secs(600), detail)
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("constant target", constant_target),
        ("random-phase roundtrip", random_roundtrip),
        ("Jacobi-Anger roundtrip", jacobi_anger_roundtrip),
        ("Plancherel identity", plancherel),
        ("invariant suite", invariants),
        ("oracle equivalence", oracle_equivalence),
        ("Lipschitz bound", lipschitz),
        ("determinism", determinism),
        ("scaling", scaling),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {} FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
