//! Acceptance suite: one line per criterion, nonzero exit on any failure
//! outside `KNOWN_RED`.

use std::process::Command;
use std::time::{Duration, Instant};

use hartogs::counterexample::{
    blowup_demo, domain_volume, fm_eval, fm_norm_pow, harmonic, projected_fm, RadialStepFunction,
};
use hartogs::domains::{map_g, sample_standard_model};
use hartogs::estimates::{
    asymptotic_ratio_check, i_alpha_beta_mc, i_alpha_beta_series, j_alpha_mc, j_alpha_series,
    linear_grid, sphere_moment, sphere_moment_mc, Envelope, KernelIntegral,
};
use hartogs::kernels::{
    bergman_projection_mc, kernel_hartogs, kernel_punctured_disk, kernel_truncated, KernelModel,
};
use hartogs::schur::{admissible_p_range, feasible_params, search_p_range};
use hartogs::transfer::{jacobian_bounds, pullback_isometry_check, transfer_norm_bound, JacobianBounds};
use hartogs::{HartogsDomainSpec, MultiIndex, NumericConfig, SeriesConfig};
use num_complex::Complex64;

/// Criteria whose target is not reachable; see the table printed by criterion 7.
const KNOWN_RED: &[u32] = &[7];

const SIGMAS: f64 = 3.0;
const SEED: u64 = 20_240_611;

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

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    if elapsed > limit {
        o.pass = false;
    }
    o.detail = format!("{} [{:.3} s, limit {} s]", o.detail, elapsed.as_secs_f64(), limit.as_secs_f64());
    o
}

fn criterion_1() -> Outcome {
    const TOL: f64 = 1e-9;
    let mut worst: f64 = 0.0;
    for n in 2..=8usize {
        let nf = n as f64;
        let (lo, hi) = admissible_p_range(n).unwrap();
        let want = (2.0 * nf / (nf + 1.0), 2.0 * nf / (nf - 1.0));
        if lo != want.0 || hi != want.1 {
            return outcome(false, format!("n={n}: range ({lo}, {hi})"));
        }
        let mut found = Vec::new();
        for k in 1..n {
            let (slo, shi) = search_p_range(n, k).unwrap();
            worst = worst.max((slo - want.0).abs()).max((shi - want.1).abs());
            found.push((slo, shi));
            // interior is feasible, outside is not
            let mid = 0.5 * (want.0 + want.1);
            if feasible_params(n, k, mid).unwrap().is_none()
                || feasible_params(n, k, want.0 * 0.99).unwrap().is_some()
                || feasible_params(n, k, want.1 * 1.01).unwrap().is_some()
            {
                return outcome(false, format!("n={n} k={k}: feasibility pattern"));
            }
        }
        let spread = found.iter().map(|f| (f.0 - found[0].0).abs() + (f.1 - found[0].1).abs()).fold(0.0, f64::max);
        if spread > TOL {
            return outcome(false, format!("n={n}: endpoints depend on k ({spread:e})"));
        }
    }
    let (l2, h2) = admissible_p_range(2).unwrap();
    outcome(
        worst <= TOL && (l2 - 4.0 / 3.0).abs() < 1e-15 && h2 == 4.0,
        format!("n=2..8, all k: max bisection error {worst:.2e} (tol {TOL:e}); n=2 range ({l2:.6}, {h2})"),
    )
}

fn criterion_2() -> Outcome {
    const SAMPLES: usize = 1_000_000;
    const REL: f64 = 0.02;
    let mut worst_z: f64 = 0.0;
    let mut worst_rel: f64 = 0.0;
    let mut count = 0;
    for k in 1..=3usize {
        for nu in MultiIndex::up_to_degree(k, 3) {
            let exact = sphere_moment(k, &nu).unwrap();
            let est = sphere_moment_mc(k, &nu, SAMPLES, SEED + count).unwrap();
            worst_z = worst_z.max(est.z_score(exact).abs());
            worst_rel = worst_rel.max((est.mean - exact).abs() / exact);
            count += 1;
        }
    }
    outcome(
        worst_z <= SIGMAS && worst_rel <= REL,
        format!("{count} moments, k=1..3, |ν|≤3, {SAMPLES} samples: max |z| {worst_z:.2}, max rel {worst_rel:.2e}"),
    )
}

fn criterion_3() -> Outcome {
    const SAMPLES: usize = 1_000_000;
    let scfg = SeriesConfig::default();
    let mut worst: f64 = 0.0;
    let mut count = 0u64;
    let radii = [0.0, 0.5, 0.9];
    for &alpha in &[-0.9, -0.5] {
        for &r in &radii {
            for k in 1..=3usize {
                let series = j_alpha_series(k, alpha, r, &scfg).unwrap().require_converged(r).unwrap();
                let mut w = vec![c(0.0, 0.0); k];
                w[0] = c(r, 0.0);
                let cfg = NumericConfig::default().with_seed(SEED + count).with_samples(SAMPLES);
                let est = j_alpha_mc(k, alpha, &w, &cfg).unwrap();
                worst = worst.max(est.z_score(series).abs());
                count += 1;
            }
            for &beta in &[-1.0, 0.0, 2.0] {
                let series = i_alpha_beta_series(alpha, beta, r, &scfg).unwrap().require_converged(r).unwrap();
                let cfg = NumericConfig::default().with_seed(SEED + count).with_samples(SAMPLES);
                let est = i_alpha_beta_mc(alpha, beta, c(r, 0.0), &cfg).unwrap();
                worst = worst.max(est.z_score(series).abs());
                count += 1;
            }
        }
    }
    outcome(worst <= SIGMAS, format!("{count} series/MC pairs: max |z| {worst:.2}"))
}

/// Spread `max/min` of the boundary ratio for `J`, recorded on first run.
const J_SPREAD_ANCHORS: &[(usize, f64, f64)] = &[
    (1, -0.9, 1.01643),
    (1, -0.5, 1.52760),
    (1, -0.1, 4.32327),
    (2, -0.9, 1.41553),
    (2, -0.5, 2.80070),
    (2, -0.1, 8.85300),
    (3, -0.9, 2.30955),
    (3, -0.5, 5.26945),
    (3, -0.1, 17.6967),
];

/// Maximum of the refined `I` ratio, recorded on first run.
const I_MAX_ANCHORS: &[(f64, f64, f64)] = &[
    (-0.9, -1.5, 10.1789),
    (-0.9, -1.0, 10.1668),
    (-0.9, -0.5, 10.1648),
    (-0.9, 0.0, 10.1643),
    (-0.5, -1.5, 3.60836),
    (-0.5, -1.0, 3.13845),
    (-0.5, -0.5, 3.08800),
    (-0.5, 0.0, 3.05520),
    (-0.1, -1.5, 6.81206),
    (-0.1, -1.0, 5.57820),
    (-0.1, -0.5, 5.09083),
    (-0.1, 0.0, 4.80363),
];

const SPREAD_LIMIT: f64 = 50.0;
const ANCHOR_REL: f64 = 1e-4;

fn criterion_4() -> Outcome {
    let cfg = SeriesConfig::default();
    let j_grid = linear_grid(0.0, 0.999, 1000);
    let i_grid = linear_grid(0.001, 0.999, 1000);
    let mut max_spread: f64 = 0.0;
    let mut max_drift: f64 = 0.0;
    for &(k, alpha, anchor) in J_SPREAD_ANCHORS {
        let rep = asymptotic_ratio_check(KernelIntegral::J { k, alpha }, Envelope::Boundary, &j_grid, &cfg).unwrap();
        if !rep.converged || rep.spread() >= SPREAD_LIMIT {
            return outcome(false, format!("J k={k} α={alpha}: spread {}", rep.spread()));
        }
        max_spread = max_spread.max(rep.spread());
        max_drift = max_drift.max((rep.spread() / anchor - 1.0).abs());
    }
    let mut max_refined: f64 = 0.0;
    for &(alpha, beta, anchor) in I_MAX_ANCHORS {
        let rep = asymptotic_ratio_check(KernelIntegral::I { alpha, beta }, Envelope::Refined, &i_grid, &cfg).unwrap();
        if !rep.converged || !rep.max_ratio.is_finite() {
            return outcome(false, format!("I α={alpha} β={beta}: unbounded"));
        }
        max_refined = max_refined.max(rep.max_ratio);
        max_drift = max_drift.max((rep.max_ratio / anchor - 1.0).abs());
    }
    outcome(
        max_drift <= ANCHOR_REL,
        format!(
            "max J spread {max_spread:.3} (< {SPREAD_LIMIT}), max refined I ratio {max_refined:.3}, anchor drift {max_drift:.1e}"
        ),
    )
}

fn criterion_5() -> Outcome {
    const HERMITIAN_TOL: f64 = 1e-12;
    let spec = HartogsDomainSpec::triangle(2, 1).unwrap();
    let zs = sample_standard_model(&spec, 1000, SEED);
    let zetas = sample_standard_model(&spec, 1000, SEED + 1);
    let mut herm: f64 = 0.0;
    let mut positive = true;
    for (z, zeta) in zs.iter().zip(&zetas) {
        let a = kernel_hartogs(&spec, z, zeta).unwrap();
        let b = kernel_hartogs(&spec, zeta, z).unwrap();
        herm = herm.max((a - b.conj()).norm() / a.norm().max(1.0));
        let d = kernel_hartogs(&spec, z, z).unwrap();
        positive &= d.re > 0.0 && d.im.abs() <= HERMITIAN_TOL * d.re;
    }

    const N: u32 = 64;
    const DISK_TOL: f64 = 1e-8;
    let mut disk_err: f64 = 0.0;
    for i in 0..40 {
        for j in 0..40 {
            let w = Complex64::from_polar(0.5 * (i as f64 + 1.0) / 40.0, 0.37 * i as f64);
            let eta = Complex64::from_polar(0.5 * (j as f64 + 1.0) / 40.0, -1.3 * j as f64);
            let t = kernel_truncated(&KernelModel::Disk, N, &[w], &[eta]).unwrap();
            disk_err = disk_err.max((t - kernel_punctured_disk(w, eta)).norm());
        }
    }

    const EXPANSION_TOL: f64 = 1e-6;
    let model = KernelModel::Hartogs(spec.clone());
    let pts: Vec<Vec<Complex64>> = [
        [c(0.2, 0.1), c(0.5, 0.0)],
        [c(-0.6, 0.3), c(0.0, 0.8)],
        [c(0.9, 0.0), c(0.3, -0.4)],
        [c(0.0, -0.45), c(-0.7, 0.2)],
    ]
    .iter()
    .map(|w| map_g(2, 1, w).unwrap().into_inner())
    .collect();
    let mut exp_err: f64 = 0.0;
    for z in &pts {
        for zeta in &pts {
            let exact = kernel_hartogs(&spec, z, zeta).unwrap();
            let series = kernel_truncated(&model, 300, z, zeta).unwrap();
            exp_err = exp_err.max((series - exact).norm() / exact.norm());
        }
    }
    outcome(
        herm <= HERMITIAN_TOL && positive && disk_err < DISK_TOL && exp_err < EXPANSION_TOL,
        format!(
            "Hermitian defect {herm:.1e} on 1000 pairs, diagonal positive: {positive}; disk N={N} error {disk_err:.1e}; expansion rel error {exp_err:.1e}"
        ),
    )
}

fn criterion_6() -> Outcome {
    const SAMPLES: usize = 1_000_000;
    let spec = HartogsDomainSpec::triangle(2, 1).unwrap();
    let points = [
        [c(0.1, 0.05), c(0.4, 0.2)],
        [c(-0.2, 0.1), c(0.0, 0.6)],
        [c(0.3, -0.3), c(-0.5, 0.5)],
        [c(0.0, 0.0), c(0.3, 0.0)],
        [c(0.05, 0.6), c(0.8, 0.1)],
    ];
    let mut worst: f64 = 0.0;
    let mut count = 0u64;
    for nu in MultiIndex::up_to_degree(2, 2) {
        for z in &points {
            let est = bergman_projection_mc(&spec, |x| nu.monomial(x), z, SAMPLES, SEED + count).unwrap();
            let want = nu.monomial(z);
            worst = worst.max(est.re.z_score(want.re).abs()).max(est.im.z_score(want.im).abs());
            count += 1;
        }
    }
    outcome(worst <= SIGMAS, format!("{count} projections (6 monomials × 5 points): max |z| {worst:.2}"))
}

/// `sup_{x ≥ 1} x^{−δ}(1 + ln(x + 1))`, scanned on a log grid far past the maximizer.
fn log_power_sup(delta: f64) -> f64 {
    (0..=4000)
        .map(|i| {
            let x = 10f64.powf(i as f64 * 0.01);
            x.powf(-delta) * (1.0 + (x + 1.0).ln())
        })
        .fold(0.0, f64::max)
}

fn criterion_7() -> Outcome {
    const M_MAX: usize = 100;
    const GROWTH: f64 = 10.0;
    let mut notes = Vec::new();
    let mut pass = true;
    for &(n, k) in &[(2usize, 1usize), (3, 1), (3, 2)] {
        let nf = n as f64;
        let p = 2.0 * nf / (nf + 1.0);
        let ms: Vec<usize> = (1..=M_MAX).collect();
        let table = blowup_demo(n, k, p, &ms).unwrap();
        let constant = hartogs::special::ln_factorial(k as u64).exp() / hartogs::special::ln_factorial(n as u64 - 1).exp();

        // uniform bound: piece_j ≤ j^{−p}(1 + ln(j+1)), summed to J and an integral tail beyond
        let big_j = 120usize;
        let g = RadialStepFunction::new(n, big_j).unwrap();
        let mut piece_ok = true;
        let mut head = 0.0;
        for j in 1..=big_j {
            let piece = g.piece_power_integral(j, p, 2.0 * nf);
            piece_ok &= piece <= (j as f64).powf(-p) * (1.0 + (j as f64 + 1.0).ln());
            head += piece;
        }
        let (jf, cm1) = (big_j as f64, p - 1.0);
        let tail = jf.powf(-cm1) * (2.0 / cm1 + jf.ln() / cm1 + 1.0 / (cm1 * cm1));
        let sup_bound = (2.0 * constant * (head + tail)).powf(1.0 / p);
        let bounded = piece_ok && table.rows.iter().all(|r| r.norm_fm <= sup_bound);

        // increments against m^{−1−ε}
        let eps = 1.0 / (2.0 * (nf + 1.0));
        let k_bound = 2.0 * constant * log_power_sup(p - 1.0 - eps);
        let mut inc_ok = true;
        let mut prev = 0.0;
        for m in 1..=M_MAX {
            let now = fm_norm_pow(n, k, m, p).unwrap();
            inc_ok &= now - prev <= k_bound * (m as f64).powf(-1.0 - eps);
            prev = now;
        }

        let half_h = table.rows.iter().all(|r| r.proj_lower_bound > 0.5 * harmonic(r.m));
        let monotone = table.rows.windows(2).all(|w| w[1].proj_lower_bound > w[0].proj_lower_bound);
        let growth = table.rows[M_MAX - 1].ratio / table.rows[0].ratio;
        let ok = bounded && inc_ok && half_h && monotone && growth >= GROWTH;
        pass &= ok;
        notes.push(format!(
            "n={n} k={k}: ‖f_m‖ ≤ {sup_bound:.3} {}, increments {}, bound > H_m/2 {}, monotone {}, ratio growth {growth:.2}×",
            yes(bounded),
            yes(inc_ok),
            yes(half_h),
            yes(monotone)
        ));
    }
    outcome(pass, format!("{} (target growth {GROWTH}×)", notes.join("; ")))
}

fn yes(b: bool) -> &'static str {
    if b { "ok" } else { "FAILS" }
}

fn criterion_8() -> Outcome {
    const SAMPLES: usize = 1_000_000;
    let spec = HartogsDomainSpec::triangle(2, 1).unwrap();
    let points = [[c(0.1, 0.1), c(0.3, 0.4)], [c(-0.05, 0.2), c(0.6, -0.1)]];
    let mut worst: f64 = 0.0;
    let mut count = 0u64;
    for m in [1usize, 2] {
        for z in &points {
            let exact = projected_fm(2, m, z).unwrap();
            let est = bergman_projection_mc(&spec, |x| fm_eval(2, m, x).unwrap(), z, SAMPLES, SEED + count).unwrap();
            worst = worst.max(est.re.z_score(exact.re).abs()).max(est.im.z_score(exact.im).abs());
            count += 1;
        }
    }
    let v = domain_volume(2, 1).unwrap();
    outcome(worst <= SIGMAS, format!("m ∈ {{1, 2}} at 2 points: max |z| {worst:.2} (V = {v})"))
}

fn criterion_9() -> Outcome {
    let spec = HartogsDomainSpec::affine_example();
    let cfg = NumericConfig::default().with_seed(SEED).with_samples(1_000_000);
    let b = jacobian_bounds(&spec, &cfg).unwrap();
    let exact = b.is_exact() && b.c == 2.0 && b.d == 2.0;
    let bound = transfer_norm_bound(1.0, &JacobianBounds::exact(1.0, 2.0).unwrap(), 4.0).unwrap();
    let mut worst: f64 = 0.0;
    let mut passed = true;
    for nu in [vec![0, 0, 0, 0], vec![0, 0, 0, 1], vec![1, 0, 0, 1]] {
        let nu = MultiIndex::new(nu);
        let rep = pullback_isometry_check(&spec, |u| nu.monomial(u), &cfg).unwrap();
        worst = worst.max(rep.z_score.abs());
        passed &= rep.passed;
    }
    outcome(
        exact && (bound - 4.0).abs() < 1e-15 && passed && worst <= SIGMAS,
        format!("c = {}, d = {} ({:?}); bound(1; 1, 2; p=4) = {bound}; isometry max |z| {worst:.2} on 1, z₄, z₁z₄", b.c, b.d, b.method),
    )
}

fn criterion_10() -> Outcome {
    let runs: &[&[&str]] = &[
        &["kernel", "--n", "3", "--k", "1", "--w", "0.1,0.2,0.3", "--eta", "0.1,-0.2i,0.5", "--truncate", "20"],
        &["moments", "--k", "2", "--nu", "1,2", "--mc-samples", "50000"],
        &["estimates", "--integral", "j", "--k", "2", "--alpha", "-0.5", "--points", "20", "--format", "json", "--check-radii", "0.5", "--mc-samples", "50000"],
        &["estimates", "--integral", "i", "--alpha", "-0.5", "--beta", "-1", "--envelope", "refined", "--r-min", "0.01", "--points", "20"],
        &["schur-range", "--n", "4", "--k", "2"],
        &["schur-verify", "--n", "3", "--k", "1", "--p", "2", "--samples", "200"],
        &["blowup", "--n", "3", "--k", "2", "--m-max", "30", "--format", "json"],
        &["transfer", "--example", "rational", "--p", "3", "--monomial", "1,0,1", "--mc-samples", "50000"],
        &["project", "--n", "2", "--k", "1", "--m", "2", "--z", "0.1,0.5", "--mc-samples", "50000"],
    ];
    let exe = env!("CARGO_BIN_EXE_hartogs");
    for args in runs {
        let mut outputs = Vec::new();
        for threads in ["1", "4", "4"] {
            let out = Command::new(exe)
                .args(*args)
                .args(["--seed", "9", "--threads", threads])
                .env_remove("HARTOGS_SEED")
                .output()
                .expect("binary runs");
            if !out.status.success() {
                return outcome(false, format!("{} exited with {:?}", args[0], out.status.code()));
            }
            outputs.push(out.stdout);
        }
        if outputs.windows(2).any(|w| w[0] != w[1]) {
            return outcome(false, format!("{} output differs across runs", args[0]));
        }
    }
    outcome(true, format!("{} invocations byte-identical over 3 runs (1, 4, 4 threads)", runs.len()))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, || timed(Duration::from_secs(1), criterion_1)),
        (2, || timed(Duration::from_secs(60), criterion_2)),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, || timed(Duration::from_secs(1), criterion_7)),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut unexpected = Vec::new();
    for (id, run) in criteria {
        let o = run();
        let label = if o.pass { "PASS" } else { "FAIL" };
        let red = KNOWN_RED.contains(&id);
        let note = match (o.pass, red) {
            (false, true) => " (known red)",
            (true, true) => " (listed as known red but now passes)",
            _ => "",
        };
        println!("criterion {id}: {label}{note} - {}", o.detail);
        if !o.pass && !red {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria outside the known-red list pass");
    } else {
        println!("acceptance: unexpected failures {unexpected:?}");
        std::process::exit(1);
    }
}
