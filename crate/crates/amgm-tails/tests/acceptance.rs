//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use amgm_tails::applications::{
    bh_bound, bh_improved, p1, p2, p3, p_opt, ratio_bound, t_star,
};
use amgm_tails::bounds::{
    exact_tail_bound, limit_gap, root_residual, z_lambert, z_root, MeanRatio, TailSide,
};
use amgm_tails::verify::{
    arithmetic_mean, dual_certificate, extremal_distribution, geometric_mean, oracle_check,
    tail_prob, two_point_sup,
};

const MUS: [f64; 5] = [1.001, 1.01, 1.1, 2.0, 10.0];
const POINTS_PER_REGION: usize = 40;

fn mr(x: f64) -> MeanRatio {
    MeanRatio::new(x).unwrap()
}

/// The shared verification grid: per mu, 40 log-spaced right-region points
/// in [1.1 mu, 300 mu] and 40 log-spaced left-region points in [0.001, 0.98].
fn grid() -> Vec<(MeanRatio, f64, TailSide)> {
    let mut cases = Vec::new();
    for &mu in &MUS {
        for i in 0..POINTS_PER_REGION {
            let frac = i as f64 / (POINTS_PER_REGION - 1) as f64;
            let v_right = mu * 1.1 * (300.0f64 / 1.1).powf(frac);
            cases.push((mr(mu), v_right, TailSide::Right));
            let v_left = 0.001 * (0.98f64 / 0.001).powf(frac);
            cases.push((mr(mu), v_left, TailSide::Left));
        }
    }
    cases
}

#[test]
fn criterion_01_t_star_reproduction() {
    let ts = t_star();
    assert!((ts - 1.585).abs() <= 1e-3, "t* = {ts}");
    assert!((p1(ts) - 0.284).abs() <= 1e-3, "P1(t*) = {}", p1(ts));
    assert!((p3(ts) - 0.284).abs() <= 1e-3, "P3(t*) = {}", p3(ts));
    println!("[PASS] criterion 1: t* = {ts:.6}, P1(t*) = P3(t*) = {:.6}", p1(ts));
}

#[test]
fn criterion_02_root_correctness() {
    let cases = grid();
    assert_eq!(cases.len(), 400);
    let mut worst_f = 0.0f64;
    let mut worst_agree = 0.0f64;
    for &(mu, v, _) in &cases {
        let z = z_root(mu, v).unwrap();
        let f = root_residual(mu, v, z).unwrap().abs();
        assert!(f <= 1e-12, "|F| = {f:e} at mu={}, v={v}", mu.get());
        let zl = z_lambert(mu, v).unwrap();
        let agree = (zl - z).abs() / z.max(1.0);
        assert!(agree <= 1e-9, "routes disagree by {agree:e} at mu={}, v={v}", mu.get());
        worst_f = worst_f.max(f);
        worst_agree = worst_agree.max(agree);
    }
    println!(
        "[PASS] criterion 2: 400 cases, worst |F(z_root)| = {worst_f:.2e}, \
         worst |z_lambert - z_root| = {worst_agree:.2e}"
    );
}

#[test]
fn criterion_03_attainment_witnesses() {
    let mut checked = 0;
    for (mu, v, side) in grid() {
        let d = extremal_distribution(mu, v, side).unwrap();
        let a_err = (arithmetic_mean(&d) - mu.get()).abs();
        let g_err = geometric_mean(&d).ln().abs();
        assert!(a_err <= 1e-10, "|A - mu| = {a_err:e} at mu={}, v={v}", mu.get());
        assert!(g_err <= 1e-10, "|ln G| = {g_err:e} at mu={}, v={v}", mu.get());
        let p = exact_tail_bound(mu, v, side).p;
        let tail = tail_prob(&d, v, side);
        assert!(tail == p, "tail {tail} != p {p} at mu={}, v={v}", mu.get());
        checked += 1;
    }
    println!("[PASS] criterion 3: {checked} witnesses attain their bound exactly");
}

#[test]
fn criterion_04_oracle_tightness() {
    let mut cases = Vec::new();
    for &mu in &[1.01, 1.1, 2.0, 10.0] {
        for &ratio in &[1.5, 4.0, 20.0] {
            cases.push((mu, mu * ratio, TailSide::Right));
        }
        for &v in &[0.2, 0.7] {
            cases.push((mu, v, TailSide::Left));
        }
    }
    assert_eq!(cases.len(), 20);
    let mut worst = 0.0f64;
    for (mu, v, side) in cases {
        let sup = two_point_sup(mr(mu), v, side, 2000).unwrap();
        let p = exact_tail_bound(mr(mu), v, side).p;
        let gap = (sup - p).abs();
        assert!(gap <= 1e-6, "sup {sup} vs p {p} at mu={mu}, v={v}");
        worst = worst.max(gap);
    }
    println!("[PASS] criterion 4: 20 cases, worst |two_point_sup - p| = {worst:.2e}");
}

#[test]
fn criterion_05_oracle_soundness() {
    let cases = [
        (2.0, 4.0, TailSide::Right, 42u64),
        (1.1, 0.5, TailSide::Left, 7),
        (1.01, 1.2, TailSide::Right, 11),
        (10.0, 50.0, TailSide::Right, 13),
        (2.0, 0.3, TailSide::Left, 17),
    ];
    for (mu, v, side, seed) in cases {
        let rep = oracle_check(mr(mu), v, side, 10_000, seed).unwrap();
        assert_eq!(rep.violations, 0, "violations at mu={mu}, v={v}: {rep:?}");
        assert!(rep.max_tail <= rep.bound + 1e-12);
    }
    println!("[PASS] criterion 5: zero violations in 5 x 10^4 sampled feasible distributions");
}

#[test]
fn criterion_06_dual_certificates() {
    let mut checked = 0;
    for (mu, v, side) in grid() {
        let z = z_root(mu, v).unwrap();
        let cert = dual_certificate(v, z).unwrap();
        assert!(cert.a > 0.0 && cert.b_coef > 0.0);
        assert!(cert.g(z).abs() <= 1e-10, "g(z) = {:e} at mu={}, v={v}", cert.g(z), mu.get());
        assert!(cert.g_prime(z).abs() <= 1e-10, "g'(z) at mu={}, v={v}", mu.get());
        assert!((cert.g(v) - 1.0).abs() <= 1e-10, "g(v) at mu={}, v={v}", mu.get());
        // domination of the tail indicator over (1e-6, 1e6)
        for i in 0..1000 {
            let x = 10f64.powf(-6.0 + 12.0 * i as f64 / 999.0);
            let indicator = match side {
                TailSide::Right => {
                    if x >= v {
                        1.0
                    } else {
                        0.0
                    }
                }
                TailSide::Left => {
                    if x <= v {
                        1.0
                    } else {
                        0.0
                    }
                }
            };
            assert!(
                cert.g(x) >= indicator - 1e-10,
                "domination fails at x={x}, mu={}, v={v}",
                mu.get()
            );
        }
        checked += 1;
    }
    println!("[PASS] criterion 6: {checked} certificates pass g(z)=g'(z)=0, g(v)=1, domination");
}

#[test]
fn criterion_07_strict_improvement_chain() {
    // strict chain on t where the p2-p1 gap is representable in doubles
    let mut t = 0.2;
    while t <= 8.0 + 1e-9 {
        let (v1, v2) = (p1(t), p2(t));
        assert!(v2 < v1, "p2 !< p1 at t={t}");
        for sigma in [1.0, 6.0] {
            let po = p_opt(sigma, sigma * t).unwrap();
            assert!(po <= v2, "p_opt {po} > p2 {v2} at t={t}, sigma={sigma}");
        }
        t += 0.2;
    }
    // beyond that the chain holds to a couple of ulps
    for t in [10.0, 15.0, 20.0, 30.0, 37.0] {
        let (v1, v2) = (p1(t), p2(t));
        assert!(v2 <= v1 * (1.0 + 4.0 * f64::EPSILON), "t={t}");
        let po = p_opt(1.0, t).unwrap();
        assert!(po <= v2 * (1.0 + 4.0 * f64::EPSILON), "t={t}");
    }
    // p3 < p1 exactly on t > t*
    let ts = t_star();
    for k in 1..=6 {
        let eps = 10f64.powi(-k);
        assert!(p3(ts + eps) < p1(ts + eps), "eps={eps}");
        assert!(p3(ts - eps) >= p1(ts - eps), "eps={eps}");
    }
    // p_v strictly improves the Markov bound across the right-region grid
    for (mu, v, side) in grid() {
        if side == TailSide::Right {
            let p = exact_tail_bound(mu, v, side).p;
            assert!(p < mu.get() / v, "Markov not improved at mu={}, v={v}", mu.get());
        }
    }
    println!("[PASS] criterion 7: p_opt <= p2 < p1, p3/p1 crossover at t*, p < mu/v");
}

#[test]
fn criterion_08_bh_ratio_regime() {
    // c = 0.1 and sigma^2/(by) = e^{-C/c}: the improvement factor obeys the
    // closed-form cap (to 1e-12 relative; at the regime boundary the two
    // sides are equal up to the last ulp).
    let (y, b) = (1.0, 10.0);
    for big_c in [1.0, 3.0, 10.0] {
        let sigma = (b * y * (-big_c / 0.1f64).exp()).sqrt();
        let ratio = bh_improved(y, sigma, b).unwrap() / bh_bound(y, sigma, b).unwrap();
        let cap = ratio_bound(0.1, big_c).unwrap();
        assert!(
            ratio <= cap * (1.0 + 1e-12),
            "C={big_c}: ratio {ratio:.15e} exceeds cap {cap:.15e}"
        );
    }
    // the ratio shrinks with c at fixed C = 1
    let mut prev = f64::INFINITY;
    for c in [0.1, 0.05, 0.02] {
        let b = y / c;
        let sigma = (b * y * (-1.0 / c).exp()).sqrt();
        let ratio = bh_improved(y, sigma, b).unwrap() / bh_bound(y, sigma, b).unwrap();
        assert!(ratio < prev, "ratio not decreasing at c={c}");
        prev = ratio;
    }
    println!("[PASS] criterion 8: BH improvement ratio within cap at C in {{1,3,10}}, decreasing in c");
}

#[test]
fn criterion_09_asymptotic_gap() {
    let gap_at = |k: f64| {
        let mu = mr(1.0 + 10f64.powf(-k));
        let v = 1.0 + 3.0 * 10f64.powf(-k / 2.0);
        limit_gap(mu, v, TailSide::Right).unwrap()
    };
    let first = gap_at(4.0).abs();
    let last = gap_at(12.0).abs();
    for k in 4..=12 {
        // the whole path stays in-region with q < 1
        let _ = gap_at(k as f64);
    }
    assert!(last <= first / 10.0, "decay {first:e} -> {last:e} is below 10x");
    assert!(last <= 1e-3, "final gap {last:e}");
    println!(
        "[PASS] criterion 9: |p - q/(1+q)| falls {first:.2e} -> {last:.2e} ({}x)",
        (first / last).round()
    );
}

#[test]
fn criterion_10_figure_data() {
    let exe = env!("CARGO_BIN_EXE_amgm-tails");

    let run = |args: &[&str]| -> Vec<Vec<String>> {
        let out = std::process::Command::new(exe)
            .args(args)
            .output()
            .expect("binary runs");
        assert!(out.status.success(), "{:?} failed: {}", args, String::from_utf8_lossy(&out.stderr));
        let text = String::from_utf8(out.stdout).unwrap();
        text.lines()
            .skip(1) // header
            .map(|l| l.split(',').map(str::to_string).collect())
            .collect()
    };

    // figure 1 at mu = 1.1 and mu = 1.01
    let mut max_p_by_mu = Vec::new();
    for mu in [1.1, 1.01] {
        let rows = run(&[
            "figure1",
            "--mu",
            &mu.to_string(),
            "--vmin",
            "0.005",
            "--vmax",
            "3.0",
            "--step",
            "0.005",
            "--format",
            "csv",
        ]);
        assert!(rows.len() > 500);
        let mut max_nontrivial_p = 0.0f64;
        for row in &rows {
            let v: f64 = row[0].parse().unwrap();
            let p: f64 = row[1].parse().unwrap();
            let q: f64 = row[2].parse().unwrap();
            if (1.0..=mu).contains(&v) {
                assert_eq!(p, 1.0, "p != 1 inside [1, mu] at v={v}");
            } else {
                assert!(p <= q + 1e-12, "p > q at mu={mu}, v={v}");
                if v > 1.15 {
                    max_nontrivial_p = max_nontrivial_p.max(p);
                }
            }
        }
        max_p_by_mu.push(max_nontrivial_p);
    }
    // tighter concentration for mu closer to 1
    assert!(
        max_p_by_mu[1] < max_p_by_mu[0],
        "mu=1.01 curve not tighter: {max_p_by_mu:?}"
    );

    // figure 2 at sigma = 6
    let rows = run(&[
        "figure2", "--sigma", "6", "--tmin", "0.005", "--tmax", "4.0", "--step", "0.005",
        "--format", "csv",
    ]);
    let mut crossover = None;
    for row in &rows {
        let t: f64 = row[0].parse().unwrap();
        let r2: f64 = row[1].parse().unwrap();
        let r3: f64 = row[2].parse().unwrap();
        let ro: f64 = row[3].parse().unwrap();
        assert!(r2 < 1.0, "p2/p1 >= 1 at t={t}");
        assert!(ro <= r2 + 1e-12, "p_opt/p1 > p2/p1 at t={t}");
        if crossover.is_none() && r3 <= 1.0 {
            crossover = Some(t);
        }
    }
    let crossover = crossover.expect("p3/p1 crosses 1 inside the grid");
    assert!(
        (crossover - t_star()).abs() <= 0.005,
        "crossover {crossover} vs t* {}",
        t_star()
    );
    println!(
        "[PASS] criterion 10: figure tables consistent; p3/p1 crossover at t = {crossover:.4} \
         (t* = {:.4})",
        t_star()
    );
}
