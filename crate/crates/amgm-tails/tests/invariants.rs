//! Structural invariants of the bound family that go beyond single values:
//! monotonicity in the threshold, boundary limits, and the non-attainment
//! of the degenerate supremum.

use amgm_tails::bounds::{exact_tail_bound, MeanRatio, TailSide};
use amgm_tails::verify::{extremal_distribution, random_feasible_distribution, tail_prob};

fn mr(x: f64) -> MeanRatio {
    MeanRatio::new(x).unwrap()
}

#[test]
fn right_tail_bound_nonincreasing_in_v() {
    for &mu in &[1.01, 1.1, 2.0, 10.0] {
        let mut prev = f64::INFINITY;
        for i in 0..200 {
            let v = mu * 1.05 * (400.0f64 / 1.05).powf(i as f64 / 199.0);
            let p = exact_tail_bound(mr(mu), v, TailSide::Right).p;
            assert!(p <= prev + 1e-14, "mu={mu}, v={v}");
            prev = p;
        }
    }
}

#[test]
fn left_tail_bound_nondecreasing_in_v() {
    for &mu in &[1.01, 1.1, 2.0, 10.0] {
        let mut prev = 0.0;
        for i in 0..200 {
            let v = 0.001 * (0.98f64 / 0.001).powf(i as f64 / 199.0);
            let p = exact_tail_bound(mr(mu), v, TailSide::Left).p;
            assert!(p >= prev - 1e-14, "mu={mu}, v={v}");
            prev = p;
        }
    }
}

#[test]
fn bound_tends_to_one_at_region_boundaries() {
    let mu = mr(2.0);
    for k in 1..=6 {
        let eps = 10f64.powi(-k);
        let right = exact_tail_bound(mu, 2.0 * (1.0 + eps), TailSide::Right).p;
        assert!(right > 1.0 - 2.0 * eps && right < 1.0, "right eps={eps}: {right}");
        let left = exact_tail_bound(mu, 1.0 - eps, TailSide::Left).p;
        assert!(left < 1.0, "left eps={eps}: {left}");
        assert!(left > 1.0 - 40.0 * eps, "left eps={eps}: {left}");
    }
}

#[test]
fn degenerate_supremum_approached_but_not_attained() {
    // For v in (1, mu) the supremum is 1 and no feasible distribution
    // reaches it: every sampled tail stays below 1, while a ladder of
    // extremal witnesses for v' just above mu pushes the tail past the
    // 1 - 10/sqrt(trials) mark.
    let mu = mr(2.0);
    let v = 1.5;
    let trials: u64 = 10_000;

    let mut max_tail = 0.0f64;
    for trial in 0..trials {
        let d = random_feasible_distribution(1234u64.wrapping_add(trial), mu, 5).unwrap();
        let tail = tail_prob(&d, v, TailSide::Right);
        assert!(tail < 1.0, "sampled tail hit 1 at trial {trial}");
        max_tail = max_tail.max(tail);
    }

    // witnesses at v' = mu (1 + 10^-k); k stops where z_v' is still a
    // normal double
    for k in [1.0, 1.5, 2.0, 2.5] {
        let vp = mu.get() * (1.0 + 10f64.powf(-k));
        let d = extremal_distribution(mu, vp, TailSide::Right).unwrap();
        let tail = tail_prob(&d, v, TailSide::Right);
        assert!(tail < 1.0, "witness tail hit 1 at k={k}");
        max_tail = max_tail.max(tail);
    }

    let threshold = 1.0 - 10.0 / (trials as f64).sqrt();
    assert!(max_tail > threshold, "max_tail {max_tail} below {threshold}");
}

#[test]
fn bound_valid_for_smaller_mean_ratio() {
    // The right-tail bound computed at mu also covers every distribution
    // with a smaller ratio: its tail is below the bound for the larger mu.
    let loose = exact_tail_bound(mr(2.0), 4.0, TailSide::Right).p;
    for sub_mu in [1.2, 1.5, 1.9] {
        let d = extremal_distribution(mr(sub_mu), 4.0, TailSide::Right).unwrap();
        let tail = tail_prob(&d, 4.0, TailSide::Right);
        assert!(tail <= loose + 1e-12, "sub_mu={sub_mu}: {tail} > {loose}");
    }
}
