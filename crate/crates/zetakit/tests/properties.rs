//! Cross-module identities and randomized invariants. Everything here is a
//! consequence the implementation does not assume anywhere: reflection and
//! modular identities, staircase jump structure, conjugation symmetry,
//! serialization round trips.

use num_complex::Complex64;
use proptest::prelude::*;
use std::sync::OnceLock;

use zetakit::critical_line::{
    count_zeros_formula, find_zeros, theta_exact, theta_rs, z_function, ZeroOrdinate, ZeroTable,
    DEFAULT_SCAN_STEP,
};
use zetakit::explicit_formula::{
    density_term, li_complex, pi_explicit, von_mangoldt_psi_explicit,
};
use zetakit::numfmt::{format_significant, snap15};
use zetakit::prime_arith::{big_pi, chebyshev_psi, mobius, mobius_invert_pi, PrimeSieve};
use zetakit::special_fn::{bernoulli, gamma_weierstrass, jacobi_psi, log_gamma};
use zetakit::zeta_engine::{eta, xi, xi_big, zeta, EvalOptions};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn opts() -> EvalOptions {
    EvalOptions::default()
}

fn zeta_d(s: Complex64) -> Complex64 {
    zeta(s, &opts()).unwrap()
}

/// One scan shared by every test that needs many zeros.
fn deep_table() -> &'static ZeroTable {
    static TABLE: OnceLock<ZeroTable> = OnceLock::new();
    TABLE.get_or_init(|| find_zeros(1.0, 545.0, DEFAULT_SCAN_STEP, 1e-9).unwrap())
}

#[test]
fn gamma_reflection_identity_on_grid() {
    for &re in &[-9.5, -4.1, -0.7, 0.3, 2.6, 5.9, 9.4] {
        for &im in &[-9.3, -0.6, 1.7, 9.8] {
            let z = c(re, im);
            let lg = log_gamma(z).unwrap() + log_gamma(c(1.0, 0.0) - z).unwrap();
            let product = lg.exp() * (std::f64::consts::PI * z).sin() / std::f64::consts::PI;
            assert!(
                (product - c(1.0, 0.0)).norm() < 1e-10,
                "reflection residual {} at {}",
                (product - c(1.0, 0.0)).norm(),
                z
            );
        }
    }
}

#[test]
fn weierstrass_product_tracks_log_gamma_off_axis() {
    let points = [
        c(-9.5, 3.2),
        c(-4.3, -7.7),
        c(-0.5, 0.5),
        c(0.5, -9.0),
        c(3.25, 0.0),
        c(6.5, 6.5),
        c(9.9, -2.2),
        c(-7.5, 0.1),
    ];
    for &z in &points {
        let reference = log_gamma(z).unwrap().exp();
        let product = gamma_weierstrass(z, 1_000_000).unwrap();
        assert!(
            (product - reference).norm() < 1e-4 * reference.norm(),
            "Weierstrass mismatch at {z}: {product} vs {reference}"
        );
    }
}

#[test]
fn jacobi_modular_identity() {
    let theta = |x: f64| 1.0 + 2.0 * jacobi_psi(x, 1e-15).unwrap();
    for &x in &[0.1, 0.37, 1.0, 2.5, 9.0] {
        let residual = (theta(x) - theta(1.0 / x) / x.sqrt()).abs();
        assert!(residual < 1e-12, "Jacobi residual {residual} at x = {x}");
    }
}

#[test]
fn bernoulli_recurrence_holds_exactly() {
    use num_rational::BigRational;
    use num_traits::Zero;
    // sum_{k=0}^{n} C(n+1, k) B_k = 0 for n >= 1, in exact arithmetic
    for n in 1u32..=24 {
        let mut acc = BigRational::zero();
        let mut binom = BigRational::from_integer(1.into());
        for k in 0..=n {
            acc += &binom * bernoulli(k).unwrap();
            binom = binom * BigRational::from_integer((n as i64 + 1 - k as i64).into())
                / BigRational::from_integer((k as i64 + 1).into());
        }
        assert!(acc.is_zero(), "Bernoulli recurrence fails at n = {n}");
    }
}

#[test]
fn zeta_negative_on_real_unit_interval() {
    for &s in &[0.1, 0.3, 0.5, 0.7, 0.9] {
        let v = zeta_d(c(s, 0.0));
        assert!(v.re < 0.0, "zeta({s}) = {v} not negative");
        assert_eq!(v.im, 0.0);
    }
}

#[test]
fn trivial_zeros_vanish() {
    for k in 1..=6 {
        let v = zeta_d(c(-2.0 * k as f64, 0.0));
        assert!(v.norm() < 1e-10, "zeta(-{}) = {v}", 2 * k);
    }
}

#[test]
fn pole_residue_approached_along_real_axis() {
    for k in 2..=6 {
        let h = 10f64.powi(-k);
        let v = (c(h, 0.0)) * zeta_d(c(1.0 + h, 0.0));
        // (s-1) zeta(s) = 1 + gamma (s-1) + O((s-1)^2)
        assert!(
            (v.re - 1.0).abs() < 0.65 * h + 1e-9,
            "residue approach fails at h = {h}: {v}"
        );
    }
}

#[test]
fn zeta_at_negative_odd_integers_matches_bernoulli() {
    use num_traits::ToPrimitive;
    for &n in &[1u32, 3, 5, 7] {
        let b = bernoulli(n + 1).unwrap();
        let expected = -b.to_f64().unwrap() / (n as f64 + 1.0);
        let v = zeta_d(c(-(n as f64), 0.0));
        assert!(
            (v.re - expected).abs() < 1e-10,
            "zeta(-{n}) = {} vs -B_{}/{} = {expected}",
            v.re,
            n + 1,
            n + 1
        );
        assert_eq!(v.im, 0.0);
    }
}

#[test]
fn xi_reflection_on_grid() {
    for &re in &[-3.5, -1.25, 0.25, 0.75, 2.5, 4.5] {
        for &im in &[-25.0, -10.0, -2.0, 3.0, 12.0, 28.0] {
            let s = c(re, im);
            let a = xi(s).unwrap();
            let b = xi(c(1.0, 0.0) - s).unwrap();
            assert!(
                (a - b).norm() < 1e-10 * (1.0 + a.norm()),
                "xi reflection residual {} at {s}",
                (a - b).norm()
            );
        }
    }
}

#[test]
fn scan_is_stable_under_step_refinement() {
    let coarse = find_zeros(10.0, 100.0, 0.05, 1e-9).unwrap();
    let fine = find_zeros(10.0, 100.0, 0.025, 1e-9).unwrap();
    assert_eq!(coarse.len(), fine.len());
    for (a, b) in coarse.zeros.iter().zip(&fine.zeros) {
        assert_eq!(a.index, b.index);
        assert!(
            (a.t - b.t).abs() <= a.err + b.err + 1e-12,
            "ordinate moved under refinement: {} vs {}",
            a.t,
            b.t
        );
    }
    // every reported zero brackets a sign change
    for z in &coarse.zeros {
        let lo = z_function(z.t - z.err).unwrap();
        let hi = z_function(z.t + z.err).unwrap();
        assert!(lo * hi <= 0.0, "no sign change across zero {}", z.index);
    }
}

#[test]
fn completed_function_vanishes_at_reported_ordinates() {
    let table = deep_table();
    for z in table.head(29).zeros.iter() {
        let v = xi_big(z.t).unwrap();
        assert!(v.abs() < 1e-5, "Xi({}) = {v}", z.t);
    }
}

#[test]
fn theta_asymptotic_tracks_exact_phase() {
    let mut t = 20.0;
    while t <= 2000.0 {
        let d = (theta_rs(t).unwrap() - theta_exact(t).unwrap()).abs();
        assert!(d < 1e-5, "theta mismatch {d} at t = {t}");
        t *= 1.26;
    }
}

#[test]
fn table_count_stays_near_counting_formula() {
    let table = deep_table();
    let mut prev = 0;
    for t_int in 20..=200 {
        let t = t_int as f64;
        let count = table.count_up_to(t);
        assert!(count >= prev, "count decreased at T = {t}");
        prev = count;
        let formula = count_zeros_formula(t).unwrap();
        assert!(
            (count as f64 - formula).abs() <= 1.0,
            "count {count} vs formula {formula} at T = {t}"
        );
    }
}

#[test]
fn mobius_divisor_sums_collapse() {
    // sum_{d|n} mu(d) is 1 at n = 1 and 0 beyond
    assert_eq!(mobius(1), 1);
    for n in 2u64..=10_000 {
        let mut acc = 0i64;
        let mut d = 1;
        while d * d <= n {
            if n % d == 0 {
                acc += mobius(d) as i64;
                if d != n / d {
                    acc += mobius(n / d) as i64;
                }
            }
            d += 1;
        }
        assert_eq!(acc, 0, "divisor sum of mu not zero at n = {n}");
    }
}

#[test]
fn weighted_staircase_jumps_by_reciprocal_order() {
    let sieve = PrimeSieve::new(2048).unwrap();
    for p in sieve.primes() {
        if p > 1000 {
            break;
        }
        let mut q = p;
        let mut k = 1u32;
        while q <= 1000 {
            let jump = big_pi(q as f64 + 0.25, &sieve).unwrap()
                - big_pi(q as f64 - 0.25, &sieve).unwrap();
            assert!(
                (jump - 1.0 / k as f64).abs() < 1e-12,
                "jump at {p}^{k} = {q} is {jump}"
            );
            q = match q.checked_mul(p) {
                Some(next) => next,
                None => break,
            };
            k += 1;
        }
    }
}

#[test]
fn chebyshev_psi_tracks_x() {
    let sieve = PrimeSieve::new(100_000).unwrap();
    for &x in &[1e3, 1e4, 1e5] {
        let r = chebyshev_psi(x, &sieve).unwrap() / x;
        assert!((r - 1.0).abs() < 0.1, "psi(x)/x = {r} at x = {x}");
    }
}

#[test]
fn mobius_weighted_inverse_square_sum() {
    let n = 10_000u64;
    let partial: f64 = (1..=n).map(|k| mobius(k) as f64 / (k * k) as f64).sum();
    let limit = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
    assert!(
        (partial - limit).abs() < 1.0 / n as f64,
        "partial sum {partial} vs 6/pi^2 = {limit}"
    );
}

#[test]
fn conjugate_zero_pair_sums_are_real() {
    for &x in &[10.0, 100.0, 500.0] {
        for &t in &[14.1347251417346938, 25.0108575801456888, 48.0051508811671597] {
            let up = li_complex(x, c(0.5, t)).unwrap();
            let down = li_complex(x, c(0.5, -t)).unwrap();
            let pair = up + down;
            assert!(pair.im.abs() < 1e-12, "pair imaginary {}", pair.im);
            assert!(
                (pair.re - 2.0 * up.re).abs() < 1e-12 * (1.0 + pair.re.abs()),
                "pair {} vs 2 Re {}",
                pair.re,
                2.0 * up.re
            );
        }
    }
}

#[test]
fn psi_error_envelope_shrinks_with_more_zeros() {
    let table = deep_table();
    let sieve = PrimeSieve::new(1024).unwrap();
    let xs = [10.5, 101.5, 517.3];
    let envelope = |k: usize| -> f64 {
        let head = table.head(k);
        xs.iter()
            .map(|&x| {
                let approx = von_mangoldt_psi_explicit(x, &head).unwrap().value;
                let exact = chebyshev_psi(x, &sieve).unwrap();
                (approx - exact).abs()
            })
            .fold(0.0, f64::max)
    };
    let (e10, e100, e300) = (envelope(10), envelope(100), envelope(300));
    assert!(
        e300 < e100 && e100 < e10,
        "error envelope not shrinking: {e10} -> {e100} -> {e300}"
    );
    assert!(e300 < 0.5, "300-pair envelope too large: {e300}");
}

#[test]
fn explicit_and_sieve_prime_counts_agree() {
    let table = deep_table().head(300);
    let sieve = PrimeSieve::new(1024).unwrap();
    for &x in &[50.0, 100.0, 500.0] {
        let a = pi_explicit(x, &table, 64).unwrap();
        let b = mobius_invert_pi(x, &sieve).unwrap();
        assert!((a - b).abs() < 0.5, "pi mismatch at {x}: {a} vs {b}");
    }
}

#[test]
fn zero_pair_power_sums_match_density_term() {
    for &x in &[2.5, 10.0, 100.0, 1000.0] {
        for &alpha in &[0.0, 14.134725, 25.010858, 100.0] {
            let rho = c(0.5, alpha);
            let direct = Complex64::from(x).powc(rho - 1.0) + Complex64::from(x).powc(-rho);
            let folded = density_term(x, alpha).unwrap();
            assert!(direct.im.abs() < 1e-12);
            assert!(
                (direct.re - folded).abs() < 1e-12,
                "density identity residual at x = {x}, alpha = {alpha}"
            );
        }
    }
}

#[test]
fn evaluation_options_are_validated() {
    let s = c(2.0, 0.0);
    let bad_tol = EvalOptions {
        tol: 0.0,
        ..opts()
    };
    assert!(zeta(s, &bad_tol).is_err());
    let bad_terms = EvalOptions {
        max_terms: 8,
        ..opts()
    };
    assert!(zeta(s, &bad_terms).is_err());
    let bad_guard = EvalOptions {
        eta_singularity_guard: -1.0,
        ..opts()
    };
    assert!(zeta(s, &bad_guard).is_err());
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn shared_sieve() -> &'static PrimeSieve {
    static SIEVE: OnceLock<PrimeSieve> = OnceLock::new();
    SIEVE.get_or_init(|| PrimeSieve::new(50_000).unwrap())
}

proptest! {
    #[test]
    fn zeta_conjugation_is_bitwise(re in -4.0f64..5.0, im in 0.2f64..30.0) {
        let s = c(re, im);
        prop_assume!((s - c(1.0, 0.0)).norm() > 0.05);
        let a = zeta(s.conj(), &opts()).unwrap();
        let b = zeta(s, &opts()).unwrap().conj();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn eta_conjugation_is_bitwise(re in -3.0f64..4.0, im in 0.1f64..30.0) {
        let s = c(re, im);
        let a = eta(s.conj(), &opts()).unwrap();
        let b = eta(s, &opts()).unwrap().conj();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn log_gamma_conjugation_is_bitwise(re in -10.0f64..10.0, im in 0.1f64..10.0) {
        let z = c(re, im);
        let a = log_gamma(z.conj()).unwrap();
        let b = log_gamma(z).unwrap().conj();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn mobius_is_multiplicative(m in 2u64..2000, n in 2u64..2000) {
        prop_assume!(gcd(m, n) == 1);
        prop_assert_eq!(mobius(m * n), mobius(m) * mobius(n));
    }

    #[test]
    fn mobius_vanishes_on_square_multiples(p in 2u64..100, k in 1u64..50) {
        prop_assume!(shared_sieve().is_prime(p));
        prop_assert_eq!(mobius(p * p * k), 0);
    }

    #[test]
    fn sieve_agrees_with_trial_division(n in 2u64..50_000) {
        let by_trial = (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        prop_assert_eq!(shared_sieve().is_prime(n), by_trial);
    }

    #[test]
    fn zero_table_csv_round_trips(raw in proptest::collection::vec((1.0f64..1e4, 0.0f64..1e-3), 0..40)) {
        let mut ts: Vec<(f64, f64)> = raw
            .into_iter()
            .map(|(t, e)| (snap15(t), snap15(e)))
            .collect();
        ts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        ts.dedup_by(|a, b| a.0 == b.0);
        let zeros: Vec<ZeroOrdinate> = ts
            .iter()
            .enumerate()
            .map(|(i, &(t, err))| ZeroOrdinate {
                index: i as u32 + 1,
                t,
                err,
            })
            .collect();
        let t_max_scanned = zeros.last().map_or(0.0, |z| z.t);
        let table = ZeroTable { zeros, t_max_scanned };
        let csv = table.to_csv();
        let back = ZeroTable::from_csv(&csv).unwrap();
        prop_assert_eq!(&back, &table);
        prop_assert_eq!(back.to_csv(), csv);
    }

    #[test]
    fn significant_digit_formatting_round_trips(v in -1e12f64..1e12, digits in 6usize..15) {
        prop_assume!(v != 0.0);
        let text = format_significant(v, digits);
        let parsed: f64 = text.parse().unwrap();
        let rel = ((parsed - v) / v).abs();
        prop_assert!(rel < 10f64.powi(1 - digits as i32), "{text} vs {v}");
    }
}
