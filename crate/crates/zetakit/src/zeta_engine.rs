//! Analytic continuation of ζ(s) to the punctured plane, plus the completed
//! function ξ and product representations over primes and zeros.
//!
//! Route selection: an Euler–Maclaurin-corrected Dirichlet sum for
//! Re s > 3/2, an accelerated alternating series through η(s) for the
//! critical strip, and the functional equation for Re s ≤ 0. The points
//! 1 + 2πik/ln 2 (k ≠ 0), where 1 − 2^{1−s} vanishes without η doing so,
//! are covered by a separate globally convergent series inside small guard
//! disks.

use num_complex::Complex64;
use num_traits::Zero;

use crate::critical_line::ZeroTable;
use crate::prime_arith::PrimeSieve;
use crate::special_fn::{cexpm1, ln_sin_pi, log_gamma};
use crate::{quad, special_fn, Error, Result};

const PI: f64 = std::f64::consts::PI;
const TAU: f64 = std::f64::consts::TAU;
const LN_2: f64 = std::f64::consts::LN_2;
const LN_PI: f64 = 1.1447298858494002;
/// ln(3 + √8), the per-term decay rate of the accelerated η series.
const ETA_RATE: f64 = 1.7627471740390861;

/// Knobs shared by the ζ/η evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    /// Target absolute error.
    pub tol: f64,
    /// Series length budget.
    pub max_terms: u32,
    /// Radius of the disks around 1 + 2πik/ln2 routed to the fallback series.
    pub eta_singularity_guard: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            tol: 1e-12,
            max_terms: 4096,
            eta_singularity_guard: 1e-3,
        }
    }
}

impl EvalOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(Error::Domain {
                what: "EvalOptions",
                detail: format!("tol must be positive and finite, got {}", self.tol),
            });
        }
        if self.max_terms < 16 {
            return Err(Error::Domain {
                what: "EvalOptions",
                detail: format!("max_terms must be at least 16, got {}", self.max_terms),
            });
        }
        if !(self.eta_singularity_guard >= 0.0) || self.eta_singularity_guard >= 0.5 {
            return Err(Error::Domain {
                what: "EvalOptions",
                detail: "eta_singularity_guard must lie in [0, 0.5)".into(),
            });
        }
        Ok(())
    }
}

/// Where an argument sits relative to the critical strip.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainRegion {
    /// Re s > 1: absolutely convergent Dirichlet series territory.
    RightHalf,
    /// 0 < Re s ≤ 1, s ≠ 1.
    CriticalStrip,
    /// Re s ≤ 0: functional-equation territory.
    LeftHalf,
}

pub fn classify(s: Complex64) -> Result<DomainRegion> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::Domain {
            what: "classify",
            detail: format!("non-finite argument {s}"),
        });
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::PoleAtOne);
    }
    Ok(if s.re > 1.0 {
        DomainRegion::RightHalf
    } else if s.re > 0.0 {
        DomainRegion::CriticalStrip
    } else {
        DomainRegion::LeftHalf
    })
}

// ---------------------------------------------------------------------------
// Exponent-tracked floats. The acceleration below needs (3+√8)^n, which
// overflows f64 near n = 402 while the final coefficients are all O(1).

#[derive(Debug, Clone, Copy)]
struct Scaled {
    m: f64, // |m| in [0.5, 1) unless zero
    e: i32,
}

/// 2^k as an exact f64, |k| ≤ 1023.
fn exp2i(k: i32) -> f64 {
    debug_assert!((-1022..=1023).contains(&k));
    f64::from_bits(((1023 + k) as u64) << 52)
}

impl Scaled {
    fn norm(m: f64, e: i32) -> Scaled {
        if m == 0.0 {
            return Scaled { m: 0.0, e: 0 };
        }
        let be = ((m.to_bits() >> 52) & 0x7ff) as i32;
        if be == 0 {
            // subnormal mantissa: renormalize through a wide lift
            return Scaled::norm(m * exp2i(54), e - 54);
        }
        let k = be - 1022;
        Scaled {
            m: m * exp2i(-k),
            e: e + k,
        }
    }

    fn from_f64(x: f64) -> Scaled {
        Scaled::norm(x, 0)
    }

    fn mul(self, x: f64) -> Scaled {
        Scaled::norm(self.m * x, self.e)
    }

    fn sub(self, other: Scaled) -> Scaled {
        if self.m == 0.0 {
            return Scaled::norm(-other.m, other.e);
        }
        if other.m == 0.0 {
            return self;
        }
        let de = self.e - other.e;
        if de > 60 {
            return self;
        }
        if de < -60 {
            return Scaled::norm(-other.m, other.e);
        }
        let e = self.e.max(other.e);
        Scaled::norm(
            self.m * exp2i(self.e - e) - other.m * exp2i(other.e - e),
            e,
        )
    }

    fn div_to_f64(self, den: Scaled) -> f64 {
        if self.m == 0.0 {
            return 0.0;
        }
        let de = self.e - den.e;
        if de < -1000 {
            return 0.0;
        }
        (self.m / den.m) * exp2i(de)
    }
}

// ---------------------------------------------------------------------------
// η(s) = Σ (−1)^{k} (k+1)^{−s} via Chebyshev-weighted averaging of partial
// sums: with d = (3+√8)^n the weights c_k/d are O(1) and the truncation
// error decays like (3+√8)^{−n} e^{π|t|/2}.

fn eta_accelerated(s: Complex64, n: u32) -> Complex64 {
    let base = 3.0 + 8.0f64.sqrt();
    let mut d = Scaled::from_f64(1.0);
    for _ in 0..n {
        d = d.mul(base);
    }
    // the exact divisor is ((3+√8)^n + (3+√8)^{−n})/2; the reciprocal part
    // is d^{−2} relative, below f64 resolution for n ≥ 24
    d = d.mul(0.5);
    let nf = n as f64;
    let mut b = Scaled::from_f64(-1.0);
    let mut c = Scaled::norm(-d.m, d.e);
    let mut sum = Complex64::zero();
    for k in 0..n {
        c = b.sub(c);
        let coef = c.div_to_f64(d);
        let kf = k as f64;
        sum += coef * (-s * (kf + 1.0).ln()).exp();
        b = b.mul((kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0)));
    }
    sum
}

fn eta_terms_needed(t: f64, tol_abs: f64) -> u32 {
    let tol = tol_abs.max(1e-306);
    let work = 0.5 * PI * t + (8.0 * (1.0 + 2.0 * t) / tol).ln();
    // +6 guard terms absorb the constant slop in the error envelope
    ((work / ETA_RATE).ceil().max(0.0) as u32 + 6).max(24)
}

fn eta_err_bound(n: u32, t: f64) -> f64 {
    (-(n as f64 - 6.0) * ETA_RATE + 0.5 * PI * t + (8.0 * (1.0 + 2.0 * t)).ln()).exp()
}

/// η with an absolute error estimate. `im` of s must be ≥ 0.
fn eta_with_err(s: Complex64, opts: &EvalOptions, tol_abs: f64) -> Result<(Complex64, f64)> {
    debug_assert!(s.im >= 0.0);
    let t = s.im;
    let mut n = eta_terms_needed(t, tol_abs);
    if n > opts.max_terms {
        if t <= 50.0 {
            return Err(Error::NonConvergence {
                what: "eta series",
                tol: tol_abs,
                best: eta_err_bound(opts.max_terms, t),
            });
        }
        // far from the real axis a longer series is not available in f64
        // anyway; return the best value with an honest (large) estimate
        n = opts.max_terms;
    }
    let val = eta_accelerated(s, n);
    let est = eta_err_bound(n, t) + (n as f64) * 2.3e-16 * (1.0 + val.norm());
    Ok((val, est))
}

/// Dirichlet eta function η(s) = Σ_{k≥1} (−1)^{k−1} k^{−s}.
pub fn eta(s: Complex64, opts: &EvalOptions) -> Result<Complex64> {
    opts.validate()?;
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::Domain {
            what: "eta",
            detail: format!("non-finite argument {s}"),
        });
    }
    if s.im < 0.0 {
        return Ok(eta(s.conj(), opts)?.conj());
    }
    let (val, est) = eta_with_err(s, opts, opts.tol)?;
    degradation_guard("eta", val, est, opts.tol)?;
    Ok(val)
}

/// Tall arguments (|Im s| > 50) run at whatever budget `max_terms` allows and
/// report an enlarged error estimate instead of failing. That grace ends where
/// the estimate stops being small against the value; past ~1% the digits are
/// noise and returning them would be worse than an error.
fn degradation_guard(what: &'static str, val: Complex64, est: f64, tol: f64) -> Result<()> {
    if est > 0.01 * (1.0 + val.norm()) {
        return Err(Error::NonConvergence {
            what,
            tol,
            best: est,
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Euler–Maclaurin pieces shared by the direct sum and the fallback series.

/// Σ_{n=m}^{∞} n^{−w} for Re w > 1, by Euler–Maclaurin through the B₄ term.
fn em_tail_from(m: f64, w: Complex64) -> Complex64 {
    let p = (-w * m.ln()).exp(); // m^{-w}
    m * p / (w - 1.0) + 0.5 * p + w * p / (12.0 * m)
        - w * (w + 1.0) * (w + 2.0) * p / (720.0 * m * m * m)
}

/// Magnitude of the first neglected Euler–Maclaurin correction.
fn em_tail_rem(m: f64, w: Complex64) -> f64 {
    let a = w.norm() * (w + 1.0).norm() * (w + 2.0).norm() * (w + 3.0).norm() * (w + 4.0).norm();
    a / 30240.0 * m.powf(-(w.re + 4.0) - 1.0)
}

/// Direct Dirichlet sum with tail corrections; requires Re s > 3/2.
fn zeta_direct(s: Complex64, opts: &EvalOptions) -> Result<(Complex64, f64)> {
    let sigma = s.re;
    let t = s.im;
    let a = s.norm() * (s + 1.0).norm() * (s + 2.0).norm() / 720.0;
    let n_req = (a / (0.5 * opts.tol))
        .powf(1.0 / (sigma + 3.0))
        .max(t)
        .max(16.0)
        .ceil() as u32
        + 1;
    let n = if n_req > opts.max_terms {
        if t <= 50.0 {
            return Err(Error::NonConvergence {
                what: "zeta direct series",
                tol: opts.tol,
                best: a * (opts.max_terms as f64).powf(-(sigma + 3.0)),
            });
        }
        opts.max_terms
    } else {
        n_req
    };
    let mut sum = Complex64::zero();
    for k in 1..n {
        sum += (-s * (k as f64).ln()).exp();
    }
    let val = sum + em_tail_from(n as f64, s);
    let est = em_tail_rem(n as f64, s) + 2e-15 * (1.0 + val.norm());
    Ok((val, est))
}

/// Globally convergent expansion of (s−1)ζ(s) in Σ_n n^{1−s}((1+1/n)^{−s}−1+s/n),
/// used only inside the guard disks where the η denominator vanishes.
fn zeta_string(s: Complex64, opts: &EvalOptions) -> Result<(Complex64, f64)> {
    let sigma = s.re;
    let t = s.im;
    // α_j = C(−s, j); the tail past N is Σ_{j≥2} α_j Σ_{n>N} n^{−(s+j−1)}
    let alphas = {
        let mut a = [Complex64::zero(); 9];
        a[2] = 0.5 * s * (s + 1.0);
        for j in 2..8 {
            a[j + 1] = -a[j] * (s + j as f64) / (j as f64 + 1.0);
        }
        a
    };
    let est_for = |n: u32| -> f64 {
        let m = (n + 1) as f64;
        let mut e = alphas[8].norm() * (s + 8.0).norm() / 9.0 * m.powf(-(sigma + 7.0));
        for (j, aj) in alphas.iter().enumerate().skip(2) {
            e += aj.norm() * em_tail_rem(m, s + (j as f64 - 1.0));
        }
        e + 2e-15 * (1.0 + s.norm())
    };
    let mut n = 0u32;
    let mut est = f64::INFINITY;
    for cand in [256u32, 512, 1024, 2048, 4096] {
        let cand = cand.min(opts.max_terms);
        n = cand;
        est = est_for(cand);
        if est <= 0.5 * opts.tol {
            break;
        }
    }
    if est > 0.5 * opts.tol && t <= 50.0 {
        return Err(Error::NonConvergence {
            what: "zeta fallback series",
            tol: opts.tol,
            best: est,
        });
    }
    let mut sum = Complex64::zero();
    for k in 1..=n {
        let nf = k as f64;
        let u = 1.0 / nf;
        let g = cexpm1(-s * u.ln_1p()) + s * u;
        sum += ((1.0 - s) * nf.ln()).exp() * g;
    }
    let mut tail = Complex64::zero();
    for (j, aj) in alphas.iter().enumerate().skip(2) {
        tail += aj * em_tail_from((n + 1) as f64, s + (j as f64 - 1.0));
    }
    let denom = s - 1.0;
    Ok(((sum + tail) / denom, est / denom.norm()))
}

fn zeta_strip(s: Complex64, opts: &EvalOptions) -> Result<(Complex64, f64)> {
    // zeros of 1 − 2^{1−s} on the line Re s = 1
    let k = (s.im * LN_2 / TAU).round();
    if k >= 1.0 {
        let sk = Complex64::new(1.0, TAU * k / LN_2);
        if (s - sk).norm() < opts.eta_singularity_guard {
            return zeta_string(s, opts);
        }
    }
    let denom = -cexpm1((1.0 - s) * LN_2);
    let dn = denom.norm();
    let (ev, ee) = eta_with_err(s, opts, opts.tol * dn * 0.5)?;
    let val = ev / denom;
    Ok((val, (ee + 2.3e-16 * ev.norm()) / dn))
}

fn zeta_reflect(s: Complex64, opts: &EvalOptions) -> Result<(Complex64, f64)> {
    // ζ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s) ζ(1−s)
    let w = 1.0 - s;
    let (zw, zw_err) = zeta_with_err(w, opts)?;
    let t = s.im;
    let (val, err) = if t <= 300.0 && s.re >= -140.0 {
        let chi = (s * LN_2).exp()
            * ((s - 1.0) * LN_PI).exp()
            * (s * (0.5 * PI)).sin()
            * log_gamma(w)?.exp();
        let val = chi * zw;
        (val, chi.norm() * zw_err + val.norm() * 2e-14)
    } else {
        // assemble in logs where sin and Γ overflow individually
        let ln_chi = s * LN_2 + (s - 1.0) * LN_PI + ln_sin_pi(0.5 * s) + log_gamma(w)?;
        let val = (ln_chi + zw.ln()).exp();
        (val, val.norm() * (zw_err / zw.norm() + 5e-14))
    };
    if !val.re.is_finite() || !val.im.is_finite() {
        return Err(Error::Domain {
            what: "zeta",
            detail: format!("overflow in the reflected value at s = {s}"),
        });
    }
    Ok((val, err))
}

pub(crate) fn zeta_with_err(s: Complex64, opts: &EvalOptions) -> Result<(Complex64, f64)> {
    opts.validate()?;
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::Domain {
            what: "zeta",
            detail: format!("non-finite argument {s}"),
        });
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::PoleAtOne);
    }
    if s.im < 0.0 {
        let (v, e) = zeta_with_err(s.conj(), opts)?;
        return Ok((v.conj(), e));
    }
    if s == Complex64::zero() {
        return Ok((Complex64::new(-0.5, 0.0), 1e-16));
    }
    if s.re > 1.5 {
        zeta_direct(s, opts)
    } else if s.re > 0.0 {
        zeta_strip(s, opts)
    } else {
        // deep trivial zeros: the log-assembled reflection cannot represent
        // ln 0, so return them exactly
        if s.im == 0.0 && s.re <= -100.0 && s.re.fract() == 0.0 && (s.re as i64) % 2 == 0 {
            return Ok((Complex64::zero(), 0.0));
        }
        zeta_reflect(s, opts)
    }
}

/// Riemann zeta function, continued to all s ≠ 1.
pub fn zeta(s: Complex64, opts: &EvalOptions) -> Result<Complex64> {
    let (val, est) = zeta_with_err(s, opts)?;
    degradation_guard("zeta", val, est, opts.tol)?;
    Ok(val)
}

// ---------------------------------------------------------------------------

/// Truncated Euler product Π_{p ≤ p_max} (1 − p^{−s})^{−1}; requires Re s > 1.
pub fn euler_product(s: Complex64, p_max: u64) -> Result<Complex64> {
    if !(s.re > 1.0) {
        return Err(Error::Domain {
            what: "euler_product",
            detail: format!("requires Re s > 1, got {}", s.re),
        });
    }
    if p_max < 2 {
        return Err(Error::Domain {
            what: "euler_product",
            detail: "p_max must be at least 2".into(),
        });
    }
    let sieve = PrimeSieve::new(p_max)?;
    let mut prod = Complex64::new(1.0, 0.0);
    for p in sieve.primes() {
        prod /= 1.0 - (-s * (p as f64).ln()).exp();
    }
    Ok(prod)
}

/// Completed zeta ξ(s) = (s−1) π^{−s/2} Γ(1 + s/2) ζ(s), entire, with
/// ξ(0) = ξ(1) = 1/2.
pub fn xi(s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Ok(Complex64::new(0.5, 0.0));
    }
    // at the trivial zeros Γ(1+s/2) poles against ζ's zero; use the
    // reflected argument where both factors are tame
    if s.im == 0.0 && s.re < 0.0 && s.re.fract() == 0.0 && (s.re as i64) % 2 == 0 {
        return xi(1.0 - s);
    }
    let opts = EvalOptions {
        tol: 1e-13,
        ..EvalOptions::default()
    };
    let z = zeta(s, &opts)?;
    let g = log_gamma(1.0 + 0.5 * s)?.exp();
    Ok((s - 1.0) * (-0.5 * s * LN_PI).exp() * g * z)
}

/// Ξ(t) = ξ(1/2 + it), real for real t.
pub fn xi_big(t: f64) -> Result<f64> {
    let v = xi(Complex64::new(0.5, t))?;
    let bound = 1e-10 * (1.0 + v.re.abs());
    if v.im.abs() > bound {
        return Err(Error::Consistency {
            what: "xi_big",
            residual: v.im.abs(),
        });
    }
    Ok(v.re)
}

/// Ξ(t) through the theta-sum integral
/// Ξ(t) = 1/2 − (t² + 1/4) ∫₀^∞ 2 ψ(e^{2v}) e^{v/2} cos(tv) dv.
pub fn xi_big_integral(t: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Domain {
            what: "xi_big_integral",
            detail: "tolerance must be positive".into(),
        });
    }
    let scale = t * t + 0.25;
    let q_tol = tol.max(1e-9) * 0.05 / scale;
    // ψ(e^{2v}) ~ exp(−π e^{2v}): integrand below 1e-30 past v = 1.6
    let integrand = |v: f64| {
        let x = (2.0 * v).exp();
        2.0 * special_fn::jacobi_psi(x, 1e-15).expect("x >= 1 on the path")
            * (0.5 * v).exp()
            * (t * v).cos()
    };
    let i = quad::integrate(integrand, 0.0, 1.6, q_tol)?;
    Ok(0.5 - scale * i)
}

/// Ξ(t) as a Fourier cosine transform: Ξ(t) = 8 ∫₀^∞ Φ(u) cos(2ut) du with
/// Φ(u) = Σ_n πn²(2πn²e^{4u} − 3) e^{5u − πn²e^{4u}} = 2e^{3u}·W(e^{4u}),
/// W the weighted theta-derivative sum.
pub fn xi_big_fourier(t: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Domain {
            what: "xi_big_fourier",
            detail: "tolerance must be positive".into(),
        });
    }
    let q_tol = tol.max(1e-9) / 160.0;
    let integrand = |u: f64| {
        let phi = 2.0 * (3.0 * u).exp()
            * special_fn::jacobi_psi_weighted_deriv((4.0 * u).exp(), 1e-15)
                .expect("x >= 1 on the path");
        phi * (2.0 * u * t).cos()
    };
    // Φ(u) ~ exp(5u − πe^{4u}) is below 1e-60 past u = 1.1
    let i = quad::integrate(integrand, 0.0, 1.1, q_tol)?;
    Ok(8.0 * i)
}

/// ζ(s) rebuilt from paired nontrivial zeros:
/// π^{s/2} / (2(s−1)Γ(1+s/2)) · Π_k (1 + s(s−1)/(t_k² + 1/4)).
pub fn hadamard_zeta(s: Complex64, zeros: &ZeroTable) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::PoleAtOne);
    }
    if zeros.zeros.is_empty() {
        return Err(Error::EmptyZeroTable);
    }
    let w = s * (s - 1.0);
    let mut prod = Complex64::new(1.0, 0.0);
    for z in &zeros.zeros {
        prod *= 1.0 + w / (z.t * z.t + 0.25);
    }
    let g = log_gamma(1.0 + 0.5 * s)?.exp();
    Ok((0.5 * s * LN_PI).exp() / (2.0 * (s - 1.0) * g) * prod)
}

/// ξ(s) rebuilt from paired zeros: ξ(s) = 1/2 Π_k (1 + s(s−1)/(t_k² + 1/4)).
pub fn xi_product(s: Complex64, zeros: &ZeroTable) -> Result<Complex64> {
    if zeros.zeros.is_empty() {
        return Err(Error::EmptyZeroTable);
    }
    let w = s * (s - 1.0);
    let mut prod = Complex64::new(0.5, 0.0);
    for z in &zeros.zeros {
        prod *= 1.0 + w / (z.t * z.t + 0.25);
    }
    Ok(prod)
}
