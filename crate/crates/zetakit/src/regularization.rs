//! Zeta-function regularization of the parallel-plate vacuum energy: the
//! spectral zeta function of the plate geometry, its derivative at zero, and
//! the Casimir energy and force. Units are ħ = c = 1; [`HBAR_C`] restores SI
//! only at display time.

use num_complex::Complex64;

use crate::special_fn::log_gamma;
use crate::zeta_engine::{zeta, EvalOptions};
use crate::{Error, Result};

const PI: f64 = std::f64::consts::PI;

/// ħc in joule·meters, for formatting results in SI units. Display only; no
/// computation in this module depends on it.
pub const HBAR_C: f64 = 3.1615267734966903e-26;

/// Parallel-plate geometry: separation `a` and plate area `area`, both in the
/// same length unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirConfig {
    pub a: f64,
    pub area: f64,
}

impl CasimirConfig {
    pub fn new(a: f64, area: f64) -> Result<CasimirConfig> {
        if !(a > 0.0) || !a.is_finite() || !(area > 0.0) || !area.is_finite() {
            return Err(Error::Domain {
                what: "CasimirConfig",
                detail: format!("requires finite a > 0 and area > 0, got a={a}, area={area}"),
            });
        }
        Ok(CasimirConfig { a, area })
    }
}

fn zeta_opts() -> EvalOptions {
    EvalOptions {
        tol: 1e-13,
        ..EvalOptions::default()
    }
}

/// Spectral zeta function of the plate operator per unit A·T_E:
/// (4π/(2π)³)(π/a)^{3−2s} ζ(2s−3) Γ(3/2) Γ(s−3/2) / Γ(s).
///
/// The factor of two for the photon polarizations is baked into this closed
/// form; a single scalar field would halve it. Vanishes at nonpositive
/// integers through 1/Γ(s); the ζ pole (s = 2) and the poles of Γ(s−3/2)
/// surface as errors.
pub fn operator_zeta(s: Complex64, cfg: &CasimirConfig) -> Result<Complex64> {
    CasimirConfig::new(cfg.a, cfg.area)?;
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::Domain {
            what: "operator_zeta",
            detail: format!("non-finite argument {s}"),
        });
    }
    if s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let z = zeta(2.0 * s - 3.0, &zeta_opts())?;
    let lg_half = log_gamma(Complex64::new(1.5, 0.0))?;
    let lg_ratio = log_gamma(s - 1.5)? - log_gamma(s)?;
    let scale = (1.0 / (2.0 * PI * PI)) * Complex64::new(PI / cfg.a, 0.0).powc(3.0 - 2.0 * s);
    Ok(scale * z * (lg_half + lg_ratio).exp())
}

/// d/ds ζ_A(s) at s = 0, per unit A·T_E. Since ζ_A(0) = 0 through 1/Γ and
/// (1/Γ)′(0) = 1, this is the remaining factor at s = 0:
/// (1/2π²)(π/a)³ ζ(−3) Γ(3/2) Γ(−3/2) = π²/(360 a³).
pub fn operator_zeta_prime_at_zero(cfg: &CasimirConfig) -> Result<f64> {
    CasimirConfig::new(cfg.a, cfg.area)?;
    let zm3 = zeta(Complex64::new(-3.0, 0.0), &zeta_opts())?.re;
    let gg = (log_gamma(Complex64::new(1.5, 0.0))? + log_gamma(Complex64::new(-1.5, 0.0))?)
        .exp()
        .re;
    Ok((1.0 / (2.0 * PI * PI)) * (PI / cfg.a).powi(3) * zm3 * gg)
}

/// Regularized vacuum energy displacement ε(a) = −½ ζ_A′(0) · A
/// = −π² A/(720 a³). Negative: the plates attract.
pub fn casimir_energy(cfg: &CasimirConfig) -> Result<f64> {
    Ok(-0.5 * operator_zeta_prime_at_zero(cfg)? * cfg.area)
}

/// Force per unit plate area, −∂(ε/A)/∂a = −π²/(240 a⁴).
pub fn casimir_force_per_area(a: f64) -> Result<f64> {
    let cfg = CasimirConfig::new(a, 1.0)?;
    Ok(3.0 * casimir_energy(&cfg)? / a)
}

/// det A := exp[−ζ_A′(0)] for a finite positive spectrum, where the spectral
/// zeta sum gives ζ_A′(0) = −Σ ln λ; so this is Π λ assembled through the
/// same logarithmic path the regularized determinant uses.
pub fn spectral_det_finite(eigenvalues: &[f64]) -> Result<f64> {
    let mut log_sum = 0.0;
    for &lambda in eigenvalues {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::Domain {
                what: "spectral_det_finite",
                detail: format!("eigenvalues must be finite and positive, got {lambda}"),
            });
        }
        log_sum += lambda.ln();
    }
    Ok(log_sum.exp())
}
