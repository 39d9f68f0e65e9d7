//! The analytic side of the explicit formulas: logarithmic integrals, the
//! zero sums for Π(x) and ψ(x), Möbius assembly of π(x), and staircase
//! comparison reports.

use num_complex::Complex64;

use crate::critical_line::ZeroTable;
use crate::numfmt::format_significant;
use crate::prime_arith::{big_pi, chebyshev_psi, mobius, mobius_invert_pi, PrimeSieve};
use crate::quad;
use crate::special_fn::exp_integral_ei;
use crate::{Error, Result};

const LN_2: f64 = std::f64::consts::LN_2;
const TAU: f64 = std::f64::consts::TAU;

/// Principal-value logarithmic integral li(x) = PV ∫₀^x dt/ln t = Ei(ln x).
/// Real for all x > 0 away from the x = 1 singularity.
pub fn li(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "li",
            detail: format!("requires finite x > 0, got {x}"),
        });
    }
    if (x - 1.0).abs() < 1e-12 {
        return Err(Error::SingularArgument);
    }
    Ok(exp_integral_ei(Complex64::new(x.ln(), 0.0))?.re)
}

/// Li(x^ρ) on the principal branch, i.e. Ei(ρ ln x). Satisfies
/// li_complex(x, conj ρ) = conj li_complex(x, ρ), so conjugate zero pairs sum
/// to 2·Re and the explicit formula stays real.
pub fn li_complex(x: f64, rho: Complex64) -> Result<Complex64> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "li_complex",
            detail: format!("requires finite x > 1, got {x}"),
        });
    }
    if rho.im == 0.0 || !rho.is_finite() {
        return Err(Error::Domain {
            what: "li_complex",
            detail: "rho must be finite with Im rho != 0".into(),
        });
    }
    exp_integral_ei(rho * x.ln())
}

/// ∫_x^∞ dt/(t(t²−1) ln t), the positive remainder in Riemann's Π formula.
/// Substituting t = e^u turns it into ∫_{ln x}^∞ du/((e^{2u}−1)u), which is
/// cut off once the integrand drops below the requested tolerance.
pub fn tail_integral(x: f64, tol: f64) -> Result<f64> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "tail_integral",
            detail: format!("requires finite x > 1, got {x}"),
        });
    }
    if !(tol > 0.0) {
        return Err(Error::Domain {
            what: "tail_integral",
            detail: "tol must be positive".into(),
        });
    }
    let a = x.ln();
    let mut b = (a + 1.0).max(16.0);
    // truncated piece is below (e^{-2b}/(1 - e^{-2b})) / 2b
    while (-2.0 * b).exp() / (2.0 * b * (-(-2.0 * b).exp_m1())) > 0.25 * tol {
        b += 4.0;
    }
    quad::integrate(|u| 1.0 / ((2.0 * u).exp_m1() * u), a, b, 0.5 * tol)
}

/// One explicit-formula evaluation split into its three ingredients;
/// `value` is exactly their sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExplicitResult {
    pub value: f64,
    pub n_zero_pairs: usize,
    pub smooth_part: f64,
    pub oscillatory_part: f64,
    pub tail_part: f64,
}

impl ExplicitResult {
    fn assemble(smooth: f64, osc: f64, tail: f64, pairs: usize) -> ExplicitResult {
        ExplicitResult {
            value: smooth + osc + tail,
            n_zero_pairs: pairs,
            smooth_part: smooth,
            oscillatory_part: osc,
            tail_part: tail,
        }
    }
}

/// Riemann's formula Π(x) = li(x) − Σ_ρ [Li(x^ρ) + Li(x^{1−ρ})] − ln 2
/// + ∫_x^∞ dt/(t(t²−1) ln t), truncated after the zero pairs in `zeros`.
///
/// Pairs are summed in increasing ordinate with no smoothing factors; each
/// contributes −2·Re Li(x^ρ), so the result is real by construction.
pub fn riemann_big_pi_explicit(x: f64, zeros: &ZeroTable) -> Result<ExplicitResult> {
    if !(x > 2.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "riemann_big_pi_explicit",
            detail: format!("requires finite x > 2, got {x}"),
        });
    }
    if zeros.is_empty() {
        return Err(Error::EmptyZeroTable);
    }
    let smooth = li(x)? - LN_2;
    let tail = tail_integral(x, 1e-12)?;
    let mut osc = 0.0;
    for z in &zeros.zeros {
        osc -= 2.0 * li_complex(x, Complex64::new(0.5, z.t))?.re;
    }
    Ok(ExplicitResult::assemble(smooth, osc, tail, zeros.len()))
}

/// Von Mangoldt's formula ψ(x) = x − Σ_ρ x^ρ/ρ − ln 2π − ½ln(1 − x^{−2}).
/// An empty table gives the pure smooth part. Each pair contributes
/// −2√x (cos φ / 2 + t sin φ)/(1/4 + t²) with φ = t ln x, assembled in real
/// arithmetic.
pub fn von_mangoldt_psi_explicit(x: f64, zeros: &ZeroTable) -> Result<ExplicitResult> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "von_mangoldt_psi_explicit",
            detail: format!("requires finite x > 1, got {x}"),
        });
    }
    let lx = x.ln();
    let smooth = x - TAU.ln() - 0.5 * (-x.powi(-2)).ln_1p();
    let rx = x.sqrt();
    let mut osc = 0.0;
    for z in &zeros.zeros {
        let phi = z.t * lx;
        osc -= 2.0 * rx * (0.5 * phi.cos() + z.t * phi.sin()) / (0.25 + z.t * z.t);
    }
    Ok(ExplicitResult::assemble(smooth, osc, 0.0, zeros.len()))
}

/// Möbius assembly π(x) = Σ_n μ(n)/n · Π(x^{1/n}) with Π from the explicit
/// formula. Terms stop once x^{1/n} reaches 2 (Π vanishes below the first
/// prime) or after `n_terms` terms.
pub fn pi_explicit(x: f64, zeros: &ZeroTable, n_terms: u32) -> Result<f64> {
    if !(x > 2.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "pi_explicit",
            detail: format!("requires finite x > 2, got {x}"),
        });
    }
    if n_terms == 0 {
        return Err(Error::Domain {
            what: "pi_explicit",
            detail: "n_terms must be at least 1".into(),
        });
    }
    if zeros.is_empty() {
        return Err(Error::EmptyZeroTable);
    }
    let lx = x.ln();
    let mut sum = 0.0;
    for n in 1..=n_terms {
        let y = (lx / n as f64).exp();
        if y <= 2.0 + 1e-12 {
            break;
        }
        let mu = mobius(n as u64);
        if mu != 0 {
            sum += mu as f64 / n as f64 * riemann_big_pi_explicit(y, zeros)?.value;
        }
    }
    Ok(sum)
}

/// The pair-density summand: x^{ρ−1} + x^{−ρ} = 2 cos(α ln x)/√x for
/// ρ = 1/2 + iα.
pub fn density_term(x: f64, alpha: f64) -> Result<f64> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "density_term",
            detail: format!("requires finite x > 1, got {x}"),
        });
    }
    Ok(2.0 * (alpha * x.ln()).cos() / x.sqrt())
}

/// Which staircase a report row compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StaircaseKind {
    Psi,
    BigPi,
    Pi,
}

/// One comparison row: the exact staircase (midpoint convention at jumps)
/// against its truncated explicit formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaircaseSample {
    pub x: f64,
    pub exact: f64,
    pub approx: f64,
    pub n_zeros_used: usize,
}

/// If x sits within 1e-9 of an integer prime power, return that integer.
fn prime_power_near(x: f64) -> Option<f64> {
    let q = x.round();
    if !(q >= 2.0) || (x - q).abs() >= 1e-9 || q > 9.0e15 {
        return None;
    }
    let mut m = q as u64;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            return if m == 1 { Some(q) } else { None };
        }
        p += 1;
    }
    Some(q)
}

/// Compare one staircase against its explicit formula on a grid.
///
/// Exactly at a prime power the exact column takes the midpoint value (the
/// value the explicit formula converges to). A grid point merely close to a
/// jump (within 1e-9 but not equal) is nudged to 1e-9 away on its own side
/// so the comparison is not ill-posed; both columns use the nudged abscissa
/// while `x` reports the requested one.
pub fn staircase_report(
    kind: StaircaseKind,
    x_grid: &[f64],
    zeros: &ZeroTable,
    sieve: &PrimeSieve,
) -> Result<Vec<StaircaseSample>> {
    let mut rows = Vec::with_capacity(x_grid.len());
    for &x in x_grid {
        if !(x > 2.0) || !x.is_finite() {
            return Err(Error::Domain {
                what: "staircase_report",
                detail: format!("grid values must be finite and > 2, got {x}"),
            });
        }
        let x_eval = match prime_power_near(x) {
            Some(q) if x != q => q + 1e-9 * (x - q).signum(),
            _ => x,
        };
        let exact = match kind {
            StaircaseKind::Psi => chebyshev_psi(x_eval, sieve)?,
            StaircaseKind::BigPi => big_pi(x_eval, sieve)?,
            StaircaseKind::Pi => mobius_invert_pi(x_eval, sieve)?,
        };
        let approx = match kind {
            StaircaseKind::Psi => von_mangoldt_psi_explicit(x_eval, zeros)?.value,
            StaircaseKind::BigPi => riemann_big_pi_explicit(x_eval, zeros)?.value,
            StaircaseKind::Pi => pi_explicit(x_eval, zeros, 64)?,
        };
        rows.push(StaircaseSample {
            x,
            exact,
            approx,
            n_zeros_used: zeros.len(),
        });
    }
    Ok(rows)
}

/// CSV rows `x,exact,approx,n_zeros_used` at 15 significant digits, LF.
pub fn staircase_csv(samples: &[StaircaseSample]) -> String {
    let mut out = String::from("x,exact,approx,n_zeros_used\n");
    for s in samples {
        out.push_str(&format!(
            "{},{},{},{}\n",
            format_significant(s.x, 15),
            format_significant(s.exact, 15),
            format_significant(s.approx, 15),
            s.n_zeros_used
        ));
    }
    out
}

/// JSON array of objects with the same keys as the CSV columns.
pub fn staircase_json(samples: &[StaircaseSample]) -> String {
    let mut out = String::from("[");
    for (i, s) in samples.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!(
            "{{\"x\":{},\"exact\":{},\"approx\":{},\"n_zeros_used\":{}}}",
            format_significant(s.x, 15),
            format_significant(s.exact, 15),
            format_significant(s.approx, 15),
            s.n_zeros_used
        ));
    }
    out.push(']');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critical_line::ZeroOrdinate;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    // first ten zero ordinates, mpmath zetazero, 18 digits
    const T10: [f64; 10] = [
        14.1347251417346938,
        21.0220396387715550,
        25.0108575801456888,
        30.4248761258595132,
        32.9350615877391897,
        37.5861781588256713,
        40.9187190121474952,
        43.3270732809149995,
        48.0051508811671597,
        49.7738324776723022,
    ];

    fn table10() -> ZeroTable {
        ZeroTable {
            zeros: T10
                .iter()
                .enumerate()
                .map(|(i, &t)| ZeroOrdinate {
                    index: i as u32 + 1,
                    t,
                    err: 5e-11,
                })
                .collect(),
            t_max_scanned: 50.0,
        }
    }

    #[test]
    fn li_reference_values() {
        // mpmath li, 20 digits
        assert_relative_eq!(li(2.0).unwrap(), 1.0451637801174927848, max_relative = 1e-12);
        assert_relative_eq!(li(100.0).unwrap(), 30.126141584079629926, max_relative = 1e-12);
        // principal value continues below the singularity
        assert_relative_eq!(li(0.5).unwrap(), -0.37867104306108797673, max_relative = 1e-12);
        assert!(li(0.0).is_err());
        assert!(li(-3.0).is_err());
        assert!(matches!(li(1.0), Err(Error::SingularArgument)));
        assert!(matches!(li(1.0 + 5e-13), Err(Error::SingularArgument)));
    }

    #[test]
    fn li_complex_branch_and_symmetry() {
        let rho = Complex64::new(0.5, T10[0]);
        // mpmath ei(rho ln 100), 20 digits
        let v = li_complex(100.0, rho).unwrap();
        assert_relative_eq!(v.re, 0.11643673635452651213, max_relative = 1e-11);
        assert_relative_eq!(v.im, 3.2417081406023999473, max_relative = 1e-11);
        let w = li_complex(100.0, rho.conj()).unwrap();
        assert_eq!(w, v.conj());
        // at x = e the argument is rho itself
        let x = std::f64::consts::E;
        let direct = exp_integral_ei(rho).unwrap();
        let through = li_complex(x, rho).unwrap();
        assert_relative_eq!(through.re, direct.re, max_relative = 1e-12);
        assert_relative_eq!(through.im, direct.im, max_relative = 1e-12);
        // asymptotic size: past the +i pi branch offset, |Ei| <= 2 sqrt(x)/|rho ln x|
        let stripped = li_complex(10.0, rho).unwrap() - Complex64::new(0.0, std::f64::consts::PI);
        assert!(stripped.norm() <= 2.0 * 10f64.sqrt() / (rho * 10f64.ln()).norm());
        assert!(li_complex(1.0, rho).is_err());
        assert!(li_complex(10.0, Complex64::new(0.5, 0.0)).is_err());
    }

    #[test]
    fn tail_integral_values() {
        // mpmath quadrature, 20 digits
        assert_relative_eq!(
            tail_integral(2.0, 1e-12).unwrap(),
            0.14001010114328692669,
            max_relative = 1e-9
        );
        assert_relative_eq!(
            tail_integral(3.0, 1e-12).unwrap(),
            0.039883342616871506283,
            max_relative = 1e-9
        );
        assert_relative_eq!(
            tail_integral(10.0, 1e-12).unwrap(),
            0.0018396869464931643059,
            max_relative = 1e-9
        );
        let t100 = tail_integral(100.0, 1e-12).unwrap();
        assert_abs_diff_eq!(t100, 9.8756702628934165786e-6, epsilon = 1e-12);
        assert!(t100 > 0.0 && t100 < 2e-5);
        // monotone decreasing in x
        assert!(tail_integral(2.0, 1e-12).unwrap() > tail_integral(3.0, 1e-12).unwrap());
        assert!(tail_integral(3.0, 1e-12).unwrap() > tail_integral(10.0, 1e-12).unwrap());
        assert!(tail_integral(1.0, 1e-12).is_err());
        assert!(tail_integral(10.0, 0.0).is_err());
    }

    #[test]
    fn big_pi_explicit_at_100() {
        let zeros = table10();
        let r = riemann_big_pi_explicit(100.0, &zeros).unwrap();
        // mpmath evaluation of the truncated formula with these ten pairs
        assert_relative_eq!(r.value, 28.749330240137429627, max_relative = 1e-10);
        assert_relative_eq!(
            r.oscillatory_part,
            -0.68367403905251788289,
            max_relative = 1e-9
        );
        assert_eq!(r.n_zero_pairs, 10);
        assert_eq!(r.value, r.smooth_part + r.oscillatory_part + r.tail_part);
        assert_relative_eq!(
            r.smooth_part,
            30.126141584079629926 - LN_2,
            max_relative = 1e-12
        );
        assert_relative_eq!(r.tail_part, 9.8756702628934165786e-6, max_relative = 1e-6);
        // ten pairs already land within half a unit of Pi(100) = 428/15
        assert!((r.value - 28.533333333333333).abs() < 0.5);
        assert!(riemann_big_pi_explicit(2.0, &zeros).is_err());
        assert!(matches!(
            riemann_big_pi_explicit(100.0, &ZeroTable::default()),
            Err(Error::EmptyZeroTable)
        ));
    }

    #[test]
    fn psi_explicit_values() {
        let empty = ZeroTable::default();
        let smooth = von_mangoldt_psi_explicit(100.0, &empty).unwrap();
        // x - ln 2 pi - ln(1 - x^-2)/2 at 20 digits
        assert_relative_eq!(smooth.value, 98.162172936090821196, max_relative = 1e-12);
        assert_eq!(smooth.n_zero_pairs, 0);
        assert_eq!(smooth.oscillatory_part, 0.0);
        assert_eq!(smooth.tail_part, 0.0);
        let near2 = von_mangoldt_psi_explicit(2.5, &empty).unwrap();
        assert_relative_eq!(near2.value, 0.74929962716304339279, max_relative = 1e-12);
        let r = von_mangoldt_psi_explicit(100.0, &table10()).unwrap();
        assert_relative_eq!(r.value, 95.040341173657816095, max_relative = 1e-10);
        assert_eq!(r.value, r.smooth_part + r.oscillatory_part + r.tail_part);
        assert!(von_mangoldt_psi_explicit(1.0, &empty).is_err());
    }

    #[test]
    fn pi_explicit_values() {
        let zeros = table10();
        // mpmath assembly with the same ten pairs
        assert_relative_eq!(
            pi_explicit(100.0, &zeros, 64).unwrap(),
            25.281317242332830491,
            max_relative = 1e-9
        );
        assert_relative_eq!(
            pi_explicit(30.0, &zeros, 64).unwrap(),
            9.9394862056615295712,
            max_relative = 1e-9
        );
        assert_eq!(pi_explicit(100.0, &zeros, 64).unwrap().round(), 25.0);
        // a single term is the plain big-Pi value
        let one = pi_explicit(100.0, &zeros, 1).unwrap();
        assert_eq!(one, riemann_big_pi_explicit(100.0, &zeros).unwrap().value);
        assert!(pi_explicit(2.0, &zeros, 64).is_err());
        assert!(pi_explicit(100.0, &zeros, 0).is_err());
        assert!(pi_explicit(100.0, &ZeroTable::default(), 64).is_err());
    }

    #[test]
    fn density_identity() {
        for &x in &[3.0, 10.0, 100.0] {
            for &alpha in &[0.0, 14.134725, 30.0] {
                let rho = Complex64::new(0.5, alpha);
                let lhs = Complex64::new(x, 0.0).powc(rho - 1.0)
                    + Complex64::new(x, 0.0).powc(-rho);
                let rhs = density_term(x, alpha).unwrap();
                assert_abs_diff_eq!(lhs.re, rhs, epsilon = 1e-12);
                assert_abs_diff_eq!(lhs.im, 0.0, epsilon = 1e-12);
            }
        }
        assert_relative_eq!(
            density_term(100.0, 0.0).unwrap(),
            0.2,
            max_relative = 1e-14
        );
        // cos hits 1 when alpha ln x = 2 pi
        let alpha = 14.134725;
        let x = (TAU / alpha).exp();
        assert_relative_eq!(
            density_term(x, alpha).unwrap(),
            2.0 / x.sqrt(),
            max_relative = 1e-12
        );
        assert!(density_term(1.0, 14.0).is_err());
    }

    #[test]
    fn staircase_rows_and_serialization() {
        let sieve = PrimeSieve::new(200).unwrap();
        let zeros = table10();
        let rows = staircase_report(StaircaseKind::Psi, &[10.0, 50.0, 100.0], &zeros, &sieve)
            .unwrap();
        assert_eq!(rows.len(), 3);
        for r in &rows {
            assert_eq!(r.n_zeros_used, 10);
            assert!((r.exact - r.approx).abs() < 2.0);
        }
        // exactly on a prime power the exact column is the midpoint value
        let at8 = staircase_report(StaircaseKind::Psi, &[8.0], &zeros, &sieve).unwrap();
        assert_eq!(at8[0].exact, chebyshev_psi(8.0, &sieve).unwrap());
        // just off the jump the abscissa is nudged to 1e-9 away
        let near8 = staircase_report(StaircaseKind::Psi, &[8.0 + 1e-10], &zeros, &sieve).unwrap();
        assert_eq!(near8[0].exact, chebyshev_psi(8.0 + 1e-9, &sieve).unwrap());
        assert_eq!(near8[0].x, 8.0 + 1e-10);
        let empty = staircase_report(StaircaseKind::BigPi, &[], &zeros, &sieve).unwrap();
        assert!(empty.is_empty());
        assert!(staircase_report(StaircaseKind::Pi, &[2.0], &zeros, &sieve).is_err());

        let csv = staircase_csv(&rows);
        assert!(csv.starts_with("x,exact,approx,n_zeros_used\n"));
        assert_eq!(csv.lines().count(), 4);
        let json = staircase_json(&rows);
        assert!(json.starts_with("[{\"x\":10"));
        assert!(json.ends_with("}]"));
        assert_eq!(json.matches("\"exact\":").count(), 3);
        assert_eq!(staircase_json(&[]), "[]");
    }

    #[test]
    fn explicit_psi_tracks_staircase_off_jumps() {
        let sieve = PrimeSieve::new(2000).unwrap();
        let zeros = table10();
        // off prime powers, ten pairs keep psi within ~1 on desk scale
        for &x in &[10.5, 37.3, 101.5, 500.5, 997.5] {
            let exact = chebyshev_psi(x, &sieve).unwrap();
            let approx = von_mangoldt_psi_explicit(x, &zeros).unwrap().value;
            assert!(
                (exact - approx).abs() < 3.5,
                "x={x}: exact {exact}, approx {approx}"
            );
        }
    }
}
