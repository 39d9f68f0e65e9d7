//! The critical line: Riemann–Siegel theta, the real rotation Z(t), zero
//! scanning with bisection refinement, and density-formula verification of
//! the zero count.

use num_complex::Complex64;

use crate::numfmt::format_significant;
use crate::special_fn::log_gamma;
use crate::zeta_engine::{zeta, EvalOptions};
use crate::{Error, Result};

const PI: f64 = std::f64::consts::PI;
const TAU: f64 = std::f64::consts::TAU;
const LN_PI: f64 = 1.1447298858494002;
/// Grid pitch for scanning and phase tracking. Below the minimal zero gap
/// (≈0.42) everywhere in the desk-scale range.
pub const DEFAULT_SCAN_STEP: f64 = 0.05;

fn z_opts() -> EvalOptions {
    EvalOptions {
        tol: 1e-11,
        max_terms: 8192,
        ..EvalOptions::default()
    }
}

/// A refined zero ordinate: ρ = 1/2 + it with Z changing sign across
/// [t − err, t + err].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroOrdinate {
    /// 1-based position in the table.
    pub index: u32,
    pub t: f64,
    /// Bisection half-width.
    pub err: f64,
}

/// Ordered zero ordinates plus the upper edge of the range they were
/// scanned from.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ZeroTable {
    pub zeros: Vec<ZeroOrdinate>,
    pub t_max_scanned: f64,
}

impl ZeroTable {
    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    /// Number of tabulated zeros with ordinate ≤ t.
    pub fn count_up_to(&self, t: f64) -> usize {
        self.zeros.partition_point(|z| z.t <= t)
    }

    /// The first `k` zeros as their own table.
    pub fn head(&self, k: usize) -> ZeroTable {
        let zeros: Vec<ZeroOrdinate> = self.zeros.iter().take(k).copied().collect();
        let t_max_scanned = zeros.last().map_or(0.0, |z| z.t);
        ZeroTable {
            zeros,
            t_max_scanned,
        }
    }

    /// CSV serialization: header `index,t,err`, 15 significant digits, LF.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,t,err\n");
        for z in &self.zeros {
            out.push_str(&format!(
                "{},{},{}\n",
                z.index,
                format_significant(z.t, 15),
                format_significant(z.err, 15)
            ));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<ZeroTable> {
        if text.contains('\r') {
            return Err(Error::CacheCorrupt(
                "expected LF line endings, found CR".into(),
            ));
        }
        let mut lines = text.lines();
        match lines.next() {
            Some("index,t,err") => {}
            other => {
                return Err(Error::CacheCorrupt(format!(
                    "bad header {:?}",
                    other.unwrap_or("")
                )))
            }
        }
        let mut zeros = Vec::new();
        for (i, line) in lines.enumerate() {
            if line.is_empty() {
                return Err(Error::CacheCorrupt(format!("empty line {}", i + 2)));
            }
            let mut fields = line.split(',');
            let (idx, t, err) = match (fields.next(), fields.next(), fields.next(), fields.next())
            {
                (Some(a), Some(b), Some(c), None) => (a, b, c),
                _ => {
                    return Err(Error::CacheCorrupt(format!(
                        "line {}: expected 3 fields",
                        i + 2
                    )))
                }
            };
            let index: u32 = idx
                .parse()
                .map_err(|_| Error::CacheCorrupt(format!("line {}: bad index {idx:?}", i + 2)))?;
            if index as usize != i + 1 {
                return Err(Error::CacheCorrupt(format!(
                    "line {}: index {} out of order",
                    i + 2,
                    index
                )));
            }
            let t: f64 = t
                .parse()
                .map_err(|_| Error::CacheCorrupt(format!("line {}: bad t {t:?}", i + 2)))?;
            let err: f64 = err
                .parse()
                .map_err(|_| Error::CacheCorrupt(format!("line {}: bad err {err:?}", i + 2)))?;
            if !t.is_finite() || t <= 0.0 || !err.is_finite() || err < 0.0 {
                return Err(Error::CacheCorrupt(format!(
                    "line {}: out-of-range values",
                    i + 2
                )));
            }
            if let Some(prev) = zeros.last() {
                let prev: &ZeroOrdinate = prev;
                if t <= prev.t {
                    return Err(Error::CacheCorrupt(format!(
                        "line {}: ordinates not increasing",
                        i + 2
                    )));
                }
            }
            zeros.push(ZeroOrdinate { index, t, err });
        }
        let t_max_scanned = zeros.last().map_or(0.0, |z| z.t);
        Ok(ZeroTable {
            zeros,
            t_max_scanned,
        })
    }
}

/// Asymptotic theta: (t/2)ln(t/2π) − t/2 − π/8 + 1/(48t). Error is
/// O(t^{−3})-class (next term 7/5760t³); fine for t ≥ 10.
pub fn theta_rs(t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain {
            what: "theta_rs",
            detail: format!("requires t > 0, got {t}"),
        });
    }
    Ok(0.5 * t * (t / TAU).ln() - 0.5 * t - PI / 8.0 + 1.0 / (48.0 * t))
}

/// θ(t) = Im ln Γ(1/4 + it/2) − (t/2) ln π, odd in t.
pub fn theta_exact(t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::Domain {
            what: "theta_exact",
            detail: "t must be finite".into(),
        });
    }
    let lg = log_gamma(Complex64::new(0.25, 0.5 * t))?;
    Ok(lg.im - 0.5 * t * LN_PI)
}

/// Hardy's Z(t) = e^{iθ(t)} ζ(1/2 + it), real on the real line with
/// |Z(t)| = |ζ(1/2 + it)|; its sign changes are the zeros on the line.
/// Uses the exact θ throughout: the asymptotic θ's truncation error would
/// leak into the imaginary residual and trip the consistency gate below
/// t ≈ 40.
pub fn z_function(t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::Domain {
            what: "z_function",
            detail: "t must be finite".into(),
        });
    }
    let theta = theta_exact(t)?;
    let z = Complex64::new(0.0, theta).exp() * zeta(Complex64::new(0.5, t), &z_opts())?;
    if z.im.abs() > 1e-8 * (1.0 + z.re.abs()) {
        return Err(Error::Consistency {
            what: "z_function",
            residual: z.im.abs(),
        });
    }
    Ok(z.re)
}

fn bisect_zero(mut a: f64, mut b: f64, mut za: f64, tol: f64) -> Result<ZeroOrdinate> {
    for _ in 0..60 {
        if 0.5 * (b - a) <= 0.9 * tol {
            break;
        }
        let m = 0.5 * (a + b);
        let zm = z_function(m)?;
        if za * zm <= 0.0 {
            b = m;
        } else {
            a = m;
            za = zm;
        }
    }
    Ok(ZeroOrdinate {
        index: 0,
        t: 0.5 * (a + b),
        err: 0.5 * (b - a),
    })
}

/// Scan [t_min, t_max] for sign changes of Z on a fixed grid and refine each
/// bracket by bisection to half-width ≤ tol.
///
/// When the range starts below the first zero ordinate the finished table is
/// checked against the counting formula; a failed check (a close pair hiding
/// inside one grid step) surfaces as an error rather than a silently short
/// table. Ranges starting above t = 14 cannot be counted from below and skip
/// that check.
pub fn find_zeros(t_min: f64, t_max: f64, step: f64, tol: f64) -> Result<ZeroTable> {
    if !(t_min > 0.0) || !(t_max >= t_min) || !t_max.is_finite() {
        return Err(Error::Domain {
            what: "find_zeros",
            detail: format!("requires 0 < t_min <= t_max, got [{t_min}, {t_max}]"),
        });
    }
    if !(step > 0.0) || !(tol > 0.0) {
        return Err(Error::Domain {
            what: "find_zeros",
            detail: "step and tol must be positive".into(),
        });
    }
    let mut zeros = Vec::new();
    if t_max > t_min {
        let n_steps = ((t_max - t_min) / step).ceil() as u64;
        let mut prev_t = t_min;
        let mut prev_z = z_function(prev_t)?;
        for i in 1..=n_steps {
            let cur_t = if i == n_steps {
                t_max
            } else {
                t_min + i as f64 * step
            };
            let cur_z = z_function(cur_t)?;
            if prev_z == 0.0 {
                zeros.push(ZeroOrdinate {
                    index: 0,
                    t: prev_t,
                    err: 0.0,
                });
            } else if prev_z * cur_z < 0.0 {
                zeros.push(bisect_zero(prev_t, cur_t, prev_z, tol)?);
            }
            prev_t = cur_t;
            prev_z = cur_z;
        }
        if prev_z == 0.0 {
            zeros.push(ZeroOrdinate {
                index: 0,
                t: prev_t,
                err: 0.0,
            });
        }
    }
    for (i, z) in zeros.iter_mut().enumerate() {
        z.index = i as u32 + 1;
    }
    let table = ZeroTable {
        zeros,
        t_max_scanned: t_max,
    };
    if t_min <= 14.0 && t_max > t_min {
        // pick a verification point where Z is comfortably nonzero
        let mut t_v = t_max;
        for _ in 0..8 {
            if z_function(t_v)?.abs() > 1e-6 {
                break;
            }
            t_v -= 0.5 * step;
        }
        let report = verify_count(&table, t_v)?;
        if !report.pass {
            return Err(Error::SuspectedMissedZeros {
                t: t_v,
                found: table.count_up_to(t_v),
                expected: report.predicted,
            });
        }
    }
    Ok(table)
}

/// Smoothed counting formula N(T) ≈ (T/2π) ln(T/2π) − T/2π + 7/8.
pub fn count_zeros_formula(t: f64) -> Result<f64> {
    if !(t >= 3.0) {
        return Err(Error::Domain {
            what: "count_zeros_formula",
            detail: format!("requires T >= 3, got {t}"),
        });
    }
    let x = t / TAU;
    Ok(x * x.ln() - x + 0.875)
}

/// Leading-order count (T/2π)(ln(T/2π) − 1), without the 7/8 constant.
pub fn count_zeros_asymptotic(t: f64) -> Result<f64> {
    Ok(count_zeros_formula(t)? - 0.875)
}

/// Outcome of checking a zero table against N(T) = θ(T)/π + 1 + S(T).
#[derive(Debug, Clone, PartialEq)]
pub struct CountReport {
    pub t: f64,
    /// Zeros in the table with ordinate ≤ t.
    pub table_count: usize,
    /// θ(t)/π + 1.
    pub main_term: f64,
    /// S(t) = (1/π) arg ζ(1/2+it), tracked by phase continuity from t = 0.
    pub s_estimate: f64,
    /// main_term + s_estimate; an integer up to estimation noise.
    pub predicted: f64,
    pub pass: bool,
}

/// Compare a scanned table against the exact counting formula
/// N(T) = θ(T)/π + 1 + (1/π) arg ζ(1/2 + iT).
///
/// The arg term is accumulated by continuity along a fixed grid from t = 0,
/// anchored at arg ζ(1/2) = −π (the branch that makes N vanish below the
/// first zero). PASS means the table count matches the predicted count to
/// within 0.25 and the S estimate itself is small; a single missed pair
/// shifts S by −2, so this criterion catches gaps the grid stepped over.
pub fn verify_count(zeros: &ZeroTable, t: f64) -> Result<CountReport> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::Domain {
            what: "verify_count",
            detail: format!("requires finite T > 0, got {t}"),
        });
    }
    if t > zeros.t_max_scanned + 1e-9 {
        return Err(Error::UnreachableT {
            t,
            t_max: zeros.t_max_scanned,
        });
    }
    let opts = EvalOptions {
        tol: 1e-9,
        max_terms: 8192,
        ..EvalOptions::default()
    };
    let zt = zeta(Complex64::new(0.5, t), &opts)?;
    if zt.norm() < 1e-9 {
        return Err(Error::Domain {
            what: "verify_count",
            detail: format!("zeta(1/2 + iT) vanishes at T = {t}; move T off the zero"),
        });
    }
    let m = (t / DEFAULT_SCAN_STEP).ceil().max(1.0) as u64;
    let mut phi = -PI;
    let mut prev = zeta(Complex64::new(0.5, 0.0), &opts)?;
    for j in 1..=m {
        let tj = t * j as f64 / m as f64;
        let cur = zeta(Complex64::new(0.5, tj), &opts)?;
        phi += (cur / prev).arg();
        prev = cur;
    }
    let s_estimate = phi / PI;
    let main_term = theta_exact(t)? / PI + 1.0;
    let predicted = main_term + s_estimate;
    let table_count = zeros.count_up_to(t);
    let pass = (predicted - table_count as f64).abs() < 0.25 && s_estimate.abs() <= 1.4;
    Ok(CountReport {
        t,
        table_count,
        main_term,
        s_estimate,
        predicted,
        pass,
    })
}
