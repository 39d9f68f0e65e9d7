//! Exact integer-side arithmetic: the prime sieve, π(x), Möbius μ(n), the
//! weighted prime-power count Π(x), Chebyshev ψ(x), and numerical checks of
//! the Mellin-transform identities tying them to log ζ.
//!
//! Jump convention: staircase functions evaluated exactly at a jump return
//! the half-way value, so Π and ψ at a prime power p^k count that power with
//! weight 1/2. Off the jumps the strict-vs-weak inequality in the defining
//! sums is unobservable.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::zeta_engine::{self, EvalOptions};
use crate::{Error, Result};

const DEFAULT_BUDGET_BITS: u64 = 100_000_000;
const BLOCK_WORDS: usize = 64; // prefix counts every 4096 bits

/// Bit-packed Eratosthenes sieve over [0, limit] with block prefix counts
/// for O(1) π(x).
pub struct PrimeSieve {
    limit: u64,
    words: Vec<u64>,
    /// cumulative prime count before each 64-word block
    prefix: Vec<u64>,
}

impl PrimeSieve {
    pub fn new(limit: u64) -> Result<PrimeSieve> {
        Self::with_budget(limit, DEFAULT_BUDGET_BITS)
    }

    /// Same as `new` but with an explicit memory ceiling in bits.
    pub fn with_budget(limit: u64, budget_bits: u64) -> Result<PrimeSieve> {
        if limit < 2 {
            return Err(Error::Domain {
                what: "PrimeSieve",
                detail: format!("limit must be at least 2, got {limit}"),
            });
        }
        if limit + 1 > budget_bits {
            return Err(Error::CapacityExceeded {
                requested: limit + 1,
                budget: budget_bits,
            });
        }
        let n_words = (limit / 64 + 1) as usize;
        let mut words = vec![!0u64; n_words];
        let clear = |w: &mut Vec<u64>, n: u64| w[(n / 64) as usize] &= !(1 << (n % 64));
        clear(&mut words, 0);
        clear(&mut words, 1);
        // mask tail bits past limit so popcounts stay honest
        let last_bits = (limit % 64 + 1) as u32;
        if last_bits < 64 {
            words[n_words - 1] &= (1u64 << last_bits) - 1;
        }
        let mut p = 2u64;
        while p * p <= limit {
            if words[(p / 64) as usize] >> (p % 64) & 1 == 1 {
                let mut q = p * p;
                while q <= limit {
                    clear(&mut words, q);
                    q += p;
                }
            }
            p += 1;
        }
        let mut prefix = Vec::with_capacity(n_words / BLOCK_WORDS + 1);
        let mut acc = 0u64;
        for (i, w) in words.iter().enumerate() {
            if i % BLOCK_WORDS == 0 {
                prefix.push(acc);
            }
            acc += w.count_ones() as u64;
        }
        Ok(PrimeSieve {
            limit,
            words,
            prefix,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n <= self.limit, "is_prime past sieve limit {}", self.limit);
        self.words[(n / 64) as usize] >> (n % 64) & 1 == 1
    }

    /// π(x): number of primes ≤ x.
    pub fn pi(&self, x: u64) -> u64 {
        assert!(x <= self.limit, "pi past sieve limit {}", self.limit);
        let word = (x / 64) as usize;
        let block = word / BLOCK_WORDS;
        let mut count = self.prefix[block];
        for w in &self.words[block * BLOCK_WORDS..word] {
            count += w.count_ones() as u64;
        }
        let keep = x % 64 + 1;
        let mask = if keep == 64 { !0u64 } else { (1u64 << keep) - 1 };
        count + (self.words[word] & mask).count_ones() as u64
    }

    /// Ascending iterator over all primes in the sieve.
    pub fn primes(&self) -> Primes<'_> {
        Primes {
            sieve: self,
            word_idx: 0,
            word: self.words[0],
        }
    }
}

pub struct Primes<'a> {
    sieve: &'a PrimeSieve,
    word_idx: usize,
    word: u64,
}

impl Iterator for Primes<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            if self.word != 0 {
                let bit = self.word.trailing_zeros() as u64;
                self.word &= self.word - 1;
                return Some(self.word_idx as u64 * 64 + bit);
            }
            self.word_idx += 1;
            if self.word_idx >= self.sieve.words.len() {
                return None;
            }
            self.word = self.sieve.words[self.word_idx];
        }
    }
}

/// Möbius function μ(n) by trial division.
pub fn mobius(n: u64) -> i32 {
    assert!(n >= 1, "mobius requires n >= 1");
    let mut m = n;
    let mut factors = 0u32;
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            m /= d;
            if m % d == 0 {
                return 0;
            }
            factors += 1;
        }
        d += 1;
    }
    if m > 1 {
        factors += 1;
    }
    if factors % 2 == 0 {
        1
    } else {
        -1
    }
}

/// r^n ≤ x without overflow.
fn pow_leq(r: u64, n: u32, x: u64) -> bool {
    let mut acc: u128 = 1;
    for _ in 0..n {
        acc *= r as u128;
        if acc > x as u128 {
            return false;
        }
    }
    acc <= x as u128
}

/// Largest r with r^n ≤ x; exact, with a float seed corrected by neighbor
/// checks so prime-power detection never trusts powf near an integer.
pub(crate) fn integer_nth_root_floor(x: u64, n: u32) -> u64 {
    debug_assert!(n >= 1);
    if n == 1 || x <= 1 {
        return x;
    }
    let mut r = (x as f64).powf(1.0 / n as f64).round() as u64;
    while r > 0 && !pow_leq(r, n, x) {
        r -= 1;
    }
    while pow_leq(r + 1, n, x) {
        r += 1;
    }
    r
}

fn pow_eq(r: u64, n: u32, x: u64) -> bool {
    let mut acc: u128 = 1;
    for _ in 0..n {
        acc *= r as u128;
        if acc > x as u128 {
            return false;
        }
    }
    acc == x as u128
}

fn check_staircase_arg(what: &'static str, x: f64, sieve: &PrimeSieve) -> Result<Option<u64>> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain {
            what,
            detail: format!("requires finite x >= 0, got {x}"),
        });
    }
    if x < 2.0 {
        return Ok(None);
    }
    let xf = x.floor() as u64;
    if xf > sieve.limit() {
        return Err(Error::SieveTooSmall {
            needed: xf,
            limit: sieve.limit(),
        });
    }
    Ok(Some(xf))
}

/// Riemann's weighted count Π(x) = Σ_{n≥1} π(x^{1/n})/n, terminating once
/// x^{1/n} < 2, with the midpoint value at exact prime powers.
pub fn big_pi(x: f64, sieve: &PrimeSieve) -> Result<f64> {
    let Some(xf) = check_staircase_arg("big_pi", x, sieve)? else {
        return Ok(0.0);
    };
    let x_is_int = x == x.floor();
    let mut total = 0.0;
    for n in 1..64 {
        let r = integer_nth_root_floor(xf, n);
        if r < 2 {
            break;
        }
        let mut c = sieve.pi(r) as f64;
        if x_is_int && pow_eq(r, n, xf) && sieve.is_prime(r) {
            c -= 0.5;
        }
        total += c / n as f64;
    }
    Ok(total)
}

/// Π(x) at an integer abscissa in exact rational arithmetic.
pub fn big_pi_exact(x: u64, sieve: &PrimeSieve) -> Result<BigRational> {
    if x > sieve.limit() {
        return Err(Error::SieveTooSmall {
            needed: x,
            limit: sieve.limit(),
        });
    }
    let mut total = BigRational::zero();
    if x < 2 {
        return Ok(total);
    }
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    for n in 1..64 {
        let r = integer_nth_root_floor(x, n);
        if r < 2 {
            break;
        }
        let mut c = BigRational::from_integer(BigInt::from(sieve.pi(r)));
        if pow_eq(r, n, x) && sieve.is_prime(r) {
            c -= &half;
        }
        total += c / BigRational::from_integer(BigInt::from(n));
    }
    Ok(total)
}

/// π(x) recovered from Π by Möbius inversion: Σ_n μ(n)/n · Π(x^{1/n}).
///
/// All inner roots are taken directly from x at combined order n·m, so no
/// floating-point root is ever re-rooted.
pub fn mobius_invert_pi(x: f64, sieve: &PrimeSieve) -> Result<f64> {
    let Some(xf) = check_staircase_arg("mobius_invert_pi", x, sieve)? else {
        return Ok(0.0);
    };
    let x_is_int = x == x.floor();
    let mut total = 0.0;
    for n in 1u32..64 {
        if integer_nth_root_floor(xf, n) < 2 {
            break;
        }
        let mu = mobius(n as u64);
        if mu == 0 {
            continue;
        }
        let mut inner = 0.0;
        for m in 1u32..64 {
            let k = n * m;
            let r = integer_nth_root_floor(xf, k);
            if r < 2 {
                break;
            }
            let mut c = sieve.pi(r) as f64;
            if x_is_int && pow_eq(r, k, xf) && sieve.is_prime(r) {
                c -= 0.5;
            }
            inner += c / m as f64;
        }
        total += mu as f64 * inner / n as f64;
    }
    Ok(total)
}

/// Chebyshev ψ(x) = Σ_{p^k ≤ x} ln p, midpoint value at exact prime powers.
pub fn chebyshev_psi(x: f64, sieve: &PrimeSieve) -> Result<f64> {
    let Some(xf) = check_staircase_arg("chebyshev_psi", x, sieve)? else {
        return Ok(0.0);
    };
    let x_is_int = x == x.floor();
    let mut sum = 0.0;
    for p in sieve.primes() {
        if p > xf {
            break;
        }
        let lp = (p as f64).ln();
        let mut q = p as u128;
        while q <= xf as u128 {
            if x_is_int && q == xf as u128 {
                sum += 0.5 * lp;
            } else {
                sum += lp;
            }
            q *= p as u128;
        }
    }
    Ok(sum)
}

/// Residual |log ζ(s)/s − (1/s) Σ_{p^n ≤ x_max} p^{−ns}/n|.
///
/// The right side is the prime-power jump sum of the Mellin integral of
/// Π(x) x^{−s−1}, telescoped exactly; the truncation tail is bounded by
/// x_max^{1−Re s}/(Re s − 1).
pub fn golden_formula_check(s: Complex64, sieve: &PrimeSieve, x_max: f64) -> Result<f64> {
    if !(s.re > 1.0) {
        return Err(Error::Domain {
            what: "golden_formula_check",
            detail: format!("requires Re s > 1, got {}", s.re),
        });
    }
    if !(x_max >= 2.0) {
        return Err(Error::Domain {
            what: "golden_formula_check",
            detail: format!("requires x_max >= 2, got {x_max}"),
        });
    }
    let xf = x_max.floor() as u64;
    if xf > sieve.limit() {
        return Err(Error::SieveTooSmall {
            needed: xf,
            limit: sieve.limit(),
        });
    }
    let opts = EvalOptions {
        tol: 1e-14,
        ..EvalOptions::default()
    };
    let lhs = zeta_engine::zeta(s, &opts)?.ln() / s;
    let mut sum = Complex64::zero();
    for p in sieve.primes() {
        if p as f64 > x_max {
            break;
        }
        let lp = (p as f64).ln();
        let mut n = 1u32;
        let mut q = p as u128;
        while q as f64 <= x_max {
            sum += (-s * (n as f64) * lp).exp() / n as f64;
            n += 1;
            q = q.saturating_mul(p as u128);
        }
    }
    Ok((lhs - sum / s).norm())
}

/// Residual |ln ζ(s)/s − ∫₂^{x_max} π(x)/(x(x^s−1)) dx| with the integral
/// done piecewise in closed form: π is constant between integers and
/// ∫ dx/(x(x^s−1)) = (1/s) ln(1 − x^{−s}).
pub fn appendix_pi_integral_check(s: f64, sieve: &PrimeSieve, x_max: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::Domain {
            what: "appendix_pi_integral_check",
            detail: format!("requires s > 1, got {s}"),
        });
    }
    if !(x_max >= 2.0) {
        return Err(Error::Domain {
            what: "appendix_pi_integral_check",
            detail: format!("requires x_max >= 2, got {x_max}"),
        });
    }
    let xf = x_max.floor() as u64;
    if xf > sieve.limit() {
        return Err(Error::SieveTooSmall {
            needed: xf,
            limit: sieve.limit(),
        });
    }
    let opts = EvalOptions {
        tol: 1e-14,
        ..EvalOptions::default()
    };
    let lhs = zeta_engine::zeta(Complex64::new(s, 0.0), &opts)?.re.ln() / s;
    // antiderivative at integer n, as ln(1 − n^{−s}) via ln_1p
    let g = |t: f64| (-t.powf(-s)).ln_1p();
    let mut sum = 0.0;
    let mut comp = 0.0; // Kahan compensation
    let mut pi_run = 0u64;
    for n in 2..=xf {
        if sieve.is_prime(n) {
            pi_run += 1;
        }
        let upper = if n == xf { x_max } else { (n + 1) as f64 };
        let term = pi_run as f64 * (g(upper) - g(n as f64)) / s;
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    Ok((lhs - sum).abs())
}
