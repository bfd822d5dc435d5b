//! Finite Laguerre-Pólya diagnostics on truncated series.
//!
//! Nothing here decides class membership: every check is a necessary
//! condition over the computed window and can only falsify.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::numerics::rational::factorial;
use crate::numerics::{ExactRational, Scalar, Sign};
use crate::operators::brenke_polynomials;
use crate::poly::RealPoly;
use crate::powerseries::{SeriesSpec, TruncatedSeries};
use crate::realroots::{certify, RootStatus};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignPattern {
    Constant,
    Alternating,
    Neither,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpDiagnostics<T> {
    pub sign_pattern: SignPattern,
    /// Largest `n` with `0 ≤ b_{k-2} b_k < b_{k-1}²` certified for `2 ≤ k ≤ n`
    /// (1 when the first check already fails).
    pub log_concave_up_to: usize,
    /// `(n, ρ_n)` with `ρ_n = b_{n-2} b_n / b_{n-1}²`, where `b_{n-1} ≠ 0` is certified.
    pub rho: Vec<(usize, T)>,
    /// `(n, τ_n)` with `τ_n = b_n / b_{n+1}`.
    pub tau: Vec<(usize, T)>,
    /// Last computed `ρ_n`.
    pub rho_limit_estimate: Option<T>,
    /// Largest `n` with `b_{k-2} b_k > 0` and `ρ_k ≤ 1 - 1/k²` certified for `2 ≤ k ≤ n`.
    pub coti_satisfied_up_to: usize,
}

fn sign_pattern<T: Scalar>(b: &[T]) -> SignPattern {
    let Some(s0) = b.first().map(|c| c.sign()) else {
        return SignPattern::Undetermined;
    };
    let (mut constant, mut alternating, mut unknown) = (true, true, false);
    for (n, c) in b.iter().enumerate() {
        match c.sign() {
            Sign::Zero => {}
            Sign::Unknown => unknown = true,
            s => {
                constant &= s == s0;
                alternating &= s == if n % 2 == 0 { s0 } else { s0.negate() };
            }
        }
    }
    match (constant, alternating, unknown) {
        (false, false, _) => SignPattern::Neither,
        (_, _, true) => SignPattern::Undetermined,
        (true, _, false) => SignPattern::Constant,
        (false, true, false) => SignPattern::Alternating,
    }
}

fn nonzero<T: Scalar>(x: &T) -> bool {
    matches!(x.sign(), Sign::Positive | Sign::Negative)
}

/// Certified `0 ≤ b_{k-2} b_k < b_{k-1}²`.
fn log_concave_at<T: Scalar>(b: &[T], k: usize) -> bool {
    let prod = b[k - 2].mul(&b[k]);
    let sq = b[k - 1].mul(&b[k - 1]);
    matches!(prod.sign(), Sign::Zero | Sign::Positive) && sq.sub(&prod).sign() == Sign::Positive
}

/// Certified `b_{k-2} b_k > 0` and `(k² - 1) b_{k-1}² ≥ k² b_{k-2} b_k`.
fn coti_at<T: Scalar>(b: &[T], k: usize) -> bool {
    let prod = b[k - 2].mul(&b[k]);
    if prod.sign() != Sign::Positive {
        return false;
    }
    let k2 = (k * k) as i64;
    let lhs = b[k - 1].mul(&b[k - 1]).mul(&T::from_i64_in(k2 - 1, prod.ctx()));
    let rhs = prod.mul(&T::from_i64_in(k2, prod.ctx()));
    matches!(lhs.sub(&rhs).sign(), Sign::Zero | Sign::Positive)
}

fn first_failure(n_max: usize, ok: impl Fn(usize) -> bool) -> usize {
    (2..=n_max).find(|&k| !ok(k)).map_or(n_max.max(1), |k| k - 1)
}

/// All diagnostics over the series' truncation window.
pub fn diagnose<T: Scalar>(b: &TruncatedSeries<T>) -> Result<LpDiagnostics<T>> {
    b.ensure_order(4)?;
    let c = b.coeffs();
    let n = b.order();
    let rho: Vec<(usize, T)> = (2..=n)
        .filter(|&k| nonzero(&c[k - 1]))
        .filter_map(|k| {
            let sq = c[k - 1].mul(&c[k - 1]);
            c[k - 2].mul(&c[k]).try_div(&sq).ok().map(|r| (k, r))
        })
        .collect();
    let tau = (0..n)
        .filter(|&k| nonzero(&c[k + 1]))
        .filter_map(|k| c[k].try_div(&c[k + 1]).ok().map(|t| (k, t)))
        .collect();
    Ok(LpDiagnostics {
        sign_pattern: sign_pattern(c),
        log_concave_up_to: first_failure(n, |k| log_concave_at(c, k)),
        rho_limit_estimate: rho.last().map(|r| r.1.clone()),
        rho,
        tau,
        coti_satisfied_up_to: first_failure(n, |k| coti_at(c, k)),
    })
}

/// `C(z) = Σ (b_n / b_{n+1}) z^n / (n+1)!` through order `n_max`, rescaled to
/// constant term 1 (real-rootedness of its Jensen polynomials is unaffected).
pub fn stability_series<T: Scalar>(b: &TruncatedSeries<T>, n_max: usize) -> Result<TruncatedSeries<T>> {
    b.ensure_order(n_max + 1)?;
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let d = b.coeff(n + 1);
        if !nonzero(d) {
            return Err(if d.is_exact_zero() {
                Error::ZeroCoefficient(n + 1)
            } else {
                Error::SignUnknown
            });
        }
        let f = ExactRational::new(BigInt::one(), factorial(n as u32 + 1));
        out.push(b.coeff(n).try_div(d)?.scale(&f));
    }
    TruncatedSeries::from_coeffs(b.spec.clone(), out)
}

/// Outcome of one test over indices `0..=n_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// First index at which the test is certified to fail.
    Fail(usize),
    /// No certified failure, but some index could not be decided.
    Inconclusive(usize),
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BatteryTest {
    /// `A = e^z`.
    Exp,
    /// `A = 1 - z²`.
    OneMinusSquare,
    /// `A = (1 + z)^l`.
    OnePlusPower(u32),
    /// `b_{n-1}² / (b_{n-2} b_n) ≥ 1 + 1/(n² - 1)`.
    Coti,
}

impl BatteryTest {
    /// Test polynomials used for `n_max`: `e^z`, `1 - z²`, `(1+z)^l` for `2 ≤ l ≤ n_max`.
    pub fn standard(n_max: usize) -> Vec<BatteryTest> {
        let mut v = alloc::vec![BatteryTest::Exp, BatteryTest::OneMinusSquare];
        v.extend((2..=n_max.max(2) as u32).map(BatteryTest::OnePlusPower));
        v
    }

    /// Generating series of `A`, or `None` for the coefficient inequality.
    pub fn series(self) -> Option<SeriesSpec> {
        match self {
            BatteryTest::Exp => Some(SeriesSpec::Exp),
            BatteryTest::OneMinusSquare => Some(SeriesSpec::polynomial(&[
                ExactRational::one(),
                ExactRational::from_integer(0.into()),
                -ExactRational::one(),
            ])),
            BatteryTest::OnePlusPower(l) => {
                let c = (0..=l)
                    .map(|j| ExactRational::from_integer(binomial(l, j)))
                    .collect::<Vec<_>>();
                Some(SeriesSpec::polynomial(&c))
            }
            BatteryTest::Coti => None,
        }
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatteryEntry {
    pub test: BatteryTest,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatteryReport {
    pub n_max: usize,
    pub entries: Vec<BatteryEntry>,
}

impl BatteryReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.verdict.passed())
    }

    pub fn any_failed(&self) -> bool {
        self.entries.iter().any(|e| matches!(e.verdict, Verdict::Fail(_)))
    }

    pub fn entry(&self, t: BatteryTest) -> Option<&BatteryEntry> {
        self.entries.iter().find(|e| e.test == t)
    }
}

/// Runs one battery test for `B` through degree `n_max`.
pub fn battery_test<T: Scalar>(b: &TruncatedSeries<T>, test: BatteryTest, n_max: usize) -> Result<BatteryEntry> {
    b.ensure_order(n_max)?;
    let verdict = match test.series() {
        None => {
            let c = b.coeffs();
            let mut v = Verdict::Pass;
            for k in 2..=n_max {
                if !coti_at(c, k) {
                    // an uncertain sign is not a failure
                    let prod = c[k - 2].mul(&c[k]);
                    let k2 = (k * k) as i64;
                    let lhs = c[k - 1].mul(&c[k - 1]).mul(&T::from_i64_in(k2 - 1, prod.ctx()));
                    let margin = lhs.sub(&prod.mul(&T::from_i64_in(k2, prod.ctx())));
                    if matches!(prod.sign(), Sign::Zero | Sign::Negative) || margin.sign() == Sign::Negative {
                        v = Verdict::Fail(k);
                        break;
                    }
                    if v == Verdict::Pass {
                        v = Verdict::Inconclusive(k);
                    }
                }
            }
            v
        }
        Some(spec) => {
            let ctx = b.coeff(0).ctx();
            let a = spec.exact_coefficients(n_max)?;
            let a = TruncatedSeries::from_coeffs(spec, a.iter().map(|q| T::from_rational_in(q, ctx)).collect())?;
            family_verdict(&brenke_polynomials(&a, b, n_max)?)?
        }
    };
    Ok(BatteryEntry { test, verdict })
}

/// First certified failure of real-rootedness over a family indexed from 0.
pub fn family_verdict<T: Scalar>(ps: &[RealPoly<T>]) -> Result<Verdict> {
    let mut v = Verdict::Pass;
    for (n, p) in ps.iter().enumerate() {
        if p.is_zero() || p.len_degree() == Some(0) {
            continue;
        }
        match certify(p)?.status {
            RootStatus::RealRooted => {}
            RootStatus::NotRealRooted => return Ok(Verdict::Fail(n)),
            RootStatus::Inconclusive => {
                if v == Verdict::Pass {
                    v = Verdict::Inconclusive(n);
                }
            }
        }
    }
    Ok(v)
}

/// The standard necessary battery: Brenke families for `e^z`, `1 - z²`,
/// `(1+z)^l` and the coefficient inequality, through degree `n_max`.
pub fn necessary_battery<T: Scalar>(b: &TruncatedSeries<T>, n_max: usize) -> Result<BatteryReport> {
    let mut tests = BatteryTest::standard(n_max);
    tests.push(BatteryTest::Coti);
    let entries = tests
        .into_iter()
        .map(|t| battery_test(b, t, n_max))
        .collect::<Result<Vec<_>>>()?;
    Ok(BatteryReport { n_max, entries })
}

/// Real-rootedness of the Jensen polynomials `Σ_j binom(n, j) c_j z^j` of the
/// stability series, `n ≤ n_max`. These are the reversed Appell polynomials of
/// `C`, so the Appell family is certified instead.
pub fn stability_battery<T: Scalar>(b: &TruncatedSeries<T>, n_max: usize) -> Result<Verdict> {
    let c = stability_series(b, n_max)?;
    let ctx = b.coeff(0).ctx();
    let e = SeriesSpec::Exp.exact_coefficients(n_max)?;
    let e = TruncatedSeries::from_coeffs(SeriesSpec::Exp, e.iter().map(|q| T::from_rational_in(q, ctx)).collect())?;
    family_verdict(&brenke_polynomials(&c, &e, n_max)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RhoRow {
    pub n: usize,
    pub rho: f64,
    pub one_minus_rho: f64,
    /// `(1 - ρ_n) log n`.
    pub scaled: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RhoReport {
    pub rows: Vec<RhoRow>,
    /// `ρ_n` certified strictly increasing over the rows.
    pub increasing: bool,
    /// `ρ_n < 1` certified and `1 - ρ_n` decreasing over the rows.
    pub approaching_one: bool,
    /// Largest `(1 - ρ_n) log n` over the window.
    pub max_scaled: f64,
}

/// Tabulates `ρ_n`, `1 - ρ_n` and `(1 - ρ_n) log n` and flags the trend.
pub fn rho_convergence_report<T: Scalar>(b: &TruncatedSeries<T>) -> Result<RhoReport> {
    b.ensure_order(6)?;
    let d = diagnose(b)?;
    let one = T::one_in(b.coeff(0).ctx());
    let rows: Vec<RhoRow> = d
        .rho
        .iter()
        .map(|(n, r)| {
            let rho = r.to_f64();
            let om = one.sub(r).to_f64();
            RhoRow {
                n: *n,
                rho,
                one_minus_rho: om,
                scaled: om * libm::log(*n as f64),
            }
        })
        .collect();
    let increasing = d.rho.windows(2).all(|w| w[1].1.sub(&w[0].1).sign() == Sign::Positive);
    let below_one = d.rho.iter().all(|(_, r)| one.sub(r).sign() == Sign::Positive);
    let max_scaled = rows.iter().map(|r| r.scaled).fold(f64::NEG_INFINITY, f64::max);
    Ok(RhoReport {
        approaching_one: increasing && below_one,
        increasing,
        rows,
        max_scaled,
    })
}
