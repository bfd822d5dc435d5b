//! Named polynomial families, their scaled limits, and reference polynomials.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::rational::{factorial, pochhammer};
use crate::numerics::{int, rat, ExactRational, Scalar};
use crate::operators::{appell_dunkl, brenke_polynomials};
use crate::poly::{ExactPoly, RealPoly};
use crate::powerseries::{dunkl_c, SeriesSpec, TruncatedSeries};
use crate::realroots::discriminant;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// `q_n(z) = Σ γ_j z^j / ((n-j)! j!)`.
    Jensen,
    /// `q_{n,s}(z) = γ_s^{-1} Σ γ_{s+j} z^j / ((n-j)! j!)`.
    JensenShifted { s: usize },
    /// `q̂_{N,n}(x) = Σ γ_j x^j / ((n+j)!^N j! (n-j)!)`.
    Qhat { big_n: u32 },
    /// `p^α_{n,s}(z) = (-1)^s / ((α+1)_s γ_s) Σ (α+n-j+1)_s γ_{n-j+s} z^j / (j! (n-j)!)`.
    PAlpha { alpha: ExactRational, s: usize },
    /// `q^α_{n,s}(z) = γ_s^{-1} Σ (-1)^{n-j} γ_{j+s} z^j / (j! (n-j)! (α+1)_{n-j})`.
    QAlpha { alpha: ExactRational, s: usize },
    /// Appell-Dunkl polynomials of `A`, monic of degree `n` when `a_0 = 1`.
    AppellDunkl { mu: ExactRational, a: SeriesSpec },
    Brenke { a: SeriesSpec, b: SeriesSpec },
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::PAlpha { alpha, .. } | FamilySpec::QAlpha { alpha, .. } => {
                if *alpha <= int(-1) {
                    return Err(Error::InvalidParameter(alloc::format!("alpha must exceed -1, got {alpha}")));
                }
            }
            FamilySpec::AppellDunkl { mu, a } => {
                SeriesSpec::DunklE(mu.clone()).validate()?;
                a.validate()?;
            }
            FamilySpec::Brenke { a, b } => {
                a.validate()?;
                b.validate()?;
            }
            _ => {}
        }
        Ok(())
    }

    /// Number of `γ` entries needed to generate indices `0..=n_max`.
    pub fn gammas_needed(&self, n_max: usize) -> usize {
        match self {
            FamilySpec::Jensen | FamilySpec::Qhat { .. } => n_max + 1,
            FamilySpec::JensenShifted { s } | FamilySpec::PAlpha { s, .. } | FamilySpec::QAlpha { s, .. } => n_max + s + 1,
            FamilySpec::AppellDunkl { a, .. } => series_gammas(a, n_max),
            FamilySpec::Brenke { a, b } => series_gammas(a, n_max).max(series_gammas(b, n_max)),
        }
    }
}

fn series_gammas(s: &SeriesSpec, n_max: usize) -> usize {
    if s.needs_zeta() {
        s.zeta_index_needed(n_max) + 1
    } else {
        0
    }
}

fn inv(q: ExactRational) -> ExactRational {
    q.recip()
}

fn fact(n: usize) -> ExactRational {
    ExactRational::from_integer(factorial(n as u32))
}

fn table<T>(gammas: Option<&[T]>, needed: usize) -> Result<&[T]> {
    let available = gammas.map_or(0, |g| g.len());
    gammas
        .filter(|g| g.len() >= needed)
        .ok_or(Error::GammaTableTooShort { needed, available })
}

/// Polynomials of the family for `n = 0..=n_max`; `gammas[k]` plays `γ_k`.
pub fn generate_family<T: Scalar>(
    spec: &FamilySpec,
    n_max: usize,
    gammas: Option<&[T]>,
    ctx: T::Ctx,
) -> Result<Vec<RealPoly<T>>> {
    spec.validate()?;
    let per_n = |coef: &dyn Fn(usize, usize) -> Result<T>| -> Result<Vec<RealPoly<T>>> {
        (0..=n_max)
            .map(|n| Ok(RealPoly::new((0..=n).map(|j| coef(n, j)).collect::<Result<Vec<_>>>()?)))
            .collect()
    };
    match spec {
        FamilySpec::Jensen => {
            let g = table(gammas, n_max + 1)?;
            per_n(&|n, j| Ok(g[j].scale(&inv(fact(n - j) * fact(j)))))
        }
        FamilySpec::JensenShifted { s } => {
            let g = table(gammas, n_max + s + 1)?;
            per_n(&|n, j| Ok(g[s + j].try_div(&g[*s])?.scale(&inv(fact(n - j) * fact(j)))))
        }
        FamilySpec::Qhat { big_n } => {
            let g = table(gammas, n_max + 1)?;
            per_n(&|n, j| {
                let d = num_traits::pow(fact(n + j), *big_n as usize) * fact(j) * fact(n - j);
                Ok(g[j].scale(&inv(d)))
            })
        }
        FamilySpec::PAlpha { alpha, s } => {
            let g = table(gammas, n_max + s + 1)?;
            let a1 = alpha + int(1);
            let sign = if s % 2 == 0 { int(1) } else { int(-1) };
            let lead = sign / pochhammer(&a1, *s as u32);
            per_n(&|n, j| {
                let q = &lead * pochhammer(&(alpha + int((n - j) as i64 + 1)), *s as u32) / (fact(j) * fact(n - j));
                Ok(g[n - j + s].try_div(&g[*s])?.scale(&q))
            })
        }
        FamilySpec::QAlpha { alpha, s } => {
            let g = table(gammas, n_max + s + 1)?;
            let a1 = alpha + int(1);
            per_n(&|n, j| {
                let sign = if (n - j) % 2 == 0 { int(1) } else { int(-1) };
                let q = sign / (fact(j) * fact(n - j) * pochhammer(&a1, (n - j) as u32));
                Ok(g[j + s].try_div(&g[*s])?.scale(&q))
            })
        }
        FamilySpec::AppellDunkl { mu, a } => {
            let a = TruncatedSeries::build(a, n_max, gammas, ctx)?;
            appell_dunkl(&a, mu, n_max)
        }
        FamilySpec::Brenke { a, b } => {
            let a = TruncatedSeries::build(a, n_max, gammas, ctx)?;
            let b = TruncatedSeries::build(b, n_max, gammas, ctx)?;
            brenke_polynomials(&a, &b, n_max)
        }
    }
}

/// `q_{l_1,…,l_N;n}(x) = Σ γ_j x^j / (j! (n-j)! Π_i (j+l_i)!)`.
pub fn jensen_multi<T: Scalar>(ls: &[usize], n: usize, gammas: &[T]) -> Result<RealPoly<T>> {
    let g = table(Some(gammas), n + 1)?;
    Ok(RealPoly::new(
        (0..=n)
            .map(|j| {
                let mut d = fact(j) * fact(n - j);
                for l in ls {
                    d *= fact(j + l);
                }
                g[j].scale(&inv(d))
            })
            .collect(),
    ))
}

/// `L_n^α(x) = Σ_i (α+i+1)_{n-i} (-x)^i / ((n-i)! i!)`.
pub fn laguerre(n: usize, alpha: &ExactRational) -> Result<ExactPoly> {
    check_alpha(alpha)?;
    Ok(ExactPoly::new(
        (0..=n)
            .map(|i| {
                let sign = if i % 2 == 0 { int(1) } else { int(-1) };
                sign * pochhammer(&(alpha + int(i as i64 + 1)), (n - i) as u32) / (fact(n - i) * fact(i))
            })
            .collect(),
    ))
}

/// `L_n^α` from `(k+1) L_{k+1} = (2k+1+α-x) L_k - (k+α) L_{k-1}`.
pub fn laguerre_by_recurrence(n: usize, alpha: &ExactRational) -> Result<ExactPoly> {
    check_alpha(alpha)?;
    let mut prev = ExactPoly::new(alloc::vec![int(1)]);
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = ExactPoly::new(alloc::vec![alpha + int(1), int(-1)]);
    for k in 1..n {
        let kk = int(k as i64);
        let lin = ExactPoly::new(alloc::vec![int(2) * &kk + int(1) + alpha, int(-1)]);
        let next = lin
            .mul(&cur)
            .sub(&prev.scale_rational(&(&kk + alpha)))
            .scale_rational(&inv(&kk + int(1)));
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

fn check_alpha(alpha: &ExactRational) -> Result<()> {
    if *alpha <= int(-1) {
        Err(Error::InvalidParameter(alloc::format!("alpha must exceed -1, got {alpha}")))
    } else {
        Ok(())
    }
}

/// `r_n` with `p_n = x^{n-3} r_n` for the Appell-Dunkl family of `(1+z)^3`, `n ≥ 3`.
pub fn dunkl_cubic(mu: &ExactRational, n: usize) -> Result<ExactPoly> {
    if n < 3 {
        return Err(Error::InvalidParameter("the cubic factor needs n >= 3".into()));
    }
    let a = SeriesSpec::polynomial(&[int(1), int(3), int(3), int(1)]);
    let spec = FamilySpec::AppellDunkl { mu: mu.clone(), a };
    let p = generate_family::<ExactRational>(&spec, n, None, ())?.pop().unwrap();
    Ok(ExactPoly::new(p.coeffs()[n - 3..].to_vec()))
}

/// Closed form of `Δ(r_n)`, split by the parity of `n`.
pub fn dunkl_discriminant_closed_form(mu: &ExactRational, n: usize) -> ExactRational {
    let nn = int(n as i64);
    let half = rat(1, 2);
    if n.is_multiple_of(2) {
        // -2^4 3^3 n² (μ + n/2)(2nμ² + (2n+1)μ + n/2)
        let t = int(2) * &nn * mu * mu + (int(2) * &nn + int(1)) * mu + &nn * &half;
        int(-432) * &nn * &nn * (mu + &nn * &half) * t
    } else {
        // -2^5 3^3 (n-1)(μ + (n+1)/2)² (2μ(μ+1)(2μ+n+1) + (n-1)/2)
        let m = mu + (&nn + int(1)) * &half;
        let t = int(2) * mu * (mu + int(1)) * (int(2) * mu + &nn + int(1)) + (&nn - int(1)) * &half;
        int(-864) * (&nn - int(1)) * &m * &m * t
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiscriminantRow {
    pub n: usize,
    pub resultant: ExactRational,
    pub closed_form: ExactRational,
    /// `Δ(r_n) / n⁴`.
    pub scaled: f64,
}

impl DiscriminantRow {
    pub fn agrees(&self) -> bool {
        self.resultant == self.closed_form
    }
}

/// `Δ(r_n)` two ways for each `n` in `ns`: from the generated cubic and in closed form.
pub fn dunkl_discriminant_check(mu: &ExactRational, ns: impl IntoIterator<Item = usize>) -> Result<Vec<DiscriminantRow>> {
    SeriesSpec::DunklE(mu.clone()).validate()?;
    ns.into_iter()
        .map(|n| {
            let resultant = discriminant(&dunkl_cubic(mu, n)?)?;
            let closed_form = dunkl_discriminant_closed_form(mu, n);
            let scaled = crate::numerics::rational::rational_to_f64(&(&closed_form / int((n * n * n * n) as i64)));
            Ok(DiscriminantRow { n, resultant, closed_form, scaled })
        })
        .collect()
}

/// `-108 (2μ+1)²`, the limit of `Δ(r_n) / n⁴`.
pub fn dunkl_discriminant_limit(mu: &ExactRational) -> ExactRational {
    let t = int(2) * mu + int(1);
    int(-108) * &t * &t
}

/// Checks `p_{2n}(x) = c_{2n} q_{n,μ}((x/2)²)` and
/// `p_{2n+1}(x) = c_{2n+1} x / (2(μ+1)) q_{n,μ+1}((x/2)²)` for the Appell-Dunkl
/// family of an even `A`, where `q_{n,ν}` is the Brenke family of `A(√z)`
/// against `0F1(;ν;z)`. Returns `(index, holds)` for indices `0..=2 n_max + 1`.
pub fn even_a_dunkl_split(a: &TruncatedSeries<ExactRational>, mu: &ExactRational, n_max: usize) -> Result<Vec<(usize, bool)>> {
    if *mu <= int(-1) {
        return Err(Error::InvalidParameter(alloc::format!("mu must exceed -1, got {mu}")));
    }
    let top = 2 * n_max + 1;
    a.ensure_order(top)?;
    if a.coeffs()[..=top].iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
        return Err(Error::NotEvenSeries);
    }
    let p = appell_dunkl(a, mu, top)?;
    let half: Vec<ExactRational> = (0..=n_max).map(|i| a.coeff(2 * i).clone()).collect();
    let root = TruncatedSeries::from_coeffs(SeriesSpec::Explicit(half.clone()), half)?;
    let quarter = rat(1, 4);
    let mut out = Vec::with_capacity(top + 1);
    for (shift, nu) in [(0usize, mu + int(1)), (1, mu + int(2))] {
        let b = TruncatedSeries::exact(&SeriesSpec::hypergeometric(&[nu]), n_max)?;
        let q = brenke_polynomials(&root, &b, n_max)?;
        for (n, qn) in q.iter().enumerate() {
            let idx = 2 * n + shift;
            let mut rhs = qn.compose_square(&quarter).scale_rational(&dunkl_c(idx, mu));
            if shift == 1 {
                rhs = rhs.shift_up(1).scale_rational(&inv(int(2) * (mu + int(1))));
            }
            out.push((idx, rhs == p[idx]));
        }
    }
    out.sort_by_key(|r| r.0);
    Ok(out)
}

/// Sections `Σ_{j≤n} z^j / a^{j²}`, `n = 0..=n_max`: the Brenke family of
/// `1/(1-z)` against `Σ a^{-j²} z^j`.
pub fn klv_sections(a: &ExactRational, n_max: usize) -> Result<Vec<ExactPoly>> {
    if !a.is_positive() {
        return Err(Error::InvalidParameter(alloc::format!("a must be positive, got {a}")));
    }
    let ia = a.recip();
    let b: Vec<ExactRational> = (0..=n_max).map(|j| num_traits::pow(ia.clone(), j * j)).collect();
    let spec = FamilySpec::Brenke {
        a: SeriesSpec::Geometric,
        b: SeriesSpec::Explicit(b),
    };
    generate_family::<ExactRational>(&spec, n_max, None, ())
}

/// A scaled-limit experiment; `ς` denotes the series with `b_n = γ_n / n!`.
#[derive(Clone, Debug, PartialEq)]
pub enum AsymptoticCheck {
    /// `(z/τ_n)^n p_n(τ_n/z) / b_n → A(z)` with `τ_n = b_n / b_{n+1}`.
    Brenke {
        a: SeriesSpec,
        b: SeriesSpec,
        indices: Vec<usize>,
        radius: f64,
    },
    /// `p_n(z/μ_n) / a_n → B(z)` with `μ_n = a_n / a_{n+1}`.
    BrenkeDual {
        a: SeriesSpec,
        b: SeriesSpec,
        indices: Vec<usize>,
        radius: f64,
    },
    /// `(γ_s/γ_{n+s}) (t z)^n q_{n,s}(1/(t z)) → (1+z)^n / n!`, `t = γ_{n+s+1}/γ_{n+s}`.
    ShiftedJensen { n: usize, s_values: Vec<usize> },
    /// `(-1)^{n+s} γ_s / (γ_{n+s} (α+s+1)_n) p^α_{n,s}(-(α+n+s+1) t z) → z^n L_n^α(1/z) / (α+1)_n`.
    LaguerreLimit { n: usize, alpha: ExactRational, s_values: Vec<usize> },
    /// `(γ_s/γ_{n+s}) (t z)^n q^α_{n,s}(1/(t z)) → L_n^α(z) / (α+1)_n`.
    DualLaguerreLimit { n: usize, alpha: ExactRational, s_values: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticReport {
    /// `(index, sup deviation)`; the index is `n` or `s` depending on the check.
    pub deviations: Vec<(usize, f64)>,
    /// Deviations do not increase over the final third of indices.
    pub nonincreasing_tail: bool,
    /// `nonincreasing_tail` and the final deviation is below `factor` times the first.
    pub converged: bool,
}

/// Default ratio between final and initial deviation for "converged".
pub const CONVERGENCE_FACTOR: f64 = 1e-3;

/// 32 points on `|z| = r/2` and 9 on `[-r/2, r/2]`.
pub fn sample_points(radius: f64) -> Vec<Complex64> {
    let h = radius / 2.0;
    let mut v: Vec<Complex64> = (0..32)
        .map(|k| Complex64::from_polar(h, 2.0 * core::f64::consts::PI * k as f64 / 32.0))
        .collect();
    v.extend((0..9).map(|i| Complex64::new(-h + radius * i as f64 / 8.0, 0.0)));
    v
}

fn sup_deviation(coeffs: &[f64], target: &dyn Fn(Complex64) -> Complex64, radius: f64) -> f64 {
    sample_points(radius)
        .into_iter()
        .map(|z| {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in coeffs.iter().rev() {
                acc = acc * z + c;
            }
            (acc - target(z)).norm()
        })
        .fold(0.0, f64::max)
}

pub fn convergence_flags(devs: &[(usize, f64)], factor: f64) -> (bool, bool) {
    if devs.len() < 2 {
        return (false, false);
    }
    let k = devs.len().div_ceil(3).max(2);
    let tail = &devs[devs.len() - k..];
    let nonincreasing = tail.windows(2).all(|w| w[1].1 <= w[0].1);
    let shrunk = devs[devs.len() - 1].1 < factor * devs[0].1;
    (nonincreasing, nonincreasing && shrunk)
}

fn nonzero<T: Scalar>(x: &T) -> bool {
    matches!(x.sign(), crate::numerics::Sign::Positive | crate::numerics::Sign::Negative)
}

/// Sup deviations of the scaled family from its limit over the sampling set,
/// in double precision.
pub fn verify_scaled_limit<T: Scalar>(
    check: &AsymptoticCheck,
    gammas: Option<&[T]>,
    ctx: T::Ctx,
    factor: f64,
) -> Result<AsymptoticReport> {
    let mut devs = Vec::new();
    match check {
        AsymptoticCheck::Brenke { a, b, indices, radius } | AsymptoticCheck::BrenkeDual { a, b, indices, radius } => {
            let dual = matches!(check, AsymptoticCheck::BrenkeDual { .. });
            let top = indices.iter().copied().max().unwrap_or(0);
            // long truncation of the limit series
            let order = top + 60;
            let av = TruncatedSeries::build(a, order, gammas, ctx)?;
            let bv = TruncatedSeries::build(b, order, gammas, ctx)?;
            let (lim, scale) = if dual { (&bv, &av) } else { (&av, &bv) };
            for &n in indices {
                let s = scale.coeffs();
                if !nonzero(&s[n + 1]) || !nonzero(&s[n]) {
                    return Err(Error::ScalingUndefined(n));
                }
                let t = s[n].try_div(&s[n + 1])?;
                // coefficient j: lim_j s_{n-j} / (s_n t^j)
                let coeffs: Vec<f64> = (0..=n)
                    .map(|j| {
                        let d = s[n].mul(&t.pow(j as u32));
                        Ok(lim.coeff(j).mul(&s[n - j].try_div(&d)?).to_f64())
                    })
                    .collect::<Result<_>>()?;
                devs.push((n, sup_deviation(&coeffs, &|z| lim.evaluate_complex(z), *radius)));
            }
        }
        AsymptoticCheck::ShiftedJensen { n, s_values } => {
            let n = *n;
            let target = |z: Complex64| (z + 1.0).powu(n as u32) / fact(n).to_f64();
            for &s in s_values {
                let g = table(gammas, n + s + 2)?;
                let q = generate_family(&FamilySpec::JensenShifted { s }, n, Some(g), ctx)?.pop().unwrap();
                let coeffs = reversed_scaled(&q, n, g, s)?;
                devs.push((s, sup_deviation(&coeffs, &target, 2.0)));
            }
        }
        AsymptoticCheck::LaguerreLimit { n, alpha, s_values } => {
            let n = *n;
            let target = laguerre_limit_target(n, alpha)?;
            let tf: Vec<f64> = target.coeffs().iter().map(|c| c.to_f64()).collect();
            let ev = move |z: Complex64| eval_f64(&tf, z);
            for &s in s_values {
                let g = table(gammas, n + s + 2)?;
                let p = generate_family(&FamilySpec::PAlpha { alpha: alpha.clone(), s }, n, Some(g), ctx)?.pop().unwrap();
                let t = g[n + s + 1].try_div(&g[n + s])?.scale(&-(alpha + int((n + s + 1) as i64)));
                let sign = if (n + s) % 2 == 0 { int(1) } else { int(-1) };
                let lead = g[s]
                    .try_div(&g[n + s])?
                    .scale(&(sign / pochhammer(&(alpha + int(s as i64 + 1)), n as u32)));
                let coeffs: Vec<f64> = (0..=n)
                    .map(|j| lead.mul(&p.coeff(j, ctx)).mul(&t.pow(j as u32)).to_f64())
                    .collect();
                devs.push((s, sup_deviation(&coeffs, &ev, 2.0)));
            }
        }
        AsymptoticCheck::DualLaguerreLimit { n, alpha, s_values } => {
            let n = *n;
            let l = laguerre(n, alpha)?.scale_rational(&inv(pochhammer(&(alpha + int(1)), n as u32)));
            let tf: Vec<f64> = l.coeffs().iter().map(|c| c.to_f64()).collect();
            let ev = move |z: Complex64| eval_f64(&tf, z);
            for &s in s_values {
                let g = table(gammas, n + s + 2)?;
                let q = generate_family(&FamilySpec::QAlpha { alpha: alpha.clone(), s }, n, Some(g), ctx)?.pop().unwrap();
                let coeffs = reversed_scaled(&q, n, g, s)?;
                devs.push((s, sup_deviation(&coeffs, &ev, 2.0)));
            }
        }
    }
    let (nonincreasing_tail, converged) = convergence_flags(&devs, factor);
    Ok(AsymptoticReport { deviations: devs, nonincreasing_tail, converged })
}

/// Coefficients of `(γ_s/γ_{n+s}) (t z)^n q(1/(t z))`, `t = γ_{n+s+1}/γ_{n+s}`.
fn reversed_scaled<T: Scalar>(q: &RealPoly<T>, n: usize, g: &[T], s: usize) -> Result<Vec<f64>> {
    if !nonzero(&g[n + s]) {
        return Err(Error::ScalingUndefined(n + s));
    }
    let ctx = g[0].ctx();
    let t = g[n + s + 1].try_div(&g[n + s])?;
    let lead = g[s].try_div(&g[n + s])?;
    // z^{n-j} carries q_j t^{n-j}
    Ok((0..=n)
        .map(|k| lead.mul(&q.coeff(n - k, ctx)).mul(&t.pow(k as u32)).to_f64())
        .collect())
}

fn eval_f64(c: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for x in c.iter().rev() {
        acc = acc * z + x;
    }
    acc
}

/// `Σ_j (-1)^j z^{n-j} / (j! (n-j)! (α+1)_j)`.
pub fn laguerre_limit_target(n: usize, alpha: &ExactRational) -> Result<ExactPoly> {
    check_alpha(alpha)?;
    let mut c = alloc::vec![ExactRational::zero(); n + 1];
    for j in 0..=n {
        let sign = if j % 2 == 0 { int(1) } else { int(-1) };
        c[n - j] = sign / (fact(j) * fact(n - j) * pochhammer(&(alpha + int(1)), j as u32));
    }
    Ok(ExactPoly::new(c))
}

/// Smallest `s` in the grid from which every later cell is real-rooted
/// (`None` if the last cell is not).
pub fn empirical_threshold(cells: &[(usize, bool)]) -> Option<usize> {
    let mut first = None;
    for &(s, ok) in cells {
        match (ok, first) {
            (true, None) => first = Some(s),
            (false, _) => first = None,
            _ => {}
        }
    }
    first
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{rat, BallReal};
    use crate::operators::shifted_generator;
    use crate::realroots::{certify, RootStatus};
    use alloc::vec;
    use num_traits::One;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn random_gammas(seed: u64, n: usize) -> Vec<ExactRational> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| rat(rng.gen_range(1..40), rng.gen_range(1..40))).collect()
    }

    fn reciprocal(q: &ExactRational) -> ExactRational {
        if q.is_zero() {
            ExactRational::zero()
        } else {
            ExactRational::one() / q
        }
    }

    // real-rooted with strictly alternating coefficients means every zero is positive
    fn alternating(c: &[ExactRational]) -> bool {
        c.windows(2).all(|w| (&w[0] * &w[1]).is_negative())
    }

    #[test]
    fn laguerre_examples() {
        let half = rat(1, 2);
        assert_eq!(laguerre(0, &half).unwrap(), ExactPoly::from_ints(&[1]));
        assert_eq!(laguerre(1, &int(3)).unwrap(), ExactPoly::from_ints(&[4, -1]));
        for n in 0..=10 {
            assert_eq!(laguerre(n, &half).unwrap(), laguerre_by_recurrence(n, &half).unwrap());
            if n > 0 {
                let c = certify(&laguerre(n, &half).unwrap()).unwrap();
                assert_eq!(c.status, RootStatus::RealRooted);
                assert_eq!(c.all_simple_away_from_zero, Some(true));
                assert!(alternating(laguerre(n, &half).unwrap().coeffs()));
            }
        }
        assert!(laguerre(2, &int(-1)).is_err());
    }

    #[test]
    fn limit_target_is_reversed_laguerre() {
        for alpha in [int(0), rat(1, 2), int(2)] {
            for n in 0..6 {
                let l = laguerre(n, &alpha).unwrap().reverse(n).unwrap();
                let l = l.scale_rational(&reciprocal(&pochhammer(&(&alpha + int(1)), n as u32)));
                assert_eq!(laguerre_limit_target(n, &alpha).unwrap(), l);
            }
        }
    }

    #[test]
    fn family_examples() {
        let g = random_gammas(1, 12);
        let qhat0 = generate_family(&FamilySpec::Qhat { big_n: 0 }, 6, Some(&g), ()).unwrap();
        let jensen = generate_family(&FamilySpec::Jensen, 6, Some(&g), ()).unwrap();
        assert_eq!(qhat0, jensen);
        let q1 = generate_family(&FamilySpec::JensenShifted { s: 3 }, 1, Some(&g), ()).unwrap();
        assert_eq!(q1[1], ExactPoly::new(vec![int(1), &g[4] / &g[3]]));
        let short = generate_family(&FamilySpec::JensenShifted { s: 3 }, 9, Some(&g), ());
        assert_eq!(short.unwrap_err(), Error::GammaTableTooShort { needed: 13, available: 12 });
    }

    #[test]
    fn appell_dunkl_cubic_coefficients() {
        let mu = rat(1, 3);
        let spec = FamilySpec::AppellDunkl { mu: mu.clone(), a: SeriesSpec::polynomial(&[int(1), int(3), int(3), int(1)]) };
        let ps = generate_family::<ExactRational>(&spec, 8, None, ()).unwrap();
        for n in 3..=8 {
            assert_eq!(ps[n].low_zero_count(), n - 3);
            let r = dunkl_cubic(&mu, n).unwrap();
            let c = |k| dunkl_c(k, &mu);
            assert_eq!(r.coeffs(), &[&c(n) / &c(n - 3), int(3) * &c(n) / &c(n - 2), int(3) * &c(n) / &c(n - 1), int(1)][..]);
        }
    }

    #[test]
    fn discriminant_closed_forms() {
        let rows = dunkl_discriminant_check(&int(0), [4]).unwrap();
        assert_eq!(rows[0].resultant, int(-27648));
        assert!(rows[0].agrees());
        for mu in [int(0), rat(1, 3), rat(-1, 4), rat(-1, 2), rat(5, 2)] {
            for row in dunkl_discriminant_check(&mu, 3..=12).unwrap() {
                assert!(row.agrees(), "mu = {mu}, n = {}", row.n);
            }
        }
        // Appell case: Δ/n⁴ → 0 and every p_n is real-rooted
        let mu = rat(-1, 2);
        assert_eq!(dunkl_discriminant_limit(&mu), int(0));
        for n in 3..=12 {
            assert_eq!(certify(&dunkl_cubic(&mu, n).unwrap()).unwrap().status, RootStatus::RealRooted);
        }
    }

    #[test]
    fn even_split() {
        let one = TruncatedSeries::exact(&SeriesSpec::polynomial(&[int(1)]), 13).unwrap();
        assert!(even_a_dunkl_split(&one, &rat(1, 2), 6).unwrap().iter().all(|r| r.1));
        let a = TruncatedSeries::exact(&SeriesSpec::polynomial(&[int(1), int(0), int(-1)]), 13).unwrap();
        assert!(even_a_dunkl_split(&a, &rat(1, 2), 6).unwrap().iter().all(|r| r.1));
        let odd = TruncatedSeries::exact(&SeriesSpec::Exp, 13).unwrap();
        assert_eq!(even_a_dunkl_split(&odd, &rat(1, 2), 6).unwrap_err(), Error::NotEvenSeries);
        // A(√z) = (1-z)(1-4z) has only real zeros, and so does each q_{n,μ}
        let a = TruncatedSeries::exact(&SeriesSpec::polynomial(&[int(1), int(0), int(-5), int(0), int(4)]), 11).unwrap();
        let root = TruncatedSeries::exact(&SeriesSpec::polynomial(&[int(1), int(-5), int(4)]), 5).unwrap();
        let b = TruncatedSeries::exact(&SeriesSpec::hypergeometric(&[rat(3, 2)]), 5).unwrap();
        for q in brenke_polynomials(&root, &b, 5).unwrap().iter().skip(1) {
            let c = certify(q).unwrap();
            assert_eq!(c.status, RootStatus::RealRooted);
        }
        assert!(even_a_dunkl_split(&a, &rat(1, 2), 5).unwrap().iter().all(|r| r.1));
    }

    #[test]
    fn klv_small() {
        let s = klv_sections(&int(2), 3).unwrap();
        assert_eq!(s[3], ExactPoly::new(vec![int(1), rat(1, 2), rat(1, 16), rat(1, 512)]));
    }

    #[test]
    fn brenke_limit_shrinks() {
        let check = AsymptoticCheck::Brenke {
            a: SeriesSpec::Exp,
            b: SeriesSpec::hypergeometric(&[int(2)]),
            indices: vec![10, 20, 30],
            radius: 2.0,
        };
        let r = verify_scaled_limit::<ExactRational>(&check, None, (), CONVERGENCE_FACTOR).unwrap();
        assert!(r.deviations[2].1 < r.deviations[0].1);
        assert!(r.nonincreasing_tail && !r.converged);
        let dual = AsymptoticCheck::BrenkeDual {
            a: SeriesSpec::hypergeometric(&[int(2)]),
            b: SeriesSpec::Exp,
            indices: vec![10, 20, 30],
            radius: 2.0,
        };
        let d = verify_scaled_limit::<ExactRational>(&dual, None, (), CONVERGENCE_FACTOR).unwrap();
        assert!(d.deviations[2].1 < d.deviations[0].1);
        let bad = AsymptoticCheck::Brenke {
            a: SeriesSpec::Exp,
            b: SeriesSpec::polynomial(&[int(1), int(1)]),
            indices: vec![1],
            radius: 2.0,
        };
        assert_eq!(verify_scaled_limit::<ExactRational>(&bad, None, (), 1e-3).unwrap_err(), Error::ScalingUndefined(1));
    }

    #[test]
    fn thresholds() {
        assert_eq!(empirical_threshold(&[(0, false), (1, true), (2, true)]), Some(1));
        assert_eq!(empirical_threshold(&[(0, true), (1, false), (2, true)]), Some(2));
        assert_eq!(empirical_threshold(&[(0, true), (1, false)]), None);
    }

    #[test]
    fn ball_path_generation() {
        let g: Vec<BallReal> = random_gammas(5, 10).iter().map(|q| BallReal::from_rational(q, 128)).collect();
        let ps = generate_family(&FamilySpec::Qhat { big_n: 1 }, 5, Some(&g), 128).unwrap();
        let exact = generate_family(&FamilySpec::Qhat { big_n: 1 }, 5, Some(&random_gammas(5, 10)), ()).unwrap();
        for (b, e) in ps.iter().zip(&exact) {
            for (x, y) in b.coeffs().iter().zip(e.coeffs()) {
                assert!(x.contains_rational(y));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn qhat_derivative_ladder(seed in 0u64..1000, n in 1usize..7, big_n in 1u32..3, l in 0usize..7) {
            // (x^n q̂_{N,n})^{(n-l)} = x^l q_{l,n,…,n;n}
            prop_assume!(l <= n);
            let g = random_gammas(seed, n + 1);
            let q = generate_family(&FamilySpec::Qhat { big_n }, n, Some(&g), ()).unwrap().pop().unwrap();
            let mut lhs = q.shift_up(n);
            for _ in 0..n - l {
                lhs = lhs.derivative();
            }
            let mut ls = vec![l];
            ls.extend(std::iter::repeat_n(n, big_n as usize - 1));
            let rhs = jensen_multi(&ls, n, &g).unwrap().shift_up(l);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn p_alpha_is_a_shifted_brenke_family(seed in 0u64..1000, s in 0usize..4, num in 0i64..6, den in 1i64..4) {
            let alpha = rat(num, den) - rat(1, 2);
            let g = random_gammas(seed, 10);
            let spec = FamilySpec::PAlpha { alpha: alpha.clone(), s };
            let direct = generate_family(&spec, 5, Some(&g), ()).unwrap();
            let zeta = TruncatedSeries::build(&SeriesSpec::ZetaRelative { s: 0 }, 9, Some(&g), ()).unwrap();
            let c = TruncatedSeries::exact(&SeriesSpec::Dilated(alloc::boxed::Box::new(SeriesSpec::hypergeometric(&[&alpha + int(1)])), int(-1)), 9).unwrap();
            let shifted = shifted_generator(&zeta, &c, s, 5).unwrap();
            let e = TruncatedSeries::exact(&SeriesSpec::Exp, 5).unwrap();
            let via = brenke_polynomials(&shifted, &e, 5).unwrap();
            let sign = if s % 2 == 0 { int(1) } else { int(-1) };
            for (d, v) in direct.iter().zip(&via) {
                prop_assert_eq!(d, &v.scale_rational(&sign));
            }
        }
    }
}
