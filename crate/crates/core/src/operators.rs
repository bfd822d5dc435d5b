//! Brenke generation and the linear operators acting on it.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numerics::{ExactRational, Scalar, Sign};
use crate::poly::RealPoly;
use crate::powerseries::{dunkl_c, shifted_coefficients, SeriesSpec, TruncatedSeries};

/// `p_n(x) = Σ_{j=0}^n a_{n-j} b_j x^j` for `n = 0..=n_max`, the coefficients of
/// `A(z) B(xz) = Σ p_n(x) z^n`.
pub fn brenke_polynomials<T: Scalar>(
    a: &TruncatedSeries<T>,
    b: &TruncatedSeries<T>,
    n_max: usize,
) -> Result<Vec<RealPoly<T>>> {
    a.ensure_order(n_max)?;
    b.ensure_order(n_max)?;
    Ok((0..=n_max).map(|n| brenke_single(a.coeffs(), b.coeffs(), n)).collect())
}

/// A single `p_n`.
pub fn brenke_single<T: Scalar>(a: &[T], b: &[T], n: usize) -> RealPoly<T> {
    RealPoly::new((0..=n).map(|j| a[n - j].mul(&b[j])).collect())
}

fn ratio<T: Scalar>(num: &T, den: &T, idx: usize) -> Result<T> {
    match den.sign() {
        Sign::Zero => Err(Error::ZeroDenominatorCoefficient(idx)),
        Sign::Unknown => Err(Error::SignUnknown),
        _ => Ok(num.try_div(den)?),
    }
}

/// `Λ_B x^n = (b_{n-1}/b_n) x^{n-1}`, `Λ_B 1 = 0`.
pub fn lambda_b<T: Scalar>(b: &TruncatedSeries<T>, p: &RealPoly<T>) -> Result<RealPoly<T>> {
    let Some(d) = p.len_degree() else {
        return Ok(RealPoly::zero());
    };
    b.ensure_order(d)?;
    let c = p.coeffs();
    let mut out = Vec::with_capacity(d);
    for n in 1..=d {
        if c[n].is_exact_zero() {
            out.push(c[n].clone());
            continue;
        }
        out.push(c[n].mul(&ratio(b.coeff(n - 1), b.coeff(n), n)?));
    }
    Ok(RealPoly::new(out))
}

/// `Λ_B` on a series (the truncation loses its top coefficient).
pub fn lambda_on_series<T: Scalar>(b: &TruncatedSeries<T>, s: &TruncatedSeries<T>) -> Result<Vec<T>> {
    let p = RealPoly::new(s.coeffs().to_vec());
    let ctx = s.coeff(0).ctx();
    let l = lambda_b(b, &p)?;
    Ok((0..s.order()).map(|j| l.coeff(j, ctx)).collect())
}

/// Coefficientwise multiplier `x^j ↦ θ_j x^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalOperator<T> {
    pub multipliers: Vec<T>,
}

impl<T: Scalar> DiagonalOperator<T> {
    pub fn new(multipliers: Vec<T>) -> Self {
        DiagonalOperator { multipliers }
    }

    /// `θ_j = b_j / (j+1)_l`.
    pub fn t_b_l(b: &TruncatedSeries<T>, l: u32) -> Self {
        let m = b
            .coeffs()
            .iter()
            .enumerate()
            .map(|(j, bj)| {
                let p = crate::numerics::rational::pochhammer(&crate::numerics::int(j as i64 + 1), l);
                bj.scale(&p.recip())
            })
            .collect();
        DiagonalOperator { multipliers: m }
    }

    /// `θ^{[l]}_j = 1/(j+l)!`.
    pub fn factorial_shift(l: u32, n_max: usize, ctx: T::Ctx) -> Self {
        let m = (0..=n_max)
            .map(|j| {
                let f = crate::numerics::rational::factorial(j as u32 + l);
                T::from_rational_in(&ExactRational::new(1.into(), f), ctx)
            })
            .collect();
        DiagonalOperator { multipliers: m }
    }

    pub fn apply(&self, p: &RealPoly<T>) -> Result<RealPoly<T>> {
        if let Some(d) = p.len_degree() {
            if d >= self.multipliers.len() {
                return Err(Error::TruncationTooShort {
                    needed: d,
                    available: self.multipliers.len().saturating_sub(1),
                });
            }
        }
        Ok(RealPoly::new(
            p.coeffs().iter().zip(&self.multipliers).map(|(c, t)| c.mul(t)).collect(),
        ))
    }
}

pub fn apply_diagonal<T: Scalar>(t: &DiagonalOperator<T>, p: &RealPoly<T>) -> Result<RealPoly<T>> {
    t.apply(p)
}

/// `Υ_B 1 = θ_0`, `Υ_B x^j = b_{j-1}/(j b_j) x^j`.
pub fn upsilon_b<T: Scalar>(b: &TruncatedSeries<T>, theta0: &T, p: &RealPoly<T>) -> Result<RealPoly<T>> {
    if !matches!(theta0.sign(), Sign::Positive | Sign::Negative) {
        return Err(Error::ZeroTheta);
    }
    let Some(d) = p.len_degree() else {
        return Ok(RealPoly::zero());
    };
    b.ensure_order(d)?;
    let c = p.coeffs();
    let mut out = Vec::with_capacity(d + 1);
    out.push(c[0].mul(theta0));
    for j in 1..=d {
        if c[j].is_exact_zero() {
            out.push(c[j].clone());
            continue;
        }
        let jb = b.coeff(j).mul(&T::from_i64_in(j as i64, theta0.ctx()));
        out.push(c[j].mul(&ratio(b.coeff(j - 1), &jb, j)?));
    }
    Ok(RealPoly::new(out))
}

/// `D_α = α I + x d/dx`.
pub fn d_alpha<T: Scalar>(alpha: &ExactRational, p: &RealPoly<T>) -> RealPoly<T> {
    RealPoly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| c.scale(&(alpha + crate::numerics::int(j as i64))))
            .collect(),
    )
}

/// Dunkl operator `f' + (2μ+1)/2 · (f(x) - f(-x))/x`.
pub fn dunkl_operator<T: Scalar>(mu: &ExactRational, p: &RealPoly<T>) -> RealPoly<T> {
    let extra = crate::numerics::int(2) * mu + crate::numerics::int(1);
    RealPoly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| {
                let mut f = crate::numerics::int(j as i64);
                if j % 2 == 1 {
                    f += &extra;
                }
                c.scale(&f)
            })
            .collect(),
    )
}

/// Appell-Dunkl polynomials `p_{n,μ}(x) = c_{n,μ} Σ_j a_{n-j} x^j / c_{j,μ}`.
pub fn appell_dunkl<T: Scalar>(a: &TruncatedSeries<T>, mu: &ExactRational, n_max: usize) -> Result<Vec<RealPoly<T>>> {
    a.ensure_order(n_max)?;
    let c: Vec<ExactRational> = (0..=n_max).map(|n| dunkl_c(n, mu)).collect();
    if let Some(i) = c.iter().position(|x| x == &ExactRational::default()) {
        return Err(Error::ZeroCoefficient(i));
    }
    Ok((0..=n_max)
        .map(|n| {
            RealPoly::new(
                (0..=n)
                    .map(|j| a.coeff(n - j).scale(&(&c[n] / &c[j])))
                    .collect(),
            )
        })
        .collect())
}

/// `(c_s/a_s) Λ_C^s A` as a normalized series of order `n_max`.
pub fn shifted_generator<T: Scalar>(
    a: &TruncatedSeries<T>,
    c: &TruncatedSeries<T>,
    s: usize,
    n_max: usize,
) -> Result<TruncatedSeries<T>> {
    let coeffs = shifted_coefficients(a.coeffs(), c.coeffs(), s, n_max)?;
    let spec = SeriesSpec::Shifted {
        base: alloc::boxed::Box::new(a.spec.clone()),
        lowering: alloc::boxed::Box::new(c.spec.clone()),
        s: s as u32,
    };
    TruncatedSeries::from_coeffs(spec, coeffs)
}
