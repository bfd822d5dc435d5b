//! Normalized power series `1 + c_1 z + c_2 z^2 + ...` and their truncations.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::rational::{factorial, pochhammer};
use crate::numerics::{int, rat, BallReal, ExactRational, Scalar, Sign};

/// Description of a generating series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesSpec {
    /// `e^z`.
    Exp,
    /// `Σ z^j / (j! Π_i (φ_i)_j)`.
    Hypergeometric0Fq(Vec<ExactRational>),
    /// Dunkl kernel with coefficients `1/c_{n,μ}`.
    DunklE(ExactRational),
    /// `1/(1-z)`.
    Geometric,
    /// `Σ q^{n²} z^n`, `q > 1`.
    Bq(ExactRational),
    /// Period-three sign pattern: `1, -2^{-k}, 2^{-k}` at `n = 3k, 3k+1, 3k+2`.
    TrivialRational,
    /// `1 + Σ_{n≥1} z^n / n`.
    LogLike,
    /// `ς^{(s)}(z)/ς^{(s)}(0)`, coefficients `γ_{n+s} / (γ_s n!)`.
    ZetaRelative { s: u32 },
    /// Finite coefficient list, zero beyond its length; rescaled so `c_0 = 1`.
    Explicit(Vec<ExactRational>),
    /// `(c_s/a_s) Λ_C^s A`: coefficient `n` is `(c_s/a_s) a_{n+s} c_n / c_{n+s}`.
    Shifted {
        base: Box<SeriesSpec>,
        lowering: Box<SeriesSpec>,
        s: u32,
    },
    /// Cauchy product of the factors.
    Product(Vec<SeriesSpec>),
    /// `S(λz)`.
    Dilated(Box<SeriesSpec>, ExactRational),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientKind {
    Exact,
    Ball,
}

impl SeriesSpec {
    pub fn hypergeometric(phi: &[ExactRational]) -> SeriesSpec {
        SeriesSpec::Hypergeometric0Fq(phi.to_vec())
    }

    /// Polynomial series from its coefficients.
    pub fn polynomial(coeffs: &[ExactRational]) -> SeriesSpec {
        SeriesSpec::Explicit(coeffs.to_vec())
    }

    pub fn coefficient_kind(&self) -> CoefficientKind {
        if self.needs_zeta() {
            CoefficientKind::Ball
        } else {
            CoefficientKind::Exact
        }
    }

    pub fn needs_zeta(&self) -> bool {
        match self {
            SeriesSpec::ZetaRelative { .. } => true,
            SeriesSpec::Shifted { base, lowering, .. } => base.needs_zeta() || lowering.needs_zeta(),
            SeriesSpec::Product(fs) => fs.iter().any(|f| f.needs_zeta()),
            SeriesSpec::Dilated(b, _) => b.needs_zeta(),
            _ => false,
        }
    }

    /// Largest γ index needed for `n_max` coefficients.
    pub fn zeta_index_needed(&self, n_max: usize) -> usize {
        match self {
            SeriesSpec::ZetaRelative { s } => n_max + *s as usize,
            SeriesSpec::Shifted { base, lowering, s } => base
                .zeta_index_needed(n_max + *s as usize)
                .max(lowering.zeta_index_needed(n_max + *s as usize)),
            SeriesSpec::Product(fs) => fs.iter().map(|f| f.zeta_index_needed(n_max)).max().unwrap_or(0),
            SeriesSpec::Dilated(b, _) => b.zeta_index_needed(n_max),
            _ => 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SeriesSpec::Hypergeometric0Fq(phi) => {
                if let Some(p) = phi.iter().find(|p| !p.is_positive()) {
                    return Err(Error::InvalidParameter(format!("phi must be positive, got {p}")));
                }
            }
            SeriesSpec::DunklE(mu) => {
                if mu.is_integer() && mu.is_negative() {
                    return Err(Error::InvalidParameter(format!(
                        "mu must not be a negative integer, got {mu}"
                    )));
                }
            }
            SeriesSpec::Bq(q) => {
                if *q <= ExactRational::one() {
                    return Err(Error::InvalidParameter(format!("q must exceed 1, got {q}")));
                }
            }
            SeriesSpec::Explicit(c) => {
                if c.first().is_none_or(|c0| c0.is_zero()) {
                    return Err(Error::InvalidParameter("constant coefficient must be nonzero".into()));
                }
            }
            SeriesSpec::Shifted { base, lowering, .. } => {
                base.validate()?;
                lowering.validate()?;
            }
            SeriesSpec::Product(fs) => {
                for f in fs {
                    f.validate()?;
                }
            }
            SeriesSpec::Dilated(b, _) => b.validate()?,
            _ => {}
        }
        Ok(())
    }

    /// Exact coefficients `c_0 … c_{n_max}`; fails for ζ-derived series.
    pub fn exact_coefficients(&self, n_max: usize) -> Result<Vec<ExactRational>> {
        self.validate()?;
        let out = match self {
            SeriesSpec::Exp => (0..=n_max)
                .map(|n| ExactRational::new(BigInt::one(), factorial(n as u32)))
                .collect(),
            SeriesSpec::Hypergeometric0Fq(phi) => (0..=n_max)
                .map(|j| {
                    let mut d = ExactRational::from_integer(factorial(j as u32));
                    for p in phi {
                        d *= pochhammer(p, j as u32);
                    }
                    d.recip()
                })
                .collect(),
            SeriesSpec::DunklE(mu) => (0..=n_max).map(|n| dunkl_c(n, mu).recip()).collect(),
            SeriesSpec::Geometric => (0..=n_max).map(|_| ExactRational::one()).collect(),
            SeriesSpec::Bq(q) => (0..=n_max)
                .map(|n| num_traits::pow(q.clone(), n * n))
                .collect(),
            SeriesSpec::TrivialRational => (0..=n_max)
                .map(|n| {
                    let k = n / 3;
                    let p = ExactRational::new(BigInt::one(), BigInt::one() << k);
                    match n % 3 {
                        0 => ExactRational::one(),
                        1 => -p,
                        _ => p,
                    }
                })
                .collect(),
            SeriesSpec::LogLike => (0..=n_max)
                .map(|n| if n == 0 { int(1) } else { rat(1, n as i64) })
                .collect(),
            SeriesSpec::ZetaRelative { .. } => return Err(Error::RequiresBall),
            SeriesSpec::Explicit(c) => {
                let c0 = c[0].clone();
                (0..=n_max)
                    .map(|n| c.get(n).map_or_else(ExactRational::zero, |v| v / &c0))
                    .collect()
            }
            SeriesSpec::Shifted { base, lowering, s } => {
                let a = base.exact_coefficients(n_max + *s as usize)?;
                let c = lowering.exact_coefficients(n_max + *s as usize)?;
                shifted_coefficients(&a, &c, *s as usize, n_max)?
            }
            SeriesSpec::Product(fs) => {
                let mut acc = vec_one::<ExactRational>((), n_max);
                for f in fs {
                    acc = cauchy(&acc, &f.exact_coefficients(n_max)?);
                }
                acc
            }
            SeriesSpec::Dilated(b, l) => dilate_vec(&b.exact_coefficients(n_max)?, l),
        };
        Ok(out)
    }

    /// Ball coefficients; `gammas` must cover [`zeta_index_needed`](Self::zeta_index_needed).
    pub fn ball_coefficients(
        &self,
        n_max: usize,
        prec: u32,
        gammas: Option<&[BallReal]>,
    ) -> Result<Vec<BallReal>> {
        let g: Option<Vec<BallReal>> = gammas.map(|g| g.iter().map(|x| x.with_precision(prec)).collect());
        self.coefficients_in(n_max, g.as_deref(), prec)
    }

    /// Coefficients in any scalar type; `gammas[k]` stands for `γ_k` in ζ-derived specs.
    pub fn coefficients_in<T: Scalar>(&self, n_max: usize, gammas: Option<&[T]>, ctx: T::Ctx) -> Result<Vec<T>> {
        if !self.needs_zeta() {
            return Ok(self
                .exact_coefficients(n_max)?
                .iter()
                .map(|q| T::from_rational_in(q, ctx))
                .collect());
        }
        let out = match self {
            SeriesSpec::ZetaRelative { s } => {
                let s = *s as usize;
                let available = gammas.map_or(0, |g| g.len());
                let g = gammas
                    .filter(|g| g.len() > n_max + s)
                    .ok_or(Error::GammaTableTooShort { needed: n_max + s + 1, available })?;
                let mut out = Vec::with_capacity(n_max + 1);
                out.push(T::one_in(ctx));
                let mut fact = BigInt::one();
                for n in 1..=n_max {
                    fact *= n;
                    let den = g[s].mul(&T::from_rational_in(&ExactRational::from_integer(fact.clone()), ctx));
                    out.push(g[n + s].try_div(&den)?);
                }
                out
            }
            SeriesSpec::Shifted { base, lowering, s } => {
                let a = base.coefficients_in(n_max + *s as usize, gammas, ctx)?;
                let c = lowering.coefficients_in(n_max + *s as usize, gammas, ctx)?;
                shifted_coefficients(&a, &c, *s as usize, n_max)?
            }
            SeriesSpec::Product(fs) => {
                let mut acc = vec_one::<T>(ctx, n_max);
                for f in fs {
                    acc = cauchy(&acc, &f.coefficients_in(n_max, gammas, ctx)?);
                }
                acc
            }
            SeriesSpec::Dilated(b, l) => dilate_vec(&b.coefficients_in(n_max, gammas, ctx)?, &T::from_rational_in(l, ctx)),
            _ => unreachable!("non-zeta specs handled above"),
        };
        Ok(out)
    }
}

/// `c_{n,μ}`: `2^{2k} k! (μ+1)_k` for `n = 2k`, `2^{2k+1} k! (μ+1)_{k+1}` for `n = 2k+1`.
pub fn dunkl_c(n: usize, mu: &ExactRational) -> ExactRational {
    let k = n / 2;
    let m1 = mu + ExactRational::one();
    let poch = pochhammer(&m1, (k + n % 2) as u32);
    ExactRational::from_integer((BigInt::one() << n) * factorial(k as u32)) * poch
}

fn vec_one<T: Scalar>(ctx: T::Ctx, n_max: usize) -> Vec<T> {
    let mut v = alloc::vec![T::zero_in(ctx); n_max + 1];
    v[0] = T::one_in(ctx);
    v
}

fn cauchy<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len().min(b.len());
    (0..n)
        .map(|k| {
            let mut s = a[0].mul(&b[k]);
            for j in 1..=k {
                s = s.add(&a[j].mul(&b[k - j]));
            }
            s
        })
        .collect()
}

fn dilate_vec<T: Scalar>(c: &[T], l: &T) -> Vec<T> {
    let mut p = T::one_in(l.ctx());
    c.iter()
        .map(|x| {
            let v = x.mul(&p);
            p = p.mul(l);
            v
        })
        .collect()
}

/// Coefficient `n` is `(c_s/a_s) a_{n+s} c_n / c_{n+s}` for `n ≤ n_max`.
pub fn shifted_coefficients<T: Scalar>(a: &[T], c: &[T], s: usize, n_max: usize) -> Result<Vec<T>> {
    let need = n_max + s + 1;
    if a.len() < need || c.len() < need {
        return Err(Error::TruncationTooShort {
            needed: need - 1,
            available: a.len().min(c.len()).saturating_sub(1),
        });
    }
    let lead = c[s].try_div(&a[s]).map_err(|_| Error::ZeroCoefficient(s))?;
    (0..=n_max)
        .map(|n| {
            let r = c[n].try_div(&c[n + s]).map_err(|_| Error::ZeroCoefficient(n + s))?;
            Ok(lead.mul(&a[n + s]).mul(&r))
        })
        .collect()
}

/// First `N + 1` coefficients of a normalized series.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<T> {
    pub spec: SeriesSpec,
    coeffs: Vec<T>,
}

impl TruncatedSeries<ExactRational> {
    pub fn exact(spec: &SeriesSpec, n_max: usize) -> Result<Self> {
        Ok(TruncatedSeries {
            coeffs: spec.exact_coefficients(n_max)?,
            spec: spec.clone(),
        })
    }
}

impl TruncatedSeries<BallReal> {
    pub fn ball(spec: &SeriesSpec, n_max: usize, prec: u32, gammas: Option<&[BallReal]>) -> Result<Self> {
        Ok(TruncatedSeries {
            coeffs: spec.ball_coefficients(n_max, prec, gammas)?,
            spec: spec.clone(),
        })
    }
}

impl<T: Scalar> TruncatedSeries<T> {
    /// Truncation of `spec` in any scalar type; see [`SeriesSpec::coefficients_in`].
    pub fn build(spec: &SeriesSpec, n_max: usize, gammas: Option<&[T]>, ctx: T::Ctx) -> Result<Self> {
        Ok(TruncatedSeries {
            coeffs: spec.coefficients_in(n_max, gammas, ctx)?,
            spec: spec.clone(),
        })
    }

    /// Wraps raw coefficients; `coeffs[0]` must be certified nonzero and is scaled to 1.
    pub fn from_coeffs(spec: SeriesSpec, coeffs: Vec<T>) -> Result<Self> {
        let c0 = coeffs.first().ok_or(Error::ZeroCoefficient(0))?.clone();
        if !matches!(c0.sign(), Sign::Positive | Sign::Negative) {
            return Err(Error::ZeroCoefficient(0));
        }
        let coeffs = if c0 == T::one_in(c0.ctx()) {
            coeffs
        } else {
            coeffs.iter().map(|c| c.try_div(&c0)).collect::<core::result::Result<_, _>>()?
        };
        Ok(TruncatedSeries { spec, coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &T {
        &self.coeffs[n]
    }

    pub fn ensure_order(&self, n: usize) -> Result<()> {
        if self.order() < n {
            Err(Error::TruncationTooShort {
                needed: n,
                available: self.order(),
            })
        } else {
            Ok(())
        }
    }

    /// `c_n ↦ c_n λ^n`.
    pub fn dilate(&self, l: &T) -> Self {
        TruncatedSeries {
            spec: self.spec.clone(),
            coeffs: dilate_vec(&self.coeffs, l),
        }
    }

    /// Partial sum `Σ_{n≤N} c_n z^n` (no tail bound).
    pub fn evaluate(&self, z: &T) -> T {
        let mut acc = T::zero_in(z.ctx());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(c);
        }
        acc
    }

    pub fn truncate(&self, n: usize) -> Self {
        TruncatedSeries {
            spec: self.spec.clone(),
            coeffs: self.coeffs[..=n.min(self.order())].to_vec(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        TruncatedSeries {
            spec: SeriesSpec::Product(alloc::vec![self.spec.clone(), other.spec.clone()]),
            coeffs: cauchy(&self.coeffs, &other.coeffs),
        }
    }

    /// Partial sums evaluated at a complex point, in `f64` (diagnostics only).
    pub fn evaluate_complex(&self, z: num_complex::Complex64) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_f64();
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn ex(spec: SeriesSpec, n: usize) -> Vec<ExactRational> {
        spec.exact_coefficients(n).unwrap()
    }

    #[test]
    fn named_examples() {
        assert_eq!(ex(SeriesSpec::Exp, 3), vec![int(1), int(1), rat(1, 2), rat(1, 6)]);
        assert_eq!(
            ex(SeriesSpec::hypergeometric(&[int(1)]), 2),
            vec![int(1), int(1), rat(1, 4)]
        );
        assert_eq!(
            ex(SeriesSpec::TrivialRational, 5),
            vec![int(1), int(-1), int(1), int(1), rat(-1, 2), rat(1, 2)]
        );
        assert_eq!(ex(SeriesSpec::DunklE(rat(-1, 2)), 3), ex(SeriesSpec::Exp, 3));
        assert_eq!(ex(SeriesSpec::LogLike, 3), vec![int(1), int(1), rat(1, 2), rat(1, 3)]);
        assert_eq!(ex(SeriesSpec::Bq(int(2)), 2), vec![int(1), int(2), int(16)]);
    }

    #[test]
    fn invalid_parameters() {
        assert!(SeriesSpec::hypergeometric(&[int(0)]).exact_coefficients(2).is_err());
        assert!(SeriesSpec::Bq(int(1)).exact_coefficients(2).is_err());
        assert!(SeriesSpec::DunklE(int(-2)).exact_coefficients(2).is_err());
        assert!(SeriesSpec::DunklE(rat(-3, 2)).exact_coefficients(2).is_ok());
        assert_eq!(
            SeriesSpec::ZetaRelative { s: 0 }.exact_coefficients(2),
            Err(Error::RequiresBall)
        );
    }

    #[test]
    fn hypergeometric_term_recurrence() {
        let phi = vec![rat(1, 2), rat(7, 3)];
        let c = ex(SeriesSpec::hypergeometric(&phi), 15);
        for n in 1..=15 {
            let mut r = ExactRational::from_integer(BigInt::from(n));
            for p in &phi {
                r *= p + int(n as i64 - 1);
            }
            assert_eq!(&c[n] * r, c[n - 1]);
        }
    }

    #[test]
    fn dunkl_parity_formula() {
        for mu in [rat(1, 3), int(0), rat(5, 2)] {
            let c = ex(SeriesSpec::DunklE(mu.clone()), 20);
            for n in 0..=20usize {
                let k = n / 2;
                let expected = if n % 2 == 0 {
                    int(4).pow(k as i32)
                        * ExactRational::from_integer(factorial(k as u32))
                        * pochhammer(&(&mu + int(1)), k as u32)
                } else {
                    int(2).pow(n as i32)
                        * ExactRational::from_integer(factorial(k as u32))
                        * pochhammer(&(&mu + int(1)), k as u32 + 1)
                };
                assert_eq!(c[n].recip(), expected, "n={n}");
            }
        }
    }

    #[test]
    fn dilate_and_evaluate() {
        let e = TruncatedSeries::exact(&SeriesSpec::Exp, 5).unwrap();
        assert_eq!(e.dilate(&int(0)).coeffs(), &[int(1), int(0), int(0), int(0), int(0), int(0)]);
        let g = TruncatedSeries::exact(&SeriesSpec::Geometric, 4).unwrap();
        assert_eq!(g.dilate(&int(2)).coeffs(), &[int(1), int(2), int(4), int(8), int(16)]);
        assert_eq!(g.evaluate(&rat(1, 2)), int(2) * (int(1) - rat(1, 32)));
        assert_eq!(e.evaluate(&int(0)), int(1));
        let e20 = TruncatedSeries::ball(&SeriesSpec::Exp, 20, 128, None).unwrap();
        let v = e20.evaluate(&BallReal::one(128));
        assert!((v.mid_f64() - core::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn explicit_is_normalized() {
        let s = SeriesSpec::polynomial(&[int(-1), int(1)]);
        assert_eq!(ex(s, 2), vec![int(1), int(-1), int(0)]);
        assert!(SeriesSpec::polynomial(&[int(0), int(1)]).exact_coefficients(2).is_err());
    }

    #[test]
    fn zeta_relative_from_table() {
        let g: Vec<BallReal> = [int(1), rat(1, 2), rat(1, 3), rat(1, 4)]
            .iter()
            .map(|q| BallReal::from_rational(q, 64))
            .collect();
        let c = SeriesSpec::ZetaRelative { s: 1 }.ball_coefficients(2, 64, Some(&g)).unwrap();
        assert!(c[1].contains_rational(&rat(2, 3)));
        assert!(c[2].contains_rational(&rat(1, 4)));
        assert!(SeriesSpec::ZetaRelative { s: 1 }.ball_coefficients(3, 64, Some(&g)).is_err());
    }

    fn rat_series() -> impl Strategy<Value = Vec<ExactRational>> {
        prop::collection::vec((-20i64..20, 1i64..9).prop_map(|(a, b)| rat(a, b)), 1..8)
    }

    proptest! {
        #[test]
        fn dilation_composes(c in rat_series(), a in -5i64..5, b in 1i64..5) {
            let mut c = c;
            c.insert(0, int(1));
            let s = TruncatedSeries::exact(&SeriesSpec::Explicit(c.clone()), c.len() - 1).unwrap();
            let (a, b) = (rat(a, 3), rat(b, 2));
            prop_assert_eq!(s.dilate(&a).dilate(&b), s.dilate(&(&a * &b)));
        }
    }
}
