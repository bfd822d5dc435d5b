//! Dense univariate polynomials over a [`Scalar`].

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{ExactRational, Scalar, Sign};

/// `Σ coeffs[j] x^j`, exactly-zero top coefficients trimmed.
#[derive(Clone, PartialEq)]
pub struct RealPoly<T> {
    coeffs: Vec<T>,
}

pub type ExactPoly = RealPoly<ExactRational>;

impl<T: Scalar> fmt::Debug for RealPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl<T: Scalar> RealPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_exact_zero()) {
            coeffs.pop();
        }
        RealPoly { coeffs }
    }

    pub fn zero() -> Self {
        RealPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(alloc::vec![c])
    }

    /// `x^n`.
    pub fn monomial(n: usize, ctx: T::Ctx) -> Self {
        let mut c = alloc::vec![T::zero_in(ctx); n + 1];
        c[n] = T::one_in(ctx);
        RealPoly { coeffs: c }
    }

    pub fn from_rationals(c: &[ExactRational], ctx: T::Ctx) -> Self {
        Self::new(c.iter().map(|q| T::from_rational_in(q, ctx)).collect())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^j` (zero beyond the stored length).
    pub fn coeff(&self, j: usize, ctx: T::Ctx) -> T {
        self.coeffs.get(j).cloned().unwrap_or_else(|| T::zero_in(ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the top stored coefficient; `None` for the zero polynomial.
    pub fn len_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Largest index whose coefficient is certified nonzero, and whether any
    /// coefficient above it is of unknown sign.
    pub fn certified_degree(&self) -> (Option<usize>, bool) {
        let mut uncertain = false;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            match c.sign() {
                Sign::Positive | Sign::Negative => return (Some(j), uncertain),
                Sign::Unknown => uncertain = true,
                Sign::Zero => {}
            }
        }
        (None, uncertain)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn ctx_or(&self, ctx: T::Ctx) -> T::Ctx {
        self.coeffs.first().map_or(ctx, |c| c.ctx())
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero_in(x.ctx());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Horner evaluation of midpoints in complex `f64`.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_f64();
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            out.push(match (self.coeffs.get(j), o.coeffs.get(j)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        RealPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let ctx = self.coeffs[0].ctx();
        let mut out = alloc::vec![T::zero_in(ctx); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn scale_rational(&self, q: &ExactRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.scale(q)).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.mul(&T::from_i64_in(j as i64, c.ctx())))
                .collect(),
        )
    }

    /// `x^n p(1/x)`; requires stored degree at most `n`.
    pub fn reverse(&self, n: usize) -> Result<Self> {
        if let Some(d) = self.len_degree() {
            if d > n {
                return Err(Error::DegreeExceedsN { degree: d, n });
            }
        } else {
            return Ok(Self::zero());
        }
        let ctx = self.coeffs[0].ctx();
        Ok(Self::new((0..=n).map(|j| self.coeff(n - j, ctx)).collect()))
    }

    /// `p(λx)`.
    pub fn dilate(&self, l: &T) -> Self {
        let mut p = T::one_in(l.ctx());
        Self::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let v = c.mul(&p);
                    p = p.mul(l);
                    v
                })
                .collect(),
        )
    }

    /// `p(c x^2)`.
    pub fn compose_square(&self, c: &T) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let ctx = c.ctx();
        let mut out = alloc::vec![T::zero_in(ctx); 2 * self.coeffs.len() - 1];
        let mut p = T::one_in(ctx);
        for (j, a) in self.coeffs.iter().enumerate() {
            out[2 * j] = a.mul(&p);
            p = p.mul(c);
        }
        Self::new(out)
    }

    /// `x^k p(x)`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let ctx = self.coeffs[0].ctx();
        let mut c = alloc::vec![T::zero_in(ctx); k];
        c.extend(self.coeffs.iter().cloned());
        Self::new(c)
    }

    /// Number of low-order coefficients that are exactly zero.
    pub fn low_zero_count(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_exact_zero()).count()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> RealPoly<U> {
        RealPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl ExactPoly {
    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&n| crate::numerics::int(n)).collect())
    }

    pub fn degree(&self) -> Option<usize> {
        self.len_degree()
    }

    /// Monic copy (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let l = l.clone();
                Self::new(self.coeffs.iter().map(|c| c / &l).collect())
            }
            None => Self::zero(),
        }
    }

    /// Euclidean division over ℚ.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = alloc::vec![ExactRational::default(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lead;
            if c != ExactRational::default() {
                for j in 0..=dd {
                    r[k + j] -= &c * &d.coeffs[j];
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }
}
