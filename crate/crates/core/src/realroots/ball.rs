//! Sturm chains in ball arithmetic.

use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{RootCertificate, RootStatus};
use crate::error::{Error, Result};
use crate::numerics::{BallReal, ExactRational, Mag, Sign, DEFAULT_PRECISION};
use crate::poly::RealPoly;

/// A Sturm chain whose members all have certified leading signs and that ends
/// in a certified nonzero constant, so the input is square-free.
#[derive(Clone, Debug)]
pub struct BallSturm {
    chain: Vec<RealPoly<BallReal>>,
    prec: u32,
}

fn leading_sign(p: &RealPoly<BallReal>) -> Sign {
    p.leading().map_or(Sign::Zero, |c| c.sign())
}

/// Cuts `p` at its certified degree; `None` if an uncertain coefficient sits above it.
fn certified_trim(p: Vec<BallReal>) -> Option<RealPoly<BallReal>> {
    let p = RealPoly::new(p);
    match p.certified_degree() {
        (Some(d), false) => Some(RealPoly::new(p.coeffs()[..=d].to_vec())),
        _ => None,
    }
}

fn remainder(a: &RealPoly<BallReal>, b: &RealPoly<BallReal>) -> Option<Vec<BallReal>> {
    let n = b.len_degree()?;
    let mut r: Vec<BallReal> = a.coeffs().to_vec();
    let lb = b.leading()?;
    for k in (n..r.len()).rev() {
        let c = r[k].div(lb).ok()?;
        for j in 0..n {
            r[k - n + j] = r[k - n + j].sub(&c.mul(&b.coeffs()[j]));
        }
    }
    r.truncate(n);
    Some(r)
}

impl BallSturm {
    /// Builds the chain at working precision `prec`; `None` if some sign is uncertain.
    pub fn new(f: &RealPoly<BallReal>, prec: u32) -> Option<BallSturm> {
        let f = RealPoly::new(f.coeffs().iter().map(|c| c.with_precision(prec)).collect());
        if !leading_sign(&f).is_known() || f.is_zero() {
            return None;
        }
        let mut chain = alloc::vec![f.clone()];
        if f.len_degree() == Some(0) {
            return Some(BallSturm { chain, prec });
        }
        chain.push(f.derivative());
        loop {
            let k = chain.len();
            if chain[k - 1].len_degree() == Some(0) {
                return Some(BallSturm { chain, prec });
            }
            let r = remainder(&chain[k - 2], &chain[k - 1])?;
            let r = certified_trim(r.iter().map(|c| c.neg()).collect())?;
            if r.is_zero() {
                return None;
            }
            // keep magnitudes near one; dividing by |lc| preserves signs
            let lc = r.leading().unwrap().clone();
            let scale = if lc.sign() == Sign::Negative { lc.neg() } else { lc };
            let r = RealPoly::new(r.coeffs().iter().map(|c| c.div(&scale)).collect::<core::result::Result<Vec<_>, _>>().ok()?);
            if !leading_sign(&r).is_known() {
                return None;
            }
            chain.push(r);
        }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    fn variations(signs: &[Sign]) -> Option<usize> {
        let mut last = Sign::Zero;
        let mut v = 0;
        for &s in signs {
            match s {
                Sign::Unknown => return None,
                Sign::Zero => {}
                s => {
                    if last != Sign::Zero && s != last {
                        v += 1;
                    }
                    last = s;
                }
            }
        }
        Some(v)
    }

    fn var_inf(&self, neg: bool) -> usize {
        let s: Vec<Sign> = self
            .chain
            .iter()
            .map(|p| {
                let s = leading_sign(p);
                if neg && p.len_degree().unwrap_or(0) % 2 == 1 {
                    s.negate()
                } else {
                    s
                }
            })
            .collect();
        Self::variations(&s).expect("leading signs are certified")
    }

    /// Number of distinct real roots (all simple).
    pub fn total(&self) -> usize {
        self.var_inf(true) - self.var_inf(false)
    }

    /// Sign variations at a rational point; `None` when a sign is uncertain.
    pub fn var_at(&self, x: &ExactRational) -> Option<usize> {
        let xb = BallReal::from_rational(x, self.prec);
        let s: Vec<Sign> = self.chain.iter().map(|p| p.eval(&xb).sign()).collect();
        Self::variations(&s)
    }

    fn root_bound(&self) -> ExactRational {
        let f = &self.chain[0];
        let d = f.len_degree().unwrap_or(0);
        let lead = f.coeffs()[d].abs_lower();
        let mut m = Mag::ZERO;
        for c in &f.coeffs()[..d] {
            m = m.max(c.abs_upper().div_up(&lead));
        }
        let e = m.add_up(&Mag::pow2(0)).ceil_log2() + 1;
        ExactRational::from_integer(BigInt::from(1) << e.max(1) as usize)
    }

    /// Open intervals each holding exactly one root, sorted; `None` if the
    /// bisection cannot certify signs at enough points.
    pub fn isolate(&self) -> Option<Vec<(ExactRational, ExactRational)>> {
        let total = self.total();
        let mut out = Vec::new();
        if total == 0 {
            return Some(out);
        }
        let b = self.root_bound();
        let mut stack = alloc::vec![(-b.clone(), b, total)];
        let mut steps = 0usize;
        while let Some((a, b, c)) = stack.pop() {
            if c == 0 {
                continue;
            }
            if c == 1 {
                out.push((a, b));
                continue;
            }
            steps += 1;
            if steps > 20_000 {
                return None;
            }
            let va = self.var_at(&a)?;
            let w = &b - &a;
            let mut split = None;
            for k in [2i64, 3, 5, 7, 9, 11, 13, 15] {
                // try the midpoint first, then nearby dyadic points
                let m = if k == 2 {
                    &a + &w / ExactRational::from_integer(BigInt::from(2))
                } else {
                    &a + &w * ExactRational::new(BigInt::from(k), BigInt::from(16))
                };
                if let Some(vm) = self.var_at(&m) {
                    split = Some((m, vm));
                    break;
                }
            }
            let (m, vm) = split?;
            let left = va.checked_sub(vm)?;
            stack.push((a, m.clone(), left));
            stack.push((m, b, c.checked_sub(left)?));
        }
        out.sort();
        Some(out)
    }

    /// Halves an isolating interval, keeping the half with the root.
    pub fn refine(&self, a: &ExactRational, b: &ExactRational) -> Option<(ExactRational, ExactRational)> {
        let w = b - a;
        for k in [8i64, 7, 9, 6, 10] {
            let m = a + &w * ExactRational::new(BigInt::from(k), BigInt::from(16));
            if let (Some(va), Some(vm)) = (self.var_at(a), self.var_at(&m)) {
                return Some(if va > vm { (a.clone(), m) } else { (m, b.clone()) });
            }
        }
        None
    }
}

pub(super) fn split_zero(p: &RealPoly<BallReal>) -> Result<(usize, RealPoly<BallReal>, usize)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let z = p.low_zero_count();
    let (deg, uncertain) = p.certified_degree();
    let deg = match (deg, uncertain) {
        (Some(d), false) => d,
        _ => return Ok((z, RealPoly::zero(), usize::MAX)),
    };
    let f = RealPoly::new(p.coeffs()[z..=deg].to_vec());
    Ok((z, f, deg))
}

/// Ball-path certificate; the working precision doubles from the input's
/// precision (at least 128 bits) up to `cap`.
pub fn count_real_roots_ball(p: &RealPoly<BallReal>, cap: u32) -> Result<RootCertificate> {
    let start = p.coeffs().iter().map(|c| c.precision()).max().unwrap_or(DEFAULT_PRECISION).max(DEFAULT_PRECISION);
    let (z, f, deg) = split_zero(p)?;
    if deg == usize::MAX {
        let d = p.len_degree().unwrap_or(0);
        return Ok(RootCertificate::inconclusive(d, z, start));
    }
    let mut w = start;
    while w <= cap.max(start) {
        if let Some(chain) = BallSturm::new(&f, w) {
            let count = z + chain.total();
            return Ok(RootCertificate {
                status: if count == deg {
                    RootStatus::RealRooted
                } else {
                    RootStatus::NotRealRooted
                },
                real_root_count: count,
                degree_certified: deg,
                zero_multiplicity: z,
                all_simple_away_from_zero: Some(true),
                isolating_intervals: Vec::new(),
                precision_used: Some(w),
            });
        }
        w *= 2;
    }
    Ok(RootCertificate::inconclusive(deg, z, cap))
}

/// Isolating intervals for the nonzero roots of a ball polynomial, plus the
/// multiplicity of the root at zero.
pub fn ball_root_enclosures(p: &RealPoly<BallReal>, cap: u32) -> Result<Option<(usize, Vec<(ExactRational, ExactRational)>)>> {
    let (z, f, deg) = split_zero(p)?;
    if deg == usize::MAX {
        return Ok(None);
    }
    let start = p.coeffs().iter().map(|c| c.precision()).max().unwrap_or(DEFAULT_PRECISION).max(DEFAULT_PRECISION);
    let mut w = start;
    while w <= cap.max(start) {
        if let Some(chain) = BallSturm::new(&f, w) {
            if let Some(iv) = chain.isolate() {
                return Ok(Some((z, iv)));
            }
        }
        w *= 2;
    }
    Ok(None)
}
