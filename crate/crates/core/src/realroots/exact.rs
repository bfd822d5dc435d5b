//! Exact real-root machinery over ℚ: primitive integer remainder sequences,
//! square-free decomposition, Sturm counting and isolation.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::numerics::ExactRational;
use crate::poly::ExactPoly;

/// Integer polynomial, ascending coefficients, no trailing zeros.
pub(crate) type IntPoly = Vec<BigInt>;

fn trim(mut p: IntPoly) -> IntPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides out the (positive) content.
fn primitive(p: IntPoly) -> IntPoly {
    let g = content(&p);
    if g.is_zero() || g.is_one() {
        return p;
    }
    p.into_iter().map(|c| c / &g).collect()
}

/// Positive multiple of `p` with integer coprime coefficients.
pub(crate) fn to_int(p: &ExactPoly) -> IntPoly {
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    primitive(trim(
        p.coeffs().iter().map(|c| c.numer() * (&l / c.denom())).collect(),
    ))
}

pub(crate) fn to_exact(p: &IntPoly) -> ExactPoly {
    ExactPoly::new(p.iter().map(|c| ExactRational::from_integer(c.clone())).collect())
}

fn deriv(p: &[BigInt]) -> IntPoly {
    trim(p.iter().enumerate().skip(1).map(|(j, c)| c * j).collect())
}

fn deg(p: &[BigInt]) -> usize {
    p.len() - 1
}

/// Remainder of `a` by `b` up to a positive constant factor.
fn prem_positive(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let db = deg(b);
    let mut r: IntPoly = a.to_vec();
    if r.len() <= db {
        return r;
    }
    let lb = b[db].clone();
    let lb_abs = lb.abs();
    let neg_lead = lb.is_negative();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        // r <- |lb| r - sgn(lb) lr x^{dr-db} b
        for c in r.iter_mut() {
            *c *= &lb_abs;
        }
        let f = if neg_lead { -lr } else { lr };
        for j in 0..=db {
            r[dr - db + j] -= &f * &b[j];
        }
        r = trim(r);
        r = primitive(r);
    }
    r
}

/// Greatest common divisor, primitive with positive leading coefficient.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = prem_positive(&a, &b);
        a = b;
        b = primitive(r);
    }
    let mut g = primitive(a);
    if g.last().is_some_and(|c| c.is_negative()) {
        g = g.into_iter().map(|c| -c).collect();
    }
    g
}

/// Yun decomposition: `(factor, multiplicity)` with square-free, pairwise coprime factors.
pub(crate) fn squarefree_decomposition(f: &IntPoly) -> Vec<(IntPoly, usize)> {
    let mut out = Vec::new();
    if f.len() <= 1 {
        return out;
    }
    let q_gcd = |a: &ExactPoly, b: &ExactPoly| to_exact(&gcd(&to_int(a), &to_int(b)));
    let q_div = |a: &ExactPoly, b: &ExactPoly| {
        let (q, r) = a.div_rem(b);
        debug_assert!(r.is_zero());
        q
    };
    let f = to_exact(f);
    let fp = f.derivative();
    let a0 = q_gcd(&f, &fp);
    let mut b = q_div(&f, &a0);
    let mut d = q_div(&fp, &a0).sub(&b.derivative());
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = if d.is_zero() { b.clone() } else { q_gcd(&b, &d) };
        if a.degree().unwrap_or(0) > 0 {
            out.push((to_int(&a), i));
        }
        let nb = q_div(&b, &a);
        let nc = if d.is_zero() { ExactPoly::zero() } else { q_div(&d, &a) };
        d = nc.sub(&nb.derivative());
        b = nb;
        i += 1;
    }
    out
}

/// Sign of `p(x)` for rational `x`.
pub(crate) fn sign_at(p: &[BigInt], x: &ExactRational) -> i32 {
    if p.is_empty() {
        return 0;
    }
    // Σ c_j num^j den^{d-j} has the sign of p(x) since den > 0
    let (n, d) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut dp = BigInt::one();
    let mut np = Vec::with_capacity(p.len());
    let mut t = BigInt::one();
    for _ in 0..p.len() {
        np.push(t.clone());
        t *= n;
    }
    for j in (0..p.len()).rev() {
        acc += &p[j] * &np[j] * &dp;
        dp *= d;
    }
    match acc.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}

/// Sturm chain of a square-free polynomial.
#[derive(Clone, Debug)]
pub(crate) struct SturmChain {
    pub(crate) chain: Vec<IntPoly>,
}

impl SturmChain {
    pub(crate) fn new(f: &IntPoly) -> SturmChain {
        let mut chain = alloc::vec![f.clone()];
        let d = deriv(f);
        if !d.is_empty() {
            chain.push(primitive(d));
            loop {
                let n = chain.len();
                let r = prem_positive(&chain[n - 2], &chain[n - 1]);
                if r.is_empty() {
                    break;
                }
                chain.push(primitive(r.into_iter().map(|c| -c).collect()));
            }
        }
        SturmChain { chain }
    }

    pub(crate) fn poly(&self) -> &IntPoly {
        &self.chain[0]
    }

    fn variations<I: Iterator<Item = i32>>(signs: I) -> usize {
        let mut last = 0;
        let mut v = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub(crate) fn var_at(&self, x: &ExactRational) -> usize {
        Self::variations(self.chain.iter().map(|p| sign_at(p, x)))
    }

    fn var_inf(&self, neg: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let s = if p.last().unwrap().is_positive() { 1 } else { -1 };
            if neg && deg(p) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots.
    pub(crate) fn total(&self) -> usize {
        self.var_inf(true) - self.var_inf(false)
    }

    /// Distinct roots in the open interval `(a, b)`.
    pub(crate) fn count_open(&self, a: &ExactRational, b: &ExactRational) -> usize {
        let c = self.var_at(a) - self.var_at(b);
        c - usize::from(sign_at(self.poly(), b) == 0)
    }

    /// Power of two strictly above every root modulus.
    pub(crate) fn root_bound(&self) -> ExactRational {
        cauchy_bound(self.poly())
    }

    /// Disjoint isolating intervals, sorted; `lo == hi` marks an exact rational root,
    /// otherwise the interval is open and holds exactly one root.
    pub(crate) fn isolate(&self) -> Vec<(ExactRational, ExactRational)> {
        let mut out = Vec::new();
        let total = self.total();
        if total == 0 {
            return out;
        }
        let b = self.root_bound();
        let mut stack = alloc::vec![(-b.clone(), b, total)];
        let two = ExactRational::from_integer(BigInt::from(2));
        while let Some((a, b, c)) = stack.pop() {
            if c == 0 {
                continue;
            }
            if c == 1 {
                out.push((a, b));
                continue;
            }
            let m = (&a + &b) / &two;
            let left = self.var_at(&a) - self.var_at(&m);
            if sign_at(self.poly(), &m) == 0 {
                let l = left - 1;
                out.push((m.clone(), m.clone()));
                stack.push((a, m.clone(), l));
                stack.push((m, b, c - l - 1));
            } else {
                stack.push((a, m.clone(), left));
                stack.push((m, b, c - left));
            }
        }
        out.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
        out
    }
}

/// `2^k > 1 + max |c_j / c_d|`.
pub(crate) fn cauchy_bound(p: &[BigInt]) -> ExactRational {
    let d = deg(p);
    let lead = p[d].abs();
    let mut m = ExactRational::zero();
    for c in &p[..d] {
        let r = ExactRational::new(c.abs(), lead.clone());
        if r > m {
            m = r;
        }
    }
    let bound = m + ExactRational::one();
    let mut b = ExactRational::one();
    while b <= bound {
        b *= ExactRational::from_integer(BigInt::from(2));
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gcd_and_decomposition() {
        // (x-1)^2 (x+2)^3 x
        let a = to_exact(&ip(&[-1, 1]));
        let b = to_exact(&ip(&[2, 1]));
        let x = to_exact(&ip(&[0, 1]));
        let f = a.mul(&a).mul(&b).mul(&b).mul(&b).mul(&x);
        let dec = squarefree_decomposition(&to_int(&f));
        let mults: Vec<usize> = dec.iter().map(|d| d.1).collect();
        assert_eq!(mults, alloc::vec![1, 2, 3]);
        assert_eq!(dec[0].0, ip(&[0, 1]));
        assert_eq!(dec[1].0, ip(&[-1, 1]));
        assert_eq!(dec[2].0, ip(&[2, 1]));
    }

    #[test]
    fn sturm_counts() {
        let c = SturmChain::new(&ip(&[-1, 0, 1]));
        assert_eq!(c.total(), 2);
        let iso = c.isolate();
        assert_eq!(iso.len(), 2);
        let c = SturmChain::new(&ip(&[1, 0, 1]));
        assert_eq!(c.total(), 0);
        let c = SturmChain::new(&ip(&[0, -1, 0, 1]));
        let iso = c.isolate();
        assert_eq!(iso.len(), 3);
        assert!(iso.iter().any(|(l, h)| l == h && l.is_zero()));
    }
}
