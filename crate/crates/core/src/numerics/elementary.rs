//! Exponential and π as certified balls.

use num_bigint::BigInt;
use num_traits::Zero;

use super::ball::BallReal;
use super::mag::Mag;

/// `exp(x)`, enclosing `exp(t)` for every `t` in `x`.
pub fn exp(x: &BallReal) -> BallReal {
    let prec = x.precision();
    let (man, e) = x.midpoint_parts();
    let em = exp_dyadic(man, e, prec);
    let r = x.radius();
    if r.is_zero() {
        return em;
    }
    // |exp(m+d) - exp(m)| <= exp(m) (e^r - 1), and e^r - 1 <= r e^r
    let er = if r.ceil_log2() < 0 {
        Mag::from_u64_up(3)
    } else {
        let (rm, re) = r.to_bigint_exact();
        exp_dyadic(&rm, re, 64).abs_upper()
    };
    em.add_error(&em.abs_upper().mul_up(&r).mul_up(&er))
}

fn exp_dyadic(man: &BigInt, e: i64, prec: u32) -> BallReal {
    if man.is_zero() {
        return BallReal::one(prec);
    }
    // halve until |t| <= 2^-8
    let top = e + man.bits() as i64 - 1;
    let k = (top + 9).max(0) as u32;
    let w = prec + 2 * k + 24;
    let t = BallReal::from_mid_rad(man.clone(), e - k as i64, Mag::ZERO, w);
    let mut sum = BallReal::one(w);
    let mut term = BallReal::one(w);
    let mut j = 1i64;
    loop {
        term = term.mul(&t).div_int(j);
        sum = sum.add(&term);
        if term.is_exact_zero() || term.abs_upper().ceil_log2() < -(w as i64) - 4 {
            break;
        }
        j += 1;
    }
    // geometric tail: each later term shrinks by at least 2^-8
    let tail = term.abs_upper().mul_2exp(1);
    let mut y = sum.add_error(&tail);
    for _ in 0..k {
        y = y.sqr();
    }
    y.with_precision(prec)
}

/// π via Machin's formula `π = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(prec: u32) -> BallReal {
    let w = prec + 32;
    let a = atan_inv(5, w);
    let b = atan_inv(239, w);
    a.mul_int(16).sub(&b.mul_int(4)).with_precision(prec)
}

fn atan_inv(n: i64, w: u32) -> BallReal {
    let x = BallReal::one(w).div_int(n);
    let x2 = x.sqr();
    let mut pow = x.clone();
    let mut sum = BallReal::zero(w);
    let mut k = 0i64;
    loop {
        let term = pow.div_int(2 * k + 1);
        sum = if k % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
        if term.abs_upper().ceil_log2() < -(w as i64) - 4 {
            // alternating with decreasing terms: the tail is below the next term
            let next = pow.mul(&x2).div_int(2 * k + 3);
            return sum.add_error(&next.abs_upper());
        }
        pow = pow.mul(&x2);
        k += 1;
    }
}
