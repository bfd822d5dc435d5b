//! Certified `γ_n`, the normalized even derivatives of `ξ` at `1/2`.
//!
//! With `Φ(u) = 2 Σ_{k≥1} (2k⁴π² e^{9u/2} - 3k²π e^{5u/2}) e^{-k²π e^{2u}}` and
//! `M_j = ∫_0^∞ Φ(u) u^j du`, the Taylor coefficients of `ξ(1/2 + √z)/ξ(1/2)` are
//! `M_{2n} / ((2n)! M_0)`, so `γ_n = n! M_{2n} / ((2n)! M_0)`.
//!
//! `[0, U]` is cut into pieces of half-width `h = 2^-6`. On each piece `Φ` is
//! replaced by its Taylor polynomial at the centre, computed with ball jets;
//! the remainder is bounded by a Cauchy estimate on the disc of radius
//! `R = 1/4`, where `Re e^{2z} ≥ (7/8) e^{2 Re z}` because `cos(1/2) ≥ 7/8`.
//! Beyond `U` a closed-form majorant takes over.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::rational::factorial;
use crate::numerics::{exp, pi, rat, BallReal, ExactRational, Mag, Sign};

/// Piece half-width `2^-H_LOG2`.
const H_LOG2: i64 = 6;
/// Largest Φ-series truncation tried on a piece.
const K_CAP: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureParams {
    /// Target precision of the table.
    pub bits: u32,
    /// Cutoff `U`; the integral over `(U, ∞)` is bounded in closed form.
    pub cutoff: u32,
    /// Taylor degree on each piece.
    pub degree: usize,
}

impl QuadratureParams {
    pub fn for_bits(bits: u32) -> QuadratureParams {
        QuadratureParams {
            bits,
            cutoff: 6,
            // h/R = 1/16 gains four bits per degree
            degree: bits as usize / 4 + 16,
        }
    }

    fn work(&self) -> u32 {
        self.bits + 64
    }

    pub fn piece_count(&self) -> usize {
        (self.cutoff as usize) << (H_LOG2 - 1)
    }

    /// Centre `(2i+1) h` of piece `i`.
    fn centre(&self, i: usize) -> ExactRational {
        ExactRational::new(BigInt::from(2 * i + 1), BigInt::one() << H_LOG2)
    }
}

/// Contribution of one piece to `∫ Φ(u) u^{2n} du`, `n = 0..=n_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct PieceMoments {
    pub moments: Vec<BallReal>,
    /// Φ terms summed explicitly (0 when the piece was bounded wholesale).
    pub terms: usize,
}

/// Upper bounds on the disc `|z - c| ≤ 1/4` for term `k` of Φ.
struct DiscBounds {
    e9: BallReal,
    e5: BallReal,
    decay: BallReal,
    pi: BallReal,
}

impl DiscBounds {
    fn new(c: &ExactRational, w: u32) -> DiscBounds {
        let pi = pi(w);
        let q = rat(1, 4);
        let hi = BallReal::from_rational(&(c + &q), w);
        let lo = BallReal::from_rational(&(c - &q), w);
        DiscBounds {
            e9: exp(&hi.mul(&BallReal::from_rational(&rat(9, 2), w))),
            e5: exp(&hi.mul(&BallReal::from_rational(&rat(5, 2), w))),
            decay: exp(&lo.mul_int(2)).mul(&pi).mul(&BallReal::from_rational(&rat(7, 8), w)),
            pi,
        }
    }

    fn term(&self, k: usize) -> Mag {
        let k2 = (k * k) as i64;
        let p2 = self.pi.sqr();
        let growth = p2.mul(&self.e9).mul_int(4 * k2 * k2).add(&self.pi.mul(&self.e5).mul_int(6 * k2));
        growth.mul(&exp(&self.decay.mul_int(-k2))).abs_upper()
    }

    /// `((k+1)/k)^4 e^{-a(2k+1)}` maximized over `k ≥ K+1`.
    fn ratio(&self, big_k: usize) -> Mag {
        let w = self.pi.precision();
        let f = BallReal::from_rational(&rat(big_k as i64 + 2, big_k as i64 + 1), w).pow(4);
        f.mul(&exp(&self.decay.mul_int(-(2 * big_k as i64 + 3)))).abs_upper()
    }
}

/// Geometric majorant for `Σ_{k>K} t_k` given `t_{K+1}` and the ratio bound.
fn geometric_tail(first: Mag, ratio: Mag) -> Option<Mag> {
    let one = Mag::pow2(0);
    if ratio >= one {
        return None;
    }
    let gap = one.sub_down(&ratio);
    (!gap.is_zero()).then(|| first.div_up(&gap))
}

/// `Φ(u)` for `u ≥ 0` summed through `k ≤ K`, with the rest of the series
/// absorbed into the radius.
pub fn phi(u: &BallReal, big_k: usize) -> Result<BallReal> {
    if big_k == 0 {
        return Err(Error::InvalidParameter("K must be at least 1".into()));
    }
    let (lo, hi) = u.endpoints();
    if lo < ExactRational::zero() {
        return Err(Error::InvalidParameter("phi needs u >= 0".into()));
    }
    let w = u.precision();
    let pi = pi(w);
    let e9 = exp(&u.mul(&BallReal::from_rational(&rat(9, 2), w)));
    let e5 = exp(&u.mul(&BallReal::from_rational(&rat(5, 2), w)));
    let a = exp(&u.mul_int(2)).mul(&pi);
    let mut sum = BallReal::zero(w);
    for k in 1..=big_k as i64 {
        let k2 = k * k;
        let g = pi.sqr().mul(&e9).mul_int(4 * k2 * k2).sub(&pi.mul(&e5).mul_int(6 * k2));
        sum = sum.add(&g.mul(&exp(&a.mul_int(-k2))));
    }
    // tail over the real range of u
    let (hb, lb) = (BallReal::from_rational(&hi, w), BallReal::from_rational(&lo, w));
    let bounds = DiscBounds {
        e9: exp(&hb.mul(&BallReal::from_rational(&rat(9, 2), w))),
        e5: exp(&hb.mul(&BallReal::from_rational(&rat(5, 2), w))),
        decay: exp(&lb.mul_int(2)).mul(&pi),
        pi,
    };
    let tail = geometric_tail(bounds.term(big_k + 1), bounds.ratio(big_k)).ok_or(Error::TailBoundFailure)?;
    Ok(sum.add_error(&tail))
}

/// Taylor coefficients of `Σ_{k≤K} term_k(c + t)` through `t^m`.
fn phi_jet(c: &ExactRational, big_k: usize, m: usize, w: u32) -> Vec<BallReal> {
    let pi = pi(w);
    let cb = BallReal::from_rational(c, w);
    let e2c = exp(&cb.mul_int(2));
    let e9c = exp(&cb.mul(&BallReal::from_rational(&rat(9, 2), w)));
    let e5c = exp(&cb.mul(&BallReal::from_rational(&rat(5, 2), w)));
    // α^j / j!
    let powers = |alpha: ExactRational| {
        let mut v = Vec::with_capacity(m + 1);
        let mut q = ExactRational::one();
        for j in 0..=m {
            if j > 0 {
                q = q * &alpha / ExactRational::from_integer(BigInt::from(j));
            }
            v.push(BallReal::from_rational(&q, w));
        }
        v
    };
    let j9 = powers(rat(9, 2));
    let j5 = powers(rat(5, 2));
    // i 2^i / i!  =  2^i / (i-1)!
    let dg: Vec<BallReal> = (0..=m)
        .map(|i| {
            if i == 0 {
                BallReal::zero(w)
            } else {
                BallReal::from_rational(
                    &ExactRational::new(BigInt::one() << i, factorial(i as u32 - 1)),
                    w,
                )
            }
        })
        .collect();
    let mut out = alloc::vec![BallReal::zero(w); m + 1];
    for k in 1..=big_k as i64 {
        let k2 = k * k;
        let g0 = pi.mul(&e2c).mul_int(-k2);
        // h = exp(g): h_j = (1/j) Σ_{i=1}^j i g_i h_{j-i}, with i g_i = g_0 2^i/(i-1)!
        let mut h = Vec::with_capacity(m + 1);
        h.push(exp(&g0));
        for j in 1..=m {
            let mut s = BallReal::zero(w);
            for i in 1..=j {
                s = s.add(&dg[i].mul(&h[j - i]));
            }
            h.push(s.mul(&g0).div_int(j as i64));
        }
        let a9 = pi.sqr().mul(&e9c).mul_int(4 * k2 * k2);
        let a5 = pi.mul(&e5c).mul_int(6 * k2);
        let pre: Vec<BallReal> = (0..=m).map(|j| a9.mul(&j9[j]).sub(&a5.mul(&j5[j]))).collect();
        for j in 0..=m {
            let mut s = BallReal::zero(w);
            for i in 0..=j {
                s = s.add(&pre[i].mul(&h[j - i]));
            }
            out[j] = out[j].add(&s);
        }
    }
    out
}

/// Moments of piece `i` for `u^{2n}`, `n ≤ n_max`.
pub fn piece_moments(params: &QuadratureParams, i: usize, n_max: usize) -> Result<PieceMoments> {
    let w = params.work();
    let m = params.degree;
    let c = params.centre(i);
    let h = ExactRational::new(BigInt::one(), BigInt::one() << H_LOG2);
    let kmax = 2 * n_max;
    // (c+h)^k 2h, the weight of a pointwise error bound
    let weight = |k: usize| {
        BallReal::from_rational(&(num_traits::pow(&c + &h, k) * &h * ExactRational::from_integer(2.into())), 64).abs_upper()
    };
    let disc = DiscBounds::new(&c, w);
    let mut taylor_bound = Mag::ZERO;
    let mut big_k = 0;
    let mut tail = None;
    let negligible = Mag::pow2(-(params.bits as i64 + 40));
    for k in 1..=K_CAP {
        let t = disc.term(k + 1);
        taylor_bound = taylor_bound.add_up(&disc.term(k));
        if t <= negligible {
            if let Some(tb) = geometric_tail(t, disc.ratio(k)) {
                big_k = k;
                tail = Some(tb);
                break;
            }
        }
    }
    let tail = tail.ok_or(Error::TailBoundFailure)?;
    let whole = taylor_bound.add_up(&tail);
    // far out Φ is below any precision of interest; bound the piece wholesale
    if whole <= Mag::pow2(-(params.bits as i64 + 1200)) {
        let moments = (0..=n_max).map(|n| BallReal::zero(w).add_error(&whole.mul_up(&weight(2 * n)))).collect();
        return Ok(PieceMoments { moments, terms: 0 });
    }
    let jet = phi_jet(&c, big_k, m, w);
    // remainder of the Taylor polynomial on |t| ≤ h: M (h/R)^{m+1} / (1 - h/R)
    let rem = taylor_bound
        .mul_2exp(-4 * (m as i64 + 1))
        .mul_up(&Mag::from_u64_up(16))
        .div_up(&Mag::from_u64_up(15))
        .add_up(&tail);
    // w_l = ∫_{-h}^{h} t^l dt
    let wl: Vec<BallReal> = (0..=m + kmax)
        .map(|l| {
            if l % 2 == 1 {
                BallReal::zero(w)
            } else {
                BallReal::from_rational(&(num_traits::pow(h.clone(), l + 1) * rat(2, l as i64 + 1)), w)
            }
        })
        .collect();
    // V_i = ∫ t^i jet(t) dt
    let v: Vec<BallReal> = (0..=kmax)
        .map(|i| {
            let mut s = BallReal::zero(w);
            for (j, p) in jet.iter().enumerate() {
                if (i + j) % 2 == 0 {
                    s = s.add(&p.mul(&wl[i + j]));
                }
            }
            s
        })
        .collect();
    let moments = (0..=n_max)
        .map(|n| {
            let k = 2 * n;
            // ∫ (c+t)^k jet(t) dt = Σ_i binom(k,i) c^{k-i} V_i
            let mut s = BallReal::zero(w);
            let mut binom = BigInt::one();
            for idx in 0..=k {
                if idx > 0 {
                    binom = binom * BigInt::from(k - idx + 1) / BigInt::from(idx);
                }
                let coef = ExactRational::from_integer(binom.clone()) * num_traits::pow(c.clone(), k - idx);
                s = s.add(&BallReal::from_rational(&coef, w).mul(&v[idx]));
            }
            s.add_error(&rem.mul_up(&weight(k)))
        })
        .collect();
    Ok(PieceMoments { moments, terms: big_k })
}

/// Bounds `∫_U^∞ Φ(u) u^{2n} du` for `n ≤ n_max`, as balls centred at zero.
///
/// For `u ≥ 0`, `Φ(u) ≤ 8π² e^{9u/2 - π e^{2u}}`. With `ln u ≤ ln U + (u-U)/U` and
/// `e^{2u} ≥ e^{2U}(1 + 2(u-U))`, the integrand is at most
/// `8π² U^k e^{9U/2 - π e^{2U}} e^{-λ(u-U)}` with `λ = 2π e^{2U} - k/U - 9/2`.
pub fn tail_moments(params: &QuadratureParams, n_max: usize) -> Result<Vec<BallReal>> {
    let w = params.work();
    let p = pi(w);
    let u = BallReal::from_int(params.cutoff as i64, w);
    let e2u = exp(&u.mul_int(2));
    let base = p
        .sqr()
        .mul_int(8)
        .mul(&exp(&u.mul(&BallReal::from_rational(&rat(9, 2), w)).sub(&p.mul(&e2u))));
    (0..=n_max)
        .map(|n| {
            let k = 2 * n as i64;
            let lambda = p
                .mul(&e2u)
                .mul_int(2)
                .sub(&BallReal::from_rational(&rat(k, params.cutoff as i64), w))
                .sub(&BallReal::from_rational(&rat(9, 2), w));
            if lambda.sign() != Sign::Positive {
                return Err(Error::TailBoundFailure);
            }
            let b = base.mul(&u.pow(k as u32)).div(&lambda)?;
            Ok(BallReal::zero(w).add_error(&b.abs_upper()))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZetaCoefficientTable {
    /// `γ_0 … γ_N`.
    pub gammas: Vec<BallReal>,
    pub params: QuadratureParams,
    /// Largest Φ-series truncation used on any piece.
    pub terms: usize,
    /// `ξ(1/2) = 2 M_0`.
    pub xi_half: BallReal,
}

impl ZetaCoefficientTable {
    pub fn max_n(&self) -> usize {
        self.gammas.len() - 1
    }
}

/// `2 ∫_0^∞ Φ(u) u^{2n} du`, `n ≤ n_max`, from per-piece results (in piece order).
pub fn assemble_moments(params: &QuadratureParams, pieces: &[PieceMoments], n_max: usize) -> Result<Vec<BallReal>> {
    let mut acc = tail_moments(params, n_max)?;
    for p in pieces {
        for (a, m) in acc.iter_mut().zip(&p.moments) {
            *a = a.add(m);
        }
    }
    Ok(acc.into_iter().map(|m| m.mul_int(2)).collect())
}

/// `Ξ^{(2n)}(0) = 2 (-1)^n M_{2n}`, computed sequentially.
pub fn xi_even_derivative_moment(n: usize, params: &QuadratureParams) -> Result<BallReal> {
    let pieces = (0..params.piece_count())
        .map(|i| piece_moments(params, i, n))
        .collect::<Result<Vec<_>>>()?;
    let m = assemble_moments(params, &pieces, n)?.swap_remove(n);
    Ok(if n % 2 == 1 { m.neg() } else { m })
}

/// Builds the table from moments `2 M_{2n}`; every `γ_n` must come out certified positive.
pub fn table_from_moments(params: &QuadratureParams, pieces: &[PieceMoments], n_max: usize) -> Result<ZetaCoefficientTable> {
    let moments = assemble_moments(params, pieces, n_max)?;
    let m0 = moments[0].clone();
    if m0.sign() != Sign::Positive {
        return Err(Error::PrecisionExhausted);
    }
    let mut gammas = Vec::with_capacity(n_max + 1);
    for (n, m) in moments.iter().enumerate() {
        let f = ExactRational::new(factorial(n as u32), factorial(2 * n as u32));
        let g = m.div(&m0)?.mul(&BallReal::from_rational(&f, params.work()));
        if g.sign() != Sign::Positive {
            return Err(Error::PrecisionExhausted);
        }
        gammas.push(g.with_precision(params.bits));
    }
    Ok(ZetaCoefficientTable {
        gammas,
        params: *params,
        terms: pieces.iter().map(|p| p.terms).max().unwrap_or(0),
        xi_half: m0.with_precision(params.bits),
    })
}

/// `γ_0 … γ_N` at `bits` bits, computed sequentially.
pub fn gamma_table(n_max: usize, bits: u32) -> Result<ZetaCoefficientTable> {
    if bits < 64 {
        return Err(Error::InvalidParameter("at least 64 bits are required".into()));
    }
    let params = QuadratureParams::for_bits(bits);
    let pieces = (0..params.piece_count())
        .map(|i| piece_moments(&params, i, n_max))
        .collect::<Result<Vec<_>>>()?;
    table_from_moments(&params, &pieces, n_max)
}
