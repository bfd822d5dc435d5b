//! Certified real-root counting, simplicity and interlacing.
//!
//! Exact polynomials go through a square-free decomposition and integer Sturm
//! chains, so every verdict is a proof. Ball polynomials use a Sturm chain in
//! ball arithmetic; any uncertain leading coefficient makes the verdict
//! inconclusive, and callers may retry at a higher precision.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::{BallReal, ExactRational, Scalar, Sign, DEFAULT_PRECISION, DEFAULT_PRECISION_CAP};
use crate::poly::{ExactPoly, RealPoly};

mod ball;
pub(crate) mod exact;

pub use ball::{ball_root_enclosures, count_real_roots_ball, BallSturm};

use exact::{sign_at, squarefree_decomposition, to_int, SturmChain};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootStatus {
    RealRooted,
    NotRealRooted,
    Inconclusive,
}

/// Interval holding one root: the point `lo` when `lo == hi`, the open
/// interval `(lo, hi)` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: ExactRational,
    pub hi: ExactRational,
    pub multiplicity: usize,
}

impl RootInterval {
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Whether every point of `self` lies strictly left of every point of `other`.
    pub fn strictly_left_of(&self, other: &RootInterval) -> bool {
        if self.is_point() && other.is_point() {
            self.lo < other.lo
        } else {
            self.hi <= other.lo
        }
    }

    pub fn midpoint(&self) -> ExactRational {
        (&self.lo + &self.hi) / ExactRational::from_integer(BigInt::from(2))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCertificate {
    pub status: RootStatus,
    /// Real roots counted with multiplicity.
    pub real_root_count: usize,
    pub degree_certified: usize,
    /// Multiplicity of the root `x = 0`.
    pub zero_multiplicity: usize,
    /// Every nonzero real root is simple; `None` when not certifiable.
    pub all_simple_away_from_zero: Option<bool>,
    /// Sorted isolating intervals of the distinct real roots (exact path only).
    pub isolating_intervals: Vec<RootInterval>,
    /// Working precision of the deciding computation; `None` on the exact path.
    pub precision_used: Option<u32>,
}

impl RootCertificate {
    pub fn inconclusive(degree: usize, zero_multiplicity: usize, prec: u32) -> Self {
        RootCertificate {
            status: RootStatus::Inconclusive,
            real_root_count: 0,
            degree_certified: degree,
            zero_multiplicity,
            all_simple_away_from_zero: None,
            isolating_intervals: Vec::new(),
            precision_used: Some(prec),
        }
    }

    pub fn is_real_rooted(&self) -> bool {
        self.status == RootStatus::RealRooted
    }

    /// Number of non-real roots, when decided.
    pub fn nonreal_count(&self) -> Option<usize> {
        (self.status != RootStatus::Inconclusive).then(|| self.degree_certified - self.real_root_count)
    }
}

/// Largest `m` with `x^m | p`.
pub fn zero_multiplicity<T: Scalar>(p: &RealPoly<T>) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(p.low_zero_count())
}

/// Exact certificate for a rational polynomial.
pub fn count_real_roots(p: &ExactPoly) -> Result<RootCertificate> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    let z = p.low_zero_count();
    let dec = squarefree_decomposition(&to_int(p));
    let mut count = 0;
    let mut simple_away = true;
    let mut intervals = Vec::new();
    for (f, m) in &dec {
        let chain = SturmChain::new(f);
        let nz = chain.total();
        count += m * nz;
        let zero_root = sign_at(f, &ExactRational::zero()) == 0;
        if *m > 1 && nz > usize::from(zero_root) {
            simple_away = false;
        }
        intervals.extend(chain.isolate().into_iter().map(|(lo, hi)| RootInterval {
            lo,
            hi,
            multiplicity: *m,
        }));
    }
    intervals.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
    let intervals = separate(intervals, &dec);
    Ok(RootCertificate {
        status: if count == d {
            RootStatus::RealRooted
        } else {
            RootStatus::NotRealRooted
        },
        real_root_count: count,
        degree_certified: d,
        zero_multiplicity: z,
        all_simple_away_from_zero: Some(simple_away),
        isolating_intervals: intervals,
        precision_used: None,
    })
}

/// Refines intervals from different square-free factors until they are disjoint.
fn separate(mut iv: Vec<RootInterval>, dec: &[(exact::IntPoly, usize)]) -> Vec<RootInterval> {
    if dec.len() <= 1 {
        return iv;
    }
    let chains: Vec<(SturmChain, usize)> = dec.iter().map(|(f, m)| (SturmChain::new(f), *m)).collect();
    for _ in 0..10_000 {
        iv.sort_by_key(|a| a.midpoint());
        let clash = (1..iv.len()).find(|&i| !iv[i - 1].strictly_left_of(&iv[i]));
        let Some(i) = clash else { return iv };
        for k in [i - 1, i] {
            if !iv[k].is_point() {
                let chain = &chains.iter().find(|c| c.1 == iv[k].multiplicity).unwrap().0;
                iv[k] = bisect_once(chain, &iv[k]);
            }
        }
    }
    iv
}

fn bisect_once(chain: &SturmChain, r: &RootInterval) -> RootInterval {
    let m = r.midpoint();
    if sign_at(chain.poly(), &m) == 0 {
        return RootInterval {
            lo: m.clone(),
            hi: m,
            multiplicity: r.multiplicity,
        };
    }
    if chain.count_open(&r.lo, &m) == 1 {
        RootInterval {
            lo: r.lo.clone(),
            hi: m,
            multiplicity: r.multiplicity,
        }
    } else {
        RootInterval {
            lo: m,
            hi: r.hi.clone(),
            multiplicity: r.multiplicity,
        }
    }
}

/// Certificate on either path: exact coefficients use the exact algorithm,
/// ball coefficients the escalating ball Sturm chain.
pub fn certify<T: Scalar>(p: &RealPoly<T>) -> Result<RootCertificate> {
    if let Some(q) = exact_view(p) {
        return count_real_roots(&q);
    }
    let balls: Vec<BallReal> = p.coeffs().iter().map(|c| c.to_ball()).collect();
    count_real_roots_ball(&RealPoly::new(balls), DEFAULT_PRECISION_CAP)
}

fn exact_view<T: Scalar>(p: &RealPoly<T>) -> Option<ExactPoly> {
    let c: Option<Vec<ExactRational>> = p.coeffs().iter().map(|c| c.as_rational()).collect();
    c.map(ExactPoly::new)
}

/// Cubic discriminant `18abcd - 4b³d + b²c² - 4ac³ - 27a²d²` of `ax³ + bx² + cx + d`.
pub fn cubic_discriminant<T: Scalar>(p: &RealPoly<T>) -> Result<T> {
    let deg = p.len_degree().ok_or(Error::ZeroPolynomial)?;
    if deg != 3 {
        return Err(Error::WrongDegree { expected: 3, found: deg });
    }
    let c = p.coeffs();
    let (d, cc, b, a) = (&c[0], &c[1], &c[2], &c[3]);
    let k = |n: i64| T::from_i64_in(n, a.ctx());
    let t1 = k(18).mul(a).mul(b).mul(cc).mul(d);
    let t2 = k(4).mul(&b.pow(3)).mul(d);
    let t3 = b.mul(b).mul(&cc.mul(cc));
    let t4 = k(4).mul(a).mul(&cc.pow(3));
    let t5 = k(27).mul(&a.mul(a)).mul(&d.mul(d));
    Ok(t1.sub(&t2).add(&t3).sub(&t4).sub(&t5))
}

/// Discriminant `(-1)^{n(n-1)/2} Res(p, p') / a_n` via the Sylvester determinant.
pub fn discriminant(p: &ExactPoly) -> Result<ExactRational> {
    let n = p.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::WrongDegree { expected: 1, found: 0 });
    }
    let res = resultant(p, &p.derivative());
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    Ok(res * ExactRational::from_integer(BigInt::from(sign)) / &p.coeffs()[n])
}

/// Resultant of two nonzero polynomials.
pub fn resultant(p: &ExactPoly, q: &ExactPoly) -> ExactRational {
    let m = p.degree().unwrap_or(0);
    let n = q.degree().unwrap_or(0);
    let size = m + n;
    if size == 0 {
        return ExactRational::one();
    }
    let mut mat = alloc::vec![alloc::vec![ExactRational::zero(); size]; size];
    for i in 0..n {
        for (j, c) in p.coeffs().iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in q.coeffs().iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    determinant(mat)
}

fn determinant(mut a: Vec<Vec<ExactRational>>) -> ExactRational {
    let n = a.len();
    let mut det = ExactRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return ExactRational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pv;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det
}

/// Relation between the zeros of `q` (degree `k`) and `p` (degree `k+1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Interlacing {
    Strict,
    Weak,
    /// Strict except for one shared zero, of multiplicity `l+1` in `p` and `l` in `q`.
    StrictExceptCommonZeroAt(RootInterval),
    Fails,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterlacingWitness {
    /// Index `i` (0-based) of the first broken inequality `η_i ≤ ζ_i ≤ η_{i+1}`.
    pub index: usize,
    pub eta: RootInterval,
    pub zeta: RootInterval,
    /// `(α, β)` with `αp + βq` not real-rooted, if one was found.
    pub obreshkov: Option<(ExactRational, ExactRational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterlacingReport {
    pub relation: Interlacing,
    pub witness: Option<InterlacingWitness>,
}

/// Classifies how the zeros of `q` interlace those of `p` (exact path).
pub fn check_interlacing(q: &ExactPoly, p: &ExactPoly) -> Result<InterlacingReport> {
    let dq = q.degree().ok_or(Error::ZeroPolynomial)?;
    let dp = p.degree().ok_or(Error::ZeroPolynomial)?;
    if dp != dq + 1 {
        return Err(Error::DegreeMismatch);
    }
    if !count_real_roots(p)?.is_real_rooted() || !count_real_roots(q)?.is_real_rooted() {
        return Err(Error::NotRealRooted);
    }
    // distinct roots of p·q, then multiplicities in each
    let pi = to_int(p);
    let qi = to_int(q);
    let g = to_int(&p.mul(q));
    let sqf_all: exact::IntPoly = {
        let dec = squarefree_decomposition(&g);
        let mut acc = ExactPoly::from_ints(&[1]);
        for (f, _) in &dec {
            acc = acc.mul(&exact::to_exact(f));
        }
        to_int(&acc)
    };
    let iso = SturmChain::new(&sqf_all).isolate();
    let pdec: Vec<(SturmChain, usize)> = squarefree_decomposition(&pi)
        .into_iter()
        .map(|(f, m)| (SturmChain::new(&f), m))
        .collect();
    let qdec: Vec<(SturmChain, usize)> = squarefree_decomposition(&qi)
        .into_iter()
        .map(|(f, m)| (SturmChain::new(&f), m))
        .collect();
    let mult = |dec: &[(SturmChain, usize)], lo: &ExactRational, hi: &ExactRational| -> usize {
        dec.iter()
            .map(|(c, m)| {
                let k = if lo == hi {
                    usize::from(sign_at(c.poly(), lo) == 0)
                } else {
                    c.count_open(lo, hi)
                };
                k * m
            })
            .sum()
    };
    // (interval, mult in p, mult in q), sorted
    let pts: Vec<(RootInterval, usize, usize)> = iso
        .into_iter()
        .map(|(lo, hi)| {
            let mp = mult(&pdec, &lo, &hi);
            let mq = mult(&qdec, &lo, &hi);
            (RootInterval { lo, hi, multiplicity: 1 }, mp, mq)
        })
        .collect();
    let expand = |sel: fn(&(RootInterval, usize, usize)) -> usize| -> Vec<usize> {
        let mut v = Vec::new();
        for (k, t) in pts.iter().enumerate() {
            for _ in 0..sel(t) {
                v.push(k);
            }
        }
        v
    };
    let eta = expand(|t| t.1);
    let zeta = expand(|t| t.2);
    debug_assert_eq!(eta.len(), dp);
    debug_assert_eq!(zeta.len(), dq);
    let with_mult = |k: usize, m: usize| RootInterval {
        multiplicity: m,
        ..pts[k].0.clone()
    };
    for i in 0..dq {
        if !(eta[i] <= zeta[i] && zeta[i] <= eta[i + 1]) {
            let bad = if eta[i] > zeta[i] { eta[i] } else { eta[i + 1] };
            let roots: Vec<RootInterval> = pts.iter().map(|t| t.0.clone()).collect();
            let w = InterlacingWitness {
                index: i,
                eta: with_mult(bad, pts[bad].1),
                zeta: with_mult(zeta[i], pts[zeta[i]].2),
                obreshkov: find_obreshkov_witness(p, q, &roots),
            };
            return Ok(InterlacingReport {
                relation: Interlacing::Fails,
                witness: Some(w),
            });
        }
    }
    let common: Vec<&(RootInterval, usize, usize)> = pts.iter().filter(|t| t.1 > 0 && t.2 > 0).collect();
    let all_simple = pts.iter().all(|t| t.1 <= 1 && t.2 <= 1);
    let relation = if common.is_empty() && all_simple {
        Interlacing::Strict
    } else if common.len() == 1
        && common[0].1 == common[0].2 + 1
        && pts.iter().filter(|t| !(t.1 > 0 && t.2 > 0)).all(|t| t.1 <= 1 && t.2 <= 1)
    {
        // a single shared root makes the square-free gcd linear, so λ is rational
        let g = exact::gcd(&pi, &qi);
        let lambda = if g.len() == 2 {
            ExactRational::new(-g[0].clone(), g[1].clone())
        } else {
            let dec = squarefree_decomposition(&g);
            let lin = dec.iter().find(|(f, _)| f.len() == 2).expect("one distinct common root");
            ExactRational::new(-lin.0[0].clone(), lin.0[1].clone())
        };
        Interlacing::StrictExceptCommonZeroAt(RootInterval {
            lo: lambda.clone(),
            hi: lambda,
            multiplicity: common[0].1,
        })
    } else {
        Interlacing::Weak
    };
    Ok(InterlacingReport { relation, witness: None })
}

/// `αp + βq`.
pub fn obreshkov_combination(p: &ExactPoly, q: &ExactPoly, alpha: &ExactRational, beta: &ExactRational) -> ExactPoly {
    p.scale(alpha).add(&q.scale(beta))
}

/// Searches for `(α, β)` making `αp + βq` not real-rooted. Candidates take `β/α`
/// so that the combination vanishes at points between or near the roots.
pub fn find_obreshkov_witness(p: &ExactPoly, q: &ExactPoly, roots: &[RootInterval]) -> Option<(ExactRational, ExactRational)> {
    let mut xs: Vec<ExactRational> = Vec::new();
    for r in roots {
        xs.push(r.lo.clone());
        xs.push(r.hi.clone());
        xs.push(r.midpoint());
    }
    for w in roots.windows(2) {
        let a = &w[0].hi;
        let b = &w[1].lo;
        for k in 1..8 {
            xs.push(a + (b - a) * ExactRational::new(BigInt::from(k), BigInt::from(8)));
        }
    }
    let one = ExactRational::one();
    let factors = [
        one.clone(),
        ExactRational::new(BigInt::from(101), BigInt::from(100)),
        ExactRational::new(BigInt::from(99), BigInt::from(100)),
        ExactRational::new(BigInt::from(11), BigInt::from(10)),
        ExactRational::new(BigInt::from(9), BigInt::from(10)),
        ExactRational::new(BigInt::from(2), BigInt::from(1)),
        ExactRational::new(BigInt::from(1), BigInt::from(2)),
    ];
    for x in &xs {
        let qx = q.eval(x);
        if qx.is_zero() {
            continue;
        }
        let t = -p.eval(x) / qx;
        for f in &factors {
            let beta = &t * f;
            let c = obreshkov_combination(p, q, &one, &beta);
            if c.degree().is_some() && !count_real_roots(&c).map(|c| c.is_real_rooted()).unwrap_or(true) {
                return Some((one.clone(), beta));
            }
        }
    }
    // large |β| pushes the combination towards q
    for k in 1..=20i64 {
        for s in [1i64, -1] {
            let beta = ExactRational::from_integer(BigInt::from(s) << (k as usize));
            let c = obreshkov_combination(p, q, &one, &beta);
            if !count_real_roots(&c).map(|c| c.is_real_rooted()).unwrap_or(true) {
                return Some((one.clone(), beta));
            }
        }
    }
    None
}

/// Whether `αp + βq` is real-rooted for every given pair.
pub fn obreshkov_check(p: &ExactPoly, q: &ExactPoly, pairs: &[(ExactRational, ExactRational)]) -> Result<bool> {
    for (a, b) in pairs {
        let c = obreshkov_combination(p, q, a, b);
        if c.is_zero() {
            continue;
        }
        if !count_real_roots(&c)?.is_real_rooted() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Interlacing on the ball path. Roots are enclosed by refining isolating
/// intervals until those of `p` and `q` are pairwise disjoint; a shared root is
/// only recognised at `x = 0`, where exact-zero low coefficients make it structural.
pub fn check_interlacing_ball(q: &RealPoly<BallReal>, p: &RealPoly<BallReal>, cap: u32) -> Result<InterlacingReport> {
    let unknown = InterlacingReport {
        relation: Interlacing::Unknown,
        witness: None,
    };
    let cp = count_real_roots_ball(p, cap)?;
    let cq = count_real_roots_ball(q, cap)?;
    if cp.status == RootStatus::Inconclusive || cq.status == RootStatus::Inconclusive {
        return Ok(unknown);
    }
    if cp.degree_certified != cq.degree_certified + 1 {
        return Err(Error::DegreeMismatch);
    }
    if !cp.is_real_rooted() || !cq.is_real_rooted() {
        return Err(Error::NotRealRooted);
    }
    let (zp, fp, _) = ball::split_zero(p)?;
    let (zq, fq, _) = ball::split_zero(q)?;
    let mut w = cp.precision_used.unwrap_or(DEFAULT_PRECISION).max(cq.precision_used.unwrap_or(DEFAULT_PRECISION));
    let (sp, sq) = loop {
        if let (Some(a), Some(b)) = (BallSturm::new(&fp, w), BallSturm::new(&fq, w)) {
            break (a, b);
        }
        w *= 2;
        if w > cap {
            return Ok(unknown);
        }
    };
    let (Some(mut ip), Some(mut iq)) = (sp.isolate(), sq.isolate()) else {
        return Ok(unknown);
    };
    let zero = ExactRational::zero();
    // roots as (interval, from_p); zero roots as point intervals
    for _ in 0..400 {
        let mut all: Vec<(ExactRational, ExactRational, bool)> = Vec::new();
        all.extend(ip.iter().map(|(a, b)| (a.clone(), b.clone(), true)));
        all.extend(iq.iter().map(|(a, b)| (a.clone(), b.clone(), false)));
        all.sort();
        let clash = (1..all.len()).find(|&i| all[i - 1].1 > all[i].0);
        let touches_zero = all.iter().position(|t| t.0 < zero && zero < t.1);
        match (clash, touches_zero) {
            (None, None) => {
                let two = ExactRational::from_integer(BigInt::from(2));
                let mut seq: Vec<(ExactRational, bool, usize)> =
                    all.into_iter().map(|t| ((t.0 + t.1) / &two, t.2, 1)).collect();
                if zp + zq > 0 {
                    seq.push((zero.clone(), true, zp));
                    seq.push((zero.clone(), false, zq));
                }
                seq.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
                return Ok(classify_sequence(&seq, zp, zq));
            }
            _ => {
                let i = clash.unwrap_or_else(|| touches_zero.unwrap() + 1);
                for k in [i - 1, i.min(all.len() - 1)] {
                    let (a, b, from_p) = &all[k];
                    let (chain, list) = if *from_p { (&sp, &mut ip) } else { (&sq, &mut iq) };
                    let Some(r) = chain.refine(a, b) else {
                        return Ok(unknown);
                    };
                    if let Some(slot) = list.iter_mut().find(|t| &t.0 == a && &t.1 == b) {
                        *slot = r;
                    }
                }
            }
        }
    }
    Ok(unknown)
}

/// `seq`: sorted roots `(location, from_p, multiplicity)`, with the zero root
/// of `p` listed before that of `q`.
fn classify_sequence(seq: &[(ExactRational, bool, usize)], zp: usize, zq: usize) -> InterlacingReport {
    let mut eta = Vec::new();
    let mut zeta = Vec::new();
    for (k, (_, from_p, m)) in seq.iter().enumerate() {
        for _ in 0..*m {
            if *from_p {
                eta.push(k);
            } else {
                zeta.push(k);
            }
        }
    }
    // equal locations compare equal
    let loc = |k: usize| &seq[k].0;
    for i in 0..zeta.len() {
        let ok = loc(eta[i]) <= loc(zeta[i]) && loc(zeta[i]) <= loc(eta[i + 1]);
        if !ok {
            return InterlacingReport {
                relation: Interlacing::Fails,
                witness: None,
            };
        }
    }
    let zero_point = RootInterval {
        lo: ExactRational::zero(),
        hi: ExactRational::zero(),
        multiplicity: zp,
    };
    let relation = match (zp, zq) {
        (a, b) if a <= 1 && b <= 1 && a * b == 0 => Interlacing::Strict,
        (a, b) if b > 0 && a == b + 1 => Interlacing::StrictExceptCommonZeroAt(zero_point),
        _ => Interlacing::Weak,
    };
    InterlacingReport { relation, witness: None }
}

/// Sign of a rational, for callers that mix paths.
pub fn rational_sign(q: &ExactRational) -> Sign {
    if q.is_zero() {
        Sign::Zero
    } else if q.is_positive() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

#[cfg(test)]
mod tests;
