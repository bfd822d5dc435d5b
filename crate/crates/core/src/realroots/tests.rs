use super::*;
use crate::numerics::{int, rat, Mag};
use alloc::vec;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn poly(c: &[i64]) -> ExactPoly {
    ExactPoly::from_ints(c)
}

fn cert(p: &ExactPoly) -> RootCertificate {
    count_real_roots(p).unwrap()
}

#[test]
fn count_examples() {
    let c = cert(&poly(&[1, 0, 1]));
    assert_eq!((c.status, c.real_root_count), (RootStatus::NotRealRooted, 0));
    // x^2 - 8/3 x + 2
    let c = cert(&ExactPoly::new(vec![int(2), rat(-8, 3), int(1)]));
    assert_eq!(c.real_root_count, 0);
    // x^3 + 3x^2 + 3x + 1/2
    let c = cert(&ExactPoly::new(vec![rat(1, 2), int(3), int(3), int(1)]));
    assert_eq!(c.real_root_count, 1);
    let c = cert(&poly(&[7]));
    assert_eq!((c.status, c.real_root_count), (RootStatus::RealRooted, 0));
    assert_eq!(count_real_roots(&ExactPoly::zero()), Err(Error::ZeroPolynomial));
}

#[test]
fn multiplicities_and_simplicity() {
    // x^3 (x-1)^2 (x+2)
    let p = poly(&[0, 0, 0, 1]).mul(&poly(&[-1, 1])).mul(&poly(&[-1, 1])).mul(&poly(&[2, 1]));
    let c = cert(&p);
    assert_eq!(c.status, RootStatus::RealRooted);
    assert_eq!(c.real_root_count, 6);
    assert_eq!(c.zero_multiplicity, 3);
    assert_eq!(c.all_simple_away_from_zero, Some(false));
    assert_eq!(c.isolating_intervals.len(), 3);
    for w in c.isolating_intervals.windows(2) {
        assert!(w[0].strictly_left_of(&w[1]));
    }
    let q = poly(&[0, 0, 0, 1]).mul(&poly(&[-1, 1]));
    assert_eq!(cert(&q).all_simple_away_from_zero, Some(true));
    assert_eq!(zero_multiplicity(&poly(&[0, 0, 0, -1, 1])).unwrap(), 3);
    assert_eq!(zero_multiplicity(&poly(&[1, 5])).unwrap(), 0);
}

#[test]
fn cubic_discriminant_examples() {
    assert_eq!(cubic_discriminant(&poly(&[0, -1, 0, 1])).unwrap(), int(4));
    assert_eq!(cubic_discriminant(&poly(&[0, 0, 0, 1])).unwrap(), int(0));
    assert!(cubic_discriminant(&poly(&[1, 1])).is_err());
    for c in [[1i64, 2, -3, 1], [5, 0, 1, 2], [-1, 7, 7, -3]] {
        let p = poly(&c);
        assert_eq!(cubic_discriminant(&p).unwrap(), discriminant(&p).unwrap());
        let d = cubic_discriminant(&p).unwrap();
        let n = cert(&p).real_root_count;
        assert_eq!(d.is_negative(), n == 1, "{c:?}");
    }
    // quadratic b^2 - 4ac
    assert_eq!(discriminant(&poly(&[3, 5, 2])).unwrap(), int(1));
}

#[test]
fn interlacing_examples() {
    let r = check_interlacing(&poly(&[0, 1]), &poly(&[-1, 0, 1])).unwrap();
    assert_eq!(r.relation, Interlacing::Strict);
    // x vs x^2: common zero with multiplicities 2 and 1
    let r = check_interlacing(&poly(&[0, 1]), &poly(&[0, 0, 1])).unwrap();
    assert!(matches!(r.relation, Interlacing::StrictExceptCommonZeroAt(ref z) if z.lo.is_zero() && z.is_point()));
    // (x-2) vs (x^2-1): 2 outside [-1, 1]
    let r = check_interlacing(&poly(&[-2, 1]), &poly(&[-1, 0, 1])).unwrap();
    assert_eq!(r.relation, Interlacing::Fails);
    let w = r.witness.unwrap();
    let (a, b) = w.obreshkov.expect("an Obreshkov witness exists");
    let comb = obreshkov_combination(&poly(&[-1, 0, 1]), &poly(&[-2, 1]), &a, &b);
    assert_eq!(cert(&comb).status, RootStatus::NotRealRooted);
    // shared simple root: (x-1) vs (x-1)(x+1) is weak
    let r = check_interlacing(&poly(&[-1, 1]), &poly(&[-1, 0, 1]).mul(&poly(&[3, 1]))).unwrap_err();
    assert_eq!(r, Error::DegreeMismatch);
    let r = check_interlacing(&poly(&[-1, 1]), &poly(&[-1, 0, 1])).unwrap();
    assert_eq!(r.relation, Interlacing::Weak);
    assert_eq!(check_interlacing(&poly(&[0, 1]), &poly(&[1, 0, 1])), Err(Error::NotRealRooted));
}

#[test]
fn ball_path_agrees_with_exact() {
    let p = poly(&[-6, 11, -6, 1]); // (x-1)(x-2)(x-3)
    let b = p.map(|c| BallReal::from_rational(c, 128));
    let c = count_real_roots_ball(&b, 1024).unwrap();
    assert_eq!(c.status, RootStatus::RealRooted);
    assert_eq!(c.real_root_count, 3);
    let q = poly(&[1, 0, 1]).mul(&poly(&[0, 1]));
    let c = count_real_roots_ball(&q.map(|c| BallReal::from_rational(c, 128)), 1024).unwrap();
    assert_eq!((c.status, c.real_root_count, c.zero_multiplicity), (RootStatus::NotRealRooted, 1, 1));
    // a double root cannot be certified on the ball path
    let d = poly(&[1, -2, 1]).map(|c| BallReal::from_rational(c, 128));
    assert_eq!(count_real_roots_ball(&d, 512).unwrap().status, RootStatus::Inconclusive);
    // uncertain leading coefficient
    let fuzzy = BallReal::from_rational(&rat(1, 100), 64).add_error(&Mag::pow2(-3));
    let u = RealPoly::new(vec![BallReal::one(64), BallReal::one(64), fuzzy]);
    assert_eq!(count_real_roots_ball(&u, 512).unwrap().status, RootStatus::Inconclusive);
}

#[test]
fn ball_interlacing() {
    let to_b = |p: &ExactPoly| p.map(|c| BallReal::from_rational(c, 128));
    let r = check_interlacing_ball(&to_b(&poly(&[0, 1])), &to_b(&poly(&[-1, 0, 1])), 1024).unwrap();
    assert_eq!(r.relation, Interlacing::Strict);
    let r = check_interlacing_ball(&to_b(&poly(&[-2, 1])), &to_b(&poly(&[-1, 0, 1])), 1024).unwrap();
    assert_eq!(r.relation, Interlacing::Fails);
    let r = check_interlacing_ball(&to_b(&poly(&[0, 1, 1])), &to_b(&poly(&[0, 0, 2, 1])), 1024).unwrap();
    assert!(matches!(r.relation, Interlacing::StrictExceptCommonZeroAt(_)), "{r:?}");
    // irrational roots ±√2 around 1/2
    let r = check_interlacing_ball(&to_b(&poly(&[-1, 2])), &to_b(&poly(&[-2, 0, 1])), 1024).unwrap();
    assert_eq!(r.relation, Interlacing::Strict);
}

/// Sign changes on a fine rational grid, subdividing cells where the
/// derivative changes sign so that close root pairs are not skipped.
fn brute_force_count(p: &ExactPoly) -> usize {
    let d = p.degree().unwrap();
    let lead = p.coeffs()[d].abs();
    let m = p.coeffs()[..d].iter().map(|c| c.abs() / &lead).max().unwrap_or_default() + int(1);
    // dyadic grid keeps denominators small
    let mut bound = int(1);
    while bound <= m {
        bound *= int(2);
    }
    let dp = p.derivative();
    let steps = 256i64;
    let mut count = 0;
    let pts: Vec<ExactRational> = (0..=steps)
        .map(|k| -&bound + &bound * rat(2 * k, steps))
        .collect();
    fn cell(p: &ExactPoly, dp: &ExactPoly, a: &ExactRational, b: &ExactRational, depth: u32) -> usize {
        let (fa, fb) = (p.eval(a), p.eval(b));
        let sa = rational_sign(&fa);
        let sb = rational_sign(&fb);
        let mut n = usize::from(sb == Sign::Zero);
        if sa != Sign::Zero && sb != Sign::Zero && sa != sb {
            return 1;
        }
        if depth == 0 {
            return n;
        }
        let ga = rational_sign(&dp.eval(a));
        let gb = rational_sign(&dp.eval(b));
        if ga != gb || ga == Sign::Zero {
            let m = (a + b) / int(2);
            n = cell(p, dp, a, &m, depth - 1) + cell(p, dp, &m, b, depth - 1);
        }
        n
    }
    if rational_sign(&p.eval(&pts[0])) == Sign::Zero {
        count += 1;
    }
    for w in pts.windows(2) {
        count += cell(p, &dp, &w[0], &w[1], 30);
    }
    count
}

#[test]
fn sturm_matches_brute_force_on_random_polynomials() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checked = 0;
    while checked < 200 {
        let deg = rng.gen_range(1..=8);
        let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
        if c[deg] == 0 {
            c[deg] = 1;
        }
        let p = poly(&c);
        let sturm = cert(&p);
        if sturm.all_simple_away_from_zero != Some(true) || sturm.zero_multiplicity > 1 {
            continue;
        }
        assert_eq!(sturm.real_root_count, brute_force_count(&p), "{c:?}");
        checked += 1;
    }
}

fn small_poly() -> impl Strategy<Value = ExactPoly> {
    prop::collection::vec(-6i64..7, 2..7).prop_map(|mut c| {
        let n = c.len() - 1;
        if c[n] == 0 {
            c[n] = 1;
        }
        poly(&c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ball_verdicts_match_exact(p in small_poly(), bits in 64u32..200) {
        let e = cert(&p);
        let b = count_real_roots_ball(&p.map(|c| BallReal::from_rational(c, bits)), 1024).unwrap();
        if b.status != RootStatus::Inconclusive {
            prop_assert_eq!(b.status, e.status);
            prop_assert_eq!(b.real_root_count, e.real_root_count);
        }
    }

    #[test]
    fn escalation_never_flips(p in small_poly()) {
        let mut last: Option<RootStatus> = None;
        for bits in [32u32, 64, 128, 256] {
            let b = count_real_roots_ball(&p.map(|c| BallReal::from_rational(c, bits)), bits).unwrap();
            if b.status != RootStatus::Inconclusive {
                if let Some(l) = last {
                    prop_assert_eq!(l, b.status);
                }
                last = Some(b.status);
            }
        }
    }

    #[test]
    fn strict_interlacing_passes_obreshkov(roots in prop::collection::btree_set(-20i64..20, 2..7), seed in 0u64..1000) {
        // p with integer roots, q with a root strictly inside each gap
        let r: Vec<i64> = roots.into_iter().collect();
        let mut p = poly(&[1]);
        for &x in &r {
            p = p.mul(&poly(&[-2 * x, 2]));
        }
        let mut q = poly(&[1]);
        for w in r.windows(2) {
            q = q.mul(&poly(&[-(w[0] + w[1]), 2]));
        }
        let rep = check_interlacing(&q, &p).unwrap();
        prop_assert_eq!(rep.relation, Interlacing::Strict);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let pairs: Vec<_> = (0..10).map(|_| (rat(rng.gen_range(-50..50), rng.gen_range(1..9)), rat(rng.gen_range(-50..50), rng.gen_range(1..9)))).collect();
        prop_assert!(obreshkov_check(&p, &q, &pairs).unwrap());
    }
}
