//! Certification sweeps over families and `(n, s)` grids, with one
//! escalation of the γ table when a ball certificate stays inconclusive.

use std::collections::BTreeMap;

use brenke_core::families::{empirical_threshold, generate_family, FamilySpec};
use brenke_core::numerics::{BallReal, ExactRational};
use brenke_core::poly::{ExactPoly, RealPoly};
use brenke_core::realroots::{
    check_interlacing, check_interlacing_ball, count_real_roots, count_real_roots_ball, obreshkov_check, Interlacing,
    RootCertificate, RootStatus,
};
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::GammaSource;
use crate::error::Result;
use crate::expr::describe;

pub fn status_name(s: RootStatus) -> &'static str {
    match s {
        RootStatus::RealRooted => "REAL_ROOTED",
        RootStatus::NotRealRooted => "NOT_REAL_ROOTED",
        RootStatus::Inconclusive => "INCONCLUSIVE",
    }
}

pub fn family_name(spec: &FamilySpec) -> &'static str {
    match spec {
        FamilySpec::Jensen => "jensen",
        FamilySpec::JensenShifted { .. } => "jensen-shifted",
        FamilySpec::Qhat { .. } => "qhat",
        FamilySpec::PAlpha { .. } => "p-alpha",
        FamilySpec::QAlpha { .. } => "q-alpha",
        FamilySpec::AppellDunkl { .. } => "dunkl",
        FamilySpec::Brenke { .. } => "brenke",
    }
}

/// Family parameters other than `n` and `s`.
pub fn family_params(spec: &FamilySpec) -> BTreeMap<&'static str, String> {
    let mut m = BTreeMap::new();
    match spec {
        FamilySpec::Qhat { big_n } => {
            m.insert("N", big_n.to_string());
        }
        FamilySpec::PAlpha { alpha, .. } | FamilySpec::QAlpha { alpha, .. } => {
            m.insert("alpha", alpha.to_string());
        }
        FamilySpec::AppellDunkl { mu, a } => {
            m.insert("mu", mu.to_string());
            m.insert("A", describe(a));
        }
        FamilySpec::Brenke { a, b } => {
            m.insert("A", describe(a));
            m.insert("B", describe(b));
        }
        _ => {}
    }
    m
}

fn family_shift(spec: &FamilySpec) -> Option<usize> {
    match spec {
        FamilySpec::JensenShifted { s } | FamilySpec::PAlpha { s, .. } | FamilySpec::QAlpha { s, .. } => Some(*s),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cell {
    pub family: &'static str,
    pub params: BTreeMap<&'static str, String>,
    pub n: usize,
    pub s: Option<usize>,
    pub status: &'static str,
    pub real_root_count: usize,
    pub degree: usize,
    pub precision_used: Option<u32>,
}

/// CSV form of a [`Cell`] with the parameters joined into one column.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CellRow {
    pub family: &'static str,
    pub params: String,
    pub n: usize,
    pub s: Option<usize>,
    pub status: &'static str,
    pub real_root_count: usize,
    pub degree: usize,
    pub precision_used: Option<u32>,
}

impl Cell {
    fn new(spec: &FamilySpec, n: usize, cert: &RootCertificate) -> Cell {
        Cell {
            family: family_name(spec),
            params: family_params(spec),
            n,
            s: family_shift(spec),
            status: status_name(cert.status),
            real_root_count: cert.real_root_count,
            degree: cert.degree_certified,
            precision_used: cert.precision_used,
        }
    }

    pub fn row(&self) -> CellRow {
        CellRow {
            family: self.family,
            params: self.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";"),
            n: self.n,
            s: self.s,
            status: self.status,
            real_root_count: self.real_root_count,
            degree: self.degree,
            precision_used: self.precision_used,
        }
    }

    pub fn real_rooted(&self) -> bool {
        self.status == status_name(RootStatus::RealRooted)
    }

    pub fn falsified(&self) -> bool {
        self.status == status_name(RootStatus::NotRealRooted)
    }

    pub fn inconclusive(&self) -> bool {
        self.status == status_name(RootStatus::Inconclusive)
    }
}

/// Certifies families on the exact path when possible and from the ball γ
/// table otherwise.
#[derive(Clone, Debug)]
pub struct Certifier {
    pub source: GammaSource,
    /// Working precision of the γ table and the ball polynomials.
    pub bits: u32,
    /// Precision cap for a single ball Sturm computation.
    pub cap: u32,
}

impl Certifier {
    /// Certificates for `n_min ≤ n ≤ n_max` of every family in `specs`, in
    /// input order.
    pub fn certify(&self, specs: &[FamilySpec], n_min: usize, n_max: usize) -> Result<Vec<Cell>> {
        for s in specs {
            s.validate()?;
        }
        let needed = specs.iter().map(|s| s.gammas_needed(n_max)).max().unwrap_or(0);
        let cells: Vec<(usize, usize)> = (0..specs.len()).flat_map(|f| (n_min..=n_max).map(move |n| (f, n))).collect();
        if needed == 0 {
            let fams = specs
                .par_iter()
                .map(|s| generate_family::<ExactRational>(s, n_max, None, ()))
                .collect::<brenke_core::Result<Vec<_>>>()?;
            let certs = cells
                .par_iter()
                .map(|&(f, n)| count_real_roots(&fams[f][n]))
                .collect::<brenke_core::Result<Vec<_>>>()?;
            return Ok(cells.iter().zip(&certs).map(|(&(f, n), c)| Cell::new(&specs[f], n, c)).collect());
        }
        let mut certs = self.ball_certs(specs, &cells, n_max, needed, self.bits)?;
        let retry: Vec<usize> = (0..cells.len()).filter(|&i| certs[i].status == RootStatus::Inconclusive).collect();
        if !retry.is_empty() {
            let sub: Vec<(usize, usize)> = retry.iter().map(|&i| cells[i]).collect();
            let again = self.ball_certs(specs, &sub, n_max, needed, 2 * self.bits)?;
            for (i, c) in retry.into_iter().zip(again) {
                certs[i] = c;
            }
        }
        Ok(cells.iter().zip(&certs).map(|(&(f, n), c)| Cell::new(&specs[f], n, c)).collect())
    }

    fn ball_certs(
        &self,
        specs: &[FamilySpec],
        cells: &[(usize, usize)],
        n_max: usize,
        needed: usize,
        bits: u32,
    ) -> Result<Vec<RootCertificate>> {
        let table = self.source.table(needed.max(1) - 1, bits)?;
        let gammas = &table.gammas[..];
        let fams = self.ball_families(specs, n_max, gammas, bits)?;
        let cap = self.cap.max(bits);
        Ok(cells
            .par_iter()
            .map(|&(f, n)| count_real_roots_ball(&fams[f][n], cap))
            .collect::<brenke_core::Result<Vec<_>>>()?)
    }

    fn ball_families(
        &self,
        specs: &[FamilySpec],
        n_max: usize,
        gammas: &[BallReal],
        bits: u32,
    ) -> Result<Vec<Vec<RealPoly<BallReal>>>> {
        Ok(specs
            .par_iter()
            .map(|s| generate_family(s, n_max, Some(gammas), bits))
            .collect::<brenke_core::Result<Vec<_>>>()?)
    }

    pub fn interlace(&self, spec: &FamilySpec, n_max: usize, pairs: usize, seed: u64) -> Result<Vec<InterlaceRow>> {
        spec.validate()?;
        let needed = spec.gammas_needed(n_max);
        if needed == 0 {
            let ps = generate_family::<ExactRational>(spec, n_max, None, ())?;
            return (1..=n_max).into_par_iter().map(|n| exact_pair(&ps[n - 1], &ps[n], n, pairs, seed)).collect();
        }
        let table = self.source.table(needed - 1, self.bits)?;
        let ps = generate_family(spec, n_max, Some(&table.gammas[..]), self.bits)?;
        let cap = self.cap.max(self.bits);
        (1..=n_max)
            .into_par_iter()
            .map(|n| {
                let r = check_interlacing_ball(&ps[n - 1], &ps[n], cap);
                Ok(match r {
                    Ok(r) => InterlaceRow::new(n, &r.relation, r.witness.map(|w| w.index), None),
                    Err(brenke_core::Error::NotRealRooted) => InterlaceRow::not_real_rooted(n),
                    Err(e) => return Err(e.into()),
                })
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InterlaceRow {
    /// The pair `(p_{n-1}, p_n)`.
    pub n: usize,
    pub relation: String,
    pub witness_index: Option<usize>,
    /// Random `(α, β)` with `αp_n + βp_{n-1}` real-rooted, out of those tried.
    pub obreshkov_passed: Option<usize>,
    pub obreshkov_tried: usize,
}

impl InterlaceRow {
    fn new(n: usize, rel: &Interlacing, witness_index: Option<usize>, obreshkov: Option<(usize, usize)>) -> InterlaceRow {
        let relation = match rel {
            Interlacing::Strict => "STRICT".to_string(),
            Interlacing::Weak => "WEAK".to_string(),
            Interlacing::StrictExceptCommonZeroAt(r) => format!("STRICT_EXCEPT_COMMON_ZERO({}, {})", r.lo, r.hi),
            Interlacing::Fails => "FAILS".to_string(),
            Interlacing::Unknown => "UNKNOWN".to_string(),
        };
        InterlaceRow {
            n,
            relation,
            witness_index,
            obreshkov_passed: obreshkov.map(|o| o.0),
            obreshkov_tried: obreshkov.map_or(0, |o| o.1),
        }
    }

    fn not_real_rooted(n: usize) -> InterlaceRow {
        InterlaceRow {
            n,
            relation: "NOT_REAL_ROOTED".into(),
            witness_index: None,
            obreshkov_passed: None,
            obreshkov_tried: 0,
        }
    }

    pub fn interlaces(&self) -> bool {
        self.relation == "STRICT" || self.relation == "WEAK" || self.relation.starts_with("STRICT_EXCEPT")
    }

    pub fn falsified(&self) -> bool {
        self.relation == "FAILS"
            || self.relation == "NOT_REAL_ROOTED"
            || self.obreshkov_passed.is_some_and(|k| k < self.obreshkov_tried)
    }
}

/// `count` pairs `(α, β)` of small random rationals, not both zero.
pub fn random_pairs(count: usize, seed: u64) -> Vec<(ExactRational, ExactRational)> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut r = move || ExactRational::new(rng.gen_range(-60i64..=60).into(), rng.gen_range(1i64..=12).into());
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (a, b) = (r(), r());
        if !(num_traits::Zero::is_zero(&a) && num_traits::Zero::is_zero(&b)) {
            out.push((a, b));
        }
    }
    out
}

fn exact_pair(q: &ExactPoly, p: &ExactPoly, n: usize, pairs: usize, seed: u64) -> Result<InterlaceRow> {
    let r = match check_interlacing(q, p) {
        Ok(r) => r,
        Err(brenke_core::Error::NotRealRooted) => return Ok(InterlaceRow::not_real_rooted(n)),
        Err(e) => return Err(e.into()),
    };
    let trials = random_pairs(pairs, seed.wrapping_add(n as u64));
    let mut passed = 0;
    for t in &trials {
        if obreshkov_check(p, q, std::slice::from_ref(t))? {
            passed += 1;
        }
    }
    Ok(InterlaceRow::new(n, &r.relation, r.witness.map(|w| w.index), Some((passed, trials.len()))))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Threshold {
    pub n: usize,
    /// Smallest `s` from which every computed cell is real-rooted.
    pub s_n: Option<usize>,
}

/// Empirical `s_n` per `n` from a grid of cells carrying `s`.
pub fn thresholds(cells: &[Cell]) -> Vec<Threshold> {
    let mut by_n: BTreeMap<usize, Vec<(usize, bool)>> = BTreeMap::new();
    for c in cells {
        if let Some(s) = c.s {
            by_n.entry(c.n).or_default().push((s, c.real_rooted()));
        }
    }
    by_n
        .into_iter()
        .map(|(n, mut v)| {
            v.sort();
            Threshold { n, s_n: empirical_threshold(&v) }
        })
        .collect()
}

/// Overall verdict of a set of cells.
pub fn cells_exit(cells: &[Cell]) -> crate::ExitCode {
    if cells.iter().any(Cell::falsified) {
        crate::ExitCode::Falsified
    } else if cells.iter().any(Cell::inconclusive) {
        crate::ExitCode::Inconclusive
    } else {
        crate::ExitCode::Ok
    }
}
