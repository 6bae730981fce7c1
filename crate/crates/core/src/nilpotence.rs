//! Depth certificates for pure Artin group elements: the h-valuation of
//! R(w) - I bounds how deep w can sit in the lower central series of the
//! pure group, with C^1 P = (P, P).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{
    valuation_from_identity, HSeries, LaurentQT, SparseMat, Valuation,
};
use crate::coxeter::{is_pure, word_to_w, ArtinWord, RootSystem, TypeId, WElem};
use crate::error::{Error, Result};
use crate::folding::{foldings_from, transport_pure};
use crate::lkb::rep_for;

pub const CONVENTION: &str = "C1=(P,P)";
pub const PRNG: &str = "chacha8";

/// How a word reached a representation: directly for the simply-laced
/// types, through a verified folding otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Direct,
    Folded { target: TypeId },
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Route::Direct => f.write_str("direct"),
            Route::Folded { target } => write!(f, "folding({})", target),
        }
    }
}

/// A random pure word `u sigma_i^2 u^{-1}` with `u` of length at most 6.
pub fn sample_pure<R: Rng>(t: TypeId, rng: &mut R) -> ArtinWord {
    let rank = t.rank();
    let len = rng.gen_range(0..=6usize);
    let mut u = Vec::with_capacity(len);
    for _ in 0..len {
        let i = rng.gen_range(1..=rank);
        let e: i8 = if rng.gen::<bool>() { 1 } else { -1 };
        u.push((i, e));
    }
    let u = ArtinWord::new(t, u).expect("sampled letters are in range");
    let i = rng.gen_range(1..=rank);
    let sq = ArtinWord::new(t, vec![(i, 1), (i, 1)]).expect("generator index in range");
    sq.conjugate_by(&u)
}

/// A sampled element of C^r P: level 1 is a commutator of two sampled
/// pure words, level r + 1 wraps a fresh pure word around a level-r
/// witness. Words are kept verbatim, never freely reduced.
#[derive(Clone, Debug)]
pub struct LcsWitness {
    pub level: usize,
    pub pures: Vec<ArtinWord>,
    pub word: ArtinWord,
}

pub fn lcs_witness_with<R: Rng>(t: TypeId, r: usize, rng: &mut R) -> Result<LcsWitness> {
    if r < 1 {
        return Err(Error::Invalid("witness level must be at least 1".into()));
    }
    let p0 = sample_pure(t, rng);
    let p1 = sample_pure(t, rng);
    let mut word = p1.commutator(&p0);
    let mut pures = vec![p0, p1];
    for _ in 1..r {
        let p = sample_pure(t, rng);
        word = p.commutator(&word);
        pures.push(p);
    }
    Ok(LcsWitness { level: r, pures, word })
}

pub fn lcs_witness(t: TypeId, r: usize, seed: u64) -> Result<LcsWitness> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    lcs_witness_with(t, r, &mut rng)
}

fn route_for(t: TypeId) -> Result<Route> {
    if t.is_simply_laced() {
        return Ok(Route::Direct);
    }
    for def in foldings_from(t) {
        match rep_for(def.target()) {
            Ok(_) => return Ok(Route::Folded { target: def.target() }),
            Err(Error::MissingTable { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::MissingTable {
        type_name: t.to_string(),
        hint: "no folding route with an available target table".into(),
    })
}

fn routed_word(w: &ArtinWord, route: Route) -> Result<ArtinWord> {
    match route {
        Route::Direct => Ok(w.clone()),
        Route::Folded { target } => {
            let def = foldings_from(w.type_id())
                .into_iter()
                .find(|d| d.target() == target)
                .expect("route came from the registry");
            let vf = def.verify_w()?;
            transport_pure(&vf, w)
        }
    }
}

/// Truncated image of a pure word through its route.
pub fn truncated_image(w: &ArtinWord, k: usize) -> Result<(SparseMat<HSeries>, Route)> {
    let route = route_for(w.type_id())?;
    let routed = routed_word(w, route)?;
    let rep = rep_for(routed.type_id())?;
    Ok((rep.eval_word_truncated(&routed, k)?, route))
}

/// Exact image of a pure word through its route.
pub fn exact_image(w: &ArtinWord) -> Result<(SparseMat<LaurentQT>, Route)> {
    let route = route_for(w.type_id())?;
    let routed = routed_word(w, route)?;
    let rep = rep_for(routed.type_id())?;
    Ok((rep.eval_word_exact(&routed)?, route))
}

/// Human-readable witness that a permutation is not the identity.
pub fn purity_obstruction(x: &WElem) -> String {
    let n = x.num_positive();
    for p in 0..n {
        let q = x.image(p);
        if q != p {
            let (qi, sign) = if q < n { (q, "") } else { (q - n, "-") };
            return format!(
                "pi(w) sends positive root {} to {}{}",
                p + 1,
                sign,
                qi + 1
            );
        }
    }
    unreachable!("a non-identity permutation moves some root");
}

#[derive(Clone, Debug)]
pub struct DepthCertificate {
    pub word: ArtinWord,
    pub order: usize,
    pub valuation: Valuation,
    pub route: Route,
    pub verdicts: Vec<String>,
}

impl DepthCertificate {
    pub fn conclusive(&self) -> bool {
        matches!(self.valuation, Valuation::At(_))
    }

    pub fn to_json(&self) -> String {
        let val: serde_json::Value = match self.valuation {
            Valuation::At(v) => v.into(),
            Valuation::Above(_) => "ABOVE_K".into(),
        };
        let mut s = serde_json::json!({
            "word": self.word.to_string(),
            "type": self.word.type_id().to_string(),
            "order": self.order,
            "valuation": val,
            "route": self.route.to_string(),
            "convention": CONVENTION,
            "verdicts": self.verdicts,
        })
        .to_string();
        s.push('\n');
        s
    }
}

/// Certify the depth of a pure word: an exact valuation v of R(w) - I
/// proves w nontrivial and places it outside C^r P for every r >= v.
pub fn certify(w: &ArtinWord, k: usize) -> Result<DepthCertificate> {
    let rs = RootSystem::new(w.type_id())?;
    let x = word_to_w(&rs, w);
    if !x.is_identity() {
        return Err(Error::NotPure {
            obstruction: purity_obstruction(&x),
        });
    }
    let (img, route) = truncated_image(w, k)?;
    let valuation = valuation_from_identity(&img);
    let mut verdicts = vec!["the word is pure: pi(w) = 1 in W".to_string()];
    match valuation {
        Valuation::At(v) => {
            verdicts.push(format!(
                "R(w) - I has h-valuation exactly {} at truncation order {}",
                v, k
            ));
            verdicts.push("w is nontrivial in the pure Artin group".to_string());
            verdicts.push(format!("w lies outside C^r P for every r >= {}", v));
        }
        Valuation::Above(kk) => {
            verdicts.push(format!(
                "R(w) - I vanishes through order {}: inconclusive at this truncation",
                kk
            ));
            verdicts.push(
                "raise the truncation order or evaluate exactly to decide".to_string(),
            );
        }
    }
    Ok(DepthCertificate {
        word: w.clone(),
        order: k,
        valuation,
        route,
        verdicts,
    })
}

#[derive(Clone, Debug)]
pub struct SeparationReport {
    pub type_id: TypeId,
    pub order: usize,
    pub route: Route,
    pub min_order: Option<usize>,
    pub exact_distinct: Option<bool>,
}

impl SeparationReport {
    pub fn distinguished(&self) -> bool {
        self.min_order.is_some() || self.exact_distinct == Some(true)
    }

    pub fn to_json(&self) -> String {
        let min: serde_json::Value = match self.min_order {
            Some(v) => v.into(),
            None => "ABOVE_K".into(),
        };
        let mut s = serde_json::json!({
            "type": self.type_id.to_string(),
            "order": self.order,
            "route": self.route.to_string(),
            "min_order": min,
            "exact_distinct": self.exact_distinct,
            "distinguished": self.distinguished(),
            "convention": CONVENTION,
        })
        .to_string();
        s.push('\n');
        s
    }
}

/// Decide whether two pure words differ, by the valuation of
/// R(w1 w2^{-1}) - I; escalates to exact evaluation when every order
/// through k agrees.
pub fn separate(w1: &ArtinWord, w2: &ArtinWord, k: usize) -> Result<SeparationReport> {
    if w1.type_id() != w2.type_id() {
        return Err(Error::TypeMismatch {
            expected: w1.type_id().to_string(),
            found: w2.type_id().to_string(),
        });
    }
    let rs = RootSystem::new(w1.type_id())?;
    for w in [w1, w2] {
        if !is_pure(&rs, w) {
            let x = word_to_w(&rs, w);
            return Err(Error::NotPure {
                obstruction: purity_obstruction(&x),
            });
        }
    }
    let q = w1.concat(&w2.inverse());
    let (img, route) = truncated_image(&q, k)?;
    let mut min_order = None;
    let mut exact_distinct = None;
    match valuation_from_identity(&img) {
        Valuation::At(v) => min_order = Some(v),
        Valuation::Above(_) => {
            let (m, _) = exact_image(&q)?;
            let id = SparseMat::identity(m.nrows(), LaurentQT::one());
            exact_distinct = Some(m != id);
        }
    }
    Ok(SeparationReport {
        type_id: w1.type_id(),
        order: k,
        route,
        min_order,
        exact_distinct,
    })
}

#[derive(Clone, Debug)]
pub struct AuditRow {
    pub level: usize,
    pub sample: usize,
    pub word_len: usize,
    pub valuation: Valuation,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    pub type_id: TypeId,
    pub order: usize,
    pub r_max: usize,
    pub samples: usize,
    pub seed: u64,
    pub rows: Vec<AuditRow>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.ok)
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                let val: serde_json::Value = match r.valuation {
                    Valuation::At(v) => v.into(),
                    Valuation::Above(_) => "ABOVE_K".into(),
                };
                serde_json::json!({
                    "level": r.level,
                    "sample": r.sample,
                    "word_len": r.word_len,
                    "valuation": val,
                    "ok": r.ok,
                })
            })
            .collect();
        let mut s = serde_json::json!({
            "type": self.type_id.to_string(),
            "order": self.order,
            "r_max": self.r_max,
            "samples": self.samples,
            "seed": self.seed,
            "prng": PRNG,
            "convention": CONVENTION,
            "passed": self.passed(),
            "rows": rows,
        })
        .to_string();
        s.push('\n');
        s
    }
}

/// Sample lower-central-series witnesses at levels 1..=r_max and check
/// the filtration bound v(R(w) - I) >= r + 1 on every one. Any exact
/// valuation below the bound is a hard failure.
pub fn filtration_audit(
    t: TypeId,
    r_max: usize,
    k: usize,
    samples: usize,
    seed: u64,
) -> Result<AuditReport> {
    if r_max < 1 {
        return Err(Error::Invalid("audit needs r_max >= 1".into()));
    }
    if k < r_max + 1 {
        return Err(Error::Invalid(format!(
            "truncation order {} cannot decide level {}: need at least {}",
            k,
            r_max,
            r_max + 1
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(r_max * samples);
    for r in 1..=r_max {
        for s in 0..samples {
            let wit = lcs_witness_with(t, r, &mut rng)?;
            let (img, _) = truncated_image(&wit.word, k)?;
            let valuation = valuation_from_identity(&img);
            let ok = valuation.lower_bound() >= r + 1;
            rows.push(AuditRow {
                level: r,
                sample: s,
                word_len: wit.word.len(),
                valuation,
                ok,
            });
        }
    }
    Ok(AuditReport {
        type_id: t,
        order: k,
        r_max,
        samples,
        seed,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(t: TypeId, letters: &[i64]) -> ArtinWord {
        let ls = letters
            .iter()
            .map(|&x| (x.unsigned_abs() as usize, if x > 0 { 1i8 } else { -1 }))
            .collect();
        ArtinWord::new(t, ls).unwrap()
    }

    #[test]
    fn sampled_words_are_pure_and_deterministic() {
        for t in [TypeId::A(3), TypeId::B(3), TypeId::H3, TypeId::I2(7)] {
            let rs = RootSystem::new(t).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..50 {
                assert!(is_pure(&rs, &sample_pure(t, &mut rng)));
            }
        }
        let mut r1 = ChaCha8Rng::seed_from_u64(11);
        let mut r2 = ChaCha8Rng::seed_from_u64(11);
        assert_eq!(
            sample_pure(TypeId::A(3), &mut r1),
            sample_pure(TypeId::A(3), &mut r2)
        );
    }

    #[test]
    fn witness_level_one_is_a_plain_commutator() {
        let wit = lcs_witness(TypeId::A(2), 1, 3).unwrap();
        assert_eq!(wit.level, 1);
        assert_eq!(wit.pures.len(), 2);
        let expect = wit.pures[1].commutator(&wit.pures[0]);
        assert_eq!(wit.word, expect);
        let deeper = lcs_witness(TypeId::A(2), 3, 3).unwrap();
        assert_eq!(deeper.pures.len(), 4);
    }

    #[test]
    fn commutator_words_are_never_freely_reduced() {
        let a = w(TypeId::A(2), &[1, 1]);
        let b = w(TypeId::A(2), &[2, 2]);
        let c = a.commutator(&b);
        assert_eq!(c.letters().len(), 8);
        assert_eq!(c.to_string(), "1 1 2 2 -1 -1 -2 -2");
    }

    #[test]
    fn certify_refuses_non_pure_words() {
        let err = certify(&w(TypeId::A(2), &[1]), 4).unwrap_err();
        match err {
            Error::NotPure { obstruction } => {
                assert!(obstruction.contains("positive root"), "{}", obstruction);
            }
            other => panic!("expected NotPure, got {:?}", other),
        }
    }

    #[test]
    fn commutator_of_squares_has_valuation_two() {
        let c = w(TypeId::A(2), &[1, 1]).commutator(&w(TypeId::A(2), &[2, 2]));
        let cert = certify(&c, 6).unwrap();
        assert_eq!(cert.valuation, Valuation::At(2));
        assert_eq!(cert.route, Route::Direct);
        assert!(cert
            .verdicts
            .iter()
            .any(|v| v.contains("outside C^r P for every r >= 2")));
    }

    #[test]
    fn low_order_certification_is_inconclusive() {
        let c = w(TypeId::A(2), &[1, 1]).commutator(&w(TypeId::A(2), &[2, 2]));
        let cert = certify(&c, 1).unwrap();
        assert_eq!(cert.valuation, Valuation::Above(1));
        assert!(!cert.conclusive());
        assert!(cert.verdicts.iter().any(|v| v.contains("inconclusive")));
        let json = cert.to_json();
        assert!(json.contains("\"valuation\":\"ABOVE_K\""), "{}", json);
    }

    #[test]
    fn certificate_json_shape() {
        let cert = certify(&w(TypeId::A(2), &[1, 1]), 4).unwrap();
        let json = cert.to_json();
        assert!(json.contains("\"convention\":\"C1=(P,P)\""));
        assert!(json.contains("\"route\":\"direct\""));
        assert!(json.contains("\"valuation\":1"), "{}", json);
        assert!(json.contains("\"word\":\"1 1\""));
    }

    #[test]
    fn b2_certifies_through_the_a3_folding() {
        let c = w(TypeId::B(2), &[1, 1]).commutator(&w(TypeId::B(2), &[2, 2]));
        let cert = certify(&c, 5).unwrap();
        assert_eq!(cert.route, Route::Folded { target: TypeId::A(3) });
        assert_eq!(cert.valuation, Valuation::At(2));
    }

    #[test]
    fn i2_odd_certifies_through_type_a() {
        let full_twist = w(TypeId::I2(5), &[1, 2]).pow(5);
        let rs = RootSystem::new(TypeId::I2(5)).unwrap();
        assert!(is_pure(&rs, &full_twist));
        let cert = certify(&full_twist, 3).unwrap();
        assert_eq!(cert.route, Route::Folded { target: TypeId::A(4) });
        assert_eq!(cert.valuation, Valuation::At(1));
    }

    #[test]
    fn g2_prefers_the_triality_route() {
        let full_twist = w(TypeId::I2(6), &[1, 2]).pow(6);
        let cert = certify(&full_twist, 2).unwrap();
        assert_eq!(cert.route, Route::Folded { target: TypeId::D(4) });
        assert_eq!(cert.valuation, Valuation::At(1));
    }

    #[test]
    fn separate_the_two_square_products() {
        let w1 = w(TypeId::A(2), &[1, 1, 2, 2]);
        let w2 = w(TypeId::A(2), &[2, 2, 1, 1]);
        let report = separate(&w1, &w2, 6).unwrap();
        assert!(report.distinguished());
        assert_eq!(report.min_order, Some(2));
        assert_eq!(report.exact_distinct, None);
    }

    #[test]
    fn separate_escalates_to_exact_on_equal_words() {
        let w1 = w(TypeId::A(2), &[1, 1, 2, 2]);
        let report = separate(&w1, &w1.clone(), 4).unwrap();
        assert!(!report.distinguished());
        assert_eq!(report.exact_distinct, Some(false));
        // a different spelling of the same element collapses exactly too
        let respelled = w(TypeId::A(2), &[1, 1, 2, -2, 2, 2]);
        let report = separate(&w1, &respelled, 4).unwrap();
        assert!(!report.distinguished());
        assert_eq!(report.exact_distinct, Some(false));
    }

    #[test]
    fn audit_passes_on_a2_and_rejects_short_orders() {
        let report = filtration_audit(TypeId::A(2), 2, 4, 3, 20260814).unwrap();
        assert!(report.passed());
        assert_eq!(report.rows.len(), 6);
        assert!(report.to_json().contains("\"prng\":\"chacha8\""));
        assert!(matches!(
            filtration_audit(TypeId::A(2), 3, 3, 2, 1),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn separate_requires_matching_types_and_purity() {
        let w1 = w(TypeId::A(2), &[1, 1]);
        let w2 = w(TypeId::A(3), &[1, 1]);
        assert!(matches!(
            separate(&w1, &w2, 4),
            Err(Error::TypeMismatch { .. })
        ));
        let impure = w(TypeId::A(2), &[1]);
        assert!(matches!(
            separate(&w1, &impure, 4),
            Err(Error::NotPure { .. })
        ));
    }
}
