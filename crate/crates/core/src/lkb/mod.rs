//! The Krammer-Digne representation: exact generator matrices over
//! Laurent polynomials in q and t, one dimension per reflection, with
//! validators and word evaluation in exact or truncated mode.

mod solve;
mod table;

pub use solve::derive_generators;
pub use table::{table_from_rep, RepTable};

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::{
    invert_exact, invert_truncated, iota_substitute, rat_int, LaurentQT, Rat, SparseMat,
};
use crate::arith::HSeries;
use crate::coxeter::{conj_perm, ArtinWord, RootSystem, TypeId};
use crate::error::{Error, Result};

/// Evaluation mode: exact Laurent arithmetic, or h-series truncated at
/// order K.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Truncated(usize),
}

/// How a representation was certified when it was constructed or loaded:
/// exact relation checks are proofs, truncated ones are evidence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValidationLevel {
    ExactProof,
    TruncatedEvidence(usize),
}

/// Dimension bound up to which relation checks run in exact mode.
pub const EXACT_CHECK_DIM: usize = 36;
/// Truncation order used as evidence for dimensions above the bound.
pub const EVIDENCE_ORDER: usize = 12;

struct TruncGens {
    gens: Vec<SparseMat<HSeries>>,
    invs: Vec<OnceLock<SparseMat<HSeries>>>,
}

/// The Lawrence-Krammer-Digne representation of a simply-laced Artin
/// group, over the canonical reflection basis of its root system.
pub struct LKBRep {
    rs: RootSystem,
    gens: Vec<SparseMat<LaurentQT>>,
    exact_invs: Vec<OnceLock<SparseMat<LaurentQT>>>,
    trunc_cache: Mutex<HashMap<usize, Arc<TruncGens>>>,
    validation: ValidationLevel,
}

impl LKBRep {
    fn assemble(rs: RootSystem, gens: Vec<SparseMat<LaurentQT>>, validation: ValidationLevel) -> Self {
        let rank = rs.rank();
        assert_eq!(gens.len(), rank);
        for g in &gens {
            assert_eq!(g.nrows(), rs.num_positive());
            assert_eq!(g.ncols(), rs.num_positive());
        }
        let exact_invs = (0..rank).map(|_| OnceLock::new()).collect();
        LKBRep {
            rs,
            gens,
            exact_invs,
            trunc_cache: Mutex::new(HashMap::new()),
            validation,
        }
    }

    pub fn type_id(&self) -> TypeId {
        self.rs.type_id()
    }

    pub fn dimension(&self) -> usize {
        self.rs.num_positive()
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn validation(&self) -> ValidationLevel {
        self.validation
    }

    /// Generator matrix for sigma_i, 1-based.
    pub fn generator(&self, i: usize) -> &SparseMat<LaurentQT> {
        &self.gens[i - 1]
    }

    /// Exact inverse of a generator, computed once on first use and
    /// verified by multiplication.
    pub fn generator_inverse(&self, i: usize) -> &SparseMat<LaurentQT> {
        self.exact_invs[i - 1].get_or_init(|| {
            invert_exact(&self.gens[i - 1])
                .expect("generator matrices have unit-monomial determinants")
        })
    }

    fn trunc_gens(&self, k: usize) -> Arc<TruncGens> {
        let mut cache = self.trunc_cache.lock().unwrap();
        cache
            .entry(k)
            .or_insert_with(|| {
                let gens: Vec<_> = self
                    .gens
                    .iter()
                    .map(|g| g.map(|p| iota_substitute(p, k)))
                    .collect();
                let invs = (0..gens.len()).map(|_| OnceLock::new()).collect();
                Arc::new(TruncGens { gens, invs })
            })
            .clone()
    }

    /// Evaluate a word exactly over the Laurent ring.
    pub fn eval_word_exact(&self, w: &ArtinWord) -> Result<SparseMat<LaurentQT>> {
        self.check_word(w)?;
        let n = self.dimension();
        let mut acc = SparseMat::identity(n, LaurentQT::one());
        for &(i, e) in w.letters() {
            let m = if e >= 0 {
                self.generator(i)
            } else {
                self.generator_inverse(i)
            };
            acc = acc.mul(m);
        }
        Ok(acc)
    }

    /// Evaluate a word over truncated h-series at order k.
    pub fn eval_word_truncated(&self, w: &ArtinWord, k: usize) -> Result<SparseMat<HSeries>> {
        self.check_word(w)?;
        let n = self.dimension();
        let tg = self.trunc_gens(k);
        let mut acc = SparseMat::identity(n, HSeries::one(k));
        for &(i, e) in w.letters() {
            let m: &SparseMat<HSeries> = if e >= 0 {
                &tg.gens[i - 1]
            } else {
                tg.invs[i - 1].get_or_init(|| {
                    invert_truncated(&tg.gens[i - 1])
                        .expect("generator constant terms are permutations, hence invertible")
                })
            };
            acc = acc.mul(m);
        }
        Ok(acc)
    }

    fn check_word(&self, w: &ArtinWord) -> Result<()> {
        if w.type_id() != self.type_id() {
            return Err(Error::TypeMismatch {
                expected: self.type_id().to_string(),
                found: w.type_id().to_string(),
            });
        }
        Ok(())
    }
}

/// The image of a word under the representation, in whichever arithmetic
/// the mode selected.
pub enum WordImage {
    Exact(SparseMat<LaurentQT>),
    Truncated(SparseMat<HSeries>),
}

pub fn eval_word(rep: &LKBRep, w: &ArtinWord, mode: Mode) -> Result<WordImage> {
    match mode {
        Mode::Exact => Ok(WordImage::Exact(rep.eval_word_exact(w)?)),
        Mode::Truncated(k) => Ok(WordImage::Truncated(rep.eval_word_truncated(w, k)?)),
    }
}

/// One braid-relation check between a generator pair.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub i: usize,
    pub j: usize,
    pub m: usize,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct RelationReport {
    pub type_id: TypeId,
    pub mode_label: String,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn first_failure(&self) -> Option<&RelationCheck> {
        self.checks.iter().find(|c| !c.ok)
    }
}

fn alternating<T: Clone, F: Fn(&T, &T) -> T>(a: &T, b: &T, m: usize, mul: F) -> T {
    let mut acc = a.clone();
    for k in 1..m {
        acc = mul(&acc, if k % 2 == 1 { b } else { a });
    }
    acc
}

/// Check every defining braid relation of the type on the generator
/// matrices, in the requested mode.
pub fn verify_braid_relations(rep: &LKBRep, mode: Mode) -> RelationReport {
    let t = rep.type_id();
    let rank = t.rank();
    let mut checks = Vec::new();
    for i in 1..=rank {
        for j in (i + 1)..=rank {
            let m = t.coxeter_m(i, j);
            let ok = match mode {
                Mode::Exact => {
                    let a = rep.generator(i);
                    let b = rep.generator(j);
                    alternating(a, b, m, |x, y| x.mul(y))
                        == alternating(b, a, m, |x, y| x.mul(y))
                }
                Mode::Truncated(k) => {
                    let tg = rep.trunc_gens(k);
                    let a = &tg.gens[i - 1];
                    let b = &tg.gens[j - 1];
                    alternating(a, b, m, |x, y| x.mul(y))
                        == alternating(b, a, m, |x, y| x.mul(y))
                }
            };
            checks.push(RelationCheck { i, j, m, ok });
        }
    }
    let mode_label = match mode {
        Mode::Exact => "exact".to_string(),
        Mode::Truncated(k) => format!("truncated(K={})", k),
    };
    RelationReport {
        type_id: t,
        mode_label,
        checks,
    }
}

#[derive(Clone, Debug)]
pub struct SpecializationReport {
    pub type_id: TypeId,
    pub gens: Vec<(usize, bool)>,
}

impl SpecializationReport {
    pub fn passed(&self) -> bool {
        self.gens.iter().all(|(_, ok)| *ok)
    }
}

/// Check that every generator matrix at q = t = 1 equals the conjugation
/// permutation of the corresponding simple reflection: the commutative
/// square relating the representation to the W-action on reflections.
pub fn verify_specialization(rep: &LKBRep) -> SpecializationReport {
    let rs = rep.root_system();
    let gens = (1..=rs.rank())
        .map(|i| {
            let at_one: SparseMat<Rat> = rep.generator(i).map(|p| p.eval_at_one());
            let expected = conj_perm(rs, &rs.simple_reflection(i));
            (i, at_one == expected)
        })
        .collect();
    SpecializationReport {
        type_id: rep.type_id(),
        gens,
    }
}

/// Krammer's type-A generator table on the basis x_{j,k} (1 <= j < k <=
/// n+1), x_{j,k} standing for the reflection along e_j - e_k. The image of
/// x_{j,k} under sigma_i splits into seven cases by the position of i
/// relative to [j, k].
fn typea_generator(rs: &RootSystem, n: usize, i: usize) -> SparseMat<LaurentQT> {
    let num = rs.num_positive();
    // position of x_{j,k} in the canonical root order: the root with
    // simple coordinates 1 on j..k-1
    let pos = |j: usize, k: usize| -> usize {
        let coords: Vec<i64> = (1..=n)
            .map(|c| if c >= j && c < k { 1 } else { 0 })
            .collect();
        rs.pos_index_of_int(&coords)
            .expect("x_{j,k} indexes a positive root")
    };
    let q = LaurentQT::q();
    let one = LaurentQT::one();
    let mut m = SparseMat::zeros(num, num);
    for j in 1..=n {
        for k in (j + 1)..=(n + 1) {
            let col = pos(j, k);
            if i + 1 < j || i > k {
                // disjoint from [j-1, k]: fixed
                m.set(col, col, one.clone());
            } else if i + 1 == j {
                // extend on the left: x_{j-1,k} + (1-q) x_{j,k}
                m.set(pos(j - 1, k), col, one.clone());
                m.set(col, col, &one - &q);
            } else if i == j && k == j + 1 {
                // the generator's own reflection: t q^2
                m.set(col, col, LaurentQT::monomial(rat_int(1), 2, 1));
            } else if i == j {
                // shrink on the left: tq(q-1) x_{i,i+1} + q x_{j+1,k}
                m.set(
                    pos(i, i + 1),
                    col,
                    LaurentQT::monomial(rat_int(1), 2, 1)
                        - LaurentQT::monomial(rat_int(1), 1, 1),
                );
                m.set(pos(j + 1, k), col, q.clone());
            } else if i > j && i + 1 < k {
                // i strictly inside: x_{j,k} + t q^{i-j} (q-1)^2 x_{i,i+1}
                m.set(col, col, one.clone());
                let d = (i - j) as i64;
                let corr = LaurentQT::monomial(rat_int(1), d + 2, 1)
                    - LaurentQT::monomial(rat_int(2), d + 1, 1)
                    + LaurentQT::monomial(rat_int(1), d, 1);
                m.set(pos(i, i + 1), col, corr);
            } else if i + 1 == k {
                // shrink on the right: x_{j,k-1} + t q^{k-j} (q-1) x_{i,i+1}
                m.set(pos(j, k - 1), col, one.clone());
                let d = (k - j) as i64;
                let corr = LaurentQT::monomial(rat_int(1), d + 1, 1)
                    - LaurentQT::monomial(rat_int(1), d, 1);
                m.set(pos(i, i + 1), col, corr);
            } else if i == k {
                // extend on the right: (1-q) x_{j,k} + q x_{j,k+1}
                m.set(col, col, &one - &q);
                m.set(pos(j, k + 1), col, q.clone());
            } else {
                unreachable!("case analysis is exhaustive");
            }
        }
    }
    m
}

/// The built-in type-A representation of dimension n(n+1)/2.
pub fn builtin_typea(n: usize) -> LKBRep {
    assert!(n >= 1, "type A needs rank at least 1");
    let rs = RootSystem::new(TypeId::A(n)).expect("valid type");
    let gens = (1..=n).map(|i| typea_generator(&rs, n, i)).collect();
    LKBRep::assemble(rs, gens, ValidationLevel::ExactProof)
}

/// Build a representation from parsed table data, running the full
/// validation gate: braid relations (exact up to dimension 36, truncated
/// at K = 12 beyond) and the q = t = 1 specialization. A failing table is
/// never returned.
pub fn rep_from_table(table: &RepTable) -> Result<LKBRep> {
    let t = table.type_id()?;
    if !t.is_simply_laced() {
        return Err(Error::TableParse(format!(
            "tables exist only for simply-laced types, got {}",
            t
        )));
    }
    let rs = RootSystem::new(t)?;
    let n = rs.num_positive();
    if table.dimension != n {
        return Err(Error::TableDimension {
            expected: n,
            found: table.dimension,
        });
    }
    let gens = table.to_matrices(rs.rank())?;
    let rep = LKBRep::assemble(rs, gens, ValidationLevel::ExactProof);
    validate_rep(rep)
}

/// Gate a set of derived generator matrices as a representation.
pub fn rep_from_derived(t: TypeId, gens: Vec<SparseMat<LaurentQT>>) -> Result<LKBRep> {
    let rs = RootSystem::new(t)?;
    validate_rep(LKBRep::assemble(rs, gens, ValidationLevel::ExactProof))
}

/// The shared validation gate used by every loading path.
fn validate_rep(mut rep: LKBRep) -> Result<LKBRep> {
    let n = rep.dimension();
    let mode = if n <= EXACT_CHECK_DIM {
        Mode::Exact
    } else {
        Mode::Truncated(EVIDENCE_ORDER)
    };
    rep.validation = match mode {
        Mode::Exact => ValidationLevel::ExactProof,
        Mode::Truncated(k) => ValidationLevel::TruncatedEvidence(k),
    };
    let spec = verify_specialization(&rep);
    if let Some((i, _)) = spec.gens.iter().find(|(_, ok)| !ok) {
        return Err(Error::TableValidation(format!(
            "generator {} does not specialize to the conjugation permutation at q = t = 1",
            i
        )));
    }
    let rels = verify_braid_relations(&rep, mode);
    if let Some(f) = rels.first_failure() {
        return Err(Error::TableValidation(format!(
            "braid relation between generators {} and {} (order {}) violated [{}]",
            f.i, f.j, f.m, rels.mode_label
        )));
    }
    Ok(rep)
}

/// Parse and validate a table from its JSON text.
pub fn load_table_str(json: &str) -> Result<LKBRep> {
    let table = RepTable::parse(json)?;
    rep_from_table(&table)
}

/// Parse and validate a table file.
pub fn load_table(path: &std::path::Path) -> Result<LKBRep> {
    let text = std::fs::read_to_string(path)?;
    load_table_str(&text)
}

/// A representation for any simply-laced type: built-in matrices for type
/// A, bundled validated tables for D4/D5/D6 and E6/E7/E8.
pub fn rep_for(t: TypeId) -> Result<Arc<LKBRep>> {
    static CACHE: OnceLock<Mutex<HashMap<TypeId, Arc<LKBRep>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rep) = cache.lock().unwrap().get(&t) {
        return Ok(rep.clone());
    }
    let rep = match t {
        TypeId::A(n) => Arc::new(builtin_typea(n)),
        _ => {
            let json = bundled_table_json(t).ok_or_else(|| Error::MissingTable {
                type_name: t.to_string(),
                hint: "supply one with --table or use a folding into type A/D".to_string(),
            })?;
            Arc::new(load_table_str(json)?)
        }
    };
    cache.lock().unwrap().insert(t, rep.clone());
    Ok(rep)
}

/// Bundled table data, generated by the `gen-tables` binary and validated
/// on every load.
pub fn bundled_table_json(t: TypeId) -> Option<&'static str> {
    match t {
        TypeId::D(4) => Some(include_str!("../../data/tables/d4.json")),
        TypeId::D(5) => Some(include_str!("../../data/tables/d5.json")),
        TypeId::D(6) => Some(include_str!("../../data/tables/d6.json")),
        TypeId::E(6) => Some(include_str!("../../data/tables/e6.json")),
        TypeId::E(7) => Some(include_str!("../../data/tables/e7.json")),
        TypeId::E(8) => Some(include_str!("../../data/tables/e8.json")),
        _ => None,
    }
}
