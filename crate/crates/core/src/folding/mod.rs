//! Folding morphisms j: source Artin group -> simply-laced target, sending
//! each generator to a product of pairwise-commuting target generators.
//! Composed with the target representation they give faithful
//! representations for the non-simply-laced types.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::coxeter::{braid_order_holds_w, word_to_w, ArtinWord, RootSystem, TypeId, WElem};
use crate::error::{Error, Result};
use crate::lkb::{rep_for, Mode, RelationCheck, EXACT_CHECK_DIM, EVIDENCE_ORDER};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Paper,
    Derived,
    PaperAsPrinted,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Provenance::Paper => "paper",
            Provenance::Derived => "derived",
            Provenance::PaperAsPrinted => "paper-as-printed",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Provenance {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Provenance::Paper),
            "derived" => Ok(Provenance::Derived),
            "paper-as-printed" => Ok(Provenance::PaperAsPrinted),
            other => Err(Error::TableParse(format!("unknown provenance {:?}", other))),
        }
    }
}

/// One folding: generator images as positive words over the target.
#[derive(Clone, Debug)]
pub struct FoldingDef {
    source: TypeId,
    target: TypeId,
    images: Vec<ArtinWord>,
    provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
struct FoldingFile {
    source: String,
    target: String,
    images: Vec<Vec<usize>>,
    provenance: String,
}

impl FoldingDef {
    pub fn new(
        source: TypeId,
        target: TypeId,
        images: &[&[usize]],
        provenance: Provenance,
    ) -> Result<Self> {
        source.validate()?;
        target.validate()?;
        if images.len() != source.rank() {
            return Err(Error::TableParse(format!(
                "{} needs {} generator images, got {}",
                source,
                source.rank(),
                images.len()
            )));
        }
        let images = images
            .iter()
            .map(|idxs| {
                ArtinWord::new(target, idxs.iter().map(|&i| (i, 1)).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FoldingDef { source, target, images, provenance })
    }

    pub fn source(&self) -> TypeId {
        self.source
    }

    pub fn target(&self) -> TypeId {
        self.target
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Image of the i-th source generator, 1-based.
    pub fn image(&self, i: usize) -> &ArtinWord {
        &self.images[i - 1]
    }

    pub fn parse(json: &str) -> Result<Self> {
        let file: FoldingFile = serde_json::from_str(json)?;
        let source: TypeId = file.source.parse()?;
        let target: TypeId = file.target.parse()?;
        let images: Vec<&[usize]> = file.images.iter().map(|v| v.as_slice()).collect();
        FoldingDef::new(source, target, &images, file.provenance.parse()?)
    }

    pub fn to_json(&self) -> String {
        let file = FoldingFile {
            source: self.source.to_string(),
            target: self.target.to_string(),
            images: self
                .images
                .iter()
                .map(|w| w.letters().iter().map(|&(i, _)| i).collect())
                .collect(),
            provenance: self.provenance.to_string(),
        };
        let mut s = serde_json::to_string(&file).expect("folding serializes");
        s.push('\n');
        s
    }

    /// Check the morphism at the Coxeter-group level and wrap it as
    /// transport-ready. Anything failing stays unusable for transport.
    pub fn verify_w(self) -> Result<VerifiedFolding> {
        let report = verify_folding(&self, false)?;
        if report.passed() {
            Ok(VerifiedFolding { def: self })
        } else {
            Err(Error::UnverifiedFolding {
                from_type: self.source.to_string(),
                to_type: self.target.to_string(),
            })
        }
    }
}

/// A folding that has passed its W-level verification.
pub struct VerifiedFolding {
    def: FoldingDef,
}

impl VerifiedFolding {
    pub fn def(&self) -> &FoldingDef {
        &self.def
    }
}

/// The built-in registry. H4 appears twice: the derived image set and the
/// misprinted one kept as a negative fixture.
pub fn builtin_foldings() -> Vec<FoldingDef> {
    let fixed: Vec<FoldingDef> = vec![
        FoldingDef::new(
            TypeId::H3,
            TypeId::D(6),
            &[&[3, 5], &[2, 4], &[1, 6]],
            Provenance::Paper,
        )
        .unwrap(),
        FoldingDef::new(
            TypeId::H4,
            TypeId::E(8),
            &[&[2, 5], &[4, 6], &[3, 7], &[1, 8]],
            Provenance::Derived,
        )
        .unwrap(),
        FoldingDef::new(
            TypeId::H4,
            TypeId::E(8),
            &[&[3, 5], &[4, 6], &[3, 7], &[1, 8]],
            Provenance::PaperAsPrinted,
        )
        .unwrap(),
        FoldingDef::new(
            TypeId::F4,
            TypeId::E(6),
            &[&[2], &[4], &[3, 5], &[1, 6]],
            Provenance::Derived,
        )
        .unwrap(),
        FoldingDef::new(
            TypeId::I2(6),
            TypeId::D(4),
            &[&[2], &[1, 3, 4]],
            Provenance::Derived,
        )
        .unwrap(),
    ];
    let mut out = fixed;
    for n in 2..=8 {
        out.push(folding_b(n));
    }
    for m in 5..=12 {
        out.push(folding_i2(m));
    }
    out
}

/// B_n into A_{2n-1} by the diagram flip i <-> 2n-i.
pub fn folding_b(n: usize) -> FoldingDef {
    assert!(n >= 2);
    let images: Vec<Vec<usize>> = (1..=n)
        .map(|i| if i < n { vec![i, 2 * n - i] } else { vec![n] })
        .collect();
    let refs: Vec<&[usize]> = images.iter().map(|v| v.as_slice()).collect();
    FoldingDef::new(TypeId::B(n), TypeId::A(2 * n - 1), &refs, Provenance::Derived)
        .expect("B_n folding is well-formed")
}

/// I2(m) into A_{m-1}: odd-index and even-index generator products.
pub fn folding_i2(m: usize) -> FoldingDef {
    assert!(m >= 5);
    let odds: Vec<usize> = (1..m).step_by(2).collect();
    let evens: Vec<usize> = (2..m).step_by(2).collect();
    FoldingDef::new(
        TypeId::I2(m),
        TypeId::A(m - 1),
        &[&odds, &evens],
        Provenance::Derived,
    )
    .expect("I2(m) folding is well-formed")
}

/// Smallest k >= 2 at which the I2(m) image pair satisfies the order-k
/// alternating relation in W(A_{m-1}); equal to m exactly when the
/// folding presents a genuine dihedral of order 2m.
pub fn braid_minimality_probe(m: usize) -> usize {
    let def = folding_i2(m);
    let rs = RootSystem::new(def.target).expect("target root system");
    let a = word_to_w(&rs, &def.images[0]);
    let b = word_to_w(&rs, &def.images[1]);
    (2..).find(|&k| braid_order_holds_w(&a, &b, k)).unwrap()
}

/// Foldings usable as representation routes for a source type; the
/// negative fixture is never offered.
pub fn foldings_from(t: TypeId) -> Vec<FoldingDef> {
    builtin_foldings()
        .into_iter()
        .filter(|f| f.source == t && f.provenance != Provenance::PaperAsPrinted)
        .collect()
}

#[derive(Clone, Debug)]
pub struct FoldingReport {
    pub source: TypeId,
    pub target: TypeId,
    pub provenance: Provenance,
    pub commutation_ok: bool,
    pub relations_w: Vec<RelationCheck>,
    pub relations_rep: Option<Vec<RelationCheck>>,
    pub level: String,
}

impl FoldingReport {
    pub fn passed(&self) -> bool {
        self.commutation_ok
            && self.relations_w.iter().all(|c| c.ok)
            && self
                .relations_rep
                .as_ref()
                .map_or(true, |v| v.iter().all(|c| c.ok))
    }

    pub fn first_failure(&self) -> Option<&RelationCheck> {
        self.relations_w
            .iter()
            .chain(self.relations_rep.iter().flatten())
            .find(|c| !c.ok)
    }
}

/// Check a folding: image letters must pairwise commute, and source braid
/// relations must hold for the image words in W(target); with `rep_level`
/// they are also checked through the target representation, falling back
/// to W-level only when no table exists for the target.
pub fn verify_folding(def: &FoldingDef, rep_level: bool) -> Result<FoldingReport> {
    let target_rs = RootSystem::new(def.target)?;
    let rank = def.source.rank();

    let mut commutation_ok = true;
    for img in &def.images {
        let ls = img.letters();
        for a in 0..ls.len() {
            for b in (a + 1)..ls.len() {
                let (i, j) = (ls[a].0, ls[b].0);
                if i != j && def.target.coxeter_m(i, j) != 2 {
                    commutation_ok = false;
                }
            }
        }
    }

    let ws: Vec<WElem> = def
        .images
        .iter()
        .map(|img| word_to_w(&target_rs, img))
        .collect();
    let mut relations_w = Vec::new();
    for i in 1..=rank {
        for j in (i + 1)..=rank {
            let m = def.source.coxeter_m(i, j);
            let ok = braid_order_holds_w(&ws[i - 1], &ws[j - 1], m);
            relations_w.push(RelationCheck { i, j, m, ok });
        }
    }

    let mut relations_rep = None;
    let mut level = "W".to_string();
    if rep_level {
        match rep_for(def.target) {
            Ok(rep) => {
                let mode = if rep.dimension() <= EXACT_CHECK_DIM {
                    level = "W+rep(exact)".to_string();
                    Mode::Exact
                } else {
                    level = format!("W+rep(truncated K={})", EVIDENCE_ORDER);
                    Mode::Truncated(EVIDENCE_ORDER)
                };
                let mut checks = Vec::new();
                match mode {
                    Mode::Exact => {
                        let ms: Vec<_> = def
                            .images
                            .iter()
                            .map(|img| rep.eval_word_exact(img))
                            .collect::<Result<Vec<_>>>()?;
                        for i in 1..=rank {
                            for j in (i + 1)..=rank {
                                let m = def.source.coxeter_m(i, j);
                                let ok = alternating_eq(&ms[i - 1], &ms[j - 1], m);
                                checks.push(RelationCheck { i, j, m, ok });
                            }
                        }
                    }
                    Mode::Truncated(k) => {
                        let ms: Vec<_> = def
                            .images
                            .iter()
                            .map(|img| rep.eval_word_truncated(img, k))
                            .collect::<Result<Vec<_>>>()?;
                        for i in 1..=rank {
                            for j in (i + 1)..=rank {
                                let m = def.source.coxeter_m(i, j);
                                let ok = alternating_eq(&ms[i - 1], &ms[j - 1], m);
                                checks.push(RelationCheck { i, j, m, ok });
                            }
                        }
                    }
                }
                relations_rep = Some(checks);
            }
            Err(Error::MissingTable { .. }) => {
                level = "W-level only (no target table)".to_string();
            }
            Err(e) => return Err(e),
        }
    }

    Ok(FoldingReport {
        source: def.source,
        target: def.target,
        provenance: def.provenance,
        commutation_ok,
        relations_w,
        relations_rep,
        level,
    })
}

fn alternating_eq<T: crate::arith::Scalar>(
    a: &crate::arith::SparseMat<T>,
    b: &crate::arith::SparseMat<T>,
    m: usize,
) -> bool {
    let mut lhs = a.clone();
    let mut rhs = b.clone();
    for k in 1..m {
        if k % 2 == 1 {
            lhs = lhs.mul(b);
            rhs = rhs.mul(a);
        } else {
            lhs = lhs.mul(a);
            rhs = rhs.mul(b);
        }
    }
    lhs == rhs
}

/// Transport a pure source word through a verified folding by letterwise
/// substitution; inverse letters map to the reversed inverse of the image.
pub fn transport_pure(vf: &VerifiedFolding, w: &ArtinWord) -> Result<ArtinWord> {
    let def = &vf.def;
    if w.type_id() != def.source {
        return Err(Error::TypeMismatch {
            expected: def.source.to_string(),
            found: w.type_id().to_string(),
        });
    }
    let source_rs = RootSystem::new(def.source)?;
    if !crate::coxeter::is_pure(&source_rs, w) {
        return Err(Error::NotPure {
            obstruction: "transport is defined on pure words only".to_string(),
        });
    }
    let mut out = ArtinWord::empty(def.target);
    for &(i, e) in w.letters() {
        let img = def.image(i);
        let step = if e > 0 { img.clone() } else { img.inverse() };
        out = out.concat(&step);
    }
    Ok(out)
}

/// Sizes (|W(source)|, |image of W(source) in W(target)|) for the induced
/// Coxeter-level map; equality means the induced map is injective.
pub fn induced_map_sizes(def: &FoldingDef) -> Result<(usize, usize)> {
    const CAP: u128 = 2_000_000;
    let order = def.source.group_order();
    if order > CAP {
        return Err(Error::EnumerationCap { order, cap: CAP });
    }
    let source_rs = RootSystem::new(def.source)?;
    let target_rs = RootSystem::new(def.target)?;
    let gens_src: Vec<WElem> = (1..=def.source.rank())
        .map(|i| source_rs.simple_reflection(i))
        .collect();
    let gens_tgt: Vec<WElem> = def
        .images
        .iter()
        .map(|img| word_to_w(&target_rs, img))
        .collect();
    let mut seen: HashMap<WElem, WElem> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(source_rs.identity(), target_rs.identity());
    queue.push_back((source_rs.identity(), target_rs.identity()));
    while let Some((x, y)) = queue.pop_front() {
        for (s, t) in gens_src.iter().zip(&gens_tgt) {
            let nx = x.compose(s);
            if !seen.contains_key(&nx) {
                let ny = y.compose(t);
                seen.insert(nx.clone(), ny.clone());
                queue.push_back((nx, ny));
            }
        }
    }
    assert_eq!(seen.len() as u128, order, "enumeration must exhaust the group");
    let image: HashSet<&WElem> = seen.values().collect();
    Ok((seen.len(), image.len()))
}

/// Exhaustive search for H4 -> E8 foldings: every partition of the eight
/// nodes into four unordered pairs, every assignment of the pairs to the
/// four source generators, kept when all source relations hold in W(E8).
pub fn search_h4_foldings() -> Vec<Vec<Vec<usize>>> {
    fn pairings(nodes: &[usize]) -> Vec<Vec<(usize, usize)>> {
        if nodes.is_empty() {
            return vec![Vec::new()];
        }
        let first = nodes[0];
        let mut out = Vec::new();
        for k in 1..nodes.len() {
            let partner = nodes[k];
            let rest: Vec<usize> = nodes[1..]
                .iter()
                .copied()
                .filter(|&x| x != partner)
                .collect();
            for mut tail in pairings(&rest) {
                tail.insert(0, (first, partner));
                out.push(tail);
            }
        }
        out
    }
    let target_rs = RootSystem::new(TypeId::E(8)).unwrap();
    let all_pairs = pairings(&[1, 2, 3, 4, 5, 6, 7, 8]);
    let mut survivors = Vec::new();
    let mut perm = [0usize, 1, 2, 3];
    let perms = permutations4();
    for pairing in &all_pairs {
        for p in &perms {
            perm.copy_from_slice(p);
            let images: Vec<Vec<usize>> = perm
                .iter()
                .map(|&k| {
                    let (a, b) = pairing[k];
                    vec![a, b]
                })
                .collect();
            let refs: Vec<&[usize]> = images.iter().map(|v| v.as_slice()).collect();
            let Ok(def) = FoldingDef::new(TypeId::H4, TypeId::E(8), &refs, Provenance::Derived)
            else {
                continue;
            };
            let ws: Vec<WElem> = def
                .images
                .iter()
                .map(|img| word_to_w(&target_rs, img))
                .collect();
            let mut ok = true;
            'rel: for i in 1..=4 {
                for j in (i + 1)..=4 {
                    let m = TypeId::H4.coxeter_m(i, j);
                    if !braid_order_holds_w(&ws[i - 1], &ws[j - 1], m) {
                        ok = false;
                        break 'rel;
                    }
                }
            }
            if ok {
                survivors.push(images);
            }
        }
    }
    survivors
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    let items = [0usize, 1, 2, 3];
    for a in 0..4 {
        for b in 0..4 {
            if b == a {
                continue;
            }
            for c in 0..4 {
                if c == a || c == b {
                    continue;
                }
                let d = 6 - a - b - c;
                out.push([items[a], items[b], items[c], items[d]]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_well_formed() {
        let all = builtin_foldings();
        assert!(all.len() >= 15);
        for f in &all {
            assert!(!f.source().is_simply_laced());
            assert!(f.target().is_simply_laced());
            for i in 1..=f.source().rank() {
                assert!(!f.image(i).is_empty());
            }
        }
        // the negative fixture is registered but never offered as a route
        assert!(all
            .iter()
            .any(|f| f.provenance == Provenance::PaperAsPrinted));
        assert!(foldings_from(TypeId::H4)
            .iter()
            .all(|f| f.provenance != Provenance::PaperAsPrinted));
    }

    #[test]
    fn h3_folding_passes_w_level() {
        let def = foldings_from(TypeId::H3).remove(0);
        let report = verify_folding(&def, false).unwrap();
        assert!(report.passed(), "{:?}", report.relations_w);
    }

    #[test]
    fn h4_misprint_fails_exactly_the_one_four_commutation() {
        let def = builtin_foldings()
            .into_iter()
            .find(|f| f.provenance == Provenance::PaperAsPrinted)
            .unwrap();
        let report = verify_folding(&def, false).unwrap();
        assert!(report.commutation_ok);
        assert!(!report.passed());
        let failures: Vec<_> = report.relations_w.iter().filter(|c| !c.ok).collect();
        assert_eq!(failures.len(), 1);
        assert_eq!((failures[0].i, failures[0].j, failures[0].m), (1, 4, 2));
    }

    #[test]
    fn corrected_h4_passes_w_level() {
        let def = foldings_from(TypeId::H4).remove(0);
        let report = verify_folding(&def, false).unwrap();
        assert!(report.passed(), "{:?}", report.relations_w);
    }

    #[test]
    fn b2_and_g2_and_f4_pass_w_level() {
        for t in [TypeId::B(2), TypeId::B(3), TypeId::F4, TypeId::I2(6), TypeId::I2(7)] {
            for def in foldings_from(t) {
                let report = verify_folding(&def, false).unwrap();
                assert!(report.passed(), "{} -> {}", def.source(), def.target());
            }
        }
    }

    #[test]
    fn g2_routes_are_ordered_triality_first() {
        let routes = foldings_from(TypeId::I2(6));
        assert_eq!(routes.len(), 2);
        assert_eq!(routes[0].target(), TypeId::D(4));
        assert_eq!(routes[1].target(), TypeId::A(5));
    }

    #[test]
    fn induced_map_injective_for_b2_h3() {
        let b2 = foldings_from(TypeId::B(2)).remove(0);
        assert_eq!(induced_map_sizes(&b2).unwrap(), (8, 8));
        let h3 = foldings_from(TypeId::H3).remove(0);
        assert_eq!(induced_map_sizes(&h3).unwrap(), (120, 120));
    }

    #[test]
    fn h4_search_finds_exactly_the_registered_images() {
        let found = search_h4_foldings();
        assert_eq!(found.len(), 1);
        assert_eq!(
            found[0],
            vec![vec![2, 5], vec![4, 6], vec![3, 7], vec![1, 8]]
        );
    }

    #[test]
    fn transport_requires_verification_and_purity() {
        let def = foldings_from(TypeId::H3).remove(0);
        let vf = def.verify_w().unwrap();
        let w = ArtinWord::new(TypeId::H3, vec![(1, 1), (1, 1)]).unwrap();
        let img = transport_pure(&vf, &w).unwrap();
        assert_eq!(img.type_id(), TypeId::D(6));
        // sigma_1^2 -> (sigma'_3 sigma'_5)^2
        assert_eq!(
            img.letters(),
            &[(3, 1), (5, 1), (3, 1), (5, 1)]
        );
        let not_pure = ArtinWord::new(TypeId::H3, vec![(1, 1)]).unwrap();
        assert!(matches!(
            transport_pure(&vf, &not_pure),
            Err(Error::NotPure { .. })
        ));
        // the misprint cannot be verified, so it cannot transport
        let bad = builtin_foldings()
            .into_iter()
            .find(|f| f.provenance == Provenance::PaperAsPrinted)
            .unwrap();
        assert!(matches!(
            bad.verify_w(),
            Err(Error::UnverifiedFolding { .. })
        ));
    }

    #[test]
    fn transport_inverse_letters_reverse() {
        let def = foldings_from(TypeId::B(2)).remove(0);
        let vf = def.verify_w().unwrap();
        // u sigma_1^2 u^-1 with u = sigma_2
        let w = ArtinWord::new(
            TypeId::B(2),
            vec![(2, 1), (1, 1), (1, 1), (2, -1)],
        )
        .unwrap();
        let img = transport_pure(&vf, &w).unwrap();
        assert_eq!(
            img.letters(),
            &[(2, 1), (1, 1), (3, 1), (1, 1), (3, 1), (2, -1)]
        );
    }

    #[test]
    fn folding_json_round_trip() {
        let def = foldings_from(TypeId::H3).remove(0);
        let text = def.to_json();
        assert!(text.contains("\"images\":[[3,5],[2,4],[1,6]]"), "{}", text);
        let back = FoldingDef::parse(&text).unwrap();
        assert_eq!(back.source(), TypeId::H3);
        assert_eq!(back.target(), TypeId::D(6));
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn malformed_folding_rejected() {
        assert!(FoldingDef::parse("{\"source\": \"H3\"}").is_err());
        // wrong image count
        assert!(FoldingDef::new(
            TypeId::H3,
            TypeId::D(6),
            &[&[3, 5], &[2, 4]],
            Provenance::Paper
        )
        .is_err());
        // out-of-range target generator
        assert!(FoldingDef::new(
            TypeId::H3,
            TypeId::D(6),
            &[&[3, 5], &[2, 4], &[1, 7]],
            Provenance::Paper
        )
        .is_err());
    }
}
