//! Elements of W as signed-root permutations, Artin words, the projection
//! B -> W, and the conjugation action of W on its reflections.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::arith::{rat_int, Rat, Scalar, SparseMat};
use crate::error::{Error, Result};

use super::roots::RootSystem;
use super::types::TypeId;

/// An element of the Coxeter group W, stored as its permutation of the 2N
/// signed roots (positive root p at index p, its negative at p + N).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WElem {
    perm: Vec<u32>,
}

impl WElem {
    pub(crate) fn from_perm(perm: Vec<u32>) -> Self {
        debug_assert!(perm.len() % 2 == 0);
        WElem { perm }
    }

    pub fn identity(n_positive: usize) -> Self {
        WElem {
            perm: (0..2 * n_positive as u32).collect(),
        }
    }

    pub fn num_positive(&self) -> usize {
        self.perm.len() / 2
    }

    /// Image of a signed root index.
    pub fn image(&self, p: usize) -> usize {
        self.perm[p] as usize
    }

    /// Image of a positive root with the sign forgotten: always a positive
    /// index.
    pub fn image_unsigned(&self, p: usize) -> usize {
        let n = self.num_positive();
        let q = self.perm[p] as usize;
        if q < n {
            q
        } else {
            q - n
        }
    }

    /// Group product: `(self * rhs)(x) = self(rhs(x))`.
    pub fn compose(&self, rhs: &WElem) -> WElem {
        assert_eq!(
            self.perm.len(),
            rhs.perm.len(),
            "composing elements of different root systems"
        );
        WElem {
            perm: rhs.perm.iter().map(|&x| self.perm[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> WElem {
        let mut perm = vec![0u32; self.perm.len()];
        for (x, &y) in self.perm.iter().enumerate() {
            perm[y as usize] = x as u32;
        }
        WElem { perm }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }

    /// Multiplicative order, by iterated composition.
    pub fn order(&self) -> usize {
        let mut acc = self.clone();
        let mut k = 1;
        while !acc.is_identity() {
            acc = acc.compose(self);
            k += 1;
            assert!(k <= 1_000_000, "order runaway; element not of finite order?");
        }
        k
    }
}

/// A word in the Artin generators: letters are (generator index 1..rank,
/// exponent +1 or -1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArtinWord {
    type_id: TypeId,
    letters: Vec<(usize, i8)>,
}

impl ArtinWord {
    pub fn new(type_id: TypeId, letters: Vec<(usize, i8)>) -> Result<Self> {
        let type_id = type_id.validate()?;
        let rank = type_id.rank();
        for &(i, e) in &letters {
            if i < 1 || i > rank {
                return Err(Error::GeneratorOutOfRange {
                    index: i as i64,
                    rank,
                });
            }
            assert!(e == 1 || e == -1, "letter exponents are +1 or -1");
        }
        Ok(ArtinWord { type_id, letters })
    }

    pub fn empty(type_id: TypeId) -> Self {
        ArtinWord {
            type_id,
            letters: Vec::new(),
        }
    }

    /// The generator sigma_i as a one-letter word.
    pub fn gen(type_id: TypeId, i: usize) -> Result<Self> {
        Self::new(type_id, vec![(i, 1)])
    }

    pub fn type_id(&self) -> TypeId {
        self.type_id
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, rhs: &ArtinWord) -> ArtinWord {
        assert_eq!(
            self.type_id, rhs.type_id,
            "concatenating words of different types"
        );
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&rhs.letters);
        ArtinWord {
            type_id: self.type_id,
            letters,
        }
    }

    /// The formal inverse: letters reversed with exponents flipped. No free
    /// reduction is performed anywhere; words stay verbatim.
    pub fn inverse(&self) -> ArtinWord {
        ArtinWord {
            type_id: self.type_id,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|&(i, e)| (i, -e))
                .collect(),
        }
    }

    pub fn pow(&self, e: i32) -> ArtinWord {
        let base = if e >= 0 { self.clone() } else { self.inverse() };
        let mut out = ArtinWord::empty(self.type_id);
        for _ in 0..e.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `u self u^{-1}`.
    pub fn conjugate_by(&self, u: &ArtinWord) -> ArtinWord {
        u.concat(self).concat(&u.inverse())
    }

    /// `[self, rhs] = self rhs self^{-1} rhs^{-1}`.
    pub fn commutator(&self, rhs: &ArtinWord) -> ArtinWord {
        self.concat(rhs)
            .concat(&self.inverse())
            .concat(&rhs.inverse())
    }
}

/// Numeric word notation: letters as signed 1-based indices, so
/// `sigma_1 sigma_2 sigma_1^{-1}` prints as `1 2 -1`.
impl fmt::Display for ArtinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &(i, e)) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", i as i64 * e as i64)?;
        }
        Ok(())
    }
}

/// The projection pi: B -> W, sending sigma_i^{+-1} to s_i.
pub fn word_to_w(rs: &RootSystem, w: &ArtinWord) -> WElem {
    assert_eq!(
        rs.type_id(),
        w.type_id(),
        "word and root system have different types"
    );
    let n2 = 2 * rs.num_positive();
    let mut perm: Vec<u32> = (0..n2 as u32).collect();
    // build s_{l1} ... s_{lk} left to right: (acc * s)(p) = acc(s(p))
    for &(i, _) in w.letters() {
        let s = rs.simple_action_slice(i);
        perm = (0..n2).map(|p| perm[s[p] as usize]).collect();
    }
    WElem::from_perm(perm)
}

/// Purity: the word maps to the identity of W.
pub fn is_pure(rs: &RootSystem, w: &ArtinWord) -> bool {
    word_to_w(rs, w).is_identity()
}

/// The conjugation action of W on its N reflections as an N x N
/// permutation matrix over Q: reflection along beta maps to reflection
/// along x(beta), signs identified.
pub fn conj_perm(rs: &RootSystem, x: &WElem) -> SparseMat<Rat> {
    conj_perm_with(rs, x, rat_int(1))
}

/// Same permutation matrix over any scalar ring, with the unit supplied.
pub fn conj_perm_with<T: Scalar>(rs: &RootSystem, x: &WElem, one: T) -> SparseMat<T> {
    let n = rs.num_positive();
    assert_eq!(n, x.num_positive(), "element from a different root system");
    let mut m = SparseMat::zeros(n, n);
    for p in 0..n {
        m.set(x.image_unsigned(p), p, one.clone());
    }
    m
}

/// The W-level shadow of a braid relation: the alternating products
/// `aba...` and `bab...` with m factors each agree.
pub fn braid_order_holds_w(a: &WElem, b: &WElem, m: usize) -> bool {
    assert!(m >= 2, "braid order is at least 2");
    let alternate = |x: &WElem, y: &WElem| {
        let mut acc = x.clone();
        for k in 1..m {
            acc = acc.compose(if k % 2 == 1 { y } else { x });
        }
        acc
    };
    alternate(a, b) == alternate(b, a)
}

/// Breadth-first enumeration of W. Refuses types whose known order
/// exceeds the cap, reporting that order.
pub fn enumerate_group(rs: &RootSystem, cap: u128) -> Result<Vec<WElem>> {
    let order = rs.type_id().group_order();
    if order > cap {
        return Err(Error::EnumerationCap { order, cap });
    }
    let gens: Vec<WElem> = (1..=rs.rank()).map(|i| rs.simple_reflection(i)).collect();
    let id = rs.identity();
    let mut seen: HashSet<WElem> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        out.push(x.clone());
        for g in &gens {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    assert_eq!(
        out.len() as u128,
        order,
        "enumeration disagrees with the known group order"
    );
    Ok(out)
}
