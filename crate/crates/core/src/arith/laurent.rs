//! Laurent polynomials in the two commuting variables q and t with
//! rational coefficients: the exact coefficient ring of the
//! Lawrence-Krammer matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::{rat_int, Rat};

/// Exponent pair `(e_q, e_t)` of a monomial `q^{e_q} t^{e_t}`.
pub type Exps = (i64, i64);

/// An element of `Q[q^{±1}, t^{±1}]`, stored sparsely by exponent pair.
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentQT {
    terms: BTreeMap<Exps, Rat>,
}

impl LaurentQT {
    pub fn zero() -> Self {
        LaurentQT {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(rat_int(1), 0, 0)
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat_int(n))
    }

    /// `c * q^{e_q} t^{e_t}`.
    pub fn monomial(c: Rat, e_q: i64, e_t: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((e_q, e_t), c);
        }
        LaurentQT { terms }
    }

    pub fn q() -> Self {
        Self::monomial(rat_int(1), 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(rat_int(1), 0, 1)
    }

    pub fn q_pow(e: i64) -> Self {
        Self::monomial(rat_int(1), e, 0)
    }

    pub fn t_pow(e: i64) -> Self {
        Self::monomial(rat_int(1), 0, e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&(0, 0))
                .map_or(false, |c| *c == rat_int(1))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e_q: i64, e_t: i64) -> Rat {
        self.terms
            .get(&(e_q, e_t))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// If the polynomial is a single monomial, its coefficient and exponents.
    pub fn as_monomial(&self) -> Option<(&Rat, i64, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let ((eq, et), c) = self.terms.iter().next().unwrap();
        Some((c, *eq, *et))
    }

    /// A unit of the Laurent ring is a single monomial.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    fn insert_add(terms: &mut BTreeMap<Exps, Rat>, e: Exps, c: Rat) {
        if c.is_zero() {
            return;
        }
        match terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentQT {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (*e, v * c))
                .collect(),
        }
    }

    /// Multiply by a single monomial; cheaper than a general product.
    pub fn mul_monomial(&self, c: &Rat, e_q: i64, e_t: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentQT {
            terms: self
                .terms
                .iter()
                .map(|((a, b), v)| ((a + e_q, b + e_t), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate at `q = 1, t = 1`.
    pub fn eval_at_one(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |s, c| s + c)
    }

    /// The componentwise minimum of all exponent pairs, i.e. the exponents
    /// of the largest monomial dividing `self`. `None` for the zero
    /// polynomial.
    pub fn content_exponents(&self) -> Option<Exps> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold(first, |(aq, at), (bq, bt)| (aq.min(*bq), at.min(*bt))))
    }

    /// Exact division, when the divisor divides without remainder.
    ///
    /// Performs ordinary multivariate polynomial division after clearing
    /// monomial content, using the lexicographic leading term of the
    /// divisor. Returns `None` when the remainder is nonzero.
    pub fn div_exact(&self, rhs: &LaurentQT) -> Option<LaurentQT> {
        assert!(!rhs.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Clear content so both operands become genuine polynomials with
        // nonnegative exponents; the quotient picks up the monomial ratio.
        let (sq, st) = self.content_exponents().unwrap();
        let (rq, rt) = rhs.content_exponents().unwrap();
        let mut rem: BTreeMap<Exps, Rat> = self
            .terms
            .iter()
            .map(|((a, b), c)| ((a - sq, b - st), c.clone()))
            .collect();
        let div: BTreeMap<Exps, Rat> = rhs
            .terms
            .iter()
            .map(|((a, b), c)| ((a - rq, b - rt), c.clone()))
            .collect();
        let (lead_e, lead_c) = div.iter().next_back().unwrap();
        let lead_e = *lead_e;
        let mut quo: BTreeMap<Exps, Rat> = BTreeMap::new();
        while let Some((re, rc)) = rem.iter().next_back().map(|(e, c)| (*e, c.clone())) {
            let fq = re.0 - lead_e.0;
            let ft = re.1 - lead_e.1;
            if fq < 0 || ft < 0 {
                return None;
            }
            let fc = &rc / lead_c;
            Self::insert_add(&mut quo, (fq, ft), fc.clone());
            for (de, dc) in &div {
                Self::insert_add(
                    &mut rem,
                    (de.0 + fq, de.1 + ft),
                    -(dc * &fc),
                );
            }
        }
        // Restore the monomial ratio of the cleared contents.
        let quo = LaurentQT { terms: quo };
        Some(quo.mul_monomial(&rat_int(1), sq - rq, st - rt))
    }
}

impl Add for &LaurentQT {
    type Output = LaurentQT;
    fn add(self, rhs: Self) -> LaurentQT {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            LaurentQT::insert_add(&mut terms, *e, c.clone());
        }
        LaurentQT { terms }
    }
}

impl Sub for &LaurentQT {
    type Output = LaurentQT;
    fn sub(self, rhs: Self) -> LaurentQT {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            LaurentQT::insert_add(&mut terms, *e, -c.clone());
        }
        LaurentQT { terms }
    }
}

impl Mul for &LaurentQT {
    type Output = LaurentQT;
    fn mul(self, rhs: Self) -> LaurentQT {
        let mut terms = BTreeMap::new();
        for ((aq, at), ac) in &self.terms {
            for ((bq, bt), bc) in &rhs.terms {
                LaurentQT::insert_add(&mut terms, (aq + bq, at + bt), ac * bc);
            }
        }
        LaurentQT { terms }
    }
}

impl Neg for &LaurentQT {
    type Output = LaurentQT;
    fn neg(self) -> LaurentQT {
        LaurentQT {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Add for LaurentQT {
    type Output = LaurentQT;
    fn add(self, rhs: Self) -> LaurentQT {
        &self + &rhs
    }
}

impl Sub for LaurentQT {
    type Output = LaurentQT;
    fn sub(self, rhs: Self) -> LaurentQT {
        &self - &rhs
    }
}

impl Mul for LaurentQT {
    type Output = LaurentQT;
    fn mul(self, rhs: Self) -> LaurentQT {
        &self * &rhs
    }
}

impl Neg for LaurentQT {
    type Output = LaurentQT;
    fn neg(self) -> LaurentQT {
        -&self
    }
}

impl fmt::Display for LaurentQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((eq, et), c) in &self.terms {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}", c)?;
            if *eq != 0 {
                write!(f, "*q^{}", eq)?;
            }
            if *et != 0 {
                write!(f, "*t^{}", et)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn difference_of_squares() {
        // (q + t)(q - t) = q^2 - t^2
        let s = &LaurentQT::q() + &LaurentQT::t();
        let d = &LaurentQT::q() - &LaurentQT::t();
        let p = &s * &d;
        let expected =
            &LaurentQT::monomial(rat_int(1), 2, 0) - &LaurentQT::monomial(rat_int(1), 0, 2);
        assert_eq!(p, expected);
        assert_eq!(p.coeff(2, 0), rat_int(1));
        assert_eq!(p.coeff(0, 2), rat_int(-1));
        assert_eq!(p.coeff(1, 1), rat_int(0));
    }

    #[test]
    fn laurent_units_cancel() {
        let x = LaurentQT::monomial(rat(3, 4), -2, 5);
        let y = LaurentQT::monomial(rat(4, 3), 2, -5);
        assert!((&x * &y).is_one());
        assert!(x.is_unit());
    }

    #[test]
    fn zero_terms_are_purged() {
        let x = &LaurentQT::q() - &LaurentQT::q();
        assert!(x.is_zero());
        assert_eq!(x.num_terms(), 0);
    }

    #[test]
    fn eval_at_one_is_ring_hom() {
        let a = &LaurentQT::monomial(rat_int(2), 3, -1) + &LaurentQT::monomial(rat(1, 2), 0, 4);
        let b = &LaurentQT::q_pow(-2) - &LaurentQT::t();
        assert_eq!((&a * &b).eval_at_one(), a.eval_at_one() * b.eval_at_one());
        assert_eq!((&a + &b).eval_at_one(), a.eval_at_one() + b.eval_at_one());
    }

    #[test]
    fn exact_division_round_trip() {
        let a = &(&LaurentQT::q() - &LaurentQT::t_pow(-1)) * &(&LaurentQT::q_pow(-3) + &LaurentQT::t());
        let b = &LaurentQT::q() - &LaurentQT::t_pow(-1);
        let q = a.div_exact(&b).expect("divides exactly");
        assert_eq!(q, &LaurentQT::q_pow(-3) + &LaurentQT::t());
        assert_eq!(&q * &b, a);
    }

    #[test]
    fn inexact_division_detected() {
        let a = &LaurentQT::q() + &LaurentQT::one();
        let b = &LaurentQT::t() + &LaurentQT::one();
        assert!(a.div_exact(&b).is_none());
    }

    #[test]
    fn division_by_unit_monomial() {
        let a = &LaurentQT::monomial(rat_int(5), 2, 2) + &LaurentQT::monomial(rat_int(-1), -1, 0);
        let u = LaurentQT::monomial(rat(1, 3), -1, 1);
        let q = a.div_exact(&u).unwrap();
        assert_eq!(&q * &u, a);
    }
}
