//! Truncated power series in h over Q(sqrt(2)), together with the
//! substitution q -> e^h, t -> e^{sqrt(2) h} that carries Laurent
//! polynomials into the h-adic world.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{rat, rat_int, LaurentQT, Quad2};

/// A power series in h truncated at a fixed order K: the coefficients of
/// h^0 .. h^K are stored, everything higher is discarded.
///
/// Series of different truncation orders never mix; arithmetic panics on a
/// mismatch instead of silently re-truncating.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HSeries {
    coeffs: Vec<Quad2>,
}

impl HSeries {
    pub fn zero(k: usize) -> Self {
        HSeries {
            coeffs: vec![Quad2::zero(); k + 1],
        }
    }

    pub fn one(k: usize) -> Self {
        Self::constant(Quad2::one(), k)
    }

    pub fn constant(c: Quad2, k: usize) -> Self {
        let mut coeffs = vec![Quad2::zero(); k + 1];
        coeffs[0] = c;
        HSeries { coeffs }
    }

    /// `c * h^d` truncated at order k.
    pub fn monomial(c: Quad2, d: usize, k: usize) -> Self {
        let mut coeffs = vec![Quad2::zero(); k + 1];
        if d <= k {
            coeffs[d] = c;
        }
        HSeries { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<Quad2>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least the h^0 term");
        HSeries { coeffs }
    }

    /// Truncation order K.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &Quad2 {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Quad2] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Quad2::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Quad2::is_zero)
    }

    /// Degree of the lowest nonvanishing coefficient, `None` when the
    /// series is zero to order K.
    pub fn min_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drop coefficients above a smaller order.
    pub fn truncate(&self, k: usize) -> Self {
        assert!(
            k <= self.order(),
            "cannot extend a series from order {} to {}",
            self.order(),
            k
        );
        HSeries {
            coeffs: self.coeffs[..=k].to_vec(),
        }
    }

    pub fn scale(&self, c: &Quad2) -> Self {
        HSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn check_order(&self, rhs: &Self, op: &str) {
        assert_eq!(
            self.order(),
            rhs.order(),
            "cannot {} series of different truncation orders",
            op
        );
    }

    /// The exponential `e^{alpha h}` truncated at order k.
    pub fn exp(alpha: &Quad2, k: usize) -> Self {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut term = Quad2::one();
        coeffs.push(term.clone());
        for n in 1..=k {
            term = (&term * alpha).scale(&rat(1, n as i64));
            coeffs.push(term.clone());
        }
        HSeries { coeffs }
    }
}

/// The ring map `iota: q -> e^h, t -> e^{sqrt(2) h}`, truncated at order k.
///
/// A monomial `c q^a t^b` lands on `c e^{(a + b sqrt(2)) h}`; since
/// `a + b sqrt(2)` vanishes only for `a = b = 0`, distinct monomials have
/// distinct images and the map is injective on Laurent polynomials.
pub fn iota_substitute(p: &LaurentQT, k: usize) -> HSeries {
    let mut acc = HSeries::zero(k);
    for ((eq, et), c) in p.terms() {
        let alpha = Quad2::new(rat_int(*eq), rat_int(*et));
        let e = HSeries::exp(&alpha, k).scale(&Quad2::from_rat(c.clone()));
        acc = &acc + &e;
    }
    acc
}

impl Add for &HSeries {
    type Output = HSeries;
    fn add(self, rhs: Self) -> HSeries {
        self.check_order(rhs, "add");
        HSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &HSeries {
    type Output = HSeries;
    fn sub(self, rhs: Self) -> HSeries {
        self.check_order(rhs, "subtract");
        HSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &HSeries {
    type Output = HSeries;
    fn mul(self, rhs: Self) -> HSeries {
        self.check_order(rhs, "multiply");
        let k = self.order();
        let mut coeffs = vec![Quad2::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(k + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        HSeries { coeffs }
    }
}

impl Neg for &HSeries {
    type Output = HSeries;
    fn neg(self) -> HSeries {
        HSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for HSeries {
    type Output = HSeries;
    fn add(self, rhs: Self) -> HSeries {
        &self + &rhs
    }
}

impl Sub for HSeries {
    type Output = HSeries;
    fn sub(self, rhs: Self) -> HSeries {
        &self - &rhs
    }
}

impl Mul for HSeries {
    type Output = HSeries;
    fn mul(self, rhs: Self) -> HSeries {
        &self * &rhs
    }
}

impl Neg for HSeries {
    type Output = HSeries;
    fn neg(self) -> HSeries {
        -&self
    }
}

impl fmt::Display for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{}", c)?;
            } else {
                write!(f, "({})*h^{}", c, i)?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(h^{})", self.order() + 1)
    }
}
