//! Elements of the real quadratic fields Q(sqrt(2)) and Q(sqrt(5)).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::{rat_int, Rat};

/// An element `a + b*sqrt(D)` of the field `Q(sqrt(D))`.
///
/// The discriminant is a type parameter, so elements over different fields
/// cannot meet in one arithmetic expression: mixing `Quad<2>` with `Quad<5>`
/// is a compile error rather than a runtime check.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quad<const D: i64> {
    a: Rat,
    b: Rat,
}

/// Elements of `Q(sqrt(2))`, the coefficient field of the h-adic series.
pub type Quad2 = Quad<2>;
/// Elements of `Q(sqrt(5))`, used for the geometric H3/H4 root systems.
pub type Quad5 = Quad<5>;

impl<const D: i64> Quad<D> {
    pub fn new(a: Rat, b: Rat) -> Self {
        Quad { a, b }
    }

    pub fn from_rat(a: Rat) -> Self {
        Quad { a, b: Rat::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The generator `sqrt(D)` itself.
    pub fn sqrt_d() -> Self {
        Quad {
            a: Rat::zero(),
            b: rat_int(1),
        }
    }

    pub fn rational_part(&self) -> &Rat {
        &self.a
    }

    pub fn sqrt_part(&self) -> &Rat {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a == rat_int(1) && self.b.is_zero()
    }

    /// True when the element lies in Q, i.e. the sqrt coefficient vanishes.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a - b*sqrt(D)`.
    pub fn conj(&self) -> Self {
        Quad {
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    /// Field norm `a^2 - D*b^2`; zero only for the zero element since D is
    /// not a square.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - rat_int(D) * &self.b * &self.b
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inverse(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "division by zero in Q(sqrt({}))", D);
        Quad {
            a: &self.a / &n,
            b: -&self.b / &n,
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Quad {
            a: &self.a * c,
            b: &self.b * c,
        }
    }

    /// Sign of the real number `a + b*sqrt(D)` under the embedding with
    /// `sqrt(D) > 0`.
    pub fn signum(&self) -> i32 {
        let sa = rat_sign(&self.a);
        let sb = rat_sign(&self.b);
        match (sa, sb) {
            (0, 0) => 0,
            (s, 0) | (0, s) => s,
            (1, 1) => 1,
            (-1, -1) => -1,
            (1, -1) => rat_sign(&self.norm()),
            (-1, 1) => -rat_sign(&self.norm()),
            _ => unreachable!(),
        }
    }

    /// Total order matching the real embedding with `sqrt(D) > 0`.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self - other).signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

fn rat_sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl<const D: i64> Add for &Quad<D> {
    type Output = Quad<D>;
    fn add(self, rhs: Self) -> Quad<D> {
        Quad {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl<const D: i64> Sub for &Quad<D> {
    type Output = Quad<D>;
    fn sub(self, rhs: Self) -> Quad<D> {
        Quad {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl<const D: i64> Mul for &Quad<D> {
    type Output = Quad<D>;
    fn mul(self, rhs: Self) -> Quad<D> {
        Quad {
            a: &self.a * &rhs.a + rat_int(D) * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl<const D: i64> Neg for &Quad<D> {
    type Output = Quad<D>;
    fn neg(self) -> Quad<D> {
        Quad {
            a: -self.a.clone(),
            b: -self.b.clone(),
        }
    }
}

impl<const D: i64> Add for Quad<D> {
    type Output = Quad<D>;
    fn add(self, rhs: Self) -> Quad<D> {
        &self + &rhs
    }
}

impl<const D: i64> Sub for Quad<D> {
    type Output = Quad<D>;
    fn sub(self, rhs: Self) -> Quad<D> {
        &self - &rhs
    }
}

impl<const D: i64> Mul for Quad<D> {
    type Output = Quad<D>;
    fn mul(self, rhs: Self) -> Quad<D> {
        &self * &rhs
    }
}

impl<const D: i64> Neg for Quad<D> {
    type Output = Quad<D>;
    fn neg(self) -> Quad<D> {
        -&self
    }
}

impl<const D: i64> fmt::Display for Quad<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt({})", self.b, D);
        }
        if self.b.is_positive() {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, D)
        } else {
            write!(f, "{} - {}*sqrt({})", self.a, -self.b.clone(), D)
        }
    }
}
