//! Identification of the irreducible finite Coxeter types and their basic
//! numerology.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// An irreducible spherical type. `G2` parses as an alias for `I2(6)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeId {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    H3,
    H4,
    I2(usize),
}

impl TypeId {
    /// Validates the rank/parameter ranges: A_n n>=1, B_n n>=2, D_n n>=4,
    /// E6/E7/E8, I2(m) m>=5.
    pub fn validate(self) -> Result<Self, Error> {
        let ok = match self {
            TypeId::A(n) => n >= 1,
            TypeId::B(n) => n >= 2,
            TypeId::D(n) => n >= 4,
            TypeId::E(n) => (6..=8).contains(&n),
            TypeId::F4 | TypeId::H3 | TypeId::H4 => true,
            TypeId::I2(m) => m >= 5,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::InvalidType(self.to_string()))
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            TypeId::A(n) | TypeId::B(n) | TypeId::D(n) | TypeId::E(n) => *n,
            TypeId::F4 | TypeId::H4 => 4,
            TypeId::H3 => 3,
            TypeId::I2(_) => 2,
        }
    }

    /// Number of reflections N, equivalently the number of positive roots.
    pub fn reflection_count(&self) -> usize {
        match self {
            TypeId::A(n) => n * (n + 1) / 2,
            TypeId::B(n) => n * n,
            TypeId::D(n) => n * (n - 1),
            TypeId::E(6) => 36,
            TypeId::E(7) => 63,
            TypeId::E(8) => 120,
            TypeId::E(_) => unreachable!("validated rank"),
            TypeId::F4 => 24,
            TypeId::H3 => 15,
            TypeId::H4 => 60,
            TypeId::I2(m) => *m,
        }
    }

    /// The Coxeter number, always 2N/rank.
    pub fn coxeter_number(&self) -> usize {
        2 * self.reflection_count() / self.rank()
    }

    /// Order of the finite Coxeter group W.
    pub fn group_order(&self) -> u128 {
        fn fact(n: usize) -> u128 {
            (1..=n as u128).product()
        }
        match self {
            TypeId::A(n) => fact(n + 1),
            TypeId::B(n) => (1u128 << n) * fact(*n),
            TypeId::D(n) => (1u128 << (n - 1)) * fact(*n),
            TypeId::E(6) => 51_840,
            TypeId::E(7) => 2_903_040,
            TypeId::E(8) => 696_729_600,
            TypeId::E(_) => unreachable!("validated rank"),
            TypeId::F4 => 1_152,
            TypeId::H3 => 120,
            TypeId::H4 => 14_400,
            TypeId::I2(m) => 2 * *m as u128,
        }
    }

    /// Entry m(i, j) of the Coxeter matrix, generators numbered 1..rank.
    pub fn coxeter_m(&self, i: usize, j: usize) -> usize {
        let rank = self.rank();
        assert!(
            (1..=rank).contains(&i) && (1..=rank).contains(&j),
            "generator index out of range for {}",
            self
        );
        if i == j {
            return 1;
        }
        let (a, b) = (i.min(j), i.max(j));
        match self {
            TypeId::A(_) => {
                if b == a + 1 {
                    3
                } else {
                    2
                }
            }
            TypeId::B(n) => {
                if b == a + 1 {
                    if b == *n {
                        4
                    } else {
                        3
                    }
                } else {
                    2
                }
            }
            TypeId::D(n) => {
                let adjacent = (b == a + 1 && b <= n - 1) || (a == n - 2 && b == *n);
                if adjacent {
                    3
                } else {
                    2
                }
            }
            TypeId::E(_) => {
                let adjacent = (a == 2 && b == 4)
                    || (a == 1 && b == 3)
                    || (a >= 3 && b == a + 1 && a != 2 && b != 2);
                if adjacent {
                    3
                } else {
                    2
                }
            }
            TypeId::F4 => match (a, b) {
                (2, 3) => 4,
                (1, 2) | (3, 4) => 3,
                _ => 2,
            },
            TypeId::H3 => match (a, b) {
                (1, 2) => 5,
                (2, 3) => 3,
                _ => 2,
            },
            TypeId::H4 => match (a, b) {
                (1, 2) => 5,
                (2, 3) | (3, 4) => 3,
                _ => 2,
            },
            TypeId::I2(m) => *m,
        }
    }

    /// True for the simply-laced families A, D, E, the ones with built-in
    /// or file-backed Krammer tables.
    pub fn is_simply_laced(&self) -> bool {
        matches!(self, TypeId::A(_) | TypeId::D(_) | TypeId::E(_))
    }
}

impl fmt::Display for TypeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeId::A(n) => write!(f, "A{}", n),
            TypeId::B(n) => write!(f, "B{}", n),
            TypeId::D(n) => write!(f, "D{}", n),
            TypeId::E(n) => write!(f, "E{}", n),
            TypeId::F4 => write!(f, "F4"),
            TypeId::H3 => write!(f, "H3"),
            TypeId::H4 => write!(f, "H4"),
            TypeId::I2(m) => write!(f, "I2({})", m),
        }
    }
}

impl FromStr for TypeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::InvalidType(s.to_string());
        if s.is_empty() {
            return Err(bad());
        }
        if s.eq_ignore_ascii_case("G2") {
            return Ok(TypeId::I2(6));
        }
        if let Some(rest) = s.strip_prefix("I2").or_else(|| s.strip_prefix("i2")) {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(bad)?;
            let m: usize = inner.trim().parse().map_err(|_| bad())?;
            return TypeId::I2(m).validate();
        }
        let (family, rest) = s.split_at(1);
        let n: usize = rest.parse().map_err(|_| bad())?;
        let t = match family {
            "A" | "a" => TypeId::A(n),
            "B" | "b" => TypeId::B(n),
            "D" | "d" => TypeId::D(n),
            "E" | "e" => TypeId::E(n),
            "F" | "f" if n == 4 => TypeId::F4,
            "H" | "h" if n == 3 => TypeId::H3,
            "H" | "h" if n == 4 => TypeId::H4,
            _ => return Err(bad()),
        };
        t.validate()
    }
}

impl Serialize for TypeId {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TypeId {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
