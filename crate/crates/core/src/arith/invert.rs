//! Exact inversion over the Laurent ring, via Gauss-Jordan elimination in
//! its fraction field followed by a check that every entry of the result
//! clears its denominator.

use super::{LaurentQT, SparseMat};
use crate::error::{Error, Result};

/// A fraction of Laurent polynomials, kept lazily reduced: exact divisions
/// are attempted at construction so denominators collapse whenever they
/// can.
#[derive(Clone, Debug)]
struct LFrac {
    num: LaurentQT,
    den: LaurentQT,
}

impl LFrac {
    fn new(num: LaurentQT, den: LaurentQT) -> Self {
        assert!(!den.is_zero(), "fraction with zero denominator");
        if num.is_zero() {
            return LFrac {
                num,
                den: LaurentQT::one(),
            };
        }
        if let Some(q) = num.div_exact(&den) {
            return LFrac {
                num: q,
                den: LaurentQT::one(),
            };
        }
        if let Some(q) = den.div_exact(&num) {
            return LFrac {
                num: LaurentQT::one(),
                den: q,
            };
        }
        LFrac { num, den }
    }

    fn from_laurent(p: LaurentQT) -> Self {
        LFrac {
            num: p,
            den: LaurentQT::one(),
        }
    }

    fn zero() -> Self {
        Self::from_laurent(LaurentQT::zero())
    }

    fn one() -> Self {
        Self::from_laurent(LaurentQT::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::new(&self.num + &rhs.num, self.den.clone());
        }
        Self::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn neg(&self) -> Self {
        LFrac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        // cross-reduce before multiplying to keep the operands small
        let (a, d) = match self.num.div_exact(&rhs.den) {
            Some(q) => (q, LaurentQT::one()),
            None => (self.num.clone(), rhs.den.clone()),
        };
        let (c, b) = match rhs.num.div_exact(&self.den) {
            Some(q) => (q, LaurentQT::one()),
            None => (rhs.num.clone(), self.den.clone()),
        };
        Self::new(&a * &c, &b * &d)
    }

    fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverting the zero fraction");
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Recover a genuine Laurent polynomial if the denominator divides out.
    fn into_laurent(self) -> Option<LaurentQT> {
        if self.den.is_one() {
            Some(self.num)
        } else {
            self.num.div_exact(&self.den)
        }
    }

    fn complexity(&self) -> usize {
        self.num.num_terms() + self.den.num_terms()
    }
}

impl std::fmt::Display for LFrac {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Exact inverse of a matrix over the Laurent ring.
///
/// Succeeds exactly when the matrix is invertible over the ring itself,
/// i.e. when its determinant is a unit (a single monomial). The result is
/// verified by multiplication before being returned; a verification
/// failure is a bug and panics.
pub fn invert_exact(m: &SparseMat<LaurentQT>) -> Result<SparseMat<LaurentQT>> {
    if !m.is_square() {
        return Err(Error::NotInvertible(format!(
            "matrix is {}x{}, not square",
            m.nrows(),
            m.ncols()
        )));
    }
    let n = m.nrows();
    let mut a: Vec<Vec<LFrac>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    m.get(r, c)
                        .map(|p| LFrac::from_laurent(p.clone()))
                        .unwrap_or_else(LFrac::zero)
                })
                .collect()
        })
        .collect();
    let mut inv: Vec<Vec<LFrac>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if r == c { LFrac::one() } else { LFrac::zero() })
                .collect()
        })
        .collect();

    let mut det = LFrac::one();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].complexity())
            .ok_or_else(|| {
                Error::NotInvertible(format!("singular: no pivot in column {}", col))
            })?;
        if pivot != col {
            a.swap(col, pivot);
            inv.swap(col, pivot);
            det = det.neg();
        }
        det = det.mul(&a[col][col]);
        let p = a[col][col].inverse();
        for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
            *x = x.mul(&p);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..n {
                let t = f.mul(&a[col][c]);
                a[r][c] = a[r][c].sub(&t);
            }
            for c in 0..n {
                let t = f.mul(&inv[col][c]);
                inv[r][c] = inv[r][c].sub(&t);
            }
        }
    }

    let mut out = SparseMat::zeros(n, n);
    for (r, row) in inv.into_iter().enumerate() {
        for (c, v) in row.into_iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            match v.into_laurent() {
                Some(p) => out.set(r, c, p),
                None => {
                    return Err(Error::NonUnitDeterminant(format!(
                        "det = {}, not a monomial; inverse leaves the Laurent ring",
                        det
                    )))
                }
            }
        }
    }
    let one = LaurentQT::one();
    assert!(
        out.mul(m).is_identity(&one) && m.mul(&out).is_identity(&one),
        "exact inverse failed its verification product"
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat_int, Rat};

    fn q() -> LaurentQT {
        LaurentQT::q()
    }
    fn t() -> LaurentQT {
        LaurentQT::t()
    }
    fn one() -> LaurentQT {
        LaurentQT::one()
    }

    #[test]
    fn unimodular_2x2_inverts() {
        // [[q, q-1], [0, t]] has determinant qt, a unit
        let m = SparseMat::from_entries(
            2,
            2,
            vec![
                (0, 0, q()),
                (0, 1, &q() - &one()),
                (1, 1, t()),
            ],
        );
        let inv = invert_exact(&m).expect("unit determinant");
        assert!(inv.mul(&m).is_identity(&one()));
        // inverse entries stay Laurent: top right is -(q-1)/(qt) = (q^{-1}-1) t^{-1} ... check by product instead
        assert_eq!(inv.get(1, 0), None);
    }

    #[test]
    fn triangular_with_dense_tail() {
        // a 4x4 mix of units and polynomial off-diagonal junk
        let m = SparseMat::from_entries(
            4,
            4,
            vec![
                (0, 0, LaurentQT::monomial(rat_int(-1), 3, 1)),
                (0, 2, &(&q() * &t()) + &one()),
                (1, 1, LaurentQT::q_pow(-2)),
                (1, 3, &t() - &q()),
                (2, 2, LaurentQT::t_pow(-1)),
                (3, 3, q()),
                (3, 0, &q() + &t()),
            ],
        );
        let inv = invert_exact(&m).expect("triangular-ish unit determinant");
        assert!(m.mul(&inv).is_identity(&one()));
    }

    #[test]
    fn nonunit_determinant_rejected() {
        // det = q + 1, invertible over the fraction field but not the ring
        let m = SparseMat::from_entries(
            2,
            2,
            vec![(0, 0, &q() + &one()), (1, 1, one())],
        );
        match invert_exact(&m) {
            Err(Error::NonUnitDeterminant(msg)) => {
                assert!(msg.contains("det"), "message should mention det: {}", msg)
            }
            other => panic!("expected NonUnitDeterminant, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn singular_rejected() {
        let m = SparseMat::from_entries(
            2,
            2,
            vec![
                (0, 0, q()),
                (0, 1, t()),
                (1, 0, &q() * &q()),
                (1, 1, &q() * &t()),
            ],
        );
        match invert_exact(&m) {
            Err(Error::NotInvertible(_)) => {}
            other => panic!("expected NotInvertible, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn fraction_field_cancellation_still_lands_in_ring() {
        // Elimination passes through genuine fractions here, but the
        // determinant (q+1) - q = 1 is a unit so everything cancels back
        // into the ring.
        let m = SparseMat::from_entries(
            2,
            2,
            vec![
                (0, 0, &q() + &one()),
                (0, 1, one()),
                (1, 0, q()),
                (1, 1, one()),
            ],
        );
        let inv = invert_exact(&m).expect("determinant one");
        assert!(inv.mul(&m).is_identity(&one()));
        let trace: Rat = inv
            .entries()
            .filter(|(r, c, _)| r == c)
            .map(|(_, _, v)| v.eval_at_one())
            .sum();
        // inverse at q=1 is [[1,-1],[-1,2]], trace 3
        assert_eq!(trace, rat_int(3));
    }
}
