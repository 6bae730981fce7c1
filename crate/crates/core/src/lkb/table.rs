//! JSON representation tables: one file per type, integer fields only,
//! with a canonical serialized form that load-then-emit reproduces
//! bit-exactly.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{LaurentQT, Rat, SparseMat};
use crate::coxeter::TypeId;
use crate::error::{Error, Result};
use crate::lkb::LKBRep;

/// One coefficient monomial: num/den * q^e_q * t^e_t.
pub type Term = (i64, i64, i64, i64);

/// One matrix entry: row, column (0-based over the canonical reflection
/// order), and the coefficient terms.
pub type Entry = (usize, usize, Vec<Term>);

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GenTable {
    pub index: usize,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepTable {
    #[serde(rename = "type")]
    pub type_name: String,
    pub dimension: usize,
    pub basis: String,
    pub generators: Vec<GenTable>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub convention: Option<String>,
}

pub const BASIS_NAME: &str = "reflections-canonical";

impl RepTable {
    pub fn parse(json: &str) -> Result<RepTable> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn type_id(&self) -> Result<TypeId> {
        self.type_name.parse()
    }

    /// Decode into generator matrices, checking structure: matching rank,
    /// ascending generator indices, in-range rows and columns, no
    /// duplicate entries, nonzero denominators.
    pub fn to_matrices(&self, rank: usize) -> Result<Vec<SparseMat<LaurentQT>>> {
        if self.basis != BASIS_NAME {
            return Err(Error::TableParse(format!(
                "unknown basis {:?}, expected {:?}",
                self.basis, BASIS_NAME
            )));
        }
        if self.generators.len() != rank {
            return Err(Error::TableParse(format!(
                "expected {} generators, found {}",
                rank,
                self.generators.len()
            )));
        }
        let n = self.dimension;
        let mut out = Vec::with_capacity(rank);
        for (k, g) in self.generators.iter().enumerate() {
            if g.index != k + 1 {
                return Err(Error::TableParse(format!(
                    "generator indices must ascend from 1, found {} at position {}",
                    g.index,
                    k + 1
                )));
            }
            let mut m = SparseMat::zeros(n, n);
            for &(r, c, ref terms) in &g.entries {
                if r >= n || c >= n {
                    return Err(Error::TableParse(format!(
                        "entry ({}, {}) outside dimension {}",
                        r, c, n
                    )));
                }
                if m.get(r, c).is_some() {
                    return Err(Error::TableParse(format!(
                        "duplicate entry at ({}, {}) in generator {}",
                        r, c, g.index
                    )));
                }
                if terms.is_empty() {
                    return Err(Error::TableParse(format!(
                        "empty coefficient at ({}, {}) in generator {}",
                        r, c, g.index
                    )));
                }
                let mut p = LaurentQT::zero();
                for &(num, den, eq, et) in terms {
                    if den == 0 {
                        return Err(Error::TableParse(format!(
                            "zero denominator at ({}, {}) in generator {}",
                            r, c, g.index
                        )));
                    }
                    let c_rat = Rat::new(num.into(), den.into());
                    p = &p + &LaurentQT::monomial(c_rat, eq, et);
                }
                if !p.is_zero() {
                    m.set(r, c, p);
                }
            }
            out.push(m);
        }
        Ok(out)
    }

    /// The canonical serialized form: entries row-major, terms sorted by
    /// (e_q, e_t), fractions reduced with positive denominator, compact
    /// JSON, trailing newline.
    pub fn canonical_string(&self) -> String {
        let mut normal = self.clone();
        for g in &mut normal.generators {
            for e in &mut g.entries {
                for t in e.2.iter_mut() {
                    *t = reduce_term(*t);
                }
                e.2.sort_by_key(|&(_, _, eq, et)| (eq, et));
            }
            g.entries.sort_by_key(|&(r, c, _)| (r, c));
        }
        let mut s = serde_json::to_string(&normal).expect("table serializes");
        s.push('\n');
        s
    }

    #[cfg(test)]
    pub(crate) fn perturb_for_test(
        &mut self,
        gen: usize,
        entry: usize,
        f: impl FnOnce(&mut Vec<Term>),
    ) {
        f(&mut self.generators[gen].entries[entry].2);
    }

    #[cfg(test)]
    pub(crate) fn negate_entry_for_test(&mut self, gen: usize, r: usize, c: usize) {
        for e in &mut self.generators[gen].entries {
            if e.0 == r && e.1 == c {
                for t in e.2.iter_mut() {
                    t.0 = -t.0;
                }
            }
        }
    }
}

fn reduce_term((num, den, eq, et): Term) -> Term {
    let sign = if den < 0 { -1 } else { 1 };
    let g = num.abs().gcd(&den.abs()).max(1);
    (sign * num / g, sign * den / g, eq, et)
}

fn term_of(c: &Rat, eq: i64, et: i64) -> Term {
    let num = i64::try_from(c.numer()).expect("coefficient numerator fits in i64");
    let den = i64::try_from(c.denom()).expect("coefficient denominator fits in i64");
    (num, den, eq, et)
}

/// Serialize a representation's generator matrices as a table, already in
/// canonical entry order.
pub fn table_from_rep(rep: &LKBRep) -> RepTable {
    let n = rep.dimension();
    let rank = rep.type_id().rank();
    let generators = (1..=rank)
        .map(|i| {
            let m = rep.generator(i);
            let mut entries: Vec<Entry> = m
                .entries()
                .map(|(r, c, p)| {
                    let terms: Vec<Term> =
                        p.terms().map(|(&(eq, et), c)| term_of(c, eq, et)).collect();
                    (r, c, terms)
                })
                .collect();
            entries.sort_by_key(|&(r, c, _)| (r, c));
            GenTable { index: i, entries }
        })
        .collect();
    RepTable {
        type_name: rep.type_id().to_string(),
        dimension: n,
        basis: BASIS_NAME.to_string(),
        generators,
        convention: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lkb::builtin_typea;

    #[test]
    fn round_trip_is_bit_exact() {
        let rep = builtin_typea(3);
        let table = table_from_rep(&rep);
        let text = table.canonical_string();
        let reparsed = RepTable::parse(&text).unwrap();
        assert_eq!(reparsed.canonical_string(), text);
        let ms = reparsed.to_matrices(3).unwrap();
        for i in 1..=3 {
            assert_eq!(&ms[i - 1], rep.generator(i));
        }
    }

    #[test]
    fn canonical_form_orders_and_reduces() {
        let table = RepTable {
            type_name: "A1".to_string(),
            dimension: 1,
            basis: BASIS_NAME.to_string(),
            generators: vec![GenTable {
                index: 1,
                entries: vec![(0, 0, vec![(2, -4, 2, 1), (3, 3, 0, 0)])],
            }],
            convention: None,
        };
        let s = table.canonical_string();
        assert!(s.contains("[[1,1,0,0],[-1,2,2,1]]"), "{}", s);
        assert!(s.ends_with('\n'));
    }

    #[test]
    fn rejects_duplicate_entries() {
        let table = RepTable {
            type_name: "A1".to_string(),
            dimension: 1,
            basis: BASIS_NAME.to_string(),
            generators: vec![GenTable {
                index: 1,
                entries: vec![(0, 0, vec![(1, 1, 2, 1)]), (0, 0, vec![(1, 1, 0, 0)])],
            }],
            convention: None,
        };
        assert!(matches!(table.to_matrices(1), Err(Error::TableParse(_))));
    }

    #[test]
    fn rejects_out_of_range_and_bad_denominator() {
        let mut table = RepTable {
            type_name: "A1".to_string(),
            dimension: 1,
            basis: BASIS_NAME.to_string(),
            generators: vec![GenTable {
                index: 1,
                entries: vec![(0, 1, vec![(1, 1, 2, 1)])],
            }],
            convention: None,
        };
        assert!(table.to_matrices(1).is_err());
        table.generators[0].entries = vec![(0, 0, vec![(1, 0, 2, 1)])];
        assert!(table.to_matrices(1).is_err());
        table.basis = "weights".to_string();
        assert!(table.to_matrices(1).is_err());
    }

    #[test]
    fn rejects_wrong_generator_indexing() {
        let table = RepTable {
            type_name: "A2".to_string(),
            dimension: 3,
            basis: BASIS_NAME.to_string(),
            generators: vec![
                GenTable { index: 1, entries: vec![(0, 0, vec![(1, 1, 2, 1)])] },
                GenTable { index: 3, entries: vec![(0, 0, vec![(1, 1, 2, 1)])] },
            ],
            convention: None,
        };
        assert!(table.to_matrices(2).is_err());
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        assert!(RepTable::parse("{\"type\": ").is_err());
    }
}
