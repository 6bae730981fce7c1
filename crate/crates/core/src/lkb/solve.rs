//! Derivation of generator tables for the simply-laced types.
//!
//! Each generator matrix splits as M = S + t e_alpha w^T by t-degree: the
//! scaffold S (diagonal, ascent and descent entries, t-free) is forced by
//! the root geometry, while the alpha-row vector w is not. The braid
//! relations are linear in the w's at t-degree 1, so the rows can be
//! solved for: the system is assembled at sampled rational values of q,
//! solved exactly, and the Laurent coefficients recovered by
//! interpolation. The result is only ever served after the full exact
//! validation gate.

use crate::arith::{rat_int, LaurentQT, Rat, SparseMat};
use crate::coxeter::{RootSystem, TypeId};
use crate::error::{Error, Result};
use num_traits::{One, Zero};

/// The t-free part of a generator: ascent columns carry the target with
/// coefficient 1 and keep (1-q) on the diagonal, descent columns carry
/// the target with coefficient q, orthogonal columns are fixed; the
/// alpha column is empty (its t q^2 lives in the t-part).
fn scaffold(rs: &RootSystem, i: usize) -> SparseMat<LaurentQT> {
    let n = rs.num_positive();
    let pos_alpha = rs.simple_position(i);
    let alpha = rs.coords_int(pos_alpha).to_vec();
    let one = LaurentQT::one();
    let q = LaurentQT::q();
    let mut m = SparseMat::zeros(n, n);
    for col in 0..n {
        if col == pos_alpha {
            continue;
        }
        let beta = rs.coords_int(col);
        match rs.simple_pairing_int(i, col) {
            1 => {
                let lower: Vec<i64> = beta.iter().zip(&alpha).map(|(b, a)| b - a).collect();
                let target = rs
                    .pos_index_of_int(&lower)
                    .expect("descent stays in the positive system");
                m.set(target, col, q.clone());
            }
            -1 => {
                let upper: Vec<i64> = beta.iter().zip(&alpha).map(|(b, a)| b + a).collect();
                let target = rs
                    .pos_index_of_int(&upper)
                    .expect("ascent stays in the positive system");
                m.set(target, col, one.clone());
                m.set(col, col, &one - &q);
            }
            0 => {
                m.set(col, col, one.clone());
            }
            p => panic!("unexpected pairing {} in a simply-laced system", p),
        }
    }
    m
}

/// Sparse linear system over the rationals.
struct LinSys {
    n_vars: usize,
    rows: Vec<(Vec<(usize, Rat)>, Rat)>,
}

impl LinSys {
    fn new(n_vars: usize) -> Self {
        LinSys { n_vars, rows: Vec::new() }
    }

    fn push(&mut self, lhs: Vec<(usize, Rat)>, rhs: Rat) {
        // merge duplicate variables
        let mut merged: std::collections::BTreeMap<usize, Rat> = std::collections::BTreeMap::new();
        for (v, c) in lhs {
            let e = merged.entry(v).or_insert_with(Rat::zero);
            *e += c;
        }
        merged.retain(|_, c| !c.is_zero());
        if merged.is_empty() {
            if !rhs.is_zero() {
                // inconsistent row; keep it so the solver reports failure
                self.rows.push((Vec::new(), rhs));
            }
            return;
        }
        self.rows.push((merged.into_iter().collect(), rhs));
    }

    /// Gaussian elimination; requires a unique solution.
    fn solve(mut self) -> Result<Vec<Rat>> {
        let n = self.n_vars;
        let mut solution: Vec<Option<Rat>> = vec![None; n];
        // dense elimination: the system is small (tens of variables)
        let mut dense: Vec<(Vec<Rat>, Rat)> = self
            .rows
            .drain(..)
            .map(|(lhs, rhs)| {
                let mut row = vec![Rat::zero(); n];
                for (v, c) in lhs {
                    row[v] = c;
                }
                (row, rhs)
            })
            .collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..dense.len()).find(|&r| !dense[r].0[col].is_zero()) else {
                continue;
            };
            dense.swap(rank, p);
            let inv = {
                let pv = &dense[rank].0[col];
                Rat::one() / pv.clone()
            };
            for c in &mut dense[rank].0 {
                *c *= &inv;
            }
            dense[rank].1 *= &inv;
            let (pivot_row, pivot_rhs) = {
                let r = &dense[rank];
                (r.0.clone(), r.1.clone())
            };
            for (r, row) in dense.iter_mut().enumerate() {
                if r == rank || row.0[col].is_zero() {
                    continue;
                }
                let f = row.0[col].clone();
                for (a, b) in row.0.iter_mut().zip(&pivot_row) {
                    *a -= &f * b;
                }
                row.1 -= &f * &pivot_rhs;
            }
            rank += 1;
        }
        // check consistency and extract pivots
        for (row, rhs) in &dense {
            if row.iter().all(|c| c.is_zero()) && !rhs.is_zero() {
                return Err(Error::TableValidation(
                    "alpha-row system is inconsistent".to_string(),
                ));
            }
        }
        for (row, rhs) in dense.iter().take(rank) {
            let mut vars = row.iter().enumerate().filter(|(_, c)| !c.is_zero());
            let (v, c) = vars.next().expect("pivot row has a leading variable");
            if vars.next().is_some() {
                return Err(Error::TableValidation(
                    "alpha-row system is underdetermined".to_string(),
                ));
            }
            solution[v] = Some(rhs / c);
        }
        solution
            .into_iter()
            .enumerate()
            .map(|(v, s)| {
                s.ok_or_else(|| {
                    Error::TableValidation(format!(
                        "alpha-row variable {} is unconstrained",
                        v
                    ))
                })
            })
            .collect()
    }
}

fn eval_mat(m: &SparseMat<LaurentQT>, q0: &Rat) -> SparseMat<Rat> {
    m.map(|p| {
        let mut acc = Rat::zero();
        for (&(eq, et), c) in p.terms() {
            assert_eq!(et, 0, "scaffold entries are t-free");
            let mut pw = Rat::one();
            for _ in 0..eq.abs() {
                pw *= q0;
            }
            if eq < 0 {
                pw = Rat::one() / pw;
            }
            acc += c * &pw;
        }
        acc
    })
}

fn col_of(m: &SparseMat<Rat>, c: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); m.nrows()];
    for (r, cc, v) in m.entries() {
        if cc == c {
            out[r] = v.clone();
        }
    }
    out
}

/// Assemble and solve the t-degree-1 system at one rational value of q.
/// Returns the alpha-row of every generator, pinned by w_i[alpha_i] = q^2.
fn solve_at(rs: &RootSystem, q0: &Rat) -> Result<Vec<Vec<Rat>>> {
    let t = rs.type_id();
    let rank = t.rank();
    let n = rs.num_positive();
    let scaffolds: Vec<SparseMat<Rat>> =
        (1..=rank).map(|i| eval_mat(&scaffold(rs, i), q0)).collect();
    let var = |i: usize, col: usize| i * n + col;
    let mut sys = LinSys::new(rank * n);
    let q2 = q0 * q0;
    for i in 0..rank {
        sys.push(vec![(var(i, i), Rat::one())], q2.clone());
    }
    for a in 0..rank {
        for b in (a + 1)..rank {
            let m = t.coxeter_m(a + 1, b + 1);
            let sa = &scaffolds[a];
            let sb = &scaffolds[b];
            // t-degree 0 must already match; otherwise the scaffold is wrong
            let (lhs0, rhs0) = match m {
                2 => (sa.mul(sb), sb.mul(sa)),
                3 => (sa.mul(sb).mul(sa), sb.mul(sa).mul(sb)),
                other => panic!("simply-laced Coxeter order {}", other),
            };
            if lhs0 != rhs0 {
                return Err(Error::TableValidation(format!(
                    "scaffold violates the t-free layer of the ({}, {}) relation",
                    a + 1,
                    b + 1
                )));
            }
            // t-degree 1 terms, as linear forms in the unknown rows
            struct Term {
                gen: usize,
                left: Vec<Rat>,
                right: Option<SparseMat<Rat>>,
                sign: i32,
            }
            let ea = a;
            let eb = b;
            let terms: Vec<Term> = match m {
                2 => vec![
                    // A0 e_b w_b^T  +  e_a w_a^T B0  -  B0 e_a w_a^T  -  e_b w_b^T A0
                    Term { gen: b, left: col_of(sa, eb), right: None, sign: 1 },
                    Term { gen: a, left: unit(n, ea), right: Some(sb.clone()), sign: 1 },
                    Term { gen: a, left: col_of(sb, ea), right: None, sign: -1 },
                    Term { gen: b, left: unit(n, eb), right: Some(sa.clone()), sign: -1 },
                ],
                3 => vec![
                    // A0 B0 e_a w_a^T + A0 e_b w_b^T A0 + e_a w_a^T B0 A0
                    Term { gen: a, left: col_of(&sa.mul(sb), ea), right: None, sign: 1 },
                    Term { gen: b, left: col_of(sa, eb), right: Some(sa.clone()), sign: 1 },
                    Term { gen: a, left: unit(n, ea), right: Some(sb.mul(sa)), sign: 1 },
                    // minus the mirrored side
                    Term { gen: b, left: col_of(&sb.mul(sa), eb), right: None, sign: -1 },
                    Term { gen: a, left: col_of(sb, ea), right: Some(sb.clone()), sign: -1 },
                    Term { gen: b, left: unit(n, eb), right: Some(sa.mul(sb)), sign: -1 },
                ],
                _ => unreachable!(),
            };
            for r in 0..n {
                for c in 0..n {
                    let mut lhs: Vec<(usize, Rat)> = Vec::new();
                    for term in &terms {
                        let lr = &term.left[r];
                        if lr.is_zero() {
                            continue;
                        }
                        let sign = Rat::from_integer(term.sign.into());
                        match &term.right {
                            None => {
                                lhs.push((var(term.gen, c), lr * &sign));
                            }
                            Some(mat) => {
                                for k in 0..n {
                                    if let Some(v) = mat.get(k, c) {
                                        lhs.push((var(term.gen, k), lr * v * &sign));
                                    }
                                }
                            }
                        }
                    }
                    if !lhs.is_empty() {
                        sys.push(lhs, Rat::zero());
                    }
                }
            }
        }
    }
    let flat = sys.solve()?;
    Ok((0..rank).map(|i| flat[i * n..(i + 1) * n].to_vec()).collect())
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

/// Recover a Laurent polynomial in q from exact samples, assuming
/// exponents within [lo, hi].
fn interpolate(points: &[(Rat, Rat)], lo: i64, hi: i64) -> Result<LaurentQT> {
    let width = (hi - lo + 1) as usize;
    assert!(points.len() >= width + 2, "need samples beyond the window");
    // solve the Vandermonde system on the first `width` samples
    let mut sys = LinSys::new(width);
    for (x, y) in points {
        let mut row = Vec::with_capacity(width);
        let mut pw = pow_rat(x, lo);
        for j in 0..width {
            row.push((j, pw.clone()));
            pw *= x;
        }
        sys.push(row, y.clone());
    }
    let coeffs = sys.solve().map_err(|_| {
        Error::TableValidation("alpha-row entry does not fit the exponent window".to_string())
    })?;
    let mut p = LaurentQT::zero();
    for (j, c) in coeffs.into_iter().enumerate() {
        if !c.is_zero() {
            p = &p + &LaurentQT::monomial(c, lo + j as i64, 0);
        }
    }
    Ok(p)
}

fn pow_rat(x: &Rat, e: i64) -> Rat {
    let mut pw = Rat::one();
    for _ in 0..e.abs() {
        pw *= x;
    }
    if e < 0 {
        pw = Rat::one() / pw;
    }
    pw
}

/// Derive the full generator matrices for a simply-laced type by solving
/// for the alpha-rows. The caller still runs the validation gate.
pub fn derive_generators(t: TypeId) -> Result<Vec<SparseMat<LaurentQT>>> {
    assert!(t.is_simply_laced(), "derivation applies to simply-laced types");
    let rs = RootSystem::new(t)?;
    let rank = t.rank();
    let n = rs.num_positive();
    // the tallest root has height h-1 (h the Coxeter number), and type-A
    // rows stay within q^{ht+1}; leave margin on both sides
    let hi = rs.height_int(n - 1) + 4;
    let lo = -2;
    let width = (hi - lo + 1) as usize;
    let samples: Vec<Rat> = (2i64..).map(rat_int).take(width + 2).collect();
    let mut per_q: Vec<Vec<Vec<Rat>>> = Vec::with_capacity(samples.len());
    for q0 in &samples {
        per_q.push(solve_at(&rs, q0)?);
    }
    let mut gens = Vec::with_capacity(rank);
    for i in 0..rank {
        let mut m = scaffold(&rs, i + 1);
        let pos_alpha = rs.simple_position(i + 1);
        for col in 0..n {
            let pts: Vec<(Rat, Rat)> = samples
                .iter()
                .cloned()
                .zip(per_q.iter().map(|sol| sol[i][col].clone()))
                .collect();
            let w = interpolate(&pts, lo, hi)?;
            if !w.is_zero() {
                let entry = w.mul_monomial(&Rat::one(), 0, 1);
                let prev = m.get(pos_alpha, col).cloned().unwrap_or_else(LaurentQT::zero);
                m.set(pos_alpha, col, &prev + &entry);
            }
        }
        gens.push(m);
    }
    Ok(gens)
}
