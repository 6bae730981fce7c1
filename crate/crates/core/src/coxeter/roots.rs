//! Construction of the positive root systems: integer coordinates in the
//! simple-root basis for the crystallographic families, Q(sqrt(5))
//! coordinates for H3/H4, and a combinatorial dihedral model for I2(m).

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::arith::Quad5;
use crate::error::Result;

use super::types::TypeId;
use super::word::WElem;

/// Coordinates of the positive roots, in canonical order.
#[derive(Clone, Debug)]
pub enum RootCoords {
    /// Simple-root basis coordinates; integral for A, B, D, E, F.
    Integer(Vec<Vec<i64>>),
    /// Simple-root basis coordinates over Q(sqrt(5)) for H3 and H4.
    Quadratic(Vec<Vec<Quad5>>),
    /// Dihedral direction indices 0..m-1 for I2(m), canonical position ->
    /// direction.
    Dihedral { m: usize, directions: Vec<usize> },
}

/// A root system of an irreducible spherical type: the positive roots in
/// canonical order together with the signed action of every simple
/// reflection.
///
/// Signed root indices run over 0..2N: index p < N is the p-th positive
/// root, index p + N its negative.
#[derive(Clone, Debug)]
pub struct RootSystem {
    type_id: TypeId,
    n_positive: usize,
    simple_action: Vec<Vec<u32>>,
    coords: RootCoords,
}

trait Coord: Clone + PartialEq + Eq + Hash {
    fn sign(&self) -> i32;
    fn cmp_val(&self, other: &Self) -> Ordering;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl Coord for i64 {
    fn sign(&self) -> i32 {
        match self.cmp(&0) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }
    fn cmp_val(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl Coord for Quad5 {
    fn sign(&self) -> i32 {
        self.signum()
    }
    fn cmp_val(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

/// Apply the i-th simple reflection (0-based) to coordinates:
/// beta - <beta, alpha_i-check> alpha_i, with the pairing row supplied.
fn reflect<T: Coord>(coords: &[T], i: usize, pair_row: &[T]) -> Vec<T> {
    let factor = coords
        .iter()
        .zip(pair_row)
        .map(|(c, p)| c.mul(p))
        .reduce(|a, b| a.add(&b))
        .expect("nonzero rank");
    let mut out = coords.to_vec();
    out[i] = out[i].sub(&factor);
    out
}

fn is_positive_vec<T: Coord>(coords: &[T]) -> Option<bool> {
    let mut pos = false;
    let mut neg = false;
    for c in coords {
        match c.sign() {
            1 => pos = true,
            -1 => neg = true,
            _ => {}
        }
    }
    match (pos, neg) {
        (true, false) => Some(true),
        (false, true) => Some(false),
        (false, false) | (true, true) => None,
    }
}

/// Breadth-first closure of the simple roots under all simple reflections,
/// returning the positive roots sorted canonically: by height (coordinate
/// sum), ties broken by descending lexicographic coordinate order.
fn close_positive<T: Coord>(rank: usize, pair: &[Vec<T>], zero: T, one: T) -> Vec<Vec<T>> {
    let mut simples = Vec::new();
    for i in 0..rank {
        let mut v = vec![zero.clone(); rank];
        v[i] = one.clone();
        simples.push(v);
    }
    let mut seen: HashMap<Vec<T>, ()> = simples.iter().cloned().map(|v| (v, ())).collect();
    let mut queue: VecDeque<Vec<T>> = simples.into_iter().collect();
    while let Some(beta) = queue.pop_front() {
        for i in 0..rank {
            let gamma = reflect(&beta, i, &pair[i]);
            match is_positive_vec(&gamma) {
                Some(true) => {
                    if seen.insert(gamma.clone(), ()).is_none() {
                        queue.push_back(gamma);
                    }
                }
                Some(false) => {
                    // s_i sends only alpha_i to a negative root
                    debug_assert!(
                        beta.iter().enumerate().all(|(j, c)| if j == i {
                            c == &one
                        } else {
                            c.sign() == 0
                        }),
                        "reflection produced a negative image of a non-simple root"
                    );
                }
                None => panic!("reflection produced a mixed-sign vector; pairing table is wrong"),
            }
        }
    }
    let mut roots: Vec<Vec<T>> = seen.into_keys().collect();
    roots.sort_by(|a, b| {
        let ha = a.iter().cloned().reduce(|x, y| x.add(&y)).unwrap();
        let hb = b.iter().cloned().reduce(|x, y| x.add(&y)).unwrap();
        ha.cmp_val(&hb).then_with(|| {
            for (x, y) in a.iter().zip(b) {
                match x.cmp_val(y) {
                    Ordering::Equal => continue,
                    ord => return ord.reverse(),
                }
            }
            Ordering::Equal
        })
    });
    roots
}

/// Pairing rows for the crystallographic families:
/// `pair[i][j] = <alpha_j, alpha_i-check>`.
fn crystallographic_pair(t: TypeId) -> Vec<Vec<i64>> {
    let rank = t.rank();
    let mut pair = vec![vec![0i64; rank]; rank];
    for i in 1..=rank {
        for j in 1..=rank {
            pair[i - 1][j - 1] = if i == j {
                2
            } else {
                match t.coxeter_m(i, j) {
                    2 => 0,
                    3 => -1,
                    4 => {
                        // the row of the short root carries the -2
                        let i_short = match t {
                            TypeId::B(n) => i == n,
                            TypeId::F4 => i >= 3,
                            _ => unreachable!("bond of order 4 outside B/F"),
                        };
                        if i_short {
                            -2
                        } else {
                            -1
                        }
                    }
                    m => unreachable!("unexpected bond order {} in {}", m, t),
                }
            };
        }
    }
    pair
}

/// Pairing rows for H3/H4 in the geometric representation with unit-length
/// roots: `pair[i][j] = 2 B(alpha_i, alpha_j)`, where
/// `B(alpha_i, alpha_j) = -cos(pi / m_ij)`; for m = 5 this is -tau/2 with
/// tau the golden ratio.
fn quadratic_pair(t: TypeId) -> Vec<Vec<Quad5>> {
    let rank = t.rank();
    let tau = Quad5::new(crate::arith::rat(1, 2), crate::arith::rat(1, 2));
    let mut pair = vec![vec![Quad5::zero(); rank]; rank];
    for i in 1..=rank {
        for j in 1..=rank {
            pair[i - 1][j - 1] = if i == j {
                Quad5::from_int(2)
            } else {
                match t.coxeter_m(i, j) {
                    2 => Quad5::zero(),
                    3 => Quad5::from_int(-1),
                    5 => -&tau,
                    m => unreachable!("unexpected bond order {} in {}", m, t),
                }
            };
        }
    }
    pair
}

fn build_actions<T: Coord>(
    roots: &[Vec<T>],
    rank: usize,
    pair: &[Vec<T>],
) -> Vec<Vec<u32>> {
    let n = roots.len();
    let index: HashMap<&[T], usize> = roots
        .iter()
        .enumerate()
        .map(|(p, r)| (r.as_slice(), p))
        .collect();
    let neg = |v: &[T]| -> Vec<T> {
        let z = v[0].sub(&v[0]);
        v.iter().map(|c| z.sub(c)).collect()
    };
    (0..rank)
        .map(|i| {
            let mut perm = vec![0u32; 2 * n];
            for (p, beta) in roots.iter().enumerate() {
                let gamma = reflect(beta, i, &pair[i]);
                let (q, flip) = match index.get(gamma.as_slice()) {
                    Some(&q) => (q, false),
                    None => {
                        let q = *index
                            .get(neg(&gamma).as_slice())
                            .expect("root set not closed under reflection");
                        (q, true)
                    }
                };
                if flip {
                    perm[p] = (q + n) as u32;
                    perm[p + n] = q as u32;
                } else {
                    perm[p] = q as u32;
                    perm[p + n] = (q + n) as u32;
                }
            }
            perm
        })
        .collect()
}

fn dihedral_system(m: usize) -> (Vec<usize>, Vec<Vec<u32>>) {
    // positive roots are directions 0..m-1; canonical order walks inward
    // from the two simple roots (directions 0 and m-1), which is height
    // order in the dihedral plane
    let mut order = Vec::with_capacity(m);
    let (mut lo, mut hi) = (0usize, m - 1);
    while lo < hi {
        order.push(lo);
        order.push(hi);
        lo += 1;
        hi -= 1;
    }
    if lo == hi {
        order.push(lo);
    }
    let mut dir2pos = vec![0usize; m];
    for (p, d) in order.iter().enumerate() {
        dir2pos[*d] = p;
    }
    let pos_of_dir = |d: usize| -> usize {
        if d < m {
            dir2pos[d]
        } else {
            dir2pos[d - m] + m
        }
    };
    let dir_of_pos = |p: usize| -> usize {
        if p < m {
            order[p]
        } else {
            order[p - m] + m
        }
    };
    // s1 reflects direction k to (m - k) mod 2m, s2 to (3m - 2 - k) mod 2m
    let build = |act: &dyn Fn(usize) -> usize| -> Vec<u32> {
        (0..2 * m)
            .map(|p| pos_of_dir(act(dir_of_pos(p))) as u32)
            .collect()
    };
    let perms = vec![
        build(&|k| (3 * m - k) % (2 * m)),
        build(&|k| (3 * m - 2 - k) % (2 * m)),
    ];
    (order, perms)
}

impl RootSystem {
    pub fn new(t: TypeId) -> Result<Self> {
        let t = t.validate()?;
        let rank = t.rank();
        let (coords, simple_action) = match t {
            TypeId::H3 | TypeId::H4 => {
                let pair = quadratic_pair(t);
                let roots = close_positive(rank, &pair, Quad5::zero(), Quad5::one());
                let action = build_actions(&roots, rank, &pair);
                (RootCoords::Quadratic(roots), action)
            }
            TypeId::I2(m) => {
                let (directions, action) = dihedral_system(m);
                (RootCoords::Dihedral { m, directions }, action)
            }
            _ => {
                let pair = crystallographic_pair(t);
                let roots = close_positive(rank, &pair, 0i64, 1i64);
                let action = build_actions(&roots, rank, &pair);
                (RootCoords::Integer(roots), action)
            }
        };
        let n_positive = simple_action[0].len() / 2;
        let rs = RootSystem {
            type_id: t,
            n_positive,
            simple_action,
            coords,
        };
        rs.assert_simples_first();
        Ok(rs)
    }

    fn assert_simples_first(&self) {
        let rank = self.type_id.rank();
        for i in 0..rank {
            match &self.coords {
                RootCoords::Integer(roots) => {
                    let unit: Vec<i64> =
                        (0..rank).map(|j| if i == j { 1 } else { 0 }).collect();
                    assert_eq!(roots[i], unit, "simple root {} out of place", i + 1);
                }
                RootCoords::Quadratic(roots) => {
                    let unit: Vec<Quad5> = (0..rank)
                        .map(|j| if i == j { Quad5::one() } else { Quad5::zero() })
                        .collect();
                    assert_eq!(roots[i], unit, "simple root {} out of place", i + 1);
                }
                RootCoords::Dihedral { m, directions } => {
                    assert_eq!(directions[0], 0);
                    assert_eq!(directions[1], m - 1);
                }
            }
        }
    }

    pub fn type_id(&self) -> TypeId {
        self.type_id
    }

    pub fn rank(&self) -> usize {
        self.type_id.rank()
    }

    /// Number of positive roots N = number of reflections.
    pub fn num_positive(&self) -> usize {
        self.n_positive
    }

    pub fn coords(&self) -> &RootCoords {
        &self.coords
    }

    /// The canonical position of the i-th simple root (1-based index i).
    pub fn simple_position(&self, i: usize) -> usize {
        assert!((1..=self.rank()).contains(&i));
        i - 1
    }

    /// The i-th simple reflection as a signed-root permutation, 1-based.
    pub fn simple_reflection(&self, i: usize) -> WElem {
        assert!(
            (1..=self.rank()).contains(&i),
            "generator index {} out of range 1..={}",
            i,
            self.rank()
        );
        WElem::from_perm(self.simple_action[i - 1].clone())
    }

    pub(crate) fn simple_action_slice(&self, i: usize) -> &[u32] {
        &self.simple_action[i - 1]
    }

    pub fn identity(&self) -> WElem {
        WElem::identity(self.n_positive)
    }

    /// Integer coordinates of a positive root, defined for the
    /// crystallographic families.
    pub fn coords_int(&self, p: usize) -> &[i64] {
        match &self.coords {
            RootCoords::Integer(roots) => &roots[p],
            _ => panic!("integer coordinates only exist for crystallographic types"),
        }
    }

    /// Height of a positive root (sum of simple-root coordinates), for the
    /// crystallographic families.
    pub fn height_int(&self, p: usize) -> i64 {
        self.coords_int(p).iter().sum()
    }

    /// Canonical index of a positive root given integer coordinates.
    pub fn pos_index_of_int(&self, coords: &[i64]) -> Option<usize> {
        match &self.coords {
            RootCoords::Integer(roots) => roots.iter().position(|r| r == coords),
            _ => None,
        }
    }

    /// `<beta_p, alpha_i-check>` for crystallographic types, 1-based i.
    pub fn simple_pairing_int(&self, i: usize, p: usize) -> i64 {
        let pair = crystallographic_pair(self.type_id);
        pair[i - 1]
            .iter()
            .zip(self.coords_int(p))
            .map(|(a, c)| a * c)
            .sum()
    }
}
