//! Solving `C^k = T` over the integers.
//!
//! Over the rationals the answer is definitive whenever `|det C| ≠ 1` or `C`
//! is quasi-unipotent (some power is unipotent, which covers finite order).
//! Otherwise, and in positive characteristic when no finite order shows up
//! within the bound, the search is limited to `[-bound, bound]`.

use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::field::{height, Field, Rational};
use crate::linalg::Matrix;

/// Set of integers `k` with `C^k = T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExponentSet {
    Empty,
    Single(i64),
    /// All `k ≡ residue (mod modulus)`, with `0 ≤ residue < modulus`.
    Progression {
        modulus: i64,
        residue: i64,
    },
    /// Solutions found in `[-bound, bound]`; others may exist outside.
    Partial {
        found: Vec<i64>,
        bound: i64,
    },
}

impl ExponentSet {
    pub fn is_definitive(&self) -> bool {
        !matches!(self, ExponentSet::Partial { .. })
    }

    /// `None` when membership cannot be decided.
    pub fn contains(&self, k: i64) -> Option<bool> {
        match self {
            ExponentSet::Empty => Some(false),
            ExponentSet::Single(a) => Some(*a == k),
            ExponentSet::Progression { modulus, residue } => Some(k.mod_floor(modulus) == *residue),
            ExponentSet::Partial { found, bound } => {
                if found.contains(&k) {
                    Some(true)
                } else if k.abs() <= *bound {
                    Some(false)
                } else {
                    None
                }
            }
        }
    }

    /// Smallest element in the order `(|k|, k)`.
    pub fn smallest(&self) -> Option<i64> {
        self.representatives().into_iter().min_by_key(|&k| (k.abs(), k))
    }

    /// Elements closest to zero on either side.
    pub fn representatives(&self) -> Vec<i64> {
        match self {
            ExponentSet::Empty => vec![],
            ExponentSet::Single(a) => vec![*a],
            ExponentSet::Progression { modulus, residue } => {
                if *residue == 0 {
                    vec![0]
                } else {
                    vec![*residue, residue - modulus]
                }
            }
            ExponentSet::Partial { found, .. } => found.clone(),
        }
    }

    pub fn intersect(&self, other: &ExponentSet) -> ExponentSet {
        use ExponentSet::*;
        match (self, other) {
            (Empty, _) | (_, Empty) => Empty,
            (Single(a), s) | (s, Single(a)) => match s.contains(*a) {
                Some(true) => Single(*a),
                Some(false) => Empty,
                None => Partial { found: vec![], bound: s.bound().unwrap_or(0) },
            },
            (Progression { modulus: m1, residue: r1 }, Progression { modulus: m2, residue: r2 }) => {
                let l = m1.lcm(m2);
                match (0..l).find(|k| k.mod_floor(m1) == *r1 && k.mod_floor(m2) == *r2) {
                    Some(residue) => Progression { modulus: l, residue },
                    None => Empty,
                }
            }
            (Partial { found, bound }, s) | (s, Partial { found, bound }) => Partial {
                found: found.iter().copied().filter(|&k| s.contains(k) != Some(false)).collect(),
                bound: s.bound().map_or(*bound, |b| b.min(*bound)),
            },
        }
    }

    fn bound(&self) -> Option<i64> {
        match self {
            ExponentSet::Partial { bound, .. } => Some(*bound),
            _ => None,
        }
    }
}

fn totient(m: u64) -> u64 {
    let mut result = m;
    let mut x = m;
    let mut p = 2;
    while p * p <= x {
        if x.is_multiple_of(p) {
            while x.is_multiple_of(p) {
                x /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if x > 1 {
        result -= result / x;
    }
    result
}

/// Exponent killing every finite-order `n×n` rational matrix: the lcm of
/// all `m` with `φ(m) ≤ n`.
pub fn finite_order_exponent(n: usize) -> u64 {
    // φ(m) ≥ sqrt(m / 2), so m ≤ 2n² covers every candidate.
    let limit = 2 * (n as u64).pow(2).max(1) + 2;
    (1..=limit).filter(|&m| totient(m) <= n as u64).fold(1u64, |acc, m| acc.lcm(&m))
}

const MAX_QUASI_UNIPOTENT_SIZE: usize = 8;

pub fn solve_power<F: Field>(c: &Matrix<F>, target: &Matrix<F>, bound: i64) -> ExponentSet {
    assert!(c.is_square() && target.rows() == c.rows() && target.cols() == c.cols());
    let n = c.rows();
    if n == 0 {
        return ExponentSet::Progression { modulus: 1, residue: 0 };
    }
    if F::characteristic() == 0 {
        let det = c.determinant().to_rational().expect("characteristic zero");
        assert!(!Field::is_zero(&det), "matrix must be invertible");
        if !height(&det).is_one() {
            return solve_by_determinant(c, target, &det);
        }
        if n <= MAX_QUASI_UNIPOTENT_SIZE {
            if let Some(s) = solve_quasi_unipotent(c, target) {
                return s;
            }
        }
    } else if let Some(order) = small_order(c, 2 * bound + 1) {
        return solve_finite_order(c, target, order);
    }
    search(c, target, bound)
}

fn search<F: Field>(c: &Matrix<F>, target: &Matrix<F>, bound: i64) -> ExponentSet {
    let inv = c.inverse().expect("invertible");
    let mut found = vec![];
    let (mut pos, mut neg) = (Matrix::identity(c.rows()), Matrix::identity(c.rows()));
    if pos == *target {
        found.push(0);
    }
    for k in 1..=bound {
        pos = &pos * c;
        neg = &neg * &inv;
        if neg == *target {
            found.push(-k);
        }
        if pos == *target {
            found.push(k);
        }
    }
    ExponentSet::Partial { found, bound }
}

fn small_order<F: Field>(c: &Matrix<F>, limit: i64) -> Option<i64> {
    let id = Matrix::identity(c.rows());
    let mut p = c.clone();
    for k in 1..=limit {
        if p == id {
            return Some(k);
        }
        p = &p * c;
    }
    None
}

fn solve_finite_order<F: Field>(c: &Matrix<F>, target: &Matrix<F>, order: i64) -> ExponentSet {
    let mut p = Matrix::identity(c.rows());
    for r in 0..order {
        if p == *target {
            return ExponentSet::Progression { modulus: order, residue: r };
        }
        p = &p * c;
    }
    ExponentSet::Empty
}

/// `|det C| ≠ 1` pins `k` through `det(C)^k = det(T)`.
fn solve_by_determinant<F: Field>(c: &Matrix<F>, target: &Matrix<F>, det: &Rational) -> ExponentSet {
    let goal = target.determinant().to_rational().expect("characteristic zero");
    let (h, hg) = (height(det), height(&goal));
    // height(a^k) = height(a)^|k| for reduced fractions.
    let mut k = 0i64;
    let mut acc = num_bigint::BigInt::one();
    while acc < hg {
        acc *= &h;
        k += 1;
    }
    if acc != hg {
        return ExponentSet::Empty;
    }
    for cand in [k, -k] {
        if Field::pow_i64(det, cand) == Some(goal.clone()) && c.pow(cand).as_ref() == Some(target) {
            return ExponentSet::Single(cand);
        }
    }
    ExponentSet::Empty
}

fn is_nilpotent<F: Field>(x: &Matrix<F>) -> bool {
    x.pow(x.rows() as i64).is_some_and(|p| p.is_zero())
}

/// `log U = Σ_{j≥1} (-1)^{j+1} (U - I)^j / j` for unipotent `U`.
fn unipotent_log<F: Field>(u: &Matrix<F>) -> Matrix<F> {
    let n = u.rows();
    let x = u - &Matrix::identity(n);
    let mut term = x.clone();
    let mut out = Matrix::zeros(n, n);
    for j in 1..n.max(2) {
        let sign = if j % 2 == 1 { F::one() } else { -F::one() };
        let coef = sign / F::from_i64(j as i64);
        out = &out + &term.scale(&coef);
        term = &term * &x;
    }
    out
}

/// Definitive answer when `C^L` is unipotent, `None` otherwise.
fn solve_quasi_unipotent<F: Field>(c: &Matrix<F>, target: &Matrix<F>) -> Option<ExponentSet> {
    let n = c.rows();
    let l = finite_order_exponent(n);
    let id = Matrix::identity(n);
    let u = c.pow(l as i64)?;
    if u == id {
        let order = (1..=l).find(|d| l.is_multiple_of(*d) && c.pow(*d as i64).as_ref() == Some(&id))?;
        return Some(solve_finite_order(c, target, order as i64));
    }
    if !is_nilpotent(&(&u - &id)) {
        return None;
    }
    let log_u = unipotent_log(&u);
    let (pi, pj) = (0..n * n).map(|e| (e / n, e % n)).find(|&(i, j)| !log_u[(i, j)].is_zero())?;
    let inv = c.inverse()?;
    // Write k = qL + r; then U^q = T C^{-r} and U^q = exp(q log U).
    let mut t_r = target.clone();
    for r in 0..l as i64 {
        if is_nilpotent(&(&t_r - &id)) {
            let log_t = unipotent_log(&t_r);
            let q = log_t[(pi, pj)].clone() / log_u[(pi, pj)].clone();
            if log_u.scale(&q) == log_t {
                if let Some(q) = q.to_rational().filter(|v| v.is_integer()).and_then(|v| v.to_integer().to_i64()) {
                    return Some(ExponentSet::Single(q * l as i64 + r));
                }
            }
        }
        t_r = &t_r * &inv;
    }
    Some(ExponentSet::Empty)
}
