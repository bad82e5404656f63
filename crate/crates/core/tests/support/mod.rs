//! Brute-force reference computations, independent of the library's graded
//! engine: quadratic duals, top forms and Nakayama automorphisms over the full
//! tensor powers, in arithmetic modulo the Mersenne prime 2^61 - 1.

#![allow(dead_code)]

use koszul::{Matrix, Rational};
use num_traits::{One, Signed, Zero};

pub const P: u64 = (1 << 61) - 1;

pub fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

pub fn add(a: u64, b: u64) -> u64 {
    (a + b) % P
}

pub fn sub(a: u64, b: u64) -> u64 {
    (a + P - b) % P
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64) -> u64 {
    assert_ne!(a, 0);
    pow(a, P - 2)
}

pub fn int(n: i64) -> u64 {
    if n < 0 {
        P - (n.unsigned_abs() % P)
    } else {
        n as u64 % P
    }
}

pub fn reduce(r: &Rational) -> u64 {
    let big = |b: &num_bigint::BigInt| {
        let m = (b.abs() % num_bigint::BigInt::from(P)).to_u64_digits().1.first().copied().unwrap_or(0);
        if b.is_negative() {
            sub(0, m)
        } else {
            m
        }
    };
    mul(big(r.numer()), inv(big(r.denom())))
}

pub fn reduce_matrix(m: &Matrix<Rational>) -> Vec<Vec<u64>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(reduce).collect()).collect()
}

/// Row-reduces in place; returns pivot columns.
pub fn rref(rows: &mut Vec<Vec<u64>>, cols: usize) -> Vec<usize> {
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(r, k);
        let s = inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = mul(*x, s);
        }
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    if y != 0 {
                        *x = sub(*x, mul(f, y));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<u64>], cols: usize) -> usize {
    rref(&mut rows.to_vec(), cols).len()
}

pub fn null_space(rows: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, cols);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; cols];
            v[free] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = sub(0, row[free]);
            }
            v
        })
        .collect()
}

pub fn same_span(a: &[Vec<u64>], b: &[Vec<u64>], cols: usize) -> bool {
    let both: Vec<Vec<u64>> = a.iter().chain(b).cloned().collect();
    let r = rank(&both, cols);
    r == rank(a, cols) && r == rank(b, cols)
}

/// Quadratic algebra with relation rows indexed by `i*n + j` for the word `e_i e_j`.
#[derive(Clone, Debug)]
pub struct Quadratic {
    pub n: usize,
    pub relations: Vec<Vec<u64>>,
}

impl Quadratic {
    pub fn from_rational(n: usize, rows: &[Vec<Rational>]) -> Self {
        Quadratic { n, relations: rows.iter().map(|r| r.iter().map(reduce).collect()).collect() }
    }

    /// Orthogonal complement under `⟨e_i* e_j*, e_k e_l⟩ = δ_ik δ_jl`.
    pub fn dual(&self) -> Quadratic {
        Quadratic { n: self.n, relations: null_space(&self.relations, self.n * self.n) }
    }

    /// Spanning rows of the degree-`d` part of the ideal.
    fn ideal(&self, d: usize) -> Vec<Vec<u64>> {
        let n = self.n;
        let mut out = vec![];
        for a in 0..=d.saturating_sub(2) {
            if d < 2 {
                break;
            }
            let (left, right) = (n.pow(a as u32), n.pow((d - 2 - a) as u32));
            for l in 0..left {
                for rel in &self.relations {
                    for r in 0..right {
                        let mut v = vec![0; n.pow(d as u32)];
                        for (idx, &c) in rel.iter().enumerate() {
                            if c != 0 {
                                v[(l * n * n + idx) * right + r] = c;
                            }
                        }
                        out.push(v);
                    }
                }
            }
        }
        out
    }

    pub fn dim(&self, d: usize) -> usize {
        let cols = self.n.pow(d as u32);
        cols - rank(&self.ideal(d), cols)
    }

    /// The linear form on `V^{⊗d}` that kills the ideal, when the quotient is one-dimensional.
    pub fn top_form(&self, d: usize) -> Option<Vec<u64>> {
        let cols = self.n.pow(d as u32);
        let ideal = self.ideal(d);
        if ideal.is_empty() {
            return (cols == 1).then(|| vec![1]);
        }
        let forms = null_space(&ideal, cols);
        (forms.len() == 1).then(|| forms.into_iter().next().unwrap())
    }
}

/// `μ` of the Frobenius algebra `E` with top form `φ` in degree `d`:
/// `φ(a ⊗ e_j) = φ(μ(e_j) ⊗ a)` for every word `a` of length `d - 1`.
/// Row `j` holds the coordinates of `μ(e_j)`.
pub fn frobenius_mu(n: usize, d: usize, phi: &[u64]) -> Vec<Vec<u64>> {
    let words = n.pow(d as u32 - 1);
    (0..n)
        .map(|j| {
            // Augmented system in the unknowns m_j0..m_j(n-1).
            let mut sys: Vec<Vec<u64>> = (0..words)
                .map(|a| {
                    let mut row: Vec<u64> = (0..n).map(|k| phi[k * words + a]).collect();
                    row.push(phi[a * n + j]);
                    row
                })
                .collect();
            let pivots = rref(&mut sys, n + 1);
            assert!(!pivots.contains(&n), "inconsistent Nakayama system");
            assert_eq!(pivots.len(), n, "degenerate pairing");
            (0..n).map(|k| sys[k][n]).collect()
        })
        .collect()
}

/// `ν` of a Koszul AS-regular algebra of global dimension `d`, rows as images:
/// `ν = ε^{d+1} μ*` with `ε = -1` on generators.
pub fn nakayama(a: &Quadratic, d: usize) -> Vec<Vec<u64>> {
    let e = a.dual();
    let phi = e.top_form(d).expect("dual has a one-dimensional top");
    let mu = frobenius_mu(a.n, d, &phi);
    let sign = if d % 2 == 1 { 1 } else { P - 1 };
    (0..a.n).map(|i| (0..a.n).map(|j| mul(sign, mu[j][i])).collect()).collect()
}

/// Scalar by which `θ*` acts on the top of the dual. `c` has rows `θ(e_i)`.
pub fn hdet(a: &Quadratic, d: usize, c: &[Vec<u64>]) -> u64 {
    let n = a.n;
    let phi = a.dual().top_form(d).expect("dual has a one-dimensional top");
    let w = phi.iter().position(|&x| x != 0).unwrap();
    // θ*(e_i*) = Σ_j c_ji e_j*, so letter i maps to column i of c.
    let mut image = vec![1u64];
    let mut digits = vec![];
    let mut rest = w;
    for _ in 0..d {
        digits.push(rest % n);
        rest /= n;
    }
    digits.reverse();
    for &letter in &digits {
        let col: Vec<u64> = (0..n).map(|j| c[letter][j]).collect();
        image = image.iter().flat_map(|&x| col.iter().map(move |&y| mul(x, y))).collect();
    }
    let value = image.iter().zip(&phi).fold(0, |acc, (&x, &y)| add(acc, mul(x, y)));
    mul(value, inv(phi[w]))
}

/// Relations of `A_P[y1, y2; σ]` with zero derivation and tail.
/// `s[j][k]` has rows `σ_jk(e_i)`.
pub fn double_ore(base: &Quadratic, p: u64, q: u64, s: &[[Vec<Vec<u64>>; 2]; 2]) -> Quadratic {
    let n = base.n;
    let m = n + 2;
    let idx = |a: usize, b: usize| a * m + b;
    let mut rows = vec![];
    for r in &base.relations {
        let mut v = vec![0; m * m];
        for a in 0..n {
            for b in 0..n {
                v[idx(a, b)] = r[a * n + b];
            }
        }
        rows.push(v);
    }
    let (y1, y2) = (n, n + 1);
    let mut v = vec![0; m * m];
    v[idx(y2, y1)] = 1;
    v[idx(y1, y2)] = sub(0, p);
    v[idx(y1, y1)] = sub(0, q);
    rows.push(v);
    for j in 0..2 {
        for i in 0..n {
            let mut v = vec![0; m * m];
            v[idx(n + j, i)] = 1;
            for k in 0..2 {
                for l in 0..n {
                    v[idx(l, n + k)] = sub(v[idx(l, n + k)], s[j][k][i][l]);
                }
            }
            rows.push(v);
        }
    }
    Quadratic { n: m, relations: rows }
}

/// `ν = -M^{-T} M` for a two-generator algebra with one relation `Σ m_ij e_i e_j`.
pub fn nakayama_two_generators(m: [[Rational; 2]; 2]) -> [[Rational; 2]; 2] {
    let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    assert!(!det.is_zero());
    let inv = [[&m[1][1] / &det, -&m[0][1] / &det], [-&m[1][0] / &det, &m[0][0] / &det]];
    let mut out: [[Rational; 2]; 2] = Default::default();
    for i in 0..2 {
        for j in 0..2 {
            let mut s = Rational::zero();
            for k in 0..2 {
                // (M^{-T})_ik = inv_ki
                s += &inv[k][i] * &m[k][j];
            }
            out[i][j] = -s;
        }
    }
    out
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn one() -> Rational {
    Rational::one()
}
