//! Graded automorphisms and degree-preserving homomorphisms `σ: A → M₂(A)`.
//!
//! Linear maps on `V` are matrices whose row `i` is the image of `e_i`, so the
//! composite `ψ∘θ` has matrix `C_θ · C_ψ`.

use crate::algebra::{GradedAlgebra, GradedElement, QuadraticPresentation};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::frobenius::{FrobeniusData, KoszulRegular};
use crate::linalg::Matrix;

/// Validated graded automorphism `θ(e_i) = Σ_j C_ij e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAut<F: Field> {
    pub matrix: Matrix<F>,
}

impl<F: Field> GradedAut<F> {
    /// `θ*` on the dual, `θ*(e_i*) = Σ_j c_ji e_j*`.
    pub fn dual(&self) -> GradedAut<F> {
        GradedAut { matrix: self.matrix.transpose() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedAut<F>) -> GradedAut<F> {
        GradedAut { matrix: &other.matrix * &self.matrix }
    }

    pub fn inverse(&self) -> GradedAut<F> {
        GradedAut { matrix: self.matrix.inverse().expect("automorphisms are invertible") }
    }
}

pub fn check_automorphism<F: Field>(a: &QuadraticPresentation<F>, c: &Matrix<F>) -> Result<GradedAut<F>> {
    let n = a.num_generators();
    if c.rows() != n || c.cols() != n {
        return Err(Error::Dimension(format!("expected a {n}x{n} matrix, got {}x{}", c.rows(), c.cols())));
    }
    if c.rank() < n {
        return Err(Error::NotAutomorphism { reason: "matrix is singular".into() });
    }
    if let Some(r) = a.first_unpreserved_relation(c) {
        return Err(Error::NotAutomorphism {
            reason: format!("image of relation {} leaves the relation space", a.relation_strings()[r]),
        });
    }
    Ok(GradedAut { matrix: c.clone() })
}

/// Four `n×n` blocks, `blocks[j][k]` describing the `(j+1, k+1)` entry.
pub type Blocks<F> = [[Matrix<F>; 2]; 2];

/// `σ(e_i) = (σ_jk(e_i))` with `σ_jk(e_i) = Σ_l (S_jk)_il e_l`, together with
/// the parameters of `y2 y1 = p y1 y2 + q y1²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaHom<F: Field> {
    pub p: F,
    pub q: F,
    pub blocks: Blocks<F>,
}

impl<F: Field> SigmaHom<F> {
    /// `diag(τ, ξ)`.
    pub fn diagonal(p: F, q: F, tau: &Matrix<F>, xi: &Matrix<F>) -> Self {
        let z = Matrix::zeros(tau.rows(), tau.cols());
        SigmaHom { p, q, blocks: [[tau.clone(), z.clone()], [z, xi.clone()]] }
    }

    pub fn block(&self, j: usize, k: usize) -> &Matrix<F> {
        &self.blocks[j][k]
    }

    /// `2n × 2n` matrix with block `(j, k)` equal to `S_jk`.
    pub fn block_matrix(&self) -> Matrix<F> {
        assemble(&self.blocks)
    }
}

fn assemble<F: Field>(b: &Blocks<F>) -> Matrix<F> {
    let n = b[0][0].rows();
    let mut m = Matrix::zeros(2 * n, 2 * n);
    for (j, row) in b.iter().enumerate() {
        for (k, blk) in row.iter().enumerate() {
            for r in 0..n {
                for c in 0..n {
                    m[(j * n + r, k * n + c)] = blk[(r, c)].clone();
                }
            }
        }
    }
    m
}

/// `V⊗V → V⊗V` map giving entry `(j, k)` of `Ψ(uv) = Ψ(u)Ψ(v)`.
fn entry_tensor<F: Field>(b: &Blocks<F>, j: usize, k: usize) -> Matrix<F> {
    &b[j][0].kron(&b[0][k]) + &b[j][1].kron(&b[1][k])
}

/// First `(relation, entry)` whose image leaves the relation space.
fn first_hom_failure<F: Field>(a: &QuadraticPresentation<F>, b: &Blocks<F>) -> Option<(usize, (usize, usize))> {
    let rref = a.relation_rref();
    for j in 0..2 {
        for k in 0..2 {
            let t = entry_tensor(b, j, k);
            for r in 0..a.num_relations() {
                if !rref.contains(&t.vec_mul(a.relations().row(r))) {
                    return Some((r, (j, k)));
                }
            }
        }
    }
    None
}

fn transpose_blocks<F: Field>(b: &Blocks<F>) -> Blocks<F> {
    [[b[0][0].transpose(), b[0][1].transpose()], [b[1][0].transpose(), b[1][1].transpose()]]
}

/// Validates `σ` as an algebra homomorphism compatible with the `y` relation.
pub fn check_sigma<F: Field>(a: &QuadraticPresentation<F>, p: F, q: F, blocks: Blocks<F>) -> Result<SigmaHom<F>> {
    if p.is_zero() {
        return Err(Error::ZeroP);
    }
    let n = a.num_generators();
    for (j, row) in blocks.iter().enumerate() {
        for (k, blk) in row.iter().enumerate() {
            if blk.rows() != n || blk.cols() != n {
                return Err(Error::Dimension(format!(
                    "block S{}{} must be {n}x{n}, got {}x{}",
                    j + 1,
                    k + 1,
                    blk.rows(),
                    blk.cols()
                )));
            }
        }
    }
    if let Some((r, entry)) = first_hom_failure(a, &blocks) {
        return Err(Error::NotHomomorphism { relation: a.relation_strings()[r].clone(), entry });
    }

    // (y2 y1 - p y1 y2 - q y1²) e = Σ M_lk(e) y_l y_k must vanish in the free
    // module with basis y1², y1 y2, y2², where y2 y1 = p y1 y2 + q y1².
    let s = &blocks;
    let m = |l: usize, k: usize| -> Matrix<F> {
        let a = &s[0][k] * &s[1][l];
        let b = (&s[1][k] * &s[0][l]).scale(&p);
        let c = (&s[0][k] * &s[0][l]).scale(&q);
        &(&a - &b) - &c
    };
    let m21 = m(1, 0);
    if !m(1, 1).is_zero() {
        return Err(Error::IncompatibleSigma { reason: "coefficient of y2^2 does not vanish".into() });
    }
    if m(0, 1) != m21.scale(&-p.clone()) {
        return Err(Error::IncompatibleSigma { reason: "coefficient of y1*y2 does not vanish".into() });
    }
    if m(0, 0) != m21.scale(&-q.clone()) {
        return Err(Error::IncompatibleSigma { reason: "coefficient of y1^2 does not vanish".into() });
    }
    Ok(SigmaHom { p, q, blocks })
}

/// Solves for the inverse `φ` and verifies it in degrees one and two.
pub fn invert_sigma<F: Field>(a: &QuadraticPresentation<F>, sigma: &SigmaHom<F>) -> Result<Blocks<F>> {
    let n = a.num_generators();
    let inv = sigma
        .block_matrix()
        .inverse()
        .ok_or_else(|| Error::NotInvertible { reason: "the block matrix of sigma is singular".into() })?;
    // Σ_k φ_jk∘σ_ik = δ_ij reads S · Φ' = I where Φ' has block (k, j) = Φ_jk.
    let blk = |j: usize, k: usize| inv.block(k * n..(k + 1) * n, j * n..(j + 1) * n);
    let phi: Blocks<F> = [[blk(0, 0), blk(0, 1)], [blk(1, 0), blk(1, 1)]];

    if let Some((r, (j, k))) = first_hom_failure(a, &phi) {
        return Err(Error::NotInvertible {
            reason: format!(
                "inverse entry ({}, {}) does not respect relation {}",
                j + 1,
                k + 1,
                a.relation_strings()[r]
            ),
        });
    }
    let dual = a.quadratic_dual();
    if first_hom_failure(&dual, &transpose_blocks(&phi)).is_some() {
        return Err(Error::NotInvertible { reason: "dual of the inverse does not preserve the dual relations".into() });
    }

    // Both inverse identities on every monomial of V⊗V, modulo R.
    let rref = a.relation_rref();
    let nn = n * n;
    for i in 0..2 {
        for j in 0..2 {
            let mut left = Matrix::zeros(nn, nn);
            let mut right = Matrix::zeros(nn, nn);
            for k in 0..2 {
                left = &left + &(&entry_tensor(&sigma.blocks, i, k) * &entry_tensor(&phi, j, k));
                right = &right + &(&entry_tensor(&phi, k, i) * &entry_tensor(&sigma.blocks, k, j));
            }
            let target = if i == j { Matrix::identity(nn) } else { Matrix::zeros(nn, nn) };
            let (dl, dr) = (&left - &target, &right - &target);
            for w in 0..nn {
                if !rref.contains(dl.row(w)) || !rref.contains(dr.row(w)) {
                    return Err(Error::NotInvertible {
                        reason: format!("inverse identities fail in degree 2 at entry ({}, {})", i + 1, j + 1),
                    });
                }
            }
        }
    }
    Ok(phi)
}

/// Matrix of `det_r σ = -q σ12∘σ11 + σ22∘σ11 - p σ12∘σ21`.
pub fn det_r_matrix<F: Field>(sigma: &SigmaHom<F>) -> Matrix<F> {
    let s = &sigma.blocks;
    let a = (&s[0][0] * &s[0][1]).scale(&-sigma.q.clone());
    let b = &s[0][0] * &s[1][1];
    let c = (&s[1][0] * &s[0][1]).scale(&sigma.p);
    &(&a + &b) - &c
}

pub fn det_r<F: Field>(a: &QuadraticPresentation<F>, sigma: &SigmaHom<F>) -> Result<GradedAut<F>> {
    check_automorphism(a, &det_r_matrix(sigma))
}

/// Matrix of `det_l φ = -q φ11∘φ21 + φ11∘φ22 - p φ12∘φ21`.
pub fn det_l<F: Field>(sigma: &SigmaHom<F>, phi: &Blocks<F>) -> Matrix<F> {
    let a = (&phi[1][0] * &phi[0][0]).scale(&-sigma.q.clone());
    let b = &phi[1][1] * &phi[0][0];
    let c = (&phi[1][0] * &phi[0][1]).scale(&sigma.p);
    &(&a + &b) - &c
}

/// Scalars with `σ*(δ) = (Wδ Xδ; Yδ Zδ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wxyz<F: Field> {
    pub w: F,
    pub x: F,
    pub y: F,
    pub z: F,
}

impl<F: Field> Wxyz<F> {
    pub fn matrix(&self) -> Matrix<F> {
        Matrix::from_rows(2, vec![vec![self.w.clone(), self.x.clone()], vec![self.y.clone(), self.z.clone()]])
    }
}

/// Applies the block map `Ψ*` with blocks `Ψ_jkᵀ` multiplicatively to `δ`.
pub fn star_on_top<F: Field>(dual: &GradedAlgebra<F>, frob: &FrobeniusData<F>, blocks: &Blocks<F>) -> Result<Wxyz<F>> {
    let star = transpose_blocks(blocks);
    if first_hom_failure(dual.presentation(), &star).is_some() {
        return Err(Error::InconsistentDual { reason: "dual blocks do not preserve the dual relations".into() });
    }
    let d = frob.top_degree;
    let word = dual.component(d).words()[0].clone();
    let mut state: [[GradedElement<F>; 2]; 2] = [[dual.unit(), dual.zero(0)], [dual.zero(0), dual.unit()]];
    for &g in &word {
        let next = |j: usize, k: usize| {
            let a = dual.mul_linear(&state[j][0], star[0][k].row(g));
            let b = dual.mul_linear(&state[j][1], star[1][k].row(g));
            a.add(&b)
        };
        state = [[next(0, 0), next(0, 1)], [next(1, 0), next(1, 1)]];
    }
    // δ is a multiple of the basis word, and so is its image.
    let scale = frob.delta.coords[0].clone();
    let coef = |e: &GradedElement<F>| frob.top_coefficient(&e.scale(&scale));
    Ok(Wxyz { w: coef(&state[0][0]), x: coef(&state[0][1]), y: coef(&state[1][0]), z: coef(&state[1][1]) })
}

pub fn wxyz<F: Field>(base: &KoszulRegular<F>, sigma: &SigmaHom<F>) -> Result<Wxyz<F>> {
    star_on_top(&base.dual, &base.frobenius, &sigma.blocks)
}
