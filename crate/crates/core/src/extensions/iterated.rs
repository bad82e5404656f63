use rayon::prelude::*;

use crate::algebra::QuadraticPresentation;
use crate::error::{Error, Result};
use crate::extensions::exponent::{solve_power, ExponentSet};
use crate::extensions::laurent::{hdet_condition, verdict_from_exponents};
use crate::extensions::verdict::{condition, CyStatus, CyVerdict, NakayamaDescription};
use crate::extensions::RelationRows;
use crate::field::Field;
use crate::frobenius::KoszulRegular;
use crate::linalg::Matrix;
use crate::morphisms::{check_automorphism, GradedAut};

/// Largest residue box enumerated when every automorphism has finite order.
const MAX_RESIDUE_TUPLES: i64 = 1 << 20;

fn check_commuting<F: Field>(thetas: &[Matrix<F>]) -> Result<()> {
    for i in 0..thetas.len() {
        for j in i + 1..thetas.len() {
            if &thetas[i] * &thetas[j] != &thetas[j] * &thetas[i] {
                return Err(Error::NotCommuting(i, j));
            }
        }
    }
    Ok(())
}

fn validate<F: Field>(base: &QuadraticPresentation<F>, thetas: &[Matrix<F>]) -> Result<Vec<GradedAut<F>>> {
    let auts = thetas.iter().map(|t| check_automorphism(base, t)).collect::<Result<Vec<_>>>()?;
    check_commuting(thetas)?;
    Ok(auts)
}

/// `A[y1, ..., ym; θ1, ..., θm]` with commuting `y_i` and `y_i e = θ_i(e) y_i`.
pub fn iterated_extend<F: Field>(
    base: &QuadraticPresentation<F>,
    thetas: &[Matrix<F>],
    names: &[String],
) -> Result<QuadraticPresentation<F>> {
    assert_eq!(thetas.len(), names.len());
    let auts = validate(base, thetas)?;
    let n = base.num_generators();
    let mut rows = RelationRows::extending(base, names);
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            rows.push([(n + i, n + j, F::one()), (n + j, n + i, -F::one())]);
        }
    }
    for (k, theta) in auts.iter().enumerate() {
        for i in 0..n {
            let mut terms = vec![(n + k, i, F::one())];
            terms.extend((0..n).map(|j| (j, n + k, -theta.matrix[(i, j)].clone())));
            rows.push(terms);
        }
    }
    Ok(rows.finish())
}

/// Matrix of `θ1∘⋯∘θm`.
fn composite<F: Field>(n: usize, thetas: &[Matrix<F>]) -> Matrix<F> {
    thetas.iter().rev().fold(Matrix::identity(n), |acc, t| &acc * t)
}

/// `(θ1∘⋯∘θm)⁻¹∘ν` on the base and `y_i ↦ (hdet θ_i) y_i`.
pub fn nakayama_iterated<F: Field>(base: &KoszulRegular<F>, thetas: &[Matrix<F>]) -> Result<NakayamaDescription<F>> {
    validate(base.presentation(), thetas)?;
    let c = composite(base.num_generators(), thetas);
    let hdets = thetas.iter().map(|t| base.hdet(t)).collect::<Result<Vec<_>>>()?;
    let mut on_new = Matrix::zeros(thetas.len(), thetas.len());
    for (i, h) in hdets.into_iter().enumerate() {
        on_new[(i, i)] = h;
    }
    Ok(NakayamaDescription {
        on_base: base.nu() * &c.inverse().expect("automorphisms are invertible"),
        on_new_generators: on_new,
        on_inverses: None,
    })
}

/// Calabi-Yau iff `θ1∘⋯∘θm = ν` and every `hdet θ_i = 1`.
pub fn cy_iterated<F: Field>(base: &KoszulRegular<F>, thetas: &[Matrix<F>]) -> Result<CyVerdict> {
    validate(base.presentation(), thetas)?;
    let c = composite(base.num_generators(), thetas);
    let mut conditions = vec![condition("theta_1 o ... o theta_m = nu", &c, base.nu())];
    for (i, t) in thetas.iter().enumerate() {
        conditions.push(hdet_condition(&format!("theta_{}", i + 1), &base.hdet(t)?));
    }
    Ok(CyVerdict::from_conditions(conditions))
}

fn key(k: &[i64]) -> (i64, Vec<i64>) {
    (k.iter().map(|x| x.abs()).sum(), k.to_vec())
}

/// Tuples of `[-bound, bound]^m` with the given `L1` norm, in lexicographic order.
fn shell(m: usize, bound: i64, norm: i64) -> Vec<Vec<i64>> {
    if m == 0 {
        return if norm == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = vec![];
    for first in -bound.min(norm)..=bound.min(norm) {
        for mut rest in shell(m - 1, bound, norm - first.abs()) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Laurent variant: every `hdet θ_i = 1` and `θ1^{k1}⋯θm^{km} = ν` for
/// some integers `k_i`.
pub fn cy_iterated_laurent<F: Field>(base: &KoszulRegular<F>, thetas: &[Matrix<F>], bound: i64) -> Result<CyVerdict> {
    validate(base.presentation(), thetas)?;
    let mut reasons = vec![];
    for (i, t) in thetas.iter().enumerate() {
        let (label, holds) = hdet_condition(&format!("theta_{}", i + 1), &base.hdet(t)?);
        if !holds {
            return Ok(CyVerdict::no(vec![format!("fails: {label}")]).with_bound(bound));
        }
        reasons.push(format!("holds: {label}"));
    }
    let nu = base.nu();
    let n = base.num_generators();
    if thetas.len() == 1 {
        let set = solve_power(&thetas[0], nu, bound);
        return Ok(verdict_from_exponents(&set, "theta_1^k = nu", bound, reasons));
    }

    let product = |k: &[i64]| -> Matrix<F> {
        thetas.iter().zip(k).fold(Matrix::identity(n), |acc, (t, &e)| &acc * &t.pow(e).expect("invertible"))
    };
    let orders: Vec<Option<i64>> = thetas
        .iter()
        .map(|t| match solve_power(t, &Matrix::identity(n), bound) {
            ExponentSet::Progression { modulus, residue: 0 } => Some(modulus),
            _ => None,
        })
        .collect();
    let what = "theta_1^k_1 ... theta_m^k_m = nu";

    if let Some(orders) = orders.iter().copied().collect::<Option<Vec<i64>>>() {
        if orders.iter().product::<i64>() <= MAX_RESIDUE_TUPLES {
            // Finite abelian group: residues decide, then pick the nearest representatives.
            let mut best: Option<Vec<i64>> = None;
            let mut residues = vec![vec![]];
            for &o in &orders {
                residues = residues
                    .into_iter()
                    .flat_map(|r: Vec<i64>| (0..o).map(move |a| [r.clone(), vec![a]].concat()))
                    .collect();
            }
            for r in residues.iter().filter(|r| &product(r) == nu) {
                let nearest: Vec<i64> =
                    r.iter().zip(&orders).map(|(&a, &o)| if a == 0 || a <= o - a { a } else { a - o }).collect();
                if best.as_ref().is_none_or(|b| key(&nearest) < key(b)) {
                    best = Some(nearest);
                }
            }
            reasons.push(format!("all automorphisms have finite order ({orders:?}); the residue search is exhaustive"));
            return Ok(match best {
                Some(w) => {
                    reasons.push(format!("witness {w:?} satisfies {what}"));
                    CyVerdict { status: CyStatus::Yes, witness: Some(w), reasons, bound_used: Some(bound) }
                }
                None => {
                    reasons.push(format!("no exponents satisfy {what}"));
                    CyVerdict::no(reasons).with_bound(bound)
                }
            });
        }
    }

    let m = thetas.len();
    for norm in 0..=(m as i64 * bound) {
        let candidates = shell(m, bound, norm);
        if let Some(w) = candidates.par_iter().find_first(|k| &product(k) == nu) {
            reasons.push(format!("witness {w:?} satisfies {what}"));
            return Ok(CyVerdict { status: CyStatus::Yes, witness: Some(w.clone()), reasons, bound_used: Some(bound) });
        }
    }
    reasons.push(format!("no exponents in [-{bound}, {bound}]^{m} satisfy {what}; the search is not exhaustive"));
    Ok(CyVerdict { status: CyStatus::Unknown, witness: None, reasons, bound_used: Some(bound) })
}
