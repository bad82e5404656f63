use crate::algebra::QuadraticPresentation;
use crate::error::Result;
use crate::extensions::verdict::{condition, CyVerdict, NakayamaDescription};
use crate::extensions::RelationRows;
use crate::field::Field;
use crate::frobenius::KoszulRegular;
use crate::linalg::Matrix;
use crate::morphisms::{check_automorphism, GradedAut};

/// `A[t; θ]`: the base relations together with `t e_i - θ(e_i) t`.
pub fn ore_extend<F: Field>(
    base: &QuadraticPresentation<F>,
    theta: &GradedAut<F>,
    var: &str,
) -> QuadraticPresentation<F> {
    let n = base.num_generators();
    let mut rows = RelationRows::extending(base, &[var.to_string()]);
    for i in 0..n {
        let mut terms = vec![(n, i, F::one())];
        terms.extend((0..n).map(|j| (j, n, -theta.matrix[(i, j)].clone())));
        rows.push(terms);
    }
    rows.finish()
}

/// `ν_D = θ⁻¹∘ν` on the base and `t ↦ (hdet θ) t`.
pub fn nakayama_ore<F: Field>(base: &KoszulRegular<F>, theta: &Matrix<F>) -> Result<NakayamaDescription<F>> {
    let theta = check_automorphism(base.presentation(), theta)?;
    let h = base.hdet(&theta.matrix)?;
    Ok(NakayamaDescription {
        on_base: base.nu() * &theta.inverse().matrix,
        on_new_generators: Matrix::scalar(1, h),
        on_inverses: None,
    })
}

/// `A[t; θ]` is Calabi-Yau exactly when `θ = ν`.
pub fn cy_ore<F: Field>(base: &KoszulRegular<F>, theta: &Matrix<F>) -> Result<CyVerdict> {
    check_automorphism(base.presentation(), theta)?;
    Ok(CyVerdict::from_conditions(vec![condition("theta = nu", theta, base.nu())]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GradedAlgebra;
    use crate::field::Rational;
    use crate::frobenius::nakayama_nu;
    use crate::testing::*;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_i64_rows(rows)
    }

    fn aut(a: &QuadraticPresentation<Rational>, c: Matrix<Rational>) -> GradedAut<Rational> {
        check_automorphism(a, &c).unwrap()
    }

    #[test]
    fn hilbert_series_of_ore_extensions() {
        let nu = m(&[&[1, 0], &[2, 1]]);
        let d = ore_extend(&jordan(), &aut(&jordan(), nu), "t");
        assert_eq!(GradedAlgebra::new(d).hilbert(5), vec![1, 3, 6, 10, 15, 21]);
        let d = ore_extend(&quantum_plane(), &aut(&quantum_plane(), m(&[&[0, 1], &[1, 0]])), "t");
        assert_eq!(GradedAlgebra::new(d).hilbert(4), vec![1, 3, 6, 10, 15]);
    }

    #[test]
    fn identity_gives_central_variable() {
        let d = ore_extend(&jordan(), &aut(&jordan(), Matrix::identity(2)), "t");
        // t x - x t
        assert!(d.relation_space_contains(&qv(&[0, 0, -1, 0, 0, 0, 1, 0, 0])));
        assert!(d.relation_space_contains(&qv(&[0, 0, 0, 0, 0, -1, 0, 1, 0])));
    }

    #[test]
    fn dual_relations() {
        let theta = aut(&jordan(), m(&[&[2, 0], &[3, 2]]));
        let d = ore_extend(&jordan(), &theta, "t");
        let dual = d.quadratic_dual();
        assert_eq!(dual.names()[2], "t*");
        let mut tt = vec![Rational::from_i64(0); 9];
        tt[8] = Rational::from_i64(1);
        assert!(dual.relation_space_contains(&tt));
        let inv_star = theta.inverse().dual().matrix;
        for i in 0..2 {
            let mut row = vec![Rational::from_i64(0); 9];
            row[2 * 3 + i] = Rational::from_i64(1);
            for j in 0..2 {
                row[j * 3 + 2] = inv_star[(i, j)].clone();
            }
            assert!(dual.relation_space_contains(&row));
        }
    }

    #[test]
    fn nakayama_matches_engine() {
        let base = KoszulRegular::new(jordan(), 6).unwrap();
        for c in [m(&[&[1, 0], &[2, 1]]), Matrix::identity(2), m(&[&[3, 0], &[1, 3]]), m(&[&[-1, 0], &[5, -1]])] {
            let desc = nakayama_ore(&base, &c).unwrap();
            let d = ore_extend(base.presentation(), &aut(&jordan(), c), "t");
            let engine = nakayama_nu(&GradedAlgebra::new(d)).unwrap();
            assert_eq!(desc.full_matrix(), engine.nu_on_generators);
        }
        let desc = nakayama_ore(&base, &m(&[&[1, 0], &[2, 1]])).unwrap();
        assert!(desc.is_identity());
        let desc = nakayama_ore(&base, &Matrix::identity(2)).unwrap();
        assert_eq!(&desc.on_base, base.nu());

        let qbase = KoszulRegular::new(quantum_plane(), 6).unwrap();
        let s = Matrix::from_rows(2, vec![qv(&[3, 0]), vec![Rational::from_i64(0), Rational::new(1.into(), 3.into())]]);
        let desc = nakayama_ore(&qbase, &s).unwrap();
        assert_eq!(desc.on_new_generators, Matrix::identity(1));
        assert_eq!(desc.on_base, &m(&[&[-1, 0], &[0, -1]]) * &s.inverse().unwrap());
    }

    #[test]
    fn calabi_yau_iff_theta_is_nu() {
        let base = KoszulRegular::new(jordan(), 6).unwrap();
        assert!(cy_ore(&base, &m(&[&[1, 0], &[2, 1]])).unwrap().is_yes());
        assert!(!cy_ore(&base, &Matrix::identity(2)).unwrap().is_yes());
        let poly = KoszulRegular::new(commutative_plane(), 6).unwrap();
        assert!(cy_ore(&poly, &Matrix::identity(2)).unwrap().is_yes());
    }
}
