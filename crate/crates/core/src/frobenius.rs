//! Graded Frobenius structure on finite-dimensional quadratic algebras and
//! the Nakayama automorphisms it induces.

use crate::algebra::{koszul::koszul_check_with, GradedAlgebra, GradedElement, KoszulReport, QuadraticPresentation};
use crate::error::{Error, NotFrobeniusReason, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::morphisms::check_automorphism;

/// Pairing data of a graded Frobenius algebra `E = E_0 ⊕ ... ⊕ E_d`.
///
/// `⟨a, b⟩` is the coefficient of `δ` in `ab`. `pairing_tables[k]` holds
/// `⟨b_i, b'_j⟩` for basis elements `b_i` of `E_k` and `b'_j` of `E_{d-k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusData<F: Field> {
    pub top_degree: usize,
    pub delta: GradedElement<F>,
    /// `e_i · η_j = δ_ij δ`.
    pub eta: Vec<GradedElement<F>>,
    /// `η_i · e_j = λ_ij δ`.
    pub lambda: Matrix<F>,
    pub pairing_tables: Vec<Matrix<F>>,
}

impl<F: Field> FrobeniusData<F> {
    /// `c` with `top = c δ`, for an element of the top degree.
    pub fn top_coefficient(&self, top: &GradedElement<F>) -> F {
        assert_eq!(top.degree, self.top_degree);
        top.coords[0].clone() / self.delta.coords[0].clone()
    }

    pub fn pair(&self, e: &GradedAlgebra<F>, a: &GradedElement<F>, b: &GradedElement<F>) -> F {
        if a.degree + b.degree != self.top_degree {
            return F::zero();
        }
        self.top_coefficient(&e.multiply(a, b))
    }

    /// Nakayama automorphism `μ` on degree 1 (row `i` is `μ(e_i)`), the
    /// solution of `⟨a, b⟩ = ⟨μ(b), a⟩` for `b ∈ E_1`, `a ∈ E_{d-1}`.
    pub fn nakayama_mu(&self) -> Matrix<F> {
        let d = self.top_degree;
        if d == 0 {
            return Matrix::zeros(0, 0);
        }
        let p1_inv = self.pairing_tables[1].inverse().expect("pairing checked nondegenerate");
        &self.pairing_tables[d - 1].transpose() * &p1_inv
    }
}

/// Detects a graded Frobenius structure with `δ` the top basis monomial.
pub fn frobenius_structure<F: Field>(e: &GradedAlgebra<F>) -> Result<FrobeniusData<F>> {
    frobenius_structure_scaled(e, F::one())
}

/// As [`frobenius_structure`] with `δ` rescaled by `scale`.
pub fn frobenius_structure_scaled<F: Field>(e: &GradedAlgebra<F>, scale: F) -> Result<FrobeniusData<F>> {
    assert!(!scale.is_zero());
    let n = e.num_generators();
    let bound = 2 * n + 4;
    let d = (0..=bound)
        .find(|&k| e.dim(k + 1) == 0)
        .ok_or(Error::NotFrobenius { reason: NotFrobeniusReason::NoTopDegree { bound } })?;
    if e.dim(d) != 1 {
        return Err(Error::NotFrobenius { reason: NotFrobeniusReason::TopDimension { degree: d, dim: e.dim(d) } });
    }
    let delta = e.basis_element(d, 0).scale(&scale);

    let mut pairing_tables = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let (left, right) = (e.dim(k), e.dim(d - k));
        if left != right {
            return Err(Error::NotFrobenius { reason: NotFrobeniusReason::DegeneratePairing { degree: k } });
        }
        let mut table = Matrix::zeros(left, right);
        for i in 0..left {
            let a = e.basis_element(k, i);
            for j in 0..right {
                let prod = e.multiply(&a, &e.basis_element(d - k, j));
                table[(i, j)] = prod.coords[0].clone() / scale.clone();
            }
        }
        if table.rank() != left {
            return Err(Error::NotFrobenius { reason: NotFrobeniusReason::DegeneratePairing { degree: k } });
        }
        pairing_tables.push(table);
    }

    let (eta, lambda) = if d == 0 {
        (vec![], Matrix::zeros(0, 0))
    } else {
        let h = pairing_tables[1].inverse().expect("nondegenerate");
        let eta = (0..n)
            .map(|j| GradedElement { degree: d - 1, coords: (0..h.rows()).map(|m| h[(m, j)].clone()).collect() })
            .collect();
        let lambda = &h.transpose() * &pairing_tables[d - 1];
        (eta, lambda)
    };
    Ok(FrobeniusData { top_degree: d, delta, eta, lambda, pairing_tables })
}

/// `μ` of the dual and `ν` of the algebra, both on degree 1 with rows as
/// images of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NakayamaResult<F: Field> {
    pub top_degree: usize,
    pub mu_on_degree1: Matrix<F>,
    pub nu_on_generators: Matrix<F>,
}

/// `ν = ε^{d+1} μ*` where `ε` is `-1` on degree 1 and `μ*` is the transpose.
pub fn nakayama_from_frobenius<F: Field>(
    a: &QuadraticPresentation<F>,
    dual: &QuadraticPresentation<F>,
    frob: &FrobeniusData<F>,
) -> Result<NakayamaResult<F>> {
    let mu = frob.nakayama_mu();
    if let Some(r) = dual.first_unpreserved_relation(&mu) {
        return Err(Error::CrossCheckMismatch {
            what: "Nakayama automorphism of the dual on its relations".into(),
            closed_form: "relation-preserving".into(),
            engine: format!("relation {} leaves R^⊥", dual.relation_strings()[r]),
        });
    }
    let sign = if frob.top_degree % 2 == 1 { F::one() } else { -F::one() };
    let nu = mu.transpose().scale(&sign);
    if let Some(r) = a.first_unpreserved_relation(&nu) {
        return Err(Error::CrossCheckMismatch {
            what: "Nakayama automorphism on the relations".into(),
            closed_form: "relation-preserving".into(),
            engine: format!("relation {} leaves R", a.relation_strings()[r]),
        });
    }
    Ok(NakayamaResult { top_degree: frob.top_degree, mu_on_degree1: mu, nu_on_generators: nu })
}

/// Nakayama automorphism of `A`, computed through the Frobenius dual.
pub fn nakayama_nu<F: Field>(a: &GradedAlgebra<F>) -> Result<NakayamaResult<F>> {
    let dual = a.dual();
    let frob = frobenius_structure(&dual)?;
    nakayama_from_frobenius(a.presentation(), dual.presentation(), &frob)
}

/// Homological determinant: the scalar by which `θ*` (matrix `Cᵀ`) acts on
/// the top component of the dual.
pub fn hdet_on<F: Field>(
    a: &QuadraticPresentation<F>,
    dual: &GradedAlgebra<F>,
    frob: &FrobeniusData<F>,
    theta: &Matrix<F>,
) -> Result<F> {
    check_automorphism(a, theta)?;
    let image = dual.apply_induced(&theta.transpose(), &frob.delta);
    Ok(frob.top_coefficient(&image))
}

pub fn hdet<F: Field>(a: &GradedAlgebra<F>, theta: &Matrix<F>) -> Result<F> {
    let dual = a.dual();
    let frob = frobenius_structure(&dual)?;
    hdet_on(a.presentation(), &dual, &frob, theta)
}

/// A base algebra accepted as Koszul AS-regular: the dual is Frobenius and
/// the numerical Koszulity identity holds up to the degree bound.
#[derive(Clone, Debug)]
pub struct KoszulRegular<F: Field> {
    pub algebra: GradedAlgebra<F>,
    pub dual: GradedAlgebra<F>,
    pub frobenius: FrobeniusData<F>,
    pub nakayama: NakayamaResult<F>,
    pub koszul: KoszulReport,
}

impl<F: Field> KoszulRegular<F> {
    pub fn new(presentation: QuadraticPresentation<F>, degree_bound: usize) -> Result<Self> {
        let algebra = GradedAlgebra::new(presentation);
        let dual = algebra.dual();
        let frobenius = frobenius_structure(&dual)?;
        let nakayama = nakayama_from_frobenius(algebra.presentation(), dual.presentation(), &frobenius)?;
        let koszul = koszul_check_with(&algebra, &dual, degree_bound.max(2));
        if let Some(degree) = koszul.failed_at {
            return Err(Error::NotKoszul { degree });
        }
        Ok(KoszulRegular { algebra, dual, frobenius, nakayama, koszul })
    }

    pub fn presentation(&self) -> &QuadraticPresentation<F> {
        self.algebra.presentation()
    }

    pub fn num_generators(&self) -> usize {
        self.algebra.num_generators()
    }

    pub fn nu(&self) -> &Matrix<F> {
        &self.nakayama.nu_on_generators
    }

    pub fn hdet(&self, theta: &Matrix<F>) -> Result<F> {
        hdet_on(self.presentation(), &self.dual, &self.frobenius, theta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::testing::*;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_i64_rows(rows)
    }

    fn elem(degree: usize, v: &[i64]) -> GradedElement<Rational> {
        GradedElement { degree, coords: qv(v) }
    }

    /// Brute-force oracle for `e_i η_j` and `η_i e_j` in the top degree.
    fn brute_force_dual_basis(
        e: &GradedAlgebra<Rational>,
        f: &FrobeniusData<Rational>,
    ) -> (Matrix<Rational>, Matrix<Rational>) {
        let n = e.num_generators();
        let mut left = Matrix::zeros(n, n);
        let mut right = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let l = e.multiply(&e.generator(i), &f.eta[j]);
                let r = e.multiply(&f.eta[i], &e.generator(j));
                left[(i, j)] = l.coords[0].clone() / f.delta.coords[0].clone();
                right[(i, j)] = r.coords[0].clone() / f.delta.coords[0].clone();
            }
        }
        (left, right)
    }

    fn mu_of(
        e: &GradedAlgebra<Rational>,
        mu: &Matrix<Rational>,
        a: &GradedElement<Rational>,
    ) -> GradedElement<Rational> {
        e.apply_induced(mu, a)
    }

    #[test]
    fn jordan_dual_structure() {
        let e = GradedAlgebra::new(jordan()).dual();
        let f = frobenius_structure(&e).unwrap();
        assert_eq!(f.top_degree, 2);
        assert_eq!(e.component(2).words(), &[vec![1, 0]]);
        assert_eq!(f.eta, vec![elem(1, &[0, -1]), elem(1, &[1, -1])]);
        assert_eq!(f.lambda, m(&[&[-1, 0], &[-2, -1]]));
        let (left, right) = brute_force_dual_basis(&e, &f);
        assert!(left.is_identity());
        assert_eq!(right, f.lambda);
    }

    #[test]
    fn quantum_and_exterior_duals() {
        let e = GradedAlgebra::new(quantum_plane()).dual();
        let f = frobenius_structure(&e).unwrap();
        assert_eq!(f.top_degree, 2);
        assert!(f.lambda.is_identity());
        assert_eq!(f.eta, vec![elem(1, &[0, 1]), elem(1, &[1, 0])]);
        let (left, right) = brute_force_dual_basis(&e, &f);
        assert!(left.is_identity());
        assert_eq!(right, f.lambda);

        let ext = GradedAlgebra::new(commutative_plane()).dual();
        let f = frobenius_structure(&ext).unwrap();
        assert_eq!(f.top_degree, 2);
        assert!(f.pairing_tables.iter().all(|t| t.rank() == t.rows()));
    }

    #[test]
    fn jordan_mu() {
        let e = GradedAlgebra::new(jordan()).dual();
        let f = frobenius_structure(&e).unwrap();
        // μ(x*) = -x* - 2y*, μ(y*) = -y*
        assert_eq!(f.nakayama_mu(), m(&[&[-1, -2], &[0, -1]]));
        assert_eq!(f.nakayama_mu(), f.lambda.transpose());
    }

    #[test]
    fn nakayama_law_on_full_basis_sweeps() {
        for a in [jordan(), quantum_plane(), commutative_plane(), polynomial3()] {
            let e = GradedAlgebra::new(a).dual();
            let f = frobenius_structure(&e).unwrap();
            let mu = f.nakayama_mu();
            for k in 0..=f.top_degree {
                for i in 0..e.dim(k) {
                    for j in 0..e.dim(f.top_degree - k) {
                        let a = e.basis_element(k, i);
                        let b = e.basis_element(f.top_degree - k, j);
                        assert_eq!(f.pair(&e, &a, &b), f.pair(&e, &mu_of(&e, &mu, &b), &a));
                    }
                }
            }
        }
    }

    #[test]
    fn symmetric_pairing_gives_trivial_mu() {
        // Exterior algebra in three variables: even and odd elements commute.
        let e = GradedAlgebra::new(polynomial3()).dual();
        let f = frobenius_structure(&e).unwrap();
        assert_eq!(f.top_degree, 3);
        assert!(f.nakayama_mu().is_identity());
    }

    #[test]
    fn pairing_is_associative() {
        for a in [jordan(), quantum_plane(), polynomial3()] {
            let e = GradedAlgebra::new(a).dual();
            let f = frobenius_structure(&e).unwrap();
            let d = f.top_degree;
            for ka in 0..=d {
                for kb in 0..=d - ka {
                    let kc = d - ka - kb;
                    for i in 0..e.dim(ka) {
                        for j in 0..e.dim(kb) {
                            for l in 0..e.dim(kc) {
                                let (x, y, z) =
                                    (e.basis_element(ka, i), e.basis_element(kb, j), e.basis_element(kc, l));
                                assert_eq!(f.pair(&e, &e.multiply(&x, &y), &z), f.pair(&e, &x, &e.multiply(&y, &z)));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn nakayama_nu_examples() {
        let j = nakayama_nu(&GradedAlgebra::new(jordan())).unwrap();
        assert_eq!(j.nu_on_generators, m(&[&[1, 0], &[2, 1]]));
        let qp = nakayama_nu(&GradedAlgebra::new(quantum_plane())).unwrap();
        assert_eq!(qp.nu_on_generators, m(&[&[-1, 0], &[0, -1]]));
        let c = nakayama_nu(&GradedAlgebra::new(commutative_plane())).unwrap();
        assert!(c.nu_on_generators.is_identity());
        let line = nakayama_nu(&GradedAlgebra::new(polynomial_line::<Rational>())).unwrap();
        assert_eq!(line.top_degree, 1);
        assert!(line.nu_on_generators.is_identity());
        let p3 = nakayama_nu(&GradedAlgebra::new(polynomial3())).unwrap();
        assert!(p3.nu_on_generators.is_identity());
    }

    #[test]
    fn delta_normalization_does_not_matter() {
        let a = GradedAlgebra::new(jordan());
        let e = a.dual();
        let f1 = frobenius_structure(&e).unwrap();
        let f2 = frobenius_structure_scaled(&e, Rational::new(7.into(), 3.into())).unwrap();
        assert_eq!(f1.nakayama_mu(), f2.nakayama_mu());
        assert_eq!(f1.lambda, f2.lambda);
        let theta = m(&[&[3, 0], &[5, 3]]);
        assert_eq!(
            hdet_on(a.presentation(), &e, &f1, &theta).unwrap(),
            hdet_on(a.presentation(), &e, &f2, &theta).unwrap()
        );
    }

    #[test]
    fn hdet_examples() {
        let j = GradedAlgebra::new(jordan());
        for (a, b) in [(1, 0), (2, 1), (-3, 5), (7, -2)] {
            assert_eq!(hdet(&j, &m(&[&[a, 0], &[b, a]])).unwrap(), q(a * a));
        }
        assert_eq!(hdet(&j, &Matrix::identity(2)).unwrap(), q(1));
        let qp = GradedAlgebra::new(quantum_plane());
        assert_eq!(hdet(&qp, &m(&[&[0, 1], &[1, 0]])).unwrap(), q(1));
        assert!(matches!(hdet(&j, &m(&[&[0, 1], &[1, 0]])), Err(Error::NotAutomorphism { .. })));
    }

    #[test]
    fn hdet_of_nu_is_one() {
        for a in [jordan(), quantum_plane(), commutative_plane(), polynomial3()] {
            let r = KoszulRegular::new(a, 6).unwrap();
            assert_eq!(r.hdet(r.nu()).unwrap(), q(1));
        }
    }

    #[test]
    fn non_frobenius_inputs() {
        let infinite = GradedAlgebra::new(degenerate_xx_xy()).dual();
        assert!(matches!(
            frobenius_structure(&infinite),
            Err(Error::NotFrobenius { reason: NotFrobeniusReason::NoTopDegree { .. } })
        ));
        let two_top = GradedAlgebra::new(QuadraticPresentation::<Rational>::free(vec!["x".into(), "y".into()])).dual();
        assert!(matches!(
            frobenius_structure(&two_top),
            Err(Error::NotFrobenius { reason: NotFrobeniusReason::TopDimension { degree: 1, dim: 2 } })
        ));
        // xx = xy = yy = 0 leaves yx on top, but x pairs to zero with everything.
        let degenerate = GradedAlgebra::new(QuadraticPresentation::from_names(
            &["x", "y"],
            vec![qv(&[1, 0, 0, 0]), qv(&[0, 1, 0, 0]), qv(&[0, 0, 0, 1])],
        ));
        assert!(matches!(
            frobenius_structure(&degenerate),
            Err(Error::NotFrobenius { reason: NotFrobeniusReason::DegeneratePairing { degree: 1 } })
        ));
        assert!(matches!(KoszulRegular::new(degenerate_xx_xy(), 6), Err(Error::NotFrobenius { .. })));
    }
}
