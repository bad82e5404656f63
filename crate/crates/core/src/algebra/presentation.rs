use std::fmt::Write as _;

use crate::field::Field;
use crate::linalg::{Matrix, Rref};

/// `T(V)/<R>` with `R` a subspace of `V ⊗ V`.
///
/// Relations are stored as rows over the `n²` monomials `e_i e_j`
/// (index `i * n + j`), kept in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticPresentation<F: Field> {
    names: Vec<String>,
    relations: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> QuadraticPresentation<F> {
    /// Panics if the relation matrix does not have `names.len()²` columns.
    pub fn new(names: Vec<String>, relations: Matrix<F>) -> Self {
        let n = names.len();
        assert_eq!(relations.cols(), n * n, "relations must live in V⊗V");
        let Rref { matrix, pivots } = relations.rref();
        let relations = matrix.block(0..pivots.len(), 0..n * n);
        QuadraticPresentation { names, relations, pivots }
    }

    pub fn from_rows(names: Vec<String>, rows: Vec<Vec<F>>) -> Self {
        let n = names.len();
        Self::new(names, Matrix::from_rows(n * n, rows))
    }

    pub fn from_names(names: &[&str], rows: Vec<Vec<F>>) -> Self {
        Self::from_rows(names.iter().map(|s| s.to_string()).collect(), rows)
    }

    /// Free algebra on the given generators.
    pub fn free(names: Vec<String>) -> Self {
        let n = names.len();
        Self::new(names, Matrix::zeros(0, n * n))
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Relation rows in RREF.
    pub fn relations(&self) -> &Matrix<F> {
        &self.relations
    }

    pub fn num_relations(&self) -> usize {
        self.relations.rows()
    }

    pub fn relation_rref(&self) -> Rref<F> {
        Rref { matrix: self.relations.clone(), pivots: self.pivots.clone() }
    }

    /// Whether a degree-2 tensor lies in `R`.
    pub fn relation_space_contains(&self, v: &[F]) -> bool {
        self.relation_rref().contains(v)
    }

    /// `A^! = T(V*)/<R^⊥>` under the pairing `<e_i* e_j*, e_k e_l> = δ_ik δ_jl`.
    pub fn quadratic_dual(&self) -> QuadraticPresentation<F> {
        let names = self.names.iter().map(|s| dual_name(s)).collect();
        QuadraticPresentation::new(names, self.relations.null_space())
    }

    /// First relation whose image under the degree-one map `c` (row `i` is
    /// the image of generator `i`) leaves `R`.
    pub fn first_unpreserved_relation(&self, c: &Matrix<F>) -> Option<usize> {
        let n = self.num_generators();
        assert_eq!((c.rows(), c.cols()), (n, n));
        let cc = c.kron(c);
        let rref = self.relation_rref();
        (0..self.num_relations()).find(|&r| !rref.contains(&cc.vec_mul(self.relations.row(r))))
    }

    pub fn same_relations(&self, other: &QuadraticPresentation<F>) -> bool {
        self.num_generators() == other.num_generators() && self.relations == other.relations
    }

    pub fn relation_strings(&self) -> Vec<String> {
        self.relations.row_vecs().iter().map(|r| format_quadratic(&self.names, r)).collect()
    }
}

/// `x` ↔ `x*`; the dual of a dual gets its original names back.
pub fn dual_name(s: &str) -> String {
    match s.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{s}*"),
    }
}

/// Renders a word, collapsing runs into powers.
pub fn format_word(names: &[String], word: &[usize]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    let sep = if names.iter().any(|s| s.contains('*')) { " " } else { "*" };
    let mut parts = Vec::new();
    let mut i = 0;
    while i < word.len() {
        let mut j = i;
        while j < word.len() && word[j] == word[i] {
            j += 1;
        }
        let name = &names[word[i]];
        if j - i == 1 {
            parts.push(name.clone());
        } else {
            parts.push(format!("{name}^{}", j - i));
        }
        i = j;
    }
    parts.join(sep)
}

/// Renders `Σ c_w w` given as `(word, coefficient)` pairs.
pub fn format_polynomial<F: Field>(names: &[String], terms: &[(Vec<usize>, F)]) -> String {
    let mut out = String::new();
    for (word, c) in terms.iter().filter(|(_, c)| !c.is_zero()) {
        let neg = c.to_string().starts_with('-');
        let abs = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let w = format_word(names, word);
        if word.is_empty() {
            let _ = write!(out, "{abs}");
        } else if abs.is_one() {
            out.push_str(&w);
        } else {
            let _ = write!(out, "{abs}*{w}");
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Renders a degree-2 tensor given in the `n²` monomial basis.
pub fn format_quadratic<F: Field>(names: &[String], v: &[F]) -> String {
    let n = names.len();
    let terms: Vec<(Vec<usize>, F)> =
        v.iter().enumerate().map(|(idx, c)| (vec![idx / n, idx % n], c.clone())).collect();
    format_polynomial(names, &terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::testing::*;

    #[test]
    fn jordan_dual_matches_pq_plane_formula() {
        // p = q = 1: (y1*)^2 + q y2* y1*, y1* y2* + p y2* y1*, (y2*)^2
        let dual = jordan().quadratic_dual();
        let expected = QuadraticPresentation::<Rational>::from_names(
            &["x*", "y*"],
            vec![qv(&[1, 0, 1, 0]), qv(&[0, 1, 1, 0]), qv(&[0, 0, 0, 1])],
        );
        assert!(dual.same_relations(&expected));
        assert_eq!(dual.names(), &["x*".to_string(), "y*".to_string()]);
    }

    #[test]
    fn quantum_and_commutative_duals() {
        let q = quantum_plane().quadratic_dual();
        let expected = QuadraticPresentation::<Rational>::from_names(
            &["x*", "y*"],
            vec![qv(&[1, 0, 0, 0]), qv(&[0, 0, 0, 1]), qv(&[0, 1, -1, 0])],
        );
        assert!(q.same_relations(&expected));

        let c = commutative_plane().quadratic_dual();
        let expected = QuadraticPresentation::<Rational>::from_names(
            &["x*", "y*"],
            vec![qv(&[1, 0, 0, 0]), qv(&[0, 0, 0, 1]), qv(&[0, 1, 1, 0])],
        );
        assert!(c.same_relations(&expected));
    }

    #[test]
    fn double_dual_is_identity() {
        for a in [jordan(), quantum_plane(), commutative_plane(), degenerate_xx_xy()] {
            let dd = a.quadratic_dual().quadratic_dual();
            assert!(dd.same_relations(&a));
            assert_eq!(dd.names(), a.names());
        }
    }

    #[test]
    fn degenerate_presentations() {
        let free = QuadraticPresentation::<Rational>::free(vec!["x".into(), "y".into()]);
        assert_eq!(free.quadratic_dual().num_relations(), 4);
        let full = free.quadratic_dual();
        assert_eq!(full.quadratic_dual().num_relations(), 0);
    }

    #[test]
    fn formatting() {
        let a = jordan();
        let names = a.names().to_vec();
        assert_eq!(format_quadratic(&names, &qv(&[-1, -1, 1, 0])), "-x^2 - x*y + y*x");
        let d = a.quadratic_dual();
        assert_eq!(format_word(d.names(), &[1, 0]), "y* x*");
    }
}
