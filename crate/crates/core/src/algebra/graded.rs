//! Graded components of a quadratic algebra and normal-form multiplication.
//!
//! Component `k` is built from component `k-1` as
//! `A_k = (A_{k-1} ⊗ V) / image(A_{k-2} ⊗ R)`, which only ever touches
//! spaces of size `dim A_{k-1} · n` instead of `n^k`. The surviving
//! monomials are exactly the non-pivot words of the full `V^{⊗k}` reduction
//! under length-lexicographic order with leftmost pivots.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::algebra::presentation::{format_polynomial, QuadraticPresentation};
use crate::field::Field;
use crate::linalg::Matrix;

type SparseVec<F> = Vec<(usize, F)>;

/// Quotient basis of one graded component.
#[derive(Debug)]
pub struct Component<F> {
    degree: usize,
    words: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    /// Normal form of `b · e_g` for `b` in the previous basis, at `b * n + g`.
    extend: Vec<SparseVec<F>>,
}

impl<F: Field> Component<F> {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    /// Selected monomials, in increasing lexicographic order.
    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    pub fn position(&self, word: &[usize]) -> Option<usize> {
        self.index.get(word).copied()
    }
}

/// Homogeneous element: coordinates over the basis of its component.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedElement<F> {
    pub degree: usize,
    pub coords: Vec<F>,
}

impl<F: Field> GradedElement<F> {
    pub fn zero(degree: usize, dim: usize) -> Self {
        GradedElement { degree, coords: vec![F::zero(); dim] }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &F) -> Self {
        GradedElement { degree: self.degree, coords: self.coords.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        GradedElement {
            degree: self.degree,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    fn axpy(&mut self, c: &F, other: &Self) {
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !b.is_zero() {
                *a = a.clone() + c.clone() * b.clone();
            }
        }
    }
}

/// A quadratic algebra together with its lazily computed components.
///
/// The component cache sits behind a lock, so a `GradedAlgebra` can be shared
/// across threads and queried concurrently.
#[derive(Debug)]
pub struct GradedAlgebra<F: Field> {
    presentation: QuadraticPresentation<F>,
    components: RwLock<Vec<Arc<Component<F>>>>,
}

impl<F: Field> Clone for GradedAlgebra<F> {
    fn clone(&self) -> Self {
        GradedAlgebra {
            presentation: self.presentation.clone(),
            components: RwLock::new(self.components.read().unwrap().clone()),
        }
    }
}

impl<F: Field> GradedAlgebra<F> {
    pub fn new(presentation: QuadraticPresentation<F>) -> Self {
        let n = presentation.num_generators();
        let unit = Component { degree: 0, words: vec![vec![]], index: HashMap::from([(vec![], 0)]), extend: vec![] };
        let gens = Component {
            degree: 1,
            words: (0..n).map(|i| vec![i]).collect(),
            index: (0..n).map(|i| (vec![i], i)).collect(),
            extend: (0..n).map(|i| vec![(i, F::one())]).collect(),
        };
        GradedAlgebra { presentation, components: RwLock::new(vec![Arc::new(unit), Arc::new(gens)]) }
    }

    pub fn presentation(&self) -> &QuadraticPresentation<F> {
        &self.presentation
    }

    pub fn num_generators(&self) -> usize {
        self.presentation.num_generators()
    }

    pub fn names(&self) -> &[String] {
        self.presentation.names()
    }

    /// The quadratic dual, as a fresh graded algebra.
    pub fn dual(&self) -> GradedAlgebra<F> {
        GradedAlgebra::new(self.presentation.quadratic_dual())
    }

    pub fn component(&self, degree: usize) -> Arc<Component<F>> {
        if let Some(c) = self.components.read().unwrap().get(degree) {
            return Arc::clone(c);
        }
        let mut comps = self.components.write().unwrap();
        while comps.len() <= degree {
            let next = self.build_component(&comps);
            comps.push(Arc::new(next));
        }
        Arc::clone(&comps[degree])
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.component(degree).dim()
    }

    /// `dim A_0, ..., dim A_bound`.
    pub fn hilbert(&self, bound: usize) -> Vec<usize> {
        (0..=bound).map(|k| self.dim(k)).collect()
    }

    fn build_component(&self, comps: &[Arc<Component<F>>]) -> Component<F> {
        let k = comps.len();
        debug_assert!(k >= 2);
        let n = self.num_generators();
        let prev = &comps[k - 1];
        let before = &comps[k - 2];
        let ext_dim = prev.dim() * n;
        let rels = self.presentation.relations();

        let mut rows = Vec::with_capacity(before.dim() * rels.rows());
        for b in 0..before.dim() {
            for r in 0..rels.rows() {
                let mut row = vec![F::zero(); ext_dim];
                for (idx, coef) in rels.row(r).iter().enumerate() {
                    if coef.is_zero() {
                        continue;
                    }
                    let (i, j) = (idx / n, idx % n);
                    for (c, v) in &prev.extend[b * n + i] {
                        let slot = &mut row[c * n + j];
                        *slot = slot.clone() + coef.clone() * v.clone();
                    }
                }
                rows.push(row);
            }
        }
        let rref = Matrix::from_rows(ext_dim, rows).rref();
        let mut is_pivot = vec![None; ext_dim];
        for (r, &p) in rref.pivots.iter().enumerate() {
            is_pivot[p] = Some(r);
        }
        let free: Vec<usize> = (0..ext_dim).filter(|&c| is_pivot[c].is_none()).collect();
        let mut position = vec![usize::MAX; ext_dim];
        for (pos, &c) in free.iter().enumerate() {
            position[c] = pos;
        }

        let words: Vec<Vec<usize>> = free
            .iter()
            .map(|&c| {
                let mut w = prev.words[c / n].clone();
                w.push(c % n);
                w
            })
            .collect();
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let extend = (0..ext_dim)
            .map(|c| match is_pivot[c] {
                None => vec![(position[c], F::one())],
                Some(r) => free
                    .iter()
                    .filter(|&&f| !rref.matrix[(r, f)].is_zero())
                    .map(|&f| (position[f], -rref.matrix[(r, f)].clone()))
                    .collect(),
            })
            .collect();
        Component { degree: k, words, index, extend }
    }

    pub fn unit(&self) -> GradedElement<F> {
        GradedElement { degree: 0, coords: vec![F::one()] }
    }

    pub fn zero(&self, degree: usize) -> GradedElement<F> {
        GradedElement::zero(degree, self.dim(degree))
    }

    pub fn basis_element(&self, degree: usize, i: usize) -> GradedElement<F> {
        let mut e = self.zero(degree);
        e.coords[i] = F::one();
        e
    }

    pub fn generator(&self, i: usize) -> GradedElement<F> {
        self.basis_element(1, i)
    }

    /// `a · e_g`.
    pub fn mul_generator(&self, a: &GradedElement<F>, g: usize) -> GradedElement<F> {
        let n = self.num_generators();
        let next = self.component(a.degree + 1);
        let mut out = GradedElement::<F>::zero(a.degree + 1, next.dim());
        for (b, c) in a.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (pos, v) in &next.extend[b * n + g] {
                let slot = &mut out.coords[*pos];
                *slot = slot.clone() + c.clone() * v.clone();
            }
        }
        out
    }

    /// `a · (Σ_g lin[g] e_g)`.
    pub fn mul_linear(&self, a: &GradedElement<F>, lin: &[F]) -> GradedElement<F> {
        let mut out = self.zero(a.degree + 1);
        for (g, c) in lin.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out.axpy(c, &self.mul_generator(a, g));
        }
        out
    }

    /// Image of an arbitrary word in normal form.
    pub fn project_word(&self, word: &[usize]) -> GradedElement<F> {
        word.iter().fold(self.unit(), |acc, &g| self.mul_generator(&acc, g))
    }

    /// Image of a tensor given in the `n^k` monomial basis (`i`-major).
    pub fn project_tensor(&self, degree: usize, coords: &[F]) -> GradedElement<F> {
        let n = self.num_generators();
        assert_eq!(coords.len(), n.pow(degree as u32));
        let mut out = self.zero(degree);
        for (idx, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out.axpy(c, &self.project_word(&index_to_word(idx, n, degree)));
        }
        out
    }

    /// Matrix from `V^{⊗k}` coordinates (rows) to quotient coordinates.
    pub fn projection_matrix(&self, degree: usize) -> Matrix<F> {
        let n = self.num_generators();
        let rows =
            (0..n.pow(degree as u32)).map(|idx| self.project_word(&index_to_word(idx, n, degree)).coords).collect();
        Matrix::from_rows(self.dim(degree), rows)
    }

    pub fn multiply(&self, a: &GradedElement<F>, b: &GradedElement<F>) -> GradedElement<F> {
        let comp = self.component(b.degree);
        let mut out = self.zero(a.degree + b.degree);
        for (i, c) in b.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let prod = comp.words[i].iter().fold(a.clone(), |acc, &g| self.mul_generator(&acc, g));
            out.axpy(c, &prod);
        }
        out
    }

    /// Applies the algebra map induced by a degree-one map, given as a
    /// matrix whose row `i` is the image of generator `i`.
    pub fn apply_induced(&self, map: &Matrix<F>, a: &GradedElement<F>) -> GradedElement<F> {
        let comp = self.component(a.degree);
        let mut out = self.zero(a.degree);
        for (i, c) in a.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = comp.words[i].iter().fold(self.unit(), |acc, &g| self.mul_linear(&acc, map.row(g)));
            out.axpy(c, &img);
        }
        out
    }

    /// Lowest degree whose component vanishes, if below `bound`.
    pub fn vanishing_degree(&self, bound: usize) -> Option<usize> {
        (0..=bound).find(|&k| self.dim(k) == 0)
    }

    pub fn format_element(&self, a: &GradedElement<F>) -> String {
        let comp = self.component(a.degree);
        let terms: Vec<(Vec<usize>, F)> = comp.words.iter().cloned().zip(a.coords.iter().cloned()).collect();
        format_polynomial(self.names(), &terms)
    }
}

fn index_to_word(mut idx: usize, n: usize, degree: usize) -> Vec<usize> {
    let mut w = vec![0; degree];
    for slot in w.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    w
}
