//! Evaluation of document expressions into presentations and matrices over a field.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::QuadraticPresentation;
use crate::cli::dsl::{Document, Expr};
use crate::cli::CliError;
use crate::field::{from_rational, Field, Rational};
use crate::linalg::Matrix;
use crate::morphisms::Blocks;

/// Values fixed for parameters, overriding the document's lists.
pub type Bindings = BTreeMap<String, Rational>;

/// Noncommutative polynomial: word in generator indices to coefficient.
type Poly = BTreeMap<Vec<usize>, Rational>;

fn add_into(acc: &mut Poly, other: Poly, sign: bool) {
    for (w, c) in other {
        let slot = acc.entry(w).or_insert_with(<Rational as Zero>::zero);
        if sign {
            *slot += c;
        } else {
            *slot -= c;
        }
    }
    acc.retain(|_, c| !Zero::is_zero(c));
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let w = [wa.as_slice(), wb.as_slice()].concat();
            *out.entry(w).or_insert_with(<Rational as Zero>::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !Zero::is_zero(c));
    out
}

fn constant(r: Rational) -> Poly {
    let mut p = Poly::new();
    if !Zero::is_zero(&r) {
        p.insert(vec![], r);
    }
    p
}

pub struct Env<'a> {
    doc: &'a Document,
    bindings: &'a Bindings,
}

impl<'a> Env<'a> {
    /// Fails if a binding names an undeclared parameter.
    pub fn new(doc: &'a Document, bindings: &'a Bindings) -> Result<Self, CliError> {
        if let Some(name) = bindings.keys().find(|k| doc.param(k).is_none()) {
            return Err(CliError::Input(format!("no parameter named {name}")));
        }
        Ok(Env { doc, bindings })
    }

    pub fn document(&self) -> &Document {
        self.doc
    }

    fn param(&self, name: &str) -> Result<Rational, CliError> {
        if let Some(v) = self.bindings.get(name) {
            return Ok(v.clone());
        }
        match self.doc.param(name).map(|p| p.values.as_slice()) {
            Some([v]) => Ok(v.clone()),
            Some(vs) => Err(CliError::Input(format!(
                "parameter {name} has {} values; fix one with --set {name}=VALUE or use sweep",
                vs.len()
            ))),
            None => Err(CliError::Input(format!("unknown identifier {name}"))),
        }
    }

    fn poly(&self, e: &Expr) -> Result<Poly, CliError> {
        Ok(match e {
            Expr::Num(r) => constant(r.clone()),
            Expr::Var(v) => match self.doc.gens.iter().position(|g| g == v) {
                Some(i) => Poly::from([(vec![i], Rational::from_integer(1.into()))]),
                None => constant(self.param(v)?),
            },
            Expr::Neg(a) => {
                let mut p = Poly::new();
                add_into(&mut p, self.poly(a)?, false);
                p
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let mut p = self.poly(a)?;
                add_into(&mut p, self.poly(b)?, matches!(e, Expr::Add(..)));
                p
            }
            Expr::Mul(a, b) => mul(&self.poly(a)?, &self.poly(b)?),
            Expr::Div(a, b) => {
                let d = self.poly(b)?;
                match d.get(&vec![]) {
                    Some(c) if d.len() == 1 => mul(&self.poly(a)?, &constant(c.recip())),
                    _ => return Err(CliError::Input(format!("division by zero in {e}"))),
                }
            }
            Expr::Pow(a, k) => {
                let base = self.poly(a)?;
                (0..*k).fold(constant(Rational::from_integer(1.into())), |acc, _| mul(&acc, &base))
            }
        })
    }

    fn coefficient<F: Field>(r: &Rational) -> Result<F, CliError> {
        from_rational(r).ok_or_else(|| CliError::Input(format!("coefficient {r} is undefined in {}", F::field_name())))
    }

    pub fn scalar<F: Field>(&self, e: &Expr) -> Result<F, CliError> {
        let p = self.poly(e)?;
        Self::coefficient(p.get(&vec![]).unwrap_or(&<Rational as Zero>::zero()))
    }

    pub fn scalar_matrix<F: Field>(&self, rows: &[Vec<Expr>]) -> Result<Matrix<F>, CliError> {
        let rows = rows.iter().map(|r| r.iter().map(|e| self.scalar(e)).collect()).collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_rows(self.doc.gens.len(), rows))
    }

    /// Coefficients of the degree-`d` words of `e`, indexed in base `n`.
    fn homogeneous<F: Field>(&self, e: &Expr) -> Result<Vec<F>, CliError> {
        let n = self.doc.gens.len();
        let p = self.poly(e)?;
        let degree = p.keys().next().map_or(0, |w| w.len());
        let mut out = vec![F::zero(); n.pow(degree as u32)];
        for (w, c) in &p {
            let idx = w.iter().fold(0, |acc, &g| acc * n + g);
            out[idx] = Self::coefficient(c)?;
        }
        Ok(out)
    }

    pub fn presentation<F: Field>(&self) -> Result<QuadraticPresentation<F>, CliError> {
        let n = self.doc.gens.len();
        let rows = self
            .doc
            .relations
            .iter()
            .map(|r| {
                let row: Vec<F> = self.homogeneous(r)?;
                // A relation that vanishes for these parameter values contributes nothing.
                Ok(if row.len() == n * n { row } else { vec![F::zero(); n * n] })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(QuadraticPresentation::from_rows(self.doc.gens.clone(), rows))
    }

    /// Matrix of a declared automorphism; row `i` is the image of generator `i`.
    pub fn aut<F: Field>(&self, name: &str) -> Result<Matrix<F>, CliError> {
        let decl = self.doc.aut(name).ok_or_else(|| CliError::Input(format!("no automorphism named {name}")))?;
        let n = self.doc.gens.len();
        let mut m = Matrix::zeros(n, n);
        for (g, e) in &decl.images {
            let i = self.doc.gens.iter().position(|h| h == g).expect("checked by the parser");
            let row: Vec<F> = self.homogeneous(e)?;
            if row.len() == n {
                for (j, c) in row.into_iter().enumerate() {
                    m[(i, j)] = c;
                }
            }
        }
        Ok(m)
    }

    /// `(p, q, blocks)` of a declared sigma.
    pub fn sigma<F: Field>(&self, name: &str) -> Result<(F, F, Blocks<F>), CliError> {
        let decl = self.doc.sigma(name).ok_or_else(|| CliError::Input(format!("no sigma named {name}")))?;
        let b = |j: usize, k: usize| self.scalar_matrix(&decl.blocks[j][k]);
        Ok((self.scalar(&decl.p)?, self.scalar(&decl.q)?, [[b(0, 0)?, b(0, 1)?], [b(1, 0)?, b(1, 1)?]]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::jordan_plane;
    use crate::cli::dsl::parse;
    use crate::field::Fp;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn jordan_presentation() {
        let d = parse("gens x, y; rel y*x - x*y - x^2;").unwrap();
        let b = Bindings::new();
        let env = Env::new(&d, &b).unwrap();
        assert!(env.presentation::<Rational>().unwrap().same_relations(&jordan_plane()));
        let d = parse("gens x, y; rel (y - x)*x - x*y;").unwrap();
        let env = Env::new(&d, &b).unwrap();
        assert!(env.presentation::<Rational>().unwrap().same_relations(&jordan_plane()));
    }

    #[test]
    fn automorphisms_and_parameters() {
        let d = parse("gens x, y; param a = {1, 3}; param b = 5; aut t { y -> b*x + a*y; x -> a*x }").unwrap();
        let mut bind = Bindings::new();
        assert!(matches!(Env::new(&d, &bind).unwrap().aut::<Rational>("t"), Err(CliError::Input(_))));
        bind.insert("a".into(), q(3, 1));
        let m = Env::new(&d, &bind).unwrap().aut::<Rational>("t").unwrap();
        assert_eq!(m, Matrix::from_i64_rows(&[&[3, 0], &[5, 3]]));
        let m = Env::new(&d, &bind).unwrap().aut::<Fp<7>>("t").unwrap();
        assert_eq!(m, Matrix::from_i64_rows(&[&[3, 0], &[5, 3]]));
        bind.insert("c".into(), q(1, 1));
        assert!(Env::new(&d, &bind).is_err());
    }

    #[test]
    fn prime_field_rejects_bad_denominators() {
        let d = parse("gens x; aut t { x -> 1/7*x }").unwrap();
        let b = Bindings::new();
        let env = Env::new(&d, &b).unwrap();
        assert!(env.aut::<Fp<7>>("t").is_err());
        assert_eq!(env.aut::<Fp<5>>("t").unwrap()[(0, 0)], Fp::<5>::new(3));
    }
}
