//! Ore, trimmed double Ore, and iterated skew extensions: presentations,
//! Nakayama automorphisms, and Calabi-Yau criteria.

pub mod double_ore;
pub mod exponent;
pub mod iterated;
pub mod laurent;
pub mod ore;
pub mod verdict;

pub use double_ore::{
    cy_double_ore, double_ore_extend, dual_presentation_double_ore, nakayama_double_ore, DoubleOreNakayama,
};
pub use exponent::{solve_power, ExponentSet};
pub use iterated::{cy_iterated, cy_iterated_laurent, iterated_extend, nakayama_iterated};
pub use laurent::{cy_laurent_diagonal, cy_skew_laurent, nakayama_skew_laurent};
pub use ore::{cy_ore, nakayama_ore, ore_extend};
pub use verdict::{CyStatus, CyVerdict, NakayamaDescription};

use crate::algebra::QuadraticPresentation;
use crate::field::Field;

/// Relation rows over an enlarged generator list.
pub(crate) struct RelationRows<F: Field> {
    names: Vec<String>,
    rows: Vec<Vec<F>>,
}

impl<F: Field> RelationRows<F> {
    /// Starts from the base relations, with `extra` generators appended.
    pub fn extending(base: &QuadraticPresentation<F>, extra: &[String]) -> Self {
        let n = base.num_generators();
        let mut names = base.names().to_vec();
        names.extend(extra.iter().cloned());
        let total = names.len();
        let rows = base
            .relations()
            .row_vecs()
            .into_iter()
            .map(|r| {
                let mut row = vec![F::zero(); total * total];
                for (idx, c) in r.into_iter().enumerate() {
                    row[(idx / n) * total + idx % n] = c;
                }
                row
            })
            .collect();
        RelationRows { names, rows }
    }

    /// Adds `Σ c · e_i e_j` over the given terms.
    pub fn push(&mut self, terms: impl IntoIterator<Item = (usize, usize, F)>) {
        let total = self.names.len();
        let mut row = vec![F::zero(); total * total];
        for (i, j, c) in terms {
            let slot = &mut row[i * total + j];
            *slot = slot.clone() + c;
        }
        self.rows.push(row);
    }

    pub fn finish(self) -> QuadraticPresentation<F> {
        QuadraticPresentation::from_rows(self.names, self.rows)
    }
}
