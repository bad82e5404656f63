use serde::Serialize;

use crate::algebra::graded::GradedAlgebra;
use crate::field::Field;

pub const KOSZUL_LABEL: &str = "numerical Koszulity (necessary condition)";

/// Outcome of `Σ_k (-1)^k dim A^!_k dim A_{m-k} = [m = 0]` for `m ≤ bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulReport {
    pub label: &'static str,
    pub bound: usize,
    pub hilbert: Vec<usize>,
    pub dual_hilbert: Vec<usize>,
    /// Convolution values, one per degree; all but the first must vanish.
    pub convolution: Vec<i64>,
    /// First degree where the identity fails.
    pub failed_at: Option<usize>,
}

impl KoszulReport {
    pub fn passed(&self) -> bool {
        self.failed_at.is_none()
    }
}

pub fn koszul_check<F: Field>(a: &GradedAlgebra<F>, bound: usize) -> KoszulReport {
    let dual = a.dual();
    koszul_check_with(a, &dual, bound)
}

/// Same as [`koszul_check`] with an already computed dual.
pub fn koszul_check_with<F: Field>(a: &GradedAlgebra<F>, dual: &GradedAlgebra<F>, bound: usize) -> KoszulReport {
    let hilbert = a.hilbert(bound);
    let dual_hilbert = dual.hilbert(bound);
    let convolution: Vec<i64> = (0..=bound)
        .map(|m| {
            (0..=m)
                .map(|k| {
                    let term = (dual_hilbert[k] * hilbert[m - k]) as i64;
                    if k % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect();
    let failed_at = convolution.iter().enumerate().position(|(m, &c)| c != i64::from(m == 0));
    KoszulReport { label: KOSZUL_LABEL, bound, hilbert, dual_hilbert, convolution, failed_at }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::*;

    /// Independent convolution of two dimension sequences.
    fn convolve(h: &[usize], hd: &[usize], m: usize) -> i64 {
        let mut s = 0i64;
        for k in 0..=m {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            s += sign * (hd[k] * h[m - k]) as i64;
        }
        s
    }

    #[test]
    fn jordan_passes() {
        let r = koszul_check(&GradedAlgebra::new(jordan()), 6);
        assert!(r.passed());
        assert_eq!(r.dual_hilbert, vec![1, 2, 1, 0, 0, 0, 0]);
        for m in 0..=6 {
            assert_eq!(r.convolution[m], convolve(&r.hilbert, &r.dual_hilbert, m));
        }
        assert_eq!(r.label, "numerical Koszulity (necessary condition)");
    }

    #[test]
    fn degenerate_input_reports() {
        let r = koszul_check(&GradedAlgebra::new(degenerate_xx_xy()), 4);
        for m in 0..=4 {
            assert_eq!(r.convolution[m], convolve(&r.hilbert, &r.dual_hilbert, m));
        }
        assert_eq!(r.passed(), r.convolution.iter().skip(1).all(|&c| c == 0));
    }
}
