//! Small dense linear-algebra helpers shared by the other modules.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::CMatrix;

/// `exp(i t H)` for a fixed Hermitian `H`, evaluated through one cached
/// eigendecomposition `H = V diag(d) V†`.
#[derive(Clone, Debug)]
pub struct HermitianExp {
    vectors: CMatrix,
    values: DVector<f64>,
}

impl HermitianExp {
    pub fn new(h: &CMatrix) -> Self {
        let eig = SymmetricEigen::new(h.clone());
        Self {
            vectors: eig.eigenvectors,
            values: eig.eigenvalues,
        }
    }

    pub fn at(&self, t: f64) -> CMatrix {
        let mut scaled = self.vectors.clone();
        for (k, mut col) in scaled.column_iter_mut().enumerate() {
            col *= Complex64::from_polar(1.0, t * self.values[k]);
        }
        scaled * self.vectors.adjoint()
    }
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `‖U†U − I‖_F`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.nrows();
    frobenius(&(u.adjoint() * u - CMatrix::identity(n, n)))
}

/// `‖A − A†‖_F`.
pub fn hermiticity_defect(a: &CMatrix) -> f64 {
    frobenius(&(a - a.adjoint()))
}

pub fn trace(a: &CMatrix) -> Complex64 {
    a.diagonal().iter().sum()
}

/// `Tr(A B)` without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..a.nrows() {
        for k in 0..a.ncols() {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// Hilbert-Schmidt inner product `Tr(A† B)`.
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn to_complex(m: &DMatrix<f64>) -> CMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}

pub fn diag_complex(d: &[Complex64]) -> CMatrix {
    CMatrix::from_diagonal(&DVector::from_column_slice(d))
}

/// Real symmetric eigendecomposition with eigenvalues sorted ascending.
pub fn sorted_symmetric_eigen(m: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Groups ascending `values` into runs whose neighbours lie within
/// `rel_tol·(1+|v|)` of each other. Returns half-open index ranges.
pub fn cluster_sorted(values: &[f64], rel_tol: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for k in 1..=values.len() {
        let split = k == values.len()
            || (values[k] - values[k - 1]).abs() > rel_tol * (1.0 + values[k].abs());
        if split {
            if k > start {
                out.push(start..k);
            }
            start = k;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_pauli_y() {
        // exp(i π σ_y / 2) = i σ_y
        let sy = CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, -0.5),
                Complex64::new(0.0, 0.5),
                Complex64::new(0.0, 0.0),
            ],
        );
        let u = HermitianExp::new(&sy).at(std::f64::consts::PI);
        let want = [[0.0, 1.0], [-1.0, 0.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((u[(i, j)] - Complex64::new(want[i][j], 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn clusters_split_on_gaps() {
        let v = [0.0, 1e-12, 3.0, 3.0 + 1e-11, 8.0];
        let c = cluster_sorted(&v, 1e-8);
        assert_eq!(c, vec![0..2, 2..4, 4..5]);
        assert!(cluster_sorted(&[], 1e-8).is_empty());
    }
}
