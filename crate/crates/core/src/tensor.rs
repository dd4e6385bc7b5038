//! Trace-orthonormal irreducible tensor operators `T^λ_{σ;βI}` for the
//! operator space of a symmetric irrep.
//!
//! The construction never evaluates SU(n) coupling coefficients. Operators
//! `|μ⟩⟨ν|` already carry a definite weight, so the operator space splits
//! into weight sectors. In each sector the adjoint quadratic Casimir
//! `K = Σ_{ij} ad(E_ij) ad(E_ji)` is diagonalised; its eigenvalue
//! `2σ(σ+n−1)` identifies the block `(σ,0,…,0,σ)`. Repeated weights inside
//! a block are split by the adjoint Casimirs of the subgroup chain
//! `U(n−1) ⊃ U(n−2) ⊃ … ⊃ U(1)` acting on the trailing modes.

use std::collections::{BTreeMap, HashMap};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::{self, cluster_sorted, sorted_symmetric_eigen};
use crate::repr::{dim_adjoint_block, IrrepSpace};
use crate::{CMatrix, Error, Result};

/// Relative tolerance for grouping Casimir eigenvalues.
pub const CLUSTER_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TensorLabel {
    pub sigma: usize,
    pub weight: Vec<i64>,
    /// Rank of the copy among equal weights, ascending in the `U(n−1)`
    /// Casimir; the H-scalar copy at zero weight is 0.
    pub mult: usize,
}

#[derive(Clone, Debug)]
pub struct Tensor {
    pub label: TensorLabel,
    pub matrix: CMatrix,
    /// Eigenvalue of the `U(n−1)` adjoint Casimir.
    pub subgroup_casimir: f64,
}

#[derive(Clone, Debug)]
pub struct TensorFamily {
    space: IrrepSpace,
    tensors: Vec<Tensor>,
    lookup: HashMap<TensorLabel, usize>,
    zero_weight_invariant: Vec<usize>,
    hw_coeff: Vec<f64>,
    casimir: Vec<f64>,
    block_dims: Vec<usize>,
}

type SparseOp = HashMap<(usize, usize), f64>;

fn ad(space: &IrrepSpace, i: usize, j: usize, a: &SparseOp) -> SparseOp {
    let mut out = SparseOp::new();
    for (&(r, c), &v) in a {
        if let Some((r2, amp)) = space.ladder(i, j, r) {
            *out.entry((r2, c)).or_insert(0.0) += amp * v;
        }
        // ⟨c| E_ij = Σ_x ⟨x|E_ji|c⟩ ⟨x|
        if let Some((c2, amp)) = space.ladder(j, i, c) {
            *out.entry((r, c2)).or_insert(0.0) -= amp * v;
        }
    }
    out
}

/// `Σ_{i,j ∈ modes} ad(E_ij) ad(E_ji)` restricted to one weight sector.
fn sector_casimir(space: &IrrepSpace, elems: &[(usize, usize)], first_mode: usize) -> DMatrix<f64> {
    let pos: HashMap<(usize, usize), usize> =
        elems.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let m = elems.len();
    let mut k = DMatrix::zeros(m, m);
    for (col, &e) in elems.iter().enumerate() {
        let unit: SparseOp = [(e, 1.0)].into_iter().collect();
        for i in first_mode..space.n() {
            for j in first_mode..space.n() {
                let inner = ad(space, j, i, &unit);
                for (key, v) in ad(space, i, j, &inner) {
                    if v != 0.0 {
                        let row = pos[&key];
                        k[(row, col)] += v;
                    }
                }
            }
        }
    }
    // symmetric up to rounding in the amplitudes
    (&k + k.transpose()) * 0.5
}

/// Splits the span of `vectors` by the chain Casimirs `levels[depth..]`,
/// returning orthonormal vectors in ascending label order.
fn refine(levels: &[DMatrix<f64>], depth: usize, vectors: DMatrix<f64>) -> Vec<DVector<f64>> {
    if vectors.ncols() == 1 || depth == levels.len() {
        return vectors.column_iter().map(|c| c.into_owned()).collect();
    }
    let projected = vectors.transpose() * &levels[depth] * &vectors;
    let projected = (&projected + projected.transpose()) * 0.5;
    let (values, rot) = sorted_symmetric_eigen(projected);
    let rotated = &vectors * rot;
    let mut out = Vec::new();
    for range in cluster_sorted(&values, CLUSTER_TOL) {
        let sub = rotated.columns(range.start, range.len()).into_owned();
        out.extend(refine(levels, depth + 1, sub));
    }
    out
}

fn fix_phase(m: &mut DMatrix<f64>) {
    let max = m.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    // first entry in row-major order within rounding of the maximum
    'scan: for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            if m[(r, c)].abs() >= max - 1e-10 {
                if m[(r, c)] < 0.0 {
                    m.neg_mut();
                }
                break 'scan;
            }
        }
    }
}

impl TensorFamily {
    /// Builds the complete family for `space`.
    pub fn decompose(space: &IrrepSpace) -> Result<Self> {
        let n = space.n();
        let dim = space.dim();
        let basis = space.basis();

        let mut sectors: BTreeMap<Vec<i64>, Vec<(usize, usize)>> = BTreeMap::new();
        for r in 0..dim {
            for c in 0..dim {
                let diff: Vec<i64> = basis[r]
                    .nu()
                    .iter()
                    .zip(basis[c].nu())
                    .map(|(&a, &b)| a as i64 - b as i64)
                    .collect();
                sectors.entry(diff).or_default().push((r, c));
            }
        }

        struct Block {
            diff: Vec<i64>,
            casimir: f64,
            vectors: Vec<DVector<f64>>,
            sub_values: Vec<f64>,
        }
        let mut blocks = Vec::new();
        for (diff, elems) in &sectors {
            let k = sector_casimir(space, elems, 0);
            let (values, vecs) = sorted_symmetric_eigen(k);
            let chain: Vec<DMatrix<f64>> =
                (1..n).map(|f| sector_casimir(space, elems, f)).collect();
            for range in cluster_sorted(&values, CLUSTER_TOL) {
                let mean = values[range.clone()].iter().sum::<f64>() / range.len() as f64;
                let sub = vecs.columns(range.start, range.len()).into_owned();
                let vectors = refine(&chain, 0, sub);
                let sub_values = vectors.iter().map(|v| v.dot(&(&chain[0] * v))).collect();
                blocks.push(Block {
                    diff: diff.clone(),
                    casimir: mean,
                    vectors,
                    sub_values,
                });
            }
        }

        // σ by rank of the Casimir eigenvalue
        let mut distinct: Vec<f64> = blocks.iter().map(|b| b.casimir).collect();
        distinct.sort_by(f64::total_cmp);
        let casimir: Vec<f64> = cluster_sorted(&distinct, CLUSTER_TOL)
            .into_iter()
            .map(|r| distinct[r.start])
            .collect();
        let lambda = space.lambda();
        if casimir.len() != lambda + 1 {
            return Err(Error::Structure(format!(
                "found {} Casimir blocks, expected {}",
                casimir.len(),
                lambda + 1
            )));
        }
        let sigma_of = |v: f64| {
            casimir
                .iter()
                .position(|&c| (c - v).abs() <= CLUSTER_TOL * (1.0 + v.abs()) * 2.0)
                .expect("every block value belongs to a cluster")
        };

        let mut tensors = Vec::with_capacity(dim * dim);
        for b in &blocks {
            let sigma = sigma_of(b.casimir);
            let weight: Vec<i64> = b.diff.windows(2).map(|w| w[0] - w[1]).collect();
            let elems = &sectors[&b.diff];
            let zero = b.diff.iter().all(|&d| d == 0);
            for (mult, (v, &sub)) in b.vectors.iter().zip(&b.sub_values).enumerate() {
                let mut m = DMatrix::zeros(dim, dim);
                for (k, &(r, c)) in elems.iter().enumerate() {
                    m[(r, c)] = v[k];
                }
                let scalar = zero && sub.abs() < 1e-8;
                if scalar {
                    let hw = m[(0, 0)];
                    if hw.abs() < 1e-12 {
                        return Err(Error::PhaseFix(sigma));
                    }
                    if hw < 0.0 {
                        m.neg_mut();
                    }
                } else {
                    fix_phase(&mut m);
                }
                tensors.push(Tensor {
                    label: TensorLabel {
                        sigma,
                        weight: weight.clone(),
                        mult,
                    },
                    matrix: linalg::to_complex(&m),
                    subgroup_casimir: sub,
                });
            }
        }
        tensors.sort_by(|a, b| {
            (
                a.label.sigma,
                std::cmp::Reverse(&a.label.weight),
                std::cmp::Reverse(a.label.mult),
            )
                .cmp(&(
                    b.label.sigma,
                    std::cmp::Reverse(&b.label.weight),
                    std::cmp::Reverse(b.label.mult),
                ))
        });

        let mut block_dims = vec![0; lambda + 1];
        for t in &tensors {
            block_dims[t.label.sigma] += 1;
        }
        for (sigma, &got) in block_dims.iter().enumerate() {
            let want = dim_adjoint_block(n, sigma);
            if got != want {
                return Err(Error::Structure(format!(
                    "block sigma={sigma} has dimension {got}, expected {want}"
                )));
            }
        }

        let mut zero_weight_invariant = vec![usize::MAX; lambda + 1];
        for (k, t) in tensors.iter().enumerate() {
            let zero = t.label.weight.iter().all(|&w| w == 0);
            if zero && t.subgroup_casimir.abs() < 1e-8 {
                if zero_weight_invariant[t.label.sigma] != usize::MAX {
                    return Err(Error::Structure(format!(
                        "two H-invariant zero-weight tensors for sigma={}",
                        t.label.sigma
                    )));
                }
                zero_weight_invariant[t.label.sigma] = k;
            }
        }
        if let Some(sigma) = zero_weight_invariant.iter().position(|&k| k == usize::MAX) {
            return Err(Error::Structure(format!(
                "no H-invariant zero-weight tensor for sigma={sigma}"
            )));
        }
        let hw_coeff = zero_weight_invariant
            .iter()
            .map(|&k| tensors[k].matrix[(0, 0)].re)
            .collect();
        let lookup = tensors
            .iter()
            .enumerate()
            .map(|(k, t)| (t.label.clone(), k))
            .collect();

        Ok(Self {
            space: space.clone(),
            tensors,
            lookup,
            zero_weight_invariant,
            hw_coeff,
            casimir,
            block_dims,
        })
    }

    pub fn space(&self) -> &IrrepSpace {
        &self.space
    }

    pub fn tensors(&self) -> &[Tensor] {
        &self.tensors
    }

    pub fn get(&self, label: &TensorLabel) -> Option<&Tensor> {
        self.lookup.get(label).map(|&k| &self.tensors[k])
    }

    pub fn max_sigma(&self) -> usize {
        self.space.lambda()
    }

    /// `dim(σ,0,…,0,σ)` per σ as found by the decomposition.
    pub fn block_dims(&self) -> &[usize] {
        &self.block_dims
    }

    /// Adjoint Casimir eigenvalue per σ, strictly increasing.
    pub fn casimir_values(&self) -> &[f64] {
        &self.casimir
    }

    /// The `λ+1` tensors `T_{σ;00}` invariant under `U(n−1)`, by σ.
    pub fn zero_weight_invariant_tensors(&self) -> Vec<&CMatrix> {
        self.zero_weight_invariant
            .iter()
            .map(|&k| &self.tensors[k].matrix)
            .collect()
    }

    pub fn zero_weight_invariant_labels(&self) -> Vec<&TensorLabel> {
        self.zero_weight_invariant
            .iter()
            .map(|&k| &self.tensors[k].label)
            .collect()
    }

    /// Real diagonal of `T_{σ;00}`.
    pub fn zero_weight_diagonal(&self, sigma: usize) -> Vec<f64> {
        let t = &self.tensors[self.zero_weight_invariant[sigma]].matrix;
        t.diagonal().iter().map(|z| z.re).collect()
    }

    /// `C̃_σ = ⟨λ;h.w.| T_{σ;00} |λ;h.w.⟩`, positive by construction.
    pub fn highest_weight_coefficient(&self, sigma: usize) -> Result<f64> {
        let c = *self.hw_coeff.get(sigma).ok_or_else(|| {
            Error::Structure(format!(
                "sigma={sigma} exceeds lambda={}",
                self.space.lambda()
            ))
        })?;
        if c.abs() < 1e-12 {
            return Err(Error::PhaseFix(sigma));
        }
        Ok(c)
    }

    pub fn highest_weight_coefficients(&self) -> &[f64] {
        &self.hw_coeff
    }

    /// Components `Tr(T_a† X)` in family order.
    pub fn expand(&self, x: &CMatrix) -> Vec<Complex64> {
        self.tensors
            .iter()
            .map(|t| linalg::hs_inner(&t.matrix, x))
            .collect()
    }

    pub fn resum(&self, coeffs: &[Complex64]) -> CMatrix {
        let d = self.space.dim();
        let mut out = CMatrix::zeros(d, d);
        for (t, &c) in self.tensors.iter().zip(coeffs) {
            out += &t.matrix * c;
        }
        out
    }

    /// Projection of `x` onto the block σ.
    pub fn block_projection(&self, x: &CMatrix, sigma: usize) -> CMatrix {
        let d = self.space.dim();
        let mut out = CMatrix::zeros(d, d);
        for t in self.tensors.iter().filter(|t| t.label.sigma == sigma) {
            out += &t.matrix * linalg::hs_inner(&t.matrix, x);
        }
        out
    }
}

/// `max_{a,b} |Tr(T_a† T_b) − δ_ab|`.
pub fn verify_trace_orthonormality(family: &TensorFamily) -> f64 {
    let d2 = family.space().dim().pow(2);
    let mut stack = CMatrix::zeros(d2, family.tensors().len());
    for (k, t) in family.tensors().iter().enumerate() {
        stack.set_column(k, &DVector::from_iterator(d2, t.matrix.iter().copied()));
    }
    let gram = stack.adjoint() * &stack;
    let eye = CMatrix::identity(gram.nrows(), gram.ncols());
    linalg::max_abs(&(gram - eye))
}
