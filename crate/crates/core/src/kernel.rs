//! Generalized characters, the overlap matrix `g`, the coefficient
//! families `F^(s)`, `c^(s)`, `G^(s)`, the scalar function `f^(s)(ω)` and
//! the diagonal operator `P̂^(s)`.

use std::f64::consts::PI;

use nalgebra::{Cholesky, DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg;
use crate::repr::{coset_volume, dim_adjoint_block};
use crate::tensor::TensorFamily;
use crate::{CMatrix, Error, Result};

/// Which diagonal generator `e^{iωh}` is expanded in.
///
/// `Generic` uses `h₁ = diag(n−1,−1,…,−1)`. `SpinHalf` (SU(2) only) uses
/// `S_z = h₁/2`, the spin convention. `P̂^(s)`, `g`, `F` and `c` do not
/// depend on the choice; `χ̃` and `f` are reparametrised.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CartanConvention {
    #[default]
    Generic,
    SpinHalf,
}

impl CartanConvention {
    fn scale(self, n: usize) -> f64 {
        match self {
            CartanConvention::SpinHalf if n == 2 => 0.5,
            _ => 1.0,
        }
    }
}

/// Fourier data of `χ̃_σ(ω) = Σ_k t_{σ,k} e^{iω e_k}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChiTable {
    /// Distinct eigenvalues `e_k` of the Cartan element, descending.
    pub exponents: Vec<f64>,
    /// `coeffs[σ][k] = t_{σ,k}`.
    pub coeffs: Vec<Vec<f64>>,
    /// Eigenvalue of each basis state, in basis order.
    pub state_exponents: Vec<f64>,
}

impl ChiTable {
    pub fn new(family: &TensorFamily, convention: CartanConvention) -> Self {
        let space = family.space();
        let scale = convention.scale(space.n());
        let state_exponents: Vec<f64> = space.h1_diagonal().iter().map(|e| e * scale).collect();
        let mut exponents = state_exponents.clone();
        exponents.sort_by(|a, b| b.total_cmp(a));
        exponents.dedup();
        let coeffs = (0..=family.max_sigma())
            .map(|sigma| {
                let diag = family.zero_weight_diagonal(sigma);
                exponents
                    .iter()
                    .map(|&e| {
                        diag.iter()
                            .zip(&state_exponents)
                            .filter(|(_, &se)| se == e)
                            .map(|(t, _)| *t)
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Self {
            exponents,
            coeffs,
            state_exponents,
        }
    }

    pub fn num_sigma(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, sigma: usize, omega: f64) -> Complex64 {
        self.coeffs[sigma]
            .iter()
            .zip(&self.exponents)
            .map(|(t, e)| Complex64::from_polar(*t, omega * e))
            .sum()
    }

    /// `max e_k − min e_k`.
    pub fn spread(&self) -> f64 {
        self.exponents.first().unwrap_or(&0.0) - self.exponents.last().unwrap_or(&0.0)
    }
}

/// `χ̃_σ(ω) = Tr[e^{iωh₁} T_{σ;00}†]` with the generic `h₁`.
pub fn chi_tilde(family: &TensorFamily, sigma: usize, omega: f64) -> Complex64 {
    ChiTable::new(family, CartanConvention::Generic).eval(sigma, omega)
}

/// `g_{σσ′} = ∫₀^{2π} χ̃_σ χ̃*_{σ′} dω`, exact from the Fourier data.
pub fn overlap_matrix(chi: &ChiTable) -> DMatrix<f64> {
    let m = chi.num_sigma();
    DMatrix::from_fn(m, m, |a, b| {
        2.0 * PI
            * chi.coeffs[a]
                .iter()
                .zip(&chi.coeffs[b])
                .map(|(x, y)| x * y)
                .sum::<f64>()
    })
}

/// `F^(s)_σ = C̃_σ^{−s} / [dim λ · dim σ]^{(s+1)/2}`.
pub fn analysis_coefficients(family: &TensorFamily, s: f64) -> Result<Vec<f64>> {
    let n = family.space().n();
    let dim_l = family.space().dim() as f64;
    (0..=family.max_sigma())
        .map(|sigma| {
            let c = family.highest_weight_coefficient(sigma)?;
            if c <= 0.0 {
                return Err(Error::NonPositiveCoefficient { sigma, value: c });
            }
            let dim_s = dim_adjoint_block(n, sigma) as f64;
            Ok((-s * c.ln() - 0.5 * (s + 1.0) * (dim_l * dim_s).ln()).exp())
        })
        .collect()
}

/// Solves `g c = F` by Cholesky.
pub fn c_coefficients(g: &DMatrix<f64>, f: &[f64]) -> Result<DVector<f64>> {
    let chol = Cholesky::new(g.clone()).ok_or(Error::SingularOverlap)?;
    Ok(chol.solve(&DVector::from_column_slice(f)))
}

/// `f^(s)(ω) = Σ_σ c_σ χ̃*_σ(ω)`.
pub fn f_eval(chi: &ChiTable, c: &DVector<f64>, omega: f64) -> Complex64 {
    (0..chi.num_sigma())
        .map(|sigma| chi.eval(sigma, omega).conj() * c[sigma])
        .sum()
}

/// `G^(s)_σ = dim σ / (vol · F^(−s)_σ)`: the synthesis coefficients that
/// make reconstruction from `s`-symbols exact when used at `−s`.
pub fn synthesis_coefficients(family: &TensorFamily, s: f64) -> Result<Vec<f64>> {
    let n = family.space().n();
    let vol = coset_volume(n);
    let f_dual = analysis_coefficients(family, -s)?;
    Ok(f_dual
        .iter()
        .enumerate()
        .map(|(sigma, f)| dim_adjoint_block(n, sigma) as f64 / (vol * f))
        .collect())
}

/// `N^λ = 1 / (vol · dim λ)`.
pub fn normalization_constant(family: &TensorFamily) -> f64 {
    1.0 / (coset_volume(family.space().n()) * family.space().dim() as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// `Σ_σ F^(s)_σ T_{σ;00}`.
    Direct,
    /// `∫₀^{2π} e^{iωh₁} f^(s)(ω) dω` by the periodic trapezoid rule.
    Integral,
}

/// Tolerance for [`p_operator_checked`].
pub const ROUTE_TOL: f64 = 1e-10;

/// `Σ_σ coeffs[σ] T_{σ;00}`.
pub fn diagonal_combination(family: &TensorFamily, coeffs: &[f64]) -> CMatrix {
    let d = family.space().dim();
    let mut out = CMatrix::zeros(d, d);
    for (t, &c) in family
        .zero_weight_invariant_tensors()
        .into_iter()
        .zip(coeffs)
    {
        out += t * Complex64::new(c, 0.0);
    }
    out
}

pub fn p_operator(family: &TensorFamily, s: f64, route: Route) -> Result<CMatrix> {
    p_operator_with(family, s, route, CartanConvention::Generic)
}

pub fn p_operator_with(
    family: &TensorFamily,
    s: f64,
    route: Route,
    convention: CartanConvention,
) -> Result<CMatrix> {
    let f = analysis_coefficients(family, s)?;
    match route {
        Route::Direct => Ok(diagonal_combination(family, &f)),
        Route::Integral => {
            let chi = ChiTable::new(family, convention);
            let c = c_coefficients(&overlap_matrix(&chi), &f)?;
            let nodes = (2.0 * chi.spread()).ceil() as usize + 3;
            let h = 2.0 * PI / nodes as f64;
            let d = family.space().dim();
            let mut diag = vec![Complex64::new(0.0, 0.0); d];
            for k in 0..nodes {
                let omega = k as f64 * h;
                let fw = f_eval(&chi, &c, omega) * h;
                for (acc, e) in diag.iter_mut().zip(&chi.state_exponents) {
                    *acc += Complex64::from_polar(1.0, omega * e) * fw;
                }
            }
            Ok(linalg::diag_complex(&diag))
        }
    }
}

/// Both routes; fails if they disagree by more than [`ROUTE_TOL`].
pub fn p_operator_checked(family: &TensorFamily, s: f64) -> Result<CMatrix> {
    let direct = p_operator(family, s, Route::Direct)?;
    let integral = p_operator(family, s, Route::Integral)?;
    let gap = linalg::frobenius(&(&direct - &integral));
    if gap > ROUTE_TOL {
        return Err(Error::Structure(format!(
            "direct and integral P(s={s}) differ by {gap:e}"
        )));
    }
    Ok(direct)
}

/// Every `s`-dependent quantity for one ordering parameter.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KernelCoefficients {
    pub s: f64,
    pub convention: CartanConvention,
    pub chi: ChiTable,
    /// Overlap matrix, row-major.
    pub g: Vec<Vec<f64>>,
    /// Analysis coefficients `F^(s)_σ`.
    pub f: Vec<f64>,
    /// Synthesis coefficients `G^(s)_σ`.
    pub synthesis: Vec<f64>,
    /// Expansion coefficients `c^(s)_σ` of `f^(s)(ω)`.
    pub c: Vec<f64>,
    pub hw_coeff: Vec<f64>,
    pub p_diagonal: Vec<f64>,
    pub normalization_constant: f64,
}

impl KernelCoefficients {
    pub fn compute(family: &TensorFamily, s: f64, convention: CartanConvention) -> Result<Self> {
        let chi = ChiTable::new(family, convention);
        let g = overlap_matrix(&chi);
        let f = analysis_coefficients(family, s)?;
        let c = c_coefficients(&g, &f)?;
        let p = p_operator_with(family, s, Route::Direct, convention)?;
        Ok(Self {
            s,
            convention,
            g: g.row_iter().map(|r| r.iter().copied().collect()).collect(),
            synthesis: synthesis_coefficients(family, s)?,
            c: c.iter().copied().collect(),
            hw_coeff: family.highest_weight_coefficients().to_vec(),
            p_diagonal: p.diagonal().iter().map(|z| z.re).collect(),
            normalization_constant: normalization_constant(family),
            chi,
            f,
        })
    }

    pub fn f_at(&self, omega: f64) -> Complex64 {
        f_eval(&self.chi, &DVector::from_column_slice(&self.c), omega)
    }
}
