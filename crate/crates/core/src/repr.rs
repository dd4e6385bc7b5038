//! The symmetric irrep `(λ,0,…,0)` of SU(n) realised on degree-λ bosonic
//! monomials in `n` modes, together with coset representatives and
//! quadrature grids on `SU(n)/U(n-1)`.
//!
//! Mode indices are 0-based throughout: mode 0 is the one singled out by
//! the highest weight `[λ,0,…,0]`.

use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::linalg::{self, HermitianExp};
use crate::quadrature::{gauss_legendre, periodic_trapezoid};
use crate::{CMatrix, Error, Result};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// `dim(λ,0,…,0) = C(λ+n-1, n-1)`.
pub fn dim_symmetric(n: usize, lambda: usize) -> usize {
    assert!(n >= 2, "SU(n) needs n >= 2");
    binomial(lambda + n - 1, n - 1)
}

/// Dimension of the block `(σ,0,…,0,σ)` inside `λ ⊗ λ*`.
pub fn dim_adjoint_block(n: usize, sigma: usize) -> usize {
    let d = dim_symmetric(n, sigma);
    let lower = if sigma == 0 {
        0
    } else {
        dim_symmetric(n, sigma - 1)
    };
    d * d - lower * lower
}

/// Volume of `SU(n)/U(n-1)` under the coset measure used by the grids:
/// `4π` for the sphere, `4π²` for SU(3), `2^n π^{n-1}/(n-1)!` in general.
pub fn coset_volume(n: usize) -> f64 {
    let k = (n - 1) as i32;
    let fact: f64 = (1..n).map(|i| i as f64).product();
    2f64.powi(n as i32) * PI.powi(k) / fact
}

/// Occupation numbers `[ν₁,…,ν_n]` of one basis monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Occupation(pub Vec<usize>);

impl Occupation {
    pub fn nu(&self) -> &[usize] {
        &self.0
    }

    /// Cartan weight `ν_i − ν_{i+1}`, `i = 1…n-1`.
    pub fn weight(&self) -> Vec<i64> {
        self.0
            .windows(2)
            .map(|w| w[0] as i64 - w[1] as i64)
            .collect()
    }

    /// Eigenvalue of `h₁ = diag(n-1,-1,…,-1)` on this state.
    pub fn h1(&self) -> i64 {
        let n = self.0.len() as i64;
        let lambda: usize = self.0.iter().sum();
        n * self.0[0] as i64 - lambda as i64
    }

    /// SU(3) multiplicity label `I₂₃ = (ν₂+ν₃)/2`, returned doubled.
    pub fn twice_isospin(&self) -> usize {
        self.0[1..].iter().sum()
    }
}

/// All compositions of `lambda` into `n` parts, descending lexicographic.
pub fn enumerate_basis(n: usize, lambda: usize) -> Vec<Occupation> {
    fn fill(rest: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<Occupation>) {
        if slots == 1 {
            prefix.push(rest);
            out.push(Occupation(prefix.clone()));
            prefix.pop();
            return;
        }
        for k in (0..=rest).rev() {
            prefix.push(k);
            fill(rest - k, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(dim_symmetric(n, lambda));
    fill(lambda, n, &mut Vec::with_capacity(n), &mut out);
    out
}

/// The irrep `(λ,0,…,0)` of SU(n) with its ordered occupation basis.
#[derive(Clone, Debug)]
pub struct IrrepSpace {
    n: usize,
    lambda: usize,
    basis: Vec<Occupation>,
    index: HashMap<Vec<usize>, usize>,
    // exp(i b J_y) for the (0,1) and (1,2) mode pairs
    rot_y: Vec<HermitianExp>,
}

impl IrrepSpace {
    pub fn new(n: usize, lambda: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidIrrep {
                n,
                lambda,
                reason: "n must be at least 2",
            });
        }
        let basis = enumerate_basis(n, lambda);
        let index = basis
            .iter()
            .enumerate()
            .map(|(k, o)| (o.0.clone(), k))
            .collect();
        let mut space = Self {
            n,
            lambda,
            basis,
            index,
            rot_y: Vec::new(),
        };
        space.rot_y = (0..n.min(3) - 1)
            .map(|j| HermitianExp::new(&space.su2_jy(j, j + 1)))
            .collect();
        Ok(space)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Occupation] {
        &self.basis
    }

    pub fn index_of(&self, nu: &[usize]) -> Option<usize> {
        self.index.get(nu).copied()
    }

    /// Index of `|λ; h.w.⟩ = [λ,0,…,0]`; always 0 in this ordering.
    pub fn highest_weight_index(&self) -> usize {
        0
    }

    fn check_mode(&self, i: usize) -> Result<()> {
        if i >= self.n {
            Err(Error::ModeIndex {
                index: i,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// `E_ij |ν⟩ = √((ν_i+1)ν_j) |ν + e_i − e_j⟩`, as (target index, amplitude).
    /// For `i == j` this is the number operator.
    pub fn ladder(&self, i: usize, j: usize, state: usize) -> Option<(usize, f64)> {
        let nu = &self.basis[state].0;
        if i == j {
            return (nu[i] > 0).then_some((state, nu[i] as f64));
        }
        if nu[j] == 0 {
            return None;
        }
        let mut target = nu.clone();
        target[i] += 1;
        target[j] -= 1;
        let amp = ((nu[i] + 1) as f64 * nu[j] as f64).sqrt();
        Some((self.index[&target], amp))
    }

    pub(crate) fn generator_real(&self, i: usize, j: usize) -> DMatrix<f64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for col in 0..d {
            if let Some((row, amp)) = self.ladder(i, j, col) {
                m[(row, col)] = amp;
            }
        }
        m
    }

    /// Bosonic generator `E_ij = a_i† a_j`; `(E_ij)† = E_ji`.
    pub fn generator_matrix(&self, i: usize, j: usize) -> Result<CMatrix> {
        self.check_mode(i)?;
        self.check_mode(j)?;
        Ok(linalg::to_complex(&self.generator_real(i, j)))
    }

    /// Diagonal of `h₁`, i.e. `n·ν₁ − λ` per basis state.
    pub fn h1_diagonal(&self) -> Vec<f64> {
        self.basis.iter().map(|o| o.h1() as f64).collect()
    }

    pub fn cartan_h1(&self) -> CMatrix {
        let d: Vec<Complex64> = self
            .h1_diagonal()
            .into_iter()
            .map(|x| Complex64::new(x, 0.0))
            .collect();
        linalg::diag_complex(&d)
    }

    /// `h_k = E_kk − E_{k+1,k+1}`, `k = 0…n-2`.
    pub fn cartan(&self, k: usize) -> Result<CMatrix> {
        self.check_mode(k + 1)?;
        let d: Vec<Complex64> = self
            .basis
            .iter()
            .map(|o| Complex64::new(o.0[k] as f64 - o.0[k + 1] as f64, 0.0))
            .collect();
        Ok(linalg::diag_complex(&d))
    }

    fn su2_jy(&self, j: usize, k: usize) -> CMatrix {
        // J_y = (E_jk − E_kj) / 2i
        let a = self.generator_real(j, k) - self.generator_real(k, j);
        a.map(|x| Complex64::new(0.0, -0.5 * x))
    }

    /// `R_jk(a,b,c) = e^{iaJ_z} e^{ibJ_y} e^{icJ_z}` on mode pair `(j, j+1)`,
    /// `J_z = (E_jj − E_kk)/2`.
    fn euler_rotation(&self, pair: usize, a: f64, b: f64, c: f64) -> CMatrix {
        let mut m = self.rot_y[pair].at(b);
        let jz: Vec<f64> = self
            .basis
            .iter()
            .map(|o| 0.5 * (o.0[pair] as f64 - o.0[pair + 1] as f64))
            .collect();
        for r in 0..m.nrows() {
            for col in 0..m.ncols() {
                m[(r, col)] *= Complex64::from_polar(1.0, a * jz[r] + c * jz[col]);
            }
        }
        m
    }

    /// Coset representative `Λ(Ω)` in this irrep.
    pub fn coset_element(&self, p: &CosetPoint) -> Result<GroupElement> {
        p.validate(self.n)?;
        let matrix = match *p {
            CosetPoint::Sphere { alpha, beta } => self.euler_rotation(0, alpha, beta, 0.0),
            CosetPoint::ProjectivePlane {
                alpha1,
                beta1,
                alpha2,
                beta2,
            } => {
                self.euler_rotation(1, alpha1, beta1, -alpha1)
                    * self.euler_rotation(0, alpha2, beta2, -alpha2)
            }
            CosetPoint::Haar { ref unitary } => self.symmetric_power(unitary)?,
        };
        Ok(GroupElement {
            matrix,
            params: p.clone(),
        })
    }

    /// Image of a defining-representation matrix `U` (n×n) in this irrep,
    /// from `a_j† → Σ_i U_ij a_i†` applied to each basis monomial.
    pub fn symmetric_power(&self, u: &CMatrix) -> Result<CMatrix> {
        if u.nrows() != self.n || u.ncols() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                got: u.nrows(),
            });
        }
        let d = self.dim();
        let mut out = CMatrix::zeros(d, d);
        for (col, occ) in self.basis.iter().enumerate() {
            let mut poly: HashMap<Vec<usize>, Complex64> = HashMap::new();
            poly.insert(vec![0; self.n], Complex64::new(1.0, 0.0));
            for (j, &count) in occ.0.iter().enumerate() {
                for _ in 0..count {
                    let mut next = HashMap::with_capacity(poly.len() * self.n);
                    for (mono, coef) in &poly {
                        for i in 0..self.n {
                            if u[(i, j)] == Complex64::new(0.0, 0.0) {
                                continue;
                            }
                            let mut m = mono.clone();
                            m[i] += 1;
                            *next.entry(m).or_insert(Complex64::new(0.0, 0.0)) += coef * u[(i, j)];
                        }
                    }
                    poly = next;
                }
            }
            let norm_in: f64 = occ.0.iter().map(|&k| factorial(k)).product::<f64>().sqrt();
            for (mono, coef) in poly {
                let row = self.index[&mono];
                let norm_out: f64 = mono.iter().map(|&k| factorial(k)).product::<f64>().sqrt();
                out[(row, col)] = coef * norm_out / norm_in;
            }
        }
        Ok(out)
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// A point of `SU(n)/U(n-1)`. The angles of the explicit charts are stored;
/// the stability-group angles are quotiented out.
#[derive(Clone, Debug, PartialEq)]
pub enum CosetPoint {
    /// SU(2): `e^{iαS_z} e^{iβS_y}`, `0 ≤ α < 2π`, `0 ≤ β ≤ π`.
    Sphere { alpha: f64, beta: f64 },
    /// SU(3): `R₂₃(α₁,β₁,−α₁) R₁₂(α₂,β₂,−α₂)`.
    ProjectivePlane {
        alpha1: f64,
        beta1: f64,
        alpha2: f64,
        beta2: f64,
    },
    /// SU(n), n ≥ 4: a defining-representation unitary whose first column
    /// is the coherent-state direction.
    Haar { unitary: CMatrix },
}

impl CosetPoint {
    pub fn identity(n: usize) -> Self {
        match n {
            2 => CosetPoint::Sphere {
                alpha: 0.0,
                beta: 0.0,
            },
            3 => CosetPoint::ProjectivePlane {
                alpha1: 0.0,
                beta1: 0.0,
                alpha2: 0.0,
                beta2: 0.0,
            },
            _ => CosetPoint::Haar {
                unitary: CMatrix::identity(n, n),
            },
        }
    }

    pub fn group_n(&self) -> usize {
        match self {
            CosetPoint::Sphere { .. } => 2,
            CosetPoint::ProjectivePlane { .. } => 3,
            CosetPoint::Haar { unitary } => unitary.nrows(),
        }
    }

    /// Chart angles in storage order (`α, β` or `α₁, β₁, α₂, β₂`).
    pub fn angles(&self) -> Vec<f64> {
        match *self {
            CosetPoint::Sphere { alpha, beta } => vec![alpha, beta],
            CosetPoint::ProjectivePlane {
                alpha1,
                beta1,
                alpha2,
                beta2,
            } => vec![alpha1, beta1, alpha2, beta2],
            CosetPoint::Haar { .. } => Vec::new(),
        }
    }

    pub fn from_angles(n: usize, a: &[f64]) -> Result<Self> {
        let p = match (n, a.len()) {
            (2, 2) => CosetPoint::Sphere {
                alpha: a[0],
                beta: a[1],
            },
            (3, 4) => CosetPoint::ProjectivePlane {
                alpha1: a[0],
                beta1: a[1],
                alpha2: a[2],
                beta2: a[3],
            },
            _ => return Err(Error::NoExactGrid(n)),
        };
        p.validate(n)?;
        Ok(p)
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.group_n() != n {
            return Err(Error::PointMismatch {
                expected: n,
                got: self.group_n(),
            });
        }
        let azimuth = |name, v: f64| {
            if (0.0..2.0 * PI).contains(&v) {
                Ok(())
            } else {
                Err(Error::AngleRange { name, value: v })
            }
        };
        let polar = |name, v: f64| {
            if (0.0..=PI).contains(&v) {
                Ok(())
            } else {
                Err(Error::AngleRange { name, value: v })
            }
        };
        match *self {
            CosetPoint::Sphere { alpha, beta } => {
                azimuth("alpha", alpha)?;
                polar("beta", beta)
            }
            CosetPoint::ProjectivePlane {
                alpha1,
                beta1,
                alpha2,
                beta2,
            } => {
                azimuth("alpha1", alpha1)?;
                polar("beta1", beta1)?;
                azimuth("alpha2", alpha2)?;
                polar("beta2", beta2)
            }
            CosetPoint::Haar { ref unitary } => {
                if linalg::unitarity_defect(unitary) > 1e-10 {
                    Err(Error::Structure("Haar coset point is not unitary".into()))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Recovers the chart point whose representative has the same first
    /// column as `u` up to a phase, i.e. the coset `u·U(n-1)`.
    pub fn from_defining(u: &CMatrix) -> Result<Self> {
        let n = u.nrows();
        // Λ_def e₁ = c₂ e₁ − e^{-iα₂} s₂ (c₁ e₂ − e^{-iα₁} s₁ e₃)  (n = 3)
        // Λ_def e₁ = c e₁ − e^{-iα} s e₂                          (n = 2)
        let phase = if u[(0, 0)].norm() > 0.0 {
            u[(0, 0)].conj() / u[(0, 0)].norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let z: Vec<Complex64> = (0..n).map(|i| u[(i, 0)] * phase).collect();
        let c = z[0].re.clamp(-1.0, 1.0);
        let wrap = |a: f64| {
            let w = a.rem_euclid(2.0 * PI);
            if w >= 2.0 * PI {
                0.0
            } else {
                w
            }
        };
        let arg_or_zero = |w: Complex64| if w.norm() > 1e-300 { w.arg() } else { 0.0 };
        match n {
            2 => Ok(CosetPoint::Sphere {
                alpha: wrap(-arg_or_zero(-z[1])),
                beta: (2.0 * c.acos()).clamp(0.0, PI),
            }),
            3 => {
                let alpha2 = wrap(-arg_or_zero(-z[1]));
                let alpha1 = wrap(-arg_or_zero(z[2]) - alpha2);
                Ok(CosetPoint::ProjectivePlane {
                    alpha1,
                    beta1: (2.0 * z[2].norm().atan2(z[1].norm())).clamp(0.0, PI),
                    alpha2,
                    beta2: (2.0 * c.acos()).clamp(0.0, PI),
                })
            }
            _ => Ok(CosetPoint::Haar { unitary: u.clone() }),
        }
    }

    /// The representative of this point in the defining `n×n` irrep.
    pub fn defining_matrix(&self) -> Result<CMatrix> {
        let n = self.group_n();
        Ok(IrrepSpace::new(n, 1)?.coset_element(self)?.matrix)
    }

    /// Uniformly random angles (or a Haar unitary for n ≥ 4).
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        match n {
            2 => CosetPoint::Sphere {
                alpha: rng.random_range(0.0..2.0 * PI),
                beta: rng.random_range(0.0..=PI),
            },
            3 => CosetPoint::ProjectivePlane {
                alpha1: rng.random_range(0.0..2.0 * PI),
                beta1: rng.random_range(0.0..=PI),
                alpha2: rng.random_range(0.0..2.0 * PI),
                beta2: rng.random_range(0.0..=PI),
            },
            _ => CosetPoint::Haar {
                unitary: haar_unitary(n, rng),
            },
        }
    }
}

/// `Λ(Ω)` together with the point it came from.
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub matrix: CMatrix,
    pub params: CosetPoint,
}

/// Haar-distributed U(n) matrix: QR of a complex Ginibre matrix with the
/// phases of `R`'s diagonal absorbed.
pub fn haar_unitary<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    let z = CMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    });
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for k in 0..n {
        let d = r[(k, k)];
        let ph = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let mut col = q.column_mut(k);
        col *= ph;
    }
    q
}

/// How a [`CosetGrid`] was built.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridKind {
    /// Tensor-product rule; resolution is `[n_α, n_β]` or
    /// `[n_α₁, n_β₁, n_α₂, n_β₂]`.
    Exact {
        resolution: Vec<usize>,
    },
    MonteCarlo {
        samples: usize,
        seed: u64,
    },
}

/// Quadrature nodes and weights realising `∫dΩ` on the coset.
#[derive(Clone, Debug)]
pub struct CosetGrid {
    pub n: usize,
    pub kind: GridKind,
    pub points: Vec<CosetPoint>,
    pub weights: Vec<f64>,
}

impl CosetGrid {
    /// Exact tensor-product grid (n = 2, 3).
    ///
    /// Azimuthal angles use the periodic trapezoid rule; `cos β` (and
    /// `cos β₁`) use Gauss-Legendre; for SU(3) the measure
    /// `cos(β₂/2) sin³(β₂/2) dβ₂` becomes `u du` with `u = sin²(β₂/2)`,
    /// integrated by Gauss-Legendre on `[0,1]`.
    pub fn exact(n: usize, resolution: &[usize]) -> Result<Self> {
        let want = match n {
            2 => 2,
            3 => 4,
            _ => return Err(Error::NoExactGrid(n)),
        };
        if resolution.len() != want || resolution.contains(&0) {
            return Err(Error::BadResolution(format!(
                "SU({n}) needs {want} positive per-angle counts, got {resolution:?}"
            )));
        }
        let mut points = Vec::new();
        let mut weights = Vec::new();
        if n == 2 {
            let (alphas, ha) = periodic_trapezoid(resolution[0]);
            let (x, w) = gauss_legendre(resolution[1]);
            for &alpha in &alphas {
                for (xi, wi) in x.iter().zip(&w) {
                    points.push(CosetPoint::Sphere {
                        alpha,
                        beta: xi.clamp(-1.0, 1.0).acos(),
                    });
                    weights.push(ha * wi);
                }
            }
        } else {
            let (a1, h1) = periodic_trapezoid(resolution[0]);
            let (x1, w1) = gauss_legendre(resolution[1]);
            let (a2, h2) = periodic_trapezoid(resolution[2]);
            let (x2, w2) = gauss_legendre(resolution[3]);
            // u in [0,1]: node (x+1)/2, weight w/2, measure u du
            let polar2: Vec<(f64, f64)> = x2
                .iter()
                .zip(&w2)
                .map(|(x, w)| {
                    let u = 0.5 * (x + 1.0);
                    (2.0 * u.sqrt().asin(), 0.5 * w * u)
                })
                .collect();
            for &alpha1 in &a1 {
                for (xb, wb) in x1.iter().zip(&w1) {
                    let beta1 = xb.clamp(-1.0, 1.0).acos();
                    for &alpha2 in &a2 {
                        for &(beta2, wu) in &polar2 {
                            points.push(CosetPoint::ProjectivePlane {
                                alpha1,
                                beta1,
                                alpha2,
                                beta2,
                            });
                            weights.push(h1 * wb * h2 * wu);
                        }
                    }
                }
            }
        }
        Ok(Self {
            n,
            kind: GridKind::Exact {
                resolution: resolution.to_vec(),
            },
            points,
            weights,
        })
    }

    /// Equal-weight Haar samples, weights summing to [`coset_volume`].
    pub fn monte_carlo(n: usize, samples: usize, seed: u64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::BadResolution("need at least one sample".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points = (0..samples)
            .map(|_| CosetPoint::Haar {
                unitary: haar_unitary(n, &mut rng),
            })
            .collect();
        Ok(Self {
            n,
            kind: GridKind::MonteCarlo { samples, seed },
            points,
            weights: vec![coset_volume(n) / samples as f64; samples],
        })
    }

    /// Default resolution for irrep `λ`: `(4λ+3, 2λ+2)` in units of `j = λ/2`
    /// for SU(2), `(4λ+5, 2λ+3, 4λ+5, 2λ+3)` for SU(3).
    pub fn default_resolution(n: usize, lambda: usize) -> Option<Vec<usize>> {
        match n {
            2 => Some(vec![2 * lambda + 3, lambda + 2]),
            3 => Some(vec![
                4 * lambda + 5,
                2 * lambda + 3,
                4 * lambda + 5,
                2 * lambda + 3,
            ]),
            _ => None,
        }
    }

    /// Exact grid at the default resolution, or 4096 Haar samples for n ≥ 4.
    pub fn default_for(n: usize, lambda: usize, seed: u64) -> Result<Self> {
        match Self::default_resolution(n, lambda) {
            Some(r) => Self::exact(n, &r),
            None => Self::monte_carlo(n, 4096, seed),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.kind, GridKind::Exact { .. })
    }

    /// Largest total polynomial degree `D` (in the coherent-state
    /// amplitudes and their conjugates, each counted separately) that the
    /// grid integrates exactly. Products of two symbols of irrep `λ` need
    /// `D ≥ 2λ`. Monte Carlo grids return `None`.
    pub fn exact_degree(&self) -> Option<usize> {
        let GridKind::Exact { resolution } = &self.kind else {
            return None;
        };
        // azimuth: frequencies |k| ≤ D need n_α > D
        // polar: degree D in cos β (or u, plus one for the measure)
        //        needs 2 n_β − 1 ≥ D (or D + 1)
        let deg = match self.n {
            2 => (resolution[0] - 1).min(2 * resolution[1] - 1),
            _ => (resolution[0] - 1)
                .min(resolution[2] - 1)
                .min(2 * resolution[1] - 1)
                .min(2 * resolution[3] - 2),
        };
        Some(deg)
    }
}
