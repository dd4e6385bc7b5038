//! One-dimensional rules the coset grids are assembled from.

use std::f64::consts::PI;

/// Gauss-Legendre nodes and weights on `[-1, 1]`, nodes ascending.
///
/// Newton iteration on `P_n` from the Chebyshev-like initial guess; exact
/// for polynomials of degree `2n - 1`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

/// Equispaced periodic trapezoid rule on `[0, 2π)`; exact for
/// trigonometric polynomials with frequencies `|k| < n`.
pub fn periodic_trapezoid(n: usize) -> (Vec<f64>, f64) {
    assert!(n >= 1, "trapezoid rule needs at least one node");
    let h = 2.0 * PI / n as f64;
    ((0..n).map(|k| k as f64 * h).collect(), h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_monomials_exactly() {
        for n in 1..=12 {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
            for deg in 0..2 * n {
                let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let want = if deg % 2 == 1 {
                    0.0
                } else {
                    2.0 / (deg as f64 + 1.0)
                };
                assert!(
                    (got - want).abs() < 1e-13,
                    "n={n} deg={deg}: {got} vs {want}"
                );
            }
            assert!(x.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn trapezoid_kills_nonzero_frequencies() {
        let n = 7;
        let (nodes, h) = periodic_trapezoid(n);
        for k in 1..n as i32 {
            let s: f64 = nodes.iter().map(|t| (k as f64 * t).cos() * h).sum();
            assert!(s.abs() < 1e-13);
        }
        assert!((h * n as f64 - 2.0 * PI).abs() < 1e-15);
    }
}
