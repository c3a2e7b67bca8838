//! Deterministic averaging over the uniform sphere measure.
//!
//! Gauss-Legendre nodes in cos(theta) crossed with a uniform azimuthal
//! grid. The game integrands are low-degree polynomials (or smooth
//! rational functions) of the Bloch components, so the default order
//! converges far below 1e-8.

use crate::bloch::BlochVector;

/// Gauss-Legendre nodes and weights on [-1, 1].
///
/// Roots of P_n found by Newton iteration from the Chebyshev estimates;
/// weights 2 / ((1 - x^2) P_n'(x)^2).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "need at least two nodes");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Average of `f` over the uniform measure on the unit sphere.
pub fn sphere_average<F: FnMut(&BlochVector) -> f64>(
    n_polar: usize,
    n_azimuth: usize,
    mut f: F,
) -> f64 {
    let (nodes, weights) = gauss_legendre(n_polar);
    let mut total = 0.0;
    for (u, w) in nodes.iter().zip(weights.iter()) {
        let sin_theta = (1.0 - u * u).max(0.0).sqrt();
        let mut ring = 0.0;
        for k in 0..n_azimuth {
            let phi = std::f64::consts::TAU * k as f64 / n_azimuth as f64;
            let v = BlochVector::new(sin_theta * phi.cos(), sin_theta * phi.sin(), *u);
            ring += f(&v);
        }
        total += w * ring / n_azimuth as f64;
    }
    // Gauss-Legendre weights sum to 2; the uniform measure normalizes it away.
    total / 2.0
}
