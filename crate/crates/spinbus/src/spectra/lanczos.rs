//! Matrix-free Lanczos for the lowest eigenpairs of a real symmetric
//! operator, with full reorthogonalization.
//!
//! Intended for sector blocks that are too large to diagonalize densely
//! (dimensions up to ~10^4 here). The basis is kept in memory, so the cost is
//! O(dim·iters) memory and O(dim·iters²) reorthogonalization work; both are
//! negligible at these sizes compared to robustness.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Converged extremal eigenpairs, ascending, with true residual norms.
#[derive(Debug, Clone)]
pub struct LanczosReport {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<f64>>,
    pub residuals: Vec<f64>,
    pub iterations: usize,
}

/// Deterministic start vector (splitmix64 stream, fixed seed).
fn start_vector(dim: usize, seed: u64) -> Vec<f64> {
    let mut state = seed ^ 0x9e37_79b9_7f4a_7c15;
    let mut next = move || {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    };
    (0..dim)
        .map(|_| (next() >> 11) as f64 / (1u64 << 53) as f64 - 0.5)
        .collect()
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
    norm
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Lowest `want` eigenpairs of the operator given by `apply`.
///
/// `scale` should be a rough bound on the spectral radius; convergence is
/// declared when every wanted Ritz residual estimate drops below `tol·scale`,
/// and the true residuals are checked before returning.
pub fn lowest_eigenpairs<F>(
    apply: F,
    dim: usize,
    want: usize,
    scale: f64,
    tol: f64,
) -> Result<LanczosReport>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    if want == 0 || dim == 0 {
        return Err(Error::domain("empty Lanczos request".to_string()));
    }
    if want > dim {
        return Err(Error::domain(format!(
            "requested {want} eigenpairs from a dimension-{dim} block"
        )));
    }
    let max_iter = dim.min(600.max(8 * want));
    let scale = scale.max(1e-300);

    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(max_iter);
    let mut alphas: Vec<f64> = Vec::with_capacity(max_iter);
    let mut betas: Vec<f64> = Vec::with_capacity(max_iter);

    let mut v = start_vector(dim, 0x5eed_0001);
    normalize(&mut v);
    basis.push(v);

    let mut converged_at = None;
    for j in 0..max_iter {
        let mut w = apply(&basis[j]);
        let alpha = dot(&w, &basis[j]);
        alphas.push(alpha);
        // full reorthogonalization, twice for numerical safety
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&w, b);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        let beta = normalize(&mut w);
        if beta <= 1e-13 * scale {
            // invariant subspace found; the Krylov space is exhausted
            converged_at = Some(j + 1);
            break;
        }
        betas.push(beta);

        let steps = j + 1;
        if steps >= want && (steps % 5 == 0 || steps == max_iter) {
            let (theta, s) = tridiag_eigen(&alphas, &betas[..steps - 1]);
            let ok = (0..want).all(|i| {
                let est = betas[steps - 1] * s[(steps - 1, i)].abs();
                est <= tol * scale
            });
            if ok {
                converged_at = Some(steps);
                let _ = theta;
                break;
            }
        }
        basis.push(w);
    }

    let steps = converged_at.unwrap_or(alphas.len());
    let (theta, s) = tridiag_eigen(&alphas[..steps], &betas[..steps.saturating_sub(1)]);
    if steps < want {
        return Err(Error::Convergence {
            summary: "Lanczos exhausted its iteration budget".to_string(),
            residual: f64::NAN,
            iterations: steps,
        });
    }

    let mut eigenvalues = Vec::with_capacity(want);
    let mut eigenvectors = Vec::with_capacity(want);
    let mut residuals = Vec::with_capacity(want);
    for i in 0..want {
        let mut vec = vec![0.0; dim];
        for (j, b) in basis.iter().take(steps).enumerate() {
            let c = s[(j, i)];
            for (vi, bi) in vec.iter_mut().zip(b) {
                *vi += c * bi;
            }
        }
        normalize(&mut vec);
        let hv = apply(&vec);
        let mut res = 0.0;
        for (x, y) in hv.iter().zip(&vec) {
            res += (x - theta[i] * y).powi(2);
        }
        let res = res.sqrt();
        if res > 10.0 * tol * scale {
            return Err(Error::Convergence {
                summary: format!("Lanczos eigenpair {i} did not converge"),
                residual: res,
                iterations: steps,
            });
        }
        eigenvalues.push(theta[i]);
        eigenvectors.push(vec);
        residuals.push(res);
    }

    Ok(LanczosReport {
        eigenvalues,
        eigenvectors,
        residuals,
        iterations: steps,
    })
}

/// Eigendecomposition of the symmetric tridiagonal (alphas, betas), ascending.
/// Returns (eigenvalues, eigenvector matrix with columns in the same order).
fn tridiag_eigen(alphas: &[f64], betas: &[f64]) -> (Vec<f64>, DMatrix<f64>) {
    let n = alphas.len();
    let mut t = DMatrix::zeros(n, n);
    for i in 0..n {
        t[(i, i)] = alphas[i];
        if i + 1 < n {
            t[(i, i + 1)] = betas[i];
            t[(i + 1, i)] = betas[i];
        }
    }
    let eig = t.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(i));
    }
    (values, vectors)
}
