//! Eigenvalues of symmetric/Hermitian matrices, values only.
//!
//! The pipeline is the classical one: Householder similarity transforms
//! reduce a dense real-symmetric or complex-Hermitian matrix to a real
//! symmetric tridiagonal, whose eigenvalues are then found by the implicit
//! shift QL iteration. No eigenvectors are accumulated, so a dense solve is
//! O(n³) with a small constant and a tridiagonal solve is O(n²).
//!
//! A Hermitian tridiagonal matrix is diagonally-unitarily similar to the
//! real tridiagonal with the same diagonal and the moduli of its
//! off-diagonals, so the complex reduction only needs to deliver |e_k|.

use num::complex::Complex64;
use num::Zero;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum TridiagError {
    /// QL iteration failed to deflate an eigenvalue within the sweep budget.
    NoConvergence { index: usize },
}

impl fmt::Display for TridiagError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TridiagError::NoConvergence { index } => {
                write!(f, "QL iteration did not converge at row {index}")
            }
        }
    }
}

impl std::error::Error for TridiagError {}

/// Implicit-shift QL on (d, e); `e[i]` couples `d[i]` and `d[i+1]`, and
/// `e[n−1]` is workspace. On success `d` holds the eigenvalues (unsorted).
fn ql_implicit(d: &mut [f64], e: &mut [f64]) -> Result<(), TridiagError> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            // Locate the first negligible off-diagonal at or beyond l.
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(TridiagError::NoConvergence { index: l });
            }
            // Wilkinson-style shift from the leading 2×2.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut restart = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // Underflow in the rotation chain: recover and resweep.
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    restart = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if restart {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

fn sorted(mut vals: Vec<f64>) -> Vec<f64> {
    vals.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
    vals
}

/// Eigenvalues (ascending) of the symmetric tridiagonal matrix with diagonal
/// `d` and off-diagonal `e` (`e[i]` couples rows i and i+1; `e.len() ≥ d.len()`
/// with the last slot used as workspace).
pub(crate) fn symmetric_tridiagonal_eigenvalues(
    d: &[f64],
    e: &[f64],
) -> Result<Vec<f64>, TridiagError> {
    let n = d.len();
    let mut dd = d.to_vec();
    let mut ee = vec![0.0f64; n.max(1)];
    if n > 1 {
        ee[..n - 1].copy_from_slice(&e[..n - 1]);
    }
    ql_implicit(&mut dd, &mut ee)?;
    Ok(sorted(dd))
}

/// Eigenvalues (ascending) of a dense real symmetric matrix via Householder
/// reduction to tridiagonal form followed by QL.
// Index loops follow the classic in-place formulation, which interleaves
// reads and writes across rows in ways iterator adapters cannot express.
#[allow(clippy::needless_range_loop)]
pub(crate) fn symmetric_dense_eigenvalues(
    mut a: Vec<Vec<f64>>,
) -> Result<Vec<f64>, TridiagError> {
    let n = a.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut e = vec![0.0f64; n];
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0f64;
        if l > 0 {
            let mut scale = 0.0f64;
            for k in 0..=l {
                scale += a[i][k].abs();
            }
            if scale == 0.0 {
                e[i] = a[i][l];
            } else {
                for k in 0..=l {
                    a[i][k] /= scale;
                    h += a[i][k] * a[i][k];
                }
                let f = a[i][l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i][l] = f - g;
                let mut fsum = 0.0f64;
                for j in 0..=l {
                    let mut g2 = 0.0f64;
                    for k in 0..=j {
                        g2 += a[j][k] * a[i][k];
                    }
                    for k in j + 1..=l {
                        g2 += a[k][j] * a[i][k];
                    }
                    e[j] = g2 / h;
                    fsum += e[j] * a[i][j];
                }
                let hh = fsum / (h + h);
                for j in 0..=l {
                    let f2 = a[i][j];
                    let g2 = e[j] - hh * f2;
                    e[j] = g2;
                    for k in 0..=j {
                        a[j][k] -= f2 * e[k] + g2 * a[i][k];
                    }
                }
            }
        } else {
            e[i] = a[i][l];
        }
    }
    let mut d: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    // Shift e so slot i couples rows i and i+1, as ql_implicit expects.
    let mut ee = vec![0.0f64; n];
    ee[..n - 1].copy_from_slice(&e[1..]);
    ql_implicit(&mut d, &mut ee)?;
    Ok(sorted(d))
}

/// Eigenvalues (ascending) of a dense complex Hermitian matrix. The
/// Householder reflectors are applied in complex arithmetic; the resulting
/// Hermitian tridiagonal is passed on through its off-diagonal moduli.
// Index loops follow the classic in-place formulation, which interleaves
// reads and writes across rows in ways iterator adapters cannot express.
#[allow(clippy::needless_range_loop)]
pub(crate) fn hermitian_dense_eigenvalues(
    mut a: Vec<Vec<Complex64>>,
) -> Result<Vec<f64>, TridiagError> {
    let n = a.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    for i in (1..n).rev() {
        let l = i - 1;
        let norm2: f64 = (0..=l).map(|k| a[k][i].norm_sqr()).sum();
        if norm2 == 0.0 {
            continue;
        }
        let norm = norm2.sqrt();
        let sub = a[l][i];
        // Reflect the column above the diagonal onto σ·e_l with the phase
        // chosen so v_l = c_l − σ suffers no cancellation.
        let sigma = if sub.is_zero() {
            Complex64::new(-norm, 0.0)
        } else {
            -(sub / sub.norm()) * norm
        };
        let mut v: Vec<Complex64> = (0..=l).map(|k| a[k][i]).collect();
        v[l] -= sigma;
        let vtv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vtv == 0.0 {
            continue;
        }
        // Rank-two Hermitian update B ← B − v w† − w v† with
        // p = (2/v†v)·Bv and w = p − (v†p / v†v)·v.
        let beta = 2.0 / vtv;
        let mut p = vec![Complex64::zero(); l + 1];
        for (r, pr) in p.iter_mut().enumerate() {
            let mut acc = Complex64::zero();
            for k in 0..=l {
                acc += a[r][k] * v[k];
            }
            *pr = acc * beta;
        }
        let vtp: Complex64 = v.iter().zip(&p).map(|(vk, pk)| vk.conj() * pk).sum();
        let kk = vtp / vtv;
        let w: Vec<Complex64> = p.iter().zip(&v).map(|(pk, vk)| pk - kk * vk).collect();
        for r in 0..=l {
            for c in 0..=l {
                let delta = v[r] * w[c].conj() + w[r] * v[c].conj();
                a[r][c] -= delta;
            }
        }
        for k in 0..l {
            a[k][i] = Complex64::zero();
            a[i][k] = Complex64::zero();
        }
        a[l][i] = sigma;
        a[i][l] = sigma.conj();
    }
    let mut d: Vec<f64> = (0..n).map(|i| a[i][i].re).collect();
    let mut e = vec![0.0f64; n];
    for i in 0..n - 1 {
        e[i] = a[i][i + 1].norm();
    }
    ql_implicit(&mut d, &mut e)?;
    Ok(sorted(d))
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)] // index loops build small dense test matrices
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn diagonal_matrix_is_its_own_spectrum() {
        let d = [3.0, -1.0, 7.5, 0.25];
        let e = [0.0, 0.0, 0.0, 0.0];
        let vals = symmetric_tridiagonal_eigenvalues(&d, &e).unwrap();
        assert_eq!(vals, vec![-1.0, 0.25, 3.0, 7.5]);
    }

    #[test]
    fn path_graph_spectrum_is_cosine_ladder() {
        let n = 12;
        let d = vec![0.0; n];
        let e = vec![1.0; n];
        let vals = symmetric_tridiagonal_eigenvalues(&d, &e).unwrap();
        for (k, v) in vals.iter().enumerate() {
            let expect = 2.0 * ((n - k) as f64 * PI / (n as f64 + 1.0)).cos();
            assert!((v - expect).abs() < 1e-12, "k={k}: {v} vs {expect}");
        }
    }

    #[test]
    fn reflected_diagonal_keeps_known_spectrum() {
        // A = H D H with H a Householder reflection: spectrum is D's diagonal.
        let n = 9;
        let u: Vec<f64> = (1..=n).map(|i| i as f64).collect();
        let uu: f64 = u.iter().map(|x| x * x).sum();
        let mut a = vec![vec![0.0f64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let hi = |r: usize, c: usize| {
                    (if r == c { 1.0 } else { 0.0 }) - 2.0 * u[r] * u[c] / uu
                };
                let mut acc = 0.0;
                for k in 0..n {
                    acc += hi(i, k) * (k as f64 + 1.0) * hi(k, j);
                }
                a[i][j] = acc;
            }
        }
        let vals = symmetric_dense_eigenvalues(a).unwrap();
        for (k, v) in vals.iter().enumerate() {
            assert!((v - (k as f64 + 1.0)).abs() < 1e-10, "k={k}: {v}");
        }
    }

    #[test]
    fn random_symmetric_matrix_preserves_trace_invariants() {
        let n = 20;
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut a = vec![vec![0.0f64; n]; n];
        for i in 0..n {
            for j in 0..=i {
                let v: f64 = rng.gen_range(-1.0..1.0);
                a[i][j] = v;
                a[j][i] = v;
            }
        }
        let trace: f64 = (0..n).map(|i| a[i][i]).sum();
        let frob2: f64 = a.iter().flatten().map(|x| x * x).sum();
        let vals = symmetric_dense_eigenvalues(a).unwrap();
        let sum: f64 = vals.iter().sum();
        let sum2: f64 = vals.iter().map(|x| x * x).sum();
        assert!((sum - trace).abs() < 1e-10 * (1.0 + trace.abs()));
        assert!((sum2 - frob2).abs() < 1e-10 * frob2);
        for w in vals.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn two_by_two_hermitian_matches_closed_form() {
        let b = Complex64::new(0.3, 0.7);
        let a = vec![
            vec![Complex64::new(1.5, 0.0), b],
            vec![b.conj(), Complex64::new(-0.5, 0.0)],
        ];
        let vals = hermitian_dense_eigenvalues(a).unwrap();
        let mid = 0.5;
        let disc = (1.0f64 + b.norm_sqr()).sqrt();
        assert!((vals[0] - (mid - disc)).abs() < 1e-14);
        assert!((vals[1] - (mid + disc)).abs() < 1e-14);
    }

    #[test]
    fn unitary_reflection_keeps_hermitian_spectrum() {
        // H = U D U† with U = I − 2vv†/v†v: spectrum is D's diagonal.
        let n = 7;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let vtv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let unitary = |r: usize, c: usize| -> Complex64 {
            let id = if r == c {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::zero()
            };
            id - v[r] * v[c].conj() * (2.0 / vtv)
        };
        let mut a = vec![vec![Complex64::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::zero();
                for k in 0..n {
                    acc += unitary(i, k) * ((k * k) as f64 - 3.0) * unitary(j, k).conj();
                }
                a[i][j] = acc;
            }
        }
        let vals = hermitian_dense_eigenvalues(a).unwrap();
        let mut expect: Vec<f64> = (0..n).map(|k| (k * k) as f64 - 3.0).collect();
        expect.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (v, e) in vals.iter().zip(&expect) {
            assert!((v - e).abs() < 1e-10, "{v} vs {e}");
        }
    }

    #[test]
    fn random_hermitian_matrix_preserves_trace_invariants() {
        let n = 15;
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut a = vec![vec![Complex64::zero(); n]; n];
        for i in 0..n {
            a[i][i] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
            for j in 0..i {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                a[i][j] = z;
                a[j][i] = z.conj();
            }
        }
        let trace: f64 = (0..n).map(|i| a[i][i].re).sum();
        let frob2: f64 = a.iter().flatten().map(|z| z.norm_sqr()).sum();
        let vals = hermitian_dense_eigenvalues(a).unwrap();
        let sum: f64 = vals.iter().sum();
        let sum2: f64 = vals.iter().map(|x| x * x).sum();
        assert!((sum - trace).abs() < 1e-10 * (1.0 + trace.abs()));
        assert!((sum2 - frob2).abs() < 1e-10 * frob2);
    }
}
