//! One-sided Jacobi SVD for dense complex matrices.
//!
//! Slow (cubic per sweep) but short, accurate to working precision and free
//! of dependencies; it is the reference solver for small sections.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::{Float, Zero};

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 60;

/// `A = U Σ V^H` with singular values in decreasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct Svd {
    rows: usize,
    /// Columns of `U` (left vectors), one per singular value.
    u: Vec<Vec<Complex64>>,
    /// Columns of `V`.
    v: Vec<Vec<Complex64>>,
    sigma: Vec<f64>,
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm_sqr(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum()
}

/// Rotates columns `p`, `q` by `[[c, s], [-s·e^{-iφ}, c·e^{-iφ}]]`.
fn rotate(cols: &mut [Vec<Complex64>], p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    let (lo, hi) = cols.split_at_mut(q);
    let (a, b) = (&mut lo[p], &mut hi[0]);
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        let yp = *y * phase;
        let nx = *x * c - yp * s;
        let ny = *x * s + yp * c;
        *x = nx;
        *y = ny;
    }
}

impl Svd {
    /// SVD of the `rows × cols` matrix given column by column.
    pub fn from_columns(mut cols: Vec<Vec<Complex64>>) -> Result<Svd> {
        let n = cols.len();
        let rows = cols.first().map_or(0, |c| c.len());
        if n == 0 || rows == 0 || cols.iter().any(|c| c.len() != rows) {
            return Err(Error::InvalidArgument("matrix must be nonempty and rectangular"));
        }
        if cols.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Numerical("non-finite matrix entry"));
        }
        let mut v: Vec<Vec<Complex64>> = (0..n)
            .map(|j| {
                let mut e = vec![Complex64::zero(); n];
                e[j] = Complex64::new(1.0, 0.0);
                e
            })
            .collect();
        let tol = f64::EPSILON * rows as f64;
        let mut converged = false;
        for _ in 0..MAX_SWEEPS {
            let mut rotated = false;
            for p in 0..n {
                for q in p + 1..n {
                    let alpha = norm_sqr(&cols[p]);
                    let beta = norm_sqr(&cols[q]);
                    let gamma = dot(&cols[p], &cols[q]);
                    let g = gamma.norm();
                    if g == 0.0 || g <= tol * (alpha * beta).sqrt() {
                        continue;
                    }
                    rotated = true;
                    let phase = (gamma / g).conj();
                    let zeta = (beta - alpha) / (2.0 * g);
                    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = c * t;
                    rotate(&mut cols, p, q, c, s, phase);
                    rotate(&mut v, p, q, c, s, phase);
                }
            }
            if !rotated {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Numerical("Jacobi sweeps did not converge"));
        }
        let mut order: Vec<usize> = (0..n).collect();
        let sig: Vec<f64> = cols.iter().map(|c| norm_sqr(c).sqrt()).collect();
        order.sort_by(|&i, &j| sig[j].total_cmp(&sig[i]));
        let mut u = Vec::with_capacity(n);
        let mut vv = Vec::with_capacity(n);
        let mut sigma = Vec::with_capacity(n);
        for &j in &order {
            let s = sig[j];
            let col = if s > 0.0 { cols[j].iter().map(|x| x / s).collect() } else { cols[j].clone() };
            u.push(col);
            vv.push(v[j].clone());
            sigma.push(s);
        }
        Ok(Svd { rows, u, v: vv, sigma })
    }

    /// SVD of a row-major `rows × cols` matrix.
    pub fn from_row_major(data: &[Complex64], rows: usize, cols: usize) -> Result<Svd> {
        if data.len() != rows * cols {
            return Err(Error::InvalidArgument("matrix data does not match its shape"));
        }
        Svd::from_columns((0..cols).map(|k| (0..rows).map(|j| data[j * cols + k]).collect()).collect())
    }

    pub fn singular_values(&self) -> &[f64] {
        &self.sigma
    }

    pub fn left_vector(&self, j: usize) -> &[Complex64] {
        &self.u[j]
    }

    pub fn right_vector(&self, j: usize) -> &[Complex64] {
        &self.v[j]
    }

    /// Minimum-norm least-squares solution, dropping singular values below
    /// `threshold·σ_max`. Returns the solution and the rank used.
    pub fn solve(&self, b: &[Complex64], threshold: f64) -> Result<(Vec<Complex64>, usize)> {
        if b.len() != self.rows {
            return Err(Error::InvalidArgument("right-hand side has the wrong length"));
        }
        let cut = threshold * self.sigma[0];
        let mut x = vec![Complex64::zero(); self.v[0].len()];
        let mut rank = 0;
        for j in 0..self.sigma.len() {
            if self.sigma[j] <= cut || self.sigma[j] == 0.0 {
                continue;
            }
            rank += 1;
            let coef = dot(&self.u[j], b) / self.sigma[j];
            for (xi, vi) in x.iter_mut().zip(&self.v[j]) {
                *xi += vi * coef;
            }
        }
        Ok((x, rank))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn reconstructs_a_complex_matrix() {
        let (m, n) = (5, 4);
        let a: Vec<Complex64> = (0..m * n).map(|k| c((k as f64 * 0.7).sin(), (k as f64 * 1.9).cos())).collect();
        let svd = Svd::from_row_major(&a, m, n).unwrap();
        for j in 0..m {
            for k in 0..n {
                let r: Complex64 = (0..n).map(|i| svd.u[i][j] * svd.sigma[i] * svd.v[i][k].conj()).sum();
                assert!((r - a[j * n + k]).norm() < 1e-13);
            }
        }
        assert!(svd.sigma.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn diagonal_values_and_rank_cut() {
        let a = [c(3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1e-14, 0.0)];
        let svd = Svd::from_row_major(&a, 2, 2).unwrap();
        assert_eq!(svd.singular_values(), &[3.0, 1e-14]);
        let (x, rank) = svd.solve(&[c(3.0, 0.0), c(1.0, 0.0)], 1e-12).unwrap();
        assert_eq!(rank, 1);
        assert!((x[0] - c(1.0, 0.0)).norm() < 1e-15 && x[1].norm() == 0.0);
    }
}
