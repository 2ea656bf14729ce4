//! Dense section analysis with faer, for orders where the core Jacobi SVD
//! is too slow.

use faer::linalg::solvers::Solve;
use faer::traits::ext::ComplexFieldExt;
use faer::traits::ComplexField;
use faer::{Mat, Side};
use htl_core::fredholm::{residual_norm, LeastSquares, SectionAnalysis, SectionSolver, RANK_THRESHOLD};
use htl_core::hardy::ToeplitzTruncation;
use htl_core::{Complex64, Error};

/// Sections whose entries are real to this relative level are solved in
/// real arithmetic.
const REAL_TOLERANCE: f64 = 1e-12;

/// Below this `σ_min²/σ_max²` the Gram matrix no longer resolves `σ_min`
/// and the solver switches to a full SVD.
const GRAM_CONDITION: f64 = 1e-8;

/// `σ_min` from the eigenvalues of `AᴴA` and solves by LU while the section
/// is well conditioned; SVD with a pseudo-inverse otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaerSolver {
    pub threshold: f64,
}

impl Default for FaerSolver {
    fn default() -> Self {
        FaerSolver { threshold: RANK_THRESHOLD }
    }
}

struct Dense<T> {
    sigma_max: f64,
    sigma_min: f64,
    x: Mat<T>,
    rank: usize,
}

fn numerical(_: impl core::fmt::Debug) -> Error {
    Error::Numerical("dense factorization did not converge")
}

fn dense<T: ComplexField<Real = f64>>(a: &Mat<T>, b: &Mat<T>, threshold: f64) -> Result<Dense<T>, Error> {
    let n = a.nrows();
    let gram = a.adjoint() * a;
    let eig = gram.self_adjoint_eigenvalues(Side::Lower).map_err(numerical)?;
    let (lo, hi) = (eig[0].max(0.0), eig[n - 1]);
    if hi > 0.0 && lo / hi > GRAM_CONDITION {
        let x = a.partial_piv_lu().solve(b);
        return Ok(Dense { sigma_max: hi.sqrt(), sigma_min: lo.sqrt(), x, rank: n });
    }
    let svd = a.thin_svd().map_err(numerical)?;
    let s: Vec<f64> = svd.S().column_vector().iter().map(|v| v.real()).collect();
    let cut = threshold * s[0];
    let rank = s.iter().filter(|&&v| v > cut).count();
    // x = V Σ⁺ Uᴴ b over the kept singular triplets
    let u = svd.U().subcols(0, rank);
    let v = svd.V().subcols(0, rank);
    let mut c = u.adjoint() * b;
    for i in 0..rank {
        let inv = T::from_f64_impl(1.0 / s[i]);
        for j in 0..c.ncols() {
            c[(i, j)] = c[(i, j)].clone() * inv.clone();
        }
    }
    let x = v * &c;
    Ok(Dense { sigma_max: s[0], sigma_min: s[n - 1], x, rank })
}

impl SectionSolver for FaerSolver {
    fn analyze(&self, section: &ToeplitzTruncation, rhs: &[Vec<Complex64>]) -> Result<SectionAnalysis, Error> {
        let n = section.order();
        let real = section.imaginary_ratio() <= REAL_TOLERANCE;
        let (sigma_max, sigma_min, xs, ranks) = if real {
            let a = Mat::<f64>::from_fn(n, n, |i, j| section.get(i, j).re);
            // real and imaginary parts of each right-hand side as columns
            let b = Mat::<f64>::from_fn(n, 2 * rhs.len(), |i, j| {
                let v = rhs[j / 2][i];
                if j % 2 == 0 {
                    v.re
                } else {
                    v.im
                }
            });
            let d = dense(&a, &b, self.threshold)?;
            let xs: Vec<Vec<Complex64>> = (0..rhs.len())
                .map(|k| (0..n).map(|i| Complex64::new(d.x[(i, 2 * k)], d.x[(i, 2 * k + 1)])).collect())
                .collect();
            (d.sigma_max, d.sigma_min, xs, d.rank)
        } else {
            let a = Mat::<faer::c64>::from_fn(n, n, |i, j| section.get(i, j));
            let b = Mat::<faer::c64>::from_fn(n, rhs.len(), |i, j| rhs[j][i]);
            let d = dense(&a, &b, self.threshold)?;
            let xs = (0..rhs.len()).map(|k| (0..n).map(|i| d.x[(i, k)]).collect()).collect();
            (d.sigma_max, d.sigma_min, xs, d.rank)
        };
        let solutions = xs
            .into_iter()
            .zip(rhs)
            .map(|(x, b)| {
                let residual = residual_norm(section, &x, b);
                LeastSquares { x, residual, rank: ranks }
            })
            .collect();
        Ok(SectionAnalysis { sigma_max, sigma_min, solutions })
    }
}
