use num_complex::Complex64;

use super::complex::ComplexMatrix;
use super::{HERMITIAN_TOL, POSITIVE_EIG_TOL};
use crate::error::{Error, Result};

pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Off-diagonal entries below this (relative to `max(1, ‖H‖_max)`) count as zero.
pub const JACOBI_OFF_TOL: f64 = 1e-12;

/// Spectrum of a Hermitian matrix: `U H U† = diag(values)`, values descending.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub unitary: ComplexMatrix,
    pub sweeps: usize,
}

/// Cyclic complex Jacobi.
///
/// Each rotation first removes the phase of `h_pq` with a diagonal unitary,
/// then applies the real symmetric Jacobi rotation to the resulting block.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<HermitianEigen> {
    if !h.is_square() {
        return Err(Error::Shape(format!("eigenproblem on {}x{}", h.rows(), h.cols())));
    }
    if !h.is_finite() {
        return Err(Error::Shape("non-finite entries".into()));
    }
    let defect = h.hermitian_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let n = h.rows();
    let mut a = h.clone();
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_OFF_TOL * h.max_norm().max(1.0);

    let mut sweeps = 0;
    loop {
        let off = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm())
            .fold(0.0, f64::max);
        if off <= threshold {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let b = a[(p, q)];
                let r = b.norm();
                if r <= threshold {
                    continue;
                }
                let w = (b / r).conj();
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * cs;
                // Plane unitary in columns (p, q): [[cs, sn], [-sn·w, cs·w]].
                let vpp = Complex64::new(cs, 0.0);
                let vpq = Complex64::new(sn, 0.0);
                let vqp = -w * sn;
                let vqq = w * cs;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * vpp + akq * vqp;
                    a[(k, q)] = akp * vpq + akq * vqq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = vpp.conj() * apk + vqp.conj() * aqk;
                    a[(q, k)] = vpq.conj() * apk + vqq.conj() * aqk;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * vpp + vkq * vqp;
                    v[(k, q)] = vkp * vpq + vkq * vqq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    // Rows of U are the conjugated eigenvectors (columns of v).
    let unitary = ComplexMatrix::from_fn(n, n, |r, c| v[(c, order[r])].conj());
    Ok(HermitianEigen { values, unitary, sweeps })
}

/// `Λ^{-1/2} U`: the transform that whitens `U† Λ U`.
pub fn inv_sqrt_diag(values: &[f64], unitary: &ComplexMatrix) -> Result<ComplexMatrix> {
    if unitary.rows() != values.len() {
        return Err(Error::Shape(format!(
            "{} eigenvalues for {}x{} transform",
            values.len(),
            unitary.rows(),
            unitary.cols()
        )));
    }
    if let Some(&bad) = values.iter().find(|&&l| l.is_nan() || l <= POSITIVE_EIG_TOL) {
        return Err(Error::SingularSpectrum(bad));
    }
    let scale: Vec<Complex64> = values.iter().map(|l| Complex64::new(1.0 / l.sqrt(), 0.0)).collect();
    ComplexMatrix::diag(&scale).matmul(unitary)
}
