use num_complex::Complex64;

use super::{CVector, ComplexMatrix};

/// Eigendecomposition of a Hermitian matrix: real eigenvalues in ascending
/// order with orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<CVector>,
}

/// Cyclic Jacobi on the Hermitian part of `m`. Each rotation first removes
/// the phase of the pivot `a_pq`, then applies the real symmetric rotation.
pub fn hermitian_eig(m: &ComplexMatrix) -> HermitianEigen {
    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius();

    for _sweep in 0..64 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * scale * 1e-2 || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let abs = apq.norm();
                if abs == 0.0 {
                    continue;
                }
                let phase = apq / abs;
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * abs);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let t = if tau == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * cs;
                // U: column p = cs e_p - sn conj(phase) e_q, column q = sn e_p + cs conj(phase) e_q
                let up = (Complex64::new(cs, 0.0), -sn * phase.conj());
                let uq = (Complex64::new(sn, 0.0), cs * phase.conj());
                for mat in [&mut a, &mut v] {
                    for i in 0..n {
                        let (x, y) = (mat[(i, p)], mat[(i, q)]);
                        mat[(i, p)] = x * up.0 + y * up.1;
                        mat[(i, q)] = x * uq.0 + y * uq.1;
                    }
                }
                for j in 0..n {
                    let (x, y) = (a[(p, j)], a[(q, j)]);
                    a[(p, j)] = up.0.conj() * x + up.1.conj() * y;
                    a[(q, j)] = uq.0.conj() * x + uq.1.conj() * y;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
            }
        }
    }

    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    HermitianEigen {
        values: idx.iter().map(|&i| a[(i, i)].re).collect(),
        vectors: idx.iter().map(|&k| (0..n).map(|i| v[(i, k)]).collect()).collect(),
    }
}
