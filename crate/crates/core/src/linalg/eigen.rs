use num_complex::Complex64;
use serde::Serialize;

use super::{
    classify_pairing, dot_adj, norm2, CVector, ComplexMatrix, LinalgError, PairingClassification, DEFAULT_PAIRING_TOL,
};

/// Below this `|l^dagger r| / (|l||r|)` an eigenpair is treated as sitting
/// on an exceptional point.
pub const SELF_ORTHOGONALITY_EP: f64 = 1e-8;

/// Iteration budget of the shifted QR sweep, per matrix dimension.
const QR_ITERATIONS_PER_DIM: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenPair {
    pub value: Complex64,
    pub right: CVector,
    pub left: CVector,
    /// `|H r - λ r| / (|H|_F |r|)`
    pub right_residual: f64,
    /// `|l^dagger H - λ l^dagger| / (|H|_F |l|)`
    pub left_residual: f64,
    /// `|l^dagger r| / (|l| |r|)`. For complex-symmetric `H` this is
    /// `|r^T r| / (r^dagger r)`.
    pub self_orthogonality: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// Unit Euclidean norm on both left and right vectors.
    Hermitian,
    /// `l_i^dagger r_j = δ_ij`.
    Biorthogonal,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub pairs: Vec<EigenPair>,
    pub normalization: Normalization,
    pub classification: PairingClassification,
    /// Set when any pair has self-orthogonality below [`SELF_ORTHOGONALITY_EP`].
    pub degenerate: bool,
}

impl Spectrum {
    pub fn values(&self) -> Vec<Complex64> {
        self.pairs.iter().map(|p| p.value).collect()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn min_self_orthogonality(&self) -> f64 {
        self.pairs.iter().map(|p| p.self_orthogonality).fold(f64::INFINITY, f64::min)
    }

    pub fn max_residual(&self) -> f64 {
        self.pairs.iter().map(|p| p.right_residual.max(p.left_residual)).fold(0.0, f64::max)
    }

    /// Reruns conjugate-pair classification with another tolerance.
    pub fn reclassify(&mut self, tol: f64) {
        self.classification = classify_pairing(&self.values(), tol);
    }

    /// Largest `|l_i^dagger r_j - δ_ij|`.
    pub fn biorthogonality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.pairs.iter().enumerate() {
            for (j, b) in self.pairs.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot_adj(&a.left, &b.right) - target).norm());
            }
        }
        worst
    }
}

/// Full eigendecomposition with paired left and right eigenvectors.
///
/// 2x2 matrices use the closed-form quadratic. Larger matrices are reduced to
/// Hessenberg form by Householder reflections and then to complex Schur form
/// `H = Q T Q^dagger` with Wilkinson-shifted QR sweeps. Right vectors solve
/// `T y = λ y`; left vectors solve `T^dagger z = conj(λ) z` on the same Schur
/// basis, so both sides of each pair refer to the same computed eigenvalue.
///
/// Vectors come back with unit norm. The right vector's largest component is
/// real positive. For complex-symmetric input the left vector is phased to
/// line up with `conj(r)`; otherwise it is phased so `l^dagger r > 0`.
/// Pairs are ordered ascending by `(Re λ, Im λ)`.
pub fn eig(m: &ComplexMatrix) -> Result<Spectrum, LinalgError> {
    let n = m.dim();
    let raw = if n == 2 { eig2(m) } else { schur_eig(m)? };
    let symmetric = m.is_symmetric();
    let hnorm = m.frobenius();

    let mut pairs: Vec<EigenPair> = raw
        .into_iter()
        .map(|(value, r, l)| {
            let r = phase_largest(normalize(r));
            let l = normalize(l);
            let l = if symmetric { align_to_conj(l, &r) } else { align_biorthogonal(l, &r) };
            make_pair(m, hnorm, value, r, l)
        })
        .collect();
    pairs.sort_by(|a, b| a.value.re.total_cmp(&b.value.re).then(a.value.im.total_cmp(&b.value.im)));

    let values: Vec<Complex64> = pairs.iter().map(|p| p.value).collect();
    let degenerate = pairs.iter().any(|p| p.self_orthogonality < SELF_ORTHOGONALITY_EP);
    Ok(Spectrum {
        pairs,
        normalization: Normalization::Hermitian,
        classification: classify_pairing(&values, DEFAULT_PAIRING_TOL),
        degenerate,
    })
}

/// Rescales each pair so that `l_i^dagger r_j = δ_ij`.
///
/// The scaling is symmetric (`r / sqrt(c)`, `l / conj(sqrt(c))` with
/// `c = l^dagger r`), which keeps `l = conj(r)` for complex-symmetric
/// matrices and leaves Hermitian eigenbases untouched. Clusters of equal
/// eigenvalues are additionally bi-orthogonalised among themselves.
pub fn biorthonormalize(s: &Spectrum) -> Result<Spectrum, LinalgError> {
    if let Some(p) = s.pairs.iter().find(|p| p.self_orthogonality < SELF_ORTHOGONALITY_EP) {
        return Err(LinalgError::SelfOrthogonal { value: p.value, self_orthogonality: p.self_orthogonality });
    }
    let scale = s.pairs.iter().map(|p| p.value.norm()).fold(1.0, f64::max);
    let mut pairs = s.pairs.clone();
    for i in 0..pairs.len() {
        for j in 0..i {
            if (pairs[i].value - pairs[j].value).norm() <= 1e-10 * scale {
                let (head, tail) = pairs.split_at_mut(i);
                let (pj, pi) = (&head[j], &mut tail[0]);
                let a = dot_adj(&pj.left, &pi.right);
                let b = dot_adj(&pj.right, &pi.left);
                for k in 0..pi.right.len() {
                    pi.right[k] -= pj.right[k] * a;
                    pi.left[k] -= pj.left[k] * b;
                }
            }
        }
        let p = &mut pairs[i];
        let c = dot_adj(&p.left, &p.right);
        if c.norm() == 0.0 {
            return Err(LinalgError::SelfOrthogonal { value: p.value, self_orthogonality: 0.0 });
        }
        let sq = c.sqrt();
        p.right.iter_mut().for_each(|z| *z /= sq);
        p.left.iter_mut().for_each(|z| *z /= sq.conj());
    }
    Ok(Spectrum {
        pairs,
        normalization: Normalization::Biorthogonal,
        classification: s.classification.clone(),
        degenerate: s.degenerate,
    })
}

fn make_pair(m: &ComplexMatrix, hnorm: f64, value: Complex64, r: CVector, l: CVector) -> EigenPair {
    let denom = if hnorm > 0.0 { hnorm } else { 1.0 };
    let hr = m.mul_vec(&r);
    let right_residual =
        norm2(&hr.iter().zip(&r).map(|(a, b)| a - value * b).collect::<Vec<_>>()) / (denom * norm2(&r));
    let lh = m.vec_adj_mul(&l);
    let left_residual =
        norm2(&lh.iter().zip(&l).map(|(a, b)| a - value * b.conj()).collect::<Vec<_>>()) / (denom * norm2(&l));
    let self_orthogonality = dot_adj(&l, &r).norm() / (norm2(&l) * norm2(&r));
    EigenPair { value, right: r, left: l, right_residual, left_residual, self_orthogonality }
}

fn normalize(mut v: CVector) -> CVector {
    let nrm = norm2(&v);
    if nrm > 0.0 {
        v.iter_mut().for_each(|z| *z /= nrm);
    }
    v
}

fn phase_largest(mut v: CVector) -> CVector {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if let Some(big) = v.iter().copied().find(|z| z.norm() >= max * (1.0 - 1e-12)) {
        if big.norm() > 0.0 {
            let ph = big.conj() / big.norm();
            v.iter_mut().for_each(|z| *z *= ph);
        }
    }
    v
}

/// Phase `l` so that it matches `conj(r)` up to a positive factor.
fn align_to_conj(mut l: CVector, r: &[Complex64]) -> CVector {
    let k: Complex64 = r.iter().zip(&l).map(|(a, b)| a * b).sum();
    if k.norm() > 1e-300 {
        let ph = k.conj() / k.norm();
        l.iter_mut().for_each(|z| *z *= ph);
        l
    } else {
        phase_largest(l)
    }
}

fn align_biorthogonal(mut l: CVector, r: &[Complex64]) -> CVector {
    let k = dot_adj(&l, r);
    if k.norm() > 1e-300 {
        // want conj(ph) * k real positive
        let ph = k / k.norm();
        l.iter_mut().for_each(|z| *z *= ph);
        l
    } else {
        phase_largest(l)
    }
}

type RawPair = (Complex64, CVector, CVector);

fn eig2(m: &ComplexMatrix) -> Vec<RawPair> {
    let (a, b, cc, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let half = (a - d) * 0.5;
    let s = (half * half + b * cc).sqrt();
    let mean = (a + d) * 0.5;
    let values = [mean + s, mean - s];
    values
        .iter()
        .enumerate()
        .map(|(k, &lam)| {
            let r = null2(a, b, cc, d, lam, k);
            let l = null2(a.conj(), cc.conj(), b.conj(), d.conj(), lam.conj(), k);
            (lam, r, l)
        })
        .collect()
}

/// Null vector of `[[a - λ, b], [c, d - λ]]`, taken from whichever row
/// yields the larger candidate. Falls back to a unit vector for scalar
/// matrices.
fn null2(a: Complex64, b: Complex64, c: Complex64, d: Complex64, lam: Complex64, k: usize) -> CVector {
    let v1 = vec![b, lam - a];
    let v2 = vec![lam - d, c];
    let (n1, n2) = (norm2(&v1), norm2(&v2));
    if n1 == 0.0 && n2 == 0.0 {
        let mut e = vec![Complex64::new(0.0, 0.0); 2];
        e[k] = Complex64::new(1.0, 0.0);
        e
    } else if n1 >= n2 {
        v1
    } else {
        v2
    }
}

/// Complex Schur decomposition followed by triangular eigenvector solves.
fn schur_eig(m: &ComplexMatrix) -> Result<Vec<RawPair>, LinalgError> {
    let n = m.dim();
    let (t, q) = schur(m)?;
    let tnorm = t.frobenius().max(f64::MIN_POSITIVE);
    let small = f64::EPSILON * tnorm;
    let zero = Complex64::new(0.0, 0.0);

    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let lam = t[(k, k)];

        let mut y = vec![zero; n];
        y[k] = Complex64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let s: Complex64 = (i + 1..=k).map(|j| t[(i, j)] * y[j]).sum();
            y[i] = solve_guarded(s, t[(i, i)] - lam, small, &y);
        }

        let mut z = vec![zero; n];
        z[k] = Complex64::new(1.0, 0.0);
        for i in k + 1..n {
            let s: Complex64 = (k..i).map(|j| t[(j, i)].conj() * z[j]).sum();
            z[i] = solve_guarded(s, (t[(i, i)] - lam).conj(), small, &z);
        }

        out.push((lam, q.mul_vec(&y), q.mul_vec(&z)));
    }
    Ok(out)
}

/// `-s / den` with a floor on `|den|`. When the divisor vanishes and the
/// numerator is at rounding level (a repeated eigenvalue of a normal
/// block) the component is set to zero instead of amplifying noise.
fn solve_guarded(s: Complex64, den: Complex64, small: f64, v: &[Complex64]) -> Complex64 {
    if den.norm() >= small {
        return -s / den;
    }
    let vmax = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if s.norm() <= 4.0 * small * vmax {
        Complex64::new(0.0, 0.0)
    } else {
        -s / Complex64::new(small, 0.0)
    }
}

/// Returns `(T, Q)` with `M = Q T Q^dagger`, `T` upper triangular.
fn schur(m: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix), LinalgError> {
    let n = m.dim();
    let zero = Complex64::new(0.0, 0.0);
    let mut h = m.clone();
    let mut q = ComplexMatrix::identity(n);

    // Householder reduction to upper Hessenberg form.
    for k in 0..n.saturating_sub(2) {
        let x: CVector = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = norm2(&x);
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { Complex64::new(1.0, 0.0) };
        let mut v = x;
        v[0] += phase * xnorm;
        let v = normalize(v);
        for j in 0..n {
            let s: Complex64 = (0..v.len()).map(|i| v[i].conj() * h[(k + 1 + i, j)]).sum();
            for i in 0..v.len() {
                h[(k + 1 + i, j)] -= 2.0 * v[i] * s;
            }
        }
        for mat in [&mut h, &mut q] {
            for i in 0..n {
                let s: Complex64 = (0..v.len()).map(|j| mat[(i, k + 1 + j)] * v[j]).sum();
                for j in 0..v.len() {
                    mat[(i, k + 1 + j)] -= 2.0 * s * v[j].conj();
                }
            }
        }
        for i in k + 2..n {
            h[(i, k)] = zero;
        }
    }

    let hnorm = h.frobenius();
    if hnorm == 0.0 {
        return Ok((h, q));
    }
    let budget = QR_ITERATIONS_PER_DIM * n;
    let mut total = 0usize;
    let mut its = 0usize;
    let mut hi = n - 1;
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let mut s = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if s == 0.0 {
                s = hnorm;
            }
            if h[(l, l - 1)].norm() <= f64::EPSILON * s {
                h[(l, l - 1)] = zero;
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            its = 0;
            continue;
        }
        its += 1;
        total += 1;
        if total > budget {
            let best = (1..n).map(|i| h[(i, i - 1)].norm()).filter(|&x| x > 0.0).fold(f64::INFINITY, f64::min);
            return Err(LinalgError::NoConvergence { iterations: total, best_residual: best / hnorm });
        }

        let shift = if its.is_multiple_of(10) {
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        let mut x = h[(l, l)] - shift;
        let mut y = h[(l + 1, l)];
        for k in l..hi {
            let (cs, sn) = givens(x, y);
            let col0 = if k > l { k - 1 } else { k };
            for j in col0..n {
                let (a, b) = (h[(k, j)], h[(k + 1, j)]);
                h[(k, j)] = a * cs + b * sn;
                h[(k + 1, j)] = -a * sn.conj() + b * cs;
            }
            if k > l {
                h[(k + 1, k - 1)] = zero;
            }
            let row_end = (k + 2).min(hi);
            for i in 0..=row_end {
                let (a, b) = (h[(i, k)], h[(i, k + 1)]);
                h[(i, k)] = a * cs + b * sn.conj();
                h[(i, k + 1)] = -a * sn + b * cs;
            }
            for i in 0..n {
                let (a, b) = (q[(i, k)], q[(i, k + 1)]);
                q[(i, k)] = a * cs + b * sn.conj();
                q[(i, k + 1)] = -a * sn + b * cs;
            }
            if k + 1 < hi {
                x = h[(k + 1, k)];
                y = h[(k + 2, k)];
            }
        }
    }
    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = zero;
        }
    }
    Ok((h, q))
}

/// Eigenvalue of the trailing 2x2 block closest to its lower-right entry.
fn wilkinson(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let s = (half * half + b * c).sqrt();
    let mean = (a + d) * 0.5;
    let (l1, l2) = (mean + s, mean - s);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Rotation `[[c, s], [-conj(s), c]]` with real `c` mapping `(a, b)` to `(r, 0)`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let (na, nb) = (a.norm(), b.norm());
    if nb == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if na == 0.0 {
        return (0.0, b.conj() / nb);
    }
    let rho = na.hypot(nb);
    (na / rho, (a / na) * b.conj() / rho)
}
