use num_complex::Complex64;
use serde::Serialize;

/// Default relative tolerance for deciding that an eigenvalue is real or
/// that two eigenvalues are conjugates of each other.
pub const DEFAULT_PAIRING_TOL: f64 = 1e-9;

/// Partition of eigenvalue indices into real values, conjugate pairs and
/// isolated complex values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairingClassification {
    pub real_indices: Vec<usize>,
    pub conjugate_pairs: Vec<(usize, usize)>,
    pub isolated_indices: Vec<usize>,
    pub tolerance: f64,
}

impl PairingClassification {
    /// True when the spectrum is closed under conjugation.
    pub fn is_conjugation_closed(&self) -> bool {
        self.isolated_indices.is_empty()
    }

    pub fn count(&self) -> usize {
        self.real_indices.len() + 2 * self.conjugate_pairs.len() + self.isolated_indices.len()
    }
}

/// Greedy classification in ascending index order.
///
/// `λ_i` is real when `|Im λ_i| <= tol (1 + |λ_i|)`. A non-real value is
/// paired with the unused non-real partner minimising `|λ_i - conj(λ_j)|`
/// if that distance is within `tol (1 + |λ_i|)`; otherwise it is isolated.
pub fn classify_pairing(values: &[Complex64], tol: f64) -> PairingClassification {
    assert!(tol > 0.0, "pairing tolerance must be positive");
    let n = values.len();
    let is_real: Vec<bool> = values.iter().map(|z| z.im.abs() <= tol * (1.0 + z.norm())).collect();
    let mut used = vec![false; n];
    let mut out = PairingClassification {
        real_indices: Vec::new(),
        conjugate_pairs: Vec::new(),
        isolated_indices: Vec::new(),
        tolerance: tol,
    };
    for i in 0..n {
        if is_real[i] {
            used[i] = true;
            out.real_indices.push(i);
        }
    }
    for i in 0..n {
        if used[i] {
            continue;
        }
        used[i] = true;
        let target = values[i].conj();
        let best =
            (0..n).filter(|&j| !used[j]).map(|j| (j, (values[j] - target).norm())).min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((j, d)) if d <= tol * (1.0 + values[i].norm()) => {
                used[j] = true;
                out.conjugate_pairs.push((i, j));
            }
            _ => out.isolated_indices.push(i),
        }
    }
    out
}
