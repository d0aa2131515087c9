/// Thin SVD of a real matrix: `A = U diag(s) V^T`.
#[derive(Debug, Clone)]
pub struct RealSvd {
    /// Singular values, descending.
    pub values: Vec<f64>,
    /// Right singular vectors, matching `values`.
    pub right: Vec<Vec<f64>>,
}

/// One-sided (Hestenes) Jacobi SVD. Singular values are accurate to
/// `eps |A|` in absolute terms, which keeps exact null vectors distinguishable
/// from tiny but nonzero singular values.
pub fn real_svd(rows: &[Vec<f64>]) -> RealSvd {
    let m = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    // column-major working copy
    let mut u: Vec<Vec<f64>> = (0..n).map(|j| (0..m).map(|i| rows[i][j]).collect()).collect();
    let mut v: Vec<Vec<f64>> = (0..n).map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect()).collect();

    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = u[p].iter().map(|x| x * x).sum();
                let beta: f64 = u[q].iter().map(|x| x * x).sum();
                let gamma: f64 = u[p].iter().zip(&u[q]).map(|(a, b)| a * b).sum();
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for mat in [&mut u, &mut v] {
                    let (lo, hi) = mat.split_at_mut(q);
                    for (x, y) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                        let (a, b) = (*x, *y);
                        *x = cs * a - sn * b;
                        *y = sn * a + cs * b;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<(f64, usize)> =
        u.iter().enumerate().map(|(j, col)| (col.iter().map(|x| x * x).sum::<f64>().sqrt(), j)).collect();
    order.sort_by(|a, b| b.0.total_cmp(&a.0));
    RealSvd { values: order.iter().map(|o| o.0).collect(), right: order.iter().map(|o| v[o.1].clone()).collect() }
}

/// Orthonormal basis of the null space of `rows`, taking singular values
/// `<= rel_tol * |A|_F` as zero. The basis is canonicalised: reduced row
/// echelon form of the raw basis, then Gram–Schmidt in pivot order, each
/// vector signed so its first nonzero component is positive. This makes the
/// result independent of the rotation the SVD happens to return inside a
/// multi-dimensional null space.
pub fn real_nullspace(rows: &[Vec<f64>], rel_tol: f64) -> (Vec<Vec<f64>>, RealSvd) {
    let svd = real_svd(rows);
    let fro: f64 = rows.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let tol = rel_tol * fro;
    let mut basis: Vec<Vec<f64>> =
        svd.values.iter().zip(&svd.right).filter(|(s, _)| **s <= tol).map(|(_, v)| v.clone()).collect();
    if basis.is_empty() {
        return (basis, svd);
    }
    let n = basis[0].len();

    // reduced row echelon form with partial pivoting
    let k = basis.len();
    let mut row = 0;
    for col in 0..n {
        if row == k {
            break;
        }
        let p = (row..k).max_by(|&a, &b| basis[a][col].abs().total_cmp(&basis[b][col].abs())).unwrap();
        if basis[p][col].abs() <= 1e-12 {
            continue;
        }
        basis.swap(row, p);
        let piv = basis[row][col];
        basis[row].iter_mut().for_each(|x| *x /= piv);
        for r in 0..k {
            if r != row {
                let f = basis[r][col];
                let pivot_row = basis[row].clone();
                for (x, y) in basis[r].iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
            }
        }
        row += 1;
    }

    // Gram-Schmidt + sign fix
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(k);
    for mut b in basis {
        for o in &out {
            let d: f64 = b.iter().zip(o).map(|(x, y)| x * y).sum();
            b.iter_mut().zip(o).for_each(|(x, y)| *x -= d * y);
        }
        let nrm = b.iter().map(|x| x * x).sum::<f64>().sqrt();
        b.iter_mut().for_each(|x| *x /= nrm);
        if let Some(first) = b.iter().copied().find(|x| x.abs() > 1e-12) {
            if first < 0.0 {
                b.iter_mut().for_each(|x| *x = -*x);
            }
        }
        out.push(b);
    }
    (out, svd)
}
