use num_complex::Complex64;
use serde::Serialize;

use super::{check_range, count_real, linspace, Execution, ExplorerError, RegionClass, RegionSample};
use crate::linalg::{char_poly, discriminant, eig, PolyCoeffs};
use crate::model::{build_hamiltonian, WellParameters};
use crate::symmetriser::{solve_3mode_gammas, ThreeModeSolution};

/// A coordinate plane of `(ε1, ε2, ε3)`: one coordinate fixed, the other two
/// swept in ascending axis order (`u` is the lower axis).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlaneSpec {
    /// 0, 1 or 2.
    pub fixed_axis: usize,
    pub fixed_value: f64,
    pub u_range: (f64, f64),
    pub v_range: (f64, f64),
}

impl PlaneSpec {
    pub fn free_axes(&self) -> (usize, usize) {
        match self.fixed_axis {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        }
    }

    fn validate(&self) -> Result<(), ExplorerError> {
        if self.fixed_axis > 2 {
            return Err(ExplorerError::Plane(format!("fixed axis {} is not one of 0, 1, 2", self.fixed_axis)));
        }
        if !self.fixed_value.is_finite() {
            return Err(ExplorerError::Plane(format!("fixed value {} is not finite", self.fixed_value)));
        }
        check_range(self.u_range.0, self.u_range.1)?;
        check_range(self.v_range.0, self.v_range.1)
    }

    pub fn point(&self, u: f64, v: f64) -> [f64; 3] {
        let (a, b) = self.free_axes();
        let mut eps = [self.fixed_value; 3];
        eps[a] = u;
        eps[b] = v;
        eps
    }
}

fn real_part(p: &PolyCoeffs) -> PolyCoeffs {
    PolyCoeffs::new(p.coeffs().iter().map(|z| Complex64::new(z.re, 0.0)).collect())
}

/// Cubic discriminants within this (relative) distance of zero count as a
/// repeated real root.
pub const DEGENERATE_DISC_TOL: f64 = 1e-10;

/// Classifies `ε` with the `γ0 > 0` triple (or `γ0 < 0` when `positive` is
/// false). Three real eigenvalues within [`super::REAL_TOL`] give
/// `fullThreeReal`. Otherwise the real cubic's discriminant decides, so that
/// exceptional points (repeated real roots that rounding splits into the
/// complex plane) land in `fullThreeReal`.
pub fn classify_3mode(eps: [f64; 3], j: f64, positive: bool) -> Result<RegionSample, ExplorerError> {
    let mut sample = RegionSample {
        index: (0, 0),
        inputs: (eps[0], eps[1]),
        class: RegionClass::NotAdmissible,
        eigenvalues: Vec::new(),
        gammas: Vec::new(),
        epsilons: eps.to_vec(),
    };
    let (class, gammas) = match solve_3mode_gammas(eps, j) {
        ThreeModeSolution::None => return Ok(sample),
        ThreeModeSolution::HermitianAndPt => (RegionClass::Hermitian, [0.0; 3]),
        ThreeModeSolution::PtFamily => (RegionClass::PtLine, [0.0; 3]),
        ThreeModeSolution::Triples { gamma0, triples } => {
            let k = usize::from(!positive);
            if gamma0[k] == 0.0 {
                (RegionClass::Hermitian, [0.0; 3])
            } else {
                (RegionClass::FullOneReal, triples[k])
            }
        }
    };
    let h = build_hamiltonian(&WellParameters::trimer(eps, gammas, j)?);
    let values = eig(&h)?.values();
    sample.class = match class {
        RegionClass::FullOneReal => match count_real(&values) {
            3 => RegionClass::FullThreeReal,
            _ => {
                let p = real_part(&char_poly(&h));
                let d = discriminant(&p)?;
                if d.re >= -DEGENERATE_DISC_TOL * (1.0 + p.max_abs().powi(4)) {
                    RegionClass::FullThreeReal
                } else {
                    RegionClass::FullOneReal
                }
            }
        },
        other => other,
    };
    sample.eigenvalues = values;
    sample.gammas = gammas.to_vec();
    Ok(sample)
}

/// Row-major grid over a coordinate plane, `index = (i, j)` with `i` along `u`.
pub fn map_3mode_region(
    plane: PlaneSpec,
    resolution: (usize, usize),
    j: f64,
    exec: Execution,
) -> Result<Vec<RegionSample>, ExplorerError> {
    plane.validate()?;
    let us = linspace(plane.u_range.0, plane.u_range.1, resolution.0)?;
    let vs = linspace(plane.v_range.0, plane.v_range.1, resolution.1)?;
    let nv = vs.len();
    exec.map(us.len() * nv, |k| {
        let (i, jj) = (k / nv, k % nv);
        classify_3mode(plane.point(us[i], vs[jj]), j, true).map(|mut s| {
            s.index = (i, jj);
            s.inputs = (us[i], vs[jj]);
            s
        })
    })
    .into_iter()
    .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AntiPtRow {
    pub eps1: f64,
    /// NaN when not admissible.
    pub gammas: [f64; 3],
    /// Ascending by `(Re, Im)`; NaN when not admissible.
    pub eigenvalues: [Complex64; 3],
    pub class: RegionClass,
}

/// The family `ε = (ε1, 0, -ε1)`, ascending in `ε1`.
pub fn sweep_3mode_antipt(
    range: (f64, f64),
    steps: usize,
    j: f64,
    positive: bool,
    exec: Execution,
) -> Result<Vec<AntiPtRow>, ExplorerError> {
    let xs = linspace(range.0, range.1, steps)?;
    exec.map(xs.len(), |k| {
        let e = xs[k];
        let s = classify_3mode([e, 0.0, -e], j, positive)?;
        let nan = Complex64::new(f64::NAN, f64::NAN);
        let (gammas, eigenvalues) = if s.class.is_admissible() {
            ([s.gammas[0], s.gammas[1], s.gammas[2]], [s.eigenvalues[0], s.eigenvalues[1], s.eigenvalues[2]])
        } else {
            ([f64::NAN; 3], [nan; 3])
        };
        Ok(AntiPtRow { eps1: e, gammas, eigenvalues, class: s.class })
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const S3: f64 = 1.732_050_807_568_877_2;

    fn near(z: Complex64, re: f64, im: f64, tol: f64) -> bool {
        (z - Complex64::new(re, im)).norm() <= tol
    }

    #[test]
    fn three_real_example() {
        let s = classify_3mode([0.8, 0.0, -0.8], 1.0, true).unwrap();
        assert_eq!(s.class, RegionClass::FullThreeReal);
        let r = 1.56f64.sqrt();
        assert!(near(s.eigenvalues[0], -r, 0.0, 1e-10));
        assert!(near(s.eigenvalues[1], 0.0, 0.0, 1e-10));
        assert!(near(s.eigenvalues[2], r, 0.0, 1e-10));
    }

    #[test]
    fn one_real_example() {
        let s = classify_3mode([0.2, 0.0, -0.2], 1.0, true).unwrap();
        assert_eq!(s.class, RegionClass::FullOneReal);
        let r = 0.84f64.sqrt();
        let mut im: Vec<f64> = s.eigenvalues.iter().map(|z| z.im).collect();
        im.sort_by(f64::total_cmp);
        assert!((im[0] + r).abs() < 1e-10 && im[1].abs() < 1e-10 && (im[2] - r).abs() < 1e-10);
        assert!(s.eigenvalues.iter().all(|z| z.re.abs() < 1e-10));
    }

    #[test]
    fn exceptional_point_is_three_real() {
        for eps in [[0.5, 0.0, -0.5], [-0.5, 0.0, 0.5], [-1.0, -0.5, 0.0], [0.0, -0.5, -1.0]] {
            assert_eq!(classify_3mode(eps, 1.0, true).unwrap().class, RegionClass::FullThreeReal, "{eps:?}");
        }
        assert_eq!(classify_3mode([0.49, 0.0, -0.49], 1.0, true).unwrap().class, RegionClass::FullOneReal);
    }

    #[test]
    fn outside_bound() {
        let s = classify_3mode([1.5, 0.0, -1.5], 1.0, true).unwrap();
        assert_eq!(s.class, RegionClass::NotAdmissible);
        assert!(s.eigenvalues.is_empty());
    }

    #[test]
    fn special_families() {
        assert_eq!(classify_3mode([0.2, -0.4, 0.2], 1.0, true).unwrap().class, RegionClass::PtLine);
        assert_eq!(classify_3mode([0.0; 3], 1.0, true).unwrap().class, RegionClass::Hermitian);
        assert_eq!(classify_3mode([1.0, 0.0, -1.0], 1.0, true).unwrap().class, RegionClass::Hermitian);
    }

    #[test]
    fn antipt_sweep_examples() {
        let rows = sweep_3mode_antipt((0.5, 1.2), 15, 1.0, true, Execution::Sequential).unwrap();
        let at = |e: f64| rows.iter().find(|r| (r.eps1 - e).abs() < 1e-12).unwrap();
        let cusp = at(0.5);
        assert!((cusp.gammas[0] + S3 / 2.0).abs() < 1e-14 && (cusp.gammas[1] - S3).abs() < 1e-14);
        assert!(cusp.eigenvalues.iter().all(|z| z.norm() < 1e-4));
        let r = at(0.8);
        for (g, e) in r.gammas.iter().zip([-0.6, 1.2, -0.6]) {
            assert!((g - e).abs() < 1e-14);
        }
        assert_eq!(r.class, RegionClass::FullThreeReal);
        assert_eq!(at(1.2).class, RegionClass::NotAdmissible);
        assert!(at(1.2).gammas[0].is_nan());
    }

    #[test]
    fn plane_validation_and_layout() {
        let bad = PlaneSpec { fixed_axis: 3, fixed_value: 0.0, u_range: (-1.0, 1.0), v_range: (-1.0, 1.0) };
        assert!(matches!(map_3mode_region(bad, (3, 3), 1.0, Execution::Sequential), Err(ExplorerError::Plane(_))));
        let plane = PlaneSpec { fixed_axis: 2, fixed_value: 0.0, u_range: (-1.0, 1.0), v_range: (-1.0, 1.0) };
        assert_eq!(plane.point(0.3, -0.2), [0.3, -0.2, 0.0]);
        let a = map_3mode_region(plane, (9, 5), 1.0, Execution::Sequential).unwrap();
        let b = map_3mode_region(plane, (9, 5), 1.0, Execution::Parallel).unwrap();
        assert_eq!(a.len(), 45);
        assert_eq!(a[6].index, (1, 1));
        assert_eq!(format!("{a:?}"), format!("{b:?}"));
    }

    #[test]
    fn exchange_symmetry_on_middle_plane() {
        let plane = PlaneSpec { fixed_axis: 1, fixed_value: 0.1, u_range: (-1.5, 1.5), v_range: (-1.5, 1.5) };
        let n = 31;
        let m = map_3mode_region(plane, (n, n), 1.0, Execution::default()).unwrap();
        for i in 0..n {
            for k in 0..n {
                assert_eq!(m[i * n + k].class, m[k * n + i].class, "at {i},{k}");
            }
        }
    }
}
