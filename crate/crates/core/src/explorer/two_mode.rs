use num_complex::Complex64;
use serde::Serialize;

use super::{check_range, linspace, Execution, ExplorerError, RegionClass, RegionSample};
use crate::model::WellParameters;
use crate::symmetriser::{delta_epsilon_2mode, eigen2_closed};

/// Relative tolerance for the `γ1 γ2 = -J²` and `γ1 + γ2 = 0` lines on a grid.
pub const GRID_REL_TOL: f64 = 1e-9;

/// One-parameter gain/loss profiles `γ -> (γ1, γ2)` of the dimer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Parametrisation {
    /// (a) `γ1 = -γ2 = γ`
    Pt,
    /// (b) `γ1 = 2γ`, `γ2 = -γ/2`
    Rotated,
    /// (c) `γ1 = γ + 1/2`, `γ2 = -γ + 1/2`
    Shifted,
    /// (d) `γ1 = J sqrt((1+a)/(1-a))`, `γ2 = -J sqrt((1-a)/(1+a))`, swept in `a`
    LuntTrap,
    /// `γ1 = s1 γ + o1`, `γ2 = s2 γ + o2`
    Custom { slope: [f64; 2], offset: [f64; 2] },
}

impl Parametrisation {
    pub fn gammas(&self, x: f64, j: f64) -> Result<(f64, f64), ExplorerError> {
        Ok(match *self {
            Self::Pt => (x, -x),
            Self::Rotated => (2.0 * x, -x / 2.0),
            Self::Shifted => (x + 0.5, -x + 0.5),
            Self::LuntTrap => {
                if !(x.abs() < 1.0) {
                    return Err(ExplorerError::LuntParameter(x));
                }
                (j * ((1.0 + x) / (1.0 - x)).sqrt(), -j * ((1.0 - x) / (1.0 + x)).sqrt())
            }
            Self::Custom { slope, offset } => (slope[0] * x + offset[0], slope[1] * x + offset[1]),
        })
    }

    /// (a) and (d) keep `ε1 = ε2 = 0`; the others take `ε` from the
    /// semi-symmetrisation condition.
    fn fixed_energies(&self) -> bool {
        matches!(self, Self::Pt | Self::LuntTrap)
    }
}

/// Sign of `Δε = ε1 - ε2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Branch {
    #[default]
    Eps1Greater,
    Eps1Less,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub gamma: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub admissible: bool,
    /// `γ1 γ2 = -J²`.
    pub boundary: bool,
    pub mu_plus: Complex64,
    pub mu_minus: Complex64,
}

fn nan_c() -> Complex64 {
    Complex64::new(f64::NAN, f64::NAN)
}

/// Dimer eigenvalues along a parametrisation, ascending in `γ`.
///
/// (a) and (d) are always evaluated with `ε = 0`. For the others
/// `ε1 = -ε2 = Δε/2` on the requested branch; rows outside
/// `-J² <= γ1 γ2 < 0` are not admissible and carry NaN energies.
pub fn sweep_2mode(
    par: Parametrisation,
    range: (f64, f64),
    steps: usize,
    j: f64,
    branch: Branch,
    exec: Execution,
) -> Result<Vec<SweepRow>, ExplorerError> {
    let xs = linspace(range.0, range.1, steps)?;
    if par == Parametrisation::LuntTrap {
        if let Some(bad) = xs.iter().find(|x| !(x.abs() < 1.0)) {
            return Err(ExplorerError::LuntParameter(*bad));
        }
    }
    exec.map(xs.len(), |k| sweep_row(par, xs[k], j, branch)).into_iter().collect()
}

fn sweep_row(par: Parametrisation, x: f64, j: f64, branch: Branch) -> Result<SweepRow, ExplorerError> {
    let (g1, g2) = par.gammas(x, j)?;
    let boundary_line = ((g1 * g2) + j * j).abs() <= GRID_REL_TOL * j * j;
    let (eps, admissible, boundary) = if par.fixed_energies() {
        (Some(0.0), true, par == Parametrisation::LuntTrap || boundary_line)
    } else {
        match delta_epsilon_2mode(g1, g2, j) {
            Some(d) => (Some(d.branch(branch == Branch::Eps1Greater)), true, d.boundary),
            None => (None, false, false),
        }
    };
    let Some(de) = eps else {
        return Ok(SweepRow {
            gamma: x,
            gamma1: g1,
            gamma2: g2,
            eps1: f64::NAN,
            eps2: f64::NAN,
            admissible,
            boundary,
            mu_plus: nan_c(),
            mu_minus: nan_c(),
        });
    };
    let p = WellParameters::dimer([de / 2.0, -de / 2.0], [g1, g2], j)?;
    let (mu_plus, mu_minus) = eigen2_closed(&p)?;
    Ok(SweepRow {
        gamma: x,
        gamma1: g1,
        gamma2: g2,
        eps1: de / 2.0,
        eps2: -de / 2.0,
        admissible,
        boundary,
        mu_plus,
        mu_minus,
    })
}

/// Classification of a `(γ1, γ2)` point, checked in order:
/// not admissible (`γ1 γ2` outside `[-J², 0)`), PT line (`γ1 + γ2 = 0`),
/// boundary (`γ1 γ2 = -J²`), otherwise semi-symmetrised with one real
/// eigenvalue.
pub fn classify_2mode(g1: f64, g2: f64, j: f64, branch: Branch) -> Result<RegionSample, ExplorerError> {
    let j2 = j * j;
    let prod = g1 * g2;
    let tol = GRID_REL_TOL * j2;
    let on_boundary = (prod + j2).abs() <= tol;
    let mut sample = RegionSample {
        index: (0, 0),
        inputs: (g1, g2),
        class: RegionClass::NotAdmissible,
        eigenvalues: Vec::new(),
        gammas: vec![g1, g2],
        epsilons: Vec::new(),
    };
    if !(prod < 0.0) || (prod < -j2 && !on_boundary) {
        return Ok(sample);
    }
    let pt_line = (g1 + g2).abs() <= GRID_REL_TOL * (1.0 + g1.abs());
    let de = if pt_line || on_boundary {
        0.0
    } else {
        delta_epsilon_2mode(g1, g2, j).map_or(0.0, |d| d.branch(branch == Branch::Eps1Greater))
    };
    sample.class = if pt_line {
        RegionClass::PtLine
    } else if on_boundary {
        RegionClass::Boundary
    } else {
        RegionClass::SemiOneReal
    };
    let p = WellParameters::dimer([de / 2.0, -de / 2.0], [g1, g2], j)?;
    let (a, b) = eigen2_closed(&p)?;
    sample.eigenvalues = vec![a, b];
    sample.epsilons = vec![de / 2.0, -de / 2.0];
    Ok(sample)
}

/// Row-major grid over `(γ1, γ2)`: `index = (i, j)` with `i` along `γ1`.
pub fn map_2mode_region(
    g1_range: (f64, f64),
    g2_range: (f64, f64),
    resolution: (usize, usize),
    j: f64,
    branch: Branch,
    exec: Execution,
) -> Result<Vec<RegionSample>, ExplorerError> {
    check_range(g1_range.0, g1_range.1)?;
    check_range(g2_range.0, g2_range.1)?;
    let xs = linspace(g1_range.0, g1_range.1, resolution.0)?;
    let ys = linspace(g2_range.0, g2_range.1, resolution.1)?;
    let ny = ys.len();
    exec.map(xs.len() * ny, |k| {
        let (i, jj) = (k / ny, k % ny);
        classify_2mode(xs[i], ys[jj], j, branch).map(|mut s| {
            s.index = (i, jj);
            s
        })
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explorer::count_real;
    use crate::linalg::c;

    const S3: f64 = 1.732_050_807_568_877_2;

    #[test]
    fn pt_sweep_point() {
        let rows =
            sweep_2mode(Parametrisation::Pt, (0.0, 1.0), 3, 1.0, Branch::default(), Execution::Sequential).unwrap();
        let r = &rows[1];
        assert_eq!(r.gamma, 0.5);
        assert!(r.admissible);
        assert!((r.mu_plus - c(0.75f64.sqrt(), 0.0)).norm() < 1e-15);
        assert!((r.mu_minus + c(0.75f64.sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rotated_sweep_both_branches() {
        let less = sweep_row(Parametrisation::Rotated, 0.5, 1.0, Branch::Eps1Less).unwrap();
        assert!((less.mu_plus - c(5.0 * S3 / 8.0, 0.0)).norm() < 1e-12);
        assert!((less.mu_minus - c(-5.0 * S3 / 8.0, 0.75)).norm() < 1e-12);
        let greater = sweep_row(Parametrisation::Rotated, 0.5, 1.0, Branch::Eps1Greater).unwrap();
        assert!(greater.eps1 > greater.eps2);
        assert!((greater.mu_minus - c(-5.0 * S3 / 8.0, 0.0)).norm() < 1e-12);
        assert!((greater.mu_plus - c(5.0 * S3 / 8.0, 0.75)).norm() < 1e-12);
    }

    #[test]
    fn shifted_gap_not_admissible() {
        let r = sweep_row(Parametrisation::Shifted, 0.25, 1.0, Branch::default()).unwrap();
        assert!(!r.admissible);
        assert!(r.mu_plus.re.is_nan() && r.eps1.is_nan());
    }

    #[test]
    fn shifted_admissible_window_from_equation() {
        // 1/2 < |γ| < sqrt(J² + 1/4)
        let edge = (1.25f64).sqrt();
        assert!(sweep_row(Parametrisation::Shifted, 0.51, 1.0, Branch::default()).unwrap().admissible);
        assert!(sweep_row(Parametrisation::Shifted, edge - 1e-6, 1.0, Branch::default()).unwrap().admissible);
        assert!(!sweep_row(Parametrisation::Shifted, edge + 1e-6, 1.0, Branch::default()).unwrap().admissible);
    }

    #[test]
    fn lunt_sweep_is_boundary() {
        let rows =
            sweep_2mode(Parametrisation::LuntTrap, (-0.9, 0.9), 7, 1.0, Branch::default(), Execution::Sequential)
                .unwrap();
        for r in rows {
            assert!(r.boundary && r.admissible);
            assert!((r.gamma1 * r.gamma2 + 1.0).abs() < 1e-12);
        }
        assert_eq!(
            sweep_2mode(Parametrisation::LuntTrap, (0.0, 1.0), 3, 1.0, Branch::default(), Execution::Sequential),
            Err(ExplorerError::LuntParameter(1.0))
        );
    }

    #[test]
    fn lunt_parameter_mapping() {
        let (g1, g2) = Parametrisation::LuntTrap.gammas(0.6, 1.0).unwrap();
        assert!((g1 - 2.0).abs() < 1e-15 && (g2 + 0.5).abs() < 1e-15);
    }

    #[test]
    fn classification_examples() {
        let s = classify_2mode(1.0, -1.0, 1.0, Branch::default()).unwrap();
        assert_eq!(s.class, RegionClass::PtLine);
        assert!(s.eigenvalues.iter().all(|z| z.norm() < 1e-15));
        assert_eq!(classify_2mode(2.0, -0.5, 1.0, Branch::default()).unwrap().class, RegionClass::Boundary);
        assert_eq!(classify_2mode(0.5, 0.5, 1.0, Branch::default()).unwrap().class, RegionClass::NotAdmissible);
        assert_eq!(classify_2mode(3.0, -0.5, 1.0, Branch::default()).unwrap().class, RegionClass::NotAdmissible);
        let s = classify_2mode(1.0, -0.25, 1.0, Branch::default()).unwrap();
        assert_eq!(s.class, RegionClass::SemiOneReal);
        assert_eq!(count_real(&s.eigenvalues), 1);
    }

    #[test]
    fn map_is_row_major_and_schedule_independent() {
        let seq =
            map_2mode_region((-2.0, 2.0), (-2.0, 2.0), (11, 7), 1.0, Branch::default(), Execution::Sequential).unwrap();
        let par =
            map_2mode_region((-2.0, 2.0), (-2.0, 2.0), (11, 7), 1.0, Branch::default(), Execution::Parallel).unwrap();
        assert_eq!(seq.len(), 77);
        assert_eq!(seq[8].index, (1, 1));
        assert_eq!(format!("{seq:?}"), format!("{par:?}"));
    }
}
