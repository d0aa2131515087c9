//! Exceptional points along one-parameter families.
//!
//! Along a family whose characteristic polynomial stays real, eigenvalues can
//! only leave the real axis in conjugate pairs, which happens where the real
//! discriminant changes sign. Sign changes are bracketed on a grid and
//! bisected; tangential zeros show up as local minima of `|disc|` and are
//! polished by golden-section search.

use num_complex::Complex64;
use serde::Serialize;

use super::{check_range, linspace, Execution, ExplorerError};
use crate::linalg::{char_poly, discriminant, eig, PolyCoeffs};
use crate::model::{build_hamiltonian, WellParameters};
use crate::symmetriser::{charpoly_reality_residual, solve_3mode_gammas, ThreeModeSolution};

pub const DEFAULT_EP_GRID: usize = 512;

/// `|a² - 3b| <= TRIPLE_ROOT_REL_TOL (1 + max|c|²)` marks a triple root of
/// `λ³ + aλ² + bλ + c` once the discriminant vanishes.
pub const TRIPLE_ROOT_REL_TOL: f64 = 1e-6;

/// Largest characteristic-polynomial reality residual accepted on the path.
const REALITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpOptions {
    pub grid: usize,
    /// Keep only points of this order.
    pub order_hint: Option<u8>,
    pub exec: Execution,
}

impl Default for EpOptions {
    fn default() -> Self {
        Self { grid: DEFAULT_EP_GRID, order_hint: None, exec: Execution::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EPResult {
    pub location: f64,
    pub order: u8,
    /// `|disc|` of the real characteristic polynomial at `location`.
    pub discriminant_residual: f64,
    pub eigenvalue_at_ep: Complex64,
    /// Smallest `|l^† r| / (|l||r|)` of the numerical eigenpairs there.
    pub self_orthogonality: f64,
    /// Grid cell that contained the point.
    pub bracket: (f64, f64),
}

type Path<'a> = &'a (dyn Fn(f64) -> Option<WellParameters> + Sync);

struct Probe {
    poly: PolyCoeffs,
    disc: f64,
}

fn probe(path: Path<'_>, t: f64) -> Result<Option<Probe>, ExplorerError> {
    let Some(p) = path(t) else { return Ok(None) };
    let h = build_hamiltonian(&p);
    let residual = charpoly_reality_residual(&h);
    if residual > REALITY_TOL {
        return Err(ExplorerError::Precondition { param: t, residual });
    }
    let poly = PolyCoeffs::new(char_poly(&h).coeffs().iter().map(|z| Complex64::new(z.re, 0.0)).collect());
    let disc = discriminant(&poly)?.re;
    Ok(Some(Probe { poly, disc }))
}

fn disc_at(path: Path<'_>, t: f64) -> f64 {
    match probe(path, t) {
        Ok(Some(p)) => p.disc,
        _ => f64::NAN,
    }
}

fn bisect(path: Path<'_>, mut lo: f64, mut hi: f64, mut dlo: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let dm = disc_at(path, mid);
        if dm == 0.0 {
            return mid;
        }
        if dm.is_nan() {
            break;
        }
        if (dm > 0.0) == (dlo > 0.0) {
            lo = mid;
            dlo = dm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn golden_min(path: Path<'_>, mut a: f64, mut b: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let f = |t: f64| disc_at(path, t).abs();
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if b - a <= f64::EPSILON * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        x1
    } else {
        x2
    }
}

/// Locates exceptional points of `path` on `interval`.
///
/// `path` returns `None` where the family is not admissible; such samples are
/// skipped. The characteristic polynomial must be real (residual `<= 1e-8`)
/// wherever the path is admissible.
///
/// Interval endpoints count as roots when their discriminant is within
/// `1e-10 (1 + max|c|³)` of zero.
///
/// Order 3 is reported when, on top of a vanishing discriminant,
/// `|a² - 3b|` is below [`TRIPLE_ROOT_REL_TOL`] relative to `1 + max|c|²`;
/// both vanish exactly when all three roots coincide. The test is algebraic
/// because near a triple root the eigenvalues themselves are only accurate
/// to about the cube root of machine precision.
pub fn find_ep(path: Path<'_>, interval: (f64, f64), opts: EpOptions) -> Result<Vec<EPResult>, ExplorerError> {
    check_range(interval.0, interval.1)?;
    let ts = linspace(interval.0, interval.1, opts.grid)?;
    let probes: Vec<Option<Probe>> =
        opts.exec.map(ts.len(), |k| probe(path, ts[k])).into_iter().collect::<Result<_, _>>()?;

    let mut roots: Vec<(f64, (f64, f64))> = Vec::new();
    for k in 0..ts.len() {
        let Some(pk) = &probes[k] else { continue };
        let endpoint = k == 0 || k + 1 == ts.len();
        if pk.disc == 0.0 || (endpoint && pk.disc.abs() <= disc_tolerance(&pk.poly)) {
            let lo = if k > 0 { ts[k - 1] } else { ts[k] };
            let hi = if k + 1 < ts.len() { ts[k + 1] } else { ts[k] };
            roots.push((ts[k], (lo, hi)));
            continue;
        }
        let Some(Some(pn)) = probes.get(k + 1) else { continue };
        if pn.disc != 0.0 && (pk.disc > 0.0) != (pn.disc > 0.0) {
            roots.push((bisect(path, ts[k], ts[k + 1], pk.disc), (ts[k], ts[k + 1])));
        }
    }
    // tangential zeros: interior |disc| minima without a neighbouring sign change
    for k in 1..ts.len().saturating_sub(1) {
        let (Some(a), Some(b), Some(c)) = (&probes[k - 1], &probes[k], &probes[k + 1]) else { continue };
        let same = |x: f64, y: f64| x != 0.0 && y != 0.0 && (x > 0.0) == (y > 0.0);
        if !(same(a.disc, b.disc) && same(b.disc, c.disc)) {
            continue;
        }
        if b.disc.abs() < a.disc.abs() && b.disc.abs() <= c.disc.abs() {
            let t = golden_min(path, ts[k - 1], ts[k + 1]);
            if let Ok(Some(p)) = probe(path, t) {
                if p.disc.abs() <= disc_tolerance(&p.poly) {
                    roots.push((t, (ts[k - 1], ts[k + 1])));
                }
            }
        }
    }
    roots.sort_by(|a, b| a.0.total_cmp(&b.0));
    roots.dedup_by(|a, b| (a.0 - b.0).abs() <= 1e-8 * (1.0 + a.0.abs()));

    let mut out = Vec::new();
    for (t, bracket) in roots {
        let Some(p) = path(t) else { continue };
        let Some(pr) = probe(path, t)? else { continue };
        let order = root_order(&pr.poly);
        if opts.order_hint.is_some_and(|h| h != order) {
            continue;
        }
        let h = build_hamiltonian(&p);
        let s = eig(&h)?;
        out.push(EPResult {
            location: t,
            order,
            discriminant_residual: pr.disc.abs(),
            eigenvalue_at_ep: repeated_root(&pr.poly, order),
            self_orthogonality: s.min_self_orthogonality(),
            bracket,
        });
    }
    Ok(out)
}

/// `1e-10 (1 + max|c|³)`
pub(crate) fn disc_tolerance(p: &PolyCoeffs) -> f64 {
    1e-10 * (1.0 + p.max_abs().powi(3))
}

fn root_order(p: &PolyCoeffs) -> u8 {
    if p.degree() == 3 {
        let (b, a) = (p.coeff(1).re, p.coeff(2).re);
        if (a * a - 3.0 * b).abs() <= TRIPLE_ROOT_REL_TOL * (1.0 + p.max_abs().powi(2)) {
            return 3;
        }
    }
    2
}

fn repeated_root(p: &PolyCoeffs, order: u8) -> Complex64 {
    let re = match (p.degree(), order) {
        (2, _) => -p.coeff(1).re / 2.0,
        (_, 3) => -p.coeff(2).re / 3.0,
        _ => {
            let (c, b, a) = (p.coeff(0).re, p.coeff(1).re, p.coeff(2).re);
            (9.0 * c - a * b) / (2.0 * (a * a - 3.0 * b))
        }
    };
    Complex64::new(re, 0.0)
}

/// PT dimer `ε = 0`, `γ = (t, -t)`.
pub fn pt2_path(j: f64) -> impl Fn(f64) -> Option<WellParameters> + Sync {
    move |t| WellParameters::dimer([0.0, 0.0], [t, -t], j).ok()
}

/// Closed dimer `ε = (t, 0)`, `γ = 0`.
pub fn hermitian2_path(j: f64) -> impl Fn(f64) -> Option<WellParameters> + Sync {
    move |t| WellParameters::dimer([t, 0.0], [0.0, 0.0], j).ok()
}

/// Anti-PT trimer `ε = (t, 0, -t)` with the `γ0 > 0` (or `< 0`) triple.
pub fn antipt3_path(j: f64, positive: bool) -> impl Fn(f64) -> Option<WellParameters> + Sync {
    slice3_path(j, move |t| [t, 0.0, -t], positive)
}

/// Any line through `(ε1, ε2, ε3)` space, using the closed-form triple.
/// Points without a triple solution are skipped.
pub fn slice3_path<F>(j: f64, eps: F, positive: bool) -> impl Fn(f64) -> Option<WellParameters> + Sync
where
    F: Fn(f64) -> [f64; 3] + Sync,
{
    move |t| {
        let e = eps(t);
        match solve_3mode_gammas(e, j) {
            ThreeModeSolution::Triples { triples, .. } => {
                WellParameters::trimer(e, triples[usize::from(!positive)], j).ok()
            }
            _ => None,
        }
    }
}
