//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Reference values come from closed forms and from an independent oracle:
//! characteristic polynomials expanded by cofactors and rooted with the
//! Durand–Kerner iteration, sharing no code with the library eigensolver.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symmwell::explorer::{
    antipt3_path, classify_3mode, find_ep, map_2mode_region, map_3mode_region, pt2_path, slice3_path, sweep_2mode,
    sweep_3mode_antipt, Branch, EpOptions, Execution, Parametrisation, PlaneSpec, RegionClass,
};
use symmwell::linalg::{biorthonormalize, classify_pairing, eig, norm2, ComplexMatrix};
use symmwell::model::{build_hamiltonian, state_balance, StateVector, WellParameters};
use symmwell::symmetriser::{
    build_spectral_symmetriser, charpoly_reality_residual, delta_epsilon_2mode, eigen2_closed,
    quasi_commutator_residual, semi_inverse_residual, solve_3mode_gammas, solve_pauli_2mode, Side, SpectralWeights,
    ThreeModeSolution,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

// ---------------------------------------------------------------- oracle

/// Monic characteristic coefficients `c_0..c_{n-1}` by cofactor expansion (n <= 3).
fn oracle_char_poly(h: &ComplexMatrix) -> Vec<Complex64> {
    let m = |i: usize, j: usize| h[(i, j)];
    match h.dim() {
        2 => vec![m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0), -(m(0, 0) + m(1, 1))],
        3 => {
            let tr = m(0, 0) + m(1, 1) + m(2, 2);
            let minors = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)
                + m(1, 1) * m(2, 2)
                - m(1, 2) * m(2, 1);
            let det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
            vec![-det, minors, -tr]
        }
        n => panic!("oracle handles n <= 3, got {n}"),
    }
}

fn poly_eval(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(c(1.0, 0.0), |acc, &k| acc * x + k)
}

/// Durand–Kerner roots, sorted by `(Re, Im)`.
fn oracle_eigs(h: &ComplexMatrix) -> Vec<Complex64> {
    let coeffs = oracle_char_poly(h);
    let n = coeffs.len();
    let radius = 1.0 + coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let seed = c(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * radius).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut den = c(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                continue;
            }
            let step = poly_eval(&coeffs, z[i]) / den;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved <= 1e-17 * radius {
            break;
        }
    }
    sorted(z)
}

fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    v
}

fn max_set_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    // greedy nearest matching; sets are tiny
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (k, d) = b
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, y)| (k, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("equal sizes");
        used[k] = true;
        worst = worst.max(d);
    }
    worst
}

// ------------------------------------------------------- sample families

fn pt_dimer_params() -> Vec<(f64, WellParameters)> {
    (0..201)
        .map(|k| {
            let g = 2.0 * k as f64 / 200.0;
            (g, WellParameters::dimer([0.0, 0.0], [g, -g], 1.0).unwrap())
        })
        .collect()
}

fn rotated_params(g: f64) -> WellParameters {
    let (g1, g2) = Parametrisation::Rotated.gammas(g, 1.0).unwrap();
    let de = delta_epsilon_2mode(g1, g2, 1.0).unwrap().plus;
    WellParameters::dimer([de / 2.0, -de / 2.0], [g1, g2], 1.0).unwrap()
}

fn ellipse_gammas() -> Vec<f64> {
    (1..=50).map(|k| k as f64 / 51.0).collect()
}

fn antipt_eps() -> Vec<f64> {
    (0..240).map(|k| -1.2 + 2.4 * k as f64 / 239.0).collect()
}

fn random_admissible(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let e: [f64; 3] = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
        let (a, b, d) = (e[0] - e[1], e[1] - e[2], e[0] - e[2]);
        let gaps = a.abs() >= 0.05 && b.abs() >= 0.05 && d.abs() >= 0.05;
        if gaps && a * b > 0.0 && a * b <= 1.0 {
            return e;
        }
    }
}

fn random_triples(n: usize, seed: u64) -> Vec<([f64; 3], [[f64; 3]; 2])> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let e = random_admissible(&mut rng);
            match solve_3mode_gammas(e, 1.0) {
                ThreeModeSolution::Triples { triples, .. } => (e, triples),
                other => panic!("admissible sample {e:?} gave {other:?}"),
            }
        })
        .collect()
}

// -------------------------------------------------------------- criteria

fn criterion_1() -> Outcome {
    let rows = sweep_2mode(Parametrisation::Pt, (0.0, 2.0), 201, 1.0, Branch::default(), Execution::default())
        .map_err(|e| e.to_string())?;
    ensure!(rows.len() == 201, "expected 201 rows, got {}", rows.len());
    let mut worst: f64 = 0.0;
    for ((g, p), row) in pt_dimer_params().iter().zip(&rows) {
        ensure!((row.gamma - g).abs() < 1e-15, "grid mismatch at {g}");
        let expected = if *g < 1.0 {
            vec![c(-(1.0 - g * g).sqrt(), 0.0), c((1.0 - g * g).sqrt(), 0.0)]
        } else {
            vec![c(0.0, -(g * g - 1.0).sqrt()), c(0.0, (g * g - 1.0).sqrt())]
        };
        worst = worst.max(max_set_distance(&[row.mu_plus, row.mu_minus], &expected));
        if (g - 1.0).abs() > 0.02 {
            let h = build_hamiltonian(p);
            worst = worst.max(max_set_distance(&eig(&h).unwrap().values(), &expected));
            worst = worst.max(max_set_distance(&oracle_eigs(&h), &expected));
        }
    }
    ensure!(worst <= 1e-10, "eigenvalue error {worst:e} > 1e-10");
    let path = pt2_path(1.0);
    let eps = find_ep(&path, (0.0, 2.0), EpOptions::default()).map_err(|e| e.to_string())?;
    ensure!(eps.len() == 1, "expected one EP, found {}", eps.len());
    let err = (eps[0].location - 1.0).abs();
    ensure!(err <= 1e-8 && eps[0].order == 2, "EP at {} (order {})", eps[0].location, eps[0].order);
    Ok(format!("max eigenvalue error {worst:.1e}; EP2 at {} (error {err:.1e})", eps[0].location))
}

fn criterion_2() -> Outcome {
    let p = rotated_params(0.5);
    let h = build_hamiltonian(&p);
    let target = 5.0 * 3f64.sqrt() / 8.0;
    let (a, b) = eigen2_closed(&p).map_err(|e| e.to_string())?;
    let numeric = eig(&h).map_err(|e| e.to_string())?.values();
    let oracle = oracle_eigs(&h);
    let mut worst: f64 = 0.0;
    for set in [vec![a, b], numeric, oracle] {
        let (real, other): (Vec<Complex64>, Vec<Complex64>) = set.iter().copied().partition(|z| z.im.abs() <= 1e-10);
        ensure!(real.len() == 1, "expected one real eigenvalue in {set:?}");
        let r = real[0];
        worst = worst.max((r.re.abs() - target).abs()).max(r.im.abs());
        worst = worst.max((other[0] - c(-r.re, 0.75)).norm());
    }
    ensure!(worst <= 1e-10, "eigenvalue error {worst:e}");
    let sol = solve_pauli_2mode(&p).map_err(|e| e.to_string())?;
    ensure!(sol.family_dimension == 1, "family dimension {}", sol.family_dimension);
    let s = sol.symmetriser(0, &h).map_err(|e| e.to_string())?;
    ensure!(s.rank == 1, "rank {}", s.rank);
    ensure!(s.residual <= 1e-10, "residual {:e}", s.residual);
    Ok(format!("|mu| error {worst:.1e}; family dim 1, rank 1, residual {:.1e}", s.residual))
}

fn criterion_3() -> Outcome {
    let mut worst: f64 = 0.0;
    for g in ellipse_gammas() {
        let p = rotated_params(g);
        let expected = 1.25 * (1.0 - g * g).sqrt();
        let (a, b) = eigen2_closed(&p).map_err(|e| e.to_string())?;
        let real: Vec<Complex64> = [a, b].into_iter().filter(|z| z.im.abs() <= 1e-9).collect();
        ensure!(real.len() == 1, "gamma {g}: {} real eigenvalues", real.len());
        worst = worst.max((real[0].re.abs() - expected).abs());
        let numeric = eig(&build_hamiltonian(&p)).unwrap();
        let r = numeric.values().into_iter().min_by(|x, y| x.im.abs().total_cmp(&y.im.abs())).unwrap();
        worst = worst.max((r.re.abs() - expected).abs()).max(r.im.abs());
    }
    ensure!(worst <= 1e-9, "ellipse law error {worst:e}");
    Ok(format!("50 samples, max error {worst:.1e}"))
}

fn criterion_4() -> Outcome {
    let grid = map_2mode_region((-2.0, 2.0), (-2.0, 2.0), (101, 101), 1.0, Branch::default(), Execution::default())
        .map_err(|e| e.to_string())?;
    ensure!(grid.len() == 101 * 101, "grid size {}", grid.len());
    let mut counts = std::collections::BTreeMap::new();
    for s in &grid {
        let (i, j) = s.index;
        // γ = (k - 50) * 0.04 exactly in integer arithmetic
        let prod = (i as i64 - 50) * (j as i64 - 50);
        let expected = if !(-625..0).contains(&prod) {
            RegionClass::NotAdmissible
        } else if i + j == 100 {
            RegionClass::PtLine
        } else if prod == -625 {
            RegionClass::Boundary
        } else {
            RegionClass::SemiOneReal
        };
        ensure!(s.class == expected, "({i},{j}) classified {} expected {}", s.class, expected);
        *counts.entry(s.class.as_str()).or_insert(0usize) += 1;
        if !s.class.is_admissible() {
            continue;
        }
        let pairing = classify_pairing(&s.eigenvalues, 1e-8);
        if s.class == RegionClass::PtLine {
            ensure!(pairing.is_conjugation_closed(), "PT sample ({i},{j}) not closed: {:?}", s.eigenvalues);
            continue;
        }
        // semi-symmetrised: one real value, the other's state sits in ker Σ
        ensure!(pairing.real_indices.len() == 1, "({i},{j}) expected one real eigenvalue");
        let p = WellParameters::dimer([s.epsilons[0], s.epsilons[1]], [s.gammas[0], s.gammas[1]], 1.0).unwrap();
        let h = build_hamiltonian(&p);
        let sol = solve_pauli_2mode(&p).map_err(|e| e.to_string())?;
        ensure!(sol.family_dimension >= 1, "({i},{j}) no symmetriser");
        let sigma = sol.symmetriser(0, &h).map_err(|e| e.to_string())?;
        let spec = eig(&h).unwrap();
        let iso = spec.classification.isolated_indices.clone();
        ensure!(iso.len() == 1, "({i},{j}) expected one isolated eigenvalue");
        let r = &spec.pairs[iso[0]].right;
        let leak = norm2(&sigma.matrix.mul_vec(r)) / (sigma.matrix.frobenius() * norm2(r));
        ensure!(leak <= 1e-8, "({i},{j}) isolated state not in kernel: {leak:e}");
    }
    Ok(format!("10201 samples match the analytic predicate {counts:?}"))
}

fn criterion_5() -> Outcome {
    let xs = antipt_eps();
    let rows = sweep_3mode_antipt((-1.2, 1.2), 240, 1.0, true, Execution::default()).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    let mut worst_gamma: f64 = 0.0;
    for (x, row) in xs.iter().zip(&rows) {
        ensure!((row.eps1 - x).abs() < 1e-15, "grid mismatch");
        let admissible = row.class.is_admissible();
        ensure!(admissible == (x.abs() <= 1.0), "eps1 = {x}: admissible = {admissible}");
        if !admissible {
            continue;
        }
        let g = row.gammas;
        worst_gamma = worst_gamma.max((g[0] - g[2]).abs()).max((g[0] + g[1] + g[2]).abs());
        let d = 4.0 * x * x - 1.0;
        let expected = if d >= 0.0 {
            vec![c(-d.sqrt(), 0.0), c(0.0, 0.0), c(d.sqrt(), 0.0)]
        } else {
            vec![c(0.0, -(-d).sqrt()), c(0.0, 0.0), c(0.0, (-d).sqrt())]
        };
        worst = worst.max(max_set_distance(&row.eigenvalues, &expected));
        let h = build_hamiltonian(&WellParameters::trimer([*x, 0.0, -x], g, 1.0).unwrap());
        worst = worst.max(max_set_distance(&oracle_eigs(&h), &expected));
    }
    ensure!(worst <= 1e-9, "spectrum error {worst:e}");
    ensure!(worst_gamma <= 1e-12, "gamma constraint error {worst_gamma:e}");
    let path = antipt3_path(1.0, true);
    let eps = find_ep(&path, (0.2, 0.8), EpOptions::default()).map_err(|e| e.to_string())?;
    ensure!(eps.len() == 1, "expected one EP, found {}", eps.len());
    let e = &eps[0];
    ensure!((e.location - 0.5).abs() <= 1e-6 && e.order == 3, "EP at {} order {}", e.location, e.order);
    Ok(format!(
        "spectrum error {worst:.1e}, gamma error {worst_gamma:.1e}; EP3 at {} (error {:.1e})",
        e.location,
        (e.location - 0.5).abs()
    ))
}

fn criterion_6() -> Outcome {
    let mut worst: f64 = 0.0;
    for (e, triples) in random_triples(1000, 6) {
        for t in triples {
            let h = build_hamiltonian(&WellParameters::trimer(e, t, 1.0).unwrap());
            let r = charpoly_reality_residual(&h);
            worst = worst.max(r);
            ensure!(r <= 1e-10, "eps {e:?}: reality residual {r:e}");
            let values = eig(&h).map_err(|e| e.to_string())?.values();
            let pairing = classify_pairing(&values, 1e-8);
            ensure!(pairing.is_conjugation_closed(), "eps {e:?}, gammas {t:?}: spectrum {values:?} not closed");
        }
    }
    Ok(format!("2000 Hamiltonians, max reality residual {worst:.1e}"))
}

fn criterion_7() -> Outcome {
    let mut done = 0;
    let mut worst = [0.0f64; 5];
    let mut seed_rng = ChaCha8Rng::seed_from_u64(7);
    while done < 200 {
        let e = random_admissible(&mut seed_rng);
        let ThreeModeSolution::Triples { triples, .. } = solve_3mode_gammas(e, 1.0) else { continue };
        let t = triples[usize::from(seed_rng.gen_bool(0.5))];
        let h = build_hamiltonian(&WellParameters::trimer(e, t, 1.0).unwrap());
        let raw = eig(&h).map_err(|e| e.to_string())?;
        if raw.min_self_orthogonality() < 1e-4 {
            continue;
        }
        let s = biorthonormalize(&raw).map_err(|e| e.to_string())?;
        let w = SpectralWeights::default();
        let l = build_spectral_symmetriser(&s, &h, Side::Left, &w).map_err(|e| e.to_string())?;
        let r = build_spectral_symmetriser(&s, &h, Side::Right, &w).map_err(|e| e.to_string())?;
        let q = quasi_commutator_residual(&l.matrix, &r.matrix, &h).map_err(|e| e.to_string())?;
        let si = semi_inverse_residual(&l.matrix, &r.matrix).map_err(|e| e.to_string())?;
        let prod = eig(&(&r.matrix * &l.matrix)).map_err(|e| e.to_string())?;
        let unit = prod.values().iter().map(|z| (z - 1.0).norm()).fold(0.0, f64::max);
        for (k, v) in [l.residual, r.residual, q, si, unit].into_iter().enumerate() {
            worst[k] = worst[k].max(v);
        }
        done += 1;
    }
    ensure!(worst[0] <= 1e-9 && worst[1] <= 1e-9, "symmetrisation residuals {:e} / {:e}", worst[0], worst[1]);
    ensure!(worst[2] <= 1e-9, "quasi-commutator residual {:e}", worst[2]);
    ensure!(worst[3] <= 1e-9, "semi-inverse residual {:e}", worst[3]);
    ensure!(worst[4] <= 1e-8, "Sigma_R Sigma_L eigenvalues off 1 by {:e}", worst[4]);
    Ok(format!(
        "200 systems; residuals L {:.1e}, R {:.1e}, quasi {:.1e}, semi-inverse {:.1e}, |spec(Sigma_R Sigma_L) - 1| {:.1e}",
        worst[0], worst[1], worst[2], worst[3], worst[4]
    ))
}

fn balance_violation(p: &WellParameters) -> Result<(usize, f64), String> {
    let s = eig(&build_hamiltonian(p)).map_err(|e| e.to_string())?;
    let gmax = p.max_abs_gamma();
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for &i in &s.classification.real_indices {
        let psi = StateVector::new(s.pairs[i].right.clone());
        let b = state_balance(&psi, p).map_err(|e| e.to_string())?;
        worst = worst.max(b.abs() / (psi.norm_sqr() * (1.0 + gmax)));
        n += 1;
    }
    Ok((n, worst))
}

fn criterion_8() -> Outcome {
    let mut params: Vec<WellParameters> = pt_dimer_params().into_iter().map(|(_, p)| p).collect();
    params.push(rotated_params(0.5));
    params.extend(ellipse_gammas().into_iter().map(rotated_params));
    for s in map_2mode_region((-2.0, 2.0), (-2.0, 2.0), (101, 101), 1.0, Branch::default(), Execution::default())
        .map_err(|e| e.to_string())?
    {
        if s.class.is_admissible() {
            params
                .push(WellParameters::dimer([s.epsilons[0], s.epsilons[1]], [s.gammas[0], s.gammas[1]], 1.0).unwrap());
        }
    }
    for x in antipt_eps() {
        if let Some(p) = antipt3_path(1.0, true)(x) {
            params.push(p);
        }
    }
    for (e, triples) in random_triples(1000, 6) {
        for t in triples {
            params.push(WellParameters::trimer(e, t, 1.0).unwrap());
        }
    }
    let (mut states, mut worst) = (0usize, 0.0f64);
    for p in &params {
        let (n, w) = balance_violation(p)?;
        states += n;
        worst = worst.max(w);
    }
    ensure!(worst <= 1e-9, "per-state balance violation {worst:e}");
    Ok(format!("{states} real eigenstates over {} Hamiltonians, max |balance| {worst:.1e}", params.len()))
}

fn criterion_9() -> Outcome {
    let (g1, g2) = Parametrisation::LuntTrap.gammas(0.6, 1.0).map_err(|e| e.to_string())?;
    let p = WellParameters::dimer([0.0, 0.0], [g1, g2], 1.0).unwrap();
    let h = build_hamiltonian(&p);
    let s = eig(&h).map_err(|e| e.to_string())?;
    let err = max_set_distance(&s.values(), &[c(0.0, 0.0), c(0.0, 1.5)]);
    ensure!(err <= 1e-10, "eigenvalue error {err:e}");
    ensure!(max_set_distance(&oracle_eigs(&h), &[c(0.0, 0.0), c(0.0, 1.5)]) <= 1e-10, "oracle disagrees");
    let cls = &s.classification;
    ensure!(cls.real_indices.len() == 1 && cls.isolated_indices.len() == 1, "pairing {cls:?}");
    let sol = solve_pauli_2mode(&p).map_err(|e| e.to_string())?;
    ensure!(sol.family_dimension == 1, "family dimension {}", sol.family_dimension);
    let sigma = sol.symmetriser(0, &h).map_err(|e| e.to_string())?;
    ensure!(sigma.rank == 1, "rank {}", sigma.rank);
    ensure!(sigma.hermiticity_error() == 0.0, "not Hermitian");
    let sh = (&sigma.matrix * &h).frobenius();
    let hs = (&h.adjoint() * &sigma.matrix).frobenius();
    ensure!(sh <= 1e-10 && hs <= 1e-10, "|Sigma H| = {sh:e}, |H^dag Sigma| = {hs:e}");
    let flagged = delta_epsilon_2mode(g1, g2, 1.0).is_some_and(|d| d.boundary);
    let row = sweep_2mode(Parametrisation::LuntTrap, (0.0, 0.6), 2, 1.0, Branch::default(), Execution::Sequential)
        .map_err(|e| e.to_string())?;
    ensure!(flagged && row[1].boundary, "boundary flag not set");
    Ok(format!(
        "eigenvalue error {err:.1e}; rank-1 Sigma with |Sigma H| {sh:.1e}, |H^dag Sigma| {hs:.1e}; boundary flagged"
    ))
}

fn criterion_10() -> Outcome {
    let n = 61;
    let plane = PlaneSpec { fixed_axis: 2, fixed_value: 0.0, u_range: (-1.5, 1.5), v_range: (-1.5, 1.5) };
    let grid = map_3mode_region(plane, (n, n), 1.0, Execution::default()).map_err(|e| e.to_string())?;
    let three = grid.iter().filter(|s| s.class == RegionClass::FullThreeReal).count();
    let one = grid.iter().filter(|s| s.class == RegionClass::FullOneReal).count();
    ensure!(three > 0 && one > 0, "fullThreeReal {three}, fullOneReal {one}");
    for s in &grid {
        let e = plane.point(s.inputs.0, s.inputs.1);
        let swapped = classify_3mode([e[2], e[1], e[0]], 1.0, true).map_err(|e| e.to_string())?;
        ensure!(swapped.class == s.class, "{e:?}: {} vs swapped {}", s.class, swapped.class);
    }
    let us: Vec<f64> = (0..n).map(|k| grid[k * n].inputs.0).collect();
    let (mut transitions, mut located, mut cusps) = (0, 0, 0);
    for jv in 0..n {
        for iu in 0..n - 1 {
            let (a, b) = (&grid[iu * n + jv], &grid[(iu + 1) * n + jv]);
            let pair = [a.class, b.class];
            let full = |c: RegionClass| matches!(c, RegionClass::FullThreeReal | RegionClass::FullOneReal);
            if !(full(pair[0]) && full(pair[1]) && pair[0] != pair[1]) {
                continue;
            }
            transitions += 1;
            let e2 = a.inputs.1;
            let path = slice3_path(1.0, move |t| [t, e2, 0.0], true);
            let eps = find_ep(&path, (us[iu], us[iu + 1]), EpOptions { grid: 32, ..EpOptions::default() })
                .map_err(|e| e.to_string())?;
            ensure!(!eps.is_empty(), "no EP between eps1 = {} and {} at eps2 = {e2}", us[iu], us[iu + 1]);
            let lo = us[iu].min(us[iu + 1]);
            let hi = us[iu].max(us[iu + 1]);
            ensure!(eps.iter().all(|e| lo <= e.location && e.location <= hi), "EP outside its bracket");
            if eps.iter().any(|e| e.order == 3) {
                cusps += 1;
            }
            located += 1;
        }
    }
    ensure!(transitions > 0 && located == transitions, "{located} of {transitions} transitions located");
    Ok(format!(
        "{three} fullThreeReal / {one} fullOneReal samples; {transitions} class boundaries located ({cusps} at EP3, the rest EP2); e1<->e3 symmetric"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("PT dimer spectrum and EP2", criterion_1),
        ("semi-symmetrised dimer", criterion_2),
        ("ellipse law", criterion_3),
        ("two-mode region map", criterion_4),
        ("anti-PT triple well and EP3", criterion_5),
        ("three-mode reality property", criterion_6),
        ("symmetriser identity suite", criterion_7),
        ("per-state balance", criterion_8),
        ("Lunt-trap diagnostic", criterion_9),
        ("three-mode cusp structure", criterion_10),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".to_string()));
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} ({name}, {ms} ms): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2} ({name}, {ms} ms): {why}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.2} s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
