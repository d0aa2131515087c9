use std::fmt::Write as _;

use serde_json::{json, Value};
use symmwell::explorer::{
    antipt3_path, find_ep, hermitian2_path, map_2mode_region, map_3mode_region, pt2_path, slice3_path, sweep_2mode,
    sweep_3mode_antipt, EpOptions, Execution, PlaneSpec, RegionSample,
};
use symmwell::linalg::{biorthonormalize, char_poly, eig, Spectrum};
use symmwell::model::{
    build_hamiltonian, is_anti_pt_potential, is_pt_symmetric, pt_anticommutator_norm, pt_commutator_norm,
    state_balance, StateVector, WellParameters,
};
use symmwell::symmetriser::{
    antilinear_t_residual, build_antilinear_t, build_spectral_symmetriser, charpoly_reality_residual,
    delta_epsilon_2mode, eigen2_closed, gamma0_squared, induced_antilinear_symmetry, pauli_coefficient_matrix,
    quasi_commutator_residual, semi_inverse_residual, solve_3mode_gammas, solve_pauli_2mode, Side, SpectralWeights,
    Symmetriser, ThreeModeSolution,
};
use symmwell::Complex64;

use crate::config::{Config, PathKind, SideChoice};
use crate::error::CliError;

/// Command output plus an optional non-zero outcome reported after the data
/// has been written.
pub struct Report {
    pub body: String,
    pub outcome: Option<CliError>,
}

impl Report {
    fn ok(body: String) -> Self {
        Self { body, outcome: None }
    }

    fn json(v: &Value) -> Self {
        Self::ok(to_json(v))
    }
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are serialisable");
    s.push('\n');
    s
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn parameters_json(p: &WellParameters) -> Value {
    json!({
        "wells": p.wells(),
        "epsilons": p.epsilons(),
        "gammas": p.gammas(),
        "coupling": p.coupling(),
    })
}

fn spectrum(cfg: &Config, h: &symmwell::linalg::ComplexMatrix) -> Result<Spectrum, CliError> {
    let mut s = eig(h)?;
    s.reclassify(cfg.tolerance);
    Ok(s)
}

pub fn eigs(cfg: &Config) -> Result<Report, CliError> {
    let p = cfg.parameters()?;
    let h = build_hamiltonian(&p);
    let s = spectrum(cfg, &h)?;
    Ok(Report::json(&json!({
        "parameters": parameters_json(&p),
        "hamiltonian": h,
        "eigenvalues": s.values(),
        "max_residual": s.max_residual(),
        "min_self_orthogonality": s.min_self_orthogonality(),
        "spectrum": s,
    })))
}

pub fn check(cfg: &Config) -> Result<Report, CliError> {
    let p = cfg.parameters()?;
    let h = build_hamiltonian(&p);
    let s = spectrum(cfg, &h)?;
    let cls = &s.classification;
    let mut states = Vec::new();
    for (k, pair) in s.pairs.iter().enumerate() {
        let kind = if cls.real_indices.contains(&k) {
            "real"
        } else if cls.isolated_indices.contains(&k) {
            "isolated"
        } else {
            "pair"
        };
        let psi = StateVector::new(pair.right.clone());
        let balance = state_balance(&psi, &p)?;
        states.push(json!({
            "eigenvalue": pair.value,
            "kind": kind,
            "balance": balance,
            "relative_balance": balance.abs() / (psi.norm_sqr() * (1.0 + p.max_abs_gamma())),
            "occupations": psi.occupations(),
        }));
    }
    Ok(Report::json(&json!({
        "parameters": parameters_json(&p),
        "reality_residual": charpoly_reality_residual(&h),
        "characteristic_polynomial": char_poly(&h).coeffs(),
        "pt_symmetric": is_pt_symmetric(&p, cfg.tolerance),
        "anti_pt_potential": is_anti_pt_potential(&p, cfg.tolerance),
        "pt_commutator_norm": pt_commutator_norm(&h),
        "pt_anticommutator_norm": pt_anticommutator_norm(&h),
        "conjugation_closed": cls.is_conjugation_closed(),
        "states": states,
    })))
}

fn symmetriser_json(s: &Symmetriser) -> Value {
    json!({
        "matrix": s.matrix,
        "rank": s.rank,
        "kernel": s.kernel_basis,
        "residual": s.residual,
        "hermiticity_error": s.hermiticity_error(),
        "coefficients": s.coefficients,
    })
}

pub fn symmetrise(cfg: &Config, side: Option<SideChoice>) -> Result<Report, CliError> {
    let p = cfg.parameters()?;
    let h = build_hamiltonian(&p);
    let s = biorthonormalize(&spectrum(cfg, &h)?)?;
    let block = &cfg.symmetrise;
    let weights = SpectralWeights {
        real: block.real_weights.clone(),
        pairs: block.pair_weights.as_ref().map(|v| v.iter().map(|w| Complex64::new(w[0], w[1])).collect()),
    };
    let side = side.unwrap_or(block.side);
    let want = |s: Side| {
        matches!((side, s), (SideChoice::Both, _) | (SideChoice::Left, Side::Left) | (SideChoice::Right, Side::Right))
    };
    let left = want(Side::Left).then(|| build_spectral_symmetriser(&s, &h, Side::Left, &weights)).transpose()?;
    let right = want(Side::Right).then(|| build_spectral_symmetriser(&s, &h, Side::Right, &weights)).transpose()?;

    let mut out = json!({
        "parameters": parameters_json(&p),
        "eigenvalues": s.values(),
        "classification": s.classification,
    });
    let mut antilinear = serde_json::Map::new();
    for (key, sym, sd) in [("left", &left, Side::Left), ("right", &right, Side::Right)] {
        let Some(sym) = sym else { continue };
        out[key] = symmetriser_json(sym);
        let m = build_antilinear_t(&s, sd)?;
        let residual = antilinear_t_residual(&m, &h, sd)?;
        antilinear.insert(key.into(), json!({ "matrix": m, "residual": residual }));
    }
    out["antilinear"] = Value::Object(antilinear);
    if let (Some(l), Some(r)) = (&left, &right) {
        out["quasi_commutator_residual"] = json!(quasi_commutator_residual(&l.matrix, &r.matrix, &h)?);
        out["semi_inverse_residual"] = json!(semi_inverse_residual(&l.matrix, &r.matrix)?);
    }
    if let Some(l) = &left {
        let m_l = build_antilinear_t(&s, Side::Left)?;
        out["induced_symmetry"] = match induced_antilinear_symmetry(&l.matrix, &m_l, &h) {
            Ok(a) => json!(a),
            Err(e) => json!({ "error": e.to_string() }),
        };
    }
    Ok(Report::json(&out))
}

pub fn solve2(cfg: &Config) -> Result<Report, CliError> {
    let p = cfg.parameters()?;
    if p.wells() != 2 {
        return Err(CliError::Config(format!("solve2 needs 2 wells, got {}", p.wells())));
    }
    let h = build_hamiltonian(&p);
    let sol = solve_pauli_2mode(&p)?;
    let sigmas = (0..sol.family_dimension)
        .map(|k| sol.symmetriser(k, &h).map(|s| symmetriser_json(&s)))
        .collect::<Result<Vec<_>, _>>()?;
    let (g1, g2) = (p.gammas()[0], p.gammas()[1]);
    let (mu_plus, mu_minus) = eigen2_closed(&p)?;
    let body = to_json(&json!({
        "parameters": parameters_json(&p),
        "coefficient_matrix": pauli_coefficient_matrix(&p)?,
        "determinant": sol.determinant_value,
        "singular_values": sol.singular_values,
        "family_dimension": sol.family_dimension,
        "basis": sol.basis,
        "symmetrisers": sigmas,
        "delta_epsilon": delta_epsilon_2mode(g1, g2, p.coupling()),
        "eigenvalues": [mu_plus, mu_minus],
    }));
    let outcome = (sol.family_dimension == 0)
        .then(|| CliError::NotAdmissible("no Hermitian Pauli-basis symmetriser exists for these parameters".into()));
    Ok(Report { body, outcome })
}

pub fn solve3(cfg: &Config) -> Result<Report, CliError> {
    let eps = cfg.epsilons3()?;
    let j = cfg.coupling;
    let sol = solve_3mode_gammas(eps, j);
    let g0sq = matches!(sol, ThreeModeSolution::Triples { .. }).then(|| gamma0_squared(eps, j));
    let body = to_json(&json!({
        "epsilons": eps,
        "coupling": j,
        "gamma0_squared": g0sq,
        "solution": sol,
    }));
    let outcome = sol.is_none().then(|| CliError::NotAdmissible(format!("no gain/loss profile for epsilons {eps:?}")));
    Ok(Report { body, outcome })
}

pub fn sweep2(cfg: &Config, exec: Execution) -> Result<Report, CliError> {
    let b = &cfg.sweep2;
    let rows =
        sweep_2mode(b.parametrisation(), (b.gamma_min, b.gamma_max), b.steps, cfg.coupling, b.branch.into(), exec)?;
    let mut out =
        String::from("gamma,gamma1,gamma2,eps1,eps2,admissible,re_mu_plus,im_mu_plus,re_mu_minus,im_mu_minus\n");
    for r in rows {
        let cols = [r.gamma, r.gamma1, r.gamma2, r.eps1, r.eps2].map(num).join(",");
        let mus = [r.mu_plus.re, r.mu_plus.im, r.mu_minus.re, r.mu_minus.im].map(num).join(",");
        writeln!(out, "{cols},{},{mus}", r.admissible).expect("writing to a String");
    }
    Ok(Report::ok(out))
}

pub fn sweep3(cfg: &Config, exec: Execution) -> Result<Report, CliError> {
    let b = &cfg.sweep3;
    let rows = sweep_3mode_antipt((b.eps_min, b.eps_max), b.steps, cfg.coupling, b.positive, exec)?;
    let mut out = String::from("eps1,gamma1,gamma2,gamma3,class,re_l1,im_l1,re_l2,im_l2,re_l3,im_l3\n");
    for r in rows {
        let g = r.gammas.map(num).join(",");
        let l = r.eigenvalues.iter().flat_map(|z| [num(z.re), num(z.im)]).collect::<Vec<_>>().join(",");
        writeln!(out, "{},{g},{},{l}", num(r.eps1), r.class).expect("writing to a String");
    }
    Ok(Report::ok(out))
}

/// `n` values, NaN-padded.
fn padded(v: &[f64], n: usize) -> String {
    (0..n).map(|k| num(v.get(k).copied().unwrap_or(f64::NAN))).collect::<Vec<_>>().join(",")
}

fn eigen_columns(s: &RegionSample, n: usize) -> String {
    let flat: Vec<f64> = s.eigenvalues.iter().flat_map(|z| [z.re, z.im]).collect();
    padded(&flat, 2 * n)
}

pub fn map2(cfg: &Config, exec: Execution) -> Result<Report, CliError> {
    let b = &cfg.map2;
    let grid = map_2mode_region(
        (b.gamma1[0], b.gamma1[1]),
        (b.gamma2[0], b.gamma2[1]),
        (b.resolution[0], b.resolution[1]),
        cfg.coupling,
        b.branch.into(),
        exec,
    )?;
    let mut out = String::from("i,j,gamma1,gamma2,eps1,eps2,class,re_mu1,im_mu1,re_mu2,im_mu2\n");
    for s in &grid {
        let (g1, g2) = s.inputs;
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            s.index.0,
            s.index.1,
            num(g1),
            num(g2),
            padded(&s.epsilons, 2),
            s.class,
            eigen_columns(s, 2)
        )
        .expect("writing to a String");
    }
    Ok(Report::ok(out))
}

pub fn map3(cfg: &Config, exec: Execution) -> Result<Report, CliError> {
    let b = &cfg.map3;
    let plane = PlaneSpec {
        fixed_axis: b.fixed_axis,
        fixed_value: b.fixed_value,
        u_range: (b.u_range[0], b.u_range[1]),
        v_range: (b.v_range[0], b.v_range[1]),
    };
    let grid = map_3mode_region(plane, (b.resolution[0], b.resolution[1]), cfg.coupling, exec)?;
    let mut out = String::from("i,j,eps1,eps2,eps3,class,gamma1,gamma2,gamma3,re_l1,im_l1,re_l2,im_l2,re_l3,im_l3\n");
    for s in &grid {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            s.index.0,
            s.index.1,
            padded(&s.epsilons, 3),
            s.class,
            padded(&s.gammas, 3),
            eigen_columns(s, 3)
        )
        .expect("writing to a String");
    }
    Ok(Report::ok(out))
}

pub fn ep(cfg: &Config, exec: Execution) -> Result<Report, CliError> {
    let b = &cfg.ep;
    let j = cfg.coupling;
    let opts = EpOptions { grid: b.grid, order_hint: b.order, exec };
    let interval = (b.interval[0], b.interval[1]);
    let results = match b.path {
        PathKind::Pt2 => find_ep(&pt2_path(j), interval, opts),
        PathKind::Hermitian2 => find_ep(&hermitian2_path(j), interval, opts),
        PathKind::Antipt3 => find_ep(&antipt3_path(j, b.positive), interval, opts),
        PathKind::Slice3 => {
            let (o, d) = (b.origin, b.direction);
            let path = slice3_path(j, move |t| [o[0] + t * d[0], o[1] + t * d[1], o[2] + t * d[2]], b.positive);
            find_ep(&path, interval, opts)
        }
    }?;
    Ok(Report::json(&json!({
        "path": format!("{:?}", b.path).to_lowercase(),
        "interval": b.interval,
        "coupling": j,
        "results": results,
    })))
}
