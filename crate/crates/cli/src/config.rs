//! JSON configuration document.
//!
//! Every field is optional on disk; command-line flags are applied on top
//! and the merged result is validated again before a command runs.

use clap::ValueEnum;
use serde::Deserialize;
use symmwell::explorer::{Branch, Parametrisation};
use symmwell::linalg::{MAX_DIM, MIN_DIM};
use symmwell::model::WellParameters;

use crate::error::CliError;

fn one() -> f64 {
    1.0
}

fn default_tolerance() -> f64 {
    1e-9
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct Config {
    pub wells: Option<usize>,
    pub epsilons: Option<Vec<f64>>,
    pub gammas: Option<Vec<f64>>,
    #[serde(default = "one")]
    pub coupling: f64,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default)]
    pub symmetrise: SymmetriseBlock,
    #[serde(default)]
    pub sweep2: Sweep2Block,
    #[serde(default)]
    pub sweep3: Sweep3Block,
    #[serde(default)]
    pub map2: Map2Block,
    #[serde(default)]
    pub map3: Map3Block,
    #[serde(default)]
    pub ep: EpBlock,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            wells: None,
            epsilons: None,
            gammas: None,
            coupling: 1.0,
            tolerance: default_tolerance(),
            symmetrise: SymmetriseBlock::default(),
            sweep2: Sweep2Block::default(),
            sweep3: Sweep3Block::default(),
            map2: Map2Block::default(),
            map3: Map3Block::default(),
            ep: EpBlock::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "camelCase")]
pub enum SideChoice {
    Left,
    Right,
    #[default]
    Both,
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct SymmetriseBlock {
    #[serde(default)]
    pub side: SideChoice,
    /// One weight per real eigenvalue.
    pub real_weights: Option<Vec<f64>>,
    /// `[re, im]` of `p⁺` per conjugate pair.
    pub pair_weights: Option<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "camelCase")]
pub enum ParKind {
    #[default]
    #[serde(alias = "a")]
    #[value(alias = "a")]
    Pt,
    #[serde(alias = "b")]
    #[value(alias = "b")]
    Rotated,
    #[serde(alias = "c")]
    #[value(alias = "c")]
    Shifted,
    #[serde(alias = "d")]
    #[value(alias = "d", alias = "luntTrap")]
    LuntTrap,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "camelCase")]
pub enum BranchChoice {
    #[default]
    #[value(alias = "eps1Greater")]
    Eps1Greater,
    #[value(alias = "eps1Less")]
    Eps1Less,
}

impl From<BranchChoice> for Branch {
    fn from(b: BranchChoice) -> Self {
        match b {
            BranchChoice::Eps1Greater => Branch::Eps1Greater,
            BranchChoice::Eps1Less => Branch::Eps1Less,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "camelCase")]
pub struct Sweep2Block {
    pub par: ParKind,
    /// Only for `custom`: `γk = slope[k] γ + offset[k]`.
    pub slope: [f64; 2],
    pub offset: [f64; 2],
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub steps: usize,
    pub branch: BranchChoice,
}

impl Default for Sweep2Block {
    fn default() -> Self {
        Self {
            par: ParKind::Pt,
            slope: [1.0, -1.0],
            offset: [0.0, 0.0],
            gamma_min: 0.0,
            gamma_max: 2.0,
            steps: 201,
            branch: BranchChoice::Eps1Greater,
        }
    }
}

impl Sweep2Block {
    pub fn parametrisation(&self) -> Parametrisation {
        match self.par {
            ParKind::Pt => Parametrisation::Pt,
            ParKind::Rotated => Parametrisation::Rotated,
            ParKind::Shifted => Parametrisation::Shifted,
            ParKind::LuntTrap => Parametrisation::LuntTrap,
            ParKind::Custom => Parametrisation::Custom { slope: self.slope, offset: self.offset },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "camelCase")]
pub struct Sweep3Block {
    pub eps_min: f64,
    pub eps_max: f64,
    pub steps: usize,
    /// Sign of `γ0`.
    pub positive: bool,
}

impl Default for Sweep3Block {
    fn default() -> Self {
        Self { eps_min: -1.2, eps_max: 1.2, steps: 240, positive: true }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "camelCase")]
pub struct Map2Block {
    pub gamma1: [f64; 2],
    pub gamma2: [f64; 2],
    pub resolution: [usize; 2],
    pub branch: BranchChoice,
}

impl Default for Map2Block {
    fn default() -> Self {
        Self { gamma1: [-2.0, 2.0], gamma2: [-2.0, 2.0], resolution: [101, 101], branch: BranchChoice::Eps1Greater }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "camelCase")]
pub struct Map3Block {
    pub fixed_axis: usize,
    pub fixed_value: f64,
    pub u_range: [f64; 2],
    pub v_range: [f64; 2],
    pub resolution: [usize; 2],
    pub positive: bool,
}

impl Default for Map3Block {
    fn default() -> Self {
        Self {
            fixed_axis: 2,
            fixed_value: 0.0,
            u_range: [-1.5, 1.5],
            v_range: [-1.5, 1.5],
            resolution: [61, 61],
            positive: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "camelCase")]
pub enum PathKind {
    /// `ε = 0`, `γ = (t, -t)`.
    #[default]
    Pt2,
    /// `ε = (t, 0)`, `γ = 0`.
    Hermitian2,
    /// `ε = (t, 0, -t)` with the closed-form triple.
    Antipt3,
    /// `ε = origin + t direction` with the closed-form triple.
    Slice3,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "camelCase")]
pub struct EpBlock {
    pub path: PathKind,
    pub interval: [f64; 2],
    pub grid: usize,
    pub order: Option<u8>,
    pub positive: bool,
    pub origin: [f64; 3],
    pub direction: [f64; 3],
}

impl Default for EpBlock {
    fn default() -> Self {
        Self {
            path: PathKind::Pt2,
            interval: [0.0, 2.0],
            grid: symmwell::explorer::DEFAULT_EP_GRID,
            order: None,
            positive: true,
            origin: [0.0, 0.0, 0.0],
            direction: [1.0, 0.0, 0.0],
        }
    }
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<Config, CliError> {
    let cfg: Config = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}

impl Config {
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if !(self.coupling.is_finite() && self.coupling > 0.0) {
            return bad(format!("coupling: must be positive, got {}", self.coupling));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return bad(format!("tolerance: must be positive, got {}", self.tolerance));
        }
        let wells = self.wells.or(self.epsilons.as_ref().map(Vec::len)).or(self.gammas.as_ref().map(Vec::len));
        if let Some(n) = wells {
            if !(MIN_DIM..=MAX_DIM).contains(&n) {
                return bad(format!("wells: must be in {MIN_DIM}..={MAX_DIM}, got {n}"));
            }
            for (key, list) in [("epsilons", &self.epsilons), ("gammas", &self.gammas)] {
                if let Some(v) = list {
                    if v.len() != n {
                        return bad(format!("{key}: length {} does not match wells {n}", v.len()));
                    }
                    if let Some(k) = v.iter().position(|x| !x.is_finite()) {
                        return bad(format!("{key}[{k}]: not finite"));
                    }
                }
            }
        }
        if let Some(o) = self.ep.order {
            if !(o == 2 || o == 3) {
                return bad(format!("ep.order: must be 2 or 3, got {o}"));
            }
        }
        if self.map3.fixed_axis > 2 {
            return bad(format!("map3.fixedAxis: must be 0, 1 or 2, got {}", self.map3.fixed_axis));
        }
        Ok(())
    }

    /// The on-site parameters of a single system.
    pub fn parameters(&self) -> Result<WellParameters, CliError> {
        let (Some(eps), Some(gammas)) = (&self.epsilons, &self.gammas) else {
            return Err(CliError::Config("epsilons and gammas are both required".into()));
        };
        WellParameters::new(eps.clone(), gammas.clone(), self.coupling).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn epsilons3(&self) -> Result<[f64; 3], CliError> {
        match self.epsilons.as_deref() {
            Some(&[a, b, c]) => Ok([a, b, c]),
            Some(v) => Err(CliError::Config(format!("epsilons: need 3 values, got {}", v.len()))),
            None => Err(CliError::Config("epsilons: required".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pt_dimer_config() {
        let c = parse_config(r#"{"wells":2,"epsilons":[0,0],"gammas":[1,-1],"coupling":1.0}"#).unwrap();
        assert_eq!(c.wells, Some(2));
        assert_eq!(c.tolerance, 1e-9);
        let p = c.parameters().unwrap();
        assert_eq!(p.gammas(), &[1.0, -1.0]);
    }

    #[test]
    fn length_mismatch_names_key() {
        let e = parse_config(r#"{"wells":3,"epsilons":[0.5,0],"gammas":[0,0,0]}"#).unwrap_err();
        assert_eq!(e.to_string(), "invalid config: epsilons: length 2 does not match wells 3");
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn asymmetric_config() {
        let c = parse_config(r#"{"wells":2,"epsilons":[0,0],"gammas":[2,-0.5],"coupling":1.0}"#).unwrap();
        assert_eq!(c.parameters().unwrap().gammas(), &[2.0, -0.5]);
    }

    #[test]
    fn defaults_and_blocks() {
        let c = parse_config(r#"{"sweep2":{"par":"b","steps":11},"ep":{"path":"antipt3","order":3}}"#).unwrap();
        assert_eq!(c.coupling, 1.0);
        assert_eq!(c.sweep2.par, ParKind::Rotated);
        assert_eq!(c.sweep2.steps, 11);
        assert_eq!(c.sweep2.gamma_max, 2.0);
        assert_eq!(c.ep.path, PathKind::Antipt3);
        assert!(c.parameters().is_err());
    }

    #[test]
    fn rejections() {
        for text in [
            r#"{"wells":2,"epsilons":[0,0],"gammas":[1,-1],"coupling":0}"#,
            r#"{"wells":2,"colour":"red"}"#,
            r#"{"sweep2":{"steps":3,"extra":1}}"#,
            r#"{"wells":17}"#,
            r#"{"tolerance":-1}"#,
            r#"{"ep":{"order":4}}"#,
            r#"{"wells":2"#,
        ] {
            assert!(parse_config(text).is_err(), "{text}");
        }
    }
}
