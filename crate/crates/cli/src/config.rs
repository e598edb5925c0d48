//! Run configuration: a TOML file with one table per module, overridable
//! by `--set table.key=value`. The hash of the effective configuration is
//! stamped on every output file.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use xi_spectral::special::{QuadratureConfig, WhittakerConfig, ZetaConfig};
use xi_spectral::ShootingConfig;

use crate::CliError;

/// Environment variable naming a configuration file.
pub const CONFIG_ENV: &str = "XISPEC_CONFIG";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpecialSection {
    pub truncation_t: f64,
    pub series_cutoff: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
    pub zeta_bernoulli_terms: usize,
    pub whittaker_series_terms: usize,
    pub whittaker_ode_rtol: f64,
}

impl Default for SpecialSection {
    fn default() -> Self {
        let q = QuadratureConfig::<f64>::default();
        Self {
            truncation_t: q.truncation_t,
            series_cutoff: q.series_cutoff,
            abs_tol: q.abs_tol,
            rel_tol: q.rel_tol,
            max_panels: q.max_panels,
            zeta_bernoulli_terms: q.zeta.bernoulli_terms,
            whittaker_series_terms: q.whittaker.series_terms,
            whittaker_ode_rtol: q.whittaker.ode_rtol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ShootingSection {
    pub seed_tol: f64,
    pub energy_margin: f64,
    pub ode_rtol: f64,
    pub regime_tol: f64,
}

impl Default for ShootingSection {
    fn default() -> Self {
        let s = ShootingConfig::default();
        Self { seed_tol: s.seed_tol, energy_margin: s.energy_margin, ode_rtol: s.ode_rtol, regime_tol: s.regime_tol }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CuspSection {
    /// Largest |n| in the Whittaker mode sum.
    pub n_max: usize,
    pub mesh_nx: usize,
    pub mesh_ny: usize,
    pub mesh_y_max: f64,
}

impl Default for CuspSection {
    fn default() -> Self {
        Self { n_max: 9, mesh_nx: 64, mesh_ny: 64, mesh_y_max: 3.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ZerosSection {
    /// Sampling step of the sign-change scan.
    pub step: f64,
    pub xtol: f64,
    /// Pairs farther apart than this are reported unmatched.
    pub match_cap: f64,
}

impl Default for ZerosSection {
    fn default() -> Self {
        Self { step: 0.05, xtol: 1e-12, match_cap: 0.5 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub special: SpecialSection,
    pub shooting: ShootingSection,
    pub cusp: CuspSection,
    pub zeros: ZerosSection,
}

impl RunConfig {
    /// Reads `path`, or the file named by the environment, or the defaults,
    /// then applies `key=value` overrides.
    pub fn load(path: Option<&Path>, overrides: &[String]) -> Result<Self, CliError> {
        let env = std::env::var_os(CONFIG_ENV);
        let path = path.or(env.as_deref().map(Path::new));
        let mut table = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", p.display())))?;
                text.parse::<toml::Table>()
                    .map_err(|e| CliError::Usage(format!("config {}: {e}", p.display())))?
            }
            None => toml::Table::new(),
        };
        for o in overrides {
            apply_override(&mut table, o)?;
        }
        let cfg: RunConfig = toml::Value::Table(table)
            .try_into()
            .map_err(|e: toml::de::Error| CliError::Usage(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        let s = &self.special;
        let positive = [
            ("special.truncation_t", s.truncation_t),
            ("special.abs_tol", s.abs_tol),
            ("special.rel_tol", s.rel_tol),
            ("special.whittaker_ode_rtol", s.whittaker_ode_rtol),
            ("shooting.seed_tol", self.shooting.seed_tol),
            ("shooting.energy_margin", self.shooting.energy_margin),
            ("shooting.ode_rtol", self.shooting.ode_rtol),
            ("shooting.regime_tol", self.shooting.regime_tol),
            ("cusp.mesh_y_max", self.cusp.mesh_y_max),
            ("zeros.step", self.zeros.step),
            ("zeros.xtol", self.zeros.xtol),
            ("zeros.match_cap", self.zeros.match_cap),
        ];
        if let Some((k, _)) = positive.iter().find(|(_, v)| !(*v > 0.0 && v.is_finite())) {
            return Err(CliError::Usage(format!("{k} must be positive and finite")));
        }
        if s.series_cutoff == 0 || s.max_panels == 0 || self.cusp.n_max == 0 {
            return Err(CliError::Usage("series_cutoff, max_panels and n_max must be at least 1".into()));
        }
        Ok(())
    }

    pub fn quadrature(&self) -> QuadratureConfig<f64> {
        let s = &self.special;
        let d = QuadratureConfig::default();
        QuadratureConfig {
            truncation_t: s.truncation_t,
            series_cutoff: s.series_cutoff,
            abs_tol: s.abs_tol,
            rel_tol: s.rel_tol,
            max_panels: s.max_panels,
            zeta: ZetaConfig { bernoulli_terms: s.zeta_bernoulli_terms, ..d.zeta },
            whittaker: WhittakerConfig { series_terms: s.whittaker_series_terms, ode_rtol: s.whittaker_ode_rtol, ..d.whittaker },
        }
    }

    pub fn shooting(&self) -> ShootingConfig {
        ShootingConfig {
            quad: self.quadrature(),
            seed_tol: self.shooting.seed_tol,
            energy_margin: self.shooting.energy_margin,
            ode_rtol: self.shooting.ode_rtol,
            regime_tol: self.shooting.regime_tol,
        }
    }

    /// SHA-256 of the canonical TOML rendering, hex encoded.
    pub fn hash(&self) -> String {
        let text = toml::to_string(self).expect("configuration serialises");
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

fn apply_override(table: &mut toml::Table, spec: &str) -> Result<(), CliError> {
    let bad = || CliError::Usage(format!("override `{spec}` is not of the form table.key=value"));
    let (key, raw) = spec.split_once('=').ok_or_else(bad)?;
    let (section, field) = key.trim().split_once('.').ok_or_else(bad)?;
    // Parse the value as a TOML literal so numbers keep their type.
    let value = format!("v = {}", raw.trim())
        .parse::<toml::Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .ok_or_else(bad)?;
    let entry = table
        .entry(section.to_string())
        .or_insert_with(|| toml::Value::Table(toml::Table::new()));
    match entry {
        toml::Value::Table(t) => {
            t.insert(field.to_string(), value);
            Ok(())
        }
        _ => Err(bad()),
    }
}
