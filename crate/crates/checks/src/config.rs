//! Suite configuration, read from TOML. Every section is optional; unknown keys are rejected.

use std::path::Path;

use bargmann_core::fock::{binomial, DEFAULT_DIMENSION_CAP};
use serde::{Deserialize, Serialize};

use crate::error::CheckError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Md,
}

impl std::str::FromStr for OutputFormat {
    type Err = CheckError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "md" => Ok(OutputFormat::Md),
            other => Err(CheckError::Config(format!("unknown format `{other}` (expected json, csv or md)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub seed: u64,
    pub format: OutputFormat,
    pub lattice: LatticeConfig,
    pub fock: FockConfig,
    pub profile: ProfileConfig,
    /// Named site windows used by the vacuum and cyclicity checks.
    pub regions: Vec<WindowConfig>,
    pub ccr: CcrConfig,
    pub time_zero: TimeZeroConfig,
    pub high_power: HighPowerConfig,
    pub descent: DescentConfig,
    pub boost: BoostConfig,
    pub positivity: PositivityConfig,
    pub relativistic: RelativisticConfig,
    pub tolerances: Tolerances,
    pub checks: Selection,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 20_240_601,
            format: OutputFormat::Json,
            lattice: LatticeConfig::default(),
            fock: FockConfig::default(),
            profile: ProfileConfig::default(),
            regions: vec![
                WindowConfig { name: "left_half".into(), start: 0, len: 3 },
                WindowConfig { name: "single_site".into(), start: 4, len: 1 },
                WindowConfig { name: "five_sites".into(), start: 1, len: 5 },
            ],
            ccr: CcrConfig::default(),
            time_zero: TimeZeroConfig::default(),
            high_power: HighPowerConfig::default(),
            descent: DescentConfig::default(),
            boost: BoostConfig::default(),
            positivity: PositivityConfig::default(),
            relativistic: RelativisticConfig::default(),
            tolerances: Tolerances::default(),
            checks: Selection::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LatticeConfig {
    pub dims: usize,
    pub sites: usize,
    pub spacing: f64,
}

impl Default for LatticeConfig {
    fn default() -> Self {
        Self { dims: 1, sites: 6, spacing: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FockConfig {
    pub n_max: usize,
    /// Particle mass `m0`.
    pub mass: f64,
}

impl Default for FockConfig {
    fn default() -> Self {
        Self { n_max: 3, mass: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProfileConfig {
    /// `bump` or `gaussian`.
    pub name: String,
    pub width: f64,
    pub quad_order: usize,
}

impl Default for ProfileConfig {
    fn default() -> Self {
        Self { name: "bump".into(), width: 1.0, quad_order: 32 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowConfig {
    pub name: String,
    pub start: usize,
    pub len: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CcrConfig {
    pub pairs: usize,
}

impl Default for CcrConfig {
    fn default() -> Self {
        Self { pairs: 50 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TimeZeroConfig {
    pub sites: usize,
    pub n_max: usize,
    pub site: usize,
    pub quad_orders: Vec<usize>,
    pub narrow_width: f64,
}

impl Default for TimeZeroConfig {
    fn default() -> Self {
        Self { sites: 4, n_max: 2, site: 0, quad_orders: vec![8, 16, 32], narrow_width: 0.05 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HighPowerConfig {
    pub k: usize,
}

impl Default for HighPowerConfig {
    fn default() -> Self {
        Self { k: 2 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DescentConfig {
    pub power_n_max: u32,
    pub certificate_ks: Vec<u32>,
    pub confluence_words: usize,
    pub max_word_len: usize,
    pub echo_n_max: u32,
    pub echo_levels: usize,
    pub echo_amplitude: f64,
}

impl Default for DescentConfig {
    fn default() -> Self {
        Self {
            power_n_max: 50,
            certificate_ks: vec![0, 2, 10, 20],
            confluence_words: 200,
            max_word_len: 10,
            echo_n_max: 3,
            echo_levels: 6,
            echo_amplitude: 0.8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BoostConfig {
    pub n_trunc: usize,
    pub mass: f64,
    pub velocity: f64,
    pub level_cut: usize,
    /// Exact boost vectors for the symbolic series, components written as `p/q`.
    pub symbolic_velocities: Vec<[String; 3]>,
    /// Coherent-state amplitude `(re, im)` for the expectation-value form.
    pub coherent_amplitude: [f64; 2],
}

impl Default for BoostConfig {
    fn default() -> Self {
        let v = |a: &str, b: &str, c: &str| [a.to_string(), b.to_string(), c.to_string()];
        Self {
            n_trunc: 64,
            mass: 1.0,
            velocity: 0.3,
            level_cut: 10,
            symbolic_velocities: vec![v("0", "0", "0"), v("1", "0", "0"), v("1/2", "1/3", "0"), v("-3/7", "5/2", "2/9")],
            coherent_amplitude: [0.5, 0.3],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PositivityCase {
    pub energy: f64,
    pub momentum: [f64; 3],
    pub mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PositivityConfig {
    pub grid_max: f64,
    pub grid_step: f64,
    pub cases: Vec<PositivityCase>,
}

impl Default for PositivityConfig {
    fn default() -> Self {
        Self {
            grid_max: 4.0,
            grid_step: 0.1,
            cases: vec![
                PositivityCase { energy: 1.0, momentum: [1.0, 0.0, 0.0], mass: 1.0 },
                PositivityCase { energy: 1.0, momentum: [1.0, 0.0, 0.0], mass: 0.0 },
                PositivityCase { energy: 1.0, momentum: [0.0, 0.0, 0.0], mass: -1.0 },
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RelativisticConfig {
    pub sites: usize,
    pub spacing: f64,
    pub mass: f64,
    pub region_start: usize,
    pub region_len: usize,
    pub shrunk_start: usize,
    pub shrunk_len: usize,
    pub fock_n_max: usize,
}

impl Default for RelativisticConfig {
    fn default() -> Self {
        Self { sites: 64, spacing: 1.0, mass: 1.0, region_start: 21, region_len: 22, shrunk_start: 27, shrunk_len: 10, fock_n_max: 2 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub ccr: f64,
    pub ccr_unguarded: f64,
    pub vacuum_smeared: f64,
    pub creator_norm: f64,
    pub time_zero: f64,
    /// Distances below `quadrature_noise_floor · ‖ψ₀(g)‖_F` count as converged when judging
    /// whether refinement improves the quadrature.
    pub quadrature_noise_floor: f64,
    pub narrow_window: f64,
    pub separating_vacuum: f64,
    pub separating_norm_fraction: f64,
    pub high_power: f64,
    pub descent_echo: f64,
    pub boost_identity: f64,
    pub boost_expectation: f64,
    pub boost_minimum: f64,
    pub j_squared: f64,
    pub leakage_floor: f64,
    pub one_mode: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            ccr: 1e-12,
            ccr_unguarded: 1e-13,
            vacuum_smeared: 1e-10,
            creator_norm: 1e-12,
            time_zero: 1e-8,
            quadrature_noise_floor: 1e-14,
            narrow_window: 0.02,
            separating_vacuum: 1e-10,
            separating_norm_fraction: 0.5,
            high_power: 1e-12,
            descent_echo: 1e-12,
            boost_identity: 1e-6,
            boost_expectation: 1e-8,
            boost_minimum: 1e-12,
            j_squared: 1e-10,
            leakage_floor: 1e-8,
            one_mode: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct Selection {
    /// Empty means every check.
    pub include: Vec<String>,
    pub exclude: Vec<String>,
}

impl SuiteConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, CheckError> {
        let cfg: SuiteConfig = toml::from_str(text).map_err(|e| CheckError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self, CheckError> {
        let text = std::fs::read_to_string(path).map_err(|e| CheckError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("configuration serialises")
    }

    /// Rejects values the checks cannot run with. All problems are reported together.
    pub fn validate(&self) -> Result<(), CheckError> {
        let mut errs = Vec::new();
        let mut positive = |name: &str, x: f64| {
            if !(x > 0.0 && x.is_finite()) {
                errs.push(format!("{name} must be positive and finite, got {x}"));
            }
        };
        positive("lattice.spacing", self.lattice.spacing);
        positive("fock.mass", self.fock.mass);
        positive("profile.width", self.profile.width);
        positive("time_zero.narrow_width", self.time_zero.narrow_width);
        positive("boost.mass", self.boost.mass);
        positive("positivity.grid_max", self.positivity.grid_max);
        positive("positivity.grid_step", self.positivity.grid_step);
        positive("relativistic.spacing", self.relativistic.spacing);
        positive("relativistic.mass", self.relativistic.mass);
        let t = &self.tolerances;
        for (name, x) in [
            ("ccr", t.ccr),
            ("ccr_unguarded", t.ccr_unguarded),
            ("vacuum_smeared", t.vacuum_smeared),
            ("creator_norm", t.creator_norm),
            ("time_zero", t.time_zero),
            ("quadrature_noise_floor", t.quadrature_noise_floor),
            ("narrow_window", t.narrow_window),
            ("separating_vacuum", t.separating_vacuum),
            ("separating_norm_fraction", t.separating_norm_fraction),
            ("high_power", t.high_power),
            ("descent_echo", t.descent_echo),
            ("boost_identity", t.boost_identity),
            ("boost_expectation", t.boost_expectation),
            ("boost_minimum", t.boost_minimum),
            ("j_squared", t.j_squared),
            ("leakage_floor", t.leakage_floor),
            ("one_mode", t.one_mode),
        ] {
            positive(&format!("tolerances.{name}"), x);
        }

        if !(1..=3).contains(&self.lattice.dims) {
            errs.push(format!("lattice.dims must be 1, 2 or 3, got {}", self.lattice.dims));
        }
        let sites = self.lattice.sites.checked_pow(self.lattice.dims as u32).unwrap_or(usize::MAX);
        if sites < 2 {
            errs.push("lattice must have at least two sites".into());
        }
        if self.fock.n_max < 1 {
            errs.push("fock.n_max must be at least 1".into());
        } else if sites < usize::MAX && binomial((sites + self.fock.n_max) as u64, self.fock.n_max as u64) > DEFAULT_DIMENSION_CAP as u128 {
            errs.push(format!("fock space dimension exceeds the cap of {DEFAULT_DIMENSION_CAP}"));
        }
        if bargmann_core::TimeProfile::<f64>::named(&self.profile.name, 1.0).is_err() {
            errs.push(format!("profile.name `{}` is not bump or gaussian", self.profile.name));
        }
        if self.profile.quad_order < bargmann_core::smeared::MIN_QUAD_ORDER {
            errs.push(format!("profile.quad_order must be at least {}", bargmann_core::smeared::MIN_QUAD_ORDER));
        }
        for w in &self.regions {
            if w.len == 0 || w.len >= sites {
                errs.push(format!("region `{}` must have between 1 and {} sites", w.name, sites.saturating_sub(1)));
            }
            if w.start >= sites {
                errs.push(format!("region `{}` starts outside the lattice", w.name));
            }
        }

        let tz = &self.time_zero;
        if tz.sites < 2 || tz.n_max < 1 || tz.site >= tz.sites {
            errs.push("time_zero needs sites ≥ 2, n_max ≥ 1 and site < sites".into());
        }
        if tz.quad_orders.len() < 2 {
            errs.push("time_zero.quad_orders needs at least two orders".into());
        }
        if tz.quad_orders.iter().any(|&o| o < bargmann_core::smeared::MIN_QUAD_ORDER) {
            errs.push(format!("time_zero.quad_orders must all be at least {}", bargmann_core::smeared::MIN_QUAD_ORDER));
        }
        if tz.quad_orders.windows(2).any(|w| w[0] >= w[1]) {
            errs.push("time_zero.quad_orders must be strictly increasing".into());
        }

        let d = &self.descent;
        if d.power_n_max < 1 {
            errs.push("descent.power_n_max must be at least 1".into());
        }
        if d.echo_levels < d.echo_n_max as usize + 2 {
            errs.push("descent.echo_levels must exceed echo_n_max + 1".into());
        }
        if !(d.echo_amplitude > 0.0 && d.echo_amplitude.is_finite()) {
            errs.push("descent.echo_amplitude must be positive".into());
        }

        let b = &self.boost;
        if b.n_trunc < bargmann_core::oscillator::MIN_OSCILLATOR_LEVELS {
            errs.push(format!("boost.n_trunc must be at least {}", bargmann_core::oscillator::MIN_OSCILLATOR_LEVELS));
        }
        if !(b.velocity != 0.0 && b.velocity.abs() <= 0.5) {
            errs.push(format!("boost.velocity must satisfy 0 < |v| ≤ 0.5, got {}; larger boosts spill past the truncation, increase n_trunc and rescale", b.velocity));
        }
        if b.level_cut > b.n_trunc / 4 {
            errs.push(format!("boost.level_cut {} exceeds n_trunc/4 = {}; increase boost.n_trunc", b.level_cut, b.n_trunc / 4));
        }
        for v in &b.symbolic_velocities {
            for comp in v {
                if crate::checks::parse_rational(comp).is_none() {
                    errs.push(format!("boost.symbolic_velocities entry `{comp}` is not a rational p/q"));
                }
            }
        }

        let r = &self.relativistic;
        if r.sites < 32 {
            errs.push("relativistic.sites must be at least 32".into());
        }
        let margin = r.sites / 8;
        for (name, start, len) in [("region", r.region_start, r.region_len), ("shrunk", r.shrunk_start, r.shrunk_len)] {
            if len == 0 || start < margin || start + len + margin > r.sites {
                errs.push(format!("relativistic.{name} window [{start}, {}) leaves less than L/8 = {margin} sites of margin on a side", start + len));
            }
        }
        if r.shrunk_start < r.region_start || r.shrunk_start + r.shrunk_len > r.region_start + r.region_len || r.shrunk_len >= r.region_len {
            errs.push("relativistic.shrunk window must lie strictly inside the region window".into());
        }
        if r.fock_n_max < 1 {
            errs.push("relativistic.fock_n_max must be at least 1".into());
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(CheckError::Config(errs.join("; ")))
        }
    }
}
