//! Scenario configuration, read from TOML.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Deserialize;

/// A configuration problem; reported with exit status 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

pub fn config_error(msg: impl Into<String>) -> anyhow::Error {
    ConfigError(msg.into()).into()
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub scenario: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub model: Option<ModelConfig>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub states: States,
    #[serde(default)]
    pub random: RandomConfig,
    #[serde(default)]
    pub entropy: EntropySection,
    #[serde(default)]
    pub workbounds: WorkSection,
    #[serde(default)]
    pub toy_sector: SectorSection,
    #[serde(default)]
    pub cattaneo: CattaneoSection,
    #[serde(default)]
    pub carnot: CarnotSection,
    #[serde(default)]
    pub planck: PlanckSection,
    /// Directory of the config file; relative model paths resolve here.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModelConfig {
    Toy {
        #[serde(default = "one")]
        c: f64,
    },
    ToyGrid {
        #[serde(default = "one")]
        c: f64,
        #[serde(default = "one")]
        lo: f64,
        #[serde(default = "five")]
        hi: f64,
        #[serde(default = "grid_h")]
        h: f64,
        #[serde(default)]
        rub_step: Option<f64>,
        #[serde(default)]
        fourier_step: Option<f64>,
    },
    Finite {
        file: PathBuf,
        #[serde(default)]
        entropy: FiniteEntropy,
        #[serde(default)]
        energy_coord: Option<usize>,
    },
    Random,
    IdealGas {
        #[serde(default = "cv")]
        cv: f64,
        #[serde(default = "one")]
        r: f64,
        #[serde(default = "one")]
        exponent: f64,
        #[serde(default = "theta_range")]
        theta: [f64; 2],
        #[serde(default = "volume_range")]
        volume: [f64; 2],
    },
    Additive {
        entropies: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiniteEntropy {
    #[default]
    Coord0,
    Rank,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub bisection: f64,
    pub compare: f64,
    pub energy_drift: f64,
    pub planck: f64,
    /// Allowed affine residual in units of the bisection tolerance.
    pub residual_factor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            bisection: 1e-6,
            compare: 1e-9,
            energy_drift: 1e-9,
            planck: 1e-8,
            residual_factor: 10.0,
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct States {
    /// Temperature pairs for the toy models.
    pub toy: Option<Vec<[f64; 2]>>,
    /// Node names for finite models; all nodes when absent.
    pub nodes: Option<Vec<String>>,
    /// `(Θ, V)` points for EOS models.
    pub eos: Option<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RandomConfig {
    pub count: usize,
    pub max_states: usize,
    pub edge_prob: f64,
    pub products: bool,
    pub negative_controls: bool,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig {
            count: 100,
            max_states: 12,
            edge_prob: 0.15,
            products: true,
            negative_controls: true,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EntropySection {
    /// Indices of the reference pair among the states.
    pub refs: [usize; 2],
    /// Optional second pair for the affine uniqueness check.
    pub second_refs: Option<[usize; 2]>,
}

impl Default for EntropySection {
    fn default() -> Self {
        EntropySection {
            refs: [0, 1],
            second_refs: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WorkSection {
    pub t0: f64,
    /// Environment state: a temperature pair (toy) or a node name (finite).
    pub x0: Option<[f64; 2]>,
    pub x0_node: Option<String>,
    /// Synthesize `Φ` from the Carnot extension (toy only).
    pub carnot_candidate: bool,
    /// Extra random related pairs for the monotonicity check.
    pub random_pairs: usize,
}

impl Default for WorkSection {
    fn default() -> Self {
        WorkSection {
            t0: 1.0,
            x0: None,
            x0_node: None,
            carnot_candidate: true,
            random_pairs: 0,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SectorSection {
    pub state: [f64; 2],
    pub tmax: f64,
    pub c: f64,
}

impl Default for SectorSection {
    fn default() -> Self {
        SectorSection {
            state: [1.0, 3.0],
            tmax: 5.0,
            c: 1.0,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CattaneoSection {
    pub tau: f64,
    pub k: f64,
    pub c: f64,
    pub dt: f64,
    pub t_end: f64,
    pub x0: [f64; 2],
    pub q0: f64,
}

impl Default for CattaneoSection {
    fn default() -> Self {
        CattaneoSection {
            tau: 0.0,
            k: 1.0,
            c: 1.0,
            dt: 0.01,
            t_end: 20.0,
            x0: [1.0, 3.0],
            q0: 0.0,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CarnotSection {
    pub kappa: f64,
    pub k_leak: f64,
    pub c: f64,
    pub dt: f64,
    pub t_end: f64,
    pub engine_rate: f64,
    pub x0: [f64; 2],
    /// Run once per entry instead of at `kappa`.
    pub kappa_sweep: Option<Vec<f64>>,
}

impl Default for CarnotSection {
    fn default() -> Self {
        CarnotSection {
            kappa: 10.0,
            k_leak: 0.0,
            c: 1.0,
            dt: 0.02,
            t_end: 2000.0,
            engine_rate: 0.1,
            x0: [1.0, 3.0],
            kappa_sweep: Some(vec![1.0, 10.0, 100.0]),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PlanckSection {
    pub theta0: f64,
    pub t0: f64,
    pub thetas: Vec<f64>,
    pub volumes: [f64; 2],
}

impl Default for PlanckSection {
    fn default() -> Self {
        PlanckSection {
            theta0: 4.0,
            t0: 2.0,
            thetas: vec![1.0, 2.0, 4.0, 9.0, 16.0, 25.0, 49.0],
            volumes: [0.5, 3.0],
        }
    }
}

fn one() -> f64 {
    1.0
}
fn five() -> f64 {
    5.0
}
fn grid_h() -> f64 {
    0.05
}
fn cv() -> f64 {
    1.5
}
fn theta_range() -> [f64; 2] {
    [0.1, 100.0]
}
fn volume_range() -> [f64; 2] {
    [0.1, 10.0]
}

impl Config {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| config_error(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg: Config = toml::from_str(&text).map_err(|e| config_error(format!("{}: {e}", path.display())))?;
        cfg.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(cfg)
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    /// The seed, which randomized harnesses must have.
    pub fn require_seed(&self) -> anyhow::Result<u64> {
        self.seed
            .ok_or_else(|| config_error("a seed is required for randomized runs (config `seed` or --seed)"))
    }
}
