//! Common selection interface over the five pseudoinverse algorithms.

use core::fmt;
use core::str::FromStr;

use crate::baselines::{pinv_greville, pinv_gso_qr, pinv_hyperpower, IterativeConfig};
use crate::cholesky::ToleranceConfig;
use crate::error::Result;
use crate::geninv::pinv_geninv;
use crate::matrix::Matrix;
use crate::svd::{pinv_svd_reference, SvdConfig};

/// The five implemented pseudoinverse methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PinvAlgorithm {
    Geninv,
    Greville,
    GsoQr,
    Hyperpower,
    Svd,
}

impl PinvAlgorithm {
    pub const ALL: [PinvAlgorithm; 5] = [
        PinvAlgorithm::Geninv,
        PinvAlgorithm::Greville,
        PinvAlgorithm::GsoQr,
        PinvAlgorithm::Hyperpower,
        PinvAlgorithm::Svd,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PinvAlgorithm::Geninv => "geninv",
            PinvAlgorithm::Greville => "greville",
            PinvAlgorithm::GsoQr => "gso-qr",
            PinvAlgorithm::Hyperpower => "hyperpower",
            PinvAlgorithm::Svd => "svd",
        }
    }

    pub fn compute(&self, g: &Matrix, cfg: &AlgorithmConfig) -> Result<Matrix> {
        match self {
            PinvAlgorithm::Geninv => pinv_geninv(g, &cfg.tolerance),
            PinvAlgorithm::Greville => Ok(pinv_greville(g)),
            PinvAlgorithm::GsoQr => pinv_gso_qr(g, &cfg.tolerance),
            PinvAlgorithm::Hyperpower => pinv_hyperpower(g, &cfg.iterative),
            PinvAlgorithm::Svd => pinv_svd_reference(g, &cfg.svd),
        }
    }
}

impl fmt::Display for PinvAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PinvAlgorithm {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        PinvAlgorithm::ALL
            .iter()
            .copied()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                crate::error::Error::InvalidSpec(alloc::format!("unknown algorithm `{s}`"))
            })
    }
}

/// Per-algorithm configuration bundle used by the common interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgorithmConfig {
    pub tolerance: ToleranceConfig,
    pub iterative: IterativeConfig,
    pub svd: SvdConfig,
}

impl Default for AlgorithmConfig {
    fn default() -> Self {
        AlgorithmConfig {
            tolerance: ToleranceConfig::default(),
            iterative: IterativeConfig::default(),
            svd: SvdConfig::default(),
        }
    }
}
