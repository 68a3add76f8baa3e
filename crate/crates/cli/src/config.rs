use std::sync::Arc;

use fjump_core::{Integers, Limits, MonomialOrder, PolyRing, Prime, PrimeField};
use serde::{Serialize, Serializer};

use crate::CliError;

/// Output format of a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub max_terms: u64,
    pub max_pairs: u64,
    pub max_pe: u64,
}

impl Default for Caps {
    fn default() -> Self {
        let l = Limits::default();
        Caps {
            max_terms: l.max_terms,
            max_pairs: l.max_pairs,
            max_pe: l.max_pe,
        }
    }
}

impl From<Caps> for Limits {
    fn from(c: Caps) -> Self {
        Limits {
            max_terms: c.max_terms,
            max_pairs: c.max_pairs,
            max_pe: c.max_pe,
        }
    }
}

fn serialize_order<S: Serializer>(order: &MonomialOrder, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(order)
}

/// Everything that determines a run. Echoed verbatim in every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub prime: Option<u64>,
    pub vars: Vec<String>,
    #[serde(serialize_with = "serialize_order")]
    pub order: MonomialOrder,
    pub e_max: u32,
    pub seed: u64,
    pub trials: u64,
    pub caps: Caps,
    pub format: Format,
    /// Wall-clock timings make reports non-reproducible, so they are opt-in.
    #[serde(skip)]
    pub timing: bool,
    /// Worker threads; `0` lets the pool decide. Does not affect output.
    #[serde(skip)]
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            prime: None,
            vars: vec!["x".into(), "y".into()],
            order: MonomialOrder::Grevlex,
            e_max: 2,
            seed: 0,
            trials: 100,
            caps: Caps::default(),
            format: Format::Text,
            timing: false,
            jobs: 1,
        }
    }
}

impl RunConfig {
    pub fn limits(&self) -> Limits {
        self.caps.into()
    }

    pub fn prime(&self) -> Result<Prime, CliError> {
        let p = self
            .prime
            .ok_or_else(|| CliError::Usage("--prime is required".into()))?;
        Ok(Prime::new(p)?)
    }

    pub fn fp_ring(&self) -> Result<Arc<PolyRing<PrimeField>>, CliError> {
        Ok(PolyRing::with_limits(
            PrimeField(self.prime()?),
            &self.vars,
            self.limits(),
        )?)
    }

    pub fn z_ring(&self) -> Result<Arc<PolyRing<Integers>>, CliError> {
        Ok(PolyRing::with_limits(Integers, &self.vars, self.limits())?)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let c = self.caps;
        if c.max_terms == 0 || c.max_pairs == 0 || c.max_pe == 0 {
            return Err(CliError::Usage("caps must be positive".into()));
        }
        Ok(())
    }
}
