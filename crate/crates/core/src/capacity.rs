//! Explicit size guards for the exhaustive procedures.

use std::fmt;

use thiserror::Error;

/// Environment variable overriding the default guards.
///
/// Either a bare integer (sets the generator guard) or a comma separated
/// list of `generators=N`, `homs=N`, `family=N`.
pub const CAPACITY_ENV: &str = "DFRM_CAPACITY";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Capacity {
    /// Largest generator semilattice whose C-ideals are enumerated.
    pub max_generators: usize,
    /// Largest nominal search space `|dst|^|src|` for homomorphism search.
    pub max_hom_space: u128,
    /// Largest input to subset-family enumeration.
    pub max_family: usize,
}

impl Default for Capacity {
    fn default() -> Self {
        Capacity {
            max_generators: 20,
            max_hom_space: 1_000_000_000_000,
            max_family: 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("capacity guard `{guard}` exceeded: requested {requested}, limit {limit}")]
pub struct CapacityError {
    pub guard: Guard,
    pub requested: u128,
    pub limit: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Guard {
    Generators,
    HomSpace,
    Family,
    Elements,
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Guard::Generators => "generators",
            Guard::HomSpace => "homs",
            Guard::Family => "family",
            Guard::Elements => "elements",
        })
    }
}

impl Capacity {
    pub fn from_env() -> Result<Capacity, String> {
        match std::env::var(CAPACITY_ENV) {
            Ok(v) => Capacity::parse(&v),
            Err(_) => Ok(Capacity::default()),
        }
    }

    pub fn parse(text: &str) -> Result<Capacity, String> {
        let mut cap = Capacity::default();
        let text = text.trim();
        if let Ok(n) = text.parse::<usize>() {
            cap.max_generators = n;
            return Ok(cap);
        }
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| format!("malformed capacity entry `{part}`"))?;
            let bad = |_| format!("malformed capacity value `{value}`");
            match key.trim() {
                "generators" => cap.max_generators = value.trim().parse().map_err(bad)?,
                "homs" => cap.max_hom_space = value.trim().parse().map_err(bad)?,
                "family" => cap.max_family = value.trim().parse().map_err(bad)?,
                other => return Err(format!("unknown capacity key `{other}`")),
            }
        }
        Ok(cap)
    }

    pub(crate) fn check(&self, guard: Guard, requested: u128) -> Result<(), CapacityError> {
        let limit = match guard {
            Guard::Generators => self.max_generators as u128,
            Guard::HomSpace => self.max_hom_space,
            Guard::Family => self.max_family as u128,
            Guard::Elements => crate::bits::MAX_ELEMENTS as u128,
        };
        if requested > limit {
            Err(CapacityError {
                guard,
                requested,
                limit,
            })
        } else {
            Ok(())
        }
    }
}
