//! Resource caps shared by the expensive searches.

use crate::error::{Error, Result};
use std::env;

/// Environment variable overriding the default caps, same syntax as
/// [`Caps::parse`].
pub const CAPS_ENV: &str = "PGFUSION_CAPS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Caps {
    /// Largest group order handled.
    pub order: usize,
    /// Largest group order whose subgroup lattice is enumerated.
    pub subgroups: usize,
    /// Largest group order whose automorphism group is enumerated in full.
    pub aut: usize,
    /// Largest base order for fusion system enumeration.
    pub fusion: usize,
    /// Largest group order for isomorphism tests.
    pub iso: usize,
    /// Node budget for backtracking searches.
    pub budget: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            order: 4096,
            subgroups: 64,
            aut: 128,
            fusion: 64,
            iso: 512,
            budget: 5_000_000,
        }
    }
}

impl Caps {
    /// Defaults, overridden by `PGFUSION_CAPS` when set and valid.
    pub fn from_env() -> Self {
        match env::var(CAPS_ENV) {
            Ok(s) => Caps::default().with_overrides(&s).unwrap_or_default(),
            Err(_) => Caps::default(),
        }
    }

    /// Parses `key=value` pairs separated by commas, e.g.
    /// `order=1024,aut=256,budget=100000`.
    pub fn parse(s: &str) -> Result<Self> {
        Caps::default().with_overrides(s)
    }

    pub fn with_overrides(mut self, s: &str) -> Result<Self> {
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::ParamOutOfRange(format!("cap `{part}` needs key=value")))?;
            let v: u64 = v
                .trim()
                .parse()
                .map_err(|_| Error::ParamOutOfRange(format!("cap value `{v}` is not a number")))?;
            match k.trim() {
                "order" => self.order = v as usize,
                "subgroups" => self.subgroups = v as usize,
                "aut" => self.aut = v as usize,
                "fusion" => self.fusion = v as usize,
                "iso" => self.iso = v as usize,
                "budget" => self.budget = v,
                other => return Err(Error::ParamOutOfRange(format!("unknown cap `{other}`"))),
            }
        }
        Ok(self)
    }
}
