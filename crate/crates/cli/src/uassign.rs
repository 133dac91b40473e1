//! Unit index assignments `u = [E_k : E₀]`, an external input.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::report::UAssignment;
use crate::CliError;

const DEFAULT: &str = include_str!("../data/u_assignments.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Entry {
    p: u64,
    u: u8,
    provenance: String,
}

#[derive(Clone, Debug, Default)]
pub struct UTable(BTreeMap<u64, UAssignment>);

impl UTable {
    fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        let entries: Vec<Entry> = serde_json::from_str(text)
            .map_err(|e| CliError::Usage(format!("u assignments {origin}: {e}")))?;
        let mut map = BTreeMap::new();
        for e in entries {
            if e.u != 1 && e.u != 3 {
                return Err(CliError::Usage(format!(
                    "u assignments {origin}: u = {} for p = {}",
                    e.u, e.p
                )));
            }
            map.insert(
                e.p,
                UAssignment {
                    u: e.u,
                    provenance: e.provenance,
                },
            );
        }
        Ok(Self(map))
    }

    /// The shipped table, or a replacement file.
    pub fn load(file: Option<&Path>) -> Result<Self, CliError> {
        match file {
            None => Self::parse(DEFAULT, "(built in)"),
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Env(format!("u assignments {}: {e}", path.display())))?;
                Self::parse(&text, &path.display().to_string())
            }
        }
    }

    /// Apply `P=U` overrides from the command line.
    pub fn with_overrides(mut self, overrides: &[String]) -> Result<Self, CliError> {
        for o in overrides {
            let parsed = o.split_once('=').and_then(|(p, u)| {
                Some((p.trim().parse::<u64>().ok()?, u.trim().parse::<u8>().ok()?))
            });
            match parsed {
                Some((p, u)) if u == 1 || u == 3 => {
                    self.0.insert(
                        p,
                        UAssignment {
                            u,
                            provenance: "user".into(),
                        },
                    );
                }
                _ => {
                    return Err(CliError::Usage(format!(
                        "--u expects P=U with U in {{1, 3}}, got {o:?}"
                    )))
                }
            }
        }
        Ok(self)
    }

    pub fn get(&self, p: u64) -> Option<&UAssignment> {
        self.0.get(&p)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.keys().copied()
    }
}
