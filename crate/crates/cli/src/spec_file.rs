//! The JSON group description read by `hloc h1loc`.
//!
//! ```json
//! {
//!   "modulus": 8,
//!   "rank": 1,
//!   "generators": [[[3]], [[5]]],
//!   "cocycle": [[4], [4]]
//! }
//! ```
//!
//! `module_rank` may be given but must equal `rank` (the module is the
//! group's own column vectors). `cocycle` lists one module vector per
//! generator. Entries are reduced modulo `modulus` on load.

use std::path::Path;
use std::sync::Arc;

use hloc::{GModule, MatGroup, ResidueMatrix};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpecFile {
    pub modulus: i64,
    pub rank: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module_rank: Option<i64>,
    pub generators: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<Vec<Vec<i64>>>,
}

/// A spec file that failed to load; the message names the offending field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecError(pub String);

impl std::fmt::Display for SpecError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SpecError {}

fn fail<T>(msg: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError(msg.into()))
}

/// A validated spec: the module and, if supplied, the cocycle's values on
/// the generators (reduced).
#[derive(Clone, Debug)]
pub struct LoadedSpec {
    pub module: Arc<GModule>,
    pub cocycle: Option<Vec<Vec<u64>>>,
}

impl GroupSpecFile {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        serde_json::from_str(text).map_err(|e| SpecError(format!("parse error: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self, SpecError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| SpecError(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn from_group(group: &MatGroup) -> Self {
        let generators = group
            .generators()
            .iter()
            .map(|g| {
                (0..g.rows())
                    .map(|i| g.row(i).iter().map(|&x| x as i64).collect())
                    .collect()
            })
            .collect();
        Self {
            modulus: group.modulus() as i64,
            rank: group.rank() as i64,
            module_rank: None,
            generators,
            cocycle: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn load(&self) -> Result<LoadedSpec, SpecError> {
        if self.modulus < 2 {
            return fail(format!("modulus: must be at least 2, got {}", self.modulus));
        }
        if self.rank < 1 {
            return fail(format!("rank: must be at least 1, got {}", self.rank));
        }
        let (m, r) = (self.modulus as u64, self.rank as usize);
        if let Some(mr) = self.module_rank {
            if mr != self.rank {
                return fail(format!("module_rank: must equal rank ({}), got {mr}", self.rank));
            }
        }
        let reduce = |x: i64| x.rem_euclid(self.modulus) as u64;
        let mut gens = Vec::with_capacity(self.generators.len());
        for (k, g) in self.generators.iter().enumerate() {
            if g.len() != r || g.iter().any(|row| row.len() != r) {
                return fail(format!("generators[{k}]: expected a {r}x{r} matrix"));
            }
            let entries = g.iter().flatten().map(|&x| reduce(x)).collect();
            gens.push(ResidueMatrix::new(m, r, r, entries).map_err(|e| SpecError(format!("modulus: {e}")))?);
        }
        let group = if gens.is_empty() {
            MatGroup::trivial(m, r)
        } else {
            MatGroup::generated_by(gens)
        }
        .map_err(|e| SpecError(e.to_string()))?;

        let cocycle = match &self.cocycle {
            None => None,
            Some(values) => {
                if values.len() != self.generators.len() {
                    return fail(format!(
                        "cocycle: expected {} vectors (one per generator), got {}",
                        self.generators.len(),
                        values.len()
                    ));
                }
                if let Some(k) = values.iter().position(|v| v.len() != r) {
                    return fail(format!("cocycle[{k}]: expected {r} entries"));
                }
                Some(values.iter().map(|v| v.iter().map(|&x| reduce(x)).collect()).collect())
            }
        };
        Ok(LoadedSpec {
            module: Arc::new(GModule::natural(Arc::new(group))),
            cocycle,
        })
    }
}
