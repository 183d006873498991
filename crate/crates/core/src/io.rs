//! JSON input documents for groups and complexes.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::{load_complex, ComplexDocument, GSimplicialComplex};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PermutationGenerators {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

/// `{"name": .., "cayley": [[..]]}` or
/// `{"name": .., "permutations": {"degree": d, "generators": [[..]]}}`.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDocument {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cayley: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutations: Option<PermutationGenerators>,
}

impl GroupDocument {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self, cap: usize) -> Result<FiniteGroup> {
        match (&self.cayley, &self.permutations) {
            (Some(table), None) => FiniteGroup::from_cayley(&self.name, table, cap),
            (None, Some(p)) => {
                FiniteGroup::from_permutations(&self.name, p.degree, &p.generators, cap)
            }
            _ => Err(Error::InvalidInput(
                "group document needs exactly one of 'cayley' or 'permutations'".into(),
            )),
        }
    }
}

pub fn read_group(path: &Path, cap: usize) -> Result<FiniteGroup> {
    GroupDocument::parse(&std::fs::read_to_string(path)?)?.build(cap)
}

pub fn read_complex(path: &Path, group: Arc<FiniteGroup>) -> Result<GSimplicialComplex> {
    load_complex(
        &ComplexDocument::parse(&std::fs::read_to_string(path)?)?,
        group,
    )
}
