//! JSON design files.
//!
//! A single design is `{"q", "n", "k", "t", "lambda"?, "blocks": [[row, ...], ...]}`
//! with each block a `k x n` matrix of field elements. A family replaces
//! `blocks` by `"designs": [blocks, ...]`. Blocks are canonicalized to
//! reduced row echelon form on load.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfspaces::{Elem, GrassmannIndexer, Subspace};
use crate::steiner::design::Design;
use crate::steiner::params::ParamSet;

pub type BlockMatrix = Vec<Vec<Elem>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignFile {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub t: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<u64>,
    pub blocks: Vec<BlockMatrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignFamilyFile {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub designs: Vec<Vec<BlockMatrix>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum AnyFile {
    Single(DesignFile),
    Family(DesignFamilyFile),
}

/// Blocks read from a file, already canonical.
#[derive(Clone, Debug)]
pub struct LoadedBlocks {
    pub params: ParamSet,
    pub lambda: u64,
    pub blocks: Vec<Subspace>,
}

#[derive(Clone, Debug)]
pub struct LoadedFamily {
    pub params: ParamSet,
    pub designs: Vec<Vec<Subspace>>,
}

fn to_block(params: &ParamSet, m: &BlockMatrix) -> Result<Subspace> {
    let (k, n) = (params.k(), params.n());
    if m.len() != k || m.iter().any(|r| r.len() != n) {
        return Err(Error::MalformedBlock(format!("block is not a {k}x{n} matrix")));
    }
    let flat: Vec<Elem> = m.iter().flatten().copied().collect();
    Subspace::from_basis(params.field(), n, k, &flat)
}

fn block_rows(s: &Subspace) -> BlockMatrix {
    s.basis_rows().map(<[Elem]>::to_vec).collect()
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

impl DesignFile {
    pub fn load(&self) -> Result<LoadedBlocks> {
        let params = ParamSet::new_allow_trivial(self.t, self.k, self.n, self.q)?;
        let blocks = self.blocks.iter().map(|m| to_block(&params, m)).collect::<Result<_>>()?;
        Ok(LoadedBlocks { params, lambda: self.lambda.unwrap_or(1), blocks })
    }

    pub fn from_blocks(params: &ParamSet, lambda: Option<u64>, blocks: &[Subspace]) -> Self {
        DesignFile {
            q: params.q(),
            n: params.n(),
            k: params.k(),
            t: params.t(),
            lambda,
            blocks: blocks.iter().map(block_rows).collect(),
        }
    }

    pub fn from_design(design: &Design) -> Result<Self> {
        Ok(Self::from_blocks(design.params(), None, &design.subspaces()?))
    }
}

impl DesignFamilyFile {
    pub fn load(&self) -> Result<LoadedFamily> {
        let params = ParamSet::new_allow_trivial(self.t, self.k, self.n, self.q)?;
        let designs = self
            .designs
            .iter()
            .map(|d| d.iter().map(|m| to_block(&params, m)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(LoadedFamily { params, designs })
    }

    pub fn from_designs(params: &ParamSet, designs: &[Design]) -> Result<Self> {
        let designs = designs
            .iter()
            .map(|d| Ok(d.subspaces()?.iter().map(block_rows).collect()))
            .collect::<Result<_>>()?;
        Ok(DesignFamilyFile { q: params.q(), n: params.n(), k: params.k(), t: params.t(), designs })
    }
}

impl LoadedFamily {
    /// Converts to index-based designs, sharing one parameter set.
    pub fn to_designs(&self) -> Result<Vec<Design>> {
        let shared = Arc::new(self.params.clone());
        let idx = GrassmannIndexer::new(self.params.field(), self.params.n(), self.params.k())?;
        self.designs
            .iter()
            .map(|d| Ok(Design::new(Arc::clone(&shared), d.iter().map(|b| idx.index_of(b)).collect::<Result<_>>()?)))
            .collect()
    }
}

/// Contents of a design file of either shape.
#[derive(Clone, Debug)]
pub enum DesignDocument {
    Single(LoadedBlocks),
    Family(LoadedFamily),
}

pub fn parse_design_document(text: &str) -> Result<DesignDocument> {
    match serde_json::from_str::<AnyFile>(text) {
        Ok(AnyFile::Single(f)) => Ok(DesignDocument::Single(f.load()?)),
        Ok(AnyFile::Family(f)) => Ok(DesignDocument::Family(f.load()?)),
        // untagged enums swallow the underlying message; retry for a useful one
        Err(_) => match serde_json::from_str::<serde_json::Value>(text)? {
            v if v.get("designs").is_some() => Err(serde_json::from_value::<DesignFamilyFile>(v).unwrap_err().into()),
            v => Err(serde_json::from_value::<DesignFile>(v).unwrap_err().into()),
        },
    }
}

pub fn load_design_document(path: &Path) -> Result<DesignDocument> {
    parse_design_document(&read(path)?)
}

pub fn load_design_file(path: &Path) -> Result<LoadedBlocks> {
    let file: DesignFile = serde_json::from_str(&read(path)?)?;
    file.load()
}

pub fn save_design_file(path: &Path, file: &DesignFile) -> Result<()> {
    write(path, &(serde_json::to_string_pretty(file)? + "\n"))
}

pub fn save_family_file(path: &Path, file: &DesignFamilyFile) -> Result<()> {
    write(path, &(serde_json::to_string_pretty(file)? + "\n"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steiner::design::{enumerate_steiner, verify_design};

    #[test]
    fn round_trip() {
        let p = ParamSet::new(1, 2, 4, 2).unwrap();
        let d = enumerate_steiner(&p).unwrap().swap_remove(7);
        let file = DesignFile::from_design(&d).unwrap();
        let text = serde_json::to_string(&file).unwrap();
        let DesignDocument::Single(loaded) = parse_design_document(&text).unwrap() else { panic!() };
        assert_eq!(loaded.blocks, d.subspaces().unwrap());
        assert!(verify_design(&loaded.blocks, &loaded.params, loaded.lambda).unwrap().valid);
    }

    #[test]
    fn canonicalizes_blocks() {
        let text = r#"{"q":2,"n":4,"k":2,"t":1,"blocks":[[[1,1,0,0],[0,1,0,0]]]}"#;
        let DesignDocument::Single(loaded) = parse_design_document(text).unwrap() else { panic!() };
        assert_eq!(loaded.blocks[0].basis(), &[1, 0, 0, 0, 0, 1, 0, 0]);
    }

    #[test]
    fn family_round_trip() {
        let p = ParamSet::new(1, 2, 4, 2).unwrap();
        let all = enumerate_steiner(&p).unwrap();
        let file = DesignFamilyFile::from_designs(&p, &all[..4]).unwrap();
        let text = serde_json::to_string(&file).unwrap();
        let DesignDocument::Family(f) = parse_design_document(&text).unwrap() else { panic!() };
        assert_eq!(f.to_designs().unwrap(), all[..4].to_vec());
    }

    #[test]
    fn rejects_bad_input() {
        let dependent = r#"{"q":2,"n":4,"k":2,"t":1,"blocks":[[[1,1,0,0],[1,1,0,0]]]}"#;
        assert!(matches!(parse_design_document(dependent), Err(Error::MalformedBlock(_))));
        let out_of_field = r#"{"q":2,"n":4,"k":2,"t":1,"blocks":[[[2,0,0,0],[0,1,0,0]]]}"#;
        assert!(matches!(parse_design_document(out_of_field), Err(Error::MalformedBlock(_))));
        let short = r#"{"q":2,"n":4,"k":2,"t":1,"blocks":[[[1,0,0],[0,1,0,0]]]}"#;
        assert!(matches!(parse_design_document(short), Err(Error::MalformedBlock(_))));
        assert!(matches!(parse_design_document("{"), Err(Error::Parse(_))));
        assert!(matches!(parse_design_document(r#"{"q":2}"#), Err(Error::Parse(_))));
    }
}
