//! JSON descriptor files for distributions, chains, density matrices and
//! quantum sources.
//!
//! ```text
//! distribution    {"p": [0.5, 0.25, 0.25]}
//! chain           {"T": [[0.9, 0.1], [0.2, 0.8]], "init": [..]}      init optional
//! density         {"dim": 2, "re": [[..], [..]], "im": [[..], [..]]}  im optional
//! quantum source  {"kind": "product", "base": <density>}
//!                 {"kind": "cc", "chain": <chain>, "unitary": {"re": .., "im": ..}}
//! ```

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::entropy::ProbVector;
use crate::error::{Error, Result};
use crate::quantum::{CMatrix, DensityMatrix, QuantumBlockSource};
use crate::sources::MarkovChain;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DistributionFile {
    p: Vec<f64>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainFile {
    #[serde(rename = "T")]
    t: Vec<Vec<f64>>,
    #[serde(default)]
    init: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    #[serde(default)]
    dim: Option<usize>,
    re: Vec<Vec<f64>>,
    #[serde(default)]
    im: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum QuantumSourceFile {
    Product {
        base: MatrixFile,
    },
    Cc {
        chain: ChainFile,
        #[serde(default)]
        unitary: Option<MatrixFile>,
    },
}

fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            Error::validation(format!("malformed descriptor: {inner}"))
        } else {
            Error::validation(format!("{path}: {inner}"))
        }
    })
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn in_field(prefix: &'static str) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Validation(msg) => Error::Validation(format!("{prefix}.{msg}")),
        other => other,
    }
}

impl MatrixFile {
    fn into_matrix(self) -> Result<CMatrix> {
        let m = CMatrix::from_parts(&self.re, self.im.as_deref())?;
        if let Some(dim) = self.dim {
            if dim != m.dim() {
                return Err(Error::validation(format!(
                    "dim: declared {dim} but re is {0}x{0}",
                    m.dim()
                )));
            }
        }
        Ok(m)
    }
}

impl ChainFile {
    fn into_chain(self) -> Result<MarkovChain> {
        MarkovChain::new(self.t, self.init)
    }
}

pub fn parse_distribution(text: &str) -> Result<ProbVector> {
    let f: DistributionFile = parse(text)?;
    let p = ProbVector::new(f.p)?;
    match f.labels {
        Some(labels) => p.with_labels(labels),
        None => Ok(p),
    }
}

pub fn parse_chain(text: &str) -> Result<MarkovChain> {
    parse::<ChainFile>(text)?.into_chain()
}

/// A normalized density matrix.
pub fn parse_density(text: &str) -> Result<DensityMatrix> {
    DensityMatrix::new(parse::<MatrixFile>(text)?.into_matrix()?)
}

/// Any square complex matrix in the density-file layout (`dim` optional).
pub fn parse_matrix(text: &str) -> Result<CMatrix> {
    parse::<MatrixFile>(text)?.into_matrix()
}

pub fn parse_quantum_source(text: &str) -> Result<QuantumBlockSource> {
    match parse::<QuantumSourceFile>(text)? {
        QuantumSourceFile::Product { base } => {
            let base = base
                .into_matrix()
                .and_then(DensityMatrix::new)
                .map_err(in_field("base"))?;
            QuantumBlockSource::product(base)
        }
        QuantumSourceFile::Cc { chain, unitary } => {
            let chain = chain.into_chain().map_err(in_field("chain"))?;
            let unitary = unitary
                .map(MatrixFile::into_matrix)
                .transpose()
                .map_err(in_field("unitary"))?;
            QuantumBlockSource::classically_correlated(chain, unitary)
        }
    }
}

pub fn load_distribution(path: impl AsRef<Path>) -> Result<ProbVector> {
    parse_distribution(&read(path.as_ref())?)
}

pub fn load_chain(path: impl AsRef<Path>) -> Result<MarkovChain> {
    parse_chain(&read(path.as_ref())?)
}

pub fn load_density(path: impl AsRef<Path>) -> Result<DensityMatrix> {
    parse_density(&read(path.as_ref())?)
}

pub fn load_matrix(path: impl AsRef<Path>) -> Result<CMatrix> {
    parse_matrix(&read(path.as_ref())?)
}

pub fn load_quantum_source(path: impl AsRef<Path>) -> Result<QuantumBlockSource> {
    parse_quantum_source(&read(path.as_ref())?)
}
