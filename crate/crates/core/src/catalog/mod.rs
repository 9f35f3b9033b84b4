//! Bundled data for the classified metric Leibniz algebras, the claims made
//! about them, and a verifier that replays every claim.

mod claims;
mod data;
mod fingerprint;
mod graph;
mod verify;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, BracketEntry};
use crate::cohomology::{Cochain, CochainFile, CohomologyError};
use crate::deformation::{deform, DeformationError, PolyAlgebra};
use crate::exactnum::Scalar;
use crate::forms::{BilinearForm, FormError};
use crate::linalg::Matrix;

pub use claims::{
    ClaimSet, CochainRef, DefectResidual, EdgeAnnotation, ExpectedOrder, IsoClaim, TheoremRecord, Variant,
};
pub use fingerprint::{fingerprint, identify, Fingerprint};
pub use graph::{deformation_graph, DeformationGraph, GraphEdge, GraphNode};
pub use verify::{cocycle_verdict, identity_verdict, check_isomorphism, verify_catalog, verify_catalog_with, Verdict, VerdictKind, VerifyOptions};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown catalog id {0:?}")]
    UnknownId(String),
    #[error("algebra {algebra:?} has no cocycle named {name:?}")]
    UnknownCocycle { algebra: String, name: String },
    #[error("bundled file {file}: {message}")]
    Data { file: String, message: String },
    #[error("deformation graphs exist for dimensions 4 and 5, not {0}")]
    UnsupportedDim(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Deformation(#[from] DeformationError),
    #[error(transparent)]
    Form(#[from] FormError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Label {
    pub ascii: String,
    pub unicode: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    /// Printed with the algebra.
    Printed,
    /// Not printed; rebuilt so that a stated deformation can be replayed.
    Reconstructed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedCocycle {
    pub name: String,
    pub origin: Origin,
    /// Known to contain a probable misprint.
    pub suspect: bool,
    pub provenance: String,
    pub cochain: CochainFile,
}

impl NamedCocycle {
    /// The cochain with every literal `t` set to `t0`.
    pub fn at(&self, t0: &Scalar) -> Result<Cochain, CohomologyError> {
        let parts = self.cochain.to_parts()?;
        let mut acc = Cochain::zero(self.cochain.arity, self.cochain.dim);
        for (m, f) in parts {
            acc = acc.add(&f.scale(&t0.pow(m as u32)))?;
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryFile {
    id: String,
    version: u32,
    label: Label,
    dim: usize,
    lie: bool,
    metric: bool,
    filler: bool,
    provenance: String,
    brackets: Vec<BracketEntry>,
    #[serde(default)]
    metric_form: Option<Matrix>,
    #[serde(default)]
    cocycles: Vec<NamedCocycle>,
}

/// One algebra of the catalog together with what is claimed about it.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub version: u32,
    pub label: Label,
    pub dim: usize,
    pub algebra: Algebra,
    /// Stated to be a Lie algebra.
    pub lie: bool,
    /// Stated to carry an invariant inner product.
    pub metric: bool,
    /// Abelian building block, not part of any classification list.
    pub filler: bool,
    pub provenance: String,
    pub metric_form: Option<BilinearForm>,
    pub cocycles: Vec<NamedCocycle>,
}

impl CatalogEntry {
    pub fn cocycle(&self, name: &str) -> Result<&NamedCocycle, CatalogError> {
        self.cocycles
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| CatalogError::UnknownCocycle { algebra: self.id.clone(), name: name.to_string() })
    }

    /// `μ + t·φ` for a named cocycle; literal `t` inside `φ` is set to `t0`.
    pub fn deformation(&self, name: &str, t0: &Scalar) -> Result<PolyAlgebra, CatalogError> {
        let phi = self.cocycle(name)?.at(t0)?;
        Ok(deform(&self.algebra, &[(phi, 1)])?)
    }
}

pub struct Catalog {
    entries: Vec<CatalogEntry>,
    claims: Vec<TheoremRecord>,
}

impl Catalog {
    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn claims(&self) -> &[TheoremRecord] {
        &self.claims
    }

    pub fn get(&self, id: &str) -> Result<&CatalogEntry, CatalogError> {
        self.entries.iter().find(|e| e.id == id).ok_or_else(|| CatalogError::UnknownId(id.to_string()))
    }
}

fn parse_entry(file: &str, text: &str) -> Result<CatalogEntry, CatalogError> {
    let data_err = |message: String| CatalogError::Data { file: file.to_string(), message };
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: EntryFile = serde_path_to_error::deserialize(de).map_err(|e| data_err(e.to_string()))?;
    let algebra = Algebra::from_brackets(
        raw.dim,
        raw.brackets.iter().map(|b| (b.i, b.j, b.out.iter().map(|t| (t.k, t.c.clone())).collect())),
    )?
    .with_name(raw.id.clone());
    let metric_form = raw.metric_form.map(BilinearForm::new).transpose()?;
    for c in &raw.cocycles {
        if c.cochain.dim != raw.dim || c.cochain.arity != 2 {
            return Err(data_err(format!("cocycle {} has the wrong shape", c.name)));
        }
    }
    Ok(CatalogEntry {
        id: raw.id,
        version: raw.version,
        label: raw.label,
        dim: raw.dim,
        algebra,
        lie: raw.lie,
        metric: raw.metric,
        filler: raw.filler,
        provenance: raw.provenance,
        metric_form,
        cocycles: raw.cocycles,
    })
}

fn build() -> Result<Catalog, CatalogError> {
    let entries = data::ALGEBRAS.iter().map(|(file, text)| parse_entry(file, text)).collect::<Result<Vec<_>, _>>()?;
    let de = &mut serde_json::Deserializer::from_str(data::CLAIMS);
    let set: ClaimSet = serde_path_to_error::deserialize(de)
        .map_err(|e| CatalogError::Data { file: "claims.json".into(), message: e.to_string() })?;
    Ok(Catalog { entries, claims: set.claims })
}

/// The bundled catalog, parsed once.
pub fn catalog() -> &'static Catalog {
    static CELL: OnceLock<Catalog> = OnceLock::new();
    CELL.get_or_init(|| build().expect("bundled catalog data is well formed"))
}

pub fn load(id: &str) -> Result<&'static CatalogEntry, CatalogError> {
    catalog().get(id)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ListFilter {
    pub dim: Option<usize>,
    pub metric: Option<bool>,
}

/// Ids in bundled order. Fillers only show up when no metric filter is set.
pub fn list(filter: ListFilter) -> Vec<&'static str> {
    catalog()
        .entries()
        .iter()
        .filter(|e| filter.dim.is_none_or(|d| e.dim == d))
        .filter(|e| match filter.metric {
            Some(m) => !e.filler && e.metric == m,
            None => true,
        })
        .map(|e| e.id.as_str())
        .collect()
}
