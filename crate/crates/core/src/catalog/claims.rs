use serde::{Deserialize, Serialize};

use crate::exactnum::Scalar;
use crate::linalg::Matrix;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClaimSet {
    pub version: u32,
    pub claims: Vec<TheoremRecord>,
}

/// Expected obstruction order: `"none"` or a power of `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawOrder", into = "RawOrder")]
pub enum ExpectedOrder {
    None,
    Order(usize),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawOrder {
    Order(usize),
    Text(String),
}

impl TryFrom<RawOrder> for ExpectedOrder {
    type Error = String;

    fn try_from(r: RawOrder) -> Result<Self, String> {
        match r {
            RawOrder::Order(k) => Ok(ExpectedOrder::Order(k)),
            RawOrder::Text(s) if s == "none" => Ok(ExpectedOrder::None),
            RawOrder::Text(s) => Err(format!("expected \"none\" or a number, got {s:?}")),
        }
    }
}

impl From<ExpectedOrder> for RawOrder {
    fn from(o: ExpectedOrder) -> Self {
        match o {
            ExpectedOrder::None => RawOrder::Text("none".into()),
            ExpectedOrder::Order(k) => RawOrder::Order(k),
        }
    }
}

impl ExpectedOrder {
    pub fn as_option(self) -> Option<usize> {
        match self {
            ExpectedOrder::None => None,
            ExpectedOrder::Order(k) => Some(k),
        }
    }
}

/// A printed residual: coefficient vector of `t^power` at a basis triple.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefectResidual {
    pub triple: [usize; 3],
    pub power: usize,
    pub vector: Vec<Scalar>,
    /// `"right"` or `"left"`: which identity the residual was written for.
    pub convention: String,
}

/// An algebra, optionally deformed by one of its named cocycles at `t0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainRef {
    pub algebra: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t0: Option<Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// As printed.
    Printed,
    /// Printed data with a located misprint repaired.
    Corrected,
    /// Not printed; rebuilt here.
    Reconstructed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeAnnotation {
    Figure,
    TextOnly,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsoClaim {
    pub id: String,
    pub anchor: String,
    pub source: CochainRef,
    pub target: CochainRef,
    pub variant: Variant,
    pub basis_change: String,
    /// Row `i` holds the old coordinates of the new basis vector `e'ᵢ`.
    pub matrix: Matrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TheoremRecord {
    MetricList {
        anchor: String,
        dim: usize,
        ids: Vec<String>,
    },
    HlDim {
        anchor: String,
        algebra: String,
        degree: usize,
        expected: usize,
    },
    /// The listed cocycles are cocycles; the count is not a dimension claim.
    ListedCocycles {
        anchor: String,
        algebra: String,
        count: usize,
        cocycles: Vec<String>,
    },
    Obstruction {
        anchor: String,
        algebra: String,
        cocycle: String,
        expected: ExpectedOrder,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        residual: Option<DefectResidual>,
    },
    /// `φ(eᵢ,eᵢ) = eᵢ` is a cocycle obstructed at order 2.
    ObstructionRule {
        anchor: String,
        algebra: String,
        index: usize,
    },
    Isomorphism(IsoClaim),
    DeformationEdge {
        anchor: String,
        dim: usize,
        source: String,
        target: String,
        cocycle: String,
        isomorphisms: Vec<String>,
        annotation: EdgeAnnotation,
    },
    ScanTargets {
        anchor: String,
        algebra: String,
        targets: Vec<String>,
    },
    NoMetricDeformation {
        anchor: String,
        algebra: String,
    },
}

impl TheoremRecord {
    pub fn anchor(&self) -> &str {
        match self {
            TheoremRecord::MetricList { anchor, .. }
            | TheoremRecord::HlDim { anchor, .. }
            | TheoremRecord::ListedCocycles { anchor, .. }
            | TheoremRecord::Obstruction { anchor, .. }
            | TheoremRecord::ObstructionRule { anchor, .. }
            | TheoremRecord::DeformationEdge { anchor, .. }
            | TheoremRecord::ScanTargets { anchor, .. }
            | TheoremRecord::NoMetricDeformation { anchor, .. } => anchor,
            TheoremRecord::Isomorphism(c) => &c.anchor,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            TheoremRecord::MetricList { .. } => "metric_list",
            TheoremRecord::HlDim { .. } => "hl_dim",
            TheoremRecord::ListedCocycles { .. } => "listed_cocycles",
            TheoremRecord::Obstruction { .. } => "obstruction",
            TheoremRecord::ObstructionRule { .. } => "obstruction_rule",
            TheoremRecord::Isomorphism(_) => "isomorphism",
            TheoremRecord::DeformationEdge { .. } => "deformation_edge",
            TheoremRecord::ScanTargets { .. } => "scan_targets",
            TheoremRecord::NoMetricDeformation { .. } => "no_metric_deformation",
        }
    }
}
