use serde::{Deserialize, Serialize};

use super::{Algebra, AlgebraError};
use crate::exactnum::Scalar;

/// On-disk algebra: 1-based indices, omitted pairs are zero brackets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub out: Vec<OutTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutTerm {
    pub k: usize,
    pub c: Scalar,
}

impl AlgebraFile {
    pub fn to_algebra(&self) -> Result<Algebra, AlgebraError> {
        let a = Algebra::from_brackets(
            self.dim,
            self.brackets.iter().map(|b| (b.i, b.j, b.out.iter().map(|t| (t.k, t.c.clone())).collect())),
        )?;
        Ok(if self.name.is_empty() { a } else { a.with_name(self.name.clone()) })
    }
}

impl From<&Algebra> for AlgebraFile {
    fn from(a: &Algebra) -> Self {
        let n = a.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let out: Vec<OutTerm> = a
                    .basis_bracket(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| OutTerm { k: k + 1, c: c.clone() })
                    .collect();
                if !out.is_empty() {
                    brackets.push(BracketEntry { i: i + 1, j: j + 1, out });
                }
            }
        }
        AlgebraFile { name: a.name().unwrap_or_default().to_string(), dim: n, brackets }
    }
}
