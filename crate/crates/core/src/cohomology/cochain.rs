use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::CohomologyError;
use crate::exactnum::Scalar;
use crate::linalg::Vector;

/// A `p`-linear map `𝔏^⊗p → 𝔏` stored densely.
///
/// `values` is indexed row-major by `(i₁,…,i_p,k)`: the coefficient of `eₖ`
/// in `f(e_{i₁},…,e_{i_p})`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cochain {
    arity: usize,
    dim: usize,
    values: Vec<Scalar>,
}

pub(crate) fn tuple_count(dim: usize, arity: usize) -> usize {
    dim.pow(arity as u32)
}

pub(crate) fn tuple_index(dim: usize, idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| acc * dim + i)
}

pub(crate) fn tuple_at(dim: usize, arity: usize, mut flat: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = flat % dim.max(1);
        flat /= dim.max(1);
    }
    out
}

impl Cochain {
    pub fn zero(arity: usize, dim: usize) -> Self {
        Cochain { arity, dim, values: vec![Scalar::zero(); tuple_count(dim, arity) * dim] }
    }

    pub fn from_vector(arity: usize, dim: usize, values: Vector) -> Result<Self, CohomologyError> {
        let expected = tuple_count(dim, arity) * dim;
        if values.len() != expected {
            return Err(CohomologyError::Dimension { expected, got: values.len() });
        }
        Ok(Cochain { arity, dim, values })
    }

    /// Builds from 1-based `(idx, [(k, c)])` entries; repeated terms add up.
    pub fn from_entries<I>(arity: usize, dim: usize, entries: I) -> Result<Self, CohomologyError>
    where
        I: IntoIterator<Item = (Vec<usize>, Vec<(usize, Scalar)>)>,
    {
        let mut f = Cochain::zero(arity, dim);
        for (idx, out) in entries {
            if idx.len() != arity {
                return Err(CohomologyError::Arity { expected: arity, got: idx.len() });
            }
            let zero_based = one_based(&idx, dim)?;
            for (k, c) in out {
                let k = one_based(&[k], dim)?[0];
                f.values[tuple_index(dim, &zero_based) * dim + k] += &c;
            }
        }
        Ok(f)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.values
    }

    pub fn into_vector(self) -> Vector {
        self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    /// `f(e_{i₁},…,e_{i_p})` for 0-based indices.
    pub fn value(&self, idx: &[usize]) -> &[Scalar] {
        let start = tuple_index(self.dim, idx) * self.dim;
        &self.values[start..start + self.dim]
    }

    pub fn value_mut(&mut self, idx: &[usize]) -> &mut [Scalar] {
        let start = tuple_index(self.dim, idx) * self.dim;
        &mut self.values[start..start + self.dim]
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, CohomologyError> {
        self.same_shape(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Cochain { values, ..self.clone() })
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        Cochain { values: self.values.iter().map(|x| x * c).collect(), ..self.clone() }
    }

    /// `f(x, y)` on arbitrary vectors for a 2-cochain.
    pub fn eval2(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        debug_assert_eq!(self.arity, 2);
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let w = xi * yj;
                for (k, c) in self.value(&[i, j]).iter().enumerate() {
                    if !c.is_zero() {
                        out[k].add_mul(&w, c);
                    }
                }
            }
        }
        out
    }

    fn same_shape(&self, other: &Cochain) -> Result<(), CohomologyError> {
        if self.arity != other.arity {
            return Err(CohomologyError::Arity { expected: self.arity, got: other.arity });
        }
        if self.dim != other.dim {
            return Err(CohomologyError::Dimension { expected: self.dim, got: other.dim });
        }
        Ok(())
    }

    /// Nonzero values as 1-based `(idx, [(k, c)])`, in vectorization order.
    pub fn entries(&self) -> Vec<(Vec<usize>, Vec<(usize, Scalar)>)> {
        let n = self.dim;
        (0..tuple_count(n, self.arity))
            .filter_map(|t| {
                let out: Vec<(usize, Scalar)> = self.values[t * n..(t + 1) * n]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k + 1, c.clone()))
                    .collect();
                (!out.is_empty()).then(|| (tuple_at(n, self.arity, t).into_iter().map(|i| i + 1).collect(), out))
            })
            .collect()
    }
}

fn one_based(idx: &[usize], dim: usize) -> Result<Vec<usize>, CohomologyError> {
    idx.iter()
        .map(|&i| if i == 0 || i > dim { Err(CohomologyError::Index { index: i, dim }) } else { Ok(i - 1) })
        .collect()
}

/// On-disk cochain. A term may carry a power of the deformation parameter
/// `t` when a listed cocycle contains `t` literally.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainFile {
    pub arity: usize,
    pub dim: usize,
    pub entries: Vec<CochainEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainEntry {
    pub idx: Vec<usize>,
    pub out: Vec<CochainTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainTerm {
    pub k: usize,
    pub c: Scalar,
    #[serde(default, skip_serializing_if = "is_zero_power")]
    pub t: usize,
}

fn is_zero_power(t: &usize) -> bool {
    *t == 0
}

impl CochainFile {
    pub fn has_literal_t(&self) -> bool {
        self.entries.iter().any(|e| e.out.iter().any(|o| o.t > 0))
    }

    /// Splits by the power of `t`: the file describes `Σ tᵐ·fₘ`.
    pub fn to_parts(&self) -> Result<BTreeMap<usize, Cochain>, CohomologyError> {
        let mut powers: BTreeMap<usize, Vec<(Vec<usize>, Vec<(usize, Scalar)>)>> = BTreeMap::new();
        for e in &self.entries {
            for o in &e.out {
                powers.entry(o.t).or_default().push((e.idx.clone(), vec![(o.k, o.c.clone())]));
            }
        }
        if powers.is_empty() {
            powers.insert(0, Vec::new());
        }
        powers
            .into_iter()
            .map(|(m, entries)| Ok((m, Cochain::from_entries(self.arity, self.dim, entries)?)))
            .collect()
    }

    /// The cochain itself; fails when some term carries a literal `t`.
    pub fn to_cochain(&self) -> Result<Cochain, CohomologyError> {
        if self.has_literal_t() {
            return Err(CohomologyError::LiteralT);
        }
        let mut parts = self.to_parts()?;
        Ok(parts.remove(&0).unwrap_or_else(|| Cochain::zero(self.arity, self.dim)))
    }
}

impl From<&Cochain> for CochainFile {
    fn from(f: &Cochain) -> Self {
        let entries = f
            .entries()
            .into_iter()
            .map(|(idx, out)| CochainEntry { idx, out: out.into_iter().map(|(k, c)| CochainTerm { k, c, t: 0 }).collect() })
            .collect();
        CochainFile { arity: f.arity, dim: f.dim, entries }
    }
}

impl Serialize for Cochain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CochainFile::from(self).serialize(s)
    }
}
