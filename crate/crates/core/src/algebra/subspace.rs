use crate::exactnum::Scalar;
use crate::linalg::{Matrix, Vector};

/// A subspace of `ambient_dim`-space held as the nonzero rows of a reduced
/// row echelon matrix, so equal subspaces have equal bases.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::identity(ambient_dim).to_rows() }
    }

    pub fn from_spanning(ambient_dim: usize, vectors: impl IntoIterator<Item = Vector>) -> Self {
        let rows: Vec<Vector> = vectors.into_iter().filter(|v| v.iter().any(|x| !x.is_zero())).collect();
        if rows.is_empty() {
            return Subspace::zero(ambient_dim);
        }
        let (r, pivots) = Matrix::from_rows(rows).expect("equal-length vectors").rref();
        let basis = (0..pivots.len()).map(|k| r.row(k).to_vec()).collect();
        Subspace { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut gens = self.basis.clone();
        gens.push(v.to_vec());
        Subspace::from_spanning(self.ambient_dim, gens).dim() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }
}
