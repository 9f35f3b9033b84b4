use serde::Serialize;

use super::{catalog, CatalogEntry};
use crate::algebra::{Algebra, SeriesKind};
use crate::cohomology::coboundary_matrix;
use crate::forms::invariant_form_space;

/// Isomorphism invariants, cheap enough to compute for every scan hit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub lie: bool,
    pub lower_central: Vec<usize>,
    pub derived: Vec<usize>,
    pub kernel: usize,
    pub center: usize,
    pub invariant_forms: usize,
    pub derivations: usize,
}

pub fn fingerprint(a: &Algebra) -> Fingerprint {
    let n = a.dim();
    let derivations = match coboundary_matrix(a, 1) {
        Ok(d) => n * n - d.rank(),
        Err(_) => usize::MAX,
    };
    Fingerprint {
        dim: n,
        lie: a.is_antisymmetric(),
        lower_central: a.series(SeriesKind::LowerCentral).dims(),
        derived: a.series(SeriesKind::Derived).dims(),
        kernel: a.leibniz_kernel().dim(),
        center: a.center().dim(),
        invariant_forms: invariant_form_space(a).len(),
        derivations,
    }
}

/// The unique non-filler catalog entry sharing the fingerprint, if any.
/// Matching invariants is evidence, not a proof of isomorphism.
pub fn identify(a: &Algebra) -> Option<&'static CatalogEntry> {
    let fp = fingerprint(a);
    let mut found = catalog().entries().iter().filter(|e| !e.filler && e.dim == fp.dim && fingerprint(&e.algebra) == fp);
    let first = found.next()?;
    found.next().is_none().then_some(first)
}
