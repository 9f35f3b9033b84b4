use serde::Serialize;

use super::{Algebra, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    LowerCentral,
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    /// First term is the whole algebra. Iteration stops at zero or at the
    /// first term equal to its predecessor (which is kept once).
    pub terms: Vec<Subspace>,
    pub nilpotent: bool,
    pub solvable: bool,
}

impl SeriesReport {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }

    pub fn reaches_zero(&self) -> bool {
        self.terms.last().is_some_and(Subspace::is_zero)
    }
}

impl Algebra {
    /// `[U, V]` for subspaces given by bases.
    pub fn bracket_spaces(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let gens = u
            .basis()
            .iter()
            .flat_map(|x| v.basis().iter().map(move |y| self.bracket_unchecked(x, y)))
            .collect::<Vec<_>>();
        Subspace::from_spanning(self.dim(), gens)
    }

    /// Lower central (`L^{k+1} = [L^k, L]`) or derived (`L^{[k+1]} = [L^{[k]}, L^{[k]}]`) series.
    /// `nilpotent` is only decided by the lower central series and `solvable`
    /// only by the derived one; the other flag reports what the computed
    /// series implies (a lower central series reaching zero implies solvable).
    fn series_terms(&self, kind: SeriesKind) -> Vec<Subspace> {
        let full = Subspace::full(self.dim());
        let mut terms = vec![full.clone()];
        loop {
            let cur = terms.last().expect("nonempty");
            if cur.is_zero() {
                break;
            }
            let next = match kind {
                SeriesKind::LowerCentral => self.bracket_spaces(cur, &full),
                SeriesKind::Derived => self.bracket_spaces(cur, cur),
            };
            let stable = &next == cur;
            terms.push(next);
            if stable {
                break;
            }
        }
        terms
    }

    /// Lower central (`L^{k+1} = [L^k, L]`) or derived (`L^{[k+1]} = [L^{[k]}, L^{[k]}]`)
    /// series. Both flags are always filled in, whichever series is returned.
    pub fn series(&self, kind: SeriesKind) -> SeriesReport {
        let terms = self.series_terms(kind);
        let reaches_zero = terms.last().is_some_and(Subspace::is_zero);
        let (nilpotent, solvable) = match kind {
            SeriesKind::LowerCentral => (reaches_zero, reaches_zero || self.is_solvable()),
            SeriesKind::Derived => (reaches_zero && self.is_nilpotent(), reaches_zero),
        };
        SeriesReport { kind, terms, nilpotent, solvable }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.series_terms(SeriesKind::LowerCentral).last().is_some_and(Subspace::is_zero)
    }

    pub fn is_solvable(&self) -> bool {
        self.series_terms(SeriesKind::Derived).last().is_some_and(Subspace::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Scalar;

    #[test]
    fn lambda2_lower_central() {
        let a = Algebra::from_brackets(3, [(1, 1, vec![(3, Scalar::one())])]).unwrap();
        let s = a.series(SeriesKind::LowerCentral);
        assert_eq!(s.dims(), vec![3, 1, 0]);
        assert!(s.nilpotent);
    }

    #[test]
    fn sl2_not_solvable() {
        let a = Algebra::lie_from_brackets(
            3,
            [
                (1, 2, vec![(3, Scalar::one())]),
                (2, 3, vec![(2, Scalar::from_int(2))]),
                (1, 3, vec![(1, Scalar::from_int(-2))]),
            ],
        )
        .unwrap();
        let s = a.series(SeriesKind::Derived);
        assert_eq!(s.dims(), vec![3, 3]);
        assert!(!s.solvable);
    }

    #[test]
    fn r1_solvable_not_nilpotent() {
        let a = Algebra::lie_from_brackets(2, [(1, 2, vec![(2, Scalar::one())])]).unwrap();
        let lc = a.series(SeriesKind::LowerCentral);
        assert_eq!(lc.dims(), vec![2, 1, 1]);
        assert!(!lc.nilpotent);
        let d = a.series(SeriesKind::Derived);
        assert_eq!(d.dims(), vec![2, 1, 0]);
        assert!(d.solvable);
    }
}
