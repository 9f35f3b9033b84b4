use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{deform, leibniz_defect, DeformationError, DeformationRecord, ObstructionOrder};
use crate::algebra::Algebra;
use crate::cohomology::{cohomology, Cochain};
use crate::exactnum::{ModP, Scalar, TPoly};
use crate::forms::{is_metric, BilinearForm};

/// Named coefficient grids.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridName {
    /// `{0, 1, −1, i, −i, 2}`
    Default,
    /// `{0, 1}`
    Unit,
    /// `{0, 1, −1, 2}`
    Real,
}

impl GridName {
    pub fn values(self) -> Vec<Scalar> {
        let one = Scalar::one();
        match self {
            GridName::Default => vec![Scalar::zero(), one.clone(), -one, Scalar::i(), -Scalar::i(), Scalar::from_int(2)],
            GridName::Unit => vec![Scalar::zero(), one],
            GridName::Real => vec![Scalar::zero(), one.clone(), -one, Scalar::from_int(2)],
        }
    }
}

impl FromStr for GridName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "default" => Ok(GridName::Default),
            "unit" => Ok(GridName::Unit),
            "real" => Ok(GridName::Real),
            other => Err(format!("unknown grid {other:?} (expected default, unit or real)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub grid: Vec<Scalar>,
    pub max_size: usize,
    pub t0: Scalar,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { grid: GridName::Default.values(), max_size: 3, t0: Scalar::one() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanHit {
    /// 1-based positions in the list of canonical representatives.
    pub indices: Vec<usize>,
    pub coefficients: Vec<Scalar>,
    pub cocycle: Cochain,
    pub witness: BilinearForm,
    #[serde(skip)]
    pub algebra: Algebra,
}

/// Outcome of a bounded search. Hits certify metric deformations; an empty
/// list only means nothing was found inside the grid.
#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub heuristic: bool,
    pub grid: Vec<Scalar>,
    pub max_size: usize,
    pub t0: Scalar,
    pub representatives: usize,
    pub combinations: u64,
    pub unobstructed: u64,
    pub hits: Vec<ScanHit>,
}

impl ScanReport {
    pub fn records(&self, base: &str) -> Vec<DeformationRecord> {
        self.hits
            .iter()
            .map(|h| DeformationRecord {
                base: base.to_string(),
                cocycles: vec![(h.cocycle.clone(), TPoly::t())],
                obstruction_order: ObstructionOrder::None,
                target: None,
                iso: None,
                metric: true,
            })
            .collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Handed {
    Right,
    Left,
}

/// Outer `f`, inner `g`, on every basis triple, over F_p:
/// right: `f(x,g(y,z)) − f(g(x,y),z) + f(g(x,z),y)`;
/// left:  `f(x,g(y,z)) − f(g(x,y),z) − f(y,g(x,z))`.
fn composition_modp(f: &[ModP], g: &[ModP], n: usize, side: Handed) -> Vec<ModP> {
    let at = |h: &[ModP], i: usize, j: usize, k: usize| h[(i * n + j) * n + k];
    let mut out = vec![ModP::ZERO; n * n * n * n];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let base = ((x * n + y) * n + z) * n;
                for m in 0..n {
                    let a = at(g, y, z, m);
                    let b = at(g, x, y, m);
                    let c = at(g, x, z, m);
                    if a.is_zero() && b.is_zero() && c.is_zero() {
                        continue;
                    }
                    for l in 0..n {
                        let mut v = a.mul(at(f, x, m, l)).sub(b.mul(at(f, m, z, l)));
                        v = match side {
                            Handed::Right => v.add(c.mul(at(f, m, y, l))),
                            Handed::Left => v.sub(c.mul(at(f, y, m, l))),
                        };
                        out[base + l] = out[base + l].add(v);
                    }
                }
            }
        }
    }
    out
}

fn add_modp(a: &[ModP], b: &[ModP]) -> Vec<ModP> {
    a.iter().zip(b).map(|(x, y)| x.add(*y)).collect()
}

fn scale_modp(a: &[ModP], c: ModP) -> Vec<ModP> {
    a.iter().map(|x| x.mul(c)).collect()
}

fn subsets(m: usize, max_size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for size in 1..=max_size.min(m) {
        rec(0, m, size, &mut Vec::new(), &mut out);
    }
    out
}

fn coefficient_tuples(len: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..size {
        out = out.into_iter().flat_map(|t| (0..len).map(move |c| [t.clone(), vec![c]].concat())).collect();
    }
    out
}

/// A vector-valued quadratic function of the coefficients `cₐ`:
/// `constant + Σ cₐ·linear[a] + Σ_{a≤b} cₐc_b·pairs[a][b]`, over F_p.
struct Quadratic {
    m: usize,
    constant: Vec<ModP>,
    linear: Vec<Vec<ModP>>,
    pairs: Vec<Vec<ModP>>,
}

impl Quadratic {
    fn build(
        reps: &[Vec<ModP>],
        constant: Vec<ModP>,
        linear: impl Fn(&[ModP]) -> Vec<ModP> + Sync,
        pair: impl Fn(&[ModP], &[ModP]) -> Vec<ModP> + Sync,
    ) -> Self {
        let m = reps.len();
        let list: Vec<(usize, usize)> = (0..m).flat_map(|x| (x..m).map(move |y| (x, y))).collect();
        let computed: Vec<Vec<ModP>> = list
            .par_iter()
            .map(|&(x, y)| {
                if x == y {
                    pair(&reps[x], &reps[x])
                } else {
                    add_modp(&pair(&reps[x], &reps[y]), &pair(&reps[y], &reps[x]))
                }
            })
            .collect();
        let mut pairs = vec![Vec::new(); m * m];
        for (&(x, y), t) in list.iter().zip(computed) {
            pairs[x * m + y] = t;
        }
        Quadratic { m, constant, linear: reps.iter().map(|r| linear(r)).collect(), pairs }
    }

    fn pair(&self, a: usize, b: usize) -> &[ModP] {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        &self.pairs[a * self.m + b]
    }

    /// Coordinates where some term involving `subset` is nonzero.
    fn support(&self, subset: &[usize]) -> Vec<usize> {
        let nonzero = |v: &[ModP]| v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect::<Vec<_>>();
        let mut s = nonzero(&self.constant);
        for (x, &a) in subset.iter().enumerate() {
            s.extend(nonzero(&self.linear[a]));
            for &b in &subset[x..] {
                s.extend(nonzero(self.pair(a, b)));
            }
        }
        s.sort_unstable();
        s.dedup();
        s
    }

    /// True when some coordinate is certainly nonzero.
    fn nonzero_at(&self, subset: &[usize], coeffs: &[ModP], support: &[usize]) -> bool {
        support.iter().any(|&idx| {
            let mut acc = self.constant[idx];
            for (x, &a) in subset.iter().enumerate() {
                acc = acc.add(coeffs[x].mul(self.linear[a][idx]));
                for (y, &b) in subset.iter().enumerate().skip(x) {
                    acc = acc.add(coeffs[x].mul(coeffs[y]).mul(self.pair(a, b)[idx]));
                }
            }
            !acc.is_zero()
        })
    }
}

/// Mod-p screens for the coefficient combinations.
struct Screens {
    /// `t²`-coefficient of the right defect of `μ + t·φ`.
    obstruction: Quadratic,
    /// Left residual of `μ + t0·φ`. A right Leibniz algebra with a
    /// nondegenerate invariant form also satisfies the left identity.
    left: Quadratic,
    grid: Vec<ModP>,
    reps: Vec<Vec<ModP>>,
    mu: Vec<ModP>,
    t0: ModP,
}

impl Screens {
    fn new(a: &Algebra, reps: &[Cochain], grid: &[Scalar], t0: &Scalar) -> Option<Self> {
        let n = a.dim();
        let reps_p: Vec<Vec<ModP>> = reps
            .iter()
            .map(|r| r.as_slice().iter().map(ModP::from_scalar).collect::<Option<Vec<_>>>())
            .collect::<Option<_>>()?;
        let mu: Vec<ModP> = a.structure().iter().map(ModP::from_scalar).collect::<Option<_>>()?;
        let s = ModP::from_scalar(t0)?;
        let grid = grid.iter().map(ModP::from_scalar).collect::<Option<Vec<_>>>()?;
        let zero = vec![ModP::ZERO; n * n * n * n];
        let obstruction = Quadratic::build(
            &reps_p,
            zero.clone(),
            |_| zero.clone(),
            |f, g| composition_modp(f, g, n, Handed::Right),
        );
        let left = Quadratic::build(
            &reps_p,
            composition_modp(&mu, &mu, n, Handed::Left),
            |r| {
                scale_modp(
                    &add_modp(&composition_modp(&mu, r, n, Handed::Left), &composition_modp(r, &mu, n, Handed::Left)),
                    s,
                )
            },
            |f, g| scale_modp(&composition_modp(f, g, n, Handed::Left), s.mul(s)),
        );
        Some(Screens { obstruction, left, grid, reps: reps_p, mu, t0: s })
    }
}

fn det_modp(mut m: Vec<Vec<ModP>>) -> ModP {
    let n = m.len();
    let mut det = ModP(1);
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return ModP::ZERO;
        };
        if p != col {
            m.swap(p, col);
            det = ModP::ZERO.sub(det);
        }
        det = det.mul(m[col][col]);
        let inv = m[col][col].inv().expect("nonzero pivot");
        for r in (col + 1)..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].mul(inv);
            for c in col..n {
                let v = m[col][c].mul(f);
                m[r][c] = m[r][c].sub(v);
            }
        }
    }
    det
}

/// Fixed sample points for the generic-member test.
const SAMPLE_SEEDS: [u64; 2] = [0x9e37_79b9, 0x7f4a_7c15];

/// Whether a generic invariant symmetric form of the algebra reduced mod p
/// looks nondegenerate. Used only to decide which combinations are worth an
/// exact metric test.
fn metric_screen_modp(structure: &[ModP], n: usize) -> bool {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let u = pairs.len();
    let slot = |p: usize, q: usize| {
        let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
        lo * n - lo * (lo + 1) / 2 + hi
    };
    let at = |i: usize, j: usize, k: usize| structure[(i * n + j) * n + k];
    // incremental echelon basis
    let mut basis: Vec<(usize, Vec<ModP>)> = Vec::new();
    'eqs: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut row = vec![ModP::ZERO; u];
                for m in 0..n {
                    let c = at(i, j, m);
                    if !c.is_zero() {
                        let s = slot(m, k);
                        row[s] = row[s].add(c);
                    }
                    let c = at(j, k, m);
                    if !c.is_zero() {
                        let s = slot(i, m);
                        row[s] = row[s].sub(c);
                    }
                }
                for (p, b) in &basis {
                    if !row[*p].is_zero() {
                        let f = row[*p];
                        for (x, y) in row.iter_mut().zip(b) {
                            *x = x.sub(f.mul(*y));
                        }
                    }
                }
                if let Some(p) = row.iter().position(|x| !x.is_zero()) {
                    let inv = row[p].inv().expect("nonzero");
                    let row: Vec<ModP> = row.iter().map(|x| x.mul(inv)).collect();
                    for (_, b) in basis.iter_mut() {
                        if !b[p].is_zero() {
                            let f = b[p];
                            for (x, y) in b.iter_mut().zip(&row) {
                                *x = x.sub(f.mul(*y));
                            }
                        }
                    }
                    basis.push((p, row));
                    if basis.len() == u {
                        break 'eqs;
                    }
                }
            }
        }
    }
    if basis.len() == u {
        return false;
    }
    let pivots: Vec<usize> = basis.iter().map(|(p, _)| *p).collect();
    let free: Vec<usize> = (0..u).filter(|c| !pivots.contains(c)).collect();
    SAMPLE_SEEDS.iter().any(|&seed| {
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ModP((state >> 33) % crate::exactnum::MODULUS)
        };
        let mut x = vec![ModP::ZERO; u];
        for &f in &free {
            x[f] = next();
        }
        for (p, row) in &basis {
            let mut acc = ModP::ZERO;
            for &f in &free {
                acc = acc.add(row[f].mul(x[f]));
            }
            x[*p] = ModP::ZERO.sub(acc);
        }
        let mut b = vec![vec![ModP::ZERO; n]; n];
        for (t, &(p, q)) in pairs.iter().enumerate() {
            b[p][q] = x[t];
            b[q][p] = x[t];
        }
        !det_modp(b).is_zero()
    })
}

/// Searches combinations of up to `max_size` canonical `HL²`
/// representatives, each with a nonzero grid coefficient, for honest
/// deformations whose member at `t0` is metric.
///
/// Cheap tests over F_p discard combinations that are certainly obstructed
/// or certainly fail the left identity, and then those whose reduced
/// invariant forms look degenerate at two fixed sample points. Only the
/// last test can in principle drop a genuine hit. Everything reported is
/// decided exactly.
pub fn scan_metric_deformations(a: &Algebra, options: &ScanOptions) -> Result<ScanReport, DeformationError> {
    let n = a.dim();
    let reps = cohomology(a, 2)?.representatives;
    let m = reps.len();
    let grid: Vec<Scalar> = {
        let mut g = Vec::new();
        for c in &options.grid {
            if !c.is_zero() && !g.contains(c) {
                g.push(c.clone());
            }
        }
        g
    };
    let screens = Screens::new(a, &reps, &grid, &options.t0);
    let combos = subsets(m, options.max_size);
    let tuples: Vec<Vec<Vec<usize>>> = (0..=options.max_size).map(|k| coefficient_tuples(grid.len(), k)).collect();

    let per_subset: Vec<(u64, u64, Vec<(Vec<usize>, Vec<usize>)>)> = combos
        .par_iter()
        .map(|subset| {
            let k = subset.len();
            let mut unobstructed = 0;
            let mut survivors = Vec::new();
            let supports = screens.as_ref().map(|s| (s.obstruction.support(subset), s.left.support(subset)));
            for tuple in &tuples[k] {
                if let (Some(sc), Some((obs, left))) = (&screens, &supports) {
                    let coeffs: Vec<ModP> = tuple.iter().map(|&c| sc.grid[c]).collect();
                    if sc.obstruction.nonzero_at(subset, &coeffs, obs) {
                        continue;
                    }
                    unobstructed += 1;
                    if sc.left.nonzero_at(subset, &coeffs, left) {
                        continue;
                    }
                    let mut member = sc.mu.clone();
                    for (&r, &c) in subset.iter().zip(&coeffs) {
                        let w = c.mul(sc.t0);
                        for (x, y) in member.iter_mut().zip(&sc.reps[r]) {
                            *x = x.add(w.mul(*y));
                        }
                    }
                    if !metric_screen_modp(&member, n) {
                        continue;
                    }
                }
                survivors.push((subset.clone(), tuple.clone()));
            }
            (tuples[k].len() as u64, unobstructed, survivors)
        })
        .collect();

    let combinations = per_subset.iter().map(|(c, _, _)| c).sum();
    let screened_unobstructed: u64 = per_subset.iter().map(|(_, u, _)| u).sum();
    let candidates: Vec<(Vec<usize>, Vec<usize>)> = per_subset.into_iter().flat_map(|(_, _, s)| s).collect();

    let checked: Vec<Option<Option<ScanHit>>> = candidates
        .par_iter()
        .map(|(subset, tuple)| {
            let mut phi = Cochain::zero(2, n);
            for (&r, &c) in subset.iter().zip(tuple) {
                phi = phi.add(&reps[r].scale(&grid[c])).expect("same shape");
            }
            let pa = deform(a, &[(phi.clone(), 1)]).expect("arity 2");
            let report = leibniz_defect(&pa).expect("base checked by cohomology");
            if !report.is_deformation() {
                return None;
            }
            let member = pa.eval(&options.t0);
            let verdict = is_metric(&member);
            Some(verdict.witness.map(|witness| ScanHit {
                indices: subset.iter().map(|i| i + 1).collect(),
                coefficients: tuple.iter().map(|&c| grid[c].clone()).collect(),
                cocycle: phi,
                witness,
                algebra: member,
            }))
        })
        .collect();

    let unobstructed =
        if screens.is_some() { screened_unobstructed } else { checked.iter().filter(|c| c.is_some()).count() as u64 };
    let hits = checked.into_iter().flatten().flatten().collect();
    Ok(ScanReport {
        heuristic: true,
        grid: options.grid.clone(),
        max_size: options.max_size,
        t0: options.t0.clone(),
        representatives: m,
        combinations,
        unobstructed,
        hits,
    })
}
