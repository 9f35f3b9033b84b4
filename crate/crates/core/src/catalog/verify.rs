use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use serde_json::{json, Value};

use super::claims::{CochainRef, DefectResidual, EdgeAnnotation, IsoClaim, TheoremRecord};
use super::{catalog, fingerprint, identify, CatalogEntry, CatalogError, NamedCocycle};
use crate::algebra::{Algebra, Side};
use crate::cohomology::{coboundary, cohomology, Cochain};
use crate::deformation::{
    infinitesimal_obstruction_rule, leibniz_defect, left_leibniz_defect, scan_metric_deformations, ScanOptions,
    ScanReport,
};
use crate::exactnum::Scalar;
use crate::forms::{is_metric, verify_form};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictKind {
    Confirmed,
    Discrepancy,
}

/// One line of verifier output.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub claim: String,
    pub anchor: String,
    pub verdict: VerdictKind,
    pub details: Value,
}

impl Verdict {
    fn new(claim: String, anchor: &str, ok: bool, details: Value) -> Self {
        let verdict = if ok { VerdictKind::Confirmed } else { VerdictKind::Discrepancy };
        Verdict { claim, anchor: anchor.to_string(), verdict, details }
    }

    fn failed(claim: String, anchor: &str, err: CatalogError) -> Self {
        Verdict::new(claim, anchor, false, json!({ "error": err.to_string() }))
    }

    pub fn is_confirmed(&self) -> bool {
        self.verdict == VerdictKind::Confirmed
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Replay the bounded metric-deformation scans (the slow part).
    pub scans: bool,
    pub scan: ScanOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { scans: true, scan: ScanOptions::default() }
    }
}

/// Replays every claim with default options.
pub fn verify_catalog() -> Vec<Verdict> {
    verify_catalog_with(&VerifyOptions::default())
}

/// Identity checks, bundled forms, metric lists, HL² dimensions, cocycle
/// membership, obstructions, isomorphisms, graph edges, then the scans.
/// A discrepancy never stops the replay.
pub fn verify_catalog_with(options: &VerifyOptions) -> Vec<Verdict> {
    let cat = catalog();
    let mut out = Vec::new();
    for e in cat.entries() {
        out.push(identity_verdict(e));
    }
    for e in cat.entries() {
        if e.metric_form.is_some() {
            out.push(form_verdict(e));
        }
    }
    let of_kind = |k: &'static str| cat.claims().iter().filter(move |c| c.kind() == k);
    for c in of_kind("metric_list") {
        out.push(replay(c, options));
    }
    for c in of_kind("hl_dim") {
        out.push(replay(c, options));
    }
    for e in cat.entries() {
        for c in &e.cocycles {
            out.push(cocycle_verdict(e, c));
        }
    }
    for c in of_kind("listed_cocycles").chain(of_kind("obstruction")).chain(of_kind("obstruction_rule")) {
        out.push(replay(c, options));
    }
    for c in of_kind("isomorphism").chain(of_kind("deformation_edge")) {
        out.push(replay(c, options));
    }
    if options.scans {
        for c in of_kind("scan_targets").chain(of_kind("no_metric_deformation")) {
            out.push(replay(c, options));
        }
    }
    out
}

pub fn identity_verdict(e: &CatalogEntry) -> Verdict {
    let mut required = vec![Side::Right];
    if e.lie {
        required.push(Side::Lie);
    }
    if e.metric && !e.filler {
        required.push(Side::Symmetric);
    }
    let mut holds = BTreeMap::new();
    let mut failures = Vec::new();
    for side in Side::ALL {
        let report = e.algebra.check_identity(side);
        holds.insert(side.name(), report.holds);
        if required.contains(&side) && !report.holds {
            failures.push(json!({ "identity": side.name(), "first_violation": report.violations.first() }));
        }
    }
    let required: Vec<_> = required.iter().map(|s| s.name()).collect();
    Verdict::new(
        format!("identity:{}", e.id),
        &e.provenance,
        failures.is_empty(),
        json!({ "required": required, "holds": holds, "failures": failures }),
    )
}

fn form_verdict(e: &CatalogEntry) -> Verdict {
    let claim = format!("metric_form:{}", e.id);
    let b = e.metric_form.as_ref().expect("checked by caller");
    match verify_form(&e.algebra, b) {
        Ok(report) => Verdict::new(claim, &e.provenance, report.all(), json!(report)),
        Err(err) => Verdict::failed(claim, &e.provenance, err.into()),
    }
}

/// Nonzero entries of a cochain as `{idx, k, c}` records (1-based).
fn support(f: &Cochain, limit: usize) -> Vec<Value> {
    f.entries()
        .into_iter()
        .flat_map(|(idx, out)| out.into_iter().map(move |(k, c)| json!({ "idx": idx.clone(), "k": k, "c": c })))
        .take(limit)
        .collect()
}

pub fn cocycle_verdict(e: &CatalogEntry, c: &NamedCocycle) -> Verdict {
    let claim = format!("cocycle:{}/{}", e.id, c.name);
    let run = || -> Result<Verdict, CatalogError> {
        let mut identically = true;
        let mut failing = Vec::new();
        for (power, part) in c.cochain.to_parts()? {
            let d = coboundary(&e.algebra, &part)?;
            if !d.is_zero() {
                identically = false;
                failing.push(json!({ "t_power": power, "coboundary": support(&d, 8) }));
            }
        }
        let mut details = json!({
            "origin": c.origin,
            "suspect": c.suspect,
            "literal_t": c.cochain.has_literal_t(),
            "cocycle": identically,
            "failing": failing,
        });
        if c.cochain.has_literal_t() {
            let at_one = coboundary(&e.algebra, &c.at(&Scalar::one())?)?.is_zero();
            details["cocycle_at_t1"] = json!(at_one);
        }
        Ok(Verdict::new(claim.clone(), &c.provenance, identically, details))
    };
    run().unwrap_or_else(|err| Verdict::failed(claim.clone(), &c.provenance, err))
}

fn realize(r: &CochainRef) -> Result<Algebra, CatalogError> {
    let entry = catalog().get(&r.algebra)?;
    match (&r.cocycle, &r.t0) {
        (Some(name), Some(t0)) => Ok(entry.deformation(name, t0)?.eval(t0)),
        (Some(name), None) => Err(CatalogError::UnknownCocycle {
            algebra: r.algebra.clone(),
            name: format!("{name} (no parameter value given)"),
        }),
        (None, _) => Ok(entry.algebra.clone()),
    }
}

/// Instantiates both sides and compares `transport(source, P)` with the target.
pub fn check_isomorphism(c: &IsoClaim) -> Result<(bool, Value), CatalogError> {
    let src = realize(&c.source)?;
    let dst = realize(&c.target)?;
    let mut details = json!({
        "variant": c.variant,
        "basis_change": c.basis_change,
        "source": c.source,
        "target": c.target,
    });
    if let Some(note) = &c.note {
        details["note"] = json!(note);
    }
    if c.matrix.rows() != src.dim() || !c.matrix.is_square() {
        details["error"] = json!("matrix shape does not match the algebra");
        return Ok((false, details));
    }
    if c.matrix.det().map_err(crate::algebra::AlgebraError::from)?.is_zero() {
        details["singular"] = json!(true);
        return Ok((false, details));
    }
    let moved = src.transport(&c.matrix)?;
    let pairs = moved.differing_pairs(&dst);
    details["failing_pairs"] = json!(pairs);
    Ok((pairs.is_empty(), details))
}

fn iso_claim(id: &str) -> Option<&'static IsoClaim> {
    catalog().claims().iter().find_map(|c| match c {
        TheoremRecord::Isomorphism(iso) if iso.id == id => Some(iso),
        _ => None,
    })
}

/// Status of one graph edge: honest deformation, two verified
/// instantiations at distinct parameters, and an invariant telling the
/// target apart from the source.
pub(super) fn check_edge(
    source: &str,
    target: &str,
    cocycle: &str,
    isomorphisms: &[String],
) -> Result<(bool, Value), CatalogError> {
    let cat = catalog();
    let src = cat.get(source)?;
    let dst = cat.get(target)?;
    let family = src.deformation(cocycle, &Scalar::one())?;
    let order = leibniz_defect(&family)?.obstruction_order;
    let mut t0s = BTreeSet::new();
    let mut isos = Vec::new();
    let mut all_iso = true;
    for id in isomorphisms {
        let Some(c) = iso_claim(id) else {
            all_iso = false;
            isos.push(json!({ "id": id, "error": "unknown isomorphism record" }));
            continue;
        };
        let matches = c.source.algebra == source
            && c.source.cocycle.as_deref() == Some(cocycle)
            && c.target.algebra == target
            && c.target.cocycle.is_none();
        let (ok, _) = check_isomorphism(c)?;
        all_iso &= ok && matches;
        if let Some(t0) = &c.source.t0 {
            t0s.insert(t0.to_string());
        }
        isos.push(json!({ "id": id, "confirmed": ok, "matches_edge": matches, "t0": c.source.t0 }));
    }
    let separated = fingerprint(&src.algebra) != fingerprint(&dst.algebra);
    let ok = order.is_none() && all_iso && t0s.len() >= 2 && separated;
    Ok((
        ok,
        json!({
            "obstruction_order": order.map_or(json!("none"), |k| json!(k)),
            "isomorphisms": isos,
            "distinct_parameters": t0s.len(),
            "separated_by_invariants": separated,
        }),
    ))
}

fn scan_summary(report: &ScanReport) -> (BTreeMap<String, usize>, Value) {
    let mut identified: BTreeMap<String, usize> = BTreeMap::new();
    for hit in &report.hits {
        let name = identify(&hit.algebra).map_or_else(|| "unidentified".to_string(), |e| e.id.clone());
        *identified.entry(name).or_default() += 1;
    }
    let details = json!({
        "heuristic": report.heuristic,
        "grid": report.grid,
        "max_size": report.max_size,
        "t0": report.t0,
        "representatives": report.representatives,
        "combinations": report.combinations,
        "unobstructed": report.unobstructed,
        "hits": report.hits.len(),
        "identified": identified,
    });
    (identified, details)
}

fn replay(c: &TheoremRecord, options: &VerifyOptions) -> Verdict {
    let anchor = c.anchor();
    let claim = claim_name(c);
    let result = replay_inner(c, options);
    match result {
        Ok((ok, details)) => Verdict::new(claim, anchor, ok, details),
        Err(err) => Verdict::failed(claim, anchor, err),
    }
}

fn claim_name(c: &TheoremRecord) -> String {
    match c {
        TheoremRecord::MetricList { dim, .. } => format!("metric_list:dim{dim}"),
        TheoremRecord::HlDim { algebra, degree, .. } => format!("hl_dim:{algebra}/HL{degree}"),
        TheoremRecord::ListedCocycles { algebra, .. } => format!("listed_cocycles:{algebra}"),
        TheoremRecord::Obstruction { algebra, cocycle, .. } => format!("obstruction:{algebra}/{cocycle}"),
        TheoremRecord::ObstructionRule { algebra, index, .. } => format!("obstruction_rule:{algebra}/e{index}"),
        TheoremRecord::Isomorphism(iso) => format!("isomorphism:{}", iso.id),
        TheoremRecord::DeformationEdge { source, target, .. } => format!("deformation_edge:{source}->{target}"),
        TheoremRecord::ScanTargets { algebra, .. } => format!("scan_targets:{algebra}"),
        TheoremRecord::NoMetricDeformation { algebra, .. } => format!("no_metric_deformation:{algebra}"),
    }
}

fn residual_check(entry: &CatalogEntry, cocycle: &str, r: &DefectResidual) -> Result<(bool, Value), CatalogError> {
    let family = entry.deformation(cocycle, &Scalar::one())?;
    let right = leibniz_defect(&family)?;
    let left = left_leibniz_defect(&family)?;
    let [i, j, k] = r.triple;
    let at = |rep: &crate::deformation::DefectReport| -> Vec<Scalar> {
        rep.residual(i - 1, j - 1, k - 1).iter().map(|p| p.coeff(r.power)).collect()
    };
    let (right_v, left_v) = (at(&right), at(&left));
    let stated = if r.convention == "left" { &left_v } else { &right_v };
    Ok((
        *stated == r.vector,
        json!({
            "stated": r.vector,
            "convention": r.convention,
            "right_residual": right_v,
            "left_residual": left_v,
        }),
    ))
}

fn replay_inner(c: &TheoremRecord, options: &VerifyOptions) -> Result<(bool, Value), CatalogError> {
    let cat = catalog();
    match c {
        TheoremRecord::MetricList { dim, ids, .. } => {
            let mut found = BTreeSet::new();
            for e in cat.entries().iter().filter(|e| e.dim == *dim && !e.filler) {
                if is_metric(&e.algebra).metric {
                    found.insert(e.id.clone());
                }
            }
            let stated: BTreeSet<String> = ids.iter().cloned().collect();
            let missing: Vec<_> = stated.difference(&found).collect();
            let extra: Vec<_> = found.difference(&stated).collect();
            Ok((missing.is_empty() && extra.is_empty(), json!({ "computed": found, "missing": missing, "extra": extra })))
        }
        TheoremRecord::HlDim { algebra, degree, expected, .. } => {
            let r = cohomology(&cat.get(algebra)?.algebra, *degree)?;
            Ok((
                r.dim_hl == *expected,
                json!({
                    "expected": expected,
                    "dim_hl": r.dim_hl,
                    "dim_cocycles": r.dim_cocycles,
                    "dim_coboundaries": r.dim_coboundaries,
                }),
            ))
        }
        TheoremRecord::ListedCocycles { algebra, count, cocycles, .. } => {
            let e = cat.get(algebra)?;
            let mut results = BTreeMap::new();
            for name in cocycles {
                results.insert(name.clone(), cocycle_verdict(e, e.cocycle(name)?).is_confirmed());
            }
            let dim_hl = cohomology(&e.algebra, 2)?.dim_hl;
            let ok = cocycles.len() == *count && results.values().all(|b| *b);
            Ok((ok, json!({ "listed": count, "cocycles": results, "dim_hl": dim_hl })))
        }
        TheoremRecord::Obstruction { algebra, cocycle, expected, residual, .. } => {
            let e = cat.get(algebra)?;
            let family = e.deformation(cocycle, &Scalar::one())?;
            let order = leibniz_defect(&family)?.obstruction_order;
            let mut ok = order == expected.as_option();
            let mut details = json!({
                "expected": expected,
                "obstruction_order": order.map_or(json!("none"), |k| json!(k)),
            });
            if let Some(r) = residual {
                let (res_ok, res) = residual_check(e, cocycle, r)?;
                ok &= res_ok;
                details["residual"] = res;
            }
            Ok((ok, details))
        }
        TheoremRecord::ObstructionRule { algebra, index, .. } => {
            let rule = infinitesimal_obstruction_rule(&cat.get(algebra)?.algebra, *index)?;
            Ok((rule.is_confirmed(), json!(rule)))
        }
        TheoremRecord::Isomorphism(iso) => check_isomorphism(iso),
        TheoremRecord::DeformationEdge { source, target, cocycle, isomorphisms, annotation, dim, .. } => {
            let (ok, mut details) = check_edge(source, target, cocycle, isomorphisms)?;
            details["annotation"] = json!(annotation);
            details["dim"] = json!(dim);
            if *annotation == EdgeAnnotation::TextOnly {
                details["flag"] = json!("stated in a theorem but missing from the drawn graph");
            }
            Ok((ok, details))
        }
        TheoremRecord::ScanTargets { algebra, targets, .. } => {
            let report = scan_metric_deformations(&cat.get(algebra)?.algebra, &options.scan)?;
            let (identified, mut details) = scan_summary(&report);
            let missing: Vec<&String> = targets.iter().filter(|t| !identified.contains_key(*t)).collect();
            details["targets"] = json!(targets);
            details["missing"] = json!(missing);
            Ok((missing.is_empty(), details))
        }
        TheoremRecord::NoMetricDeformation { algebra, .. } => {
            let report = scan_metric_deformations(&cat.get(algebra)?.algebra, &options.scan)?;
            let (_, mut details) = scan_summary(&report);
            details["statement"] = json!("no hit found within the grid; this is not a proof of absence");
            Ok((report.hits.is_empty(), details))
        }
    }
}
