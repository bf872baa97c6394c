//! Command implementations and the full pipeline report.

use serde_json::{json, Value};

use super::{Cli, Command, InputError, Inputs, Order, Outcome, EXIT_OK, EXIT_VERIFICATION_FAILED};
use crate::corpus;
use crate::derived::{
    build_collection, verify_collection, CollectionCertificate, ExceptionalCollection,
};
use crate::fan::CompleteFan2D;
use crate::grothendieck::{
    fa_recurrence_check, hirzebruch_labels, search_line_bundle_basis, standard_permutation_basis,
    verify_klyachko, GrothendieckError, KlyachkoCertificate, PermutationBasis, PicardLattice,
};
use crate::minimal::{classify_minimal, minimalize, ContractionTrace, MinimalError, MinimalLabel};
use crate::motivic::{decompose, MotivicDecomposition};
use crate::symmetry::{classify_subgroup, compute_aut, SymmetryGroup};
use crate::Error;

/// Everything the pipeline computes for one `G`-surface.
#[derive(Debug, Clone)]
pub struct PipelineReport {
    pub fan: CompleteFan2D,
    pub group: SymmetryGroup,
    pub trace: ContractionTrace,
    pub label: MinimalLabel,
    pub klyachko: Result<KlyachkoCertificate, GrothendieckError>,
    pub basis: PermutationBasis,
    pub collection: ExceptionalCollection,
    pub certificate: CollectionCertificate,
    pub decomposition: MotivicDecomposition,
}

impl PipelineReport {
    pub fn passed(&self) -> bool {
        self.klyachko.is_ok() && self.certificate.passed
    }

    pub fn to_json(&self) -> Value {
        json!({
            "fan": self.fan,
            "group": group_json(&self.group),
            "minimalize": trace_json(&self.trace),
            "minimal": label_json(&self.label),
            "k0": klyachko_json(&self.klyachko),
            "basis": basis_json(&self.basis),
            "collection": collection_json(&self.collection, &self.certificate),
            "decomposition": decomposition_json(&self.decomposition),
            "passed": self.passed(),
        })
    }
}

/// Runs every stage. Errors are hard failures; certificate failures are
/// kept in the report.
pub fn pipeline(fan: &CompleteFan2D, g: &SymmetryGroup) -> Result<PipelineReport, Error> {
    let group = g.attach(fan)?;
    let trace = minimalize(fan, g)?;
    let label = classify_minimal(&trace.terminal, g)?;
    let basis = standard_permutation_basis(&trace, g)?;
    let collection = build_collection(&trace, g)?;
    let certificate = verify_collection(&collection, fan, g);
    let decomposition = decompose(&basis, &trace, g)?;
    Ok(PipelineReport {
        fan: fan.clone(),
        group,
        trace,
        label,
        klyachko: verify_klyachko(fan),
        basis,
        collection,
        certificate,
        decomposition,
    })
}

fn group_json(g: &SymmetryGroup) -> Value {
    let elements: Vec<[[i64; 2]; 2]> = g.elements().iter().map(|m| m.entries()).collect();
    let generators: Vec<[[i64; 2]; 2]> = g.generators().iter().map(|m| m.entries()).collect();
    let label = classify_subgroup(g).ok().map(|c| c.label.to_string());
    json!({ "order": g.order(), "label": label, "generators": generators, "elements": elements })
}

fn trace_json(t: &ContractionTrace) -> Value {
    let steps: Vec<Value> = t
        .steps
        .iter()
        .map(|s| {
            json!({
                "round": s.round,
                "orbit": s.orbit,
                "contracted_rays": s.contracted_rays.iter().map(|v| [v.x, v.y]).collect::<Vec<_>>(),
                "after": s.after,
            })
        })
        .collect();
    json!({ "steps": steps, "terminal": t.terminal, "minimal": t.is_empty() })
}

fn label_json(l: &MinimalLabel) -> Value {
    json!({
        "kind": l.kind,
        "group": l.group,
        "label": l.to_string(),
        "family": l.family().roman(),
    })
}

fn klyachko_json(k: &Result<KlyachkoCertificate, GrothendieckError>) -> Value {
    match k {
        Ok(c) => json!({ "passed": true, "certificate": c }),
        Err(e) => json!({ "passed": false, "error": e.to_string() }),
    }
}

fn basis_json(b: &PermutationBasis) -> Value {
    let elements: Vec<Value> = b
        .elements
        .iter()
        .zip(&b.classes)
        .map(|(e, c)| json!({ "name": e.name, "divisor": e.divisor, "class": c, "origin": e.origin }))
        .collect();
    json!({
        "elements": elements,
        "orbits": b.orbits,
        "signature": b.signature(),
        "determinant": b.determinant.to_string(),
        "minimal": b.minimal.map(|l| l.to_string()),
    })
}

fn collection_json(c: &ExceptionalCollection, cert: &CollectionCertificate) -> Value {
    json!({
        "blocks": c.blocks,
        "block_sizes": c.block_sizes(),
        "provenance": c.provenance,
        "certificate": {
            "passed": cert.passed,
            "objects": cert.objects,
            "exceptional": cert.exceptional,
            "blocks_orthogonal": cert.blocks_orthogonal,
            "ordered": cert.ordered,
            "basis_determinant": cert.basis_determinant.to_string(),
            "group_stable": cert.group_stable,
            "pairs_checked": cert.pairs_checked,
            "violations": cert.violations,
            "first_violation": cert.first_violation.as_ref().map(|v| json!({
                "kind": v.kind,
                "source": v.source,
                "target": v.target,
                "ext": v.ext,
                "text": v.to_string(),
            })),
        },
    })
}

fn decomposition_json(d: &MotivicDecomposition) -> Value {
    json!({
        "product": d.product(),
        "factors": d.factors,
        "family": d.family,
        "notes": d.notes,
    })
}

fn fan_of(inputs: &Inputs) -> Result<&CompleteFan2D, InputError> {
    inputs
        .fan
        .as_ref()
        .ok_or_else(|| InputError::new("MissingArgument", "this command needs --fan <file>"))
}

/// Hard errors of the stages: verification failures map to exit 1, the
/// rest to exit 2.
fn stage<T>(r: Result<T, impl Into<Error>>) -> Result<T, StageError> {
    r.map_err(|e| {
        let e: Error = e.into();
        let verification = matches!(
            e,
            Error::Minimal(MinimalError::TableViolation { .. })
                | Error::Grothendieck(
                    GrothendieckError::NotABasis { .. }
                        | GrothendieckError::NotInvariant { .. }
                        | GrothendieckError::RelationFailure(_)
                )
                | Error::Motivic(_)
        );
        if verification {
            StageError::Failed(e)
        } else {
            StageError::Input(InputError::from_error(&e))
        }
    })
}

enum StageError {
    Failed(Error),
    Input(InputError),
}

pub(super) fn dispatch(cli: &Cli, inputs: &Inputs) -> Result<Outcome, InputError> {
    match run_command(cli, inputs) {
        Ok(o) => Ok(o),
        Err(StageError::Input(e)) => Err(e),
        Err(StageError::Failed(e)) => Ok(Outcome {
            code: EXIT_VERIFICATION_FAILED,
            result: json!({ "error": { "kind": super::error_name(&e), "message": e.to_string() } }),
            summary: vec![format!(
                "verification failed [{}]: {e}",
                super::error_name(&e)
            )],
        }),
    }
}

fn run_command(cli: &Cli, inputs: &Inputs) -> Result<Outcome, StageError> {
    let g = &inputs.group;
    let need_fan = || fan_of(inputs).map_err(StageError::Input);
    Ok(match cli.command {
        Command::Validate => {
            let fan = need_fan()?;
            let a = fan.self_intersections();
            let n = fan.len();
            Outcome::ok(
                json!({
                    "fan": fan,
                    "ray_count": n,
                    "self_intersections": a,
                    "self_intersection_sum": a.sum(),
                }),
                vec![
                    format!("valid smooth complete fan, N={n}"),
                    format!("rays: {fan}"),
                    format!("self-intersections: {:?} (sum {})", a.values(), a.sum()),
                ],
            )
        }
        Command::Aut => {
            let fan = need_fan()?;
            let aut = compute_aut(fan);
            let class = stage(classify_subgroup(&aut))?;
            Outcome::ok(
                json!({ "group": group_json(&aut), "ray_orbits": aut.ray_orbits() }),
                vec![
                    format!("Aut order {} ({})", aut.order(), class.label),
                    format!(
                        "generators: {}",
                        join(aut.generators().iter().map(|m| m.to_string()))
                    ),
                ],
            )
        }
        Command::ClassifyGroup => {
            let class = stage(classify_subgroup(g))?;
            let mut result = json!({
                "order": g.order(),
                "label": class.label,
                "conjugator": class.conjugator.entries(),
                "generators": g.generators().iter().map(|m| m.entries()).collect::<Vec<_>>(),
            });
            if let Some(fan) = &inputs.fan {
                let attached = stage(g.attach(fan))?;
                result["ray_orbits"] = json!(attached.ray_orbits());
            }
            Outcome::ok(
                result,
                vec![format!(
                    "group of order {} is conjugate to {} via P = {}",
                    g.order(),
                    class.label,
                    class.conjugator
                )],
            )
        }
        Command::Minimalize => {
            let fan = need_fan()?;
            let trace = stage(minimalize(fan, g))?;
            let mut summary = vec![format!("{} contraction step(s)", trace.len())];
            for (i, s) in trace.steps.iter().enumerate() {
                summary.push(format!(
                    "  step {} (round {}): contract rays {:?} -> {}",
                    i + 1,
                    s.round,
                    s.orbit,
                    s.after
                ));
            }
            summary.push(format!("terminal fan: {}", trace.terminal));
            Outcome::ok(trace_json(&trace), summary)
        }
        Command::Classify => {
            let fan = need_fan()?;
            let trace = stage(minimalize(fan, g))?;
            let label = stage(classify_minimal(&trace.terminal, g))?;
            Outcome::ok(
                json!({ "minimalize": trace_json(&trace), "minimal": label_json(&label) }),
                vec![
                    format!("minimal model {label} after {} step(s)", trace.len()),
                    format!("family ({})", label.family().roman()),
                ],
            )
        }
        Command::K0Verify => {
            let fan = need_fan()?;
            let pic = PicardLattice::new(fan);
            let (pos, neg, zero) = pic.form_signature();
            let det = pic.form_determinant();
            let k = verify_klyachko(fan);
            let recurrence =
                hirzebruch_labels(fan).map(|_| fa_recurrence_check(fan, 0..=5).unwrap_or(false));
            let passed = k.is_ok()
                && det.abs() == 1
                && (pos, neg, zero) == (1, fan.len() - 3, 0)
                && recurrence != Some(false);
            let mut summary = vec![
                format!(
                    "Pic rank {}, form determinant {det}, signature ({pos}, {neg}), K^2 = {}",
                    pic.rank(),
                    pic.canonical_square()
                ),
                match &k {
                    Ok(c) => format!(
                        "K0 rank {}, span index {}, relations hold",
                        c.rank, c.span_index
                    ),
                    Err(e) => format!("K0 presentation FAILED: {e}"),
                },
            ];
            if let Some(r) = recurrence {
                summary.push(format!(
                    "Hirzebruch recurrence for m = 0..5: {}",
                    if r { "holds" } else { "FAILS" }
                ));
            }
            Outcome::checked(
                passed,
                json!({
                    "picard": {
                        "rank": pic.rank(),
                        "form": pic.form(),
                        "determinant": det.to_string(),
                        "signature": [pos, neg],
                        "canonical_square": pic.canonical_square(),
                        "cokernel_invariants": pic.cokernel_invariants(),
                    },
                    "klyachko": klyachko_json(&k),
                    "hirzebruch_recurrence": recurrence,
                }),
                summary,
            )
        }
        Command::Basis => {
            let fan = need_fan()?;
            let trace = stage(minimalize(fan, g))?;
            let basis = stage(standard_permutation_basis(&trace, g))?;
            let mut result = json!({ "standard": basis_json(&basis) });
            let mut summary = vec![
                format!(
                    "standard basis: {}",
                    join(basis.names().into_iter().map(String::from))
                ),
                format!(
                    "orbit signature {:?}, determinant {}",
                    basis.signature(),
                    basis.determinant
                ),
            ];
            if let Some(bound) = cli.bound {
                let found = search_line_bundle_basis(fan, g, bound);
                summary.push(match &found {
                    Some(b) => format!(
                        "search (bound {bound}): {}",
                        join(b.names().into_iter().map(String::from))
                    ),
                    None => format!("search (bound {bound}): no basis within the bound"),
                });
                result["search"] =
                    json!({ "bound": bound, "basis": found.as_ref().map(basis_json) });
            }
            Outcome::ok(result, summary)
        }
        Command::Collection => {
            let fan = need_fan()?;
            let trace = stage(minimalize(fan, g))?;
            let mut coll = stage(build_collection(&trace, g))?;
            if cli.order == Order::Reversed {
                coll = coll.reversed();
            }
            let cert = verify_collection(&coll, fan, g);
            let mut summary = vec![format!("collection: {coll}")];
            summary.push(match &cert.first_violation {
                None if cert.passed => format!(
                    "verified: {} objects, K0 determinant {}",
                    cert.objects, cert.basis_determinant
                ),
                None => format!(
                    "FAILED: K0 determinant {}, group stable {}",
                    cert.basis_determinant, cert.group_stable
                ),
                Some(v) => format!("FAILED: {v}"),
            });
            Outcome::checked(cert.passed, collection_json(&coll, &cert), summary)
        }
        Command::Decompose => {
            let fan = need_fan()?;
            let trace = stage(minimalize(fan, g))?;
            let basis = stage(standard_permutation_basis(&trace, g))?;
            let d = stage(decompose(&basis, &trace, g))?;
            let mut summary = vec![format!("X = {}", d.product())];
            if let Some(f) = &d.family {
                summary.push(format!("family ({}): {}", f.family.roman(), f.description));
            }
            summary.extend(d.notes.iter().map(|n| format!("note: {n}")));
            Outcome::ok(decomposition_json(&d), summary)
        }
        Command::Report => {
            let fan = need_fan()?;
            let r = stage(pipeline(fan, g))?;
            let summary = vec![
                format!("fan: {fan}"),
                format!("minimal model: {} after {} step(s)", r.label, r.trace.len()),
                format!(
                    "K0: {}",
                    if r.klyachko.is_ok() {
                        "presentation verified"
                    } else {
                        "presentation FAILED"
                    }
                ),
                format!("basis orbits: {:?}", r.basis.signature()),
                format!(
                    "collection: {} ({})",
                    r.collection,
                    if r.certificate.passed { "pass" } else { "FAIL" }
                ),
                format!("X = {}", r.decomposition.product()),
            ];
            Outcome::checked(r.passed(), r.to_json(), summary)
        }
        Command::SelfTest => {
            let seed = cli.seed.unwrap_or(corpus::DEFAULT_SEED);
            let entries = corpus::generate(seed);
            let mut failures = Vec::new();
            for e in &entries {
                match pipeline(&e.fan, &e.group) {
                    Ok(r) if r.passed() => {}
                    Ok(_) => {
                        failures.push(json!({ "origin": e.origin, "error": "certificate failed" }))
                    }
                    Err(err) => {
                        failures.push(json!({ "origin": e.origin, "error": err.to_string() }))
                    }
                }
            }
            let passed = entries.len() - failures.len();
            Outcome {
                code: if failures.is_empty() {
                    EXIT_OK
                } else {
                    EXIT_VERIFICATION_FAILED
                },
                summary: vec![format!(
                    "corpus seed {seed}: {passed}/{} surfaces pass the full pipeline",
                    entries.len()
                )],
                result: json!({ "seed": seed, "entries": entries.len(), "passed": passed, "failures": failures }),
            }
        }
    })
}

fn join(items: impl Iterator<Item = String>) -> String {
    items.collect::<Vec<_>>().join(", ")
}
