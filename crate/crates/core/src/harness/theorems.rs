//! Per-statement evaluation and the verdict rules.
//!
//! A failing condition is always backed by a witness. A holding condition
//! is exact or bounded. Two findings that the statement says must agree
//! yield `Violated` only when the holding side is exact; a bounded success
//! set against a proved failure means the window was too small, which is
//! reported as `Inconclusive`.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use super::facts::{all_of, any_of, Facts};
use super::{Finding, HarnessError, Instance, SearchBudget, TheoremCheck, TheoremId, TheoremReport, Truth, Verdict};
use crate::compat::InvarianceMode;

/// Checks the structural requirements of `id` on `inst`.
pub fn shape_compatible(id: TheoremId, inst: &Instance) -> Result<(), HarnessError> {
    let ext = &inst.extension;
    let flags = ext.flags();
    let wrong = |reason: &str| Err(HarnessError::WrongShape { id, reason: reason.into() });
    if !ext.is_verified() {
        return wrong("the presentation is not verified");
    }
    match id {
        TheoremId::T3 | TheoremId::T8 | TheoremId::T10 if !flags.derivation_type => {
            wrong("the extension is not of derivation type")
        }
        TheoremId::T6 if inst.grading.is_none() => wrong("no grading of the base was given"),
        TheoremId::T6 if !flags.bijective => wrong("graded extensions must be bijective"),
        TheoremId::T7 if !(flags.quasi_commutative && flags.bijective) => {
            wrong("the extension is not quasi-commutative and bijective")
        }
        TheoremId::T9 if !flags.quasi_commutative => wrong("the extension is not quasi-commutative"),
        _ => Ok(()),
    }
}

fn severity(v: &Verdict) -> u8 {
    match v {
        Verdict::Consistent => 0,
        Verdict::PreconditionFailed(_) => 1,
        Verdict::Inconclusive(_) => 2,
        Verdict::Violated(_) => 3,
    }
}

fn worst(verdicts: Vec<Verdict>) -> Verdict {
    verdicts.into_iter().fold(Verdict::Consistent, |acc, v| if severity(&v) > severity(&acc) { v } else { acc })
}

/// Findings that hold in every ring; a failure is a violation outright.
fn unconditional(findings: &[Finding]) -> Verdict {
    let verdicts = findings
        .iter()
        .map(|f| match &f.truth {
            Truth::Fails(w) => Verdict::Violated(w.clone()),
            _ => Verdict::Consistent,
        })
        .collect();
    worst(verdicts)
}

/// Statements that must all be true or all be false.
fn equivalence(statements: &[Finding]) -> Verdict {
    let mut out = Vec::new();
    for (a, f) in statements.iter().enumerate() {
        if let Truth::Unknown(why) = &f.truth {
            out.push(Verdict::Inconclusive(format!("{}: {why}", f.name)));
        }
        for g in &statements[a + 1..] {
            for (yes, no) in [(f, g), (g, f)] {
                if let (Truth::Holds, Truth::Fails(w)) = (&yes.truth, &no.truth) {
                    if yes.evidence.is_exact() {
                        out.push(Verdict::Violated(w.clone()));
                    } else {
                        out.push(Verdict::Inconclusive(format!(
                            "\"{}\" holds at the bounds but \"{}\" fails",
                            yes.name, no.name
                        )));
                    }
                }
            }
        }
    }
    worst(out)
}

/// `pre ⟹ conclusions`, with a failing precondition reported as such.
fn implication(pre: &[Finding], conclusions: &[Finding]) -> Verdict {
    if let Some(w) = pre.iter().find_map(|f| f.witness()) {
        return Verdict::PreconditionFailed(w.clone());
    }
    if let Some(f) = pre.iter().find(|f| matches!(f.truth, Truth::Unknown(_))) {
        return Verdict::Inconclusive(format!("precondition \"{}\" undecided", f.name));
    }
    let pre_exact = pre.iter().all(|f| f.evidence.is_exact());
    let mut out = Vec::new();
    for c in conclusions {
        match &c.truth {
            Truth::Holds => {}
            Truth::Fails(w) if pre_exact => out.push(Verdict::Violated(w.clone())),
            Truth::Fails(_) => out.push(Verdict::Inconclusive(format!(
                "\"{}\" fails while the preconditions hold only at the bounds",
                c.name
            ))),
            Truth::Unknown(why) => out.push(Verdict::Inconclusive(format!("{}: {why}", c.name))),
        }
    }
    worst(out)
}

/// Applies the precondition gate in front of a verdict on the body.
fn gated(pre: &[Finding], body: Verdict) -> Verdict {
    match implication(pre, &[]) {
        Verdict::Consistent => {}
        other => return other,
    }
    match body {
        Verdict::Violated(_) if !pre.iter().all(|f| f.evidence.is_exact()) => {
            Verdict::Inconclusive("a conclusion fails while the preconditions hold only at the bounds".into())
        }
        other => other,
    }
}

struct Outcome {
    pre: Vec<Finding>,
    conclusions: Vec<Finding>,
    observations: Vec<Finding>,
    verdict: Verdict,
    notes: Vec<String>,
}

impl Outcome {
    fn new(verdict: Verdict) -> Self {
        Outcome { pre: Vec::new(), conclusions: Vec::new(), observations: Vec::new(), verdict, notes: Vec::new() }
    }
}

const NSTAR_NOTE: &str =
    "N*(A) = N*(R)⟨x⟩ is evaluated through its bounded face N(A) = N(R)⟨x⟩ together with N(R) being an ideal";

fn evaluate(id: TheoremId, facts: &Facts<'_>, force: bool) -> Outcome {
    let blocked = |pre: &[Finding]| matches!(implication(pre, &[]), Verdict::PreconditionFailed(_)) && !force;
    match id {
        TheoremId::T1 => {
            let pre = vec![facts.weak_compatible()];
            if blocked(&pre) {
                return Outcome { pre: pre.clone(), ..Outcome::new(implication(&pre, &[])) };
            }
            let conclusions = vec![facts.ring_ni(), facts.a_ni()];
            let verdict = gated(&pre, equivalence(&conclusions));
            wrap(pre, conclusions, vec![], verdict, force)
        }
        TheoremId::T2 => {
            let first = all_of("R is 2-primal and (Σ,Δ)-compatible", vec![facts.two_primal(), facts.compatible()]);
            let mut parts = vec![first.clone()];
            if !first.holds() {
                let mut second = vec![facts.locally_finite(), facts.compatible()];
                if second[1].holds() {
                    second.push(facts.armendariz());
                }
                parts.push(all_of("R is locally finite, (Σ,Δ)-compatible and Σ-skew Armendariz", second));
            }
            let pre = vec![any_of("one of the sufficient conditions holds", parts.clone())];
            if blocked(&pre) {
                return Outcome { pre: pre.clone(), observations: parts, ..Outcome::new(implication(&pre, &[])) };
            }
            let conclusions = vec![facts.a_ni()];
            let verdict = implication(&pre, &conclusions);
            wrap(pre, conclusions, parts, verdict, force)
        }
        TheoremId::T3 => {
            let parts = vec![facts.ring_ni(), facts.nil_invariance(InvarianceMode::DeltaInvariant), facts.nil_extension_equality()];
            let rhs = all_of("N(R) is a Δ-invariant ideal and N(A) = N(R)⟨x⟩", parts.clone());
            let conclusions = vec![facts.a_ni(), rhs];
            let verdict = equivalence(&conclusions);
            Outcome { conclusions, observations: parts, ..Outcome::new(verdict) }
        }
        TheoremId::T4 => {
            let (ni, rigid, eq, rni) = (facts.a_ni(), facts.nil_sigma_rigid(), facts.nil_extension_equality(), facts.ring_ni());
            let sigma_ideal = facts.nil_invariance(InvarianceMode::SigmaIdeal);
            let conclusions = vec![
                all_of("(i) A is NI and N(R) is Σ-rigid", vec![ni.clone(), rigid.clone()]),
                all_of("(ii) N(R) is a Σ-ideal and N(A) = N(R)⟨x⟩", vec![rni.clone(), sigma_ideal.clone(), eq.clone()]),
                all_of("(iii) N(R) is a Σ-rigid ideal and N*(A) = N*(R)⟨x⟩", vec![rni.clone(), rigid.clone(), eq.clone()]),
            ];
            let verdict = equivalence(&conclusions);
            let mut out = Outcome { conclusions, observations: vec![ni, rigid, rni, sigma_ideal, eq], ..Outcome::new(verdict) };
            out.notes.push(NSTAR_NOTE.into());
            out
        }
        TheoremId::T5 => {
            let pre = vec![facts.a_ni()];
            if blocked(&pre) {
                return Outcome { pre: pre.clone(), ..Outcome::new(implication(&pre, &[])) };
            }
            let conclusions = vec![facts.d_units(), facts.dedekind_finite()];
            let verdict = implication(&pre, &conclusions);
            let mut out = wrap(pre, conclusions, vec![], verdict, force);
            out.notes.push("one-sided inverses are checked in the base ring".into());
            out
        }
        TheoremId::T6 => {
            let g = facts.inst.grading.as_ref().expect("shape checked");
            let pre = vec![facts.graded(g)];
            if blocked(&pre) {
                return Outcome { pre: pre.clone(), ..Outcome::new(implication(&pre, &[])) };
            }
            let qr = facts.quasi_regularity(Some(g));
            let ni = facts.a_ni();
            let j0 = facts.jacobson_r0_nil(g);
            let conclusions = vec![
                all_of("A is NJ", vec![ni.clone(), qr.clone()]),
                all_of("A is NI and J(A) ∩ R_0 is nil", vec![ni.clone(), j0.clone()]),
            ];
            let verdict = gated(&pre, worst(vec![equivalence(&conclusions), unconditional(&[qr.clone(), j0.clone()])]));
            let mut out = wrap(pre, conclusions, vec![ni, qr, j0], verdict, force);
            if g.is_connected() {
                out.notes.push("R_0 is a field, so J(A) ∩ R_0 = 0".into());
            } else {
                out.notes.push("J(A) ∩ R_0 is nil because every non-nilpotent element has a nonzero idempotent power".into());
            }
            out
        }
        TheoremId::T7 => {
            let pre = vec![facts.weakly_two_primal(), facts.weak_sigma_compatible()];
            if blocked(&pre) {
                return Outcome { pre: pre.clone(), ..Outcome::new(implication(&pre, &[])) };
            }
            let qr = facts.quasi_regularity(None);
            let conclusions = vec![facts.a_nj()];
            let verdict = worst(vec![implication(&pre, &conclusions), unconditional(std::slice::from_ref(&qr))]);
            wrap(pre, conclusions, vec![qr], verdict, force)
        }
        TheoremId::T8 => {
            let (ni, nj, qr) = (facts.a_ni(), facts.a_nj(), facts.quasi_regularity(None));
            let chain = facts.nilpotents_in_extended_nil();
            let chain_verdict = match ni.truth {
                Truth::Fails(_) => Verdict::Consistent,
                _ => implication(std::slice::from_ref(&ni), std::slice::from_ref(&chain)),
            };
            let conclusions = vec![ni.clone(), nj];
            let verdict = worst(vec![equivalence(&conclusions), chain_verdict, unconditional(std::slice::from_ref(&qr))]);
            let mut out = Outcome { conclusions, observations: vec![chain, qr], ..Outcome::new(verdict) };
            out.notes.push(format!("{} window nilpotents have a quasi-regularity witness", facts.quasi_regular_count()));
            out
        }
        TheoremId::T9 => {
            let (ni, nj, rigid, eq, rni) =
                (facts.a_ni(), facts.a_nj(), facts.nil_sigma_rigid(), facts.nil_extension_equality(), facts.ring_ni());
            let sigma_ideal = facts.nil_invariance(InvarianceMode::SigmaIdeal);
            let qr = facts.quasi_regularity(None);
            let conclusions = vec![
                all_of("(i) A is NJ and N(A) = N(R)⟨x⟩", vec![nj.clone(), eq.clone()]),
                all_of("(ii) N(R) is a Σ-ideal and N(A) = N(R)⟨x⟩", vec![rni.clone(), sigma_ideal.clone(), eq.clone()]),
                all_of("(iii) A is NI and N(R) is Σ-rigid", vec![ni.clone(), rigid.clone()]),
                all_of("(iv) N(R) is a Σ-rigid ideal and N*(A) = N*(R)⟨x⟩", vec![rni.clone(), rigid.clone(), eq.clone()]),
            ];
            let verdict = worst(vec![equivalence(&conclusions), unconditional(std::slice::from_ref(&qr))]);
            let mut out = Outcome {
                conclusions,
                observations: vec![ni, nj, rigid, rni, sigma_ideal, eq, qr],
                ..Outcome::new(verdict)
            };
            out.notes.push(NSTAR_NOTE.into());
            out
        }
        TheoremId::T10 => {
            let (ni, nj, eq, rni) = (facts.a_ni(), facts.a_nj(), facts.nil_extension_equality(), facts.ring_ni());
            let qr = facts.quasi_regularity(None);
            let conclusions = vec![
                all_of("(i) A is NJ", vec![nj]),
                all_of("(ii) A is NI", vec![ni]),
                all_of("(iii) R is NI and N(A) = N(R)⟨x⟩", vec![rni.clone(), eq.clone()]),
                all_of("(iv) R is NI and N*(A) = N*(R)⟨x⟩", vec![rni.clone(), eq.clone()]),
            ];
            let verdict = worst(vec![equivalence(&conclusions), unconditional(std::slice::from_ref(&qr))]);
            let mut out = Outcome { conclusions, observations: vec![rni, eq, qr], ..Outcome::new(verdict) };
            out.notes.push(NSTAR_NOTE.into());
            out
        }
    }
}

/// Moves conclusions to observations when a forced run failed its
/// preconditions.
fn wrap(pre: Vec<Finding>, conclusions: Vec<Finding>, mut observations: Vec<Finding>, verdict: Verdict, force: bool) -> Outcome {
    if force && matches!(verdict, Verdict::PreconditionFailed(_)) {
        let mut obs = conclusions;
        obs.append(&mut observations);
        return Outcome { pre, conclusions: Vec::new(), observations: obs, verdict, notes: Vec::new() };
    }
    Outcome { pre, conclusions, observations, verdict, notes: Vec::new() }
}

fn report(id: TheoremId, facts: &Facts<'_>, force: bool) -> Result<TheoremReport, HarnessError> {
    shape_compatible(id, facts.inst)?;
    let start = Instant::now();
    let out = evaluate(id, facts, force);
    Ok(TheoremReport {
        id,
        instance: facts.inst.name.clone(),
        budget: facts.budget,
        preconditions: out.pre,
        conclusions: out.conclusions,
        observations: out.observations,
        verdict: out.verdict,
        notes: out.notes,
        elapsed: start.elapsed(),
    })
}

pub fn run_check(check: &TheoremCheck<'_>) -> Result<TheoremReport, HarnessError> {
    let facts = Facts::new(check.instance, check.budget);
    report(check.id, &facts, check.force_conclusions)
}

/// Runs several ids on one instance, sharing the bounded searches.
pub fn run_checks(
    inst: &Instance,
    ids: &[TheoremId],
    budget: SearchBudget,
) -> Vec<(TheoremId, Result<TheoremReport, HarnessError>)> {
    let facts = Facts::new(inst, budget);
    ids.iter().map(|&id| (id, report(id, &facts, false))).collect()
}

type Row = (String, TheoremId, Result<TheoremReport, HarnessError>);

/// Every instance against every id, in parallel across instances. Rows
/// are sorted by instance name and id.
pub fn run_all(instances: &[Instance], ids: &[TheoremId], budget: SearchBudget) -> Vec<Row> {
    let next = AtomicUsize::new(0);
    let rows = Mutex::new(Vec::new());
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(instances.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(inst) = instances.get(k) else { break };
                let batch: Vec<Row> =
                    run_checks(inst, ids, budget).into_iter().map(|(id, r)| (inst.name.clone(), id, r)).collect();
                rows.lock().expect("rows lock").extend(batch);
            });
        }
    });
    let mut rows = rows.into_inner().expect("rows lock");
    rows.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
    rows
}
