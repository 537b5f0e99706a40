use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use pbw_core::compat::{self, CompatResult, InvarianceMode};
use pbw_core::corpus::{self, CorpusError};
use pbw_core::format::{self, Definition, FormatError};
use pbw_core::graded;
use pbw_core::harness::{
    self, counterexample_search, Family, HarnessError, Instance, Property, SearchBudget, SearchOutcome, TheoremCheck,
    TheoremId, Verdict,
};
use pbw_core::pbw::{NilProbe, NonNilReason, PbwError};
use pbw_core::radical::{self, Ideal, DEFAULT_IDEAL_CAP};
use pbw_core::ring::{FiniteRing, RingError};
use pbw_core::{classify_ring, Extension, NiWitness, RingMap};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::report::{BudgetJson, FindingJson, Status, Timing, WitnessJson};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: FormatError },
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Harness(#[from] HarnessError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Pbw(#[from] PbwError),
    #[error("{0}")]
    Usage(String),
}

pub struct Outcome {
    pub status: Status,
    pub result: Value,
    pub timings: Vec<Timing>,
}

impl Outcome {
    fn ok(result: impl Serialize) -> Self {
        Outcome::with(Status::Ok, result)
    }

    fn with(status: Status, result: impl Serialize) -> Self {
        Outcome { status, result: serde_json::to_value(result).expect("report values serialise"), timings: Vec::new() }
    }
}

/// Where a definition comes from: a file or a built-in corpus entry.
pub enum Source {
    File(PathBuf),
    Builtin(String),
}

impl Source {
    fn label(&self) -> String {
        match self {
            Source::File(p) => p.display().to_string(),
            Source::Builtin(n) => format!("builtin:{n}"),
        }
    }
}

pub fn load(source: &Source) -> Result<Definition, CliError> {
    match source {
        Source::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.clone(), source: e })?;
            format::parse_definition(&text).map_err(|e| CliError::Parse { path: path.display().to_string(), source: e })
        }
        Source::Builtin(name) => Ok(Definition::from_entry(&corpus::by_name(name)?)),
    }
}

fn parse_expr(ext: &Extension, src: &str, what: &str) -> Result<pbw_core::SkewPoly, CliError> {
    format::parse_poly(ext, src).map_err(|e| CliError::Parse { path: what.into(), source: e })
}

fn extension<'a>(def: &'a Definition, source: &Source) -> Result<&'a Extension, CliError> {
    let ext = def
        .extension
        .as_ref()
        .ok_or_else(|| CliError::Usage(format!("{} defines no extension", source.label())))?;
    if !ext.is_verified() {
        let why = ext.find_overlap_failure().map_or_else(|| "unknown".to_string(), |f| f.to_string());
        return Err(CliError::Usage(format!("{}: presentation fails verification: {why}", source.label())));
    }
    Ok(ext)
}

fn elems(ring: &FiniteRing, set: impl IntoIterator<Item = pbw_core::Elem>) -> Vec<String> {
    set.into_iter().map(|a| ring.format(a)).collect()
}

fn ideal_elems(ideal: &Ideal) -> Vec<String> {
    elems(ideal.ring(), ideal.carrier().iter().copied())
}

fn ring_json(ring: &FiniteRing) -> Value {
    json!({ "name": ring.name(), "orders": ring.orders(), "size": ring.size() })
}

fn map_json(name: &str, map: &RingMap) -> Value {
    json!({
        "name": name,
        "kind": map.kind_name(),
        "injective": map.is_injective(),
        "surjective": map.is_surjective(),
        "identity": map.is_identity(),
        "zero": map.is_zero(),
    })
}

pub fn verify(source: &Source) -> Result<Outcome, CliError> {
    let def = load(source)?;
    let mut status = Status::Ok;
    let mut result = json!({
        "name": def.name,
        "ring": ring_json(&def.ring),
        "maps": def.maps.iter().map(|(n, m)| map_json(n, m)).collect::<Vec<_>>(),
    });
    if let Some(g) = &def.grading {
        result["grading"] = json!({ "degrees": g.labels(), "connected": g.is_connected() });
    }
    if let Some(ext) = &def.extension {
        let failure = ext.find_overlap_failure();
        let mut e = json!({ "variables": ext.n(), "verified": failure.is_none() });
        if let Some(f) = failure {
            status = Status::Violation;
            e["overlap_failure"] = json!({
                "description": f.to_string(),
                "lhs": ext.format_poly(&f.lhs),
                "rhs": ext.format_poly(&f.rhs),
            });
        }
        result["extension"] = e;
    }
    Ok(Outcome::with(status, result))
}

#[derive(Serialize)]
struct Radicals {
    nilpotents: Vec<String>,
    prime_radical: Vec<String>,
    levitzki_radical: Vec<String>,
    upper_nilradical: Vec<String>,
    jacobson_radical: Vec<String>,
}

fn radicals_of(ring: &FiniteRing, cap: usize) -> Result<Radicals, CliError> {
    Ok(Radicals {
        nilpotents: elems(ring, radical::nilpotent_set(ring)),
        prime_radical: ideal_elems(&radical::prime_radical(ring, cap)?),
        levitzki_radical: ideal_elems(&radical::levitzki_radical(ring, cap)?),
        upper_nilradical: ideal_elems(&radical::upper_nilradical(ring, cap)?),
        jacobson_radical: ideal_elems(&radical::jacobson_radical(ring)?),
    })
}

pub fn radicals(source: &Source, cap: Option<usize>) -> Result<Outcome, CliError> {
    let def = load(source)?;
    let r = radicals_of(&def.ring, cap.unwrap_or(DEFAULT_IDEAL_CAP))?;
    Ok(Outcome::ok(json!({ "ring": ring_json(&def.ring), "radicals": r })))
}

fn compat_json(ring: &FiniteRing, r: &CompatResult) -> Value {
    json!({
        "holds": r.holds(),
        "bound": r.bound.to_string(),
        "witness": r.witness.as_ref().map(|w| w.describe(ring)),
    })
}

pub fn classify(source: &Source, cap: Option<usize>) -> Result<Outcome, CliError> {
    let def = load(source)?;
    let ring = &def.ring;
    let p = classify_ring(ring, cap.unwrap_or(DEFAULT_IDEAL_CAP))?;
    let ni_witness = p.ni_witness.map(|w| match w {
        NiWitness::Sum(a, b) => format!("{} and {} are nilpotent, their sum is not", ring.format(a), ring.format(b)),
        NiWitness::LeftProduct(r, a) => format!("{} is nilpotent, {} times it is not", ring.format(a), ring.format(r)),
        NiWitness::RightProduct(a, r) => format!("{} is nilpotent, it times {} is not", ring.format(a), ring.format(r)),
    });
    let mut result = json!({
        "ring": ring_json(ring),
        "profile": {
            "ni": p.ni,
            "nj": p.nj,
            "two_primal": p.two_primal,
            "weakly_two_primal": p.weakly_two_primal,
            "reduced": p.reduced,
            "domain": p.domain,
            "symmetric": p.symmetric,
            "reversible": p.reversible,
            "semicommutative": p.semicommutative,
            "left_duo": p.left_duo,
            "right_duo": p.right_duo,
            "abelian": p.abelian,
            "dedekind_finite": p.dedekind_finite,
            "locally_finite": p.locally_finite,
            "ni_witness": ni_witness,
        },
        "radicals": Radicals {
            nilpotents: elems(ring, p.nilpotents.iter().copied()),
            prime_radical: ideal_elems(&p.prime_radical),
            levitzki_radical: ideal_elems(&p.levitzki_radical),
            upper_nilradical: ideal_elems(&p.upper_nilradical),
            jacobson_radical: ideal_elems(&p.jacobson_radical),
        },
        "maps": def.maps.iter().map(|(n, m)| map_json(n, m)).collect::<Vec<_>>(),
    });
    if let Some(ext) = &def.extension {
        let sys = ext.system();
        let flags = ext.flags();
        let nil = radical::nilpotent_set(ring);
        let invariant = |mode| compat::invariance(&nil, sys, mode).is_none();
        result["system"] = json!({
            "sigma_compatible": compat_json(ring, &compat::is_sigma_compatible(sys)),
            "delta_compatible": compat_json(ring, &compat::is_delta_compatible(sys)),
            "compatible": compat_json(ring, &compat::is_compatible(sys)),
            "weak_sigma_compatible": compat_json(ring, &compat::is_weak_sigma_compatible(sys)),
            "weak_delta_compatible": compat_json(ring, &compat::is_weak_delta_compatible(sys)),
            "weak_compatible": compat_json(ring, &compat::is_weak_compatible(sys)),
            "sigma_rigid": compat::is_sigma_rigid(sys).is_none(),
            "nil_sigma_invariant": invariant(InvarianceMode::SigmaInvariant),
            "nil_delta_invariant": invariant(InvarianceMode::DeltaInvariant),
        });
        result["presentation"] = json!({
            "variables": ext.n(),
            "verified": ext.is_verified(),
            "bijective": flags.bijective,
            "quasi_commutative": flags.quasi_commutative,
            "derivation_type": flags.derivation_type,
            "endomorphism_type": flags.endomorphism_type,
        });
        if let Some(g) = &def.grading {
            let gp = graded::is_graded_extension(ext, g).map_err(|e| CliError::Usage(e.to_string()))?;
            result["grading"] = json!({
                "degrees": g.labels(),
                "connected": gp.connected,
                "graded_extension": gp.is_graded_extension,
            });
        }
    } else if let Some(g) = &def.grading {
        result["grading"] = json!({ "degrees": g.labels(), "connected": g.is_connected() });
    }
    Ok(Outcome::ok(result))
}

pub fn mul(source: &Source, lhs: &str, rhs: &str) -> Result<Outcome, CliError> {
    let def = load(source)?;
    let ext = extension(&def, source)?;
    let f = parse_expr(ext, lhs, "lhs")?;
    let g = parse_expr(ext, rhs, "rhs")?;
    let product = ext.mul(&f, &g)?;
    Ok(Outcome::ok(json!({
        "lhs": ext.format_poly(&f),
        "rhs": ext.format_poly(&g),
        "product": ext.format_poly(&product),
    })))
}

pub fn nilpotent(source: &Source, expr: &str, cap: u32) -> Result<Outcome, CliError> {
    let def = load(source)?;
    let ext = extension(&def, source)?;
    let f = parse_expr(ext, expr, "expression")?;
    let probe = ext.nilpotency_probe(&f, cap)?;
    let (status, outcome, detail) = match probe {
        NilProbe::Nilpotent(k) => (Status::Ok, "nilpotent", json!({ "index": k })),
        NilProbe::NotNilpotent(reason) => {
            let why = match reason {
                NonNilReason::StabilizedPower { from, to } => format!("f^{from} = f^{to} and is nonzero"),
                NonNilReason::UnitLeadingChain { power } => {
                    format!("f^{power} has a unit leading coefficient modulo the reduction ideal")
                }
                NonNilReason::NonNilpotentConstant => "congruent to a non-nilpotent constant".into(),
            };
            (Status::Ok, "not-nilpotent", json!({ "reason": why }))
        }
        NilProbe::Unknown(c) => (Status::Inconclusive, "unknown", json!({ "cap": c })),
    };
    Ok(Outcome::with(status, json!({ "polynomial": ext.format_poly(&f), "cap": cap, "outcome": outcome, "detail": detail })))
}

fn verdict_status(v: &Verdict) -> Status {
    match v {
        Verdict::Consistent | Verdict::PreconditionFailed(_) => Status::Ok,
        Verdict::Violated(_) => Status::Violation,
        Verdict::Inconclusive(_) => Status::Inconclusive,
    }
}

fn ms(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

pub fn check(source: &Source, ids: &[TheoremId], budget: SearchBudget, force: bool) -> Result<Outcome, CliError> {
    let def = load(source)?;
    let ext = extension(&def, source)?.clone();
    let inst = Instance::new(def.name.clone(), ext, def.grading.clone());
    let explicit = !ids.is_empty();
    let ids: Vec<TheoremId> = if explicit { ids.to_vec() } else { TheoremId::ALL.to_vec() };

    let mut runnable = Vec::new();
    let mut records = Vec::new();
    for &id in &ids {
        match harness::shape_compatible(id, &inst) {
            Ok(()) => runnable.push(id),
            Err(e) if explicit => return Err(e.into()),
            Err(e) => records.push((id, json!({ "id": id.to_string(), "verdict": "NotApplicable", "reason": e.to_string() }))),
        }
    }
    let reports: Vec<_> = if force {
        runnable
            .iter()
            .map(|&id| {
                let mut c = TheoremCheck::new(id, &inst, budget);
                c.force_conclusions = true;
                (id, harness::run_check(&c))
            })
            .collect()
    } else {
        harness::run_checks(&inst, &runnable, budget)
    };

    let mut status = Status::Ok;
    let mut timings = Vec::new();
    let ext = &inst.extension;
    let findings = |fs: &[harness::Finding]| fs.iter().map(|f| FindingJson::new(f, ext)).collect::<Vec<_>>();
    for (id, r) in reports {
        let r = r?;
        status = status.combine(verdict_status(&r.verdict));
        timings.push(Timing { label: id.to_string(), ms: ms(r.elapsed) });
        let reason = match &r.verdict {
            Verdict::Inconclusive(why) => Some(why.clone()),
            _ => None,
        };
        records.push((
            id,
            json!({
                "id": id.to_string(),
                "statement": id.statement(),
                "verdict": r.verdict.label(),
                "reason": reason,
                "witness": r.verdict.witness().map(|w| WitnessJson::new(w, ext)),
                "preconditions": findings(&r.preconditions),
                "conclusions": findings(&r.conclusions),
                "observations": findings(&r.observations),
                "notes": r.notes,
            }),
        ));
    }
    records.sort_by_key(|(id, _)| id.number());
    let mut out = Outcome::with(
        status,
        json!({
            "instance": inst.name,
            "budget": BudgetJson::from(&budget),
            "checks": records.into_iter().map(|(_, v)| v).collect::<Vec<_>>(),
        }),
    );
    out.timings = timings;
    Ok(out)
}

pub fn search(property: Property, family: &Family, budget: SearchBudget) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let outcome = counterexample_search(property, family, budget);
    let elapsed = start.elapsed();
    let base = |status| json!({ "family": family.name(), "budget": BudgetJson::from(&budget), "status": status });
    let mut out = match outcome {
        Ok(SearchOutcome::Found { instance, witness }) => {
            let mut v = base("found");
            v["instance"] = json!(instance.name);
            v["witness"] = serde_json::to_value(WitnessJson::new(&witness, &instance.extension)).expect("witness");
            Outcome::with(Status::Ok, v)
        }
        Ok(SearchOutcome::Exhausted { checked, undecided }) => {
            let mut v = base("exhausted");
            v["checked"] = json!(checked);
            v["undecided"] = json!(undecided);
            Outcome::with(if undecided > 0 { Status::Inconclusive } else { Status::Ok }, v)
        }
        Err(HarnessError::BudgetExceeded { needed, budget: b }) => {
            let mut v = base("budget-exceeded");
            v["needed"] = json!(u64::try_from(needed).unwrap_or(u64::MAX));
            v["pairs"] = json!(u64::try_from(b).unwrap_or(u64::MAX));
            Outcome::with(Status::Inconclusive, v)
        }
        Err(e) => return Err(e.into()),
    };
    out.timings.push(Timing { label: "search".into(), ms: ms(elapsed) });
    Ok(out)
}

pub fn corpus_list() -> Result<Outcome, CliError> {
    let entries: Vec<Value> = corpus::all()?
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "shadows": e.shadows,
                "ring_size": e.ring.size(),
                "variables": e.extension.as_ref().map(|x| x.n()),
                "verified": e.extension.as_ref().map(|x| x.is_verified()),
                "graded": e.grading.is_some(),
            })
        })
        .collect();
    Ok(Outcome::ok(json!({ "entries": entries })))
}

/// Writes the definition of `name` to `output`, or returns it when no path
/// is given.
pub fn corpus_export(name: &str, output: Option<&Path>) -> Result<(Outcome, Option<String>), CliError> {
    let entry = corpus::by_name(name)?;
    let text = format::export_entry(&entry).map_err(|e| CliError::Parse { path: name.into(), source: e })?;
    match output {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e })?;
            Ok((Outcome::ok(json!({ "name": name, "written": path.display().to_string() })), None))
        }
        None => Ok((Outcome::ok(json!({ "name": name, "definition": text })), Some(text))),
    }
}
