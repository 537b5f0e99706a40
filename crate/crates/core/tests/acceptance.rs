//! Acceptance criteria 1 to 11. Runs as a plain binary and prints one
//! PASS/FAIL line per criterion.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::{geometric_inverse, random_poly};
use pbw_core::corpus::{self, CorpusEntry};
use pbw_core::graded::{self, Grading};
use pbw_core::harness::{self, HarnessError, Instance, SearchBudget, TheoremId, Truth, Verdict};
use pbw_core::pbw::{NiOutcome, NiViolation};
use pbw_core::radical::{self, ElemSet, DEFAULT_IDEAL_CAP};
use pbw_core::ring::{Elem, FiniteRing};
use pbw_core::{bounded_ni_check, classify_ring, parse_poly, Extension, MultiIndex, PbwError, SkewPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn entries() -> Vec<CorpusEntry> {
    corpus::all().expect("corpus builds")
}

fn ext_of(name: &str) -> Extension {
    corpus::by_name(name).expect("entry").extension.expect("extension")
}

fn distinct_rings() -> Vec<FiniteRing> {
    let mut out: Vec<FiniteRing> = Vec::new();
    for e in entries() {
        if !out.contains(&e.ring) {
            out.push(e.ring);
        }
    }
    out
}

fn brute_unit(ring: &FiniteRing, a: Elem) -> bool {
    ring.elements().any(|b| ring.mul(a, b) == ring.one() && ring.mul(b, a) == ring.one())
}

/// `J(R) = { a : 1 - r a is a unit for every r }`, by exhaustive search.
fn brute_jacobson(ring: &FiniteRing) -> ElemSet {
    ring.elements()
        .filter(|&a| ring.elements().all(|r| brute_unit(ring, ring.sub(ring.one(), ring.mul(r, a)))))
        .collect()
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    for ring in distinct_rings() {
        if ring.size() > 64 {
            continue;
        }
        let prime = radical::prime_radical(&ring, DEFAULT_IDEAL_CAP).map_err(|e| e.to_string())?;
        let lev = radical::levitzki_radical(&ring, DEFAULT_IDEAL_CAP).map_err(|e| e.to_string())?;
        let upper = radical::upper_nilradical(&ring, DEFAULT_IDEAL_CAP).map_err(|e| e.to_string())?;
        let jac = radical::jacobson_radical(&ring).map_err(|e| e.to_string())?;
        let brute = brute_jacobson(&ring);
        ensure!(prime.carrier() == lev.carrier(), "{}: N_* != L", ring.name());
        ensure!(lev.carrier() == upper.carrier(), "{}: L != N*", ring.name());
        ensure!(upper.carrier() == jac.carrier(), "{}: N* != J", ring.name());
        ensure!(jac.carrier() == &brute, "{}: J differs from the invertibility search", ring.name());
        checked += 1;
    }
    Ok(format!("{checked} rings, N_* = L = N* = J"))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for ring in distinct_rings() {
        let sub = |a: &ElemSet, b: &ElemSet| a.is_subset(b);
        let prime = radical::prime_radical(&ring, DEFAULT_IDEAL_CAP).map_err(|e| e.to_string())?;
        let lev = radical::levitzki_radical(&ring, DEFAULT_IDEAL_CAP).map_err(|e| e.to_string())?;
        let upper = radical::upper_nilradical(&ring, DEFAULT_IDEAL_CAP).map_err(|e| e.to_string())?;
        let jac = radical::jacobson_radical(&ring).map_err(|e| e.to_string())?;
        let nil: ElemSet = ring.elements().filter(|&a| (1..=ring.size() as u64).any(|k| ring.pow(a, k) == ring.zero())).collect();
        ensure!(sub(prime.carrier(), lev.carrier()), "{}: N_* not in L", ring.name());
        ensure!(sub(lev.carrier(), upper.carrier()), "{}: L not in N*", ring.name());
        ensure!(sub(upper.carrier(), &nil), "{}: N* not in N", ring.name());
        ensure!(sub(upper.carrier(), jac.carrier()), "{}: N* not in J", ring.name());
        checked += 1;
    }
    Ok(format!("{checked} rings, N_* ⊆ L ⊆ N* ⊆ N and N* ⊆ J"))
}

fn criterion_3() -> Outcome {
    let ring_of = |n: &str| corpus::by_name(n).map(|e| e.ring).map_err(|e| e.to_string());
    let m2 = ring_of("M2(Z2)")?;
    let p = classify_ring(&m2, DEFAULT_IDEAL_CAP).map_err(|e| e.to_string())?;
    ensure!(!p.ni, "M2(Z2) reported NI");
    let sq_zero: Vec<Elem> = m2.elements().filter(|&a| a != m2.zero() && m2.mul(a, a) == m2.zero()).collect();
    let pair = sq_zero.iter().flat_map(|&a| sq_zero.iter().map(move |&b| (a, b))).find(|&(a, b)| {
        let s = m2.add(a, b);
        m2.mul(s, s) == m2.one()
    });
    ensure!(pair.is_some(), "no e12, e21 pair squaring to the identity");
    ensure!(p.ni_witness.is_some(), "M2(Z2) has no NI witness");

    let u2 = ring_of("U2(Z2)")?;
    let p = classify_ring(&u2, DEFAULT_IDEAL_CAP).map_err(|e| e.to_string())?;
    ensure!(p.ni && p.nj, "U2(Z2) not NI and NJ");
    ensure!(p.nilpotents.len() == 2, "U2(Z2): |N| = {}", p.nilpotents.len());
    let e12 = *p.nilpotents.iter().find(|&&a| a != u2.zero()).unwrap();
    ensure!(u2.mul(e12, e12) == u2.zero(), "U2(Z2): nonzero nilpotent does not square to 0");
    ensure!(p.jacobson_radical.carrier() == &p.nilpotents, "U2(Z2): J != N");

    let z4 = ring_of("Z4")?;
    let p = classify_ring(&z4, DEFAULT_IDEAL_CAP).map_err(|e| e.to_string())?;
    ensure!(p.ni && p.nj && p.two_primal, "Z4 not NI, NJ and 2-primal");
    let two: ElemSet = [z4.zero(), z4.from_int(2)].into_iter().collect();
    ensure!(p.nilpotents == two, "Z4: N != {{0, 2}}");
    Ok("M2(Z2) not NI via e12 + e21; U2(Z2) NI, NJ, N = J = {0, e12}; Z4 NI, NJ, 2-primal, N = {0, 2}".into())
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut triples = 0;
    let mut names = 0;
    for e in entries() {
        let Some(ext) = e.extension.filter(|x| x.is_verified()) else { continue };
        names += 1;
        for _ in 0..1000 {
            let f = random_poly(&ext, &mut rng, 3, 3);
            let g = random_poly(&ext, &mut rng, 3, 3);
            let h = random_poly(&ext, &mut rng, 3, 3);
            let m = |a: &SkewPoly, b: &SkewPoly| ext.mul(a, b).expect("verified");
            ensure!(m(&m(&f, &g), &h) == m(&f, &m(&g, &h)), "{}: associativity fails", e.name);
            ensure!(m(&f, &ext.add(&g, &h)) == ext.add(&m(&f, &g), &m(&f, &h)), "{}: left distributivity fails", e.name);
            ensure!(m(&ext.add(&f, &g), &h) == ext.add(&m(&f, &h), &m(&g, &h)), "{}: right distributivity fails", e.name);
            triples += 1;
        }
    }
    let ext = ext_of("Z4[x,y]");
    for _ in 0..1000 {
        let f = random_poly(&ext, &mut rng, 3, 4);
        let g = random_poly(&ext, &mut rng, 3, 4);
        let got = common::as_int_map(&ext, &ext.mul(&f, &g).expect("verified"));
        let want = common::commutative_mul(4, &common::as_int_map(&ext, &f), &common::as_int_map(&ext, &g));
        ensure!(got == want, "Z4[x,y] disagrees with the commutative oracle");
    }
    Ok(format!("{triples} triples over {names} presentations; 1000 products agree with the commutative oracle"))
}

fn criterion_5() -> Outcome {
    let mut ok = 0;
    for e in entries() {
        let Some(ext) = &e.extension else { continue };
        let mut fresh = ext.clone();
        let result = fresh.verify();
        if e.name == "weyl_corrupted" {
            ensure!(matches!(result, Err(PbwError::OverlapFails(_))), "corrupted fixture gave {result:?}");
        } else {
            ensure!(result.is_ok(), "{}: {result:?}", e.name);
            ok += 1;
        }
    }
    Ok(format!("{ok} presentations verify; weyl_corrupted fails with OverlapFails"))
}

fn nilpotent_by_powers(ext: &Extension, f: &SkewPoly, cap: u32) -> bool {
    let mut p = f.clone();
    for _ in 0..cap {
        if p.is_zero() {
            return true;
        }
        p = ext.mul(&p, f).expect("verified");
    }
    p.is_zero()
}

fn criterion_6() -> Outcome {
    let ext = ext_of("euler_like(2)");
    let check = bounded_ni_check(&ext, 2, 3, 8, 1_000_000).map_err(|e| e.to_string())?;
    ensure!(check.outcome == NiOutcome::ConsistentWithNi, "outcome {:?}", check.outcome);
    ensure!(check.agreement.is_exact(), "criterion disagreements {:?}", check.agreement);
    ensure!(check.stats.unknown == 0, "{} window elements undecided", check.stats.unknown);
    let nil = radical::nilpotent_set(ext.base());
    for f in &check.nilpotent {
        ensure!(f.coefficients().all(|c| nil.contains(&c)), "{} nilpotent outside N(R)", ext.format_poly(f));
        ensure!(nilpotent_by_powers(&ext, f, 8), "{} not nilpotent by direct powers", ext.format_poly(f));
    }
    Ok(format!("ConsistentWithNi over a window of {}; {} nilpotents, zero mismatches", check.stats.window, check.nilpotent.len()))
}

fn replay_violation(ext: &Extension, v: &NiViolation) -> Result<SkewPoly, String> {
    for f in v.nilpotent_parts() {
        ensure!(nilpotent_by_powers(ext, f, 16), "{} is not nilpotent", ext.format_poly(f));
    }
    Ok(v.combination(ext))
}

fn criterion_7() -> Outcome {
    let ext = ext_of("weyl_like(2)");
    let check = bounded_ni_check(&ext, 2, 2, 8, 1_000_000).map_err(|e| e.to_string())?;
    let NiOutcome::Violation(v) = &check.outcome else { return Err(format!("outcome {:?}", check.outcome)) };
    let c = replay_violation(&ext, v)?;
    let mut p = c.clone();
    let mut idempotent_power = None;
    for k in 1..=8 {
        let sq = ext.mul(&p, &p).expect("verified");
        if !p.is_zero() && sq == p {
            idempotent_power = Some(k);
            break;
        }
        p = ext.mul(&p, &c).expect("verified");
    }
    ensure!(idempotent_power.is_some(), "no power of {} is a nonzero idempotent", ext.format_poly(&c));
    let xy = parse_poly(&ext, "x*[0,1]").map_err(|e| e.to_string())?;
    ensure!(ext.mul(&xy, &xy).expect("verified") == xy, "xy is not idempotent");

    let entry = corpus::by_name("weyl_like(2)").map_err(|e| e.to_string())?;
    let inst = Instance::from_entry(&entry).ok_or("weyl_like(2) did not load")?;
    let budget = SearchBudget::new(2, 2, 8, 1_000_000).map_err(|e| e.to_string())?;
    let report = harness::run_check(&harness::TheoremCheck::new(TheoremId::T3, &inst, budget)).map_err(|e| e.to_string())?;
    ensure!(report.verdict == Verdict::Consistent, "T3 verdict {}", report.verdict.label());
    for f in &report.conclusions {
        let Truth::Fails(w) = &f.truth else { return Err(format!("T3 side {:?} does not fail", f.name)) };
        ensure!(w.replay(&inst, &budget), "witness for {:?} does not replay", f.name);
    }
    Ok(format!("Violation: {}; idempotent {}; T3 Consistent, both sides false", v.describe(&ext), ext.format_poly(&xy)))
}

fn criterion_8() -> Outcome {
    let ext = ext_of("swap");
    let f = parse_poly(&ext, "[1,0]*x").map_err(|e| e.to_string())?;
    let g = parse_poly(&ext, "[0,1]*x").map_err(|e| e.to_string())?;
    let m = |a: &SkewPoly, b: &SkewPoly| ext.mul(a, b).expect("verified");
    ensure!(m(&f, &f).is_zero() && m(&g, &g).is_zero(), "f or g does not square to zero");
    let s = ext.add(&f, &g);
    ensure!(s == ext.var(0), "f + g is not x");
    let x8 = ext.power(&s, 8).expect("verified");
    ensure!(x8 == SkewPoly::monomial(MultiIndex::new(vec![8]), ext.base().one()), "x^8 is not the monomial x^8");
    let ring = ext.base();
    let reduced = radical::nilpotent_set(ring).len() == 1;
    ensure!(reduced, "swap base is not reduced");
    ensure!(!pbw_core::compat::is_weak_compatible(ext.system()).holds(), "swap system is weak compatible");
    let check = bounded_ni_check(&ext, 1, 2, 8, 1_000_000).map_err(|e| e.to_string())?;
    let NiOutcome::Violation(v) = &check.outcome else { return Err(format!("outcome {:?}", check.outcome)) };
    let c = replay_violation(&ext, v)?;
    ensure!(ext.probe_is_not_nilpotent(&c), "combination not proved non-nilpotent");
    Ok(format!("Violation: {}", v.describe(&ext)))
}

trait ProbeExt {
    fn probe_is_not_nilpotent(&self, f: &SkewPoly) -> bool;
}

impl ProbeExt for Extension {
    fn probe_is_not_nilpotent(&self, f: &SkewPoly) -> bool {
        self.nilpotency_probe(f, 16).map(|p| p.is_not_nilpotent()).unwrap_or(false)
    }
}

fn criterion_9() -> Outcome {
    let ext = ext_of("euler_like(2)");
    let check = bounded_ni_check(&ext, 2, 3, 8, 1_000_000).map_err(|e| e.to_string())?;
    for f in &check.nilpotent {
        let g = geometric_inverse(&ext, f, 16);
        let one_f = ext.add(&ext.one(), f);
        ensure!(ext.mul(&one_f, &g).expect("verified") == ext.one(), "(1 + f) g != 1 for f = {}", ext.format_poly(f));
        ensure!(ext.mul(&g, &one_f).expect("verified") == ext.one(), "g (1 + f) != 1 for f = {}", ext.format_poly(f));
    }
    let entry = corpus::by_name("euler_like(2)").map_err(|e| e.to_string())?;
    let inst = Instance::from_entry(&entry).ok_or("euler_like(2) did not load")?;
    let budget = SearchBudget::default();
    let report = harness::run_check(&harness::TheoremCheck::new(TheoremId::T8, &inst, budget)).map_err(|e| e.to_string())?;
    ensure!(report.verdict == Verdict::Consistent, "T8 verdict {}", report.verdict.label());
    Ok(format!("{} nilpotents inverted exactly; T8 Consistent", check.nilpotent.len()))
}

/// Degree of a base element from the generator labels, if homogeneous.
fn elem_degree(g: &Grading, c: Elem) -> Option<Option<u32>> {
    let ring = g.ring();
    let mut deg = None;
    for (t, &k) in ring.coords(c).iter().enumerate() {
        if k != 0 {
            let l = g.labels()[t];
            if deg.is_some_and(|d| d != l) {
                return None;
            }
            deg = Some(l);
        }
    }
    Some(deg)
}

fn homogeneous_of(g: &Grading, f: &SkewPoly, p: u32) -> bool {
    f.terms().all(|(a, c)| match elem_degree(g, c) {
        Some(Some(d)) => d + a.degree() == p,
        Some(None) => true,
        None => false,
    })
}

/// Every element of `A_p`: sums of `c x^α` with `c` of degree `p - |α|`.
fn homogeneous_part(ext: &Extension, g: &Grading, p: u32) -> Vec<SkewPoly> {
    let ring = ext.base();
    let mut slots: Vec<(MultiIndex, Vec<Elem>)> = Vec::new();
    for alpha in MultiIndex::up_to_degree(ext.n(), p) {
        let want = p - alpha.degree();
        let coeffs: Vec<Elem> = ring.elements().filter(|&c| matches!(elem_degree(g, c), Some(Some(d)) if d == want) || c == ring.zero()).collect();
        if coeffs.len() > 1 {
            slots.push((alpha, coeffs));
        }
    }
    let mut out = vec![SkewPoly::zero(ext.n())];
    for (alpha, coeffs) in slots {
        let mut next = Vec::with_capacity(out.len() * coeffs.len());
        for f in &out {
            for &c in &coeffs {
                next.push(ext.add(f, &SkewPoly::monomial(alpha.clone(), c)));
            }
        }
        out = next;
    }
    out
}

fn criterion_10() -> Outcome {
    let entry = corpus::by_name("clifford_trunc(2)").map_err(|e| e.to_string())?;
    let ext = entry.extension.as_ref().ok_or("no extension")?;
    let g = entry.grading.as_ref().ok_or("no grading")?;
    let profile = graded::is_graded_extension(ext, g).map_err(|e| e.to_string())?;
    ensure!(profile.is_graded_extension, "clifford_trunc(2) is not a graded extension");
    ensure!(g.is_connected(), "clifford_trunc(2) is not connected");
    let parts: Vec<Vec<SkewPoly>> = (0..=2).map(|p| homogeneous_part(ext, g, p)).collect();
    let mut products = 0;
    for (p, fs) in parts.iter().enumerate() {
        for (q, gs) in parts.iter().enumerate() {
            for f in fs {
                for h in gs {
                    let fh = ext.mul(f, h).expect("verified");
                    ensure!(homogeneous_of(g, &fh, (p + q) as u32), "A_{p} A_{q} leaves A_{}", p + q);
                    products += 1;
                }
            }
        }
    }
    let mut qc = 0;
    for e in entries() {
        let Some(x) = &e.extension else { continue };
        if !e.name.starts_with("quasi_comm") {
            continue;
        }
        let trivial = Grading::trivial(x.base());
        let p = graded::is_graded_extension(x, &trivial).map_err(|e| e.to_string())?;
        ensure!(p.is_graded_extension, "{} under the trivial grading is not graded", e.name);
        qc += 1;
    }
    Ok(format!("clifford_trunc(2) graded and connected; {products} homogeneous products; {qc} quasi-commutative entries graded"))
}

fn criterion_11() -> Outcome {
    let instances: Vec<Instance> = entries().iter().filter_map(Instance::from_entry).collect();
    let budget = SearchBudget::new(2, 2, 8, 1_000_000).map_err(|e| e.to_string())?;
    let rows = harness::run_all(&instances, &TheoremId::ALL, budget);
    let (mut consistent, mut pre_failed, mut inconclusive) = (0, 0, 0);
    for (name, id, row) in &rows {
        let inst = instances.iter().find(|i| &i.name == name).expect("instance");
        let report = match row {
            Ok(r) => r,
            Err(HarnessError::WrongShape { .. }) => continue,
            Err(e) => return Err(format!("{name} {id}: {e}")),
        };
        match &report.verdict {
            Verdict::Violated(w) => return Err(format!("{name} {id}: Violated, {}", w.describe(&inst.extension))),
            Verdict::PreconditionFailed(w) => {
                ensure!(w.replay(inst, &budget), "{name} {id}: precondition witness does not replay");
                pre_failed += 1;
            }
            Verdict::Consistent => consistent += 1,
            Verdict::Inconclusive(why) => {
                eprintln!("  inconclusive: {name} {id}: {why}");
                inconclusive += 1;
            }
        }
    }
    let small = SearchBudget::new(1, 2, 4, 100_000).map_err(|e| e.to_string())?;
    let spot = ["swap", "euler_like(2)", "weyl_like(2)", "quasi_comm(Z3,d=2)", "clifford_trunc(2)"];
    let picked: Vec<Instance> = instances.iter().filter(|i| spot.contains(&i.name.as_str())).cloned().collect();
    let low = harness::run_all(&picked, &TheoremId::ALL, small);
    let high = harness::run_all(&picked, &TheoremId::ALL, small.doubled());
    let mut pairs = 0;
    for ((name, id, a), (_, _, b)) in low.iter().zip(&high) {
        if let (Ok(a), Ok(b)) = (a, b) {
            ensure!(
                !(a.verdict == Verdict::Consistent && matches!(b.verdict, Verdict::Violated(_))),
                "{name} {id}: Consistent at {small} but Violated when doubled"
            );
            pairs += 1;
        }
    }
    Ok(format!(
        "{consistent} Consistent, {pre_failed} PreconditionFailed (replayed), {inconclusive} Inconclusive, 0 Violated; {pairs} doubling pairs monotone"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("radical collapse oracle", criterion_1),
        ("radical chain", criterion_2),
        ("classification ground truths", criterion_3),
        ("engine soundness", criterion_4),
        ("presentation gate", criterion_5),
        ("weak-compatible NI transfer on euler_like(2)", criterion_6),
        ("derivation type, negative face on weyl_like(2)", criterion_7),
        ("hypothesis necessity on swap", criterion_8),
        ("NI iff NJ, bounded face on euler_like(2)", criterion_9),
        ("graded checks", criterion_10),
        ("harness global invariant", criterion_11),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.2}s): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.2}s): {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
