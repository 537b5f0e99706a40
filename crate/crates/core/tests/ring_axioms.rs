use std::sync::OnceLock;

use pbw_core::corpus::{self, CorpusEntry};
use pbw_core::ring::{Elem, FiniteRing};
use proptest::prelude::*;

fn corpus() -> &'static [CorpusEntry] {
    static ALL: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
    ALL.get_or_init(|| corpus::all().expect("corpus builds"))
}

fn rings() -> Vec<FiniteRing> {
    let mut out: Vec<FiniteRing> = Vec::new();
    for e in corpus() {
        if !out.contains(&e.ring) {
            out.push(e.ring.clone());
        }
    }
    out
}

fn pick(ring: &FiniteRing, k: u32) -> Elem {
    Elem(k % ring.size() as u32)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn ring_axioms(r in any::<usize>(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let all = rings();
        let ring = &all[r % all.len()];
        let (a, b, c) = (pick(ring, a), pick(ring, b), pick(ring, c));
        prop_assert_eq!(ring.mul(ring.mul(a, b), c), ring.mul(a, ring.mul(b, c)));
        prop_assert_eq!(ring.mul(a, ring.add(b, c)), ring.add(ring.mul(a, b), ring.mul(a, c)));
        prop_assert_eq!(ring.mul(ring.add(a, b), c), ring.add(ring.mul(a, c), ring.mul(b, c)));
        prop_assert_eq!(ring.add(a, b), ring.add(b, a));
        prop_assert_eq!(ring.add(ring.add(a, b), c), ring.add(a, ring.add(b, c)));
        prop_assert_eq!(ring.add(a, ring.neg(a)), ring.zero());
        prop_assert_eq!(ring.mul(ring.one(), a), a);
        prop_assert_eq!(ring.mul(a, ring.one()), a);
        prop_assert_eq!(ring.sub(a, b), ring.add(a, ring.neg(b)));
    }

    #[test]
    fn sigma_and_delta_laws(e in any::<usize>(), i in any::<usize>(), a in any::<u32>(), b in any::<u32>()) {
        let with_ext: Vec<&CorpusEntry> = corpus().iter().filter(|e| e.extension.is_some()).collect();
        let entry = with_ext[e % with_ext.len()];
        let sys = entry.extension.as_ref().unwrap().system();
        let ring = sys.ring();
        let i = i % sys.len();
        let (s, d) = (&sys.sigmas()[i], &sys.deltas()[i]);
        let (a, b) = (pick(ring, a), pick(ring, b));
        prop_assert_eq!(s.apply(ring.mul(a, b)), ring.mul(s.apply(a), s.apply(b)));
        prop_assert_eq!(s.apply(ring.add(a, b)), ring.add(s.apply(a), s.apply(b)));
        prop_assert_eq!(s.apply(ring.one()), ring.one());
        let leibniz = ring.add(ring.mul(s.apply(a), d.apply(b)), ring.mul(d.apply(a), b));
        prop_assert_eq!(d.apply(ring.mul(a, b)), leibniz);
        prop_assert_eq!(d.apply(ring.add(a, b)), ring.add(d.apply(a), d.apply(b)));
    }

    #[test]
    fn coordinates_round_trip(r in any::<usize>(), a in any::<u32>()) {
        let all = rings();
        let ring = &all[r % all.len()];
        let a = pick(ring, a);
        prop_assert_eq!(ring.elem(&ring.coords(a)).unwrap(), a);
    }
}

#[test]
fn nilpotency_matches_powers() {
    for ring in rings() {
        for a in ring.elements() {
            let by_powers = (1..=ring.size() as u64).any(|k| ring.pow(a, k) == ring.zero());
            assert_eq!(ring.is_nilpotent(a), by_powers, "{} {}", ring.name(), ring.format(a));
        }
    }
}
