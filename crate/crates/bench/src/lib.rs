//! Fixtures shared by the benchmarks in `benches/`.

use pbw_core::corpus;
use pbw_core::{parse_poly, Extension, SkewPoly};

/// A verified corpus presentation by name.
pub fn extension(name: &str) -> Extension {
    corpus::by_name(name)
        .ok()
        .and_then(|e| e.extension)
        .unwrap_or_else(|| panic!("{name} has no extension"))
}

/// Every product `x^a * r` with `r` in the base and `a <= degree`, summed
/// with a shifted copy so both factors have several terms.
pub fn dense(ext: &Extension, degree: u32) -> SkewPoly {
    let ring = ext.base();
    let vars: Vec<String> =
        if ext.n() == 1 { vec!["x".into()] } else { (1..=ext.n()).map(|i| format!("x{i}")).collect() };
    let mut acc = SkewPoly::zero(ext.n());
    for (k, r) in ring.elements().enumerate().skip(1) {
        let v = &vars[k % vars.len()];
        let e = (k as u32 % degree) + 1;
        let term = parse_poly(ext, &format!("{}*{v}^{e}", ring.format(r))).expect("fixture parses");
        acc = ext.add(&acc, &term);
    }
    acc
}
