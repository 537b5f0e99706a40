//! Exact arithmetic for skew PBW extensions over finite rings.
//!
//! The crate is organised bottom-up: [`ring`] and [`radical`] handle the
//! coefficient ring, [`maps`] and [`compat`] the twisting data, [`pbw`] the
//! extension itself, [`graded`] gradings, and [`harness`] ties these into
//! checks of the implications between NI, NJ and compatibility. [`format`]
//! reads and writes definition files and polynomial expressions.

#![allow(clippy::needless_range_loop)]

pub mod classify;
pub mod compat;
pub mod corpus;
pub mod format;
pub mod graded;
pub mod harness;
pub mod maps;
pub mod pbw;
pub mod radical;
pub mod ring;

pub use classify::{classify_ring, NiWitness, RingProfile};
pub use maps::{MapError, MapKind, RingMap, SigmaSystem, WordMap};
pub use radical::{ElemSet, Ideal};
pub use ring::{ArithOp, Elem, FiniteRing, RingError};
pub use compat::{Bound, CompatResult, CompatWitness, InvarianceMode, MapFamily};
pub use format::{export_definition, export_entry, parse_definition, parse_poly, Definition, FormatError};
pub use graded::{GradedError, GradedProfile, Grading};
pub use harness::{
    counterexample_search, run_all, run_check, Evidence, Family, Finding, HarnessError, Instance, Property,
    SearchBudget, SearchOutcome, TheoremCheck, TheoremId, TheoremReport, Truth, Verdict, Witness,
};
pub use pbw::{
    bounded_ni_check, Extension, MultiIndex, NiCheck, NiOutcome, NiViolation, NilProbe, PbwError, Relation,
    SkewPoly,
};
