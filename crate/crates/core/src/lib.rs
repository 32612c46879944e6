//! Finite Krasner hyperfields: construction, exhaustive verification,
//! classification up to isomorphism, and a plain-text document format.

pub mod cli;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod galois;
pub mod hyperfield;
pub mod io_format;
pub mod iso;
pub mod report;
pub mod set;

pub use construct::{
    from_field, hyperfield_of_order, massouros, product, quotient, subgroup_closure, Recipe,
    SubgroupSpec, Synthesis,
};
pub use enumerate::{enumerate_hyperfields, Enumeration, SearchOptions};
pub use error::{Error, Result, ValidationCode};
pub use galois::{factor_integer, gf, verify_field, Factorization, FieldTable, PrimePower};
pub use hyperfield::{Hyperfield, HyperfieldCandidate, ONE, ZERO};
pub use io_format::{
    parse_document, pretty_table, render_document, to_document, HyperfieldDocument,
};
pub use iso::{are_isomorphic, find_isomorphism, fingerprint, Fingerprint, IsoWitness};
pub use report::{AxiomOutcome, AxiomReport, Witness};
pub use set::{ElementSet, MAX_ORDER};
