//! A workbench for propositional and modal team logics: exact team-semantic
//! model checking, closure analysis, bisimulation and amalgamation
//! machinery, characteristic formulas, and uniform interpolation by
//! bisimulation-quantifier elimination.
//!
//! Everything is exact and deterministic at desk scale: enumerations are
//! exhaustive behind explicit resource caps ([`Limits`]), outputs and
//! witnesses are lexicographically least, and no randomness is used
//! anywhere.

pub mod bisim;
pub mod charform;
pub mod interp;
pub mod kripke;
pub mod limits;
pub mod prop;
pub mod syntax;

pub use limits::Limits;
pub use syntax::{parse, render, Formula, Fragment, Language, PropName, SyntaxError};
