//! Resource guards. Every enumeration in the workbench is bounded by an
//! explicit cap; exceeding a cap is an error, never silent truncation.

use thiserror::Error;

/// Caps for the exhaustive procedures. `Default` gives the desk-scale
/// envelope; the CLI overrides from `TL_MAX_PROPS`, `TL_TYPE_CAP` and
/// `TL_MAX_WORLDS`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Propositions allowed in whole-property enumeration (`models_of`,
    /// closure reports, propositional entailment and interpolation).
    pub max_props: usize,
    /// Width cap for cover searches: members of a team in a propositional
    /// evaluation, and `|R(X)|` in the modal diamond clause.
    pub max_cover_width: usize,
    /// Cap on the number of bisimulation types a single enumeration may
    /// produce.
    pub type_cap: u64,
    /// Exact-mode quantifier elimination requires the k-type count to stay
    /// at or below this (team classes are its power set).
    pub exact_types: u64,
    /// Largest world count for bounded modal model enumeration.
    pub max_worlds: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_props: 4,
            max_cover_width: 16,
            type_cap: 4096,
            exact_types: 16,
            max_worlds: 3,
        }
    }
}

impl Limits {
    /// Ceiling for `max_worlds`: the bounded enumerator walks every edge
    /// set, so four worlds (2^16 edge sets per labeling) is already the
    /// practical limit.
    pub const MAX_ENUMERABLE_WORLDS: usize = 4;
}

/// Which cap a guarded operation ran into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapKind {
    /// `Limits::max_props`
    Props,
    /// `Limits::max_cover_width`
    CoverWidth,
    /// `Limits::type_cap`
    Types,
    /// `Limits::exact_types`; bounded mode remains available
    ExactTypes,
    /// `Limits::max_worlds` or the enumerator ceiling
    Worlds,
}

impl CapKind {
    pub fn describe(&self) -> &'static str {
        match self {
            CapKind::Props => "proposition count for whole-property enumeration",
            CapKind::CoverWidth => "cover-search width",
            CapKind::Types => "bisimulation type count",
            CapKind::ExactTypes => "k-type count for exact-mode elimination",
            CapKind::Worlds => "world count for bounded model enumeration",
        }
    }
}

/// A resource guard fired: the operation would need `need` where the
/// configured cap is `cap`.
#[derive(Debug, Clone, Copy, Error, PartialEq, Eq)]
#[error("{} exceeded: need {need}, cap is {cap}", kind.describe())]
pub struct CapExceeded {
    pub kind: CapKind,
    pub need: u64,
    pub cap: u64,
}
