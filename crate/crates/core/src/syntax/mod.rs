//! Formula syntax for propositional and modal team logics.
//!
//! The surface grammar (ASCII) is parsed by [`parse`] and printed by
//! [`render`]; both are exact inverses on ASTs modulo redundant parentheses.
//! Connective precedence, high to low: unary (`~`, `<>`, `[]`, `E p.`),
//! `&`, the splitjunctions `\/` and `\/+`, then classical disjunction `||`.

mod parse;
mod print;

pub use parse::parse;
pub use print::render;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Words that the lexer claims for itself; they cannot name propositions.
pub const RESERVED_WORDS: &[&str] = &["bot", "top", "inc", "ind"];

/// A propositional letter: `[a-z][a-z0-9_]*`, not a reserved word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropName(String);

impl PropName {
    pub fn new(name: impl Into<String>) -> Result<PropName, SyntaxError> {
        let name = name.into();
        let mut chars = name.chars();
        let ok = match chars.next() {
            Some(c) if c.is_ascii_lowercase() => {
                chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
            }
            _ => false,
        };
        if !ok || RESERVED_WORDS.contains(&name.as_str()) {
            return Err(SyntaxError::BadPropName(name));
        }
        Ok(PropName(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for PropName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// AST of full team logic with team atoms and the bisimulation quantifier.
///
/// Negation exists only on propositions ([`Formula::NegProp`]); the
/// arguments of `Dep`/`Inc`/`Ind` must be classical (see
/// [`Formula::is_classical`]) and team atoms cannot nest.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Prop(PropName),
    NegProp(PropName),
    Bottom,
    Top,
    Ne,
    /// Dependence atom `=(args ; target)`; an empty argument list is the
    /// constancy atom `=( ; target)`.
    Dep { args: Vec<Formula>, target: Box<Formula> },
    /// Inclusion atom `inc(left ; right)` with `left.len() == right.len()`.
    Inc { left: Vec<Formula>, right: Vec<Formula> },
    /// Independence atom `ind(left ; right)`.
    Ind { left: Vec<Formula>, right: Vec<Formula> },
    And(Box<Formula>, Box<Formula>),
    /// Splitjunction `\/`: the team is covered by two subteams.
    Split(Box<Formula>, Box<Formula>),
    /// Nonempty splitjunction `\/+`: both cover parts nonempty unless the
    /// team itself is empty.
    NeSplit(Box<Formula>, Box<Formula>),
    /// Classical disjunction `||`.
    Or(Box<Formula>, Box<Formula>),
    Dia(Box<Formula>),
    Box(Box<Formula>),
    /// Bisimulation quantifier `E p. f`.
    Bq(PropName, Box<Formula>),
}

impl Formula {
    pub fn prop(p: PropName) -> Formula {
        Formula::Prop(p)
    }

    pub fn negprop(p: PropName) -> Formula {
        Formula::NegProp(p)
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn split(l: Formula, r: Formula) -> Formula {
        Formula::Split(Box::new(l), Box::new(r))
    }

    pub fn nesplit(l: Formula, r: Formula) -> Formula {
        Formula::NeSplit(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn dia(f: Formula) -> Formula {
        Formula::Dia(Box::new(f))
    }

    pub fn boxed(f: Formula) -> Formula {
        Formula::Box(Box::new(f))
    }

    pub fn bq(p: PropName, f: Formula) -> Formula {
        Formula::Bq(p, Box::new(f))
    }

    /// Dependence atom; every argument and the target must be classical.
    pub fn dep(args: Vec<Formula>, target: Formula) -> Result<Formula, SyntaxError> {
        for a in args.iter().chain(std::iter::once(&target)) {
            if !a.is_classical() {
                return Err(SyntaxError::NonClassicalArg);
            }
        }
        Ok(Formula::Dep { args, target: Box::new(target) })
    }

    /// Inclusion atom; sides must be classical, nonempty, equally long.
    pub fn inc(left: Vec<Formula>, right: Vec<Formula>) -> Result<Formula, SyntaxError> {
        if left.is_empty() || left.len() != right.len() {
            return Err(SyntaxError::IncArity { left: left.len(), right: right.len() });
        }
        for a in left.iter().chain(right.iter()) {
            if !a.is_classical() {
                return Err(SyntaxError::NonClassicalArg);
            }
        }
        Ok(Formula::Inc { left, right })
    }

    /// Independence atom; sides must be classical and nonempty.
    pub fn ind(left: Vec<Formula>, right: Vec<Formula>) -> Result<Formula, SyntaxError> {
        if left.is_empty() || right.is_empty() {
            return Err(SyntaxError::EmptyAtomSide);
        }
        for a in left.iter().chain(right.iter()) {
            if !a.is_classical() {
                return Err(SyntaxError::NonClassicalArg);
            }
        }
        Ok(Formula::Ind { left, right })
    }

    /// Classical formulas are the modal-logic fragment: literals, `bot`,
    /// `top`, `&`, `\/`, `<>`, `[]`. These are the only nodes allowed
    /// inside team atoms.
    pub fn is_classical(&self) -> bool {
        match self {
            Formula::Prop(_) | Formula::NegProp(_) | Formula::Bottom | Formula::Top => true,
            Formula::And(l, r) | Formula::Split(l, r) => l.is_classical() && r.is_classical(),
            Formula::Dia(f) | Formula::Box(f) => f.is_classical(),
            _ => false,
        }
    }

    /// True if no modal operator occurs anywhere, including inside atoms.
    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::Dia(_) | Formula::Box(_) => false,
            Formula::Prop(_) | Formula::NegProp(_) | Formula::Bottom | Formula::Top | Formula::Ne => true,
            Formula::Dep { args, target } => {
                args.iter().all(Formula::is_propositional) && target.is_propositional()
            }
            Formula::Inc { left, right } | Formula::Ind { left, right } => {
                left.iter().all(Formula::is_propositional) && right.iter().all(Formula::is_propositional)
            }
            Formula::And(l, r) | Formula::Split(l, r) | Formula::NeSplit(l, r) | Formula::Or(l, r) => {
                l.is_propositional() && r.is_propositional()
            }
            Formula::Bq(_, f) => f.is_propositional(),
        }
    }

    /// True if `NE` occurs anywhere; `NE`-free formulas enjoy the
    /// empty-team property.
    pub fn has_ne(&self) -> bool {
        match self {
            Formula::Ne => true,
            Formula::Prop(_) | Formula::NegProp(_) | Formula::Bottom | Formula::Top => false,
            Formula::Dep { args, target } => args.iter().any(Formula::has_ne) || target.has_ne(),
            Formula::Inc { left, right } | Formula::Ind { left, right } => {
                left.iter().any(Formula::has_ne) || right.iter().any(Formula::has_ne)
            }
            Formula::And(l, r) | Formula::Split(l, r) | Formula::NeSplit(l, r) | Formula::Or(l, r) => {
                l.has_ne() || r.has_ne()
            }
            Formula::Dia(f) | Formula::Box(f) | Formula::Bq(_, f) => f.has_ne(),
        }
    }

    pub fn has_bq(&self) -> bool {
        match self {
            Formula::Bq(_, _) => true,
            Formula::Prop(_) | Formula::NegProp(_) | Formula::Bottom | Formula::Top | Formula::Ne => false,
            Formula::Dep { args, target } => args.iter().any(Formula::has_bq) || target.has_bq(),
            Formula::Inc { left, right } | Formula::Ind { left, right } => {
                left.iter().any(Formula::has_bq) || right.iter().any(Formula::has_bq)
            }
            Formula::And(l, r) | Formula::Split(l, r) | Formula::NeSplit(l, r) | Formula::Or(l, r) => {
                l.has_bq() || r.has_bq()
            }
            Formula::Dia(f) | Formula::Box(f) => f.has_bq(),
        }
    }

    /// Maximal nesting of `<>`/`[]`; team atoms contribute the maximum
    /// depth of their classical arguments.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Prop(_) | Formula::NegProp(_) | Formula::Bottom | Formula::Top | Formula::Ne => 0,
            Formula::Dep { args, target } => args
                .iter()
                .chain(std::iter::once(&**target))
                .map(Formula::modal_depth)
                .max()
                .unwrap_or(0),
            Formula::Inc { left, right } | Formula::Ind { left, right } => left
                .iter()
                .chain(right.iter())
                .map(Formula::modal_depth)
                .max()
                .unwrap_or(0),
            Formula::And(l, r) | Formula::Split(l, r) | Formula::NeSplit(l, r) | Formula::Or(l, r) => {
                l.modal_depth().max(r.modal_depth())
            }
            Formula::Dia(f) | Formula::Box(f) => 1 + f.modal_depth(),
            Formula::Bq(_, f) => f.modal_depth(),
        }
    }

    /// The language report: free and bound propositions. For quantifier-free
    /// formulas `free()` is the full language of the formula.
    pub fn language(&self) -> Language {
        let mut lang = Language::default();
        self.collect_language(&mut lang);
        lang
    }

    fn collect_language(&self, lang: &mut Language) {
        match self {
            Formula::Prop(p) | Formula::NegProp(p) => {
                lang.free.insert(p.clone());
            }
            Formula::Bottom | Formula::Top | Formula::Ne => {}
            Formula::Dep { args, target } => {
                for a in args {
                    a.collect_language(lang);
                }
                target.collect_language(lang);
            }
            Formula::Inc { left, right } | Formula::Ind { left, right } => {
                for a in left.iter().chain(right.iter()) {
                    a.collect_language(lang);
                }
            }
            Formula::And(l, r) | Formula::Split(l, r) | Formula::NeSplit(l, r) | Formula::Or(l, r) => {
                l.collect_language(lang);
                r.collect_language(lang);
            }
            Formula::Dia(f) | Formula::Box(f) => f.collect_language(lang),
            Formula::Bq(p, f) => {
                let mut inner = Language::default();
                f.collect_language(&mut inner);
                inner.free.remove(p);
                lang.free.extend(inner.free);
                lang.bound.extend(inner.bound);
                lang.bound.insert(p.clone());
            }
        }
    }

    /// Free propositions; shorthand for `language().free`.
    pub fn free_props(&self) -> BTreeSet<PropName> {
        self.language().free
    }

    /// Classical constant substitution `f[p|top]` / `f[p|bot]` (`value`
    /// true means `top`). Applies inside team-atom arguments; occurrences
    /// bound by a quantifier are left alone.
    pub fn substitute_const(&self, p: &PropName, value: bool) -> Formula {
        match self {
            Formula::Prop(q) if q == p => {
                if value {
                    Formula::Top
                } else {
                    Formula::Bottom
                }
            }
            Formula::NegProp(q) if q == p => {
                if value {
                    Formula::Bottom
                } else {
                    Formula::Top
                }
            }
            Formula::Prop(_)
            | Formula::NegProp(_)
            | Formula::Bottom
            | Formula::Top
            | Formula::Ne => self.clone(),
            Formula::Dep { args, target } => Formula::Dep {
                args: args.iter().map(|a| a.substitute_const(p, value)).collect(),
                target: Box::new(target.substitute_const(p, value)),
            },
            Formula::Inc { left, right } => Formula::Inc {
                left: left.iter().map(|a| a.substitute_const(p, value)).collect(),
                right: right.iter().map(|a| a.substitute_const(p, value)).collect(),
            },
            Formula::Ind { left, right } => Formula::Ind {
                left: left.iter().map(|a| a.substitute_const(p, value)).collect(),
                right: right.iter().map(|a| a.substitute_const(p, value)).collect(),
            },
            Formula::And(l, r) => {
                Formula::and(l.substitute_const(p, value), r.substitute_const(p, value))
            }
            Formula::Split(l, r) => {
                Formula::split(l.substitute_const(p, value), r.substitute_const(p, value))
            }
            Formula::NeSplit(l, r) => {
                Formula::nesplit(l.substitute_const(p, value), r.substitute_const(p, value))
            }
            Formula::Or(l, r) => {
                Formula::or(l.substitute_const(p, value), r.substitute_const(p, value))
            }
            Formula::Dia(f) => Formula::dia(f.substitute_const(p, value)),
            Formula::Box(f) => Formula::boxed(f.substitute_const(p, value)),
            Formula::Bq(q, _) if q == p => self.clone(),
            Formula::Bq(q, f) => Formula::bq(q.clone(), f.substitute_const(p, value)),
        }
    }

    /// Least fragment row covering the formula's node kinds.
    pub fn classify(&self) -> Fragment {
        let mut feat = Features::default();
        self.collect_features(&mut feat);
        feat.fragment()
    }

    fn collect_features(&self, feat: &mut Features) {
        match self {
            Formula::Prop(_) | Formula::NegProp(_) | Formula::Bottom | Formula::Top => {}
            Formula::Ne => feat.ne = true,
            Formula::Dep { args, target } => {
                feat.dep = true;
                for a in args.iter().chain(std::iter::once(&**target)) {
                    a.collect_features(feat);
                }
            }
            Formula::Inc { left, right } => {
                feat.inc = true;
                for a in left.iter().chain(right.iter()) {
                    a.collect_features(feat);
                }
            }
            Formula::Ind { left, right } => {
                feat.ind = true;
                for a in left.iter().chain(right.iter()) {
                    a.collect_features(feat);
                }
            }
            Formula::And(l, r) | Formula::Split(l, r) => {
                l.collect_features(feat);
                r.collect_features(feat);
            }
            Formula::NeSplit(l, r) => {
                feat.nesplit = true;
                l.collect_features(feat);
                r.collect_features(feat);
            }
            Formula::Or(l, r) => {
                feat.or = true;
                l.collect_features(feat);
                r.collect_features(feat);
            }
            Formula::Dia(f) | Formula::Box(f) => {
                feat.modal = true;
                f.collect_features(feat);
            }
            Formula::Bq(_, f) => {
                feat.bq = true;
                f.collect_features(feat);
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

/// Free and bound propositions of a formula. `bound` collects quantified
/// variables; for quantifier-free formulas it is empty.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Language {
    pub free: BTreeSet<PropName>,
    pub bound: BTreeSet<PropName>,
}

impl Language {
    /// Every proposition occurring in the formula, bound or free.
    pub fn all(&self) -> BTreeSet<PropName> {
        self.free.union(&self.bound).cloned().collect()
    }
}

#[derive(Debug, Default)]
struct Features {
    dep: bool,
    inc: bool,
    ind: bool,
    ne: bool,
    or: bool,
    nesplit: bool,
    modal: bool,
    bq: bool,
}

impl Features {
    fn fragment(&self) -> Fragment {
        // Row order of the fragment table; the nonempty splitjunction is
        // attributed to the full logics only.
        let full_conn = self.ne || self.or || self.nesplit;
        if self.bq {
            return Fragment::Ext;
        }
        if !self.modal {
            if !full_conn {
                match (self.dep, self.inc, self.ind) {
                    (false, false, false) => return Fragment::Cpl,
                    (true, false, false) => return Fragment::Pdep,
                    (false, true, false) => return Fragment::Pinc,
                    (false, false, true) => return Fragment::Pind,
                    _ => return Fragment::Ext,
                }
            }
            if !self.dep && !self.inc && !self.ind {
                return Fragment::Fptl;
            }
            return Fragment::Ext;
        }
        if !full_conn {
            match (self.dep, self.inc, self.ind) {
                (false, false, false) => return Fragment::Ml,
                (true, false, false) => return Fragment::Mdep,
                (false, true, false) => return Fragment::Minc,
                (false, false, true) => return Fragment::Mind,
                _ => return Fragment::Ext,
            }
        }
        if !self.dep && !self.inc && !self.ind {
            return Fragment::Fmtl;
        }
        Fragment::Ext
    }
}

/// Team-logic fragments, ordered as in the fragment table. `Ext` covers
/// anything outside the table: quantified formulas and mixed-atom formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fragment {
    Cpl,
    Pdep,
    Pinc,
    Pind,
    Fptl,
    Ml,
    Mdep,
    Minc,
    Mind,
    Fmtl,
    Ext,
}

impl Fragment {
    pub fn name(&self) -> &'static str {
        match self {
            Fragment::Cpl => "CPL",
            Fragment::Pdep => "PDEP",
            Fragment::Pinc => "PINC",
            Fragment::Pind => "PIND",
            Fragment::Fptl => "FPTL",
            Fragment::Ml => "ML",
            Fragment::Mdep => "MDEP",
            Fragment::Minc => "MINC",
            Fragment::Mind => "MIND",
            Fragment::Fmtl => "FMTL",
            Fragment::Ext => "EXT",
        }
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Position of a parse error, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourcePos {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for SourcePos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("{pos}: unexpected character '{ch}'")]
    UnexpectedChar { pos: SourcePos, ch: char },
    #[error("{pos}: expected {expected}, found {found}")]
    UnexpectedToken { pos: SourcePos, expected: String, found: String },
    #[error("unexpected end of input: expected {expected}")]
    UnexpectedEnd { expected: String },
    #[error("inclusion atom arity mismatch: {left} argument(s) vs {right}")]
    IncArity { left: usize, right: usize },
    #[error("team atom nested inside a team atom")]
    NestedTeamAtom,
    #[error("team atom arguments must be classical formulas")]
    NonClassicalArg,
    #[error("team atom side must not be empty")]
    EmptyAtomSide,
    #[error("invalid proposition name '{0}'")]
    BadPropName(String),
}
