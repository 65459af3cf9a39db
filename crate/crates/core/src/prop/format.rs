//! Text formats: a team is `{p=1 q=1; p=0 q=1}` (empty team `{}`, the
//! empty valuation `-`); a team property file is a `props: ...` header
//! followed by one team per line, with `#` comments.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use super::{Team, TeamProperty, Valuation};
use crate::syntax::PropName;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TeamFormatError {
    #[error("a team is written inside braces, like {{p=1 q=0; p=0 q=0}}")]
    Braces,
    #[error("bad entry '{0}': expected prop=0 or prop=1")]
    BadEntry(String),
    #[error("invalid proposition name '{0}'")]
    BadProp(String),
    #[error("duplicate proposition '{0}' in a member")]
    DuplicateProp(String),
    #[error("all members of a team must assign the same propositions")]
    MixedDomains,
    #[error("team does not match the declared domain")]
    WrongDomain,
    #[error("missing 'props:' header")]
    MissingHeader,
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<TeamFormatError>,
    },
}

fn parse_member(text: &str) -> Result<Valuation, TeamFormatError> {
    let text = text.trim();
    if text == "-" {
        return Ok(Valuation::default());
    }
    let mut bits = BTreeMap::new();
    for entry in text.split_whitespace() {
        let (name, value) = entry
            .split_once('=')
            .ok_or_else(|| TeamFormatError::BadEntry(entry.to_string()))?;
        let value = match value {
            "0" => false,
            "1" => true,
            _ => return Err(TeamFormatError::BadEntry(entry.to_string())),
        };
        let prop =
            PropName::new(name).map_err(|_| TeamFormatError::BadProp(name.to_string()))?;
        if bits.insert(prop, value).is_some() {
            return Err(TeamFormatError::DuplicateProp(name.to_string()));
        }
    }
    Ok(Valuation::new(bits))
}

impl Team {
    /// Parses the inline team format. The domain is read off the members;
    /// `{}` is the empty team over the empty domain (widen it with
    /// [`Team::extend_domain`] when a larger domain is intended).
    pub fn parse(text: &str) -> Result<Team, TeamFormatError> {
        let text = text.trim();
        let inner = text
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or(TeamFormatError::Braces)?;
        if inner.trim().is_empty() {
            return Ok(Team::empty(BTreeSet::new()));
        }
        let members = inner
            .split(';')
            .map(parse_member)
            .collect::<Result<Vec<_>, _>>()?;
        let domain: BTreeSet<PropName> = members[0].domain().cloned().collect();
        Team::new(domain, members).map_err(|_| TeamFormatError::MixedDomains)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, v) in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{}={}", p, u8::from(v))?;
            first = false;
        }
        if first {
            f.write_str("-")?;
        }
        Ok(())
    }
}

impl fmt::Display for Team {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for s in self.members() {
            if !first {
                f.write_str("; ")?;
            }
            write!(f, "{s}")?;
            first = false;
        }
        f.write_str("}")
    }
}

impl TeamProperty {
    /// Parses the line format: a `props:` header, then one team per line.
    pub fn parse(text: &str) -> Result<TeamProperty, TeamFormatError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (_, header) = lines.next().ok_or(TeamFormatError::MissingHeader)?;
        let names = header
            .strip_prefix("props:")
            .ok_or(TeamFormatError::MissingHeader)?;
        let mut domain = BTreeSet::new();
        for name in names.split_whitespace() {
            domain.insert(
                PropName::new(name).map_err(|_| TeamFormatError::BadProp(name.to_string()))?,
            );
        }
        let mut teams = Vec::new();
        for (line, l) in lines {
            let at = |source| TeamFormatError::AtLine { line, source: Box::new(source) };
            let team = Team::parse(l).map_err(&at)?;
            let team = if team.is_empty() {
                Team::empty(domain.clone())
            } else if team.domain() == &domain {
                team
            } else {
                return Err(at(TeamFormatError::WrongDomain));
            };
            teams.push(team);
        }
        TeamProperty::new(domain, teams).map_err(|_| TeamFormatError::WrongDomain)
    }
}

impl fmt::Display for TeamProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("props:")?;
        for p in self.domain() {
            write!(f, " {p}")?;
        }
        f.write_str("\n")?;
        for t in self.teams() {
            writeln!(f, "{t}")?;
        }
        Ok(())
    }
}
