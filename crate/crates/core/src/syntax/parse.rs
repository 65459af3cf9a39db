//! Recursive-descent parser for the surface grammar.

use super::{Formula, PropName, SourcePos, SyntaxError};

/// Parse a formula from text. Errors carry a line/column position.
pub fn parse(text: &str) -> Result<Formula, SyntaxError> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, at: 0 };
    let f = parser.formula()?;
    parser.expect_end()?;
    Ok(f)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Bot,
    Top,
    Ne,
    Quant,
    IncKw,
    IndKw,
    DepOpen, // `=` introducing a dependence atom
    Amp,
    Split,
    NeSplit,
    Or,
    Dia,
    BoxOp,
    Tilde,
    LParen,
    RParen,
    Semi,
    Comma,
    Dot,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Bot => "'bot'".into(),
            Tok::Top => "'top'".into(),
            Tok::Ne => "'NE'".into(),
            Tok::Quant => "'E'".into(),
            Tok::IncKw => "'inc'".into(),
            Tok::IndKw => "'ind'".into(),
            Tok::DepOpen => "'='".into(),
            Tok::Amp => "'&'".into(),
            Tok::Split => "'\\/'".into(),
            Tok::NeSplit => "'\\/+'".into(),
            Tok::Or => "'||'".into(),
            Tok::Dia => "'<>'".into(),
            Tok::BoxOp => "'[]'".into(),
            Tok::Tilde => "'~'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Semi => "';'".into(),
            Tok::Comma => "','".into(),
            Tok::Dot => "'.'".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, SourcePos)>, SyntaxError> {
    let mut out = Vec::new();
    let mut line: u32 = 1;
    let mut col: u32 = 1;
    let mut it = text.chars().peekable();
    while let Some(&c) = it.peek() {
        let pos = SourcePos { line, col };
        let bump = |it: &mut std::iter::Peekable<std::str::Chars>, line: &mut u32, col: &mut u32| {
            let c = it.next().unwrap();
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            c
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump(&mut it, &mut line, &mut col);
            }
            '(' => {
                bump(&mut it, &mut line, &mut col);
                out.push((Tok::LParen, pos));
            }
            ')' => {
                bump(&mut it, &mut line, &mut col);
                out.push((Tok::RParen, pos));
            }
            ';' => {
                bump(&mut it, &mut line, &mut col);
                out.push((Tok::Semi, pos));
            }
            ',' => {
                bump(&mut it, &mut line, &mut col);
                out.push((Tok::Comma, pos));
            }
            '.' => {
                bump(&mut it, &mut line, &mut col);
                out.push((Tok::Dot, pos));
            }
            '~' => {
                bump(&mut it, &mut line, &mut col);
                out.push((Tok::Tilde, pos));
            }
            '&' => {
                bump(&mut it, &mut line, &mut col);
                out.push((Tok::Amp, pos));
            }
            '=' => {
                bump(&mut it, &mut line, &mut col);
                out.push((Tok::DepOpen, pos));
            }
            '\\' => {
                bump(&mut it, &mut line, &mut col);
                if it.peek() == Some(&'/') {
                    bump(&mut it, &mut line, &mut col);
                    if it.peek() == Some(&'+') {
                        bump(&mut it, &mut line, &mut col);
                        out.push((Tok::NeSplit, pos));
                    } else {
                        out.push((Tok::Split, pos));
                    }
                } else {
                    return Err(SyntaxError::UnexpectedChar { pos, ch: '\\' });
                }
            }
            '|' => {
                bump(&mut it, &mut line, &mut col);
                if it.peek() == Some(&'|') {
                    bump(&mut it, &mut line, &mut col);
                    out.push((Tok::Or, pos));
                } else {
                    return Err(SyntaxError::UnexpectedChar { pos, ch: '|' });
                }
            }
            '<' => {
                bump(&mut it, &mut line, &mut col);
                if it.peek() == Some(&'>') {
                    bump(&mut it, &mut line, &mut col);
                    out.push((Tok::Dia, pos));
                } else {
                    return Err(SyntaxError::UnexpectedChar { pos, ch: '<' });
                }
            }
            '[' => {
                bump(&mut it, &mut line, &mut col);
                if it.peek() == Some(&']') {
                    bump(&mut it, &mut line, &mut col);
                    out.push((Tok::BoxOp, pos));
                } else {
                    return Err(SyntaxError::UnexpectedChar { pos, ch: '[' });
                }
            }
            c if c.is_ascii_lowercase() => {
                let mut word = String::new();
                while let Some(&c) = it.peek() {
                    if c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' {
                        word.push(bump(&mut it, &mut line, &mut col));
                    } else {
                        break;
                    }
                }
                let tok = match word.as_str() {
                    "bot" => Tok::Bot,
                    "top" => Tok::Top,
                    "inc" => Tok::IncKw,
                    "ind" => Tok::IndKw,
                    _ => Tok::Ident(word),
                };
                out.push((tok, pos));
            }
            c if c.is_ascii_uppercase() => {
                let mut word = String::new();
                while let Some(&c) = it.peek() {
                    if c.is_ascii_uppercase() {
                        word.push(bump(&mut it, &mut line, &mut col));
                    } else {
                        break;
                    }
                }
                match word.as_str() {
                    "NE" => out.push((Tok::Ne, pos)),
                    "E" => out.push((Tok::Quant, pos)),
                    _ => {
                        return Err(SyntaxError::UnexpectedToken {
                            pos,
                            expected: "'NE' or 'E'".into(),
                            found: format!("'{word}'"),
                        })
                    }
                }
            }
            other => return Err(SyntaxError::UnexpectedChar { pos, ch: other }),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Tok, SourcePos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.at).map(|(t, _)| t)
    }

    fn next(&mut self, expected: &str) -> Result<(Tok, SourcePos), SyntaxError> {
        match self.tokens.get(self.at) {
            Some((t, p)) => {
                self.at += 1;
                Ok((t.clone(), *p))
            }
            None => Err(SyntaxError::UnexpectedEnd { expected: expected.into() }),
        }
    }

    fn expect(&mut self, want: Tok, expected: &str) -> Result<SourcePos, SyntaxError> {
        let (t, p) = self.next(expected)?;
        if t == want {
            Ok(p)
        } else {
            Err(SyntaxError::UnexpectedToken {
                pos: p,
                expected: expected.into(),
                found: t.describe(),
            })
        }
    }

    fn expect_end(&mut self) -> Result<(), SyntaxError> {
        match self.tokens.get(self.at) {
            None => Ok(()),
            Some((t, p)) => Err(SyntaxError::UnexpectedToken {
                pos: *p,
                expected: "end of input".into(),
                found: t.describe(),
            }),
        }
    }

    fn prop_name(&mut self) -> Result<PropName, SyntaxError> {
        let (t, p) = self.next("a proposition name")?;
        match t {
            Tok::Ident(s) => PropName::new(s),
            other => Err(SyntaxError::UnexpectedToken {
                pos: p,
                expected: "a proposition name".into(),
                found: other.describe(),
            }),
        }
    }

    // formula := split ('||' split)*
    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        let mut f = self.split_level()?;
        while self.peek() == Some(&Tok::Or) {
            self.at += 1;
            let r = self.split_level()?;
            f = Formula::or(f, r);
        }
        Ok(f)
    }

    // split := conj (('\/' | '\/+') conj)*
    fn split_level(&mut self) -> Result<Formula, SyntaxError> {
        let mut f = self.conj()?;
        loop {
            match self.peek() {
                Some(&Tok::Split) => {
                    self.at += 1;
                    let r = self.conj()?;
                    f = Formula::split(f, r);
                }
                Some(&Tok::NeSplit) => {
                    self.at += 1;
                    let r = self.conj()?;
                    f = Formula::nesplit(f, r);
                }
                _ => return Ok(f),
            }
        }
    }

    // conj := unary ('&' unary)*
    fn conj(&mut self) -> Result<Formula, SyntaxError> {
        let mut f = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.at += 1;
            let r = self.unary()?;
            f = Formula::and(f, r);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Some(&Tok::Tilde) => {
                self.at += 1;
                Ok(Formula::negprop(self.prop_name()?))
            }
            Some(&Tok::Dia) => {
                self.at += 1;
                Ok(Formula::dia(self.unary()?))
            }
            Some(&Tok::BoxOp) => {
                self.at += 1;
                Ok(Formula::boxed(self.unary()?))
            }
            Some(&Tok::Quant) => {
                self.at += 1;
                let p = self.prop_name()?;
                self.expect(Tok::Dot, "'.' after the quantified proposition")?;
                Ok(Formula::bq(p, self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, SyntaxError> {
        let (t, p) = self.next("a formula")?;
        match t {
            Tok::Ident(s) => Ok(Formula::prop(PropName::new(s)?)),
            Tok::Bot => Ok(Formula::Bottom),
            Tok::Top => Ok(Formula::Top),
            Tok::Ne => Ok(Formula::Ne),
            Tok::LParen => {
                let f = self.formula()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(f)
            }
            Tok::DepOpen => {
                self.expect(Tok::LParen, "'(' after '='")?;
                let args = self.classical_list(true)?;
                self.expect(Tok::Semi, "';' separating arguments from the target")?;
                let target = self.classical()?;
                self.expect(Tok::RParen, "')'")?;
                Formula::dep(args, target)
            }
            Tok::IncKw => {
                self.expect(Tok::LParen, "'(' after 'inc'")?;
                let left = self.classical_list(false)?;
                self.expect(Tok::Semi, "';' separating the two sides")?;
                let right = self.classical_list(false)?;
                self.expect(Tok::RParen, "')'")?;
                Formula::inc(left, right)
            }
            Tok::IndKw => {
                self.expect(Tok::LParen, "'(' after 'ind'")?;
                let left = self.classical_list(false)?;
                self.expect(Tok::Semi, "';' separating the two sides")?;
                let right = self.classical_list(false)?;
                self.expect(Tok::RParen, "')'")?;
                Formula::ind(left, right)
            }
            other => Err(SyntaxError::UnexpectedToken {
                pos: p,
                expected: "a formula".into(),
                found: other.describe(),
            }),
        }
    }

    fn classical_list(&mut self, allow_empty: bool) -> Result<Vec<Formula>, SyntaxError> {
        if allow_empty && self.peek() == Some(&Tok::Semi) {
            return Ok(Vec::new());
        }
        let mut out = vec![self.classical()?];
        while self.peek() == Some(&Tok::Comma) {
            self.at += 1;
            out.push(self.classical()?);
        }
        Ok(out)
    }

    // Restricted grammar for team-atom arguments: literals, bot, top,
    // '&', '\/', '<>', '[]' and parentheses only.
    fn classical(&mut self) -> Result<Formula, SyntaxError> {
        let mut f = self.classical_conj()?;
        while self.peek() == Some(&Tok::Split) {
            self.at += 1;
            let r = self.classical_conj()?;
            f = Formula::split(f, r);
        }
        if matches!(self.peek(), Some(&Tok::NeSplit) | Some(&Tok::Or)) {
            return Err(SyntaxError::NonClassicalArg);
        }
        Ok(f)
    }

    fn classical_conj(&mut self) -> Result<Formula, SyntaxError> {
        let mut f = self.classical_unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.at += 1;
            let r = self.classical_unary()?;
            f = Formula::and(f, r);
        }
        Ok(f)
    }

    fn classical_unary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Some(&Tok::Tilde) => {
                self.at += 1;
                Ok(Formula::negprop(self.prop_name()?))
            }
            Some(&Tok::Dia) => {
                self.at += 1;
                Ok(Formula::dia(self.classical_unary()?))
            }
            Some(&Tok::BoxOp) => {
                self.at += 1;
                Ok(Formula::boxed(self.classical_unary()?))
            }
            _ => self.classical_atom(),
        }
    }

    fn classical_atom(&mut self) -> Result<Formula, SyntaxError> {
        let (t, p) = self.next("a classical formula")?;
        match t {
            Tok::Ident(s) => Ok(Formula::prop(PropName::new(s)?)),
            Tok::Bot => Ok(Formula::Bottom),
            Tok::Top => Ok(Formula::Top),
            Tok::LParen => {
                let f = self.classical()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(f)
            }
            Tok::DepOpen | Tok::IncKw | Tok::IndKw => Err(SyntaxError::NestedTeamAtom),
            Tok::Ne | Tok::Quant => Err(SyntaxError::NonClassicalArg),
            other => Err(SyntaxError::UnexpectedToken {
                pos: p,
                expected: "a classical formula".into(),
                found: other.describe(),
            }),
        }
    }
}
