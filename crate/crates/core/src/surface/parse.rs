use std::fmt;
use std::rc::Rc;

use super::{Builtin, Declaration, Module, SourceTerm, Span, TermKind};

/// Nesting bound that keeps the recursive-descent parser off the end of the
/// stack on adversarial input.
const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub span: Span,
    pub expected: Vec<String>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Number(u64),
    Backslash,
    Dot,
    LParen,
    RParen,
    Colon,
    Arrow,
    Equals,
    Semi,
    Let,
    In,
    Eof,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(name) => format!("identifier `{name}`"),
            Token::Number(n) => format!("number `{n}`"),
            Token::Backslash => "`\\`".into(),
            Token::Dot => "`.`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::Colon => "`:`".into(),
            Token::Arrow => "`->`".into(),
            Token::Equals => "`=`".into(),
            Token::Semi => "`;`".into(),
            Token::Let => "`let`".into(),
            Token::In => "`in`".into(),
            Token::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Token, Span)>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        let start = pos;
        let single = |tok| (tok, Span::new(start, start + 1));
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => pos += 1,
            b'-' if bytes.get(pos + 1) == Some(&b'-') => {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
            }
            b'-' if bytes.get(pos + 1) == Some(&b'>') => {
                tokens.push((Token::Arrow, Span::new(start, start + 2)));
                pos += 2;
            }
            b'\\' => {
                tokens.push(single(Token::Backslash));
                pos += 1;
            }
            b'.' => {
                tokens.push(single(Token::Dot));
                pos += 1;
            }
            b'(' => {
                tokens.push(single(Token::LParen));
                pos += 1;
            }
            b')' => {
                tokens.push(single(Token::RParen));
                pos += 1;
            }
            b':' => {
                tokens.push(single(Token::Colon));
                pos += 1;
            }
            b'=' => {
                tokens.push(single(Token::Equals));
                pos += 1;
            }
            b';' => {
                tokens.push(single(Token::Semi));
                pos += 1;
            }
            b'0'..=b'9' => {
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits = &text[start..pos];
                let n = digits.parse::<u64>().map_err(|_| ParseError {
                    span: Span::new(start, pos),
                    expected: Vec::new(),
                    message: format!("numeric literal `{digits}` is too large"),
                })?;
                tokens.push((Token::Number(n), Span::new(start, pos)));
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while pos < bytes.len()
                    && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_' || bytes[pos] == b'\'')
                {
                    pos += 1;
                }
                let word = &text[start..pos];
                let tok = match word {
                    "let" => Token::Let,
                    "in" => Token::In,
                    _ => Token::Ident(word.to_owned()),
                };
                tokens.push((tok, Span::new(start, pos)));
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    span: Span::new(start, start + ch.len_utf8()),
                    expected: Vec::new(),
                    message: format!("unexpected character `{}`", ch.escape_default()),
                });
            }
        }
    }
    tokens.push((Token::Eof, Span::new(text.len(), text.len())));
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Token, Span)>,
    pos: usize,
    depth: usize,
}

type Result<T> = std::result::Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn peek_at(&self, offset: usize) -> &Token {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i].0
    }

    fn span(&self) -> Span {
        self.tokens[self.pos].1
    }

    fn prev_end(&self) -> usize {
        if self.pos == 0 {
            0
        } else {
            self.tokens[self.pos - 1].1.end
        }
    }

    fn bump(&mut self) -> (Token, Span) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> Result<T> {
        Err(ParseError {
            span: self.span(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            message: format!("unexpected {}", self.peek().describe()),
        })
    }

    fn expect(&mut self, tok: Token, name: &str) -> Result<Span> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            self.error(&[name])
        }
    }

    fn ident(&mut self) -> Result<(String, Span)> {
        match self.peek().clone() {
            Token::Ident(name) if Builtin::from_name(&name).is_none() => {
                let span = self.bump().1;
                Ok((name, span))
            }
            _ => self.error(&["identifier"]),
        }
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError {
                span: self.span(),
                expected: Vec::new(),
                message: "term nested too deeply".into(),
            });
        }
        Ok(())
    }

    fn module(&mut self) -> Result<Module> {
        let mut module = Module::default();
        while *self.peek() != Token::Eof {
            let (name, name_span) = self.ident()?;
            if module.declarations.iter().any(|d| d.name == name) {
                return Err(ParseError {
                    span: name_span,
                    expected: Vec::new(),
                    message: format!("duplicate declaration `{name}`"),
                });
            }
            let annotation = if *self.peek() == Token::Colon {
                self.bump();
                Some(self.term()?)
            } else {
                None
            };
            // `name : T; name = body;` is a signature followed by its definition
            if annotation.is_some() && *self.peek() == Token::Semi {
                self.bump();
                match self.peek().clone() {
                    Token::Ident(next) if next == name => {
                        self.bump();
                    }
                    _ => return self.error(&[&format!("definition of `{name}`")]),
                }
            }
            self.expect(Token::Equals, "`=`")?;
            let body = self.term()?;
            self.expect(Token::Semi, "`;`")?;
            module.declarations.push(Declaration {
                name,
                name_span,
                annotation,
                body,
            });
        }
        Ok(module)
    }

    fn term(&mut self) -> Result<SourceTerm> {
        self.enter()?;
        let result = self.term_inner();
        self.depth -= 1;
        result
    }

    fn term_inner(&mut self) -> Result<SourceTerm> {
        let start = self.span().start;
        match self.peek() {
            Token::Backslash => {
                self.bump();
                let mut binders = vec![self.ident()?];
                while let Token::Ident(_) = self.peek() {
                    binders.push(self.ident()?);
                }
                self.expect(Token::Dot, "`.`")?;
                let body = self.term()?;
                let end = body.span.end;
                Ok(binders.into_iter().rev().fold(body, |acc, (name, _)| {
                    SourceTerm::new(Span::new(start, end), TermKind::Lambda(name, Rc::new(acc)))
                }))
            }
            Token::Let => {
                self.bump();
                let (name, _) = self.ident()?;
                self.expect(Token::Equals, "`=`")?;
                let def = self.term()?;
                self.expect(Token::In, "`in`")?;
                let body = self.term()?;
                let span = Span::new(start, body.span.end);
                Ok(SourceTerm::new(span, TermKind::Let(name, Rc::new(def), Rc::new(body))))
            }
            _ => self.arrow(),
        }
    }

    /// Whether the upcoming tokens read `( ident+ :`, the opening of a
    /// binder group (or of an annotated variable, decided after `)`).
    fn at_binder_group(&self) -> bool {
        if *self.peek() != Token::LParen {
            return false;
        }
        let mut i = 1;
        while let Token::Ident(name) = self.peek_at(i) {
            if Builtin::from_name(name).is_some() {
                return false;
            }
            i += 1;
        }
        i > 1 && *self.peek_at(i) == Token::Colon
    }

    fn arrow(&mut self) -> Result<SourceTerm> {
        let start = self.span().start;
        if self.at_binder_group() {
            let mut groups: Vec<(Vec<(String, Span)>, SourceTerm, Span)> = Vec::new();
            while self.at_binder_group() {
                let open = self.bump().1;
                let mut names = Vec::new();
                while let Token::Ident(_) = self.peek() {
                    names.push(self.ident()?);
                }
                self.expect(Token::Colon, "`:`")?;
                let ty = self.term()?;
                let close = self.expect(Token::RParen, "`)`")?;
                groups.push((names, ty, open.merge(close)));
            }
            if *self.peek() == Token::Arrow {
                self.bump();
                let cod = self.term()?;
                let end = cod.span.end;
                let mut acc = cod;
                for (names, ty, _) in groups.into_iter().rev() {
                    let ty = Rc::new(ty);
                    for (name, _) in names.into_iter().rev() {
                        acc = SourceTerm::new(
                            Span::new(start, end),
                            TermKind::Pi(name, ty.clone(), Rc::new(acc)),
                        );
                    }
                }
                return Ok(acc);
            }
            // Not a telescope: each group was an annotation `(e : A)` whose
            // subject is a variable application; continue as an application.
            let mut atoms: Vec<SourceTerm> = groups
                .into_iter()
                .map(|(names, ty, span)| {
                    let subject = names
                        .into_iter()
                        .map(|(n, s)| SourceTerm::new(s, TermKind::Var(n)))
                        .reduce(|f, a| {
                            SourceTerm::new(f.span.merge(a.span), TermKind::App(Rc::new(f), Rc::new(a)))
                        })
                        .expect("binder group has at least one name");
                    SourceTerm::new(span, TermKind::Annotation(Rc::new(subject), Rc::new(ty)))
                })
                .collect();
            while let Some(atom) = self.atom()? {
                atoms.push(atom);
            }
            let app = fold_app(atoms);
            return self.arrow_tail(app);
        }
        let mut atoms = Vec::new();
        while let Some(atom) = self.atom()? {
            atoms.push(atom);
        }
        if atoms.is_empty() {
            return self.error(&["term"]);
        }
        let app = fold_app(atoms);
        self.arrow_tail(app)
    }

    fn arrow_tail(&mut self, dom: SourceTerm) -> Result<SourceTerm> {
        if *self.peek() == Token::Arrow {
            self.bump();
            let cod = self.term()?;
            let span = dom.span.merge(cod.span);
            Ok(SourceTerm::new(span, TermKind::Pi("_".into(), Rc::new(dom), Rc::new(cod))))
        } else {
            Ok(dom)
        }
    }

    fn atom(&mut self) -> Result<Option<SourceTerm>> {
        let span = self.span();
        match self.peek().clone() {
            Token::Ident(name) => {
                self.bump();
                let kind = match Builtin::from_name(&name) {
                    Some(b) => TermKind::Builtin(b),
                    None => TermKind::Var(name),
                };
                Ok(Some(SourceTerm::new(span, kind)))
            }
            Token::Number(n) => {
                self.bump();
                Ok(Some(SourceTerm::new(span, TermKind::Literal(n))))
            }
            Token::LParen => {
                self.enter()?;
                self.bump();
                let inner = self.term()?;
                let result = if *self.peek() == Token::Colon {
                    self.bump();
                    let ty = self.term()?;
                    self.expect(Token::RParen, "`)`")?;
                    SourceTerm::new(
                        Span::new(span.start, self.prev_end()),
                        TermKind::Annotation(Rc::new(inner), Rc::new(ty)),
                    )
                } else {
                    self.expect(Token::RParen, "`)`")?;
                    SourceTerm { span: Span::new(span.start, self.prev_end()), ..inner }
                };
                self.depth -= 1;
                Ok(Some(result))
            }
            // a trailing lambda or let may end an application: `f \x. x`
            Token::Backslash | Token::Let => {
                let t = self.term()?;
                Ok(Some(t))
            }
            _ => Ok(None),
        }
    }
}

fn fold_app(atoms: Vec<SourceTerm>) -> SourceTerm {
    atoms
        .into_iter()
        .reduce(|f, a| SourceTerm::new(f.span.merge(a.span), TermKind::App(Rc::new(f), Rc::new(a))))
        .expect("non-empty application")
}

/// Parses a whole module.
pub fn parse(text: &str) -> std::result::Result<Module, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        depth: 0,
    };
    parser.module()
}

/// Parses a single term, used by tests and the pretty-printer round trip.
pub fn parse_term(text: &str) -> std::result::Result<SourceTerm, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        depth: 0,
    };
    let t = parser.term()?;
    if *parser.peek() != Token::Eof {
        return parser.error(&["end of input"]);
    }
    Ok(t)
}
