//! The human-facing language: named binders, builtins, spans.

mod parse;
mod pretty;

pub use parse::{parse, parse_term, ParseError};
pub use pretty::{pretty_module, pretty_term};

use std::fmt;
use std::rc::Rc;

/// Byte range into the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Span {
        Span { start, end }
    }

    pub fn merge(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

/// Reserved words with built-in meaning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    U,
    Lift,
    Coerce,
    Bool,
    True,
    False,
    If,
    Nat,
    Zero,
    Suc,
    NatElim,
    Empty,
    Exfalso,
    Unit,
    Tt,
    Lvl,
    Lt,
    LZero,
    LSuc,
    LOmega,
    LtDec,
    LtFinOmega,
    LtSucSelf,
    LtTrans,
    LSup,
    LvlElim,
}

impl Builtin {
    pub const ALL: [Builtin; 26] = [
        Builtin::U,
        Builtin::Lift,
        Builtin::Coerce,
        Builtin::Bool,
        Builtin::True,
        Builtin::False,
        Builtin::If,
        Builtin::Nat,
        Builtin::Zero,
        Builtin::Suc,
        Builtin::NatElim,
        Builtin::Empty,
        Builtin::Exfalso,
        Builtin::Unit,
        Builtin::Tt,
        Builtin::Lvl,
        Builtin::Lt,
        Builtin::LZero,
        Builtin::LSuc,
        Builtin::LOmega,
        Builtin::LtDec,
        Builtin::LtFinOmega,
        Builtin::LtSucSelf,
        Builtin::LtTrans,
        Builtin::LSup,
        Builtin::LvlElim,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::U => "U",
            Builtin::Lift => "Lift",
            Builtin::Coerce => "coerce",
            Builtin::Bool => "Bool",
            Builtin::True => "true",
            Builtin::False => "false",
            Builtin::If => "if",
            Builtin::Nat => "Nat",
            Builtin::Zero => "zero",
            Builtin::Suc => "suc",
            Builtin::NatElim => "natElim",
            Builtin::Empty => "Empty",
            Builtin::Exfalso => "exfalso",
            Builtin::Unit => "Unit",
            Builtin::Tt => "tt",
            Builtin::Lvl => "Lvl",
            Builtin::Lt => "Lt",
            Builtin::LZero => "lzero",
            Builtin::LSuc => "lsuc",
            Builtin::LOmega => "lomega",
            Builtin::LtDec => "ltDec",
            Builtin::LtFinOmega => "ltFinOmega",
            Builtin::LtSucSelf => "ltSucSelf",
            Builtin::LtTrans => "ltTrans",
            Builtin::LSup => "lsup",
            Builtin::LvlElim => "lvlElim",
        }
    }

    pub fn from_name(name: &str) -> Option<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == name)
    }

    /// Builtins that denote type formers; everything else is a term former
    /// or eliminator.
    pub fn is_type_former(self) -> bool {
        matches!(
            self,
            Builtin::U
                | Builtin::Lift
                | Builtin::Bool
                | Builtin::Nat
                | Builtin::Empty
                | Builtin::Unit
                | Builtin::Lvl
                | Builtin::Lt
        )
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct SourceTerm {
    pub span: Span,
    pub kind: TermKind,
}

#[derive(Debug, Clone)]
pub enum TermKind {
    Var(String),
    Lambda(String, Rc<SourceTerm>),
    App(Rc<SourceTerm>, Rc<SourceTerm>),
    /// `(x : A) -> B`; the non-dependent arrow uses the binder name `_`.
    Pi(String, Rc<SourceTerm>, Rc<SourceTerm>),
    Let(String, Rc<SourceTerm>, Rc<SourceTerm>),
    Literal(u64),
    Builtin(Builtin),
    Annotation(Rc<SourceTerm>, Rc<SourceTerm>),
}

impl SourceTerm {
    pub fn new(span: Span, kind: TermKind) -> SourceTerm {
        SourceTerm { span, kind }
    }

    /// Splits an application spine into its head and arguments.
    pub fn spine(&self) -> (&SourceTerm, Vec<&SourceTerm>) {
        let mut args = Vec::new();
        let mut head = self;
        while let TermKind::App(f, a) = &head.kind {
            args.push(a.as_ref());
            head = f.as_ref();
        }
        args.reverse();
        (head, args)
    }

    /// Structural equality up to spans and renaming of bound variables.
    pub fn alpha_eq(&self, other: &SourceTerm) -> bool {
        fn go<'a>(
            a: &'a SourceTerm,
            b: &'a SourceTerm,
            env: &mut Vec<(&'a str, &'a str)>,
        ) -> bool {
            use TermKind::*;
            match (&a.kind, &b.kind) {
                (Var(x), Var(y)) => {
                    let lx = env.iter().rposition(|(n, _)| *n == x.as_str());
                    let ly = env.iter().rposition(|(_, n)| *n == y.as_str());
                    match (lx, ly) {
                        (Some(i), Some(j)) => i == j,
                        (None, None) => x == y,
                        _ => false,
                    }
                }
                (Lambda(x, t), Lambda(y, u)) => {
                    env.push((x, y));
                    let r = go(t, u, env);
                    env.pop();
                    r
                }
                (App(f, a1), App(g, a2)) => go(f, g, env) && go(a1, a2, env),
                (Pi(x, a1, b1), Pi(y, a2, b2)) => {
                    if !go(a1, a2, env) {
                        return false;
                    }
                    env.push((x, y));
                    let r = go(b1, b2, env);
                    env.pop();
                    r
                }
                (Let(x, d1, b1), Let(y, d2, b2)) => {
                    if !go(d1, d2, env) {
                        return false;
                    }
                    env.push((x, y));
                    let r = go(b1, b2, env);
                    env.pop();
                    r
                }
                (Literal(m), Literal(n)) => m == n,
                (Builtin(p), Builtin(q)) => p == q,
                (Annotation(t1, a1), Annotation(t2, a2)) => go(t1, t2, env) && go(a1, a2, env),
                _ => false,
            }
        }
        go(self, other, &mut Vec::new())
    }
}

#[derive(Debug, Clone)]
pub struct Declaration {
    pub name: String,
    pub name_span: Span,
    pub annotation: Option<SourceTerm>,
    pub body: SourceTerm,
}

#[derive(Debug, Clone, Default)]
pub struct Module {
    pub declarations: Vec<Declaration>,
}

impl Module {
    pub fn alpha_eq(&self, other: &Module) -> bool {
        self.declarations.len() == other.declarations.len()
            && self
                .declarations
                .iter()
                .zip(&other.declarations)
                .all(|(a, b)| {
                    a.name == b.name
                        && a.body.alpha_eq(&b.body)
                        && match (&a.annotation, &b.annotation) {
                            (Some(x), Some(y)) => x.alpha_eq(y),
                            (None, None) => true,
                            _ => false,
                        }
                })
    }
}
