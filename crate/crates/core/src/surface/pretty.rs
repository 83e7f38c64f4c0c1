use super::{Module, SourceTerm, TermKind};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Term,
    App,
    Atom,
}

fn prec_of(t: &SourceTerm) -> Prec {
    match &t.kind {
        TermKind::Lambda(..) | TermKind::Let(..) | TermKind::Pi(..) => Prec::Term,
        TermKind::App(..) => Prec::App,
        TermKind::Var(_) | TermKind::Literal(_) | TermKind::Builtin(_) | TermKind::Annotation(..) => {
            Prec::Atom
        }
    }
}

fn write(t: &SourceTerm, ctx: Prec, out: &mut String) {
    let parens = prec_of(t) < ctx;
    if parens {
        out.push('(');
    }
    match &t.kind {
        TermKind::Var(x) => out.push_str(x),
        TermKind::Literal(n) => out.push_str(&n.to_string()),
        TermKind::Builtin(b) => out.push_str(b.name()),
        TermKind::Lambda(x, body) => {
            out.push('\\');
            out.push_str(x);
            out.push_str(". ");
            write(body, Prec::Term, out);
        }
        TermKind::App(f, a) => {
            write(f, Prec::App, out);
            out.push(' ');
            write(a, Prec::Atom, out);
        }
        TermKind::Pi(x, dom, cod) => {
            if x == "_" {
                write(dom, Prec::App, out);
            } else {
                out.push('(');
                out.push_str(x);
                out.push_str(" : ");
                write(dom, Prec::Term, out);
                out.push(')');
            }
            out.push_str(" -> ");
            write(cod, Prec::Term, out);
        }
        TermKind::Let(x, def, body) => {
            out.push_str("let ");
            out.push_str(x);
            out.push_str(" = ");
            write(def, Prec::Term, out);
            out.push_str(" in ");
            write(body, Prec::Term, out);
        }
        TermKind::Annotation(e, ty) => {
            out.push('(');
            write(e, Prec::Term, out);
            out.push_str(" : ");
            write(ty, Prec::Term, out);
            out.push(')');
        }
    }
    if parens {
        out.push(')');
    }
}

pub fn pretty_term(t: &SourceTerm) -> String {
    let mut out = String::new();
    write(t, Prec::Term, &mut out);
    out
}

pub fn pretty_module(m: &Module) -> String {
    let mut out = String::new();
    for d in &m.declarations {
        out.push_str(&d.name);
        if let Some(ann) = &d.annotation {
            out.push_str(" : ");
            write(ann, Prec::Term, &mut out);
        }
        out.push_str("\n  = ");
        write(&d.body, Prec::Term, &mut out);
        out.push_str(";\n");
    }
    out
}
