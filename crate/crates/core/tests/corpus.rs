//! The corpus: each file's verdict, and properties of the elaborated output.

mod common;

use common::*;
use ttfl::cli::corpus_verdict;
use ttfl::elab::elab_source;

#[test]
fn accepted_files() {
    let files = corpus("accept");
    assert!(files.len() >= 6);
    for (name, text) in files {
        corpus_verdict(&text, false).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn rejected_files() {
    let files = corpus("reject");
    assert!(files.len() >= 10);
    for (name, text) in files {
        corpus_verdict(&text, true).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn core_terms_are_well_scoped() {
    for (name, _, m) in accepted_modules() {
        for (g, d) in m.declarations.iter().enumerate() {
            d.term
                .validate_scope(0, g)
                .unwrap_or_else(|e| panic!("{name}: {}: {e}", d.name));
            d.type_term
                .validate_scope(0, g)
                .unwrap_or_else(|e| panic!("{name}: type of {}: {e}", d.name));
        }
    }
}

#[test]
fn elaboration_is_deterministic() {
    for (name, text, m) in accepted_modules() {
        let again = elab_source(&text, m.structure).unwrap();
        for (a, b) in m.declarations.iter().zip(&again.declarations) {
            assert_eq!(a.term, b.term, "{name}: {}", a.name);
            assert_eq!(a.type_term, b.type_term, "{name}: {}", a.name);
        }
    }
}

#[test]
fn the_worked_examples_are_present() {
    let accepted: Vec<String> = corpus("accept").into_iter().map(|(n, _)| n).collect();
    for f in [
        "bounded_poly.ttfl",
        "large_elim.ttfl",
        "transfinite.ttfl",
        "finite_poly_omega_omega.ttfl",
    ] {
        assert!(accepted.iter().any(|n| n == f), "missing {f}");
    }
}
