use std::fmt::Write;

use super::lexer::{is_ident_continue, is_ident_start};
use super::Document;
use crate::algebra::{HomNAlgebra, Morphism};
use crate::exactla::{format_scalar, SparseVec};

/// Maps any string to a valid identifier; the identity on identifiers.
pub fn sanitize_identifier(s: &str) -> String {
    let mut out: String = s
        .chars()
        .map(|c| if is_ident_continue(c) { c } else { '_' })
        .collect();
    if !out.chars().next().is_some_and(is_ident_start) {
        out.insert(0, '_');
    }
    out
}

/// `v` over `labels` in the syntax the parser reads back.
pub fn format_lincomb(v: &SparseVec, labels: &[String]) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (i, x)) in v.iter().enumerate() {
        let label = sanitize_identifier(&labels[i]);
        if k == 0 {
            let _ = write!(out, "{}*{label}", format_scalar(x));
        } else if x.numer() < &0.into() {
            let _ = write!(out, " - {}*{label}", format_scalar(&-x.clone()));
        } else {
            let _ = write!(out, " + {}*{label}", format_scalar(x));
        }
    }
    out
}

/// Canonical text: every nonzero table entry in tuple order, then the twist
/// as `id`, `zero`, or one line per basis element.
pub fn print_algebra(a: &HomNAlgebra) -> String {
    let labels = a.labels();
    let names: Vec<String> = labels.iter().map(|l| sanitize_identifier(l)).collect();
    let mut out = String::new();
    let _ = writeln!(out, "algebra {} {{", sanitize_identifier(a.name()));
    let _ = writeln!(out, "  arity {};", a.arity());
    let _ = writeln!(out, "  dim {};", a.dim());
    if names.is_empty() {
        out.push_str("  basis;\n");
    } else {
        let _ = writeln!(out, "  basis {};", names.join(" "));
    }
    for (t, v) in a.table() {
        if v.is_zero() {
            continue;
        }
        let args: Vec<&str> = t.iter().map(|&i| names[i].as_str()).collect();
        let _ = writeln!(out, "  bracket [{}] = {};", args.join(", "), format_lincomb(v, labels));
    }
    let alpha = a.alpha();
    if alpha.is_identity() && a.dim() > 0 {
        out.push_str("  alpha id;\n");
    } else if alpha.is_zero() {
        out.push_str("  alpha zero;\n");
    } else {
        out.push_str("  alpha\n");
        for (j, name) in names.iter().enumerate() {
            let _ = writeln!(out, "    {name} = {};", format_lincomb(a.alpha_col(j), labels));
        }
    }
    out.push_str("}\n");
    out
}

pub fn print_morphism(name: &str, m: &Morphism) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "morphism {} : {} -> {} {{",
        sanitize_identifier(name),
        sanitize_identifier(m.source().name()),
        sanitize_identifier(m.target().name())
    );
    for (j, l) in m.source().labels().iter().enumerate() {
        let _ = writeln!(
            out,
            "  map {} = {};",
            sanitize_identifier(l),
            format_lincomb(m.column(j), m.target().labels())
        );
    }
    out.push_str("}\n");
    out
}

/// All algebras, then all morphisms, separated by blank lines.
pub fn print_document(doc: &Document) -> String {
    let blocks: Vec<String> = doc
        .algebras
        .iter()
        .map(|e| print_algebra(&e.value))
        .chain(doc.morphisms.iter().map(|e| print_morphism(&e.name, &e.value)))
        .collect();
    blocks.join("\n")
}
