use proptest::prelude::*;

use super::*;
use crate::algebra::{BuildOptions, HomNAlgebra};
use crate::catalog;
use crate::exactla::{int, ratio, Matrix, SparseVec};
use crate::tensor_index::tuples;

fn lenient() -> ParseOptions {
    ParseOptions {
        strict: false,
        ..ParseOptions::default()
    }
}

fn err(text: &str) -> ParseError {
    parse_document(text).unwrap_err()
}

const SMALL: &str = "\
# two generators, zero twist
algebra L {
  arity 3;
  dim 2;
  basis b1 b2;
  bracket [b2, b1, b1] = b2;   # sign and coefficient optional
  bracket [b2, b2, b2] = 1*b1;
  alpha zero
}
";

#[test]
fn empty_input_gives_empty_document() {
    assert!(parse_document("").unwrap().is_empty());
    assert!(parse_document("  # only a comment\n\n").unwrap().is_empty());
}

#[test]
fn small_algebra_matches_the_catalog() {
    let doc = parse_document(SMALL).unwrap();
    let l = doc.algebra("L").unwrap();
    assert_eq!(**l, *catalog::algebra("ex37.L").unwrap());
    assert_eq!(doc.algebras[0].pos, Pos { line: 2, col: 1 });
}

#[test]
fn catalog_round_trips() {
    for name in catalog::algebra_names() {
        let a = catalog::algebra(name).unwrap();
        let text = print_algebra(&a);
        let doc = parse_document(&text).unwrap_or_else(|e| panic!("{name}: {e}\n{text}"));
        assert_eq!(*doc.algebras[0].value, *a, "{name}");
        assert_eq!(print_document(&doc), text, "{name}");
    }
    for name in catalog::map_names() {
        let m = catalog::morphism(name).unwrap();
        let mut doc = Document::default();
        doc.push_algebra(m.source().clone());
        if m.target().name() != m.source().name() {
            doc.push_algebra(m.target().clone());
        }
        doc.push_morphism("f", m);
        let text = print_document(&doc);
        let again = parse_document(&text).unwrap_or_else(|e| panic!("{name}: {e}\n{text}"));
        assert_eq!(again, doc, "{name}");
        assert_eq!(print_document(&again), text, "{name}");
    }
}

#[test]
fn generate_skew_fills_the_table() {
    let text = "algebra S { arity 2; dim 3; basis h e f; generate skew;
        bracket [h, e] = 2*e; bracket [h, f] = -2*f; bracket [e, f] = h; alpha id; }";
    let doc = parse_document(text).unwrap();
    assert_eq!(**doc.algebra("S").unwrap(), *catalog::algebra("sl2").unwrap());
}

#[test]
fn explicit_alpha_and_rationals() {
    let text = "algebra A { arity 2; dim 2; basis x y; alpha x = 1/2*x - 3*y; y = 0; }";
    let a = parse_document(text).unwrap().algebras.remove(0).value;
    assert_eq!(a.alpha().get(0, 0), &ratio(1, 2));
    assert_eq!(a.alpha().get(1, 0), &int(-3));
    assert!(a.alpha_col(1).is_zero());
    // a basis element literally called `id` is still explicit mode
    let text = "algebra B { arity 2; dim 1; basis id; alpha id = 2*id; }";
    let b = parse_document(text).unwrap().algebras.remove(0).value;
    assert_eq!(b.alpha().get(0, 0), &int(2));
}

#[test]
fn arity_mismatch_is_reported_at_its_line() {
    let text = "algebra L {\n  arity 3;\n  dim 1;\n  basis a1;\n  bracket [a1,a1] = a1;\n  alpha zero;\n}\n";
    let e = err(text);
    assert_eq!(e.kind, ParseErrorKind::Semantic);
    assert_eq!(e.pos.line, 5);
    assert!(e.message.contains("arity"), "{e}");
}

#[test]
fn semantic_errors_carry_locations() {
    let cases = [
        ("algebra L { arity 2; dim 1; basis a; bracket [a, b] = a; alpha zero; }", 1, "unknown basis label `b`"),
        ("algebra L { arity 2; dim 2; basis a; alpha zero; }", 1, "dim 2"),
        ("algebra L { arity 2; dim 1; basis a;\n bracket [a, a] = a;\n bracket [a, a] = 0; alpha zero; }", 3, "twice"),
        ("algebra L { arity 2; dim 2; basis a b; alpha a = a; }", 1, "no image"),
        ("algebra L { arity 2; dim 1; basis a; alpha zero; }\nmorphism f : L -> M { map a = a; }", 2, "unknown algebra"),
        ("algebra L { arity 2; dim 1; basis a; alpha zero; }\nmorphism f : L -> L { }", 2, "no image"),
        ("algebra L { arity 2; dim 1; basis a; alpha zero; }\nalgebra L { arity 2; dim 1; basis a; alpha zero; }", 2, "twice"),
        ("algebra L { arity 2; dim 1; basis a a; alpha zero; }", 1, "repeated"),
        ("algebra L { arity 2; dim 1; basis a; alpha a = 1/0*a; }", 1, "denominator"),
        ("algebra L { arity 1; dim 1; basis a; alpha zero; }", 1, "at least 2"),
    ];
    for (text, line, needle) in cases {
        let e = err(text);
        assert_eq!(e.kind, ParseErrorKind::Semantic, "{text}: {e}");
        assert_eq!(e.pos.line, line, "{text}: {e}");
        assert!(e.message.contains(needle), "{text}: {e}");
    }
}

#[test]
fn skew_conflict_points_at_the_offending_bracket() {
    let text = "algebra L { arity 2; dim 2; basis a b; generate skew;\n bracket [a, b] = a;\n bracket [b, a] = a;\n alpha id; }";
    let e = err(text);
    assert_eq!(e.kind, ParseErrorKind::Semantic);
    assert!(e.pos.line == 2 || e.pos.line == 3, "{e}");
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let e = err("algebra L {\n  arity 2\n  dim 1; }");
    assert_eq!(e.kind, ParseErrorKind::Syntax);
    assert_eq!(e.pos, Pos { line: 3, col: 3 });
    let e = err("algebra L { arity 2; dim 1; basis a; alpha zero; } $");
    assert_eq!(e.kind, ParseErrorKind::Syntax);
    assert_eq!(e.pos.col, 52);
    assert_eq!(err("algebra").kind, ParseErrorKind::Syntax);
    assert_eq!(err("morphism f :").kind, ParseErrorKind::Syntax);
    assert_eq!(err("morphism f : A").kind, ParseErrorKind::Semantic);
}

#[test]
fn invalid_algebras_only_load_leniently() {
    // a single negated entry of a valid table breaks the identity
    let mut text = print_algebra(&catalog::algebra("sec5.K").unwrap());
    text = text.replacen("= 1*", "= -1*", 1);
    let e = err(&text);
    assert_eq!(e.kind, ParseErrorKind::Invalid, "{e}");
    let doc = parse_str(&text, &lenient()).unwrap();
    assert!(!doc.algebras[0].value.is_valid());
}

#[test]
fn invalid_morphisms_only_load_leniently() {
    let text = "algebra L { arity 2; dim 1; basis a; bracket [a, a] = a; alpha id; }
        morphism f : L -> L { map a = 2*a; }";
    assert_eq!(err(text).kind, ParseErrorKind::Invalid);
    assert!(parse_str(text, &lenient()).is_ok());
}

#[test]
fn resource_cap_is_its_own_kind() {
    let text = print_algebra(&catalog::algebra("sec5.L").unwrap());
    let options = ParseOptions {
        strict: true,
        limits: crate::Limits::new(10),
    };
    assert_eq!(parse_str(&text, &options).unwrap_err().kind, ParseErrorKind::Resource);
}

#[test]
fn stand_alone_combinations() {
    let labels = vec!["e1".to_string(), "e2".to_string(), "e3".to_string()];
    let v = parse_lincomb("e2 - 1/3*e3 + e2", &labels).unwrap();
    assert_eq!(v, SparseVec::from_pairs([(1, int(2)), (2, ratio(-1, 3))]));
    assert!(parse_lincomb("0", &labels).unwrap().is_zero());
    assert!(parse_lincomb("e4", &labels).is_err());
    assert!(parse_lincomb("e1 e2", &labels).is_err());
}

#[test]
fn sanitizing_leaves_identifiers_alone() {
    assert_eq!(sanitize_identifier("K.a1"), "K.a1");
    assert_eq!(sanitize_identifier("alpha(L)"), "alpha_L_");
    assert_eq!(sanitize_identifier("1x"), "_1x");
    assert_eq!(sanitize_identifier(""), "_");
}

fn arbitrary_algebra() -> impl Strategy<Value = HomNAlgebra> {
    (2usize..=3, 1usize..=3).prop_flat_map(|(n, d)| {
        let cells = d.pow(n as u32) * d;
        (
            Just((n, d)),
            proptest::collection::vec((-3i64..=3, 1i64..=3), cells),
            proptest::collection::vec(-2i64..=2, d * d),
        )
            .prop_map(|((n, d), table, alpha)| {
                let mut entries = Vec::new();
                for (k, t) in tuples(d, n).enumerate() {
                    let v = SparseVec::from_pairs(
                        (0..d).map(|i| (i, ratio(table[k * d + i].0, table[k * d + i].1))),
                    );
                    if !v.is_zero() {
                        entries.push((t, v));
                    }
                }
                let alpha = Matrix::from_fn(d, d, |i, j| int(alpha[i * d + j]));
                let labels = (0..d).map(|i| format!("v{i}")).collect();
                HomNAlgebra::new("R", n, labels, entries, alpha, BuildOptions::default()).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn print_then_parse_is_identity(a in arbitrary_algebra()) {
        let text = print_algebra(&a);
        let doc = parse_str(&text, &lenient()).unwrap();
        prop_assert_eq!(&*doc.algebras[0].value, &a);
        prop_assert_eq!(print_document(&doc), text);
    }

    #[test]
    fn arbitrary_text_never_panics(text in "[a-z0-9 {}\\[\\];,=*/+\\-:>#\n]{0,120}") {
        let _ = parse_str(&text, &lenient());
    }
}
