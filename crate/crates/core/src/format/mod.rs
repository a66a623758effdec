//! The `.hna` text format: a line-oriented description of algebras and the
//! maps between them.
//!
//! ```text
//! # comments run to the end of the line
//! algebra L {
//!   arity 3;
//!   dim 2;
//!   basis b1 b2;
//!   bracket [b1, b2, b2] = 1*b1;
//!   alpha zero;
//! }
//! morphism f : K -> L { map a1 = 1*b1; map a2 = 0; }
//! ```
//!
//! Omitted bracket tuples are zero. `generate skew;` completes the table by
//! antisymmetry before validation. Every basis element of a morphism's
//! source must be mapped.

mod lexer;
mod parser;
mod printer;
#[cfg(test)]
mod tests;

use std::fmt;
use std::sync::Arc;

use crate::algebra::{AlgebraRef, Morphism};
use crate::limits::Limits;

pub use printer::{format_lincomb, print_algebra, print_document, print_morphism, sanitize_identifier};

/// 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// lexical or grammatical
    Syntax,
    /// unknown label, dimension or arity mismatch, duplicate entry, skew conflict
    Semantic,
    /// well-formed, but an algebra or morphism fails its identities
    Invalid,
    /// construction ran into the resource cap
    Resource,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub pos: Pos,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(kind: ParseErrorKind, pos: Pos, message: impl Into<String>) -> Self {
        Self {
            kind,
            pos,
            message: message.into(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ParseOptions {
    /// Reject algebras and morphisms that fail validation. When off, they
    /// are loaded with their validation flags recorded so callers can report.
    pub strict: bool,
    pub limits: Limits,
}

impl Default for ParseOptions {
    fn default() -> Self {
        Self {
            strict: true,
            limits: Limits::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Entry<T> {
    pub name: String,
    pub pos: Pos,
    pub value: T,
}

/// Parsed file contents in source order. Morphisms refer to algebras defined
/// earlier in the same file.
#[derive(Clone, Debug, Default)]
pub struct Document {
    pub algebras: Vec<Entry<AlgebraRef>>,
    pub morphisms: Vec<Entry<Morphism>>,
}

impl Document {
    pub fn is_empty(&self) -> bool {
        self.algebras.is_empty() && self.morphisms.is_empty()
    }

    pub fn algebra(&self, name: &str) -> Option<&AlgebraRef> {
        self.algebras.iter().find(|e| e.name == name).map(|e| &e.value)
    }

    pub fn morphism(&self, name: &str) -> Option<&Morphism> {
        self.morphisms.iter().find(|e| e.name == name).map(|e| &e.value)
    }

    pub fn algebra_names(&self) -> Vec<&str> {
        self.algebras.iter().map(|e| e.name.as_str()).collect()
    }

    pub fn morphism_names(&self) -> Vec<&str> {
        self.morphisms.iter().map(|e| e.name.as_str()).collect()
    }

    pub fn push_algebra(&mut self, a: AlgebraRef) {
        self.algebras.push(Entry {
            name: a.name().to_string(),
            pos: Pos::default(),
            value: a,
        });
    }

    pub fn push_morphism(&mut self, name: impl Into<String>, m: Morphism) {
        self.morphisms.push(Entry {
            name: name.into(),
            pos: Pos::default(),
            value: m,
        });
    }
}

/// Equal contents; source positions are ignored.
impl PartialEq for Document {
    fn eq(&self, other: &Self) -> bool {
        let same_algebras = self.algebras.len() == other.algebras.len()
            && self
                .algebras
                .iter()
                .zip(&other.algebras)
                .all(|(a, b)| a.name == b.name && (Arc::ptr_eq(&a.value, &b.value) || *a.value == *b.value));
        let same_maps = self.morphisms.len() == other.morphisms.len()
            && self.morphisms.iter().zip(&other.morphisms).all(|(a, b)| {
                a.name == b.name
                    && a.value.source().name() == b.value.source().name()
                    && a.value.target().name() == b.value.target().name()
                    && a.value.matrix() == b.value.matrix()
            });
        same_algebras && same_maps
    }
}

pub fn parse_str(text: &str, options: &ParseOptions) -> Result<Document, ParseError> {
    parser::Parser::new(lexer::tokenize(text)?, *options).document()
}

pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    parse_str(text, &ParseOptions::default())
}

pub use parser::parse_lincomb_terms as parse_lincomb;
