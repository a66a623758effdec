use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::lexer::{tokenize, Tok};
use super::{Document, Entry, ParseError, ParseErrorKind, ParseOptions, Pos};
use crate::algebra::{BuildOptions, HomNAlgebra, Morphism};
use crate::error::Error;
use crate::exactla::{Matrix, Scalar, SparseVec};

pub(crate) struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    options: ParseOptions,
}

fn syntax(pos: Pos, msg: impl Into<String>) -> ParseError {
    ParseError::new(ParseErrorKind::Syntax, pos, msg)
}

fn semantic(pos: Pos, msg: impl Into<String>) -> ParseError {
    ParseError::new(ParseErrorKind::Semantic, pos, msg)
}

fn from_library(pos: Pos, e: Error) -> ParseError {
    let kind = match e {
        Error::ResourceLimit { .. } => ParseErrorKind::Resource,
        Error::InvalidAlgebra { .. } | Error::NotMorphism { .. } => ParseErrorKind::Invalid,
        _ => ParseErrorKind::Semantic,
    };
    ParseError::new(kind, pos, e.to_string())
}

impl Parser {
    pub(crate) fn new(toks: Vec<(Tok, Pos)>, options: ParseOptions) -> Self {
        Self { toks, at: 0, options }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<Pos, ParseError> {
        let (t, pos) = self.next();
        if t == want {
            Ok(pos)
        } else {
            Err(syntax(pos, format!("expected {}, found {}", want.describe(), t.describe())))
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), ParseError> {
        match self.next() {
            (Tok::Ident(s), pos) => Ok((s, pos)),
            (t, pos) => Err(syntax(pos, format!("expected an identifier, found {}", t.describe()))),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<Pos, ParseError> {
        match self.next() {
            (Tok::Ident(s), pos) if s == word => Ok(pos),
            (t, pos) => Err(syntax(pos, format!("expected `{word}`, found {}", t.describe()))),
        }
    }

    fn at_keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == word)
    }

    fn count(&mut self) -> Result<(usize, Pos), ParseError> {
        match self.next() {
            (Tok::Int(n), pos) => usize::try_from(n).map(|v| (v, pos)).map_err(|_| semantic(pos, "number too large")),
            (t, pos) => Err(syntax(pos, format!("expected a number, found {}", t.describe()))),
        }
    }

    pub(crate) fn document(mut self) -> Result<Document, ParseError> {
        let mut doc = Document::default();
        loop {
            match self.peek().clone() {
                Tok::Eof => return Ok(doc),
                Tok::Ident(s) if s == "algebra" => {
                    let entry = self.algebra()?;
                    if doc.algebra(&entry.name).is_some() {
                        return Err(semantic(entry.pos, format!("algebra `{}` defined twice", entry.name)));
                    }
                    doc.algebras.push(entry);
                }
                Tok::Ident(s) if s == "morphism" => {
                    let entry = self.morphism(&doc)?;
                    if doc.morphism(&entry.name).is_some() {
                        return Err(semantic(entry.pos, format!("morphism `{}` defined twice", entry.name)));
                    }
                    doc.morphisms.push(entry);
                }
                t => {
                    return Err(syntax(
                        self.pos(),
                        format!("expected `algebra` or `morphism`, found {}", t.describe()),
                    ))
                }
            }
        }
    }

    fn algebra(&mut self) -> Result<Entry<Arc<HomNAlgebra>>, ParseError> {
        let start = self.keyword("algebra")?;
        let (name, _) = self.ident()?;
        self.expect(Tok::LBrace)?;

        self.keyword("arity")?;
        let (arity, arity_pos) = self.count()?;
        if arity < 2 {
            return Err(semantic(arity_pos, format!("arity must be at least 2, got {arity}")));
        }
        self.expect(Tok::Semi)?;

        self.keyword("dim")?;
        let (dim, _) = self.count()?;
        self.expect(Tok::Semi)?;

        let basis_pos = self.keyword("basis")?;
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        while let Tok::Ident(_) = self.peek() {
            let (l, pos) = self.ident()?;
            if index.insert(l.clone(), labels.len()).is_some() {
                return Err(semantic(pos, format!("basis label `{l}` repeated")));
            }
            labels.push(l);
        }
        self.expect(Tok::Semi)?;
        if labels.len() != dim {
            return Err(semantic(
                basis_pos,
                format!("dim {dim} but {} basis labels", labels.len()),
            ));
        }

        let mut generate_skew = false;
        if self.at_keyword("generate") {
            self.next();
            self.keyword("skew")?;
            self.expect(Tok::Semi)?;
            generate_skew = true;
        }

        let mut entries: BTreeMap<Vec<usize>, (SparseVec, Pos)> = BTreeMap::new();
        while self.at_keyword("bracket") {
            let line = self.next().1;
            let open = self.expect(Tok::LBracket)?;
            let mut tuple = Vec::new();
            loop {
                let (l, pos) = self.ident()?;
                tuple.push(*index.get(&l).ok_or_else(|| semantic(pos, format!("unknown basis label `{l}`")))?);
                if *self.peek() == Tok::Comma {
                    self.next();
                } else {
                    break;
                }
            }
            self.expect(Tok::RBracket)?;
            if tuple.len() != arity {
                return Err(semantic(
                    open,
                    format!("bracket has {} arguments but the arity is {arity}", tuple.len()),
                ));
            }
            self.expect(Tok::Eq)?;
            let value = self.lincomb(&index)?;
            self.expect(Tok::Semi)?;
            if entries.contains_key(&tuple) {
                return Err(semantic(line, format!("bracket tuple {} supplied twice", show_tuple(&tuple, &labels))));
            }
            entries.insert(tuple, (value, line));
        }

        self.keyword("alpha")?;
        let alpha = match (self.peek().clone(), self.peek2().clone()) {
            (Tok::Ident(s), next) if s == "id" && next != Tok::Eq => {
                self.next();
                self.optional_semi();
                Matrix::identity(dim)
            }
            (Tok::Ident(s), next) if s == "zero" && next != Tok::Eq => {
                self.next();
                self.optional_semi();
                Matrix::zeros(dim, dim)
            }
            _ => self.explicit_map(&index, &index, &labels, None)?,
        };
        self.expect(Tok::RBrace)?;

        let positions: HashMap<Vec<usize>, Pos> = entries.iter().map(|(t, (_, p))| (t.clone(), *p)).collect();
        let built = HomNAlgebra::new(
            name.clone(),
            arity,
            labels,
            entries.into_iter().map(|(t, (v, _))| (t, v)).collect(),
            alpha,
            BuildOptions {
                generate_skew,
                limits: self.options.limits,
            },
        )
        .map_err(|e| {
            let at = match &e {
                Error::SkewConflict { tuple } | Error::DuplicateTuple { tuple } => {
                    positions.get(tuple).copied().unwrap_or(start)
                }
                _ => start,
            };
            from_library(at, e)
        })?;
        if self.options.strict {
            built.require_valid().map_err(|e| from_library(start, e))?;
        }
        Ok(Entry {
            name,
            pos: start,
            value: Arc::new(built),
        })
    }

    fn optional_semi(&mut self) {
        if *self.peek() == Tok::Semi {
            self.next();
        }
    }

    /// `(<id> = <lincomb> ;)+` up to the closing brace, each source label
    /// exactly once. With `keyword`, every line starts with it.
    fn explicit_map(
        &mut self,
        source: &HashMap<String, usize>,
        target: &HashMap<String, usize>,
        source_labels: &[String],
        keyword: Option<&str>,
    ) -> Result<Matrix, ParseError> {
        let mut columns: Vec<Option<SparseVec>> = vec![None; source_labels.len()];
        let start = self.pos();
        loop {
            if let Some(k) = keyword {
                if *self.peek() == Tok::RBrace {
                    break;
                }
                self.keyword(k)?;
            } else if *self.peek() == Tok::RBrace && columns.iter().any(Option::is_some) {
                break;
            }
            let (l, pos) = self.ident()?;
            let j = *source
                .get(&l)
                .ok_or_else(|| semantic(pos, format!("unknown basis label `{l}`")))?;
            self.expect(Tok::Eq)?;
            let v = self.lincomb(target)?;
            self.expect(Tok::Semi)?;
            if columns[j].is_some() {
                return Err(semantic(pos, format!("image of `{l}` given twice")));
            }
            columns[j] = Some(v);
        }
        let rows = target.len();
        let mut out = Vec::with_capacity(columns.len());
        for (j, c) in columns.into_iter().enumerate() {
            match c {
                Some(v) => out.push(v),
                None => {
                    return Err(semantic(
                        start,
                        format!("no image given for basis element `{}`", source_labels[j]),
                    ))
                }
            }
        }
        Ok(Matrix::from_sparse_columns(rows, &out))
    }

    fn morphism(&mut self, doc: &Document) -> Result<Entry<Morphism>, ParseError> {
        let start = self.keyword("morphism")?;
        let (name, _) = self.ident()?;
        self.expect(Tok::Colon)?;
        let side = |p: &mut Self| -> Result<Arc<HomNAlgebra>, ParseError> {
            let (a, pos) = p.ident()?;
            doc.algebra(&a)
                .cloned()
                .ok_or_else(|| semantic(pos, format!("unknown algebra `{a}`")))
        };
        let src = side(self)?;
        self.expect(Tok::Arrow)?;
        let dst = side(self)?;
        self.expect(Tok::LBrace)?;
        let index = |a: &HomNAlgebra| -> HashMap<String, usize> {
            a.labels().iter().enumerate().map(|(i, l)| (l.clone(), i)).collect()
        };
        let matrix = self.explicit_map(&index(&src), &index(&dst), src.labels(), Some("map"))?;
        self.expect(Tok::RBrace)?;
        let m = Morphism::new(src, dst, matrix).map_err(|e| from_library(start, e))?;
        if self.options.strict {
            m.require_valid().map_err(|e| from_library(start, e))?;
        }
        Ok(Entry { name, pos: start, value: m })
    }

    /// `0` or signed terms `[rat *] id`; repeated labels accumulate.
    fn lincomb(&mut self, index: &HashMap<String, usize>) -> Result<SparseVec, ParseError> {
        if let (Tok::Int(n), next) = (self.peek().clone(), self.peek2().clone()) {
            if n.is_zero() && !matches!(next, Tok::Star | Tok::Slash) {
                self.next();
                return Ok(SparseVec::new());
            }
        }
        let mut acc = SparseVec::new();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Tok::Plus => {
                    self.next();
                    false
                }
                Tok::Minus => {
                    self.next();
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let mut coeff = match self.peek().clone() {
                Tok::Int(_) => {
                    let c = self.rational()?;
                    self.expect(Tok::Star)?;
                    c
                }
                _ => Scalar::one(),
            };
            if negative {
                coeff = -coeff;
            }
            let (l, pos) = self.ident()?;
            let i = *index
                .get(&l)
                .ok_or_else(|| semantic(pos, format!("unknown basis label `{l}`")))?;
            acc.axpy(&coeff, &SparseVec::unit(i));
        }
        Ok(acc)
    }

    fn rational(&mut self) -> Result<Scalar, ParseError> {
        let num = match self.next() {
            (Tok::Int(n), _) => n,
            (t, pos) => return Err(syntax(pos, format!("expected a number, found {}", t.describe()))),
        };
        if *self.peek() != Tok::Slash {
            return Ok(Scalar::from_integer(num));
        }
        self.next();
        match self.next() {
            (Tok::Int(d), pos) => {
                if d.is_zero() {
                    return Err(semantic(pos, "zero denominator"));
                }
                Ok(Scalar::new(num, d))
            }
            (t, pos) => Err(syntax(pos, format!("expected a denominator, found {}", t.describe()))),
        }
    }
}

fn show_tuple(t: &[usize], labels: &[String]) -> String {
    let names: Vec<&str> = t.iter().map(|&i| labels[i].as_str()).collect();
    format!("[{}]", names.join(", "))
}

/// Parses a stand-alone linear combination over `labels`, as used for
/// command-line subspace specifications.
pub fn parse_lincomb_terms(text: &str, labels: &[String]) -> Result<SparseVec, ParseError> {
    let index: HashMap<String, usize> = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
    let mut p = Parser::new(tokenize(text)?, ParseOptions::default());
    let v = p.lincomb(&index)?;
    match p.peek() {
        Tok::Eof => Ok(v),
        t => Err(syntax(p.pos(), format!("unexpected {} after the combination", t.describe()))),
    }
}
