use std::sync::Arc;

use homnalg::catalog;
use homnalg::exactla::{SparseVec, Subspace};
use homnalg::format::{parse_lincomb, parse_str, Document, ParseOptions};
use homnalg::limits::DEFAULT_MAX_OPS;
use homnalg::{AlgebraRef, Error, Extension, HomNAlgebra, Limits, Morphism};
use serde_json::{json, Map, Value};

use crate::args::Input;
use crate::report::{CliError, CliResult};

pub const MAX_OPS_VAR: &str = "HOMNALG_MAX_OPS";

pub fn limits_from_env() -> CliResult<Limits> {
    match std::env::var(MAX_OPS_VAR) {
        Err(_) => Ok(Limits::new(DEFAULT_MAX_OPS)),
        Ok(s) => s
            .trim()
            .parse::<u64>()
            .map(Limits::new)
            .map_err(|_| CliError::Usage(format!("{MAX_OPS_VAR} must be a non-negative integer, got `{s}`"))),
    }
}

/// The inputs echoed into the JSON report.
pub fn inputs_json(input: &Input) -> Map<String, Value> {
    let mut m = Map::new();
    if let Some(f) = &input.file {
        m.insert("file".into(), json!(f.display().to_string()));
    }
    if !input.fixtures.is_empty() {
        m.insert("fixtures".into(), json!(input.fixtures));
    }
    if let Some(a) = &input.algebra {
        m.insert("algebra".into(), json!(a));
    }
    if !input.morphisms.is_empty() {
        m.insert("morphisms".into(), json!(input.morphisms));
    }
    m
}

pub struct Loaded {
    pub doc: Document,
    input: Input,
}

fn with_limits(a: &AlgebraRef, limits: Limits) -> AlgebraRef {
    let mut b = (**a).clone();
    b.set_limits(limits);
    Arc::new(b)
}

fn add_algebra(doc: &mut Document, name: &str, a: AlgebraRef) -> CliResult<()> {
    match doc.algebra(name) {
        Some(existing) if **existing == *a => Ok(()),
        Some(_) => Err(CliError::Usage(format!("two different fixtures both define `{name}`"))),
        None => {
            doc.algebras.push(homnalg::format::Entry {
                name: name.to_string(),
                pos: Default::default(),
                value: a,
            });
            Ok(())
        }
    }
}

/// Reads the file or assembles the named fixtures. `strict` rejects invalid
/// algebras and morphisms while loading.
pub fn load(input: &Input, strict: bool) -> CliResult<Loaded> {
    let limits = limits_from_env()?;
    let doc = match (&input.file, input.fixtures.is_empty()) {
        (Some(_), false) => return Err(CliError::Usage("give a file or --fixture, not both".into())),
        (None, true) => return Err(CliError::Usage("no input: give a .hna file or --fixture NAME".into())),
        (Some(path), true) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
                path: path.clone(),
                message: e.to_string(),
            })?;
            parse_str(&text, &ParseOptions { strict, limits }).map_err(|error| CliError::Parse {
                path: path.display().to_string(),
                error,
            })?
        }
        (None, false) => {
            let mut doc = Document::default();
            for name in &input.fixtures {
                if catalog::algebra_names().contains(&name.as_str()) {
                    add_algebra(&mut doc, name, with_limits(&catalog::algebra(name)?, limits))?;
                } else if catalog::map_names().contains(&name.as_str()) {
                    let m = catalog::morphism(name)?;
                    let src = with_limits(m.source(), limits);
                    let dst = with_limits(m.target(), limits);
                    add_algebra(&mut doc, m.source().name(), src.clone())?;
                    add_algebra(&mut doc, m.target().name(), dst.clone())?;
                    doc.push_morphism(name.clone(), Morphism::new(src, dst, m.matrix().clone())?);
                } else {
                    return Err(Error::UnknownFixture(name.clone()).into());
                }
            }
            doc
        }
    };
    Ok(Loaded {
        doc,
        input: input.clone(),
    })
}

impl Loaded {
    /// The algebra named by `--algebra`, or the only one present.
    pub fn algebra(&self) -> CliResult<AlgebraRef> {
        match &self.input.algebra {
            Some(name) => self
                .doc
                .algebra(name)
                .cloned()
                .ok_or_else(|| CliError::Usage(format!("no algebra `{name}`; have {:?}", self.doc.algebra_names()))),
            None if self.doc.algebras.len() == 1 => Ok(self.doc.algebras[0].value.clone()),
            None => Err(CliError::Usage(format!(
                "choose one with --algebra; have {:?}",
                self.doc.algebra_names()
            ))),
        }
    }

    /// Exactly `count` morphisms: the `--morphism` names in order, or all of
    /// them when the input holds exactly `count`.
    pub fn morphisms(&self, count: usize) -> CliResult<Vec<(String, Morphism)>> {
        let names: Vec<String> = if self.input.morphisms.is_empty() {
            if self.doc.morphisms.len() != count {
                return Err(CliError::Usage(format!(
                    "choose {count} with --morphism; have {:?}",
                    self.doc.morphism_names()
                )));
            }
            self.doc.morphisms.iter().map(|e| e.name.clone()).collect()
        } else {
            self.input.morphisms.clone()
        };
        if names.len() != count {
            return Err(CliError::Usage(format!(
                "this command takes {count} morphism(s), got {}",
                names.len()
            )));
        }
        names
            .into_iter()
            .map(|n| {
                let m = self
                    .doc
                    .morphism(&n)
                    .cloned()
                    .ok_or_else(|| CliError::Usage(format!("no morphism `{n}`; have {:?}", self.doc.morphism_names())))?;
                Ok((n, m))
            })
            .collect()
    }

    pub fn morphism(&self) -> CliResult<(String, Morphism)> {
        Ok(self.morphisms(1)?.remove(0))
    }

    pub fn extension(&self) -> CliResult<(String, Extension)> {
        let (n, m) = self.morphism()?;
        Ok((n, Extension::new(m)?))
    }
}

/// `all`, `0`, or comma-separated combinations over the algebra's labels.
pub fn subspace_spec(spec: &str, a: &HomNAlgebra) -> CliResult<Subspace> {
    let d = a.dim();
    match spec.trim() {
        "all" => return Ok(Subspace::full(d)),
        "0" | "" => return Ok(Subspace::zero(d)),
        _ => {}
    }
    let vectors: Vec<SparseVec> = spec
        .split(',')
        .map(|part| {
            parse_lincomb(part, a.labels())
                .map_err(|e| CliError::Usage(format!("bad subspace `{spec}`: {}", e.message)))
        })
        .collect::<CliResult<_>>()?;
    Ok(Subspace::span_sparse(d, vectors))
}
