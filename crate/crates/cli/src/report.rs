use std::path::PathBuf;

use homnalg::exactla::{format_scalar, Matrix, SparseVec, Subspace};
use homnalg::format::{format_lincomb, ParseError, ParseErrorKind};
use homnalg::{Error, HomNAlgebra};
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    PropertyFailed = 1,
    Usage = 2,
    Resource = 3,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io { path: PathBuf, message: String },
    Parse { path: String, error: ParseError },
    Library(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Library(e)
    }
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => Exit::Usage,
            CliError::Parse { error, .. } => match error.kind {
                ParseErrorKind::Syntax | ParseErrorKind::Semantic => Exit::Usage,
                ParseErrorKind::Invalid => Exit::PropertyFailed,
                ParseErrorKind::Resource => Exit::Resource,
            },
            CliError::Library(e) => match e {
                Error::ResourceLimit { .. } => Exit::Resource,
                Error::InvalidAlgebra { .. } | Error::NotMorphism { .. } | Error::NotWellDefined { .. } => {
                    Exit::PropertyFailed
                }
                _ => Exit::Usage,
            },
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Parse { error, .. } => match error.kind {
                ParseErrorKind::Syntax => "syntax",
                ParseErrorKind::Semantic => "semantic",
                ParseErrorKind::Invalid => "invalid",
                ParseErrorKind::Resource => "resource",
            },
            CliError::Library(e) => match e {
                Error::ResourceLimit { .. } => "resource",
                Error::InvalidAlgebra { .. } | Error::NotMorphism { .. } | Error::NotWellDefined { .. } => "invalid",
                _ => "precondition",
            },
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Io { path, message } => format!("{}: {message}", path.display()),
            CliError::Parse { path, error } => format!("{path}:{error}"),
            CliError::Library(e) => e.to_string(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("kind".into(), json!(self.kind()));
        m.insert("message".into(), json!(self.message()));
        if let CliError::Parse { error, .. } = self {
            m.insert("line".into(), json!(error.pos.line));
            m.insert("column".into(), json!(error.pos.col));
        }
        Value::Object(m)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// One command's output: structured results for `--json`, lines for text.
#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub advisories: Vec<String>,
    pub text: Vec<String>,
    pub exit: Exit,
}

impl Report {
    pub fn new(command: &'static str, inputs: Map<String, Value>) -> Self {
        Self {
            command,
            inputs,
            results: Map::new(),
            advisories: Vec::new(),
            text: Vec::new(),
            exit: Exit::Ok,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn advise(&mut self, s: impl Into<String>) {
        self.advisories.push(s.into());
    }

    /// Marks the run as a failed check unless `ok`.
    pub fn require(&mut self, ok: bool) {
        if !ok {
            self.exit = Exit::PropertyFailed;
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": Value::Object(self.inputs.clone()),
            "results": Value::Object(self.results.clone()),
            "advisories": self.advisories,
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for l in &self.text {
            out.push_str(l);
            out.push('\n');
        }
        for a in &self.advisories {
            out.push_str("note: ");
            out.push_str(a);
            out.push('\n');
        }
        out
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn vector_text(v: &SparseVec, labels: &[String]) -> String {
    format_lincomb(v, labels)
}

/// `{dim, basis}` with basis vectors written over `labels`.
pub fn subspace_json(s: &Subspace, labels: &[String]) -> Value {
    json!({
        "dim": s.dim(),
        "basis": s.rows().iter().map(|v| vector_text(v, labels)).collect::<Vec<_>>(),
    })
}

pub fn subspace_text(s: &Subspace, labels: &[String]) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = s.rows().iter().map(|v| vector_text(v, labels)).collect();
    format!("span{{{}}}", parts.join(", "))
}

/// Rows of exact entries as strings.
pub fn matrix_json(m: &Matrix) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| format_scalar(m.get(i, j))).collect())
        .collect();
    json!(rows)
}

pub fn algebra_json(a: &HomNAlgebra) -> Value {
    json!({
        "name": a.name(),
        "arity": a.arity(),
        "dim": a.dim(),
        "labels": a.labels(),
    })
}
