use std::sync::Arc;

use homnalg::exactla::Subspace;
use homnalg::extensions::condition2_check;
use homnalg::format::print_algebra;
use homnalg::{AlgebraRef, HomNAlgebra};
use serde_json::{json, Value};

use crate::args::{Emit, Input};
use crate::input::{load, subspace_spec, Loaded};
use crate::report::{algebra_json, subspace_json, subspace_text, vector_text, yes_no, CliResult, Report};

/// Shown per failing identity; the count is always complete.
const WITNESSES: usize = 3;

fn tuple_text(t: &[usize], labels: &[String]) -> String {
    let names: Vec<&str> = t.iter().map(|&i| labels[i].as_str()).collect();
    format!("[{}]", names.join(", "))
}

pub fn check(input: &Input, r: &mut Report) -> CliResult<()> {
    let loaded = load(input, false)?;
    let selected: Vec<&homnalg::format::Entry<AlgebraRef>> = match &input.algebra {
        Some(_) => {
            let a = loaded.algebra()?;
            loaded.doc.algebras.iter().filter(|e| Arc::ptr_eq(&e.value, &a)).collect()
        }
        None => loaded.doc.algebras.iter().collect(),
    };
    let mut all_ok = true;
    let mut algebras = Vec::new();
    for e in selected {
        let a = &e.value;
        let fi = a.validate_fundamental_identity()?;
        let mu = a.validate_multiplicative()?;
        let ok = fi.is_empty() && mu.is_empty();
        all_ok &= ok;
        let witnesses = |vs: &[homnalg::algebra::Violation]| -> Vec<Value> {
            vs.iter()
                .take(WITNESSES)
                .map(|v| json!({"tuple": tuple_text(&v.tuple, a.labels()), "difference": vector_text(&v.difference, a.labels())}))
                .collect()
        };
        algebras.push(json!({
            "name": e.name,
            "arity": a.arity(),
            "dim": a.dim(),
            "valid": ok,
            "skew": a.flags().skew,
            "fundamental_identity": {"violations": fi.len(), "witnesses": witnesses(&fi)},
            "multiplicative": {"violations": mu.len(), "witnesses": witnesses(&mu)},
        }));
        if ok {
            r.line(format!("{}: valid (arity {}, dim {})", e.name, a.arity(), a.dim()));
        }
        for (what, vs) in [("fundamental identity", &fi), ("multiplicativity", &mu)] {
            if let Some(v) = vs.first() {
                r.line(format!(
                    "{}: {what} fails on {} tuple(s), first at {} with difference {}",
                    e.name,
                    vs.len(),
                    tuple_text(&v.tuple, a.labels()),
                    vector_text(&v.difference, a.labels())
                ));
            }
        }
    }
    let mut morphisms = Vec::new();
    if input.algebra.is_none() {
        for e in &loaded.doc.morphisms {
            let c = e.value.check()?;
            let ok = c.is_valid();
            all_ok &= ok;
            let first = c.bracket_violations.first().map(|v| tuple_text(&v.tuple, e.value.source().labels()));
            morphisms.push(json!({
                "name": e.name,
                "source": e.value.source().name(),
                "target": e.value.target().name(),
                "valid": ok,
                "bracket_violations": c.bracket_violations.len(),
                "first_violation": first,
                "alpha_commutes": c.alpha_commutes,
            }));
            if ok {
                r.line(format!("{}: valid morphism {} -> {}", e.name, e.value.source().name(), e.value.target().name()));
            } else {
                r.line(format!(
                    "{}: not a morphism ({} bracket violation(s){}, twist commutes: {})",
                    e.name,
                    c.bracket_violations.len(),
                    first.map(|t| format!(", first at {t}")).unwrap_or_default(),
                    yes_no(c.alpha_commutes)
                ));
            }
        }
    }
    r.set("algebras", algebras);
    r.set("morphisms", morphisms);
    r.set("valid", all_ok);
    r.require(all_ok);
    Ok(())
}

fn subspace_result(r: &mut Report, key: &str, title: &str, s: &Subspace, a: &HomNAlgebra) {
    r.set(key, subspace_json(s, a.labels()));
    r.line(format!("{title} of {}: {} (dim {})", a.name(), subspace_text(s, a.labels()), s.dim()));
}

pub fn center(input: &Input, r: &mut Report) -> CliResult<()> {
    let a = load(input, true)?.algebra()?;
    subspace_result(r, "center", "center", &a.center(), &a);
    Ok(())
}

pub fn commutator(input: &Input, specs: &[String], r: &mut Report) -> CliResult<()> {
    let a = load(input, true)?.algebra()?;
    let ms: Vec<Subspace> = if specs.is_empty() {
        vec![Subspace::full(a.dim()); a.arity()]
    } else {
        specs.iter().map(|s| subspace_spec(s, &a)).collect::<CliResult<_>>()?
    };
    r.inputs.insert("ideals".into(), json!(specs));
    let c = a.commutator_subspace(&ms)?;
    subspace_result(r, "commutator", "commutator", &c, &a);
    Ok(())
}

pub fn perfect(input: &Input, r: &mut Report) -> CliResult<()> {
    let a = load(input, true)?.algebra()?;
    let d = a.derived_subspace();
    let p = d.dim() == a.dim();
    r.set("perfect", p);
    r.set("derived_dim", d.dim());
    r.set("dim", a.dim());
    r.line(format!("perfect: {} (dim [L,…,L] = {}, dim L = {})", yes_no(p), d.dim(), a.dim()));
    r.require(p);
    Ok(())
}

pub fn ann(input: &Input, r: &mut Report) -> CliResult<()> {
    let a = load(input, true)?.algebra()?;
    subspace_result(r, "ann", "annihilator", &a.ann_subspace(), &a);
    Ok(())
}

fn emit_algebra(r: &mut Report, emit: &Emit, a: &HomNAlgebra) {
    r.set("algebra", algebra_json(a));
    if emit.emit {
        let text = print_algebra(a);
        r.set("hna", text.clone());
        r.line(text.trim_end().to_string());
    }
}

pub fn lie_quotient(input: &Input, emit: &Emit, r: &mut Report) -> CliResult<()> {
    let a = load(input, true)?.algebra()?;
    let ann = a.ann_subspace();
    let (q, _) = a.lie_quotient()?;
    r.set("ann_dim", ann.dim());
    r.set("valid", q.is_valid());
    r.line(format!("{} / ann: dim {} (ann has dim {}), valid: {}", a.name(), q.dim(), ann.dim(), yes_no(q.is_valid())));
    emit_algebra(r, emit, &q);
    Ok(())
}

pub fn quotient(input: &Input, spec: &str, emit: &Emit, r: &mut Report) -> CliResult<()> {
    let a = load(input, true)?.algebra()?;
    let m = subspace_spec(spec, &a)?;
    r.inputs.insert("ideal".into(), json!(spec));
    let (q, p) = a.quotient_algebra(&m)?;
    r.set("valid", q.is_valid());
    r.set("projection", crate::report::matrix_json(p.matrix()));
    r.line(format!("{} / ({}): dim {}, valid: {}", a.name(), subspace_text(&m, a.labels()), q.dim(), yes_no(q.is_valid())));
    emit_algebra(r, emit, &q);
    r.require(q.is_valid());
    Ok(())
}

pub fn dnl(input: &Input, emit: &Emit, r: &mut Report) -> CliResult<()> {
    let a = load(input, true)?.algebra()?;
    let d = a.derived_hom_leibniz()?;
    r.set("valid", d.is_valid());
    r.line(format!("D_{}({}): dim {}, Hom-Leibniz: {}", a.arity() - 1, a.name(), d.dim(), yes_no(d.is_valid())));
    emit_algebra(r, emit, &d);
    r.require(d.is_valid());
    Ok(())
}

pub fn twist(input: &Input, emit: &Emit, r: &mut Report) -> CliResult<()> {
    let loaded: Loaded = load(input, true)?;
    let (gname, g) = loaded.morphism()?;
    let a = g.source().clone();
    if **g.target() != *a {
        return Err(crate::report::CliError::Usage(format!("`{gname}` must map an algebra to itself")));
    }
    let t = a.yau_twist(g.matrix(), format!("{}_{}", a.name(), gname))?;
    r.set("valid", t.is_valid());
    r.line(format!("{} twisted by {gname}: dim {}, valid: {}", a.name(), t.dim(), yes_no(t.is_valid())));
    emit_algebra(r, emit, &t);
    r.require(t.is_valid());
    Ok(())
}

pub fn cond2(input: &Input, r: &mut Report) -> CliResult<()> {
    let a = load(input, true)?.algebra()?;
    let holds = condition2_check(&a)?;
    r.set("condition2", holds);
    r.line(format!("condition (2) on {}: {}", a.name(), yes_no(holds)));
    r.require(holds);
    Ok(())
}
