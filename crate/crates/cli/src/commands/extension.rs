use homnalg::extensions::{
    centrally_closed_check, compose_extensions, induced_beta, lemma35_construction, lemma54_checks,
    pullback_extension, section_via_uce, thm58_isomorphism_check, uce, unicentrality_check, unicentrality_raw,
    universality_probe, ProbeMode, ProbeOutcome, UnicentralityReport,
};
use homnalg::homology::hl1;
use homnalg::{Error, Extension};
use serde_json::{json, Value};

use crate::args::{Emit, Input};
use crate::input::load;
use crate::report::{algebra_json, matrix_json, subspace_json, subspace_text, yes_no, CliError, CliResult, Report};

fn classification_text(e: &Extension) -> String {
    format!(
        "alpha-central: {}, central: {}",
        yes_no(e.is_alpha_central()),
        yes_no(e.is_central())
    )
}

fn extension_json(name: &str, e: &Extension) -> Value {
    json!({
        "name": name,
        "source": e.source().name(),
        "target": e.target().name(),
        "central": e.is_central(),
        "alpha_central": e.is_alpha_central(),
        "classification": e.classification().as_str(),
        "kernel": subspace_json(e.kernel(), e.source().labels()),
    })
}

pub fn uce_cmd(input: &Input, emit: &Emit, r: &mut Report) -> CliResult<()> {
    let a = load(input, true)?.algebra()?;
    let u = uce(&a)?;
    let ua = u.algebra();
    let id3 = homnalg::extensions::identity3_check(&u)?;
    let e = u.extension()?;
    r.set("dim", ua.dim());
    r.set("kernel", subspace_json(u.kernel(), ua.labels()));
    r.set("perfect", ua.is_perfect());
    r.set("central", e.is_central());
    r.set("identity3", id3);
    r.set("algebra", algebra_json(ua));
    r.line(format!(
        "uce({}): dim {}, kernel dim {}, perfect: {}, central: {}, identity (3): {}",
        a.name(),
        ua.dim(),
        u.kernel().dim(),
        yes_no(ua.is_perfect()),
        yes_no(e.is_central()),
        yes_no(id3)
    ));
    if emit.emit {
        let text = homnalg::format::print_algebra(ua);
        r.set("hna", text.clone());
        r.line(text.trim_end().to_string());
    }
    r.require(id3 && e.is_central());
    Ok(())
}

pub fn classify(input: &Input, r: &mut Report) -> CliResult<()> {
    let (name, e) = load(input, true)?.extension()?;
    r.set("extension", extension_json(&name, &e));
    r.line(format!("{name}: {} -> {}", e.source().name(), e.target().name()));
    r.line(classification_text(&e));
    r.line(format!("kernel: {}", subspace_text(e.kernel(), e.source().labels())));
    Ok(())
}

fn probe_json(outcome: &ProbeOutcome) -> Value {
    match outcome {
        ProbeOutcome::Skipped { reason } => json!({"outcome": "skipped", "reason": reason}),
        ProbeOutcome::Factored { h, unique } => {
            json!({"outcome": "factored", "unique": unique, "map": matrix_json(h.matrix())})
        }
        ProbeOutcome::Failed { witness } => json!({"outcome": "failed", "witness": witness}),
    }
}

pub fn beta(input: &Input, r: &mut Report) -> CliResult<()> {
    let (name, e) = load(input, true)?.extension()?;
    let u = uce(e.target())?;
    let b = induced_beta(&u, &e)?;
    r.set("lifts_u", b.lifts_u);
    r.set("preimage_independent", b.preimage_independent);
    r.set("unique", b.unique);
    r.set("beta", matrix_json(b.beta.matrix()));
    r.line(format!(
        "beta: uce({}) -> {}: lifts u: {}, independent of preimages: {}, unique: {}",
        e.target().name(),
        e.source().name(),
        yes_no(b.lifts_u),
        yes_no(b.preimage_independent),
        yes_no(b.unique)
    ));
    let probe = universality_probe(&u.extension()?, std::slice::from_ref(&e), ProbeMode::Central)?;
    let entry = &probe[0];
    r.set("probe", probe_json(&entry.outcome));
    r.line(format!(
        "universality probe towards {name}: {}",
        match &entry.outcome {
            ProbeOutcome::Skipped { reason } => format!("skipped ({reason})"),
            ProbeOutcome::Factored { unique, .. } => format!("factors, unique: {}", yes_no(*unique)),
            ProbeOutcome::Failed { witness } => format!("fails ({witness})"),
        }
    ));
    r.require(b.lifts_u && b.preimage_independent);
    Ok(())
}

pub fn pullback(input: &Input, emit: &Emit, r: &mut Report) -> CliResult<()> {
    let loaded = load(input, true)?;
    let maps = loaded.morphisms(2)?;
    let tau = Extension::new(maps[0].1.clone())?;
    let pi = Extension::new(maps[1].1.clone())?;
    let p = pullback_extension(&tau, &pi)?;
    let to_second = Extension::new(p.to_second.clone()).ok();
    r.set("dim", p.algebra.dim());
    r.set("to_first", matrix_json(p.to_first.matrix()));
    r.set("to_second", matrix_json(p.to_second.matrix()));
    r.line(format!(
        "pullback of {} and {}: dim {}",
        maps[0].0,
        maps[1].0,
        p.algebra.dim()
    ));
    if let Some(q) = &to_second {
        r.set("to_second_classification", q.classification().as_str());
        r.line(format!("projection to {}: {}", pi.source().name(), classification_text(q)));
    }
    r.set("algebra", algebra_json(&p.algebra));
    if emit.emit {
        let text = homnalg::format::print_algebra(&p.algebra);
        r.set("hna", text.clone());
        r.line(text.trim_end().to_string());
    }
    Ok(())
}

pub fn compose(input: &Input, r: &mut Report) -> CliResult<()> {
    let loaded = load(input, true)?;
    let maps = loaded.morphisms(2)?;
    let outer = Extension::new(maps[0].1.clone())?;
    let inner = Extension::new(maps[1].1.clone())?;
    let c = compose_extensions(&outer, &inner)?;
    let name = format!("{}_{}", maps[0].0, maps[1].0);
    r.set("composite", extension_json(&name, &c));
    r.line(format!(
        "{} after {}: {} -> {}",
        maps[0].0,
        maps[1].0,
        c.source().name(),
        c.target().name()
    ));
    r.line(classification_text(&c));
    if outer.is_central() && inner.is_central() && !outer.source().is_perfect() {
        r.advise(format!("{} is not perfect; an alpha-central composite is not guaranteed", outer.source().name()));
    }
    Ok(())
}

pub fn section(input: &Input, r: &mut Report) -> CliResult<()> {
    let (name, e) = load(input, true)?.extension()?;
    match section_via_uce(&e) {
        Ok(Some(s)) => {
            r.set("section", matrix_json(s.matrix()));
            r.line(format!("{name} splits: section {} -> {}", e.target().name(), e.source().name()));
        }
        Ok(None) => {
            let h = hl1(e.target())?.dim();
            r.set("section", Value::Null);
            r.set("hl1_dim", h);
            r.line(format!("no section through the universal extension (dim HL_1({}) = {h})", e.target().name()));
        }
        Err(err @ (Error::NotPerfect { .. } | Error::NotCentral)) => {
            r.set("section", Value::Null);
            r.advise(err.to_string());
            r.line(format!("no section through the universal extension: {err}"));
        }
        Err(err) => return Err(CliError::Library(err)),
    }
    if e.is_central() {
        let l = lemma35_construction(&e)?;
        r.set("two_lifts", json!({"both_lift": l.both_lift, "distinct": l.distinct}));
        r.line(format!(
            "two lifts into {}: both lift: {}, distinct: {}",
            l.product.name(),
            yes_no(l.both_lift),
            yes_no(l.distinct)
        ));
    }
    Ok(())
}

fn unicentral_json(u: &UnicentralityReport, labels: &[String]) -> Value {
    json!({
        "holds": u.holds,
        "image": subspace_json(&u.lhs, labels),
        "center": subspace_json(&u.rhs, labels),
    })
}

pub fn unicentral(input: &Input, r: &mut Report) -> CliResult<()> {
    let (name, e) = load(input, true)?.extension()?;
    let labels = e.target().labels();
    let tw = unicentrality_check(&e)?;
    let raw = unicentrality_raw(&e)?;
    r.set("twisted", unicentral_json(&tw, labels));
    r.set("untwisted", unicentral_json(&raw, labels));
    r.set(
        "hypotheses",
        json!({
            "target_perfect": tw.target_perfect,
            "target_alpha_injective": tw.target_alpha_injective,
            "source_condition2": tw.source_condition2,
            "central": e.is_central(),
        }),
    );
    r.line(format!(
        "{name}: f(Z(aK)) = {}, Z(aL) = {}, equal: {}",
        subspace_text(&tw.lhs, labels),
        subspace_text(&tw.rhs, labels),
        yes_no(tw.holds)
    ));
    r.line(format!(
        "untwisted: f(Z(K)) = {}, Z(L) = {}, equal: {}",
        subspace_text(&raw.lhs, labels),
        subspace_text(&raw.rhs, labels),
        yes_no(raw.holds)
    ));
    if !(tw.target_perfect && tw.target_alpha_injective && tw.source_condition2 && e.is_central()) {
        r.advise("the hypotheses that force equality are not all met");
    }
    if e.is_central() && tw.target_perfect {
        let l = lemma54_checks(&e)?;
        r.set(
            "lemma",
            json!({
                "derived_plus_kernel": l.derived_plus_kernel,
                "preimage_dim": l.preimage_dim,
                "brackets_in_alpha_kernel": l.brackets_in_alpha_kernel,
            }),
        );
        r.line(format!(
            "K = [K,…,K] + Ker f: {}; brackets through a^-1(Z(aL)) land in Ker a: {}",
            yes_no(l.derived_plus_kernel),
            yes_no(l.brackets_in_alpha_kernel)
        ));
    }
    r.require(tw.holds);
    Ok(())
}

pub fn closed(input: &Input, r: &mut Report) -> CliResult<()> {
    let a = load(input, true)?.algebra()?;
    let c = centrally_closed_check(&a)?;
    r.set("centrally_closed", c);
    r.line(format!("{} centrally closed: {}", a.name(), yes_no(c)));
    r.require(c);
    Ok(())
}

pub fn thm58(input: &Input, r: &mut Report) -> CliResult<()> {
    let a = load(input, true)?.algebra()?;
    let t = thm58_isomorphism_check(&a)?;
    r.set("holds", t.holds);
    r.set("dims", json!([t.dims.0, t.dims.1]));
    r.set("well_defined", t.well_defined);
    r.set("bijective", t.bijective);
    r.set("morphism", t.is_morphism);
    r.set(
        "hypotheses",
        json!({
            "perfect": t.perfect,
            "alpha_injective": t.alpha_injective,
            "condition2": t.condition2,
            "condition2_uce": t.condition2_uce,
        }),
    );
    r.line(format!(
        "quotients of dims {} and {}: well-defined: {}, bijective: {}, morphism: {}",
        t.dims.0,
        t.dims.1,
        yes_no(t.well_defined),
        yes_no(t.bijective),
        yes_no(t.is_morphism)
    ));
    r.line(format!("isomorphism: {}", yes_no(t.holds)));
    if !(t.perfect && t.alpha_injective && t.condition2 && t.condition2_uce) {
        r.advise("the hypotheses that force the isomorphism are not all met");
    }
    r.require(t.holds);
    Ok(())
}
