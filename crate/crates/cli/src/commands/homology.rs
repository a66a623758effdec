use homnalg::exactla::Subspace;
use homnalg::extensions::uce;
use homnalg::homology::{hl0, hl1, hl_general, HomologyGroup};
use homnalg::tensor_index::tensor_labels;
use homnalg::tensorprod::{phi_to_uce, prop46_sequence, psi_extension, psi_map, tensor_square, tensor_with_ideal, TensorPresentation};
use homnalg::{AlgebraRef, HomNAlgebra};
use serde_json::json;

use crate::args::{Emit, Input};
use crate::input::{load, subspace_spec};
use crate::report::{algebra_json, subspace_text, vector_text, yes_no, CliResult, Report};

fn homology_result(r: &mut Report, h: &HomologyGroup, labels: &[String]) {
    let reps: Vec<String> = h.representatives().iter().map(|v| vector_text(v, labels)).collect();
    r.set("degree", h.degree());
    r.set("dim", h.dim());
    r.set("cycles_dim", h.cycles().dim());
    r.set("boundaries_dim", h.boundaries().dim());
    r.set("representatives", reps);
    r.line(format!(
        "HL_{}: dim {} (cycles {}, boundaries {})",
        h.degree(),
        h.dim(),
        h.cycles().dim(),
        h.boundaries().dim()
    ));
}

/// Labels of the chain module in degree `k`: `L ⊗ (L^⊗(n−1))^⊗k`.
fn chain_labels(a: &HomNAlgebra, k: usize) -> Vec<String> {
    let factors = 1 + k * (a.arity() - 1);
    tensor_labels(a.labels(), factors)
}

pub fn hl0_cmd(input: &Input, r: &mut Report) -> CliResult<()> {
    let a = load(input, true)?.algebra()?;
    homology_result(r, &hl0(&a)?, a.labels());
    Ok(())
}

pub fn hl1_cmd(input: &Input, r: &mut Report) -> CliResult<()> {
    let a = load(input, true)?.algebra()?;
    let h = hl1(&a)?;
    a.limits().check("labelling chains", h.cycles().ambient_dim() as u128)?;
    homology_result(r, &h, &chain_labels(&a, 1));
    Ok(())
}

pub fn hl_cmd(input: &Input, degree: usize, r: &mut Report) -> CliResult<()> {
    let a = load(input, true)?.algebra()?;
    r.inputs.insert("degree".into(), json!(degree));
    let h = hl_general(&a, degree)?;
    homology_result(r, &h, &chain_labels(&a, degree));
    Ok(())
}

fn presentation(a: &AlgebraRef, spec: Option<&str>, slot: usize, r: &mut Report) -> CliResult<TensorPresentation> {
    match spec {
        None => Ok(tensor_square(a)?),
        Some(s) => {
            r.inputs.insert("ideal".into(), json!(s));
            r.inputs.insert("slot".into(), json!(slot));
            let m = subspace_spec(s, a)?;
            Ok(tensor_with_ideal(a, &m, slot)?)
        }
    }
}

pub fn tensor(input: &Input, spec: Option<&str>, slot: usize, emit: &Emit, r: &mut Report) -> CliResult<()> {
    let a = load(input, true)?.algebra()?;
    let t = presentation(&a, spec, slot, r)?;
    r.set("dim", t.dim());
    r.set("free_dim", t.free_dim());
    r.set("relations_dim", t.relations().dim());
    r.set("perfect", t.algebra().is_perfect());
    r.line(format!(
        "tensor product: dim {} (free part {}, relations {}), perfect: {}",
        t.dim(),
        t.free_dim(),
        t.relations().dim(),
        yes_no(t.algebra().is_perfect())
    ));
    r.set("algebra", algebra_json(t.algebra()));
    if emit.emit {
        let text = homnalg::format::print_algebra(t.algebra());
        r.set("hna", text.clone());
        r.line(text.trim_end().to_string());
    }
    Ok(())
}

pub fn psi(input: &Input, spec: Option<&str>, slot: usize, r: &mut Report) -> CliResult<()> {
    let a = load(input, true)?.algebra()?;
    let t = presentation(&a, spec, slot, r)?;
    let p = psi_map(&t)?;
    let valid = p.is_valid()?;
    let kernel = p.kernel();
    r.set("morphism", valid);
    r.set("kernel_dim", kernel.dim());
    r.set("image_dim", p.rank());
    r.set("target_dim", p.target().dim());
    r.line(format!(
        "psi: {} -> {}, morphism: {}, rank {}, kernel dim {}",
        t.algebra().name(),
        p.target().name(),
        yes_no(valid),
        p.rank(),
        kernel.dim()
    ));
    if t.all_full() {
        let e = psi_extension(&t)?;
        r.set("classification", e.classification().as_str());
        r.line(format!("onto {}: {}", e.target().name(), e.classification().as_str()));
        if !a.is_perfect() {
            r.advise(format!("{} is not perfect; psi is taken onto its derived subalgebra", a.name()));
        }
    }
    r.require(valid);
    Ok(())
}

pub fn phi(input: &Input, r: &mut Report) -> CliResult<()> {
    let a = load(input, true)?.algebra()?;
    let t = tensor_square(&a)?;
    let u = uce(&a)?;
    let rep = phi_to_uce(&t, &u)?;
    r.set("well_defined", rep.well_defined);
    r.set("surjective", rep.surjective);
    r.set("injective", rep.injective);
    r.set("tensor_dim", t.dim());
    r.set("uce_dim", u.algebra().dim());
    r.line(format!(
        "phi: tensor (dim {}) -> uce (dim {}): well-defined: {}, surjective: {}, injective: {}",
        t.dim(),
        u.algebra().dim(),
        yes_no(rep.well_defined),
        yes_no(rep.surjective),
        yes_no(rep.injective)
    ));
    r.advise("injectivity is observed on this input, not a general guarantee");
    r.require(rep.well_defined && rep.surjective);
    Ok(())
}

pub fn prop46(input: &Input, spec: &str, r: &mut Report) -> CliResult<()> {
    let a = load(input, true)?.algebra()?;
    r.inputs.insert("ideal".into(), json!(spec));
    let m: Subspace = subspace_spec(spec, &a)?;
    let rep = prop46_sequence(&a, &m)?;
    let exact = rep.exact();
    let matches = rep.kernels_match_homology();
    r.set("dims", json!(rep.dims));
    r.set("hl1_dims", json!(rep.hl1_dims));
    r.set("exact_at_second", rep.exact_at_second);
    r.set("exact_at_third", rep.exact_at_third);
    r.set("onto_last", rep.onto_last);
    r.set("exact", exact);
    r.set("kernels_match_homology", matches);
    r.line(format!("M = {}", subspace_text(&m, a.labels())));
    r.line(format!(
        "dims {} -> {} -> {} -> {}; exact: {}; kernel dims match HL_1: {}",
        rep.dims[0],
        rep.dims[1],
        rep.dims[2],
        rep.dims[3],
        yes_no(exact),
        yes_no(matches)
    ));
    r.require(exact && matches);
    Ok(())
}
