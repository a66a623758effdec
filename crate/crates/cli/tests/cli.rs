use std::path::PathBuf;
use std::process::Command;

use homnalg::format::parse_document;
use serde_json::Value;

fn example(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name).display().to_string()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn homnalg(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_homnalg"))
        .args(args)
        .env_remove("HOMNALG_MAX_OPS")
        .output()
        .unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let r = homnalg(&full);
    (r.code, serde_json::from_str(&r.stdout).unwrap())
}

#[test]
fn check_accepts_every_sample() {
    for f in ["ex37.hna", "rem32.hna", "ex52.hna", "sec5.hna", "lem35.hna", "sl2.hna", "small.hna"] {
        let r = homnalg(&["check", &example(f)]);
        assert_eq!(r.code, 0, "{f}: {}{}", r.stdout, r.stderr);
    }
}

#[test]
fn check_reports_violations_with_witnesses() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let text = std::fs::read_to_string(example("sec5.hna")).unwrap();
    let bad = dir.join("cli_bad_sec5.hna");
    std::fs::write(&bad, text.replacen("bracket [a2, a3, a4] = -a1;", "bracket [a2, a3, a4] = a1;", 1)).unwrap();
    let (code, v) = json(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(v.to_string().contains("false"));
}

#[test]
fn center_and_classify_on_ex37() {
    let r = homnalg(&["center", "--algebra", "K", &example("ex37.hna")]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("span{1*a1}"));

    let (code, v) = json(&["classify", "--morphism", "pi_rho", &example("ex37.hna")]);
    assert_eq!(code, 0);
    let e = &v["results"]["extension"];
    assert_eq!(e["central"], false);
    assert_eq!(e["alpha_central"], true);
    assert_eq!(e["kernel"]["dim"], 2);
    assert_eq!(v["command"], "classify");
}

#[test]
fn structural_commands() {
    let ex52 = example("ex52.hna");
    assert_eq!(homnalg(&["perfect", "--algebra", "L", &ex52]).code, 0);
    assert_eq!(homnalg(&["perfect", "--algebra", "A", &example("small.hna")]).code, 1);

    let (_, v) = json(&["commutator", "--algebra", "L", "--ideal", "all", "--ideal", "all", "--ideal", "e3", &ex52]);
    assert_eq!(v["results"]["commutator"]["dim"], 0, "{v}");

    let (code, v) = json(&["quotient", "--algebra", "L", "--ideal", "e3", &ex52, "--emit"]);
    assert_eq!(code, 0);
    let hna = v["results"]["hna"].as_str().unwrap();
    assert_eq!(parse_document(hna).unwrap().algebras[0].value.dim(), 2);

    let r = homnalg(&["dnl", "--algebra", "L", &example("sec5.hna")]);
    assert!(r.stdout.contains("dim 16"), "{}", r.stdout);

    let (_, v) = json(&["ann", "--algebra", "L", &example("sec5.hna")]);
    assert_eq!(v["results"]["ann"]["dim"], 0, "{v}");

    assert_eq!(homnalg(&["cond2", "--algebra", "K", &example("sec5.hna")]).code, 0);
    assert_eq!(homnalg(&["cond2", "--algebra", "N", &example("small.hna")]).code, 1);

    let r = homnalg(&["twist", "--morphism", "g", &example("sl2.hna"), "--emit"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("valid: yes"));
}

#[test]
fn homology_commands() {
    let r = homnalg(&["hl1", "--algebra", "K", &example("ex37.hna")]);
    assert!(r.stdout.contains("dim 24"), "{}", r.stdout);
    let (_, v) = json(&["hl0", "--algebra", "L", &example("ex52.hna")]);
    assert_eq!(v["results"]["dim"], 0, "{v}");
    let (_, v) = json(&["hl", "--algebra", "A", "--degree", "2", &example("small.hna")]);
    // abelian: every chain in L^{⊗5} is a cycle and nothing bounds
    assert_eq!(v["results"]["dim"], 2u64.pow(1 + 2 * 2), "{v}");
}

#[test]
fn extension_commands() {
    let ex37 = example("ex37.hna");
    let (code, v) = json(&["uce", "--algebra", "L", &ex37]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["dim"], 8);
    assert_eq!(v["results"]["kernel"]["dim"], 6);

    let (code, v) = json(&["beta", "--morphism", "pi", &ex37]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["unique"], true);
    assert_eq!(v["results"]["probe"]["outcome"], "factored");

    let r = homnalg(&["compose", "--morphism", "pi", "--morphism", "rho", &ex37]);
    assert!(r.stdout.contains("alpha-central: yes, central: no"), "{}", r.stdout);

    let (_, v) = json(&["pullback", "--morphism", "pi", "--morphism", "pi", &ex37]);
    assert_eq!(v["results"]["dim"], 4);

    let r = homnalg(&["section", "--morphism", "pi", &example("lem35.hna")]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("distinct: yes"), "{}", r.stdout);

    let (code, v) = json(&["unicentral", &example("ex52.hna")]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["twisted"]["holds"], true);
    assert_eq!(v["results"]["untwisted"]["holds"], false);

    assert_eq!(homnalg(&["closed", "--algebra", "S", &example("sl2.hna")]).code, 0);
    assert_eq!(homnalg(&["thm58", "--algebra", "L", &example("sec5.hna")]).code, 0);
}

#[test]
fn tensor_commands() {
    let sec5 = example("sec5.hna");
    let (_, v) = json(&["tensor", "--algebra", "L", &sec5]);
    assert_eq!(v["results"]["dim"], 4, "{v}");
    let r = homnalg(&["psi", "--algebra", "L", &sec5]);
    assert!(r.stdout.contains("central"), "{}", r.stdout);
    let (code, v) = json(&["phi", "--algebra", "L", &example("ex52.hna")]);
    assert_eq!(code, 0);
    assert!(!v["advisories"].as_array().unwrap().is_empty());
    let r = homnalg(&["prop46", "--algebra", "L", "--ideal", "e2, e3", &example("ex52.hna")]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("76 -> 24 -> 0 -> 0"), "{}", r.stdout);
}

#[test]
fn catalog_listing_and_facts() {
    let (code, v) = json(&["catalog"]);
    assert_eq!(code, 0);
    assert!(v["results"]["fixtures"].as_array().unwrap().len() >= 10);
    let r = homnalg(&["catalog", "sl2"]);
    assert!(parse_document(&r.stdout).is_ok());
    assert_eq!(homnalg(&["catalog", "--facts"]).code, 0);
    assert_eq!(homnalg(&["check", "--fixture", "ex37.pi_rho"]).code, 0);
}

#[test]
fn errors_go_to_stderr_or_json() {
    let r = homnalg(&["center", "/no/such/file.hna"]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.starts_with("error:"));

    let (code, v) = json(&["center", "/no/such/file.hna"]);
    assert_eq!(code, 2);
    assert!(v["results"]["error"]["kind"].is_string());

    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let bad = dir.join("cli_syntax.hna");
    std::fs::write(&bad, "algebra L {\n  arity 2;\n  dim ;\n}\n").unwrap();
    let (code, v) = json(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["results"]["error"]["line"], 3);

    assert_eq!(homnalg(&["center", &example("ex37.hna")]).code, 2, "ambiguous algebra");
    assert_eq!(homnalg(&["center", "--fixture", "sl2", &example("sl2.hna")]).code, 2);
}
