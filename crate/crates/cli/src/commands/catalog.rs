use homnalg::catalog::{self, Payload};
use homnalg::format::{print_algebra, print_morphism};
use serde_json::json;

use crate::report::{CliResult, Report};

pub fn run(name: Option<&str>, facts: bool, r: &mut Report) -> CliResult<()> {
    if let Some(n) = name {
        r.inputs.insert("name".into(), json!(n));
    }
    r.inputs.insert("facts".into(), json!(facts));

    if facts {
        let reports = catalog::run_expected_facts(name)?;
        let mut all = true;
        let mut out = Vec::new();
        for rep in &reports {
            all &= rep.all_pass();
            for o in &rep.outcomes {
                out.push(json!({
                    "fixture": rep.fixture,
                    "property": o.property,
                    "expected": o.expected,
                    "actual": o.actual,
                    "pass": o.pass,
                }));
            }
            r.line(rep.to_string().trim_end().to_string());
        }
        r.set("facts", out);
        r.set("all_pass", all);
        r.require(all);
        return Ok(());
    }

    match name {
        None => {
            let mut list = Vec::new();
            for n in catalog::list_fixtures() {
                let f = catalog::get_fixture(n)?;
                let kind = match f.payload {
                    Payload::Algebra(_) => "algebra",
                    Payload::Extension(_) => "extension",
                };
                r.line(format!("{n:<12} {kind:<9} {}", f.provenance));
                list.push(json!({"name": n, "kind": kind, "description": f.provenance}));
            }
            r.set("fixtures", list);
        }
        Some(n) => {
            let f = catalog::get_fixture(n)?;
            r.set("name", n);
            r.set("description", f.provenance);
            r.line(format!("# {}", f.provenance));
            let text = match &f.payload {
                Payload::Algebra(a) => print_algebra(a),
                Payload::Extension(e) => {
                    let mut t = print_algebra(e.source());
                    t.push('\n');
                    t.push_str(&print_algebra(e.target()));
                    t.push('\n');
                    t.push_str(&print_morphism(n, e.map()));
                    t
                }
            };
            r.line(text.trim_end().to_string());
            r.set("hna", text);
        }
    }
    Ok(())
}
