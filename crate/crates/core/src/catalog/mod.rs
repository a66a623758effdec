//! Named, validated algebras and extensions, each with the facts it is
//! expected to satisfy.

mod build;

use std::fmt;
use std::sync::Arc;

use crate::algebra::{AlgebraRef, Morphism};
use crate::error::{Error, Result};
use crate::exactla::{int, SparseVec, Subspace};
use crate::extensions::{condition2_check, unicentrality_check, unicentrality_raw, Classification, Extension};
use crate::homology::{hl0, hl1};

const ALGEBRAS: &[&str] = &[
    "rem32.L",
    "rem32.K",
    "ex37.L",
    "ex37.K",
    "ex37.F",
    "ex52.L",
    "ex52.K",
    "sec5.L",
    "sec5.K",
    "lem35.K",
    "abelian3",
    "leib3",
    "sl2",
    "sl2.twisted",
];

const MAPS: &[&str] = &[
    "rem32.pi",
    "ex37.pi",
    "ex37.rho",
    "ex37.pi_rho",
    "ex52.f",
    "sec5.f",
    "lem35.pi",
];

pub fn algebra_names() -> &'static [&'static str] {
    ALGEBRAS
}

pub fn map_names() -> &'static [&'static str] {
    MAPS
}

pub fn list_fixtures() -> Vec<&'static str> {
    ALGEBRAS.iter().chain(MAPS).copied().collect()
}

pub fn algebra(name: &str) -> Result<AlgebraRef> {
    let a = match name {
        "rem32.L" => build::rem32_l(),
        "rem32.K" => build::rem32_k(),
        "ex37.L" => build::ex37_l(),
        "ex37.K" => build::ex37_k(),
        "ex37.F" => build::ex37_f(),
        "ex52.L" => build::ex52_l(),
        "ex52.K" => build::ex52_k(),
        "sec5.L" => build::sec5_l(),
        "sec5.K" => build::sec5_k(),
        "lem35.K" => build::lem35_k(),
        "abelian3" => build::abelian3(),
        "leib3" => build::leib3(),
        "sl2" => build::sl2(),
        "sl2.twisted" => build::sl2_twisted(),
        _ => return Err(Error::UnknownFixture(name.to_string())),
    }?;
    Ok(Arc::new(a))
}

pub fn morphism(name: &str) -> Result<Morphism> {
    match name {
        "rem32.pi" => build::rem32_pi(),
        "ex37.pi" => build::ex37_pi(),
        "ex37.rho" => build::ex37_rho(),
        "ex37.pi_rho" => build::ex37_pi_rho(),
        "ex52.f" => build::ex52_f(),
        "sec5.f" => build::sec5_f(),
        "lem35.pi" => build::lem35_pi(),
        _ => Err(Error::UnknownFixture(name.to_string())),
    }
}

pub fn extension(name: &str) -> Result<Extension> {
    Extension::new(morphism(name)?)
}

#[derive(Clone, Debug)]
pub enum Payload {
    Algebra(AlgebraRef),
    Extension(Extension),
}

/// A property with its expected value. Subspaces are given by spanning
/// vectors with integer coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fact {
    Dim(usize),
    Perfect(bool),
    Center(Vec<SparseVec>),
    Hl0Dim(usize),
    Hl1Dim(usize),
    AlphaInjective(bool),
    Condition2(bool),
    Kernel(Vec<SparseVec>),
    Classified(Classification),
    /// `f(Z(K))` for an extension `f : K → L`
    ImageOfCenter(Vec<SparseVec>),
    /// `f(Z(K)) ⊊ Z(L)`
    CenterImageStrict(bool),
    /// `f(Z(α_K K)) = Z(α_L L)`
    Unicentral(bool),
}

impl Fact {
    pub fn property(&self) -> &'static str {
        match self {
            Fact::Dim(_) => "dim",
            Fact::Perfect(_) => "perfect",
            Fact::Center(_) => "center",
            Fact::Hl0Dim(_) => "hl0 dim",
            Fact::Hl1Dim(_) => "hl1 dim",
            Fact::AlphaInjective(_) => "alpha injective",
            Fact::Condition2(_) => "condition (2)",
            Fact::Kernel(_) => "kernel",
            Fact::Classified(_) => "classification",
            Fact::ImageOfCenter(_) => "image of center",
            Fact::CenterImageStrict(_) => "image of center strictly inside center",
            Fact::Unicentral(_) => "twisted centers correspond",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactOutcome {
    pub property: &'static str,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct FactReport {
    pub fixture: String,
    pub outcomes: Vec<FactOutcome>,
}

impl FactReport {
    pub fn all_pass(&self) -> bool {
        self.outcomes.iter().all(|o| o.pass)
    }
}

impl fmt::Display for FactReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            writeln!(
                f,
                "{} {}: {} (expected {}, got {})",
                if o.pass { "pass" } else { "FAIL" },
                self.fixture,
                o.property,
                o.expected,
                o.actual
            )?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub payload: Payload,
    pub provenance: &'static str,
    pub expected_facts: Vec<Fact>,
}

fn span(vectors: &[&[(usize, i64)]]) -> Vec<SparseVec> {
    vectors
        .iter()
        .map(|v| SparseVec::from_pairs(v.iter().map(|&(i, x)| (i, int(x)))))
        .collect()
}

fn description(name: &str) -> Option<(&'static str, Vec<Fact>)> {
    use Fact::*;
    let none = || Vec::new();
    Some(match name {
        "rem32.L" => (
            "ternary algebra on a1, a2 with [a_i,a_i,a_i] = a_i and zero twist",
            vec![Dim(2), Perfect(true), Center(none())],
        ),
        "rem32.K" => (
            "ternary algebra on b1, b2, b3 with [b_i,b_i,b_i] = b_i and zero twist",
            vec![Dim(3), Perfect(true), Center(none())],
        ),
        "rem32.pi" => (
            "b1 to 0, b2 to a1, b3 to a2: alpha-central but not central",
            vec![Kernel(span(&[&[(0, 1)]])), Classified(Classification::AlphaCentral)],
        ),
        "ex37.L" => (
            "ternary algebra with [b2,b1,b1] = b2, [b2,b2,b2] = b1 and zero twist",
            vec![Dim(2), Perfect(true), Center(none())],
        ),
        "ex37.K" => (
            "ternary algebra with [a2,a2,a2] = a1, [a3,a2,a2] = a3, [a3,a3,a3] = a2 and zero twist",
            vec![Dim(3), Perfect(true), Center(span(&[&[(0, 1)]])), Hl1Dim(24)],
        ),
        "ex37.F" => (
            "four-dimensional ternary algebra covering ex37.K, zero twist",
            vec![Dim(4), Perfect(true), Center(span(&[&[(0, 1)]]))],
        ),
        "ex37.pi" => (
            "a1 to 0, a2 to b1, a3 to b2",
            vec![Kernel(span(&[&[(0, 1)]])), Classified(Classification::Central)],
        ),
        "ex37.rho" => (
            "e1 to 0, e2 to a1, e3 to a2, e4 to a3",
            vec![Kernel(span(&[&[(0, 1)]])), Classified(Classification::Central)],
        ),
        "ex37.pi_rho" => (
            "composite of ex37.pi and ex37.rho: alpha-central, not central",
            vec![
                Kernel(span(&[&[(0, 1)], &[(1, 1)]])),
                Classified(Classification::AlphaCentral),
            ],
        ),
        "ex52.L" => (
            "perfect ternary algebra with [e1,e1,e1] = e1, [e1,e1,e2] = e2, [e1,e2,e1] = e3 and zero twist",
            vec![Dim(3), Perfect(true), Center(span(&[&[(2, 1)]])), Hl1Dim(24)],
        ),
        "ex52.K" => (
            "four-dimensional central cover of ex52.L, zero twist",
            vec![Dim(4), Perfect(true), Center(span(&[&[(3, 1)]]))],
        ),
        "ex52.f" => (
            "central extension whose image of the center misses Z(L)",
            vec![
                Kernel(span(&[&[(3, 1)]])),
                Classified(Classification::Central),
                ImageOfCenter(none()),
                CenterImageStrict(true),
            ],
        ),
        "sec5.L" => (
            "simple Lie 3-algebra on four generators twisted by diag(1,-1,1,-1); realized over the rationals",
            vec![Dim(4), Perfect(true), AlphaInjective(true), Center(none()), Condition2(true)],
        ),
        "sec5.K" => (
            "simple Lie 3-algebra on four generators twisted by diag(-1,1,-1,1); realized over the rationals",
            vec![Dim(4), Perfect(true), Center(none()), Condition2(true)],
        ),
        "sec5.f" => (
            "a1 to e2, a2 to e1, a3 to e4, a4 to -e3: central with trivial kernel",
            vec![
                Kernel(none()),
                Classified(Classification::Central),
                Unicentral(true),
            ],
        ),
        "lem35.K" => (
            "rem32.L times a central line with identity twist",
            vec![Dim(3), Perfect(false)],
        ),
        "lem35.pi" => (
            "projection of lem35.K onto rem32.L",
            vec![Kernel(span(&[&[(2, 1)]])), Classified(Classification::Central)],
        ),
        "abelian3" => (
            "abelian ternary algebra of dimension 2, twist swapping the basis",
            vec![Dim(2), Perfect(false), Center(span(&[&[(0, 1)], &[(1, 1)]])), Hl0Dim(2), Hl1Dim(8)],
        ),
        "leib3" => (
            "Leibniz 3-algebra [x,y,z] = [x,[y,z]] from the two-dimensional non-Lie Leibniz algebra, identity twist",
            vec![Dim(2), Condition2(false)],
        ),
        "sl2" => (
            "sl2 as a Hom-Leibniz algebra with identity twist",
            vec![Dim(3), Perfect(true), Center(none()), Hl1Dim(0), Condition2(true)],
        ),
        "sl2.twisted" => (
            "sl2 twisted by the automorphism h, 2e, f/2",
            vec![Dim(3), Perfect(true), AlphaInjective(true), Condition2(true)],
        ),
        _ => return None,
    })
}

/// Builds, validates and re-checks the named fixture.
pub fn get_fixture(name: &str) -> Result<Fixture> {
    let (provenance, expected_facts) =
        description(name).ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    let payload = if ALGEBRAS.contains(&name) {
        let a = algebra(name)?;
        a.require_valid()?;
        Payload::Algebra(a)
    } else {
        Payload::Extension(extension(name)?)
    };
    let fixture = Fixture {
        name: name.to_string(),
        payload,
        provenance,
        expected_facts,
    };
    let report = check_facts(&fixture)?;
    if !report.all_pass() {
        return Err(Error::Precondition(format!("fixture `{name}` fails its facts:\n{report}")));
    }
    Ok(fixture)
}

fn show_span(s: &Subspace) -> String {
    let rows: Vec<String> = s
        .rows()
        .iter()
        .map(|r| format!("{:?}", r.to_dense(s.ambient_dim()).iter().map(ToString::to_string).collect::<Vec<_>>()))
        .collect();
    format!("span{{{}}}", rows.join(", "))
}

fn check_facts(fixture: &Fixture) -> Result<FactReport> {
    let mut outcomes = Vec::new();
    for fact in &fixture.expected_facts {
        let (expected, actual) = evaluate(&fixture.payload, fact)?;
        outcomes.push(FactOutcome {
            property: fact.property(),
            pass: expected == actual,
            expected,
            actual,
        });
    }
    Ok(FactReport {
        fixture: fixture.name.clone(),
        outcomes,
    })
}

fn evaluate(payload: &Payload, fact: &Fact) -> Result<(String, String)> {
    let wrong = || Error::Precondition(format!("fact `{}` does not apply to this payload", fact.property()));
    let alg = || match payload {
        Payload::Algebra(a) => Ok(a),
        Payload::Extension(_) => Err(wrong()),
    };
    let ext = || match payload {
        Payload::Extension(e) => Ok(e),
        Payload::Algebra(_) => Err(wrong()),
    };
    let subspace = |dim: usize, v: &[SparseVec]| show_span(&Subspace::span_sparse(dim, v.iter().cloned()));
    Ok(match fact {
        Fact::Dim(d) => (d.to_string(), alg()?.dim().to_string()),
        Fact::Perfect(b) => (b.to_string(), alg()?.is_perfect().to_string()),
        Fact::Center(v) => {
            let a = alg()?;
            (subspace(a.dim(), v), show_span(&a.center()))
        }
        Fact::Hl0Dim(d) => (d.to_string(), hl0(alg()?)?.dim().to_string()),
        Fact::Hl1Dim(d) => (d.to_string(), hl1(alg()?)?.dim().to_string()),
        Fact::AlphaInjective(b) => (b.to_string(), alg()?.alpha_injective().to_string()),
        Fact::Condition2(b) => (b.to_string(), condition2_check(alg()?)?.to_string()),
        Fact::Kernel(v) => {
            let e = ext()?;
            (subspace(e.source().dim(), v), show_span(e.kernel()))
        }
        Fact::Classified(c) => (c.as_str().to_string(), ext()?.classification().as_str().to_string()),
        Fact::ImageOfCenter(v) => {
            let e = ext()?;
            (subspace(e.target().dim(), v), show_span(&unicentrality_raw(e)?.lhs))
        }
        Fact::CenterImageStrict(b) => {
            let r = unicentrality_raw(ext()?)?;
            let strict = r.lhs.is_subset_of(&r.rhs) && r.lhs.dim() < r.rhs.dim();
            (b.to_string(), strict.to_string())
        }
        Fact::Unicentral(b) => (b.to_string(), unicentrality_check(ext()?)?.holds.to_string()),
    })
}

/// Replays the facts of one fixture, or of all with `None`.
pub fn run_expected_facts(name: Option<&str>) -> Result<Vec<FactReport>> {
    let names: Vec<&str> = match name {
        Some(n) => vec![n],
        None => list_fixtures(),
    };
    names
        .into_iter()
        .map(|n| {
            let (provenance, expected_facts) =
                description(n).ok_or_else(|| Error::UnknownFixture(n.to_string()))?;
            let payload = if ALGEBRAS.contains(&n) {
                Payload::Algebra(algebra(n)?)
            } else {
                Payload::Extension(extension(n)?)
            };
            check_facts(&Fixture {
                name: n.to_string(),
                payload,
                provenance,
                expected_facts,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_loads_and_passes() {
        for name in list_fixtures() {
            let f = get_fixture(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(!f.provenance.is_empty());
        }
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert_eq!(get_fixture("nope").unwrap_err(), Error::UnknownFixture("nope".into()));
        assert!(algebra("ex37.pi").is_err());
        assert!(morphism("ex37.K").is_err());
    }

    #[test]
    fn stated_tables() {
        let k = algebra("rem32.K").unwrap();
        for i in 0..3 {
            assert_eq!(k.bracket_basis(&[i, i, i]), Some(&SparseVec::unit(i)));
        }
        assert_eq!(k.table().len(), 3);
        assert!(k.alpha().is_zero());

        let f = algebra("ex37.F").unwrap();
        assert_eq!(f.bracket_basis(&[2, 1, 1]), Some(&SparseVec::unit(0)));
        assert_eq!(f.bracket_basis(&[2, 2, 2]), Some(&SparseVec::unit(1)));
        assert_eq!(f.bracket_basis(&[3, 2, 2]), Some(&SparseVec::unit(3)));
        assert_eq!(f.bracket_basis(&[3, 3, 3]), Some(&SparseVec::unit(2)));
        assert_eq!(f.table().len(), 4);
    }

    #[test]
    fn composite_matches_stated_images() {
        let m = morphism("ex37.pi_rho").unwrap();
        let images: Vec<SparseVec> = (0..4).map(|i| m.column(i).clone()).collect();
        assert_eq!(images, vec![SparseVec::new(), SparseVec::new(), SparseVec::unit(0), SparseVec::unit(1)]);
    }

    #[test]
    fn reports_render() {
        let r = run_expected_facts(Some("ex52.f")).unwrap();
        assert!(r[0].all_pass());
        assert!(r[0].to_string().contains("pass ex52.f: classification"));
    }
}
