//! Sub-command implementations behind the `qlogic` binary. Each returns a
//! [`Report`]; argument parsing lives in the binary.

use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::catalog::{self, Generator};
use crate::dynamics::{sasaki_projection, MeasurementSetup};
use crate::format::LatticeDocument;
use crate::hull::{self, IdealLattice};
use crate::lattice::{AnyLattice, Elem, FiniteLattice, OrthoLattice};
use crate::quantaloid::{
    self, functor_g, lift_ideals, lift_states, nonfaithful_search, powerset_lattice, quantale_laws_check,
    validate_dcheyt, SupMorphism,
};
use crate::report::Report;
use crate::set::ElemSet;
use crate::verdict::Verdict;
use crate::Error;

/// Success: every check passed.
pub const EXIT_OK: i32 = 0;
/// A law was violated and a witness printed.
pub const EXIT_VIOLATION: i32 = 1;
/// Bad input, bad usage, or a size guard was hit.
pub const EXIT_INPUT: i32 = 2;

impl Error {
    /// Exit status for a command that failed with this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Hull(hull::HullError::NotAFrame(..)) => EXIT_VIOLATION,
            _ => EXIT_INPUT,
        }
    }
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        }
    }
}

pub fn load(path: impl AsRef<Path>) -> Result<AnyLattice, Error> {
    Ok(LatticeDocument::read(path)?.to_lattice()?)
}

/// Resolves an element label.
pub fn element(l: &FiniteLattice, label: &str) -> Result<Elem, Error> {
    l.index_of(label)
        .ok_or_else(|| Error::Usage(format!("`{label}` is not an element of {}", l.name())))
}

/// Comma-separated labels, blanks ignored.
pub fn element_set(l: &FiniteLattice, list: &str) -> Result<ElemSet, Error> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| element(l, s))
        .collect()
}

fn require_ortho<'a>(l: &'a AnyLattice, what: &str) -> Result<&'a OrthoLattice, Error> {
    l.ortho()
        .ok_or_else(|| Error::Usage(format!("{what} needs an orthocomplement, and {} has none", l.name())))
}

fn hull_of(l: &AnyLattice, max_size: usize) -> Result<Arc<IdealLattice>, Error> {
    Ok(Arc::new(IdealLattice::enumerate(l.lattice().clone(), max_size)?))
}

fn labels(l: &FiniteLattice, s: ElemSet) -> Vec<Value> {
    s.iter().map(|e| Value::from(l.label(e))).collect()
}

pub fn validate(l: &AnyLattice) -> Report {
    let lat = l.lattice();
    let mut r = Report::new("validate", lat.name());
    r.check("lattice", &Verdict::Pass);
    if let Some(o) = l.ortho() {
        // construction already enforced these; kept so the report says so
        r.check("orthocomplement", &Verdict::Pass);
        r.flag("orthomodular", &o.orthomodularity_check());
    }
    r.info("elements", lat.size())
        .info("covers", lat.hasse().len())
        .info("bottom", lat.label(lat.bottom()))
        .info("top", lat.label(lat.top()));
    r
}

/// Structure flags. They describe the lattice and never fail the command.
pub fn report(l: &AnyLattice) -> Report {
    let lat = l.lattice();
    let mut r = Report::new("report", lat.name());
    r.check("lattice", &Verdict::Pass);
    for (name, v) in catalog::structure_checks(l) {
        r.flag(name, &v);
    }
    r.info("elements", lat.size())
        .info("atoms", labels(lat, lat.atoms().into_iter().collect()));
    r
}

pub fn hull(l: &AnyLattice, max_size: usize, list_ideals: bool) -> Result<Report, Error> {
    let di = hull_of(l, max_size)?;
    let lat = di.base();
    let mut r = Report::new("hull", lat.name());
    for (name, v) in hull::structure_checks(&di) {
        r.check(name, &v);
    }
    r.check("closure_agreement", &hull::closure_agreement(lat, Some(&di)));
    let principal = (0..di.len()).filter(|&i| di.is_principal(i)).count();
    r.info("ideals", di.len()).info("principal", principal);
    match hull::suprema_gap(&di) {
        Some((a, b)) => r.info(
            "suprema_gap",
            json!({"ideals": [di.label(a), di.label(b)], "join": di.label(di.join(a, b))}),
        ),
        None => r.info("suprema_gap", Value::Null),
    };
    if list_ideals {
        r.info(
            "ideal_list",
            (0..di.len()).map(|i| Value::from(di.label(i))).collect::<Vec<_>>(),
        );
    }
    Ok(r)
}

/// The measurement with eigenproperty `b`: its outcome table, the laws of
/// `φ_b` and `φ_b'`, and optionally the image of a state or property set.
/// On a lattice that is not orthomodular the laws are still evaluated and
/// the report fails with the orthomodularity witness.
pub fn dynamics(l: &AnyLattice, b: &str, input: Option<&str>, max_size: usize) -> Result<Report, Error> {
    let o = require_ortho(l, "dynamics")?;
    let lat = o.lattice();
    let b = element(lat, b)?;
    let bp = o.ortho(b);
    let mut r = Report::new("dynamics", lat.name());
    let om = o.orthomodularity_check();
    r.check("orthomodular", &om);
    for p in [b, bp] {
        let table: Vec<Elem> = lat.elements().map(|a| sasaki_projection(o, p, a)).collect();
        r.check(
            format!("phi[{}]_preserves_joins", lat.label(p)),
            &quantaloid::validate_sup_morphism(lat, lat, &table),
        );
        r.check(format!("phi[{}]_adjunction", lat.label(p)), &adjunction_at(o, p));
    }
    r.info("b", lat.label(b)).info("b'", lat.label(bp));
    let rows: Vec<Value> = lat
        .elements()
        .map(|a| {
            let (x, y) = (sasaki_projection(o, b, a), sasaki_projection(o, bp, a));
            json!({
                "a": lat.label(a),
                "phi_b": lat.label(x),
                "phi_b'": lat.label(y),
                "strongest": lat.label(lat.join(x, y)),
            })
        })
        .collect();
    r.info("outcomes", rows);
    if !om.is_pass() {
        return Ok(r);
    }
    let setup = MeasurementSetup::new(o.clone(), b)?;
    r.flag("state_space", setup.state_level());
    if let Some(list) = input {
        let set = element_set(lat, list)?;
        r.info("input", labels(lat, set));
        let atoms: ElemSet = lat.atoms().into_iter().collect();
        if set.is_subset(atoms) && setup.state_level().is_pass() {
            r.info("states_after", labels(lat, setup.pm_states(set)?));
        }
        let di = hull_of(l, max_size)?;
        let a = di.closure(set);
        r.info("ideal", di.label(a))
            .info("ideal_after", di.label(setup.pm_ideals(&di, a)));
    }
    Ok(r)
}

fn adjunction_at(o: &OrthoLattice, b: Elem) -> Verdict {
    let l = o.lattice();
    for a in l.elements() {
        for c in l.elements() {
            let lhs = l.leq(sasaki_projection(o, b, a), c);
            let rhs = l.leq(a, crate::dynamics::sasaki_hook(o, b, c));
            if lhs != rhs {
                return Verdict::fail(
                    [l.label(a), l.label(c)],
                    format!("phi({a}) <= {c} is {lhs} but {a} <= hook({c}) is {rhs}", a = l.label(a), c = l.label(c)),
                );
            }
        }
    }
    Verdict::Pass
}

/// The three commuting squares for one eigenproperty, or for all of them.
pub fn diagrams(l: &AnyLattice, b: Option<&str>, max_size: usize) -> Result<Report, Error> {
    let o = require_ortho(l, "diagrams")?;
    let lat = o.lattice();
    let om = o.orthomodularity_check();
    if !om.is_pass() {
        let mut r = Report::new("diagrams", lat.name());
        r.check("orthomodular", &om);
        return Ok(r);
    }
    let setups = match b {
        Some(b) => vec![MeasurementSetup::new(o.clone(), element(lat, b)?)?],
        None => MeasurementSetup::all(o)?,
    };
    let di = hull_of(l, max_size)?;
    let mut r = Report::new("diagrams", lat.name());
    let mut skipped = Vec::new();
    for m in &setups {
        let d = m.verify_diagrams_with(&di);
        let tag = lat.label(m.b());
        match &d.state_square {
            Ok(v) => {
                r.check(format!("state_square[{tag}]"), v);
            }
            Err(why) => skipped.push(Value::from(format!("state_square[{tag}]: {why}"))),
        }
        r.check(format!("ideal_square[{tag}]"), &d.ideal_square);
        r.check(format!("factorization[{tag}]"), &d.factorization);
    }
    if !skipped.is_empty() {
        r.info("skipped", skipped);
    }
    Ok(r)
}

/// Which carrier the quantale acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// Sets of states (atoms).
    States,
    /// Distributive ideals.
    Ideals,
}

impl std::str::FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "states" => Ok(Level::States),
            "ideals" => Ok(Level::Ideals),
            _ => Err(Error::Usage(format!("unknown level `{s}`, expected states or ideals"))),
        }
    }
}

/// Generators are `id` or eigenproperty labels; each label stands for the
/// transition map of that measurement.
pub fn quantale(
    l: &AnyLattice,
    generators: &str,
    level: Level,
    bound: usize,
    max_size: usize,
) -> Result<Report, Error> {
    let o = require_ortho(l, "quantale")?;
    let lat = o.lattice();
    let names: Vec<&str> = generators.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if names.is_empty() {
        return Err(Error::Usage("no generators given".into()));
    }
    let (carrier, di) = match level {
        Level::States => {
            let atoms: Vec<String> = lat.atoms().iter().map(|&p| lat.label(p).to_owned()).collect();
            if atoms.len() >= 16 {
                return Err(Error::Usage(format!("{} states is too many to tabulate", atoms.len())));
            }
            (Arc::new(powerset_lattice(format!("P({})", lat.name()), &atoms)), None)
        }
        Level::Ideals => {
            let di = hull_of(l, max_size)?;
            (Arc::new(di.order().clone()), Some(di))
        }
    };
    let mut gens = Vec::new();
    for name in &names {
        if *name == "id" {
            gens.push(SupMorphism::identity(carrier.clone()));
            continue;
        }
        let m = MeasurementSetup::new(o.clone(), element(lat, name)?)?;
        gens.push(match &di {
            None => {
                if let Verdict::Fail(w) = m.state_level() {
                    return Err(Error::Usage(format!("no state space: {}", w.detail)));
                }
                lift_states(&m, carrier.clone())?
            }
            Some(di) => lift_ideals(&m, di, carrier.clone())?,
        });
    }
    let q = quantale_laws_check(&gens, bound)?;
    let mut r = Report::new("quantale", lat.name());
    r.check("quantale_laws", &q.verdict);
    r.info("level", if di.is_some() { "ideals" } else { "states" })
        .info("generators", names.clone())
        .info("members", q.members.len())
        .info("has_unit", q.has_unit);
    Ok(r)
}

/// Functor laws and `G ∘ F = H` on the generated measurement morphisms.
pub fn triangle(l: &AnyLattice, max_size: usize) -> Result<Report, Error> {
    let o = require_ortho(l, "triangle")?;
    let di = hull_of(l, max_size)?;
    let setups = MeasurementSetup::all(o)?;
    let mut r = Report::new("triangle", o.lattice().name());
    for (name, v) in quantaloid::functor_law_checks(&di, &setups) {
        r.check(name, &v);
    }
    r.info("morphisms", quantaloid::generated_morphisms(&di, &setups).len());
    Ok(r)
}

/// Pairs of distinct DCHeyt endomorphisms with equal `G`-image. Finding
/// none is not a violation; each reported pair is re-validated.
pub fn search_nonfaithful(l: &AnyLattice, bound: usize, max_size: usize) -> Result<Report, Error> {
    let di = hull_of(l, max_size)?;
    let res = nonfaithful_search(di.clone(), bound);
    let mut r = Report::new("search-nonfaithful", di.base().name());
    let mut recheck = Verdict::Pass;
    for (k, (h1, h2)) in res.witnesses.iter().enumerate() {
        let ok = h1 != h2
            && validate_dcheyt(h1).is_pass()
            && validate_dcheyt(h2).is_pass()
            && functor_g(h1).ok() == functor_g(h2).ok();
        if !ok {
            recheck = Verdict::fail([k.to_string()], "reported pair does not re-validate");
            break;
        }
    }
    r.check("witnesses_revalidate", &recheck);
    r.info("examined", res.examined)
        .info("valid", res.valid)
        .info("witnesses", res.witnesses.len())
        .info("bound_exceeded", res.bound_exceeded);
    if let Some((h1, h2)) = res.witnesses.first() {
        let table = |h: &crate::DCHeytMorphism| -> Value {
            (0..di.len())
                .map(|i| json!([di.label(i), di.label(h.apply(i))]))
                .collect::<Vec<_>>()
                .into()
        };
        r.info("first_pair", json!({"h1": table(h1), "h2": table(h2)}));
    }
    Ok(r)
}

/// Builds a catalog lattice from a name and parameters, either
/// `mo 2` or `mo:2` style.
pub fn generate(name: &str, params: &[String]) -> Result<AnyLattice, Error> {
    let g: Generator = if params.is_empty() {
        name.parse()?
    } else {
        Generator::from_parts(name, params.iter().map(String::as_str))?
    };
    Ok(g.generate()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mo2() -> AnyLattice {
        generate("mo", &["2".into()]).unwrap()
    }

    #[test]
    fn report_mo2_exits_zero() {
        let r = report(&mo2());
        assert_eq!(r.exit_code(), EXIT_OK);
        assert!(r.flags.iter().any(|f| f.name == "frame" && !f.pass));
    }

    #[test]
    fn diagrams_mo2_b() {
        let r = diagrams(&mo2(), Some("b"), hull::DEFAULT_MAX_SIZE).unwrap();
        assert_eq!(r.checks.len(), 3);
        assert_eq!(r.exit_code(), EXIT_OK);
    }

    #[test]
    fn hull_guard_is_input_error() {
        let o6 = generate("o6", &[]).unwrap();
        let err = hull(&o6, 4, true).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_INPUT);
        assert!(err.to_string().contains('4'));
    }

    #[test]
    fn dynamics_input() {
        let r = dynamics(&mo2(), "a", Some("b"), hull::DEFAULT_MAX_SIZE).unwrap();
        assert_eq!(r.exit_code(), EXIT_OK);
        assert_eq!(r.info["states_after"], json!(["a", "a'"]));
        assert_eq!(r.info["ideal_after"], json!("{0,a,a'}"));
        assert!(matches!(dynamics(&mo2(), "z", None, 12), Err(Error::Usage(_))));
    }

    #[test]
    fn non_orthomodular_input_is_a_violation() {
        let o6 = generate("o6", &[]).unwrap();
        let r = dynamics(&o6, "y", None, 12).unwrap();
        assert_eq!(r.exit_code(), EXIT_VIOLATION);
        let adj = r.checks.iter().find(|c| c.name == "phi[y]_adjunction").unwrap();
        assert_eq!(adj.witness.as_deref(), Some(&["x".to_owned(), "x".to_owned()][..]));
        assert_eq!(diagrams(&o6, None, 12).unwrap().exit_code(), EXIT_VIOLATION);
    }

    #[test]
    fn quantale_on_both_levels() {
        for level in [Level::States, Level::Ideals] {
            let r = quantale(&mo2(), "b,id", level, quantaloid::DEFAULT_QUANTALE_BOUND, 12).unwrap();
            assert_eq!(r.exit_code(), EXIT_OK, "{}", r.to_text());
        }
    }

    #[test]
    fn generator_spellings_agree() {
        let a = generate("mo:2", &[]).unwrap();
        assert_eq!(a.lattice().labels(), mo2().lattice().labels());
    }
}
