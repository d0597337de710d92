//! Built-in test lattices and the structure flags each is expected to have.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::dynamics::superpositional_faithfulness;
use crate::lattice::{AnyLattice, Elem, FiniteLattice, LatticeError, OrthoLattice};
use crate::verdict::Verdict;

pub const MAX_BOOLEAN: usize = 4;
pub const MAX_MO: usize = 4;
pub const MAX_CHAIN: usize = 8;
pub const MAX_PRODUCT: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown generator `{0}` (expected boolean, chain, mo, o6, m3, n5 or product)")]
    UnknownGenerator(String),
    #[error("`{name}` needs {what}")]
    BadParameters { name: String, what: &'static str },
    #[error("{name} parameter {value} outside 1..={max}")]
    OutOfRange { name: &'static str, value: usize, max: usize },
    #[error("product would have {0} elements, limit is {MAX_PRODUCT}")]
    ProductTooLarge(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A catalog generator with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    Boolean(usize),
    Chain(usize),
    Mo(usize),
    O6,
    M3,
    N5,
    Product(Box<Generator>, Box<Generator>),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Boolean(n) => write!(f, "boolean:{n}"),
            Generator::Chain(n) => write!(f, "chain:{n}"),
            Generator::Mo(n) => write!(f, "mo:{n}"),
            Generator::O6 => f.write_str("o6"),
            Generator::M3 => f.write_str("m3"),
            Generator::N5 => f.write_str("n5"),
            Generator::Product(a, b) => write!(f, "product({a},{b})"),
        }
    }
}

impl FromStr for Generator {
    type Err = CatalogError;

    /// `boolean:3`, `chain:4`, `mo:2`, `o6`, `m3`, `n5`,
    /// `product(boolean:1,chain:3)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("product(").and_then(|r| r.strip_suffix(')')) {
            let split = split_top_level(inner).ok_or_else(|| CatalogError::BadParameters {
                name: "product".into(),
                what: "two comma-separated generators",
            })?;
            return Ok(Generator::Product(
                Box::new(split.0.parse()?),
                Box::new(split.1.parse()?),
            ));
        }
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s, None),
        };
        Generator::from_parts(name, param.into_iter())
    }
}

fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

impl Generator {
    /// Builds a generator from a name and positional parameters, as given on
    /// the command line (`mo 2`, `product boolean:1 chain:3`).
    pub fn from_parts<'a>(name: &str, mut params: impl Iterator<Item = &'a str>) -> Result<Self, CatalogError> {
        let mut number = |name: &str| -> Result<usize, CatalogError> {
            params
                .next()
                .and_then(|p| p.trim().parse().ok())
                .ok_or_else(|| CatalogError::BadParameters {
                    name: name.into(),
                    what: "one positive integer parameter",
                })
        };
        let g = match name.trim().to_ascii_lowercase().as_str() {
            "boolean" => Generator::Boolean(number("boolean")?),
            "chain" => Generator::Chain(number("chain")?),
            "mo" => Generator::Mo(number("mo")?),
            "o6" => Generator::O6,
            "m3" => Generator::M3,
            "n5" => Generator::N5,
            "product" => {
                let missing = || CatalogError::BadParameters {
                    name: "product".into(),
                    what: "two generator parameters",
                };
                let a = params.next().ok_or_else(missing)?.parse()?;
                let b = params.next().ok_or_else(missing)?.parse()?;
                Generator::Product(Box::new(a), Box::new(b))
            }
            other => return Err(CatalogError::UnknownGenerator(other.into())),
        };
        Ok(g)
    }

    pub fn generate(&self) -> Result<AnyLattice, CatalogError> {
        let name = self.to_string();
        match *self {
            Generator::Boolean(n) => boolean(n, name),
            Generator::Chain(n) => chain(n, name),
            Generator::Mo(n) => mo(n, name),
            Generator::O6 => o6(name),
            Generator::M3 => plain(
                name,
                &["0", "a", "b", "c", "1"],
                &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
            ),
            Generator::N5 => plain(
                name,
                &["0", "p", "q", "x", "1"],
                &[("0", "p"), ("0", "q"), ("q", "x"), ("p", "1"), ("x", "1")],
            ),
            Generator::Product(ref a, ref b) => product(&a.generate()?, &b.generate()?, name),
        }
    }

    /// The structure flags this generator is known to produce.
    pub fn expected_flags(&self) -> Flags {
        match *self {
            Generator::Boolean(n) => Flags {
                orthomodular: Some(true),
                atomistic: true,
                covering: true,
                frame: true,
                modular: true,
                superpositionally_faithful: n < 2,
            },
            Generator::Chain(n) => Flags {
                orthomodular: (n == 2).then_some(true),
                atomistic: n <= 2,
                covering: true,
                frame: true,
                modular: true,
                superpositionally_faithful: true,
            },
            Generator::Mo(n) => Flags {
                orthomodular: Some(true),
                atomistic: true,
                covering: true,
                frame: n < 2,
                modular: true,
                superpositionally_faithful: n >= 2,
            },
            Generator::O6 => Flags {
                orthomodular: Some(false),
                atomistic: false,
                covering: false,
                frame: false,
                modular: false,
                superpositionally_faithful: false,
            },
            Generator::M3 => Flags {
                orthomodular: None,
                atomistic: true,
                covering: true,
                frame: false,
                modular: true,
                superpositionally_faithful: true,
            },
            Generator::N5 => Flags {
                orthomodular: None,
                atomistic: false,
                covering: false,
                frame: false,
                modular: false,
                superpositionally_faithful: false,
            },
            Generator::Product(ref a, ref b) => {
                let (fa, fb) = (a.expected_flags(), b.expected_flags());
                let has_atoms = |g: &Generator| !matches!(g, Generator::Chain(1));
                Flags {
                    orthomodular: fa.orthomodular.zip(fb.orthomodular).map(|(x, y)| x && y),
                    atomistic: fa.atomistic && fb.atomistic,
                    covering: fa.covering && fb.covering,
                    frame: fa.frame && fb.frame,
                    modular: fa.modular && fb.modular,
                    // atoms from different factors join to an element with
                    // nothing else below it
                    superpositionally_faithful: match (has_atoms(a), has_atoms(b)) {
                        (true, true) => false,
                        (true, false) => fa.superpositionally_faithful,
                        (false, _) => fb.superpositionally_faithful,
                    },
                }
            }
        }
    }
}

/// Structural properties of a lattice. `orthomodular` is `None` when no
/// orthocomplement is present.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flags {
    pub orthomodular: Option<bool>,
    pub atomistic: bool,
    pub covering: bool,
    pub frame: bool,
    pub modular: bool,
    pub superpositionally_faithful: bool,
}

/// Every flag check, with its verdict, in report order.
pub fn structure_checks(l: &AnyLattice) -> Vec<(&'static str, Verdict)> {
    let lat = l.lattice();
    let mut out = Vec::new();
    if let Some(o) = l.ortho() {
        out.push(("orthomodular", o.orthomodularity_check()));
    }
    out.push(("atomistic", lat.atoms_and_atomisticity().1));
    out.push(("covering", lat.covering_law()));
    out.push(("frame", lat.frame_check()));
    out.push(("modular", lat.modularity_check()));
    out.push(("superpositionally_faithful", superpositional_faithfulness(lat)));
    out
}

impl Flags {
    pub fn compute(l: &AnyLattice) -> Flags {
        let lat = l.lattice();
        Flags {
            orthomodular: l.ortho().map(|o| o.orthomodularity_check().is_pass()),
            atomistic: lat.atoms_and_atomisticity().1.is_pass(),
            covering: lat.covering_law().is_pass(),
            frame: lat.frame_check().is_pass(),
            modular: lat.modularity_check().is_pass(),
            superpositionally_faithful: superpositional_faithfulness(lat).is_pass(),
        }
    }
}

/// A generated lattice together with its expected flags.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub generator: Generator,
    pub lattice: AnyLattice,
    pub expected: Flags,
}

impl CatalogEntry {
    pub fn new(generator: Generator) -> Result<Self, CatalogError> {
        let lattice = generator.generate()?;
        let expected = generator.expected_flags();
        Ok(CatalogEntry {
            generator,
            lattice,
            expected,
        })
    }
}

/// boolean(1..3), chain(2..5), mo(1..3), o6, m3, n5.
pub fn standard_catalog() -> Vec<CatalogEntry> {
    let gens = (1..=3)
        .map(Generator::Boolean)
        .chain((2..=5).map(Generator::Chain))
        .chain((1..=3).map(Generator::Mo))
        .chain([Generator::O6, Generator::M3, Generator::N5]);
    gens.map(|g| CatalogEntry::new(g).expect("standard catalog generators are in range"))
        .collect()
}

fn check_range(name: &'static str, value: usize, max: usize) -> Result<(), CatalogError> {
    if value == 0 || value > max {
        return Err(CatalogError::OutOfRange { name, value, max });
    }
    Ok(())
}

fn plain(name: String, elements: &[&str], covers: &[(&str, &str)]) -> Result<AnyLattice, CatalogError> {
    Ok(FiniteLattice::from_covers(name, elements, covers)?.into())
}

const BOOLEAN_ATOMS: [&str; MAX_BOOLEAN] = ["p", "q", "r", "s"];

fn boolean(n: usize, name: String) -> Result<AnyLattice, CatalogError> {
    check_range("boolean", n, MAX_BOOLEAN)?;
    let size = 1usize << n;
    let full = size - 1;
    let labels: Vec<String> = (0..size)
        .map(|m| match m {
            0 => "0".to_owned(),
            m if m == full => "1".to_owned(),
            m => (0..n).filter(|i| m & (1 << i) != 0).map(|i| BOOLEAN_ATOMS[i]).collect(),
        })
        .collect();
    let mut covers = Vec::new();
    for m in 0..size {
        for i in 0..n {
            if m & (1 << i) == 0 {
                covers.push((m, m | (1 << i)));
            }
        }
    }
    let base = FiniteLattice::from_index_covers(name, labels, covers)?;
    let ortho = (0..size).map(|m| full ^ m).collect();
    Ok(OrthoLattice::new(base, ortho)?.into())
}

fn chain(n: usize, name: String) -> Result<AnyLattice, CatalogError> {
    check_range("chain", n, MAX_CHAIN)?;
    let labels: Vec<String> = (0..n)
        .map(|i| match i {
            0 => "0".to_owned(),
            i if i == n - 1 => "1".to_owned(),
            i => format!("c{i}"),
        })
        .collect();
    let covers = (1..n).map(|i| (i - 1, i)).collect();
    let base = FiniteLattice::from_index_covers(name, labels, covers)?;
    if n == 2 {
        Ok(OrthoLattice::new(base, vec![1, 0])?.into())
    } else {
        Ok(base.into())
    }
}

const MO_ATOMS: [&str; MAX_MO] = ["a", "b", "c", "d"];

fn mo(n: usize, name: String) -> Result<AnyLattice, CatalogError> {
    check_range("mo", n, MAX_MO)?;
    let mut labels = vec!["0".to_owned()];
    for a in &MO_ATOMS[..n] {
        labels.push((*a).to_owned());
        labels.push(format!("{a}'"));
    }
    labels.push("1".to_owned());
    let top = labels.len() - 1;
    let covers = (1..top).flat_map(|i| [(0, i), (i, top)]).collect();
    let base = FiniteLattice::from_index_covers(name, labels, covers)?;
    let ortho = (0..=top)
        .map(|i| match i {
            0 => top,
            i if i == top => 0,
            // atoms come in (x, x') pairs at odd/even positions
            i if i % 2 == 1 => i + 1,
            i => i - 1,
        })
        .collect();
    Ok(OrthoLattice::new(base, ortho)?.into())
}

fn o6(name: String) -> Result<AnyLattice, CatalogError> {
    let base = FiniteLattice::from_covers(
        name,
        &["0", "x", "y", "y'", "x'", "1"],
        &[("0", "x"), ("x", "y"), ("y", "1"), ("0", "y'"), ("y'", "x'"), ("x'", "1")],
    )?;
    Ok(OrthoLattice::from_labels(
        base,
        [("0", "1"), ("1", "0"), ("x", "x'"), ("x'", "x"), ("y", "y'"), ("y'", "y")],
    )?
    .into())
}

fn product(a: &AnyLattice, b: &AnyLattice, name: String) -> Result<AnyLattice, CatalogError> {
    let (la, lb) = (a.lattice(), b.lattice());
    let (na, nb) = (la.size(), lb.size());
    if na * nb > MAX_PRODUCT {
        return Err(CatalogError::ProductTooLarge(na * nb));
    }
    let pair = |i: Elem, j: Elem| i * nb + j;
    let mut labels = Vec::with_capacity(na * nb);
    for i in la.elements() {
        for j in lb.elements() {
            labels.push(format!("({},{})", la.label(i), lb.label(j)));
        }
    }
    let mut covers = Vec::new();
    for (x, y) in la.hasse() {
        for j in lb.elements() {
            covers.push((pair(x, j), pair(y, j)));
        }
    }
    for i in la.elements() {
        for (x, y) in lb.hasse() {
            covers.push((pair(i, x), pair(i, y)));
        }
    }
    covers.sort_unstable();
    let base = FiniteLattice::from_index_covers(name, labels, covers)?;
    match (a.ortho(), b.ortho()) {
        (Some(oa), Some(ob)) => {
            let ortho = (0..na * nb)
                .map(|k| pair(oa.ortho(k / nb), ob.ortho(k % nb)))
                .collect();
            Ok(OrthoLattice::new(base, ortho)?.into())
        }
        _ => Ok(base.into()),
    }
}
