//! Perfect-measurement dynamics on an orthomodular lattice.
//!
//! A measurement with eigenproperties `b`, `b'` sends an actual property `a`
//! to either `φ_b(a) = b ∧ (a ∨ b')` or `φ_b'(a)`. Three transition maps are
//! built from that: on states (atoms), on distributive ideals, and on
//! strongest actual properties. [`MeasurementSetup::verify_diagrams`] checks
//! that the three agree through the resolutions `T ↦ ⋁T` and `A ↦ ⋁A`.

use thiserror::Error;

use crate::hull::{self, format_set, HullError, IdealLattice};
use crate::lattice::{Elem, FiniteLattice, OrthoLattice};
use crate::quantaloid::validate_sup_morphism;
use crate::set::ElemSet;
use crate::verdict::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynamicsError {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("lattice is not orthomodular: {0}")]
    NotOrthomodular(Verdict),
    #[error("state-level dynamics need an atomistic lattice with the covering law: {0}")]
    NoStateSpace(Verdict),
    #[error("`{0}` is not an atom")]
    NotAnAtom(String),
    #[error("outcome {0} is neither an atom nor 0")]
    OutcomeNotAtom(String),
    #[error(transparent)]
    Hull(#[from] HullError),
}

/// `b ∧ (a ∨ b')`.
pub fn sasaki_projection(o: &OrthoLattice, b: Elem, a: Elem) -> Elem {
    let l = o.lattice();
    l.meet(b, l.join(a, o.ortho(b)))
}

/// `b' ∨ (b ∧ c)`, the right adjoint of `φ_b` on orthomodular lattices.
pub fn sasaki_hook(o: &OrthoLattice, b: Elem, c: Elem) -> Elem {
    let l = o.lattice();
    l.join(o.ortho(b), l.meet(b, c))
}

/// `φ_b(a) <= c ⇔ a <= hook_b(c)` for all b, a, c. Witness `(b, a, c)`.
pub fn sasaki_adjunction_check(o: &OrthoLattice) -> Verdict {
    let l = o.lattice();
    for b in l.elements() {
        for a in l.elements() {
            let pa = sasaki_projection(o, b, a);
            for c in l.elements() {
                if l.leq(pa, c) != l.leq(a, sasaki_hook(o, b, c)) {
                    return Verdict::fail(
                        [l.label(b), l.label(a), l.label(c)],
                        format!(
                            "phi_{b}({a}) <= {c} is {} but {a} <= hook_{b}({c}) is {}",
                            l.leq(pa, c),
                            l.leq(a, sasaki_hook(o, b, c)),
                            b = l.label(b),
                            a = l.label(a),
                            c = l.label(c),
                        ),
                    );
                }
            }
        }
    }
    Verdict::Pass
}

/// `φ_b` is a sup-morphism for every `b`. Witness `(b, x, y)` for a failing
/// binary join, or `(b)` when bottom is not preserved.
pub fn sasaki_join_check(o: &OrthoLattice) -> Verdict {
    let l = o.lattice();
    for b in l.elements() {
        let table: Vec<Elem> = l.elements().map(|a| sasaki_projection(o, b, a)).collect();
        if let Verdict::Fail(w) = validate_sup_morphism(l, l, &table) {
            let mut labels = vec![l.label(b).to_owned()];
            labels.extend(w.labels);
            return Verdict::fail(labels, format!("phi_{}: {}", l.label(b), w.detail));
        }
    }
    Verdict::Pass
}

/// For every pair of distinct atoms some third atom lies below their join.
/// Informational only; nothing is gated on it.
pub fn superpositional_faithfulness(l: &FiniteLattice) -> Verdict {
    let atoms = l.atoms();
    for (i, &p) in atoms.iter().enumerate() {
        for &q in &atoms[i + 1..] {
            let j = l.join(p, q);
            if !atoms.iter().any(|&r| r != p && r != q && l.leq(r, j)) {
                return Verdict::fail(
                    [l.label(p), l.label(q)],
                    format!("no third atom below {}", l.label(j)),
                );
            }
        }
    }
    Verdict::Pass
}

/// `⋁T` for a set of atoms.
pub fn state_resolution(l: &FiniteLattice, states: ElemSet) -> Result<Elem, DynamicsError> {
    let atoms: ElemSet = l.atoms().into_iter().collect();
    if let Some(bad) = states.difference(atoms).iter().next() {
        return Err(DynamicsError::NotAnAtom(l.label(bad).into()));
    }
    Ok(l.join_of(states.iter()))
}

/// A map between property lattices, tabulated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyMap<'a> {
    pub source: &'a FiniteLattice,
    pub target: &'a FiniteLattice,
    pub table: Vec<Elem>,
}

impl PropertyMap<'_> {
    pub fn apply(&self, a: Elem) -> Elem {
        self.table[a]
    }

    pub fn sup_preservation(&self) -> Verdict {
        validate_sup_morphism(self.source, self.target, &self.table)
    }
}

/// A perfect measurement: an orthomodular lattice and an eigenproperty `b`.
#[derive(Debug, Clone)]
pub struct MeasurementSetup {
    lattice: OrthoLattice,
    b: Elem,
    b_prime: Elem,
    states: Verdict,
}

impl MeasurementSetup {
    pub fn new(lattice: OrthoLattice, b: Elem) -> Result<Self, DynamicsError> {
        if let fail @ Verdict::Fail(_) = lattice.orthomodularity_check() {
            return Err(DynamicsError::NotOrthomodular(fail));
        }
        assert!(b < lattice.lattice().size(), "eigenproperty index out of range");
        let l = lattice.lattice();
        let states = l.atoms_and_atomisticity().1.and(|| l.covering_law());
        let b_prime = lattice.ortho(b);
        Ok(MeasurementSetup {
            lattice,
            b,
            b_prime,
            states,
        })
    }

    pub fn with_label(lattice: OrthoLattice, b: &str) -> Result<Self, DynamicsError> {
        let idx = lattice
            .lattice()
            .index_of(b)
            .ok_or_else(|| DynamicsError::UnknownElement(b.into()))?;
        Self::new(lattice, idx)
    }

    /// Every setup over the lattice, one per element `b` (so each
    /// orthocomplementary pair appears twice, once from each side).
    pub fn all(lattice: &OrthoLattice) -> Result<Vec<Self>, DynamicsError> {
        lattice
            .lattice()
            .elements()
            .map(|b| Self::new(lattice.clone(), b))
            .collect()
    }

    pub fn ortho_lattice(&self) -> &OrthoLattice {
        &self.lattice
    }

    pub fn lattice(&self) -> &FiniteLattice {
        self.lattice.lattice()
    }

    pub fn b(&self) -> Elem {
        self.b
    }

    pub fn b_prime(&self) -> Elem {
        self.b_prime
    }

    /// `b` is bottom or top.
    pub fn is_degenerate(&self) -> bool {
        let l = self.lattice();
        self.b == l.bottom() || self.b == l.top()
    }

    /// Atomisticity and covering law, the preconditions of state dynamics.
    pub fn state_level(&self) -> &Verdict {
        &self.states
    }

    /// `(φ_b(a), φ_b'(a))`.
    pub fn outcomes(&self, a: Elem) -> (Elem, Elem) {
        (
            sasaki_projection(&self.lattice, self.b, a),
            sasaki_projection(&self.lattice, self.b_prime, a),
        )
    }

    /// Raw image `{φ_b(a), φ_b'(a) | a ∈ X}`, zeros included.
    pub fn image(&self, x: ElemSet) -> ElemSet {
        let mut out = ElemSet::empty();
        for a in x {
            let (p, q) = self.outcomes(a);
            out.insert(p);
            out.insert(q);
        }
        out
    }

    /// State transition `T ↦ {φ_b(p), φ_b'(p) | p ∈ T} \ {0}`.
    pub fn pm_states(&self, states: ElemSet) -> Result<ElemSet, DynamicsError> {
        if let fail @ Verdict::Fail(_) = &self.states {
            return Err(DynamicsError::NoStateSpace(fail.clone()));
        }
        let l = self.lattice();
        let atoms: ElemSet = l.atoms().into_iter().collect();
        if let Some(bad) = states.difference(atoms).iter().next() {
            return Err(DynamicsError::NotAnAtom(l.label(bad).into()));
        }
        let mut out = self.image(states);
        out.remove(l.bottom());
        if let Some(bad) = out.difference(atoms).iter().next() {
            return Err(DynamicsError::OutcomeNotAtom(l.label(bad).into()));
        }
        Ok(out)
    }

    /// Actuality-set transition `A ↦ 𝒞({φ_b(a), φ_b'(a) | a ∈ A})`, on ideal
    /// indices of `di`.
    pub fn pm_ideals(&self, di: &IdealLattice, ideal: usize) -> usize {
        di.closure(self.image(di.ideal(ideal)))
    }

    /// Strongest actual property after the measurement: `φ_b(a) ∨ φ_b'(a)`.
    pub fn pm_strongest(&self, a: Elem) -> Elem {
        let (p, q) = self.outcomes(a);
        self.lattice().join(p, q)
    }

    pub fn strongest_map(&self) -> PropertyMap<'_> {
        let l = self.lattice();
        PropertyMap {
            source: l,
            target: l,
            table: l.elements().map(|a| self.pm_strongest(a)).collect(),
        }
    }

    /// Checks, exhaustively:
    /// the state square `ē(⋁T) = ⋁ẽ(T)` over all sets of atoms;
    /// the ideal square `ē(⋁A) = ⋁ê(A)` over all distributive ideals;
    /// the factorization `ê(𝒞(X)) = 𝒞(g(X))` over all subsets X, with g the
    /// raw image map.
    pub fn verify_diagrams(&self, max_size: usize) -> Result<DiagramReport, DynamicsError> {
        let l = self.lattice();
        hull::guard(l, max_size)?;
        let di = IdealLattice::enumerate(l.clone(), max_size)?;
        Ok(self.verify_diagrams_with(&di))
    }

    /// [`verify_diagrams`](Self::verify_diagrams) over a precomputed `DI(L)`.
    pub fn verify_diagrams_with(&self, di: &IdealLattice) -> DiagramReport {
        let l = self.lattice();
        let state_square = match &self.states {
            Verdict::Fail(w) => Err(format!(
                "state space unavailable: [{}] {}",
                w.labels.join(", "),
                w.detail
            )),
            Verdict::Pass => Ok(self.state_square()),
        };

        let mut ideal_square = Verdict::Pass;
        for i in 0..di.len() {
            let lhs = self.pm_strongest(di.resolution_to_lattice(i));
            let rhs = di.resolution_to_lattice(self.pm_ideals(di, i));
            if lhs != rhs {
                ideal_square = Verdict::fail(
                    [di.label(i)],
                    format!("e(join A) = {} but join of e^(A) = {}", l.label(lhs), l.label(rhs)),
                );
                break;
            }
        }

        let mut factorization = Verdict::Pass;
        for x in ElemSet::full(l.size()).subsets().collect::<Vec<_>>().into_iter().rev() {
            let lhs = self.pm_ideals(di, di.closure(x));
            let rhs = di.closure(self.image(x));
            if lhs != rhs {
                factorization = Verdict::fail(
                    [format_set(l, x)],
                    format!("e^(C(X)) = {} but C(g(X)) = {}", di.label(lhs), di.label(rhs)),
                );
                break;
            }
        }

        DiagramReport {
            state_square,
            ideal_square,
            factorization,
        }
    }

    fn state_square(&self) -> Verdict {
        let l = self.lattice();
        let atoms: ElemSet = l.atoms().into_iter().collect();
        for t in atoms.subsets().collect::<Vec<_>>().into_iter().rev() {
            let lhs = self.pm_strongest(l.join_of(t.iter()));
            let out = match self.pm_states(t) {
                Ok(out) => out,
                Err(e) => return Verdict::fail([format_set(l, t)], e.to_string()),
            };
            let rhs = l.join_of(out.iter());
            if lhs != rhs {
                return Verdict::fail(
                    [format_set(l, t)],
                    format!("e(join T) = {} but join of e~(T) = {}", l.label(lhs), l.label(rhs)),
                );
            }
        }
        Verdict::Pass
    }
}

/// Result of [`MeasurementSetup::verify_diagrams`]. The state square is
/// `Err` when its preconditions do not hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramReport {
    pub state_square: Result<Verdict, String>,
    pub ideal_square: Verdict,
    pub factorization: Verdict,
}

impl DiagramReport {
    /// All sub-checks ran and passed.
    pub fn all_pass(&self) -> bool {
        matches!(&self.state_square, Ok(v) if v.is_pass())
            && self.ideal_square.is_pass()
            && self.factorization.is_pass()
    }
}
