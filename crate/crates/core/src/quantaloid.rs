//! Sup-enriched layer: sup-morphisms and their hom-lattices, quantales of
//! endomorphisms, the constrained morphisms of PSup (union-preserving maps
//! between powersets) and DCHeyt (sup-maps between ideal frames that respect
//! the resolution), and the functors
//!
//! ```text
//! F : PSup -> DCHeyt    g ↦ 𝒞₂ ∘ g
//! G : DCHeyt -> Sup     h ↦ ℛ₂ ∘ h, read on principal ideals
//! H : PSup -> Sup       g ↦ x ↦ ⋁₂ g(↓x)
//! ```
//!
//! with `G ∘ F = H`.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use thiserror::Error;

use crate::dynamics::MeasurementSetup;
use crate::hull::{format_set, IdealLattice};
use crate::lattice::{Elem, FiniteLattice};
use crate::set::ElemSet;
use crate::verdict::Verdict;

/// Default bound on the size of a quantale closure.
pub const DEFAULT_QUANTALE_BOUND: usize = 4096;
/// Default bound on candidate morphisms examined by searches.
pub const DEFAULT_SEARCH_BOUND: usize = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantaloidError {
    #[error("morphisms do not compose: target `{0}` differs from source `{1}`")]
    Incompatible(String, String),
    #[error("table has {got} entries, source has {expected} elements")]
    Arity { expected: usize, got: usize },
    #[error("table entry {0} is outside the target")]
    OutOfRange(usize),
    #[error("not a sup-morphism: {0}")]
    NotSupPreserving(Verdict),
    #[error("not a PSup morphism: {0}")]
    InvalidPSup(Verdict),
    #[error("not a DCHeyt morphism: {0}")]
    InvalidDCHeyt(Verdict),
    #[error("quantale generators must all be endomorphisms of one lattice")]
    NotEndomorphisms,
    #[error("closure exceeded the bound of {0} morphisms")]
    BoundExceeded(usize),
}

fn same(a: &Arc<FiniteLattice>, b: &Arc<FiniteLattice>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn same_hull(a: &Arc<IdealLattice>, b: &Arc<IdealLattice>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Bottom and binary joins are preserved; by finiteness that is every join.
/// Witness `(x)` when `f(0) ≠ 0`, otherwise `(x, y)`.
pub fn validate_sup_morphism(source: &FiniteLattice, target: &FiniteLattice, table: &[Elem]) -> Verdict {
    if table.len() != source.size() {
        return Verdict::fail(Vec::<String>::new(), "table is not total on the source");
    }
    if let Some(&bad) = table.iter().find(|&&t| t >= target.size()) {
        return Verdict::fail(Vec::<String>::new(), format!("value #{bad} outside the target"));
    }
    let b = source.bottom();
    if table[b] != target.bottom() {
        return Verdict::fail(
            [source.label(b)],
            format!("bottom maps to {}", target.label(table[b])),
        );
    }
    for x in source.elements() {
        for y in (x + 1)..source.size() {
            let lhs = table[source.join(x, y)];
            let rhs = target.join(table[x], table[y]);
            if lhs != rhs {
                return Verdict::fail(
                    [source.label(x), source.label(y)],
                    format!(
                        "f({x} v {y}) = {} but f({x}) v f({y}) = {}",
                        target.label(lhs),
                        target.label(rhs),
                        x = source.label(x),
                        y = source.label(y),
                    ),
                );
            }
        }
    }
    Verdict::Pass
}

/// A validated sup-morphism between finite lattices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupMorphism {
    source: Arc<FiniteLattice>,
    target: Arc<FiniteLattice>,
    table: Vec<Elem>,
}

impl SupMorphism {
    pub fn new(
        source: Arc<FiniteLattice>,
        target: Arc<FiniteLattice>,
        table: Vec<Elem>,
    ) -> Result<Self, QuantaloidError> {
        match validate_sup_morphism(&source, &target, &table) {
            Verdict::Pass => Ok(SupMorphism { source, target, table }),
            fail => Err(QuantaloidError::NotSupPreserving(fail)),
        }
    }

    pub fn identity(l: Arc<FiniteLattice>) -> Self {
        let table = l.elements().collect();
        SupMorphism {
            source: l.clone(),
            target: l,
            table,
        }
    }

    /// Constant bottom: the empty supremum of the hom-lattice.
    pub fn zero(source: Arc<FiniteLattice>, target: Arc<FiniteLattice>) -> Self {
        let table = vec![target.bottom(); source.size()];
        SupMorphism { source, target, table }
    }

    pub fn source(&self) -> &Arc<FiniteLattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteLattice> {
        &self.target
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.table[x]
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &SupMorphism) -> Result<SupMorphism, QuantaloidError> {
        if !same(&first.target, &self.source) {
            return Err(QuantaloidError::Incompatible(
                first.target.name().into(),
                self.source.name().into(),
            ));
        }
        Ok(SupMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            table: first.table.iter().map(|&y| self.table[y]).collect(),
        })
    }

    /// Pointwise join.
    pub fn sup(&self, other: &SupMorphism) -> Result<SupMorphism, QuantaloidError> {
        if !same(&self.source, &other.source) || !same(&self.target, &other.target) {
            return Err(QuantaloidError::Incompatible(
                self.source.name().into(),
                other.source.name().into(),
            ));
        }
        Ok(SupMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            table: self
                .table
                .iter()
                .zip(&other.table)
                .map(|(&a, &b)| self.target.join(a, b))
                .collect(),
        })
    }

    pub fn leq(&self, other: &SupMorphism) -> bool {
        self.table
            .iter()
            .zip(&other.table)
            .all(|(&a, &b)| self.target.leq(a, b))
    }
}

/// All sup-morphisms between two lattices, ordered pointwise.
#[derive(Debug, Clone)]
pub struct HomLattice {
    pub source: Arc<FiniteLattice>,
    pub target: Arc<FiniteLattice>,
    pub morphisms: Vec<SupMorphism>,
}

impl HomLattice {
    /// Enumerates by choosing values on the join-irreducibles of the source
    /// and extending by joins. `bound` caps the number of candidate
    /// assignments tried.
    pub fn enumerate(
        source: Arc<FiniteLattice>,
        target: Arc<FiniteLattice>,
        bound: usize,
    ) -> Result<Self, QuantaloidError> {
        let mut morphisms = Vec::new();
        let mut tried = 0usize;
        for_each_sup_map(&source, &target, bound, &mut tried, |table| {
            if validate_sup_morphism(&source, &target, table).is_pass() {
                morphisms.push(SupMorphism {
                    source: source.clone(),
                    target: target.clone(),
                    table: table.to_vec(),
                });
            }
        })?;
        morphisms.sort_by(|a, b| a.table.cmp(&b.table));
        Ok(HomLattice {
            source,
            target,
            morphisms,
        })
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    /// Contains the zero map and is closed under pointwise binary joins:
    /// a finite complete lattice.
    pub fn completeness_check(&self) -> Verdict {
        let tables: HashSet<&[Elem]> = self.morphisms.iter().map(|m| m.table()).collect();
        let zero = SupMorphism::zero(self.source.clone(), self.target.clone());
        if !tables.contains(zero.table()) {
            return Verdict::fail(["zero"], "constant-bottom map missing");
        }
        for (i, f) in self.morphisms.iter().enumerate() {
            for g in &self.morphisms[i + 1..] {
                let s = f.sup(g).expect("same hom-set");
                if !tables.contains(s.table()) {
                    return Verdict::fail(
                        [format!("{:?}", f.table()), format!("{:?}", g.table())],
                        "pointwise join is not in the hom-set",
                    );
                }
            }
        }
        Verdict::Pass
    }
}

/// Calls `visit` with every table obtained by assigning a monotone choice of
/// values to the join-irreducibles of `source` and extending by joins.
fn for_each_sup_map(
    source: &FiniteLattice,
    target: &FiniteLattice,
    bound: usize,
    tried: &mut usize,
    mut visit: impl FnMut(&[Elem]),
) -> Result<(), QuantaloidError> {
    let irr = source.join_irreducibles();
    let mut values = vec![target.bottom(); irr.len()];
    let mut table = vec![target.bottom(); source.size()];

    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        source: &FiniteLattice,
        target: &FiniteLattice,
        irr: &[Elem],
        values: &mut Vec<Elem>,
        table: &mut Vec<Elem>,
        bound: usize,
        tried: &mut usize,
        visit: &mut dyn FnMut(&[Elem]),
    ) -> Result<(), QuantaloidError> {
        if k == irr.len() {
            *tried += 1;
            if *tried > bound {
                return Err(QuantaloidError::BoundExceeded(bound));
            }
            for x in source.elements() {
                table[x] = target.join_of(
                    irr.iter()
                        .zip(values.iter())
                        .filter(|(&j, _)| source.leq(j, x))
                        .map(|(_, &v)| v),
                );
            }
            visit(table);
            return Ok(());
        }
        for v in target.elements() {
            // monotone on the irreducibles already assigned
            let ok = (0..k).all(|i| {
                (!source.leq(irr[i], irr[k]) || target.leq(values[i], v))
                    && (!source.leq(irr[k], irr[i]) || target.leq(v, values[i]))
            });
            if ok {
                values[k] = v;
                go(k + 1, source, target, irr, values, table, bound, tried, visit)?;
            }
        }
        Ok(())
    }

    go(0, source, target, &irr, &mut values, &mut table, bound, tried, &mut visit)
}

/// Summary of a quantale check.
#[derive(Debug, Clone)]
pub struct QuantaleReport {
    pub members: Vec<SupMorphism>,
    pub has_unit: bool,
    pub verdict: Verdict,
}

/// Closes a set of endomorphisms of one lattice under composition and
/// pointwise joins (the zero map included as the empty join).
pub fn quantale_closure(generators: &[SupMorphism], bound: usize) -> Result<Vec<SupMorphism>, QuantaloidError> {
    let Some(first) = generators.first() else {
        return Ok(Vec::new());
    };
    let carrier = first.source.clone();
    if generators
        .iter()
        .any(|g| !same(&g.source, &carrier) || !same(&g.target, &carrier))
    {
        return Err(QuantaloidError::NotEndomorphisms);
    }
    let mut members: Vec<SupMorphism> = Vec::new();
    let mut seen: HashSet<Vec<Elem>> = HashSet::new();
    let mut push = |m: SupMorphism, members: &mut Vec<SupMorphism>| {
        if seen.insert(m.table.clone()) {
            members.push(m);
        }
    };
    push(SupMorphism::zero(carrier.clone(), carrier.clone()), &mut members);
    for g in generators {
        push(g.clone(), &mut members);
    }
    let mut done = 0;
    while done < members.len() {
        let n = members.len();
        for i in 0..n {
            for j in 0..n {
                if i < done && j < done {
                    continue;
                }
                let (f, g) = (&members[i], &members[j]);
                let c = f.after(g)?;
                let s = f.sup(g)?;
                push(c, &mut members);
                push(s, &mut members);
                if members.len() > bound {
                    return Err(QuantaloidError::BoundExceeded(bound));
                }
            }
        }
        done = n;
    }
    members.sort_by(|a, b| a.table.cmp(&b.table));
    Ok(members)
}

/// Closes `generators`, then checks closure, associativity, the unit laws
/// (when the identity is a member) and distributivity of composition over
/// joins on both sides, including the empty join.
pub fn quantale_laws_check(generators: &[SupMorphism], bound: usize) -> Result<QuantaleReport, QuantaloidError> {
    let members = quantale_closure(generators, bound)?;
    if members.is_empty() {
        return Ok(QuantaleReport {
            members,
            has_unit: false,
            verdict: Verdict::Pass,
        });
    }
    let carrier = members[0].source.clone();
    let index: HashMap<&[Elem], usize> = members.iter().enumerate().map(|(i, m)| (m.table(), i)).collect();
    let name = |i: usize| format!("q{i}");
    let zero = SupMorphism::zero(carrier.clone(), carrier.clone());
    let id = SupMorphism::identity(carrier);
    let has_unit = index.contains_key(id.table());

    let verdict = (|| {
        let n = members.len();
        let comp: Vec<Vec<SupMorphism>> = members
            .iter()
            .map(|f| members.iter().map(|g| f.after(g).expect("endomorphisms")).collect())
            .collect();
        for i in 0..n {
            for j in 0..n {
                if !index.contains_key(comp[i][j].table()) {
                    return Verdict::fail([name(i), name(j)], "composite is not a member");
                }
                let s = members[i].sup(&members[j]).expect("endomorphisms");
                if !index.contains_key(s.table()) {
                    return Verdict::fail([name(i), name(j)], "join is not a member");
                }
            }
        }
        for (i, f) in members.iter().enumerate() {
            if has_unit && (comp[i][index[id.table()]] != *f || id.after(f).expect("endo") != *f) {
                return Verdict::fail([name(i)], "identity is not a two-sided unit");
            }
            if f.after(&zero).expect("endo") != zero || zero.after(f).expect("endo") != zero {
                return Verdict::fail([name(i)], "composition does not preserve the empty join");
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = &comp[a][b];
                for c in 0..n {
                    let bc = &comp[b][c];
                    if ab.after(&members[c]).expect("endo") != members[a].after(bc).expect("endo") {
                        return Verdict::fail([name(a), name(b), name(c)], "associativity fails");
                    }
                    let bc_sup = members[b].sup(&members[c]).expect("endo");
                    let left = members[a].after(&bc_sup).expect("endo");
                    if left != comp[a][b].sup(&comp[a][c]).expect("endo") {
                        return Verdict::fail([name(a), name(b), name(c)], "a & (b v c) != (a & b) v (a & c)");
                    }
                    let right = bc_sup.after(&members[a]).expect("endo");
                    if right != comp[b][a].sup(&comp[c][a]).expect("endo") {
                        return Verdict::fail([name(a), name(b), name(c)], "(b v c) & a != (b & a) v (c & a)");
                    }
                }
            }
        }
        Verdict::Pass
    })();

    Ok(QuantaleReport {
        members,
        has_unit,
        verdict,
    })
}

/// The powerset of `labels` as a lattice. Element `m` is the subset whose
/// bit `i` is set iff `labels[i]` is a member.
pub fn powerset_lattice(name: impl Into<String>, labels: &[String]) -> FiniteLattice {
    let k = labels.len();
    assert!(k < 16, "powerset of {k} states is too large to tabulate");
    let size = 1usize << k;
    let names = (0..size)
        .map(|m| {
            let inner: Vec<&str> = (0..k).filter(|i| m & (1 << i) != 0).map(|i| labels[i].as_str()).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect();
    let covers = (0..size)
        .flat_map(|m| (0..k).filter(move |i| m & (1 << i) == 0).map(move |i| (m, m | (1 << i))))
        .collect();
    FiniteLattice::from_index_covers(name, names, covers).expect("powersets are lattices")
}

/// The state transition of a measurement as an endomorphism of `𝒫(Σ)`.
pub fn lift_states(setup: &MeasurementSetup, powerset: Arc<FiniteLattice>) -> Result<SupMorphism, QuantaloidError> {
    let l = setup.lattice();
    let atoms = l.atoms();
    assert_eq!(powerset.size(), 1 << atoms.len(), "powerset does not match the state space");
    let table = (0..powerset.size())
        .map(|m| {
            let t: ElemSet = atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| m & (1 << i) != 0)
                .map(|(_, &p)| p)
                .collect();
            let out = setup
                .pm_states(t)
                .map_err(|e| QuantaloidError::NotSupPreserving(Verdict::fail(Vec::<String>::new(), e.to_string())))?;
            Ok(atoms
                .iter()
                .enumerate()
                .filter(|(_, &p)| out.contains(p))
                .fold(0usize, |acc, (i, _)| acc | (1 << i)))
        })
        .collect::<Result<Vec<_>, QuantaloidError>>()?;
    SupMorphism::new(powerset.clone(), powerset, table)
}

/// The actuality-set transition of a measurement as an endomorphism of
/// `DI(L)`.
pub fn lift_ideals(setup: &MeasurementSetup, di: &IdealLattice, order: Arc<FiniteLattice>) -> Result<SupMorphism, QuantaloidError> {
    let table = (0..di.len()).map(|i| setup.pm_ideals(di, i)).collect();
    SupMorphism::new(order.clone(), order, table)
}

/// A union-preserving map `𝒫(L₁) → 𝒫(L₂)`, stored by its values on
/// singletons. Each side carries its ideal lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PSupMorphism {
    source: Arc<IdealLattice>,
    target: Arc<IdealLattice>,
    images: Vec<ElemSet>,
}

impl PSupMorphism {
    /// Unvalidated candidate; see [`validate_psup`].
    pub fn new(
        source: Arc<IdealLattice>,
        target: Arc<IdealLattice>,
        images: Vec<ElemSet>,
    ) -> Result<Self, QuantaloidError> {
        if images.len() != source.base().size() {
            return Err(QuantaloidError::Arity {
                expected: source.base().size(),
                got: images.len(),
            });
        }
        let full = ElemSet::full(target.base().size());
        if let Some(i) = images.iter().position(|s| !s.is_subset(full)) {
            return Err(QuantaloidError::OutOfRange(i));
        }
        Ok(PSupMorphism { source, target, images })
    }

    pub fn identity(l: Arc<IdealLattice>) -> Self {
        let images = l.base().elements().map(ElemSet::singleton).collect();
        PSupMorphism {
            source: l.clone(),
            target: l,
            images,
        }
    }

    /// `X ↦ {φ_b(a), φ_b'(a) | a ∈ X}`, zeros kept.
    pub fn measurement(setup: &MeasurementSetup, hull: Arc<IdealLattice>) -> Self {
        let images = hull
            .base()
            .elements()
            .map(|a| setup.image(ElemSet::singleton(a)))
            .collect();
        PSupMorphism {
            source: hull.clone(),
            target: hull,
            images,
        }
    }

    pub fn source(&self) -> &Arc<IdealLattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<IdealLattice> {
        &self.target
    }

    pub fn images(&self) -> &[ElemSet] {
        &self.images
    }

    pub fn apply(&self, x: ElemSet) -> ElemSet {
        x.iter().fold(ElemSet::empty(), |acc, a| acc.union(self.images[a]))
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &PSupMorphism) -> Result<PSupMorphism, QuantaloidError> {
        if !same_hull(&first.target, &self.source) {
            return Err(QuantaloidError::Incompatible(
                first.target.base().name().into(),
                self.source.base().name().into(),
            ));
        }
        Ok(PSupMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            images: first.images.iter().map(|&s| self.apply(s)).collect(),
        })
    }
}

/// Checks, over every subset X of the source, that `h = 𝒞₂ ∘ g` makes the
/// closure square commute (`𝒞₂(g(𝒞₁(X))) = 𝒞₂(g(X))`), and that equal joins
/// have images with equal joins.
pub fn validate_psup(g: &PSupMorphism) -> Verdict {
    let (s, t) = (&*g.source, &*g.target);
    let (l1, l2) = (s.base(), t.base());
    let mut by_join: HashMap<Elem, (ElemSet, Elem)> = HashMap::new();
    let mut compat = Verdict::Pass;
    for x in ascending_subsets(l1.size()) {
        let cx = s.ideal(s.closure(x));
        let lhs = t.closure(g.apply(cx));
        let rhs = t.closure(g.apply(x));
        if lhs != rhs {
            return Verdict::fail(
                [format_set(l1, x), format_set(l1, cx)],
                format!(
                    "C2(g(C1(X))) = {} but C2(g(X)) = {}",
                    t.label(lhs),
                    t.label(rhs)
                ),
            );
        }
        if compat.is_pass() {
            let j1 = l1.join_of(x.iter());
            let j2 = l2.join_of(g.apply(x).iter());
            match by_join.get(&j1) {
                Some(&(y, k2)) if k2 != j2 => {
                    compat = Verdict::fail(
                        [format_set(l1, y), format_set(l1, x)],
                        format!(
                            "both join to {} but images join to {} and {}",
                            l1.label(j1),
                            l2.label(k2),
                            l2.label(j2)
                        ),
                    );
                }
                Some(_) => {}
                None => {
                    by_join.insert(j1, (x, j2));
                }
            }
        }
    }
    compat
}

fn ascending_subsets(n: usize) -> impl Iterator<Item = ElemSet> {
    let full = ElemSet::full(n);
    let mut v: Vec<ElemSet> = full.subsets().collect();
    v.reverse();
    v.into_iter()
}

/// A sup-map between ideal frames, as a table on ideal indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DCHeytMorphism {
    source: Arc<IdealLattice>,
    target: Arc<IdealLattice>,
    table: Vec<usize>,
}

impl DCHeytMorphism {
    /// Unvalidated candidate; see [`validate_dcheyt`].
    pub fn new(source: Arc<IdealLattice>, target: Arc<IdealLattice>, table: Vec<usize>) -> Result<Self, QuantaloidError> {
        if table.len() != source.len() {
            return Err(QuantaloidError::Arity {
                expected: source.len(),
                got: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= target.len()) {
            return Err(QuantaloidError::OutOfRange(bad));
        }
        Ok(DCHeytMorphism { source, target, table })
    }

    pub fn identity(l: Arc<IdealLattice>) -> Self {
        let table = (0..l.len()).collect();
        DCHeytMorphism {
            source: l.clone(),
            target: l,
            table,
        }
    }

    pub fn source(&self) -> &Arc<IdealLattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<IdealLattice> {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, ideal: usize) -> usize {
        self.table[ideal]
    }

    pub fn after(&self, first: &DCHeytMorphism) -> Result<DCHeytMorphism, QuantaloidError> {
        if !same_hull(&first.target, &self.source) {
            return Err(QuantaloidError::Incompatible(
                first.target.base().name().into(),
                self.source.base().name().into(),
            ));
        }
        Ok(DCHeytMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            table: first.table.iter().map(|&i| self.table[i]).collect(),
        })
    }
}

/// Sup-preservation on the ideal frames, and
/// `ℛ₁(A) = ℛ₁(B) ⇒ ℛ₂(h(A)) = ℛ₂(h(B))`.
pub fn validate_dcheyt(h: &DCHeytMorphism) -> Verdict {
    let (s, t) = (&*h.source, &*h.target);
    if let fail @ Verdict::Fail(_) = validate_sup_morphism(s.order(), t.order(), &h.table) {
        return fail;
    }
    resolution_condition(s, t, &h.table)
}

fn resolution_condition(s: &IdealLattice, t: &IdealLattice, table: &[usize]) -> Verdict {
    let mut seen: Vec<Option<(usize, usize)>> = vec![None; s.len()];
    for (a, &image) in table.iter().enumerate() {
        let r1 = s.resolution(a);
        let r2 = t.resolution(image);
        match seen[r1] {
            None => seen[r1] = Some((a, r2)),
            Some((b, q2)) if q2 != r2 => {
                return Verdict::fail(
                    [s.label(b), s.label(a)],
                    format!(
                        "R1 agrees ({}) but R2(h(-)) gives {} and {}",
                        s.label(r1),
                        t.label(q2),
                        t.label(r2)
                    ),
                );
            }
            Some(_) => {}
        }
    }
    Verdict::Pass
}

/// `F(g) = 𝒞₂ ∘ g` on ideals.
pub fn functor_f(g: &PSupMorphism) -> Result<DCHeytMorphism, QuantaloidError> {
    if let fail @ Verdict::Fail(_) = validate_psup(g) {
        return Err(QuantaloidError::InvalidPSup(fail));
    }
    let (s, t) = (&g.source, &g.target);
    let table = (0..s.len()).map(|i| t.closure(g.apply(s.ideal(i)))).collect();
    let h = DCHeytMorphism {
        source: s.clone(),
        target: t.clone(),
        table,
    };
    match validate_dcheyt(&h) {
        Verdict::Pass => Ok(h),
        fail => Err(QuantaloidError::InvalidDCHeyt(fail)),
    }
}

/// `G(h)`: the induced map on resolution fixpoints, read through the
/// isomorphism `↓a ↔ a`, i.e. `x ↦ ⋁₂ h(↓x)`.
pub fn functor_g(h: &DCHeytMorphism) -> Result<SupMorphism, QuantaloidError> {
    if let fail @ Verdict::Fail(_) = validate_dcheyt(h) {
        return Err(QuantaloidError::InvalidDCHeyt(fail));
    }
    Ok(g_table_unchecked(h))
        .and_then(|table| SupMorphism::new(h.source.base_arc().clone(), h.target.base_arc().clone(), table))
}

fn g_table_unchecked(h: &DCHeytMorphism) -> Vec<Elem> {
    let (s, t) = (&h.source, &h.target);
    s.base()
        .elements()
        .map(|x| t.resolution_to_lattice(h.table[s.principal(x)]))
        .collect()
}

/// `H(g): x ↦ ⋁₂ g(↓x)`.
pub fn functor_h(g: &PSupMorphism) -> Result<SupMorphism, QuantaloidError> {
    if let fail @ Verdict::Fail(_) = validate_psup(g) {
        return Err(QuantaloidError::InvalidPSup(fail));
    }
    let (s, t) = (&g.source, &g.target);
    let table = s
        .base()
        .elements()
        .map(|x| t.base().join_of(g.apply(s.ideal(s.principal(x))).iter()))
        .collect();
    SupMorphism::new(s.base_arc().clone(), t.base_arc().clone(), table)
}

/// `G(F(g)) = H(g)`, compared as tables. Witness: the first element where
/// they differ.
pub fn triangle_check(g: &PSupMorphism) -> Result<Verdict, QuantaloidError> {
    let gf = functor_g(&functor_f(g)?)?;
    let hg = functor_h(g)?;
    let l = g.source.base();
    let t = g.target.base();
    Ok(match l.elements().find(|&x| gf.apply(x) != hg.apply(x)) {
        None => Verdict::Pass,
        Some(x) => Verdict::fail(
            [l.label(x)],
            format!("G(F(g)) gives {} but H(g) gives {}", t.label(gf.apply(x)), t.label(hg.apply(x))),
        ),
    })
}

/// `{0} ↦ {0}` and every other ideal `↦ k`. Always a valid DCHeyt
/// endomorphism, since `ℛ(A)` is bottom only for `A = {0}`; its `G`-image
/// only sees `⋁k`, so two ideals with the same join give a collapsing pair.
pub fn collapse_to(di: Arc<IdealLattice>, k: usize) -> Result<DCHeytMorphism, QuantaloidError> {
    if k >= di.len() {
        return Err(QuantaloidError::OutOfRange(k));
    }
    let bottom = di.order().bottom();
    let table = (0..di.len()).map(|i| if i == bottom { bottom } else { k }).collect();
    Ok(DCHeytMorphism {
        source: di.clone(),
        target: di,
        table,
    })
}

/// Two distinct ideals with the same join, the first non-principal. `None`
/// when every ideal is principal, in which case `G` is faithful.
pub fn collapsing_pair(di: &IdealLattice) -> Option<(usize, usize)> {
    let k = (0..di.len()).find(|&i| !di.is_principal(i))?;
    Some((k, di.resolution(k)))
}

/// Outcome of [`nonfaithful_search`].
#[derive(Debug, Clone)]
pub struct NonFaithfulReport {
    /// Candidate sup-endomorphisms examined.
    pub examined: usize,
    /// Candidates that passed [`validate_dcheyt`].
    pub valid: usize,
    /// One pair per collapsed `G`-image, in discovery order.
    pub witnesses: Vec<(DCHeytMorphism, DCHeytMorphism)>,
    /// The search stopped at the bound before covering the whole space.
    pub bound_exceeded: bool,
}

/// Searches the DCHeyt endomorphisms of `DI(L)` for two distinct morphisms
/// with the same image under `G`.
pub fn nonfaithful_search(di: Arc<IdealLattice>, bound: usize) -> NonFaithfulReport {
    let order = di.order();
    let mut examined = 0usize;
    let mut valid = 0usize;
    let mut first_by_image: HashMap<Vec<Elem>, Vec<usize>> = HashMap::new();
    let mut witnessed: HashSet<Vec<Elem>> = HashSet::new();
    let mut witnesses = Vec::new();
    let outcome = for_each_sup_map(order, order, bound, &mut examined, |table| {
        if !validate_sup_morphism(order, order, table).is_pass()
            || !resolution_condition(&di, &di, table).is_pass()
        {
            return;
        }
        valid += 1;
        let h = DCHeytMorphism {
            source: di.clone(),
            target: di.clone(),
            table: table.to_vec(),
        };
        let image = g_table_unchecked(&h);
        match first_by_image.get(&image) {
            None => {
                first_by_image.insert(image, table.to_vec());
            }
            Some(prev) => {
                if witnessed.insert(image) {
                    let first = DCHeytMorphism {
                        source: di.clone(),
                        target: di.clone(),
                        table: prev.clone(),
                    };
                    witnesses.push((first, h));
                }
            }
        }
    });
    NonFaithfulReport {
        examined: examined.min(bound),
        valid,
        witnesses,
        bound_exceeded: outcome.is_err(),
    }
}

/// A PSup morphism produced for law checking, with a display name.
#[derive(Debug, Clone)]
pub struct GeneratedMorphism {
    pub name: String,
    pub map: PSupMorphism,
    /// Eigenproperty when the map is a single measurement.
    pub eigenproperty: Option<Elem>,
}

/// The identity, the image map of every measurement `b` and every composite
/// of two of those, deduplicated by their singleton images.
pub fn generated_morphisms(hull: &Arc<IdealLattice>, setups: &[MeasurementSetup]) -> Vec<GeneratedMorphism> {
    let l = hull.base();
    let mut out = vec![GeneratedMorphism {
        name: "id".into(),
        map: PSupMorphism::identity(hull.clone()),
        eigenproperty: None,
    }];
    let singles: Vec<GeneratedMorphism> = setups
        .iter()
        .map(|m| GeneratedMorphism {
            name: format!("g[{}]", l.label(m.b())),
            map: PSupMorphism::measurement(m, hull.clone()),
            eigenproperty: Some(m.b()),
        })
        .collect();
    let mut seen: HashSet<Vec<ElemSet>> = HashSet::new();
    seen.insert(out[0].map.images.clone());
    let mut composites = Vec::new();
    for second in &singles {
        for first in &singles {
            let map = second.map.after(&first.map).expect("same hull");
            composites.push(GeneratedMorphism {
                name: format!("{}.{}", second.name, first.name),
                map,
                eigenproperty: None,
            });
        }
    }
    for g in singles.into_iter().chain(composites) {
        if seen.insert(g.map.images.clone()) || g.eigenproperty.is_some() {
            out.push(g);
        }
    }
    out
}

/// Functor laws for F, G and H, well-typedness of F, the triangle
/// `G ∘ F = H`, agreement of `H(g_b)` with strongest-property propagation,
/// and the fullness samples (each `ē_b` is hit by `G(F(g_b))`).
pub fn functor_law_checks(
    hull: &Arc<IdealLattice>,
    setups: &[MeasurementSetup],
) -> Vec<(&'static str, Verdict)> {
    let gens = generated_morphisms(hull, setups);
    let fail = |name: &str, detail: String| Verdict::fail([name.to_owned()], detail);

    let mut psup = Verdict::Pass;
    let mut f_typed = Verdict::Pass;
    let mut triangle = Verdict::Pass;
    let mut strongest = Verdict::Pass;
    let mut images: Vec<Option<(DCHeytMorphism, SupMorphism, SupMorphism)>> = Vec::new();
    for g in &gens {
        let v = validate_psup(&g.map);
        if let Verdict::Fail(w) = &v {
            if psup.is_pass() {
                psup = fail(&g.name, format!("[{}] {}", w.labels.join(", "), w.detail));
            }
            images.push(None);
            continue;
        }
        let f = match functor_f(&g.map) {
            Ok(f) => f,
            Err(e) => {
                if f_typed.is_pass() {
                    f_typed = fail(&g.name, e.to_string());
                }
                images.push(None);
                continue;
            }
        };
        let (gf, hg) = match (functor_g(&f), functor_h(&g.map)) {
            (Ok(gf), Ok(hg)) => (gf, hg),
            (Err(e), _) | (_, Err(e)) => {
                if triangle.is_pass() {
                    triangle = fail(&g.name, e.to_string());
                }
                images.push(None);
                continue;
            }
        };
        if gf != hg && triangle.is_pass() {
            triangle = fail(&g.name, "G(F(g)) differs from H(g)".into());
        }
        if let Some(b) = g.eigenproperty {
            let setup = setups.iter().find(|m| m.b() == b).expect("generated from setups");
            if hg.table() != setup.strongest_map().table.as_slice() && strongest.is_pass() {
                strongest = fail(&g.name, "H(g) differs from strongest-property propagation".into());
            }
        }
        images.push(Some((f, gf, hg)));
    }

    let identities = (|| {
        let id = &gens[0];
        let Some((f, gf, hg)) = &images[0] else {
            return fail("id", "identity did not validate".into());
        };
        if *f != DCHeytMorphism::identity(hull.clone()) {
            return fail("F(id)", "not the identity".into());
        }
        let id_l = SupMorphism::identity(hull.base_arc().clone());
        if *hg != id_l {
            return fail("H(id)", "not the identity".into());
        }
        match functor_g(&DCHeytMorphism::identity(hull.clone())) {
            Ok(g) if g == id_l && *gf == id_l => Verdict::Pass,
            _ => fail(&id.name, "G(id) is not the identity".into()),
        }
    })();

    let mut f_comp = Verdict::Pass;
    let mut g_comp = Verdict::Pass;
    let mut h_comp = Verdict::Pass;
    let singles: Vec<usize> = (0..gens.len()).filter(|&i| i == 0 || gens[i].eigenproperty.is_some()).collect();
    for &i in &singles {
        for &j in &singles {
            let (Some(a), Some(b)) = (&images[i], &images[j]) else { continue };
            let composite = gens[i].map.after(&gens[j].map).expect("same hull");
            let name = format!("{}.{}", gens[i].name, gens[j].name);
            let (Ok(fc), Ok(hc)) = (functor_f(&composite), functor_h(&composite)) else {
                if f_comp.is_pass() {
                    f_comp = fail(&name, "composite is not a PSup morphism".into());
                }
                continue;
            };
            if fc != a.0.after(&b.0).expect("same hull") && f_comp.is_pass() {
                f_comp = fail(&name, "F(g2 g1) != F(g2) F(g1)".into());
            }
            let gc = functor_g(&a.0.after(&b.0).expect("same hull"));
            if gc.ok() != a.1.after(&b.1).ok() && g_comp.is_pass() {
                g_comp = fail(&name, "G(h2 h1) != G(h2) G(h1)".into());
            }
            if Some(hc) != a.2.after(&b.2).ok() && h_comp.is_pass() {
                h_comp = fail(&name, "H(g2 g1) != H(g2) H(g1)".into());
            }
        }
    }

    let fullness = (|| {
        for (g, img) in gens.iter().zip(&images) {
            let Some(b) = g.eigenproperty else { continue };
            let setup = setups.iter().find(|m| m.b() == b).expect("generated from setups");
            match img {
                Some((f, gf, _)) if validate_dcheyt(f).is_pass() && gf.table() == setup.strongest_map().table.as_slice() => {}
                _ => return fail(&g.name, "no validated DCHeyt preimage of the propagation map".into()),
            }
        }
        Verdict::Pass
    })();

    vec![
        ("psup_valid", psup),
        ("f_well_typed", f_typed),
        ("triangle", triangle),
        ("h_is_strongest_propagation", strongest),
        ("functor_identities", identities),
        ("f_composition", f_comp),
        ("g_composition", g_comp),
        ("h_composition", h_comp),
        ("fullness_samples", fullness),
    ]
}
