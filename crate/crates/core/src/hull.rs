//! Distributive subsets, distributive ideals and the frame they form.
//!
//! `DI(L)` is the concrete carrier of the distributive hull of `L`: the
//! downward-closed subsets containing 0 that are closed under joins of their
//! distributive subsets. The principal ideals `↓a` embed `L` into it, and the
//! operational resolution `A ↦ ↓(⋁A)` retracts it back onto that image.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{Elem, FiniteLattice, LatticeError};
use crate::set::ElemSet;
use crate::verdict::Verdict;

/// Default element-count guard for anything that enumerates subsets.
pub const DEFAULT_MAX_SIZE: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HullError {
    #[error("lattice `{name}` has {size} elements, above the size guard of {limit}")]
    TooLarge { name: String, size: usize, limit: usize },
    #[error("ideal lattice of `{0}` failed the frame law: {1}")]
    NotAFrame(String, Verdict),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub(crate) fn guard(l: &FiniteLattice, max_size: usize) -> Result<(), HullError> {
    let limit = max_size.min(ElemSet::CAPACITY);
    if l.size() > limit {
        return Err(HullError::TooLarge {
            name: l.name().to_owned(),
            size: l.size(),
            limit,
        });
    }
    Ok(())
}

/// `{x1,x2,..}` in element order, `{}` for the empty set.
pub fn format_set(l: &FiniteLattice, s: ElemSet) -> String {
    let inner: Vec<&str> = s.iter().map(|e| l.label(e)).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn downset(l: &FiniteLattice, s: ElemSet) -> ElemSet {
    let mut out = ElemSet::empty();
    for x in l.elements() {
        if s.iter().any(|a| l.leq(x, a)) {
            out.insert(x);
        }
    }
    out
}

pub fn principal(l: &FiniteLattice, a: Elem) -> ElemSet {
    l.below(a).collect()
}

fn distribution_failure(l: &FiniteLattice, s: ElemSet) -> Option<Elem> {
    let j = l.join_of(s.iter());
    l.elements()
        .find(|&x| l.meet(x, j) != l.join_of(s.iter().map(|t| l.meet(x, t))))
}

/// `x ∧ ⋁S = ⋁{x ∧ s | s ∈ S}` for every `x`. Witness: the first failing `x`.
pub fn is_distributive_subset(l: &FiniteLattice, s: ElemSet) -> Verdict {
    match distribution_failure(l, s) {
        None => Verdict::Pass,
        Some(x) => {
            let j = l.join_of(s.iter());
            Verdict::fail(
                [l.label(x)],
                format!(
                    "{x} ^ {j} = {} but joining {x} ^ s over {} gives {}",
                    l.label(l.meet(x, j)),
                    format_set(l, s),
                    l.label(l.join_of(s.iter().map(|t| l.meet(x, t)))),
                    x = l.label(x),
                    j = l.label(j),
                ),
            )
        }
    }
}

pub(crate) fn distributes(l: &FiniteLattice, s: ElemSet) -> bool {
    distribution_failure(l, s).is_none()
}

/// A set closed under ↓ and under joins of distributive subsets, with 0.
pub fn is_distributive_ideal(l: &FiniteLattice, s: ElemSet) -> Verdict {
    if !s.contains(l.bottom()) {
        return Verdict::fail([l.label(l.bottom())], "bottom is missing");
    }
    if let Some(x) = s.iter().find_map(|a| l.below(a).find(|&y| !s.contains(y))) {
        return Verdict::fail([l.label(x)], "not downward closed");
    }
    for sub in s.subsets() {
        let j = l.join_of(sub.iter());
        if !s.contains(j) && distributes(l, sub) {
            let mut labels: Vec<String> = sub.iter().map(|e| l.label(e).to_owned()).collect();
            labels.push(l.label(j).to_owned());
            return Verdict::fail(
                labels,
                format!("distributive subset {} has join {} outside", format_set(l, sub), l.label(j)),
            );
        }
    }
    Verdict::Pass
}

fn close_once(l: &FiniteLattice, cur: ElemSet) -> ElemSet {
    let mut next = cur;
    for sub in cur.subsets() {
        let j = l.join_of(sub.iter());
        if !next.contains(j) && distributes(l, sub) {
            next.insert(j);
        }
    }
    downset(l, next)
}

/// A distributive ideal of a particular lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DistributiveIdeal(ElemSet);

impl DistributiveIdeal {
    /// Validates `members` against the ideal laws.
    pub fn new(l: &FiniteLattice, members: ElemSet) -> Result<Self, Verdict> {
        match is_distributive_ideal(l, members) {
            Verdict::Pass => Ok(DistributiveIdeal(members)),
            fail => Err(fail),
        }
    }

    pub fn members(self) -> ElemSet {
        self.0
    }
}

/// Least distributive ideal containing `a`, computed as a fixpoint of
/// down-closure and adjunction of distributive joins.
///
/// Panics if the lattice has more than [`ElemSet::CAPACITY`] elements; the
/// cost is exponential in the size of the result.
pub fn closure_c(l: &FiniteLattice, a: ElemSet) -> DistributiveIdeal {
    assert!(l.size() <= ElemSet::CAPACITY);
    let mut cur = downset(l, a);
    cur.insert(l.bottom());
    loop {
        let next = close_once(l, cur);
        if next == cur {
            return DistributiveIdeal(cur);
        }
        cur = next;
    }
}

/// `{⋁B | B ⊆ ↓[A], B distributive}` in a single pass.
pub fn closure_one_pass(l: &FiniteLattice, a: ElemSet) -> ElemSet {
    let down = downset(l, a);
    let mut out = ElemSet::empty();
    for b in down.subsets() {
        if distributes(l, b) {
            out.insert(l.join_of(b.iter()));
        }
    }
    out
}

/// Every downset of `l`, each exactly once.
pub fn downsets(l: &FiniteLattice) -> Vec<ElemSet> {
    // linear extension: anything below x comes before x
    let mut order: Vec<Elem> = l.elements().collect();
    order.sort_by_key(|&x| (l.below(x).count(), x));
    let mut out = Vec::new();
    fn go(l: &FiniteLattice, order: &[Elem], i: usize, cur: ElemSet, out: &mut Vec<ElemSet>) {
        let Some(&x) = order.get(i) else {
            out.push(cur);
            return;
        };
        go(l, order, i + 1, cur, out);
        if l.below(x).all(|y| y == x || cur.contains(y)) {
            let mut with = cur;
            with.insert(x);
            go(l, order, i + 1, with, out);
        }
    }
    go(l, &order, 0, ElemSet::empty(), &mut out);
    out
}

/// `DI(L)` ordered by inclusion.
#[derive(Debug, Clone)]
pub struct IdealLattice {
    base: Arc<FiniteLattice>,
    ideals: Vec<ElemSet>,
    lookup: HashMap<ElemSet, usize>,
    order: FiniteLattice,
    principal: Vec<usize>,
}

impl PartialEq for IdealLattice {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.ideals == other.ideals
    }
}

impl Eq for IdealLattice {}

impl IdealLattice {
    /// Enumerates all distributive ideals of `base`. Ideals are listed by
    /// size, then lexicographically by member indices.
    pub fn enumerate(base: impl Into<Arc<FiniteLattice>>, max_size: usize) -> Result<Self, HullError> {
        let base = base.into();
        guard(&base, max_size)?;
        let l = &*base;
        let mut ideals: Vec<ElemSet> = downsets(l)
            .into_iter()
            .filter(|&d| d.contains(l.bottom()))
            .filter(|&d| {
                d.subsets()
                    .all(|sub| d.contains(l.join_of(sub.iter())) || !distributes(l, sub))
            })
            .collect();
        ideals.sort_by_cached_key(|s| (s.len(), s.iter().collect::<Vec<_>>()));
        let lookup: HashMap<ElemSet, usize> = ideals.iter().enumerate().map(|(i, &s)| (s, i)).collect();

        let n = ideals.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = ideals[i].is_subset(ideals[j]);
            }
        }
        let labels = ideals.iter().map(|&s| format_set(l, s)).collect();
        let order = FiniteLattice::from_relation(format!("DI({})", l.name()), labels, leq)?;
        if let fail @ Verdict::Fail(_) = order.frame_check() {
            return Err(HullError::NotAFrame(l.name().to_owned(), fail));
        }
        let principal = l
            .elements()
            .map(|a| lookup[&principal(l, a)])
            .collect();
        Ok(IdealLattice {
            base,
            ideals,
            lookup,
            order,
            principal,
        })
    }

    pub fn base(&self) -> &FiniteLattice {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<FiniteLattice> {
        &self.base
    }

    /// The inclusion order as a lattice whose elements are ideal indices.
    pub fn order(&self) -> &FiniteLattice {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn ideals(&self) -> &[ElemSet] {
        &self.ideals
    }

    pub fn ideal(&self, i: usize) -> ElemSet {
        self.ideals[i]
    }

    pub fn index_of(&self, s: ElemSet) -> Option<usize> {
        self.lookup.get(&s).copied()
    }

    pub fn label(&self, i: usize) -> &str {
        self.order.label(i)
    }

    /// Least ideal containing `s`: the intersection of all ideals above it.
    pub fn closure(&self, s: ElemSet) -> usize {
        let meet = self
            .ideals
            .iter()
            .filter(|&&d| s.is_subset(d))
            .fold(ElemSet::full(self.base.size()), |acc, &d| acc.intersection(d));
        self.lookup[&meet]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.order.meet(i, j)
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.order.join(i, j)
    }

    /// `a ↦ ↓a`.
    pub fn principal(&self, a: Elem) -> usize {
        self.principal[a]
    }

    pub fn embed_principal(&self) -> &[usize] {
        &self.principal
    }

    pub fn is_principal(&self, i: usize) -> bool {
        self.principal[self.resolution_to_lattice(i)] == i
    }

    /// `⋁A` in the base lattice.
    pub fn resolution_to_lattice(&self, i: usize) -> Elem {
        self.base.join_of(self.ideals[i].iter())
    }

    /// `ℛ(A) = ↓(⋁A)`.
    pub fn resolution(&self, i: usize) -> usize {
        self.principal(self.resolution_to_lattice(i))
    }
}

/// Free-function form of [`IdealLattice::resolution`].
pub fn operational_resolution(di: &IdealLattice, ideal: usize) -> usize {
    di.resolution(ideal)
}

/// The one-pass formula, the least-fixpoint closure and (when given) the
/// intersection of enumerated ideals agree on every subset of `l`.
/// Witness: the first disagreeing subset.
pub fn closure_agreement(l: &FiniteLattice, di: Option<&IdealLattice>) -> Verdict {
    // both sides only see ↓A, so each downset is computed once
    let mut seen: HashMap<ElemSet, (ElemSet, ElemSet)> = HashMap::new();
    for a in ElemSet::full(l.size()).subsets() {
        let (fix, one) = *seen
            .entry(downset(l, a))
            .or_insert_with_key(|&d| (closure_c(l, d).members(), closure_one_pass(l, d)));
        let by_di = di.map(|d| d.ideal(d.closure(a)));
        if fix != one || by_di.is_some_and(|d| d != fix) {
            return Verdict::fail(
                [format_set(l, a)],
                format!(
                    "fixpoint {} vs one-pass {}{}",
                    format_set(l, fix),
                    format_set(l, one),
                    by_di.map(|d| format!(" vs enumerated {}", format_set(l, d))).unwrap_or_default()
                ),
            );
        }
    }
    Verdict::Pass
}

/// First pair of ideals whose `DI(L)`-join is strictly larger than their
/// union, if any.
pub fn suprema_gap(di: &IdealLattice) -> Option<(usize, usize)> {
    for i in 0..di.len() {
        for j in (i + 1)..di.len() {
            if di.ideal(di.join(i, j)) != di.ideal(i).union(di.ideal(j)) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Laws of `DI(L)` and of the principal embedding and resolution, in report
/// order.
pub fn structure_checks(di: &IdealLattice) -> Vec<(&'static str, Verdict)> {
    let l = di.base();
    let order = di.order();
    let mut out = Vec::new();
    out.push(("frame", order.frame_check()));

    let lattice_ops = (|| {
        for i in 0..di.len() {
            for j in 0..di.len() {
                let inter = di.ideal(i).intersection(di.ideal(j));
                if di.ideal(di.meet(i, j)) != inter {
                    return Verdict::fail([di.label(i), di.label(j)], "meet is not the intersection");
                }
                let joined = di.ideal(di.closure(di.ideal(i).union(di.ideal(j))));
                if di.ideal(di.join(i, j)) != joined {
                    return Verdict::fail([di.label(i), di.label(j)], "join is not the closure of the union");
                }
            }
        }
        Verdict::Pass
    })();
    out.push(("meets_intersect_joins_close", lattice_ops));

    let ends = if di.ideal(order.bottom()) != ElemSet::singleton(l.bottom()) {
        Verdict::fail([di.label(order.bottom())], "bottom ideal is not {0}")
    } else if di.ideal(order.top()) != ElemSet::full(l.size()) {
        Verdict::fail([di.label(order.top())], "top ideal is not the whole lattice")
    } else {
        Verdict::Pass
    };
    out.push(("bounds", ends));

    let embedding = (|| {
        for a in l.elements() {
            for b in l.elements() {
                if a != b && di.principal(a) == di.principal(b) {
                    return Verdict::fail([l.label(a), l.label(b)], "embedding is not injective");
                }
                if di.principal(l.meet(a, b)) != di.meet(di.principal(a), di.principal(b)) {
                    return Verdict::fail([l.label(a), l.label(b)], "embedding does not preserve the meet");
                }
            }
        }
        for s in ElemSet::full(l.size()).subsets() {
            if distributes(l, s) {
                let lhs = di.principal(l.join_of(s.iter()));
                let rhs = s.iter().map(|x| di.principal(x)).fold(order.bottom(), |acc, j| di.join(acc, j));
                if lhs != rhs {
                    return Verdict::fail(
                        [format_set(l, s)],
                        "embedding does not preserve a distributive join",
                    );
                }
            }
        }
        Verdict::Pass
    })();
    out.push(("principal_embedding", embedding));

    let dense = (0..di.len())
        .find(|&i| {
            let below = l.elements().filter(|&a| di.ideal(di.principal(a)).is_subset(di.ideal(i)));
            below.map(|a| di.principal(a)).fold(order.bottom(), |acc, j| di.join(acc, j)) != i
        })
        .map_or(Verdict::Pass, |i| {
            Verdict::fail([di.label(i)], "not the join of the principal ideals below it")
        });
    out.push(("join_density", dense));

    let resolution = (|| {
        for i in 0..di.len() {
            let r = di.resolution(i);
            if !order.leq(i, r) {
                return Verdict::fail([di.label(i)], "resolution is not extensive");
            }
            if di.resolution(r) != r {
                return Verdict::fail([di.label(i)], "resolution is not idempotent");
            }
            if (r == i) != di.is_principal(i) {
                return Verdict::fail([di.label(i)], "fixpoints are not exactly the principal ideals");
            }
            for j in 0..di.len() {
                if order.leq(i, j) && !order.leq(r, di.resolution(j)) {
                    return Verdict::fail([di.label(i), di.label(j)], "resolution is not monotone");
                }
            }
        }
        // fixpoints ordered by inclusion mirror L through ⋁
        for a in l.elements() {
            for b in l.elements() {
                if order.leq(di.principal(a), di.principal(b)) != l.leq(a, b)
                    || di.resolution_to_lattice(di.principal(a)) != a
                {
                    return Verdict::fail([l.label(a), l.label(b)], "fixpoints are not order-isomorphic to L");
                }
            }
        }
        Verdict::Pass
    })();
    out.push(("resolution_closure", resolution));
    out
}
