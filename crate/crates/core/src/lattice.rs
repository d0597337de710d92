//! Finite lattices given by Hasse data, with meet/join tables and the
//! structural checks (atomisticity, covering law, orthomodularity,
//! distributivity) every other module builds on.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::verdict::Verdict;

/// Index of an element inside a [`FiniteLattice`].
pub type Elem = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("lattice `{0}` has no elements")]
    Empty(String),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("cover ({0}, {1}) references an undeclared element")]
    DanglingCover(String, String),
    #[error("cover relation has a cycle: {0} and {1} lie below each other")]
    Cycle(String, String),
    #[error("elements {0} and {1} have no unique join")]
    NoJoin(String, String),
    #[error("elements {0} and {1} have no unique meet")]
    NoMeet(String, String),
    #[error("no bottom element")]
    NoBottom,
    #[error("no top element")]
    NoTop,
    #[error("orthocomplement table has {got} entries for {expected} elements")]
    OrthoArity { expected: usize, got: usize },
    #[error("orthocomplement is not involutive at {0}")]
    OrthoNotInvolutive(String),
    #[error("orthocomplement is not antitone: {0} <= {1} but {1}' is not below {0}'")]
    OrthoNotAntitone(String, String),
    #[error("orthocomplement is not a complement at {0}")]
    OrthoNotComplement(String),
    #[error("lattice `{0}` is not a frame: {1}")]
    NotAFrame(String, Verdict),
    #[error("lattice has {size} elements, limit is {limit}")]
    TooLarge { size: usize, limit: usize },
}

/// A finite lattice. The order is the reflexive-transitive closure of the
/// cover pairs it was built from; meet and join are tabulated.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    name: String,
    labels: Vec<String>,
    index: HashMap<String, Elem>,
    covers: Vec<(Elem, Elem)>,
    leq: Vec<bool>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("name", &self.name)
            .field("elements", &self.labels)
            .finish_non_exhaustive()
    }
}

fn label_index(labels: &[String]) -> Result<HashMap<String, Elem>, LatticeError> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(LatticeError::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

impl FiniteLattice {
    /// Builds a lattice from element labels and cover pairs `(lower, upper)`.
    pub fn from_covers<S: AsRef<str>>(
        name: impl Into<String>,
        elements: &[S],
        covers: &[(S, S)],
    ) -> Result<Self, LatticeError> {
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_owned()).collect();
        let index = label_index(&labels)?;
        let mut pairs = Vec::with_capacity(covers.len());
        for (lo, hi) in covers {
            let (lo, hi) = (lo.as_ref(), hi.as_ref());
            match (index.get(lo), index.get(hi)) {
                (Some(&i), Some(&j)) => pairs.push((i, j)),
                _ => return Err(LatticeError::DanglingCover(lo.into(), hi.into())),
            }
        }
        Self::from_index_covers(name, labels, pairs)
    }

    /// Same as [`from_covers`](Self::from_covers) with covers given by index.
    pub fn from_index_covers(
        name: impl Into<String>,
        labels: Vec<String>,
        covers: Vec<(Elem, Elem)>,
    ) -> Result<Self, LatticeError> {
        let name = name.into();
        let n = labels.len();
        if n == 0 {
            return Err(LatticeError::Empty(name));
        }
        let index = label_index(&labels)?;
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(i, j) in &covers {
            if i >= n || j >= n {
                let lbl = |k: usize| labels.get(k).cloned().unwrap_or_else(|| format!("#{k}"));
                return Err(LatticeError::DanglingCover(lbl(i), lbl(j)));
            }
            if i == j {
                return Err(LatticeError::Cycle(labels[i].clone(), labels[j].clone()));
            }
            leq[i * n + j] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::from_order(name, labels, index, covers, leq)
    }

    /// Builds from an explicit order relation (`leq[i * n + j]` iff i <= j);
    /// the covers are recomputed from it.
    pub fn from_relation(
        name: impl Into<String>,
        labels: Vec<String>,
        leq: Vec<bool>,
    ) -> Result<Self, LatticeError> {
        let name = name.into();
        let n = labels.len();
        if n == 0 {
            return Err(LatticeError::Empty(name));
        }
        assert_eq!(leq.len(), n * n, "order relation must be n x n");
        let index = label_index(&labels)?;
        let covers = hasse(n, &leq);
        Self::from_order(name, labels, index, covers, leq)
    }

    fn from_order(
        name: String,
        labels: Vec<String>,
        index: HashMap<String, Elem>,
        covers: Vec<(Elem, Elem)>,
        leq: Vec<bool>,
    ) -> Result<Self, LatticeError> {
        let n = labels.len();
        let le = |i: usize, j: usize| leq[i * n + j];
        for i in 0..n {
            for j in (i + 1)..n {
                if le(i, j) && le(j, i) {
                    return Err(LatticeError::Cycle(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        let below_count: Vec<usize> = (0..n).map(|j| (0..n).filter(|&i| le(i, j)).count()).collect();

        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for i in 0..n {
            for j in i..n {
                // least upper bound: the upper bound with fewest elements below,
                // provided it sits below every other upper bound
                let ub: Vec<Elem> = (0..n).filter(|&k| le(i, k) && le(j, k)).collect();
                let cand = ub.iter().copied().min_by_key(|&k| below_count[k]);
                let lub = cand.filter(|&c| ub.iter().all(|&k| le(c, k)));
                let Some(lub) = lub else {
                    return Err(LatticeError::NoJoin(labels[i].clone(), labels[j].clone()));
                };
                let lb: Vec<Elem> = (0..n).filter(|&k| le(k, i) && le(k, j)).collect();
                let cand = lb.iter().copied().max_by_key(|&k| below_count[k]);
                let glb = cand.filter(|&c| lb.iter().all(|&k| le(k, c)));
                let Some(glb) = glb else {
                    return Err(LatticeError::NoMeet(labels[i].clone(), labels[j].clone()));
                };
                join[i * n + j] = lub;
                join[j * n + i] = lub;
                meet[i * n + j] = glb;
                meet[j * n + i] = glb;
            }
        }
        let bottom = (0..n).find(|&b| (0..n).all(|x| le(b, x))).ok_or(LatticeError::NoBottom)?;
        let top = (0..n).find(|&t| (0..n).all(|x| le(x, t))).ok_or(LatticeError::NoTop)?;
        Ok(FiniteLattice {
            name,
            labels,
            index,
            covers,
            leq,
            meet,
            join,
            bottom,
            top,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e]
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.index.get(label).copied()
    }

    /// Cover pairs as supplied at construction.
    pub fn covers(&self) -> &[(Elem, Elem)] {
        &self.covers
    }

    /// The true cover relation of the order (transitive reduction).
    pub fn hasse(&self) -> Vec<(Elem, Elem)> {
        hasse(self.size(), &self.leq)
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.size() + b]
    }

    #[inline]
    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    /// `b` covers `a`: a < b with nothing strictly between.
    pub fn is_cover(&self, a: Elem, b: Elem) -> bool {
        self.lt(a, b) && !self.elements().any(|x| self.lt(a, x) && self.lt(x, b))
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.size() + b]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.size() + b]
    }

    /// Least upper bound of a set; the empty join is bottom.
    pub fn join_of(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Greatest lower bound of a set; the empty meet is top.
    pub fn meet_of(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn below(&self, a: Elem) -> impl Iterator<Item = Elem> + '_ {
        self.elements().filter(move |&x| self.leq(x, a))
    }

    /// Order dual: same labels, reversed order.
    pub fn dual(&self) -> FiniteLattice {
        let n = self.size();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = self.leq(j, i);
            }
        }
        FiniteLattice::from_relation(format!("{}^op", self.name), self.labels.clone(), leq)
            .expect("dual of a lattice is a lattice")
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&j| self.elements().filter(|&x| self.is_cover(x, j)).count() == 1)
            .collect()
    }

    /// Elements covering bottom.
    pub fn atoms(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.is_cover(self.bottom, x)).collect()
    }

    /// Atoms, plus a verdict on whether every element is the join of the
    /// atoms below it. The witness is the first element that is not.
    pub fn atoms_and_atomisticity(&self) -> (Vec<Elem>, Verdict) {
        let atoms = self.atoms();
        for x in self.elements() {
            let j = self.join_of(atoms.iter().copied().filter(|&p| self.leq(p, x)));
            if j != x {
                return (
                    atoms,
                    Verdict::fail(
                        [self.label(x)],
                        format!("join of atoms below {} is {}", self.label(x), self.label(j)),
                    ),
                );
            }
        }
        (atoms, Verdict::Pass)
    }

    /// For every atom p and every a with p ∧ a = 0, a ∨ p covers a.
    /// Witness `(p, a)`.
    pub fn covering_law(&self) -> Verdict {
        for p in self.atoms() {
            for a in self.elements() {
                if self.meet(p, a) != self.bottom {
                    continue;
                }
                let ap = self.join(a, p);
                if !self.is_cover(a, ap) {
                    return Verdict::fail(
                        [self.label(p), self.label(a)],
                        format!(
                            "{} v {} = {} does not cover {}",
                            self.label(a),
                            self.label(p),
                            self.label(ap),
                            self.label(a)
                        ),
                    );
                }
            }
        }
        Verdict::Pass
    }

    /// Meet distributes over all joins. In a finite lattice this reduces to
    /// binary distributivity (the empty join is trivial), so the witness is
    /// `(x, y, z)` with x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z).
    pub fn frame_check(&self) -> Verdict {
        for x in self.elements() {
            for y in self.elements() {
                for z in (y + 1)..self.size() {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Verdict::fail(
                            [self.label(x), self.label(y), self.label(z)],
                            format!(
                                "{x} ^ ({y} v {z}) = {} but ({x} ^ {y}) v ({x} ^ {z}) = {}",
                                self.label(lhs),
                                self.label(rhs),
                                x = self.label(x),
                                y = self.label(y),
                                z = self.label(z),
                            ),
                        );
                    }
                }
            }
        }
        Verdict::Pass
    }

    /// a <= c implies a ∨ (b ∧ c) = (a ∨ b) ∧ c. Witness `(a, b, c)`.
    pub fn modularity_check(&self) -> Verdict {
        for a in self.elements() {
            for c in self.elements().filter(|&c| self.leq(a, c)) {
                for b in self.elements() {
                    let lhs = self.join(a, self.meet(b, c));
                    let rhs = self.meet(self.join(a, b), c);
                    if lhs != rhs {
                        return Verdict::fail(
                            [self.label(a), self.label(b), self.label(c)],
                            "modular law fails",
                        );
                    }
                }
            }
        }
        Verdict::Pass
    }
}

fn hasse(n: usize, leq: &[bool]) -> Vec<(Elem, Elem)> {
    let lt = |i: usize, j: usize| i != j && leq[i * n + j];
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Heyting arrow on a lattice that has passed [`FiniteLattice::frame_check`].
#[derive(Debug, Clone, Copy)]
pub struct Frame<'a> {
    lattice: &'a FiniteLattice,
}

impl<'a> Frame<'a> {
    pub fn new(lattice: &'a FiniteLattice) -> Result<Self, LatticeError> {
        match lattice.frame_check() {
            Verdict::Pass => Ok(Frame { lattice }),
            fail => Err(LatticeError::NotAFrame(lattice.name().to_owned(), fail)),
        }
    }

    pub fn lattice(&self) -> &'a FiniteLattice {
        self.lattice
    }

    /// a → b = ⋁{c | c ∧ a <= b}.
    pub fn arrow(&self, a: Elem, b: Elem) -> Elem {
        let l = self.lattice;
        l.join_of(l.elements().filter(|&c| l.leq(l.meet(c, a), b)))
    }
}

/// One-shot form of [`Frame::arrow`]; re-validates the frame law every call.
pub fn heyting_arrow(lattice: &FiniteLattice, a: Elem, b: Elem) -> Result<Elem, LatticeError> {
    Frame::new(lattice).map(|h| h.arrow(a, b))
}

/// A lattice as read from a file or produced by a generator: with or
/// without an orthocomplement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyLattice {
    Plain(FiniteLattice),
    Ortho(OrthoLattice),
}

impl AnyLattice {
    pub fn lattice(&self) -> &FiniteLattice {
        match self {
            AnyLattice::Plain(l) => l,
            AnyLattice::Ortho(o) => o.lattice(),
        }
    }

    pub fn ortho(&self) -> Option<&OrthoLattice> {
        match self {
            AnyLattice::Plain(_) => None,
            AnyLattice::Ortho(o) => Some(o),
        }
    }

    pub fn name(&self) -> &str {
        self.lattice().name()
    }
}

impl From<FiniteLattice> for AnyLattice {
    fn from(l: FiniteLattice) -> Self {
        AnyLattice::Plain(l)
    }
}

impl From<OrthoLattice> for AnyLattice {
    fn from(o: OrthoLattice) -> Self {
        AnyLattice::Ortho(o)
    }
}

/// A finite lattice with an orthocomplementation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoLattice {
    base: FiniteLattice,
    ortho: Vec<Elem>,
}

impl OrthoLattice {
    pub fn new(base: FiniteLattice, ortho: Vec<Elem>) -> Result<Self, LatticeError> {
        let n = base.size();
        if ortho.len() != n {
            return Err(LatticeError::OrthoArity {
                expected: n,
                got: ortho.len(),
            });
        }
        if let Some(&bad) = ortho.iter().find(|&&o| o >= n) {
            return Err(LatticeError::OrthoArity {
                expected: n,
                got: bad + 1,
            });
        }
        for a in base.elements() {
            if ortho[ortho[a]] != a {
                return Err(LatticeError::OrthoNotInvolutive(base.label(a).into()));
            }
            if base.meet(a, ortho[a]) != base.bottom() || base.join(a, ortho[a]) != base.top() {
                return Err(LatticeError::OrthoNotComplement(base.label(a).into()));
            }
        }
        for a in base.elements() {
            for b in base.elements() {
                if base.leq(a, b) && !base.leq(ortho[b], ortho[a]) {
                    return Err(LatticeError::OrthoNotAntitone(
                        base.label(a).into(),
                        base.label(b).into(),
                    ));
                }
            }
        }
        Ok(OrthoLattice { base, ortho })
    }

    /// Builds from a label table.
    pub fn from_labels<S: AsRef<str>>(
        base: FiniteLattice,
        pairs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self, LatticeError> {
        let n = base.size();
        let mut ortho = vec![usize::MAX; n];
        for (a, b) in pairs {
            let (a, b) = (a.as_ref(), b.as_ref());
            match (base.index_of(a), base.index_of(b)) {
                (Some(i), Some(j)) => ortho[i] = j,
                _ => return Err(LatticeError::DanglingCover(a.into(), b.into())),
            }
        }
        if ortho.contains(&usize::MAX) {
            return Err(LatticeError::OrthoArity {
                expected: n,
                got: ortho.iter().filter(|&&o| o != usize::MAX).count(),
            });
        }
        Self::new(base, ortho)
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.base
    }

    pub fn into_lattice(self) -> FiniteLattice {
        self.base
    }

    #[inline]
    pub fn ortho(&self, a: Elem) -> Elem {
        self.ortho[a]
    }

    pub fn ortho_table(&self) -> &[Elem] {
        &self.ortho
    }

    /// For all a <= b: b = a ∨ (a' ∧ b). Witness `(a, b)`.
    pub fn orthomodularity_check(&self) -> Verdict {
        let l = &self.base;
        for a in l.elements() {
            for b in l.elements().filter(|&b| l.leq(a, b)) {
                let r = l.join(a, l.meet(self.ortho(a), b));
                if r != b {
                    return Verdict::fail(
                        [l.label(a), l.label(b)],
                        format!(
                            "{a} <= {b} but {a} v ({a}' ^ {b}) = {}",
                            l.label(r),
                            a = l.label(a),
                            b = l.label(b)
                        ),
                    );
                }
            }
        }
        Verdict::Pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(elements: &[&str], covers: &[(&str, &str)]) -> FiniteLattice {
        FiniteLattice::from_covers("t", elements, covers).unwrap()
    }

    fn mo2() -> OrthoLattice {
        let l = lat(
            &["0", "a", "a'", "b", "b'", "1"],
            &[
                ("0", "a"),
                ("0", "a'"),
                ("0", "b"),
                ("0", "b'"),
                ("a", "1"),
                ("a'", "1"),
                ("b", "1"),
                ("b'", "1"),
            ],
        );
        OrthoLattice::from_labels(
            l,
            [("0", "1"), ("1", "0"), ("a", "a'"), ("a'", "a"), ("b", "b'"), ("b'", "b")],
        )
        .unwrap()
    }

    fn b2() -> FiniteLattice {
        lat(&["0", "p", "q", "1"], &[("0", "p"), ("0", "q"), ("p", "1"), ("q", "1")])
    }

    #[test]
    fn two_chain() {
        let l = lat(&["0", "1"], &[("0", "1")]);
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 1);
        assert!(l.leq(0, 1) && !l.leq(1, 0));
    }

    #[test]
    fn missing_join_is_reported() {
        let err = FiniteLattice::from_covers("v", &["0", "x", "y"], &[("0", "x"), ("0", "y")]).unwrap_err();
        assert_eq!(err, LatticeError::NoJoin("x".into(), "y".into()));
    }

    #[test]
    fn cycle_is_reported() {
        let err = FiniteLattice::from_covers("c", &["0", "x", "1"], &[("0", "x"), ("x", "1"), ("1", "x")])
            .unwrap_err();
        assert!(matches!(err, LatticeError::Cycle(..)), "{err}");
        let err = FiniteLattice::from_covers("c", &["0"], &[("0", "0")]).unwrap_err();
        assert!(matches!(err, LatticeError::Cycle(..)));
    }

    #[test]
    fn dangling_and_duplicate() {
        let err = FiniteLattice::from_covers("d", &["0", "1"], &[("0", "2")]).unwrap_err();
        assert_eq!(err, LatticeError::DanglingCover("0".into(), "2".into()));
        let err = FiniteLattice::from_covers("d", &["0", "0"], &[]).unwrap_err();
        assert_eq!(err, LatticeError::DuplicateLabel("0".into()));
        let err = FiniteLattice::from_covers::<&str>("d", &[], &[]).unwrap_err();
        assert!(matches!(err, LatticeError::Empty(_)));
    }

    #[test]
    fn redundant_covers_are_closed() {
        let l = lat(&["0", "m", "1"], &[("0", "m"), ("m", "1"), ("0", "1")]);
        assert_eq!(l.hasse(), vec![(0, 1), (1, 2)]);
        assert_eq!(l.covers().len(), 3);
    }

    #[test]
    fn joins_and_meets() {
        let o = mo2();
        let l = o.lattice();
        let id = |s| l.index_of(s).unwrap();
        assert_eq!(l.join_of([]), id("0"));
        assert_eq!(l.meet_of([]), id("1"));
        assert_eq!(l.join_of([id("a"), id("a'")]), id("1"));
        for p in ["a", "a'", "b", "b'"] {
            for q in ["a", "a'", "b", "b'"] {
                if p != q {
                    assert_eq!(l.join(id(p), id(q)), id("1"));
                    assert_eq!(l.meet(id(p), id(q)), id("0"));
                }
            }
        }
        let b = b2();
        assert_eq!(b.join_of([1, 2]), 3);
    }

    #[test]
    fn atomisticity() {
        let o = mo2();
        let (atoms, v) = o.lattice().atoms_and_atomisticity();
        assert_eq!(atoms.len(), 4);
        assert!(v.is_pass());

        let chain = lat(&["0", "m", "1"], &[("0", "m"), ("m", "1")]);
        let (atoms, v) = chain.atoms_and_atomisticity();
        assert_eq!(atoms, vec![1]);
        let w = v.witness().unwrap();
        assert_eq!(w.labels, vec!["1"]);
    }

    #[test]
    fn covering_law_witness() {
        let l = lat(
            &["0", "p", "q", "x", "1"],
            &[("0", "p"), ("0", "q"), ("q", "x"), ("p", "1"), ("x", "1")],
        );
        let v = l.covering_law();
        assert_eq!(v.witness().unwrap().labels, vec!["p", "q"]);
        assert!(mo2().lattice().covering_law().is_pass());
    }

    #[test]
    fn frame_check_mo2_fails_with_recheckable_witness() {
        let o = mo2();
        let l = o.lattice();
        let v = l.frame_check();
        let w = v.witness().expect("MO2 is not distributive");
        let [x, y, z] = [0, 1, 2].map(|i| l.index_of(&w.labels[i]).unwrap());
        assert_ne!(l.meet(x, l.join(y, z)), l.join(l.meet(x, y), l.meet(x, z)));
        // the instance a ^ (b v b') is a violation too
        let id = |s| l.index_of(s).unwrap();
        let (a, b, bp) = (id("a"), id("b"), id("b'"));
        assert_eq!(l.meet(a, l.join(b, bp)), a);
        assert_eq!(l.join(l.meet(a, b), l.meet(a, bp)), l.bottom());
        assert!(b2().frame_check().is_pass());
    }

    #[test]
    fn heyting_arrow_values() {
        let b = b2();
        let h = Frame::new(&b).unwrap();
        assert_eq!(h.arrow(1, 2), 2);
        for a in b.elements() {
            assert_eq!(h.arrow(a, a), b.top());
            assert_eq!(h.arrow(b.top(), a), a);
        }
        let o = mo2();
        assert!(matches!(
            heyting_arrow(o.lattice(), 1, 2),
            Err(LatticeError::NotAFrame(..))
        ));
    }

    #[test]
    fn ortho_validation() {
        let l = b2();
        let err = OrthoLattice::new(l.clone(), vec![3, 2, 3, 0]).unwrap_err();
        assert!(matches!(err, LatticeError::OrthoNotInvolutive(_)));
        let err = OrthoLattice::new(l.clone(), vec![3, 1, 2, 0]).unwrap_err();
        assert!(matches!(err, LatticeError::OrthoNotComplement(_)));
        assert!(OrthoLattice::new(l, vec![3, 2, 1, 0]).is_ok());
    }

    #[test]
    fn orthomodularity() {
        assert!(mo2().orthomodularity_check().is_pass());
        let l = lat(
            &["0", "x", "y", "y'", "x'", "1"],
            &[("0", "x"), ("x", "y"), ("y", "1"), ("0", "y'"), ("y'", "x'"), ("x'", "1")],
        );
        let o6 = OrthoLattice::from_labels(
            l,
            [("0", "1"), ("1", "0"), ("x", "x'"), ("x'", "x"), ("y", "y'"), ("y'", "y")],
        )
        .unwrap();
        let v = o6.orthomodularity_check();
        let w = v.witness().unwrap();
        let l = o6.lattice();
        let (a, b) = (l.index_of(&w.labels[0]).unwrap(), l.index_of(&w.labels[1]).unwrap());
        assert!(l.leq(a, b));
        assert_ne!(l.join(a, l.meet(o6.ortho(a), b)), b);
    }
}
