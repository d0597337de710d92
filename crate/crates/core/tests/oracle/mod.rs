//! Brute-force reference computations for finite lattices. Everything here is
//! derived from the declared cover pairs alone, by transitive closure and
//! exhaustive search, so it shares no tables with the library.

#![allow(dead_code)]

use qlogic_core::{AnyLattice, ElemSet};

pub type Mask = u32;

pub struct Oracle {
    pub n: usize,
    pub leq: Vec<Vec<bool>>,
    pub ortho: Option<Vec<usize>>,
}

impl Oracle {
    pub fn new(l: &AnyLattice) -> Oracle {
        let lat = l.lattice();
        let n = lat.size();
        assert!(n <= 16, "oracle is for small lattices");
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in lat.covers() {
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        let ortho = l.ortho().map(|o| (0..n).map(|a| o.ortho(a)).collect());
        Oracle { n, leq, ortho }
    }

    pub fn full(&self) -> Mask {
        ((1u64 << self.n) - 1) as Mask
    }

    pub fn elems(m: Mask) -> impl Iterator<Item = usize> {
        (0..32).filter(move |i| m & (1 << i) != 0)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        let ub: Vec<usize> = (0..self.n).filter(|&c| self.leq[a][c] && self.leq[b][c]).collect();
        *ub.iter().find(|&&c| ub.iter().all(|&d| self.leq[c][d])).expect("join exists")
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        let lb: Vec<usize> = (0..self.n).filter(|&c| self.leq[c][a] && self.leq[c][b]).collect();
        *lb.iter().find(|&&c| lb.iter().all(|&d| self.leq[d][c])).expect("meet exists")
    }

    pub fn bottom(&self) -> usize {
        (0..self.n).find(|&b| (0..self.n).all(|x| self.leq[b][x])).unwrap()
    }

    pub fn top(&self) -> usize {
        (0..self.n).find(|&t| (0..self.n).all(|x| self.leq[x][t])).unwrap()
    }

    pub fn join_set(&self, m: Mask) -> usize {
        Self::elems(m).fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    pub fn down(&self, m: Mask) -> Mask {
        (0..self.n)
            .filter(|&x| Self::elems(m).any(|a| self.leq[x][a]))
            .fold(0, |acc, x| acc | 1 << x)
    }

    pub fn is_distributive(&self, m: Mask) -> bool {
        let j = self.join_set(m);
        (0..self.n).all(|x| {
            let rhs = Self::elems(m).fold(self.bottom(), |acc, s| self.join(acc, self.meet(x, s)));
            self.meet(x, j) == rhs
        })
    }

    pub fn submasks(m: Mask) -> impl Iterator<Item = Mask> {
        let mut next = Some(m);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 { None } else { Some((cur - 1) & m) };
            Some(cur)
        })
    }

    /// Downsets closed under joins of their distributive subsets, ascending
    /// by mask value.
    pub fn ideals(&self) -> Vec<Mask> {
        let mut out: Vec<Mask> = (0..=self.full())
            .filter(|&d| self.down(d) == d && d != 0)
            .filter(|&d| {
                Self::submasks(d).all(|s| !self.is_distributive(s) || d & (1 << self.join_set(s)) != 0)
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Least ideal containing `a`, as the intersection of all that do.
    pub fn closure(&self, ideals: &[Mask], a: Mask) -> Mask {
        ideals.iter().filter(|&&i| i & a == a).fold(self.full(), |acc, &i| acc & i)
    }

    /// `{⋁B | B ⊆ ↓a, B distributive}`.
    pub fn one_pass(&self, a: Mask) -> Mask {
        Self::submasks(self.down(a))
            .filter(|&b| self.is_distributive(b))
            .fold(0, |acc, b| acc | 1 << self.join_set(b))
    }

    pub fn orth(&self, a: usize) -> usize {
        self.ortho.as_ref().expect("orthocomplemented")[a]
    }

    pub fn sasaki(&self, b: usize, a: usize) -> usize {
        self.meet(b, self.join(a, self.orth(b)))
    }

    pub fn hook(&self, b: usize, c: usize) -> usize {
        self.join(self.orth(b), self.meet(b, c))
    }

    pub fn is_orthomodular(&self) -> bool {
        (0..self.n).all(|a| {
            (0..self.n).all(|b| !self.leq[a][b] || b == self.join(a, self.meet(self.orth(a), b)))
        })
    }

    pub fn atoms(&self) -> Vec<usize> {
        let bot = self.bottom();
        (0..self.n)
            .filter(|&p| p != bot && (0..self.n).all(|x| x == bot || x == p || !self.leq[x][p]))
            .collect()
    }

    pub fn is_atomistic(&self) -> bool {
        let atoms = self.atoms();
        (0..self.n).all(|x| {
            let below = atoms.iter().filter(|&&p| self.leq[p][x]).fold(0, |m, &p| m | 1 << p);
            self.join_set(below) == x
        })
    }

    pub fn covers(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b] && (0..self.n).all(|x| x == a || x == b || !(self.leq[a][x] && self.leq[x][b]))
    }

    /// Covering law: for each atom p and element a with p ≰ a, a ⋖ a ∨ p.
    pub fn has_covering(&self) -> bool {
        let atoms = self.atoms();
        atoms
            .iter()
            .all(|&p| (0..self.n).all(|a| self.leq[p][a] || self.covers(a, self.join(a, p))))
    }

    pub fn is_distributive_lattice(&self) -> bool {
        (0..self.n).all(|x| {
            (0..self.n).all(|y| {
                (0..self.n).all(|z| self.meet(x, self.join(y, z)) == self.join(self.meet(x, y), self.meet(x, z)))
            })
        })
    }
}

pub fn to_mask(s: ElemSet) -> Mask {
    Mask::try_from(s.bits()).expect("small set")
}

pub fn to_set(m: Mask) -> ElemSet {
    ElemSet::from_bits(m as u128)
}
