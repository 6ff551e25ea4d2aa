//! Finite distributive lattices with explicit operation tables, and their
//! homomorphisms.

use std::fmt;

use crate::bits::ElemSet;
use crate::error::{capacity, Error, Result};

/// Largest lattice the crate will hold; element sets are [`ElemSet`]s.
pub const LATTICE_CAP: usize = ElemSet::CAPACITY;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteDistLattice {
    names: Vec<String>,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

fn table(n: usize, f: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    (0..n * n).map(|k| f(k / n, k % n)).collect()
}

impl FiniteDistLattice {
    /// Builds a lattice from row-major join and meet tables, checking every
    /// lattice law and distributivity exhaustively.
    pub fn new(
        names: Vec<String>,
        join: Vec<usize>,
        meet: Vec<usize>,
        bottom: usize,
        top: usize,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidArgument("a lattice has at least one element".into()));
        }
        capacity("lattice", n, LATTICE_CAP)?;
        if join.len() != n * n || meet.len() != n * n {
            return Err(Error::Malformed("lattice tables have the wrong shape".into()));
        }
        if join.iter().chain(&meet).any(|&v| v >= n) || bottom >= n || top >= n {
            return Err(Error::Malformed("lattice table entry out of range".into()));
        }
        let lattice = Self {
            names,
            join,
            meet,
            bottom,
            top,
        };
        if let Some(law) = lattice.violated_law() {
            return Err(Error::InvalidArgument(format!("not a distributive lattice: {law}")));
        }
        Ok(lattice)
    }

    pub fn from_fns(
        names: Vec<String>,
        join: impl Fn(usize, usize) -> usize,
        meet: impl Fn(usize, usize) -> usize,
        bottom: usize,
        top: usize,
    ) -> Result<Self> {
        let n = names.len();
        Self::new(names, table(n, join), table(n, meet), bottom, top)
    }

    fn violated_law(&self) -> Option<String> {
        let n = self.size();
        let (j, m) = (|a, b| self.join(a, b), |a, b| self.meet(a, b));
        for a in 0..n {
            if j(a, a) != a || m(a, a) != a {
                return Some(format!("idempotence fails at {}", self.name(a)));
            }
            if j(self.bottom, a) != a || m(self.top, a) != a {
                return Some(format!("bounds are not neutral at {}", self.name(a)));
            }
            for b in 0..n {
                if j(a, b) != j(b, a) || m(a, b) != m(b, a) {
                    return Some(format!("commutativity fails at ({}, {})", self.name(a), self.name(b)));
                }
                if j(a, m(a, b)) != a || m(a, j(a, b)) != a {
                    return Some(format!("absorption fails at ({}, {})", self.name(a), self.name(b)));
                }
                for c in 0..n {
                    let triple = || format!("({}, {}, {})", self.name(a), self.name(b), self.name(c));
                    if j(a, j(b, c)) != j(j(a, b), c) || m(a, m(b, c)) != m(m(a, b), c) {
                        return Some(format!("associativity fails at {}", triple()));
                    }
                    if m(a, j(b, c)) != j(m(a, b), m(a, c)) {
                        return Some(format!("distributivity fails at {}", triple()));
                    }
                }
            }
        }
        None
    }

    /// The chain `0 < a < b < … < 1` with `k` elements.
    pub fn chain(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("chain length must be at least 1".into()));
        }
        capacity("chain", k, 27)?;
        let names = (0..k)
            .map(|i| match i {
                0 => "0".to_string(),
                i if i == k - 1 => "1".to_string(),
                i => ((b'a' + (i - 1) as u8) as char).to_string(),
            })
            .collect();
        Self::from_fns(names, usize::max, usize::min, 0, k - 1)
    }

    /// The Boolean lattice of subsets of `atoms` atoms named `p, q, r, s`.
    /// Element `i` is the subset with bit mask `i`.
    pub fn powerset(atoms: usize) -> Result<Self> {
        capacity("powerset atoms", atoms, 4)?;
        let n = 1usize << atoms;
        let names = (0..n)
            .map(|mask| match mask {
                0 => "0".to_string(),
                m if m == n - 1 => "1".to_string(),
                m => (0..atoms)
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| ['p', 'q', 'r', 's'][i])
                    .collect(),
            })
            .collect();
        Self::from_fns(names, |a, b| a | b, |a, b| a & b, 0, n - 1)
    }

    /// Divisors of `n` under divisibility; elements are the divisors in
    /// ascending order.
    pub fn divisors(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("divisor lattice needs n >= 1".into()));
        }
        let divs: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
        capacity("divisor lattice", divs.len(), LATTICE_CAP)?;
        let pos = |v: usize| divs.iter().position(|&d| d == v).expect("closed under gcd/lcm");
        let names = divs.iter().map(|d| d.to_string()).collect();
        Self::from_fns(
            names,
            |a, b| pos(lcm(divs[a], divs[b])),
            |a, b| pos(gcd(divs[a], divs[b])),
            0,
            divs.len() - 1,
        )
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size() + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.size())
    }

    /// Least subset containing `gens`, the bounds, and closed under both
    /// operations.
    pub fn generated(&self, gens: ElemSet) -> ElemSet {
        let mut s = gens.with(self.bottom).with(self.top);
        loop {
            let mut next = s;
            for a in s {
                for b in s {
                    next.insert(self.join(a, b));
                    next.insert(self.meet(a, b));
                }
            }
            if next == s {
                return s;
            }
            s = next;
        }
    }

    /// Pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let lt = |a: usize, b: usize| a != b && self.leq(a, b);
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Join-irreducible elements: non-bottom elements with exactly one lower
    /// cover.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        let covers = self.covers();
        (0..self.size())
            .filter(|&a| a != self.bottom && covers.iter().filter(|c| c.1 == a).count() == 1)
            .collect()
    }
}

impl fmt::Debug for FiniteDistLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteDistLattice")
            .field("names", &self.names)
            .field("covers", &self.covers())
            .finish()
    }
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// A map between finite distributive lattices preserving both operations and
/// both bounds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticeHom {
    source: FiniteDistLattice,
    target: FiniteDistLattice,
    map: Vec<usize>,
}

impl LatticeHom {
    pub fn new(source: FiniteDistLattice, target: FiniteDistLattice, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.size() || map.iter().any(|&v| v >= target.size()) {
            return Err(Error::Malformed("homomorphism table has the wrong shape".into()));
        }
        if let Some(why) = hom_violation(&source, &target, &map) {
            return Err(Error::InvalidArgument(format!("not a lattice homomorphism: {why}")));
        }
        Ok(Self { source, target, map })
    }

    pub fn identity(l: &FiniteDistLattice) -> Self {
        Self {
            source: l.clone(),
            target: l.clone(),
            map: (0..l.size()).collect(),
        }
    }

    pub fn source(&self) -> &FiniteDistLattice {
        &self.source
    }

    pub fn target(&self) -> &FiniteDistLattice {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &LatticeHom) -> Result<LatticeHom> {
        if self.target != other.source {
            return Err(Error::InvalidArgument("homomorphisms are not composable".into()));
        }
        Ok(LatticeHom {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&a| other.map[a]).collect(),
        })
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        for &v in &self.map {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        seen.iter().all(|&s| s)
    }
}

fn hom_violation(s: &FiniteDistLattice, t: &FiniteDistLattice, map: &[usize]) -> Option<String> {
    if map[s.bottom()] != t.bottom() {
        return Some(format!("bottom {} is not sent to bottom", s.name(s.bottom())));
    }
    if map[s.top()] != t.top() {
        return Some(format!("top {} is not sent to top", s.name(s.top())));
    }
    for a in 0..s.size() {
        for b in 0..s.size() {
            if map[s.join(a, b)] != t.join(map[a], map[b]) {
                return Some(format!("join of ({}, {}) is not preserved", s.name(a), s.name(b)));
            }
            if map[s.meet(a, b)] != t.meet(map[a], map[b]) {
                return Some(format!("meet of ({}, {}) is not preserved", s.name(a), s.name(b)));
            }
        }
    }
    None
}

/// Every lattice homomorphism `s → t`, by backtracking over the elements of
/// `s` in index order. Tables are returned in lexicographic order.
pub fn enumerate_homs(s: &FiniteDistLattice, t: &FiniteDistLattice) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut map: Vec<Option<usize>> = vec![None; s.size()];
    fn consistent(s: &FiniteDistLattice, t: &FiniteDistLattice, map: &[Option<usize>], a: usize) -> bool {
        let Some(fa) = map[a] else { return true };
        if (a == s.bottom() && fa != t.bottom()) || (a == s.top() && fa != t.top()) {
            return false;
        }
        for b in 0..s.size() {
            let Some(fb) = map[b] else { continue };
            if let Some(fj) = map[s.join(a, b)] {
                if fj != t.join(fa, fb) {
                    return false;
                }
            }
            if let Some(fm) = map[s.meet(a, b)] {
                if fm != t.meet(fa, fb) {
                    return false;
                }
            }
        }
        true
    }
    fn go(
        s: &FiniteDistLattice,
        t: &FiniteDistLattice,
        map: &mut Vec<Option<usize>>,
        a: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if a == s.size() {
            out.push(map.iter().map(|v| v.expect("assigned")).collect());
            return;
        }
        for v in 0..t.size() {
            map[a] = Some(v);
            // `a` may be the join or meet of an earlier pair, so every
            // assigned element is rechecked.
            if (0..=a).all(|b| consistent(s, t, map, b)) {
                go(s, t, map, a + 1, out);
            }
        }
        map[a] = None;
    }
    go(s, t, &mut map, 0, &mut out);
    out
}
