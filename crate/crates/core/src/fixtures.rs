//! Builders for the standard example algebras.

use crate::algebra::{Algebra, Carrier, MultiOp};
use crate::bits::ElemSet;
use crate::error::{capacity, Error, Result};
use crate::lattice::{gcd, FiniteDistLattice};

/// The multiplicative ring `Z_n` seen as an algebra: `x·y = {xy mod n}` and
/// `x + y` is the ring ideal generated by `x` and `y`. Designated points are
/// `0` and `1`.
pub fn ring(n: usize) -> Result<Algebra> {
    if n < 2 {
        return Err(Error::InvalidArgument("ring needs n >= 2".into()));
    }
    capacity("ring carrier", n, ElemSet::CAPACITY)?;
    let carrier = Carrier::new((0..n).map(|i| i.to_string()).collect(), Some(0), Some(1))?;
    let times = MultiOp::from_fn(n, |x, y| ElemSet::singleton(x * y % n));
    let plus = MultiOp::from_fn(n, |x, y| {
        let g = gcd(gcd(x, y), n);
        (0..n).step_by(g).collect()
    });
    Algebra::new(carrier, times, plus)
}

/// A lattice as a multivalued algebra: `x·y = {z : z ≥ x∧y}` and
/// `x + y = {z : z ≤ x∨y}`. Designated points are bottom and top, which
/// coincide in the one-element lattice.
pub fn lattice_algebra(l: &FiniteDistLattice) -> Result<Algebra> {
    let n = l.size();
    let carrier = lattice_carrier(l)?;
    let times = MultiOp::from_fn(n, |x, y| {
        let m = l.meet(x, y);
        (0..n).filter(|&z| l.leq(m, z)).collect()
    });
    let plus = MultiOp::from_fn(n, |x, y| {
        let j = l.join(x, y);
        (0..n).filter(|&z| l.leq(z, j)).collect()
    });
    Algebra::new(carrier, times, plus)
}

/// A lattice as a single-valued algebra: `x + y = {x∨y}`, `x·y = {x∧y}`.
pub fn lattice_algebra_single(l: &FiniteDistLattice) -> Result<Algebra> {
    let n = l.size();
    let carrier = lattice_carrier(l)?;
    let times = MultiOp::from_fn(n, |x, y| ElemSet::singleton(l.meet(x, y)));
    let plus = MultiOp::from_fn(n, |x, y| ElemSet::singleton(l.join(x, y)));
    Algebra::new(carrier, times, plus)
}

fn lattice_carrier(l: &FiniteDistLattice) -> Result<Carrier> {
    capacity("lattice carrier", l.size(), ElemSet::CAPACITY)?;
    Carrier::new(l.names().to_vec(), Some(l.bottom()), Some(l.top()))
}

pub fn chain_lattice(k: usize) -> Result<Algebra> {
    lattice_algebra(&FiniteDistLattice::chain(k)?)
}

pub fn powerset_lattice(atoms: usize) -> Result<Algebra> {
    lattice_algebra(&FiniteDistLattice::powerset(atoms)?)
}

pub fn divisor_lattice(n: usize) -> Result<Algebra> {
    lattice_algebra(&FiniteDistLattice::divisors(n)?)
}

/// A commutative semigroup with both operations equal to its product,
/// `table[x][y]` being the index of `x·y`.
pub fn semigroup(names: Vec<String>, table: &[Vec<usize>]) -> Result<Algebra> {
    let n = names.len();
    if table.len() != n || table.iter().any(|row| row.len() != n) {
        return Err(Error::Malformed("semigroup table must be square over the names".into()));
    }
    if table.iter().flatten().any(|&v| v >= n) {
        return Err(Error::Malformed("semigroup product out of range".into()));
    }
    for x in 0..n {
        for y in 0..n {
            if table[x][y] != table[y][x] {
                return Err(Error::InvalidArgument(format!(
                    "semigroup product is not commutative at ({}, {})",
                    names[x], names[y]
                )));
            }
            for z in 0..n {
                if table[table[x][y]][z] != table[x][table[y][z]] {
                    return Err(Error::InvalidArgument(format!(
                        "semigroup product is not associative at ({}, {}, {})",
                        names[x], names[y], names[z]
                    )));
                }
            }
        }
    }
    let carrier = Carrier::new(names, None, None)?;
    let op = MultiOp::from_fn(n, |x, y| ElemSet::singleton(table[x][y]));
    Algebra::new(carrier, op.clone(), op)
}

/// `(Z_n, ·)` as a semigroup algebra.
pub fn mul_semigroup(n: usize) -> Result<Algebra> {
    let table: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| x * y % n).collect()).collect();
    semigroup((0..n).map(|i| i.to_string()).collect(), &table)
}

/// `(Z_n, +)` as a semigroup algebra.
pub fn add_semigroup(n: usize) -> Result<Algebra> {
    let table: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
    semigroup((0..n).map(|i| i.to_string()).collect(), &table)
}

/// The meet semilattice of a `k`-chain as a semigroup algebra.
pub fn min_semigroup(k: usize) -> Result<Algebra> {
    let table: Vec<Vec<usize>> = (0..k).map(|x| (0..k).map(|y| x.min(y)).collect()).collect();
    semigroup((0..k).map(|i| format!("m{i}")).collect(), &table)
}

/// A three-element preseparative algebra whose carrier preorder is not
/// transitive: `t0 ≤ t1 ≤ t2` but not `t0 ≤ t2`.
pub fn sep0_counterexample() -> Algebra {
    let carrier = Carrier::new(vec!["t0".into(), "t1".into(), "t2".into()], None, None)
        .expect("valid names");
    let s = ElemSet::singleton;
    let mut times = MultiOp::empty(3);
    let mut plus = MultiOp::empty(3);
    let sym = |op: &mut MultiOp, a: usize, b: usize, v: ElemSet| {
        op.set(a, b, v);
        op.set(b, a, v);
    };
    sym(&mut times, 0, 0, s(0));
    sym(&mut times, 0, 1, s(1));
    sym(&mut times, 0, 2, s(2));
    sym(&mut times, 1, 1, s(2));
    sym(&mut plus, 0, 2, s(0));
    sym(&mut plus, 1, 1, s(0));
    sym(&mut plus, 1, 2, s(1));
    sym(&mut plus, 2, 2, s(2));
    Algebra::new(carrier, times, plus).expect("entries in range")
}

/// A second preseparative algebra with a non-transitive carrier preorder,
/// found by a seeded search and committed with its transcript.
pub fn sep0_counterexample_search() -> Algebra {
    crate::format::parse_algebra(include_str!("../fixtures/sep0_search.alg")).expect("committed fixture parses")
}

/// The lattices every duality and agreement check runs on: chains with 1 to
/// 6 elements, powersets of 1 to 3 atoms, and the divisors of 12, 30 and 36.
pub fn lattice_corpus() -> Vec<(String, FiniteDistLattice)> {
    let mut out = Vec::new();
    for k in 1..=6 {
        out.push((format!("lattice chain {k}"), FiniteDistLattice::chain(k).expect("chain")));
    }
    for k in 1..=3 {
        out.push((format!("lattice powerset {k}"), FiniteDistLattice::powerset(k).expect("powerset")));
    }
    for n in [12, 30, 36] {
        out.push((format!("lattice divisors {n}"), FiniteDistLattice::divisors(n).expect("divisors")));
    }
    out
}

/// Named example algebras: rings, multivalued lattices from
/// [`lattice_corpus`], semigroups, and the two non-transitive algebras.
pub fn corpus() -> Vec<(String, Algebra)> {
    let mut out = Vec::new();
    for n in [2, 3, 4, 6, 12, 30] {
        out.push((format!("ring {n}"), ring(n).expect("ring")));
    }
    for (name, l) in lattice_corpus() {
        out.push((name, lattice_algebra(&l).expect("lattice algebra")));
    }
    out.push(("semigroup mul 4".into(), mul_semigroup(4).expect("semigroup")));
    out.push(("semigroup add 3".into(), add_semigroup(3).expect("semigroup")));
    out.push(("semigroup min 3".into(), min_semigroup(3).expect("semigroup")));
    out.push(("sep0 counterexample".into(), sep0_counterexample()));
    out.push(("sep0 counterexample (search)".into(), sep0_counterexample_search()));
    out
}

/// Single-valued lattice algebras for every lattice of [`lattice_corpus`].
pub fn single_valued_corpus() -> Vec<(String, Algebra)> {
    lattice_corpus()
        .into_iter()
        .map(|(name, l)| (format!("{name} single"), lattice_algebra_single(&l).expect("lattice algebra")))
        .collect()
}

/// Radical ideals of `Z_n` under inclusion. The element named `(d)` is the
/// ideal generated by the square-free divisor `d` of the radical of `n`;
/// intersection is `lcm`, sum is `gcd`.
pub fn radical_ideal_lattice(n: usize) -> Result<FiniteDistLattice> {
    if n < 2 {
        return Err(Error::InvalidArgument("radical ideal lattice needs n >= 2".into()));
    }
    let rad = radical(n);
    let divs: Vec<usize> = (1..=rad).filter(|d| rad % d == 0).collect();
    let pos = |v: usize| divs.iter().position(|&d| d == v).expect("closed");
    let names = divs.iter().map(|d| format!("({d})")).collect();
    let lcm = |a: usize, b: usize| a / gcd(a, b) * b;
    // Larger ideals have smaller generators: bottom is (rad n), top is (1).
    FiniteDistLattice::from_fns(
        names,
        |a, b| pos(gcd(divs[a], divs[b])),
        |a, b| pos(lcm(divs[a], divs[b])),
        divs.len() - 1,
        0,
    )
}

/// The index in [`radical_ideal_lattice`] of the radical ideal generated by
/// `a ∈ Z_n`.
pub fn radical_ideal_of(n: usize, a: usize) -> usize {
    let rad = radical(n);
    let target = radical(gcd(a, n));
    (1..=rad).filter(|d| rad % d == 0).position(|d| d == target).expect("divides rad n")
}

/// Product of the distinct prime divisors of `n`.
pub fn radical(n: usize) -> usize {
    prime_divisors(n).iter().product()
}

pub fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
