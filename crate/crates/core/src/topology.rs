//! Finite topologies stored as explicit families of open sets.

use std::fmt;

use crate::bits::{point_subsets, PointSet};
use crate::error::{capacity, Error, Result};

/// Spaces with more points than this are refused; open families are
/// enumerated by scanning point subsets.
pub const POINT_CAP: usize = 16;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteTopology {
    points: usize,
    /// Sorted by mask.
    opens: Vec<PointSet>,
}

impl FiniteTopology {
    /// Validates an explicit open family: it must contain `∅` and the whole
    /// space and be closed under pairwise union and intersection.
    pub fn new(points: usize, mut opens: Vec<PointSet>) -> Result<Self> {
        capacity("topological space", points, POINT_CAP)?;
        let full = PointSet::full(points);
        if opens.iter().any(|u| !u.is_subset(full)) {
            return Err(Error::Malformed("open set has points outside the space".into()));
        }
        opens.sort();
        opens.dedup();
        let has = |s: PointSet| opens.binary_search(&s).is_ok();
        if !has(PointSet::empty()) || !has(full) {
            return Err(Error::InvalidArgument("a topology contains the empty set and the whole space".into()));
        }
        for &u in &opens {
            for &v in &opens {
                if !has(u | v) || !has(u & v) {
                    return Err(Error::InvalidArgument(format!(
                        "open family is not closed under union and intersection at {u:?}, {v:?}"
                    )));
                }
            }
        }
        Ok(Self { points, opens })
    }

    pub fn discrete(points: usize) -> Result<Self> {
        generate_topology(points, &(0..points).map(PointSet::singleton).collect::<Vec<_>>())
    }

    pub fn indiscrete(points: usize) -> Result<Self> {
        generate_topology(points, &[])
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.points)
    }

    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    pub fn is_open(&self, u: PointSet) -> bool {
        self.opens.binary_search(&u).is_ok()
    }

    pub fn is_closed(&self, f: PointSet) -> bool {
        f.is_subset(self.full()) && self.is_open(f.complement(self.points))
    }

    /// Closed sets, sorted by mask.
    pub fn closed_sets(&self) -> Vec<PointSet> {
        let mut out: Vec<PointSet> = self.opens.iter().map(|u| u.complement(self.points)).collect();
        out.sort();
        out
    }

    /// Smallest open set containing `x`.
    pub fn min_nbhd(&self, x: usize) -> PointSet {
        self.opens
            .iter()
            .filter(|u| u.contains(x))
            .fold(self.full(), |acc, &u| acc & u)
    }

    pub fn interior(&self, a: PointSet) -> PointSet {
        self.opens
            .iter()
            .filter(|u| u.is_subset(a))
            .fold(PointSet::empty(), |acc, &u| acc | u)
    }

    pub fn closure(&self, a: PointSet) -> PointSet {
        self.interior(a.complement(self.points)).complement(self.points)
    }

    /// For distinct points some open set contains exactly one of them.
    pub fn is_t0(&self) -> bool {
        self.t0_witness().is_none()
    }

    pub fn t0_witness(&self) -> Option<(usize, usize)> {
        for x in 0..self.points {
            for y in x + 1..self.points {
                if self.opens.iter().all(|u| u.contains(x) == u.contains(y)) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// For every ordered pair of distinct points some open set contains the
    /// first and not the second.
    pub fn is_t1(&self) -> bool {
        (0..self.points).all(|x| {
            (0..self.points)
                .filter(|&y| y != x)
                .all(|y| self.opens.iter().any(|u| u.contains(x) && !u.contains(y)))
        })
    }

    /// Distinct points have disjoint open neighbourhoods.
    pub fn is_t2(&self) -> bool {
        (0..self.points).all(|x| {
            (x + 1..self.points).all(|y| {
                self.opens.iter().any(|u| {
                    u.contains(x)
                        && !u.contains(y)
                        && self.opens.iter().any(|v| v.contains(y) && !u.intersects(*v))
                })
            })
        })
    }

    /// `{S ∖ U : U open}`.
    pub fn complement_topology(&self) -> Self {
        let mut opens: Vec<PointSet> = self.opens.iter().map(|u| u.complement(self.points)).collect();
        opens.sort();
        Self {
            points: self.points,
            opens,
        }
    }

    /// The subspace on `subset`, with points renumbered in ascending order.
    pub fn restrict(&self, subset: PointSet) -> Self {
        let members: Vec<usize> = subset.iter().collect();
        let relabel = |u: PointSet| -> PointSet {
            members
                .iter()
                .enumerate()
                .filter(|(_, &p)| u.contains(p))
                .map(|(i, _)| i)
                .collect()
        };
        let mut opens: Vec<PointSet> = self.opens.iter().map(|&u| relabel(u & subset)).collect();
        opens.sort();
        opens.dedup();
        Self {
            points: members.len(),
            opens,
        }
    }

    /// The coarsest topology finer than both.
    pub fn join(&self, other: &Self) -> Result<Self> {
        if self.points != other.points {
            return Err(Error::InvalidArgument("topologies live on different point sets".into()));
        }
        let subbase: Vec<PointSet> = self.opens.iter().chain(&other.opens).copied().collect();
        generate_topology(self.points, &subbase)
    }

    /// `a` is a specialization of `b`: `cl{a} ⊆ cl{b}`.
    pub fn specializes(&self, a: usize, b: usize) -> bool {
        self.closure(PointSet::singleton(a))
            .is_subset(self.closure(PointSet::singleton(b)))
    }
}

impl fmt::Debug for FiniteTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteTopology({} points) ", self.points)?;
        f.debug_set().entries(&self.opens).finish()
    }
}

/// Topology on `points` points with `subbase` as a subbase.
///
/// Open sets are exactly the sets containing the minimal neighbourhood of
/// each of their points, where the minimal neighbourhood of `x` is the
/// intersection of the subbase members containing it.
pub fn generate_topology(points: usize, subbase: &[PointSet]) -> Result<FiniteTopology> {
    capacity("topological space", points, POINT_CAP)?;
    let full = PointSet::full(points);
    if let Some(bad) = subbase.iter().find(|s| !s.is_subset(full)) {
        return Err(Error::Malformed(format!("subbase member {bad:?} has points outside the space")));
    }
    let nbhd: Vec<PointSet> = (0..points)
        .map(|x| {
            subbase
                .iter()
                .filter(|s| s.contains(x))
                .fold(full, |acc, &s| acc & s)
        })
        .collect();
    let opens = point_subsets(full)
        .filter(|u| u.iter().all(|x| nbhd[x].is_subset(*u)))
        .collect();
    Ok(FiniteTopology { points, opens })
}

/// Preimages of open sets are open. `f[i]` is the image of source point `i`.
pub fn is_continuous(f: &[usize], source: &FiniteTopology, target: &FiniteTopology) -> bool {
    f.len() == source.point_count()
        && f.iter().all(|&y| y < target.point_count())
        && target.opens().iter().all(|&v| source.is_open(preimage(f, v)))
}

pub fn preimage(f: &[usize], v: PointSet) -> PointSet {
    f.iter()
        .enumerate()
        .filter(|(_, &y)| v.contains(y))
        .map(|(x, _)| x)
        .collect()
}

pub fn image(f: &[usize], u: PointSet) -> PointSet {
    u.iter().map(|x| f[x]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::point_subsets;
    use proptest::prelude::*;

    fn ps(points: &[usize]) -> PointSet {
        points.iter().copied().collect()
    }

    #[test]
    fn generation_examples() {
        let sierpinski = generate_topology(2, &[ps(&[0])]).unwrap();
        assert_eq!(sierpinski.opens(), [ps(&[]), ps(&[0]), ps(&[0, 1])]);
        let indiscrete = generate_topology(3, &[]).unwrap();
        assert_eq!(indiscrete.opens(), [ps(&[]), ps(&[0, 1, 2])]);
        let discrete = generate_topology(2, &[ps(&[0]), ps(&[1])]).unwrap();
        assert_eq!(discrete.opens().len(), 4);
        assert!(generate_topology(2, &[ps(&[2])]).is_err());
        assert!(matches!(generate_topology(17, &[]), Err(Error::Capacity { .. })));
    }

    #[test]
    fn separation_axioms() {
        let sierpinski = generate_topology(2, &[ps(&[0])]).unwrap();
        assert!(sierpinski.is_t0() && !sierpinski.is_t1() && !sierpinski.is_t2());
        let d = FiniteTopology::discrete(3).unwrap();
        assert!(d.is_t0() && d.is_t1() && d.is_t2());
        let i = FiniteTopology::indiscrete(2).unwrap();
        assert_eq!(i.t0_witness(), Some((0, 1)));
    }

    #[test]
    fn explicit_families_are_validated() {
        assert!(FiniteTopology::new(2, vec![ps(&[]), ps(&[0]), ps(&[1]), ps(&[0, 1])]).is_ok());
        assert!(FiniteTopology::new(2, vec![ps(&[]), ps(&[0]), ps(&[1])]).is_err());
        assert!(FiniteTopology::new(3, vec![ps(&[]), ps(&[0]), ps(&[1]), ps(&[0, 1, 2])]).is_err());
    }

    #[test]
    fn closures_and_specialization() {
        let t = generate_topology(2, &[ps(&[0])]).unwrap();
        assert_eq!(t.closure(ps(&[0])), ps(&[0, 1]));
        assert_eq!(t.closure(ps(&[1])), ps(&[1]));
        assert!(t.specializes(1, 0));
        assert!(!t.specializes(0, 1));
        assert_eq!(t.complement_topology().opens(), [ps(&[]), ps(&[1]), ps(&[0, 1])]);
    }

    #[test]
    fn restriction_relabels() {
        let t = generate_topology(3, &[ps(&[0]), ps(&[0, 2])]).unwrap();
        let r = t.restrict(ps(&[1, 2]));
        assert_eq!(r.point_count(), 2);
        assert_eq!(r.opens(), [ps(&[]), ps(&[1]), ps(&[0, 1])]);
    }

    proptest! {
        #[test]
        fn generated_family_is_least_topology(
            n in 1usize..6,
            raw in proptest::collection::vec(any::<u32>(), 0..5),
        ) {
            let full = PointSet::full(n);
            let subbase: Vec<PointSet> = raw.iter().map(|&b| PointSet::from_bits(b) & full).collect();
            let t = generate_topology(n, &subbase).unwrap();
            prop_assert!(FiniteTopology::new(n, t.opens().to_vec()).is_ok());
            prop_assert!(subbase.iter().all(|&s| t.is_open(s)));
            // Every open set is a union of finite intersections of subbase members.
            let mut basics = vec![full];
            for mask in 1u32..(1 << subbase.len()) {
                let members = PointSet::from_bits(mask);
                basics.push(members.iter().fold(full, |acc, i| acc & subbase[i]));
            }
            for &u in t.opens() {
                let union = basics.iter().filter(|b| b.is_subset(u)).fold(PointSet::empty(), |a, &b| a | b);
                prop_assert_eq!(union, u);
            }
            let again = generate_topology(n, t.opens()).unwrap();
            prop_assert_eq!(again, t.clone());
            for a in point_subsets(full) {
                prop_assert!(t.is_closed(t.closure(a)));
                prop_assert!(a.is_subset(t.closure(a)));
            }
        }
    }
}
