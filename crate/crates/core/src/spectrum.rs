//! Prime-ideal spectra as bitopological spaces, and the checks every
//! abstract spectrum must pass.

use crate::algebra::Algebra;
use crate::bits::{point_subsets, ElemSet, PointSet};
use crate::error::{capacity, Error, Result};
use crate::report::{all_hold, Clause};
use crate::separation::prime_filters_with;
use crate::topology::{generate_topology, FiniteTopology, POINT_CAP};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum PointLabel {
    /// A prime ideal of the carrier the space was built from.
    Ideal(ElemSet),
    Name(String),
}

/// A finite set of points carrying two topologies.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitopSpace {
    labels: Vec<PointLabel>,
    tplus: FiniteTopology,
    tminus: FiniteTopology,
}

impl BitopSpace {
    pub fn new(labels: Vec<PointLabel>, tplus: FiniteTopology, tminus: FiniteTopology) -> Result<Self> {
        if tplus.point_count() != labels.len() || tminus.point_count() != labels.len() {
            return Err(Error::InvalidArgument(
                "both topologies must live on the labelled points".into(),
            ));
        }
        Ok(Self { labels, tplus, tminus })
    }

    /// Points labelled `s0, s1, …`.
    pub fn unlabelled(tplus: FiniteTopology, tminus: FiniteTopology) -> Result<Self> {
        let labels = (0..tplus.point_count()).map(|i| PointLabel::Name(format!("s{i}"))).collect();
        Self::new(labels, tplus, tminus)
    }

    /// The space whose points are the given subsets of a carrier, with
    /// `T⁺` generated by `{p : x ∉ p}` and `T⁻` by `{p : x ∈ p}` for
    /// `x` in `0..carrier_size`.
    pub fn of_ideals(carrier_size: usize, ideals: Vec<ElemSet>) -> Result<Self> {
        capacity("spectrum", ideals.len(), POINT_CAP)?;
        let (tplus, tminus) = ideal_topologies(carrier_size, &ideals)?;
        let labels = ideals.into_iter().map(PointLabel::Ideal).collect();
        Self::new(labels, tplus, tminus)
    }

    pub fn point_count(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[PointLabel] {
        &self.labels
    }

    pub fn tplus(&self) -> &FiniteTopology {
        &self.tplus
    }

    pub fn tminus(&self) -> &FiniteTopology {
        &self.tminus
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.point_count())
    }

    /// The prime ideals labelling the points, when every point is one.
    pub fn ideals(&self) -> Option<Vec<ElemSet>> {
        self.labels
            .iter()
            .map(|l| match l {
                PointLabel::Ideal(p) => Some(*p),
                PointLabel::Name(_) => None,
            })
            .collect()
    }

    pub fn index_of_ideal(&self, p: ElemSet) -> Option<usize> {
        self.labels.iter().position(|l| *l == PointLabel::Ideal(p))
    }

    /// `U_x^+ = {p : x ∉ p}` for a space of ideals.
    pub fn u_plus(&self, x: usize) -> PointSet {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| matches!(l, PointLabel::Ideal(p) if !p.contains(x)))
            .map(|(i, _)| i)
            .collect()
    }

    /// The subspace on `subset` with both topologies restricted.
    pub fn restrict(&self, subset: PointSet) -> Self {
        Self {
            labels: subset.iter().map(|i| self.labels[i].clone()).collect(),
            tplus: self.tplus.restrict(subset),
            tminus: self.tminus.restrict(subset),
        }
    }
}

fn ideal_topologies(carrier_size: usize, ideals: &[ElemSet]) -> Result<(FiniteTopology, FiniteTopology)> {
    let n = ideals.len();
    let member = |x: usize, want: bool| -> PointSet {
        (0..n).filter(|&i| ideals[i].contains(x) == want).collect()
    };
    let plus: Vec<PointSet> = (0..carrier_size).map(|x| member(x, false)).collect();
    let minus: Vec<PointSet> = (0..carrier_size).map(|x| member(x, true)).collect();
    Ok((generate_topology(n, &plus)?, generate_topology(n, &minus)?))
}

fn designated_constraints(alg: &Algebra, proper: bool) -> Result<(ElemSet, ElemSet)> {
    if !proper {
        return Ok((ElemSet::empty(), ElemSet::empty()));
    }
    let (xi0, xi1) = alg.carrier().designated().ok_or_else(|| {
        Error::InvalidArgument("a proper spectrum needs designated points xi0 and xi1".into())
    })?;
    Ok((ElemSet::singleton(xi0), ElemSet::singleton(xi1)))
}

/// Subsets `p` with `x ⊕ y ⊆ p` for `x, y ∈ p` and, whenever `(x ⊗ y) ∩ p ≠ ∅`,
/// `x ∈ p` or `y ∈ p`; when `proper`, also `ξ₀ ∈ p` and `ξ₁ ∉ p`. Sorted by
/// mask.
pub fn prime_ideals(alg: &Algebra, proper: bool) -> Result<Vec<ElemSet>> {
    let (inside, outside) = designated_constraints(alg, proper)?;
    // The complement of such a `p` is exactly a prime filter.
    let mut ideals: Vec<ElemSet> = prime_filters_with(alg, outside, inside)
        .into_iter()
        .map(|f| f.complement(alg.size()))
        .collect();
    ideals.sort();
    Ok(ideals)
}

/// The multivalued spectrum: all (or all proper) prime ideals.
pub fn build_spectrum(alg: &Algebra, proper: bool) -> Result<BitopSpace> {
    BitopSpace::of_ideals(alg.size(), prime_ideals(alg, proper)?)
}

/// Subsets `p` with `x + y ∈ p ⇔ (x ∈ p and y ∈ p)` and
/// `x × y ∈ p ⇔ (x ∈ p or y ∈ p)`, for single-valued tables. Sorted by mask.
pub fn l_prime_ideals(alg: &Algebra, proper: bool) -> Result<Vec<ElemSet>> {
    let n = alg.size();
    let mut plus = vec![0usize; n * n];
    let mut times = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            let (p, t) = (alg.plus().get(x, y), alg.times().get(x, y));
            if p.len() != 1 || t.len() != 1 {
                return Err(Error::InvalidArgument(format!(
                    "operation entry ({}, {}) is not a singleton",
                    alg.carrier().name(x),
                    alg.carrier().name(y)
                )));
            }
            plus[x * n + y] = p.min().expect("singleton");
            times[x * n + y] = t.min().expect("singleton");
        }
    }
    let (inside, outside) = designated_constraints(alg, proper)?;
    if inside.intersects(outside) {
        return Ok(Vec::new());
    }
    let mut state: Vec<Option<bool>> = vec![None; n];
    for x in inside {
        state[x] = Some(true);
    }
    for x in outside {
        state[x] = Some(false);
    }
    let consistent = |state: &[Option<bool>]| -> bool {
        for x in 0..n {
            let Some(sx) = state[x] else { continue };
            for y in 0..n {
                let Some(sy) = state[y] else { continue };
                if let Some(s) = state[plus[x * n + y]] {
                    if s != (sx && sy) {
                        return false;
                    }
                }
                if let Some(s) = state[times[x * n + y]] {
                    if s != (sx || sy) {
                        return false;
                    }
                }
            }
        }
        true
    };
    fn go(
        state: &mut Vec<Option<bool>>,
        k: usize,
        consistent: &dyn Fn(&[Option<bool>]) -> bool,
        out: &mut Vec<ElemSet>,
    ) {
        if !consistent(state) {
            return;
        }
        let Some(next) = (k..state.len()).find(|&i| state[i].is_none()) else {
            out.push(
                state
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| **s == Some(true))
                    .map(|(i, _)| i)
                    .collect(),
            );
            return;
        };
        for v in [false, true] {
            state[next] = Some(v);
            go(state, next + 1, consistent, out);
        }
        state[next] = None;
    }
    let mut out = Vec::new();
    go(&mut state, 0, &consistent, &mut out);
    out.sort();
    Ok(out)
}

/// The single-valued spectrum: all (or all proper) l-prime ideals.
pub fn build_lspectrum(alg: &Algebra, proper: bool) -> Result<BitopSpace> {
    BitopSpace::of_ideals(alg.size(), l_prime_ideals(alg, proper)?)
}

/// `L⁺ = {U ∈ T⁺ : S∖U ∈ T⁻}`.
pub fn l_plus(space: &BitopSpace) -> Vec<PointSet> {
    cross_clopen(space.tplus(), space.tminus())
}

/// `L⁻ = {U ∈ T⁻ : S∖U ∈ T⁺}`.
pub fn l_minus(space: &BitopSpace) -> Vec<PointSet> {
    cross_clopen(space.tminus(), space.tplus())
}

fn cross_clopen(a: &FiniteTopology, b: &FiniteTopology) -> Vec<PointSet> {
    a.opens()
        .iter()
        .copied()
        .filter(|u| b.is_closed(*u))
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpectrumReport {
    /// The space has no points; every clause then holds vacuously.
    pub empty: bool,
    pub l_plus: Vec<PointSet>,
    pub l_minus: Vec<PointSet>,
    pub clauses: Vec<Clause>,
}

impl SpectrumReport {
    pub fn passed(&self) -> bool {
        all_hold(&self.clauses)
    }
}

fn base_witness(t: &FiniteTopology, family: &[PointSet]) -> Option<PointSet> {
    t.opens().iter().copied().find(|&u| {
        family
            .iter()
            .filter(|v| v.is_subset(u))
            .fold(PointSet::empty(), |acc, &v| acc | v)
            != u
    })
}

fn lattice_witness(family: &[PointSet], full: PointSet) -> Option<String> {
    let has = |s: PointSet| family.contains(&s);
    if !has(PointSet::empty()) || !has(full) {
        return Some("missing the empty set or the whole space".into());
    }
    for &u in family {
        for &v in family {
            if !has(u | v) || !has(u & v) {
                return Some(format!("{u:?} and {v:?}"));
            }
        }
    }
    None
}

/// Checks the abstract-spectrum axioms and their finite consequences.
pub fn check_spectrum_axioms(space: &BitopSpace) -> SpectrumReport {
    let lp = l_plus(space);
    let lm = l_minus(space);
    let full = space.full();
    let (tp, tm) = (space.tplus(), space.tminus());
    let mut clauses = Vec::new();

    let base = base_witness(tp, &lp)
        .map(|u| format!("{u:?} in T+ is not a union of L+ members"))
        .or_else(|| base_witness(tm, &lm).map(|u| format!("{u:?} in T- is not a union of L- members")));
    clauses.push(Clause::from_witness("L+ is a base for T+ and L- for T-", base));
    clauses.push(Clause::note(
        "closed sets of either topology are compact in the other",
        "every subset of a finite space is compact",
    ));
    clauses.push(Clause::check("T+ or T- is T0", tp.is_t0() || tm.is_t0(), || {
        "neither topology is T0".into()
    }));
    let both_t0 = tp
        .t0_witness()
        .map(|w| format!("T+ does not separate {w:?}"))
        .or_else(|| tm.t0_witness().map(|w| format!("T- does not separate {w:?}")));
    clauses.push(Clause::from_witness("T+ and T- are both T0", both_t0));
    let lattices = lattice_witness(&lp, full)
        .map(|w| format!("L+: {w}"))
        .or_else(|| lattice_witness(&lm, full).map(|w| format!("L-: {w}")));
    clauses.push(Clause::from_witness("L+ and L- are closed under finite unions and intersections", lattices));
    let mut lm_complements: Vec<PointSet> = lm.iter().map(|u| u.complement(space.point_count())).collect();
    lm_complements.sort();
    clauses.push(Clause::check(
        "L+ is the family of complements of L- members",
        lm_complements == lp,
        || format!("L+ = {lp:?}, complements of L- = {lm_complements:?}"),
    ));
    // Every open set of a finite space is compact, so the compact opens of
    // T+ are all of T+.
    clauses.push(Clause::check(
        "L+ is the family of compact opens of T+ and L- of T-",
        lp == tp.opens() && lm == tm.opens(),
        || "some open set lies outside L+ or L-".into(),
    ));
    clauses.push(Clause::check(
        "T- is the complement topology of T+",
        tp.complement_topology() == *tm,
        || "T- differs from {S \\ U : U in T+}".into(),
    ));

    SpectrumReport {
        empty: space.is_empty(),
        l_plus: lp,
        l_minus: lm,
        clauses,
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StoneReport {
    pub join: FiniteTopology,
    /// The join topology is compact, zero-dimensional and Hausdorff.
    pub stone_space: bool,
    /// `T⁺ = T⁻`.
    pub stone_spectrum: bool,
    pub both_t1: bool,
}

impl StoneReport {
    /// A spectrum is Stone exactly when both topologies are T1.
    pub fn consistent(&self) -> bool {
        self.stone_space && self.stone_spectrum == self.both_t1
    }
}

pub fn join_and_stone(space: &BitopSpace) -> Result<StoneReport> {
    let join = space.tplus().join(space.tminus())?;
    // Zero-dimensional: the clopen sets form a base.
    let clopens: Vec<PointSet> = join.opens().iter().copied().filter(|u| join.is_closed(*u)).collect();
    let zero_dim = base_witness(&join, &clopens).is_none();
    Ok(StoneReport {
        stone_space: zero_dim && join.is_t2(),
        stone_spectrum: space.tplus() == space.tminus(),
        both_t1: space.tplus().is_t1() && space.tminus().is_t1(),
        join,
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Specialization {
    /// `order[a][b]` iff `cl⁻{a} ⊆ cl⁻{b}`.
    pub order: Vec<Vec<bool>>,
    pub max: PointSet,
    pub min: PointSet,
    pub clauses: Vec<Clause>,
}

impl Specialization {
    pub fn passed(&self) -> bool {
        all_hold(&self.clauses)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order[a][b]
    }
}

/// Closed subspaces of the join topology are checked exhaustively up to this
/// many points; larger spaces check a fixed family of closed sets.
pub const SUBSPACE_EXHAUSTIVE_MAX: usize = 6;

pub fn specialization_and_extremes(space: &BitopSpace) -> Result<Specialization> {
    let n = space.point_count();
    let (tp, tm) = (space.tplus(), space.tminus());
    let cl_minus: Vec<PointSet> = (0..n).map(|a| tm.closure(PointSet::singleton(a))).collect();
    let cl_plus: Vec<PointSet> = (0..n).map(|a| tp.closure(PointSet::singleton(a))).collect();
    let order: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| cl_minus[a].is_subset(cl_minus[b])).collect())
        .collect();
    let lt = |a: usize, b: usize| a != b && order[a][b];
    let max: PointSet = (0..n).filter(|&m| !(0..n).any(|b| lt(m, b))).collect();
    let min: PointSet = (0..n).filter(|&m| !(0..n).any(|b| lt(b, m))).collect();

    let mut clauses = Vec::new();
    let antisym = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| a != b && order[a][b] && order[b][a]);
    clauses.push(Clause::from_witness(
        "specialization is antisymmetric",
        antisym.map(|w| format!("points {w:?}")),
    ));
    let formulations = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| {
        let forms = [
            cl_minus[b].contains(a),
            cl_plus[a].contains(b),
            cl_plus[b].is_subset(cl_plus[a]),
        ];
        forms.iter().any(|&f| f != order[a][b])
    });
    clauses.push(Clause::from_witness(
        "the four descriptions of specialization agree",
        formulations.map(|w| format!("points {w:?}")),
    ));
    let up_closure = (0..n).find(|&a| {
        let up: PointSet = (0..n).filter(|&b| order[a][b]).collect();
        let down: PointSet = (0..n).filter(|&b| order[b][a]).collect();
        cl_plus[a] != up || cl_minus[a] != down
    });
    clauses.push(Clause::from_witness(
        "point closures are the up-set in T+ and the down-set in T-",
        up_closure.map(|a| format!("point {a}")),
    ));
    if let Some(ideals) = space.ideals() {
        let bad = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| order[a][b] != ideals[a].is_subset(ideals[b]));
        clauses.push(Clause::from_witness(
            "specialization is inclusion of ideals",
            bad.map(|w| format!("points {w:?}")),
        ));
    }
    clauses.push(Clause::check("Min is dense in T+", tp.closure(min) == space.full(), || {
        format!("closure of {min:?} is {:?}", tp.closure(min))
    }));
    clauses.push(Clause::check("Max is dense in T-", tm.closure(max) == space.full(), || {
        format!("closure of {max:?} is {:?}", tm.closure(max))
    }));
    clauses.push(Clause::check("Max with T+ is T1", tp.restrict(max).is_t1(), String::new));
    clauses.push(Clause::check("Min with T- is T1", tm.restrict(min).is_t1(), String::new));
    clauses.push(Clause::check("Min with T+ is Hausdorff", tp.restrict(min).is_t2(), String::new));
    clauses.push(Clause::check("Max with T- is Hausdorff", tm.restrict(max).is_t2(), String::new));

    let join = tp.join(tm)?;
    let candidates: Vec<PointSet> = if n <= SUBSPACE_EXHAUSTIVE_MAX {
        point_subsets(space.full()).collect()
    } else {
        let mut c = vec![max, min, space.full()];
        c.extend(cl_plus.iter().copied());
        c.extend(cl_minus.iter().copied());
        c
    };
    let bad_subspace = candidates
        .into_iter()
        .filter(|s| !s.is_empty() && join.is_closed(*s))
        .find(|&s| !check_spectrum_axioms(&space.restrict(s)).passed());
    clauses.push(Clause::from_witness(
        "closed subspaces of the join topology are spectra",
        bad_subspace.map(|s| format!("subspace {s:?}")),
    ));

    Ok(Specialization {
        order,
        max,
        min,
        clauses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lattice::FiniteDistLattice;

    fn ideals(alg: &Algebra, sets: &[&str]) -> Vec<ElemSet> {
        let mut v: Vec<ElemSet> = sets.iter().map(|s| alg.carrier().parse_set(s).unwrap()).collect();
        v.sort();
        v
    }

    fn ps(points: &[usize]) -> PointSet {
        points.iter().copied().collect()
    }

    #[test]
    fn ring_and_chain_spectra() {
        let z6 = fixtures::ring(6).unwrap();
        let s = build_spectrum(&z6, true).unwrap();
        assert_eq!(s.ideals().unwrap(), ideals(&z6, &["0,2,4", "0,3"]));
        assert_eq!(*s.tplus(), FiniteTopology::discrete(2).unwrap());

        let c3 = fixtures::chain_lattice(3).unwrap();
        let s = build_spectrum(&c3, true).unwrap();
        assert_eq!(s.ideals().unwrap(), ideals(&c3, &["0", "0,a"]));
        assert_eq!(s.tplus().opens(), [ps(&[]), ps(&[0]), ps(&[0, 1])]);

        let all = build_spectrum(&c3, false).unwrap();
        assert_eq!(all.ideals().unwrap(), ideals(&c3, &["", "0", "0,a", "0,a,1"]));
    }

    #[test]
    fn proper_needs_designated_points() {
        let alg = fixtures::mul_semigroup(3).unwrap();
        assert!(matches!(build_spectrum(&alg, true), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn single_valued_spectra() {
        let single = |l: FiniteDistLattice| fixtures::lattice_algebra_single(&l).unwrap();
        let c3 = single(FiniteDistLattice::chain(3).unwrap());
        assert_eq!(build_lspectrum(&c3, true).unwrap().ideals().unwrap(), ideals(&c3, &["0", "0,a"]));
        let c2 = single(FiniteDistLattice::chain(2).unwrap());
        assert_eq!(build_lspectrum(&c2, true).unwrap().ideals().unwrap(), ideals(&c2, &["0"]));
        let b4 = single(FiniteDistLattice::powerset(2).unwrap());
        assert_eq!(build_lspectrum(&b4, true).unwrap().ideals().unwrap(), ideals(&b4, &["0,p", "0,q"]));
        let multi = fixtures::ring(6).unwrap();
        assert!(matches!(build_lspectrum(&multi, true), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn axioms_pass_on_built_spectra() {
        for alg in [fixtures::ring(6).unwrap(), fixtures::chain_lattice(3).unwrap()] {
            for proper in [true, false] {
                let r = check_spectrum_axioms(&build_spectrum(&alg, proper).unwrap());
                assert!(r.passed(), "{r:?}");
            }
        }
    }

    #[test]
    fn constructed_violation_fails_base_clause() {
        let tp = FiniteTopology::new(2, vec![ps(&[]), ps(&[0]), ps(&[0, 1])]).unwrap();
        let tm = FiniteTopology::indiscrete(2).unwrap();
        let r = check_spectrum_axioms(&BitopSpace::unlabelled(tp, tm).unwrap());
        assert_eq!(r.l_plus, [ps(&[]), ps(&[0, 1])]);
        assert!(!r.clauses[0].holds);
        assert!(!r.passed());
    }

    #[test]
    fn discrete_bitopology_is_stone() {
        let d = FiniteTopology::discrete(3).unwrap();
        let space = BitopSpace::unlabelled(d.clone(), d).unwrap();
        assert!(check_spectrum_axioms(&space).passed());
        let s = join_and_stone(&space).unwrap();
        assert!(s.stone_spectrum && s.stone_space && s.consistent());
    }

    #[test]
    fn stone_checks_on_fixtures() {
        let z6 = join_and_stone(&build_spectrum(&fixtures::ring(6).unwrap(), true).unwrap()).unwrap();
        assert!(z6.stone_spectrum && z6.consistent());
        assert_eq!(z6.join, FiniteTopology::discrete(2).unwrap());
        let c3 = join_and_stone(&build_spectrum(&fixtures::chain_lattice(3).unwrap(), true).unwrap()).unwrap();
        assert!(!c3.stone_spectrum && c3.consistent());
        assert_eq!(c3.join, FiniteTopology::discrete(2).unwrap());
        let one = join_and_stone(&build_spectrum(&fixtures::ring(2).unwrap(), true).unwrap()).unwrap();
        assert!(one.stone_spectrum && one.stone_space);
    }

    #[test]
    fn specialization_on_fixtures() {
        let c3 = specialization_and_extremes(&build_spectrum(&fixtures::chain_lattice(3).unwrap(), true).unwrap())
            .unwrap();
        assert!(c3.leq(0, 1) && !c3.leq(1, 0));
        assert_eq!((c3.max, c3.min), (ps(&[1]), ps(&[0])));
        assert!(c3.passed(), "{:?}", c3.clauses);
        let z6 = specialization_and_extremes(&build_spectrum(&fixtures::ring(6).unwrap(), true).unwrap()).unwrap();
        assert_eq!(z6.order, vec![vec![true, false], vec![false, true]]);
        assert_eq!((z6.max, z6.min), (ps(&[0, 1]), ps(&[0, 1])));
        assert!(z6.passed());
    }

    #[test]
    fn empty_spectrum_is_vacuous() {
        let empty = BitopSpace::of_ideals(3, vec![]).unwrap();
        let r = check_spectrum_axioms(&empty);
        assert!(r.empty && r.passed());
    }
}
