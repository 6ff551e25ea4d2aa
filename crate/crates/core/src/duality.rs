//! Coherent spaces, the passage between spectra and coherent spaces, and
//! Stone duality for finite distributive lattices.

use crate::bits::{ElemSet, PointSet};
use crate::error::{Error, Result};
use crate::lattice::{FiniteDistLattice, LatticeHom};
use crate::report::{all_hold, Clause};
use crate::spectrum::{check_spectrum_axioms, BitopSpace, PointLabel};
use crate::topology::{generate_topology, is_continuous, preimage, FiniteTopology};

/// Checks every clause of coherence literally.
///
/// Irreducibility is tested by the splitting definition over all pairs of
/// closed subsets, not by the finite shortcut that coherence is `T0`.
pub fn is_coherent(top: &FiniteTopology) -> Vec<Clause> {
    let mut clauses = vec![Clause::from_witness(
        "T0",
        top.t0_witness().map(|w| format!("points {w:?} are not separated")),
    )];
    let closed = top.closed_sets();
    let irreducible = |f: PointSet| -> bool {
        let proper: Vec<PointSet> = closed.iter().copied().filter(|&c| c != f && c.is_subset(f)).collect();
        !proper.iter().any(|&a| proper.iter().any(|&b| (a | b) == f))
    };
    let mut sober_witness = None;
    for &f in closed.iter().filter(|f| !f.is_empty()) {
        if !irreducible(f) {
            continue;
        }
        let generic: Vec<usize> = f
            .iter()
            .filter(|&x| top.closure(PointSet::singleton(x)) == f)
            .collect();
        if generic.len() != 1 {
            sober_witness = Some(format!("irreducible closed set {f:?} has generic points {generic:?}"));
            break;
        }
    }
    clauses.push(Clause::from_witness("sober", sober_witness));
    clauses.push(Clause::note("compact", "every subset of a finite space is compact"));
    // Every open set of a finite space is compact.
    let ko = top.opens();
    let base = ko.iter().copied().find(|&u| {
        ko.iter().filter(|v| v.is_subset(u)).fold(PointSet::empty(), |a, &v| a | v) != u
    });
    clauses.push(Clause::from_witness(
        "compact opens form a base",
        base.map(|u| format!("{u:?}")),
    ));
    let inter = ko
        .iter()
        .flat_map(|&u| ko.iter().map(move |&v| (u, v)))
        .find(|&(u, v)| !top.is_open(u & v));
    clauses.push(Clause::check(
        "compact opens are closed under finite intersections",
        inter.is_none() && top.is_open(top.full()),
        || format!("{inter:?}"),
    ));
    clauses
}

/// A finite coherent space with labelled points.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoherentSpace {
    labels: Vec<PointLabel>,
    topology: FiniteTopology,
    clauses: Vec<Clause>,
}

impl CoherentSpace {
    pub fn with_labels(labels: Vec<PointLabel>, topology: FiniteTopology) -> Result<Self> {
        if labels.len() != topology.point_count() {
            return Err(Error::InvalidArgument("one label per point is required".into()));
        }
        let clauses = is_coherent(&topology);
        if let Some(bad) = clauses.iter().find(|c| !c.holds) {
            return Err(Error::InvalidArgument(format!("not coherent: {bad}")));
        }
        Ok(Self {
            labels,
            topology,
            clauses,
        })
    }

    /// Points labelled `s0, s1, …`.
    pub fn new(topology: FiniteTopology) -> Result<Self> {
        let labels = (0..topology.point_count()).map(|i| PointLabel::Name(format!("s{i}"))).collect();
        Self::with_labels(labels, topology)
    }

    pub fn labels(&self) -> &[PointLabel] {
        &self.labels
    }

    pub fn topology(&self) -> &FiniteTopology {
        &self.topology
    }

    pub fn point_count(&self) -> usize {
        self.topology.point_count()
    }

    /// The coherence clauses checked on construction.
    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }
}

/// `(S, T⁺, T⁻) ↦ (S, T⁺)`.
pub fn functor_f(space: &BitopSpace) -> Result<CoherentSpace> {
    let report = check_spectrum_axioms(space);
    if let Some(bad) = report.clauses.iter().find(|c| !c.holds) {
        return Err(Error::InvalidArgument(format!("not a spectrum: {bad}")));
    }
    CoherentSpace::with_labels(space.labels().to_vec(), space.tplus().clone())
}

/// `(X, T) ↦ (X, T, T⁻)` with `T⁻` generated by the complements of compact
/// opens.
pub fn functor_g(coh: &CoherentSpace) -> Result<BitopSpace> {
    let n = coh.point_count();
    let complements: Vec<PointSet> = coh.topology().opens().iter().map(|u| u.complement(n)).collect();
    let tminus = generate_topology(n, &complements)?;
    BitopSpace::new(coh.labels().to_vec(), coh.topology().clone(), tminus)
}

/// `G(F(space)) = space`, compared extensionally.
pub fn roundtrip_space(space: &BitopSpace) -> Result<bool> {
    Ok(functor_g(&functor_f(space)?)? == *space)
}

/// `F(G(coh)) = coh`, compared extensionally.
pub fn roundtrip_coherent(coh: &CoherentSpace) -> Result<bool> {
    Ok(functor_f(&functor_g(coh)?)? == *coh)
}

/// Lattice of the given open sets under union and intersection, elements
/// in the order given and named by their point sets.
pub(crate) fn open_set_lattice(points: usize, opens: &[PointSet]) -> Result<FiniteDistLattice> {
    let index = |u: PointSet| -> usize {
        opens.iter().position(|&v| v == u).expect("open family closed under union and intersection")
    };
    let names = opens.iter().map(|u| format!("{u:?}")).collect();
    for &u in opens {
        for &v in opens {
            if !opens.contains(&(u | v)) || !opens.contains(&(u & v)) {
                return Err(Error::InvalidArgument(format!("{u:?} and {v:?} leave the family")));
            }
        }
    }
    let (bottom, top) = match (opens.iter().position(|u| u.is_empty()), opens.iter().position(|&u| u == PointSet::full(points))) {
        (Some(b), Some(t)) => (b, t),
        _ => return Err(Error::InvalidArgument("family lacks the empty set or the whole space".into())),
    };
    FiniteDistLattice::from_fns(
        names,
        |a, b| index(opens[a] | opens[b]),
        |a, b| index(opens[a] & opens[b]),
        bottom,
        top,
    )
}

/// `(KO(X), ∪, ∩, ∅, X)`, elements ordered by mask.
pub fn ko_lattice(coh: &CoherentSpace) -> Result<FiniteDistLattice> {
    open_set_lattice(coh.point_count(), coh.topology().opens())
}

/// `↓a`.
pub fn principal_ideal(l: &FiniteDistLattice, a: usize) -> ElemSet {
    (0..l.size()).filter(|&b| l.leq(b, a)).collect()
}

/// An ideal `p` with `1 ∉ p` and `a ∧ b ∈ p ⇒ a ∈ p or b ∈ p`.
pub fn is_prime_ideal(l: &FiniteDistLattice, p: ElemSet) -> bool {
    let n = l.size();
    let ideal = p.contains(l.bottom())
        && p.iter().all(|a| (0..n).all(|b| !l.leq(b, a) || p.contains(b)))
        && p.iter().all(|a| p.iter().all(|b| p.contains(l.join(a, b))));
    ideal
        && !p.contains(l.top())
        && (0..n).all(|a| (0..n).all(|b| !p.contains(l.meet(a, b)) || p.contains(a) || p.contains(b)))
}

/// The prime ideals of `L`, sorted by mask; every ideal of a finite lattice
/// is principal.
pub fn prime_ideals_of(l: &FiniteDistLattice) -> Vec<ElemSet> {
    let mut out: Vec<ElemSet> = (0..l.size())
        .map(|a| principal_ideal(l, a))
        .filter(|&p| is_prime_ideal(l, p))
        .collect();
    out.sort();
    out
}

/// `spec(L)` with the topology generated by `{p : a ∉ p}`.
pub fn stone_spec(l: &FiniteDistLattice) -> Result<(CoherentSpace, Vec<ElemSet>)> {
    let points = prime_ideals_of(l);
    let subbase: Vec<PointSet> = (0..l.size())
        .map(|a| (0..points.len()).filter(|&i| !points[i].contains(a)).collect())
        .collect();
    let top = generate_topology(points.len(), &subbase)?;
    let labels = points.iter().map(|&p| PointLabel::Ideal(p)).collect();
    Ok((CoherentSpace::with_labels(labels, top)?, points))
}

/// `F′(f)`: `KO(Y) → KO(X)`, `U ↦ f⁻¹(U)`, for a coherent map `f: X → Y`.
pub fn coherent_map_action(f: &[usize], x: &CoherentSpace, y: &CoherentSpace) -> Result<LatticeHom> {
    if !is_continuous(f, x.topology(), y.topology()) {
        return Err(Error::InvalidArgument("map is not continuous".into()));
    }
    let (kx, ky) = (ko_lattice(x)?, ko_lattice(y)?);
    let map = y
        .topology()
        .opens()
        .iter()
        .map(|&u| {
            let pre = preimage(f, u);
            x.topology()
                .opens()
                .iter()
                .position(|&v| v == pre)
                .ok_or_else(|| Error::InvalidArgument(format!("preimage {pre:?} is not compact open")))
        })
        .collect::<Result<Vec<_>>>()?;
    LatticeHom::new(ky, kx, map)
}

/// `G′(h)`: `spec(L′) → spec(L)`, `p ↦ h⁻¹(p)`, for `h: L → L′`, as a map
/// between point indices of the two Stone spectra.
pub fn lattice_hom_action(h: &LatticeHom) -> Result<Vec<usize>> {
    let (src_space, src_points) = stone_spec(h.source())?;
    let (dst_space, dst_points) = stone_spec(h.target())?;
    let map = dst_points
        .iter()
        .map(|&q| {
            let pre: ElemSet = (0..h.source().size()).filter(|&a| q.contains(h.apply(a))).collect();
            src_points
                .iter()
                .position(|&p| p == pre)
                .ok_or_else(|| Error::Internal(format!("preimage {pre:?} of a prime ideal is not prime")))
        })
        .collect::<Result<Vec<_>>>()?;
    if !is_continuous(&map, dst_space.topology(), src_space.topology()) {
        return Err(Error::Internal("induced map on spectra is not continuous".into()));
    }
    Ok(map)
}

/// `ψ(x) = {U ∈ KO(X) : x ∉ U}`, as indices into
/// `stone_spec(ko_lattice(coh))`.
pub fn psi(coh: &CoherentSpace) -> Result<Vec<usize>> {
    let ko = coh.topology().opens();
    let (_, points) = stone_spec(&ko_lattice(coh)?)?;
    (0..coh.point_count())
        .map(|x| {
            let ideal: ElemSet = (0..ko.len()).filter(|&i| !ko[i].contains(x)).collect();
            points
                .iter()
                .position(|&p| p == ideal)
                .ok_or_else(|| Error::Internal(format!("psi of point {x} is not a prime ideal")))
        })
        .collect()
}

/// `φ_L(l) = {p ∈ spec(L) : l ∉ p}`: `L → KO(spec(L))`.
pub fn phi_lattice(l: &FiniteDistLattice) -> Result<LatticeHom> {
    let (coh, points) = stone_spec(l)?;
    let ko = ko_lattice(&coh)?;
    let opens = coh.topology().opens();
    let map = (0..l.size())
        .map(|a| {
            let u: PointSet = (0..points.len()).filter(|&i| !points[i].contains(a)).collect();
            opens
                .iter()
                .position(|&v| v == u)
                .ok_or_else(|| Error::Internal(format!("phi of {} is not open", l.name(a))))
        })
        .collect::<Result<Vec<_>>>()?;
    LatticeHom::new(l.clone(), ko, map)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NaturalIsos {
    pub psi: Vec<usize>,
    pub phi: LatticeHom,
    pub clauses: Vec<Clause>,
}

impl NaturalIsos {
    pub fn passed(&self) -> bool {
        all_hold(&self.clauses)
    }
}

/// `ψ` for `coh` and `φ_L` for `l`, with their isomorphism properties.
pub fn natural_isos(coh: &CoherentSpace, l: &FiniteDistLattice) -> Result<NaturalIsos> {
    let psi = psi(coh)?;
    let (target, _) = stone_spec(&ko_lattice(coh)?)?;
    let mut inverse = vec![usize::MAX; target.point_count()];
    for (x, &y) in psi.iter().enumerate() {
        inverse[y] = x;
    }
    let bijective = psi.len() == target.point_count() && inverse.iter().all(|&x| x != usize::MAX);
    let homeo = bijective
        && is_continuous(&psi, coh.topology(), target.topology())
        && is_continuous(&inverse, target.topology(), coh.topology());
    let phi = phi_lattice(l)?;
    let clauses = vec![
        Clause::check("psi is a homeomorphism onto the Stone spectrum of KO", homeo, || {
            format!("psi = {psi:?}")
        }),
        Clause::check("phi is a lattice isomorphism onto KO of the Stone spectrum", phi.is_bijective(), || {
            format!("phi = {:?}", phi.map())
        }),
    ];
    Ok(NaturalIsos { psi, phi, clauses })
}

/// A finite topology is coherent exactly when it is `T0`; the literal
/// clauses of [`is_coherent`] must agree.
pub fn coherent_shortcut_agrees(top: &FiniteTopology) -> bool {
    all_hold(&is_coherent(top)) == top.is_t0()
}

/// Every point map `a → b` continuous for both topology pairs, in
/// lexicographic order of tables read from the last point.
pub fn bitop_morphisms(a: &BitopSpace, b: &BitopSpace) -> Vec<Vec<usize>> {
    let (n, m) = (a.point_count(), b.point_count());
    let mut out = Vec::new();
    if n == 0 {
        return vec![Vec::new()];
    }
    if m == 0 {
        return out;
    }
    let mut f = vec![0usize; n];
    loop {
        if is_continuous(&f, a.tplus(), b.tplus()) && is_continuous(&f, a.tminus(), b.tminus()) {
            out.push(f.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            f[i] += 1;
            if f[i] < m {
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}
