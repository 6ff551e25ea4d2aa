//! The canonical lattice representation of an algebra through its spectrum,
//! its universal property, and the convex and radical operations.

use crate::algebra::{check_preseparative, Algebra, MultiOp};
use crate::bits::{ElemSet, PointSet};
use crate::closure::{check_sep0, enumerate, next_closure, ClosureCache, Structure, ENUMERATION_CAP};
use crate::duality::{functor_g, open_set_lattice, stone_spec};
use crate::error::{Error, Result};
use crate::lattice::{FiniteDistLattice, LatticeHom};
use crate::report::{all_hold, Clause};
use crate::separation::prime_filters_with;
use crate::spectrum::{build_lspectrum, build_spectrum, l_plus, BitopSpace};
use crate::topology::is_continuous;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Variant {
    MultiProper,
    MultiAll,
    SingleProper,
    SingleAll,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Self::MultiProper, Self::MultiAll, Self::SingleProper, Self::SingleAll];

    pub fn proper(self) -> bool {
        matches!(self, Self::MultiProper | Self::SingleProper)
    }

    pub fn single_valued(self) -> bool {
        matches!(self, Self::SingleProper | Self::SingleAll)
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::MultiProper => "multivalued-proper",
            Self::MultiAll => "multivalued-all",
            Self::SingleProper => "single-valued-proper",
            Self::SingleAll => "single-valued-all",
        }
    }
}

/// `φ: X → L` with `L` the lattice of `L⁺` and `φ(x) = U_x^+`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Representation {
    pub algebra: Algebra,
    pub variant: Variant,
    pub spectrum: BitopSpace,
    pub lattice: FiniteDistLattice,
    /// `opens[i]` is the member of `L⁺` behind lattice element `i`.
    pub opens: Vec<PointSet>,
    pub phi: Vec<usize>,
}

impl Representation {
    pub fn element_of(&self, u: PointSet) -> Option<usize> {
        self.opens.iter().position(|&v| v == u)
    }

    /// The lattice elements hit by `φ`.
    pub fn image(&self) -> ElemSet {
        self.phi.iter().copied().collect()
    }

    /// Whether `φ(X)` together with `0` and `1` generates `L`.
    pub fn generates(&self) -> bool {
        self.lattice.generated(self.image()) == self.lattice.all()
    }
}

/// The spectrum a variant is built on.
pub fn spectrum_of(alg: &Algebra, variant: Variant) -> Result<BitopSpace> {
    if variant.single_valued() {
        build_lspectrum(alg, variant.proper())
    } else {
        build_spectrum(alg, variant.proper())
    }
}

pub fn canonical_rep(alg: &Algebra, variant: Variant) -> Result<Representation> {
    let spectrum = spectrum_of(alg, variant)?;
    let opens = l_plus(&spectrum);
    let lattice = open_set_lattice(spectrum.point_count(), &opens)?;
    let phi = (0..alg.size())
        .map(|x| {
            let u = spectrum.u_plus(x);
            opens
                .iter()
                .position(|&v| v == u)
                .ok_or_else(|| Error::Internal(format!("U+ of {} is not in L+", alg.carrier().name(x))))
        })
        .collect::<Result<Vec<_>>>()?;
    let rep = Representation {
        algebra: alg.clone(),
        variant,
        spectrum,
        lattice,
        opens,
        phi,
    };
    if !rep.generates() {
        return Err(Error::Internal("phi(X) does not generate L".into()));
    }
    Ok(rep)
}

/// `spec(L)` as a bitopological space, with its points in mask order.
fn lattice_spectrum(l: &FiniteDistLattice) -> Result<(BitopSpace, Vec<ElemSet>)> {
    let (coh, points) = stone_spec(l)?;
    Ok((functor_g(&coh)?, points))
}

fn is_bicontinuous(f: &[usize], a: &BitopSpace, b: &BitopSpace) -> bool {
    is_continuous(f, a.tplus(), b.tplus()) && is_continuous(f, a.tminus(), b.tminus())
}

fn invert(f: &[usize], target_size: usize) -> Option<Vec<usize>> {
    let mut inv = vec![usize::MAX; target_size];
    for (x, &y) in f.iter().enumerate() {
        if y >= target_size || inv[y] != usize::MAX {
            return None;
        }
        inv[y] = x;
    }
    inv.iter().all(|&x| x != usize::MAX).then_some(inv)
}

fn is_isomorphism(f: &[usize], a: &BitopSpace, b: &BitopSpace) -> bool {
    invert(f, b.point_count()).is_some_and(|inv| is_bicontinuous(f, a, b) && is_bicontinuous(&inv, b, a))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RepReport {
    pub clauses: Vec<Clause>,
    pub injective: bool,
    /// Distinct pairs of carrier elements no spectrum point separates.
    pub unsplit: Vec<(usize, usize)>,
}

impl RepReport {
    pub fn passed(&self) -> bool {
        all_hold(&self.clauses)
    }
}

pub fn check_rep_properties(rep: &Representation) -> Result<RepReport> {
    let (lspec, lpoints) = lattice_spectrum(&rep.lattice)?;
    let mut clauses = vec![Clause::check("phi(X) with 0 and 1 generates L", rep.generates(), || {
        format!("generated {:?}", rep.lattice.generated(rep.image()))
    })];

    // Φ(q) = φ⁻¹(q) as a point of the spectrum.
    let big_phi: Option<Vec<usize>> = lpoints
        .iter()
        .map(|&q| {
            let pre: ElemSet = (0..rep.phi.len()).filter(|&x| q.contains(rep.phi[x])).collect();
            rep.spectrum.index_of_ideal(pre)
        })
        .collect();
    clauses.push(Clause::check("preimages of prime ideals of L are spectrum points", big_phi.is_some(), || {
        "some preimage is not a point".into()
    }));
    if let Some(big_phi) = &big_phi {
        // ψ(p) = {U ∈ L⁺ : p ∉ U}; Φ must invert it.
        let psi: Option<Vec<usize>> = (0..rep.spectrum.point_count())
            .map(|p| {
                let ideal: ElemSet = (0..rep.opens.len()).filter(|&i| !rep.opens[i].contains(p)).collect();
                lpoints.iter().position(|&q| q == ideal)
            })
            .collect();
        let matches_psi = psi.is_some_and(|psi| (0..lpoints.len()).all(|q| psi.get(big_phi[q]) == Some(&q)));
        clauses.push(Clause::check("preimage under phi inverts psi", matches_psi, || {
            format!("Phi = {big_phi:?}")
        }));
        clauses.push(Clause::check(
            "preimage under phi is an isomorphism of bitopological spaces",
            is_isomorphism(big_phi, &lspec, &rep.spectrum),
            || format!("Phi = {big_phi:?}"),
        ));
    }

    let n = rep.algebra.size();
    let points: Vec<ElemSet> = rep.spectrum.ideals().unwrap_or_default();
    let mut unsplit = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !points.iter().any(|p| p.contains(a) != p.contains(b)) {
                unsplit.push((a, b));
            }
        }
    }
    let injective = (0..n).all(|a| (a + 1..n).all(|b| rep.phi[a] != rep.phi[b]));
    clauses.push(Clause::check(
        "phi is injective iff spectrum points separate distinct elements",
        injective == unsplit.is_empty(),
        || format!("injective = {injective}, unsplit pairs {unsplit:?}"),
    ));
    if rep.variant.proper() {
        if let Some((xi0, xi1)) = rep.algebra.carrier().designated() {
            clauses.push(Clause::check(
                "phi sends xi0 to 0 and xi1 to 1",
                rep.phi[xi0] == rep.lattice.bottom() && rep.phi[xi1] == rep.lattice.top(),
                || format!("phi(xi0) = {}, phi(xi1) = {}", rep.phi[xi0], rep.phi[xi1]),
            ));
        }
    }
    Ok(RepReport {
        clauses,
        injective,
        unsplit,
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factor {
    pub hom: LatticeHom,
    /// The induced map of spectra is an isomorphism, and then so is `hom`.
    pub isomorphism: bool,
}

/// The lattice homomorphism `l: L → L′` with `l ∘ φ = θ`.
///
/// `θ` must pull every prime ideal of `L′` back to a spectrum point, and the
/// induced map `spec(L′) → S` must be continuous for both topology pairs.
pub fn universal_factor(rep: &Representation, lp: &FiniteDistLattice, theta: &[usize]) -> Result<Factor> {
    let n = rep.algebra.size();
    if theta.len() != n || theta.iter().any(|&t| t >= lp.size()) {
        return Err(Error::InvalidArgument("theta must send each carrier element into L'".into()));
    }
    let (lspec, lpoints) = lattice_spectrum(lp)?;
    let big_theta = lpoints
        .iter()
        .map(|&q| {
            let pre: ElemSet = (0..n).filter(|&x| q.contains(theta[x])).collect();
            rep.spectrum.index_of_ideal(pre).ok_or_else(|| {
                Error::InvalidArgument(format!("theta pulls a prime ideal back to {}, not a point", rep.algebra.format_set(pre)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if !is_bicontinuous(&big_theta, &lspec, &rep.spectrum) {
        return Err(Error::InvalidArgument("the induced map of spectra is not continuous".into()));
    }
    let map = rep
        .opens
        .iter()
        .map(|&u| {
            let wanted: ElemSet = (0..lpoints.len()).filter(|&q| u.contains(big_theta[q])).collect();
            (0..lp.size())
                .find(|&e| (0..lpoints.len()).filter(|&q| !lpoints[q].contains(e)).collect::<ElemSet>() == wanted)
                .ok_or_else(|| Error::Internal(format!("no element of L' matches {u:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let hom = LatticeHom::new(rep.lattice.clone(), lp.clone(), map)
        .map_err(|e| Error::Internal(format!("factor is not a homomorphism: {e}")))?;
    if (0..n).any(|x| hom.apply(rep.phi[x]) != theta[x]) {
        return Err(Error::Internal("factor does not satisfy l(phi(x)) = theta(x)".into()));
    }
    if !rep.generates() {
        return Err(Error::Internal("phi(X) does not generate L, so the factor is not unique".into()));
    }
    let isomorphism = is_isomorphism(&big_theta, &lspec, &rep.spectrum);
    if isomorphism && !hom.is_bijective() {
        return Err(Error::Internal("induced map is an isomorphism but the factor is not".into()));
    }
    Ok(Factor { hom, isomorphism })
}

/// Every homomorphism `L → L′` agreeing with `θ` on `φ(X)`; there is exactly
/// one when `φ(X)` generates `L`.
pub fn factors_by_enumeration(rep: &Representation, lp: &FiniteDistLattice, theta: &[usize]) -> Vec<Vec<usize>> {
    crate::lattice::enumerate_homs(&rep.lattice, lp)
        .into_iter()
        .filter(|m| (0..theta.len()).all(|x| m[rep.phi[x]] == theta[x]))
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OperationReport {
    pub clauses: Vec<Clause>,
    /// `a ⊕ b = {x : φ(x) ≤ φ(a) ∨ φ(b)}` everywhere.
    pub plus_exact: bool,
    /// `a ⊗ b = {x : φ(x) ≥ φ(a) ∧ φ(b)}` everywhere.
    pub times_exact: bool,
    /// `a ⊗ b ⊆ {x : φ(x) ≤ φ(a) ∨ φ(b)}` and `a ⊕ b ⊆ {x : φ(x) ≥ φ(a) ∧ φ(b)}`,
    /// the opposite pairing of operations with lattice bounds.
    pub swapped_orientation: bool,
}

impl OperationReport {
    pub fn passed(&self) -> bool {
        all_hold(&self.clauses)
    }
}

/// How the operations sit inside the lattice: containments for multivalued
/// variants, equalities for single-valued ones.
pub fn check_operation_bounds(rep: &Representation) -> OperationReport {
    let alg = &rep.algebra;
    let l = &rep.lattice;
    let n = alg.size();
    let below = |a: usize, b: usize| -> ElemSet {
        let j = l.join(rep.phi[a], rep.phi[b]);
        (0..n).filter(|&x| l.leq(rep.phi[x], j)).collect()
    };
    let above = |a: usize, b: usize| -> ElemSet {
        let m = l.meet(rep.phi[a], rep.phi[b]);
        (0..n).filter(|&x| l.leq(m, rep.phi[x])).collect()
    };
    let pairs = || (0..n).flat_map(|a| (0..n).map(move |b| (a, b)));
    let (mut plus_sub, mut times_sub) = (None, None);
    let (mut plus_exact, mut times_exact, mut swapped) = (true, true, true);
    for (a, b) in pairs() {
        let (p, t) = (alg.plus().get(a, b), alg.times().get(a, b));
        let (lo, hi) = (below(a, b), above(a, b));
        if !p.is_subset(lo) && plus_sub.is_none() {
            plus_sub = Some((a, b));
        }
        if !t.is_subset(hi) && times_sub.is_none() {
            times_sub = Some((a, b));
        }
        plus_exact &= p == lo;
        times_exact &= t == hi;
        swapped &= t.is_subset(lo) && p.is_subset(hi);
    }
    let name = |w: Option<(usize, usize)>| {
        w.map(|(a, b)| format!("at ({}, {})", alg.carrier().name(a), alg.carrier().name(b)))
    };
    let mut clauses = Vec::new();
    if rep.variant.single_valued() {
        let plus_eq = pairs()
            .find(|&(a, b)| alg.plus().get(a, b).min().map(|s| rep.phi[s]) != Some(l.join(rep.phi[a], rep.phi[b])));
        let times_eq = pairs()
            .find(|&(a, b)| alg.times().get(a, b).min().map(|s| rep.phi[s]) != Some(l.meet(rep.phi[a], rep.phi[b])));
        clauses.push(Clause::from_witness("phi(a + b) = phi(a) ∨ phi(b)", name(plus_eq)));
        clauses.push(Clause::from_witness("phi(a × b) = phi(a) ∧ phi(b)", name(times_eq)));
    } else {
        clauses.push(Clause::from_witness("a ⊕ b ⊆ {x : phi(x) ≤ phi(a) ∨ phi(b)}", name(plus_sub)));
        clauses.push(Clause::from_witness("a ⊗ b ⊆ {x : phi(x) ≥ phi(a) ∧ phi(b)}", name(times_sub)));
    }
    OperationReport {
        clauses,
        plus_exact,
        times_exact,
        swapped_orientation: swapped,
    }
}

fn require_separative(alg: &Algebra) -> Result<ClosureCache> {
    let axioms = check_preseparative(alg);
    if !axioms.passed() {
        return Err(Error::InvalidArgument(format!("not preseparative: {axioms:?}")));
    }
    let cache = ClosureCache::new(alg);
    if let fail @ crate::closure::Sep0Report::Fail { .. } = check_sep0(&cache) {
        return Err(Error::InvalidArgument(format!("not separative: {fail:?}")));
    }
    Ok(cache)
}

fn pair_algebra(alg: &Algebra, mut times: impl FnMut(ElemSet) -> ElemSet, mut plus: impl FnMut(ElemSet) -> ElemSet) -> Result<Algebra> {
    let n = alg.size();
    let pair = |a: usize, b: usize| ElemSet::singleton(a).with(b);
    let t = MultiOp::from_fn(n, |a, b| times(pair(a, b)));
    let p = MultiOp::from_fn(n, |a, b| plus(pair(a, b)));
    Algebra::new(alg.carrier().clone(), t, p)
}

/// `a · b = μ({a, b})` and `a + b = α({a, b})`.
pub fn convex_ops(alg: &Algebra) -> Result<Algebra> {
    let cache = require_separative(alg)?;
    pair_algebra(alg, |s| cache.mu(s), |s| cache.alpha(s))
}

/// Prime filters of an algebra, kept for repeated radical closures.
#[derive(Clone, Debug)]
pub struct RadicalCache {
    size: usize,
    filters: Vec<ElemSet>,
}

impl RadicalCache {
    pub fn new(alg: &Algebra) -> Self {
        Self {
            size: alg.size(),
            filters: prime_filters_with(alg, ElemSet::empty(), ElemSet::empty()),
        }
    }

    /// Intersection of the prime filters (or prime ideals) containing `a`.
    pub fn closure(&self, a: ElemSet, kind: Structure) -> ElemSet {
        let full = ElemSet::full(self.size);
        match kind {
            Structure::Filter => self
                .filters
                .iter()
                .filter(|f| a.is_subset(**f))
                .fold(full, |acc, &f| acc & f),
            Structure::Ideal => self
                .filters
                .iter()
                .filter(|f| !a.intersects(**f))
                .fold(full, |acc, &f| acc & f.complement(self.size)),
        }
    }

    pub fn prime_filters(&self) -> &[ElemSet] {
        &self.filters
    }
}

/// `μ_ρ(a)` or `α_ρ(a)`.
pub fn radical_closure(cache: &ClosureCache, a: ElemSet, kind: Structure) -> Result<ElemSet> {
    cache.algebra().carrier().check_set(a)?;
    Ok(RadicalCache::new(cache.algebra()).closure(a, kind))
}

/// `{x : α(x) ∩ a ≠ ∅}` for a filter, `{x : μ(x) ∩ a ≠ ∅}` for an ideal;
/// on separative algebras these are the radical closures of `a`.
pub fn radical_formula(cache: &ClosureCache, a: ElemSet, kind: Structure) -> ElemSet {
    (0..cache.size())
        .filter(|&x| {
            let s = match kind {
                Structure::Filter => cache.alpha_of(x),
                Structure::Ideal => cache.mu_of(x),
            };
            s.intersects(a)
        })
        .collect()
}

/// `a · b = μ_ρ({a, b})` and `a + b = α_ρ({a, b})`.
pub fn radical_ops(alg: &Algebra) -> Result<Algebra> {
    require_separative(alg)?;
    let radical = RadicalCache::new(alg);
    pair_algebra(
        alg,
        |s| radical.closure(s, Structure::Filter),
        |s| radical.closure(s, Structure::Ideal),
    )
}

/// Fixed points of `μ_ρ` (or `α_ρ`), sorted by mask.
pub fn radical_structures(alg: &Algebra, kind: Structure) -> Result<Vec<ElemSet>> {
    let radical = RadicalCache::new(alg);
    let mut out = next_closure(alg.size(), ENUMERATION_CAP, |s| radical.closure(s, kind))?;
    out.sort();
    Ok(out)
}

/// Checks an algebra derived by [`convex_ops`] or [`radical_ops`] against
/// its source: both axiom families, the preorder, and the expected filters
/// and ideals.
pub fn check_derived(original: &Algebra, derived: &Algebra, radical: bool) -> Result<Vec<Clause>> {
    let axioms = check_preseparative(derived);
    let cache = ClosureCache::new(derived);
    let sep0 = check_sep0(&cache);
    let before = ClosureCache::new(original).leq_matrix();
    let mut clauses = vec![
        Clause::check("preseparative", axioms.passed(), || format!("{axioms:?}")),
        Clause::check("Sep0", sep0.passed(), || format!("{sep0:?}")),
        Clause::check("preorder unchanged", cache.leq_matrix() == before, String::new),
    ];
    for kind in [Structure::Filter, Structure::Ideal] {
        let expected = if radical {
            radical_structures(original, kind)?
        } else {
            enumerate(original, kind, ENUMERATION_CAP)?
        };
        let got = enumerate(derived, kind, ENUMERATION_CAP)?;
        let name = match (radical, kind) {
            (false, Structure::Filter) => "filters unchanged",
            (false, Structure::Ideal) => "ideals unchanged",
            (true, Structure::Filter) => "filters are the radical filters of the source",
            (true, Structure::Ideal) => "ideals are the radical ideals of the source",
        };
        clauses.push(Clause::check(name, got == expected, || {
            format!("{} found, {} expected", got.len(), expected.len())
        }));
    }
    Ok(clauses)
}

/// `a ≤ b ⇔ φ(a) ⊆ φ(b)` and its consequences, for the multivalued proper
/// representation of a separative algebra.
pub fn order_embedding_check(rep: &Representation) -> Result<Vec<Clause>> {
    if rep.variant != Variant::MultiProper {
        return Err(Error::InvalidArgument("needs the multivalued proper representation".into()));
    }
    let alg = &rep.algebra;
    let cache = require_separative(alg)?;
    let radical = RadicalCache::new(alg);
    let n = alg.size();
    let pairs = || (0..n).flat_map(|a| (0..n).map(move |b| (a, b)));
    let name = |(a, b): (usize, usize)| format!("({}, {})", alg.carrier().name(a), alg.carrier().name(b));
    let phi_leq = |a: usize, b: usize| rep.lattice.leq(rep.phi[a], rep.phi[b]);
    let embed = pairs().find(|&(a, b)| cache.leq(a, b) != phi_leq(a, b));
    let rad = |x: usize| radical.closure(ElemSet::singleton(x), Structure::Ideal);
    let same_radicals = pairs().find(|&(a, b)| (rep.phi[a] == rep.phi[b]) != (rad(a) == rad(b)));
    let quotient = pairs().find(|&(a, b)| (cache.leq(a, b) && cache.leq(b, a)) != (rep.phi[a] == rep.phi[b]));
    Ok(vec![
        Clause::from_witness("a ≤ b iff phi(a) ⊆ phi(b)", embed.map(name)),
        Clause::from_witness("phi(a) = phi(b) iff a and b lie in the same radical ideals", same_radicals.map(name)),
        Clause::from_witness("a ≤ b ≤ a iff phi(a) = phi(b)", quotient.map(name)),
    ])
}
