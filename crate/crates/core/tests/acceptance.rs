//! Acceptance criteria 1 to 10, one line per criterion.
//!
//! Every check is exact. Each criterion also has a wall-clock budget; going
//! over it fails the criterion. Criterion 10 reruns 1 to 9 and compares the
//! two reports byte for byte.

mod common;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::IteratorRandom;
use rand::Rng;
use sepalg::algebra::{check_calculus, check_preseparative, CALCULUS_SAMPLES};
use sepalg::closure::{check_sep0, enumerate_filters, enumerate_ideals, is_prime, ClosureCache, Sep0Report, Structure};
use sepalg::duality::{
    functor_f, functor_g, natural_isos, phi_lattice, roundtrip_coherent, roundtrip_space, stone_spec, CoherentSpace,
};
use sepalg::laws::{check_closure_laws, check_set_laws};
use sepalg::lattice::{enumerate_homs, LATTICE_CAP};
use sepalg::report::{all_hold, failures, Clause};
use sepalg::representation::{
    canonical_rep, check_operation_bounds, check_derived, check_rep_properties, convex_ops, factors_by_enumeration,
    order_embedding_check, radical_ops, universal_factor, Variant,
};
use sepalg::sample::{random_algebra, random_t0_topology};
use sepalg::separation::{
    check_sep, enumerate_prime_pairs, prime_filters_with, sep0_failure_to_sep_failure, separate, wallman, Separation,
};
use sepalg::spectrum::{
    build_lspectrum, build_spectrum, check_spectrum_axioms, join_and_stone, specialization_and_extremes,
};
use sepalg::topology::generate_topology;
use sepalg::{fixtures, ElemSet, Error, FiniteDistLattice, LatticeHom, PointSet};

/// What one criterion found: a verdict and a deterministic transcript.
struct Finding {
    pass: bool,
    report: String,
}

impl Finding {
    fn new() -> Self {
        Self { pass: true, report: String::new() }
    }

    fn check(&mut self, holds: bool, what: impl FnOnce() -> String) {
        if !holds {
            self.pass = false;
            let _ = writeln!(self.report, "FAIL {}", what());
        }
    }

    fn clauses(&mut self, context: &str, clauses: &[Clause]) {
        for c in failures(clauses) {
            self.check(false, || format!("{context}: {c}"));
        }
    }

    fn note(&mut self, line: impl AsRef<str>) {
        let _ = writeln!(self.report, "{}", line.as_ref());
    }
}

struct Criterion {
    id: u8,
    title: &'static str,
    budget: Duration,
    run: fn() -> Finding,
}

const CRITERIA: [Criterion; 9] = [
    Criterion { id: 1, title: "Stone duality round trip", budget: Duration::from_secs(5), run: stone_duality },
    Criterion { id: 2, title: "category isomorphism", budget: Duration::from_secs(10), run: category_isomorphism },
    Criterion { id: 3, title: "spectrum axioms", budget: Duration::from_secs(30), run: spectrum_axioms },
    Criterion { id: 4, title: "Zariski agreement", budget: Duration::from_secs(20), run: zariski },
    Criterion { id: 5, title: "Stone agreement", budget: Duration::from_secs(5), run: stone_agreement },
    Criterion { id: 6, title: "separation theorem", budget: Duration::from_secs(60), run: separation },
    Criterion { id: 7, title: "Sep0 and Sep equivalence", budget: Duration::from_secs(60), run: equivalence },
    Criterion { id: 8, title: "calculus and closure laws", budget: Duration::from_secs(30), run: calculus },
    Criterion { id: 9, title: "representation", budget: Duration::from_secs(60), run: representation },
];

fn stone_duality() -> Finding {
    let mut f = Finding::new();
    for (name, l) in fixtures::lattice_corpus() {
        let phi = phi_lattice(&l).unwrap();
        f.check(phi.is_bijective(), || format!("{name}: phi is not bijective"));
        let (coh, points) = stone_spec(&l).unwrap();
        let isos = natural_isos(&coh, &l).unwrap();
        f.clauses(&name, &isos.clauses);
        f.note(format!("{name}: |L| = {}, {} points, phi = {:?}, psi = {:?}", l.size(), points.len(), phi.map(), isos.psi));
    }
    f
}

fn category_isomorphism() -> Finding {
    let mut f = Finding::new();
    let mut spaces = 0;
    for (name, alg) in common::all_fixtures() {
        for (v, space) in common::spectra_of(&alg) {
            spaces += 1;
            let coh = functor_f(&space).unwrap();
            f.check(roundtrip_space(&space).unwrap(), || format!("{name} {}: G(F(S)) differs", v.label()));
            f.check(roundtrip_coherent(&coh).unwrap(), || format!("{name} {}: F(G(X)) differs", v.label()));
        }
    }
    f.note(format!("{spaces} fixture spectra"));
    let mut rng = common::rng(1002);
    let mut sizes = [0usize; 7];
    for k in 0..500 {
        let n = rng.gen_range(1..=6);
        sizes[n] += 1;
        let coh = CoherentSpace::new(random_t0_topology(&mut rng, n)).unwrap();
        f.check(roundtrip_coherent(&coh).unwrap(), || format!("random space #{k}: F(G(X)) differs"));
        f.check(roundtrip_space(&functor_g(&coh).unwrap()).unwrap(), || format!("random space #{k}: G(F(S)) differs"));
    }
    f.note(format!("500 random T0 spaces by point count: {:?}", &sizes[1..]));
    f
}

fn spectrum_axioms() -> Finding {
    let mut f = Finding::new();
    let check = |f: &mut Finding, context: String, alg: &sepalg::Algebra| -> usize {
        let spectra = common::spectra_of(alg);
        for (v, space) in &spectra {
            let ctx = format!("{context} {}", v.label());
            let report = check_spectrum_axioms(space);
            f.clauses(&ctx, &report.clauses);
            let spec = specialization_and_extremes(space).unwrap();
            f.clauses(&ctx, &spec.clauses);
            f.check(join_and_stone(space).unwrap().consistent(), || format!("{ctx}: Stone flags inconsistent"));
        }
        spectra.len()
    };
    let mut fixture_spaces = 0;
    for (name, alg) in common::all_fixtures() {
        fixture_spaces += check(&mut f, name, &alg);
    }
    let mut random_spaces = 0;
    for (k, alg) in common::random_corpus(200, 1003).iter().enumerate() {
        random_spaces += check(&mut f, format!("random #{k}"), alg);
    }
    f.note(format!("{fixture_spaces} fixture spectra, {random_spaces} spectra of 200 random algebras"));
    f
}

fn primes_dividing(n: usize) -> Vec<usize> {
    (2..=n).filter(|&p| n % p == 0 && (2..p).all(|d| p % d != 0)).collect()
}

fn zariski() -> Finding {
    let mut f = Finding::new();
    for n in 2..=60 {
        let space = build_spectrum(&fixtures::ring(n).unwrap(), true).unwrap();
        let primes = primes_dividing(n);
        let ideals: Vec<ElemSet> = primes.iter().map(|&p| (0..n).filter(|x| x % p == 0).collect()).collect();
        let mut got = space.ideals().unwrap();
        got.sort();
        let mut want = ideals.clone();
        want.sort();
        f.check(got == want, || format!("Z_{n}: points are not the prime divisors {primes:?}"));
        if got != want {
            continue;
        }
        let index: Vec<usize> = ideals.iter().map(|&p| space.index_of_ideal(p).unwrap()).collect();
        let subbase: Vec<PointSet> = (0..n)
            .map(|a| (0..primes.len()).filter(|&i| a % primes[i] != 0).map(|i| index[i]).collect())
            .collect();
        let zariski = generate_topology(space.point_count(), &subbase).unwrap();
        f.check(space.tplus() == &zariski, || format!("Z_{n}: T+ differs from the Zariski topology"));
        if primes.iter().product::<usize>() == n {
            f.check(space.tplus().opens().len() == 1 << primes.len(), || format!("Z_{n}: T+ is not discrete"));
        }
        f.note(format!("Z_{n}: primes {primes:?}"));
    }
    f
}

fn stone_agreement() -> Finding {
    let mut f = Finding::new();
    for (name, l) in fixtures::lattice_corpus() {
        let multi = build_spectrum(&fixtures::lattice_algebra(&l).unwrap(), true).unwrap();
        let single = build_lspectrum(&fixtures::lattice_algebra_single(&l).unwrap(), true).unwrap();
        let (stone, points) = stone_spec(&l).unwrap();
        let (m, s) = (multi.ideals().unwrap(), single.ideals().unwrap());
        f.check(m == points && s == points, || format!("{name}: point sets differ"));
        f.check(multi.tplus() == stone.topology() && single.tplus() == stone.topology(), || {
            format!("{name}: T+ differs")
        });
        f.note(format!("{name}: {} points, {} opens", points.len(), stone.topology().opens().len()));
    }
    f
}

fn separation() -> Finding {
    let mut f = Finding::new();
    let wanted = ["lattice chain 3", "lattice powerset 2", "ring 6", "ring 12", "ring 30"];
    for (name, alg) in fixtures::corpus() {
        if !(wanted.contains(&name.as_str()) || name.starts_with("semigroup")) {
            continue;
        }
        let cache = ClosureCache::new(&alg);
        let primes = enumerate_prime_pairs(&alg);
        let ideals = enumerate_ideals(&alg).unwrap();
        let mut pairs = 0;
        for f0 in enumerate_filters(&alg).unwrap() {
            for &i0 in ideals.iter().filter(|i| !i.intersects(f0)) {
                pairs += 1;
                match separate(&cache, f0, i0).unwrap() {
                    Separation::Separated(p) => f.check(
                        p.extends(f0, i0) && is_prime(&alg, p.filter, Structure::Filter) && primes.contains(&p),
                        || format!("{name}: bad prime pair for ({f0:?}, {i0:?})"),
                    ),
                    Separation::Stuck { element, .. } => {
                        f.check(false, || format!("{name}: stuck at element {element} for ({f0:?}, {i0:?})"))
                    }
                }
            }
        }
        f.note(format!("{name}: {pairs} disjoint pairs, {} prime pairs", primes.len()));
    }
    f
}

fn equivalence() -> Finding {
    let mut f = Finding::new();
    let corpus = common::random_corpus(100, 1007);
    let (mut sep0_failures, mut unseparable) = (0, 0);
    for (k, alg) in corpus.iter().enumerate() {
        let cache = ClosureCache::new(alg);
        let sep0 = check_sep0(&cache);
        let sep = check_sep(alg).unwrap();
        f.check(sep0.passed() == sep.passed(), || format!("random #{k}: Sep0 {sep0:?} but Sep {sep:?}"));
        if let Sep0Report::Fail { a, b, c } = sep0 {
            sep0_failures += 1;
            match sep0_failure_to_sep_failure(&cache, a, b, c) {
                Ok((f0, i0)) if !primes_extend(alg, f0, i0) => unseparable += 1,
                other => f.check(false, || format!("random #{k}: no verified pair ({other:?})")),
            }
        }
    }
    f.note(format!("100 random algebras: {sep0_failures} fail Sep0, {unseparable} verified unseparable pairs"));
    f.check(sep0_failures > 0 && sep0_failures < 100, || "corpus does not exercise both outcomes".into());

    let mut rng = common::rng(1017);
    for (name, alg) in fixtures::corpus() {
        if !common::is_separative(&alg) {
            continue;
        }
        let cache = ClosureCache::new(&alg);
        let filters: Vec<ElemSet> = enumerate_filters(&alg).unwrap().into_iter().filter(|m| !m.is_empty()).collect();
        let mut lengths = Vec::new();
        for seed in 0..50 {
            let m = *filters.iter().choose(&mut rng).unwrap();
            let choice: BTreeMap<ElemSet, usize> = prime_filters_with(&alg, m, ElemSet::empty())
                .into_iter()
                .map(|p| (p, p.iter().choose(&mut rng).unwrap()))
                .collect();
            match wallman(&cache, m, &choice).unwrap() {
                Some(chosen) => {
                    let span: ElemSet = chosen.iter().copied().collect();
                    f.check(cache.alpha(span).intersects(m), || format!("{name} choice {seed}: family misses M"));
                    lengths.push(chosen.len());
                }
                None => f.check(false, || format!("{name} choice {seed}: no finite family for M = {m:?}")),
            }
        }
        f.note(format!("{name}: wallman family sizes {lengths:?}"));
    }
    f
}

fn primes_extend(alg: &sepalg::Algebra, f0: ElemSet, i0: ElemSet) -> bool {
    enumerate_prime_pairs(alg).iter().any(|p| p.extends(f0, i0))
}

fn calculus() -> Finding {
    let mut f = Finding::new();
    for (name, alg) in fixtures::corpus() {
        let axioms = check_preseparative(&alg);
        f.check(axioms.passed(), || format!("{name}: {axioms:?}"));
        let report = check_calculus(&alg, common::SEED, CALCULUS_SAMPLES);
        for r in report.identities.iter().filter(|r| !r.holds) {
            f.check(false, || format!("{name}: {} fails at {:?}", r.name, r.witness));
        }
        let set = check_set_laws(&alg, common::SEED, CALCULUS_SAMPLES);
        f.clauses(&name, &set);
        let closure = check_closure_laws(&alg, common::SEED, CALCULUS_SAMPLES).unwrap();
        f.clauses(&name, &closure);
        let notes = set.iter().chain(&closure).filter(|c| c.detail.is_some()).count();
        f.note(format!("{name}: {} identities, {} laws, {notes} skipped", report.identities.len(), set.len() + closure.len()));
    }
    let mut rng = common::rng(1008);
    let mut needing_axioms = 0;
    for k in 0..200 {
        let alg = random_algebra(&mut rng, 1 + k % 4);
        let report = check_calculus(&alg, k as u64, CALCULUS_SAMPLES);
        f.check(report.axiom_free_hold(), || format!("unconstrained #{k}: residuation fails"));
        needing_axioms += usize::from(!report.all_hold());
    }
    f.note(format!("200 unconstrained tables: residuation holds, {needing_axioms} violate some axiom-dependent identity"));
    f
}

fn representation() -> Finding {
    let mut f = Finding::new();
    let targets: Vec<FiniteDistLattice> =
        fixtures::lattice_corpus().into_iter().map(|(_, l)| l).filter(|l| l.size() <= 8).collect();
    let (mut reps, mut factors) = (0, 0);
    for (name, alg) in common::all_fixtures() {
        for (v, space) in common::spectra_of(&alg) {
            let ctx = format!("{name} {}", v.label());
            let rep = match canonical_rep(&alg, v) {
                Ok(rep) => rep,
                Err(Error::Capacity { .. }) if space.tplus().opens().len() > LATTICE_CAP => continue,
                Err(e) => {
                    f.check(false, || format!("{ctx}: {e}"));
                    continue;
                }
            };
            reps += 1;
            f.clauses(&ctx, &check_rep_properties(&rep).unwrap().clauses);
            f.clauses(&ctx, &check_operation_bounds(&rep).clauses);
            if v == Variant::MultiProper && common::is_separative(&alg) {
                f.clauses(&ctx, &order_embedding_check(&rep).unwrap());
            }
            if rep.lattice.size() > 8 {
                continue;
            }
            for lp in &targets {
                for h in enumerate_homs(&rep.lattice, lp) {
                    let theta: Vec<usize> = rep.phi.iter().map(|&e| h[e]).collect();
                    let unique = match universal_factor(&rep, lp, &theta) {
                        Ok(factor) => factor.hom.map() == h.as_slice(),
                        Err(_) => false,
                    };
                    let enumerated = factors_by_enumeration(&rep, lp, &theta) == [h.clone()];
                    f.check(unique && enumerated, || format!("{ctx}: factor through {h:?} is not unique"));
                    factors += 1;
                }
            }
        }
    }
    f.note(format!("{reps} representations, {factors} factorizations checked against all homomorphisms"));

    let z6 = canonical_rep(&fixtures::ring(6).unwrap(), Variant::MultiProper).unwrap();
    let images: Vec<PointSet> = z6.phi.iter().map(|&e| z6.opens[e]).collect();
    let expected = [0b00, 0b11, 0b01, 0b10, 0b01, 0b11].map(PointSet::from_bits);
    let b4 = FiniteDistLattice::powerset(2).unwrap();
    let iso = enumerate_homs(&z6.lattice, &b4)
        .into_iter()
        .any(|m| LatticeHom::new(z6.lattice.clone(), b4.clone(), m).unwrap().is_bijective());
    f.check(images == expected && iso, || format!("Z6: phi images {images:?}"));
    f.note(format!("Z6: phi = {:?}", z6.phi));

    for (name, alg) in fixtures::corpus() {
        if !common::is_separative(&alg) {
            continue;
        }
        let convex = convex_ops(&alg).unwrap();
        f.clauses(&format!("{name} convex"), &check_derived(&alg, &convex, false).unwrap());
        let radical = radical_ops(&alg).unwrap();
        let clauses = check_derived(&alg, &radical, true).unwrap();
        f.check(all_hold(&clauses), || format!("{name} radical: {:?}", failures(&clauses)));
    }
    f
}

struct Run {
    lines: Vec<(u8, &'static str, bool, Duration, Duration)>,
    report: String,
}

fn run_all() -> Run {
    let mut lines = Vec::new();
    let mut report = String::new();
    for c in &CRITERIA {
        let start = Instant::now();
        let finding = (c.run)();
        let elapsed = start.elapsed();
        let _ = writeln!(report, "== {} {}: {}", c.id, c.title, if finding.pass { "pass" } else { "FAIL" });
        report.push_str(&finding.report);
        lines.push((c.id, c.title, finding.pass, elapsed, c.budget));
    }
    Run { lines, report }
}

fn main() -> ExitCode {
    let first = run_all();
    let second = run_all();
    let mut ok = true;
    for &(id, title, pass, elapsed, budget) in &first.lines {
        let in_budget = elapsed <= budget;
        let verdict = pass && in_budget;
        ok &= verdict;
        println!(
            "criterion {id:>2}: {}  {title} ({:.2}s of {}s{})",
            if verdict { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            if in_budget { "" } else { ", over budget" }
        );
    }
    let same = first.report == second.report;
    ok &= same;
    println!(
        "criterion 10: {}  determinism ({} report bytes, {})",
        if same { "PASS" } else { "FAIL" },
        first.report.len(),
        if same { "identical across two runs" } else { "reports differ" }
    );
    if !ok {
        println!("\n{}", first.report);
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
