mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sepalg::duality::stone_spec;
use sepalg::spectrum::{
    build_lspectrum, build_spectrum, check_spectrum_axioms, join_and_stone, specialization_and_extremes,
};
use sepalg::topology::generate_topology;
use sepalg::{fixtures, sample, ElemSet, PointSet};

fn primes_dividing(n: usize) -> Vec<usize> {
    (2..=n).filter(|&p| n % p == 0 && (2..p).all(|d| p % d != 0)).collect()
}

#[test]
fn fixture_spectra_satisfy_the_axioms() {
    for (name, alg) in common::all_fixtures() {
        for (variant, space) in common::spectra_of(&alg) {
            let report = check_spectrum_axioms(&space);
            assert!(report.passed(), "{name} {}: {report:?}", variant.label());
            let spec = specialization_and_extremes(&space).unwrap();
            assert!(spec.passed(), "{name} {}: {:?}", variant.label(), spec.clauses);
            assert!(join_and_stone(&space).unwrap().consistent(), "{name} {}", variant.label());
        }
    }
}

#[test]
fn random_preseparative_spectra_satisfy_the_axioms() {
    for (k, alg) in common::random_corpus(200, 3).iter().enumerate() {
        for (variant, space) in common::spectra_of(alg) {
            let report = check_spectrum_axioms(&space);
            assert!(report.passed(), "#{k} {}: {report:?}", variant.label());
            assert!(specialization_and_extremes(&space).unwrap().passed(), "#{k} {}", variant.label());
        }
    }
}

#[test]
fn zariski_points_are_prime_divisors() {
    for n in 2..=60 {
        let space = build_spectrum(&fixtures::ring(n).unwrap(), true).unwrap();
        let primes = primes_dividing(n);
        let expected: Vec<ElemSet> = primes.iter().map(|&p| (0..n).filter(|x| x % p == 0).collect()).collect();
        let mut got = space.ideals().unwrap();
        got.sort();
        let mut want = expected.clone();
        want.sort();
        assert_eq!(got, want, "Z_{n}");

        // U_a = {p : p does not divide a} generate the Zariski topology.
        let index = |p: usize| space.index_of_ideal(expected[primes.iter().position(|&q| q == p).unwrap()]).unwrap();
        let subbase: Vec<PointSet> = (0..n)
            .map(|a| primes.iter().filter(|&&p| a % p != 0).map(|&p| index(p)).collect())
            .collect();
        let zariski = generate_topology(space.point_count(), &subbase).unwrap();
        assert_eq!(space.tplus(), &zariski, "Z_{n}");
        let square_free = primes.iter().product::<usize>() == n;
        if square_free {
            assert_eq!(space.tplus().opens().len(), 1 << primes.len(), "Z_{n} should be discrete");
        }
    }
}

#[test]
fn lattice_spectra_agree_with_stone() {
    for (name, l) in fixtures::lattice_corpus() {
        let multi = build_spectrum(&fixtures::lattice_algebra(&l).unwrap(), true).unwrap();
        let single = build_lspectrum(&fixtures::lattice_algebra_single(&l).unwrap(), true).unwrap();
        let (stone, points) = stone_spec(&l).unwrap();
        assert_eq!(multi.ideals().unwrap(), points, "{name}");
        assert_eq!(single.ideals().unwrap(), points, "{name}");
        assert_eq!(multi.tplus(), single.tplus(), "{name}");
        assert_eq!(multi.tplus(), stone.topology(), "{name}");
    }
}

#[test]
fn spectra_of_named_examples() {
    let z6 = build_spectrum(&fixtures::ring(6).unwrap(), true).unwrap();
    assert_eq!(z6.point_count(), 2);
    assert!(z6.tplus().is_t2());
    let z4 = build_spectrum(&fixtures::ring(4).unwrap(), true).unwrap();
    assert_eq!(z4.ideals().unwrap(), [ElemSet::from_bits(0b0101)]);
    let c3 = build_spectrum(&fixtures::chain_lattice(3).unwrap(), true).unwrap();
    let spec = specialization_and_extremes(&c3).unwrap();
    assert_eq!(c3.point_count(), 2);
    assert_eq!(spec.max.len() + spec.min.len(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unconstrained_tables_give_spectra(seed in any::<u64>(), n in 1usize..=4) {
        let alg = sample::random_algebra(&mut ChaCha8Rng::seed_from_u64(seed), n);
        for proper in [false, true] {
            if proper && alg.carrier().designated().is_none() {
                continue;
            }
            let space = build_spectrum(&alg, proper).unwrap();
            let report = check_spectrum_axioms(&space);
            prop_assert!(report.passed(), "{:?}", report);
        }
    }

    #[test]
    fn single_valued_tables_give_lspectra(seed in any::<u64>(), n in 2usize..=4) {
        let alg = sample::random_single_valued(&mut ChaCha8Rng::seed_from_u64(seed), n);
        for proper in [false, true] {
            let space = build_lspectrum(&alg, proper).unwrap();
            let report = check_spectrum_axioms(&space);
            prop_assert!(report.passed(), "{:?}", report);
        }
    }
}
