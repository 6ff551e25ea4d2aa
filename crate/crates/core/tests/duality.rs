mod common;

use proptest::prelude::*;
use rand::Rng;
use sepalg::duality::{
    bitop_morphisms, coherent_map_action, coherent_shortcut_agrees, functor_f, functor_g, is_coherent, ko_lattice,
    lattice_hom_action, natural_isos, phi_lattice, roundtrip_coherent, roundtrip_space, stone_spec, CoherentSpace,
};
use sepalg::lattice::{enumerate_homs, LATTICE_CAP};
use sepalg::report::all_hold;
use sepalg::sample::{random_t0_topology, random_topology};
use sepalg::topology::{is_continuous, FiniteTopology};
use sepalg::{fixtures, Error, FiniteDistLattice, LatticeHom};

fn continuous_maps(x: &FiniteTopology, y: &FiniteTopology) -> Vec<Vec<usize>> {
    let (n, m) = (x.point_count(), y.point_count());
    let mut out = Vec::new();
    let total = m.pow(n as u32);
    for code in 0..total {
        let f: Vec<usize> = (0..n).map(|i| code / m.pow(i as u32) % m).collect();
        if is_continuous(&f, x, y) {
            out.push(f);
        }
    }
    out
}

#[test]
fn stone_round_trip_on_fixture_lattices() {
    for (name, l) in fixtures::lattice_corpus() {
        let phi = phi_lattice(&l).unwrap();
        assert!(phi.is_bijective(), "{name}");
        let (coh, _) = stone_spec(&l).unwrap();
        assert!(all_hold(&is_coherent(coh.topology())), "{name}");
        let isos = natural_isos(&coh, &l).unwrap();
        assert!(isos.passed(), "{name}: {:?}", isos.clauses);
        assert_eq!(ko_lattice(&coh).unwrap().size(), l.size(), "{name}");
    }
}

#[test]
fn psi_is_a_homeomorphism_on_fixture_spectra() {
    let mut checked = 0;
    for (name, alg) in common::all_fixtures() {
        for (variant, space) in common::spectra_of(&alg) {
            let coh = functor_f(&space).unwrap();
            assert!(roundtrip_space(&space).unwrap(), "{name} {}", variant.label());
            assert!(roundtrip_coherent(&coh).unwrap(), "{name} {}", variant.label());
            if coh.topology().opens().len() > LATTICE_CAP {
                assert!(matches!(ko_lattice(&coh), Err(Error::Capacity { .. })));
                continue;
            }
            checked += 1;
            let l = ko_lattice(&coh).unwrap();
            let isos = natural_isos(&coh, &l).unwrap();
            assert!(isos.passed(), "{name} {}: {:?}", variant.label(), isos.clauses);
        }
    }
    assert!(checked > 60, "{checked}");
}

#[test]
fn coherent_shortcut_on_random_topologies() {
    let mut rng = common::rng(11);
    let mut t0 = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=6);
        let top = random_topology(&mut rng, n);
        t0 += usize::from(top.is_t0());
        assert!(coherent_shortcut_agrees(&top), "{top:?}");
    }
    assert!(t0 > 100 && t0 < 900, "{t0} of 1000 topologies are T0");
}

#[test]
fn category_round_trips_on_random_coherent_spaces() {
    let mut rng = common::rng(12);
    for _ in 0..500 {
        let n = rng.gen_range(1..=6);
        let coh = CoherentSpace::new(random_t0_topology(&mut rng, n)).unwrap();
        assert!(roundtrip_coherent(&coh).unwrap());
        assert!(roundtrip_space(&functor_g(&coh).unwrap()).unwrap());
    }
}

#[test]
fn ko_action_is_contravariant() {
    let mut rng = common::rng(13);
    for _ in 0..40 {
        let spaces: Vec<CoherentSpace> = (0..3)
            .map(|_| {
                let n = rng.gen_range(1..=3);
                CoherentSpace::new(random_t0_topology(&mut rng, n)).unwrap()
            })
            .collect();
        let (x, y, z) = (&spaces[0], &spaces[1], &spaces[2]);
        let fs = continuous_maps(x.topology(), y.topology());
        let gs = continuous_maps(y.topology(), z.topology());
        for f in fs.iter().take(4) {
            for g in gs.iter().take(4) {
                let gf: Vec<usize> = f.iter().map(|&p| g[p]).collect();
                let composite = coherent_map_action(&gf, x, z).unwrap();
                let ff = coherent_map_action(f, x, y).unwrap();
                let fg = coherent_map_action(g, y, z).unwrap();
                assert_eq!(composite, fg.then(&ff).unwrap());
            }
        }
        let id: Vec<usize> = (0..x.point_count()).collect();
        assert_eq!(coherent_map_action(&id, x, x).unwrap(), LatticeHom::identity(&ko_lattice(x).unwrap()));
    }
}

#[test]
fn spectrum_action_is_contravariant() {
    let lattices: Vec<FiniteDistLattice> = [
        FiniteDistLattice::chain(2),
        FiniteDistLattice::chain(3),
        FiniteDistLattice::chain(4),
        FiniteDistLattice::powerset(2),
        FiniteDistLattice::divisors(12),
    ]
    .into_iter()
    .map(Result::unwrap)
    .collect();
    let mut checked = 0;
    for a in &lattices {
        for b in &lattices {
            for c in &lattices {
                for h1 in enumerate_homs(a, b).into_iter().take(3) {
                    for h2 in enumerate_homs(b, c).into_iter().take(3) {
                        let h1 = LatticeHom::new(a.clone(), b.clone(), h1.clone()).unwrap();
                        let h2 = LatticeHom::new(b.clone(), c.clone(), h2).unwrap();
                        let composite = lattice_hom_action(&h1.then(&h2).unwrap()).unwrap();
                        let (g1, g2) = (lattice_hom_action(&h1).unwrap(), lattice_hom_action(&h2).unwrap());
                        let expected: Vec<usize> = g2.iter().map(|&q| g1[q]).collect();
                        assert_eq!(composite, expected);
                        checked += 1;
                    }
                }
            }
        }
        let id = lattice_hom_action(&LatticeHom::identity(a)).unwrap();
        assert_eq!(id, (0..id.len()).collect::<Vec<_>>());
    }
    assert!(checked > 50, "{checked}");
}

#[test]
fn spectrum_morphisms_are_coherent_maps() {
    let spaces: Vec<_> = ["lattice chain 3", "lattice powerset 2", "ring 6", "ring 4"]
        .iter()
        .map(|want| {
            let (_, alg) = fixtures::corpus().into_iter().find(|(n, _)| n == want).unwrap();
            sepalg::spectrum::build_spectrum(&alg, true).unwrap()
        })
        .collect();
    for a in &spaces {
        for b in &spaces {
            for f in bitop_morphisms(a, b) {
                let (ca, cb) = (functor_f(a).unwrap(), functor_f(b).unwrap());
                // A bitop morphism is in particular a coherent map of the T⁺ parts.
                assert!(coherent_map_action(&f, &ca, &cb).is_ok());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn non_t0_topologies_are_not_coherent(seed in any::<u64>(), n in 2usize..=5) {
        use rand::SeedableRng;
        let top = random_topology(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed), n);
        prop_assert_eq!(all_hold(&is_coherent(&top)), top.is_t0());
        prop_assert_eq!(CoherentSpace::new(top.clone()).is_ok(), top.is_t0());
    }
}
