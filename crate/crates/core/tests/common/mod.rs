#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sepalg::algebra::check_preseparative;
use sepalg::closure::{check_sep0, ClosureCache};
use sepalg::representation::{spectrum_of, Variant};
use sepalg::spectrum::BitopSpace;
use sepalg::{fixtures, sample, Algebra, Error};

pub const SEED: u64 = 20240611;

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

/// Spectrum variants that make sense for `alg`: proper ones need designated
/// points, single-valued ones need single-valued tables.
pub fn variants_for(alg: &Algebra) -> Vec<Variant> {
    Variant::ALL
        .into_iter()
        .filter(|v| !v.proper() || alg.carrier().designated().is_some())
        .filter(|v| !v.single_valued() || alg.is_single_valued())
        .collect()
}

pub fn is_separative(alg: &Algebra) -> bool {
    check_preseparative(alg).passed() && check_sep0(&ClosureCache::new(alg)).passed()
}

/// The named corpus plus the single-valued lattice algebras.
pub fn all_fixtures() -> Vec<(String, Algebra)> {
    let mut out = fixtures::corpus();
    out.extend(fixtures::single_valued_corpus());
    out
}

pub fn random_corpus(count: usize, salt: u64) -> Vec<Algebra> {
    sample::preseparative_corpus(&mut rng(salt), count).expect("corpus")
}

/// Every applicable spectrum of `alg`. Multivalued spectra of single-valued
/// tables may exceed the topology cap; those are required to fail with a
/// capacity error and are left out.
pub fn spectra_of(alg: &Algebra) -> Vec<(Variant, BitopSpace)> {
    let mut out = Vec::new();
    for v in variants_for(alg) {
        match spectrum_of(alg, v) {
            Ok(s) => out.push((v, s)),
            Err(Error::Capacity { .. }) if alg.is_single_valued() && !v.single_valued() => {}
            Err(e) => panic!("{}: {e}", v.label()),
        }
    }
    out
}
