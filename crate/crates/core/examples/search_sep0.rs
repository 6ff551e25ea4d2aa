//! Seeded search for a preseparative algebra whose carrier preorder is not
//! transitive, with the unseparable filter/ideal pair it yields.
//!
//! ```text
//! cargo run -p sepalg --example search_sep0 -- 2024
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sepalg::algebra::check_preseparative;
use sepalg::closure::{check_sep0, ClosureCache, Sep0Report};
use sepalg::format::serialize;
use sepalg::sample::random_non_sep0;
use sepalg::separation::{check_sep, enumerate_prime_pairs, sep0_failure_to_sep_failure};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(2024);
    let alg = random_non_sep0(&mut ChaCha8Rng::seed_from_u64(seed))?;
    println!("# seed {seed}");
    print!("{}", serialize(&alg)?);
    println!("# axioms: {:?}", check_preseparative(&alg));
    let cache = ClosureCache::new(&alg);
    let Sep0Report::Fail { a, b, c } = check_sep0(&cache) else {
        return Err("sampler returned a transitive preorder".into());
    };
    let name = |x: usize| alg.carrier().name(x).to_string();
    println!("# preorder: {} <= {} <= {} but not {} <= {}", name(a), name(b), name(c), name(a), name(c));
    let (f0, i0) = sep0_failure_to_sep_failure(&cache, a, b, c)?;
    println!("# unseparable: F0 = {}, I0 = {}", alg.format_set(f0), alg.format_set(i0));
    for pair in enumerate_prime_pairs(&alg) {
        println!(
            "#   prime pair F = {}, I = {}: extends = {}",
            alg.format_set(pair.filter),
            alg.format_set(pair.ideal),
            pair.extends(f0, i0)
        );
    }
    println!("# check_sep: {:?}", check_sep(&alg)?);
    Ok(())
}
