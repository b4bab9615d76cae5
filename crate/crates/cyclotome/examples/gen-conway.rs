//! Regenerates src/gf/conway_data.rs: Conway polynomials for all prime
//! powers p^m <= 2^16 with m >= 2, derived from the definition.
//!
//! Usage: cargo run --release -p cyclotome --example gen-conway > conway_data.rs

use cyclotome::gf::conway::{compute_conway_with_subs, conway_poly};
use cyclotome::gf::Poly;

fn main() {
    let bound: u64 = 1 << 16;
    let mut cache: Vec<(u64, u32, Poly)> = Vec::new();
    let mut primes: Vec<u64> = Vec::new();
    for p in 2..=256u64 {
        if cyclotome::factor::is_prime(p) {
            primes.push(p);
        }
    }
    println!("//! Bundled Conway polynomials for all prime powers p^m <= 2^16 with m >= 2.");
    println!("//!");
    println!("//! Coefficients low degree first. Regenerate with");
    println!("//! `cargo run --release -p cyclotome --example gen-conway`.");
    println!();
    println!("pub(crate) static CONWAY_POLYS: &[(u64, u32, &[u64])] = &[");
    for &p in &primes {
        let mut m = 2u32;
        while p.checked_pow(m).map(|o| o <= bound).unwrap_or(false) {
            let subs: Vec<(u32, Poly)> = (1..m)
                .filter(|d| m % d == 0)
                .map(|d| {
                    let f = cache
                        .iter()
                        .find(|(cp, cm, _)| *cp == p && *cm == d)
                        .map(|(_, _, f)| f.clone())
                        .unwrap_or_else(|| conway_poly(p, d).expect("degree-1 default"));
                    (d, f)
                })
                .collect();
            let f = compute_conway_with_subs(p, m, &subs).expect("search succeeds");
            let list: Vec<String> = f.coeffs().iter().map(|c| c.to_string()).collect();
            println!("    ({p}, {m}, &[{}]),", list.join(", "));
            cache.push((p, m, f));
            m += 1;
        }
    }
    println!("];");
}
