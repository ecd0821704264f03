//! First steps: builds subsum sets by hand, watches the iterates close in
//! on the achievement set, and measures what survives.
//!
//! The achievement set E of a positive convergent series is the set of all
//! its subsums: every value sum(a_n for n in A) over every subset A. It is
//! approached from outside by iterates — at depth n, take every subsum f
//! of the first n terms and cover it with [f, f + r_n], where r_n is the
//! sum of everything after index n.
//!
//! Run with: `cargo run --example achievement_sets`

use cantorval::subsums::{initial_subsums, iterate};
use cantorval::{Rational, Series};

fn main() {
    let cap = 1 << 16;

    // A geometric series with ratio 1/3 achieves the classic middle-thirds
    // Cantor set scaled to [0, 1/2]... times its first term. Watch the
    // subsum counts double and the covering measure die off by 2/3 steps.
    let cantor = Series::geometric(Rational::new(1, 3).unwrap(), Rational::new(1, 3).unwrap())
        .unwrap();
    println!("geometric ratio 1/3 (middle-thirds Cantor set, scaled):");
    for n in 0..=5 {
        let f = initial_subsums(&cantor, n, cap).unwrap();
        let cover = iterate(&cantor, n, cap).unwrap();
        println!(
            "  depth {n}: {:>3} subsums, {:>3} components, covering measure {}",
            f.len(),
            cover.len(),
            cover.measure()
        );
    }
    println!();

    // The alternating series 3/4, 2/4, 3/16, 2/16, ... sums to 5/3. Its
    // depth-2 subsums {0, 1/2, 3/4, 5/4} sit so that consecutive coverings
    // overlap in the middle but not at the flanks — the signature mix.
    let gn = Series::gn();
    println!("alternating 3/4^n, 2/4^n (sum 5/3):");
    let f2 = initial_subsums(&gn, 2, cap).unwrap();
    println!(
        "  depth-2 subsums: {}",
        f2.values()
            .iter()
            .map(Rational::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    );
    for n in [2, 4, 8, 12] {
        let cover = iterate(&gn, n, cap).unwrap();
        println!(
            "  depth {n:>2}: {:>4} components, measure {} (longest {})",
            cover.len(),
            cover.measure(),
            cover.norm().unwrap()
        );
    }
    println!();
    println!(
        "the covering measure of the alternating series converges to a positive\n\
         value while components keep splitting at the flanks: interval mass and\n\
         Cantor dust coexist, which is exactly what makes it a Cantorval"
    );
}
