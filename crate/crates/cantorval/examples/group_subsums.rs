//! Shows the closed-form subsum set of one term group and cross-checks it
//! against plain subset enumeration.
//!
//! A group with size parameter `n` consists of the `n + 2` integers
//! `2^(n+1), 2^n + 1, 2^n, 2^(n-1), ..., 2`. Its `2^(n+2)` subset sums are
//! pairwise distinct — no two subsets collide — and arrange into three
//! runs:
//!
//! * even numbers `0, 2, ..., 2^n - 2` (step 2),
//! * every integer `2^n, ..., 4*2^n - 1` (step 1, a solid block),
//! * odd-offset numbers `4*2^n + 1, ..., 5*2^n - 1` (step 2).
//!
//! The solid middle block is what keeps achievement-set components fat; the
//! sparse flanks are what keeps gaps open. Both behaviors survive the
//! infinite construction, which is why the result is a Cantorval.
//!
//! Run with: `cargo run --example group_subsums`

use num::bigint::BigInt;

use cantorval::mm::{group_subsums_closed_form, group_terms};

fn main() {
    for n in 1..=4u32 {
        let spec = group_terms(n).unwrap();
        let closed = group_subsums_closed_form(n).unwrap();

        // Brute force over all subsets.
        let mut brute = vec![BigInt::from(0)];
        for t in &spec.terms {
            let shifted: Vec<BigInt> = brute.iter().map(|v| v + t).collect();
            brute.extend(shifted);
        }
        brute.sort();
        brute.dedup();
        assert_eq!(closed, brute, "closed form must equal enumeration");

        println!("group n = {n}: terms {:?}", spec.terms);
        println!(
            "  all {} subset sums distinct (uniqueness of the group terms)",
            closed.len()
        );
        if n <= 2 {
            println!("  values: {closed:?}");
        } else {
            let low = 1usize << (n as usize - 1);
            println!(
                "  flanks: {:?}... and ...{:?} (step 2)",
                &closed[..3.min(low)],
                &closed[closed.len() - 3..]
            );
            println!(
                "  solid block: {}..={} (step 1)",
                closed[low],
                closed[low + (3usize << n as usize) - 1]
            );
        }
        println!();
    }

    println!("the same shape holds for every n; the library checks n up to 12 in its tests");
}
