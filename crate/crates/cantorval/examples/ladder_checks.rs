//! Materializes the arithmetic-progression ladder inside a grouped series
//! and runs its structural checks: the machinery that proves the
//! achievement set contains whole intervals.
//!
//! For each level k the set C_k = { p * q_k : 2^(n_k) <= p < 4 * 2^(n_k) }
//! collects the solid middle block of group k's subsums, and D_k = C_1 +
//! ... + C_k stacks them. Three facts are verified exactly on the
//! materialized sets:
//!
//! * alpha — every ladder value is a genuine initial subsum,
//! * beta  — consecutive ladder values differ by at most q_k,
//! * gamma — the ladder spans from sum(2^(n_i) q_i) to
//!   sum((4*2^(n_i) - 1) q_i).
//!
//! Because the spacing q_k is finer than the remainder after N_k terms,
//! the stretch of the subsum set at scale r_(N_k) is bounded below by the
//! ladder span, which grows without bound — so components of the
//! achievement set cannot all be points.
//!
//! Run with: `cargo run --example ladder_checks`

use cantorval::mm::{
    build_ladder, delta_lower_bound, remainder_bracket, verify_ladder_alpha,
};
use cantorval::series::{MMParams, Series, Tail};
use cantorval::subsums::{delta, initial_subsums};

fn main() {
    let params = MMParams::new(vec![1, 3, 5], Tail::Constant(5)).unwrap();
    let series = Series::mm(params.clone());
    let cap = 1 << 20;

    for k in 1..=3 {
        let ladder = build_ladder(&params, k, cap).expect("beta and gamma verified on build");
        verify_ladder_alpha(&ladder, &params, cap).expect("alpha: values are initial subsums");
        let span = ladder.values.last().unwrap() - &ladder.values[0];
        println!(
            "level {k}: {} values, spacing <= q_{k} = {}, span {}",
            ladder.values.len(),
            params.q(k),
            span
        );

        // The remainder after group k fits strictly between q_k and 2 q_k,
        // so translating by it can never jump across the ladder spacing.
        let bracket = remainder_bracket(&params, k, 16).unwrap();
        println!(
            "         remainder bracket: {} < {} < {}",
            bracket.lower,
            bracket.remainder.lo(),
            bracket.upper
        );
    }
    println!();

    // The stretch floor at the first level, fully materialized: among the
    // subsums of the first three terms (4, 3, 2, since q_1 = 1), the
    // largest block at scale r_3 stretches over exactly 5.
    let f = initial_subsums(&series, params.group_end(1), cap).unwrap();
    let eps = series.remainder_exact(params.group_end(1)).unwrap();
    let stretch = delta(f.values(), &eps).unwrap();
    println!(
        "stretch of the depth-3 subsums at scale {} is {}, matching the floor {}",
        eps,
        stretch,
        delta_lower_bound(&params, 1)
    );
    println!(
        "floors per level: {}",
        (1..=4)
            .map(|k| delta_lower_bound(&params, k).to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
}
