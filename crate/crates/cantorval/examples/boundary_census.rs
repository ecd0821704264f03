//! Counts gaps and components of the grouped construction level by level,
//! then accounts for the full measure of the achievement set two
//! independent ways — the difference, the measure of the boundary, comes
//! out exactly zero.
//!
//! Passing from level k-1 to level k splits every component of the
//! covering into 2^(n_k) + 1 children, opening 2^(n_k) equal gaps of
//! length 2 q_k - r_(N_k) in each. The census tracks those counts in
//! closed form and re-derives them from materialized coverings while the
//! enumeration stays affordable.
//!
//! Grading the component intervals of the achievement set by the level at
//! which their center first appears yields the eta classes; summing
//! count x length over all classes recovers the measure computed by gap
//! removal. Equality of the two routes is exactly the statement that the
//! boundary carries no measure.
//!
//! Run with: `cargo run --example boundary_census`

use cantorval::boundary::{
    boundary_measure, boundary_residual, eta_classes, eta_total_measure, level_census, measure_e,
    measure_e_truncated, residual_trace, telescoping_check,
};
use cantorval::series::{MMParams, Tail};

fn main() {
    let params = MMParams::new(vec![1, 3, 5], Tail::Constant(5)).unwrap();
    let cap = 1 << 20;

    println!("census per level (group sizes 1, 3, 5, then 5 forever):");
    println!("  k   new gaps   gap length   components   new length");
    for k in 1..=3 {
        let c = level_census(&params, k, cap).unwrap();
        assert!(c.cross_checked);
        println!(
            "  {k:<3} {:<10} {:<12} {:<12} {}",
            c.gap_count.to_string(),
            c.gap_length.to_string(),
            c.comp_count.to_string(),
            c.new_comp_length
        );
    }
    println!();

    println!("covering measure as levels deepen:");
    for k in 0..=3 {
        println!(
            "  after level {k}: {}",
            measure_e_truncated(&params, k, cap).unwrap()
        );
    }
    println!();

    println!("component classes by first-appearance level:");
    println!("  eta  count   length");
    for class in eta_classes(&params, 3).unwrap() {
        println!(
            "  {:<4} {:<7} {}",
            class.eta,
            class.count.to_string(),
            class.length
        );
    }
    println!();

    let total = measure_e(&params).unwrap();
    let by_classes = eta_total_measure(&params).unwrap();
    let boundary = boundary_measure(&params).unwrap();
    println!("measure by gap removal:      {total}");
    println!("measure by component classes: {by_classes}");
    println!("boundary measure:             {boundary}");
    assert!(boundary.is_zero());
    println!();

    // The counting identity that collapses the accounting, checked deep.
    for k in 2..=60 {
        assert!(telescoping_check(&params, k).unwrap());
    }
    println!("counting identity verified for levels 2..60");
    println!();

    // How fast the unaccounted remainder dies: the residual after level k
    // shrinks by a fixed factor per level once the group sizes stabilize.
    let trace = residual_trace(&params, 6).unwrap();
    println!("residual measure not yet attributed to any class:");
    for (k, v) in &trace {
        println!("  after level {k}: {v}");
    }
    let ratio = boundary_residual(&params, 6).unwrap() / boundary_residual(&params, 1).unwrap();
    println!("residual(6)/residual(1) = {ratio} — below 1/100, and still shrinking");
}
