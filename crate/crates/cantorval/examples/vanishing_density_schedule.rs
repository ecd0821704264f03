//! Builds a grouped series whose reversed-condition indices become as rare
//! as you like — their count, divided by any prescribed normalizer that
//! grows to infinity, tends to zero — while the achievement set stays a
//! Cantorval.
//!
//! The construction packs terms into groups ending at indices N_1 < N_2 <
//! ...; inside group k only the two leading indices N_(k-1)+1, N_(k-1)+2
//! are reversed. Choosing the group ends so that the normalizer has
//! already reached (k+1)^2 by the end of group k forces the running ratio
//! below 2k/k^2 = 2/k.
//!
//! Run with: `cargo run --example vanishing_density_schedule`

use cantorval::kakeya::{choose_schedule, kakeya_profile, normalized_kc_trace};
use cantorval::Series;

fn main() {
    // Normalizer m_n = n: plain asymptotic density.
    let m = |n: u64| n;
    let k_max = 10;
    let params = choose_schedule(&m, k_max, 10_000).expect("normalizer reaches every square");

    println!("minimal schedule for m_n = n (smallest group ends, sizes >= 1):");
    println!("  k   n_k   N_k");
    for k in 1..=k_max {
        println!(
            "  {k:<3} {:<5} {}",
            params.group_size(k),
            params.group_end(k)
        );
    }
    println!();

    // The reversed indices really are just the two leaders of each group.
    let series = Series::mm(params.clone());
    let horizon = params.group_end(4);
    let profile = kakeya_profile(&series, horizon, 16).unwrap();
    println!(
        "reversed indices up to N_4 = {horizon}: {:?}",
        profile.kc_indices()
    );
    println!();

    // Ratio of reversed count to the normalizer, sampled at group ends:
    // always below the group bound 2/k, and sinking toward zero.
    let ends: Vec<u64> = (1..=k_max).map(|k| params.group_end(k)).collect();
    let trace = normalized_kc_trace(&params, &m, &ends, 16).unwrap();
    println!("  n      reversed   ratio       bound 2/k");
    for p in &trace {
        println!(
            "  {:<6} {:<10} {:<11} {}",
            p.n,
            p.kc_count,
            p.ratio.to_string(),
            p.bound
        );
        assert!(p.ratio <= p.bound);
    }
    println!();
    println!(
        "the ratio at N_{k_max} is {}, under a bound that behaves like 2/k",
        trace.last().unwrap().ratio
    );
}
