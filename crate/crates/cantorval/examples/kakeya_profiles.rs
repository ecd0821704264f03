//! Tags the built-in series by the Kakeya condition and prints the
//! resulting index patterns with the density of the reversed set.
//!
//! Index `n` satisfies the Kakeya condition when its term exceeds the rest
//! of the series: `a_n > r_n` with `r_n = a_(n+1) + a_(n+2) + ...`.
//! Where the condition holds the achievement set can open gaps; where it
//! fails, overlaps glue subsums together. The three classic series show
//! three stable patterns.
//!
//! Run with: `cargo run --example kakeya_profiles`

use cantorval::kakeya::{density, kakeya_profile};
use cantorval::Series;

fn show(name: &str, s: &Series, horizon: u64) {
    let profile = kakeya_profile(s, horizon, 16).expect("exact remainders decide every index");
    let k = profile.k_indices();
    let preview: Vec<String> = k.iter().take(8).map(u64::to_string).collect();
    println!("{name}");
    println!("  terms 1..6: {}", terms_preview(s, 6));
    println!(
        "  Kakeya indices up to {horizon}: {}{} ({} of {horizon})",
        preview.join(", "),
        if k.len() > 8 { ", ..." } else { "" },
        k.len()
    );
    let dens = density(&|i| profile.is_kc(i), None, horizon, horizon / 4)
        .expect("nonempty reference range");
    println!(
        "  reversed-set density: {} at the horizon (sampled min {}, max {})",
        dens.ratio_at_horizon, dens.min_ratio, dens.max_ratio
    );
    println!();
}

fn terms_preview(s: &Series, n: u64) -> String {
    (1..=n)
        .map(|i| s.term(i).to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn main() {
    let horizon = 40;

    // Alternating 3/4^n, 2/4^n: the condition holds exactly at the even
    // indices, so half of all indices are reversed. Its achievement set is
    // the classic Cantorval.
    show("guthrie-nymann", &Series::gn(), horizon);

    // Five terms per decimal block: the condition holds exactly at the
    // multiples of 5, so four fifths of all indices are reversed. The
    // achievement set is again a Cantorval.
    show("weinstein-shapiro", &Series::ws(), horizon);

    // Paired powers of four, each value twice: the condition holds at the
    // even indices; the achievement set is a Cantor set. Same density as
    // the first series, different topology: the pattern alone does not
    // decide the shape.
    show("paired-quarters", &Series::paired_quarters(), horizon);

    // A geometric series with ratio 1/2 sits exactly on the edge: every
    // comparison is a tie (a_n = r_n), every index is reversed, and the
    // achievement set is a full interval.
    let edge = Series::geometric(
        "1/2".parse().unwrap(),
        "1/2".parse().unwrap(),
    )
    .unwrap();
    show("geometric ratio 1/2", &edge, horizon);
}
