//! Collects finite-depth classification evidence for several series and
//! prints the verdicts with their supporting traces.
//!
//! The classifier watches two quantities along the iterates:
//!
//! * the first certified gap — once the depth-n covering of the
//!   achievement set is disconnected, it stays disconnected;
//! * the stretch trace — the widest block of subsums at the scale of the
//!   remaining tail; a positive floor means interval mass survives, decay
//!   to zero is Cantor-like behavior.
//!
//! A gap plus a positive stretch floor is Cantorval-consistent evidence; a
//! gap plus vanishing stretch is Cantor-consistent. Only descriptors that
//! prove "finitely many Kakeya indices" in closed form earn the certified
//! multi-interval verdict — a finite scan alone never certifies a limit.
//!
//! Run with: `cargo run --example classify_series`

use cantorval::subsums::classify_evidence;
use cantorval::{Rational, Series};

fn show(name: &str, s: &Series, depth: u64) {
    let ev = classify_evidence(s, depth, 1 << 20).expect("depth within cap");
    println!("{name} (depth {depth})");
    println!("  verdict: {:?}", ev.verdict);
    if let Some(w) = &ev.gap_witness {
        println!(
            "  first gap: ({}, {}) certified at depth {}",
            w.gap.left(),
            w.gap.right(),
            w.depth
        );
    }
    if let (Some(first), Some(last)) = (ev.delta_trace.first(), ev.delta_trace.last()) {
        println!(
            "  stretch trace: {} at depth {} -> {} at depth {}",
            first.value, first.n, last.value, last.n
        );
    }
    if let Some(floor) = &ev.delta_lower_constant {
        println!("  observed stretch floor: {floor}");
    }
    println!();
}

fn main() {
    // Cantorval: gaps open, yet the stretch floor stays at 1/4.
    show("guthrie-nymann", &Series::gn(), 12);

    // Cantor set: gaps open and the stretch decays geometrically.
    show("paired-quarters", &Series::paired_quarters(), 12);

    // Cantorval again, built from decimal blocks.
    show("weinstein-shapiro", &Series::ws(), 10);

    // Geometric with ratio >= 1/2: no index satisfies the Kakeya
    // condition, which the descriptor proves outright, so the full
    // interval verdict is certified rather than merely consistent.
    let fat = Series::geometric(Rational::new(2, 3).unwrap(), Rational::new(2, 3).unwrap()).unwrap();
    show("geometric ratio 2/3", &fat, 10);

    // A decreasing head spliced onto such a tail keeps the certificate:
    // only finitely many indices can open gaps.
    let spliced = Series::finite_plus_geometric(
        vec![
            Rational::int(8),
            Rational::int(4),
            Rational::int(2),
        ],
        Rational::new(1, 2).unwrap(),
        Rational::new(1, 2).unwrap(),
    )
    .unwrap();
    show("head 8,4,2 + geometric tail", &spliced, 10);
}
