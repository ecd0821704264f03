//! Renders iterate strip charts as SVG files: one row per depth, one bar
//! per component of the covering.
//!
//! The depth-n covering is the union of [f, f + r_n] over all subsums f of
//! the first n terms; the achievement set is the intersection of all
//! coverings. Watching rows shrink makes the difference between a Cantor
//! set (bars thin out everywhere) and a Cantorval (a fat core persists
//! while the flanks fray) visible at a glance.
//!
//! Output is byte-deterministic, so the files are diff-friendly.
//!
//! Run with: `cargo run --example render_iterates`

use std::fs;

use cantorval::render::{render_iterates, ChartStyle};
use cantorval::series::{MMParams, Tail};
use cantorval::Series;

fn main() {
    let cap = 1 << 20;
    let style = ChartStyle::default();
    let out_dir = std::env::temp_dir().join("cantorval-charts");
    fs::create_dir_all(&out_dir).unwrap();

    let jobs: Vec<(&str, Series, Vec<u64>)> = vec![
        // Cantorval: the central band never fragments.
        ("guthrie_nymann.svg", Series::gn(), vec![0, 2, 4, 6, 8]),
        // Cantor set: every band fragments.
        (
            "paired_quarters.svg",
            Series::paired_quarters(),
            vec![0, 2, 4, 6, 8],
        ),
        // Grouped construction at its natural checkpoints: depths at group
        // ends 3, 8, 15.
        (
            "grouped.svg",
            Series::mm(MMParams::new(vec![1, 3, 5], Tail::Constant(5)).unwrap()),
            vec![0, 3, 8, 15],
        ),
    ];

    for (name, series, depths) in jobs {
        let svg = render_iterates(&series, &depths, cap, &style).unwrap();
        let path = out_dir.join(name);
        fs::write(&path, &svg).unwrap();
        println!(
            "wrote {} ({} bytes, depths {:?})",
            path.display(),
            svg.len(),
            depths
        );
    }

    println!();
    println!("open the files in a browser; hover a bar for its exact endpoints");
}
