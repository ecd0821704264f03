//! Deterministic SVG strip charts of finite iterates.
//!
//! Each requested depth becomes one horizontal row; the components of the
//! iterate at that depth are filled bars and its gaps stay blank. The
//! x-axis maps `[0, r_0]` onto a fixed pixel width. All geometry is
//! computed in exact rationals and converted to decimal strings only when
//! writing the SVG, so output is byte-identical across runs.

use crate::error::Result;
use crate::numeric::Rational;
use crate::series::Series;
use crate::subsums::iterate;

/// Pixel geometry and colors of the strip chart.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartStyle {
    /// Width of the plot area in pixels.
    pub width: u32,
    /// Height of one row.
    pub row_height: u32,
    /// Vertical space between rows.
    pub row_gap: u32,
    /// Margin around the plot area (also hosts the row labels).
    pub margin: u32,
    /// Fill color of the component bars.
    pub bar_fill: String,
    /// Color of the row labels.
    pub label_fill: String,
}

impl Default for ChartStyle {
    fn default() -> Self {
        ChartStyle {
            width: 800,
            row_height: 26,
            row_gap: 8,
            margin: 12,
            bar_fill: "#2b6cb0".into(),
            label_fill: "#444444".into(),
        }
    }
}

/// Renders the iterates of `s` at the given depths as an SVG strip chart.
/// Depths are drawn in the order given, one row each. Requires exact
/// remainders (the chart draws exact component boundaries).
pub fn render_iterates(
    s: &Series,
    depths: &[u64],
    cap: usize,
    style: &ChartStyle,
) -> Result<String> {
    assert!(!depths.is_empty(), "need at least one depth");
    let r0 = s.remainder_exact(0)?;
    let label_w = 56u32;
    let total_w = style.margin * 2 + label_w + style.width;
    let rows = depths.len() as u32;
    let total_h = style.margin * 2 + rows * style.row_height + (rows - 1) * style.row_gap;

    let x_of = |v: &Rational| -> String {
        let frac = v / &r0;
        let x = Rational::from(style.margin + label_w) + Rational::from(style.width) * frac;
        x.to_decimal(4)
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {total_w} {total_h}\" \
         width=\"{total_w}\" height=\"{total_h}\">\n"
    ));
    for (row, &n) in depths.iter().enumerate() {
        let union = iterate(s, n, cap)?;
        let y = style.margin + row as u32 * (style.row_height + style.row_gap);
        let label_y = y + style.row_height / 2 + 4;
        svg.push_str(&format!(
            "  <text x=\"{}\" y=\"{label_y}\" font-family=\"monospace\" font-size=\"13\" \
             fill=\"{}\">n={n}</text>\n",
            style.margin, style.label_fill
        ));
        for c in union.components() {
            let x = x_of(c.left());
            let right = x_of(c.right());
            // Width in pixels, exact difference before decimal conversion.
            let w = (Rational::from(style.width) * &(c.length() / &r0)).to_decimal(4);
            svg.push_str(&format!(
                "  <rect x=\"{x}\" y=\"{y}\" width=\"{w}\" height=\"{}\" fill=\"{}\">\
                 <title>[{}, {}] at x={right}</title></rect>\n",
                style.row_height,
                style.bar_fill,
                c.left(),
                c.right()
            ));
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::series::{MMParams, Tail};

    const CAP: usize = 1 << 22;

    #[test]
    fn gn_strip_chart_row_structure() {
        let svg = render_iterates(&Series::gn(), &[0, 2, 4], CAP, &ChartStyle::default()).unwrap();
        assert_eq!(svg.matches("<rect").count(), 1 + 3 + 9);
        assert_eq!(svg.matches("<text").count(), 3);
        assert!(svg.contains("n=0"));
        // Row 0 is a single full-width bar: [0, r_0] maps onto the whole
        // 800-pixel plot area.
        assert!(svg.contains("width=\"800\""));
        assert!(svg.starts_with("<svg xmlns"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn output_is_deterministic() {
        let a = render_iterates(&Series::ws(), &[0, 5, 10], CAP, &ChartStyle::default()).unwrap();
        let b = render_iterates(&Series::ws(), &[0, 5, 10], CAP, &ChartStyle::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn exactness_required() {
        let s = Series::mm(MMParams::new(vec![1], Tail::Arithmetic { step: 2 }).unwrap());
        assert!(matches!(
            render_iterates(&s, &[0, 3], CAP, &ChartStyle::default()),
            Err(Error::ExactnessRequired)
        ));
    }
}
