//! Self-contained SVG heatmaps for comparison matrices.
//!
//! Three color bands at the 0.3 and 0.6 thresholds (0.3 and 0.6 themselves
//! fall upward into the middle and high band), values printed in each cell,
//! undefined cells hatched.

use crate::matrix::ComparisonMatrix;

/// Colors for the three value bands.
#[derive(Debug, Clone)]
pub struct BandPalette {
    pub low: String,
    pub mid: String,
    pub high: String,
}

impl Default for BandPalette {
    fn default() -> Self {
        BandPalette {
            low: "#5b2a86".to_string(),
            mid: "#d6409f".to_string(),
            high: "#f9c8e0".to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Band {
    Low,
    Mid,
    High,
}

/// Band assignment; boundaries go to the upper band.
pub fn band(value: f64) -> Band {
    if value < 0.3 {
        Band::Low
    } else if value < 0.6 {
        Band::Mid
    } else {
        Band::High
    }
}

impl BandPalette {
    fn fill(&self, b: Band) -> &str {
        match b {
            Band::Low => &self.low,
            Band::Mid => &self.mid,
            Band::High => &self.high,
        }
    }

    fn text_color(b: Band) -> &'static str {
        match b {
            Band::Low | Band::Mid => "#ffffff",
            Band::High => "#3b3b3b",
        }
    }
}

const CELL_W: usize = 92;
const CELL_H: usize = 64;
const LEFT: usize = 86;
const TOP: usize = 76;
const PAD: usize = 16;

/// Render a 5x5 matrix as a standalone SVG document.
pub fn emit_heatmap_svg(matrix: &ComparisonMatrix, palette: &BandPalette) -> String {
    let width = LEFT + 5 * CELL_W + PAD;
    let height = TOP + 5 * CELL_H + PAD;
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\" font-family=\"DejaVu Sans, Helvetica, sans-serif\">\n"
    ));
    svg.push_str(
        "  <defs>\n    <pattern id=\"undefined-hatch\" width=\"8\" height=\"8\" \
         patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">\n      \
         <rect width=\"8\" height=\"8\" fill=\"#f2f2f2\"/>\n      \
         <line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"8\" stroke=\"#9a9a9a\" stroke-width=\"3\"/>\n    \
         </pattern>\n  </defs>\n",
    );
    svg.push_str(&format!(
        "  <rect width=\"{width}\" height=\"{height}\" fill=\"#ffffff\"/>\n"
    ));
    let mut title = matrix.kind.id().to_string();
    if let Some((_, p)) = matrix.parameters.iter().find(|(k, _)| k == "p") {
        title.push_str(&format!(" (p = {p})"));
    }
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"30\" font-size=\"18\" fill=\"#222222\" text-anchor=\"middle\">{title}</text>\n",
        LEFT + 5 * CELL_W / 2
    ));
    for (c, col) in ComparisonMatrix::COLUMNS.iter().enumerate() {
        let x = LEFT + c * CELL_W + CELL_W / 2;
        svg.push_str(&format!(
            "  <text x=\"{x}\" y=\"{}\" font-size=\"14\" fill=\"#222222\" text-anchor=\"middle\">{}</text>\n",
            TOP - 12,
            col.axis_label()
        ));
    }
    for (r, row) in ComparisonMatrix::ROWS.iter().enumerate() {
        let y = TOP + r * CELL_H + CELL_H / 2 + 5;
        svg.push_str(&format!(
            "  <text x=\"{}\" y=\"{y}\" font-size=\"14\" fill=\"#222222\" text-anchor=\"end\">{}</text>\n",
            LEFT - 10,
            row.axis_label()
        ));
    }
    for r in 0..5 {
        for c in 0..5 {
            let x = LEFT + c * CELL_W;
            let y = TOP + r * CELL_H;
            match matrix.get(r, c) {
                Some(v) => {
                    let b = band(v);
                    svg.push_str(&format!(
                        "  <rect x=\"{x}\" y=\"{y}\" width=\"{CELL_W}\" height=\"{CELL_H}\" \
                         fill=\"{}\" stroke=\"#ffffff\" stroke-width=\"2\"/>\n",
                        palette.fill(b)
                    ));
                    svg.push_str(&format!(
                        "  <text x=\"{}\" y=\"{}\" font-size=\"15\" fill=\"{}\" \
                         text-anchor=\"middle\">{v:.2}</text>\n",
                        x + CELL_W / 2,
                        y + CELL_H / 2 + 5,
                        BandPalette::text_color(b)
                    ));
                }
                None => {
                    svg.push_str(&format!(
                        "  <rect x=\"{x}\" y=\"{y}\" width=\"{CELL_W}\" height=\"{CELL_H}\" \
                         fill=\"url(#undefined-hatch)\" stroke=\"#ffffff\" stroke-width=\"2\"/>\n"
                    ));
                }
            }
        }
    }
    svg.push_str("</svg>\n");
    svg
}
