//! Grid rendering of tiling and cross documents, as ASCII or SVG.
//!
//! Layout comes from the document's optional `factorization` hint `[m, k]`
//! (m columns, k rows). Coprime factors use the product-group coordinates
//! `x -> (x mod m, x mod k)`; non-coprime hints fall back to row-major
//! order. Without a hint the group renders as a single row; `--rows r`
//! forces a row-major layout with `r` rows. Output is deterministic byte
//! for byte.

use anyhow::{bail, Result};

use crosstile_core::zn::CyclicSet;

pub struct GridLayout {
    pub columns: usize,
    pub rows: usize,
    crt: bool,
}

impl GridLayout {
    pub fn for_document(
        n: usize,
        factorization: Option<[usize; 2]>,
        rows_override: Option<usize>,
    ) -> Result<Self> {
        if let Some(rows) = rows_override {
            if rows == 0 || !n.is_multiple_of(rows) {
                bail!("--rows {rows} does not divide the group order {n}");
            }
            return Ok(GridLayout {
                columns: n / rows,
                rows,
                crt: false,
            });
        }
        match factorization {
            Some([m, k]) => {
                if m * k != n {
                    bail!("factorization [{m}, {k}] does not multiply to {n}");
                }
                Ok(GridLayout {
                    columns: m,
                    rows: k,
                    crt: gcd(m, k) == 1,
                })
            }
            None => Ok(GridLayout {
                columns: n,
                rows: 1,
                crt: false,
            }),
        }
    }

    /// Cell coordinates (column, row) of a group element.
    fn place(&self, x: usize) -> (usize, usize) {
        if self.crt {
            (x % self.columns, x % self.rows)
        } else {
            (x % self.columns, x / self.columns)
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// One labeled grid per set, `#` for members, `.` for the rest.
pub fn render_ascii(layout: &GridLayout, grids: &[(&str, &CyclicSet)]) -> String {
    let mut out = String::new();
    for (label, set) in grids {
        out.push_str(label);
        out.push('\n');
        let mut cells = vec![vec!['.'; layout.columns]; layout.rows];
        for member in set.iter_members() {
            let (col, row) = layout.place(member);
            cells[row][col] = '#';
        }
        for row in cells {
            out.extend(row);
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

const CELL: usize = 22;
const MARGIN: usize = 14;
const LABEL_H: usize = 20;

/// Deterministic SVG 1.1: every grid shows the whole group as small dots
/// with the set's members as filled colored circles.
pub fn render_svg(layout: &GridLayout, grids: &[(&str, &CyclicSet, &str)]) -> String {
    let grid_w = layout.columns * CELL;
    let grid_h = layout.rows * CELL;
    let block_h = LABEL_H + grid_h + MARGIN;
    let width = grid_w + 2 * MARGIN;
    let height = grids.len() * block_h + MARGIN;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for (i, (label, set, color)) in grids.iter().enumerate() {
        let top = MARGIN + i * block_h;
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"14\">{}</text>\n",
            MARGIN,
            top + 14,
            label
        ));
        let origin_y = top + LABEL_H;
        for row in 0..layout.rows {
            for col in 0..layout.columns {
                let cx = MARGIN + col * CELL + CELL / 2;
                let cy = origin_y + row * CELL + CELL / 2;
                out.push_str(&format!(
                    "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"2\" fill=\"black\"/>\n"
                ));
            }
        }
        for member in set.iter_members() {
            let (col, row) = layout.place(member);
            let cx = MARGIN + col * CELL + CELL / 2;
            let cy = origin_y + row * CELL + CELL / 2;
            out.push_str(&format!(
                "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"7\" fill=\"{color}\"/>\n"
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}
