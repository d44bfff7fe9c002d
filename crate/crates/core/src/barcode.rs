//! Stable barcodes on the linear quiver `1 <- 2 <- ... <- n`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BarcodeError {
    #[error("dimension vector has a negative entry at {0}")]
    Negative(usize),
    #[error("[{0},{1}] is not an interval")]
    BadInterval(usize, usize),
}

/// A multiset of intervals `[a, b]` together with the dimension vector it
/// decomposes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Barcode {
    pub v: Vec<i64>,
    /// Multiplicity of each interval, ordered by `(a, b)`.
    pub bars: BTreeMap<(usize, usize), usize>,
    /// Intervals as read from the highest level down, first occurrence only.
    #[serde(skip)]
    top_down: Vec<(usize, usize)>,
}

/// Stacks `v_i` spots over each `i` and joins horizontal neighbours: every
/// maximal run of `{i : v_i >= h}` at height `h` is one bar.
pub fn stable_barcode(v: &[i64]) -> Result<Barcode, BarcodeError> {
    if let Some(i) = v.iter().position(|&x| x < 0) {
        return Err(BarcodeError::Negative(i + 1));
    }
    let mut bars = BTreeMap::new();
    let mut top_down = Vec::new();
    let top = v.iter().copied().max().unwrap_or(0);
    for h in (1..=top).rev() {
        let mut i = 0;
        while i < v.len() {
            if v[i] >= h {
                let start = i;
                while i < v.len() && v[i] >= h {
                    i += 1;
                }
                let bar = (start + 1, i);
                let count = bars.entry(bar).or_insert(0);
                if *count == 0 {
                    top_down.push(bar);
                }
                *count += 1;
            } else {
                i += 1;
            }
        }
    }
    Ok(Barcode {
        v: v.to_vec(),
        bars,
        top_down,
    })
}

/// `Ext(M_cd, M_ab) != 0` on linear `A_n`: either `a < c <= b < d` or
/// `b + 1 = c`.
pub fn interval_ext_nonzero(c: usize, d: usize, a: usize, b: usize) -> Result<bool, BarcodeError> {
    for (lo, hi) in [(c, d), (a, b)] {
        if lo == 0 || lo > hi {
            return Err(BarcodeError::BadInterval(lo, hi));
        }
    }
    Ok((a < c && c <= b && b < d) || b + 1 == c)
}

/// No two bars (or a bar with itself) have an extension in either order.
pub fn is_rigid(bars: &[(usize, usize)]) -> bool {
    bars.iter().all(|&(c, d)| {
        bars.iter().all(|&(a, b)| {
            !interval_ext_nonzero(c, d, a, b).unwrap_or(true)
                && !interval_ext_nonzero(a, b, c, d).unwrap_or(true)
        })
    })
}

impl Barcode {
    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Intervals with repetition, in `(a, b)` order.
    pub fn intervals(&self) -> Vec<(usize, usize)> {
        self.bars
            .iter()
            .flat_map(|(&bar, &m)| std::iter::repeat_n(bar, m))
            .collect()
    }

    /// Sum of the dimension vectors of the bars.
    pub fn dimension(&self) -> Vec<i64> {
        let mut d = vec![0; self.v.len()];
        for (&(a, b), &m) in &self.bars {
            for slot in &mut d[a - 1..b] {
                *slot += m as i64;
            }
        }
        d
    }

    /// SVG with one horizontal bar per interval, stacked from the axis up.
    pub fn render_svg(&self) -> String {
        let n = self.v.len().max(1);
        let top = self.v.iter().copied().max().unwrap_or(0).max(1) as usize;
        let (cell, gap) = (40.0, 12.0);
        let width = cell * n as f64 + 40.0;
        let height = gap * (top + 2) as f64 + 30.0;
        let axis = height - 20.0;
        let mut out = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 {width:.0} {height:.0}\" width=\"{width:.0}\" height=\"{height:.0}\">\n"
        );
        let _ = writeln!(
            out,
            "<line x1=\"10\" y1=\"{axis:.2}\" x2=\"{:.2}\" y2=\"{axis:.2}\" stroke=\"black\"/>",
            width - 10.0
        );
        for i in 1..=n {
            let x = 20.0 + cell * (i as f64 - 0.5);
            let _ = writeln!(
                out,
                "<text x=\"{x:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"middle\">{i}</text>",
                axis + 14.0
            );
        }
        let mut level = 0usize;
        for (a, b) in self.intervals() {
            level += 1;
            let y = axis - gap * level as f64;
            let _ = writeln!(
                out,
                "<line class=\"bar\" x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"black\" stroke-width=\"4\"/>",
                20.0 + cell * (a as f64 - 1.0) + 4.0,
                20.0 + cell * b as f64 - 4.0
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

/// `M[2,2] + M[1,2] + 2*M[1,3]`, read from the top level down; `0` when empty.
impl fmt::Display for Barcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bars.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .top_down
            .iter()
            .map(|bar| match self.bars[bar] {
                1 => format!("M[{},{}]", bar.0, bar.1),
                m => format!("{m}*M[{},{}]", bar.0, bar.1),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
