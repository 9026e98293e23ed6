//! CSV and SVG writers. Floats are printed with 17 significant digits so
//! values survive a round trip through text.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{CliError, CliResult};

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Default)]
pub struct Csv {
    buf: String,
}

impl Csv {
    pub fn with_header(columns: &[&str]) -> Self {
        let mut csv = Csv::default();
        csv.buf.push_str(&columns.join(","));
        csv.buf.push('\n');
        csv
    }

    pub fn row<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut first = true;
        for f in fields {
            if !first {
                self.buf.push(',');
            }
            self.buf.push_str(f.as_ref());
            first = false;
        }
        self.buf.push('\n');
    }

    pub fn as_str(&self) -> &str {
        &self.buf
    }
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// One polyline of `eta(r)` per output time on linear axes.
pub fn eta_svg(r: &[f64], series: &[(f64, Vec<f64>)]) -> String {
    const W: f64 = 800.0;
    const H: f64 = 480.0;
    const PAD: f64 = 48.0;
    let (x0, x1) = (r[0], r[r.len() - 1]);
    let (mut y0, mut y1) = series
        .iter()
        .flat_map(|(_, eta)| eta.iter().copied())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !(y1 > y0) {
        y0 -= 1.0;
        y1 += 1.0;
    }
    let sx = |x: f64| PAD + (x - x0) / (x1 - x0) * (W - 2.0 * PAD);
    let sy = |y: f64| H - PAD - (y - y0) / (y1 - y0) * (H - 2.0 * PAD);

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<path d="M{PAD} {PAD} V{b} H{r}" fill="none" stroke="black"/>"#,
        b = H - PAD,
        r = W - PAD
    );
    let _ = writeln!(svg, r#"<text x="{}" y="{}" font-size="12">r</text>"#, W - PAD, H - PAD / 3.0);
    let _ = writeln!(svg, r#"<text x="8" y="{}" font-size="12">eta</text>"#, PAD - 8.0);
    let _ = writeln!(
        svg,
        r#"<text x="{PAD}" y="{}" font-size="11">r in [{x0:.3}, {x1:.3}], eta in [{y0:.3e}, {y1:.3e}]</text>"#,
        H - 8.0
    );
    let n = series.len().max(2) as f64 - 1.0;
    for (k, (t, eta)) in series.iter().enumerate() {
        let hue = 240.0 * (1.0 - k as f64 / n);
        let mut d = String::new();
        for (i, (&x, &y)) in r.iter().zip(eta).enumerate() {
            let _ = write!(d, "{}{:.2} {:.2}", if i == 0 { "M" } else { " L" }, sx(x), sy(y));
        }
        let _ = writeln!(
            svg,
            r#"<path d="{d}" fill="none" stroke="hsl({hue:.0},70%,45%)" stroke-width="1"><title>t = {t}</title></path>"#
        );
    }
    svg.push_str("</svg>\n");
    svg
}
