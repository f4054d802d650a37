//! Report emission: JSON summaries, CSV tables and SVG line plots.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, ValueEnum,
)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Svg,
}

/// 17 significant digits, so that byte-equality of two runs means equality
/// of the underlying doubles.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn slug(label: &str) -> String {
    let mut out = String::new();
    for c in label.chars() {
        if c.is_ascii_alphanumeric() {
            out.push(c.to_ascii_lowercase());
        } else if !out.ends_with('-') {
            out.push('-');
        }
    }
    out.trim_matches('-').to_string()
}

pub struct Emitter {
    dir: PathBuf,
    formats: BTreeSet<Format>,
    written: Vec<PathBuf>,
}

impl Emitter {
    pub fn new(dir: &Path, formats: impl IntoIterator<Item = Format>) -> Result<Self> {
        fs::create_dir_all(dir)
            .with_context(|| format!("creating output directory {}", dir.display()))?;
        Ok(Self {
            dir: dir.to_path_buf(),
            formats: formats.into_iter().collect(),
            written: Vec::new(),
        })
    }

    pub fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }

    fn write(&mut self, name: &str, contents: &[u8]) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        self.written.push(path);
        Ok(())
    }

    pub fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        if !self.wants(Format::Json) {
            return Ok(());
        }
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.write(&format!("{name}.json"), text.as_bytes())
    }

    /// Single-line JSON, for reports that carry every sample.
    pub fn json_compact<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        if !self.wants(Format::Json) {
            return Ok(());
        }
        let mut text = serde_json::to_string(value)?;
        text.push('\n');
        self.write(&format!("{name}.json"), text.as_bytes())
    }

    pub fn csv(&mut self, name: &str, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
        if !self.wants(Format::Csv) {
            return Ok(());
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| anyhow::anyhow!("csv buffer: {e}"))?;
        self.write(&format!("{name}.csv"), &bytes)
    }

    pub fn svg(
        &mut self,
        name: &str,
        title: &str,
        y_label: &str,
        points: &[(f64, f64)],
    ) -> Result<()> {
        if !self.wants(Format::Svg) {
            return Ok(());
        }
        let text = polyline_svg(title, y_label, points);
        self.write(&format!("{name}.svg"), text.as_bytes())
    }
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 360.0;
const MARGIN: f64 = 48.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// A single series against `s`, with the value range printed on the axis.
pub fn polyline_svg(title: &str, y_label: &str, points: &[(f64, f64)]) -> String {
    let finite: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .collect();
    let range = |f: fn(&(f64, f64)) -> f64| {
        let lo = finite.iter().map(f).fold(f64::INFINITY, f64::min);
        let hi = finite.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
        if !lo.is_finite() {
            (0.0, 1.0)
        } else if hi - lo <= 1e-300 + 1e-12 * lo.abs() {
            let pad = lo.abs().max(1.0) * 0.5;
            (lo - pad, hi + pad)
        } else {
            (lo, hi)
        }
    };
    let (x0, x1) = range(|p| p.0);
    let (y0, y1) = range(|p| p.1);
    let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);
    let coords: Vec<String> = finite
        .iter()
        .map(|&(x, y)| format!("{:.3},{:.3}", px(x), py(y)))
        .collect();
    format!(
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">
<rect width="100%" height="100%" fill="white"/>
<text x="{m}" y="24" font-family="sans-serif" font-size="14">{title}</text>
<rect x="{m}" y="{m}" width="{iw}" height="{ih}" fill="none" stroke="#888"/>
<polyline fill="none" stroke="#1f5fa8" stroke-width="1.5" points="{pts}"/>
<text x="{m}" y="{yb}" font-family="sans-serif" font-size="11">s = {x0:.4}</text>
<text x="{xr}" y="{yb}" font-family="sans-serif" font-size="11" text-anchor="end">s = {x1:.4}</text>
<text x="4" y="{m}" font-family="sans-serif" font-size="11">{y1:.3e}</text>
<text x="4" y="{ybot}" font-family="sans-serif" font-size="11">{y0:.3e}</text>
<text x="4" y="{ymid}" font-family="sans-serif" font-size="11">{ylab}</text>
</svg>
"##,
        w = WIDTH,
        h = HEIGHT,
        m = MARGIN,
        iw = WIDTH - 2.0 * MARGIN,
        ih = HEIGHT - 2.0 * MARGIN,
        title = escape(title),
        pts = coords.join(" "),
        yb = HEIGHT - MARGIN + 18.0,
        xr = WIDTH - MARGIN,
        ybot = HEIGHT - MARGIN,
        ymid = HEIGHT / 2.0,
        ylab = escape(y_label),
    )
}
