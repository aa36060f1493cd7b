//! Output helpers: minimal SVG line charts, file hashes and run manifests.

use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::power::PowerTable;

/// One named polyline.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN_L: f64 = 60.0;
const MARGIN_R: f64 = 130.0;
const MARGIN_T: f64 = 36.0;
const MARGIN_B: f64 = 48.0;
const PALETTE: [&str; 8] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn range(vals: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = vals.filter(|v| v.is_finite()).fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| (l.min(v), h.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        return (lo - 0.5, hi + 0.5);
    }
    (lo, hi)
}

/// Static SVG line chart with axes, five ticks per axis and a legend.
/// Non-finite points are skipped.
pub fn svg_line_chart(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let (x0, x1) = range(series.iter().flat_map(|s| s.points.iter().map(|p| p.0)));
    let (y0, y1) = range(series.iter().flat_map(|s| s.points.iter().map(|p| p.1)));
    let pw = WIDTH - MARGIN_L - MARGIN_R;
    let ph = HEIGHT - MARGIN_T - MARGIN_B;
    let sx = |x: f64| MARGIN_L + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| MARGIN_T + ph - (y - y0) / (y1 - y0) * ph;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>"#, MARGIN_L + pw / 2.0, escape(title));
    let _ = writeln!(
        out,
        r#"<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let (xv, yv) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
        let (px, py) = (sx(xv), sy(yv));
        let _ = writeln!(out, r#"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/>"#, MARGIN_T + ph, MARGIN_T + ph + 5.0);
        let _ = writeln!(out, r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, MARGIN_T + ph + 18.0, tick(xv));
        let _ = writeln!(out, r#"<line x1="{:.2}" y1="{py:.2}" x2="{MARGIN_L}" y2="{py:.2}" stroke="black"/>"#, MARGIN_L - 5.0);
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, MARGIN_L - 8.0, py + 4.0, tick(yv));
    }
    let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, MARGIN_L + pw / 2.0, HEIGHT - 8.0, escape(x_label));
    let _ = writeln!(
        out,
        r#"<text x="14" y="{:.2}" text-anchor="middle" transform="rotate(-90 14 {:.2})">{}</text>"#,
        MARGIN_T + ph / 2.0,
        MARGIN_T + ph / 2.0,
        escape(y_label)
    );
    for (k, s) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|(x, y)| format!("{:.2},{:.2}", sx(*x), sy(*y)))
            .collect();
        let _ = writeln!(out, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, pts.join(" "));
        let ly = MARGIN_T + 10.0 + 18.0 * k as f64;
        let lx = WIDTH - MARGIN_R + 10.0;
        let _ = writeln!(out, r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#, lx + 20.0);
        let _ = writeln!(out, r#"<text x="{}" y="{}">{}</text>"#, lx + 26.0, ly + 4.0, escape(&s.name));
    }
    out.push_str("</svg>\n");
    out
}

fn tick(v: f64) -> String {
    if v == 0.0 || (1e-3..1e5).contains(&v.abs()) {
        let s = format!("{v:.3}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        if s == "-0" { "0".into() } else { s.to_string() }
    } else {
        format!("{v:.2e}")
    }
}

/// Power against scale, one line per test.
pub fn power_chart(table: &PowerTable) -> String {
    let series: Vec<Series> = table
        .tests
        .iter()
        .map(|t| Series {
            name: t.clone(),
            points: table.rows.iter().filter(|r| &r.test == t).map(|r| (r.a, r.estimate.rate)).collect(),
        })
        .collect();
    svg_line_chart(&format!("{} alternatives, d = {}", table.family, table.d), "a", "power", &series)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Run record: `key = value` inputs followed by `file.<name> = sha256` lines.
///
/// Inputs keep insertion order; the text parses back with
/// [`crate::artifact::KeyValues::parse`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Manifest {
    entries: Vec<(String, String)>,
    files: Vec<(String, String)>,
}

impl Manifest {
    pub fn new(command: &str) -> Self {
        let mut m = Manifest::default();
        m.set("command", command);
        m.set("version", env!("CARGO_PKG_VERSION"));
        m
    }

    /// Sets or replaces an input entry.
    pub fn set(&mut self, key: &str, value: impl ToString) -> &mut Self {
        let v = value.to_string();
        match self.entries.iter_mut().find(|(k, _)| k == key) {
            Some(e) => e.1 = v,
            None => self.entries.push((key.to_string(), v)),
        }
        self
    }

    pub fn inputs(&self) -> &[(String, String)] {
        &self.entries
    }

    /// Records the hash of an output file by its name.
    pub fn add_output(&mut self, name: &str, bytes: &[u8]) {
        self.files.push((name.to_string(), sha256_hex(bytes)));
    }

    pub fn outputs(&self) -> &[(String, String)] {
        &self.files
    }

    pub fn render(&self) -> String {
        let mut s = String::from("# run manifest\n");
        for (k, v) in &self.entries {
            let _ = writeln!(s, "{k} = {v}");
        }
        for (k, v) in &self.files {
            let _ = writeln!(s, "file.{k} = {v}");
        }
        s
    }
}

/// Writes `bytes` to `dir/name` and records its hash in the manifest.
pub fn write_output(dir: &Path, name: &str, bytes: &[u8], manifest: &mut Manifest) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(name), bytes)?;
    manifest.add_output(name, bytes);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artifact::KeyValues;

    #[test]
    fn sha256_known_vector() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn chart_contains_every_series() {
        let s = vec![
            Series { name: "p=1".into(), points: vec![(0.0, 0.05), (1.0, 0.9)] },
            Series { name: "a<b".into(), points: vec![(0.0, 0.05), (1.0, f64::NAN)] },
        ];
        let svg = svg_line_chart("t", "a", "power", &s);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("a&lt;b"));
        assert!(!svg.contains("NaN"));
    }

    #[test]
    fn flat_and_empty_series_do_not_divide_by_zero() {
        let svg = svg_line_chart("t", "x", "y", &[Series { name: "c".into(), points: vec![(1.0, 2.0)] }]);
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
        let svg = svg_line_chart("t", "x", "y", &[]);
        assert!(!svg.contains("NaN"));
    }

    #[test]
    fn manifest_round_trips_through_key_values() {
        let mut m = Manifest::new("power");
        m.set("seed", 7).set("d", 10000).set("seed", 8);
        m.add_output("dense.csv", b"x");
        let kv = KeyValues::parse(&m.render()).unwrap();
        assert_eq!(kv.get("seed"), Some("8"));
        assert_eq!(kv.get("d"), Some("10000"));
        assert_eq!(kv.get("file.dense.csv"), Some(sha256_hex(b"x").as_str()));
    }
}
