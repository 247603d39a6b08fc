use std::collections::HashMap;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use super::grid::{CellResult, Construction, Shortcut};
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 6] = ["construction", "d", "n", "trials", "successes", "shortcut"];

/// Writes the grid as CSV (LF line endings).
pub fn write_csv<W: Write>(results: &[CellResult], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for c in results {
        w.write_record([
            c.construction.as_str().to_string(),
            c.d.to_string(),
            c.n.to_string(),
            c.trials.to_string(),
            c.successes.to_string(),
            c.shortcut.as_str().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(results: &[CellResult], path: &Path) -> Result<()> {
    write_csv(results, BufWriter::new(File::create(path)?))
}

/// Parses CSV written by [`write_csv`]. `trials_run` is restored as `trials` for simulated cells.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<CellResult>> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(Error::Parse(format!("unexpected CSV header {header:?}")));
    }
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let num = |i: usize| -> Result<usize> {
            rec[i].parse().map_err(|_| Error::Parse(format!("bad integer {:?} in column {}", &rec[i], CSV_HEADER[i])))
        };
        let shortcut: Shortcut = rec[5].parse()?;
        let trials = num(3)?;
        out.push(CellResult {
            construction: rec[0].parse::<Construction>()?,
            d: num(1)?,
            n: num(2)?,
            trials,
            trials_run: if shortcut == Shortcut::None { trials } else { 0 },
            successes: num(4)?,
            shortcut,
        });
    }
    Ok(out)
}

pub fn parse_csv(path: &Path) -> Result<Vec<CellResult>> {
    read_csv(File::open(path)?)
}

const STOPS: [[f64; 3]; 5] = [
    [0.0, 0.0, 0.0],
    [255.0, 0.0, 0.0],
    [255.0, 165.0, 0.0],
    [255.0, 255.0, 0.0],
    [255.0, 255.0, 255.0],
];
pub const OUTSIDE: [u8; 3] = [128, 128, 128];
pub const OVERLAY: [u8; 3] = [0, 255, 0];

/// Success fraction to RGB: black, red, orange, yellow, white at 0, 1/4, 1/2, 3/4, 1,
/// linearly interpolated in between.
pub fn palette(fraction: f64) -> [u8; 3] {
    let f = fraction.clamp(0.0, 1.0) * 4.0;
    let i = (f.floor() as usize).min(3);
    let t = f - i as f64;
    let mut rgb = [0u8; 3];
    for (k, c) in rgb.iter_mut().enumerate() {
        *c = (STOPS[i][k] + t * (STOPS[i + 1][k] - STOPS[i][k])).round() as u8;
    }
    rgb
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatmapOptions {
    pub overlay_c: Option<f64>,
    /// Pixels per octave for a log₂-scaled image; `None` gives one pixel per cell.
    pub log2_pixels_per_octave: Option<usize>,
}

/// Raster with width along `d` and height along `n` (`n` increasing upward).
pub struct Raster {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<[u8; 3]>,
}

fn axis(max: usize, log2: Option<usize>) -> Vec<usize> {
    match log2 {
        None => (1..=max).collect(),
        Some(s) => {
            let span = (max as f64).log2();
            let len = (span * s as f64).floor() as usize + 1;
            (0..len).map(|x| (2f64.powf(x as f64 / s as f64).round() as usize).clamp(1, max)).collect()
        }
    }
}

pub fn render_heatmap(results: &[CellResult], opts: &HeatmapOptions) -> Raster {
    let d_max = results.iter().map(|c| c.d).max().unwrap_or(0);
    let n_max = results.iter().map(|c| c.n).max().unwrap_or(0);
    let cells: HashMap<(usize, usize), f64> = results.iter().map(|c| ((c.d, c.n), c.fraction())).collect();
    let ds = axis(d_max, opts.log2_pixels_per_octave);
    let ns = axis(n_max, opts.log2_pixels_per_octave);
    let (width, height) = (ds.len(), ns.len());
    let mut pixels = vec![OUTSIDE; width * height];
    for (y, &n) in ns.iter().rev().enumerate() {
        for (x, &d) in ds.iter().enumerate() {
            if let Some(&f) = cells.get(&(d, n)) {
                pixels[y * width + x] = palette(f);
            }
        }
    }
    if let Some(c) = opts.overlay_c {
        for (x, &d) in ds.iter().enumerate() {
            let target = (c * (d * d) as f64).round() as usize;
            // Nearest row on the (possibly log-scaled) n axis.
            if target < 1 || target > n_max {
                continue;
            }
            let row = ns
                .iter()
                .enumerate()
                .min_by_key(|(_, &n)| n.abs_diff(target))
                .map(|(i, _)| i)
                .expect("non-empty axis");
            pixels[(height - 1 - row) * width + x] = OVERLAY;
        }
    }
    Raster { width, height, pixels }
}

/// Binary PPM (P6) with a header comment documenting the palette.
pub fn write_ppm<W: Write>(raster: &Raster, mut out: W) -> Result<()> {
    write!(
        out,
        "P6\n# success fraction palette: black 0, red 0.25, orange 0.5, yellow 0.75, white 1; linear RGB interpolation between stops\n# x axis d ascending, y axis n ascending upward, gray = no cell\n{} {}\n255\n",
        raster.width, raster.height
    )?;
    for p in &raster.pixels {
        out.write_all(p)?;
    }
    out.flush()?;
    Ok(())
}

pub fn emit_heatmap(results: &[CellResult], path: &Path, opts: &HeatmapOptions) -> Result<()> {
    write_ppm(&render_heatmap(results, opts), BufWriter::new(File::create(path)?))
}
