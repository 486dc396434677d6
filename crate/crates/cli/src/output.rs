//! Atomic artifact writing and the CSV field format.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use vekua_core::{Bicomplex, Complex64, FieldValue, Region, SolutionField};

use crate::error::Failure;

/// Writes via a sibling temp file and a rename, so readers never see partial output.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| Failure::io(&dir.display().to_string(), e))?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    fs::write(&tmp, bytes).map_err(|e| Failure::io(&tmp.display().to_string(), e))?;
    fs::rename(&tmp, path).map_err(|e| Failure::io(&path.display().to_string(), e))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::new("internal", e.to_string()))?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

/// Cell-centred `n × n` grid over the region's bounding box, top row first.
pub fn grid_points(region: &Region, n: usize) -> Vec<Complex64> {
    let (x0, x1, y0, y1) = region.bounding_box();
    let (dx, dy) = ((x1 - x0) / n as f64, (y1 - y0) / n as f64);
    (0..n)
        .flat_map(|r| (0..n).map(move |c| Complex64::new(x0 + (c as f64 + 0.5) * dx, y1 - (r as f64 + 0.5) * dy)))
        .collect()
}

/// Columns written for a field value type.
pub trait CsvValue: FieldValue + Send + Sync {
    const HEADER: &'static str;
    fn cells(self, out: &mut String);
}

impl CsvValue for Complex64 {
    const HEADER: &'static str = "x,y,re,im";
    fn cells(self, out: &mut String) {
        let _ = write!(out, ",{:.16e},{:.16e}", self.re, self.im);
    }
}

impl CsvValue for Bicomplex {
    const HEADER: &'static str = "x,y,re,im,j_re,j_im";
    fn cells(self, out: &mut String) {
        let _ = write!(out, ",{:.16e},{:.16e},{:.16e},{:.16e}", self.sc.re, self.sc.im, self.vec.re, self.vec.im);
    }
}

/// Samples `field` on the grid and renders CSV text.
pub fn field_csv<V: CsvValue>(field: &SolutionField<V>, n: usize) -> String {
    let pts = grid_points(field.region(), n);
    let rows: Vec<String> = pts
        .par_iter()
        .map(|&z| {
            let mut line = format!("{:.16e},{:.16e}", z.re, z.im);
            field.eval(z).cells(&mut line);
            line.push('\n');
            line
        })
        .collect();
    let mut text = String::with_capacity(rows.len() * 96);
    text.push_str(V::HEADER);
    text.push('\n');
    rows.iter().for_each(|r| text.push_str(r));
    text
}

pub fn write_field<V: CsvValue>(path: &Path, field: &SolutionField<V>, n: usize) -> Result<(), Failure> {
    write_atomic(path, field_csv(field, n).as_bytes())
}

pub fn out_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}

/// Finite floats as numbers, anything else as `null`.
pub fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}
