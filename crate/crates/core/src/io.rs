//! Operator (JSON) and symbol (CSV) file formats.
//!
//! Operator file:
//!
//! ```json
//! {"n": 3, "lambda": 1, "dim": 3, "entries": [[re, im], ...], "label": "..."}
//! ```
//!
//! `entries` is row-major with `dim²` pairs.
//!
//! Symbol file: one header line
//! `# n=3 lambda=2 s=0 mode=consistent vol=... grid=13,7,13,7`
//! (or `grid=mc:<samples>:<seed>`), a column line, then one row per node:
//! `idx,<angles>,weight,re,im`. Floats are written with 17 significant
//! digits.

use std::fmt::Write as _;
use std::fs;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::phase_space::ReconstructionMode;
use crate::repr::{coset_volume, dim_symmetric, CosetGrid, CosetPoint, GridKind};
use crate::{CMatrix, Error, Result};

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorFile {
    pub n: usize,
    pub lambda: usize,
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl OperatorFile {
    pub fn from_matrix(n: usize, lambda: usize, m: &CMatrix, label: Option<String>) -> Self {
        let mut entries = Vec::with_capacity(m.len());
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                entries.push([m[(r, c)].re, m[(r, c)].im]);
            }
        }
        Self {
            n,
            lambda,
            dim: m.nrows(),
            entries,
            label,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Parse(format!("n={} is not a valid SU(n)", self.n)));
        }
        let want = dim_symmetric(self.n, self.lambda);
        if self.dim != want {
            return Err(Error::Dimension {
                expected: want,
                got: self.dim,
            });
        }
        if self.entries.len() != want * want {
            return Err(Error::Dimension {
                expected: want * want,
                got: self.entries.len(),
            });
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        self.validate()?;
        Ok(CMatrix::from_row_iterator(
            self.dim,
            self.dim,
            self.entries.iter().map(|[re, im]| Complex64::new(*re, *im)),
        ))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymbolHeader {
    pub n: usize,
    pub lambda: usize,
    pub s: f64,
    pub mode: ReconstructionMode,
    pub vol: f64,
    pub grid: GridKind,
}

impl SymbolHeader {
    fn line(&self) -> String {
        let grid = match &self.grid {
            GridKind::Exact { resolution } => resolution
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join(","),
            GridKind::MonteCarlo { samples, seed } => format!("mc:{samples}:{seed}"),
        };
        format!(
            "# n={} lambda={} s={} mode={} vol={} grid={}",
            self.n,
            self.lambda,
            fmt_f64(self.s),
            self.mode,
            fmt_f64(self.vol),
            grid
        )
    }

    fn parse(line: &str) -> Result<Self> {
        let body = line
            .strip_prefix('#')
            .ok_or_else(|| Error::Parse("symbol file must start with a '#' header".into()))?;
        let mut n = None;
        let mut lambda = None;
        let mut s = None;
        let mut mode = None;
        let mut vol = None;
        let mut grid = None;
        for tok in body.split_whitespace() {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad header token {tok:?}")))?;
            let bad = |_| Error::Parse(format!("bad value in header token {tok:?}"));
            match k {
                "n" => n = Some(v.parse::<usize>().map_err(|e| bad(e.to_string()))?),
                "lambda" => lambda = Some(v.parse::<usize>().map_err(|e| bad(e.to_string()))?),
                "s" => s = Some(v.parse::<f64>().map_err(|e| bad(e.to_string()))?),
                "mode" => mode = Some(v.parse::<ReconstructionMode>()?),
                "vol" => vol = Some(v.parse::<f64>().map_err(|e| bad(e.to_string()))?),
                "grid" => grid = Some(parse_grid_token(v)?),
                _ => {}
            }
        }
        let missing = |k: &str| Error::Parse(format!("header lacks {k}="));
        Ok(Self {
            n: n.ok_or_else(|| missing("n"))?,
            lambda: lambda.ok_or_else(|| missing("lambda"))?,
            s: s.ok_or_else(|| missing("s"))?,
            mode: mode.unwrap_or_default(),
            vol: vol.ok_or_else(|| missing("vol"))?,
            grid: grid.ok_or_else(|| missing("grid"))?,
        })
    }
}

fn parse_grid_token(v: &str) -> Result<GridKind> {
    if let Some(rest) = v.strip_prefix("mc:") {
        let (samples, seed) = rest
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("bad Monte Carlo grid {v:?}")))?;
        return Ok(GridKind::MonteCarlo {
            samples: samples
                .parse()
                .map_err(|_| Error::Parse(format!("bad grid {v:?}")))?,
            seed: seed
                .parse()
                .map_err(|_| Error::Parse(format!("bad grid {v:?}")))?,
        });
    }
    Ok(GridKind::Exact {
        resolution: parse_resolution(v)?,
    })
}

/// Parses `a1,b1,a2,b2`.
pub fn parse_resolution(v: &str) -> Result<Vec<usize>> {
    v.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad grid resolution {v:?}")))
        })
        .collect()
}

fn angle_names(n: usize) -> &'static [&'static str] {
    match n {
        2 => &["alpha", "beta"],
        3 => &["alpha1", "beta1", "alpha2", "beta2"],
        _ => &[],
    }
}

/// Serialises a symbol field together with its grid.
pub fn write_symbol_csv(header: &SymbolHeader, grid: &CosetGrid, values: &[Complex64]) -> String {
    let mut out = header.line();
    out.push('\n');
    let mut cols = vec!["idx"];
    cols.extend_from_slice(angle_names(grid.n));
    cols.extend_from_slice(&["weight", "re", "im"]);
    out.push_str(&cols.join(","));
    out.push('\n');
    for (i, ((p, w), v)) in grid
        .points
        .iter()
        .zip(&grid.weights)
        .zip(values)
        .enumerate()
    {
        let _ = write!(out, "{i}");
        for a in p.angles() {
            let _ = write!(out, ",{}", fmt_f64(a));
        }
        let _ = writeln!(out, ",{},{},{}", fmt_f64(*w), fmt_f64(v.re), fmt_f64(v.im));
    }
    out
}

#[derive(Clone, Debug)]
pub struct SymbolFile {
    pub header: SymbolHeader,
    pub grid: CosetGrid,
    pub values: Vec<Complex64>,
}

impl SymbolFile {
    pub fn parse<R: Read>(reader: R) -> Result<Self> {
        let mut lines = BufReader::new(reader).lines();
        let first = lines
            .next()
            .ok_or_else(|| Error::Parse("empty symbol file".into()))??;
        let header = SymbolHeader::parse(&first)?;
        let _columns = lines
            .next()
            .ok_or_else(|| Error::Parse("symbol file lacks a column line".into()))??;
        let n_angles = angle_names(header.n).len();
        let mut points = Vec::new();
        let mut weights = Vec::new();
        let mut values = Vec::new();
        for (row, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<f64> = line
                .split(',')
                .skip(1)
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Parse(format!("row {row}: bad number {t:?}")))
                })
                .collect::<Result<_>>()?;
            if fields.len() != n_angles + 3 {
                return Err(Error::Parse(format!(
                    "row {row}: expected {} columns, got {}",
                    n_angles + 4,
                    fields.len() + 1
                )));
            }
            if n_angles > 0 {
                points.push(CosetPoint::from_angles(header.n, &fields[..n_angles])?);
            }
            weights.push(fields[n_angles]);
            values.push(Complex64::new(fields[n_angles + 1], fields[n_angles + 2]));
        }
        let grid = match &header.grid {
            GridKind::Exact { .. } => CosetGrid {
                n: header.n,
                kind: header.grid.clone(),
                points,
                weights,
            },
            GridKind::MonteCarlo { samples, seed } => {
                let g = CosetGrid::monte_carlo(header.n, *samples, *seed)?;
                if g.len() != values.len() {
                    return Err(Error::Parse(
                        "Monte Carlo row count disagrees with header".into(),
                    ));
                }
                g
            }
        };
        let vol = coset_volume(header.n);
        let total = grid.total_weight();
        if ((total - vol) / vol).abs() > 1e-8 {
            return Err(Error::Parse(format!(
                "weights sum to {total}, expected coset volume {vol}"
            )));
        }
        Ok(Self {
            header,
            grid,
            values,
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(fs::File::open(path)?)
    }
}
