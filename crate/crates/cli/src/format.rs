//! Polygon and report files.
//!
//! Polygons are JSON objects with a `vertices` array of `[x, y]` pairs, or
//! plain text with one `x y` pair per line (blank lines and `#` comments
//! skipped). Numbers are written in shortest round-trip form, so reading a
//! written file gives back the same bits.

use std::path::Path;

use mft_core::flush::triangle_of;
use mft_core::polygon::validate;
use mft_core::solver::SolverReport;
use mft_core::{Point, Polygon};
use serde::{Deserialize, Serialize};

use crate::{io_error, CliError};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PolygonFile {
    pub vertices: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl PolygonFile {
    pub fn from_points(points: &[Point<f64>]) -> Self {
        PolygonFile {
            vertices: points.iter().map(|p| [p.x, p.y]).collect(),
            ..Default::default()
        }
    }

    pub fn points(&self) -> Vec<Point<f64>> {
        self.vertices.iter().map(|&[x, y]| Point::new(x, y)).collect()
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        if text.trim_start().starts_with('{') {
            return serde_json::from_str(text).map_err(|e| CliError::Input(format!("bad polygon file: {e}")));
        }
        let mut vertices = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let nums: Vec<&str> = line.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect();
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| CliError::Input(format!("line {}: bad number {s:?}", no + 1)))
            };
            match nums.as_slice() {
                [x, y] => vertices.push([parse(x)?, parse(y)?]),
                _ => return Err(CliError::Input(format!("line {}: expected two numbers", no + 1))),
            }
        }
        Ok(PolygonFile {
            vertices,
            ..Default::default()
        })
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("polygon serializes") + "\n"
    }

    pub fn polygon(&self) -> Result<Polygon, CliError> {
        Ok(validate(self.points())?)
    }
}

/// The reported triangle, with edges numbered from 1 in input order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleRecord {
    pub edges: [usize; 3],
    pub corners: Vec<[f64; 2]>,
    pub area: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub edges: [usize; 3],
    pub area: f64,
    pub stable: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StatsRecord {
    pub iterations: usize,
    pub apex_advances: usize,
    pub support_advances: usize,
    pub trivial_kills: usize,
    pub criterion_kill_b: usize,
    pub criterion_kill_c: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub algorithm: String,
    pub n: usize,
    /// Input listed counterclockwise and was reversed before solving.
    pub reversed: bool,
    pub mft: TriangleRecord,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub candidates: Vec<CandidateRecord>,
    pub stats: StatsRecord,
    pub wall_ns: u64,
}

/// 1-based index in the input's own numbering of internal edge `i`.
pub fn input_edge(p: &Polygon, i: usize) -> usize {
    let e = if p.was_reversed() {
        p.input_index(p.next(i))
    } else {
        i
    };
    e + 1
}

pub fn input_edges(p: &Polygon, edges: [usize; 3]) -> [usize; 3] {
    let mut e = edges.map(|i| input_edge(p, i));
    e.sort_unstable();
    e
}

impl ReportFile {
    pub fn new(p: &Polygon, rep: &SolverReport<f64>, wall_ns: u64) -> Self {
        // Rebuilt from the canonical triple so every algorithm reports the same bits.
        let [i, j, k] = rep.mft.canonical();
        let tri = triangle_of(p, i, j, k).unwrap_or_else(|_| rep.mft.clone());
        let corners = tri
            .corners
            .map(|c| c.iter().map(|q| [q.x, q.y]).collect())
            .unwrap_or_default();
        let s = &rep.stats;
        ReportFile {
            algorithm: rep.algorithm.name().to_string(),
            n: p.n(),
            reversed: p.was_reversed(),
            mft: TriangleRecord {
                edges: input_edges(p, tri.edges),
                corners,
                area: tri.area.finite().unwrap_or(f64::INFINITY),
            },
            candidates: rep
                .candidates
                .iter()
                .map(|c| CandidateRecord {
                    edges: input_edges(p, c.edges),
                    area: c.area,
                    stable: c.stable,
                })
                .collect(),
            stats: StatsRecord {
                iterations: s.iterations,
                apex_advances: s.apex_advances,
                support_advances: s.support_advances,
                trivial_kills: s.trivial_kills,
                criterion_kill_b: s.criterion_kill_b,
                criterion_kill_c: s.criterion_kill_c,
            },
            wall_ns,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("bad report file: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
        Self::parse(&text)
    }
}

/// Shoelace area of the triangle through three corners.
pub fn corner_area(corners: &[[f64; 2]]) -> f64 {
    let pts: Vec<Point<f64>> = corners.iter().map(|&[x, y]| Point::new(x, y)).collect();
    mft_core::geom::signed_area(&pts).abs()
}
