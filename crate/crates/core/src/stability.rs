//! King stability for type-A quivers: walls, chambers and pictures.
//!
//! A module `M` is `theta`-semistable when `theta . dim M = 0` and
//! `theta . dim L <= 0` for every submodule `L`. The chambers of the
//! complement of all walls are the open cones spanned by the g-vectors of
//! silting pairs.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{self, rat};
use crate::repmod::{DimVector, ModuleDesc, RepError, TypeAQuiver};
use crate::silting::{silting_pairs, SiltingError, SiltingPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilityError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Silting(#[from] SiltingError),
    #[error("theta has {got} entries, quiver has {n} vertices")]
    ThetaLength { got: usize, n: usize },
    #[error("no chamber contains a point off every wall")]
    NoChamber,
    #[error("pictures exist only in rank 2 and 3, not {0}")]
    UnsupportedRank(usize),
}

fn pair(theta: &[BigRational], d: &[i64]) -> BigRational {
    theta
        .iter()
        .zip(d)
        .fold(BigRational::zero(), |acc, (t, &x)| acc + t * rat(x))
}

pub fn theta_from_ints(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| rat(x)).collect()
}

fn check_len(tq: &TypeAQuiver, theta: &[BigRational]) -> Result<(), StabilityError> {
    if theta.len() != tq.n() {
        return Err(StabilityError::ThetaLength {
            got: theta.len(),
            n: tq.n(),
        });
    }
    Ok(())
}

fn proper_submodules(tq: &TypeAQuiver, m: &ModuleDesc) -> Result<(DimVector, Vec<DimVector>), RepError> {
    let dim = tq.dim(m)?;
    let subs = tq
        .submodules(m)?
        .into_iter()
        .filter(|d| d.iter().any(|&x| x != 0) && *d != dim)
        .collect();
    Ok((dim, subs))
}

pub fn is_semistable(tq: &TypeAQuiver, m: &ModuleDesc, theta: &[BigRational]) -> Result<bool, StabilityError> {
    check_len(tq, theta)?;
    let (dim, subs) = proper_submodules(tq, m)?;
    Ok(pair(theta, &dim).is_zero() && subs.iter().all(|l| !pair(theta, l).is_positive()))
}

pub fn is_stable(tq: &TypeAQuiver, m: &ModuleDesc, theta: &[BigRational]) -> Result<bool, StabilityError> {
    check_len(tq, theta)?;
    let (dim, subs) = proper_submodules(tq, m)?;
    Ok(pair(theta, &dim).is_zero() && subs.iter().all(|l| pair(theta, l).is_negative()))
}

/// The stability space `D(M)`: the hyperplane `theta . normal = 0` cut down
/// by `theta . L <= 0` for each proper nonzero submodule `L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Wall {
    pub module: ModuleDesc,
    pub normal: DimVector,
    pub constraints: Vec<DimVector>,
}

impl Wall {
    pub fn contains(&self, theta: &[BigRational]) -> bool {
        pair(theta, &self.normal).is_zero()
            && self.constraints.iter().all(|l| !pair(theta, l).is_positive())
    }

    fn contains_f64(&self, theta: &[f64]) -> bool {
        const EPS: f64 = 1e-9;
        let dot = |d: &[i64]| d.iter().zip(theta).map(|(&a, b)| a as f64 * b).sum::<f64>();
        self.constraints.iter().all(|l| dot(l) <= EPS)
    }
}

/// One wall per interval module.
pub fn walls(tq: &TypeAQuiver) -> Result<Vec<Wall>, StabilityError> {
    tq.interval_modules()
        .into_iter()
        .map(|m| {
            let (normal, constraints) = proper_submodules(tq, &m)?;
            Ok(Wall {
                module: m,
                normal,
                constraints,
            })
        })
        .collect()
}

/// The open cone of a silting pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chamber {
    pub silting: SiltingPair,
    /// g-vectors of the members, one per generator.
    pub generators: Vec<Vec<i64>>,
}

impl Chamber {
    /// Coefficients of `theta` in the generators.
    pub fn coordinates(&self, theta: &[BigRational]) -> Vec<BigRational> {
        let g = linalg::transpose(&self.generators);
        let inv = linalg::inverse(&linalg::to_rational(&g)).expect("g-vectors form a basis");
        linalg::mat_vec_rat(&inv, theta)
    }

    /// `true` if `theta` is a strictly positive combination of the generators.
    pub fn contains(&self, theta: &[BigRational]) -> bool {
        self.coordinates(theta).iter().all(|c| c.is_positive())
    }
}

/// One chamber per silting pair, in silting-pair order.
pub fn chambers(tq: &TypeAQuiver) -> Result<Vec<Chamber>, StabilityError> {
    Ok(silting_pairs(tq)?
        .into_iter()
        .map(|p| Chamber {
            generators: p.g_vectors(tq),
            silting: p,
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ChamberHit {
    Chamber(Chamber),
    /// Every interval module that is semistable at `theta`.
    WallHit(Vec<ModuleDesc>),
}

pub fn chamber_of(tq: &TypeAQuiver, theta: &[BigRational]) -> Result<ChamberHit, StabilityError> {
    check_len(tq, theta)?;
    let on: Vec<ModuleDesc> = walls(tq)?
        .into_iter()
        .filter(|w| w.contains(theta))
        .map(|w| w.module)
        .collect();
    if !on.is_empty() {
        return Ok(ChamberHit::WallHit(on));
    }
    chambers(tq)?
        .into_iter()
        .find(|c| c.contains(theta))
        .map(ChamberHit::Chamber)
        .ok_or(StabilityError::NoChamber)
}

/// Outcome of classifying every nonzero integer direction in a cube.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SampleReport {
    pub directions: usize,
    pub on_walls: usize,
    pub in_one_chamber: usize,
    /// Directions inside two or more open cones.
    pub overlaps: usize,
    /// Directions off every wall yet outside every cone.
    pub misses: usize,
    /// Directions on a wall yet inside an open cone.
    pub wall_in_chamber: usize,
    pub hits_per_chamber: Vec<usize>,
}

/// Classifies every nonzero integer vector with entries in `[-radius, radius]`.
pub fn sample_partition(tq: &TypeAQuiver, radius: i64) -> Result<SampleReport, StabilityError> {
    let n = tq.n();
    let ws = walls(tq)?;
    let cs = chambers(tq)?;
    // g-matrices are unimodular, so membership is an integer computation
    let inverses: Vec<Vec<Vec<i64>>> = cs
        .iter()
        .map(|c| linalg::inverse_int(&linalg::transpose(&c.generators)).expect("unimodular"))
        .collect();
    let int_walls: Vec<(DimVector, Vec<DimVector>)> = ws
        .iter()
        .map(|w| (w.normal.clone(), w.constraints.clone()))
        .collect();
    let mut report = SampleReport {
        hits_per_chamber: vec![0; cs.len()],
        ..SampleReport::default()
    };
    let side = (2 * radius + 1) as usize;
    let total = side.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let theta: Vec<i64> = (0..n)
            .map(|_| {
                let v = (c % side) as i64 - radius;
                c /= side;
                v
            })
            .collect();
        if theta.iter().all(|&v| v == 0) {
            continue;
        }
        report.directions += 1;
        let on_wall = int_walls.iter().any(|(d, subs)| {
            linalg::dot(&theta, d) == 0 && subs.iter().all(|l| linalg::dot(&theta, l) <= 0)
        });
        let inside: Vec<usize> = inverses
            .iter()
            .enumerate()
            .filter(|(_, inv)| linalg::mat_vec(inv, &theta).iter().all(|&x| x > 0))
            .map(|(i, _)| i)
            .collect();
        if on_wall {
            report.on_walls += 1;
            if !inside.is_empty() {
                report.wall_in_chamber += 1;
            }
            continue;
        }
        match inside.len() {
            0 => report.misses += 1,
            1 => {
                report.in_one_chamber += 1;
                report.hits_per_chamber[inside[0]] += 1;
            }
            _ => report.overlaps += 1,
        }
    }
    Ok(report)
}

/// Pairs of chambers sharing a facet, i.e. all but one generator.
pub fn chamber_adjacency(cs: &[Chamber]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            let shared = cs[i]
                .generators
                .iter()
                .filter(|g| cs[j].generators.contains(g))
                .count();
            if shared + 1 == cs[i].generators.len() {
                out.push((i, j));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SvgOptions {
    pub labels: bool,
    /// Polyline samples per great circle in rank 3.
    pub segments: usize,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            labels: true,
            segments: 256,
        }
    }
}

const HALF: f64 = 300.0;

fn svg_header(out: &mut String) {
    out.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"-300 -300 600 600\" width=\"600\" height=\"600\">\n",
    );
    out.push_str("<rect x=\"-300\" y=\"-300\" width=\"600\" height=\"600\" fill=\"white\"/>\n");
}

fn marker(out: &mut String, x: f64, y: f64, label: &str, labels: bool) {
    let _ = writeln!(
        out,
        "<circle class=\"g-vector\" cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"red\"/>"
    );
    if labels {
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" fill=\"red\">g({label})</text>",
            x + 6.0,
            y - 6.0
        );
    }
}

/// Deterministic SVG of the stability picture; rank 2 draws the walls in
/// the plane, rank 3 projects their traces on the unit sphere
/// stereographically from `(1,1,1)/sqrt(3)`.
pub fn render_svg(tq: &TypeAQuiver, options: SvgOptions) -> Result<String, StabilityError> {
    match tq.n() {
        2 => render_rank2(tq, options),
        3 => render_rank3(tq, options),
        n => Err(StabilityError::UnsupportedRank(n)),
    }
}

fn render_rank2(tq: &TypeAQuiver, options: SvgOptions) -> Result<String, StabilityError> {
    let mut out = String::new();
    svg_header(&mut out);
    let reach = 260.0;
    for w in walls(tq)? {
        let dir = [-(w.normal[1] as f64), w.normal[0] as f64];
        let len = dir[0].hypot(dir[1]);
        let unit = [dir[0] / len, dir[1] / len];
        let plus = w.contains_f64(&unit);
        let minus = w.contains_f64(&[-unit[0], -unit[1]]);
        let (from, to) = match (plus, minus) {
            (true, true) => (-reach, reach),
            (true, false) => (0.0, reach),
            (false, true) => (-reach, 0.0),
            (false, false) => continue,
        };
        let kind = if plus && minus { "line" } else { "half-line" };
        let _ = writeln!(
            out,
            "<g class=\"wall\" data-module=\"{}\" data-kind=\"{kind}\"><line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\" stroke-width=\"1\"/>",
            w.module,
            from * unit[0],
            -from * unit[1],
            to * unit[0],
            -to * unit[1]
        );
        if options.labels {
            let end = if plus { reach } else { -reach };
            let _ = writeln!(
                out,
                "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">D({})</text>",
                end * unit[0] + 4.0,
                -end * unit[1] - 4.0,
                w.module
            );
        }
        out.push_str("</g>\n");
    }
    let scale = 120.0;
    for m in tq.objects() {
        let g = tq.g_vector(&m);
        marker(&mut out, g[0] as f64 * scale, -(g[1] as f64) * scale, &m.to_string(), options.labels);
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let len = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / len, v[1] / len, v[2] / len]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

struct Projection {
    pole: [f64; 3],
    e1: [f64; 3],
    e2: [f64; 3],
}

impl Projection {
    fn new() -> Self {
        let pole = normalize([1.0, 1.0, 1.0]);
        let e1 = normalize([1.0, -1.0, 0.0]);
        let e2 = cross(pole, e1);
        Projection { pole, e1, e2 }
    }

    fn project(&self, s: [f64; 3]) -> (f64, f64) {
        let d = 1.0 - dot3(s, self.pole);
        (dot3(s, self.e1) / d, dot3(s, self.e2) / d)
    }
}

fn render_rank3(tq: &TypeAQuiver, options: SvgOptions) -> Result<String, StabilityError> {
    let proj = Projection::new();
    let segments = options.segments.max(64);
    let mut curves: Vec<(ModuleDesc, Vec<Vec<(f64, f64)>>)> = Vec::new();
    for w in walls(tq)? {
        let nrm = normalize([w.normal[0] as f64, w.normal[1] as f64, w.normal[2] as f64]);
        let seed = if nrm[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let a = normalize(cross(nrm, seed));
        let b = cross(nrm, a);
        let pts: Vec<([f64; 3], bool)> = (0..segments)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / segments as f64;
                let s = [
                    t.cos() * a[0] + t.sin() * b[0],
                    t.cos() * a[1] + t.sin() * b[1],
                    t.cos() * a[2] + t.sin() * b[2],
                ];
                (s, w.contains_f64(&s))
            })
            .collect();
        let mut runs: Vec<Vec<[f64; 3]>> = Vec::new();
        if pts.iter().all(|p| p.1) {
            let mut full: Vec<[f64; 3]> = pts.iter().map(|p| p.0).collect();
            full.push(pts[0].0);
            runs.push(full);
        } else {
            // start right after a rejected sample so no run wraps around
            let start = pts.iter().position(|p| !p.1).expect("some sample rejected");
            let mut cur: Vec<[f64; 3]> = Vec::new();
            for k in 1..=segments {
                let (s, ok) = pts[(start + k) % segments];
                if ok {
                    cur.push(s);
                } else if !cur.is_empty() {
                    runs.push(std::mem::take(&mut cur));
                }
            }
            if !cur.is_empty() {
                runs.push(cur);
            }
        }
        let projected = runs
            .into_iter()
            .map(|r| r.into_iter().map(|s| proj.project(s)).collect())
            .collect();
        curves.push((w.module, projected));
    }
    let markers: Vec<(String, (f64, f64))> = tq
        .objects()
        .into_iter()
        .map(|m| {
            let g = tq.g_vector(&m);
            let s = normalize([g[0] as f64, g[1] as f64, g[2] as f64]);
            (m.to_string(), proj.project(s))
        })
        .collect();
    let extent = curves
        .iter()
        .flat_map(|(_, runs)| runs.iter().flatten())
        .chain(markers.iter().map(|(_, p)| p))
        .fold(0.0f64, |acc, &(x, y)| acc.max(x.abs()).max(y.abs()));
    let scale = (HALF - 30.0) / extent;

    let mut out = String::new();
    svg_header(&mut out);
    for (module, runs) in &curves {
        let _ = writeln!(out, "<g class=\"wall\" data-module=\"{module}\">");
        for run in runs {
            let pts: Vec<String> = run
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", x * scale, -y * scale))
                .collect();
            let _ = writeln!(
                out,
                "<polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>",
                pts.join(" ")
            );
        }
        if options.labels {
            if let Some(&(x, y)) = runs.first().and_then(|r| r.get(r.len() / 2)) {
                let _ = writeln!(
                    out,
                    "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\">D({module})</text>",
                    x * scale + 4.0,
                    -y * scale - 4.0
                );
            }
        }
        out.push_str("</g>\n");
    }
    for (label, (x, y)) in &markers {
        marker(&mut out, x * scale, -y * scale, label, options.labels);
    }
    out.push_str("</svg>\n");
    Ok(out)
}
