//! Genericizing projection, right-to-left sweep, Lefschetz pairs and the
//! wiring diagram.

use std::fmt::{self, Write as _};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::geom::{compute_lattice, Arrangement, GeomError, Line, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WiringError {
    #[error("lines {0} and {1} are parallel")]
    Parallel(usize, usize),
    #[error("no generic shear found among {0} candidates")]
    Exhausted(usize),
    #[error("arrangement is not generic: {0}")]
    NotGeneric(String),
    #[error("pair {index}: [{a},{b}] out of range for {ell} wires")]
    OutOfRange {
        index: usize,
        a: usize,
        b: usize,
        ell: usize,
    },
    #[error("pair count mismatch: crossings sum to {found}, expected {expected}")]
    CountMismatch { found: usize, expected: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// The interval `[a, b]` of wire positions meeting at one point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LefschetzPair {
    pub a: usize,
    pub b: usize,
}

impl LefschetzPair {
    pub fn multiplicity(self) -> usize {
        self.b - self.a + 1
    }
}

/// Lefschetz pairs in sweep order (rightmost point first).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairList {
    pub ell: usize,
    pub pairs: Vec<LefschetzPair>,
}

impl PairList {
    pub fn from_tuples(ell: usize, pairs: &[(usize, usize)]) -> PairList {
        PairList {
            ell,
            pairs: pairs.iter().map(|&(a, b)| LefschetzPair { a, b }).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Wire labels (positions at `x = +inf`) meeting at each point, in
    /// increasing position at the point.
    pub fn point_wires(&self) -> Vec<Vec<usize>> {
        let mut order: Vec<usize> = (1..=self.ell).collect();
        let mut out = Vec::with_capacity(self.pairs.len());
        for p in &self.pairs {
            let slice = &mut order[p.a - 1..p.b];
            out.push(slice.to_vec());
            slice.reverse();
        }
        out
    }
}

impl fmt::Display for PairList {
    /// The pairs file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ell={}", self.ell)?;
        for p in &self.pairs {
            writeln!(f, "{} {}", p.a, p.b)?;
        }
        Ok(())
    }
}

/// Parses the pairs file format: `ell=<n>` then one `a b` per line.
pub fn parse_pairs(text: &str) -> Result<PairList, WiringError> {
    let mut ell: Option<usize> = None;
    let mut pairs = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |msg: &str| WiringError::Parse {
            line,
            msg: msg.to_string(),
        };
        match ell {
            None => {
                let v = body
                    .strip_prefix("ell=")
                    .ok_or_else(|| err("expected header `ell=<n>`"))?;
                ell = Some(v.trim().parse().map_err(|_| err("malformed wire count"))?);
            }
            Some(_) => {
                let toks: Vec<&str> = body.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err(err("expected `a b`"));
                }
                let a = toks[0].parse().map_err(|_| err("malformed index"))?;
                let b = toks[1].parse().map_err(|_| err("malformed index"))?;
                pairs.push(LefschetzPair { a, b });
            }
        }
    }
    let ell = ell.ok_or(WiringError::Parse {
        line: 0,
        msg: "missing header `ell=<n>`".into(),
    })?;
    let pl = PairList { ell, pairs };
    validate_pairs(&pl, false)?;
    Ok(pl)
}

/// Checks index ranges; with `complete`, also checks that the crossings
/// account for every pair of wires exactly once.
pub fn validate_pairs(pl: &PairList, complete: bool) -> Result<(), WiringError> {
    let mut crossings = 0usize;
    for (k, p) in pl.pairs.iter().enumerate() {
        if p.a == 0 || p.a >= p.b || p.b > pl.ell {
            return Err(WiringError::OutOfRange {
                index: k + 1,
                a: p.a,
                b: p.b,
                ell: pl.ell,
            });
        }
        let m = p.multiplicity();
        crossings += m * (m - 1) / 2;
    }
    let expected = pl.ell * pl.ell.saturating_sub(1) / 2;
    if complete && crossings != expected {
        return Err(WiringError::CountMismatch {
            found: crossings,
            expected,
        });
    }
    if crossings > expected {
        return Err(WiringError::CountMismatch {
            found: crossings,
            expected,
        });
    }
    Ok(())
}

/// The shear `x' = x + t·y`; its inverse is `x = x' - t·y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transform {
    pub t: Rational,
}

impl Transform {
    pub fn is_identity(&self) -> bool {
        self.t.is_zero()
    }

    pub fn apply_line(&self, l: &Line) -> Line {
        Line::new(l.a.clone(), &l.b - &l.a * &self.t, l.c.clone()).expect("shear is invertible")
    }

    pub fn apply_point(&self, x: &Rational, y: &Rational) -> (Rational, Rational) {
        (x + &self.t * y, y.clone())
    }

    pub fn inverse(&self) -> Transform {
        Transform { t: -&self.t }
    }
}

/// Shear parameters tried in order: `0`, then the Calkin-Wilf sequence
/// `1, 1/2, 2, 1/3, 3/2, 2/3, 3, ...` which lists every positive rational
/// exactly once.
pub fn shear_candidates() -> impl Iterator<Item = Rational> {
    let first = std::iter::once(Rational::zero());
    let cw = std::iter::successors(Some(Rational::one()), |q: &Rational| {
        let two_floor = q.floor() * Rational::from_integer(2.into());
        Some((two_floor - q + Rational::one()).recip())
    });
    first.chain(cw)
}

const MAX_SHEARS: usize = 100_000;

/// Finds the first shear making all intersection x-coordinates distinct and
/// no line vertical.
pub fn genericize(arr: &Arrangement) -> Result<(Arrangement, Transform), WiringError> {
    let n = arr.lines.len();
    for i in 0..n {
        for j in i + 1..n {
            if arr.lines[i].is_parallel(&arr.lines[j]) {
                return Err(WiringError::Parallel(i + 1, j + 1));
            }
        }
    }
    let lat = compute_lattice(arr)?;
    'outer: for t in shear_candidates().take(MAX_SHEARS) {
        if arr.lines.iter().any(|l| (&l.b - &l.a * &t).is_zero()) {
            continue;
        }
        let mut xs: Vec<Rational> = lat.points.iter().map(|p| &p.x + &t * &p.y).collect();
        xs.sort();
        for w in xs.windows(2) {
            if w[0] == w[1] {
                continue 'outer;
            }
        }
        let tr = Transform { t };
        let lines = arr.lines.iter().map(|l| tr.apply_line(l)).collect();
        return Ok((Arrangement { lines }, tr));
    }
    Err(WiringError::Exhausted(MAX_SHEARS))
}

/// Result of sweeping a generic arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sweep {
    pub pairs: PairList,
    /// `wire_lines[k]` is the 0-based line index of wire `k + 1` at `x = +inf`.
    pub wire_lines: Vec<usize>,
    /// 0-based line indices through each point, in sweep order.
    pub point_lines: Vec<Vec<usize>>,
}

impl Sweep {
    /// `ordering[line]` is the 1-based wire index of each line.
    pub fn natural_ordering(&self) -> Vec<usize> {
        let mut ord = vec![0; self.wire_lines.len()];
        for (k, &l) in self.wire_lines.iter().enumerate() {
            ord[l] = k + 1;
        }
        ord
    }
}

/// Sweeps right-to-left. Wires are numbered bottom-to-top at `x = +inf`.
pub fn sweep(arr: &Arrangement) -> Result<Sweep, WiringError> {
    if let Some(k) = arr.lines.iter().position(|l| l.is_vertical()) {
        return Err(WiringError::NotGeneric(format!("line {} is vertical", k + 1)));
    }
    let n = arr.lines.len();
    // y = slope·x + intercept with slope = -a/b, intercept = c/b.
    let key = |l: &Line| (-(&l.a / &l.b), &l.c / &l.b);
    let mut wire_lines: Vec<usize> = (0..n).collect();
    wire_lines.sort_by_key(|&i| key(&arr.lines[i]));
    let mut lat = compute_lattice(arr)?;
    lat.points.sort_by(|p, q| q.x.cmp(&p.x));
    for w in lat.points.windows(2) {
        if w[0].x == w[1].x {
            return Err(WiringError::NotGeneric(format!(
                "two intersection points share x = {}",
                w[0].x
            )));
        }
    }
    let mut order = wire_lines.clone();
    let mut pairs = Vec::with_capacity(lat.points.len());
    let mut point_lines = Vec::with_capacity(lat.points.len());
    for p in &lat.points {
        let mut pos: Vec<usize> = p
            .incident
            .iter()
            .map(|l| order.iter().position(|m| m == l).expect("line present"))
            .collect();
        pos.sort();
        let (a, b) = (pos[0], *pos.last().unwrap());
        if b - a + 1 != pos.len() {
            return Err(WiringError::NotGeneric(
                "wires through a point are not adjacent".into(),
            ));
        }
        pairs.push(LefschetzPair { a: a + 1, b: b + 1 });
        point_lines.push(order[a..=b].to_vec());
        order[a..=b].reverse();
    }
    Ok(Sweep {
        pairs: PairList { ell: n, pairs },
        wire_lines,
        point_lines,
    })
}

/// Genericizes and sweeps.
pub fn lefschetz_pairs(arr: &Arrangement) -> Result<PairList, WiringError> {
    let (g, _) = genericize(arr)?;
    Ok(sweep(&g)?.pairs)
}

const STATION: f64 = 40.0;
const WIRE_GAP: f64 = 30.0;
const MARGIN: f64 = 40.0;

/// Renders the wiring diagram. Station 1 (the first pair of the sweep) sits on
/// the right; wires are labelled by their index at `x = +inf`.
pub fn wiring_svg(pl: &PairList) -> String {
    let stations = pl.pairs.len();
    let width = 2.0 * MARGIN + STATION * (stations as f64 + 1.0);
    let height = 2.0 * MARGIN + WIRE_GAP * (pl.ell.max(1) as f64 - 1.0) + 20.0;
    let ypos = |k: usize| height - MARGIN - WIRE_GAP * (k as f64 - 1.0);
    let xpos = |s: usize| width - MARGIN - STATION * (s as f64 + 0.5);
    // position[w] for wire label w, updated station by station.
    let mut position: Vec<usize> = (0..=pl.ell).collect();
    let mut paths: Vec<Vec<(f64, f64)>> = (0..=pl.ell)
        .map(|w| vec![(width - MARGIN, ypos(w.max(1)))])
        .collect();
    for (s, p) in pl.pairs.iter().enumerate() {
        let x_in = xpos(s) + STATION * 0.25;
        let x_out = xpos(s) - STATION * 0.25;
        for w in 1..=pl.ell {
            let k = position[w];
            paths[w].push((x_in, ypos(k)));
            if k >= p.a && k <= p.b {
                position[w] = p.a + p.b - k;
            }
            paths[w].push((x_out, ypos(position[w])));
        }
    }
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (w, path) in paths.iter_mut().enumerate().skip(1) {
        path.push((MARGIN, path.last().unwrap().1));
        let pts: Vec<String> = path.iter().map(|(x, y)| format!("{x:.1},{y:.1}")).collect();
        let _ = writeln!(
            svg,
            r#"<polyline class="wire" fill="none" stroke="black" stroke-width="1.5" points="{}"/>"#,
            pts.join(" ")
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" font-size="12" font-family="monospace">{w}</text>"#,
            width - MARGIN + 6.0,
            ypos(w) + 4.0
        );
    }
    for (s, p) in pl.pairs.iter().enumerate() {
        let _ = writeln!(
            svg,
            r#"<text class="station" x="{:.1}" y="{:.1}" font-size="9" font-family="monospace" text-anchor="middle">{},{}</text>"#,
            xpos(s),
            MARGIN / 2.0,
            p.a,
            p.b
        );
    }
    svg.push_str("</svg>\n");
    svg
}
