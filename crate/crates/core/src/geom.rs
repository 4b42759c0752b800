//! Exact rational plane geometry: lines, the intersection lattice and the
//! graph of multiple points.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

/// Exact rational number. Always in lowest terms with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("line {line}: malformed rational `{token}`")]
    MalformedRational { line: usize, token: String },
    #[error("line {line}: expected 3 coefficients `a b c`, found {found}")]
    WrongArity { line: usize, found: usize },
    #[error("line {line}: degenerate line (a = b = 0)")]
    Degenerate { line: usize },
    #[error("line {line}: duplicate of line {first}")]
    Duplicate { line: usize, first: usize },
    #[error("arrangement is empty")]
    Empty,
}

impl GeomError {
    /// Stable numeric code per error kind.
    pub fn code(&self) -> u8 {
        match self {
            GeomError::MalformedRational { .. } => 10,
            GeomError::WrongArity { .. } => 11,
            GeomError::Degenerate { .. } => 12,
            GeomError::Duplicate { .. } => 13,
            GeomError::Empty => 14,
        }
    }
}

/// The line `a·x + b·y = c`, normalized so that the first nonzero of `(a, b)`
/// equals 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl Line {
    /// Returns `None` for the degenerate case `a = b = 0`.
    pub fn new(a: Rational, b: Rational, c: Rational) -> Option<Line> {
        let lead = if !a.is_zero() {
            a.clone()
        } else if !b.is_zero() {
            b.clone()
        } else {
            return None;
        };
        Some(Line {
            a: a / &lead,
            b: b / &lead,
            c: c / &lead,
        })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Option<Line> {
        Line::new(int(a), int(b), int(c))
    }

    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        (&self.a * x + &self.b * y - &self.c).is_zero()
    }

    pub fn is_vertical(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_parallel(&self, other: &Line) -> bool {
        (&self.a * &other.b - &self.b * &other.a).is_zero()
    }

    /// The unique common point, or `None` for parallel lines.
    pub fn intersect(&self, other: &Line) -> Option<(Rational, Rational)> {
        let det = &self.a * &other.b - &self.b * &other.a;
        if det.is_zero() {
            return None;
        }
        let x = (&self.c * &other.b - &self.b * &other.c) / &det;
        let y = (&self.a * &other.c - &self.c * &other.a) / &det;
        Some((x, y))
    }

    /// Position of a point along the direction vector `(-b, a)`.
    pub fn parameter(&self, x: &Rational, y: &Rational) -> Rational {
        -&self.b * x + &self.a * y
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.a, self.b, self.c)
    }
}

pub(crate) fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// An ordered collection of pairwise distinct lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    pub lines: Vec<Line>,
}

impl Arrangement {
    /// Builds an arrangement, rejecting duplicates. Error line numbers are
    /// 1-based positions in `lines`.
    pub fn new(lines: Vec<Line>) -> Result<Arrangement, GeomError> {
        for (i, l) in lines.iter().enumerate() {
            if let Some(j) = lines[..i].iter().position(|m| m == l) {
                return Err(GeomError::Duplicate {
                    line: i + 1,
                    first: j + 1,
                });
            }
        }
        Ok(Arrangement { lines })
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn has_parallels(&self) -> bool {
        let n = self.lines.len();
        (0..n).any(|i| (i + 1..n).any(|j| self.lines[i].is_parallel(&self.lines[j])))
    }

    /// The arrangement file rendering: one `a b c` line per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for l in &self.lines {
            s.push_str(&l.to_string());
            s.push('\n');
        }
        s
    }
}

fn parse_rational(tok: &str) -> Option<Rational> {
    let (n, d) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Parses the arrangement file format: `a b c` per line, `#` comments,
/// blank lines ignored. Error line numbers refer to the file.
pub fn parse_arrangement(text: &str) -> Result<Arrangement, GeomError> {
    let mut lines: Vec<Line> = Vec::new();
    let mut file_lines: Vec<usize> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let lineno = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(GeomError::WrongArity {
                line: lineno,
                found: toks.len(),
            });
        }
        let mut coeffs = Vec::with_capacity(3);
        for t in toks {
            coeffs.push(parse_rational(t).ok_or_else(|| GeomError::MalformedRational {
                line: lineno,
                token: t.to_string(),
            })?);
        }
        let c = coeffs.pop().unwrap();
        let b = coeffs.pop().unwrap();
        let a = coeffs.pop().unwrap();
        let line = Line::new(a, b, c).ok_or(GeomError::Degenerate { line: lineno })?;
        if let Some(j) = lines.iter().position(|m| *m == line) {
            return Err(GeomError::Duplicate {
                line: lineno,
                first: file_lines[j],
            });
        }
        lines.push(line);
        file_lines.push(lineno);
    }
    Ok(Arrangement { lines })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionPoint {
    pub x: Rational,
    pub y: Rational,
    /// Sorted 0-based line indices.
    pub incident: Vec<usize>,
}

impl IntersectionPoint {
    pub fn multiplicity(&self) -> usize {
        self.incident.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionLattice {
    /// Points sorted by `(x, y)`.
    pub points: Vec<IntersectionPoint>,
    pub n: usize,
}

impl IntersectionLattice {
    /// Number of multiple points (multiplicity at least 3).
    pub fn p(&self) -> usize {
        self.points.iter().filter(|q| q.multiplicity() >= 3).count()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.points.iter().map(|q| q.multiplicity()).collect()
    }
}

/// All pairwise intersections, with coincident points merged.
pub fn compute_lattice(arr: &Arrangement) -> Result<IntersectionLattice, GeomError> {
    if arr.is_empty() {
        return Err(GeomError::Empty);
    }
    let n = arr.lines.len();
    let mut merged: BTreeMap<(Rational, Rational), Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            if let Some(pt) = arr.lines[i].intersect(&arr.lines[j]) {
                let inc = merged.entry(pt).or_default();
                for k in [i, j] {
                    if let Err(pos) = inc.binary_search(&k) {
                        inc.insert(pos, k);
                    }
                }
            }
        }
    }
    let points = merged
        .into_iter()
        .map(|((x, y), incident)| IntersectionPoint { x, y, incident })
        .collect();
    Ok(IntersectionLattice { points, n })
}

/// Fan's graph: vertices are multiple points, edges join consecutive
/// multiple points along a line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipleGraph {
    /// Indices into the lattice's point list.
    pub vertices: Vec<usize>,
    /// `(u, v, line)` with `u`, `v` lattice point indices.
    pub edges: Vec<(usize, usize, usize)>,
    pub betti: usize,
}

pub fn multiple_point_graph(arr: &Arrangement, lat: &IntersectionLattice) -> MultipleGraph {
    let vertices: Vec<usize> = (0..lat.points.len())
        .filter(|&k| lat.points[k].multiplicity() >= 3)
        .collect();
    let mut edges = Vec::new();
    for (li, line) in arr.lines.iter().enumerate() {
        let mut on: Vec<(Rational, usize)> = vertices
            .iter()
            .filter(|&&v| lat.points[v].incident.binary_search(&li).is_ok())
            .map(|&v| (line.parameter(&lat.points[v].x, &lat.points[v].y), v))
            .collect();
        on.sort();
        for w in on.windows(2) {
            let (u, v) = (w[0].1.min(w[1].1), w[0].1.max(w[1].1));
            edges.push((u, v, li));
        }
    }
    edges.sort();
    let betti = graph_betti(&vertices, &edges);
    MultipleGraph {
        vertices,
        edges,
        betti,
    }
}

/// `|E| - |V| + #components`.
pub fn graph_betti(vertices: &[usize], edges: &[(usize, usize, usize)]) -> usize {
    let mut uf = UnionFind::new(vertices.iter().copied().max().map_or(0, |m| m + 1));
    let mut components = vertices.len();
    for &(u, v, _) in edges {
        if uf.union(u, v) {
            components -= 1;
        }
    }
    edges.len() + components - vertices.len()
}

/// Minimal union-find over `0..n`.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if two distinct classes were merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }
}
