//! Shared fixtures and reference data for the integration tests.
#![allow(dead_code)]

use linegroup::braid::Word;
use linegroup::fixtures;
use linegroup::geom::{compute_lattice, parse_arrangement, Arrangement, IntersectionLattice};
use linegroup::vankampen::{presentation, pull_down, CyclicRelation, Presentation};
use linegroup::wiring::{genericize, sweep, PairList, Sweep};

/// Everything the pipeline derives from one arrangement.
pub struct Pipeline {
    pub arr: Arrangement,
    pub lat: IntersectionLattice,
    pub sweep: Sweep,
    pub pres: Presentation,
}

pub fn pipeline(text: &str) -> Pipeline {
    let arr = parse_arrangement(text).expect("arrangement parses");
    let (generic, _) = genericize(&arr).expect("genericizes");
    let lat = compute_lattice(&generic).expect("lattice");
    let sweep = sweep(&generic).expect("sweeps");
    let pres = presentation(&sweep.pairs).expect("presentation");
    Pipeline { arr, lat, sweep, pres }
}

pub fn fixture(name: &str) -> Pipeline {
    let text = fixtures::ALL
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .expect("known fixture");
    pipeline(text)
}

pub const TRIANGLE_PAIRS: [(usize, usize); 9] =
    [(2, 3), (1, 2), (2, 4), (4, 6), (3, 4), (4, 5), (2, 3), (1, 2), (2, 4)];

pub const CYCLE5_PAIRS: [(usize, usize); 35] = [
    (6, 7), (5, 6), (7, 8), (6, 7), (4, 5), (3, 4), (5, 6), (4, 5), (2, 3), (1, 2),
    (2, 4), (4, 6), (6, 7), (7, 8), (3, 4), (4, 5), (5, 6), (6, 7), (4, 6), (3, 4),
    (4, 5), (8, 9), (7, 8), (9, 10), (8, 9), (6, 7), (5, 6), (7, 8), (6, 7), (4, 6),
    (3, 4), (4, 5), (2, 3), (1, 2), (2, 4),
];

/// The 8-pair list drawn for the 5-line wiring example.
pub const WIRING5_PAIRS: [(usize, usize); 8] =
    [(4, 5), (2, 4), (1, 2), (4, 5), (2, 3), (3, 4), (4, 5), (2, 3)];

fn x(g: usize) -> Word {
    Word::generator(g)
}

/// `u x_g u^-1` where `u` is the product of the listed signed generators.
fn conj(u: &[i32], g: usize) -> Word {
    x(g).conjugate_by(&Word::from_signed(u))
}

/// `x_lo^-1 x_{lo+1}^-1 ... x_hi^-1`, empty when `lo > hi`.
fn inv_run(lo: usize, hi: usize) -> Vec<i32> {
    (lo..=hi).map(|k| -(k as i32)).collect()
}

/// `x_hi x_{hi-1} ... x_lo`, empty when `lo > hi`.
fn desc_run(hi: usize, lo: usize) -> Vec<i32> {
    (lo..=hi).rev().map(|k| k as i32).collect()
}

fn rel(words: Vec<Word>) -> CyclicRelation {
    pull_down(&words)
}

/// The six relation families of the triangle arrangement with `3n` lines, normalized the
/// same way as the pipeline output.
pub fn triangle_family(n: usize) -> Vec<CyclicRelation> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in n + 1..=2 * n - 1 {
            out.push(rel(vec![x(i), conj(&inv_run(n + 1, j - 1), j)]));
        }
    }
    let mut second: Vec<Word> = (1..=n).map(x).collect();
    second.push(conj(&inv_run(n + 1, 2 * n - 1), 2 * n));
    out.push(rel(second));
    let mut third = vec![conj(&desc_run(2 * n, 2), 1)];
    third.extend((2 * n + 1..=3 * n).map(x));
    out.push(rel(third));
    for i in 2..=n {
        for j in 2 * n + 1..=3 * n {
            out.push(rel(vec![conj(&desc_run(2 * n, i + 1), i), x(j)]));
        }
    }
    for i in n + 1..=2 * n {
        for j in 2 * n + 2..=3 * n {
            out.push(rel(vec![x(i), x(j)]));
        }
    }
    out.push(rel((n + 1..=2 * n + 1).map(x).collect()));
    out.sort();
    out
}

/// The Q1, Q2, T1, T2, T3 and T4 families of the cycle arrangement with
/// `2n` lines, as given by the general formulas.
pub fn cycle_family(n: usize) -> Vec<CyclicRelation> {
    let mut out = Vec::new();
    let (a, b) = (2 * n - 3, 2 * n - 2);
    // Q1
    for i in 2..=n - 2 {
        out.push(rel(vec![x(2 * i), x(a)]));
        out.push(rel(vec![x(2 * i - 1), x(a)]));
        out.push(rel(vec![x(2 * i), conj(&[-(a as i32)], b)]));
        out.push(rel(vec![x(2 * i - 1), conj(&[-(a as i32)], b)]));
    }
    // Q2
    for i in 1..=n {
        for j in i + 2..=n {
            if i == n - 1 || j == n - 1 || (i, j) == (n - 2, n) {
                continue;
            }
            out.push(rel(vec![x(2 * i), conj(&inv_run(2 * i + 1, 2 * j - 1), 2 * j)]));
            out.push(rel(vec![x(2 * i - 1), conj(&inv_run(2 * i, 2 * j - 1), 2 * j)]));
            out.push(rel(vec![x(2 * i), conj(&inv_run(2 * i + 1, 2 * j - 2), 2 * j - 1)]));
            out.push(rel(vec![x(2 * i - 1), conj(&inv_run(2 * i, 2 * j - 2), 2 * j - 1)]));
        }
    }
    // T1
    out.push(rel(vec![x(2), x(a)]));
    out.push(rel(vec![x(1), x(a)]));
    out.push(rel(vec![x(1), x(2), conj(&[-(a as i32)], b)]));
    // T2
    for i in 1..=n - 3 {
        out.push(rel(vec![conj(&[2 * i as i32], 2 * i - 1), x(2 * i + 1), x(2 * i + 2)]));
        out.push(rel(vec![x(2 * i), x(2 * i + 2)]));
        out.push(rel(vec![x(2 * i), x(2 * i + 1)]));
    }
    // T3
    let m = 2 * n;
    out.push(rel(vec![conj(&desc_run(m - 2, m - 4), m - 5), x(m - 1), x(m)]));
    out.push(rel(vec![x(m - 4), conj(&inv_run(m - 3, m - 2), m)]));
    out.push(rel(vec![x(m - 4), conj(&inv_run(m - 3, m - 2), m - 1)]));
    // T4
    out.push(rel(vec![x(m - 2), x(m)]));
    out.push(rel(vec![x(m - 3), x(m)]));
    out.push(rel(vec![x(m - 3), x(m - 2), x(m - 1)]));
    out.sort();
    out
}

pub fn pairs_of(pl: &PairList) -> Vec<(usize, usize)> {
    pl.pairs.iter().map(|p| (p.a, p.b)).collect()
}
pub mod props;
