//! Abelianization through the Smith normal form of the relation matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::vankampen::Presentation;

/// Rank and torsion of the abelianization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abelianization {
    pub rank: usize,
    /// Invariant factors greater than 1.
    pub torsion: Vec<BigInt>,
}

impl Abelianization {
    pub fn torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

pub fn abelianization(p: &Presentation) -> Abelianization {
    let rows: Vec<Vec<BigInt>> = p
        .relators()
        .iter()
        .map(|w| w.exponent_vector(p.ngens).into_iter().map(BigInt::from).collect())
        .collect();
    let diag = smith_diagonal(rows, p.ngens);
    let nonzero: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_zero()).collect();
    Abelianization {
        rank: p.ngens - nonzero.len(),
        torsion: nonzero.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// Nonzero diagonal of the Smith normal form, each entry positive and
/// dividing the next.
pub fn smith_diagonal(mut m: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        // Clear row and column t; restart whenever a smaller remainder shows up.
        let mut clean = true;
        for i in t + 1..rows {
            if m[i][t].is_zero() {
                continue;
            }
            let q = m[i][t].div_floor(&m[t][t]);
            let (head, tail) = m.split_at_mut(i);
            for (a, b) in tail[0][t..cols].iter_mut().zip(&head[t][t..cols]) {
                *a -= b * &q;
            }
            if !m[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if m[t][j].is_zero() {
                continue;
            }
            let q = m[t][j].div_floor(&m[t][t]);
            for row in m.iter_mut().skip(t) {
                let v = &row[t] * &q;
                row[j] -= v;
            }
            if !m[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // Divisibility: fold any entry not divisible by the pivot into row t.
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&m[i][j] % &m[t][t]).is_zero())) {
            let (head, tail) = m.split_at_mut(i);
            for (a, b) in head[t].iter_mut().zip(&tail[0]) {
                *a += b;
            }
            continue;
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}
