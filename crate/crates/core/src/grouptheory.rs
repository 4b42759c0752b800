//! Closed-form structure results: Fan's direct sum for acyclic graphs, the
//! Oka-Sakamoto splitting, and a semidirect-product presentation.

use std::fmt;

use thiserror::Error;

use crate::braid::Word;
use crate::geom::{compute_lattice, Arrangement, GeomError, UnionFind};
use crate::vankampen::{CyclicRelation, Kind, Presentation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("graph of multiple points has first Betti number {0}; the formula needs a forest")]
    NotAForest(usize),
    #[error("inconsistent input: free abelian rank {0} is negative")]
    NegativeRank(i64),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// `Z^r (+) F_a (+) F_b ...`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupDescriptor {
    pub free_abelian_rank: usize,
    pub free_factors: Vec<usize>,
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_abelian_rank > 0 {
            parts.push(format!("Z^{}", self.free_abelian_rank));
        }
        parts.extend(self.free_factors.iter().map(|a| format!("F_{a}")));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" (+) "))
        }
    }
}

/// Fan's formula for the projective group when the graph of multiple points
/// is a forest: `r = n + p - 1 - sum m(a_i)` and one `F_{m(a_i) - 1}` per
/// multiple point. Multiplicities below 3 are ignored.
pub fn fan_structure(n: usize, multiplicities: &[usize], betti: usize) -> Result<GroupDescriptor, StructureError> {
    if betti != 0 {
        return Err(StructureError::NotAForest(betti));
    }
    let multiple: Vec<usize> = multiplicities.iter().copied().filter(|&m| m >= 3).collect();
    let r = n as i64 + multiple.len() as i64 - 1 - multiple.iter().sum::<usize>() as i64;
    if r < 0 {
        return Err(StructureError::NegativeRank(r));
    }
    Ok(GroupDescriptor {
        free_abelian_rank: r as usize,
        free_factors: multiple.iter().map(|m| m - 1).collect(),
    })
}

/// Presentation of a descriptor: central generators first, then the free
/// blocks in order. Central generators commute with everything; generators
/// in different blocks commute.
pub fn materialize(d: &GroupDescriptor) -> Presentation {
    let r = d.free_abelian_rank;
    let mut block_of = vec![None; r];
    for (b, &a) in d.free_factors.iter().enumerate() {
        block_of.extend(std::iter::repeat_n(Some(b), a));
    }
    let n = block_of.len();
    let mut relations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let commute = i < r || block_of[i] != block_of[j];
            if commute {
                relations.push(CyclicRelation::of_generators(&[i + 1, j + 1]));
            }
        }
    }
    Presentation::new(n, Kind::Projective, relations)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Split {
    /// 0-based line indices per part; parts ordered by their least line.
    Parts(Vec<Vec<usize>>),
    NotApplicable,
}

/// The finest partition of the lines such that lines in different parts
/// meet only in simple points (and are not parallel).
pub fn oka_sakamoto_split(arr: &Arrangement) -> Result<Split, StructureError> {
    let n = arr.lines.len();
    let lat = compute_lattice(arr)?;
    let mut uf = UnionFind::new(n);
    for p in lat.points.iter().filter(|p| p.multiplicity() >= 3) {
        for w in p.incident.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if arr.lines[i].is_parallel(&arr.lines[j]) {
                uf.union(i, j);
            }
        }
    }
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut root_part = std::collections::HashMap::new();
    for l in 0..n {
        let r = uf.find(l);
        let k = *root_part.entry(r).or_insert_with(|| {
            parts.push(Vec::new());
            parts.len() - 1
        });
        parts[k].push(l);
    }
    if parts.len() < 2 {
        return Ok(Split::NotApplicable);
    }
    Ok(Split::Parts(parts))
}

/// The direct sum: generators of the parts side by side, each part's
/// relations shifted, and commutators between generators of different
/// parts.
pub fn direct_sum(parts: &[Presentation]) -> Presentation {
    let mut offset = 0;
    let mut ranges = Vec::new();
    let mut relations = Vec::new();
    let mut equations = Vec::new();
    for p in parts {
        let map: Vec<usize> = (1..=p.ngens).map(|g| g + offset).collect();
        relations.extend(p.relations.iter().map(|r| r.map_words(|w| w.relabel(&map))));
        equations.extend(p.equations.iter().map(|(l, r)| (l.relabel(&map), r.relabel(&map))));
        ranges.push(offset + 1..=offset + p.ngens);
        offset += p.ngens;
    }
    for (a, ra) in ranges.iter().enumerate() {
        for rb in &ranges[a + 1..] {
            for i in ra.clone() {
                for j in rb.clone() {
                    relations.push(CyclicRelation::of_generators(&[i, j]));
                }
            }
        }
    }
    let kind = parts.first().map_or(Kind::Affine, |p| p.kind);
    Presentation {
        ngens: offset,
        kind,
        relations,
        equations,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SemidirectVariant {
    Ceva,
    Triangle,
}

const X: usize = 1;
const Y: usize = 2;
const Z: usize = 3;
const T: usize = 4;
const S: usize = 5;
const U: usize = 6;

/// Generator names in order.
pub const SEMIDIRECT_NAMES: [&str; 6] = ["x", "y", "z", "t", "s", "u"];

fn word(letters: &[i32]) -> Word {
    Word::from_signed(letters)
}

/// The iterated semidirect product `F_3 ⋊ F_2 ⋊ F_1` with `F_3 = <x,y,z>`,
/// `F_2 = <t,s>`, `F_1 = <u>`, as generators `x1..x6 = x, y, z, t, s, u` and
/// one equation `g w g^-1 = α(g)(w)` per listed action. The triangle variant
/// makes `s` act trivially and adds `[x, z]`.
pub fn semidirect_fixture(variant: SemidirectVariant) -> Presentation {
    let (x, y, z, t, s) = (X as i32, Y as i32, Z as i32, T as i32, S as i32);
    let mut actions: Vec<(usize, usize, Word)> = vec![
        (U, T, word(&[s, t, -s])),
        (U, S, word(&[s, t, s, -t, -s])),
        (U, X, word(&[x])),
        (U, Y, word(&[z, y, -z])),
        (U, Z, word(&[z, y, z, -y, -z])),
    ];
    match variant {
        SemidirectVariant::Ceva => actions.extend([
            (S, X, word(&[z, x, -z])),
            (S, Y, word(&[z, x, -z, -x, y, x, z, -x, -z])),
            (S, Z, word(&[z, x, z, -x, -z])),
        ]),
        SemidirectVariant::Triangle => actions.extend([
            (S, X, word(&[x])),
            (S, Y, word(&[y])),
            (S, Z, word(&[z])),
        ]),
    }
    actions.extend([
        (T, X, word(&[y, x, -y])),
        (T, Y, word(&[y, x, y, -x, -y])),
        (T, Z, word(&[z])),
    ]);
    let equations = actions
        .into_iter()
        .map(|(g, w, img)| (Word::generator(w).conjugate_by(&Word::generator(g)), img))
        .collect();
    let relations = match variant {
        SemidirectVariant::Ceva => vec![],
        SemidirectVariant::Triangle => vec![CyclicRelation::of_generators(&[X, Z])],
    };
    Presentation {
        ngens: 6,
        kind: Kind::Affine,
        relations,
        equations,
    }
}
