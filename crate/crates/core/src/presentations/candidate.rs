//! The lattice-determined conjugation-free candidate.

use crate::geom::IntersectionLattice;
use crate::vankampen::{CyclicRelation, Kind, Presentation};

/// One bracket of plain generators per lattice point. `ordering[line]` is
/// the 1-based generator index assigned to each 0-based line; the entries
/// of each bracket are sorted by it.
pub fn candidate_cf(lat: &IntersectionLattice, ordering: &[usize]) -> Presentation {
    assert!(is_permutation(ordering), "ordering must be a permutation of 1..=n");
    let relations = lat
        .points
        .iter()
        .map(|p| {
            let mut gens: Vec<usize> = p.incident.iter().map(|&l| ordering[l]).collect();
            gens.sort_unstable();
            CyclicRelation::of_generators(&gens)
        })
        .collect();
    Presentation::new(lat.n, Kind::Affine, relations)
}

/// True if `ordering` is a permutation of `1..=len`.
pub fn is_permutation(ordering: &[usize]) -> bool {
    let mut seen = vec![false; ordering.len() + 1];
    ordering.iter().all(|&g| {
        let ok = g >= 1 && g <= ordering.len() && !seen[g];
        if ok {
            seen[g] = true;
        }
        ok
    })
}

/// Every entry is a plain generator, entries strictly increase, and there are
/// no extra equations.
pub fn is_conjugation_free(p: &Presentation) -> bool {
    p.equations.is_empty()
        && p.relations.iter().all(|r| {
            let gens: Option<Vec<usize>> = r.words().iter().map(|w| w.as_generator()).collect();
            gens.is_some_and(|g| g.windows(2).all(|w| w[0] < w[1]))
        })
}
