//! Per-ordering certification of the conjugation-free candidate.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::geom::IntersectionLattice;
use crate::vankampen::{presentation, CyclicRelation, Presentation, PresentationError};
use crate::wiring::PairList;

use super::candidate::{candidate_cf, is_permutation};
use super::homcount::{hom_count, FiniteGroupTable, HomCount};
use super::prover::{prove_equivalent_cached, Budget, Outcome, SearchCache};

/// Orderings are enumerated exhaustively only up to this many lines.
pub const MAX_ALL_ORDERINGS: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerdictError {
    #[error("ordering is not a permutation of 1..={0}")]
    BadOrdering(usize),
    #[error("all orderings requested for {0} lines; at most {MAX_ALL_ORDERINGS} supported")]
    TooManyLines(usize),
    #[error("pair list has {0} wires but the lattice has {1} lines")]
    SizeMismatch(usize, usize),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderingSpec {
    /// The generator numbering of the sweep.
    Natural,
    /// `ordering[line]` = 1-based generator index.
    Explicit(Vec<usize>),
    /// Every permutation, in lexicographic order.
    All,
}

/// Hom-counts of source and candidate into one group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomEvidence {
    pub group: String,
    pub source: HomCount,
    pub candidate: HomCount,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderingReport {
    pub ordering: Vec<usize>,
    /// The candidate, with generators named as in the source.
    pub candidate: Presentation,
    pub outcome: Outcome,
    pub evidence: Vec<HomEvidence>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictReport {
    pub source: Presentation,
    pub orderings: Vec<OrderingReport>,
}

impl VerdictReport {
    pub fn certified(&self) -> Option<&OrderingReport> {
        self.orderings.iter().find(|o| o.outcome.is_certified())
    }
}

impl fmt::Display for VerdictReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.orderings.len();
        let c = self.orderings.iter().filter(|o| o.outcome.is_certified()).count();
        writeln!(f, "orderings={n} certified={c} unknown={}", n - c)?;
        for o in &self.orderings {
            let ord: Vec<String> = o.ordering.iter().map(|g| g.to_string()).collect();
            match &o.outcome {
                Outcome::Certified(cert) => {
                    writeln!(f, "ordering {}: certified ({} steps)", ord.join(" "), cert.len())?
                }
                Outcome::Unknown(why) => writeln!(f, "ordering {}: unknown ({why})", ord.join(" "))?,
            }
            for e in &o.evidence {
                let tag = match (e.source, e.candidate) {
                    (HomCount::Exact(a), HomCount::Exact(b)) if a != b => " differ",
                    (HomCount::Exact(_), HomCount::Exact(_)) => " equal",
                    _ => "",
                };
                writeln!(
                    f,
                    "  hom {}: source {} candidate {}{tag}",
                    e.group, e.source, e.candidate
                )?;
            }
        }
        Ok(())
    }
}

/// Lexicographic successor of a permutation, in place.
fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// The candidate for `ordering`, with each line's generator renamed to the
/// source generator of that line (`natural[line]`).
pub fn candidate_for(lat: &IntersectionLattice, natural: &[usize], ordering: &[usize]) -> Presentation {
    let cand = candidate_cf(lat, ordering);
    let mut rename = vec![0; ordering.len()];
    for (line, &g) in ordering.iter().enumerate() {
        rename[g - 1] = natural[line];
    }
    Presentation {
        relations: cand
            .relations
            .iter()
            .map(|r| CyclicRelation::new(r.words().iter().map(|w| w.relabel(&rename)).collect()))
            .collect(),
        ..cand
    }
}

/// Runs the prover against the candidate for each selected ordering and
/// collects hom-count evidence into `groups`.
pub fn cf_verdict(
    pl: &PairList,
    lat: &IntersectionLattice,
    natural: &[usize],
    spec: &OrderingSpec,
    budget: Budget,
    groups: &[FiniteGroupTable],
    node_budget: u64,
) -> Result<VerdictReport, VerdictError> {
    let n = lat.n;
    if pl.ell != n {
        return Err(VerdictError::SizeMismatch(pl.ell, n));
    }
    if !is_permutation(natural) {
        return Err(VerdictError::BadOrdering(n));
    }
    let orderings: Vec<Vec<usize>> = match spec {
        OrderingSpec::Natural => vec![natural.to_vec()],
        OrderingSpec::Explicit(o) => {
            if o.len() != n || !is_permutation(o) {
                return Err(VerdictError::BadOrdering(n));
            }
            vec![o.clone()]
        }
        OrderingSpec::All => {
            if n > MAX_ALL_ORDERINGS {
                return Err(VerdictError::TooManyLines(n));
            }
            let mut p: Vec<usize> = (1..=n).collect();
            let mut all = vec![p.clone()];
            while next_permutation(&mut p) {
                all.push(p.clone());
            }
            all
        }
    };
    let source = presentation(pl)?;
    let source_counts: Vec<HomCount> = groups.iter().map(|g| hom_count(&source, g, node_budget)).collect();
    let mut count_cache: HashMap<(usize, Vec<CyclicRelation>), HomCount> = HashMap::new();
    let mut search_cache = SearchCache::new();
    let mut reports = Vec::with_capacity(orderings.len());
    for ordering in orderings {
        let candidate = candidate_for(lat, natural, &ordering);
        let outcome = prove_equivalent_cached(&source, &candidate, budget, &mut search_cache);
        let sorted = candidate.sorted_relations();
        let evidence = groups
            .iter()
            .zip(&source_counts)
            .enumerate()
            .map(|(gi, (g, &sc))| {
                let cc = *count_cache
                    .entry((gi, sorted.clone()))
                    .or_insert_with(|| hom_count(&candidate, g, node_budget));
                HomEvidence {
                    group: g.name.clone(),
                    source: sc,
                    candidate: cc,
                }
            })
            .collect();
        reports.push(OrderingReport {
            ordering,
            candidate,
            outcome,
            evidence,
        });
    }
    Ok(VerdictReport {
        source,
        orderings: reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_in_order() {
        let mut p = vec![1, 2, 3];
        let mut all = vec![p.clone()];
        while next_permutation(&mut p) {
            all.push(p.clone());
        }
        assert_eq!(all.len(), 6);
        assert_eq!(all[1], vec![1, 3, 2]);
        assert_eq!(all[5], vec![3, 2, 1]);
    }
}
