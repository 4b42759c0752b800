//! Conjugation-free candidates, certified equivalence and presentation
//! invariants.

pub mod abelian;
pub mod candidate;
pub mod certificate;
pub mod homcount;
pub mod prover;
pub mod verdict;

pub use abelian::{abelianization, Abelianization};
pub use candidate::{candidate_cf, is_conjugation_free};
pub use certificate::{parse_certificate, replay, Certificate, Step};
pub use homcount::{hom_count, FiniteGroupTable, HomCount};
pub use prover::{prove_equivalent, Budget, Outcome};
pub use verdict::{candidate_for, cf_verdict, OrderingSpec, VerdictReport};
