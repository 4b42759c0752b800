//! Cyclic relations, presentations and the van Kampen presentation of a
//! swept arrangement.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{artin_apply, prefix_braid, BraidError, Letter, Word};
use crate::wiring::PairList;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("relation {index}: generator x{gen} exceeds gens={ngens}")]
    GeneratorOutOfRange {
        index: usize,
        gen: usize,
        ngens: usize,
    },
    #[error("relation {index}: a bracket needs at least 2 entries")]
    ShortBracket { index: usize },
    #[error("json: {0}")]
    Json(String),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Word, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Index of the lexicographically least rotation of `words`.
pub fn least_rotation<T: Ord>(words: &[T]) -> usize {
    let k = words.len();
    (0..k)
        .min_by(|&r, &s| {
            let a = words[r..].iter().chain(&words[..r]);
            let b = words[s..].iter().chain(&words[..s]);
            a.cmp(b)
        })
        .unwrap_or(0)
}

/// The bracket `[w_1, ..., w_k]`: all cyclic rotations of the product
/// `w_k ... w_1` are equal. Stored in its least rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CyclicRelation {
    words: Vec<Word>,
}

impl CyclicRelation {
    pub fn new(mut words: Vec<Word>) -> CyclicRelation {
        let r = least_rotation(&words);
        words.rotate_left(r);
        CyclicRelation { words }
    }

    /// Builds from plain generators.
    pub fn of_generators(gens: &[usize]) -> CyclicRelation {
        CyclicRelation::new(gens.iter().map(|&g| Word::generator(g)).collect())
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn total_len(&self) -> usize {
        self.words.iter().map(Word::len).sum()
    }

    /// `P_r = s_k ... s_1` for the rotation `s = [w_{r+1}, ..., w_k, w_1, ..., w_r]`.
    pub fn rotation_product(&self, r: usize) -> Word {
        let k = self.words.len();
        Word::from_letters(
            (0..k)
                .rev()
                .flat_map(|j| self.words[(r + j) % k].letters().iter().copied()),
        )
    }

    /// The `k - 1` relators `P_r P_0^-1`, `r = 1..k`.
    pub fn relators(&self) -> Vec<Word> {
        let p0inv = self.rotation_product(0).inverse();
        (1..self.words.len())
            .map(|r| self.rotation_product(r).concat(&p0inv))
            .collect()
    }

    /// True if every rotation product is freely equal to every other.
    pub fn is_tautology(&self) -> bool {
        self.relators().iter().all(Word::is_empty)
    }

    pub fn map_words(&self, f: impl Fn(&Word) -> Word) -> CyclicRelation {
        CyclicRelation::new(self.words.iter().map(f).collect())
    }

    pub fn max_generator(&self) -> usize {
        self.words.iter().map(Word::max_generator).max().unwrap_or(0)
    }
}

impl fmt::Display for CyclicRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[ ")?;
        for (k, w) in self.words.iter().enumerate() {
            if k > 0 {
                write!(f, " ; ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, " ]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Affine,
    Projective,
}

/// A finite presentation made of brackets and, optionally, plain equations
/// `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Presentation {
    pub ngens: usize,
    pub kind: Kind,
    pub relations: Vec<CyclicRelation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equations: Vec<(Word, Word)>,
}

impl Presentation {
    pub fn new(ngens: usize, kind: Kind, relations: Vec<CyclicRelation>) -> Presentation {
        Presentation {
            ngens,
            kind,
            relations,
            equations: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<(), PresentationError> {
        for (k, r) in self.relations.iter().enumerate() {
            if r.len() < 2 {
                return Err(PresentationError::ShortBracket { index: k + 1 });
            }
            if r.max_generator() > self.ngens {
                return Err(PresentationError::GeneratorOutOfRange {
                    index: k + 1,
                    gen: r.max_generator(),
                    ngens: self.ngens,
                });
            }
        }
        for (k, (l, r)) in self.equations.iter().enumerate() {
            let g = l.max_generator().max(r.max_generator());
            if g > self.ngens {
                return Err(PresentationError::GeneratorOutOfRange {
                    index: self.relations.len() + k + 1,
                    gen: g,
                    ngens: self.ngens,
                });
            }
        }
        Ok(())
    }

    /// Every defining relator as a single word equal to the identity.
    pub fn relators(&self) -> Vec<Word> {
        let mut out: Vec<Word> = self.relations.iter().flat_map(|r| r.relators()).collect();
        out.extend(self.equations.iter().map(|(l, r)| l.concat(&r.inverse())));
        out
    }

    /// Relations sorted, for order-independent comparison.
    pub fn sorted_relations(&self) -> Vec<CyclicRelation> {
        let mut v = self.relations.clone();
        v.sort();
        v
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentation serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Presentation, PresentationError> {
        let p: Presentation =
            serde_json::from_str(text).map_err(|e| PresentationError::Json(e.to_string()))?;
        // Re-canonicalize in case the file stores a non-least rotation.
        let p = Presentation {
            relations: p
                .relations
                .into_iter()
                .map(|r| CyclicRelation::new(r.words))
                .collect(),
            ..p
        };
        p.validate()?;
        Ok(p)
    }
}

impl fmt::Display for Presentation {
    /// The text format: `gens=<n>`, `kind=...`, then one relation per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens={}", self.ngens)?;
        let kind = match self.kind {
            Kind::Affine => "affine",
            Kind::Projective => "projective",
        };
        writeln!(f, "kind={kind}")?;
        for r in &self.relations {
            writeln!(f, "{r}")?;
        }
        for (l, r) in &self.equations {
            writeln!(f, "{l} = {r}")?;
        }
        Ok(())
    }
}

/// Parses the presentation text format.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut ngens: Option<usize> = None;
    let mut kind = Kind::Affine;
    let mut relations = Vec::new();
    let mut equations = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |msg: String| PresentationError::Parse { line, msg };
        if let Some(v) = body.strip_prefix("gens=") {
            ngens = Some(
                v.trim()
                    .parse()
                    .map_err(|_| err(format!("malformed generator count `{v}`")))?,
            );
        } else if let Some(v) = body.strip_prefix("kind=") {
            kind = match v.trim() {
                "affine" => Kind::Affine,
                "projective" => Kind::Projective,
                other => return Err(err(format!("unknown kind `{other}`"))),
            };
        } else if ngens.is_none() {
            return Err(err("expected header `gens=<n>`".into()));
        } else if let Some(inner) = body.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| err("unterminated bracket".into()))?;
            let words = inner
                .split(';')
                .map(|w| w.parse::<Word>().map_err(|e| err(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            relations.push(CyclicRelation::new(words));
        } else if let Some((l, r)) = body.split_once('=') {
            let l: Word = l.parse().map_err(|e: BraidError| err(e.to_string()))?;
            let r: Word = r.parse().map_err(|e: BraidError| err(e.to_string()))?;
            equations.push((l, r));
        } else {
            return Err(err(format!("unrecognized relation `{body}`")));
        }
    }
    let ngens = ngens.ok_or(PresentationError::Parse {
        line: 0,
        msg: "missing header `gens=<n>`".into(),
    })?;
    let p = Presentation {
        ngens,
        kind,
        relations,
        equations,
    };
    p.validate()?;
    Ok(p)
}

/// Chooses among simultaneous conjugates of the bracket entries the one with
/// the least total length, breaking ties by the least rotation. Candidate
/// conjugators are the inverses of prefixes of the entries' own conjugators.
pub fn pull_down(words: &[Word]) -> CyclicRelation {
    let mut cands = vec![Word::identity()];
    for w in words {
        if let Some((u, _)) = w.as_conjugate() {
            for k in 1..=u.len() {
                cands.push(u.prefix(k).inverse());
            }
        }
    }
    cands
        .iter()
        .map(|c| CyclicRelation::new(words.iter().map(|w| w.conjugate_by(c)).collect()))
        .min_by(|r, s| (r.total_len(), r).cmp(&(s.total_len(), s)))
        .expect("identity candidate")
}

/// The entries of the bracket at point `i` (1-based), in increasing wire
/// position at the point, before [`pull_down`].
///
/// The prefix braid acts on a disk whose points are numbered in the opposite
/// direction to the wires: wire position `k` is disk point `ell + 1 - k`, and
/// the braid is mirrored accordingly.
pub fn point_relation_words(pl: &PairList, i: usize) -> Result<Vec<Word>, BraidError> {
    let ell = pl.ell;
    let braid = prefix_braid(pl, i)?.mirrored(ell);
    let p = pl.pairs[i - 1];
    let flip: Vec<usize> = (1..=ell).map(|j| ell + 1 - j).collect();
    (p.a..=p.b)
        .map(|k| {
            let disk = Word::generator(ell + 1 - k);
            Ok(artin_apply(&braid, &disk, ell)?.relabel(&flip))
        })
        .collect()
}

/// One normalized bracket per point, in sweep order.
pub fn presentation(pl: &PairList) -> Result<Presentation, PresentationError> {
    let relations = (1..=pl.pairs.len())
        .map(|i| Ok(pull_down(&point_relation_words(pl, i)?)))
        .collect::<Result<Vec<_>, BraidError>>()?;
    Ok(Presentation::new(pl.ell, Kind::Affine, relations))
}

/// Adds `x_n ... x_1 = e` and eliminates `x_n`. Brackets and equations that
/// become freely trivial are dropped.
pub fn projectivize(p: &Presentation) -> Presentation {
    let n = p.ngens;
    if n == 0 {
        return Presentation { kind: Kind::Projective, ..p.clone() };
    }
    let mut images: Vec<Word> = (1..n).map(Word::generator).collect();
    images.push(Word::from_letters((1..n).map(|g| Letter::new(g, true))));
    let relations = p
        .relations
        .iter()
        .map(|r| r.map_words(|w| w.substitute(&images)))
        .filter(|r| !r.is_tautology())
        .collect();
    let equations = p
        .equations
        .iter()
        .map(|(l, r)| (l.substitute(&images), r.substitute(&images)))
        .filter(|(l, r)| l != r)
        .collect();
    Presentation {
        ngens: n - 1,
        kind: Kind::Projective,
        relations,
        equations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn rel(ws: &[&str]) -> CyclicRelation {
        CyclicRelation::new(ws.iter().map(|s| w(s)).collect())
    }

    #[test]
    fn canonical_rotation() {
        let r = rel(&["x3", "x1", "x2"]);
        assert_eq!(r.words(), &[w("x1"), w("x2"), w("x3")]);
        let r = rel(&["x2", "x1^-1"]);
        assert_eq!(r.words()[0], w("x1^-1"));
    }

    #[test]
    fn rotation_products() {
        let r = rel(&["x1", "x2", "x3"]);
        assert_eq!(r.rotation_product(0), w("x3 x2 x1"));
        assert_eq!(r.rotation_product(1), w("x1 x3 x2"));
        assert_eq!(r.relators().len(), 2);
        assert!(rel(&["x1", "x1"]).is_tautology());
    }

    #[test]
    fn single_crossing_is_commutator() {
        let p = presentation(&PairList::from_tuples(2, &[(1, 2)])).unwrap();
        assert_eq!(p.relations, vec![rel(&["x1", "x2"])]);
    }

    #[test]
    fn first_point_is_plain() {
        let pl = PairList::from_tuples(4, &[(2, 4), (1, 2)]);
        assert_eq!(
            point_relation_words(&pl, 1).unwrap(),
            vec![w("x2"), w("x3"), w("x4")]
        );
    }

    #[test]
    fn projectivize_two_lines() {
        let p = presentation(&PairList::from_tuples(2, &[(1, 2)])).unwrap();
        let q = projectivize(&p);
        assert_eq!(q.ngens, 1);
        assert!(q.relations.is_empty());
    }

    #[test]
    fn projectivize_pencil_is_free() {
        // Oracle: substituting x3 = x1^-1 x2^-1 into [x1, x2, x3] makes all
        // three rotation products trivial.
        let p = presentation(&PairList::from_tuples(3, &[(1, 3)])).unwrap();
        let q = projectivize(&p);
        assert_eq!(q.ngens, 2);
        assert!(q.relations.is_empty());
    }

    #[test]
    fn text_round_trip() {
        let mut p = Presentation::new(3, Kind::Affine, vec![rel(&["x1", "x2 x3 x2^-1"])]);
        p.equations.push((w("x1 x2"), w("e")));
        let q = parse_presentation(&p.to_string()).unwrap();
        assert_eq!(p, q);
        assert_eq!(Presentation::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn parse_rejects_out_of_range() {
        assert!(matches!(
            parse_presentation("gens=2\n[ x1 ; x3 ]\n"),
            Err(PresentationError::GeneratorOutOfRange { .. })
        ));
        assert!(parse_presentation("[ x1 ; x2 ]\n").is_err());
        assert!(parse_presentation("gens=2\n[ x1 ]\n").is_err());
    }

    #[test]
    fn pull_down_shortens() {
        let r = pull_down(&[w("x3 x1 x3^-1"), w("x3 x2 x3^-1")]);
        assert_eq!(r, rel(&["x1", "x2"]));
    }
}
