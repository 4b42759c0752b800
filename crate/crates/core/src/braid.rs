//! Free-group words, braid words and the Artin action of the braid group on
//! the free group of meridians.
//!
//! Letters are signed generator indices: `+i` is `x_i`, `-i` is `x_i^-1`.
//! Every [`Word`] is kept freely reduced.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::wiring::PairList;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("generator index {index} out of range 1..={ngens}")]
    GeneratorOutOfRange { index: usize, ngens: usize },
    #[error("strand index {index} out of range 1..={max}")]
    StrandOutOfRange { index: usize, max: usize },
    #[error("half-twist interval [{a},{b}] invalid for {ell} strands")]
    BadInterval { a: usize, b: usize, ell: usize },
    #[error("point index {index} out of range 1..={len}")]
    PointOutOfRange { index: usize, len: usize },
    #[error("malformed word token `{0}`")]
    BadToken(String),
}

/// A generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Letter {
        assert!(generator >= 1, "generators are 1-based");
        let g = generator as i32;
        Letter(if inverse { -g } else { g })
    }

    pub fn gen(generator: usize) -> Letter {
        Letter::new(generator, false)
    }

    pub fn from_signed(value: i32) -> Letter {
        assert!(value != 0, "letter 0 does not exist");
        Letter(value)
    }

    pub fn generator(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    pub fn signed(self) -> i32 {
        self.0
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "x{}^-1", self.generator())
        } else {
            write!(f, "x{}", self.generator())
        }
    }
}

/// A freely reduced word in the free group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Word {
        Word(vec![Letter::gen(g)])
    }

    /// Builds a word from arbitrary letters, reducing it.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    pub fn from_signed(values: &[i32]) -> Word {
        Word::from_letters(values.iter().map(|&v| Letter::from_signed(v)))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &l in &other.0 {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    /// `c · self · c^-1`, reduced.
    pub fn conjugate_by(&self, c: &Word) -> Word {
        c.concat(self).concat(&c.inverse())
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }

    /// Largest generator index occurring in the word (0 for the identity).
    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.generator()).max().unwrap_or(0)
    }

    /// The single generator if the word is a plain generator `x_i`.
    pub fn as_generator(&self) -> Option<usize> {
        match self.0.as_slice() {
            [l] if !l.is_inverse() => Some(l.generator()),
            _ => None,
        }
    }

    /// Splits a word of the literal shape `u x_i u^-1` into `(u, i)`.
    pub fn as_conjugate(&self) -> Option<(Word, usize)> {
        let n = self.0.len();
        if n.is_multiple_of(2) {
            return None;
        }
        let h = n / 2;
        let core = self.0[h];
        if core.is_inverse() {
            return None;
        }
        let ok = (0..h).all(|k| self.0[n - 1 - k] == self.0[k].inverse());
        ok.then(|| (Word(self.0[..h].to_vec()), core.generator()))
    }

    /// Exponent sum per generator, indexed `0..ngens`.
    pub fn exponent_vector(&self, ngens: usize) -> Vec<i64> {
        let mut v = vec![0i64; ngens];
        for l in &self.0 {
            v[l.generator() - 1] += if l.is_inverse() { -1 } else { 1 };
        }
        v
    }

    /// Applies a substitution `x_g -> images[g-1]` and reduces.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            let img = &images[l.generator() - 1];
            if l.is_inverse() {
                for &m in img.0.iter().rev() {
                    push_reduced(&mut out, m.inverse());
                }
            } else {
                for &m in &img.0 {
                    push_reduced(&mut out, m);
                }
            }
        }
        Word(out)
    }

    /// Relabels generators with `map[g-1]`.
    pub fn relabel(&self, map: &[usize]) -> Word {
        Word::from_letters(
            self.0
                .iter()
                .map(|l| Letter::new(map[l.generator() - 1], l.is_inverse())),
        )
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inverse()) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Parses `x3 x2^-1 x1`; `e` or `1` denote the identity. Powers `x2^3` and
/// `x2^-3` are expanded.
impl FromStr for Word {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Word, BraidError> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "e" || tok == "1" {
                continue;
            }
            let body = tok
                .strip_prefix('x')
                .ok_or_else(|| BraidError::BadToken(tok.to_string()))?;
            let (g, exp) = match body.split_once('^') {
                Some((g, e)) => (g, e.parse::<i32>().ok()),
                None => (body, Some(1)),
            };
            let g: usize = g
                .parse()
                .ok()
                .filter(|g| (1..=1 << 20).contains(g))
                .ok_or_else(|| BraidError::BadToken(tok.to_string()))?;
            let exp = exp
                .filter(|e| e.unsigned_abs() <= 64)
                .ok_or_else(|| BraidError::BadToken(tok.to_string()))?;
            for _ in 0..exp.unsigned_abs() {
                letters.push(Letter::new(g, exp < 0));
            }
        }
        Ok(Word::from_letters(letters))
    }
}

/// Reduces a raw list of `(generator, exponent)` letters, checking the
/// generator range.
pub fn free_reduce(raw: &[(usize, i8)], ngens: usize) -> Result<Word, BraidError> {
    let mut letters = Vec::with_capacity(raw.len());
    for &(g, e) in raw {
        if g == 0 || g > ngens {
            return Err(BraidError::GeneratorOutOfRange { index: g, ngens });
        }
        letters.push(Letter::new(g, e < 0));
    }
    Ok(Word::from_letters(letters))
}

/// An elementary half-twist `s_i^{±1}` exchanging strands `i` and `i+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Twist {
    pub strand: usize,
    pub positive: bool,
}

impl Twist {
    pub fn inverse(self) -> Twist {
        Twist {
            strand: self.strand,
            positive: !self.positive,
        }
    }
}

/// A word in the Artin generators of the braid group. The empty word is the
/// identity braid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BraidWord {
    pub twists: Vec<Twist>,
}

impl BraidWord {
    pub fn identity() -> BraidWord {
        BraidWord::default()
    }

    pub fn len(&self) -> usize {
        self.twists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.twists.is_empty()
    }

    pub fn then(mut self, other: &BraidWord) -> BraidWord {
        self.twists.extend_from_slice(&other.twists);
        self
    }

    /// The reversed word with every twist inverted.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            twists: self.twists.iter().rev().map(|t| t.inverse()).collect(),
        }
    }

    /// Conjugates by the flip `i -> ell - i` of the strand numbering.
    pub fn mirrored(&self, ell: usize) -> BraidWord {
        BraidWord {
            twists: self
                .twists
                .iter()
                .map(|t| Twist {
                    strand: ell - t.strand,
                    positive: t.positive,
                })
                .collect(),
        }
    }

    pub fn check(&self, ell: usize) -> Result<(), BraidError> {
        for t in &self.twists {
            if t.strand == 0 || t.strand >= ell {
                return Err(BraidError::StrandOutOfRange {
                    index: t.strand,
                    max: ell.saturating_sub(1),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twists.is_empty() {
            return write!(f, "1");
        }
        for (k, t) in self.twists.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if t.positive {
                write!(f, "s{}", t.strand)?;
            } else {
                write!(f, "s{}^-1", t.strand)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
fn twist_images(t: Twist, ngens: usize) -> Vec<Word> {
    let mut images: Vec<Word> = (1..=ngens).map(Word::generator).collect();
    let i = t.strand;
    let (xi, xj) = (i as i32, i as i32 + 1);
    if t.positive {
        // x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i
        images[i - 1] = Word::from_signed(&[xi, xj, -xi]);
        images[i] = Word::from_signed(&[xi]);
    } else {
        // x_i -> x_{i+1}, x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}
        images[i - 1] = Word::from_signed(&[xj]);
        images[i] = Word::from_signed(&[-xj, xi, xj]);
    }
    images
}

/// Applies `b` to `w` one twist at a time, first twist first. Each twist acts
/// by the substitution `s_i: x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i`
/// (and its inverse for `s_i^-1`), so `artin_apply(b1 b2, w) =
/// artin_apply(b2, artin_apply(b1, w))`. This action preserves the product
/// `x_1 x_2 ... x_ell`.
pub fn artin_apply(b: &BraidWord, w: &Word, ell: usize) -> Result<Word, BraidError> {
    b.check(ell)?;
    if w.max_generator() > ell {
        return Err(BraidError::GeneratorOutOfRange {
            index: w.max_generator(),
            ngens: ell,
        });
    }
    let mut cur = w.clone();
    for &t in &b.twists {
        cur = apply_twist(t, &cur);
    }
    Ok(cur)
}

fn apply_twist(t: Twist, w: &Word) -> Word {
    let i = t.strand;
    // Only generators i and i+1 move; avoid building a full image table.
    let mut out = Vec::with_capacity(w.len() + 4);
    for &l in w.letters() {
        let g = l.generator();
        if g != i && g != i + 1 {
            push_reduced(&mut out, l);
            continue;
        }
        let img = &twist_images_local(t)[g - i];
        if l.is_inverse() {
            for &m in img.iter().rev() {
                push_reduced(&mut out, m.inverse());
            }
        } else {
            for &m in img {
                push_reduced(&mut out, m);
            }
        }
    }
    Word(out)
}

fn twist_images_local(t: Twist) -> [Vec<Letter>; 2] {
    let xi = t.strand as i32;
    let xj = xi + 1;
    let l = Letter::from_signed;
    if t.positive {
        [vec![l(xi), l(xj), l(-xi)], vec![l(xi)]]
    } else {
        [vec![l(xj)], vec![l(-xj), l(xi), l(xj)]]
    }
}

/// Positive half-twist on the strands `a..=b`:
/// `(s_a ... s_{b-1})(s_a ... s_{b-2}) ... (s_a)`.
pub fn halftwist(a: usize, b: usize, ell: usize) -> Result<BraidWord, BraidError> {
    if a == 0 || a >= b || b > ell {
        return Err(BraidError::BadInterval { a, b, ell });
    }
    let mut twists = Vec::with_capacity((b - a) * (b - a + 1) / 2);
    for top in (a..b).rev() {
        for s in a..=top {
            twists.push(Twist {
                strand: s,
                positive: true,
            });
        }
    }
    Ok(BraidWord { twists })
}

/// The braid transporting the initial skeleton of point `i` (1-based): the
/// half-twists of the pairs `i-1, i-2, ..., 1`, in that order.
pub fn prefix_braid(pl: &PairList, i: usize) -> Result<BraidWord, BraidError> {
    if i == 0 || i > pl.pairs.len() {
        return Err(BraidError::PointOutOfRange {
            index: i,
            len: pl.pairs.len(),
        });
    }
    let mut out = BraidWord::identity();
    for p in pl.pairs[..i - 1].iter().rev() {
        out = out.then(&halftwist(p.a, p.b, pl.ell)?);
    }
    Ok(out)
}
