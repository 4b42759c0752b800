//! Strategies and property checks shared by the proptest suite and the
//! acceptance runner.

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use linegroup::braid::{artin_apply, BraidWord, Letter, Twist, Word};
use linegroup::geom::{compute_lattice, multiple_point_graph, parse_arrangement};
use linegroup::wiring::{genericize, sweep};

/// A line as `a b c` with rational coefficients `num/den`.
pub type RawLine = [(i64, i64); 3];

pub fn braid_word(ell: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((1..ell, any::<bool>()), 0..=max_len).prop_map(|ts| BraidWord {
        twists: ts
            .into_iter()
            .map(|(strand, positive)| Twist { strand, positive })
            .collect(),
    })
}

pub fn word(ngens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=ngens, any::<bool>()), 0..=max_len)
        .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(g, i)| Letter::new(g, i))))
}

fn coefficient() -> impl Strategy<Value = (i64, i64)> {
    (-6i64..=6, 1i64..=4)
}

fn raw_line() -> impl Strategy<Value = RawLine> {
    [coefficient(), coefficient(), coefficient()]
        .prop_filter("a and b both zero", |l| l[0].0 != 0 || l[1].0 != 0)
}

/// Cross product of coefficients `i` and `j` of two lines, scaled to
/// integers; zero iff those coordinates are proportional.
fn cross(p: &RawLine, q: &RawLine, i: usize, j: usize) -> i128 {
    let v = |l: &RawLine, k: usize| (l[k].0 as i128, l[k].1 as i128);
    let ((pi, pid), (pj, pjd)) = (v(p, i), v(p, j));
    let ((qi, qid), (qj, qjd)) = (v(q, i), v(q, j));
    pi * qj * qid * pjd - pj * qi * pid * qjd
}

pub fn parallel(p: &RawLine, q: &RawLine) -> bool {
    cross(p, q, 0, 1) == 0
}

fn same_line(p: &RawLine, q: &RawLine) -> bool {
    cross(p, q, 0, 1) == 0 && cross(p, q, 0, 2) == 0 && cross(p, q, 1, 2) == 0
}

/// Between 1 and `max` pairwise distinct lines.
pub fn raw_arrangement(max: usize) -> impl Strategy<Value = Vec<RawLine>> {
    prop::collection::vec(raw_line(), 1..=max).prop_filter("duplicate line", |ls| {
        (0..ls.len()).all(|i| (0..i).all(|j| !same_line(&ls[i], &ls[j])))
    })
}

pub fn to_text(lines: &[RawLine]) -> String {
    lines
        .iter()
        .map(|l| {
            l.iter()
                .map(|(n, d)| format!("{n}/{d}"))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn twist(strand: usize, positive: bool) -> BraidWord {
    BraidWord {
        twists: vec![Twist { strand, positive }],
    }
}

fn act(b: &BraidWord, g: usize, ell: usize) -> Word {
    artin_apply(b, &Word::generator(g), ell).expect("in range")
}

/// The braid relations hold as automorphisms: every generator has the same
/// image under both sides.
pub fn check_braid_relations(ell: usize) -> Result<(), TestCaseError> {
    for i in 1..ell {
        let s = twist(i, true);
        let cancel = s.clone().then(&twist(i, false));
        for j in 1..ell {
            let t = twist(j, true);
            let (lhs, rhs) = if i + 1 == j {
                (s.clone().then(&t).then(&s), t.clone().then(&s).then(&t))
            } else if i.abs_diff(j) >= 2 {
                (s.clone().then(&t), t.clone().then(&s))
            } else {
                continue;
            };
            for g in 1..=ell {
                prop_assert_eq!(act(&lhs, g, ell), act(&rhs, g, ell), "s{} s{} on x{}", i, j, g);
            }
        }
        for g in 1..=ell {
            prop_assert_eq!(act(&cancel, g, ell), Word::generator(g));
        }
    }
    Ok(())
}

pub fn check_artin_inverse(ell: usize, b: &BraidWord, w: &Word) -> Result<(), TestCaseError> {
    let img = artin_apply(b, w, ell).unwrap();
    prop_assert_eq!(&artin_apply(&b.inverse(), &img, ell).unwrap(), w);
    Ok(())
}

pub fn check_boundary(ell: usize, b: &BraidWord) -> Result<(), TestCaseError> {
    let boundary = Word::from_letters((1..=ell).map(Letter::gen));
    prop_assert_eq!(artin_apply(b, &boundary, ell).unwrap(), boundary);
    Ok(())
}

/// Each pair of non-parallel lines meets in exactly one point, so the points
/// account for `sum C(m, 2)` such pairs.
pub fn check_lattice_pairs(lines: &[RawLine]) -> Result<(), TestCaseError> {
    let arr = parse_arrangement(&to_text(lines)).unwrap();
    let lat = compute_lattice(&arr).unwrap();
    let from_points: usize = lat.multiplicities().iter().map(|m| m * (m - 1) / 2).sum();
    let mut expected = 0;
    for i in 0..lines.len() {
        for j in 0..i {
            if !parallel(&lines[i], &lines[j]) {
                expected += 1;
            }
        }
    }
    prop_assert_eq!(from_points, expected);
    Ok(())
}

fn sorted_multiplicities(text: &str) -> (Vec<usize>, usize) {
    let arr = parse_arrangement(text).unwrap();
    let lat = compute_lattice(&arr).unwrap();
    let mut m = lat.multiplicities();
    m.sort();
    let betti = multiple_point_graph(&arr, &lat).betti;
    (m, betti)
}

/// Translating by `(dx, dy)` maps `a x + b y = c` to `a x + b y = c + a dx + b dy`.
pub fn check_translation(lines: &[RawLine], dx: i64, dy: i64) -> Result<(), TestCaseError> {
    let moved: Vec<String> = lines
        .iter()
        .map(|l| {
            let [(an, ad), (bn, bd), (cn, cd)] = *l;
            // c + a dx + b dy over the common denominator ad bd cd.
            let num = cn * ad * bd + an * dx * bd * cd + bn * dy * ad * cd;
            format!("{an}/{ad} {bn}/{bd} {num}/{}", ad * bd * cd)
        })
        .collect();
    prop_assert_eq!(sorted_multiplicities(&to_text(lines)), sorted_multiplicities(&moved.join("\n")));
    Ok(())
}

pub fn check_relabel(lines: &[RawLine], seed: usize) -> Result<(), TestCaseError> {
    let mut perm = lines.to_vec();
    let n = perm.len();
    perm.rotate_left(seed % n);
    perm.reverse();
    prop_assert_eq!(sorted_multiplicities(&to_text(lines)), sorted_multiplicities(&to_text(&perm)));
    Ok(())
}

/// Every two lines cross once, so applying all the interval reversals of the
/// sweep to the wire order turns it upside down.
pub fn check_sweep_reversal(lines: &[RawLine]) -> Result<(), TestCaseError> {
    if (0..lines.len()).any(|i| (0..i).any(|j| parallel(&lines[i], &lines[j]))) {
        return Ok(());
    }
    let arr = parse_arrangement(&to_text(lines)).unwrap();
    let (g, _) = genericize(&arr).unwrap();
    let s = sweep(&g).unwrap();
    let mut order: Vec<usize> = (1..=lines.len()).collect();
    for p in &s.pairs.pairs {
        order[p.a - 1..p.b].reverse();
    }
    let reversed: Vec<usize> = (1..=lines.len()).rev().collect();
    prop_assert_eq!(order, reversed);
    Ok(())
}
