//! Stable-toolchain companion to the fuzz targets: every parser either
//! rejects its input or round-trips it, on the checked-in seeds and on
//! random mutations of them.

use std::fs;
use std::path::PathBuf;

use proptest::prelude::*;

use linegroup::geom::parse_arrangement;
use linegroup::presentations::{parse_certificate, FiniteGroupTable};
use linegroup::vankampen::{parse_presentation, Presentation};
use linegroup::wiring::parse_pairs;

const TARGETS: [&str; 6] = [
    "parse_arrangement",
    "parse_pairs",
    "parse_presentation",
    "presentation_json",
    "parse_certificate",
    "group_table",
];

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut files: Vec<PathBuf> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    files.into_iter().map(|p| fs::read_to_string(p).unwrap()).collect()
}

/// Parses, and on success checks that the rendering parses back identically.
/// Returns whether the input was accepted.
fn check(target: &str, text: &str) -> bool {
    match target {
        "parse_arrangement" => parse_arrangement(text)
            .map(|a| assert_eq!(parse_arrangement(&a.to_text()).unwrap(), a))
            .is_ok(),
        "parse_pairs" => parse_pairs(text)
            .map(|p| assert_eq!(parse_pairs(&p.to_string()).unwrap(), p))
            .is_ok(),
        "parse_presentation" => parse_presentation(text)
            .map(|p| assert_eq!(parse_presentation(&p.to_string()).unwrap(), p))
            .is_ok(),
        "presentation_json" => Presentation::from_json(text)
            .map(|p| assert_eq!(Presentation::from_json(&p.to_json()).unwrap(), p))
            .is_ok(),
        "parse_certificate" => parse_certificate(text)
            .map(|c| assert_eq!(parse_certificate(&c.to_string()).unwrap(), c))
            .is_ok(),
        "group_table" => FiniteGroupTable::parse("g", text)
            .map(|g| assert_eq!(FiniteGroupTable::parse("g", &g.to_string()).unwrap(), g))
            .is_ok(),
        _ => unreachable!(),
    }
}

#[test]
fn seeds_are_accepted() {
    for t in TARGETS {
        let s = seeds(t);
        assert!(!s.is_empty(), "{t}: no seeds");
        for text in s {
            assert!(check(t, &text), "{t}: seed rejected:\n{text}");
        }
    }
}

#[derive(Clone, Debug)]
enum Edit {
    Delete(usize, usize),
    Insert(usize, String),
    Duplicate(usize, usize),
}

fn edit() -> impl Strategy<Value = Edit> {
    let token = prop::sample::select(vec![
        " ", "\n", "-", "/", "0", "1", "7", "^-1", "x", "x0", "x9", ";", "[", "]", "e", "=", "#", ":", "{", "}",
        "\"", ",", "conj", "rewrite", "goal", "forward", "backward", "gens=", "ell=", "order=", "kind=projective",
        "99999999999999999999",
    ]);
    prop_oneof![
        (any::<usize>(), 1usize..8).prop_map(|(a, n)| Edit::Delete(a, n)),
        (any::<usize>(), token).prop_map(|(a, t)| Edit::Insert(a, t.to_string())),
        (any::<usize>(), 1usize..16).prop_map(|(a, n)| Edit::Duplicate(a, n)),
    ]
}

fn apply(text: &str, edits: &[Edit]) -> String {
    let mut b: Vec<char> = text.chars().collect();
    for e in edits {
        let at = |a: usize| if b.is_empty() { 0 } else { a % (b.len() + 1) };
        match e {
            Edit::Delete(a, n) => {
                let s = at(*a);
                let end = (s + n).min(b.len());
                b.drain(s..end);
            }
            Edit::Insert(a, t) => {
                let s = at(*a);
                b.splice(s..s, t.chars());
            }
            Edit::Duplicate(a, n) => {
                let s = at(*a);
                let end = (s + n).min(b.len());
                let chunk: Vec<char> = b[s..end].to_vec();
                b.splice(s..s, chunk);
            }
        }
    }
    b.into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn mutated_seeds_never_panic(t in 0usize..TARGETS.len(), k in any::<usize>(), edits in prop::collection::vec(edit(), 1..6)) {
        let target = TARGETS[t];
        let s = seeds(target);
        let text = apply(&s[k % s.len()], &edits);
        check(target, &text);
    }

    #[test]
    fn arbitrary_text_never_panics(t in 0usize..TARGETS.len(), text in "\\PC{0,80}") {
        check(TARGETS[t], &text);
    }
}
