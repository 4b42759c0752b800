//! Finite groups given by multiplication tables, and counting homomorphisms
//! from a presented group into them.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::braid::Word;
use crate::vankampen::Presentation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("table is not a group: {0}")]
    NotAGroup(String),
    #[error("unknown group `{0}`")]
    Unknown(String),
}

/// A finite group as a multiplication table over `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    pub name: String,
    pub names: Vec<String>,
    /// Row-major: `table[a * order + b] = a·b`.
    pub table: Vec<usize>,
    pub identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroupTable {
    /// Validates the group axioms and builds the table.
    pub fn new(name: &str, names: Vec<String>, table: Vec<usize>) -> Result<FiniteGroupTable, GroupError> {
        let n = names.len();
        let bad = |m: String| Err(GroupError::NotAGroup(m));
        if n == 0 {
            return bad("empty".into());
        }
        if table.len() != n * n {
            return bad(format!("table has {} entries, expected {}", table.len(), n * n));
        }
        if table.iter().any(|&v| v >= n) {
            return bad("entry out of range".into());
        }
        let mul = |a: usize, b: usize| table[a * n + b];
        let Some(identity) = (0..n).find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a)) else {
            return bad("no identity".into());
        };
        let mut inverse = vec![0; n];
        for a in 0..n {
            match (0..n).find(|&b| mul(a, b) == identity && mul(b, a) == identity) {
                Some(b) => inverse[a] = b,
                None => return bad(format!("element {} has no inverse", names[a])),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul(a, b);
                for c in 0..n {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return bad(format!(
                            "not associative at ({}, {}, {})",
                            names[a], names[b], names[c]
                        ));
                    }
                }
            }
        }
        Ok(FiniteGroupTable {
            name: name.to_string(),
            names,
            table,
            identity,
            inverse,
        })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Conjugacy classes, each sorted, ordered by least element.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut done = vec![false; n];
        let mut out = Vec::new();
        for a in 0..n {
            if done[a] {
                continue;
            }
            let class: BTreeSet<usize> = (0..n).map(|g| self.mul(self.mul(g, a), self.inv(g))).collect();
            for &c in &class {
                done[c] = true;
            }
            out.push(class.into_iter().collect());
        }
        out
    }

    /// The group generated by permutations of `0..degree`, elements sorted
    /// in one-line notation (so the identity comes first).
    pub fn from_permutations(name: &str, degree: usize, gens: &[Vec<usize>]) -> FiniteGroupTable {
        let id: Vec<usize> = (0..degree).collect();
        let mut elems: BTreeSet<Vec<usize>> = BTreeSet::from([id]);
        let mut frontier: Vec<Vec<usize>> = elems.iter().cloned().collect();
        while let Some(p) = frontier.pop() {
            for g in gens {
                let q: Vec<usize> = (0..degree).map(|i| g[p[i]]).collect();
                if elems.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        let elems: Vec<Vec<usize>> = elems.into_iter().collect();
        let index = |p: &Vec<usize>| elems.binary_search(p).expect("closed under composition");
        let mut table = Vec::with_capacity(elems.len() * elems.len());
        for a in &elems {
            for b in &elems {
                // a·b means "apply b, then a".
                let ab: Vec<usize> = (0..degree).map(|i| a[b[i]]).collect();
                table.push(index(&ab));
            }
        }
        let names = elems
            .iter()
            .map(|p| p.iter().map(|i| i.to_string()).collect::<String>())
            .collect();
        FiniteGroupTable::new(name, names, table).expect("permutation groups are groups")
    }

    /// One of the shipped groups: S3, S4, A4, D4, A5.
    pub fn named(name: &str) -> Result<FiniteGroupTable, GroupError> {
        let g = match name {
            "S3" => FiniteGroupTable::from_permutations("S3", 3, &[vec![1, 0, 2], vec![1, 2, 0]]),
            "S4" => FiniteGroupTable::from_permutations("S4", 4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]),
            "A4" => FiniteGroupTable::from_permutations("A4", 4, &[vec![1, 2, 0, 3], vec![0, 2, 3, 1]]),
            "D4" => FiniteGroupTable::from_permutations("D4", 4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]),
            "A5" => FiniteGroupTable::from_permutations(
                "A5",
                5,
                &[vec![1, 2, 0, 3, 4], vec![1, 2, 3, 4, 0]],
            ),
            other => return Err(GroupError::Unknown(other.to_string())),
        };
        Ok(g)
    }

    /// The table file format: `order=<n>`, a line of `n` element names, then
    /// `n` rows of `n` names giving the products.
    pub fn parse(name: &str, text: &str) -> Result<FiniteGroupTable, GroupError> {
        let mut order: Option<usize> = None;
        let mut names: Option<Vec<String>> = None;
        let mut table = Vec::new();
        let mut rows = 0;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let err = |msg: &str| GroupError::Parse {
                line,
                msg: msg.to_string(),
            };
            let Some(n) = order else {
                let v = body.strip_prefix("order=").ok_or_else(|| err("expected `order=<n>`"))?;
                let n: usize = v.trim().parse().map_err(|_| err("malformed order"))?;
                if n == 0 || n > 4096 {
                    return Err(err("order must be between 1 and 4096"));
                }
                order = Some(n);
                continue;
            };
            let toks: Vec<&str> = body.split_whitespace().collect();
            if toks.len() != n {
                return Err(err(&format!("expected {n} entries, found {}", toks.len())));
            }
            match &names {
                None => {
                    let set: BTreeSet<&str> = toks.iter().copied().collect();
                    if set.len() != n {
                        return Err(err("element names must be distinct"));
                    }
                    names = Some(toks.iter().map(|s| s.to_string()).collect());
                }
                Some(ns) => {
                    if rows == n {
                        return Err(err("too many rows"));
                    }
                    for t in toks {
                        let v = ns
                            .iter()
                            .position(|s| s == t)
                            .ok_or_else(|| err(&format!("unknown element `{t}`")))?;
                        table.push(v);
                    }
                    rows += 1;
                }
            }
        }
        let names = names.ok_or(GroupError::Parse {
            line: 0,
            msg: "missing element names".into(),
        })?;
        if rows != names.len() {
            return Err(GroupError::Parse {
                line: 0,
                msg: format!("expected {} rows, found {rows}", names.len()),
            });
        }
        FiniteGroupTable::new(name, names, table)
    }
}

impl fmt::Display for FiniteGroupTable {
    /// The table file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order();
        writeln!(f, "order={n}")?;
        writeln!(f, "{}", self.names.join(" "))?;
        for a in 0..n {
            let row: Vec<&str> = (0..n).map(|b| self.names[self.mul(a, b)].as_str()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomCount {
    Exact(u128),
    /// The node budget ran out.
    Aborted,
}

impl fmt::Display for HomCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomCount::Exact(n) => write!(f, "{n}"),
            HomCount::Aborted => write!(f, "aborted"),
        }
    }
}

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Counts homomorphisms from the presented group into `g` by backtracking
/// over generator images. Generators are assigned in an order that completes
/// relators early; each relator is checked as soon as all of its generators
/// have images. The image of the first assigned generator is fixed to one
/// representative per conjugacy class and the count is weighted by the class
/// size, since conjugation permutes homomorphisms.
pub fn hom_count(p: &Presentation, g: &FiniteGroupTable, node_budget: u64) -> HomCount {
    let relators: Vec<Word> = p.relators().into_iter().filter(|w| !w.is_empty()).collect();
    let ngens = p.ngens;
    let gens_of: Vec<BTreeSet<usize>> = relators
        .iter()
        .map(|w| w.letters().iter().map(|l| l.generator() - 1).collect())
        .collect();
    let used: BTreeSet<usize> = gens_of.iter().flatten().copied().collect();
    let free = (ngens - used.len()) as u32;

    // Greedy order: next generator completes the most relators, then occurs
    // in the most relators, then has the least index.
    let mut order: Vec<usize> = Vec::new();
    let mut placed = vec![false; ngens];
    while order.len() < used.len() {
        let best = used
            .iter()
            .copied()
            .filter(|&x| !placed[x])
            .max_by_key(|&x| {
                let completes = gens_of
                    .iter()
                    .filter(|s| s.contains(&x) && s.iter().all(|&y| y == x || placed[y]))
                    .count();
                let touches = gens_of.iter().filter(|s| s.contains(&x)).count();
                (completes, touches, std::cmp::Reverse(x))
            })
            .unwrap();
        placed[best] = true;
        order.push(best);
    }
    let level_of: Vec<usize> = {
        let mut v = vec![usize::MAX; ngens];
        for (i, &x) in order.iter().enumerate() {
            v[x] = i;
        }
        v
    };
    // Relators to check at each level.
    let mut check: Vec<Vec<Vec<(usize, bool)>>> = vec![Vec::new(); order.len()];
    for (w, s) in relators.iter().zip(&gens_of) {
        let lvl = s.iter().map(|&x| level_of[x]).max().unwrap();
        check[lvl].push(w.letters().iter().map(|l| (l.generator() - 1, l.is_inverse())).collect());
    }

    let mut images = vec![g.identity; ngens];
    let mut nodes = 0u64;
    let mut total: u128 = 0;
    if order.is_empty() {
        total = 1;
    } else {
        for class in g.classes() {
            images[order[0]] = class[0];
            match count_from(g, &order, &check, 0, &mut images, &mut nodes, node_budget) {
                Some(c) => total += c * class.len() as u128,
                None => return HomCount::Aborted,
            }
        }
    }
    match (g.order() as u128).checked_pow(free).and_then(|f| f.checked_mul(total)) {
        Some(v) => HomCount::Exact(v),
        None => HomCount::Aborted,
    }
}

fn count_from(
    g: &FiniteGroupTable,
    order: &[usize],
    check: &[Vec<Vec<(usize, bool)>>],
    level: usize,
    images: &mut [usize],
    nodes: &mut u64,
    budget: u64,
) -> Option<u128> {
    *nodes += 1;
    if *nodes > budget {
        return None;
    }
    let ok = check[level].iter().all(|w| {
        let v = w.iter().fold(g.identity, |acc, &(x, inv)| {
            let img = images[x];
            g.mul(acc, if inv { g.inv(img) } else { img })
        });
        v == g.identity
    });
    if !ok {
        return Some(0);
    }
    if level + 1 == order.len() {
        return Some(1);
    }
    let x = order[level + 1];
    let mut sum = 0;
    for a in 0..g.order() {
        images[x] = a;
        sum += count_from(g, order, check, level + 1, images, nodes, budget)?;
    }
    Some(sum)
}
