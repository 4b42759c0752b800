//! Bounded search for certificates of equivalence between a presentation and
//! a conjugation-free target.
//!
//! The search runs a fixpoint over the source relations in order. A source
//! relation is resolved once it has been rewritten into a target relation;
//! resolved relations become rewriting rules ("established") for the rest.
//! Each relation is handled by a best-first search whose moves are
//!
//! * conjugating every entry by one letter,
//! * length-preserving half-relator replacements inside an entry,
//!
//! each followed by greedy normalization: moving a conjugator letter through
//! the part it conjugates by established commutators, and length-reducing
//! relator replacements.
//!
//! Only established relations are used as rules, and they are target
//! relations. The derivation of each source relation therefore inverts into
//! a derivation of it from the target, which gives the backward part.

use std::collections::{BTreeSet, BinaryHeap, HashMap, HashSet};
use std::cmp::Reverse;

use crate::braid::{Letter, Word};
use crate::vankampen::{least_rotation, CyclicRelation, Presentation};

use super::certificate::{Certificate, Part, Step};

/// Search and acceptance limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Longest word allowed in a certificate.
    pub max_word_len: usize,
    /// Most steps allowed in a certificate.
    pub max_steps: usize,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_word_len: 64,
            max_steps: 20_000,
        }
    }
}

/// Nodes expanded per relation search. Fixed, so that the search itself does
/// not depend on the budget and a larger budget accepts everything a smaller
/// one does.
pub const NODE_CAP: usize = 3000;
/// Entries longer than this are pruned during search.
pub const SEARCH_WORD_LEN: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Certified(Certificate),
    Unknown(String),
}

impl Outcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, Outcome::Certified(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Move {
    Conj(Word),
    /// Replace entry `entry` by `new`, justified by the established relation
    /// `using`.
    Rewrite {
        entry: usize,
        new: Word,
        using: CyclicRelation,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Link {
    mv: Move,
    /// Index of the rewritten entry in the resulting relation.
    post_entry: usize,
    post: CyclicRelation,
}

/// A derivation of one relation: `start`, then each link's relation.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Chain {
    start: CyclicRelation,
    links: Vec<Link>,
}

impl Chain {
    fn end(&self) -> &CyclicRelation {
        self.links.last().map_or(&self.start, |l| &l.post)
    }
}

/// Free reduction of cyclic words: `w = s · core · s^-1`.
pub fn cyclic_reduce(w: &Word) -> (Word, Word) {
    let l = w.letters();
    let mut k = 0;
    while 2 * k + 1 < l.len() && l[k] == l[l.len() - 1 - k].inverse() {
        k += 1;
    }
    (Word::from_letters(l[..k].iter().copied()), Word::from_letters(l[k..l.len() - k].iter().copied()))
}

/// Finds `(t, from, to)` with `t P_to P_from^-1 t^-1 = d` freely.
pub fn relator_embedding(u: &CyclicRelation, d: &Word) -> Option<(Word, usize, usize)> {
    if d.is_empty() {
        return Some((Word::identity(), 0, 0));
    }
    let (t0, dc) = cyclic_reduce(d);
    let k = u.len();
    for from in 0..k {
        for to in 0..k {
            if from == to {
                continue;
            }
            let kappa = u.rotation_product(to).concat(&u.rotation_product(from).inverse());
            let (s0, kc) = cyclic_reduce(&kappa);
            if kc.len() != dc.len() {
                continue;
            }
            let kl = kc.letters();
            let n = kl.len();
            for q in 0..n {
                let matches = (0..n).all(|i| kl[(q + i) % n] == dc.letters()[i]);
                if matches {
                    let a = kc.prefix(q);
                    let t = t0.concat(&a.inverse()).concat(&s0.inverse());
                    return Some((t, from, to));
                }
            }
        }
    }
    None
}

/// Rewriting rules derived from the established relations.
struct Rules {
    /// `(relation, cyclically reduced relator rotation)`.
    rotations: Vec<(usize, Vec<Letter>)>,
    by_first: HashMap<Letter, Vec<usize>>,
    /// Generator pair `(lo, hi)` to the commutator relation.
    commute: HashMap<(usize, usize), usize>,
    relations: Vec<CyclicRelation>,
}

impl Rules {
    fn new(established: &[CyclicRelation]) -> Rules {
        let mut rotations = Vec::new();
        let mut seen = HashSet::new();
        let mut commute = HashMap::new();
        for (ri, r) in established.iter().enumerate() {
            if r.len() == 2 {
                if let (Some(a), Some(b)) = (r.words()[0].as_generator(), r.words()[1].as_generator()) {
                    commute.entry((a.min(b), a.max(b))).or_insert(ri);
                }
            }
            let k = r.len();
            for from in 0..k {
                for to in 0..k {
                    if from == to {
                        continue;
                    }
                    let kappa = r.rotation_product(to).concat(&r.rotation_product(from).inverse());
                    let (_, kc) = cyclic_reduce(&kappa);
                    let l = kc.letters();
                    for q in 0..l.len() {
                        let rot: Vec<Letter> = l[q..].iter().chain(&l[..q]).copied().collect();
                        if seen.insert(rot.clone()) {
                            rotations.push((ri, rot));
                        }
                    }
                }
            }
        }
        let mut by_first: HashMap<Letter, Vec<usize>> = HashMap::new();
        for (i, (_, rot)) in rotations.iter().enumerate() {
            by_first.entry(rot[0]).or_default().push(i);
        }
        Rules {
            rotations,
            by_first,
            commute,
            relations: established.to_vec(),
        }
    }

    fn commutes(&self, a: usize, b: usize) -> Option<usize> {
        self.commute.get(&(a.min(b), a.max(b))).copied()
    }

    /// Replacements of a matched relator prefix `u` (of length `len(u)`) by
    /// the inverse of the rest. `strict` asks for `len(u) > len/2`, otherwise
    /// exactly half.
    fn replacements(&self, w: &Word, strict: bool) -> Vec<(Word, usize)> {
        let l = w.letters();
        let mut out = Vec::new();
        for p in 0..l.len() {
            let Some(cands) = self.by_first.get(&l[p]) else {
                continue;
            };
            for &ci in cands {
                let (ri, rot) = &self.rotations[ci];
                let n = rot.len();
                let mut m = 0;
                while m < n && p + m < l.len() && l[p + m] == rot[m] {
                    m += 1;
                }
                let take = if strict {
                    if 2 * m <= n {
                        continue;
                    }
                    m
                } else {
                    if n % 2 != 0 || 2 * m < n {
                        continue;
                    }
                    n / 2
                };
                let v_inv = rot[take..].iter().rev().map(|x| x.inverse());
                let new = Word::from_letters(
                    l[..p].iter().copied().chain(v_inv).chain(l[p + take..].iter().copied()),
                );
                out.push((new, *ri));
                if strict {
                    return out;
                }
            }
        }
        out
    }

    /// Moves the innermost conjugator letter that commutes with everything it
    /// conjugates out of the way, one transposition at a time.
    fn move_through(&self, w: &Word) -> Option<Vec<(Word, usize)>> {
        let (u, _) = w.as_conjugate()?;
        let l = w.letters();
        let n = l.len();
        for k in (0..u.len()).rev() {
            let g = l[k].generator();
            let inner = &l[k + 1..n - 1 - k];
            let mut usings = Vec::with_capacity(inner.len());
            for y in inner {
                if y.generator() == g {
                    break;
                }
                match self.commutes(g, y.generator()) {
                    Some(ri) => usings.push(ri),
                    None => break,
                }
            }
            if usings.len() != inner.len() {
                continue;
            }
            let mut cur = l.to_vec();
            let mut seq = Vec::with_capacity(inner.len());
            for (j, ri) in usings.into_iter().enumerate() {
                cur.swap(k + j, k + j + 1);
                seq.push((Word::from_letters(cur.iter().copied()), ri));
            }
            return Some(seq);
        }
        None
    }
}

fn replace_entry(r: &CyclicRelation, entry: usize, new: Word) -> (CyclicRelation, usize) {
    let mut words = r.words().to_vec();
    words[entry] = new;
    let k = words.len();
    let rot = least_rotation(&words);
    words.rotate_left(rot);
    (CyclicRelation::new(words), (entry + k - rot) % k)
}

fn push_rewrite(links: &mut Vec<Link>, cur: &mut CyclicRelation, entry: usize, new: Word, using: &CyclicRelation) {
    let (post, post_entry) = replace_entry(cur, entry, new.clone());
    links.push(Link {
        mv: Move::Rewrite {
            entry,
            new,
            using: using.clone(),
        },
        post_entry,
        post: post.clone(),
    });
    *cur = post;
}

/// Applies greedy moves until none applies.
fn normalize(rules: &Rules, mut cur: CyclicRelation, links: &mut Vec<Link>) -> CyclicRelation {
    'outer: loop {
        for e in 0..cur.len() {
            let w = cur.words()[e].clone();
            if let Some(seq) = rules.move_through(&w) {
                let mut entry = e;
                for (new, ri) in seq {
                    push_rewrite(links, &mut cur, entry, new, &rules.relations[ri]);
                    entry = links.last().unwrap().post_entry;
                }
                continue 'outer;
            }
            if let Some((new, ri)) = rules.replacements(&w, true).into_iter().next() {
                push_rewrite(links, &mut cur, e, new, &rules.relations[ri]);
                continue 'outer;
            }
        }
        return cur;
    }
}

/// The cyclic sequence of abelianized entries. Every move preserves it.
fn entry_signature(r: &CyclicRelation, ngens: usize) -> Vec<Vec<i64>> {
    let mut sig: Vec<Vec<i64>> = r.words().iter().map(|w| w.exponent_vector(ngens)).collect();
    let k = least_rotation(&sig);
    sig.rotate_left(k);
    sig
}

fn too_long(r: &CyclicRelation) -> bool {
    r.words().iter().any(|w| w.len() > SEARCH_WORD_LEN)
}

/// Best-first search from `start` to any relation in `goals`.
fn search(
    start: &CyclicRelation,
    goals: &HashSet<CyclicRelation>,
    rules: &Rules,
    ngens: usize,
) -> Option<Chain> {
    let mut links = Vec::new();
    let first = normalize(rules, start.clone(), &mut links);
    if goals.contains(&first) {
        return Some(Chain {
            start: start.clone(),
            links,
        });
    }
    // Node storage: relation, parent node and the links leading to it.
    let mut nodes: Vec<(CyclicRelation, Option<usize>, Vec<Link>)> = vec![(first.clone(), None, links)];
    let mut seen: HashSet<CyclicRelation> = HashSet::from([first.clone()]);
    let mut heap = BinaryHeap::from([Reverse((first.total_len(), 0usize))]);
    let mut expanded = 0;
    while let Some(Reverse((_, id))) = heap.pop() {
        expanded += 1;
        if expanded > NODE_CAP {
            break;
        }
        let cur = nodes[id].0.clone();
        let mut children: Vec<(CyclicRelation, Vec<Link>)> = Vec::new();
        for g in 1..=ngens {
            for inv in [false, true] {
                let c = Word::from_letters([Letter::new(g, inv)]);
                let post = cur.map_words(|w| w.conjugate_by(&c));
                let mut ls = vec![Link {
                    mv: Move::Conj(c),
                    post_entry: 0,
                    post: post.clone(),
                }];
                let post = normalize(rules, post, &mut ls);
                children.push((post, ls));
            }
        }
        for e in 0..cur.len() {
            for (new, ri) in rules.replacements(&cur.words()[e], false) {
                let mut ls = Vec::new();
                let mut post = cur.clone();
                push_rewrite(&mut ls, &mut post, e, new, &rules.relations[ri]);
                let post = normalize(rules, post, &mut ls);
                children.push((post, ls));
            }
        }
        for (post, ls) in children {
            if too_long(&post) || !seen.insert(post.clone()) {
                continue;
            }
            let nid = nodes.len();
            let done = goals.contains(&post);
            nodes.push((post.clone(), Some(id), ls));
            if done {
                return Some(unwind(start, &nodes, nid));
            }
            heap.push(Reverse((post.total_len(), nid)));
        }
    }
    None
}

fn unwind(start: &CyclicRelation, nodes: &[(CyclicRelation, Option<usize>, Vec<Link>)], mut id: usize) -> Chain {
    let mut parts = Vec::new();
    loop {
        parts.push(nodes[id].2.clone());
        match nodes[id].1 {
            Some(p) => id = p,
            None => break,
        }
    }
    Chain {
        start: start.clone(),
        links: parts.into_iter().rev().flatten().collect(),
    }
}

/// Memo for per-relation searches, keyed by the relation, the established
/// rules and the goal set. Results depend only on the key.
#[derive(Default)]
pub struct SearchCache {
    map: HashMap<(CyclicRelation, Vec<CyclicRelation>, Vec<CyclicRelation>), Option<Chain>>,
}

impl SearchCache {
    pub fn new() -> SearchCache {
        SearchCache::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Searches for a two-sided certificate from `source` to `target`.
pub fn prove_equivalent(source: &Presentation, target: &Presentation, budget: Budget) -> Outcome {
    prove_equivalent_cached(source, target, budget, &mut SearchCache::new())
}

pub fn prove_equivalent_cached(
    source: &Presentation,
    target: &Presentation,
    budget: Budget,
    cache: &mut SearchCache,
) -> Outcome {
    if source.ngens != target.ngens {
        return Outcome::Unknown(format!(
            "generator counts differ ({} vs {})",
            source.ngens, target.ngens
        ));
    }
    if source.equations != target.equations {
        return Outcome::Unknown("equations are not handled by the search".into());
    }
    let ngens = source.ngens;
    let target_index: HashMap<&CyclicRelation, usize> =
        target.relations.iter().enumerate().map(|(i, r)| (r, i)).rev().collect();
    let target_sigs: Vec<Vec<Vec<i64>>> = target
        .relations
        .iter()
        .map(|r| entry_signature(r, ngens))
        .collect();

    let n = source.relations.len();
    let mut chains: Vec<Option<Chain>> = vec![None; n];
    let mut established: BTreeSet<CyclicRelation> = BTreeSet::new();
    for (i, r) in source.relations.iter().enumerate() {
        if target_index.contains_key(r) {
            chains[i] = Some(Chain {
                start: r.clone(),
                links: Vec::new(),
            });
            established.insert(r.clone());
        }
    }
    // Resolution order, for emitting forward steps that only use relations
    // established earlier.
    let mut order: Vec<usize> = (0..n).filter(|&i| chains[i].is_some()).collect();
    let mut tried_with: Vec<Option<usize>> = vec![None; n];
    loop {
        let mut progress = false;
        for i in 0..n {
            if chains[i].is_some() || tried_with[i] == Some(established.len()) {
                continue;
            }
            tried_with[i] = Some(established.len());
            let r = &source.relations[i];
            let sig = entry_signature(r, ngens);
            let goals: Vec<CyclicRelation> = target
                .relations
                .iter()
                .zip(&target_sigs)
                .filter(|(_, s)| **s == sig)
                .map(|(t, _)| t.clone())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            if goals.is_empty() {
                continue;
            }
            let est: Vec<CyclicRelation> = established.iter().cloned().collect();
            let key = (r.clone(), est.clone(), goals.clone());
            let found = match cache.map.get(&key) {
                Some(c) => c.clone(),
                None => {
                    let rules = Rules::new(&est);
                    let goal_set: HashSet<CyclicRelation> = goals.iter().cloned().collect();
                    let c = search(r, &goal_set, &rules, ngens);
                    cache.map.insert(key, c.clone());
                    c
                }
            };
            if let Some(chain) = found {
                established.insert(chain.end().clone());
                chains[i] = Some(chain);
                order.push(i);
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    let unresolved: Vec<usize> = (0..n).filter(|&i| chains[i].is_none()).collect();
    if !unresolved.is_empty() {
        let list: Vec<String> = unresolved.iter().map(|i| i.to_string()).collect();
        return Outcome::Unknown(format!("unresolved source relations: {}", list.join(", ")));
    }
    let hit: HashSet<&CyclicRelation> = chains.iter().map(|c| c.as_ref().unwrap().end()).collect();
    if let Some(j) = target.relations.iter().position(|t| !hit.contains(t)) {
        return Outcome::Unknown(format!("target relation {j} is not reached"));
    }
    let chains: Vec<Chain> = chains.into_iter().map(Option::unwrap).collect();
    let cert = emit(source, target, &chains, &order);
    if cert.len() > budget.max_steps {
        return Outcome::Unknown(format!(
            "certificate needs {} steps, budget is {}",
            cert.len(),
            budget.max_steps
        ));
    }
    let longest = chains
        .iter()
        .flat_map(|c| c.links.iter().map(|l| &l.post).chain([&c.start]))
        .flat_map(|r| r.words().iter().map(Word::len))
        .max()
        .unwrap_or(0)
        .max(cert.max_word_len());
    if longest > budget.max_word_len {
        return Outcome::Unknown(format!(
            "certificate needs words of length {longest}, budget is {}",
            budget.max_word_len
        ));
    }
    Outcome::Certified(cert)
}

fn rewrite_step(
    rel: usize,
    pre: &CyclicRelation,
    entry: usize,
    new: &Word,
    using_rel: &CyclicRelation,
    using: usize,
) -> Step {
    let old = &pre.words()[entry];
    let pos = old
        .letters()
        .iter()
        .zip(new.letters())
        .take_while(|(a, b)| a == b)
        .count();
    let a = old.prefix(pos);
    let d = a.inverse().concat(new).concat(&old.inverse()).concat(&a);
    let (t, from, to) = relator_embedding(using_rel, &d).expect("rewrite is a relator conjugate");
    Step::Rewrite {
        rel,
        entry,
        pos,
        using,
        from,
        to,
        t,
    }
}

fn emit(source: &Presentation, target: &Presentation, chains: &[Chain], order: &[usize]) -> Certificate {
    // Forward: from the source relations towards the targets.
    let mut fwd = Part::default();
    let mut count = source.relations.len();
    let mut where_est: HashMap<CyclicRelation, usize> = HashMap::new();
    for &i in order {
        let chain = &chains[i];
        let mut cur = i;
        let mut pre = chain.start.clone();
        for link in &chain.links {
            let step = match &link.mv {
                Move::Conj(c) => Step::Conjugate { rel: cur, by: c.clone() },
                Move::Rewrite { entry, new, using } => {
                    rewrite_step(cur, &pre, *entry, new, using, where_est[using])
                }
            };
            fwd.steps.push(step);
            cur = count;
            count += 1;
            pre = link.post.clone();
        }
        where_est.entry(chain.end().clone()).or_insert(cur);
    }
    for (j, t) in target.relations.iter().enumerate() {
        fwd.goals.push((j, where_est[t]));
    }

    // Backward: each chain inverted, starting from its target relation.
    let mut bwd = Part::default();
    let tindex: HashMap<&CyclicRelation, usize> =
        target.relations.iter().enumerate().map(|(i, r)| (r, i)).rev().collect();
    let mut count = target.relations.len();
    for (i, chain) in chains.iter().enumerate() {
        let mut cur = tindex[chain.end()];
        for (k, link) in chain.links.iter().enumerate().rev() {
            let pre_state = if k == 0 { &chain.start } else { &chain.links[k - 1].post };
            let step = match &link.mv {
                Move::Conj(c) => Step::Conjugate { rel: cur, by: c.inverse() },
                Move::Rewrite { entry, using, .. } => {
                    let old = &pre_state.words()[*entry];
                    rewrite_step(cur, &link.post, link.post_entry, old, using, tindex[using])
                }
            };
            bwd.steps.push(step);
            cur = count;
            count += 1;
        }
        bwd.goals.push((i, cur));
    }
    Certificate {
        forward: fwd,
        backward: bwd,
    }
}
