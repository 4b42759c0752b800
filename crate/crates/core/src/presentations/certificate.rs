//! Replayable derivations between presentations.
//!
//! A certificate has a forward part, deriving every target relation from the
//! source relations, and a backward part, deriving every source relation from
//! the target relations. Each part works on a list of relations that starts
//! as the given relations; every step appends one new relation (in least
//! rotation, so rotations never need a step of their own).
//!
//! Steps, with `W` the entry `entry` of relation `rel`:
//!
//! * `conj rel : c` appends `[c w_1 c^-1, ..., c w_k c^-1]`.
//! * `rewrite rel entry pos using from to : t` replaces `W` by
//!   `W[..pos] · t P_to P_from^-1 t^-1 · W[pos..]`, where `P_r` are the
//!   rotation products of relation `using`. Since `P_to = P_from` holds, the
//!   new entry is equal to `W` in the group.
//! * `goal i rel` asserts that relation `rel` equals relation `i` of the
//!   other side.
//!
//! Indices are 0-based.

use std::fmt;

use thiserror::Error;

use crate::braid::Word;
use crate::vankampen::{CyclicRelation, Presentation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{part} step {step}: {msg}")]
    BadStep {
        part: &'static str,
        step: usize,
        msg: String,
    },
    #[error("{part} goal for relation {index}: {msg}")]
    BadGoal {
        part: &'static str,
        index: usize,
        msg: String,
    },
    #[error("presentations differ in generator count ({0} vs {1})")]
    GeneratorMismatch(usize, usize),
    #[error("equations differ between the presentations")]
    EquationMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Conjugate {
        rel: usize,
        by: Word,
    },
    Rewrite {
        rel: usize,
        entry: usize,
        pos: usize,
        using: usize,
        from: usize,
        to: usize,
        t: Word,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Part {
    pub steps: Vec<Step>,
    /// `(index on the other side, relation index in this part)`.
    pub goals: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub forward: Part,
    pub backward: Part,
}

impl Certificate {
    pub fn len(&self) -> usize {
        self.forward.steps.len() + self.backward.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Longest word occurring in any step.
    pub fn max_word_len(&self) -> usize {
        self.forward
            .steps
            .iter()
            .chain(&self.backward.steps)
            .map(|s| match s {
                Step::Conjugate { by, .. } => by.len(),
                Step::Rewrite { t, .. } => t.len(),
            })
            .max()
            .unwrap_or(0)
    }
}

/// Applies one step to the working list.
pub fn apply_step(work: &[CyclicRelation], step: &Step) -> Result<CyclicRelation, String> {
    let get = |i: usize| work.get(i).ok_or_else(|| format!("relation {i} does not exist"));
    match step {
        Step::Conjugate { rel, by } => Ok(get(*rel)?.map_words(|w| w.conjugate_by(by))),
        Step::Rewrite {
            rel,
            entry,
            pos,
            using,
            from,
            to,
            t,
        } => {
            let r = get(*rel)?;
            let u = get(*using)?;
            let w = r
                .words()
                .get(*entry)
                .ok_or_else(|| format!("relation {rel} has no entry {entry}"))?;
            if *pos > w.len() {
                return Err(format!("position {pos} beyond entry length {}", w.len()));
            }
            if *from >= u.len() || *to >= u.len() {
                return Err(format!("rotation index out of range for relation {using}"));
            }
            let d = u
                .rotation_product(*to)
                .concat(&u.rotation_product(*from).inverse())
                .conjugate_by(t);
            let new = w.prefix(*pos).concat(&d).concat(&w.suffix_from(*pos));
            let mut words = r.words().to_vec();
            words[*entry] = new;
            Ok(CyclicRelation::new(words))
        }
    }
}

fn replay_part(
    part: &Part,
    name: &'static str,
    start: &[CyclicRelation],
    goals: &[CyclicRelation],
) -> Result<(), CertificateError> {
    let mut work = start.to_vec();
    for (k, step) in part.steps.iter().enumerate() {
        let r = apply_step(&work, step).map_err(|msg| CertificateError::BadStep {
            part: name,
            step: k,
            msg,
        })?;
        work.push(r);
    }
    let mut covered = vec![false; goals.len()];
    for &(i, r) in &part.goals {
        let bad = |msg: String| CertificateError::BadGoal {
            part: name,
            index: i,
            msg,
        };
        let goal = goals.get(i).ok_or_else(|| bad("no such relation".into()))?;
        let have = work
            .get(r)
            .ok_or_else(|| bad(format!("working relation {r} does not exist")))?;
        if have != goal {
            return Err(bad(format!("derived {have}, expected {goal}")));
        }
        covered[i] = true;
    }
    if let Some(i) = covered.iter().position(|c| !c) {
        return Err(CertificateError::BadGoal {
            part: name,
            index: i,
            msg: "not derived".into(),
        });
    }
    Ok(())
}

/// Checks that the certificate derives every relation of each presentation
/// from the other.
pub fn replay(
    source: &Presentation,
    target: &Presentation,
    cert: &Certificate,
) -> Result<(), CertificateError> {
    if source.ngens != target.ngens {
        return Err(CertificateError::GeneratorMismatch(source.ngens, target.ngens));
    }
    let mut se = source.equations.clone();
    let mut te = target.equations.clone();
    se.sort();
    te.sort();
    if se != te {
        return Err(CertificateError::EquationMismatch);
    }
    replay_part(&cert.forward, "forward", &source.relations, &target.relations)?;
    replay_part(&cert.backward, "backward", &target.relations, &source.relations)?;
    Ok(())
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Conjugate { rel, by } => write!(f, "conj {rel} : {by}"),
            Step::Rewrite {
                rel,
                entry,
                pos,
                using,
                from,
                to,
                t,
            } => write!(f, "rewrite {rel} {entry} {pos} {using} {from} {to} : {t}"),
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, part) in [("forward", &self.forward), ("backward", &self.backward)] {
            writeln!(f, "{name}")?;
            for s in &part.steps {
                writeln!(f, "{s}")?;
            }
            for (i, r) in &part.goals {
                writeln!(f, "goal {i} {r}")?;
            }
        }
        Ok(())
    }
}

/// Parses the certificate text format produced by `Display`.
pub fn parse_certificate(text: &str) -> Result<Certificate, CertificateError> {
    let mut cert = Certificate::default();
    let mut part: Option<&mut Part> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |msg: &str| CertificateError::Parse {
            line,
            msg: msg.to_string(),
        };
        match body {
            "forward" => {
                part = Some(&mut cert.forward);
                continue;
            }
            "backward" => {
                part = Some(&mut cert.backward);
                continue;
            }
            _ => {}
        }
        let p = part
            .as_deref_mut()
            .ok_or_else(|| err("step before `forward` or `backward`"))?;
        let (head, tail) = match body.split_once(':') {
            Some((h, w)) => (h, Some(w)),
            None => (body, None),
        };
        let toks: Vec<&str> = head.split_whitespace().collect();
        let nums = |from: usize| -> Result<Vec<usize>, CertificateError> {
            toks[from..]
                .iter()
                .map(|t| t.parse().map_err(|_| err("malformed index")))
                .collect()
        };
        let parse_word = |w: Option<&str>| -> Result<Word, CertificateError> {
            w.ok_or_else(|| err("missing `: word`"))?
                .parse()
                .map_err(|_| err("malformed word"))
        };
        match toks.first().copied() {
            Some("conj") => {
                let n = nums(1)?;
                if n.len() != 1 {
                    return Err(err("expected `conj rel : word`"));
                }
                p.steps.push(Step::Conjugate {
                    rel: n[0],
                    by: parse_word(tail)?,
                });
            }
            Some("rewrite") => {
                let n = nums(1)?;
                if n.len() != 6 {
                    return Err(err("expected `rewrite rel entry pos using from to : t`"));
                }
                p.steps.push(Step::Rewrite {
                    rel: n[0],
                    entry: n[1],
                    pos: n[2],
                    using: n[3],
                    from: n[4],
                    to: n[5],
                    t: parse_word(tail)?,
                });
            }
            Some("goal") => {
                let n = nums(1)?;
                if n.len() != 2 || tail.is_some() {
                    return Err(err("expected `goal index rel`"));
                }
                p.goals.push((n[0], n[1]));
            }
            _ => return Err(err("unknown step")),
        }
    }
    Ok(cert)
}
