//! The acceptance criteria, one line per criterion. Exits non-zero if any
//! criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::props::*;
use common::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};

use linegroup::geom::{multiple_point_graph, parse_arrangement};
use linegroup::grouptheory::{
    direct_sum, fan_structure, materialize, oka_sakamoto_split, semidirect_fixture, SemidirectVariant, Split,
};
use linegroup::presentations::{
    abelianization, cf_verdict, hom_count, parse_certificate, replay, Budget, FiniteGroupTable, HomCount,
    OrderingSpec, Outcome, VerdictReport,
};
use linegroup::vankampen::{projectivize, Presentation};
use linegroup::{fixtures, wiring::PairList};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn group(name: &str) -> FiniteGroupTable {
    FiniteGroupTable::named(name).expect("named group")
}

fn count(p: &Presentation, g: &FiniteGroupTable) -> Result<u128, String> {
    match hom_count(p, g, u64::MAX) {
        HomCount::Exact(n) => Ok(n),
        HomCount::Aborted => Err(format!("hom-count into {} aborted", g.name)),
    }
}

fn verdict(name: &str, spec: OrderingSpec) -> Result<VerdictReport, String> {
    let p = fixture(name);
    cf_verdict(
        &p.sweep.pairs,
        &p.lat,
        &p.sweep.natural_ordering(),
        &spec,
        Budget::default(),
        &[],
        0,
    )
    .map_err(|e| e.to_string())
}

fn criterion1() -> Check {
    let start = Instant::now();
    let p = fixture("triangle");
    ensure(pairs_of(&p.sweep.pairs) == TRIANGLE_PAIRS, "pair list differs from the triangle list")?;
    ensure(p.pres.sorted_relations() == triangle_family(2), "relations differ from the triangle family at n=2")?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("9 pairs, 9 relations, {:.2?}", start.elapsed()))
}

fn criterion2() -> Check {
    let mut notes = Vec::new();
    for name in ["triangle", "cycle5"] {
        let start = Instant::now();
        let report = verdict(name, OrderingSpec::Natural)?;
        let o = &report.orderings[0];
        let Outcome::Certified(cert) = &o.outcome else {
            return Err(format!("{name}: {:?}", o.outcome));
        };
        replay(&report.source, &o.candidate, cert).map_err(|e| format!("{name}: replay: {e}"))?;
        let text = cert.to_string();
        let back = parse_certificate(&text).map_err(|e| format!("{name}: reparse: {e}"))?;
        ensure(&back == cert && back.to_string() == text, format!("{name}: text round trip differs"))?;
        replay(&report.source, &o.candidate, &back).map_err(|e| format!("{name}: replay of text: {e}"))?;
        within(start.elapsed(), Duration::from_secs(30))?;
        notes.push(format!("{name} {} steps {:.2?}", cert.len(), start.elapsed()));
    }
    Ok(notes.join(", "))
}

fn criterion3() -> Check {
    let p = fixture("cycle5");
    ensure(pairs_of(&p.sweep.pairs) == CYCLE5_PAIRS, "pair list differs from the cycle list")?;
    let got = p.pres.sorted_relations();
    let want = cycle_family(5);
    let missing = want.iter().filter(|r| !got.contains(r)).count();
    ensure(got == want, format!("{missing} family relations missing"))?;
    Ok("35/35 relations of Q1 Q2 T1 T2 T3 T4".into())
}

fn criterion4() -> Check {
    let start = Instant::now();
    let report = verdict("ceva", OrderingSpec::All)?;
    let n = report.orderings.len();
    ensure(n == 720, format!("{n} orderings"))?;
    if let Some(o) = report.certified() {
        return Err(format!("ordering {:?} certified", o.ordering));
    }
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!("720/720 unknown, {:.2?}", start.elapsed()))
}

fn criterion5() -> Check {
    let start = Instant::now();
    let semi = semidirect_fixture(SemidirectVariant::Triangle);
    let pipe = fixture("triangle").pres;
    let mut notes = Vec::new();
    for g in ["S3", "S4"] {
        let g = group(g);
        let (a, b) = (count(&semi, &g)?, count(&pipe, &g)?);
        ensure(a == b, format!("{}: semidirect {a}, pipeline {b}", g.name))?;
        notes.push(format!("{} {a}", g.name));
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("{}, {:.2?}", notes.join(", "), start.elapsed()))
}

fn criterion6() -> Check {
    let start = Instant::now();
    let s3 = group("S3");
    let mut notes = Vec::new();
    for (name, want) in [("near_pencil", "Z^1 (+) F_2"), ("pencil", "F_2")] {
        let p = fixture(name);
        let g = multiple_point_graph(&p.arr, &p.lat);
        ensure(g.betti == 0, format!("{name}: betti {}", g.betti))?;
        let d = fan_structure(p.arr.len(), &p.lat.multiplicities(), g.betti).map_err(|e| e.to_string())?;
        ensure(d.to_string() == want, format!("{name}: {d}"))?;
        let (a, b) = (count(&projectivize(&p.pres), &s3)?, count(&materialize(&d), &s3)?);
        ensure(a == b, format!("{name}: pipeline {a}, descriptor {b}"))?;
        notes.push(format!("{name} {d} ({a})"));
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(notes.join(", "))
}

fn criterion7() -> Check {
    let start = Instant::now();
    let whole = fixture("triangle_generic");
    let Split::Parts(parts) = oka_sakamoto_split(&whole.arr).map_err(|e| e.to_string())? else {
        return Err("no split".into());
    };
    let mut sizes: Vec<usize> = parts.iter().map(|q| q.len()).collect();
    sizes.sort();
    ensure(sizes == [1, 6], format!("split sizes {sizes:?}"))?;
    let pieces: Vec<Presentation> = parts
        .iter()
        .map(|q| {
            let text: Vec<String> = q.iter().map(|&l| whole.arr.lines[l].to_string()).collect();
            let sub = parse_arrangement(&text.join("\n")).expect("sub-arrangement");
            pipeline(&sub.to_text()).pres
        })
        .collect();
    let sum = direct_sum(&pieces);
    let s3 = group("S3");
    let (a, b) = (count(&whole.pres, &s3)?, count(&sum, &s3)?);
    ensure(a == b, format!("whole {a}, direct sum {b}"))?;
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("{{6,1}}, S3 {a}, {:.2?}", start.elapsed()))
}

fn run<S, F>(cases: u32, strategy: S, check: F) -> Result<(), String>
where
    S: proptest::strategy::Strategy,
    S::Value: std::fmt::Debug,
    F: Fn(S::Value) -> Result<(), proptest::test_runner::TestCaseError>,
{
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    let mut runner = TestRunner::new_with_rng(config, rng);
    runner.run(&strategy, check).map_err(|e| match e {
        TestError::Abort(why) => format!("aborted: {why}"),
        TestError::Fail(why, v) => format!("{why} for {v:?}"),
    })
}

fn criterion8() -> Check {
    use proptest::prelude::*;
    let start = Instant::now();
    for ell in 2..=8 {
        check_braid_relations(ell).map_err(|e| e.to_string())?;
    }
    run(
        1000,
        (2usize..=8).prop_flat_map(|ell| (Just(ell), braid_word(ell, 12), word(ell, 10))),
        |(ell, b, w)| check_artin_inverse(ell, &b, &w),
    )?;
    run(
        256,
        (2usize..=8).prop_flat_map(|ell| (Just(ell), braid_word(ell, 16))),
        |(ell, b)| check_boundary(ell, &b),
    )?;
    for (name, _) in fixtures::ALL {
        let p = fixture(name);
        let a = abelianization(&p.pres);
        ensure(a.rank == p.pres.ngens && a.torsion_free(), format!("{name}: abelianization {a:?}"))?;
    }
    run(100, raw_arrangement(8), |lines| check_lattice_pairs(&lines))?;
    // Every certified pair from criterion 2, into S3 and S4.
    for name in ["triangle", "cycle5"] {
        let report = verdict(name, OrderingSpec::Natural)?;
        for o in report.orderings.iter().filter(|o| o.outcome.is_certified()) {
            for g in ["S3", "S4"] {
                let g = group(g);
                let (a, b) = (count(&report.source, &g)?, count(&o.candidate, &g)?);
                ensure(a == b, format!("{name} into {}: {a} vs {b}", g.name))?;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!("all suites, {:.2?}", start.elapsed()))
}

fn main() -> ExitCode {
    // Sanity: the pair lists used above are complete wiring diagrams.
    for (ell, pairs) in [(6, &TRIANGLE_PAIRS[..]), (10, &CYCLE5_PAIRS[..])] {
        linegroup::wiring::validate_pairs(&PairList::from_tuples(ell, pairs), true).expect("complete");
    }
    let criteria: [Criterion; 8] = [
        ("calibration golden test", criterion1),
        ("conjugation-free certification", criterion2),
        ("cycle-of-5 relation families", criterion3),
        ("Ceva negative test", criterion4),
        ("semidirect cross-check", criterion5),
        ("Fan formula", criterion6),
        ("Oka-Sakamoto splitting", criterion7),
        ("property suites", criterion8),
    ];
    let mut failed = 0;
    for (k, (title, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(note) => println!("criterion {}: PASS {title} ({note})", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {title} ({why})", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
