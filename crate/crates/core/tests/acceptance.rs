//! Acceptance gate: every criterion at its stated scope and time budget.
//! Prints one PASS/FAIL line per criterion, then fails if any failed.
//! Lines go straight to the stdout handle so they show without --nocapture.

use std::io::Write;
use std::time::{Duration, Instant};

use tangles_core::branch::branch_width;
use tangles_core::catalog;
use tangles_core::tangle::enumerate_tangles;
use tangles_core::verify::{run, Outcome, Suite};
use tangles_core::SubsetMask;

struct Criterion {
    id: u32,
    title: &'static str,
    suites: &'static [Suite],
    budget: Duration,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

const CRITERIA: [Criterion; 9] = [
    Criterion {
        id: 1,
        title: "axioms",
        suites: &[Suite::Axioms],
        budget: secs(30),
    },
    Criterion {
        id: 2,
        title: "deletion/contraction inequality",
        suites: &[Suite::BcIneq],
        budget: secs(60),
    },
    Criterion {
        id: 3,
        title: "deletion/pivot inequality",
        suites: &[Suite::PmIneq],
        budget: secs(60),
    },
    Criterion {
        id: 4,
        title: "pivot invariance",
        suites: &[Suite::PivotInvariance],
        budget: secs(30),
    },
    Criterion {
        id: 5,
        title: "adhering removal exists",
        suites: &[Suite::AdheringRemoval],
        budget: secs(120),
    },
    Criterion {
        id: 6,
        title: "adherence implies split-free",
        suites: &[Suite::AdherenceSplitFree],
        budget: secs(300),
    },
    Criterion {
        id: 7,
        title: "split-free removal exists",
        suites: &[Suite::SplitFreeRemoval],
        budget: secs(600),
    },
    Criterion {
        id: 8,
        title: "tangle/decomposition duality",
        suites: &[Suite::Duality],
        budget: secs(600),
    },
    Criterion {
        id: 9,
        title: "decomposition properties",
        suites: &[
            Suite::TangleLeaf,
            Suite::LinkedRemap,
            Suite::WeaklyBranched,
            Suite::LinkedBranched,
        ],
        budget: secs(300),
    },
];

fn m(bits: u32) -> SubsetMask {
    SubsetMask::from_bits(bits)
}

/// Point values, each compared exactly. Returns the mismatches.
fn point_values() -> Vec<String> {
    let mut bad = Vec::new();
    let mut expect = |what: &str, got: u64, want: u64| {
        if got != want {
            bad.push(format!("{what}: got {got}, expected {want}"));
        }
    };

    let u24 = catalog::uniform(2, 4).unwrap().system();
    for x in SubsetMask::all(4) {
        let want = [1, 2, 3, 2, 1][x.len()];
        expect(&format!("lambda_U24({x:?})"), u24.at(x).into(), want);
    }

    let c4 = catalog::cycle(4).unwrap();
    expect(
        "cut-rank C4 {0,1}",
        c4.cut_rank(m(0b0011)).unwrap().into(),
        2,
    );
    expect(
        "cut-rank C4 {0,2}",
        c4.cut_rank(m(0b0101)).unwrap().into(),
        1,
    );

    for (k, want) in [(1, 1), (2, 1), (3, 1), (4, 0)] {
        expect(
            &format!("U24 tangles of order {k}"),
            enumerate_tangles(&u24, k).len() as u64,
            want,
        );
    }
    expect("branch_width(U24)", branch_width(&u24).into(), 3);

    let two = catalog::graphic(&catalog::two_triangles())
        .unwrap()
        .system();
    expect(
        "two triangles, order-2 tangles",
        enumerate_tangles(&two, 2).len() as u64,
        2,
    );
    bad
}

fn describe(outcomes: &[Outcome]) -> String {
    outcomes
        .iter()
        .map(|o| {
            let mut s = format!(
                "{}: {} cases over {} instances",
                o.suite, o.checked, o.instances
            );
            if let Some(v) = o.violations.first() {
                s.push_str(&format!(", {} violations, first {v}", o.violation_count));
            }
            s
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn report(line: String) {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{line}").expect("stdout");
    out.flush().expect("stdout");
}

#[test]
fn acceptance() {
    let mut failures = Vec::new();
    for c in &CRITERIA {
        let start = Instant::now();
        let outcomes: Vec<Outcome> = c
            .suites
            .iter()
            .map(|&s| run(s, s.default_scope()))
            .collect();
        let elapsed = start.elapsed();
        let ok = outcomes.iter().all(|o| o.passed() && o.checked > 0) && elapsed <= c.budget;
        let verdict = if ok { "PASS" } else { "FAIL" };
        report(format!(
            "criterion {:2} {verdict} {} [{:.1?} of {:?}] {}",
            c.id,
            c.title,
            elapsed,
            c.budget,
            describe(&outcomes)
        ));
        if !ok {
            failures.push(c.id);
        }
    }

    let bad = point_values();
    let verdict = if bad.is_empty() { "PASS" } else { "FAIL" };
    report(format!(
        "criterion 10 {verdict} point values {}",
        bad.join("; ")
    ));
    if !bad.is_empty() {
        failures.push(10);
    }

    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
