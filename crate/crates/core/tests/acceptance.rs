//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cotorsion_lab::bijections::{verify_all, BijectionReport};
use cotorsion_lab::derived::DerivedModel;
use cotorsion_lab::homotopy_cat::{hom_k, realize, DerivedIndec};
use cotorsion_lab::linalg::Field;
use cotorsion_lab::quiver_rep::{ext1_dim, indec_catalog, Quiver};
use cotorsion_lab::subcat::{StarConfig, DEFAULT_WINDOW};

/// Expected triple counts for linear `A_1..A_4`.
const EXPECTED_COUNTS: [usize; 4] = [2, 5, 14, 42];
/// Wall-clock budget for criterion 1.
const COUNT_BUDGET: Duration = Duration::from_secs(60);
const MAX_N: usize = 4;
const CROSSCHECK_MAX_N: usize = 3;

fn model(n: usize, bits: &str) -> DerivedModel {
    let q = Quiver::with_orientation(n, bits).expect("orientation");
    DerivedModel::new(indec_catalog(&q, Field::default()).expect("catalog")).expect("model")
}

fn linear(n: usize) -> String {
    "0".repeat(n - 1)
}

/// Torsion classes of linear `A_n` counted from the interval combinatorics
/// alone: `Hom([a,b],[c,d]) ≠ 0` iff `c ≤ a ≤ d ≤ b`, and a set `T` of
/// indecomposables is a torsion class iff `T = ⊥(T^⊥)`.
fn oracle_torsion_count(n: usize) -> usize {
    let intervals: Vec<(usize, usize)> = (1..=n).flat_map(|a| (a..=n).map(move |b| (a, b))).collect();
    let k = intervals.len();
    let hom = |i: usize, j: usize| {
        let ((a, b), (c, d)) = (intervals[i], intervals[j]);
        c <= a && a <= d && d <= b
    };
    (0u32..1 << k)
        .filter(|mask| {
            let t: BTreeSet<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
            let f: Vec<usize> = (0..k).filter(|&m| t.iter().all(|&x| !hom(x, m))).collect();
            let back: BTreeSet<usize> = (0..k).filter(|&m| f.iter().all(|&y| !hom(m, y))).collect();
            back == t
        })
        .count()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn reports() -> (Vec<BijectionReport>, Duration) {
    let start = Instant::now();
    let reports = (1..=MAX_N)
        .map(|n| verify_all(model(n, &linear(n)), DEFAULT_WINDOW, StarConfig::default()).expect("verify_all"))
        .collect();
    (reports, start.elapsed())
}

fn triple_counts(reports: &[BijectionReport], elapsed: Duration) -> Outcome {
    let mut details = Vec::new();
    let mut pass = elapsed < COUNT_BUDGET;
    for (i, r) in reports.iter().enumerate() {
        let n = i + 1;
        let c = &r.counts;
        let oracle = oracle_torsion_count(n);
        let ok = c.intermediates == EXPECTED_COUNTS[i]
            && c.cotorsion_pairs == EXPECTED_COUNTS[i]
            && c.torsion_pairs == EXPECTED_COUNTS[i]
            && oracle == EXPECTED_COUNTS[i];
        pass &= ok;
        details.push(format!(
            "A{n}: ({}, {}, {}) oracle {oracle}",
            c.intermediates, c.cotorsion_pairs, c.torsion_pairs
        ));
    }
    outcome(pass, format!("{} in {:.2?}", details.join("; "), elapsed))
}

fn flag_criterion(reports: &[BijectionReport], name: &str, get: impl Fn(&BijectionReport) -> bool) -> Outcome {
    let failing: Vec<String> = reports.iter().filter(|r| !get(r)).map(|r| r.quiver.clone()).collect();
    let checked: usize = reports.iter().map(|r| r.counts.intermediates).sum();
    if failing.is_empty() {
        outcome(true, format!("{name} on {checked} items, n <= {MAX_N}"))
    } else {
        let ce: Vec<String> = reports
            .iter()
            .flat_map(|r| r.counterexamples.iter().map(|c| format!("{}: {}", c.check, c.detail)))
            .take(3)
            .collect();
        outcome(false, format!("{name} fails on {failing:?}: {ce:?}"))
    }
}

fn engine_crossvalidation() -> Outcome {
    let (mut pairs, mut bad) = (0usize, Vec::new());
    let mut module_pairs = 0usize;
    for n in 1..=CROSSCHECK_MAX_N {
        for bits in Quiver::all_orientations(n).iter().map(|q| q.orientation_string()) {
            let m = model(n, &bits);
            let cat = m.catalog();
            let q = cat.quiver();
            let objs = m.objects(-DEFAULT_WINDOW, DEFAULT_WINDOW);
            let reals: Vec<_> = objs.iter().map(|&x| realize(cat, x).expect("realize")).collect();
            for (i, &a) in objs.iter().enumerate() {
                for (j, &b) in objs.iter().enumerate() {
                    pairs += 1;
                    let chains = hom_k(q, &reals[i], &reals[j]).dim();
                    if m.hom(a, b) != chains {
                        bad.push(format!("{}: Hom({}, {})", q, m.label(a), m.label(b)));
                    }
                }
            }
            for x in cat.modules() {
                for y in cat.modules() {
                    module_pairs += 1;
                    let euler = ext1_dim(q, &x.rep, &y.rep).expect("ext");
                    let px = realize(cat, DerivedIndec::new(x.id, 0)).expect("realize");
                    let py = realize(cat, DerivedIndec::new(y.id, 1)).expect("realize");
                    if euler != hom_k(q, &px, &py).dim() {
                        bad.push(format!("{}: Ext({}, {})", q, cat.name(x.id), cat.name(y.id)));
                    }
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{pairs} object pairs and {module_pairs} Ext pairs, {} disagreements {:?}", bad.len(), bad.iter().take(3).collect::<Vec<_>>()),
    )
}

fn wakamatsu(reports: &[BijectionReport]) -> Outcome {
    let total: usize = reports.iter().map(|r| r.approximations.total).sum();
    let ok: usize = reports.iter().map(|r| r.approximations.wakamatsu).sum();
    let minimal: usize = reports.iter().map(|r| r.approximations.left_minimal).sum();
    outcome(total > 0 && ok == total && minimal == total, format!("{ok}/{total} cones left-orthogonal, {minimal}/{total} left minimal"))
}

fn stability() -> Outcome {
    let strip = |r: BijectionReport| {
        let mut v = serde_json::to_value(r).expect("json");
        v.as_object_mut().expect("object").remove("window");
        v
    };
    let w3 = verify_all(model(2, "0"), 3, StarConfig::default()).expect("verify");
    let w4 = verify_all(model(2, "0"), 4, StarConfig::default()).expect("verify");
    let same_window = w3.passed() && strip(w3) == strip(w4);
    let mut counts = Vec::new();
    for q in Quiver::all_orientations(3) {
        let r = verify_all(model(3, &q.orientation_string()), DEFAULT_WINDOW, StarConfig::default()).expect("verify");
        counts.push((q.to_string(), r.passed(), r.counts.intermediates, r.counts.cotorsion_pairs, r.counts.torsion_pairs));
    }
    let orient = counts.iter().all(|&(_, ok, a, b, c)| ok && a == 14 && b == 14 && c == 14);
    outcome(same_window && orient, format!("A2 window 3 vs 4 identical: {same_window}; A3 orientations {counts:?}"))
}

fn fault_sensitivity() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for n in 2..=3 {
        let mut m = model(n, &linear(n));
        let fault = m.inject_fault(None);
        let r = verify_all(m, DEFAULT_WINDOW, StarConfig::default()).expect("verify");
        let caught = fault.is_some() && !r.passed() && !r.counterexamples.is_empty();
        pass &= caught;
        lines.push(format!(
            "A{n} fault {:?}: {}",
            fault,
            r.counterexamples.first().map(|c| format!("{}: {}", c.check, c.detail)).unwrap_or_else(|| "not caught".into())
        ));
    }
    outcome(pass, lines.join("; "))
}

fn main() -> ExitCode {
    let (reports, elapsed) = reports();
    let results = [
        ("1 triple-count agreement", triple_counts(&reports, elapsed)),
        (
            "2 round-trip identities",
            flag_criterion(&reports, "four round trips", |r| {
                let f = &r.flags;
                f.cotstructure_roundtrip && f.cotorsion_roundtrip && f.torsion_roundtrip && f.pair_from_torsion_roundtrip
            }),
        ),
        (
            "3 core equals coheart",
            flag_criterion(&reports, "core = coheart", |r| r.flags.core_is_coheart && r.flags.cores_distinct),
        ),
        ("4 torsion image", flag_criterion(&reports, "F(Y) torsion, functorially finite", |r| r.flags.torsion_image)),
        ("5 engine cross-validation", engine_crossvalidation()),
        ("6 Wakamatsu property", wakamatsu(&reports)),
        ("7 window and orientation stability", stability()),
        ("8 fault sensitivity", fault_sensitivity()),
    ];
    let mut all = true;
    for (name, o) in &results {
        all &= o.pass;
        println!("{} [{}] {}", if o.pass { "PASS" } else { "FAIL" }, name, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
