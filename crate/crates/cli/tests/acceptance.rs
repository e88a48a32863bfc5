//! One line per acceptance criterion: `PASS`/`FAIL`, number, wall time and
//! limit. Criteria listed in `EXPECTED_RED` are reported but do not fail
//! the run.

use std::process::Command;
use std::time::{Duration, Instant};

use agroupoid::enumerate::{enumerate, is_isomorphic, ClassFilter, EnumerationSpec, Strategy};
use agroupoid::fixtures;
use agroupoid::verify::{check_instance, Status};
use agroupoid::{decompose, CompletelyInverse, Congruence, Groupoid};

/// Criterion 1 asks for ρ^κ = {a,e | b,f}, which is μ; the largest
/// congruence with the kernel of ρ is ρ itself, and criterion 5 needs that.
const EXPECTED_RED: &[u32] = &[1];

type Outcome = Result<String, String>;

fn ci_tables(max: usize, strategy: Strategy) -> Vec<Groupoid> {
    (1..=max)
        .flat_map(|n| {
            enumerate(&EnumerationSpec::new(n, ClassFilter::CompletelyInverse).with_strategy(strategy)).unwrap()
        })
        .collect()
}

fn both_strategies(max: usize) -> Vec<Groupoid> {
    let mut all = ci_tables(max, Strategy::Filter);
    all.extend(ci_tables(max, Strategy::Synthesis));
    all
}

fn run_checks(ids: &[&str], tables: &[Groupoid]) -> Outcome {
    for g in tables {
        for id in ids {
            if let Status::Fail { message, .. } = check_instance(id, g).map_err(|e| e.to_string())? {
                return Err(format!("{id}: {message}\n{g}"));
            }
        }
    }
    Ok(format!("{} checks on {} tables", ids.len(), tables.len()))
}

fn f1_example() -> Outcome {
    let g = fixtures::f1();
    let ci = CompletelyInverse::new(&g).map_err(|e| e.to_string())?;
    let rho = Congruence::parse(&g, "a e | b | f").unwrap();
    let tau = ci.tau().to_string();
    let kappa = ci.tau_of(&rho).to_string();
    let meet = ci.tau().meet(&ci.tau_of(&rho));
    let ok_tau = tau == "a b | e f";
    let ok_meet = meet.relation().is_identity();
    let ok_kappa = kappa == "a e | b f";
    let summary = format!("tau = {tau}, kappa(rho) = {kappa} (wanted a e | b f), meet trivial = {ok_meet}");
    if ok_tau && ok_meet && ok_kappa {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn round_trip() -> Outcome {
    let synthesized = ci_tables(5, Strategy::Synthesis);
    for g in &synthesized {
        let s = decompose(g).map_err(|e| e.to_string())?;
        let h = s.compose().map_err(|e| e.to_string())?;
        if !is_isomorphic(g, &h) {
            return Err(format!("round trip changes\n{g}"));
        }
    }
    let mut others = 0;
    for n in 1..=3 {
        for g in enumerate(&EnumerationSpec::new(n, ClassFilter::AgStarStar)).unwrap() {
            let ci = CompletelyInverse::new(&g).is_ok();
            if ci != decompose(&g).is_ok() {
                return Err(format!("decompose disagrees with the class test\n{g}"));
            }
            others += usize::from(!ci);
        }
    }
    Ok(format!("{} round trips, {others} rejections", synthesized.len()))
}

fn census() -> Outcome {
    let mut counts = Vec::new();
    for n in 2..=4 {
        let f = ci_tables_at(n, Strategy::Filter);
        let s = ci_tables_at(n, Strategy::Synthesis);
        if f != s {
            return Err(format!("order {n}: filter {} tables, synthesis {}", f.len(), s.len()));
        }
        counts.push(f.len());
    }
    if counts[0] != 2 {
        return Err(format!("order 2 census is {}", counts[0]));
    }
    Ok(format!("censuses {counts:?}"))
}

fn ci_tables_at(n: usize, s: Strategy) -> Vec<Groupoid> {
    enumerate(&EnumerationSpec::new(n, ClassFilter::CompletelyInverse).with_strategy(s)).unwrap()
}

fn determinism() -> Outcome {
    let f1 = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/f1.mag");
    let cases: [&[&str]; 4] = [
        &["lattice", f1],
        &["analyze", f1],
        &["enumerate", "--order", "4", "--class", "completely-inverse"],
        &["verify", "--order", "4"],
    ];
    let exe = env!("CARGO_BIN_EXE_agroupoid");
    let out = |threads: &str, args: &[&str]| {
        Command::new(exe)
            .args(["--threads", threads])
            .args(args)
            .output()
            .map(|o| o.stdout)
            .map_err(|e| e.to_string())
    };
    for args in cases {
        let base = out("1", args)?;
        for t in ["1", "2", "8"] {
            if out(t, args)? != base {
                return Err(format!("{args:?} differs with {t} threads"));
            }
        }
    }
    Ok(format!("{} commands x 4 runs byte-identical", cases.len()))
}

fn main() {
    let with_non_unitary = {
        let mut t = both_strategies(4);
        t.extend(fixtures::all().into_iter().map(|(_, g)| g).filter(|g| CompletelyInverse::new(g).is_ok()));
        t
    };
    assert!(with_non_unitary.iter().any(|g| *g == fixtures::collapsed_chain()));

    let criteria: Vec<(u32, &str, Option<Duration>, Box<dyn Fn() -> Outcome>)> = vec![
        (1, "F1 kernel operators", Some(Duration::from_secs(1)), Box::new(f1_example)),
        (
            2,
            "kernel-trace reconstruction",
            Some(Duration::from_secs(60)),
            Box::new(|| run_checks(&["thm-kernel-trace", "thm-containment-transfer"], &both_strategies(4))),
        ),
        (
            3,
            "canonical extremality",
            Some(Duration::from_secs(120)),
            Box::new(|| {
                run_checks(
                    &[
                        "thm-mu-least-semilattice",
                        "thm-mu-max-idempotent-separating",
                        "thm-sigma-least-ag-group",
                        "thm-tau-largest-idempotent-pure",
                        "thm-pi-least-e-unitary",
                    ],
                    &both_strategies(4),
                )
            }),
        ),
        (4, "structure round trip", None, Box::new(round_trip)),
        (
            5,
            "lattice laws",
            Some(Duration::from_secs(120)),
            Box::new(|| {
                run_checks(
                    &[
                        "thm-idempotent-separating-modular",
                        "thm-trace-classes",
                        "thm-trace-homomorphism",
                        "thm-fundamental-congruences",
                        "thm-rho-decomposition",
                    ],
                    &both_strategies(4),
                )
            }),
        ),
        (
            6,
            "E-unitary battery",
            None,
            Box::new(move || {
                run_checks(
                    &[
                        "thm-final-equivalences",
                        "thm-e-unitary-equivalences",
                        "thm-e-unitary-iff-kernel-closed",
                        "thm-pi-rho",
                    ],
                    &with_non_unitary,
                )
            }),
        ),
        (7, "dual-strategy census", Some(Duration::from_secs(300)), Box::new(census)),
        (8, "determinism", None, Box::new(determinism)),
    ];

    let mut unexpected = 0;
    for (id, name, limit, f) in criteria {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let in_time = limit.map_or(true, |l| elapsed <= l);
        let ok = result.is_ok() && in_time;
        let detail = match &result {
            Ok(s) => s.clone(),
            Err(s) => s.lines().next().unwrap_or("").to_string(),
        };
        let limit_text = limit.map_or("none".to_string(), |l| format!("{}s", l.as_secs()));
        let expected = EXPECTED_RED.contains(&id);
        println!(
            "{} {id} {name}: {:.3}s (limit {limit_text}){} - {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            if !ok && expected { " [expected red]" } else { "" },
        );
        if !ok && !expected {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
