//! Acceptance run: one PASS/FAIL line per criterion, all single-threaded.
//! Every criterion is exact; the time limits below are the only tolerances.

mod common;

use std::time::{Duration, Instant};

use common::*;
use iterforce::harness::{
    check_burning_bound, check_fzf_ilat_lower, check_fzf_minus4_family, check_fzf_not_minus3,
    check_ilat_zf_bounds, check_ilt_zf_lift, classify_fzf_minus2, recheck, Certificate,
    TheoremReport, Verdict,
};
use iterforce::{
    burning_number, closure, failed_zero_forcing_number, is_zero_forcing_set, loop_closure,
    min_fort, parse_graph6_lines, replay_schedule, zero_forcing_number, Budget, CloningPlan, Graph,
    IteratedGraph, Mode, VertexSet,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LIMIT_1: Duration = Duration::from_secs(60);
const LIMIT_2: Duration = Duration::from_secs(30);
const LIMIT_3: Duration = Duration::from_secs(300);
const LIMIT_4: Duration = Duration::from_secs(60);
const LIMIT_5: Duration = Duration::from_secs(120);
const LIMIT_6: Duration = Duration::from_secs(10);
const LIMIT_7: Duration = Duration::from_secs(600);
const LIMIT_8: Duration = Duration::from_secs(120);
const LIMIT_9: Duration = Duration::from_secs(900);
const LIMIT_10: Duration = Duration::from_secs(60);

const SEED: u64 = 0x5eed_1f0e;

type Criterion = (&'static str, Duration, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], ok_detail: String) -> Outcome {
    if failures.is_empty() {
        Outcome {
            pass: true,
            detail: ok_detail,
        }
    } else {
        let shown: Vec<&str> = failures.iter().take(6).map(String::as_str).collect();
        Outcome {
            pass: false,
            detail: format!("{} failure(s): {}", failures.len(), shown.join("; ")),
        }
    }
}

fn unlimited() -> Budget {
    Budget::unlimited()
}

fn ilat(base: &Graph, l: usize) -> Graph {
    IteratedGraph::build(base, &CloningPlan::ilat(base.order(), l))
        .unwrap()
        .into_graph()
}

fn verdicts_ok(r: &TheoremReport, label: &str, failures: &mut Vec<String>) {
    for inst in &r.instances {
        if inst.verdict != Verdict::Verified {
            failures.push(format!(
                "{label} l={}: {:?} {}",
                inst.l,
                inst.verdict,
                inst.notes.join(" / ")
            ));
        }
    }
}

fn criterion_1() -> Outcome {
    let mut failures = Vec::new();
    let r = check_fzf_ilat_lower(&Graph::complete(1), 5, &unlimited()).unwrap();
    verdicts_ok(&r, "K1", &mut failures);
    let inst = &r.instances[0];
    let g = ilat(&Graph::complete(1), 5);
    let two_sided = inst
        .certificates
        .iter()
        .filter(|c| matches!(c, Certificate::TwoSided { .. }) && recheck(&g, c))
        .count();
    if two_sided != 1 {
        failures.push(format!("{two_sided} two-sided certificates"));
    }
    let fort = min_fort(&g, 6, &unlimited()).unwrap();
    let fz = fort.value.map(|k| 32 - k);
    if g.order() != 32 || fz.is_none_or(|v| v < 26) {
        failures.push(format!("n = {}, FZ = {fz:?}", g.order()));
    }
    outcome(&failures, format!("n = 32, six-set verified, FZ = {}", fz.unwrap_or(0)))
}

fn criterion_2() -> Outcome {
    let mut failures = Vec::new();
    let bases = [
        ("K1", Graph::complete(1)),
        ("K2", Graph::complete(2)),
        ("P3", Graph::path(3)),
        ("K3", Graph::complete(3)),
    ];
    let mut values = Vec::new();
    for (name, base) in &bases {
        let r = check_fzf_not_minus3(base, 4, &unlimited()).unwrap();
        verdicts_ok(&r, name, &mut failures);
        let k = min_fort(&ilat(base, 4), 3, &unlimited()).unwrap().value;
        values.push(format!("{name}: min fort {}", k.map_or("> 3".into(), |k| k.to_string())));
    }
    outcome(&failures, values.join(", "))
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 1..=4 {
        for base in all_labelled(n) {
            for l in 1..=3 {
                let r = classify_fzf_minus2(&base, l, &unlimited()).unwrap();
                checked += 1;
                if r.instances[0].verdict != Verdict::Verified {
                    failures.push(format!(
                        "base {} l={l}: {}",
                        iterforce::emit_graph6(&base),
                        r.instances[0].notes.last().unwrap()
                    ));
                }
            }
        }
    }
    let by_level: Vec<String> = (1..=3)
        .map(|l| {
            let c = failures.iter().filter(|f| f.contains(&format!("l={l}:"))).count();
            format!("l={l}: {c}")
        })
        .collect();
    if !failures.is_empty() {
        failures.insert(0, format!("violations by level [{}]", by_level.join(", ")));
    }
    outcome(&failures, format!("{checked} instances agree"))
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    let mut seen = Vec::new();
    for l in 1..=3 {
        let r = check_fzf_minus4_family(&Graph::cycle(4), 0, 2, l, &unlimited()).unwrap();
        verdicts_ok(&r, "C4", &mut failures);
        let g = ilat(&Graph::cycle(4), l);
        let fz = failed_zero_forcing_number(&g, &unlimited()).unwrap().value.unwrap();
        let expected = (4 << l) - 4;
        seen.push(format!("l={l}: FZ = {fz}"));
        if fz != expected {
            failures.push(format!("l={l}: FZ = {fz}, expected {expected}"));
        }
    }
    outcome(&failures, seen.join(", "))
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let bases = [
        ("K2", Graph::complete(2)),
        ("P3", Graph::path(3)),
        ("P4", Graph::path(4)),
        ("C4", Graph::cycle(4)),
    ];
    for (name, base) in &bases {
        let z = zero_forcing_number(base, &unlimited()).unwrap().value.unwrap();
        for l in 1..=3 {
            let r = check_ilt_zf_lift(base, l, false, &unlimited()).unwrap();
            verdicts_ok(&r, name, &mut failures);
            let inst = &r.instances[0];
            let lifted = inst.certificates.iter().find_map(|c| match c {
                Certificate::ZeroForcingSet { members, .. } => Some(members.clone()),
                _ => None,
            });
            let ig = IteratedGraph::build(base, &CloningPlan::ilt(base.order(), l)).unwrap();
            match lifted {
                Some(w) if w.len() <= z << l => {
                    let set = VertexSet::from_indices(ig.order(), w.iter().copied());
                    if !is_zero_forcing_set(ig.graph(), &set) {
                        failures.push(format!("{name} l={l}: lift does not force"));
                    }
                }
                other => failures.push(format!("{name} l={l}: lift {other:?}")),
            }
            let schedule_ok = inst.certificates.iter().any(|c| match c {
                Certificate::Schedule { start, schedule } => replay_schedule(
                    ig.graph(),
                    &VertexSet::from_indices(ig.order(), start.iter().copied()),
                    schedule,
                )
                .is_ok(),
                _ => false,
            });
            if !schedule_ok {
                failures.push(format!("{name} l={l}: no replayable schedule"));
            }
        }
    }
    outcome(&failures, "12 lifts force, schedules replay with stage structure".into())
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let mut seen = Vec::new();
    for l in 1..=3 {
        let g = IteratedGraph::build(&Graph::complete(2), &CloningPlan::ilt(2, l))
            .unwrap()
            .into_graph();
        let z = zero_forcing_number(&g, &unlimited()).unwrap();
        seen.push(format!("n={}: Z = {:?}", g.order(), z.value));
        if z.value != Some(1 << l) {
            failures.push(format!("l={l}: Z = {:?}", z.value));
        }
    }
    outcome(&failures, seen.join(", "))
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for n in 1..=3 {
        for base in iso_classes(n) {
            for l in 2..=3 {
                let r = check_ilat_zf_bounds(&base, l, &unlimited()).unwrap();
                count += 1;
                verdicts_ok(&r, &format!("base {}", iterforce::emit_graph6(&base)), &mut failures);
            }
        }
    }
    outcome(&failures, format!("{count} instances: two-round set and bounds hold"))
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let mut counted = (0, 0);
    for l in 1..=2 {
        let r = check_burning_bound(&Graph::complete(3), l, Mode::Iim, &unlimited()).unwrap();
        let t = r.tally();
        counted.0 += t.verified;
        counted.1 += t.skipped;
        verdicts_ok(
            &TheoremReport {
                instances: r
                    .instances
                    .iter()
                    .filter(|i| !matches!(i.verdict, Verdict::Skipped { .. }))
                    .cloned()
                    .collect(),
                ..r.clone()
            },
            "K3",
            &mut failures,
        );
        if l == 2 && r.instances.len() != 512 {
            failures.push(format!("{} plans at l=2", r.instances.len()));
        }
    }
    outcome(
        &failures,
        format!("{} connected plans verified, {} disconnected skipped", counted.0, counted.1),
    )
}

fn criterion_9() -> Outcome {
    let mut failures = Vec::new();
    let graphs = parse_graph6_lines(include_str!("data/connected_le7.g6")).unwrap();
    let mut per_n = [0usize; 8];
    for g in &graphs {
        per_n[g.order()] += 1;
        let n = g.order();
        let label = iterforce::emit_graph6(g);
        let z = zero_forcing_number(g, &unlimited()).unwrap().value.unwrap();
        if z != naive_z(g) {
            failures.push(format!("{label}: Z {z} vs {}", naive_z(g)));
        }
        let fz = failed_zero_forcing_number(g, &unlimited()).unwrap().value.unwrap();
        let fort = min_fort(g, n, &unlimited()).unwrap().value.unwrap();
        if fz != naive_fz(g) || fort != naive_min_fort(g) || fz + fort != n {
            failures.push(format!("{label}: FZ {fz}, min fort {fort}"));
        }
        let b = burning_number(g, &unlimited()).unwrap().value.unwrap();
        if b != naive_b(g) {
            failures.push(format!("{label}: b {b} vs {}", naive_b(g)));
        }
    }
    if per_n[1..] != [1, 1, 2, 6, 21, 112, 853] {
        failures.push(format!("corpus counts {per_n:?}"));
    }
    outcome(
        &failures,
        format!("{} graphs ({} on 7 vertices) agree with the oracles", graphs.len(), per_n[7]),
    )
}

fn random_plan<R: Rng>(rng: &mut R, n0: usize, l: usize) -> CloningPlan {
    let levels = (0..l)
        .map(|t| (0..n0 << t).map(|_| rng.gen_bool(0.5)).collect())
        .collect();
    CloningPlan::new(n0, levels).unwrap()
}

fn random_set<R: Rng>(rng: &mut R, n: usize, p: f64) -> VertexSet {
    VertexSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(p)))
}

fn criterion_10() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for case in 0..200 {
        let n0 = rng.gen_range(1..=5);
        let l = rng.gen_range(1..=3);
        let base = random_graph(&mut rng, n0, 0.5);
        let plan = random_plan(&mut rng, n0, l);
        let g = IteratedGraph::build(&base, &plan).unwrap().into_graph();
        let n = g.order();
        let s = random_set(&mut rng, n, 0.3);
        let t = s.union(&random_set(&mut rng, n, 0.2));
        let (cs, chron) = closure(&g, &s);
        let (ct, _) = closure(&g, &t);
        if !cs.is_subset(&ct) {
            failures.push(format!("case {case}: closure not monotone"));
        }
        if closure(&g, &cs).0 != cs {
            failures.push(format!("case {case}: closure not idempotent"));
        }
        match iterforce::apply_schedule(&g, &s, &chron) {
            Ok(end) if end == cs => {}
            other => failures.push(format!("case {case}: replay gave {other:?}")),
        }
        if !cs.is_subset(&loop_closure(&g, &s)) {
            failures.push(format!("case {case}: loop closure misses forced vertices"));
        }
        let h = IteratedGraph::build(&base, &CloningPlan::ilat(n0, l)).unwrap();
        let nh = h.order();
        for v in 0..nh {
            let d = h.graph().degree(v);
            let level = h.level_of(v);
            if level < l && 2 * (d + 1) != nh {
                failures.push(format!("case {case}: level {level} vertex {v} has degree {d}, n = {nh}"));
            }
            if level == l && l >= 2 && 4 * d < nh {
                failures.push(format!("case {case}: level-{l} vertex {v} has degree {d}, n = {nh}"));
            }
        }
    }
    outcome(&failures, "200 seeded instances".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("1 six-vertex fort in ILAT_5(K1), FZ >= 26", LIMIT_1, criterion_1),
        ("2 no minimum fort of size 3 at l=4", LIMIT_2, criterion_2),
        ("3 FZ = n-2 iff base condition, n<=4, l<=3", LIMIT_3, criterion_3),
        ("4 FZ(ILAT_l(C4)) = 2^l*4 - 4, l<=3", LIMIT_4, criterion_4),
        ("5 ILT descendant lift and schedule replay", LIMIT_5, criterion_5),
        ("6 Z(ILT_l(K2)) = 2^l, l<=3", LIMIT_6, criterion_6),
        ("7 ILAT zero forcing bounds, l in {2,3}", LIMIT_7, criterion_7),
        ("8 burning bounds over IIM plans of K3", LIMIT_8, criterion_8),
        ("9 solvers equal naive oracles on corpus", LIMIT_9, criterion_9),
        ("10 engine invariants and ILAT degree law", LIMIT_10, criterion_10),
    ];
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let mut failed = Vec::new();
    println!();
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let mut out = pool.install(run);
        let elapsed = start.elapsed();
        if elapsed > limit {
            out.pass = false;
            out.detail = format!("took {elapsed:.1?} (limit {limit:?}); {}", out.detail);
        }
        println!(
            "criterion {name}: {} [{elapsed:.2?}] {}",
            if out.pass { "PASS" } else { "FAIL" },
            out.detail
        );
        if !out.pass {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
