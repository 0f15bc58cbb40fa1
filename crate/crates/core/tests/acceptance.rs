//! Acceptance suite: nine criteria, one PASS/FAIL line each.
//!
//! Runs with `harness = false`; the process exits nonzero when any
//! criterion fails.

mod common;

use std::time::{Duration, Instant};

use nmlln::extension::{extend_by_set, extend_max, extend_min, is_extension, mix};
use nmlln::lln::{
    certify_all, exact_event_bounds, exact_plan_event_prob, expected_mean_at, make_schedule, simulate,
    target_mixture_weight, CertifySettings, CoordinatePlan, DeviationEvent, Scenario, ScheduleKind, TargetSet,
    Trajectory, DEFAULT_BUDGET,
};
use nmlln::measure::{
    inner_measure, is_measurable_set, lower_expectation, majorant, minorant, outer_measure, upper_expectation,
    RandomQuantity,
};
use nmlln::rational::{abs, binomial, int, ratio, to_f64, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use common::*;

/// Sandwich findings shared by criteria 4 to 7 and reported as
/// criterion 8.
#[derive(Default)]
struct Sandwich {
    trajectories: usize,
    trajectory_failures: Vec<String>,
    exact_checks: usize,
    exact_failures: Vec<String>,
}

impl Sandwich {
    fn trajectories(&mut self, label: &str, scenario: &Scenario, runs: &[Trajectory], n_max: u64) {
        let lo = to_f64(scenario.psi_min());
        let hi = to_f64(scenario.psi_max());
        let tol = 3.0 * (hi - lo) / (n_max as f64).sqrt();
        let (e_lo, e_hi) = (to_f64(scenario.lower()), to_f64(scenario.upper()));
        for (i, t) in runs.iter().enumerate() {
            self.trajectories += 1;
            let in_range = t.checkpoints.iter().all(|&(_, m)| m >= lo - 1e-9 && m <= hi + 1e-9);
            let last = t.mean_at(n_max).expect("n_max is a checkpoint");
            if !in_range || last < e_lo - tol || last > e_hi + tol {
                self.trajectory_failures.push(format!("{label} trajectory {i}"));
            }
        }
    }

    fn exact(&mut self, plan: &CoordinatePlan, event: &DeviationEvent) -> Rational {
        let bounds = exact_event_bounds(plan.scenario(), event, DEFAULT_BUDGET).unwrap();
        let p = exact_plan_event_prob(plan, event, DEFAULT_BUDGET).unwrap();
        self.exact_checks += 1;
        if p < bounds.inner || p > bounds.outer {
            self.exact_failures
                .push(format!("{} at n = {}", plan.describe(), event.n));
        }
        p
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    if elapsed > limit {
        out.pass = false;
    }
    out.detail = format!(
        "{}; {:.2}s (limit {}s)",
        out.detail,
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    out
}

fn criterion_1() -> Outcome {
    let mut rng = rng(1);
    let mut mismatches = 0;
    for _ in 0..200 {
        let space = random_space(&mut rng, 8);
        let field = random_field(&mut rng, &space, 6);
        let set = random_set(&mut rng, space.len());
        let inner = inner_measure(&space, &field, &set).unwrap();
        let outer = outer_measure(&space, &field, &set).unwrap();
        if inner != brute_inner(&space, &field, &set) || outer != brute_outer(&space, &field, &set) {
            mismatches += 1;
        }
    }
    outcome(
        mismatches == 0,
        format!("200 spaces, {mismatches} mismatches against 2^k enumeration"),
    )
}

fn pointwise_within(a: &RandomQuantity, b: &RandomQuantity, eps: &Rational) -> bool {
    a.values().iter().zip(b.values()).all(|(x, y)| &abs(&(x - y)) <= eps)
}

fn criterion_2() -> Outcome {
    let mut rng = rng(2);
    let mut failures = Vec::new();
    for i in 0..500 {
        let space = random_space(&mut rng, 8);
        let field = random_field(&mut rng, &space, 6);
        let n = space.len();
        let f = random_quantity(&mut rng, n);
        let f_lo = minorant(&space, &field, &f).unwrap();
        let f_hi = majorant(&space, &field, &f).unwrap();

        // g agrees with f on a measurable B.
        let b: nmlln::PointSet = field
            .blocks()
            .iter()
            .filter(|_| rng.random_bool(0.5))
            .flatten()
            .copied()
            .collect();
        let g = RandomQuantity::from_fn(&space, |p| {
            if b.contains(&p) {
                f.value(p).clone()
            } else {
                random_value(&mut rng)
            }
        });
        let (g_lo, g_hi) = (
            minorant(&space, &field, &g).unwrap(),
            majorant(&space, &field, &g).unwrap(),
        );
        if b.iter()
            .any(|&p| f_lo.value(p) != g_lo.value(p) || f_hi.value(p) != g_hi.value(p))
        {
            failures.push(format!("agreement on a measurable set, instance {i}"));
        }

        // |f - h| <= eps pointwise.
        let eps = ratio(rng.random_range(0..=4), 2);
        let h = RandomQuantity::from_fn(&space, |p| {
            let t = ratio(rng.random_range(-4..=4), 4);
            f.value(p) + &eps * t
        });
        let (h_lo, h_hi) = (
            minorant(&space, &field, &h).unwrap(),
            majorant(&space, &field, &h).unwrap(),
        );
        if !pointwise_within(&f_lo, &h_lo, &eps) || !pointwise_within(&f_hi, &h_hi, &eps) {
            failures.push(format!("uniform closeness, instance {i}"));
        }

        // Maximality of the minorant, minimality of the majorant.
        let below = measurable_below(&mut rng, &field, &f);
        if below.values().iter().zip(f_lo.values()).any(|(g, m)| g > m) {
            failures.push(format!("minorant maximality, instance {i}"));
        }
        let neg = -&f;
        let above = -&measurable_below(&mut rng, &field, &neg);
        if above.values().iter().zip(f_hi.values()).any(|(g, m)| g < m) {
            failures.push(format!("majorant minimality, instance {i}"));
        }
        if f_lo.values().iter().zip(f.values()).any(|(m, v)| m > v) {
            failures.push(format!("minorant above f, instance {i}"));
        }

        // Duality identities.
        let lo = lower_expectation(&space, &field, &f).unwrap();
        let hi = upper_expectation(&space, &field, &neg).unwrap();
        if lo != -hi {
            failures.push(format!("E_*[f] = -E^*[-f], instance {i}"));
        }
        let set = random_set(&mut rng, n);
        let complement: nmlln::PointSet = (0..n).filter(|p| !set.contains(p)).collect();
        let inner = inner_measure(&space, &field, &set).unwrap();
        let outer_c = outer_measure(&space, &field, &complement).unwrap();
        let outer = outer_measure(&space, &field, &set).unwrap();
        if &inner + &outer_c != Rational::one()
            || inner > outer
            || (inner == outer) != is_measurable_set(&space, &field, &set).unwrap()
        {
            failures.push(format!("inner/outer duality, instance {i}"));
        }
    }
    outcome(
        failures.is_empty(),
        format!("500 instances, {} violations{}", failures.len(), first(&failures)),
    )
}

fn first(failures: &[String]) -> String {
    failures.first().map(|f| format!(" (first: {f})")).unwrap_or_default()
}

fn criterion_3() -> Outcome {
    let mut rng = rng(3);
    let mut failures = Vec::new();
    for i in 0..200 {
        let space = random_space(&mut rng, 8);
        let field = random_field(&mut rng, &space, 6);
        let set = random_set(&mut rng, space.len());
        let lower = inner_measure(&space, &field, &set).unwrap();
        let upper = outer_measure(&space, &field, &set).unwrap();
        let t = ratio(rng.random_range(0..=12), 12);
        let alpha = &lower + (&upper - &lower) * t;
        let q = extend_by_set(&space, &field, &set, &alpha).unwrap();
        if q.measure_of(&set).unwrap() != alpha {
            failures.push(format!("Q(A) != alpha, instance {i}"));
        }
        let f = random_quantity(&mut rng, space.len());
        let q_min = extend_min(&space, &field, &f).unwrap();
        let q_max = extend_max(&space, &field, &f).unwrap();
        if q_min.expectation(&f).unwrap() != lower_expectation(&space, &field, &f).unwrap()
            || q_max.expectation(&f).unwrap() != upper_expectation(&space, &field, &f).unwrap()
        {
            failures.push(format!("corner expectations, instance {i}"));
        }
        let a = ratio(rng.random_range(0..=6), 6);
        let mixed = mix(&q_min, &q_max, &a).unwrap();
        for (name, m) in [
            ("extend_by_set", &q),
            ("extend_min", &q_min),
            ("extend_max", &q_max),
            ("mix", &mixed),
        ] {
            if !is_extension(m, &space, &field) {
                failures.push(format!("{name} is not an extension, instance {i}"));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("200 instances, {} violations{}", failures.len(), first(&failures)),
    )
}

fn criterion_4(sandwich: &mut Sandwich) -> Outcome {
    let scenario = Scenario::reference();
    let n_max = 10_000;
    let mut worst = 1.0f64;
    for (i, alpha) in [ratio(1, 2), ratio(3, 4), int(1), ratio(5, 4), ratio(3, 2)]
        .iter()
        .enumerate()
    {
        let weight = target_mixture_weight(alpha, scenario.lower(), scenario.upper()).unwrap();
        let plan = CoordinatePlan::constant_mixture(&scenario, weight).unwrap();
        let runs = simulate(&plan, n_max, &[1, 10, 100, 1000, n_max], 1000, 40 + i as u64).unwrap();
        let a = to_f64(alpha);
        let close = runs
            .iter()
            .filter(|t| (t.final_mean().unwrap() - a).abs() <= 0.03)
            .count();
        worst = worst.min(close as f64 / runs.len() as f64);
        sandwich.trajectories("steering", &scenario, &runs, n_max);
    }
    outcome(
        worst >= 0.95,
        format!("lowest fraction within 0.03 of alpha: {worst:.3} (need >= 0.95)"),
    )
}

fn criterion_5(sandwich: &mut Sandwich) -> Outcome {
    let scenario = Scenario::reference();
    let n_max = 362_880;
    let schedule = make_schedule(ScheduleKind::Factorial { start: 20 }, &scenario).unwrap();
    let ends = schedule.block_ends_upto(n_max);
    let last_even = ends.iter().rev().find(|(j, _)| j % 2 == 0).unwrap().1;
    let last_odd = ends.iter().rev().find(|(j, _)| j % 2 == 1).unwrap().1;
    let plan = CoordinatePlan::block_alternating(&scenario, schedule).unwrap();
    let mut checkpoints: Vec<u64> = ends.iter().map(|&(_, a)| a).collect();
    checkpoints.push(n_max);
    let runs = simulate(&plan, n_max, &checkpoints, 200, 5).unwrap();
    sandwich.trajectories("divergence", &scenario, &runs, n_max);
    let good = runs
        .iter()
        .filter(|t| {
            (t.mean_at(last_even).unwrap() - 1.5).abs() <= 0.1 && (t.mean_at(last_odd).unwrap() - 0.5).abs() <= 0.1
        })
        .count();
    let fraction = good as f64 / runs.len() as f64;
    let profile = expected_mean_at(&plan, &[last_odd, last_even]);
    let at_odd = to_f64(&profile[0].1);
    let at_even = to_f64(&profile[1].1);
    let exact_ok = (at_odd - 0.5).abs() <= 0.05 && (at_even - 1.5).abs() <= 0.05;
    outcome(
        fraction >= 0.95 && exact_ok,
        format!(
            "block ends {last_odd} (odd) / {last_even} (even): {fraction:.3} of trajectories within 0.1; \
             exact profile {at_odd:.4} / {at_even:.4}"
        ),
    )
}

fn criterion_6(sandwich: &mut Sandwich) -> Outcome {
    let scenario = Scenario::reference();
    let n_max = 10_000;
    let plan = CoordinatePlan::regime_mixture(&scenario, ratio(1, 2)).unwrap();
    let runs = simulate(&plan, n_max, &[1, 10, 100, 1000, n_max], 1000, 6).unwrap();
    sandwich.trajectories("regime", &scenario, &runs, n_max);
    let finals: Vec<f64> = runs.iter().map(|t| t.final_mean().unwrap()).collect();
    let near_low = finals.iter().filter(|m| (*m - 0.5).abs() <= 0.03).count();
    let near_high = finals.iter().filter(|m| (*m - 1.5).abs() <= 0.03).count();
    let near_one = finals.iter().filter(|m| (*m - 1.0).abs() <= 0.03).count();
    let either = (near_low + near_high) as f64 / finals.len() as f64;
    let high = near_high as f64 / finals.len() as f64;
    outcome(
        either >= 0.95 && (high - 0.5).abs() <= 0.05,
        format!("{either:.3} end near 1/2 or 3/2, {high:.3} near 3/2, {near_one} near 1"),
    )
}

/// `P(|S_n/n - 1/2| > 1/4)` for `S_n ~ Binomial(n, 1/2)`.
fn binomial_tail(event: &DeviationEvent) -> Rational {
    let n = event.n;
    let hits: BigInt = (0..=n)
        .filter(|&s| event.contains_sum(&int(s as i64)))
        .map(|s| binomial(n, s))
        .sum();
    Rational::new(hits, BigInt::from(2u8).pow(n as u32))
}

fn criterion_7(sandwich: &mut Sandwich) -> Outcome {
    let scenario = Scenario::fair_coin();
    let half = CoordinatePlan::constant_mixture(&scenario, ratio(1, 2)).unwrap();
    let zero = CoordinatePlan::constant_mixture(&scenario, Rational::zero()).unwrap();
    let mut bounds_ok = true;
    let mut oracle_ok = true;
    let mut probs = Vec::new();
    let mut last_zero = Rational::zero();
    for n in 2..=12u64 {
        let event = DeviationEvent::new(n, ratio(1, 2), ratio(1, 4)).unwrap();
        let sums: Vec<bool> = (0..=n).map(|s| event.contains_sum(&int(s as i64))).collect();
        let proper = sums.iter().any(|&b| b) && sums.iter().any(|&b| !b);
        let bounds = exact_event_bounds(&scenario, &event, DEFAULT_BUDGET).unwrap();
        if proper && (!bounds.inner.is_zero() || !bounds.outer.is_one()) {
            bounds_ok = false;
        }
        let p = sandwich.exact(&half, &event);
        if p != binomial_tail(&event) {
            oracle_ok = false;
        }
        probs.push((n, p));
        last_zero = sandwich.exact(&zero, &event);
    }
    let rises: Vec<String> = probs
        .windows(2)
        .filter(|w| w[1].1 > w[0].1)
        .map(|w| format!("n={}->{}", w[0].0, w[1].0))
        .collect();
    let monotone = rises.is_empty();
    let p12 = to_f64(&probs.last().unwrap().1);
    let z12 = to_f64(&last_zero);
    let pass = bounds_ok && oracle_ok && monotone && p12 < 0.1 && z12 > 0.9;
    outcome(
        pass,
        format!(
            "inner=0/outer=1: {bounds_ok}; binomial oracle: {oracle_ok}; monotone decrease: {monotone}{}; \
             P(n=12) under a=1/2: {p12:.4} (< 0.1); under a=0: {z12:.4} (> 0.9)",
            if monotone {
                String::new()
            } else {
                format!(" (rises at {})", rises.join(", "))
            }
        ),
    )
}

/// Exact sandwich checks on the reference scenario for every plan variant.
fn reference_exact_sandwich(sandwich: &mut Sandwich) {
    let scenario = Scenario::reference();
    let schedule = make_schedule(ScheduleKind::Factorial { start: 2 }, &scenario).unwrap();
    let plans = [
        CoordinatePlan::constant_mixture(&scenario, ratio(1, 3)).unwrap(),
        CoordinatePlan::block_alternating(&scenario, schedule).unwrap(),
        CoordinatePlan::regime_mixture(&scenario, ratio(1, 2)).unwrap(),
    ];
    for plan in &plans {
        for n in 1..=8 {
            for (c, e) in [
                (int(1), ratio(1, 4)),
                (ratio(1, 2), ratio(1, 8)),
                (ratio(3, 2), ratio(1, 3)),
            ] {
                sandwich.exact(plan, &DeviationEvent::new(n, c, e).unwrap());
            }
        }
    }
}

fn criterion_8(sandwich: &Sandwich) -> Outcome {
    outcome(
        sandwich.trajectory_failures.is_empty() && sandwich.exact_failures.is_empty() && sandwich.exact_checks > 0,
        format!(
            "{} trajectories, {} outside bounds{}; {} exact (plan, n) checks, {} outside [inner, outer]{}",
            sandwich.trajectories,
            sandwich.trajectory_failures.len(),
            first(&sandwich.trajectory_failures),
            sandwich.exact_checks,
            sandwich.exact_failures.len(),
            first(&sandwich.exact_failures),
        ),
    )
}

fn criterion_9() -> Outcome {
    let scenario = Scenario::reference();
    let set = TargetSet::point(int(1));
    let settings = CertifySettings {
        n_max: 10_000,
        trials: 200,
        master_seed: 9,
        schedule: ScheduleKind::Factorial { start: 20 },
    };
    let reports = certify_all(&scenario, &set, &settings).unwrap();
    let again = certify_all(&scenario, &set, &settings).unwrap();
    let summary: Vec<String> = reports
        .iter()
        .map(|r| {
            let hi = r.high_witness().map(|i| r.outcomes[i].frequency());
            let lo = r.low_witness().map(|i| r.outcomes[i].frequency());
            format!("{} {:?}/{:?}", r.kind, hi, lo)
        })
        .collect();
    let certified = reports.len() == 5 && reports.iter().all(|r| r.is_certified());
    let deterministic = reports == again;
    outcome(
        certified && deterministic,
        format!(
            "certified: {certified}, reproducible: {deterministic}; {}",
            summary.join(", ")
        ),
    )
}

fn main() {
    let mut sandwich = Sandwich::default();
    let secs = Duration::from_secs;
    let results = vec![
        ("1", "inner/outer oracle", timed(secs(5), criterion_1)),
        ("2", "minorant properties", timed(secs(5), criterion_2)),
        ("3", "extension laws", timed(secs(5), criterion_3)),
        (
            "4",
            "strong-law steering",
            timed(secs(30), || criterion_4(&mut sandwich)),
        ),
        ("5", "divergence", timed(secs(120), || criterion_5(&mut sandwich))),
        (
            "6",
            "regime mixture contrast",
            timed(secs(30), || criterion_6(&mut sandwich)),
        ),
        ("7", "weak law", timed(secs(10), || criterion_7(&mut sandwich))),
        ("8", "sandwich invariants", {
            reference_exact_sandwich(&mut sandwich);
            criterion_8(&sandwich)
        }),
        ("9", "certificates", timed(secs(60), criterion_9)),
    ];
    let mut failed = 0;
    for (id, name, out) in &results {
        let status = if out.pass { "PASS" } else { "FAIL" };
        if !out.pass {
            failed += 1;
        }
        println!("{status} criterion {id} ({name}): {}", out.detail);
    }
    println!("acceptance: {} passed, {} failed", results.len() - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
