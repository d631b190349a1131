//! End-to-end acceptance checks. Each test prints one pass/fail line; run
//! with `cargo test --test acceptance -- --nocapture` to see them all.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bnsrm::{
    best_parents_per_node, brute_force_context, confidence_term, fit_graph, forward_sample,
    kl_divergence, node_counts, solve_context, srm_select, validate_bound_experiment, BayesNet,
    CategoricalDomain, Cpt, CutoffPolicy, Dag, Dataset, SrmConfig,
};

fn check(criterion: usize, name: &str, pass: bool) {
    println!(
        "criterion {criterion} ({name}): {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} ({name}) failed");
}

#[test]
fn criterion_1_confidence_term_fidelity() {
    let phi = confidence_term(0.01, 1000, 10, 0.05).unwrap();
    check(1, "confidence-term fidelity", (phi - 1.2041).abs() <= 1e-3);
}

#[test]
fn criterion_2_optimizer_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for case in 0..500 {
        let m = rng.gen_range(2..=4usize);
        let epsilon = [0.0, 0.05, 0.1][case % 3];
        let mut counts: Vec<u64> = (0..m).map(|_| rng.gen_range(0..=20)).collect();
        if counts.iter().all(|&c| c == 0) {
            counts[rng.gen_range(0..m)] = 1 + rng.gen_range(0..20);
        }
        let fast = solve_context(&counts, epsilon).unwrap();
        let slow = brute_force_context(&counts, epsilon, 1e-4).unwrap();
        let gap = fast
            .iter()
            .zip(&slow)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if gap > 2e-4 {
            println!("  mismatch: counts {counts:?} eps {epsilon} fast {fast:?} slow {slow:?}");
        }
        worst = worst.max(gap);
    }
    println!("  worst optimizer-oracle gap: {worst:.2e}");
    check(2, "optimizer-oracle equivalence", worst <= 2e-4);
}

#[test]
fn criterion_3_vc_hand_values() {
    let d3 = CategoricalDomain::binary(3);
    let graph = bnsrm::vc_bound_graph(&d3, &Dag::chain(3)).unwrap().h;
    let unordered = bnsrm::vc_bound_unordered(&d3, 1).unwrap().h;
    let ordered = bnsrm::vc_bound_ordered(&d3, 1).unwrap().h;
    let literal = bnsrm::vc_bound_ordered_literal(&d3, 1).unwrap().h;
    check(
        3,
        "vc bound hand-values",
        graph == 10 && unordered == 12 && ordered == 14 && literal == 12,
    );
}

fn random_dataset(rng: &mut ChaCha8Rng, n: usize, l: usize) -> Dataset {
    let domain = CategoricalDomain::binary(n);
    let rows = (0..l)
        .map(|_| (0..n).map(|_| rng.gen_range(0..2usize)).collect())
        .collect();
    Dataset::new(domain, rows).unwrap()
}

/// All subsets of `0..j` with at most `delta` elements.
fn predecessor_subsets(j: usize, delta: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for mask in 1u32..(1 << j) {
        if (mask.count_ones() as usize) <= delta {
            out.push((0..j).filter(|i| mask & (1 << i) != 0).collect());
        }
    }
    out
}

#[test]
fn criterion_4_search_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let n = 4;
    let delta = 2;
    let order: Vec<usize> = (0..n).collect();
    let policy = CutoffPolicy::unbounded();
    let mut pass = true;
    for _ in 0..50 {
        let l = rng.gen_range(10..=50usize);
        let data = random_dataset(&mut rng, n, l);
        let fast = best_parents_per_node(&data, &order, delta, &policy)
            .unwrap()
            .r_emp;
        // oracle: every order-consistent DAG, fit independently
        let menus: Vec<Vec<Vec<usize>>> =
            (0..n).map(|j| predecessor_subsets(j, delta)).collect();
        let mut best = f64::INFINITY;
        let mut pick = vec![0usize; n];
        loop {
            let parents: Vec<Vec<usize>> =
                (0..n).map(|j| menus[j][pick[j]].clone()).collect();
            let dag = Dag::new(n, parents).unwrap();
            let (_, r_emp) = fit_graph(&data, &dag, &policy).unwrap();
            best = best.min(r_emp);
            let mut pos = n;
            loop {
                if pos == 0 {
                    pick.clear();
                    break;
                }
                pos -= 1;
                pick[pos] += 1;
                if pick[pos] < menus[pos].len() {
                    break;
                }
                pick[pos] = 0;
            }
            if pick.is_empty() {
                break;
            }
        }
        if (fast - best).abs() > 1e-9 {
            pass = false;
        }
    }
    check(4, "search equivalence", pass);
}

/// Binary chain X1 -> X2 -> ... -> X5 with all CPT entries in [0.2, 0.8].
fn chain5_truth(seed: u64) -> BayesNet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 5;
    let domain = CategoricalDomain::binary(n);
    let dag = Dag::chain(n);
    let mut cpts = Vec::with_capacity(n);
    let draw = |rng: &mut ChaCha8Rng| {
        let p: f64 = rng.gen_range(0.2..=0.8);
        vec![p, 1.0 - p]
    };
    cpts.push(Cpt::from_prob_rows(0, vec![], &[draw(&mut rng)]).unwrap());
    for j in 1..n {
        let rows = [draw(&mut rng), draw(&mut rng)];
        cpts.push(Cpt::from_prob_rows(j, vec![2], &rows).unwrap());
    }
    BayesNet::new(domain, dag, cpts).unwrap()
}

#[test]
fn criterion_5_bound_soundness_experiment() {
    let truth = chain5_truth(55);
    let config = SrmConfig::new(2, 8, 0.05);
    let report = validate_bound_experiment(&truth, &config, 500, 200, 500).unwrap();
    println!(
        "  violations: {}/{} (rate {:.4}), mean slack {:.4}",
        report.violations, report.trials, report.violation_rate, report.mean_slack
    );
    check(
        5,
        "bound soundness experiment",
        report.violation_rate <= 0.05,
    );
}

#[test]
fn criterion_6_consistency_at_scale() {
    let truth = chain5_truth(55);
    let config = SrmConfig::new(2, 8, 0.05);
    let data = forward_sample(&truth, 20_000, 6).unwrap();
    let result = srm_select(&data, &config).unwrap();
    let kl = kl_divergence(&truth, &result.net).unwrap();
    let rb = result.risk_bound.as_ref().unwrap();
    println!(
        "  selected k={:?} m={:?}, KL(truth || selected) = {kl:.6}",
        rb.k, rb.m
    );
    check(6, "consistency at scale", kl <= 0.01);
}

#[test]
fn criterion_7_entropy_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let policy = CutoffPolicy::unbounded();
    let mut pass = true;
    for _ in 0..20 {
        let n = rng.gen_range(2..=5usize);
        let l = rng.gen_range(20..=100usize);
        let data = random_dataset(&mut rng, n, l);
        let parents: Vec<Vec<usize>> = (0..n)
            .map(|j| {
                (0..j)
                    .filter(|_| rng.gen_bool(0.4))
                    .take(2)
                    .collect()
            })
            .collect();
        let dag = Dag::new(n, parents).unwrap();
        let (_, r_emp) = fit_graph(&data, &dag, &policy).unwrap();
        let mut entropy_sum = 0.0;
        for j in 0..n {
            let counts = node_counts(&data, j, dag.parents(j)).unwrap();
            for omega in 0..counts.parent_config_count() {
                let row = counts.row(omega);
                let total: u64 = row.iter().sum();
                for &c in row {
                    if c > 0 {
                        entropy_sum -=
                            (c as f64 / l as f64) * (c as f64 / total as f64).ln();
                    }
                }
            }
        }
        if (r_emp - entropy_sum).abs() > 1e-9 {
            pass = false;
        }
    }
    check(7, "entropy identity", pass);
}

#[test]
fn criterion_8_monotonicity_suite() {
    let mut pass = true;
    // phi is linear in -ln lambda
    for lambda in [0.5, 0.1, 0.01] {
        let phi1 = confidence_term(lambda, 1000, 10, 0.05).unwrap();
        let phi2 = confidence_term(lambda * lambda, 1000, 10, 0.05).unwrap();
        if (phi2 - 2.0 * phi1).abs() > 1e-12 {
            pass = false;
        }
    }
    // phi increasing in h while h < 2l
    let l = 1000;
    let mut prev = 0.0;
    for h in [1u128, 5, 20, 100, 500, 1999] {
        let phi = confidence_term(0.01, l, h, 0.05).unwrap();
        if phi <= prev {
            pass = false;
        }
        prev = phi;
    }
    // class-k optimum non-increasing in k
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let policy = CutoffPolicy::unbounded();
    let order: Vec<usize> = (0..4).collect();
    for _ in 0..20 {
        let l = rng.gen_range(20..=60usize);
        let data = random_dataset(&mut rng, 4, l);
        let mut prev = f64::INFINITY;
        for k in 0..4 {
            let r = best_parents_per_node(&data, &order, k, &policy)
                .unwrap()
                .r_emp;
            if r > prev + 1e-12 {
                pass = false;
            }
            prev = r;
        }
    }
    check(8, "monotonicity suite", pass);
}
