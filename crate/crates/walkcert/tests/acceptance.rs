//! Acceptance suite: each test is one criterion, evaluated at its stated
//! tolerance against exhaustive small-graph corpora and the independent
//! oracles from `common`. Run with `--nocapture` to see the per-criterion
//! summary lines.

mod common;

use common::brute_force_walk_counts;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, ToPrimitive};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;
use walkcert::certificate::{
    agm_sos, binary_psd_decide, psd_obstructions, sandwich_certificate, square_certificate,
    two_factor_characterize, univariate_certificate, Obstruction, PsdDecision, TwoFactorOutcome,
};
use walkcert::graph::{labeled_graphs, make_named_graph, Graph, GraphFamily};
use walkcert::inequality::{
    builtin_inequality, compile, search_counterexamples, BuiltinInequality, Corpus, FamilySpec,
    SearchOptions, WalkInequality,
};
use walkcert::poly::{rat, ratq, Permutation, Polynomial};
use walkcert::spectral::{spectral_decompose, symmetrization_identity_residual_cached};
use walkcert::walks::WalkTable;

fn all_graphs_up_to(n_max: usize) -> Vec<Graph> {
    (1..=n_max)
        .flat_map(|n| labeled_graphs(n, 8).unwrap())
        .collect()
}

fn tables_up_to(n_max: usize, max_len: usize) -> Vec<(Graph, WalkTable)> {
    all_graphs_up_to(n_max)
        .into_iter()
        .map(|g| {
            let t = g.walk_counts(max_len);
            (g, t)
        })
        .collect()
}

#[test]
fn criterion_01_exact_walk_counts_match_brute_force() {
    let start = Instant::now();
    let mut graphs = 0u64;
    for (g, table) in tables_up_to(5, 5) {
        let brute = brute_force_walk_counts(&g, 5);
        for (k, expected) in brute.iter().enumerate() {
            assert_eq!(
                table.counts()[k],
                num::BigUint::from(*expected),
                "mismatch at k={k} on {g:?}"
            );
        }
        graphs += 1;
    }
    let elapsed = start.elapsed();
    assert_eq!(graphs, 1 + 2 + 8 + 64 + 1024);
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}, limit 60s");
    println!(
        "[PASS] criterion 1: walk counts match the brute-force oracle on {graphs} graphs (n<=5, K<=5) in {:.1}s",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_02_spectral_walk_identity() {
    let start = Instant::now();
    let mut checked = 0u64;
    let mut worst: f64 = 0.0;
    for (g, table) in tables_up_to(6, 12) {
        let spectral = spectral_decompose(&g).unwrap().walk_counts_spectral(12);
        for (k, approx) in spectral.iter().enumerate() {
            let exact = table.counts()[k].to_f64().unwrap();
            let residual = (approx - exact).abs() / exact.max(1.0);
            worst = worst.max(residual);
            assert!(
                residual <= 1e-8,
                "relative error {residual:e} at k={k} on {g:?}"
            );
        }
        checked += 1;
    }
    println!(
        "[PASS] criterion 2: spectral walk counts within 1e-8 on {checked} graphs (n<=6, k<=12), worst {worst:.2e}, {:.1}s",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_03_symmetrization_identity_residual() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20250314);
    let mut polynomials = Vec::new();
    while polynomials.len() < 100 {
        let k = rng.random_range(1usize..=3);
        let mut f = Polynomial::zero(k);
        for _ in 0..rng.random_range(1..=5) {
            let exps: Vec<u32> = loop {
                let candidate: Vec<u32> = (0..k).map(|_| rng.random_range(0..=6)).collect();
                if candidate.iter().sum::<u32>() <= 6 {
                    break candidate;
                }
            };
            let denom = rng.random_range(1i64..=4);
            let numer = rng.random_range(-5 * denom..=5 * denom);
            f.add_term(exps, BigRational::new(BigInt::from(numer), BigInt::from(denom)));
        }
        if !f.is_zero() {
            polynomials.push(f);
        }
    }

    let graphs = all_graphs_up_to(5);
    let mut worst: f64 = 0.0;
    for g in &graphs {
        let data = spectral_decompose(g).unwrap();
        for f in &polynomials {
            let residual = symmetrization_identity_residual_cached(f, g, &data).unwrap();
            worst = worst.max(residual);
            assert!(residual <= 1e-7, "residual {residual:e} for {f:?} on {g:?}");
        }
    }
    println!(
        "[PASS] criterion 3: symmetrization identity residual <= 1e-7 over 100 polynomials x {} graphs, worst {worst:.2e}, {:.1}s",
        graphs.len(),
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_04_sandwich_suite_on_six_nodes() {
    let start = Instant::now();
    let mut inequalities = Vec::new();
    for a in 0..=2 {
        for b in 0..=2 {
            for c in 0..=2 {
                let cert = sandwich_certificate(a, b, c).unwrap();
                assert!(cert.verify(), "sandwich ({a},{b},{c}) failed verification");
                inequalities.push((a, b, c, cert.compiled()));
            }
        }
    }
    let mut graphs = 0u64;
    for g in labeled_graphs(6, 7).unwrap() {
        let table = g.walk_counts(12);
        for (a, b, c, ineq) in &inequalities {
            let value = ineq.evaluate(&table).unwrap();
            assert!(
                !value.is_negative(),
                "sandwich ({a},{b},{c}) violated on {g:?}: {value}"
            );
        }
        graphs += 1;
    }
    let elapsed = start.elapsed();
    assert_eq!(graphs, 32768);
    assert!(elapsed.as_secs() < 300, "took {elapsed:?}, limit 5min");
    println!(
        "[PASS] criterion 4: all 27 sandwich inequalities (a,b,c <= 2) hold on all 32768 six-node graphs in {:.1}s",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_05_symmetric_square_family() {
    let start = Instant::now();
    let tables = tables_up_to(5, 6);
    let permutations = [
        [0usize, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut certificates = 0u64;
    for a0 in 0..=3u32 {
        for a1 in 0..=3u32 {
            for a2 in 0..=3u32 {
                let alpha = [a0, a1, a2];
                for perm in &permutations {
                    let sigma = Permutation::new(perm.to_vec()).unwrap();
                    let cert = square_certificate(&alpha, &sigma).unwrap();
                    assert!(cert.verify());
                    let compiled = cert.compiled();

                    // expanding the square and merging terms gives formally
                    // 2·(Π w_{2α_i} − Π w_{α_i+α_{σ(i)}})
                    let doubled: Vec<u32> = alpha.iter().map(|&a| 2 * a).collect();
                    let mixed: Vec<u32> = (0..3)
                        .map(|i| alpha[i] + alpha[sigma.apply(i)])
                        .collect();
                    let expected = WalkInequality::new([
                        (rat(2), doubled),
                        (rat(-2), mixed),
                    ])
                    .unwrap();
                    assert_eq!(compiled, expected, "compile identity for {alpha:?}, {perm:?}");

                    for (g, table) in &tables {
                        let value = compiled.evaluate(table).unwrap();
                        assert!(
                            !value.is_negative(),
                            "square ({alpha:?}, {perm:?}) violated on {g:?}"
                        );
                    }
                    certificates += 1;
                }
            }
        }
    }
    assert_eq!(certificates, 64 * 6);
    println!(
        "[PASS] criterion 5: {certificates} square certificates (alpha in {{0..3}}^3, sigma in S3) hold on all graphs n<=5 with the factor-2 compile identity, {:.1}s",
        start.elapsed().as_secs_f64()
    );
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

#[test]
fn criterion_06_agm_sos_family() {
    let start = Instant::now();
    let tables = tables_up_to(5, 8);
    let mut certificates = 0u64;
    let mut hurwitz_seen = false;
    for degree in [2u32, 4, 6, 8] {
        for k in 1..=4usize {
            for alpha in compositions(degree, k) {
                let cert = agm_sos(&alpha).unwrap();
                assert!(cert.verify(), "agm sos failed for {alpha:?}");
                if alpha == vec![1, 1, 1, 1] {
                    hurwitz_seen = true;
                }
                let compiled = cert.compiled();
                for (g, table) in &tables {
                    let value = compiled.evaluate(table).unwrap();
                    assert!(!value.is_negative(), "agm {alpha:?} violated on {g:?}");
                }
                certificates += 1;
            }
        }
    }
    assert!(hurwitz_seen);
    println!(
        "[PASS] criterion 6: {certificates} verified AM-GM sos certificates (k<=4, |alpha|<=8, incl. Hurwitz (1,1,1,1)) hold on all graphs n<=5, {:.1}s",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_07_counterexample_reproduction() {
    let start = Instant::now();
    // derive the walk vector via the brute-force oracle before freezing it
    let union = make_named_graph(GraphFamily::Complete, 3)
        .unwrap()
        .disjoint_union(&make_named_graph(GraphFamily::Star, 5).unwrap());
    assert_eq!(brute_force_walk_counts(&union, 3), vec![9, 16, 42, 74]);

    let lagarias = WalkInequality::new([
        (rat(1), vec![0, 3]),
        (rat(-1), vec![1, 2]),
    ])
    .unwrap();
    let family = FamilySpec::parse("union(complete:3,star:m)").unwrap();
    let report = search_counterexamples(
        &lagarias,
        &Corpus::FamilyScan { family, lo: 1, hi: 10 },
        &SearchOptions { stop_at_first: true, ..Default::default() },
    )
    .unwrap();
    assert_eq!(report.violations.len(), 1);
    let violation = &report.violations[0];
    assert_eq!(violation.family_param, Some(5));
    assert_eq!(violation.value, rat(-6));
    assert_eq!(violation.node_count, 9);
    // the reported graph6 decodes back to the witness
    let witness = Graph::from_graph6(&violation.graph6).unwrap();
    assert_eq!(brute_force_walk_counts(&witness, 3), vec![9, 16, 42, 74]);

    // on regular graphs the same expression is exactly zero everywhere
    let mut regular = 0u64;
    for n in 1..=6 {
        for g in labeled_graphs(n, 7).unwrap() {
            if g.regular_degree().is_some() {
                assert_eq!(lagarias.evaluate_on_graph(&g), rat(0));
                regular += 1;
            }
        }
        let regular_scan = search_counterexamples(
            &lagarias,
            &Corpus::Exhaustive { n },
            &SearchOptions { regular_only: true, ..Default::default() },
        )
        .unwrap();
        assert!(regular_scan.violations.is_empty());
    }
    println!(
        "[PASS] criterion 7: family scan finds w0·w3 - w1·w2 = -6 at m=5 (walk vector 9,16,42,74 oracle-confirmed); exact 0 on all {regular} regular graphs n<=6, {:.1}s",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_08_obstructions_do_not_imply_invalidity() {
    let start = Instant::now();
    // w1·w2 <= w0·w3 is refuted by the odd Newton vertex (0,3)
    let lagarias_base = {
        let mut f = Polynomial::zero(2);
        f.add_term(vec![0, 3], rat(1));
        f.add_term(vec![1, 2], rat(-1));
        f
    };
    let obstructions = psd_obstructions(&lagarias_base).unwrap();
    assert!(
        obstructions
            .iter()
            .any(|o| matches!(o, Obstruction::OddVertex { vertex } if vertex == &vec![0, 3])),
        "expected OddVertex(0,3), got {obstructions:?}"
    );

    // the generalized Erdős–Simonovits pattern at (l,p,k) = (0,1,3) has a
    // symmetrization of odd degree 3
    let erdos_base = {
        let mut f = Polynomial::zero(3);
        f.add_term(vec![3, 0, 0], rat(1));
        f.add_term(vec![1, 1, 1], rat(-1));
        f
    };
    let obstructions = psd_obstructions(&erdos_base).unwrap();
    assert!(
        obstructions
            .iter()
            .any(|o| matches!(o, Obstruction::OddDegree { degree: 3 })),
        "expected OddDegree(3), got {obstructions:?}"
    );

    // yet the inequalities themselves hold on every small graph
    let tables = tables_up_to(5, 15);
    let mut checked = 0u64;
    for l in 0..=3 {
        for p in 0..=3 {
            for k in 1..=3 {
                let ineq = builtin_inequality(&BuiltinInequality::Erdos { l, p, k }).unwrap();
                for (g, table) in &tables {
                    let value = ineq.evaluate(table).unwrap();
                    assert!(
                        !value.is_negative(),
                        "erdos({l},{p},{k}) violated on {g:?}"
                    );
                }
                checked += 1;
            }
        }
    }
    println!(
        "[PASS] criterion 8: psd obstructions fire (odd vertex / odd degree) while all {checked} erdos(l,p,k<=3) inequalities hold on n<=5, {:.1}s",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_09_two_factor_cross_validation() {
    let start = Instant::now();
    let mut agreements = 0u64;
    let mut certified = 0u64;
    for total in 0..=12u32 {
        for a1 in 0..=total / 2 {
            let alpha = (a1, total - a1);
            for b1 in 0..=total / 2 {
                let beta = (b1, total - b1);
                if alpha == beta {
                    // x^β − x^α symmetrizes to zero: outside the scope of
                    // the psd decision (which needs a nonzero form)
                    continue;
                }
                let mut f = Polynomial::zero(2);
                f.add_term(vec![beta.0, beta.1], rat(1));
                f.add_term(vec![alpha.0, alpha.1], rat(-1));
                let sym = f.symmetrize().unwrap();
                assert!(!sym.is_zero());

                let characterized = matches!(
                    two_factor_characterize(alpha, beta).unwrap(),
                    TwoFactorOutcome::Params { .. }
                );
                let psd = match binary_psd_decide(&sym).unwrap() {
                    PsdDecision::Psd(cert) => {
                        assert!(cert.verify());
                        true
                    }
                    PsdDecision::NotPsd(Obstruction::NegativeWitness { point, value }) => {
                        assert_eq!(sym.evaluate(&point).unwrap(), value);
                        assert!(value.is_negative());
                        false
                    }
                    other => panic!("unexpected decision {other:?}"),
                };
                assert_eq!(
                    characterized, psd,
                    "disagreement at alpha={alpha:?}, beta={beta:?}"
                );
                agreements += 1;
                if characterized {
                    certified += 1;
                }
            }
        }
    }
    assert!(certified > 10);
    assert!(certified < agreements);
    println!(
        "[PASS] criterion 9: two-factor characterization agrees with the binary psd decision on all {agreements} candidate pairs (|alpha| = |beta| <= 12; {certified} certifiable), {:.1}s",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_10_univariate_certificates() {
    let start = Instant::now();
    // k=1, a=(2): exactly L = -1 and w2 + w0 - 2w1 = Σ (d_v - 1)²
    let report = univariate_certificate(1, &[rat(2)], &ratq(1, 1_000_000)).unwrap();
    assert_eq!(report.min_bound, rat(-1));
    assert!(report.certificate.verify());
    let ineq = report.certificate.compiled();
    let mut graphs = 0u64;
    for n in 1..=6 {
        for g in labeled_graphs(n, 7).unwrap() {
            let value = ineq.evaluate_on_graph(&g);
            let degree_sum: i64 = g
                .degrees()
                .iter()
                .map(|&d| (d as i64 - 1) * (d as i64 - 1))
                .sum();
            assert_eq!(value, rat(degree_sum), "on {g:?}");
            graphs += 1;
        }
    }

    // k=2, a=(2,0,1): Sturm-certified bound, inequality exact on n<=5
    let quartic = univariate_certificate(2, &[rat(2), rat(0), rat(1)], &ratq(1, 10_000)).unwrap();
    assert!(quartic.certificate.verify());
    assert!(quartic.min_bound.is_negative());
    // w4 - L·w0 - 2w3 - w1 with -L > 0
    let compiled = quartic.certificate.compiled();
    for (g, table) in tables_up_to(5, 4) {
        let value = compiled.evaluate(&table).unwrap();
        assert!(!value.is_negative(), "quartic certificate violated on {g:?}");
    }
    println!(
        "[PASS] criterion 10: univariate certificates — exact L=-1 with Σ(d_v-1)² identity on {graphs} graphs n<=6; Sturm-certified quartic bound {} holds on n<=5, {:.1}s",
        walkcert::ratio::rational_to_string(&quartic.min_bound),
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn compiled_certificates_stay_sound_under_compile() {
    // compile ∘ certificate soundness beyond the per-criterion sweeps:
    // mixed kinds, all graphs n <= 5, exact arithmetic
    let sigma = Permutation::new(vec![1, 2, 0]).unwrap();
    let certs = vec![
        square_certificate(&[0, 1, 2], &sigma).unwrap(),
        sandwich_certificate(2, 1, 2).unwrap(),
        agm_sos(&[2, 1, 1]).unwrap(),
        univariate_certificate(2, &[rat(1), rat(1), rat(0)], &ratq(1, 1000))
            .unwrap()
            .certificate,
    ];
    for (g, table) in tables_up_to(5, 10) {
        for cert in &certs {
            let value = compile(&cert.base).evaluate(&table).unwrap();
            assert!(!value.is_negative(), "{} violated on {g:?}", cert.kind.name());
        }
    }
}
