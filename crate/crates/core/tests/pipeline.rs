use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mdpc::channel::{llr, modulate, transmit};
use mdpc::codes::DEFAULT_BUDGET;
use mdpc::io::parse_weights;
use mdpc::{
    search_mdpc, union_bound, AdConfig, AdDecoder, ChannelConfig, CodeContext, CodeSpec,
    CyclicCode, ParityCheckMatrix, TannerGraph, WeightDistribution,
};

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn load(name: &str) -> CyclicCode {
    CodeSpec::parse(&fixture(name)).and_then(CodeSpec::build).unwrap()
}

#[test]
fn fixtures_round_trip_through_the_spec_format() {
    for name in ["hamming_7_4.code", "mdpc_127_92.code", "mdpc_129_100.code", "mdpc_127_106.code"] {
        let spec = CodeSpec::parse(&fixture(name)).unwrap();
        let again = CodeSpec::parse(&spec.render()).unwrap();
        assert_eq!(again, spec);
        assert_eq!(again.build().unwrap(), spec.clone().build().unwrap());
    }
}

#[test]
fn declared_dual_weights_match_the_idempotent_weight() {
    for name in ["mdpc_127_92.code", "mdpc_129_100.code", "mdpc_127_106.code"] {
        let code = load(name);
        assert_eq!(code.dual_min_weight(), Some(code.idual().weight()), "{name}");
    }
}

/// Simpson integration of the standard normal density on `[x, x + 12]`.
fn q_by_quadrature(x: f64) -> f64 {
    let steps = 100_000;
    let h = 12.0 / steps as f64;
    let pdf = |t: f64| (-0.5 * t * t).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let inner: f64 = (1..steps)
        .map(|i| if i % 2 == 1 { 4.0 } else { 2.0 } * pdf(x + i as f64 * h))
        .sum();
    (pdf(x) + pdf(x + 12.0) + inner) * h / 3.0
}

fn exact_127_106() -> WeightDistribution {
    load("mdpc_127_106.code")
        .weight_distribution(DEFAULT_BUDGET)
        .unwrap()
        .exact()
        .unwrap()
}

#[test]
fn table_terms_bound_at_5_db() {
    let code = load("mdpc_127_106.code");
    let table = "6,2667\n7,49149\n8,672973\n9,8556625\n10,99758246\n11,1060095162\n\
                 12,10250410030\n13,90688861802\n14,738539743136\n15,5563741707013\n";
    let truncated = parse_weights(table, 127).unwrap();
    let t = union_bound(&truncated, 127, code.k(), &[5.0]);
    assert_eq!(t.truncated_at, Some(15));
    let full = union_bound(&exact_127_106(), 127, code.k(), &[5.0]);
    assert_eq!(full.truncated_at, None);
    let (tp, fp) = (t.points[0], full.points[0]);
    assert!(tp.fer_bound.is_finite() && tp.fer_bound > 0.0);
    assert!(tp.fer_bound <= fp.fer_bound && tp.ber_bound <= fp.ber_bound);
    let ebno = 10f64.powf(0.5);
    let direct: f64 = table
        .lines()
        .map(|l| {
            let (d, a) = l.trim().split_once(',').unwrap();
            let (d, a): (f64, f64) = (d.parse().unwrap(), a.parse().unwrap());
            a * q_by_quadrature((2.0 * 106.0 / 127.0 * d * ebno).sqrt())
        })
        .sum();
    assert!((tp.fer_bound / direct - 1.0).abs() < 1e-6, "{} vs {direct}", tp.fer_bound);
    // regression baselines
    assert!((tp.fer_bound / 1.55696e-4 - 1.0).abs() < 1e-4, "{}", tp.fer_bound);
    assert!((fp.ber_bound / 1.08839e-5 - 1.0).abs() < 1e-4, "{}", fp.ber_bound);
}

#[test]
fn truncated_127_92_bound_reaches_1e_5_near_4_15_db() {
    let dist = parse_weights(&fixture("weights_127_92_truncated.txt"), 127).unwrap();
    let ber = |db: f64| union_bound(&dist, 127, 92, &[db]).points[0].ber_bound;
    let (mut lo, mut hi) = (3.0, 6.0);
    assert!(ber(lo) > 1e-5 && ber(hi) < 1e-5);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if ber(mid) > 1e-5 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    assert!((lo - 4.15).abs() <= 0.15, "crossing at {lo} dB");
}

#[test]
fn searched_code_decodes_noisy_frames() {
    let ctx = CodeContext::new(63).unwrap();
    let out = search_mdpc(&ctx, 5, 2).unwrap();
    let code = out.best.expect("a (63, k) code with BCH bound 5 exists");
    assert!(code.bch_bound() >= 5);
    let h = ParityCheckMatrix::from_code(&code, 31).unwrap();
    let graph = TannerGraph::from_matrix(&h);
    let mut dec = AdDecoder::for_code(&graph, &code, AdConfig::default()).unwrap();
    let channel = ChannelConfig::new(7.0, code.rate()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut errors = 0;
    for _ in 0..200 {
        let info: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2)).collect();
        let c = code.encode(&info).unwrap();
        let y = transmit(&modulate(&c), &channel, &mut rng);
        let out = dec.decode(&llr(&y, &channel).unwrap(), &y, &mut rng).unwrap();
        assert!(code.contains(&out.codeword) || out.selected_by_lms);
        errors += usize::from(out.codeword != c);
    }
    assert!(errors <= 4, "{errors} frame errors at 7 dB");
}
