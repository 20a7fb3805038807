use sqnorm::corpus;
use sqnorm::pipeline::{self, Branch, PipelineConfig, Verdict};

fn base() -> PipelineConfig {
    PipelineConfig {
        sample_count: 500,
        seed: 2024,
        ..PipelineConfig::default()
    }
}

#[test]
fn manifest_verdicts_match_expectations() {
    for e in corpus::manifest() {
        let r = pipeline::verify_theorem(&e.algebra, &e.seminorm, &e.config(&base())).unwrap();
        assert_eq!(r.verdict, e.expected, "{}: {:?}", e.id, r.failed_checks);
        assert_eq!(r.verdict, pipeline::derive_verdict(&r), "{}", e.id);
        if r.verdict == Verdict::Pass {
            assert!(r.failed_checks.is_empty());
            assert_eq!(r.iterate_relation_residuals.len(), 10);
        }
    }
}

#[test]
fn spectral_radius_kernel_on_extended_null_is_the_radical() {
    let e = corpus::manifest()
        .into_iter()
        .find(|e| e.id == "extended-null-spectral-radius")
        .unwrap();
    let r = pipeline::verify_theorem(&e.algebra, &e.seminorm, &e.config(&base())).unwrap();
    assert_eq!(r.kernel_dim, Some(1));
    assert_eq!(r.quotient_dim, Some(2));
    assert_eq!(r.branch, Some(Branch::Unital));
    assert_eq!(r.character_count, Some(2));
}

#[test]
fn reports_serialize_deterministically() {
    let e = &corpus::manifest()[2];
    let a = serde_json::to_string(&pipeline::verify_theorem(&e.algebra, &e.seminorm, &base()).unwrap()).unwrap();
    let b = serde_json::to_string(&pipeline::verify_theorem(&e.algebra, &e.seminorm, &base()).unwrap()).unwrap();
    assert_eq!(a, b);
    let other = PipelineConfig { seed: 1, ..base() };
    let c = serde_json::to_string(&pipeline::verify_theorem(&e.algebra, &e.seminorm, &other).unwrap()).unwrap();
    assert_ne!(a, c);
}

#[test]
fn hypothesis_failures_stop_after_stage_one() {
    for e in corpus::manifest()
        .into_iter()
        .filter(|e| e.expected == Verdict::HypothesisNotMet)
    {
        let r = pipeline::verify_theorem(&e.algebra, &e.seminorm, &base()).unwrap();
        assert_eq!(r.stopped_at_stage, Some(1), "{}", e.id);
        assert!(r.m_hat.is_none() && r.final_submultiplicativity_ratio.is_none());
    }
}
