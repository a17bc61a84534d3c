//! Worked examples through the library API.

mod common;

use common::*;
use wildram::blowup::{resolve_e, TieBreak, DEFAULT_STEP_CAP};
use wildram::cli::{self, parse_spec, Options};
use wildram::conductors::DivisorType;
use wildram::cycles::{cc_log, singular_support, tau_shriek_cc, Cycle, LogComponent, Span};
use wildram::geometry::{assemble_cform, compute_loci, is_clean, Base, ChartConfig, Cleanliness};

fn chart(text: &str) -> ChartConfig {
    cli::build_chart(&parse_spec(text).unwrap(), &Options::default()).unwrap()
}

#[test]
fn main_example_log_cycle() {
    for (p, n) in [(3u32, 1u32), (3, 2), (5, 1), (2, 3)] {
        let cfg = chart(&examain_spec(p, n));
        let log = cc_log(&cfg);
        assert_eq!(log.terms, vec![(LogComponent::ZeroSection, -1), (LogComponent::L(0), -((p * n) as i64))]);
    }
}

#[test]
fn main_example_p2_has_the_same_shape() {
    // p = 2 is outside the acceptance list but the formulas are uniform in p
    let (p, n) = (2u32, 1u32);
    let cfg = chart(&examain_spec(p, n));
    let form = assemble_cform(&cfg).unwrap().unwrap();
    let loci = compute_loci(&cfg, &form).unwrap();
    let cc = tau_shriek_cc(&cfg, &form, &loci).unwrap();
    let coeffs: Vec<i64> = cc.terms.iter().map(|t| t.1).collect();
    let mut sorted = coeffs.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, vec![-4, -3, -1]);
}

#[test]
fn pushforward_charts_are_clean_with_exceptional_type_ii() {
    let cfg = chart(&exapushdim_spec(3));
    let tree = resolve_e(&cfg, DEFAULT_STEP_CAP, TieBreak::Last).unwrap();
    assert_eq!(tree.blowups(), 1);
    for (k, node) in &tree.children {
        let c = &node.config;
        assert_eq!(c.inv(*k).kind, DivisorType::II);
        assert_eq!(c.inv(*k).sw, 12);
        assert_eq!(c.log_set, vec![1 - k]);
        let form = node.form.as_ref().unwrap();
        assert!(matches!(is_clean(form), Cleanliness::Clean));
        let loci = compute_loci(c, form).unwrap();
        let cc = tau_shriek_cc(c, form, &loci).unwrap();
        // -[zero] - (1 + sw'')[conormals of the two divisors] - ... over V(t1, t2)
        assert_eq!(cc.coefficient_of(&Span::zero_section(3)), -1);
        assert!(cc.terms.iter().all(|(_, x)| *x < 0));
        assert_eq!(cc.terms.len(), 4);
    }
}

#[test]
fn tame_only_support_is_the_conormal_union() {
    for (d, boundary) in [(2usize, vec![1usize, 2]), (3, vec![1, 3]), (3, vec![1, 2, 3])] {
        let cfg = chart(&tame_spec(3, d, &boundary));
        assert!(cfg.wild().is_empty());
        let f = cfg.field().clone();
        let b0: Vec<usize> = boundary.iter().map(|x| x - 1).collect();
        let mut want = Cycle::new(d);
        let sign = if d % 2 == 0 { 1 } else { -1 };
        for mask in 0..1u32 << b0.len() {
            let s: Vec<usize> = (0..b0.len()).filter(|k| mask >> k & 1 == 1).map(|k| b0[k]).collect();
            want.add(Span::conormal(&f, Base::stratum(d, &s)), sign);
        }
        let a = cli::analyze(&cfg).unwrap();
        let c = cli::cycles(&cfg, &a).unwrap();
        assert!(c.cc.same_as(&want), "{}", c.cc);
        assert_eq!(c.ss.components.len(), 1 << b0.len());
    }
}

#[test]
fn singular_support_of_lambda_example_is_flagged() {
    // not clean at the origin: the explicit description does not apply
    let cfg = lambda_example(1);
    let form = assemble_cform(&cfg).unwrap().unwrap();
    assert!(!is_clean(&form).is_clean());
    let loci = compute_loci(&cfg, &form);
    if let Ok(loci) = loci {
        if let Ok(ss) = singular_support(&cfg, &form, &loci) {
            assert_ne!(ss.validity, "full");
        }
    }
}

#[test]
fn tie_breaks_agree_on_the_pushforward_example() {
    for p in [2u32, 3] {
        let cfg = chart(&exapushdim_spec(p));
        let a = resolve_e(&cfg, DEFAULT_STEP_CAP, TieBreak::First).unwrap();
        let b = resolve_e(&cfg, DEFAULT_STEP_CAP, TieBreak::Last).unwrap();
        assert_eq!(a.blowups(), b.blowups());
        for ((ka, na), (kb, nb)) in a.children.iter().zip(&b.children) {
            assert_eq!(ka, kb);
            assert_eq!(na.config.datum, nb.config.datum);
        }
    }
}

#[test]
fn step_cap_zero_refuses_to_blow_up() {
    let cfg = chart(&exapushdim_spec(2));
    let err = resolve_e(&cfg, 0, TieBreak::First).unwrap_err();
    assert_eq!(err.exit_code(), 3);
}
