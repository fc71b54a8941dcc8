use proptest::prelude::*;

use frobsig::extension::{base_change, field_map, gamma_report, map_polynomials, root_name, BaseChangeSpec};
use frobsig::field::{Field, FieldElement, FieldSpec};
use frobsig::poly::OrderKind;
use frobsig::signature::{s_trunc_min_over, LocalRingPresentation, SearchMode, SearchOptions};

fn function_field(p: u32) -> Field {
    Field::new(FieldSpec::function(p, &["t", "s"])).unwrap()
}

fn gamma(names: &[&str], level: u32) -> BaseChangeSpec {
    BaseChangeSpec::Gamma {
        gamma: names.iter().map(|s| s.to_string()).collect(),
        level,
    }
}

fn element(f: &Field, pieces: &[(u8, u8, u8)]) -> FieldElement {
    let t = f.generator("t").unwrap();
    let s = f.generator("s").unwrap();
    pieces.iter().fold(f.zero(), |acc, &(c, a, b)| {
        let term = f.mul(&f.from_i64(c as i64), &f.mul(&f.pow(&t, a as u64), &f.pow(&s, b as u64)));
        f.add(&acc, &term)
    })
}

fn pieces() -> impl Strategy<Value = Vec<(u8, u8, u8)>> {
    prop::collection::vec((1u8..3, 0u8..4, 0u8..3), 1..4)
}

/// Renames the iterated root `t_r{p^a}_r{p^b}` to `t_r{p^(a+b)}`.
fn canonical(text: &str, p: u64, a: u32, b: u32) -> String {
    let twice = root_name(&root_name("t", p.pow(a)), p.pow(b));
    text.replace(&twice, &root_name("t", p.pow(a + b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_levels_compose(p in prop::sample::select(vec![2u32, 3]), a in 1u32..3, b in 1u32..3, num in pieces(), den in pieces()) {
        let f = function_field(p);
        let vars = vec!["x".to_string(), "y".to_string()];
        let d = element(&f, &den);
        let x = if f.is_zero(&d) { element(&f, &num) } else { f.div(&element(&f, &num), &d).unwrap() };
        let first = field_map(&f, &gamma(&["t"], a), &vars).unwrap();
        let mid = first.target().clone();
        let second = field_map(&mid, &gamma(&[&root_name("t", (p as u64).pow(a))], b), &vars).unwrap();
        let direct = field_map(&f, &gamma(&["t"], a + b), &vars).unwrap();

        let two_steps = second.target().format(&second.element(&first.element(&x)));
        let one_step = direct.target().format(&direct.element(&x));
        prop_assert_eq!(canonical(&two_steps, p as u64, a, b), one_step);
        prop_assert_eq!(
            canonical(&second.target().spec().to_string(), p as u64, a, b),
            direct.target().spec().to_string()
        );
    }

    #[test]
    fn gamma_presentations_compose(p in prop::sample::select(vec![2u32, 3]), a in 1u32..3, b in 1u32..3) {
        let pres = LocalRingPresentation::parse(function_field(p), &["x", "y"], OrderKind::Grevlex, &["y^2 + t*x^2 + s*x^3 + t^2*s*x*y"]).unwrap();
        let (mid, _) = base_change(&pres, &gamma(&["t"], a)).unwrap();
        let (two, _) = base_change(&mid, &gamma(&[&root_name("t", (p as u64).pow(a))], b)).unwrap();
        let (one, _) = base_change(&pres, &gamma(&["t"], a + b)).unwrap();
        let render = |q: &LocalRingPresentation| q.defining().iter().map(|g| q.ring().format(g)).collect::<Vec<_>>().join(", ");
        prop_assert_eq!(canonical(&render(&two), p as u64, a, b), render(&one));
        prop_assert_eq!(two.dimension(), one.dimension());
    }

    #[test]
    fn finite_extension_keeps_colengths(p in prop::sample::select(vec![2u32, 3]), degree in 2u32..4, powers in [1u32..4, 1u32..4], mixed in 0u32..3) {
        let pres = LocalRingPresentation::parse(Field::prime(p).unwrap(), &["x", "y"], OrderKind::Grevlex, &["y^2 - x^3"]).unwrap();
        let gens = [format!("x^{}", powers[0]), format!("y^{}", powers[1]), format!("x^{mixed}*y")];
        let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
        let i = pres.parse_ideal(&refs).unwrap();
        let (ext, map) = base_change(&pres, &BaseChangeSpec::ExtendPrimeField { degree }).unwrap();
        let ext_i = map_polynomials(&pres, &ext, &map, &i);
        for e in 0..=2 {
            prop_assert_eq!(
                pres.bracket_basis(&i, e).unwrap().colength().unwrap(),
                ext.bracket_basis(&ext_i, e).unwrap().colength().unwrap()
            );
        }
    }
}

#[test]
fn pushed_forward_candidates_keep_their_values() {
    let pres =
        LocalRingPresentation::parse(function_field(2), &["x", "y"], OrderKind::Grevlex, &["y^2 + t*x^2 + x^3"]).unwrap();
    let i0 = pres.parse_ideal(&["x^2", "y^2"]).unwrap();
    let opts = SearchOptions::default();
    let rep = gamma_report(&pres, &i0, 1, &["t".to_string()], &[0, 1, 2], &opts).unwrap();
    assert!(rep.preserved());
    assert!(rep.monotone());
    for w in rep.levels.windows(2) {
        let (before, after) = (&w[0], &w[1]);
        assert_eq!(after.carried, before.candidates.len());
        for (k, (_, v)) in before.candidates.iter().enumerate() {
            assert_eq!(&after.candidates[k].1, v);
        }
    }
    // Re-evaluating the carried matrices at the top level reproduces the report.
    let top = rep.levels.last().unwrap();
    let (changed, map) = base_change(&pres, &gamma(&["t"], 2)).unwrap();
    let changed_i0 = map_polynomials(&pres, &changed, &map, &i0);
    let mats: Vec<_> = top.candidates.iter().map(|(m, _)| m.clone()).collect();
    let r = s_trunc_min_over(&changed, &changed_i0, 1, &mats, SearchMode::SampledRank1, &opts).unwrap();
    for (c, (_, v)) in r.candidates.iter().zip(&top.candidates) {
        assert_eq!(&c.value.value, v);
    }
}

#[test]
fn level_zero_and_empty_gamma_are_identities() {
    let f = function_field(3);
    let vars = vec!["x".to_string()];
    assert!(field_map(&f, &gamma(&[], 2), &vars).unwrap().is_identity());
    assert!(field_map(&f, &gamma(&["t"], 0), &vars).unwrap().is_identity());
}
