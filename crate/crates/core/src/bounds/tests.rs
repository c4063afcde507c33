use super::*;
use crate::catalog::{Catalog, MethodChoice};
use crate::multiplier::Method;

fn subject(id: &str, p: u64) -> Subject {
    Subject::new(Catalog::builtin().load(id, p).unwrap())
}

fn assumed(l: &mut Ledger, s: &str, kind: FactKind, e: u32) -> Result<FactId, LedgerError> {
    l.add(NewFact::new(s, kind, e, Provenance::Assumed("test".into())))
}

#[test]
fn inconsistent_fact_is_rejected_without_mutation() {
    let mut l = Ledger::new(3);
    assumed(&mut l, "G", FactKind::Upper, 4).unwrap();
    let before = l.facts().len();
    let err = assumed(&mut l, "G", FactKind::Lower, 5).unwrap_err();
    assert!(matches!(err, LedgerError::Inconsistent { value: 5, .. }));
    assert_eq!(l.facts().len(), before);
    assumed(&mut l, "H", FactKind::Lower, 5).unwrap();
}

#[test]
fn rule_facts_need_existing_premises() {
    let mut l = Ledger::new(3);
    let rule = |premises| Provenance::Rule {
        name: "r".into(),
        premises,
    };
    assert_eq!(l.add(NewFact::new("G", FactKind::Upper, 1, rule(vec![]))), Err(LedgerError::NoPremises));
    assert_eq!(l.add(NewFact::new("G", FactKind::Upper, 1, rule(vec![3]))), Err(LedgerError::BadPremise(3)));
}

#[test]
fn green_bound_for_d8() {
    let s = subject("D8", 2);
    let mut l = Ledger::new(2);
    let id = rule_green(&mut l, &s).unwrap();
    assert_eq!(l.fact(id).exponent, 3);
    assert_eq!(l.closure(id).len(), 2);
}

#[test]
fn extraspecial_rule_matches_computation() {
    for (id, p) in [("D8", 2), ("Q8", 2), ("ES_p_p3", 3), ("ES_p2_p3", 3), ("ES_p_p5", 3), ("ES_p2_p5", 3)] {
        let s = subject(id, p);
        let mut l = Ledger::new(p);
        let r = rule_extraspecial(&mut l, &s).unwrap();
        let c = apply_compute(&mut l, &s, MethodChoice::Auto).unwrap();
        assert_eq!(l.fact(r).exponent, l.fact(c).exponent, "{id}");
    }
}

#[test]
fn extraspecial_rule_refuses_other_groups() {
    let s = subject("Phi2_22", 3);
    let mut l = Ledger::new(3);
    assert!(matches!(rule_extraspecial(&mut l, &s), Err(LedgerError::Precondition(_))));
}

#[test]
fn jones_needs_quotient_premise() {
    let s = subject("MainThm_viii", 3);
    let mut l = Ledger::new(3);
    assert!(matches!(rule_jones(&mut l, &s, "derived"), Err(LedgerError::MissingPremise(_))));
    apply_compute_quotient(&mut l, &s, "derived", MethodChoice::Auto).unwrap();
    let id = rule_jones(&mut l, &s, "derived").unwrap();
    assert_eq!(l.fact(id).exponent, 5);
}

#[test]
fn class_bound_refuses_abelian() {
    let s = subject("Phi2_211a", 3);
    let mut l = Ledger::new(3);
    let z = Subject::new(crate::catalog::load_group_dsl("gen x p\ngen y p\n", 3).unwrap());
    assert!(matches!(rule_class_bound(&mut l, &z), Err(LedgerError::Precondition(_))));
    apply_compute_quotient(&mut l, &s, "gamma_c", MethodChoice::Only(Method::Tails)).unwrap();
    assert!(rule_class_bound(&mut l, &s).is_ok());
}

#[test]
fn transgression_requires_capability() {
    let s = subject("Phi7_1_5", 3);
    let mut l = Ledger::new(3);
    apply_compute_quotient(&mut l, &s, "center", MethodChoice::Auto).unwrap();
    assert!(matches!(rule_transgression_lower(&mut l, &s, "center"), Err(LedgerError::MissingPremise(_))));
    apply_capable_witness(&mut l, &s, "Phi7_1_5_cover").unwrap();
    let id = rule_transgression_lower(&mut l, &s, "center").unwrap();
    assert_eq!(l.fact(id).exponent, 4);
    assert!(l.assumed().is_empty());
}

#[test]
fn wrong_witness_is_rejected() {
    let s = subject("Phi7_1_5", 3);
    let mut l = Ledger::new(3);
    assert!(apply_capable_witness(&mut l, &s, "ES_p_p5").is_err());
}

#[test]
fn resolve_named_subgroup() {
    let s = subject("ES_p_p3", 3);
    let k = resolve_subgroup("<a2>", &s).unwrap();
    assert_eq!(k.order_exponent(), 1);
    assert!(resolve_subgroup("<zz>", &s).is_err());
    assert!(resolve_subgroup("frattini", &s).is_err());
}

#[test]
fn shipped_scripts() {
    let es = replay_named("es_class_bound", None).unwrap();
    assert_eq!(es.conclusion.upper, Some(2));
    assert_eq!(es.conclusion.exact, Some(2));
    assert!(es.assumed.is_empty());

    let phi7 = replay_named("phi7_squeeze", Some(3)).unwrap();
    assert_eq!(phi7.conclusion.exact, Some(4));
    assert_eq!(phi7.assumed.len(), 1);
    assert!(phi7.derivation().iter().any(|l| l.contains("squeeze")));

    let err = replay_named("d8_wrong_upper", None).unwrap_err();
    assert_eq!(err.step, "expect upper p^1");
    assert_eq!(err.line, 5);

    let off = replay_named("phi8_32", None).unwrap_err();
    assert!(off.msg.contains("disabled"));
}

#[test]
fn script_syntax_errors() {
    assert!(replay_script("apply green\n", None).unwrap_err().msg.contains("use"));
    assert!(replay_script("use D8\nassume upper p^3\n", None).unwrap_err().msg.contains("citation"));
    assert!(replay_script("use D8\napply frobnicate\n", None).unwrap_err().msg.contains("unknown rule"));
    assert!(replay_script("use D8\nuse Q8\n", None).is_err());
    assert!(replay_script("", None).is_err());
}

#[test]
fn prime_override() {
    let text = "use ES_p_p3 5\napply extraspecial\nexpect structure [p,p]\n";
    assert_eq!(replay_script(text, None).unwrap().prime, 5);
    assert_eq!(replay_script(text, Some(7)).unwrap().prime, 7);
}

#[test]
fn squeeze_from_assumptions() {
    let text = "use Q8\nassume upper p^0 \"trivial\"\nexpect exact 1\n";
    let out = replay_script(text, None).unwrap();
    assert_eq!(out.conclusion.exact, Some(0));
    assert_eq!(out.assumed, vec!["trivial".to_string()]);
}
