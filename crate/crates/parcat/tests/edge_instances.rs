//! The additive constructions on edge instances: a GF(3) fusion restriction
//! (every committed default runs over GF(2)) and a topology restriction whose
//! nontrivial domain unit is the empty open set.

use parcat::corpus;
use parcat::equivar::{
    algebra_object, partial_trace, validate_algebra_object, validate_env_equivariant,
    validate_env_sigma_tilde, validate_trace_functorial, EnvAction,
};
use parcat::group::{Gel, Perm};
use parcat::linalg::{find_env_iso, EnvObj, IsoSearch};
use parcat::paction::extract_unital_data;
use parcat::smash::{validate_canonical_functors, validate_smash_coherence, SmashContext};

fn env_for(inst: &corpus::Instance) -> EnvAction {
    let (ud, rep) = extract_unital_data(&inst.action, 1_000_000).unwrap();
    rep.expect_pass("unital data");
    EnvAction::new(&inst.action, &ud.unwrap(), inst.linear.clone().unwrap()).unwrap()
}

fn gf3_instance() -> corpus::Instance {
    corpus::gen_fusion_instance(3, &Perm::from_cycles(3, &[vec![1, 2, 3]]).unwrap(), 0b011, 3)
        .unwrap()
}

/// The restriction over GF(3) has the same domain shape as over GF(2) but
/// three-element scalar arithmetic throughout.
#[test]
fn gf3_restriction_validates_with_expected_units() {
    let inst = gf3_instance();
    inst.report.expect_pass("gf3 fusion instance");
    let t = &inst.action;
    // homs now have 3^dim elements: 4 objects, (1+1+1+3)^2 = 36 morphisms
    assert_eq!(t.cat().morphism_count(), 36);
    let (ud, _) = extract_unital_data(t, 1_000_000).unwrap();
    let ud = ud.unwrap();
    assert_eq!(t.cat().ob_name(ud.unit_ob(Gel(1))), "{2}");
    assert_eq!(t.cat().ob_name(ud.unit_ob(Gel(2))), "{1}");
}

#[test]
fn gf3_trace_and_algebra() {
    let inst = gf3_instance();
    let ctx = env_for(&inst);
    let c = ctx.t.cat();
    let m1 = c.obs().find(|&o| c.ob_name(o) == "{1}").unwrap();
    let tr = partial_trace(&ctx, m1, 1).unwrap();
    validate_env_sigma_tilde(&ctx, &tr.st).expect_pass("gf3 σ̃ square");
    validate_env_equivariant(&ctx, &tr.st, 1).expect_pass("gf3 equivariance");
    validate_trace_functorial(&ctx).expect_pass("gf3 functoriality");
    let e_ob = c.obs().find(|&o| c.ob_name(o) == "{1,2}").unwrap();
    assert!(matches!(
        find_env_iso(&ctx.env, &tr.carrier, &EnvObj::single(e_ob), 1_000_000),
        IsoSearch::Found(_)
    ));
    let a = algebra_object(&ctx).unwrap();
    validate_algebra_object(&ctx, &a).expect_pass("gf3 algebra laws");
    validate_env_sigma_tilde(&ctx, &a.st).expect_pass("gf3 σ̃^A square");
}

#[test]
fn gf3_smash_coherence() {
    let inst = gf3_instance();
    let sc = SmashContext::new(env_for(&inst), 1);
    let gens = sc.generators();
    assert_eq!(gens.len(), 11);
    validate_smash_coherence(&sc, &gens, false).expect_pass("gf3 smash coherence");
    validate_canonical_functors(&sc, 1_000_000).expect_pass("gf3 canonical functors");
}

/// Restricting the two-point swap to the open {1} leaves `C_g` generated by
/// the empty open: the degenerate-unit regime.
fn empty_unit_instance() -> corpus::Instance {
    corpus::gen_topology_instance(
        2,
        &corpus::discrete_opens(2),
        &Perm::from_cycles(2, &[vec![1, 2]]).unwrap(),
        0b01,
    )
    .unwrap()
}

#[test]
fn empty_unit_domains_are_unital() {
    let inst = empty_unit_instance();
    inst.report.expect_pass("empty-unit instance");
    let t = &inst.action;
    let g = Gel(1);
    let names: Vec<&str> = t
        .domain(g)
        .sub
        .obs()
        .iter()
        .map(|&o| t.cat().ob_name(o))
        .collect();
    assert_eq!(names, vec!["{}"], "C_g is the ideal on the empty open");
    let (ud, rep) = extract_unital_data(t, 1_000_000).unwrap();
    rep.expect_pass("extraction with a bottom-element unit");
    assert_eq!(t.cat().ob_name(ud.unwrap().unit_ob(g)), "{}");
}

#[test]
fn empty_unit_trace_algebra_and_smash() {
    let base = empty_unit_instance();
    let (action, lin) = corpus::linearize_action(&base.action, 2, 100_000).unwrap();
    let inst = corpus::Instance {
        name: format!("{} ⊗ GF(2)", base.name),
        action,
        linear: Some(lin),
        report: base.report,
    };
    let ctx = env_for(&inst);
    let c = ctx.t.cat();
    // Tr({1}) = T_e({1}) ⊕ T_g({1} ∩ ∅) = {1} ⊕ ∅
    let x1 = c.obs().find(|&o| c.ob_name(o) == "{1}").unwrap();
    let tr = partial_trace(&ctx, x1, 1).unwrap();
    let blocks: Vec<&str> = tr.carrier.0.iter().map(|&o| c.ob_name(o)).collect();
    assert_eq!(blocks, vec!["{1}", "{}"]);
    validate_env_sigma_tilde(&ctx, &tr.st).expect_pass("σ̃ square at the bottom unit");
    validate_env_equivariant(&ctx, &tr.st, 1).expect_pass("equivariance at the bottom unit");
    // A = E_{{e}} ⊕ E_{{e,g}} = {1} ⊕ ∅
    let a = algebra_object(&ctx).unwrap();
    let ablocks: Vec<&str> = a.carrier.0.iter().map(|&o| c.ob_name(o)).collect();
    assert_eq!(ablocks, vec!["{1}", "{}"]);
    validate_algebra_object(&ctx, &a).expect_pass("algebra at the bottom unit");
    validate_env_sigma_tilde(&ctx, &a.st).expect_pass("σ̃^A at the bottom unit");
    // smash: 5 generators, full sweep
    let sc = SmashContext::new(ctx, 1);
    let gens = sc.generators();
    assert_eq!(gens.len(), 5);
    validate_smash_coherence(&sc, &gens, false).expect_pass("smash at the bottom unit");
    validate_canonical_functors(&sc, 100_000).expect_pass("canonical functors at the bottom unit");
}
