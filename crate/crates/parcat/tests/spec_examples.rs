//! Worked examples on the built-in instances, frozen from independent
//! oracles: thin-category table lookups, support arithmetic, and brute-force
//! isomorphism searches computed in this file.

use std::collections::BTreeMap;

use parcat::corpus;
use parcat::equivar::{enumerate_equivariant, sigma_to_tilde, tilde_to_sigma, EnvAction};
use parcat::fincat::{check_commutes, Ob};
use parcat::globalize::{bullet_values, phi_values, shift_values};
use parcat::group::{Gel, Perm};
use parcat::monoidal::{image_ideal, Ideal, Side, Subcategory};
use parcat::paction::{
    extract_unital_data, pi_endofunctor, validate_paction_morphism, validate_partial_action,
    PActionMorphism, PartialAction, UnitalData,
};

fn by_name(t: &PartialAction, name: &str) -> Ob {
    t.cat().obs().find(|&o| t.cat().ob_name(o) == name).unwrap()
}

fn unital(t: &PartialAction) -> UnitalData {
    extract_unital_data(t, 1_000_000).unwrap().0.unwrap()
}

/// In the fusion skeleton, the zero endomorphism and the identity of M1 are
/// distinct parallel morphisms, so a diagram routing through zero fails.
#[test]
fn parallel_zero_and_identity_disagree_in_the_fusion_skeleton() {
    let inst = corpus::inst_fus();
    let t = &inst.action;
    let c = t.cat();
    let m1 = by_name(t, "{1}");
    let id = c.identity(m1);
    let zero = c.hom(m1, m1).into_iter().find(|&f| f != id).unwrap();
    let rep = check_commutes(c, &[vec![id], vec![zero]]).unwrap();
    assert!(!rep.passed(), "0 != id in End(M1) over GF(2)");
    // the identity matrix morphism is its own inverse
    assert_eq!(c.find_inverse(id), Some(id));
    assert_eq!(c.find_inverse(zero), None);
}

/// The ambient swap of supports carries the ideal on {1} to the ideal on {2}.
#[test]
fn image_ideal_swaps_supports() {
    let (glob, _) =
        corpus::gen_fusion_global(3, &Perm::from_cycles(3, &[vec![1, 2, 3]]).unwrap(), 2).unwrap();
    let c = glob.cat();
    let on = |mask_name: &str| -> Vec<Ob> {
        c.obs()
            .filter(|&o| {
                let n = c.ob_name(o);
                n == "{}" || n == mask_name
            })
            .collect()
    };
    let ideal = Ideal {
        sub: Subcategory::full_on(c, on("{1}")),
        side: Side::Both,
    };
    let g = Gel(1);
    let img = image_ideal(&glob.ambient, &glob.ambient, glob.actor(g), &ideal).unwrap();
    let names: Vec<&str> = img.sub.obs().iter().map(|&o| c.ob_name(o)).collect();
    assert_eq!(names, vec!["{}", "{2}"], "support {{1}} maps to support {{2}}");
}

/// π(g) on the instances: intersection and support arithmetic.
#[test]
fn pi_endofunctors_match_the_arithmetic_oracle() {
    let inst = corpus::inst_top();
    let t = &inst.action;
    let ud = unital(t);
    let g = Gel(1);
    let (pi_g, rep) = pi_endofunctor(t, &ud, g).unwrap();
    rep.expect_pass("pi(g) on inst-top");
    // π(g)(Y) = T_g(Y ∩ {3}): on {1} it is ∅, on {3} and {1,3} it is {3}
    assert_eq!(pi_g.ob[&by_name(t, "{1}")], by_name(t, "{}"));
    assert_eq!(pi_g.ob[&by_name(t, "{3}")], by_name(t, "{3}"));
    assert_eq!(pi_g.ob[&by_name(t, "{1,3}")], by_name(t, "{3}"));

    let fus = corpus::inst_fus();
    let tf = &fus.action;
    let udf = unital(tf);
    let (pi_g, rep) = pi_endofunctor(tf, &udf, Gel(1)).unwrap();
    rep.expect_pass("pi(g) on inst-fus");
    // π(g)(M1) = T_g(M1 ⊗ M1) = M2; π(g)(M2) = T_g(M2 ⊗ M1) = 0
    assert_eq!(pi_g.ob[&by_name(tf, "{1}")], by_name(tf, "{2}"));
    assert_eq!(pi_g.ob[&by_name(tf, "{2}")], by_name(tf, "{}"));
    // π(e) ≅ Id with the identity object map on these skeletal instances
    let (pi_e, rep) = pi_endofunctor(tf, &udf, tf.group.e).unwrap();
    rep.expect_pass("pi(e)");
    for x in tf.cat().obs() {
        assert_eq!(pi_e.ob[&x], x);
    }
}

/// The embedding values and shifts on INST-TOP, against intersection
/// arithmetic.
#[test]
fn phi_embedding_values_and_shifts() {
    let inst = corpus::inst_top();
    let t = &inst.action;
    let ud = unital(t);
    let g = Gel(1);
    let table = |v: &parcat::globalize::GFunctor| -> Vec<String> {
        v.0.iter().map(|&x| t.cat().ob_name(x).to_string()).collect()
    };
    let phi_1 = phi_values(t, &ud, by_name(t, "{1}")).unwrap();
    assert_eq!(table(&phi_1), vec!["{1}", "{}"]);
    let phi_13 = phi_values(t, &ud, by_name(t, "{1,3}")).unwrap();
    assert_eq!(table(&phi_13), vec!["{1,3}", "{3}"]);
    // 𝒯_g reindexes by right multiplication
    let shifted = shift_values(t, g, &phi_1);
    assert_eq!(table(&shifted), vec!["{}", "{1}"]);
    // 𝒯_g ∘ 𝒯_{g^{-1}} = Id on any value table
    assert_eq!(shift_values(t, g, &shift_values(t, g, &phi_13)), phi_13);
    // pointwise intersections
    assert_eq!(
        table(&bullet_values(t, &phi_1, &shifted)),
        vec!["{}", "{}"]
    );
    let sh13 = shift_values(t, g, &phi_13);
    assert_eq!(table(&bullet_values(t, &phi_13, &sh13)), vec!["{3}", "{3}"]);
    // F • 𝟙̲ = F in the strict monoidal ambient
    let unit_table = parcat::globalize::GFunctor(vec![
        t.ambient.unit.unwrap(),
        t.ambient.unit.unwrap(),
    ]);
    assert_eq!(bullet_values(t, &phi_13, &unit_table), phi_13);
}

/// A corrupted τ_e component breaks the unit triangle of an action morphism.
#[test]
fn corrupted_tau_breaks_the_triangle() {
    let inst = corpus::inst_fus();
    let t = &inst.action;
    let mut pm = PActionMorphism::identity(t);
    validate_paction_morphism(t, t, &pm).expect_pass("identity morphism");
    // corrupt the first τ_e component with a parallel alternative
    let c = t.cat();
    let (key, zero) = pm
        .tau
        .iter()
        .filter(|((g, _), _)| *g == t.group.e)
        .find_map(|(&key, &old)| {
            c.hom(c.dom(old), c.cod(old))
                .into_iter()
                .find(|&f| f != old)
                .map(|f| (key, f))
        })
        .expect("some τ_e slot has a parallel morphism");
    pm.tau.insert(key, zero);
    let rep = validate_paction_morphism(t, t, &pm);
    assert!(!rep.passed());
    assert!(
        rep.failures
            .iter()
            .any(|f| f.check.contains("tri-tau-u") || f.check.contains("tau")),
        "{:?}",
        rep.failures.first()
    );
}

/// σ̃ round trips on the fusion instance.
#[test]
fn sigma_tilde_round_trip_on_inst_fus() {
    let inst = corpus::inst_fus();
    let t = &inst.action;
    let ud = unital(t);
    for x in t.cat().obs() {
        for e in enumerate_equivariant(t, x, 1_000_000).unwrap() {
            let st = sigma_to_tilde(t, &ud, &e, 1).unwrap();
            let u_inv = t.cat().find_inverse(t.u_at(x).unwrap()).unwrap();
            assert_eq!(st.at(t.group.e, &[]).unwrap(), u_inv, "σ̃_e = u^{{-1}}");
            let back = tilde_to_sigma(t, &ud, &st).unwrap();
            assert_eq!(back, e);
        }
    }
}

/// A partial action whose domain has no top element is valid but not
/// generated by any central idempotent.
#[test]
fn non_unital_actions_are_detected_as_absent() {
    use parcat::group::FinGroup;
    use parcat::monoidal::SemigroupalFunctor;
    use std::sync::Arc;
    // ambient: opens {∅, {1}, {2}, {1,2}} under intersection
    let (mon, obs, _) = corpus::opens_category(&[0b00, 0b01, 0b10, 0b11]).unwrap();
    let group = FinGroup::cyclic(2);
    let ident = SemigroupalFunctor::identity(&mon);
    let tglob = PartialAction::strict_global(
        group.clone(),
        mon.clone(),
        vec![ident.clone(), ident.clone()],
    )
    .unwrap();
    // shrink C_g to {∅, {1}, {2}} by hand: an ideal with no generator
    let mut t = tglob;
    let domain_obs = vec![obs[&0b00], obs[&0b01], obs[&0b10]];
    let sub = Subcategory::full_on(&mon.base, domain_obs);
    t.domains[1] = Ideal {
        sub: sub.clone(),
        side: Side::Both,
    };
    let mut actor = SemigroupalFunctor::default();
    for &x in &sub.objects {
        actor.functor.ob.insert(x, x);
    }
    for &f in &sub.morphisms {
        actor.functor.mor.insert(f, f);
    }
    for &x in &sub.objects {
        for &y in &sub.objects {
            actor.j.insert((x, y), mon.base.identity(mon.ob(x, y)));
        }
    }
    t.actors[1] = actor;
    let mut gamma = BTreeMap::new();
    for g in group.elements() {
        for h in group.elements() {
            let gh = group.mul(g, h);
            for &x in &t.intersection_obs(&[group.inv(h), group.inv(gh)]) {
                gamma.insert((g, h, x), mon.base.identity(x));
            }
        }
    }
    t.gamma = gamma;
    validate_partial_action(&t).expect_pass("hand-built non-unital action");
    let (ud, rep) = extract_unital_data(&t, 1_000_000).unwrap();
    assert!(ud.is_none(), "no central idempotent generates {{∅,{{1}},{{2}}}}");
    assert!(rep
        .warnings
        .iter()
        .any(|w| w.contains("not generated")));
}

/// The trace summand injections split as the construction requires.
#[test]
fn trace_blocks_on_all_base_objects() {
    let inst = corpus::inst_fus();
    let ud = unital(&inst.action);
    let ctx = EnvAction::new(&inst.action, &ud, inst.linear.clone().unwrap()).unwrap();
    for x in inst.action.cat().obs() {
        assert!(parcat::equivar::trace::trace_summand_split(&ctx, x).unwrap());
    }
}

/// Every support object of the ambient fusion skeleton is a central
/// idempotent, and E = M1⊕M2 generates the ideal of supports inside {1,2}.
#[test]
fn fusion_ambient_idempotents_and_generated_ideals() {
    let (glob, _) =
        corpus::gen_fusion_global(3, &Perm::from_cycles(3, &[vec![1, 2, 3]]).unwrap(), 2).unwrap();
    let found =
        parcat::idempotent::enumerate_central_idempotents(&glob.ambient, 10_000_000).unwrap();
    assert_eq!(found.len(), 8, "every support is a central idempotent");
    let e12 = found
        .iter()
        .map(|(ci, _)| ci)
        .find(|ci| glob.cat().ob_name(ci.object) == "{1,2}")
        .unwrap();
    let ideal = parcat::idempotent::generated_ideal(&glob.ambient, e12).unwrap();
    let names: Vec<&str> = ideal.sub.obs().iter().map(|&o| glob.cat().ob_name(o)).collect();
    assert_eq!(names, vec!["{}", "{1}", "{2}", "{1,2}"]);
}

/// A covariant pair into the base category itself: on this instance the
/// actors fix their domains pointwise, so `φ = Id` and `π(g) = 𝟙_g` satisfy
/// the covariant axioms and induce `Ψ(X_g δ_g) ≅ X_g ⊗ 𝟙_g` — the action
/// of the smash product on its own base.
#[test]
fn covariant_pair_into_the_base_category() {
    use parcat::monoidal::SemigroupalFunctor;
    use parcat::smash::{assemble_view, covariant_psi, CovariantPair, SmashContext};
    use std::collections::BTreeMap;

    let inst = corpus::inst_top_linear();
    let t = &inst.action;
    let ud = unital(t);
    let env = EnvAction::new(t, &ud, inst.linear.clone().unwrap()).unwrap();
    let sc = SmashContext::new(env, 1);
    let view = assemble_view(&sc, 200_000).unwrap();

    let phi = SemigroupalFunctor::identity(&t.ambient);
    let mut pi = BTreeMap::new();
    for g in t.group.elements() {
        pi.insert(g, ud.unit_ob(g));
    }
    let cp = CovariantPair {
        target: t.ambient.clone(),
        phi,
        pi,
    };
    let (psi, rep) = covariant_psi(&sc, &view, &cp).unwrap();
    rep.expect_pass("Ψ into the base category");
    // Ψ maps 𝟙_g δ_g to an object isomorphic to 𝟙_g
    for g in t.group.elements() {
        let smash_ob = view
            .objects
            .iter()
            .position(|a| a.g == g && a.ob == parcat::linalg::EnvObj::single(ud.unit_ob(g)))
            .unwrap();
        let img = psi[&Ob(smash_ob as u32)];
        assert!(t.cat().find_iso(img, ud.unit_ob(g)).is_some());
    }
}

/// On the skeletal instances every piece of coherence data (γ, u, J, φ, the
/// unitors, the exchanges) is an identity, so the assembled composites must
/// be literal identities too. This is an independent route: a coherent but
/// wrong assembly (e.g. a mispaired block) would pass the pentagon yet fail
/// here.
#[test]
fn skeletal_composites_are_identities() {
    use parcat::smash::SmashContext;

    for inst in [corpus::inst_top_linear(), corpus::inst_fus()] {
        let t = inst.action.clone();
        let ud = unital(&t);
        let env = EnvAction::new(&t, &ud, inst.linear.clone().unwrap()).unwrap();

        // τ components of the globalization embedding
        let (glob, _) = parcat::globalize::build_globalization(&t, &ud, 1000).unwrap();
        for ((_, _), &m) in &glob.tau.tau {
            let gc = &glob.cat.base;
            assert!(gc.is_identity(m) || gc.dom(m) != gc.cod(m));
            if gc.dom(m) == gc.cod(m) {
                assert!(gc.is_identity(m), "τ component should be the identity");
            }
        }

        // the smash associator on single-summand generator triples
        let sc = SmashContext::new(env.clone(), 1);
        let gens = sc.generators();
        for a in &gens {
            for b in &gens {
                for c in &gens {
                    let assoc = sc.associator(a, b, c).unwrap();
                    assert_eq!(
                        assoc.dom, assoc.cod,
                        "skeletal smash carriers associate on the nose"
                    );
                    assert!(
                        env.env.is_identity(&assoc),
                        "{}: associator at skeletal triple is the identity",
                        inst.name
                    );
                }
            }
        }

        // trace σ̃ blocks land identically under the canonical pairing
        for x in t.cat().obs() {
            let tr = partial_trace(&env, x, 1).unwrap();
            for ((g, _), m) in &tr.st.table {
                let grp = env.group();
                for (col, _) in tr.carrier.0.iter().enumerate() {
                    let row = grp.mul(*g, parcat::group::Gel(col as u32)).0 as usize;
                    let block = m.at(row, col);
                    let c = t.cat();
                    assert_eq!(c.dom(block), c.cod(block));
                    assert!(c.is_identity(block), "σ̃ block is the identity");
                }
            }
        }
    }
}
