//! The partial trace `Tr(X) = ⊕_g T_g(X ⊗ 𝟙_{g^{-1}})` as a canonical
//! partially equivariant object of the envelope, with its σ̃ family built
//! blockwise and machine-checked.

use std::collections::BTreeMap;

use crate::fincat::{Mor, Ob};
use crate::group::Gel;
use crate::linalg::{EnvMor, EnvObj};
use crate::report::{CatError, DiagramReport, Result};

use super::envaction::EnvAction;

/// A σ̃ family on an envelope carrier.
#[derive(Debug, Clone)]
pub struct EnvSigmaTilde {
    pub carrier: EnvObj,
    pub table: BTreeMap<(Gel, Vec<Gel>), EnvMor>,
}

impl EnvSigmaTilde {
    pub fn at(&self, g: Gel, extras: &[Gel]) -> Result<&EnvMor> {
        self.table
            .get(&(g, extras.to_vec()))
            .ok_or_else(|| CatError::ComponentShape(format!("missing σ̃ at ({g},{extras:?})")))
    }
}

/// The trace of a base object, with its σ̃ family.
#[derive(Debug, Clone)]
pub struct TraceObject {
    pub of: Ob,
    pub carrier: EnvObj,
    pub st: EnvSigmaTilde,
}

/// `Tr(X)` as an envelope object: summand `g` is `T_g(X ⊗ 𝟙_{g^{-1}})`.
pub fn trace_carrier(ctx: &EnvAction, x: Ob) -> Result<EnvObj> {
    let m = &*ctx.t.ambient;
    let mut v = Vec::new();
    for g in ctx.group().elements() {
        let gi = ctx.group().inv(g);
        v.push(ctx.t.t_ob(g, m.ob(x, ctx.ud.unit_ob(gi)))?);
    }
    Ok(EnvObj(v))
}

/// `Tr(f) = ⊕_g T_g(f ⊗ 𝟙_{g^{-1}})`.
pub fn trace_mor(ctx: &EnvAction, f: Mor) -> Result<EnvMor> {
    let m = &*ctx.t.ambient;
    let c = ctx.t.cat();
    let dom = trace_carrier(ctx, c.dom(f))?;
    let cod = trace_carrier(ctx, c.cod(f))?;
    ctx.diag(&dom, &cod, |i| {
        let g = Gel(i as u32);
        let gi = ctx.group().inv(g);
        ctx.t.t_mor(g, m.mor_id(f, ctx.ud.unit_ob(gi)))
    })
}

/// One block of `σ̃^{Tr X}`: the composite
/// `T_g(T_h(X⊗𝟙_{h^{-1}}) ⊗ 𝟙_{g^{-1}} ⊗ units) -> T_{gh}(X⊗𝟙_{(gh)^{-1}}) ⊗ 𝟙_g ⊗ units'`
/// through the unit comparisons, `J`, and `γ`.
fn trace_sigma_block(
    ctx: &EnvAction,
    x: Ob,
    g: Gel,
    h: Gel,
    extras: &[Gel],
) -> Result<Mor> {
    let t = &ctx.t;
    let ud = &ctx.ud;
    let c = t.cat();
    let m = &*t.ambient;
    let grp = ctx.group();
    let (gi, hi) = (grp.inv(g), grp.inv(h));
    let gh = grp.mul(g, h);
    let ghi = grp.inv(gh);
    let b_h = t.t_ob(h, m.ob(x, ud.unit_ob(hi)))?;
    let unit_word: Vec<Ob> = extras.iter().map(|&w| ud.unit_ob(w)).collect();
    // step 1: insert 𝟙_h after the block
    let r_inv = c
        .find_inverse(ud.unitors(h).right_at(b_h)?)
        .ok_or_else(|| CatError::NotIsomorphism("right unitor".into()))?;
    let mut word1 = vec![r_inv, c.identity(ud.unit_ob(gi))];
    word1.extend(unit_word.iter().map(|&u| c.identity(u)));
    let s1 = m.mor_word(&word1);
    // step 2: φ^h over the word (h, g^{-1}, extras)
    let mut phiword = vec![h, gi];
    phiword.extend(extras);
    let phi_h = ud.phi_word(h, &phiword, 0)?;
    let s2 = m.mor(c.identity(b_h), phi_h);
    // step 3: J^h combining the two T_h factors
    let mut uword = vec![hi, ghi];
    uword.extend(extras.iter().map(|&w| grp.mul(hi, w)));
    let u_ob = m.ob_word(&uword.iter().map(|&w| ud.unit_ob(w)).collect::<Vec<_>>());
    let s3 = t.j_at(h, m.ob(x, ud.unit_ob(hi)), u_ob)?;
    let inner = c.compose_path(&[s1, s2, s3])?;
    // step 4: γ_{g,h} at the combined argument
    let mut w1 = vec![hi];
    w1.extend(&uword);
    let arg1 = m.ob(x, m.ob_word(&w1.iter().map(|&w| ud.unit_ob(w)).collect::<Vec<_>>()));
    let s4 = t.gamma_at(g, h, arg1)?;
    // step 5: rearrange the unit suffix to ((gh)^{-1}; h^{-1}, (gh)^{-1}, extras')
    let mut w2 = vec![ghi, hi, ghi];
    w2.extend(uword[2..].iter().copied());
    let s5 = m.mor(c.identity(x), ctx.unit_word_iso(&w1, &w2)?);
    // step 6: (J^{gh})^{-1} splitting off the trace block
    let u2_word: Vec<Gel> = w2[1..].to_vec();
    let u2_ob = m.ob_word(&u2_word.iter().map(|&w| ud.unit_ob(w)).collect::<Vec<_>>());
    let j2 = t.j_at(gh, m.ob(x, ud.unit_ob(ghi)), u2_ob)?;
    let s6 = c
        .find_inverse(j2)
        .ok_or_else(|| CatError::NotIsomorphism("J^{gh}".into()))?;
    // step 7: (φ^{gh})^{-1} over the ambient word (g, gh, g·extras)
    let b_gh = t.t_ob(gh, m.ob(x, ud.unit_ob(ghi)))?;
    let mut phiword2 = vec![g, gh];
    phiword2.extend(extras.iter().map(|&w| grp.mul(g, w)));
    let phi2 = ud.phi_word(gh, &phiword2, 1)?;
    let phi2_inv = c
        .find_inverse(phi2)
        .ok_or_else(|| CatError::NotIsomorphism("φ^{gh}".into()))?;
    let s7 = m.mor(c.identity(b_gh), phi2_inv);
    // step 8: reorder (g, gh, g·extras) to (gh, g, g·extras) and absorb 𝟙_{gh}
    let mut from = vec![g, gh];
    from.extend(extras.iter().map(|&w| grp.mul(g, w)));
    let mut to = vec![gh, g];
    to.extend(extras.iter().map(|&w| grp.mul(g, w)));
    let s8a = m.mor(c.identity(b_gh), ctx.unit_word_iso(&from, &to)?);
    let mut absorb = vec![ud.unitors(gh).right_at(b_gh)?, c.identity(ud.unit_ob(g))];
    absorb.extend(extras.iter().map(|&w| c.identity(ud.unit_ob(grp.mul(g, w)))));
    let s8b = m.mor_word(&absorb);
    c.compose_path(&[
        t.t_mor(g, inner)?,
        s4,
        t.t_mor(gh, s5)?,
        s6,
        s7,
        s8a,
        s8b,
    ])
}

/// Build `Tr(X)` with σ̃ for extras words up to length `max_extras`.
pub fn partial_trace(ctx: &EnvAction, x: Ob, max_extras: usize) -> Result<TraceObject> {
    let grp = ctx.group();
    let carrier = trace_carrier(ctx, x)?;
    let mut table = BTreeMap::new();
    let mut words: Vec<Vec<Gel>> = vec![Vec::new()];
    for len in 1..=max_extras {
        let mut next = Vec::new();
        for w in &words {
            if w.len() == len - 1 {
                for g in grp.elements() {
                    let mut w2 = w.clone();
                    w2.push(g);
                    next.push(w2);
                }
            }
        }
        words.extend(next);
    }
    for g in grp.elements() {
        for extras in &words {
            let m = &*ctx.t.ambient;
            let gi = grp.inv(g);
            let mut dword = vec![ctx.ud.unit_ob(gi)];
            dword.extend(extras.iter().map(|&w| ctx.ud.unit_ob(w)));
            let dom_inner = EnvObj(
                carrier
                    .0
                    .iter()
                    .map(|&b| m.ob(b, m.ob_word(&dword)))
                    .collect(),
            );
            let dom = ctx.t_ob(g, &dom_inner)?;
            let mut cword = vec![ctx.ud.unit_ob(g)];
            cword.extend(extras.iter().map(|&w| ctx.ud.unit_ob(grp.mul(g, w))));
            let cod = EnvObj(
                carrier
                    .0
                    .iter()
                    .map(|&b| m.ob(b, m.ob_word(&cword)))
                    .collect(),
            );
            // block h -> row gh
            let n = grp.order();
            let mut entries = Vec::with_capacity(n * n);
            for row in 0..n {
                for col in 0..n {
                    let h = Gel(col as u32);
                    let gh = grp.mul(g, h);
                    if Gel(row as u32) == gh {
                        entries.push(trace_sigma_block(ctx, x, g, h, extras)?);
                    } else {
                        entries.push(ctx.env.lin.zero_at(dom.0[col], cod.0[row]));
                    }
                }
            }
            let mor = ctx.env.mor(dom, cod, entries)?;
            if ctx.env.inverse(&mor).is_none() {
                return Err(CatError::NotIsomorphism(format!(
                    "σ̃^TrX at ({}, {extras:?})",
                    grp.name(g)
                )));
            }
            table.insert((g, extras.clone()), mor);
        }
    }
    Ok(TraceObject {
        of: x,
        carrier: carrier.clone(),
        st: EnvSigmaTilde { carrier, table },
    })
}

/// The σ̃ coherence square at the envelope level, with the word-order
/// alignment through the unit exchange.
pub fn validate_env_sigma_tilde(ctx: &EnvAction, st: &EnvSigmaTilde) -> DiagramReport {
    let mut rep = DiagramReport::new();
    let grp = ctx.group();
    let m = &*ctx.t.ambient;
    for g in grp.elements() {
        for h in grp.elements() {
            let gh = grp.mul(g, h);
            let ok = (|| -> Result<bool> {
                let (gi, hi, ghi) = (grp.inv(g), grp.inv(h), grp.inv(gh));
                // start: T_g T_h (Tr ⊗ 𝟙_{h^{-1}} ⊗ 𝟙_{(gh)^{-1}});
                // end: Tr ⊗ 𝟙_g ⊗ 𝟙_{gh}; word reorders explicit on both paths
                let arg = EnvObj(
                    st.carrier
                        .0
                        .iter()
                        .map(|&b| m.ob_word(&[b, ctx.ud.unit_ob(hi), ctx.ud.unit_ob(ghi)]))
                        .collect(),
                );
                let q1 = ctx.gamma(g, h, &arg)?;
                let q2 = ctx.t_mor(gh, &ctx.suffix_word_iso(&st.carrier, &[hi, ghi], &[ghi, hi])?)?;
                let q3 = st.at(gh, &[hi])?;
                let q4 = ctx.suffix_word_iso(&st.carrier, &[gh, g], &[g, gh])?;
                let p1 = ctx.env.compose_path(&[&q1, &q2, q3, &q4])?;
                let inner = st.at(h, &[ghi])?;
                let reorder = ctx.suffix_word_iso(&st.carrier, &[h, gi], &[gi, h])?;
                let p2 = ctx.env.compose_path(&[
                    &ctx.t_mor(g, inner)?,
                    &ctx.t_mor(g, &reorder)?,
                    st.at(g, &[h])?,
                ])?;
                Ok(p1 == p2)
            })();
            if !matches!(ok, Ok(true)) {
                rep.fail(
                    "tildesigma-square-envelope",
                    format!("(g,h) = ({}, {})", grp.name(g), grp.name(h)),
                );
            }
        }
    }
    rep.finish()
}

/// Reconstruct a σ component from σ̃ at the envelope level.
pub fn env_sigma_component(
    ctx: &EnvAction,
    st: &EnvSigmaTilde,
    g: Gel,
    y: &EnvObj,
) -> Result<EnvMor> {
    let grp = ctx.group();
    let gi = grp.inv(g);
    let x = &st.carrier;
    let tgy = ctx.t_ob(g, y)?;
    let l_inv = ctx.lunitor_inv(gi, y)?;
    let xe = ctx.env.tensor_ob(x, &ctx.unit_env(gi));
    let j_inv = ctx.j_inv(g, &xe, y)?;
    let tilde = st.at(g, &[])?;
    ctx.env.compose_path(&[
        &ctx.t_mor(g, &ctx.env.tensor_id_mor(x, &l_inv))?,
        &j_inv,
        &ctx.env.tensor_mor_id(tilde, &tgy),
        &ctx.env.tensor_id_mor(x, &ctx.lunitor(g, &tgy)?),
    ])
}

/// Pentagon, triangle, and naturality of the reconstructed σ, over sample
/// envelope objects in the appropriate domains.
pub fn validate_env_equivariant(
    ctx: &EnvAction,
    st: &EnvSigmaTilde,
    sample_len: usize,
) -> DiagramReport {
    let mut rep = DiagramReport::new();
    let grp = ctx.group();
    let x = &st.carrier;
    let samples = |g: Gel| -> Vec<EnvObj> {
        let obs = ctx.t.domain(g).sub.obs();
        let mut out: Vec<EnvObj> = vec![EnvObj::zero()];
        out.extend(obs.iter().map(|&o| EnvObj::single(o)));
        if sample_len >= 2 {
            for &a in &obs {
                for &b in &obs {
                    out.push(EnvObj(vec![a, b]));
                }
            }
        }
        out
    };
    for g in grp.elements() {
        for h in grp.elements() {
            let gh = grp.mul(g, h);
            let (hi, ghi) = (grp.inv(h), grp.inv(gh));
            for y in samples(hi) {
                if !ctx.in_domain(ghi, &y) {
                    continue;
                }
                let ok = (|| -> Result<bool> {
                    let xy = ctx.env.tensor_ob(x, &y);
                    let lhs = ctx.env.compose(
                        &env_sigma_component(ctx, st, gh, &y)?,
                        &ctx.gamma(g, h, &xy)?,
                    )?;
                    let thy = ctx.t_ob(h, &y)?;
                    let rhs = ctx.env.compose_path(&[
                        &ctx.t_mor(g, &env_sigma_component(ctx, st, h, &y)?)?,
                        &env_sigma_component(ctx, st, g, &thy)?,
                        &ctx.env.tensor_id_mor(x, &ctx.gamma(g, h, &y)?),
                    ])?;
                    Ok(lhs == rhs)
                })();
                if !matches!(ok, Ok(true)) {
                    rep.fail(
                        "pent-sigma-envelope",
                        format!("(g,h,Y) = ({}, {}, {y})", grp.name(g), grp.name(h)),
                    );
                }
            }
        }
    }
    for y in samples(grp.e) {
        let ok = (|| -> Result<bool> {
            let xy = ctx.env.tensor_ob(x, &y);
            let lhs = ctx
                .env
                .compose(&env_sigma_component(ctx, st, grp.e, &y)?, &ctx.u(&xy)?)?;
            let rhs = ctx.env.tensor_id_mor(x, &ctx.u(&y)?);
            Ok(lhs == rhs)
        })();
        if !matches!(ok, Ok(true)) {
            rep.fail("triangle-sigma-envelope", format!("at Y = {y}"));
        }
    }
    // naturality over single-summand basis morphisms
    for g in grp.elements() {
        let gi = grp.inv(g);
        for &f in &ctx.t.domain(gi).sub.mors() {
            let ok = (|| -> Result<bool> {
                let ef = ctx.env.from_base(f);
                let lhs = ctx.env.compose(
                    &env_sigma_component(ctx, st, g, &ef.cod.clone())?,
                    &ctx.t_mor(g, &ctx.env.tensor_id_mor(x, &ef))?,
                )?;
                let rhs = ctx.env.compose(
                    &ctx.env.tensor_id_mor(x, &ctx.t_mor(g, &ef)?),
                    &env_sigma_component(ctx, st, g, &ef.dom.clone())?,
                )?;
                Ok(lhs == rhs)
            })();
            if !matches!(ok, Ok(true)) {
                rep.fail(
                    "sigma-naturality-envelope",
                    format!("g = {} at basis morphism {f}", grp.name(g)),
                );
            }
        }
    }
    rep.finish()
}

/// `X` is isomorphic to a direct summand of `Tr(X)`: the `e`-summand splits
/// off through `u` and the right unitor.
pub fn trace_summand_split(ctx: &EnvAction, x: Ob) -> Result<bool> {
    let grp = ctx.group();
    let carrier = trace_carrier(ctx, x)?;
    let slot = grp.e.0 as usize;
    let c = ctx.t.cat();
    let m = &*ctx.t.ambient;
    // X ≅ T_e(X ⊗ 𝟙) = carrier[e]
    let w = c.comp(
        ctx.t.u_at(m.ob(x, ctx.ud.unit_ob(grp.e)))?,
        c.find_inverse(ctx.ud.unitors(grp.e).right_at(x)?)
            .ok_or_else(|| CatError::NotIsomorphism("right unitor".into()))?,
    )?;
    let w_inv = c
        .find_inverse(w)
        .ok_or_else(|| CatError::NotIsomorphism("summand witness".into()))?;
    let into = ctx.env.compose(
        &ctx.env.injection(&carrier, slot),
        &ctx.env.from_base(w),
    )?;
    let back = ctx.env.compose(
        &ctx.env.from_base(w_inv),
        &ctx.env.projection(&carrier, slot),
    )?;
    let round = ctx.env.compose(&back, &into)?;
    Ok(ctx.env.is_identity(&round))
}

/// Functoriality of the trace: `Tr(id) = id` and `Tr(g∘f) = Tr(g)∘Tr(f)`
/// over all composable pairs of base morphisms.
pub fn validate_trace_functorial(ctx: &EnvAction) -> DiagramReport {
    let mut rep = DiagramReport::new();
    let c = ctx.t.cat();
    for x in c.obs() {
        let ok = (|| -> Result<bool> {
            let id_tr = ctx.env.id(&trace_carrier(ctx, x)?);
            Ok(trace_mor(ctx, c.identity(x))? == id_tr)
        })();
        if !matches!(ok, Ok(true)) {
            rep.fail("trace-id", format!("at {}", c.ob_name(x)));
        }
    }
    for f in c.mors() {
        for g in c.mors() {
            let Some(gf) = c.compose(g, f) else { continue };
            let ok = (|| -> Result<bool> {
                let lhs = trace_mor(ctx, gf)?;
                let rhs = ctx.env.compose(&trace_mor(ctx, g)?, &trace_mor(ctx, f)?)?;
                Ok(lhs == rhs)
            })();
            if !matches!(ok, Ok(true)) {
                rep.fail("trace-compose", format!("at ({g}, {f})"));
            }
        }
    }
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::linalg::{find_env_iso, IsoSearch};
    use crate::paction::extract_unital_data;

    fn ctx_for(inst: &corpus::Instance) -> EnvAction {
        let t = &inst.action;
        let (ud, rep) = extract_unital_data(t, 1_000_000).unwrap();
        rep.expect_pass("unital data");
        EnvAction::new(t, &ud.unwrap(), inst.linear.clone().unwrap()).unwrap()
    }

    #[test]
    fn trace_on_inst_fus_matches_support_arithmetic() {
        let inst = corpus::inst_fus();
        let ctx = ctx_for(&inst);
        let c = ctx.t.cat();
        let name = |o: crate::fincat::Ob| c.ob_name(o).to_string();
        // oracle: Tr(M1) blocks are T_e(M1⊗E)=M1, T_g(M1⊗M1)=M2, T_g2(M1⊗M2)=0
        let m1 = c.obs().find(|&o| c.ob_name(o) == "{1}").unwrap();
        let tr = partial_trace(&ctx, m1, 1).unwrap();
        let blocks: Vec<String> = tr.carrier.0.iter().map(|&o| name(o)).collect();
        assert_eq!(blocks, vec!["{1}", "{2}", "{}"]);
        // Tr(M1) ≅ E
        let e_ob = c.obs().find(|&o| c.ob_name(o) == "{1,2}").unwrap();
        let found = find_env_iso(&ctx.env, &tr.carrier, &EnvObj::single(e_ob), 100_000);
        assert!(matches!(found, IsoSearch::Found(_)), "Tr(M1) ≅ E");
        validate_env_sigma_tilde(&ctx, &tr.st).expect_pass("σ̃^TrX square");
        validate_env_equivariant(&ctx, &tr.st, 2).expect_pass("Tr(M1) equivariant");
    }

    #[test]
    fn trace_of_unit_is_not_the_unit() {
        let inst = corpus::inst_fus();
        let ctx = ctx_for(&inst);
        let c = ctx.t.cat();
        let unit = ctx.t.ambient.unit.unwrap();
        let tr = partial_trace(&ctx, unit, 1).unwrap();
        let blocks: Vec<&str> = tr.carrier.0.iter().map(|&o| c.ob_name(o)).collect();
        assert_eq!(blocks, vec!["{1,2}", "{2}", "{1}"], "Tr(𝟙) = ⊕_g 𝟙_g");
        let not_unit = find_env_iso(&ctx.env, &tr.carrier, &EnvObj::single(unit), 100_000);
        assert!(
            not_unit.is_none_certified(),
            "Tr(𝟙) ≇ 𝟙 certifies non-monoidality, got {not_unit:?}"
        );
    }

    #[test]
    fn trace_functorial_and_summand_on_inst_top() {
        let inst = corpus::inst_top_linear();
        let ctx = ctx_for(&inst);
        validate_trace_functorial(&ctx).expect_pass("trace functoriality");
        for x in ctx.t.cat().obs() {
            assert!(trace_summand_split(&ctx, x).unwrap());
            let tr = partial_trace(&ctx, x, 1).unwrap();
            validate_env_sigma_tilde(&ctx, &tr.st).expect_pass("σ̃ square");
            validate_env_equivariant(&ctx, &tr.st, 1).expect_pass("equivariance");
        }
    }

    #[test]
    fn trivial_group_trace_is_the_identity() {
        let mut inst = corpus::trivial_instance();
        let (action, lin) = corpus::linearize_action(&inst.action, 2, 10_000).unwrap();
        inst.action = action;
        inst.linear = Some(lin);
        let ctx = ctx_for(&inst);
        let x = crate::fincat::Ob(0);
        let tr = partial_trace(&ctx, x, 1).unwrap();
        assert_eq!(tr.carrier.len(), 1);
        let found = find_env_iso(&ctx.env, &tr.carrier, &EnvObj::single(x), 1000);
        assert!(matches!(found, IsoSearch::Found(_)));
    }
}
