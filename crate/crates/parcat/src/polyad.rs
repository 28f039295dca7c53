//! The monads `P_g = T_g T_{g^{-1}}` on the domains of a partial action,
//! their comonoidal structure and fusion operators, and the polyad over the
//! discrete source category on the group.
//!
//! The source category has only identity morphisms, so the general
//! composable-pair machinery of a polyad degenerates: axioms (1) and (2)
//! reduce to the monad laws of each `P_g`. The data is still stored in full.

use std::collections::BTreeMap;

use crate::fincat::{Functor, Mor, Ob};
use crate::group::Gel;
use crate::paction::{PartialAction, UnitalData};
use crate::report::{CatError, DiagramReport, Result};

/// A monad on the objects of one domain ideal.
#[derive(Debug, Clone)]
pub struct Monad {
    pub g: Gel,
    pub carrier: Functor,
    /// `(μ_g)_X : P_g P_g(X) -> P_g(X)`.
    pub mu: BTreeMap<Ob, Mor>,
    /// `(η_g)_X : X -> P_g(X)`.
    pub eta: BTreeMap<Ob, Mor>,
}

/// `P_g = T_g ∘ T_{g^{-1}}` with
/// `(μ_g)_X = T_g((γ_{e,g^{-1}})_X) ∘ T_g((γ_{g^{-1},g})_{T_{g^{-1}}(X)})` and
/// `(η_g)_X = (γ_{g,g^{-1}})^{-1}_X ∘ u_X`.
pub fn build_monad(t: &PartialAction, g: Gel) -> Result<Monad> {
    let c = t.cat();
    let grp = &t.group;
    let gi = grp.inv(g);
    let dom = &t.domain(g).sub;
    let mut carrier = Functor::default();
    for &x in &dom.objects {
        carrier.ob.insert(x, t.t_ob(g, t.t_ob(gi, x)?)?);
    }
    for &f in &dom.morphisms {
        carrier.mor.insert(f, t.t_mor(g, t.t_mor(gi, f)?)?);
    }
    let mut mu = BTreeMap::new();
    let mut eta = BTreeMap::new();
    for &x in &dom.objects {
        let t_gi_x = t.t_ob(gi, x)?;
        let inner = t.gamma_at(gi, g, t_gi_x)?; // T_{g^-1} T_g T_{g^-1} X -> T_e T_{g^-1} X
        let outer = t.gamma_at(grp.e, gi, x)?; // T_e T_{g^-1} X -> T_{g^-1} X
        let m = c.comp(t.t_mor(g, outer)?, t.t_mor(g, inner)?)?;
        mu.insert(x, m);
        let gxi = t.gamma_at(g, gi, x)?; // T_g T_{g^-1} X -> T_e X
        let gxi_inv = c
            .find_inverse(gxi)
            .ok_or_else(|| CatError::NotIsomorphism("γ_{g,g^{-1}}".into()))?;
        eta.insert(x, c.comp(gxi_inv, t.u_at(x)?)?);
    }
    Ok(Monad {
        g,
        carrier,
        mu,
        eta,
    })
}

/// Monad laws: associativity and both unit triangles, over every object of
/// the monad's category.
pub fn validate_monad(t: &PartialAction, m: &Monad) -> DiagramReport {
    let c = t.cat();
    let mut rep = DiagramReport::new();
    let objects: Vec<Ob> = m.carrier.ob.keys().copied().collect();
    for &x in &objects {
        let ok = (|| -> Result<bool> {
            let px = m.carrier.on_ob(x)?;
            let ppx = m.carrier.on_ob(px)?;
            let mu_x = *m.mu.get(&x).ok_or_else(|| {
                CatError::ComponentShape(format!("μ missing at {x}"))
            })?;
            if c.dom(mu_x) != ppx || c.cod(mu_x) != px {
                return Err(CatError::ComponentShape(format!(
                    "μ at {} is {}",
                    c.ob_name(x),
                    c.witness(mu_x)
                )));
            }
            // associativity: μ_X ∘ P(μ_X) = μ_X ∘ μ_{P X}
            let lhs = c.comp(mu_x, m.carrier.on_mor(mu_x)?)?;
            let rhs = c.comp(mu_x, m.mu[&px])?;
            Ok(lhs == rhs)
        })();
        if !matches!(ok, Ok(true)) {
            rep.fail("monad-associativity", format!("at {}", c.ob_name(x)));
        }
        let ok = (|| -> Result<bool> {
            let px = m.carrier.on_ob(x)?;
            let mu_x = m.mu[&x];
            let eta_x = m.eta[&x];
            if c.dom(eta_x) != x || c.cod(eta_x) != px {
                return Err(CatError::ComponentShape("η shape".into()));
            }
            let left = c.comp(mu_x, m.carrier.on_mor(eta_x)?)? == c.identity(px);
            let right = c.comp(mu_x, m.eta[&px])? == c.identity(px);
            Ok(left && right)
        })();
        if !matches!(ok, Ok(true)) {
            rep.fail("monad-unit", format!("at {}", c.ob_name(x)));
        }
    }
    rep.finish()
}

/// The comonoidal structure and fusion operators of one monad, with
/// constructed two-sided inverses.
#[derive(Debug, Clone)]
pub struct FusionOperators {
    pub g: Gel,
    /// `(ξ_g)_{X,Y} : P_g(X ⊗ Y) -> P_g(X) ⊗ P_g(Y)`.
    pub comonoidal: BTreeMap<(Ob, Ob), Mor>,
    /// `H^l_g(X,Y)` with its inverse.
    pub hl: BTreeMap<(Ob, Ob), (Mor, Mor)>,
    /// `H^r_g(Y,X)` with its inverse.
    pub hr: BTreeMap<(Ob, Ob), (Mor, Mor)>,
}

/// `(ξ_g)_{X,Y} = (J^g)^{-1}_{T_{g^{-1}}X, T_{g^{-1}}Y} ∘ T_g((J^{g^{-1}})^{-1}_{X,Y})`.
fn xi(t: &PartialAction, g: Gel, x: Ob, y: Ob) -> Result<Mor> {
    let c = t.cat();
    let gi = t.group.inv(g);
    let jx = t.j_at(gi, x, y)?;
    let jx_inv = c
        .find_inverse(jx)
        .ok_or_else(|| CatError::NotIsomorphism("J^{g^{-1}}".into()))?;
    let (tx, ty) = (t.t_ob(gi, x)?, t.t_ob(gi, y)?);
    let jg = t.j_at(g, tx, ty)?;
    let jg_inv = c
        .find_inverse(jg)
        .ok_or_else(|| CatError::NotIsomorphism("J^g".into()))?;
    c.comp(jg_inv, t.t_mor(g, jx_inv)?)
}

/// Build `ξ_g`, `H^l`, `H^r` on all object pairs of `C_g`, prove every fusion
/// operator invertible (two-sided, stored), check the comonoidal hexagon for
/// `ξ`, comonoidality of `μ` and `η`, and the unit axioms when unital data is
/// supplied.
pub fn fusion_operators(
    t: &PartialAction,
    g: Gel,
    monad: &Monad,
    ud: Option<&UnitalData>,
) -> Result<(FusionOperators, DiagramReport)> {
    let c = t.cat();
    let m = &*t.ambient;
    let mut rep = DiagramReport::new();
    let objects: Vec<Ob> = t.domain(g).sub.obs();
    let p_ob = |x: Ob| monad.carrier.on_ob(x);
    let mut comonoidal = BTreeMap::new();
    for &x in &objects {
        for &y in &objects {
            comonoidal.insert((x, y), xi(t, g, x, y)?);
        }
    }
    // comonoidal hexagon (strict): (ξ⊗P Z) ∘ ξ_{X⊗Y,Z} = (P X⊗ξ) ∘ ξ_{X,Y⊗Z}
    for &x in &objects {
        for &y in &objects {
            for &z in &objects {
                let ok = (|| -> Result<bool> {
                    let lhs = c.comp(
                        m.mor_id(comonoidal[&(x, y)], p_ob(z)?),
                        comonoidal[&(m.ob(x, y), z)],
                    )?;
                    let rhs = c.comp(
                        m.id_mor(p_ob(x)?, comonoidal[&(y, z)]),
                        comonoidal[&(x, m.ob(y, z))],
                    )?;
                    Ok(lhs == rhs)
                })();
                if !matches!(ok, Ok(true)) {
                    rep.fail(
                        "xi-hexagon",
                        format!("at ({}, {}, {})", c.ob_name(x), c.ob_name(y), c.ob_name(z)),
                    );
                }
            }
        }
    }
    // comonoidality of μ: ξ ∘ μ_{X⊗Y} = (μ_X ⊗ μ_Y) ∘ ξ_{P X,P Y} ∘ P(ξ_{X,Y})
    for &x in &objects {
        for &y in &objects {
            let ok = (|| -> Result<bool> {
                let lhs = c.comp(comonoidal[&(x, y)], monad.mu[&m.ob(x, y)])?;
                let rhs = c.compose_path(&[
                    monad.carrier.on_mor(comonoidal[&(x, y)])?,
                    comonoidal[&(p_ob(x)?, p_ob(y)?)],
                    m.mor(monad.mu[&x], monad.mu[&y]),
                ])?;
                Ok(lhs == rhs)
            })();
            if !matches!(ok, Ok(true)) {
                rep.fail(
                    "mu-comonoidal",
                    format!("at ({}, {})", c.ob_name(x), c.ob_name(y)),
                );
            }
            // η: ξ_{X,Y} ∘ η_{X⊗Y} = η_X ⊗ η_Y
            let ok = (|| -> Result<bool> {
                let lhs = c.comp(comonoidal[&(x, y)], monad.eta[&m.ob(x, y)])?;
                Ok(lhs == m.mor(monad.eta[&x], monad.eta[&y]))
            })();
            if !matches!(ok, Ok(true)) {
                rep.fail(
                    "eta-comonoidal",
                    format!("at ({}, {})", c.ob_name(x), c.ob_name(y)),
                );
            }
        }
    }
    // unit axioms of the comonoidal functor, against the ideal unit 𝟙_g
    if let Some(ud) = ud {
        let e_g = ud.unit_ob(g);
        let gi = t.group.inv(g);
        let ok = (|| -> Result<Mor> {
            // ξ0 : P_g(𝟙_g) -> 𝟙_g
            let phi_g = ud.phi_simple(g)?;
            let phi_gi = ud.phi_simple(gi)?;
            let phi_gi_inv = c
                .find_inverse(phi_gi)
                .ok_or_else(|| CatError::NotIsomorphism("φ^{g^{-1}}".into()))?;
            let phi_g_inv = c
                .find_inverse(phi_g)
                .ok_or_else(|| CatError::NotIsomorphism("φ^g".into()))?;
            c.comp(phi_g_inv, t.t_mor(g, phi_gi_inv)?)
        })();
        match ok {
            Err(e) => rep.fail("xi0", format!("{e}")),
            Ok(xi0) => {
                for &x in &objects {
                    let ok = (|| -> Result<bool> {
                        let px = p_ob(x)?;
                        let l_px = ud.unitors(g).left_at(px)?;
                        let l_x = ud.unitors(g).left_at(x)?;
                        let lhs = c.compose_path(&[
                            comonoidal[&(e_g, x)],
                            m.mor_id(xi0, px),
                            l_px,
                        ])?;
                        Ok(lhs == monad.carrier.on_mor(l_x)?)
                    })();
                    if !matches!(ok, Ok(true)) {
                        rep.fail("xi0-left-unit", format!("at {}", c.ob_name(x)));
                    }
                    let ok = (|| -> Result<bool> {
                        let px = p_ob(x)?;
                        let r_px = ud.unitors(g).right_at(px)?;
                        let r_x = ud.unitors(g).right_at(x)?;
                        let lhs = c.compose_path(&[
                            comonoidal[&(x, e_g)],
                            m.id_mor(px, xi0),
                            r_px,
                        ])?;
                        Ok(lhs == monad.carrier.on_mor(r_x)?)
                    })();
                    if !matches!(ok, Ok(true)) {
                        rep.fail("xi0-right-unit", format!("at {}", c.ob_name(x)));
                    }
                }
            }
        }
    }
    // fusion operators with constructed inverses
    let mut hl = BTreeMap::new();
    let mut hr = BTreeMap::new();
    for &x in &objects {
        for &y in &objects {
            let ok = (|| -> Result<()> {
                let py = p_ob(y)?;
                let px = p_ob(x)?;
                // H^l(X,Y) = (P X ⊗ μ_Y) ∘ ξ_{X, P Y}
                let op = c.comp(m.id_mor(px, monad.mu[&y]), comonoidal[&(x, py)])?;
                let inv = c.find_inverse(op).ok_or_else(|| {
                    CatError::NotIsomorphism(format!(
                        "H^l at ({}, {})",
                        c.ob_name(x),
                        c.ob_name(y)
                    ))
                })?;
                hl.insert((x, y), (op, inv));
                // H^r(Y,X) = (μ_Y ⊗ P X) ∘ ξ_{P Y, X}
                let op = c.comp(m.mor_id(monad.mu[&y], px), comonoidal[&(py, x)])?;
                let inv = c.find_inverse(op).ok_or_else(|| {
                    CatError::NotIsomorphism(format!(
                        "H^r at ({}, {})",
                        c.ob_name(y),
                        c.ob_name(x)
                    ))
                })?;
                hr.insert((y, x), (op, inv));
                Ok(())
            })();
            if let Err(e) = ok {
                rep.fail("NotInvertible", format!("{e}"));
            }
        }
    }
    // the constructed inverses are genuinely two-sided
    for (key, (op, inv)) in hl.iter().chain(hr.iter()) {
        let two_sided = c.compose(*inv, *op) == Some(c.identity(c.dom(*op)))
            && c.compose(*op, *inv) == Some(c.identity(c.cod(*op)));
        if !two_sided {
            rep.fail("NotInvertible", format!("stored inverse at {key:?} not two-sided"));
        }
    }
    Ok((
        FusionOperators {
            g,
            comonoidal,
            hl,
            hr,
        },
        rep.finish(),
    ))
}

/// The polyad over the discrete source category on the group.
#[derive(Debug, Clone)]
pub struct Polyad {
    pub monads: Vec<Monad>,
}

/// Assemble every `P_g` and check the polyad axioms: over a discrete source
/// they reduce to the monad laws, plus comonoidality checks per monad.
pub fn build_polyad(
    t: &PartialAction,
    ud: Option<&UnitalData>,
) -> Result<(Polyad, DiagramReport)> {
    let mut rep = DiagramReport::new();
    let c = t.cat();
    let mut monads = Vec::new();
    for g in t.group.elements() {
        let monad = build_monad(t, g)?;
        rep.absorb(
            &format!("monad-{}", t.group.name(g)),
            validate_monad(t, &monad),
        );
        let (_, frep) = fusion_operators(t, g, &monad, ud)?;
        rep.absorb(&format!("fusion-{}", t.group.name(g)), frep);
        // η_g is the inverse of the unit pair u/γ_{g,g^{-1}}
        for (&x, &eta_x) in &monad.eta {
            let ok = (|| -> Result<bool> {
                let back = c.comp(
                    c.find_inverse(t.u_at(x)?)
                        .ok_or_else(|| CatError::NotIsomorphism("u".into()))?,
                    t.gamma_at(g, t.group.inv(g), x)?,
                )?;
                Ok(c.compose(back, eta_x) == Some(c.identity(x))
                    && c.compose(eta_x, back) == Some(c.identity(c.cod(eta_x))))
            })();
            if !matches!(ok, Ok(true)) {
                rep.fail(
                    "eta-unit-pair",
                    format!("g = {} at {}", t.group.name(g), c.ob_name(x)),
                );
            }
        }
        monads.push(monad);
    }
    Ok((Polyad { monads }, rep.finish()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::paction::extract_unital_data;

    #[test]
    fn trivial_group_monad_is_trivial() {
        let inst = corpus::trivial_instance();
        let t = &inst.action;
        let monad = build_monad(t, t.group.e).unwrap();
        validate_monad(t, &monad).expect_pass("trivial monad");
        let (_, rep) = build_polyad(t, None).unwrap();
        rep.expect_pass("trivial polyad");
    }

    #[test]
    fn inst_top_polyad_passes_with_unital_data() {
        let inst = corpus::inst_top();
        let t = &inst.action;
        let (ud, urep) = extract_unital_data(t, 1_000_000).unwrap();
        urep.expect_pass("unital data");
        let ud = ud.unwrap();
        let (polyad, rep) = build_polyad(t, Some(&ud)).unwrap();
        rep.expect_pass("inst-top polyad");
        assert_eq!(polyad.monads.len(), 2);
        // P_g = Id on {∅, {3}} in the thin instance
        let g = crate::group::Gel(1);
        for (&x, _) in &polyad.monads[1].mu {
            assert_eq!(polyad.monads[1].carrier.on_ob(x).unwrap(), x);
            let _ = g;
        }
    }

    #[test]
    fn inst_fus_fusion_operators_are_identity_matrices_on_m2() {
        let inst = corpus::inst_fus();
        let t = &inst.action;
        let (ud, _) = extract_unital_data(t, 1_000_000).unwrap();
        let ud = ud.unwrap();
        let g = crate::group::Gel(1);
        let monad = build_monad(t, g).unwrap();
        validate_monad(t, &monad).expect_pass("P_g on inst-fus");
        let (ops, rep) = fusion_operators(t, g, &monad, Some(&ud)).unwrap();
        rep.expect_pass("fusion operators");
        // X = Y = M2 = {2}: P_g(M2) = T_g(M1) = M2, both operators endos of M2
        let m2 = t.cat().obs().find(|&o| t.cat().ob_name(o) == "{2}").unwrap();
        let (hl, _) = ops.hl[&(m2, m2)];
        assert_eq!(hl, t.cat().identity(m2));
    }

    #[test]
    fn corrupting_mu_breaks_associativity_or_units() {
        let inst = corpus::inst_fus();
        let t = &inst.action;
        let g = crate::group::Gel(1);
        let mut monad = build_monad(t, g).unwrap();
        // corrupt μ at M2, whose hom has a parallel zero morphism
        let m2 = t.cat().obs().find(|&o| t.cat().ob_name(o) == "{2}").unwrap();
        let old = monad.mu[&m2];
        let zero = t
            .cat()
            .hom(t.cat().dom(old), t.cat().cod(old))
            .into_iter()
            .find(|&m| m != old)
            .unwrap();
        monad.mu.insert(m2, zero);
        let rep = validate_monad(t, &monad);
        assert!(!rep.passed());
    }
}
