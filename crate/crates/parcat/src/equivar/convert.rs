//! Conversions between the three presentations of equivariance: global θ
//! families (for global actions), partial σ families, and the compact σ̃
//! families of unital actions.

use std::collections::BTreeMap;

use crate::fincat::{Mor, Ob};
use crate::group::Gel;
use crate::paction::{PartialAction, UnitalData};
use crate::report::{CatError, DiagramReport, Result};

use super::object::EquivariantObject;

/// A global equivariant object `(X, {θ_g : T_g(X) -> X})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalEquivariantObject {
    pub carrier: Ob,
    pub theta: BTreeMap<Gel, Mor>,
}

/// The square `θ_g ∘ T_g(θ_h) = θ_{gh} ∘ γ_{g,h}` and the triangle
/// `θ_e ∘ u_X = id`.
pub fn validate_global_equivariant(
    t: &PartialAction,
    ge: &GlobalEquivariantObject,
) -> DiagramReport {
    let mut rep = DiagramReport::new();
    let c = t.cat();
    let grp = &t.group;
    let x = ge.carrier;
    for g in grp.elements() {
        match ge.theta.get(&g) {
            None => rep.fail("ComponentShapeError", format!("θ missing at {}", grp.name(g))),
            Some(&th) => {
                let ok = t.t_ob(g, x).map(|tx| c.dom(th) == tx && c.cod(th) == x);
                if !matches!(ok, Ok(true)) {
                    rep.fail("ComponentShapeError", format!("θ at {}", grp.name(g)));
                } else if !c.is_iso(th) {
                    rep.fail("NotIsomorphism", format!("θ at {}", grp.name(g)));
                }
            }
        }
    }
    if !rep.passed() {
        return rep.finish();
    }
    for g in grp.elements() {
        for h in grp.elements() {
            let gh = grp.mul(g, h);
            let ok = (|| -> Result<bool> {
                let lhs = c.comp(ge.theta[&g], t.t_mor(g, ge.theta[&h])?)?;
                let rhs = c.comp(ge.theta[&gh], t.gamma_at(g, h, x)?)?;
                Ok(lhs == rhs)
            })();
            if !matches!(ok, Ok(true)) {
                rep.fail(
                    "quadrado-equivariant",
                    format!("(g,h) = ({}, {})", grp.name(g), grp.name(h)),
                );
            }
        }
    }
    let ok = (|| -> Result<bool> { Ok(c.comp(ge.theta[&grp.e], t.u_at(x)?)? == c.identity(x)) })();
    if !matches!(ok, Ok(true)) {
        rep.fail("triangulo-equivariant", format!("at {}", c.ob_name(x)));
    }
    rep.finish()
}

/// For a global action: `θ_g = (X ⊗ (φ^g)^{-1}) ∘ (σ_g)_𝟙`, using that the
/// ambient unit is strict.
pub fn to_global(
    t: &PartialAction,
    ud: &UnitalData,
    e: &EquivariantObject,
) -> Result<GlobalEquivariantObject> {
    if !t.is_global() {
        return Err(CatError::RequiresGlobal("to_global".into()));
    }
    let c = t.cat();
    let m = &*t.ambient;
    let unit = m
        .unit
        .ok_or_else(|| CatError::MalformedSpec("global conversion needs a unit".into()))?;
    let x = e.carrier;
    let mut theta = BTreeMap::new();
    for g in t.group.elements() {
        let phi = ud.phi_simple(g)?;
        let phi_inv = c
            .find_inverse(phi)
            .ok_or_else(|| CatError::NotIsomorphism("φ^g".into()))?;
        // T_g(X) = T_g(X⊗𝟙) --σ--> X⊗T_g(𝟙) --X⊗φ^{-1}--> X⊗𝟙 = X
        theta.insert(g, c.comp(m.id_mor(x, phi_inv), e.sigma_at(g, unit)?)?);
    }
    Ok(GlobalEquivariantObject { carrier: x, theta })
}

/// For a global action: `(σ_g)_Y = (θ_g ⊗ T_g(Y)) ∘ (J^g_{X,Y})^{-1}`.
pub fn from_global(
    t: &PartialAction,
    ge: &GlobalEquivariantObject,
) -> Result<EquivariantObject> {
    if !t.is_global() {
        return Err(CatError::RequiresGlobal("from_global".into()));
    }
    let c = t.cat();
    let m = &*t.ambient;
    let x = ge.carrier;
    let mut sigma = BTreeMap::new();
    for g in t.group.elements() {
        for y in c.obs() {
            let j = t.j_at(g, x, y)?;
            let j_inv = c
                .find_inverse(j)
                .ok_or_else(|| CatError::NotIsomorphism("J^g".into()))?;
            sigma.insert((g, y), c.comp(m.mor_id(ge.theta[&g], t.t_ob(g, y)?), j_inv)?);
        }
    }
    Ok(EquivariantObject { carrier: x, sigma })
}

/// The compact presentation of equivariance for unital actions:
/// `σ̃_{g,(g_1..g_n)} : T_g(X ⊗ 𝟙_{g^{-1}} ⊗ 𝟙_{g_1} ⊗ ...) -> X ⊗ 𝟙_g ⊗ 𝟙_{g g_1} ⊗ ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaTilde {
    pub carrier: Ob,
    pub table: BTreeMap<(Gel, Vec<Gel>), Mor>,
}

impl SigmaTilde {
    pub fn at(&self, g: Gel, extras: &[Gel]) -> Result<Mor> {
        self.table
            .get(&(g, extras.to_vec()))
            .copied()
            .ok_or_else(|| CatError::ComponentShape(format!("missing σ̃ at ({g},{extras:?})")))
    }
}

/// `σ̃_{g,gs} = (X ⊗ (φ^g_{g·gs})^{-1}) ∘ (σ_g)_{𝟙_{g^{-1}} ⊗ 𝟙_{gs}}`,
/// computed for all extras words up to length `max_len`.
pub fn sigma_to_tilde(
    t: &PartialAction,
    ud: &UnitalData,
    e: &EquivariantObject,
    max_len: usize,
) -> Result<SigmaTilde> {
    let c = t.cat();
    let m = &*t.ambient;
    let grp = &t.group;
    let x = e.carrier;
    let mut table = BTreeMap::new();
    let mut words: Vec<Vec<Gel>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &words {
            if w.len() < max_len {
                for g in grp.elements() {
                    let mut w2 = w.clone();
                    w2.push(g);
                    next.push(w2);
                }
            }
        }
        words.extend(next);
        words.sort();
        words.dedup();
    }
    for g in grp.elements() {
        let gi = grp.inv(g);
        for extras in &words {
            // Y = 𝟙_{g^{-1}} ⊗ 𝟙_{g_1} ⊗ ... ⊗ 𝟙_{g_n}
            let mut yword = vec![ud.unit_ob(gi)];
            for &w in extras {
                yword.push(ud.unit_ob(w));
            }
            let y = m.ob_word(&yword);
            if !t.in_domain(gi, y) {
                return Err(CatError::DomainError("unit word escapes its ideal".into()));
            }
            let sig = e.sigma_at(g, y)?;
            let mut phiword = vec![g];
            for &w in extras {
                phiword.push(grp.mul(g, w));
            }
            let phi = ud.phi_word(g, &phiword, 0)?;
            let phi_inv = c
                .find_inverse(phi)
                .ok_or_else(|| CatError::NotIsomorphism("φ word".into()))?;
            table.insert((g, extras.clone()), c.comp(m.id_mor(x, phi_inv), sig)?);
        }
    }
    Ok(SigmaTilde { carrier: x, table })
}

/// Rebuild σ from σ̃:
/// `(σ_g)_Y = (X ⊗ L) ∘ (σ̃_g ⊗ T_g Y) ∘ (J^g)^{-1} ∘ T_g(X ⊗ L^{-1})`.
pub fn tilde_to_sigma(
    t: &PartialAction,
    ud: &UnitalData,
    st: &SigmaTilde,
) -> Result<EquivariantObject> {
    let c = t.cat();
    let m = &*t.ambient;
    let grp = &t.group;
    let x = st.carrier;
    let mut sigma = BTreeMap::new();
    for g in grp.elements() {
        let gi = grp.inv(g);
        let e_gi = ud.unit_ob(gi);
        let tilde = st.at(g, &[])?;
        for &y in &t.domain(gi).sub.obs() {
            let tgy = t.t_ob(g, y)?;
            let l = ud.unitors(gi).left_at(y)?;
            let l_inv = c
                .find_inverse(l)
                .ok_or_else(|| CatError::NotIsomorphism("left unitor".into()))?;
            let j = t.j_at(g, m.ob(x, e_gi), y)?;
            let j_inv = c
                .find_inverse(j)
                .ok_or_else(|| CatError::NotIsomorphism("J^g".into()))?;
            let comp = c.compose_path(&[
                t.t_mor(g, m.id_mor(x, l_inv))?,
                j_inv,
                m.mor_id(tilde, tgy),
                m.id_mor(x, ud.unitors(g).left_at(tgy)?),
            ])?;
            sigma.insert((g, y), comp);
        }
    }
    Ok(EquivariantObject { carrier: x, sigma })
}

/// The coherence square of a σ̃ family, with the word-order alignment made
/// explicit through the unit exchange isos.
pub fn validate_sigma_tilde_square(
    t: &PartialAction,
    ud: &UnitalData,
    st: &SigmaTilde,
) -> DiagramReport {
    let mut rep = DiagramReport::new();
    let c = t.cat();
    let m = &*t.ambient;
    let grp = &t.group;
    let x = st.carrier;
    for g in grp.elements() {
        for h in grp.elements() {
            let gh = grp.mul(g, h);
            let ok = (|| -> Result<bool> {
                let hi = grp.inv(h);
                let ghi = grp.inv(gh);
                let gi = grp.inv(g);
                // both paths start at T_g T_h (X ⊗ 𝟙_{h^{-1}} ⊗ 𝟙_{(gh)^{-1}})
                // and end at X ⊗ 𝟙_g ⊗ 𝟙_{gh}; word reorders are explicit
                let arg = m.ob_word(&[x, ud.unit_ob(hi), ud.unit_ob(ghi)]);
                // path 1: γ, reorder to the σ̃_{gh} word, σ̃_{gh,(h^{-1})},
                // reorder 𝟙_{gh} ⊗ 𝟙_g to 𝟙_g ⊗ 𝟙_{gh}
                let q1 = t.gamma_at(g, h, arg)?;
                let q2 = t.t_mor(
                    gh,
                    m.id_mor(x, ud.unit(hi).exchange_at(ud.unit_ob(ghi))?),
                )?;
                let q3 = *st.table.get(&(gh, vec![hi])).ok_or_else(|| {
                    CatError::ComponentShape("missing σ̃ component".into())
                })?;
                let q4 = m.id_mor(x, ud.unit(gh).exchange_at(ud.unit_ob(g))?);
                let p1 = c.compose_path(&[q1, q2, q3, q4])?;
                // path 2: T_g(σ̃_{h,((gh)^{-1})}), reorder 𝟙_h ⊗ 𝟙_{g^{-1}}
                // to 𝟙_{g^{-1}} ⊗ 𝟙_h, then σ̃_{g,(h)}
                let inner = st.at(h, &[ghi])?;
                let swap = ud.unit(h).exchange_at(ud.unit_ob(gi))?;
                let reorder = t.t_mor(g, m.id_mor(x, swap))?;
                let p2 = c.compose_path(&[t.t_mor(g, inner)?, reorder, st.at(g, &[h])?])?;
                Ok(p1 == p2)
            })();
            if !matches!(ok, Ok(true)) {
                rep.fail(
                    "tildesigma-square",
                    format!("(g,h) = ({}, {})", grp.name(g), grp.name(h)),
                );
            }
        }
    }
    rep.finish()
}
