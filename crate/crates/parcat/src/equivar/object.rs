//! Partially equivariant objects `(X, {σ^X_g})`: validation, tensor product,
//! the unit object, morphisms, and exhaustive enumeration of σ families.

use std::collections::BTreeMap;

use crate::fincat::{Mor, Ob};
use crate::group::Gel;
use crate::paction::{PartialAction, UnitalData};
use crate::report::{CatError, DiagramReport, Result};

/// `(X, σ)` with `(σ_g)_Y : T_g(X ⊗ Y) -> X ⊗ T_g(Y)` for `Y ∈ C_{g^{-1}}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct EquivariantObject {
    pub carrier: Ob,
    pub sigma: BTreeMap<(Gel, Ob), Mor>,
}

impl EquivariantObject {
    pub fn sigma_at(&self, g: Gel, y: Ob) -> Result<Mor> {
        self.sigma
            .get(&(g, y))
            .copied()
            .ok_or_else(|| CatError::ComponentShape(format!("missing σ component at ({g},{y})")))
    }
}

/// Naturality, pentagon, and triangle checks for an equivariant object.
pub fn validate_equivariant_object(t: &PartialAction, e: &EquivariantObject) -> DiagramReport {
    let mut rep = DiagramReport::new();
    let c = t.cat();
    let m = &*t.ambient;
    let grp = &t.group;
    let x = e.carrier;
    // component shapes and invertibility
    for g in grp.elements() {
        let gi = grp.inv(g);
        for &y in &t.domain(gi).sub.obs() {
            let ok = (|| -> Result<()> {
                let s = e.sigma_at(g, y)?;
                let want_dom = t.t_ob(g, m.ob(x, y))?;
                let want_cod = m.ob(x, t.t_ob(g, y)?);
                if c.dom(s) != want_dom || c.cod(s) != want_cod {
                    return Err(CatError::ComponentShape(format!(
                        "σ_{} at {} is {}",
                        grp.name(g),
                        c.ob_name(y),
                        c.witness(s)
                    )));
                }
                if !c.is_iso(s) {
                    return Err(CatError::NotIsomorphism(format!(
                        "σ_{} at {}",
                        grp.name(g),
                        c.ob_name(y)
                    )));
                }
                Ok(())
            })();
            if let Err(err) = ok {
                rep.fail("sigma-shape", format!("{err}"));
            }
        }
        // naturality in Y over the domain ideal's morphisms
        for &f in &t.domain(gi).sub.mors() {
            let ok = (|| -> Result<bool> {
                let (y1, y2) = (c.dom(f), c.cod(f));
                let lhs = c.comp(e.sigma_at(g, y2)?, t.t_mor(g, m.id_mor(x, f))?)?;
                let rhs = c.comp(m.id_mor(x, t.t_mor(g, f)?), e.sigma_at(g, y1)?)?;
                Ok(lhs == rhs)
            })();
            if !matches!(ok, Ok(true)) {
                rep.fail(
                    "sigma-naturality",
                    format!("g = {} at {}", grp.name(g), c.witness(f)),
                );
            }
        }
    }
    if !rep.passed() {
        return rep.finish();
    }
    // pentagon (pent-sigma)
    for g in grp.elements() {
        for h in grp.elements() {
            let gh = grp.mul(g, h);
            for &y in &t.intersection_obs(&[grp.inv(h), grp.inv(gh)]) {
                let ok = (|| -> Result<bool> {
                    let lhs = c.comp(e.sigma_at(gh, y)?, t.gamma_at(g, h, m.ob(x, y))?)?;
                    let rhs = c.compose_path(&[
                        t.t_mor(g, e.sigma_at(h, y)?)?,
                        e.sigma_at(g, t.t_ob(h, y)?)?,
                        m.id_mor(x, t.gamma_at(g, h, y)?),
                    ])?;
                    Ok(lhs == rhs)
                })();
                if !matches!(ok, Ok(true)) {
                    rep.fail(
                        "pent-sigma",
                        format!(
                            "(g,h,Y) = ({}, {}, {})",
                            grp.name(g),
                            grp.name(h),
                            c.ob_name(y)
                        ),
                    );
                }
            }
        }
    }
    // triangle (triangle-sigma)
    for y in c.obs() {
        let ok = (|| -> Result<bool> {
            let lhs = c.comp(e.sigma_at(grp.e, y)?, t.u_at(m.ob(x, y))?)?;
            Ok(lhs == m.id_mor(x, t.u_at(y)?))
        })();
        if !matches!(ok, Ok(true)) {
            rep.fail("triangle-sigma", format!("at {}", c.ob_name(y)));
        }
    }
    rep.finish()
}

/// The square making `φ : X -> Y` a morphism of equivariant objects.
pub fn validate_equivariant_morphism(
    t: &PartialAction,
    a: &EquivariantObject,
    b: &EquivariantObject,
    phi: Mor,
) -> DiagramReport {
    let mut rep = DiagramReport::new();
    let c = t.cat();
    let m = &*t.ambient;
    if c.dom(phi) != a.carrier || c.cod(phi) != b.carrier {
        rep.fail("ComponentShapeError", format!("φ is {}", c.witness(phi)));
        return rep.finish();
    }
    for g in t.group.elements() {
        let gi = t.group.inv(g);
        for &y in &t.domain(gi).sub.obs() {
            let ok = (|| -> Result<bool> {
                let lhs = c.comp(
                    m.mor_id(phi, t.t_ob(g, y)?),
                    a.sigma_at(g, y)?,
                )?;
                let rhs = c.comp(b.sigma_at(g, y)?, t.t_mor(g, m.mor_id(phi, y))?)?;
                Ok(lhs == rhs)
            })();
            if !matches!(ok, Ok(true)) {
                rep.fail(
                    "equivariant-morphism-square",
                    format!("g = {} at {}", t.group.name(g), c.ob_name(y)),
                );
            }
        }
    }
    rep.finish()
}

/// `(X, σ^X) ⊗̂ (Y, σ^Y) = (X⊗Y, (X ⊗ σ^Y) ∘ σ^X)`.
pub fn tensor_equivariant(
    t: &PartialAction,
    a: &EquivariantObject,
    b: &EquivariantObject,
) -> Result<EquivariantObject> {
    let c = t.cat();
    let m = &*t.ambient;
    let carrier = m.ob(a.carrier, b.carrier);
    let mut sigma = BTreeMap::new();
    for g in t.group.elements() {
        let gi = t.group.inv(g);
        for &z in &t.domain(gi).sub.obs() {
            let yz = m.ob(b.carrier, z);
            let first = a.sigma_at(g, yz)?;
            let second = m.id_mor(a.carrier, b.sigma_at(g, z)?);
            sigma.insert((g, z), c.comp(second, first)?);
        }
    }
    Ok(EquivariantObject { carrier, sigma })
}

/// The unit object `(𝟙, σ^𝟙)` of the equivariantization, built from the
/// unit-comparison isos and the induced unitors.
pub fn unit_equivariant(t: &PartialAction, ud: &UnitalData) -> Result<EquivariantObject> {
    let c = t.cat();
    let m = &*t.ambient;
    let unit = m
        .unit
        .ok_or_else(|| CatError::MalformedSpec("ambient category has no unit".into()))?;
    let mut sigma = BTreeMap::new();
    for g in t.group.elements() {
        let gi = t.group.inv(g);
        let e_gi = ud.unit_ob(gi);
        let _e_g = ud.unit_ob(g);
        let phi = ud.phi_simple(g)?;
        let phi_inv = c
            .find_inverse(phi)
            .ok_or_else(|| CatError::NotIsomorphism("φ^g".into()))?;
        for &y in &t.domain(gi).sub.obs() {
            // T_g(𝟙⊗Y) = T_g(Y) -> T_g(𝟙_{g^{-1}}⊗Y) -> T_g(𝟙_{g^{-1}})⊗T_g(Y)
            //   -> 𝟙_g⊗T_g(Y) -> T_g(Y) = 𝟙⊗T_g(Y)
            let l = ud.unitors(gi).left_at(y)?;
            let l_inv = c
                .find_inverse(l)
                .ok_or_else(|| CatError::NotIsomorphism("left unitor".into()))?;
            let j = t.j_at(g, e_gi, y)?;
            let j_inv = c
                .find_inverse(j)
                .ok_or_else(|| CatError::NotIsomorphism("J^g".into()))?;
            let tgy = t.t_ob(g, y)?;
            let comp = c.compose_path(&[
                t.t_mor(g, l_inv)?,
                j_inv,
                m.mor_id(phi_inv, tgy),
                ud.unitors(g).left_at(tgy)?,
            ])?;
            sigma.insert((g, y), comp);
        }
    }
    Ok(EquivariantObject {
        carrier: unit,
        sigma,
    })
}

/// All valid σ families on a carrier, by backtracking with naturality,
/// triangle, and pentagon pruning. Deterministic order, exact deduplication.
pub fn enumerate_equivariant(
    t: &PartialAction,
    carrier: Ob,
    budget: usize,
) -> Result<Vec<EquivariantObject>> {
    let c = t.cat();
    let m = &*t.ambient;
    let grp = &t.group;
    // slot list: (g, Y) in ascending order
    let mut slots: Vec<(Gel, Ob)> = Vec::new();
    for g in grp.elements() {
        for &y in &t.domain(grp.inv(g)).sub.obs() {
            slots.push((g, y));
        }
    }
    let mut out = Vec::new();
    let mut stack: Vec<BTreeMap<(Gel, Ob), Mor>> = vec![BTreeMap::new()];
    let mut visited = 0usize;
    while let Some(partial) = stack.pop() {
        visited += 1;
        if visited > budget {
            return Err(CatError::SearchBudgetExceeded {
                budget,
                context: format!("σ enumeration on carrier {}", c.ob_name(carrier)),
            });
        }
        if partial.len() == slots.len() {
            let cand = EquivariantObject {
                carrier,
                sigma: partial,
            };
            if validate_equivariant_object(t, &cand).passed() {
                out.push(cand);
            }
            continue;
        }
        let (g, y) = slots[partial.len()];
        let Ok(dom) = t.t_ob(g, m.ob(carrier, y)) else { continue };
        let Ok(tgy) = t.t_ob(g, y) else { continue };
        let cod = m.ob(carrier, tgy);
        let mut cands: Vec<Mor> = c.hom(dom, cod).into_iter().filter(|&f| c.is_iso(f)).collect();
        // the triangle forces σ_e directly
        if g == grp.e {
            let forced = (|| -> Result<Mor> {
                let u_xy = t.u_at(m.ob(carrier, y))?;
                let u_inv = c
                    .find_inverse(u_xy)
                    .ok_or_else(|| CatError::NotIsomorphism("u".into()))?;
                c.comp(m.id_mor(carrier, t.u_at(y)?), u_inv)
            })();
            match forced {
                Ok(f) => cands.retain(|&s| s == f),
                Err(_) => cands.clear(),
            }
        }
        cands.reverse();
        for s in cands {
            let mut next = partial.clone();
            next.insert((g, y), s);
            if sigma_partial_ok(t, carrier, &next) {
                stack.push(next);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn sigma_partial_ok(
    t: &PartialAction,
    x: Ob,
    partial: &BTreeMap<(Gel, Ob), Mor>,
) -> bool {
    let c = t.cat();
    let m = &*t.ambient;
    let grp = &t.group;
    // naturality between assigned components of the same g
    for (&(g, y1), &s1) in partial {
        let gi = grp.inv(g);
        for &f in &t.domain(gi).sub.mors() {
            if c.dom(f) != y1 {
                continue;
            }
            let y2 = c.cod(f);
            let Some(&s2) = partial.get(&(g, y2)) else { continue };
            let ok = (|| -> Result<bool> {
                let lhs = c.comp(s2, t.t_mor(g, m.id_mor(x, f))?)?;
                let rhs = c.comp(m.id_mor(x, t.t_mor(g, f)?), s1)?;
                Ok(lhs == rhs)
            })();
            if !matches!(ok, Ok(true)) {
                return false;
            }
        }
    }
    // pentagon instances whose three components are assigned
    for g in grp.elements() {
        for h in grp.elements() {
            let gh = grp.mul(g, h);
            for &y in &t.intersection_obs(&[grp.inv(h), grp.inv(gh)]) {
                let (Some(&s_gh), Some(&s_h)) = (partial.get(&(gh, y)), partial.get(&(h, y)))
                else {
                    continue;
                };
                let Ok(thy) = t.t_ob(h, y) else { return false };
                let Some(&s_g) = partial.get(&(g, thy)) else { continue };
                let ok = (|| -> Result<bool> {
                    let lhs = c.comp(s_gh, t.gamma_at(g, h, m.ob(x, y))?)?;
                    let rhs = c.compose_path(&[
                        t.t_mor(g, s_h)?,
                        s_g,
                        m.id_mor(x, t.gamma_at(g, h, y)?),
                    ])?;
                    Ok(lhs == rhs)
                })();
                if !matches!(ok, Ok(true)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Assemble the equivariantization as a tabulated monoidal category:
/// objects are all equivariant objects over every carrier, morphisms are the
/// ambient morphisms satisfying the compatibility square, the tensor is `⊗̂`.
pub fn assemble_equivariantization(
    t: &PartialAction,
    ud: Option<&UnitalData>,
    budget: usize,
) -> Result<(std::sync::Arc<crate::monoidal::MonoidalStructure>, Vec<EquivariantObject>, DiagramReport)> {
    use crate::fincat::CatBuilder;
    let mut rep = DiagramReport::new();
    let c = t.cat();
    let m = &*t.ambient;
    let mut objects: Vec<EquivariantObject> = Vec::new();
    for x in c.obs() {
        objects.extend(enumerate_equivariant(t, x, budget)?);
    }
    let mut b = CatBuilder::new();
    for (i, e) in objects.iter().enumerate() {
        b.add_object(format!("({},#{})", c.ob_name(e.carrier), i));
    }
    let mut mors: Vec<(usize, usize, Mor)> = Vec::new();
    for (i, a) in objects.iter().enumerate() {
        for (j, bb) in objects.iter().enumerate() {
            for phi in c.hom(a.carrier, bb.carrier) {
                if validate_equivariant_morphism(t, a, bb, phi).passed() {
                    mors.push((i, j, phi));
                }
            }
        }
    }
    let mut ids = Vec::new();
    for (i, j, phi) in &mors {
        ids.push(b.add_morphism(
            crate::fincat::Ob(*i as u32),
            crate::fincat::Ob(*j as u32),
            format!("{}#{}->{}", c.mor_label(*phi), i, j),
        ));
    }
    let find = |i: usize, j: usize, phi: Mor| -> Result<Mor> {
        mors.iter()
            .position(|&(a, bb, p)| a == i && bb == j && p == phi)
            .map(|k| ids[k])
            .ok_or_else(|| {
                CatError::MalformedSpec("equivariantization not closed under composition".into())
            })
    };
    for (i, e) in objects.iter().enumerate() {
        b.set_identity(crate::fincat::Ob(i as u32), find(i, i, c.identity(e.carrier))?);
    }
    for (k1, &(i1, j1, p1)) in mors.iter().enumerate() {
        for (k2, &(i2, j2, p2)) in mors.iter().enumerate() {
            if j1 == i2 {
                if let Some(p) = c.compose(p2, p1) {
                    b.set_compose(ids[k2], ids[k1], find(i1, j2, p)?);
                }
            }
        }
    }
    let cat = std::sync::Arc::new(b.build()?);
    let index_of_object = |e: &EquivariantObject| -> Result<usize> {
        objects
            .iter()
            .position(|o| o == e)
            .ok_or_else(|| CatError::MalformedSpec("⊗̂ escapes the enumeration".into()))
    };
    let mut obt = std::collections::BTreeMap::new();
    for (i, a) in objects.iter().enumerate() {
        for (j, bb) in objects.iter().enumerate() {
            let ab = tensor_equivariant(t, a, bb)?;
            obt.insert(
                (crate::fincat::Ob(i as u32), crate::fincat::Ob(j as u32)),
                crate::fincat::Ob(index_of_object(&ab)? as u32),
            );
        }
    }
    let mut mort = std::collections::BTreeMap::new();
    for (k1, &(i1, j1, p1)) in mors.iter().enumerate() {
        for (k2, &(i2, j2, p2)) in mors.iter().enumerate() {
            let a = obt[&(crate::fincat::Ob(i1 as u32), crate::fincat::Ob(i2 as u32))];
            let bb = obt[&(crate::fincat::Ob(j1 as u32), crate::fincat::Ob(j2 as u32))];
            mort.insert(
                (ids[k1], ids[k2]),
                find(a.0 as usize, bb.0 as usize, m.mor(p1, p2))?,
            );
        }
    }
    let unit = match (ud, m.unit) {
        (Some(ud), Some(_)) => {
            let ue = unit_equivariant(t, ud)?;
            let i = index_of_object(&ue)?;
            rep.warn(format!("unit of the equivariantization is object #{i}"));
            Some(crate::fincat::Ob(i as u32))
        }
        _ => None,
    };
    // ⊗̂ with the unit object is only unital up to isomorphism, so the
    // assembled structure is semigroupal; the unit is reported, not declared.
    let _ = unit;
    let mon = std::sync::Arc::new(crate::monoidal::MonoidalStructure::new(cat, &obt, &mort, None)?);
    Ok((mon, objects, rep.finish()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::paction::extract_unital_data;

    #[test]
    fn equivariantization_of_inst_top_has_four_objects() {
        let inst = corpus::inst_top();
        let t = &inst.action;
        let (ud, _) = extract_unital_data(t, 1_000_000).unwrap();
        let (mon, objects, _) =
            assemble_equivariantization(t, ud.as_ref(), 1_000_000).unwrap();
        assert_eq!(objects.len(), 4);
        crate::fincat::validate_category(&mon.base).expect_pass("C^G̲ category");
        crate::monoidal::validate_semigroupal(&mon).expect_pass("C^G̲ tensor");
    }

    #[test]
    fn unit_object_is_equivariant() {
        let inst = corpus::inst_top();
        let t = &inst.action;
        let (ud, _) = extract_unital_data(t, 1_000_000).unwrap();
        let ud = ud.unwrap();
        let e = unit_equivariant(t, &ud).unwrap();
        validate_equivariant_object(t, &e).expect_pass("(𝟙, σ^𝟙)");
    }

    #[test]
    fn inst_top_has_exactly_one_sigma_per_carrier() {
        let inst = corpus::inst_top();
        let t = &inst.action;
        let mut total = 0;
        for x in t.cat().obs() {
            let found = enumerate_equivariant(t, x, 1_000_000).unwrap();
            assert_eq!(
                found.len(),
                1,
                "thin category: unique σ on {}",
                t.cat().ob_name(x)
            );
            total += found.len();
        }
        assert_eq!(total, 4);
    }

    #[test]
    fn tensor_of_equivariant_objects_validates() {
        let inst = corpus::inst_top();
        let t = &inst.action;
        let objs: Vec<EquivariantObject> = t
            .cat()
            .obs()
            .flat_map(|x| enumerate_equivariant(t, x, 1_000_000).unwrap())
            .collect();
        for a in &objs {
            for b in &objs {
                let ab = tensor_equivariant(t, a, b).unwrap();
                validate_equivariant_object(t, &ab).expect_pass("a ⊗̂ b");
                // carrier is the intersection in the thin instance
                assert_eq!(
                    ab.carrier,
                    t.ambient.ob(a.carrier, b.carrier)
                );
            }
        }
    }

    #[test]
    fn fus_zero_carrier_has_exactly_one_family() {
        let inst = corpus::inst_fus();
        let t = &inst.action;
        let zero = t.cat().obs().find(|&o| t.cat().ob_name(o) == "{}").unwrap();
        let found = enumerate_equivariant(t, zero, 1_000_000).unwrap();
        assert_eq!(found.len(), 1, "zero object: zero components only");
    }

    #[test]
    fn corrupted_pentagon_component_is_caught() {
        let inst = corpus::inst_fus();
        let t = &inst.action;
        let e_ob = t.cat().obs().find(|&o| t.cat().ob_name(o) == "{1,2}").unwrap();
        let found = enumerate_equivariant(t, e_ob, 1_000_000).unwrap();
        assert!(!found.is_empty());
        let mut bad = found[0].clone();
        // replace one non-e component by a parallel morphism if possible,
        // otherwise by a wrongly-typed one; either way validation must fail
        let key = *bad
            .sigma
            .keys()
            .find(|(g, _)| *g != t.group.e)
            .expect("nontrivial component");
        let old = bad.sigma[&key];
        let replacement = t
            .cat()
            .mors()
            .find(|&f| f != old && (t.cat().dom(f), t.cat().cod(f)) == (t.cat().dom(old), t.cat().cod(old)))
            .or_else(|| t.cat().mors().find(|&f| f != old))
            .unwrap();
        bad.sigma.insert(key, replacement);
        let rep = validate_equivariant_object(t, &bad);
        assert!(!rep.passed());
    }
}
