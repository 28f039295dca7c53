//! Deterministic generators for the finite instances used in examples, tests,
//! and acceptance runs: open-set topologies, orthogonal-idempotent fusion
//! skeletons, and product-ring skeletons. Every generator validates its
//! output before returning it.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::fincat::{Functor, Mor, Ob};
use crate::group::{cyclic_perm_group, FinGroup, Perm};
#[cfg(test)]
use crate::group::Gel;
use crate::linalg::{
    enumerate_linear_monoidal, linearize_monoidal, LinearCategory, LinearPresentation,
};
use crate::monoidal::{MonoidalStructure, SemigroupalFunctor, Side, Subcategory};
use crate::paction::{restrict_global, validate_partial_action, PartialAction};
use crate::report::{CatError, DiagramReport, Result};

pub use masks::{mask_name, submasks};

/// A generated instance: the partial action, its linear structure when the
/// ambient is linear, and the generation-time report.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub action: PartialAction,
    pub linear: Option<Arc<LinearCategory>>,
    pub report: DiagramReport,
}

mod masks {
    /// `{1,3}` style name for a bitmask set; bit i is the point i+1.
    pub fn mask_name(m: u32) -> String {
        let elems: Vec<String> = (0..32)
            .filter(|i| m & (1 << i) != 0)
            .map(|i| (i + 1).to_string())
            .collect();
        format!("{{{}}}", elems.join(","))
    }

    /// All subsets of a mask, ascending.
    pub fn submasks(m: u32) -> Vec<u32> {
        (0..=m).filter(|s| s & m == *s).collect()
    }
}

/// An opens category with its mask-to-object and inclusion lookup tables.
pub type OpensCategory = (Arc<MonoidalStructure>, BTreeMap<u32, Ob>, BTreeMap<(u32, u32), Mor>);

/// The thin monoidal category `O(X)` of the given open sets under
/// intersection, with the top mask as unit when present.
pub fn opens_category(open_masks: &[u32]) -> Result<OpensCategory> {
    let mut masks: Vec<u32> = open_masks.to_vec();
    masks.sort_unstable();
    masks.dedup();
    for &a in &masks {
        for &b in &masks {
            if !masks.contains(&(a & b)) {
                return Err(CatError::MalformedSpec(format!(
                    "open sets not closed under intersection: {} ∩ {}",
                    mask_name(a),
                    mask_name(b)
                )));
            }
        }
    }
    let mut b = crate::fincat::CatBuilder::new();
    let mut obs = BTreeMap::new();
    for &m in &masks {
        obs.insert(m, b.add_object(mask_name(m)));
    }
    let mut incl = BTreeMap::new();
    for &a in &masks {
        for &bm in &masks {
            if a & bm == a {
                let f = b.add_morphism(
                    obs[&a],
                    obs[&bm],
                    format!("{}<={}", mask_name(a), mask_name(bm)),
                );
                incl.insert((a, bm), f);
            }
        }
    }
    for &m in &masks {
        b.set_identity(obs[&m], incl[&(m, m)]);
    }
    for (&(a1, b1), &f) in &incl {
        for (&(a2, b2), &g) in &incl {
            if b1 == a2 {
                b.set_compose(g, f, incl[&(a1, b2)]);
            }
        }
    }
    let cat = Arc::new(b.build()?);
    let mut obt = BTreeMap::new();
    for &a in &masks {
        for &bm in &masks {
            obt.insert((obs[&a], obs[&bm]), obs[&(a & bm)]);
        }
    }
    let mut mort = BTreeMap::new();
    for (&(a1, b1), &f) in &incl {
        for (&(a2, b2), &g) in &incl {
            mort.insert((f, g), incl[&(a1 & a2, b1 & b2)]);
        }
    }
    let top = masks.iter().copied().fold(0, |acc, m| acc | m);
    let unit = masks.contains(&top).then(|| obs[&top]);
    let mon = Arc::new(MonoidalStructure::new(cat, &obt, &mort, unit)?);
    Ok((mon, obs, incl))
}

/// Global action of the cyclic group of a topology-preserving permutation on
/// `O(X)`.
fn opens_global_action(
    mon: Arc<MonoidalStructure>,
    obs: &BTreeMap<u32, Ob>,
    perm: &Perm,
) -> Result<(PartialAction, Vec<Perm>)> {
    for &m in obs.keys() {
        if !obs.contains_key(&perm.apply_mask(m)) {
            return Err(CatError::NotContinuous(format!(
                "permutation does not preserve the topology at {}",
                mask_name(m)
            )));
        }
    }
    let (group, perms) = cyclic_perm_group(perm);
    let c = mon.base.clone();
    let by_ob: BTreeMap<Ob, u32> = obs.iter().map(|(&m, &o)| (o, m)).collect();
    let mut actors = Vec::new();
    for p in &perms {
        let mut f = Functor::default();
        for x in c.obs() {
            f.ob.insert(x, obs[&p.apply_mask(by_ob[&x])]);
        }
        for m in c.mors() {
            let (a, b) = (by_ob[&c.dom(m)], by_ob[&c.cod(m)]);
            let (pa, pb) = (p.apply_mask(a), p.apply_mask(b));
            let img = c
                .hom(obs[&pa], obs[&pb])
                .first()
                .copied()
                .ok_or_else(|| CatError::NotContinuous("permuted inclusion missing".into()))?;
            f.mor.insert(m, img);
        }
        let mut j = BTreeMap::new();
        for x in c.obs() {
            for y in c.obs() {
                let txy = f.on_ob(mon.ob(x, y))?;
                j.insert((x, y), c.identity(txy));
            }
        }
        actors.push(SemigroupalFunctor {
            functor: f,
            j,
            j0: None,
        });
    }
    let t = PartialAction::strict_global(group, mon, actors)?;
    Ok((t, perms))
}

/// `O(X)` for the given topology, acted on by the cyclic group of `perm`,
/// restricted to the open set `restrict_to`.
pub fn gen_topology_instance(
    points: usize,
    open_masks: &[u32],
    perm: &Perm,
    restrict_to: u32,
) -> Result<Instance> {
    if perm.0.len() != points {
        return Err(CatError::MalformedSpec("permutation arity mismatch".into()));
    }
    let (mon, obs, _) = opens_category(open_masks)?;
    if !obs.contains_key(&restrict_to) {
        return Err(CatError::NotContinuous(format!(
            "restriction target {} is not open",
            mask_name(restrict_to)
        )));
    }
    let (tglob, _) = opens_global_action(mon.clone(), &obs, perm)?;
    let ideal_obs: Vec<Ob> = obs
        .iter()
        .filter(|(&m, _)| m & restrict_to == m)
        .map(|(_, &o)| o)
        .collect();
    let ideal = crate::monoidal::Ideal {
        sub: Subcategory::full_on(&mon.base, ideal_obs),
        side: Side::Both,
    };
    let (action, _, mut report) = restrict_global(&tglob, &ideal)?;
    report.absorb("validate", validate_partial_action(&action));
    Ok(Instance {
        name: format!(
            "topology(n={points}, |opens|={}, restrict={})",
            open_masks.len(),
            mask_name(restrict_to)
        ),
        action,
        linear: None,
        report: report.finish(),
    })
}

/// All subsets of `{1..n}`: the discrete topology.
pub fn discrete_opens(n: usize) -> Vec<u32> {
    (0u32..(1 << n)).collect()
}

/// Linear presentation of the orthogonal-simples fusion skeleton on support
/// masks inside `universe`: `Hom(S,T) = k^(S∩T)` with entrywise composition.
fn fusion_presentation(universe: u32, p: u32) -> LinearPresentation {
    let masks = masks::submasks(universe);
    let mut pres = LinearPresentation {
        objects: masks.iter().map(|&m| mask_name(m)).collect(),
        p,
        unit: Some(masks.len() - 1),
        ..Default::default()
    };
    let points = |m: u32| -> Vec<u32> { (0..32).filter(|i| m & (1 << i) != 0).collect() };
    let index_of = |m: u32| masks.iter().position(|&x| x == m).unwrap();
    for (si, &s) in masks.iter().enumerate() {
        for (ti, &t) in masks.iter().enumerate() {
            let common = points(s & t);
            if !common.is_empty() {
                pres.basis.insert(
                    (si, ti),
                    common.iter().map(|i| format!("d{}", i + 1)).collect(),
                );
            }
        }
    }
    for (si, &s) in masks.iter().enumerate() {
        pres.identity
            .insert(si, vec![1; points(s).len()]);
    }
    // compose: δ_i ∘ δ_j = [i=j] δ_i ; tensor: δ_i ⊗ δ_j = [i=j] δ_i
    for (si, &s) in masks.iter().enumerate() {
        for (ti, &t) in masks.iter().enumerate() {
            for (k_f, &i) in points(s & t).iter().enumerate() {
                for (ui, &u) in masks.iter().enumerate() {
                    for (k_g, &j) in points(t & u).iter().enumerate() {
                        if i == j {
                            let out = points(s & u);
                            let mut sc = vec![0u32; out.len()];
                            sc[out.iter().position(|&x| x == i).unwrap()] = 1;
                            pres.compose.insert(((ti, ui, k_g), (si, ti, k_f)), sc);
                        }
                    }
                }
            }
        }
    }
    let all_pairs: Vec<(usize, usize)> = (0..masks.len())
        .flat_map(|a| (0..masks.len()).map(move |b| (a, b)))
        .collect();
    for &(si, ti) in &all_pairs {
        for &(sj, tj) in &all_pairs {
            pres.tensor_ob.insert((si, sj), index_of(masks[si] & masks[sj]));
            pres.tensor_ob.insert((ti, tj), index_of(masks[ti] & masks[tj]));
            let (s, t) = (masks[si], masks[ti]);
            let (s2, t2) = (masks[sj], masks[tj]);
            for (k1, &i) in points(s & t).iter().enumerate() {
                for (k2, &j) in points(s2 & t2).iter().enumerate() {
                    if i == j {
                        let out = points(s & s2 & t & t2);
                        let mut sc = vec![0u32; out.len()];
                        sc[out.iter().position(|&x| x == i).unwrap()] = 1;
                        pres.tensor.insert(((si, ti, k1), (sj, tj, k2)), sc);
                    }
                }
            }
        }
    }
    pres
}

/// Actor functor of a permutation on an enumerated fusion-type category.
fn perm_actor_on_supports(
    mon: &MonoidalStructure,
    lin: &LinearCategory,
    masks: &[u32],
    p: &Perm,
    domain: Option<&Subcategory>,
) -> Result<SemigroupalFunctor> {
    let c = &*mon.base;
    let index_of = |m: u32| Ob(masks.iter().position(|&x| x == m).unwrap() as u32);
    let mask_of = |o: Ob| masks[o.0 as usize];
    let points = |m: u32| -> Vec<u32> { (0..32).filter(|i| m & (1 << i) != 0).collect() };
    let in_dom = |x: Ob| domain.is_none_or(|d| d.objects.contains(&x));
    let mut f = Functor::default();
    for x in c.obs() {
        if in_dom(x) {
            f.ob.insert(x, index_of(p.apply_mask(mask_of(x))));
        }
    }
    for m in c.mors() {
        let (x, y) = (c.dom(m), c.cod(m));
        if !(in_dom(x) && in_dom(y)) {
            continue;
        }
        let (px, py) = (f.ob[&x], f.ob[&y]);
        let src_pts = points(mask_of(x) & mask_of(y));
        let dst_pts = points(mask_of(px) & mask_of(py));
        let v = lin.coords_of(m);
        let mut out = vec![0u32; dst_pts.len()];
        for (k, &i) in src_pts.iter().enumerate() {
            let pi = p.apply(i as usize) as u32;
            out[dst_pts.iter().position(|&x| x == pi).unwrap()] = v[k];
        }
        f.mor.insert(m, lin.from_coords(px, py, &out)?);
    }
    let mut j = BTreeMap::new();
    for x in c.obs() {
        for y in c.obs() {
            if in_dom(x) && in_dom(y) {
                let txy = f.on_ob(mon.ob(x, y))?;
                j.insert((x, y), c.identity(txy));
            }
        }
    }
    Ok(SemigroupalFunctor {
        functor: f,
        j,
        j0: None,
    })
}

/// The ambient global action of the fusion toy: the cyclic group of `cycle`
/// permuting all supports inside `{1..n}`.
pub fn gen_fusion_global(
    n: usize,
    cycle: &Perm,
    p: u32,
) -> Result<(PartialAction, Arc<LinearCategory>)> {
    let universe = (1u32 << n) - 1;
    let pres = fusion_presentation(universe, p);
    let (mon_full, lin_full) = enumerate_linear_monoidal(&pres, 500_000)?;
    let mon_full = Arc::new(mon_full);
    let masks_full = masks::submasks(universe);
    let (group, perms) = cyclic_perm_group(cycle);
    let mut actors = Vec::new();
    for q in &perms {
        actors.push(perm_actor_on_supports(&mon_full, &lin_full, &masks_full, q, None)?);
    }
    let t = PartialAction::strict_global(group, mon_full, actors)?;
    Ok((t, Arc::new(lin_full)))
}

/// Skeletal multifusion toy with `M_i ⊗ M_j = δ_ij M_i`, acted on by the
/// cyclic group of `cycle` in `S_n`, restricted to the ideal generated by
/// `E = ⊕_{i ∈ support} M_i`.
pub fn gen_fusion_instance(n: usize, cycle: &Perm, support: u32, p: u32) -> Result<Instance> {
    if support == 0 {
        return Err(CatError::MalformedSpec("support must be nonempty".into()));
    }
    let universe = (1u32 << n) - 1;
    let pres = fusion_presentation(universe, p);
    let (mon_full, lin_full) = enumerate_linear_monoidal(&pres, 500_000)?;
    let mon_full = Arc::new(mon_full);
    let masks_full = masks::submasks(universe);
    let (group, perms) = cyclic_perm_group(cycle);
    let mut actors = Vec::new();
    for q in &perms {
        actors.push(perm_actor_on_supports(&mon_full, &lin_full, &masks_full, q, None)?);
    }
    let tglob = PartialAction::strict_global(group.clone(), mon_full.clone(), actors)?;
    let ideal_obs: Vec<Ob> = masks_full
        .iter()
        .enumerate()
        .filter(|(_, &m)| m & support == m)
        .map(|(i, _)| Ob(i as u32))
        .collect();
    let ideal = crate::monoidal::Ideal {
        sub: Subcategory::full_on(&mon_full.base, ideal_obs),
        side: Side::Both,
    };
    let (restricted, _, mut report) = restrict_global(&tglob, &ideal)?;

    // rebuild the restricted ambient from its own presentation so the linear
    // structure lives on the same Arc'd category
    let sub_pres = fusion_presentation(support, p);
    let (mon_i, lin_i) = enumerate_linear_monoidal(&sub_pres, 500_000)?;
    let mon_i = Arc::new(mon_i);
    if *mon_i.base != *restricted.cat() {
        return Err(CatError::MalformedSpec(
            "restricted fusion ambient does not match its presentation".into(),
        ));
    }
    let action = PartialAction {
        group,
        ambient: mon_i,
        domains: restricted.domains,
        actors: restricted.actors,
        gamma: restricted.gamma,
        u: restricted.u,
    };
    report.absorb("validate", validate_partial_action(&action));
    Ok(Instance {
        name: format!("fusion(n={n}, support={}, gf{p})", mask_name(support)),
        action,
        linear: Some(Arc::new(lin_i)),
        report: report.finish(),
    })
}

/// Product-ring skeleton `k^n`: objects are coordinate subsets, morphisms are
/// multiplication maps, acted on by coordinate permutations on the domains of
/// an idempotent family.
pub fn gen_ring_instance(
    n: usize,
    group: FinGroup,
    perms: &[Perm],
    idem_supports: &[u32],
    p: u32,
) -> Result<Instance> {
    let universe = (1u32 << n) - 1;
    if perms.len() != group.order() || idem_supports.len() != group.order() {
        return Err(CatError::InvalidIdempotentFamily(
            "per-element tables sized differently from the group".into(),
        ));
    }
    if idem_supports[group.e.0 as usize] != universe {
        return Err(CatError::InvalidIdempotentFamily("1_e must be the full ring".into()));
    }
    if perms[group.e.0 as usize] != Perm::identity(n) {
        return Err(CatError::InvalidIdempotentFamily("e must act trivially".into()));
    }
    // unital partial-action axioms on the coordinate supports
    for g in group.elements() {
        for h in group.elements() {
            let gi = group.inv(g);
            let gh = group.mul(g, h);
            let lhs = perms[g.0 as usize]
                .apply_mask(idem_supports[gi.0 as usize] & idem_supports[h.0 as usize]);
            let rhs = idem_supports[g.0 as usize] & idem_supports[gh.0 as usize];
            if lhs != rhs {
                return Err(CatError::InvalidIdempotentFamily(format!(
                    "σ_{}({} ∩ {}) = {} but 1_{} ∩ 1_{} = {}",
                    group.name(g),
                    mask_name(idem_supports[gi.0 as usize]),
                    mask_name(idem_supports[h.0 as usize]),
                    mask_name(lhs),
                    group.name(g),
                    group.name(gh),
                    mask_name(rhs)
                )));
            }
        }
    }
    let pres = fusion_presentation(universe, p);
    let (mon, lin) = enumerate_linear_monoidal(&pres, 500_000)?;
    let mon = Arc::new(mon);
    let masks = masks::submasks(universe);
    let c = mon.base.clone();
    let mut domains = Vec::new();
    for g in group.elements() {
        let objs: Vec<Ob> = masks
            .iter()
            .enumerate()
            .filter(|(_, &m)| m & idem_supports[g.0 as usize] == m)
            .map(|(i, _)| Ob(i as u32))
            .collect();
        domains.push(crate::monoidal::Ideal {
            sub: Subcategory::full_on(&c, objs),
            side: Side::Both,
        });
    }
    let mut actors = Vec::new();
    for g in group.elements() {
        let gi = group.inv(g);
        let dom = &domains[gi.0 as usize].sub;
        actors.push(perm_actor_on_supports(
            &mon,
            &lin,
            &masks,
            &perms[g.0 as usize],
            Some(dom),
        )?);
    }
    let mut gamma = BTreeMap::new();
    for g in group.elements() {
        for h in group.elements() {
            let gh = group.mul(g, h);
            let hi = group.inv(h);
            let ghi = group.inv(gh);
            for &x in domains[hi.0 as usize]
                .sub
                .objects
                .intersection(&domains[ghi.0 as usize].sub.objects)
            {
                let via = actors[g.0 as usize]
                    .functor
                    .on_ob(actors[h.0 as usize].functor.on_ob(x)?)?;
                let direct = actors[gh.0 as usize].functor.on_ob(x)?;
                if via != direct {
                    return Err(CatError::InvalidIdempotentFamily(
                        "actors do not compose strictly on their domains".into(),
                    ));
                }
                gamma.insert((g, h, x), c.identity(direct));
            }
        }
    }
    let u: BTreeMap<Ob, Mor> = c.obs().map(|x| (x, c.identity(x))).collect();
    let action = PartialAction {
        group,
        ambient: mon,
        domains,
        actors,
        gamma,
        u,
    };
    let report = validate_partial_action(&action);
    Ok(Instance {
        name: format!("ring(n={n}, gf{p})"),
        action,
        linear: Some(Arc::new(lin)),
        report,
    })
}

/// Free GF(p)-linearization of a (typically thin) partial action, carrying
/// the domains, actors, and coherence data across.
pub fn linearize_action(
    t: &PartialAction,
    p: u32,
    budget: usize,
) -> Result<(PartialAction, Arc<LinearCategory>)> {
    let (mon, lin, map) = linearize_monoidal(&t.ambient, p, budget)?;
    let mon = Arc::new(mon);
    let old = t.cat();
    let domains: Vec<crate::monoidal::Ideal> = t
        .domains
        .iter()
        .map(|d| crate::monoidal::Ideal {
            sub: Subcategory::full_on(&mon.base, d.sub.objects.iter().copied()),
            side: d.side,
        })
        .collect();
    let mut actors = Vec::new();
    for g in t.group.elements() {
        let gi = t.group.inv(g);
        let old_actor = t.actor(g);
        let mut f = Functor::default();
        for (&x, &fx) in &old_actor.functor.ob {
            f.ob.insert(x, fx);
        }
        // extend linearly over the new enumerated homs of the domain
        for newm in mon.base.mors() {
            let (x, y) = (mon.base.dom(newm), mon.base.cod(newm));
            if !(domains[gi.0 as usize].sub.objects.contains(&x)
                && domains[gi.0 as usize].sub.objects.contains(&y))
            {
                continue;
            }
            let basis_old = old.hom(x, y);
            let coords = lin.coords_of(newm).to_vec();
            let (fx, fy) = (f.ob[&x], f.ob[&y]);
            let mut out = vec![0u32; lin.dim(fx, fy)];
            for (k, &c0) in coords.iter().enumerate() {
                if c0 == 0 {
                    continue;
                }
                let img_old = old_actor.functor.on_mor(basis_old[k])?;
                let img_new = map[&img_old];
                let img_coords = lin.coords_of(img_new);
                for (i, &ic) in img_coords.iter().enumerate() {
                    out[i] = (out[i] + ic * c0) % p;
                }
            }
            f.mor.insert(newm, lin.from_coords(fx, fy, &out)?);
        }
        let j = old_actor
            .j
            .iter()
            .map(|(&(x, y), &m)| ((x, y), map[&m]))
            .collect();
        actors.push(SemigroupalFunctor {
            functor: f,
            j,
            j0: None,
        });
    }
    let gamma = t
        .gamma
        .iter()
        .map(|(&k, &m)| (k, map[&m]))
        .collect();
    let u = t.u.iter().map(|(&x, &m)| (x, map[&m])).collect();
    let action = PartialAction {
        group: t.group.clone(),
        ambient: mon,
        domains,
        actors,
        gamma,
        u,
    };
    Ok((action, Arc::new(lin)))
}

/// `INST-TOP`: discrete 3-point space, Z2 swapping points 1 and 2,
/// restricted to the open set {1,3}.
pub fn inst_top() -> Instance {
    gen_topology_instance(
        3,
        &discrete_opens(3),
        &Perm::from_cycles(3, &[vec![1, 2]]).unwrap(),
        0b101,
    )
    .expect("inst-top generates")
}

/// `INST-TOP` linearized over GF(2), for the additive constructions.
pub fn inst_top_linear() -> Instance {
    let base = inst_top();
    let (action, lin) = linearize_action(&base.action, 2, 100_000).expect("linearize inst-top");
    let report = validate_partial_action(&action);
    Instance {
        name: format!("{} ⊗ GF(2)", base.name),
        action,
        linear: Some(lin),
        report,
    }
}

/// `INST-FUS`: 3 orthogonal simples, Z3 cycling them, restricted to the
/// ideal of supports inside {1,2}, over GF(2).
pub fn inst_fus() -> Instance {
    gen_fusion_instance(3, &Perm::from_cycles(3, &[vec![1, 2, 3]]).unwrap(), 0b011, 2)
        .expect("inst-fus generates")
}

/// `INST-RING`: k^2 with Z2, 1_g supported on coordinate {2}. The group
/// relabels nothing (the compatibility axioms force the identity permutation
/// for this idempotent family).
pub fn inst_ring() -> Instance {
    let group = FinGroup::cyclic(2);
    gen_ring_instance(
        2,
        group,
        &[Perm::identity(2), Perm::identity(2)],
        &[0b11, 0b10],
        2,
    )
    .expect("inst-ring generates")
}

/// The trivial group acting on the one-object one-morphism category.
pub fn trivial_instance() -> Instance {
    let mut b = crate::fincat::CatBuilder::new();
    let x = b.add_object("*");
    let id = b.add_morphism(x, x, "id");
    b.set_identity(x, id);
    b.set_compose(id, id, id);
    let cat = Arc::new(b.build().unwrap());
    let mon = Arc::new(
        MonoidalStructure::new(
            cat,
            &BTreeMap::from([((x, x), x)]),
            &BTreeMap::from([((id, id), id)]),
            Some(x),
        )
        .unwrap(),
    );
    let action = PartialAction::strict_global(
        FinGroup::trivial(),
        mon.clone(),
        vec![SemigroupalFunctor::identity(&mon)],
    )
    .unwrap();
    let report = validate_partial_action(&action);
    Instance {
        name: "trivial".into(),
        action,
        linear: None,
        report,
    }
}

/// Resolve a `corpus:` name to a built-in instance.
pub fn by_name(name: &str) -> Result<Instance> {
    match name {
        "inst-top" => Ok(inst_top()),
        "inst-top-linear" => Ok(inst_top_linear()),
        "inst-fus" => Ok(inst_fus()),
        "inst-ring" => Ok(inst_ring()),
        "trivial" => Ok(trivial_instance()),
        other => Err(CatError::MalformedSpec(format!(
            "unknown corpus instance {other}; known: inst-top, inst-top-linear, inst-fus, inst-ring, trivial"
        ))),
    }
}

/// A parameter sweep across all three generators, every output validated.
pub fn sweep() -> Vec<Instance> {
    let mut out = vec![
        trivial_instance(),
        inst_top(),
        inst_fus(),
        inst_ring(),
    ];
    // topologies
    let swap12 = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
    out.push(gen_topology_instance(3, &discrete_opens(3), &Perm::identity(3), 0b101).unwrap());
    out.push(gen_topology_instance(3, &discrete_opens(3), &swap12, 0b111).unwrap());
    out.push(gen_topology_instance(1, &discrete_opens(1), &Perm::identity(1), 0b1).unwrap());
    out.push(
        gen_topology_instance(
            4,
            &discrete_opens(4),
            &Perm::from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap(),
            0b0111,
        )
        .unwrap(),
    );
    // a non-discrete topology on 3 points: opens {}, {1}, {1,2}, {1,2,3}
    out.push(
        gen_topology_instance(3, &[0b000, 0b001, 0b011, 0b111], &Perm::identity(3), 0b011).unwrap(),
    );
    // fusion variants
    let swap2 = Perm::from_cycles(2, &[vec![1, 2]]).unwrap();
    out.push(gen_fusion_instance(2, &swap2, 0b01, 2).unwrap());
    out.push(gen_fusion_instance(2, &swap2, 0b11, 2).unwrap());
    out.push(gen_fusion_instance(3, &Perm::from_cycles(3, &[vec![1, 2, 3]]).unwrap(), 0b111, 2).unwrap());
    out.push(gen_fusion_instance(3, &Perm::from_cycles(3, &[vec![1, 2]]).unwrap(), 0b011, 3).unwrap());
    // ring variants
    out.push(
        gen_ring_instance(
            2,
            FinGroup::trivial(),
            &[Perm::identity(2)],
            &[0b11],
            2,
        )
        .unwrap(),
    );
    out.push(
        gen_ring_instance(
            3,
            FinGroup::cyclic(2),
            &[Perm::identity(3), Perm::from_cycles(3, &[vec![1, 2]]).unwrap()],
            &[0b111, 0b011],
            2,
        )
        .unwrap(),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inst_top_matches_hand_computation() {
        let inst = inst_top();
        inst.report.expect_pass("inst-top");
        let t = &inst.action;
        // restricted ambient: opens of {1,3}
        assert_eq!(t.cat().object_count(), 4);
        // oracle: C_g = {A ⊆ Y : A and swap(A) both open in Y} = {∅, {3}}
        let g = Gel(1);
        let names: Vec<&str> = t
            .domain(g)
            .sub
            .obs()
            .iter()
            .map(|&o| t.cat().ob_name(o))
            .collect();
        assert_eq!(names, vec!["{}", "{3}"]);
        // T_g fixes both objects
        for &x in &t.domain(g).sub.obs() {
            assert_eq!(t.t_ob(g, x).unwrap(), x);
        }
    }

    #[test]
    fn inst_fus_matches_support_arithmetic() {
        let inst = inst_fus();
        inst.report.expect_pass("inst-fus");
        let t = &inst.action;
        assert_eq!(t.cat().object_count(), 4);
        assert_eq!(t.cat().morphism_count(), 25);
        let (g, g2) = (Gel(1), Gel(2));
        let names = |g: Gel| -> Vec<String> {
            t.domain(g)
                .sub
                .obs()
                .iter()
                .map(|&o| t.cat().ob_name(o).to_string())
                .collect()
        };
        assert_eq!(names(g), vec!["{}", "{2}"]);
        assert_eq!(names(g2), vec!["{}", "{1}"]);
        // T_g : C_{g²} -> C_g sends M1 to M2
        let m1 = t.cat().obs().find(|&o| t.cat().ob_name(o) == "{1}").unwrap();
        let m2 = t.cat().obs().find(|&o| t.cat().ob_name(o) == "{2}").unwrap();
        assert_eq!(t.t_ob(g, m1).unwrap(), m2);
    }

    #[test]
    fn inst_ring_validates_with_expected_domains() {
        let inst = inst_ring();
        inst.report.expect_pass("inst-ring");
        let t = &inst.action;
        assert_eq!(t.cat().object_count(), 4, "4-object skeleton");
        let g = Gel(1);
        let names: Vec<&str> = t
            .domain(g)
            .sub
            .obs()
            .iter()
            .map(|&o| t.cat().ob_name(o))
            .collect();
        assert_eq!(names, vec!["{}", "{2}"]);
    }

    #[test]
    fn invalid_ring_family_is_rejected() {
        let group = FinGroup::cyclic(2);
        let swap = Perm::from_cycles(2, &[vec![1, 2]]).unwrap();
        let err = gen_ring_instance(2, group, &[Perm::identity(2), swap], &[0b11, 0b10], 2)
            .unwrap_err();
        assert!(matches!(err, CatError::InvalidIdempotentFamily(_)));
    }

    #[test]
    fn non_continuous_permutation_is_rejected() {
        // opens {}, {1}, {1,2,3}: the swap 1<->3 does not preserve {1}
        let err = gen_topology_instance(
            3,
            &[0b000, 0b001, 0b111],
            &Perm::from_cycles(3, &[vec![1, 3]]).unwrap(),
            0b001,
        )
        .unwrap_err();
        assert!(matches!(err, CatError::NotContinuous(_)));
    }

    #[test]
    fn linearized_top_still_validates() {
        let inst = inst_top_linear();
        inst.report.expect_pass("linearized inst-top");
        assert_eq!(inst.action.cat().morphism_count(), 25);
    }

    #[test]
    fn sweep_instances_all_validate() {
        for inst in sweep() {
            assert!(
                inst.report.passed(),
                "{} failed: {:?}",
                inst.name,
                inst.report.failures.first()
            );
        }
    }
}

#[cfg(test)]
mod determinism_tests {
    use super::*;
    use crate::specfile::{encode_action, Kind};

    #[test]
    fn generation_is_byte_deterministic() {
        for (a, b) in [
            (inst_top(), inst_top()),
            (inst_fus(), inst_fus()),
            (inst_ring(), inst_ring()),
        ] {
            let fa = encode_action(&a.action, a.linear.as_deref(), Kind::Action).save();
            let fb = encode_action(&b.action, b.linear.as_deref(), Kind::Action).save();
            assert_eq!(fa, fb, "{} generates identical bytes", a.name);
        }
    }
}
