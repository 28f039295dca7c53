//! Small hand-built fixtures shared by unit tests.

use std::collections::BTreeMap;

use crate::fincat::{CatBuilder, FinCategory, Mor, Ob};

/// Thin category of the given bitmask-sets ordered by inclusion.
/// Returns (category, mask -> object, (dom mask, cod mask) -> morphism).
pub fn poset_category(
    masks: &[u32],
) -> (FinCategory, BTreeMap<u32, Ob>, BTreeMap<(u32, u32), Mor>) {
    let mut b = CatBuilder::new();
    let mut obs = BTreeMap::new();
    for &m in masks {
        obs.insert(m, b.add_object(mask_name(m)));
    }
    let mut incl = BTreeMap::new();
    for &a in masks {
        for &bm in masks {
            if a & bm == a {
                let f = b.add_morphism(obs[&a], obs[&bm], format!("{}<={}", mask_name(a), mask_name(bm)));
                incl.insert((a, bm), f);
            }
        }
    }
    for &m in masks {
        b.set_identity(obs[&m], incl[&(m, m)]);
    }
    for (&(a1, b1), &f) in &incl {
        for (&(a2, b2), &g) in &incl {
            if b1 == a2 {
                b.set_compose(g, f, incl[&(a1, b2)]);
            }
        }
    }
    (b.build().unwrap(), obs, incl)
}

pub fn mask_name(m: u32) -> String {
    let elems: Vec<String> = (0..32)
        .filter(|i| m & (1 << i) != 0)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", elems.join(","))
}

/// Thin monoidal category of the given bitmask-sets under intersection.
/// The unit, if requested, is the top mask (which must be present).
pub fn opens_monoidal(
    masks: &[u32],
    unit: Option<u32>,
) -> (
    crate::monoidal::MonoidalStructure,
    BTreeMap<u32, Ob>,
    BTreeMap<(u32, u32), Mor>,
) {
    let (c, obs, incl) = poset_category(masks);
    let mut obt = BTreeMap::new();
    for &a in masks {
        for &b in masks {
            obt.insert((obs[&a], obs[&b]), obs[&(a & b)]);
        }
    }
    let mut mort = BTreeMap::new();
    for (&(a1, b1), &f) in &incl {
        for (&(a2, b2), &g) in &incl {
            mort.insert((f, g), incl[&(a1 & a2, b1 & b2)]);
        }
    }
    let m = crate::monoidal::MonoidalStructure::new(
        std::sync::Arc::new(c),
        &obt,
        &mort,
        unit.map(|u| obs[&u]),
    )
    .unwrap();
    (m, obs, incl)
}

pub fn single_object_category() -> FinCategory {
    let mut b = CatBuilder::new();
    let x = b.add_object("*");
    let id = b.add_morphism(x, x, "id");
    b.set_identity(x, id);
    b.set_compose(id, id, id);
    b.build().unwrap()
}
