//! Strict semigroupal/monoidal structure on finite categories, semigroupal
//! functors and their morphisms, ideals, and isomorphism closure.
//!
//! Only strict structures are representable: the tensor tables must satisfy
//! associativity (and unit laws, when a unit is declared) as table equalities.
//! Coherence data of the constructions built on top (J, gamma, u, sigma, the
//! smash associator) stays non-trivial.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::fincat::{
    validate_functor_on, validate_natural_transformation_on, FinCategory, Functor, Mor,
    NatTransformation, Ob,
};
use crate::report::{CatError, DiagramReport, Result};

/// Strict tensor tables over a base category, with an optional unit object.
#[derive(Debug, Clone)]
pub struct MonoidalStructure {
    pub base: Arc<FinCategory>,
    tensor_ob: Vec<u32>,
    tensor_mor: Vec<u32>,
    pub unit: Option<Ob>,
}

impl MonoidalStructure {
    pub fn new(
        base: Arc<FinCategory>,
        ob_table: &BTreeMap<(Ob, Ob), Ob>,
        mor_table: &BTreeMap<(Mor, Mor), Mor>,
        unit: Option<Ob>,
    ) -> Result<Self> {
        let n_ob = base.object_count();
        let n_mor = base.morphism_count();
        let mut tensor_ob = vec![u32::MAX; n_ob * n_ob];
        for (&(x, y), &xy) in ob_table {
            if x.0 as usize >= n_ob || y.0 as usize >= n_ob || xy.0 as usize >= n_ob {
                return Err(CatError::MalformedSpec(format!(
                    "tensor_obj entry ({x},{y})->{xy} out of range"
                )));
            }
            tensor_ob[x.0 as usize * n_ob + y.0 as usize] = xy.0;
        }
        if tensor_ob.contains(&u32::MAX) {
            return Err(CatError::MalformedSpec("tensor_obj table not total".into()));
        }
        let mut tensor_mor = vec![u32::MAX; n_mor * n_mor];
        for (&(f, g), &fg) in mor_table {
            if f.0 as usize >= n_mor || g.0 as usize >= n_mor || fg.0 as usize >= n_mor {
                return Err(CatError::MalformedSpec(format!(
                    "tensor_mor entry ({f},{g})->{fg} out of range"
                )));
            }
            tensor_mor[f.0 as usize * n_mor + g.0 as usize] = fg.0;
        }
        if tensor_mor.contains(&u32::MAX) {
            return Err(CatError::MalformedSpec("tensor_mor table not total".into()));
        }
        if let Some(u) = unit {
            if u.0 as usize >= n_ob {
                return Err(CatError::MalformedSpec("unit object out of range".into()));
            }
        }
        Ok(Self {
            base,
            tensor_ob,
            tensor_mor,
            unit,
        })
    }

    pub fn ob(&self, x: Ob, y: Ob) -> Ob {
        Ob(self.tensor_ob[x.0 as usize * self.base.object_count() + y.0 as usize])
    }

    pub fn mor(&self, f: Mor, g: Mor) -> Mor {
        Mor(self.tensor_mor[f.0 as usize * self.base.morphism_count() + g.0 as usize])
    }

    /// `f ⊗ id_y`.
    pub fn mor_id(&self, f: Mor, y: Ob) -> Mor {
        self.mor(f, self.base.identity(y))
    }

    /// `id_x ⊗ f`.
    pub fn id_mor(&self, x: Ob, f: Mor) -> Mor {
        self.mor(self.base.identity(x), f)
    }

    /// Strict fold of a non-empty word of objects.
    pub fn ob_word(&self, word: &[Ob]) -> Ob {
        let mut it = word.iter().copied();
        let first = it.next().expect("empty tensor word");
        it.fold(first, |acc, x| self.ob(acc, x))
    }

    /// Strict fold of a non-empty word of morphisms.
    pub fn mor_word(&self, word: &[Mor]) -> Mor {
        let mut it = word.iter().copied();
        let first = it.next().expect("empty tensor word");
        it.fold(first, |acc, f| self.mor(acc, f))
    }
}

/// Check all strictness invariants: associativity of the object table,
/// endpoint compatibility, interchange, identities, and unit laws when a unit
/// is declared.
pub fn validate_semigroupal(m: &MonoidalStructure) -> DiagramReport {
    let c = &*m.base;
    let mut rep = DiagramReport::new();
    for x in c.obs() {
        for y in c.obs() {
            for z in c.obs() {
                if m.ob(m.ob(x, y), z) != m.ob(x, m.ob(y, z)) {
                    rep.fail(
                        "tensor-associativity",
                        format!("({x} ⊗ {y}) ⊗ {z} != {x} ⊗ ({y} ⊗ {z})"),
                    );
                }
            }
        }
    }
    for f in c.mors() {
        for g in c.mors() {
            let fg = m.mor(f, g);
            if c.dom(fg) != m.ob(c.dom(f), c.dom(g)) || c.cod(fg) != m.ob(c.cod(f), c.cod(g)) {
                rep.fail(
                    "tensor-endpoints",
                    format!("{f} ⊗ {g} = {fg} has wrong endpoints"),
                );
            }
        }
    }
    if !rep.passed() {
        return rep.finish();
    }
    for x in c.obs() {
        for y in c.obs() {
            if m.mor(c.identity(x), c.identity(y)) != c.identity(m.ob(x, y)) {
                rep.fail("tensor-identities", format!("id_{x} ⊗ id_{y} != id"));
            }
        }
    }
    // interchange, which also gives functoriality of ⊗
    for f in c.mors() {
        for fp in c.mors() {
            let Some(ffp) = c.compose(f, fp) else { continue };
            for g in c.mors() {
                for gp in c.mors() {
                    let Some(ggp) = c.compose(g, gp) else { continue };
                    let lhs = m.mor(ffp, ggp);
                    let rhs = c.compose(m.mor(f, g), m.mor(fp, gp));
                    if rhs != Some(lhs) {
                        rep.fail(
                            "interchange",
                            format!("(f∘f')⊗(g∘g') != (f⊗g)∘(f'⊗g') at f={f},f'={fp},g={g},g'={gp}"),
                        );
                    }
                }
            }
        }
    }
    if let Some(u) = m.unit {
        for x in c.obs() {
            if m.ob(u, x) != x || m.ob(x, u) != x {
                rep.fail("unit-objects", format!("unit not strict at {x}"));
            }
        }
        for f in c.mors() {
            if m.id_mor(u, f) != f || m.mor_id(f, u) != f {
                rep.fail("unit-morphisms", format!("id_1 ⊗ {f} or {f} ⊗ id_1 != {f}"));
            }
        }
    }
    rep.finish()
}

/// A semigroupal functor `(F, J)`, with optional unit comparison `J0`.
#[derive(Debug, Clone, Default)]
pub struct SemigroupalFunctor {
    pub functor: Functor,
    /// `J_{X,Y} : F(X) ⊗ F(Y) -> F(X ⊗ Y)`.
    pub j: BTreeMap<(Ob, Ob), Mor>,
    /// `J0 : 1' -> F(1)`.
    pub j0: Option<Mor>,
}

impl SemigroupalFunctor {
    /// Identity functor with identity coherence.
    pub fn identity(m: &MonoidalStructure) -> Self {
        let c = &*m.base;
        let mut j = BTreeMap::new();
        for x in c.obs() {
            for y in c.obs() {
                j.insert((x, y), c.identity(m.ob(x, y)));
            }
        }
        SemigroupalFunctor {
            functor: Functor::identity(c),
            j,
            j0: m.unit.map(|u| c.identity(u)),
        }
    }

    pub fn j_at(&self, x: Ob, y: Ob) -> Result<Mor> {
        self.j
            .get(&(x, y))
            .copied()
            .ok_or_else(|| CatError::ComponentShape(format!("no J component at ({x},{y})")))
    }
}

/// Validate a semigroupal functor between (sub)structures of `src` and `dst`,
/// on the given domain objects/morphisms (which must form a ⊗-closed
/// subcategory of the source).
pub fn validate_semigroupal_functor_on(
    src: &MonoidalStructure,
    dst: &MonoidalStructure,
    sf: &SemigroupalFunctor,
    dom_obs: &[Ob],
    dom_mors: &[Mor],
) -> DiagramReport {
    let mut rep = DiagramReport::new();
    let f = &sf.functor;
    rep.absorb(
        "functor",
        validate_functor_on(&src.base, &dst.base, f, dom_obs, dom_mors),
    );
    if !rep.passed() {
        return rep.finish();
    }
    let dc = &*dst.base;
    // J components: shape, isomorphism, naturality
    for &x in dom_obs {
        for &y in dom_obs {
            let Some(&jxy) = sf.j.get(&(x, y)) else {
                rep.fail("ComponentShapeError", format!("no J component at ({x},{y})"));
                continue;
            };
            let want_dom = dst.ob(f.ob[&x], f.ob[&y]);
            let Some(&fxy) = f.ob.get(&src.ob(x, y)) else {
                rep.fail("domain-tensor-closure", format!("F undefined at {x} ⊗ {y}"));
                continue;
            };
            if dc.dom(jxy) != want_dom || dc.cod(jxy) != fxy {
                rep.fail(
                    "ComponentShapeError",
                    format!("J at ({x},{y}) is {}", dc.witness(jxy)),
                );
                continue;
            }
            if !dc.is_iso(jxy) {
                rep.fail("NotIsomorphism", format!("J component at ({x},{y})"));
            }
        }
    }
    if !rep.passed() {
        return rep.finish();
    }
    for &mf in dom_mors {
        for &mg in dom_mors {
            let (x, y) = (src.base.dom(mf), src.base.dom(mg));
            let (xp, yp) = (src.base.cod(mf), src.base.cod(mg));
            let lhs = dc
                .compose(sf.j[&(xp, yp)], dst.mor(f.mor[&mf], f.mor[&mg]))
                .expect("J naturality lhs");
            let rhs = dc
                .compose(f.mor[&src.mor(mf, mg)], sf.j[&(x, y)])
                .expect("J naturality rhs");
            if lhs != rhs {
                rep.fail("J-naturality", format!("at morphisms ({mf},{mg})"));
            }
        }
    }
    // hexagon, in strict form
    for &x in dom_obs {
        for &y in dom_obs {
            for &z in dom_obs {
                let fz = f.ob[&z];
                let fx = f.ob[&x];
                let lhs = dc
                    .compose(sf.j[&(src.ob(x, y), z)], dst.mor_id(sf.j[&(x, y)], fz))
                    .expect("hexagon lhs");
                let rhs = dc
                    .compose(sf.j[&(x, src.ob(y, z))], dst.id_mor(fx, sf.j[&(y, z)]))
                    .expect("hexagon rhs");
                if lhs != rhs {
                    rep.fail("J-hexagon", format!("at ({x},{y},{z})"));
                }
            }
        }
    }
    // unit squares, against strict ambient unitors
    if let (Some(j0), Some(u_src), Some(u_dst)) = (sf.j0, src.unit, dst.unit) {
        if dc.dom(j0) != u_dst || f.ob.get(&u_src) != Some(&dc.cod(j0)) {
            rep.fail("ComponentShapeError", format!("J0 is {}", dc.witness(j0)));
        } else if !dc.is_iso(j0) {
            rep.fail("NotIsomorphism", "J0");
        } else {
            for &x in dom_obs {
                let fx = f.ob[&x];
                let left = dc
                    .compose(sf.j[&(u_src, x)], dst.mor_id(j0, fx))
                    .expect("unit square l");
                if left != dc.identity(fx) {
                    rep.fail("J0-square-l", format!("at {x}"));
                }
                let right = dc
                    .compose(sf.j[&(x, u_src)], dst.id_mor(fx, j0))
                    .expect("unit square r");
                if right != dc.identity(fx) {
                    rep.fail("J0-square-r", format!("at {x}"));
                }
            }
        }
    }
    rep.finish()
}

pub fn validate_semigroupal_functor(
    src: &MonoidalStructure,
    dst: &MonoidalStructure,
    sf: &SemigroupalFunctor,
) -> DiagramReport {
    let obs: Vec<Ob> = src.base.obs().collect();
    let mors: Vec<Mor> = src.base.mors().collect();
    validate_semigroupal_functor_on(src, dst, sf, &obs, &mors)
}

/// Validate `eta` as a morphism of semigroupal functors `sf => tf` on a domain.
pub fn validate_functor_morphism_on(
    src: &MonoidalStructure,
    dst: &MonoidalStructure,
    eta: &NatTransformation,
    sf: &SemigroupalFunctor,
    tf: &SemigroupalFunctor,
    dom_obs: &[Ob],
    dom_mors: &[Mor],
) -> DiagramReport {
    let mut rep = DiagramReport::new();
    rep.absorb(
        "naturality",
        validate_natural_transformation_on(
            &src.base, &dst.base, &sf.functor, &tf.functor, eta, dom_obs, dom_mors,
        ),
    );
    if !rep.passed() {
        return rep.finish();
    }
    let dc = &*dst.base;
    for &x in dom_obs {
        for &y in dom_obs {
            let xy = src.ob(x, y);
            let (Ok(ex), Ok(ey), Ok(exy)) = (eta.at(x), eta.at(y), eta.at(xy)) else {
                rep.fail("ComponentShapeError", format!("missing component near ({x},{y})"));
                continue;
            };
            let lhs = dc
                .compose(tf.j[&(x, y)], dst.mor(ex, ey))
                .expect("square-J-eta lhs");
            let rhs = dc.compose(exy, sf.j[&(x, y)]).expect("square-J-eta rhs");
            if lhs != rhs {
                rep.fail("square-J-eta", format!("at ({x},{y})"));
            }
        }
    }
    if let (Some(j0s), Some(j0t), Some(us)) = (sf.j0, tf.j0, src.unit) {
        if let Ok(eu) = eta.at(us) {
            if dc.compose(eu, j0s) != Some(j0t) {
                rep.fail("tri-vf-eta", "unit triangle");
            }
        }
    }
    rep.finish()
}

/// Validate `eta` as a morphism of semigroupal functors over the whole
/// source category.
pub fn validate_functor_morphism(
    src: &MonoidalStructure,
    dst: &MonoidalStructure,
    eta: &NatTransformation,
    sf: &SemigroupalFunctor,
    tf: &SemigroupalFunctor,
) -> DiagramReport {
    let obs: Vec<Ob> = src.base.obs().collect();
    let mors: Vec<Mor> = src.base.mors().collect();
    validate_functor_morphism_on(src, dst, eta, sf, tf, &obs, &mors)
}

/// A subcategory presented by explicit object and morphism sets.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subcategory {
    pub objects: BTreeSet<Ob>,
    pub morphisms: BTreeSet<Mor>,
}

impl Subcategory {
    /// The full subcategory on the given objects.
    pub fn full_on(c: &FinCategory, objects: impl IntoIterator<Item = Ob>) -> Self {
        let objects: BTreeSet<Ob> = objects.into_iter().collect();
        let morphisms = c
            .mors()
            .filter(|&f| objects.contains(&c.dom(f)) && objects.contains(&c.cod(f)))
            .collect();
        Subcategory { objects, morphisms }
    }

    pub fn whole(c: &FinCategory) -> Self {
        Subcategory {
            objects: c.obs().collect(),
            morphisms: c.mors().collect(),
        }
    }

    pub fn obs(&self) -> Vec<Ob> {
        self.objects.iter().copied().collect()
    }

    pub fn mors(&self) -> Vec<Mor> {
        self.morphisms.iter().copied().collect()
    }

    pub fn contains_ob(&self, x: Ob) -> bool {
        self.objects.contains(&x)
    }

    /// Closure under identities, composition, and endpoint membership.
    pub fn validate(&self, c: &FinCategory) -> DiagramReport {
        let mut rep = DiagramReport::new();
        for &x in &self.objects {
            if !self.morphisms.contains(&c.identity(x)) {
                rep.fail("subcat-identities", format!("id of {x} missing"));
            }
        }
        for &f in &self.morphisms {
            if !self.objects.contains(&c.dom(f)) || !self.objects.contains(&c.cod(f)) {
                rep.fail("subcat-endpoints", format!("{} has endpoints outside", c.witness(f)));
            }
        }
        for &f in &self.morphisms {
            for &g in &self.morphisms {
                if let Some(gf) = c.compose(g, f) {
                    if !self.morphisms.contains(&gf) {
                        rep.fail("subcat-composition", format!("{g} . {f} = {gf} missing"));
                    }
                }
            }
        }
        rep.finish()
    }

    pub fn intersect(&self, other: &Subcategory) -> Subcategory {
        Subcategory {
            objects: self.objects.intersection(&other.objects).copied().collect(),
            morphisms: self.morphisms.intersection(&other.morphisms).copied().collect(),
        }
    }
}

/// Which sides an ideal is closed under tensoring on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
    Both,
}

/// A subcategory marked as a (left/right/two-sided) ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    pub sub: Subcategory,
    pub side: Side,
}

/// Least subcategory closed under ambient isomorphisms containing `s`.
pub fn iso_closure(m: &MonoidalStructure, s: &Subcategory) -> Subcategory {
    let c = &*m.base;
    let mut objects = s.objects.clone();
    let mut morphisms = s.morphisms.clone();
    for &x in &objects.clone() {
        morphisms.insert(c.identity(x));
    }
    loop {
        let mut changed = false;
        // isomorphisms out of member objects join, along with their targets
        for x in objects.clone() {
            for f in c.mors() {
                if c.dom(f) == x && c.is_iso(f) {
                    changed |= objects.insert(c.cod(f));
                    changed |= morphisms.insert(f);
                    changed |= morphisms.insert(c.find_inverse(f).unwrap());
                }
            }
        }
        // composition closure
        let snapshot: Vec<Mor> = morphisms.iter().copied().collect();
        for &f in &snapshot {
            for &g in &snapshot {
                if let Some(gf) = c.compose(g, f) {
                    changed |= morphisms.insert(gf);
                }
            }
        }
        if !changed {
            break;
        }
    }
    Subcategory { objects, morphisms }
}

/// Is `s` closed under isomorphisms and tensoring by arbitrary ambient
/// objects on the given side(s)?
pub fn is_ideal(m: &MonoidalStructure, s: &Subcategory, side: Side) -> bool {
    ideal_violation(m, s, side).is_none()
}

/// First violation found, for diagnostics.
pub fn ideal_violation(m: &MonoidalStructure, s: &Subcategory, side: Side) -> Option<String> {
    let c = &*m.base;
    if !s.validate(c).passed() {
        return Some("not a subcategory".into());
    }
    let closed = iso_closure(m, s);
    if &closed != s {
        return Some("not closed under isomorphisms".into());
    }
    for &x in &s.objects {
        for y in c.obs() {
            if matches!(side, Side::Left | Side::Both) && !s.objects.contains(&m.ob(y, x)) {
                return Some(format!("{} ⊗ {} escapes (left)", c.ob_name(y), c.ob_name(x)));
            }
            if matches!(side, Side::Right | Side::Both) && !s.objects.contains(&m.ob(x, y)) {
                return Some(format!("{} ⊗ {} escapes (right)", c.ob_name(x), c.ob_name(y)));
            }
        }
    }
    None
}

/// Intersection of two ideals over the same ambient.
pub fn intersect_ideals(m: &MonoidalStructure, a: &Ideal, b: &Ideal) -> Result<Ideal> {
    let side = match (a.side, b.side) {
        (Side::Both, Side::Both) => Side::Both,
        (Side::Left, Side::Left) => Side::Left,
        (Side::Right, Side::Right) => Side::Right,
        _ => Side::Both,
    };
    let sub = a.sub.intersect(&b.sub);
    if let Some(v) = ideal_violation(m, &sub, side) {
        return Err(CatError::MalformedSpec(format!(
            "intersection of ideals is not an ideal: {v}"
        )));
    }
    Ok(Ideal { sub, side })
}

/// Fully faithful + essentially surjective check for `f` from the subcategory
/// `(dom_obs, dom_mors)` of `src` onto `(cod_obs, cod_mors)` of `dst`.
pub fn check_equivalence_on(
    src: &FinCategory,
    dst: &FinCategory,
    f: &Functor,
    dom: &Subcategory,
    cod: &Subcategory,
) -> std::result::Result<(), String> {
    for &x in &dom.objects {
        for &y in &dom.objects {
            let hom_src: Vec<Mor> = dom
                .morphisms
                .iter()
                .copied()
                .filter(|&m| src.dom(m) == x && src.cod(m) == y)
                .collect();
            let (Some(&fx), Some(&fy)) = (f.ob.get(&x), f.ob.get(&y)) else {
                return Err(format!("functor undefined at {x} or {y}"));
            };
            let hom_dst: Vec<Mor> = cod
                .morphisms
                .iter()
                .copied()
                .filter(|&m| dst.dom(m) == fx && dst.cod(m) == fy)
                .collect();
            let mut images = BTreeSet::new();
            for &m in &hom_src {
                let Some(&fm) = f.mor.get(&m) else {
                    return Err(format!("functor undefined at morphism {m}"));
                };
                if !images.insert(fm) {
                    return Err(format!("not faithful on Hom({x},{y})"));
                }
                if !hom_dst.contains(&fm) {
                    return Err(format!("image of {m} escapes the target subcategory"));
                }
            }
            if images.len() != hom_dst.len() {
                return Err(format!(
                    "not full on Hom({x},{y}): {} vs {}",
                    images.len(),
                    hom_dst.len()
                ));
            }
        }
    }
    'outer: for &z in &cod.objects {
        for &x in &dom.objects {
            let fx = f.ob[&x];
            if cod
                .morphisms
                .iter()
                .any(|&m| dst.dom(m) == fx && dst.cod(m) == z && dst.is_iso(m))
            {
                continue 'outer;
            }
        }
        return Err(format!("not essentially surjective at {z}"));
    }
    Ok(())
}

/// Image of an ideal under a semigroupal equivalence, closed under
/// isomorphisms. Asserts the equivalence (`NotEquivalence`) and that the
/// result is again an ideal, with the restriction an equivalence onto it.
pub fn image_ideal(
    src: &MonoidalStructure,
    dst: &MonoidalStructure,
    sf: &SemigroupalFunctor,
    ideal: &Ideal,
) -> Result<Ideal> {
    let whole_src = Subcategory::whole(&src.base);
    let whole_dst = Subcategory::whole(&dst.base);
    check_equivalence_on(&src.base, &dst.base, &sf.functor, &whole_src, &whole_dst)
        .map_err(CatError::NotEquivalence)?;
    let image = Subcategory {
        objects: ideal
            .sub
            .objects
            .iter()
            .map(|x| sf.functor.on_ob(*x))
            .collect::<Result<_>>()?,
        morphisms: ideal
            .sub
            .morphisms
            .iter()
            .map(|m| sf.functor.on_mor(*m))
            .collect::<Result<_>>()?,
    };
    let closed = iso_closure(dst, &image);
    if let Some(v) = ideal_violation(dst, &closed, ideal.side) {
        return Err(CatError::MalformedSpec(format!(
            "image closure is not an ideal: {v}"
        )));
    }
    check_equivalence_on(&src.base, &dst.base, &sf.functor, &ideal.sub, &closed)
        .map_err(CatError::NotEquivalence)?;
    Ok(Ideal {
        sub: closed,
        side: ideal.side,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::poset_category;

    /// Opens of {1,3} under intersection: the running thin monoidal fixture.
    pub fn opens_13() -> (MonoidalStructure, BTreeMap<u32, Ob>, BTreeMap<(u32, u32), Mor>) {
        let masks = [0b00, 0b01, 0b10, 0b11];
        let (c, obs, incl) = poset_category(&masks);
        let mut obt = BTreeMap::new();
        for &a in &masks {
            for &b in &masks {
                obt.insert((obs[&a], obs[&b]), obs[&(a & b)]);
            }
        }
        let mut mort = BTreeMap::new();
        for (&(a1, b1), &f) in &incl {
            for (&(a2, b2), &g) in &incl {
                mort.insert((f, g), incl[&(a1 & a2, b1 & b2)]);
            }
        }
        let m = MonoidalStructure::new(Arc::new(c), &obt, &mort, Some(obs[&0b11])).unwrap();
        (m, obs, incl)
    }

    #[test]
    fn intersection_of_opens_is_strict_monoidal() {
        let (m, _, _) = opens_13();
        validate_semigroupal(&m).expect_pass("O({1,3})");
    }

    #[test]
    fn one_object_trivial_tensor_passes() {
        let c = Arc::new(crate::testutil::single_object_category());
        let x = Ob(0);
        let id = c.identity(x);
        let m = MonoidalStructure::new(
            c,
            &BTreeMap::from([((x, x), x)]),
            &BTreeMap::from([((id, id), id)]),
            Some(x),
        )
        .unwrap();
        validate_semigroupal(&m).expect_pass("trivial tensor");
    }

    #[test]
    fn corrupted_tensor_table_lists_the_triple() {
        let (m, obs, _) = opens_13();
        let c = m.base.clone();
        let mut obt = BTreeMap::new();
        for x in c.obs() {
            for y in c.obs() {
                obt.insert((x, y), m.ob(x, y));
            }
        }
        // break associativity: ({1} ⊗ {3}) redirected to {1,3}
        obt.insert((obs[&0b01], obs[&0b10]), obs[&0b11]);
        let mut mort = BTreeMap::new();
        for f in c.mors() {
            for g in c.mors() {
                mort.insert((f, g), m.mor(f, g));
            }
        }
        let broken = MonoidalStructure::new(c, &obt, &mort, m.unit).unwrap();
        let rep = validate_semigroupal(&broken);
        assert!(!rep.passed());
        assert!(rep
            .failures
            .iter()
            .any(|f| f.check == "tensor-associativity" || f.check == "tensor-endpoints"));
    }

    #[test]
    fn identity_semigroupal_functor_validates() {
        let (m, _, _) = opens_13();
        let sf = SemigroupalFunctor::identity(&m);
        validate_semigroupal_functor(&m, &m, &sf).expect_pass("identity semigroupal functor");
        let eta = NatTransformation::identity_of(&m.base, &sf.functor);
        validate_functor_morphism_on(
            &m,
            &m,
            &eta,
            &sf,
            &sf,
            &m.base.obs().collect::<Vec<_>>(),
            &m.base.mors().collect::<Vec<_>>(),
        )
        .expect_pass("identity functor morphism");
    }

    #[test]
    fn iso_closure_is_a_closure_operator() {
        let (m, obs, _) = opens_13();
        let s = Subcategory::full_on(&m.base, [obs[&0b10]]);
        let c1 = iso_closure(&m, &s);
        // skeletal thin category: no non-identity isos, closure adds nothing
        assert_eq!(c1, s);
        let c2 = iso_closure(&m, &c1);
        assert_eq!(c2, c1, "idempotent");
        let bigger = Subcategory::full_on(&m.base, [obs[&0b00], obs[&0b10]]);
        let cb = iso_closure(&m, &bigger);
        assert!(c1.objects.is_subset(&cb.objects), "monotone");
        assert!(s.objects.is_subset(&c1.objects), "extensive");
    }

    #[test]
    fn ideals_of_opens() {
        let (m, obs, _) = opens_13();
        let whole = Subcategory::whole(&m.base);
        assert!(is_ideal(&m, &whole, Side::Both));
        let down = Subcategory::full_on(&m.base, [obs[&0b00], obs[&0b10]]);
        assert!(is_ideal(&m, &down, Side::Both));
        let not_down = Subcategory::full_on(&m.base, [obs[&0b01]]);
        assert!(!is_ideal(&m, &not_down, Side::Both));
    }

    #[test]
    fn ideal_intersection() {
        let (m, obs, _) = opens_13();
        let a = Ideal {
            sub: Subcategory::whole(&m.base),
            side: Side::Both,
        };
        let b = Ideal {
            sub: Subcategory::full_on(&m.base, [obs[&0b00], obs[&0b10]]),
            side: Side::Both,
        };
        let i = intersect_ideals(&m, &a, &b).unwrap();
        assert_eq!(i.sub, b.sub);
        let ii = intersect_ideals(&m, &b, &b).unwrap();
        assert_eq!(ii.sub, b.sub, "I ∩ I = I");
    }

    #[test]
    fn image_ideal_under_identity_is_closure() {
        let (m, obs, _) = opens_13();
        let sf = SemigroupalFunctor::identity(&m);
        let i = Ideal {
            sub: Subcategory::full_on(&m.base, [obs[&0b00], obs[&0b10]]),
            side: Side::Both,
        };
        let img = image_ideal(&m, &m, &sf, &i).unwrap();
        assert_eq!(img.sub, iso_closure(&m, &i.sub));
    }

    #[test]
    fn hom_sets_agree_on_original_objects_after_closure() {
        let (m, obs, _) = opens_13();
        let s = Subcategory::full_on(&m.base, [obs[&0b00], obs[&0b10]]);
        let cl = iso_closure(&m, &s);
        for &x in &s.objects {
            for &y in &s.objects {
                let before: Vec<Mor> = s
                    .morphisms
                    .iter()
                    .copied()
                    .filter(|&f| m.base.dom(f) == x && m.base.cod(f) == y)
                    .collect();
                let after: Vec<Mor> = cl
                    .morphisms
                    .iter()
                    .copied()
                    .filter(|&f| m.base.dom(f) == x && m.base.cod(f) == y)
                    .collect();
                assert_eq!(before, after);
            }
        }
    }
}
