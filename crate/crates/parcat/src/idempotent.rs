//! Central idempotents `(e, Φ_e, σ^e)`, the ideals they generate, and the
//! monoidal structure (unitors `L^e`, `R^e`) induced on those ideals.

use std::collections::BTreeMap;

use crate::fincat::{Mor, Ob};
use crate::monoidal::{ideal_violation, iso_closure, Ideal, MonoidalStructure, Side, Subcategory};
use crate::report::{CatError, DiagramReport, Result};

/// A central idempotent: object `e`, fusion iso `Φ_e : e⊗e -> e`, and
/// exchange isos `σ^e_A : e⊗A -> A⊗e` natural in `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralIdempotent {
    pub object: Ob,
    pub fusion: Mor,
    pub exchange: BTreeMap<Ob, Mor>,
}

impl CentralIdempotent {
    /// The strict unit object, when present: Φ and σ are identities.
    pub fn strict_unit(m: &MonoidalStructure) -> Option<Self> {
        let u = m.unit?;
        let c = &*m.base;
        Some(CentralIdempotent {
            object: u,
            fusion: c.identity(u),
            exchange: c.obs().map(|a| (a, c.identity(a))).collect(),
        })
    }

    pub fn exchange_at(&self, a: Ob) -> Result<Mor> {
        self.exchange
            .get(&a)
            .copied()
            .ok_or_else(|| CatError::ComponentShape(format!("no exchange component at {a}")))
    }
}

/// Check shapes, invertibility, naturality of the exchange, and the four
/// compatibility diagrams of a central idempotent.
pub fn validate_central_idempotent(m: &MonoidalStructure, ci: &CentralIdempotent) -> DiagramReport {
    let c = &*m.base;
    let e = ci.object;
    let mut rep = DiagramReport::new();

    let ee = m.ob(e, e);
    if c.dom(ci.fusion) != ee || c.cod(ci.fusion) != e {
        rep.fail("ComponentShapeError", format!("fusion is {}", c.witness(ci.fusion)));
        return rep.finish();
    }
    if !c.is_iso(ci.fusion) {
        rep.fail("NotIsomorphism", "fusion Φ_e");
    }
    for a in c.obs() {
        match ci.exchange.get(&a) {
            None => rep.fail("ComponentShapeError", format!("no exchange at {a}")),
            Some(&s) => {
                if c.dom(s) != m.ob(e, a) || c.cod(s) != m.ob(a, e) {
                    rep.fail("ComponentShapeError", format!("exchange at {a} is {}", c.witness(s)));
                } else if !c.is_iso(s) {
                    rep.fail("NotIsomorphism", format!("exchange σ^e at {a}"));
                }
            }
        }
    }
    if !rep.passed() {
        return rep.finish();
    }
    let phi = ci.fusion;
    let sig = |a: Ob| ci.exchange[&a];

    // naturality of σ^e
    for f in c.mors() {
        let (a, b) = (c.dom(f), c.cod(f));
        let lhs = c.compose(sig(b), m.id_mor(e, f)).expect("sigma nat lhs");
        let rhs = c.compose(m.mor_id(f, e), sig(a)).expect("sigma nat rhs");
        if lhs != rhs {
            rep.fail("exchange-naturality", format!("at {}", c.witness(f)));
        }
    }
    // (idempotent1): Φ ∘ (e⊗Φ) = Φ ∘ (Φ⊗e)
    let l1 = c.compose(phi, m.id_mor(e, phi)).expect("idempotent1 lhs");
    let r1 = c.compose(phi, m.mor_id(phi, e)).expect("idempotent1 rhs");
    if l1 != r1 {
        rep.fail("idempotent1", format!("at e = {}", c.ob_name(e)));
    }
    // (idempotent2): Φ ∘ σ_e = Φ
    if c.compose(phi, sig(e)) != Some(phi) {
        rep.fail("idempotent2", format!("at e = {}", c.ob_name(e)));
    }
    // (idempotent3): σ_A ∘ (Φ⊗A) = (A⊗Φ) ∘ (σ_A⊗e) ∘ (e⊗σ_A)
    for a in c.obs() {
        let lhs = c.compose(sig(a), m.mor_id(phi, a)).expect("idempotent3 lhs");
        let rhs = c
            .compose_path(&[m.id_mor(e, sig(a)), m.mor_id(sig(a), e), m.id_mor(a, phi)])
            .expect("idempotent3 rhs");
        if lhs != rhs {
            rep.fail("idempotent3", format!("at A = {}", c.ob_name(a)));
        }
    }
    // (idempotent4): σ_{A⊗B} = (A⊗σ_B) ∘ (σ_A⊗B)
    for a in c.obs() {
        for b in c.obs() {
            let rhs = c
                .compose(m.id_mor(a, sig(b)), m.mor_id(sig(a), b))
                .expect("idempotent4 rhs");
            if sig(m.ob(a, b)) != rhs {
                rep.fail("idempotent4", format!("at ({}, {})", c.ob_name(a), c.ob_name(b)));
            }
        }
    }
    rep.finish()
}

/// `overline(e ⊗ C)`: the isomorphism closure of the image of `e ⊗ -`, which
/// is a two-sided ideal for a validated central idempotent.
pub fn generated_ideal(m: &MonoidalStructure, ci: &CentralIdempotent) -> Result<Ideal> {
    let c = &*m.base;
    let e = ci.object;
    let seed = Subcategory {
        objects: c.obs().map(|x| m.ob(e, x)).collect(),
        morphisms: c.mors().map(|f| m.id_mor(e, f)).collect(),
    };
    let sub = iso_closure(m, &seed);
    if let Some(v) = ideal_violation(m, &sub, Side::Both) {
        return Err(CatError::MalformedSpec(format!(
            "generated subcategory of {} is not an ideal: {v}",
            c.ob_name(e)
        )));
    }
    Ok(Ideal {
        sub,
        side: Side::Both,
    })
}

/// Induced unitors on the generated ideal: `L^e_X : e⊗X -> X` and
/// `R^e_X : X⊗e -> X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitorPair {
    pub left: BTreeMap<Ob, Mor>,
    pub right: BTreeMap<Ob, Mor>,
}

impl UnitorPair {
    pub fn left_at(&self, x: Ob) -> Result<Mor> {
        self.left
            .get(&x)
            .copied()
            .ok_or_else(|| CatError::DomainError(format!("no left unitor at {x}")))
    }

    pub fn right_at(&self, x: Ob) -> Result<Mor> {
        self.right
            .get(&x)
            .copied()
            .ok_or_else(|| CatError::DomainError(format!("no right unitor at {x}")))
    }
}

/// Build `L^e_X = φ_X^{-1} ∘ (Φ_e ⊗ X') ∘ (e ⊗ φ_X)` from a witness iso
/// `φ_X : X -> e⊗X'`, verify independence of the witness, naturality, and the
/// strict triangle compatibility; `R^e_X := L^e_X ∘ (σ^e_X)^{-1}`.
pub fn induced_unitors(
    m: &MonoidalStructure,
    ci: &CentralIdempotent,
    ideal: &Ideal,
) -> Result<(UnitorPair, DiagramReport)> {
    let c = &*m.base;
    let e = ci.object;
    let mut rep = DiagramReport::new();
    let mut left = BTreeMap::new();
    let mut right = BTreeMap::new();
    for &x in &ideal.sub.objects {
        // all witnesses X ≅ e⊗X'
        let mut builds = Vec::new();
        for xp in c.obs() {
            let target = m.ob(e, xp);
            for phi_x in c.hom(x, target) {
                if !c.is_iso(phi_x) {
                    continue;
                }
                let inv = c.find_inverse(phi_x).unwrap();
                let l = c
                    .compose_path(&[m.id_mor(e, phi_x), m.mor_id(ci.fusion, xp), inv])
                    .expect("L^e composite");
                builds.push(l);
            }
        }
        let Some(&l) = builds.first() else {
            return Err(CatError::WitnessNotFound(format!(
                "{} admits no iso to an e⊗X' form",
                c.ob_name(x)
            )));
        };
        if builds.iter().any(|&b| b != l) {
            rep.fail("witness-independence", format!("L^e at {}", c.ob_name(x)));
        }
        if !c.is_iso(l) {
            rep.fail("NotIsomorphism", format!("L^e at {}", c.ob_name(x)));
        }
        let sigma_inv = c
            .find_inverse(ci.exchange_at(x)?)
            .ok_or_else(|| CatError::NotIsomorphism(format!("exchange at {x}")))?;
        let r = c.compose(l, sigma_inv).expect("R^e composite");
        left.insert(x, l);
        right.insert(x, r);
    }
    // naturality of L^e: f ∘ L_X = L_Y ∘ (e⊗f)
    for &f in &ideal.sub.morphisms {
        let (x, y) = (c.dom(f), c.cod(f));
        let lhs = c.compose(f, left[&x]).expect("L naturality lhs");
        let rhs = c.compose(left[&y], m.id_mor(e, f)).expect("L naturality rhs");
        if lhs != rhs {
            rep.fail("L-naturality", format!("at {}", c.witness(f)));
        }
    }
    // strict triangle compatibility: X ⊗ L^e_Y = R^e_X ⊗ Y on X⊗e⊗Y
    for &x in &ideal.sub.objects {
        for &y in &ideal.sub.objects {
            if m.id_mor(x, left[&y]) != m.mor_id(right[&x], y) {
                rep.fail(
                    "triangle",
                    format!("X⊗L_Y != R_X⊗Y at ({}, {})", c.ob_name(x), c.ob_name(y)),
                );
            }
        }
    }
    Ok((UnitorPair { left, right }, rep.finish()))
}

/// All objects `e` admitting a valid `(Φ_e, σ^e)`, each with its
/// lexicographically least witness and the number of valid witnesses.
pub fn enumerate_central_idempotents(
    m: &MonoidalStructure,
    budget: usize,
) -> Result<Vec<(CentralIdempotent, usize)>> {
    let c = &*m.base;
    let mut out = Vec::new();
    for e in c.obs() {
        let mut found: Option<CentralIdempotent> = None;
        let mut count = 0usize;
        let fusions: Vec<Mor> = c
            .hom(m.ob(e, e), e)
            .into_iter()
            .filter(|&f| c.is_iso(f))
            .collect();
        for phi in fusions {
            let obs: Vec<Ob> = c.obs().collect();
            let mut stack: Vec<BTreeMap<Ob, Mor>> = vec![BTreeMap::new()];
            let mut visited = 0usize;
            while let Some(partial) = stack.pop() {
                visited += 1;
                if visited > budget {
                    return Err(CatError::SearchBudgetExceeded {
                        budget,
                        context: format!("central idempotent search at {}", c.ob_name(e)),
                    });
                }
                if partial.len() == obs.len() {
                    let ci = CentralIdempotent {
                        object: e,
                        fusion: phi,
                        exchange: partial,
                    };
                    if validate_central_idempotent(m, &ci).passed() {
                        count += 1;
                        match &found {
                            None => found = Some(ci),
                            Some(best) => {
                                let key = (ci.fusion, ci.exchange.values().copied().collect::<Vec<_>>());
                                let bkey =
                                    (best.fusion, best.exchange.values().copied().collect::<Vec<_>>());
                                if key < bkey {
                                    found = Some(ci);
                                }
                            }
                        }
                    }
                    continue;
                }
                let a = obs[partial.len()];
                // candidates in descending order so the stack pops ascending
                let mut cands: Vec<Mor> = c
                    .hom(m.ob(e, a), m.ob(a, e))
                    .into_iter()
                    .filter(|&s| c.is_iso(s))
                    .collect();
                cands.reverse();
                for s in cands {
                    let mut next = partial.clone();
                    next.insert(a, s);
                    if sigma_partial_ok(m, e, phi, &next) {
                        stack.push(next);
                    }
                }
            }
        }
        if let Some(ci) = found {
            out.push((ci, count));
        }
    }
    Ok(out)
}

/// Incremental pruning for the σ-family search: every constraint whose
/// participants are all assigned must hold.
fn sigma_partial_ok(m: &MonoidalStructure, e: Ob, phi: Mor, sigma: &BTreeMap<Ob, Mor>) -> bool {
    let c = &*m.base;
    let at = |a: Ob| sigma.get(&a).copied();
    if let Some(se) = at(e) {
        if c.compose(phi, se) != Some(phi) {
            return false;
        }
    }
    for f in c.mors() {
        let (a, b) = (c.dom(f), c.cod(f));
        if let (Some(sa), Some(sb)) = (at(a), at(b)) {
            if c.compose(sb, m.id_mor(e, f)) != c.compose(m.mor_id(f, e), sa) {
                return false;
            }
        }
    }
    for (&a, &sa) in sigma {
        if c.compose(sa, m.mor_id(phi, a))
            != c.compose_path(&[m.id_mor(e, sa), m.mor_id(sa, e), m.id_mor(a, phi)]).ok()
        {
            return false;
        }
        for (&b, &sb) in sigma {
            if let Some(sab) = at(m.ob(a, b)) {
                let rhs = c.compose(m.id_mor(a, sb), m.mor_id(sa, b));
                if rhs != Some(sab) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoidal::is_ideal;
    use crate::testutil::opens_monoidal;

    #[test]
    fn unit_object_is_a_central_idempotent() {
        let (m, _, _) = opens_monoidal(&[0b00, 0b01, 0b10, 0b11], Some(0b11));
        let ci = CentralIdempotent::strict_unit(&m).unwrap();
        validate_central_idempotent(&m, &ci).expect_pass("unit idempotent");
        let ideal = generated_ideal(&m, &ci).unwrap();
        assert_eq!(ideal.sub.objects.len(), 4, "unit generates everything");
    }

    #[test]
    fn any_open_subset_is_a_central_idempotent() {
        let (m, obs, incl) = opens_monoidal(&[0b00, 0b01, 0b10, 0b11], Some(0b11));
        let c = &*m.base;
        let e = obs[&0b10]; // {3}
        let ci = CentralIdempotent {
            object: e,
            fusion: c.identity(e),
            exchange: c.obs().map(|a| (a, c.identity(m.ob(e, a)))).collect(),
        };
        validate_central_idempotent(&m, &ci).expect_pass("{3} idempotent");
        let ideal = generated_ideal(&m, &ci).unwrap();
        let expect: Vec<Ob> = vec![obs[&0b00], obs[&0b10]];
        assert_eq!(ideal.sub.obs(), expect, "closure of {{3}}⊗X is {{∅,{{3}}}}");
        assert!(is_ideal(&m, &ideal.sub, Side::Both));

        let (unitors, rep) = induced_unitors(&m, &ci, &ideal).unwrap();
        rep.expect_pass("induced unitors");
        // thin category: the unitors are the unique morphisms {3}∩X -> X
        assert_eq!(unitors.left[&obs[&0b00]], incl[&(0b00, 0b00)]);
        assert_eq!(unitors.left[&obs[&0b10]], incl[&(0b10, 0b10)]);
    }

    #[test]
    fn corrupting_fusion_is_caught() {
        let (m, obs, incl) = opens_monoidal(&[0b00, 0b10], Some(0b10));
        let c = &*m.base;
        let e = obs[&0b10];
        let ci = CentralIdempotent {
            object: e,
            fusion: incl[&(0b00, 0b10)], // wrong shape: ∅ -> {3}
            exchange: c.obs().map(|a| (a, c.identity(m.ob(e, a)))).collect(),
        };
        let rep = validate_central_idempotent(&m, &ci);
        assert!(!rep.passed());
        assert_eq!(rep.failures[0].check, "ComponentShapeError");
    }

    #[test]
    fn enumerate_finds_all_opens() {
        let (m, _, _) = opens_monoidal(&[0b00, 0b01, 0b10, 0b11], Some(0b11));
        let found = enumerate_central_idempotents(&m, 100_000).unwrap();
        assert_eq!(found.len(), 4, "every open set is a central idempotent");
        for (_, count) in &found {
            assert_eq!(*count, 1, "thin category: unique witness");
        }
    }

    #[test]
    fn enumerate_on_trivial_category() {
        let c = std::sync::Arc::new(crate::testutil::single_object_category());
        let x = Ob(0);
        let id = c.identity(x);
        let m = MonoidalStructure::new(
            c,
            &BTreeMap::from([((x, x), x)]),
            &BTreeMap::from([((id, id), id)]),
            Some(x),
        )
        .unwrap();
        let found = enumerate_central_idempotents(&m, 1000).unwrap();
        assert_eq!(found.len(), 1);
    }
}
