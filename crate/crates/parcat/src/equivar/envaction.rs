//! Blockwise extension of a unital partial action to the additive envelope
//! of its ambient category, plus the word-normalization isos used by every
//! additive construction (trace, algebra object, smash product).

use std::sync::Arc;

use crate::fincat::Mor;
use crate::group::Gel;
use crate::linalg::{EnvMor, EnvObj, Envelope, LinearCategory};
use crate::monoidal::MonoidalStructure;
use crate::paction::{PartialAction, UnitalData};
use crate::report::{CatError, Result};

/// A unital partial action together with the envelope of its ambient.
#[derive(Clone)]
pub struct EnvAction {
    pub t: PartialAction,
    pub ud: UnitalData,
    pub env: Envelope,
}

impl EnvAction {
    pub fn new(t: &PartialAction, ud: &UnitalData, lin: Arc<LinearCategory>) -> Result<Self> {
        let mon: Arc<MonoidalStructure> = t.ambient.clone();
        if !Arc::ptr_eq(&lin.cat, &mon.base) {
            return Err(CatError::MalformedSpec(
                "linear structure does not live on the action's ambient".into(),
            ));
        }
        Ok(EnvAction {
            t: t.clone(),
            ud: ud.clone(),
            env: Envelope::new(lin, mon)?,
        })
    }

    pub fn group(&self) -> &crate::group::FinGroup {
        &self.t.group
    }

    /// Envelope objects with all summands in `C_g`.
    pub fn in_domain(&self, g: Gel, e: &EnvObj) -> bool {
        e.0.iter().all(|&x| self.t.in_domain(g, x))
    }

    pub fn unit_env(&self, g: Gel) -> EnvObj {
        EnvObj::single(self.ud.unit_ob(g))
    }

    pub fn t_ob(&self, g: Gel, e: &EnvObj) -> Result<EnvObj> {
        e.0.iter().map(|&x| self.t.t_ob(g, x)).collect::<Result<Vec<_>>>().map(EnvObj)
    }

    pub fn t_mor(&self, g: Gel, f: &EnvMor) -> Result<EnvMor> {
        let dom = self.t_ob(g, &f.dom)?;
        let cod = self.t_ob(g, &f.cod)?;
        let entries = f
            .entries()
            .iter()
            .map(|&m| self.t.t_mor(g, m))
            .collect::<Result<Vec<_>>>()?;
        self.env.mor(dom, cod, entries)
    }

    /// Diagonal lift of a base-level component family.
    pub fn diag(
        &self,
        dom: &EnvObj,
        cod: &EnvObj,
        per: impl Fn(usize) -> Result<Mor>,
    ) -> Result<EnvMor> {
        if dom.len() != cod.len() {
            return Err(CatError::ComponentShape("diagonal lift needs equal lengths".into()));
        }
        let mut entries = Vec::with_capacity(dom.len() * cod.len());
        for i in 0..cod.len() {
            for j in 0..dom.len() {
                if i == j {
                    entries.push(per(i)?);
                } else {
                    entries.push(self.env.lin.zero_at(dom.0[j], cod.0[i]));
                }
            }
        }
        self.env.mor(dom.clone(), cod.clone(), entries)
    }

    /// `(γ_{g,h})_E`, blockwise.
    pub fn gamma(&self, g: Gel, h: Gel, e: &EnvObj) -> Result<EnvMor> {
        let gh = self.t.group.mul(g, h);
        let dom = self.t_ob(g, &self.t_ob(h, e)?)?;
        let cod = self.t_ob(gh, e)?;
        self.diag(&dom, &cod, |i| self.t.gamma_at(g, h, e.0[i]))
    }

    pub fn gamma_inv(&self, g: Gel, h: Gel, e: &EnvObj) -> Result<EnvMor> {
        let m = self.gamma(g, h, e)?;
        self.env
            .inverse(&m)
            .ok_or_else(|| CatError::NotIsomorphism("envelope γ".into()))
    }

    /// `u_E`, blockwise.
    pub fn u(&self, e: &EnvObj) -> Result<EnvMor> {
        let cod = self.t_ob(self.t.group.e, e)?;
        self.diag(e, &cod, |i| self.t.u_at(e.0[i]))
    }

    /// `J^g_{A,B} : T_g(A) ⊗ T_g(B) -> T_g(A ⊗ B)`, blockwise over the
    /// row-major summand pairs.
    pub fn j(&self, g: Gel, a: &EnvObj, b: &EnvObj) -> Result<EnvMor> {
        let ta = self.t_ob(g, a)?;
        let tb = self.t_ob(g, b)?;
        let dom = self.env.tensor_ob(&ta, &tb);
        let cod = self.t_ob(g, &self.env.tensor_ob(a, b))?;
        self.diag(&dom, &cod, |i| {
            let (ia, ib) = (i / b.len(), i % b.len());
            self.t.j_at(g, a.0[ia], b.0[ib])
        })
    }

    pub fn j_inv(&self, g: Gel, a: &EnvObj, b: &EnvObj) -> Result<EnvMor> {
        let m = self.j(g, a, b)?;
        self.env
            .inverse(&m)
            .ok_or_else(|| CatError::NotIsomorphism("envelope J".into()))
    }

    /// Right unitor `E ⊗ 𝟙_g -> E` of the ideal `C_g`, blockwise.
    pub fn runitor(&self, g: Gel, e: &EnvObj) -> Result<EnvMor> {
        let dom = self.env.tensor_ob(e, &self.unit_env(g));
        self.diag(&dom, e, |i| self.ud.unitors(g).right_at(e.0[i]))
    }

    pub fn runitor_inv(&self, g: Gel, e: &EnvObj) -> Result<EnvMor> {
        let m = self.runitor(g, e)?;
        self.env
            .inverse(&m)
            .ok_or_else(|| CatError::NotIsomorphism("envelope right unitor".into()))
    }

    /// Left unitor `𝟙_g ⊗ E -> E`.
    pub fn lunitor(&self, g: Gel, e: &EnvObj) -> Result<EnvMor> {
        let dom = self.env.tensor_ob(&self.unit_env(g), e);
        self.diag(&dom, e, |i| self.ud.unitors(g).left_at(e.0[i]))
    }

    pub fn lunitor_inv(&self, g: Gel, e: &EnvObj) -> Result<EnvMor> {
        let m = self.lunitor(g, e)?;
        self.env
            .inverse(&m)
            .ok_or_else(|| CatError::NotIsomorphism("envelope left unitor".into()))
    }

    /// Exchange `𝟙_g ⊗ E -> E ⊗ 𝟙_g`.
    pub fn exchange(&self, g: Gel, e: &EnvObj) -> Result<EnvMor> {
        let dom = self.env.tensor_ob(&self.unit_env(g), e);
        let cod = self.env.tensor_ob(e, &self.unit_env(g));
        self.diag(&dom, &cod, |i| self.ud.unit(g).exchange_at(e.0[i]))
    }

    /// φ for a word, as a one-summand envelope morphism.
    pub fn phi_env(&self, g: Gel, word: &[Gel], slot: usize) -> Result<EnvMor> {
        Ok(self.env.from_base(self.ud.phi_word(g, word, slot)?))
    }

    /// Canonical iso between two tensor words of unit objects with the same
    /// underlying set: normalize both by exchange-sorting and fusing
    /// duplicates, then splice at the common canonical form.
    pub fn unit_word_iso(&self, from: &[Gel], to: &[Gel]) -> Result<Mor> {
        let c = self.t.cat();
        let (f1, canon1) = self.normalize_unit_word(from)?;
        let (f2, canon2) = self.normalize_unit_word(to)?;
        if canon1 != canon2 {
            return Err(CatError::ComponentShape(format!(
                "unit words normalize differently: {canon1:?} vs {canon2:?}"
            )));
        }
        let f2_inv = c
            .find_inverse(f2)
            .ok_or_else(|| CatError::NotIsomorphism("word normalization".into()))?;
        c.comp(f2_inv, f1)
    }

    /// Exchange-sort a word of unit indices ascending, fusing adjacent
    /// duplicates; returns the composite iso and the canonical word.
    /// When `𝟙_e` is the strict ambient unit its factors vanish from the
    /// word outright (the object is unchanged).
    pub fn normalize_unit_word(&self, word: &[Gel]) -> Result<(Mor, Vec<Gel>)> {
        let c = self.t.cat();
        let m = &*self.t.ambient;
        if word.is_empty() {
            return Err(CatError::ComponentShape("empty unit word".into()));
        }
        let ob_of = |w: &[Gel]| m.ob_word(&w.iter().map(|&g| self.ud.unit_ob(g)).collect::<Vec<_>>());
        let mut cur: Vec<Gel> = word.to_vec();
        let e = self.t.group.e;
        if m.unit == Some(self.ud.unit_ob(e)) {
            cur.retain(|&g| g != e);
            if cur.is_empty() {
                cur.push(e);
            }
        }
        let mut acc = c.identity(ob_of(&cur));
        loop {
            // find the first unsorted or duplicate adjacency
            let mut step: Option<(usize, bool)> = None;
            for i in 0..cur.len().saturating_sub(1) {
                if cur[i] == cur[i + 1] {
                    step = Some((i, true));
                    break;
                }
                if cur[i] > cur[i + 1] {
                    step = Some((i, false));
                    break;
                }
            }
            let Some((i, fuse)) = step else { break };
            let prefix: Vec<Mor> = cur[..i]
                .iter()
                .map(|&g| c.identity(self.ud.unit_ob(g)))
                .collect();
            let suffix: Vec<Mor> = cur[i + 2..]
                .iter()
                .map(|&g| c.identity(self.ud.unit_ob(g)))
                .collect();
            let middle = if fuse {
                self.ud.unit(cur[i]).fusion
            } else {
                // σ^{𝟙_a}_{𝟙_b} : 𝟙_a ⊗ 𝟙_b -> 𝟙_b ⊗ 𝟙_a
                self.ud.unit(cur[i]).exchange_at(self.ud.unit_ob(cur[i + 1]))?
            };
            let mut parts = prefix;
            parts.push(middle);
            parts.extend(suffix);
            let step_mor = m.mor_word(&parts);
            acc = c.comp(step_mor, acc)?;
            if fuse {
                cur.remove(i + 1);
            } else {
                cur.swap(i, i + 1);
            }
        }
        Ok((acc, cur))
    }

    /// `id_prefix ⊗ unit_word_iso`, at the envelope level, where the prefix
    /// is an envelope object and the unit word sits to its right.
    pub fn suffix_word_iso(
        &self,
        prefix: &EnvObj,
        from: &[Gel],
        to: &[Gel],
    ) -> Result<EnvMor> {
        let base = self.unit_word_iso(from, to)?;
        Ok(self.env.tensor_mor(&self.env.id(prefix), &self.env.from_base(base)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::group::Gel;
    use crate::paction::extract_unital_data;
    use proptest::prelude::*;

    fn ctx_fus() -> &'static EnvAction {
        use std::sync::OnceLock;
        static CTX: OnceLock<EnvAction> = OnceLock::new();
        CTX.get_or_init(|| {
            let inst = corpus::inst_fus();
            let (ud, _) = extract_unital_data(&inst.action, 1_000_000).unwrap();
            EnvAction::new(&inst.action, &ud.unwrap(), inst.linear.clone().unwrap()).unwrap()
        })
    }

    #[test]
    fn normalization_sorts_fuses_and_drops_strict_units() {
        let ctx = ctx_fus();
        let (iso, canon) = ctx
            .normalize_unit_word(&[Gel(2), Gel(1), Gel(0), Gel(1)])
            .unwrap();
        assert_eq!(canon, vec![Gel(1), Gel(2)]);
        assert!(ctx.t.cat().is_iso(iso));
        // all-identity word stays a single identity factor
        let (_, canon) = ctx.normalize_unit_word(&[Gel(0), Gel(0)]).unwrap();
        assert_eq!(canon, vec![Gel(0)]);
    }

    proptest! {
        #[test]
        fn normalization_is_canonical_and_invertible(word in proptest::collection::vec(0u32..3, 1..5)) {
            let ctx = ctx_fus();
            let word: Vec<Gel> = word.into_iter().map(Gel).collect();
            let (iso, canon) = ctx.normalize_unit_word(&word).unwrap();
            // canonical form is strictly ascending with no strict-unit factors
            prop_assert!(canon.windows(2).all(|w| w[0] < w[1]));
            if canon != vec![ctx.t.group.e] {
                prop_assert!(!canon.contains(&ctx.t.group.e));
            }
            prop_assert!(ctx.t.cat().is_iso(iso));
            // two words with the same element set share the canonical form,
            // so the splice iso between them exists
            let mut doubled = word.clone();
            doubled.extend(word.iter().rev());
            let spliced = ctx.unit_word_iso(&doubled, &word).unwrap();
            prop_assert!(ctx.t.cat().is_iso(spliced));
        }
    }
}
