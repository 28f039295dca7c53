//! The partial smash product `C ⋊ G`: G-graded envelope objects with the
//! convolution tensor `⊠`, its explicit associator and unitors, the machine
//! verification of the pentagon and triangle the construction demands, the
//! canonical functors `π₀`/`φ₀`, and covariant pairs.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::equivar::envaction::EnvAction;
use crate::fincat::{CatBuilder, Mor, Ob};
use crate::group::Gel;
use crate::linalg::{find_env_iso, EnvMor, EnvObj, IsoSearch};
use crate::monoidal::MonoidalStructure;
use crate::report::{CatError, DiagramReport, Result};

/// A single-grade object `X_g δ_g`: an envelope object in `C_g` at grade `g`.
/// Products of single-grade objects are single-grade, so these generate the
/// smash product; general objects are their formal sums.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SGrade {
    pub g: Gel,
    pub ob: EnvObj,
}

/// A grade-preserving morphism between single-grade objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SMor {
    pub g: Gel,
    pub mor: EnvMor,
}

/// The smash-product context over a unital partial action on a linear
/// category, with the summand-count cap for assembled views recorded.
pub struct SmashContext {
    pub ctx: EnvAction,
    pub cap: usize,
}

impl SmashContext {
    pub fn new(ctx: EnvAction, cap: usize) -> Self {
        SmashContext { ctx, cap }
    }

    fn grade_ok(&self, a: &SGrade) -> Result<()> {
        if !self.ctx.in_domain(a.g, &a.ob) {
            return Err(CatError::GradeDomainError(format!(
                "grade {} carries {} outside C_{}",
                self.ctx.group().name(a.g),
                a.ob,
                self.ctx.group().name(a.g)
            )));
        }
        Ok(())
    }

    /// `(X_g δ_g) ⊠ (X_h δ_h) = (X_g ⊗ T_g(X_h ⊗ 𝟙_{g^{-1}})) δ_{gh}`.
    pub fn tensor(&self, a: &SGrade, b: &SGrade) -> Result<SGrade> {
        self.grade_ok(a)?;
        self.grade_ok(b)?;
        let ctx = &self.ctx;
        let gi = ctx.group().inv(a.g);
        let inner = ctx.env.tensor_ob(&b.ob, &ctx.unit_env(gi));
        let carrier = ctx.env.tensor_ob(&a.ob, &ctx.t_ob(a.g, &inner)?);
        Ok(SGrade {
            g: ctx.group().mul(a.g, b.g),
            ob: carrier,
        })
    }

    /// `(f_g, g) ⊠ (f_h, h) = (f_g ⊗ T_g(f_h ⊗ 𝟙_{g^{-1}}), gh)`.
    pub fn tensor_mor(&self, f: &SMor, h: &SMor) -> Result<SMor> {
        let ctx = &self.ctx;
        let gi = ctx.group().inv(f.g);
        let unit = ctx.env.id(&ctx.unit_env(gi));
        let inner = ctx.env.tensor_mor(&h.mor, &unit);
        let mor = ctx.env.tensor_mor(&f.mor, &ctx.t_mor(f.g, &inner)?);
        Ok(SMor {
            g: ctx.group().mul(f.g, h.g),
            mor,
        })
    }

    pub fn id_mor(&self, a: &SGrade) -> SMor {
        SMor {
            g: a.g,
            mor: self.ctx.env.id(&a.ob),
        }
    }

    /// The unit object `𝟙_e δ_e`.
    pub fn unit(&self) -> SGrade {
        SGrade {
            g: self.ctx.group().e,
            ob: self.ctx.unit_env(self.ctx.group().e),
        }
    }

    /// The explicit associator `(a ⊠ b) ⊠ c -> a ⊠ (b ⊠ c)`, as the
    /// composite of the unit comparisons, `J`, and `γ^{-1}`.
    pub fn associator(&self, a: &SGrade, b: &SGrade, c: &SGrade) -> Result<EnvMor> {
        let ctx = &self.ctx;
        let env = &ctx.env;
        let grp = ctx.group();
        let (g, h) = (a.g, b.g);
        let (gi, hi) = (grp.inv(g), grp.inv(h));
        let gh = grp.mul(g, h);
        let ghi = grp.inv(gh);
        // P = X_g ⊗ T_g(X_h ⊗ 𝟙_{g^{-1}}), the fixed prefix
        let xh_unit = env.tensor_ob(&b.ob, &ctx.unit_env(gi));
        let t_xh = ctx.t_ob(g, &xh_unit)?;
        let prefix = env.tensor_ob(&a.ob, &t_xh);
        // F = T_{gh}(X_l ⊗ 𝟙_{(gh)^{-1}})
        let xl_unit = env.tensor_ob(&c.ob, &ctx.unit_env(ghi));
        let f_ob = ctx.t_ob(gh, &xl_unit)?;
        // s1: insert 𝟙_g ⊗ 𝟙_{gh} on the right of the whole word
        let w1 = env.tensor_ob(&prefix, &f_ob);
        let s1a = ctx.runitor_inv(g, &w1)?;
        let s1b = ctx.runitor_inv(gh, &env.tensor_ob(&w1, &ctx.unit_env(g)))?;
        // s2: φ^{gh} over the word (g, gh)
        let s2 = env.tensor_id_mor(&w1, &ctx.phi_env(gh, &[g, gh], 1)?);
        // s3: J^{gh} combining F with the comparison image
        let u2 = env.tensor_ob(&ctx.unit_env(hi), &ctx.unit_env(ghi));
        let s3 = env.tensor_id_mor(&prefix, &ctx.j(gh, &xl_unit, &u2)?);
        // s3.5: normalize X_l ⊗ 𝟙_{(gh)^{-1}} ⊗ 𝟙_{h^{-1}} ⊗ 𝟙_{(gh)^{-1}}
        //        to X_l ⊗ 𝟙_{h^{-1}} ⊗ 𝟙_{(gh)^{-1}}
        let s35_inner = ctx.suffix_word_iso(&c.ob, &[ghi, hi, ghi], &[hi, ghi])?;
        let s35 = env.tensor_id_mor(&prefix, &ctx.t_mor(gh, &s35_inner)?);
        // s4: γ^{-1}
        let arg = env.tensor_ob_word(&[&c.ob, &ctx.unit_env(hi), &ctx.unit_env(ghi)]);
        let s4 = env.tensor_id_mor(&prefix, &ctx.gamma_inv(g, h, &arg)?);
        // s4.5: duplicate 𝟙_{h^{-1}} inside T_g T_h
        let s45_inner = ctx.suffix_word_iso(&c.ob, &[hi, ghi], &[hi, hi, ghi])?;
        let s45 = env.tensor_id_mor(&prefix, &ctx.t_mor(g, &ctx.t_mor(h, &s45_inner)?)?);
        // s5: T_g((J^h)^{-1}) splitting the two T_h factors
        let split_l = env.tensor_ob(&c.ob, &ctx.unit_env(hi));
        let split_r = env.tensor_ob(&ctx.unit_env(hi), &ctx.unit_env(ghi));
        let s5 = env.tensor_id_mor(&prefix, &ctx.t_mor(g, &ctx.j_inv(h, &split_l, &split_r)?)?);
        // s6: T_g(T_h(X_l ⊗ 𝟙_{h^{-1}}) ⊗ (φ^h_{(g^{-1})})^{-1}), then absorb 𝟙_h
        let t_split_l = ctx.t_ob(h, &split_l)?;
        let phi_h = ctx.phi_env(h, &[h, gi], 0)?;
        let phi_h_inv = env
            .inverse(&phi_h)
            .ok_or_else(|| CatError::NotIsomorphism("φ^h".into()))?;
        let s6a = env.tensor_id_mor(&prefix, &ctx.t_mor(g, &env.tensor_id_mor(&t_split_l, &phi_h_inv))?)
            ;
        // absorb: T_h(..) ⊗ 𝟙_h ⊗ 𝟙_{g^{-1}} -> T_h(..) ⊗ 𝟙_{g^{-1}}
        let absorb = env.tensor_mor_id(&ctx.runitor(h, &t_split_l)?, &ctx.unit_env(gi));
        let s6b = env.tensor_id_mor(&prefix, &ctx.t_mor(g, &absorb)?);
        // s7: J^g combining T_g(X_h ⊗ 𝟙_{g^{-1}}) with T_g(T_h(..) ⊗ 𝟙_{g^{-1}})
        let right_arg = env.tensor_ob(&t_split_l, &ctx.unit_env(gi));
        let s7 = env.tensor_id_mor(&a.ob, &ctx.j(g, &xh_unit, &right_arg)?);
        // s8: inside T_g: X_h ⊗ 𝟙_{g^{-1}} ⊗ T_h(..) ⊗ 𝟙_{g^{-1}}
        //      -> X_h ⊗ T_h(..) ⊗ 𝟙_{g^{-1}}
        let exch = ctx.exchange(gi, &t_split_l)?; // 𝟙_{g^{-1}} ⊗ T_h(..) -> T_h(..) ⊗ 𝟙_{g^{-1}}
        let move_unit = env.tensor_mor_id(
            &env.tensor_id_mor(&b.ob, &exch),
            &ctx.unit_env(gi),
        );
        let fuse = env.tensor_id_mor(
            &env.tensor_ob(&b.ob, &t_split_l),
            &ctx.env.from_base(ctx.ud.unit(gi).fusion),
        );
        let s8 = env.tensor_id_mor(&a.ob, &ctx.t_mor(g, &env.compose(&fuse, &move_unit)?)?);
        env.compose_path(&[&s1a, &s1b, &s2, &s3, &s35, &s4, &s45, &s5, &s6a, &s6b, &s7, &s8])
    }

    /// `L_{X_g δ_g} : 𝟙 ⊠ a -> a`, which is `u^{-1}` blockwise.
    pub fn left_unitor(&self, a: &SGrade) -> Result<EnvMor> {
        let ctx = &self.ctx;
        let u = ctx.u(&a.ob)?;
        ctx.env
            .inverse(&u)
            .ok_or_else(|| CatError::NotIsomorphism("u".into()))
    }

    /// `R_{X_g δ_g} : a ⊠ 𝟙 -> a`: apply `(φ^g)^{-1}` and absorb `𝟙_g`.
    pub fn right_unitor(&self, a: &SGrade) -> Result<EnvMor> {
        let ctx = &self.ctx;
        let env = &ctx.env;
        let phi = ctx.phi_env(a.g, &[a.g], 0)?;
        let phi_inv = env
            .inverse(&phi)
            .ok_or_else(|| CatError::NotIsomorphism("φ^g".into()))?;
        let step = env.tensor_id_mor(&a.ob, &phi_inv);
        env.compose(&ctx.runitor(a.g, &a.ob)?, &step)
    }

    /// Generator objects: per grade, all envelope objects over the domain
    /// ideal with at most `cap` summands (including the zero envelope).
    pub fn generators(&self) -> Vec<SGrade> {
        let mut out = Vec::new();
        for g in self.ctx.group().elements() {
            let obs = self.ctx.t.domain(g).sub.obs();
            let mut lists: Vec<Vec<Ob>> = vec![Vec::new()];
            for _ in 0..self.cap {
                let mut next = Vec::new();
                for l in &lists {
                    for &o in &obs {
                        // multisets: non-decreasing lists
                        if l.last().is_none_or(|&last| last <= o) {
                            let mut l2 = l.clone();
                            l2.push(o);
                            next.push(l2);
                        }
                    }
                }
                lists.extend(next);
                lists.sort();
                lists.dedup();
            }
            for l in lists {
                out.push(SGrade {
                    g,
                    ob: EnvObj(l),
                });
            }
        }
        out.sort();
        out
    }
}

/// Pentagon over all generator quadruples and triangle over all pairs,
/// plus naturality of the associator against `⊠` on sampled morphisms.
/// The pentagon/triangle witnesses carry the full composite transcript.
pub fn validate_smash_coherence(
    sc: &SmashContext,
    gens: &[SGrade],
    skip_pentagon: bool,
) -> DiagramReport {
    let mut rep = DiagramReport::new();
    let env = &sc.ctx.env;
    // triangle: (a ⊠ 𝟙) ⊠ b -> a ⊠ (𝟙 ⊠ b) then id ⊠ L equals R ⊠ id
    for a in gens {
        for b in gens {
            let ok = (|| -> Result<bool> {
                let unit = sc.unit();
                let assoc = sc.associator(a, &unit, b)?;
                let l = SMor {
                    g: b.g,
                    mor: sc.left_unitor(b)?,
                };
                let lhs = env.compose(&sc.tensor_mor(&sc.id_mor(a), &l)?.mor, &assoc)?;
                let r = SMor {
                    g: a.g,
                    mor: sc.right_unitor(a)?,
                };
                let rhs = sc.tensor_mor(&r, &sc.id_mor(b))?.mor;
                Ok(lhs == rhs)
            })();
            if !matches!(ok, Ok(true)) {
                rep.fail("smash-triangle", format!("at ({a:?}, {b:?})"));
            }
        }
    }
    if !rep.passed() {
        return rep.finish();
    }
    if skip_pentagon {
        rep.warn("pentagon check skipped by flag");
        return rep.finish();
    }
    // pentagon over all quadruples, in parallel with deterministic aggregation
    let quads: Vec<(usize, usize, usize, usize)> = (0..gens.len())
        .flat_map(|i| {
            (0..gens.len()).flat_map(move |j| {
                (0..gens.len()).flat_map(move |k| (0..gens.len()).map(move |l| (i, j, k, l)))
            })
        })
        .collect();
    let failures: Vec<String> = quads
        .par_iter()
        .filter_map(|&(i, j, k, l)| {
            pentagon_failure(sc, &gens[i], &gens[j], &gens[k], &gens[l])
        })
        .collect();
    for f in failures {
        rep.fail("smash-pentagon", f);
    }
    // associator naturality in each argument, over every hom element between
    // single-summand generators (identities in the other two slots)
    let single: Vec<&SGrade> = gens.iter().filter(|a| a.ob.len() <= 1).collect();
    let homs = |a: &SGrade, b: &SGrade| -> Vec<SMor> {
        if a.g != b.g || a.ob.len() != 1 || b.ob.len() != 1 {
            return Vec::new();
        }
        sc.ctx
            .t
            .cat()
            .hom(a.ob.0[0], b.ob.0[0])
            .into_iter()
            .map(|f| SMor {
                g: a.g,
                mor: sc.ctx.env.from_base(f),
            })
            .collect()
    };
    let check_nat = |f3: [(&SGrade, &SGrade, &SMor); 3], rep: &mut DiagramReport| {
        let [(a, a2, fa), (b, b2, fb), (c, c2, fc)] = f3;
        let ok = (|| -> Result<bool> {
            let assoc_src = sc.associator(a, b, c)?;
            let assoc_dst = sc.associator(a2, b2, c2)?;
            let lhs = env.compose(&sc.tensor_mor(fa, &sc.tensor_mor(fb, fc)?)?.mor, &assoc_src)?;
            let rhs = env.compose(&assoc_dst, &sc.tensor_mor(&sc.tensor_mor(fa, fb)?, fc)?.mor)?;
            Ok(lhs == rhs)
        })();
        if !matches!(ok, Ok(true)) {
            rep.fail(
                "associator-naturality",
                format!(
                    "at ({}, {}, {})",
                    fmt_sgrade(sc, a),
                    fmt_sgrade(sc, b),
                    fmt_sgrade(sc, c)
                ),
            );
        }
    };
    for slot in 0..3 {
        for x in &single {
            for x2 in &single {
                for fx in homs(x, x2) {
                    for y in &single {
                        for z in &single {
                            let (iy, iz) = (sc.id_mor(y), sc.id_mor(z));
                            let triples = match slot {
                                0 => [(*x, *x2, &fx), (*y, *y, &iy), (*z, *z, &iz)],
                                1 => [(*y, *y, &iy), (*x, *x2, &fx), (*z, *z, &iz)],
                                _ => [(*y, *y, &iy), (*z, *z, &iz), (*x, *x2, &fx)],
                            };
                            check_nat(triples, &mut rep);
                        }
                    }
                }
            }
        }
    }
    rep.finish()
}

/// One pentagon instance: both composite paths around
/// `((a⊠b)⊠c)⊠d -> a⊠(b⊠(c⊠d))` must agree. Returns a witness transcript
/// on failure.
pub fn pentagon_failure(
    sc: &SmashContext,
    a: &SGrade,
    b: &SGrade,
    c: &SGrade,
    d: &SGrade,
) -> Option<String> {
    let env = &sc.ctx.env;
    let ok = (|| -> Result<bool> {
        let ab = sc.tensor(a, b)?;
        let bc = sc.tensor(b, c)?;
        let cd = sc.tensor(c, d)?;
        // top path: ((ab)c)d -> (a(bc))d -> a((bc)d) -> a(b(cd))
        let p1 = sc.tensor_mor(
            &SMor {
                g: sc.ctx.group().mul(ab.g, c.g),
                mor: sc.associator(a, b, c)?,
            },
            &sc.id_mor(d),
        )?;
        let p2 = sc.associator(a, &bc, d)?;
        let p3 = sc.tensor_mor(
            &sc.id_mor(a),
            &SMor {
                g: sc.ctx.group().mul(bc.g, d.g),
                mor: sc.associator(b, c, d)?,
            },
        )?;
        let top = env.compose_path(&[&p1.mor, &p2, &p3.mor])?;
        // bottom path: ((ab)c)d -> (ab)(cd) -> a(b(cd))
        let q1 = sc.associator(&ab, c, d)?;
        let q2 = sc.associator(a, b, &cd)?;
        let bottom = env.compose(&q2, &q1)?;
        Ok(top == bottom)
    })();
    match ok {
        Ok(true) => None,
        Ok(false) => Some(format!(
            "pentagon at ({}, {}, {}, {}): paths disagree",
            fmt_sgrade(sc, a),
            fmt_sgrade(sc, b),
            fmt_sgrade(sc, c),
            fmt_sgrade(sc, d)
        )),
        Err(e) => Some(format!(
            "pentagon at ({}, {}, {}, {}): {e}",
            fmt_sgrade(sc, a),
            fmt_sgrade(sc, b),
            fmt_sgrade(sc, c),
            fmt_sgrade(sc, d)
        )),
    }
}

/// Deterministic seeded spot-check of pentagon instances over a generator
/// set too large for the exhaustive sweep (multiplicity-capped sums).
pub fn spot_check_pentagons(
    sc: &SmashContext,
    gens: &[SGrade],
    samples: usize,
    seed: u64,
) -> DiagramReport {
    let mut rep = DiagramReport::new();
    let n = gens.len() as u64;
    let mut state = seed;
    let mut next = || {
        // xorshift64*
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        state = state.wrapping_mul(0x2545F4914F6CDD1D);
        state
    };
    for _ in 0..samples {
        let (i, j, k, l) = (
            (next() % n) as usize,
            (next() % n) as usize,
            (next() % n) as usize,
            (next() % n) as usize,
        );
        if let Some(f) = pentagon_failure(sc, &gens[i], &gens[j], &gens[k], &gens[l]) {
            rep.fail("smash-pentagon-spot", f);
        }
    }
    rep.finish()
}


fn fmt_sgrade(sc: &SmashContext, a: &SGrade) -> String {
    let names: Vec<String> =
        a.ob.0
            .iter()
            .map(|&o| sc.ctx.t.cat().ob_name(o).to_string())
            .collect();
    format!("[{}]δ_{}", names.join("⊕"), sc.ctx.group().name(a.g))
}

/// `π₀(g) = 𝟙_g δ_g`.
pub fn pi0(sc: &SmashContext, g: Gel) -> SGrade {
    SGrade {
        g,
        ob: sc.ctx.unit_env(g),
    }
}

/// `φ₀(X) = X δ_e` on envelope objects.
pub fn phi0(sc: &SmashContext, x: &EnvObj) -> SGrade {
    SGrade {
        g: sc.ctx.group().e,
        ob: x.clone(),
    }
}

/// Isomorphism search between single-grade smash objects: grades must match,
/// carriers must be envelope-isomorphic.
pub fn smash_iso(sc: &SmashContext, a: &SGrade, b: &SGrade, budget: usize) -> IsoSearch {
    if a.g != b.g {
        return IsoSearch::CertifiedNone("different grades".into());
    }
    find_env_iso(&sc.ctx.env, &a.ob, &b.ob, budget)
}

/// `(PR1)`–`(PR4)` for `π₀`, monoidality of `φ₀`, and the two compatibility
/// relations between them, all with explicit isomorphism witnesses.
pub fn validate_canonical_functors(sc: &SmashContext, budget: usize) -> DiagramReport {
    let mut rep = DiagramReport::new();
    let grp = sc.ctx.group().clone();
    // (PR1): π₀(e) is the unit on the nose
    if pi0(sc, grp.e) != sc.unit() {
        rep.fail("PR1", "π₀(e) != 𝟙_{C⋊G}");
    }
    let expect_iso = |name: String, a: &SGrade, b: &SGrade, rep: &mut DiagramReport| {
        match smash_iso(sc, a, b, budget) {
            IsoSearch::Found(_) => {}
            other => rep.fail(
                name,
                format!("{} vs {}: {other:?}", fmt_sgrade(sc, a), fmt_sgrade(sc, b)),
            ),
        }
    };
    for g in grp.elements() {
        let gi = grp.inv(g);
        for h in grp.elements() {
            let hi = grp.inv(h);
            let gh = grp.mul(g, h);
            let ok = (|| -> Result<((SGrade, SGrade), (SGrade, SGrade))> {
                // (PR2): π₀(g)π₀(h)π₀(h^{-1}) ≅ π₀(gh)π₀(h^{-1})
                let lhs2 = sc.tensor(&sc.tensor(&pi0(sc, g), &pi0(sc, h))?, &pi0(sc, hi))?;
                let rhs2 = sc.tensor(&pi0(sc, gh), &pi0(sc, hi))?;
                // (PR3): π₀(g^{-1})π₀(g)π₀(h) ≅ π₀(g^{-1})π₀(gh)
                let lhs3 = sc.tensor(&sc.tensor(&pi0(sc, gi), &pi0(sc, g))?, &pi0(sc, h))?;
                let rhs3 = sc.tensor(&pi0(sc, gi), &pi0(sc, gh))?;
                Ok(((lhs2, rhs2), (lhs3, rhs3)))
            })();
            match ok {
                Err(e) => rep.fail("PR2/PR3", format!("{e}")),
                Ok(((l2, r2), (l3, r3))) => {
                    expect_iso(format!("PR2 at ({}, {})", grp.name(g), grp.name(h)), &l2, &r2, &mut rep);
                    expect_iso(format!("PR3 at ({}, {})", grp.name(g), grp.name(h)), &l3, &r3, &mut rep);
                }
            }
        }
        // (PR4): π₀(g)π₀(g^{-1})π₀(g) ≅ π₀(g)
        let ok = (|| -> Result<(SGrade, SGrade)> {
            let lhs = sc.tensor(&sc.tensor(&pi0(sc, g), &pi0(sc, gi))?, &pi0(sc, g))?;
            Ok((lhs, pi0(sc, g)))
        })();
        match ok {
            Err(e) => rep.fail("PR4", format!("{e}")),
            Ok((l, r)) => expect_iso(format!("PR4 at {}", grp.name(g)), &l, &r, &mut rep),
        }
    }
    // φ₀ monoidal on base objects
    let c = sc.ctx.t.cat();
    for x in c.obs() {
        for y in c.obs() {
            let ok = (|| -> Result<(SGrade, SGrade)> {
                let lhs = sc.tensor(&phi0(sc, &EnvObj::single(x)), &phi0(sc, &EnvObj::single(y)))?;
                let rhs = phi0(sc, &EnvObj::single(sc.ctx.t.ambient.ob(x, y)));
                Ok((lhs, rhs))
            })();
            match ok {
                Err(e) => rep.fail("phi0-monoidal", format!("{e}")),
                Ok((l, r)) => expect_iso(
                    format!("phi0-monoidal at ({}, {})", c.ob_name(x), c.ob_name(y)),
                    &l,
                    &r,
                    &mut rep,
                ),
            }
        }
    }
    // compatibility (i) and (ii)
    for g in grp.elements() {
        let gi = grp.inv(g);
        for x in c.obs() {
            let fx = phi0(sc, &EnvObj::single(x));
            let ok = (|| -> Result<((SGrade, SGrade), (SGrade, SGrade))> {
                let gg = sc.tensor(&pi0(sc, g), &pi0(sc, gi))?;
                let lhs1 = sc.tensor(&fx, &gg)?;
                let rhs1 = sc.tensor(&gg, &fx)?;
                let lhs2 = sc.tensor(&sc.tensor(&pi0(sc, g), &fx)?, &pi0(sc, gi))?;
                let m = &*sc.ctx.t.ambient;
                let inner = sc.ctx.t.t_ob(g, m.ob(x, sc.ctx.ud.unit_ob(gi)))?;
                let rhs2 = phi0(sc, &EnvObj::single(inner));
                Ok(((lhs1, rhs1), (lhs2, rhs2)))
            })();
            match ok {
                Err(e) => rep.fail("compat", format!("{e}")),
                Ok(((l1, r1), (l2, r2))) => {
                    expect_iso(
                        format!("compat-i at ({}, {})", grp.name(g), c.ob_name(x)),
                        &l1,
                        &r1,
                        &mut rep,
                    );
                    expect_iso(
                        format!("compat-ii at ({}, {})", grp.name(g), c.ob_name(x)),
                        &l2,
                        &r2,
                        &mut rep,
                    );
                }
            }
        }
    }
    rep.finish()
}

/// `X δ_g ⊙ Y = X ⊗ T_g(Y ⊗ 𝟙_{g^{-1}})`: the action of the smash product
/// on the envelope of the base category.
pub fn odot(sc: &SmashContext, a: &SGrade, y: &EnvObj) -> Result<EnvObj> {
    let ctx = &sc.ctx;
    let gi = ctx.group().inv(a.g);
    let inner = ctx.env.tensor_ob(y, &ctx.unit_env(gi));
    Ok(ctx.env.tensor_ob(&a.ob, &ctx.t_ob(a.g, &inner)?))
}

/// Associativity and unit of the `⊙` action up to isomorphism:
/// `(a ⊠ b) ⊙ Z ≅ a ⊙ (b ⊙ Z)` and `𝟙 ⊙ Z ≅ Z`.
pub fn validate_odot_associativity(
    sc: &SmashContext,
    gens: &[SGrade],
    targets: &[EnvObj],
    budget: usize,
) -> DiagramReport {
    let mut rep = DiagramReport::new();
    for z in targets {
        let ok = (|| -> Result<bool> {
            let uz = odot(sc, &sc.unit(), z)?;
            Ok(matches!(
                find_env_iso(&sc.ctx.env, &uz, z, budget),
                IsoSearch::Found(_)
            ))
        })();
        if !matches!(ok, Ok(true)) {
            rep.fail("odot-unit", format!("𝟙 ⊙ {z} not isomorphic to {z}"));
        }
    }
    for a in gens {
        for b in gens {
            for z in targets {
                let ok = (|| -> Result<bool> {
                    let lhs = odot(sc, &sc.tensor(a, b)?, z)?;
                    let rhs = odot(sc, a, &odot(sc, b, z)?)?;
                    Ok(matches!(
                        find_env_iso(&sc.ctx.env, &lhs, &rhs, budget),
                        IsoSearch::Found(_)
                    ))
                })();
                if !matches!(ok, Ok(true)) {
                    rep.fail(
                        "odot-associativity",
                        format!("({}, {}, {z})", fmt_sgrade(sc, a), fmt_sgrade(sc, b)),
                    );
                }
            }
        }
    }
    rep.finish()
}

/// The assembled tabulated view of the single-grade smash product at the
/// context's cap: every hom element enumerated, with the tensor and the
/// stored associator/unitor component tables.
pub struct SmashView {
    pub mon: Arc<MonoidalStructure>,
    pub objects: Vec<SGrade>,
    /// morphism id -> (grade, envelope morphism)
    pub morphisms: Vec<SMor>,
    pub associator: BTreeMap<(Ob, Ob, Ob), Mor>,
    pub left_unitor: BTreeMap<Ob, Mor>,
    pub right_unitor: BTreeMap<Ob, Mor>,
}

/// Enumerate the view; `budget` caps the total morphism count.
pub fn assemble_view(sc: &SmashContext, budget: usize) -> Result<SmashView> {
    let gens = sc.generators();
    let env = &sc.ctx.env;
    let p = env.lin.p() as u64;
    // count morphisms first
    let mut total: u64 = 0;
    for a in &gens {
        for b in &gens {
            if a.g == b.g {
                total = total.saturating_add(p.saturating_pow(env.hom_dim(&a.ob, &b.ob) as u32));
            }
        }
    }
    if total as usize > budget {
        return Err(CatError::SearchBudgetExceeded {
            budget,
            context: format!("smash view with {total} morphisms"),
        });
    }
    let mut b = CatBuilder::new();
    for a in &gens {
        b.add_object(fmt_sgrade(sc, a));
    }
    let ob_of = |a: &SGrade| Ob(gens.iter().position(|x| x == a).unwrap() as u32);
    let mut morphisms: Vec<SMor> = Vec::new();
    let mut index: BTreeMap<(Ob, Ob, Vec<Mor>), Mor> = BTreeMap::new();
    for (i, a) in gens.iter().enumerate() {
        for (j, bb) in gens.iter().enumerate() {
            if a.g != bb.g {
                continue;
            }
            for mor in enumerate_env_homs(env, &a.ob, &bb.ob) {
                let id = b.add_morphism(
                    Ob(i as u32),
                    Ob(j as u32),
                    format!("s{}", morphisms.len()),
                );
                index.insert(
                    (Ob(i as u32), Ob(j as u32), mor.entries().to_vec()),
                    id,
                );
                morphisms.push(SMor { g: a.g, mor });
            }
        }
    }
    let find = |dom: Ob, cod: Ob, m: &EnvMor| -> Result<Mor> {
        index
            .get(&(dom, cod, m.entries().to_vec()))
            .copied()
            .ok_or_else(|| CatError::MalformedSpec("morphism escapes the view".into()))
    };
    for (i, a) in gens.iter().enumerate() {
        b.set_identity(
            Ob(i as u32),
            find(Ob(i as u32), Ob(i as u32), &env.id(&a.ob))?,
        );
    }
    let n_mor = morphisms.len();
    for i in 0..n_mor {
        for j in 0..n_mor {
            let (f, g2) = (&morphisms[i], &morphisms[j]);
            let fd = b.morphisms[i].clone();
            let gd = b.morphisms[j].clone();
            if fd.cod != gd.dom {
                continue;
            }
            let comp = env.compose(&g2.mor, &f.mor)?;
            let target = find(fd.dom, gd.cod, &comp)?;
            b.set_compose(Mor(j as u32), Mor(i as u32), target);
        }
    }
    let cat = Arc::new(b.build()?);
    let mut obt = BTreeMap::new();
    let mut capped: BTreeMap<(Ob, Ob), SGrade> = BTreeMap::new();
    for (i, a) in gens.iter().enumerate() {
        for (j, bb) in gens.iter().enumerate() {
            let prod = sc.tensor(a, bb)?;
            // products can exceed the cap; land them on an isomorphic capped
            // object when one exists, otherwise fail loudly
            let target = if let Some(k) = gens.iter().position(|x| *x == prod) {
                Ob(k as u32)
            } else {
                return Err(CatError::ClosureOverflow { cap: sc.cap });
            };
            obt.insert((Ob(i as u32), Ob(j as u32)), target);
            capped.insert((Ob(i as u32), Ob(j as u32)), prod);
        }
    }
    let mut mort = BTreeMap::new();
    for i in 0..n_mor {
        for j in 0..n_mor {
            let prod = sc.tensor_mor(&morphisms[i], &morphisms[j])?;
            let dom = obt[&(cat.dom(Mor(i as u32)), cat.dom(Mor(j as u32)))];
            let cod = obt[&(cat.cod(Mor(i as u32)), cat.cod(Mor(j as u32)))];
            mort.insert((Mor(i as u32), Mor(j as u32)), find(dom, cod, &prod.mor)?);
        }
    }
    let unit_ob = ob_of(&sc.unit());
    let mon = Arc::new(MonoidalStructure::new(cat.clone(), &obt, &mort, Some(unit_ob))?);
    let mut associator = BTreeMap::new();
    for (i, a) in gens.iter().enumerate() {
        for (j, bb) in gens.iter().enumerate() {
            for (k, cc) in gens.iter().enumerate() {
                let assoc = sc.associator(a, bb, cc)?;
                let dom = obt[&(obt[&(Ob(i as u32), Ob(j as u32))], Ob(k as u32))];
                let cod = obt[&(Ob(i as u32), obt[&(Ob(j as u32), Ob(k as u32))])];
                associator.insert(
                    (Ob(i as u32), Ob(j as u32), Ob(k as u32)),
                    find(dom, cod, &assoc)?,
                );
            }
        }
    }
    let mut left_unitor = BTreeMap::new();
    let mut right_unitor = BTreeMap::new();
    for (i, a) in gens.iter().enumerate() {
        let l = sc.left_unitor(a)?;
        left_unitor.insert(Ob(i as u32), find(obt[&(unit_ob, Ob(i as u32))], Ob(i as u32), &l)?);
        let r = sc.right_unitor(a)?;
        right_unitor.insert(Ob(i as u32), find(obt[&(Ob(i as u32), unit_ob)], Ob(i as u32), &r)?);
    }
    Ok(SmashView {
        mon,
        objects: gens,
        morphisms,
        associator,
        left_unitor,
        right_unitor,
    })
}

fn enumerate_env_homs(env: &crate::linalg::Envelope, a: &EnvObj, b: &EnvObj) -> Vec<EnvMor> {
    let mut shape: Vec<(Ob, Ob)> = Vec::new();
    for i in 0..b.len() {
        for j in 0..a.len() {
            shape.push((a.0[j], b.0[i]));
        }
    }
    let p = env.lin.p();
    let mut out = Vec::new();
    let mut coords: Vec<Vec<u32>> = shape
        .iter()
        .map(|&(x, y)| vec![0u32; env.lin.dim(x, y)])
        .collect();
    loop {
        let entries: Vec<Mor> = shape
            .iter()
            .zip(&coords)
            .map(|(&(x, y), v)| env.lin.from_coords(x, y, v).unwrap())
            .collect();
        out.push(env.mor(a.clone(), b.clone(), entries).unwrap());
        let mut carried = true;
        'inc: for block in coords.iter_mut() {
            for d in block.iter_mut() {
                *d += 1;
                if *d < p {
                    carried = false;
                    break 'inc;
                }
                *d = 0;
            }
        }
        if carried {
            break;
        }
    }
    out
}

/// A covariant pair `(φ, π)` into a monoidal target category.
pub struct CovariantPair {
    pub target: Arc<MonoidalStructure>,
    pub phi: crate::monoidal::SemigroupalFunctor,
    pub pi: BTreeMap<Gel, Ob>,
}

/// `(CV1)`–`(CV3)`, by exhaustive checks and isomorphism search in the
/// target. Violations carry the failing axiom.
pub fn validate_covariant_pair(
    t: &crate::paction::PartialAction,
    ud: &crate::paction::UnitalData,
    cp: &CovariantPair,
) -> DiagramReport {
    let mut rep = DiagramReport::new();
    let d = &*cp.target;
    let dc = &*d.base;
    let grp = &t.group;
    // (CV1) φ monoidal
    rep.absorb(
        "CV1",
        crate::monoidal::validate_semigroupal_functor(&t.ambient, d, &cp.phi),
    );
    // (CV2)
    let Some(unit_d) = d.unit else {
        rep.fail("CV2", "target category has no unit");
        return rep.finish();
    };
    match cp.pi.get(&grp.e) {
        Some(&pe) if pe == unit_d => {}
        Some(_) => rep.fail("CV2a", "π(e) != 𝟙_D"),
        None => rep.fail("CV2a", "π undefined at e"),
    }
    let pi_at = |g: Gel| -> Result<Ob> {
        cp.pi
            .get(&g)
            .copied()
            .ok_or_else(|| CatError::NotCovariantPair(format!("π undefined at {}", grp.name(g))))
    };
    for g in grp.elements() {
        for h in grp.elements() {
            let gi = grp.inv(g);
            let hi = grp.inv(h);
            let gh = grp.mul(g, h);
            let ok = (|| -> Result<(bool, bool)> {
                let b = d.ob(d.ob(pi_at(g)?, pi_at(h)?), pi_at(hi)?);
                let b2 = d.ob(pi_at(gh)?, pi_at(hi)?);
                let cv2b = dc.find_iso(b, b2).is_some();
                let c1 = d.ob(d.ob(pi_at(gi)?, pi_at(g)?), pi_at(h)?);
                let c2 = d.ob(pi_at(gi)?, pi_at(gh)?);
                let cv2c = dc.find_iso(c1, c2).is_some();
                Ok((cv2b, cv2c))
            })();
            match ok {
                Err(e) => rep.fail("CV2", format!("{e}")),
                Ok((b, c)) => {
                    if !b {
                        rep.fail("CV2b", format!("at ({}, {})", grp.name(g), grp.name(h)));
                    }
                    if !c {
                        rep.fail("CV2c", format!("at ({}, {})", grp.name(g), grp.name(h)));
                    }
                }
            }
        }
    }
    // (CV3)
    for g in grp.elements() {
        let gi = grp.inv(g);
        for x in t.cat().obs() {
            let ok = (|| -> Result<(bool, bool)> {
                let fx = cp.phi.functor.on_ob(x)?;
                let gg = d.ob(pi_at(g)?, pi_at(gi)?);
                let i1 = dc.find_iso(d.ob(fx, gg), d.ob(gg, fx)).is_some();
                let inner = t.t_ob(g, t.ambient.ob(x, ud.unit_ob(gi)))?;
                let lhs = d.ob(d.ob(pi_at(g)?, fx), pi_at(gi)?);
                let rhs = cp.phi.functor.on_ob(inner)?;
                let i2 = dc.find_iso(lhs, rhs).is_some();
                Ok((i1, i2))
            })();
            match ok {
                Err(e) => rep.fail("CV3", format!("{e}")),
                Ok((a, b)) => {
                    if !a {
                        rep.fail("CV3a", format!("at ({}, {})", grp.name(g), t.cat().ob_name(x)));
                    }
                    if !b {
                        rep.fail("CV3b", format!("at ({}, {})", grp.name(g), t.cat().ob_name(x)));
                    }
                }
            }
        }
    }
    rep.finish()
}


/// The identity covariant pair `(φ₀, π₀)` of an assembled view, used to
/// exercise the universal property against the smash product itself.
pub fn identity_covariant_pair(sc: &SmashContext, view: &SmashView) -> Result<CovariantPair> {
    let c = sc.ctx.t.cat();
    let mut phi = crate::monoidal::SemigroupalFunctor::default();
    for x in c.obs() {
        let ob = phi0(sc, &EnvObj::single(x));
        let i = view
            .objects
            .iter()
            .position(|a| *a == ob)
            .ok_or_else(|| CatError::MalformedSpec("φ₀ image missing from the view".into()))?;
        phi.functor.ob.insert(x, Ob(i as u32));
    }
    for f in c.mors() {
        let target = view
            .morphisms
            .iter()
            .position(|sm| sm.g == sc.ctx.group().e && sm.mor == sc.ctx.env.from_base(f))
            .ok_or_else(|| CatError::MalformedSpec("φ₀ morphism missing from the view".into()))?;
        phi.functor.mor.insert(f, Mor(target as u32));
    }
    for x in c.obs() {
        for y in c.obs() {
            let dom = view.mon.ob(phi.functor.ob[&x], phi.functor.ob[&y]);
            let target = phi.functor.ob[&sc.ctx.t.ambient.ob(x, y)];
            let j = view
                .mon
                .base
                .find_iso(dom, target)
                .ok_or_else(|| CatError::NotIsomorphism("φ₀ tensor comparison".into()))?;
            phi.j.insert((x, y), j);
        }
    }
    let unit_smash = view
        .mon
        .unit
        .ok_or_else(|| CatError::MalformedSpec("view has no unit".into()))?;
    phi.j0 = Some(view.mon.base.identity(unit_smash));
    let mut pi = BTreeMap::new();
    for g in sc.ctx.group().elements() {
        let ob = pi0(sc, g);
        let i = view
            .objects
            .iter()
            .position(|a| *a == ob)
            .ok_or_else(|| CatError::MalformedSpec("π₀ image missing from the view".into()))?;
        pi.insert(g, Ob(i as u32));
    }
    Ok(CovariantPair {
        target: view.mon.clone(),
        phi,
        pi,
    })
}

/// Build `Ψ : C ⋊ G -> D` from a covariant pair on the assembled view:
/// `X_g δ_g ↦ φ(X_g) ⊗̄ π(g)` (single-summand grades), then verify the
/// commuting triangles `Ψ∘φ₀ ≅ φ` and `Ψ∘π₀ ≅ π` and monoidality of `Ψ`
/// by isomorphism search.
pub fn covariant_psi(
    sc: &SmashContext,
    view: &SmashView,
    cp: &CovariantPair,
) -> Result<(BTreeMap<Ob, Ob>, DiagramReport)> {
    let mut rep = validate_covariant_pair(&sc.ctx.t, &sc.ctx.ud, cp);
    if !rep.passed() {
        return Err(CatError::NotCovariantPair(format!(
            "{:?}",
            rep.failures.first()
        )));
    }
    let d = &*cp.target;
    let dc = &*d.base;
    let mut psi: BTreeMap<Ob, Ob> = BTreeMap::new();
    for (i, a) in view.objects.iter().enumerate() {
        // φ on a formal sum needs biproducts in D; the view is assembled at
        // cap 1 for this purpose, so grades are single summands or zero
        let img = match a.ob.len() {
            0 => None,
            1 => Some(d.ob(cp.phi.functor.on_ob(a.ob.0[0])?, cp.pi[&a.g])),
            _ => {
                return Err(CatError::SearchBudgetExceeded {
                    budget: 1,
                    context: "Ψ on multi-summand grades needs biproducts in the target".into(),
                })
            }
        };
        if let Some(img) = img {
            psi.insert(Ob(i as u32), img);
        }
    }
    // Ψ ∘ φ₀ ≅ φ
    for x in sc.ctx.t.cat().obs() {
        let ob = phi0(sc, &EnvObj::single(x));
        let i = view.objects.iter().position(|a| *a == ob).unwrap();
        let lhs = psi[&Ob(i as u32)];
        let rhs = cp.phi.functor.on_ob(x)?;
        if dc.find_iso(lhs, rhs).is_none() {
            rep.fail("psi-phi0-triangle", format!("at {}", sc.ctx.t.cat().ob_name(x)));
        }
    }
    // Ψ ∘ π₀ ≅ π
    for g in sc.ctx.group().elements() {
        let ob = pi0(sc, g);
        let i = view.objects.iter().position(|a| *a == ob).unwrap();
        let lhs = psi[&Ob(i as u32)];
        if dc.find_iso(lhs, cp.pi[&g]).is_none() {
            rep.fail("psi-pi0-triangle", format!("at {}", sc.ctx.group().name(g)));
        }
    }
    // monoidality of Ψ on view objects (where Ψ is defined)
    for (i, a) in view.objects.iter().enumerate() {
        for (j, b) in view.objects.iter().enumerate() {
            let prod = view.mon.ob(Ob(i as u32), Ob(j as u32));
            let (Some(&pi_), Some(&pj), Some(&pp)) =
                (psi.get(&Ob(i as u32)), psi.get(&Ob(j as u32)), psi.get(&prod))
            else {
                continue;
            };
            if dc.find_iso(d.ob(pi_, pj), pp).is_none() {
                rep.fail(
                    "psi-monoidal",
                    format!("at ({}, {})", fmt_sgrade(sc, a), fmt_sgrade(sc, b)),
                );
            }
        }
    }
    Ok((psi, rep.finish()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::paction::extract_unital_data;

    fn smash_for(inst: &corpus::Instance, cap: usize) -> SmashContext {
        let t = &inst.action;
        let (ud, rep) = extract_unital_data(t, 1_000_000).unwrap();
        rep.expect_pass("unital data");
        let ctx = EnvAction::new(t, &ud.unwrap(), inst.linear.clone().unwrap()).unwrap();
        SmashContext::new(ctx, cap)
    }

    fn ob_named(sc: &SmashContext, name: &str) -> Ob {
        sc.ctx
            .t
            .cat()
            .obs()
            .find(|&o| sc.ctx.t.cat().ob_name(o) == name)
            .unwrap()
    }

    #[test]
    fn tensor_matches_hand_computation_on_inst_top() {
        let inst = corpus::inst_top_linear();
        let sc = smash_for(&inst, 1);
        let g = Gel(1);
        let y13 = ob_named(&sc, "{1,3}");
        let y3 = ob_named(&sc, "{3}");
        // ({1,3}δ_e) ⊠ ({3}δ_g) = {3}δ_g
        let a = SGrade {
            g: sc.ctx.group().e,
            ob: EnvObj::single(y13),
        };
        let b = SGrade {
            g,
            ob: EnvObj::single(y3),
        };
        let ab = sc.tensor(&a, &b).unwrap();
        assert_eq!((ab.g, &ab.ob), (g, &EnvObj::single(y3)));
        // ({3}δ_g) ⊠ ({3}δ_g) = {3}δ_e
        let bb = sc.tensor(&b, &b).unwrap();
        assert_eq!((bb.g, &bb.ob), (sc.ctx.group().e, &EnvObj::single(y3)));
        // grade arithmetic on all generator pairs
        for x in sc.generators() {
            for y in sc.generators() {
                let xy = sc.tensor(&x, &y).unwrap();
                assert_eq!(xy.g, sc.ctx.group().mul(x.g, y.g));
            }
        }
    }

    #[test]
    fn grade_domain_violation_is_rejected() {
        let inst = corpus::inst_top_linear();
        let sc = smash_for(&inst, 1);
        let y1 = ob_named(&sc, "{1}");
        let bad = SGrade {
            g: Gel(1),
            ob: EnvObj::single(y1), // {1} is not in C_g
        };
        let unit = sc.unit();
        assert!(matches!(
            sc.tensor(&bad, &unit),
            Err(CatError::GradeDomainError(_))
        ));
    }

    #[test]
    fn inst_top_coherence_with_eight_generators() {
        let inst = corpus::inst_top_linear();
        let sc = smash_for(&inst, 1);
        let gens = sc.generators();
        assert_eq!(gens.len(), 8);
        validate_smash_coherence(&sc, &gens, false).expect_pass("coherence");
    }

    #[test]
    fn skip_pentagon_flag_is_reported() {
        let inst = corpus::inst_top_linear();
        let sc = smash_for(&inst, 1);
        let gens = sc.generators();
        let rep = validate_smash_coherence(&sc, &gens, true);
        assert!(rep.passed());
        assert!(rep.warnings.iter().any(|w| w.contains("skipped")));
    }

    #[test]
    fn canonical_functors_on_both_instances() {
        for inst in [corpus::inst_top_linear(), corpus::inst_fus()] {
            let sc = smash_for(&inst, 1);
            validate_canonical_functors(&sc, 100_000).expect_pass("PR and compat");
        }
    }

    #[test]
    fn pr4_example_concretely() {
        let inst = corpus::inst_top_linear();
        let sc = smash_for(&inst, 1);
        let g = Gel(1);
        let p = pi0(&sc, g);
        let triple = sc
            .tensor(&sc.tensor(&p, &pi0(&sc, g)).unwrap(), &p)
            .unwrap();
        // ({3}δ_g ⊠ {3}δ_g) ⊠ {3}δ_g = {3}δ_g on the nose here
        assert_eq!(triple, p);
    }

    #[test]
    fn odot_associativity_on_corpus() {
        for inst in [corpus::inst_top_linear(), corpus::inst_fus()] {
            let sc = smash_for(&inst, 1);
            let gens = sc.generators();
            let targets: Vec<EnvObj> = sc.ctx.t.cat().obs().map(EnvObj::single).collect();
            validate_odot_associativity(&sc, &gens, &targets, 100_000)
                .expect_pass("⊙ associativity");
        }
    }

    #[test]
    fn assembled_view_is_a_valid_monoidal_category() {
        let inst = corpus::inst_top_linear();
        let sc = smash_for(&inst, 1);
        let view = assemble_view(&sc, 100_000).unwrap();
        crate::fincat::validate_category(&view.mon.base).expect_pass("view category");
        // unit laws are only up to the stored unitors, so validate without
        // the strict-unit claim
        let unitless = MonoidalStructure::new(
            view.mon.base.clone(),
            &{
                let mut t = BTreeMap::new();
                for x in view.mon.base.obs() {
                    for y in view.mon.base.obs() {
                        t.insert((x, y), view.mon.ob(x, y));
                    }
                }
                t
            },
            &{
                let mut t = BTreeMap::new();
                for f in view.mon.base.mors() {
                    for g in view.mon.base.mors() {
                        t.insert((f, g), view.mon.mor(f, g));
                    }
                }
                t
            },
            None,
        )
        .unwrap();
        crate::monoidal::validate_semigroupal(&unitless).expect_pass("view tensor");
        // stored unitors are isomorphisms
        for (_, &l) in &view.left_unitor {
            assert!(view.mon.base.is_iso(l));
        }
    }

    #[test]
    fn identity_covariant_pair_gives_psi() {
        let inst = corpus::inst_top_linear();
        let sc = smash_for(&inst, 1);
        let view = assemble_view(&sc, 100_000).unwrap();
        // φ₀ into the view as a semigroupal functor
        let c = sc.ctx.t.cat();
        let mut phi = crate::monoidal::SemigroupalFunctor::default();
        for x in c.obs() {
            let ob = phi0(&sc, &EnvObj::single(x));
            let i = view.objects.iter().position(|a| *a == ob).unwrap();
            phi.functor.ob.insert(x, Ob(i as u32));
        }
        for f in c.mors() {
            let g = sc.ctx.group().e;
            let target = view
                .morphisms
                .iter()
                .position(|sm| sm.g == g && sm.mor == sc.ctx.env.from_base(f))
                .unwrap();
            phi.functor.mor.insert(f, Mor(target as u32));
        }
        for x in c.obs() {
            for y in c.obs() {
                // J component: φ₀(X)⊠φ₀(Y) -> φ₀(X⊗Y) is u^{-1}-based; find it
                let dom = view.mon.ob(phi.functor.ob[&x], phi.functor.ob[&y]);
                let cod = phi.functor.ob[&c.obs().find(|_| true).unwrap()];
                let _ = cod;
                let target = phi.functor.ob[&sc.ctx.t.ambient.ob(x, y)];
                let j = view
                    .mon
                    .base
                    .find_iso(dom, target)
                    .expect("J iso exists");
                phi.j.insert((x, y), j);
            }
        }
        let unit_smash = view.mon.unit.unwrap();
        phi.j0 = Some(view.mon.base.identity(unit_smash));
        let mut pi = BTreeMap::new();
        for g in sc.ctx.group().elements() {
            let ob = pi0(&sc, g);
            let i = view.objects.iter().position(|a| *a == ob).unwrap();
            pi.insert(g, Ob(i as u32));
        }
        let cp = CovariantPair {
            target: view.mon.clone(),
            phi,
            pi,
        };
        let (psi, rep) = covariant_psi(&sc, &view, &cp).unwrap();
        rep.expect_pass("Ψ for (φ₀, π₀)");
        assert!(!psi.is_empty());
    }

    #[test]
    fn broken_pi_is_not_a_covariant_pair() {
        let inst = corpus::inst_top_linear();
        let sc = smash_for(&inst, 1);
        let view = assemble_view(&sc, 100_000).unwrap();
        let mut pi = BTreeMap::new();
        for g in sc.ctx.group().elements() {
            let ob = pi0(&sc, g);
            let i = view.objects.iter().position(|a| *a == ob).unwrap();
            pi.insert(g, Ob(i as u32));
        }
        // violate CV2(b): point π(g) at an object with the wrong grade content
        let zero = view
            .objects
            .iter()
            .position(|a| a.ob.is_empty() && a.g == Gel(1))
            .unwrap();
        pi.insert(Gel(1), Ob(zero as u32));
        let phi = {
            // reuse the identity-pair φ₀ construction, loosely: CV2 fails
            // before φ is consulted deeply, so a unit-only stub suffices
            let mut phi = crate::monoidal::SemigroupalFunctor::default();
            let c = sc.ctx.t.cat();
            for x in c.obs() {
                let ob = phi0(&sc, &EnvObj::single(x));
                let i = view.objects.iter().position(|a| *a == ob).unwrap();
                phi.functor.ob.insert(x, Ob(i as u32));
            }
            for f in c.mors() {
                let target = view
                    .morphisms
                    .iter()
                    .position(|sm| sm.g == sc.ctx.group().e && sm.mor == sc.ctx.env.from_base(f))
                    .unwrap();
                phi.functor.mor.insert(f, Mor(target as u32));
            }
            for x in c.obs() {
                for y in c.obs() {
                    let dom = view.mon.ob(phi.functor.ob[&x], phi.functor.ob[&y]);
                    let target = phi.functor.ob[&sc.ctx.t.ambient.ob(x, y)];
                    phi.j
                        .insert((x, y), view.mon.base.find_iso(dom, target).unwrap());
                }
            }
            phi.j0 = Some(view.mon.base.identity(view.mon.unit.unwrap()));
            phi
        };
        let cp = CovariantPair {
            target: view.mon.clone(),
            phi,
            pi,
        };
        let err = covariant_psi(&sc, &view, &cp).unwrap_err();
        assert!(matches!(err, CatError::NotCovariantPair(_)));
    }

    #[test]
    fn spot_checks_pass_at_cap_two() {
        let inst = corpus::inst_fus();
        let sc = smash_for(&inst, 2);
        let gens = sc.generators();
        assert_eq!(gens.len(), 27);
        spot_check_pentagons(&sc, &gens, 20, 0xC0FFEE).expect_pass("cap-2 spot checks");
    }
}
