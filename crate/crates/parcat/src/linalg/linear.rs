//! Linear categories over small finite fields, realized as tabulated
//! categories in which *every element of every hom-space* is a morphism id.
//! Hom-spaces are presented by basis morphisms with structure-constant
//! composition, then enumerated, so the brute-force diagram machinery applies
//! unchanged.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::field::Field;
use crate::fincat::{CatBuilder, FinCategory, Mor, Ob};
use crate::monoidal::MonoidalStructure;
use crate::report::{CatError, DiagramReport, Result};

/// A basis element of a hom-space: (dom, cod, index into that hom's basis).
pub type BasisId = (usize, usize, usize);

/// Presentation of a linear category by bases and structure constants, plus
/// an optional bilinear tensor.
#[derive(Debug, Clone, Default)]
pub struct LinearPresentation {
    pub objects: Vec<String>,
    pub p: u32,
    /// Basis labels per (dom, cod); absent pairs have zero-dimensional homs.
    pub basis: BTreeMap<(usize, usize), Vec<String>>,
    /// Coordinates of `id_X` in hom(X, X).
    pub identity: BTreeMap<usize, Vec<u32>>,
    /// Structure constants: coords of `g ∘ f` for basis g: Y->Z, f: X->Y.
    /// Absent entries mean the composite is zero.
    pub compose: BTreeMap<(BasisId, BasisId), Vec<u32>>,
    /// Tensor on objects (required if a tensor is wanted).
    pub tensor_ob: BTreeMap<(usize, usize), usize>,
    /// Coords of `f ⊗ g` for basis f, g. Absent entries mean zero.
    pub tensor: BTreeMap<(BasisId, BasisId), Vec<u32>>,
    pub unit: Option<usize>,
}

/// Linear structure over an enumerated base category.
#[derive(Debug, Clone)]
pub struct LinearCategory {
    pub cat: Arc<FinCategory>,
    pub field: Field,
    zero: BTreeMap<(Ob, Ob), Mor>,
    basis: BTreeMap<(Ob, Ob), Vec<Mor>>,
    coords: Vec<Vec<u32>>,
    lookup: BTreeMap<(Ob, Ob, Vec<u32>), Mor>,
}

impl LinearCategory {
    /// Rebind to a structurally equal category (so `Arc` identities line up
    /// after decoding); the caller must have checked the equality.
    pub fn with_category(self, cat: Arc<FinCategory>) -> LinearCategory {
        LinearCategory { cat, ..self }
    }

    pub fn p(&self) -> u32 {
        match self.field {
            Field::GFp(p) => p,
            Field::Rational => unreachable!("enumerated categories are over GF(p)"),
        }
    }

    pub fn dim(&self, x: Ob, y: Ob) -> usize {
        self.basis.get(&(x, y)).map_or(0, |b| b.len())
    }

    pub fn zero_at(&self, x: Ob, y: Ob) -> Mor {
        self.zero[&(x, y)]
    }

    pub fn is_zero_mor(&self, f: Mor) -> bool {
        self.coords[f.0 as usize].iter().all(|&c| c == 0)
    }

    pub fn basis_at(&self, x: Ob, y: Ob) -> &[Mor] {
        self.basis.get(&(x, y)).map_or(&[], |b| b.as_slice())
    }

    pub fn coords_of(&self, f: Mor) -> &[u32] {
        &self.coords[f.0 as usize]
    }

    pub fn from_coords(&self, x: Ob, y: Ob, coords: &[u32]) -> Result<Mor> {
        self.lookup
            .get(&(x, y, coords.to_vec()))
            .copied()
            .ok_or_else(|| CatError::MalformedSpec(format!("no morphism for coords at ({x},{y})")))
    }

    pub fn add(&self, f: Mor, g: Mor) -> Result<Mor> {
        let (x, y) = (self.cat.dom(f), self.cat.cod(f));
        if (self.cat.dom(g), self.cat.cod(g)) != (x, y) {
            return Err(CatError::ComponentShape(format!(
                "adding morphisms of different homs: {f}, {g}"
            )));
        }
        let p = self.p();
        let coords: Vec<u32> = self
            .coords_of(f)
            .iter()
            .zip(self.coords_of(g))
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        self.from_coords(x, y, &coords)
    }

    pub fn sum(&self, x: Ob, y: Ob, terms: &[Mor]) -> Result<Mor> {
        let mut acc = self.zero_at(x, y);
        for &t in terms {
            acc = self.add(acc, t)?;
        }
        Ok(acc)
    }
}

/// Enumerate all hom-space elements of a presentation into a tabulated
/// category with bilinear composition. The morphism-count `budget` guards
/// against exponential blowup.
pub fn enumerate_linear(
    pres: &LinearPresentation,
    budget: usize,
) -> Result<(Arc<FinCategory>, LinearCategory)> {
    let p = pres.p;
    let field = Field::GFp(p);
    field.elements()?;
    let n_ob = pres.objects.len();
    let mut total: usize = 0;
    for x in 0..n_ob {
        for y in 0..n_ob {
            let dim = pres.basis.get(&(x, y)).map_or(0, |b| b.len());
            let count = (p as usize)
                .checked_pow(dim as u32)
                .ok_or(CatError::SearchBudgetExceeded {
                    budget,
                    context: "hom enumeration".into(),
                })?;
            total += count;
        }
    }
    if total > budget {
        return Err(CatError::SearchBudgetExceeded {
            budget,
            context: format!("{total} morphisms to enumerate"),
        });
    }

    let mut b = CatBuilder::new();
    for name in &pres.objects {
        b.add_object(name.clone());
    }
    let mut basis_map: BTreeMap<(Ob, Ob), Vec<Mor>> = BTreeMap::new();
    let mut zero_map: BTreeMap<(Ob, Ob), Mor> = BTreeMap::new();
    let mut coords_vec: Vec<Vec<u32>> = Vec::new();
    let mut lookup: BTreeMap<(Ob, Ob, Vec<u32>), Mor> = BTreeMap::new();
    for x in 0..n_ob {
        for y in 0..n_ob {
            let labels = pres.basis.get(&(x, y)).cloned().unwrap_or_default();
            let dim = labels.len();
            let (ox, oy) = (Ob(x as u32), Ob(y as u32));
            let mut hom_basis = vec![Mor(0); dim];
            for v in enumerate_vectors(p, dim) {
                let label = vector_label(&v, &labels, &pres.objects[x], &pres.objects[y]);
                let m = b.add_morphism(ox, oy, label);
                if let Some(k) = unit_index(&v) {
                    hom_basis[k] = m;
                }
                if v.iter().all(|&c| c == 0) {
                    zero_map.insert((ox, oy), m);
                }
                lookup.insert((ox, oy, v.clone()), m);
                coords_vec.push(v);
            }
            basis_map.insert((ox, oy), hom_basis);
        }
    }
    for x in 0..n_ob {
        let coords = pres
            .identity
            .get(&x)
            .ok_or_else(|| CatError::MalformedSpec(format!("no identity coords for object {x}")))?;
        let ox = Ob(x as u32);
        let id = lookup
            .get(&(ox, ox, coords.clone()))
            .copied()
            .ok_or_else(|| CatError::MalformedSpec(format!("identity coords of {x} malformed")))?;
        b.set_identity(ox, id);
    }
    // bilinear composition
    let all: Vec<(Ob, Ob, Vec<u32>, Mor)> = lookup
        .iter()
        .map(|((x, y, v), &m)| (*x, *y, v.clone(), m))
        .collect();
    for (fx, fy, fv, fm) in &all {
        for (gx, gy, gv, gm) in &all {
            if gx != fy {
                continue;
            }
            let dim_out = pres.basis.get(&(fx.0 as usize, gy.0 as usize)).map_or(0, |b| b.len());
            let mut out = vec![0u32; dim_out];
            for (j, &fc) in fv.iter().enumerate() {
                if fc == 0 {
                    continue;
                }
                for (i, &gc) in gv.iter().enumerate() {
                    if gc == 0 {
                        continue;
                    }
                    let key = (
                        (gx.0 as usize, gy.0 as usize, i),
                        (fx.0 as usize, fy.0 as usize, j),
                    );
                    if let Some(sc) = pres.compose.get(&key) {
                        for (k, &c) in sc.iter().enumerate() {
                            out[k] =
                                ((out[k] as u64 + (c as u64 * fc as u64 % p as u64) * gc as u64) % p as u64) as u32;
                        }
                    }
                }
            }
            let res = lookup
                .get(&(*fx, *gy, out.clone()))
                .copied()
                .ok_or_else(|| CatError::MalformedSpec("composite coords out of range".into()))?;
            b.set_compose(*gm, *fm, res);
        }
    }
    let cat = Arc::new(b.build()?);
    let lin = LinearCategory {
        cat: cat.clone(),
        field,
        zero: zero_map,
        basis: basis_map,
        coords: coords_vec,
        lookup,
    };
    Ok((cat, lin))
}

/// Extend [`enumerate_linear`] with the bilinear tensor of the presentation.
pub fn enumerate_linear_monoidal(
    pres: &LinearPresentation,
    budget: usize,
) -> Result<(MonoidalStructure, LinearCategory)> {
    let (cat, lin) = enumerate_linear(pres, budget)?;
    let p = pres.p;
    let n_ob = pres.objects.len();
    let mut obt = BTreeMap::new();
    for x in 0..n_ob {
        for y in 0..n_ob {
            let xy = *pres
                .tensor_ob
                .get(&(x, y))
                .ok_or_else(|| CatError::MalformedSpec(format!("tensor_obj missing at ({x},{y})")))?;
            obt.insert((Ob(x as u32), Ob(y as u32)), Ob(xy as u32));
        }
    }
    let mut mort = BTreeMap::new();
    for f in cat.mors() {
        for g in cat.mors() {
            let (fx, fy) = (cat.dom(f), cat.cod(f));
            let (gx, gy) = (cat.dom(g), cat.cod(g));
            let dx = obt[&(fx, gx)];
            let dy = obt[&(fy, gy)];
            let dim_out = lin.dim(dx, dy);
            let mut out = vec![0u32; dim_out];
            let (fv, gv) = (lin.coords_of(f), lin.coords_of(g));
            for (i, &fc) in fv.iter().enumerate() {
                if fc == 0 {
                    continue;
                }
                for (j, &gc) in gv.iter().enumerate() {
                    if gc == 0 {
                        continue;
                    }
                    let key = (
                        (fx.0 as usize, fy.0 as usize, i),
                        (gx.0 as usize, gy.0 as usize, j),
                    );
                    if let Some(sc) = pres.tensor.get(&key) {
                        for (k, &c) in sc.iter().enumerate() {
                            out[k] =
                                ((out[k] as u64 + (c as u64 * fc as u64 % p as u64) * gc as u64) % p as u64) as u32;
                        }
                    }
                }
            }
            mort.insert((f, g), lin.from_coords(dx, dy, &out)?);
        }
    }
    let mon = MonoidalStructure::new(cat, &obt, &mort, pres.unit.map(|u| Ob(u as u32)))?;
    Ok((mon, lin))
}

/// Free linearization of a finite category over GF(p): hom-spaces are spanned
/// by the original morphisms, composition extends bilinearly.
pub fn linearize(
    c: &FinCategory,
    p: u32,
    budget: usize,
) -> Result<(Arc<FinCategory>, LinearCategory, BTreeMap<Mor, Mor>)> {
    let pres = free_presentation(c, p);
    let (cat, lin) = enumerate_linear(&pres, budget)?;
    let map = base_morphism_map(c, &lin);
    Ok((cat, lin, map))
}

/// Free linearization carrying a strict tensor along.
pub fn linearize_monoidal(
    m: &MonoidalStructure,
    p: u32,
    budget: usize,
) -> Result<(MonoidalStructure, LinearCategory, BTreeMap<Mor, Mor>)> {
    let c = &*m.base;
    let mut pres = free_presentation(c, p);
    for x in c.obs() {
        for y in c.obs() {
            pres.tensor_ob
                .insert((x.0 as usize, y.0 as usize), m.ob(x, y).0 as usize);
        }
    }
    for f in c.mors() {
        for g in c.mors() {
            let fg = m.mor(f, g);
            let fk = basis_key(c, f);
            let gk = basis_key(c, g);
            let mut sc = vec![0u32; hom_size(c, c.dom(fg), c.cod(fg))];
            sc[hom_index(c, fg)] = 1;
            pres.tensor.insert((fk, gk), sc);
        }
    }
    pres.unit = m.unit.map(|u| u.0 as usize);
    let (mon, lin) = enumerate_linear_monoidal(&pres, budget)?;
    let map = base_morphism_map(c, &lin);
    Ok((mon, lin, map))
}

fn free_presentation(c: &FinCategory, p: u32) -> LinearPresentation {
    let mut pres = LinearPresentation {
        objects: c.objects.clone(),
        p,
        ..Default::default()
    };
    for x in c.obs() {
        for y in c.obs() {
            let labels: Vec<String> = c
                .hom(x, y)
                .into_iter()
                .map(|f| c.mor_label(f).to_string())
                .collect();
            if !labels.is_empty() {
                pres.basis.insert((x.0 as usize, y.0 as usize), labels);
            }
        }
    }
    for x in c.obs() {
        let mut coords = vec![0u32; hom_size(c, x, x)];
        coords[hom_index(c, c.identity(x))] = 1;
        pres.identity.insert(x.0 as usize, coords);
    }
    for f in c.mors() {
        for g in c.mors() {
            if let Some(gf) = c.compose(g, f) {
                let mut sc = vec![0u32; hom_size(c, c.dom(f), c.cod(g))];
                sc[hom_index(c, gf)] = 1;
                pres.compose.insert((basis_key(c, g), basis_key(c, f)), sc);
            }
        }
    }
    pres
}

fn hom_size(c: &FinCategory, x: Ob, y: Ob) -> usize {
    c.hom(x, y).len()
}

fn hom_index(c: &FinCategory, f: Mor) -> usize {
    c.hom(c.dom(f), c.cod(f)).iter().position(|&g| g == f).unwrap()
}

fn basis_key(c: &FinCategory, f: Mor) -> BasisId {
    (c.dom(f).0 as usize, c.cod(f).0 as usize, hom_index(c, f))
}

/// Old morphism -> its image as a basis element of the linearization.
fn base_morphism_map(c: &FinCategory, lin: &LinearCategory) -> BTreeMap<Mor, Mor> {
    c.mors()
        .map(|f| {
            let (x, y) = (c.dom(f), c.cod(f));
            (f, lin.basis_at(x, y)[hom_index(c, f)])
        })
        .collect()
}

fn enumerate_vectors(p: u32, dim: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity((p as usize).pow(dim as u32));
    let mut v = vec![0u32; dim];
    loop {
        out.push(v.clone());
        let mut k = 0;
        loop {
            if k == dim {
                return out;
            }
            v[k] += 1;
            if v[k] < p {
                break;
            }
            v[k] = 0;
            k += 1;
        }
    }
}

fn unit_index(v: &[u32]) -> Option<usize> {
    let mut found = None;
    for (i, &c) in v.iter().enumerate() {
        match (c, found) {
            (0, _) => {}
            (1, None) => found = Some(i),
            _ => return None,
        }
    }
    found
}

fn vector_label(v: &[u32], labels: &[String], dom: &str, cod: &str) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            if c == 1 {
                labels[i].clone()
            } else {
                format!("{c}*{}", labels[i])
            }
        })
        .collect();
    if terms.is_empty() {
        format!("0[{dom}->{cod}]")
    } else {
        terms.join("+")
    }
}

/// Bilinearity of composition and tensor against the linear structure.
pub fn validate_linear(lin: &LinearCategory, mon: Option<&MonoidalStructure>) -> DiagramReport {
    let c = &*lin.cat;
    let mut rep = DiagramReport::new();
    for x in c.obs() {
        for y in c.obs() {
            let z = lin.zero_at(x, y);
            if !lin.is_zero_mor(z) {
                rep.fail("zero-coords", format!("at ({x},{y})"));
            }
        }
    }
    for f in c.mors() {
        for g in c.mors() {
            if c.dom(g) != c.dom(f) || c.cod(g) != c.cod(f) {
                continue;
            }
            let sum = lin.add(f, g).expect("same hom");
            for h in c.mors() {
                if c.dom(h) == c.cod(f) {
                    let lhs = c.compose(h, sum).unwrap();
                    let rhs = lin
                        .add(c.compose(h, f).unwrap(), c.compose(h, g).unwrap())
                        .unwrap();
                    if lhs != rhs {
                        rep.fail("compose-bilinear", format!("h∘(f+g) at ({h},{f},{g})"));
                    }
                }
            }
        }
    }
    if let Some(m) = mon {
        for f in c.mors() {
            for g in c.mors() {
                if c.dom(g) != c.dom(f) || c.cod(g) != c.cod(f) {
                    continue;
                }
                let sum = lin.add(f, g).expect("same hom");
                for h in c.mors() {
                    let lhs = m.mor(h, sum);
                    let rhs = lin.add(m.mor(h, f), m.mor(h, g)).unwrap();
                    if lhs != rhs {
                        rep.fail("tensor-bilinear", format!("h⊗(f+g) at ({h},{f},{g})"));
                    }
                }
            }
        }
    }
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::validate_category;
    use crate::monoidal::validate_semigroupal;
    use crate::testutil::{opens_monoidal, single_object_category};

    #[test]
    fn one_morphism_category_over_gf2() {
        let c = single_object_category();
        let (cat, lin, map) = linearize(&c, 2, 1000).unwrap();
        assert_eq!(cat.morphism_count(), 2, "hom = GF(2)");
        validate_category(&cat).expect_pass("linearized trivial");
        let id = map[&Mor(0)];
        assert_eq!(cat.identity(Ob(0)), id);
        let zero = lin.zero_at(Ob(0), Ob(0));
        assert_eq!(lin.add(id, id).unwrap(), zero, "1+1 = 0 over GF(2)");
    }

    #[test]
    fn linearized_poset_homs_are_one_dimensional() {
        let (m, _, _) = opens_monoidal(&[0b00, 0b01, 0b10, 0b11], Some(0b11));
        let (mon, lin, _) = linearize_monoidal(&m, 2, 10_000).unwrap();
        validate_category(&mon.base).expect_pass("linearized poset");
        validate_semigroupal(&mon).expect_pass("linearized tensor");
        validate_linear(&lin, Some(&mon)).expect_pass("linear structure");
        // 16 zero morphisms + 9 inclusions
        assert_eq!(mon.base.morphism_count(), 25);
        for x in mon.base.obs() {
            for y in mon.base.obs() {
                assert!(lin.dim(x, y) <= 1);
            }
        }
    }

    #[test]
    fn parallel_basis_morphisms_stay_independent() {
        // a two-object category with two parallel arrows, freely linearized
        let mut b = CatBuilder::new();
        let x = b.add_object("X");
        let y = b.add_object("Y");
        let idx = b.add_morphism(x, x, "id_X");
        let idy = b.add_morphism(y, y, "id_Y");
        let f = b.add_morphism(x, y, "f");
        let g = b.add_morphism(x, y, "g");
        b.set_identity(x, idx);
        b.set_identity(y, idy);
        for &(a, bb, c) in &[
            (idx, idx, idx),
            (idy, idy, idy),
            (f, idx, f),
            (idy, f, f),
            (g, idx, g),
            (idy, g, g),
        ] {
            b.set_compose(a, bb, c);
        }
        let c = b.build().unwrap();
        let (cat, lin, map) = linearize(&c, 2, 10_000).unwrap();
        validate_category(&cat).expect_pass("free linearization");
        assert_eq!(lin.dim(Ob(0), Ob(1)), 2);
        assert_ne!(map[&f], map[&g]);
        assert!(!lin.is_zero_mor(lin.add(map[&f], map[&g]).unwrap()));
    }

    use crate::fincat::CatBuilder;
}
