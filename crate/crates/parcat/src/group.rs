//! Finite groups as multiplication tables, plus the permutation groups used
//! by the corpus generators.

use std::fmt;

use crate::report::{CatError, DiagramReport, Result};

/// Index of a group element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gel(pub u32);

impl fmt::Display for Gel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinGroup {
    pub names: Vec<String>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    pub e: Gel,
}

impl FinGroup {
    pub fn new(names: Vec<String>, mul_table: &[Vec<u32>]) -> Result<Self> {
        let n = names.len();
        if mul_table.len() != n || mul_table.iter().any(|r| r.len() != n) {
            return Err(CatError::MalformedSpec("group table is not square".into()));
        }
        let mut mul = vec![0u32; n * n];
        for (i, row) in mul_table.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v as usize >= n {
                    return Err(CatError::MalformedSpec("group table entry out of range".into()));
                }
                mul[i * n + j] = v;
            }
        }
        // locate the identity
        let mut e = None;
        for i in 0..n {
            if (0..n).all(|j| mul[i * n + j] == j as u32 && mul[j * n + i] == j as u32) {
                e = Some(i as u32);
                break;
            }
        }
        let e = Gel(e.ok_or_else(|| CatError::MalformedSpec("group has no identity".into()))?);
        let mut inv = vec![u32::MAX; n];
        for i in 0..n {
            for j in 0..n {
                if mul[i * n + j] == e.0 && mul[j * n + i] == e.0 {
                    inv[i] = j as u32;
                }
            }
        }
        if inv.contains(&u32::MAX) {
            return Err(CatError::MalformedSpec("group element without inverse".into()));
        }
        let g = Self { names, mul, inv, e };
        let rep = g.validate();
        if !rep.passed() {
            return Err(CatError::MalformedSpec(format!(
                "group axioms fail: {:?}",
                rep.failures.first()
            )));
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = Gel> {
        (0..self.names.len() as u32).map(Gel)
    }

    pub fn mul(&self, a: Gel, b: Gel) -> Gel {
        Gel(self.mul[a.0 as usize * self.names.len() + b.0 as usize])
    }

    pub fn inv(&self, a: Gel) -> Gel {
        Gel(self.inv[a.0 as usize])
    }

    pub fn name(&self, a: Gel) -> &str {
        &self.names[a.0 as usize]
    }

    pub fn validate(&self) -> DiagramReport {
        let mut rep = DiagramReport::new();
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        rep.fail("group-associativity", format!("({a}{b}){c}"));
                    }
                }
            }
        }
        rep.finish()
    }

    ///.Cyclic group of order `n` with elements `e, g, g^2, ...`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "g".to_string(),
                k => format!("g{k}"),
            })
            .collect();
        let table: Vec<Vec<u32>> = (0..n)
            .map(|i| (0..n).map(|j| ((i + j) % n) as u32).collect())
            .collect();
        Self::new(names, &table).expect("cyclic group")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }
}

/// A permutation of `0..n`, as the image vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(pub Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    /// Permutation from disjoint cycles over `1..=n` (one-based, as usually
    /// written), e.g. `[[1,2]]` is the transposition (1 2).
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut v: Vec<u32> = (0..n as u32).collect();
        for cyc in cycles {
            for w in 0..cyc.len() {
                let a = cyc[w];
                let b = cyc[(w + 1) % cyc.len()];
                if a == 0 || a > n || b == 0 || b > n {
                    return Err(CatError::MalformedSpec("cycle entry out of range".into()));
                }
                v[a - 1] = (b - 1) as u32;
            }
        }
        let mut seen = vec![false; n];
        for &x in &v {
            if seen[x as usize] {
                return Err(CatError::MalformedSpec("not a permutation".into()));
            }
            seen[x as usize] = true;
        }
        Ok(Perm(v))
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn apply_mask(&self, mask: u32) -> u32 {
        let mut out = 0u32;
        for i in 0..self.0.len() {
            if mask & (1 << i) != 0 {
                out |= 1 << self.0[i];
            }
        }
        out
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        // self after other
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            v[j as usize] = i as u32;
        }
        Perm(v)
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let id = Perm::identity(self.0.len());
        let mut k = 1;
        while p != id {
            p = p.compose(self);
            k += 1;
        }
        k
    }
}

/// The cyclic subgroup of `S_n` generated by one permutation, with the group
/// element `g^k` acting as the k-fold composite.
pub fn cyclic_perm_group(p: &Perm) -> (FinGroup, Vec<Perm>) {
    let ord = p.order();
    let group = FinGroup::cyclic(ord);
    let mut perms = Vec::with_capacity(ord);
    let mut cur = Perm::identity(p.0.len());
    for _ in 0..ord {
        perms.push(cur.clone());
        cur = p.compose(&cur);
    }
    (group, perms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups_are_groups() {
        for n in 1..=6 {
            let g = FinGroup::cyclic(n);
            g.validate().expect_pass("cyclic");
            assert_eq!(g.order(), n);
            for a in g.elements() {
                assert_eq!(g.mul(a, g.inv(a)), g.e);
            }
        }
    }

    #[test]
    fn permutation_cycles() {
        let p = Perm::from_cycles(3, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.apply(2), 0);
        assert_eq!(p.order(), 3);
        assert_eq!(p.apply_mask(0b011), 0b110);
        let (g, perms) = cyclic_perm_group(&p);
        assert_eq!(g.order(), 3);
        assert_eq!(perms[2], p.compose(&p));
    }
}
