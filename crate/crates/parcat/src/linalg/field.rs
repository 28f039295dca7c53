//! Exact scalar arithmetic: prime fields GF(p) and arbitrary-precision-free
//! exact rationals. Diagram equality must be exact, never approximate, so
//! there is no floating point anywhere.

use std::fmt;

use crate::report::{CatError, Result};

/// The scalar field of a linear category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Field {
    /// GF(p) for a small prime p.
    GFp(u32),
    /// Exact rationals.
    Rational,
}

impl Field {
    pub fn gf2() -> Field {
        Field::GFp(2)
    }

    pub fn parse(tag: &str) -> Result<Option<Field>> {
        match tag {
            "none" => Ok(None),
            "rational" => Ok(Some(Field::Rational)),
            t => {
                if let Some(p) = t.strip_prefix("gf") {
                    let p: u32 = p
                        .parse()
                        .map_err(|_| CatError::MalformedSpec(format!("bad field tag {t}")))?;
                    if !is_prime(p) {
                        return Err(CatError::MalformedSpec(format!("{p} is not prime")));
                    }
                    Ok(Some(Field::GFp(p)))
                } else {
                    Err(CatError::MalformedSpec(format!("unknown field tag {t}")))
                }
            }
        }
    }

    pub fn tag(&self) -> String {
        match self {
            Field::GFp(p) => format!("gf{p}"),
            Field::Rational => "rational".into(),
        }
    }

    /// Order of the field, when finite.
    pub fn order(&self) -> Option<u32> {
        match self {
            Field::GFp(p) => Some(*p),
            Field::Rational => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::GFp(_) => Scalar::G(0),
            Field::Rational => Scalar::Q(Rat::new(0, 1)),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::GFp(_) => Scalar::G(1),
            Field::Rational => Scalar::Q(Rat::new(1, 1)),
        }
    }

    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        match (self, a, b) {
            (Field::GFp(p), Scalar::G(x), Scalar::G(y)) => Scalar::G((x + y) % p),
            (Field::Rational, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x.add(y)),
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        match (self, a, b) {
            (Field::GFp(p), Scalar::G(x), Scalar::G(y)) => {
                Scalar::G(((x as u64 * y as u64) % *p as u64) as u32)
            }
            (Field::Rational, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x.mul(y)),
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn neg(&self, a: Scalar) -> Scalar {
        match (self, a) {
            (Field::GFp(p), Scalar::G(x)) => Scalar::G((p - x) % p),
            (Field::Rational, Scalar::Q(x)) => Scalar::Q(Rat::new(-x.num, x.den)),
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn inv(&self, a: Scalar) -> Option<Scalar> {
        match (self, a) {
            (Field::GFp(p), Scalar::G(x)) => {
                if x == 0 {
                    None
                } else {
                    // Fermat: x^(p-2)
                    let mut acc = 1u64;
                    let mut base = x as u64;
                    let mut exp = *p as u64 - 2;
                    while exp > 0 {
                        if exp & 1 == 1 {
                            acc = acc * base % *p as u64;
                        }
                        base = base * base % *p as u64;
                        exp >>= 1;
                    }
                    Some(Scalar::G(acc as u32))
                }
            }
            (Field::Rational, Scalar::Q(x)) => {
                if x.num == 0 {
                    None
                } else {
                    Some(Scalar::Q(Rat::new(x.den, x.num)))
                }
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn is_zero(&self, a: Scalar) -> bool {
        a == self.zero()
    }

    /// All field elements, ascending; only for finite fields.
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        match self {
            Field::GFp(p) => Ok((0..*p).map(Scalar::G).collect()),
            Field::Rational => Err(CatError::MalformedSpec(
                "cannot enumerate the rationals; use a gf<p> field".into(),
            )),
        }
    }

    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        match self {
            Field::GFp(p) => {
                let v: i64 = s
                    .parse()
                    .map_err(|_| CatError::MalformedSpec(format!("bad scalar {s}")))?;
                Ok(Scalar::G((v.rem_euclid(*p as i64)) as u32))
            }
            Field::Rational => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let num: i64 = n
                    .parse()
                    .map_err(|_| CatError::MalformedSpec(format!("bad scalar {s}")))?;
                let den: i64 = d
                    .parse()
                    .map_err(|_| CatError::MalformedSpec(format!("bad scalar {s}")))?;
                if den == 0 {
                    return Err(CatError::MalformedSpec("zero denominator".into()));
                }
                Ok(Scalar::Q(Rat::new(num, den)))
            }
        }
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// A scalar value; meaningful only together with its [`Field`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scalar {
    G(u32),
    Q(Rat),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::G(v) => write!(f, "{v}"),
            Scalar::Q(r) => {
                if r.den == 1 {
                    write!(f, "{}", r.num)
                } else {
                    write!(f, "{}/{}", r.num, r.den)
                }
            }
        }
    }
}

/// Normalized exact rational with i128 intermediates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat {
    pub num: i64,
    pub den: i64,
}

impl Rat {
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        let s = if den < 0 { -1 } else { 1 };
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()).max(1) as i64;
        Rat {
            num: s * num / g,
            den: s * den / g,
        }
    }

    fn add(self, o: Rat) -> Rat {
        let num = self.num as i128 * o.den as i128 + o.num as i128 * self.den as i128;
        let den = self.den as i128 * o.den as i128;
        let g = gcd128(num.unsigned_abs(), den.unsigned_abs()).max(1) as i128;
        Rat::new(
            i64::try_from(num / g).expect("rational overflow"),
            i64::try_from(den / g).expect("rational overflow"),
        )
    }

    fn mul(self, o: Rat) -> Rat {
        let num = self.num as i128 * o.num as i128;
        let den = self.den as i128 * o.den as i128;
        let g = gcd128(num.unsigned_abs(), den.unsigned_abs()).max(1) as i128;
        Rat::new(
            i64::try_from(num / g).expect("rational overflow"),
            i64::try_from(den / g).expect("rational overflow"),
        )
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Solve `A x = b` over GF(p) by Gaussian elimination.
/// `a` is row-major `rows x cols`. Returns any solution.
#[allow(clippy::needless_range_loop)] // index arithmetic over split rows
pub fn gf_solve(p: u32, rows: usize, cols: usize, a: &[u32], b: &[u32]) -> Option<Vec<u32>> {
    let f = Field::GFp(p);
    let mut m: Vec<Vec<u32>> = (0..rows)
        .map(|r| {
            let mut row: Vec<u32> = a[r * cols..(r + 1) * cols].to_vec();
            row.push(b[r]);
            row
        })
        .collect();
    let mut pivot_col = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = match f.inv(Scalar::G(m[rank][col])) {
            Some(Scalar::G(v)) => v,
            _ => unreachable!(),
        };
        for c in col..=cols {
            m[rank][c] = ((m[rank][c] as u64 * inv as u64) % p as u64) as u32;
        }
        for r in 0..rows {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col];
                for c in col..=cols {
                    let sub = (factor as u64 * m[rank][c] as u64) % p as u64;
                    m[r][c] = ((m[r][c] as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
        }
        pivot_col.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    // consistency
    for r in rank..rows {
        if m[r][cols] != 0 {
            return None;
        }
    }
    let mut x = vec![0u32; cols];
    for (r, &c) in pivot_col.iter().enumerate() {
        x[c] = m[r][cols];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf_field_axioms() {
        for p in [2u32, 3, 5] {
            let f = Field::GFp(p);
            let els = f.elements().unwrap();
            for &a in &els {
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.add(a, f.neg(a)), f.zero());
                }
                if a != f.zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
            }
        }
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let f = Field::Rational;
        let half = f.parse_scalar("1/2").unwrap();
        let third = f.parse_scalar("1/3").unwrap();
        let sum = f.add(half, third);
        assert_eq!(sum, f.parse_scalar("5/6").unwrap());
        assert_eq!(f.mul(half, f.inv(half).unwrap()), f.one());
    }

    #[test]
    fn solver_finds_inverses() {
        // invert [[1,1],[0,1]] over GF(2): x solves both column systems
        let a = [1, 1, 0, 1];
        let x0 = gf_solve(2, 2, 2, &a, &[1, 0]).unwrap();
        let x1 = gf_solve(2, 2, 2, &a, &[0, 1]).unwrap();
        assert_eq!(x0, vec![1, 0]);
        assert_eq!(x1, vec![1, 1]);
        assert_eq!(gf_solve(2, 2, 2, &[1, 1, 1, 1], &[1, 0]), None);
    }
}
