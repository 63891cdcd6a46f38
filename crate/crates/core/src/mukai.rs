//! The Mukai lattice `H^ev(A, Z)` of an abelian surface.
//!
//! `H²(A, Z)` is fixed as `U ⊕ U ⊕ U` with ordered basis
//! `(e₁, f₁, e₂, f₂, e₃, f₃)` and `⟨e_i, f_i⟩ = 1`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MukaiParseError {
    #[error("expected 8 comma-separated integers r,c1a,c1b,c1c,c1d,c1e,c1f,s (got {0})")]
    WrongLength(usize),
    #[error("invalid integer {0:?}")]
    BadInteger(String),
}

/// `(r, c₁, s)` with `c₁` in the `U³` basis and `s` the coefficient of the
/// fundamental class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MukaiVector {
    pub r: i64,
    pub c1: [i64; 6],
    pub s: i64,
}

/// `⟨·,·⟩` on `U ⊕ U ⊕ U`.
pub fn u3_pairing(a: &[i64; 6], b: &[i64; 6]) -> i64 {
    (0..3)
        .map(|i| a[2 * i] * b[2 * i + 1] + a[2 * i + 1] * b[2 * i])
        .sum()
}

impl MukaiVector {
    pub const fn new(r: i64, c1: [i64; 6], s: i64) -> Self {
        Self { r, c1, s }
    }

    pub fn coordinates(&self) -> [i64; 8] {
        let mut out = [0; 8];
        out[0] = self.r;
        out[1..7].copy_from_slice(&self.c1);
        out[7] = self.s;
        out
    }

    pub fn from_coordinates(x: [i64; 8]) -> Self {
        let mut c1 = [0; 6];
        c1.copy_from_slice(&x[1..7]);
        Self { r: x[0], c1, s: x[7] }
    }

    /// `x^∨ = (r, −c₁, s)`.
    pub fn dual(&self) -> Self {
        Self {
            r: self.r,
            c1: self.c1.map(|c| -c),
            s: self.s,
        }
    }

    pub fn pairing(&self, other: &Self) -> i64 {
        mukai_pairing(self, other)
    }

    pub fn classify(&self) -> Classification {
        classify(self)
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.coordinates().iter().map(i64::to_string).collect();
        f.write_str(&coords.join(","))
    }
}

impl FromStr for MukaiVector {
    type Err = MukaiParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fields: Vec<&str> = s.split(',').map(str::trim).collect();
        if fields.len() != 8 {
            return Err(MukaiParseError::WrongLength(fields.len()));
        }
        let mut x = [0i64; 8];
        for (slot, field) in x.iter_mut().zip(&fields) {
            *slot = field
                .parse()
                .map_err(|_| MukaiParseError::BadInteger(field.to_string()))?;
        }
        Ok(Self::from_coordinates(x))
    }
}

/// `(x, y) = ⟨x.c₁, y.c₁⟩ − x.r·y.s − x.s·y.r`.
pub fn mukai_pairing(x: &MukaiVector, y: &MukaiVector) -> i64 {
    u3_pairing(&x.c1, &y.c1) - x.r * y.s - x.s * y.r
}

/// Which clause of the positivity definition a vector satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PositivityCase {
    /// `r > 0`
    PositiveRank,
    /// `r = 0`, `c₁` effective, `s ≠ 0`. Effectivity is approximated by
    /// `c₁ ≠ 0`; see [`Classification::lattice_level`].
    EffectiveDivisor,
    /// `r = 0`, `c₁ = 0`, `s < 0`
    NegativePoint,
}

impl PositivityCase {
    pub fn number(self) -> u8 {
        match self {
            Self::PositiveRank => 1,
            Self::EffectiveDivisor => 2,
            Self::NegativePoint => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub primitive: bool,
    pub positive: bool,
    pub positivity_case: Option<PositivityCase>,
    /// Set when the answer relied on the lattice-only stand-in for
    /// effectivity of `c₁` (no complex structure is modeled).
    pub lattice_level: bool,
}

pub fn classify(x: &MukaiVector) -> Classification {
    let content = x.coordinates().iter().fold(0i64, |g, c| g.gcd(c));
    let primitive = content == 1;
    let c1_zero = x.c1.iter().all(|&c| c == 0);
    let case = if x.r > 0 {
        Some(PositivityCase::PositiveRank)
    } else if x.r == 0 && !c1_zero && x.s != 0 {
        Some(PositivityCase::EffectiveDivisor)
    } else if x.r == 0 && c1_zero && x.s < 0 {
        Some(PositivityCase::NegativePoint)
    } else {
        None
    };
    Classification {
        primitive,
        positive: case.is_some(),
        positivity_case: case,
        lattice_level: case == Some(PositivityCase::EffectiveDivisor),
    }
}

/// `w_{n+1} = (1, 0, −(n+1))`, the class of the ideal sheaf of a
/// length-`(n+1)` subscheme.
pub fn ideal_sheaf_vector(n: u32) -> MukaiVector {
    MukaiVector::new(1, [0; 6], -(n as i64 + 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModuliDimension {
    /// `2 + (v, v)`
    pub dimension: i64,
    /// `(v, v)`, the rank of the relative extension sheaf.
    pub ext_rank: i64,
    /// `dimension >= 8`
    pub at_least_eight: bool,
}

pub fn moduli_dimension(v: &MukaiVector) -> ModuliDimension {
    let ext_rank = mukai_pairing(v, v);
    let dimension = 2 + ext_rank;
    ModuliDimension {
        dimension,
        ext_rank,
        at_least_eight: dimension >= 8,
    }
}

/// Gram matrix of the pairing in the coordinate basis `(r, c₁, s)`.
pub fn gram_matrix() -> [[i64; 8]; 8] {
    let mut g = [[0i64; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let mut x = [0; 8];
            let mut y = [0; 8];
            x[i] = 1;
            y[j] = 1;
            *slot = mukai_pairing(&MukaiVector::from_coordinates(x), &MukaiVector::from_coordinates(y));
        }
    }
    g
}

/// `(positive, negative, zero)` eigenvalue counts of a symmetric integer
/// matrix, by congruence diagonalization over `Q`.
pub fn signature<const N: usize>(m: &[[i64; N]; N]) -> (usize, usize, usize) {
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut diag = Vec::with_capacity(N);
    for k in 0..N {
        if a[k][k].is_zero() {
            // Borrow a non-zero diagonal from below, or manufacture one from
            // an off-diagonal entry via x_k += x_j.
            if let Some(j) = (k + 1..N).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..N).find(|&j| !a[k][j].is_zero()) {
                for c in 0..N {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..N {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            }
        }
        let pivot = a[k][k].clone();
        diag.push(pivot.clone());
        if pivot.is_zero() {
            continue;
        }
        for i in k + 1..N {
            let factor = &a[i][k] / &pivot;
            for c in 0..N {
                let v = &factor * &a[k][c];
                a[i][c] -= v;
            }
        }
        for c in k + 1..N {
            let factor = &a[k][c] / &pivot;
            for r in 0..N {
                let v = &factor * &a[r][k];
                a[r][c] -= v;
            }
        }
    }
    let pos = diag.iter().filter(|d| d.is_positive()).count();
    let neg = diag.iter().filter(|d| d.is_negative()).count();
    (pos, neg, N - pos - neg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_examples() {
        for n in 0..10u32 {
            let w = ideal_sheaf_vector(n);
            assert_eq!(mukai_pairing(&w, &w), 2 * n as i64 + 2);
        }
        let u = [1, 2, 0, -1, 3, 0];
        let u2 = [0, 1, 4, 1, 0, 2];
        let x = MukaiVector::new(0, u, 0);
        let y = MukaiVector::new(0, u2, 0);
        assert_eq!(mukai_pairing(&x, &y), u3_pairing(&u, &u2));
        let p = MukaiVector::new(1, [0; 6], 0);
        let q = MukaiVector::new(0, [0; 6], 1);
        assert_eq!(mukai_pairing(&p, &q), -1);
    }

    #[test]
    fn dual_examples() {
        let w = MukaiVector::new(1, [0; 6], -2);
        assert_eq!(w.dual(), w);
        let u = [1, -2, 3, 0, 0, 5];
        assert_eq!(MukaiVector::new(2, u, 3).dual(), MukaiVector::new(2, u.map(|c| -c), 3));
    }

    #[test]
    fn classify_examples() {
        let c = classify(&MukaiVector::new(2, [0; 6], -2));
        assert!(!c.primitive);
        let c = classify(&MukaiVector::new(0, [0; 6], -3));
        assert!(c.positive);
        assert_eq!(c.positivity_case.map(PositivityCase::number), Some(3));
        let c = classify(&ideal_sheaf_vector(4));
        assert!(c.primitive && c.positive);
        assert_eq!(c.positivity_case, Some(PositivityCase::PositiveRank));
        assert!(!classify(&MukaiVector::default()).primitive);
        let c = classify(&MukaiVector::new(0, [1, 0, 0, 0, 0, 0], 2));
        assert_eq!(c.positivity_case, Some(PositivityCase::EffectiveDivisor));
        assert!(c.lattice_level);
        assert!(!classify(&MukaiVector::new(0, [1, 0, 0, 0, 0, 0], 0)).positive);
        assert!(!classify(&MukaiVector::new(-1, [0; 6], -1)).positive);
    }

    #[test]
    fn dimension_examples() {
        let d = moduli_dimension(&ideal_sheaf_vector(1));
        assert_eq!((d.dimension, d.at_least_eight), (6, false));
        let d = moduli_dimension(&ideal_sheaf_vector(3));
        assert_eq!((d.dimension, d.at_least_eight), (10, true));
        // (v, v) = 6
        let v = MukaiVector::new(1, [0; 6], -3);
        assert_eq!(moduli_dimension(&v).dimension, 8);
        assert!(moduli_dimension(&v).at_least_eight);
    }

    #[test]
    fn parse_vectors() {
        let v: MukaiVector = "1,0,0,0,0,0,0,-2".parse().unwrap();
        assert_eq!(v, ideal_sheaf_vector(1));
        assert_eq!(v.to_string(), "1,0,0,0,0,0,0,-2");
        assert_eq!("1,2".parse::<MukaiVector>(), Err(MukaiParseError::WrongLength(2)));
        assert!(matches!(
            "1,0,0,0,0,0,x,0".parse::<MukaiVector>(),
            Err(MukaiParseError::BadInteger(_))
        ));
    }

    #[test]
    fn lattice_signature() {
        assert_eq!(signature(&gram_matrix()), (4, 4, 0));
        assert_eq!(signature(&[[0, 1], [1, 0]]), (1, 1, 0));
        assert_eq!(signature(&[[2, 0], [0, 0]]), (1, 0, 1));
    }
}
