//! Clifford action of `V = H¹(A,Z) ⊕ H¹(A,Z)*` on the spin module
//! `Λ*H¹(A,Z)`, the operator `m_v : V → S⁻` and its cokernel.
//!
//! Basis conventions: `H¹` has basis `e₁..e₄`, its dual `f₁..f₄`. A subset
//! `S ⊆ {1,2,3,4}` is a bitmask (bit `i−1` for index `i`) naming
//! `e_S = e_{s₁} ∧ ⋯ ∧ e_{s_k}` with `s₁ < ⋯ < s_k`. Contraction by `f_i`
//! removes `i` from `S` with sign `(−1)^{position of i in S}` (0-based),
//! which is what the derivation rule forces for this ordering.

use num_bigint::BigInt;
use thiserror::Error;

use crate::mukai::MukaiVector;
use crate::smith::{smith_normal_form, IntegerMatrix, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error("m_v is singular over Q (rank {rank} of 8); the quotient is infinite")]
    SingularOperator { rank: usize },
}

/// An element `(α, ω)` of `V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VVector {
    pub alpha: [i64; 4],
    pub omega: [i64; 4],
}

impl VVector {
    pub const fn new(alpha: [i64; 4], omega: [i64; 4]) -> Self {
        Self { alpha, omega }
    }

    /// The `i`-th vector of the ordered basis `(e₁..e₄, f₁..f₄)`.
    pub fn basis(i: usize) -> Self {
        let mut v = Self::default();
        if i < 4 {
            v.alpha[i] = 1;
        } else {
            v.omega[i - 4] = 1;
        }
        v
    }

    pub fn coordinates(&self) -> [i64; 8] {
        let mut out = [0; 8];
        out[..4].copy_from_slice(&self.alpha);
        out[4..].copy_from_slice(&self.omega);
        out
    }

    pub fn from_coordinates(x: [i64; 8]) -> Self {
        let mut v = Self::default();
        v.alpha.copy_from_slice(&x[..4]);
        v.omega.copy_from_slice(&x[4..]);
        v
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self {
            alpha: self.alpha.map(|a| a * k),
            omega: self.omega.map(|w| w * k),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = *self;
        for i in 0..4 {
            out.alpha[i] += other.alpha[i];
            out.omega[i] += other.omega[i];
        }
        out
    }
}

/// `((α₁,ω₁),(α₂,ω₂)) = ω₂(α₁) + ω₁(α₂)`.
pub fn v_pairing(y1: &VVector, y2: &VVector) -> i64 {
    (0..4)
        .map(|i| y2.omega[i] * y1.alpha[i] + y1.omega[i] * y2.alpha[i])
        .sum()
}

/// An element of `Λ*H¹(A,Z)`, coefficients indexed by subset bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Spinor {
    pub coefficients: [i64; 16],
}

/// Odd subsets, ordered `{1},{2},{3},{4},{123},{124},{134},{234}`: the
/// basis of `S⁻` used for matrices.
pub const ODD_BASIS: [usize; 8] = [0b0001, 0b0010, 0b0100, 0b1000, 0b0111, 0b1011, 0b1101, 0b1110];
/// Even subsets, ordered `∅,{12},{13},{14},{23},{24},{34},{1234}`.
pub const EVEN_BASIS: [usize; 8] = [0b0000, 0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100, 0b1111];

/// Identification of `Λ²H¹` with `U ⊕ U ⊕ U`: the U³ basis vector
/// `(e₁', f₁', e₂', f₂', e₃', f₃')` at index `i` is `sign · e_S` for
/// `(S, sign) = LAMBDA2_TO_U3[i]`. With it the wedge pairing on `Λ²`
/// equals `⟨·,·⟩_{U³}`.
pub const LAMBDA2_TO_U3: [(usize, i64); 6] = [
    (0b0011, 1),  // e12
    (0b1100, 1),  // e34
    (0b0101, 1),  // e13
    (0b1010, -1), // −e24
    (0b1001, 1),  // e14
    (0b0110, 1),  // e23
];

const TOP: usize = 0b1111;

impl Spinor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(subset: usize) -> Self {
        let mut s = Self::zero();
        s.coefficients[subset] = 1;
        s
    }

    /// `r·e_∅ + c₁ + s·e_{1234}`, with `c₁` placed through [`LAMBDA2_TO_U3`].
    pub fn from_mukai(v: &MukaiVector) -> Self {
        let mut out = Self::zero();
        out.coefficients[0] = v.r;
        for (i, &(subset, sign)) in LAMBDA2_TO_U3.iter().enumerate() {
            out.coefficients[subset] += sign * v.c1[i];
        }
        out.coefficients[TOP] = v.s;
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.coefficients.iter_mut().zip(other.coefficients) {
            *a += b;
        }
        out
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self {
            coefficients: self.coefficients.map(|c| c * k),
        }
    }

    pub fn is_even(&self) -> bool {
        (0..16).all(|s| self.coefficients[s] == 0 || degree(s) % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        (0..16).all(|s| self.coefficients[s] == 0 || degree(s) % 2 == 1)
    }

    /// Degree-`i` components scaled by `(−1)^{i(i−1)/2}`.
    pub fn tau(&self) -> Self {
        let mut out = *self;
        for (s, c) in out.coefficients.iter_mut().enumerate() {
            let i = degree(s);
            if (i * (i.saturating_sub(1)) / 2) % 2 == 1 {
                *c = -*c;
            }
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, &x) in self.coefficients.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (b, &y) in other.coefficients.iter().enumerate() {
                if y == 0 || a & b != 0 {
                    continue;
                }
                out.coefficients[a | b] += wedge_sign(a, b) * x * y;
            }
        }
        out
    }
}

fn degree(subset: usize) -> u32 {
    subset.count_ones()
}

/// Sign of `e_A ∧ e_B = ± e_{A∪B}` for disjoint `A`, `B`: the parity of
/// pairs `(a, b)` with `a ∈ A`, `b ∈ B`, `a > b`.
fn wedge_sign(a: usize, b: usize) -> i64 {
    let mut inversions = 0;
    for i in 0..4 {
        if b & (1 << i) != 0 {
            inversions += (a >> (i + 1)).count_ones();
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `m(y)(s) = α ∧ s + D_ω(s)`.
pub fn clifford_apply(y: &VVector, s: &Spinor) -> Spinor {
    let mut out = Spinor::zero();
    for (subset, &c) in s.coefficients.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for i in 0..4 {
            let bit = 1usize << i;
            let below = (subset & (bit - 1)).count_ones();
            let sign = if below % 2 == 0 { 1 } else { -1 };
            if subset & bit == 0 {
                // e_i ∧ e_S: move e_i past the smaller indices of S
                out.coefficients[subset | bit] += sign * y.alpha[i] * c;
            } else {
                out.coefficients[subset & !bit] += sign * y.omega[i] * c;
            }
        }
    }
    out
}

/// `m(y₁)m(y₂) + m(y₂)m(y₁) = (y₁, y₂)·id` on all 16 basis spinors.
pub fn clifford_relation_check(y1: &VVector, y2: &VVector) -> bool {
    let scalar = v_pairing(y1, y2);
    (0..16).all(|subset| {
        let e = Spinor::basis(subset);
        let lhs = clifford_apply(y1, &clifford_apply(y2, &e))
            .add(&clifford_apply(y2, &clifford_apply(y1, &e)));
        lhs == e.scaled(scalar)
    })
}

/// Matrix of `y ↦ m(y)(spinor(v))` from `V` (columns `e₁..e₄, f₁..f₄`) to
/// `S⁻` (rows in [`ODD_BASIS`] order).
pub fn mukai_operator_matrix(v: &MukaiVector) -> IntegerMatrix {
    let spinor = Spinor::from_mukai(v);
    let mut m = IntegerMatrix::zeros(8, 8);
    for col in 0..8 {
        let image = clifford_apply(&VVector::basis(col), &spinor);
        for (row, &subset) in ODD_BASIS.iter().enumerate() {
            m[(row, col)] = BigInt::from(image.coefficients[subset]);
        }
    }
    m
}

/// Elementary divisors of `coker(m_v)`; the last four are all `n+1` for
/// `v = w_{n+1}`.
pub fn cokernel_smith(v: &MukaiVector) -> SmithDecomposition {
    smith_normal_form(&mukai_operator_matrix(v))
}

/// Invariant factors (> 1) of `Γ_v = m_v^{−1}(S⁻)/V ≅ coker(m_v)`.
pub fn gamma_group(v: &MukaiVector) -> Result<Vec<BigInt>, CliffordError> {
    let snf = cokernel_smith(v);
    let rank = snf.rank();
    if rank < 8 {
        return Err(CliffordError::SingularOperator { rank });
    }
    Ok(snf.nontrivial_divisors())
}

/// `−∫ τ(s₁) ∧ s₂`: minus the `e_{1234}` coefficient.
pub fn generalized_mukai_pairing(s1: &Spinor, s2: &Spinor) -> i64 {
    -s1.tau().wedge(s2).coefficients[TOP]
}

/// `m(y₁)·m(y₂)` applied to a spinor.
pub fn clifford_product_apply(y1: &VVector, y2: &VVector, s: &Spinor) -> Spinor {
    clifford_apply(y1, &clifford_apply(y2, s))
}

/// `(y₁,y₁)(y₂,y₂) · ρ_g(x)` for `g = y₁·y₂`, where `ρ_g(x) = g x g⁻¹`.
///
/// In the Clifford algebra `y² = (y,y)/2`, so `y x y⁻¹ = −x + 2(x,y)/(y,y)·y`;
/// the scale factor keeps everything integral. Requires `(yᵢ,yᵢ) ≠ 0`.
pub fn scaled_conjugation(y1: &VVector, y2: &VVector, x: &VVector) -> VVector {
    let n1 = v_pairing(y1, y1);
    let n2 = v_pairing(y2, y2);
    // u = (y₂,y₂) · y₂ x y₂⁻¹
    let u = x.scaled(-n2).add(&y2.scaled(2 * v_pairing(x, y2)));
    // (y₁,y₁) · y₁ u y₁⁻¹
    u.scaled(-n1).add(&y1.scaled(2 * v_pairing(&u, y1)))
}

/// Checks `g·x·s = (g x g⁻¹)·g·s` on every basis spinor, cleared of
/// denominators.
pub fn intertwining_check(y1: &VVector, y2: &VVector, x: &VVector) -> bool {
    let scale = v_pairing(y1, y1) * v_pairing(y2, y2);
    if scale == 0 {
        return false;
    }
    let conj = scaled_conjugation(y1, y2, x);
    (0..16).all(|subset| {
        let e = Spinor::basis(subset);
        let lhs = clifford_product_apply(y1, y2, &clifford_apply(x, &e)).scaled(scale);
        let rhs = clifford_apply(&conj, &clifford_product_apply(y1, y2, &e));
        lhs == rhs
    })
}
