//! Cohomology of generalized Kummer varieties `Kum_n(A)` from the
//! partition decomposition of `H*(A × Kum_n(A))`.
//!
//! Each partition `ν` of `n+1` contributes `d(ν)⁴` copies (one per
//! `d(ν)`-torsion point of `A`) of the cohomology of
//! `A^(ν) = A^(ν₁) × ⋯ × A^(ν_r)`, shifted up by `2(n+1) − 2|ν|` in degree.
//! The translation group `Γ = A[n+1]` permutes those copies through the
//! regular representation of `A[d(ν)]`, so exactly one copy per partition
//! is `Γ`-invariant. Dividing by `H*(A)` recovers the Kummer tables.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::{Pow, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::graded::{complex_torus_table, BigradedTable, GradedError};
use crate::partitions::{is_prime, smallest_prime_divisor, Partition, PartitionError, Partitions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KummerError {
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("{operation} requires n >= {min} (got n = {n})")]
    NTooSmall { operation: &'static str, n: u32, min: u32 },
    #[error("invariant part exceeds the full table at bidegree ({p},{q})")]
    NotDominated { p: i64, q: i64 },
    #[error("non-invariant class in degree {found}, below the bound {bound}")]
    BoundViolated { found: i64, bound: i64 },
}

/// Which `Γ`-isotypic weighting to apply to the summands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Isotype {
    /// All `d(ν)⁴` copies.
    Full,
    /// The trivial isotype: one copy per partition.
    Invariant,
}

fn sym_torus_cache() -> &'static RwLock<HashMap<u32, Arc<BigradedTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<BigradedTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `H*(A^(k))` for an abelian surface `A`, memoized per `k`.
pub fn symmetric_power_of_surface(k: u32) -> Arc<BigradedTable> {
    if let Some(hit) = sym_torus_cache().read().unwrap().get(&k) {
        return Arc::clone(hit);
    }
    let table = Arc::new(complex_torus_table(2).symmetric_power(k));
    let mut cache = sym_torus_cache().write().unwrap();
    Arc::clone(cache.entry(k).or_insert(table))
}

/// `H*(A^(ν))`: the tensor product of `H*(A^(ν_i))` over the non-zero
/// multiplicities of `ν`.
pub fn symmetric_product_table(nu: &Partition) -> BigradedTable {
    nu.multiplicities()
        .iter()
        .filter(|&&m| m > 0)
        .fold(BigradedTable::point(), |acc, &m| {
            acc.tensor(&symmetric_power_of_surface(m))
        })
}

/// One partition's contribution to `H*(A × Kum_n(A))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GsSummand {
    pub partition: Partition,
    /// `d(ν)`
    pub d: u32,
    /// `(n+1)/d(ν)`
    pub m: u32,
    /// `d(ν)⁴`, one copy per point of `A[d(ν)]`
    pub copies: BigUint,
    pub invariant_copies: BigUint,
    /// `H*(A^(ν))`, untwisted
    pub base_table: BigradedTable,
    /// Total-degree shift `2(n+1) − 2|ν|`.
    pub degree_offset: i64,
}

impl GsSummand {
    fn new(n: u32, partition: Partition) -> Self {
        let d = partition.gcd();
        let weight = partition.weight() as i64;
        Self {
            d,
            m: (n + 1) / d,
            copies: BigUint::from(d).pow(4u32),
            invariant_copies: BigUint::from(1u32),
            base_table: symmetric_product_table(&partition),
            degree_offset: 2 * (n as i64 + 1) - 2 * weight,
            partition,
        }
    }

    /// Tate twist placing the summand inside `H*(A × Kum_n(A))`.
    pub fn twist(&self) -> i64 {
        -self.degree_offset / 2
    }

    /// One copy, placed in its `A × Kum_n` degrees.
    pub fn placed_table(&self) -> BigradedTable {
        self.base_table.tate_twist(self.twist())
    }

    pub fn multiplicity(&self, isotype: Isotype) -> &BigUint {
        match isotype {
            Isotype::Full => &self.copies,
            Isotype::Invariant => &self.invariant_copies,
        }
    }
}

/// One summand per partition of `n+1`, in enumeration order.
/// Summand tables are built in parallel.
pub fn gs_summands(n: u32) -> Vec<GsSummand> {
    let partitions: Vec<Partition> = Partitions::new(n + 1)
        .expect("n + 1 >= 1")
        .collect();
    partitions
        .into_par_iter()
        .map(|nu| GsSummand::new(n, nu))
        .collect()
}

/// `H*(A × Kum_n(A))`, or its `Γ`-invariant part.
pub fn product_cohomology(n: u32, isotype: Isotype) -> BigradedTable {
    assemble(&gs_summands(n), isotype)
}

fn assemble(summands: &[GsSummand], isotype: Isotype) -> BigradedTable {
    summands
        .par_iter()
        .map(|s| s.placed_table().scaled(s.multiplicity(isotype)))
        .reduce(BigradedTable::zero, |a, b| a + b)
}

/// `H*(Kum_n(A))`.
pub fn kummer_cohomology(n: u32) -> Result<BigradedTable, KummerError> {
    Ok(product_cohomology(n, Isotype::Full).exact_divide(&complex_torus_table(2))?)
}

/// `H*(Kum_n(A))^Γ`. Translations act trivially on `H*(A)`, so the
/// invariant part of the product is `H*(A) ⊗ H*(Kum_n(A))^Γ`.
pub fn invariant_kummer_cohomology(n: u32) -> Result<BigradedTable, KummerError> {
    Ok(product_cohomology(n, Isotype::Invariant).exact_divide(&complex_torus_table(2))?)
}

/// Both Kummer tables from a single pass over the summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KummerTables {
    pub n: u32,
    pub full: BigradedTable,
    pub invariant: BigradedTable,
}

impl KummerTables {
    pub fn compute(n: u32) -> Result<Self, KummerError> {
        let summands = gs_summands(n);
        let torus = complex_torus_table(2);
        let full = assemble(&summands, Isotype::Full).exact_divide(&torus)?;
        let invariant = assemble(&summands, Isotype::Invariant).exact_divide(&torus)?;
        Ok(Self { n, full, invariant })
    }

    /// Full minus invariant, bidegree by bidegree.
    pub fn noninvariant(&self) -> Result<BigradedTable, KummerError> {
        self.full.checked_sub(&self.invariant).ok_or_else(|| {
            let (at, _) = self
                .invariant
                .iter()
                .find(|(b, v)| self.full.get(b.p, b.q) < **v)
                .expect("checked_sub failed somewhere");
            KummerError::NotDominated { p: at.p, q: at.q }
        })
    }

    /// Per-degree dimension of the non-invariant classes.
    pub fn noninvariant_profile(&self) -> Result<BTreeMap<i64, BigUint>, KummerError> {
        Ok(self.noninvariant()?.betti_map())
    }
}

/// Dimension of the non-`Γ`-invariant part of `H^k(Kum_n(A))`, for each
/// `k` where it is non-zero.
pub fn noninvariant_profile(n: u32) -> Result<BTreeMap<i64, BigUint>, KummerError> {
    if n < 1 {
        return Err(KummerError::NTooSmall {
            operation: "noninvariant_profile",
            n,
            min: 1,
        });
    }
    KummerTables::compute(n)?.noninvariant_profile()
}

/// `H*(A^[m])` for the Hilbert scheme of `m` points on `A`.
pub fn hilbert_scheme_cohomology(m: u32) -> Result<BigradedTable, KummerError> {
    let partitions = Partitions::new(m)?.collect::<Vec<_>>();
    Ok(partitions
        .par_iter()
        .map(|nu| symmetric_product_table(nu).tate_twist(nu.weight() as i64 - m as i64))
        .reduce(BigradedTable::zero, |a, b| a + b))
}

/// `H*(M(w)) = H*(A × Pic⁰(A)) ⊗ H*(Kum_n(A))^Γ`.
pub fn moduli_cohomology(n: u32) -> Result<BigradedTable, KummerError> {
    if n < 1 {
        return Err(KummerError::NTooSmall {
            operation: "moduli_cohomology",
            n,
            min: 1,
        });
    }
    Ok(complex_torus_table(4).tensor(&invariant_kummer_cohomology(n)?))
}

/// Degree bound for the Lefschetz standard conjecture on `Kum_n`-type
/// manifolds, together with what the decomposition shows about it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LscReport {
    pub n: u32,
    /// Smallest prime dividing `n+1`.
    pub j: u64,
    /// `2(n+1)(j−1)/j`; every degree below it is covered.
    pub bound: i64,
    /// Lowest degree with a non-invariant class.
    pub min_noninvariant_degree: i64,
    /// `n+1` prime.
    pub full_lsc: bool,
    /// Non-invariant dimension in degree `2n`, reported when `n+1` is prime.
    pub middle_noninvariant_dim: Option<BigUint>,
    pub profile: BTreeMap<i64, BigUint>,
}

impl LscReport {
    /// Degrees `0..bound`.
    pub fn proven_degrees(&self) -> std::ops::Range<i64> {
        0..self.bound
    }

    pub fn is_sharp(&self) -> bool {
        self.min_noninvariant_degree == self.bound
    }
}

/// `2(n+1)(j−1)/j` for `j` the smallest prime divisor of `n+1`.
pub fn lsc_degree_bound(n: u32) -> Result<i64, KummerError> {
    let total = n as u64 + 1;
    let j = smallest_prime_divisor(total)?;
    Ok((2 * total * (j - 1) / j) as i64)
}

pub fn lsc_report(n: u32) -> Result<LscReport, KummerError> {
    if n < 1 {
        return Err(KummerError::NTooSmall {
            operation: "lsc_report",
            n,
            min: 1,
        });
    }
    let total = n as u64 + 1;
    let j = smallest_prime_divisor(total)?;
    let bound = lsc_degree_bound(n)?;
    let profile = KummerTables::compute(n)?.noninvariant_profile()?;
    // ν = (n+1) always has d(ν) > 1, so the profile is never empty for n >= 1
    let min_noninvariant_degree = *profile
        .keys()
        .next()
        .expect("non-invariant classes exist for n >= 1");
    if min_noninvariant_degree < bound {
        return Err(KummerError::BoundViolated {
            found: min_noninvariant_degree,
            bound,
        });
    }
    let full_lsc = is_prime(total);
    let middle_noninvariant_dim = if full_lsc {
        Some(
            profile
                .get(&(2 * n as i64))
                .cloned()
                .unwrap_or_else(BigUint::zero),
        )
    } else {
        None
    };
    Ok(LscReport {
        n,
        j,
        bound,
        min_noninvariant_degree,
        full_lsc,
        middle_noninvariant_dim,
        profile,
    })
}
