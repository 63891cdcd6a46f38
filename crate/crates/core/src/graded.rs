//! Bigraded dimension tables (Hodge numbers) and the exact operations on
//! them that the cohomology computations are assembled from.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub mod oracle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("exact division failed at bidegree ({p},{q}): {reason}")]
    NotDivisible { p: i64, q: i64, reason: String },
    #[error("divisor table is empty")]
    EmptyDivisor,
    #[error("monomial enumeration would visit {monomials} monomials (budget {budget})")]
    BudgetExceeded { monomials: u128, budget: u128 },
    #[error("brute-force oracle needs k <= 4 and total dimension <= 32 (got k = {k}, dimension = {dimension})")]
    OracleBounds { k: u32, dimension: String },
}

/// A bidegree `(p, q)`. Ordered by total degree, then by `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bidegree {
    pub p: i64,
    pub q: i64,
}

impl Bidegree {
    pub const fn new(p: i64, q: i64) -> Self {
        Self { p, q }
    }

    pub const fn total(self) -> i64 {
        self.p + self.q
    }
}

impl Ord for Bidegree {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.total(), self.p).cmp(&(other.total(), other.p))
    }
}

impl PartialOrd for Bidegree {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse table `(p, q) -> h^{p,q}` with arbitrary-precision entries.
/// Zero entries are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BigradedTable {
    entries: BTreeMap<Bidegree, BigUint>,
}

impl BigradedTable {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The table of a point: `h^{0,0} = 1`.
    pub fn point() -> Self {
        Self::from_entries([((0, 0), 1u32)])
    }

    pub fn from_entries<I, V>(entries: I) -> Self
    where
        I: IntoIterator<Item = ((i64, i64), V)>,
        V: Into<BigUint>,
    {
        let mut table = Self::zero();
        for ((p, q), v) in entries {
            table.add_at(Bidegree::new(p, q), &v.into());
        }
        table
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, p: i64, q: i64) -> BigUint {
        self.entries
            .get(&Bidegree::new(p, q))
            .cloned()
            .unwrap_or_default()
    }

    /// Non-zero entries in (total degree, p) order.
    pub fn iter(&self) -> impl Iterator<Item = (Bidegree, &BigUint)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    fn add_at(&mut self, at: Bidegree, value: &BigUint) {
        if value.is_zero() {
            return;
        }
        *self.entries.entry(at).or_default() += value;
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.entries.keys().next().map(|b| b.total())
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.entries.keys().next_back().map(|b| b.total())
    }

    /// `b_k = Σ_{p+q=k} h^{p,q}`.
    pub fn betti(&self, k: i64) -> BigUint {
        self.entries
            .range(Bidegree::new(i64::MIN / 4, k - i64::MIN / 4)..)
            .take_while(|(b, _)| b.total() == k)
            .map(|(_, v)| v)
            .sum()
    }

    /// Non-zero Betti numbers keyed by degree.
    pub fn betti_map(&self) -> BTreeMap<i64, BigUint> {
        let mut out: BTreeMap<i64, BigUint> = BTreeMap::new();
        for (b, v) in &self.entries {
            *out.entry(b.total()).or_default() += v;
        }
        out
    }

    /// `(b_0, b_1, …, b_top)` including zeros. Empty for the zero table.
    ///
    /// Panics if the table has entries in negative total degree.
    pub fn betti_numbers(&self) -> Vec<BigUint> {
        let Some(top) = self.max_degree() else {
            return Vec::new();
        };
        assert!(
            self.min_degree().unwrap_or(0) >= 0,
            "betti_numbers on a table with negative degrees"
        );
        (0..=top).map(|k| self.betti(k)).collect()
    }

    /// Same as [`betti_numbers`](Self::betti_numbers) narrowed to `u64`,
    /// for tests and small reports. Panics on overflow.
    pub fn betti_u64(&self) -> Vec<u64> {
        self.betti_numbers()
            .iter()
            .map(|b| b.to_u64().expect("Betti number exceeds u64"))
            .collect()
    }

    pub fn total_dimension(&self) -> BigUint {
        self.entries.values().sum()
    }

    /// `χ = Σ (−1)^{p+q} h^{p,q}`.
    pub fn euler_characteristic(&self) -> BigInt {
        let mut chi = BigInt::zero();
        for (b, v) in &self.entries {
            let v = BigInt::from(v.clone());
            if b.total().rem_euclid(2) == 0 {
                chi += v;
            } else {
                chi -= v;
            }
        }
        chi
    }

    pub fn is_hodge_symmetric(&self) -> bool {
        self.entries
            .iter()
            .all(|(b, v)| self.entries.get(&Bidegree::new(b.q, b.p)) == Some(v))
    }

    /// `h^{p,q} = h^{d−p,d−q}` for complex dimension `d`.
    pub fn satisfies_poincare_duality(&self, complex_dim: i64) -> bool {
        self.entries.iter().all(|(b, v)| {
            self.entries
                .get(&Bidegree::new(complex_dim - b.p, complex_dim - b.q))
                == Some(v)
        })
    }

    /// True iff every entry of `self` is at most the matching entry of `other`.
    pub fn is_dominated_by(&self, other: &BigradedTable) -> bool {
        self.entries
            .iter()
            .all(|(b, v)| other.entries.get(b).is_some_and(|w| v <= w))
    }

    pub fn scaled(&self, factor: &BigUint) -> BigradedTable {
        if factor.is_zero() {
            return Self::zero();
        }
        let entries = self
            .entries
            .iter()
            .map(|(b, v)| (*b, v * factor))
            .collect();
        Self { entries }
    }

    /// Entrywise difference; `None` if some entry would go negative.
    pub fn checked_sub(&self, other: &BigradedTable) -> Option<BigradedTable> {
        let mut out = self.clone();
        for (b, v) in &other.entries {
            let slot = out.entries.get_mut(b)?;
            if *slot < *v {
                return None;
            }
            *slot -= v;
            if slot.is_zero() {
                out.entries.remove(b);
            }
        }
        Some(out)
    }

    /// Tate twist by `m`: the entry at `(p, q)` moves to `(p − m, q − m)`.
    pub fn tate_twist(&self, m: i64) -> BigradedTable {
        let entries = self
            .entries
            .iter()
            .map(|(b, v)| (Bidegree::new(b.p - m, b.q - m), v.clone()))
            .collect();
        Self { entries }
    }

    /// Künneth product: convolution of the two tables.
    pub fn tensor(&self, other: &BigradedTable) -> BigradedTable {
        let mut out = Self::zero();
        for (a, x) in &self.entries {
            for (b, y) in &other.entries {
                out.add_at(Bidegree::new(a.p + b.p, a.q + b.q), &(x * y));
            }
        }
        out
    }

    /// Degree-`k` part of the free graded-commutative algebra generated by
    /// this table: even total degrees contribute symmetric powers, odd ones
    /// exterior powers.
    ///
    /// Computed as the `t^k` coefficient of
    /// `∏_{even}(1 − t·x^p y^q)^{−h} · ∏_{odd}(1 + t·x^p y^q)^{h}`,
    /// truncated at `t^k` after every factor.
    pub fn symmetric_power(&self, k: u32) -> BigradedTable {
        let k = k as usize;
        // series[j] = coefficient of t^j
        let mut series: Vec<BigradedTable> = vec![Self::zero(); k + 1];
        series[0] = Self::point();
        for (b, h) in &self.entries {
            let odd = b.total().rem_euclid(2) == 1;
            let factor = generator_factor(*b, h, odd, k);
            let mut next = vec![Self::zero(); k + 1];
            for (i, lhs) in series.iter().enumerate() {
                if lhs.is_zero() {
                    continue;
                }
                for (j, (shift, coeff)) in factor.iter().enumerate() {
                    if i + j > k {
                        break;
                    }
                    if coeff.is_zero() {
                        continue;
                    }
                    for (a, x) in &lhs.entries {
                        next[i + j].add_at(Bidegree::new(a.p + shift.p, a.q + shift.q), &(x * coeff));
                    }
                }
            }
            series = next;
        }
        series.swap_remove(k)
    }

    /// Returns `q` with `divisor ⊗ q = self`.
    ///
    /// Peels the minimal entry of the divisor (in (total degree, p) order)
    /// off the remainder, one bidegree at a time. Because both tables are
    /// non-negative, a negative remainder entry can never be repaired and is
    /// reported immediately.
    pub fn exact_divide(&self, divisor: &BigradedTable) -> Result<BigradedTable, GradedError> {
        let (lead_at, lead) = divisor
            .entries
            .iter()
            .next()
            .ok_or(GradedError::EmptyDivisor)?;
        let lead = BigInt::from(lead.clone());
        let divisor_top = divisor.max_degree().unwrap_or(0);
        let top = self.max_degree().unwrap_or(0);

        let mut remainder: BTreeMap<Bidegree, BigInt> = self
            .entries
            .iter()
            .map(|(b, v)| (*b, BigInt::from(v.clone())))
            .collect();
        let mut quotient = Self::zero();

        while let Some((&at, value)) = remainder.iter().next() {
            if value.is_negative() {
                return Err(not_divisible(at, "negative remainder"));
            }
            if at.total() - lead_at.total() + divisor_top > top {
                return Err(not_divisible(at, "quotient would exceed the top degree"));
            }
            let (coeff, rest) = (value / &lead, value % &lead);
            if !rest.is_zero() {
                return Err(not_divisible(at, "fractional coefficient"));
            }
            let shift = Bidegree::new(at.p - lead_at.p, at.q - lead_at.q);
            for (d, v) in &divisor.entries {
                let slot = Bidegree::new(d.p + shift.p, d.q + shift.q);
                let entry = remainder.entry(slot).or_default();
                *entry -= &coeff * BigInt::from(v.clone());
                if entry.is_zero() {
                    remainder.remove(&slot);
                } else if entry.is_negative() {
                    return Err(not_divisible(slot, "negative remainder"));
                }
            }
            let coeff = coeff.to_biguint().expect("checked non-negative");
            quotient.add_at(shift, &coeff);
        }
        Ok(quotient)
    }
}

fn not_divisible(at: Bidegree, reason: &str) -> GradedError {
    GradedError::NotDivisible {
        p: at.p,
        q: at.q,
        reason: reason.to_string(),
    }
}

/// `(shift, coefficient)` of `t^j` in the factor contributed by `h`
/// generators sitting at bidegree `at`, for `j = 0..=k`.
fn generator_factor(at: Bidegree, h: &BigUint, odd: bool, k: usize) -> Vec<(Bidegree, BigUint)> {
    let mut out = Vec::with_capacity(k + 1);
    // running binomial: C(h + j − 1, j) for even, C(h, j) for odd
    let mut coeff = BigUint::one();
    for j in 0..=k {
        let shift = Bidegree::new(at.p * j as i64, at.q * j as i64);
        out.push((shift, coeff.clone()));
        let jj = BigUint::from(j as u64);
        let jn = BigUint::from(j as u64 + 1);
        if odd {
            if *h <= jj {
                coeff = BigUint::zero();
            } else {
                coeff = coeff * (h - &jj) / jn;
            }
        } else {
            coeff = coeff * (h + &jj) / jn;
        }
    }
    out
}

/// Cohomology table of a complex torus of dimension `g`:
/// `h^{p,q} = C(g,p)·C(g,q)`.
pub fn complex_torus_table(g: u32) -> BigradedTable {
    let row = binomial_row(g);
    let mut table = BigradedTable::zero();
    for (p, a) in row.iter().enumerate() {
        for (q, b) in row.iter().enumerate() {
            table.add_at(Bidegree::new(p as i64, q as i64), &(a * b));
        }
    }
    table
}

fn binomial_row(g: u32) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for i in 0..g {
        let last = row.last().unwrap().clone();
        row.push(last * BigUint::from(g - i) / BigUint::from(i + 1));
    }
    row
}

impl AddAssign<&BigradedTable> for BigradedTable {
    fn add_assign(&mut self, rhs: &BigradedTable) {
        for (b, v) in &rhs.entries {
            self.add_at(*b, v);
        }
    }
}

impl Add for BigradedTable {
    type Output = BigradedTable;

    fn add(mut self, rhs: BigradedTable) -> BigradedTable {
        self += &rhs;
        self
    }
}

impl std::iter::Sum for BigradedTable {
    fn sum<I: Iterator<Item = BigradedTable>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, t| acc + t)
    }
}

impl fmt::Debug for BigradedTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(b, v)| ((b.p, b.q), v.to_string())))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(entries: &[((i64, i64), u32)]) -> BigradedTable {
        BigradedTable::from_entries(entries.iter().copied())
    }

    #[test]
    fn torus_tables() {
        assert_eq!(complex_torus_table(0), BigradedTable::point());
        let t2 = complex_torus_table(2);
        assert_eq!(t2.betti_u64(), vec![1, 4, 6, 4, 1]);
        assert_eq!(t2.get(1, 1), BigUint::from(4u32));
        let t4 = complex_torus_table(4);
        assert_eq!(t4.betti(1), BigUint::from(8u32));
        assert_eq!(t4.total_dimension(), BigUint::from(256u32));
        assert!(t4.satisfies_poincare_duality(4));
    }

    #[test]
    fn tensor_examples() {
        let t2 = complex_torus_table(2);
        assert_eq!(t2.tensor(&BigradedTable::point()), t2);
        assert_eq!(t2.tensor(&t2).betti(2), BigUint::from(28u32));
        let k3ish = table(&[((0, 0), 1), ((1, 1), 7), ((2, 2), 1)]);
        assert_eq!(t2.tensor(&k3ish).betti(4), BigUint::from(44u32));
    }

    #[test]
    fn twist_examples() {
        let t2 = complex_torus_table(2);
        assert_eq!(t2.tate_twist(0), t2);
        assert_eq!(BigradedTable::point().tate_twist(-1), table(&[((1, 1), 1)]));
        assert_eq!(t2.tate_twist(3).tate_twist(-3), t2);
    }

    #[test]
    fn symmetric_power_examples() {
        let t2 = complex_torus_table(2);
        assert_eq!(t2.symmetric_power(0), BigradedTable::point());
        assert_eq!(t2.symmetric_power(1), t2);
        let s2 = t2.symmetric_power(2);
        assert_eq!(s2.betti_u64(), vec![1, 4, 12, 28, 38, 28, 12, 4, 1]);
        assert_eq!(s2.total_dimension(), BigUint::from(128u32));
        assert_eq!(t2.symmetric_power(3).total_dimension(), BigUint::from(688u32));
        assert!(table(&[((1, 0), 1)]).symmetric_power(2).is_zero());
    }

    #[test]
    fn division_examples() {
        let t2 = complex_torus_table(2);
        let k3 = table(&[((0, 0), 1), ((2, 0), 1), ((1, 1), 20), ((0, 2), 1), ((2, 2), 1)]);
        let q = t2.tensor(&k3).exact_divide(&t2).unwrap();
        assert_eq!(q, k3);
        assert_eq!(q.betti_u64(), vec![1, 0, 22, 0, 1]);

        let num = table(&[((0, 0), 1), ((1, 0), 1)]);
        let den = table(&[((0, 0), 1), ((1, 0), 2)]);
        assert!(matches!(
            num.exact_divide(&den),
            Err(GradedError::NotDivisible { p: 1, q: 0, .. })
        ));
        assert_eq!(num.exact_divide(&BigradedTable::zero()), Err(GradedError::EmptyDivisor));
    }

    #[test]
    fn division_rejects_non_multiples() {
        let t2 = complex_torus_table(2);
        // t2 + extra class in top degree is not a multiple of t2
        let num = t2.clone() + table(&[((3, 3), 1)]);
        assert!(num.exact_divide(&t2).is_err());
        let den = table(&[((0, 0), 2)]);
        assert!(matches!(
            table(&[((0, 0), 3)]).exact_divide(&den),
            Err(GradedError::NotDivisible { .. })
        ));
    }

    #[test]
    fn euler_of_symmetric_powers_of_torus_vanishes() {
        let t2 = complex_torus_table(2);
        for k in 1..=5 {
            assert!(t2.symmetric_power(k).euler_characteristic().is_zero());
        }
    }

    #[test]
    fn checked_sub_and_domination() {
        let a = table(&[((0, 0), 1), ((1, 1), 3)]);
        let b = table(&[((1, 1), 2)]);
        assert!(b.is_dominated_by(&a));
        assert_eq!(a.checked_sub(&b).unwrap(), table(&[((0, 0), 1), ((1, 1), 1)]));
        assert_eq!(b.checked_sub(&a), None);
    }

    #[test]
    fn betti_with_negative_degrees() {
        let t = table(&[((-1, 0), 2), ((0, -1), 3), ((1, 1), 1)]);
        assert_eq!(t.betti(-1), BigUint::from(5u32));
        assert_eq!(t.betti(2), BigUint::from(1u32));
        assert_eq!(t.betti(0), BigUint::zero());
    }
}
