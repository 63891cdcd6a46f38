//! Brute-force reference for [`BigradedTable::symmetric_power`].
//!
//! Expands the table into explicit basis slots and counts monomials of
//! length `k` directly: multisets of slots in which each odd-degree slot
//! occurs at most once. Shares no code with the generating-function path.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{BigradedTable, GradedError};

pub const MONOMIAL_BUDGET: u128 = 100_000_000;
pub const MAX_POWER: u32 = 4;
pub const MAX_DIMENSION: u64 = 32;

pub fn sym_bruteforce_oracle(a: &BigradedTable, k: u32) -> Result<BigradedTable, GradedError> {
    let dimension = a.total_dimension();
    let dim = dimension.to_u64().filter(|&d| d <= MAX_DIMENSION);
    let Some(dim) = dim.filter(|_| k <= MAX_POWER) else {
        return Err(GradedError::OracleBounds {
            k,
            dimension: dimension.to_string(),
        });
    };

    // multisets of size k from dim slots
    let bound = multiset_count(dim as u128, k as u128);
    if bound > MONOMIAL_BUDGET {
        return Err(GradedError::BudgetExceeded {
            monomials: bound,
            budget: MONOMIAL_BUDGET,
        });
    }

    let slots: Vec<(i64, i64, bool)> = a
        .iter()
        .flat_map(|(b, h)| {
            let h = h.to_usize().expect("bounded above");
            std::iter::repeat_n((b.p, b.q, b.total().rem_euclid(2) == 1), h)
        })
        .collect();

    let mut counts = std::collections::BTreeMap::<(i64, i64), u64>::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(k as usize);
    walk(&slots, k as usize, 0, &mut chosen, &mut counts);
    Ok(BigradedTable::from_entries(
        counts.into_iter().map(|(pq, c)| (pq, BigUint::from(c))),
    ))
}

fn walk(
    slots: &[(i64, i64, bool)],
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    counts: &mut std::collections::BTreeMap<(i64, i64), u64>,
) {
    if chosen.len() == k {
        let (p, q) = chosen
            .iter()
            .fold((0, 0), |(p, q), &i| (p + slots[i].0, q + slots[i].1));
        *counts.entry((p, q)).or_default() += 1;
        return;
    }
    for i in start..slots.len() {
        if slots[i].2 && chosen.last() == Some(&i) {
            continue;
        }
        chosen.push(i);
        walk(slots, k, i, chosen, counts);
        chosen.pop();
    }
}

fn multiset_count(n: u128, k: u128) -> u128 {
    if n == 0 {
        return u128::from(k == 0);
    }
    // C(n + k − 1, k)
    (0..k).fold(1u128, |acc, i| acc * (n + i) / (i + 1))
}
