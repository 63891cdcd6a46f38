use kummerlab::graded::oracle::sym_bruteforce_oracle;
use kummerlab::{complex_torus_table, BigradedTable};
use num_bigint::BigInt;
use proptest::prelude::*;

fn small_table(max_pq: i64, max_entry: u32, max_len: usize) -> impl Strategy<Value = BigradedTable> {
    prop::collection::vec(((0..=max_pq, 0..=max_pq), 0..=max_entry), 0..=max_len)
        .prop_map(BigradedTable::from_entries)
}

/// Table with h^{0,0} = 1 so it is a valid divisor.
fn unit_led_table() -> impl Strategy<Value = BigradedTable> {
    small_table(3, 4, 6).prop_map(|t| {
        let mut t = t;
        t += &BigradedTable::point();
        let extra = t.get(0, 0) - 1u32;
        t.checked_sub(&BigradedTable::from_entries([((0, 0), extra)])).unwrap()
    })
}

fn hodge_symmetrize(t: &BigradedTable) -> BigradedTable {
    let mut out = t.clone();
    for (b, v) in t.iter() {
        if b.p != b.q {
            out += &BigradedTable::from_entries([((b.q, b.p), v.clone())]);
        }
    }
    out
}

proptest! {
    #[test]
    fn tensor_is_commutative_and_associative(
        a in small_table(3, 5, 5), b in small_table(3, 5, 5), c in small_table(3, 5, 5)
    ) {
        prop_assert_eq!(a.tensor(&b), b.tensor(&a));
        prop_assert_eq!(a.tensor(&b).tensor(&c), a.tensor(&b.tensor(&c)));
        prop_assert_eq!(a.tensor(&BigradedTable::point()), a.clone());
    }

    #[test]
    fn twist_round_trip(a in small_table(4, 9, 6), m in -5i64..5) {
        prop_assert_eq!(a.tate_twist(m).tate_twist(-m), a.clone());
        for k in -12..12 {
            prop_assert_eq!(a.tate_twist(m).betti(k - 2 * m), a.betti(k));
        }
    }

    #[test]
    fn symmetric_power_matches_enumeration(a in small_table(2, 3, 6), k in 0u32..=3) {
        prop_assume!(a.total_dimension() <= 16u32.into());
        prop_assert_eq!(a.symmetric_power(k), sym_bruteforce_oracle(&a, k).unwrap());
    }

    #[test]
    fn division_inverts_tensor(a in unit_led_table(), b in small_table(3, 6, 6)) {
        prop_assert_eq!(a.tensor(&b).exact_divide(&a).unwrap(), b);
    }

    #[test]
    fn hodge_symmetry_is_preserved(a in small_table(3, 3, 5), b in small_table(3, 3, 5), k in 0u32..4) {
        let a = hodge_symmetrize(&a);
        let b = hodge_symmetrize(&b);
        prop_assert!(a.is_hodge_symmetric());
        prop_assert!(a.tensor(&b).is_hodge_symmetric());
        prop_assert!(a.symmetric_power(k).is_hodge_symmetric());
        prop_assert!(a.tate_twist(2).is_hodge_symmetric());
        let mut unit = a.clone();
        unit += &BigradedTable::point();
        let unit = hodge_symmetrize(&unit);
        if unit.get(0, 0) == 1u32.into() {
            prop_assert!(unit.tensor(&b).exact_divide(&unit).unwrap().is_hodge_symmetric());
        }
    }

    /// Σ_k χ(Sym^k a) t^k = (1 − t)^{−χ(a)} to order 5.
    #[test]
    fn euler_generating_function(a in small_table(3, 4, 6)) {
        let chi = a.euler_characteristic();
        let mut expected = BigInt::from(1);
        for k in 0..=5u32 {
            prop_assert_eq!(a.symmetric_power(k).euler_characteristic(), expected.clone());
            // coefficient of t^{k+1} in (1 − t)^{−χ}: C(χ + k, k + 1) generalized
            expected = expected * (&chi + BigInt::from(k)) / BigInt::from(k + 1);
        }
    }
}

#[test]
fn torus_poincare_duality() {
    for g in 0..=6 {
        let t = complex_torus_table(g);
        assert!(t.satisfies_poincare_duality(g as i64));
        assert!(t.is_hodge_symmetric());
        assert_eq!(t.total_dimension(), num_bigint::BigUint::from(4u32).pow(g));
    }
}

#[test]
fn torus_symmetric_powers_have_zero_euler_characteristic() {
    let t2 = complex_torus_table(2);
    for k in 1..=12 {
        assert_eq!(t2.symmetric_power(k).euler_characteristic(), BigInt::from(0));
    }
}
