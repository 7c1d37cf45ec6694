use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use multiaxial::grassmannian::{binomial, enumerate_box_partitions, schubert_parity_count, BoxPartition};
use multiaxial::snf::{smith_normal_form, IntMatrix};
use multiaxial::{build_chain_complex, compute_structure_set, AbelianGroup, ActionSpec, CellFiltration, Family};

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-20i64..20, c), r))
}

fn big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().copied().map(BigInt::from).collect())
        .collect()
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::Complex), Just(Family::Quaternionic)]
}

/// Permutation of `0..len` obtained by argsorting random keys.
fn argsort(keys: &[u64], len: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..len).collect();
    idx.sort_by_key(|&i| (keys[i % keys.len()].wrapping_mul(i as u64 + 1), i));
    idx
}

proptest! {
    #[test]
    fn snf_is_a_positive_divisibility_chain(rows in matrix()) {
        let m = IntMatrix::from_rows(&rows);
        let f = m.invariant_factors();
        prop_assert!(f.len() <= rows.len().min(rows[0].len()));
        prop_assert!(f.iter().all(|d| d.is_positive()));
        prop_assert!(f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    }

    #[test]
    fn snf_first_factor_is_entry_gcd(rows in matrix()) {
        let g = rows.iter().flatten().fold(BigInt::zero(), |acc, &x| acc.gcd(&BigInt::from(x)));
        let f = smith_normal_form(big(&rows));
        match f.first() {
            Some(d) => prop_assert_eq!(d, &g),
            None => prop_assert!(g.is_zero()),
        }
    }

    #[test]
    fn snf_ignores_unimodular_row_operations(rows in matrix(), c in -5i64..5, seed in any::<(usize, usize)>()) {
        let r = rows.len();
        let (i, j) = (seed.0 % r, seed.1 % r);
        prop_assume!(i != j);
        let mut u = IntMatrix::identity(r);
        u.set(i, j, c);
        let product = u.mul_exact(&IntMatrix::from_rows(&rows));
        prop_assert_eq!(smith_normal_form(product), smith_normal_form(big(&rows)));
    }

    #[test]
    fn mod2_rank_counts_odd_factors(rows in matrix()) {
        let m = IntMatrix::from_rows(&rows);
        let odd = m.invariant_factors().iter().filter(|d| d.is_odd()).count();
        prop_assert_eq!(m.rank_mod2(), odd);
    }

    #[test]
    fn homology_ignores_generator_order(
        family in family(),
        (n, k) in (1usize..4).prop_flat_map(|n| (Just(n), n..7)),
        keys in prop::collection::vec(any::<u64>(), 1..16),
    ) {
        let oc = build_chain_complex(family, n, k, CellFiltration::all()).unwrap();
        let c = oc.chain_complex();
        let perms: Vec<Vec<usize>> = c.degrees().map(|p| argsort(&keys, c.cell_count(p))).collect();
        let shuffled = c.permuted(&perms).unwrap();
        prop_assert_eq!(shuffled.integral_homology(), c.integral_homology());
        prop_assert_eq!(shuffled.mod2_homology(), c.mod2_homology());
        prop_assert_eq!(shuffled.euler_characteristic(), c.euler_characteristic());
    }

    #[test]
    fn box_partitions_enumerate_lexicographically(n in 1usize..5, bound in 0i64..5) {
        let parts = enumerate_box_partitions(n, bound).unwrap();
        prop_assert_eq!(parts.len(), binomial(n + bound as usize, n));
        prop_assert!(parts.windows(2).all(|w| w[0].parts() < w[1].parts()));
        for p in &parts {
            prop_assert_eq!(p.parts().len(), n);
            prop_assert!(p.parts().windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(p.parts().iter().all(|&m| m <= bound as usize));
        }
    }

    #[test]
    fn parity_counts_sum_to_binomial((n, k) in (1usize..6).prop_flat_map(|n| (Just(n), n..10))) {
        prop_assert_eq!(schubert_parity_count(n, k).unwrap().total(), binomial(k, n));
    }

    #[test]
    fn transpose_and_complement_are_dualities(n in 1usize..5, bound in 0usize..5, pick in any::<usize>()) {
        let parts = enumerate_box_partitions(n, bound as i64).unwrap();
        let p: &BoxPartition = &parts[pick % parts.len()];
        let t = p.transpose();
        prop_assert_eq!(t.weight(), p.weight());
        prop_assert_eq!(t.transpose(), p.clone());
        let c = p.complement();
        prop_assert_eq!(c.weight(), n * bound - p.weight());
        prop_assert_eq!(c.complement(), p.clone());
    }

    #[test]
    fn cyclic_orders_canonicalize(orders in prop::collection::vec(prop_oneof![Just(0u64), 1u64..40], 0..6), keys in prop::collection::vec(any::<u64>(), 1..8)) {
        let g = AbelianGroup::from_cyclic_orders(&orders).unwrap();
        prop_assert!(g.torsion().iter().all(|&t| t > 1));
        prop_assert!(g.torsion().windows(2).all(|w| w[1] % w[0] == 0));
        prop_assert_eq!(g.free_rank(), orders.iter().filter(|&&o| o == 0).count());
        let finite: BigInt = orders.iter().filter(|&&o| o > 0).map(|&o| BigInt::from(o)).product();
        let torsion: BigInt = g.torsion().iter().map(|&t| BigInt::from(t)).product();
        prop_assert_eq!(torsion, finite);
        let reordered: Vec<u64> = argsort(&keys, orders.len()).into_iter().map(|i| orders[i]).collect();
        prop_assert_eq!(AbelianGroup::from_cyclic_orders(&reordered).unwrap(), g);
    }

    #[test]
    fn groups_embed_in_their_sums(
        a in prop::collection::vec(prop_oneof![Just(0u64), 1u64..30], 0..5),
        b in prop::collection::vec(prop_oneof![Just(0u64), 1u64..30], 0..5),
    ) {
        let g = AbelianGroup::from_cyclic_orders(&a).unwrap();
        let h = AbelianGroup::from_cyclic_orders(&b).unwrap();
        let sum = g.direct_sum(&h);
        prop_assert!(g.embeds_into(&g));
        prop_assert!(g.embeds_into(&sum));
        prop_assert!(h.embeds_into(&sum));
        prop_assert_eq!(&sum, &h.direct_sum(&g));
        prop_assert!(AbelianGroup::trivial().embeds_into(&g));
    }

    #[test]
    fn structure_set_total_is_sum_of_summands(family in family(), n in 0usize..6, k in 0usize..8, j in 0usize..3) {
        prop_assume!(!((n == 0 || k == 0) && j == 0));
        let spec = ActionSpec::new(family, n, k, j).unwrap();
        let report = compute_structure_set(spec).unwrap();
        let sum = report.summands.iter().fold(AbelianGroup::trivial(), |acc, s| acc.direct_sum(&s.group));
        prop_assert_eq!(&report.total, &sum);
        prop_assert_eq!(report.normalized_spec, spec.normalize());
        prop_assert_eq!(spec.normalize().normalize(), spec.normalize());
        prop_assert!(!(report.free_exception_fired() && report.basepoint_gain_fired()));
        if spec.is_trivial_action() {
            prop_assert!(report.total.is_trivial());
        }
    }
}

#[test]
fn unit_factor_survives_identity() {
    assert_eq!(IntMatrix::identity(3).invariant_factors(), vec![BigInt::one(); 3]);
}
