mod common;

use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::subsequence;

use rlw::algebra::{are_isomorphic, canonical_form, canonical_key, validate, Op, ResiduatedLattice};
use rlw::catalog::AlgebraCatalog;
use rlw::filters::{enumerate_filters, filter_join, generated_filter, quotient, FilterSet};
use rlw::subset::Subset;
use rlw::topology::{simple_topology, sup_topologies};

fn catalog() -> &'static AlgebraCatalog {
    static CAT: OnceLock<AlgebraCatalog> = OnceLock::new();
    CAT.get_or_init(|| AlgebraCatalog::generate(5).unwrap())
}

fn algebra() -> impl Strategy<Value = &'static ResiduatedLattice> {
    (0..catalog().len()).prop_map(|i| &*catalog().entries[i].algebra)
}

fn nontrivial() -> impl Strategy<Value = &'static ResiduatedLattice> {
    algebra().prop_filter("needs two elements", |a| a.size() > 1)
}

/// An algebra together with a permutation of its interior elements.
fn relabelled() -> impl Strategy<Value = (&'static ResiduatedLattice, Vec<usize>)> {
    nontrivial().prop_flat_map(|a| {
        let n = a.size();
        let inner: Vec<usize> = (1..n - 1).collect();
        Just(inner).prop_shuffle().prop_map(move |p| {
            let mut perm = vec![0];
            perm.extend(p);
            perm.push(n - 1);
            (a, perm)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_ignores_labels((a, perm) in relabelled()) {
        let b = a.permuted(&perm).unwrap();
        prop_assert_eq!(canonical_form(&b), canonical_form(a));
        prop_assert_eq!(canonical_key(&b), canonical_key(a));
        prop_assert!(are_isomorphic(a, &b));
    }

    #[test]
    fn json_round_trip(a in algebra()) {
        let back = ResiduatedLattice::from_json(&a.to_json()).unwrap();
        prop_assert_eq!(&back, a);
    }

    #[test]
    fn mutations_are_rejected(
        a in nontrivial(),
        op in 0usize..4,
        x in 0usize..5,
        y in 0usize..5,
        v in 0usize..5,
    ) {
        let n = a.size();
        let (x, y, v) = (x % n, y % n, v % n);
        let mut data = a.to_data();
        let op = Op::ALL[op];
        prop_assume!(data.table(op)[x][y] != v);
        data.table_mut(op)[x][y] = v;
        prop_assert!(!validate(&data).is_ok());
    }

    #[test]
    fn generated_filter_is_least(a in algebra(), bits in any::<u128>()) {
        let s = Subset::from_bits(bits).intersection(a.carrier());
        let g = generated_filter(a, s);
        prop_assert!(common::is_filter(a, g.members()));
        prop_assert!(s.is_subset(g.members()));
        prop_assert_eq!(g.members(), common::generated(a, s));
    }

    #[test]
    fn filter_meets_and_joins(a in algebra(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let fs = enumerate_filters(a);
        let (f, g) = (fs[i.index(fs.len())], fs[j.index(fs.len())]);
        let m = f.intersection(&g);
        prop_assert!(common::is_filter(a, m.members()));
        let join = filter_join(a, &f, &g);
        prop_assert_eq!(join.members(), common::generated(a, f.members().union(g.members())));
        let sup = sup_topologies(&[simple_topology(a, &f), simple_topology(a, &g)]).unwrap();
        prop_assert_eq!(sup, simple_topology(a, &m));
    }

    #[test]
    fn quotient_kernel_is_the_filter(a in algebra(), i in any::<prop::sample::Index>()) {
        let fs = enumerate_filters(a);
        let f = fs[i.index(fs.len())];
        let (q, h) = quotient(a, &f).unwrap();
        prop_assert_eq!(h.kernel().unwrap(), f);
        let labels = common::filter_labels(a, f.members());
        let blocks = labels.iter().max().map_or(0, |m| m + 1);
        prop_assert_eq!(q.size(), blocks);
        for x in a.elements() {
            for y in a.elements() {
                prop_assert_eq!(h.map[x] == h.map[y], labels[x] == labels[y]);
            }
        }
    }

    #[test]
    fn filters_of_a_subset_family_intersect_to_a_filter(a in algebra(), pick in subsequence((0..8usize).collect::<Vec<_>>(), 1..4)) {
        let fs = enumerate_filters(a);
        let chosen: Vec<FilterSet> = pick.iter().map(|&k| fs[k % fs.len()]).collect();
        let meet = chosen.iter().fold(FilterSet::improper(a), |m, f| m.intersection(f));
        prop_assert!(chosen.iter().all(|f| meet.is_subset(f)));
        prop_assert!(common::is_filter(a, meet.members()));
    }
}
