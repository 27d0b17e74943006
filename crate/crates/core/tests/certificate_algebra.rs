use proptest::prelude::*;

use qtdeg::classify::{
    block_sum_certificates, degree_set, mirror_domain, mirror_target, realize, stabilize_certificate,
};
use qtdeg::search::{verify_certificate, Certificate, SearchOutcome};
use qtdeg::QuasitoricSum;

fn triple(max_rank: usize) -> impl Strategy<Value = QuasitoricSum> {
    (0u32..=3, 0u32..=3, 0u32..=2)
        .prop_filter_map("nonempty within rank", move |(a, b, c)| {
            QuasitoricSum::new(a, b, c).ok().filter(|x| x.rank() <= max_rank)
        })
}

/// A realized certificate for some member of the known degree set.
fn certificate(m: QuasitoricSum, n: QuasitoricSum, pick: usize) -> Option<Certificate> {
    let members = degree_set(&m, &n).set.members_in(-9, 9);
    let k = members[pick % members.len()];
    match realize(&m, &n, k) {
        SearchOutcome::Found(c) => Some(c),
        _ => None,
    }
}

fn check(c: &Certificate) -> bool {
    verify_certificate(c.matrix(), &c.domain(), &c.target(), c.degree()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1200))]

    #[test]
    fn algebra_preserves_validity(
        m in triple(4), n in triple(2), m2 in triple(3), n2 in triple(2), extra in triple(3),
        pick in 0usize..64, pick2 in 0usize..64,
    ) {
        let Some(c) = certificate(m, n, pick) else { return Ok(()) };
        prop_assert!(check(&c));

        let s = stabilize_certificate(&c, &extra);
        prop_assert!(check(&s));
        prop_assert_eq!(s.domain(), m.connected_sum(&extra));

        let md = mirror_domain(&c);
        prop_assert!(check(&md));
        prop_assert_eq!(md.degree(), -c.degree());
        let mt = mirror_target(&c);
        prop_assert!(check(&mt));

        if let Some(self_map) = certificate(n, n, pick2) {
            let comp = c.compose(&self_map).unwrap();
            prop_assert!(check(&comp));
            prop_assert_eq!(comp.degree(), c.degree() * self_map.degree());
        }

        if let SearchOutcome::Found(d) = realize(&m2, &n2, c.degree()) {
            let b = block_sum_certificates(&c, &d).unwrap();
            prop_assert!(check(&b));
            prop_assert_eq!(b.target(), n.connected_sum(&n2));
        }
    }

    #[test]
    fn mirror_symmetry_of_degree_sets(m in triple(4), n in triple(2), k in -12i64..=12) {
        let d = degree_set(&m, &n);
        let r = degree_set(&m.reverse_orientation(), &n);
        if d.is_exact() && r.is_exact() {
            prop_assert_eq!(d.contains(k), r.contains(-k));
        }
        let both = degree_set(&m.reverse_orientation(), &n.reverse_orientation());
        prop_assert_eq!(d.set, both.set);
    }

    #[test]
    fn exact_sets_closed_under_self_maps(m in triple(4), n in triple(2), k in -6i64..=6, l in -6i64..=6) {
        let d = degree_set(&m, &n);
        let s = degree_set(&n, &n);
        if d.is_exact() && d.contains(k) && s.contains(l) {
            prop_assert!(d.contains(k * l), "{} -> {}: {} * {}", m, n, k, l);
        }
    }
}
