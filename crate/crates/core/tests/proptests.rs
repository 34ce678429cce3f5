use pgfusion::autos::{automorphism_group, is_isomorphic};
use pgfusion::corpus::{parse, print, CorpusEntry, EntryBody};
use pgfusion::families::{build, catalogue};
use pgfusion::field::{gl_order, F16, F2Matrix};
use pgfusion::group::Source;
use pgfusion::invariants::{center, fingerprint, generator_rank, p_rank};
use pgfusion::{Caps, Group, Subgroup};
use proptest::prelude::*;
use std::sync::OnceLock;

fn groups() -> &'static [Group] {
    static G: OnceLock<Vec<Group>> = OnceLock::new();
    G.get_or_init(|| catalogue(6).iter().map(|s| build(s, 4096).unwrap()).collect())
}

fn any_group() -> impl Strategy<Value = &'static Group> {
    (0..groups().len()).prop_map(|i| &groups()[i])
}

/// The same group with its non-identity elements shuffled by a seeded xorshift.
fn relabel(g: &Group, seed: u64) -> Group {
    let n = g.order();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut s = seed | 1;
    for i in (2..n).rev() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        let j = 1 + (s as usize) % i;
        perm.swap(i, j);
    }
    let mut back = vec![0; n];
    for (x, &y) in perm.iter().enumerate() {
        back[y] = x;
    }
    let mut table = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = perm[g.mul(back[a], back[b])] as u16;
        }
    }
    let gens = g.gens().iter().map(|(k, x)| (k.clone(), perm[*x])).collect();
    Group::from_table(n, table, Source::Construction, gens, "relabelled").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms(g in any_group(), a in any::<u16>(), b in any::<u16>(), c in any::<u16>()) {
        let n = g.order();
        let (a, b, c) = (a as usize % n, b as usize % n, c as usize % n);
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, 0), a);
        prop_assert_eq!(g.mul(0, a), a);
        prop_assert_eq!(g.mul(a, g.inv(a)), 0);
        let k = g.elt_order(a);
        prop_assert_eq!(g.pow(a, k as i64), 0);
        prop_assert!((1..k).all(|j| g.pow(a, j as i64) != 0));
    }

    #[test]
    fn small_tables_are_associative(g in any_group()) {
        prop_assume!(g.order() <= 32);
        prop_assert!(g.verify_associative());
    }

    #[test]
    fn quotient_by_central_subgroup_is_a_homomorphism(g in any_group(), pick in any::<u16>(), a in any::<u16>(), b in any::<u16>()) {
        let z = center(g).elements();
        let x = z[pick as usize % z.len()];
        let n = Subgroup::generated(g, &[x]);
        let (q, proj) = g.quotient(n.members()).unwrap();
        prop_assert_eq!(q.order() * n.order(), g.order());
        let (a, b) = (a as usize % g.order(), b as usize % g.order());
        prop_assert_eq!(proj[g.mul(a, b)], q.mul(proj[a], proj[b]));
        prop_assert_eq!(proj[x], 0);
    }

    #[test]
    fn generated_subgroups_are_closed(g in any_group(), xs in prop::collection::vec(any::<u16>(), 1..3)) {
        let xs: Vec<usize> = xs.iter().map(|&x| x as usize % g.order()).collect();
        let s = Subgroup::generated(g, &xs);
        let els = s.elements();
        prop_assert!(s.contains(0));
        prop_assert_eq!(g.order() % s.order(), 0);
        for &x in &els {
            prop_assert!(s.contains(g.inv(x)));
            for &y in &els {
                prop_assert!(s.contains(g.mul(x, y)));
            }
        }
        let again = Subgroup::generated(g, s.gens());
        prop_assert_eq!(again.members(), s.members());
    }

    #[test]
    fn fingerprint_fields_are_consistent(g in any_group()) {
        let fp = fingerprint(g);
        prop_assert!(fp.p_rank <= g.order().ilog2());
        if fp.p_rank <= 2 {
            prop_assert!(generator_rank(g) <= 4);
        }
        prop_assert_eq!(fp.order_histogram.values().sum::<usize>(), g.order());
    }

    #[test]
    fn relabelling_preserves_invariants_and_isomorphism(g in any_group(), seed in any::<u64>()) {
        let h = relabel(g, seed);
        prop_assert_eq!(fingerprint(g), fingerprint(&h));
        prop_assert_eq!(p_rank(g), p_rank(&h));
        let w = is_isomorphic(g, &h, &Caps::default()).unwrap();
        prop_assert!(w.is_some_and(|w| w.verify(g, &h)));
    }

    #[test]
    fn f16_is_a_field(a in 0u8..16, b in 0u8..16, c in 0u8..16) {
        let (a, b, c) = (F16::new(a), F16::new(b), F16::new(c));
        prop_assert_eq!((a + b).bits(), a.bits() ^ b.bits());
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * b, b * a);
        if a != F16::ZERO {
            prop_assert_eq!(a.pow(15), F16::ONE);
            prop_assert!(F16::all().any(|y| a * y == F16::ONE));
        }
    }

    #[test]
    fn f16_product_is_reduction_mod_t4_t_1(a in 0u8..16, b in 0u8..16) {
        // schoolbook product, then reduce using t^4 = t + 1
        let mut p = 0u16;
        for i in 0..4 {
            if b >> i & 1 == 1 {
                p ^= (a as u16) << i;
            }
        }
        for deg in (4..7).rev() {
            if p >> deg & 1 == 1 {
                p ^= 1 << deg;
                p ^= 0b11 << (deg - 4);
            }
        }
        prop_assert_eq!((F16::new(a) * F16::new(b)).bits() as u16, p);
    }

    #[test]
    fn matrix_orders_divide_gl_order(rows in prop::collection::vec(0u8..16, 4)) {
        let m = F2Matrix::new(4, &rows).unwrap();
        if m.is_invertible() {
            let k = m.order().unwrap() as u64;
            prop_assert_eq!(gl_order(4) % k, 0);
            prop_assert_eq!(m.rank(), 4);
        } else {
            prop_assert!(m.order().is_err());
        }
    }

    #[test]
    fn automorphism_permutations_are_multiplicative(g in any_group(), i in any::<u16>(), a in any::<u16>(), b in any::<u16>()) {
        prop_assume!(g.order() <= 32);
        let aut = automorphism_group(g, &Caps::default()).unwrap();
        let all = aut.all(g);
        let phi = &all[i as usize % all.len()];
        let (a, b) = (a as usize % g.order(), b as usize % g.order());
        prop_assert_eq!(phi.apply(g.mul(a, b)), g.mul(phi.apply(a), phi.apply(b)));
        prop_assert_eq!(phi.apply(0), 0);
        prop_assert!(phi.pow(phi.order()).is_identity());
    }

    #[test]
    fn corpus_print_then_parse_round_trips(i in 0..catalogue(7).len(), label in proptest::option::of("[A-Za-z0-9 ,()_{}]{1,12}"), order in any::<bool>()) {
        let spec = catalogue(7)[i].clone();
        let expected = if order { vec![("order".to_string(), spec.order())] } else { Vec::new() };
        let e = CorpusEntry { label, body: EntryBody::Family(spec), expected, line: 1 };
        let text = print(std::slice::from_ref(&e));
        let back = parse(&text).unwrap();
        prop_assert_eq!(back, vec![e]);
    }
}
