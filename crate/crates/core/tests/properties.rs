use proptest::prelude::*;
use sucfix::*;

fn arb_perm(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn union(sets: &[&IntSet]) -> Vec<usize> {
    let mut all: Vec<usize> = sets.iter().flat_map(|s| s.iter()).collect();
    all.sort_unstable();
    all
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn parse_format_round_trip(p in arb_perm(60)) {
        prop_assert_eq!(parse_permutation(&format_permutation(&p)).unwrap(), p);
    }

    #[test]
    fn primitive_involutions(p in arb_perm(60)) {
        prop_assert_eq!(p.inverse().inverse(), p.clone());
        prop_assert_eq!(p.reverse_complement().reverse_complement(), p.clone());
        prop_assert_eq!(p.reverse_complement().inverse(), p.inverse().reverse_complement());
        prop_assert_eq!(p.rotate_left().rotate_right(), p.clone());
        prop_assert_eq!(p.rotate_right().rotate_left(), p.clone());
    }

    #[test]
    fn cycles_cover_each_element_once(p in arb_perm(60)) {
        let cycles = p.cycles();
        let mut seen: Vec<usize> = cycles.iter().flat_map(|c| c.elements().to_vec()).collect();
        prop_assert_eq!(seen.len(), p.len());
        seen.sort_unstable();
        prop_assert_eq!(seen, (1..=p.len()).collect::<Vec<_>>());
        for c in &cycles {
            let e = c.elements();
            for (j, &x) in e.iter().enumerate() {
                prop_assert_eq!(p.get(x), e[(j + 1) % e.len()]);
            }
        }
    }

    #[test]
    fn statistic_partitions(p in arb_perm(60)) {
        let n = p.len();
        let s = StatProfile::of(&p);
        let pos_n = p.values().iter().position(|&x| x == n).unwrap() + 1;

        prop_assert!(s.suc.is_disjoint(&s.naj_suc) && s.suc.is_disjoint(&s.pred) && s.naj_suc.is_disjoint(&s.pred));
        let target: Vec<usize> = (1..=n).filter(|&i| i != pos_n).collect();
        prop_assert_eq!(union(&[&s.suc, &s.naj_suc, &s.pred]), target);

        prop_assert!(s.fix_bar.is_disjoint(&s.drop_bar) && s.fix_bar.is_disjoint(&s.exc_bar) && s.drop_bar.is_disjoint(&s.exc_bar));
        let source: Vec<usize> = (1..=n).filter(|&v| v != p.get(n)).collect();
        prop_assert_eq!(union(&[&s.fix_bar, &s.drop_bar, &s.exc_bar]), source);

        prop_assert_eq!(s.suc.len() + s.naj_suc.len() + s.pred.len(), n - 1);
        prop_assert_eq!(s.fix_bar.len() + s.drop_bar.len() + s.exc_bar.len(), n - 1);
    }

    #[test]
    fn statistic_ranges(p in arb_perm(60)) {
        let n = p.len();
        let s = StatProfile::of(&p);
        let within = |set: &IntSet, lo: usize, hi: usize| set.iter().all(|x| lo <= x && x <= hi);
        prop_assert!(within(&s.suc, 1, n - 1));
        prop_assert!(within(&s.fix_bar, 1, n - 1));
        prop_assert!(within(&s.naj_suc, 1, n.saturating_sub(2)));
        prop_assert!(within(&s.pred, 2, n));
        prop_assert!(within(&s.drop_bar, 1, n.saturating_sub(2)));
        prop_assert!(within(&s.exc_bar, 2, n));
    }

    #[test]
    fn canonical_form_round_trips(p in arb_perm(60)) {
        let c = canonical_cycle_form(&p);
        let w = flatten(&c);
        prop_assert_eq!(unflatten(&w), c.clone());
        prop_assert_eq!(flatten(&unflatten(&p)), p.clone());
        // validated constructor accepts every canonical form we produce
        let raw: Vec<Vec<usize>> = c.clone().into();
        prop_assert_eq!(CanonicalCycleForm::new(raw).unwrap(), c);
    }

    #[test]
    fn phi_round_trip_and_relations(p in arb_perm(60)) {
        let t = phi_with_trace(&p);
        prop_assert_eq!(t.check_step2_identities(), Ok(()));
        let tau = &t.tau;
        prop_assert_eq!(&phi_inverse(tau), &p);
        prop_assert_eq!(phi(&phi_inverse(&p)), p.clone());
        let (a, b) = (StatProfile::of(&p), StatProfile::of(tau));
        prop_assert_eq!(a.fix_bar, b.suc);
        prop_assert_eq!(a.drop_bar, b.naj_suc);
        prop_assert_eq!(a.exc_bar, b.pred);
    }

    #[test]
    fn parse_accepts_mixed_separators(p in arb_perm(20), commas in proptest::collection::vec(any::<bool>(), 20)) {
        let text: String = p
            .values()
            .iter()
            .zip(commas.iter().cycle())
            .map(|(v, &c)| if c { format!("{v}, ") } else { format!("{v}  ") })
            .collect();
        prop_assert_eq!(parse_permutation(&text).unwrap(), p);
    }
}
