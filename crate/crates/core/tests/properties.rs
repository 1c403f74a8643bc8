use expsum::appendix::{equivalence_check, f_closed_form, f_eval, subset_pair, verify_closed_form, SubsetAssignment};
use expsum::magic::{parametric_square, thue_morse_square, verify_magic};
use expsum::prouhet::{prouhet_params, prouhet_split};
use expsum::reducer::{reduce, ReduceOptions, RemovalReason};
use expsum::scalar::{sorted, sum};
use expsum::verifier::{
    build_power_sum_table, check_parity, power_sum, value_sets_match, verify_all_blocks, verify_blocks,
    verify_pyramid, verify_recursive, verify_sequences, verify_system,
};
use expsum::{BaseIdentity, Generator, Rational, Scalar, ShiftVector, SolutionPair};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=8).prop_map(|(n, d)| Rational::new(n, d))
}

fn base(terms: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = BaseIdentity<Rational>> {
    terms
        .prop_flat_map(|n| (prop::collection::vec(rational(), n), prop::collection::vec(rational(), n - 1)))
        .prop_map(|(left, mut right)| {
            let last = sum(left.iter().cloned()) - sum(right.iter().cloned());
            right.push(last);
            BaseIdentity::new(left, right).unwrap()
        })
}

fn shifts(levels: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Rational>> {
    levels.prop_flat_map(|n| prop::collection::vec(rational(), n))
}

fn pair(terms: std::ops::RangeInclusive<usize>, levels: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = SolutionPair<Rational>> {
    (base(terms), shifts(levels)).prop_map(|(b, k)| Generator::default().generate(&b, &ShiftVector::new(k).unwrap()).unwrap())
}

fn r(n: i64) -> Rational {
    Rational::from(n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn system_pyramid_and_blocks_hold(p in pair(2..=3, 1..=10)) {
        prop_assert!(verify_system(&p).passed());
        prop_assert!(verify_pyramid(&p).passed());
        prop_assert!(verify_all_blocks(&p).passed());
        prop_assert_eq!(p.xs().len(), p.terms() << (p.level() - 1));
    }

    #[test]
    fn block_ranges_partition_the_sequence(p in pair(2..=4, 1..=6)) {
        for m in 1..=p.level() as u32 {
            let report = verify_blocks(&p, m).unwrap();
            prop_assert_eq!(report.records.len() * p.prefix_len(m), p.xs().len());
        }
        prop_assert!(verify_blocks(&p, p.level() as u32 + 1).is_err());
        prop_assert!(verify_blocks(&p, 0).is_err());
    }

    #[test]
    fn recursive_table_matches_direct_sums(p in pair(2..=3, 1..=8)) {
        prop_assert!(verify_recursive(&p).passed());
        let table = build_power_sum_table(&p);
        let last = p.level();
        for t in 0..=last as u32 {
            prop_assert_eq!(table.sx(last, t), &power_sum(p.xs(), t));
            prop_assert_eq!(table.sy(last, t), &power_sum(p.ys(), t));
        }
    }

    #[test]
    fn extension_is_transitive(b in base(2..=3), k in shifts(2..=6)) {
        let g = Generator::default();
        let whole = g.generate(&b, &ShiftVector::new(k.clone()).unwrap()).unwrap();
        let mut step = g.seed(&b, k[0].clone()).unwrap();
        for v in &k[1..] {
            step = g.extend(&step, v.clone()).unwrap();
        }
        prop_assert_eq!(&step, &whole);
        // a level-l pair is the prefix of every extension of it
        let len = whole.prefix_len(2);
        let two = g.generate(&b, &ShiftVector::new(k[..2].to_vec()).unwrap()).unwrap();
        prop_assert_eq!(&whole.xs()[..len], two.xs());
        prop_assert_eq!(&whole.ys()[..len], two.ys());
    }

    #[test]
    fn zero_shift_gives_equal_value_sets(b in base(2..=3), k in shifts(2..=7), at in any::<prop::sample::Index>()) {
        let mut k = k;
        let i = 1 + at.index(k.len() - 1);
        k[i] = r(0);
        let p = Generator::default().generate(&b, &ShiftVector::new(k).unwrap()).unwrap();
        prop_assert!(value_sets_match(p.xs(), p.ys()));
    }

    #[test]
    fn parity_closed_form(p in pair(2..=2, 1..=9)) {
        prop_assert!(check_parity(&p).unwrap().passed());
    }

    #[test]
    fn parity_evenness_on_integer_data(
        vals in prop::collection::vec(-30i64..=30, 3),
        k in prop::collection::vec(-30i64..=30, 2..=9),
    ) {
        let (a, b, c) = (r(vals[0]), r(vals[1]), r(vals[2]));
        let d = a.clone() + b.clone() - c.clone();
        let base = BaseIdentity::pair(a, b, c, d).unwrap();
        let p = Generator::default().generate(&base, &ShiftVector::new(k.into_iter().map(r).collect()).unwrap()).unwrap();
        let report = check_parity(&p).unwrap();
        prop_assert!(report.passed());
        prop_assert_eq!(report.records.len(), 2);
    }

    #[test]
    fn reduction_is_idempotent_and_preserves_the_identity(p in pair(2..=3, 1..=6)) {
        let once = reduce(&p, ReduceOptions::FULL).unwrap();
        let twice = once.reduce(ReduceOptions::FULL).unwrap();
        prop_assert_eq!(&once.left, &twice.left);
        prop_assert_eq!(&once.right, &twice.right);
        prop_assert!(verify_sequences(&once.left, &once.right, once.max_power).passed());
        prop_assert!(!once.left.iter().chain(&once.right).any(Scalar::is_zero));
        // no value survives on both sides
        for v in &once.left {
            prop_assert!(!once.right.contains(v));
        }
        let removed: usize = once.removed.iter().map(|x| match x.reason {
            RemovalReason::Zero => x.count,
            RemovalReason::CrossPair => 2 * x.count,
        }).sum();
        prop_assert_eq!(removed + once.left.len() + once.right.len(), 2 * p.xs().len());
    }

    #[test]
    fn zero_shift_reduction_strictly_shrinks(b in base(2..=3), k in shifts(2..=6)) {
        let mut k = k;
        k[1] = r(0);
        let p = Generator::default().generate(&b, &ShiftVector::new(k).unwrap()).unwrap();
        let reduced = reduce(&p, ReduceOptions::FULL).unwrap();
        prop_assert!(reduced.left.len() < p.xs().len());
        prop_assert!(reduced.right.len() < p.ys().len());
    }

    #[test]
    fn parametric_squares_are_magic(a in rational(), b in rational(), c in rational(), k1 in rational(), k2 in rational()) {
        let d = a.clone() + b.clone() - c.clone();
        let sq = parametric_square(a.clone(), b.clone(), c.clone(), d.clone(), k1.clone(), k2.clone()).unwrap();
        prop_assert!(verify_magic(&sq).passed());
        prop_assert_eq!(&sq.magic_sum, &(r(2) * (a.clone() + b.clone() + k1.clone() + k2.clone())));
        // the entries are the level-3 pair built from the same data
        let base = BaseIdentity::pair(a, b, c, d).unwrap();
        let p = Generator::default().generate(&base, &ShiftVector::new(vec![r(0), k1, k2]).unwrap()).unwrap();
        let mut all = p.xs().to_vec();
        all.extend_from_slice(p.ys());
        prop_assert_eq!(sorted(&sq.flatten()), sorted(&all));
    }

    #[test]
    fn subset_construction_satisfies_its_identity(
        a in rational(), b in rational(), c in rational(),
        k in prop::collection::vec(rational(), 0..=7),
    ) {
        let d = a.clone() + b.clone() - c.clone();
        let s = subset_pair(&SubsetAssignment::new(a, b, c, d, k.clone()).unwrap()).unwrap();
        prop_assert_eq!(s.x.len(), 2 << k.len());
        prop_assert!(verify_sequences(&s.x, &s.y, k.len() as u32 + 1).passed());
    }

    #[test]
    fn closed_form_matches_direct_evaluation(a in rational(), b in rational(), k in prop::collection::vec(rational(), 0..=6)) {
        prop_assert!(verify_closed_form(&a, &b, &k).passed());
        prop_assert_eq!(f_closed_form(&a, &b, k.len() as u32 + 2, &k), None);
        for m in 0..=k.len() as u32 + 1 {
            prop_assert_eq!(f_eval(&a, &b, m, &k), f_eval(&b, &a, m, &k));
        }
    }

    #[test]
    fn generator_agrees_with_subset_construction(b in base(2..=2), k in shifts(1..=8)) {
        prop_assert!(equivalence_check(&b, &ShiftVector::new(k).unwrap()).unwrap().passed());
    }
}

#[test]
fn prouhet_splits_up_to_twelve() {
    for n in 1..=12 {
        let split = prouhet_split(n).unwrap();
        for m in 1..=n {
            let (x, y) = split.power_sums(m);
            assert_eq!(x, y, "n = {n}, m = {m}");
        }
        // the identity is strict: power n + 1 differs
        let (x, y) = split.power_sums(n + 1);
        assert_ne!(x, y, "n = {n}");

        let (base, k) = prouhet_params::<Rational>(n).unwrap();
        let p = Generator::default().generate(&base, &k).unwrap();
        let as_q = |v: &[u64]| v.iter().map(|&i| r(i as i64)).collect::<Vec<_>>();
        assert_eq!(sorted(p.xs()), as_q(&split.ones));
        assert_eq!(sorted(p.ys()), as_q(&split.zeros));
    }
}

#[test]
fn thue_morse_square_uses_the_level_three_prouhet_values() {
    let sq = thue_morse_square::<Rational>();
    let mut entries = sq.flatten();
    entries.sort();
    assert_eq!(entries, (1..=16).map(r).collect::<Vec<_>>());
    assert!(sq.has_distinct_entries());
}
