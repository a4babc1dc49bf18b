use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::engine::Budget;
use crate::oracles::{cyclic_wp, finite_wp, perm_wp, sigma_witness, CayleyTable, Marking};
use crate::presentations::{consequences, variety_consequences, RelatorEnumerator};
use crate::words::parse_word;

fn pres(text: &str) -> FinitePresentation {
    FinitePresentation::parse(text).unwrap()
}

fn words(arity: usize, texts: &[&str]) -> Vec<Word> {
    texts.iter().map(|t| parse_word(t, arity).unwrap()).collect()
}

fn accepts_within(mut d: SemiDecider, budget: u64) -> bool {
    d.run(Budget::new(budget)).unwrap().is_done()
}

fn answer(mut d: Decider, budget: u64) -> Option<bool> {
    d.run(Budget::new(budget)).unwrap().into_value()
}

#[test]
fn class_tags_display() {
    assert_eq!(ClassTag::All.to_string(), "all-rp");
    assert_eq!(ClassTag::Finite.to_string(), "finite");
    assert_eq!(ClassTag::variety(&[Law::commutator()]).to_string(), "variety:ABab");
}

#[test]
fn fp_quotient_cyclic_examples() {
    let q = fp_quotient(&pres("<a|a^6>"));
    assert!(accepts_within(q.test_same(&consequences(&pres("<a|a^3>"))).unwrap(), 10_000));
    assert!(accepts_within(q.test_same(&consequences(&pres("<a|a^6>"))).unwrap(), 10_000));
    assert!(!accepts_within(q.test_same(&consequences(&pres("<a|a^4>"))).unwrap(), 10_000));
    assert!(!accepts_within(q.test_same(&consequences(&pres("<a|>"))).unwrap(), 10_000));
}

#[test]
fn empty_presentation_accepts_at_once() {
    let q = fp_quotient(&pres("<a,b|>"));
    let mut d = q.test_same(&consequences(&pres("<a,b|a>"))).unwrap();
    assert_eq!(d.run(Budget::new(1)).unwrap().steps(), 1);
}

#[test]
fn fp_quotient_through_substitution() {
    // ⟨a,b | [a,b]⟩ maps onto ℤ/3 by a ↦ x, b ↦ x².
    let q = fp_quotient(&pres("<a,b|[a,b]>"));
    let f = Substitution::new(1, words(1, &["a", "a^2"])).unwrap();
    assert!(accepts_within(q.test(&consequences(&pres("<a|a^3>")), &f).unwrap(), 10_000));
    assert!(q.test(&consequences(&pres("<a,b|>")), &f).is_err());
}

#[test]
fn fp_quotient_accepts_abelianization() {
    let q = fp_quotient(&pres("<a,b|[a,b]>"));
    let free = consequences(&pres("<a,b|>"));
    assert!(!accepts_within(q.test_same(&free).unwrap(), 50_000));
    let z2 = consequences(&pres("<a,b|[a,b]>"));
    assert!(accepts_within(q.test_same(&z2).unwrap(), 50_000));
}

#[test]
fn fp_wpi_quotient_cyclic() {
    let q = fp_wpi_quotient(&pres("<a|a^6>"));
    assert_eq!(answer(q.decide_same(&cyclic_wp(3)).unwrap(), 100), Some(true));
    assert_eq!(answer(q.decide_same(&cyclic_wp(4)).unwrap(), 100), Some(false));
    assert_eq!(answer(q.decide_same(&cyclic_wp(0)).unwrap(), 100), Some(false));
}

proptest! {
    // ⟨a | aᵐ⟩ maps onto ℤ/n exactly when n divides m.
    #[test]
    fn fp_wpi_quotient_matches_divisibility(m in 1u64..13, n in 0u64..13) {
        let q = fp_wpi_quotient(&FinitePresentation::new(1, vec![Word::generator(1, 1).unwrap().pow(m as i64)]).unwrap());
        let expected = if n == 0 { false } else { m % n == 0 };
        prop_assert_eq!(answer(q.decide_same(&cyclic_wp(n)).unwrap(), 1_000), Some(expected));
    }

    // On the catalog of cyclic pairs both quotient flavors agree whenever
    // the semi-decider answers.
    #[test]
    fn fp_quotient_agrees_with_wpi(m in 1u64..9, n in 1u64..9) {
        let p = FinitePresentation::new(1, vec![Word::generator(1, 1).unwrap().pow(m as i64)]).unwrap();
        let target = FinitePresentation::new(1, vec![Word::generator(1, 1).unwrap().pow(n as i64)]).unwrap();
        let semi = accepts_within(fp_quotient(&p).test_same(&consequences(&target)).unwrap(), 20_000);
        let total = answer(fp_wpi_quotient(&p).decide_same(&cyclic_wp(n)).unwrap(), 1_000);
        prop_assert_eq!(Some(semi), total);
    }
}

#[test]
fn change_marking_to_a_and_ab() {
    let q = fp_quotient(&pres("<a,b|[a,b]>"));
    // Old generators in the new ones (a, c = ab), and back.
    let s_in_t = Substitution::new(2, words(2, &["a", "Ab"])).unwrap();
    let t_in_s = Substitution::new(2, words(2, &["a", "ab"])).unwrap();
    let moved = change_marking(&q, &s_in_t, &t_in_s).unwrap();
    assert_eq!(moved.arity(), 2);
    let z2 = consequences(&pres("<a,b|[a,b]>"));
    assert!(accepts_within(moved.test_same(&z2).unwrap(), 200_000));
    let free = consequences(&pres("<a,b|>"));
    assert!(!accepts_within(moved.test_same(&free).unwrap(), 100_000));
}

#[test]
fn change_marking_checks_the_map_on_new_generators() {
    // ℤ/6 marked by a, moved to the marking by c = a⁵ = a⁻¹.
    let q = fp_quotient(&pres("<a|a^6>"));
    let s_in_t = Substitution::new(1, words(1, &["A"])).unwrap();
    let t_in_s = Substitution::new(1, words(1, &["A"])).unwrap();
    let moved = change_marking(&q, &s_in_t, &t_in_s).unwrap();
    assert!(accepts_within(moved.test_same(&consequences(&pres("<a|a^2>"))).unwrap(), 50_000));
    assert!(!accepts_within(moved.test_same(&consequences(&pres("<a|a^4>"))).unwrap(), 50_000));
}

#[test]
fn change_marking_rejects_bad_arities() {
    let q = fp_quotient(&pres("<a,b|>"));
    let one = Substitution::new(1, words(1, &["a"])).unwrap();
    assert!(change_marking(&q, &one, &one).is_err());
}

fn lamplighter_table_wp(n: usize) -> crate::oracles::WpDescription {
    let t = Arc::new(CayleyTable::lamplighter(n).unwrap());
    finite_wp(&Marking::new(t, CayleyTable::lamplighter_marking(n).to_vec()).unwrap())
}

#[test]
fn lamplighter_quotient_accepts_finite_wreath_products() {
    let q = lamplighter_finite_quotient();
    assert_eq!(q.class(), &ClassTag::Finite);
    for n in 1..=4 {
        assert_eq!(answer(q.decide_same(&lamplighter_table_wp(n)).unwrap(), 1_000_000), Some(true), "n = {n}");
    }
}

#[test]
fn lamplighter_quotient_rejects_sigma_witnesses() {
    let q = lamplighter_finite_quotient();
    for n in [2, 3] {
        let (s0, s1) = sigma_witness(n).unwrap();
        let wp = perm_wp(&[s0, s1]).unwrap();
        assert_eq!(answer(q.decide_same(&wp).unwrap(), 1_000_000), Some(false), "N = {n}");
    }
}

#[test]
fn lamplighter_quotient_on_small_groups() {
    let q = lamplighter_finite_quotient();
    // In ℤ/2 × ℤ/2 every element commutes, so all relators hold.
    let klein = Arc::new(CayleyTable::direct_product(&CayleyTable::cyclic(2).unwrap(), &CayleyTable::cyclic(2).unwrap()).unwrap());
    let m = Marking::new(klein, vec![2, 1]).unwrap();
    assert_eq!(answer(q.decide_same(&finite_wp(&m)).unwrap(), 10_000), Some(true));
    // S₃ with a of order 3 and b a transposition: b does not commute with
    // its conjugate.
    let (s3, gens) = CayleyTable::from_permutations(
        &[
            crate::oracles::Permutation::new(vec![1, 2, 0]).unwrap(),
            crate::oracles::Permutation::new(vec![1, 0, 2]).unwrap(),
        ],
        100,
    )
    .unwrap();
    let m = Marking::new(Arc::new(s3), gens).unwrap();
    assert_eq!(answer(q.decide_same(&finite_wp(&m)).unwrap(), 10_000), Some(false));
}

fn z2_stream() -> RelatorEnumerator {
    let p = pres("<a|a^6,a^10>");
    let re = consequences(&p);
    RelatorEnumerator::new(1, move || re.enumerate()).preceded_by(words(1, &["a^6", "a^10"]))
}

#[test]
fn extraction_returns_first_sufficient_prefix() {
    let q = fp_quotient(&pres("<a|a^6,a^10>"));
    let mut c = extract_presentation(&z2_stream(), &q).unwrap();
    let out = c.run(Budget::new(1_000_000)).unwrap().into_value().expect("extraction finishes");
    assert_eq!(out.relators(), &words(1, &["a^6", "a^10"])[..]);
}

#[test]
fn extraction_from_finite_stream() {
    let rel = RelatorEnumerator::from_words(2, words(2, &["a^2", "b^3", "[a,b]"]));
    let q = fp_quotient(&pres("<a,b|a^2,b^3,[a,b]>"));
    let out = extract_presentation(&rel, &q).unwrap().run(Budget::new(2_000_000)).unwrap();
    assert_eq!(out.into_value().unwrap().relators().len(), 3);
    let short = extract_presentation(&rel, &fp_quotient(&pres("<a,b|a^2>"))).unwrap();
    let mut short = short;
    assert_eq!(short.run(Budget::new(100_000)).unwrap().into_value().unwrap().relators(), &words(2, &["a^2"])[..]);
}

#[test]
fn extraction_checks_arity() {
    assert!(extract_presentation(&z2_stream(), &fp_quotient(&pres("<a,b|>"))).is_err());
}

#[test]
fn extraction_in_abelian_variety() {
    let laws = [Law::commutator()];
    let z2 = RelatorEnumerator::from_words(2, words(2, &["[a,b]"]));
    let q = fp_quotient(&pres("<a,b|[a,b]>"));
    let out = extract_in_variety(&z2, &q, &laws).unwrap().run(Budget::new(1_000_000)).unwrap();
    assert!(out.into_value().unwrap().relators().is_empty());

    let stream = RelatorEnumerator::from_words(2, words(2, &["a^2", "[a,b]"]));
    let q = fp_quotient(&pres("<a,b|a^2,[a,b]>"));
    let out = extract_in_variety(&stream, &q, &laws).unwrap().run(Budget::new(1_000_000)).unwrap();
    assert_eq!(out.into_value().unwrap().relators(), &words(2, &["a^2"])[..]);
}

#[test]
fn variety_candidates_accept_laws() {
    let d = variety_consequences(&pres("<a,b|>"), &[Law::commutator()]);
    let q = fp_quotient(&pres("<a,b|[a,b]>"));
    assert!(accepts_within(q.test_same(&d).unwrap(), 100_000));
}

#[test]
fn stream_quotient_on_finite_stream() {
    let rel = RelatorEnumerator::from_words(1, words(1, &["a^6", "a^4"]));
    let q = stream_quotient(&rel);
    assert!(accepts_within(q.test_same(&consequences(&pres("<a|a^2>"))).unwrap(), 10_000));
    assert!(!accepts_within(q.test_same(&consequences(&pres("<a|a^3>"))).unwrap(), 10_000));
    let empty = stream_quotient(&RelatorEnumerator::from_words(1, vec![]));
    assert!(accepts_within(empty.test_same(&consequences(&pres("<a|>"))).unwrap(), 10));
}

#[test]
fn stream_quotient_on_infinite_stream() {
    // Relators aⁿ for every n: the stream never ends, so nothing is accepted.
    let rel = RelatorEnumerator::new(1, || Enumerator::from_iter((1..).map(|n| Word::generator(1, 1).unwrap().pow(n))));
    let q = stream_quotient(&rel);
    assert!(!accepts_within(q.test_same(&consequences(&pres("<a|a>"))).unwrap(), 100_000));
    assert!(!accepts_within(q.test_same(&consequences(&pres("<a|a^2>"))).unwrap(), 10_000));
}

#[test]
fn pickel_separates_z_from_z2() {
    let z = fp_wpi_quotient(&pres("<a|>"));
    let z2 = fp_wpi_quotient(&pres("<a|a^2>"));
    let out = pickel_separator(&z, &z2, 8).unwrap().run(Budget::new(1_000_000)).unwrap();
    let sep = out.into_value().expect("separated");
    assert_eq!(sep.table.order(), 3);
    assert_eq!(sep.side, Side::First);
    let out = pickel_separator(&z2, &z, 8).unwrap().run(Budget::new(1_000_000)).unwrap();
    assert_eq!(out.into_value().unwrap().side, Side::Second);
}

#[test]
fn pickel_separates_z4_from_z2() {
    let z4 = fp_wpi_quotient(&pres("<a|a^4>"));
    let z2 = fp_wpi_quotient(&pres("<a|a^2>"));
    let sep = pickel_separator(&z4, &z2, 8).unwrap().run(Budget::new(1_000_000)).unwrap().into_value().unwrap();
    assert_eq!(sep.table.order(), 4);
    assert!(CayleyTable::is_isomorphic(&sep.table, &CayleyTable::cyclic(4).unwrap()));
    assert_eq!(sep.side, Side::First);
}

#[test]
fn pickel_idles_on_equal_quotient_sets() {
    let a = fp_wpi_quotient(&pres("<a|a^6>"));
    let b = fp_wpi_quotient(&pres("<a|a^6,a^12>"));
    let out = pickel_separator(&a, &b, 5).unwrap().run(Budget::new(200_000)).unwrap();
    assert!(!out.is_done());
    assert!(pickel_separator(&a, &fp_wpi_quotient(&pres("<a,b|>")), 5).is_err());
}

fn lamplighter_extraction_exhausts(budget: u64) {
    let rel = crate::presentations::lamplighter_relators();
    let q = stream_quotient(&rel);
    let out = extract_presentation(&rel, &q).unwrap().run(Budget::new(budget)).unwrap();
    assert!(!out.is_done());
    assert_eq!(out.steps(), budget);
}

#[test]
fn lamplighter_extraction_never_finishes() {
    lamplighter_extraction_exhausts(100_000);
}

// Takes about half an hour in release mode.
#[test]
#[ignore]
fn lamplighter_extraction_never_finishes_full_budget() {
    lamplighter_extraction_exhausts(10_000_000);
}
