use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::engine::Budget;
use crate::presentations::{lamplighter_relators, Law};
use crate::words::{enumerate_words, parse_word};

fn yes(d: &WpDescription, w: &str) -> bool {
    let w = parse_word(w, d.arity()).unwrap();
    d.run(&w, Budget::new(1_000_000)).unwrap().into_value().unwrap()
}

fn s3() -> (CayleyTable, Vec<usize>) {
    let t = Permutation::new(vec![1, 0, 2]).unwrap();
    let c = Permutation::new(vec![1, 2, 0]).unwrap();
    CayleyTable::from_permutations(&[t, c], 100).unwrap()
}

fn klein() -> CayleyTable {
    CayleyTable::direct_product(&CayleyTable::cyclic(2).unwrap(), &CayleyTable::cyclic(2).unwrap()).unwrap()
}

#[test]
fn cyclic_examples() {
    assert!(yes(&cyclic_wp(2), "a^2"));
    assert!(!yes(&cyclic_wp(0), "a"));
    assert!(yes(&cyclic_wp(0), "1"));
    assert!(!yes(&cyclic_wp(5), "a^12"));
    assert!(yes(&cyclic_wp(5), "a^-15"));
    assert!(matches!(cyclic_wp(2).decide(&Word::identity(2)), Err(Error::ArityMismatch { .. })));
}

#[test]
fn decider_reads_one_letter_per_step() {
    let d = cyclic_wp(3);
    let out = d.run(&parse_word("a^5", 1).unwrap(), Budget::new(100)).unwrap();
    assert_eq!(out, Outcome::Done { value: false, steps: 5 });
    let out = d.run(&Word::identity(1), Budget::new(100)).unwrap();
    assert_eq!(out, Outcome::Done { value: true, steps: 1 });
}

#[test]
fn abelian_examples() {
    let free = abelian_wp(2, &[]).unwrap();
    assert!(yes(&free, "[a,b]"));
    assert!(!yes(&free, "ab"));
    let z2 = abelian_wp(2, &[vec![2, 0]]).unwrap();
    assert!(yes(&z2, "a^2"));
    assert!(!yes(&z2, "a"));
    let gcd = abelian_wp(1, &[vec![6], vec![10]]).unwrap();
    assert!(yes(&gcd, "a^2"));
    assert!(!yes(&gcd, "a^3"));
    assert!(abelian_wp(2, &[vec![1, 2, 3]]).is_err());
}

#[test]
fn free_abelian_matches_exponent_sums() {
    let d = abelian_wp(2, &[]).unwrap();
    for w in enumerate_words(2).take_while(|w| w.len() <= 6) {
        let brute = w.exponent_sums().iter().all(|&s| s == 0);
        assert_eq!(d.run(&w, Budget::new(100)).unwrap().into_value(), Some(brute), "{w}");
    }
}

// Independent membership test in ℤ²: v lies in the span of the rows iff
// some bounded integer combination hits it. By Cramer's rule the bound
// covers entries up to 4 and targets up to 6.
fn span_contains_brute(rows: &[Vec<i64>], v: &[i64]) -> bool {
    let r = 60i64;
    let coeffs: Vec<i64> = (-r..=r).collect();
    match rows.len() {
        0 => v.iter().all(|&x| x == 0),
        1 => coeffs.iter().any(|&c| rows[0].iter().zip(v).all(|(&a, &x)| c * a == x)),
        _ => coeffs.iter().any(|&c| {
            coeffs
                .iter()
                .any(|&d| (0..v.len()).all(|i| c * rows[0][i] + d * rows[1][i] == v[i]))
        }),
    }
}

proptest! {
    #[test]
    fn lattice_membership_agrees_with_brute_force(
        rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 2), 0..=2),
        v in prop::collection::vec(-6i64..=6, 2),
    ) {
        let lattice = abelian::Lattice::new(2, &rows).unwrap();
        prop_assert_eq!(lattice.contains(&v), span_contains_brute(&rows, &v));
    }
}

#[test]
fn finite_examples() {
    let (t, gens) = s3();
    assert_eq!(t.order(), 6);
    let t = Arc::new(t);
    // A transposition and a 3-cycle: their product is a transposition.
    let d = finite_wp(&Marking::new(t.clone(), gens).unwrap());
    assert!(yes(&d, "1"));
    assert!(yes(&d, "a^2"));
    assert!(yes(&d, "b^3"));
    assert!(yes(&d, "(ab)^2"));
    assert!(!yes(&d, "(ab)^3"));
    // Two transpositions, as in ⟨a, b | a², b², (ab)³⟩.
    let u = Permutation::new(vec![0, 2, 1]).unwrap();
    let (t2, pair) = CayleyTable::from_permutations(&[Permutation::new(vec![1, 0, 2]).unwrap(), u], 100).unwrap();
    assert!(CayleyTable::is_isomorphic(&t, &t2));
    let d = finite_wp(&Marking::new(Arc::new(t2), pair).unwrap());
    assert!(yes(&d, "(ab)^3"));
    assert!(!yes(&d, "ab"));
    let z2 = Marking::new(Arc::new(CayleyTable::cyclic(2).unwrap()), vec![1]).unwrap();
    assert!(yes(&finite_wp(&z2), "a^2"));
}

#[test]
fn perm_examples() {
    let id = Permutation::identity(4);
    assert!(yes(&perm_wp(&[id]).unwrap(), "a^7"));
    let tau = Permutation::new(vec![1, 0, 2]).unwrap();
    assert!(yes(&perm_wp(&[tau.clone()]).unwrap(), "a^2"));
    assert!(perm_wp(&[tau, Permutation::identity(4)]).is_err());
    assert!(perm_wp(&[]).is_err());
}

#[test]
fn a5_marking() {
    let gens = a5_generators();
    let d = perm_wp(&gens).unwrap();
    assert!(yes(&d, "a^2"));
    assert!(yes(&d, "b^3"));
    assert!(yes(&d, "(ab)^5"));
    assert!(!yes(&d, "a"));
    let (t, _) = CayleyTable::from_permutations(&gens, 100).unwrap();
    assert_eq!(t.order(), 60);
}

#[test]
fn sigma_witness_formulas() {
    let (s0, s1) = sigma_witness(2).unwrap();
    assert_eq!(s0.degree(), 10);
    // 1-based σ₀(1) = 3 and σ₀(9) = 1.
    assert_eq!(s0.apply(0) + 1, 3);
    assert_eq!(s0.apply(8) + 1, 1);
    // σ₁ swaps 1↔2 and 8↔9 (1-based), fixing the rest.
    let moved: Vec<(usize, usize)> = (0..10).filter(|&i| s1.apply(i) != i).map(|i| (i + 1, s1.apply(i) + 1)).collect();
    assert_eq!(moved, vec![(1, 2), (2, 1), (8, 9), (9, 8)]);
    assert!(sigma_witness(1).is_err());
    assert!(sigma_witness(0).is_err());
}

fn sigma_relations(n: usize) -> Option<(bool, Vec<bool>, bool)> {
    let (s0, s1) = sigma_witness(n).ok()?;
    let d = perm_wp(&[s0, s1]).unwrap();
    let comm = |k: usize| yes(&d, &format!("[b, a^-{k} b a^{k}]"));
    Some((yes(&d, "b^2"), (1..=n).map(comm).collect(), comm(n + 1)))
}

// Frozen from direct evaluation: the displayed permutations satisfy the
// three displayed relations for N = 3, 5, 6 only.
#[test]
fn sigma_witness_relations_observed() {
    assert_eq!(sigma_relations(1), None);
    for n in 2..=6 {
        let (square, low, high) = sigma_relations(n).unwrap();
        assert!(square);
        let all_low = low.iter().all(|&x| x);
        assert_eq!(all_low && !high, [3, 5, 6].contains(&n), "N = {n}: {low:?} {high}");
    }
    assert_eq!(sigma_relations(2).unwrap().1, vec![false, false]);
    assert_eq!(sigma_relations(4).unwrap().1, vec![true, true, true, false]);
}

#[test]
fn sigma_witness_commutator_beyond_n() {
    let (s0, s1) = sigma_witness(2).unwrap();
    let d = perm_wp(&[s0, s1]).unwrap();
    assert!(!yes(&d, "[b, a^-3 b a^3]"));
}

#[test]
fn lamplighter_examples() {
    let d = lamplighter_wp();
    assert!(yes(&d, "b^2"));
    assert!(yes(&d, "[b, a^-1 b a]"));
    assert!(!yes(&d, "ba"));
    let mut e = LamplighterElement::identity();
    e.apply(2);
    e.apply(1);
    assert_eq!(e.shift, 1);
    assert_eq!(e.support.iter().copied().collect::<Vec<_>>(), vec![0]);
}

#[test]
fn lamplighter_relators_are_identities() {
    let d = lamplighter_wp();
    for r in lamplighter_relators().prefix(12, 1000) {
        assert!(d.run(&r, Budget::new(10_000)).unwrap().into_value().unwrap(), "{r}");
    }
}

#[test]
fn lamplighter_element_product_matches_concatenation() {
    let words: Vec<Word> = enumerate_words(2).take(200).collect();
    let eval = |w: &Word| {
        let mut e = LamplighterElement::identity();
        w.letters().iter().for_each(|&l| e.apply(l));
        e
    };
    for u in words.iter().step_by(7) {
        for v in words.iter().step_by(11) {
            assert_eq!(eval(u).mul(&eval(v)), eval(&u.mul(v).unwrap()));
        }
    }
}

// Brute force: reduced Latin squares (first row and column fixed) that
// are associative, by plain backtracking without associativity pruning.
fn brute_group_tables(n: usize) -> Vec<Vec<usize>> {
    fn fill(n: usize, cells: &mut Vec<usize>, i: usize, out: &mut Vec<Vec<usize>>) {
        if i == n * n {
            let ok = (0..n).all(|a| {
                (0..n).all(|b| (0..n).all(|c| cells[cells[a * n + b] * n + c] == cells[a * n + cells[b * n + c]]))
            });
            if ok {
                out.push(cells.clone());
            }
            return;
        }
        let (x, y) = (i / n, i % n);
        if x == 0 || y == 0 {
            cells[i] = x + y;
            return fill(n, cells, i + 1, out);
        }
        for v in 0..n {
            if (0..y).all(|c| cells[x * n + c] != v) && (0..x).all(|r| cells[r * n + y] != v) {
                cells[i] = v;
                fill(n, cells, i + 1, out);
            }
        }
    }
    let mut out = Vec::new();
    fill(n, &mut vec![0; n * n], 0, &mut out);
    out
}

#[test]
fn group_enumeration_matches_brute_force() {
    let emitted = enumerate_finite_groups(6).run(Budget::new(10_000_000));
    for n in 1..=6 {
        let ours: Vec<Vec<usize>> =
            emitted.iter().filter(|t| t.order() == n).map(|t| t.entries().to_vec()).collect();
        assert_eq!(ours, brute_group_tables(n), "order {n}");
    }
    // Per-order counts, frozen from the brute force above.
    let counts: Vec<usize> = (1..=6).map(|n| emitted.iter().filter(|t| t.order() == n).count()).collect();
    assert_eq!(counts, vec![1, 1, 1, 4, 6, 80]);
}

#[test]
fn emitted_tables_validate() {
    let emitted = enumerate_finite_groups(7).run(Budget::new(10_000_000));
    assert_eq!(emitted.iter().filter(|t| t.order() == 7).count(), 120);
    for t in &emitted {
        assert_eq!(&CayleyTable::new(t.rows()).unwrap(), t);
    }
}

#[test]
fn order_four_has_two_classes() {
    let fours: Vec<CayleyTable> =
        enumerate_finite_groups(4).run(Budget::new(1_000_000)).into_iter().filter(|t| t.order() == 4).collect();
    let mut reps: Vec<&CayleyTable> = Vec::new();
    for t in &fours {
        if !reps.iter().any(|r| CayleyTable::is_isomorphic(r, t)) {
            reps.push(t);
        }
    }
    assert_eq!(reps.len(), 2);
}

#[test]
fn group_enumeration_finishes() {
    let mut e = enumerate_finite_groups(3);
    e.run(Budget::new(10_000));
    assert!(e.is_finished());
}

#[test]
fn isomorphism_examples() {
    let z2 = CayleyTable::cyclic(2).unwrap();
    let z3 = CayleyTable::cyclic(3).unwrap();
    let z6 = CayleyTable::cyclic(6).unwrap();
    assert!(CayleyTable::is_isomorphic(&z6, &CayleyTable::direct_product(&z2, &z3).unwrap()));
    assert!(!CayleyTable::is_isomorphic(&CayleyTable::cyclic(4).unwrap(), &klein()));
    assert!(!CayleyTable::is_isomorphic(&s3().0, &z6));
}

#[test]
fn marking_examples() {
    let markings = |t: CayleyTable, k| -> Vec<Vec<usize>> {
        enumerate_markings(Arc::new(t), k).run(Budget::new(100_000)).iter().map(|m| m.tuple().to_vec()).collect()
    };
    assert_eq!(markings(CayleyTable::cyclic(2).unwrap(), 1), vec![vec![1]]);
    assert_eq!(markings(CayleyTable::cyclic(4).unwrap(), 1), vec![vec![1], vec![3]]);
    assert!(markings(klein(), 1).is_empty());
    assert_eq!(markings(klein(), 2).len(), 6);
    assert!(Marking::new(Arc::new(klein()), vec![1]).is_err());
}

#[test]
fn law_examples() {
    assert!(check_law(&klein(), &Law::commutator()));
    assert!(!check_law(&s3().0, &Law::commutator()));
    assert!(check_law(&s3().0, &Law::parse("aA").unwrap()));
    assert!(check_law(&klein(), &Law::parse("a^2").unwrap()));
    assert!(!check_law(&CayleyTable::cyclic(4).unwrap(), &Law::parse("a^2").unwrap()));
}

#[test]
fn lamplighter_tables() {
    for n in 1..=4 {
        let t = CayleyTable::lamplighter(n).unwrap();
        assert_eq!(t.order(), n << n);
        assert_eq!(CayleyTable::new(t.rows()).unwrap(), t);
        let m = Marking::new(Arc::new(t), CayleyTable::lamplighter_marking(n).to_vec()).unwrap();
        // The finite table is the infinite normal form read modulo n.
        for w in enumerate_words(2).take(300) {
            let mut e = LamplighterElement::identity();
            w.letters().iter().for_each(|&l| e.apply(l));
            let mut mask = 0usize;
            for p in &e.support {
                mask ^= 1 << p.rem_euclid(n as i64);
            }
            let expected = (e.shift.rem_euclid(n as i64) as usize) * (1 << n) + mask;
            assert_eq!(m.evaluate(&w), expected, "n={n} w={w}");
        }
    }
}

#[test]
fn table_text_round_trip() {
    let (t, _) = s3();
    let text = t.to_string();
    assert!(text.starts_with("order 6\n"));
    assert_eq!(CayleyTable::parse(&text).unwrap(), t);
    assert_eq!(CayleyTable::parse("order 1\n0\n").unwrap(), CayleyTable::trivial());
    assert!(matches!(CayleyTable::parse("order 2\n0 1\n1 7"), Err(Error::Syntax { position: 14, .. })));
    assert!(CayleyTable::parse("order 2\n0 1\n1 1").is_err());
    assert!(CayleyTable::parse("order 2\n0 1\n1 0 0").is_err());
    assert!(CayleyTable::parse("ordr 2").is_err());
}

#[test]
fn permutation_text_round_trip() {
    let p = Permutation::parse("(2 0 1)").unwrap();
    assert_eq!(p.to_string(), "(2 0 1)");
    assert_eq!(p.order(), 3);
    assert_eq!(p.then(&p.inverse()).unwrap(), Permutation::identity(3));
    assert_eq!(Permutation::parse("()").unwrap().degree(), 0);
    assert!(Permutation::parse("(0 0)").is_err());
    assert!(matches!(Permutation::parse("(0 x)"), Err(Error::Syntax { position: 3, .. })));
    assert!(Permutation::parse("(0 1").is_err());
}

#[test]
fn views_of_a_solver() {
    let d = cyclic_wp(2);
    let a2 = parse_word("a^2", 1).unwrap();
    let a = parse_word("a", 1).unwrap();
    assert!(d.re_view().accepts(&a2).unwrap().run(Budget::new(10)).unwrap().is_done());
    assert!(!d.re_view().accepts(&a).unwrap().run(Budget::new(1000)).unwrap().is_done());
    assert!(d.co_re_view().rejects(&a).unwrap().run(Budget::new(10)).unwrap().is_done());
    let s = Substitution::new(1, vec![parse_word("a^2", 1).unwrap(), a.clone()]).unwrap();
    let pulled = d.pulled_back(&s).unwrap();
    assert_eq!(pulled.arity(), 2);
    assert!(yes(&pulled, "a"));
    assert!(!yes(&pulled, "b"));
}
