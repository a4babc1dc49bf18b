//! Isomorphism semi-deciders and word problem solvers built from
//! enumeration: Tietze-style search, Kuznetsov's argument for simple groups
//! and McKinsey's argument for residually finite groups.


use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::engine::{dovetail_and, race, search, Computation, Decider, Emit, Enumerator, Process, SemiDecider};
use crate::error::Result;
use crate::oracles::{enumerate_finite_groups, enumerate_markings, finite_wp, CayleyTable, Marking, WpDescription, MAX_ORDER};
use crate::presentations::{consequences, re_from_enumerator, CoReDescription, FinitePresentation, ReDescription, RelatorEnumerator};
use crate::quotients::{fp_quotient, fp_wpi_quotient, WpiQuotientDescription};
use crate::words::{check_arity, substitute, Substitution, Word, WordTuples};

/// Accepts iff the two presentations define the same marked group.
pub fn marked_iso(p1: &FinitePresentation, p2: &FinitePresentation) -> Result<SemiDecider> {
    check_arity(p1.arity(), p2.arity())?;
    Ok(dovetail_and(vec![
        fp_quotient(p1).test_same(&consequences(p2))?,
        fp_quotient(p2).test_same(&consequences(p1))?,
    ]))
}

/// A pair of mutually inverse isomorphisms, as substitutions on generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoWitness {
    /// Generators of the first presentation as words in the second.
    pub forward: Vec<Word>,
    /// Generators of the second presentation as words in the first.
    pub backward: Vec<Word>,
}

/// Accepts iff the two presentations define isomorphic groups, returning
/// the isomorphism found.
///
/// Pairs `(φ, ψ)` of substitutions are enumerated along diagonals of the
/// shortlex tuple orders; each pair is checked by dovetailing four
/// obligations: `φ` and `ψ` respect the relators, and both composites fix
/// the generators.
pub fn abstract_iso(p1: &FinitePresentation, p2: &FinitePresentation) -> Computation<IsoWitness> {
    let (k1, k2) = (p1.arity(), p2.arity());
    let g1 = consequences(p1);
    let g2 = consequences(p2);
    let r1 = p1.relators().to_vec();
    let r2 = p2.relators().to_vec();
    let domain = Enumerator::new(Pairs {
        left: WordTuples::new(k2, k1),
        right: WordTuples::new(k1, k2),
        left_seen: Vec::new(),
        right_seen: Vec::new(),
        diagonal: 0,
        index: 0,
    });
    search(
        move |(phi, psi): &(Vec<Word>, Vec<Word>)| {
            let phi = Substitution::new(k2, phi.clone()).expect("tuple words share the arity");
            let psi = Substitution::new(k1, psi.clone()).expect("tuple words share the arity");
            let mut parts = Vec::new();
            for r in &r1 {
                parts.push(accepts(&g2, &substitute(r, &phi).expect("arity")));
            }
            for r in &r2 {
                parts.push(accepts(&g1, &substitute(r, &psi).expect("arity")));
            }
            parts.extend(fixes_generators(&g1, &phi.then(&psi).expect("arity")));
            parts.extend(fixes_generators(&g2, &psi.then(&phi).expect("arity")));
            dovetail_and(parts)
        },
        domain,
    )
    .map(|(forward, backward)| IsoWitness { forward, backward })
}

fn accepts(g: &ReDescription, w: &Word) -> SemiDecider {
    g.accepts(w).expect("arity matches the description")
}

fn fixes_generators(g: &ReDescription, s: &Substitution) -> Vec<SemiDecider> {
    let k = s.source_arity();
    s.images()
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let gen = Word::generator(k, i + 1).expect("index in range");
            accepts(g, &w.mul(&gen.inverse()).expect("same arity"))
        })
        .collect()
}

/// The pairs `(xᵢ, yⱼ)` of two streams in order of `i + j`, then `i`.
struct Pairs {
    left: WordTuples,
    right: WordTuples,
    left_seen: Vec<Vec<Word>>,
    right_seen: Vec<Vec<Word>>,
    diagonal: usize,
    index: usize,
}

impl Emit<(Vec<Word>, Vec<Word>)> for Pairs {
    fn step(&mut self) -> Option<(Vec<Word>, Vec<Word>)> {
        let (i, j) = (self.index, self.diagonal - self.index);
        if self.index == self.diagonal {
            self.diagonal += 1;
            self.index = 0;
        } else {
            self.index += 1;
        }
        while self.left_seen.len() <= i {
            self.left_seen.push(self.left.next().expect("tuple streams are infinite"));
        }
        while self.right_seen.len() <= j {
            self.right_seen.push(self.right.next().expect("tuple streams are infinite"));
        }
        Some((self.left_seen[i].clone(), self.right_seen[j].clone()))
    }

    fn is_finished(&self) -> bool {
        false
    }
}

/// Word problem solver for a nontrivial simple group given by a recursive
/// presentation. Races `w = 1` in the presented group against the group
/// obtained by adding `w` as a relator becoming trivial. The first branch
/// wins a tie. On the trivial group, or any non-simple group, answers can
/// be wrong or missing.
pub fn kuznetsov_wp(rel: &RelatorEnumerator) -> WpDescription {
    let k = rel.arity();
    let group = re_from_enumerator(rel);
    let rel = rel.clone();
    WpDescription::new(k, move |w: &Word| {
        let killed = re_from_enumerator(&rel.preceded_by(vec![w.clone()]));
        let all_trivial = dovetail_and(
            (1..=k)
                .map(|i| accepts(&killed, &Word::generator(k, i).expect("index in range")))
                .collect(),
        );
        race(vec![accepts(&group, w), all_trivial]).map(|winner| winner == 0)
    })
}

/// A finite quotient in which a word is non-trivial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteQuotientWitness {
    /// Position of the table in the enumeration of finite groups.
    pub table_index: usize,
    pub table: CayleyTable,
    pub marking: Vec<usize>,
}

/// Searches the finite quotients of `p` for one where `w` is non-trivial.
/// Tables are enumerated by increasing order, markings lexicographically.
pub fn mckinsey_search(p: &FinitePresentation, w: &Word) -> Result<Computation<FiniteQuotientWitness>> {
    check_arity(p.arity(), w.arity())?;
    Ok(Computation::new(McKinsey {
        quotient: fp_wpi_quotient(p),
        word: w.clone(),
        tables: enumerate_finite_groups(MAX_ORDER),
        table_index: 0,
        current: None,
    }))
}

/// The words shown non-trivial by some finite quotient of `p`. For a
/// residually finite group these are exactly the non-identity words.
pub fn mckinsey_nontrivial(p: &FinitePresentation) -> CoReDescription {
    let p = p.clone();
    CoReDescription::new(p.arity(), move |w: &Word| {
        mckinsey_search(&p, w).expect("arity checked by the description").map(|_| ())
    })
}

/// Word problem solver for a finitely presented residually finite group:
/// the consequences of `p` raced against [`mckinsey_nontrivial`].
pub fn mckinsey_wp(p: &FinitePresentation) -> WpDescription {
    let group = consequences(p);
    let nontrivial = mckinsey_nontrivial(p);
    WpDescription::new(p.arity(), move |w: &Word| {
        let no = nontrivial.rejects(w).expect("arity checked by the description");
        race(vec![accepts(&group, w), no]).map(|winner| winner == 0)
    })
}

struct McKinsey {
    quotient: WpiQuotientDescription,
    word: Word,
    tables: Enumerator<CayleyTable>,
    table_index: usize,
    current: Option<Probe>,
}

struct Probe {
    table: Arc<CayleyTable>,
    markings: Enumerator<Marking>,
    running: Option<(Marking, Stage, Decider)>,
}

enum Stage {
    IsQuotient,
    Evaluate,
}

impl Process for McKinsey {
    type Output = FiniteQuotientWitness;

    fn step(&mut self) -> Option<FiniteQuotientWitness> {
        let k = self.quotient.arity();
        let Some(probe) = &mut self.current else {
            if let Some(t) = self.tables.step() {
                let table = Arc::new(t);
                self.current = Some(Probe {
                    markings: enumerate_markings(table.clone(), k),
                    table,
                    running: None,
                });
            }
            return None;
        };
        match &mut probe.running {
            None => match probe.markings.step() {
                Some(m) => {
                    let d = self.quotient.decide_same(&finite_wp(&m)).expect("arities match");
                    probe.running = Some((m, Stage::IsQuotient, d));
                }
                None if probe.markings.is_finished() => {
                    self.current = None;
                    self.table_index += 1;
                }
                None => {}
            },
            Some((m, stage, d)) => match (d.advance(), &stage) {
                (None, _) => {}
                (Some(true), Stage::IsQuotient) => {
                    let eval = finite_wp(m).decide(&self.word).expect("arities match");
                    *stage = Stage::Evaluate;
                    *d = eval;
                }
                (Some(false), Stage::Evaluate) => {
                    let witness = FiniteQuotientWitness {
                        table_index: self.table_index,
                        table: (*probe.table).clone(),
                        marking: m.tuple().to_vec(),
                    };
                    return Some(witness);
                }
                (Some(_), _) => probe.running = None,
            },
        }
        None
    }
}
