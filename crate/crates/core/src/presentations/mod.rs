//! Finite and recursive presentations, and the recursively enumerable
//! descriptions they induce.

mod closure;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::engine::{semidecider_to_enumerator, Emit, Enumerator, SemiDecider};
use crate::error::{Error, Result};
use crate::words::{
    check_arity, format_word, shortlex_cmp, substitute, Parser, ShortlexWords, Substitution, Word,
    WordTuples,
};

use closure::ClosureSearch;

/// `⟨g₁, …, g_k | r₁, …, r_m⟩`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinitePresentation {
    arity: usize,
    relators: Vec<Word>,
}

impl FinitePresentation {
    pub fn new(arity: usize, relators: Vec<Word>) -> Result<Self> {
        if arity == 0 {
            return Err(Error::input("a presentation needs at least one generator"));
        }
        for r in &relators {
            check_arity(arity, r.arity())?;
        }
        Ok(FinitePresentation { arity, relators })
    }

    pub fn free(arity: usize) -> Result<Self> {
        FinitePresentation::new(arity, Vec::new())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Relators sorted in shortlex order without duplicates.
    pub fn canonical(&self) -> FinitePresentation {
        let mut relators = self.relators.clone();
        relators.sort_by(shortlex_cmp);
        relators.dedup();
        FinitePresentation {
            arity: self.arity,
            relators,
        }
    }

    pub fn relator_enumerator(&self) -> RelatorEnumerator {
        RelatorEnumerator::from_words(self.arity, self.relators.clone())
    }

    /// Parses `< a, b | a^2, [a,b] >`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser::new(text);
        p.expect('<')?;
        let mut arity = 0;
        let mut after_comma = false;
        loop {
            match p.peek() {
                Some('|') if arity > 0 && !after_comma => {
                    p.pos += 1;
                    break;
                }
                Some(c) if c.is_ascii_lowercase() => {
                    let expected = (b'a' + arity as u8) as char;
                    if c != expected || arity >= 26 {
                        return Err(Error::syntax(p.pos, format!("expected generator '{expected}'")));
                    }
                    p.pos += 1;
                    arity += 1;
                    after_comma = false;
                    match p.peek() {
                        Some(',') => {
                            p.pos += 1;
                            after_comma = true;
                        }
                        Some('|') => {}
                        _ => return Err(Error::syntax(p.pos, "expected ',' or '|'")),
                    }
                }
                _ => return Err(Error::syntax(p.pos, "expected a generator letter")),
            }
        }
        let mut relators = Vec::new();
        if p.peek() != Some('>') {
            loop {
                relators.push(p.word(arity)?);
                match p.peek() {
                    Some(',') => p.pos += 1,
                    Some('>') => break,
                    _ => return Err(Error::syntax(p.pos, "expected ',' or '>'")),
                }
            }
        }
        p.expect('>')?;
        if !p.at_end() {
            return Err(Error::syntax(p.pos, "trailing input after '>'"));
        }
        FinitePresentation::new(arity, relators)
    }
}

impl fmt::Display for FinitePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (0..self.arity)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect();
        let rels: Vec<String> = self.relators.iter().map(format_word).collect();
        if rels.is_empty() {
            write!(f, "< {} | >", gens.join(", "))
        } else {
            write!(f, "< {} | {} >", gens.join(", "), rels.join(", "))
        }
    }
}

impl fmt::Debug for FinitePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinitePresentation({self})")
    }
}

/// A group law `∀x₁…xₙ, w = 1`; the word's generators are the variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Law {
    word: Word,
}

impl Law {
    pub fn new(word: Word) -> Self {
        Law { word }
    }

    /// Parses a law written with `a, b, …` standing for `x₁, x₂, …`; the
    /// variable count is the largest letter used.
    pub fn parse(text: &str) -> Result<Self> {
        let probe = crate::words::parse_word(text, 26)?;
        let n = probe
            .letters()
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(1);
        Ok(Law {
            word: crate::words::parse_word(text, n)?,
        })
    }

    pub fn commutator() -> Self {
        Law::parse("[a,b]").expect("static law")
    }

    pub fn variable_count(&self) -> usize {
        self.word.arity()
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    /// `w(u₁, …, uₙ)`.
    pub fn instance(&self, values: &[Word], arity: usize) -> Result<Word> {
        substitute(&self.word, &Substitution::new(arity, values.to_vec())?)
    }
}

type StreamFactory = Arc<dyn Fn() -> Enumerator<Word> + Send + Sync>;

/// A restartable stream of relators of fixed arity. Every call to
/// [`RelatorEnumerator::start`] yields a fresh, identical stream.
#[derive(Clone)]
pub struct RelatorEnumerator {
    arity: usize,
    factory: StreamFactory,
}

impl RelatorEnumerator {
    pub fn new<F>(arity: usize, factory: F) -> Self
    where
        F: Fn() -> Enumerator<Word> + Send + Sync + 'static,
    {
        RelatorEnumerator {
            arity,
            factory: Arc::new(factory),
        }
    }

    pub fn from_words(arity: usize, words: Vec<Word>) -> Self {
        RelatorEnumerator::new(arity, move || Enumerator::from_iter(words.clone().into_iter()))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn start(&self) -> Enumerator<Word> {
        (self.factory)()
    }

    /// Emits `first` before this stream.
    pub fn preceded_by(&self, first: Vec<Word>) -> RelatorEnumerator {
        let rest = self.clone();
        RelatorEnumerator::new(self.arity, move || {
            Enumerator::new(Chain {
                first: Enumerator::from_iter(first.clone().into_iter()),
                second: rest.start(),
            })
        })
    }

    /// The first `count` emissions, with at most `budget` steps spent.
    pub fn prefix(&self, count: usize, budget: u64) -> Vec<Word> {
        self.start().take(count, crate::engine::Budget::new(budget))
    }
}

impl fmt::Debug for RelatorEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RelatorEnumerator").field("arity", &self.arity).finish()
    }
}

struct Chain {
    first: Enumerator<Word>,
    second: Enumerator<Word>,
}

impl Emit<Word> for Chain {
    fn step(&mut self) -> Option<Word> {
        if !self.first.is_finished() {
            self.first.step()
        } else {
            self.second.step()
        }
    }

    fn is_finished(&self) -> bool {
        self.first.is_finished() && self.second.is_finished()
    }
}

type Membership = Arc<dyn Fn(&Word) -> SemiDecider + Send + Sync>;

/// A recursively enumerable description of a marked group: a semi-decider
/// accepting exactly the words that represent the identity.
#[derive(Clone)]
pub struct ReDescription {
    arity: usize,
    membership: Membership,
}

impl ReDescription {
    pub fn new<F>(arity: usize, membership: F) -> Self
    where
        F: Fn(&Word) -> SemiDecider + Send + Sync + 'static,
    {
        ReDescription {
            arity,
            membership: Arc::new(membership),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Semi-decider accepting iff `w = 1` in the described group.
    pub fn accepts(&self, w: &Word) -> Result<SemiDecider> {
        check_arity(self.arity, w.arity())?;
        Ok((self.membership)(w))
    }

    /// Every identity word, once each, found by dovetailing over all words.
    pub fn enumerate(&self) -> Enumerator<Word> {
        let membership = self.membership.clone();
        semidecider_to_enumerator(
            move |w: &Word| membership(w),
            Enumerator::from_iter(ShortlexWords::new(self.arity)),
        )
    }

    /// Description over the source generators of `s`: a word `v` is
    /// accepted iff its image under `s` is accepted here.
    pub fn pulled_back(&self, s: &Substitution) -> Result<ReDescription> {
        check_arity(self.arity, s.target_arity())?;
        let this = self.clone();
        let s = s.clone();
        Ok(ReDescription::new(s.source_arity(), move |v: &Word| {
            let image = substitute(v, &s).expect("arity checked at construction");
            (this.membership)(&image)
        }))
    }
}

impl fmt::Debug for ReDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ReDescription").field("arity", &self.arity).finish()
    }
}

/// A co-recursively enumerable description: a semi-decider accepting
/// exactly the words that do not represent the identity.
#[derive(Clone)]
pub struct CoReDescription {
    arity: usize,
    witness: Membership,
}

impl CoReDescription {
    pub fn new<F>(arity: usize, witness: F) -> Self
    where
        F: Fn(&Word) -> SemiDecider + Send + Sync + 'static,
    {
        CoReDescription {
            arity,
            witness: Arc::new(witness),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Semi-decider accepting iff `w ≠ 1` in the described group.
    pub fn rejects(&self, w: &Word) -> Result<SemiDecider> {
        check_arity(self.arity, w.arity())?;
        Ok((self.witness)(w))
    }
}

impl fmt::Debug for CoReDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoReDescription").field("arity", &self.arity).finish()
    }
}

/// The normal closure of the emitted relators.
pub fn re_from_enumerator(rel: &RelatorEnumerator) -> ReDescription {
    let rel = rel.clone();
    ReDescription::new(rel.arity, move |w: &Word| {
        SemiDecider::new(ClosureSearch::new(w, rel.start()))
    })
}

/// The normal closure of `p`'s relators.
pub fn consequences(p: &FinitePresentation) -> ReDescription {
    re_from_enumerator(&p.relator_enumerator())
}

/// Relators of `p` interleaved with every instance of the laws, instances
/// of each law in tuple order and laws taken round-robin.
pub fn variety_relators(p: &FinitePresentation, laws: &[Law]) -> RelatorEnumerator {
    let arity = p.arity;
    let relators = p.relators.clone();
    let laws = laws.to_vec();
    RelatorEnumerator::new(arity, move || {
        Enumerator::new(VarietyStream {
            arity,
            relators: relators.clone().into_iter(),
            laws: laws
                .iter()
                .map(|l| (l.clone(), WordTuples::new(arity, l.variable_count())))
                .collect(),
            next_law: 0,
            relator_turn: true,
        })
    })
}

/// Relators and law instances, as a recursively enumerable description.
pub fn variety_consequences(p: &FinitePresentation, laws: &[Law]) -> ReDescription {
    re_from_enumerator(&variety_relators(p, laws))
}

struct VarietyStream {
    arity: usize,
    relators: std::vec::IntoIter<Word>,
    laws: Vec<(Law, WordTuples)>,
    next_law: usize,
    relator_turn: bool,
}

impl Emit<Word> for VarietyStream {
    fn step(&mut self) -> Option<Word> {
        let relators_left = self.relators.len() > 0;
        if (self.relator_turn || self.laws.is_empty()) && relators_left {
            self.relator_turn = false;
            return self.relators.next();
        }
        self.relator_turn = true;
        if self.laws.is_empty() {
            return None;
        }
        let i = self.next_law;
        self.next_law = (i + 1) % self.laws.len();
        let (law, tuples) = &mut self.laws[i];
        let values = tuples.next()?;
        let instance = law.instance(&values, self.arity).expect("arities agree");
        (!instance.is_empty()).then_some(instance)
    }

    fn is_finished(&self) -> bool {
        self.laws.is_empty() && self.relators.len() == 0
    }
}

/// `ε², [ε, a⁻ⁿεaⁿ]` for `n = 1, 2, …` over `a = g₁`, `ε = g₂`.
pub fn lamplighter_relators() -> RelatorEnumerator {
    RelatorEnumerator::new(2, || {
        let a = Word::generator(2, 1).expect("static");
        let e = Word::generator(2, 2).expect("static");
        let first = e.pow(2);
        let stream = std::iter::once(first).chain((1..).map(move |n| {
            let conj = e.conjugate_by(&a.pow(n)).expect("same arity");
            Word::commutator(&e, &conj).expect("same arity")
        }));
        Enumerator::from_iter(stream)
    })
}
