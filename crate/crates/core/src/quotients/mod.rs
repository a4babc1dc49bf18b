//! Marked quotient algorithms.
//!
//! A [`QuotientDescription`] of a marked group `G` takes a candidate group
//! `H` (as an r.e. description) and a substitution `f` from the generators
//! of `G` to words over those of `H`, and accepts iff `f` extends to a
//! surjective homomorphism `G ↠ H`. A [`WpiQuotientDescription`] does the
//! same for candidates given by a word problem solver, and always answers.

mod extract;
mod pickel;

#[cfg(test)]
mod tests;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::engine::{dovetail_and, search, sequence_all, Computation, Decider, Enumerator, Process, SemiDecider};
use crate::error::Result;
use crate::oracles::WpDescription;
use crate::presentations::{FinitePresentation, Law, ReDescription};
use crate::words::{check_arity, format_word, substitute, Substitution, Word, WordTuples};

pub use extract::{extract_in_variety, extract_presentation, HEAD_START};
pub use pickel::{pickel_separator, Separation, Side};

/// The class of candidate groups a relative algorithm is meant for.
/// Behavior on candidates outside the class is unspecified.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassTag {
    /// Every recursively presented group.
    All,
    Finite,
    /// Groups satisfying the given laws, written in the word grammar.
    Variety(Vec<String>),
}

impl ClassTag {
    pub fn variety(laws: &[Law]) -> Self {
        ClassTag::Variety(laws.iter().map(|l| format_word(l.word())).collect())
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassTag::All => write!(f, "all-rp"),
            ClassTag::Finite => write!(f, "finite"),
            ClassTag::Variety(laws) => write!(f, "variety:{}", laws.join(",")),
        }
    }
}

type QuotientFn = Arc<dyn Fn(&ReDescription, &Substitution) -> SemiDecider + Send + Sync>;

#[derive(Clone)]
pub struct QuotientDescription {
    arity: usize,
    class: ClassTag,
    test: QuotientFn,
}

impl QuotientDescription {
    pub fn new<F>(arity: usize, class: ClassTag, test: F) -> Self
    where
        F: Fn(&ReDescription, &Substitution) -> SemiDecider + Send + Sync + 'static,
    {
        QuotientDescription {
            arity,
            class,
            test: Arc::new(test),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn class(&self) -> &ClassTag {
        &self.class
    }

    /// Accepts iff `f` extends to a surjection onto the candidate. `f` maps
    /// this description's generators to words over the candidate's.
    pub fn test(&self, candidate: &ReDescription, f: &Substitution) -> Result<SemiDecider> {
        check_arity(self.arity, f.source_arity())?;
        check_arity(candidate.arity(), f.target_arity())?;
        Ok((self.test)(candidate, f))
    }

    /// [`QuotientDescription::test`] with generators matched by index.
    pub fn test_same(&self, candidate: &ReDescription) -> Result<SemiDecider> {
        self.test(candidate, &Substitution::identity(self.arity))
    }
}

impl fmt::Debug for QuotientDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuotientDescription")
            .field("arity", &self.arity)
            .field("class", &self.class)
            .finish()
    }
}

type WpiFn = Arc<dyn Fn(&WpDescription, &Substitution) -> Decider + Send + Sync>;

#[derive(Clone)]
pub struct WpiQuotientDescription {
    arity: usize,
    class: ClassTag,
    decide: WpiFn,
}

impl WpiQuotientDescription {
    pub fn new<F>(arity: usize, class: ClassTag, decide: F) -> Self
    where
        F: Fn(&WpDescription, &Substitution) -> Decider + Send + Sync + 'static,
    {
        WpiQuotientDescription {
            arity,
            class,
            decide: Arc::new(decide),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn class(&self) -> &ClassTag {
        &self.class
    }

    pub fn decide(&self, candidate: &WpDescription, f: &Substitution) -> Result<Decider> {
        check_arity(self.arity, f.source_arity())?;
        check_arity(candidate.arity(), f.target_arity())?;
        Ok((self.decide)(candidate, f))
    }

    pub fn decide_same(&self, candidate: &WpDescription) -> Result<Decider> {
        self.decide(candidate, &Substitution::identity(self.arity))
    }
}

impl fmt::Debug for WpiQuotientDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WpiQuotientDescription")
            .field("arity", &self.arity)
            .field("class", &self.class)
            .finish()
    }
}

fn image(w: &Word, f: &Substitution) -> Word {
    substitute(w, f).expect("arities checked by the description")
}

/// Accepts iff every relator of `p` maps to the identity of the candidate.
pub fn fp_quotient(p: &FinitePresentation) -> QuotientDescription {
    let relators = p.relators().to_vec();
    QuotientDescription::new(p.arity(), ClassTag::All, move |candidate, f| {
        relator_check(&relators, candidate, f)
    })
}

fn relator_check(relators: &[Word], candidate: &ReDescription, f: &Substitution) -> SemiDecider {
    dovetail_and(
        relators
            .iter()
            .map(|r| candidate.accepts(&image(r, f)).expect("arities checked by the description"))
            .collect(),
    )
}

/// Asks the candidate's solver about every relator of `p`, in order.
pub fn fp_wpi_quotient(p: &FinitePresentation) -> WpiQuotientDescription {
    let relators = p.relators().to_vec();
    WpiQuotientDescription::new(p.arity(), ClassTag::All, move |candidate, f| {
        sequence_all(
            relators
                .iter()
                .map(|r| candidate.decide(&image(r, f)).expect("arities checked by the description"))
                .collect(),
        )
    })
}

/// Moves `q` from the generators `S` to new generators `T` of the same group.
///
/// `s_in_t` writes each old generator as a word in the new ones and
/// `t_in_s` the converse; they must be mutually inverse in the group. For
/// a candidate `H` and `f : T → H`, three semi-decisions are dovetailed:
/// the images `S' = f(s_in_t(S))` generate `H` (found by searching for
/// expressions of every generator of `H` in `S'`); `q` accepts `H` marked
/// by `S'`; and the induced map agrees with `f` on `T`.
pub fn change_marking(
    q: &QuotientDescription,
    s_in_t: &Substitution,
    t_in_s: &Substitution,
) -> Result<QuotientDescription> {
    check_arity(q.arity(), s_in_t.source_arity())?;
    check_arity(q.arity(), t_in_s.target_arity())?;
    check_arity(s_in_t.target_arity(), t_in_s.source_arity())?;
    let q = q.clone();
    let s_in_t = s_in_t.clone();
    let round_trip = t_in_s.then(&s_in_t)?;
    Ok(QuotientDescription::new(
        s_in_t.target_arity(),
        q.class().clone(),
        move |candidate, f| {
            let g = s_in_t.then(f).expect("arities checked at construction");
            let back = round_trip.then(f).expect("arities checked at construction");
            let fixes_t = dovetail_and(
                (0..f.source_arity())
                    .map(|j| {
                        let lhs = &back.images()[j];
                        let rhs = &f.images()[j];
                        candidate
                            .accepts(&lhs.mul(&rhs.inverse()).expect("same arity"))
                            .expect("same arity")
                    })
                    .collect(),
            );
            dovetail_and(vec![
                generates(candidate, &g),
                q.test(candidate, &g).expect("arities checked at construction"),
                fixes_t,
            ])
        },
    ))
}

/// Accepts once every generator of the candidate is found to be a word in
/// the images of `g`; tuples of expressions are searched in shortlex order.
fn generates(candidate: &ReDescription, g: &Substitution) -> SemiDecider {
    let k = candidate.arity();
    let domain = Enumerator::from_iter(WordTuples::new(g.source_arity(), k));
    let candidate = candidate.clone();
    let g = g.clone();
    search(
        move |exprs: &Vec<Word>| {
            dovetail_and(
                exprs
                    .iter()
                    .enumerate()
                    .map(|(j, u)| {
                        let target = Word::generator(k, j + 1).expect("index in range");
                        let w = image(u, &g).mul(&target.inverse()).expect("same arity");
                        candidate.accepts(&w).expect("same arity")
                    })
                    .collect(),
            )
        },
        domain,
    )
    .map(|_| ())
}

/// The finite quotient algorithm of `ℤ/2 ≀ ℤ` marked by `(a, b)`, relative
/// to finite candidates: find the order `N` of the image of `a`, then check
/// `b²`, `aᴺ` and `[b, a⁻ⁿbaⁿ]` for `1 ≤ n ≤ N`. On an infinite candidate
/// the order search runs forever.
pub fn lamplighter_finite_quotient() -> WpiQuotientDescription {
    WpiQuotientDescription::new(2, ClassTag::Finite, |candidate, f| {
        let pulled = candidate.pulled_back(f).expect("arities checked by the description");
        Decider::new(LamplighterCheck {
            first: pulled.decide(&a_power(1)).expect("arity 2"),
            candidate: pulled,
            phase: Phase::Order(1),
        })
    })
}

fn a_power(m: i64) -> Word {
    Word::generator(2, 1).expect("arity 2").pow(m)
}

enum Phase {
    Order(i64),
    Relators(Vec<Word>),
}

struct LamplighterCheck {
    candidate: WpDescription,
    phase: Phase,
    first: Decider,
}

impl LamplighterCheck {
    fn relators(n: i64) -> Vec<Word> {
        let a = Word::generator(2, 1).expect("arity 2");
        let b = Word::generator(2, 2).expect("arity 2");
        let mut out = vec![b.pow(2), a.pow(n)];
        for m in 1..=n {
            let conj = b.conjugate_by(&a.pow(m)).expect("same arity");
            out.push(Word::commutator(&b, &conj).expect("same arity"));
        }
        out.reverse();
        out
    }
}

impl Process for LamplighterCheck {
    type Output = bool;

    fn step(&mut self) -> Option<bool> {
        let answer = self.first.advance()?;
        match &mut self.phase {
            Phase::Order(m) => {
                if answer {
                    let mut rest = LamplighterCheck::relators(*m);
                    let next = rest.pop().expect("non-empty");
                    self.first = self.candidate.decide(&next).expect("arity 2");
                    self.phase = Phase::Relators(rest);
                } else {
                    *m += 1;
                    self.first = self.candidate.decide(&a_power(*m)).expect("arity 2");
                }
                None
            }
            Phase::Relators(rest) => {
                if !answer {
                    return Some(false);
                }
                match rest.pop() {
                    None => Some(true),
                    Some(next) => {
                        self.first = self.candidate.decide(&next).expect("arity 2");
                        None
                    }
                }
            }
        }
    }
}

/// Accepts iff every relator of the stream maps to the identity. On an
/// infinite stream it never accepts.
pub fn stream_quotient(rel: &crate::presentations::RelatorEnumerator) -> QuotientDescription {
    let rel = rel.clone();
    QuotientDescription::new(rel.arity(), ClassTag::All, move |candidate, f| {
        let candidate = candidate.clone();
        let f = f.clone();
        Computation::new(StreamAnd {
            stream: rel.start(),
            children: Vec::new(),
            cursor: 0,
            make: Box::new(move |r: &Word| candidate.accepts(&image(r, &f)).expect("arities checked")),
        })
    })
}

struct StreamAnd {
    stream: Enumerator<Word>,
    children: Vec<SemiDecider>,
    // 0 = the stream's turn, i >= 1 = child i - 1.
    cursor: usize,
    make: Box<dyn Fn(&Word) -> SemiDecider + Send>,
}

impl Process for StreamAnd {
    type Output = ();

    fn step(&mut self) -> Option<()> {
        if self.cursor > self.children.len() {
            self.cursor = 0;
        }
        if self.cursor == 0 {
            self.cursor = 1;
            if !self.stream.is_finished() {
                if let Some(r) = self.stream.step() {
                    self.children.push((self.make)(&r));
                }
                return None;
            }
            if self.children.is_empty() {
                return Some(());
            }
        }
        let i = self.cursor - 1;
        if self.children[i].advance().is_some() {
            self.children.remove(i);
        } else {
            self.cursor += 1;
        }
        (self.children.is_empty() && self.stream.is_finished()).then_some(())
    }
}
