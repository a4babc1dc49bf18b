//! Word problem solvers for concrete groups, and finite group machinery.
//!
//! Every solver here is a [`WpDescription`]: a decider per query word that
//! reads one letter per step and answers on the step reading the last letter
//! (the empty word is answered on step 1).

mod abelian;
mod lamplighter;
mod perm;
mod table;

#[cfg(test)]
mod tests;

use std::fmt;
use std::sync::Arc;

use crate::engine::{Budget, Decider, Outcome, SemiDecider};
use crate::error::{Error, Result};
use crate::presentations::{CoReDescription, ReDescription};
use crate::words::{check_arity, substitute, Substitution, Word};

use abelian::Lattice;

pub use lamplighter::LamplighterElement;
pub use perm::{a5_generators, sigma_witness, Permutation};
pub use table::{check_law, enumerate_finite_groups, enumerate_markings, CayleyTable, Marking, MAX_ORDER};

type Oracle = Arc<dyn Fn(&Word) -> Decider + Send + Sync>;

/// A word problem solver: a decider answering `w = 1`.
#[derive(Clone)]
pub struct WpDescription {
    arity: usize,
    oracle: Oracle,
}

impl WpDescription {
    pub fn new<F>(arity: usize, oracle: F) -> Self
    where
        F: Fn(&Word) -> Decider + Send + Sync + 'static,
    {
        WpDescription {
            arity,
            oracle: Arc::new(oracle),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Decider answering whether `w = 1`.
    pub fn decide(&self, w: &Word) -> Result<Decider> {
        check_arity(self.arity, w.arity())?;
        Ok((self.oracle)(w))
    }

    pub fn run(&self, w: &Word, budget: Budget) -> Result<Outcome<bool>> {
        self.decide(w)?.run(budget)
    }

    /// Description over the source generators of `s`.
    pub fn pulled_back(&self, s: &Substitution) -> Result<WpDescription> {
        check_arity(self.arity, s.target_arity())?;
        let this = self.clone();
        let s = s.clone();
        Ok(WpDescription::new(s.source_arity(), move |v: &Word| {
            (this.oracle)(&substitute(v, &s).expect("arity checked at construction"))
        }))
    }

    /// The identity words, as a semi-decider that idles on a "no".
    pub fn re_view(&self) -> ReDescription {
        let oracle = self.oracle.clone();
        ReDescription::new(self.arity, move |w: &Word| yes_or_idle(oracle(w), true))
    }

    /// The non-identity words, as a semi-decider that idles on a "yes".
    pub fn co_re_view(&self) -> CoReDescription {
        let oracle = self.oracle.clone();
        CoReDescription::new(self.arity, move |w: &Word| yes_or_idle(oracle(w), false))
    }
}

fn yes_or_idle(mut d: Decider, wanted: bool) -> SemiDecider {
    let mut answer = None;
    SemiDecider::from_fn(move || {
        if answer.is_none() {
            answer = d.step().expect("stepped until its answer");
        }
        (answer == Some(wanted)).then_some(())
    })
}

impl fmt::Debug for WpDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WpDescription").field("arity", &self.arity).finish()
    }
}

/// A decider folding `apply` over the letters of `w`, one letter per step,
/// then answering `test` of the final state.
fn fold_decider<S, A, T>(w: &Word, mut state: S, mut apply: A, test: T) -> Decider
where
    S: Send + 'static,
    A: FnMut(&mut S, i32) + Send + 'static,
    T: Fn(&S) -> bool + Send + 'static,
{
    let letters = w.letters().to_vec();
    let mut pos = 0;
    Decider::from_fn(move || {
        if let Some(&l) = letters.get(pos) {
            apply(&mut state, l);
        }
        pos += 1;
        (pos >= letters.len()).then(|| test(&state))
    })
}

/// `ℤ/n` marked by a generator; `n = 0` means `ℤ`.
pub fn cyclic_wp(n: u64) -> WpDescription {
    WpDescription::new(1, move |w: &Word| {
        fold_decider(
            w,
            0i64,
            |s, l| *s += i64::from(l.signum()),
            move |&s| if n == 0 { s == 0 } else { s.rem_euclid(n as i64) == 0 },
        )
    })
}

/// `ℤᵏ` modulo the row span of `relations`: `w = 1` iff its exponent sums
/// lie in that span.
pub fn abelian_wp(arity: usize, relations: &[Vec<i64>]) -> Result<WpDescription> {
    if arity == 0 {
        return Err(Error::input("arity must be positive"));
    }
    let lattice = Arc::new(Lattice::new(arity, relations)?);
    Ok(WpDescription::new(arity, move |w: &Word| {
        let lattice = lattice.clone();
        fold_decider(
            w,
            vec![0i64; lattice.columns()],
            |s, l| s[l.unsigned_abs() as usize - 1] += i64::from(l.signum()),
            move |s| lattice.contains(s),
        )
    }))
}

/// Evaluation in a marked finite group.
pub fn finite_wp(m: &Marking) -> WpDescription {
    let m = m.clone();
    WpDescription::new(m.arity(), move |w: &Word| {
        let m = m.clone();
        fold_decider(
            w,
            0usize,
            move |x, l| *x = m.table().mul(*x, m.table().letter_value(l, m.tuple())),
            |&x| x == 0,
        )
    })
}

/// Evaluation in the permutation group generated by `gens`.
pub fn perm_wp(gens: &[Permutation]) -> Result<WpDescription> {
    let degree = match gens.first() {
        None => return Err(Error::input("at least one generator is needed")),
        Some(g) => g.degree(),
    };
    if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
        return Err(Error::input(format!(
            "degree mismatch: {} and {}",
            degree,
            g.degree()
        )));
    }
    let gens: Arc<Vec<(Permutation, Permutation)>> =
        Arc::new(gens.iter().map(|g| (g.clone(), g.inverse())).collect());
    Ok(WpDescription::new(gens.len(), move |w: &Word| {
        let gens = gens.clone();
        fold_decider(
            w,
            Permutation::identity(degree),
            move |p, l| {
                let (g, g_inv) = &gens[l.unsigned_abs() as usize - 1];
                *p = p.then(if l > 0 { g } else { g_inv }).expect("same degree");
            },
            Permutation::is_identity,
        )
    }))
}

/// `ℤ/2 ≀ ℤ` marked by the shift `a` and the lamp `b` at the origin.
pub fn lamplighter_wp() -> WpDescription {
    WpDescription::new(2, |w: &Word| {
        fold_decider(
            w,
            LamplighterElement::identity(),
            LamplighterElement::apply,
            LamplighterElement::is_identity,
        )
    })
}
