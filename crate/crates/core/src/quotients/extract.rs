use crate::engine::{Computation, Emit, Enumerator, Process, SemiDecider};
use crate::error::Result;
use crate::presentations::{consequences, variety_consequences, FinitePresentation, Law, RelatorEnumerator};
use crate::words::{check_arity, Substitution, Word};

use super::QuotientDescription;

/// Finds a finite presentation of a finitely presented group given by an
/// infinite presentation `rel` and a quotient algorithm `q` for it.
///
/// Dovetails over the prefixes `r₁ … r_k` of `rel` (from `k = 0`), asking
/// `q` whether the group they present is a quotient; returns the first
/// prefix accepted. Each prefix joins the round-robin only after the
/// previous one has run for [`HEAD_START`] rounds. Runs forever when the
/// group is not finitely presented.
pub fn extract_presentation(
    rel: &RelatorEnumerator,
    q: &QuotientDescription,
) -> Result<Computation<FinitePresentation>> {
    extract(rel, q, |p| consequences(p))
}

/// [`extract_presentation`] inside the variety defined by `laws`: prefixes
/// are read as presentations relative to the variety. The returned
/// presentation lists the prefix only; the laws hold alongside it.
pub fn extract_in_variety(
    rel: &RelatorEnumerator,
    q: &QuotientDescription,
    laws: &[Law],
) -> Result<Computation<FinitePresentation>> {
    let laws = laws.to_vec();
    extract(rel, q, move |p| variety_consequences(p, &laws))
}

fn extract<F>(rel: &RelatorEnumerator, q: &QuotientDescription, describe: F) -> Result<Computation<FinitePresentation>>
where
    F: Fn(&FinitePresentation) -> crate::presentations::ReDescription + Send + 'static,
{
    let arity = q.arity();
    check_arity(arity, rel.arity())?;
    let q = q.clone();
    let identity = Substitution::identity(arity);
    let domain = Enumerator::new(Prefixes {
        stream: rel.start(),
        current: Vec::new(),
        started: false,
    });
    let family = move |prefix: &Vec<Word>| {
        let p = FinitePresentation::new(arity, prefix.clone()).expect("relators share the arity");
        q.test(&describe(&p), &identity).expect("arities checked")
    };
    Ok(Computation::new(Truncations {
        domain,
        family: Box::new(family),
        children: Vec::new(),
        position: 0,
        round: 0,
        next_start: 0,
    })
    .map(move |prefix| FinitePresentation::new(arity, prefix).expect("relators share the arity")))
}

/// Rounds a prefix runs alone before the next, longer one is started.
pub const HEAD_START: u64 = 64;

struct Truncations {
    domain: Enumerator<Vec<Word>>,
    family: Box<dyn Fn(&Vec<Word>) -> SemiDecider + Send>,
    children: Vec<(Vec<Word>, SemiDecider)>,
    // 0 = the domain's turn, i >= 1 = child i - 1.
    position: usize,
    round: u64,
    next_start: u64,
}

impl Process for Truncations {
    type Output = Vec<Word>;

    fn step(&mut self) -> Option<Vec<Word>> {
        if self.children.is_empty() && self.domain.is_finished() {
            return None;
        }
        loop {
            if self.position == 0 {
                self.position = 1;
                if !self.domain.is_finished() && self.round >= self.next_start {
                    if let Some(prefix) = self.domain.step() {
                        let child = (self.family)(&prefix);
                        self.children.push((prefix, child));
                        self.next_start = self.round + HEAD_START;
                    }
                    return None;
                }
            }
            let i = self.position - 1;
            if i >= self.children.len() {
                self.position = 0;
                self.round += 1;
                continue;
            }
            self.position += 1;
            if self.children[i].1.advance().is_some() {
                return Some(self.children.swap_remove(i).0);
            }
            return None;
        }
    }
}

/// The prefixes of a relator stream, starting with the empty one.
struct Prefixes {
    stream: Enumerator<Word>,
    current: Vec<Word>,
    started: bool,
}

impl Emit<Vec<Word>> for Prefixes {
    fn step(&mut self) -> Option<Vec<Word>> {
        if !self.started {
            self.started = true;
            return Some(Vec::new());
        }
        let w = self.stream.step()?;
        self.current.push(w);
        Some(self.current.clone())
    }

    fn is_finished(&self) -> bool {
        self.started && self.stream.is_finished()
    }
}
