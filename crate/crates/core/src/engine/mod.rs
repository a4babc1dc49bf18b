//! Resumable, deterministic, step-budgeted computations.
//!
//! Every description in this crate is ultimately a [`Computation`]: a value
//! that advances by one smallest state transition per [`Computation::step`]
//! and may reach a terminal value. Semi-deciders terminate with `()`,
//! deciders with a `bool`, races with the index of the winner. Enumerators
//! never terminate and instead emit items along the way.
//!
//! Combinators schedule their children cooperatively: one combinator step
//! delegates exactly one step to one child, so step budgets compose. There
//! is no wall clock anywhere.

mod combinators;
mod machine;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use combinators::{
    dovetail_and, dovetail_or, race, search, semidecider_to_enumerator, sequence_all, Search,
};
pub use machine::{machine_run, Instruction, Machine, MachineState};

/// One resumable process. `step` returns `Some` exactly once, on the step
/// that reaches the terminal value; callers never step it again.
pub trait Process: Send {
    type Output;
    fn step(&mut self) -> Option<Self::Output>;
}

/// One resumable stream. `step` returns `Some(item)` on steps that emit.
pub trait Emit<T>: Send {
    fn step(&mut self) -> Option<T>;

    /// True once the stream will never emit again.
    fn is_finished(&self) -> bool {
        false
    }
}

/// Maximum number of steps a run may consume.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Budget {
    pub max_steps: u64,
}

impl Budget {
    pub const fn new(max_steps: u64) -> Self {
        Budget { max_steps }
    }
}

/// Result of running a computation under a budget. `steps` is the total
/// number of steps the computation has taken so far.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome<O> {
    Done { value: O, steps: u64 },
    Exhausted { steps: u64 },
}

impl<O> Outcome<O> {
    pub fn steps(&self) -> u64 {
        match self {
            Outcome::Done { steps, .. } | Outcome::Exhausted { steps } => *steps,
        }
    }

    pub fn value(&self) -> Option<&O> {
        match self {
            Outcome::Done { value, .. } => Some(value),
            Outcome::Exhausted { .. } => None,
        }
    }

    pub fn into_value(self) -> Option<O> {
        match self {
            Outcome::Done { value, .. } => Some(value),
            Outcome::Exhausted { .. } => None,
        }
    }

    pub fn is_done(&self) -> bool {
        matches!(self, Outcome::Done { .. })
    }
}

/// A boxed process together with its step counter and terminal latch.
pub struct Computation<O> {
    inner: Box<dyn Process<Output = O>>,
    steps: u64,
    finished: bool,
}

/// Accepts or runs forever.
pub type SemiDecider = Computation<()>;
/// Answers yes or no.
pub type Decider = Computation<bool>;
/// Reports the index of the first child to accept.
pub type Selector = Computation<usize>;

impl<O: Send + 'static> Computation<O> {
    pub fn new<P: Process<Output = O> + 'static>(process: P) -> Self {
        Computation {
            inner: Box::new(process),
            steps: 0,
            finished: false,
        }
    }

    /// Wraps a closure as a process; it is called once per step.
    pub fn from_fn<F>(f: F) -> Self
    where
        F: FnMut() -> Option<O> + Send + 'static,
    {
        Computation::new(FnProcess(f))
    }

    /// Terminates on its first step with `value`.
    pub fn immediate(value: O) -> Self {
        let mut slot = Some(value);
        Computation::from_fn(move || slot.take())
    }

    /// Never terminates.
    pub fn never() -> Self {
        Computation::from_fn(|| None)
    }

    pub fn steps_taken(&self) -> u64 {
        self.steps
    }

    pub fn is_finished(&self) -> bool {
        self.finished
    }

    /// Advances one step. Stepping a finished computation is an error.
    pub fn step(&mut self) -> Result<Option<O>> {
        if self.finished {
            return Err(Error::Terminal);
        }
        Ok(self.advance())
    }

    pub(crate) fn advance(&mut self) -> Option<O> {
        debug_assert!(!self.finished);
        self.steps += 1;
        let out = self.inner.step();
        if out.is_some() {
            self.finished = true;
        }
        out
    }

    /// Steps at most `budget.max_steps` times, stopping at a terminal value.
    pub fn run(&mut self, budget: Budget) -> Result<Outcome<O>> {
        if self.finished {
            return Err(Error::Terminal);
        }
        for _ in 0..budget.max_steps {
            if let Some(value) = self.advance() {
                return Ok(Outcome::Done {
                    value,
                    steps: self.steps,
                });
            }
        }
        Ok(Outcome::Exhausted { steps: self.steps })
    }

    pub fn map<P: Send + 'static>(self, f: impl FnMut(O) -> P + Send + 'static) -> Computation<P> {
        Computation::new(Map { inner: self, f })
    }

    /// Runs `self`, then the computation built from its value. The
    /// continuation's steps are charged to the combined computation.
    pub fn and_then<P: Send + 'static>(
        self,
        f: impl FnOnce(O) -> Computation<P> + Send + 'static,
    ) -> Computation<P> {
        Computation::new(AndThen::First(self, Some(Box::new(f))))
    }
}

impl<O> fmt::Debug for Computation<O> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Computation")
            .field("steps", &self.steps)
            .field("finished", &self.finished)
            .finish()
    }
}

impl<O: Send + 'static> Process for Computation<O> {
    type Output = O;

    fn step(&mut self) -> Option<O> {
        self.advance()
    }
}

struct FnProcess<F>(F);

impl<O, F: FnMut() -> Option<O> + Send> Process for FnProcess<F> {
    type Output = O;

    fn step(&mut self) -> Option<O> {
        (self.0)()
    }
}

struct Map<O, F> {
    inner: Computation<O>,
    f: F,
}

impl<O: Send + 'static, P, F: FnMut(O) -> P + Send> Process for Map<O, F> {
    type Output = P;

    fn step(&mut self) -> Option<P> {
        self.inner.advance().map(&mut self.f)
    }
}

type Continuation<O, P> = Box<dyn FnOnce(O) -> Computation<P> + Send>;

enum AndThen<O, P> {
    First(Computation<O>, Option<Continuation<O, P>>),
    Second(Computation<P>),
}

impl<O: Send + 'static, P: Send + 'static> Process for AndThen<O, P> {
    type Output = P;

    fn step(&mut self) -> Option<P> {
        match self {
            AndThen::First(first, k) => {
                if let Some(v) = first.advance() {
                    let next = (k.take().expect("continuation used once"))(v);
                    *self = AndThen::Second(next);
                }
                None
            }
            AndThen::Second(second) => second.advance(),
        }
    }
}

/// A boxed stream with its step counter.
pub struct Enumerator<T> {
    inner: Box<dyn Emit<T>>,
    steps: u64,
}

impl<T: Send + 'static> Enumerator<T> {
    pub fn new<E: Emit<T> + 'static>(stream: E) -> Self {
        Enumerator {
            inner: Box::new(stream),
            steps: 0,
        }
    }

    /// Emits one iterator item per step until the iterator ends.
    pub fn from_iter<I>(iter: I) -> Self
    where
        I: Iterator<Item = T> + Send + 'static,
    {
        Enumerator::new(IterStream {
            iter,
            finished: false,
        })
    }

    pub fn steps_taken(&self) -> u64 {
        self.steps
    }

    pub fn is_finished(&self) -> bool {
        self.inner.is_finished()
    }

    pub fn step(&mut self) -> Option<T> {
        self.steps += 1;
        self.inner.step()
    }

    /// Items emitted within `budget` steps.
    pub fn run(&mut self, budget: Budget) -> Vec<T> {
        let mut out = Vec::new();
        for _ in 0..budget.max_steps {
            if self.is_finished() {
                break;
            }
            out.extend(self.step());
        }
        out
    }

    /// Steps until `count` items have been emitted or the budget runs out.
    pub fn take(&mut self, count: usize, budget: Budget) -> Vec<T> {
        let mut out = Vec::new();
        for _ in 0..budget.max_steps {
            if out.len() >= count || self.is_finished() {
                break;
            }
            out.extend(self.step());
        }
        out
    }
}

impl<T: Send + 'static> Emit<T> for Enumerator<T> {
    fn step(&mut self) -> Option<T> {
        Enumerator::step(self)
    }

    fn is_finished(&self) -> bool {
        self.inner.is_finished()
    }
}

impl<T> fmt::Debug for Enumerator<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Enumerator").field("steps", &self.steps).finish()
    }
}

struct IterStream<I> {
    iter: I,
    finished: bool,
}

impl<T, I: Iterator<Item = T> + Send> Emit<T> for IterStream<I> {
    fn step(&mut self) -> Option<T> {
        if self.finished {
            return None;
        }
        let next = self.iter.next();
        if next.is_none() {
            self.finished = true;
        }
        next
    }

    fn is_finished(&self) -> bool {
        self.finished
    }
}
