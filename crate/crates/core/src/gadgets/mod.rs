//! Descriptions parametrized by a machine, whose group depends on whether
//! the machine halts. Each constructor interleaves one machine instruction
//! with the rest of its work.


use serde::{Deserialize, Serialize};

use crate::engine::{dovetail_or, machine_run, Emit, Enumerator, Instruction, Machine, MachineState, SemiDecider};
use crate::error::Result;
use crate::oracles::WpDescription;
use crate::presentations::{consequences, CoReDescription, FinitePresentation, RelatorEnumerator};
use crate::quotients::{ClassTag, QuotientDescription};
use crate::words::{substitute, Word};

/// A machine whose halting behavior is known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FleetMachine {
    pub name: String,
    pub machine: Machine,
    /// The step on which it halts, or `None` if it never does.
    pub halts_at: Option<u64>,
}

/// The fixed test fleet: immediate halt, halting on step `p` for
/// `p ∈ {1, 3, 5, 6, 17}`, a two-instruction loop and a loop whose
/// counter grows forever.
pub fn fleet() -> Vec<FleetMachine> {
    let mut out = vec![FleetMachine {
        name: "immediate".into(),
        machine: Machine::new(vec![Instruction::Halt]).expect("valid program"),
        halts_at: Some(1),
    }];
    for p in [1u64, 3, 5, 6, 17] {
        out.push(FleetMachine {
            name: format!("halt-{p}"),
            machine: Machine::halting_after(p as usize - 1),
            halts_at: Some(p),
        });
    }
    out.push(FleetMachine {
        name: "loop".into(),
        machine: Machine::infinite_loop(),
        halts_at: None,
    });
    out.push(FleetMachine {
        name: "counter".into(),
        machine: counter_loop(),
        halts_at: None,
    });
    out
}

/// Looks a fleet machine up by name.
pub fn fleet_machine(name: &str) -> Option<FleetMachine> {
    fleet().into_iter().find(|m| m.name == name)
}

/// Adds two to counter 1 on every pass; line 4 always jumps back since
/// counter 0 is zero there.
fn counter_loop() -> Machine {
    Machine::new(vec![
        Instruction::Inc(0),
        Instruction::Djz(0, 0),
        Instruction::Inc(1),
        Instruction::Inc(1),
        Instruction::Djz(0, 0),
    ])
    .expect("valid program")
}

fn a_power(k: i64) -> Word {
    Word::generator(1, 1).expect("arity 1").pow(k)
}

/// Emits `a²`, then runs `m` one instruction per step and emits `a` on the
/// halting step: `ℤ/2` if `m` never halts, the trivial group otherwise.
pub fn trivial_or_z2(m: &Machine) -> RelatorEnumerator {
    let m = m.clone();
    RelatorEnumerator::new(1, move || {
        Enumerator::new(TrivialOrZ2 {
            run: m.start(),
            started: false,
            done: false,
        })
    })
}

struct TrivialOrZ2 {
    run: MachineState,
    started: bool,
    done: bool,
}

impl Emit<Word> for TrivialOrZ2 {
    fn step(&mut self) -> Option<Word> {
        if !self.started {
            self.started = true;
            return Some(a_power(2));
        }
        if !self.done && self.run.tick() {
            self.done = true;
            return Some(a_power(1));
        }
        None
    }

    fn is_finished(&self) -> bool {
        self.done
    }
}

/// Enumerates the consequences of `g`, alternating with steps of `m`; if
/// `m` halts, emits `h_extra` and continues with the consequences of
/// `g ∪ h_extra`. Presents `g` if `m` never halts and the quotient by
/// `h_extra` otherwise.
pub fn quotient_pair(m: &Machine, g: &FinitePresentation, h_extra: &[Word]) -> Result<RelatorEnumerator> {
    let mut all = g.relators().to_vec();
    all.extend(h_extra.iter().cloned());
    let h = FinitePresentation::new(g.arity(), all)?;
    let m = m.clone();
    let g = g.clone();
    let extra = h_extra.to_vec();
    Ok(RelatorEnumerator::new(g.arity(), move || {
        Enumerator::new(QuotientPair {
            run: m.start(),
            stream: consequences(&g).enumerate(),
            machine_turn: false,
            pending: None,
            h: h.clone(),
            extra: extra.clone(),
        })
    }))
}

struct QuotientPair {
    run: MachineState,
    stream: Enumerator<Word>,
    machine_turn: bool,
    // Relators still to emit after the halt, in reverse.
    pending: Option<Vec<Word>>,
    h: FinitePresentation,
    extra: Vec<Word>,
}

impl Emit<Word> for QuotientPair {
    fn step(&mut self) -> Option<Word> {
        if let Some(pending) = &mut self.pending {
            if let Some(w) = pending.pop() {
                return Some(w);
            }
            return self.stream.step();
        }
        self.machine_turn = !self.machine_turn;
        if !self.machine_turn {
            return self.stream.step();
        }
        if self.run.tick() {
            let mut pending = std::mem::take(&mut self.extra);
            pending.reverse();
            self.pending = Some(pending);
            self.stream = consequences(&self.h).enumerate();
        }
        None
    }

    fn is_finished(&self) -> bool {
        false
    }
}

/// Non-identity words of the trivial group if `m` never halts, of `ℤ/2`
/// if it does: on `aᵏ` with `k ≠ 0`, runs `m` and then accepts iff `k` is
/// odd.
pub fn co_re_gadget(m: &Machine) -> CoReDescription {
    let m = m.clone();
    CoReDescription::new(1, move |w: &Word| {
        let k = w.exponent_sums()[0];
        if k % 2 == 0 {
            return SemiDecider::never();
        }
        machine_run(&m)
    })
}

/// Quotient algorithm of `ℤ/2` if `m` halts and of the trivial group
/// otherwise: accepts when the candidate kills `a`, or when `m` halts and
/// the candidate kills `a²`.
pub fn quotient_algo_gadget(m: &Machine) -> QuotientDescription {
    let m = m.clone();
    QuotientDescription::new(1, ClassTag::All, move |candidate, f| {
        let image = |k: i64| substitute(&a_power(k), f).expect("arity checked by the description");
        let kills_a = candidate.accepts(&image(1)).expect("arity checked");
        let kills_a2 = candidate.accepts(&image(2)).expect("arity checked");
        dovetail_or(vec![kills_a, machine_run(&m).and_then(move |_| kills_a2)])
    })
}

/// Word problem solver of `ℤ/p` if `m` halts on step `p`, of `ℤ` if it
/// never halts: on `aᵏ`, runs `m` for `|k|` steps and answers `p | k` if it
/// halted on step `p`, non-identity otherwise.
pub fn lockhart_wp_gadget(m: &Machine) -> WpDescription {
    let m = m.clone();
    WpDescription::new(1, move |w: &Word| {
        let k = w.exponent_sums()[0];
        let mut run = m.start();
        let mut left = k.unsigned_abs();
        crate::engine::Decider::from_fn(move || {
            if left == 0 {
                return Some(k == 0);
            }
            left -= 1;
            if run.tick() {
                return Some(k % run.steps() as i64 == 0);
            }
            (left == 0).then_some(false)
        })
    })
}

/// Copies `rel`, alternating with steps of `m` (the machine moves first);
/// if `m` halts, the relators emitted so far are frozen and the stream
/// continues with their consequences. Presents a finitely presented group
/// whenever `m` halts.
pub fn freeze_gadget(m: &Machine, rel: &RelatorEnumerator) -> RelatorEnumerator {
    let m = m.clone();
    let rel = rel.clone();
    RelatorEnumerator::new(rel.arity(), move || {
        Enumerator::new(Freeze {
            arity: rel.arity(),
            run: m.start(),
            stream: rel.start(),
            seen: Vec::new(),
            machine_turn: false,
            frozen: false,
        })
    })
}

struct Freeze {
    arity: usize,
    run: MachineState,
    stream: Enumerator<Word>,
    seen: Vec<Word>,
    machine_turn: bool,
    frozen: bool,
}

impl Emit<Word> for Freeze {
    fn step(&mut self) -> Option<Word> {
        if self.frozen {
            return self.stream.step();
        }
        self.machine_turn = !self.machine_turn;
        if self.machine_turn && !self.run.halted() {
            if self.run.tick() {
                let p = FinitePresentation::new(self.arity, std::mem::take(&mut self.seen)).expect("same arity");
                self.stream = consequences(&p).enumerate();
                self.frozen = true;
            }
            return None;
        }
        let w = self.stream.step()?;
        self.seen.push(w.clone());
        Some(w)
    }

    fn is_finished(&self) -> bool {
        self.stream.is_finished()
    }
}
