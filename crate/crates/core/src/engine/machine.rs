//! Two-counter machines.
//!
//! Text format, one instruction per line (0-based line numbers):
//!
//! ```text
//! inc 0|1
//! djz 0|1 <line>
//! halt
//! ```
//!
//! `djz c t` jumps to `t` when counter `c` is zero and otherwise decrements
//! it and falls through. Falling off the end of the program halts.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Process, SemiDecider};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Instruction {
    Inc(u8),
    Djz(u8, usize),
    Halt,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Machine {
    program: Vec<Instruction>,
}

impl Machine {
    pub fn new(program: Vec<Instruction>) -> Result<Self> {
        for (line, ins) in program.iter().enumerate() {
            match *ins {
                Instruction::Inc(c) | Instruction::Djz(c, _) if c > 1 => {
                    return Err(Error::input(format!("line {line}: counter {c} does not exist")));
                }
                Instruction::Djz(_, t) if t >= program.len() => {
                    return Err(Error::input(format!("line {line}: jump target {t} out of range")));
                }
                _ => {}
            }
        }
        Ok(Machine { program })
    }

    pub fn program(&self) -> &[Instruction] {
        &self.program
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut program = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let trimmed = line.trim();
            if !trimmed.is_empty() {
                let position = offset + (line.len() - line.trim_start().len());
                program.push(parse_instruction(trimmed, position)?);
            }
            offset += line.len();
        }
        Machine::new(program)
    }

    pub fn start(&self) -> MachineState {
        MachineState {
            machine: self.clone(),
            pc: 0,
            counters: [0, 0],
            steps: 0,
            halted: false,
        }
    }

    /// `count` increments of counter 0 followed by `halt`: halts on step `count + 1`.
    pub fn halting_after(count: usize) -> Self {
        let mut program = vec![Instruction::Inc(0); count];
        program.push(Instruction::Halt);
        Machine { program }
    }

    /// `inc 0; djz 1 0`: counter 1 stays zero, so the jump is always taken.
    pub fn infinite_loop() -> Self {
        Machine {
            program: vec![Instruction::Inc(0), Instruction::Djz(1, 0)],
        }
    }
}

fn parse_instruction(text: &str, position: usize) -> Result<Instruction> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    let counter = |s: &str| -> Result<u8> {
        match s {
            "0" => Ok(0),
            "1" => Ok(1),
            _ => Err(Error::syntax(position, format!("bad counter '{s}'"))),
        }
    };
    match parts.as_slice() {
        ["halt"] => Ok(Instruction::Halt),
        ["inc", c] => Ok(Instruction::Inc(counter(c)?)),
        ["djz", c, t] => {
            let target = t
                .parse()
                .map_err(|_| Error::syntax(position, format!("bad jump target '{t}'")))?;
            Ok(Instruction::Djz(counter(c)?, target))
        }
        _ => Err(Error::syntax(position, format!("unknown instruction '{text}'"))),
    }
}

impl fmt::Display for Machine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ins in &self.program {
            match ins {
                Instruction::Inc(c) => writeln!(f, "inc {c}")?,
                Instruction::Djz(c, t) => writeln!(f, "djz {c} {t}")?,
                Instruction::Halt => writeln!(f, "halt")?,
            }
        }
        Ok(())
    }
}

/// A running machine. One step executes one instruction.
#[derive(Clone, Debug)]
pub struct MachineState {
    machine: Machine,
    pc: usize,
    counters: [u64; 2],
    steps: u64,
    halted: bool,
}

impl MachineState {
    pub fn halted(&self) -> bool {
        self.halted
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn counters(&self) -> [u64; 2] {
        self.counters
    }

    /// Executes one instruction; returns true on the step that halts.
    pub fn tick(&mut self) -> bool {
        if self.halted {
            return false;
        }
        self.steps += 1;
        match self.machine.program.get(self.pc) {
            None | Some(Instruction::Halt) => {
                self.halted = true;
                return true;
            }
            Some(&Instruction::Inc(c)) => {
                self.counters[c as usize] += 1;
                self.pc += 1;
            }
            Some(&Instruction::Djz(c, t)) => {
                let slot = &mut self.counters[c as usize];
                if *slot == 0 {
                    self.pc = t;
                } else {
                    *slot -= 1;
                    self.pc += 1;
                }
            }
        }
        false
    }

    /// Runs up to `limit` more instructions; returns the halting step if it halted.
    pub fn run_for(&mut self, limit: u64) -> Option<u64> {
        for _ in 0..limit {
            if self.tick() {
                return Some(self.steps);
            }
        }
        self.halted.then_some(self.steps)
    }
}

impl Process for MachineState {
    type Output = ();

    fn step(&mut self) -> Option<()> {
        self.tick().then_some(())
    }
}

/// Accepts exactly when `m` halts; one step per instruction.
pub fn machine_run(m: &Machine) -> SemiDecider {
    SemiDecider::new(m.start())
}
