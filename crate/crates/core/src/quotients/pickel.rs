use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::engine::{Computation, Decider, Enumerator, Process};
use crate::error::{Error, Result};
use crate::oracles::{enumerate_finite_groups, enumerate_markings, finite_wp, CayleyTable, Marking};
use crate::words::Substitution;

use super::WpiQuotientDescription;

/// Which of the two groups maps onto the separating finite group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    First,
    Second,
}

/// A finite group that is a marked quotient of exactly one of two groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub table: CayleyTable,
    /// The generating tuple realizing the quotient.
    pub marking: Vec<usize>,
    pub side: Side,
}

/// Semi-decides that two groups with the same number of generators have
/// different sets of finite quotients, given finite quotient algorithms
/// for both. Finite groups are tried by increasing order up to `max_order`;
/// if none separates, the computation idles forever.
pub fn pickel_separator(
    first: &WpiQuotientDescription,
    second: &WpiQuotientDescription,
    max_order: usize,
) -> Result<Computation<Separation>> {
    let k = first.arity();
    if k != second.arity() {
        return Err(Error::ArityMismatch {
            expected: k,
            found: second.arity(),
        });
    }
    Ok(Computation::new(Pickel {
        quotients: [first.clone(), second.clone()],
        tables: enumerate_finite_groups(max_order),
        current: None,
    }))
}

struct Pickel {
    quotients: [WpiQuotientDescription; 2],
    tables: Enumerator<CayleyTable>,
    current: Option<Probe>,
}

/// The existential search over markings of one table, for one side and then
/// the other.
struct Probe {
    table: Arc<CayleyTable>,
    side: usize,
    found: [Option<Vec<usize>>; 2],
    markings: Enumerator<Marking>,
    running: Option<(Vec<usize>, Decider)>,
}

impl Pickel {
    fn verdict(probe: &mut Probe) -> Option<Separation> {
        let table = (*probe.table).clone();
        match (probe.found[0].take(), probe.found[1].take()) {
            (Some(marking), None) => Some(Separation {
                table,
                marking,
                side: Side::First,
            }),
            (None, Some(marking)) => Some(Separation {
                table,
                marking,
                side: Side::Second,
            }),
            _ => None,
        }
    }
}

impl Process for Pickel {
    type Output = Separation;

    fn step(&mut self) -> Option<Separation> {
        let k = self.quotients[0].arity();
        let Some(probe) = &mut self.current else {
            if let Some(t) = self.tables.step() {
                let table = Arc::new(t);
                self.current = Some(Probe {
                    markings: enumerate_markings(table.clone(), k),
                    table,
                    side: 0,
                    found: [None, None],
                    running: None,
                });
            }
            return None;
        };
        if let Some((tuple, decider)) = &mut probe.running {
            match decider.advance() {
                None => return None,
                Some(true) => {
                    probe.found[probe.side] = Some(std::mem::take(tuple));
                    probe.running = None;
                }
                Some(false) => {
                    probe.running = None;
                    return None;
                }
            }
        } else {
            match probe.markings.step() {
                Some(m) => {
                    let decider = self.quotients[probe.side]
                        .decide(&finite_wp(&m), &Substitution::identity(k))
                        .expect("arities match");
                    probe.running = Some((m.tuple().to_vec(), decider));
                    return None;
                }
                None if !probe.markings.is_finished() => return None,
                None => {}
            }
        }
        // This side is settled: either a marking was found or none exists.
        if probe.side == 0 {
            probe.side = 1;
            probe.markings = enumerate_markings(probe.table.clone(), k);
            return None;
        }
        let out = Pickel::verdict(probe);
        self.current = None;
        out
    }
}
