use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

/// Normal form in `ℤ/2 ≀ ℤ`: a cursor position and the set of lit lamps.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LamplighterElement {
    pub shift: i64,
    pub support: BTreeSet<i64>,
}

impl LamplighterElement {
    pub fn identity() -> Self {
        LamplighterElement::default()
    }

    /// Letter `±1` moves the cursor, letter `±2` toggles the lamp under it.
    pub fn apply(&mut self, letter: i32) {
        match letter {
            1 => self.shift += 1,
            -1 => self.shift -= 1,
            _ => {
                if !self.support.remove(&self.shift) {
                    self.support.insert(self.shift);
                }
            }
        }
    }

    pub fn mul(&self, other: &LamplighterElement) -> LamplighterElement {
        let mut support = self.support.clone();
        for &p in &other.support {
            let p = p + self.shift;
            if !support.remove(&p) {
                support.insert(p);
            }
        }
        LamplighterElement {
            shift: self.shift + other.shift,
            support,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.support.is_empty()
    }
}
