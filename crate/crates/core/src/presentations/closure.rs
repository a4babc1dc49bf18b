//! Semi-decision of membership in the normal closure of a relator stream.
//!
//! Words are handled as cyclic words: `w` lies in the normal closure `N`
//! exactly when any cyclic conjugate does. A move picks a cyclic subword
//! `p` of the current word and a cyclic rotation `ρ = p·q` of a relator or
//! its inverse, and replaces `p` by `q⁻¹`. Since `p·y = ρ·(q⁻¹·y)`, a move
//! never changes membership in `N`, so reaching the empty word proves
//! `w ∈ N`. Conversely a van Kampen diagram for `w` always has a cell
//! sharing an arc with its boundary, and removing it is one move, so a
//! breadth-first search over the moves reaches the empty word once enough
//! relators are in play and intermediate words may be long enough.
//!
//! Stage `m` uses the first `m` relators of the stream and words of length
//! at most `|w| + 2m`; each stage is a finite breadth-first search and the
//! stages grow without bound, which makes the search complete in the limit.
//! Letters are stored as shortlex keys (`letter_key`), so inversion is `k ^ 1`.

use std::collections::{HashSet, VecDeque};

use rustc_hash::FxHashSet;

use crate::engine::{Enumerator, Process};
use crate::words::{letter_key, Word};

type Key = u8;

fn keys_of(w: &Word) -> Vec<Key> {
    w.letters().iter().map(|&l| letter_key(l) as Key).collect()
}

fn inverse(keys: &[Key]) -> Vec<Key> {
    keys.iter().rev().map(|k| k ^ 1).collect()
}

/// Cyclically reduces `keys` and rotates it to its least rotation.
pub(crate) fn canonical_cyclic(keys: &[Key]) -> Vec<Key> {
    let mut reduced = Vec::with_capacity(keys.len());
    let (i, j) = cyclic_reduce_into(keys, &mut reduced);
    least_rotation(&reduced[i..j])
}

// Freely reduces into `out` and returns the bounds of the cyclic core.
fn cyclic_reduce_into(keys: &[Key], out: &mut Vec<Key>) -> (usize, usize) {
    out.clear();
    for &k in keys {
        if out.last() == Some(&(k ^ 1)) {
            out.pop();
        } else {
            out.push(k);
        }
    }
    let (mut i, mut j) = (0, out.len());
    while j - i >= 2 && out[i] == out[j - 1] ^ 1 {
        i += 1;
        j -= 1;
    }
    (i, j)
}

fn least_rotation(keys: &[Key]) -> Vec<Key> {
    let n = keys.len();
    let (mut i, mut j, mut k) = (0, 1, 0);
    while i < n && j < n && k < n {
        let (a, b) = (keys[(i + k) % n], keys[(j + k) % n]);
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    let start = i.min(j);
    (0..n).map(|t| keys[(start + t) % n]).collect()
}

// Smallest rotation amount mapping the cyclic word to itself.
fn cyclic_period(keys: &[Key]) -> usize {
    let n = keys.len();
    let mut fail = vec![0usize; n + 1];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && keys[i] != keys[k] {
            k = fail[k];
        }
        if keys[i] == keys[k] {
            k += 1;
        }
        fail[i + 1] = k;
    }
    let p = n - fail[n];
    if n % p == 0 {
        p
    } else {
        n
    }
}

/// Replacement rules `p -> q⁻¹`, stored in a trie keyed by `p`.
struct Rules {
    width: usize,
    // children[node * width + key], 0 = absent (the root is never a child).
    children: Vec<u32>,
    // replacements ending at each node, sorted by length.
    outputs: Vec<Vec<Vec<Key>>>,
}

impl Rules {
    fn new(arity: usize) -> Self {
        let width = 2 * arity;
        Rules {
            width,
            children: vec![0; width],
            outputs: vec![Vec::new()],
        }
    }

    fn insert(&mut self, p: &[Key], replacement: Vec<Key>) {
        let mut node = 0usize;
        for &k in p {
            let slot = node * self.width + k as usize;
            if self.children[slot] == 0 {
                let fresh = self.outputs.len();
                self.outputs.push(Vec::new());
                self.children.extend(std::iter::repeat(0).take(self.width));
                self.children[slot] = fresh as u32;
            }
            node = self.children[slot] as usize;
        }
        let out = &mut self.outputs[node];
        let at = out.partition_point(|u| u.len() <= replacement.len());
        out.insert(at, replacement);
    }

    fn add_relator(&mut self, relator: &[Key]) {
        for base in [relator.to_vec(), inverse(relator)] {
            let n = base.len();
            for start in 0..cyclic_period(&base) {
                let rho: Vec<Key> = (0..n).map(|i| base[(start + i) % n]).collect();
                for k in 1..=n {
                    self.insert(&rho[..k], inverse(&rho[k..]));
                }
            }
        }
    }
}

pub(crate) struct ClosureSearch {
    stream: Enumerator<Word>,
    pull_turn: bool,
    relators: Vec<Vec<Key>>,
    known: HashSet<Vec<Key>>,
    rules: Rules,
    active: usize,
    target: Vec<Key>,
    stage: usize,
    cap: usize,
    pruned: bool,
    frontier: VecDeque<Vec<Key>>,
    visited: FxHashSet<Vec<Key>>,
    settled: bool,
}

impl ClosureSearch {
    pub(crate) fn new(target: &Word, stream: Enumerator<Word>) -> Self {
        ClosureSearch {
            stream,
            pull_turn: true,
            relators: Vec::new(),
            known: HashSet::new(),
            rules: Rules::new(target.arity()),
            active: 0,
            target: canonical_cyclic(&keys_of(target)),
            stage: 0,
            cap: 0,
            pruned: true,
            frontier: VecDeque::new(),
            visited: FxHashSet::default(),
            settled: false,
        }
    }

    fn pull(&mut self) {
        if let Some(w) = self.stream.step() {
            let r = canonical_cyclic(&keys_of(&w));
            if !r.is_empty() && !self.known.contains(&r) {
                self.known.insert(canonical_cyclic(&inverse(&r)));
                self.known.insert(r.clone());
                self.relators.push(r);
            }
        }
    }

    fn next_stage(&mut self) {
        let stream_done = self.stream.is_finished();
        if !self.pruned && stream_done && self.active == self.relators.len() {
            // The whole reachable set has been explored: the word is not in
            // the closure, so this semi-decider idles from now on.
            self.settled = true;
            return;
        }
        self.stage += 1;
        let wanted = self.stage.min(self.relators.len());
        for r in &self.relators[self.active..wanted] {
            self.rules.add_relator(r);
        }
        self.active = wanted;
        self.cap = self.target.len() + 2 * self.stage;
        self.pruned = false;
        self.visited.clear();
        self.visited.insert(self.target.clone());
        self.frontier.clear();
        self.frontier.push_back(self.target.clone());
    }

    // Expands one state; true if the empty word was reached.
    fn expand(&mut self) -> bool {
        let Some(state) = self.frontier.pop_front() else {
            self.next_stage();
            return false;
        };
        let n = state.len();
        let mut scratch = Vec::with_capacity(n + 16);
        let mut reduced = Vec::with_capacity(n + 16);
        let rules = &self.rules;
        let cap = self.cap;
        for i in 0..cyclic_period(&state) {
            let mut node = 0usize;
            for k in 1..=n {
                let key = state[(i + k - 1) % n] as usize;
                node = rules.children[node * rules.width + key] as usize;
                if node == 0 {
                    break;
                }
                // The successor is the cyclic word u·v with v the rest of the state.
                let r = n - k;
                let v = |t: usize| state[(i + k + t) % n];
                // The successor has length at least |lu - r|.
                let outputs = &rules.outputs[node];
                let lo_len = r.saturating_sub(cap);
                let first = outputs.partition_point(|u| u.len() < lo_len);
                let last = outputs.partition_point(|u| u.len() <= r + cap);
                if first > 0 || last < outputs.len() {
                    self.pruned = true;
                }
                for u in &outputs[first..last] {
                    let lu = u.len();
                    let m = lu.min(r);
                    let mut c1 = 0;
                    while c1 < m && u[lu - 1 - c1] == v(c1) ^ 1 {
                        c1 += 1;
                    }
                    let mut c2 = 0;
                    while c1 + c2 < m && v(r - 1 - c2) == u[c2] ^ 1 {
                        c2 += 1;
                    }
                    let next = if c1 + c2 < m {
                        if lu + r - 2 * (c1 + c2) > cap {
                            self.pruned = true;
                            continue;
                        }
                        scratch.clear();
                        scratch.extend_from_slice(&u[c2..lu - c1]);
                        scratch.extend((c1..r - c2).map(v));
                        least_rotation(&scratch)
                    } else {
                        if lu.abs_diff(r) > cap {
                            self.pruned = true;
                            continue;
                        }
                        scratch.clear();
                        scratch.extend_from_slice(u);
                        scratch.extend((0..r).map(v));
                        let (lo, hi) = cyclic_reduce_into(&scratch, &mut reduced);
                        if lo == hi {
                            return true;
                        }
                        if hi - lo > cap {
                            self.pruned = true;
                            continue;
                        }
                        least_rotation(&reduced[lo..hi])
                    };
                    if !self.visited.contains(&next) {
                        self.visited.insert(next.clone());
                        self.frontier.push_back(next);
                    }
                }
            }
        }
        false
    }
}

impl Process for ClosureSearch {
    type Output = ();

    fn step(&mut self) -> Option<()> {
        if self.target.is_empty() {
            return Some(());
        }
        if self.settled {
            return None;
        }
        let wanted = self.relators.len() <= self.stage;
        if self.pull_turn && wanted && !self.stream.is_finished() {
            self.pull_turn = false;
            self.pull();
            return None;
        }
        self.pull_turn = true;
        self.expand().then_some(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_examples() {
        // a b A  ->  b ; keys: a=0, A=1, b=2, B=3
        assert_eq!(canonical_cyclic(&[0, 2, 1]), vec![2]);
        assert_eq!(canonical_cyclic(&[2, 0]), vec![0, 2]);
        assert_eq!(canonical_cyclic(&[0, 1]), Vec::<Key>::new());
        assert_eq!(canonical_cyclic(&[3, 1, 2, 0]), vec![0, 3, 1, 2]);
    }

    #[test]
    fn least_rotation_matches_brute_force() {
        let words: [&[Key]; 6] = [&[0, 0, 0], &[2, 0, 2, 0], &[3, 1, 0, 3, 1], &[1, 0, 1, 0, 0], &[5], &[2, 2, 0, 2, 2, 0, 2]];
        for w in words {
            let n = w.len();
            let brute = (0..n).map(|s| (0..n).map(|t| w[(s + t) % n]).collect::<Vec<_>>()).min().unwrap();
            assert_eq!(least_rotation(w), brute);
            let period = (1..=n).find(|&p| (0..n).all(|t| w[t] == w[(t + p) % n])).unwrap();
            assert_eq!(cyclic_period(w), period);
        }
    }

    #[test]
    fn rotations_of_a_relator_give_rules() {
        let mut rules = Rules::new(1);
        rules.add_relator(&[0, 0]);
        // a·a and A·A, splits at 1 and 2, rotations coincide.
        let mut found = Vec::new();
        let mut stack = vec![(0usize, Vec::new())];
        while let Some((node, path)) = stack.pop() {
            for u in &rules.outputs[node] {
                found.push((path.clone(), u.clone()));
            }
            for key in 0..rules.width {
                let child = rules.children[node * rules.width + key] as usize;
                if child != 0 {
                    let mut next = path.clone();
                    next.push(key as Key);
                    stack.push((child, next));
                }
            }
        }
        assert_eq!(found.len(), 4);
        assert!(found.contains(&(vec![0], vec![1])));
        assert!(found.contains(&(vec![0, 0], vec![])));
    }
}
