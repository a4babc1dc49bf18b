use super::{key_letter, Word};

/// Every reduced word of the given arity, once each, in shortlex order.
pub fn enumerate_words(arity: usize) -> ShortlexWords {
    ShortlexWords::new(arity)
}

/// Infinite shortlex iterator over reduced words.
#[derive(Clone, Debug)]
pub struct ShortlexWords {
    arity: usize,
    keys: Option<Vec<usize>>,
}

impl ShortlexWords {
    pub fn new(arity: usize) -> Self {
        assert!(arity >= 1, "word enumeration needs at least one generator");
        ShortlexWords {
            arity,
            keys: None,
        }
    }

    fn base(&self) -> usize {
        2 * self.arity
    }

    // Smallest key at position i given the key before it.
    fn smallest_after(prev: Option<usize>) -> usize {
        match prev {
            Some(1) => 1,
            _ => 0,
        }
    }

    fn fill_minimal(keys: &mut [usize], from: usize) {
        for i in from..keys.len() {
            let prev = if i == 0 { None } else { Some(keys[i - 1]) };
            keys[i] = Self::smallest_after(prev);
        }
    }

    fn advance(&mut self, keys: &mut Vec<usize>) {
        let base = self.base();
        let mut i = keys.len();
        while i > 0 {
            i -= 1;
            let forbidden = if i == 0 { None } else { Some(keys[i - 1] ^ 1) };
            let mut next = keys[i] + 1;
            if Some(next) == forbidden {
                next += 1;
            }
            if next < base {
                keys[i] = next;
                Self::fill_minimal(keys, i + 1);
                return;
            }
        }
        let len = keys.len() + 1;
        keys.resize(len, 0);
        Self::fill_minimal(keys, 0);
    }
}

impl Iterator for ShortlexWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let keys = match self.keys.take() {
            None => Vec::new(),
            Some(mut keys) => {
                self.advance(&mut keys);
                keys
            }
        };
        let word = Word::from_reduced_unchecked(
            self.arity,
            keys.iter().map(|&k| key_letter(k)).collect(),
        );
        self.keys = Some(keys);
        Some(word)
    }
}

/// Tuples of `size` words, ordered by the largest shortlex rank among the
/// components and then lexicographically by ranks. Every tuple appears once.
#[derive(Clone, Debug)]
pub struct WordTuples {
    size: usize,
    words: ShortlexWords,
    table: Vec<Word>,
    bound: usize,
    ranks: Option<Vec<usize>>,
    done: bool,
}

impl WordTuples {
    pub fn new(arity: usize, size: usize) -> Self {
        WordTuples {
            size,
            words: ShortlexWords::new(arity),
            table: Vec::new(),
            bound: 0,
            ranks: None,
            done: false,
        }
    }

    fn word(&mut self, rank: usize) -> Word {
        while self.table.len() <= rank {
            let next = self.words.next().expect("shortlex enumeration is infinite");
            self.table.push(next);
        }
        self.table[rank].clone()
    }

    // Next rank tuple over 0..=bound whose maximum equals bound.
    fn next_ranks(&mut self) -> Vec<usize> {
        loop {
            let ranks = match self.ranks.take() {
                None => vec![0; self.size],
                Some(mut r) => {
                    let mut i = r.len();
                    let mut carried = true;
                    while i > 0 {
                        i -= 1;
                        if r[i] < self.bound {
                            r[i] += 1;
                            carried = false;
                            break;
                        }
                        r[i] = 0;
                    }
                    if carried {
                        self.bound += 1;
                    }
                    r
                }
            };
            self.ranks = Some(ranks.clone());
            if ranks.iter().copied().max().unwrap_or(0) == self.bound {
                return ranks;
            }
        }
    }
}

impl Iterator for WordTuples {
    type Item = Vec<Word>;

    fn next(&mut self) -> Option<Vec<Word>> {
        if self.done {
            return None;
        }
        if self.size == 0 {
            self.done = true;
            return Some(Vec::new());
        }
        let ranks = self.next_ranks();
        Some(ranks.into_iter().map(|r| self.word(r)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{reduce, shortlex_cmp};
    use std::collections::HashSet;

    // Brute force: every signed sequence of length <= n, reduced, deduplicated.
    fn brute_force(arity: usize, max_len: usize) -> HashSet<Vec<i32>> {
        let alphabet: Vec<i32> = (1..=arity as i32).flat_map(|g| [g, -g]).collect();
        let mut layer: Vec<Vec<i32>> = vec![vec![]];
        let mut all = HashSet::new();
        for _ in 0..=max_len {
            let mut next = Vec::new();
            for raw in &layer {
                let r = reduce(raw, arity).unwrap();
                if r.len() == raw.len() {
                    all.insert(raw.clone());
                }
                for &a in &alphabet {
                    let mut e = raw.clone();
                    e.push(a);
                    next.push(e);
                }
            }
            layer = next;
        }
        all
    }

    #[test]
    fn first_words_of_rank_one() {
        let first: Vec<Vec<i32>> = enumerate_words(1).take(3).map(|w| w.letters().to_vec()).collect();
        assert_eq!(first, vec![vec![], vec![1], vec![-1]]);
    }

    #[test]
    fn rank_two_count_up_to_length_two() {
        let n = enumerate_words(2).take_while(|w| w.len() <= 2).count();
        assert_eq!(n, 1 + 4 + 12);
    }

    #[test]
    fn injective_and_exhaustive_to_length_five() {
        for arity in 1..=3 {
            let expected = brute_force(arity, 5);
            let got: Vec<Vec<i32>> = enumerate_words(arity)
                .take_while(|w| w.len() <= 5)
                .map(|w| w.letters().to_vec())
                .collect();
            let set: HashSet<_> = got.iter().cloned().collect();
            assert_eq!(set.len(), got.len(), "duplicates for arity {arity}");
            assert_eq!(set, expected, "arity {arity}");
        }
    }

    #[test]
    fn emission_is_strictly_shortlex_increasing() {
        let words: Vec<Word> = enumerate_words(2).take(500).collect();
        for pair in words.windows(2) {
            assert_eq!(shortlex_cmp(&pair[0], &pair[1]), std::cmp::Ordering::Less);
        }
    }

    #[test]
    fn tuples_cover_small_ranks_once() {
        let tuples: Vec<Vec<Word>> = WordTuples::new(1, 2).take(9).collect();
        let set: HashSet<_> = tuples.iter().cloned().collect();
        assert_eq!(set.len(), 9);
        // ranks 0..=2 for both components: the 3x3 box.
        let words: Vec<Word> = enumerate_words(1).take(3).collect();
        for a in &words {
            for b in &words {
                assert!(set.contains(&vec![a.clone(), b.clone()]));
            }
        }
        assert_eq!(tuples[0], vec![Word::identity(1), Word::identity(1)]);
    }

    #[test]
    fn zero_sized_tuple_is_emitted_once() {
        assert_eq!(WordTuples::new(2, 0).count(), 1);
    }
}
