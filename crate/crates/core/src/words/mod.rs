//! Words in a free group of finite rank.
//!
//! Generators are numbered `1..=arity`; a letter `i > 0` stands for the
//! generator `g_i` and `-i` for its inverse. Every [`Word`] is kept freely
//! reduced and remembers the rank of the free group it lives in.

mod enumerate;
mod grammar;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use enumerate::{enumerate_words, ShortlexWords, WordTuples};
pub(crate) use grammar::Parser;
pub use grammar::{format_word, parse_word};

/// A freely reduced word of fixed arity.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    arity: usize,
    letters: Vec<i32>,
}

/// Freely reduces `raw` in the free group of rank `arity`.
pub fn reduce(raw: &[i32], arity: usize) -> Result<Word> {
    let mut letters: Vec<i32> = Vec::with_capacity(raw.len());
    for &letter in raw {
        check_letter(letter, arity)?;
        push_reducing(&mut letters, letter);
    }
    Ok(Word { arity, letters })
}

fn check_letter(letter: i32, arity: usize) -> Result<()> {
    if letter == 0 || letter.unsigned_abs() as usize > arity {
        return Err(Error::LetterOutOfRange { letter, arity });
    }
    Ok(())
}

#[inline]
fn push_reducing(letters: &mut Vec<i32>, letter: i32) {
    if letters.last() == Some(&-letter) {
        letters.pop();
    } else {
        letters.push(letter);
    }
}

/// Position of a letter in the generator order `1 < -1 < 2 < -2 < ...`.
#[inline]
pub fn letter_key(letter: i32) -> usize {
    2 * (letter.unsigned_abs() as usize - 1) + usize::from(letter < 0)
}

#[inline]
pub(crate) fn key_letter(key: usize) -> i32 {
    let generator = (key / 2 + 1) as i32;
    if key % 2 == 1 {
        -generator
    } else {
        generator
    }
}

impl Word {
    pub fn identity(arity: usize) -> Self {
        Word {
            arity,
            letters: Vec::new(),
        }
    }

    /// The generator `g_index` (1-based).
    pub fn generator(arity: usize, index: usize) -> Result<Self> {
        reduce(&[index as i32], arity)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            arity: self.arity,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// Reduced product `self · other`.
    pub fn mul(&self, other: &Word) -> Result<Word> {
        self.check_same_arity(other)?;
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reducing(&mut letters, l);
        }
        Ok(Word {
            arity: self.arity,
            letters,
        })
    }

    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::new();
        for _ in 0..exponent.unsigned_abs() {
            for &l in &base.letters {
                push_reducing(&mut letters, l);
            }
        }
        Word {
            arity: self.arity,
            letters,
        }
    }

    /// `u⁻¹ v⁻¹ u v`.
    pub fn commutator(u: &Word, v: &Word) -> Result<Word> {
        u.inverse().mul(&v.inverse())?.mul(u)?.mul(v)
    }

    /// `u⁻¹ self u`.
    pub fn conjugate_by(&self, u: &Word) -> Result<Word> {
        u.inverse().mul(self)?.mul(u)
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.arity];
        for &l in &self.letters {
            sums[l.unsigned_abs() as usize - 1] += i64::from(l.signum());
        }
        sums
    }

    /// Cyclically reduced core (a conjugate of `self`).
    pub fn cyclic_core(&self) -> Word {
        let l = &self.letters;
        let (mut i, mut j) = (0, l.len());
        while j - i >= 2 && l[i] == -l[j - 1] {
            i += 1;
            j -= 1;
        }
        Word {
            arity: self.arity,
            letters: l[i..j].to_vec(),
        }
    }

    /// Same letters read in a free group of larger rank.
    pub fn widen(&self, arity: usize) -> Result<Word> {
        if arity < self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: arity,
            });
        }
        Ok(Word {
            arity,
            letters: self.letters.clone(),
        })
    }

    pub(crate) fn check_same_arity(&self, other: &Word) -> Result<()> {
        check_arity(self.arity, other.arity)
    }

    pub(crate) fn from_reduced_unchecked(arity: usize, letters: Vec<i32>) -> Word {
        debug_assert!(letters.windows(2).all(|p| p[0] != -p[1]));
        Word { arity, letters }
    }
}

pub(crate) fn check_arity(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::ArityMismatch { expected, found });
    }
    Ok(())
}

/// Shortlex comparison: shorter words first, then lexicographic by [`letter_key`].
pub fn shortlex_cmp(a: &Word, b: &Word) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        a.letters
            .iter()
            .map(|&l| letter_key(l))
            .cmp(b.letters.iter().map(|&l| letter_key(l)))
    })
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(self))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({}; {})", self.arity, format_word(self))
    }
}

/// A map from the generators of one free group to words of another.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Substitution {
    source_arity: usize,
    target_arity: usize,
    images: Vec<Word>,
}

impl Substitution {
    pub fn new(target_arity: usize, images: Vec<Word>) -> Result<Self> {
        for image in &images {
            check_arity(target_arity, image.arity)?;
        }
        Ok(Substitution {
            source_arity: images.len(),
            target_arity,
            images,
        })
    }

    pub fn identity(arity: usize) -> Self {
        let images = (1..=arity as i32)
            .map(|i| Word::from_reduced_unchecked(arity, vec![i]))
            .collect();
        Substitution {
            source_arity: arity,
            target_arity: arity,
            images,
        }
    }

    pub fn source_arity(&self) -> usize {
        self.source_arity
    }

    pub fn target_arity(&self) -> usize {
        self.target_arity
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// `other ∘ self`: first apply `self`, then substitute through `other`.
    pub fn then(&self, other: &Substitution) -> Result<Substitution> {
        let images = self
            .images
            .iter()
            .map(|w| substitute(w, other))
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(other.target_arity, images)
    }
}

/// Image of `w` under the homomorphism defined by `s`.
pub fn substitute(w: &Word, s: &Substitution) -> Result<Word> {
    check_arity(s.source_arity, w.arity)?;
    let mut letters = Vec::new();
    for &l in &w.letters {
        let image = &s.images[l.unsigned_abs() as usize - 1];
        if l > 0 {
            for &m in &image.letters {
                push_reducing(&mut letters, m);
            }
        } else {
            for &m in image.letters.iter().rev() {
                push_reducing(&mut letters, -m);
            }
        }
    }
    Ok(Word {
        arity: s.target_arity,
        letters,
    })
}
