//! Permutations of `{0, …, d-1}` acting on the right.
//!
//! `p.then(q)` applies `p` first and `q` second, so a word `x₁x₂…` in
//! permutation generators evaluates to `x₁.then(x₂).then(…)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::Parser;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::input(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// The permutation exchanging the points of each pair.
    pub fn from_transpositions(degree: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for &(i, j) in pairs {
            if i >= degree || j >= degree {
                return Err(Error::input(format!("transposition ({i} {j}) outside degree {degree}")));
            }
            images.swap(i, j);
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::input(format!(
                "degree mismatch: {} and {}",
                self.degree(),
                other.degree()
            )));
        }
        Ok(Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn pow(&self, exponent: i64) -> Permutation {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut out = Permutation::identity(self.degree());
        for _ in 0..exponent.unsigned_abs() {
            out = out.then(&base).expect("same degree");
        }
        out
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut order = 1u64;
        for start in 0..self.degree() {
            let mut len = 0u64;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            if len > 0 {
                order = order / gcd(order, len) * len;
            }
        }
        order
    }

    /// Parses the image list `(p0 p1 … p_{d-1})`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser::new(text);
        p.expect('(')?;
        let mut images = Vec::new();
        loop {
            match p.peek() {
                Some(')') => break,
                Some(_) => images.push(p.number(MAX_DEGREE)?),
                None => return Err(Error::syntax(p.pos, "expected ')'")),
            }
        }
        p.expect(')')?;
        if !p.at_end() {
            return Err(Error::syntax(p.pos, "trailing input"));
        }
        Permutation::new(images)
    }
}

// Bounds parsed input.
const MAX_DEGREE: usize = 100_000;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (n, i) in self.images.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The pair `(σ₀, σ₁)` on `5N` points.
///
/// In 1-based terms `σ₀(i) = i + 2` cyclically modulo `5N` and `σ₁` is the
/// product of the transpositions `(1, 2)` and `(2N+4, 2N+5)`. Points are
/// stored 0-based, so `σ₀(j) = (j + 2) mod 5N` and `σ₁ = (0 1)(2N+3 2N+4)`.
/// For `N = 1` the second transposition does not fit in `5N` points.
pub fn sigma_witness(n: usize) -> Result<(Permutation, Permutation)> {
    if n == 0 || 5 * n > MAX_DEGREE {
        return Err(Error::input(format!("N must lie in 1..={}", MAX_DEGREE / 5)));
    }
    let degree = 5 * n;
    if 2 * n + 5 > degree {
        return Err(Error::input(format!(
            "N = {n}: the transposition ({}, {}) lies outside 1..{degree}",
            2 * n + 4,
            2 * n + 5
        )));
    }
    let sigma0 = Permutation {
        images: (0..degree).map(|j| (j + 2) % degree).collect(),
    };
    let sigma1 = Permutation::from_transpositions(degree, &[(0, 1), (2 * n + 3, 2 * n + 4)])?;
    Ok((sigma0, sigma1))
}

/// Generators of `A₅` on five points satisfying `a² = b³ = (ab)⁵ = 1`.
pub fn a5_generators() -> [Permutation; 2] {
    [
        Permutation {
            images: vec![1, 0, 3, 2, 4],
        },
        Permutation {
            images: vec![2, 1, 4, 3, 0],
        },
    ]
}
