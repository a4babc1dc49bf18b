//! Text form of words.
//!
//! ```text
//! word   := term*            (the empty word is written `1`)
//! term   := letter | letter '^' int | '(' word ')' '^' int | '[' word ',' word ']'
//! letter := [a-z] (generator) | [A-Z] (inverse)
//! ```
//!
//! `[u,v]` is `u⁻¹v⁻¹uv`. Whitespace is ignored.

use super::{push_reducing, Word};
use crate::error::{Error, Result};

pub fn parse_word(text: &str, arity: usize) -> Result<Word> {
    let mut parser = Parser::new(text);
    let word = parser.word(arity)?;
    parser.skip_ws();
    if let Some(c) = parser.peek() {
        return Err(Error::syntax(parser.pos, format!("unexpected '{c}'")));
    }
    Ok(word)
}

/// Runs of a letter are written with an exponent, inverses in uppercase.
pub fn format_word(w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let mut out = String::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        let mut run = 1;
        while i + run < letters.len() && letters[i + run] == l {
            run += 1;
        }
        let base = b'a' + (l.unsigned_abs() - 1) as u8;
        let c = if l < 0 { base.to_ascii_uppercase() } else { base } as char;
        out.push(c);
        if run > 1 {
            out.push('^');
            out.push_str(&run.to_string());
        }
        i += run;
    }
    out
}

pub(crate) struct Parser<'a> {
    src: &'a [u8],
    pub(crate) pos: usize,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src.get(self.pos).map(|&b| b as char)
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(Error::syntax(self.pos, format!("expected '{c}', found '{d}'"))),
            None => Err(Error::syntax(self.pos, format!("expected '{c}', found end of input"))),
        }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub(crate) fn letter_index(&mut self, c: char, arity: usize) -> Result<i32> {
        let index = (c.to_ascii_lowercase() as u8 - b'a') as i32 + 1;
        if index as usize > arity {
            return Err(Error::syntax(
                self.pos,
                format!("letter '{c}' beyond arity {arity}"),
            ));
        }
        Ok(if c.is_ascii_uppercase() { -index } else { index })
    }

    pub(crate) fn word(&mut self, arity: usize) -> Result<Word> {
        if self.peek() == Some('1') {
            let start = self.pos;
            self.pos += 1;
            match self.peek() {
                None | Some(',') | Some(')') | Some(']') | Some('>') => {
                    return Ok(Word::identity(arity))
                }
                Some(_) => {
                    return Err(Error::syntax(start, "'1' must stand alone for the empty word"))
                }
            }
        }
        let mut letters = Vec::new();
        loop {
            let term = match self.peek() {
                Some(c) if c.is_ascii_alphabetic() => {
                    let l = self.letter_index(c, arity)?;
                    self.pos += 1;
                    let w = Word::from_reduced_unchecked(arity, vec![l]);
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        let e = self.int()?;
                        w.pow(e)
                    } else {
                        w
                    }
                }
                Some('(') => {
                    self.pos += 1;
                    let inner = self.word(arity)?;
                    self.expect(')')?;
                    self.expect('^')?;
                    let at = self.pos;
                    let e = self.int()?;
                    check_len(at, inner.len() as u64 * e.unsigned_abs())?;
                    inner.pow(e)
                }
                Some('[') => {
                    self.pos += 1;
                    let u = self.word(arity)?;
                    self.expect(',')?;
                    let v = self.word(arity)?;
                    self.expect(']')?;
                    check_len(self.pos, 2 * (u.len() + v.len()) as u64)?;
                    Word::commutator(&u, &v)?
                }
                _ => break,
            };
            check_len(self.pos, (letters.len() + term.len()) as u64)?;
            for &l in term.letters() {
                push_reducing(&mut letters, l);
            }
        }
        Ok(Word::from_reduced_unchecked(arity, letters))
    }

    /// A non-negative decimal number no larger than `limit`.
    pub(crate) fn number(&mut self, limit: usize) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::syntax(start, "expected a number"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match text.parse::<usize>() {
            Ok(v) if v <= limit => Ok(v),
            _ => Err(Error::syntax(start, format!("number exceeds {limit}"))),
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(Error::syntax(start, "expected an integer exponent"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let value: i64 = text
            .parse()
            .map_err(|_| Error::syntax(start, "exponent out of range"))?;
        if value.unsigned_abs() > MAX_EXPONENT {
            return Err(Error::syntax(start, "exponent out of range"));
        }
        Ok(value)
    }
}

// Keeps expanded words to a sane size on hostile input.
const MAX_EXPONENT: u64 = 100_000;
const MAX_WORD_LEN: u64 = 1_000_000;

fn check_len(position: usize, len: u64) -> Result<()> {
    if len > MAX_WORD_LEN {
        return Err(Error::syntax(position, "expanded word too long"));
    }
    Ok(())
}
