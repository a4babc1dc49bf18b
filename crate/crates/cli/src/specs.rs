use std::fs;
use std::sync::Arc;

use markedgroups::engine::Machine;
use markedgroups::gadgets::{fleet_machine, lockhart_wp_gadget};
use markedgroups::oracles::{
    abelian_wp, cyclic_wp, finite_wp, lamplighter_wp, perm_wp, CayleyTable, Marking, Permutation, WpDescription,
};
use markedgroups::presentations::{FinitePresentation, Law};
use markedgroups::recognition::{kuznetsov_wp, mckinsey_wp};
use markedgroups::words::{parse_word, Word};
use markedgroups::Error;

/// A failure that ends the run.
#[derive(Debug)]
pub enum Failure {
    /// Bad invocation: exit 64.
    Usage(String),
    /// Unparseable or invalid input: exit 65.
    Input(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 64,
            Failure::Input(_) => 65,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

pub type Res<T> = std::result::Result<T, Failure>;

fn context(what: &str, e: Error) -> Failure {
    Failure::Input(format!("{what}: {e}"))
}

pub fn presentation(text: &str) -> Res<FinitePresentation> {
    FinitePresentation::parse(text).map_err(|e| context("presentation", e))
}

pub fn word(text: &str, arity: usize) -> Res<Word> {
    parse_word(text, arity).map_err(|e| context("word", e))
}

/// A comma-separated word list, parsed as the relators of a presentation
/// so that commas inside commutators are handled by the grammar.
pub fn word_list(text: &str, arity: usize) -> Res<Vec<Word>> {
    if arity == 0 || arity > 26 {
        return Err(Failure::Usage(format!("arity {arity} out of range")));
    }
    let gens: Vec<String> = (0..arity).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let p = FinitePresentation::parse(&format!("<{}|{}>", gens.join(","), text)).map_err(|e| context("word list", e))?;
    Ok(p.relators().to_vec())
}

pub fn laws(text: &str) -> Res<Vec<Law>> {
    split_top(text, ';').iter().map(|t| Law::parse(t).map_err(|e| context("law", e))).collect()
}

/// Splits on `sep` outside brackets and parentheses.
fn split_top(text: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if c == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}

/// A fleet machine name, or a path to a machine in text format.
pub fn machine(spec: &str) -> Res<Machine> {
    if let Some(fm) = fleet_machine(spec) {
        return Ok(fm.machine);
    }
    let text = fs::read_to_string(spec)
        .map_err(|e| Failure::Usage(format!("'{spec}' is neither a fleet machine nor a readable file: {e}")))?;
    Machine::parse(&text).map_err(|e| context("machine", e))
}

pub fn table_file(path: &str) -> Res<CayleyTable> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
    CayleyTable::parse(&text).map_err(|e| context("table", e))
}

fn numbers(text: &str) -> Res<Vec<usize>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| Failure::Input(format!("bad number '{s}'"))))
        .collect()
}

/// Word problem solvers by name:
/// `cyclic:N`, `abelian:K[:r,r;r,r]`, `lamplighter`, `perm:P;P`,
/// `table:PATH:i,j`, `lockhart:MACHINE`, `mckinsey:PRES`, `kuznetsov:PRES`.
pub fn oracle(spec: &str) -> Res<WpDescription> {
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    match kind {
        "cyclic" => {
            let n = rest.trim().parse().map_err(|_| Failure::Input(format!("bad modulus '{rest}'")))?;
            Ok(cyclic_wp(n))
        }
        "abelian" => {
            let (k, rows) = rest.split_once(':').unwrap_or((rest, ""));
            let k: usize = k.trim().parse().map_err(|_| Failure::Input(format!("bad arity '{k}'")))?;
            let rows = rows
                .split(';')
                .filter(|r| !r.trim().is_empty())
                .map(|r| {
                    r.split(',')
                        .map(|x| x.trim().parse().map_err(|_| Failure::Input(format!("bad entry '{x}'"))))
                        .collect::<Res<Vec<i64>>>()
                })
                .collect::<Res<Vec<_>>>()?;
            Ok(abelian_wp(k, &rows)?)
        }
        "lamplighter" => Ok(lamplighter_wp()),
        "perm" => {
            let gens = rest
                .split(';')
                .map(|p| Permutation::parse(p).map_err(|e| context("permutation", e)))
                .collect::<Res<Vec<_>>>()?;
            Ok(perm_wp(&gens)?)
        }
        "table" => {
            let (path, tuple) = rest
                .rsplit_once(':')
                .ok_or_else(|| Failure::Usage("table oracle needs PATH:i,j,…".into()))?;
            let t = Arc::new(table_file(path)?);
            Ok(finite_wp(&Marking::new(t, numbers(tuple)?)?))
        }
        "lockhart" => Ok(lockhart_wp_gadget(&machine(rest)?)),
        "mckinsey" => Ok(mckinsey_wp(&presentation(rest)?)),
        "kuznetsov" => Ok(kuznetsov_wp(&presentation(rest)?.relator_enumerator())),
        _ => Err(Failure::Usage(format!("unknown oracle '{kind}'"))),
    }
}
