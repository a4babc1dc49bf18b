//! Finite groups given by multiplication tables, with identity element 0.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::perm::Permutation;
use crate::engine::{Emit, Enumerator};
use crate::error::{Error, Result};
use crate::presentations::Law;
use crate::words::{Parser, Word};

/// Largest order accepted by the constructors and the parser.
pub const MAX_ORDER: usize = 1024;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TableData", into = "TableData")]
pub struct CayleyTable {
    order: usize,
    entries: Vec<usize>,
    inverses: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct TableData {
    order: usize,
    rows: Vec<Vec<usize>>,
}

impl TryFrom<TableData> for CayleyTable {
    type Error = Error;

    fn try_from(data: TableData) -> Result<Self> {
        let table = CayleyTable::new(data.rows)?;
        if table.order != data.order {
            return Err(Error::input("order does not match the rows"));
        }
        Ok(table)
    }
}

impl From<CayleyTable> for TableData {
    fn from(t: CayleyTable) -> Self {
        TableData {
            order: t.order,
            rows: t.rows(),
        }
    }
}

impl CayleyTable {
    /// Validates the group axioms with identity 0.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::input("table is not square"));
        }
        CayleyTable::from_entries(order, rows.concat())
    }

    pub fn from_entries(order: usize, entries: Vec<usize>) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::input(format!("order must lie in 1..={MAX_ORDER}")));
        }
        if entries.len() != order * order {
            return Err(Error::input("wrong number of entries"));
        }
        if let Some(&e) = entries.iter().find(|&&e| e >= order) {
            return Err(Error::input(format!("entry {e} out of range")));
        }
        let t = CayleyTable::unchecked(order, entries);
        t.check_axioms()?;
        Ok(t)
    }

    pub(crate) fn unchecked(order: usize, entries: Vec<usize>) -> Self {
        let inverses = (0..order)
            .map(|x| (0..order).find(|&y| entries[x * order + y] == 0).unwrap_or(0))
            .collect();
        CayleyTable {
            order,
            entries,
            inverses,
        }
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(Error::input(format!("0 is not an identity for {x}")));
            }
        }
        for x in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for y in 0..n {
                if std::mem::replace(&mut row[self.mul(x, y)], true) {
                    return Err(Error::input(format!("row {x} repeats an entry")));
                }
                if std::mem::replace(&mut col[self.mul(y, x)], true) {
                    return Err(Error::input(format!("column {x} repeats an entry")));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::input(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.entries[x * self.order + y]
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverses[x]
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.entries.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    /// The value of `w` with generator `i` sent to `tuple[i - 1]`.
    pub fn evaluate(&self, w: &Word, tuple: &[usize]) -> usize {
        w.letters().iter().fold(0, |x, &l| self.mul(x, self.letter_value(l, tuple)))
    }

    pub(crate) fn letter_value(&self, letter: i32, tuple: &[usize]) -> usize {
        let g = tuple[letter.unsigned_abs() as usize - 1];
        if letter > 0 {
            g
        } else {
            self.inverse(g)
        }
    }

    /// True iff the elements of `tuple` generate the whole group.
    pub fn generated_by(&self, tuple: &[usize]) -> bool {
        self.closure(tuple).len() == self.order
    }

    fn closure(&self, tuple: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut found = vec![0];
        let mut i = 0;
        while i < found.len() {
            let x = found[i];
            for &g in tuple {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    found.push(y);
                }
            }
            i += 1;
        }
        found
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn trivial() -> Self {
        CayleyTable::unchecked(1, vec![0])
    }

    /// `ℤ/n` with `1` as its natural generator.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::input(format!("order must lie in 1..={MAX_ORDER}")));
        }
        Ok(CayleyTable::unchecked(
            n,
            (0..n * n).map(|i| (i / n + i % n) % n).collect(),
        ))
    }

    /// Pairs `(x, y)` stored at index `x·|b| + y`.
    pub fn direct_product(a: &CayleyTable, b: &CayleyTable) -> Result<Self> {
        let (p, q) = (a.order, b.order);
        if p * q > MAX_ORDER {
            return Err(Error::input("product too large"));
        }
        let n = p * q;
        let mut entries = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                entries.push(a.mul(x / q, y / q) * q + b.mul(x % q, y % q));
            }
        }
        Ok(CayleyTable::unchecked(n, entries))
    }

    /// `ℤ/n ≀ ℤ/2`: `n` lamps on a cycle of length `n`. The element with
    /// shift `t` and lamp set `mask` is stored at index `t·2ⁿ + mask`;
    /// [`CayleyTable::lamplighter_marking`] gives the standard generators.
    pub fn lamplighter(n: usize) -> Result<Self> {
        if n == 0 || n > 7 {
            return Err(Error::input("lamp count must lie in 1..=7"));
        }
        let lamps = 1usize << n;
        let order = n * lamps;
        let rotate = |mask: usize, t: usize| {
            if t == 0 {
                mask
            } else {
                ((mask << t) | (mask >> (n - t))) & (lamps - 1)
            }
        };
        let mut entries = Vec::with_capacity(order * order);
        for x in 0..order {
            let (t1, m1) = (x / lamps, x % lamps);
            for y in 0..order {
                let (t2, m2) = (y / lamps, y % lamps);
                entries.push(((t1 + t2) % n) * lamps + (m1 ^ rotate(m2, t1)));
            }
        }
        Ok(CayleyTable::unchecked(order, entries))
    }

    /// The shift by one and the lamp at position 0, as elements of
    /// [`CayleyTable::lamplighter`]`(n)`.
    pub fn lamplighter_marking(n: usize) -> [usize; 2] {
        [(1 % n) << n, 1]
    }

    /// The group generated by `gens`, together with the elements standing
    /// for the generators. Fails beyond `limit` elements.
    pub fn from_permutations(gens: &[Permutation], limit: usize) -> Result<(Self, Vec<usize>)> {
        let degree = gens.first().map_or(0, Permutation::degree);
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(Error::input("generators of different degrees"));
        }
        let limit = limit.min(MAX_ORDER);
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        let mut elements = vec![Permutation::identity(degree)];
        index.insert(elements[0].clone(), 0);
        let mut i = 0;
        while i < elements.len() {
            for g in gens {
                let y = elements[i].then(g)?;
                if !index.contains_key(&y) {
                    if elements.len() == limit {
                        return Err(Error::input(format!("group has more than {limit} elements")));
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
            i += 1;
        }
        let n = elements.len();
        let mut entries = Vec::with_capacity(n * n);
        for x in &elements {
            for y in &elements {
                entries.push(index[&x.then(y)?]);
            }
        }
        let marking = gens.iter().map(|g| index[g]).collect();
        Ok((CayleyTable::unchecked(n, entries), marking))
    }

    /// Brute-force search for an isomorphism, extending generator images.
    pub fn is_isomorphic(a: &CayleyTable, b: &CayleyTable) -> bool {
        if a.order != b.order {
            return false;
        }
        let mut a_orders: Vec<usize> = (0..a.order).map(|x| a.element_order(x)).collect();
        let mut b_orders: Vec<usize> = (0..b.order).map(|x| b.element_order(x)).collect();
        let gens = a.small_generating_set();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| (0..b.order).filter(|&h| b_orders[h] == a_orders[g]).collect())
            .collect();
        a_orders.sort_unstable();
        b_orders.sort_unstable();
        if a_orders != b_orders {
            return false;
        }
        let mut images = vec![0; gens.len()];
        a.try_images(b, &gens, &candidates, &mut images, 0)
    }

    fn small_generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0];
        for x in 0..self.order {
            if span.len() == self.order {
                break;
            }
            if !span.contains(&x) {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        gens
    }

    fn try_images(
        &self,
        b: &CayleyTable,
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        depth: usize,
    ) -> bool {
        if depth == gens.len() {
            return self.extends_to_isomorphism(b, gens, images);
        }
        for &h in &candidates[depth] {
            images[depth] = h;
            if self.try_images(b, gens, candidates, images, depth + 1) {
                return true;
            }
        }
        false
    }

    fn extends_to_isomorphism(&self, b: &CayleyTable, gens: &[usize], images: &[usize]) -> bool {
        const UNSET: usize = usize::MAX;
        let mut map = vec![UNSET; self.order];
        let mut used = vec![false; b.order];
        map[0] = 0;
        used[0] = true;
        let mut queue = vec![0];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (&g, &h) in gens.iter().zip(images) {
                let (y, fy) = (self.mul(x, g), b.mul(map[x], h));
                if map[y] == UNSET {
                    if std::mem::replace(&mut used[fy], true) {
                        return false;
                    }
                    map[y] = fy;
                    queue.push(y);
                } else if map[y] != fy {
                    return false;
                }
            }
            i += 1;
        }
        (0..self.order).all(|x| (0..self.order).all(|y| map[self.mul(x, y)] == b.mul(map[x], map[y])))
    }

    /// Parses `order n` followed by `n` rows of `n` entries.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser::new(text);
        for c in "order".chars() {
            p.expect(c)?;
        }
        let order_at = p.pos;
        let order = p.number(MAX_ORDER)?;
        if order == 0 {
            return Err(Error::syntax(order_at, "order must be positive"));
        }
        let mut entries = Vec::with_capacity(order * order);
        for _ in 0..order * order {
            p.skip_ws();
            let at = p.pos;
            let e = p.number(MAX_ORDER)?;
            if e >= order {
                return Err(Error::syntax(at, format!("entry {e} out of range")));
            }
            entries.push(e);
        }
        if !p.at_end() {
            return Err(Error::syntax(p.pos, "trailing input"));
        }
        CayleyTable::from_entries(order, entries)
    }
}

impl fmt::Display for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order {}", self.order)?;
        for row in self.entries.chunks(self.order) {
            let row: Vec<String> = row.iter().map(usize::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CayleyTable(order {}, {:?})", self.order, self.entries)
    }
}

/// A generating tuple of a finite group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Marking {
    table: Arc<CayleyTable>,
    tuple: Vec<usize>,
}

impl Marking {
    pub fn new(table: Arc<CayleyTable>, tuple: Vec<usize>) -> Result<Self> {
        if tuple.is_empty() {
            return Err(Error::input("a marking needs at least one element"));
        }
        if let Some(&x) = tuple.iter().find(|&&x| x >= table.order) {
            return Err(Error::input(format!("element {x} out of range")));
        }
        if !table.generated_by(&tuple) {
            return Err(Error::input(format!("{tuple:?} does not generate the group")));
        }
        Ok(Marking { table, tuple })
    }

    pub fn arity(&self) -> usize {
        self.tuple.len()
    }

    pub fn table(&self) -> &Arc<CayleyTable> {
        &self.table
    }

    pub fn tuple(&self) -> &[usize] {
        &self.tuple
    }

    pub fn evaluate(&self, w: &Word) -> usize {
        self.table.evaluate(w, &self.tuple)
    }
}

/// Every group table of order `1..=max_order` with identity 0, each order
/// in lexicographic order of the flattened table. One step tries one value
/// in one cell, or backs up one cell.
pub fn enumerate_finite_groups(max_order: usize) -> Enumerator<CayleyTable> {
    Enumerator::new(TableSearch {
        max_order: max_order.min(MAX_ORDER),
        order: 0,
        entries: Vec::new(),
        row_used: Vec::new(),
        col_used: Vec::new(),
        next: Vec::new(),
        depth: 0,
    })
}

const UNSET: usize = usize::MAX;

struct TableSearch {
    max_order: usize,
    order: usize,
    entries: Vec<usize>,
    row_used: Vec<Vec<bool>>,
    col_used: Vec<Vec<bool>>,
    // next[d]: the next value to try in free cell d.
    next: Vec<usize>,
    depth: usize,
}

impl TableSearch {
    fn cells(&self) -> usize {
        (self.order - 1) * (self.order - 1)
    }

    // Free cells are the non-identity rows and columns, row by row.
    fn cell(&self, d: usize) -> (usize, usize) {
        (1 + d / (self.order - 1), 1 + d % (self.order - 1))
    }

    fn start_order(&mut self, n: usize) {
        self.order = n;
        self.entries = vec![UNSET; n * n];
        self.row_used = vec![vec![false; n]; n];
        self.col_used = vec![vec![false; n]; n];
        for x in 0..n {
            self.set(0, x, x);
            if x > 0 {
                self.set(x, 0, x);
            }
        }
        self.next = vec![0; self.cells() + 1];
        self.depth = 0;
    }

    fn set(&mut self, x: usize, y: usize, v: usize) {
        self.entries[x * self.order + y] = v;
        self.row_used[x][v] = true;
        self.col_used[y][v] = true;
    }

    fn unset(&mut self, x: usize, y: usize) {
        let v = std::mem::replace(&mut self.entries[x * self.order + y], UNSET);
        self.row_used[x][v] = false;
        self.col_used[y][v] = false;
    }

    fn get(&self, x: usize, y: usize) -> usize {
        if x == UNSET || y == UNSET {
            UNSET
        } else {
            self.entries[x * self.order + y]
        }
    }

    // Checks every associativity instance that uses the entry at (x, y).
    fn associative_at(&self, x: usize, y: usize) -> bool {
        let n = self.order;
        let z = self.get(x, y);
        let differ = |l: usize, r: usize| l != UNSET && r != UNSET && l != r;
        for c in 0..n {
            if differ(self.get(z, c), self.get(x, self.get(y, c))) {
                return false;
            }
        }
        for a in 0..n {
            if differ(self.get(self.get(a, x), y), self.get(a, z)) {
                return false;
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.get(a, b) == x && differ(z, self.get(a, self.get(b, y))) {
                    return false;
                }
                if self.get(a, b) == y && differ(self.get(self.get(x, a), b), z) {
                    return false;
                }
            }
        }
        true
    }

    fn advance_order(&mut self) {
        if self.order >= self.max_order {
            self.order = self.max_order + 1;
        } else {
            self.start_order(self.order + 1);
        }
    }
}

impl Emit<CayleyTable> for TableSearch {
    fn step(&mut self) -> Option<CayleyTable> {
        if self.is_finished() {
            return None;
        }
        if self.order == 0 {
            self.advance_order();
            return None;
        }
        if self.depth == self.cells() {
            let table = CayleyTable::unchecked(self.order, self.entries.clone());
            self.back_up();
            return Some(table);
        }
        let (x, y) = self.cell(self.depth);
        let v = self.next[self.depth];
        if v == self.order {
            self.back_up();
            return None;
        }
        self.next[self.depth] += 1;
        if !self.row_used[x][v] && !self.col_used[y][v] {
            self.set(x, y, v);
            if self.associative_at(x, y) {
                self.depth += 1;
                self.next[self.depth] = 0;
            } else {
                self.unset(x, y);
            }
        }
        None
    }

    fn is_finished(&self) -> bool {
        self.order > self.max_order
    }
}

impl TableSearch {
    // Leaves the current cell; the previous cell resumes at its next value.
    fn back_up(&mut self) {
        if self.depth == 0 {
            self.advance_order();
            return;
        }
        self.depth -= 1;
        let (x, y) = self.cell(self.depth);
        self.unset(x, y);
    }
}

/// Every generating `k`-tuple of `t`, lexicographically; one step per tuple.
pub fn enumerate_markings(t: Arc<CayleyTable>, k: usize) -> Enumerator<Marking> {
    let tuples = Tuples::new(t.order(), k);
    Enumerator::new(MarkingSearch { table: t, tuples })
}

struct MarkingSearch {
    table: Arc<CayleyTable>,
    tuples: Tuples,
}

impl Emit<Marking> for MarkingSearch {
    fn step(&mut self) -> Option<Marking> {
        let tuple = self.tuples.next()?;
        self.table.generated_by(&tuple).then(|| Marking {
            table: self.table.clone(),
            tuple,
        })
    }

    fn is_finished(&self) -> bool {
        self.tuples.done
    }
}

/// All tuples in `{0..base}^len`, lexicographically.
pub(crate) struct Tuples {
    base: usize,
    current: Vec<usize>,
    done: bool,
}

impl Tuples {
    pub(crate) fn new(base: usize, len: usize) -> Self {
        Tuples {
            base,
            current: vec![0; len],
            done: base == 0 || len == 0,
        }
    }
}

impl Iterator for Tuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let mut i = self.current.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.current[i] += 1;
            if self.current[i] < self.base {
                break;
            }
            self.current[i] = 0;
        }
        Some(out)
    }
}

/// True iff the law holds for every assignment of group elements.
pub fn check_law(t: &CayleyTable, law: &Law) -> bool {
    let n = law.variable_count();
    if n == 0 {
        return true;
    }
    Tuples::new(t.order(), n).all(|tuple| t.evaluate(law.word(), &tuple) == 0)
}
