//! Finite presentations and Todd–Coxeter coset enumeration (HLT strategy).
//!
//! Presentation text:
//!
//! ```text
//! gens: a b c
//! rels: a^2, b^4, [a,b]c, a^b = b^-1
//! ```
//!
//! Words support juxtaposition, `x^n`, `x^-n`, conjugation `x^y`,
//! parentheses, left-normed commutators `[x,y,z]` and relations `u = v`.

use std::fmt;

use crate::error::{FswError, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

/// A word: letters `±(i+1)` for generator `i` or its inverse.
pub type Word = Vec<i32>;

/// Default cap on the coset table size.
pub const COSET_TABLE_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub names: Vec<String>,
    pub relators: Vec<Word>,
}

pub fn invert(w: &[i32]) -> Word {
    w.iter().rev().map(|&x| -x).collect()
}

/// Free reduction.
pub fn reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

fn power(w: &[i32], e: i64) -> Word {
    let base = if e < 0 { invert(w) } else { w.to_vec() };
    let mut out = Vec::new();
    for _ in 0..e.unsigned_abs() {
        out.extend_from_slice(&base);
    }
    out
}

fn concat(parts: &[&[i32]]) -> Word {
    reduce(&parts.concat())
}

/// `[u, v] = u⁻¹ v⁻¹ u v`.
pub fn commutator(u: &[i32], v: &[i32]) -> Word {
    concat(&[&invert(u), &invert(v), u, v])
}

/// `u^v = v⁻¹ u v`.
pub fn conjugate(u: &[i32], v: &[i32]) -> Word {
    concat(&[&invert(v), u, v])
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(FswError::Parse(format!("{msg} at offset {} in {:?}", self.pos, String::from_utf8_lossy(self.s))))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_whitespace() || self.s[self.pos] == b'*') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn relation(&mut self) -> Result<Word> {
        let lhs = self.word()?;
        if self.peek() == Some(b'=') {
            self.pos += 1;
            let rhs = self.word()?;
            return Ok(concat(&[&lhs, &invert(&rhs)]));
        }
        Ok(lhs)
    }

    fn word(&mut self) -> Result<Word> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            if matches!(c, b')' | b']' | b',' | b'=') {
                break;
            }
            let f = self.factor()?;
            out.extend(f);
        }
        Ok(reduce(&out))
    }

    fn factor(&mut self) -> Result<Word> {
        let mut w = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            match self.peek() {
                Some(c) if c == b'-' || c.is_ascii_digit() => {
                    let e = self.integer()?;
                    w = power(&w, e);
                }
                Some(_) => {
                    let v = self.atom()?;
                    w = conjugate(&w, &v);
                }
                None => return self.err("missing exponent"),
            }
        }
        Ok(reduce(&w))
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.s.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        match txt.parse() {
            Ok(n) => Ok(n),
            Err(_) => self.err("bad integer"),
        }
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let mut acc = self.word()?;
                let mut n = 1;
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    let next = self.word()?;
                    acc = commutator(&acc, &next);
                    n += 1;
                }
                if n < 2 || self.peek() != Some(b']') {
                    return self.err("malformed commutator");
                }
                self.pos += 1;
                Ok(acc)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Vec::new())
            }
            Some(_) => {
                let rest = &self.s[self.pos..];
                let best = self
                    .names
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| rest.starts_with(n.as_bytes()))
                    .max_by_key(|(_, n)| n.len());
                match best {
                    Some((i, n)) => {
                        self.pos += n.len();
                        Ok(vec![i as i32 + 1])
                    }
                    None => self.err("unknown generator"),
                }
            }
            None => self.err("unexpected end of word"),
        }
    }
}

/// Splits on commas outside brackets and parentheses.
fn split_top(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

impl Presentation {
    pub fn new(names: &[&str], relators: &[&str]) -> Result<Presentation> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let mut p = Presentation { names, relators: Vec::new() };
        for r in relators {
            let w = p.parse_word(r)?;
            p.relators.push(w);
        }
        Ok(p)
    }

    pub fn parse(text: &str) -> Result<Presentation> {
        let mut names: Option<Vec<String>> = None;
        let mut rels = String::new();
        let mut in_rels = false;
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("gens:") {
                names = Some(rest.split_whitespace().map(String::from).collect());
                in_rels = false;
            } else if let Some(rest) = line.strip_prefix("rels:") {
                rels.push_str(rest);
                in_rels = true;
            } else if in_rels {
                if !rels.trim().is_empty() && !rels.trim_end().ends_with(',') {
                    rels.push(',');
                }
                rels.push_str(line);
            } else {
                return Err(FswError::Parse(format!("unexpected line: {line}")));
            }
        }
        let names = names.ok_or_else(|| FswError::Parse("missing 'gens:' line".into()))?;
        if names.is_empty() {
            return Err(FswError::Parse("no generators declared".into()));
        }
        for n in &names {
            if !n.chars().next().unwrap().is_ascii_alphabetic() || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(FswError::Parse(format!("bad generator name {n:?}")));
            }
        }
        let mut p = Presentation { names, relators: Vec::new() };
        for r in split_top(&rels) {
            if r.trim().is_empty() {
                continue;
            }
            let w = p.parse_word(r)?;
            p.relators.push(w);
        }
        Ok(p)
    }

    /// Parses a word or relation `u = v` (returned as `u v⁻¹`).
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut parser = Parser { s: text.as_bytes(), pos: 0, names: &self.names };
        let w = parser.relation()?;
        if parser.peek().is_some() {
            return parser.err("trailing input");
        }
        Ok(w)
    }

    pub fn num_gens(&self) -> usize {
        self.names.len()
    }

    pub fn format_word(&self, w: &[i32]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let name = &self.names[(w[i].unsigned_abs() - 1) as usize];
            let e = (j - i) as i64 * w[i].signum() as i64;
            parts.push(if e == 1 { name.clone() } else { format!("{name}^{e}") });
            i = j;
        }
        parts.join(" ")
    }

    pub fn to_text(&self) -> String {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        format!("gens: {}\nrels: {}\n", self.names.join(" "), rels.join(", "))
    }

    /// Evaluates a word on permutations, one per generator.
    pub fn evaluate(&self, w: &[i32], images: &[Perm]) -> Perm {
        let mut out = Perm::identity(images[0].degree());
        for &x in w {
            let g = &images[(x.unsigned_abs() - 1) as usize];
            out = if x > 0 { out.mul(g) } else { out.mul(&g.inv()) };
        }
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

const NONE: u32 = u32::MAX;

struct CosetTable {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    cap: usize,
}

impl CosetTable {
    fn new(ngens: usize, cap: usize) -> CosetTable {
        let cols = 2 * ngens;
        CosetTable { cols, table: vec![NONE; cols], parent: vec![0], cap }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: usize, x: usize) -> u32 {
        self.table[c * self.cols + x]
    }

    #[inline]
    fn set(&mut self, c: usize, x: usize, v: u32) {
        self.table[c * self.cols + x] = v;
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        if self.len() >= self.cap {
            return Err(FswError::cap("coset table", self.cap as u64));
        }
        let d = self.len();
        self.parent.push(d as u32);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.set(c, x, d as u32);
        self.set(d, x ^ 1, c as u32);
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut k = c;
        while self.parent[k] as usize != r {
            let next = self.parent[k] as usize;
            self.parent[k] = r as u32;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi] = lo as u32;
            queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                let f = f as usize;
                self.set(f, x ^ 1, NONE);
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let ex = self.get(e1, x);
                let fx = self.get(f1, x ^ 1);
                if ex != NONE {
                    self.merge(f1, ex as usize, &mut queue);
                } else if fx != NONE {
                    self.merge(e1, fx as usize, &mut queue);
                } else {
                    self.set(e1, x, f1 as u32);
                    self.set(f1, x ^ 1, e1 as u32);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, w.len() as isize - 1);
        loop {
            while i <= j && self.get(f, w[i as usize]) != NONE {
                f = self.get(f, w[i as usize]) as usize;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.get(b, w[j as usize] ^ 1) != NONE {
                b = self.get(b, w[j as usize] ^ 1) as usize;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            } else if i == j {
                self.set(f, w[i as usize], b as u32);
                self.set(b, w[i as usize] ^ 1, f as u32);
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }
}

fn columns(w: &[i32]) -> Vec<usize> {
    w.iter().map(|&x| if x > 0 { 2 * (x as usize - 1) } else { 2 * ((-x) as usize - 1) + 1 }).collect()
}

/// Result of a coset enumeration: the permutation action of each generator
/// on the cosets.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub index: usize,
    pub generators: Vec<Perm>,
}

impl Enumeration {
    /// The permutation group generated by the generator actions. Over the
    /// trivial subgroup this is the regular representation, of order `index`.
    pub fn group(&self, regular: bool) -> PermGroup {
        if regular {
            PermGroup::with_order(self.index, self.generators.clone(), self.index as u128)
        } else {
            PermGroup::from_gens(self.index, self.generators.clone())
        }
    }
}

/// Enumerates the cosets of `⟨subgroup⟩` in the presented group.
pub fn todd_coxeter(pres: &Presentation, subgroup: &[Word], cap: usize) -> Result<Enumeration> {
    let rels: Vec<Vec<usize>> = pres.relators.iter().map(|r| columns(r)).collect();
    let mut t = CosetTable::new(pres.num_gens(), cap);
    for h in subgroup {
        t.scan_and_fill(0, &columns(h))?;
    }
    let mut c = 0;
    while c < t.len() {
        if t.live(c) {
            for r in &rels {
                t.scan_and_fill(c, r)?;
                if !t.live(c) {
                    break;
                }
            }
            if t.live(c) {
                for x in 0..t.cols {
                    if t.get(c, x) == NONE {
                        t.define(c, x)?;
                    }
                }
            }
        }
        c += 1;
    }
    let live: Vec<usize> = (0..t.len()).filter(|&c| t.live(c)).collect();
    let mut renum = vec![NONE; t.len()];
    for (i, &c) in live.iter().enumerate() {
        renum[c] = i as u32;
    }
    let index = live.len();
    if index > u16::MAX as usize {
        return Err(FswError::cap("permutation degree", u16::MAX as u64));
    }
    let mut generators = Vec::new();
    for g in 0..pres.num_gens() {
        let images: Vec<u16> = live.iter().map(|&c| renum[t.get(c, 2 * g) as usize] as u16).collect();
        generators.push(Perm::from_raw(images));
    }
    Ok(Enumeration { index, generators })
}

/// The presented group in its regular representation.
pub fn coset_enumerate(pres: &Presentation, cap: usize) -> Result<Enumeration> {
    todd_coxeter(pres, &[], cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_syntax() {
        let p = Presentation::parse("gens: a b\nrels: a^2, b^4, a^-1 b a = b^-1, [a,b]^2\n").unwrap();
        assert_eq!(p.relators.len(), 4);
        assert_eq!(p.relators[0], vec![1, 1]);
        assert_eq!(p.relators[2], vec![-1, 2, 1, 2]);
        assert_eq!(p.parse_word("b^a").unwrap(), vec![-1, 2, 1]);
        assert!(p.parse_word("a c").is_err());
        assert!(Presentation::parse("rels: a\n").is_err());
        let q = Presentation::parse("gens: x xy\nrels: xyx\n").unwrap();
        assert_eq!(q.relators[0], vec![2, 1]);
    }

    #[test]
    fn small_groups() {
        let d8 = Presentation::parse("gens: b c\nrels: b^2, c^4, b^-1 c b = c^-1").unwrap();
        assert_eq!(coset_enumerate(&d8, 1000).unwrap().index, 8);
        let c2 = Presentation::parse("gens: g\nrels: g^2").unwrap();
        assert_eq!(coset_enumerate(&c2, 1000).unwrap().index, 2);
        let a5 = Presentation::parse("gens: a b\nrels: a^2, b^3, (ab)^5").unwrap();
        let e = coset_enumerate(&a5, 100_000).unwrap();
        assert_eq!(e.index, 60);
        assert_eq!(e.group(false).order(), 60);
        let trivial = Presentation::parse("gens: a b\nrels: a b^-1, a^3, b^5").unwrap();
        assert_eq!(coset_enumerate(&trivial, 1000).unwrap().index, 1);
        let over = todd_coxeter(&a5, &[vec![1]], 1000).unwrap();
        assert_eq!(over.index, 30);
    }

    #[test]
    fn cap_is_reported() {
        let free = Presentation::parse("gens: a b\nrels: a^2").unwrap();
        assert!(coset_enumerate(&free, 500).unwrap_err().is_cap());
    }
}
