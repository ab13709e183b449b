use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::{Error, Result};

/// A letter of the free group on `g_1, ..., g_t` extended by the involution
/// `c`. Generators are 0-based internally and 1-based in text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Gen(u8),
    Inv(u8),
    Conj,
}

impl Letter {
    /// Order used for length-lexicographic comparison:
    /// `g1 < g1^-1 < g2 < g2^-1 < ... < c`.
    fn key(self) -> u16 {
        match self {
            Letter::Gen(i) => 2 * i as u16,
            Letter::Inv(i) => 2 * i as u16 + 1,
            Letter::Conj => u16::MAX,
        }
    }

    pub fn inverse(self) -> Letter {
        match self {
            Letter::Gen(i) => Letter::Inv(i),
            Letter::Inv(i) => Letter::Gen(i),
            Letter::Conj => Letter::Conj,
        }
    }

    /// All letters over `t` generators, in key order.
    pub fn alphabet(t: usize) -> Vec<Letter> {
        let mut out: Vec<Letter> = (0..t as u8)
            .flat_map(|i| [Letter::Gen(i), Letter::Inv(i)])
            .collect();
        out.push(Letter::Conj);
        out
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Gen(i) => write!(f, "g{}", i + 1),
            Letter::Inv(i) => write!(f, "g{}^-1", i + 1),
            Letter::Conj => f.write_str("c"),
        }
    }
}

/// A freely reduced word; `c c` cancels since `c` is an involution.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(SmallVec<[Letter; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Word::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn letter(l: Letter) -> Self {
        Word::new([l])
    }

    pub fn conj() -> Self {
        Word::letter(Letter::Conj)
    }

    pub fn gen(i: usize) -> Self {
        Word::letter(Letter::Gen(i as u8))
    }

    fn push(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inverse()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The product `self * other`, reduced.
    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word::new(self.0.iter().rev().map(|l| l.inverse()))
    }

    /// Largest generator index used, plus one.
    pub fn rank(&self) -> usize {
        self.0
            .iter()
            .filter_map(|l| match l {
                Letter::Gen(i) | Letter::Inv(i) => Some(*i as usize + 1),
                Letter::Conj => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Parses `1`, or letters `gN`, `gN^-1`, `c` joined by `*`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for tok in s.split('*') {
            let tok = tok.trim();
            if tok == "c" {
                letters.push(Letter::Conj);
                continue;
            }
            let (body, inverse) = match tok.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (tok, false),
            };
            let idx: u8 = body
                .strip_prefix('g')
                .and_then(|n| n.parse().ok())
                .filter(|&n: &u8| n >= 1)
                .ok_or_else(|| Error::parse(0, format!("bad letter `{tok}`")))?;
            letters.push(if inverse {
                Letter::Inv(idx - 1)
            } else {
                Letter::Gen(idx - 1)
            });
        }
        Ok(Word::new(letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Length-lexicographic order.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// All reduced words of length `<= max_len` over `t` generators and `c`, in
/// length-lexicographic order.
pub fn enumerate_words(t: usize, max_len: usize) -> Vec<Word> {
    let alphabet = Letter::alphabet(t);
    let mut out = vec![Word::empty()];
    let mut level = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &level {
            for &l in &alphabet {
                if w.0.last() == Some(&l.inverse()) {
                    continue;
                }
                let mut x = w.clone();
                x.0.push(l);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}
