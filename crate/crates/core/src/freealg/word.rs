use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use serde::Serialize;

/// A generator of the free algebra on `{A, B, C}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Letter {
    A,
    B,
    C,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::A, Letter::B, Letter::C];

    /// Filtration weight: `A`, `B` count 1 and `C = [A,B]` counts 2.
    pub fn weight(self) -> usize {
        match self {
            Letter::A | Letter::B => 1,
            Letter::C => 2,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::B => 'B',
            Letter::C => 'C',
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A word over `{A, B, C}`; the empty word is the unit `I`.
///
/// Words are ordered canonically: higher filtration degree first, then longer
/// first, then lexicographically with `A < B < C`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn power(l: Letter, k: usize) -> Self {
        Word(vec![l; k])
    }

    /// Parses a bare letter string such as `"BCCA"`; `""` and `"I"` give the
    /// empty word.
    pub fn from_letters(s: &str) -> Option<Self> {
        if s == "I" {
            return Some(Self::empty());
        }
        s.chars()
            .map(|c| match c {
                'A' => Some(Letter::A),
                'B' => Some(Letter::B),
                'C' => Some(Letter::C),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Word)
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

    pub fn filtration_degree(&self) -> usize {
        self.0.iter().map(|l| l.weight()).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `left · self · right`
    pub fn sandwich(&self, left: &Word, right: &Word) -> Word {
        let mut v = Vec::with_capacity(left.len() + self.len() + right.len());
        v.extend_from_slice(&left.0);
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&right.0);
        Word(v)
    }

    pub fn subword(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Position of the first occurrence of `needle` as a contiguous subword.
    pub fn find(&self, needle: &Word) -> Option<usize> {
        if needle.len() > self.len() {
            return None;
        }
        (0..=self.len() - needle.len()).find(|&i| self.0[i..i + needle.len()] == needle.0[..])
    }

    /// All `3^len` words of a given length, in lexicographic order.
    pub fn all_of_length(len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    Letter::ALL.into_iter().map(move |l| {
                        let mut v = w.0.clone();
                        v.push(l);
                        Word(v)
                    })
                })
                .collect();
        }
        out
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .filtration_degree()
            .cmp(&self.filtration_degree())
            .then_with(|| other.len().cmp(&self.len()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

/// Run-length form with `*` separators, e.g. `A^2*B*C^3`; the empty word is `I`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "I");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match j - i {
                1 => write!(f, "{l}")?,
                n => write!(f, "{l}^{n}")?,
            }
            i = j;
        }
        Ok(())
    }
}
