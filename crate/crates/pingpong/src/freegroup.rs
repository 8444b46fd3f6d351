//! Reduced words over a free generating set.
//!
//! Generators print as lowercase ASCII letters (`a`, `b`, ...), their
//! inverses as the corresponding uppercase letters. Words are always
//! stored reduced and carry their rank so that mixed-rank arithmetic
//! fails fast.

use std::fmt;

use thiserror::Error;

/// Ranks are capped by the letter alphabet.
pub const MAX_RANK: usize = 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("letter {0} out of range for rank {1}")]
    LetterOutOfRange(char, usize),
    #[error("invalid character {0:?} in word")]
    InvalidChar(char),
}

/// A generator symbol or its formal inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    gen: u8,
    inverted: bool,
}

impl Letter {
    pub fn new(gen: usize, inverted: bool) -> Self {
        assert!(gen < MAX_RANK, "generator index out of range");
        Letter {
            gen: gen as u8,
            inverted,
        }
    }

    pub fn gen_index(&self) -> usize {
        self.gen as usize
    }

    pub fn is_inverted(&self) -> bool {
        self.inverted
    }

    pub fn inverse(&self) -> Self {
        Letter {
            gen: self.gen,
            inverted: !self.inverted,
        }
    }

    pub fn generator(&self) -> Self {
        Letter {
            gen: self.gen,
            inverted: false,
        }
    }

    pub fn to_char(&self) -> char {
        let base = if self.inverted { b'A' } else { b'a' };
        (base + self.gen) as char
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'a'..='z' => Some(Letter::new(c as usize - 'a' as usize, false)),
            'A'..='Z' => Some(Letter::new(c as usize - 'A' as usize, true)),
            _ => None,
        }
    }

    /// All `2 * rank` letters, in `a < A < b < B < ...` order.
    pub fn alphabet(rank: usize) -> impl Iterator<Item = Letter> {
        (0..rank).flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// Free reduction: cancel adjacent letter/inverse pairs.
pub fn reduce(raw: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut stack: Vec<Letter> = Vec::new();
    for l in raw {
        if stack.last() == Some(&l.inverse()) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    stack
}

/// A reduced word of the free group of a fixed rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(rank: usize) -> Self {
        Word {
            rank,
            letters: Vec::new(),
        }
    }

    pub fn new(rank: usize, raw: impl IntoIterator<Item = Letter>) -> Result<Self, WordError> {
        let letters = reduce(raw);
        for l in &letters {
            if l.gen_index() >= rank {
                return Err(WordError::LetterOutOfRange(l.to_char(), rank));
            }
        }
        Ok(Word { rank, letters })
    }

    /// Parse the ASCII form; whitespace is ignored.
    pub fn parse(rank: usize, text: &str) -> Result<Self, WordError> {
        let mut raw = Vec::new();
        for c in text.chars() {
            if c.is_whitespace() {
                continue;
            }
            let l = Letter::from_char(c).ok_or(WordError::InvalidChar(c))?;
            raw.push(l);
        }
        Word::new(rank, raw)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(Letter::inverse).collect(),
        }
    }

    pub fn multiply(&self, other: &Word) -> Result<Word, WordError> {
        if self.rank != other.rank {
            return Err(WordError::RankMismatch(self.rank, other.rank));
        }
        let raw = self.letters.iter().chain(other.letters.iter()).copied();
        Word::new(self.rank, raw)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l)?;
        }
        Ok(())
    }
}

/// All reduced words of length at most `radius`, identity first,
/// then by length and lexicographically within each length.
pub fn ball(rank: usize, radius: usize) -> Vec<Word> {
    let mut out = vec![Word::identity(rank)];
    let mut frontier: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for l in Letter::alphabet(rank) {
                if w.last() == Some(&l.inverse()) {
                    continue;
                }
                let mut ext = w.clone();
                ext.push(l);
                next.push(ext);
            }
        }
        for letters in &next {
            out.push(Word {
                rank,
                letters: letters.clone(),
            });
        }
        frontier = next;
    }
    out
}

/// Closed-form count of the ball: `1 + sum_{d=1..R} 2n (2n-1)^(d-1)`.
pub fn ball_size(rank: usize, radius: usize) -> usize {
    let mut total = 1usize;
    let mut shell = 2 * rank;
    for _ in 0..radius {
        total += shell;
        shell *= 2 * rank - 1;
    }
    total
}
