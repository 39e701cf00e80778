//! Label patterns such as `0^{2}X^{1}0`: fixed runs of bits and runs of free
//! bits `X`, written most significant first. A pattern denotes the set of all
//! labels obtained by filling in its free bits.

use std::fmt;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Piece {
    Fixed { bit: bool, count: u32 },
    Free(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BitPattern {
    pieces: Vec<Piece>,
}

impl BitPattern {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fixed(mut self, bit: bool, count: u32) -> Self {
        if count > 0 {
            self.pieces.push(Piece::Fixed { bit, count });
        }
        self
    }

    pub fn zeros(self, count: u32) -> Self {
        self.fixed(false, count)
    }

    pub fn ones(self, count: u32) -> Self {
        self.fixed(true, count)
    }

    pub fn free(mut self, count: u32) -> Self {
        if count > 0 {
            self.pieces.push(Piece::Free(count));
        }
        self
    }

    /// Parses `0`, `1` and `X` tokens, each optionally followed by a one-digit
    /// `^k` or a braced `^{k}`. Whitespace is ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = BitPattern::new();
        let mut i = 0;
        while i < chars.len() {
            let symbol = chars[i];
            i += 1;
            let mut count = 1;
            if chars.get(i) == Some(&'^') {
                i += 1;
                let braced = chars.get(i) == Some(&'{');
                if braced {
                    i += 1;
                }
                let start = i;
                // Without braces the exponent is a single digit, so `X^21`
                // means `X^{2}1`.
                while i < chars.len() && chars[i].is_ascii_digit() && (braced || i == start) {
                    i += 1;
                }
                count = chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in pattern '{text}'")))?;
                if braced {
                    if chars.get(i) != Some(&'}') {
                        return Err(Error::Parse(format!("unclosed brace in pattern '{text}'")));
                    }
                    i += 1;
                }
            }
            p = match symbol {
                '0' => p.zeros(count),
                '1' => p.ones(count),
                'X' | 'x' => p.free(count),
                other => {
                    return Err(Error::Parse(format!(
                        "unexpected '{other}' in pattern '{text}'"
                    )))
                }
            };
        }
        Ok(p)
    }

    pub fn width(&self) -> u32 {
        self.pieces
            .iter()
            .map(|p| match p {
                Piece::Fixed { count, .. } | Piece::Free(count) => *count,
            })
            .sum()
    }

    /// All labels matching the pattern, ascending.
    pub fn expand(&self) -> Vec<u32> {
        let mut base = 0u32;
        let mut free_positions = Vec::new();
        let mut pos = self.width();
        for piece in &self.pieces {
            match *piece {
                Piece::Fixed { bit, count } => {
                    for _ in 0..count {
                        pos -= 1;
                        if bit {
                            base |= 1 << pos;
                        }
                    }
                }
                Piece::Free(count) => {
                    for _ in 0..count {
                        pos -= 1;
                        free_positions.push(pos);
                    }
                }
            }
        }
        let mut out: Vec<u32> = (0u32..1 << free_positions.len())
            .map(|fill| {
                free_positions
                    .iter()
                    .enumerate()
                    .fold(base, |acc, (i, &p)| acc | (((fill >> i) & 1) << p))
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn to_set(&self, n: u32) -> Result<VertexSet> {
        if self.width() != n {
            return Err(Error::WidthMismatch {
                expected: n,
                found: self.width(),
            });
        }
        Ok(VertexSet::from_labels(n, self.expand()))
    }
}

impl fmt::Display for BitPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for piece in &self.pieces {
            let (sym, count) = match *piece {
                Piece::Fixed { bit, count } => (if bit { '1' } else { '0' }, count),
                Piece::Free(count) => ('X', count),
            };
            if count == 1 {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{sym}^{{{count}}}")?;
            }
        }
        Ok(())
    }
}
