use std::fmt;

use crate::error::{Error, Result};

const NO_SYMBOL: u8 = u8::MAX;

/// An ordered set of single-byte symbols. The position of a symbol in the
/// list is its index everywhere else in the crate.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<u8>,
    lookup: [u8; 256],
}

impl Alphabet {
    pub fn new(symbols: &[u8]) -> Result<Self> {
        if symbols.len() < 2 {
            return Err(Error::InvalidAlphabet(format!(
                "needs at least 2 symbols, got {}",
                symbols.len()
            )));
        }
        if symbols.len() > 254 {
            return Err(Error::InvalidAlphabet("more than 254 symbols".into()));
        }
        let mut lookup = [NO_SYMBOL; 256];
        for (idx, &sym) in symbols.iter().enumerate() {
            if !sym.is_ascii_graphic() || sym == b'#' {
                return Err(Error::InvalidAlphabet(format!(
                    "symbol {:?} is not a printable character",
                    sym as char
                )));
            }
            if lookup[sym as usize] != NO_SYMBOL {
                return Err(Error::InvalidAlphabet(format!(
                    "duplicate symbol {:?}",
                    sym as char
                )));
            }
            lookup[sym as usize] = idx as u8;
        }
        Ok(Alphabet {
            symbols: symbols.to_vec(),
            lookup,
        })
    }

    /// `{A, C, G, T}` in that order.
    pub fn dna() -> Self {
        Alphabet::new(b"ACGT").expect("static alphabet")
    }

    /// The DNA alphabet if every byte of `texts` is one of `ACGT`, otherwise
    /// the sorted set of distinct bytes that occur.
    pub fn covering<S: AsRef<[u8]>>(texts: &[S]) -> Result<Self> {
        let mut seen = [false; 256];
        for t in texts {
            for &b in t.as_ref() {
                seen[b as usize] = true;
            }
        }
        let dna = Alphabet::dna();
        if (0..256).all(|b| !seen[b] || dna.contains(b as u8)) {
            return Ok(dna);
        }
        let symbols: Vec<u8> = (0..=255u8).filter(|&b| seen[b as usize]).collect();
        Alphabet::new(&symbols)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> u8 {
        self.symbols[index]
    }

    #[inline]
    pub fn index_of(&self, symbol: u8) -> Option<usize> {
        match self.lookup[symbol as usize] {
            NO_SYMBOL => None,
            idx => Some(idx as usize),
        }
    }

    pub fn contains(&self, symbol: u8) -> bool {
        self.index_of(symbol).is_some()
    }

    /// Bits needed to pack one symbol index.
    pub fn bits_per_symbol(&self) -> u32 {
        usize::BITS - (self.len() - 1).leading_zeros()
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.symbols).expect("alphabet symbols are ASCII")
    }

    pub fn parse(text: &str) -> Result<Self> {
        Alphabet::new(text.trim().as_bytes())
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Alphabet::dna()
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({})", self.as_str())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
