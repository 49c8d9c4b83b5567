use crate::error::{Error, Result};
use crate::model::Alphabet;

/// Absolute tolerance on the sum of a probability vector.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// A probability vector over an [`Alphabet`], one entry per symbol in
/// alphabet order. Entries are renormalized to sum to exactly one on
/// construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    alphabet: Alphabet,
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(alphabet: Alphabet, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != alphabet.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} probabilities for an alphabet of {} symbols",
                probs.len(),
                alphabet.len()
            )));
        }
        if let Some(bad) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidDistribution(format!(
                "entry {bad} is not a finite nonnegative number"
            )));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {total}, not 1"
            )));
        }
        let probs = probs.into_iter().map(|p| p / total).collect();
        Ok(Distribution { alphabet, probs })
    }

    pub fn uniform(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        Distribution {
            alphabet,
            probs: vec![1.0 / k as f64; k],
        }
    }

    pub fn point_mass(alphabet: Alphabet, symbol: u8) -> Result<Self> {
        let idx = alphabet.index_of(symbol).ok_or_else(|| {
            Error::InvalidDistribution(format!("symbol {:?} not in alphabet", symbol as char))
        })?;
        let mut probs = vec![0.0; alphabet.len()];
        probs[idx] = 1.0;
        Ok(Distribution { alphabet, probs })
    }

    /// Parse `uniform` or a comma-separated list of reals in alphabet order.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.eq_ignore_ascii_case("uniform") {
            return Ok(Distribution::uniform(alphabet.clone()));
        }
        let probs = text
            .split(',')
            .map(|tok| {
                tok.trim().parse::<f64>().map_err(|_| {
                    Error::InvalidDistribution(format!("cannot parse {:?} as a real", tok.trim()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Distribution::new(alphabet.clone(), probs)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn is_uniform(&self) -> bool {
        let u = 1.0 / self.probs.len() as f64;
        self.probs
            .iter()
            .all(|p| (p - u).abs() <= NORMALIZATION_TOLERANCE)
    }

    /// `sum_a p(a) q(a)`.
    pub fn inner_product(&self, other: &Distribution) -> Result<f64> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(self
            .probs
            .iter()
            .zip(&other.probs)
            .map(|(p, q)| p * q)
            .sum())
    }

    pub fn to_csv(&self) -> String {
        self.probs
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}
