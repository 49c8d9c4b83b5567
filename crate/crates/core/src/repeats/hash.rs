use crate::model::Sample;

const MERSENNE_61: u64 = (1 << 61) - 1;
const POLY_BASE: u64 = 0x01F3_D5B7_9A1C_4E27 % MERSENNE_61;

#[inline]
fn mul_mod(a: u64, b: u64) -> u64 {
    let p = a as u128 * b as u128;
    let lo = (p as u64) & MERSENNE_61;
    let hi = (p >> 61) as u64;
    let s = lo + hi;
    if s >= MERSENNE_61 {
        s - MERSENNE_61
    } else {
        s
    }
}

/// Rolling hashes of every length-`len` window of every genome.
///
/// When `len * bits_per_symbol <= 64` the hash is the packed window itself
/// and equal hashes mean equal windows. Longer windows use a polynomial hash
/// modulo `2^61 - 1`, and callers confirm equality on the bytes.
pub(crate) struct WindowHashes {
    len: usize,
    exact: bool,
    hashes: Vec<Vec<u64>>,
}

impl WindowHashes {
    pub(crate) fn new(sample: &Sample, len: usize) -> Self {
        debug_assert!(len >= 1 && len <= sample.genome_length());
        let alphabet = sample.alphabet();
        let bits = alphabet.bits_per_symbol() as usize;
        let exact = len * bits <= 64;
        let encode = |b: u8| alphabet.index_of(b).expect("sample validated") as u64;
        let hashes = sample
            .genomes()
            .iter()
            .map(|g| {
                if exact {
                    packed_windows(g, len, bits, encode)
                } else {
                    poly_windows(g, len, encode)
                }
            })
            .collect();
        WindowHashes { len, exact, hashes }
    }

    pub(crate) fn is_exact(&self) -> bool {
        self.exact
    }

    /// Hash of the window starting at 0-based `start` of genome `m`.
    #[inline]
    pub(crate) fn get(&self, m: usize, start: usize) -> u64 {
        self.hashes[m][start]
    }

    pub(crate) fn windows_per_genome(&self) -> usize {
        self.hashes.first().map_or(0, Vec::len)
    }

    /// Exact window equality, using the hash as a filter.
    #[inline]
    pub(crate) fn same(&self, sample: &Sample, a: (usize, usize), b: (usize, usize)) -> bool {
        if self.get(a.0, a.1) != self.get(b.0, b.1) {
            return false;
        }
        self.exact || {
            let g = sample.genomes();
            g[a.0][a.1..a.1 + self.len] == g[b.0][b.1..b.1 + self.len]
        }
    }
}

fn packed_windows(g: &[u8], len: usize, bits: usize, encode: impl Fn(u8) -> u64) -> Vec<u64> {
    let width = len * bits;
    let mask = if width == 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    };
    let mut out = Vec::with_capacity(g.len() + 1 - len);
    let mut h = 0u64;
    for (i, &b) in g.iter().enumerate() {
        h = ((h << bits) | encode(b)) & mask;
        if i + 1 >= len {
            out.push(h);
        }
    }
    out
}

fn poly_windows(g: &[u8], len: usize, encode: impl Fn(u8) -> u64) -> Vec<u64> {
    // weight of the symbol leaving the window
    let lead = (1..len).fold(1u64, |acc, _| mul_mod(acc, POLY_BASE));
    let mut out = Vec::with_capacity(g.len() + 1 - len);
    let mut h = 0u64;
    for (i, &b) in g.iter().enumerate() {
        if i >= len {
            let gone = mul_mod(encode(g[i - len]) + 1, lead);
            h = (h + MERSENNE_61 - gone) % MERSENNE_61;
        }
        h = (mul_mod(h, POLY_BASE) + encode(b) + 1) % MERSENNE_61;
        if i + 1 >= len {
            out.push(h);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct_poly(w: &[u8], encode: impl Fn(u8) -> u64) -> u64 {
        w.iter().fold(0u64, |h, &b| {
            (mul_mod(h, POLY_BASE) + encode(b) + 1) % MERSENNE_61
        })
    }

    #[test]
    fn rolling_poly_matches_direct() {
        let s = Sample::from_strs(&["ACGTTGCAACGGTACCAGTTAGCAGGATCCAGATTACAGATTACA"]).unwrap();
        let a = s.alphabet().clone();
        let enc = |b: u8| a.index_of(b).unwrap() as u64;
        let g = &s.genomes()[0];
        for len in [1, 5, 33, 40] {
            let rolled = poly_windows(g, len, enc);
            for (i, w) in g.windows(len).enumerate() {
                assert_eq!(rolled[i], direct_poly(w, enc));
            }
        }
    }

    #[test]
    fn packed_is_injective_on_windows() {
        let s = Sample::from_strs(&["ACGTACGTAAAACCCC"]).unwrap();
        let h = WindowHashes::new(&s, 4);
        assert!(h.is_exact());
        let g = &s.genomes()[0];
        for i in 0..h.windows_per_genome() {
            for k in 0..h.windows_per_genome() {
                assert_eq!(h.get(0, i) == h.get(0, k), g[i..i + 4] == g[k..k + 4]);
            }
        }
    }

    #[test]
    fn long_windows_switch_to_polynomial() {
        let g = "ACGT".repeat(20);
        let s = Sample::from_strs(&[g.as_str()]).unwrap();
        let h = WindowHashes::new(&s, 33);
        assert!(!h.is_exact());
        assert!(h.same(&s, (0, 0), (0, 4)));
        assert!(!h.same(&s, (0, 0), (0, 1)));
    }
}
