//! Repeated windows and the events built from them.
//!
//! Genome indices and positions in witnesses are 1-based: genome `m`
//! position `i` is the window `X^m[i, i + len - 1]`.

mod hash;
mod swap;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::model::{cross_entropy_f, Distribution, Sample};

pub(crate) use hash::WindowHashes;
pub use swap::{
    b_event_range, count_b_events, default_eta, find_swap_witness, is_t_event, SwapWitness,
};

/// Two distinct positions carrying the same window.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepeatWitness {
    pub m: usize,
    pub i: usize,
    pub m2: usize,
    pub i2: usize,
    pub len: usize,
    /// Same genome and the two windows share at least one position.
    pub overlapping: bool,
}

impl RepeatWitness {
    fn new(m: usize, i: usize, m2: usize, i2: usize, len: usize) -> Self {
        RepeatWitness {
            m,
            i,
            m2,
            i2,
            len,
            overlapping: m == m2 && i.abs_diff(i2) < len,
        }
    }
}

impl fmt::Display for RepeatWitness {
    /// `S m i m2 i2 len ovl`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "S {} {} {} {} {} {}",
            self.m,
            self.i,
            self.m2,
            self.i2,
            self.len,
            u8::from(self.overlapping)
        )
    }
}

fn check_window_len(sample: &Sample, len: usize) -> Result<()> {
    let n = sample.genome_length();
    if len == 0 || len > n {
        return Err(Error::out_of_range(
            "len",
            len,
            format!("1 <= len <= N = {n}"),
        ));
    }
    Ok(())
}

/// Window equivalence classes, numbered in order of first occurrence.
struct WindowClasses {
    class_of: Vec<u32>,
    num_classes: usize,
}

/// Assign every window position (flattened as `m * W + i`) to a class of
/// equal windows. With `stop_at_first_repeat`, returns `None` as soon as a
/// second member of any class is seen.
fn window_classes(
    sample: &Sample,
    len: usize,
    stop_at_first_repeat: bool,
) -> Option<WindowClasses> {
    let hashes = WindowHashes::new(sample, len);
    let per = hashes.windows_per_genome();
    let total = per * sample.num_genomes();
    let mut class_of = Vec::with_capacity(total);
    // first class with a given hash, then a chain through classes sharing it
    let mut head: HashMap<u64, u32> = HashMap::with_capacity(total);
    let mut chain: Vec<u32> = Vec::new();
    let mut rep: Vec<(usize, usize)> = Vec::new();
    for m in 0..sample.num_genomes() {
        for i in 0..per {
            let h = hashes.get(m, i);
            let mut found = None;
            if let Some(&first) = head.get(&h) {
                let mut c = first;
                loop {
                    if hashes.same(sample, rep[c as usize], (m, i)) {
                        found = Some(c);
                        break;
                    }
                    match chain[c as usize] {
                        u32::MAX => break,
                        next => c = next,
                    }
                }
            }
            let c = match found {
                Some(c) => {
                    if stop_at_first_repeat {
                        return None;
                    }
                    c
                }
                None => {
                    let c = rep.len() as u32;
                    rep.push((m, i));
                    let prev = head.insert(h, c).unwrap_or(u32::MAX);
                    chain.push(prev);
                    c
                }
            };
            class_of.push(c);
        }
    }
    Some(WindowClasses {
        class_of,
        num_classes: rep.len(),
    })
}

/// Every pair of distinct positions with equal length-`len` windows, ordered
/// by `(m, i)` then `(m2, i2)`, each pair reported once with
/// `(m, i) < (m2, i2)`. `limit` truncates the list in that order.
pub fn find_repeats(
    sample: &Sample,
    len: usize,
    limit: Option<usize>,
) -> Result<Vec<RepeatWitness>> {
    check_window_len(sample, len)?;
    let limit = limit.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    if limit == 0 {
        return Ok(out);
    }
    let classes = window_classes(sample, len, false).expect("no early stop");
    let per = sample.genome_length() - len + 1;

    // positions grouped by class, in position order
    let mut offsets = vec![0usize; classes.num_classes + 1];
    for &c in &classes.class_of {
        offsets[c as usize + 1] += 1;
    }
    for c in 0..classes.num_classes {
        offsets[c + 1] += offsets[c];
    }
    let mut fill = offsets.clone();
    let mut members = vec![0usize; classes.class_of.len()];
    for (p, &c) in classes.class_of.iter().enumerate() {
        members[fill[c as usize]] = p;
        fill[c as usize] += 1;
    }

    let mut cursor = offsets.clone();
    for (p, &c) in classes.class_of.iter().enumerate() {
        let c = c as usize;
        cursor[c] += 1;
        for &q in &members[cursor[c]..offsets[c + 1]] {
            out.push(RepeatWitness::new(
                p / per + 1,
                p % per + 1,
                q / per + 1,
                q % per + 1,
                len,
            ));
            if out.len() == limit {
                return Ok(out);
            }
        }
    }
    Ok(out)
}

/// True iff no two distinct positions carry the same length-`len` window.
pub fn all_segments_distinct(sample: &Sample, len: usize) -> Result<bool> {
    check_window_len(sample, len)?;
    Ok(window_classes(sample, len, true).is_some())
}

/// Probability that two independent windows of length `len`, drawn from
/// `p` and `q`, are equal: `(sum_a p(a) q(a))^len = exp(-len F(p, q))`.
/// Only valid for windows that do not share positions.
pub fn repeat_probability(p: &Distribution, q: &Distribution, len: usize) -> Result<f64> {
    if len == 0 {
        return Ok(1.0);
    }
    let f = cross_entropy_f(p, q)?;
    Ok(if f.is_infinite() {
        0.0
    } else {
        (-(len as f64) * f).exp()
    })
}

/// Union bound on an overlapping `(L-1)`-repeat: `M N L exp(-(L-1) h_star / 2)`.
pub fn overlap_repeat_bound(m: usize, n: usize, l: usize, h_star: f64) -> f64 {
    m as f64 * n as f64 * l as f64 * (-((l as f64) - 1.0) * h_star / 2.0).exp()
}

/// Union bound on a non-overlapping `(L-1)`-repeat: `M^2 N^2 exp(-(L-1) f_lower)`.
pub fn nonoverlap_repeat_bound(m: usize, n: usize, l: usize, f_lower: f64) -> f64 {
    let mn = m as f64 * n as f64;
    mn * mn * (-((l as f64) - 1.0) * f_lower).exp()
}

/// Bound on a four-genome swap configuration: `exp(-2 N h_star)`.
pub fn t_event_bound(n: usize, h_star: f64) -> f64 {
    (-2.0 * n as f64 * h_star).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Alphabet;
    use proptest::prelude::*;

    fn s(g: &[&str]) -> Sample {
        Sample::from_strs(g).unwrap()
    }

    #[test]
    fn find_repeats_examples() {
        assert_eq!(
            find_repeats(&s(&["AAA"]), 2, None).unwrap(),
            vec![RepeatWitness::new(1, 1, 1, 2, 2)]
        );
        assert!(find_repeats(&s(&["AAA"]), 2, None).unwrap()[0].overlapping);
        let abab = find_repeats(&s(&["ABAB"]), 2, None).unwrap();
        assert_eq!(abab, vec![RepeatWitness::new(1, 1, 1, 3, 2)]);
        assert!(!abab[0].overlapping);
        let cross = find_repeats(&s(&["ABC", "XBC"]), 2, None).unwrap();
        assert_eq!(cross, vec![RepeatWitness::new(1, 2, 2, 2, 2)]);
        assert!(!cross[0].overlapping);
    }

    #[test]
    fn find_repeats_limit_and_range() {
        let all = find_repeats(&s(&["AAAAAA"]), 2, None).unwrap();
        assert_eq!(all.len(), 10);
        assert_eq!(
            find_repeats(&s(&["AAAAAA"]), 2, Some(3)).unwrap(),
            all[..3].to_vec()
        );
        assert!(find_repeats(&s(&["AAA"]), 0, None).is_err());
        assert!(find_repeats(&s(&["AAA"]), 4, None).is_err());
    }

    #[test]
    fn dump_line() {
        assert_eq!(
            RepeatWitness::new(1, 1, 1, 2, 2).to_string(),
            "S 1 1 1 2 2 1"
        );
    }

    #[test]
    fn distinct_examples() {
        assert!(all_segments_distinct(&s(&["ABCD"]), 2).unwrap());
        assert!(!all_segments_distinct(&s(&["AABA"]), 1).unwrap());
        assert!(!all_segments_distinct(&s(&["ABC", "ABD"]), 2).unwrap());
    }

    #[test]
    fn repeat_probability_examples() {
        let u = Distribution::uniform(Alphabet::dna());
        assert_eq!(repeat_probability(&u, &u, 0).unwrap(), 1.0);
        assert!((repeat_probability(&u, &u, 5).unwrap() - 9.765625e-4).abs() < 1e-15);
        let ab = Alphabet::new(b"AB").unwrap();
        let p = Distribution::point_mass(ab.clone(), b'A').unwrap();
        let q = Distribution::point_mass(ab, b'B').unwrap();
        assert_eq!(repeat_probability(&p, &q, 3).unwrap(), 0.0);
    }

    #[test]
    fn bound_examples() {
        let ln4 = 4f64.ln();
        assert_eq!(overlap_repeat_bound(3, 7, 1, ln4), 21.0);
        assert_eq!(nonoverlap_repeat_bound(3, 7, 1, ln4), 441.0);
        let e1 = overlap_repeat_bound(4, 2000, 26, ln4);
        assert!((e1 - 0.006_198_883_056_640_622).abs() < 1e-15, "{e1}");
        let e2 = nonoverlap_repeat_bound(4, 2000, 26, ln4);
        assert!((e2 / 5.684_341_886_080_796e-8 - 1.0).abs() < 1e-12, "{e2}");
    }

    /// All-pairs reference.
    fn brute_repeats(sample: &Sample, len: usize) -> Vec<RepeatWitness> {
        let g = sample.genomes();
        let per = sample.genome_length() - len + 1;
        let pos: Vec<(usize, usize)> = (0..g.len())
            .flat_map(|m| (0..per).map(move |i| (m, i)))
            .collect();
        let mut out = Vec::new();
        for (a, &(m, i)) in pos.iter().enumerate() {
            for &(m2, i2) in &pos[a + 1..] {
                if g[m][i..i + len] == g[m2][i2..i2 + len] {
                    out.push(RepeatWitness::new(m + 1, i + 1, m2 + 1, i2 + 1, len));
                }
            }
        }
        out
    }

    fn sample_over(
        symbols: &'static [u8],
        max_m: usize,
        max_n: usize,
    ) -> impl Strategy<Value = Sample> {
        (1..=max_m, 1..=max_n).prop_flat_map(move |(m, n)| {
            prop::collection::vec(
                prop::collection::vec(prop::sample::select(symbols.to_vec()), n),
                m,
            )
            .prop_map(move |g| Sample::new(Alphabet::new(symbols).unwrap(), g).unwrap())
        })
    }

    /// Genomes glued from a few 10-symbol blocks, so long repeats are common.
    fn block_sample() -> impl Strategy<Value = Sample> {
        const BLOCKS: [&[u8]; 3] = [b"ABCDEFGHIJ", b"JIHGFEDCBA", b"AACCEEGGII"];
        (1usize..4, 2usize..7).prop_flat_map(|(m, blocks)| {
            prop::collection::vec(prop::collection::vec(0usize..3, blocks), m).prop_map(|picks| {
                let g = picks
                    .iter()
                    .map(|p| p.iter().flat_map(|&b| BLOCKS[b].iter().copied()).collect())
                    .collect();
                Sample::new(Alphabet::new(b"ABCDEFGHIJ").unwrap(), g).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn matches_all_pairs_reference(sample in sample_over(b"AB", 6, 30), len in 1usize..30) {
            prop_assume!(len <= sample.genome_length());
            let found = find_repeats(&sample, len, None).unwrap();
            prop_assert_eq!(&found, &brute_repeats(&sample, len));
            prop_assert_eq!(found.is_empty(), all_segments_distinct(&sample, len).unwrap());
        }

        #[test]
        fn polynomial_path_matches_reference(sample in block_sample(), len in 17usize..40) {
            // 4 bits per symbol: windows longer than 16 use the polynomial hash
            prop_assume!(len <= sample.genome_length());
            prop_assert_eq!(find_repeats(&sample, len, None).unwrap(), brute_repeats(&sample, len));
        }
    }
}
