use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::model::Sample;
use crate::repeats::WindowHashes;

/// Two genomes `X^m = a w b` and `X^m2 = c w d` sharing the length-`L` word
/// `w` at position `j`, with `a != c` and `b != d`. Exchanging the suffixes
/// gives a different sample with the same read multiset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SwapWitness {
    pub m: usize,
    pub m2: usize,
    pub j: usize,
    pub w: Vec<u8>,
}

impl SwapWitness {
    pub fn read_length(&self) -> usize {
        self.w.len()
    }

    /// Check every structural condition against `sample`: indices in range,
    /// both genomes carry `w` at `j`, prefixes differ, suffixes differ.
    pub fn verify(&self, sample: &Sample) -> Result<()> {
        self.check_windows(sample)?;
        let g = sample.genomes();
        let (x, y) = (&g[self.m - 1], &g[self.m2 - 1]);
        let (pre, suf) = (self.j - 1, self.j - 1 + self.read_length());
        if x[..pre] == y[..pre] {
            return Err(Error::StaleWitness("prefixes a and c are equal".into()));
        }
        if x[suf..] == y[suf..] {
            return Err(Error::StaleWitness("suffixes b and d are equal".into()));
        }
        Ok(())
    }

    /// True iff no pair of other genomes `(m3, m4)` completes a four-genome
    /// configuration with this witness. Checked by direct enumeration.
    pub fn excludes_t_events(&self, sample: &Sample) -> bool {
        let big_m = sample.num_genomes();
        let l = self.read_length();
        (1..=big_m)
            .filter(|&k| k != self.m && k != self.m2)
            .all(|m3| {
                (1..=big_m)
                    .filter(|&k| k != self.m && k != self.m2 && k != m3)
                    .all(|m4| {
                        !is_t_event(sample, l, self.j, [self.m, self.m2, m3, m4]).unwrap_or(false)
                    })
            })
    }

    /// Indices, position and the shared word only, without the `a != c`,
    /// `b != d` conditions.
    pub(crate) fn check_windows(&self, sample: &Sample) -> Result<()> {
        let big_m = sample.num_genomes();
        let n = sample.genome_length();
        let l = self.read_length();
        if self.m == 0 || self.m2 == 0 || self.m > big_m || self.m2 > big_m || self.m == self.m2 {
            return Err(Error::StaleWitness(format!(
                "genome indices ({}, {}) invalid for M = {big_m}",
                self.m, self.m2
            )));
        }
        if l == 0 || self.j < 2 || self.j + l > n {
            return Err(Error::StaleWitness(format!(
                "position j = {} with |w| = {l} outside 2..={}",
                self.j,
                n.saturating_sub(l)
            )));
        }
        let g = sample.genomes();
        let at = self.j - 1..self.j - 1 + l;
        if g[self.m - 1][at.clone()] != self.w[..] || g[self.m2 - 1][at] != self.w[..] {
            return Err(Error::StaleWitness(
                "w does not occur at j in both genomes".into(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for SwapWitness {
    /// `SWAP m m2 j w`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SWAP {} {} {} {}",
            self.m,
            self.m2,
            self.j,
            String::from_utf8_lossy(&self.w)
        )
    }
}

/// `min(delta / 2, (1 - delta) / 2) / 2` with `delta = L / N`.
pub fn default_eta(l: usize, n: usize) -> f64 {
    let delta = l as f64 / n as f64;
    (delta / 2.0).min((1.0 - delta) / 2.0) / 2.0
}

// slack for eta * N landing a hair off an integer
const RANGE_SLACK: f64 = 1e-9;

/// Positions `j` (1-based) with `eta N <= j <= (1 - eta) N - L`, intersected
/// with `2 <= j <= N - L`. `None` when empty.
pub fn b_event_range(n: usize, l: usize, eta: f64) -> Option<RangeInclusive<usize>> {
    let lo = ((eta * n as f64 - RANGE_SLACK).ceil().max(2.0)) as i64;
    let hi = ((1.0 - eta) * n as f64 + RANGE_SLACK).floor() as i64 - l as i64;
    let hi = hi.min(n as i64 - l as i64);
    (hi >= lo).then_some(lo as usize..=hi as usize)
}

fn check_eta(eta: f64) -> Result<()> {
    if !(0.0..0.5).contains(&eta) {
        return Err(Error::out_of_range("eta", eta, "0 <= eta < 1/2"));
    }
    Ok(())
}

/// True iff `X^{m1} = a w b`, `X^{m2} = c w d`, `X^{m3} = a w d` and
/// `X^{m4} = c w b` with `|a| = |c| = j - 1` and `|w| = l`. Indices are
/// 1-based and must be mutually distinct.
pub fn is_t_event(sample: &Sample, l: usize, j: usize, genomes: [usize; 4]) -> Result<bool> {
    let big_m = sample.num_genomes();
    let n = sample.genome_length();
    if l == 0 || l > n || j < 2 || j + l > n {
        return Err(Error::out_of_range(
            "j",
            j,
            format!("2 <= j <= N - L = {}", n as i64 - l as i64),
        ));
    }
    for (k, &g) in genomes.iter().enumerate() {
        if g == 0 || g > big_m {
            return Err(Error::out_of_range(
                "genome index",
                g,
                format!("1..={big_m}"),
            ));
        }
        if genomes[..k].contains(&g) {
            return Err(Error::out_of_range("genome index", g, "mutually distinct"));
        }
    }
    let g = sample.genomes();
    let [x1, x2, x3, x4] = genomes.map(|k| &g[k - 1]);
    let head = j - 1 + l;
    let shared_word = x1[j - 1..head] == x2[j - 1..head];
    Ok(shared_word
        && x3[..head] == x1[..head]
        && x4[..head] == x2[..head]
        && x4[head..] == x1[head..]
        && x3[head..] == x2[head..])
}

/// Visit every B event `(m, m2, j)`: 0-based genomes `m < m2` whose length-`l`
/// windows at 1-based position `j` are equal, for `j` in `range`.
fn for_each_b_event(
    sample: &Sample,
    l: usize,
    range: RangeInclusive<usize>,
    mut visit: impl FnMut(usize, usize, usize),
) {
    let hashes = WindowHashes::new(sample, l);
    let big_m = sample.num_genomes();
    let mut keyed: Vec<(u64, usize)> = Vec::with_capacity(big_m);
    let mut class: Vec<usize> = Vec::with_capacity(big_m);
    for j in range {
        keyed.clear();
        keyed.extend((0..big_m).map(|m| (hashes.get(m, j - 1), m)));
        keyed.sort_unstable();
        let mut start = 0;
        while start < keyed.len() {
            let mut end = start + 1;
            while end < keyed.len() && keyed[end].0 == keyed[start].0 {
                end += 1;
            }
            let group = &keyed[start..end];
            if group.len() > 1 {
                if hashes.is_exact() {
                    for (a, &(_, m)) in group.iter().enumerate() {
                        for &(_, m2) in &group[a + 1..] {
                            visit(m, m2, j);
                        }
                    }
                } else {
                    // split the hash bucket into classes of truly equal windows
                    class.clear();
                    class.extend(group.iter().map(|&(_, m)| m));
                    while let Some(first) = class.first().copied() {
                        let (same, rest): (Vec<usize>, Vec<usize>) = class
                            .iter()
                            .partition(|&&m| hashes.same(sample, (first, j - 1), (m, j - 1)));
                        for (a, &m) in same.iter().enumerate() {
                            for &m2 in &same[a + 1..] {
                                visit(m, m2, j);
                            }
                        }
                        class = rest;
                    }
                }
            }
            start = end;
        }
    }
}

/// Number of B events: pairs `m < m2` and positions `j` in
/// [`b_event_range`] with equal length-`l` windows.
pub fn count_b_events(sample: &Sample, l: usize, eta: f64) -> Result<u64> {
    check_eta(eta)?;
    let n = sample.genome_length();
    if l == 0 || l > n {
        return Err(Error::out_of_range("L", l, format!("1 <= L <= N = {n}")));
    }
    let Some(range) = b_event_range(n, l, eta) else {
        return Ok(0);
    };
    let mut z = 0u64;
    for_each_b_event(sample, l, range, |_, _, _| z += 1);
    Ok(z)
}

/// Longest common prefix and suffix of genome pairs, computed on demand.
struct PairEnds<'a> {
    genomes: &'a [Vec<u8>],
    cache: HashMap<(usize, usize), (usize, usize)>,
}

impl<'a> PairEnds<'a> {
    fn new(sample: &'a Sample) -> Self {
        PairEnds {
            genomes: sample.genomes(),
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, a: usize, b: usize) -> (usize, usize) {
        let key = (a.min(b), a.max(b));
        let genomes = self.genomes;
        *self.cache.entry(key).or_insert_with(|| {
            let (x, y) = (&genomes[key.0], &genomes[key.1]);
            let lcp = x.iter().zip(y.iter()).take_while(|(p, q)| p == q).count();
            let lcs = x
                .iter()
                .rev()
                .zip(y.iter().rev())
                .take_while(|(p, q)| p == q)
                .count();
            (lcp, lcs)
        })
    }

    fn lcp(&mut self, a: usize, b: usize) -> usize {
        if a == b {
            self.genomes[a].len()
        } else {
            self.get(a, b).0
        }
    }

    fn lcs(&mut self, a: usize, b: usize) -> usize {
        if a == b {
            self.genomes[a].len()
        } else {
            self.get(a, b).1
        }
    }
}

/// The first swap witness in `(m, m2, j)` order among B events in the
/// `eta`-restricted range, or `None`.
///
/// A B event qualifies when the prefixes before `j` differ, the suffixes
/// after the shared word differ, and no two other genomes complete the
/// four-genome configuration. Prefix/suffix equality is read off cached
/// longest-common-prefix/suffix lengths, which for random genomes end after
/// a few symbols.
pub fn find_swap_witness(sample: &Sample, l: usize, eta: f64) -> Result<Option<SwapWitness>> {
    check_eta(eta)?;
    let n = sample.genome_length();
    if l == 0 || l + 2 > n {
        return Err(Error::out_of_range(
            "L",
            l,
            format!("1 <= L <= N - 2 = {}", n as i64 - 2),
        ));
    }
    let Some(range) = b_event_range(n, l, eta) else {
        return Ok(None);
    };
    let mut events = Vec::new();
    for_each_b_event(sample, l, range, |m, m2, j| events.push((m, m2, j)));
    events.sort_unstable();

    let big_m = sample.num_genomes();
    let mut ends = PairEnds::new(sample);
    for (m, m2, j) in events {
        let head = j - 1 + l;
        let tail = n - head;
        let (lcp, lcs) = ends.get(m, m2);
        if lcp >= j - 1 || lcs >= tail {
            continue;
        }
        // genomes reading a w d, and c w b
        let awd: Vec<usize> = (0..big_m)
            .filter(|&k| k != m && k != m2 && ends.lcp(k, m) >= head && ends.lcs(k, m2) >= tail)
            .collect();
        let cwb: Vec<usize> = if awd.is_empty() {
            Vec::new()
        } else {
            (0..big_m)
                .filter(|&k| k != m && k != m2 && ends.lcp(k, m2) >= head && ends.lcs(k, m) >= tail)
                .collect()
        };
        let t_event = awd.iter().any(|&m3| {
            cwb.iter().any(|&m4| {
                m4 != m3
                    && is_t_event(sample, l, j, [m + 1, m2 + 1, m3 + 1, m4 + 1]).unwrap_or(false)
            })
        });
        if t_event {
            continue;
        }
        return Ok(Some(SwapWitness {
            m: m + 1,
            m2: m2 + 1,
            j,
            w: sample.genomes()[m][j - 1..head].to_vec(),
        }));
    }
    Ok(None)
}
