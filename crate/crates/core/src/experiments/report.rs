use crate::error::Result;
use crate::model::entropy::{cross_entropy_range, lower_threshold_constant, min_renyi2};
use crate::model::{upper_threshold, ProblemSpec};
use crate::repeats::{
    b_event_range, default_eta, nonoverlap_repeat_bound, overlap_repeat_bound, t_event_bound,
};

/// Analytic bounds and thresholds for one problem `(M, N, L, P)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundsReport {
    /// Minimum Rényi entropy over the genome distributions.
    pub h_star: f64,
    /// Minimum of `F(p^m, p^m')` over all pairs, `m = m'` included.
    pub f_lower: f64,
    /// Maximum of `F(p^m, p^m')` over all pairs.
    pub f_star: f64,
    /// Bound on an overlapping `(L-1)`-repeat.
    pub overlap_bound: f64,
    /// Bound on a non-overlapping `(L-1)`-repeat.
    pub nonoverlap_bound: f64,
    /// Their sum, which bounds the probability of non-identifiability.
    pub nonidentifiability_bound: f64,
    pub eta: f64,
    /// Largest over `j` in the B-event range of
    /// `exp(-(j-1) F_*) + exp(-(N-(j+L)+1) F_*) + M^2 exp(-2 N H_*)`.
    /// `None` when the range is empty.
    pub exclusion_bound: Option<f64>,
    /// `None` when `h_star` is zero.
    pub upper_threshold: Option<f64>,
    /// `None` when `F` is infinite for some pair.
    pub lower_threshold: Option<f64>,
}

/// [`bounds_report`] with the default `eta` for the spec's `L` and `N`.
pub fn theorem_bounds_report(spec: &ProblemSpec) -> Result<BoundsReport> {
    bounds_report(spec, default_eta(spec.read_length(), spec.genome_length()))
}

pub fn bounds_report(spec: &ProblemSpec, eta: f64) -> Result<BoundsReport> {
    let (m, n, l) = (spec.num_genomes(), spec.genome_length(), spec.read_length());
    let h_star = min_renyi2(spec.dists());
    let (f_lower, f_star) = cross_entropy_range(spec.dists())?;
    let overlap_bound = overlap_repeat_bound(m, n, l, h_star);
    let nonoverlap_bound = nonoverlap_repeat_bound(m, n, l, f_lower);
    let t_term = (m * m) as f64 * t_event_bound(n, h_star);
    let exclusion_bound = b_event_range(n, l, eta).map(|range| {
        range
            .map(|j| {
                (-((j - 1) as f64) * f_lower).exp()
                    + (-((n + 1 - (j + l)) as f64) * f_lower).exp()
                    + t_term
            })
            .fold(0.0, f64::max)
    });
    let upper = upper_threshold(m, n, h_star, 0.0).ok();
    let lower = lower_threshold_constant(f_star, f_lower)
        .ok()
        .map(|c| c * ((m as f64) * (n as f64)).ln());
    Ok(BoundsReport {
        h_star,
        f_lower,
        f_star,
        overlap_bound,
        nonoverlap_bound,
        nonidentifiability_bound: overlap_bound + nonoverlap_bound,
        eta,
        exclusion_bound,
        upper_threshold: upper,
        lower_threshold: lower,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Alphabet, Distribution};

    fn uniform(m: usize, n: usize, l: usize) -> ProblemSpec {
        ProblemSpec::homogeneous(m, n, l, Distribution::uniform(Alphabet::dna())).unwrap()
    }

    #[test]
    fn theorem_one_point() {
        let r = theorem_bounds_report(&uniform(4, 2000, 26)).unwrap();
        assert!((r.overlap_bound - 0.006_198_883_056_640_622).abs() < 1e-15);
        assert!((r.nonoverlap_bound / 5.684_341_886_080_796e-8 - 1.0).abs() < 1e-12);
        assert!((r.upper_threshold.unwrap() - 12.965_784_284_662_087).abs() < 1e-9);
        assert!((r.lower_threshold.unwrap() - 6.482_892_142_331_043).abs() < 1e-9);
    }

    #[test]
    fn bounds_decay_in_read_length() {
        let mut prev = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
        for l in 10..60 {
            let r = bounds_report(&uniform(4, 2000, l), 0.1).unwrap();
            let cur = (
                r.overlap_bound,
                r.nonoverlap_bound,
                r.exclusion_bound.unwrap(),
            );
            assert!(cur.0 < prev.0 && cur.1 < prev.1 && cur.2 <= prev.2);
            prev = cur;
        }
        assert!(prev.0 < 1e-10 && prev.1 < 1e-10);
    }

    #[test]
    fn exclusion_bound_depends_on_eta() {
        let spec = uniform(16, 10_000, 8);
        // default eta puts j = 2 in range: exp(-F_*) = 1/4 dominates
        let r = theorem_bounds_report(&spec).unwrap();
        let e = r.exclusion_bound.unwrap();
        assert!((e - 0.25).abs() < 1e-12, "{e}");
        let r = bounds_report(&spec, 0.1).unwrap();
        assert!(r.exclusion_bound.unwrap() < 1e-9);
    }

    #[test]
    fn disjoint_supports_drop_lower_threshold() {
        let a = Alphabet::new(b"AB").unwrap();
        let spec = ProblemSpec::new(
            2,
            100,
            5,
            vec![
                Distribution::point_mass(a.clone(), b'A').unwrap(),
                Distribution::point_mass(a, b'B').unwrap(),
            ],
        )
        .unwrap();
        let r = theorem_bounds_report(&spec).unwrap();
        assert_eq!(r.f_star, f64::INFINITY);
        assert_eq!(r.lower_threshold, None);
        assert_eq!(r.upper_threshold, None);
    }
}
