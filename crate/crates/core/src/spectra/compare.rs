use super::{MergedEntry, Spectrum, MERGE_TOL};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct MultiplicityMismatch<T> {
    pub left_value: T,
    pub left_multiplicity: u64,
    pub right_value: T,
    pub right_multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport<T> {
    /// Merged values only present on the left, with multiplicity.
    pub only_left: Vec<(T, u64)>,
    pub only_right: Vec<(T, u64)>,
    pub multiplicity_mismatches: Vec<MultiplicityMismatch<T>>,
    pub matched: usize,
    pub equal: bool,
}

impl<T: Real> CompareReport<T> {
    /// True if every value matched and every right multiplicity is `factor`
    /// times the left one.
    pub fn is_scaled_by(&self, factor: u64) -> bool {
        self.only_left.is_empty()
            && self.only_right.is_empty()
            && self.multiplicity_mismatches.iter().all(|m| m.right_multiplicity == factor * m.left_multiplicity)
    }
}

/// Greedy value matching within `tol` after merging coincident entries.
pub fn spectrum_compare<T: Real>(s1: &Spectrum<T>, s2: &Spectrum<T>, tol: T) -> Result<CompareReport<T>> {
    if s1.lambda_max != s2.lambda_max {
        return Err(Error::Precondition(format!(
            "spectra truncated at different cutoffs ({} vs {})",
            s1.lambda_max, s2.lambda_max
        )));
    }
    if !(tol >= T::zero()) {
        return Err(Error::Parameter("comparison tolerance must be nonnegative".into()));
    }
    let merge = T::c(MERGE_TOL);
    let a: Vec<MergedEntry<T>> = s1.merged(merge);
    let b: Vec<MergedEntry<T>> = s2.merged(merge);
    let mut report = CompareReport {
        only_left: Vec::new(),
        only_right: Vec::new(),
        multiplicity_mismatches: Vec::new(),
        matched: 0,
        equal: false,
    };
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (x, y) = (&a[i], &b[j]);
        if (x.value - y.value).abs() <= tol {
            report.matched += 1;
            if x.multiplicity != y.multiplicity {
                report.multiplicity_mismatches.push(MultiplicityMismatch {
                    left_value: x.value,
                    left_multiplicity: x.multiplicity,
                    right_value: y.value,
                    right_multiplicity: y.multiplicity,
                });
            }
            i += 1;
            j += 1;
        } else if x.value < y.value {
            report.only_left.push((x.value, x.multiplicity));
            i += 1;
        } else {
            report.only_right.push((y.value, y.multiplicity));
            j += 1;
        }
    }
    report.only_left.extend(a[i..].iter().map(|e| (e.value, e.multiplicity)));
    report.only_right.extend(b[j..].iter().map(|e| (e.value, e.multiplicity)));
    report.equal =
        report.only_left.is_empty() && report.only_right.is_empty() && report.multiplicity_mismatches.is_empty();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::super::{heisenberg_spectrum, HeisenbergGeometry};
    use super::*;

    #[test]
    fn self_comparison() {
        let g = HeisenbergGeometry::new(1, 1.0, 1.0).unwrap();
        let s = heisenberg_spectrum(&g, "+-+".parse().unwrap(), 15.0).unwrap();
        let r = spectrum_compare(&s, &s, 0.0).unwrap();
        assert!(r.equal);
        assert!(r.matched > 0);
    }

    #[test]
    fn mismatched_cutoff() {
        let g = HeisenbergGeometry::new(1, 1.0, 1.0).unwrap();
        let s = heisenberg_spectrum(&g, "+++".parse().unwrap(), 15.0).unwrap();
        let t = heisenberg_spectrum(&g, "+++".parse().unwrap(), 16.0).unwrap();
        assert!(matches!(spectrum_compare(&s, &t, 0.0), Err(Error::Precondition(_))));
    }

    #[test]
    fn detects_differences() {
        let g = HeisenbergGeometry::new(1, 1.0, 1.0).unwrap();
        let s = heisenberg_spectrum(&g, "+++".parse().unwrap(), 15.0).unwrap();
        let t = heisenberg_spectrum(&g, "-++".parse().unwrap(), 15.0).unwrap();
        let r = spectrum_compare(&s, &t, 1e-12).unwrap();
        assert!(!r.equal);
        assert!(!r.only_left.is_empty());
    }
}
