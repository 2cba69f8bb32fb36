use serde::Serialize;

/// Finite union of disjoint closed intervals, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct IntervalSet {
    intervals: Vec<(f64, f64)>,
}

impl IntervalSet {
    pub fn new() -> Self {
        IntervalSet::default()
    }

    /// Sorts and merges overlapping or touching pieces.
    pub fn from_intervals(mut pieces: Vec<(f64, f64)>) -> Self {
        for &(lo, hi) in &pieces {
            assert!(lo <= hi, "interval [{lo}, {hi}] is reversed");
        }
        pieces.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(pieces.len());
        for (lo, hi) in pieces {
            match out.last_mut() {
                Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                _ => out.push((lo, hi)),
            }
        }
        IntervalSet { intervals: out }
    }

    pub fn insert(&mut self, lo: f64, hi: f64) {
        let mut v = std::mem::take(&mut self.intervals);
        v.push((lo, hi));
        *self = IntervalSet::from_intervals(v);
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn total_length(&self) -> f64 {
        self.intervals.iter().fold(0.0, |acc, (lo, hi)| acc + (hi - lo))
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|&(lo, hi)| lo <= x && x <= hi)
    }

    /// Smallest member `≥ x`, if any.
    pub fn first_at_or_after(&self, x: f64) -> Option<f64> {
        self.intervals
            .iter()
            .find(|&&(_, hi)| hi >= x)
            .map(|&(lo, _)| lo.max(x))
    }

    /// Every interval of `other` lies in one interval of `self` widened by `tol`.
    pub fn covers(&self, other: &IntervalSet, tol: f64) -> bool {
        other
            .intervals
            .iter()
            .all(|&(lo, hi)| self.intervals.iter().any(|&(a, b)| a - tol <= lo && hi <= b + tol))
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut v = self.intervals.clone();
        v.extend_from_slice(&other.intervals);
        IntervalSet::from_intervals(v)
    }

    /// Intersection with `[lo, hi]`.
    pub fn clip(&self, lo: f64, hi: f64) -> IntervalSet {
        let v = self
            .intervals
            .iter()
            .filter_map(|&(a, b)| {
                let (a, b) = (a.max(lo), b.min(hi));
                (a <= b).then_some((a, b))
            })
            .collect();
        IntervalSet { intervals: v }
    }
}

/// Linear measure of a finite union of intervals.
pub fn measure(set: &IntervalSet) -> f64 {
    set.total_length()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measure_examples() {
        assert_eq!(measure(&IntervalSet::new()), 0.0);
        let one = IntervalSet::from_intervals(vec![(0.0, 0.3665129)]);
        assert!((measure(&one) - 0.3665129).abs() < 1e-15);
        let two = IntervalSet::from_intervals(vec![(3.0, 4.5), (1.0, 2.0)]);
        assert_eq!(measure(&two), 2.5);
        assert_eq!(two.intervals(), &[(1.0, 2.0), (3.0, 4.5)]);
    }

    #[test]
    fn merges_overlaps_and_touching() {
        let s = IntervalSet::from_intervals(vec![(0.0, 1.0), (0.5, 2.0), (2.0, 3.0), (5.0, 5.0)]);
        assert_eq!(s.intervals(), &[(0.0, 3.0), (5.0, 5.0)]);
        assert_eq!(s.total_length(), 3.0);
    }

    #[test]
    fn queries() {
        let s = IntervalSet::from_intervals(vec![(1.0, 2.0), (3.0, 4.0)]);
        assert!(s.contains(1.5) && !s.contains(2.5));
        assert_eq!(s.first_at_or_after(0.0), Some(1.0));
        assert_eq!(s.first_at_or_after(1.5), Some(1.5));
        assert_eq!(s.first_at_or_after(2.5), Some(3.0));
        assert_eq!(s.first_at_or_after(4.5), None);
        let inner = IntervalSet::from_intervals(vec![(1.2, 1.8), (3.0, 4.0)]);
        assert!(s.covers(&inner, 0.0));
        assert!(!inner.covers(&s, 0.0));
        assert_eq!(s.clip(1.5, 3.5).intervals(), &[(1.5, 2.0), (3.0, 3.5)]);
    }
}
