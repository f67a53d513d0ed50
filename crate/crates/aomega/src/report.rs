//! Outcome of an exhaustive identity check.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// A violated instance: the index tuple together with both sides of the
/// identity, so the failure can be re-verified independently.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub tuple: Vec<i64>,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

/// What a checker does when a coefficient evaluation signals a degenerate
/// family parameter (k*a - (k-1) = 0 at the index it needs).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DegeneratePolicy {
    /// Abort the whole check with the error.
    #[default]
    Error,
    /// Treat the tuple as outside the operator's domain: skip it, count it.
    Skip,
}

/// Knobs shared by the exhaustive checkers.
#[derive(Clone, Debug)]
pub struct CheckOptions {
    /// Cap on recorded counterexamples; `None` disables the cap.
    pub max_counterexamples: Option<usize>,
    pub degenerate: DegeneratePolicy,
    /// Full 5-tuple enumeration for the fundamental identity instead of the
    /// ordered reduction.
    pub strict: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            max_counterexamples: Some(32),
            degenerate: DegeneratePolicy::Error,
            strict: false,
        }
    }
}

impl CheckOptions {
    pub fn skip_degenerate(mut self) -> Self {
        self.degenerate = DegeneratePolicy::Skip;
        self
    }

    pub fn uncapped(mut self) -> Self {
        self.max_counterexamples = None;
        self
    }

    fn cap(&self) -> usize {
        // A cap of zero would break `passed <=> counterexamples empty`.
        self.max_counterexamples.unwrap_or(usize::MAX).max(1)
    }
}

/// Result of checking one identity over a finite tuple set.
///
/// `passed` holds exactly when no violation was found; the counterexample
/// list may be truncated by the cap but is never empty for a failed check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub passed: bool,
    pub tuples_checked: u64,
    pub counterexamples: Vec<Counterexample>,
    /// Tuples excluded because a coefficient was undefined there (degenerate
    /// parameter under `DegeneratePolicy::Skip`). Not part of the wire format.
    #[serde(skip)]
    pub degenerate_skipped: u64,
}

impl Report {
    pub fn empty() -> Self {
        Report {
            passed: true,
            tuples_checked: 0,
            counterexamples: Vec::new(),
            degenerate_skipped: 0,
        }
    }

    pub fn count(&mut self, n: u64) {
        self.tuples_checked += n;
    }

    pub fn skip_degenerate_tuple(&mut self) {
        self.degenerate_skipped += 1;
    }

    pub fn record(&mut self, cex: Counterexample, opts: &CheckOptions) {
        self.passed = false;
        if self.counterexamples.len() < opts.cap() {
            self.counterexamples.push(cex);
        }
    }

    /// Order-preserving merge; associative for a fixed cap.
    pub fn absorb(&mut self, other: Report, opts: &CheckOptions) {
        self.passed &= other.passed;
        self.tuples_checked += other.tuples_checked;
        self.degenerate_skipped += other.degenerate_skipped;
        let room = opts.cap().saturating_sub(self.counterexamples.len());
        self.counterexamples
            .extend(other.counterexamples.into_iter().take(room));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cex(t: &[i64]) -> Counterexample {
        Counterexample {
            tuple: t.to_vec(),
            lhs: Scalar::one(),
            rhs: Scalar::zero(),
        }
    }

    #[test]
    fn passed_iff_no_counterexamples() {
        let opts = CheckOptions::default();
        let mut r = Report::empty();
        r.count(10);
        assert!(r.passed && r.counterexamples.is_empty());
        r.record(cex(&[1, 2, 3]), &opts);
        assert!(!r.passed && !r.counterexamples.is_empty());
    }

    #[test]
    fn cap_truncates_but_keeps_failure() {
        let opts = CheckOptions {
            max_counterexamples: Some(2),
            ..CheckOptions::default()
        };
        let mut r = Report::empty();
        for i in 0..5 {
            r.record(cex(&[i]), &opts);
        }
        assert!(!r.passed);
        assert_eq!(r.counterexamples.len(), 2);
    }

    #[test]
    fn merge_is_associative() {
        let opts = CheckOptions {
            max_counterexamples: Some(3),
            ..CheckOptions::default()
        };
        let part = |ids: &[i64]| {
            let mut r = Report::empty();
            r.count(ids.len() as u64);
            for &i in ids {
                r.record(cex(&[i]), &opts);
            }
            r
        };
        let (a, b, c) = (part(&[1, 2]), part(&[3]), part(&[4, 5]));
        let mut left = a.clone();
        left.absorb(b.clone(), &opts);
        left.absorb(c.clone(), &opts);
        let mut bc = b;
        bc.absorb(c, &opts);
        let mut right = a;
        right.absorb(bc, &opts);
        assert_eq!(left, right);
    }

    #[test]
    fn json_shape() {
        let mut r = Report::empty();
        r.count(3);
        r.record(cex(&[0, 1]), &CheckOptions::default());
        assert_eq!(
            r.to_json(),
            r#"{"passed":false,"tuples_checked":3,"counterexamples":[{"tuple":[0,1],"lhs":"1","rhs":"0"}]}"#
        );
    }
}
