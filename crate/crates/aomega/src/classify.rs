//! Finite-support classification at desk scale: exhaustive search over
//! candidate supports, sound necessary-condition pruning, and a recognizer
//! mapping verified operators onto the closed-form families.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::operators::{check_rb_global_finite, scale, HomogeneousOperator};
use crate::report::CheckOptions;
use crate::scalar::{Rat, Scalar};
use crate::window::Window;

/// Search space for finite-support candidates: every assignment of values
/// from `values` to at most `max_support_size` indices of `range` not fixed
/// by `pinned`, with all other indices zero.
#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub range: Window,
    /// Cap on extra support points beyond the pinned ones.
    pub max_support_size: usize,
    /// Candidate nonzero values.
    pub values: Vec<Rat>,
    /// Fixed assignments; zero values pin an index to be off the support.
    pub pinned: BTreeMap<i64, Rat>,
    pub prune: bool,
    /// Cap on the number of candidates the search may enumerate.
    pub budget: u128,
}

impl SearchSpec {
    pub fn new(range: Window, max_support_size: usize, values: Vec<Rat>) -> Result<Self> {
        if values.is_empty() || values.iter().any(Rat::is_zero) {
            return Err(Error::InvalidSpec(
                "the value set must be nonempty and exclude zero".into(),
            ));
        }
        Ok(SearchSpec {
            range,
            max_support_size,
            values,
            pinned: BTreeMap::new(),
            prune: true,
            budget: 10_000_000,
        })
    }

    pub fn pin(mut self, index: i64, value: Rat) -> Self {
        self.pinned.insert(index, value);
        self
    }

    fn candidate_count(&self, free: usize) -> u128 {
        let v = self.values.len() as u128;
        let mut total: u128 = 0;
        for s in 0..=self.max_support_size.min(free) {
            let mut c: u128 = 1;
            for i in 0..s {
                c = c.saturating_mul((free - i) as u128) / (i as u128 + 1);
            }
            total = total.saturating_add(c.saturating_mul(v.saturating_pow(s as u32)));
        }
        total
    }
}

/// A necessary condition violated by a partial assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PruneViolation {
    pub rule: &'static str,
    pub indices: Vec<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PruneReport {
    pub violations: Vec<PruneViolation>,
}

impl PruneReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Reports which necessary conditions of the weight-0 criterion a partial
/// assignment already violates. Every rule instance is evaluated only on
/// fully assigned indices, so the check is sound: it never rules out an
/// assignment that extends to a global Rota-Baxter operator.
pub fn prune_necessary(assign: &BTreeMap<i64, Rat>, w: Window) -> PruneReport {
    prune_with(&|m| assign.get(&m).cloned(), w, usize::MAX)
}

fn prune_with(know: &dyn Fn(i64) -> Option<Rat>, w: Window, stop_after: usize) -> PruneReport {
    let mut report = PruneReport::default();
    let f0 = know(0);
    let f1 = know(1);
    let push = |rule: &'static str, indices: Vec<i64>, report: &mut PruneReport| {
        report.violations.push(PruneViolation { rule, indices });
    };
    let done = |report: &PruneReport| report.violations.len() >= stop_after;

    if let (Some(f0), Some(f1)) = (&f0, &f1) {
        let sum = f0 + f1;
        if !sum.is_zero() {
            // support cannot extend past {0, 1}
            for m in w.iter() {
                if m == 0 || m == 1 {
                    continue;
                }
                if know(m).is_some_and(|v| !v.is_zero()) {
                    push("support-outside-01", vec![m], &mut report);
                    if done(&report) {
                        return report;
                    }
                }
            }
            return report;
        }

        // from here on f(0) + f(1) = 0
        if !f0.is_zero() {
            // antisymmetry about 1/2
            for m in w.iter() {
                if let (Some(u), Some(v)) = (know(m), know(1 - m)) {
                    if !(&u + &v).is_zero() {
                        push("antisymmetry", vec![m, 1 - m], &mut report);
                        if done(&report) {
                            return report;
                        }
                    }
                }
            }
            // cleared half-reciprocal along even pairs: c (u + v) = 2 u v
            let c = f0;
            let half = w.hi().abs().max(w.lo().abs()) / 2 + 1;
            for m in 1..=half {
                if let (Some(u), Some(v)) = (know(2 * m), know(-2 * m)) {
                    if !u.is_zero() && !v.is_zero() {
                        let lhs = c * &(&u + &v);
                        let rhs = &Rat::from_integer(2) * &(&u * &v);
                        if lhs != rhs {
                            push("half-reciprocal", vec![2 * m, -2 * m], &mut report);
                            if done(&report) {
                                return report;
                            }
                        }
                    }
                }
            }
            // nonzero even support reflects to -2k and 1+2k
            for k in w.iter() {
                if know(2 * k).is_some_and(|v| !v.is_zero()) {
                    for idx in [-2 * k, 1 + 2 * k] {
                        if know(idx).is_some_and(|v| v.is_zero()) {
                            push("support-reflection", vec![2 * k, idx], &mut report);
                            if done(&report) {
                                return report;
                            }
                        }
                    }
                }
            }
        }

        // parity-pattern product identities, valid whenever f(0) + f(1) = 0;
        // cubic in f, hence independent of scaling
        let hw = w.hi().abs().max(w.lo().abs()) / 2 + 1;
        let idxs: Vec<i64> = (-hw..=hw).collect();
        for &l in &idxs {
            for &m in &idxs {
                for &n in &idxs {
                    for (rule, i1, i2, i3, out, excluded) in [
                        (
                            "product-identity-odd",
                            2 * l + 1,
                            2 * m + 1,
                            2 * n,
                            2 * (l + m + n) + 1,
                            l == m,
                        ),
                        (
                            "product-identity-even",
                            2 * l + 1,
                            2 * m,
                            2 * n,
                            2 * (l + m + n),
                            m == n,
                        ),
                    ] {
                        if excluded {
                            continue;
                        }
                        let (Some(u1), Some(u2), Some(u3), Some(fo)) =
                            (know(i1), know(i2), know(i3), know(out))
                        else {
                            continue;
                        };
                        let lhs = &(&u1 * &u2) * &u3;
                        let s2 = &(&(&u1 * &u2) + &(&u1 * &u3)) + &(&u2 * &u3);
                        if lhs != &s2 * &fo {
                            push(rule, vec![i1, i2, i3, out], &mut report);
                            if done(&report) {
                                return report;
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

/// Enumerates every finite-support assignment of the search space that is a
/// Rota-Baxter operator of weight 0 globally (decided by the finite
/// reduction, not window truncation). The all-zero assignment is excluded.
pub fn enumerate_rb_finite(spec: &SearchSpec) -> Result<Vec<BTreeMap<i64, Scalar>>> {
    let free: Vec<i64> = spec
        .range
        .iter()
        .filter(|m| !spec.pinned.contains_key(m))
        .collect();
    let candidates = spec.candidate_count(free.len());
    if candidates > spec.budget {
        return Err(Error::SearchSpaceTooLarge {
            candidates,
            budget: spec.budget,
        });
    }

    let mut partial: BTreeMap<i64, Rat> = spec.pinned.clone();
    let mut out = Vec::new();
    let opts = CheckOptions::default();
    dfs(spec, &free, 0, 0, &mut partial, &mut out, &opts);
    Ok(out)
}

fn dfs(
    spec: &SearchSpec,
    free: &[i64],
    pos: usize,
    used: usize,
    partial: &mut BTreeMap<i64, Rat>,
    out: &mut Vec<BTreeMap<i64, Scalar>>,
    opts: &CheckOptions,
) {
    if spec.prune {
        let range = spec.range;
        let know = |m: i64| {
            if let Some(v) = partial.get(&m) {
                Some(v.clone())
            } else if !range.contains(m) {
                // indices outside the range are zero in every candidate
                Some(Rat::zero())
            } else {
                None
            }
        };
        if !prune_with(&know, spec.range, 1).ok() {
            return;
        }
    }
    if pos == free.len() {
        let table: BTreeMap<i64, Scalar> = partial
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(m, v)| (*m, Scalar::Rat(v.clone())))
            .collect();
        if table.is_empty() {
            return;
        }
        if check_rb_global_finite(&table, opts).passed {
            out.push(table);
        }
        return;
    }
    let idx = free[pos];
    partial.insert(idx, Rat::zero());
    dfs(spec, free, pos + 1, used, partial, out, opts);
    if used < spec.max_support_size {
        for v in &spec.values {
            partial.insert(idx, v.clone());
            dfs(spec, free, pos + 1, used + 1, partial, out, opts);
        }
    }
    partial.remove(&idx);
}

/// Which closed-form family a verified operator is, after normalizing by the
/// value at the family's anchor index.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilyMatch {
    R01 { b: Scalar, scaling: Scalar },
    R02 { m0: i64, a: Scalar, scaling: Scalar },
    R03 { m0: i64, s0: i64, a: Scalar, scaling: Scalar },
    R04 { m1: i64, scaling: Scalar },
    R05 { m1: i64, b: Scalar, scaling: Scalar },
    /// Supported inside {0, 1} but with f(0) = 0 (including the zero
    /// operator), which the family catalog's normalization does not label.
    Support01 { f0: Scalar, f1: Scalar },
    NoMatch { support: Vec<i64> },
}

impl FamilyMatch {
    pub fn label(&self) -> &'static str {
        match self {
            FamilyMatch::R01 { .. } => "r01",
            FamilyMatch::R02 { .. } => "r02",
            FamilyMatch::R03 { .. } => "r03",
            FamilyMatch::R04 { .. } => "r04",
            FamilyMatch::R05 { .. } => "r05",
            FamilyMatch::Support01 { .. } => "support-01",
            FamilyMatch::NoMatch { .. } => "none",
        }
    }

    /// Rebuilds the matched operator (family scaled back by the recovered
    /// factor); `None` for unmatched evidence.
    pub fn reconstruct(&self) -> Result<Option<HomogeneousOperator>> {
        let op = match self {
            FamilyMatch::R01 { b, scaling } => {
                Some(scale(&HomogeneousOperator::r01(b.clone()), scaling)?)
            }
            FamilyMatch::R02 { m0, a, scaling } => {
                Some(scale(&HomogeneousOperator::r02(*m0, a.clone())?, scaling)?)
            }
            FamilyMatch::R03 { m0, s0, a, scaling } => Some(scale(
                &HomogeneousOperator::r03(*m0, *s0, a.clone())?,
                scaling,
            )?),
            FamilyMatch::R04 { m1, scaling } => {
                Some(scale(&HomogeneousOperator::r04(*m1)?, scaling)?)
            }
            FamilyMatch::R05 { m1, b, scaling } => {
                Some(scale(&HomogeneousOperator::r05(*m1, b.clone())?, scaling)?)
            }
            FamilyMatch::Support01 { f0, f1 } => Some(HomogeneousOperator::finite([
                (0, f0.clone()),
                (1, f1.clone()),
            ])),
            FamilyMatch::NoMatch { .. } => None,
        };
        Ok(op)
    }

    pub fn to_json(&self) -> Value {
        match self {
            FamilyMatch::R01 { b, scaling } => {
                json!({"label": "r01", "b": b.to_string(), "scaling": scaling.to_string()})
            }
            FamilyMatch::R02 { m0, a, scaling } => {
                json!({"label": "r02", "m0": m0, "a": a.to_string(), "scaling": scaling.to_string()})
            }
            FamilyMatch::R03 { m0, s0, a, scaling } => {
                json!({"label": "r03", "m0": m0, "s0": s0, "a": a.to_string(), "scaling": scaling.to_string()})
            }
            FamilyMatch::R04 { m1, scaling } => {
                json!({"label": "r04", "m1": m1, "scaling": scaling.to_string()})
            }
            FamilyMatch::R05 { m1, b, scaling } => {
                json!({"label": "r05", "m1": m1, "b": b.to_string(), "scaling": scaling.to_string()})
            }
            FamilyMatch::Support01 { f0, f1 } => {
                json!({"label": "support-01", "f0": f0.to_string(), "f1": f1.to_string()})
            }
            FamilyMatch::NoMatch { support } => json!({"label": "none", "support": support}),
        }
    }
}

/// Identifies which family a verified operator belongs to, using the given
/// window as evidence. Degenerate indices contribute no evidence; the match
/// is confirmed by pointwise comparison over the whole window (with poles
/// required to coincide) before it is returned.
pub fn recognize(op: &HomogeneousOperator, evidence: Window) -> Result<FamilyMatch> {
    let mut support: Vec<(i64, Scalar)> = Vec::new();
    for m in evidence.iter() {
        match op.eval(m) {
            Ok(v) if !v.is_zero() => support.push((m, v)),
            Ok(_) => {}
            Err(Error::DegenerateParameter { .. }) => {}
            Err(e) => return Err(e),
        }
    }

    if support.iter().all(|(m, _)| *m == 0 || *m == 1) {
        let f0 = op.eval(0)?;
        let f1 = op.eval(1)?;
        if !f0.is_zero() {
            return Ok(FamilyMatch::R01 {
                b: f1.checked_div(&f0)?,
                scaling: f0,
            });
        }
        return Ok(FamilyMatch::Support01 { f0, f1 });
    }

    if let Some(table) = op.to_finite_support() {
        let keys: Vec<i64> = table.keys().copied().collect();
        let no_match = FamilyMatch::NoMatch { support: keys.clone() };
        return Ok(match keys.as_slice() {
            [m1] if *m1 != 0 && *m1 != 1 => FamilyMatch::R04 {
                m1: *m1,
                scaling: table[m1].clone(),
            },
            [0, 1] => FamilyMatch::R01 {
                b: table[&1].checked_div(&table[&0])?,
                scaling: table[&0].clone(),
            },
            [p, q] if p + q == 1 => {
                let m1 = *q.max(p);
                let scaling = table[&m1].clone();
                FamilyMatch::R05 {
                    b: table[&(1 - m1)].checked_div(&scaling)?,
                    m1,
                    scaling,
                }
            }
            _ => no_match,
        });
    }

    recognize_supporter(op, evidence, &support)
}

fn recognize_supporter(
    op: &HomogeneousOperator,
    evidence: Window,
    support: &[(i64, Scalar)],
) -> Result<FamilyMatch> {
    let no_match = || FamilyMatch::NoMatch {
        support: support.iter().map(|(m, _)| *m).collect(),
    };
    let evens: Vec<(i64, Scalar)> = support
        .iter()
        .filter(|(m, _)| m % 2 == 0)
        .cloned()
        .collect();
    let has_zero = support.iter().any(|(m, _)| *m == 0);

    // Determine the progression: period 2 m0 and shift 2 s0 (zero shift for
    // the family anchored at 0).
    let (m0, s0) = if has_zero {
        let period = evens
            .iter()
            .map(|(m, _)| *m)
            .filter(|m| *m > 0)
            .min()
            .or_else(|| evens.iter().map(|(m, _)| *m).filter(|m| *m < 0).max().map(i64::abs));
        match period {
            Some(p) if p > 0 && p % 2 == 0 => (p / 2, 0),
            _ => return Ok(no_match()),
        }
    } else {
        if evens.len() < 2 {
            return Ok(no_match());
        }
        let gaps: Vec<i64> = evens.windows(2).map(|w| w[1].0 - w[0].0).collect();
        let period = gaps.iter().copied().min().unwrap();
        if period <= 0 || period % 2 != 0 {
            return Ok(no_match());
        }
        let m0 = period / 2;
        let shift = evens[0].0.rem_euclid(2 * m0);
        if shift % 2 != 0 {
            return Ok(no_match());
        }
        let s0 = shift / 2;
        if s0 < 1 || s0 >= m0 {
            return Ok(no_match());
        }
        (m0, s0)
    };

    // Affine fit: 1/f at even progression points k is (k (a-1) + 1) / c.
    let kv: Vec<(i64, &Scalar)> = evens
        .iter()
        .filter_map(|(m, v)| {
            let num = m - 2 * s0;
            (num % (2 * m0) == 0).then(|| (num / (2 * m0), v))
        })
        .collect();
    if kv.len() < 2 {
        return Ok(no_match());
    }
    let (k1, v1) = (kv[0].0, kv[0].1);
    let (k2, v2) = (kv[1].0, kv[1].1);
    let w1 = v1.recip()?;
    let w2 = v2.recip()?;
    let slope = (&w2 - &w1).checked_div(&Scalar::from_integer(k2 - k1))?;
    let intercept = &w1 - &slope.mul_int(k1);
    if intercept.is_zero() {
        return Ok(no_match());
    }
    let c = intercept.recip()?;
    let a = &(&slope * &c) + &Scalar::one();

    let family = if s0 == 0 {
        HomogeneousOperator::r02(m0, a.clone())?
    } else {
        HomogeneousOperator::r03(m0, s0, a.clone())?
    };
    let candidate = scale(&family, &c)?;
    for m in evidence.iter() {
        let ours = op.eval(m);
        let theirs = candidate.eval(m);
        let same = match (&ours, &theirs) {
            (Ok(u), Ok(v)) => u == v,
            (
                Err(Error::DegenerateParameter { .. }),
                Err(Error::DegenerateParameter { .. }),
            ) => true,
            _ => false,
        };
        if !same {
            return Ok(no_match());
        }
    }
    Ok(if s0 == 0 {
        FamilyMatch::R02 { m0, a, scaling: c }
    } else {
        FamilyMatch::R03 { m0, s0, a, scaling: c }
    })
}
