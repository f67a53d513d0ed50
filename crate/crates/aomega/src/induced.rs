//! Induced 3-Lie brackets built from a Rota-Baxter operator, verification
//! that they are 3-Lie algebras carrying the same operator, and crosschecks
//! of the closed-form multiplication tables of the five families.
//!
//! For weight lambda the induced bracket of basis vectors expands over the
//! nonempty subsets I of the three argument positions: each subset
//! contributes lambda^(|I|-1) times the source bracket with R applied at the
//! positions outside I. The general evaluation performs that subset sum
//! literally; the weight-0 closed form (the pairwise-product symmetric
//! function times D) is a separate fast path and the two are tested to agree.

use std::collections::BTreeMap;

use crate::alie::{
    check_fundamental_identity, check_rota_baxter, det_d_int, eval_policy, par_rows, Ev,
    GradedCoeff,
};
use crate::error::{Error, Result};
use crate::operators::{lambda_k, HomogeneousOperator};
use crate::report::{CheckOptions, Counterexample, DegeneratePolicy, Report};
use crate::scalar::Scalar;
use crate::window::Window;

/// Coefficient of the induced bracket on the basis triple (l, m, n), by the
/// literal subset-sum expansion.
pub fn induced_coeff(
    op: &HomogeneousOperator,
    lambda: &Scalar,
    l: i64,
    m: i64,
    n: i64,
) -> Result<Scalar> {
    let d = det_d_int(l, m, n);
    if d == 0 {
        // every subset term carries the source bracket as a factor
        return Ok(Scalar::zero());
    }
    let f = [op.eval(l)?, op.eval(m)?, op.eval(n)?];
    let mut acc = Scalar::zero();
    for mask in 1u32..8 {
        let mut term = match mask.count_ones() {
            1 => Scalar::one(),
            2 => lambda.clone(),
            _ => lambda * lambda,
        };
        for (i, fi) in f.iter().enumerate() {
            if mask & (1 << i) == 0 {
                term = &term * fi;
            }
        }
        acc = &acc + &term;
    }
    Ok(acc.mul_int(d))
}

/// Weight-0 closed form: (f(l)f(m) + f(l)f(n) + f(m)f(n)) D(l, m, n).
pub fn induced_coeff_weight0(
    op: &HomogeneousOperator,
    l: i64,
    m: i64,
    n: i64,
) -> Result<Scalar> {
    let d = det_d_int(l, m, n);
    if d == 0 {
        return Ok(Scalar::zero());
    }
    let (fl, fm, fn_) = (op.eval(l)?, op.eval(m)?, op.eval(n)?);
    let s2 = &(&(&fl * &fm) + &(&fl * &fn_)) + &(&fm * &fn_);
    Ok(s2.mul_int(d))
}

/// The induced coefficient function as a reusable bracket coefficient.
pub fn induced_graded_coeff(op: &HomogeneousOperator, lambda: &Scalar) -> GradedCoeff {
    let op = op.clone();
    let lambda = lambda.clone();
    let label = if lambda.is_zero() {
        "induced".to_string()
    } else {
        format!("induced(lambda={lambda})")
    };
    GradedCoeff::new(label, move |l, m, n| {
        if lambda.is_zero() {
            induced_coeff_weight0(&op, l, m, n)
        } else {
            induced_coeff(&op, &lambda, l, m, n)
        }
    })
}

/// An induced algebra with its coefficient function and the materialized
/// table of nonzero coefficients on ordered triples of a window.
pub struct InducedAlgebra {
    pub lambda: Scalar,
    pub coeff: GradedCoeff,
    pub window: Window,
    /// Nonzero coefficients on triples l < m < n; other orderings follow by
    /// the permutation sign.
    pub table: BTreeMap<(i64, i64, i64), Scalar>,
}

/// Materializes the induced bracket on ordered triples of the window,
/// omitting zeros.
pub fn build_table(
    op: &HomogeneousOperator,
    lambda: &Scalar,
    w: Window,
    opts: &CheckOptions,
) -> Result<InducedAlgebra> {
    let coeff = induced_graded_coeff(op, lambda);
    let mut table = BTreeMap::new();
    let idx: Vec<i64> = w.iter().collect();
    for (i, &l) in idx.iter().enumerate() {
        for (j, &m) in idx.iter().enumerate().skip(i + 1) {
            for &n in idx.iter().skip(j + 1) {
                match eval_policy(coeff.eval(l, m, n), opts.degenerate)? {
                    Ev::Val(v) if !v.is_zero() => {
                        table.insert((l, m, n), v);
                    }
                    Ev::Val(_) | Ev::Degenerate => {}
                }
            }
        }
    }
    Ok(InducedAlgebra {
        lambda: lambda.clone(),
        coeff,
        window: w,
        table,
    })
}

/// Outcome of checking that an induced bracket is a 3-Lie algebra and that
/// the source operator is still Rota-Baxter on it.
#[derive(Clone, Debug)]
pub struct InducedVerification {
    pub fundamental: Report,
    pub rota_baxter: Report,
}

impl InducedVerification {
    pub fn passed(&self) -> bool {
        self.fundamental.passed && self.rota_baxter.passed
    }
}

/// Runs the fundamental-identity check of the induced coefficient function
/// and the weight-lambda Rota-Baxter check of the operator against it.
pub fn verify_induced(
    op: &HomogeneousOperator,
    lambda: &Scalar,
    w: Window,
    opts: &CheckOptions,
) -> Result<InducedVerification> {
    let coeff = induced_graded_coeff(op, lambda);
    let fundamental = check_fundamental_identity(&coeff, w, opts)?;
    let rota_baxter = check_rota_baxter(|m| op.eval(m), &coeff, lambda, w, opts)?;
    Ok(InducedVerification {
        fundamental,
        rota_baxter,
    })
}

/// One closed-form table entry: input indices, the predicted coefficient,
/// and the predicted output index.
struct TableEntry {
    inputs: (i64, i64, i64),
    coeff: Scalar,
    out_index: i64,
}

enum EntryOutcome {
    Entry(TableEntry),
    /// The entry's coefficient is undefined: the parameter degenerates at
    /// this progression index.
    Degenerate(i64),
}

use EntryOutcome::{Degenerate, Entry};

/// Compares the closed-form multiplication table of the operator's family
/// against the independently computed induced coefficients, over every
/// instance whose input indices lie in the window. Reports disagreements
/// (in value or output index) as counterexamples carrying both values.
pub fn crosscheck_closed_forms(
    op: &HomogeneousOperator,
    w: Window,
    opts: &CheckOptions,
) -> Result<Report> {
    let entries = match op {
        HomogeneousOperator::FamilyR01 { b } => table_r01(b, w),
        HomogeneousOperator::FamilyR02 { m0, a } => table_r02(*m0, a, w),
        HomogeneousOperator::FamilyR03 { m0, s0, a } => table_r03(*m0, *s0, a, w),
        HomogeneousOperator::FamilyR05 { m1, b } => table_r05(*m1, b, w),
        _ => {
            return Err(Error::InvalidSpec(
                "closed-form tables exist for families r01, r02, r03, and r05".into(),
            ))
        }
    };
    let policy = opts.degenerate;
    par_rows(entries, opts, |outcome| {
        let mut report = Report::empty();
        report.count(1);
        let entry = match outcome {
            Entry(e) => e,
            Degenerate(k) => match policy {
                DegeneratePolicy::Skip => {
                    report.skip_degenerate_tuple();
                    return Ok(report);
                }
                DegeneratePolicy::Error => return Err(Error::DegenerateParameter { k }),
            },
        };
        let (l, m, n) = entry.inputs;
        let computed = match eval_policy(induced_coeff_weight0(op, l, m, n), policy)? {
            Ev::Val(v) => v,
            Ev::Degenerate => {
                report.skip_degenerate_tuple();
                return Ok(report);
            }
        };
        if computed != entry.coeff || l + m + n - 1 != entry.out_index {
            report.record(
                Counterexample {
                    tuple: vec![l, m, n],
                    lhs: entry.coeff,
                    rhs: computed,
                },
                opts,
            );
        }
        Ok(report)
    })
}

/// [L_0, L_1, L_m] has coefficient b (2m - 1 + (-1)^m) for m outside {0, 1}.
fn table_r01(b: &Scalar, w: Window) -> Vec<EntryOutcome> {
    let mut out = Vec::new();
    if !(w.contains(0) && w.contains(1)) {
        return out;
    }
    for m in w.iter() {
        if m == 0 || m == 1 {
            continue;
        }
        let parity = if m % 2 == 0 { 1 } else { -1 };
        out.push(Entry(TableEntry {
            inputs: (0, 1, m),
            coeff: b.mul_int(2 * m - 1 + parity),
            out_index: m,
        }));
    }
    out
}

/// [L_{m1}, L_{1-m1}, L_m] has coefficient b D(m1, 1-m1, m) for every m.
fn table_r05(m1: i64, b: &Scalar, w: Window) -> Vec<EntryOutcome> {
    let mut out = Vec::new();
    if !(w.contains(m1) && w.contains(1 - m1)) {
        return out;
    }
    for m in w.iter() {
        if m == m1 || m == 1 - m1 {
            continue;
        }
        out.push(Entry(TableEntry {
            inputs: (m1, 1 - m1, m),
            coeff: b.mul_int(det_d_int(m1, 1 - m1, m)),
            out_index: m,
        }));
    }
    out
}

/// Parameter ranges shared by the supporter-family tables.
struct TableCtx<'a> {
    a: &'a Scalar,
    w: Window,
    /// k with the even progression point in the window.
    ks_even: Vec<i64>,
    /// k with the odd progression point in the window.
    ks_odd: Vec<i64>,
    /// m with 2m in the window and off the supporter.
    ms_even: Vec<i64>,
    /// m with 2m+1 in the window and off the supporter.
    ms_odd: Vec<i64>,
}

/// All k whose progression point could land in the window.
fn k_span(w: Window) -> std::ops::RangeInclusive<i64> {
    let b = w.lo().abs().max(w.hi().abs()) / 2 + 1;
    -b..=b
}

impl TableCtx<'_> {
    /// The family coefficient denominator at progression index k, or None
    /// when the parameter is degenerate there.
    fn lam(&self, k: i64) -> Option<Scalar> {
        let v = lambda_k(self.a, k);
        (!v.is_zero()).then_some(v)
    }
}

/// Emits an entry with coefficient num / prod(lams), or a degenerate marker
/// when one of the lambda factors vanishes.
fn frac_entry(
    inputs: (i64, i64, i64),
    num: Scalar,
    lams: &[(i64, Option<Scalar>)],
    out_index: i64,
) -> EntryOutcome {
    let mut den = Scalar::one();
    for (k, lam) in lams {
        match lam {
            Some(v) => den = &den * v,
            None => return Degenerate(*k),
        }
    }
    let coeff = num
        .checked_div(&den)
        .expect("denominator is a product of nonzero factors");
    Entry(TableEntry {
        inputs,
        coeff,
        out_index,
    })
}

fn table_r02(m0: i64, a: &Scalar, w: Window) -> Vec<EntryOutcome> {
    let ctx = TableCtx {
        a,
        w,
        ks_even: k_span(w).filter(|k| w.contains(2 * m0 * k)).collect(),
        ks_odd: k_span(w).filter(|k| w.contains(1 - 2 * m0 * k)).collect(),
        ms_even: ((w.lo() / 2 - 1)..=(w.hi() / 2 + 1))
            .filter(|m| w.contains(2 * m) && m % m0 != 0)
            .collect(),
        ms_odd: ((w.lo() / 2 - 1)..=(w.hi() / 2 + 1))
            .filter(|m| w.contains(2 * m + 1) && m % m0 != 0)
            .collect(),
    };
    let int = Scalar::from_integer;
    let mut out = Vec::new();

    if ctx.w.contains(0) && ctx.w.contains(1) {
        for &m in &ctx.ms_even {
            out.push(frac_entry((0, 1, 2 * m), int(-4 * m), &[], 2 * m));
        }
        for &m in &ctx.ms_odd {
            out.push(frac_entry((0, 1, 2 * m + 1), int(-4 * m), &[], 2 * m + 1));
        }
    }
    for &k1 in &ctx.ks_odd {
        let l1 = (k1, ctx.lam(k1));
        if ctx.w.contains(0) {
            for &m in &ctx.ms_even {
                out.push(frac_entry(
                    (0, 1 - 2 * m0 * k1, 2 * m),
                    int(-4 * m),
                    std::slice::from_ref(&l1),
                    2 * m - 2 * m0 * k1,
                ));
            }
            for &m in &ctx.ms_odd {
                out.push(frac_entry(
                    (0, 1 - 2 * m0 * k1, 2 * m + 1),
                    int(-4 * m - 4 * m0 * k1),
                    std::slice::from_ref(&l1),
                    2 * m - 2 * m0 * k1 + 1,
                ));
            }
        }
        if ctx.w.contains(1) {
            for &m in &ctx.ms_even {
                out.push(frac_entry(
                    (1, 1 - 2 * m0 * k1, 2 * m),
                    int(-4 * m0 * k1),
                    std::slice::from_ref(&l1),
                    2 * m - 2 * m0 * k1 + 1,
                ));
            }
        }
    }
    for &k1 in &ctx.ks_even {
        let l1 = (k1, ctx.lam(k1));
        if ctx.w.contains(0) {
            for &m in &ctx.ms_odd {
                out.push(frac_entry(
                    (0, 2 * m0 * k1, 2 * m + 1),
                    int(-4 * m0 * k1),
                    std::slice::from_ref(&l1),
                    2 * m + 2 * m0 * k1,
                ));
            }
        }
        if ctx.w.contains(1) {
            for &m in &ctx.ms_even {
                out.push(frac_entry(
                    (1, 2 * m0 * k1, 2 * m),
                    int(-(4 * m0 * k1 - 4 * m)),
                    std::slice::from_ref(&l1),
                    2 * m + 2 * m0 * k1,
                ));
            }
            for &m in &ctx.ms_odd {
                out.push(frac_entry(
                    (1, 2 * m0 * k1, 2 * m + 1),
                    int(4 * m),
                    std::slice::from_ref(&l1),
                    2 * m + 2 * m0 * k1 + 1,
                ));
            }
        }
    }
    // numerators that mention the lambda factors themselves; a missing factor
    // already marks the whole entry degenerate, so zero stands in for them
    let diff_minus_one = |x: &(i64, Option<Scalar>), y: &(i64, Option<Scalar>)| match (&x.1, &y.1)
    {
        (Some(lx), Some(ly)) => &(lx - ly) - &Scalar::one(),
        _ => Scalar::zero(),
    };
    let one_minus_sum = |x: &(i64, Option<Scalar>), y: &(i64, Option<Scalar>)| match (&x.1, &y.1)
    {
        (Some(lx), Some(ly)) => &(&Scalar::one() - lx) - ly,
        _ => Scalar::zero(),
    };
    let diff_third = |x: &(i64, Option<Scalar>),
                      y: &(i64, Option<Scalar>),
                      z: &(i64, Option<Scalar>)| match (&x.1, &y.1, &z.1) {
        (Some(lx), Some(ly), Some(lz)) => &(lx - ly) - lz,
        _ => Scalar::zero(),
    };
    for &k1 in &ctx.ks_even {
        let l1 = (k1, ctx.lam(k1));
        for &k2 in &ctx.ks_odd {
            let l2 = (k2, ctx.lam(k2));
            if ctx.w.contains(0) {
                out.push(frac_entry(
                    (0, 2 * m0 * k1, 1 - 2 * m0 * k2),
                    int(-4 * m0 * k1) * diff_minus_one(&l2, &l1),
                    &[l1.clone(), l2.clone()],
                    2 * m0 * (k1 - k2),
                ));
            }
            if ctx.w.contains(1) {
                out.push(frac_entry(
                    (1, 2 * m0 * k1, 1 - 2 * m0 * k2),
                    int(4 * m0 * k2) * diff_minus_one(&l1, &l2),
                    &[l1.clone(), l2.clone()],
                    2 * m0 * (k1 - k2) + 1,
                ));
            }
            for &m in &ctx.ms_even {
                out.push(frac_entry(
                    (2 * m0 * k1, 1 - 2 * m0 * k2, 2 * m),
                    int(-(4 * m - 4 * m0 * k1)),
                    &[l1.clone(), l2.clone()],
                    2 * m + 2 * m0 * (k1 - k2),
                ));
            }
            for &m in &ctx.ms_odd {
                out.push(frac_entry(
                    (2 * m0 * k1, 1 - 2 * m0 * k2, 2 * m + 1),
                    int(-(4 * m + 4 * m0 * k2)),
                    &[l1.clone(), l2.clone()],
                    2 * m + 2 * m0 * (k1 - k2) + 1,
                ));
            }
        }
    }
    for &k1 in &ctx.ks_odd {
        let l1 = (k1, ctx.lam(k1));
        for &k2 in &ctx.ks_odd {
            let l2 = (k2, ctx.lam(k2));
            if ctx.w.contains(0) {
                out.push(frac_entry(
                    (0, 1 - 2 * m0 * k1, 1 - 2 * m0 * k2),
                    int(4 * m0 * (k1 - k2)) * one_minus_sum(&l2, &l1),
                    &[l1.clone(), l2.clone()],
                    -2 * m0 * (k1 + k2) + 1,
                ));
            }
            for &m in &ctx.ms_even {
                out.push(frac_entry(
                    (1 - 2 * m0 * k1, 1 - 2 * m0 * k2, 2 * m),
                    int(4 * m0 * (k1 - k2)),
                    &[l1.clone(), l2.clone()],
                    2 * m - 2 * m0 * (k1 + k2) + 1,
                ));
            }
        }
    }
    for &k1 in &ctx.ks_even {
        let l1 = (k1, ctx.lam(k1));
        for &k2 in &ctx.ks_even {
            let l2 = (k2, ctx.lam(k2));
            if ctx.w.contains(1) {
                out.push(frac_entry(
                    (1, 2 * m0 * k1, 2 * m0 * k2),
                    int(4 * m0 * (k1 - k2)) * one_minus_sum(&l2, &l1),
                    &[l1.clone(), l2.clone()],
                    2 * m0 * (k1 + k2),
                ));
            }
            for &m in &ctx.ms_odd {
                out.push(frac_entry(
                    (2 * m0 * k1, 2 * m0 * k2, 2 * m + 1),
                    int(4 * m0 * (k1 - k2)),
                    &[l1.clone(), l2.clone()],
                    2 * m + 2 * m0 * (k1 + k2),
                ));
            }
            for &k3 in &ctx.ks_odd {
                let l3 = (k3, ctx.lam(k3));
                out.push(frac_entry(
                    (2 * m0 * k1, 2 * m0 * k2, 1 - 2 * m0 * k3),
                    int(4 * m0 * (k1 - k2)) * diff_third(&l3, &l2, &l1),
                    &[l1.clone(), l2.clone(), l3.clone()],
                    2 * m0 * (k1 + k2 - k3),
                ));
            }
        }
        for &k2 in &ctx.ks_odd {
            let l2 = (k2, ctx.lam(k2));
            for &k3 in &ctx.ks_odd {
                let l3 = (k3, ctx.lam(k3));
                out.push(frac_entry(
                    (2 * m0 * k1, 1 - 2 * m0 * k2, 1 - 2 * m0 * k3),
                    int(4 * m0 * (k2 - k3)) * diff_third(&l1, &l2, &l3),
                    &[l1.clone(), l2.clone(), l3.clone()],
                    2 * m0 * (k1 - k2 - k3) + 1,
                ));
            }
        }
    }
    out
}

fn table_r03(m0: i64, s0: i64, a: &Scalar, w: Window) -> Vec<EntryOutcome> {
    let ctx = TableCtx {
        a,
        w,
        ks_even: k_span(w)
            .filter(|k| w.contains(2 * m0 * k + 2 * s0))
            .collect(),
        ks_odd: k_span(w)
            .filter(|k| w.contains(1 - 2 * m0 * k - 2 * s0))
            .collect(),
        ms_even: ((w.lo() / 2 - 1)..=(w.hi() / 2 + 1))
            .filter(|m| w.contains(2 * m) && (m - s0) % m0 != 0)
            .collect(),
        ms_odd: ((w.lo() / 2 - 1)..=(w.hi() / 2 + 1))
            .filter(|m| w.contains(2 * m + 1) && (m + s0) % m0 != 0)
            .collect(),
    };
    let int = Scalar::from_integer;
    let even_idx = |k: i64| 2 * m0 * k + 2 * s0;
    let odd_idx = |k: i64| 1 - 2 * m0 * k - 2 * s0;
    let diff_third = |x: &(i64, Option<Scalar>),
                      y: &(i64, Option<Scalar>),
                      z: &(i64, Option<Scalar>)| match (&x.1, &y.1, &z.1) {
        (Some(lx), Some(ly), Some(lz)) => &(lx - ly) - lz,
        _ => Scalar::zero(),
    };
    let mut out = Vec::new();

    for &k1 in &ctx.ks_even {
        let l1 = (k1, ctx.lam(k1));
        for &k2 in &ctx.ks_even {
            let l2 = (k2, ctx.lam(k2));
            for &k3 in &ctx.ks_odd {
                let l3 = (k3, ctx.lam(k3));
                out.push(frac_entry(
                    (even_idx(k1), even_idx(k2), odd_idx(k3)),
                    int(4 * m0 * (k1 - k2)) * diff_third(&l3, &l2, &l1),
                    &[l1.clone(), l2.clone(), l3.clone()],
                    2 * m0 * (k1 + k2 - k3) + 2 * s0,
                ));
            }
            for &m in &ctx.ms_odd {
                out.push(frac_entry(
                    (even_idx(k1), even_idx(k2), 2 * m + 1),
                    int(4 * m0 * (k1 - k2)),
                    &[l1.clone(), l2.clone()],
                    2 * m + 2 * m0 * (k1 + k2) + 4 * s0,
                ));
            }
        }
        for &k2 in &ctx.ks_odd {
            let l2 = (k2, ctx.lam(k2));
            for &k3 in &ctx.ks_odd {
                let l3 = (k3, ctx.lam(k3));
                out.push(frac_entry(
                    (even_idx(k1), odd_idx(k2), odd_idx(k3)),
                    int(4 * m0 * (k2 - k3)) * diff_third(&l1, &l2, &l3),
                    &[l1.clone(), l2.clone(), l3.clone()],
                    2 * m0 * (k1 - k2 - k3) - 2 * s0 + 1,
                ));
            }
            for &m in &ctx.ms_odd {
                out.push(frac_entry(
                    (even_idx(k1), odd_idx(k2), 2 * m + 1),
                    int(-4 * (m + m0 * k2 + s0)),
                    &[l1.clone(), l2.clone()],
                    2 * m + 2 * m0 * (k1 - k2) + 1,
                ));
            }
            for &m in &ctx.ms_even {
                out.push(frac_entry(
                    (even_idx(k1), odd_idx(k2), 2 * m),
                    int(-4 * (m - m0 * k1 - s0)),
                    &[l1.clone(), l2.clone()],
                    2 * m + 2 * m0 * (k1 - k2),
                ));
            }
        }
    }
    for &k1 in &ctx.ks_odd {
        let l1 = (k1, ctx.lam(k1));
        for &k2 in &ctx.ks_odd {
            let l2 = (k2, ctx.lam(k2));
            for &m in &ctx.ms_even {
                out.push(frac_entry(
                    (odd_idx(k1), odd_idx(k2), 2 * m),
                    int(4 * m0 * (k1 - k2)),
                    &[l1.clone(), l2.clone()],
                    2 * m - 2 * m0 * (k1 + k2) - 4 * s0 + 1,
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alie::det_d;
    use crate::operators::scale;

    fn int(n: i64) -> Scalar {
        Scalar::from_integer(n)
    }

    fn sample_operators() -> Vec<HomogeneousOperator> {
        vec![
            HomogeneousOperator::r01(int(5)),
            HomogeneousOperator::r02(1, int(3)).unwrap(),
            HomogeneousOperator::r02(2, int(3)).unwrap(),
            HomogeneousOperator::r03(2, 1, int(3)).unwrap(),
            HomogeneousOperator::r04(3).unwrap(),
            HomogeneousOperator::r05(2, int(1)).unwrap(),
            HomogeneousOperator::finite([(3, int(1)), (-2, Scalar::ratio(1, 2))]),
        ]
    }

    #[test]
    fn closed_form_agrees_with_subset_expansion_at_weight_zero() {
        let zero = Scalar::zero();
        for op in &sample_operators() {
            for l in -5..=5 {
                for m in -5..=5 {
                    for n in -5..=5 {
                        assert_eq!(
                            induced_coeff(op, &zero, l, m, n).unwrap(),
                            induced_coeff_weight0(op, l, m, n).unwrap(),
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn subset_expansion_matches_symmetric_function_oracle() {
        // independent oracle: the expansion collapses to
        // (s2 + lambda s1 + lambda^2) D for homogeneous operators
        for lambda in [Scalar::ratio(2, 3), int(-1), Scalar::sym_a()] {
            for op in &sample_operators() {
                for l in -4..=4 {
                    for m in -4..=4 {
                        for n in -4..=4 {
                            let d = det_d(l, m, n);
                            let (fl, fm, fn_) =
                                (op.eval(l).unwrap(), op.eval(m).unwrap(), op.eval(n).unwrap());
                            let s1 = &(&fl + &fm) + &fn_;
                            let s2 = &(&(&fl * &fm) + &(&fl * &fn_)) + &(&fm * &fn_);
                            let oracle =
                                &(&(&s2 + &(&lambda * &s1)) + &(&lambda * &lambda)) * &d;
                            assert_eq!(induced_coeff(op, &lambda, l, m, n).unwrap(), oracle);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn induced_coefficients_frozen_examples() {
        let zero = Scalar::zero();
        // anchored family: coefficient b (2m - 1 + (-1)^m) on (0, 1, m)
        let r01 = HomogeneousOperator::r01(int(5));
        for m in [-3i64, 2, 5, 8] {
            let parity = if m % 2 == 0 { 1 } else { -1 };
            assert_eq!(
                induced_coeff(&r01, &zero, 0, 1, m).unwrap(),
                int(5 * (2 * m - 1 + parity))
            );
        }
        // even supporter family off the supporter: -4m on (0, 1, 2m)
        let r02 = HomogeneousOperator::r02(2, int(3)).unwrap();
        for m in [-3i64, -1, 1, 3] {
            assert_eq!(induced_coeff(&r02, &zero, 0, 1, 2 * m).unwrap(), int(-4 * m));
        }
        // alternating: repeated indices vanish
        assert!(induced_coeff(&r02, &zero, 3, 3, 7).unwrap().is_zero());
    }

    #[test]
    fn induced_coefficient_alternates_and_respects_grading() {
        let zero = Scalar::zero();
        let op = HomogeneousOperator::r02(1, int(3)).unwrap();
        let coeff = induced_graded_coeff(&op, &zero);
        for l in -4..=4 {
            for m in -4..=4 {
                for n in -4..=4 {
                    let v = coeff.eval(l, m, n).unwrap();
                    assert_eq!(v, -&coeff.eval(m, l, n).unwrap());
                    assert_eq!(v, -&coeff.eval(l, n, m).unwrap());
                }
            }
        }
        // grading is visible through the element-level bracket
        use crate::alie::{bracket, Element};
        let out = bracket(
            &Element::basis(2),
            &Element::basis(-1),
            &Element::basis(3),
            &coeff,
        )
        .unwrap();
        assert!(out.support().all(|i| i == 2 - 1 + 3 - 1));
    }

    #[test]
    fn abelian_table_for_single_point_support() {
        let opts = CheckOptions::default();
        let r04 = HomogeneousOperator::r04(3).unwrap();
        let alg = build_table(&r04, &Scalar::zero(), Window::symmetric(5), &opts).unwrap();
        assert!(alg.table.is_empty());
    }

    #[test]
    fn pair_family_table_entry() {
        let opts = CheckOptions::default();
        let r05 = HomogeneousOperator::r05(2, int(1)).unwrap();
        let zero = Scalar::zero();
        // D(2, -1, 3) = 8, so the sorted triple carries the swapped sign
        assert_eq!(induced_coeff(&r05, &zero, 2, -1, 3).unwrap(), int(8));
        let alg = build_table(&r05, &zero, Window::symmetric(5), &opts).unwrap();
        assert_eq!(alg.table.get(&(-1, 2, 3)), Some(&int(-8)));
    }

    #[test]
    fn supporter_table_needs_two_support_indices() {
        let opts = CheckOptions::default();
        let r02 = HomogeneousOperator::r02(2, int(3)).unwrap();
        let sup = r02.supporter().unwrap();
        let alg = build_table(&r02, &Scalar::zero(), Window::symmetric(6), &opts).unwrap();
        for (&(l, m, n), v) in &alg.table {
            assert!(!v.is_zero());
            let members = [l, m, n].iter().filter(|&&i| sup.contains(i)).count();
            assert!(members >= 2, "entry ({l},{m},{n}) has {members} support indices");
        }
        // triples with fewer than two support indices vanish
        for l in -6..=6 {
            for m in -6..=6 {
                for n in -6..=6 {
                    let members = [l, m, n].iter().filter(|&&i| sup.contains(i)).count();
                    if members < 2 {
                        assert!(induced_coeff_weight0(&r02, l, m, n).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn induced_brackets_verify_for_all_families() {
        let opts = CheckOptions::default();
        let zero = Scalar::zero();
        for op in sample_operators() {
            let v = verify_induced(&op, &zero, Window::symmetric(4), &opts).unwrap();
            assert!(v.passed(), "family failed: {op:?}");
        }
        // the zero operator induces the abelian algebra
        let v = verify_induced(
            &HomogeneousOperator::finite([]),
            &zero,
            Window::symmetric(4),
            &opts,
        )
        .unwrap();
        assert!(v.passed());
    }

    #[test]
    fn closed_form_tables_agree_with_computation() {
        let opts = CheckOptions::default();
        let w = Window::symmetric(6);
        let cases = vec![
            HomogeneousOperator::r01(int(5)),
            HomogeneousOperator::r01(int(-1)),
            HomogeneousOperator::r01(int(1)),
            HomogeneousOperator::r02(1, int(3)).unwrap(),
            HomogeneousOperator::r02(2, int(3)).unwrap(),
            HomogeneousOperator::r02(3, Scalar::ratio(5, 2)).unwrap(),
            HomogeneousOperator::r03(2, 1, int(3)).unwrap(),
            HomogeneousOperator::r05(2, int(1)).unwrap(),
            HomogeneousOperator::r05(-3, Scalar::ratio(1, 2)).unwrap(),
        ];
        for op in cases {
            let r = crosscheck_closed_forms(&op, w, &opts).unwrap();
            assert!(r.passed, "{op:?}: {:?}", r.counterexamples.first());
            assert!(r.tuples_checked > 0, "{op:?} checked nothing");
        }
        // unsupported family
        assert!(crosscheck_closed_forms(
            &HomogeneousOperator::r04(3).unwrap(),
            w,
            &opts
        )
        .is_err());
    }

    #[test]
    fn symbolic_parameter_tables_agree() {
        let opts = CheckOptions::default();
        let r02 = HomogeneousOperator::r02(1, Scalar::sym_a()).unwrap();
        let r = crosscheck_closed_forms(&r02, Window::symmetric(4), &opts).unwrap();
        assert!(r.passed);
        let table = build_table(&r02, &Scalar::zero(), Window::symmetric(3), &opts).unwrap();
        // a symbolic coefficient specializes to the rational one
        let rational = HomogeneousOperator::r02(1, int(3)).unwrap();
        for (&(l, m, n), v) in &table.table {
            assert_eq!(
                Scalar::Rat(v.eval_at(&crate::scalar::Rat::from_integer(3)).unwrap()),
                induced_coeff_weight0(&rational, l, m, n).unwrap()
            );
        }
    }

    #[test]
    fn scaled_operators_still_verify() {
        let opts = CheckOptions::default();
        let zero = Scalar::zero();
        let op = scale(
            &HomogeneousOperator::r02(1, int(3)).unwrap(),
            &Scalar::ratio(-1, 3),
        )
        .unwrap();
        let v = verify_induced(&op, &zero, Window::symmetric(4), &opts).unwrap();
        assert!(v.passed());
    }
}
