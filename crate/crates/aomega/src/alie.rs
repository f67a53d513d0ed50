//! The simple 3-Lie algebra with basis {L_n | n in Z}, its structure
//! constants, and generic exhaustive checkers for the fundamental identity,
//! weighted derivations, and weighted Rota-Baxter operators.
//!
//! The bracket is [L_l, L_m, L_n] = g(l, m, n) L_{l+m+n-1} for an alternating
//! coefficient function g; the algebra itself takes g = D, the determinant
//! with rows of parities, ones, and indices. Checkers are parameterized by g
//! so induced algebras reuse the same machinery.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::report::{CheckOptions, Counterexample, DegeneratePolicy, Report};
use crate::scalar::Scalar;
use crate::window::Window;

/// D(l, m, n) as a machine integer (row expansion along the parity row).
pub fn det_d_int(l: i64, m: i64, n: i64) -> i64 {
    let sgn = |k: i64| if k % 2 == 0 { 1 } else { -1 };
    sgn(l) * (n - m) - sgn(m) * (n - l) + sgn(n) * (m - l)
}

/// The structure-constant determinant of the algebra.
pub fn det_d(l: i64, m: i64, n: i64) -> Scalar {
    Scalar::from_integer(det_d_int(l, m, n))
}

/// The zero locus of D: a repeated index, or all three indices of the same
/// parity.
pub fn d_is_zero(l: i64, m: i64, n: i64) -> bool {
    let parity = |k: i64| (k % 2 != 0) as u8;
    (l - m) * (l - n) * (m - n) == 0 || (parity(l) == parity(m) && parity(m) == parity(n))
}

/// An alternating coefficient function g defining the homogeneous bracket
/// [L_l, L_m, L_n] = g(l, m, n) L_{l+m+n-1}.
#[derive(Clone)]
pub struct GradedCoeff {
    label: String,
    eval: Arc<dyn Fn(i64, i64, i64) -> Result<Scalar> + Send + Sync>,
}

impl GradedCoeff {
    /// Wraps an evaluation closure. The closure must be alternating; the
    /// checkers rely on that invariant to skip repeated-index tuples.
    pub fn new<F>(label: impl Into<String>, eval: F) -> Self
    where
        F: Fn(i64, i64, i64) -> Result<Scalar> + Send + Sync + 'static,
    {
        GradedCoeff {
            label: label.into(),
            eval: Arc::new(eval),
        }
    }

    /// Alternating extension of a function given on strictly increasing
    /// triples: repeated indices map to zero, permutations pick up the sign.
    pub fn alternating<F>(label: impl Into<String>, on_sorted: F) -> Self
    where
        F: Fn(i64, i64, i64) -> Result<Scalar> + Send + Sync + 'static,
    {
        GradedCoeff::new(label, move |l, m, n| {
            if l == m || l == n || m == n {
                return Ok(Scalar::zero());
            }
            let mut idx = [l, m, n];
            let mut sign = 1i32;
            for i in 0..2 {
                for j in 0..2 - i {
                    if idx[j] > idx[j + 1] {
                        idx.swap(j, j + 1);
                        sign = -sign;
                    }
                }
            }
            let v = on_sorted(idx[0], idx[1], idx[2])?;
            Ok(if sign < 0 { -&v } else { v })
        })
    }

    /// The coefficient function of the algebra itself.
    pub fn standard() -> Self {
        GradedCoeff::new("D", |l, m, n| Ok(det_d(l, m, n)))
    }

    /// The abelian coefficient function.
    pub fn trivial() -> Self {
        GradedCoeff::new("0", |_, _, _| Ok(Scalar::zero()))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, l: i64, m: i64, n: i64) -> Result<Scalar> {
        (self.eval)(l, m, n)
    }
}

impl std::fmt::Debug for GradedCoeff {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedCoeff").field("label", &self.label).finish()
    }
}

/// A finitely supported vector sum of basis elements L_m.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Element {
    coeffs: BTreeMap<i64, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn basis(m: i64) -> Self {
        Element::from_terms([(m, Scalar::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Scalar)>) -> Self {
        let mut e = Element::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn add_term(&mut self, m: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(m).or_insert_with(Scalar::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn coeff(&self, m: i64) -> Scalar {
        self.coeffs.get(&m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut e = Element::zero();
        for (m, v) in &self.coeffs {
            e.add_term(*m, v * c);
        }
        e
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut e = self.clone();
        for (m, v) in &other.coeffs {
            e.add_term(*m, v.clone());
        }
        e
    }
}

/// Trilinear bracket of elements under the coefficient function g.
pub fn bracket(x: &Element, y: &Element, z: &Element, g: &GradedCoeff) -> Result<Element> {
    let mut out = Element::zero();
    for (l, cx) in x.terms() {
        for (m, cy) in y.terms() {
            for (n, cz) in z.terms() {
                let gv = g.eval(l, m, n)?;
                if gv.is_zero() {
                    continue;
                }
                out.add_term(l + m + n - 1, &(&(cx * cy) * cz) * &gv);
            }
        }
    }
    Ok(out)
}

/// Per-tuple outcome under a degenerate-parameter policy.
pub(crate) enum Ev {
    Val(Scalar),
    Degenerate,
}

pub(crate) fn eval_policy(r: Result<Scalar>, policy: DegeneratePolicy) -> Result<Ev> {
    match r {
        Ok(v) => Ok(Ev::Val(v)),
        Err(Error::DegenerateParameter { k }) => match policy {
            DegeneratePolicy::Skip => Ok(Ev::Degenerate),
            DegeneratePolicy::Error => Err(Error::DegenerateParameter { k }),
        },
        Err(e) => Err(e),
    }
}

macro_rules! ev {
    ($expr:expr, $policy:expr, $report:ident) => {
        match $crate::alie::eval_policy($expr, $policy)? {
            $crate::alie::Ev::Val(v) => v,
            $crate::alie::Ev::Degenerate => {
                $report.skip_degenerate_tuple();
                continue;
            }
        }
    };
}
pub(crate) use ev;

/// Maps row chunks in parallel and merges the partial reports in row order,
/// so results are deterministic regardless of scheduling.
pub(crate) fn par_rows<T, F>(rows: Vec<T>, opts: &CheckOptions, body: F) -> Result<Report>
where
    T: Send,
    F: Fn(T) -> Result<Report> + Send + Sync,
{
    let parts: Result<Vec<Report>> = rows.into_par_iter().map(body).collect();
    let mut total = Report::empty();
    for part in parts? {
        total.absorb(part, opts);
    }
    Ok(total)
}

/// Checks the fundamental identity
/// [[x1,x2,x3],y2,y3] = [[x1,y2,y3],x2,x3] + [[x2,y2,y3],x3,x1] + [[x3,y2,y3],x1,x2]
/// on basis 5-tuples with indices in the window.
///
/// Both sides are multiples of the same basis vector, so each tuple reduces
/// to one scalar equality. By default the enumeration is restricted to
/// x1 < x2 < x3 and y2 < y3, which covers the full tuple space by
/// multilinearity and antisymmetry; `opts.strict` switches to the raw
/// 5-fold product.
pub fn check_fundamental_identity(g: &GradedCoeff, w: Window, opts: &CheckOptions) -> Result<Report> {
    let idx: Vec<i64> = w.iter().collect();
    let policy = opts.degenerate;

    let mut x_triples: Vec<(i64, i64, i64)> = Vec::new();
    if opts.strict {
        for &x1 in &idx {
            for &x2 in &idx {
                for &x3 in &idx {
                    x_triples.push((x1, x2, x3));
                }
            }
        }
    } else {
        for i in 0..idx.len() {
            for j in i + 1..idx.len() {
                for k in j + 1..idx.len() {
                    x_triples.push((idx[i], idx[j], idx[k]));
                }
            }
        }
    }

    let strict = opts.strict;
    par_rows(x_triples, opts, |(x1, x2, x3)| {
        let mut report = Report::empty();
        let mut y_pairs: Vec<(i64, i64)> = Vec::new();
        if strict {
            for &y2 in &idx {
                for &y3 in &idx {
                    y_pairs.push((y2, y3));
                }
            }
        } else {
            for i in 0..idx.len() {
                for j in i + 1..idx.len() {
                    y_pairs.push((idx[i], idx[j]));
                }
            }
        }
        for (y2, y3) in y_pairs {
            report.count(1);
            // Repeated arguments on either side make both sides vanish by
            // antisymmetry alone.
            if x1 == x2 || x1 == x3 || x2 == x3 || y2 == y3 {
                continue;
            }
            let inner = ev!(g.eval(x1, x2, x3), policy, report);
            let lhs_outer = ev!(g.eval(x1 + x2 + x3 - 1, y2, y3), policy, report);
            let lhs = &inner * &lhs_outer;

            let t1a = ev!(g.eval(x1, y2, y3), policy, report);
            let t1b = ev!(g.eval(x1 + y2 + y3 - 1, x2, x3), policy, report);
            let t2a = ev!(g.eval(x2, y2, y3), policy, report);
            let t2b = ev!(g.eval(x2 + y2 + y3 - 1, x3, x1), policy, report);
            let t3a = ev!(g.eval(x3, y2, y3), policy, report);
            let t3b = ev!(g.eval(x3 + y2 + y3 - 1, x1, x2), policy, report);
            let rhs = &(&(&t1a * &t1b) + &(&t2a * &t2b)) + &(&t3a * &t3b);

            if lhs != rhs {
                report.record(
                    Counterexample {
                        tuple: vec![x1, x2, x3, y2, y3],
                        lhs,
                        rhs,
                    },
                    opts,
                );
            }
        }
        Ok(report)
    })
}

/// Checks the weight-lambda derivation identity of a homogeneous map
/// d(L_m) = dcoef(m) L_m against the bracket g on all basis triples in the
/// window: dcoef(l+m+n-1) g = (s1 + lambda s2 + lambda^2 s3) g, where the s_i
/// are the elementary symmetric functions of dcoef at l, m, n.
pub fn check_derivation<F>(
    dcoef: F,
    g: &GradedCoeff,
    lambda: &Scalar,
    w: Window,
    opts: &CheckOptions,
) -> Result<Report>
where
    F: Fn(i64) -> Result<Scalar> + Send + Sync,
{
    let policy = opts.degenerate;
    let lambda2 = lambda * lambda;
    let rows: Vec<i64> = w.iter().collect();
    par_rows(rows, opts, |l| {
        let mut report = Report::empty();
        for m in w.iter() {
            for n in w.iter() {
                report.count(1);
                if l == m || l == n || m == n {
                    continue;
                }
                let gv = ev!(g.eval(l, m, n), policy, report);
                if gv.is_zero() {
                    continue;
                }
                let dl = ev!(dcoef(l), policy, report);
                let dm = ev!(dcoef(m), policy, report);
                let dn = ev!(dcoef(n), policy, report);
                let dp = ev!(dcoef(l + m + n - 1), policy, report);
                let s1 = &(&dl + &dm) + &dn;
                let s2 = &(&(&dl * &dm) + &(&dl * &dn)) + &(&dm * &dn);
                let s3 = &(&dl * &dm) * &dn;
                let lhs = &dp * &gv;
                let rhs = &(&(&s1 + &(lambda * &s2)) + &(&lambda2 * &s3)) * &gv;
                if lhs != rhs {
                    report.record(
                        Counterexample {
                            tuple: vec![l, m, n],
                            lhs,
                            rhs,
                        },
                        opts,
                    );
                }
            }
        }
        Ok(report)
    })
}

/// Checks the weight-lambda Rota-Baxter identity of a homogeneous map
/// R(L_m) = fcoef(m) L_m against the bracket g on all basis triples in the
/// window: s3 g = (s2 + lambda s1 + lambda^2) fcoef(l+m+n-1) g.
pub fn check_rota_baxter<F>(
    fcoef: F,
    g: &GradedCoeff,
    lambda: &Scalar,
    w: Window,
    opts: &CheckOptions,
) -> Result<Report>
where
    F: Fn(i64) -> Result<Scalar> + Send + Sync,
{
    let policy = opts.degenerate;
    let lambda2 = lambda * lambda;
    let rows: Vec<i64> = w.iter().collect();
    par_rows(rows, opts, |l| {
        let mut report = Report::empty();
        for m in w.iter() {
            for n in w.iter() {
                report.count(1);
                if l == m || l == n || m == n {
                    continue;
                }
                let gv = ev!(g.eval(l, m, n), policy, report);
                if gv.is_zero() {
                    continue;
                }
                let fl = ev!(fcoef(l), policy, report);
                let fm = ev!(fcoef(m), policy, report);
                let fn_ = ev!(fcoef(n), policy, report);
                let fp = ev!(fcoef(l + m + n - 1), policy, report);
                let s1 = &(&fl + &fm) + &fn_;
                let s2 = &(&(&fl * &fm) + &(&fl * &fn_)) + &(&fm * &fn_);
                let s3 = &(&fl * &fm) * &fn_;
                let lhs = &s3 * &gv;
                let rhs = &(&(&(&s2 + &(lambda * &s1)) + &lambda2) * &fp) * &gv;
                if lhs != rhs {
                    report.record(
                        Counterexample {
                            tuple: vec![l, m, n],
                            lhs,
                            rhs,
                        },
                        opts,
                    );
                }
            }
        }
        Ok(report)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    /// Independent oracle: cofactor expansion along the last row of the
    /// determinant with rows of parities, ones, and indices.
    fn det_oracle(l: i64, m: i64, n: i64) -> i64 {
        let p = |k: i64| if k % 2 == 0 { 1i64 } else { -1 };
        let minor12 = p(m) - p(n);
        let minor02 = p(l) - p(n);
        let minor01 = p(l) - p(m);
        l * minor12 - m * minor02 + n * minor01
    }

    #[test]
    fn determinant_matches_oracle_and_frozen_values() {
        assert_eq!(det_d_int(0, 1, 2), 4);
        assert_eq!(det_d_int(1, 3, 5), 0);
        for l in -12..=12 {
            for m in -12..=12 {
                for n in -12..=12 {
                    assert_eq!(det_d_int(l, m, n), det_oracle(l, m, n), "({l},{m},{n})");
                }
            }
        }
    }

    #[test]
    fn determinant_vanishes_on_repeated_columns() {
        for l in -6..=6 {
            for n in -6..=6 {
                assert_eq!(det_d_int(l, l, n), 0);
            }
        }
    }

    #[test]
    fn determinant_alternates() {
        for l in -6..=6 {
            for m in -6..=6 {
                for n in -6..=6 {
                    assert_eq!(det_d_int(l, m, n), -det_d_int(m, l, n));
                    assert_eq!(det_d_int(l, m, n), -det_d_int(l, n, m));
                }
            }
        }
    }

    #[test]
    fn zero_locus_predicate() {
        assert!(!d_is_zero(0, 1, 2));
        assert!(d_is_zero(2, 4, 6));
        assert!(d_is_zero(7, 7, 3));
        for l in -10..=10 {
            for m in -10..=10 {
                for n in -10..=10 {
                    assert_eq!(d_is_zero(l, m, n), det_d_int(l, m, n) == 0);
                }
            }
        }
    }

    #[test]
    fn bracket_of_basis_vectors() {
        let d = GradedCoeff::standard();
        let out = bracket(&Element::basis(0), &Element::basis(1), &Element::basis(2), &d).unwrap();
        assert_eq!(out, Element::from_terms([(2, Scalar::from_integer(4))]));
        // grading: the only support index of [L_0, L_1, L_{2m}] is 2m
        for m in -5..=5i64 {
            let out =
                bracket(&Element::basis(0), &Element::basis(1), &Element::basis(2 * m), &d).unwrap();
            let expect = Element::from_terms([(2 * m, Scalar::from_integer(4 * m))]);
            assert_eq!(out, expect);
        }
    }

    #[test]
    fn bracket_alternates_on_elements() {
        let d = GradedCoeff::standard();
        let x = Element::from_terms([(0, Scalar::one()), (3, Scalar::ratio(1, 2))]);
        let z = Element::from_terms([(1, Scalar::from_integer(-2)), (4, Scalar::one())]);
        assert!(bracket(&x, &x, &z, &d).unwrap().is_zero());
        let xyz = bracket(&x, &z, &Element::basis(2), &d).unwrap();
        let yxz = bracket(&z, &x, &Element::basis(2), &d).unwrap();
        assert_eq!(xyz, yxz.scale(&Scalar::from_integer(-1)));
    }

    #[test]
    fn fundamental_identity_holds_for_standard_bracket() {
        let r = check_fundamental_identity(
            &GradedCoeff::standard(),
            Window::symmetric(4),
            &CheckOptions::default(),
        )
        .unwrap();
        assert!(r.passed);
        // C(9,3) * C(9,2) ordered tuples
        assert_eq!(r.tuples_checked, 84 * 36);
    }

    #[test]
    fn fundamental_identity_strict_mode_agrees() {
        let opts = CheckOptions {
            strict: true,
            ..CheckOptions::default()
        };
        let r = check_fundamental_identity(&GradedCoeff::standard(), Window::symmetric(2), &opts)
            .unwrap();
        assert!(r.passed);
        assert_eq!(r.tuples_checked, 5u64.pow(5));
    }

    #[test]
    fn fundamental_identity_trivial_bracket() {
        let r = check_fundamental_identity(
            &GradedCoeff::trivial(),
            Window::symmetric(3),
            &CheckOptions::default(),
        )
        .unwrap();
        assert!(r.passed);
    }

    #[test]
    fn perturbed_bracket_fails_with_verifiable_counterexample() {
        // alternating by construction, but off by +1 on sorted triples
        let g = GradedCoeff::alternating("D+1", |l, m, n| {
            Ok(&det_d(l, m, n) + &Scalar::one())
        });
        let r =
            check_fundamental_identity(&g, Window::symmetric(2), &CheckOptions::default()).unwrap();
        assert!(!r.passed);
        let cex = &r.counterexamples[0];
        let (x1, x2, x3, y2, y3) = (
            cex.tuple[0], cex.tuple[1], cex.tuple[2], cex.tuple[3], cex.tuple[4],
        );
        // re-verify the reported tuple by direct evaluation
        let lhs = &g.eval(x1, x2, x3).unwrap() * &g.eval(x1 + x2 + x3 - 1, y2, y3).unwrap();
        let rhs = &(&(&g.eval(x1, y2, y3).unwrap()
            * &g.eval(x1 + y2 + y3 - 1, x2, x3).unwrap())
            + &(&g.eval(x2, y2, y3).unwrap() * &g.eval(x2 + y2 + y3 - 1, x3, x1).unwrap()))
            + &(&g.eval(x3, y2, y3).unwrap() * &g.eval(x3 + y2 + y3 - 1, x1, x2).unwrap());
        assert_eq!(lhs, cex.lhs);
        assert_eq!(rhs, cex.rhs);
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn derivation_check_examples() {
        let d = GradedCoeff::standard();
        let zero = Scalar::zero();
        // even index 2k maps to 2k+1, odd index 1-2k to -(2k+1)
        let dcoef = |m: i64| {
            Ok(Scalar::from_integer(if m % 2 == 0 { m + 1 } else { m - 2 }))
        };
        let r = check_derivation(dcoef, &d, &zero, Window::symmetric(8), &CheckOptions::default())
            .unwrap();
        assert!(r.passed, "{:?}", r.counterexamples.first());

        let r = check_derivation(
            |_| Ok(Scalar::zero()),
            &d,
            &Scalar::ratio(2, 3),
            Window::symmetric(4),
            &CheckOptions::default(),
        )
        .unwrap();
        assert!(r.passed);

        let r = check_derivation(
            |_| Ok(Scalar::one()),
            &d,
            &zero,
            Window::symmetric(3),
            &CheckOptions::default(),
        )
        .unwrap();
        assert!(!r.passed);
        let cex = &r.counterexamples[0];
        assert_eq!(cex.lhs, cex.rhs.checked_div(&Scalar::from_integer(3)).unwrap());
    }

    #[test]
    fn rota_baxter_check_trivial_cases() {
        let d = GradedCoeff::standard();
        let zero = Scalar::zero();
        let r = check_rota_baxter(
            |_| Ok(Scalar::zero()),
            &d,
            &Scalar::ratio(-1, 2),
            Window::symmetric(4),
            &CheckOptions::default(),
        )
        .unwrap();
        assert!(r.passed);

        // the identity map is not Rota-Baxter of weight 0: 1 vs 3
        let r = check_rota_baxter(
            |_| Ok(Scalar::one()),
            &d,
            &zero,
            Window::symmetric(3),
            &CheckOptions::default(),
        )
        .unwrap();
        assert!(!r.passed);
    }

    #[test]
    fn degenerate_policy_skip_counts_and_error_propagates() {
        let d = GradedCoeff::standard();
        let zero = Scalar::zero();
        let f = |m: i64| {
            if m == 2 {
                Err(Error::DegenerateParameter { k: 1 })
            } else {
                Ok(Scalar::zero())
            }
        };
        let err = check_rota_baxter(f, &d, &zero, Window::symmetric(3), &CheckOptions::default());
        assert_eq!(err.unwrap_err(), Error::DegenerateParameter { k: 1 });
        let r = check_rota_baxter(
            f,
            &d,
            &zero,
            Window::symmetric(3),
            &CheckOptions::default().skip_degenerate(),
        )
        .unwrap();
        assert!(r.passed);
        assert!(r.degenerate_skipped > 0);
    }

    #[test]
    fn element_coefficients_stay_normalized() {
        let mut e = Element::zero();
        e.add_term(3, Scalar::ratio(1, 2));
        e.add_term(3, Scalar::ratio(-1, 2));
        assert!(e.is_zero());
        e.add_term(5, Scalar::Rat(Rat::ratio(2, 4)));
        assert_eq!(e.coeff(5), Scalar::ratio(1, 2));
    }
}
