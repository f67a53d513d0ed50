//! Homogeneous operators R(L_m) = f(m) L_m on the algebra: the five
//! closed-form families of the weight-0 classification, their supporter
//! sets, the specialized weight-0 criterion, a global decision procedure
//! for finite support, and the derived-identity suite.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::alie::{det_d_int, ev, par_rows};
use crate::error::{Error, Result};
use crate::report::{CheckOptions, Counterexample, Report};
use crate::scalar::{Poly, Rat, RawFrac, Scalar};
use crate::window::Window;

/// The exact nonzero set of an infinite-support operator: two arithmetic
/// progressions placed symmetrically about 1/2.
///
/// `Even { m0 }` is {2 m0 k} together with {1 - 2 m0 k}; this set always
/// contains 0 and 1. `Shifted { m0, s0 }` with 1 <= s0 < m0 is
/// {2 m0 k + 2 s0} together with {1 - 2 m0 k - 2 s0}, which avoids 0 and 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Supporter {
    Even { m0: i64 },
    Shifted { m0: i64, s0: i64 },
}

impl Supporter {
    pub fn even(m0: i64) -> Result<Self> {
        if m0 < 1 {
            return Err(Error::InvalidSpec(format!("supporter needs m0 >= 1, got {m0}")));
        }
        Ok(Supporter::Even { m0 })
    }

    pub fn shifted(m0: i64, s0: i64) -> Result<Self> {
        if m0 < 1 || s0 < 1 || s0 >= m0 {
            return Err(Error::InvalidSpec(format!(
                "shifted supporter needs 1 <= s0 < m0, got m0 = {m0}, s0 = {s0}"
            )));
        }
        Ok(Supporter::Shifted { m0, s0 })
    }

    pub fn contains(&self, m: i64) -> bool {
        match *self {
            Supporter::Even { m0 } => {
                if m % 2 == 0 {
                    m % (2 * m0) == 0
                } else {
                    (1 - m) % (2 * m0) == 0
                }
            }
            Supporter::Shifted { m0, s0 } => {
                if m % 2 == 0 {
                    (m - 2 * s0) % (2 * m0) == 0
                } else {
                    (1 - m - 2 * s0) % (2 * m0) == 0
                }
            }
        }
    }

    /// The progression parameter k of a member index.
    pub fn progression_index(&self, m: i64) -> Option<i64> {
        if !self.contains(m) {
            return None;
        }
        Some(match *self {
            Supporter::Even { m0 } => {
                if m % 2 == 0 {
                    m / (2 * m0)
                } else {
                    (1 - m) / (2 * m0)
                }
            }
            Supporter::Shifted { m0, s0 } => {
                if m % 2 == 0 {
                    (m - 2 * s0) / (2 * m0)
                } else {
                    (1 - m - 2 * s0) / (2 * m0)
                }
            }
        })
    }
}

/// A diagonal operator, stored either by its finite table of nonzero values
/// or as one of the parametric families.
///
/// Family coefficients on the supporter are 1/(k a - (k - 1)) on the even
/// progression and the negative of that on the odd one. For a rational
/// parameter the coefficient is undefined at any k with k a - (k - 1) = 0;
/// evaluation reports that lazily as `DegenerateParameter`.
#[derive(Clone, Debug, PartialEq)]
pub enum HomogeneousOperator {
    FiniteSupport {
        table: BTreeMap<i64, Scalar>,
    },
    /// f(0) = 1, f(1) = b, zero elsewhere. Any b is accepted; the verifier
    /// is the ground truth for which b give a Rota-Baxter operator.
    FamilyR01 { b: Scalar },
    /// f(0) = 1, f(1) = -1, and 1/(k a - (k-1)) on the even supporter.
    FamilyR02 { m0: i64, a: Scalar },
    /// Shifted supporter with 1 <= s0 < m0; f(0) = f(1) = 0.
    FamilyR03 { m0: i64, s0: i64, a: Scalar },
    /// Single point: f(m1) = 1, m1 outside {0, 1}.
    FamilyR04 { m1: i64 },
    /// Pair summing to one: f(m1) = 1, f(1 - m1) = b with b nonzero.
    FamilyR05 { m1: i64, b: Scalar },
    /// A nonzero multiple of another operator; only infinite families stay
    /// wrapped, finite ones collapse back into a table.
    Scaled {
        c: Scalar,
        inner: Box<HomogeneousOperator>,
    },
}

use HomogeneousOperator::*;

pub(crate) fn lambda_k(a: &Scalar, k: i64) -> Scalar {
    &a.mul_int(k) - &Scalar::from_integer(k - 1)
}

impl HomogeneousOperator {
    /// Finite table; zero values are dropped.
    pub fn finite(table: impl IntoIterator<Item = (i64, Scalar)>) -> Self {
        FiniteSupport {
            table: table.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn r01(b: Scalar) -> Self {
        FamilyR01 { b }
    }

    pub fn r02(m0: i64, a: Scalar) -> Result<Self> {
        Supporter::even(m0)?;
        Ok(FamilyR02 { m0, a })
    }

    pub fn r03(m0: i64, s0: i64, a: Scalar) -> Result<Self> {
        Supporter::shifted(m0, s0)?;
        Ok(FamilyR03 { m0, s0, a })
    }

    pub fn r04(m1: i64) -> Result<Self> {
        if m1 == 0 || m1 == 1 {
            return Err(Error::InvalidSpec(format!("family r04 needs m1 outside {{0, 1}}, got {m1}")));
        }
        Ok(FamilyR04 { m1 })
    }

    pub fn r05(m1: i64, b: Scalar) -> Result<Self> {
        if m1 == 0 || m1 == 1 {
            return Err(Error::InvalidSpec(format!("family r05 needs m1 outside {{0, 1}}, got {m1}")));
        }
        if b.is_zero() {
            return Err(Error::InvalidSpec("family r05 needs a nonzero b".into()));
        }
        Ok(FamilyR05 { m1, b })
    }

    /// The coefficient f(m); zero off the support, `DegenerateParameter`
    /// where a supporter family hits k a - (k - 1) = 0.
    pub fn eval(&self, m: i64) -> Result<Scalar> {
        match self {
            FiniteSupport { table } => {
                Ok(table.get(&m).cloned().unwrap_or_else(Scalar::zero))
            }
            FamilyR01 { b } => Ok(match m {
                0 => Scalar::one(),
                1 => b.clone(),
                _ => Scalar::zero(),
            }),
            FamilyR02 { m0, a } => {
                supporter_coeff(Supporter::Even { m0: *m0 }, a, m)
            }
            FamilyR03 { m0, s0, a } => {
                supporter_coeff(Supporter::Shifted { m0: *m0, s0: *s0 }, a, m)
            }
            FamilyR04 { m1 } => Ok(if m == *m1 { Scalar::one() } else { Scalar::zero() }),
            FamilyR05 { m1, b } => Ok(if m == *m1 {
                Scalar::one()
            } else if m == 1 - *m1 {
                b.clone()
            } else {
                Scalar::zero()
            }),
            Scaled { c, inner } => Ok(c * &inner.eval(m)?),
        }
    }

    /// The full table of nonzero values, when the support is finite.
    pub fn to_finite_support(&self) -> Option<BTreeMap<i64, Scalar>> {
        let keep = |pairs: Vec<(i64, Scalar)>| {
            Some(
                pairs
                    .into_iter()
                    .filter(|(_, v)| !v.is_zero())
                    .collect::<BTreeMap<_, _>>(),
            )
        };
        match self {
            FiniteSupport { table } => Some(table.clone()),
            FamilyR01 { b } => keep(vec![(0, Scalar::one()), (1, b.clone())]),
            FamilyR04 { m1 } => keep(vec![(*m1, Scalar::one())]),
            FamilyR05 { m1, b } => keep(vec![(*m1, Scalar::one()), (1 - *m1, b.clone())]),
            Scaled { c, inner } => inner
                .to_finite_support()
                .map(|t| t.into_iter().map(|(m, v)| (m, &v * c)).collect()),
            FamilyR02 { .. } | FamilyR03 { .. } => None,
        }
    }

    pub fn supporter(&self) -> Option<Supporter> {
        match self {
            FamilyR02 { m0, .. } => Some(Supporter::Even { m0: *m0 }),
            FamilyR03 { m0, s0, .. } => Some(Supporter::Shifted { m0: *m0, s0: *s0 }),
            Scaled { inner, .. } => inner.supporter(),
            _ => None,
        }
    }

    /// Parses the operator spec grammar, e.g.
    /// `{"family":"r02","m0":1,"a":"3"}` or `{"support":{"3":"1","-2":"1/2"}}`;
    /// `"a":"sym"` selects the symbolic parameter.
    pub fn from_spec_json(s: &str) -> Result<Self> {
        let doc: SpecDoc =
            serde_json::from_str(s).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        doc.build()
    }

    pub fn to_spec_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&SpecDoc::from_operator(self)?)
            .expect("spec serialization cannot fail"))
    }
}

fn supporter_coeff(sup: Supporter, a: &Scalar, m: i64) -> Result<Scalar> {
    let Some(k) = sup.progression_index(m) else {
        return Ok(Scalar::zero());
    };
    let lam = lambda_k(a, k);
    if lam.is_zero() {
        return Err(Error::DegenerateParameter { k });
    }
    let v = lam.recip()?;
    Ok(if m % 2 == 0 { v } else { -&v })
}

/// Wire form of the operator spec grammar.
#[derive(Serialize, Deserialize)]
struct SpecDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m0: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s0: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m1: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    support: Option<BTreeMap<String, String>>,
}

pub(crate) fn parse_family_parameter(s: &str) -> Result<Scalar> {
    if s.trim() == "sym" {
        Ok(Scalar::sym_a())
    } else {
        Ok(Scalar::Rat(s.parse::<Rat>()?))
    }
}

impl SpecDoc {
    fn build(self) -> Result<HomogeneousOperator> {
        if let Some(support) = self.support {
            if self.family.is_some() {
                return Err(Error::InvalidSpec("spec has both family and support".into()));
            }
            let mut table = BTreeMap::new();
            for (k, v) in support {
                let m: i64 = k
                    .parse()
                    .map_err(|_| Error::InvalidSpec(format!("bad support index {k:?}")))?;
                table.insert(m, Scalar::Rat(v.parse::<Rat>()?));
            }
            return Ok(HomogeneousOperator::finite(table));
        }
        let family = self
            .family
            .ok_or_else(|| Error::InvalidSpec("spec needs a family or a support table".into()))?;
        let need_int = |v: Option<i64>, name: &str| {
            v.ok_or_else(|| Error::InvalidSpec(format!("family {family} needs {name}")))
        };
        // only the parameter a has a symbolic mode; b is always rational
        let a_param = |v: &Option<String>| match v {
            Some(s) => parse_family_parameter(s),
            None => Err(Error::InvalidSpec(format!("family {family} needs a"))),
        };
        let b_param = |v: &Option<String>| match v {
            Some(s) => Ok(Scalar::Rat(s.parse::<Rat>()?)),
            None => Err(Error::InvalidSpec(format!("family {family} needs b"))),
        };
        match family.as_str() {
            "r01" => Ok(HomogeneousOperator::r01(b_param(&self.b)?)),
            "r02" => HomogeneousOperator::r02(need_int(self.m0, "m0")?, a_param(&self.a)?),
            "r03" => HomogeneousOperator::r03(
                need_int(self.m0, "m0")?,
                need_int(self.s0, "s0")?,
                a_param(&self.a)?,
            ),
            "r04" => HomogeneousOperator::r04(need_int(self.m1, "m1")?),
            "r05" => HomogeneousOperator::r05(need_int(self.m1, "m1")?, b_param(&self.b)?),
            other => Err(Error::InvalidSpec(format!("unknown family {other:?}"))),
        }
    }

    fn from_operator(op: &HomogeneousOperator) -> Result<Self> {
        let empty = SpecDoc {
            family: None,
            m0: None,
            s0: None,
            m1: None,
            a: None,
            b: None,
            support: None,
        };
        let scalar_str = |s: &Scalar| {
            if *s == Scalar::sym_a() {
                "sym".to_string()
            } else {
                s.to_string()
            }
        };
        Ok(match op {
            FamilyR01 { b } => SpecDoc {
                family: Some("r01".into()),
                b: Some(scalar_str(b)),
                ..empty
            },
            FamilyR02 { m0, a } => SpecDoc {
                family: Some("r02".into()),
                m0: Some(*m0),
                a: Some(scalar_str(a)),
                ..empty
            },
            FamilyR03 { m0, s0, a } => SpecDoc {
                family: Some("r03".into()),
                m0: Some(*m0),
                s0: Some(*s0),
                a: Some(scalar_str(a)),
                ..empty
            },
            FamilyR04 { m1 } => SpecDoc {
                family: Some("r04".into()),
                m1: Some(*m1),
                ..empty
            },
            FamilyR05 { m1, b } => SpecDoc {
                family: Some("r05".into()),
                m1: Some(*m1),
                b: Some(scalar_str(b)),
                ..empty
            },
            FiniteSupport { .. } | Scaled { .. } => {
                let table = op.to_finite_support().ok_or_else(|| {
                    Error::InvalidSpec("scaled supporter families have no spec form".into())
                })?;
                SpecDoc {
                    support: Some(
                        table
                            .into_iter()
                            .map(|(m, v)| (m.to_string(), v.to_string()))
                            .collect(),
                    ),
                    ..empty
                }
            }
        })
    }
}

/// Pointwise nonzero multiple of an operator. Finite-support inputs (and the
/// finite families) stay stored as a plain table; supporter families wrap.
pub fn scale(op: &HomogeneousOperator, c: &Scalar) -> Result<HomogeneousOperator> {
    if c.is_zero() {
        return Err(Error::ZeroScalar);
    }
    if let Some(table) = op.to_finite_support() {
        return Ok(HomogeneousOperator::finite(
            table.into_iter().map(|(m, v)| (m, &v * c)),
        ));
    }
    Ok(match op {
        Scaled { c: c0, inner } => Scaled {
            c: c0 * c,
            inner: inner.clone(),
        },
        _ => Scaled {
            c: c.clone(),
            inner: Box::new(op.clone()),
        },
    })
}

/// Checks the weight-0 criterion
/// f(l) f(m) f(n) D = (f(l) f(n) + f(m) f(n) + f(l) f(m)) f(l+m+n-1) D
/// on every ordered triple of the window.
///
/// This is the specialized form of the generic weight-lambda check at
/// lambda = 0 and g = D; the two implementations are kept separate and are
/// tested to agree tuple by tuple.
pub fn check_rb_weight0(
    op: &HomogeneousOperator,
    w: Window,
    opts: &CheckOptions,
) -> Result<Report> {
    let policy = opts.degenerate;
    let rows: Vec<i64> = w.iter().collect();
    par_rows(rows, opts, |l| {
        let mut report = Report::empty();
        for m in w.iter() {
            for n in w.iter() {
                report.count(1);
                let d = det_d_int(l, m, n);
                if d == 0 {
                    continue;
                }
                let fl = ev!(op.eval(l), policy, report);
                let fm = ev!(op.eval(m), policy, report);
                let fn_ = ev!(op.eval(n), policy, report);
                let fp = ev!(op.eval(l + m + n - 1), policy, report);
                let lhs = (&(&fl * &fm) * &fn_).mul_int(d);
                let s2 = &(&(&fl * &fn_) + &(&fm * &fn_)) + &(&fl * &fm);
                let rhs = (&s2 * &fp).mul_int(d);
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

/// Decides the weight-0 criterion over ALL integer triples for a finitely
/// supported operator.
///
/// The left side is nonzero only when all three indices carry support, and
/// the right side only when two of them do and l+m+n-1 does as well. Both
/// sides change sign together under permutations, so it is enough to check
/// (i) unordered triples drawn from the support S and (ii) triples
/// (p, q, 1+s-p-q) for distinct p, q in S and s in S.
pub fn check_rb_global_finite(table: &BTreeMap<i64, Scalar>, opts: &CheckOptions) -> Report {
    let pts: Vec<i64> = table.keys().copied().collect();
    let f = |m: i64| table.get(&m).cloned().unwrap_or_else(Scalar::zero);
    let mut report = Report::empty();
    let check = |l: i64, m: i64, n: i64, report: &mut Report| {
        report.count(1);
        let d = det_d_int(l, m, n);
        if d == 0 {
            return;
        }
        let (fl, fm, fn_, fp) = (f(l), f(m), f(n), f(l + m + n - 1));
        let lhs = (&(&fl * &fm) * &fn_).mul_int(d);
        let s2 = &(&(&fl * &fn_) + &(&fm * &fn_)) + &(&fl * &fm);
        let rhs = (&s2 * &fp).mul_int(d);
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
    };
    for i in 0..pts.len() {
        for j in i..pts.len() {
            for k in j..pts.len() {
                check(pts[i], pts[j], pts[k], &mut report);
            }
        }
    }
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for &s in &pts {
                let r = 1 + s - pts[i] - pts[j];
                if table.contains_key(&r) {
                    // already covered by the support-triples phase
                    report.count(1);
                    continue;
                }
                check(pts[i], pts[j], r, &mut report);
            }
        }
    }
    report
}

/// The homogeneous coefficients of the inverse operator on a window.
///
/// Construction verifies that f has no zero inside the window and returns
/// the map m -> 1/f(m); evaluation outside the window still works wherever
/// f is nonzero, which the derivation checker needs for shifted indices.
pub struct InverseCoeff {
    op: HomogeneousOperator,
}

impl InverseCoeff {
    pub fn eval(&self, m: i64) -> Result<Scalar> {
        self.op.eval(m)?.recip()
    }
}

pub fn inverse_on_window(op: &HomogeneousOperator, w: Window) -> Result<InverseCoeff> {
    let mut zeros = Vec::new();
    for m in w.iter() {
        if op.eval(m)?.is_zero() {
            zeros.push(m);
        }
    }
    if !zeros.is_empty() {
        return Err(Error::NotInvertibleOnWindow { zeros });
    }
    Ok(InverseCoeff { op: op.clone() })
}

// ---- Derived-identity suite for the supporter families ----

/// Dense table of family coefficients over a contiguous index span; `None`
/// marks indices where the coefficient is undefined (degenerate parameter).
/// Values are kept both canonical (for reporting) and as raw fractions (for
/// the cleared-denominator instance checks).
struct FTable {
    lo: i64,
    vals: Vec<Option<Scalar>>,
    raw: Vec<Option<RawFrac>>,
}

impl FTable {
    fn build(op: &HomogeneousOperator, lo: i64, hi: i64) -> Result<FTable> {
        let mut vals = Vec::with_capacity((hi - lo + 1) as usize);
        for m in lo..=hi {
            match op.eval(m) {
                Ok(v) => vals.push(Some(v)),
                Err(Error::DegenerateParameter { .. }) => vals.push(None),
                Err(e) => return Err(e),
            }
        }
        let raw = vals
            .iter()
            .map(|v| v.as_ref().map(Scalar::to_raw))
            .collect();
        Ok(FTable { lo, vals, raw })
    }

    fn get(&self, m: i64) -> &Option<Scalar> {
        &self.vals[(m - self.lo) as usize]
    }

    fn raw(&self, m: i64) -> &Option<RawFrac> {
        &self.raw[(m - self.lo) as usize]
    }
}

/// Checks the family identities derived from the weight-0 criterion for the
/// supporter families: antisymmetry about 1/2, the parity-pattern product
/// identities, the reciprocal identities along the supporter progressions,
/// and the nonvanishing assertions.
///
/// Identity variables range over the given window. All equational instances
/// are compared in cleared-denominator polynomial form (counterexamples
/// carry the two cleared sides); instances touching an index where the
/// parameter degenerates are skipped and counted. Disequality assertions
/// record the collided value on both sides when violated.
pub fn identity_suite(
    op: &HomogeneousOperator,
    w: Window,
    opts: &CheckOptions,
) -> Result<Report> {
    match op {
        FamilyR02 { m0, .. } => suite_even(op, *m0, w, opts),
        FamilyR03 { m0, s0, .. } => suite_shifted(op, *m0, *s0, w, opts),
        _ => Err(Error::InvalidSpec(
            "the identity suite applies to the supporter families r02 and r03".into(),
        )),
    }
}

fn ftable_for_suite(op: &HomogeneousOperator, m0: i64, s0: i64, w: Window) -> Result<FTable> {
    let wmax = w.lo().abs().max(w.hi().abs());
    let reach = 6 * m0 * wmax + 6 * wmax + 2 * m0 + 2 * s0 + 8;
    FTable::build(op, -reach, reach)
}

fn poly_counterexample(tuple: Vec<i64>, lhs: &Poly, rhs: &Poly) -> Counterexample {
    let side = |p: &Poly| RawFrac {
        num: p.clone(),
        den: Poly::one(),
    };
    Counterexample {
        tuple,
        lhs: side(lhs).to_scalar(),
        rhs: side(rhs).to_scalar(),
    }
}

/// f(m) + f(1 - m) = 0 over the window; cleared form n_u d_v + n_v d_u = 0.
fn part_antisymmetry(ft: &FTable, w: Window, opts: &CheckOptions) -> Report {
    let mut report = Report::empty();
    for m in w.iter() {
        report.count(1);
        let (Some(u), Some(v)) = (ft.raw(m), ft.raw(1 - m)) else {
            report.skip_degenerate_tuple();
            continue;
        };
        let lhs = &(&u.num * &v.den) + &(&v.num * &u.den);
        if !lhs.is_zero() {
            report.record(poly_counterexample(vec![m], &lhs, &Poly::zero()), opts);
        }
    }
    report
}

/// The two parity-pattern product identities that the weight-0 criterion
/// reduces to when f(0) + f(1) = 0: odd-odd-even over (2l+1, 2m+1, 2n) for
/// l != m, and odd-even-even over (2l+1, 2m, 2n) for m != n. Cleared form:
/// n1 n2 n3 d_o = (n1 n2 d3 + n1 d2 n3 + d1 n2 n3) n_o.
fn part_product_identities(ft: &FTable, w: Window, opts: &CheckOptions) -> Result<Report> {
    let rows: Vec<i64> = w.iter().collect();
    par_rows(rows, opts, |l| {
        let mut report = Report::empty();
        let instance = |tuple: Vec<i64>,
                            i1: i64,
                            i2: i64,
                            i3: i64,
                            out: i64,
                            report: &mut Report| {
            report.count(1);
            let (Some(u1), Some(u2), Some(u3), Some(uo)) =
                (ft.raw(i1), ft.raw(i2), ft.raw(i3), ft.raw(out))
            else {
                report.skip_degenerate_tuple();
                return;
            };
            let n12 = &u1.num * &u2.num;
            let lhs = &(&n12 * &u3.num) * &uo.den;
            let sym = &(&(&n12 * &u3.den) + &(&(&u1.num * &u2.den) * &u3.num))
                + &(&(&u1.den * &u2.num) * &u3.num);
            let rhs = &sym * &uo.num;
            if lhs != rhs {
                report.record(poly_counterexample(tuple, &lhs, &rhs), opts);
            }
        };
        for m in w.iter() {
            for n in w.iter() {
                if l != m {
                    instance(
                        vec![l, m, n],
                        2 * l + 1,
                        2 * m + 1,
                        2 * n,
                        2 * (l + m + n) + 1,
                        &mut report,
                    );
                } else {
                    report.count(1);
                }
                if m != n {
                    instance(
                        vec![l, m, n],
                        2 * l + 1,
                        2 * m,
                        2 * n,
                        2 * (l + m + n),
                        &mut report,
                    );
                } else {
                    report.count(1);
                }
            }
        }
        Ok(report)
    })
}

/// The four pair identities obtained from the product identities by pinning
/// one argument to index 0 or 1 (they assume f(0) = 1, f(1) = -1). Cleared
/// form: n_u n_v d_o = (n_u d_v + n_v d_u +- n_u n_v) n_o.
fn part_normalized_pair_identities(ft: &FTable, w: Window, opts: &CheckOptions) -> Report {
    let mut report = Report::empty();
    let mut run = |x: i64, y: i64, skip: bool, i1: i64, i2: i64, out: i64, plus: bool| {
        report.count(1);
        if skip {
            return;
        }
        let (Some(u), Some(v), Some(uo)) = (ft.raw(i1), ft.raw(i2), ft.raw(out)) else {
            report.skip_degenerate_tuple();
            return;
        };
        let prod = &u.num * &v.num;
        let lhs = &prod * &uo.den;
        let s = &(&u.num * &v.den) + &(&v.num * &u.den);
        let factor = if plus { &s + &prod } else { &s - &prod };
        let rhs = &factor * &uo.num;
        if lhs != rhs {
            report.record(poly_counterexample(vec![x, y], &lhs, &rhs), opts);
        }
    };
    for x in w.iter() {
        for y in w.iter() {
            run(x, y, x == y, 2 * x + 1, 2 * y + 1, 2 * (x + y) + 1, true);
            run(x, y, y == 0, 2 * x + 1, 2 * y, 2 * (x + y), true);
            run(x, y, x == 0, 2 * x + 1, 2 * y, 2 * (x + y) + 1, false);
            run(x, y, x == y, 2 * x, 2 * y, 2 * (x + y), false);
        }
    }
    report
}

/// Reciprocal identities along the even supporter. Cleared forms:
/// n_u d_v + n_v d_u = 2 n_u n_v for (u, v) = (f(2 m0 k), f(-2 m0 k)),
/// n_w d_u - n_u d_w = 2 n_u n_w for w = f(1 + 2 m0 k), and f(2 m0 k) is
/// never 1/2 wherever the mirrored point exists.
fn part_half_reciprocal(ft: &FTable, m0: i64, w: Window, opts: &CheckOptions) -> Report {
    let mut report = Report::empty();
    let half = Scalar::ratio(1, 2);
    for k in w.iter() {
        report.count(1);
        match (ft.raw(2 * m0 * k), ft.raw(-2 * m0 * k)) {
            (Some(u), Some(v)) => {
                let lhs = &(&u.num * &v.den) + &(&v.num * &u.den);
                let rhs = (&u.num * &v.num).scale(&Rat::from_integer(2));
                if lhs != rhs {
                    report.record(poly_counterexample(vec![k], &lhs, &rhs), opts);
                }
            }
            _ => report.skip_degenerate_tuple(),
        }
        report.count(1);
        match (ft.raw(2 * m0 * k), ft.raw(1 + 2 * m0 * k)) {
            (Some(u), Some(wv)) => {
                let lhs = &(&wv.num * &u.den) - &(&u.num * &wv.den);
                let rhs = (&u.num * &wv.num).scale(&Rat::from_integer(2));
                if lhs != rhs {
                    report.record(poly_counterexample(vec![k], &lhs, &rhs), opts);
                }
            }
            _ => report.skip_degenerate_tuple(),
        }
        // the value 1/2 is excluded wherever the mirrored point exists: the
        // pair identity would force its reciprocal term to vanish
        report.count(1);
        match (ft.get(2 * m0 * k), ft.get(-2 * m0 * k)) {
            (Some(u), Some(_)) => {
                if *u == half {
                    report.record(
                        Counterexample {
                            tuple: vec![k],
                            lhs: u.clone(),
                            rhs: half.clone(),
                        },
                        opts,
                    );
                }
            }
            _ => report.skip_degenerate_tuple(),
        }
    }
    report
}

/// Three-term reciprocal identity along the even supporter, the cleared form
/// of 1/f(2 m0 k2) + 1/f(2 m0 k3) = 1/f(2 m0 k1) + 1/f(2 m0 (k2+k3-k1)):
/// n1 n3 n4 d2 + n1 n2 n4 d3 = n2 n3 n4 d1 + n1 n2 n3 d4.
fn part_three_term_reciprocal(
    ft: &FTable,
    m0: i64,
    w: Window,
    opts: &CheckOptions,
) -> Result<Report> {
    let rows: Vec<i64> = w.iter().collect();
    par_rows(rows, opts, |k1| {
        let mut report = Report::empty();
        for k2 in w.iter() {
            for k3 in w.iter() {
                report.count(1);
                if k2 == k3 {
                    continue;
                }
                let (Some(u1), Some(u2), Some(u3), Some(u4)) = (
                    ft.raw(2 * m0 * k1),
                    ft.raw(2 * m0 * k2),
                    ft.raw(2 * m0 * k3),
                    ft.raw(2 * m0 * (-k1 + k2 + k3)),
                ) else {
                    report.skip_degenerate_tuple();
                    continue;
                };
                let n14 = &u1.num * &u4.num;
                let n23 = &u2.num * &u3.num;
                let lhs = &(&(&n14 * &u3.num) * &u2.den) + &(&(&n14 * &u2.num) * &u3.den);
                let rhs = &(&(&n23 * &u4.num) * &u1.den) + &(&(&n23 * &u1.num) * &u4.den);
                if lhs != rhs {
                    report.record(poly_counterexample(vec![k1, k2, k3], &lhs, &rhs), opts);
                }
            }
        }
        Ok(report)
    })
}

/// Nonvanishing propagation on the even supporter: whenever f(2k), f(2l),
/// f(2m+1), f(2n+1) are all nonzero and (k-l)(m-n)klmn != 0, eleven further
/// coefficients must be nonzero.
fn part_nonvanishing_grid(ft: &FTable, w: Window, opts: &CheckOptions) -> Result<Report> {
    // 0 = zero, 1 = nonzero, 2 = undefined
    let lo = ft.lo;
    let states: Vec<u8> = ft
        .vals
        .iter()
        .map(|v| match v {
            None => 2u8,
            Some(s) if s.is_zero() => 0,
            Some(_) => 1,
        })
        .collect();
    let state = move |m: i64| states[(m - lo) as usize];
    let rows: Vec<i64> = w.iter().collect();
    par_rows(rows, opts, |k| {
        let mut report = Report::empty();
        if k == 0 {
            report.count(w.len() * w.len() * w.len());
            return Ok(report);
        }
        for l in w.iter() {
            for m in w.iter() {
                for n in w.iter() {
                    report.count(1);
                    if l == 0 || m == 0 || n == 0 || k == l || m == n {
                        continue;
                    }
                    match (state(2 * k), state(2 * l), state(2 * m + 1), state(2 * n + 1)) {
                        (1, 1, 1, 1) => {}
                        (2, _, _, _) | (_, 2, _, _) | (_, _, 2, _) | (_, _, _, 2) => {
                            report.skip_degenerate_tuple();
                            continue;
                        }
                        _ => continue,
                    }
                    let conclusions: [(i64, bool); 11] = [
                        (2 * k + 2 * l, true),
                        (2 * k + 2 * m, true),
                        (2 * k + 2 * m + 1, true),
                        (2 * m + 2 * n + 1, true),
                        (1 - 2 * k + 2 * m, k != -m),
                        (4 * k, true),
                        (2 * m + 2 * n + 2 * k + 1, true),
                        (2 * m + 2 * k + 2 * l, true),
                        (2 * k - 2 * m, k != -m),
                        (1 - 2 * k - 2 * m, true),
                        (1 - 4 * k, true),
                    ];
                    for (idx, applicable) in conclusions {
                        if !applicable {
                            continue;
                        }
                        match state(idx) {
                            1 => {}
                            2 => report.skip_degenerate_tuple(),
                            _ => report.record(
                                Counterexample {
                                    tuple: vec![k, l, m, n, idx],
                                    lhs: Scalar::zero(),
                                    rhs: Scalar::zero(),
                                },
                                opts,
                            ),
                        }
                    }
                }
            }
        }
        Ok(report)
    })
}

/// f(2k) nonzero forces f(-2k) and f(1+2k) nonzero.
fn part_support_reflection(ft: &FTable, w: Window, opts: &CheckOptions) -> Report {
    let mut report = Report::empty();
    for k in w.iter() {
        report.count(1);
        let Some(v) = ft.get(2 * k) else {
            report.skip_degenerate_tuple();
            continue;
        };
        if v.is_zero() {
            continue;
        }
        for idx in [-2 * k, 1 + 2 * k] {
            match ft.get(idx) {
                None => report.skip_degenerate_tuple(),
                Some(u) if u.is_zero() => report.record(
                    Counterexample {
                        tuple: vec![k, idx],
                        lhs: Scalar::zero(),
                        rhs: Scalar::zero(),
                    },
                    opts,
                ),
                Some(_) => {}
            }
        }
    }
    report
}

/// Reciprocal identities along the shifted supporter: the six-point sum
/// identity over pairwise distinct (k1, k2, k3), the two-point identity
/// 1/f(2 m0 k + 2 s0) + 1/f(-2 m0 k + 2 s0) = 2, both in cleared form, and
/// f(2 m0 k + 2 s0) never 1/2 wherever the mirrored point exists.
fn part_shifted_reciprocals(
    ft: &FTable,
    m0: i64,
    s0: i64,
    w: Window,
    opts: &CheckOptions,
) -> Result<Report> {
    let mut total = Report::empty();
    let half = Scalar::ratio(1, 2);
    let mut pairs = Report::empty();
    for k in w.iter() {
        pairs.count(1);
        match (ft.raw(2 * m0 * k + 2 * s0), ft.raw(-2 * m0 * k + 2 * s0)) {
            (Some(u), Some(v)) => {
                let lhs = &(&u.num * &v.den) + &(&v.num * &u.den);
                let rhs = (&u.num * &v.num).scale(&Rat::from_integer(2));
                if lhs != rhs {
                    pairs.record(poly_counterexample(vec![k], &lhs, &rhs), opts);
                }
            }
            _ => pairs.skip_degenerate_tuple(),
        }
        // as in the even case, excluded only where the mirror point exists
        pairs.count(1);
        match (ft.get(2 * m0 * k + 2 * s0), ft.get(-2 * m0 * k + 2 * s0)) {
            (Some(u), Some(_)) => {
                if *u == half {
                    pairs.record(
                        Counterexample {
                            tuple: vec![k],
                            lhs: u.clone(),
                            rhs: half.clone(),
                        },
                        opts,
                    );
                }
            }
            _ => pairs.skip_degenerate_tuple(),
        }
    }
    total.absorb(pairs, opts);

    // six-point identity, cleared: each reciprocal term becomes d_i times
    // the product of the other five numerators
    let rows: Vec<i64> = w.iter().collect();
    let six = par_rows(rows, opts, |k1| {
        let mut report = Report::empty();
        for k2 in w.iter() {
            for k3 in w.iter() {
                report.count(1);
                if k1 == k2 || k1 == k3 || k2 == k3 {
                    continue;
                }
                let at = |k: i64| ft.raw(2 * m0 * k + 2 * s0).as_ref();
                let fetched = [
                    at(k1),
                    at(k2),
                    at(k3),
                    at(k1 + k2 - k3),
                    at(k1 - k2 + k3),
                    at(-k1 + k2 + k3),
                ];
                if fetched.iter().any(|v| v.is_none()) {
                    report.skip_degenerate_tuple();
                    continue;
                }
                let us: Vec<&RawFrac> = fetched.into_iter().map(Option::unwrap).collect();
                let mut prefix = vec![Poly::one(); 7];
                for i in 0..6 {
                    prefix[i + 1] = &prefix[i] * &us[i].num;
                }
                let mut suffix = vec![Poly::one(); 7];
                for i in (0..6).rev() {
                    suffix[i] = &suffix[i + 1] * &us[i].num;
                }
                let term = |i: usize| &(&prefix[i] * &suffix[i + 1]) * &us[i].den;
                let lhs = &(&term(0) + &term(1)) + &term(2);
                let rhs = &(&term(3) + &term(4)) + &term(5);
                if lhs != rhs {
                    report.record(poly_counterexample(vec![k1, k2, k3], &lhs, &rhs), opts);
                }
            }
        }
        Ok(report)
    })?;
    total.absorb(six, opts);
    Ok(total)
}

fn suite_even(
    op: &HomogeneousOperator,
    m0: i64,
    w: Window,
    opts: &CheckOptions,
) -> Result<Report> {
    let ft = ftable_for_suite(op, m0, 0, w)?;
    let mut total = Report::empty();
    total.absorb(part_antisymmetry(&ft, w, opts), opts);
    total.absorb(part_product_identities(&ft, w, opts)?, opts);
    total.absorb(part_normalized_pair_identities(&ft, w, opts), opts);
    total.absorb(part_half_reciprocal(&ft, m0, w, opts), opts);
    total.absorb(part_three_term_reciprocal(&ft, m0, w, opts)?, opts);
    total.absorb(part_nonvanishing_grid(&ft, w, opts)?, opts);
    total.absorb(part_support_reflection(&ft, w, opts), opts);
    Ok(total)
}

fn suite_shifted(
    op: &HomogeneousOperator,
    m0: i64,
    s0: i64,
    w: Window,
    opts: &CheckOptions,
) -> Result<Report> {
    let ft = ftable_for_suite(op, m0, s0, w)?;
    let mut total = Report::empty();
    total.absorb(part_antisymmetry(&ft, w, opts), opts);
    total.absorb(part_product_identities(&ft, w, opts)?, opts);
    total.absorb(part_shifted_reciprocals(&ft, m0, s0, w, opts)?, opts);
    Ok(total)
}
