//! Exact Laurent polynomials in `q` over arbitrary-precision rationals,
//! and the balanced q-combinatorics built on them.
//!
//! [`LaurentQ`] is the base scalar of every symbolic computation in this
//! workspace: coefficients are `BigRational`, exponents of `q` may be
//! negative, and the zero polynomial stores no terms (canonical form).
//! Equality is structural equality of canonical forms, so "is this
//! expression zero" is the central test primitive.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Laurent polynomial in `q` with exact rational coefficients.
///
/// Invariant: no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentQ {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentQ {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigRational::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(0, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    /// `c * q^exp`; canonicalizes away a zero coefficient.
    pub fn monomial(exp: i64, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(exp, BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&0)
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.terms.iter()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn insert_add(terms: &mut BTreeMap<i64, BigRational>, exp: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Substitute `q -> q^k` (used for brackets in base q^2).
    pub fn subst_q_power(&self, k: i64) -> Self {
        assert!(k != 0, "q -> q^0 is not a ring map on Laurent polynomials");
        Self {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// Formal d/dq, exact.
    pub fn derivative(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if *e != 0 {
                Self::insert_add(&mut terms, e - 1, c * BigRational::from_integer(BigInt::from(*e)));
            }
        }
        Self { terms }
    }

    /// Exact division; panics on a nonzero remainder.
    ///
    /// Every division in the coefficient recursions is exact, so a nonzero
    /// remainder here is a bug detector, not a recoverable condition.
    pub fn div_exact(&self, d: &Self) -> Self {
        self.try_div_exact(d)
            .unwrap_or_else(|| panic!("non-exact division: ({self}) / ({d})"))
    }

    /// Exact division when the remainder vanishes, `None` otherwise.
    pub fn try_div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let lead = d.max_exp().unwrap();
        let lead_c = d.terms.get(&lead).unwrap().clone();
        // an exact quotient cannot reach below min_exp(p) - min_exp(d)
        let floor = self.min_exp().unwrap_or(0) - d.min_exp().unwrap();
        let mut rem = self.terms.clone();
        let mut quo = BTreeMap::new();
        while let Some((&e, _)) = rem.iter().next_back() {
            let qe = e - lead;
            if qe < floor {
                return None;
            }
            let c = rem.get(&e).unwrap().clone();
            let qc = &c / &lead_c;
            Self::insert_add(&mut quo, qe, qc.clone());
            for (de, dc) in &d.terms {
                Self::insert_add(&mut rem, qe + de, -(&qc * dc));
            }
        }
        Some(Self { terms: quo })
    }

    /// Evaluate with exact coefficients lowered to f64, at a complex point.
    pub fn eval_complex(&self, q0: Complex64) -> Complex64 {
        assert!(q0.norm() > 0.0, "evaluation at q = 0 is undefined for Laurent polynomials");
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let cf = c.to_f64().expect("rational out of f64 range");
            acc += cf * q0.powi(*e as i32);
        }
        acc
    }

    /// JSON value in the export schema `{"terms": [[exp, "num/den"], ...]}`,
    /// sorted by exponent ascending.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| serde_json::json!([e, c.to_string()]))
            .collect();
        serde_json::json!({ "terms": terms })
    }
}

impl fmt::Debug for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match (*e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{a}*q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{a}*q^{e}")?,
            }
        }
        Ok(())
    }
}

macro_rules! impl_binop {
    ($trait:ident, $meth:ident, $f:expr) => {
        impl $trait<&LaurentQ> for &LaurentQ {
            type Output = LaurentQ;
            fn $meth(self, rhs: &LaurentQ) -> LaurentQ {
                $f(self, rhs)
            }
        }
        impl $trait<LaurentQ> for LaurentQ {
            type Output = LaurentQ;
            fn $meth(self, rhs: LaurentQ) -> LaurentQ {
                $f(&self, &rhs)
            }
        }
        impl $trait<&LaurentQ> for LaurentQ {
            type Output = LaurentQ;
            fn $meth(self, rhs: &LaurentQ) -> LaurentQ {
                $f(&self, rhs)
            }
        }
        impl $trait<LaurentQ> for &LaurentQ {
            type Output = LaurentQ;
            fn $meth(self, rhs: LaurentQ) -> LaurentQ {
                $f(self, &rhs)
            }
        }
    };
}

fn add_impl(a: &LaurentQ, b: &LaurentQ) -> LaurentQ {
    let mut terms = a.terms.clone();
    for (e, c) in &b.terms {
        LaurentQ::insert_add(&mut terms, *e, c.clone());
    }
    LaurentQ { terms }
}

fn sub_impl(a: &LaurentQ, b: &LaurentQ) -> LaurentQ {
    let mut terms = a.terms.clone();
    for (e, c) in &b.terms {
        LaurentQ::insert_add(&mut terms, *e, -c.clone());
    }
    LaurentQ { terms }
}

fn mul_impl(a: &LaurentQ, b: &LaurentQ) -> LaurentQ {
    let mut terms = BTreeMap::new();
    for (e1, c1) in &a.terms {
        for (e2, c2) in &b.terms {
            LaurentQ::insert_add(&mut terms, e1 + e2, c1 * c2);
        }
    }
    LaurentQ { terms }
}

impl_binop!(Add, add, add_impl);
impl_binop!(Sub, sub, sub_impl);
impl_binop!(Mul, mul, mul_impl);

impl Neg for &LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        LaurentQ {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        -&self
    }
}

/// Balanced q-integer `[n]_q = (q^n - q^-n)/(q - q^-1)`; `[0]_q = 0`.
pub fn qnum(n: u32) -> LaurentQ {
    let mut terms = BTreeMap::new();
    let n = n as i64;
    let mut e = n - 1;
    while e >= 1 - n {
        terms.insert(e, BigRational::one());
        e -= 2;
    }
    LaurentQ { terms }
}

/// `[n]_{q^base}` as a Laurent polynomial in q; `base` is 1 or 2.
pub fn qnum_base(n: u32, base: u32) -> LaurentQ {
    assert!(base == 1 || base == 2, "unsupported bracket base {base}");
    qnum(n).subst_q_power(base as i64)
}

/// q-factorial `[n]_q! = prod_{l=1..n} [l]_q`; `[0]_q! = 1`.
pub fn qfact(n: u32) -> LaurentQ {
    let mut acc = LaurentQ::one();
    for l in 1..=n {
        acc = acc * qnum(l);
    }
    acc
}

/// Gaussian binomial `[n choose m]_q`; exact division with remainder assertion.
pub fn qbinom(n: u32, m: u32) -> LaurentQ {
    assert!(m <= n, "qbinom index out of range: m={m} > n={n}");
    let m = m.min(n - m);
    // [n]...[n-m+1] / [m]!
    let mut num = LaurentQ::one();
    for l in (n - m + 1)..=n {
        num = num * qnum(l);
    }
    num.div_exact(&qfact(m))
}
