//! Polynomials in the commuting deformation parameter `rho` with
//! [`LaurentQ`] coefficients. `rho` commutes with everything; a single
//! formal symbol stands for rho_0 (the rho_0/rho_1 distinction is handled
//! by the A <-> A* automorphism at the relation level).

use crate::qring::LaurentQ;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in `rho` over `LaurentQ`. Invariant: no stored coefficient
/// is the zero polynomial.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RhoPoly {
    terms: BTreeMap<u32, LaurentQ>,
}

impl RhoPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(0, LaurentQ::one())
    }

    /// `c * rho^p`.
    pub fn term(p: u32, c: LaurentQ) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(p, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: u32) -> LaurentQ {
        self.terms.get(&p).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &LaurentQ)> {
        self.terms.iter()
    }

    pub fn rho_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiply by `rho^k`.
    pub fn mul_rho(&self, k: u32) -> Self {
        Self {
            terms: self.terms.iter().map(|(p, c)| (p + k, c.clone())).collect(),
        }
    }

    /// Specialize `rho -> 0` (Lusztig sector).
    pub fn at_rho_zero(&self) -> LaurentQ {
        self.coeff(0)
    }

    fn insert_add(terms: &mut BTreeMap<u32, LaurentQ>, p: u32, c: LaurentQ) {
        if c.is_zero() {
            return;
        }
        match terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }
}

impl From<LaurentQ> for RhoPoly {
    fn from(c: LaurentQ) -> Self {
        Self::term(0, c)
    }
}

macro_rules! impl_binop_rho {
    ($trait:ident, $meth:ident, $f:expr) => {
        impl $trait<&RhoPoly> for &RhoPoly {
            type Output = RhoPoly;
            fn $meth(self, rhs: &RhoPoly) -> RhoPoly {
                $f(self, rhs)
            }
        }
        impl $trait<RhoPoly> for RhoPoly {
            type Output = RhoPoly;
            fn $meth(self, rhs: RhoPoly) -> RhoPoly {
                $f(&self, &rhs)
            }
        }
        impl $trait<&RhoPoly> for RhoPoly {
            type Output = RhoPoly;
            fn $meth(self, rhs: &RhoPoly) -> RhoPoly {
                $f(&self, rhs)
            }
        }
        impl $trait<RhoPoly> for &RhoPoly {
            type Output = RhoPoly;
            fn $meth(self, rhs: RhoPoly) -> RhoPoly {
                $f(self, &rhs)
            }
        }
    };
}

fn radd(a: &RhoPoly, b: &RhoPoly) -> RhoPoly {
    let mut terms = a.terms.clone();
    for (p, c) in &b.terms {
        RhoPoly::insert_add(&mut terms, *p, c.clone());
    }
    RhoPoly { terms }
}

fn rsub(a: &RhoPoly, b: &RhoPoly) -> RhoPoly {
    let mut terms = a.terms.clone();
    for (p, c) in &b.terms {
        RhoPoly::insert_add(&mut terms, *p, -c);
    }
    RhoPoly { terms }
}

fn rmul(a: &RhoPoly, b: &RhoPoly) -> RhoPoly {
    let mut terms = BTreeMap::new();
    for (p1, c1) in &a.terms {
        for (p2, c2) in &b.terms {
            RhoPoly::insert_add(&mut terms, p1 + p2, c1 * c2);
        }
    }
    RhoPoly { terms }
}

impl_binop_rho!(Add, add, radd);
impl_binop_rho!(Sub, sub, rsub);
impl_binop_rho!(Mul, mul, rmul);

impl Neg for &RhoPoly {
    type Output = RhoPoly;
    fn neg(self) -> RhoPoly {
        RhoPoly {
            terms: self.terms.iter().map(|(p, c)| (*p, -c)).collect(),
        }
    }
}

impl Neg for RhoPoly {
    type Output = RhoPoly;
    fn neg(self) -> RhoPoly {
        -&self
    }
}

impl Mul<&LaurentQ> for &RhoPoly {
    type Output = RhoPoly;
    fn mul(self, rhs: &LaurentQ) -> RhoPoly {
        if rhs.is_zero() {
            return RhoPoly::zero();
        }
        RhoPoly {
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (*p, c * rhs))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }
}

impl fmt::Display for RhoPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match p {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*rho")?,
                _ => write!(f, "({c})*rho^{p}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RhoPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
