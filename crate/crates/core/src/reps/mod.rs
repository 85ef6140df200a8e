//! Matrix realizations of the algebra on the open XXZ chain: exact
//! symbolic backend (entries Laurent polynomials in q, boundary parameters
//! substituted by rationals) and numeric backend (complex doubles at a
//! fixed q, tolerance-based checks).

pub mod numeric;
pub mod symbolic;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Centralized verification tolerances, pinned once.
pub mod tol {
    /// Relative residual bound for the large-r matrix validation of the
    /// coefficient tables (higher-order relations at L <= 8, r <= 10).
    pub const REL_RESIDUAL: f64 = 1e-7;
    /// Eigenvalue match: |computed - predicted| as a fraction of the
    /// spectral diameter.
    pub const EIG_MATCH: f64 = 1e-8;
    /// Projector algebra (idempotency, orthogonality, completeness).
    pub const PROJECTOR: f64 = 1e-10;
    /// Minimal polynomial residual |P_N(W)| on the numeric backend.
    pub const MIN_POLY: f64 = 1e-9;
    /// Divided-polynomial spectra and (2N+1)-block structure.
    pub const DIVIDED: f64 = 1e-7;
    /// q = i relation family at generic parameters.
    pub const QI_FAMILY: f64 = 1e-8;
    /// Hamiltonian symmetry commutator norm at the stated conditions.
    pub const HAM_SYMMETRY: f64 = 1e-7;
    /// Negative controls must exceed this.
    pub const NEGATIVE_CONTROL: f64 = 1e-2;
    /// Hierarchy charge commutation.
    pub const HIERARCHY: f64 = 1e-9;
}

/// Which q regime a chain instance lives in.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum QMode {
    /// Generic q; the default numeric choice is the unit circle at an
    /// irrational angle to stay clear of accidental roots of unity.
    Generic { angle: f64 },
    /// q = e^{i pi / N}.
    RootOfUnity(u32),
}

impl QMode {
    pub fn q(&self) -> Complex64 {
        match self {
            QMode::Generic { angle } => Complex64::from_polar(1.0, *angle),
            QMode::RootOfUnity(n) => {
                Complex64::from_polar(1.0, std::f64::consts::PI / *n as f64)
            }
        }
    }
}

/// Default generic angle: 1/sqrt(2) radians.
pub const GENERIC_ANGLE: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Boundary data of one chain instance. Couplings are exact rationals so
/// the symbolic backend can hold them losslessly; the numeric backend
/// lowers them to doubles.
#[derive(Clone, Debug)]
pub struct ChainParams {
    pub sites: usize,
    pub k_plus: BigRational,
    pub k_minus: BigRational,
    pub eps_plus: BigRational,
    pub eps_minus: BigRational,
    pub q_mode: QMode,
}

/// Dimension caps: dense 2^L matrices.
pub const L_CAP_NUMERIC: usize = 12;
pub const L_CAP_SYMBOLIC: usize = 6;

impl ChainParams {
    pub fn new(
        sites: usize,
        k_plus: BigRational,
        k_minus: BigRational,
        eps_plus: BigRational,
        eps_minus: BigRational,
        q_mode: QMode,
    ) -> Self {
        assert!(sites >= 1, "chain needs at least one site");
        let cap = L_CAP_NUMERIC;
        assert!(sites <= cap, "L = {sites} exceeds the dense cap {cap}");
        if let QMode::RootOfUnity(n) = q_mode {
            assert!(n >= 2, "root-of-unity order must be >= 2");
        }
        Self { sites, k_plus, k_minus, eps_plus, eps_minus, q_mode }
    }

    pub fn dim(&self) -> usize {
        1 << self.sites
    }

    pub fn q(&self) -> Complex64 {
        self.q_mode.q()
    }

    /// eps_i with the i = 0 / 1 naming (eps_0 = eps_+, eps_1 = eps_-).
    pub fn eps(&self, i: usize) -> &BigRational {
        if i == 0 { &self.eps_plus } else { &self.eps_minus }
    }

    pub fn k_plus_f(&self) -> Complex64 {
        rat_c(&self.k_plus)
    }
    pub fn k_minus_f(&self) -> Complex64 {
        rat_c(&self.k_minus)
    }
    pub fn eps_f(&self, i: usize) -> Complex64 {
        rat_c(self.eps(i))
    }

    /// rho = (q + q^-1)^2 k_+ k_- at this instance's q.
    pub fn rho(&self) -> Complex64 {
        let q = self.q();
        let b = q + 1.0 / q;
        b * b * self.k_plus_f() * self.k_minus_f()
    }
}

pub(crate) fn rat_c(r: &BigRational) -> Complex64 {
    Complex64::new(r.to_f64().expect("rational out of f64 range"), 0.0)
}
