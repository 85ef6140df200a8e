//! Exact symbolic backend: dense matrices with [`LaurentQ`] entries and
//! rational boundary parameters. Equality to the zero matrix is exact, so
//! relation checks here are identities in q, not numerical statements.

use super::ChainParams;
use crate::coeff::{CoeffTable, Flavor};
use crate::qring::LaurentQ;
use num_rational::BigRational;
use num_traits::Zero;

/// Dense square matrix over `LaurentQ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymMatrix {
    pub n: usize,
    e: Vec<LaurentQ>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, e: vec![LaurentQ::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = LaurentQ::one();
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|p| p.is_zero())
    }

    pub fn scale(&self, c: &LaurentQ) -> Self {
        Self { n: self.n, e: self.e.iter().map(|p| p * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            e: self.e.iter().zip(&other.e).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            e: self.e.iter().zip(&other.e).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = &out[(i, j)] + a * b;
                }
            }
        }
        out
    }

    pub fn kron(&self, other: &Self) -> Self {
        let n = self.n * other.n;
        let mut out = Self::zeros(n);
        for i1 in 0..self.n {
            for j1 in 0..self.n {
                let a = &self[(i1, j1)];
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..other.n {
                    for j2 in 0..other.n {
                        let b = &other[(i2, j2)];
                        if !b.is_zero() {
                            out[(i1 * other.n + i2, j1 * other.n + j2)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> LaurentQ {
        let mut acc = LaurentQ::zero();
        for i in 0..self.n {
            acc = acc + self[(i, i)].clone();
        }
        acc
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// q-commutator `q A B - q^{-1} B A`.
    pub fn q_commutator(&self, other: &Self, q_exp: i64) -> Self {
        let qp = LaurentQ::q_pow(q_exp);
        let qm = LaurentQ::q_pow(-q_exp);
        self.mul(other).scale(&qp).sub(&other.mul(self).scale(&qm))
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentQ {
        &self[(i, j)]
    }
}

impl std::ops::Index<(usize, usize)> for SymMatrix {
    type Output = LaurentQ;
    fn index(&self, (i, j): (usize, usize)) -> &LaurentQ {
        &self.e[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for SymMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LaurentQ {
        &mut self.e[i * self.n + j]
    }
}

fn sym_2x2(a: LaurentQ, b: LaurentQ, c: LaurentQ, d: LaurentQ) -> SymMatrix {
    let mut m = SymMatrix::zeros(2);
    m[(0, 0)] = a;
    m[(0, 1)] = b;
    m[(1, 0)] = c;
    m[(1, 1)] = d;
    m
}

/// W_0 (i = 0) or W_1 (i = 1) with exact entries: the sum over sites of
/// `q^{±sigma_z} x ... x w_0 x I x ... ` plus the eps term on the full
/// `q^{±sigma_z}` string. Site 1 is the first tensor factor.
pub fn build_w_sym(i: usize, params: &ChainParams) -> SymMatrix {
    assert!(i < 2);
    assert!(
        params.sites <= super::L_CAP_SYMBOLIC,
        "symbolic backend capped at L = {}",
        super::L_CAP_SYMBOLIC
    );
    let sgn: i64 = if i == 0 { 1 } else { -1 };
    let qz = sym_2x2(
        LaurentQ::q_pow(sgn),
        LaurentQ::zero(),
        LaurentQ::zero(),
        LaurentQ::q_pow(-sgn),
    );
    let w0 = sym_2x2(
        LaurentQ::zero(),
        LaurentQ::from_rational(params.k_plus.clone()),
        LaurentQ::from_rational(params.k_minus.clone()),
        LaurentQ::zero(),
    );
    let eye = SymMatrix::identity(2);
    let l = params.sites;
    let mut acc = SymMatrix::zeros(1 << l);
    for site in 0..l {
        let mut m = SymMatrix::identity(1);
        for k in 0..l {
            let f = if k < site { &qz } else if k == site { &w0 } else { &eye };
            m = m.kron(f);
        }
        acc = acc.add(&m);
    }
    let mut estr = SymMatrix::identity(1);
    for _ in 0..l {
        estr = estr.kron(&qz);
    }
    let eps = params.eps(i).clone();
    acc.add(&estr.scale(&LaurentQ::from_rational(eps)))
}

/// Exact check of both cubic q-Dolan-Grady identities; returns the two
/// residual matrices (zero on success).
pub fn check_qdg_sym(w0: &SymMatrix, w1: &SymMatrix, params: &ChainParams) -> (SymMatrix, SymMatrix) {
    // rho = (q+q^-1)^2 k+ k- as an exact Laurent polynomial
    let b = LaurentQ::q_pow(1) + LaurentQ::q_pow(-1);
    let rho = (&b * &b).scale(&(&params.k_plus * &params.k_minus));
    let dg = |a: &SymMatrix, b: &SymMatrix| {
        a.commutator(&a.q_commutator(&a.q_commutator(b, 1), -1))
            .sub(&a.commutator(b).scale(&rho))
    };
    (dg(w0, w1), dg(w1, w0))
}

/// Exact evaluation of the higher-order combination
/// `sum (-1)^{j+p} rho^p c_j W0^{...} W1^r W0^j` on the symbolic backend.
pub fn check_higher_sym(
    w0: &SymMatrix,
    w1: &SymMatrix,
    table: &CoeffTable,
    params: &ChainParams,
) -> SymMatrix {
    assert_eq!(table.flavor, Flavor::Sl2);
    let r = table.r;
    let n = w0.n;
    let b = LaurentQ::q_pow(1) + LaurentQ::q_pow(-1);
    let rho = (&b * &b).scale(&(&params.k_plus * &params.k_minus));
    let mut pw0 = vec![SymMatrix::identity(n)];
    for _ in 0..2 * r + 1 {
        pw0.push(pw0.last().unwrap().mul(w0));
    }
    let mut w1r = SymMatrix::identity(n);
    for _ in 0..r {
        w1r = w1r.mul(w1);
    }
    let right: Vec<SymMatrix> = (0..=2 * r + 1).map(|j| w1r.mul(&pw0[j as usize])).collect();
    let mut acc = SymMatrix::zeros(n);
    let mut rho_pow = LaurentQ::one();
    for p in 0..=r {
        for j in 0..=2 * (r - p) + 1 {
            let c = table.get(p, j);
            let signed = if (j + p) % 2 == 1 { -c } else { c.clone() };
            let term = pw0[(2 * (r - p) + 1 - j) as usize]
                .mul(&right[j as usize])
                .scale(&(&signed * &rho_pow));
            acc = acc.add(&term);
        }
        rho_pow = rho_pow * &rho;
    }
    acc
}

/// Trace identity `Trace(W_i) = eps_i (q + q^-1)^L`, exactly.
pub fn trace_identity(w: &SymMatrix, i: usize, params: &ChainParams) -> bool {
    let b = LaurentQ::q_pow(1) + LaurentQ::q_pow(-1);
    let mut pow = LaurentQ::one();
    for _ in 0..params.sites {
        pow = pow * &b;
    }
    w.trace() == pow.scale(params.eps(i))
}

/// Structural symmetry: W_1 equals W_0 with q -> q^{-1}, eps_+ -> eps_-.
pub fn w1_is_w0_mirrored(params: &ChainParams) -> bool {
    let w1 = build_w_sym(1, params);
    let mut mirrored = ChainParams {
        eps_plus: params.eps_minus.clone(),
        eps_minus: params.eps_plus.clone(),
        ..params.clone()
    };
    mirrored.eps_plus = params.eps_minus.clone();
    let w0m = build_w_sym(0, &mirrored);
    // substitute q -> q^-1 entrywise
    let n = w0m.n;
    let mut flipped = SymMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            flipped[(i, j)] = w0m[(i, j)].subst_q_power(-1);
        }
    }
    flipped == w1
}

/// Small exact rational, a convenience for parameter fixtures.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Draw small nonzero rationals for parameter sets, deterministically.
pub fn random_rational(rng: &mut impl rand::Rng) -> BigRational {
    loop {
        let n = rng.gen_range(-9i64..=9);
        let d = rng.gen_range(1i64..=9);
        let r = rational(n, d);
        if !r.is_zero() {
            return r;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::sl2::genpoly_c;
    use crate::reps::{QMode, GENERIC_ANGLE};
    use rand::SeedableRng;

    fn params(l: usize) -> ChainParams {
        ChainParams::new(
            l,
            rational(7, 10),
            rational(31, 100),
            rational(83, 100),
            rational(57, 100),
            QMode::Generic { angle: GENERIC_ANGLE },
        )
    }

    #[test]
    fn single_site_matrix() {
        // L=1: W_0 = [[q eps+, k+], [k-, q^-1 eps+]]
        let p = params(1);
        let w = build_w_sym(0, &p);
        assert_eq!(w[(0, 0)], LaurentQ::q_pow(1).scale(&p.eps_plus));
        assert_eq!(w[(0, 1)], LaurentQ::from_rational(p.k_plus.clone()));
        assert_eq!(w[(1, 0)], LaurentQ::from_rational(p.k_minus.clone()));
        assert_eq!(w[(1, 1)], LaurentQ::q_pow(-1).scale(&p.eps_plus));
    }

    #[test]
    fn trace_and_mirror() {
        for l in 1..=3 {
            let p = params(l);
            assert!(trace_identity(&build_w_sym(0, &p), 0, &p));
            assert!(trace_identity(&build_w_sym(1, &p), 1, &p));
            assert!(w1_is_w0_mirrored(&p));
        }
    }

    #[test]
    fn qdg_exact_l1() {
        let p = params(1);
        let (r0, r1) = check_qdg_sym(&build_w_sym(0, &p), &build_w_sym(1, &p), &p);
        assert!(r0.is_zero() && r1.is_zero());
    }

    #[test]
    fn qdg_exact_l3_random_params() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2 {
            let p = ChainParams::new(
                3,
                random_rational(&mut rng),
                random_rational(&mut rng),
                random_rational(&mut rng),
                random_rational(&mut rng),
                QMode::Generic { angle: GENERIC_ANGLE },
            );
            let (r0, r1) = check_qdg_sym(&build_w_sym(0, &p), &build_w_sym(1, &p), &p);
            assert!(r0.is_zero() && r1.is_zero());
        }
    }

    #[test]
    fn higher_r2_exact_l2() {
        let p = params(2);
        let res = check_higher_sym(&build_w_sym(0, &p), &build_w_sym(1, &p), &genpoly_c(2), &p);
        assert!(res.is_zero());
    }
}
