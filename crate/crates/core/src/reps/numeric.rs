//! Numeric backend: dense complex matrices at a fixed q, with
//! tolerance-based residuals. Spectral structure is verified through
//! Lagrange projectors built from the predicted eigenvalues, so no
//! general eigensolver is involved: if the predictions were wrong, the
//! projector algebra would not close.

use super::symbolic::{build_w_sym, SymMatrix};
use super::{ChainParams, QMode};
use crate::qring::{qfact, qnum};
use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

pub fn comm(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

pub fn qcomm(a: &CMat, b: &CMat, q: Complex64) -> CMat {
    (a * b).scale_cpx(q) - (b * a).scale_cpx(1.0 / q)
}

trait ScaleCpx {
    fn scale_cpx(self, c: Complex64) -> CMat;
}

impl ScaleCpx for CMat {
    fn scale_cpx(self, c: Complex64) -> CMat {
        self.map(|x| x * c)
    }
}

fn pauli(kind: char) -> CMat {
    let i = Complex64::new(0.0, 1.0);
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    match kind {
        '1' => CMat::from_row_slice(2, 2, &[o, l, l, o]),
        '2' => CMat::from_row_slice(2, 2, &[o, -i, i, o]),
        'z' => CMat::from_row_slice(2, 2, &[l, o, o, -l]),
        '+' => CMat::from_row_slice(2, 2, &[o, l, o, o]),
        '-' => CMat::from_row_slice(2, 2, &[o, o, l, o]),
        _ => unreachable!(),
    }
}

fn kron_chain(factors: &[&CMat]) -> CMat {
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = acc.kronecker(f);
    }
    acc
}

/// W_0 or W_1 at a fixed complex q (site 1 = first tensor factor).
pub fn build_w_num(i: usize, l: usize, q: Complex64, kp: Complex64, km: Complex64, eps: Complex64) -> CMat {
    assert!(i < 2);
    let qz = if i == 0 {
        CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![q, 1.0 / q]))
    } else {
        CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0 / q, q]))
    };
    let w0 = pauli('+').scale_cpx(kp) + pauli('-').scale_cpx(km);
    let eye = CMat::identity(2, 2);
    let mut acc = CMat::zeros(1 << l, 1 << l);
    for site in 0..l {
        let factors: Vec<&CMat> = (0..l)
            .map(|k| if k < site { &qz } else if k == site { &w0 } else { &eye })
            .collect();
        acc += kron_chain(&factors);
    }
    let factors: Vec<&CMat> = (0..l).map(|_| &qz).collect();
    acc + kron_chain(&factors).scale_cpx(eps)
}

/// Both W operators from chain params, numerically.
pub fn build_w_pair(params: &ChainParams) -> (CMat, CMat) {
    let q = params.q();
    let (kp, km) = (params.k_plus_f(), params.k_minus_f());
    (
        build_w_num(0, params.sites, q, kp, km, params.eps_f(0)),
        build_w_num(1, params.sites, q, kp, km, params.eps_f(1)),
    )
}

/// Max-abs residual of both cubic q-Dolan-Grady identities
/// `[W_i, [W_i, [W_i, W_j]_q]_{q^-1}] = rho [W_i, W_j]`.
pub fn check_qdg_num(w0: &CMat, w1: &CMat, q: Complex64, rho: Complex64) -> f64 {
    let lhs0 = comm(w0, &qcomm(w0, &qcomm(w0, w1, q), 1.0 / q)) - comm(w0, w1).scale_cpx(rho);
    let lhs1 = comm(w1, &qcomm(w1, &qcomm(w1, w0, q), 1.0 / q)) - comm(w1, w0).scale_cpx(rho);
    max_abs(&lhs0).max(max_abs(&lhs1))
}

/// Relative residual of the higher-order combination on matrices:
/// `||Delta_r|| / max_term ||term||`, with the table evaluated at q.
pub fn check_higher_sl2_num(
    w0: &CMat,
    w1: &CMat,
    table: &crate::coeff::CoeffTable,
    q: Complex64,
    rho: Complex64,
) -> f64 {
    let r = table.r;
    let n = w0.nrows();
    let mut pw0 = vec![CMat::identity(n, n)];
    for _ in 0..2 * r + 1 {
        pw0.push(pw0.last().unwrap() * w0);
    }
    let mut w1r = CMat::identity(n, n);
    for _ in 0..r {
        w1r = &w1r * w1;
    }
    let right: Vec<CMat> = (0..=2 * r + 1).map(|j| &w1r * &pw0[j as usize]).collect();
    let mut acc = CMat::zeros(n, n);
    let mut scale = 0.0f64;
    for p in 0..=r {
        let rp = rho.powu(p);
        for j in 0..=2 * (r - p) + 1 {
            let c = table.get(p, j).eval_complex(q);
            let sign = if (j + p) % 2 == 1 { -1.0 } else { 1.0 };
            let term = (&pw0[(2 * (r - p) + 1 - j) as usize] * &right[j as usize])
                .scale_cpx(sign * c * rp);
            scale = scale.max(max_abs(&term));
            acc += term;
        }
    }
    max_abs(&acc) / scale.max(f64::MIN_POSITIVE)
}

/// Spectral parameters a_2, a_3 with `a_2 + a_3 = eps`,
/// `a_2 a_3 = -k_+ k_- / (q - q^-1)^2`. For `k_- = 0` (or `k_+ = 0`) the
/// pair degenerates to `(eps, 0)`.
pub fn a23(q: Complex64, kp: Complex64, km: Complex64, eps: Complex64) -> (Complex64, Complex64) {
    if (kp * km).norm() == 0.0 {
        return (eps, Complex64::new(0.0, 0.0));
    }
    let d = q - 1.0 / q;
    let s = (eps * eps + 4.0 * kp * km / (d * d)).sqrt();
    ((eps + s) / 2.0, (eps - s) / 2.0)
}

/// d a_2 / dq on the branch above (zero in the degenerate case).
pub fn a2_derivative(q: Complex64, kp: Complex64, km: Complex64, eps: Complex64) -> Complex64 {
    if (kp * km).norm() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let d = q - 1.0 / q;
    let s = (eps * eps + 4.0 * kp * km / (d * d)).sqrt();
    -2.0 * kp * km * (1.0 + 1.0 / (q * q)) / (s * d * d * d)
}

pub fn theta(q: Complex64, a2: Complex64, a3: Complex64, l: usize, n: usize) -> Complex64 {
    let e = l as i32 - 2 * n as i32;
    a2 * q.powi(e) + a3 * q.powi(-e)
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Predicted spectrum: distinct eigenvalues with multiplicities.
/// Generic q: L+1 values `theta_n`, multiplicity `C(L, n)`.
/// q = e^{i pi/N}: N values `theta_t`, multiplicity `sum_k C(L, t + kN)`.
pub fn predicted_spectrum(params: &ChainParams, i: usize) -> Vec<(Complex64, usize)> {
    let q = params.q();
    let l = params.sites;
    let (a2, a3) = a23(q, params.k_plus_f(), params.k_minus_f(), params.eps_f(i));
    match params.q_mode {
        QMode::Generic { .. } => (0..=l).map(|n| (theta(q, a2, a3, l, n), binom(l, n))).collect(),
        QMode::RootOfUnity(nn) => {
            let nn = nn as usize;
            (0..nn.min(l + 1))
                .map(|t| {
                    let mult: usize = (0..).map(|k| t + k * nn).take_while(|&m| m <= l).map(|m| binom(l, m)).sum();
                    (theta(q, a2, a3, l, t), mult)
                })
                .filter(|(_, m)| *m > 0)
                .collect()
        }
    }
}

/// Eigenprojectors by Lagrange interpolation at the predicted distinct
/// eigenvalues: `E_n = prod_{j != n} (W - theta_j) / (theta_n - theta_j)`.
pub fn lagrange_projectors(w: &CMat, thetas: &[Complex64]) -> Vec<CMat> {
    let n = w.nrows();
    thetas
        .iter()
        .enumerate()
        .map(|(t, &th_t)| {
            let mut acc = CMat::identity(n, n);
            for (j, &th_j) in thetas.iter().enumerate() {
                if j != t {
                    acc = &acc * &(w - CMat::identity(n, n).scale_cpx(th_j));
                    acc = acc.scale_cpx(1.0 / (th_t - th_j));
                }
            }
            acc
        })
        .collect()
}

/// Spectral data: predicted eigenvalues, multiplicities and projectors.
pub struct SpectralData {
    pub values: Vec<Complex64>,
    pub multiplicities: Vec<usize>,
    pub projectors: Vec<CMat>,
    /// spectral diameter, the scale for eigenvalue tolerances
    pub diameter: f64,
}

/// Worst projector-algebra defect: idempotency, orthogonality,
/// completeness, and the eigen-relation `W E_n = theta_n E_n`;
/// multiplicities are checked through `trace E_n`.
pub struct SpectrumReport {
    pub projector_defect: f64,
    pub eigen_defect: f64,
    pub multiplicity_ok: bool,
}

pub fn spectrum(w: &CMat, predicted: &[(Complex64, usize)]) -> (SpectralData, SpectrumReport) {
    let thetas: Vec<Complex64> = predicted.iter().map(|p| p.0).collect();
    let mults: Vec<usize> = predicted.iter().map(|p| p.1).collect();
    let diameter = thetas
        .iter()
        .flat_map(|a| thetas.iter().map(move |b| (a - b).norm()))
        .fold(0.0, f64::max)
        .max(1.0);
    let projectors = lagrange_projectors(w, &thetas);
    let n = w.nrows();
    let mut proj_defect = 0.0f64;
    let mut sum = CMat::zeros(n, n);
    for (a, ea) in projectors.iter().enumerate() {
        sum += ea;
        for (b, eb) in projectors.iter().enumerate() {
            let prod = ea * eb;
            let expect = if a == b { ea.clone() } else { CMat::zeros(n, n) };
            proj_defect = proj_defect.max(max_abs(&(prod - expect)));
        }
    }
    proj_defect = proj_defect.max(max_abs(&(sum - CMat::identity(n, n))));
    let mut eig_defect = 0.0f64;
    let mut mult_ok = true;
    for ((ea, &th), &m) in projectors.iter().zip(&thetas).zip(&mults) {
        eig_defect = eig_defect.max(max_abs(&(w * ea - ea.clone().scale_cpx(th))) / diameter);
        let tr = ea.trace();
        if (tr - Complex64::new(m as f64, 0.0)).norm() > 1e-6 * (n as f64) {
            mult_ok = false;
        }
    }
    (
        SpectralData { values: thetas, multiplicities: mults, projectors, diameter },
        SpectrumReport { projector_defect: proj_defect, eigen_defect: eig_defect, multiplicity_ok: mult_ok },
    )
}

/// Block-structure report for `E_m X E_n` sandwiches.
pub struct BlockReport {
    /// max over |m-n| > reach (forbidden blocks)
    pub beyond: f64,
    /// max over the allowed band (for scale/reporting)
    pub within: f64,
}

/// Tridiagonal-band check: `E_m X E_n = 0` for `|m - n| > reach`; with
/// `cyclic`, distance is measured modulo the number of blocks.
pub fn band_structure(spec: &SpectralData, x: &CMat, reach: usize, cyclic: bool) -> BlockReport {
    let nb = spec.projectors.len() as i64;
    let mut beyond = 0.0f64;
    let mut within = 0.0f64;
    for (m, em) in spec.projectors.iter().enumerate() {
        for (n, en) in spec.projectors.iter().enumerate() {
            let d = (m as i64 - n as i64).abs();
            let dist = if cyclic { d.min(nb - d) } else { d };
            let v = max_abs(&(em * x * en));
            if dist > reach as i64 {
                beyond = beyond.max(v);
            } else {
                within = within.max(v);
            }
        }
    }
    BlockReport { beyond, within }
}

/// Minimal-polynomial coefficients from the distinct eigenvalues:
/// `P(x) = prod (x - theta_t) = sum_k coeffs[k] x^{N-k}` with
/// `coeffs[k] = (-1)^k e_k`.
pub fn minimal_polynomial(thetas: &[Complex64]) -> Vec<Complex64> {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for &th in thetas {
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c * th;
        }
        coeffs = next;
    }
    coeffs
}

/// Evaluate `sum_k coeffs[k] W^{N-k}`.
pub fn poly_mat(coeffs: &[Complex64], w: &CMat) -> CMat {
    let n = w.nrows();
    let deg = coeffs.len() - 1;
    let mut pows = vec![CMat::identity(n, n)];
    for _ in 0..deg {
        pows.push(pows.last().unwrap() * w);
    }
    let mut acc = CMat::zeros(n, n);
    for (k, &c) in coeffs.iter().enumerate() {
        acc += pows[deg - k].clone().scale_cpx(c);
    }
    acc
}

/// Tabulated closed forms of P_N for N = 2..6, as coefficient lists in
/// (eps_i, k+k-) and the parity of L; q is the primitive root e^{i pi/N}.
pub fn min_poly_closed_form(n: u32, l: usize, eps: Complex64, kpkm: Complex64) -> Vec<Complex64> {
    let sgn = if l % 2 == 0 { -1.0 } else { 1.0 }; // (-1)^{L+1}
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let q = Complex64::from_polar(1.0, std::f64::consts::PI / n as f64);
    match n {
        2 => vec![one, zero, sgn * (eps * eps - (1.0 + sgn) / 2.0 * kpkm)],
        3 => vec![one, zero, -kpkm, sgn * eps * (eps * eps - kpkm)],
        4 => vec![
            one,
            zero,
            -2.0 * kpkm,
            zero,
            sgn * (eps.powu(4) - 2.0 * eps * eps * kpkm + (1.0 + sgn) / 2.0 * kpkm * kpkm),
        ],
        5 => {
            let rho = kpkm * (q + 1.0 / q) * (q + 1.0 / q);
            let s5 = 5f64.sqrt();
            vec![
                one,
                zero,
                -rho * (q.powi(4) + q.powi(-4) + 3.0),
                zero,
                rho * rho * (q * q + 1.0 / (q * q)) * (q * q + 1.0 / (q * q)),
                sgn * (s5 + 3.0) / 4.0 * eps * (eps * eps - kpkm) * (3.0 * eps * eps - s5 * eps * eps - 2.0 * kpkm),
            ]
        }
        6 => vec![
            one,
            zero,
            -6.0 * kpkm,
            zero,
            9.0 * kpkm * kpkm,
            zero,
            sgn * (eps.powu(6) - 6.0 * kpkm * eps.powu(4) + 9.0 * kpkm * kpkm * eps * eps
                - 2.0 * (1.0 + sgn) * kpkm.powu(3)),
        ],
        _ => panic!("closed form tabulated for N = 2..6 only"),
    }
}

/// Divided polynomial `W^[N]_i = lim_{q -> e^{i pi/N}} P_N(W_i(q)) / [N]_q!`,
/// computed entrywise by L'Hopital: symbolic powers of W_i(q), exact
/// formal derivative, complex evaluation at the root. Panics if an entry
/// of `P_N(W_i)` fails to vanish at the root (assembly error).
pub fn divided_polynomial(i: usize, params: &ChainParams) -> CMat {
    let nroot = match params.q_mode {
        QMode::RootOfUnity(n) => n,
        _ => panic!("divided polynomial requires root-of-unity mode"),
    };
    let q0 = params.q();
    let (a2, a3) = a23(q0, params.k_plus_f(), params.k_minus_f(), params.eps_f(i));
    let l = params.sites;
    let thetas: Vec<Complex64> = (0..nroot as usize).map(|t| theta(q0, a2, a3, l, t)).collect();
    let coeffs = minimal_polynomial(&thetas);

    let ws = build_w_sym(i, params);
    let dim = ws.n;
    let mut pows: Vec<SymMatrix> = vec![SymMatrix::identity(dim)];
    for _ in 0..nroot {
        pows.push(pows.last().unwrap().mul(&ws));
    }
    // denominator (d/dq [N]_q) * [N-1]_q! at q0
    let denom = qnum(nroot).derivative().eval_complex(q0) * qfact(nroot - 1).eval_complex(q0);
    assert!(denom.norm() > 1e-12, "degenerate denominator in the divided limit");

    let nn = nroot as usize;
    let scale: f64 = pows
        .iter()
        .map(|m| {
            (0..dim)
                .flat_map(|a| (0..dim).map(move |b| (a, b)))
                .map(|(a, b)| m.entry(a, b).eval_complex(q0).norm())
                .fold(0.0, f64::max)
        })
        .fold(1.0, f64::max);
    let mut out = CMat::zeros(dim, dim);
    for a in 0..dim {
        for b in 0..dim {
            let mut val = Complex64::new(0.0, 0.0);
            let mut der = Complex64::new(0.0, 0.0);
            for (k, &ck) in coeffs.iter().enumerate() {
                let entry = pows[nn - k].entry(a, b);
                val += ck * entry.eval_complex(q0);
                der += ck * entry.derivative().eval_complex(q0);
            }
            assert!(
                val.norm() <= 1e-8 * scale,
                "entry ({a},{b}) of P_N(W) does not vanish at the root: |{val}|"
            );
            out[(a, b)] = der / denom;
        }
    }
    out
}

/// Predicted divided-polynomial eigenvalue on V_n (the fine ladder).
pub fn divided_theta(i: usize, params: &ChainParams, n: usize) -> Complex64 {
    let nroot = match params.q_mode {
        QMode::RootOfUnity(nr) => nr,
        _ => panic!("root-of-unity mode required"),
    };
    let q = params.q();
    let (kp, km, eps) = (params.k_plus_f(), params.k_minus_f(), params.eps_f(i));
    let (a2, a3) = a23(q, kp, km, eps);
    let da2 = a2_derivative(q, kp, km, eps);
    let l = params.sites;
    let t = n % nroot as usize;
    let thetas: Vec<Complex64> = (0..nroot as usize).map(|s| theta(q, a2, a3, l, s)).collect();
    let mut prod = Complex64::new(1.0, 0.0);
    for (j, &th) in thetas.iter().enumerate() {
        if j != t {
            prod *= thetas[t] - th;
        }
    }
    let c0 = -(q - 1.0 / q) / (2.0 * nroot as f64 * qfact(nroot - 1).eval_complex(q)) * prod;
    let e = l as i32 - 2 * n as i32;
    c0 * (da2 * (q.powi(e + 1) - q.powi(-e + 1)) + (e as f64) * (a2 * q.powi(e) - a3 * q.powi(-e)))
}

/// Reduced spectrum at `k_- = 0`: arithmetic progression in n.
pub fn divided_theta_reduced(i: usize, params: &ChainParams, n: usize) -> Complex64 {
    let nroot = match params.q_mode {
        QMode::RootOfUnity(nr) => nr,
        _ => panic!("root-of-unity mode required"),
    };
    let q = params.q();
    let eps = params.eps_f(i);
    let l = params.sites;
    let iunit = Complex64::new(0.0, 1.0);
    let sgn_l = if l % 2 == 0 { 1.0 } else { -1.0 };
    eps.powu(nroot) * (q - 1.0 / q).powu(nroot) / (2.0 * nroot as f64)
        * iunit.powu(nroot + 1)
        * sgn_l
        * Complex64::new(l as f64 - 2.0 * n as f64, 0.0)
}

/// N = 2 case: `(-1)^L (L - 2n) eps sqrt(k+k- - eps^2)` (either sqrt branch
/// labels the same set).
pub fn divided_theta_n2(i: usize, params: &ChainParams, n: usize) -> Complex64 {
    let eps = params.eps_f(i);
    let kpkm = params.k_plus_f() * params.k_minus_f();
    let a = eps * (kpkm - eps * eps).sqrt();
    let l = params.sites;
    let sgn = if l % 2 == 0 { 1.0 } else { -1.0 };
    a * sgn * (l as f64 - 2.0 * n as f64)
}

/// Integer coefficients of the N-th higher-order classical relations:
/// `c^[N,p]_k = C(2N+1-2p, k) * sum_{s_1<...<s_p <= N} (s_1...s_p)^2`.
pub fn ndg_coeff(n: u32, p: u32, k: u32) -> f64 {
    fn subset_square_sum(n: u32, p: u32) -> f64 {
        fn rec(start: u32, n: u32, p: u32) -> f64 {
            if p == 0 {
                return 1.0;
            }
            let mut acc = 0.0;
            for s in start..=n {
                acc += (s * s) as f64 * rec(s + 1, n, p - 1);
            }
            acc
        }
        rec(1, n, p)
    }
    // C(2N+1-2p, k) is symmetric in k across the row, so direct evaluation
    // covers the whole range.
    let top = 2 * n + 1 - 2 * p;
    let mut b = 1.0f64;
    let kk = k.min(top - k);
    for i in 0..kk {
        b = b * (top - i) as f64 / (i + 1) as f64;
    }
    b * subset_square_sum(n, p)
}

/// rho_i of the divided-polynomial relations at `k_- = 0`:
/// `(-1)^{N+1} eps_i^{2N} (q - q^-1)^{2N} / N^2`.
pub fn ndg_rho(nroot: u32, q: Complex64, eps: Complex64) -> Complex64 {
    let sgn = if nroot % 2 == 0 { -1.0 } else { 1.0 };
    eps.powu(2 * nroot) * (q - 1.0 / q).powu(2 * nroot) / (nroot as f64 * nroot as f64) * sgn
}

/// Relative residual of both N-DG relations for the divided pair.
pub fn check_ndg(wn0: &CMat, wn1: &CMat, nroot: u32, rho0: Complex64, rho1: Complex64) -> f64 {
    let n = wn0.nrows();
    let mut worst = 0.0f64;
    for (a, b, rho) in [(wn0, wn1, rho0), (wn1, wn0, rho1)] {
        let mut pows = vec![CMat::identity(n, n)];
        for _ in 0..2 * nroot + 1 {
            pows.push(pows.last().unwrap() * a);
        }
        let mut acc = CMat::zeros(n, n);
        let mut scale = 0.0f64;
        for p in 0..=nroot {
            let rp = rho.powu(p);
            for k in 0..=2 * (nroot - p) + 1 {
                let c = ndg_coeff(nroot, p, k);
                let sign = if (k + p) % 2 == 1 { -1.0 } else { 1.0 };
                let term = (&pows[(2 * (nroot - p) + 1 - k) as usize] * b * &pows[k as usize])
                    .scale_cpx(Complex64::new(sign * c, 0.0) * rp);
                scale = scale.max(max_abs(&term));
                acc += term;
            }
        }
        worst = worst.max(max_abs(&acc) / scale.max(f64::MIN_POSITIVE));
    }
    worst
}

/// Classical Dolan-Grady cubic `[x,[x,[x,y]]] - rho [x,y]`, max-abs.
pub fn dg3_residual(x: &CMat, y: &CMat, rho: Complex64) -> f64 {
    let inner = comm(x, &comm(x, &comm(x, y)));
    max_abs(&(inner - comm(x, y).scale_cpx(rho)))
}

/// First mixed relation: `sum_k (-1)^k [2N-1 ch k]_{q0} W^{2N-1-k} X W^k`,
/// relative residual.
pub fn check_mixed_serre(w: &CMat, x: &CMat, nroot: u32, q0: Complex64) -> f64 {
    let n = w.nrows();
    let mut pows = vec![CMat::identity(n, n)];
    for _ in 0..2 * nroot - 1 {
        pows.push(pows.last().unwrap() * w);
    }
    let mut acc = CMat::zeros(n, n);
    let mut scale = 0.0f64;
    for k in 0..=2 * nroot - 1 {
        let c = crate::qring::qbinom(2 * nroot - 1, k).eval_complex(q0);
        let sign = if k % 2 == 1 { -1.0 } else { 1.0 };
        let term = (&pows[(2 * nroot - 1 - k) as usize] * x * &pows[k as usize]).scale_cpx(sign * c);
        scale = scale.max(max_abs(&term));
        acc += term;
    }
    max_abs(&acc) / scale.max(f64::MIN_POSITIVE)
}

/// Report of the q = i family at generic parameters.
pub struct QiReport {
    pub nilpotency: f64,
    pub mixed_cubic_w: f64,
    pub mixed_cubic_wn: f64,
    pub quintic: f64,
}

/// q = i (N = 2): the squared-generator identity, both Onsager-type mixed
/// relations, and the degree-5 relation between the divided pair.
pub fn check_qi_case(params: &ChainParams) -> QiReport {
    assert_eq!(params.q_mode, QMode::RootOfUnity(2), "q = i family requires N = 2");
    let l = params.sites;
    let dim = 1 << l;
    let (w0, w1) = build_w_pair(params);
    let wn0 = divided_polynomial(0, params);
    let wn1 = divided_polynomial(1, params);
    let kpkm = params.k_plus_f() * params.k_minus_f();
    let sgn = if l % 2 == 0 { 1.0 } else { -1.0 };
    let mut nilp = 0.0f64;
    for (i, w) in [(0, &w0), (1, &w1)] {
        let eps = params.eps_f(i);
        let c = sgn * (eps * eps - (1.0 - sgn) / 2.0 * kpkm);
        nilp = nilp.max(max_abs(&(w * w - CMat::identity(dim, dim).scale_cpx(c))));
    }
    let mut mix_w = 0.0f64;
    for (i, w, xn) in [(0usize, &w0, &wn1), (1, &w1, &wn0)] {
        let eps = params.eps_f(i);
        let rho1 = 4.0 * sgn * (eps * eps - (1.0 - sgn) / 2.0 * kpkm);
        mix_w = mix_w.max(dg3_residual(w, xn, rho1));
    }
    let mut mix_wn = 0.0f64;
    for (j, xn, w) in [(1usize, &wn1, &w0), (0, &wn0, &w1)] {
        // X = W^[2]_{i+1}, rho^{(2)}_{i+1} with eps_{i+1}
        let eps = params.eps_f(j);
        let rho2 = 4.0 * eps * eps * (kpkm - eps * eps);
        mix_wn = mix_wn.max(dg3_residual(xn, w, rho2));
    }
    let mut quint = 0.0f64;
    for (i, a, b) in [(0usize, &wn0, &wn1), (1, &wn1, &wn0)] {
        let eps = params.eps_f(i);
        let rho2 = 4.0 * eps * eps * (kpkm - eps * eps);
        let inner = a * a * a * a * b - (a * a * a * b * a).scale_cpx(4.0.into())
            + (a * a * b * a * a).scale_cpx(6.0.into())
            - (a * b * a * a * a).scale_cpx(4.0.into())
            + b * a * a * a * a
            - (a * a * b - (a * b * a).scale_cpx(2.0.into()) + b * a * a).scale_cpx(5.0 * rho2)
            + b.clone().scale_cpx(4.0 * rho2 * rho2);
        quint = quint.max(max_abs(&comm(a, &inner)));
    }
    QiReport { nilpotency: nilp, mixed_cubic_w: mix_w, mixed_cubic_wn: mix_wn, quintic: quint }
}

/// Boundary fields of the open-chain Hamiltonian. The unbarred set acts
/// on the last tensor factor and the barred set on the first, matching
/// the site convention of the W operators.
#[derive(Clone, Copy, Debug, Default)]
pub struct BoundaryFields {
    pub h3: Complex64,
    pub h_plus: Complex64,
    pub h_minus: Complex64,
    pub hbar3: Complex64,
    pub hbar_plus: Complex64,
    pub hbar_minus: Complex64,
}

/// Bulk XXZ couplings plus boundary fields:
/// `sum_k (s1 s1 + s2 s2 + Delta sz sz) + boundary terms`,
/// `Delta = (q + q^-1)/2`.
pub fn build_hamiltonian(l: usize, q: Complex64, f: &BoundaryFields) -> CMat {
    assert!(l >= 2, "bulk Hamiltonian needs at least two sites");
    let delta = (q + 1.0 / q) / 2.0;
    let eye = CMat::identity(2, 2);
    let (s1, s2, sz, sp, sm) = (pauli('1'), pauli('2'), pauli('z'), pauli('+'), pauli('-'));
    let dim = 1 << l;
    let mut h = CMat::zeros(dim, dim);
    for k in 0..l - 1 {
        for (m, c) in [(&s1, Complex64::new(1.0, 0.0)), (&s2, Complex64::new(1.0, 0.0)), (&sz, delta)] {
            let factors: Vec<&CMat> = (0..l)
                .map(|s| if s == k || s == k + 1 { m } else { &eye })
                .collect();
            h += kron_chain(&factors).scale_cpx(c);
        }
    }
    let gq = (q - 1.0 / q) / 2.0;
    let last = sz.clone().scale_cpx(gq * f.h3) + sp.clone().scale_cpx(f.h_plus) + sm.clone().scale_cpx(f.h_minus);
    let first =
        sz.clone().scale_cpx(gq * f.hbar3) + sp.clone().scale_cpx(f.hbar_plus) + sm.clone().scale_cpx(f.hbar_minus);
    let mut factors: Vec<&CMat> = vec![&eye; l];
    factors[l - 1] = &last;
    h += kron_chain(&factors);
    let mut factors: Vec<&CMat> = vec![&eye; l];
    factors[0] = &first;
    h += kron_chain(&factors);
    h
}

/// The boundary parametrisation of the integrable open chain:
/// `h3 = (eps+ - eps-)/(eps+ + eps-)`, `h± = 2 k± / (eps+ + eps-)`, and
/// the barred mirror on the other end.
pub fn integrable_fields(
    eps: (Complex64, Complex64),
    k: (Complex64, Complex64),
    eps_bar: (Complex64, Complex64),
    k_bar: (Complex64, Complex64),
) -> BoundaryFields {
    let s = eps.0 + eps.1;
    let sb = eps_bar.0 + eps_bar.1;
    BoundaryFields {
        h3: (eps.0 - eps.1) / s,
        h_plus: 2.0 * k.0 / s,
        h_minus: 2.0 * k.1 / s,
        hbar3: (eps_bar.0 - eps_bar.1) / sb,
        hbar_plus: 2.0 * k_bar.0 / sb,
        hbar_minus: 2.0 * k_bar.1 / sb,
    }
}

/// The condition set under which `[H, W^[N]_i] = 0` at `k_- = 0`:
/// barred transverse fields and `h_-` vanish, `hbar3 = (-1)^i`, `h_+`
/// free, `h3 = (-1)^i (-k_+ + eps_i h_+)/k_+`.
pub fn symmetry_fields(i: usize, params: &ChainParams, h_plus: Complex64) -> BoundaryFields {
    let sgn = if i == 0 { 1.0 } else { -1.0 };
    let kp = params.k_plus_f();
    let eps = params.eps_f(i);
    BoundaryFields {
        h3: sgn * (-kp + eps * h_plus) / kp,
        h_plus,
        h_minus: Complex64::new(0.0, 0.0),
        hbar3: Complex64::new(sgn, 0.0),
        hbar_plus: Complex64::new(0.0, 0.0),
        hbar_minus: Complex64::new(0.0, 0.0),
    }
}

/// Commutator norms of `[H, W^[N]_i]` and `[H, W_i]` under the stated
/// conditions, plus a negative control with one condition violated.
pub struct SymmetryReport {
    pub comm_divided: f64,
    pub comm_basic: f64,
    pub negative_control: f64,
}

pub fn check_symmetry_conditions(i: usize, params: &ChainParams, h_plus: Complex64) -> SymmetryReport {
    assert!(params.k_minus_f().norm() == 0.0, "symmetry conditions require k_- = 0");
    let q = params.q();
    let l = params.sites;
    let wn = divided_polynomial(i, params);
    let w = build_w_num(i, l, q, params.k_plus_f(), params.k_minus_f(), params.eps_f(i));
    let fields = symmetry_fields(i, params, h_plus);
    let h = build_hamiltonian(l, q, &fields);
    let mut bad = fields;
    bad.hbar_plus = Complex64::new(1.0, 0.0);
    let hbad = build_hamiltonian(l, q, &bad);
    SymmetryReport {
        comm_divided: max_abs(&comm(&h, &wn)),
        comm_basic: max_abs(&comm(&h, &w)),
        negative_control: max_abs(&comm(&hbad, &wn)),
    }
}

/// Total S^z, for the bulk-conservation check.
pub fn total_sz(l: usize) -> CMat {
    let eye = CMat::identity(2, 2);
    let sz = pauli('z');
    let dim = 1 << l;
    let mut acc = CMat::zeros(dim, dim);
    for k in 0..l {
        let factors: Vec<&CMat> = (0..l).map(|s| if s == k { &sz } else { &eye }).collect();
        acc += kron_chain(&factors);
    }
    acc
}
