//! The simply-laced (ADE) flavor: same three routes with the
//! parity-dependent structure (one linked pair of generators, plain
//! q-brackets, pmax = floor((r+1)/2)).

use super::sl2::{bp_mul, for_subsets, quad_factor, x_minus_y};
use super::{CoeffTable, Flavor, Provenance};
use crate::freealg::{normalize_ade, NcPoly, Word};
use crate::qring::{qbinom, qnum, LaurentQ};
use crate::rho::RhoPoly;
use num_complex::Complex64;
use std::collections::HashMap;

fn binom_u(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    acc
}

/// Closed-form conjecture sum for the ADE `c^[r,p]_k`; valid for small `k`,
/// reflected by `c_k = c_{r-2p+1-k}` otherwise. Terms whose factorial
/// arguments would go negative are absent.
pub fn conjecture_c_ade(r: u32, p: u32, k: u32) -> LaurentQ {
    let pmax = (r + 1) / 2;
    assert!(p <= pmax, "row index out of range: p={p}");
    let kmax = r + 1 - 2 * p;
    assert!(k <= kmax, "column index out of range: k={k}");
    let k = k.min(kmax - k);

    let alpha = if r % 2 == 0 { 1u32 } else { 2 };
    let cap = (r + 1) / 2;
    // same-parity ladder {r - 2*floor((r-1)/2), ..., r-2, r}
    let lo = r - 2 * ((r - 1) / 2);
    let ladder: Vec<u32> = (lo..=r).step_by(2).collect();

    let mut total = LaurentQ::zero();
    for l in 0..=k / alpha {
        let n1 = cap as i64 - k as i64 + (alpha * l) as i64 - p as i64;
        let m = (alpha * l) / 2;
        if n1 < 0 || (m as i64) > n1 {
            continue;
        }
        let mult = binom_u(n1 as u32, m);
        if mult == 0 {
            continue;
        }
        let nt = (k - alpha * l) as usize;
        let mut inner = LaurentQ::zero();
        for_subsets(&ladder, p as usize, &mut |s| {
            let rest: Vec<u32> = ladder.iter().copied().filter(|x| !s.contains(x)).collect();
            for_subsets(&rest, nt, &mut |t| {
                let mut term = LaurentQ::one();
                for &si in s {
                    let b = qnum(si);
                    term = term * &b * &b;
                }
                for &ti in t {
                    // [2t]_q / [t]_q = q^t + q^-t
                    term = term * (LaurentQ::q_pow(ti as i64) + LaurentQ::q_pow(-(ti as i64)));
                }
                inner = &inner + &term;
            });
        });
        total = total + inner.scale(&num_rational::BigRational::from_integer(mult.into()));
    }
    total
}

/// Full table from the parity-appropriate generating polynomial:
/// odd r=2t+1: `prod_{l=1..t+1} (x^2 - (q^{2l-1}+q^{1-2l}) xy + y^2 - [2l-1]^2 rho)`;
/// even r=2t+2: `(x-y) prod_{l=1..t+1} (x^2 - (q^{2l}+q^{-2l}) xy + y^2 - [2l]^2 rho)`.
pub fn genpoly_c_ade(r: u32) -> CoeffTable {
    assert!(r >= 1);
    let mut poly;
    if r % 2 == 1 {
        let t = (r - 1) / 2;
        poly = HashMap::new();
        poly.insert((0u32, 0u32), RhoPoly::one());
        for l in 1..=t + 1 {
            let s = 2 * l - 1;
            let beta = LaurentQ::q_pow(s as i64) + LaurentQ::q_pow(-(s as i64));
            let b = qnum(s);
            poly = bp_mul(&poly, &quad_factor(beta, &b * &b));
        }
    } else {
        let t = (r - 2) / 2;
        poly = x_minus_y();
        for l in 1..=t + 1 {
            let s = 2 * l;
            let beta = LaurentQ::q_pow(s as i64) + LaurentQ::q_pow(-(s as i64));
            let b = qnum(s);
            poly = bp_mul(&poly, &quad_factor(beta, &b * &b));
        }
    }
    let mut table = CoeffTable::new(r, Flavor::Ade, Provenance::GenPoly);
    for ((dx, dy), coeff) in &poly {
        for (p, val) in coeff.terms() {
            let k = *dy;
            assert_eq!(*dx, r + 1 - 2 * p - k, "unexpected monomial in expansion");
            let signed = if (k + p) % 2 == 1 { -val } else { val.clone() };
            table.set(*p, k, signed);
        }
    }
    assert!(table.is_complete(), "generating polynomial left gaps");
    table
}

/// Two-column eta table for the ADE power reductions: maps `(m, p, j)`
/// with `j in {0,1}` to the coefficient, for `m <= 2n+2`.
pub fn power_reduction_eta_ade(n: u32) -> HashMap<(u32, u32, u32), LaurentQ> {
    let two = qnum(2);
    let one = LaurentQ::one();
    let mut eta = HashMap::new();
    eta.insert((2u32, 0u32, 0u32), two.clone());
    eta.insert((2, 0, 1), -&one);
    for i in 1..=n {
        let g = |eta: &HashMap<(u32, u32, u32), LaurentQ>, m: u32, p: u32, j: u32| {
            eta[&(m, p, j)].clone()
        };
        let m = 2 * i;
        for p in 0..i {
            eta.insert((m + 1, p, 0), g(&eta, m, p, 0) * &two + g(&eta, m, p, 1));
        }
        eta.insert((m + 1, i, 0), one.clone());
        for p in 1..i {
            eta.insert((m + 1, p, 1), g(&eta, m, p - 1, 0) - g(&eta, m, p, 0));
        }
        eta.insert((m + 1, 0, 1), -g(&eta, m, 0, 0));
        eta.insert((m + 1, i, 1), g(&eta, m, i - 1, 0));
        for p in 0..=i {
            eta.insert((m + 2, p, 0), g(&eta, m + 1, p, 0) * &two + g(&eta, m + 1, p, 1));
        }
        for p in 1..=i {
            eta.insert((m + 2, p, 1), g(&eta, m + 1, p - 1, 0) - g(&eta, m + 1, p, 0));
        }
        eta.insert((m + 2, 0, 1), -g(&eta, m + 1, 0, 0));
    }
    eta
}

fn seed_tables() -> Vec<CoeffTable> {
    let one = LaurentQ::one();
    let two = qnum(2);
    let three = qnum(3);
    let mut t1 = CoeffTable::new(1, Flavor::Ade, Provenance::Recursion);
    t1.set(0, 0, one.clone());
    t1.set(0, 1, two.clone());
    t1.set(0, 2, one.clone());
    t1.set(1, 0, one.clone());

    let c210 = &three + &LaurentQ::one();
    let mut t2 = CoeffTable::new(2, Flavor::Ade, Provenance::Recursion);
    t2.set(0, 0, one.clone());
    t2.set(0, 1, three.clone());
    t2.set(0, 2, three.clone());
    t2.set(0, 3, one.clone());
    t2.set(1, 0, c210.clone());
    t2.set(1, 1, c210);

    // r=3 seeds; c^[3,2]_0 = ([3]_q)^2 (cross-validated against the other
    // two routes by the agreement tests).
    let c310 = {
        let b = LaurentQ::q_pow(2) + LaurentQ::q_pow(-2);
        &b * &b + &(LaurentQ::from_int(2) * &b) + LaurentQ::from_int(2)
    };
    let c311 = qnum(4) * (LaurentQ::q_pow(2) + LaurentQ::q_pow(-2) + LaurentQ::from_int(3));
    let mut t3 = CoeffTable::new(3, Flavor::Ade, Provenance::Recursion);
    t3.set(0, 0, one.clone());
    t3.set(0, 1, qbinom(4, 1));
    t3.set(0, 2, qbinom(4, 2));
    t3.set(0, 3, qbinom(4, 1));
    t3.set(0, 4, one);
    t3.set(1, 0, c310.clone());
    t3.set(1, 1, c311);
    t3.set(1, 2, c310);
    t3.set(2, 0, &three * &three);
    vec![t1, t2, t3]
}

/// Tables for `r = 1..=rmax` by the parity-split recursion.
pub fn recursion_c_ade(rmax: u32) -> Vec<CoeffTable> {
    assert!(rmax >= 1);
    let mut tables = seed_tables();
    tables.truncate(rmax as usize);
    if rmax <= 3 {
        return tables;
    }
    let eta = power_reduction_eta_ade(rmax);
    let e = |m: u32, p: u32| eta[&(m, p, 1)].clone();
    let sgn = |k: u32| {
        if k % 2 == 1 {
            -LaurentQ::one()
        } else {
            LaurentQ::one()
        }
    };
    for i in 3..rmax {
        let c = tables[(i - 1) as usize].clone();
        let cg = |p: u32, j: u32| c.get(p, j).clone();
        let c01 = cg(0, 1);
        let t = i / 2;

        let mut mm: HashMap<(u32, u32), LaurentQ> = HashMap::new();
        for k in 2..=i + 1 {
            mm.insert((0, k), cg(0, k) - &c01 * &cg(0, k - 1));
        }
        mm.insert((0, i + 2), -(&c01 * &cg(0, i + 1)));
        for p in 1..=t {
            mm.insert((p, 0), cg(p, 0));
            for k in 1..=i - 2 * p + 1 {
                mm.insert((p, k), cg(p, k) - &c01 * &cg(p, k - 1));
            }
            mm.insert((p, i + 2 - 2 * p), -(&c01 * &cg(p, i - 2 * p + 1)));
        }
        if i % 2 == 1 {
            mm.insert((t + 1, 0), cg(t + 1, 0));
            mm.insert((t + 1, 1), -(&cg(t + 1, 0) * &c01));
        }
        let m = |p: u32, k: u32| mm[&(p, k)].clone();

        let mut tab = CoeffTable::new(i + 1, Flavor::Ade, Provenance::Recursion);
        tab.set(0, 0, LaurentQ::one());
        tab.set(0, 1, qnum(i + 2));
        let cn01 = tab.get(0, 1).clone();

        if i % 2 == 0 {
            // even i = 2t -> odd table r+1
            tab.set(0, 2, m(0, 2) * e(2, 0));
            for k in 2..=t + 1 {
                tab.set(0, 2 * k, m(0, 2 * k) * e(2 * k, 0) + &cn01 * &cg(0, 2 * k - 1) * e(2 * k - 1, 0));
            }
            for k in 1..=t {
                tab.set(0, 2 * k + 1, m(0, 2 * k + 1) * e(2 * k + 1, 0) + &cn01 * &cg(0, 2 * k) * e(2 * k, 0));
            }
            let mut acc = -m(0, i + 2);
            for l in 1..=t {
                acc = acc - sgn(l) * m(l, i + 2 - 2 * l);
            }
            tab.set(t + 1, 0, sgn(t) * acc);
            tab.set(1, 0, m(1, 0) - m(0, 2));
            for k in 2..=t {
                let mut acc = LaurentQ::zero();
                for l in 0..=k {
                    acc = acc + sgn(l) * m(l, 2 * k - 2 * l);
                }
                tab.set(k, 0, sgn(k) * acc);
            }
            tab.set(1, 1, &cn01 * &(cg(1, 0) - cg(0, 2)) - m(0, 3) * e(3, 1));
            for k in 2..=t {
                let mut acc = LaurentQ::zero();
                for l in 0..k {
                    acc = acc + sgn(l) * m(l, 2 * k - 2 * l + 1) * e(2 * k - 2 * l + 1, k - l);
                }
                let mut acc2 = LaurentQ::zero();
                for l in 0..=k {
                    acc2 = acc2 + sgn(l) * cg(l, 2 * k - 2 * l);
                }
                tab.set(k, 1, sgn(k) * (acc + &cn01 * &acc2));
            }
            tab.set(1, 2, m(1, 2) * e(2, 0) - m(0, 4) * e(4, 1) - &cn01 * &cg(0, 3) * e(3, 1));
            for k in 2..=t {
                for p in 1..k {
                    let mut acc = LaurentQ::zero();
                    for l in 0..=p {
                        acc = acc + sgn(l) * m(l, 2 * k - 2 * l + 1) * e(2 * k - 2 * l + 1, p - l);
                    }
                    let mut acc2 = LaurentQ::zero();
                    for l in 0..=p {
                        acc2 = acc2 + sgn(l) * cg(l, 2 * k - 2 * l) * e(2 * k - 2 * l, p - l);
                    }
                    tab.set(p, 2 * k - 2 * p + 1, sgn(p) * (acc + &cn01 * &acc2));
                }
            }
            for k in 3..=t + 1 {
                for p in 1..k {
                    let mut acc = LaurentQ::zero();
                    for l in 0..=p {
                        acc = acc + sgn(l) * m(l, 2 * k - 2 * l) * e(2 * k - 2 * l, p - l);
                    }
                    let mut acc2 = LaurentQ::zero();
                    for l in 0..=p.min(k - 2) {
                        acc2 = acc2 + sgn(l) * cg(l, 2 * k - 2 * l - 1) * e(2 * k - 2 * l - 1, p - l);
                    }
                    tab.set(p, 2 * k - 2 * p, sgn(p) * (acc + &cn01 * &acc2));
                }
            }
        } else {
            // odd i = 2t+1 -> even table r+1
            tab.set(0, 2, m(0, 2) * e(2, 0));
            for k in 1..=t + 1 {
                tab.set(0, 2 * k + 1, m(0, 2 * k + 1) * e(2 * k + 1, 0) + &cn01 * &cg(0, 2 * k) * e(2 * k, 0));
            }
            for k in 2..=t + 1 {
                tab.set(0, 2 * k, m(0, 2 * k) * e(2 * k, 0) + &cn01 * &cg(0, 2 * k - 1) * e(2 * k - 1, 0));
            }
            tab.set(1, 0, m(1, 0) - m(0, 2));
            for k in 2..=t + 1 {
                let mut acc = LaurentQ::zero();
                for l in 0..=k {
                    acc = acc + sgn(l) * m(l, 2 * k - 2 * l);
                }
                tab.set(k, 0, sgn(k) * acc);
            }
            tab.set(1, 1, &cn01 * &(cg(1, 0) - cg(0, 2)) - m(0, 3) * e(3, 1));
            for k in 2..=t + 1 {
                let mut acc = LaurentQ::zero();
                for l in 0..k {
                    acc = acc + sgn(l) * m(l, 2 * k - 2 * l + 1) * e(2 * k - 2 * l + 1, k - l);
                }
                let mut acc2 = LaurentQ::zero();
                for l in 0..=k {
                    acc2 = acc2 + sgn(l) * cg(l, 2 * k - 2 * l);
                }
                tab.set(k, 1, sgn(k) * (acc + &cn01 * &acc2));
            }
            tab.set(1, 2, m(1, 2) * e(2, 0) - m(0, 4) * e(4, 1) - &cn01 * &cg(0, 3) * e(3, 1));
            if t >= 2 {
                for k in 3..=t + 1 {
                    for p in 1..k {
                        let mut acc = LaurentQ::zero();
                        for l in 0..=p {
                            acc = acc + sgn(l) * m(l, 2 * k - 2 * l) * e(2 * k - 2 * l, p - l);
                        }
                        let mut acc2 = LaurentQ::zero();
                        for l in 0..=p.min(k - 2) {
                            acc2 = acc2 + sgn(l) * cg(l, 2 * k - 2 * l - 1) * e(2 * k - 2 * l - 1, p - l);
                        }
                        tab.set(p, 2 * k - 2 * p, sgn(p) * (acc + &cn01 * &acc2));
                    }
                }
            }
            for k in 2..=t + 1 {
                for p in 1..k {
                    let mut acc = LaurentQ::zero();
                    for l in 0..=p {
                        acc = acc + sgn(l) * m(l, 2 * k - 2 * l + 1) * e(2 * k - 2 * l + 1, p - l);
                    }
                    let mut acc2 = LaurentQ::zero();
                    for l in 0..=p {
                        acc2 = acc2 + sgn(l) * cg(l, 2 * k - 2 * l) * e(2 * k - 2 * l, p - l);
                    }
                    tab.set(p, 2 * k - 2 * p + 1, sgn(p) * (acc + &cn01 * &acc2));
                }
            }
        }
        assert!(tab.is_complete(), "ADE recursion left gaps at r={}", i + 1);
        tables.push(tab);
    }
    tables
}

/// Full table from the conjecture sum plus row symmetry.
pub fn conjecture_table_ade(r: u32) -> CoeffTable {
    let mut t = CoeffTable::new(r, Flavor::Ade, Provenance::Conjecture);
    for p in 0..=(r + 1) / 2 {
        for k in 0..=r + 1 - 2 * p {
            t.set(p, k, conjecture_c_ade(r, p, k));
        }
    }
    t
}

/// The combination of Eq-type `sum (-1)^{k+p} rho^p c_k A^{r-2p+1-k} B^r A^k`.
pub fn delta_ade(table: &CoeffTable) -> NcPoly {
    assert_eq!(table.flavor, Flavor::Ade);
    let r = table.r;
    let mut p = NcPoly::zero();
    for pp in 0..=(r + 1) / 2 {
        for k in 0..=r + 1 - 2 * pp {
            let c = table.get(pp, k).clone();
            let signed = if (k + pp) % 2 == 1 { -c } else { c };
            p.add_term(
                Word::monomial(r + 1 - 2 * pp - k, r, k),
                RhoPoly::term(pp, signed),
            );
        }
    }
    p
}

/// Reduce the ADE combination; the contract is the zero polynomial.
pub fn verify_relation_ade(table: &CoeffTable) -> NcPoly {
    normalize_ade(&delta_ade(table))
}

/// Spectral-root check of the generating polynomial: with
/// `theta_k = C (v q^k + v^{-1} q^{-k})` and `rho = -C^2 (q - q^{-1})^2`,
/// `p^ADE_r(theta_k, theta_l)` vanishes exactly when `k - l` lies in the
/// parity-appropriate offset list. Returns (max |p| on the vanishing set,
/// min |p| off it) over `0 <= k, l <= 2r`.
pub fn spectral_root_check(r: u32, q: Complex64, v: Complex64, big_c: Complex64) -> (f64, f64) {
    let rho = -big_c * big_c * (q - 1.0 / q) * (q - 1.0 / q);
    let theta = |k: i64| big_c * (v * q.powi(k as i32) + q.powi(-(k as i32)) / v);
    let eval = |x: Complex64, y: Complex64| -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        if r % 2 == 1 {
            for l in 1..=(r - 1) / 2 + 1 {
                let s = (2 * l - 1) as i32;
                let beta = q.powi(s) + q.powi(-s);
                let br = qnum(2 * l - 1).eval_complex(q);
                acc *= x * x - beta * x * y + y * y - rho * br * br;
            }
        } else {
            acc *= x - y;
            for l in 1..=(r - 2) / 2 + 1 {
                let s = (2 * l) as i32;
                let beta = q.powi(s) + q.powi(-s);
                let br = qnum(2 * l).eval_complex(q);
                acc *= x * x - beta * x * y + y * y - rho * br * br;
            }
        }
        acc
    };
    let offsets: Vec<i64> = if r % 2 == 1 {
        (0..=r as i64).filter(|d| d % 2 == 1).collect()
    } else {
        (0..=r as i64).filter(|d| d % 2 == 0).collect()
    };
    let mut max_on = 0.0f64;
    let mut min_off = f64::INFINITY;
    for k in 0..=2 * r as i64 {
        for l in 0..=2 * r as i64 {
            let val = eval(theta(k), theta(l)).norm();
            if offsets.contains(&(k - l).abs()) {
                max_on = max_on.max(val);
            } else {
                min_off = min_off.min(val);
            }
        }
    }
    (max_on, min_off)
}
