//! Hypergeometric data of the quintic: the I-function components, the
//! mirror map, L, the diagonal I_{p,p}, the twisted I-function restricted to
//! fixed points, and the J-function values at H_delta.

use crate::exactcore::{int, rat, rat_from_big, CycNum, QSeries, Rat, ZSeries};
use crate::report::{Check, Report};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Components of I(q,z) = z I_0 + I_1 H + z^-1 I_2 H^2 + z^-2 I_3 H^3, with the
/// log q parts of I_1, I_2, I_3 dropped (only the power-series parts are kept).
#[derive(Clone, Debug)]
pub struct IData {
    pub order: usize,
    pub i0: QSeries,
    pub i1: QSeries,
    pub i2: QSeries,
    pub i3: QSeries,
    /// Power-series part of I_1/I_0; the mirror map is Q = q exp(tau).
    pub tau: QSeries,
    pub i11: QSeries,
    /// L = (1 - 3125 q)^(-1/5).
    pub lser: QSeries,
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// Truncated exp of a polynomial with zero constant term: n e_n = sum k p_k e_{n-k}.
fn exp_poly(p: &[Rat], deg: usize) -> Vec<Rat> {
    let mut e = vec![Rat::zero(); deg + 1];
    e[0] = Rat::one();
    for n in 1..=deg {
        let mut acc = Rat::zero();
        for k in 1..=n.min(p.len() - 1) {
            acc += int(k as i64) * &p[k] * &e[n - k];
        }
        e[n] = acc / int(n as i64);
    }
    e
}

/// Coefficients of h^0..h^deg in prod_{k<=5d}(5h+k) / prod_{k<=d}(h+k)^5.
fn hyper_term(d: usize, deg: usize) -> Vec<Rat> {
    let a = rat_from_big(factorial(5 * d as u64)) / rat_from_big(factorial(d as u64).pow(5));
    // log of the normalized ratio: sum_m (-1)^{m+1} s_m h^m / m
    let mut p = vec![Rat::zero(); deg + 1];
    for (m, pm) in p.iter_mut().enumerate().skip(1) {
        let mut s = Rat::zero();
        for k in 1..=5 * d {
            s += rat(5, k as i64).pow(m as i32);
        }
        for k in 1..=d {
            s -= int(5) * rat(1, k as i64).pow(m as i32);
        }
        let sign = if m % 2 == 1 { 1 } else { -1 };
        *pm = s * rat(sign, m as i64);
    }
    exp_poly(&p, deg).into_iter().map(|x| x * &a).collect()
}

/// The q-series F_j(q) = [w^j] sum_d q^d prod(5w+k)/prod(w+k)^5 for j = 0..=deg.
pub fn hypergeometric_components(order: usize, deg: usize) -> Vec<QSeries> {
    let terms: Vec<Vec<Rat>> = (0..=order).map(|d| hyper_term(d, deg)).collect();
    (0..=deg).map(|j| QSeries::from_fn(order, |d| terms[d][j].clone())).collect()
}

pub fn l_series(order: usize) -> QSeries {
    let base = QSeries::from_coeffs(vec![int(1), int(-3125)], order);
    base.pow_rat(&rat(-1, 5)).expect("constant term is 1")
}

pub fn build_idata(order: usize) -> IData {
    let f = hypergeometric_components(order, 3);
    let i0 = f[0].clone();
    let tau = f[1].div_ref(&i0).expect("I_0(0) = 1");
    let i11 = QSeries::one(order).add_ref(&tau.qdq());
    IData {
        order,
        i0,
        i1: f[1].clone(),
        i2: f[2].clone(),
        i3: f[3].clone(),
        tau,
        i11,
        lser: l_series(order),
    }
}

impl IData {
    /// I_{2,2} from the closed form L^5 I_0^-2 I_{1,1}^-2.
    pub fn i22(&self) -> QSeries {
        let den = self.i0.mul_ref(&self.i11).pow_u(2);
        self.lser.pow_u(5).div_ref(&den).expect("unit constant term")
    }

    pub fn i33(&self) -> QSeries {
        self.i11.clone()
    }

    pub fn i44(&self) -> QSeries {
        self.i0.clone()
    }

    /// Not defined by the diagonal relations; fixed so that the product of all
    /// five diagonal entries is L^5. The fifth step of `birkhoff_diagonal` is 1,
    /// so this is a convention rather than an operator identity.
    pub fn i55(&self) -> QSeries {
        self.i0.clone()
    }

    /// I_{k,k} for k = 1..=5.
    pub fn diagonal(&self) -> [QSeries; 5] {
        [self.i11.clone(), self.i22(), self.i33(), self.i44(), self.i55()]
    }
}

/// I_{0,0}, ..., I_{pmax,pmax} computed from the operator
/// M F = (1 + (q/w) d/dq)(F / F(0,q)) applied to the w-expansion of the
/// hypergeometric series. Independent of the closed-form relations.
pub fn birkhoff_diagonal(order: usize, pmax: usize) -> Vec<QSeries> {
    let mut f = hypergeometric_components(order, pmax);
    let mut out = vec![f[0].clone()];
    for _ in 0..pmax {
        let f0 = f[0].clone();
        let g: Vec<QSeries> = f.iter().map(|x| x.div_ref(&f0).expect("unit constant")).collect();
        f = (0..g.len() - 1).map(|j| g[j].add_ref(&g[j + 1].qdq())).collect();
        out.push(f[0].clone());
    }
    out
}

fn series_check(name: &str, lhs: &QSeries, rhs: &QSeries) -> Check {
    match lhs.first_difference(rhs) {
        None => Check::pass(name, format!("equal through q^{}", lhs.order().min(rhs.order()))),
        Some(d) => Check::fail(
            name,
            format!("first mismatch at q^{}: {} vs {}", d, lhs.coeff(d), rhs.coeff(d)),
        ),
    }
}

pub fn check_diagonal(data: &IData) -> Report {
    let mut r = Report::new("mirror diagonal identities");
    let l5 = data.lser.pow_u(5);
    let lhs = data.i22().mul_ref(&data.i0.pow_u(2)).mul_ref(&data.i11.pow_u(2));
    r.push(series_check("I22*I0^2*I11^2 = L^5", &lhs, &l5));
    let prod = data
        .diagonal()
        .iter()
        .fold(QSeries::one(data.order), |acc, x| acc.mul_ref(x));
    r.push(series_check("prod_{k=1..5} I_kk = L^5", &prod, &l5));
    let bd = birkhoff_diagonal(data.order, 5);
    r.push(series_check("I11 (operator recursion)", &bd[1], &data.i11));
    r.push(series_check("I22 (operator recursion)", &bd[2], &data.i22()));
    r.push(series_check("I33 = I11 (operator recursion)", &bd[3], &data.i33()));
    r.push(series_check("I44 = I0 (operator recursion)", &bd[4], &data.i44()));
    // The fifth operator step is not I_0; I55 = I0 is a matrix convention.
    let fifth = if bd[5] == QSeries::one(data.order) { "1" } else { "not 1" };
    r.push(Check::diag(
        "I55 convention",
        format!("I55 := I0 (forced by prod I_kk = L^5); fifth operator step equals {fifth}"),
    ));
    r
}

/// Restriction of the twisted I-function to H = zeta^alpha lambda at lambda = 1,
/// without the q^{H/z} factor. `coeffs[d]` is the expansion in w = 1/z of
/// prod_{k=1}^{5d}(5H + kz) / prod_{k=1}^{d}((H + kz)^5 - lambda^5); the
/// coefficient of w^j carries lambda^j when lambda is restored.
#[derive(Clone, Debug)]
pub struct ITilde {
    pub alpha: usize,
    pub coeffs: Vec<ZSeries<CycNum>>,
}

pub fn itilde(alpha: usize, order_q: usize, order_w: usize) -> ITilde {
    let h = CycNum::zeta_pow(alpha as i64);
    let lin = |a: CycNum, b: CycNum| ZSeries::from_coeffs(vec![a, b], order_w);
    let cst = |k: i64| CycNum::from_rat(int(k));
    let mut coeffs = Vec::with_capacity(order_q + 1);
    for d in 0..=order_q {
        let mut num = ZSeries::from_coeffs(vec![CycNum::one()], order_w);
        for k in 1..=5 * d as i64 {
            num = num.mul(&lin(cst(k), h.clone() * cst(5)));
        }
        let mut den = ZSeries::from_coeffs(vec![CycNum::one()], order_w);
        for k in 1..=d as i64 {
            let base = lin(cst(k), h.clone());
            let p5 = (0..4).fold(base.clone(), |acc, _| acc.mul(&base));
            let mut w5 = ZSeries::zero(order_w);
            w5.set(5, CycNum::one());
            den = den.mul(&p5.sub(&w5));
        }
        let inv = den.inv_with(|c| c.inv()).expect("constant term (d!)^5");
        coeffs.push(num.mul(&inv));
    }
    ITilde { alpha, coeffs }
}

/// The scalar multiplying H_delta in J_t(H_delta), a polynomial in q.
pub fn j_at_hdelta(delta: u32) -> Vec<Rat> {
    assert!(delta >= 1, "delta must be positive");
    let d = delta as i64;
    let bmax = ((d - 1) / 5) as usize;
    let mut out = Vec::with_capacity(bmax + 1);
    for beta in 0..=bmax as i64 {
        let mut c = Rat::one();
        for i in 1..=5 * beta {
            c *= int(5 * d - 5 * i);
        }
        for i in 1..=beta {
            c /= int((d - 5 * i).pow(5) - d.pow(5));
        }
        out.push(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i0_and_tau_coefficients() {
        let d = build_idata(4);
        assert_eq!(d.i0.coeff(1), int(120));
        assert_eq!(d.i0.coeff(2), int(113400));
        assert_eq!(d.tau.coeff(1), int(770));
        // (5d)!/(d!)^5 computed independently
        for k in 0..=4u64 {
            let v = rat_from_big(factorial(5 * k)) / rat_from_big(factorial(k).pow(5));
            assert_eq!(d.i0.coeff(k as usize), v);
        }
    }

    #[test]
    fn i1_closed_form() {
        let d = build_idata(5);
        for k in 1..=5usize {
            let mut s = Rat::zero();
            for j in k + 1..=5 * k {
                s += rat(5, j as i64);
            }
            assert_eq!(d.i1.coeff(k), d.i0.coeff(k) * s);
        }
    }

    #[test]
    fn l_fifth_power_relation() {
        let l = l_series(12);
        let t = l.pow_u(5).mul_ref(&QSeries::from_coeffs(vec![int(1), int(-3125)], 12));
        assert_eq!(t, QSeries::one(12));
    }

    #[test]
    fn diagonal_identities_hold() {
        for n in [0, 1, 5, 12] {
            let r = check_diagonal(&build_idata(n));
            assert!(r.ok(), "{}", r.to_text());
        }
    }

    #[test]
    fn order_one_hand_value() {
        // I0 = 1+120q, I11 = 1+770q, L^5 = 1+3125q: I22 = 1 + (3125-240-1540)q
        let d = build_idata(1);
        assert_eq!(d.i22().coeff(1), int(1345));
    }

    #[test]
    fn j_values() {
        assert_eq!(j_at_hdelta(3), vec![int(1)]);
        assert_eq!(j_at_hdelta(5), vec![int(1)]);
        assert_eq!(j_at_hdelta(6), vec![int(1), rat(-15000, 311)]);
        for delta in 1..=30u32 {
            assert_eq!(j_at_hdelta(delta).len() as u32 - 1, (delta - 1) / 5);
        }
    }

    #[test]
    fn itilde_leading_terms() {
        for a in 0..5 {
            let it = itilde(a, 2, 6);
            assert_eq!(it.coeffs[0].coeff(0), &CycNum::one());
            for j in 1..=6 {
                assert!(it.coeffs[0].coeff(j).is_zero());
            }
        }
        // d=1, alpha=0, lambda=1: prod_{k=1..5}(k+5w) / ((1+w)^5 - w^5); w^0 term 120
        let it = itilde(0, 1, 3);
        assert_eq!(it.coeffs[1].coeff(0).as_rat(), Some(int(120)));
        // w^1: 120 * (137/12 - 5) = 770
        assert_eq!(it.coeffs[1].coeff(1).as_rat(), Some(int(770)));
    }
}
