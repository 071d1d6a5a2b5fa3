use super::field::UPoly;
use crate::exactcore::{int, CycNum, Rat, ZSeries};
use super::rseq::bernoulli_numbers;
use num_traits::{One, Zero};

/// Q(zeta_m) as Q[t]/Phi_m(t).
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    pub m: u32,
    pub phi: UPoly,
}

pub fn cyclotomic_poly(m: u32) -> UPoly {
    let mut c = vec![Rat::zero(); m as usize + 1];
    c[0] = int(-1);
    c[m as usize] = int(1);
    let mut p = UPoly::new(c);
    for d in 1..m {
        if m % d == 0 {
            p = p.divrem(&cyclotomic_poly(d)).0;
        }
    }
    p
}

impl Cyclotomic {
    pub fn new(m: u32) -> Self {
        Cyclotomic { m, phi: cyclotomic_poly(m) }
    }

    pub fn reduce(&self, a: &UPoly) -> UPoly {
        a.rem(&self.phi)
    }

    pub fn zeta_pow(&self, k: i64) -> UPoly {
        let k = k.rem_euclid(self.m as i64) as usize;
        let mut c = vec![Rat::zero(); k + 1];
        c[k] = Rat::one();
        self.reduce(&UPoly::new(c))
    }

    pub fn mul(&self, a: &UPoly, b: &UPoly) -> UPoly {
        self.reduce(&(a * b))
    }

    pub fn inv(&self, a: &UPoly) -> Option<UPoly> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = UPoly::ext_gcd(a, &self.phi);
        (g == UPoly::one()).then(|| self.reduce(&s))
    }
}

/// Product over i of (L - zeta^i), as coefficients in L over Q(zeta).
fn root_product(cf: &Cyclotomic) -> Vec<UPoly> {
    let mut p = vec![UPoly::one()];
    for i in 0..cf.m as i64 {
        let r = cf.zeta_pow(i);
        let mut next = vec![UPoly::zero(); p.len() + 1];
        for (j, c) in p.iter().enumerate() {
            next[j + 1] = &next[j + 1] + c;
            next[j] = &next[j] - &cf.mul(c, &r);
        }
        p = next;
    }
    p
}

/// Elementary symmetric functions e_0..e_m of the m-th roots of unity.
fn elementary(cf: &Cyclotomic) -> Vec<UPoly> {
    let m = cf.m as usize;
    let p = root_product(cf);
    // prod (L - r_i) = sum_k (-1)^k e_k L^{m-k}
    (0..=m).map(|k| if k % 2 == 0 { p[m - k].clone() } else { -&p[m - k] }).collect()
}

/// Determinant by Gaussian elimination over Q(zeta).
fn det(cf: &Cyclotomic, mut a: Vec<Vec<UPoly>>) -> UPoly {
    let n = a.len();
    let mut d = UPoly::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return UPoly::zero();
        };
        if piv != c {
            a.swap(piv, c);
            d = -&d;
        }
        d = cf.mul(&d, &a[c][c]);
        let inv = cf.inv(&a[c][c]).expect("nonzero pivot");
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = cf.mul(&a[r][c], &inv);
            for k in c..n {
                let t = cf.mul(&f, &a[c][k]);
                a[r][k] = &a[r][k] - &t;
            }
        }
    }
    d
}

/// Outcome of the Hessian identities for one m (lambda = 1).
#[derive(Clone, Debug)]
pub struct HessianCheck {
    pub m: u32,
    pub root_product: bool,
    pub newton_sum: bool,
    /// det(diag(L - zeta^i) - L/m) evaluated at m+1 rational L; all equal to this if constant.
    pub det_n: Option<Rat>,
}

pub fn hessian_check(m: u32) -> HessianCheck {
    let cf = Cyclotomic::new(m);
    let mm = m as usize;
    let prod = root_product(&cf);
    let root_product_ok = (0..=mm).all(|j| {
        let want = if j == mm { Rat::one() } else if j == 0 { int(-1) } else { Rat::zero() };
        prod[j] == UPoly::constant(want)
    });
    // sum_j (-1)^{m-j} (m-j) e_{m-j} L^j = -m
    let e = elementary(&cf);
    let newton_ok = (0..=mm).all(|j| {
        let k = mm - j;
        let mut c = e[k].scale(&int(k as i64));
        if k % 2 == 1 {
            c = -&c;
        }
        let want = if j == 0 { UPoly::constant(int(-(m as i64))) } else { UPoly::zero() };
        c == want
    });
    let mut values = Vec::new();
    for t in 0..=mm {
        let l = int(t as i64 + 2);
        let lm = UPoly::constant(&l / int(m as i64));
        let a: Vec<Vec<UPoly>> = (0..mm)
            .map(|i| {
                (0..mm)
                    .map(|j| {
                        let diag = if i == j { &UPoly::constant(l.clone()) - &cf.zeta_pow(i as i64) } else { UPoly::zero() };
                        &diag - &lm
                    })
                    .collect()
            })
            .collect();
        values.push(det(&cf, a));
    }
    let det_n = values
        .iter()
        .all(|v| *v == values[0] && v.degree().unwrap_or(0) == 0)
        .then(|| values[0].c.first().cloned().unwrap_or_else(Rat::zero));
    HessianCheck { m, root_product: root_product_ok, newton_sum: newton_ok, det_n }
}

/// log C_alpha and C_alpha for the quintic at lambda = 1, as series in z
/// through z^order, with values in Q(zeta_5).
#[derive(Clone, Debug)]
pub struct BirkhoffConstant {
    pub alpha: i64,
    pub log: ZSeries<CycNum>,
    pub value: ZSeries<CycNum>,
}

pub fn birkhoff_constant(alpha: i64, order: usize) -> BirkhoffConstant {
    let b = bernoulli_numbers(order + 1);
    let za = CycNum::zeta_pow(alpha);
    let mut log = vec![CycNum::zero(); order + 1];
    let mut k = 1;
    while 2 * k - 1 <= order {
        let n = 2 * k - 1;
        let mut s = CycNum::zero();
        for beta in 0..5 {
            if beta != alpha.rem_euclid(5) {
                let d = (za.clone() - CycNum::zeta_pow(beta)).inv().expect("distinct roots");
                s = s + cpow(&d, n);
            }
        }
        let tail = za.scale(&int(-5)).inv().expect("nonzero");
        s = s + cpow(&tail, n);
        log[n] = s.scale(&(&b[2 * k] / int((2 * k * (2 * k - 1)) as i64)));
        k += 1;
    }
    // exp via n e_n = sum_k k l_k e_{n-k}
    let mut e = vec![CycNum::one()];
    for n in 1..=order {
        let mut acc = CycNum::zero();
        for kk in 1..=n {
            acc = acc + (log[kk].scale(&int(kk as i64)) * e[n - kk].clone());
        }
        e.push(acc.scale(&(Rat::one() / int(n as i64))));
    }
    BirkhoffConstant {
        alpha,
        log: ZSeries::from_coeffs(log, order),
        value: ZSeries::from_coeffs(e, order),
    }
}

fn cpow(x: &CycNum, n: usize) -> CycNum {
    (0..n).fold(CycNum::one(), |acc, _| acc * x.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(5), UPoly::new(vec![int(1); 5]));
        assert_eq!(cyclotomic_poly(6), UPoly::new(vec![int(1), int(-1), int(1)]));
        assert_eq!(cyclotomic_poly(4).degree(), Some(2));
    }

    #[test]
    fn hessian_identities() {
        for m in 2..=7 {
            let h = hessian_check(m);
            assert!(h.root_product && h.newton_sum, "m={m}");
            assert_eq!(h.det_n, Some(int(-1)), "m={m}");
        }
    }

    #[test]
    fn birkhoff_linear_term() {
        for a in 0..5 {
            let c = birkhoff_constant(a, 5);
            assert_eq!(*c.log.coeff(1), CycNum::zeta_pow(-a).scale(&rat(3, 20)));
            assert!(c.log.coeff(2).is_zero() && c.log.coeff(4).is_zero());
            assert_eq!(*c.value.coeff(1), *c.log.coeff(1));
        }
    }
}
