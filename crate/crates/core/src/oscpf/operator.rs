use super::field::{Field, RatFunc};
use crate::exactcore::Rat;
use num_traits::One;
use std::fmt;

/// Polynomial in X = 1 - L^m, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct XPoly<F> {
    pub c: Vec<F>,
}

impl<F: Field> XPoly<F> {
    pub fn new(mut c: Vec<F>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        XPoly { c }
    }

    pub fn zero() -> Self {
        XPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![F::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> F {
        self.c.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-F::one()))
    }

    pub fn scale(&self, a: &F) -> Self {
        Self::new(self.c.iter().map(|x| x.clone() * a.clone()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![F::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(c)
    }

    /// Multiplication by X.
    pub fn shift(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![F::zero()];
        c.extend(self.c.iter().cloned());
        Self::new(c)
    }

    /// D = q d/dq acting through D X = X(1 - X).
    pub fn d(&self) -> Self {
        let mut c = vec![F::zero(); self.c.len() + 1];
        for (i, a) in self.c.iter().enumerate() {
            let k = F::from_int(i as i64);
            c[i] = c[i].clone() + k.clone() * a.clone();
            c[i + 1] = c[i + 1].clone() - k * a.clone();
        }
        Self::new(c)
    }

    /// Coefficients in Z after X = 1 - Z.
    pub fn at_one_minus(&self) -> Vec<F> {
        let n = self.c.len();
        let mut out = vec![F::zero(); n];
        // (1 - Z)^i expanded with running binomials
        for (i, a) in self.c.iter().enumerate() {
            let mut b = F::one();
            for k in 0..=i {
                let sign = if k % 2 == 0 { F::one() } else { -F::one() };
                out[k] = out[k].clone() + a.clone() * b.clone() * sign;
                b = b * F::from_int((i - k) as i64) / F::from_int(k as i64 + 1);
            }
        }
        out
    }

    pub fn eval(&self, x: &F) -> F {
        self.c.iter().rev().fold(F::zero(), |acc, a| acc * x.clone() + a.clone())
    }
}

/// Differential operator sum_i c_i(X) D^i.
#[derive(Clone, PartialEq, Debug)]
pub struct DOp<F> {
    pub c: Vec<XPoly<F>>,
}

impl<F: Field> DOp<F> {
    pub fn zero() -> Self {
        DOp { c: Vec::new() }
    }

    pub fn identity() -> Self {
        DOp { c: vec![XPoly::one()] }
    }

    fn trim(mut self) -> Self {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
        self
    }

    pub fn coeff(&self, i: usize) -> XPoly<F> {
        self.c.get(i).cloned().unwrap_or_else(XPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(XPoly::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        DOp { c: (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect() }.trim()
    }

    /// Left multiplication by a function of X.
    pub fn lmul(&self, p: &XPoly<F>) -> Self {
        DOp { c: self.c.iter().map(|x| p.mul(x)).collect() }.trim()
    }

    /// (D + a + bX) composed on the left of self.
    pub fn lcompose_first_order(&self, a: &F, b: &F) -> Self {
        let mut c = vec![XPoly::zero(); self.c.len() + 1];
        for (i, ci) in self.c.iter().enumerate() {
            // D (c_i D^i) = (D c_i) D^i + c_i D^{i+1}
            let lin = ci.d().add(&ci.scale(a)).add(&ci.shift().scale(b));
            c[i] = c[i].add(&lin);
            c[i + 1] = c[i + 1].add(ci);
        }
        DOp { c }.trim()
    }

    /// Apply to a function L^-e p(X); the result is L^-e q(X). Uses
    /// D L^-e = L^-e (D + (e/m) X).
    pub fn apply(&self, e: i64, mu: &F, p: &XPoly<F>) -> XPoly<F> {
        let a = F::from_int(e) * mu.clone();
        let mut g = p.clone();
        let mut out = XPoly::zero();
        for (i, ci) in self.c.iter().enumerate() {
            if i > 0 {
                g = g.d().add(&g.shift().scale(&a));
            }
            out = out.add(&ci.mul(&g));
        }
        out
    }
}

/// A Picard-Fuchs correction operator L^-level * op.
#[derive(Clone, PartialEq, Debug)]
pub struct PFOperator<F> {
    pub level: usize,
    pub op: DOp<F>,
}

impl<F: Field> fmt::Display for PFOperator<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L^-{} [", self.level)?;
        let mut first = true;
        for (j, cj) in self.op.c.iter().enumerate() {
            for (i, a) in cj.c.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                if !first {
                    f.write_str(" + ")?;
                }
                first = false;
                write!(f, "({a}) X^{i} D^{j}")?;
            }
        }
        f.write_str("]")
    }
}

/// z-levels 0..=jmax of prod_{t=s-1..0} (1 + z L^-1 (D + a_t + b_t X)), with
/// level j carrying L^-j; `mu` = 1/m.
fn ordered_product<F: Field>(s: usize, jmax: usize, mu: &F, ab: impl Fn(i64) -> (F, F)) -> Vec<DOp<F>> {
    let mut lev: Vec<DOp<F>> = vec![DOp::zero(); jmax + 1];
    lev[0] = DOp::identity();
    for t in 0..s as i64 {
        let (a, b) = ab(t);
        let mut next = lev.clone();
        for j in 1..=jmax {
            if lev[j - 1].is_zero() {
                continue;
            }
            // L^-1 (D + a + bX) L^-(j-1) = L^-j (D + a + (b + (j-1)/m) X)
            let bj = b.clone() + F::from_int(j as i64 - 1) * mu.clone();
            next[j] = next[j].add(&lev[j - 1].lcompose_first_order(&a, &bj));
        }
        lev = next;
    }
    lev
}

/// Levels of (1-X) L^-s D_L^s - 1 + X (mL)^-s prod_{i<s} (m D_L + i z) at s = m,
/// with D_L = zD + L and the factor count s given as an integer.
fn pf_levels<F: Field>(s: usize, jmax: usize, mu: &F) -> Vec<DOp<F>> {
    let e = ordered_product(s, jmax, mu, |t| (F::zero(), -(F::from_int(t) * mu.clone())));
    let f = ordered_product(s, jmax, mu, |t| (F::from_int(t) * mu.clone(), -(F::from_int(t) * mu.clone())));
    let one_minus_x = XPoly::new(vec![F::one(), -F::one()]);
    let x = XPoly::new(vec![F::zero(), F::one()]);
    let mut out: Vec<DOp<F>> = (0..=jmax).map(|j| e[j].lmul(&one_minus_x).add(&f[j].lmul(&x))).collect();
    out[0] = out[0].add(&DOp { c: vec![XPoly::new(vec![-F::one()])] });
    out
}

/// O_1..O_{jmax} for integer m: the full operator is sum_j z^j L^-j O_j.
pub fn pf_levels_numeric(m: u32, jmax: usize) -> Vec<DOp<Rat>> {
    let mu = Rat::from_int(1) / Rat::from_int(m as i64);
    pf_levels(m as usize, jmax, &mu)
}

/// Same for symbolic m, by exact interpolation in the factor count s: the
/// level-j coefficients are polynomials of degree <= 2j in s (sums over
/// j-subsets of {0..s-1} of degree-j polynomials). Two extra nodes are
/// checked against the interpolant.
pub fn pf_levels_symbolic(jmax: usize) -> Vec<DOp<RatFunc>> {
    let mu = RatFunc::one() / RatFunc::m();
    let nodes = 2 * jmax + 1;
    let samples: Vec<Vec<DOp<RatFunc>>> = (0..nodes + 2).map(|s| pf_levels(s, jmax, &mu)).collect();
    let interp_at = |x: &RatFunc, used: usize| -> Vec<DOp<RatFunc>> {
        let mut out = vec![DOp::zero(); jmax + 1];
        for k in 0..used {
            let mut w = RatFunc::one();
            for l in 0..used {
                if l != k {
                    w = w * (x.clone() - RatFunc::from_int(l as i64)) / RatFunc::from_int(k as i64 - l as i64);
                }
            }
            for j in 0..=jmax {
                let term = DOp { c: samples[k][j].c.iter().map(|p| p.scale(&w)).collect() };
                out[j] = out[j].add(&term);
            }
        }
        out
    };
    for extra in nodes..nodes + 2 {
        let v = interp_at(&RatFunc::from_int(extra as i64), nodes);
        assert_eq!(v, samples[extra], "interpolation degree bound violated");
    }
    interp_at(&RatFunc::m(), nodes)
}

/// The correction operators D_1..D_{count}: -D r_k = sum_i D_i r_{k-i},
/// with D_i = (L/m) O_{i+1}.
pub fn correction_operators<F: Field>(levels: &[DOp<F>], mu: &F, count: usize) -> Vec<PFOperator<F>> {
    (1..=count)
        .map(|i| {
            let op = levels.get(i + 1).cloned().unwrap_or_else(DOp::zero);
            PFOperator { level: i, op: DOp { c: op.c.iter().map(|p| p.scale(mu)).collect() }.trim() }
        })
        .collect()
}

/// D_1..D_{m-1} for integer m.
pub fn pf_operators(m: u32) -> Vec<PFOperator<Rat>> {
    assert!(m >= 2, "m must be at least 2");
    let levels = pf_levels_numeric(m, m as usize);
    let mu = Rat::from_int(1) / Rat::from_int(m as i64);
    correction_operators(&levels, &mu, m as usize - 1)
}

/// D_1..D_count with m symbolic.
pub fn pf_operators_symbolic(count: usize) -> Vec<PFOperator<RatFunc>> {
    let levels = pf_levels_symbolic(count + 1);
    let mu = RatFunc::one() / RatFunc::m();
    correction_operators(&levels, &mu, count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::{int, rat};

    fn xp(v: &[i64], den: i64) -> XPoly<Rat> {
        XPoly::new(v.iter().map(|&a| rat(a, den)).collect())
    }

    #[test]
    fn first_level_is_m_d() {
        for m in 2..=6u32 {
            let lv = pf_levels_numeric(m, 2);
            assert!(lv[0].is_zero());
            assert_eq!(lv[1], DOp { c: vec![XPoly::zero(), XPoly::new(vec![int(m as i64)])] });
        }
    }

    #[test]
    fn quintic_operators_match_printed() {
        let ops = pf_operators(5);
        assert_eq!(ops.len(), 4);
        // D_1 = (3X^2 - 3X + 10XD + 50D^2)/25
        let d1 = DOp { c: vec![xp(&[0, -3, 3], 25), xp(&[0, 10], 25), xp(&[50], 25)] };
        assert_eq!(ops[0].op, d1);
        // D_2 = (-24X^3+39X^2-15X + (15X^2+5X)D + 150XD^2 + 250D^3)/125
        let d2 = DOp { c: vec![xp(&[0, -15, 39, -24], 125), xp(&[0, 5, 15], 125), xp(&[0, 150], 125), xp(&[250], 125)] };
        assert_eq!(ops[1].op, d2);
        let d3 = DOp {
            c: vec![
                xp(&[0, -101, 575, -870, 396], 3125),
                xp(&[0, -125, 725, -450], 3125),
                xp(&[0, 1375], 3125),
                xp(&[0, 3750], 3125),
                xp(&[3125], 3125),
            ],
        };
        assert_eq!(ops[2].op, d3);
        let d4 = DOp {
            c: vec![XPoly::zero(), xp(&[0, 24], 3125), xp(&[0, 250], 3125), xp(&[0, 875], 3125), xp(&[0, 1250], 3125), xp(&[625], 3125)],
        };
        assert_eq!(ops[3].op, d4);
    }

    #[test]
    fn m2_has_one_operator() {
        assert_eq!(pf_operators(2).len(), 1);
    }

    #[test]
    fn symbolic_specializes_to_numeric() {
        let sym = pf_levels_symbolic(3);
        for m in 2..=7u32 {
            let num = pf_levels_numeric(m, 3);
            for j in 0..=3 {
                let spec = DOp {
                    c: sym[j]
                        .c
                        .iter()
                        .map(|p| XPoly::new(p.c.iter().map(|a| a.eval(&int(m as i64)).unwrap()).collect()))
                        .collect(),
                }
                .trim();
                assert_eq!(spec, num[j], "m={m} level {j}");
            }
        }
    }

    #[test]
    fn d_is_a_derivation_on_xpoly() {
        let a = xp(&[1, 2, 3], 1);
        let b = xp(&[0, -1, 5], 2);
        assert_eq!(a.mul(&b).d(), a.d().mul(&b).add(&a.mul(&b.d())));
        assert_eq!(a.at_one_minus().len(), 3);
    }
}
