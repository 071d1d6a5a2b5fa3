use super::field::{Field, RatFunc};
use super::operator::{pf_levels_numeric, pf_levels_symbolic, DOp, XPoly};
use crate::exactcore::{int, Rat, QSeries};
use crate::genring::{GenPoly, Mono};
use num_integer::binomial;
use num_traits::{One, Zero};
use num_bigint::BigInt;

/// Bernoulli numbers B_0..B_n with B_1 = -1/2.
pub fn bernoulli_numbers(n: usize) -> Vec<Rat> {
    let mut b: Vec<Rat> = Vec::with_capacity(n + 1);
    b.push(Rat::one());
    for k in 1..=n {
        let s = (0..k).fold(Rat::zero(), |acc, j| acc + Rat::from_integer(binomial(BigInt::from(k + 1), BigInt::from(j))) * &b[j]);
        b.push(-s / Rat::from_integer(BigInt::from(k + 1)));
    }
    b
}

/// B_n(x).
pub fn bernoulli_poly(n: usize, x: &Rat) -> Rat {
    let b = bernoulli_numbers(n);
    let mut acc = Rat::zero();
    let mut xp = Rat::one();
    for j in (0..=n).rev() {
        acc += Rat::from_integer(binomial(BigInt::from(n), BigInt::from(j))) * &b[j] * &xp;
        xp *= x;
    }
    acc
}

/// exp[m sum_j (-1)^{mj+1} B_{mj+1}(k/m) / (mj(mj+1)) z^{mj}] through z^order.
pub fn bernoulli_seed(m: u32, k: u32, order: usize) -> Vec<Rat> {
    let mm = m as usize;
    let x = Rat::new(BigInt::from(k), BigInt::from(m));
    let mut log = vec![Rat::zero(); order + 1];
    let mut j = 1;
    while mm * j <= order {
        let n = mm * j;
        let sign = if (n + 1) % 2 == 0 { int(1) } else { int(-1) };
        log[n] = sign * int(m as i64) * bernoulli_poly(n + 1, &x) / int((n * (n + 1)) as i64);
        j += 1;
    }
    let s = QSeries::from_coeffs(log, order).exp().expect("zero constant term");
    (0..=order).map(|i| s.coeff(i)).collect()
}

/// Solve D P + (n/m) X P = h for a polynomial P. `pin` supplies (Z-index, value)
/// used when the termination condition leaves P(0) free.
fn solve_step<F: Field>(n: usize, mu: &F, h: &XPoly<F>, pin: impl Fn() -> Option<(usize, F)>) -> Result<XPoly<F>, String> {
    if !h.coeff(0).is_zero() {
        return Err(format!("step {n}: inhomogeneity has a constant term"));
    }
    let nm = F::from_int(n as i64) * mu.clone();
    let top = (n + 1).max(h.degree().map_or(0, |d| d + 1));
    let mut a = vec![F::zero()];
    let mut b = vec![F::one()];
    for i in 1..=top {
        let fi = F::from_int(i as i64);
        let k = nm.clone() - F::from_int(i as i64 - 1);
        a.push((h.coeff(i) - k.clone() * a[i - 1].clone()) / fi.clone());
        b.push(-(k * b[i - 1].clone()) / fi);
    }
    let t = if !b[n + 1].is_zero() {
        -(a[n + 1].clone() / b[n + 1].clone())
    } else {
        let (zi, val) = pin().ok_or_else(|| format!("step {n}: free constant without a seed"))?;
        let av = XPoly::new(a.clone()).at_one_minus();
        let bv = XPoly::new(b.clone()).at_one_minus();
        let bz = bv.get(zi).cloned().unwrap_or_else(F::zero);
        if bz.is_zero() {
            return Err(format!("step {n}: seed does not fix the constant"));
        }
        (val - av.get(zi).cloned().unwrap_or_else(F::zero)) / bz
    };
    let p: Vec<F> = a.iter().zip(&b).map(|(x, y)| x.clone() + y.clone() * t.clone()).collect();
    if p[n + 1..].iter().any(|x| !x.is_zero()) {
        return Err(format!("step {n}: no polynomial solution"));
    }
    Ok(XPoly::new(p))
}

/// The inhomogeneity for step n from the already known P_0..P_{n-1}.
fn inhomogeneity<F: Field>(levels: &[DOp<F>], mu: &F, p: &[XPoly<F>], n: usize) -> XPoly<F> {
    let mut h = XPoly::zero();
    for s in 2..=n + 1 {
        let e = n + 1 - s;
        h = h.add(&levels[s].apply(e as i64, mu, &p[e]));
    }
    h.scale(&-mu.clone())
}

/// r_0..r_kmax with r_k = L^-k P_k(X), for integer m.
#[derive(Clone, Debug)]
pub struct RSequence {
    pub m: u32,
    pub p: Vec<XPoly<Rat>>,
    levels: Vec<DOp<Rat>>,
}

impl RSequence {
    pub fn new(m: u32, kmax: usize) -> Result<Self, String> {
        let levels = pf_levels_numeric(m, kmax + 1);
        let mu = Rat::one() / int(m as i64);
        let seed = bernoulli_seed(m, 0, kmax);
        let mut p: Vec<XPoly<Rat>> = Vec::new();
        for n in 0..=kmax {
            let h = inhomogeneity(&levels, &mu, &p, n);
            let pin = || (n % m as usize == 0).then(|| (n / m as usize, seed[n].clone()));
            p.push(solve_step(n, &mu, &h, pin)?);
        }
        Ok(RSequence { m, p, levels })
    }

    pub fn mu(&self) -> Rat {
        Rat::one() / int(self.m as i64)
    }

    /// Residual of the full operator at z^{n+1}; zero for a solution.
    pub fn residual(&self, n: usize) -> XPoly<Rat> {
        let mu = self.mu();
        let mut out = XPoly::zero();
        for s in 1..=n + 1 {
            let e = n + 1 - s;
            out = out.add(&self.levels[s].apply(e as i64, &mu, &self.p[e]));
        }
        out
    }

    /// Derivative order one: P1_l = P_l + D P_{l-1} + ((l-1)/m) X P_{l-1}.
    pub fn first_derivative(&self) -> Vec<XPoly<Rat>> {
        let mu = self.mu();
        (0..self.p.len())
            .map(|l| {
                if l == 0 {
                    return self.p[0].clone();
                }
                let q = &self.p[l - 1];
                self.p[l].add(&q.d()).add(&q.shift().scale(&(int(l as i64 - 1) * &mu)))
            })
            .collect()
    }

    /// Coefficients in Z of P(1 - Z).
    pub fn z_coeffs(p: &XPoly<Rat>) -> Vec<Rat> {
        p.at_one_minus()
    }

    /// Smallest j with nonzero [Z^j] P(1-Z).
    pub fn z_valuation(p: &XPoly<Rat>) -> Option<usize> {
        p.at_one_minus().iter().position(|c| !c.is_zero())
    }
}

/// L^-l P(1 - Z) as a ring element in Linv and Z.
pub fn as_genpoly(l: usize, p: &XPoly<Rat>) -> GenPoly {
    let mut g = GenPoly::zero();
    for (j, c) in p.at_one_minus().into_iter().enumerate() {
        if !c.is_zero() {
            g.add_term(Mono::new(l as i32, j as i32, 0, 0, 0, 0), c);
        }
    }
    g
}

/// Entries (column, value) of row 0 of the quintic R-matrix coefficients:
/// entry l sits at column (-l mod 5).
pub fn row0_entries(kmax: usize) -> Result<Vec<(usize, GenPoly)>, String> {
    let rs = RSequence::new(5, kmax)?;
    Ok(rs.first_derivative().iter().enumerate().map(|(l, p)| ((5 - l % 5) % 5, as_genpoly(l, p))).collect())
}

/// Predicted row-4 values L^-l P_l(1 - Z).
pub fn row4_prediction(kmax: usize) -> Result<Vec<GenPoly>, String> {
    let rs = RSequence::new(5, kmax)?;
    Ok(rs.p.iter().enumerate().map(|(l, p)| as_genpoly(l, p)).collect())
}

/// P_0..P_kmax with m symbolic; the constant term of P_0 is pinned to 1.
pub fn r_sequence_symbolic(kmax: usize) -> Result<Vec<XPoly<RatFunc>>, String> {
    let levels = pf_levels_symbolic(kmax + 1);
    let mu = RatFunc::one() / RatFunc::m();
    let mut p: Vec<XPoly<RatFunc>> = Vec::new();
    for n in 0..=kmax {
        let h = inhomogeneity(&levels, &mu, &p, n);
        let pin = || (n == 0).then(|| (0, RatFunc::one()));
        p.push(solve_step(n, &mu, &h, pin)?);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat;

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[6], rat(1, 42));
        assert_eq!(b[12], rat(-691, 2730));
        assert!(b[11].is_zero());
        // B_2(x) = x^2 - x + 1/6
        assert_eq!(bernoulli_poly(2, &rat(1, 3)), rat(1, 9) - rat(1, 3) + rat(1, 6));
    }

    #[test]
    fn seed_coefficients() {
        let s = bernoulli_seed(5, 0, 10);
        assert_eq!(s[0], int(1));
        assert_eq!(s[5], rat(1, 252));
        assert!(s[1..5].iter().all(Zero::is_zero));
    }

    #[test]
    fn first_terms() {
        let rs = RSequence::new(5, 6).unwrap();
        assert_eq!(as_genpoly(1, &rs.p[1]), GenPoly::term(Mono::new(1, 1, 0, 0, 0, 0), rat(-3, 20)));
        assert_eq!(RSequence::z_coeffs(&rs.p[5])[1], rat(1, 252));
        for n in 0..6 {
            assert!(rs.residual(n).is_zero(), "residual at {n}");
        }
    }

    #[test]
    fn symbolic_specializes() {
        let sym = r_sequence_symbolic(3).unwrap();
        for m in [2u32, 3, 5, 7] {
            let rs = RSequence::new(m, 3).unwrap();
            for k in 0..=3 {
                let spec = XPoly::new(sym[k].c.iter().map(|a| a.eval(&int(m as i64)).unwrap()).collect());
                assert_eq!(spec, rs.p[k], "m={m} k={k}");
            }
        }
    }
}
