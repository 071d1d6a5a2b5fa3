use super::rat::{int, Rat};
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series with zero constant term is not invertible")]
    NotInvertible,
    #[error("log requires constant term 1")]
    LogDomain,
    #[error("exp requires constant term 0")]
    ExpDomain,
    #[error("rational power requires constant term 1")]
    PowDomain,
    #[error("q d/dq cannot be inverted on a nonzero constant term")]
    NonzeroConstant,
}

/// Power series in q known through q^order. Dense coefficient vector of length order + 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries {
    order: usize,
    c: Vec<Rat>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries { order, c: vec![Rat::zero(); order + 1] }
    }

    pub fn constant(r: Rat, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.c[0] = r;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rat::one(), order)
    }

    /// The monomial q^k (zero if k exceeds the order).
    pub fn monomial(k: usize, r: Rat, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.c[k] = r;
        }
        s
    }

    /// Takes the first order + 1 entries, padding with zeros.
    pub fn from_coeffs(mut c: Vec<Rat>, order: usize) -> Self {
        c.resize(order + 1, Rat::zero());
        QSeries { order, c }
    }

    pub fn from_fn(order: usize, f: impl Fn(usize) -> Rat) -> Self {
        QSeries { order, c: (0..=order).map(f).collect() }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.c.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        QSeries { order, c: self.c[..=order].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// Index of the first differing coefficient up to the common order.
    pub fn first_difference(&self, other: &QSeries) -> Option<usize> {
        let n = self.order.min(other.order);
        (0..=n).find(|&k| self.c[k] != other.c[k])
    }

    pub fn scale(&self, r: &Rat) -> Self {
        QSeries { order: self.order, c: self.c.iter().map(|x| x * r).collect() }
    }

    pub fn add_ref(&self, o: &QSeries) -> Self {
        let n = self.order.min(o.order);
        QSeries { order: n, c: (0..=n).map(|k| &self.c[k] + &o.c[k]).collect() }
    }

    pub fn sub_ref(&self, o: &QSeries) -> Self {
        let n = self.order.min(o.order);
        QSeries { order: n, c: (0..=n).map(|k| &self.c[k] - &o.c[k]).collect() }
    }

    pub fn mul_ref(&self, o: &QSeries) -> Self {
        let n = self.order.min(o.order);
        let mut c = vec![Rat::zero(); n + 1];
        for i in 0..=n {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if !o.c[j].is_zero() {
                    c[i + j] += &self.c[i] * &o.c[j];
                }
            }
        }
        QSeries { order: n, c }
    }

    pub fn inv(&self) -> Result<Self, SeriesError> {
        if self.c[0].is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let n = self.order;
        let a0inv = Rat::one() / &self.c[0];
        let mut b = vec![Rat::zero(); n + 1];
        b[0] = a0inv.clone();
        for d in 1..=n {
            let mut s = Rat::zero();
            for i in 1..=d {
                if !self.c[i].is_zero() {
                    s += &self.c[i] * &b[d - i];
                }
            }
            b[d] = -s * &a0inv;
        }
        Ok(QSeries { order: n, c: b })
    }

    pub fn div_ref(&self, o: &QSeries) -> Result<Self, SeriesError> {
        Ok(self.mul_ref(&o.inv()?))
    }

    pub fn pow_u(&self, e: u32) -> Self {
        let mut acc = QSeries::one(self.order);
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Integer power, negative exponents through the inverse.
    pub fn pow_i(&self, e: i64) -> Result<Self, SeriesError> {
        if e >= 0 {
            Ok(self.pow_u(e as u32))
        } else {
            Ok(self.inv()?.pow_u((-e) as u32))
        }
    }

    /// D = q d/dq.
    pub fn qdq(&self) -> Self {
        QSeries {
            order: self.order,
            c: self.c.iter().enumerate().map(|(k, x)| x * int(k as i64)).collect(),
        }
    }

    /// Inverse of D on series without constant term; the result has zero constant term.
    pub fn qdq_inv(&self) -> Result<Self, SeriesError> {
        if !self.c[0].is_zero() {
            return Err(SeriesError::NonzeroConstant);
        }
        let mut c = vec![Rat::zero(); self.order + 1];
        for k in 1..=self.order {
            c[k] = &self.c[k] / int(k as i64);
        }
        Ok(QSeries { order: self.order, c })
    }

    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.c[0].is_one() {
            return Err(SeriesError::LogDomain);
        }
        self.qdq().mul_ref(&self.inv()?).qdq_inv()
    }

    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.c[0].is_zero() {
            return Err(SeriesError::ExpDomain);
        }
        // d b_d = sum_{k=1}^d k a_k b_{d-k}
        let n = self.order;
        let mut b = vec![Rat::zero(); n + 1];
        b[0] = Rat::one();
        for d in 1..=n {
            let mut s = Rat::zero();
            for k in 1..=d {
                if !self.c[k].is_zero() {
                    s += int(k as i64) * &self.c[k] * &b[d - k];
                }
            }
            b[d] = s / int(d as i64);
        }
        Ok(QSeries { order: n, c: b })
    }

    /// a^r for rational r and a(0) = 1, via a D(b) = r b D(a).
    pub fn pow_rat(&self, r: &Rat) -> Result<Self, SeriesError> {
        if !self.c[0].is_one() {
            return Err(SeriesError::PowDomain);
        }
        let n = self.order;
        let mut b = vec![Rat::zero(); n + 1];
        b[0] = Rat::one();
        for d in 1..=n {
            let mut s = Rat::zero();
            for i in 1..=d {
                if !self.c[i].is_zero() {
                    let w = r * int(i as i64) - int((d - i) as i64);
                    s += w * &self.c[i] * &b[d - i];
                }
            }
            b[d] = s / int(d as i64);
        }
        Ok(QSeries { order: n, c: b })
    }
}

impl Add for QSeries {
    type Output = QSeries;
    fn add(self, o: QSeries) -> QSeries {
        self.add_ref(&o)
    }
}

impl Sub for QSeries {
    type Output = QSeries;
    fn sub(self, o: QSeries) -> QSeries {
        self.sub_ref(&o)
    }
}

impl Mul for QSeries {
    type Output = QSeries;
    fn mul(self, o: QSeries) -> QSeries {
        self.mul_ref(&o)
    }
}

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { order: self.order, c: self.c.into_iter().map(|x| -x).collect() }
    }
}

impl<'a> Add<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn add(self, o: &QSeries) -> QSeries {
        self.add_ref(o)
    }
}

impl<'a> Sub<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn sub(self, o: &QSeries) -> QSeries {
        self.sub_ref(o)
    }
}

impl<'a> Mul<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn mul(self, o: &QSeries) -> QSeries {
        self.mul_ref(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat;

    fn q(order: usize) -> QSeries {
        QSeries::monomial(1, Rat::one(), order)
    }

    #[test]
    fn difference_of_squares() {
        let o = QSeries::one(6);
        let p = (&o + &q(6)) * (&o - &q(6));
        assert_eq!(p, QSeries::from_coeffs(vec![int(1), int(0), int(-1)], 6));
    }

    #[test]
    fn geometric_series() {
        let g = (QSeries::one(8) - q(8)).inv().unwrap();
        assert!(g.coeffs().iter().all(|c| c.is_one()));
    }

    #[test]
    fn binomial_fifth_root() {
        let base = QSeries::one(4) - q(4).scale(&int(3125));
        let l = base.pow_rat(&rat(-1, 5)).unwrap();
        assert_eq!(l.coeff(1), int(625));
        assert_eq!(l.coeff(2), int(1171875));
    }

    #[test]
    fn log_exp_inverse() {
        let a = q(7);
        assert_eq!(a.exp().unwrap().log().unwrap(), a);
        assert_eq!(QSeries::zero(5).exp().unwrap(), QSeries::one(5));
    }

    #[test]
    fn qdq_examples() {
        assert!(QSeries::one(3).qdq().is_zero());
        let s = QSeries::from_coeffs(vec![int(0), int(1), int(1)], 3);
        assert_eq!(s.qdq(), QSeries::from_coeffs(vec![int(0), int(1), int(2)], 3));
    }

    #[test]
    fn mixed_orders_truncate() {
        let a = QSeries::one(3);
        let b = QSeries::one(5);
        assert_eq!((a + b).order(), 3);
    }

    #[test]
    fn errors() {
        assert_eq!(q(3).inv(), Err(SeriesError::NotInvertible));
        assert_eq!(q(3).log(), Err(SeriesError::LogDomain));
        assert_eq!(QSeries::one(3).exp(), Err(SeriesError::ExpDomain));
    }
}
