use super::Ring;

/// Truncated series sum_{k <= zorder} c_k z^k over a coefficient ring.
#[derive(Clone, PartialEq, Debug)]
pub struct ZSeries<T> {
    zorder: usize,
    c: Vec<T>,
}

impl<T: Ring> ZSeries<T> {
    pub fn zero(zorder: usize) -> Self {
        ZSeries { zorder, c: vec![T::zero(); zorder + 1] }
    }

    pub fn from_coeffs(mut c: Vec<T>, zorder: usize) -> Self {
        c.resize(zorder + 1, T::zero());
        c.truncate(zorder + 1);
        ZSeries { zorder, c }
    }

    pub fn zorder(&self) -> usize {
        self.zorder
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.c[k]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.c
    }

    pub fn set(&mut self, k: usize, v: T) {
        if k <= self.zorder {
            self.c[k] = v;
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.zorder.min(o.zorder);
        ZSeries { zorder: n, c: (0..=n).map(|k| self.c[k].clone() + o.c[k].clone()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.zorder.min(o.zorder);
        ZSeries { zorder: n, c: (0..=n).map(|k| self.c[k].clone() - o.c[k].clone()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.zorder.min(o.zorder);
        let mut c = vec![T::zero(); n + 1];
        for i in 0..=n {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                c[i + j] = c[i + j].clone() + self.c[i].clone() * o.c[j].clone();
            }
        }
        ZSeries { zorder: n, c }
    }

    /// f(z) -> f(-z).
    pub fn reflect(&self) -> Self {
        ZSeries {
            zorder: self.zorder,
            c: self
                .c
                .iter()
                .enumerate()
                .map(|(k, x)| if k % 2 == 1 { -x.clone() } else { x.clone() })
                .collect(),
        }
    }

    /// Multiplicative inverse, given an inverse for the constant term.
    pub fn inv_with(&self, inv0: impl Fn(&T) -> Option<T>) -> Option<Self> {
        let b0 = inv0(&self.c[0])?;
        let mut b = vec![T::zero(); self.zorder + 1];
        b[0] = b0.clone();
        for n in 1..=self.zorder {
            let mut acc = T::zero();
            for i in 1..=n {
                if !self.c[i].is_zero() {
                    acc = acc + self.c[i].clone() * b[n - i].clone();
                }
            }
            b[n] = -(b0.clone() * acc);
        }
        Some(ZSeries { zorder: self.zorder, c: b })
    }

    pub fn scale(&self, r: &T) -> Self {
        self.map(|x| x.clone() * r.clone())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> ZSeries<U> {
        ZSeries { zorder: self.zorder, c: self.c.iter().map(f).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::{int, Rat};

    #[test]
    fn product_truncates() {
        let a = ZSeries::from_coeffs(vec![int(1), int(1)], 2);
        let p = a.mul(&a).mul(&a);
        assert_eq!(p.coeffs(), &[int(1), int(3), int(3)]);
    }

    #[test]
    fn reflect_involution() {
        let a: ZSeries<Rat> = ZSeries::from_coeffs(vec![int(1), int(2), int(3), int(4)], 3);
        assert_eq!(a.reflect().reflect(), a);
        assert_eq!(a.reflect().coeff(1), &int(-2));
    }

    #[test]
    fn inverse_of_one_minus_z() {
        let a: ZSeries<Rat> = ZSeries::from_coeffs(vec![int(1), int(-1)], 4);
        let b = a.inv_with(|c| Some(c.recip())).unwrap();
        assert!(b.coeffs().iter().all(|c| *c == int(1)));
    }
}
