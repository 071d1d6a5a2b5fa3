use super::Ring;

/// 5x5 matrix over a ring, indexed by the basis of H*(P^4). Acts on column vectors.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat5<T> {
    pub m: [[T; 5]; 5],
}

impl<T: Ring> Mat5<T> {
    pub fn from_fn(f: impl Fn(usize, usize) -> T) -> Self {
        Mat5 { m: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))) }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| T::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.m[i][j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.m[j][i].clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| self.m[i][j].clone() + o.m[i][j].clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| self.m[i][j].clone() - o.m[i][j].clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| {
            let mut acc = T::zero();
            for k in 0..5 {
                if !self.m[i][k].is_zero() && !o.m[k][j].is_zero() {
                    acc = acc + self.m[i][k].clone() * o.m[k][j].clone();
                }
            }
            acc
        })
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Mat5<U> {
        Mat5::from_fn(|i, j| f(&self.m[i][j]))
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::{int, Rat};

    #[test]
    fn identity_is_neutral() {
        let a: Mat5<Rat> = Mat5::from_fn(|i, j| int((i * 5 + j) as i64));
        assert_eq!(a.mul(&Mat5::identity()), a);
        assert_eq!(Mat5::identity().mul(&a), a);
        assert_eq!(a.transpose().transpose(), a);
    }
}
