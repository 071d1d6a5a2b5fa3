use super::rat::{int, Rat};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Element c0 + c1 z + c2 z^2 + c3 z^3 of Q(z), z a primitive fifth root of unity.
/// Reduction uses z^4 = -(1 + z + z^2 + z^3), so the representation is canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    pub c: [Rat; 4],
}

impl CycNum {
    pub fn from_rat(r: Rat) -> Self {
        CycNum { c: [r, Rat::zero(), Rat::zero(), Rat::zero()] }
    }

    /// z^k for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(5) as usize;
        let mut c = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
        if k < 4 {
            c[k] = Rat::one();
        } else {
            for x in c.iter_mut() {
                *x = -Rat::one();
            }
        }
        CycNum { c }
    }

    /// Sum over the five embeddings, i.e. the field trace to Q.
    pub fn trace(&self) -> Rat {
        // Tr(1) = 4, Tr(z^k) = -1 for k = 1..4
        int(4) * &self.c[0] - &self.c[1] - &self.c[2] - &self.c[3]
    }

    pub fn as_rat(&self) -> Option<Rat> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        CycNum { c: [&self.c[0] * r, &self.c[1] * r, &self.c[2] * r, &self.c[3] * r] }
    }

    /// Galois conjugation z -> z^k (k coprime to 5).
    pub fn galois(&self, k: i64) -> Self {
        let mut out = CycNum::zero();
        for (i, ci) in self.c.iter().enumerate() {
            out = out + CycNum::zeta_pow(k * i as i64).scale(ci);
        }
        out
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // norm = product of the four conjugates; the inverse is the product of the other three over it
        let mut others = CycNum::one();
        for k in 2..5 {
            others = others * self.galois(k);
        }
        let norm = (self.clone() * others.clone()).as_rat()?;
        Some(others.scale(&(Rat::one() / norm)))
    }
}

/// Sum of z^(a*s) over a = 0..4.
pub fn root_sum(s: i64) -> Rat {
    if s.rem_euclid(5) == 0 {
        int(5)
    } else {
        Rat::zero()
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, ci) in self.c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            let s = super::rat_str(ci);
            parts.push(match i {
                0 => s,
                1 => format!("({s})z"),
                _ => format!("({s})z^{i}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, o: CycNum) -> CycNum {
        let [a0, a1, a2, a3] = self.c;
        let [b0, b1, b2, b3] = o.c;
        CycNum { c: [a0 + b0, a1 + b1, a2 + b2, a3 + b3] }
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, o: CycNum) -> CycNum {
        self + (-o)
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        let [a0, a1, a2, a3] = self.c;
        CycNum { c: [-a0, -a1, -a2, -a3] }
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, o: CycNum) -> CycNum {
        let mut full: Vec<Rat> = vec![Rat::zero(); 7];
        for i in 0..4 {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                full[i + j] += &self.c[i] * &o.c[j];
            }
        }
        // z^5 = 1, then z^4 = -(1 + z + z^2 + z^3)
        for k in (5..7).rev() {
            let v = std::mem::take(&mut full[k]);
            full[k - 5] += v;
        }
        let t = std::mem::take(&mut full[4]);
        for x in full.iter_mut().take(4) {
            *x -= &t;
        }
        CycNum { c: [full[0].clone(), full[1].clone(), full[2].clone(), full[3].clone()] }
    }
}

impl Zero for CycNum {
    fn zero() -> Self {
        CycNum::from_rat(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
}

impl One for CycNum {
    fn one() -> Self {
        CycNum::from_rat(Rat::one())
    }
}
