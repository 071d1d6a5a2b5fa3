//! Coefficient fields for the Picard-Fuchs machinery: Q itself, and Q(m),
//! rational functions in a symbolic parameter m.

use crate::exactcore::{int, rat_str, Rat, Ring};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Field: Ring + Div<Output = Self> + fmt::Display {
    fn from_rat(r: Rat) -> Self;
    fn from_int(n: i64) -> Self {
        Self::from_rat(int(n))
    }
}

impl Field for Rat {
    fn from_rat(r: Rat) -> Self {
        r
    }
}

/// Dense univariate polynomial over Q, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UPoly {
    pub c: Vec<Rat>,
}

impl UPoly {
    pub fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn constant(r: Rat) -> Self {
        Self::new(vec![r])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rat {
        self.c.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        Self::new(self.c.iter().map(|x| x * r).collect())
    }

    pub fn monic(&self) -> Self {
        if self.c.is_empty() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.c.iter().rev().fold(Rat::zero(), |acc, a| acc * x + a)
    }

    /// Euclidean division.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.lead();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = &r[k + dd] / &lc;
            if !coef.is_zero() {
                for (i, di) in d.c.iter().enumerate() {
                    r[k + i] -= &coef * di;
                }
            }
            q[k] = coef;
        }
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.divrem(d).1
    }

    /// Monic gcd.
    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with s a + t b = g monic.
    pub fn ext_gcd(a: &UPoly, b: &UPoly) -> (UPoly, UPoly, UPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = r0.lead().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| match i {
                0 => rat_str(a),
                1 => format!("{}*m", rat_str(a)),
                _ => format!("{}*m^{i}", rat_str(a)),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new(
            (0..n)
                .map(|i| {
                    self.c.get(i).cloned().unwrap_or_else(Rat::zero) + o.c.get(i).cloned().unwrap_or_else(Rat::zero)
                })
                .collect(),
        )
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        self + &(-o)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly { c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.c.is_empty() || o.c.is_empty() {
            return UPoly::zero();
        }
        let mut c = vec![Rat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
owned_ops!(UPoly);

impl Zero for UPoly {
    fn zero() -> Self {
        UPoly { c: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
}

impl One for UPoly {
    fn one() -> Self {
        UPoly::constant(Rat::one())
    }
}

/// Element of Q(m): num/den in lowest terms with den monic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    pub num: UPoly,
    pub den: UPoly,
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: UPoly::one() };
        }
        let g = UPoly::gcd(&num, &den);
        let (n, _) = num.divrem(&g);
        let (d, _) = den.divrem(&g);
        let lc = d.lead().recip();
        RatFunc { num: n.scale(&lc), den: d.scale(&lc) }
    }

    /// The parameter m.
    pub fn m() -> Self {
        RatFunc { num: UPoly::x(), den: UPoly::one() }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn eval(&self, m: &Rat) -> Option<Rat> {
        let d = self.den.eval(m);
        (!d.is_zero()).then(|| self.num.eval(m) / d)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, o: &RatFunc) -> RatFunc {
        assert!(!o.num.is_zero(), "division by zero in Q(m)");
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }
}

owned_ops!(RatFunc);

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, o: RatFunc) -> RatFunc {
        &self / &o
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc { num: UPoly::zero(), den: UPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc { num: UPoly::one(), den: UPoly::one() }
    }
}

impl Field for RatFunc {
    fn from_rat(r: Rat) -> Self {
        RatFunc { num: UPoly::constant(r), den: UPoly::one() }
    }
}
