use crate::exactcore::{int, rat_str, Rat};
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The six generators of the graded ring. `Linv` is L^-1; `Z` is an
/// independent symbol that realizes to L^5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Linv = 0,
    Z = 1,
    X1 = 2,
    X2 = 3,
    X3 = 4,
    Y = 5,
}

impl Var {
    pub const ALL: [Var; 6] = [Var::Linv, Var::Z, Var::X1, Var::X2, Var::X3, Var::Y];

    pub fn weight(self) -> i32 {
        match self {
            Var::Linv | Var::X1 | Var::Y => 1,
            Var::Z => 0,
            Var::X2 => 2,
            Var::X3 => 3,
        }
    }
}

/// Exponent vector indexed by `Var as usize`. Only the Linv exponent may be negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono {
    pub e: [i32; 6],
}

impl Mono {
    pub fn one() -> Self {
        Mono::default()
    }

    pub fn var(v: Var) -> Self {
        Mono::one().with(v, 1)
    }

    pub fn new(linv: i32, z: i32, x1: i32, x2: i32, x3: i32, y: i32) -> Self {
        Mono { e: [linv, z, x1, x2, x3, y] }
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.e[v as usize]
    }

    pub fn with(mut self, v: Var, k: i32) -> Self {
        self.e[v as usize] = k;
        self
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono { e: std::array::from_fn(|i| self.e[i] + o.e[i]) }
    }

    pub fn degree(&self) -> i32 {
        Var::ALL.iter().map(|&v| v.weight() * self.exp(v)).sum()
    }

    /// Membership of the (Linv, Z) part in the span of L^-a Z^b with b <= a <= 5b.
    pub fn lz_admissible(&self) -> bool {
        let (a, b) = (self.exp(Var::Linv), self.exp(Var::Z));
        b <= a && a <= 5 * b
    }

    /// True when only X1, X2, X3, Y appear.
    pub fn is_prime_ring(&self) -> bool {
        self.exp(Var::Linv) == 0 && self.exp(Var::Z) == 0
    }
}

/// Sparse polynomial over Q in the six generators; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GenPoly {
    terms: BTreeMap<Mono, Rat>,
}

impl GenPoly {
    pub fn zero() -> Self {
        GenPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(Mono::one(), c)
    }

    pub fn term(m: Mono, c: Rat) -> Self {
        let mut p = GenPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(v: Var) -> Self {
        Self::term(Mono::var(v), Rat::one())
    }

    pub fn x1() -> Self {
        Self::var(Var::X1)
    }
    pub fn x2() -> Self {
        Self::var(Var::X2)
    }
    pub fn x3() -> Self {
        Self::var(Var::X3)
    }
    pub fn y() -> Self {
        Self::var(Var::Y)
    }
    pub fn z() -> Self {
        Self::var(Var::Z)
    }
    pub fn linv() -> Self {
        Self::var(Var::Linv)
    }

    /// L^k for any integer k (stored as Linv^-k).
    pub fn l_pow(k: i32) -> Self {
        Self::term(Mono::one().with(Var::Linv, -k), Rat::one())
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return GenPoly::zero();
        }
        GenPoly { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    /// self * c * m
    pub fn mul_term(&self, m: &Mono, c: &Rat) -> Self {
        if c.is_zero() {
            return GenPoly::zero();
        }
        GenPoly { terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect() }
    }

    pub fn add_ref(&self, o: &GenPoly) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub_ref(&self, o: &GenPoly) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c.clone());
        }
        r
    }

    pub fn mul_ref(&self, o: &GenPoly) -> Self {
        let mut r = GenPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(GenPoly::one(), |acc, _| acc.mul_ref(self))
    }

    /// Formal partial derivative in one generator.
    pub fn partial(&self, v: Var) -> Self {
        let mut r = GenPoly::zero();
        for (m, c) in &self.terms {
            let k = m.exp(v);
            if k != 0 {
                r.add_term(m.with(v, k - 1), c * int(k as i64));
            }
        }
        r
    }

    /// Replace each generator `v` for which `f(v)` is Some by that polynomial.
    /// Replaced generators must carry non-negative exponents.
    pub fn subst(&self, f: impl Fn(Var) -> Option<GenPoly>) -> Self {
        let images: Vec<Option<GenPoly>> = Var::ALL.iter().map(|&v| f(v)).collect();
        let mut cache: Vec<Vec<GenPoly>> = vec![vec![GenPoly::one()]; 6];
        let mut out = GenPoly::zero();
        for (m, c) in &self.terms {
            let mut keep = *m;
            let mut acc = GenPoly::one();
            for v in Var::ALL {
                let i = v as usize;
                if let Some(img) = &images[i] {
                    let k = m.exp(v);
                    assert!(k >= 0, "cannot substitute into a negative power");
                    while cache[i].len() <= k as usize {
                        let next = cache[i].last().unwrap().mul_ref(img);
                        cache[i].push(next);
                    }
                    acc = acc.mul_ref(&cache[i][k as usize]);
                    keep = keep.with(v, 0);
                }
            }
            out = out.add_ref(&acc.mul_term(&keep, c));
        }
        out
    }

    /// Set of degrees of the stored monomials.
    pub fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.terms.keys().map(Mono::degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Common degree of all monomials; `None` if inhomogeneous or zero.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn is_homogeneous_of(&self, d: i32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Whether every coefficient lives in Q[X1, X2, X3, Y].
    pub fn in_prime_ring(&self) -> bool {
        self.terms.keys().all(Mono::is_prime_ring)
    }

    pub fn max_exp(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn min_exp(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exp(v)).min().unwrap_or(0)
    }

    /// Coefficient of v^k as a polynomial in the remaining generators.
    pub fn coeff_of(&self, v: Var, k: i32) -> Self {
        let mut r = GenPoly::zero();
        for (m, c) in &self.terms {
            if m.exp(v) == k {
                r.add_term(m.with(v, 0), c.clone());
            }
        }
        r
    }

    /// Monomials with given exponents in a subset of generators, others kept.
    pub fn filter(&self, keep: impl Fn(&Mono) -> bool) -> Self {
        GenPoly { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (*m, c.clone())).collect() }
    }

    /// Render with caller-chosen symbols for the four non-(L,Z) slots.
    pub fn render(&self, names: [&str; 4]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        // highest degree first, then the BTreeMap order
        let mut ts: Vec<(&Mono, &Rat)> = self.terms.iter().collect();
        ts.sort_by_key(|(m, _)| std::cmp::Reverse(m.degree()));
        for (i, (m, c)) in ts.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let body = render_mono(m, names);
            if body.is_empty() {
                s.push_str(&rat_str(&a));
            } else if a.is_one() {
                s.push_str(&body);
            } else {
                s.push_str(&format!("{}*{}", rat_str(&a), body));
            }
        }
        s
    }
}

fn sup(k: i32) -> String {
    if k == 1 {
        String::new()
    } else {
        format!("^{k}")
    }
}

fn render_mono(m: &Mono, names: [&str; 4]) -> String {
    let mut parts = Vec::new();
    let a = m.exp(Var::Linv);
    if a != 0 {
        parts.push(format!("L{}", sup(-a)));
    }
    let b = m.exp(Var::Z);
    if b != 0 {
        parts.push(format!("Z{}", sup(b)));
    }
    for (v, name) in [(Var::X1, names[0]), (Var::Y, names[1]), (Var::X2, names[2]), (Var::X3, names[3])] {
        let k = m.exp(v);
        if k != 0 {
            parts.push(format!("{name}{}", sup(k)));
        }
    }
    parts.join("*")
}

pub const XY_NAMES: [&str; 4] = ["𝒳", "𝒴", "𝒳₂", "𝒳₃"];

impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(XY_NAMES))
    }
}

impl fmt::Debug for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized as a list of `{"exp": [linv, z, x1, x2, x3, y], "coeff": "p/q"}`.
impl Serialize for GenPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct T {
            exp: [i32; 6],
            coeff: String,
        }
        let v: Vec<T> = self.terms.iter().map(|(m, c)| T { exp: m.e, coeff: rat_str(c) }).collect();
        v.serialize(s)
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $imp:ident) => {
        impl $tr for GenPoly {
            type Output = GenPoly;
            fn $f(self, o: GenPoly) -> GenPoly {
                self.$imp(&o)
            }
        }
        impl<'a> $tr<&'a GenPoly> for &'a GenPoly {
            type Output = GenPoly;
            fn $f(self, o: &'a GenPoly) -> GenPoly {
                self.$imp(o)
            }
        }
        impl<'a> $tr<&'a GenPoly> for GenPoly {
            type Output = GenPoly;
            fn $f(self, o: &'a GenPoly) -> GenPoly {
                self.$imp(o)
            }
        }
        impl $tr<GenPoly> for &GenPoly {
            type Output = GenPoly;
            fn $f(self, o: GenPoly) -> GenPoly {
                self.$imp(&o)
            }
        }
    };
}
binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);

impl Neg for GenPoly {
    type Output = GenPoly;
    fn neg(self) -> GenPoly {
        self.scale(&-Rat::one())
    }
}

impl Neg for &GenPoly {
    type Output = GenPoly;
    fn neg(self) -> GenPoly {
        self.scale(&-Rat::one())
    }
}

impl Mul<&Rat> for &GenPoly {
    type Output = GenPoly;
    fn mul(self, c: &Rat) -> GenPoly {
        self.scale(c)
    }
}

impl Mul<Rat> for GenPoly {
    type Output = GenPoly;
    fn mul(self, c: Rat) -> GenPoly {
        self.scale(&c)
    }
}

impl Zero for GenPoly {
    fn zero() -> Self {
        GenPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for GenPoly {
    fn one() -> Self {
        GenPoly::one()
    }
}

impl From<Rat> for GenPoly {
    fn from(c: Rat) -> Self {
        GenPoly::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat;

    #[test]
    fn arithmetic_and_cancellation() {
        let x = GenPoly::x1();
        let y = GenPoly::y();
        let p = (&x + &y) * (&x - &y);
        let q = x.pow(2) - y.pow(2);
        assert_eq!(p, q);
        assert!((&p - &q).is_zero());
        assert_eq!((&x - &x).len(), 0);
    }

    #[test]
    fn grading() {
        let m = Mono::new(2, 7, 1, 1, 1, 1);
        assert_eq!(m.degree(), 2 + 1 + 2 + 3 + 1);
        assert_eq!(GenPoly::l_pow(1).degrees(), vec![-1]);
        assert!(Mono::new(3, 3, 0, 0, 0, 0).lz_admissible());
        assert!(!Mono::new(1, 0, 0, 0, 0, 0).lz_admissible());
    }

    #[test]
    fn partial_and_subst() {
        let p = GenPoly::x1().pow(3).mul_ref(&GenPoly::y());
        assert_eq!(p.partial(Var::X1), GenPoly::x1().pow(2).mul_ref(&GenPoly::y()).scale(&int(3)));
        let s = p.subst(|v| (v == Var::Y).then(|| GenPoly::x1().scale(&rat(1, 2))));
        assert_eq!(s, GenPoly::x1().pow(4).scale(&rat(1, 2)));
    }

    #[test]
    fn display_is_readable() {
        let p = GenPoly::x1().scale(&rat(-59, 6)) + GenPoly::y().scale(&rat(-1, 2));
        let s = p.to_string();
        assert!(s.contains("59/6*𝒳"), "{s}");
        assert!(s.contains("1/2*𝒴"), "{s}");
        assert_eq!(GenPoly::l_pow(-2).to_string(), "L^-2");
    }

    #[test]
    fn json_form() {
        let p = GenPoly::term(Mono::new(1, 1, 0, 0, 0, 0), rat(1, 5));
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(j, r#"[{"exp":[1,1,0,0,0,0],"coeff":"1/5"}]"#);
    }
}
