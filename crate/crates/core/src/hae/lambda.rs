use crate::exactcore::{int, rat};
use crate::genring::{in_r, Derivation, GenPoly};
use std::collections::BTreeMap;

/// Index of the dual partner under the pairing (phibar_i, phibar_j) = 5 for i + j = 3 mod 5.
pub fn partner(i: usize) -> usize {
    (8 - i) % 5
}

/// Polynomial in one formal variable with `GenPoly` coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PsiPoly(pub Vec<GenPoly>);

impl PsiPoly {
    pub fn zero() -> Self {
        PsiPoly(Vec::new())
    }

    pub fn monomial(p: usize, c: GenPoly) -> Self {
        let mut v = vec![GenPoly::zero(); p + 1];
        v[p] = c;
        PsiPoly(v).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(GenPoly::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(GenPoly::is_zero)
    }

    pub fn coeff(&self, p: usize) -> GenPoly {
        self.0.get(p).cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &PsiPoly) -> PsiPoly {
        let n = self.0.len().max(o.0.len());
        PsiPoly((0..n).map(|p| self.coeff(p) + o.coeff(p)).collect()).trimmed()
    }

    pub fn neg(&self) -> PsiPoly {
        PsiPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &PsiPoly) -> PsiPoly {
        if self.is_zero() || o.is_zero() {
            return PsiPoly::zero();
        }
        let mut v = vec![GenPoly::zero(); self.0.len() + o.0.len() - 1];
        for (a, x) in self.0.iter().enumerate() {
            for (b, y) in o.0.iter().enumerate() {
                if !x.is_zero() && !y.is_zero() {
                    v[a + b] = &v[a + b] + &(x * y);
                }
            }
        }
        PsiPoly(v).trimmed()
    }

    /// psi -> -psi
    pub fn reflect(&self) -> PsiPoly {
        PsiPoly(self.0.iter().enumerate().map(|(p, c)| if p % 2 == 1 { -c } else { c.clone() }).collect())
    }

    pub fn map(&self, f: impl Fn(&GenPoly) -> GenPoly) -> PsiPoly {
        PsiPoly(self.0.iter().map(f).collect()).trimmed()
    }
}

/// Endomorphism of the state space with entries polynomial in psi:
/// `m[i][j]` is the coefficient of phibar_i in Lambda(phibar_j).
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaMap {
    pub m: [[PsiPoly; 5]; 5],
}

impl LambdaMap {
    pub fn zero() -> Self {
        LambdaMap { m: Default::default() }
    }

    fn add_entry(&mut self, i: usize, j: usize, p: usize, c: GenPoly) {
        self.m[i][j] = self.m[i][j].add(&PsiPoly::monomial(p, c));
    }

    pub fn add(&self, o: &LambdaMap) -> LambdaMap {
        LambdaMap { m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[i][j].add(&o.m[i][j]))) }
    }

    pub fn sub(&self, o: &LambdaMap) -> LambdaMap {
        LambdaMap { m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[i][j].add(&o.m[i][j].neg()))) }
    }

    pub fn compose(&self, o: &LambdaMap) -> LambdaMap {
        LambdaMap {
            m: std::array::from_fn(|i| {
                std::array::from_fn(|j| (0..5).fold(PsiPoly::zero(), |acc, k| acc.add(&self.m[i][k].mul(&o.m[k][j]))))
            }),
        }
    }

    pub fn commutator(&self, o: &LambdaMap) -> LambdaMap {
        self.compose(o).sub(&o.compose(self))
    }

    /// Apply a derivation to every coefficient.
    pub fn differentiate(&self, d: &Derivation) -> LambdaMap {
        LambdaMap { m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[i][j].map(|c| d.apply(c)))) }
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(PsiPoly::is_zero)
    }

    /// Lambda(phibar_j) only involves phibar_i with i < j.
    pub fn is_strictly_lower(&self) -> bool {
        (0..5).all(|i| (0..=i).all(|j| self.m[i][j].is_zero()))
    }

    /// Adjoint for the pairing, followed by psi -> -psi.
    pub fn reflected_adjoint(&self) -> LambdaMap {
        LambdaMap { m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[partner(j)][partner(i)].reflect())) }
    }

    pub fn is_skew(&self) -> bool {
        self.add(&self.reflected_adjoint()).is_zero()
    }

    /// Nonzero (i, power, coefficient) in Lambda(phibar_j).
    pub fn image(&self, j: usize) -> Vec<(usize, usize, GenPoly)> {
        let mut out = Vec::new();
        for i in 0..5 {
            for (p, c) in self.m[i][j].0.iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, p, c.clone()));
                }
            }
        }
        out
    }
}

fn check_coefficients(d: &Derivation) -> Result<(), String> {
    for (k, g) in d.g.iter().enumerate() {
        if !in_r(g).0 {
            return Err(format!("coefficient g{k} = {g} is not in R"));
        }
    }
    Ok(())
}

/// Lambda_D = (g0 - g1) L0 psi + g1 L1 psi - g2 L2 psi^2 + g3 L3 psi^3 with
/// L0: phibar_2 -> phibar_1, L1: phibar_j -> phibar_{j-1},
/// L2: phibar_j -> (-1)^j phibar_{j-2}, L3: phibar_j -> phibar_{j-3},
/// all on j <= 3; phibar_4 is annihilated.
pub fn lambda_of(d: &Derivation) -> Result<LambdaMap, String> {
    check_coefficients(d)?;
    let [g0, g1, g2, g3] = &d.g;
    let mut l = LambdaMap::zero();
    l.add_entry(1, 2, 1, g0 - g1);
    for j in 1..=3 {
        l.add_entry(j - 1, j, 1, g1.clone());
    }
    for j in 2..=3 {
        let s = if j % 2 == 0 { int(-1) } else { int(1) };
        l.add_entry(j - 2, j, 2, g2.scale(&s));
    }
    l.add_entry(0, 3, 3, g3.clone());
    Ok(l)
}

/// Element of (H (x) H)[z1, z2]: key (i, i', a, b) is the coefficient of
/// z1^a z2^b phibar_i (x) phibar_i'.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DeltaMap {
    pub terms: BTreeMap<(usize, usize, u32, u32), GenPoly>,
}

impl DeltaMap {
    pub fn add_term(&mut self, i: usize, ip: usize, a: u32, b: u32, c: GenPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, ip, a, b)).or_default();
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&(i, ip, a, b));
        }
    }

    pub fn add(&self, o: &DeltaMap) -> DeltaMap {
        let mut out = self.clone();
        for (&(i, ip, a, b), c) in &o.terms {
            out.add_term(i, ip, a, b, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &GenPoly) -> DeltaMap {
        let mut out = DeltaMap::default();
        for (&(i, ip, a, b), v) in &self.terms {
            out.add_term(i, ip, a, b, v * c);
        }
        out
    }

    /// True when no term carries z1 or z2.
    pub fn is_z_independent(&self) -> bool {
        self.terms.keys().all(|&(_, _, a, b)| a == 0 && b == 0)
    }
}

/// Exact quotient of a bivariate polynomial by (z1 + z2), or None when the
/// division leaves a remainder.
pub fn divide_by_sum(n: &BTreeMap<(u32, u32), GenPoly>) -> Option<BTreeMap<(u32, u32), GenPoly>> {
    let mut by_deg: BTreeMap<u32, BTreeMap<u32, GenPoly>> = BTreeMap::new();
    for (&(a, b), c) in n {
        if !c.is_zero() {
            by_deg.entry(a + b).or_default().insert(a, c.clone());
        }
    }
    let mut out = BTreeMap::new();
    for (d, row) in by_deg {
        if d == 0 {
            return None;
        }
        // coefficient of z1^a z2^{d-a} in (z1 + z2) Q is q_{a-1} + q_a
        let mut prev = GenPoly::zero();
        for a in 0..d {
            let na = row.get(&a).cloned().unwrap_or_default();
            let q = na - prev;
            if !q.is_zero() {
                out.insert((a, d - 1 - a), q.clone());
            }
            prev = q;
        }
        if row.get(&d).cloned().unwrap_or_default() != prev {
            return None;
        }
    }
    Some(out)
}

/// Delta_D(z1, z2) = sum_a (Lambda(z1) e^a (x) e_a + e^a (x) Lambda(z2) e_a) / (z1 + z2),
/// with e_a = phibar_i and e^a = phibar_{partner(i)} / 5.
pub fn delta_of(d: &Derivation) -> Result<DeltaMap, String> {
    let l = lambda_of(d)?;
    delta_from_lambda(&l)
}

pub fn delta_from_lambda(l: &LambdaMap) -> Result<DeltaMap, String> {
    let fifth = rat(1, 5);
    let mut out = DeltaMap::default();
    for m in 0..5 {
        for mp in 0..5 {
            let mut num: BTreeMap<(u32, u32), GenPoly> = BTreeMap::new();
            for (p, c) in l.m[m][partner(mp)].0.iter().enumerate() {
                let e = num.entry((p as u32, 0)).or_default();
                *e = &*e + &c.scale(&fifth);
            }
            for (p, c) in l.m[mp][partner(m)].0.iter().enumerate() {
                let e = num.entry((0, p as u32)).or_default();
                *e = &*e + &c.scale(&fifth);
            }
            let q = divide_by_sum(&num).ok_or_else(|| format!("numerator at ({m},{mp}) is not divisible by z1 + z2"))?;
            for ((a, b), c) in q {
                out.add_term(m, mp, a, b, c);
            }
        }
    }
    Ok(out)
}

fn fifth(c: i64) -> GenPoly {
    GenPoly::constant(rat(c, 5))
}

/// Delta_0 = (1/5)(z1^2 - z1 z2 + z2^2) phibar_0 (x) phibar_0.
pub fn delta0() -> DeltaMap {
    let mut d = DeltaMap::default();
    d.add_term(0, 0, 2, 0, fifth(1));
    d.add_term(0, 0, 1, 1, fifth(-1));
    d.add_term(0, 0, 0, 2, fifth(1));
    d
}

/// Delta_1 = -(1/5)(z1 - z2)(phibar_0 (x) phibar_1 - phibar_1 (x) phibar_0).
pub fn delta1() -> DeltaMap {
    let mut d = DeltaMap::default();
    d.add_term(0, 1, 1, 0, fifth(-1));
    d.add_term(0, 1, 0, 1, fifth(1));
    d.add_term(1, 0, 1, 0, fifth(1));
    d.add_term(1, 0, 0, 1, fifth(-1));
    d
}

/// Delta_2 = (1/5)(phibar_0 (x) phibar_2 + phibar_1 (x) phibar_1 + phibar_2 (x) phibar_0).
pub fn delta2() -> DeltaMap {
    let mut d = DeltaMap::default();
    d.add_term(0, 2, 0, 0, fifth(1));
    d.add_term(1, 1, 0, 0, fifth(1));
    d.add_term(2, 0, 0, 0, fifth(1));
    d
}

/// (g0 - g1)(1/5) phibar_1 (x) phibar_1 + g1 Delta_2 + g2 Delta_1 + g3 Delta_0.
pub fn delta_closed_form(d: &Derivation) -> DeltaMap {
    let [g0, g1, g2, g3] = &d.g;
    let mut base = DeltaMap::default();
    base.add_term(1, 1, 0, 0, (g0 - g1).scale(&rat(1, 5)));
    base.add(&delta2().scale(g1)).add(&delta1().scale(g2)).add(&delta0().scale(g3))
}

/// Cocycle defect Lambda_[D1,D2] - [Lambda_D1, Lambda_D2] - D1 Lambda_D2 + D2 Lambda_D1.
pub fn cocycle_defect(d1: &Derivation, d2: &Derivation) -> Result<LambdaMap, String> {
    let l1 = lambda_of(d1)?;
    let l2 = lambda_of(d2)?;
    let lb = lambda_of(&d1.bracket(d2))?;
    Ok(lb.sub(&l1.commutator(&l2)).sub(&l2.differentiate(d1)).add(&l1.differentiate(d2)))
}
