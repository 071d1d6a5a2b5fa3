use super::lambda::{delta0, delta1, delta2, divide_by_sum, lambda_of, partner, DeltaMap, LambdaMap};
use crate::exactcore::{int, rat};
use crate::genring::{Derivation, GenPoly, Var};
use crate::qde::{RMatrix, SDelta};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// The four coordinate derivations d/dY, d/dX, d/dX2, d/dX3 with labels.
pub fn coordinate_derivations() -> Vec<(&'static str, Derivation)> {
    vec![
        ("d/dY", Derivation::coordinate(Var::Y)),
        ("d/dX", Derivation::coordinate(Var::X1)),
        ("d/dX2", Derivation::coordinate(Var::X2)),
        ("d/dX3", Derivation::coordinate(Var::X3)),
    ]
}

/// Coefficients of Rbar^{-1}(z) phibar_j = sum_k z^k v[j][k]: v[j][k][m] = (-1)^k Rbar_k[j][m].
pub struct RInverse {
    pub kmax: usize,
    pub v: Vec<Vec<[GenPoly; 5]>>,
}

impl RInverse {
    pub fn new(rm: &RMatrix) -> Self {
        let v = (0..5)
            .map(|j| {
                (0..=rm.kmax)
                    .map(|k| std::array::from_fn(|m| if k % 2 == 0 { rm.r[k][j][m].clone() } else { -&rm.r[k][j][m] }))
                    .collect()
            })
            .collect();
        RInverse { kmax: rm.kmax, v }
    }
}

/// Orders (k, j) where D Rbar^{-1}(z) phibar_j != Rbar^{-1}(z) Lambda_D phibar_j at z^k.
pub fn r_pde_violations(ri: &RInverse, d: &Derivation, lam: &LambdaMap, kcheck: usize) -> Vec<(usize, usize)> {
    let mut bad = Vec::new();
    for k in 0..=kcheck.min(ri.kmax) {
        for j in 0..5 {
            let img = lam.image(j);
            let ok = (0..5).all(|m| {
                let lhs = d.apply(&ri.v[j][k][m]);
                let mut rhs = GenPoly::zero();
                for (i, p, c) in &img {
                    if *p <= k {
                        rhs = rhs + c * &ri.v[*i][k - p][m];
                    }
                }
                lhs == rhs
            });
            if !ok {
                bad.push((k, j));
            }
        }
    }
    bad
}

type Bivariate = BTreeMap<(u32, u32), GenPoly>;

/// V(z1, z2) = (sum e_a (x) e^a - Rbar^{-1}(z1) e_a (x) Rbar^{-1}(z2) e^a) / (z1 + z2),
/// indexed by output components (m, m'), through total z-degree kmax - 1.
pub struct VTensor {
    pub total: u32,
    pub comp: BTreeMap<(usize, usize), Bivariate>,
}

pub fn v_tensor(ri: &RInverse) -> Result<VTensor, String> {
    let kmax = ri.kmax as u32;
    let fifth = rat(1, 5);
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|m| (0..5).map(move |mp| (m, mp))).collect();
    let comps: Vec<Result<((usize, usize), Bivariate), String>> = pairs
        .par_iter()
        .map(|&(m, mp)| {
            let mut num: Bivariate = BTreeMap::new();
            if mp == partner(m) {
                num.insert((0, 0), GenPoly::constant(fifth.clone()));
            }
            for a in 0..=kmax {
                for b in 0..=(kmax - a) {
                    let mut s = GenPoly::zero();
                    for i in 0..5 {
                        let x = &ri.v[i][a as usize][m];
                        let y = &ri.v[partner(i)][b as usize][mp];
                        if !x.is_zero() && !y.is_zero() {
                            s = s + x * y;
                        }
                    }
                    if !s.is_zero() {
                        let e = num.entry((a, b)).or_default();
                        *e = &*e - &s.scale(&fifth);
                    }
                }
            }
            num.retain(|_, c| !c.is_zero());
            let q = divide_by_sum(&num).ok_or_else(|| format!("V numerator at ({m},{mp}) not divisible by z1 + z2"))?;
            Ok(((m, mp), q))
        })
        .collect();
    let mut comp = BTreeMap::new();
    for c in comps {
        let (k, v) = c?;
        comp.insert(k, v);
    }
    Ok(VTensor { total: kmax.saturating_sub(1), comp })
}

/// Total z-degrees d <= dcheck where -D V != (Rbar^{-1} (x) Rbar^{-1}) Delta.
pub fn v_pde_violations(ri: &RInverse, vt: &VTensor, d: &Derivation, delta: &DeltaMap, dcheck: u32) -> Vec<u32> {
    let dcheck = dcheck.min(vt.total);
    let mut bad = std::collections::BTreeSet::new();
    for m in 0..5 {
        for mp in 0..5 {
            let v = &vt.comp[&(m, mp)];
            for tot in 0..=dcheck {
                for a in 0..=tot {
                    let b = tot - a;
                    let lhs = -d.apply(&v.get(&(a, b)).cloned().unwrap_or_default());
                    let mut rhs = GenPoly::zero();
                    for (&(i, ip, p1, p2), c) in &delta.terms {
                        if p1 <= a && p2 <= b {
                            let x = &ri.v[i][(a - p1) as usize][m];
                            let y = &ri.v[ip][(b - p2) as usize][mp];
                            if !x.is_zero() && !y.is_zero() {
                                rhs = rhs + c * &(x * y);
                            }
                        }
                    }
                    if lhs != rhs {
                        bad.insert(tot);
                    }
                }
            }
        }
    }
    bad.into_iter().collect()
}

/// Delta printed alongside each coordinate derivation in the explicit V-PDEs.
pub fn printed_v_deltas() -> Vec<(&'static str, DeltaMap)> {
    let x = GenPoly::x1();
    let y = GenPoly::y();
    let c = x.pow(2).scale(&int(2)) + GenPoly::x2().scale(&int(4)) + crate::genring::zcal(2).scale(&rat(15, 4));
    let mut dy = DeltaMap::default();
    dy.add_term(1, 1, 0, 0, GenPoly::constant(rat(1, 5)));
    let dx = delta2().add(&delta1().scale(&(&y - &x))).add(&delta0().scale(&c));
    let dx2 = delta1().add(&delta0().scale(&x.scale(&int(2))));
    vec![("d/dY", dy), ("d/dX", dx), ("d/dX2", dx2), ("d/dX3", delta0())]
}

/// Indices (delta, j) where D S_{delta;j} != sum Lambda_D coefficients at psi = 5/delta.
pub fn s_pde_violations(sd: &SDelta, d: &Derivation) -> Result<Vec<usize>, String> {
    let lam = lambda_of(d)?;
    let psi = rat(5, sd.delta as i64);
    let mut bad = Vec::new();
    for j in 0..5 {
        let lhs = d.apply(&sd.entries[j]);
        let mut rhs = GenPoly::zero();
        for (i, p, c) in lam.image(j) {
            let f = (0..p).fold(int(1), |acc, _| acc * &psi);
            rhs = rhs + (&c * &sd.entries[i]).scale(&f);
        }
        if lhs != rhs {
            bad.push(j);
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hae::lambda::delta_of;
    use crate::qde::{r_matrix, s_delta};

    #[test]
    fn r_and_v_pdes_low_order() {
        let rm = r_matrix(6).unwrap();
        let ri = RInverse::new(&rm);
        let vt = v_tensor(&ri).unwrap();
        for (name, d) in coordinate_derivations() {
            let lam = lambda_of(&d).unwrap();
            assert!(r_pde_violations(&ri, &d, &lam, 6).is_empty(), "{name}");
            let delta = delta_of(&d).unwrap();
            assert!(v_pde_violations(&ri, &vt, &d, &delta, 5).is_empty(), "{name}");
        }
        // d/dY kills column 0: Rbar^{-1} phibar_0 is Y-free
        assert!((0..=6).all(|k| (0..5).all(|m| ri.v[0][k][m].max_exp(Var::Y) == 0)));
    }

    #[test]
    fn s_pdes() {
        for delta in 1..=6 {
            let sd = s_delta(delta).unwrap();
            for (name, d) in coordinate_derivations() {
                assert!(s_pde_violations(&sd, &d).unwrap().is_empty(), "{name} delta={delta}");
            }
        }
    }
}
