use crate::exactcore::{int, CycNum, QSeries, Rat};
use crate::mirrordata::{itilde, IData};
use num_traits::{One, Zero};

/// 5x5 matrix of q-series, acting on column vectors in the flat basis H^i.
pub type QMat = [[QSeries; 5]; 5];

pub fn qmat_zero(order: usize) -> QMat {
    std::array::from_fn(|_| std::array::from_fn(|_| QSeries::zero(order)))
}

pub fn qmat_identity(order: usize) -> QMat {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { QSeries::one(order) } else { QSeries::zero(order) }))
}

pub fn qmat_mul(a: &QMat, b: &QMat) -> QMat {
    let order = a[0][0].order();
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = QSeries::zero(order);
            for k in 0..5 {
                if !a[i][k].is_zero() && !b[k][j].is_zero() {
                    acc = acc.add_ref(&a[i][k].mul_ref(&b[k][j]));
                }
            }
            acc
        })
    })
}

pub fn qmat_sub(a: &QMat, b: &QMat) -> QMat {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j].sub_ref(&b[i][j])))
}

pub fn qmat_transpose(a: &QMat) -> QMat {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

pub fn qmat_is_zero(a: &QMat) -> bool {
    a.iter().all(|r| r.iter().all(QSeries::is_zero))
}

/// Quantum multiplication by the mirror-shifted divisor in the flat basis,
/// lambda = 1: A H^i = I_{i+1,i+1} H^{i+1}, with H^5 = lambda^5 H^0.
#[derive(Clone, Debug)]
pub struct AMatrix {
    pub order: usize,
    pub m: QMat,
}

pub fn quantum_product(data: &IData) -> AMatrix {
    let order = data.order;
    let diag = data.diagonal();
    let mut m = qmat_zero(order);
    for i in 0..5 {
        m[(i + 1) % 5][i] = diag[i].clone();
    }
    AMatrix { order, m }
}

/// Classical multiplication by H (the q = 0 limit of A).
pub fn h_matrix(order: usize) -> QMat {
    let mut m = qmat_zero(order);
    for i in 0..5 {
        m[(i + 1) % 5][i] = QSeries::one(order);
    }
    m
}

/// Flat pairing (H^i, H^j) at lambda = 1.
pub fn eta() -> [[Rat; 5]; 5] {
    std::array::from_fn(|i| std::array::from_fn(|j| if (i + j) % 5 == 3 { int(5) } else { Rat::zero() }))
}

impl AMatrix {
    /// Coefficients c_0..c_5 (each a q-series) of det(x I - A) by full
    /// permutation expansion.
    pub fn char_poly(&self) -> Vec<QSeries> {
        let order = self.order;
        let mut out = vec![QSeries::zero(order); 6];
        let mut perm = [0usize, 1, 2, 3, 4];
        let mut c = [0usize; 5];
        let mut sign = 1i64;
        let mut visit = |p: &[usize; 5], sign: i64| {
            // product over i of (x delta - A)[i][p(i)] as a polynomial in x
            let mut poly = vec![QSeries::one(order)];
            for i in 0..5 {
                let a = self.m[i][p[i]].scale(&int(-1));
                let x = i == p[i];
                let mut next = vec![QSeries::zero(order); poly.len() + 1];
                for (d, t) in poly.iter().enumerate() {
                    next[d] = next[d].add_ref(&t.mul_ref(&a));
                    if x {
                        next[d + 1] = next[d + 1].add_ref(t);
                    }
                }
                poly = next;
            }
            for (d, t) in poly.iter().enumerate() {
                out[d] = out[d].add_ref(&t.scale(&int(sign)));
            }
        };
        visit(&perm, sign);
        // Heap's algorithm over the remaining permutations
        let mut i = 0;
        while i < 5 {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                sign = -sign;
                visit(&perm, sign);
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        out
    }

    /// A^T eta = eta A.
    pub fn is_self_adjoint(&self) -> bool {
        let e = eta();
        let em: QMat = std::array::from_fn(|i| std::array::from_fn(|j| QSeries::constant(e[i][j].clone(), self.order)));
        qmat_mul(&qmat_transpose(&self.m), &em) == qmat_mul(&em, &self.m)
    }
}

/// S*(z) = sum_k T_k z^-k in the flat basis, solving zD T + H T = T A with
/// T_0 = Id; column i is the image of H^i.
#[derive(Clone, Debug)]
pub struct SMatrix {
    pub order_q: usize,
    pub t: Vec<QMat>,
    a: QMat,
}

pub fn s_matrix(data: &IData, order_zinv: usize) -> SMatrix {
    let a = quantum_product(data).m;
    let h = h_matrix(data.order);
    let mut t = vec![qmat_identity(data.order)];
    for k in 0..order_zinv {
        let rhs = qmat_sub(&qmat_mul(&t[k], &a), &qmat_mul(&h, &t[k]));
        let next: QMat = std::array::from_fn(|i| {
            std::array::from_fn(|j| rhs[i][j].qdq_inv().expect("right-hand side vanishes at q = 0"))
        });
        t.push(next);
    }
    SMatrix { order_q: data.order, t, a }
}

impl SMatrix {
    /// D T_{k+1} - (T_k A - H T_k) for each k; all zero for a solution.
    pub fn residual_ok(&self) -> bool {
        let h = h_matrix(self.order_q);
        (0..self.t.len() - 1).all(|k| {
            let rhs = qmat_sub(&qmat_mul(&self.t[k], &self.a), &qmat_mul(&h, &self.t[k]));
            let lhs: QMat = std::array::from_fn(|i| std::array::from_fn(|j| self.t[k + 1][i][j].qdq()));
            qmat_is_zero(&qmat_sub(&lhs, &rhs)) && self.t[k + 1].iter().all(|r| r.iter().all(|x| x.coeff(0).is_zero()))
        })
    }

    /// S(z) = eta^-1 S*(z)^T eta, coefficientwise.
    pub fn s_coeff(&self, k: usize) -> QMat {
        // eta is its own inverse up to 1/25, and conjugation permutes indices i -> 3 - i mod 5
        let p = |i: usize| (8 - i) % 5;
        std::array::from_fn(|i| std::array::from_fn(|j| self.t[k][p(j)][p(i)].clone()))
    }

    /// S(z) S*(-z) = Id through z^-K.
    pub fn symplectic_ok(&self) -> bool {
        let order = self.order_q;
        (0..self.t.len()).all(|k| {
            let mut acc = qmat_zero(order);
            for b in 0..=k {
                let term = qmat_mul(&self.s_coeff(k - b), &self.t[b]);
                let term = if b % 2 == 1 { qmat_sub(&qmat_zero(order), &term) } else { term };
                acc = std::array::from_fn(|i| std::array::from_fn(|j| acc[i][j].add_ref(&term[i][j])));
            }
            if k == 0 {
                acc == qmat_identity(order)
            } else {
                qmat_is_zero(&acc)
            }
        })
    }
}

/// Compare the restricted twisted I-function over z with I_0 (S*(z) 1)
/// restricted to the fixed point a, i.e. I_0 sum_j (S*)_{j0} zeta^{aj},
/// through q^dmax and w^kmax (w = 1/z). Returns mismatches.
pub fn itilde_cross_check(data: &IData, s: &SMatrix, dmax: usize, kmax: usize) -> Vec<(usize, usize, usize)> {
    let mut bad = Vec::new();
    for a in 0..5usize {
        let it = itilde(a, dmax, kmax);
        for k in 0..=kmax.min(s.t.len() - 1) {
            let col: Vec<QSeries> = (0..5).map(|j| data.i0.mul_ref(&s.t[k][j][0])).collect();
            for d in 0..=dmax {
                let lhs = it.coeffs[d].coeff(k).clone();
                let mut rhs = CycNum::zero();
                for (j, c) in col.iter().enumerate() {
                    rhs = rhs + CycNum::zeta_pow((a * j) as i64).scale(&c.coeff(d));
                }
                if lhs != rhs {
                    bad.push((a, d, k));
                }
            }
        }
    }
    bad
}

/// Scalings s_k with phi_k = s_k H^k, and phibar_k = (I_0/L) phi_k.
pub fn phi_scalings(data: &IData) -> [QSeries; 5] {
    let linv = data.lser.inv().expect("L(0) = 1");
    let diag = data.diagonal();
    let mut out: Vec<QSeries> = vec![QSeries::one(data.order)];
    for k in 1..5 {
        out.push(out[k - 1].mul_ref(&diag[k - 1]).mul_ref(&linv));
    }
    out.try_into().expect("five scalings")
}

pub fn phibar_scalings(data: &IData) -> [QSeries; 5] {
    let f = data.i0.div_ref(&data.lser).expect("unit");
    phi_scalings(data).map(|s| s.mul_ref(&f))
}

/// Pairing matrix of a diagonally rescaled basis s_i H^i at lambda = 1.
pub fn pairing_in(scal: &[QSeries; 5]) -> QMat {
    let e = eta();
    std::array::from_fn(|i| std::array::from_fn(|j| scal[i].mul_ref(&scal[j]).scale(&e[i][j])))
}

/// Value of omega_{g,n}(phi_{a_1}, ..., phi_{a_n}) = coeff * lambda^lambda_pow * (I_0/L)^i0_pow.
#[derive(Clone, Debug, PartialEq)]
pub struct TqftValue {
    pub coeff: Rat,
    pub lambda_pow: i64,
    pub i0_over_l_pow: i64,
}

pub fn tqft_omega(g: u32, insertions: &[i64]) -> Result<TqftValue, String> {
    let n = insertions.len() as i64;
    let g = g as i64;
    if 2 * g - 2 + n <= 0 {
        return Err(format!("unstable (g, n) = ({g}, {n})"));
    }
    let s: i64 = insertions.iter().sum();
    let mut trace = CycNum::zero();
    for a in 0..5 {
        trace = trace + CycNum::zeta_pow(a * s);
    }
    let coeff = trace.as_rat().expect("trace of a root-of-unity sum is rational");
    Ok(TqftValue { coeff, lambda_pow: 3 * g - 3 + s, i0_over_l_pow: 2 * g - 2 })
}

/// Which normalization of the canonical coordinate is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UConvention {
    /// u = zeta^a lambda * integral of (L - 1) dq/q; no log q term.
    Integral,
    /// Critical value with q d/dq u = zeta^a lambda L; adds zeta^a lambda log q.
    CriticalValue,
}

/// u_a / (zeta^a lambda): the power-series part and the coefficient of log q.
#[derive(Clone, Debug)]
pub struct CanonicalCoords {
    pub convention: UConvention,
    pub series: QSeries,
    pub log_q_coeff: Rat,
}

pub fn canonical_coords(data: &IData, convention: UConvention) -> CanonicalCoords {
    let lm1 = data.lser.sub_ref(&QSeries::one(data.order));
    let series = lm1.qdq_inv().expect("L - 1 vanishes at q = 0");
    let log_q_coeff = if convention == UConvention::CriticalValue { Rat::one() } else { Rat::zero() };
    CanonicalCoords { convention, series, log_q_coeff }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mirrordata::build_idata;

    #[test]
    fn a_matrix_basics() {
        let d = build_idata(6);
        let a = quantum_product(&d);
        // q = 0 limit is multiplication by H
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(a.m[i][j].coeff(0), h_matrix(6)[i][j].coeff(0));
            }
        }
        let cp = a.char_poly();
        assert_eq!(cp[5], QSeries::one(6));
        assert_eq!(cp[0], d.lser.pow_u(5).scale(&int(-1)));
        assert!(cp[1..5].iter().all(QSeries::is_zero));
        assert!(a.is_self_adjoint());
    }

    #[test]
    fn s_matrix_first_step() {
        let d = build_idata(5);
        let s = s_matrix(&d, 3);
        assert!(s.residual_ok());
        // T_1 = D^-1 (A - H)
        let i11 = &d.diagonal()[0];
        let want = i11.sub_ref(&QSeries::one(5)).qdq_inv().unwrap();
        assert_eq!(s.t[1][1][0], want);
        assert!(s.symplectic_ok());
    }

    #[test]
    fn itilde_relation() {
        let d = build_idata(4);
        let s = s_matrix(&d, 4);
        assert!(itilde_cross_check(&d, &s, 4, 4).is_empty());
    }

    #[test]
    fn pairings() {
        let d = build_idata(6);
        let p = pairing_in(&phibar_scalings(&d));
        for i in 0..5 {
            for j in 0..5 {
                let want = if (i + j) % 5 == 3 { int(5) } else { Rat::zero() };
                assert_eq!(p[i][j], QSeries::constant(want, 6), "({i},{j})");
            }
        }
        let q = pairing_in(&phi_scalings(&d));
        let f = d.lser.pow_u(2).div_ref(&d.i0.pow_u(2)).unwrap().scale(&int(5));
        assert_eq!(q[0][3], f);
        assert_eq!(q[4][4], f);
    }

    #[test]
    fn tqft_examples() {
        assert_eq!(tqft_omega(0, &[0, 0, 0]).unwrap(), TqftValue { coeff: int(5), lambda_pow: -3, i0_over_l_pow: -2 });
        assert_eq!(tqft_omega(0, &[1, 1, 0]).unwrap().coeff, Rat::zero());
        assert_eq!(tqft_omega(1, &[0]).unwrap(), TqftValue { coeff: int(5), lambda_pow: 0, i0_over_l_pow: 0 });
        assert!(tqft_omega(0, &[0, 0]).is_err());
    }

    #[test]
    fn canonical_coordinate() {
        let d = build_idata(4);
        let u = canonical_coords(&d, UConvention::Integral);
        assert!(u.series.qdq().coeff(0).is_zero());
        assert_eq!(u.series.coeff(1), int(625));
        assert_eq!(canonical_coords(&d, UConvention::CriticalValue).log_q_coeff, int(1));
    }
}
