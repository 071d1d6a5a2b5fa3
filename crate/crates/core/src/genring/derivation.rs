use super::{zcal, GenPoly, Var};
use crate::exactcore::{int, rat};
use std::fmt;

/// Derivation g0*d0 + g1*d1 + g2*d2 + g3*d3 in the basis
///   d0 = d/dY,
///   d1 = d/dX - d/dY - (X - Y) d/dX2 - (2XY + 4X2 + 15/4 Z_2) d/dX3,
///   d2 = d/dX2 - 2X d/dX3,
///   d3 = d/dX3.
/// The derivations act only on X1, X2, X3, Y; Linv and Z are constants for them.
#[derive(Clone, PartialEq)]
pub struct Derivation {
    pub g: [GenPoly; 4],
}

/// 2X^2 + 4X2 + 15/4 Z_2
fn c_term() -> GenPoly {
    GenPoly::x1().pow(2).scale(&int(2)) + GenPoly::x2().scale(&int(4)) + zcal(2).scale(&rat(15, 4))
}

impl Derivation {
    pub fn new(g0: GenPoly, g1: GenPoly, g2: GenPoly, g3: GenPoly) -> Self {
        Derivation { g: [g0, g1, g2, g3] }
    }

    /// The basis derivation d_i.
    pub fn basis(i: usize) -> Self {
        let mut g: [GenPoly; 4] = Default::default();
        g[i] = GenPoly::one();
        Derivation { g }
    }

    /// Coordinate coefficients (a_X, a_Y, a_X2, a_X3) of d/dX, d/dY, d/dX2, d/dX3.
    pub fn coords(&self) -> [GenPoly; 4] {
        let [g0, g1, g2, g3] = &self.g;
        let x = GenPoly::x1();
        let xmy = &x - &GenPoly::y();
        let ax = g1.clone();
        let ay = g0 - g1;
        let a2 = g2 - &(g1 * &xmy);
        let k = (&x * &xmy).scale(&int(2)) - c_term();
        let a3 = g3 - &(&x * g2).scale(&int(2)) + g1 * &k;
        [ax, ay, a2, a3]
    }

    /// Inverse of `coords`.
    pub fn from_coords(ax: GenPoly, ay: GenPoly, a2: GenPoly, a3: GenPoly) -> Self {
        let x = GenPoly::x1();
        let xmy = &x - &GenPoly::y();
        let g1 = ax;
        let g0 = &ay + &g1;
        let g2 = &a2 + &(&g1 * &xmy);
        let k = (&x * &xmy).scale(&int(2)) - c_term();
        let g3 = &a3 + &(&x * &g2).scale(&int(2)) - &g1 * &k;
        Derivation { g: [g0, g1, g2, g3] }
    }

    /// Coordinate vector fields d/dX, d/dY, d/dX2, d/dX3.
    pub fn coordinate(v: Var) -> Self {
        let (o, z) = (GenPoly::one(), GenPoly::zero);
        match v {
            Var::X1 => Self::from_coords(o, z(), z(), z()),
            Var::Y => Self::from_coords(z(), o, z(), z()),
            Var::X2 => Self::from_coords(z(), z(), o, z()),
            Var::X3 => Self::from_coords(z(), z(), z(), o),
            _ => panic!("derivations act on X1, X2, X3, Y only"),
        }
    }

    pub fn apply(&self, f: &GenPoly) -> GenPoly {
        let [ax, ay, a2, a3] = self.coords();
        let mut out = GenPoly::zero();
        for (a, v) in [(ax, Var::X1), (ay, Var::Y), (a2, Var::X2), (a3, Var::X3)] {
            if !a.is_zero() {
                let p = f.partial(v);
                if !p.is_zero() {
                    out = out + a * p;
                }
            }
        }
        out
    }

    /// [self, o] as a vector field.
    pub fn bracket(&self, o: &Derivation) -> Derivation {
        let a = self.coords();
        let b = o.coords();
        let c: Vec<GenPoly> = (0..4).map(|i| self.apply(&b[i]) - o.apply(&a[i])).collect();
        Self::from_coords(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone())
    }

    /// Whether all four coefficients lie in Q[X1, X2, X3, Y].
    pub fn over_prime_ring(&self) -> bool {
        self.g.iter().all(GenPoly::in_prime_ring)
    }

    pub fn is_zero(&self) -> bool {
        self.g.iter().all(GenPoly::is_zero)
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})d0 + ({})d1 + ({})d2 + ({})d3", self.g[0], self.g[1], self.g[2], self.g[3])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_actions() {
        let d3 = Derivation::basis(3);
        assert_eq!(d3.apply(&GenPoly::x3()), GenPoly::one());
        let d1 = Derivation::basis(1);
        assert_eq!(d1.apply(&GenPoly::x2()), GenPoly::y() - GenPoly::x1());
        let d0 = Derivation::basis(0);
        assert!(d0.apply(&GenPoly::x1()).is_zero());
        assert_eq!(d0.apply(&GenPoly::y()), GenPoly::one());
        let d2 = Derivation::basis(2);
        assert_eq!(d2.apply(&GenPoly::x3()), GenPoly::x1().scale(&int(-2)));
        assert_eq!(d2.apply(&(GenPoly::x2() * GenPoly::x3())), GenPoly::x3() - (GenPoly::x1() * GenPoly::x2()).scale(&int(2)));
    }

    #[test]
    fn printed_d1_coefficient_of_x3() {
        let [ax, ay, a2, a3] = Derivation::basis(1).coords();
        assert_eq!(ax, GenPoly::one());
        assert_eq!(ay, -GenPoly::one());
        assert_eq!(a2, GenPoly::y() - GenPoly::x1());
        let expect = -((GenPoly::x1() * GenPoly::y()).scale(&int(2)) + GenPoly::x2().scale(&int(4)) + zcal(2).scale(&rat(15, 4)));
        assert_eq!(a3, expect);
    }

    #[test]
    fn coords_round_trip() {
        for i in 0..4 {
            let d = Derivation::basis(i);
            let [a, b, c, e] = d.coords();
            assert_eq!(Derivation::from_coords(a, b, c, e), d);
        }
    }

    #[test]
    fn leibniz() {
        let d = Derivation::new(GenPoly::x1(), GenPoly::y(), GenPoly::one(), GenPoly::x2());
        let f = GenPoly::x1().pow(2) * GenPoly::x3() + GenPoly::y();
        let g = GenPoly::x2() * GenPoly::y() - GenPoly::x1();
        assert_eq!(d.apply(&(&f * &g)), d.apply(&f) * &g + &f * d.apply(&g));
    }

    #[test]
    fn bracket_is_antisymmetric() {
        for i in 0..4 {
            for j in 0..4 {
                let a = Derivation::basis(i).bracket(&Derivation::basis(j));
                let b = Derivation::basis(j).bracket(&Derivation::basis(i));
                let s: Vec<GenPoly> = (0..4).map(|k| &a.g[k] + &b.g[k]).collect();
                assert!(s.iter().all(GenPoly::is_zero));
            }
        }
    }
}
