//! The graded generator ring Q[L^-1, X1, X2, X3, Y, Z], its subring R,
//! the derivation d/du, alternative generators, and realization as q-series.

mod derivation;
mod poly;
mod realize;
mod yy;

pub use derivation::Derivation;
pub use poly::{GenPoly, Mono, Var, XY_NAMES};
pub use realize::{monomials_up_to, realization_report, Realizer};
pub use yy::{from_yy, to_yy, yy_du, YyPoly, YY_NAMES};

use crate::exactcore::{int, rat, Rat};
use std::sync::OnceLock;

/// A polynomial assembled from (coefficient, monomial) pairs.
pub fn poly(terms: &[(Rat, Mono)]) -> GenPoly {
    let mut p = GenPoly::zero();
    for (c, m) in terms {
        p.add_term(*m, c.clone());
    }
    p
}

fn m(linv: i32, z: i32, x1: i32, x2: i32, x3: i32, y: i32) -> Mono {
    Mono::new(linv, z, x1, x2, x3, y)
}

/// d/du of each generator, indexed by `Var as usize`.
fn generator_derivatives() -> &'static [GenPoly; 6] {
    static T: OnceLock<[GenPoly; 6]> = OnceLock::new();
    T.get_or_init(|| {
        // c = L^-2 Z (Z - 1)
        let c = poly(&[(int(1), m(2, 2, 0, 0, 0, 0)), (int(-1), m(2, 1, 0, 0, 0, 0))]);
        let x1 = GenPoly::x1();
        let x2 = GenPoly::x2();
        let x3 = GenPoly::x3();
        let y = GenPoly::y();
        let du_linv = poly(&[(rat(-1, 5), m(2, 1, 0, 0, 0, 0)), (rat(1, 5), m(2, 0, 0, 0, 0, 0))]);
        let du_z = poly(&[(int(1), m(1, 2, 0, 0, 0, 0)), (int(-1), m(1, 1, 0, 0, 0, 0))]);
        let du_y = x2.scale(&int(-3)) - y.pow(2) - x1.pow(2) - c.scale(&rat(3, 5));
        // L^-3 Z (Z-1)(8Z-3) = L^-3 (8Z^3 - 11Z^2 + 3Z)
        let c3 = poly(&[
            (int(8), m(3, 3, 0, 0, 0, 0)),
            (int(-11), m(3, 2, 0, 0, 0, 0)),
            (int(3), m(3, 1, 0, 0, 0, 0)),
        ]);
        let c4 = poly(&[
            (int(-396), m(4, 4, 0, 0, 0, 0)),
            (int(714), m(4, 3, 0, 0, 0, 0)),
            (int(-341), m(4, 2, 0, 0, 0, 0)),
            (int(23), m(4, 1, 0, 0, 0, 0)),
        ]);
        let du_x3 = (&x1 * &x3).scale(&int(-4))
            - x2.pow(2).scale(&int(3))
            - (x1.pow(2) * &x2).scale(&int(6))
            - x1.pow(4)
            - (&c * &(x1.pow(2) + &x2)).scale(&rat(3, 5))
            - (&c3 * &x1).scale(&rat(3, 25))
            + c4.scale(&rat(1, 625));
        [du_linv, du_z, x2, x3, du_x3, du_y]
    })
}

/// The derivation d/du = (1/L) q d/dq, extended by the Leibniz rule.
pub fn du(f: &GenPoly) -> GenPoly {
    let gd = generator_derivatives();
    let mut out = GenPoly::zero();
    for (mono, c) in f.terms() {
        for v in Var::ALL {
            let k = mono.exp(v);
            if k != 0 {
                let rest = mono.with(v, k - 1);
                out = out.add_ref(&gd[v as usize].mul_term(&rest, &(c * int(k as i64))));
            }
        }
    }
    out
}

/// Z_k = (d/du)^k log(q^{1/5} L), written in Linv and Z.
pub fn zcal(k: u32) -> GenPoly {
    assert!(k >= 1, "zcal index starts at 1");
    let mut p = GenPoly::term(m(1, 1, 0, 0, 0, 0), rat(1, 5));
    for _ in 1..k {
        p = du(&p);
    }
    p
}

/// Membership in R: every monomial satisfies b <= a <= 5b on its (Linv, Z)
/// exponents. Returns the violating monomials.
pub fn in_r(f: &GenPoly) -> (bool, Vec<Mono>) {
    let bad: Vec<Mono> = f.terms().map(|(m, _)| *m).filter(|m| !m.lz_admissible()).collect();
    (bad.is_empty(), bad)
}

/// Terms with a negative power of L once Z is read as L^5: the collapsed
/// L-exponent is 5 e_Z - e_Linv, and terms with equal collapsed exponent and
/// equal X/Y exponents are combined before testing.
pub fn negative_l_terms(f: &GenPoly) -> Vec<(i32, [i32; 4], Rat)> {
    let mut acc: std::collections::BTreeMap<(i32, [i32; 4]), Rat> = std::collections::BTreeMap::new();
    for (m, c) in f.terms() {
        let lexp = 5 * m.exp(Var::Z) - m.exp(Var::Linv);
        let rest = [m.exp(Var::X1), m.exp(Var::X2), m.exp(Var::X3), m.exp(Var::Y)];
        *acc.entry((lexp, rest)).or_insert_with(|| int(0)) += c;
    }
    acc.into_iter().filter(|((l, _), c)| *l < 0 && *c != int(0)).map(|((l, r), c)| (l, r, c)).collect()
}
