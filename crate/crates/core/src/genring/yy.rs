//! Alternative generators U = X, V = X + Y, V2 = du(U) + U^2 - U V,
//! V3 = (du + V) V2. A `YyPoly` reuses the `GenPoly` storage with the slot
//! mapping X1 -> U, Y -> V, X2 -> V2, X3 -> V3.

use super::{du, GenPoly, Var};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct YyPoly(pub GenPoly);

pub const YY_NAMES: [&str; 4] = ["𝒰", "𝒱", "𝒱₂", "𝒱₃"];

impl std::fmt::Display for YyPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0.render(YY_NAMES))
    }
}

/// V2 = X2 - X Y, in the original generators.
fn v2_xy() -> GenPoly {
    GenPoly::x2() - GenPoly::x1() * GenPoly::y()
}

fn v3_xy() -> GenPoly {
    let v2 = v2_xy();
    du(&v2) + (GenPoly::x1() + GenPoly::y()) * v2
}

pub fn from_yy(f: &YyPoly) -> GenPoly {
    let (v2, v3) = (v2_xy(), v3_xy());
    f.0.subst(|v| match v {
        Var::X1 => Some(GenPoly::x1()),
        Var::Y => Some(GenPoly::x1() + GenPoly::y()),
        Var::X2 => Some(v2.clone()),
        Var::X3 => Some(v3.clone()),
        _ => None,
    })
}

pub fn to_yy(f: &GenPoly) -> YyPoly {
    // In YY slots: X = U, Y = V - U, X2 = V2 + U(V - U).
    let u = GenPoly::x1();
    let vmu = GenPoly::y() - GenPoly::x1();
    let x2_img = GenPoly::x2() + &u * &vmu;
    let lower = |p: &GenPoly| {
        p.subst(|v| match v {
            Var::X1 => Some(u.clone()),
            Var::Y => Some(vmu.clone()),
            Var::X2 => Some(x2_img.clone()),
            _ => None,
        })
    };
    // V3 = X3 + rest(X, X2, Y), so X3 = V3 - rest.
    let rest = v3_xy() - GenPoly::x3();
    debug_assert_eq!(rest.max_exp(Var::X3), 0);
    let x3_img = GenPoly::x3() - lower(&rest);
    YyPoly(f.subst(|v| match v {
        Var::X1 => Some(u.clone()),
        Var::Y => Some(vmu.clone()),
        Var::X2 => Some(x2_img.clone()),
        Var::X3 => Some(x3_img.clone()),
        _ => None,
    }))
}

/// d/du transported to the alternative generators.
pub fn yy_du(f: &YyPoly) -> YyPoly {
    to_yy(&du(&from_yy(f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::{int, rat};
    use crate::genring::zcal;

    fn yv(v: Var) -> YyPoly {
        YyPoly(GenPoly::var(v))
    }

    #[test]
    fn printed_examples() {
        assert_eq!(to_yy(&GenPoly::x1()), yv(Var::X1));
        assert_eq!(to_yy(&(GenPoly::x1() + GenPoly::y())), yv(Var::Y));
        assert_eq!(from_yy(&yv(Var::X2)), GenPoly::x2() - GenPoly::x1() * GenPoly::y());
    }

    #[test]
    fn round_trips() {
        let f = GenPoly::x3() * GenPoly::y() + GenPoly::x2().pow(2) - GenPoly::x1().pow(3) * GenPoly::z();
        assert_eq!(from_yy(&to_yy(&f)), f);
        for v in [Var::X1, Var::X2, Var::X3, Var::Y] {
            assert_eq!(to_yy(&from_yy(&yv(v))), yv(v));
        }
    }

    #[test]
    fn differential_relations() {
        let (u, v, v2, v3) = (yv(Var::X1).0, yv(Var::Y).0, yv(Var::X2).0, yv(Var::X3).0);
        let z = |k| to_yy(&zcal(k)).0;
        // du V = -2V2 - V^2 - 15/4 Z2
        let e1 = v2.scale(&int(-2)) - v.pow(2) - z(2).scale(&rat(15, 4));
        assert_eq!(yy_du(&yv(Var::Y)).0, e1);
        // du V2 = V3 - V V2
        assert_eq!(yy_du(&yv(Var::X2)).0, &v3 - &(&v * &v2));
        // du V3 = V2^2 - 23/24 Z4 + 29/9 Z1^2 Z2 - 65/72 Z1 Z3 - 3/4 Z2^2
        let e3 = v2.pow(2) - z(4).scale(&rat(23, 24)) + (z(1).pow(2) * z(2)).scale(&rat(29, 9))
            - (z(1) * z(3)).scale(&rat(65, 72))
            - z(2).pow(2).scale(&rat(3, 4));
        assert_eq!(yy_du(&yv(Var::X3)).0, e3);
        // du U = V2 - U^2 + U V
        assert_eq!(yy_du(&yv(Var::X1)).0, &v2 - &u.pow(2) + &u * &v);
    }
}
