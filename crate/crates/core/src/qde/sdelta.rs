use super::rmatrix::c_diag;
use crate::exactcore::{int, rat, Rat};
use crate::genring::{du, negative_l_terms, zcal, GenPoly, Mono, Var};
use crate::mirrordata::j_at_hdelta;
use crate::report::{Check, Report};

/// Diagonal entries S_{delta;0..4} of the specialized S-matrix, plus the
/// fifth recursion step used for the wrap-around check.
#[derive(Clone, Debug)]
pub struct SDelta {
    pub delta: u32,
    pub entries: [GenPoly; 5],
    pub fifth: GenPoly,
}

impl SDelta {
    /// (delta - 1) mod 5, the power of L in front.
    pub fn l_shift(&self) -> i32 {
        ((self.delta - 1) % 5) as i32
    }

    /// floor((delta - 1)/5), the bound on the Z-degree of the seed.
    pub fn z_bound(&self) -> i32 {
        ((self.delta - 1) / 5) as i32
    }
}

/// Seed L^r sum_b c_b (Z-1)^b Z^{B-b} / 3125^b from the J-function at H_delta,
/// then S_{i+1} = 5 Z_1 S_i - (5/delta)(du - C_i) S_i.
pub fn s_delta(delta: u32) -> Result<SDelta, String> {
    if delta == 0 {
        return Err("delta must be positive".into());
    }
    let r = ((delta - 1) % 5) as i32;
    let bmax = ((delta - 1) / 5) as i32;
    let c = j_at_hdelta(delta);
    let zm1 = GenPoly::z() - GenPoly::one();
    let mut s0 = GenPoly::zero();
    for (b, cb) in c.iter().enumerate() {
        let b = b as i32;
        let scale = cb / Rat::from_integer(num_bigint::BigInt::from(3125).pow(b as u32));
        let term = zm1.pow(b as u32) * GenPoly::term(Mono::new(-r, bmax - b, 0, 0, 0, 0), scale);
        s0 = s0 + term;
    }
    let z1 = zcal(1).scale(&int(5));
    let f = rat(5, delta as i64);
    let cd = c_diag();
    let mut s = vec![s0];
    for i in 0..5 {
        let cur = &s[i];
        let next = &z1 * cur - (du(cur) - &cd[i] * cur).scale(&f);
        s.push(next);
    }
    let fifth = s.pop().expect("six entries");
    Ok(SDelta { delta, entries: s.try_into().expect("five entries"), fifth })
}

/// Diagonality (wrap-around), homogeneity, regularity and the variable
/// restrictions on each entry.
pub fn s_delta_report(dmax: u32) -> Report {
    let mut rep = Report::new("sdelta");
    let mut wrap_bad = Vec::new();
    let mut grade_bad = Vec::new();
    let mut reg_bad = Vec::new();
    let mut vars_bad = Vec::new();
    for delta in 1..=dmax {
        let sd = match s_delta(delta) {
            Ok(s) => s,
            Err(e) => {
                rep.push(Check::fail(&format!("S_delta {delta}"), e));
                continue;
            }
        };
        let lz5 = GenPoly::term(Mono::new(5, 1, 0, 0, 0, 0), int(1));
        if sd.fifth != &lz5 * &sd.entries[0] {
            wrap_bad.push(delta);
        }
        let r = sd.l_shift();
        for (i, e) in sd.entries.iter().enumerate() {
            if !e.is_zero() && !e.is_homogeneous_of(i as i32 - r) {
                grade_bad.push((delta, i));
            }
            if !negative_l_terms(e).is_empty() {
                reg_bad.push((delta, i));
            }
        }
        // S_1 free of Y, X2, X3; S_2 free of X3; S_3 free of Y; S_0, S_4 only L and Z
        let uses = |p: &GenPoly, v: Var| p.max_exp(v) > 0;
        let e = &sd.entries;
        let lz_only = |p: &GenPoly| [Var::X1, Var::X2, Var::X3, Var::Y].iter().all(|&v| !uses(p, v));
        let ok = lz_only(&e[0])
            && lz_only(&e[4])
            && !uses(&e[1], Var::Y)
            && !uses(&e[1], Var::X2)
            && !uses(&e[1], Var::X3)
            && !uses(&e[2], Var::X3)
            && !uses(&e[3], Var::Y);
        if !ok {
            vars_bad.push(delta);
        }
        let zdeg0 = e[0].max_exp(Var::Z) - e[0].min_exp(Var::Z);
        if zdeg0 > sd.z_bound() {
            vars_bad.push(delta);
        }
    }
    rep.push(Check::from_bool("S_delta diagonality (wrap)", wrap_bad.is_empty(), format!("delta <= {dmax}; failing {wrap_bad:?}")));
    rep.push(Check::from_bool("S_delta grading", grade_bad.is_empty(), format!("failing {grade_bad:?}")));
    rep.push(Check::from_bool("S_delta regularity", reg_bad.is_empty(), format!("negative L-powers at {reg_bad:?}")));
    rep.push(Check::from_bool("S_delta variable content", vars_bad.is_empty(), format!("failing {vars_bad:?}")));
    rep
}
