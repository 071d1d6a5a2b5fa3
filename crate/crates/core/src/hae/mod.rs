//! Derivations acting on the R-matrix: the Lambda and Delta maps, the
//! explicit R-, V- and S-PDEs, the divisor equation, holomorphic anomaly
//! equations on low-genus potentials and orbifold regularity.

mod lambda;
mod pde;
mod potential;

pub use lambda::{
    cocycle_defect, delta0, delta1, delta2, delta_closed_form, delta_from_lambda, delta_of, divide_by_sum, lambda_of, partner,
    DeltaMap, LambdaMap, PsiPoly,
};
pub use pde::{
    coordinate_derivations, printed_v_deltas, r_pde_violations, s_pde_violations, v_pde_violations, v_tensor, RInverse, VTensor,
};
pub use potential::{
    divisor_shift, errata, f03, f04_printed, f11, f12_printed, f12_recomputed, f20, f20_y_derivative_printed, fixture_report,
    fixtures, hae_check, orbifold_regularity, orbifold_report, term_diff, yy_reduced_hae, Erratum, OrbifoldResult,
    PotentialFixture, Y_MINUS_X_Z_COMPUTED, Y_MINUS_X_Z_PRINTED,
};

use crate::genring::Derivation;
use crate::qde::{s_delta, RMatrix};
use crate::report::{Check, Report};

fn list<T: std::fmt::Debug>(r: &Result<Vec<T>, String>) -> String {
    match r {
        Ok(v) => format!("{v:?}"),
        Err(e) => e.clone(),
    }
}

/// Structural properties of Lambda and Delta on the basis derivations.
pub fn lambda_report() -> Report {
    let mut rep = Report::new("lambda");
    let basis: Vec<Derivation> = (0..4).map(Derivation::basis).collect();
    let mut tri = true;
    let mut skew = true;
    for d in &basis {
        match lambda_of(d) {
            Ok(l) => {
                tri &= l.is_strictly_lower();
                skew &= l.is_skew();
            }
            Err(_) => {
                tri = false;
                skew = false;
            }
        }
    }
    rep.push(Check::from_bool("Lambda strictly lower triangular", tri, "basis derivations d0..d3"));
    rep.push(Check::from_bool("Lambda skew-adjoint", skew, "Lambda + Lambda*(-psi) = 0"));
    let mut bad = Vec::new();
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            if !cocycle_defect(a, b).is_ok_and(|l| l.is_zero()) {
                bad.push((i, j));
            }
        }
    }
    rep.push(Check::from_bool("Lambda cocycle", bad.is_empty(), format!("failing pairs {bad:?}")));
    let mut dbad = Vec::new();
    for (name, d) in coordinate_derivations() {
        match delta_of(&d) {
            Ok(x) if x == delta_closed_form(&d) => {}
            _ => dbad.push(name),
        }
    }
    rep.push(Check::from_bool("Delta by exact division matches the closed form", dbad.is_empty(), format!("failing {dbad:?}")));
    let d0 = delta_of(&basis[0]).ok();
    let d1 = delta_of(&basis[1]).ok();
    let ok = d0.as_ref().is_some_and(|d| d.is_z_independent() && d.terms.len() == 1)
        && d1.as_ref().is_some_and(|d| d.is_z_independent() && d.terms.len() == 2);
    rep.push(Check::from_bool("Delta for d0 and d1 is z-independent", ok, "phibar_1 (x) phibar_1 / 5 and (phibar_0 (x) phibar_2 + phibar_2 (x) phibar_0) / 5"));
    rep
}

/// R-, V- and S-PDEs for the four coordinate derivations.
pub fn pde_report(rm: &RMatrix, kcheck: usize, dmax: u32) -> Report {
    let mut rep = Report::new("pde");
    let ri = RInverse::new(rm);
    for (name, d) in coordinate_derivations() {
        let bad = lambda_of(&d).map(|l| r_pde_violations(&ri, &d, &l, kcheck));
        rep.push(Check::from_bool(
            format!("R-PDE {name}"),
            bad.as_ref().is_ok_and(Vec::is_empty),
            format!("z-order <= {kcheck}; failing (k, j) {}", list(&bad)),
        ));
    }
    match v_tensor(&ri) {
        Err(e) => rep.push(Check::fail("V divisible by z1 + z2", e)),
        Ok(vt) => {
            rep.push(Check::pass("V divisible by z1 + z2", format!("exact through total z-degree {}", vt.total)));
            let dcheck = kcheck as u32;
            for (name, d) in coordinate_derivations() {
                let bad = delta_of(&d).map(|delta| v_pde_violations(&ri, &vt, &d, &delta, dcheck));
                rep.push(Check::from_bool(
                    format!("V-PDE {name}"),
                    bad.as_ref().is_ok_and(Vec::is_empty),
                    format!("total z-degree <= {}; failing degrees {}", dcheck.min(vt.total), list(&bad)),
                ));
            }
            let printed = printed_v_deltas();
            let (_, dx) = &printed[1];
            let x = coordinate_derivations()[1].1.clone();
            let bad = v_pde_violations(&ri, &vt, &x, dx, dcheck.min(3));
            rep.push(Check::diag(
                "printed V-PDE for d/dX",
                format!("with (Y - X) Delta_1 the identity fails at total degrees {bad:?}; the derived Delta carries (X - Y) Delta_1"),
            ));
        }
    }
    let mut sbad = Vec::new();
    for delta in 1..=dmax {
        match s_delta(delta) {
            Err(_) => sbad.push((delta, "seed")),
            Ok(sd) => {
                for (name, d) in coordinate_derivations() {
                    if !s_pde_violations(&sd, &d).is_ok_and(|v| v.is_empty()) {
                        sbad.push((delta, name));
                    }
                }
            }
        }
    }
    rep.push(Check::from_bool("S_delta PDEs at psi = 5/delta", sbad.is_empty(), format!("delta <= {dmax}; failing {sbad:?}")));
    rep
}

/// Everything in this module for genus 2.
pub fn hae_report(rm: &RMatrix, kcheck: usize, dmax: u32) -> Report {
    let mut rep = Report::new("hae");
    rep.extend(lambda_report());
    rep.extend(pde_report(rm, kcheck, dmax));
    rep.extend(fixture_report());
    match hae_check(2) {
        Ok(r) => rep.extend(r),
        Err(e) => rep.push(Check::fail("genus-two HAE", e)),
    }
    match yy_reduced_hae(2) {
        Ok(r) => rep.extend(r),
        Err(e) => rep.push(Check::fail("reduced HAE", e)),
    }
    rep.extend(orbifold_report());
    rep
}
