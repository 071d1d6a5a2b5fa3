use crate::genring::{du, in_r, GenPoly};
use crate::oscpf::{row0_entries, row4_prediction};
use crate::report::{Check, Report};
use rayon::prelude::*;
use serde::Serialize;

/// Diagonal of C in the recursion, indexed by row.
pub fn c_diag() -> [GenPoly; 5] {
    [GenPoly::x1(), GenPoly::y(), -GenPoly::y(), -GenPoly::x1(), GenPoly::zero()]
}

/// Coefficients Rbar_k, k = 0..=kmax, in the basis phibar at lambda = 1;
/// entry (i, j) of Rbar_k carries the implicit power lambda^{i-j-k}.
#[derive(Clone, Debug)]
pub struct RMatrix {
    pub kmax: usize,
    pub r: Vec<[[GenPoly; 5]; 5]>,
}

/// Build Rbar from its row-0 data via
/// Rbar_{k+1}[i+1][j] = (du - C_i) Rbar_k[i][j] + Rbar_{k+1}[i][j-1].
pub fn r_matrix_from_row0(row0: &[(usize, GenPoly)]) -> RMatrix {
    let kmax = row0.len() - 1;
    let c = c_diag();
    let mut r: Vec<[[GenPoly; 5]; 5]> = vec![std::array::from_fn(|_| std::array::from_fn(|_| GenPoly::zero())); kmax + 1];
    for (k, (col, v)) in row0.iter().enumerate() {
        r[k][0][*col] = v.clone();
    }
    for i in 0..4 {
        for j in 0..5 {
            r[0][i + 1][j] = r[0][i][(j + 4) % 5].clone();
        }
    }
    for k in 0..kmax {
        for i in 0..4 {
            let prev = &r[k][i];
            let cur = &r[k + 1][i];
            let row: Vec<GenPoly> = (0..5)
                .into_par_iter()
                .map(|j| du(&prev[j]) - &c[i] * &prev[j] + cur[(j + 4) % 5].clone())
                .collect();
            for (j, v) in row.into_iter().enumerate() {
                r[k + 1][i + 1][j] = v;
            }
        }
    }
    RMatrix { kmax, r }
}

pub fn r_matrix(kmax: usize) -> Result<RMatrix, String> {
    Ok(r_matrix_from_row0(&row0_entries(kmax)?))
}

#[derive(Serialize)]
struct EntryJson<'a> {
    k: usize,
    i: usize,
    j: usize,
    lambda_power: i64,
    poly: &'a GenPoly,
}

impl RMatrix {
    pub fn entry(&self, k: usize, i: usize, j: usize) -> &GenPoly {
        &self.r[k][i][j]
    }

    /// Nonzero entries of Rbar_1..Rbar_kmax as monomial lists.
    pub fn to_json(&self) -> serde_json::Value {
        let mut out = Vec::new();
        for k in 1..=self.kmax {
            for i in 0..5 {
                for j in 0..5 {
                    let p = &self.r[k][i][j];
                    if !p.is_zero() {
                        out.push(EntryJson { k, i, j, lambda_power: i as i64 - j as i64 - k as i64, poly: p });
                    }
                }
            }
        }
        serde_json::json!({ "kmax": self.kmax, "entries": out })
    }

    /// Entries violating k - i + j = 0 mod 5 vanishing.
    pub fn mod5_violations(&self) -> Vec<(usize, usize, usize)> {
        let mut bad = Vec::new();
        for k in 0..=self.kmax {
            for i in 0..5 {
                for j in 0..5 {
                    if (k + j + 5 - i) % 5 != 0 && !self.r[k][i][j].is_zero() {
                        bad.push((k, i, j));
                    }
                }
            }
        }
        bad
    }

    /// Entries that are not homogeneous of degree k or not in R.
    pub fn grading_violations(&self) -> Vec<(usize, usize, usize)> {
        let mut bad = Vec::new();
        for k in 1..=self.kmax {
            for i in 0..5 {
                for j in 0..5 {
                    let p = &self.r[k][i][j];
                    if !p.is_zero() && (!p.is_homogeneous_of(k as i32) || !in_r(p).0) {
                        bad.push((k, i, j));
                    }
                }
            }
        }
        bad
    }

    /// Orders k >= 1 where sum_{a+b=k} (-1)^b Rbar_a(z) eta Rbar_b^T fails to vanish,
    /// i.e. R(z) R*(-z) = Id in the phibar basis (pairing 5 on i + j = 3 mod 5).
    pub fn symplectic_violations(&self) -> Vec<usize> {
        let mut bad = Vec::new();
        for k in 1..=self.kmax {
            let mut ok = true;
            'outer: for i in 0..5 {
                for ip in 0..5 {
                    let mut s = GenPoly::zero();
                    for a in 0..=k {
                        let b = k - a;
                        for j in 0..5 {
                            let jp = (8 - j) % 5;
                            let t = &self.r[a][i][j] * &self.r[b][ip][jp];
                            s = if b % 2 == 0 { s + t } else { s - t };
                        }
                    }
                    if !s.is_zero() {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            if !ok {
                bad.push(k);
            }
        }
        bad
    }

    /// Row 5 of the recursion must reproduce row 0 (lambda = 1).
    pub fn wrap_violations(&self) -> Vec<usize> {
        let c4 = &c_diag()[4];
        (0..self.kmax)
            .filter(|&k| {
                (0..5).any(|j| {
                    let v = du(&self.r[k][4][j]) - c4 * &self.r[k][4][j] + self.r[k + 1][4][(j + 4) % 5].clone();
                    v != self.r[k + 1][0][j]
                })
            })
            .collect()
    }

    /// Orders where row 4 differs from the independent prediction.
    pub fn row4_mismatches(&self, prediction: &[GenPoly]) -> Vec<usize> {
        (0..=self.kmax.min(prediction.len() - 1))
            .filter(|&k| self.r[k][4][column_of(k, 4)] != prediction[k] || !self.row4_unique(k))
            .collect()
    }

    fn row4_unique(&self, k: usize) -> bool {
        (0..5).filter(|&j| !self.r[k][4][j].is_zero()).count() <= 1
    }
}

/// Column of the single nonzero entry of row i at order k.
pub fn column_of(k: usize, i: usize) -> usize {
    (i + 5 * (k / 5 + 1) - k) % 5
}

/// Structure report for Rbar through kmax.
pub fn r_matrix_report(rm: &RMatrix) -> Report {
    let mut rep = Report::new("rmatrix");
    let id_ok = (0..5).all(|i| (0..5).all(|j| rm.r[0][i][j] == if i == j { GenPoly::one() } else { GenPoly::zero() }));
    rep.push(Check::from_bool("R0 = Id", id_ok, String::new()));
    let m5 = rm.mod5_violations();
    rep.push(Check::from_bool("mod-5 vanishing", m5.is_empty(), format!("k <= {}; violations {m5:?}", rm.kmax)));
    let gr = rm.grading_violations();
    rep.push(Check::from_bool("grading and R-membership", gr.is_empty(), format!("k <= {}; violations {gr:?}", rm.kmax)));
    let sy = rm.symplectic_violations();
    rep.push(Check::from_bool("symplectic R(z)R*(-z) = Id", sy.is_empty(), format!("z-order {}; failing orders {sy:?}", rm.kmax)));
    let wr = rm.wrap_violations();
    rep.push(Check::from_bool("row 5 wraps to row 0", wr.is_empty(), format!("failing orders {wr:?}")));
    match row4_prediction(rm.kmax) {
        Ok(pred) => {
            let bad = rm.row4_mismatches(&pred);
            rep.push(Check::from_bool(
                "row 4 = Picard-Fuchs prediction",
                bad.is_empty(),
                format!("k <= {}; mismatches {bad:?}", rm.kmax),
            ));
        }
        Err(e) => rep.push(Check::fail("row 4 = Picard-Fuchs prediction", e)),
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_order_entry() {
        let rm = r_matrix(3).unwrap();
        // one step from Rbar_0 = Id plus the wrapped row-0 entry at column 4
        let wrapped = GenPoly::term(crate::genring::Mono::new(1, 1, 0, 0, 0, 0), crate::exactcore::rat(-3, 20));
        assert_eq!(*rm.entry(1, 0, 4), wrapped);
        assert_eq!(*rm.entry(1, 1, 0), -GenPoly::x1() + wrapped);
        assert_eq!(column_of(1, 1), 0);
        assert_eq!(column_of(0, 3), 3);
        assert_eq!(column_of(7, 0), 3);
    }

    #[test]
    fn structure_through_order_six() {
        let rm = r_matrix(6).unwrap();
        let rep = r_matrix_report(&rm);
        assert!(rep.ok(), "{}", rep.to_text());
        assert!(rm.to_json()["entries"].as_array().unwrap().len() > 10);
    }
}
