use super::{du, GenPoly, Mono, Var};
use crate::exactcore::{int, rat, QSeries};
use crate::mirrordata::{build_idata, IData};
use crate::report::{Check, Report};

/// Ring homomorphism from the generator ring to q-series:
/// X_k = (d/du)^k log(I0/L), Y = d/du log(I0 I11 / L^2), Z = L^5, Linv = 1/L,
/// with d/du = (1/L) q d/dq.
#[derive(Clone, Debug)]
pub struct Realizer {
    pub order: usize,
    pub l: QSeries,
    pub linv: QSeries,
    /// Images of the generators, indexed by `Var as usize`.
    pub gens: [QSeries; 6],
}

impl Realizer {
    pub fn new(data: &IData) -> Self {
        let order = data.order;
        let l = data.lser.clone();
        let linv = l.inv().expect("L(0) = 1");
        let d = |f: &QSeries| f.qdq().mul_ref(&linv);
        let log = |f: QSeries| f.log().expect("unit constant term");
        let x1 = d(&log(data.i0.div_ref(&l).expect("unit")));
        let x2 = d(&x1);
        let x3 = d(&x2);
        let y = d(&log(data.i0.mul_ref(&data.i11).div_ref(&l.pow_u(2)).expect("unit")));
        let z = l.pow_u(5);
        Realizer { order, l: l.clone(), linv: linv.clone(), gens: [linv, z, x1, x2, x3, y] }
    }

    /// d/du on series.
    pub fn du_series(&self, f: &QSeries) -> QSeries {
        f.qdq().mul_ref(&self.linv)
    }

    /// Z_1 built directly from (1/L) q d/dq log(q^{1/5} L).
    pub fn zcal1_series(&self) -> QSeries {
        let logl = self.l.log().expect("unit");
        QSeries::constant(rat(1, 5), self.order).add_ref(&logl.qdq()).mul_ref(&self.linv)
    }

    pub fn realize(&self, f: &GenPoly) -> QSeries {
        let mut pows: Vec<Vec<QSeries>> = vec![vec![QSeries::one(self.order)]; 6];
        let mut lpows: Vec<QSeries> = vec![QSeries::one(self.order)];
        let mut out = QSeries::zero(self.order);
        for (m, c) in f.terms() {
            let mut acc = QSeries::constant(c.clone(), self.order);
            for v in Var::ALL {
                let k = m.exp(v);
                if k == 0 {
                    continue;
                }
                let i = v as usize;
                let (table, base, n) = if k > 0 {
                    (&mut pows[i], &self.gens[i], k as usize)
                } else {
                    // negative powers of Linv are powers of L
                    (&mut lpows, &self.l, (-k) as usize)
                };
                while table.len() <= n {
                    let next = table.last().unwrap().mul_ref(base);
                    table.push(next);
                }
                acc = acc.mul_ref(&table[n]);
            }
            out = out.add_ref(&acc);
        }
        out
    }
}

/// Monomials in Linv, X1, X2, X3, Y of weighted degree at most `dmax`,
/// each with Z exponent 0 or 1.
pub fn monomials_up_to(dmax: i32) -> Vec<Mono> {
    let mut out = Vec::new();
    for l in 0..=dmax {
        for x1 in 0..=dmax - l {
            for y in 0..=dmax - l - x1 {
                for x2 in 0..=(dmax - l - x1 - y) / 2 {
                    for x3 in 0..=(dmax - l - x1 - y - 2 * x2) / 3 {
                        for z in 0..=1 {
                            out.push(Mono::new(l, z, x1, x2, x3, y));
                        }
                    }
                }
            }
        }
    }
    out
}

/// realize(du f) * L = q d/dq realize(f) for every monomial of degree at most
/// `dmax`, to q-order `order`.
pub fn realization_report(order: usize, dmax: i32) -> Report {
    let mut rep = Report::new("ring");
    let r = Realizer::new(&build_idata(order));
    let mut bad = Vec::new();
    let monos = monomials_up_to(dmax);
    for m in &monos {
        let f = GenPoly::term(*m, int(1));
        if r.realize(&du(&f)).mul_ref(&r.l) != r.realize(&f).qdq() {
            bad.push(*m);
        }
    }
    rep.push(Check::from_bool(
        "realization commutes with d/du",
        bad.is_empty(),
        format!("{} monomials of degree <= {dmax} to q^{order}; failing {bad:?}", monos.len()),
    ));
    for v in [Var::Y, Var::X3] {
        let f = GenPoly::var(v);
        let ok = r.realize(&du(&f)).mul_ref(&r.l) == r.realize(&f).qdq();
        rep.push(Check::from_bool(format!("d/du rule for {v:?}"), ok, format!("to q^{order}")));
    }
    let zl5 = GenPoly::z() - GenPoly::l_pow(5);
    rep.push(Check::from_bool("Z realizes to L^5", r.realize(&zl5).is_zero(), format!("to q^{order}")));
    rep
}
