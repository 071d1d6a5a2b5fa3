use crate::exactcore::{int, rat, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

/// Memoized intersection numbers <tau_{a_1} ... tau_{a_n}>_g of psi classes on
/// the moduli of stable curves, keyed by (g, sorted exponents).
#[derive(Default)]
pub struct PsiTable {
    memo: Mutex<BTreeMap<(u32, Vec<u32>), Rat>>,
}

fn double_factorial(n: i64) -> Rat {
    // (2m - 1)!! with the convention (-1)!! = 1
    let mut acc = Rat::one();
    let mut k = n;
    while k > 1 {
        acc *= int(k);
        k -= 2;
    }
    acc
}

impl PsiTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Integral of psi_1^{a_1} ... psi_n^{a_n}; zero unless sum a_i = 3g - 3 + n.
    pub fn integral(&self, g: u32, exps: &[u32]) -> Rat {
        let n = exps.len() as i64;
        let g64 = g as i64;
        if 2 * g64 - 2 + n <= 0 || exps.iter().map(|&a| a as i64).sum::<i64>() != 3 * g64 - 3 + n {
            return Rat::zero();
        }
        let mut key = exps.to_vec();
        key.sort_unstable();
        if let Some(v) = self.memo.lock().expect("psi memo").get(&(g, key.clone())) {
            return v.clone();
        }
        let v = self.compute(g, &key);
        self.memo.lock().expect("psi memo").insert((g, key), v.clone());
        v
    }

    /// Dijkgraaf-Verlinde-Verlinde recursion on the largest exponent.
    fn compute(&self, g: u32, a: &[u32]) -> Rat {
        if a.iter().all(|&x| x == 0) {
            return if g == 0 && a.len() == 3 { Rat::one() } else { Rat::zero() };
        }
        if g == 1 && a == [1] {
            return rat(1, 24);
        }
        let top = a.len() - 1;
        let k = (a[top] - 1) as i64;
        let rest = &a[..top];
        let mut acc = Rat::zero();
        for j in 0..rest.len() {
            let dj = rest[j] as i64;
            let mut b = rest.to_vec();
            b[j] += k as u32;
            acc += double_factorial(2 * k + 2 * dj + 1) / double_factorial(2 * dj - 1) * self.integral(g, &b);
        }
        let half = rat(1, 2);
        for r in 0..k {
            let s = k - 1 - r;
            let w = double_factorial(2 * r + 1) * double_factorial(2 * s + 1) * &half;
            if g >= 1 {
                let mut b = rest.to_vec();
                b.push(r as u32);
                b.push(s as u32);
                acc += &w * self.integral(g - 1, &b);
            }
            for mask in 0..(1u32 << rest.len()) {
                let (i, j): (Vec<u32>, Vec<u32>) = {
                    let mut i = vec![r as u32];
                    let mut j = vec![s as u32];
                    for (t, &x) in rest.iter().enumerate() {
                        if mask >> t & 1 == 1 {
                            i.push(x);
                        } else {
                            j.push(x);
                        }
                    }
                    (i, j)
                };
                for g1 in 0..=g {
                    let x = self.integral(g1, &i);
                    if !x.is_zero() {
                        acc += &w * x * self.integral(g - g1, &j);
                    }
                }
            }
        }
        acc / double_factorial(2 * k + 3)
    }

    pub fn entries(&self) -> Vec<((u32, Vec<u32>), Rat)> {
        self.memo.lock().expect("psi memo").iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }

    /// Stored entries violating the string or dilaton equation.
    pub fn string_dilaton_violations(&self) -> Vec<(u32, Vec<u32>)> {
        let mut bad = Vec::new();
        for ((g, a), v) in self.entries() {
            let n = a.len() as i64;
            if 2 * g as i64 - 2 + n - 1 <= 0 {
                continue;
            }
            if let Some(p) = a.iter().position(|&x| x == 0) {
                let mut rest = a.clone();
                rest.remove(p);
                let mut s = Rat::zero();
                for j in 0..rest.len() {
                    if rest[j] > 0 {
                        let mut b = rest.clone();
                        b[j] -= 1;
                        s += self.integral(g, &b);
                    }
                }
                if s != v {
                    bad.push((g, a.clone()));
                    continue;
                }
            }
            if let Some(p) = a.iter().position(|&x| x == 1) {
                let mut rest = a.clone();
                rest.remove(p);
                if int(2 * g as i64 - 2 + n - 1) * self.integral(g, &rest) != v {
                    bad.push((g, a));
                }
            }
        }
        bad
    }
}

/// Process-wide table behind `psi_integral`.
pub fn psi_table() -> &'static PsiTable {
    static TABLE: OnceLock<PsiTable> = OnceLock::new();
    TABLE.get_or_init(PsiTable::new)
}

/// <tau_{a_1} ... tau_{a_n}>_g from the shared memo table.
pub fn psi_integral(g: u32, exps: &[u32]) -> Rat {
    psi_table().integral(g, exps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn factorial(n: u32) -> Rat {
        (1..=n as i64).fold(Rat::one(), |acc, k| acc * int(k))
    }

    #[test]
    fn anchors() {
        let t = PsiTable::new();
        assert_eq!(t.integral(0, &[0, 0, 0]), int(1));
        assert_eq!(t.integral(1, &[1]), rat(1, 24));
        assert_eq!(t.integral(2, &[4]), rat(1, 1152));
        assert_eq!(t.integral(2, &[2, 2, 2]), rat(7, 240));
        assert_eq!(t.integral(1, &[0]), Rat::zero());
    }

    #[test]
    fn genus_zero_multinomial() {
        // <tau_a>_0 = (n - 3)! / prod a_i!
        let t = PsiTable::new();
        for a in [vec![1, 0, 0, 0], vec![2, 0, 0, 0, 0], vec![1, 1, 0, 0, 0], vec![1, 1, 1, 0, 0, 0], vec![3, 2, 0, 0, 0, 0, 0, 0]] {
            let n = a.len() as u32;
            let expect = factorial(n - 3) / a.iter().fold(Rat::one(), |acc, &x| acc * factorial(x));
            assert_eq!(t.integral(0, &a), expect, "{a:?}");
        }
    }

    #[test]
    fn one_point_and_genus_one() {
        let t = PsiTable::new();
        for g in 1..=5u32 {
            // <tau_{3g-2}>_g = 1 / (24^g g!)
            let expect = Rat::new(BigInt::from(1), BigInt::from(24).pow(g) * factorial(g).to_integer());
            assert_eq!(t.integral(g, &[3 * g - 2]), expect);
        }
        for n in 1..=6u32 {
            // <tau_1^n>_1 = (n - 1)! / 24
            assert_eq!(t.integral(1, &vec![1; n as usize]), factorial(n - 1) / int(24));
        }
        t.integral(3, &[2, 2, 3, 2]);
        assert!(t.string_dilaton_violations().is_empty());
    }
}
