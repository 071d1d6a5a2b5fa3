use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Arbitrary-precision rational, always kept in lowest terms by `num-rational`.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_from_big(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// `p` or `p/q`; the stable textual form used in reports and JSON.
pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_on_construction() {
        let r = rat(6, -4);
        assert_eq!(rat_str(&r), "-3/2");
        assert!(r.denom() > &BigInt::from(0));
        assert_eq!(rat_str(&int(7)), "7");
    }
}
