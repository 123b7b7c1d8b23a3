//! Error-free transformations and a minimal double-double scalar.
//!
//! The alternating sums in this crate cancel many orders of magnitude below
//! the size of their largest term (the Caputo residual of a degree-12
//! truncation is ~1e-15 while individual terms are O(1)). Plain f64
//! accumulation would leave nothing but rounding noise, so the coefficient
//! chain and the cancellation-prone sums are carried as unevaluated
//! hi + lo pairs (~31 significant digits).

/// Exact sum: returns (s, e) with s = fl(a + b) and a + b = s + e exactly.
#[inline]
pub(crate) fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let t = s - a;
    let e = (a - (s - t)) + (b - t);
    (s, e)
}

/// Exact sum assuming |a| >= |b| or a == 0.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// Exact product: returns (p, e) with p = fl(a * b) and a * b = p + e exactly.
#[inline]
pub(crate) fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// Unevaluated double-double value `hi + lo` with |lo| <= ulp(hi)/2.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact difference of two f64 values, e.g. `2k - alpha` with no rounding.
    #[inline]
    pub fn from_sub(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_sum(a, -b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, rhs: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let e = e + self.lo + rhs.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, rhs: f64) -> Dd {
        let (p, e) = two_prod(self.hi, rhs);
        let e = e + self.lo * rhs;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div_f64(self, rhs: f64) -> Dd {
        let q0 = self.hi / rhs;
        // remainder of the first quotient digit, exactly
        let (p, e) = two_prod(q0, rhs);
        let r = ((self.hi - p) - e) + self.lo;
        let q1 = r / rhs;
        let (hi, lo) = quick_two_sum(q0, q1);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, rhs: Dd) -> Dd {
        let q0 = self.hi / rhs.hi;
        let r = self.add(rhs.mul_f64(q0).neg());
        let q1 = r.to_f64() / rhs.hi;
        let (hi, lo) = quick_two_sum(q0, q1);
        Dd { hi, lo }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_sum_recovers_lost_bits() {
        let (s, e) = two_sum(1.0, 1e-20);
        assert_eq!(s, 1.0);
        assert_eq!(e, 1e-20);
    }

    #[test]
    fn two_prod_is_exact() {
        let a = 1.0 + 2f64.powi(-30);
        let b = 1.0 - 2f64.powi(-30);
        let (p, e) = two_prod(a, b);
        // a*b = 1 - 2^-60 exactly
        assert_eq!(p, 1.0);
        assert_eq!(e, -(2f64.powi(-60)));
    }

    #[test]
    fn from_sub_is_exact() {
        let d = Dd::from_sub(24.0, 0.527);
        // 24 - 0.527 is inexact in f64; hi+lo must carry the residue
        assert_eq!(d.hi, 24.0 - 0.527);
        assert!(d.lo != 0.0);
        assert!((d.to_f64() - (24.0 - 0.527)).abs() < 1e-14);
    }

    #[test]
    fn div_roundtrip() {
        let x = Dd::from_f64(1.0).div_f64(3.0);
        let back = x.mul_f64(3.0);
        assert!((back.to_f64() - 1.0).abs() < 1e-30);
        assert!(back.lo.abs() < 1e-16);
    }

    #[test]
    fn cancellation_survives() {
        // (1 + 1e-17) - 1 in plain f64 is 0; in dd it is 1e-17
        let a = Dd::from_f64(1.0).add_f64(1e-17);
        let b = a.add_f64(-1.0);
        assert!((b.to_f64() - 1e-17).abs() < 1e-33);
    }
}
