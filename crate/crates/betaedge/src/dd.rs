//! Double-double arithmetic: a value is an unevaluated sum `hi + lo` of two
//! `f64`s with |lo| ≤ ulp(hi)/2, giving ≈31 significant digits. Only the
//! handful of operations needed by the Airy evaluator are implemented
//! (error-free add/multiply cores after Dekker and Knuth, division and square
//! root by one Newton-correction step, and an argument reduction modulo 2π).

/// Error-free transformation: `a + b = s + e` exactly, with `s = fl(a + b)`.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Faster variant of [`two_sum`] valid when |a| ≥ |b|.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// Error-free transformation: `a * b = p + e` exactly (uses fused multiply-add).
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    /// 2π to double-double precision.
    pub const TWO_PI: Dd = Dd {
        hi: std::f64::consts::TAU,
        lo: 2.4492935982947064e-16,
    };

    /// π/4 to double-double precision.
    pub const FRAC_PI_4: Dd = Dd {
        hi: std::f64::consts::FRAC_PI_4,
        lo: 3.061616997868383e-17,
    };

    pub const fn new(hi: f64, lo: f64) -> Dd {
        Dd { hi, lo }
    }

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, rhs: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }

    pub fn sub(self, rhs: Dd) -> Dd {
        self.add(Dd {
            hi: -rhs.hi,
            lo: -rhs.lo,
        })
    }

    pub fn mul(self, rhs: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    pub fn mul_f64(self, b: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p1, p2 + self.lo * b);
        Dd { hi, lo }
    }

    /// Quotient by a plain `f64`, accurate to the full double-double width.
    pub fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        // r = self − q1·b, computed exactly via two_prod.
        let (p1, p2) = two_prod(q1, b);
        let r = self.sub(Dd { hi: p1, lo: p2 });
        let q2 = (r.hi + r.lo) / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        let r = self.hi.sqrt();
        let (p1, p2) = two_prod(r, r);
        let diff = self.sub(Dd { hi: p1, lo: p2 });
        let corr = (diff.hi + diff.lo) / (2.0 * r);
        let (hi, lo) = quick_two_sum(r, corr);
        Dd { hi, lo }
    }

    /// Reduces `self` modulo 2π into (−π, π] and returns the reduced angle as
    /// `f64`. The multiple of 2π is found from the `hi` word, so the result
    /// retains ~31 digits of the *difference*, which is what trigonometric
    /// evaluation of large oscillatory phases needs.
    pub fn rem_two_pi(self) -> f64 {
        let n = (self.hi / Dd::TWO_PI.hi).round();
        let reduced = self.sub(Dd::TWO_PI.mul_f64(n));
        let mut x = reduced.to_f64();
        // One clean-up pass in case rounding put us just outside (−π, π].
        if x > std::f64::consts::PI {
            x -= std::f64::consts::TAU;
        } else if x <= -std::f64::consts::PI {
            x += std::f64::consts::TAU;
        }
        x
    }
}
