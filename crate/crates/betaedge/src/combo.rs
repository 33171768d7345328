//! Quadratic combinations of Airy functions with polynomial coefficients,
//!
//! ```text
//! C[p, q, s](y) = p(y)·Ai(y)² + q(y)·Ai′(y)² + s(y)·Ai(y)·Ai′(y),
//! ```
//!
//! which are closed under differentiation thanks to Ai″ = y·Ai:
//!
//! ```text
//! d C[p, q, s] = C[p′ + y·s,  q′ + s,  s′ + 2p + 2y·q].
//! ```
//!
//! On this space act the two operators of the soft-edge hierarchy: the
//! third-order "edge" operator L = d³ − 4y·d + 2 and the right-hand-side
//! operator R = y²·d − y that feeds each expansion order from the previous
//! one. The leading coefficient r₀ = C[−y, 1, 0] spans the kernel of L within
//! this class.
//!
//! For numeric cross-checks the wider product basis {F·G, F′·G′, F·G′, F′·G}
//! over any two Airy solutions F, G (Ai/Ai, Bi/Bi, Ai/Bi) is also provided;
//! the same L annihilates C₄[−y, 1, 0, 0] there, which
//! [`homogeneous_check_numeric`] verifies with purely numeric Airy values.

use crate::airy::{airy_eval, AiryError};
use crate::ratpoly::RationalPoly;
use num::{BigInt, BigRational};
use std::fmt;

/// p·Ai² + q·Ai′² + s·Ai·Ai′ with exact rational polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AiryCombo {
    pub p: RationalPoly,
    pub q: RationalPoly,
    pub s: RationalPoly,
}

impl AiryCombo {
    pub fn new(p: RationalPoly, q: RationalPoly, s: RationalPoly) -> Self {
        AiryCombo { p, q, s }
    }

    pub fn zero() -> Self {
        AiryCombo {
            p: RationalPoly::zero(),
            q: RationalPoly::zero(),
            s: RationalPoly::zero(),
        }
    }

    /// The kernel element r₀ = −y·Ai² + Ai′².
    pub fn r0() -> Self {
        AiryCombo {
            p: RationalPoly::from_int_ratios(&[(0, 1), (-1, 1)]),
            q: RationalPoly::one(),
            s: RationalPoly::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero() && self.s.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        AiryCombo {
            p: self.p.add(&other.p),
            q: self.q.add(&other.q),
            s: self.s.add(&other.s),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        AiryCombo {
            p: self.p.sub(&other.p),
            q: self.q.sub(&other.q),
            s: self.s.sub(&other.s),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        AiryCombo {
            p: self.p.scale(c),
            q: self.q.scale(c),
            s: self.s.scale(c),
        }
    }

    /// Numeric value of the combination at `y`.
    pub fn eval(&self, y: f64) -> Result<f64, AiryError> {
        let v = airy_eval(y)?;
        Ok(self.p.eval_f64(y) * v.ai * v.ai
            + self.q.eval_f64(y) * v.ai_prime * v.ai_prime
            + self.s.eval_f64(y) * v.ai * v.ai_prime)
    }
}

impl fmt::Display for AiryCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p(y) = {}; q(y) = {}; s(y) = {}",
            self.p, self.q, self.s
        )
    }
}

/// Evaluates a combination at `y` (free-function form of [`AiryCombo::eval`]).
pub fn eval_combo(c: &AiryCombo, y: f64) -> Result<f64, AiryError> {
    c.eval(y)
}

fn y_poly() -> RationalPoly {
    RationalPoly::from_int_ratios(&[(0, 1), (1, 1)])
}

/// Derivative on the quadratic Airy class:
/// d C[p,q,s] = C[p′ + y·s, q′ + s, s′ + 2p + 2y·q].
pub fn d_op(c: &AiryCombo) -> AiryCombo {
    let y = y_poly();
    AiryCombo {
        p: c.p.derivative().add(&y.mul(&c.s)),
        q: c.q.derivative().add(&c.s),
        s: c.s
            .derivative()
            .add(&c.p.scale(&two()))
            .add(&y.mul(&c.q).scale(&two())),
    }
}

fn two() -> BigRational {
    BigRational::from_integer(BigInt::from(2))
}

/// The edge operator L = d³ − 4y·d + 2 acting on the quadratic Airy class.
pub fn l_op(c: &AiryCombo) -> AiryCombo {
    let d1 = d_op(c);
    let d3 = d_op(&d_op(&d1));
    let y = y_poly();
    let four_y = y.scale(&BigRational::from_integer(BigInt::from(4)));
    let minus_4y_d = AiryCombo {
        p: four_y.mul(&d1.p).neg(),
        q: four_y.mul(&d1.q).neg(),
        s: four_y.mul(&d1.s).neg(),
    };
    d3.add(&minus_4y_d).add(&c.scale(&two()))
}

/// The source operator R = y²·d − y producing the inhomogeneity for the next
/// expansion order from the current coefficient.
pub fn rhs_op(c: &AiryCombo) -> AiryCombo {
    let d1 = d_op(c);
    let y = y_poly();
    let y2 = y.mul(&y);
    AiryCombo {
        p: y2.mul(&d1.p).sub(&y.mul(&c.p)),
        q: y2.mul(&d1.q).sub(&y.mul(&c.q)),
        s: y2.mul(&d1.s).sub(&y.mul(&c.s)),
    }
}

/// Which pair of independent Airy solutions to use in the product basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomogeneousPair {
    AiAi,
    BiBi,
    AiBi,
}

/// a·FG + b·F′G′ + c·FG′ + d·F′G over two Airy solutions F, G.
#[derive(Clone, Debug, PartialEq, Eq)]
struct PairCombo {
    a: RationalPoly,
    b: RationalPoly,
    c: RationalPoly,
    d: RationalPoly,
}

impl PairCombo {
    fn base() -> Self {
        // −y·FG + F′G′: the kernel element in the product basis.
        PairCombo {
            a: RationalPoly::from_int_ratios(&[(0, 1), (-1, 1)]),
            b: RationalPoly::one(),
            c: RationalPoly::zero(),
            d: RationalPoly::zero(),
        }
    }

    /// Derivative using F″ = yF, G″ = yG.
    fn d4(&self) -> Self {
        let y = y_poly();
        PairCombo {
            a: self.a.derivative().add(&y.mul(&self.c.add(&self.d))),
            b: self.b.derivative().add(&self.c).add(&self.d),
            c: self.c.derivative().add(&self.a).add(&y.mul(&self.b)),
            d: self.d.derivative().add(&self.a).add(&y.mul(&self.b)),
        }
    }

    /// Numeric value given (F, F′, G, G′) at y.
    fn eval(&self, y: f64, fv: (f64, f64, f64, f64)) -> f64 {
        let (f, fp, g, gp) = fv;
        self.a.eval_f64(y) * f * g
            + self.b.eval_f64(y) * fp * gp
            + self.c.eval_f64(y) * f * gp
            + self.d.eval_f64(y) * fp * g
    }
}

/// Verifies numerically that L annihilates the product-basis kernel element
/// for the chosen solution pair: the three operator terms d³C, −4y·dC, 2C are
/// evaluated *separately* from [`airy_eval`] values and summed, and the
/// largest residual relative to the local term magnitude over `grid` is
/// returned. Symbolically the sum is identically zero, so the result measures
/// the mutual consistency of the symbolic differentiation and the numeric
/// Airy evaluation — any sign or coefficient error in either would surface at
/// O(1) instead of roundoff.
pub fn homogeneous_check_numeric(
    which: HomogeneousPair,
    grid: &[f64],
) -> Result<f64, AiryError> {
    let base = PairCombo::base();
    let d1 = base.d4();
    let d3 = d1.d4().d4();
    let mut worst: f64 = 0.0;
    for &y in grid {
        let av = airy_eval(y)?;
        let fv = match which {
            HomogeneousPair::AiAi => (av.ai, av.ai_prime, av.ai, av.ai_prime),
            HomogeneousPair::BiBi => (av.bi, av.bi_prime, av.bi, av.bi_prime),
            HomogeneousPair::AiBi => (av.ai, av.ai_prime, av.bi, av.bi_prime),
        };
        let t1 = d3.eval(y, fv);
        let t2 = -4.0 * y * d1.eval(y, fv);
        let t3 = 2.0 * base.eval(y, fv);
        let scale = t1.abs() + t2.abs() + t3.abs();
        if scale > 0.0 {
            worst = worst.max((t1 + t2 + t3).abs() / scale);
        }
    }
    Ok(worst)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // frozen reference values keep full digits
mod tests {
    use super::*;

    fn poly(pairs: &[(i64, i64)]) -> RationalPoly {
        RationalPoly::from_int_ratios(pairs)
    }

    #[test]
    fn derivative_operator_on_kernel_element() {
        // d(−y·Ai² + Ai′²) = −Ai² exactly.
        let d = d_op(&AiryCombo::r0());
        assert_eq!(
            d,
            AiryCombo::new(poly(&[(-1, 1)]), RationalPoly::zero(), RationalPoly::zero())
        );
    }

    #[test]
    fn edge_operator_annihilates_kernel_element() {
        assert!(l_op(&AiryCombo::r0()).is_zero());
    }

    #[test]
    fn source_operator_on_kernel_element() {
        // R r₀ = y²·(−Ai²) − y·(−y·Ai² + Ai′²) = −y·Ai′².
        let rhs = rhs_op(&AiryCombo::r0());
        assert_eq!(
            rhs,
            AiryCombo::new(
                RationalPoly::zero(),
                poly(&[(0, 1), (-1, 1)]),
                RationalPoly::zero()
            )
        );
    }

    #[test]
    fn first_order_coefficient_satisfies_its_equation() {
        // L r₁ = R r₀ with r₁ = (−3y²/20)Ai² + (y/10)Ai′² + (3/20)AiAi′.
        let r1 = AiryCombo::new(
            poly(&[(0, 1), (0, 1), (-3, 20)]),
            poly(&[(0, 1), (1, 10)]),
            poly(&[(3, 20)]),
        );
        assert_eq!(l_op(&r1), rhs_op(&AiryCombo::r0()));
    }

    #[test]
    fn evaluation_matches_airy_values() {
        // r₀(0) = Ai′(0)².
        let v = AiryCombo::r0().eval(0.0).unwrap();
        assert!((v - 0.06698748377966397414368454190464603982164).abs() < 1e-15);
        // r₀(y) → semicircle-edge profile: spot value at y = −2:
        // Ai′(−2)² + 2·Ai(−2)² with frozen Airy values.
        let a = airy_eval(-2.0).unwrap();
        let want = a.ai_prime * a.ai_prime + 2.0 * a.ai * a.ai;
        let got = AiryCombo::r0().eval(-2.0).unwrap();
        assert!((got - want).abs() < 1e-16);
    }

    #[test]
    fn homogeneous_residuals_are_roundoff_small() {
        let grid_a: Vec<f64> = (0..41).map(|i| -5.0 + 0.2 * i as f64).collect();
        let grid_b: Vec<f64> = (0..31).map(|i| -5.0 + 0.2 * i as f64).collect();
        let grid_ab: Vec<f64> = (0..36).map(|i| -5.0 + 0.2 * i as f64).collect();
        assert!(homogeneous_check_numeric(HomogeneousPair::AiAi, &grid_a).unwrap() < 1e-12);
        assert!(homogeneous_check_numeric(HomogeneousPair::BiBi, &grid_b).unwrap() < 1e-12);
        assert!(homogeneous_check_numeric(HomogeneousPair::AiBi, &grid_ab).unwrap() < 1e-12);
    }

    #[test]
    fn product_basis_kernel_is_symbolically_annihilated() {
        // d³ − 4y·d + 2 on the 4-basis kernel element, fully symbolic.
        let base = PairCombo::base();
        let d1 = base.d4();
        let d3 = d1.d4().d4();
        let y = RationalPoly::from_int_ratios(&[(0, 1), (1, 1)]);
        let four_y = y.scale(&BigRational::from_integer(BigInt::from(4)));
        let two = BigRational::from_integer(BigInt::from(2));
        let res = PairCombo {
            a: d3.a.sub(&four_y.mul(&d1.a)).add(&base.a.scale(&two)),
            b: d3.b.sub(&four_y.mul(&d1.b)).add(&base.b.scale(&two)),
            c: d3.c.sub(&four_y.mul(&d1.c)).add(&base.c.scale(&two)),
            d: d3.d.sub(&four_y.mul(&d1.d)).add(&base.d.scale(&two)),
        };
        assert!(res.a.is_zero() && res.b.is_zero() && res.c.is_zero() && res.d.is_zero());
    }
}
