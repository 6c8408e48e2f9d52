//! Exact arithmetic in the real quaternion division ring.
//!
//! Every coefficient is an arbitrary-precision rational, so products,
//! conjugates and inverses are computed without rounding. The basis elements
//! satisfy `i² = j² = k² = -1` and `ij = -ji = k`, `jk = -kj = i`,
//! `ki = -ik = j`; multiplication is associative but not commutative.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

/// Exact scalar: arbitrary-precision rational, always reduced, denominator > 0.
pub type Rational = BigRational;

/// Shorthand for a rational from two machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A quaternion `x0 + x1·i + x2·j + x3·k` with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quaternion {
    x0: Rational,
    x1: Rational,
    x2: Rational,
    x3: Rational,
}

/// Failure to parse the `a/b,c/d,e/f,g/h` token format.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseQuaternionError {
    #[error("expected 4 comma-separated rational components, found {0}")]
    ComponentCount(usize),
    #[error("bad rational component {component:?}: {reason}")]
    BadComponent { component: String, reason: String },
}

impl Quaternion {
    pub fn new(x0: Rational, x1: Rational, x2: Rational, x3: Rational) -> Self {
        Quaternion { x0, x1, x2, x3 }
    }

    /// Quaternion with integer coefficients `x0 + x1·i + x2·j + x3·k`.
    pub fn from_ints(x0: i64, x1: i64, x2: i64, x3: i64) -> Self {
        Quaternion::new(rat_int(x0), rat_int(x1), rat_int(x2), rat_int(x3))
    }

    pub fn zero() -> Self {
        Quaternion::from_ints(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Quaternion::from_ints(1, 0, 0, 0)
    }

    pub fn i() -> Self {
        Quaternion::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Quaternion::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Quaternion::from_ints(0, 0, 0, 1)
    }

    /// Real scalar embedded as a quaternion.
    pub fn from_rational(r: Rational) -> Self {
        Quaternion::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn coefficients(&self) -> [&Rational; 4] {
        [&self.x0, &self.x1, &self.x2, &self.x3]
    }

    pub fn is_zero(&self) -> bool {
        self.x0.is_zero() && self.x1.is_zero() && self.x2.is_zero() && self.x3.is_zero()
    }

    /// True iff `x0² + x1² + x2² + x3² = 1` exactly.
    pub fn is_unit(&self) -> bool {
        self.norm_sq().is_one()
    }

    /// True iff the real part vanishes.
    pub fn is_pure(&self) -> bool {
        self.x0.is_zero()
    }

    /// True iff the three imaginary parts vanish.
    pub fn is_real(&self) -> bool {
        self.x1.is_zero() && self.x2.is_zero() && self.x3.is_zero()
    }

    /// Real part `x0`.
    pub fn re(&self) -> Rational {
        self.x0.clone()
    }

    /// Imaginary part `x1·i + x2·j + x3·k`.
    pub fn im(&self) -> Quaternion {
        Quaternion::new(
            Rational::zero(),
            self.x1.clone(),
            self.x2.clone(),
            self.x3.clone(),
        )
    }

    /// Conjugate `x0 - x1·i - x2·j - x3·k`.
    pub fn conj(&self) -> Quaternion {
        Quaternion::new(self.x0.clone(), -&self.x1, -&self.x2, -&self.x3)
    }

    /// Squared modulus `q·q̄ = x0² + x1² + x2² + x3²`, kept squared to stay rational.
    pub fn norm_sq(&self) -> Rational {
        &self.x0 * &self.x0 + &self.x1 * &self.x1 + &self.x2 * &self.x2 + &self.x3 * &self.x3
    }

    /// Multiplicative inverse `q̄ / |q|²`, or `None` for zero.
    pub fn inverse(&self) -> Option<Quaternion> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(self.conj().scale(&(Rational::one() / n)))
    }

    /// Scale every coefficient by a rational.
    pub fn scale(&self, s: &Rational) -> Quaternion {
        Quaternion::new(&self.x0 * s, &self.x1 * s, &self.x2 * s, &self.x3 * s)
    }

    /// Cayley transform `(1 + v)·(1 - v)⁻¹` of a pure quaternion.
    ///
    /// The result is always an exact unit quaternion and never `-1`; this is
    /// the supply of unit gains dense in the rational unit sphere.
    ///
    /// Panics if `v` has a nonzero real part.
    pub fn cayley_unit(v: &Quaternion) -> Quaternion {
        assert!(v.is_pure(), "cayley_unit requires a pure quaternion");
        let one = Quaternion::one();
        let denom = (&one - v)
            .inverse()
            .expect("1 - v cannot vanish for pure v");
        &(&one + v) * &denom
    }

    /// The eight Lipschitz units `{±1, ±i, ±j, ±k}`, closed under product
    /// and conjugation.
    pub fn lipschitz_units() -> [Quaternion; 8] {
        [
            Quaternion::one(),
            -&Quaternion::one(),
            Quaternion::i(),
            -&Quaternion::i(),
            Quaternion::j(),
            -&Quaternion::j(),
            Quaternion::k(),
            -&Quaternion::k(),
        ]
    }

    /// Random exact unit quaternion: the Cayley transform of a random pure
    /// quaternion whose coefficients have numerators and denominators bounded
    /// by `bound`.
    pub fn random_unit<R: Rng + ?Sized>(rng: &mut R, bound: u32) -> Quaternion {
        let bound = bound.max(1) as i64;
        let part = |rng: &mut R| {
            let num = rng.gen_range(-bound..=bound);
            let den = rng.gen_range(1..=bound);
            rat(num, den)
        };
        let v = Quaternion::new(Rational::zero(), part(rng), part(rng), part(rng));
        Quaternion::cayley_unit(&v)
    }
}

impl fmt::Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quaternion({})", self)
    }
}

/// Token format: the four reduced rationals joined by commas, denominator
/// omitted when 1, e.g. `1/2,-1/2,0,1`.
impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.x0, self.x1, self.x2, self.x3)
    }
}

impl FromStr for Quaternion {
    type Err = ParseQuaternionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(ParseQuaternionError::ComponentCount(parts.len()));
        }
        let mut comps = Vec::with_capacity(4);
        for part in parts {
            let trimmed = part.trim();
            let r: Rational =
                trimmed
                    .parse()
                    .map_err(|e| ParseQuaternionError::BadComponent {
                        component: trimmed.to_string(),
                        reason: format!("{e:?}"),
                    })?;
            comps.push(r);
        }
        let mut it = comps.into_iter();
        Ok(Quaternion::new(
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
        ))
    }
}

impl Add for &Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: &Quaternion) -> Quaternion {
        Quaternion::new(
            &self.x0 + &rhs.x0,
            &self.x1 + &rhs.x1,
            &self.x2 + &rhs.x2,
            &self.x3 + &rhs.x3,
        )
    }
}

impl Sub for &Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: &Quaternion) -> Quaternion {
        Quaternion::new(
            &self.x0 - &rhs.x0,
            &self.x1 - &rhs.x1,
            &self.x2 - &rhs.x2,
            &self.x3 - &rhs.x3,
        )
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-&self.x0, -&self.x1, -&self.x2, -&self.x3)
    }
}

impl Mul for &Quaternion {
    type Output = Quaternion;

    /// Product under `ij = -ji = k`, `jk = -kj = i`, `ki = -ik = j`.
    fn mul(self, rhs: &Quaternion) -> Quaternion {
        let (a0, a1, a2, a3) = (&self.x0, &self.x1, &self.x2, &self.x3);
        let (b0, b1, b2, b3) = (&rhs.x0, &rhs.x1, &rhs.x2, &rhs.x3);
        Quaternion::new(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Quaternion) -> Quaternion {
        &self + &rhs
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Quaternion) -> Quaternion {
        &self - &rhs
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        -&self
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        &self * &rhs
    }
}

/// Signed with `Re(q) != 0` witnesses, used when forcing odd-cycle classes.
pub fn has_nonzero_real_part(q: &Quaternion) -> bool {
    !q.re().is_zero()
}

/// Absolute value helper used by float conversions.
pub fn rational_to_f64(r: &Rational) -> f64 {
    let num = r.numer();
    let den = r.denom();
    // Good enough for desk-scale magnitudes; exact mode never round-trips
    // through here.
    let nf = num.to_string().parse::<f64>().unwrap_or(if num.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    });
    let df = den.to_string().parse::<f64>().unwrap_or(f64::INFINITY);
    nf / df
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(x0: i64, x1: i64, x2: i64, x3: i64) -> Quaternion {
        Quaternion::from_ints(x0, x1, x2, x3)
    }

    #[test]
    fn multiplication_table() {
        let (i, j, k) = (Quaternion::i(), Quaternion::j(), Quaternion::k());
        let minus_one = -&Quaternion::one();
        assert_eq!(&i * &i, minus_one);
        assert_eq!(&j * &j, minus_one);
        assert_eq!(&k * &k, minus_one);
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &i, -&k);
        assert_eq!(&j * &k, i);
        assert_eq!(&k * &j, -&i);
        assert_eq!(&k * &i, j);
        assert_eq!(&i * &k, -&j);
    }

    #[test]
    fn product_of_basis_elements_is_minus_one() {
        // (i·j)·k = k·k = -1
        let p = &(&Quaternion::i() * &Quaternion::j()) * &Quaternion::k();
        assert_eq!(p, -&Quaternion::one());
    }

    #[test]
    fn identity_and_noncommutativity() {
        let x = q(3, -2, 5, 7);
        assert_eq!(&x * &Quaternion::one(), x);
        assert_eq!(&Quaternion::one() * &x, x);
        assert_ne!(
            &Quaternion::i() * &Quaternion::j(),
            &Quaternion::j() * &Quaternion::i()
        );
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(q(1, 1, 0, 0).conj(), q(1, -1, 0, 0));
        let x = q(2, -3, 5, -7);
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn norms() {
        assert_eq!(Quaternion::i().norm_sq(), rat_int(1));
        assert_eq!(Quaternion::zero().norm_sq(), rat_int(0));
        assert_eq!(q(1, 1, 1, 1).norm_sq(), rat_int(4));
    }

    #[test]
    fn inverses() {
        assert_eq!(Quaternion::j().inverse().unwrap(), -&Quaternion::j());
        assert_eq!(
            q(2, 0, 0, 0).inverse().unwrap(),
            Quaternion::from_rational(rat(1, 2))
        );
        assert_eq!(Quaternion::zero().inverse(), None);
        let x = q(1, -2, 3, 4);
        assert_eq!(&x * &x.inverse().unwrap(), Quaternion::one());
        assert_eq!(&x.inverse().unwrap() * &x, Quaternion::one());
    }

    #[test]
    fn cayley_fixed_points() {
        assert_eq!(Quaternion::cayley_unit(&Quaternion::zero()), Quaternion::one());
        assert_eq!(Quaternion::cayley_unit(&Quaternion::i()), Quaternion::i());
    }

    #[test]
    fn real_and_imaginary_projections() {
        let x = q(3, 1, 0, 0);
        assert_eq!(x.re(), rat_int(3));
        assert_eq!(x.im(), Quaternion::i());
        let back = &Quaternion::from_rational(x.re()) + &x.im();
        assert_eq!(back, x);
    }

    #[test]
    fn lipschitz_units_closed_under_product_and_conjugation() {
        let units = Quaternion::lipschitz_units();
        for a in &units {
            assert!(a.is_unit());
            assert!(units.contains(&a.conj()));
            for b in &units {
                assert!(units.contains(&(a * b)));
            }
        }
    }

    #[test]
    fn token_format() {
        let x = Quaternion::new(rat(1, 2), rat(-1, 2), rat_int(0), rat_int(1));
        assert_eq!(x.to_string(), "1/2,-1/2,0,1");
        assert_eq!("1/2,-1/2,0,1".parse::<Quaternion>().unwrap(), x);
        assert_eq!("0,1,0,0".parse::<Quaternion>().unwrap(), Quaternion::i());
        assert!(matches!(
            "1,2,3".parse::<Quaternion>(),
            Err(ParseQuaternionError::ComponentCount(3))
        ));
        assert!(matches!(
            "1,2,3,x".parse::<Quaternion>(),
            Err(ParseQuaternionError::BadComponent { .. })
        ));
    }

    prop_compose! {
        fn arb_rational()(num in -40i64..=40, den in 1i64..=12) -> Rational {
            rat(num, den)
        }
    }

    prop_compose! {
        pub(crate) fn arb_quaternion()(
            a in arb_rational(),
            b in arb_rational(),
            c in arb_rational(),
            d in arb_rational(),
        ) -> Quaternion {
            Quaternion::new(a, b, c, d)
        }
    }

    prop_compose! {
        fn arb_pure()(
            b in arb_rational(),
            c in arb_rational(),
            d in arb_rational(),
        ) -> Quaternion {
            Quaternion::new(Rational::zero(), b, c, d)
        }
    }

    proptest! {
        #[test]
        fn associativity(a in arb_quaternion(), b in arb_quaternion(), c in arb_quaternion()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn conj_reverses_products(a in arb_quaternion(), b in arb_quaternion()) {
            prop_assert_eq!((&a * &b).conj(), &b.conj() * &a.conj());
        }

        #[test]
        fn inverse_reverses_products(a in arb_quaternion(), b in arb_quaternion()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let lhs = (&a * &b).inverse().unwrap();
            let rhs = &b.inverse().unwrap() * &a.inverse().unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn cayley_lands_on_unit_sphere(v in arb_pure()) {
            let u = Quaternion::cayley_unit(&v);
            prop_assert!(u.is_unit());
            prop_assert_ne!(u, -&Quaternion::one());
        }

        #[test]
        fn cayley_injective_on_distinct_pures(v in arb_pure(), w in arb_pure()) {
            prop_assume!(v != w);
            prop_assert_ne!(Quaternion::cayley_unit(&v), Quaternion::cayley_unit(&w));
        }

        #[test]
        fn unit_products_stay_unit(v in arb_pure(), w in arb_pure()) {
            let a = Quaternion::cayley_unit(&v);
            let b = Quaternion::cayley_unit(&w);
            prop_assert!((&a * &b).is_unit());
            prop_assert!(a.inverse().unwrap().is_unit());
            prop_assert_eq!(a.inverse().unwrap(), a.conj());
        }

        #[test]
        fn re_of_q_qbar_is_norm(a in arb_quaternion()) {
            prop_assert_eq!((&a * &a.conj()).re(), a.norm_sq());
        }

        #[test]
        fn token_roundtrip(a in arb_quaternion()) {
            let token = a.to_string();
            prop_assert_eq!(token.parse::<Quaternion>().unwrap(), a);
        }
    }
}
