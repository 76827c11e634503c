//! Exact arithmetic in the quadratic field Q[sqrt(205)].
//!
//! The distinguished parameter a1 = (40 + 3*sqrt(205))/105 lives here, which
//! lets the keystone identity q(x, a1) = -144/1225 be checked without any
//! precision argument.

use num_traits::Zero;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::rational::{rat, rat_int, Rat};

/// The radicand of the extension.
pub const RADICAND: i64 = 205;

/// `rational + radical * sqrt(205)` with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sqrt205 {
    pub rational: Rat,
    pub radical: Rat,
}

impl Sqrt205 {
    pub fn new(rational: Rat, radical: Rat) -> Self {
        Sqrt205 { rational, radical }
    }

    pub fn from_rat(r: Rat) -> Self {
        Sqrt205::new(r, Rat::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    /// a1 = (40 + 3*sqrt(205))/105.
    pub fn a1() -> Self {
        Sqrt205::new(rat(40, 105), rat(3, 105))
    }

    /// a2 = (40 - 3*sqrt(205))/105, the companion root of 315a^2 - 240a - 7.
    pub fn a2() -> Self {
        Sqrt205::new(rat(40, 105), rat(-3, 105))
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }

    /// `Some(r)` when the element is plain rational.
    pub fn as_rational(&self) -> Option<&Rat> {
        self.radical.is_zero().then_some(&self.rational)
    }

    fn conjugate(&self) -> Self {
        Sqrt205::new(self.rational.clone(), -self.radical.clone())
    }

    /// Field norm `u^2 - 205 v^2`; zero only for the zero element since 205
    /// is not a rational square.
    fn norm(&self) -> Rat {
        &self.rational * &self.rational - rat_int(RADICAND) * &self.radical * &self.radical
    }

    pub fn recip(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "division by zero in Q[sqrt(205)]");
        let c = self.conjugate();
        Sqrt205::new(c.rational / &n, c.radical / &n)
    }
}

impl Add for &Sqrt205 {
    type Output = Sqrt205;
    fn add(self, rhs: &Sqrt205) -> Sqrt205 {
        Sqrt205::new(&self.rational + &rhs.rational, &self.radical + &rhs.radical)
    }
}

impl Sub for &Sqrt205 {
    type Output = Sqrt205;
    fn sub(self, rhs: &Sqrt205) -> Sqrt205 {
        Sqrt205::new(&self.rational - &rhs.rational, &self.radical - &rhs.radical)
    }
}

impl Mul for &Sqrt205 {
    type Output = Sqrt205;
    fn mul(self, rhs: &Sqrt205) -> Sqrt205 {
        let d = rat_int(RADICAND);
        Sqrt205::new(
            &self.rational * &rhs.rational + &d * &self.radical * &rhs.radical,
            &self.rational * &rhs.radical + &self.radical * &rhs.rational,
        )
    }
}

impl Div for &Sqrt205 {
    type Output = Sqrt205;
    fn div(self, rhs: &Sqrt205) -> Sqrt205 {
        self * &rhs.recip()
    }
}

impl Neg for &Sqrt205 {
    type Output = Sqrt205;
    fn neg(self) -> Sqrt205 {
        Sqrt205::new(-self.rational.clone(), -self.radical.clone())
    }
}
