//! Univariate polynomials and rational functions over the exact rationals.
//!
//! Used wherever a computation carries a free parameter: the one-parameter
//! Cartan matrix family (parameter `a`) and symbolic central charges
//! (parameter `k`). `RatFun` is a field: numerator/denominator polynomials
//! kept coprime with a monic denominator, so equality is structural.

use crate::error::{Error, Result};
use crate::rat::{fmt_rat, rat_int, Rat};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Dense univariate polynomial over `Rat`; no trailing zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly1 {
    /// Coefficients, `coeffs[i]` multiplying `t^i`. Empty means zero.
    pub coeffs: Vec<Rat>,
}

impl Poly1 {
    pub fn zero() -> Self {
        Poly1 { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Poly1 { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn var() -> Self {
        Poly1 {
            coeffs: vec![Rat::zero(), Rat::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = Poly1 { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the zero polynomial is reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Poly1 {
        if c.is_zero() {
            return Poly1::zero();
        }
        Poly1::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Quotient and remainder; panics if `d` is zero.
    pub fn divrem(&self, d: &Poly1) -> (Poly1, Poly1) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let dl = d.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quo = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading().unwrap() / &dl;
            let shift = rd - dd;
            quo[shift] = c.clone();
            for (i, dc) in d.coeffs.iter().enumerate() {
                let t = dc * &c;
                rem.coeffs[shift + i] = &rem.coeffs[shift + i] - t;
            }
            rem.trim();
        }
        (Poly1::from_coeffs(quo), rem)
    }

    /// Monic gcd via Euclid; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly1) -> Poly1 {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        match a.leading() {
            Some(l) => {
                let inv = Rat::one() / l;
                a.scale(&inv)
            }
            None => a,
        }
    }

    pub fn fmt_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = crate::rat::fmt_rat_abs(c);
            let body = match i {
                0 => mag,
                _ => {
                    let pow = if i == 1 {
                        var.to_string()
                    } else {
                        format!("{var}^{i}")
                    };
                    if mag == "1" {
                        pow
                    } else {
                        format!("{mag}*{pow}")
                    }
                }
            };
            if parts.is_empty() {
                if c < &Rat::zero() {
                    parts.push(format!("-{body}"));
                } else {
                    parts.push(body);
                }
            } else if c < &Rat::zero() {
                parts.push(format!(" - {body}"));
            } else {
                parts.push(format!(" + {body}"));
            }
        }
        parts.concat()
    }
}

impl Add for &Poly1 {
    type Output = Poly1;
    fn add(self, rhs: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = out[i].clone() + c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] = out[i].clone() + c;
        }
        Poly1::from_coeffs(out)
    }
}

impl Sub for &Poly1 {
    type Output = Poly1;
    fn sub(self, rhs: &Poly1) -> Poly1 {
        self + &(-rhs)
    }
}

impl Neg for &Poly1 {
    type Output = Poly1;
    fn neg(self) -> Poly1 {
        Poly1::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly1 {
    type Output = Poly1;
    fn mul(self, rhs: &Poly1) -> Poly1 {
        if self.is_zero() || rhs.is_zero() {
            return Poly1::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        Poly1::from_coeffs(out)
    }
}

/// Rational function num/den, den monic, gcd(num, den) = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFun {
    pub num: Poly1,
    pub den: Poly1,
}

impl RatFun {
    pub fn zero() -> Self {
        RatFun {
            num: Poly1::zero(),
            den: Poly1::constant(Rat::one()),
        }
    }

    pub fn one() -> Self {
        RatFun::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        RatFun {
            num: Poly1::constant(c),
            den: Poly1::constant(Rat::one()),
        }
    }

    /// The generator `t` of the function field.
    pub fn var() -> Self {
        RatFun {
            num: Poly1::var(),
            den: Poly1::constant(Rat::one()),
        }
    }

    pub fn from_poly(p: Poly1) -> Self {
        RatFun {
            num: p,
            den: Poly1::constant(Rat::one()),
        }
    }

    pub fn new(num: Poly1, den: Poly1) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Pole("zero denominator".into()));
        }
        let mut f = RatFun { num, den };
        f.normalize();
        Ok(f)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly1::constant(Rat::one());
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree().unwrap_or(0) > 0 {
            self.num = self.num.divrem(&g).0;
            self.den = self.den.divrem(&g).0;
        }
        let lead = self.den.leading().unwrap().clone();
        if !lead.is_one() {
            let inv = Rat::one() / &lead;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::Pole("inverse of zero".into()));
        }
        RatFun::new(self.den.clone(), self.num.clone())
    }

    /// Exact evaluation; errors if `x` is a pole.
    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole(format!("evaluation at {}", fmt_rat(x))));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn fmt_in(&self, var: &str) -> String {
        if self.den == Poly1::constant(Rat::one()) {
            self.num.fmt_in(var)
        } else {
            format!("({}) / ({})", self.num.fmt_in(var), self.den.fmt_in(var))
        }
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        RatFun::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominators")
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        RatFun::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Div for &RatFun {
    type Output = RatFun;
    fn div(self, rhs: &RatFun) -> RatFun {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_in("t"))
    }
}

// By-value arithmetic so `RatFun` satisfies the `num_traits` bounds.
impl Add for RatFun {
    type Output = RatFun;
    fn add(self, rhs: RatFun) -> RatFun {
        &self + &rhs
    }
}

impl<'a> Add<&'a RatFun> for RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        &self + rhs
    }
}

impl Sub for RatFun {
    type Output = RatFun;
    fn sub(self, rhs: RatFun) -> RatFun {
        &self - &rhs
    }
}

impl<'a> Sub<&'a RatFun> for RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        &self - rhs
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: RatFun) -> RatFun {
        &self * &rhs
    }
}

impl<'a> Mul<&'a RatFun> for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        &self * rhs
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl Zero for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
}

impl One for RatFun {
    fn one() -> Self {
        RatFun::one()
    }
}

/// The scalar field a generic linear-algebra routine runs over: exact
/// rationals for numeric runs, `RatFun` when a free parameter is carried.
pub trait Scalar:
    Clone
    + PartialEq
    + std::fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn from_rat(r: Rat) -> Self;

    /// Multiplicative inverse; errors on zero (and is how pole conditions
    /// surface in parametric runs).
    fn try_inv(&self) -> Result<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }
}

impl Scalar for Rat {
    fn from_rat(r: Rat) -> Self {
        r
    }
    fn try_inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::Pole("inverse of zero".into()));
        }
        Ok(Self::one() / self)
    }
}

impl Scalar for RatFun {
    fn from_rat(r: Rat) -> Self {
        RatFun::constant(r)
    }
    fn try_inv(&self) -> Result<Self> {
        RatFun::inv(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn t() -> RatFun {
        RatFun::var()
    }

    #[test]
    fn poly_divrem_and_gcd() {
        // (t^2 - 1) = (t - 1)(t + 1)
        let p = Poly1::from_coeffs(vec![rat_int(-1), rat_int(0), rat_int(1)]);
        let d = Poly1::from_coeffs(vec![rat_int(-1), rat_int(1)]);
        let (q, r) = p.divrem(&d);
        assert!(r.is_zero());
        assert_eq!(q, Poly1::from_coeffs(vec![rat_int(1), rat_int(1)]));
        let g = p.gcd(&d);
        assert_eq!(g, d); // already monic
    }

    #[test]
    fn ratfun_cancels() {
        // (t^2 - 1)/(t - 1) == t + 1 after normalization.
        let f = RatFun::new(
            Poly1::from_coeffs(vec![rat_int(-1), rat_int(0), rat_int(1)]),
            Poly1::from_coeffs(vec![rat_int(-1), rat_int(1)]),
        )
        .unwrap();
        let expect = &t() + &RatFun::one();
        assert_eq!(f, expect);
    }

    #[test]
    fn field_ops_and_eval() {
        // f = 3t/(t+2) - 6t - 2 evaluated at t = -2/3 gives 1/2.
        let three_t = &RatFun::from_poly(Poly1::from_coeffs(vec![rat_int(0), rat_int(3)])) / &RatFun::one();
        let den = &t() + &RatFun::constant(rat_int(2));
        let f = &(&(&three_t / &den) - &RatFun::from_poly(Poly1::from_coeffs(vec![rat_int(0), rat_int(6)])))
            - &RatFun::constant(rat_int(2));
        assert_eq!(f.eval(&rat(-2, 3)).unwrap(), rat(1, 2));
        // pole at t = -2
        assert!(f.eval(&rat_int(-2)).is_err());
    }

    #[test]
    fn display_forms() {
        let f = &(&t() * &t()) - &RatFun::constant(rat(1, 2));
        assert_eq!(f.fmt_in("k"), "k^2 - 1/2");
        let g = &RatFun::one() / &(&t() + &RatFun::one());
        assert_eq!(g.fmt_in("a"), "(1) / (a + 1)");
    }
}
