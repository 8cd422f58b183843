//! Univariate polynomials and rational functions over the rationals, used
//! to take limits like `x_{p+1} -> 1/x_p` or `b = 1/ε, ε -> 0` exactly.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qseries::{fmt_q, pow_q, Q};

/// Coefficients from the constant term up; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly(Vec<Q>);

impl Poly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn zero() -> Self {
        Poly(vec![])
    }

    pub fn constant(c: Q) -> Self {
        Poly::new(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Poly::new(vec![Q::zero(), Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, y: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * y + c)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Poly::new(self.0.iter().map(|v| v * c).collect())
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.lead();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Q::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dv) in d.0.iter().enumerate() {
                    r[k + j] -= &c * dv;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let l = a.lead();
        a.scale(&l.recip())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new(
            (0..n)
                .map(|i| self.0.get(i).cloned().unwrap_or_else(Q::zero) + o.0.get(i).cloned().unwrap_or_else(Q::zero))
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &o.scale(&-Q::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => fmt_q(c),
                1 => format!("{}*y", fmt_q(c)),
                _ => format!("{}*y^{}", fmt_q(c), i),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A reduced fraction of polynomials with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Singular("rational function with zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(RatFn { num, den: Poly::constant(Q::one()) });
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = (num.div_rem(&g).0, den.div_rem(&g).0);
        let l = den.lead().recip();
        Ok(RatFn { num: num.scale(&l), den: den.scale(&l) })
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn { num: p, den: Poly::constant(Q::one()) }
    }

    pub fn var() -> Self {
        RatFn::from_poly(Poly::var())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// Value at `y0` after cancelling common factors; a pole is an error.
    pub fn limit(&self, y0: &Q) -> Result<Q> {
        let d = self.den.eval(y0);
        if d.is_zero() {
            return Err(Error::Singular(format!("pole at y = {}", y0)));
        }
        Ok(self.num.eval(y0) / d)
    }

    /// Multiplicity of `y0` as a root of the numerator and denominator.
    pub fn vanishing_orders(num: &Poly, den: &Poly, y0: &Q) -> (usize, usize) {
        let lin = Poly::new(vec![-y0.clone(), Q::one()]);
        let ord = |p: &Poly| {
            let mut p = p.clone();
            let mut k = 0;
            while !p.is_zero() && p.eval(y0).is_zero() {
                p = p.div_rem(&lin).0;
                k += 1;
            }
            k
        };
        (ord(num), ord(den))
    }
}

/// The operations the limit computations need, over `Q` and `RatFn`.
pub trait Field: Clone + fmt::Debug {
    fn from_q(c: Q) -> Self;
    fn is_nil(&self) -> bool;
    fn fadd(&self, o: &Self) -> Self;
    fn fsub(&self, o: &Self) -> Self;
    fn fmul(&self, o: &Self) -> Self;
    fn fdiv(&self, o: &Self) -> Result<Self>;

    fn fone() -> Self {
        Self::from_q(Q::one())
    }

    fn fzero() -> Self {
        Self::from_q(Q::zero())
    }

    fn fscale(&self, c: &Q) -> Self {
        self.fmul(&Self::from_q(c.clone()))
    }

    fn fpowi(&self, k: i64) -> Result<Self> {
        let mut acc = Self::fone();
        for _ in 0..k.abs() {
            acc = acc.fmul(self);
        }
        if k < 0 {
            Self::fone().fdiv(&acc)
        } else {
            Ok(acc)
        }
    }
}

impl Field for Q {
    fn from_q(c: Q) -> Self {
        c
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn fadd(&self, o: &Self) -> Self {
        self + o
    }
    fn fsub(&self, o: &Self) -> Self {
        self - o
    }
    fn fmul(&self, o: &Self) -> Self {
        self * o
    }
    fn fdiv(&self, o: &Self) -> Result<Self> {
        if Zero::is_zero(o) {
            return Err(Error::Singular("division by zero".into()));
        }
        Ok(self / o)
    }
    fn fscale(&self, c: &Q) -> Self {
        self * c
    }
    fn fpowi(&self, k: i64) -> Result<Self> {
        if k < 0 && Zero::is_zero(self) {
            return Err(Error::Singular("negative power of zero".into()));
        }
        Ok(pow_q(self, k))
    }
}

impl Field for RatFn {
    fn from_q(c: Q) -> Self {
        RatFn::from_poly(Poly::constant(c))
    }
    fn is_nil(&self) -> bool {
        self.num.is_zero()
    }
    fn fadd(&self, o: &Self) -> Self {
        RatFn::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).unwrap()
    }
    fn fsub(&self, o: &Self) -> Self {
        RatFn::new(&(&self.num * &o.den) - &(&o.num * &self.den), &self.den * &o.den).unwrap()
    }
    fn fmul(&self, o: &Self) -> Self {
        RatFn::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }
    fn fdiv(&self, o: &Self) -> Result<Self> {
        if o.num.is_zero() {
            return Err(Error::Singular("division by the zero rational function".into()));
        }
        RatFn::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, o: &RatFn) -> RatFn {
        Field::fadd(self, o)
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, o: &RatFn) -> RatFn {
        Field::fsub(self, o)
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, o: &RatFn) -> RatFn {
        Field::fmul(self, o)
    }
}

impl Div for &RatFn {
    type Output = RatFn;
    fn div(self, o: &RatFn) -> RatFn {
        Field::fdiv(self, o).expect("division by zero")
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        self.fscale(&-Q::one())
    }
}

/// `(a; q)_n` for any integer `n`, in any field.
pub fn fpoch<F: Field>(a: &F, q: &Q, n: i64) -> Result<F> {
    let mut acc = F::fone();
    if n >= 0 {
        let mut p = a.clone();
        for _ in 0..n {
            acc = acc.fmul(&F::fone().fsub(&p));
            p = p.fscale(q);
        }
        Ok(acc)
    } else {
        let qi = q.recip();
        let mut p = a.fscale(&qi);
        for _ in 0..(-n) {
            acc = acc.fmul(&F::fone().fsub(&p));
            p = p.fscale(&qi);
        }
        F::fone().fdiv(&acc)
    }
}

/// `1/(a; q)_n`; finite product for negative `n`, so `1/(q)_{-k} = 0`.
pub fn fpoch_recip<F: Field>(a: &F, q: &Q, n: i64) -> Result<F> {
    if n >= 0 {
        F::fone().fdiv(&fpoch(a, q, n)?)
    } else {
        let qi = q.recip();
        let mut acc = F::fone();
        let mut p = a.fscale(&qi);
        for _ in 0..(-n) {
            acc = acc.fmul(&F::fone().fsub(&p));
            p = p.fscale(&qi);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{qf, qi};

    #[test]
    fn limit_cancels_common_root() {
        // (y^2 - 1)/(y - 1) -> 2 at y = 1
        let y = RatFn::var();
        let one = RatFn::from_q(qi(1));
        let f = Field::fdiv(&Field::fsub(&y.fmul(&y), &one), &Field::fsub(&y, &one)).unwrap();
        assert_eq!(f.limit(&qi(1)).unwrap(), qi(2));
        let (a, b) = RatFn::vanishing_orders(&Poly::new(vec![qi(1), qi(-2), qi(1)]), &Poly::new(vec![qi(-1), qi(1)]), &qi(1));
        assert_eq!((a, b), (2, 1));
    }

    #[test]
    fn pochhammer_reciprocal_of_negative_index() {
        let q = qf(1, 3);
        assert!(Field::is_nil(&fpoch_recip(&q, &q, -2).unwrap()));
        let a = qf(2, 7);
        let v = fpoch(&a, &q, -3).unwrap();
        assert_eq!(v * fpoch_recip(&a, &q, -3).unwrap(), qi(1));
    }
}
