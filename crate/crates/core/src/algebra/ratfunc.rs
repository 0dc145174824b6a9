//! Rational functions in s over Q, where s stands for q^{1/2}.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::laurent::LaurentZ;
use super::sqrtq::SqrtQ;

/// Dense polynomial over Q, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct QPoly(Vec<BigRational>);

impl QPoly {
    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn constant(c: BigRational) -> Self {
        QPoly(vec![c]).trimmed()
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        QPoly(cs.iter().map(|&c| BigRational::from_integer(c.into())).collect()).trimmed()
    }

    /// c * s^e for e >= 0.
    pub fn monomial(c: BigRational, e: usize) -> Self {
        let mut v = vec![BigRational::zero(); e + 1];
        v[e] = c;
        QPoly(v).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn lead(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let zero = BigRational::zero();
        QPoly((0..n).map(|i| self.0.get(i).unwrap_or(&zero) + o.0.get(i).unwrap_or(&zero)).collect()).trimmed()
    }

    pub fn neg(&self) -> Self {
        QPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        QPoly(v).trimmed()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        QPoly(self.0.iter().map(|x| x * c).collect()).trimmed()
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.lead().recip();
        let mut r = self.0.clone();
        let mut quot = vec![BigRational::zero(); self.0.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let top = r.last().unwrap().clone();
            let shift = r.len() - 1 - dd;
            if !top.is_zero() {
                let c = &top * &lead_inv;
                for (i, dc) in d.0.iter().enumerate() {
                    r[shift + i] -= &c * dc;
                }
                quot[shift] = c;
            }
            r.pop();
        }
        (QPoly(quot).trimmed(), QPoly(r).trimmed())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Value at s = sqrt(q).
    pub fn eval_sqrt(&self, q: u64) -> SqrtQ {
        let qr = BigRational::from_integer(q.into());
        let (mut even, mut odd) = (BigRational::zero(), BigRational::zero());
        let mut pw = BigRational::one();
        for pair in self.0.chunks(2) {
            even += &pair[0] * &pw;
            if let Some(c) = pair.get(1) {
                odd += c * &pw;
            }
            pw *= &qr;
        }
        SqrtQ::new(q, even, odd)
    }
}

fn fmt_poly(p: &QPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (e, c) in p.0.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() || e == 0 {
            out.push_str(&abs.to_string());
        }
        match e {
            0 => {}
            1 => out.push_str(var),
            _ => out.push_str(&format!("{var}^{e}")),
        }
    }
    out
}

/// num/den in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunctionS {
    num: QPoly,
    den: QPoly,
}

impl RationalFunctionS {
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut n, _) = num.divrem(&g);
        let (mut d, _) = den.divrem(&g);
        let l = d.lead().recip();
        n = n.scale(&l);
        d = d.scale(&l);
        RationalFunctionS { num: n, den: d }
    }

    pub fn zero() -> Self {
        RationalFunctionS {
            num: QPoly::zero(),
            den: QPoly::from_ints(&[1]),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::new(QPoly::from_ints(&[c]), QPoly::from_ints(&[1]))
    }

    pub fn from_poly(p: QPoly) -> Self {
        Self::new(p, QPoly::from_ints(&[1]))
    }

    /// s^e for any integer e.
    pub fn s_pow(e: i64) -> Self {
        let one = BigRational::one();
        if e >= 0 {
            Self::from_poly(QPoly::monomial(one, e as usize))
        } else {
            Self::new(QPoly::from_ints(&[1]), QPoly::monomial(one, (-e) as usize))
        }
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn neg(&self) -> Self {
        RationalFunctionS {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        Self::new(self.num.scale(&BigRational::from_integer(c.clone())), self.den.clone())
    }

    pub fn eval_sqrt(&self, q: u64) -> SqrtQ {
        let n = self.num.eval_sqrt(q);
        let d = self.den.eval_sqrt(q);
        n.div(&d).expect("denominator vanishes at s^2 = q")
    }
}

impl fmt::Display for RationalFunctionS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = fmt_poly(&self.num, "s");
        if self.den.degree() == Some(0) && self.den.lead().is_one() {
            return write!(f, "{n}");
        }
        write!(f, "({n})/({})", fmt_poly(&self.den, "s"))
    }
}

impl fmt::Debug for RationalFunctionS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for RationalFunctionS {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// c_n = s^{n(n-1)/2} prod_{i=1}^n (s^i - s^-i)/(s - s^-1).
pub fn color_normalizer(n: u32) -> RationalFunctionS {
    let mut acc = RationalFunctionS::s_pow((n * (n - 1) / 2) as i64);
    let z = RationalFunctionS::s_pow(1).sub(&RationalFunctionS::s_pow(-1));
    for i in 1..=n as i64 {
        let qi = RationalFunctionS::s_pow(i).sub(&RationalFunctionS::s_pow(-i));
        acc = acc.mul(&qi.div(&z).unwrap());
    }
    acc
}

/// Substitute z = s - s^{-1}.
pub fn eval_laurent_at_z(p: &LaurentZ) -> RationalFunctionS {
    let z = RationalFunctionS::s_pow(1).sub(&RationalFunctionS::s_pow(-1));
    let zi = z.inv().unwrap();
    let mut acc = RationalFunctionS::zero();
    for (e, c) in p.terms() {
        let base = if e >= 0 { &z } else { &zi };
        let mut term = RationalFunctionS::one();
        for _ in 0..e.unsigned_abs() {
            term = term.mul(base);
        }
        acc = acc.add(&term.scale_int(c));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q_poly_in_s(cs: &[i64]) -> RationalFunctionS {
        // polynomial in q = s^2
        let mut v = Vec::new();
        for &c in cs {
            v.push(c);
            v.push(0);
        }
        RationalFunctionS::from_poly(QPoly::from_ints(&v))
    }

    #[test]
    fn normalizers() {
        assert_eq!(color_normalizer(1), RationalFunctionS::one());
        assert_eq!(color_normalizer(2), q_poly_in_s(&[1, 1]));
        let c3 = q_poly_in_s(&[1, 1]).mul(&q_poly_in_s(&[1, 1, 1]));
        assert_eq!(color_normalizer(3), c3);
    }

    #[test]
    fn laurent_substitution() {
        let z = eval_laurent_at_z(&LaurentZ::monomial(1, 1));
        assert_eq!(z, RationalFunctionS::new(QPoly::from_ints(&[-1, 0, 1]), QPoly::from_ints(&[0, 1])));
        let zi = eval_laurent_at_z(&LaurentZ::monomial(1, -1));
        assert_eq!(zi, RationalFunctionS::new(QPoly::from_ints(&[0, 1]), QPoly::from_ints(&[-1, 0, 1])));
        assert_eq!(eval_laurent_at_z(&LaurentZ::monomial(2, 0)), RationalFunctionS::from_int(2));
    }

    #[test]
    fn canonical_form() {
        let a = RationalFunctionS::new(QPoly::from_ints(&[2, 2]), QPoly::from_ints(&[4, 4]));
        assert_eq!(a, RationalFunctionS::new(QPoly::from_ints(&[1]), QPoly::from_ints(&[2])));
        assert_eq!(a.denominator(), &QPoly::from_ints(&[1]));
        assert_eq!(a.to_string(), "1/2");
    }

    fn laurent(cs: &[(i64, i64)]) -> LaurentZ {
        cs.iter().fold(LaurentZ::zero(), |acc, &(c, e)| acc.add(&LaurentZ::monomial(c, e)))
    }

    proptest! {
        #[test]
        fn substitution_is_multiplicative(
            a in proptest::collection::vec((-5i64..5, -3i64..4), 0..4),
            b in proptest::collection::vec((-5i64..5, -3i64..4), 0..4),
        ) {
            let (pa, pb) = (laurent(&a), laurent(&b));
            let lhs = eval_laurent_at_z(&pa.mul(&pb));
            let rhs = eval_laurent_at_z(&pa).mul(&eval_laurent_at_z(&pb));
            prop_assert_eq!(lhs, rhs);
            let sum = eval_laurent_at_z(&pa.add(&pb));
            prop_assert_eq!(sum, eval_laurent_at_z(&pa).add(&eval_laurent_at_z(&pb)));
        }
    }
}
