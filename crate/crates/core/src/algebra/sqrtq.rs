//! Exact numbers a + b·sqrt(q) with a, b rational.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// When q is a perfect square the b-part is folded into a, so equality of
/// values is structural equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SqrtQ {
    q: u64,
    a: BigRational,
    b: BigRational,
}

fn exact_sqrt(q: u64) -> Option<u64> {
    let r = q.sqrt();
    (r * r == q).then_some(r)
}

impl SqrtQ {
    pub fn new(q: u64, a: BigRational, b: BigRational) -> Self {
        match exact_sqrt(q) {
            Some(r) => SqrtQ {
                q,
                a: a + b * BigRational::from_integer(r.into()),
                b: BigRational::zero(),
            },
            None => SqrtQ { q, a, b },
        }
    }

    pub fn rational(q: u64, a: BigRational) -> Self {
        SqrtQ { q, a, b: BigRational::zero() }
    }

    pub fn from_int(q: u64, a: impl Into<BigInt>) -> Self {
        Self::rational(q, BigRational::from_integer(a.into()))
    }

    /// q^{e/2}.
    pub fn q_half_pow(q: u64, e: i64) -> Self {
        let qr = BigRational::from_integer(q.into());
        let base = num_traits::pow(qr, (e.unsigned_abs() / 2) as usize);
        let whole = if e >= 0 { base } else { base.recip() };
        if e.rem_euclid(2) == 0 {
            Self::rational(q, whole)
        } else if e > 0 {
            Self::new(q, BigRational::zero(), whole)
        } else {
            // q^{-k-1/2} = q^{-k-1} * sqrt(q)
            Self::new(q, BigRational::zero(), whole / BigRational::from_integer(q.into()))
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt_part(&self) -> &BigRational {
        &self.b
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.q, o.q);
        SqrtQ {
            q: self.q,
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }

    pub fn neg(&self) -> Self {
        SqrtQ {
            q: self.q,
            a: -&self.a,
            b: -&self.b,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.q, o.q);
        let qr = BigRational::from_integer(self.q.into());
        SqrtQ {
            q: self.q,
            a: &self.a * &o.a + &self.b * &o.b * qr,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let qr = BigRational::from_integer(self.q.into());
        let norm = &self.a * &self.a - &self.b * &self.b * qr;
        Some(SqrtQ {
            q: self.q,
            a: &self.a / &norm,
            b: -&self.b / &norm,
        })
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }
}

impl fmt::Display for SqrtQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let b = if self.b.is_one() {
            String::new()
        } else if (-&self.b).is_one() {
            "-".into()
        } else {
            format!("{}·", self.b)
        };
        if self.a.is_zero() {
            write!(f, "{b}s")
        } else {
            let sign = if self.b.is_negative() { "-" } else { "+" };
            let babs = self.b.abs();
            let bs = if babs.is_one() { String::new() } else { format!("{babs}·") };
            write!(f, "{} {sign} {bs}s", self.a)
        }
    }
}

impl fmt::Debug for SqrtQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [s^2 = {}]", self.q)
    }
}

impl Serialize for SqrtQ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
