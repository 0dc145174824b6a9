//! Finite fields F_q for q = p^d <= 2^16.
//!
//! Elements are encoded as integers in `0..q`: the base-p digits of an
//! element are the coefficients of its residue polynomial, lowest degree
//! first. Multiplication goes through discrete log tables.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type Elem = u32;

const MAX_ORDER: u64 = 1 << 16;

struct Inner {
    p: u32,
    d: u32,
    q: u32,
    /// Coefficients of the monic modulus, lowest degree first, length d+1.
    modulus: Vec<u32>,
    exp: Vec<Elem>,
    log: Vec<u32>,
}

#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.q == other.0.q
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let d = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * d];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for k in (d..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for i in 0..d {
            let sub = c * modulus[i] as u64 % p as u64;
            prod[k - d + i] = (prod[k - d + i] + p as u64 - sub) % p as u64;
        }
    }
    prod.truncate(d);
    prod.into_iter().map(|c| c as u32).collect()
}

/// Remainder of `a` modulo monic-or-not `b` over F_p; both lowest degree first.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let db = b.len() - 1;
    let lead_inv = pow_mod(b[db] as u64, p as u64 - 2, p as u64);
    while r.len() > db {
        let top = *r.last().unwrap();
        if top != 0 {
            let c = top * lead_inv % p as u64;
            let shift = r.len() - 1 - db;
            for i in 0..=db {
                let sub = c * b[i] as u64 % p as u64;
                r[shift + i] = (r[shift + i] + p as u64 - sub) % p as u64;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn digits(mut x: u32, p: u32, d: u32) -> Vec<u32> {
    (0..d)
        .map(|_| {
            let c = x % p;
            x /= p;
            c
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let d = f.len() - 1;
    for k in 1..=d / 2 {
        let count = (p as u64).pow(k as u32);
        for lower in 0..count {
            let mut g = digits(lower as u32, p, k as u32);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    pub fn new(q: u64) -> Result<Field> {
        if !(2..=MAX_ORDER).contains(&q) {
            if q < 2 {
                return Err(Error::NotPrimePower {
                    q,
                    factorization: q.to_string(),
                });
            }
            return Err(Error::FieldTooLarge(q));
        }
        let fs = factorize(q);
        if fs.len() != 1 {
            let factorization = fs
                .iter()
                .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
                .collect::<Vec<_>>()
                .join("·");
            return Err(Error::NotPrimePower { q, factorization });
        }
        let (p, d) = (fs[0].0 as u32, fs[0].1);
        let q = q as u32;

        let modulus = if d == 1 {
            vec![0, 1]
        } else {
            let count = q;
            (0..count)
                .map(|lower| {
                    let mut m = digits(lower, p, d);
                    m.push(1);
                    m
                })
                .find(|m| is_irreducible(m, p))
                .expect("an irreducible polynomial of every degree exists")
        };

        let mul_raw = |a: u32, b: u32| -> u32 {
            if d == 1 {
                ((a as u64 * b as u64) % p as u64) as u32
            } else {
                undigits(&poly_mulmod(&digits(a, p, d), &digits(b, p, d), &modulus, p), p)
            }
        };

        let order = q - 1;
        let prime_divisors: Vec<u32> = factorize(order as u64).iter().map(|&(r, _)| r as u32).collect();
        let pow_raw = |g: u32, mut e: u32| -> u32 {
            let (mut r, mut b) = (1u32, g);
            while e > 0 {
                if e & 1 == 1 {
                    r = mul_raw(r, b);
                }
                b = mul_raw(b, b);
                e >>= 1;
            }
            r
        };
        let gen = (1..q)
            .find(|&g| prime_divisors.iter().all(|&r| pow_raw(g, order / r) != 1))
            .expect("multiplicative group is cyclic");

        let mut exp = vec![0; 2 * order as usize];
        let mut log = vec![0; q as usize];
        let mut x = 1;
        for i in 0..order as usize {
            exp[i] = x;
            exp[i + order as usize] = x;
            log[x as usize] = i as u32;
            x = mul_raw(x, gen);
        }

        Ok(Field(Arc::new(Inner { p, d, q, modulus, exp, log })))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.d
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Monic modulus coefficients, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p;
        if self.0.d == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b, mut r, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            r += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        r
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.0.p;
        if self.0.d == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let (mut a, mut r, mut place) = (a, 0, 1);
        while a > 0 {
            r += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        r
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let i = &self.0;
        i.exp[(i.log[a as usize] + i.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let i = &self.0;
        let order = i.q - 1;
        Some(i.exp[((order - i.log[a as usize]) % order) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, e: i64) -> Option<Elem> {
        if a == 0 {
            return match e {
                0 => Some(1),
                e if e > 0 => Some(0),
                _ => None,
            };
        }
        let order = (self.0.q - 1) as i64;
        let l = (self.0.log[a as usize] as i64 * e).rem_euclid(order);
        Some(self.0.exp[l as usize])
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.0.p as i64) as Elem
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.0.q
    }
}

/// |GL_n(F_q)| = prod_{i<n} (q^n - q^i).
pub fn gl_order(n: u32, q: u64) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    let q = BigInt::from(q);
    let qn = num_traits::pow(q.clone(), n as usize);
    (0..n).fold(BigInt::from(1), |acc, i| acc * (&qn - num_traits::pow(q.clone(), i as usize)))
}
