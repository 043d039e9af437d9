//! Finite fields `F_{p^k}` for `p ∈ {2, 3}`, `k ≤ 12`, built from Conway polynomials.
//!
//! An element is stored as a `u32` whose base-`p` digits are the coefficients
//! of a polynomial in the Conway root `x`. Multiplication goes through
//! discrete log tables. Because Conway polynomials are compatible, the field
//! of degree `d` embeds in the field of degree `k` (for `d | k`) by sending
//! `x` to `x^((p^k - 1)/(p^d - 1))`.

use crate::error::{Error, Result};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub const MAX_DEGREE: u32 = 12;

/// Conway polynomials, coefficients from the constant term upward.
fn conway(p: u32, k: u32) -> Option<&'static [u32]> {
    const P2: [&[u32]; 12] = [
        &[1, 1],
        &[1, 1, 1],
        &[1, 1, 0, 1],
        &[1, 1, 0, 0, 1],
        &[1, 0, 1, 0, 0, 1],
        &[1, 1, 0, 1, 1, 0, 1],
        &[1, 1, 0, 0, 0, 0, 0, 1],
        &[1, 0, 1, 1, 1, 0, 0, 0, 1],
        &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1],
        &[1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1],
        &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1],
        &[1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1],
    ];
    const P3: [&[u32]; 12] = [
        &[1, 1],
        &[2, 2, 1],
        &[1, 2, 0, 1],
        &[2, 0, 0, 2, 1],
        &[1, 2, 0, 0, 0, 1],
        &[2, 2, 1, 0, 2, 0, 1],
        &[1, 0, 2, 0, 0, 0, 0, 1],
        &[2, 2, 2, 0, 1, 2, 0, 0, 1],
        &[1, 1, 2, 2, 0, 0, 0, 0, 0, 1],
        &[2, 1, 0, 0, 2, 2, 2, 0, 0, 0, 1],
        &[1, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 1],
        &[2, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 0, 1],
    ];
    if !(1..=MAX_DEGREE).contains(&k) {
        return None;
    }
    match p {
        2 => Some(P2[k as usize - 1]),
        3 => Some(P3[k as usize - 1]),
        _ => None,
    }
}

/// Splits `q = p^e` with `p ∈ {2, 3}`.
pub fn split_prime_power(q: u32) -> Result<(u32, u32)> {
    for p in [2u32, 3] {
        let (mut x, mut e) = (q, 0);
        while x > 1 && x % p == 0 {
            x /= p;
            e += 1;
        }
        if x == 1 && e > 0 {
            return Ok((p, e));
        }
    }
    Err(Error::UnsupportedField(format!(
        "q = {q} is not a power of 2 or 3"
    )))
}

#[derive(Debug)]
pub struct GaloisField {
    pub p: u32,
    pub k: u32,
    pub size: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

type Cache = Mutex<HashMap<(u32, u32), Arc<GaloisField>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl GaloisField {
    /// Shared instance of `F_{p^k}`.
    pub fn get(p: u32, k: u32) -> Result<Arc<GaloisField>> {
        let key = (p, k);
        if let Some(f) = cache().lock().expect("field cache").get(&key) {
            return Ok(f.clone());
        }
        let f = Arc::new(Self::build(p, k)?);
        Ok(cache()
            .lock()
            .expect("field cache")
            .entry(key)
            .or_insert(f)
            .clone())
    }

    fn build(p: u32, k: u32) -> Result<GaloisField> {
        let poly = conway(p, k)
            .ok_or_else(|| Error::UnsupportedField(format!("F_{p}^{k} is outside the table")))?;
        let size = p.pow(k);
        let order = (size - 1) as usize;
        let mut exp = Vec::with_capacity(2 * order);
        let mut log = vec![u32::MAX; size as usize];
        let mut digits = vec![0u32; k as usize];
        digits[0] = 1;
        for i in 0..order {
            let v = encode(p, &digits);
            if log[v as usize] != u32::MAX {
                return Err(Error::UnsupportedField(format!(
                    "Conway polynomial for F_{p}^{k} is not primitive"
                )));
            }
            log[v as usize] = i as u32;
            exp.push(v);
            // Multiply by x and reduce with x^k = -Σ c_i x^i.
            let top = digits[k as usize - 1];
            for j in (1..k as usize).rev() {
                digits[j] = digits[j - 1];
            }
            digits[0] = 0;
            for (j, d) in digits.iter_mut().enumerate() {
                *d = (*d + (p - poly[j] % p) * top) % p;
            }
        }
        if encode(p, &digits) != 1 {
            return Err(Error::UnsupportedField(format!(
                "generator of F_{p}^{k} has the wrong order"
            )));
        }
        let doubled: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();
        Ok(GaloisField {
            p,
            k,
            size,
            exp: doubled,
            log,
        })
    }

    fn order(&self) -> u32 {
        self.size - 1
    }

    pub fn digits(&self, x: u32) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.k as usize);
        let mut x = x;
        for _ in 0..self.k {
            v.push(x % self.p);
            x /= self.p;
        }
        v
    }

    pub fn from_digits(&self, d: &[u32]) -> u32 {
        encode(self.p, d)
    }

    /// The Conway root `x`.
    pub fn generator(&self) -> u32 {
        if self.k == 1 {
            self.exp[1]
        } else {
            self.p
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % 3 + b % 3) % 3) * place;
            a /= 3;
            b /= 3;
            place *= 3;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += ((3 - a % 3) % 3) * place;
            a /= 3;
            place *= 3;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let l = self.log[a as usize];
        Some(self.exp[((self.order() - l) % self.order()) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u64 * (e % self.order() as u64);
        self.exp[(l % self.order() as u64) as usize]
    }

    /// `a^(p^e)`.
    pub fn frob(&self, a: u32, e: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let mut l = self.log[a as usize] as u64;
        for _ in 0..e % self.k {
            l = l * self.p as u64 % self.order() as u64;
        }
        self.exp[l as usize]
    }

    /// Image of `a ∈ small` under the Conway-compatible embedding.
    pub fn embed(&self, small: &GaloisField, a: u32) -> Result<u32> {
        if small.p != self.p || self.k % small.k != 0 {
            return Err(Error::UnsupportedField(format!(
                "F_{}^{} does not embed in F_{}^{}",
                small.p, small.k, self.p, self.k
            )));
        }
        if a == 0 {
            return Ok(0);
        }
        let step = (self.order() / small.order()) as u64;
        let l = small.log[a as usize] as u64 * step % self.order() as u64;
        Ok(self.exp[l as usize])
    }

    /// Elements of the prime field embed as constant polynomials.
    pub fn from_prime(&self, c: u32) -> u32 {
        c % self.p
    }
}

fn encode(p: u32, digits: &[u32]) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}
