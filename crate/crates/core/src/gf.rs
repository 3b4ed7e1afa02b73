//! Small finite fields GF(q), q = p^e ≤ 512, via exp/log tables.
//!
//! Elements are the integers `0..q`; the base-`p` digits of an element are the
//! coefficients of its polynomial representative (least significant first).

use crate::error::{invalid, Result};

pub const MAX_ORDER: usize = 512;

#[derive(Debug, Clone)]
pub struct GaloisField {
    q: usize,
    p: usize,
    exp: Vec<u16>,
    log: Vec<u16>,
}

/// `Some((p, e))` when `q = p^e` with `p` prime.
pub fn prime_power(q: usize) -> Option<(usize, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

impl GaloisField {
    pub fn new(q: usize) -> Result<Self> {
        if q > MAX_ORDER {
            return Err(invalid(format!("field order {q} above {MAX_ORDER}")));
        }
        let (p, e) = prime_power(q).ok_or_else(|| invalid(format!("{q} is not a prime power")))?;
        // Try monic degree-e polynomials until x generates the multiplicative group.
        for tail in 0..q {
            if let Some(f) = Self::try_modulus(q, p, e as usize, tail) {
                return Ok(f);
            }
        }
        Err(invalid(format!("no primitive polynomial found for GF({q})")))
    }

    /// `tail` encodes the non-leading coefficients of x^e + ….
    fn try_modulus(q: usize, p: usize, e: usize, tail: usize) -> Option<Self> {
        let tail_digits = digits(tail, p, e);
        let gen = if e == 1 { (2..p).find(|&g| is_generator_mod_p(g, p)).unwrap_or(1) } else { p };
        let mut exp = vec![0u16; q - 1];
        let mut log = vec![0u16; q];
        let mut seen = vec![false; q];
        let mut cur = 1usize;
        for (i, slot) in exp.iter_mut().enumerate() {
            if seen[cur] {
                return None;
            }
            seen[cur] = true;
            *slot = cur as u16;
            log[cur] = i as u16;
            cur = if e == 1 { cur * gen % p } else { times_x(cur, p, e, &tail_digits) };
        }
        (cur == 1).then_some(GaloisField { q, p, exp, log })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.p == self.q {
            return (a + b) % self.q;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = (self.log[a] as usize + self.log[b] as usize) % (self.q - 1);
        self.exp[s] as usize
    }

    /// Nonzero squares, ascending.
    pub fn nonzero_squares(&self) -> Vec<usize> {
        let mut sq: Vec<usize> = (1..self.q).map(|a| self.mul(a, a)).collect();
        sq.sort_unstable();
        sq.dedup();
        sq
    }
}

fn digits(mut x: usize, p: usize, len: usize) -> Vec<usize> {
    (0..len)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

/// Multiplies `a` by x modulo x^e − (−tail) over GF(p).
fn times_x(a: usize, p: usize, e: usize, tail: &[usize]) -> usize {
    let mut d = digits(a, p, e);
    let top = d[e - 1];
    for i in (1..e).rev() {
        d[i] = d[i - 1];
    }
    d[0] = 0;
    // x^e ≡ −tail
    for (di, &ti) in d.iter_mut().zip(tail) {
        *di = (*di + (p - ti) * top) % p;
    }
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn is_generator_mod_p(g: usize, p: usize) -> bool {
    let mut cur = 1;
    for i in 1..p {
        cur = cur * g % p;
        if cur == 1 {
            return i == p - 1;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_field(q: usize) {
        let f = GaloisField::new(q).unwrap();
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in [0, 1, q - 1] {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
            if a != 0 {
                assert!((1..q).any(|b| f.mul(a, b) == 1));
            }
        }
    }

    #[test]
    fn pipeline_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27] {
            check_field(q);
        }
    }

    #[test]
    fn large_field_builds() {
        let f = GaloisField::new(512).unwrap();
        assert_eq!(f.nonzero_squares().len(), 511);
        let f = GaloisField::new(343).unwrap();
        assert_eq!(f.nonzero_squares().len(), 171);
    }

    #[test]
    fn rejects_non_prime_powers() {
        for q in [0, 1, 6, 10, 12, 1024] {
            assert!(GaloisField::new(q).is_err());
        }
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(10), None);
    }
}
