//! Table-driven arithmetic in GF(p^h).
//!
//! Elements are the integers `0..q`, read as base-`p` digit vectors of a
//! polynomial modulo the reduction polynomial (digit `i` is the coefficient
//! of `x^i`). In particular `0` and `1` are the zero and identity.

use crate::error::{Error, Result};

/// A field element in its integer encoding.
pub type Elem = u16;

pub const DEFAULT_MAX_ORDER: u32 = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootProfile {
    TwoRoots,
    OneRoot,
    NoRoot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Immutable arithmetic context for GF(q), q = p^h.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    h: u32,
    q: u32,
    reduction_poly: Vec<u32>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    log: Vec<u32>,
    exp: Vec<Elem>,
    square: Vec<bool>,
    trace: Vec<Elem>,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("h", &self.h)
            .field("reduction_poly", &self.reduction_poly)
            .finish()
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, h)` with `q = p^h`.
pub fn prime_power(q: u32) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    let mut rest = q;
    let mut h = 0;
    while rest % p == 0 {
        rest /= p;
        h += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, h))
}

// Polynomials over GF(p) as coefficient vectors, low degree first.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    // m monic
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p - (lead * c) % p) % p;
        }
        r = trim(r);
    }
    r
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        // every monic polynomial of degree d
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut g = digits(low, p, d);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits(mut n: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(n % p);
        n /= p;
    }
    out
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// The monic irreducible of degree `h` over GF(p) whose coefficient vector
/// `(c_0, .., c_{h-1})` is lexicographically smallest.
pub fn smallest_irreducible(p: u32, h: u32) -> Vec<u32> {
    let h = h as usize;
    let count = p.pow(h as u32);
    // lexicographic on (c_0, c_1, ..) means c_0 is the most significant key
    let mut best: Option<Vec<u32>> = None;
    for n in 0..count {
        let mut low = digits(n, p, h);
        low.reverse();
        let mut f = low.clone();
        f.push(1);
        if h > 1 && f[0] == 0 {
            continue;
        }
        if is_irreducible(&f, p) {
            best = Some(f);
            break;
        }
        let _ = low;
    }
    best.expect("an irreducible polynomial of every degree exists")
}

impl FieldCtx {
    pub fn new(p: u32, h: u32) -> Result<Self> {
        Self::with_bound(p, h, DEFAULT_MAX_ORDER)
    }

    pub fn from_order(q: u32) -> Result<Self> {
        let (p, h) = prime_power(q)?;
        Self::new(p, h)
    }

    pub fn with_bound(p: u32, h: u32, bound: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if h == 0 {
            return Err(Error::ZeroDegree);
        }
        let q64 = (p as u64).checked_pow(h).unwrap_or(u64::MAX);
        if q64 > bound as u64 || q64 > u16::MAX as u64 {
            return Err(Error::OrderTooLarge { q: q64, bound });
        }
        let q = q64 as u32;
        let reduction_poly = if h == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, h)
        };
        let hu = h as usize;
        let qs = q as usize;

        let mut add = vec![0; qs * qs];
        let mut neg = vec![0; qs];
        for a in 0..q {
            let da = digits(a, p, hu);
            let dn: Vec<u32> = da.iter().map(|&c| (p - c) % p).collect();
            neg[a as usize] = from_digits(&dn, p) as Elem;
            for b in 0..q {
                let db = digits(b, p, hu);
                let s: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = from_digits(&s, p) as Elem;
            }
        }

        let poly_mul = |a: u32, b: u32| -> u32 {
            let da = digits(a, p, hu);
            let db = digits(b, p, hu);
            let mut prod = vec![0u32; 2 * hu];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let r = poly_rem(&prod, &reduction_poly, p);
            let mut r = r;
            r.resize(hu, 0);
            from_digits(&r, p)
        };

        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            for b in a..q {
                let c = poly_mul(a, b) as Elem;
                mul[a as usize * qs + b as usize] = c;
                mul[b as usize * qs + a as usize] = c;
            }
        }

        // primitive element: smallest element of multiplicative order q-1
        let order_of = |g: usize| -> u32 {
            let mut x = g;
            let mut k = 1;
            while x != 1 {
                x = mul[x * qs + g] as usize;
                k += 1;
            }
            k
        };
        let generator = if q == 2 {
            1
        } else {
            (2..qs).find(|&g| order_of(g) == q - 1).unwrap()
        };
        let mut exp = vec![0 as Elem; qs];
        let mut log = vec![0u32; qs];
        let mut x = 1usize;
        for k in 0..(q - 1) {
            exp[k as usize] = x as Elem;
            log[x] = k;
            x = mul[x * qs + generator] as usize;
        }
        let mut inv = vec![0 as Elem; qs];
        for a in 1..qs {
            let k = log[a];
            inv[a] = exp[((q - 1 - k) % (q - 1)) as usize];
        }

        let mut square = vec![false; qs];
        for b in 0..qs {
            square[mul[b * qs + b] as usize] = true;
        }

        let mut ctx = FieldCtx {
            p,
            h,
            q,
            reduction_poly,
            add,
            mul,
            neg,
            inv,
            log,
            exp,
            square,
            trace: vec![0; qs],
        };
        for a in 0..qs {
            let mut t = 0 as Elem;
            let mut x = a as Elem;
            for _ in 0..h {
                t = ctx.add(t, x);
                x = ctx.pow(x, p as u64);
            }
            debug_assert!((t as u32) < p);
            ctx.trace[a] = t;
        }
        Ok(ctx)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }
    #[inline]
    pub fn h(&self) -> u32 {
        self.h
    }
    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn reduction_poly(&self) -> &[u32] {
        &self.reduction_poly
    }
    pub fn parity(&self) -> Parity {
        if self.p == 2 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
    pub fn is_odd(&self) -> bool {
        self.p != 2
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        0..self.q as Elem
    }

    pub fn element(&self, v: u32) -> Result<Elem> {
        if v < self.q {
            Ok(v as Elem)
        } else {
            Err(Error::BadElement(v))
        }
    }

    /// Image of the integer `n` under Z -> GF(p) <= GF(q).
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as Elem
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }
    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q as usize + b as usize]
    }
    /// Multiplicative inverse; `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }
    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(b != 0);
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc: Elem = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn primitive(&self) -> Elem {
        if self.q == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    /// Discrete log to the primitive element, `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// Zero counts as a square.
    #[inline]
    pub fn is_square(&self, a: Elem) -> bool {
        self.square[a as usize]
    }

    #[inline]
    pub fn is_nonzero_square(&self, a: Elem) -> bool {
        a != 0 && self.square[a as usize]
    }

    /// Absolute trace to GF(p), as an element of the prime subfield.
    #[inline]
    pub fn trace(&self, a: Elem) -> Elem {
        self.trace[a as usize]
    }

    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p as u64)
    }

    /// Root count of `alpha x^2 + beta x + gamma` over GF(q).
    pub fn quadratic_root_profile(&self, alpha: Elem, beta: Elem, gamma: Elem) -> Result<RootProfile> {
        if alpha == 0 {
            return Err(Error::ZeroLeadingCoefficient);
        }
        if self.is_odd() {
            let four = self.from_int(4);
            let disc = self.sub(self.mul(beta, beta), self.mul(four, self.mul(alpha, gamma)));
            Ok(if disc == 0 {
                RootProfile::OneRoot
            } else if self.is_square(disc) {
                RootProfile::TwoRoots
            } else {
                RootProfile::NoRoot
            })
        } else if beta == 0 {
            Ok(RootProfile::OneRoot)
        } else {
            let t = self.div(self.mul(alpha, gamma), self.mul(beta, beta));
            Ok(if self.trace(t) == 0 {
                RootProfile::TwoRoots
            } else {
                RootProfile::NoRoot
            })
        }
    }

    /// Smallest non-square in element order (odd q only).
    pub fn first_nonsquare(&self) -> Option<Elem> {
        self.elements().find(|&a| !self.is_square(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_roots(f: &FieldCtx, a: Elem, b: Elem, c: Elem) -> usize {
        f.elements()
            .filter(|&x| f.add(f.add(f.mul(a, f.mul(x, x)), f.mul(b, x)), c) == 0)
            .count()
    }

    #[test]
    fn small_fields() {
        let f2 = FieldCtx::new(2, 1).unwrap();
        assert_eq!(f2.add(1, 1), 0);
        let f3 = FieldCtx::new(3, 1).unwrap();
        assert_eq!(f3.mul(2, 2), 1);
        let f4 = FieldCtx::new(2, 2).unwrap();
        assert_eq!(f4.reduction_poly(), &[1, 1, 1]);
        // omega = x, encoded as 2
        let w = 2;
        assert_eq!(f4.mul(w, w), f4.add(w, 1));
    }

    #[test]
    fn reduction_polynomial_choice() {
        // x^3 + x^2 + 1 beats x^3 + x + 1 when c_1 is compared before c_2
        assert_eq!(FieldCtx::new(2, 3).unwrap().reduction_poly(), &[1, 0, 1, 1]);
        assert_eq!(FieldCtx::new(3, 2).unwrap().reduction_poly(), &[1, 0, 1]);
        for (p, h) in [(2, 4), (2, 5), (3, 3), (5, 2), (7, 2), (2, 9)] {
            let f = FieldCtx::new(p, h).unwrap();
            assert!(is_irreducible(f.reduction_poly(), p));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldCtx::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(FieldCtx::new(2, 10), Err(Error::OrderTooLarge { .. })));
        assert_eq!(FieldCtx::new(3, 0).unwrap_err(), Error::ZeroDegree);
        assert_eq!(prime_power(12).unwrap_err(), Error::NotPrimePower(12));
        assert_eq!(prime_power(27).unwrap(), (3, 3));
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2u32, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = FieldCtx::from_order(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
            // Frobenius is an automorphism
            let img: std::collections::BTreeSet<_> = f.elements().map(|a| f.frobenius(a)).collect();
            assert_eq!(img.len(), q as usize);
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                }
            }
        }
    }

    #[test]
    fn squares() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        assert!(!f3.is_square(2));
        let f4 = FieldCtx::new(2, 2).unwrap();
        assert!(f4.elements().all(|a| f4.is_square(a)));
        let f7 = FieldCtx::new(7, 1).unwrap();
        let sq: Vec<Elem> = {
            let mut s: Vec<Elem> = f7.elements().map(|b| f7.mul(b, b)).collect();
            s.sort();
            s.dedup();
            s
        };
        assert_eq!(sq, vec![0, 1, 2, 4]);
        assert!(!f7.is_square(3));
        for q in [3u32, 5, 7, 9, 11, 25, 27] {
            let f = FieldCtx::from_order(q).unwrap();
            assert_eq!(f.elements().filter(|&a| f.is_square(a)).count() as u32, (q + 1) / 2);
        }
        for q in [2u32, 8, 32] {
            let f = FieldCtx::from_order(q).unwrap();
            assert_eq!(f.elements().filter(|&a| f.is_square(a)).count() as u32, q);
        }
    }

    #[test]
    fn trace_properties() {
        let f2 = FieldCtx::new(2, 1).unwrap();
        assert_eq!(f2.trace(1), 1);
        let f4 = FieldCtx::new(2, 2).unwrap();
        assert_eq!(f4.trace(2), 1);
        let f8 = FieldCtx::new(2, 3).unwrap();
        assert_eq!(f8.trace(0), 0);
        for q in [4u32, 8, 9, 16, 25, 27] {
            let f = FieldCtx::from_order(q).unwrap();
            let mut hit = vec![false; f.p() as usize];
            for a in f.elements() {
                hit[f.trace(a) as usize] = true;
                assert_eq!(f.trace(f.frobenius(a)), f.trace(a));
                for b in f.elements() {
                    assert_eq!(f.trace(f.add(a, b)), f.add(f.trace(a), f.trace(b)));
                }
                for c in 0..f.p() as Elem {
                    assert_eq!(f.trace(f.mul(c, a)), f.mul(c, f.trace(a)));
                }
            }
            assert!(hit.iter().all(|&x| x));
        }
    }

    #[test]
    fn quadratic_profiles() {
        let f2 = FieldCtx::new(2, 1).unwrap();
        assert_eq!(f2.quadratic_root_profile(1, 0, 1).unwrap(), RootProfile::OneRoot);
        assert_eq!(f2.quadratic_root_profile(1, 1, 1).unwrap(), RootProfile::NoRoot);
        let f3 = FieldCtx::new(3, 1).unwrap();
        assert_eq!(f3.quadratic_root_profile(1, 0, 1).unwrap(), RootProfile::NoRoot);
        assert_eq!(f3.quadratic_root_profile(0, 1, 1).unwrap_err(), Error::ZeroLeadingCoefficient);
        for q in [2u32, 3, 4, 5, 7, 8, 9] {
            let f = FieldCtx::from_order(q).unwrap();
            for a in 1..q as Elem {
                for b in f.elements() {
                    for c in f.elements() {
                        let want = match brute_roots(&f, a, b, c) {
                            0 => RootProfile::NoRoot,
                            1 => RootProfile::OneRoot,
                            2 => RootProfile::TwoRoots,
                            n => panic!("{n} roots"),
                        };
                        assert_eq!(f.quadratic_root_profile(a, b, c).unwrap(), want, "q={q} {a} {b} {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn random_axioms_large() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for q in [64u32, 81, 125, 243, 256, 343, 512] {
            let f = FieldCtx::from_order(q).unwrap();
            for _ in 0..2000 {
                let a = rng.gen_range(0..q) as Elem;
                let b = rng.gen_range(0..q) as Elem;
                let c = rng.gen_range(0..q) as Elem;
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
            }
        }
    }
}
