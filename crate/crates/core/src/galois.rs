//! Arithmetic over GF(p) and GF(p^m), plus the univariate polynomial
//! utilities BCH code design needs.
//!
//! Extension elements are coefficient vectors over GF(p); the field modulus
//! is the lexicographically least monic irreducible of the requested degree,
//! and the designated generator is the least element of full multiplicative
//! order, so every derived code is reproducible across runs.

use crate::error::{Error, Result};

/// Returns true iff `n` is prime (trial division; inputs are desk scale).
pub fn is_prime(n: u64) -> bool {
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

/// Least prime `>= bound`.
pub fn smallest_prime_at_least(bound: u64) -> u64 {
    let mut n = bound.max(2);
    while !is_prime(n) {
        n += 1;
    }
    n
}

/// Prime factors of `n`, each listed once.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The cyclotomic coset `{s·p^j mod n : j >= 0}`, sorted.
pub fn cyclotomic_coset(p: u64, n: u64, s: u64) -> Vec<u64> {
    assert!(n > 0, "coset modulus must be positive");
    let mut coset = vec![s % n];
    let mut cur = (s % n * (p % n)) % n;
    while cur != s % n {
        coset.push(cur);
        cur = (cur * (p % n)) % n;
    }
    coset.sort_unstable();
    coset
}

/// The prime field GF(p).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        PrimeField { p }
    }

    pub fn order(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a % self.p == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.p - 2))
    }
}

/// Polynomial over GF(p), ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly(Vec<u64>);

impl Poly {
    pub fn new(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![1])
    }

    /// The monomial x^k.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        Poly(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0 by convention of callers
    /// guarding on `is_zero` first.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.0.last() == Some(&1)
    }

    pub fn add(&self, other: &Poly, f: &PrimeField) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::new((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly, f: &PrimeField) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::new((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn mul(&self, other: &Poly, f: &PrimeField) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u64; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: u64, f: &PrimeField) -> Poly {
        Poly::new(self.0.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, divisor: &Poly, f: &PrimeField) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dlead = *divisor.0.last().unwrap();
        let dinv = f.inv(dlead).expect("leading coefficient is nonzero");
        let mut rem = self.0.clone();
        let ddeg = divisor.degree();
        if rem.len() <= ddeg {
            return (Poly::zero(), Poly::new(rem));
        }
        let mut quot = vec![0u64; rem.len() - ddeg];
        for i in (ddeg..rem.len()).rev() {
            let c = f.mul(rem[i], dinv);
            if c == 0 {
                continue;
            }
            quot[i - ddeg] = c;
            for (j, &d) in divisor.0.iter().enumerate() {
                rem[i - ddeg + j] = f.sub(rem[i - ddeg + j], f.mul(c, d));
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly, f: &PrimeField) -> Poly {
        self.div_rem(divisor, f).1
    }

    pub fn eval(&self, x: u64, f: &PrimeField) -> u64 {
        let mut acc = 0u64;
        for &c in self.0.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// Inverse of `self` modulo `modulus` (extended Euclid). Fails when the
    /// two are not coprime.
    pub fn inv_mod(&self, modulus: &Poly, f: &PrimeField) -> Result<Poly> {
        let (mut r0, mut r1) = (modulus.clone(), self.rem(modulus, f));
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1, f);
            let t = t0.sub(&q.mul(&t1, f), f);
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        if r0.degree() != 0 || r0.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let scale = f.inv(r0.coeff(0))?;
        Ok(t0.scale(scale, f).rem(modulus, f))
    }
}

/// Lexicographically least monic irreducible of degree `m` over GF(p).
/// Candidates are ordered by reading the non-leading coefficients as a
/// base-p number, constant term least significant.
pub fn find_irreducible(p: u64, m: usize) -> Poly {
    let f = PrimeField::new(p);
    assert!(m >= 1);
    let total = (p as u128).pow(m as u32);
    let mut index = 0u128;
    while index < total {
        let mut coeffs = Vec::with_capacity(m + 1);
        let mut k = index;
        for _ in 0..m {
            coeffs.push((k % p as u128) as u64);
            k /= p as u128;
        }
        coeffs.push(1);
        let candidate = Poly::new(coeffs);
        if is_irreducible(&candidate, &f) {
            return candidate;
        }
        index += 1;
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

/// Trial division by every monic polynomial of degree up to m/2.
fn is_irreducible(poly: &Poly, f: &PrimeField) -> bool {
    let m = poly.degree();
    if m == 0 {
        return false;
    }
    let p = f.order();
    for d in 1..=m / 2 {
        let count = (p as u128).pow(d as u32);
        let mut index = 0u128;
        while index < count {
            let mut coeffs = Vec::with_capacity(d + 1);
            let mut k = index;
            for _ in 0..d {
                coeffs.push((k % p as u128) as u64);
                k /= p as u128;
            }
            coeffs.push(1);
            let divisor = Poly::new(coeffs);
            if poly.rem(&divisor, f).is_zero() {
                return false;
            }
            index += 1;
        }
    }
    true
}

/// Element of GF(p^m): coefficient vector of length m over GF(p).
pub type ExtElem = Vec<u64>;

/// The extension field GF(p^m) realized as GF(p)[x] modulo a deterministic
/// irreducible, with a designated multiplicative generator.
#[derive(Clone, Debug)]
pub struct ExtField {
    base: PrimeField,
    m: usize,
    modulus: Poly,
    alpha: ExtElem,
}

impl ExtField {
    pub fn new(p: u64, m: usize) -> Self {
        let base = PrimeField::new(p);
        let modulus = find_irreducible(p, m);
        let mut field = ExtField {
            base,
            m,
            modulus,
            alpha: vec![0; m],
        };
        field.alpha = field.find_generator();
        field
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// Size of the multiplicative group, p^m - 1.
    pub fn group_order(&self) -> u64 {
        self.base.order().pow(self.m as u32) - 1
    }

    /// The designated generator of the multiplicative group.
    pub fn alpha(&self) -> &ExtElem {
        &self.alpha
    }

    pub fn zero(&self) -> ExtElem {
        vec![0; self.m]
    }

    pub fn one(&self) -> ExtElem {
        self.from_base(1)
    }

    pub fn from_base(&self, c: u64) -> ExtElem {
        let mut e = vec![0; self.m];
        e[0] = c % self.base.order();
        e
    }

    /// Element whose coefficients are the base-p digits of `index`,
    /// constant coordinate least significant.
    pub fn element_from_index(&self, mut index: u64) -> ExtElem {
        let p = self.base.order();
        let mut e = vec![0; self.m];
        for coord in e.iter_mut() {
            *coord = index % p;
            index /= p;
        }
        e
    }

    pub fn is_zero(&self, a: &ExtElem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    /// True iff the element lies in the base field; returns the constant.
    pub fn as_base(&self, a: &ExtElem) -> Option<u64> {
        if a[1..].iter().all(|&c| c == 0) {
            Some(a[0])
        } else {
            None
        }
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.iter().zip(b).map(|(&x, &y)| self.base.add(x, y)).collect()
    }

    pub fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.iter().zip(b).map(|(&x, &y)| self.base.sub(x, y)).collect()
    }

    pub fn neg(&self, a: &ExtElem) -> ExtElem {
        a.iter().map(|&x| self.base.neg(x)).collect()
    }

    pub fn scale(&self, a: &ExtElem, c: u64) -> ExtElem {
        a.iter().map(|&x| self.base.mul(x, c)).collect()
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = &self.base;
        let mut prod = vec![0u64; 2 * self.m - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = f.add(prod[i + j], f.mul(x, y));
            }
        }
        // Fold x^i for i >= m down using x^m = -(modulus tail).
        for i in (self.m..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..self.m {
                let mc = f.mul(c, self.modulus.coeff(j));
                prod[i - self.m + j] = f.sub(prod[i - self.m + j], mc);
            }
        }
        prod.truncate(self.m);
        prod
    }

    pub fn pow(&self, a: &ExtElem, mut exp: u64) -> ExtElem {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &ExtElem) -> Result<ExtElem> {
        if self.is_zero(a) {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.group_order() - 1))
    }

    /// alpha^e with e taken modulo the group order (handles negatives).
    pub fn alpha_pow(&self, e: i64) -> ExtElem {
        let order = self.group_order() as i64;
        let e = e.rem_euclid(order) as u64;
        self.pow(&self.alpha, e)
    }

    fn find_generator(&self) -> ExtElem {
        let order = self.group_order();
        let factors = prime_factors(order);
        let size = order + 1;
        for index in 1..size {
            let candidate = self.element_from_index(index);
            let primitive = factors
                .iter()
                .all(|&q| !self.is_one(&self.pow(&candidate, order / q)));
            if primitive {
                return candidate;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    fn is_one(&self, a: &ExtElem) -> bool {
        a[0] == 1 && a[1..].iter().all(|&c| c == 0)
    }

    /// Monic minimal polynomial of `e` over GF(p): the product of
    /// (x - sigma) over the Frobenius orbit of `e`. Every coefficient of the
    /// product necessarily lands in the base field.
    pub fn minimal_polynomial(&self, e: &ExtElem) -> Poly {
        let p = self.base.order();
        let mut orbit = vec![e.clone()];
        let mut cur = self.pow(e, p);
        while &cur != e {
            orbit.push(cur.clone());
            cur = self.pow(&cur, p);
        }
        // Product of linear factors, coefficients in GF(p^m).
        let mut poly: Vec<ExtElem> = vec![self.one()];
        for sigma in &orbit {
            let mut next = vec![self.zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] = self.add(&next[i + 1], c);
                let shifted = self.mul(c, sigma);
                next[i] = self.sub(&next[i], &shifted);
            }
            poly = next;
        }
        let coeffs = poly
            .iter()
            .map(|c| {
                self.as_base(c)
                    .expect("minimal polynomial coefficients lie in the base field")
            })
            .collect();
        Poly::new(coeffs)
    }
}
