//! Coordinate arithmetic for the two graph families.
//!
//! [`FieldCtx`] realises `F_q²` as `F_p[t] / (f)` where `f` is the
//! lexicographically smallest monic irreducible polynomial of degree `2m`
//! (`q = p^m`). Elements are integers in `[0, q²)` whose base-`p` digits are
//! the polynomial coefficients, lowest degree first. The subfield `F_q` is the
//! fixed field of the Frobenius map `y ↦ y^q`, so point coordinates `a, c`
//! are plain elements of `F_q²` and mix with `b, x, y` without embeddings.
//!
//! [`RingCtx`] carries the modulus `n` for the `Z_n² / Z_n` family.

use std::fmt;

use crate::{Error, Result};

/// Largest subfield order accepted by [`FieldCtx::new`]. Addition and
/// multiplication are tabulated, which costs `2·q⁴` 16-bit entries.
pub const MAX_FIELD_ORDER: u32 = 32;

/// Splits `q` into `(p, m)` with `q = p^m` and `p` prime.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// Dense polynomials over `F_p`, coefficients lowest degree first.
mod poly {
    pub(super) fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        // p is prime and small; Fermat is plenty.
        let mut result = 1u64;
        let mut base = a as u64 % p as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        result as u32
    }

    pub(super) fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let factor = r[r.len() - 1] * lead_inv % p;
            for (i, &c) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p * p - factor * c % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub(super) fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(&out, m, p)
    }

    pub(super) fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let len = a.len().max(b.len());
        let mut out: Vec<u32> = (0..len)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub(super) fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// No factor of degree `<= deg/2` means irreducible: checks
    /// `gcd(f, x^(p^k) - x) = 1` for every `k <= deg/2`.
    pub(super) fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        if deg == 0 {
            return false;
        }
        if f[0] == 0 {
            // divisible by x
            return deg == 1;
        }
        let x = vec![0, 1];
        let mut power = rem(&x, f, p);
        for _ in 1..=deg / 2 {
            // power <- power^p
            let mut acc = vec![1];
            for _ in 0..p {
                acc = mul_mod(&acc, &power, f, p);
            }
            power = acc;
            let g = gcd(f, &sub(&power, &x, p), p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

/// Arithmetic context for `F_q²` together with its subfield `F_q`.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    m: u32,
    q: u32,
    order: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    frob: Vec<u16>,
    subfield: Vec<u32>,
    subfield_pos: Vec<Option<u16>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("q", &self.q)
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus_string())
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// Builds `F_q²` for a prime power `q`.
    pub fn new(q: u32) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        let degree = 2 * m as usize;
        let order = q * q;
        let modulus = smallest_irreducible(p, degree);

        let digits = |v: u32| -> Vec<u32> {
            let mut v = v;
            (0..degree)
                .map(|_| {
                    let d = v % p;
                    v /= p;
                    d
                })
                .collect()
        };
        let encode = |c: &[u32]| -> u32 { c.iter().rev().fold(0, |acc, &d| acc * p + d) };

        let all_digits: Vec<Vec<u32>> = (0..order).map(digits).collect();
        let n = order as usize;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in a..n {
                let s: Vec<u32> = all_digits[a].iter().zip(&all_digits[b]).map(|(x, y)| (x + y) % p).collect();
                let s = encode(&s) as u16;
                add[a * n + b] = s;
                add[b * n + a] = s;

                let mut da = all_digits[a].clone();
                let mut db = all_digits[b].clone();
                poly::trim(&mut da);
                poly::trim(&mut db);
                let prod = encode(&poly::mul_mod(&da, &db, &modulus, p)) as u16;
                mul[a * n + b] = prod;
                mul[b * n + a] = prod;
            }
        }
        let neg: Vec<u16> = (0..n).map(|a| (0..n).find(|&b| add[a * n + b] == 0).unwrap() as u16).collect();
        let mut inv = vec![0u16; n];
        for a in 1..n {
            inv[a] = (1..n).find(|&b| mul[a * n + b] == 1).unwrap() as u16;
        }

        let mut ctx = FieldCtx {
            p,
            m,
            q,
            order,
            modulus,
            add,
            mul,
            neg,
            inv,
            frob: Vec::new(),
            subfield: Vec::new(),
            subfield_pos: Vec::new(),
        };
        ctx.frob = (0..order).map(|y| ctx.pow(y, q as u64) as u16).collect();
        ctx.subfield = (0..order).filter(|&y| ctx.frob[y as usize] as u32 == y).collect();
        ctx.subfield_pos = vec![None; n];
        for (i, &e) in ctx.subfield.iter().enumerate() {
            ctx.subfield_pos[e as usize] = Some(i as u16);
        }
        debug_assert_eq!(ctx.subfield.len(), q as usize);
        Ok(ctx)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Order of the subfield `F_q`.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Order of the whole field, `q²`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients of the defining polynomial, lowest degree first (monic).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Human-readable form of the modulus, e.g. `t^2+1`.
    pub fn modulus_string(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => var,
                _ => format!("{c}{var}"),
            });
        }
        terms.join("+")
    }

    /// Element whose polynomial is `t` (the class of the indeterminate).
    pub fn generator_t(&self) -> u32 {
        self.p
    }

    pub fn contains(&self, x: u32) -> bool {
        x < self.order
    }

    #[inline]
    fn idx(&self, a: u32, b: u32) -> usize {
        a as usize * self.order as usize + b as usize
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[self.idx(a, b)] as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize] as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[self.idx(a, b)] as u32
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.inv[a as usize] as u32)
    }

    /// `a^e` by square-and-multiply.
    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The Frobenius automorphism `y ↦ y^q` of `F_q²`.
    #[inline]
    pub fn frobenius(&self, y: u32) -> u32 {
        self.frob[y as usize] as u32
    }

    /// `a·y + a·y^q`, i.e. `a·Tr(y)`; always lands in `F_q`.
    pub fn trace_term(&self, a: u32, y: u32) -> Result<u32> {
        if !self.is_subfield(a) {
            return Err(Error::NotInDomain { value: a, domain: "F_q" });
        }
        Ok(self.trace_term_unchecked(a, y))
    }

    #[inline]
    pub(crate) fn trace_term_unchecked(&self, a: u32, y: u32) -> u32 {
        self.mul(a, self.add(y, self.frobenius(y)))
    }

    /// Elements fixed by Frobenius, ascending by encoding.
    pub fn subfield_elements(&self) -> &[u32] {
        &self.subfield
    }

    pub fn is_subfield(&self, x: u32) -> bool {
        self.subfield_index(x).is_some()
    }

    /// Position of `x` within [`subfield_elements`](Self::subfield_elements).
    #[inline]
    pub fn subfield_index(&self, x: u32) -> Option<usize> {
        self.subfield_pos.get(x as usize).copied().flatten().map(usize::from)
    }
}

fn smallest_irreducible(p: u32, degree: usize) -> Vec<u32> {
    // Enumerate (c_{d-1}, ..., c_0) lexicographically, high degree first.
    let count = (p as u64).pow(degree as u32);
    for code in 0..count {
        let mut f = vec![0u32; degree + 1];
        f[degree] = 1;
        let mut v = code;
        for c in f.iter_mut().take(degree) {
            *c = (v % p as u64) as u32;
            v /= p as u64;
        }
        // `code`'s most significant digit is c_{d-1}, so ascending code order
        // is the high-degree-first lexicographic order.
        if poly::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Modulus context for `Z_n²` (big coordinates) and `Z_n` (small ones).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RingCtx {
    n: u32,
    n2: u32,
}

impl RingCtx {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::RingTooSmall(n));
        }
        n.checked_mul(n).ok_or(Error::Spec(format!("ring modulus {n} too large")))?;
        Ok(RingCtx { n, n2: n * n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `n²`
    pub fn big_order(&self) -> u32 {
        self.n2
    }

    #[inline]
    pub fn reduce_big(&self, v: u64) -> u32 {
        (v % self.n2 as u64) as u32
    }

    #[inline]
    pub fn reduce_small(&self, v: u64) -> u32 {
        (v % self.n as u64) as u32
    }

    #[inline]
    pub fn add_big(&self, a: u32, b: u32) -> u32 {
        self.reduce_big(a as u64 + b as u64)
    }

    #[inline]
    pub fn sub_big(&self, a: u32, b: u32) -> u32 {
        self.reduce_big(a as u64 + self.n2 as u64 - (b % self.n2) as u64)
    }

    #[inline]
    pub fn mul_big(&self, a: u32, b: u32) -> u32 {
        self.reduce_big(a as u64 * b as u64)
    }

    #[inline]
    pub fn sub_small(&self, a: u32, b: u32) -> u32 {
        self.reduce_small(a as u64 + self.n as u64 - (b % self.n) as u64)
    }

    /// `y^n mod n²`.
    pub fn pow_n(&self, y: u32) -> u32 {
        let mut acc = 1u64;
        let modulus = self.n2 as u64;
        let mut base = y as u64 % modulus;
        let mut e = self.n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % modulus;
            }
            base = base * base % modulus;
            e >>= 1;
        }
        acc as u32
    }

    /// `(a·y + a·y^n) mod n`, with the power taken mod `n²` first.
    #[inline]
    pub fn trace_term(&self, a: u32, y: u32) -> u32 {
        let s = y as u64 + self.pow_n(y) as u64;
        self.reduce_small(a as u64 * s)
    }
}
