//! Finite fields GF(p^k) with a deterministic modulus.
//!
//! Elements are stored as `Fel(u16)`: the integer whose base-`p` digits are
//! the coefficients of the representing polynomial, low degree first. The
//! modulus is the lexicographically least monic irreducible polynomial of
//! degree `k` over GF(p), so serialized data is reproducible across runs.

use crate::error::{PfsError, PfsResult};
use serde::{Deserialize, Serialize};

/// A field element, valid only relative to the [`Field`] that produced it.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Fel(pub u16);

pub const ZERO: Fel = Fel(0);
pub const ONE: Fel = Fel(1);

/// Largest field order for which full add/mul tables are built.
const TABLE_LIMIT: usize = 512;

#[derive(Debug)]
struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

/// GF(p^k).
#[derive(Debug)]
pub struct Field {
    p: u64,
    k: u32,
    q: usize,
    /// Monic irreducible modulus, coefficients low-to-high, length k+1.
    modulus: Vec<u16>,
    tables: Option<Tables>,
    frob: Vec<u16>,
}

/// Serialized form of a field (enough to reconstruct it deterministically).
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct FieldDesc {
    pub p: u64,
    pub k: u32,
    pub modulus: Vec<u16>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Construct GF(p^k). Fails on non-prime `p` or orders above 2^16.
pub fn make_field(p: u64, k: u32) -> PfsResult<Field> {
    if !is_prime(p) {
        return Err(PfsError::NotPrime(p));
    }
    if k == 0 {
        return Err(PfsError::BadInput("field degree must be positive".into()));
    }
    let q = (p as u128).checked_pow(k).filter(|&q| q <= 1 << 16);
    let Some(q) = q else {
        return Err(PfsError::UnsupportedField { p, k });
    };
    let q = q as usize;
    let modulus = least_irreducible(p, k);
    let mut f = Field {
        p,
        k,
        q,
        modulus,
        tables: None,
        frob: Vec::new(),
    };
    if q <= TABLE_LIMIT {
        f.build_tables();
    }
    f.frob = (0..q)
        .map(|a| f.pow_generic(Fel(a as u16), p).0)
        .collect();
    Ok(f)
}

impl Field {
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    /// Number of elements, p^k.
    pub fn order(&self) -> usize {
        self.q
    }
    pub fn modulus(&self) -> &[u16] {
        &self.modulus
    }
    pub fn desc(&self) -> FieldDesc {
        FieldDesc {
            p: self.p,
            k: self.k,
            modulus: self.modulus.clone(),
        }
    }
    pub fn zero(&self) -> Fel {
        ZERO
    }
    pub fn one(&self) -> Fel {
        ONE
    }
    /// The class of x (a generator of the extension as an algebra over GF(p)).
    pub fn x(&self) -> Fel {
        Fel(self.p as u16)
    }
    pub fn from_u64(&self, n: u64) -> Fel {
        Fel((n % self.p) as u16)
    }
    pub fn elements(&self) -> impl Iterator<Item = Fel> {
        (0..self.q as u16).map(Fel)
    }

    fn digits(&self, a: Fel) -> Vec<u16> {
        let mut v = vec![0u16; self.k as usize];
        let mut n = a.0 as u64;
        for d in v.iter_mut() {
            *d = (n % self.p) as u16;
            n /= self.p;
        }
        v
    }

    fn from_digits(&self, d: &[u16]) -> Fel {
        let mut n = 0u64;
        for &c in d.iter().rev() {
            n = n * self.p + c as u64;
        }
        Fel(n as u16)
    }

    #[inline]
    pub fn add(&self, a: Fel, b: Fel) -> Fel {
        if self.p == 2 {
            return Fel(a.0 ^ b.0);
        }
        if let Some(t) = &self.tables {
            return Fel(t.add[a.0 as usize * self.q + b.0 as usize]);
        }
        self.add_generic(a, b)
    }

    fn add_generic(&self, a: Fel, b: Fel) -> Fel {
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u16> = da
            .iter()
            .zip(&db)
            .map(|(&x, &y)| ((x as u64 + y as u64) % self.p) as u16)
            .collect();
        self.from_digits(&sum)
    }

    #[inline]
    pub fn neg(&self, a: Fel) -> Fel {
        if self.p == 2 {
            return a;
        }
        let d: Vec<u16> = self
            .digits(a)
            .iter()
            .map(|&x| ((self.p - x as u64) % self.p) as u16)
            .collect();
        self.from_digits(&d)
    }

    #[inline]
    pub fn sub(&self, a: Fel, b: Fel) -> Fel {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fel, b: Fel) -> Fel {
        if let Some(t) = &self.tables {
            return Fel(t.mul[a.0 as usize * self.q + b.0 as usize]);
        }
        self.mul_generic(a, b)
    }

    fn mul_generic(&self, a: Fel, b: Fel) -> Fel {
        let (da, db) = (self.digits(a), self.digits(b));
        let k = self.k as usize;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % self.p;
            }
        }
        // reduce modulo the monic modulus
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &m) in self.modulus.iter().enumerate().take(k) {
                let idx = i - k + j;
                prod[idx] = (prod[idx] + c * (self.p - m as u64)) % self.p;
            }
        }
        let d: Vec<u16> = prod[..k].iter().map(|&x| x as u16).collect();
        self.from_digits(&d)
    }

    pub fn pow(&self, a: Fel, e: u64) -> Fel {
        self.pow_generic(a, e)
    }

    fn pow_generic(&self, a: Fel, mut e: u64) -> Fel {
        let mut base = a;
        let mut acc = ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero (a zero divisor here is a bug).
    #[inline]
    pub fn inv(&self, a: Fel) -> Fel {
        assert!(a != ZERO, "inverse of zero");
        if let Some(t) = &self.tables {
            return Fel(t.inv[a.0 as usize]);
        }
        self.pow_generic(a, (self.q - 2) as u64)
    }

    #[inline]
    pub fn div(&self, a: Fel, b: Fel) -> Fel {
        self.mul(a, self.inv(b))
    }

    /// Frobenius x -> x^p.
    #[inline]
    pub fn frobenius(&self, a: Fel) -> Fel {
        Fel(self.frob[a.0 as usize])
    }

    /// i-fold Frobenius x -> x^(p^i).
    pub fn frobenius_iter(&self, a: Fel, i: u32) -> Fel {
        let mut r = a;
        for _ in 0..(i % self.k) {
            r = self.frobenius(r);
        }
        r
    }

    /// Inverse of the i-fold Frobenius (Frobenius has order k).
    pub fn inv_frobenius_iter(&self, a: Fel, i: u32) -> Fel {
        let j = (self.k - (i % self.k)) % self.k;
        self.frobenius_iter(a, j)
    }

    fn build_tables(&mut self) {
        let q = self.q;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        let mut inv = vec![0u16; q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = self.add_generic(Fel(a as u16), Fel(b as u16)).0;
                mul[a * q + b] = self.mul_generic(Fel(a as u16), Fel(b as u16)).0;
            }
        }
        for a in 1..q {
            inv[a] = self.pow_generic(Fel(a as u16), (q - 2) as u64).0;
        }
        self.tables = Some(Tables { add, mul, inv });
    }
}

// ---------------------------------------------------------------------------
// Modulus search: polynomials over the prime field GF(p), coefficient vectors
// low-to-high. Only used at field construction time.
// ---------------------------------------------------------------------------

fn ptrim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pmod(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        if lead != 0 {
            // m is monic
            for (i, &mc) in m.iter().enumerate() {
                let idx = shift + i;
                a[idx] = (a[idx] + (p - mc % p) * lead) % p;
            }
        }
        a.pop();
        ptrim(&mut a);
        if a.is_empty() {
            break;
        }
    }
    a
}

fn pmulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    ptrim(&mut prod);
    pmod(prod, m, p)
}

/// x^(p^e) mod m, by iterated p-th powers.
fn xqpow(e: u32, m: &[u64], p: u64) -> Vec<u64> {
    let mut r = vec![0, 1]; // x
    r = pmod(r, m, p);
    for _ in 0..e {
        // raise to the p-th power by square-and-multiply
        let base = r.clone();
        let mut acc = vec![1u64];
        let mut b = base;
        let mut exp = p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = pmulmod(&acc, &b, m, p);
            }
            b = pmulmod(&b, &b, m, p);
            exp >>= 1;
        }
        r = acc;
    }
    r
}

fn pgcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        // a mod b, after making b monic
        let lead_inv = mod_inv(*b.last().unwrap(), p);
        let monic: Vec<u64> = b.iter().map(|&c| c * lead_inv % p).collect();
        let r = pmod(a, &monic, p);
        a = b;
        b = r;
    }
    a
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime, a != 0
    let mut r = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    r
}

fn is_irreducible(m: &[u64], p: u64) -> bool {
    let k = (m.len() - 1) as u32;
    if k == 1 {
        return true;
    }
    // Rabin's test: x^(p^k) == x mod m, and gcd(x^(p^(k/l)) - x, m) = 1
    // for every prime divisor l of k.
    let xq = xqpow(k, m, p);
    let mut xqx = xq;
    // subtract x
    if xqx.len() < 2 {
        xqx.resize(2, 0);
    }
    xqx[1] = (xqx[1] + p - 1) % p;
    ptrim(&mut xqx);
    if !xqx.is_empty() {
        return false;
    }
    let mut l = 2;
    let mut kk = k;
    let mut prime_divs = vec![];
    while kk > 1 {
        if kk % l == 0 {
            prime_divs.push(l);
            while kk % l == 0 {
                kk /= l;
            }
        }
        l += 1;
    }
    for l in prime_divs {
        let mut g = xqpow(k / l, m, p);
        if g.len() < 2 {
            g.resize(2, 0);
        }
        g[1] = (g[1] + p - 1) % p;
        ptrim(&mut g);
        let gcd = pgcd(m.to_vec(), g, p);
        if gcd.len() != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically least monic irreducible polynomial of degree k over
/// GF(p): enumerate the non-leading coefficient words as base-p integers in
/// increasing order and return the first irreducible candidate.
fn least_irreducible(p: u64, k: u32) -> Vec<u16> {
    let total = (p as u128).pow(k);
    for word in 0..total {
        let mut coeffs = vec![0u64; k as usize + 1];
        let mut n = word;
        for c in coeffs.iter_mut().take(k as usize) {
            *c = (n % p as u128) as u64;
            n /= p as u128;
        }
        coeffs[k as usize] = 1;
        if is_irreducible(&coeffs, p) {
            return coeffs.iter().map(|&c| c as u16).collect();
        }
    }
    unreachable!("an irreducible polynomial of every degree exists");
}
