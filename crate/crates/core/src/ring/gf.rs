//! Finite fields GF(p^k) as F_p[x]/(f) for the lexicographically least monic
//! irreducible f of degree k.
//!
//! An element is encoded as the integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! of its coefficient vector, so GF(p) elements coincide with residues mod p.

#[derive(Debug, Clone)]
pub(crate) struct GaloisField {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, low coefficient first, length k + 1.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl GaloisField {
    pub fn new(p: u32, k: u32) -> GaloisField {
        let q = p.pow(k);
        let modulus = least_irreducible(p, k);
        let mut field = GaloisField {
            p,
            k,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables();
        field
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn build_tables(&mut self) {
        let q = self.q;
        if q == 2 {
            self.exp = vec![1];
            self.log = vec![0, 0];
            return;
        }
        let group = q - 1;
        for g in 2..q.max(3) {
            let mut exp = Vec::with_capacity(group as usize);
            let mut x = 1;
            loop {
                exp.push(x);
                x = self.mul_poly(x, g);
                if x == 1 {
                    break;
                }
            }
            if exp.len() == group as usize {
                let mut log = vec![0; q as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        unreachable!("multiplicative group of GF({q}) is cyclic");
    }

    fn digits(&self, mut x: u32) -> Vec<u32> {
        let mut out = vec![0; self.k as usize];
        for d in out.iter_mut() {
            *d = x % self.p;
            x /= self.p;
        }
        out
    }

    fn encode(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    /// Schoolbook product reduced by the modulus; used only to build tables.
    fn mul_poly(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let k = self.k as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * k];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for deg in (k..2 * k).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            for (i, &m) in self.modulus.iter().enumerate() {
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        let low: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
        self.encode(&low)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let mut a = a;
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.k {
            out += ((self.p - a % self.p) % self.p) * scale;
            a /= self.p;
            scale *= self.p;
        }
        out
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let group = self.q - 1;
        let i = (self.log[a as usize] + self.log[b as usize]) % group;
        self.exp[i as usize]
    }

    pub fn inverse(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let group = self.q - 1;
        let i = (group - self.log[a as usize]) % group;
        Some(self.exp[i as usize])
    }
}

/// Lexicographically least monic irreducible polynomial of degree `k` over
/// F_p, comparing coefficients from `x^{k-1}` down to the constant term.
pub(crate) fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for code in 0..count {
        let mut poly = digits_of(code, p, k as usize);
        poly.push(1);
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn digits_of(mut code: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len + 1);
    for _ in 0..len {
        out.push((code % p as u64) as u32);
        code /= p as u64;
    }
    out
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut divisor = digits_of(code, p, d);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Remainder of `a` by the monic `b` over F_p.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut rem: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let p = p as u64;
    let db = b.len() - 1;
    while rem.len() > db {
        let lead = *rem.last().unwrap() % p;
        let shift = rem.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                rem[shift + i] = (rem[shift + i] + (p - lead) * c as u64) % p;
            }
        }
        rem.pop();
    }
    rem.into_iter().map(|c| c as u32).collect()
}
