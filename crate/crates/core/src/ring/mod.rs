//! Finite commutative rings with identity: `Z/nZ`, `GF(p^k)` and their finite
//! direct products.
//!
//! Elements are dense indices `0..order`. A product element is the mixed-radix
//! encoding of its component indices with the first component most
//! significant, so index order agrees with lexicographic tuple order. Index 0
//! is always the zero element.

mod gf;
mod spec;

use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

pub use spec::{prime_power, Atom, RingSpec, SpecError, MAX_ORDER};

use crate::associates::AssocData;
use gf::GaloisField;

/// Index of a ring element.
pub type Elem = u32;

/// Rings up to this order get their structural caches at construction time.
const EAGER_LIMIT: u32 = 1 << 16;
/// Rings up to this order keep a full multiplication table.
const TABLE_LIMIT: u32 = 1 << 10;
/// Jacobson radical of a `Z/n` component is found by definition up to this n.
const JACOBSON_SCAN_LIMIT: u32 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElemError {
    #[error("cannot parse element `{0}`")]
    Syntax(String),
    #[error("element `{0}` is out of range")]
    OutOfRange(String),
    #[error("element `{text}` needs {expected} components")]
    Arity { text: String, expected: usize },
}

#[derive(Debug, Clone)]
enum Component {
    Integers(u32),
    Galois(GaloisField),
}

impl Component {
    fn order(&self) -> u32 {
        match self {
            Component::Integers(n) => *n,
            Component::Galois(f) => f.order(),
        }
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        match self {
            Component::Integers(n) => ((a as u64 + b as u64) % *n as u64) as u32,
            Component::Galois(f) => f.add(a, b),
        }
    }

    fn neg(&self, a: u32) -> u32 {
        match self {
            Component::Integers(n) => (n - a) % n,
            Component::Galois(f) => f.neg(a),
        }
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        match self {
            Component::Integers(n) => ((a as u64 * b as u64) % *n as u64) as u32,
            Component::Galois(f) => f.mul(a, b),
        }
    }

    fn is_unit(&self, a: u32) -> bool {
        match self {
            Component::Integers(n) => gcd(a as u64, *n as u64) == 1,
            Component::Galois(_) => a != 0,
        }
    }

    fn inverse(&self, a: u32) -> Option<u32> {
        match self {
            Component::Integers(n) => mod_inverse(a as i64, *n as i64).map(|x| x as u32),
            Component::Galois(f) => f.inverse(a),
        }
    }

    fn nilpotent_mask(&self) -> Vec<bool> {
        let n = self.order();
        let mut mask = vec![false; n as usize];
        let mut stamp = vec![u32::MAX; n as usize];
        for a in 0..n {
            if self.is_unit(a) {
                continue;
            }
            let mut x = a;
            loop {
                if x == 0 {
                    mask[a as usize] = true;
                    break;
                }
                if stamp[x as usize] == a {
                    break;
                }
                stamp[x as usize] = a;
                x = self.mul(x, x);
            }
        }
        mask
    }

    /// J of the component: by definition for small `Z/n`, otherwise the
    /// multiples of rad(n) (and `{0}` for fields).
    fn jacobson(&self) -> Vec<u32> {
        match self {
            Component::Galois(_) => vec![0],
            Component::Integers(n) if *n <= JACOBSON_SCAN_LIMIT => (0..*n)
                .filter(|&a| (0..*n).all(|b| self.is_unit(self.add(1 % n, self.neg(self.mul(a, b))))))
                .collect(),
            Component::Integers(n) => {
                let r = radical(*n as u64) as u32;
                (0..*n).filter(|a| a % r == 0).collect()
            }
        }
    }
}

#[derive(Debug)]
struct Structure {
    unit_mask: Vec<bool>,
    units: Vec<Elem>,
    zero_divisors: Vec<Elem>,
    nil_mask: Vec<bool>,
    nilpotents: Vec<Elem>,
    jacobson: Vec<Elem>,
    nonzero_nonunits: Vec<Elem>,
    inverse: Vec<Option<Elem>>,
}

/// A finite commutative ring with identity. Immutable after construction.
#[derive(Debug)]
pub struct Ring {
    spec: RingSpec,
    parts: Vec<Component>,
    /// `strides[i]` is the weight of component `i` in the mixed-radix index.
    strides: Vec<u32>,
    order: u32,
    one: Elem,
    mul_table: Option<Vec<Elem>>,
    structure: OnceLock<Structure>,
    assoc: OnceLock<AssocData>,
}

/// A splitting `R ≅ eR × (1-e)R` from a non-trivial idempotent `e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub idempotent: Elem,
    pub complement: Elem,
    /// The elements of `eR`.
    pub first: Vec<Elem>,
    /// The elements of `(1-e)R`.
    pub second: Vec<Elem>,
}

impl Decomposition {
    /// Image of `a` under `a ↦ (ea, (1-e)a)`.
    pub fn split(&self, ring: &Ring, a: Elem) -> (Elem, Elem) {
        (ring.mul(self.idempotent, a), ring.mul(self.complement, a))
    }

    /// Exhaustively checks that the splitting map is a ring isomorphism onto
    /// `eR × (1-e)R`.
    pub fn is_isomorphism(&self, ring: &Ring) -> bool {
        let e = self.idempotent;
        let f = self.complement;
        if ring.mul(e, f) != ring.zero() || ring.mul(e, e) != e || ring.add(e, f) != ring.one() {
            return false;
        }
        let n = ring.order() as usize;
        if self.first.len() * self.second.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for a in ring.elements() {
            let (x, y) = self.split(ring, a);
            // (x, y) ↦ x + y inverts the map, so injectivity is a lookup.
            let back = ring.add(x, y);
            if back != a || seen[a as usize] {
                return false;
            }
            seen[a as usize] = true;
        }
        ring.elements().all(|a| {
            let (ax, ay) = self.split(ring, a);
            ring.elements().all(|b| {
                let (bx, by) = self.split(ring, b);
                self.split(ring, ring.add(a, b)) == (ring.add(ax, bx), ring.add(ay, by))
                    && self.split(ring, ring.mul(a, b)) == (ring.mul(ax, bx), ring.mul(ay, by))
            })
        })
    }

    pub fn first_is_field(&self, ring: &Ring) -> bool {
        part_is_field(ring, &self.first, self.idempotent)
    }

    pub fn second_is_field(&self, ring: &Ring) -> bool {
        part_is_field(ring, &self.second, self.complement)
    }
}

fn part_is_field(ring: &Ring, members: &[Elem], identity: Elem) -> bool {
    members
        .iter()
        .filter(|&&x| x != ring.zero())
        .all(|&x| members.iter().any(|&y| ring.mul(x, y) == identity))
}

/// JSON description of a ring used in reports and golden tests.
#[derive(Debug, Clone, Serialize)]
pub struct RingSummary {
    pub spec: String,
    pub order: u32,
    pub units: Vec<String>,
    pub zero_divisors: Vec<String>,
    pub nilpotents: Vec<String>,
    /// Defining polynomials of the non-prime Galois factors, e.g.
    /// `GF(4): x^2 + x + 1`. Element digits are its coefficients.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub moduli: Vec<String>,
}

impl Ring {
    /// Parses a ring specification and builds the ring.
    pub fn parse(text: &str) -> Result<Ring, SpecError> {
        Ok(Ring::new(&text.parse()?))
    }

    pub fn new(spec: &RingSpec) -> Ring {
        let parts: Vec<Component> = spec
            .atoms()
            .iter()
            .map(|atom| match *atom {
                Atom::Integers(n) => Component::Integers(n),
                Atom::Galois { p, k } => Component::Galois(GaloisField::new(p, k)),
            })
            .collect();
        let mut strides = vec![1u32; parts.len()];
        for i in (0..parts.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * parts[i + 1].order();
        }
        let order = parts.iter().map(Component::order).product();
        let one = strides.iter().sum();
        let mut ring = Ring {
            spec: spec.clone(),
            parts,
            strides,
            order,
            one,
            mul_table: None,
            structure: OnceLock::new(),
            assoc: OnceLock::new(),
        };
        if order <= TABLE_LIMIT {
            let n = order as usize;
            let mut table = vec![0; n * n];
            for a in 0..order {
                for b in a..order {
                    let c = ring.mul_direct(a, b);
                    table[a as usize * n + b as usize] = c;
                    table[b as usize * n + a as usize] = c;
                }
            }
            ring.mul_table = Some(table);
        }
        if order <= EAGER_LIMIT {
            ring.structure();
        }
        ring
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    /// Number of direct factors in the specification.
    pub fn arity(&self) -> usize {
        self.parts.len()
    }

    fn component(&self, a: Elem, i: usize) -> u32 {
        (a / self.strides[i]) % self.parts[i].order()
    }

    pub fn components(&self, a: Elem) -> Vec<u32> {
        (0..self.parts.len()).map(|i| self.component(a, i)).collect()
    }

    pub fn from_components(&self, comps: &[u32]) -> Elem {
        comps.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    fn zip_with(&self, a: Elem, b: Elem, op: impl Fn(&Component, u32, u32) -> u32) -> Elem {
        let mut out = 0;
        for (i, part) in self.parts.iter().enumerate() {
            out += op(part, self.component(a, i), self.component(b, i)) * self.strides[i];
        }
        out
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.zip_with(a, b, Component::add)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.zip_with(a, a, |c, x, _| c.neg(x))
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    fn mul_direct(&self, a: Elem, b: Elem) -> Elem {
        self.zip_with(a, b, Component::mul)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.mul_table {
            Some(t) => t[a as usize * self.order as usize + b as usize],
            None => self.mul_direct(a, b),
        }
    }

    pub fn product(&self, elems: impl IntoIterator<Item = Elem>) -> Elem {
        elems.into_iter().fold(self.one, |acc, x| self.mul(acc, x))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = self.one;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn structure(&self) -> &Structure {
        self.structure.get_or_init(|| self.compute_structure())
    }

    fn compute_structure(&self) -> Structure {
        let unit_mask: Vec<bool> = self
            .elements()
            .map(|a| self.parts.iter().enumerate().all(|(i, p)| p.is_unit(self.component(a, i))))
            .collect();
        let units: Vec<Elem> = self.elements().filter(|&a| unit_mask[a as usize]).collect();
        // In a finite ring every non-unit is a zero-divisor.
        let zero_divisors: Vec<Elem> = self.elements().filter(|&a| !unit_mask[a as usize]).collect();

        // a is nilpotent iff every component is. Per component, square
        // until reaching 0 or revisiting a value; units never get there.
        let part_nil: Vec<Vec<bool>> = self.parts.iter().map(Component::nilpotent_mask).collect();
        let nil_mask: Vec<bool> = self
            .elements()
            .map(|a| (0..self.parts.len()).all(|i| part_nil[i][self.component(a, i) as usize]))
            .collect();
        let nilpotents = self.elements().filter(|&a| nil_mask[a as usize]).collect();

        let part_j: Vec<Vec<u32>> = self.parts.iter().map(Component::jacobson).collect();
        let mut jacobson = vec![0];
        for (i, js) in part_j.iter().enumerate() {
            jacobson = jacobson
                .iter()
                .flat_map(|&acc| js.iter().map(move |&c| (acc, c)))
                .map(|(acc, c)| acc + c * self.strides[i])
                .collect();
        }
        jacobson.sort_unstable();

        let nonzero_nonunits = self
            .elements()
            .filter(|&a| a != 0 && !unit_mask[a as usize])
            .collect();
        let inverse = self
            .elements()
            .map(|a| {
                if !unit_mask[a as usize] {
                    return None;
                }
                let comps: Option<Vec<u32>> = self
                    .parts
                    .iter()
                    .enumerate()
                    .map(|(i, p)| p.inverse(self.component(a, i)))
                    .collect();
                comps.map(|c| self.from_components(&c))
            })
            .collect();
        Structure {
            unit_mask,
            units,
            zero_divisors,
            nil_mask,
            nilpotents,
            jacobson,
            nonzero_nonunits,
            inverse,
        }
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.structure().unit_mask[a as usize]
    }

    pub fn units(&self) -> &[Elem] {
        &self.structure().units
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.structure().inverse[a as usize]
    }

    /// Z(R), including 0.
    pub fn zero_divisors(&self) -> &[Elem] {
        &self.structure().zero_divisors
    }

    pub fn is_zero_divisor(&self, a: Elem) -> bool {
        !self.is_unit(a)
    }

    pub fn nilpotents(&self) -> &[Elem] {
        &self.structure().nilpotents
    }

    pub fn is_nilpotent(&self, a: Elem) -> bool {
        self.structure().nil_mask[a as usize]
    }

    pub fn jacobson(&self) -> &[Elem] {
        &self.structure().jacobson
    }

    /// R#: the non-zero non-units.
    pub fn nonzero_nonunits(&self) -> &[Elem] {
        &self.structure().nonzero_nonunits
    }

    /// Non-units, 0 first.
    pub fn nonunits(&self) -> &[Elem] {
        self.zero_divisors()
    }

    pub fn is_field(&self) -> bool {
        self.units().len() as u32 == self.order - 1
    }

    pub fn is_domain(&self) -> bool {
        self.zero_divisors().len() == 1
    }

    pub fn is_reduced(&self) -> bool {
        self.nilpotents().len() == 1
    }

    /// `a | b`, i.e. `b = ra` for some `r`.
    pub fn divides(&self, a: Elem, b: Elem) -> bool {
        self.elements().any(|r| self.mul(r, a) == b)
    }

    /// The principal ideal `(a)`, sorted.
    pub fn principal_ideal(&self, a: Elem) -> Vec<Elem> {
        let mut seen = vec![false; self.order as usize];
        for r in self.elements() {
            seen[self.mul(r, a) as usize] = true;
        }
        self.elements().filter(|&x| seen[x as usize]).collect()
    }

    pub fn annihilator(&self, a: Elem) -> Vec<Elem> {
        self.elements().filter(|&b| self.mul(a, b) == 0).collect()
    }

    pub fn idempotents(&self) -> Vec<Elem> {
        self.elements().filter(|&e| self.mul(e, e) == e).collect()
    }

    fn decomposition_from(&self, e: Elem) -> Decomposition {
        let complement = self.sub(self.one, e);
        let mut first = self.principal_ideal(e);
        let mut second = self.principal_ideal(complement);
        first.sort_unstable();
        second.sort_unstable();
        Decomposition {
            idempotent: e,
            complement,
            first,
            second,
        }
    }

    /// A splitting from the least non-trivial idempotent, if any.
    pub fn find_decomposition(&self) -> Option<Decomposition> {
        self.idempotents()
            .into_iter()
            .find(|&e| e != 0 && e != self.one)
            .map(|e| self.decomposition_from(e))
    }

    /// A splitting whose two factors are both fields, if one exists.
    pub fn two_field_decomposition(&self) -> Option<Decomposition> {
        self.idempotents()
            .into_iter()
            .filter(|&e| e != 0 && e != self.one)
            .map(|e| self.decomposition_from(e))
            .find(|d| d.first_is_field(self) && d.second_is_field(self))
    }

    pub(crate) fn assoc_cache(&self) -> &OnceLock<AssocData> {
        &self.assoc
    }

    /// Element label: an integer for a single factor, a tuple for products.
    pub fn format_elem(&self, a: Elem) -> String {
        if self.parts.len() == 1 {
            return a.to_string();
        }
        let comps: Vec<String> = self.components(a).iter().map(u32::to_string).collect();
        format!("({})", comps.join(","))
    }

    pub fn format_elems(&self, elems: &[Elem]) -> Vec<String> {
        elems.iter().map(|&a| self.format_elem(a)).collect()
    }

    /// Parses an integer (single factor) or a tuple `(a,b,...)` (products).
    pub fn parse_elem(&self, text: &str) -> Result<Elem, ElemError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(&compact);
        let fields: Vec<&str> = body.split(',').collect();
        if fields.len() != self.parts.len() {
            return Err(ElemError::Arity {
                text: text.to_string(),
                expected: self.parts.len(),
            });
        }
        let mut comps = Vec::with_capacity(fields.len());
        for (field, part) in fields.iter().zip(&self.parts) {
            let v: u64 = field.parse().map_err(|_| ElemError::Syntax(text.to_string()))?;
            if v >= part.order() as u64 {
                return Err(ElemError::OutOfRange(text.to_string()));
            }
            comps.push(v as u32);
        }
        Ok(self.from_components(&comps))
    }

    pub fn summary(&self) -> RingSummary {
        RingSummary {
            spec: self.spec.to_string(),
            order: self.order,
            units: self.format_elems(self.units()),
            zero_divisors: self.format_elems(self.zero_divisors()),
            nilpotents: self.format_elems(self.nilpotents()),
            moduli: self
                .parts
                .iter()
                .filter_map(|c| match c {
                    Component::Galois(f) if f.modulus().len() > 2 => {
                        Some(format!("GF({}): {}", f.order(), poly_string(f.modulus())))
                    }
                    _ => None,
                })
                .collect(),
        }
    }
}

fn poly_string(coeffs: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev().filter(|(_, &c)| c != 0) {
        let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
        terms.push(match i {
            0 => coeff,
            1 => format!("{coeff}x"),
            _ => format!("{coeff}x^{i}"),
        });
    }
    terms.join(" + ")
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn mod_inverse(a: i64, n: i64) -> Option<i64> {
    let (mut r0, mut r1) = (n, a.rem_euclid(n));
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(n))
}

fn radical(mut n: u64) -> u64 {
    let mut r = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            r *= d;
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        r *= n;
    }
    r
}

/// Euler's totient, for tests and corpus oracles.
pub fn totient(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}
