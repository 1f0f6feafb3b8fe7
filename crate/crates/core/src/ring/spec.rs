//! Textual ring specifications: `Z/n`, `GF(q)` and products joined by `x`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Largest ring order we are willing to materialize.
pub const MAX_ORDER: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("empty ring specification")]
    Empty,
    #[error("syntax error near `{0}` (expected `Z/<n>` or `GF(<q>)`)")]
    Syntax(String),
    #[error("modulus {0} is too small (need n >= 2)")]
    ModulusTooSmall(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("ring of order {0} is too large")]
    TooLarge(u64),
}

/// One factor of a ring specification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    /// The residue ring `Z/nZ`.
    Integers(u32),
    /// The field with `p^k` elements.
    Galois { p: u32, k: u32 },
}

impl Atom {
    pub fn order(&self) -> u64 {
        match *self {
            Atom::Integers(n) => n as u64,
            Atom::Galois { p, k } => (p as u64).pow(k),
        }
    }

    pub fn is_field(&self) -> bool {
        match *self {
            Atom::Integers(n) => is_prime(n as u64),
            Atom::Galois { .. } => true,
        }
    }

    fn parse(text: &str) -> Result<Atom, SpecError> {
        if let Some(rest) = text.strip_prefix("Z/") {
            let n = parse_int(rest, text)?;
            if n < 2 {
                return Err(SpecError::ModulusTooSmall(n));
            }
            if n > MAX_ORDER {
                return Err(SpecError::TooLarge(n));
            }
            return Ok(Atom::Integers(n as u32));
        }
        if let Some(rest) = text.strip_prefix("GF(") {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| SpecError::Syntax(text.to_string()))?;
            let q = parse_int(inner, text)?;
            if q > MAX_ORDER {
                return Err(SpecError::TooLarge(q));
            }
            let (p, k) = prime_power(q).ok_or(SpecError::NotPrimePower(q))?;
            return Ok(Atom::Galois { p: p as u32, k });
        }
        Err(SpecError::Syntax(text.to_string()))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Atom::Integers(n) => write!(f, "Z/{n}"),
            Atom::Galois { .. } => write!(f, "GF({})", self.order()),
        }
    }
}

/// A parsed ring specification. A single atom is the ring itself; two or
/// more atoms denote their direct product.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    atoms: Vec<Atom>,
}

impl RingSpec {
    pub fn new(atoms: Vec<Atom>) -> Result<RingSpec, SpecError> {
        if atoms.is_empty() {
            return Err(SpecError::Empty);
        }
        let order = atoms
            .iter()
            .try_fold(1u64, |acc, a| acc.checked_mul(a.order()).filter(|&o| o <= MAX_ORDER));
        match order {
            Some(_) => Ok(RingSpec { atoms }),
            None => Err(SpecError::TooLarge(
                atoms.iter().map(Atom::order).fold(1u64, u64::saturating_mul),
            )),
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn order(&self) -> u64 {
        self.atoms.iter().map(Atom::order).product()
    }

    pub fn is_product(&self) -> bool {
        self.atoms.len() > 1
    }
}

impl FromStr for RingSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(SpecError::Empty);
        }
        let atoms = compact
            .split(['x', '×'])
            .map(|part| {
                if part.is_empty() {
                    Err(SpecError::Syntax(compact.clone()))
                } else {
                    Atom::parse(part)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        RingSpec::new(atoms)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, atom) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{atom}")?;
        }
        Ok(())
    }
}

impl Serialize for RingSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn parse_int(digits: &str, context: &str) -> Result<u64, SpecError> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(SpecError::Syntax(context.to_string()));
    }
    digits
        .parse::<u64>()
        .map_err(|_| SpecError::TooLarge(u64::MAX))
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

pub(crate) fn smallest_prime_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}

/// Returns `(p, k)` with `q = p^k`, `p` prime, `k >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = smallest_prime_factor(q);
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_atoms_and_products() {
        let spec: RingSpec = "Z/30".parse().unwrap();
        assert_eq!(spec.atoms(), &[Atom::Integers(30)]);
        let spec: RingSpec = " GF(2) x  Z/4 ".parse().unwrap();
        assert_eq!(spec.atoms(), &[Atom::Galois { p: 2, k: 1 }, Atom::Integers(4)]);
        assert_eq!(spec.to_string(), "GF(2) x Z/4");
        assert_eq!(spec.order(), 8);
        let spec: RingSpec = "GF(9)xGF(4)xZ/6".parse().unwrap();
        assert_eq!(spec.atoms().len(), 3);
    }

    #[test]
    fn rejects_bad_specs() {
        assert_eq!("GF(6)".parse::<RingSpec>(), Err(SpecError::NotPrimePower(6)));
        assert_eq!("Z/1".parse::<RingSpec>(), Err(SpecError::ModulusTooSmall(1)));
        assert_eq!("Z/0".parse::<RingSpec>(), Err(SpecError::ModulusTooSmall(0)));
        assert!(matches!("".parse::<RingSpec>(), Err(SpecError::Empty)));
        assert!(matches!("Z/".parse::<RingSpec>(), Err(SpecError::Syntax(_))));
        assert!(matches!("Z/4 x".parse::<RingSpec>(), Err(SpecError::Syntax(_))));
        assert!(matches!("Q".parse::<RingSpec>(), Err(SpecError::Syntax(_))));
        assert!(matches!("GF(1)".parse::<RingSpec>(), Err(SpecError::NotPrimePower(1))));
        assert!(matches!("Z/65536 x Z/65536".parse::<RingSpec>(), Err(SpecError::TooLarge(_))));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
    }
}
