//! The associate relations `∼` (same principal ideal), `≈` (unit multiple)
//! and `≅` (associate, and every multiplier relating them is a unit).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ring::{Elem, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssocKind {
    /// `a ∼ b`: `(a) = (b)`.
    Associate,
    /// `a ≈ b`: `a = λb` for a unit `λ`.
    Strong,
    /// `a ≅ b`: `a ∼ b`, and `a = b = 0` or `a = rb` forces `r` to be a unit.
    VeryStrong,
}

impl AssocKind {
    pub const ALL: [AssocKind; 3] = [AssocKind::Associate, AssocKind::Strong, AssocKind::VeryStrong];

    pub fn name(self) -> &'static str {
        match self {
            AssocKind::Associate => "associate",
            AssocKind::Strong => "strong",
            AssocKind::VeryStrong => "very_strong",
        }
    }
}

impl fmt::Display for AssocKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AssocKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "associate" | "assoc" | "sim" => Ok(AssocKind::Associate),
            "strong" | "strong_associate" | "approx" => Ok(AssocKind::Strong),
            "very_strong" | "very_strong_associate" | "cong" => Ok(AssocKind::VeryStrong),
            other => Err(format!("unknown associate kind `{other}`")),
        }
    }
}

/// Decides `kind(a, b)` straight from the definition.
pub fn related(ring: &Ring, kind: AssocKind, a: Elem, b: Elem) -> bool {
    match kind {
        AssocKind::Associate => ring.divides(a, b) && ring.divides(b, a),
        AssocKind::Strong => ring.units().iter().any(|&u| ring.mul(u, b) == a),
        AssocKind::VeryStrong => {
            related(ring, AssocKind::Associate, a, b)
                && ((a == 0 && b == 0)
                    || ring.elements().all(|r| ring.mul(r, b) != a || ring.is_unit(r)))
        }
    }
}

/// A partition of a domain into associate classes. For `≅`, elements with
/// `a ≇ a` belong to no class and are listed in `irreflexive`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub classes: Vec<Vec<Elem>>,
    pub irreflexive: Vec<Elem>,
}

/// Partitions `domain` by `kind`, classes ordered by least member.
pub fn assoc_classes(ring: &Ring, kind: AssocKind, domain: &[Elem]) -> Partition {
    let mut sorted = domain.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut irreflexive = Vec::new();
    let mut classes: Vec<Vec<Elem>> = Vec::new();
    for &a in &sorted {
        if kind == AssocKind::VeryStrong && !related(ring, kind, a, a) {
            irreflexive.push(a);
            continue;
        }
        match classes.iter_mut().find(|c| related(ring, kind, c[0], a)) {
            Some(class) => class.push(a),
            None => classes.push(vec![a]),
        }
    }
    Partition { classes, irreflexive }
}

/// Ring-level associate behaviour. Each field is evaluated on its own so the
/// five equivalent conditions can be compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RingClass {
    pub presimplifiable: bool,
    pub strongly_associate: bool,
    pub very_strongly_associate: bool,
    pub cong_reflexive: bool,
    pub cong_equivalence: bool,
    pub relations_coincide: bool,
}

impl RingClass {
    /// True when the five equivalent conditions agree.
    pub fn is_consistent(&self) -> bool {
        let v = self.presimplifiable;
        [
            self.very_strongly_associate,
            self.cong_reflexive,
            self.cong_equivalence,
            self.relations_coincide,
        ]
        .iter()
        .all(|&x| x == v)
    }
}

/// Pairwise relation matrices computed by definition in `O(n^2)` each.
struct Relations {
    n: usize,
    sim: Vec<bool>,
    approx: Vec<bool>,
    cong: Vec<bool>,
}

impl Relations {
    fn new(ring: &Ring) -> Relations {
        let n = ring.order() as usize;
        let ideals: Vec<Vec<bool>> = ring
            .elements()
            .map(|a| {
                let mut row = vec![false; n];
                for r in ring.elements() {
                    row[ring.mul(r, a) as usize] = true;
                }
                row
            })
            .collect();
        let mut approx = vec![false; n * n];
        for b in ring.elements() {
            for &u in ring.units() {
                approx[ring.mul(u, b) as usize * n + b as usize] = true;
            }
        }
        let mut sim = vec![false; n * n];
        let mut cong = vec![false; n * n];
        let mut bad = vec![false; n];
        for b in ring.elements() {
            // bad[x] marks x = rb with r a non-unit.
            bad.iter_mut().for_each(|x| *x = false);
            for r in ring.elements() {
                if !ring.is_unit(r) {
                    bad[ring.mul(r, b) as usize] = true;
                }
            }
            for a in ring.elements() {
                let s = ideals[a as usize] == ideals[b as usize];
                let idx = a as usize * n + b as usize;
                sim[idx] = s;
                cong[idx] = s && ((a == 0 && b == 0) || !bad[a as usize]);
            }
        }
        Relations { n, sim, approx, cong }
    }

    fn get(&self, m: &[bool], a: usize, b: usize) -> bool {
        m[a * self.n + b]
    }
}

pub fn ring_class(ring: &Ring) -> RingClass {
    let rel = Relations::new(ring);
    let n = rel.n;
    let presimplifiable = ring.elements().all(|x| {
        x == 0 || ring.elements().all(|y| ring.mul(x, y) != x || ring.is_unit(y))
    });
    let pairs = || (0..n).flat_map(|a| (0..n).map(move |b| (a, b)));
    let strongly_associate = pairs().all(|(a, b)| !rel.get(&rel.sim, a, b) || rel.get(&rel.approx, a, b));
    let very_strongly_associate = pairs().all(|(a, b)| !rel.get(&rel.sim, a, b) || rel.get(&rel.cong, a, b));
    let cong_reflexive = (0..n).all(|a| rel.get(&rel.cong, a, a));
    let symmetric = pairs().all(|(a, b)| rel.get(&rel.cong, a, b) == rel.get(&rel.cong, b, a));
    // ≅ refines ∼, so transitivity only needs checking inside ∼-classes.
    let mut blocks: HashMap<Vec<bool>, Vec<usize>> = HashMap::new();
    for a in 0..n {
        blocks.entry(rel.sim[a * n..(a + 1) * n].to_vec()).or_default().push(a);
    }
    let transitive = blocks.values().all(|block| {
        block.iter().all(|&a| {
            block.iter().all(|&b| {
                !rel.get(&rel.cong, a, b)
                    || block.iter().all(|&c| !rel.get(&rel.cong, b, c) || rel.get(&rel.cong, a, c))
            })
        })
    });
    let cong_equivalence = cong_reflexive && symmetric && transitive;
    let relations_coincide = pairs().all(|(a, b)| {
        let s = rel.get(&rel.sim, a, b);
        s == rel.get(&rel.approx, a, b) && s == rel.get(&rel.cong, a, b)
    });
    RingClass {
        presimplifiable,
        strongly_associate,
        very_strongly_associate,
        cong_reflexive,
        cong_equivalence,
        relations_coincide,
    }
}

/// Cached associate structure of a ring: principal ideals, `≈`-classes, and
/// the induced multiplication on `≈`-classes (a well-defined congruence since
/// `(λa)(μb) = λμ·ab`).
#[derive(Debug)]
pub struct AssocData {
    ideal_of: Vec<u32>,
    /// `ideal_le[i * k + j]`: ideal `i` is contained in ideal `j`.
    ideal_le: Vec<bool>,
    ideal_count: usize,
    class_of: Vec<u32>,
    classes: Vec<Vec<Elem>>,
    class_mul: Vec<u32>,
    self_cong: Vec<bool>,
}

impl AssocData {
    pub fn get(ring: &Ring) -> &AssocData {
        ring.assoc_cache().get_or_init(|| AssocData::compute(ring))
    }

    fn compute(ring: &Ring) -> AssocData {
        let n = ring.order() as usize;
        let mut class_of = vec![u32::MAX; n];
        let mut classes: Vec<Vec<Elem>> = Vec::new();
        for a in ring.elements() {
            if class_of[a as usize] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let mut members: Vec<Elem> = ring.units().iter().map(|&u| ring.mul(u, a)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m as usize] = id;
            }
            classes.push(members);
        }

        // Principal ideals are constant on ≈-classes.
        let words = n.div_ceil(64);
        let mut ideal_ids: HashMap<Vec<u64>, u32> = HashMap::new();
        let mut ideal_sets: Vec<Vec<u64>> = Vec::new();
        let mut class_ideal = Vec::with_capacity(classes.len());
        for class in &classes {
            let mut bits = vec![0u64; words];
            for r in ring.elements() {
                let x = ring.mul(r, class[0]) as usize;
                bits[x / 64] |= 1 << (x % 64);
            }
            let next = ideal_sets.len() as u32;
            let id = *ideal_ids.entry(bits.clone()).or_insert_with(|| {
                ideal_sets.push(bits);
                next
            });
            class_ideal.push(id);
        }
        let ideal_of = class_of.iter().map(|&c| class_ideal[c as usize]).collect();
        let k = ideal_sets.len();
        let mut ideal_le = vec![false; k * k];
        for i in 0..k {
            for j in 0..k {
                ideal_le[i * k + j] = ideal_sets[i]
                    .iter()
                    .zip(&ideal_sets[j])
                    .all(|(x, y)| x & !y == 0);
            }
        }

        let c = classes.len();
        let mut class_mul = vec![0; c * c];
        for i in 0..c {
            for j in i..c {
                let p = class_of[ring.mul(classes[i][0], classes[j][0]) as usize];
                class_mul[i * c + j] = p;
                class_mul[j * c + i] = p;
            }
        }

        // Self-≅ is constant on ≈-classes, so test one representative each.
        let class_cong: Vec<bool> = classes
            .iter()
            .map(|class| {
                let a = class[0];
                a == 0 || ring.elements().all(|r| ring.mul(r, a) != a || ring.is_unit(r))
            })
            .collect();
        let self_cong = class_of.iter().map(|&c| class_cong[c as usize]).collect();

        AssocData {
            ideal_of,
            ideal_le,
            ideal_count: k,
            class_of,
            classes,
            class_mul,
            self_cong,
        }
    }

    pub fn ideal_of(&self, a: Elem) -> u32 {
        self.ideal_of[a as usize]
    }

    pub fn ideal_count(&self) -> usize {
        self.ideal_count
    }

    /// `(a) ⊆ (b)`.
    pub fn ideal_within(&self, a: Elem, b: Elem) -> bool {
        let (i, j) = (self.ideal_of(a) as usize, self.ideal_of(b) as usize);
        self.ideal_le[i * self.ideal_count + j]
    }

    /// `(a) ⊊ (b)`.
    pub fn ideal_strictly_within(&self, a: Elem, b: Elem) -> bool {
        self.ideal_of(a) != self.ideal_of(b) && self.ideal_within(a, b)
    }

    /// Id of the `≈`-class of `a`.
    pub fn class_of(&self, a: Elem) -> u32 {
        self.class_of[a as usize]
    }

    pub fn classes(&self) -> &[Vec<Elem>] {
        &self.classes
    }

    pub fn class_members(&self, class: u32) -> &[Elem] {
        &self.classes[class as usize]
    }

    /// Class of the product of any members of classes `i` and `j`.
    pub fn class_mul(&self, i: u32, j: u32) -> u32 {
        self.class_mul[i as usize * self.classes.len() + j as usize]
    }

    pub fn self_cong(&self, a: Elem) -> bool {
        self.self_cong[a as usize]
    }

    pub fn is_related(&self, kind: AssocKind, a: Elem, b: Elem) -> bool {
        match kind {
            AssocKind::Associate => self.ideal_of(a) == self.ideal_of(b),
            AssocKind::Strong => self.class_of(a) == self.class_of(b),
            // ≅ is symmetric and transitive, so a ≅ b forces a ≅ a; and a ≅ a
            // upgrades every a ∼ b to a ≅ b.
            AssocKind::VeryStrong => self.self_cong(a) && self.ideal_of(a) == self.ideal_of(b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> Ring {
        Ring::parse(s).unwrap()
    }

    #[test]
    fn z9_three_and_six() {
        let r = ring("Z/9");
        for kind in AssocKind::ALL {
            assert!(related(&r, kind, 3, 6), "{kind}");
        }
    }

    #[test]
    fn z6_two_and_four() {
        let r = ring("Z/6");
        assert!(related(&r, AssocKind::Associate, 2, 4));
        assert!(related(&r, AssocKind::Strong, 2, 4));
        assert_eq!(r.mul(5, 4), 2);
        assert!(!related(&r, AssocKind::VeryStrong, 2, 4));
        assert!(!related(&r, AssocKind::VeryStrong, 2, 2));
        assert!(related(&r, AssocKind::VeryStrong, 0, 0));
    }

    #[test]
    fn partitions() {
        let r = ring("Z/6");
        let p = assoc_classes(&r, AssocKind::Associate, &[2, 3, 4]);
        assert_eq!(p.classes, vec![vec![2, 4], vec![3]]);
        let p = assoc_classes(&r, AssocKind::VeryStrong, &[2, 3, 4]);
        assert!(p.classes.is_empty());
        assert_eq!(p.irreflexive, vec![2, 3, 4]);

        let f = ring("GF(7)");
        let nonzero: Vec<Elem> = (1..7).collect();
        assert_eq!(assoc_classes(&f, AssocKind::Associate, &nonzero).classes.len(), 1);

        let z4 = ring("Z/4");
        assert!(related(&z4, AssocKind::VeryStrong, 2, 2));
    }

    #[test]
    fn ring_classes() {
        let z4 = ring_class(&ring("Z/4"));
        assert!(z4.presimplifiable && z4.is_consistent());
        let z6 = ring_class(&ring("Z/6"));
        assert!(!z6.presimplifiable && z6.is_consistent());
        assert!(z6.strongly_associate);
        let f = ring_class(&ring("GF(8)"));
        assert!(f.presimplifiable && f.strongly_associate && f.very_strongly_associate);
    }

    #[test]
    fn cached_relations_match_definitions() {
        for spec in ["Z/12", "Z/8", "GF(2) x Z/4", "GF(3) x GF(3)"] {
            let r = ring(spec);
            let data = AssocData::get(&r);
            for a in r.elements() {
                for b in r.elements() {
                    for kind in AssocKind::ALL {
                        assert_eq!(
                            data.is_related(kind, a, b),
                            related(&r, kind, a, b),
                            "{spec} {kind} {a} {b}"
                        );
                    }
                    assert_eq!(data.ideal_within(a, b), r.divides(b, a));
                }
            }
        }
    }

    #[test]
    fn class_multiplication_is_well_defined() {
        let r = ring("Z/36");
        let data = AssocData::get(&r);
        for a in r.elements() {
            for b in r.elements() {
                assert_eq!(
                    data.class_mul(data.class_of(a), data.class_of(b)),
                    data.class_of(r.mul(a, b))
                );
            }
        }
    }
}
