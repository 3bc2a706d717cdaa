//! Rooted p-ary tree vertices, finite portraits, and recursively defined
//! tree automorphisms.
//!
//! An automorphism is stored as a root activity (an exponent of the cycle
//! pi = (0 1 ... p-1)) plus p lazily expanded child automorphisms. The
//! conventions, fixed once and used everywhere:
//!
//! * vertices are acted on the right; the first letter of `v^g` is
//!   `first + activity(g) mod p`;
//! * sections compose by `(gh)@v = g@v * h@(v^g)`.
//!
//! Under these rules the portrait of `a^-1 b a` has first-level sections
//! `(b, a^alpha_1, ..., a^alpha_{p-1})`, which is the anchor test pinning
//! the shift direction.

use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on expansion depth. Exceeding it is an explicit error,
/// never a silent truncation.
pub const DEPTH_CAP: usize = 12;

/// A vertex of the rooted p-ary tree: a finite word over {0, ..., p-1}.
/// The empty word is the root.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Vertex {
    p: u32,
    letters: Vec<u8>,
}

impl Vertex {
    pub fn root(p: u32) -> Vertex {
        Vertex { p, letters: Vec::new() }
    }

    pub fn new(letters: Vec<u8>, p: u32) -> Result<Vertex> {
        if letters.iter().any(|&l| l as u32 >= p) {
            return Err(Error::Parameter(format!(
                "vertex letters must be < {}",
                p
            )));
        }
        Ok(Vertex { p, letters })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn depth(&self) -> usize {
        self.letters.len()
    }

    pub fn is_root(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn child(&self, letter: u8) -> Vertex {
        debug_assert!((letter as u32) < self.p);
        let mut letters = self.letters.clone();
        letters.push(letter);
        Vertex { p: self.p, letters }
    }

    pub fn parent(&self) -> Option<Vertex> {
        if self.is_root() {
            return None;
        }
        let mut letters = self.letters.clone();
        letters.pop();
        Some(Vertex { p: self.p, letters })
    }

    /// Breadth-first index among the p^depth vertices of the same depth:
    /// the base-p number with the first letter most significant.
    pub fn level_index(&self) -> usize {
        self.letters
            .iter()
            .fold(0usize, |acc, &l| acc * self.p as usize + l as usize)
    }

    pub fn from_level_index(mut index: usize, depth: usize, p: u32) -> Vertex {
        let mut letters = vec![0u8; depth];
        for i in (0..depth).rev() {
            letters[i] = (index % p as usize) as u8;
            index /= p as usize;
        }
        Vertex { p, letters }
    }
}

enum Kind {
    /// Identity when activity is 0; otherwise a^activity (trivial sections).
    RootPower,
    /// Explicit first-level sections.
    Sections(Vec<Aut>),
    Compose(Aut, Aut),
    Inverse(Aut),
    /// Every first-level section is the element itself (the conjugator C).
    AllSelf,
    /// Sections produced on demand by a closure; used for the
    /// self-referential generator recursions.
    LazyFn(Box<dyn Fn(u8) -> Aut + Send + Sync>),
    /// The element acting as the payload on the subtree at the stored path
    /// and trivially elsewhere. The path is always nonempty.
    Placed(Aut, Vec<u8>),
}

struct Node {
    p: u32,
    activity: u8,
    kind: Kind,
    memo: Mutex<Vec<Option<Aut>>>,
}

/// A recursively defined automorphism of the rooted p-ary tree with cyclic
/// activities. Cheap to clone; sections are memoized per node. Equality is
/// decidable only per truncation depth, via [`Aut::portrait`].
#[derive(Clone)]
pub struct Aut(Arc<Node>);

impl Aut {
    fn make(p: u32, activity: u8, kind: Kind) -> Aut {
        Aut(Arc::new(Node {
            p,
            activity,
            kind,
            memo: Mutex::new(vec![None; p as usize]),
        }))
    }

    pub fn identity(p: u32) -> Aut {
        Aut::make(p, 0, Kind::RootPower)
    }

    /// The root cycle a^exp (activity exp, trivial sections).
    pub fn root_power(p: u32, exp: i64) -> Aut {
        let e = exp.rem_euclid(p as i64) as u8;
        Aut::make(p, e, Kind::RootPower)
    }

    /// An element of Stab(1) with the given first-level sections.
    pub fn from_sections(sections: Vec<Aut>) -> Aut {
        let p = sections[0].p();
        debug_assert_eq!(sections.len(), p as usize);
        Aut::make(p, 0, Kind::Sections(sections))
    }

    /// An element with the given activity and first-level sections.
    pub fn with_activity(activity: i64, sections: Vec<Aut>) -> Aut {
        let p = sections[0].p();
        let e = activity.rem_euclid(p as i64) as u8;
        Aut::make(p, e, Kind::Sections(sections))
    }

    /// The self-referential element with the given activity whose every
    /// first-level section is the element itself.
    pub fn all_self(p: u32, activity: i64) -> Aut {
        let e = activity.rem_euclid(p as i64) as u8;
        Aut::make(p, e, Kind::AllSelf)
    }

    /// An element whose sections are produced on demand by `f`; used for
    /// finitely presented self-referential recursions. `f` must terminate
    /// level by level (each call may only build one more level eagerly).
    pub fn from_fn<F>(p: u32, activity: i64, f: F) -> Aut
    where
        F: Fn(u8) -> Aut + Send + Sync + 'static,
    {
        let e = activity.rem_euclid(p as i64) as u8;
        Aut::make(p, e, Kind::LazyFn(Box::new(f)))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    /// Exponent of pi at the root.
    pub fn activity(&self) -> u8 {
        self.0.activity
    }

    pub fn compose(&self, other: &Aut) -> Aut {
        debug_assert_eq!(self.p(), other.p());
        let p = self.p();
        let act = (self.activity() as u32 + other.activity() as u32) % p;
        Aut::make(p, act as u8, Kind::Compose(self.clone(), other.clone()))
    }

    pub fn compose_all(p: u32, parts: &[Aut]) -> Aut {
        parts
            .iter()
            .fold(Aut::identity(p), |acc, g| acc.compose(g))
    }

    pub fn invert(&self) -> Aut {
        let p = self.p();
        let act = (p - self.activity() as u32) % p;
        Aut::make(p, act as u8, Kind::Inverse(self.clone()))
    }

    pub fn pow(&self, exp: i64) -> Aut {
        let base = if exp < 0 { self.invert() } else { self.clone() };
        let mut acc = Aut::identity(self.p());
        for _ in 0..exp.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    pub fn conjugate(&self, by: &Aut) -> Aut {
        by.invert().compose(self).compose(by)
    }

    pub fn commutator(x: &Aut, y: &Aut) -> Aut {
        x.invert().compose(&y.invert()).compose(x).compose(y)
    }

    /// The element acting as `self` on the subtree at `v` and trivially
    /// elsewhere.
    pub fn place_at(&self, v: &Vertex) -> Aut {
        if v.is_root() {
            return self.clone();
        }
        Aut::make(
            self.p(),
            0,
            Kind::Placed(self.clone(), v.letters().to_vec()),
        )
    }

    /// First-level section at letter `i`.
    pub fn section(&self, i: u8) -> Aut {
        let p = self.p();
        debug_assert!((i as u32) < p);
        if matches!(self.0.kind, Kind::AllSelf) {
            // Not memoized: storing self in its own memo table would make
            // the Arc cyclic.
            return self.clone();
        }
        {
            let memo = self.0.memo.lock().unwrap();
            if let Some(g) = &memo[i as usize] {
                return g.clone();
            }
        }
        let result = match &self.0.kind {
            Kind::RootPower => Aut::identity(p),
            Kind::Sections(v) => v[i as usize].clone(),
            Kind::Compose(g, h) => {
                let j = (i as u32 + g.activity() as u32) % p;
                g.section(i).compose(&h.section(j as u8))
            }
            Kind::Inverse(g) => {
                // (g^-1)@i = (g@(i^{g^-1}))^-1
                let j = (i as u32 + p - g.activity() as u32) % p;
                g.section(j as u8).invert()
            }
            Kind::AllSelf => unreachable!("handled above"),
            Kind::LazyFn(f) => f(i),
            Kind::Placed(g, path) => {
                if i == path[0] {
                    if path.len() == 1 {
                        g.clone()
                    } else {
                        Aut::make(p, 0, Kind::Placed(g.clone(), path[1..].to_vec()))
                    }
                } else {
                    Aut::identity(p)
                }
            }
        };
        let mut memo = self.0.memo.lock().unwrap();
        memo[i as usize].get_or_insert(result).clone()
    }

    /// Section at an arbitrary vertex: iterated first-level sections.
    pub fn section_at(&self, v: &Vertex) -> Result<Aut> {
        if v.p() != self.p() {
            return Err(Error::AlphabetMismatch {
                expected: self.p(),
                got: v.p(),
            });
        }
        let mut g = self.clone();
        for &l in v.letters() {
            g = g.section(l);
        }
        Ok(g)
    }

    /// Image of a vertex under the automorphism.
    pub fn act_on_vertex(&self, v: &Vertex) -> Result<Vertex> {
        if v.p() != self.p() {
            return Err(Error::AlphabetMismatch {
                expected: self.p(),
                got: v.p(),
            });
        }
        let p = self.p();
        let mut g = self.clone();
        let mut letters = Vec::with_capacity(v.depth());
        for &l in v.letters() {
            letters.push((((l as u32) + g.activity() as u32) % p) as u8);
            g = g.section(l);
        }
        Vertex::new(letters, p)
    }

    /// Complete activity labeling of all vertices of depth < n, in
    /// breadth-first order.
    pub fn portrait(&self, depth: usize) -> Result<Portrait> {
        self.portrait_capped(depth, DEPTH_CAP)
    }

    pub fn portrait_capped(&self, depth: usize, cap: usize) -> Result<Portrait> {
        if depth > cap {
            return Err(Error::DepthCap {
                requested: depth,
                cap,
            });
        }
        let p = self.p();
        let mut labels = Vec::new();
        let mut frontier = vec![self.clone()];
        for _ in 0..depth {
            let mut next = Vec::with_capacity(frontier.len() * p as usize);
            for g in &frontier {
                labels.push(g.activity());
                for i in 0..p as u8 {
                    next.push(g.section(i));
                }
            }
            frontier = next;
        }
        Ok(Portrait {
            p,
            depth,
            labels,
        })
    }

    /// True iff the element fixes every vertex of level n, i.e. the depth-n
    /// portrait is all-zero.
    pub fn is_level_trivial(&self, n: usize) -> Result<bool> {
        Ok(self.portrait(n)?.is_trivial())
    }

    /// Portrait equality at the given depth.
    pub fn portrait_eq(&self, other: &Aut, depth: usize) -> Result<bool> {
        Ok(self.portrait(depth)? == other.portrait(depth)?)
    }
}

impl std::fmt::Debug for Aut {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Aut(p={}, activity={})", self.p(), self.activity())
    }
}

/// Finite truncation of an automorphism: activities of all vertices of
/// depth < n, breadth-first.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Portrait {
    p: u32,
    depth: usize,
    labels: Vec<u8>,
}

impl Portrait {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Labels in breadth-first order, level by level.
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn is_trivial(&self) -> bool {
        self.labels.iter().all(|&l| l == 0)
    }

    pub fn label_of(&self, v: &Vertex) -> Option<u8> {
        if v.depth() >= self.depth {
            return None;
        }
        let p = self.p as usize;
        // Offset of level d in the flat array: (p^d - 1) / (p - 1).
        let offset = (p.pow(v.depth() as u32) - 1) / (p - 1);
        Some(self.labels[offset + v.level_index()])
    }

    /// Canonical JSON form: {"p", "depth", "labels"} with a flat
    /// breadth-first label array.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "p": self.p,
            "depth": self.depth,
            "labels": self.labels,
        })
    }

    /// GraphViz DOT rendering: one node per vertex labeled with its
    /// activity exponent, deterministic breadth-first node ordering.
    /// Leaves at the truncation depth are drawn unlabeled.
    pub fn to_dot(&self) -> String {
        let p = self.p as usize;
        let mut out = String::from("digraph portrait {\n  node [shape=circle];\n");
        let mut names: Vec<Vec<String>> = Vec::new();
        for d in 0..=self.depth {
            let count = p.pow(d as u32);
            let mut level = Vec::with_capacity(count);
            for i in 0..count {
                let v = Vertex::from_level_index(i, d, self.p);
                let name = if v.is_root() {
                    "root".to_string()
                } else {
                    format!(
                        "v{}",
                        v.letters()
                            .iter()
                            .map(|l| l.to_string())
                            .collect::<String>()
                    )
                };
                if d < self.depth {
                    let label = self.label_of(&v).unwrap();
                    let _ = writeln!(out, "  {} [label=\"{}\"];", name, label);
                } else {
                    let _ = writeln!(out, "  {} [label=\"\", shape=point];", name);
                }
                level.push(name);
            }
            names.push(level);
        }
        for d in 0..self.depth {
            for (i, parent) in names[d].iter().enumerate() {
                for c in 0..p {
                    let _ = writeln!(out, "  {} -> {};", parent, names[d + 1][i * p + c]);
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{AccompanyingVector, Family, FamilyKind};

    fn gupta_sidki() -> Family {
        Family::new(
            FamilyKind::Egs,
            AccompanyingVector::new(3, &[1, 2]).unwrap(),
        )
    }

    #[test]
    fn vertex_indexing_roundtrip() {
        for depth in 0..4 {
            for i in 0..3usize.pow(depth) {
                let v = Vertex::from_level_index(i, depth as usize, 3);
                assert_eq!(v.level_index(), i);
                assert_eq!(v.depth(), depth as usize);
            }
        }
    }

    #[test]
    fn a_moves_first_letter() {
        let a = Aut::root_power(3, 1);
        let v = Vertex::new(vec![0], 3).unwrap();
        assert_eq!(a.act_on_vertex(&v).unwrap().letters(), &[1]);
    }

    #[test]
    fn identity_fixes_everything() {
        let id = Aut::identity(3);
        for i in 0..9 {
            let v = Vertex::from_level_index(i, 2, 3);
            assert_eq!(id.act_on_vertex(&v).unwrap(), v);
        }
    }

    #[test]
    fn b_section_action() {
        // b@0 = a^{alpha_1} = a for alpha = (1,2), so b sends 00 to 01.
        let fam = gupta_sidki();
        let b = fam.generator_b();
        let v = Vertex::new(vec![0, 0], 3).unwrap();
        assert_eq!(b.act_on_vertex(&v).unwrap().letters(), &[0, 1]);
    }

    #[test]
    fn a_cubed_is_identity() {
        let a = Aut::root_power(3, 1);
        let a3 = a.compose(&a).compose(&a);
        assert!(a3.is_level_trivial(5).unwrap());
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let fam = gupta_sidki();
        let g = fam
            .generator_b()
            .compose(&Aut::root_power(3, 1))
            .compose(&fam.generator_c().unwrap());
        let gg = g.compose(&g.invert());
        assert!(gg.is_level_trivial(5).unwrap());
    }

    #[test]
    fn conjugation_anchor() {
        // a^-1 b a has sections (b, a^{alpha_1}, ..., a^{alpha_{p-1}}).
        let fam = gupta_sidki();
        let a = Aut::root_power(3, 1);
        let b = fam.generator_b();
        let t = b.conjugate(&a);
        assert!(t.section(0).portrait_eq(&b, 5).unwrap());
        assert!(t
            .section(1)
            .portrait_eq(&Aut::root_power(3, 1), 5)
            .unwrap());
        assert!(t
            .section(2)
            .portrait_eq(&Aut::root_power(3, 2), 5)
            .unwrap());
    }

    #[test]
    fn b_section_last_is_b() {
        let fam = gupta_sidki();
        let b = fam.generator_b();
        assert!(b.section(2).portrait_eq(&b, 6).unwrap());
    }

    #[test]
    fn c_section_first_is_c() {
        let fam = gupta_sidki();
        let c = fam.generator_c().unwrap();
        assert!(c.section(0).portrait_eq(&c, 6).unwrap());
    }

    #[test]
    fn a_sections_trivial() {
        let a = Aut::root_power(3, 1);
        for i in 0..3 {
            assert!(a.section(i).is_level_trivial(4).unwrap());
        }
    }

    #[test]
    fn portrait_of_identity_and_a() {
        let id = Aut::identity(3);
        assert!(id.portrait(3).unwrap().is_trivial());
        let a = Aut::root_power(3, 1);
        let pt = a.portrait(2).unwrap();
        assert_eq!(pt.labels(), &[1, 0, 0, 0]);
    }

    #[test]
    fn c_inv_b_is_level_one_trivial() {
        let fam = gupta_sidki();
        let g = fam.generator_c().unwrap().invert().compose(&fam.generator_b());
        assert!(g.is_level_trivial(1).unwrap());
        assert!(!g.is_level_trivial(2).unwrap());
    }

    #[test]
    fn b_stabilizer_levels() {
        let fam = gupta_sidki();
        let b = fam.generator_b();
        assert!(b.is_level_trivial(1).unwrap());
        assert!(!b.is_level_trivial(2).unwrap());
        let a = Aut::root_power(3, 1);
        assert!(!a.is_level_trivial(1).unwrap());
    }

    #[test]
    fn place_at_root_is_self() {
        let fam = gupta_sidki();
        let b = fam.generator_b();
        let placed = b.place_at(&Vertex::root(3));
        assert!(placed.portrait_eq(&b, 5).unwrap());
    }

    #[test]
    fn section_of_placed_recovers_element() {
        let fam = gupta_sidki();
        let g = fam.generator_c().unwrap().invert().compose(&fam.generator_b());
        let v = Vertex::new(vec![2, 0, 1], 3).unwrap();
        let placed = g.place_at(&v);
        assert!(placed.section_at(&v).unwrap().portrait_eq(&g, 5).unwrap());
        // Off the support, everything is trivial.
        let w = Vertex::new(vec![0], 3).unwrap();
        assert!(placed.section_at(&w).unwrap().is_level_trivial(5).unwrap());
    }

    #[test]
    fn placed_at_first_child_identity() {
        // (c^-1 b) placed at vertex 0 equals c^-1 * b^a.
        let fam = gupta_sidki();
        let b = fam.generator_b();
        let c = fam.generator_c().unwrap();
        let a = Aut::root_power(3, 1);
        let g = c.invert().compose(&b);
        let placed = g.place_at(&Vertex::new(vec![0], 3).unwrap());
        let expected = c.invert().compose(&b.conjugate(&a));
        assert!(placed.portrait_eq(&expected, 6).unwrap());
    }

    #[test]
    fn section_rule_property() {
        // (gh)@v = g@v * h@(v^g) for a pool of built-in elements.
        let fam = gupta_sidki();
        let a = Aut::root_power(3, 1);
        let b = fam.generator_b();
        let c = fam.generator_c().unwrap();
        let pool = [
            a.clone(),
            b.clone(),
            c.clone(),
            b.conjugate(&a),
            c.invert().compose(&b),
            Aut::commutator(&b, &a),
        ];
        for g in &pool {
            for h in &pool {
                for depth in 1..=3usize {
                    for i in 0..3usize.pow(depth as u32) {
                        let v = Vertex::from_level_index(i, depth, 3);
                        let gh = g.compose(h);
                        let lhs = gh.section_at(&v).unwrap();
                        let vg = g.act_on_vertex(&v).unwrap();
                        let rhs = g
                            .section_at(&v)
                            .unwrap()
                            .compose(&h.section_at(&vg).unwrap());
                        assert!(lhs.portrait_eq(&rhs, 3).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn action_is_bijective_per_level() {
        let fam = gupta_sidki();
        let g = fam
            .generator_b()
            .compose(&Aut::root_power(3, 2))
            .compose(&fam.generator_c().unwrap());
        for depth in 1..=4usize {
            let count = 3usize.pow(depth as u32);
            let mut seen = vec![false; count];
            for i in 0..count {
                let v = Vertex::from_level_index(i, depth, 3);
                let img = g.act_on_vertex(&v).unwrap().level_index();
                assert!(!seen[img]);
                seen[img] = true;
            }
        }
    }

    #[test]
    fn depth_cap_is_enforced() {
        let a = Aut::root_power(3, 1);
        assert!(matches!(
            a.portrait(DEPTH_CAP + 1),
            Err(Error::DepthCap { .. })
        ));
    }

    #[test]
    fn dot_output_shape() {
        let a = Aut::root_power(3, 1);
        let dot = a.portrait(2).unwrap().to_dot();
        assert!(dot.starts_with("digraph portrait {"));
        assert!(dot.contains("root [label=\"1\"]"));
        assert!(dot.contains("root -> v0;"));
    }
}
