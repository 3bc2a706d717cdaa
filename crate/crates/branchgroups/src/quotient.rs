//! Exact finite quotients: the level-n permutation representation on p^n
//! leaves and a base-and-strong-generating-set engine.
//!
//! Permutations are stored as leaf image arrays (leaves in breadth-first
//! order). The BSGS chain runs over a prescribed base consisting of every
//! vertex of depth 1..=n, ordered by depth and then by level index. With
//! that base the pointwise stabilizer of all vertices of depth <= k is a
//! suffix of the strong generating set, which is exactly what the level
//! stabilizer computations need. The image of an internal vertex is read
//! off a leaf image in O(1): an automorphism maps subtrees to subtrees, so
//! the image of v is the depth-|v| prefix of the image of the leaf v00...0.

use std::collections::{HashMap, HashSet, VecDeque};
use std::path::Path;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::{Aut, Vertex};
use crate::words::{Family, FamilyKind};

/// Cap on the level depth of quotient computations.
pub const LEVEL_CAP: usize = 8;

/// A permutation of the p^n leaves of the depth-n truncated tree.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct LeafPerm {
    p: u32,
    depth: usize,
    images: Vec<u32>,
}

impl LeafPerm {
    pub fn identity(p: u32, depth: usize) -> LeafPerm {
        LeafPerm {
            p,
            depth,
            images: (0..p.pow(depth as u32)).collect(),
        }
    }

    pub fn from_images(p: u32, depth: usize, images: Vec<u32>) -> Result<LeafPerm> {
        let degree = p.pow(depth as u32) as usize;
        if images.len() != degree {
            return Err(Error::DegreeMismatch(images.len(), degree));
        }
        let mut seen = vec![false; degree];
        for &img in &images {
            let i = img as usize;
            if i >= degree || seen[i] {
                return Err(Error::Parameter("images do not form a bijection".into()));
            }
            seen[i] = true;
        }
        Ok(LeafPerm { p, depth, images })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, leaf: usize) -> usize {
        self.images[leaf] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img as usize)
    }

    /// Right-action composition: (g * h)(x) = h(g(x)), matching x^(gh) =
    /// (x^g)^h for tree automorphisms.
    pub fn compose(&self, other: &LeafPerm) -> LeafPerm {
        debug_assert_eq!(self.degree(), other.degree());
        LeafPerm {
            p: self.p,
            depth: self.depth,
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> LeafPerm {
        let mut images = vec![0u32; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u32;
        }
        LeafPerm {
            p: self.p,
            depth: self.depth,
            images,
        }
    }

    /// Image of the depth-d vertex with the given level index, d <= depth.
    pub fn vertex_image(&self, d: usize, index: usize) -> usize {
        let block = (self.p as usize).pow((self.depth - d) as u32);
        self.images[index * block] as usize / block
    }

    /// Restriction to the depth-(n-1) truncation (the tower projection).
    pub fn restrict(&self) -> Result<LeafPerm> {
        if self.depth == 0 {
            return Err(Error::Parameter("cannot restrict a depth-0 permutation".into()));
        }
        let p = self.p as usize;
        let images = (0..self.degree() / p)
            .map(|v| (self.images[v * p] as usize / p) as u32)
            .collect();
        Ok(LeafPerm {
            p: self.p,
            depth: self.depth - 1,
            images,
        })
    }

    /// True iff every vertex of depth <= k is fixed.
    pub fn is_level_trivial(&self, k: usize) -> bool {
        debug_assert!(k <= self.depth);
        let p = self.p as usize;
        for d in 1..=k {
            for v in 0..p.pow(d as u32) {
                if self.vertex_image(d, v) != v {
                    return false;
                }
            }
        }
        true
    }

    /// The section at a depth-k vertex, defined when the permutation fixes
    /// every vertex of depth <= k; a permutation of degree p^(depth-k).
    pub fn section(&self, d: usize, index: usize) -> Result<LeafPerm> {
        if self.vertex_image(d, index) != index {
            return Err(Error::Precondition(
                "section requires the vertex to be fixed".into(),
            ));
        }
        let block = (self.p as usize).pow((self.depth - d) as u32);
        let offset = index * block;
        let images = (0..block)
            .map(|i| (self.images[offset + i] as usize - offset) as u32)
            .collect();
        Ok(LeafPerm {
            p: self.p,
            depth: self.depth - d,
            images,
        })
    }

    /// Embeds a degree p^(depth) permutation as the section at the given
    /// depth-d vertex of a degree p^(depth + d) permutation, trivial
    /// elsewhere.
    pub fn place_at(&self, v: &Vertex) -> LeafPerm {
        let d = v.depth();
        let new_depth = self.depth + d;
        let mut out = LeafPerm::identity(self.p, new_depth);
        let block = self.degree();
        let offset = v.level_index() * block;
        for i in 0..block {
            out.images[offset + i] = (offset + self.images[i] as usize) as u32;
        }
        out
    }
}

/// Level-n permutation representation of a recursive automorphism.
pub fn level_rep(g: &Aut, depth: usize) -> Result<LeafPerm> {
    if depth > LEVEL_CAP {
        return Err(Error::DepthCap {
            requested: depth,
            cap: LEVEL_CAP,
        });
    }
    let p = g.p();
    let degree = (p as usize).pow(depth as u32);
    // Depth-first: the image of leaf i.rest under g is
    // (i + activity) . (image of rest under g@i).
    fn fill_images(g: &Aut, depth: usize, base: usize, images: &mut [u32], img_base: usize) {
        if depth == 0 {
            images[base] = img_base as u32;
            return;
        }
        let p = g.p() as usize;
        let block = p.pow(depth as u32 - 1);
        for i in 0..p {
            let j = (i + g.activity() as usize) % p;
            fill_images(
                &g.section(i as u8),
                depth - 1,
                base + i * block,
                images,
                img_base + j * block,
            );
        }
    }

    let mut images = vec![0u32; degree];
    fill_images(g, depth, 0, &mut images, 0);
    LeafPerm::from_images(p, depth, images)
}

/// The point domain for the BSGS chain: all vertices of depth 1..=n,
/// ordered by depth then level index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    p: u32,
    depth: usize,
    offsets: Vec<usize>,
    size: usize,
}

impl Domain {
    pub fn new(p: u32, depth: usize) -> Domain {
        let mut offsets = Vec::with_capacity(depth + 2);
        let mut total = 0usize;
        offsets.push(0); // depth 0 (unused)
        for d in 1..=depth {
            offsets.push(total);
            total += (p as usize).pow(d as u32);
        }
        offsets.push(total);
        Domain {
            p,
            depth,
            offsets,
            size: total,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// First point of depth d (1-based depth).
    pub fn depth_offset(&self, d: usize) -> usize {
        if d == 0 {
            0
        } else {
            self.offsets[d]
        }
    }

    pub fn point_depth(&self, pt: usize) -> usize {
        (1..=self.depth)
            .find(|&d| pt < self.offsets[d + 1])
            .expect("point in range")
    }

    pub fn point_apply(&self, perm: &LeafPerm, pt: usize) -> usize {
        let d = self.point_depth(pt);
        let index = pt - self.offsets[d];
        self.offsets[d] + perm.vertex_image(d, index)
    }

    /// Smallest point moved by the permutation, in domain order.
    pub fn smallest_moved(&self, perm: &LeafPerm) -> Option<usize> {
        (0..self.size).find(|&pt| self.point_apply(perm, pt) != pt)
    }
}

struct Level {
    base: usize,
    /// Own generators: strong generators whose smallest moved point equals
    /// this level's base point.
    gens: Vec<LeafPerm>,
    /// Transversal: orbit point -> coset representative mapping base to it.
    transversal: HashMap<usize, LeafPerm>,
    orbit: Vec<usize>,
}

/// A finite permutation group given by a base and strong generating set.
pub struct Bsgs {
    domain: Domain,
    levels: Vec<Level>,
}

impl Bsgs {
    /// Deterministic Schreier-Sims over the prescribed ordered base.
    pub fn new(domain: Domain, generators: &[LeafPerm]) -> Bsgs {
        let mut bsgs = Bsgs {
            domain,
            levels: Vec::new(),
        };
        for g in generators {
            if !g.is_identity() {
                bsgs.place_generator(g.clone());
            }
        }
        bsgs.complete();
        bsgs
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn strong_generators(&self) -> Vec<LeafPerm> {
        self.levels.iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    pub fn base_points(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> BigUint {
        let mut n = BigUint::one();
        for level in &self.levels {
            n *= BigUint::from(level.orbit.len());
        }
        n
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.is_empty()
    }

    /// Inserts a non-identity element as an own generator of the level
    /// determined by its smallest moved point, creating the level if
    /// needed. Returns the level index.
    fn place_generator(&mut self, g: LeafPerm) -> usize {
        let m = self
            .domain
            .smallest_moved(&g)
            .expect("non-identity generator");
        let idx = self.levels.partition_point(|l| l.base < m);
        if idx == self.levels.len() || self.levels[idx].base != m {
            self.levels.insert(
                idx,
                Level {
                    base: m,
                    gens: Vec::new(),
                    transversal: HashMap::new(),
                    orbit: Vec::new(),
                },
            );
        }
        self.levels[idx].gens.push(g);
        idx
    }

    /// Effective generating set of level i: own generators of levels >= i.
    fn effective_gens(&self, i: usize) -> Vec<LeafPerm> {
        self.levels[i..]
            .iter()
            .flat_map(|l| l.gens.iter().cloned())
            .collect()
    }

    fn recompute_orbit(&mut self, i: usize) {
        let gens = self.effective_gens(i);
        let base = self.levels[i].base;
        let depth = self.domain.depth;
        let p = self.domain.p;
        let mut transversal = HashMap::new();
        let mut orbit = vec![base];
        transversal.insert(base, LeafPerm::identity(p, depth));
        let mut queue = VecDeque::from([base]);
        while let Some(pt) = queue.pop_front() {
            let rep = transversal[&pt].clone();
            for g in &gens {
                let img = self.domain.point_apply(g, pt);
                if !transversal.contains_key(&img) {
                    transversal.insert(img, rep.compose(g));
                    orbit.push(img);
                    queue.push_back(img);
                }
            }
        }
        orbit.sort_unstable();
        self.levels[i].transversal = transversal;
        self.levels[i].orbit = orbit;
    }

    /// Sifts `g` through levels starting at `from`. Returns the residue
    /// and the index of the first level at which sifting stopped (equal to
    /// `levels.len()` if the whole chain was consumed).
    fn sift_from(&self, from: usize, g: &LeafPerm) -> (LeafPerm, usize) {
        let mut h = g.clone();
        for i in from..self.levels.len() {
            let base = self.levels[i].base;
            let img = self.domain.point_apply(&h, base);
            if img == base {
                continue;
            }
            match self.levels[i].transversal.get(&img) {
                Some(rep) => h = h.compose(&rep.inverse()),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    /// Holt-style deterministic completion: verify levels bottom-up; when
    /// a Schreier generator fails to sift, place its residue and restart
    /// from that level.
    fn complete(&mut self) {
        for i in 0..self.levels.len() {
            self.recompute_orbit(i);
        }
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            match self.verify_level(i as usize) {
                None => i -= 1,
                Some(j) => {
                    // Orbits of levels <= j may have changed.
                    for k in (i as usize).min(j)..=j.min(self.levels.len() - 1) {
                        self.recompute_orbit(k);
                    }
                    i = j as isize;
                }
            }
        }
    }

    /// Checks all Schreier generators of level i. On failure inserts the
    /// residue and returns the index of the level that changed.
    fn verify_level(&mut self, i: usize) -> Option<usize> {
        self.recompute_orbit(i);
        let gens = self.effective_gens(i);
        let orbit = self.levels[i].orbit.clone();
        for &beta in &orbit {
            let u_beta = self.levels[i].transversal[&beta].clone();
            for g in &gens {
                let target = self.domain.point_apply(g, beta);
                let u_target = self.levels[i].transversal[&target].clone();
                let schreier = u_beta.compose(g).compose(&u_target.inverse());
                if schreier.is_identity() {
                    continue;
                }
                let (residue, _) = self.sift_from(i + 1, &schreier);
                if !residue.is_identity() {
                    let j = self.place_generator(residue);
                    // New generator strictly below level i in the chain.
                    debug_assert!(j > i, "residue must fix base points up to level i");
                    return Some(j);
                }
            }
        }
        None
    }

    /// Membership test by sifting.
    pub fn contains(&self, g: &LeafPerm) -> Result<bool> {
        if g.degree() != (self.domain.p as usize).pow(self.domain.depth as u32) {
            return Err(Error::DegreeMismatch(
                g.degree(),
                (self.domain.p as usize).pow(self.domain.depth as u32),
            ));
        }
        let (residue, _) = self.sift_from(0, g);
        Ok(residue.is_identity())
    }

    /// Coset equality: x y^-1 in the group.
    pub fn coset_equal(&self, x: &LeafPerm, y: &LeafPerm) -> Result<bool> {
        self.contains(&x.compose(&y.inverse()))
    }

    /// Strong generators whose smallest moved point has depth > k; they
    /// generate the pointwise stabilizer of all vertices of depth <= k.
    pub fn level_stabilizer_gens(&self, k: usize) -> Vec<LeafPerm> {
        let threshold = self.domain.depth_offset(k + 1);
        self.levels
            .iter()
            .filter(|l| l.base >= threshold)
            .flat_map(|l| l.gens.iter().cloned())
            .collect()
    }

    /// The image of Stab(k) in this quotient, as its own BSGS.
    pub fn level_stabilizer(&self, k: usize) -> Result<Bsgs> {
        if k > self.domain.depth {
            return Err(Error::Parameter(format!(
                "stabilizer level {} exceeds quotient depth {}",
                k, self.domain.depth
            )));
        }
        Ok(Bsgs::new(self.domain.clone(), &self.level_stabilizer_gens(k)))
    }

    /// Normal closure of the subgroup generated by `seeds` under
    /// conjugation by `group_gens`.
    pub fn normal_closure(domain: Domain, group_gens: &[LeafPerm], seeds: &[LeafPerm]) -> Bsgs {
        let mut closure = Bsgs::new(domain.clone(), seeds);
        loop {
            let mut new_elements = Vec::new();
            for s in closure.strong_generators() {
                for g in group_gens {
                    let conj = g.inverse().compose(&s).compose(g);
                    if !closure.contains(&conj).unwrap_or(false) {
                        new_elements.push(conj);
                    }
                }
            }
            if new_elements.is_empty() {
                return closure;
            }
            let mut gens = closure.strong_generators();
            gens.extend(new_elements);
            closure = Bsgs::new(domain.clone(), &gens);
        }
    }
}

/// A finite level quotient of a group family, with its generating
/// permutations and BSGS.
pub struct Quotient {
    family: Family,
    depth: usize,
    generator_perms: Vec<LeafPerm>,
    bsgs: Bsgs,
}

impl Quotient {
    /// The image of the family at level `depth`.
    pub fn new(family: &Family, depth: usize) -> Result<Quotient> {
        if depth == 0 || depth > LEVEL_CAP {
            return Err(Error::ResourceCap(format!(
                "quotient level must be in 1..={}, got {}",
                LEVEL_CAP, depth
            )));
        }
        let generator_perms: Vec<LeafPerm> = family
            .generators()
            .into_iter()
            .map(|(_, g)| level_rep(&g, depth))
            .collect::<Result<_>>()?;
        let domain = Domain::new(family.p(), depth);
        let bsgs = Bsgs::new(domain, &generator_perms);
        Ok(Quotient {
            family: family.clone(),
            depth,
            generator_perms,
            bsgs,
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn generator_perms(&self) -> &[LeafPerm] {
        &self.generator_perms
    }

    pub fn bsgs(&self) -> &Bsgs {
        &self.bsgs
    }

    pub fn order(&self) -> BigUint {
        self.bsgs.order()
    }

    pub fn domain(&self) -> &Domain {
        self.bsgs.domain()
    }

    /// BSGS of the derived subgroup: normal closure of the generator
    /// commutators.
    pub fn derived_subgroup(&self) -> Bsgs {
        let mut comms = Vec::new();
        for x in &self.generator_perms {
            for y in &self.generator_perms {
                let comm = x
                    .inverse()
                    .compose(&y.inverse())
                    .compose(x)
                    .compose(y);
                if !comm.is_identity() {
                    comms.push(comm);
                }
            }
        }
        Bsgs::normal_closure(self.domain().clone(), &self.generator_perms, &comms)
    }

    /// gamma_k of the quotient; gamma_1 is the whole group.
    pub fn lower_central(&self, k: usize) -> Bsgs {
        let mut current = Bsgs::new(self.domain().clone(), &self.generator_perms);
        for _ in 1..k {
            let mut comms = Vec::new();
            for x in &self.generator_perms {
                for y in current.strong_generators() {
                    let comm = x.inverse().compose(&y.inverse()).compose(x).compose(&y);
                    if !comm.is_identity() {
                        comms.push(comm);
                    }
                }
            }
            current = Bsgs::normal_closure(self.domain().clone(), &self.generator_perms, &comms);
        }
        current
    }

    /// Normal closure of the given elements in the quotient.
    pub fn normal_closure_of(&self, seeds: &[LeafPerm]) -> Bsgs {
        Bsgs::normal_closure(self.domain().clone(), &self.generator_perms, seeds)
    }

    /// Image of Stab(k) in the quotient. Lifting is surjective: a level-k
    /// trivial permutation in the image has level-k trivial preimages.
    pub fn stab_image(&self, k: usize) -> Result<Bsgs> {
        if k > self.depth {
            return Err(Error::Parameter(format!(
                "stab level {} exceeds quotient depth {}",
                k, self.depth
            )));
        }
        self.bsgs.level_stabilizer(k)
    }
}

/// Exhaustive BFS enumeration of the group generated by `gens`; test
/// oracle for orders up to `cap`.
pub fn bfs_enumerate(gens: &[LeafPerm], cap: usize) -> Result<HashSet<Vec<u32>>> {
    let Some(first) = gens.first() else {
        return Ok(HashSet::new());
    };
    let id = LeafPerm::identity(first.p(), first.depth());
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(id.images().to_vec());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g);
            if seen.insert(y.images().to_vec()) {
                if seen.len() > cap {
                    return Err(Error::ResourceCap(format!(
                        "BFS enumeration exceeded cap {}",
                        cap
                    )));
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

/// Membership in the level-m image of H_n (EGS), T_n (GGS), R_n
/// (F-subgroup): trivial on levels <= n and every depth-n section in the
/// derived subgroup of the level-(m-n) quotient of the same family.
pub fn product_derived_membership(
    family: &Family,
    n: usize,
    m: usize,
    x: &LeafPerm,
) -> Result<bool> {
    if n >= m {
        return Err(Error::Parameter(format!(
            "need n < m, got n = {}, m = {}",
            n, m
        )));
    }
    let expected = (family.p() as usize).pow(m as u32);
    if x.degree() != expected {
        return Err(Error::DegreeMismatch(x.degree(), expected));
    }
    if !x.is_level_trivial(n) {
        return Ok(false);
    }
    let sub = Quotient::new(family, m - n)?;
    let derived = sub.derived_subgroup();
    for v in 0..(family.p() as usize).pow(n as u32) {
        let section = x.section(n, v)?;
        if !derived.contains(&section)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The level-m image of the subgroup generated by all (c^-1 b)*v over
/// depth-n vertices v.
pub fn ch_subgroup(family: &Family, n: usize, m: usize) -> Result<Bsgs> {
    if family.kind() != FamilyKind::Egs {
        return Err(Error::Parameter("CH_n is defined for EGS families".into()));
    }
    if n >= m {
        return Err(Error::Parameter(format!(
            "need n < m, got n = {}, m = {}",
            n, m
        )));
    }
    let gens = ch_generators(family, n, m)?;
    Ok(Bsgs::new(Domain::new(family.p(), m), &gens))
}

/// Level-m permutations of the (c^-1 b)*v generators, v of depth n, in
/// level-index order.
pub fn ch_generators(family: &Family, n: usize, m: usize) -> Result<Vec<LeafPerm>> {
    let p = family.p();
    let cb = family.generator_c()?.invert().compose(&family.generator_b());
    let base = level_rep(&cb, m - n)?;
    Ok((0..(p as usize).pow(n as u32))
        .map(|v| base.place_at(&Vertex::from_level_index(v, n, p)))
        .collect())
}

/// Generators of the level-m image of H_n / T_n / R_n: strong generators
/// of the derived subgroup of the level-(m-n) quotient, placed at every
/// depth-n vertex.
pub fn product_derived_generators(family: &Family, n: usize, m: usize) -> Result<Vec<LeafPerm>> {
    if n >= m {
        return Err(Error::Parameter(format!(
            "need n < m, got n = {}, m = {}",
            n, m
        )));
    }
    let p = family.p();
    let sub = Quotient::new(family, m - n)?;
    let derived_gens = sub.derived_subgroup().strong_generators();
    let mut out = Vec::new();
    for v in 0..(p as usize).pow(n as u32) {
        let vert = Vertex::from_level_index(v, n, p);
        for g in &derived_gens {
            out.push(g.place_at(&vert));
        }
    }
    Ok(out)
}

/// On-disk cache record for a computed BSGS.
#[derive(Serialize, Deserialize)]
pub struct CacheRecord {
    pub version: u32,
    pub p: u32,
    pub depth: usize,
    pub base: Vec<usize>,
    pub strong_generators: Vec<Vec<u32>>,
}

pub const CACHE_VERSION: u32 = 1;

impl CacheRecord {
    pub fn from_bsgs(bsgs: &Bsgs) -> CacheRecord {
        CacheRecord {
            version: CACHE_VERSION,
            p: bsgs.domain.p,
            depth: bsgs.domain.depth,
            base: bsgs.base_points(),
            strong_generators: bsgs
                .strong_generators()
                .iter()
                .map(|g| g.images().to_vec())
                .collect(),
        }
    }

    pub fn to_bsgs(&self) -> Result<Bsgs> {
        let gens: Vec<LeafPerm> = self
            .strong_generators
            .iter()
            .map(|imgs| LeafPerm::from_images(self.p, self.depth, imgs.clone()))
            .collect::<Result<_>>()?;
        Ok(Bsgs::new(Domain::new(self.p, self.depth), &gens))
    }
}

/// Writes a BSGS cache record; concurrent writers are serialized by an
/// atomic rename.
pub fn cache_store(dir: &Path, key: &str, bsgs: &Bsgs) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let record = CacheRecord::from_bsgs(bsgs);
    let tmp = dir.join(format!("{}.tmp.{}", key, std::process::id()));
    std::fs::write(&tmp, serde_json::to_vec(&record)?)?;
    std::fs::rename(tmp, dir.join(format!("{}.json", key)))?;
    Ok(())
}

pub fn cache_load(dir: &Path, key: &str) -> Result<Option<Bsgs>> {
    let path = dir.join(format!("{}.json", key));
    if !path.exists() {
        return Ok(None);
    }
    let record: CacheRecord = serde_json::from_slice(&std::fs::read(path)?)?;
    if record.version != CACHE_VERSION {
        return Ok(None);
    }
    Ok(Some(record.to_bsgs()?))
}

/// Cache key for a family-level subgroup computation.
pub fn cache_key(family: &Family, depth: usize, tag: &str) -> String {
    let alpha: Vec<String> = family.vector().alpha().iter().map(|x| x.to_string()).collect();
    format!(
        "{}-p{}-a{}-n{}-{}",
        match family.kind() {
            FamilyKind::Ggs => "ggs",
            FamilyKind::Egs => "egs",
            FamilyKind::FSubgroup => "f",
        },
        family.p(),
        alpha.join("_"),
        depth,
        tag
    )
}
