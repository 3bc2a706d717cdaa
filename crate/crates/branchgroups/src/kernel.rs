//! The completion-kernel machinery: the t_n sequence, level vectors with
//! their projection maps theta, index assignments satisfying the
//! summation condition, canonical kernel elements, and coset witnesses.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quotient::{level_rep, LeafPerm, Quotient};
use crate::tree::{Aut, Vertex};
use crate::words::{Family, FamilyKind};

/// t_1 = b; t_{n+1} has trivial activity and first-level sections
/// (t_n, a^{alpha_1}, ..., a^{alpha_{p-1}}).
pub fn t_element(family: &Family, n: usize) -> Result<Aut> {
    if n == 0 {
        return Err(Error::Parameter("t_n requires n >= 1".into()));
    }
    let p = family.p();
    let mut t = family.generator_b();
    for _ in 1..n {
        let mut sections = Vec::with_capacity(p as usize);
        sections.push(t);
        for i in 1..p {
            sections.push(Aut::root_power(p, family.vector().coeff(i as usize) as i64));
        }
        t = Aut::from_sections(sections);
    }
    Ok(t)
}

/// The element c^-1 b whose placements generate CH_n.
pub fn cb_element(family: &Family) -> Result<Aut> {
    Ok(family.generator_c()?.invert().compose(&family.generator_b()))
}

/// A vector over Z_p indexed by the depth-n vertices in breadth-first
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelVector {
    p: u32,
    depth: usize,
    entries: Vec<u32>,
}

impl LevelVector {
    pub fn new(p: u32, depth: usize, entries: Vec<u32>) -> Result<LevelVector> {
        let len = (p as usize).pow(depth as u32);
        if entries.len() != len {
            return Err(Error::Parameter(format!(
                "level vector at depth {} needs {} entries, got {}",
                depth,
                len,
                entries.len()
            )));
        }
        Ok(LevelVector {
            p,
            depth,
            entries: entries.into_iter().map(|x| x % p).collect(),
        })
    }

    pub fn zero(p: u32, depth: usize) -> LevelVector {
        LevelVector {
            p,
            depth,
            entries: vec![0; (p as usize).pow(depth as u32)],
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn add(&self, other: &LevelVector) -> Result<LevelVector> {
        if self.depth != other.depth || self.p != other.p {
            return Err(Error::Parameter("level vector shape mismatch".into()));
        }
        Ok(LevelVector {
            p: self.p,
            depth: self.depth,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(x, y)| (x + y) % self.p)
                .collect(),
        })
    }

    pub fn scale(&self, k: u32) -> LevelVector {
        LevelVector {
            p: self.p,
            depth: self.depth,
            entries: self.entries.iter().map(|x| (x * k) % self.p).collect(),
        }
    }
}

/// The projection theta_n: per-parent sums mod p. theta_1 lands in the
/// trivial depth-0 group, so it sends everything to zero.
pub fn theta(x: &LevelVector) -> Result<LevelVector> {
    if x.depth == 0 {
        return Err(Error::Parameter("theta requires depth >= 1".into()));
    }
    if x.depth == 1 {
        return Ok(LevelVector {
            p: x.p,
            depth: 0,
            entries: vec![0],
        });
    }
    let p = x.p as usize;
    let entries = x
        .entries
        .chunks(p)
        .map(|c| c.iter().sum::<u32>() % x.p)
        .collect();
    Ok(LevelVector {
        p: x.p,
        depth: x.depth - 1,
        entries,
    })
}

/// An index i_v in Z_p for every vertex of depth <= n, root included,
/// breadth-first. Valid assignments satisfy the summation condition
/// i_v = sum of the children's indices mod p at every internal vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexAssignment {
    pub p: u32,
    pub depth: usize,
    pub indices: Vec<u32>,
}

/// Number of vertices of depth <= n in the p-ary tree.
fn tree_size(p: u32, depth: usize) -> usize {
    ((p as usize).pow(depth as u32 + 1) - 1) / (p as usize - 1)
}

/// Global breadth-first index of the first depth-d vertex.
fn depth_offset(p: u32, d: usize) -> usize {
    if d == 0 {
        0
    } else {
        tree_size(p, d - 1)
    }
}

impl IndexAssignment {
    pub fn new(p: u32, depth: usize, indices: Vec<u32>) -> Result<IndexAssignment> {
        let expected = tree_size(p, depth);
        if indices.len() != expected {
            return Err(Error::Parameter(format!(
                "assignment at depth {} needs {} indices, got {}",
                depth,
                expected,
                indices.len()
            )));
        }
        Ok(IndexAssignment {
            p,
            depth,
            indices: indices.into_iter().map(|x| x % p).collect(),
        })
    }

    pub fn zero(p: u32, depth: usize) -> IndexAssignment {
        IndexAssignment {
            p,
            depth,
            indices: vec![0; tree_size(p, depth)],
        }
    }

    /// Builds the unique valid assignment with the given leaf values;
    /// internal indices (root included) are forced by the summation
    /// condition.
    pub fn from_leaf_vector(leaves: &LevelVector) -> IndexAssignment {
        let p = leaves.p;
        let mut levels: Vec<Vec<u32>> = vec![leaves.entries.clone()];
        while levels.last().unwrap().len() > 1 {
            let prev = levels.last().unwrap();
            let next: Vec<u32> = prev
                .chunks(p as usize)
                .map(|c| c.iter().sum::<u32>() % p)
                .collect();
            levels.push(next);
        }
        levels.reverse();
        IndexAssignment {
            p,
            depth: leaves.depth,
            indices: levels.concat(),
        }
    }

    pub fn index_of(&self, v: &Vertex) -> u32 {
        self.indices[depth_offset(self.p, v.depth()) + v.level_index()]
    }

    pub fn root_index(&self) -> u32 {
        self.indices[0]
    }

    /// The deepest-level values as a vector.
    pub fn leaf_vector(&self) -> LevelVector {
        LevelVector {
            p: self.p,
            depth: self.depth,
            entries: self.indices[depth_offset(self.p, self.depth)..].to_vec(),
        }
    }

    /// The restriction to depth n <= self.depth.
    pub fn truncate(&self, n: usize) -> Result<IndexAssignment> {
        if n > self.depth {
            return Err(Error::Parameter("truncation depth exceeds assignment depth".into()));
        }
        Ok(IndexAssignment {
            p: self.p,
            depth: n,
            indices: self.indices[..tree_size(self.p, n)].to_vec(),
        })
    }

    /// The summation condition at every internal vertex. With
    /// `zero_root` the root index must additionally vanish.
    pub fn check_summation(&self, zero_root: bool) -> bool {
        if zero_root && self.indices[0] != 0 {
            return false;
        }
        let p = self.p as usize;
        for d in 0..self.depth {
            let off = depth_offset(self.p, d);
            let child_off = depth_offset(self.p, d + 1);
            for v in 0..p.pow(d as u32) {
                let sum: u32 = self.indices[child_off + v * p..child_off + (v + 1) * p]
                    .iter()
                    .sum();
                if self.indices[off + v] != sum % self.p {
                    return false;
                }
            }
        }
        true
    }

    /// Deterministic extension to depth+1: each new first child carries
    /// its parent's index, the other children get 0.
    pub fn extend_default(&self) -> IndexAssignment {
        let p = self.p as usize;
        let leaves = &self.indices[depth_offset(self.p, self.depth)..];
        let mut new_level = Vec::with_capacity(leaves.len() * p);
        for &i in leaves {
            new_level.push(i);
            new_level.extend(std::iter::repeat(0).take(p - 1));
        }
        let mut indices = self.indices.clone();
        indices.extend(new_level);
        IndexAssignment {
            p: self.p,
            depth: self.depth + 1,
            indices,
        }
    }

    /// Uniformly random valid extension: for each leaf, the first p-1
    /// children are uniform and the last child balances the sum.
    pub fn extend_random(&self, seed: u64) -> IndexAssignment {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = self.p;
        let leaves = &self.indices[depth_offset(p, self.depth)..];
        let mut new_level = Vec::with_capacity(leaves.len() * p as usize);
        for &i in leaves {
            let mut sum = 0u32;
            for _ in 0..p - 1 {
                let x = rng.gen_range(0..p);
                new_level.push(x);
                sum = (sum + x) % p;
            }
            new_level.push((i + p - sum) % p);
        }
        let mut indices = self.indices.clone();
        indices.extend(new_level);
        IndexAssignment {
            p,
            depth: self.depth + 1,
            indices,
        }
    }

    /// A uniformly random valid assignment with free leaf values.
    pub fn random(p: u32, depth: usize, seed: u64) -> IndexAssignment {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let entries = (0..(p as usize).pow(depth as u32))
            .map(|_| rng.gen_range(0..p))
            .collect();
        IndexAssignment::from_leaf_vector(&LevelVector {
            p,
            depth,
            entries,
        })
    }

    /// The canonical kernel element at the assignment's depth: the
    /// product over depth-n vertices of (c^-1 b)^{i_v} placed at v.
    /// Supports are disjoint, so the product order is immaterial.
    pub fn canonical_element(&self, family: &Family) -> Result<Aut> {
        if family.kind() != FamilyKind::Egs {
            return Err(Error::Parameter(
                "canonical kernel elements live in EGS families".into(),
            ));
        }
        let cb = cb_element(family)?;
        let leaves = self.leaf_vector();
        let mut parts = Vec::new();
        for (idx, &i) in leaves.entries.iter().enumerate() {
            if i != 0 {
                let v = Vertex::from_level_index(idx, self.depth, self.p);
                parts.push(cb.pow(i as i64).place_at(&v));
            }
        }
        Ok(Aut::compose_all(self.p, &parts))
    }
}

/// The indicator assignment of the path through `stem` extended by the
/// 0-child forever: every vertex on the path gets 1, all others 0.
pub fn path_assignment(stem: &Vertex, depth: usize) -> IndexAssignment {
    let p = stem.p();
    let mut entries = vec![0u32; (p as usize).pow(depth as u32)];
    let mut leaf = stem.letters().to_vec();
    leaf.truncate(depth);
    leaf.resize(depth, 0);
    entries[Vertex::new(leaf, p).expect("valid letters").level_index()] = 1;
    IndexAssignment::from_leaf_vector(&LevelVector {
        p,
        depth,
        entries,
    })
}

/// Outcome of a kernel coset test: the exponent family of a witness
/// y in CH_n with x y^-1 in the level-m image of H_n, if one exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetWitness {
    pub exponents: Vec<u32>,
}

/// Decides, in the level-m quotient, whether the coset x H_n meets the
/// image of CH_n. A witness y = prod ((c^-1 b)*v)^{e_v} works iff every
/// depth-n section of x is congruent to (c^-1 b)^{e_v} modulo the
/// derived subgroup of the level-(m-n) quotient, so each exponent is
/// resolved independently by sifting.
pub fn kernel_coset_witness(
    family: &Family,
    n: usize,
    m: usize,
    x: &Aut,
) -> Result<Option<CosetWitness>> {
    if n >= m {
        return Err(Error::Parameter(format!(
            "need n < m, got n = {}, m = {}",
            n, m
        )));
    }
    if !x.is_level_trivial(n)? {
        return Err(Error::Precondition(format!(
            "kernel_coset_witness requires x in Stab({})",
            n
        )));
    }
    let p = family.p();
    let sub = Quotient::new(family, m - n)?;
    let derived = sub.derived_subgroup();
    let cb = level_rep(&cb_element(family)?, m - n)?;
    let x_rep = level_rep(x, m)?;
    let mut exponents = Vec::with_capacity((p as usize).pow(n as u32));
    for v in 0..(p as usize).pow(n as u32) {
        let section = x_rep.section(n, v)?;
        let e = (0..p).find(|&e| {
            let candidate = section.compose(&cb.inverse_pow(e));
            derived.contains(&candidate).unwrap_or(false)
        });
        match e {
            Some(e) => exponents.push(e),
            None => return Ok(None),
        }
    }
    Ok(Some(CosetWitness { exponents }))
}

impl LeafPerm {
    fn inverse_pow(&self, e: u32) -> LeafPerm {
        let mut out = LeafPerm::identity(self.p(), self.depth());
        let inv = self.inverse();
        for _ in 0..e {
            out = out.compose(&inv);
        }
        out
    }
}

/// First vertex at which two assignments of the same shape disagree, in
/// breadth-first order. Two valid assignments define the same kernel
/// element exactly when there is none: at a disagreeing depth-n vertex v
/// the quotient of the canonical elements has section (c^-1 b)^(i_v - j_v)
/// at v, which has nonzero abelianization and so falls outside the
/// derived subgroup of the group itself — even though every finite level
/// quotient absorbs it.
pub fn separating_vertex(a1: &IndexAssignment, a2: &IndexAssignment) -> Option<Vertex> {
    if a1.p != a2.p || a1.depth != a2.depth {
        return None;
    }
    for d in 0..=a1.depth {
        let off = depth_offset(a1.p, d);
        for v in 0..(a1.p as usize).pow(d as u32) {
            if a1.indices[off + v] != a2.indices[off + v] {
                return Some(Vertex::from_level_index(v, d, a1.p));
            }
        }
    }
    None
}

/// Verdict of the coset witness as an element: the canonical CH_n
/// element realizing the exponents.
pub fn witness_element(family: &Family, n: usize, w: &CosetWitness) -> Result<Aut> {
    let asg = IndexAssignment::from_leaf_vector(&LevelVector::new(
        family.p(),
        n,
        w.exponents.clone(),
    )?);
    asg.canonical_element(family)
}
