//! Brute-force finite matrix groups: closure, normal closure, commutator
//! subgroup, Bruhat census, and a binary cache for enumerated tables.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use indexmap::IndexSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::ree_g2::Ree;
use crate::rings::Ring;
use crate::suzuki_c2::Suzuki;
use crate::twisted::TwistedGroup;

/// A finite matrix group stored as the set of canonical encodings of its
/// elements, in breadth-first discovery order.
#[derive(Clone, Debug)]
pub struct GroupTable {
    ring: Ring,
    dim: usize,
    gens: Vec<Mat>,
    elements: IndexSet<Vec<u8>>,
}

impl GroupTable {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[Mat] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &Mat) -> bool {
        g.ring() == self.ring && g.rows() == self.dim && self.elements.contains(&g.encode())
    }

    pub fn element(&self, i: usize) -> Mat {
        let bytes = self.elements.get_index(i).expect("element index in range");
        Mat::decode(self.ring, self.dim, self.dim, bytes).expect("table holds valid encodings").0
    }

    pub fn elements(&self) -> impl Iterator<Item = Mat> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    /// Same element set, regardless of discovery order.
    pub fn same_elements(&self, other: &GroupTable) -> bool {
        self.order() == other.order() && self.elements.iter().all(|e| other.elements.contains(e))
    }

    pub fn is_subset_of(&self, other: &GroupTable) -> bool {
        self.elements.iter().all(|e| other.elements.contains(e))
    }

    fn trivial(ring: Ring, dim: usize) -> GroupTable {
        let mut elements = IndexSet::new();
        elements.insert(Mat::identity(ring, dim).encode());
        GroupTable { ring, dim, gens: Vec::new(), elements }
    }

    /// Breadth-first search from `frontier` multiplying on the right by `gens`.
    /// Levels are expanded in parallel and merged in frontier order.
    fn explore(&mut self, mut frontier: Vec<Mat>, gens: &[Mat], limit: usize) -> Result<()> {
        while !frontier.is_empty() {
            let products: Vec<Vec<(Vec<u8>, Mat)>> = frontier
                .par_iter()
                .map(|f| {
                    gens.iter()
                        .map(|g| {
                            let m = f.try_mul(g)?;
                            Ok((m.encode(), m))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            frontier = Vec::new();
            for (code, m) in products.into_iter().flatten() {
                if self.elements.insert(code) {
                    frontier.push(m);
                    if self.elements.len() > limit {
                        return Err(Error::LimitExceeded { limit, found: self.elements.len() });
                    }
                }
            }
        }
        Ok(())
    }

    /// Adds a generator, extending the table to the subgroup it generates.
    fn adjoin(&mut self, g: Mat, limit: usize) -> Result<()> {
        let start: Vec<Mat> = (0..self.order()).into_par_iter().map(|i| self.element(i)).collect();
        let frontier: Vec<Mat> = start
            .par_iter()
            .map(|x| x.try_mul(&g))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|m| self.elements.insert(m.encode()))
            .collect();
        if self.elements.len() > limit {
            return Err(Error::LimitExceeded { limit, found: self.elements.len() });
        }
        self.gens.push(g);
        let gens = self.gens.clone();
        self.explore(frontier, &gens, limit)
    }
}

/// The subgroup generated by `gens`, provided its order is at most `limit`.
pub fn bfs_closure(gens: &[Mat], limit: usize) -> Result<GroupTable> {
    let first = gens.first().ok_or_else(|| Error::DimMismatch("no generators".into()))?;
    let (ring, dim) = (first.ring(), first.rows());
    for g in gens {
        if g.ring() != ring {
            return Err(Error::RingMismatch(ring.to_string(), g.ring().to_string()));
        }
        if !g.is_square() || g.rows() != dim {
            return Err(Error::DimMismatch("generators differ in shape".into()));
        }
    }
    let mut t = GroupTable::trivial(ring, dim);
    t.gens = gens.to_vec();
    let frontier = vec![Mat::identity(ring, dim)];
    t.explore(frontier, gens, limit)?;
    Ok(t)
}

/// Smallest subgroup of `t` containing `seeds` and normalised by the generators of `t`.
pub fn normal_closure_of(seeds: &[Mat], t: &GroupTable) -> Result<GroupTable> {
    if seeds.iter().any(|s| !t.contains(s)) {
        return Err(Error::ElementNotInGroup);
    }
    let limit = t.order();
    let mut n = GroupTable::trivial(t.ring, t.dim);
    let mut queue: Vec<Mat> = seeds.to_vec();
    while let Some(x) = queue.pop() {
        if n.contains(&x) {
            continue;
        }
        n.adjoin(x, limit)?;
        let added = n.gens.last().expect("just adjoined").clone();
        for s in &t.gens {
            queue.push(added.conjugate_by(s)?);
        }
    }
    Ok(n)
}

/// Smallest normal subgroup of `t` containing g.
pub fn normal_closure(g: &Mat, t: &GroupTable) -> Result<GroupTable> {
    normal_closure_of(std::slice::from_ref(g), t)
}

/// [G, G], the normal closure of the commutators of generators.
pub fn commutator_subgroup(t: &GroupTable) -> Result<GroupTable> {
    let mut seeds = Vec::new();
    for (i, x) in t.gens.iter().enumerate() {
        for y in &t.gens[i + 1..] {
            let c = Mat::commutator(x, y)?;
            if !c.is_identity() {
                seeds.push(c);
            }
        }
    }
    seeds.reverse();
    normal_closure_of(&seeds, t)
}

/// Orders of the normal closures of `count` random nontrivial elements.
pub fn random_normal_closures(t: &GroupTable, count: usize, seed: u64) -> Result<Vec<(usize, usize)>> {
    if t.order() < 2 {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks: Vec<usize> = (0..count).map(|_| rng.gen_range(1..t.order())).collect();
    picks.into_par_iter().map(|i| Ok((i, normal_closure(&t.element(i), t)?.order()))).collect()
}

/// The table of entrywise Frobenius images, in the same order.
pub fn frobenius_map_table(t: &GroupTable) -> GroupTable {
    let elements = (0..t.order())
        .into_par_iter()
        .map(|i| t.element(i).frobenius().encode())
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    GroupTable { ring: t.ring, dim: t.dim, gens: t.gens.iter().map(Mat::frobenius).collect(), elements }
}

/// Sizes of the two Bruhat cells and the elements that failed to decompose.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BruhatCensus {
    pub identity_cell: usize,
    pub w0_cell: usize,
    pub failures: Vec<String>,
}

/// Decomposes every element of `t` with `group`, checking reassembly and
/// that the w-component is forced (w = 1 exactly for upper triangular g).
pub fn bruhat_census<G: TwistedGroup + ?Sized>(t: &GroupTable, group: &G) -> BruhatCensus {
    let outcomes: Vec<std::result::Result<bool, String>> = (0..t.order())
        .into_par_iter()
        .map(|i| {
            let g = t.element(i);
            let member = group.member(&g).map_err(|e| format!("element {i}: {e}"))?;
            let parts = group.bruhat(&member).map_err(|e| format!("element {i}: {e}"))?;
            if parts.has_w0 == g.is_upper_triangular() {
                return Err(format!("element {i}: w-component is not unique"));
            }
            Ok(parts.has_w0)
        })
        .collect();
    let mut census = BruhatCensus { identity_cell: 0, w0_cell: 0, failures: Vec::new() };
    for o in outcomes {
        match o {
            Ok(false) => census.identity_cell += 1,
            Ok(true) => census.w0_cell += 1,
            Err(w) => census.failures.push(w),
        }
    }
    census
}

/// Whether every element passes the group's membership test.
pub fn all_members<G: TwistedGroup + ?Sized>(t: &GroupTable, group: &G) -> Option<String> {
    (0..t.order())
        .into_par_iter()
        .filter_map(|i| group.member(&t.element(i)).err().map(|e| (i, e.to_string())))
        .min_by_key(|(i, _)| *i)
        .map(|(i, e)| format!("element {i}: {e}"))
}

/// The twisted groups available to the lab.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabGroup {
    Sz2,
    Sz8,
    Sz32,
    Ree3,
}

impl LabGroup {
    pub fn parse(name: &str) -> Result<LabGroup> {
        match name {
            "sz2" => Ok(LabGroup::Sz2),
            "sz8" => Ok(LabGroup::Sz8),
            "sz32" => Ok(LabGroup::Sz32),
            "ree3" => Ok(LabGroup::Ree3),
            other => Err(Error::Parse(format!("unknown group {other:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LabGroup::Sz2 => "sz2",
            LabGroup::Sz8 => "sz8",
            LabGroup::Sz32 => "sz32",
            LabGroup::Ree3 => "ree3",
        }
    }

    pub fn q(self) -> u32 {
        match self {
            LabGroup::Sz2 => 2,
            LabGroup::Sz8 => 8,
            LabGroup::Sz32 => 32,
            LabGroup::Ree3 => 3,
        }
    }

    pub fn twisted(self) -> Result<Box<dyn TwistedGroup>> {
        Ok(match self {
            LabGroup::Ree3 => Box::new(Ree::over_order(3)?),
            g => Box::new(Suzuki::over_order(g.q())?),
        })
    }

    /// q²(q²+1)(q−1) or q³(q³+1)(q−1).
    pub fn expected_order(self) -> u64 {
        let q = self.q() as u64;
        match self {
            LabGroup::Ree3 => q.pow(3) * (q.pow(3) + 1) * (q - 1),
            _ => q * q * (q * q + 1) * (q - 1),
        }
    }

    /// Order of [G, G]: Sz(2) is 5:4 and ²G₂(3) is PSL(2,8):3; the others are perfect.
    pub fn expected_derived_order(self) -> u64 {
        match self {
            LabGroup::Sz2 => 5,
            LabGroup::Ree3 => 504,
            g => g.expected_order(),
        }
    }

    /// |HU| = (q−1)·q² or (q−1)·q³, the size of the cell with w = 1.
    pub fn expected_borel_order(self) -> u64 {
        let q = self.q() as u64;
        match self {
            LabGroup::Ree3 => (q - 1) * q.pow(3),
            _ => (q - 1) * q * q,
        }
    }

    pub fn default_limit(self) -> usize {
        100_000
    }

    /// Enumerates ⟨U, U⁻⟩.
    pub fn table(self, limit: usize) -> Result<GroupTable> {
        bfs_closure(&self.twisted()?.elementary_generators()?, limit)
    }
}

const CACHE_MAGIC: &[u8; 8] = b"TWGLAB\0\0";
const CACHE_VERSION: u32 = 1;

fn put_bytes(buf: &mut Vec<u8>, bytes: &[u8]) {
    buf.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
    buf.extend_from_slice(bytes);
}

struct Cursor<'a> {
    buf: &'a [u8],
    off: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let out = self.buf.get(self.off..self.off + n).ok_or_else(|| Error::Cache("truncated cache file".into()))?;
        self.off += n;
        Ok(out)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("four bytes")))
    }

    fn bytes(&mut self) -> Result<&'a [u8]> {
        let n = self.u32()? as usize;
        self.take(n)
    }
}

/// Writes the table as: magic, version, ring tag, dimension, generators, elements.
pub fn save_table(t: &GroupTable, path: &Path) -> Result<()> {
    let mut buf = Vec::new();
    buf.extend_from_slice(CACHE_MAGIC);
    buf.extend_from_slice(&CACHE_VERSION.to_le_bytes());
    put_bytes(&mut buf, t.ring.to_string().as_bytes());
    buf.extend_from_slice(&(t.dim as u32).to_le_bytes());
    buf.extend_from_slice(&(t.gens.len() as u32).to_le_bytes());
    for g in &t.gens {
        put_bytes(&mut buf, &g.encode());
    }
    buf.extend_from_slice(&(t.elements.len() as u32).to_le_bytes());
    for e in &t.elements {
        put_bytes(&mut buf, e);
    }
    let mut f = fs::File::create(path).map_err(|e| Error::Cache(e.to_string()))?;
    f.write_all(&buf).map_err(|e| Error::Cache(e.to_string()))
}

pub fn load_table(path: &Path) -> Result<GroupTable> {
    let mut buf = Vec::new();
    fs::File::open(path).and_then(|mut f| f.read_to_end(&mut buf)).map_err(|e| Error::Cache(e.to_string()))?;
    let mut c = Cursor { buf: &buf, off: 0 };
    if c.take(8)? != CACHE_MAGIC {
        return Err(Error::Cache("not a group table cache".into()));
    }
    let version = c.u32()?;
    if version != CACHE_VERSION {
        return Err(Error::Cache(format!("unsupported cache version {version}")));
    }
    let tag = std::str::from_utf8(c.bytes()?).map_err(|e| Error::Cache(e.to_string()))?;
    let ring: Ring = tag.parse()?;
    let dim = c.u32()? as usize;
    let ngens = c.u32()?;
    let gens = (0..ngens).map(|_| Ok(Mat::decode(ring, dim, dim, c.bytes()?)?.0)).collect::<Result<Vec<_>>>()?;
    let count = c.u32()?;
    let mut elements = IndexSet::with_capacity(count as usize);
    for _ in 0..count {
        elements.insert(c.bytes()?.to_vec());
    }
    Ok(GroupTable { ring, dim, gens, elements })
}

/// Loads the table from `cache` when present, otherwise enumerates and saves it.
pub fn cached_table(group: LabGroup, limit: usize, cache: Option<&Path>) -> Result<GroupTable> {
    if let Some(path) = cache {
        if path.exists() {
            let t = load_table(path)?;
            let expected = group.twisted()?.ring();
            if t.ring() != expected {
                return Err(Error::Cache(format!("cache holds a table over {}, expected {expected}", t.ring())));
            }
            return Ok(t);
        }
    }
    let t = group.table(limit)?;
    if let Some(path) = cache {
        save_table(&t, path)?;
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_cyclic() {
        let r = Ring::gf_order(2).unwrap();
        assert_eq!(bfs_closure(&[Mat::identity(r, 3)], 10).unwrap().order(), 1);
        let x = Mat::from_ints(r, 2, 2, &[1, 1, 0, 1]);
        let t = bfs_closure(&[x], 10).unwrap();
        assert_eq!(t.order(), 2);
        assert_eq!(commutator_subgroup(&t).unwrap().order(), 1);
    }

    #[test]
    fn gl2_over_gf2() {
        let r = Ring::gf_order(2).unwrap();
        let a = Mat::from_ints(r, 2, 2, &[1, 1, 0, 1]);
        let b = Mat::from_ints(r, 2, 2, &[1, 0, 1, 1]);
        let t = bfs_closure(&[a.clone(), b], 100).unwrap();
        assert_eq!(t.order(), 6);
        assert_eq!(commutator_subgroup(&t).unwrap().order(), 3);
        assert_eq!(normal_closure(&a, &t).unwrap().order(), 6);
        assert!(matches!(bfs_closure(t.gens(), 4), Err(Error::LimitExceeded { limit: 4, .. })));
    }

    #[test]
    fn sz2() {
        let t = LabGroup::Sz2.table(100).unwrap();
        assert_eq!(t.order(), 20);
        let census = bruhat_census(&t, LabGroup::Sz2.twisted().unwrap().as_ref());
        assert_eq!((census.identity_cell, census.w0_cell), (4, 16));
        assert!(census.failures.is_empty());
        assert!(frobenius_map_table(&t).same_elements(&t));
    }

    #[test]
    fn cache_round_trip() {
        let t = LabGroup::Sz2.table(100).unwrap();
        let path = std::env::temp_dir().join(format!("twgl-test-{}.bin", std::process::id()));
        save_table(&t, &path).unwrap();
        let back = load_table(&path).unwrap();
        fs::remove_file(&path).unwrap();
        assert!(back.same_elements(&t));
        assert_eq!(back.gens(), t.gens());
        assert_eq!(back.element(7), t.element(7));
    }
}
