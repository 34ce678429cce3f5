//! Automorphisms, isomorphism testing and the odd-order automorphism search.
//!
//! All searches share one engine: images are chosen for a generating
//! sequence `g1, ..., gd` that is a basis modulo the Frattini subgroup, and
//! after each choice the partial map is extended over `<g1, ..., gk>` along
//! the Cayley graph. A clash on any edge, or two elements with the same
//! image, cuts the branch.

use crate::caps::Caps;
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::field::{gl_elements, gl_order, F2Matrix};
use crate::group::{Elem, Group};
use crate::invariants::{
    agemo, center, derived, fingerprint, frattini, maximal_subgroups, omega, FrattiniCoords,
    InvariantFingerprint,
};
use crate::subgroup::Subgroup;
use rayon::prelude::*;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

const UNDEF: u16 = u16::MAX;

/// An automorphism stored as the image of every element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    perm: Vec<u16>,
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Automorphism({:?})", self.perm)
    }
}

impl Automorphism {
    pub fn identity(g: &Group) -> Self {
        Automorphism {
            perm: (0..g.order() as u16).collect(),
        }
    }

    /// Checks that `perm` is a bijective homomorphism of `g`.
    pub fn from_perm(g: &Group, perm: Vec<Elem>) -> Result<Self> {
        let a = Automorphism {
            perm: perm.iter().map(|&x| x as u16).collect(),
        };
        if perm.len() != g.order() || !a.verify(g) {
            return Err(Error::Precondition("map is not an automorphism".into()));
        }
        Ok(a)
    }

    /// Extends generator images to an automorphism, if they define one.
    pub fn from_images(g: &Group, gens: &[Elem], images: &[Elem]) -> Option<Self> {
        let perm = extend_hom(g, g, gens, images)?;
        if perm.iter().any(|&x| x == UNDEF) {
            return None;
        }
        let a = Automorphism { perm };
        let mut seen = ElemSet::empty(g.order());
        a.perm.iter().all(|&x| seen.insert(x as usize)).then_some(a)
    }

    /// Conjugation `x -> h^-1 x h`.
    pub fn inner(g: &Group, h: Elem) -> Self {
        Automorphism {
            perm: g.elements().map(|x| g.conj(x, h) as u16).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.perm[x] as usize
    }

    pub fn perm(&self) -> &[u16] {
        &self.perm
    }

    /// First `self`, then `other`.
    pub fn then(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            perm: self.perm.iter().map(|&x| other.perm[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut perm = vec![0u16; self.perm.len()];
        for (x, &y) in self.perm.iter().enumerate() {
            perm[y as usize] = x as u16;
        }
        Automorphism { perm }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(x, &y)| x == y as usize)
    }

    pub fn pow(&self, k: u64) -> Automorphism {
        let mut acc: Vec<u16> = (0..self.perm.len() as u16).collect();
        for _ in 0..k {
            acc = acc.iter().map(|&x| self.perm[x as usize]).collect();
        }
        Automorphism { perm: acc }
    }

    /// Order as a permutation: lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut ord = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.perm[x] as usize;
                len += 1;
            }
            ord = crate::group::lcm(ord, len);
        }
        ord
    }

    /// Exhaustive multiplicativity and bijectivity check.
    pub fn verify(&self, g: &Group) -> bool {
        if self.perm.len() != g.order() {
            return false;
        }
        let mut seen = ElemSet::empty(g.order());
        if !self.perm.iter().all(|&y| (y as usize) < g.order() && seen.insert(y as usize)) {
            return false;
        }
        g.elements().all(|x| {
            g.elements()
                .all(|y| self.apply(g.mul(x, y)) == g.mul(self.apply(x), self.apply(y)))
        })
    }

    pub fn image_of(&self, g: &Group, s: &Subgroup) -> Subgroup {
        let members = ElemSet::from_iter(g.order(), s.members().iter().map(|x| self.apply(x)));
        Subgroup::from_members(g, members)
    }
}

/// Extends `gens -> images` along the Cayley graph of `<gens>` in `src`.
/// Returns the map on `<gens>` (other entries `u16::MAX`) if it is a
/// well-defined injective homomorphism.
pub fn extend_hom(src: &Group, dst: &Group, gens: &[Elem], images: &[Elem]) -> Option<Vec<u16>> {
    let mut map = vec![UNDEF; src.order()];
    let mut used = ElemSet::empty(dst.order());
    map[0] = 0;
    used.insert(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let fx = map[x] as usize;
        for (&g, &h) in gens.iter().zip(images) {
            let z = src.mul(x, g);
            let fz = dst.mul(fx, h);
            if map[z] == UNDEF {
                if !used.insert(fz) {
                    return None;
                }
                map[z] = fz as u16;
                queue.push_back(z);
            } else if map[z] as usize != fz {
                return None;
            }
        }
    }
    Some(map)
}

/// Per-element isomorphism invariants used to restrict candidate images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSignature {
    pub order: u32,
    /// Membership in Z, G', Φ, Ω1, ℧1 as bits.
    pub membership: u8,
    pub class_size: u32,
    pub roots: u32,
}

pub fn signatures(g: &Group) -> Vec<ElemSignature> {
    let subs = [
        center(g),
        derived(g),
        frattini(g),
        omega(g, 1),
        agemo(g, 1),
    ];
    let p = g.prime().unwrap_or(2) as i64;
    let mut roots = vec![0u32; g.order()];
    for y in g.elements() {
        roots[g.pow(y, p)] += 1;
    }
    let class_sizes = class_sizes(g);
    g.elements()
        .map(|x| {
            let mut membership = 0u8;
            for (i, s) in subs.iter().enumerate() {
                if s.contains(x) {
                    membership |= 1 << i;
                }
            }
            ElemSignature {
                order: g.elt_order(x),
                membership,
                class_size: class_sizes[x],
                roots: roots[x],
            }
        })
        .collect()
}

fn class_sizes(g: &Group) -> Vec<u32> {
    let mut sizes = vec![0u32; g.order()];
    for class in crate::subgroup::conjugacy_classes(g) {
        for &x in &class {
            sizes[x] = class.len() as u32;
        }
    }
    sizes
}

/// Backtracking over images of a generating sequence.
struct HomSearch<'a> {
    src: &'a Group,
    dst: &'a Group,
    basis: Vec<Elem>,
    cands: Vec<Vec<Elem>>,
    /// Frattini coordinates of the candidates in `dst`, for the
    /// independence prune (bitmask codes, p = 2 only); empty to disable.
    dst_coords: Vec<u32>,
    budget: u64,
    nodes: &'a AtomicU64,
}

struct SearchState {
    map: Vec<u16>,
    used: ElemSet,
    images: Vec<Elem>,
    span: Vec<u32>,
}

enum Flow {
    Continue,
    Stop,
}

impl HomSearch<'_> {
    fn state(&self) -> SearchState {
        let mut map = vec![UNDEF; self.src.order()];
        map[0] = 0;
        let used = ElemSet::from_iter(self.dst.order(), [0]);
        SearchState {
            map,
            used,
            images: Vec::new(),
            span: vec![0],
        }
    }

    /// Extends the partial map after `images[k]` was chosen. Returns the
    /// newly defined elements, or `None` on a clash (with the map restored).
    fn extend(&self, st: &mut SearchState, k: usize) -> Option<Vec<Elem>> {
        let gens = &self.basis[..=k];
        let imgs = &st.images[..=k];
        let mut added = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        let mut visited = ElemSet::from_iter(self.src.order(), [0]);
        let mut ok = true;
        'bfs: while let Some(x) = queue.pop_front() {
            let fx = st.map[x] as usize;
            for (&g, &h) in gens.iter().zip(imgs) {
                let z = self.src.mul(x, g);
                let fz = self.dst.mul(fx, h);
                if st.map[z] == UNDEF {
                    if !st.used.insert(fz) {
                        ok = false;
                        break 'bfs;
                    }
                    st.map[z] = fz as u16;
                    added.push(z);
                } else if st.map[z] as usize != fz {
                    ok = false;
                    break 'bfs;
                }
                if visited.insert(z) {
                    queue.push_back(z);
                }
            }
        }
        if ok {
            Some(added)
        } else {
            for z in added {
                st.used_remove(z);
            }
            None
        }
    }

    fn run<F: FnMut(&SearchState) -> Flow>(
        &self,
        st: &mut SearchState,
        k: usize,
        leaf: &mut F,
    ) -> std::result::Result<Flow, u64> {
        if k == self.basis.len() {
            return Ok(leaf(st));
        }
        for &y in &self.cands[k] {
            if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
                return Err(self.budget);
            }
            if !self.dst_coords.is_empty() {
                let c = self.dst_coords[y];
                if st.span.contains(&c) {
                    continue;
                }
            }
            st.images.push(y);
            if let Some(added) = self.extend(st, k) {
                let old_span = st.span.len();
                if !self.dst_coords.is_empty() {
                    let c = self.dst_coords[y];
                    let ext: Vec<u32> = st.span.iter().map(|&s| s ^ c).collect();
                    st.span.extend(ext);
                }
                let flow = self.run(st, k + 1, leaf)?;
                st.span.truncate(old_span);
                for &z in &added {
                    st.used_remove(z);
                }
                if let Flow::Stop = flow {
                    st.images.pop();
                    return Ok(Flow::Stop);
                }
            }
            st.images.pop();
        }
        Ok(Flow::Continue)
    }

    /// Searches below a fixed image of the first basis element.
    fn run_from(
        &self,
        first: Elem,
        leaf: &mut dyn FnMut(&SearchState) -> Flow,
    ) -> std::result::Result<Flow, u64> {
        let mut st = self.state();
        if !self.dst_coords.is_empty() {
            st.span.push(self.dst_coords[first]);
        }
        st.images.push(first);
        match self.extend(&mut st, 0) {
            None => Ok(Flow::Continue),
            Some(_) => self.run(&mut st, 1, &mut |s: &SearchState| leaf(s)),
        }
    }
}

impl SearchState {
    fn used_remove(&mut self, z: Elem) {
        let fz = self.map[z] as usize;
        self.map[z] = UNDEF;
        self.used.remove(fz);
    }
}

/// Basis of `G` modulo Φ(G) together with its coordinates.
struct Basis {
    coords: FrattiniCoords,
    sigs: Vec<ElemSignature>,
}

impl Basis {
    fn new(g: &Group) -> Self {
        Basis {
            coords: FrattiniCoords::new(g),
            sigs: signatures(g),
        }
    }
}

/// Candidate lists for a search from `src` (with basis `b`) to `dst`
/// (with signatures `dsigs`), most constrained generator first.
fn candidate_lists(
    src: &Group,
    b: &Basis,
    dsigs: &[ElemSignature],
    dst: &Group,
) -> (Vec<Elem>, Vec<Vec<Elem>>) {
    let mut by_sig: HashMap<ElemSignature, Vec<Elem>> = HashMap::new();
    for y in dst.elements() {
        by_sig.entry(dsigs[y]).or_default().push(y);
    }
    let mut pairs: Vec<(Elem, Vec<Elem>)> = b
        .coords
        .basis
        .iter()
        .map(|&x| (x, by_sig.get(&b.sigs[x]).cloned().unwrap_or_default()))
        .collect();
    let _ = src;
    pairs.sort_by_key(|(x, c)| (c.len(), *x));
    pairs.into_iter().unzip()
}

/// `|Aut(G)|` and a generating set, from a complete enumeration.
#[derive(Clone, Debug)]
pub struct AutGroup {
    pub order: u64,
    pub gens: Vec<Automorphism>,
    /// Basis whose images identify each automorphism.
    pub basis: Vec<Elem>,
    /// Every automorphism as its tuple of basis images, in search order.
    pub elements: Vec<Vec<u16>>,
}

impl AutGroup {
    pub fn is_p_group(&self, p: u64) -> bool {
        crate::group::prime_power_base(self.order).is_some_and(|(q, _)| q == p) || self.order == 1
    }

    /// Materializes every automorphism.
    pub fn all(&self, g: &Group) -> Vec<Automorphism> {
        self.elements
            .iter()
            .map(|imgs| {
                let images: Vec<Elem> = imgs.iter().map(|&x| x as usize).collect();
                Automorphism::from_images(g, &self.basis, &images).expect("enumerated automorphism")
            })
            .collect()
    }
}

pub fn automorphism_group(g: &Group, caps: &Caps) -> Result<AutGroup> {
    if g.order() > caps.aut {
        return Err(Error::CapExceeded {
            what: "automorphism group",
            order: g.order(),
            cap: caps.aut,
        });
    }
    if g.order() == 1 {
        return Ok(AutGroup {
            order: 1,
            gens: Vec::new(),
            basis: Vec::new(),
            elements: vec![Vec::new()],
        });
    }
    let b = Basis::new(g);
    let (basis, cands) = candidate_lists(g, &b, &b.sigs, g);
    let coords = if b.coords.p == 2 { b.coords.coords.clone() } else { Vec::new() };
    let nodes = AtomicU64::new(0);
    let search = HomSearch {
        src: g,
        dst: g,
        basis: basis.clone(),
        cands: cands.clone(),
        dst_coords: coords,
        budget: caps.budget,
        nodes: &nodes,
    };
    let branches: Vec<std::result::Result<Vec<Vec<u16>>, u64>> = cands[0]
        .par_iter()
        .map(|&first| {
            let mut found = Vec::new();
            search
                .run_from(first, &mut |st: &SearchState| {
                    found.push(st.images.iter().map(|&x| x as u16).collect());
                    Flow::Continue
                })
                .map(|_| found)
        })
        .collect();
    let mut elements = Vec::new();
    for br in branches {
        match br {
            Ok(v) => elements.extend(v),
            Err(budget) => return Err(Error::BudgetExhausted { budget }),
        }
    }
    let gens = generators_from_elements(g, &basis, &elements);
    Ok(AutGroup {
        order: elements.len() as u64,
        gens,
        basis,
        elements,
    })
}

/// Greedy generating set: keep adding an automorphism outside the group
/// generated so far.
fn generators_from_elements(g: &Group, basis: &[Elem], elements: &[Vec<u16>]) -> Vec<Automorphism> {
    let id: Vec<u16> = basis.iter().map(|&x| x as u16).collect();
    let mut gens: Vec<Automorphism> = Vec::new();
    let mut span: HashSet<Vec<u16>> = HashSet::from([id.clone()]);
    for e in elements {
        if span.len() == elements.len() {
            break;
        }
        if span.contains(e) {
            continue;
        }
        let images: Vec<Elem> = e.iter().map(|&x| x as usize).collect();
        let a = Automorphism::from_images(g, basis, &images).expect("enumerated automorphism");
        gens.push(a);
        // rebuild closure: tuples of basis images, right-multiplied by gens
        let mut queue: Vec<Vec<u16>> = span.iter().cloned().collect();
        while let Some(t) = queue.pop() {
            for a in &gens {
                let u: Vec<u16> = t.iter().map(|&x| a.perm[x as usize]).collect();
                if span.insert(u.clone()) {
                    queue.push(u);
                }
            }
        }
    }
    gens
}

/// All automorphisms of a group of order within the cap, as permutations.
pub fn all_automorphisms(g: &Group, caps: &Caps) -> Result<Vec<Automorphism>> {
    Ok(automorphism_group(g, caps)?.all(g))
}

/// Outcome of the odd-order automorphism search for one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeVerdict {
    Found(Witness),
    Absent,
    Undecided { budget: u64 },
}

/// An automorphism given by the images of a generating sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub gens: Vec<Elem>,
    pub images: Vec<Elem>,
}

impl Witness {
    pub fn to_automorphism(&self, g: &Group) -> Option<Automorphism> {
        Automorphism::from_images(g, &self.gens, &self.images)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .gens
            .iter()
            .zip(&self.images)
            .map(|(x, y)| format!("{x}->{y}"))
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

#[derive(Clone, Debug)]
pub struct AutReport {
    pub fingerprint: InvariantFingerprint,
    pub aut_order: Option<u64>,
    /// Primes examined with their verdicts, ascending.
    pub primes: Vec<(u32, PrimeVerdict)>,
    pub transitive_on_maximals: Option<bool>,
}

impl AutReport {
    pub fn odd_orders(&self) -> Vec<u32> {
        self.primes
            .iter()
            .filter(|(_, v)| matches!(v, PrimeVerdict::Found(_)))
            .map(|&(q, _)| q)
            .collect()
    }

    pub fn undecided(&self) -> Vec<u32> {
        self.primes
            .iter()
            .filter(|(_, v)| matches!(v, PrimeVerdict::Undecided { .. }))
            .map(|&(q, _)| q)
            .collect()
    }

    pub fn witness(&self, q: u32) -> Option<&Witness> {
        self.primes.iter().find_map(|(p, v)| match v {
            PrimeVerdict::Found(w) if *p == q => Some(w),
            _ => None,
        })
    }
}

/// Coset labels of `G/Φ(G)`: for each coordinate code, the sorted list of
/// element signatures in that coset. Automorphisms permute cosets
/// preserving labels.
fn coset_labels(fc: &FrattiniCoords, sigs: &[ElemSignature]) -> Vec<Vec<ElemSignature>> {
    let d = fc.rank();
    let mut labels = vec![Vec::new(); 1 << d];
    for (x, &c) in fc.coords.iter().enumerate() {
        labels[c as usize].push(sigs[x]);
    }
    for l in &mut labels {
        l.sort_unstable();
    }
    labels
}

/// Decides, for each prime `q` in {3, 5, 7} dividing `|GL_d(2)|`, whether
/// the 2-group `G` has an automorphism of order `q`.
///
/// An automorphism of odd prime order acts nontrivially on `V = G/Φ(G)`
/// (the kernel of `Aut(G) -> GL(V)` is a 2-group), so it induces a matrix
/// of order `q` preserving the coset labels. Every such matrix is tried;
/// a lift `φ` has order `q·2^j` and `φ^(2^j)` is the witness.
pub fn find_odd_automorphism(g: &Group, caps: &Caps) -> Result<AutReport> {
    if g.prime() != Some(2) {
        return Err(Error::Precondition("odd automorphism search needs a 2-group".into()));
    }
    if g.order() > caps.order {
        return Err(Error::UnsupportedOrder {
            order: g.order(),
            cap: caps.order,
        });
    }
    let b = Basis::new(g);
    let d = b.coords.rank();
    if d > 4 {
        return Err(Error::Precondition(format!(
            "generator rank {d} exceeds 4"
        )));
    }
    let labels = coset_labels(&b.coords, &b.sigs);
    let mut by_coset_sig: HashMap<(u32, ElemSignature), Vec<Elem>> = HashMap::new();
    for y in g.elements() {
        by_coset_sig
            .entry((b.coords.coords[y], b.sigs[y]))
            .or_default()
            .push(y);
    }
    let basis = b.coords.basis.clone();
    let mut primes = Vec::new();
    for q in [3u32, 5, 7] {
        if d == 0 || gl_order(d) % q as u64 != 0 {
            continue;
        }
        let mats: Vec<F2Matrix> = gl_elements(d)?
            .filter(|m| m.order().ok() == Some(q))
            .filter(|m| (0..1u8 << d).all(|v| labels[m.apply(v) as usize] == labels[v as usize]))
            .collect();
        let results: Vec<std::result::Result<Option<Vec<Elem>>, u64>> = mats
            .par_iter()
            .map(|m| {
                let cands: Vec<Vec<Elem>> = basis
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| {
                        let target = m.apply(1 << i) as u32;
                        by_coset_sig
                            .get(&(target, b.sigs[x]))
                            .cloned()
                            .unwrap_or_default()
                    })
                    .collect();
                lift(g, &basis, cands, caps.budget)
            })
            .collect();
        let mut verdict = PrimeVerdict::Absent;
        for r in results {
            match r {
                Ok(Some(images)) => {
                    let phi = Automorphism::from_images(g, &basis, &images)
                        .expect("lift is an automorphism");
                    let mut ord = phi.order();
                    let mut psi = phi;
                    while ord % 2 == 0 {
                        psi = psi.pow(2);
                        ord /= 2;
                    }
                    debug_assert_eq!(ord, q as u64);
                    let images = basis.iter().map(|&x| psi.apply(x)).collect();
                    verdict = PrimeVerdict::Found(Witness {
                        gens: basis.clone(),
                        images,
                    });
                    break;
                }
                Ok(None) => {}
                Err(budget) => {
                    verdict = PrimeVerdict::Undecided { budget };
                }
            }
        }
        primes.push((q, verdict));
    }
    Ok(AutReport {
        fingerprint: fingerprint(g),
        aut_order: None,
        primes,
        transitive_on_maximals: None,
    })
}

/// First automorphism whose basis images come from `cands`.
fn lift(
    g: &Group,
    basis: &[Elem],
    cands: Vec<Vec<Elem>>,
    budget: u64,
) -> std::result::Result<Option<Vec<Elem>>, u64> {
    if cands.iter().any(|c| c.is_empty()) {
        return Ok(None);
    }
    let nodes = AtomicU64::new(0);
    let search = HomSearch {
        src: g,
        dst: g,
        basis: basis.to_vec(),
        cands: cands.clone(),
        dst_coords: Vec::new(),
        budget,
        nodes: &nodes,
    };
    let mut st = search.state();
    let mut found = None;
    search.run(&mut st, 0, &mut |s: &SearchState| {
        found = Some(s.images.clone());
        Flow::Stop
    })?;
    Ok(found)
}

/// Whether `Aut(G)` permutes the maximal subgroups transitively.
pub fn is_transitive_on_maximals(g: &Group, aut: &AutGroup) -> bool {
    let maxes = maximal_subgroups(g);
    if maxes.len() <= 1 {
        return true;
    }
    let mut orbit: Vec<ElemSet> = vec![maxes[0].members().clone()];
    let mut i = 0;
    while i < orbit.len() {
        let cur = orbit[i].clone();
        i += 1;
        for a in &aut.gens {
            let img = ElemSet::from_iter(g.order(), cur.iter().map(|x| a.apply(x)));
            if !orbit.contains(&img) {
                orbit.push(img);
            }
        }
    }
    orbit.len() == maxes.len()
}

/// Stable under every automorphism.
pub fn is_characteristic(g: &Group, s: &Subgroup, caps: &Caps) -> Result<bool> {
    let aut = automorphism_group(g, caps)?;
    Ok(aut
        .gens
        .iter()
        .all(|a| s.gens().iter().all(|&x| s.contains(a.apply(x)))))
}

/// An isomorphism `G -> H` as images of a generating sequence of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub gens: Vec<Elem>,
    pub images: Vec<Elem>,
}

impl IsoWitness {
    pub fn verify(&self, g: &Group, h: &Group) -> bool {
        match extend_hom(g, h, &self.gens, &self.images) {
            Some(map) => g.order() == h.order() && map.iter().all(|&x| x != UNDEF),
            None => false,
        }
    }
}

impl fmt::Display for IsoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .gens
            .iter()
            .zip(&self.images)
            .map(|(x, y)| format!("{x}->{y}"))
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

pub fn is_isomorphic(g: &Group, h: &Group, caps: &Caps) -> Result<Option<IsoWitness>> {
    if g.order() != h.order() {
        return Ok(None);
    }
    if g.order() > caps.iso {
        return Err(Error::CapExceeded {
            what: "isomorphism test",
            order: g.order(),
            cap: caps.iso,
        });
    }
    if g.order() == 1 {
        return Ok(Some(IsoWitness {
            gens: vec![],
            images: vec![],
        }));
    }
    if fingerprint(g) != fingerprint(h) {
        return Ok(None);
    }
    let bg = Basis::new(g);
    let hsigs = signatures(h);
    let mut gs: Vec<ElemSignature> = bg.sigs.clone();
    let mut hs = hsigs.clone();
    gs.sort_unstable();
    hs.sort_unstable();
    if gs != hs {
        return Ok(None);
    }
    let (basis, cands) = candidate_lists(g, &bg, &hsigs, h);
    let hcoords = if bg.coords.p == 2 {
        FrattiniCoords::new(h).coords
    } else {
        Vec::new()
    };
    let nodes = AtomicU64::new(0);
    let search = HomSearch {
        src: g,
        dst: h,
        basis: basis.clone(),
        cands: cands.clone(),
        dst_coords: hcoords,
        budget: caps.budget,
        nodes: &nodes,
    };
    let found: Vec<std::result::Result<Option<Vec<Elem>>, u64>> = cands[0]
        .par_iter()
        .map(|&first| {
            let mut hit = None;
            search
                .run_from(first, &mut |st: &SearchState| {
                    hit = Some(st.images.clone());
                    Flow::Stop
                })
                .map(|_| hit)
        })
        .collect();
    let mut budget_hit = None;
    for r in found {
        match r {
            Ok(Some(images)) => return Ok(Some(IsoWitness { gens: basis, images })),
            Ok(None) => {}
            Err(b) => budget_hit = Some(b),
        }
    }
    match budget_hit {
        Some(budget) => Err(Error::BudgetExhausted { budget }),
        None => Ok(None),
    }
}

/// `[G, φ] = <x^-1 φ(x)>`.
pub fn commutator_subgroup_with(g: &Group, phi: &Automorphism) -> Subgroup {
    let mut gens = Vec::new();
    let mut span = ElemSet::from_iter(g.order(), [0]);
    for x in g.elements() {
        let c = g.mul(g.inv(x), phi.apply(x));
        if !span.contains(c) {
            gens.push(c);
            span = g.closure(&gens);
        }
    }
    Subgroup::generated(g, &gens)
}

/// Counts from the scan of GL(4, 2).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Gl4Scan {
    pub elements: u64,
    pub order3: u64,
    pub order3_fixed_free: u64,
    pub order3_fixing_plane: u64,
    pub order5: u64,
    pub order5_fixed_free: u64,
    /// Elements violating the expected fixed-point pattern.
    pub exceptions: Vec<F2Matrix>,
}

impl Gl4Scan {
    pub fn passed(&self) -> bool {
        self.exceptions.is_empty() && self.elements == gl_order(4)
    }
}

/// Fixed points of elements of order 3 and 5 across GL(4, 2).
pub fn gl4_fixed_point_scan() -> Gl4Scan {
    let mut scan = Gl4Scan::default();
    for m in gl_elements(4).expect("dimension 4 is supported") {
        scan.elements += 1;
        let ord = m.order().expect("invertible");
        let fixed = m.fixed_vectors();
        match ord {
            3 => {
                scan.order3 += 1;
                if fixed.is_empty() {
                    scan.order3_fixed_free += 1;
                } else if fixed.len() == 3 && crate::field::rank_of(&fixed) == 2 {
                    scan.order3_fixing_plane += 1;
                } else {
                    scan.exceptions.push(m);
                }
            }
            5 => {
                scan.order5 += 1;
                if fixed.is_empty() {
                    scan.order5_fixed_free += 1;
                } else {
                    scan.exceptions.push(m);
                }
            }
            _ => {}
        }
    }
    scan
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, FamilySpec};
    use crate::group::cyclic;

    fn fam(s: &str) -> Group {
        build(&s.parse::<FamilySpec>().unwrap(), 4096).unwrap()
    }

    /// Brute force over all pairs of generator images.
    fn brute_aut_order(g: &Group) -> u64 {
        let gens = g.small_generating_set();
        assert_eq!(gens.len(), 2);
        let mut count = 0;
        for x in g.elements() {
            for y in g.elements() {
                if Automorphism::from_images(g, &gens, &[x, y]).is_some() {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn small_automorphism_group_orders() {
        let caps = Caps::default();
        let v4 = Group::direct_product(&cyclic(2), &cyclic(2), 64).unwrap();
        assert_eq!(automorphism_group(&v4, &caps).unwrap().order, 6);
        let q8 = fam("Q:3");
        assert_eq!(automorphism_group(&q8, &caps).unwrap().order, 24);
        assert_eq!(brute_aut_order(&q8), 24);
        let d8 = fam("D:3");
        assert_eq!(automorphism_group(&d8, &caps).unwrap().order, 8);
    }

    #[test]
    fn generators_generate() {
        let caps = Caps::default();
        let g = fam("Cnm:2,2");
        let aut = automorphism_group(&g, &caps).unwrap();
        assert_eq!(aut.order, 96);
        for a in &aut.gens {
            assert!(a.verify(&g));
        }
    }

    #[test]
    fn odd_automorphisms_small() {
        let caps = Caps::default();
        assert_eq!(find_odd_automorphism(&fam("Q:3"), &caps).unwrap().odd_orders(), vec![3]);
        assert!(find_odd_automorphism(&fam("D:4"), &caps).unwrap().odd_orders().is_empty());
        let r = find_odd_automorphism(&fam("Cnm:2,2"), &caps).unwrap();
        assert_eq!(r.odd_orders(), vec![3]);
        let w = r.witness(3).unwrap().to_automorphism(&fam("Cnm:2,2")).unwrap();
        assert_eq!(w.order(), 3);
    }

    #[test]
    fn isomorphism_basic() {
        let caps = Caps::default();
        let g = fam("Q:4");
        let w = is_isomorphic(&g, &g, &caps).unwrap().unwrap();
        assert!(w.verify(&g, &g));
        assert!(is_isomorphic(&fam("D:4"), &fam("SD:4"), &caps).unwrap().is_none());
        // the wreathed group with n = 1 is D8
        assert!(is_isomorphic(&fam("wr:1"), &fam("D:3"), &caps).unwrap().is_some());
    }

    #[test]
    fn identity_commutator_is_trivial() {
        let g = fam("Q:3");
        assert!(commutator_subgroup_with(&g, &Automorphism::identity(&g)).is_trivial());
    }
}
