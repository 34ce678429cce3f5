//! Structural invariants of finite p-groups.

use crate::elemset::ElemSet;
use crate::group::{Elem, Group};
use crate::subgroup::{commutator, Subgroup};
use std::collections::BTreeMap;
use std::fmt;

pub fn center(g: &Group) -> Subgroup {
    let gens = g.gen_elems();
    let members = ElemSet::from_iter(
        g.order(),
        g.elements().filter(|&x| gens.iter().all(|&y| g.commute(x, y))),
    );
    Subgroup::from_members(g, members)
}

pub fn derived(g: &Group) -> Subgroup {
    let whole = Subgroup::whole(g);
    commutator(g, &whole, &whole)
}

/// Subgroup generated by the elements `x` with `x^(p^k) = 1`.
pub fn omega(g: &Group, k: u32) -> Subgroup {
    let p = g.prime().unwrap_or(2) as u64;
    let bound = p.pow(k);
    generated_by(g, g.elements().filter(|&x| bound % g.elt_order(x) as u64 == 0))
}

/// Subgroup generated by the `p^k`-th powers.
pub fn agemo(g: &Group, k: u32) -> Subgroup {
    let p = g.prime().unwrap_or(2) as i64;
    let e = p.pow(k);
    generated_by(g, g.elements().map(|x| g.pow(x, e)))
}

fn generated_by(g: &Group, it: impl Iterator<Item = Elem>) -> Subgroup {
    let mut gens = Vec::new();
    let mut span = ElemSet::from_iter(g.order(), [0]);
    for x in it {
        if !span.contains(x) {
            gens.push(x);
            span = g.closure(&gens);
        }
    }
    Subgroup::generated(g, &gens)
}

/// Frattini subgroup of a p-group, `G' G^p`.
pub fn frattini(g: &Group) -> Subgroup {
    let d = derived(g);
    let a = agemo(g, 1);
    d.join(g, &a)
}

pub fn count_involutions(g: &Group) -> usize {
    g.count_of_order(2)
}

/// Largest `r` such that `G` has an elementary abelian subgroup of order
/// `p^r`, found by depth-first search over commuting elements of order p.
pub fn p_rank(g: &Group) -> u32 {
    let p = match g.prime() {
        Some(p) => p,
        None => return 0,
    };
    let elems: Vec<Elem> = g.elements().filter(|&x| g.elt_order(x) == p).collect();
    let global = log_p(g.order(), p as usize);
    let mut best = 0;
    let mut gens = Vec::new();
    let set = ElemSet::from_iter(g.order(), [0]);
    rank_dfs(g, p as usize, &elems, 0, &mut gens, &set, global, &mut best);
    best
}

#[allow(clippy::too_many_arguments)]
fn rank_dfs(
    g: &Group,
    p: usize,
    elems: &[Elem],
    start: usize,
    gens: &mut Vec<Elem>,
    set: &ElemSet,
    global: u32,
    best: &mut u32,
) {
    let r = gens.len() as u32;
    *best = (*best).max(r);
    if *best == global {
        return;
    }
    let centralizing = elems
        .iter()
        .filter(|&&x| !set.contains(x) && gens.iter().all(|&y| g.commute(x, y)))
        .count();
    // any elementary abelian overgroup lies in the current one plus these
    if log_p(set.len() + centralizing, p) <= *best {
        return;
    }
    let cands: Vec<usize> = (start..elems.len())
        .filter(|&i| {
            let x = elems[i];
            !set.contains(x) && gens.iter().all(|&y| g.commute(x, y))
        })
        .collect();
    for i in cands {
        let x = elems[i];
        gens.push(x);
        let next = g.closure(gens);
        rank_dfs(g, p, elems, i + 1, gens, &next, global, best);
        gens.pop();
        if *best == global {
            return;
        }
    }
}

fn log_p(mut n: usize, p: usize) -> u32 {
    let mut k = 0;
    while n >= p {
        n /= p;
        k += 1;
    }
    k
}

/// Coordinates of a p-group modulo its Frattini subgroup: `basis` lifts a
/// basis of `G/Φ(G)`, and `coords[x]` encodes the image of `x` as base-p
/// digits (digit `i` belongs to `basis[i]`).
#[derive(Clone, Debug)]
pub struct FrattiniCoords {
    pub p: u32,
    pub phi: Subgroup,
    pub basis: Vec<Elem>,
    pub coords: Vec<u32>,
}

impl FrattiniCoords {
    pub fn new(g: &Group) -> Self {
        let p = g.prime().unwrap_or(2);
        let phi = frattini(g);
        let mut basis: Vec<Elem> = Vec::new();
        let mut span = phi.members().clone();
        let mut cands = g.gen_elems();
        cands.extend(g.elements());
        for x in cands {
            if span.len() == g.order() {
                break;
            }
            if !span.contains(x) {
                basis.push(x);
                let mut gs = phi.gens().to_vec();
                gs.extend(&basis);
                span = g.closure(&gs);
            }
        }
        let d = basis.len() as u32;
        let mut coords = vec![u32::MAX; g.order()];
        let phi_elems = phi.elements();
        for code in 0..(p as usize).pow(d) {
            let mut rep = 0;
            let mut c = code;
            for &b in &basis {
                let e = c % p as usize;
                c /= p as usize;
                rep = g.mul(rep, g.pow(b, e as i64));
            }
            for &f in &phi_elems {
                coords[g.mul(f, rep)] = code as u32;
            }
        }
        debug_assert!(coords.iter().all(|&c| c != u32::MAX));
        FrattiniCoords {
            p,
            phi,
            basis,
            coords,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Digits of a coordinate code, least significant first.
    pub fn digits(&self, code: u32) -> Vec<u32> {
        let mut c = code;
        (0..self.rank())
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }
}

/// Minimal number of generators, `d(G) = rank of G/Φ(G)`.
pub fn generator_rank(g: &Group) -> usize {
    let phi = frattini(g);
    log_p(g.order() / phi.order(), g.prime().unwrap_or(2) as usize) as usize
}

/// Maximal subgroups of a p-group, as kernels of the nonzero functionals
/// on `G/Φ(G)` taken up to scalars. There are `(p^d - 1)/(p - 1)`.
pub fn maximal_subgroups(g: &Group) -> Vec<Subgroup> {
    if g.order() == 1 {
        return Vec::new();
    }
    let fc = FrattiniCoords::new(g);
    let p = fc.p;
    let d = fc.rank();
    let digits: Vec<Vec<u32>> = (0..(p as usize).pow(d as u32))
        .map(|c| fc.digits(c as u32))
        .collect();
    let mut out = Vec::new();
    for f in 1..(p as usize).pow(d as u32) {
        let fd = &digits[f];
        // normalize: leading nonzero digit equal to 1
        let lead = fd.iter().rev().find(|&&v| v != 0).copied().unwrap_or(0);
        if lead != 1 {
            continue;
        }
        let members = ElemSet::from_iter(
            g.order(),
            g.elements().filter(|&x| {
                let xd = &digits[fc.coords[x] as usize];
                xd.iter().zip(fd).map(|(a, b)| a * b).sum::<u32>() % p == 0
            }),
        );
        out.push(Subgroup::from_members(g, members));
    }
    out
}

/// Lower central series `G = γ1 ≥ γ2 ≥ ... ≥ 1` (ends at the first
/// repeated or trivial term).
pub fn lower_central_series(g: &Group) -> Vec<Subgroup> {
    let whole = Subgroup::whole(g);
    let mut series = vec![whole.clone()];
    loop {
        let last = series.last().unwrap();
        if last.is_trivial() {
            return series;
        }
        let next = commutator(g, last, &whole);
        if next.order() == last.order() {
            return series;
        }
        series.push(next);
    }
}

/// Nilpotency class; 0 for the trivial group.
pub fn nilpotency_class(g: &Group) -> usize {
    lower_central_series(g).len() - 1
}

/// Invariant factors of an abelian p-group from the sizes of its `Ω_j`,
/// given as `counts[j] = #{x : x^(p^j) lies in the kernel}` scaled by the
/// kernel order. Returns factors in ascending order.
fn invariants_from_omega_sizes(p: u64, sizes: &[u64]) -> Vec<u64> {
    // sizes[j] = p^(sum_i min(λ_i, j))
    let logs: Vec<u32> = sizes.iter().map(|&s| log_p(s as usize, p as usize)).collect();
    let at_least: Vec<u32> = (1..logs.len()).map(|j| logs[j] - logs[j - 1]).collect();
    let mut out = Vec::new();
    for j in 0..at_least.len() {
        let exactly = at_least[j] - at_least.get(j + 1).copied().unwrap_or(0);
        for _ in 0..exactly {
            out.push(p.pow(j as u32 + 1));
        }
    }
    out
}

/// Invariant factors of `G/G'`.
pub fn abelian_invariants(g: &Group) -> Vec<u64> {
    let p = g.prime().unwrap_or(2) as u64;
    let dg = derived(g);
    let k = dg.order() as u64;
    let mut sizes = vec![1u64];
    let mut e = 1i64;
    loop {
        e *= p as i64;
        let n = g.elements().filter(|&x| dg.contains(g.pow(x, e))).count() as u64 / k;
        sizes.push(n);
        if n * k == g.order() as u64 {
            break;
        }
    }
    invariants_from_omega_sizes(p, &sizes)
}

/// Invariant factors of an abelian subgroup.
pub fn abelian_type(g: &Group, s: &Subgroup) -> Vec<u64> {
    if s.order() == 1 {
        return Vec::new();
    }
    let p = g.prime().unwrap_or(2) as u64;
    let elems = s.elements();
    let mut sizes = vec![1u64];
    let mut e = 1u64;
    loop {
        e *= p;
        let n = elems.iter().filter(|&&x| e % g.elt_order(x) as u64 == 0).count() as u64;
        sizes.push(n);
        if n == s.order() as u64 {
            break;
        }
    }
    invariants_from_omega_sizes(p, &sizes)
}

pub fn is_cyclic(g: &Group) -> bool {
    g.elements().any(|x| g.elt_order(x) as usize == g.order())
}

/// Whether some cyclic normal subgroup has cyclic quotient.
pub fn is_metacyclic(g: &Group) -> bool {
    let mut seen: Vec<ElemSet> = Vec::new();
    let mut cyclic: Vec<Subgroup> = Vec::new();
    let mut elems: Vec<Elem> = g.elements().collect();
    elems.sort_by_key(|&x| (std::cmp::Reverse(g.elt_order(x)), x));
    for x in elems {
        let s = Subgroup::generated(g, &[x]);
        if !seen.contains(s.members()) {
            seen.push(s.members().clone());
            cyclic.push(s);
        }
    }
    for n in cyclic {
        if !n.is_normal(g) {
            continue;
        }
        let index = g.order() / n.order();
        let quotient_cyclic = g.elements().any(|y| {
            let mut acc = y;
            let mut k = 1;
            while !n.contains(acc) {
                acc = g.mul(acc, y);
                k += 1;
            }
            k == index
        });
        if quotient_cyclic {
            return true;
        }
    }
    false
}

fn subgroup_exponent(g: &Group, s: &Subgroup) -> u64 {
    s.members()
        .iter()
        .map(|x| g.elt_order(x) as u64)
        .max()
        .unwrap_or(1)
}

fn is_elementary_abelian(g: &Group, s: &Subgroup) -> bool {
    let p = g.prime().unwrap_or(2);
    s.gens()
        .iter()
        .all(|&x| g.elt_order(x) == p && s.gens().iter().all(|&y| g.commute(x, y)))
}

/// `Ω1 = Z = Φ = G'`, exponent 4 and class 2.
pub fn higman_check(g: &Group) -> bool {
    let z = center(g);
    let set = z.members();
    omega(g, 1).members() == set
        && frattini(g).members() == set
        && derived(g).members() == set
        && g.exponent() == 4
        && nilpotency_class(g) == 2
}

/// `Z = G' = Φ`, elementary abelian.
pub fn special_check(g: &Group) -> bool {
    let z = center(g);
    if z.is_trivial() {
        return false;
    }
    derived(g).members() == z.members()
        && frattini(g).members() == z.members()
        && is_elementary_abelian(g, &z)
}

/// The invariant summary used for isomorphism pre-screening and reports.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantFingerprint {
    pub order: usize,
    pub exponent: u64,
    pub class: usize,
    pub involutions: usize,
    pub p_rank: u32,
    pub abelian_invariants: Vec<u64>,
    pub center_order: usize,
    pub center_type: Vec<u64>,
    pub frattini_order: usize,
    pub derived_order: usize,
    pub generator_rank: usize,
    pub order_histogram: BTreeMap<u32, usize>,
}

pub fn fingerprint(g: &Group) -> InvariantFingerprint {
    let z = center(g);
    let mut hist = BTreeMap::new();
    for x in g.elements() {
        *hist.entry(g.elt_order(x)).or_insert(0) += 1;
    }
    InvariantFingerprint {
        order: g.order(),
        exponent: g.exponent(),
        class: nilpotency_class(g),
        involutions: count_involutions(g),
        p_rank: p_rank(g),
        abelian_invariants: abelian_invariants(g),
        center_order: z.order(),
        center_type: abelian_type(g, &z),
        frattini_order: frattini(g).order(),
        derived_order: derived(g).order(),
        generator_rank: generator_rank(g),
        order_histogram: hist,
    }
}

fn list(v: &[u64]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", items.join(","))
}

impl fmt::Display for InvariantFingerprint {
    /// Fixed field order: order, exponent, class, involutions, rank, abel,
    /// center, frattini, derived, d, orders.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orders: Vec<String> = self
            .order_histogram
            .iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect();
        write!(
            f,
            "order={} exponent={} class={} involutions={} rank={} abel={} center={}:{} frattini={} derived={} d={} orders={}",
            self.order,
            self.exponent,
            self.class,
            self.involutions,
            self.p_rank,
            list(&self.abelian_invariants),
            self.center_order,
            list(&self.center_type),
            self.frattini_order,
            self.derived_order,
            self.generator_rank,
            orders.join(",")
        )
    }
}

/// Exponent of a subgroup.
pub fn exponent_of(g: &Group, s: &Subgroup) -> u64 {
    subgroup_exponent(g, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;
    use crate::presentation::{collect, PcPresentation, Word};

    fn quaternion8() -> Group {
        let mut p = PcPresentation::new("Q8");
        let b = p.gen("b", 2);
        let a = p.gen("a", 4);
        p.power(b, Word::gen(a, 2));
        p.conj(a, b, Word::gen(a, -1));
        collect(&p, 4096).unwrap()
    }

    fn dihedral8() -> Group {
        let mut p = PcPresentation::new("D8");
        let t = p.gen("t", 2);
        let r = p.gen("r", 4);
        p.conj(r, t, Word::gen(r, -1));
        collect(&p, 4096).unwrap()
    }

    #[test]
    fn involution_counts() {
        assert_eq!(count_involutions(&quaternion8()), 1);
        assert_eq!(count_involutions(&dihedral8()), 5);
    }

    #[test]
    fn frattini_of_elementary_abelian_is_trivial() {
        let c2 = cyclic(2);
        let v = Group::direct_product(&Group::direct_product(&c2, &c2, 64).unwrap(), &c2, 64).unwrap();
        assert!(frattini(&v).is_trivial());
        assert_eq!(maximal_subgroups(&v).len(), 7);
        assert_eq!(p_rank(&v), 3);
    }

    #[test]
    fn homocyclic_fingerprint() {
        let c4 = cyclic(4);
        let g = Group::direct_product(&c4, &c4, 64).unwrap();
        let f = fingerprint(&g);
        assert_eq!((f.exponent, f.class, f.involutions, f.p_rank), (4, 1, 3, 2));
        assert_eq!(f.abelian_invariants, vec![4, 4]);
        assert_eq!(
            f.to_string(),
            "order=16 exponent=4 class=1 involutions=3 rank=2 abel=[4,4] center=16:[4,4] frattini=4 derived=1 d=2 orders=1:1,2:3,4:12"
        );
        assert!(!higman_check(&g));
    }

    #[test]
    fn quaternion_is_special() {
        let q = quaternion8();
        assert!(special_check(&q));
        assert!(!special_check(&cyclic(4)));
        assert!(!higman_check(&dihedral8()));
    }

    #[test]
    fn metacyclic_detection() {
        assert!(is_metacyclic(&quaternion8()));
        let c2 = cyclic(2);
        let v8 = Group::direct_product(&Group::direct_product(&c2, &c2, 64).unwrap(), &c2, 64).unwrap();
        assert!(!is_metacyclic(&v8));
    }

    #[test]
    fn maximal_subgroups_meet_in_frattini() {
        let d = dihedral8();
        let ms = maximal_subgroups(&d);
        assert_eq!(ms.len(), 3);
        let mut meet = ms[0].members().clone();
        for m in &ms[1..] {
            meet = meet.intersection(m.members());
        }
        assert_eq!(&meet, frattini(&d).members());
    }
}
