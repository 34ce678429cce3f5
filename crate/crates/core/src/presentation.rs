//! Polycyclic presentations and their realization as multiplication tables.
//!
//! A presentation lists generators with relative orders, power relations
//! `g^r = w` and conjugation relations `t^b = w` (meaning `b^-1 t b = w`).
//! Missing power relations mean `g^r = 1`; missing conjugation relations
//! mean the pair commutes.
//!
//! Collection picks a polycyclic ordering of the generators in which every
//! power word involves only later generators and, for each conjugation
//! relation used constructively, the acting generator comes first and the
//! word involves only generators after it. The group is then built as a
//! tower of cyclic extensions `G_i = <g_i> G_{i+1}`, and each relation is
//! re-checked on the finished table.

use crate::error::{Error, Result};
use crate::group::{prime_power_base, Elem, Group, Source, MAX_TABLE_ORDER};
use std::fmt;

/// A word: product of generator powers, left to right.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Word(pub Vec<(usize, i64)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: usize, e: i64) -> Self {
        Word(vec![(g, e)])
    }

    pub fn then(mut self, g: usize, e: i64) -> Self {
        self.0.push((g, e));
        self
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&(_, e)| e == 0)
    }

    fn gens(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().filter(|&&(_, e)| e != 0).map(|&(g, _)| g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjRel {
    /// Generator being conjugated.
    pub target: usize,
    /// Generator acting by conjugation.
    pub by: usize,
    pub word: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    pub name: String,
    pub gens: Vec<String>,
    pub rel_orders: Vec<u32>,
    pub power_rels: Vec<Word>,
    pub conj_rels: Vec<ConjRel>,
    /// Further relations `lhs = rhs`, only checked on the finished group.
    pub rels: Vec<(Word, Word)>,
}

impl PcPresentation {
    pub fn new(name: impl Into<String>) -> Self {
        PcPresentation {
            name: name.into(),
            gens: Vec::new(),
            rel_orders: Vec::new(),
            power_rels: Vec::new(),
            conj_rels: Vec::new(),
            rels: Vec::new(),
        }
    }

    /// Adds a generator with relative order `rel_order` and returns its index.
    pub fn gen(&mut self, name: &str, rel_order: u32) -> usize {
        self.gens.push(name.to_string());
        self.rel_orders.push(rel_order);
        self.power_rels.push(Word::identity());
        self.gens.len() - 1
    }

    pub fn power(&mut self, g: usize, word: Word) -> &mut Self {
        self.power_rels[g] = word;
        self
    }

    pub fn conj(&mut self, target: usize, by: usize, word: Word) -> &mut Self {
        self.conj_rels.push(ConjRel { target, by, word });
        self
    }

    pub fn rel(&mut self, lhs: Word, rhs: Word) -> &mut Self {
        self.rels.push((lhs, rhs));
        self
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g == name)
    }

    pub fn claimed_order(&self) -> u128 {
        self.rel_orders.iter().map(|&r| r as u128).product()
    }

    /// Syntactic checks: prime-power relative orders, valid generator refs.
    pub fn validate(&self) -> Result<()> {
        let k = self.gens.len();
        if self.rel_orders.len() != k || self.power_rels.len() != k {
            return Err(Error::Semantic("generator lists have different lengths".into()));
        }
        for (name, &r) in self.gens.iter().zip(&self.rel_orders) {
            if prime_power_base(r as u64).is_none() {
                return Err(Error::Semantic(format!(
                    "relative order {r} of generator {name} is not a prime power"
                )));
            }
        }
        for (i, n) in self.gens.iter().enumerate() {
            if self.gens[..i].contains(n) {
                return Err(Error::Semantic(format!("generator {n} declared twice")));
            }
        }
        let bad = |w: &Word| w.0.iter().any(|&(g, _)| g >= k);
        if self.power_rels.iter().any(bad) || self.conj_rels.iter().any(|c| bad(&c.word)) {
            return Err(Error::Semantic("relation references an undefined generator".into()));
        }
        if self.rels.iter().any(|(l, r)| bad(l) || bad(r)) {
            return Err(Error::Semantic("relation references an undefined generator".into()));
        }
        if self.conj_rels.iter().any(|c| c.target >= k || c.by >= k || c.target == c.by) {
            return Err(Error::Semantic("invalid conjugation relation".into()));
        }
        Ok(())
    }

    pub fn word_text(&self, w: &Word) -> String {
        if w.is_identity() {
            return "1".into();
        }
        w.0.iter()
            .filter(|&&(_, e)| e != 0)
            .map(|&(g, e)| {
                if e == 1 {
                    self.gens[g].clone()
                } else {
                    format!("{}^{}", self.gens[g], e)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for PcPresentation {
    /// Canonical text form, parseable by the corpus parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .gens
            .iter()
            .zip(&self.rel_orders)
            .map(|(g, r)| format!("{g}:{r}"))
            .collect();
        write!(f, "group {} {{ gens {}", self.name, gens.join(", "))?;
        for (i, w) in self.power_rels.iter().enumerate() {
            if !w.is_identity() {
                write!(f, "; pow {}: {}", self.gens[i], self.word_text(w))?;
            }
        }
        for c in &self.conj_rels {
            write!(
                f,
                "; conj {}^{} = {}",
                self.gens[c.target],
                self.gens[c.by],
                self.word_text(&c.word)
            )?;
        }
        for (l, r) in &self.rels {
            write!(f, "; rel {} = {}", self.word_text(l), self.word_text(r))?;
        }
        write!(f, " }}")
    }
}

/// Finds the polycyclic ordering used for construction, as a list of
/// generator indices. Declaration order is preferred; otherwise the
/// lexicographically least valid permutation is used.
fn pc_order(pres: &PcPresentation) -> Option<Vec<usize>> {
    let k = pres.gens.len();
    let valid = |perm: &[usize]| -> bool {
        let mut pos = vec![0; k];
        for (i, &g) in perm.iter().enumerate() {
            pos[g] = i;
        }
        for (g, w) in pres.power_rels.iter().enumerate() {
            if w.gens().any(|h| pos[h] <= pos[g]) {
                return false;
            }
        }
        // every generator pair with relations needs one constructive relation
        for c in &pres.conj_rels {
            let usable = |c: &ConjRel| {
                pos[c.by] < pos[c.target] && c.word.gens().all(|h| pos[h] > pos[c.by])
            };
            if usable(c) {
                continue;
            }
            let partner = pres
                .conj_rels
                .iter()
                .any(|d| d.target == c.by && d.by == c.target && usable(d));
            if !partner {
                return false;
            }
        }
        true
    };
    let mut perm: Vec<usize> = (0..k).collect();
    if valid(&perm) {
        return Some(perm);
    }
    if k > 8 {
        return None;
    }
    loop {
        if !next_permutation(&mut perm) {
            return None;
        }
        if valid(&perm) {
            return Some(perm);
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Realizes a presentation as a [`Group`]. Element indices are the
/// mixed-radix encodings of normal-form exponent vectors in the chosen
/// polycyclic order (first generator most significant).
pub fn collect(pres: &PcPresentation, cap: usize) -> Result<Group> {
    pres.validate()?;
    let claimed = pres.claimed_order();
    let cap = cap.min(MAX_TABLE_ORDER);
    if claimed > cap as u128 {
        return Err(Error::UnsupportedOrder {
            order: claimed.min(usize::MAX as u128) as usize,
            cap,
        });
    }
    let n = claimed as usize;
    let k = pres.gens.len();
    let order = pc_order(pres).ok_or_else(|| {
        Error::InconsistentPresentation("no polycyclic ordering fits the relations".into())
    })?;
    let mut pos = vec![0; k];
    for (i, &g) in order.iter().enumerate() {
        pos[g] = i;
    }
    // stride[i]: index of the i-th generator (in pc order) as an element
    let mut stride = vec![1usize; k];
    for i in (0..k.saturating_sub(1)).rev() {
        stride[i] = stride[i + 1] * pres.rel_orders[order[i + 1]] as usize;
    }
    let mut table = vec![0u16; n * n];
    // current layer size; the layer occupies indices 0..size
    let mut size = 1usize;

    let mul = |table: &Vec<u16>, a: usize, b: usize| table[a * n + b] as usize;
    // words over generators already in the current layer
    let eval = |table: &Vec<u16>, w: &Word| -> usize {
        let mut acc = 0usize;
        for &(g, e) in &w.0 {
            let x = stride[pos[g]];
            let ord = elem_order_in(table, n, x);
            let mut p = 0usize;
            for _ in 0..e.rem_euclid(ord as i64) {
                p = mul(table, p, x);
            }
            acc = mul(table, acc, p);
        }
        acc
    };

    for i in (0..k).rev() {
        let g = order[i];
        let r = pres.rel_orders[g] as usize;
        let sub = size; // |G_{i+1}|
        // conjugation action on G_{i+1}, defined on generators i+1..k
        let mut sigma_gen = vec![0usize; k];
        for j in (i + 1)..k {
            let t = order[j];
            let rel = pres
                .conj_rels
                .iter()
                .find(|c| c.target == t && c.by == g && c.word.gens().all(|h| pos[h] > i));
            sigma_gen[j] = match rel {
                Some(c) => eval(&table, &c.word),
                // relations the other way round are checked on the finished
                // table; with no relation at all the generators commute
                None => stride[j],
            };
            if sigma_gen[j] >= sub {
                return Err(Error::InconsistentPresentation(format!(
                    "conjugate of {} by {} leaves the subgroup below {}",
                    pres.gens[t], pres.gens[g], pres.gens[g]
                )));
            }
        }
        // extend sigma to all of G_{i+1} through normal forms
        let mut sigma = vec![0usize; sub];
        for x in 1..sub {
            // leading generator of x
            let j = (i + 1..k).find(|&j| x >= stride[j]).expect("x > 0");
            let e = x / stride[j];
            let rest = x % stride[j];
            let mut img = 0usize;
            for _ in 0..e {
                img = mul(&table, img, sigma_gen[j]);
            }
            sigma[x] = mul(&table, img, sigma[rest]);
        }
        let power = eval(&table, &pres.power_rels[g]);
        if power >= sub {
            return Err(Error::InconsistentPresentation(format!(
                "power relation of {} leaves the subgroup below it",
                pres.gens[g]
            )));
        }
        check_extension(&table, n, sub, &sigma, power, r).map_err(|msg| {
            Error::InconsistentPresentation(format!("generator {}: {msg}", pres.gens[g]))
        })?;
        // sigma^b for b < r
        let mut sigma_pows: Vec<Vec<usize>> = vec![(0..sub).collect()];
        for b in 1..r {
            let prev = &sigma_pows[b - 1];
            let next: Vec<usize> = (0..sub).map(|x| sigma[prev[x]]).collect();
            sigma_pows.push(next);
        }
        let new_size = sub * r;
        let mut layer = vec![0u16; new_size * new_size];
        for a in 0..r {
            for t in 0..sub {
                let x = a * sub + t;
                for b in 0..r {
                    let st = sigma_pows[b][t];
                    for s in 0..sub {
                        let y = b * sub + s;
                        let prod = mul(&table, st, s);
                        let z = if a + b < r {
                            (a + b) * sub + prod
                        } else {
                            (a + b - r) * sub + mul(&table, power, prod)
                        };
                        layer[x * new_size + y] = z as u16;
                    }
                }
            }
        }
        for x in 0..new_size {
            for y in 0..new_size {
                table[x * n + y] = layer[x * new_size + y];
            }
        }
        size = new_size;
    }

    let gens: Vec<(String, Elem)> = pres
        .gens
        .iter()
        .enumerate()
        .map(|(g, name)| (name.clone(), stride[pos[g]]))
        .collect();
    let group = Group::from_table(n, table, Source::Presentation, gens, pres.name.clone())?;
    verify_relations(pres, &group)?;
    Ok(group)
}

fn elem_order_in(table: &[u16], n: usize, x: usize) -> usize {
    let mut k = 1;
    let mut acc = x;
    while acc != 0 {
        acc = table[acc * n + x] as usize;
        k += 1;
        if k > n + 1 {
            break;
        }
    }
    k
}

/// Consistency conditions for the cyclic extension of `G_{i+1}` by a
/// generator acting as `sigma` with `g^r = power`.
fn check_extension(
    table: &[u16],
    n: usize,
    sub: usize,
    sigma: &[usize],
    power: usize,
    r: usize,
) -> std::result::Result<(), String> {
    let mul = |a: usize, b: usize| table[a * n + b] as usize;
    let mut seen = vec![false; sub];
    for x in 0..sub {
        if seen[sigma[x]] {
            return Err("conjugation action is not bijective".into());
        }
        seen[sigma[x]] = true;
    }
    for x in 0..sub {
        for y in 0..sub {
            if sigma[mul(x, y)] != mul(sigma[x], sigma[y]) {
                return Err("conjugation action is not a homomorphism".into());
            }
        }
    }
    if sigma[power] != power {
        return Err("conjugation does not fix the generator's power".into());
    }
    let inv_power = (0..sub).find(|&y| mul(power, y) == 0).expect("finite group");
    for x in 0..sub {
        let mut img = x;
        for _ in 0..r {
            img = sigma[img];
        }
        if img != mul(mul(inv_power, x), power) {
            return Err("r-th power of the action is not conjugation by g^r".into());
        }
    }
    Ok(())
}

fn eval_word(pres: &PcPresentation, g: &Group, w: &Word) -> Elem {
    w.0.iter().fold(0, |acc, &(h, e)| {
        let x = g.gen(&pres.gens[h]).expect("generator present");
        g.mul(acc, g.pow(x, e))
    })
}

fn verify_relations(pres: &PcPresentation, g: &Group) -> Result<()> {
    for (i, w) in pres.power_rels.iter().enumerate() {
        let x = g.gen(&pres.gens[i]).expect("generator present");
        if g.pow(x, pres.rel_orders[i] as i64) != eval_word(pres, g, w) {
            return Err(Error::InconsistentPresentation(format!(
                "power relation of {} fails",
                pres.gens[i]
            )));
        }
    }
    for c in &pres.conj_rels {
        let t = g.gen(&pres.gens[c.target]).expect("generator present");
        let b = g.gen(&pres.gens[c.by]).expect("generator present");
        if g.conj(t, b) != eval_word(pres, g, &c.word) {
            return Err(Error::InconsistentPresentation(format!(
                "relation {}^{} fails",
                pres.gens[c.target], pres.gens[c.by]
            )));
        }
    }
    for (l, r) in &pres.rels {
        if eval_word(pres, g, l) != eval_word(pres, g, r) {
            return Err(Error::InconsistentPresentation(format!(
                "relation {} = {} fails",
                pres.word_text(l),
                pres.word_text(r)
            )));
        }
    }
    Ok(())
}
