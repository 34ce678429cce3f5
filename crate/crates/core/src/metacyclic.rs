//! Metacyclic p-groups `<a, b | a^M = 1, b^N = a^t, a^b = a^r>` built from
//! their parameters, and a catalogue of them up to isomorphism.

use crate::autos::is_isomorphic;
use crate::caps::Caps;
use crate::error::Result;
use crate::group::{gcd, Group, Source};
use crate::invariants::fingerprint;
use std::collections::BTreeMap;

/// Parameters of a metacyclic presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MetacyclicParams {
    pub m: u64,
    pub n: u64,
    pub r: u64,
    pub t: u64,
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let (mut acc, mut b) = (1 % m, b % m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl MetacyclicParams {
    /// Whether the presentation defines a group of order `m * n`:
    /// `r^n = 1` and `a^t` fixed by `b`, both mod `m`.
    pub fn is_consistent(&self) -> bool {
        let MetacyclicParams { m, n, r, t } = *self;
        m >= 1 && n >= 1 && gcd(r, m) == 1 && pow_mod(r, n, m) == 1 % m && (t * (r + m - 1)) % m == 0
    }

    /// Elements `a^i b^j` numbered `i + m j`; `b^j a^k = a^(k s^j) b^j` with
    /// `s = r^-1`.
    pub fn build(&self) -> Option<Group> {
        if !self.is_consistent() {
            return None;
        }
        let MetacyclicParams { m, n, r, t } = *self;
        let s = (1..=m).find(|&s| s * r % m == 1 % m)?;
        let order = (m * n) as usize;
        let spow: Vec<u64> = (0..n).map(|j| pow_mod(s, j, m)).collect();
        let mut table = vec![0u16; order * order];
        for x in 0..order as u64 {
            let (i, j) = (x % m, x / m);
            for y in 0..order as u64 {
                let (k, l) = (y % m, y / m);
                let wrap = if j + l >= n { t } else { 0 };
                let a = (i + k * spow[j as usize] + wrap) % m;
                let b = (j + l) % n;
                table[(x as usize) * order + y as usize] = (a + m * b) as u16;
            }
        }
        let mut gens = Vec::new();
        if m > 1 {
            gens.push(("a".to_string(), 1));
        }
        if n > 1 {
            gens.push(("b".to_string(), m as usize));
        }
        let label = format!("Meta({m},{n},{r},{t})");
        let g = Group::from_table(order, table, Source::Construction, gens, label).ok()?;
        g.verify_associative().then_some(g)
    }
}

/// Metacyclic `p`-groups of order at most `p^max_log`, one per isomorphism
/// class, in order of construction.
pub fn metacyclic_catalogue(p: u64, max_log: u32, caps: &Caps) -> Result<Vec<Group>> {
    let mut out: Vec<Group> = Vec::new();
    let mut buckets: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for total in 0..=max_log {
        for e in 0..=total {
            let (m, n) = (p.pow(e), p.pow(total - e));
            for r in 0..m {
                // replacing a by a power prime to p turns t into gcd(t, m)
                for t in (0..m).filter(|&t| t == 0 || m % t == 0) {
                    let params = MetacyclicParams { m, n, r, t };
                    let Some(g) = params.build() else { continue };
                    let key = fingerprint(&g).to_string();
                    let bucket = buckets.entry(key).or_default();
                    let mut seen = false;
                    for &i in bucket.iter() {
                        if is_isomorphic(&g, &out[i], caps)?.is_some() {
                            seen = true;
                            break;
                        }
                    }
                    if !seen {
                        bucket.push(out.len());
                        out.push(g);
                    }
                }
            }
        }
    }
    Ok(out)
}
