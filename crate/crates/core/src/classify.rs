//! Classification of smooth `(Z/2)^k`-covers of the plane with `p_g = 3`.
//!
//! Two independent enumerators are provided:
//!
//! - [`enumerate`] works on branch degrees. Connectedness forces the branch
//!   multiset `{g repeated d_g times}` to span `G`, so after a change of basis
//!   it contains the standard basis `e_1, ..., e_k`; the remaining
//!   `d - k` entries are enumerated freely. The genus bound
//!   `sum_chi l_chi <= 2^{k+1} + 1` together with `sum_chi l_chi = 2^{k-2} d`
//!   caps the total degree, so the search is finite and exhaustive for every
//!   `k <= 6`.
//! - [`enumerate_by_characters`] fixes the special characters in normal form
//!   and enumerates `l_chi in {1, 2}` for the rest, transforming each
//!   candidate to branch degrees. It is exponential in `2^k` and is used as a
//!   cross-check for `k <= 5`.
//!
//! Both feed the same deduplication and labelling stage.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::building::{
    base_point_count, canonical_map_degree, d_from_l, d_from_l_exact, h0_projective, k_squared,
    l_from_d, walsh_hadamard, BuildingDataNumeric,
};
use crate::error::{Error, Result};
use crate::gl::{find_isomorphism, F2Matrix};
use crate::group::{parity, rref, FiniteAbelianGroup, MAX_RANK};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CoverType {
    /// One character of degree 4 carries all of `H^0(K)`.
    A,
    /// Three linearly dependent characters of degree 3.
    B,
    /// Three linearly independent characters of degree 3.
    C,
}

impl std::fmt::Display for CoverType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CoverType::A => "A",
            CoverType::B => "B",
            CoverType::C => "C",
        };
        f.write_str(s)
    }
}

/// Characters with `l_chi >= 3`, i.e. those contributing to `H^0(K)`.
pub fn special_characters(l: &[i64]) -> Vec<usize> {
    (1..l.len()).filter(|&c| l[c] >= 3).collect()
}

/// Type of a genus-3 degree vector, or `None` if `p_g != 3` or the shape is not one of A, B, C.
pub fn detect_type(k: usize, l: &[i64]) -> Option<CoverType> {
    if l.len() != 1 << k || l[0] != 0 || l[1..].iter().any(|&v| !(1..=4).contains(&v)) {
        return None;
    }
    let special = special_characters(l);
    match special.as_slice() {
        [a] if l[*a] == 4 => Some(CoverType::A),
        [a, b, c] if special.iter().all(|&s| l[s] == 3) => {
            if a ^ b ^ c == 0 {
                Some(CoverType::B)
            } else {
                Some(CoverType::C)
            }
        }
        _ => None,
    }
}

/// Base-point-freeness read off the kernels of the special characters:
/// type A needs `d_g = 0` on `ker chi`, type B on `ker chi_1 & ker chi_2`,
/// type C on every pairwise intersection `ker chi_i & ker chi_j`.
pub fn kernel_bpf_condition(k: usize, l: &[i64], d: &[i64]) -> Option<bool> {
    let ty = detect_type(k, l)?;
    let special = special_characters(l);
    let in_ker = |chi: usize, g: usize| parity(chi & g) == 0;
    let forbidden = |g: usize| match ty {
        CoverType::A => in_ker(special[0], g),
        CoverType::B => in_ker(special[0], g) && in_ker(special[1], g),
        CoverType::C => {
            let hits = special.iter().filter(|&&c| in_ker(c, g)).count();
            hits >= 2
        }
    };
    Some((1..d.len()).all(|g| !forbidden(g) || d[g] == 0))
}

/// For type C: the branch degree over the union of pairwise kernel
/// intersections equals `d + l(chi_1 + chi_2 + chi_3) - 9`.
pub fn type_c_base_sum_holds(k: usize, l: &[i64], d: &[i64]) -> Option<bool> {
    if detect_type(k, l)? != CoverType::C {
        return None;
    }
    let s = special_characters(l);
    let lhs: i64 = (1..d.len())
        .filter(|&g| s.iter().filter(|&&c| parity(c & g) == 0).count() >= 2)
        .map(|g| d[g])
        .sum();
    let total: i64 = d.iter().sum();
    Some(lhs == total + l[s[0] ^ s[1] ^ s[2]] - 9)
}

/// `sum_g dim |D_g| - dim PGL(3)`.
pub fn modular_dimension(bd: &BuildingDataNumeric) -> i64 {
    bd.d.iter().map(|&x| x * (x + 3) / 2).sum::<i64>() - 8
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub label: String,
    pub k: usize,
    pub cover_type: CoverType,
    pub l: Vec<i64>,
    pub d: Vec<i64>,
    pub k2: i64,
    pub deg_canonical: i64,
    pub modular_dimension: i64,
    pub base_points: i64,
    pub d_total: i64,
}

impl FamilyDescriptor {
    pub fn building_data(&self) -> BuildingDataNumeric {
        BuildingDataNumeric::new(
            FiniteAbelianGroup::elementary(self.k),
            self.l.clone(),
            self.d.clone(),
        )
    }

    /// Coordinate-free comparison key.
    pub fn signature(&self) -> (usize, i64, i64, i64, Vec<i64>, Vec<i64>) {
        let mut d = self.d.clone();
        let mut l = self.l.clone();
        d.sort_unstable();
        l.sort_unstable();
        (
            self.k,
            self.k2,
            self.deg_canonical,
            self.modular_dimension,
            d,
            l,
        )
    }

    fn from_data(label: String, bd: &BuildingDataNumeric) -> Result<Self> {
        let k = bd.rank();
        let cover_type = detect_type(k, &bd.l)
            .ok_or_else(|| Error::Internal(format!("{label}: not of genus-3 type")))?;
        Ok(FamilyDescriptor {
            label,
            k,
            cover_type,
            l: bd.l.clone(),
            d: bd.d.clone(),
            k2: k_squared(bd)?.k2,
            deg_canonical: canonical_map_degree(bd)?,
            modular_dimension: modular_dimension(bd),
            base_points: base_point_count(bd)?,
            d_total: bd.d_total(),
        })
    }
}

fn w(x: usize) -> u32 {
    x.count_ones()
}

fn w3(x: usize) -> u32 {
    (x & 0b111).count_ones()
}

const EPS: usize = 0b111;

#[allow(clippy::too_many_arguments)]
fn entry(
    label: &str,
    k: usize,
    cover_type: CoverType,
    l_rule: impl Fn(usize) -> i64,
    d_rule: impl Fn(usize) -> i64,
    modular_dimension: i64,
    k2: i64,
    deg_canonical: i64,
    base_points: i64,
) -> FamilyDescriptor {
    let n = 1usize << k;
    let l: Vec<i64> = (0..n).map(|c| if c == 0 { 0 } else { l_rule(c) }).collect();
    let d: Vec<i64> = (0..n).map(|g| if g == 0 { 0 } else { d_rule(g) }).collect();
    FamilyDescriptor {
        label: label.to_string(),
        k,
        cover_type,
        d_total: d.iter().sum(),
        l,
        d,
        k2,
        deg_canonical,
        modular_dimension,
        base_points,
    }
}

/// The eleven families with their published invariants, in the normal form
/// of the classification (special characters at `eps_1`, or `eps_1, eps_2, eps_1 + eps_2`,
/// or `eps_1, eps_2, eps_3`).
pub fn family_table() -> Vec<FamilyDescriptor> {
    use CoverType::*;
    let a_family = |label: &str, k: usize, md: i64, k2: i64| {
        entry(
            label,
            k,
            A,
            |c| if c == 1 { 4 } else { 2 },
            move |g| if g & 1 == 1 { 1 << (4 - k) } else { 0 },
            md,
            k2,
            k2,
            0,
        )
    };
    // l = 3 on eps_1, eps_2, eps_3; l = 1 on eps_i + eps_j and on the
    // characters with w_3 in {0, 3} other than 0 and eps; 2 otherwise.
    let d_type_l = |c: usize| {
        if c == 1 || c == 2 || c == 4 {
            3
        } else if (w3(c) == 2 && w(c) == 2) || ((w3(c) == 0 || w3(c) == 3) && c != EPS) {
            1
        } else {
            2
        }
    };
    vec![
        a_family("A1", 1, 36, 2),
        a_family("A2", 2, 20, 4),
        a_family("A3", 3, 12, 8),
        a_family("A4", 4, 8, 16),
        entry("B2", 2, B, |_| 3, |_| 3, 19, 9, 9, 0),
        entry(
            "C3",
            3,
            C,
            |c| match (w(c), c) {
                (1, _) => 3,
                (_, EPS) => 1,
                _ => 2,
            },
            |g| if w(g) >= 2 { 2 } else { 0 },
            12,
            8,
            8,
            0,
        ),
        entry(
            "C4",
            4,
            C,
            |c| match c {
                1 | 2 | 4 => 3,
                EPS => 1,
                _ => 2,
            },
            |g| if w3(g) >= 2 { 1 } else { 0 },
            8,
            16,
            16,
            0,
        ),
        entry(
            "D3",
            3,
            C,
            |c| match (w(c), c) {
                (1, _) => 3,
                (_, EPS) => 2,
                _ => 1,
            },
            |g| match (w(g), g) {
                (0 | 1, _) => 0,
                (_, EPS) => 4,
                _ => 1,
            },
            12,
            2,
            2,
            0,
        ),
        entry(
            "D4",
            4,
            C,
            d_type_l,
            |g| match (w3(g), w(g)) {
                (3, _) => 2,
                (2, 2) => 1,
                _ => 0,
            },
            8,
            4,
            4,
            0,
        ),
        entry(
            "D5",
            5,
            C,
            d_type_l,
            |g| match (w3(g), w(g)) {
                (3, _) | (2, 2) => 1,
                _ => 0,
            },
            6,
            8,
            8,
            0,
        ),
        entry(
            "E3",
            3,
            C,
            |c| match c {
                1 | 2 | 4 => 3,
                0b011 => 1,
                _ => 2,
            },
            |g| match g {
                0b111 => 3,
                0b011 => 2,
                0b100..=0b110 => 1,
                _ => 0,
            },
            12,
            8,
            4,
            4,
        ),
    ]
}

pub fn lookup(label: &str) -> Result<FamilyDescriptor> {
    family_table()
        .into_iter()
        .find(|f| f.label.eq_ignore_ascii_case(label))
        .ok_or_else(|| Error::UnknownFamily(label.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub k_max: usize,
    pub include_a: bool,
    pub include_b: bool,
    pub include_c: bool,
    /// Worker threads; `None` uses the ambient rayon pool.
    pub jobs: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            k_max: 6,
            include_a: true,
            include_b: true,
            include_c: true,
            jobs: None,
        }
    }
}

impl SearchConfig {
    pub fn with_k_max(k_max: usize) -> Self {
        SearchConfig {
            k_max,
            ..Default::default()
        }
    }

    pub fn only(mut self, ty: CoverType) -> Self {
        self.include_a = ty == CoverType::A;
        self.include_b = ty == CoverType::B;
        self.include_c = ty == CoverType::C;
        self
    }

    fn includes(&self, ty: CoverType) -> bool {
        match ty {
            CoverType::A => self.include_a,
            CoverType::B => self.include_b,
            CoverType::C => self.include_c,
        }
    }

    fn check(&self) -> Result<()> {
        if self.k_max > MAX_RANK {
            return Err(Error::RankTooLarge {
                rank: self.k_max,
                max: MAX_RANK,
            });
        }
        Ok(())
    }
}

pub(crate) fn run_with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
        {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

/// Largest total branch degree compatible with `p_g = 3` and connectedness on `(Z/2)^k`.
pub fn max_branch_degree(k: usize) -> i64 {
    // sum_chi l_chi <= 2^{k+1} + 1 and sum_chi l_chi = 2^{k-2} d
    (4 * ((1i64 << (k + 1)) + 1)) >> k
}

/// All genus-3 data on `(Z/2)^k` whose branch multiset contains the standard
/// basis, before deduplication. Every genus-3 datum is `GL(k, F_2)`-equivalent to one of these.
pub fn raw_genus_three_data(k: usize) -> Vec<BuildingDataNumeric> {
    let n = 1usize << k;
    let dmax = max_branch_degree(k);
    let mut extras_lists: Vec<Vec<usize>> = Vec::new();
    for extra in 0..=(dmax - k as i64).max(-1) {
        multisets(n - 1, extra as usize, &mut extras_lists);
    }
    let group = FiniteAbelianGroup::elementary(k);
    let mut out: Vec<BuildingDataNumeric> = extras_lists
        .par_iter()
        .filter_map(|extras| {
            let mut d = vec![0i64; n];
            for i in 0..k {
                d[1 << i] += 1;
            }
            for &g in extras {
                d[g] += 1;
            }
            let l = genus_three_l(k, &d)?;
            Some(BuildingDataNumeric::new(group.clone(), l, d))
        })
        .collect();
    out.sort_by(|a, b| a.d.cmp(&b.d));
    out
}

// Nondecreasing sequences of length `len` over 1..=top.
fn multisets(top: usize, len: usize, out: &mut Vec<Vec<usize>>) {
    fn rec(start: usize, top: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for g in start..=top {
            cur.push(g);
            rec(g, top, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(1, top, len, &mut Vec::with_capacity(len), out);
}

// l from d via the Walsh transform of d: l_chi = (d - W_d(chi)) / 4; `None`
// unless integral with p_g = 3.
fn genus_three_l(k: usize, d: &[i64]) -> Option<Vec<i64>> {
    let total: i64 = d.iter().sum();
    let mut w = d.to_vec();
    walsh_hadamard(&mut w);
    let mut l = Vec::with_capacity(d.len());
    let mut genus = 0;
    for &x in &w {
        let twice = total - x;
        if twice % 4 != 0 {
            return None;
        }
        let v = twice / 4;
        genus += h0_projective(2, v - 3);
        if genus > 3 {
            return None;
        }
        l.push(v);
    }
    let _ = k;
    (genus == 3).then_some(l)
}

/// Exhaustive classification over branch degrees.
pub fn enumerate(config: &SearchConfig) -> Result<Vec<FamilyDescriptor>> {
    config.check()?;
    let raw = run_with_jobs(config.jobs, || {
        (1..=config.k_max)
            .flat_map(raw_genus_three_data)
            .collect::<Vec<_>>()
    });
    finish(raw, config)
}

/// Classification by enumerating `l_chi in {1, 2}` around the normalised
/// special characters. Exponential; limited to `k <= 5`.
pub fn enumerate_by_characters(config: &SearchConfig) -> Result<Vec<FamilyDescriptor>> {
    config.check()?;
    if config.k_max > 5 {
        return Err(Error::RankTooLarge {
            rank: config.k_max,
            max: 5,
        });
    }
    let raw = run_with_jobs(config.jobs, || {
        let mut all = Vec::new();
        for k in 1..=config.k_max {
            for ty in [CoverType::A, CoverType::B, CoverType::C] {
                if config.includes(ty) {
                    all.extend(character_search(k, ty));
                }
            }
        }
        all
    });
    finish(raw, config)
}

/// Normal-form special characters for a type, if the rank allows it.
fn normal_specials(k: usize, ty: CoverType) -> Option<Vec<(usize, i64)>> {
    match ty {
        CoverType::A if k >= 1 => Some(vec![(1, 4)]),
        CoverType::B if k >= 2 => Some(vec![(1, 3), (2, 3), (3, 3)]),
        CoverType::C if k >= 3 => Some(vec![(1, 3), (2, 3), (4, 3)]),
        _ => None,
    }
}

fn character_search(k: usize, ty: CoverType) -> Vec<BuildingDataNumeric> {
    let Some(specials) = normal_specials(k, ty) else {
        return Vec::new();
    };
    let n = 1usize << k;
    let mut base = vec![0i64; n];
    for &(c, v) in &specials {
        base[c] = v;
    }
    let free: Vec<usize> = (1..n).filter(|&c| base[c] == 0).collect();
    let group = FiniteAbelianGroup::elementary(k);

    // W(g) = sum_chi (-1)^{chi(g)} l_chi for the fixed part.
    let mut w0 = base.clone();
    walsh_hadamard(&mut w0);

    // Split on the first few free characters to parallelise.
    let split = free.len().min(6);
    let prefixes: Vec<u32> = (0..1u32 << split).collect();
    let mut out: Vec<BuildingDataNumeric> = prefixes
        .par_iter()
        .flat_map_iter(|&prefix| {
            let mut l = base.clone();
            let mut w = w0.clone();
            for (i, &c) in free[..split].iter().enumerate() {
                let v = 1 + (prefix >> i & 1) as i64;
                l[c] = v;
                for (g, x) in w.iter_mut().enumerate() {
                    *x += if parity(c & g) == 0 { v } else { -v };
                }
            }
            let mut found = Vec::new();
            let mut scratch = vec![0i64; n];
            dfs(k, &free, split, &mut l, &mut w, &mut scratch, &mut found);
            found
                .into_iter()
                .map(|(l, d)| BuildingDataNumeric::new(group.clone(), l, d))
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_by(|a, b| a.l.cmp(&b.l));
    out
}

// Depth-first assignment of l in {1, 2}; `w` holds the partial transform.
// Prunes when some W(g) cannot end up <= 0.
fn dfs(
    k: usize,
    free: &[usize],
    pos: usize,
    l: &mut Vec<i64>,
    w: &mut Vec<i64>,
    scratch: &mut Vec<i64>,
    found: &mut Vec<(Vec<i64>, Vec<i64>)>,
) {
    let n = l.len();
    if pos == free.len() {
        if d_from_l_exact(k, l, scratch) {
            found.push((l.clone(), scratch.clone()));
        }
        return;
    }
    let rest = &free[pos..];
    for g in 1..n {
        // Each remaining chi adds +1 or +2 if chi(g) = 0, else -1 or -2.
        let (mut plus, mut minus) = (0i64, 0i64);
        for &c in rest {
            if parity(c & g) == 0 {
                plus += 1;
            } else {
                minus += 1;
            }
        }
        if w[g] + plus - 2 * minus > 0 {
            return;
        }
    }
    let c = free[pos];
    for v in [1i64, 2] {
        l[c] = v;
        for (g, x) in w.iter_mut().enumerate() {
            *x += if parity(c & g) == 0 { v } else { -v };
        }
        dfs(k, free, pos + 1, l, w, scratch, found);
        for (g, x) in w.iter_mut().enumerate() {
            *x -= if parity(c & g) == 0 { v } else { -v };
        }
    }
    l[c] = 0;
}

// Dedupe under GL(k, F_2), label against the table, transport to its coordinates and sort.
fn finish(raw: Vec<BuildingDataNumeric>, config: &SearchConfig) -> Result<Vec<FamilyDescriptor>> {
    let mut reps: BTreeMap<usize, Vec<BuildingDataNumeric>> = BTreeMap::new();
    for bd in raw {
        if !bd.is_valid() {
            return Err(Error::Internal(format!(
                "enumerated data fail the cover relations: d = {:?}",
                bd.d
            )));
        }
        let k = bd.rank();
        let Some(ty) = detect_type(k, &bd.l) else {
            return Err(Error::Internal(format!(
                "enumerated data of unknown type: {:?}",
                bd.l
            )));
        };
        if !config.includes(ty) {
            continue;
        }
        let bucket = reps.entry(k).or_default();
        let duplicate = bucket
            .iter()
            .any(|r| find_isomorphism(k, &r.l, &bd.l).is_some());
        if !duplicate {
            bucket.push(bd);
        }
    }

    let table = family_table();
    let mut out = Vec::new();
    let mut synthetic = 0;
    for (k, bucket) in reps {
        for bd in bucket {
            let matched = table.iter().find_map(|t| {
                if t.k != k {
                    return None;
                }
                find_isomorphism(k, &bd.l, &t.l).map(|m| (t, m))
            });
            let desc = match matched {
                Some((t, m)) => {
                    let moved = transport(&bd, &m)?;
                    FamilyDescriptor::from_data(t.label.clone(), &moved)?
                }
                None => {
                    synthetic += 1;
                    FamilyDescriptor::from_data(format!("X{k}.{synthetic}"), &bd)?
                }
            };
            out.push(desc);
        }
    }
    out.sort_by(|a, b| (a.k, a.cover_type, &a.d).cmp(&(b.k, b.cover_type, &b.d)));
    Ok(out)
}

/// Rewrite data in the coordinates where `l'(chi) = l(chi o M)`. The branch
/// degrees are recomputed from `l'` and checked against `d o M^{-1}`.
pub fn transport(bd: &BuildingDataNumeric, m: &F2Matrix) -> Result<BuildingDataNumeric> {
    let n = bd.l.len();
    let l: Vec<i64> = (0..n).map(|chi| bd.l[m.pull_back_character(chi)]).collect();
    let d = d_from_l(&bd.group, &l)?
        .integral()
        .ok_or_else(|| Error::Internal("transported data lost integrality".into()))?;
    let inv = m
        .inverse()
        .ok_or_else(|| Error::Internal("singular change of basis".into()))?;
    if (0..n).any(|g| d[g] != bd.d[inv.apply(g)]) {
        return Err(Error::Internal(
            "transported branch degrees disagree with the transformed originals".into(),
        ));
    }
    Ok(BuildingDataNumeric::new(bd.group.clone(), l, d))
}

/// `true` iff `l_from_d(d)` reproduces `l` exactly.
pub fn l_matches_d(desc: &FamilyDescriptor) -> bool {
    let group = FiniteAbelianGroup::elementary(desc.k);
    l_from_d(&group, &desc.d).integral().as_deref() == Some(desc.l.as_slice())
}

/// Rank of the span of the branch support.
pub fn support_rank(d: &[i64]) -> usize {
    let support: Vec<usize> = (1..d.len()).filter(|&g| d[g] > 0).collect();
    rref(&support).len()
}
