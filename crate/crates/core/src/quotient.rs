//! Intermediate quotients `X / H` of a `(Z/2)^k`-cover `X -> P^2`.
//!
//! `X / H -> P^2` is a `G/H`-cover; coordinates on `G/H` come from a
//! row-reduced basis `chi_1, ..., chi_m` of `H^perp` via
//! `g -> (chi_1(g), ..., chi_m(g))`. Its nodes lie over the points
//! `D_g & D_g'` with `g + g'` in `H` and neither `g` nor `g'` in `H`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::building::{
    canonical_square_from_total, l_from_d, pg, BuildingDataNumeric, KSign, Rational,
};
use crate::classify::special_characters;
use crate::error::{Error, Result};
use crate::gl::find_all_isomorphisms;
use crate::group::{bit_string, parity, rref, subgroups, FiniteAbelianGroup, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientData {
    pub subgroup: Subgroup,
    /// Basis of `H^perp`, giving the coordinates of `G/H`.
    pub coordinates: Vec<usize>,
    pub data: BuildingDataNumeric,
}

impl QuotientData {
    /// Rank `m` of `G/H`.
    pub fn rank(&self) -> usize {
        self.coordinates.len()
    }

    /// Image of `g` in `G/H`.
    pub fn project(&self, g: usize) -> usize {
        project(&self.coordinates, g)
    }

    /// Image of a subgroup of `G` in `G/H`.
    pub fn image_of(&self, sub: &Subgroup) -> Result<Subgroup> {
        let basis = sub
            .basis()
            .ok_or_else(|| Error::GroupNotExponentTwo(sub.parent_orders().to_vec()))?;
        let images: Vec<usize> = basis.iter().map(|&g| self.project(g)).collect();
        Ok(Subgroup::from_basis(self.rank(), &images))
    }
}

fn project(coords: &[usize], g: usize) -> usize {
    coords
        .iter()
        .enumerate()
        .fold(0, |acc, (i, &chi)| acc | (parity(chi & g) as usize) << i)
}

/// Building data of `X / H` over the plane.
pub fn quotient_data(bd: &BuildingDataNumeric, h: &Subgroup) -> Result<QuotientData> {
    let k = bd.group.require_exponent_two()?;
    if h.parent_orders().len() != k || !h.parent_orders().iter().all(|&o| o == 2) {
        return Err(Error::InvalidData(format!(
            "subgroup of {:?} used with a group of rank {k}",
            h.parent_orders()
        )));
    }
    let perp = h
        .annihilator()
        .ok_or_else(|| Error::GroupNotExponentTwo(h.parent_orders().to_vec()))?;
    let mut coordinates: Vec<usize> = perp.basis().unwrap_or_default().to_vec();
    coordinates.sort_unstable();
    let m = coordinates.len();
    let mut d = vec![0i64; 1 << m];
    for g in 1..bd.d.len() {
        if !h.contains(g) {
            d[project(&coordinates, g)] += bd.d[g];
        }
    }
    let l: Vec<i64> = (0..1usize << m)
        .map(|a| {
            let chi = coordinates
                .iter()
                .enumerate()
                .filter(|(i, _)| a >> i & 1 == 1)
                .fold(0, |acc, (_, &c)| acc ^ c);
            bd.l[chi]
        })
        .collect();
    let group = FiniteAbelianGroup::elementary(m);
    debug_assert_eq!(
        l_from_d(&group, &d).integral().as_deref(),
        Some(l.as_slice())
    );
    let mut data = BuildingDataNumeric::new(group, l, d);
    data.base_dim = bd.base_dim;
    Ok(QuotientData {
        subgroup: h.clone(),
        coordinates,
        data,
    })
}

/// Nodes of `X / H`: each point of `D_g & D_g'` with `g + g'` in `H`, `g, g'`
/// outside `H`, has `2^{k-1}` preimages on `X`, each fixed by an element of `H`,
/// and these fall into orbits of size `|H|`.
pub fn node_count(bd: &BuildingDataNumeric, h: &Subgroup) -> Result<i64> {
    let k = bd.group.require_exponent_two()?;
    let mut total = 0i64;
    for g in 1..bd.d.len() {
        for g2 in g + 1..bd.d.len() {
            if bd.d[g] == 0 || bd.d[g2] == 0 || h.contains(g) || h.contains(g2) {
                continue;
            }
            if h.contains(g ^ g2) {
                total += bd.d[g] * bd.d[g2] * (1i64 << (k - 1));
            }
        }
    }
    let order = h.order() as i64;
    if total % order != 0 {
        return Err(Error::Internal(format!(
            "node count {total} not divisible by |H| = {order}"
        )));
    }
    Ok(total / order)
}

/// Node counting rule, injectable so that the verification ledger can be
/// exercised against a deliberately wrong formula.
pub type NodeCounter = fn(&BuildingDataNumeric, &Subgroup) -> Result<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SurfaceKind {
    /// `K` anti-ample: a rational surface, del Pezzo of degree `K^2` up to nodes.
    DelPezzoLike,
    K3,
    Enriques,
    /// `K` numerically trivial with `p_g >= 2`; does not occur for the eleven families.
    OtherKTrivial,
    GeneralType,
}

/// Surface type of a quotient. `kind` depends on the sign of `c'` and on `p_g` only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceLabel {
    pub kind: SurfaceKind,
    pub k2: i64,
    pub p_g: i64,
    pub nodes: i64,
}

impl SurfaceLabel {
    pub fn from_invariants(sign: KSign, k2: i64, p_g: i64, nodes: i64) -> Self {
        let kind = match sign {
            KSign::AntiAmple => SurfaceKind::DelPezzoLike,
            KSign::NumericallyTrivial => match p_g {
                0 => SurfaceKind::Enriques,
                1 => SurfaceKind::K3,
                _ => SurfaceKind::OtherKTrivial,
            },
            KSign::Positive => SurfaceKind::GeneralType,
        };
        SurfaceLabel {
            kind,
            k2,
            p_g,
            nodes,
        }
    }

    /// Conventional name; `quotient_rank` distinguishes the smooth quadric
    /// (a double plane over a conic) from other degree-8 surfaces.
    pub fn display_name(&self, quotient_rank: Option<usize>) -> String {
        let base = match self.kind {
            SurfaceKind::DelPezzoLike if self.k2 == 9 && self.nodes == 0 => {
                "projective plane".to_string()
            }
            SurfaceKind::DelPezzoLike
                if self.k2 == 8 && self.nodes == 0 && quotient_rank == Some(1) =>
            {
                "P1xP1".to_string()
            }
            SurfaceKind::DelPezzoLike => format!("del Pezzo of degree {}", self.k2),
            SurfaceKind::K3 => "K3".to_string(),
            SurfaceKind::Enriques => "Enriques".to_string(),
            SurfaceKind::OtherKTrivial => format!("K-trivial with p_g = {}", self.p_g),
            SurfaceKind::GeneralType if self.p_g == 0 && self.k2 == 2 => {
                "numerical Campedelli".to_string()
            }
            SurfaceKind::GeneralType => {
                format!("general type, K^2 = {}, p_g = {}", self.k2, self.p_g)
            }
        };
        match self.nodes {
            0 => base,
            1 => format!("{base} with 1 node"),
            n => format!("{base} with {n} nodes"),
        }
    }
}

impl fmt::Display for SurfaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_name(None))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientInvariants {
    pub m: usize,
    pub d_total: i64,
    pub p_g: i64,
    pub q: i64,
    pub k2: i64,
    pub c: Rational,
    pub k_sign: KSign,
    pub nodes: i64,
    pub label: SurfaceLabel,
}

impl QuotientInvariants {
    pub fn display_name(&self) -> String {
        self.label.display_name(Some(self.m))
    }
}

pub fn quotient_invariants(bd: &BuildingDataNumeric, h: &Subgroup) -> Result<QuotientInvariants> {
    quotient_invariants_with(bd, h, node_count)
}

pub fn quotient_invariants_with(
    bd: &BuildingDataNumeric,
    h: &Subgroup,
    counter: NodeCounter,
) -> Result<QuotientInvariants> {
    let q = quotient_data(bd, h)?;
    invariants_of(&q, bd, counter)
}

fn invariants_of(
    q: &QuotientData,
    bd: &BuildingDataNumeric,
    counter: NodeCounter,
) -> Result<QuotientInvariants> {
    let m = q.rank();
    let d_total = q.data.d_total();
    let sq = canonical_square_from_total(m, d_total)?;
    let p_g = pg(&q.data);
    let nodes = counter(bd, &q.subgroup)?;
    Ok(QuotientInvariants {
        m,
        d_total,
        p_g,
        q: 0,
        k2: sq.k2,
        c: sq.c,
        k_sign: sq.sign,
        nodes,
        label: SurfaceLabel::from_invariants(sq.sign, sq.k2, p_g, nodes),
    })
}

/// Generators of a subgroup as bit strings, e.g. `<110, 011>`.
pub fn subgroup_name(h: &Subgroup, k: usize) -> String {
    let gens: Vec<String> = h
        .basis()
        .unwrap_or_default()
        .iter()
        .map(|&g| bit_string(g, k))
        .collect();
    format!("<{}>", gens.join(", "))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    /// Row-reduced basis of `H`.
    pub generators: Vec<usize>,
    pub order: usize,
    /// Building data of `X / H` in the coordinates given by `coordinates`.
    pub data: BuildingDataNumeric,
    /// Basis of `H^perp` used as coordinates on `G/H`.
    pub coordinates: Vec<usize>,
    pub invariants: QuotientInvariants,
}

impl QuotientReport {
    pub fn subgroup(&self, k: usize) -> Subgroup {
        Subgroup::from_basis(k, &self.generators)
    }

    pub fn kind(&self) -> SurfaceKind {
        self.invariants.label.kind
    }
}

pub fn quotient_report(bd: &BuildingDataNumeric, h: &Subgroup) -> Result<QuotientReport> {
    quotient_report_with(bd, h, node_count)
}

pub fn quotient_report_with(
    bd: &BuildingDataNumeric,
    h: &Subgroup,
    counter: NodeCounter,
) -> Result<QuotientReport> {
    let q = quotient_data(bd, h)?;
    let invariants = invariants_of(&q, bd, counter)?;
    Ok(QuotientReport {
        generators: h.basis().unwrap_or_default().to_vec(),
        order: h.order(),
        data: q.data,
        coordinates: q.coordinates,
        invariants,
    })
}

/// One report per subgroup, trivial and full included, ordered by (order, basis).
pub fn all_quotient_reports(bd: &BuildingDataNumeric) -> Result<Vec<QuotientReport>> {
    all_quotient_reports_with(bd, node_count)
}

pub fn all_quotient_reports_with(
    bd: &BuildingDataNumeric,
    counter: NodeCounter,
) -> Result<Vec<QuotientReport>> {
    let k = bd.group.require_exponent_two()?;
    let subs = subgroups(k)?;
    subs.par_iter()
        .map(|h| quotient_report_with(bd, h, counter))
        .collect()
}

/// Subgroups related by a symmetry of the data, with the report of the first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientOrbit {
    pub representative: QuotientReport,
    /// Row-reduced bases of every subgroup in the orbit, sorted.
    pub members: Vec<Vec<usize>>,
}

/// Reports grouped into orbits under the stabilizer of `l` in `GL(k, F_2)`.
pub fn grouped_quotient_reports(bd: &BuildingDataNumeric) -> Result<Vec<QuotientOrbit>> {
    let k = bd.group.require_exponent_two()?;
    let symmetries = find_all_isomorphisms(k, &bd.l, &bd.l);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for report in all_quotient_reports(bd)? {
        if seen.contains(&report.generators) {
            continue;
        }
        let orbit: BTreeSet<Vec<usize>> = symmetries
            .iter()
            .map(|m| {
                let images: Vec<usize> = report.generators.iter().map(|&g| m.apply(g)).collect();
                rref(&images)
            })
            .collect();
        seen.extend(orbit.iter().cloned());
        out.push(QuotientOrbit {
            representative: report,
            members: orbit.into_iter().collect(),
        });
    }
    Ok(out)
}

/// K3 quotients `X/H_1 <- X/H_2 <- ...` sharing the bottom and top subgroup;
/// each chain is a sequence of index-2 inclusions, i.e. of double covers of
/// K3 surfaces given by symplectic involutions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K3Tower {
    /// Node counts along the chain, from the smallest subgroup up.
    pub nodes: Vec<i64>,
    /// Every maximal chain with these endpoints, as row-reduced bases.
    pub chains: Vec<Vec<Vec<usize>>>,
}

impl K3Tower {
    pub fn bottom(&self) -> &[usize] {
        &self.chains[0][0]
    }

    pub fn top(&self) -> &[usize] {
        self.chains[0].last().expect("nonempty chain")
    }
}

/// Maximal chains of index-2 inclusions with every quotient a K3 surface,
/// grouped by their endpoints.
pub fn k3_towers(bd: &BuildingDataNumeric) -> Result<Vec<K3Tower>> {
    let mut k3: BTreeMap<Vec<usize>, (Subgroup, i64)> = BTreeMap::new();
    let k = bd.group.require_exponent_two()?;
    for r in all_quotient_reports(bd)? {
        if r.kind() == SurfaceKind::K3 {
            k3.insert(r.generators.clone(), (r.subgroup(k), r.invariants.nodes));
        }
    }
    let covers = |a: &Subgroup, b: &Subgroup| b.order() == 2 * a.order() && a.is_subgroup_of(b);
    let mut chains = Vec::new();
    for (key, (h, _)) in &k3 {
        if k3.values().any(|(lower, _)| covers(lower, h)) {
            continue;
        }
        let mut chain = vec![key.clone()];
        extend_chains(&k3, &covers, &mut chain, &mut chains);
    }
    let mut grouped: BTreeMap<(Vec<usize>, Vec<usize>), Vec<Vec<Vec<usize>>>> = BTreeMap::new();
    for chain in chains {
        let ends = (chain[0].clone(), chain.last().cloned().unwrap_or_default());
        grouped.entry(ends).or_default().push(chain);
    }
    let mut towers: Vec<K3Tower> = grouped
        .into_values()
        .map(|mut chains| {
            chains.sort();
            K3Tower {
                nodes: chains[0].iter().map(|key| k3[key].1).collect(),
                chains,
            }
        })
        .collect();
    towers.sort_by(|a, b| (a.bottom().len(), &a.chains).cmp(&(b.bottom().len(), &b.chains)));
    Ok(towers)
}

fn extend_chains(
    k3: &BTreeMap<Vec<usize>, (Subgroup, i64)>,
    covers: &dyn Fn(&Subgroup, &Subgroup) -> bool,
    chain: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    let top = &k3[chain.last().expect("nonempty chain")].0;
    let next: Vec<Vec<usize>> = k3
        .iter()
        .filter(|(_, (h, _))| covers(top, h))
        .map(|(key, _)| key.clone())
        .collect();
    if next.is_empty() {
        out.push(chain.clone());
        return;
    }
    for key in next {
        chain.push(key);
        extend_chains(k3, covers, chain, out);
        chain.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurgerTriple {
    /// Three involutions, increasing.
    pub sigmas: [usize; 3],
    /// The degree-3 character surviving on each quotient.
    pub surviving: [usize; 3],
    pub reports: [QuotientReport; 3],
}

/// The two conditions on three involutions, evaluated separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurgerConditions {
    /// Each `X / <sigma_j>` is a K3 surface.
    pub k3: [bool; 3],
    /// The character with `l = 3` surviving on each quotient, if exactly one does.
    pub surviving: [Option<usize>; 3],
}

impl BurgerConditions {
    /// Every character with `l = 3` survives on exactly one quotient.
    pub fn splits_characters(&self) -> bool {
        let chis: BTreeSet<usize> = self.surviving.iter().flatten().copied().collect();
        chis.len() == 3
    }

    pub fn holds(&self) -> bool {
        self.k3.iter().all(|&b| b) && self.splits_characters()
    }
}

fn degree_three_characters(bd: &BuildingDataNumeric) -> Result<Vec<usize>> {
    let p = pg(bd);
    if p != 3 {
        return Err(Error::GenusNotThree(p));
    }
    Ok(special_characters(&bd.l)
        .into_iter()
        .filter(|&chi| bd.l[chi] == 3)
        .collect())
}

fn surviving_character(specials: &[usize], sigma: usize) -> Option<usize> {
    let mut it = specials
        .iter()
        .copied()
        .filter(|&chi| parity(chi & sigma) == 0);
    match (it.next(), it.next()) {
        (Some(chi), None) => Some(chi),
        _ => None,
    }
}

pub fn burger_conditions(bd: &BuildingDataNumeric, sigmas: [usize; 3]) -> Result<BurgerConditions> {
    let k = bd.group.require_exponent_two()?;
    let specials = degree_three_characters(bd)?;
    let mut k3 = [false; 3];
    let mut surviving = [None; 3];
    for (j, &sigma) in sigmas.iter().enumerate() {
        let q = quotient_invariants(bd, &Subgroup::from_basis(k, &[sigma]))?;
        k3[j] = q.label.kind == SurfaceKind::K3;
        surviving[j] = surviving_character(&specials, sigma);
    }
    Ok(BurgerConditions { k3, surviving })
}

/// Triples of involutions `sigma_j` such that each `X / <sigma_j>` is a K3
/// surface and each character with `l = 3` survives on exactly one of them.
pub fn burger_check(bd: &BuildingDataNumeric) -> Result<Vec<BurgerTriple>> {
    let k = bd.group.require_exponent_two()?;
    let specials = degree_three_characters(bd)?;
    if specials.len() != 3 {
        return Ok(Vec::new());
    }
    let mut candidates: Vec<(usize, usize, QuotientReport)> = Vec::new();
    for sigma in 1..bd.d.len() {
        let report = quotient_report(bd, &Subgroup::from_basis(k, &[sigma]))?;
        if report.kind() != SurfaceKind::K3 {
            continue;
        }
        if let Some(chi) = surviving_character(&specials, sigma) {
            candidates.push((sigma, chi, report));
        }
    }
    let mut out = Vec::new();
    for (i, a) in candidates.iter().enumerate() {
        for (j, b) in candidates.iter().enumerate().skip(i + 1) {
            for c in &candidates[j + 1..] {
                if a.1 != b.1 && a.1 != c.1 && b.1 != c.1 {
                    out.push(BurgerTriple {
                        sigmas: [a.0, b.0, c.0],
                        surviving: [a.1, b.1, c.1],
                        reports: [a.2.clone(), b.2.clone(), c.2.clone()],
                    });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::lookup;
    use crate::group::parse_bit_string;

    fn bits(s: &str) -> usize {
        parse_bit_string(s).unwrap()
    }

    fn data(label: &str) -> BuildingDataNumeric {
        lookup(label).unwrap().building_data()
    }

    fn sub(gens: &[&str]) -> Subgroup {
        let k = gens[0].len();
        let v: Vec<usize> = gens.iter().map(|s| bits(s)).collect();
        Subgroup::from_basis(k, &v)
    }

    fn inv(label: &str, gens: &[&str]) -> QuotientInvariants {
        quotient_invariants(&data(label), &sub(gens)).unwrap()
    }

    #[test]
    fn a2_quotients() {
        for g in ["10", "11"] {
            let q = inv("A2", &[g]);
            assert_eq!(
                (q.label.kind, q.k2, q.nodes),
                (SurfaceKind::DelPezzoLike, 2, 0)
            );
        }
        let q = inv("A2", &["01"]);
        assert_eq!(
            (q.label.kind, q.k2, q.p_g, q.nodes),
            (SurfaceKind::GeneralType, 2, 3, 16)
        );
    }

    #[test]
    fn quotient_coordinates() {
        let q = quotient_data(&data("A2"), &sub(&["01"])).unwrap();
        assert_eq!(q.rank(), 1);
        assert_eq!(q.data.d, vec![0, 8]);
        assert_eq!(q.data.l, vec![0, 4]);
        assert!(q.data.is_valid());
        assert_eq!(q.project(bits("11")), 1);
    }

    #[test]
    fn trivial_subgroup_changes_nothing() {
        let bd = data("E3");
        let q = quotient_data(&bd, &sub(&["000"])).unwrap();
        assert_eq!(
            (q.data.l.clone(), q.data.d.clone()),
            (bd.l.clone(), bd.d.clone())
        );
        assert_eq!(node_count(&bd, &sub(&["000"])).unwrap(), 0);
    }

    #[test]
    fn c3_kernel_quotient_is_a_double_plane_over_three_conics() {
        // ker(eps_1) = <010, 001>
        let q = quotient_data(&data("C3"), &sub(&["010", "001"])).unwrap();
        assert_eq!(q.data.d, vec![0, 6]);
        assert_eq!(node_count(&data("C3"), &sub(&["010", "001"])).unwrap(), 12);
    }

    #[test]
    fn d3_plane_and_k3() {
        let q = inv("D3", &["111"]);
        assert_eq!((q.label.kind, q.k2), (SurfaceKind::DelPezzoLike, 9));
        assert_eq!(q.display_name(), "projective plane");
        let q = inv("D3", &["110"]);
        assert_eq!((q.label.kind, q.nodes), (SurfaceKind::K3, 2));
        let q = inv("D3", &["010", "001"]);
        assert_eq!((q.label.kind, q.nodes), (SurfaceKind::K3, 9));
    }

    #[test]
    fn display_names() {
        assert_eq!(inv("C3", &["110", "011"]).display_name(), "P1xP1");
        assert_eq!(inv("C3", &["111"]).display_name(), "Enriques");
        assert_eq!(inv("A4", &["1000"]).display_name(), "numerical Campedelli");
        assert_eq!(
            inv("D3", &["110", "001"]).display_name(),
            "del Pezzo of degree 8 with 1 node"
        );
        assert_eq!(
            inv("A2", &["01"]).display_name(),
            "general type, K^2 = 2, p_g = 3 with 16 nodes"
        );
        assert_eq!(subgroup_name(&sub(&["110", "011"]), 3), "<101, 110>");
    }

    #[test]
    fn report_counts() {
        let b2 = all_quotient_reports(&data("B2")).unwrap();
        assert_eq!(b2.len(), 5);
        let k3: Vec<_> = b2.iter().filter(|r| r.kind() == SurfaceKind::K3).collect();
        assert_eq!(k3.len(), 3);
        assert!(k3.iter().all(|r| r.invariants.nodes == 9 && r.order == 2));
        assert_eq!(all_quotient_reports(&data("A1")).unwrap().len(), 2);
        assert_eq!(all_quotient_reports(&data("D4")).unwrap().len(), 67);
    }

    #[test]
    fn orbits_partition_the_subgroups() {
        for label in ["E3", "C4", "A3"] {
            let bd = data(label);
            let orbits = grouped_quotient_reports(&bd).unwrap();
            let total: usize = orbits.iter().map(|o| o.members.len()).sum();
            assert_eq!(total, all_quotient_reports(&bd).unwrap().len(), "{label}");
        }
    }

    #[test]
    fn towers() {
        let d4 = k3_towers(&data("D4")).unwrap();
        assert_eq!(d4.len(), 3);
        assert!(d4.iter().all(|t| t.nodes == [4, 10, 13]));
        assert!(k3_towers(&data("A1")).unwrap().is_empty());
        let d5 = k3_towers(&data("D5")).unwrap();
        assert!(d5.iter().all(|t| t.nodes == [8, 12, 14, 15]));
    }

    #[test]
    fn b2_burger() {
        let triples = burger_check(&data("B2")).unwrap();
        assert_eq!(triples.len(), 1);
        assert_eq!(triples[0].sigmas, [bits("10"), bits("01"), bits("11")]);
    }

    #[test]
    fn burgers_absent_for_a_types_and_c4() {
        for label in ["A1", "A2", "A3", "A4", "C4"] {
            assert!(burger_check(&data(label)).unwrap().is_empty(), "{label}");
        }
    }

    #[test]
    fn e3_has_a_single_k3_involution() {
        let c = burger_conditions(&data("E3"), [bits("110"), bits("011"), bits("101")]).unwrap();
        assert!(c.splits_characters());
        assert_eq!(c.k3, [true, false, false]);
        assert!(burger_check(&data("E3")).unwrap().is_empty());
    }

    #[test]
    fn burger_rejects_other_genus() {
        let bd = BuildingDataNumeric::from_branch_degrees(1, vec![0, 6]).unwrap();
        assert!(matches!(burger_check(&bd), Err(Error::GenusNotThree(1))));
    }
}
