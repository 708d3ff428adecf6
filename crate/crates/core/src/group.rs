//! Finite abelian groups, their characters and subgroups.
//!
//! A group is a product of cyclic factors `Z/n_1 x ... x Z/n_m`. Elements and
//! characters are both addressed by a mixed-radix index whose least
//! significant digit is the first coordinate. When every factor has order 2
//! the index is exactly the bitmask of the F_2-vector (bit `i` is coordinate
//! `i + 1`), so addition becomes XOR and evaluation of a character becomes the
//! parity of `chi & g`. The specialised paths are taken on that flag only; the
//! general residue arithmetic stays available for every group.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank accepted by the exhaustive F_2 utilities.
pub const MAX_RANK: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct FiniteAbelianGroup {
    orders: Vec<u32>,
    size: usize,
    exponent_two: bool,
}

/// Mixed-radix index of a group element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupElement(pub usize);

/// Mixed-radix index of a character `chi`, evaluated as
/// `chi(g) = sum_i chi_i g_i / n_i mod 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Character(pub usize);

/// An element of Q/Z, stored as a reduced fraction `num/den` with `0 <= num < den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Qz {
    num: u64,
    den: u64,
}

impl Qz {
    pub const ZERO: Qz = Qz { num: 0, den: 1 };

    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let d = den as i64;
        let n = num.rem_euclid(d) as u64;
        let g = n.gcd(&den);
        Qz {
            num: n / g,
            den: den / g,
        }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Additive order in Q/Z.
    pub fn order(&self) -> u64 {
        self.den
    }
}

impl std::ops::Add for Qz {
    type Output = Qz;
    fn add(self, rhs: Qz) -> Qz {
        let den = self.den.lcm(&rhs.den);
        let num = self.num * (den / self.den) + rhs.num * (den / rhs.den);
        Qz::new(num as i64, den)
    }
}

impl fmt::Display for Qz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl TryFrom<Vec<u32>> for FiniteAbelianGroup {
    type Error = Error;
    fn try_from(orders: Vec<u32>) -> Result<Self> {
        FiniteAbelianGroup::new(orders)
    }
}

impl From<FiniteAbelianGroup> for Vec<u32> {
    fn from(g: FiniteAbelianGroup) -> Self {
        g.orders
    }
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = orders.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidOrder(bad));
        }
        let size = orders.iter().map(|&n| n as usize).product();
        let exponent_two = orders.iter().all(|&n| n == 2);
        Ok(FiniteAbelianGroup {
            orders,
            size,
            exponent_two,
        })
    }

    /// The elementary abelian group `(Z/2)^k`.
    pub fn elementary(k: usize) -> Self {
        FiniteAbelianGroup {
            orders: vec![2; k],
            size: 1 << k,
            exponent_two: true,
        }
    }

    pub fn cyclic(n: u32) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_exponent_two(&self) -> bool {
        self.exponent_two
    }

    pub fn require_exponent_two(&self) -> Result<usize> {
        if self.exponent_two {
            Ok(self.rank())
        } else {
            Err(Error::GroupNotExponentTwo(self.orders.clone()))
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(0)
    }

    pub fn trivial_character(&self) -> Character {
        Character(0)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.size).map(GroupElement)
    }

    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        (0..self.size).map(Character)
    }

    /// Residue vector of an index.
    pub fn digits(&self, index: usize) -> Vec<u32> {
        let mut rest = index;
        self.orders
            .iter()
            .map(|&n| {
                let r = (rest % n as usize) as u32;
                rest /= n as usize;
                r
            })
            .collect()
    }

    /// Index of a residue vector; residues are reduced modulo each order.
    pub fn index_of(&self, residues: &[i64]) -> usize {
        assert_eq!(residues.len(), self.rank(), "residue vector length");
        let mut idx = 0usize;
        for (&r, &n) in residues.iter().zip(&self.orders).rev() {
            idx = idx * n as usize + r.rem_euclid(n as i64) as usize;
        }
        idx
    }

    pub fn element(&self, residues: &[i64]) -> GroupElement {
        GroupElement(self.index_of(residues))
    }

    pub fn character(&self, residues: &[i64]) -> Character {
        Character(self.index_of(residues))
    }

    fn add_index(&self, a: usize, b: usize) -> usize {
        if self.exponent_two {
            return a ^ b;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<i64> = da.iter().zip(&db).map(|(&x, &y)| (x + y) as i64).collect();
        self.index_of(&sum)
    }

    fn neg_index(&self, a: usize) -> usize {
        if self.exponent_two {
            return a;
        }
        let neg: Vec<i64> = self.digits(a).iter().map(|&x| -(x as i64)).collect();
        self.index_of(&neg)
    }

    fn order_of_index(&self, a: usize) -> u64 {
        if self.exponent_two {
            return if a == 0 { 1 } else { 2 };
        }
        self.digits(a)
            .iter()
            .zip(&self.orders)
            .map(|(&r, &n)| (n / r.gcd(&n)) as u64)
            .fold(1, |acc, o| acc.lcm(&o))
    }

    pub fn add(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        GroupElement(self.add_index(g.0, h.0))
    }

    pub fn neg(&self, g: GroupElement) -> GroupElement {
        GroupElement(self.neg_index(g.0))
    }

    pub fn add_characters(&self, a: Character, b: Character) -> Character {
        Character(self.add_index(a.0, b.0))
    }

    pub fn neg_character(&self, a: Character) -> Character {
        Character(self.neg_index(a.0))
    }

    /// Least `t >= 1` with `t g = 0`.
    pub fn element_order(&self, g: GroupElement) -> u64 {
        self.order_of_index(g.0)
    }

    pub fn character_order(&self, chi: Character) -> u64 {
        self.order_of_index(chi.0)
    }

    /// `chi(g)` in Q/Z.
    pub fn eval(&self, chi: Character, g: GroupElement) -> Qz {
        if self.exponent_two {
            return Qz::new(parity(chi.0 & g.0) as i64, 2);
        }
        let den = self
            .orders
            .iter()
            .fold(1u64, |acc, &n| acc.lcm(&(n as u64)));
        let num: u64 = self
            .digits(chi.0)
            .iter()
            .zip(self.digits(g.0))
            .zip(&self.orders)
            .map(|((&c, x), &n)| c as u64 * x as u64 * (den / n as u64))
            .sum();
        Qz::new((num % den) as i64, den)
    }

    /// The unique `r` in `[0, o(g))` with `chi(g) = r / o(g)`.
    pub fn r_coeff(&self, g: GroupElement, chi: Character) -> u64 {
        if self.exponent_two {
            return parity(chi.0 & g.0) as u64;
        }
        let o = self.element_order(g);
        let v = self.eval(chi, g);
        let scaled = o * v.numer();
        assert!(
            scaled.is_multiple_of(v.denom()),
            "o(g) chi(g) is not integral: o = {o}, chi(g) = {v}"
        );
        scaled / v.denom()
    }

    /// Carry bit of `r_g^chi + r_g^chi'` against `o(g)`.
    pub fn epsilon(&self, chi: Character, chi2: Character, g: GroupElement) -> u64 {
        if self.exponent_two {
            return parity(chi.0 & g.0) as u64 & parity(chi2.0 & g.0) as u64;
        }
        u64::from(self.r_coeff(g, chi) + self.r_coeff(g, chi2) >= self.element_order(g))
    }

    /// `{h : chi(h) = 0}` as a subgroup of `G`.
    pub fn kernel_of_character(&self, chi: Character) -> Subgroup {
        let elements = self
            .elements()
            .filter(|&h| self.eval(chi, h).is_zero())
            .map(|h| h.0)
            .collect();
        Subgroup::from_sorted_elements(self, elements)
    }

    /// `{chi : chi(g) = 0}` as a subgroup of the dual group (same orders).
    pub fn kernel_of_element(&self, g: GroupElement) -> Subgroup {
        let elements = self
            .characters()
            .filter(|&chi| self.eval(chi, g).is_zero())
            .map(|c| c.0)
            .collect();
        Subgroup::from_sorted_elements(self, elements)
    }

    /// Order of `g` viewed as a character of a subgroup `sub` of the dual.
    pub fn restricted_order(&self, g: GroupElement, sub: &Subgroup) -> u64 {
        sub.elements()
            .iter()
            .map(|&c| self.eval(Character(c), g).order())
            .fold(1, |acc, o| acc.lcm(&o))
    }
}

#[inline]
pub(crate) fn parity(x: usize) -> u32 {
    x.count_ones() & 1
}

/// Number of nonzero coordinates of an F_2-vector.
pub fn weight(g: usize) -> u32 {
    g.count_ones()
}

/// Number of nonzero coordinates among the first `h` of a rank-`k` vector.
pub fn partial_weight(g: usize, h: usize, k: usize) -> Result<u32> {
    if h > k {
        return Err(Error::PrefixTooLong { h, k });
    }
    Ok((g & ((1usize << h) - 1)).count_ones())
}

/// Coordinate string of a rank-`k` vector, first coordinate first (`e1 + e2` in rank 3 is `110`).
pub fn bit_string(v: usize, k: usize) -> String {
    (0..k)
        .map(|i| if v >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Inverse of [`bit_string`].
pub fn parse_bit_string(s: &str) -> Option<usize> {
    let mut v = 0usize;
    for (i, c) in s.chars().enumerate() {
        match c {
            '1' => v |= 1 << i,
            '0' => {}
            _ => return None,
        }
    }
    Some(v)
}

/// Row-reduced echelon basis of the F_2-span of `vectors`, sorted decreasing by pivot.
pub fn rref(vectors: &[usize]) -> Vec<usize> {
    let mut basis: Vec<usize> = Vec::new();
    for &v in vectors {
        let mut v = v;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    // Fully reduce: clear every pivot from the other rows.
    let n = basis.len();
    for i in 0..n {
        let pivot = highest_bit(basis[i]);
        for j in 0..n {
            if i != j && basis[j] >> pivot & 1 == 1 {
                basis[j] ^= basis[i];
            }
        }
    }
    basis.sort_unstable_by(|a, b| b.cmp(a));
    basis
}

fn highest_bit(v: usize) -> u32 {
    usize::BITS - 1 - v.leading_zeros()
}

/// All vectors of the span of an F_2 basis, sorted.
pub fn span(basis: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize];
    for &b in basis {
        let extra: Vec<usize> = out.iter().map(|&v| v ^ b).collect();
        out.extend(extra);
    }
    out.sort_unstable();
    out
}

/// A subgroup, stored by its sorted element indices. For exponent-2 groups
/// the row-reduced basis doubles as a canonical key.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subgroup {
    orders: Vec<u32>,
    elements: Vec<usize>,
    basis: Option<Vec<usize>>,
}

impl Subgroup {
    fn from_sorted_elements(group: &FiniteAbelianGroup, mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        let basis = group.is_exponent_two().then(|| rref(&elements));
        Subgroup {
            orders: group.orders().to_vec(),
            elements,
            basis,
        }
    }

    /// Closure of a generating set under the group law.
    pub fn generated_by(group: &FiniteAbelianGroup, gens: &[GroupElement]) -> Self {
        if group.is_exponent_two() {
            let raw: Vec<usize> = gens.iter().map(|g| g.0).collect();
            return Self::from_basis(group.rank(), &raw);
        }
        let mut seen: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = group.add_index(x, g.0);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Self::from_sorted_elements(group, seen.into_iter().collect())
    }

    /// Subgroup of `(Z/2)^k` spanned by the given vectors.
    pub fn from_basis(k: usize, vectors: &[usize]) -> Self {
        let basis = rref(vectors);
        Subgroup {
            orders: vec![2; k],
            elements: span(&basis),
            basis: Some(basis),
        }
    }

    pub fn trivial(group: &FiniteAbelianGroup) -> Self {
        Self::from_sorted_elements(group, vec![0])
    }

    pub fn whole(group: &FiniteAbelianGroup) -> Self {
        Self::from_sorted_elements(group, (0..group.size()).collect())
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, index: usize) -> bool {
        self.elements.binary_search(&index).is_ok()
    }

    /// Row-reduced basis (exponent-2 groups only).
    pub fn basis(&self) -> Option<&[usize]> {
        self.basis.as_deref()
    }

    /// F_2-dimension (exponent-2 groups only).
    pub fn dim(&self) -> Option<usize> {
        self.basis.as_ref().map(Vec::len)
    }

    pub fn parent_orders(&self) -> &[u32] {
        &self.orders
    }

    /// Annihilator in the dual: `{chi : chi(h) = 0 for all h in H}` (exponent-2 groups only).
    pub fn annihilator(&self) -> Option<Subgroup> {
        let basis = self.basis.as_ref()?;
        let k = self.orders.len();
        let elements: Vec<usize> = (0..1usize << k)
            .filter(|&chi| basis.iter().all(|&h| parity(chi & h) == 0))
            .collect();
        Some(Subgroup {
            orders: self.orders.clone(),
            basis: Some(rref(&elements)),
            elements,
        })
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&e| other.contains(e))
    }
}

/// Every subgroup of `(Z/2)^k`, ordered by (order, row-reduced basis).
pub fn subgroups(k: usize) -> Result<Vec<Subgroup>> {
    if k > MAX_RANK {
        return Err(Error::RankTooLarge {
            rank: k,
            max: MAX_RANK,
        });
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    seen.insert(Vec::new());
    while !layer.is_empty() {
        let mut next = Vec::new();
        for basis in &layer {
            let members = span(basis);
            for v in 1..1usize << k {
                if members.binary_search(&v).is_ok() {
                    continue;
                }
                let mut ext = basis.clone();
                ext.push(v);
                let canon = rref(&ext);
                if seen.insert(canon.clone()) {
                    next.push(canon);
                }
            }
        }
        layer = next;
    }
    let mut out: Vec<Subgroup> = seen
        .into_iter()
        .map(|b| Subgroup::from_basis(k, &b))
        .collect();
    out.sort_by(|a, b| (a.order(), a.basis()).cmp(&(b.order(), b.basis())));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e2(k: usize) -> FiniteAbelianGroup {
        FiniteAbelianGroup::elementary(k)
    }

    #[test]
    fn element_orders() {
        assert_eq!(e2(3).element_order(GroupElement(0)), 1);
        let z5 = FiniteAbelianGroup::cyclic(5).unwrap();
        assert_eq!(z5.element_order(z5.element(&[2])), 5);
        let g = parse_bit_string("1010").unwrap();
        assert_eq!(e2(4).element_order(GroupElement(g)), 2);
        let mixed = FiniteAbelianGroup::new(vec![4, 6]).unwrap();
        assert_eq!(mixed.element_order(mixed.element(&[2, 3])), 2);
        assert_eq!(mixed.element_order(mixed.element(&[1, 2])), 12);
    }

    #[test]
    fn rejects_order_one() {
        assert_eq!(
            FiniteAbelianGroup::new(vec![2, 1]),
            Err(Error::InvalidOrder(1))
        );
    }

    #[test]
    fn r_coefficients_on_z5() {
        let z5 = FiniteAbelianGroup::cyclic(5).unwrap();
        // chi(1) = 2/5
        let chi = z5.character(&[2]);
        assert_eq!(z5.r_coeff(z5.element(&[1]), chi), 2);
        // chi(1) = 1/5 so chi(2) = 2/5
        let chi = z5.character(&[1]);
        assert_eq!(z5.eval(chi, z5.element(&[2])), Qz::new(2, 5));
        assert_eq!(z5.r_coeff(z5.element(&[2]), chi), 2);
    }

    #[test]
    fn r_coefficients_on_exponent_two() {
        let g = e2(3);
        for x in g.elements() {
            for chi in g.characters() {
                let r = g.r_coeff(x, chi);
                assert!(r <= 1);
                assert_eq!(r == 1, g.eval(chi, x) == Qz::new(1, 2));
            }
        }
    }

    #[test]
    fn epsilon_cases() {
        let g = e2(3);
        for x in g.elements() {
            for a in g.characters() {
                assert_eq!(g.epsilon(a, g.trivial_character(), x), 0);
                for b in g.characters() {
                    let both = g.eval(a, x) == Qz::new(1, 2) && g.eval(b, x) == Qz::new(1, 2);
                    assert_eq!(g.epsilon(a, b, x) == 1, both);
                    assert_eq!(g.epsilon(a, b, x), g.epsilon(b, a, x));
                }
            }
        }
        // Z/5 with r = 3 and r = 2 against o(g) = 5
        let z5 = FiniteAbelianGroup::cyclic(5).unwrap();
        let one = z5.element(&[1]);
        assert_eq!(z5.epsilon(z5.character(&[3]), z5.character(&[2]), one), 1);
        assert_eq!(z5.epsilon(z5.character(&[1]), z5.character(&[2]), one), 0);
    }

    #[test]
    fn kernels() {
        let g = e2(3);
        assert_eq!(g.kernel_of_character(Character(0)).order(), 8);
        let ker = g.kernel_of_character(Character(parse_bit_string("100").unwrap()));
        assert_eq!(ker.order(), 4);
        assert!(ker.elements().iter().all(|&h| h & 1 == 0));
        let e12 = GroupElement(parse_bit_string("110").unwrap());
        let dual_ker = g.kernel_of_element(e12);
        assert_eq!(dual_ker.order(), 4);
        assert!(dual_ker
            .elements()
            .iter()
            .all(|&c| (c & 1) ^ (c >> 1 & 1) == 0));
        let z12 = FiniteAbelianGroup::cyclic(12).unwrap();
        let chi = z12.character(&[3]);
        assert_eq!(
            z12.kernel_of_character(chi).order() as u64,
            12 / z12.character_order(chi)
        );
    }

    #[test]
    fn weights() {
        assert_eq!(weight(0), 0);
        let g = parse_bit_string("1101").unwrap();
        assert_eq!(partial_weight(g, 3, 4).unwrap(), 2);
        let g = parse_bit_string("11100").unwrap();
        assert_eq!(weight(g), 3);
        assert_eq!(partial_weight(g, 3, 5).unwrap(), 3);
        assert!(partial_weight(g, 6, 5).is_err());
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(subgroups(1).unwrap().len(), 2);
        assert_eq!(subgroups(2).unwrap().len(), 5);
        assert_eq!(subgroups(3).unwrap().len(), 16);
        assert_eq!(subgroups(4).unwrap().len(), 67);
        assert_eq!(subgroups(6).unwrap().len(), 2825);
        assert!(subgroups(7).is_err());
    }

    #[test]
    fn subgroup_count_matches_closure_of_subsets() {
        // Close every subset of (Z/2)^3 under addition and count distinct results.
        let mut found = BTreeSet::new();
        for mask in 0u32..1 << 8 {
            let gens: Vec<usize> = (0..8).filter(|i| mask >> i & 1 == 1).collect();
            let mut set: BTreeSet<usize> = BTreeSet::from([0]);
            loop {
                let extra: Vec<usize> = set
                    .iter()
                    .flat_map(|&a| gens.iter().map(move |&b| a ^ b))
                    .filter(|x| !set.contains(x))
                    .collect();
                if extra.is_empty() {
                    break;
                }
                set.extend(extra);
            }
            found.insert(set.into_iter().collect::<Vec<_>>());
        }
        assert_eq!(found.len(), 16);
        assert_eq!(subgroups(3).unwrap().len(), found.len());
    }

    #[test]
    fn general_subgroup_closure() {
        let g = FiniteAbelianGroup::new(vec![4, 6]).unwrap();
        let h = Subgroup::generated_by(&g, &[g.element(&[2, 3])]);
        assert_eq!(h.order(), 2);
        let h = Subgroup::generated_by(&g, &[g.element(&[1, 0]), g.element(&[0, 2])]);
        assert_eq!(h.order(), 12);
        assert_eq!(g.size() % h.order(), 0);
    }

    #[test]
    fn annihilator_dimension() {
        for h in subgroups(4).unwrap() {
            let perp = h.annihilator().unwrap();
            assert_eq!(h.order() * perp.order(), 16);
            assert_eq!(perp.annihilator().unwrap(), h);
        }
    }

    #[test]
    fn bit_strings_round_trip() {
        assert_eq!(bit_string(0b011, 3), "110");
        assert_eq!(parse_bit_string("110"), Some(0b011));
        assert_eq!(parse_bit_string("1x"), None);
    }
}
