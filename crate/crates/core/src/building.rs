//! Numeric building data of abelian covers of projective space.
//!
//! Line bundles and branch divisors on `P^n` are recorded by their degrees
//! only: `l[chi] = deg L_chi` for each character and `d[g] = deg D_g` for each
//! group element. Everything here is exact integer or rational arithmetic.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{bit_string, parity, Character, FiniteAbelianGroup, GroupElement, Subgroup};

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildingDataNumeric {
    /// Dimension `n` of the base `P^n`.
    pub base_dim: u32,
    pub group: FiniteAbelianGroup,
    /// `deg L_chi`, indexed by character.
    pub l: Vec<i64>,
    /// `deg D_g`, indexed by group element.
    pub d: Vec<i64>,
    /// When set, every nontrivial `L_chi` must have positive degree.
    #[serde(default = "default_connected")]
    pub connected: bool,
}

fn default_connected() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    LengthMismatch {
        expected: usize,
        l: usize,
        d: usize,
    },
    TrivialCharacterDegree(i64),
    IdentityBranchDegree(i64),
    NegativeLineBundle {
        chi: usize,
        value: i64,
    },
    NegativeBranch {
        g: usize,
        value: i64,
    },
    Disconnected {
        chi: usize,
    },
    CoverRelation {
        chi: usize,
        chi2: usize,
        lhs: i64,
        rhs: i64,
    },
}

impl BuildingDataNumeric {
    pub fn new(group: FiniteAbelianGroup, l: Vec<i64>, d: Vec<i64>) -> Self {
        BuildingDataNumeric {
            base_dim: 2,
            group,
            l,
            d,
            connected: true,
        }
    }

    /// Data on `(Z/2)^k` over the plane with `l` derived from `d`.
    pub fn from_branch_degrees(k: usize, d: Vec<i64>) -> Result<Self> {
        let group = FiniteAbelianGroup::elementary(k);
        let l = l_from_d(&group, &d)
            .integral()
            .ok_or_else(|| Error::InvalidData("branch degrees give non-integral L_chi".into()))?;
        Ok(Self::new(group, l, d))
    }

    pub fn with_base_dim(mut self, n: u32) -> Self {
        self.base_dim = n;
        self
    }

    pub fn disconnected(mut self) -> Self {
        self.connected = false;
        self
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    /// Total branch degree `d = sum_g d_g`.
    pub fn d_total(&self) -> i64 {
        self.d.iter().sum()
    }

    /// Every violated constraint; empty iff the data define a cover.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.group.size();
        let mut out = Vec::new();
        if self.l.len() != n || self.d.len() != n {
            out.push(Violation::LengthMismatch {
                expected: n,
                l: self.l.len(),
                d: self.d.len(),
            });
            return out;
        }
        if self.l[0] != 0 {
            out.push(Violation::TrivialCharacterDegree(self.l[0]));
        }
        if self.d[0] != 0 {
            out.push(Violation::IdentityBranchDegree(self.d[0]));
        }
        for (chi, &v) in self.l.iter().enumerate() {
            if v < 0 {
                out.push(Violation::NegativeLineBundle { chi, value: v });
            } else if self.connected && chi != 0 && v == 0 {
                out.push(Violation::Disconnected { chi });
            }
        }
        for (g, &v) in self.d.iter().enumerate() {
            if v < 0 {
                out.push(Violation::NegativeBranch { g, value: v });
            }
        }
        let group = &self.group;
        for a in group.characters() {
            for b in group.characters() {
                let sum = group.add_characters(a, b);
                let lhs = self.l[a.0] + self.l[b.0];
                let carry: i64 = if group.is_exponent_two() {
                    (1..n)
                        .filter(|&g| parity(a.0 & g) & parity(b.0 & g) == 1)
                        .map(|g| self.d[g])
                        .sum()
                } else {
                    group
                        .elements()
                        .map(|g| group.epsilon(a, b, g) as i64 * self.d[g.0])
                        .sum()
                };
                let rhs = self.l[sum.0] + carry;
                if lhs != rhs {
                    out.push(Violation::CoverRelation {
                        chi: a.0,
                        chi2: b.0,
                        lhs,
                        rhs,
                    });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

/// Values of a rational transform together with the indices where they fail to be integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transformed {
    pub values: Vec<Rational>,
    pub non_integral: Vec<usize>,
    pub negative: Vec<usize>,
}

impl Transformed {
    fn from_values(values: Vec<Rational>) -> Self {
        let non_integral = (0..values.len())
            .filter(|&i| !values[i].is_integer())
            .collect();
        let negative = (0..values.len())
            .filter(|&i| values[i] < Rational::from_integer(0))
            .collect();
        Transformed {
            values,
            non_integral,
            negative,
        }
    }

    /// The values as integers, if all are integral and nonnegative.
    pub fn integral(&self) -> Option<Vec<i64>> {
        (self.non_integral.is_empty() && self.negative.is_empty())
            .then(|| self.values.iter().map(|v| v.to_integer()).collect())
    }
}

/// `l_chi = sum_g (r_g^chi / o(g)) d_g` for every character.
pub fn l_from_d(group: &FiniteAbelianGroup, d: &[i64]) -> Transformed {
    let values = group
        .characters()
        .map(|chi| {
            group
                .elements()
                .filter(|&g| d[g.0] != 0)
                .map(|g| {
                    Rational::new(group.r_coeff(g, chi) as i64, group.element_order(g) as i64)
                        * d[g.0]
                })
                .sum()
        })
        .collect();
    Transformed::from_values(values)
}

/// In-place unnormalised Walsh-Hadamard transform:
/// `out[g] = sum_chi (-1)^{chi(g)} v[chi]`.
pub fn walsh_hadamard(v: &mut [i64]) {
    let n = v.len();
    debug_assert!(n.is_power_of_two());
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(2 * h) {
            for i in block..block + h {
                let (a, b) = (v[i], v[i + h]);
                v[i] = a + b;
                v[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// `d_g = (sum_{chi not in ker g} l_chi - sum_{chi in ker g} l_chi) / 2^{k-2}` for `g != 0`,
/// and `d_0 = 0`. Defined only for `(Z/2)^k`.
pub fn d_from_l(group: &FiniteAbelianGroup, l: &[i64]) -> Result<Transformed> {
    let k = group.require_exponent_two()?;
    if l.len() != group.size() {
        return Err(Error::LengthMismatch {
            expected: group.size(),
            got: l.len(),
        });
    }
    let mut w = l.to_vec();
    walsh_hadamard(&mut w);
    // d_g = -W(g) * 4 / 2^k
    let scale = 1i64 << k;
    let mut values: Vec<Rational> = w.iter().map(|&x| Rational::new(-4 * x, scale)).collect();
    values[0] = Rational::from_integer(0);
    Ok(Transformed::from_values(values))
}

/// Integer fast path of [`d_from_l`] writing into `out`; returns false on any
/// negative or non-integral value.
pub fn d_from_l_exact(k: usize, l: &[i64], out: &mut [i64]) -> bool {
    out.copy_from_slice(l);
    walsh_hadamard(out);
    out[0] = 0;
    if k >= 2 {
        let sh = k - 2;
        let mask = (1i64 << sh) - 1;
        for x in out.iter_mut().skip(1) {
            if *x > 0 || (-*x) & mask != 0 {
                return false;
            }
            *x = -*x >> sh;
        }
    } else {
        for x in out.iter_mut().skip(1) {
            if *x > 0 {
                return false;
            }
            *x *= -2;
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub label: String,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// The two sum identities for `l`: over all characters, and over `ker g` for each `g`.
pub fn check_sum_identities(bd: &BuildingDataNumeric) -> Vec<IdentityCheck> {
    let group = &bd.group;
    let size = group.size() as i64;
    let one = Rational::from_integer(1);
    let mut out = Vec::new();

    let lhs: i64 = bd.l.iter().sum();
    let rhs: Rational = group
        .elements()
        .map(|g| (one - Rational::new(1, group.element_order(g) as i64)) * bd.d[g.0])
        .sum::<Rational>()
        * Rational::new(size, 2);
    out.push(IdentityCheck {
        label: "sum over all characters".into(),
        lhs: Rational::from_integer(lhs),
        rhs,
    });

    for g in group.elements() {
        let ker = group.kernel_of_element(g);
        let lhs: i64 = ker.elements().iter().map(|&c| bd.l[c]).sum();
        let og = group.element_order(g) as i64;
        let rhs: Rational = group
            .elements()
            .map(|h| (one - Rational::new(1, group.restricted_order(h, &ker) as i64)) * bd.d[h.0])
            .sum::<Rational>()
            * Rational::new(size, 2 * og);
        out.push(IdentityCheck {
            label: format!("sum over ker of element {}", g.0),
            lhs: Rational::from_integer(lhs),
            rhs,
        });
    }
    out
}

/// `sum_{chi in H} r_g^chi = (|H| / 2) o(g) (1 - 1 / o(g|_H))` for a subgroup `H` of the dual.
pub fn character_sum_identity(
    group: &FiniteAbelianGroup,
    g: GroupElement,
    dual_sub: &Subgroup,
) -> IdentityCheck {
    let lhs: i64 = dual_sub
        .elements()
        .iter()
        .map(|&c| group.r_coeff(g, Character(c)) as i64)
        .sum();
    let o = group.element_order(g) as i64;
    let restricted = group.restricted_order(g, dual_sub) as i64;
    let rhs = Rational::new(dual_sub.order() as i64 * o, 2)
        * (Rational::from_integer(1) - Rational::new(1, restricted));
    IdentityCheck {
        label: format!("character sum, g = {}, |H| = {}", g.0, dual_sub.order()),
        lhs: Rational::from_integer(lhs),
        rhs,
    }
}

/// `sum_{g in ker chi} d_g = d - 2 l_chi` for every character, on `(Z/2)^k`.
pub fn kernel_branch_sums_hold(bd: &BuildingDataNumeric) -> Result<bool> {
    bd.group.require_exponent_two()?;
    let total = bd.d_total();
    Ok(bd.group.characters().all(|chi| {
        let ker: i64 = bd
            .group
            .elements()
            .filter(|g| parity(chi.0 & g.0) == 0)
            .map(|g| bd.d[g.0])
            .sum();
        ker == total - 2 * bd.l[chi.0]
    }))
}

/// `h^0(P^n, O(m))`.
pub fn h0_projective(n: u32, m: i64) -> i64 {
    if m < 0 {
        return 0;
    }
    // C(m + n, n)
    (1..=n as i64).fold(1i64, |acc, i| acc * (m + i) / i)
}

/// Geometric genus: `sum_chi h^0(O(l_chi - n - 1))`.
pub fn pg(bd: &BuildingDataNumeric) -> i64 {
    let n = bd.base_dim;
    bd.l.iter()
        .map(|&v| h0_projective(n, v - n as i64 - 1))
        .sum()
}

/// Always 0: line bundles on projective space have no intermediate cohomology.
pub fn irregularity(_bd: &BuildingDataNumeric) -> i64 {
    0
}

pub fn chi_o(bd: &BuildingDataNumeric) -> i64 {
    1 - irregularity(bd) + pg(bd)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum KSign {
    AntiAmple,
    NumericallyTrivial,
    Positive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalSquare {
    pub k2: i64,
    /// `K` is numerically the pull-back of `c` times a line.
    pub c: Rational,
    pub sign: KSign,
}

fn require_plane(bd: &BuildingDataNumeric) -> Result<usize> {
    let k = bd.group.require_exponent_two()?;
    if bd.base_dim != 2 {
        return Err(Error::BaseNotPlane(bd.base_dim));
    }
    Ok(k)
}

/// Canonical pull-back coefficient `c` for a `(Z/2)^k` cover of the plane with total branch degree `d`.
pub fn canonical_square_from_total(k: usize, d_total: i64) -> Result<CanonicalSquare> {
    let c = Rational::new(2 * d_total - 12, 4);
    let k2 = c * c * Rational::from_integer(1i64 << k);
    if !k2.is_integer() {
        return Err(Error::Internal(format!(
            "K^2 = {k2} is not integral (k = {k}, d = {d_total})"
        )));
    }
    let sign = match c.numer().signum() {
        -1 => KSign::AntiAmple,
        0 => KSign::NumericallyTrivial,
        _ => KSign::Positive,
    };
    Ok(CanonicalSquare {
        k2: k2.to_integer(),
        c,
        sign,
    })
}

/// `K^2 = 2^k (-3 + d/2)^2`, with the sign of the coefficient kept separately.
pub fn k_squared(bd: &BuildingDataNumeric) -> Result<CanonicalSquare> {
    let k = require_plane(bd)?;
    canonical_square_from_total(k, bd.d_total())
}

/// Sets of one or two branch components whose common points are base points
/// of `|K|`: every character with `l_chi >= 3` must have a member of the set in its kernel.
pub fn hitting_sets(bd: &BuildingDataNumeric) -> Result<Vec<Vec<GroupElement>>> {
    require_plane(bd)?;
    let p = pg(bd);
    if p == 0 {
        return Err(Error::EmptyCanonicalSystem);
    }
    let special: Vec<usize> = (0..bd.l.len()).filter(|&c| bd.l[c] >= 3).collect();
    let support: Vec<usize> = (1..bd.d.len()).filter(|&g| bd.d[g] > 0).collect();
    let hits = |set: &[usize]| {
        special
            .iter()
            .all(|&chi| set.iter().any(|&g| parity(chi & g) == 0))
    };
    let singles: Vec<usize> = support.iter().copied().filter(|&g| hits(&[g])).collect();
    let mut out: Vec<Vec<GroupElement>> = singles.iter().map(|&g| vec![GroupElement(g)]).collect();
    for (i, &a) in support.iter().enumerate() {
        for &b in &support[i + 1..] {
            if singles.contains(&a) || singles.contains(&b) {
                continue;
            }
            if hits(&[a, b]) {
                out.push(vec![GroupElement(a), GroupElement(b)]);
            }
        }
    }
    Ok(out)
}

pub fn is_bpf(bd: &BuildingDataNumeric) -> Result<bool> {
    Ok(hitting_sets(bd)?.is_empty())
}

/// Number of base points of `|K|` upstairs, assuming transversal branch curves.
pub fn base_point_count(bd: &BuildingDataNumeric) -> Result<i64> {
    let k = bd.rank();
    let sets = hitting_sets(bd)?;
    if let Some(single) = sets.iter().find(|s| s.len() == 1) {
        return Err(Error::NonIsolatedBaseLocus(bit_string(single[0].0, k)));
    }
    Ok(sets
        .iter()
        .map(|pair| (1i64 << (k - 2)) * bd.d[pair[0].0] * bd.d[pair[1].0])
        .sum())
}

/// Degree of the canonical map onto the plane, `K^2` minus the base points.
pub fn canonical_map_degree(bd: &BuildingDataNumeric) -> Result<i64> {
    let p = pg(bd);
    if p != 3 {
        return Err(Error::GenusNotThree(p));
    }
    Ok(k_squared(bd)?.k2 - base_point_count(bd)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub p_g: i64,
    pub q: i64,
    pub chi_o: i64,
    pub k2: i64,
    pub c: Rational,
    pub k_sign: KSign,
    pub base_points: i64,
    pub deg_canonical: Option<i64>,
    pub nodes: i64,
}

/// Invariants of the (smooth) total space of a cover of the plane.
pub fn surface_invariants(bd: &BuildingDataNumeric) -> Result<SurfaceInvariants> {
    let sq = k_squared(bd)?;
    let p = pg(bd);
    let base_points = if p >= 1 { base_point_count(bd)? } else { 0 };
    let deg_canonical = if p == 3 {
        Some(sq.k2 - base_points)
    } else {
        None
    };
    Ok(SurfaceInvariants {
        p_g: p,
        q: irregularity(bd),
        chi_o: chi_o(bd),
        k2: sq.k2,
        c: sq.c,
        k_sign: sq.sign,
        base_points,
        deg_canonical,
        nodes: 0,
    })
}

/// Characters of `(Z/2)^k` used as a convenience by callers.
pub fn character(chi: usize) -> Character {
    Character(chi)
}
