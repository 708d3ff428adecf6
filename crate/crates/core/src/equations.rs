//! Weighted projective models of `(Z/2)^k`-covers of the plane.
//!
//! The cover embeds in `P(1^3, l_chi ...)` with one variable `y_chi` per
//! nonzero character, cut out by `y_r y_s = y_{r+s} prod f_g` where the
//! product runs over the `g` on which both `r` and `s` are odd. Branch
//! polynomials `f_g` are opaque symbols of degree `d_g`.
//!
//! [`eliminate`] removes every variable that some `f`-free relation expresses
//! as a monomial in the others, then prunes the relations that became
//! redundant.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::building::BuildingDataNumeric;
use crate::error::{Error, Result};
use crate::group::{bit_string, parity};
use crate::json::{self, OutputFormat};

/// A monomial in the `y` variables (indexed by character) and branch symbols
/// `f` (indexed by group element), as sorted multisets.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub ys: Vec<usize>,
    pub fs: Vec<usize>,
}

impl Monomial {
    pub fn new(mut ys: Vec<usize>, mut fs: Vec<usize>) -> Self {
        ys.sort_unstable();
        fs.sort_unstable();
        Monomial { ys, fs }
    }

    pub fn y(chi: usize) -> Self {
        Monomial::new(vec![chi], Vec::new())
    }

    pub fn is_one(&self) -> bool {
        self.ys.is_empty() && self.fs.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut ys = self.ys.clone();
        ys.extend_from_slice(&other.ys);
        let mut fs = self.fs.clone();
        fs.extend_from_slice(&other.fs);
        Monomial::new(ys, fs)
    }

    pub fn contains_y(&self, chi: usize) -> bool {
        self.ys.binary_search(&chi).is_ok()
    }

    /// Replace every occurrence of `y_chi` by `by`.
    pub fn substitute(&self, chi: usize, by: &Monomial) -> Monomial {
        let mut out = Monomial::new(
            self.ys.iter().copied().filter(|&c| c != chi).collect(),
            self.fs.clone(),
        );
        for _ in self.ys.iter().filter(|&&c| c == chi) {
            out = out.mul(by);
        }
        out
    }

    pub fn weight(&self, l: &[i64], d: &[i64]) -> i64 {
        self.ys.iter().map(|&c| l[c]).sum::<i64>() + self.fs.iter().map(|&g| d[g]).sum::<i64>()
    }

    /// `self / other` when `other` divides `self`.
    fn divide(&self, other: &Monomial) -> Option<Monomial> {
        Some(Monomial {
            ys: multiset_difference(&self.ys, &other.ys)?,
            fs: multiset_difference(&self.fs, &other.fs)?,
        })
    }

    fn render(&self, k: usize, latex: bool) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut push = |prefix: &str, items: &[usize]| {
            let mut i = 0;
            while i < items.len() {
                let j = items[i..].iter().take_while(|&&x| x == items[i]).count();
                let name = if latex {
                    format!("{prefix}_{{{}}}", bit_string(items[i], k))
                } else {
                    format!("{prefix}{}", bit_string(items[i], k))
                };
                parts.push(match (j, latex) {
                    (1, _) => name,
                    (_, true) => format!("{name}^{{{j}}}"),
                    (_, false) => format!("{name}^{j}"),
                });
                i += j;
            }
        };
        push("y", &self.ys);
        push("f", &self.fs);
        parts.join(if latex { " " } else { "*" })
    }
}

fn multiset_difference(a: &[usize], b: &[usize]) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(a.len());
    let mut j = 0;
    for &x in a {
        if j < b.len() && b[j] == x {
            j += 1;
        } else if j < b.len() && b[j] < x {
            return None;
        } else {
            out.push(x);
        }
    }
    (j == b.len()).then_some(out)
}

fn multiset_intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MonomialEquation {
    pub lhs: Monomial,
    pub rhs: Monomial,
}

impl MonomialEquation {
    pub fn is_tautology(&self) -> bool {
        self.lhs == self.rhs
    }

    fn swapped(&self) -> MonomialEquation {
        MonomialEquation {
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
        }
    }

    /// Orientation-free key.
    fn key(&self) -> (Monomial, Monomial) {
        if self.lhs <= self.rhs {
            (self.lhs.clone(), self.rhs.clone())
        } else {
            (self.rhs.clone(), self.lhs.clone())
        }
    }

    fn substitute(&self, chi: usize, by: &Monomial) -> MonomialEquation {
        MonomialEquation {
            lhs: self.lhs.substitute(chi, by),
            rhs: self.rhs.substitute(chi, by),
        }
    }

    fn cancel_common_y(&self) -> MonomialEquation {
        let common = multiset_intersection(&self.lhs.ys, &self.rhs.ys);
        let strip = |m: &Monomial| Monomial {
            ys: multiset_difference(&m.ys, &common).expect("common factor divides"),
            fs: m.fs.clone(),
        };
        MonomialEquation {
            lhs: strip(&self.lhs),
            rhs: strip(&self.rhs),
        }
    }

    fn degree(&self) -> usize {
        self.lhs.ys.len() + self.lhs.fs.len() + self.rhs.ys.len() + self.rhs.fs.len()
    }

    pub fn render(&self, k: usize, latex: bool) -> String {
        let eq = if latex { " &= " } else { " = " };
        format!(
            "{}{eq}{}",
            self.lhs.render(k, latex),
            self.rhs.render(k, latex)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedModel {
    pub k: usize,
    /// Number of weight-one base coordinates `x_0, ..., x_n`.
    pub base_coordinates: usize,
    pub l: Vec<i64>,
    pub d: Vec<i64>,
    /// Characters whose variable `y_chi` is still present, increasing.
    pub variables: Vec<usize>,
    pub equations: Vec<MonomialEquation>,
    /// Eliminated variables with the monomial that replaced them, in order.
    pub eliminated: Vec<(usize, Monomial)>,
}

impl WeightedModel {
    /// Sorted weights of the ambient weighted projective space.
    pub fn ambient_weights(&self) -> Vec<i64> {
        let mut w: Vec<i64> = vec![1; self.base_coordinates];
        w.extend(self.variables.iter().map(|&c| self.l[c]));
        w.sort_unstable();
        w
    }

    /// Ambient space as `P(1^3, 2^2)`.
    pub fn ambient_name(&self) -> String {
        let w = self.ambient_weights();
        let mut parts = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let j = w[i..].iter().take_while(|&&x| x == w[i]).count();
            parts.push(if j == 1 {
                w[i].to_string()
            } else {
                format!("{}^{}", w[i], j)
            });
            i += j;
        }
        format!("P({})", parts.join(","))
    }

    pub fn weight(&self, m: &Monomial) -> i64 {
        m.weight(&self.l, &self.d)
    }

    fn empty(k: usize) -> Self {
        WeightedModel {
            k,
            base_coordinates: 3,
            l: vec![0; 1 << k],
            d: vec![0; 1 << k],
            variables: Vec::new(),
            equations: Vec::new(),
            eliminated: Vec::new(),
        }
    }
}

/// The relations `y_r y_s = y_{r+s} prod f_g` for every unordered pair of nonzero characters.
pub fn build_model(bd: &BuildingDataNumeric) -> Result<WeightedModel> {
    let k = bd.group.require_exponent_two()?;
    let n = bd.l.len();
    let mut equations = Vec::with_capacity((n - 1) * n / 2);
    for r in 1..n {
        for s in r..n {
            let t = r ^ s;
            let fs: Vec<usize> = (1..n)
                .filter(|&g| bd.d[g] > 0 && parity(r & g) == 1 && parity(s & g) == 1)
                .collect();
            let ys = if t == 0 { Vec::new() } else { vec![t] };
            equations.push(MonomialEquation {
                lhs: Monomial::new(vec![r, s], Vec::new()),
                rhs: Monomial::new(ys, fs),
            });
        }
    }
    Ok(WeightedModel {
        k,
        base_coordinates: bd.base_dim as usize + 1,
        l: bd.l.clone(),
        d: bd.d.clone(),
        variables: (1..n).collect(),
        equations,
        eliminated: Vec::new(),
    })
}

/// Every equation has equal weight on both sides.
pub fn check_homogeneous(model: &WeightedModel) -> bool {
    model
        .equations
        .iter()
        .all(|e| model.weight(&e.lhs) == model.weight(&e.rhs))
}

/// [`eliminate_with_order`] with variables tried in increasing character order.
pub fn eliminate(model: &WeightedModel) -> WeightedModel {
    let order = model.variables.clone();
    eliminate_with_order(model, &order)
}

/// Repeatedly pick the first variable in `order` that some `f`-free relation
/// sets equal to a monomial not containing it, substitute, and normalise.
pub fn eliminate_with_order(model: &WeightedModel, order: &[usize]) -> WeightedModel {
    let mut out = model.clone();
    out.equations = normalise(&out.equations);
    loop {
        let Some((chi, by)) = order
            .iter()
            .filter(|c| out.variables.contains(c))
            .find_map(|&c| defining_monomial(&out.equations, c).map(|m| (c, m)))
        else {
            break;
        };
        out.variables.retain(|&c| c != chi);
        out.equations = out
            .equations
            .iter()
            .map(|e| e.substitute(chi, &by))
            .collect();
        out.equations = normalise(&out.equations);
        out.eliminated.push((chi, by));
    }
    out.equations = prune_products(&out.equations);
    out
}

fn defining_monomial(equations: &[MonomialEquation], chi: usize) -> Option<Monomial> {
    let single = Monomial::y(chi);
    equations.iter().find_map(|e| {
        if !e.lhs.fs.is_empty() || !e.rhs.fs.is_empty() {
            return None;
        }
        if e.rhs == single && !e.lhs.contains_y(chi) {
            Some(e.lhs.clone())
        } else if e.lhs == single && !e.rhs.contains_y(chi) {
            Some(e.rhs.clone())
        } else {
            None
        }
    })
}

// Cancel common y-factors, orient, drop tautologies and duplicates, sort.
fn normalise(equations: &[MonomialEquation]) -> Vec<MonomialEquation> {
    let set: BTreeSet<(Monomial, Monomial)> = equations
        .iter()
        .map(MonomialEquation::cancel_common_y)
        .filter(|e| !e.is_tautology())
        .map(|e| {
            let e = orient(&e);
            (e.lhs, e.rhs)
        })
        .collect();
    set.into_iter()
        .map(|(lhs, rhs)| MonomialEquation { lhs, rhs })
        .collect()
}

// Put the side with more y-variables (then the larger one) on the left.
fn orient(e: &MonomialEquation) -> MonomialEquation {
    let rank = |m: &Monomial| (m.fs.is_empty(), m.ys.len(), std::cmp::Reverse(m.ys.clone()));
    if rank(&e.lhs) >= rank(&e.rhs) {
        e.clone()
    } else {
        e.swapped()
    }
}

const PRODUCT_DEPTH: usize = 3;

// Drop equations that follow from strictly smaller ones, largest first.
fn prune_products(equations: &[MonomialEquation]) -> Vec<MonomialEquation> {
    let mut order: Vec<usize> = (0..equations.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(equations[i].degree()));
    let mut alive = vec![true; equations.len()];
    for &i in &order {
        let target = &equations[i];
        let smaller: Vec<&MonomialEquation> = equations
            .iter()
            .enumerate()
            .filter(|(j, e)| alive[*j] && *j != i && e.degree() < target.degree())
            .map(|(_, e)| e)
            .collect();
        if implied_by_products(target, &smaller, PRODUCT_DEPTH) {
            alive[i] = false;
        }
    }
    equations
        .iter()
        .zip(alive)
        .filter(|(_, a)| *a)
        .map(|(e, _)| e.clone())
        .collect()
}

/// `target` equals a product of at most `depth` equations from `pool`, each
/// used in either orientation, once common `y`-factors are cancelled.
/// Branch symbols never cancel, so every factor's `f`-part must divide the target's.
pub fn implied_by_products(
    target: &MonomialEquation,
    pool: &[&MonomialEquation],
    depth: usize,
) -> bool {
    let goal = target.cancel_common_y();
    if goal.is_tautology() {
        return true;
    }
    let goal_key = goal.key();
    [goal.clone(), goal.swapped()].iter().any(|t| {
        let factors: Vec<MonomialEquation> = pool
            .iter()
            .flat_map(|e| [(*e).clone(), e.swapped()])
            .filter(|f| {
                multiset_difference(&t.lhs.fs, &f.lhs.fs).is_some()
                    && multiset_difference(&t.rhs.fs, &f.rhs.fs).is_some()
            })
            .collect();
        let start = MonomialEquation {
            lhs: Monomial::default(),
            rhs: Monomial::default(),
        };
        search_products(&start, &factors, 0, depth, t, &goal_key)
    })
}

fn search_products(
    acc: &MonomialEquation,
    factors: &[MonomialEquation],
    from: usize,
    depth: usize,
    target: &MonomialEquation,
    goal_key: &(Monomial, Monomial),
) -> bool {
    if depth == 0 {
        return false;
    }
    (from..factors.len()).any(|i| {
        let f = &factors[i];
        let next = MonomialEquation {
            lhs: acc.lhs.mul(&f.lhs),
            rhs: acc.rhs.mul(&f.rhs),
        };
        if multiset_difference(&target.lhs.fs, &next.lhs.fs).is_none()
            || multiset_difference(&target.rhs.fs, &next.rhs.fs).is_none()
        {
            return false;
        }
        let reduced = next.cancel_common_y();
        (!reduced.is_tautology() && reduced.key() == *goal_key)
            || search_products(&next, factors, i, depth - 1, target, goal_key)
    })
}

/// Substitute the eliminated variables back into an equation of the original model.
pub fn express_in_surviving(model: &WeightedModel, e: &MonomialEquation) -> MonomialEquation {
    model
        .eliminated
        .iter()
        .fold(e.clone(), |acc, (chi, by)| acc.substitute(*chi, by))
        .cancel_common_y()
}

/// Each relation of `original`, rewritten in the surviving variables, is a
/// tautology or a product of relations of `reduced`.
pub fn reduction_is_faithful(original: &WeightedModel, reduced: &WeightedModel) -> bool {
    let pool: Vec<&MonomialEquation> = reduced.equations.iter().collect();
    original.equations.iter().all(|e| {
        let r = express_in_surviving(reduced, e);
        r.is_tautology() || implied_by_products(&r, &pool, PRODUCT_DEPTH)
    })
}

/// A symmetric `3 x 3` matrix of rank at most one, whose `2 x 2` minors are equations of a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankOneBlock {
    pub entries: [[Monomial; 3]; 3],
    pub minors: Vec<MonomialEquation>,
}

/// Best-effort search for blocks
/// `[[A, y_r, y_q], [y_r, B, y_p], [y_q, y_p, C]]` all of whose minors are in the model.
pub fn rank_one_blocks(model: &WeightedModel) -> Vec<RankOneBlock> {
    let keys: BTreeSet<(Monomial, Monomial)> = model.equations.iter().map(|e| e.key()).collect();
    let has = |a: &Monomial, b: &Monomial| {
        let e = MonomialEquation {
            lhs: a.clone(),
            rhs: b.clone(),
        };
        keys.contains(&e.key())
    };
    let square_of = |chi: usize| -> Option<Monomial> {
        let sq = Monomial::new(vec![chi, chi], Vec::new());
        model.equations.iter().find_map(|e| {
            if e.lhs == sq {
                Some(e.rhs.clone())
            } else if e.rhs == sq {
                Some(e.lhs.clone())
            } else {
                None
            }
        })
    };
    let mut used: BTreeSet<(Monomial, Monomial)> = BTreeSet::new();
    let mut blocks = Vec::new();
    let vars = &model.variables;
    for (a, &p) in vars.iter().enumerate() {
        for (b, &q) in vars.iter().enumerate().skip(a + 1) {
            for &r in &vars[b + 1..] {
                let (Some(sp), Some(sq), Some(sr)) = (square_of(p), square_of(q), square_of(r))
                else {
                    continue;
                };
                // diagonal entries: q r = A p, p r = B q, p q = C r
                let diag = |x: usize, y: usize, z: usize| -> Option<Monomial> {
                    let prod = Monomial::new(vec![x, y], Vec::new());
                    model.equations.iter().find_map(|e| {
                        let (lhs, rhs) = if e.lhs == prod {
                            (&e.lhs, &e.rhs)
                        } else if e.rhs == prod {
                            (&e.rhs, &e.lhs)
                        } else {
                            return None;
                        };
                        let _ = lhs;
                        rhs.divide(&Monomial::y(z))
                    })
                };
                let (Some(ma), Some(mb), Some(mc)) = (diag(q, r, p), diag(p, r, q), diag(p, q, r))
                else {
                    continue;
                };
                let (yp, yq, yr) = (Monomial::y(p), Monomial::y(q), Monomial::y(r));
                let minors = vec![
                    (yp.mul(&yp), mb.mul(&mc)),
                    (yq.mul(&yq), ma.mul(&mc)),
                    (yr.mul(&yr), ma.mul(&mb)),
                    (yq.mul(&yr), ma.mul(&yp)),
                    (yp.mul(&yr), mb.mul(&yq)),
                    (yp.mul(&yq), mc.mul(&yr)),
                ];
                let squares_agree = sp == mb.mul(&mc) && sq == ma.mul(&mc) && sr == ma.mul(&mb);
                if !squares_agree || !minors.iter().all(|(x, y)| has(x, y)) {
                    continue;
                }
                let minors: Vec<MonomialEquation> = minors
                    .into_iter()
                    .map(|(lhs, rhs)| MonomialEquation { lhs, rhs })
                    .collect();
                if minors.iter().any(|m| used.contains(&m.key())) {
                    continue;
                }
                used.extend(minors.iter().map(MonomialEquation::key));
                blocks.push(RankOneBlock {
                    entries: [
                        [ma.clone(), yr.clone(), yq.clone()],
                        [yr, mb, yp.clone()],
                        [yq, yp, mc],
                    ],
                    minors,
                });
            }
        }
    }
    blocks
}

pub fn render(model: &WeightedModel, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Text => Ok(render_text(model)),
        OutputFormat::Latex => Ok(render_latex(model)),
        OutputFormat::Json => json::to_json("weighted_model", model),
    }
}

pub fn render_text(model: &WeightedModel) -> String {
    let mut out = String::new();
    for e in &model.equations {
        let _ = writeln!(out, "{}", e.render(model.k, false));
    }
    out
}

pub fn render_latex(model: &WeightedModel) -> String {
    if model.equations.is_empty() {
        return String::new();
    }
    let blocks = rank_one_blocks(model);
    let in_block: BTreeSet<(Monomial, Monomial)> = blocks
        .iter()
        .flat_map(|b| b.minors.iter().map(MonomialEquation::key))
        .collect();
    let mut lines: Vec<String> = Vec::new();
    for b in &blocks {
        let rows: Vec<String> = b
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|m| m.render(model.k, true))
                    .collect::<Vec<_>>()
                    .join(" & ")
            })
            .collect();
        lines.push(format!(
            "\\operatorname{{rank}} &\\begin{{pmatrix}} {} \\end{{pmatrix}} \\le 1",
            rows.join(" \\\\ ")
        ));
    }
    for e in &model.equations {
        if !in_block.contains(&e.key()) {
            lines.push(e.render(model.k, true));
        }
    }
    format!(
        "\\begin{{align*}}\n{}\n\\end{{align*}}\n",
        lines.join(" \\\\\n")
    )
}

/// The model of the trivial (split) cover of rank `k`.
pub fn split_model(k: usize) -> WeightedModel {
    let mut m = WeightedModel::empty(k);
    let n = 1usize << k;
    m.variables = (1..n).collect();
    for r in 1..n {
        for s in r..n {
            let t = r ^ s;
            m.equations.push(MonomialEquation {
                lhs: Monomial::new(vec![r, s], Vec::new()),
                rhs: Monomial::new(if t == 0 { vec![] } else { vec![t] }, Vec::new()),
            });
        }
    }
    m
}

/// Parse-free check used by callers that only have a format name.
pub fn render_named(model: &WeightedModel, format: &str) -> Result<String> {
    let f: OutputFormat = format
        .parse()
        .map_err(|_| Error::UnknownFormat(format.to_string()))?;
    render(model, f)
}
