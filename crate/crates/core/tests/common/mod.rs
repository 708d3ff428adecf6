//! Independent oracles shared by the integration tests.

use num_integer::Integer;

use kdouble::building::{l_from_d, BuildingDataNumeric};
use kdouble::FiniteAbelianGroup;

/// `chi(g)` as a fraction `num / lcm` computed from mixed-radix digits.
pub fn value(group: &FiniteAbelianGroup, chi: usize, g: usize) -> (u64, u64) {
    let den = group.orders().iter().fold(1u64, |a, &n| a.lcm(&(n as u64)));
    let num: u64 = group
        .digits(chi)
        .iter()
        .zip(group.digits(g))
        .zip(group.orders())
        .map(|((&c, x), &n)| c as u64 * x as u64 * (den / n as u64))
        .sum();
    (num % den, den)
}

pub fn order_of(group: &FiniteAbelianGroup, g: usize) -> u64 {
    group
        .digits(g)
        .iter()
        .zip(group.orders())
        .map(|(&x, &n)| n as u64 / (x as u64).gcd(&(n as u64)))
        .fold(1, |a, o| a.lcm(&o))
}

/// Valid exponent-2 data: odd branch degrees must sum to zero in `G`.
pub fn valid_data(k: usize, mut d: Vec<i64>) -> BuildingDataNumeric {
    d[0] = 0;
    let odd = (1..d.len())
        .filter(|&g| d[g] % 2 != 0)
        .fold(0, |a, g| a ^ g);
    if odd != 0 {
        d[odd] += 1;
    }
    let group = FiniteAbelianGroup::elementary(k);
    let l = l_from_d(&group, &d).integral().expect("parity fixed");
    BuildingDataNumeric::new(group, l, d)
}

/// Twice both sides of `sum_{chi in H} r_g^chi = (|H| / 2) o(g) (1 - 1 / o(g|_H))`.
pub fn character_sum_sides(
    group: &FiniteAbelianGroup,
    g: usize,
    sub: &kdouble::Subgroup,
) -> (u64, u64) {
    let o = order_of(group, g);
    let lhs: u64 = sub
        .elements()
        .iter()
        .map(|&c| {
            let (num, den) = value(group, c, g);
            2 * o * num / den
        })
        .sum();
    let restricted = sub.elements().iter().fold(1u64, |acc, &c| {
        let (num, den) = value(group, c, g);
        acc.lcm(&(den / num.gcd(&den)))
    });
    (lhs, sub.order() as u64 * o * (restricted - 1) / restricted)
}
