use std::collections::BTreeSet;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::permgrp::{PermGroup, Permutation};

/// Which of the two largest normal subgroups `o_lower` returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PKind {
    /// `O_p(G)`, the largest normal p-subgroup.
    P,
    /// `O_{p'}(G)`, the largest normal subgroup of order coprime to p.
    PPrime,
}

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Classes of `g` whose representatives lie in `n`.
pub fn class_mask(g: &PermGroup, n: &PermGroup, limits: &Limits) -> Result<Vec<bool>> {
    let cd = g.class_data(limits.element_cap)?;
    Ok(cd.representatives.iter().map(|r| n.contains(r)).collect())
}

fn closure_with(g: &PermGroup, n: &PermGroup, x: &Permutation) -> Result<PermGroup> {
    let mut seeds = n.generators().to_vec();
    seeds.push(x.clone());
    g.normal_closure(&seeds)
}

/// All normal subgroups, found by closing unions of classes; sorted by order
/// and then by class mask.
pub fn normal_subgroups(g: &PermGroup, limits: &Limits) -> Result<Vec<PermGroup>> {
    let cd = g.class_data(limits.element_cap)?;
    if cd.len() > limits.normal_class_cap {
        return Err(Error::ClassCountExceeded {
            count: cd.len(),
            cap: limits.normal_class_cap,
        });
    }
    let trivial = PermGroup::trivial(g.degree());
    let mut found: Vec<(Vec<bool>, PermGroup)> = vec![(class_mask(g, &trivial, limits)?, trivial)];
    let mut masks: BTreeSet<Vec<bool>> = found.iter().map(|(m, _)| m.clone()).collect();
    let mut i = 0;
    while i < found.len() {
        let (mask, n) = found[i].clone();
        for (c, rep) in cd.representatives.iter().enumerate() {
            if mask[c] {
                continue;
            }
            let m = closure_with(g, &n, rep)?;
            let mm = class_mask(g, &m, limits)?;
            if masks.insert(mm.clone()) {
                found.push((mm, m));
            }
        }
        i += 1;
    }
    found.sort_by(|a, b| a.1.order().cmp(&b.1.order()).then_with(|| b.0.cmp(&a.0)));
    Ok(found.into_iter().map(|(_, n)| n).collect())
}

/// `O^{p'}(G)`: normal closure of the p-elements.
pub fn o_upper_pprime(g: &PermGroup, p: u64, limits: &Limits) -> Result<PermGroup> {
    let cd = g.class_data(limits.element_cap)?;
    let seeds: Vec<Permutation> = cd
        .representatives
        .iter()
        .zip(&cd.element_orders)
        .filter(|(_, &o)| o > 1 && is_p_power(o, p))
        .map(|(r, _)| r.clone())
        .collect();
    g.normal_closure(&seeds)
}

/// `O_p(G)` or `O_{p'}(G)`: normal closures of elements of the right kind are
/// joined while the result stays of the right kind, until nothing more fits.
pub fn o_lower(g: &PermGroup, p: u64, which: PKind, limits: &Limits) -> Result<PermGroup> {
    let cd = g.class_data(limits.element_cap)?;
    let fits = |n: u64| match which {
        PKind::P => is_p_power(n, p),
        PKind::PPrime => !n.is_multiple_of(p),
    };
    let mut n = PermGroup::trivial(g.degree());
    loop {
        let mut grew = false;
        for (rep, &o) in cd.representatives.iter().zip(&cd.element_orders) {
            if o == 1 || !fits(o) || n.contains(rep) {
                continue;
            }
            let m = closure_with(g, &n, rep)?;
            if fits(m.order()) {
                n = m;
                grew = true;
            }
        }
        if !grew {
            return Ok(n);
        }
    }
}

/// A chief series `1 = N_0 < N_1 < ... < N_r = G`: each step adds the
/// smallest normal closure of a class outside the previous term.
pub fn chief_series(g: &PermGroup, limits: &Limits) -> Result<Vec<PermGroup>> {
    let cd = g.class_data(limits.element_cap)?;
    let mut series = vec![PermGroup::trivial(g.degree())];
    loop {
        let n = series.last().unwrap();
        if n.order() == g.order() {
            return Ok(series);
        }
        let mut best: Option<PermGroup> = None;
        for rep in &cd.representatives {
            if n.contains(rep) {
                continue;
            }
            let m = closure_with(g, n, rep)?;
            if best.as_ref().is_none_or(|b| m.order() < b.order()) {
                best = Some(m);
            }
        }
        series.push(best.expect("a class outside a proper subgroup exists"));
    }
}

/// True iff every chief factor, hence every composition factor, is a
/// p-group or a p'-group.
pub fn is_p_solvable(g: &PermGroup, p: u64, limits: &Limits) -> Result<bool> {
    if !g.order().is_multiple_of(p) {
        return Ok(true);
    }
    let series = chief_series(g, limits)?;
    Ok(series.windows(2).all(|w| {
        let f = w[1].order() / w[0].order();
        is_p_power(f, p) || f.gcd(&p) == 1
    }))
}

/// True iff `G` is solvable (every chief factor has prime-power order).
pub fn is_solvable(g: &PermGroup, limits: &Limits) -> Result<bool> {
    let series = chief_series(g, limits)?;
    Ok(series.windows(2).all(|w| {
        let f = w[1].order() / w[0].order();
        let q = (2..=f).find(|d| f % d == 0).unwrap_or(1);
        is_p_power(f, q)
    }))
}

/// `|G:Z(G)|`.
pub fn central_index(g: &PermGroup, limits: &Limits) -> Result<u64> {
    Ok(g.order() / g.center(limits.element_cap)?.order())
}
