//! Enumeration of du Val baskets and of K3 hypersurfaces `X_d ⊂ P(a_0..a_3)`
//! with `d = a_0 + a_1 + a_2 + a_3`.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::ade::AdeType;
use crate::basket::Basket;
use crate::bsy::{sigma_k3, FLETCHER_BOUND};
use crate::catalog::CatalogRow;
use crate::wps::{self, HypersurfaceFamily, Weights};

/// Default upper bound on the largest weight.
pub const DEFAULT_MAX_WEIGHT: u64 = 40;
/// Increment used by [`stabilize`].
pub const STABILIZE_STEP: u64 = 10;

/// All baskets with `Σ d_i ≤ max_total_d` and their signatures, ordered by
/// `Σ d_i` and then by basket. The bound is capped at [`FLETCHER_BOUND`].
pub fn enumerate_baskets(max_total_d: u64) -> Vec<(Basket, i64)> {
    let max_total_d = max_total_d.min(FLETCHER_BOUND);
    let types = AdeType::all_up_to(max_total_d as u32);
    let mut out = Vec::new();
    let mut current = Vec::new();
    extend_baskets(&types, 0, max_total_d, &mut current, &mut out);
    let mut out: Vec<(Basket, i64)> = out
        .into_iter()
        .map(|b| {
            let sigma = sigma_k3(&b, 0).expect("enumerated basket respects the bound");
            (b, sigma)
        })
        .collect();
    out.sort_by(|(a, _), (b, _)| a.total_d().cmp(&b.total_d()).then_with(|| a.cmp(b)));
    out
}

fn extend_baskets(
    types: &[AdeType],
    start: usize,
    budget: u64,
    current: &mut Vec<AdeType>,
    out: &mut Vec<Basket>,
) {
    out.push(current.iter().copied().collect());
    for (i, t) in types.iter().enumerate().skip(start) {
        let cost = u64::from(t.components());
        if cost <= budget {
            current.push(*t);
            extend_baskets(types, i, budget - cost, current, out);
            current.pop();
        }
    }
}

/// A K3 hypersurface family with its basket and signature.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct K3Family {
    pub family: HypersurfaceFamily,
    pub basket: Basket,
    pub sigma: i64,
}

impl K3Family {
    pub fn max_weight(&self) -> u64 {
        self.family.weights.as_array()[3]
    }

    pub fn to_row(&self) -> CatalogRow {
        CatalogRow::from_family(&self.family, self.basket.clone(), self.sigma)
    }
}

fn families_with_smallest_weight(a0: u64, max_weight: u64) -> Vec<K3Family> {
    let mut out = Vec::new();
    for a1 in a0..=max_weight {
        for a2 in a1..=max_weight {
            for a3 in a2..=max_weight {
                let Ok(weights) = Weights::new([a0, a1, a2, a3]) else {
                    continue;
                };
                if !wps::well_formed(&weights) {
                    continue;
                }
                let family = HypersurfaceFamily {
                    weights,
                    degree: weights.sum(),
                };
                if !wps::admissible(&family) {
                    continue;
                }
                let Ok(basket) = wps::basket(&family) else {
                    continue;
                };
                let sigma = sigma_k3(&basket, 0).unwrap_or_else(|e| {
                    panic!("{family} violates the component bound: {e}")
                });
                out.push(K3Family {
                    family,
                    basket,
                    sigma,
                });
            }
        }
    }
    out
}

fn sort_canonical(families: &mut [K3Family]) {
    families.sort_by(|a, b| {
        (a.family.degree, a.family.weights).cmp(&(b.family.degree, b.family.weights))
    });
}

/// Well-formed quasismooth K3 hypersurfaces with all weights at most
/// `max_weight`, each weight quadruple once, sorted by degree and weights.
///
/// Work is split by smallest weight over `jobs` worker threads; the result
/// does not depend on `jobs`.
pub fn enumerate_k3_hypersurfaces(max_weight: u64, jobs: usize) -> Vec<K3Family> {
    let run = || -> Vec<K3Family> {
        (1..=max_weight)
            .into_par_iter()
            .flat_map_iter(|a0| families_with_smallest_weight(a0, max_weight))
            .collect()
    };
    let mut families = if jobs <= 1 {
        (1..=max_weight)
            .flat_map(|a0| families_with_smallest_weight(a0, max_weight))
            .collect()
    } else {
        match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        }
    };
    sort_canonical(&mut families);
    families
}

/// Families of signature `target` with all weights at most `max_weight`.
pub fn find_signature(target: i64, max_weight: u64, jobs: usize) -> Vec<K3Family> {
    enumerate_k3_hypersurfaces(max_weight, jobs)
        .into_iter()
        .filter(|f| f.sigma == target)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stabilized {
    /// Smallest bound from which the count stayed unchanged.
    pub max_weight: u64,
    /// Largest bound examined.
    pub checked_up_to: u64,
    pub families: Vec<K3Family>,
}

/// Raises the weight bound from `start` in steps of `step` until the family
/// count is unchanged across two consecutive increments.
pub fn stabilize(start: u64, step: u64, jobs: usize) -> Stabilized {
    let step = step.max(1);
    let mut bound = start.max(1);
    loop {
        let top = bound + 2 * step;
        let families = enumerate_k3_hypersurfaces(top, jobs);
        let count = |b: u64| families.iter().filter(|f| f.max_weight() <= b).count();
        let (c0, c1, c2) = (count(bound), count(bound + step), count(top));
        if c0 == c1 && c1 == c2 {
            let families = families.into_iter().filter(|f| f.max_weight() <= bound).collect();
            return Stabilized {
                max_weight: bound,
                checked_up_to: top,
                families,
            };
        }
        bound += step;
    }
}

pub fn realized(families: &[K3Family]) -> BTreeSet<i64> {
    families.iter().map(|f| f.sigma).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_basket_lists() {
        let one = enumerate_baskets(1);
        assert_eq!(one, vec![(Basket::new(), -16), ("A_1".parse().unwrap(), -15)]);
        assert_eq!(enumerate_baskets(0), vec![(Basket::new(), -16)]);
        let four = enumerate_baskets(4);
        assert!(four.contains(&("D_4".parse().unwrap(), -12)));
        // partitions of 0..=4 with two kinds of 4: 1+1+2+3+5+1
        assert_eq!(four.len(), 13);
    }

    #[test]
    fn small_hypersurface_search() {
        let fams = enumerate_k3_hypersurfaces(5, 1);
        let quartic = HypersurfaceFamily::new([1, 1, 1, 1], 4).unwrap();
        assert_eq!(fams.first().unwrap().family, quartic);
        assert!(fams.iter().all(|f| f.family.is_canonical_trivial()));
        assert_eq!(fams, enumerate_k3_hypersurfaces(5, 3));
    }

    #[test]
    fn targets() {
        let hits: Vec<String> = find_signature(-16, 4, 1)
            .iter()
            .map(|f| f.family.to_string())
            .collect();
        assert_eq!(hits, vec!["F_4 ⊂ P(1,1,1,1)", "F_6 ⊂ P(1,1,1,3)"]);
        assert!(find_signature(-12, 12, 2).is_empty());
    }
}
