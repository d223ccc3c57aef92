//! Finite permutation groups given by generators.
//!
//! Two independent membership routes are provided: breadth-first closure,
//! which lists every element and is used for sweeps over `W`, and a
//! Schreier–Sims stabilizer chain, which gives the order and membership
//! without listing elements.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::lattice::WeylElement;

/// Default cap on explicit group enumeration.
pub const ENUMERATION_CAP: usize = 100_000;

/// All elements of the group generated by `gens`, in breadth-first order from
/// the identity (each new element is `g ∘ x` for a generator `g`).
///
/// Fails with [`Error::EnumerationCap`] as soon as more than `cap` elements
/// have been found.
pub fn closure(degree: usize, gens: &[WeylElement], cap: usize) -> Result<Vec<WeylElement>> {
    let id = WeylElement::identity(degree);
    let mut seen: HashSet<WeylElement> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
        out.push(x);
        if seen.len() > cap {
            return Err(Error::EnumerationCap {
                size: seen.len() as u128,
                cap,
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
struct Level {
    base_point: usize,
    gens: Vec<WeylElement>,
    // transversal[b] maps base_point to b
    transversal: Vec<Option<WeylElement>>,
    orbit: Vec<usize>,
}

/// Base and strong generating set built by the deterministic Schreier–Sims
/// algorithm.
#[derive(Debug, Clone)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(degree: usize, gens: &[WeylElement]) -> Self {
        let mut chain = StabilizerChain {
            degree,
            levels: Vec::new(),
        };
        for g in gens {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
            let (residue, _) = chain.sift(g, 0);
            if !residue.is_identity() {
                chain.add_generator(0, g.clone());
            }
        }
        chain
    }

    /// Group order, the product of the basic orbit lengths.
    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn contains(&self, g: &WeylElement) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    /// Strips `g` through the levels starting at `from`; returns the residue
    /// and the level at which stripping stopped.
    fn sift(&self, g: &WeylElement, from: usize) -> (WeylElement, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let b = h.apply(level.base_point);
            match &level.transversal[b] {
                None => return (h, i),
                Some(u) => h = u.inverse().compose(&h),
            }
        }
        let depth = self.levels.len();
        (h, depth)
    }

    fn add_generator(&mut self, i: usize, g: WeylElement) {
        if i == self.levels.len() {
            let moved = (0..self.degree)
                .find(|&j| g.apply(j) != j)
                .expect("identity is never added as a strong generator");
            let mut transversal = vec![None; self.degree];
            transversal[moved] = Some(WeylElement::identity(self.degree));
            self.levels.push(Level {
                base_point: moved,
                gens: Vec::new(),
                transversal,
                orbit: vec![moved],
            });
        }
        self.levels[i].gens.push(g);
        self.rebuild_orbit(i);
        // Schreier generators of level i must lie in the chain below it.
        let mut k = 0;
        while k < self.levels[i].orbit.len() {
            let b = self.levels[i].orbit[k];
            let ngens = self.levels[i].gens.len();
            for s_idx in 0..ngens {
                let level = &self.levels[i];
                let s = &level.gens[s_idx];
                let u_b = level.transversal[b].as_ref().unwrap();
                let sb = s.apply(b);
                let u_sb = level.transversal[sb].as_ref().unwrap();
                let schreier = u_sb.inverse().compose(&s.compose(u_b));
                let (residue, _) = self.sift(&schreier, i + 1);
                if !residue.is_identity() {
                    self.add_generator(i + 1, residue);
                }
            }
            k += 1;
        }
    }

    fn rebuild_orbit(&mut self, i: usize) {
        let level = &mut self.levels[i];
        let beta = level.base_point;
        let mut transversal = vec![None; self.degree];
        transversal[beta] = Some(WeylElement::identity(self.degree));
        let mut orbit = vec![beta];
        let mut k = 0;
        while k < orbit.len() {
            let b = orbit[k];
            for s in &level.gens {
                let sb = s.apply(b);
                if transversal[sb].is_none() {
                    let u = s.compose(transversal[b].as_ref().unwrap());
                    transversal[sb] = Some(u);
                    orbit.push(sb);
                }
            }
            k += 1;
        }
        level.transversal = transversal;
        level.orbit = orbit;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adjacent(n: usize) -> Vec<WeylElement> {
        (0..n - 1).map(|i| WeylElement::transposition(n, i, i + 1)).collect()
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 1..=6usize {
            let gens = if n == 1 { vec![] } else { adjacent(n) };
            let expected: usize = (1..=n).product();
            assert_eq!(closure(n, &gens, ENUMERATION_CAP).unwrap().len(), expected);
            assert_eq!(StabilizerChain::new(n, &gens).order(), expected as u128);
        }
    }

    #[test]
    fn large_symmetric_group_via_chain_only() {
        let gens = adjacent(10);
        let chain = StabilizerChain::new(10, &gens);
        assert_eq!(chain.order(), 3_628_800);
        assert!(matches!(
            closure(10, &gens, ENUMERATION_CAP),
            Err(Error::EnumerationCap { .. })
        ));
        assert!(chain.contains(&WeylElement::transposition(10, 0, 9)));
    }

    #[test]
    fn alternating_group_membership_agrees_with_closure() {
        // 3-cycles generate A_5
        let gens: Vec<_> = (0..3)
            .map(|i| {
                let mut im: Vec<usize> = (0..5).collect();
                im[i] = i + 1;
                im[i + 1] = i + 2;
                im[i + 2] = i;
                WeylElement::from_images(im).unwrap()
            })
            .collect();
        let elems: HashSet<_> = closure(5, &gens, ENUMERATION_CAP).unwrap().into_iter().collect();
        assert_eq!(elems.len(), 60);
        let chain = StabilizerChain::new(5, &gens);
        assert_eq!(chain.order(), 60);
        for w in closure(5, &adjacent(5), ENUMERATION_CAP).unwrap() {
            assert_eq!(chain.contains(&w), elems.contains(&w), "{w}");
        }
    }

    #[test]
    fn closure_starts_at_identity() {
        let all = closure(3, &adjacent(3), ENUMERATION_CAP).unwrap();
        assert!(all[0].is_identity());
    }
}
