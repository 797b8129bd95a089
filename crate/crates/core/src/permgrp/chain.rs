//! Deterministic Schreier–Sims.

use num_bigint::BigUint;
use num_traits::One;

use super::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    /// Indices into `StabChain::strong` of generators fixing all earlier base points.
    gens: Vec<usize>,
    orbit: Vec<usize>,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Permutation>>,
}

/// Base, strong generating set and basic transversals of a permutation group.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        let mut chain = StabChain {
            degree,
            strong: Vec::new(),
            levels: Vec::new(),
        };
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        if gens.is_empty() {
            return chain;
        }
        // initial base: no generator may fix every base point
        let mut base: Vec<usize> = Vec::new();
        for g in &gens {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push(g.first_moved().unwrap());
            }
        }
        chain.strong = gens;
        for (l, &b) in base.iter().enumerate() {
            let gens_l = chain
                .strong
                .iter()
                .enumerate()
                .filter(|(_, g)| base[..l].iter().all(|&p| g.apply(p) == p))
                .map(|(i, _)| i)
                .collect();
            chain.levels.push(Level {
                base: b,
                gens: gens_l,
                orbit: Vec::new(),
                transversal: Vec::new(),
            });
            chain.rebuild_orbit(l);
        }
        chain.complete();
        chain
    }

    fn rebuild_orbit(&mut self, l: usize) {
        let n = self.degree;
        let base = self.levels[l].base;
        let mut transversal: Vec<Option<Permutation>> = vec![None; n];
        transversal[base] = Some(Permutation::identity(n));
        let mut orbit = vec![base];
        let mut i = 0;
        while i < orbit.len() {
            let b = orbit[i];
            for &gi in &self.levels[l].gens {
                let g = &self.strong[gi];
                let c = g.apply(b);
                if transversal[c].is_none() {
                    transversal[c] = Some(transversal[b].as_ref().unwrap().mul(g));
                    orbit.push(c);
                }
            }
            i += 1;
        }
        self.levels[l].orbit = orbit;
        self.levels[l].transversal = transversal;
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level
    /// where sifting stopped (`levels.len()` if it passed every level).
    fn sift_from(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for l in from..self.levels.len() {
            let lev = &self.levels[l];
            let b = h.apply(lev.base);
            match &lev.transversal[b] {
                None => return (h, l),
                Some(u) => h = h.mul(&u.inverse()),
            }
        }
        (h, self.levels.len())
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let l = i - 1;
            let mut added = None;
            'search: for oi in 0..self.levels[l].orbit.len() {
                let b = self.levels[l].orbit[oi];
                for gk in 0..self.levels[l].gens.len() {
                    let s = &self.strong[self.levels[l].gens[gk]];
                    let ub = self.levels[l].transversal[b].as_ref().unwrap();
                    let bs = s.apply(b);
                    let ubs = self.levels[l].transversal[bs].as_ref().unwrap();
                    let schreier = ub.mul(s).mul(&ubs.inverse());
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, j) = self.sift_from(&schreier, l + 1);
                    if !h.is_identity() {
                        added = Some((h, j));
                        break 'search;
                    }
                }
            }
            match added {
                None => i -= 1,
                Some((h, j)) => {
                    if j == self.levels.len() {
                        let b = h.first_moved().unwrap();
                        self.levels.push(Level {
                            base: b,
                            gens: Vec::new(),
                            orbit: Vec::new(),
                            transversal: Vec::new(),
                        });
                    }
                    let idx = self.strong.len();
                    self.strong.push(h);
                    for m in (l + 1)..=j {
                        self.levels[m].gens.push(idx);
                        self.rebuild_orbit(m);
                    }
                    i = j + 1;
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        self.sift_from(g, 0).0.is_identity()
    }

    /// All elements as products of transversal elements, deepest level first.
    pub fn enumerate(&self) -> Vec<Permutation> {
        let mut elems = vec![Permutation::identity(self.degree)];
        for lev in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * lev.orbit.len());
            for e in &elems {
                for &b in &lev.orbit {
                    next.push(e.mul(lev.transversal[b].as_ref().unwrap()));
                }
            }
            elems = next;
        }
        elems
    }

    /// Element addressed by one orbit index per level, used for seeded random sampling.
    pub fn element_from_indices(&self, idx: &[usize]) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for (lev, &k) in self.levels.iter().zip(idx).rev() {
            let b = lev.orbit[k % lev.orbit.len()];
            g = g.mul(lev.transversal[b].as_ref().unwrap());
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=7usize {
            let c = StabChain::new(n, &[p(n, "(1,2)"), Permutation::from_cycles(n, &[(1..=n).collect()]).unwrap()]);
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(c.order(), BigUint::from(fact));
            assert_eq!(c.enumerate().len() as u64, fact);
        }
    }

    #[test]
    fn membership() {
        let c = StabChain::new(4, &[p(4, "(1,2,3,4)"), p(4, "(1,3)")]);
        assert_eq!(c.order(), BigUint::from(8u32));
        assert!(c.contains(&p(4, "(1,3)(2,4)")));
        assert!(!c.contains(&p(4, "(1,2)")));
        let m = StabChain::new(11, &[p(11, "(1,2,3,4,5,6,7,8,9,10,11)"), p(11, "(3,7,11,8)(4,10,5,6)")]);
        assert_eq!(m.order(), BigUint::from(7920u32));
    }
}
