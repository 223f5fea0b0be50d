//! Permutation groups via a deterministic Schreier-Sims stabiliser chain.
//!
//! Base points are always the smallest moved points, transversals are built
//! by breadth-first orbit sweeps in point order, and no randomisation is
//! used anywhere, so orders and membership answers are reproducible
//! bit-for-bit.

use num_bigint::BigUint;
use num_traits::One;

/// A permutation of {0, .., n-1} as an image table.
pub type Perm = Vec<u32>;

pub fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

pub fn compose(a: &Perm, b: &Perm) -> Perm {
    // (a * b)(x) = b(a(x)): apply a first.
    a.iter().map(|&x| b[x as usize]).collect()
}

pub fn invert(a: &Perm) -> Perm {
    let mut inv = vec![0u32; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

pub fn is_identity(a: &Perm) -> bool {
    a.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

/// Orbit of a point under a generator list, in breadth-first order.
pub fn orbit(degree: usize, point: u32, generators: &[Perm]) -> Vec<u32> {
    let mut seen = vec![false; degree];
    seen[point as usize] = true;
    let mut queue = vec![point];
    let mut head = 0;
    while head < queue.len() {
        let p = queue[head];
        head += 1;
        for g in generators {
            let img = g[p as usize];
            if !seen[img as usize] {
                seen[img as usize] = true;
                queue.push(img);
            }
        }
    }
    queue
}

struct Level {
    base: u32,
    /// Strong generators fixing all earlier base points (they need not fix
    /// this one).
    gens: Vec<Perm>,
    /// transversal[p] = a perm mapping base to p, for p in the orbit.
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(base: u32, n: usize) -> Level {
        let mut transversal = vec![None; n];
        transversal[base as usize] = Some(identity(n));
        Level {
            base,
            gens: Vec::new(),
            transversal,
        }
    }

    fn recompute_orbit(&mut self, n: usize) {
        for t in self.transversal.iter_mut() {
            *t = None;
        }
        self.transversal[self.base as usize] = Some(identity(n));
        let mut queue = vec![self.base];
        let mut head = 0;
        while head < queue.len() {
            let p = queue[head];
            head += 1;
            for g in &self.gens {
                let img = g[p as usize];
                if self.transversal[img as usize].is_none() {
                    let t = self.transversal[p as usize].as_ref().unwrap();
                    self.transversal[img as usize] = Some(compose(t, g));
                    queue.push(img);
                }
            }
        }
    }

    fn orbit_points(&self) -> Vec<u32> {
        (0..self.transversal.len() as u32)
            .filter(|&p| self.transversal[p as usize].is_some())
            .collect()
    }

    fn orbit_size(&self) -> u64 {
        self.transversal.iter().filter(|t| t.is_some()).count() as u64
    }
}

/// A base and strong generating set for a permutation group on a fixed
/// domain. Immutable once built; safe for concurrent membership queries.
pub struct PermGroup {
    degree: usize,
    levels: Vec<Level>,
}

impl PermGroup {
    /// Builds a verified stabiliser chain from the given generators.
    pub fn new(degree: usize, generators: &[Perm]) -> PermGroup {
        let mut pg = PermGroup {
            degree,
            levels: Vec::new(),
        };
        for g in generators {
            assert_eq!(g.len(), degree);
            if !is_identity(g) {
                pg.add_strong(g.clone());
            }
        }
        // Verify every level bottom-up; verification of a level re-verifies
        // anything deeper it touches, so shallower levels always see a
        // completed chain below them.
        let mut i = pg.levels.len();
        while i > 0 {
            i -= 1;
            pg.verify_level(i);
        }
        pg
    }

    fn first_moved(p: &Perm) -> Option<u32> {
        p.iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    /// Installs h as a strong generator at every level whose leading base
    /// points it fixes, appending a new base point if it fixes them all.
    /// Returns the deepest level that received it.
    fn add_strong(&mut self, h: Perm) -> usize {
        let mut m = 0;
        while m < self.levels.len() && h[self.levels[m].base as usize] == self.levels[m].base {
            m += 1;
        }
        if m == self.levels.len() {
            let b = Self::first_moved(&h).expect("identity passed to add_strong");
            self.levels.push(Level::new(b, self.degree));
        }
        for l in 0..=m {
            self.levels[l].gens.push(h.clone());
        }
        m
    }

    /// Strips g through the transversals of levels `start..`; returns the
    /// residue and the level where it stuck (levels.len() if it passed all).
    fn strip(&self, g: Perm, start: usize) -> (Perm, usize) {
        let mut h = g;
        for l in start..self.levels.len() {
            if is_identity(&h) {
                return (h, self.levels.len());
            }
            let img = h[self.levels[l].base as usize] as usize;
            match &self.levels[l].transversal[img] {
                None => return (h, l),
                Some(t) => h = compose(&h, &invert(t)),
            }
        }
        (h, self.levels.len())
    }

    /// Establishes the Schreier condition at level i: every Schreier
    /// generator of the level strips to the identity through the deeper
    /// levels. Residues that stick are installed as strong generators, the
    /// deeper levels they landed in are re-verified, and the level is
    /// rechecked from scratch.
    fn verify_level(&mut self, i: usize) {
        'restart: loop {
            self.levels[i].recompute_orbit(self.degree);
            let points = self.levels[i].orbit_points();
            let mut gi = 0;
            while gi < self.levels[i].gens.len() {
                let s = self.levels[i].gens[gi].clone();
                for &p in &points {
                    let img = s[p as usize] as usize;
                    let t_p = self.levels[i].transversal[p as usize]
                        .as_ref()
                        .unwrap();
                    let t_img = self.levels[i].transversal[img].as_ref().unwrap();
                    let schreier = compose(&compose(t_p, &s), &invert(t_img));
                    if is_identity(&schreier) {
                        continue;
                    }
                    let (residue, stuck) = self.strip(schreier, i + 1);
                    if !is_identity(&residue) {
                        debug_assert!(stuck > i);
                        let deepest = self.add_strong(residue);
                        for l in ((i + 1)..=deepest).rev() {
                            self.verify_level(l);
                        }
                        continue 'restart;
                    }
                }
                gi += 1;
            }
            return;
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Orbit sizes along the chain, shallowest first.
    pub fn orbit_sizes(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.orbit_size()).collect()
    }

    /// |G| as the product of the orbit sizes along the chain.
    pub fn order(&self) -> BigUint {
        let mut n = BigUint::one();
        for l in &self.levels {
            n *= BigUint::from(l.orbit_size());
        }
        n
    }

    /// Order as u64; panics on overflow (fine for all explicit targets).
    pub fn order_u64(&self) -> u64 {
        self.levels
            .iter()
            .map(|l| l.orbit_size())
            .try_fold(1u64, u64::checked_mul)
            .expect("group order overflows u64")
    }

    /// Sound and complete membership test by sifting.
    pub fn contains(&self, p: &Perm) -> bool {
        assert_eq!(p.len(), self.degree);
        let (residue, _) = self.strip(p.clone(), 0);
        is_identity(&residue)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group() {
        let pg = PermGroup::new(5, &[identity(5)]);
        assert_eq!(pg.order_u64(), 1);
        assert!(pg.contains(&identity(5)));
        assert!(!pg.contains(&vec![1, 0, 2, 3, 4]));
    }

    #[test]
    fn symmetric_group_s5() {
        let cycle: Perm = vec![1, 2, 3, 4, 0];
        let swap: Perm = vec![1, 0, 2, 3, 4];
        let pg = PermGroup::new(5, &[cycle, swap]);
        assert_eq!(pg.order_u64(), 120);
        assert!(pg.contains(&vec![4, 3, 2, 1, 0]));
    }

    #[test]
    fn alternating_group_a4() {
        let g1: Perm = vec![1, 2, 0, 3]; // (0 1 2)
        let g2: Perm = vec![0, 2, 3, 1]; // (1 2 3)
        let pg = PermGroup::new(4, &[g1, g2]);
        assert_eq!(pg.order_u64(), 12);
        assert!(!pg.contains(&vec![1, 0, 2, 3])); // odd permutation
    }

    #[test]
    fn dihedral_and_cyclic() {
        // D6 on 6 points: rotation + reflection.
        let r: Perm = vec![1, 2, 3, 4, 5, 0];
        let f: Perm = vec![0, 5, 4, 3, 2, 1];
        assert_eq!(PermGroup::new(6, &[r.clone(), f]).order_u64(), 12);
        assert_eq!(PermGroup::new(6, &[r]).order_u64(), 6);
    }

    #[test]
    fn mathieu_style_psl27() {
        // PSL(2,7) acting on the projective line over GF(7): 8 points,
        // x -> x+1 and x -> -1/x. Order 168.
        let add: Perm = vec![1, 2, 3, 4, 5, 6, 0, 7]; // infinity = 7 fixed
        // -1/x with inf<->0: 0->inf, inf->0, x -> -(x^{-1}) mod 7
        let mut neg_inv: Perm = vec![0; 8];
        neg_inv[7] = 0;
        neg_inv[0] = 7;
        for x in 1..7u32 {
            // inverse mod 7
            let inv = (1..7).find(|&y| (x * y) % 7 == 1).unwrap();
            neg_inv[x as usize] = (7 - inv) % 7;
        }
        let pg = PermGroup::new(8, &[add, neg_inv]);
        assert_eq!(pg.order_u64(), 168);
    }

    #[test]
    fn compose_applies_left_first() {
        let a: Perm = vec![1, 2, 0];
        let b: Perm = vec![0, 2, 1];
        assert_eq!(compose(&a, &b), vec![2, 1, 0]);
        assert!(is_identity(&compose(&a, &invert(&a))));
    }
}
