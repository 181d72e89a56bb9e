//! Base and strong generating set for a permutation group (Schreier–Sims).

/// Images of `0..n`.
pub type Perm = Vec<u32>;

pub fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

/// `a ∘ b`: apply `b` first.
pub fn compose(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&x| a[x as usize]).collect()
}

pub fn inverse(a: &Perm) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u32;
    }
    out
}

fn is_identity(a: &Perm) -> bool {
    a.iter().enumerate().all(|(i, &x)| x as usize == i)
}

struct Level {
    point: usize,
    gens: Vec<Perm>,
    /// `transversal[b]` maps `point` to `b`, for `b` in the orbit.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(point: usize, n: usize) -> Self {
        let mut transversal = vec![None; n];
        transversal[point] = Some(identity(n));
        Self { point, gens: Vec::new(), transversal, orbit: vec![point] }
    }

    /// Extends the orbit and transversal to be closed under `gens`.
    fn close(&mut self) {
        let mut i = 0;
        while i < self.orbit.len() {
            let b = self.orbit[i];
            for g in &self.gens {
                let c = g[b] as usize;
                if self.transversal[c].is_none() {
                    let u = compose(g, self.transversal[b].as_ref().expect("orbit point"));
                    self.transversal[c] = Some(u);
                    self.orbit.push(c);
                }
            }
            i += 1;
        }
    }

    fn add_gen(&mut self, g: Perm) {
        self.gens.push(g);
        self.close();
    }
}

/// A stabilizer chain; the group order is the product of the orbit sizes.
pub struct StabilizerChain {
    n: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(n: usize, gens: &[Perm]) -> Self {
        let mut chain = Self { n, levels: Vec::new() };
        let gens: Vec<Perm> = gens.iter().filter(|g| !is_identity(g)).cloned().collect();
        if let Some(first) = gens.first() {
            let point = first.iter().enumerate().position(|(i, &x)| x as usize != i).expect("nonidentity");
            let mut level = Level::new(point, n);
            level.gens = gens;
            level.close();
            chain.levels.push(level);
        }
        chain.build();
        chain
    }

    /// Strips `g` through levels `from..`; returns the residue and the level
    /// at which it left the chain (`levels.len()` if it passed every level).
    fn sift(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let b = g[level.point] as usize;
            match &level.transversal[b] {
                Some(u) => g = compose(&inverse(u), &g),
                None => return (g, j),
            }
        }
        (g, self.levels.len())
    }

    /// One top-down pass: every Schreier generator of level `i` is sifted
    /// through the deeper levels and any residue becomes a new generator there.
    fn build(&mut self) {
        let mut i = 0;
        while i < self.levels.len() {
            let mut checked = 0;
            // the orbit and generator list of level i do not change while it is processed
            let orbit = self.levels[i].orbit.clone();
            let gens = self.levels[i].gens.clone();
            for &b in &orbit {
                for s in &gens {
                    checked += 1;
                    let level = &self.levels[i];
                    let ub = level.transversal[b].as_ref().expect("orbit point");
                    let usb = level.transversal[s[b] as usize].as_ref().expect("orbit is closed");
                    let h = compose(&inverse(usb), &compose(s, ub));
                    let (residue, j) = self.sift(h, i + 1);
                    if is_identity(&residue) {
                        continue;
                    }
                    if j == self.levels.len() {
                        let point = residue.iter().enumerate().position(|(k, &x)| x as usize != k).expect("nonidentity");
                        self.levels.push(Level::new(point, self.n));
                    }
                    for level in &mut self.levels[i + 1..=j] {
                        level.add_gen(residue.clone());
                    }
                }
            }
            debug_assert_eq!(checked, orbit.len() * gens.len());
            i += 1;
        }
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Membership test by sifting from the top.
    pub fn contains(&self, g: &Perm) -> bool {
        let (r, _) = self.sift(g.clone(), 0);
        is_identity(&r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize, c: &[u32]) -> Perm {
        let mut p = identity(n);
        for (k, &x) in c.iter().enumerate() {
            p[x as usize] = c[(k + 1) % c.len()];
        }
        p
    }

    #[test]
    fn symmetric_groups() {
        for n in 2..=7usize {
            let gens = vec![cycle(n, &[0, 1]), cycle(n, &(0..n as u32).collect::<Vec<_>>())];
            let fact: u128 = (1..=n as u128).product();
            assert_eq!(StabilizerChain::new(n, &gens).order(), fact);
        }
    }

    #[test]
    fn alternating_and_cyclic() {
        let a5 = vec![cycle(5, &[0, 1, 2]), cycle(5, &[0, 1, 2, 3, 4])];
        let chain = StabilizerChain::new(5, &a5);
        assert_eq!(chain.order(), 60);
        assert!(!chain.contains(&cycle(5, &[0, 1])));
        assert!(chain.contains(&cycle(5, &[2, 3, 4])));
        assert_eq!(StabilizerChain::new(6, &[cycle(6, &[0, 1, 2, 3, 4, 5])]).order(), 6);
        assert_eq!(StabilizerChain::new(4, &[identity(4)]).order(), 1);
    }

    #[test]
    fn rubik_like_product() {
        // two disjoint 3-cycles and a transposition: Z3 x Z3 x Z2
        let g = vec![cycle(8, &[0, 1, 2]), cycle(8, &[3, 4, 5]), cycle(8, &[6, 7])];
        assert_eq!(StabilizerChain::new(8, &g).order(), 18);
    }
}
