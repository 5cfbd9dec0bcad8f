//! Finite atomic measures on the line.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{domain, io_err, param, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub pos: f64,
    pub mass: f64,
}

impl Atom {
    pub const fn new(pos: f64, mass: f64) -> Self {
        Atom { pos, mass }
    }
}

/// Sorted list of atoms with strictly increasing positions and positive
/// masses.
///
/// The cumulative function is anchored at the origin:
/// `cumulative(x) = ν([0, x])` for `x >= 0` and `-ν((x, 0))` for `x < 0`.
/// It is right-continuous.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Atom>", into = "Vec<Atom>")]
pub struct AtomicMeasure {
    atoms: Vec<Atom>,
}

impl TryFrom<Vec<Atom>> for AtomicMeasure {
    type Error = crate::Error;

    fn try_from(atoms: Vec<Atom>) -> Result<Self> {
        AtomicMeasure::new(atoms)
    }
}

impl From<AtomicMeasure> for Vec<Atom> {
    fn from(m: AtomicMeasure) -> Self {
        m.atoms
    }
}

impl AtomicMeasure {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        for a in &atoms {
            if !a.pos.is_finite() || !a.mass.is_finite() {
                return Err(domain(format!("non-finite atom {a:?}")));
            }
            if a.mass <= 0.0 {
                return Err(domain(format!("atom at {} has non-positive mass {}", a.pos, a.mass)));
            }
        }
        if atoms.windows(2).any(|p| p[0].pos >= p[1].pos) {
            return Err(domain("atom positions must be strictly increasing"));
        }
        Ok(AtomicMeasure { atoms })
    }

    /// Builds a measure from unsorted atoms, adding masses at equal
    /// positions.
    pub fn from_unsorted(mut atoms: Vec<Atom>) -> Result<Self> {
        atoms.sort_by(|a, b| a.pos.total_cmp(&b.pos));
        let mut merged: Vec<Atom> = Vec::with_capacity(atoms.len());
        for a in atoms {
            match merged.last_mut() {
                Some(last) if last.pos == a.pos => last.mass += a.mass,
                _ => merged.push(a),
            }
        }
        Self::new(merged)
    }

    pub fn empty() -> Self {
        AtomicMeasure::default()
    }

    /// Unit atoms at `start, start + spacing, ...` up to and including `end`.
    pub fn lattice(start: f64, end: f64, spacing: f64, mass: f64) -> Result<Self> {
        if !(spacing > 0.0) {
            return Err(domain("lattice spacing must be positive"));
        }
        let n = ((end - start) / spacing).floor();
        let atoms = (0..=(n.max(-1.0) as i64))
            .map(|k| Atom::new(start + k as f64 * spacing, mass))
            .filter(|a| a.pos <= end)
            .collect();
        Self::new(atoms)
    }

    pub(crate) fn from_sorted_unchecked(atoms: Vec<Atom>) -> Self {
        debug_assert!(atoms.windows(2).all(|p| p[0].pos < p[1].pos));
        debug_assert!(atoms.iter().all(|a| a.mass > 0.0));
        AtomicMeasure { atoms }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        crate::stats::pairwise_sum(&self.atoms.iter().map(|a| a.mass).collect::<Vec<_>>())
    }

    /// Mass of atoms in the half-open interval `(lo, hi]`.
    pub fn mass_in(&self, lo: f64, hi: f64) -> f64 {
        if hi <= lo {
            return 0.0;
        }
        let a = self.atoms.partition_point(|at| at.pos <= lo);
        let b = self.atoms.partition_point(|at| at.pos <= hi);
        self.atoms[a..b].iter().map(|at| at.mass).sum()
    }

    /// Origin-anchored cumulative function (see the type docs).
    pub fn cumulative(&self, x: f64) -> f64 {
        if x >= 0.0 {
            let a = self.atoms.partition_point(|at| at.pos < 0.0);
            let b = self.atoms.partition_point(|at| at.pos <= x);
            self.atoms[a..b].iter().fold(0.0, |acc, at| acc + at.mass)
        } else {
            let a = self.atoms.partition_point(|at| at.pos <= x);
            let b = self.atoms.partition_point(|at| at.pos < 0.0);
            -self.atoms[a..b].iter().rev().fold(0.0, |acc, at| acc + at.mass)
        }
    }

    /// Cumulative values at every atom, in atom order.
    ///
    /// Summation runs outward from the origin so that values match
    /// [`cumulative`](Self::cumulative) bit for bit.
    pub fn cumulative_at_atoms(&self) -> Vec<f64> {
        let n = self.atoms.len();
        let split = self.atoms.partition_point(|at| at.pos < 0.0);
        let mut out = vec![0.0; n];
        let mut acc = 0.0;
        for (o, at) in out[split..].iter_mut().zip(&self.atoms[split..]) {
            acc += at.mass;
            *o = acc;
        }
        // For an atom a < 0 the value is -ν((a, 0)), which excludes a itself.
        let mut acc = 0.0;
        for i in (0..split).rev() {
            out[i] = -acc;
            acc += self.atoms[i].mass;
        }
        out
    }

    /// Atoms with positions in the closed interval `[lo, hi]`.
    pub fn restrict(&self, lo: f64, hi: f64) -> AtomicMeasure {
        let a = self.atoms.partition_point(|at| at.pos < lo);
        let b = self.atoms.partition_point(|at| at.pos <= hi);
        AtomicMeasure { atoms: self.atoms[a..b.max(a)].to_vec() }
    }

    /// Atoms with positions strictly below `x`.
    pub fn restrict_below(&self, x: f64) -> AtomicMeasure {
        let b = self.atoms.partition_point(|at| at.pos < x);
        AtomicMeasure { atoms: self.atoms[..b].to_vec() }
    }

    /// Adds mass at `pos`, merging with an existing atom there.
    pub fn with_atom(&self, pos: f64, mass: f64) -> Result<AtomicMeasure> {
        let mut atoms = self.atoms.clone();
        atoms.push(Atom::new(pos, mass));
        Self::from_unsorted(atoms)
    }

    /// `self >= other` as measures: every atom of `other` sits at an atom of
    /// `self` carrying at least as much mass.
    pub fn dominates(&self, other: &AtomicMeasure) -> bool {
        let mut j = 0;
        for b in &other.atoms {
            while j < self.atoms.len() && self.atoms[j].pos < b.pos {
                j += 1;
            }
            if j == self.atoms.len() || self.atoms[j].pos != b.pos || self.atoms[j].mass < b.mass {
                return false;
            }
        }
        true
    }

    /// `sup_x |F(x) − G(x)|` over the cumulative functions of the two
    /// measures.
    pub fn sup_distance(&self, other: &AtomicMeasure) -> f64 {
        let mut xs: Vec<f64> = self.atoms.iter().chain(&other.atoms).map(|a| a.pos).collect();
        xs.push(-1.0);
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let mut d: f64 = 0.0;
        for &x in &xs {
            d = d.max((self.cumulative(x) - other.cumulative(x)).abs());
        }
        // Below every atom both cumulatives are constant.
        let below = xs[0] - 1.0;
        d.max((self.cumulative(below) - other.cumulative(below)).abs())
    }

    /// Poisson sample: `Poisson(intensity · (hi − lo))`
    /// atoms of mass `mass`, uniform on `(lo, hi]`.
    pub fn poisson(lo: f64, hi: f64, intensity: f64, mass: f64, seed: u64) -> Result<Self> {
        use rand::Rng;
        use rand_distr::{Distribution, Poisson};
        if !(lo < hi) {
            return Err(param(format!("empty interval ({lo}, {hi}]")));
        }
        if !(intensity > 0.0 && intensity.is_finite() && mass > 0.0 && mass.is_finite()) {
            return Err(param("intensity and mass must be positive"));
        }
        let mut rng = crate::rng::rng_from_seed(seed);
        let n = Poisson::new(intensity * (hi - lo))
            .map_err(|e| param(format!("poisson: {e}")))?
            .sample(&mut rng) as usize;
        let mut atoms = Vec::with_capacity(n);
        for _ in 0..n {
            let u = 1.0 - rng.random::<f64>();
            let pos = (lo + u * (hi - lo)).clamp(lo, hi);
            if pos > lo {
                atoms.push(Atom::new(pos, mass));
            }
        }
        Self::from_unsorted(atoms)
    }

    /// Shifts every atom by `h`.
    pub fn translated(&self, h: f64) -> AtomicMeasure {
        AtomicMeasure { atoms: self.atoms.iter().map(|a| Atom::new(a.pos + h, a.mass)).collect() }
    }

    /// Consecutive position gaps.
    pub fn gaps(&self) -> Vec<f64> {
        self.atoms.windows(2).map(|p| p[1].pos - p[0].pos).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("atoms serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()).map_err(|e| io_err(path, e))
    }

    pub(crate) fn atoms_mut(&mut self) -> &mut Vec<Atom> {
        &mut self.atoms
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(atoms: &[(f64, f64)]) -> AtomicMeasure {
        AtomicMeasure::new(atoms.iter().map(|&(p, w)| Atom::new(p, w)).collect()).unwrap()
    }

    #[test]
    fn invariants_enforced() {
        assert!(AtomicMeasure::new(vec![Atom::new(1.0, 1.0), Atom::new(1.0, 2.0)]).is_err());
        assert!(AtomicMeasure::new(vec![Atom::new(2.0, 1.0), Atom::new(1.0, 2.0)]).is_err());
        assert!(AtomicMeasure::new(vec![Atom::new(1.0, 0.0)]).is_err());
        let merged = AtomicMeasure::from_unsorted(vec![Atom::new(2.0, 1.0), Atom::new(1.0, 2.0), Atom::new(2.0, 0.5)]).unwrap();
        assert_eq!(merged, m(&[(1.0, 2.0), (2.0, 1.5)]));
    }

    #[test]
    fn cumulative_is_origin_anchored() {
        let nu = m(&[(-2.0, 1.0), (-1.0, 2.0), (0.0, 4.0), (3.0, 8.0)]);
        assert_eq!(nu.cumulative(-3.0), -3.0);
        assert_eq!(nu.cumulative(-2.0), -2.0);
        assert_eq!(nu.cumulative(-1.0), 0.0);
        assert_eq!(nu.cumulative(-0.5), 0.0);
        assert_eq!(nu.cumulative(0.0), 4.0);
        assert_eq!(nu.cumulative(2.9), 4.0);
        assert_eq!(nu.cumulative(3.0), 12.0);
        let at = nu.cumulative_at_atoms();
        for (a, v) in nu.atoms().iter().zip(at) {
            assert_eq!(nu.cumulative(a.pos), v);
        }
        assert_eq!(nu.mass_in(-2.0, 0.0), 6.0);
        assert_eq!(nu.cumulative(3.0) - nu.cumulative(-2.0), nu.mass_in(-2.0, 3.0));
    }

    #[test]
    fn dominance() {
        let a = m(&[(0.0, 1.0), (1.0, 2.0)]);
        let b = m(&[(0.0, 1.0), (1.0, 2.0), (2.0, 1.0)]);
        assert!(b.dominates(&a));
        assert!(!a.dominates(&b));
        assert!(a.dominates(&AtomicMeasure::empty()));
        let c = m(&[(0.0, 0.5), (1.0, 2.0)]);
        assert!(a.dominates(&c));
        assert!(!c.dominates(&a));
    }

    #[test]
    fn json_round_trip() {
        let nu = m(&[(-1.5, 0.25), (2.0, 3.0)]);
        let text = nu.to_json();
        assert!(text.contains("\"pos\""));
        assert_eq!(AtomicMeasure::from_json(&text).unwrap(), nu);
        assert!(AtomicMeasure::from_json(r#"[{"pos":1,"mass":1},{"pos":0,"mass":1}]"#).is_err());
    }

    #[test]
    fn lattice_measure() {
        let nu = AtomicMeasure::lattice(-2.0, 2.0, 0.5, 1.0).unwrap();
        assert_eq!(nu.len(), 9);
        assert_eq!(nu.atoms()[4].pos, 0.0);
    }
}
