use std::fmt;

use super::{FieldElement, FieldTower};
use crate::error::{Error, Result};
use crate::field::Field;

/// A field homomorphism `K -> F` given by the images of the generators of `K`.
///
/// Embeddings are data: they are checked by [`Embedding::validate`], never
/// searched for.
#[derive(Clone, PartialEq)]
pub struct Embedding {
    source: FieldTower,
    target: FieldTower,
    images: Vec<FieldElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub ok: bool,
    /// One line per violated relation.
    pub failures: Vec<String>,
}

impl Embedding {
    pub fn new(source: FieldTower, target: FieldTower, images: Vec<FieldElement>) -> Result<Self> {
        if images.len() != source.num_levels() {
            return Err(Error::DimensionMismatch { expected: source.num_levels(), found: images.len() });
        }
        if images.iter().any(|x| *x.tower() != target) {
            return Err(Error::FieldMismatch);
        }
        Ok(Self { source, target, images })
    }

    /// Builds an embedding from generator-image literals in the target tower.
    pub fn parse(source: FieldTower, target: FieldTower, images: &[&str]) -> Result<Self> {
        let images = images.iter().map(|s| target.parse(s)).collect::<Result<Vec<_>>>()?;
        Self::new(source, target, images)
    }

    /// The inclusion of a prefix tower.
    pub fn inclusion(source: FieldTower, target: FieldTower) -> Result<Self> {
        if !source.is_prefix_of(&target) {
            return Err(Error::FieldMismatch);
        }
        let images = (0..source.num_levels()).map(|j| target.generator(j)).collect();
        Ok(Self { source, target, images })
    }

    pub fn source(&self) -> &FieldTower {
        &self.source
    }

    pub fn target(&self) -> &FieldTower {
        &self.target
    }

    pub fn images(&self) -> &[FieldElement] {
        &self.images
    }

    /// Applies the substitution `ai -> images[i]` to `x`.
    pub fn apply(&self, x: &FieldElement) -> Result<FieldElement> {
        if *x.tower() != self.source {
            return Err(Error::FieldMismatch);
        }
        self.apply_prefix(x.coeffs(), self.source.num_levels())
    }

    /// Applies the substitution to a dense vector over the first `levels`
    /// levels of the source.
    fn apply_prefix(&self, coeffs: &[num_rational::BigRational], levels: usize) -> Result<FieldElement> {
        let powers: Vec<Vec<FieldElement>> = (0..levels)
            .map(|j| {
                let mut row = vec![self.target.one()];
                for _ in 1..self.source.level_degree(j) {
                    let next = row.last().unwrap() * &self.images[j];
                    row.push(next);
                }
                row
            })
            .collect();
        let mut acc = self.target.zero();
        for (idx, c) in coeffs.iter().enumerate() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            let exps = self.source.inner.exponents(idx);
            let mut term = self.target.rational(c.clone());
            for (j, &e) in exps.iter().enumerate().take(levels) {
                if e > 0 {
                    term = &term * &powers[j][e as usize];
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Checks that every generator image is a root of its (mapped) minimal
    /// polynomial and that the base subfield is fixed pointwise.
    pub fn validate(&self) -> EmbeddingReport {
        let mut failures = Vec::new();
        let base = self.source.base_marker();
        let base_tower = self.source.prefix(base);
        if !base_tower.is_prefix_of(&self.target) {
            failures.push(format!(
                "target does not contain the base subfield {base_tower:?} as a prefix"
            ));
        } else {
            for j in 0..base {
                if self.images[j] != self.target.generator(j) {
                    failures.push(format!(
                        "base generator `{}` must be fixed, but maps to {}",
                        self.source.inner.levels[j].symbol, self.images[j]
                    ));
                }
            }
        }
        for j in 0..self.source.num_levels() {
            let lvl = &self.source.inner.levels[j];
            let mut value = self.target.zero();
            let mut power = self.target.one();
            for c in &lvl.minpoly {
                let mut padded = c.clone();
                padded.resize(self.source.degree(), num_traits::Zero::zero());
                let mapped = self.apply_prefix(&padded, j).expect("prefix coefficients map");
                value = &value + &(&mapped * &power);
                power = &power * &self.images[j];
            }
            if !value.is_zero() {
                failures.push(format!(
                    "{} at {} = {} is not 0",
                    self.source.level_minpoly_string(j),
                    self.images[j],
                    value
                ));
            }
        }
        EmbeddingReport { ok: failures.is_empty(), failures }
    }
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let maps: Vec<String> = self
            .source
            .symbols()
            .zip(&self.images)
            .map(|(s, x)| format!("{s} -> {x}"))
            .collect();
        write!(f, "Embedding[{}]", maps.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn towers() -> (FieldTower, FieldTower) {
        let k = FieldTower::new(&[("r", "r^3 - 2")], 0).unwrap();
        let f = FieldTower::new(&[("r", "r^3 - 2"), ("z", "z^2 + z + 1")], 0).unwrap();
        (k, f)
    }

    #[test]
    fn twisted_cube_root_is_valid() {
        let (k, f) = towers();
        let lam = Embedding::parse(k.clone(), f.clone(), &["r*z"]).unwrap();
        assert!(lam.validate().ok);
        let r = k.generator(0);
        assert_eq!(lam.apply(&(&r * &r)).unwrap(), f.parse("r^2*z^2").unwrap());
    }

    #[test]
    fn inclusion_is_valid() {
        let (k, f) = towers();
        let mu = Embedding::inclusion(k.clone(), f.clone()).unwrap();
        assert!(mu.validate().ok);
        assert_eq!(mu.apply(&k.parse("r^2 + 1").unwrap()).unwrap(), f.parse("r^2 + 1").unwrap());
    }

    #[test]
    fn root_of_unity_is_not_a_cube_root_of_two() {
        let (k, f) = towers();
        let bad = Embedding::parse(k, f, &["z"]).unwrap();
        let report = bad.validate();
        assert!(!report.ok);
        assert_eq!(report.failures.len(), 1);
        assert!(report.failures[0].contains("r^3 - 2"), "{:?}", report.failures);
    }

    #[test]
    fn base_generators_must_be_fixed() {
        // K = Q(i) over k = Q(i): conjugation is not k-linear
        let k = FieldTower::new(&[("i", "i^2 + 1")], 1).unwrap();
        let conj = Embedding::parse(k.clone(), k.with_base_marker(0), &["-i"]).unwrap();
        assert!(!conj.validate().ok);
        let k0 = k.with_base_marker(0);
        let conj = Embedding::parse(k0.clone(), k0, &["-i"]).unwrap();
        assert!(conj.validate().ok);
    }

    #[test]
    fn wrong_arity_is_rejected() {
        let (k, f) = towers();
        assert!(matches!(
            Embedding::parse(k, f, &["r", "z"]),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
