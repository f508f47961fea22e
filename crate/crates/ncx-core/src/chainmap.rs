//! Chain maps between N-complexes: commutation with the differentials,
//! composition, and the linear structure on map families.

use crate::complex::NComplex;
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::{Error, Result};

/// A degreewise family `f^i : X^i -> Y^i` commuting with the differentials.
/// Only degrees where both endpoints are nonzero carry entries; the window
/// is normalized so equality of values is equality of maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: NComplex,
    pub target: NComplex,
    pub min_degree: i64,
    pub maps: Vec<Matrix>,
}

impl ChainMap {
    /// Structural constructor: checks shapes and trims the window.
    /// Commutation is checked by [`ChainMap::validate`].
    pub fn new(
        source: NComplex,
        target: NComplex,
        min_degree: i64,
        maps: Vec<Matrix>,
    ) -> Result<ChainMap> {
        if source.n != target.n {
            return Err(Error::InvalidParameters(
                "source and target have different N".into(),
            ));
        }
        if source.field != target.field {
            return Err(Error::FieldMismatch);
        }
        for (k, m) in maps.iter().enumerate() {
            let i = min_degree + k as i64;
            if m.rows != target.dim(i) || m.cols != source.dim(i) {
                return Err(Error::DimensionMismatch(format!(
                    "map at degree {i} is {}x{}, expected {}x{}",
                    m.rows,
                    m.cols,
                    target.dim(i),
                    source.dim(i)
                )));
            }
            if m.field != source.field {
                return Err(Error::FieldMismatch);
            }
        }
        let mut f = ChainMap { source, target, min_degree, maps };
        f.trim();
        Ok(f)
    }

    /// Build from a closure giving `f^i` on the degrees where both ends are
    /// nonzero. The closure must return correctly-shaped matrices.
    pub fn from_fn(
        source: NComplex,
        target: NComplex,
        f: impl Fn(i64) -> Matrix,
    ) -> ChainMap {
        let lo = source.min_degree.max(target.min_degree);
        let hi = if source.is_zero() || target.is_zero() {
            lo - 1
        } else {
            source.max_degree().min(target.max_degree())
        };
        let maps = (lo..=hi).map(f).collect();
        ChainMap::new(source, target, lo, maps).expect("from_fn produced bad shapes")
    }

    fn trim(&mut self) {
        let has_content = |m: &Matrix| m.rows > 0 && m.cols > 0;
        while self.maps.first().map_or(false, |m| !has_content(m)) {
            self.maps.remove(0);
            self.min_degree += 1;
        }
        while self.maps.last().map_or(false, |m| !has_content(m)) {
            self.maps.pop();
        }
        if self.maps.is_empty() {
            self.min_degree = 0;
        }
    }

    /// `f^i`, materialized with the right shape outside the stored window.
    pub fn map_at(&self, i: i64) -> Matrix {
        let k = i - self.min_degree;
        if k >= 0 && (k as usize) < self.maps.len() {
            self.maps[k as usize].clone()
        } else {
            Matrix::zero(self.source.field, self.target.dim(i), self.source.dim(i))
        }
    }

    pub fn identity(x: &NComplex) -> ChainMap {
        ChainMap::from_fn(x.clone(), x.clone(), |i| {
            Matrix::identity(x.field, x.dim(i))
        })
    }

    pub fn zero_map(source: &NComplex, target: &NComplex) -> ChainMap {
        ChainMap::new(source.clone(), target.clone(), 0, vec![]).unwrap()
    }

    /// Degrees where commutation or content can live: the union of both
    /// supports, padded by one.
    pub fn window(&self) -> std::ops::RangeInclusive<i64> {
        if self.source.is_zero() && self.target.is_zero() {
            return 1..=0;
        }
        let lo = if self.source.is_zero() {
            self.target.min_degree
        } else if self.target.is_zero() {
            self.source.min_degree
        } else {
            self.source.min_degree.min(self.target.min_degree)
        };
        let hi = if self.source.is_zero() {
            self.target.max_degree()
        } else if self.target.is_zero() {
            self.source.max_degree()
        } else {
            self.source.max_degree().max(self.target.max_degree())
        };
        lo - 1..=hi + 1
    }

    /// Check `f^{i+1} d_X^i = d_Y^i f^i` at every degree.
    pub fn validate(&self) -> Result<()> {
        for i in self.window() {
            let lhs = self.map_at(i + 1).mul(&self.source.diff(i));
            let rhs = self.target.diff(i).mul(&self.map_at(i));
            if lhs != rhs {
                return Err(Error::CommutationFailure(i));
            }
        }
        Ok(())
    }

    /// `g . f` degreewise; endpoints must match on the nose.
    pub fn compose(g: &ChainMap, f: &ChainMap) -> Result<ChainMap> {
        if f.target != g.source {
            return Err(Error::CompositionMismatch);
        }
        Ok(ChainMap::from_fn(f.source.clone(), g.target.clone(), |i| {
            g.map_at(i).mul(&f.map_at(i))
        }))
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        assert_eq!(self.source, other.source, "sum of maps with different sources");
        assert_eq!(self.target, other.target, "sum of maps with different targets");
        ChainMap::from_fn(self.source.clone(), self.target.clone(), |i| {
            self.map_at(i).add(&other.map_at(i))
        })
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        self.add(&other.scale(&self.source.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> ChainMap {
        ChainMap::from_fn(self.source.clone(), self.target.clone(), |i| {
            self.map_at(i).scale(c)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(|m| m.is_zero())
    }

    /// Degreewise invertibility (an isomorphism of complexes).
    pub fn is_degreewise_iso(&self) -> bool {
        self.window().all(|i| {
            let m = self.map_at(i);
            m.rows == m.cols && m.is_invertible()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::mu;
    use crate::field::FieldSpec;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn identity_and_zero_validate() {
        let x = mu(3, q(), 2, 1, 2).unwrap();
        assert!(ChainMap::identity(&x).validate().is_ok());
        assert!(ChainMap::zero_map(&x, &x).validate().is_ok());
        assert!(ChainMap::zero_map(&x, &NComplex::zero(3, q())).validate().is_ok());
    }

    #[test]
    fn commutation_failure_detected() {
        // f = (1, 2) between two copies of the identity complex k -> k.
        let x = mu(2, q(), 2, 1, 1).unwrap();
        let f = ChainMap::new(
            x.clone(),
            x.clone(),
            0,
            vec![Matrix::identity(q(), 1), Matrix::from_i64(q(), &[&[2]])],
        )
        .unwrap();
        assert_eq!(f.validate(), Err(Error::CommutationFailure(0)));
    }

    #[test]
    fn composition_rules() {
        let x = mu(3, q(), 3, 2, 1).unwrap();
        let id = ChainMap::identity(&x);
        let two = id.scale(&q().from_i64(2));
        let three = id.scale(&q().from_i64(3));
        assert_eq!(ChainMap::compose(&id, &two).unwrap(), two);
        let six = ChainMap::compose(&two, &three).unwrap();
        assert_eq!(six, id.scale(&q().from_i64(6)));
        assert!(ChainMap::compose(&two, &ChainMap::zero_map(&x, &x)).unwrap().is_zero());

        let y = mu(3, q(), 1, 0, 1).unwrap();
        let g = ChainMap::zero_map(&y, &y);
        assert_eq!(ChainMap::compose(&g, &id), Err(Error::CompositionMismatch));
    }

    #[test]
    fn window_trimming_normalizes() {
        let x = mu(3, q(), 2, 1, 1).unwrap();
        let a = ChainMap::new(x.clone(), x.clone(), 0, vec![Matrix::identity(q(), 1), Matrix::identity(q(), 1)]).unwrap();
        let padded = vec![Matrix::zero(q(), 0, 0), Matrix::identity(q(), 1), Matrix::identity(q(), 1)];
        let b = ChainMap::new(x.clone(), x.clone(), -1, padded).unwrap();
        assert_eq!(a, b);
    }
}
