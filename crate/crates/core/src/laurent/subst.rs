//! Monomial substitutions between weight lattices.
//!
//! A monomial map sends every weight of the source lattice to a weight of
//! the target lattice additively, so it is an integer matrix in lattice
//! coordinates (see [`Weight::lattice_coords`]). Only unimodular maps are
//! accepted; they induce ring isomorphisms of the group rings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::LaurentPoly;
use crate::error::{Error, Result};
use crate::lattice::{Family, GroupType, Weight};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialMap {
    source: GroupType,
    target: GroupType,
    /// `matrix[i][j]`: target lattice coordinate `i` of the image of source
    /// lattice basis vector `j`.
    matrix: Vec<Vec<i64>>,
}

impl MonomialMap {
    pub fn identity(group: GroupType) -> Self {
        let r = group.lattice_rank();
        let matrix = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        MonomialMap { source: group, target: group, matrix }
    }

    /// Builds the map from the images of the source lattice basis, i.e. of
    /// the weights `Weight::from_lattice_coords(source, e_j)`.
    pub fn from_lattice_basis_images(source: GroupType, target: GroupType, images: &[Weight]) -> Result<Self> {
        let r = source.lattice_rank();
        if images.len() != r {
            return Err(Error::Map(format!("expected {r} basis images, got {}", images.len())));
        }
        if target.lattice_rank() != r {
            return Err(Error::Map(format!(
                "lattice ranks differ: {source} has {r}, {target} has {}",
                target.lattice_rank()
            )));
        }
        for w in images {
            target.check_same(&w.group()).map_err(|e| Error::Map(e.to_string()))?;
        }
        let cols: Vec<Vec<i64>> = images.iter().map(|w| w.lattice_coords()).collect();
        let matrix = (0..r).map(|i| (0..r).map(|j| cols[j][i]).collect()).collect();
        let map = MonomialMap { source, target, matrix };
        let det = map.determinant();
        if det.abs() != BigInt::one() {
            return Err(Error::Map(format!("substitution matrix has determinant {det}, not ±1")));
        }
        Ok(map)
    }

    /// Builds the map from the images of the variables `x_1..x_n`.
    ///
    /// Only sources whose lattice is generated by the variables qualify:
    /// `SU(n)` (where the images must multiply to 1) and `SO(2)`. Spin
    /// lattices need [`MonomialMap::from_lattice_basis_images`].
    pub fn from_variable_images(source: GroupType, target: GroupType, images: &[Weight]) -> Result<Self> {
        let n = source.n();
        if images.len() != n {
            return Err(Error::Map(format!("expected {n} variable images, got {}", images.len())));
        }
        match source.family() {
            Family::SU => {
                let prod = images.iter().skip(1).fold(images[0].clone(), |acc, w| acc.add(w));
                if !prod.is_zero() {
                    return Err(Error::Map(format!(
                        "images multiply to {} but the relation x1...x{n} = 1 must be preserved",
                        super::weight_label(&prod)
                    )));
                }
                Self::from_lattice_basis_images(source, target, &images[..n - 1])
            }
            Family::SOEven if n == 1 => Self::from_lattice_basis_images(source, target, images),
            Family::SOEven => Err(Error::Map(format!(
                "the variables do not generate the {source} lattice; give lattice basis images"
            ))),
        }
    }

    pub fn source(&self) -> GroupType {
        self.source
    }

    pub fn target(&self) -> GroupType {
        self.target
    }

    pub fn apply_weight(&self, w: &Weight) -> Result<Weight> {
        self.source.check_same(&w.group())?;
        let v = w.lattice_coords();
        let img: Vec<i64> = self.matrix.iter().map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum()).collect();
        Weight::from_lattice_coords(self.target, &img)
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &MonomialMap) -> Result<MonomialMap> {
        if first.target != self.source {
            return Err(Error::Map(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source, self.target, first.source, first.target
            )));
        }
        let r = self.matrix.len();
        let matrix = (0..r)
            .map(|i| (0..r).map(|j| (0..r).map(|k| self.matrix[i][k] * first.matrix[k][j]).sum()).collect())
            .collect();
        Ok(MonomialMap { source: first.source, target: self.target, matrix })
    }

    pub fn inverse(&self) -> MonomialMap {
        let r = self.matrix.len();
        let mut a: Vec<Vec<BigRational>> = self
            .matrix
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut v: Vec<BigRational> = row.iter().map(|&x| BigRational::from_integer(x.into())).collect();
                v.extend((0..r).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
                v
            })
            .collect();
        for col in 0..r {
            let piv = (col..r).find(|&i| !a[i][col].is_zero()).expect("unimodular matrix is invertible");
            a.swap(col, piv);
            let p = a[col][col].clone();
            a[col].iter_mut().for_each(|x| *x /= &p);
            for i in 0..r {
                if i != col && !a[i][col].is_zero() {
                    let f = a[i][col].clone();
                    let pivot_row = a[col].clone();
                    a[i].iter_mut().zip(&pivot_row).for_each(|(x, y)| *x -= &f * y);
                }
            }
        }
        let matrix = a
            .iter()
            .map(|row| {
                row[r..]
                    .iter()
                    .map(|x| {
                        assert!(x.is_integer(), "inverse of a unimodular matrix is integral");
                        x.to_integer().to_i64().expect("small entries")
                    })
                    .collect()
            })
            .collect();
        MonomialMap { source: self.target, target: self.source, matrix }
    }

    fn determinant(&self) -> BigInt {
        let r = self.matrix.len();
        let mut m: Vec<Vec<BigRational>> =
            self.matrix.iter().map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
        let mut det = BigRational::one();
        for col in 0..r {
            let Some(piv) = (col..r).find(|&i| !m[i][col].is_zero()) else {
                return BigInt::zero();
            };
            if piv != col {
                m.swap(col, piv);
                det = -det;
            }
            let p = m[col][col].clone();
            det *= &p;
            for i in col + 1..r {
                let f = &m[i][col] / &p;
                let pivot_row = m[col].clone();
                m[i].iter_mut().zip(&pivot_row).for_each(|(x, y)| *x -= &f * y);
            }
        }
        det.to_integer()
    }
}

/// Image of `f` under the ring isomorphism induced by `map`.
pub fn substitute(f: &LaurentPoly, map: &MonomialMap) -> Result<LaurentPoly> {
    map.source.check_same(&f.group())?;
    let mut out = LaurentPoly::zero(map.target);
    for (w, c) in f.terms() {
        out.add_term(map.apply_weight(w)?, c.clone());
    }
    Ok(out)
}
