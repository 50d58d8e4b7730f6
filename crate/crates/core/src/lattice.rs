//! Lattices given by Gram matrices, their sublattices and elementary invariants.

use crate::linalg::{self, Mat, QMat};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramLattice {
    pub gram: Mat,
    pub name: Option<String>,
    pub basis_tag: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub rank: usize,
    pub det: String,
    pub even: bool,
    pub signature: (usize, usize),
}

/// A sublattice given by generator rows in the ambient basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    pub rows: Mat,
    pub primitive: bool,
}

impl Sublattice {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    name: Option<String>,
    gram: Vec<Vec<i64>>,
}

impl GramLattice {
    pub fn new(gram: Mat) -> Result<Self> {
        if !linalg::is_symmetric(&gram) {
            return Err(Error::NotSymmetric);
        }
        if linalg::det(&gram).is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(GramLattice { gram, name: None, basis_tag: None })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(linalg::from_i64(rows))
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn tagged(mut self, tag: &str) -> Self {
        self.basis_tag = Some(tag.to_string());
        self
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn det(&self) -> BigInt {
        linalg::det(&self.gram)
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[i][i].is_even())
    }

    pub fn signature(&self) -> (usize, usize) {
        let (p, n, _) = linalg::inertia(&self.gram);
        (p, n)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature().1 == 0
    }

    pub fn is_negative_definite(&self) -> bool {
        self.signature().0 == 0
    }

    pub fn invariants(&self) -> Invariants {
        Invariants { rank: self.rank(), det: self.det().to_string(), even: self.is_even(), signature: self.signature() }
    }

    pub fn pair(&self, u: &[BigInt], v: &[BigInt]) -> BigInt {
        linalg::dot(&linalg::vec_mat(u, &self.gram), v)
    }

    pub fn norm(&self, v: &[BigInt]) -> BigInt {
        self.pair(v, v)
    }

    pub fn divisibility(&self, v: &[BigInt]) -> Result<BigInt> {
        if v.len() != self.rank() {
            return Err(Error::Dimension(format!("vector of length {} in rank {}", v.len(), self.rank())));
        }
        if v.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroVector);
        }
        Ok(linalg::gcd_all(&linalg::vec_mat(v, &self.gram)))
    }

    /// Inverse Gram: row i holds the coordinates of the i-th dual basis vector, and it is also the dual Gram.
    pub fn dual_gram(&self) -> QMat {
        linalg::inverse(&self.gram).expect("nondegenerate")
    }

    pub fn scaled(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invalid("rescaling by 0".into()));
        }
        let mut out = GramLattice::new(linalg::scale(&self.gram, &BigInt::from(k)))?;
        out.name = self.name.as_ref().map(|n| format!("{}({})", n, k));
        Ok(out)
    }

    pub fn negated(&self) -> Self {
        let mut out = self.scaled(-1).expect("nonzero");
        out.name = self.name.clone();
        out
    }

    pub fn direct_sum(parts: &[&GramLattice]) -> Self {
        let grams: Vec<&Mat> = parts.iter().map(|p| &p.gram).collect();
        let name = parts.iter().map(|p| p.name.clone().unwrap_or_else(|| "?".into())).collect::<Vec<_>>().join("+");
        GramLattice { gram: linalg::block_diag(&grams), name: Some(name), basis_tag: None }
    }

    pub fn oplus(&self, other: &GramLattice) -> Self {
        Self::direct_sum(&[self, other])
    }

    /// Gram of the span of `rows`.
    pub fn restrict(&self, rows: &Mat) -> Mat {
        linalg::congruent(rows, &self.gram)
    }

    /// Lattice spanned by `rows` (must be nondegenerate).
    pub fn sublattice(&self, rows: &Mat) -> Result<GramLattice> {
        GramLattice::new(self.restrict(rows))
    }

    pub fn saturate(&self, gens: &Mat) -> Sublattice {
        let rows = linalg::saturate(gens, self.rank());
        Sublattice { rows, primitive: true }
    }

    pub fn orthogonal_complement(&self, rows: &Mat) -> Sublattice {
        if rows.is_empty() {
            return Sublattice { rows: linalg::identity(self.rank()), primitive: true };
        }
        let m = linalg::mul(&self.gram, &linalg::transpose(rows));
        Sublattice { rows: linalg::left_kernel(&m), primitive: true }
    }

    /// True iff the quotient by the row span is torsion-free.
    pub fn is_primitive(&self, rows: &Mat) -> bool {
        let f = linalg::invariant_factors(rows);
        f.iter().all(|x| x.is_one())
    }

    pub fn to_json(&self) -> String {
        let gram = linalg::to_i64(&self.gram).expect("gram entries fit in i64");
        serde_json::to_string(&LatticeJson { name: self.name.clone(), gram }).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: LatticeJson = serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))?;
        let mut l = GramLattice::from_rows(&j.gram)?;
        l.name = j.name;
        Ok(l)
    }

    pub fn gram_i64(&self) -> Option<Vec<Vec<i64>>> {
        linalg::to_i64(&self.gram)
    }

    /// Largest absolute diagonal entry.
    pub fn max_diag(&self) -> BigInt {
        (0..self.rank()).map(|i| self.gram[i][i].abs()).max().unwrap_or_else(BigInt::zero)
    }

    pub fn abs_det_u64(&self) -> Option<u64> {
        self.det().abs().to_u64()
    }
}

pub fn v(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> GramLattice {
        GramLattice::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn hyperbolic_plane() {
        let l = u();
        let inv = l.invariants();
        assert_eq!(inv.rank, 2);
        assert_eq!(inv.det, "-1");
        assert!(inv.even);
        assert_eq!(inv.signature, (1, 1));
        assert_eq!(l.divisibility(&v(&[1, 0])).unwrap(), BigInt::one());
        assert!(l.divisibility(&v(&[0, 0])).is_err());
        assert_eq!(linalg::from_q(&l.dual_gram()).unwrap(), l.gram);
    }

    #[test]
    fn degenerate_rejected() {
        assert_eq!(GramLattice::from_rows(&[vec![1, 1], vec![1, 1]]), Err(Error::Degenerate));
    }

    #[test]
    fn saturation_and_complement() {
        let l = u();
        let s = l.saturate(&linalg::from_i64(&[vec![2, 0]]));
        assert_eq!(s.rows, linalg::from_i64(&[vec![1, 0]]));
        let c = l.orthogonal_complement(&linalg::identity(2));
        assert!(c.is_zero());
    }

    #[test]
    fn rescale() {
        let a2 = GramLattice::from_rows(&[vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(a2.scaled(3).unwrap().det(), BigInt::from(27));
        assert!(a2.scaled(0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let l = u().named("U");
        let s = l.to_json();
        assert_eq!(GramLattice::from_json(&s).unwrap(), l);
    }
}
