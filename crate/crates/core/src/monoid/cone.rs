use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};

use super::hilbert::{hilbert_basis, positive_support};
use crate::error::{ModelError, Result};
use crate::linalg::{dot, integer_kernel, solve_integer, vec_add, vec_sub, zero_vec, Matrix};
use crate::{Int, ZLattice, ZMatrix, ZVec};

/// A finitely generated submonoid `L + N p_1 + ... + N p_m` of `Z^n`, where
/// `L` is a lattice and the covector `functional` is zero on `L` and at
/// least 1 on every `p_i`. The functional makes membership decidable and
/// shows that `L` is the group of units.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeCone {
    lattice: ZLattice,
    pointed: Vec<ZVec>,
    functional: ZVec,
}

/// `x = sum coeffs[i] * pointed[i] + sum lattice_coords[j] * basis[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeCertificate {
    pub coeffs: Vec<u64>,
    pub lattice_coords: ZVec,
}

/// Options for computing direct images of cones.
#[derive(Clone, Debug)]
pub struct ImageOptions {
    /// Coefficient radius for the positivity-functional search.
    pub search_radius: i64,
    /// A functional supplied by the caller; verified, never trusted.
    pub functional: Option<ZVec>,
}

impl Default for ImageOptions {
    fn default() -> Self {
        ImageOptions {
            search_radius: 5,
            functional: None,
        }
    }
}

fn fmt_vec(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl FreeCone {
    /// Validates the positivity certificate.
    pub fn new(lattice: ZLattice, pointed: Vec<ZVec>, functional: ZVec) -> Result<Self> {
        let n = lattice.ambient();
        if functional.len() != n {
            return Err(ModelError::Dimension(format!(
                "functional has length {}, ambient rank is {n}",
                functional.len()
            )));
        }
        for p in &pointed {
            if p.len() != n {
                return Err(ModelError::Dimension(format!(
                    "pointed generator {} has wrong length",
                    fmt_vec(p)
                )));
            }
        }
        for u in lattice.basis_vectors() {
            if !dot(&functional, &u).is_zero() {
                return Err(ModelError::Malformed(format!(
                    "functional does not vanish on lattice vector {}",
                    fmt_vec(&u)
                )));
            }
        }
        for p in &pointed {
            if dot(&functional, p) < Int::from(1) {
                return Err(ModelError::Malformed(format!(
                    "functional is not positive on pointed generator {}",
                    fmt_vec(p)
                )));
            }
        }
        Ok(Self::normalized(lattice, pointed, functional))
    }

    fn normalized(lattice: ZLattice, pointed: Vec<ZVec>, functional: ZVec) -> Self {
        let mut seen = Vec::new();
        for p in pointed {
            let r = lattice.reduce(&p);
            if !seen.contains(&r) {
                seen.push(r);
            }
        }
        FreeCone {
            lattice,
            pointed: seen,
            functional,
        }
    }

    /// A cone that is a subgroup.
    pub fn group(lattice: ZLattice) -> Self {
        let n = lattice.ambient();
        FreeCone {
            lattice,
            pointed: Vec::new(),
            functional: zero_vec(n),
        }
    }

    pub fn zero(n: usize) -> Self {
        Self::group(ZLattice::zero(n))
    }

    pub fn full(n: usize) -> Self {
        Self::group(ZLattice::full(n))
    }

    /// The positive orthant `N^n`.
    pub fn orthant(n: usize) -> Self {
        let pointed = Matrix::identity(n).columns();
        FreeCone {
            lattice: ZLattice::zero(n),
            pointed,
            functional: vec![Int::from(1); n],
        }
    }

    pub fn ambient(&self) -> usize {
        self.lattice.ambient()
    }

    pub fn lattice(&self) -> &ZLattice {
        &self.lattice
    }

    pub fn pointed(&self) -> &[ZVec] {
        &self.pointed
    }

    pub fn functional(&self) -> &ZVec {
        &self.functional
    }

    pub fn is_group(&self) -> bool {
        self.pointed.is_empty()
    }

    /// Monoid generators: `±` each lattice basis vector, then the pointed ones.
    pub fn generators(&self) -> Vec<ZVec> {
        let mut out = Vec::new();
        for u in self.lattice.basis_vectors() {
            out.push(crate::linalg::vec_neg(&u));
            out.push(u);
        }
        out.extend(self.pointed.iter().cloned());
        out
    }

    /// The group completion `{a - b : a, b in cone}`.
    pub fn group_completion(&self) -> ZLattice {
        let mut gens = self.lattice.basis_vectors();
        gens.extend(self.pointed.iter().cloned());
        ZLattice::from_generators(self.ambient(), &gens)
    }

    /// Exact membership with a replayable certificate.
    ///
    /// Dynamic programming over the functional value: for each degree `d`
    /// keep the residues modulo the lattice reachable by pointed
    /// combinations of degree `d`.
    pub fn member(&self, x: &[Int]) -> Option<ConeCertificate> {
        assert_eq!(x.len(), self.ambient(), "element has wrong length");
        let t = dot(&self.functional, x);
        if t.is_negative() {
            return None;
        }
        let target = self.lattice.reduce(x);
        let t = t.to_usize().expect("functional value too large for search");
        let degs: Vec<usize> = self
            .pointed
            .iter()
            .map(|p| dot(&self.functional, p).to_usize().unwrap())
            .collect();
        let n = self.ambient();
        // layers[d]: residue -> (generator used, predecessor residue)
        let mut layers: Vec<HashMap<ZVec, Option<(usize, ZVec)>>> = Vec::with_capacity(t + 1);
        let mut first = HashMap::new();
        first.insert(zero_vec::<Int>(n), None);
        layers.push(first);
        for d in 1..=t {
            let mut layer: HashMap<ZVec, Option<(usize, ZVec)>> = HashMap::new();
            for (i, p) in self.pointed.iter().enumerate() {
                if degs[i] > d {
                    continue;
                }
                let prev = &layers[d - degs[i]];
                let mut keys: Vec<&ZVec> = prev.keys().collect();
                keys.sort();
                for r in keys {
                    let s = self.lattice.reduce(&vec_add(r, p));
                    layer.entry(s).or_insert_with(|| Some((i, r.clone())));
                }
            }
            layers.push(layer);
        }
        if !layers[t].contains_key(&target) {
            return None;
        }
        let mut coeffs = vec![0u64; self.pointed.len()];
        let mut d = t;
        let mut r = target;
        let mut sum = zero_vec::<Int>(n);
        while let Some(Some((i, prev))) = layers[d].get(&r).cloned() {
            coeffs[i] += 1;
            sum = vec_add(&sum, &self.pointed[i]);
            d -= degs[i];
            r = prev;
        }
        let lattice_coords = self
            .lattice
            .coords(&vec_sub(x, &sum))
            .expect("residue lies in the lattice");
        Some(ConeCertificate {
            coeffs,
            lattice_coords,
        })
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.member(x).is_some()
    }

    /// Rebuilds the element a certificate describes.
    pub fn replay(&self, cert: &ConeCertificate) -> ZVec {
        let mut x = self.lattice.basis().mul_vec(&cert.lattice_coords);
        for (c, p) in cert.coeffs.iter().zip(&self.pointed) {
            x = vec_add(&x, &crate::linalg::vec_scale(&Int::from(*c), p));
        }
        x
    }

    /// Mutual inclusion.
    pub fn same_as(&self, other: &FreeCone) -> bool {
        self.lattice == other.lattice
            && self.pointed.iter().all(|p| other.contains(p))
            && other.pointed.iter().all(|p| self.contains(p))
    }

    pub fn is_subcone_of(&self, other: &FreeCone) -> bool {
        other.lattice.contains_lattice(&self.lattice) && self.pointed.iter().all(|p| other.contains(p))
    }

    /// `self × other` in `Z^{n+n'}`.
    pub fn product(&self, other: &FreeCone) -> FreeCone {
        let n = self.ambient();
        let m = other.ambient();
        let lat = ZLattice::from_generator_matrix(&self.lattice.basis().direct_sum(other.lattice.basis()));
        let mut pointed = Vec::new();
        for p in &self.pointed {
            let mut v = p.clone();
            v.extend(zero_vec::<Int>(m));
            pointed.push(v);
        }
        for p in &other.pointed {
            let mut v = zero_vec::<Int>(n);
            v.extend(p.iter().cloned());
            pointed.push(v);
        }
        let mut functional = self.functional.clone();
        functional.extend(other.functional.iter().cloned());
        FreeCone::normalized(lat, pointed, functional)
    }

    /// `self ∩ w` for a sublattice `w`, in ambient coordinates.
    ///
    /// The pointed coefficient vectors that land in `w` (modulo the lattice
    /// part) form a monoid `N^m ∩ Λ`; its Hilbert basis, lifted back, gives
    /// the pointed generators of the intersection.
    pub fn intersect_sublattice(&self, w: &ZLattice) -> FreeCone {
        let n = self.ambient();
        assert_eq!(w.ambient(), n, "sublattice in a different ambient");
        let k = self.lattice.rank();
        let m = self.pointed.len();
        let lat = self.lattice.intersect(w);
        if m == 0 {
            return FreeCone::group(lat);
        }
        let pmat = Matrix::from_cols(&self.pointed, n);
        let gen = self.lattice.basis().hstack(&pmat);
        // S = {y : gen*y in w}
        let stacked = gen.hstack(&w.basis().neg());
        let ker = integer_kernel(&stacked);
        let top: Vec<usize> = (0..k + m).collect();
        let s = ker.select_rows(&top);
        let crows: Vec<usize> = (k..k + m).collect();
        let sc = s.select_rows(&crows);
        let coeff_lattice = ZLattice::from_generator_matrix(&sc);
        let mut pointed = Vec::new();
        for h in hilbert_basis(&coeff_lattice) {
            let t = solve_integer(&sc, &h).expect("Hilbert basis element lies in the projection");
            let y = s.mul_vec(&t);
            pointed.push(gen.mul_vec(&y));
        }
        FreeCone::normalized(lat, pointed, self.functional.clone())
    }

    /// Rewrites a cone lying in the column lattice of `basis` (whose columns
    /// are independent) in coordinates with respect to those columns.
    pub fn in_coordinates(&self, basis: &ZMatrix) -> FreeCone {
        let coord = |v: &ZVec| -> ZVec { solve_integer(basis, v).expect("vector lies in the sublattice") };
        let k = basis.cols();
        let lat_gens: Vec<ZVec> = self.lattice.basis_vectors().iter().map(coord).collect();
        let lat = ZLattice::from_generators(k, &lat_gens);
        let pointed: Vec<ZVec> = self.pointed.iter().map(coord).collect();
        let functional = basis.transpose().mul_vec(&self.functional);
        FreeCone::normalized(lat, pointed, functional)
    }

    /// Pushes the cone forward along `basis` (the inverse of `in_coordinates`).
    pub fn from_coordinates(&self, basis: &ZMatrix) -> Result<FreeCone> {
        self.image(basis, &ImageOptions::default())
    }

    /// Direct image under the linear map `a`.
    ///
    /// Images of pointed generators whose negatives are reachable are moved
    /// into the lattice part (exactly, via the positive support of the
    /// monoid of relations); then a positivity functional is taken from the
    /// options or searched for over small combinations of an integer basis
    /// of the annihilator of the lattice part.
    pub fn image(&self, a: &ZMatrix, opts: &ImageOptions) -> Result<FreeCone> {
        assert_eq!(a.cols(), self.ambient(), "map has wrong source dimension");
        let n2 = a.rows();
        let mut lat = ZLattice::from_generator_matrix(&a.mul(self.lattice.basis()));
        let q: Vec<ZVec> = self.pointed.iter().map(|p| a.mul_vec(p)).collect();
        let q: Vec<ZVec> = q.into_iter().filter(|v| !lat.contains(v)).collect();
        if !q.is_empty() {
            // relations: c in Z^m with sum c_i q_i in lat
            let m = q.len();
            let qm = Matrix::from_cols(&q, n2);
            let stacked = qm.hstack(&lat.basis().neg());
            let ker = integer_kernel(&stacked);
            let top: Vec<usize> = (0..m).collect();
            let rel = ZLattice::from_generator_matrix(&ker.select_rows(&top));
            let units = positive_support(&rel);
            if !units.is_empty() {
                let mut gens = lat.basis_vectors();
                gens.extend(units.iter().map(|&i| q[i].clone()));
                lat = ZLattice::from_generators(n2, &gens);
            }
        }
        let pointed: Vec<ZVec> = q.into_iter().filter(|v| !lat.contains(v)).collect();
        if let Some(f) = &opts.functional {
            return FreeCone::new(lat, pointed, f.clone());
        }
        if pointed.is_empty() {
            return Ok(FreeCone::group(lat));
        }
        match search_functional(&lat, &pointed, opts.search_radius) {
            Some(f) => Ok(FreeCone::normalized(lat, pointed, f)),
            None => Err(ModelError::NoFunctional(format!(
                "image cone with pointed generators {}",
                pointed.iter().map(|p| fmt_vec(p)).collect::<Vec<_>>().join(" ")
            ))),
        }
    }
}

/// Searches `λ = Σ t_j κ_j` over an integer basis `κ` of the annihilator of
/// `lat`, with `|t_j| <= radius`, for `λ·p >= 1` on every pointed vector.
/// Candidates are tried by increasing max-norm, so the answer is
/// deterministic.
pub fn search_functional(lat: &ZLattice, pointed: &[ZVec], radius: i64) -> Option<ZVec> {
    let n = lat.ambient();
    let ann = integer_kernel(&lat.basis().transpose());
    let d = ann.cols();
    if d == 0 {
        return None;
    }
    // values of each annihilator vector on the pointed generators
    let vals: Vec<Vec<Int>> = (0..d)
        .map(|j| pointed.iter().map(|p| dot(&ann.col(j), p)).collect())
        .collect();
    for r in 1..=radius {
        let mut t = vec![-r; d];
        loop {
            if t.iter().any(|x| x.abs() == r) {
                let ok = (0..pointed.len()).all(|i| {
                    let s = (0..d).fold(Int::zero(), |acc, j| acc + Int::from(t[j]) * &vals[j][i]);
                    s >= Int::from(1)
                });
                if ok {
                    let tv: ZVec = t.iter().map(|&x| Int::from(x)).collect();
                    let f = ann.mul_vec(&tv);
                    debug_assert_eq!(f.len(), n);
                    return Some(f);
                }
            }
            // odometer
            let mut i = 0;
            while i < d {
                if t[i] < r {
                    t[i] += 1;
                    break;
                }
                t[i] = -r;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    None
}

impl fmt::Debug for FreeCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.lattice)?;
        let ps: Vec<String> = self.pointed.iter().map(|p| fmt_vec(p)).collect();
        write!(f, " + N{{{}}} [λ={}]", ps.join(","), fmt_vec(&self.functional))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::from_i64s;

    fn v(xs: &[i64]) -> ZVec {
        from_i64s(xs)
    }

    fn cone(lat: &[&[i64]], pointed: &[&[i64]], f: &[i64]) -> FreeCone {
        let n = f.len();
        let l = ZLattice::from_generators(n, &lat.iter().map(|x| v(x)).collect::<Vec<_>>());
        FreeCone::new(l, pointed.iter().map(|x| v(x)).collect(), v(f)).unwrap()
    }

    #[test]
    fn membership_examples() {
        let c = cone(&[], &[&[1, 0], &[1, 1]], &[1, 0]);
        let cert = c.member(&v(&[2, 1])).unwrap();
        assert_eq!(c.replay(&cert), v(&[2, 1]));
        assert!(c.contains(&v(&[0, 0])));
        assert!(!c.contains(&v(&[0, 1])));
    }

    #[test]
    fn bad_certificate_is_rejected() {
        let l = ZLattice::zero(1);
        assert!(FreeCone::new(l.clone(), vec![v(&[-1])], v(&[1])).is_err());
        let l2 = ZLattice::full(1);
        assert!(FreeCone::new(l2, vec![], v(&[1])).is_err());
    }

    #[test]
    fn fiber_product_of_sum_map() {
        // {(x, y) in N^2 x N^2 : x1+x2 = y1+y2}
        let c = FreeCone::orthant(2).product(&FreeCone::orthant(2));
        let w = ZLattice::from_generators(4, &[v(&[1, 0, 1, 0]), v(&[1, 0, 0, 1]), v(&[0, 1, 1, 0])]);
        let f = c.intersect_sublattice(&w);
        assert_eq!(f.pointed().len(), 4);
        assert!(f.contains(&v(&[2, 1, 0, 3])));
        assert!(!f.contains(&v(&[1, 0, 0, 0])));
    }

    #[test]
    fn image_saturates_units() {
        // N x Z projected to first coordinate is N; projected to second is Z
        let c = cone(&[&[0, 1]], &[&[1, 0]], &[1, 0]);
        let p1 = ZMatrix::from_i64(&[&[1, 0]], 2);
        let im = c.image(&p1, &ImageOptions::default()).unwrap();
        assert!(im.contains(&v(&[3])) && !im.contains(&v(&[-1])));
        let p2 = ZMatrix::from_i64(&[&[0, 1]], 2);
        assert!(c.image(&p2, &ImageOptions::default()).unwrap().contains(&v(&[-4])));
        // N^2 under (a,b) -> a-b is all of Z
        let d = ZMatrix::from_i64(&[&[1, -1]], 2);
        let im = FreeCone::orthant(2).image(&d, &ImageOptions::default()).unwrap();
        assert!(im.is_group() && im.contains(&v(&[-3])));
        // 2 and -3 generate Z as a monoid
        let e = cone(&[], &[&[1, 0], &[0, 1]], &[1, 1]);
        let m = ZMatrix::from_i64(&[&[2, -3]], 2);
        assert!(e.image(&m, &ImageOptions::default()).unwrap().is_group());
    }

    #[test]
    fn coordinates_round_trip() {
        let c = FreeCone::orthant(2);
        let diag = ZMatrix::from_i64(&[&[1], &[1]], 1);
        let w = ZLattice::from_generator_matrix(&diag);
        let d = c.intersect_sublattice(&w).in_coordinates(&diag);
        assert_eq!(d.ambient(), 1);
        assert!(d.contains(&v(&[5])) && !d.contains(&v(&[-1])));
    }
}
