//! Extreme rays and Hilbert bases of monoids `N^m ∩ L` for a lattice `L`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::{integer_kernel, Matrix};
use crate::{Int, ZLattice, ZMatrix, ZVec};

/// Matrix whose integer kernel is the rational span of `lat` intersected
/// with `Z^m` (rows are a basis of the annihilator).
fn annihilator(lat: &ZLattice) -> ZMatrix {
    let b = lat.basis();
    integer_kernel(&b.transpose()).transpose()
}

fn l1(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |a, x| a + x.abs())
}

/// Extreme rays of the real cone `R_{>=0}^m ∩ span(lat)`, each scaled to the
/// shortest multiple lying in `lat`. Sorted lexicographically.
pub fn extreme_rays(lat: &ZLattice) -> Vec<ZVec> {
    let m = lat.ambient();
    if lat.rank() == 0 {
        return Vec::new();
    }
    assert!(m <= 20, "extreme ray enumeration is exponential in the ambient rank");
    let ann = annihilator(lat);
    let mut rays: Vec<ZVec> = Vec::new();
    // supports in order of size, so only minimal supports survive
    let mut subsets: Vec<u32> = (1..(1u32 << m)).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    let mut minimal: Vec<u32> = Vec::new();
    for s in subsets {
        if minimal.iter().any(|&t| t & s == t) {
            continue;
        }
        let cols: Vec<usize> = (0..m).filter(|&i| s >> i & 1 == 1).collect();
        let sub = ann.select_cols(&cols);
        let ker = if sub.rows() == 0 {
            Matrix::identity(cols.len())
        } else {
            integer_kernel(&sub)
        };
        if ker.cols() == 0 {
            continue;
        }
        if ker.cols() > 1 {
            // contains smaller supports; those get found on their own
            continue;
        }
        let g = ker.col(0);
        if g.iter().any(|x| x.is_zero()) {
            continue;
        }
        let pos = g.iter().all(|x| x.is_positive());
        let neg = g.iter().all(|x| x.is_negative());
        minimal.push(s);
        if !(pos || neg) {
            continue;
        }
        let mut full = vec![Int::zero(); m];
        for (k, &i) in cols.iter().enumerate() {
            full[i] = if pos { g[k].clone() } else { -g[k].clone() };
        }
        let mut k = Int::one();
        loop {
            let cand: ZVec = full.iter().map(|x| x * &k).collect();
            if lat.contains(&cand) {
                rays.push(cand);
                break;
            }
            k += 1;
        }
    }
    rays.sort();
    rays
}

/// All points of `lat ∩ N^m` with coordinate sum in `1..=bound`, sorted by
/// coordinate sum and then lexicographically.
pub fn nonnegative_points(lat: &ZLattice, bound: &Int) -> Vec<ZVec> {
    let m = lat.ambient();
    let basis = lat.basis();
    let pivots = lat.pivots().to_vec();
    let mut out = Vec::new();
    let mut y: Vec<Int> = Vec::new();
    rec(basis, &pivots, m, bound, 0, &mut y, &mut vec![Int::zero(); m], Int::zero(), &mut out);
    out.retain(|v| !v.iter().all(|x| x.is_zero()));
    out.sort_by(|a, b| l1(a).cmp(&l1(b)).then_with(|| a.cmp(b)));
    out
}

#[allow(clippy::too_many_arguments)]
fn rec(
    basis: &ZMatrix,
    pivots: &[usize],
    m: usize,
    bound: &Int,
    row: usize,
    y: &mut Vec<Int>,
    x: &mut ZVec,
    sum: Int,
    out: &mut Vec<ZVec>,
) {
    if row == m {
        out.push(x.clone());
        return;
    }
    let k = y.len();
    let partial: Int = (0..k).fold(Int::zero(), |a, j| a + basis.get(row, j) * &y[j]);
    if k < pivots.len() && pivots[k] == row {
        let p = basis.get(row, k).clone();
        // 0 <= partial + p*t <= bound - sum
        let room = bound - &sum;
        let lo = Integer::div_ceil(&(-partial.clone()), &p);
        let hi = Integer::div_floor(&(room - &partial), &p);
        let mut t = lo;
        while t <= hi {
            let v = &partial + &p * &t;
            x[row] = v.clone();
            y.push(t.clone());
            rec(basis, pivots, m, bound, row + 1, y, x, &sum + &v, out);
            y.pop();
            t += 1;
        }
    } else {
        if partial.is_negative() || &sum + &partial > *bound {
            return;
        }
        x[row] = partial.clone();
        rec(basis, pivots, m, bound, row + 1, y, x, &sum + &partial, out);
    }
}

/// Hilbert basis (unique minimal generating set) of the monoid `lat ∩ N^m`.
///
/// Candidates are enumerated up to the sum of the `rank` largest extreme
/// ray norms, which bounds every irreducible element; irreducibility is
/// tested against the irreducibles of smaller degree.
pub fn hilbert_basis(lat: &ZLattice) -> Vec<ZVec> {
    let rays = extreme_rays(lat);
    if rays.is_empty() {
        return Vec::new();
    }
    let mut norms: Vec<Int> = rays.iter().map(|r| l1(r)).collect();
    norms.sort_by(|a, b| b.cmp(a));
    let bound: Int = norms.iter().take(lat.rank()).fold(Int::zero(), |a, b| a + b);
    let mut basis: Vec<ZVec> = Vec::new();
    for p in nonnegative_points(lat, &bound) {
        let reducible = basis
            .iter()
            .any(|h| h != &p && h.iter().zip(&p).all(|(a, b)| a <= b));
        if !reducible {
            basis.push(p);
        }
    }
    basis
}

/// Indices that occur in the support of some nonzero element of `lat ∩ N^m`.
pub fn positive_support(lat: &ZLattice) -> Vec<usize> {
    let rays = extreme_rays(lat);
    (0..lat.ambient())
        .filter(|&i| rays.iter().any(|r| !r[i].is_zero()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::from_i64s;

    fn lat(gens: &[&[i64]], m: usize) -> ZLattice {
        let g: Vec<ZVec> = gens.iter().map(|v| from_i64s(v)).collect();
        ZLattice::from_generators(m, &g)
    }

    fn v(xs: &[i64]) -> ZVec {
        from_i64s(xs)
    }

    #[test]
    fn orthant_has_unit_basis() {
        let l = ZLattice::full(3);
        assert_eq!(hilbert_basis(&l), vec![v(&[0, 0, 1]), v(&[0, 1, 0]), v(&[1, 0, 0])]);
    }

    #[test]
    fn kernel_of_sum_map_pairs() {
        // {(a,b,c,d): a+b = c+d}
        let l = lat(&[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0]], 4);
        let hb = hilbert_basis(&l);
        assert_eq!(hb.len(), 4);
        assert!(hb.contains(&v(&[1, 0, 0, 1])));
        assert!(hb.contains(&v(&[0, 1, 1, 0])));
    }

    #[test]
    fn non_normal_example() {
        // even coordinate sum in N^2: basis (2,0),(1,1),(0,2)
        let l = lat(&[&[1, 1], &[2, 0]], 2);
        assert_eq!(hilbert_basis(&l), vec![v(&[0, 2]), v(&[1, 1]), v(&[2, 0])]);
    }

    #[test]
    fn line_without_positive_points() {
        let l = lat(&[&[1, -1]], 2);
        assert!(hilbert_basis(&l).is_empty());
        assert!(positive_support(&l).is_empty());
    }

    #[test]
    fn rays_of_a_wedge() {
        // span of (1,2) and (1,0) inside N^2 is all of it
        let l = lat(&[&[1, 2], &[1, 0]], 2);
        assert_eq!(extreme_rays(&l), vec![v(&[0, 2]), v(&[1, 0])]);
        assert_eq!(hilbert_basis(&l), vec![v(&[1, 0]), v(&[0, 2])]);
    }
}
