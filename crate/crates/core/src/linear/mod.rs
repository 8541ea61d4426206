//! Linear and affine systems: matrix extraction, minimal polynomials, the
//! Fitting decomposition, and closed-form cycle structure.

mod matrix;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

pub use matrix::MatrixGF;

use crate::error::{Error, Result};
use crate::gf::{divisors, mobius, order, Field, UPoly};
use crate::multipoly::MPoly;
use crate::phase::{PhaseSpace, TreeShape};
use crate::system::{System, UpdateMode};

/// Reads `Φ(x) = A x + b` off a system whose locals all have degree <= 1.
pub fn as_linear(system: &System) -> Result<(MatrixGF, Vec<u32>)> {
    let field = system.field();
    let n = system.n();
    let mut a = MatrixGF::zeros(field, n, n);
    let mut b = vec![0; n];
    for (i, f) in system.locals().iter().enumerate() {
        if f.degree().unwrap_or(0) > 1 {
            return Err(Error::NotAffine(i + 1));
        }
        let mut exps = vec![0; n];
        b[i] = f.coeff(&exps);
        for j in 0..n {
            exps[j] = 1;
            a.set(i, j, f.coeff(&exps));
            exps[j] = 0;
        }
    }
    Ok((a, b))
}

/// The affine system `x -> A x + b` as a [`System`].
pub fn linear_system(a: &MatrixGF, b: &[u32]) -> Result<System> {
    let n = a.rows();
    if !a.is_square() || b.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "matrix {}x{} with offset of length {}",
            a.rows(),
            a.cols(),
            b.len()
        )));
    }
    let field = a.field();
    let locals = (0..n)
        .map(|i| {
            (0..n).fold(MPoly::constant(field, n, b[i]), |acc, j| {
                acc.add(&MPoly::var(field, n, j).scale(a.get(i, j)))
            })
        })
        .collect();
    System::new(field, locals)
}

/// The square block matrix `[[A, b], [0, 1]]`.
pub fn affine_embed(a: &MatrixGF, b: &[u32]) -> Result<MatrixGF> {
    let n = a.rows();
    if !a.is_square() || b.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "matrix {}x{} with offset of length {}",
            a.rows(),
            a.cols(),
            b.len()
        )));
    }
    let mut m = MatrixGF::zeros(a.field(), n + 1, n + 1);
    for (i, &bi) in b.iter().enumerate() {
        for j in 0..n {
            m.set(i, j, a.get(i, j));
        }
        m.set(i, n, bi);
    }
    m.set(n, n, 1);
    Ok(m)
}

/// Minimal polynomial, from the first linear dependency among the
/// flattened powers `I, A, A^2, ...`.
pub fn min_poly(a: &MatrixGF) -> Result<UPoly> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} is not square",
            a.rows(),
            a.cols()
        )));
    }
    let field = a.field();
    let m = a.rows();
    let mut powers: Vec<Vec<u32>> = Vec::new();
    let mut cur = MatrixGF::identity(field, m);
    loop {
        powers.push(cur.entries().to_vec());
        let k = powers.len() - 1;
        let krylov = MatrixGF::from_columns(field, m * m, &powers);
        // earlier powers are independent, so the kernel is at most a line
        // and its vector has a nonzero last coordinate
        if let Some(v) = krylov.kernel().into_iter().next() {
            let inv = field.inv(v[k])?;
            let coeffs = v.iter().map(|&c| field.mul(c, inv)).collect();
            return Ok(UPoly::from_residues(field, coeffs));
        }
        cur = cur.mul(a)?;
    }
}

/// Evaluates a polynomial at a square matrix.
pub fn eval_at_matrix(poly: &UPoly, a: &MatrixGF) -> Result<MatrixGF> {
    let mut acc = MatrixGF::zeros(a.field(), a.rows(), a.cols());
    let id = MatrixGF::identity(a.field(), a.rows());
    for &c in poly.coeffs().iter().rev() {
        acc = acc.mul(a)?.add(&id.scale(c))?;
    }
    Ok(acc)
}

/// `A` split as `im(A^m) ⊕ ker(A^m)` with `m` the dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fitting {
    /// Columns: a basis of `im(A^m)` followed by a basis of `ker(A^m)`.
    pub basis: MatrixGF,
    /// `A` restricted to `im(A^m)`; invertible.
    pub invertible: MatrixGF,
    /// `A` restricted to `ker(A^m)`; nilpotent.
    pub nilpotent: MatrixGF,
}

pub fn fitting_decomposition(a: &MatrixGF) -> Result<Fitting> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} is not square",
            a.rows(),
            a.cols()
        )));
    }
    let m = a.rows();
    let am = a.pow(m as u128)?;
    let mut cols = am.image();
    let r = cols.len();
    cols.extend(am.kernel());
    let basis = MatrixGF::from_columns(a.field(), m, &cols);
    let inv = basis
        .inverse()
        .expect("image and kernel of A^m are complementary");
    let conj = inv.mul(a)?.mul(&basis)?;
    Ok(Fitting {
        invertible: conj.block(0..r, 0..r),
        nilpotent: conj.block(r..m, r..m),
        basis,
    })
}

/// Cycle counts and transient profile of a linear map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleStructure {
    pub field: Field,
    pub invertible_dim: usize,
    pub nilpotent_dim: usize,
    /// Every cycle length divides this (the order of the invertible part's
    /// minimal polynomial, or 1 when that part is trivial).
    pub period_bound: u128,
    /// Cycle length -> number of cycles.
    pub cycles: BTreeMap<u128, BigUint>,
    /// `dim ker(N^j)` for `j = 1..` until it reaches `nilpotent_dim`.
    pub tree_profile: Vec<usize>,
}

impl CycleStructure {
    pub fn periodic_states(&self) -> BigUint {
        self.cycles
            .iter()
            .map(|(&len, count)| count * BigUint::from(len))
            .sum()
    }

    pub fn fixed_points(&self) -> BigUint {
        self.cycles.get(&1).cloned().unwrap_or_default()
    }

    /// Expected number of nodes at each depth of every transient tree,
    /// root included: `p^{k_j} - p^{k_{j-1}}` with `k_0 = 0`.
    pub fn tree_level_sizes(&self) -> Vec<BigUint> {
        let p = BigUint::from(self.field.modulus());
        let mut out = vec![BigUint::one()];
        let mut prev = BigUint::one();
        for &k in &self.tree_profile {
            let cur = p.pow(k as u32);
            out.push(&cur - &prev);
            prev = cur;
        }
        out
    }
}

impl fmt::Display for CycleStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "length count")?;
        for (len, count) in &self.cycles {
            writeln!(f, "{len} {count}")?;
        }
        let profile: Vec<String> = self.tree_profile.iter().map(usize::to_string).collect();
        write!(f, "tree profile: {}", profile.join(" ≤ "))
    }
}

/// Cycle structure without enumerating states.
///
/// For the invertible part `B` with `s = order(minpoly(B))`, the states of
/// period dividing `d` form `ker(B^d - I)`. Möbius inversion over the
/// divisors of `s` turns those counts into exact-period counts.
pub fn predict_cycle_structure(a: &MatrixGF) -> Result<CycleStructure> {
    let field = a.field();
    let fit = fitting_decomposition(a)?;
    let b = &fit.invertible;
    let r = b.rows();
    let p = BigUint::from(field.modulus());

    let mut cycles = BTreeMap::new();
    let period_bound = if r == 0 {
        cycles.insert(1, BigUint::one());
        1
    } else {
        let s = order(&min_poly(b)?)?;
        let id = MatrixGF::identity(field, r);
        let divs = divisors(s);
        let mut dividing: BTreeMap<u128, BigInt> = BTreeMap::new();
        for &d in &divs {
            let k = b.pow(d)?.sub(&id)?.kernel().len();
            dividing.insert(d, BigInt::from(p.pow(k as u32)));
        }
        for &d in &divs {
            let exact: BigInt = divisors(d)
                .into_iter()
                .map(|e| &dividing[&e] * mobius(d / e))
                .sum();
            debug_assert!(!exact.is_negative());
            if !exact.is_zero() {
                let count = exact.magnitude() / BigUint::from(d);
                cycles.insert(d, count);
            }
        }
        s
    };

    let n = &fit.nilpotent;
    let mut tree_profile = Vec::new();
    let mut power = MatrixGF::identity(field, n.rows());
    while tree_profile.last().copied().unwrap_or(0) < n.rows() {
        power = power.mul(n)?;
        tree_profile.push(power.kernel().len());
    }

    Ok(CycleStructure {
        field,
        invertible_dim: r,
        nilpotent_dim: n.rows(),
        period_bound,
        cycles,
        tree_profile,
    })
}

/// Cycle counts of the affine map `x -> A x + b`, read from the embedded
/// matrix: the slice with last coordinate 0 carries `A` itself, and each of
/// the `p - 1` nonzero slices is conjugate to the affine map by scaling.
pub fn predict_affine_cycles(a: &MatrixGF, b: &[u32]) -> Result<BTreeMap<u128, BigUint>> {
    let embedded = predict_cycle_structure(&affine_embed(a, b)?)?;
    let linear = predict_cycle_structure(a)?;
    let slices = BigUint::from(a.field().modulus() - 1);
    let mut out = BTreeMap::new();
    for (len, count) in embedded.cycles {
        let base = linear.cycles.get(&len).cloned().unwrap_or_default();
        let rest = count - base;
        if !rest.is_zero() {
            out.insert(len, rest / &slices);
        }
    }
    Ok(out)
}

/// Cycle counts of an enumerated phase space, in the same shape as the
/// prediction.
pub fn enumerated_cycles(ps: &PhaseSpace) -> BTreeMap<u128, BigUint> {
    ps.cycle_counts()
        .into_iter()
        .map(|(len, count)| (len as u128, BigUint::from(count)))
        .collect()
}

/// Outcome of checking transient trees against enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeReport {
    /// All trees at periodic states are isomorphic.
    pub isomorphic: bool,
    /// Shape of the tree at the origin (a fixed point of every linear map).
    pub shape: TreeShape,
    /// The origin's level sizes match the kernel-dimension profile.
    pub matches_profile: bool,
}

/// Enumerates the phase space of `x -> A x` and inspects its transient trees.
pub fn verify_transient_trees(a: &MatrixGF, budget: usize) -> Result<TreeReport> {
    let system = linear_system(a, &vec![0; a.rows()])?;
    let ps = PhaseSpace::enumerate(&system, &UpdateMode::Parallel, budget)?;
    let trees = ps.transient_trees();
    let shape = trees[&0].clone();
    let isomorphic = trees.values().all(|t| t.code == shape.code);
    let predicted = predict_cycle_structure(a)?.tree_level_sizes();
    let observed: Vec<BigUint> = shape
        .level_sizes
        .iter()
        .map(|&c| BigUint::from(c))
        .collect();
    Ok(TreeReport {
        isomorphic,
        matches_profile: predicted == observed,
        shape,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::parse_polynomial;
    use crate::system::DEFAULT_BUDGET;

    fn gf2() -> Field {
        Field::boolean()
    }

    fn mat(rows: &[&[i64]]) -> MatrixGF {
        MatrixGF::from_rows(gf2(), rows.iter().map(|r| r.to_vec())).unwrap()
    }

    fn big(pairs: &[(u128, u32)]) -> BTreeMap<u128, BigUint> {
        pairs.iter().map(|&(l, c)| (l, BigUint::from(c))).collect()
    }

    fn runex() -> System {
        let f = gf2();
        let locals = ["x1+x2+x3+x4", "x1+x2", "x1+x3", "x1+x4"]
            .iter()
            .map(|t| parse_polynomial(f, 4, t, &[]).unwrap())
            .collect();
        System::new(f, locals).unwrap()
    }

    #[test]
    fn extraction() {
        let (a, b) = as_linear(&runex()).unwrap();
        assert_eq!(
            a,
            mat(&[&[1, 1, 1, 1], &[1, 1, 0, 0], &[1, 0, 1, 0], &[1, 0, 0, 1]])
        );
        assert_eq!(b, vec![0; 4]);

        let f = gf2();
        let s = System::new(f, vec![parse_polynomial(f, 1, "x1+1", &[]).unwrap()]).unwrap();
        assert_eq!(as_linear(&s).unwrap(), (mat(&[&[1]]), vec![1]));

        let s = System::new(f, vec![parse_polynomial(f, 2, "x1*x2", &[]).unwrap(); 2]).unwrap();
        assert_eq!(as_linear(&s), Err(Error::NotAffine(1)));
    }

    #[test]
    fn embedding() {
        let e = affine_embed(&mat(&[&[1]]), &[1]).unwrap();
        assert_eq!(e, mat(&[&[1, 1], &[0, 1]]));
        assert_eq!(e.mul_vec(&[0, 1]).unwrap(), vec![1, 1]);
        assert_eq!(e.mul_vec(&[1, 1]).unwrap(), vec![0, 1]);
        assert!(affine_embed(&mat(&[&[1]]), &[1, 0]).is_err());
        let id = MatrixGF::identity(gf2(), 2);
        assert_eq!(
            affine_embed(&id, &[0, 0]).unwrap(),
            MatrixGF::identity(gf2(), 3)
        );
    }

    #[test]
    fn minimal_polynomials() {
        let f = gf2();
        assert_eq!(
            min_poly(&MatrixGF::identity(f, 2)).unwrap(),
            UPoly::new(f, [1, 1])
        );
        assert_eq!(
            min_poly(&mat(&[&[0, 1], &[1, 1]])).unwrap(),
            UPoly::new(f, [1, 1, 1])
        );
        assert_eq!(min_poly(&MatrixGF::zeros(f, 3, 3)).unwrap(), UPoly::x(f));
        let (a, _) = as_linear(&runex()).unwrap();
        let mu = min_poly(&a).unwrap();
        assert!(eval_at_matrix(&mu, &a).unwrap().is_zero());
    }

    #[test]
    fn fitting_splits() {
        let inv = fitting_decomposition(&mat(&[&[0, 1], &[1, 1]])).unwrap();
        assert_eq!((inv.invertible.rows(), inv.nilpotent.rows()), (2, 0));
        let nil = fitting_decomposition(&mat(&[&[0, 1], &[0, 0]])).unwrap();
        assert_eq!((nil.invertible.rows(), nil.nilpotent.rows()), (0, 2));
        let a = mat(&[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 1]]);
        let fit = fitting_decomposition(&a).unwrap();
        assert_eq!((fit.invertible.rows(), fit.nilpotent.rows()), (2, 2));
        assert!(fit.invertible.inverse().is_some());
        assert!(fit.nilpotent.pow(2).unwrap().is_zero());
    }

    #[test]
    fn predicted_structures() {
        let s = predict_cycle_structure(&mat(&[&[0, 1], &[1, 1]])).unwrap();
        assert_eq!(s.cycles, big(&[(1, 1), (3, 1)]));
        assert_eq!(s.period_bound, 3);
        assert!(s.tree_profile.is_empty());

        let (a, _) = as_linear(&runex()).unwrap();
        let s = predict_cycle_structure(&a).unwrap();
        assert_eq!(s.fixed_points(), BigUint::from(4u32));
        let ps = PhaseSpace::enumerate(&runex(), &UpdateMode::Parallel, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.cycles, enumerated_cycles(&ps));

        let f3 = Field::new(3).unwrap();
        let s = predict_cycle_structure(&MatrixGF::identity(f3, 3)).unwrap();
        assert_eq!(s.cycles, big(&[(1, 27)]));
    }

    #[test]
    fn affine_cycles() {
        let a = mat(&[&[1]]);
        assert_eq!(predict_affine_cycles(&a, &[1]).unwrap(), big(&[(2, 1)]));
        let f3 = Field::new(3).unwrap();
        let a = MatrixGF::identity(f3, 1);
        // x -> x + 1 over GF(3): a single 3-cycle
        assert_eq!(predict_affine_cycles(&a, &[1]).unwrap(), big(&[(3, 1)]));
    }

    #[test]
    fn trees() {
        let (a, _) = as_linear(&runex()).unwrap();
        let report = verify_transient_trees(&a, DEFAULT_BUDGET).unwrap();
        assert!(report.isomorphic && report.matches_profile);
        let report = verify_transient_trees(&mat(&[&[0, 1], &[1, 1]]), DEFAULT_BUDGET).unwrap();
        assert!(report.isomorphic);
        assert_eq!(report.shape.size(), 1);
    }

    #[test]
    fn display_table() {
        let s = predict_cycle_structure(&mat(&[&[0, 1, 0], &[1, 1, 0], &[0, 0, 0]])).unwrap();
        assert_eq!(s.to_string(), "length count\n1 1\n3 1\ntree profile: 1");
    }
}
