//! Root data: Cartan matrices, weights in Dynkin coordinates, dominance
//! order and `ρ∨` pairings, all over exact rationals.
//!
//! Conventions. Colors are indexed `1..=rank` in user-facing interfaces and
//! `0..rank` internally. A [`Weight`] stores the Dynkin coordinates
//! `coords[i] = ⟨λ, α_i^∨⟩`. The Cartan matrix is stored so that
//! `cartan[i][j] = ⟨α_j, α_i^∨⟩`; equivalently, column `j` holds the Dynkin
//! coordinates of the simple root `α_j`. For the simply-laced types used
//! throughout the test corpus the matrix is symmetric and the two common
//! orientations coincide.

use std::fmt;

use crate::error::Error;
use crate::rational::Rat;
use crate::Result;

/// A weight in Dynkin coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Weight {
        Weight(vec![0; rank])
    }

    /// The i-th fundamental weight (0-based), i.e. the standard basis vector.
    pub fn fundamental(rank: usize, i: usize) -> Weight {
        let mut c = vec![0; rank];
        c[i] = 1;
        Weight(c)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Sum of the Dynkin coordinates; used to bound test corpora.
    pub fn coord_sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        assert_eq!(self.rank(), other.rank());
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        assert_eq!(self.rank(), other.rank());
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Restriction to a sub-index-set (0-based, strictly increasing).
    pub fn project(&self, indices: &[usize]) -> Weight {
        Weight(indices.iter().map(|&i| self.0[i]).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Whether dominance-order coefficients may be rational or must be integral.
///
/// Within a single connected crystal the two modes agree, because weight
/// differences there lie in the integer root lattice.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum DominanceMode {
    #[default]
    Rational,
    Integral,
}

/// A validated semisimple root datum.
#[derive(Clone, PartialEq, Eq)]
pub struct RootDatum {
    cartan: Vec<Vec<i64>>,
    cartan_inverse: Vec<Vec<Rat>>,
}

impl RootDatum {
    /// Validates and stores a Cartan matrix together with its exact inverse.
    pub fn new(cartan: Vec<Vec<i64>>) -> Result<RootDatum> {
        let n = cartan.len();
        if n == 0 {
            return Err(Error::InvalidCartan("empty matrix".into()));
        }
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidCartan(format!(
                    "row {} has length {}, expected {}",
                    i + 1,
                    row.len(),
                    n
                )));
            }
            if row[i] != 2 {
                return Err(Error::InvalidCartan(format!(
                    "diagonal entry a_{{{i},{i}}} = {} (must be 2)",
                    row[i],
                    i = i + 1
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    if cartan[i][j] > 0 {
                        return Err(Error::InvalidCartan(format!(
                            "off-diagonal entry a_{{{},{}}} = {} (must be <= 0)",
                            i + 1,
                            j + 1,
                            cartan[i][j]
                        )));
                    }
                    if (cartan[i][j] == 0) != (cartan[j][i] == 0) {
                        return Err(Error::InvalidCartan(format!(
                            "zero pattern asymmetric at ({},{})",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        let cartan_inverse = invert(&cartan)
            .ok_or_else(|| Error::InvalidCartan("matrix is singular over the rationals".into()))?;
        Ok(RootDatum {
            cartan,
            cartan_inverse,
        })
    }

    /// The standard Cartan matrix of a simple type, e.g. `"A3"` or `"G2"`.
    pub fn from_type(name: &str) -> Result<RootDatum> {
        let name = name.trim();
        let (letter, digits) = name.split_at(1);
        let n: usize = digits
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad type name {name:?}")))?;
        if n == 0 {
            return Err(Error::InvalidArgument(format!("bad type name {name:?}")));
        }
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..n {
            m[i][i] = 2;
            if i + 1 < n {
                m[i][i + 1] = -1;
                m[i + 1][i] = -1;
            }
        }
        match (letter, n) {
            ("A" | "a", _) => {}
            ("B" | "b", n) if n >= 2 => m[n - 1][n - 2] = -2,
            ("C" | "c", n) if n >= 2 => m[n - 2][n - 1] = -2,
            ("D" | "d", n) if n >= 3 => {
                m[n - 1][n - 2] = 0;
                m[n - 2][n - 1] = 0;
                m[n - 1][n - 3] = -1;
                m[n - 3][n - 1] = -1;
            }
            ("E" | "e", 6..=8) => {
                // Bourbaki numbering: node 2 hangs off node 4.
                for row in m.iter_mut() {
                    row.fill(0);
                }
                for i in 0..n {
                    m[i][i] = 2;
                }
                let chain = [0, 2, 3, 4, 5, 6, 7];
                for w in chain[..n - 1].windows(2) {
                    m[w[0]][w[1]] = -1;
                    m[w[1]][w[0]] = -1;
                }
                m[1][3] = -1;
                m[3][1] = -1;
            }
            ("F" | "f", 4) => m[2][1] = -2,
            ("G" | "g", 2) => m[0][1] = -3,
            _ => return Err(Error::InvalidArgument(format!("unsupported type {name:?}"))),
        }
        RootDatum::new(m)
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_inverse(&self) -> &[Vec<Rat>] {
        &self.cartan_inverse
    }

    /// The simple root `α_j` (0-based) in Dynkin coordinates.
    pub fn simple_root(&self, j: usize) -> Weight {
        Weight((0..self.rank()).map(|i| self.cartan[i][j]).collect())
    }

    /// The sub-datum on a set of node indices (0-based, strictly increasing).
    pub fn levi(&self, indices: &[usize]) -> Result<RootDatum> {
        let sub: Vec<Vec<i64>> = indices
            .iter()
            .map(|&i| indices.iter().map(|&j| self.cartan[i][j]).collect())
            .collect();
        RootDatum::new(sub)
    }

    fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: w.rank(),
            });
        }
        Ok(())
    }

    /// Coefficients `c` with `w = Σ c_j α_j`, solved exactly.
    pub fn root_coefficients(&self, w: &Weight) -> Result<Vec<Rat>> {
        self.check_rank(w)?;
        // coords(w)[i] = Σ_j c_j * cartan[i][j], so c = cartan⁻¹ · coords(w).
        Ok((0..self.rank())
            .map(|r| {
                (0..self.rank())
                    .map(|k| &self.cartan_inverse[r][k] * Rat::from_int(w.0[k]))
                    .sum()
            })
            .collect())
    }

    /// `μ ≤ λ` in dominance order: `λ − μ` is a non-negative combination of
    /// simple roots, with rational or integral coefficients per `mode`.
    pub fn dominance_leq(&self, mu: &Weight, lam: &Weight, mode: DominanceMode) -> Result<bool> {
        let coeffs = self.root_coefficients(&lam.sub(mu))?;
        Ok(coeffs.iter().all(|c| {
            !c.is_negative()
                && match mode {
                    DominanceMode::Rational => true,
                    DominanceMode::Integral => c.is_integer(),
                }
        }))
    }

    /// Strict dominance `μ < λ` (rational mode).
    pub fn dominance_lt(&self, mu: &Weight, lam: &Weight) -> Result<bool> {
        Ok(mu != lam && self.dominance_leq(mu, lam, DominanceMode::Rational)?)
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        w.0.iter().all(|&c| c >= 0)
    }

    /// `⟨λ, 2ρ∨⟩` where `ρ∨` is the half-sum of positive coroots.
    ///
    /// Equals `2 Σ_j c_j` for `λ = Σ c_j α_j`, since `⟨α_j, ρ∨⟩ = 1`.
    pub fn two_rho_pairing(&self, w: &Weight) -> Result<Rat> {
        let coeffs = self.root_coefficients(w)?;
        Ok(coeffs.into_iter().sum::<Rat>() * Rat::from_int(2))
    }

    /// `⟨λ₁+λ₂+λ₃, ρ∨⟩`, the expected dimension of a convolution stratum.
    pub fn lusztig_bound(&self, l1: &Weight, l2: &Weight, l3: &Weight) -> Result<Rat> {
        for w in [l1, l2, l3] {
            if !self.is_dominant(w) {
                return Err(Error::NotDominant(w.to_string()));
            }
        }
        let sum = l1.add(l2).add(l3);
        Ok(self.two_rho_pairing(&sum)? / Rat::from_int(2))
    }

    /// Positive roots in simple-root coordinates, by reflection closure.
    /// Fails for non-finite (e.g. indefinite) Cartan matrices.
    pub fn positive_roots(&self) -> Result<Vec<Vec<i64>>> {
        positive_roots_of(&self.cartan)
    }

    /// Positive coroots in simple-coroot coordinates (the dual system).
    pub fn positive_coroots(&self) -> Result<Vec<Vec<i64>>> {
        let n = self.rank();
        let transposed: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| self.cartan[j][i]).collect())
            .collect();
        positive_roots_of(&transposed)
    }

    /// Weyl dimension of the irreducible representation with highest weight
    /// `λ`: the product over positive coroots `β∨` of `⟨λ+ρ, β∨⟩ / ⟨ρ, β∨⟩`.
    pub fn weyl_dim(&self, lam: &Weight) -> Result<u64> {
        self.check_rank(lam)?;
        if !self.is_dominant(lam) {
            return Err(Error::NotDominant(lam.to_string()));
        }
        let mut dim = Rat::one();
        for beta in self.positive_coroots()? {
            let numer: i64 = beta.iter().zip(&lam.0).map(|(b, c)| b * (c + 1)).sum();
            let denom: i64 = beta.iter().sum();
            dim *= Rat::new(numer, denom);
        }
        let value = dim
            .to_integer()
            .expect("Weyl dimension product must be an integer");
        Ok(u64::try_from(value).expect("Weyl dimension must be positive"))
    }
}

impl fmt::Debug for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootDatum{:?}", self.cartan)
    }
}

/// Reflection closure from the simple roots. `cartan` acts on root
/// coordinates via `coords(β)[i] = Σ_j c_j cartan[i][j]`.
fn positive_roots_of(cartan: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = cartan.len();
    // Generous bound: E8 has 120 positive roots.
    const MAX_ROOTS: usize = 4096;
    let mut roots: Vec<Vec<i64>> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let mut queue: Vec<Vec<i64>> = (0..n)
        .map(|j| {
            let mut c = vec![0i64; n];
            c[j] = 1;
            c
        })
        .collect();
    while let Some(beta) = queue.pop() {
        if !seen.insert(beta.clone()) {
            continue;
        }
        if beta.iter().all(|&c| c >= 0) {
            roots.push(beta.clone());
        }
        if seen.len() > 2 * MAX_ROOTS {
            return Err(Error::NotFiniteType);
        }
        for i in 0..n {
            // ⟨β, α_i^∨⟩ in these coordinates:
            let pairing: i64 = (0..n).map(|j| beta[j] * cartan[i][j]).sum();
            let mut refl = beta.clone();
            refl[i] -= pairing;
            if !seen.contains(&refl) {
                queue.push(refl);
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// Exact inverse by Gauss-Jordan over the rationals.
fn invert(m: &[Vec<i64>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .map(|row| row.iter().map(|&x| Rat::from_int(x)).collect())
        .collect();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for j in 0..n {
                    let (ac, ic) = (a[col][j].clone(), inv[col][j].clone());
                    a[r][j] -= &factor * ac;
                    inv[r][j] -= &factor * ic;
                }
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> RootDatum {
        RootDatum::new(vec![vec![2]]).unwrap()
    }

    fn a2() -> RootDatum {
        RootDatum::new(vec![vec![2, -1], vec![-1, 2]]).unwrap()
    }

    #[test]
    fn accepts_standard_cartan_matrices() {
        assert_eq!(a1().rank(), 1);
        assert_eq!(a2().rank(), 2);
        assert_eq!(RootDatum::from_type("A3").unwrap().rank(), 3);
        assert_eq!(RootDatum::from_type("G2").unwrap().rank(), 2);
    }

    #[test]
    fn rejects_non_cartan_matrices() {
        // diagonal entry 3
        assert!(RootDatum::new(vec![vec![2, 0], vec![0, 3]]).is_err());
        // positive off-diagonal
        assert!(RootDatum::new(vec![vec![2, 1], vec![1, 2]]).is_err());
        // asymmetric zero pattern
        assert!(RootDatum::new(vec![vec![2, 0], vec![-1, 2]]).is_err());
        // singular (affine A1~)
        assert!(RootDatum::new(vec![vec![2, -2], vec![-2, 2]]).is_err());
        // not square
        assert!(RootDatum::new(vec![vec![2, -1]]).is_err());
    }

    #[test]
    fn cartan_inverse_is_exact() {
        let d = RootDatum::from_type("A3").unwrap();
        let n = d.rank();
        for i in 0..n {
            for j in 0..n {
                let entry: Rat = (0..n)
                    .map(|k| Rat::from_int(d.cartan()[i][k]) * &d.cartan_inverse()[k][j])
                    .sum();
                let expect = if i == j { Rat::one() } else { Rat::zero() };
                assert_eq!(entry, expect);
            }
        }
    }

    #[test]
    fn dominance_examples() {
        let d = a1();
        let zero = Weight(vec![0]);
        let one = Weight(vec![1]);
        let two = Weight(vec![2]);
        assert!(d
            .dominance_leq(&zero, &two, DominanceMode::Rational)
            .unwrap());
        assert!(d
            .dominance_leq(&zero, &two, DominanceMode::Integral)
            .unwrap());
        // λ−μ = α/2: rational mode accepts, integral mode rejects.
        assert!(d
            .dominance_leq(&one, &two, DominanceMode::Rational)
            .unwrap());
        assert!(!d
            .dominance_leq(&one, &two, DominanceMode::Integral)
            .unwrap());

        let d2 = a2();
        assert!(d2
            .dominance_leq(
                &Weight(vec![0, 0]),
                &Weight(vec![1, 1]),
                DominanceMode::Integral
            )
            .unwrap());
        let coeffs = d2.root_coefficients(&Weight(vec![1, 1])).unwrap();
        assert_eq!(coeffs, vec![Rat::one(), Rat::one()]); // (1,1) = α₁+α₂
    }

    #[test]
    fn simple_roots_have_unit_coefficients() {
        for d in [
            a1(),
            a2(),
            RootDatum::from_type("A3").unwrap(),
            RootDatum::from_type("G2").unwrap(),
        ] {
            for j in 0..d.rank() {
                let alpha = d.simple_root(j);
                let coeffs = d.root_coefficients(&alpha).unwrap();
                for (k, c) in coeffs.iter().enumerate() {
                    let expect = if k == j { Rat::one() } else { Rat::zero() };
                    assert_eq!(*c, expect);
                }
                assert_eq!(d.two_rho_pairing(&alpha).unwrap(), Rat::from_int(2));
            }
        }
    }

    #[test]
    fn is_dominant_examples() {
        let d2 = a2();
        assert!(d2.is_dominant(&Weight::zero(2)));
        assert!(d2.is_dominant(&Weight(vec![1, 0])));
        assert!(!a1().is_dominant(&Weight(vec![-1])));
    }

    #[test]
    fn two_rho_pairing_examples() {
        let d = a1();
        for l in 0..=6 {
            assert_eq!(
                d.two_rho_pairing(&Weight(vec![l])).unwrap(),
                Rat::from_int(l)
            );
        }
        assert_eq!(a2().two_rho_pairing(&Weight::zero(2)).unwrap(), Rat::zero());
        assert_eq!(
            a2().two_rho_pairing(&Weight(vec![1, 1])).unwrap(),
            Rat::from_int(4)
        );
    }

    #[test]
    fn two_rho_pairing_is_additive() {
        let d = a2();
        let u = Weight(vec![2, -1]);
        let v = Weight(vec![-3, 4]);
        let lhs = d.two_rho_pairing(&u.add(&v)).unwrap();
        let rhs = d.two_rho_pairing(&u).unwrap() + d.two_rho_pairing(&v).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn lusztig_bound_examples() {
        let d = a1();
        let w = |l| Weight(vec![l]);
        assert_eq!(d.lusztig_bound(&w(0), &w(0), &w(0)).unwrap(), Rat::zero());
        assert_eq!(
            d.lusztig_bound(&w(2), &w(1), &w(1)).unwrap(),
            Rat::from_int(2)
        );
        assert!(d.lusztig_bound(&w(-1), &w(0), &w(0)).is_err());
        let d2 = a2();
        let r = Weight(vec![1, 1]);
        // (3,3) = 3α₁+3α₂, so ⟨·, ρ∨⟩ = 6.
        assert_eq!(d2.lusztig_bound(&r, &r, &r).unwrap(), Rat::from_int(6));
    }

    #[test]
    fn dominance_is_a_partial_order_on_a_small_grid() {
        let d = a2();
        let grid: Vec<Weight> = (-2..=2)
            .flat_map(|a| (-2..=2).map(move |b| Weight(vec![a, b])))
            .collect();
        for x in &grid {
            assert!(d.dominance_leq(x, x, DominanceMode::Rational).unwrap());
            for y in &grid {
                let xy = d.dominance_leq(x, y, DominanceMode::Rational).unwrap();
                let yx = d.dominance_leq(y, x, DominanceMode::Rational).unwrap();
                if xy && yx {
                    assert_eq!(x, y);
                }
                for z in &grid {
                    let yz = d.dominance_leq(y, z, DominanceMode::Rational).unwrap();
                    if xy && yz {
                        assert!(d.dominance_leq(x, z, DominanceMode::Rational).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(a1().positive_roots().unwrap().len(), 1);
        assert_eq!(a2().positive_roots().unwrap().len(), 3);
        assert_eq!(
            RootDatum::from_type("A3")
                .unwrap()
                .positive_roots()
                .unwrap()
                .len(),
            6
        );
        assert_eq!(
            RootDatum::from_type("G2")
                .unwrap()
                .positive_roots()
                .unwrap()
                .len(),
            6
        );
        assert_eq!(
            RootDatum::from_type("B2")
                .unwrap()
                .positive_coroots()
                .unwrap()
                .len(),
            4
        );
    }

    #[test]
    fn weyl_dim_examples() {
        let d = a1();
        for l in 0..=10 {
            assert_eq!(d.weyl_dim(&Weight(vec![l])).unwrap(), (l + 1) as u64);
        }
        let d2 = a2();
        assert_eq!(d2.weyl_dim(&Weight(vec![1, 0])).unwrap(), 3);
        assert_eq!(d2.weyl_dim(&Weight(vec![1, 1])).unwrap(), 8);
        assert_eq!(d2.weyl_dim(&Weight(vec![3, 0])).unwrap(), 10);
        let d3 = RootDatum::from_type("A3").unwrap();
        assert_eq!(d3.weyl_dim(&Weight(vec![1, 0, 0])).unwrap(), 4);
        assert_eq!(d3.weyl_dim(&Weight(vec![0, 1, 0])).unwrap(), 6);
        assert_eq!(d3.weyl_dim(&Weight(vec![1, 0, 1])).unwrap(), 15);
        assert_eq!(d3.weyl_dim(&Weight(vec![1, 1, 1])).unwrap(), 64);
        // G2: the 7-dimensional rep at ω₁, the adjoint at ω₂.
        let g2 = RootDatum::from_type("G2").unwrap();
        assert_eq!(g2.weyl_dim(&Weight(vec![1, 0])).unwrap(), 7);
        assert_eq!(g2.weyl_dim(&Weight(vec![0, 1])).unwrap(), 14);
        // F4: the adjoint at ω₁, the 26-dimensional rep at ω₄.
        let f4 = RootDatum::from_type("F4").unwrap();
        assert_eq!(f4.weyl_dim(&Weight(vec![1, 0, 0, 0])).unwrap(), 52);
        assert_eq!(f4.weyl_dim(&Weight(vec![0, 0, 0, 1])).unwrap(), 26);
    }

    #[test]
    fn levi_subdatum() {
        let d3 = RootDatum::from_type("A3").unwrap();
        let levi = d3.levi(&[0, 2]).unwrap();
        assert_eq!(levi.cartan(), &[vec![2, 0], vec![0, 2]]);
        let levi12 = d3.levi(&[0, 1]).unwrap();
        assert_eq!(levi12, RootDatum::from_type("A2").unwrap());
    }
}
