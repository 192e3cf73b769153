//! Exact model of lattice points for the rank-one affine Grassmannian.
//!
//! Points are 2×2 matrices over truncated Laurent series, considered up to
//! right multiplication by integral matrices and up to the center. Two
//! labels classify a point: the orbit label `l` (elementary divisor gap,
//! constant on integral-group orbits) and the Iwasawa label `m` (valuation
//! data of the bottom row, constant on orbits of upper triangular matrices
//! over the field). A stratum `(l, m)` pairs the two; it is non-empty
//! exactly when `l − m` is even, `l ≥ |m|`.
//!
//! Convolution is modeled on explicit coset representatives
//! `(t^m, t^{(m−l)/2}·p(t); 0, 1)` with `p` a unit, twisted by a random
//! integral parabolic factor. With strictly positive random coefficients no
//! cancellation can occur at a minimal exponent, so every draw realizes the
//! generic label.
//!
//! For products `g₁·g₂` of points in strata `(l₁, m₁)` and `(l₂, m₂)` the
//! generic orbit label observed is `max{l₂ − m₁, l₁ + m₂}`: the label is a
//! maximum of the two expected linear expressions, but with the roles of the
//! two factors exchanged relative to the convolution order `(g, x) ↦ g·x`.
//! The Iwasawa label of the product is always `m₁ + m₂`.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::crystal::Crystal;
use crate::error::Error;
use crate::rational::Rat;
use crate::root_data::{RootDatum, Weight};
use crate::series::{TruncSeries, PRECISION_SLACK};
use crate::Result;

/// A 2×2 matrix over truncated Laurent series, representing a point of the
/// affine Grassmannian by its coset.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GrassmannianPoint {
    entries: [[TruncSeries; 2]; 2],
}

impl GrassmannianPoint {
    pub fn new(entries: [[TruncSeries; 2]; 2]) -> GrassmannianPoint {
        GrassmannianPoint { entries }
    }

    /// The representative `(t^m, t^{(m−l)/2}·p; 0, 1)` of a point of the
    /// stratum `(l, m)`; `p` must be a unit (valuation zero).
    pub fn coset_from(m: i64, l: i64, p: &TruncSeries) -> Result<GrassmannianPoint> {
        if l < 0 || (l - m) % 2 != 0 || l < m.abs() {
            return Err(Error::InadmissibleStratum { l, m });
        }
        match p.certified_valuation()? {
            Some(0) => {}
            v => return Err(Error::NotAUnit(v)),
        }
        Ok(GrassmannianPoint::new([
            [TruncSeries::t_power(m), p.shift((m - l) / 2)],
            [TruncSeries::zero(), TruncSeries::one()],
        ]))
    }

    pub fn entry(&self, row: usize, col: usize) -> &TruncSeries {
        &self.entries[row][col]
    }

    pub fn det(&self) -> TruncSeries {
        &(&self.entries[0][0] * &self.entries[1][1]) - &(&self.entries[0][1] * &self.entries[1][0])
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &GrassmannianPoint) -> GrassmannianPoint {
        let e = |r: usize, c: usize| {
            &(&self.entries[r][0] * &other.entries[0][c])
                + &(&self.entries[r][1] * &other.entries[1][c])
        };
        GrassmannianPoint::new([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    /// Multiplies every entry by a series (e.g. a central `t^k`).
    pub fn scale(&self, s: &TruncSeries) -> GrassmannianPoint {
        GrassmannianPoint::new([
            [&self.entries[0][0] * s, &self.entries[0][1] * s],
            [&self.entries[1][0] * s, &self.entries[1][1] * s],
        ])
    }

    fn det_valuation(&self) -> Result<i64> {
        match self.det().certified_valuation()? {
            Some(v) => Ok(v),
            None => Err(Error::InvalidArgument("matrix has determinant zero".into())),
        }
    }

    /// Minimum certified valuation over a set of entries, ignoring exact
    /// zeros; `None` when every listed entry is exactly zero.
    fn min_valuation(&self, which: &[(usize, usize)]) -> Result<Option<i64>> {
        let mut best: Option<i64> = None;
        for &(r, c) in which {
            if let Some(v) = self.entries[r][c].certified_valuation()? {
                best = Some(best.map_or(v, |b| b.min(v)));
            }
        }
        Ok(best)
    }

    /// The orbit label `l ≥ 0`: with `d₁` the minimal entry valuation and
    /// `d₂ = v(det) − d₁` the complementary elementary divisor, returns
    /// `d₂ − d₁`. Invariant under integral column operations and the center.
    pub fn orbit_label(&self) -> Result<i64> {
        let vdet = self.det_valuation()?;
        let d1 = self
            .min_valuation(&[(0, 0), (0, 1), (1, 0), (1, 1)])?
            .expect("nonzero determinant forces a nonzero entry");
        Ok(vdet - 2 * d1)
    }

    /// The Iwasawa label `m = v(det) − 2·min(v(c), v(d))` over the bottom
    /// row `(c d)`. Invariant under integral column operations, the center,
    /// and left multiplication by upper triangular unipotent matrices.
    pub fn iwasawa_label(&self) -> Result<i64> {
        let vdet = self.det_valuation()?;
        let vrow = self
            .min_valuation(&[(1, 0), (1, 1)])?
            .ok_or_else(|| Error::InvalidArgument("bottom row is zero".into()))?;
        Ok(vdet - 2 * vrow)
    }

    /// Reduces to the canonical representative `(t^m, b; 0, 1)` of the coset
    /// by integral column operations and a central power of `t`: `m` is the
    /// Iwasawa label and `b` has only exponents below `m`.
    pub fn canonical_form(&self) -> Result<GrassmannianPoint> {
        let mut a = self.entries[0][0].clone();
        let mut b = self.entries[0][1].clone();
        let mut c = self.entries[1][0].clone();
        let mut d = self.entries[1][1].clone();
        self.det_valuation()?;

        // Working precision for inverting exact polynomial divisors;
        // truncated inputs keep their own precision.
        let mut spread: i64 = 2 * PRECISION_SLACK + 4;
        for s in [&a, &b, &c, &d] {
            if let Some(v) = s.certified_valuation()? {
                spread += v.abs();
            }
        }

        // Bring the smaller bottom-row valuation into position d.
        let vc = c.certified_valuation()?;
        let vd = d.certified_valuation()?;
        let swap = match (vc, vd) {
            (Some(x), Some(y)) => x < y,
            (Some(_), None) => true,
            _ => false,
        };
        if swap {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut c, &mut d);
        }
        if d.is_exactly_zero() {
            return Err(Error::InvalidArgument("bottom row is zero".into()));
        }

        // Clear c with the integral column operation col₁ ← col₁ − (c/d)·col₂.
        if !c.is_exactly_zero() {
            let q = &c * &invert_for_division(&d, spread)?;
            a = &a - &(&q * &b);
            let residue = &c - &(&q * &d);
            if residue.valuation().is_some() {
                return Err(Error::PrecisionExhausted(
                    "column elimination left a nonzero residue".into(),
                ));
            }
            c = TruncSeries::zero();
        }
        drop(c);

        // Normalize d to t^{v(d)} by a unit column scaling, carrying b along.
        let vd = d.certified_valuation()?.expect("nonzero after the swap");
        let s = invert_for_division(&d, spread)?.shift(vd);
        b = &b * &s;
        d = TruncSeries::t_power(vd);

        // Scaling col₁ by the unit t^{v(a)}/a sends a to t^{v(a)} and fixes
        // the zero below it; the scaling factor itself is never needed.
        let va = match a.certified_valuation()? {
            Some(v) => v,
            None => return Err(Error::InvalidArgument("matrix has determinant zero".into())),
        };
        let a = TruncSeries::t_power(va);

        // Reduce b modulo t^{v(a)}·O with col₂ ← col₂ − q·col₁.
        b = b.truncate_terms(va);

        // Kill the center: divide everything by t^{v(d)}.
        Ok(GrassmannianPoint::new([
            [a.shift(-vd), b.shift(-vd)],
            [TruncSeries::zero(), d.shift(-vd)],
        ]))
    }
}

/// Inverse of a divisor series: exact monomials invert exactly, truncated
/// series invert at their own precision, exact polynomials are truncated at
/// the working precision first.
fn invert_for_division(s: &TruncSeries, work_prec: i64) -> Result<TruncSeries> {
    if s.is_exact() {
        if let Some(v) = s.valuation() {
            if s.truncate_terms(v + 1) == *s {
                return s.invert();
            }
            return s.with_prec(v + work_prec).invert();
        }
    }
    s.invert()
}

/// All stratum pairs `(l, m)` with `l ≤ lmax` attained by points
/// `(t^m, x; 0, 1)`, with `x` running over zero and random series of every
/// valuation in `[−lmax, lmax]`.
pub fn strata_census(lmax: i64, prec: i64, seed: u64) -> Result<BTreeSet<(i64, i64)>> {
    if lmax < 0 {
        return Err(Error::InvalidArgument("lmax must be non-negative".into()));
    }
    if prec <= 2 * lmax {
        return Err(Error::InvalidArgument(format!(
            "precision {prec} too small for lmax {lmax}; need more than {}",
            2 * lmax
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attained = BTreeSet::new();
    for m in -lmax..=lmax {
        let mut pool = vec![TruncSeries::zero()];
        for v in -lmax..=lmax {
            for _ in 0..2 {
                pool.push(random_unit(&mut rng, prec).shift(v));
            }
        }
        for x in &pool {
            let g = GrassmannianPoint::new([
                [TruncSeries::t_power(m), x.clone()],
                [TruncSeries::zero(), TruncSeries::one()],
            ]);
            let l = g.orbit_label()?;
            let iw = g.iwasawa_label()?;
            if l <= lmax {
                attained.insert((l, iw));
            }
        }
    }
    Ok(attained)
}

/// The set predicted by the non-emptiness criterion: `l − m` even, `l ≥ |m|`.
pub fn admissible_strata(lmax: i64) -> BTreeSet<(i64, i64)> {
    let mut set = BTreeSet::new();
    for l in 0..=lmax {
        for m in (-l..=l).step_by(2) {
            set.insert((l, m));
        }
    }
    set
}

/// Number of free coefficients in the canonical representative of a point
/// of the stratum `(l, m)`: the off-diagonal entry `t^{(m−l)/2}·p` matters
/// modulo `t^m`, leaving the exponents `(m−l)/2, …, m−1`.
pub fn stratum_parameter_count(l: i64, m: i64) -> Result<u64> {
    if l < 0 || (l - m) % 2 != 0 || l < m.abs() {
        return Err(Error::InadmissibleStratum { l, m });
    }
    let lowest = (m - l) / 2;
    Ok((m - lowest) as u64)
}

/// Label statistics of random convolution products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvolutionStats {
    pub l1: i64,
    pub m1: i64,
    pub l2: i64,
    pub m2: i64,
    pub samples: u64,
    /// Orbit label of the product → number of draws attaining it.
    pub labels: BTreeMap<i64, u64>,
    /// Iwasawa label of the product → number of draws attaining it.
    pub iwasawa_labels: BTreeMap<i64, u64>,
}

impl ConvolutionStats {
    /// The most frequently attained orbit label.
    pub fn dominant_label(&self) -> Option<i64> {
        self.labels
            .iter()
            .max_by_key(|(_, &count)| count)
            .map(|(&l, _)| l)
    }

    /// Fraction of draws attaining the dominant label.
    pub fn dominant_fraction(&self) -> f64 {
        match self.dominant_label() {
            Some(l) => self.labels[&l] as f64 / self.samples as f64,
            None => 0.0,
        }
    }
}

/// Samples `g₁·k·g₂` with coset representatives for the two strata and a
/// random integral parabolic twist `k`, recording both labels per draw.
pub fn convolve_samples(
    l1: i64,
    m1: i64,
    l2: i64,
    m2: i64,
    samples: u64,
    prec: i64,
    seed: u64,
) -> Result<ConvolutionStats> {
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: BTreeMap<i64, u64> = BTreeMap::new();
    let mut iwasawa_labels: BTreeMap<i64, u64> = BTreeMap::new();
    for _ in 0..samples {
        let p1 = random_unit(&mut rng, prec);
        let p2 = random_unit(&mut rng, prec);
        let g1 = GrassmannianPoint::coset_from(m1, l1, &p1)?;
        let g2 = GrassmannianPoint::coset_from(m2, l2, &p2)?;
        let k = random_parabolic(&mut rng, prec);
        let product = g1.mul(&k).mul(&g2);
        *labels.entry(product.orbit_label()?).or_insert(0) += 1;
        *iwasawa_labels.entry(product.iwasawa_label()?).or_insert(0) += 1;
    }
    Ok(ConvolutionStats {
        l1,
        m1,
        l2,
        m2,
        samples,
        labels,
        iwasawa_labels,
    })
}

/// The chain crystal read off from the strata of one orbit closure: one
/// element per non-empty `(l, m)`, in decreasing `m`, with the arrow
/// stepping `m` down by 2. Every element is backed by a verified witness
/// point.
pub fn crystal_from_pgl2(l: i64) -> Result<Crystal> {
    if l < 0 {
        return Err(Error::InvalidArgument(format!("negative orbit label {l}")));
    }
    let mut weights = Vec::new();
    let mut ms: Vec<i64> = (-l..=l).step_by(2).collect();
    ms.reverse(); // l, l−2, …, −l
    for &m in &ms {
        let witness = GrassmannianPoint::coset_from(m, l, &TruncSeries::one())?;
        if witness.orbit_label()? != l || witness.iwasawa_label()? != m {
            return Err(Error::Identification(format!(
                "witness for stratum ({l}, {m}) has wrong labels"
            )));
        }
        weights.push(Weight(vec![m]));
    }
    let n = weights.len();
    let datum = RootDatum::new(vec![vec![2]])?;
    let f = vec![(0..n)
        .map(|k| if k + 1 < n { Some(k + 1) } else { None })
        .collect()];
    Crystal::new(datum, weights, f)
}

/// A random unit in the integral series ring: strictly positive rational
/// coefficients (so no cancellation is possible) on `t^0..t^3`.
pub fn random_unit<R: Rng>(rng: &mut R, prec: i64) -> TruncSeries {
    let terms: Vec<(i64, Rat)> = (0..4)
        .map(|k| (k, Rat::new(rng.gen_range(1..=9), rng.gen_range(1..=4))))
        .collect();
    TruncSeries::from_terms(terms).with_prec(prec)
}

/// A random integral parabolic matrix: unit diagonal entries, integral
/// upper-right entry, zero lower-left entry.
pub fn random_parabolic<R: Rng>(rng: &mut R, prec: i64) -> GrassmannianPoint {
    GrassmannianPoint::new([
        [random_unit(rng, prec), random_unit(rng, prec)],
        [TruncSeries::zero(), random_unit(rng, prec)],
    ])
}

/// A random integral matrix with unit determinant valuation, as a product
/// of elementary factors.
pub fn random_integral<R: Rng>(rng: &mut R, prec: i64) -> GrassmannianPoint {
    let a = random_unit(rng, prec).shift(rng.gen_range(0..3));
    let b = random_unit(rng, prec).shift(rng.gen_range(0..3));
    let upper = GrassmannianPoint::new([
        [TruncSeries::one(), a],
        [TruncSeries::zero(), TruncSeries::one()],
    ]);
    let lower = GrassmannianPoint::new([
        [TruncSeries::one(), TruncSeries::zero()],
        [b, TruncSeries::one()],
    ]);
    let diag = GrassmannianPoint::new([
        [random_unit(rng, prec), TruncSeries::zero()],
        [TruncSeries::zero(), random_unit(rng, prec)],
    ]);
    upper.mul(&lower).mul(&diag)
}
