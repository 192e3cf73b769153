//! Independent oracles shared by the integration suites.
//!
//! Weight multiplicities come from the Freudenthal recursion on the root
//! datum alone, with no crystal machinery involved, so they can referee the
//! crystal constructions.

use std::collections::BTreeMap;

use crystals::{Rat, RootDatum, Weight};

/// Symmetrizer `d_i > 0` with `d_i·a_ij = d_j·a_ji`, normalized so the
/// smallest entry of each diagram component is 1.
pub fn symmetrizer(datum: &RootDatum) -> Vec<Rat> {
    let a = datum.cartan();
    let n = datum.rank();
    let mut d: Vec<Option<Rat>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        // spread over the diagram component of `start`
        d[start] = Some(Rat::one());
        let mut queue = vec![start];
        let mut component = vec![start];
        while let Some(i) = queue.pop() {
            for j in 0..n {
                if a[i][j] != 0 && i != j && d[j].is_none() {
                    // d_j = d_i · a_ij / a_ji
                    let dj = d[i].clone().unwrap() * Rat::new(a[i][j], a[j][i]);
                    d[j] = Some(dj);
                    queue.push(j);
                    component.push(j);
                }
            }
        }
        let min = component
            .iter()
            .map(|&i| d[i].clone().unwrap())
            .min()
            .unwrap();
        for &i in &component {
            let v = d[i].clone().unwrap() / &min;
            d[i] = Some(v);
        }
    }
    d.into_iter().map(Option::unwrap).collect()
}

/// `(ν, α)` for a weight `ν` in Dynkin coordinates and a root given by its
/// simple-root coefficients: `Σ_i c_i·d_i·ν_i`.
fn pair_with_root(d: &[Rat], root: &[i64], nu: &[i64]) -> Rat {
    root.iter()
        .zip(d)
        .zip(nu)
        .map(|((&c, di), &v)| Rat::from_int(c) * di * Rat::from_int(v))
        .sum()
}

/// Weight multiplicities of the irreducible highest weight module `L(λ)` by
/// the Freudenthal recursion:
/// `(‖λ+ρ‖² − ‖μ+ρ‖²)·m_μ = 2·Σ_{α>0} Σ_{j≥1} (μ+jα, α)·m_{μ+jα}`.
pub fn freudenthal(datum: &RootDatum, lam: &Weight) -> BTreeMap<Weight, u64> {
    let n = datum.rank();
    assert_eq!(lam.rank(), n);
    assert!(datum.is_dominant(lam), "oracle needs a dominant weight");
    let a = datum.cartan();
    let d = symmetrizer(datum);
    let roots = datum.positive_roots().expect("finite type");
    // Dynkin coordinates of each positive root: A·c.
    let root_coords: Vec<Vec<i64>> = roots
        .iter()
        .map(|c| {
            (0..n)
                .map(|r| (0..n).map(|i| a[r][i] * c[i]).sum())
                .collect()
        })
        .collect();

    // All weights of L(λ) are λ − Σ k_i α_i; the lowest one sits at level
    // Σ k_i = ⟨λ, 2ρ∨⟩.
    let depth = datum
        .two_rho_pairing(lam)
        .unwrap()
        .to_integer()
        .expect("integral dominant weight") as i64;

    // multiplicities keyed by the k-vector
    let mut mult: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    mult.insert(vec![0; n], 1);

    let coords_of = |k: &[i64]| -> Vec<i64> {
        (0..n)
            .map(|r| lam.coords()[r] - (0..n).map(|i| a[r][i] * k[i]).sum::<i64>())
            .collect()
    };

    for level in 1..=depth {
        for k in compositions(level, n) {
            let mu = coords_of(&k);
            // N = (λ+ρ)² − (μ+ρ)² = Σ_i k_i·d_i·(λ+μ+2ρ)_i since λ−μ = Σk_iα_i
            let norm_gap: Rat = (0..n)
                .map(|i| Rat::from_int(k[i]) * &d[i] * Rat::from_int(lam.coords()[i] + mu[i] + 2))
                .sum();
            let mut rhs = Rat::zero();
            for (c, coords) in roots.iter().zip(&root_coords) {
                for j in 1.. {
                    let shifted: Vec<i64> = k.iter().zip(c).map(|(&ki, &ci)| ki - j * ci).collect();
                    if shifted.iter().any(|&x| x < 0) {
                        break;
                    }
                    let m = mult.get(&shifted).copied().unwrap_or(0);
                    if m > 0 {
                        let nu: Vec<i64> =
                            mu.iter().zip(coords).map(|(&x, &rc)| x + j * rc).collect();
                        rhs += pair_with_root(&d, c, &nu) * Rat::from_int(m as i64);
                    }
                }
            }
            rhs *= Rat::from_int(2);
            if rhs.is_zero() {
                continue;
            }
            assert!(
                !norm_gap.is_zero() && !norm_gap.is_negative(),
                "recursion hit a non-positive norm gap at a populated weight"
            );
            let m = (rhs / norm_gap)
                .to_integer()
                .expect("multiplicity must be an integer");
            assert!(m >= 0);
            if m > 0 {
                mult.insert(k, m as u64);
            }
        }
    }

    mult.into_iter()
        .map(|(k, m)| (Weight(coords_of(&k)), m))
        .collect()
}

/// All vectors of `n` non-negative integers summing to exactly `total`.
pub fn compositions(total: i64, n: usize) -> Vec<Vec<i64>> {
    if n == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, n - 1) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// Dominant weights of the given rank with coordinate sum at most `total`.
pub fn dominant_weights_up_to(rank: usize, total: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    for s in 0..=total {
        for k in compositions(s, rank) {
            out.push(Weight(k));
        }
    }
    out
}
