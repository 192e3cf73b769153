//! Decomposition of crystals into highest weight components, tensor
//! multiplicities, Levi branching, and single-color string extraction.
//!
//! Every connected component of a valid input must be a highest weight
//! crystal; each is identified by the weight of its unique source and, when
//! seed crystals are available, cross-checked against a freshly built model
//! by isomorphism. Branching restricts to a subset `J` of the colors with
//! weights projected to the `J`-coordinates and decomposes over the Levi
//! subdatum.

use std::collections::BTreeMap;

use crate::builders::{build_b, SeedTable};
use crate::crystal::Crystal;
use crate::error::Error;
use crate::root_data::Weight;
use crate::tensor::tensor;
use crate::Result;

/// One group of isomorphic highest weight components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportEntry {
    pub highest_weight: Weight,
    pub multiplicity: u64,
    /// The member elements of each component, in original ids.
    pub components: Vec<Vec<usize>>,
}

/// Decomposition of a crystal into highest weight components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    /// Entries sorted by highest weight.
    pub entries: Vec<ReportEntry>,
    pub total_elements: usize,
}

impl DecompositionReport {
    pub fn multiplicities(&self) -> BTreeMap<Weight, u64> {
        self.entries
            .iter()
            .map(|e| (e.highest_weight.clone(), e.multiplicity))
            .collect()
    }

    pub fn multiplicity(&self, hw: &Weight) -> u64 {
        self.entries
            .iter()
            .find(|e| &e.highest_weight == hw)
            .map_or(0, |e| e.multiplicity)
    }
}

/// Branching of a crystal to the Levi on color set `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingReport {
    /// The retained color indices (0-based).
    pub levi: Vec<usize>,
    /// Entries over the Levi datum, weights in `J`-coordinates.
    pub entries: Vec<ReportEntry>,
    pub total_elements: usize,
}

impl BranchingReport {
    pub fn multiplicities(&self) -> BTreeMap<Weight, u64> {
        self.entries
            .iter()
            .map(|e| (e.highest_weight.clone(), e.multiplicity))
            .collect()
    }
}

/// Splits `b` into connected components, requires each to be a highest
/// weight crystal, verifies each against a rebuilt `B(λ)`, and groups them
/// by highest weight.
pub fn decompose(b: &Crystal, seeds: &SeedTable) -> Result<DecompositionReport> {
    if b.datum() != seeds.datum() {
        return Err(Error::DatumMismatch);
    }
    let entries = classify_components(b, seeds, true)?;
    Ok(DecompositionReport {
        entries,
        total_elements: b.len(),
    })
}

/// Forgets all colors outside `J` (0-based, strictly increasing), projects
/// weights to the `J`-coordinates, and decomposes over the Levi datum.
/// Components whose Levi type has no constructible model are still reported
/// after the highest weight check.
pub fn branch_to_levi(b: &Crystal, levi: &[usize]) -> Result<BranchingReport> {
    let restricted = b.restrict(levi)?;
    let seeds = SeedTable::for_datum(restricted.datum());
    let entries = classify_components(&restricted, &seeds, false)?;
    Ok(BranchingReport {
        levi: levi.to_vec(),
        entries,
        total_elements: b.len(),
    })
}

fn classify_components(b: &Crystal, seeds: &SeedTable, strict: bool) -> Result<Vec<ReportEntry>> {
    let mut groups: BTreeMap<Weight, Vec<Vec<usize>>> = BTreeMap::new();
    let mut models: BTreeMap<Weight, Crystal> = BTreeMap::new();
    for comp in b.components() {
        let sub = b.subcrystal(&comp)?;
        let check = sub.is_highest_weight_crystal()?;
        let lam = match (check.is_highest_weight, check.highest_weight) {
            (true, Some(lam)) => lam,
            _ => {
                return Err(Error::Identification(format!(
                    "component containing element {} is not a highest weight crystal",
                    comp[0]
                )))
            }
        };
        if !models.contains_key(&lam) {
            match build_b(seeds, &lam) {
                Ok(model) => {
                    models.insert(lam.clone(), model);
                }
                Err(Error::MissingSeed { .. }) if !strict => {}
                Err(e) => return Err(e),
            }
        }
        if let Some(model) = models.get(&lam) {
            if !sub.crystal_isomorphic(model)? {
                return Err(Error::Identification(format!(
                    "component containing element {} has highest weight {lam} \
                     but is not isomorphic to the built model",
                    comp[0]
                )));
            }
        }
        groups.entry(lam).or_default().push(comp);
    }
    Ok(groups
        .into_iter()
        .map(|(highest_weight, components)| ReportEntry {
            highest_weight,
            multiplicity: components.len() as u64,
            components,
        })
        .collect())
}

/// Tensor multiplicities: how often `B(λ₃)` occurs in `B(λ₁) ⊗ B(λ₂)`.
pub fn lr_multiplicities(
    seeds: &SeedTable,
    lam1: &Weight,
    lam2: &Weight,
) -> Result<BTreeMap<Weight, u64>> {
    let t = tensor(&build_b(seeds, lam1)?, &build_b(seeds, lam2)?)?;
    Ok(decompose(&t, seeds)?.multiplicities())
}

/// The partition of the elements into maximal single-color strings, each
/// listed from its head (`ε = 0`) to its tail (`φ = 0`), ordered by head id.
pub fn i_string_decomposition(b: &Crystal, color: usize) -> Result<Vec<Vec<usize>>> {
    if color >= b.rank() {
        return Err(Error::InvalidArgument(format!(
            "color {} out of range for rank {}",
            color + 1,
            b.rank()
        )));
    }
    let mut strings = Vec::new();
    for head in 0..b.len() {
        if b.e(head, color).is_some() {
            continue;
        }
        let mut chain = vec![head];
        let mut cur = head;
        while let Some(next) = b.f(cur, color) {
            chain.push(next);
            cur = next;
        }
        strings.push(chain);
    }
    Ok(strings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::sl2_crystal;
    use crate::root_data::RootDatum;

    fn a1_seeds() -> SeedTable {
        SeedTable::for_datum(&RootDatum::from_type("A1").unwrap())
    }

    fn a2_seeds() -> SeedTable {
        SeedTable::for_datum(&RootDatum::from_type("A2").unwrap())
    }

    #[test]
    fn rank_one_square_splits_into_two() {
        let seeds = a1_seeds();
        let b1 = sl2_crystal(1).unwrap();
        let t = tensor(&b1, &b1).unwrap();
        let report = decompose(&t, &seeds).unwrap();
        assert_eq!(
            report.multiplicities(),
            BTreeMap::from([(Weight(vec![2]), 1), (Weight(vec![0]), 1)])
        );
        assert_eq!(report.total_elements, 4);
        let dims: u64 = report
            .entries
            .iter()
            .map(|e| e.multiplicity * (e.components[0].len() as u64))
            .sum();
        assert_eq!(dims, 4);
    }

    #[test]
    fn tensor_with_unit_keeps_the_weight() {
        let seeds = a2_seeds();
        let lam = Weight(vec![1, 1]);
        let b = build_b(&seeds, &lam).unwrap();
        let unit = build_b(&seeds, &Weight::zero(2)).unwrap();
        let t = tensor(&b, &unit).unwrap();
        let report = decompose(&t, &seeds).unwrap();
        assert_eq!(report.multiplicities(), BTreeMap::from([(lam, 1)]));
    }

    #[test]
    fn rank_two_fundamental_pairing() {
        let seeds = a2_seeds();
        let m = lr_multiplicities(&seeds, &Weight(vec![1, 0]), &Weight(vec![0, 1])).unwrap();
        assert_eq!(
            m,
            BTreeMap::from([(Weight(vec![1, 1]), 1), (Weight(vec![0, 0]), 1)])
        );
        let m = lr_multiplicities(&seeds, &Weight(vec![1, 0]), &Weight(vec![1, 0])).unwrap();
        assert_eq!(
            m,
            BTreeMap::from([(Weight(vec![2, 0]), 1), (Weight(vec![0, 1]), 1)])
        );
    }

    #[test]
    fn clebsch_gordan_rule() {
        let seeds = a1_seeds();
        for l1 in 0..=4i64 {
            for l2 in 0..=4i64 {
                let m = lr_multiplicities(&seeds, &Weight(vec![l1]), &Weight(vec![l2])).unwrap();
                let expect: BTreeMap<Weight, u64> = ((l1 - l2).abs()..=l1 + l2)
                    .step_by(2)
                    .map(|l3| (Weight(vec![l3]), 1))
                    .collect();
                assert_eq!(m, expect, "l1={l1} l2={l2}");
            }
        }
    }

    #[test]
    fn multiplicities_are_symmetric() {
        let seeds = a2_seeds();
        let pairs = [
            (Weight(vec![1, 0]), Weight(vec![0, 1])),
            (Weight(vec![1, 1]), Weight(vec![1, 0])),
            (Weight(vec![2, 0]), Weight(vec![1, 1])),
        ];
        for (l1, l2) in pairs {
            assert_eq!(
                lr_multiplicities(&seeds, &l1, &l2).unwrap(),
                lr_multiplicities(&seeds, &l2, &l1).unwrap()
            );
        }
    }

    #[test]
    fn characters_factor_through_the_decomposition() {
        let seeds = a2_seeds();
        let l1 = Weight(vec![1, 1]);
        let l2 = Weight(vec![1, 0]);
        let t = tensor(
            &build_b(&seeds, &l1).unwrap(),
            &build_b(&seeds, &l2).unwrap(),
        )
        .unwrap();
        let mut expect = crate::crystal::Character::default();
        for (l3, mult) in decompose(&t, &seeds).unwrap().multiplicities() {
            for (w, m) in build_b(&seeds, &l3).unwrap().character().iter() {
                expect.insert(w.clone(), m * mult);
            }
        }
        assert_eq!(t.character(), expect);
    }

    #[test]
    fn branching_the_adjoint_to_rank_one() {
        let seeds = a2_seeds();
        let adj = build_b(&seeds, &Weight(vec![1, 1])).unwrap();
        let report = branch_to_levi(&adj, &[0]).unwrap();
        assert_eq!(
            report.multiplicities(),
            BTreeMap::from([
                (Weight(vec![0]), 1),
                (Weight(vec![1]), 2),
                (Weight(vec![2]), 1)
            ])
        );
        let total: u64 = report
            .entries
            .iter()
            .flat_map(|e| e.components.iter())
            .map(|c| c.len() as u64)
            .sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn branching_to_all_colors_matches_decomposition() {
        let seeds = a2_seeds();
        let b1 = build_b(&seeds, &Weight(vec![1, 0])).unwrap();
        let t = tensor(&b1, &b1).unwrap();
        let branch = branch_to_levi(&t, &[0, 1]).unwrap();
        let dec = decompose(&t, &seeds).unwrap();
        assert_eq!(branch.multiplicities(), dec.multiplicities());
    }

    #[test]
    fn branching_counts_weight_fibers() {
        // Σ_ν mult(ν)·|B^M(ν)_μ| must equal the size of the μ-fiber of the
        // projected weight map, for every Levi weight μ.
        let seeds = a2_seeds();
        let b = build_b(&seeds, &Weight(vec![2, 1])).unwrap();
        for levi in [vec![0], vec![1]] {
            let report = branch_to_levi(&b, &levi).unwrap();
            let levi_datum = b.datum().levi(&levi).unwrap();
            let levi_seeds = SeedTable::for_datum(&levi_datum);
            let mut predicted: BTreeMap<Weight, u64> = BTreeMap::new();
            for (nu, mult) in report.multiplicities() {
                for (w, m) in build_b(&levi_seeds, &nu).unwrap().character().iter() {
                    *predicted.entry(w.clone()).or_insert(0) += m * mult;
                }
            }
            let mut actual: BTreeMap<Weight, u64> = BTreeMap::new();
            for id in 0..b.len() {
                *actual.entry(b.wt(id).project(&levi)).or_insert(0) += 1;
            }
            assert_eq!(predicted, actual, "levi {levi:?}");
        }
    }

    #[test]
    fn branch_then_decompose_commutes_with_decompose_then_branch() {
        let seeds = a2_seeds();
        let t = tensor(
            &build_b(&seeds, &Weight(vec![1, 0])).unwrap(),
            &build_b(&seeds, &Weight(vec![0, 1])).unwrap(),
        )
        .unwrap();
        for levi in [vec![0], vec![1]] {
            let direct = branch_to_levi(&t, &levi).unwrap().multiplicities();
            let mut via_decomposition: BTreeMap<Weight, u64> = BTreeMap::new();
            for (l3, mult) in decompose(&t, &seeds).unwrap().multiplicities() {
                let piece = build_b(&seeds, &l3).unwrap();
                for (nu, m) in branch_to_levi(&piece, &levi).unwrap().multiplicities() {
                    *via_decomposition.entry(nu).or_insert(0) += m * mult;
                }
            }
            assert_eq!(direct, via_decomposition, "levi {levi:?}");
        }
    }

    #[test]
    fn string_decomposition_examples() {
        let b3 = sl2_crystal(3).unwrap();
        let strings = i_string_decomposition(&b3, 0).unwrap();
        assert_eq!(strings, vec![vec![0, 1, 2, 3]]);

        let b1 = sl2_crystal(1).unwrap();
        let t = tensor(&b1, &b1).unwrap();
        let mut sizes: Vec<usize> = i_string_decomposition(&t, 0)
            .unwrap()
            .iter()
            .map(|s| s.len())
            .collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3]);

        let std = crate::builders::standard_crystal_a(2).unwrap();
        let mut sizes: Vec<usize> = i_string_decomposition(&std, 0)
            .unwrap()
            .iter()
            .map(|s| s.len())
            .collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2]);
        assert!(i_string_decomposition(&std, 7).is_err());
    }

    #[test]
    fn strings_respect_the_root_step_and_endpoints() {
        let seeds = a2_seeds();
        let b = build_b(&seeds, &Weight(vec![1, 1])).unwrap();
        for color in 0..2 {
            let alpha = b.datum().simple_root(color);
            for chain in i_string_decomposition(&b, color).unwrap() {
                assert_eq!(b.epsilon(chain[0], color), 0);
                assert_eq!(b.phi(*chain.last().unwrap(), color), 0);
                for pair in chain.windows(2) {
                    assert_eq!(b.wt(pair[1]), &b.wt(pair[0]).sub(&alpha));
                }
            }
        }
    }

    #[test]
    fn mismatched_components_are_rejected() {
        // An isolated element of weight 2 passes the highest weight check on
        // its own but cannot be isomorphic to the three-element model B(2),
        // so the identification fails.
        let seeds = a1_seeds();
        let c = Crystal::new(
            seeds.datum().clone(),
            vec![Weight(vec![2])],
            vec![vec![None]],
        )
        .unwrap();
        assert!(matches!(
            decompose(&c, &seeds),
            Err(Error::Identification(_))
        ));
    }
}
