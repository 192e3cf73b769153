//! Constructions of the crystals `B(λ)`.
//!
//! Rank-one chains and type-A crystals are built directly; a general
//! dominant `λ` is assembled by tensoring fundamental seed crystals and
//! extracting the connected component of the product of their sources.
//! Component extraction happens after every tensor step: an arrow in a
//! tensor product moves exactly one factor along one of its own arrows, so
//! the component of an element is contained in the product of the factor
//! components, and pruning early never discards part of the final component.
//!
//! Seed crystals for data outside type A are supplied by the caller through
//! a [`SeedTable`], which validates them (axioms, highest weight, dimension)
//! instead of trusting them.

use std::collections::BTreeMap;

use num_integer::binomial;

use crate::crystal::Crystal;
use crate::error::Error;
use crate::root_data::{RootDatum, Weight};
use crate::tensor::tensor;
use crate::Result;

/// The `(l+1)`-element chain crystal of rank one, weights `l, l−2, …, −l`.
pub fn sl2_crystal(l: i64) -> Result<Crystal> {
    if l < 0 {
        return Err(Error::InvalidArgument(format!(
            "chain length {l} is negative"
        )));
    }
    let datum = RootDatum::new(vec![vec![2]])?;
    let n = (l + 1) as usize;
    let weights = (0..n).map(|k| Weight(vec![l - 2 * k as i64])).collect();
    let f = vec![(0..n)
        .map(|k| if k + 1 < n { Some(k + 1) } else { None })
        .collect()];
    Crystal::new(datum, weights, f)
}

/// The `(n+1)`-element crystal of the vector representation of `sl(n+1)`:
/// elements `x_1, …, x_{n+1}` with `f_i : x_i ↦ x_{i+1}`.
pub fn standard_crystal_a(n: usize) -> Result<Crystal> {
    if n == 0 {
        return Err(Error::InvalidArgument("rank must be positive".into()));
    }
    let datum = RootDatum::from_type(&format!("A{n}"))?;
    let weights = (0..=n)
        .map(|k| {
            // x_{k+1} has pairing +1 with α_{k+1}^∨ and −1 with α_k^∨.
            let mut c = vec![0i64; n];
            if k < n {
                c[k] = 1;
            }
            if k > 0 {
                c[k - 1] = -1;
            }
            Weight(c)
        })
        .collect();
    let f = (0..n)
        .map(|i| {
            (0..=n)
                .map(|k| if k == i { Some(k + 1) } else { None })
                .collect()
        })
        .collect();
    Crystal::new(datum, weights, f)
}

/// The crystal `B(ω_k)` of `sl(n+1)`, `1 ≤ k ≤ n`, realized inside the
/// `k`-th tensor power of the standard crystal. Its size is checked against
/// the binomial coefficient `C(n+1, k)`.
pub fn fundamental_crystal_a(n: usize, k: usize) -> Result<Crystal> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "fundamental index {k} out of range 1..={n}"
        )));
    }
    let std = standard_crystal_a(n)?;
    let mut cur = std.clone();
    for step in 2..=k {
        let t = tensor(&cur, &std)?;
        let target = Weight::fundamental(n, step - 1);
        let sources: Vec<usize> = t
            .highest_weight_elements()
            .into_iter()
            .filter(|&b| t.wt(b) == &target)
            .collect();
        let &source = match sources.as_slice() {
            [s] => s,
            [] => {
                return Err(Error::Identification(format!(
                    "no source of weight {target} in the tensor power"
                )))
            }
            _ => {
                return Err(Error::Identification(format!(
                    "multiple sources of weight {target} in the tensor power"
                )))
            }
        };
        let comps = t.components();
        let comp = comps
            .into_iter()
            .find(|c| c.binary_search(&source).is_ok())
            .expect("component of an existing element");
        cur = t.subcrystal(&comp)?;
    }
    let expect = binomial((n + 1) as u64, k as u64);
    if cur.len() as u64 != expect {
        return Err(Error::Identification(format!(
            "fundamental crystal ({n}, {k}) has {} elements, expected {expect}",
            cur.len()
        )));
    }
    Ok(cur)
}

/// Validated fundamental seed crystals `B(ω_i)` for one root datum.
///
/// Construction auto-populates every node that lies on a simply-laced chain
/// of the Cartan diagram (in particular all of types `A_n` and `A × A × …`
/// Levi data); other nodes need user-supplied seeds via [`SeedTable::insert`].
#[derive(Clone, Debug)]
pub struct SeedTable {
    datum: RootDatum,
    seeds: BTreeMap<usize, Crystal>,
}

impl SeedTable {
    pub fn for_datum(datum: &RootDatum) -> SeedTable {
        let mut table = SeedTable {
            datum: datum.clone(),
            seeds: BTreeMap::new(),
        };
        for block in diagram_blocks(datum) {
            if let Some(path) = chain_order(datum, &block) {
                for (pos, &node) in path.iter().enumerate() {
                    let fund = fundamental_crystal_a(path.len(), pos + 1)
                        .expect("chain fundamental crystal");
                    let lifted =
                        lift_chain_crystal(datum, &path, &fund).expect("lift of a chain crystal");
                    table.seeds.insert(node, lifted);
                }
            }
        }
        table
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    /// Indices (0-based) that currently have a seed.
    pub fn available(&self) -> Vec<usize> {
        self.seeds.keys().copied().collect()
    }

    /// Validates and stores `B(ω_index)` (`index` 0-based), replacing any
    /// auto-populated seed.
    pub fn insert(&mut self, index: usize, seed: Crystal) -> Result<()> {
        self.validate(index, &seed)?;
        self.seeds.insert(index, seed);
        Ok(())
    }

    pub fn get(&self, index: usize) -> Result<&Crystal> {
        self.seeds
            .get(&index)
            .ok_or(Error::MissingSeed { index: index + 1 })
    }

    fn validate(&self, index: usize, seed: &Crystal) -> Result<()> {
        let fail = |reason: String| Error::InvalidSeed {
            index: index + 1,
            reason,
        };
        if index >= self.datum.rank() {
            return Err(fail(format!(
                "index out of range for rank {}",
                self.datum.rank()
            )));
        }
        if seed.datum() != &self.datum {
            return Err(fail("root datum differs from the table's".into()));
        }
        let report = seed.check_axioms();
        if !report.ok() {
            return Err(fail(format!(
                "axiom violations: {}",
                report.violations.join("; ")
            )));
        }
        let omega = Weight::fundamental(self.datum.rank(), index);
        let check = seed
            .is_highest_weight_crystal()
            .map_err(|e| fail(e.to_string()))?;
        if !check.is_highest_weight || check.highest_weight.as_ref() != Some(&omega) {
            return Err(fail(format!(
                "not a highest weight crystal of weight {omega}"
            )));
        }
        let expect = self.datum.weyl_dim(&omega)?;
        if seed.len() as u64 != expect {
            return Err(fail(format!(
                "has {} elements but the dimension formula gives {expect}",
                seed.len()
            )));
        }
        Ok(())
    }
}

/// Connected components of the Cartan diagram, each sorted ascending.
fn diagram_blocks(datum: &RootDatum) -> Vec<Vec<usize>> {
    let n = datum.rank();
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut block = Vec::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(i) = stack.pop() {
            block.push(i);
            for j in 0..n {
                if j != i && datum.cartan()[i][j] != 0 && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    blocks
}

/// If the block is a simply-laced chain, its nodes in path order starting
/// from the smaller endpoint; otherwise `None`.
fn chain_order(datum: &RootDatum, block: &[usize]) -> Option<Vec<usize>> {
    let deg = |i: usize| {
        block
            .iter()
            .filter(|&&j| j != i && datum.cartan()[i][j] != 0)
            .count()
    };
    for &i in block {
        for &j in block {
            if i != j && !matches!(datum.cartan()[i][j], 0 | -1) {
                return None;
            }
        }
    }
    if block.len() == 1 {
        return Some(block.to_vec());
    }
    let endpoints: Vec<usize> = block.iter().copied().filter(|&i| deg(i) == 1).collect();
    if endpoints.len() != 2 || block.iter().any(|&i| deg(i) > 2) {
        return None;
    }
    let mut path = vec![endpoints[0]];
    let mut prev = None;
    while path.len() < block.len() {
        let cur = *path.last().unwrap();
        let next = block
            .iter()
            .copied()
            .find(|&j| j != cur && Some(j) != prev && datum.cartan()[cur][j] != 0)?;
        prev = Some(cur);
        path.push(next);
    }
    Some(path)
}

/// Transports a crystal over the standard chain datum `A_s` to a datum whose
/// diagram contains that chain as a connected component: color `m` becomes
/// color `path[m]` and weights are zero outside the chain's coordinates.
fn lift_chain_crystal(datum: &RootDatum, path: &[usize], c: &Crystal) -> Result<Crystal> {
    let rank = datum.rank();
    let weights = c
        .weights()
        .iter()
        .map(|w| {
            let mut full = vec![0i64; rank];
            for (m, &node) in path.iter().enumerate() {
                full[node] = w.coords()[m];
            }
            Weight(full)
        })
        .collect();
    let mut f = vec![vec![None; c.len()]; rank];
    for (m, &node) in path.iter().enumerate() {
        f[node] = c.f_table()[m].clone();
    }
    Crystal::new(datum.clone(), weights, f)
}

/// `B(λ)` as the component of the product of seed sources inside
/// `B(ω_{i_1}) ⊗ … ⊗ B(ω_{i_k})`, factors in increasing index repeated per
/// coordinate of `λ`.
pub fn build_b(seeds: &SeedTable, lam: &Weight) -> Result<Crystal> {
    let datum = seeds.datum();
    if lam.rank() != datum.rank() {
        return Err(Error::RankMismatch {
            expected: datum.rank(),
            got: lam.rank(),
        });
    }
    if !datum.is_dominant(lam) {
        return Err(Error::NotDominant(lam.to_string()));
    }
    let mut factors = Vec::new();
    for (i, &c) in lam.coords().iter().enumerate() {
        for _ in 0..c {
            factors.push(i);
        }
    }
    build_b_from_factors(seeds, &factors)
}

/// As [`build_b`] with an explicit list of fundamental factors; the highest
/// weight of the result is the sum of the corresponding fundamental weights.
pub fn build_b_from_factors(seeds: &SeedTable, factors: &[usize]) -> Result<Crystal> {
    let datum = seeds.datum();
    let lam = factors.iter().fold(Weight::zero(datum.rank()), |acc, &i| {
        acc.add(&Weight::fundamental(datum.rank(), i))
    });
    let mut cur;
    let mut top;
    if factors.is_empty() {
        cur = Crystal::single(datum.clone(), Weight::zero(datum.rank()))?;
        top = 0;
    } else {
        let first = seeds.get(factors[0])?;
        cur = first.clone();
        top = source_of(first)?;
        for &i in &factors[1..] {
            let seed = seeds.get(i)?;
            let t = tensor(&cur, seed)?;
            let flat = top * seed.len() + source_of(seed)?;
            let comp = t
                .components()
                .into_iter()
                .find(|c| c.binary_search(&flat).is_ok())
                .expect("component of an existing element");
            top = comp.binary_search(&flat).unwrap();
            cur = t.subcrystal(&comp)?;
        }
    }
    let check = cur.is_highest_weight_crystal()?;
    if !check.is_highest_weight || check.highest_weight.as_ref() != Some(&lam) {
        return Err(Error::Identification(format!(
            "extracted component is not a highest weight crystal of weight {lam}"
        )));
    }
    if check.source != Some(top) {
        return Err(Error::Identification(
            "extracted component is not generated by the tracked source".into(),
        ));
    }
    Ok(cur)
}

fn source_of(c: &Crystal) -> Result<usize> {
    c.is_highest_weight_crystal()?
        .source
        .ok_or_else(|| Error::Identification("seed crystal has no generating source".into()))
}

/// Whether the component of `b_λ ⊗ b_μ` inside `B(λ) ⊗ B(μ)` is isomorphic
/// to `B(λ+μ)`, which is the defining embedding property of a closed family.
pub fn verify_closed_family(seeds: &SeedTable, lam: &Weight, mu: &Weight) -> Result<bool> {
    let b_lam = build_b(seeds, lam)?;
    let b_mu = build_b(seeds, mu)?;
    let b_sum = build_b(seeds, &lam.add(mu))?;
    let t = tensor(&b_lam, &b_mu)?;
    let flat = source_of(&b_lam)? * b_mu.len() + source_of(&b_mu)?;
    let comp = t
        .components()
        .into_iter()
        .find(|c| c.binary_search(&flat).is_ok())
        .expect("component of an existing element");
    let emb = t.subcrystal(&comp)?;
    emb.crystal_isomorphic(&b_sum)
}
