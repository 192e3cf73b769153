//! Finite normal crystals: weighted vertex sets with partial raising and
//! lowering operators `e_i`, `f_i` per color.
//!
//! A [`Crystal`] stores the `f` arrows explicitly; `e` is their inverse and
//! the string statistics `ε_i` (steps of `e_i` until undefined) and `φ_i`
//! (steps of `f_i`) are precomputed per element. Colors are `0..rank`
//! internally; serialized formats use 1-based color names.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::root_data::{RootDatum, Weight};
use crate::Result;

/// Maximum number of violation messages retained by [`Crystal::check_axioms`].
const MAX_REPORTED: usize = 32;

/// A finite crystal over a fixed root datum.
#[derive(Clone, PartialEq, Eq)]
pub struct Crystal {
    datum: RootDatum,
    weights: Vec<Weight>,
    /// `f[i][b]` is the target of the color-`i` arrow out of `b`, if any.
    f: Vec<Vec<Option<usize>>>,
    e: Vec<Vec<Option<usize>>>,
    eps: Vec<Vec<i64>>,
    phi: Vec<Vec<i64>>,
}

impl Crystal {
    /// Builds a crystal from its weights and `f` arrows, validating that the
    /// arrows form disjoint finite strings (so that `e`, `ε`, `φ` are
    /// well defined). Axioms relating arrows to weights are checked
    /// separately by [`Crystal::check_axioms`].
    pub fn new(
        datum: RootDatum,
        weights: Vec<Weight>,
        f: Vec<Vec<Option<usize>>>,
    ) -> Result<Crystal> {
        let n = weights.len();
        let rank = datum.rank();
        if f.len() != rank {
            return Err(Error::InvalidStructure(format!(
                "expected {} arrow tables, got {}",
                rank,
                f.len()
            )));
        }
        for (k, w) in weights.iter().enumerate() {
            if w.rank() != rank {
                return Err(Error::InvalidStructure(format!(
                    "element {k} has weight of rank {}, expected {}",
                    w.rank(),
                    rank
                )));
            }
        }
        for (i, fi) in f.iter().enumerate() {
            if fi.len() != n {
                return Err(Error::InvalidStructure(format!(
                    "arrow table for color {} has length {}, expected {}",
                    i + 1,
                    fi.len(),
                    n
                )));
            }
            let mut hit = vec![false; n];
            for (src, tgt) in fi.iter().enumerate() {
                if let Some(t) = tgt {
                    if *t >= n {
                        return Err(Error::InvalidStructure(format!(
                            "arrow f_{} out of element {src} targets {t}, out of range",
                            i + 1
                        )));
                    }
                    if hit[*t] {
                        return Err(Error::InvalidStructure(format!(
                            "f_{} is not injective at target {t}",
                            i + 1
                        )));
                    }
                    hit[*t] = true;
                }
            }
        }

        let mut e = vec![vec![None; n]; rank];
        for (i, fi) in f.iter().enumerate() {
            for (src, tgt) in fi.iter().enumerate() {
                if let Some(t) = tgt {
                    e[i][*t] = Some(src);
                }
            }
        }

        // Walk each string from its head; a color whose walk misses elements
        // on some f-orbit has a cycle.
        let mut eps = vec![vec![0i64; n]; rank];
        let mut phi = vec![vec![0i64; n]; rank];
        for i in 0..rank {
            let mut visited = vec![false; n];
            for head in 0..n {
                if e[i][head].is_some() {
                    continue;
                }
                let mut string = vec![head];
                let mut cur = head;
                while let Some(next) = f[i][cur] {
                    string.push(next);
                    cur = next;
                }
                let len = string.len();
                for (pos, &b) in string.iter().enumerate() {
                    visited[b] = true;
                    eps[i][b] = pos as i64;
                    phi[i][b] = (len - 1 - pos) as i64;
                }
            }
            if let Some(b) = (0..n).find(|&b| !visited[b]) {
                return Err(Error::InvalidStructure(format!(
                    "f_{} has a cycle through element {b}",
                    i + 1
                )));
            }
        }

        Ok(Crystal {
            datum,
            weights,
            f,
            e,
            eps,
            phi,
        })
    }

    /// The one-element crystal of the given weight, with no arrows.
    pub fn single(datum: RootDatum, weight: Weight) -> Result<Crystal> {
        let rank = datum.rank();
        Crystal::new(datum, vec![weight], vec![vec![None]; rank])
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn wt(&self, b: usize) -> &Weight {
        &self.weights[b]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn f(&self, b: usize, color: usize) -> Option<usize> {
        self.f[color][b]
    }

    pub fn e(&self, b: usize, color: usize) -> Option<usize> {
        self.e[color][b]
    }

    pub fn f_table(&self) -> &[Vec<Option<usize>>] {
        &self.f
    }

    /// Number of `e_{color}` steps from `b` to the head of its string.
    pub fn epsilon(&self, b: usize, color: usize) -> i64 {
        self.eps[color][b]
    }

    /// Number of `f_{color}` steps from `b` to the tail of its string.
    pub fn phi(&self, b: usize, color: usize) -> i64 {
        self.phi[color][b]
    }

    /// Checks the crystal axioms element by element:
    /// `wt(f_i b) = wt(b) − α_i`, `e_i` inverse to `f_i`, and
    /// `φ_i(b) − ε_i(b) = ⟨wt(b), α_i^∨⟩`.
    pub fn check_axioms(&self) -> AxiomReport {
        let mut violations = Vec::new();
        let mut violation_count = 0usize;
        let mut checks = 0usize;
        let record = |violations: &mut Vec<String>, msg: String| {
            if violations.len() < MAX_REPORTED {
                violations.push(msg);
            }
        };
        for i in 0..self.rank() {
            let alpha = self.datum.simple_root(i);
            for b in 0..self.len() {
                checks += 1;
                if let Some(c) = self.f[i][b] {
                    if self.weights[c] != self.weights[b].sub(&alpha) {
                        violation_count += 1;
                        record(
                            &mut violations,
                            format!(
                                "wt(f_{}·{b}) = {} but wt({b}) − α_{} = {}",
                                i + 1,
                                self.weights[c],
                                i + 1,
                                self.weights[b].sub(&alpha)
                            ),
                        );
                    }
                    if self.e[i][c] != Some(b) {
                        violation_count += 1;
                        record(
                            &mut violations,
                            format!("e_{} does not invert f_{} at element {b}", i + 1, i + 1),
                        );
                    }
                }
                if let Some(c) = self.e[i][b] {
                    if self.f[i][c] != Some(b) {
                        violation_count += 1;
                        record(
                            &mut violations,
                            format!("f_{} does not invert e_{} at element {b}", i + 1, i + 1),
                        );
                    }
                }
                let pairing = self.weights[b].coords()[i];
                if self.phi[i][b] - self.eps[i][b] != pairing {
                    violation_count += 1;
                    record(
                        &mut violations,
                        format!(
                            "φ_{i1}({b}) − ε_{i1}({b}) = {} but ⟨wt({b}), α_{i1}^∨⟩ = {}",
                            self.phi[i][b] - self.eps[i][b],
                            pairing,
                            i1 = i + 1
                        ),
                    );
                }
            }
        }
        AxiomReport {
            elements: self.len(),
            colors: self.rank(),
            checks,
            violation_count,
            violations,
        }
    }

    /// Elements on which every `e_i` is undefined.
    pub fn highest_weight_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&b| (0..self.rank()).all(|i| self.e[i][b].is_none()))
            .collect()
    }

    /// The multiset of weights.
    pub fn character(&self) -> Character {
        let mut m = BTreeMap::new();
        for w in &self.weights {
            *m.entry(w.clone()).or_insert(0u64) += 1;
        }
        Character(m)
    }

    /// Connected components under all colored arrows (in both directions),
    /// each sorted ascending, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(b) = stack.pop() {
                comp.push(b);
                for i in 0..self.rank() {
                    for next in [self.f[i][b], self.e[i][b]].into_iter().flatten() {
                        if !seen[next] {
                            seen[next] = true;
                            stack.push(next);
                        }
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// The induced subcrystal on a union of components, with elements
    /// renumbered in increasing order of their original ids.
    pub fn subcrystal(&self, ids: &[usize]) -> Result<Crystal> {
        let mut sorted = ids.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut pos = BTreeMap::new();
        for (k, &b) in sorted.iter().enumerate() {
            pos.insert(b, k);
        }
        let weights = sorted.iter().map(|&b| self.weights[b].clone()).collect();
        let mut f = vec![vec![None; sorted.len()]; self.rank()];
        for i in 0..self.rank() {
            for (k, &b) in sorted.iter().enumerate() {
                if let Some(t) = self.f[i][b] {
                    match pos.get(&t) {
                        Some(&kt) => f[i][k] = Some(kt),
                        None => {
                            return Err(Error::InvalidStructure(format!(
                                "arrow f_{} leaves the selected set at element {b}",
                                i + 1
                            )))
                        }
                    }
                }
                if let Some(t) = self.e[i][b] {
                    if !pos.contains_key(&t) {
                        return Err(Error::InvalidStructure(format!(
                            "arrow e_{} leaves the selected set at element {b}",
                            i + 1
                        )));
                    }
                }
            }
        }
        Crystal::new(self.datum.clone(), weights, f)
    }

    /// Restriction to the Levi subdatum on the given node indices (0-based):
    /// keeps only arrows of those colors and projects the weights.
    pub fn restrict(&self, indices: &[usize]) -> Result<Crystal> {
        for &i in indices {
            if i >= self.rank() {
                return Err(Error::InvalidArgument(format!(
                    "node index {} out of range for rank {}",
                    i + 1,
                    self.rank()
                )));
            }
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "node indices must be strictly increasing".into(),
            ));
        }
        let levi = self.datum.levi(indices)?;
        let weights = self.weights.iter().map(|w| w.project(indices)).collect();
        let f = indices.iter().map(|&i| self.f[i].clone()).collect();
        Crystal::new(levi, weights, f)
    }

    /// Evaluates both characterizations of a highest weight crystal: the
    /// generative one (a source with every `e_i` undefined whose `f`-closure
    /// is everything) and the order-theoretic one (a unique such source,
    /// every other element strictly below it and not killed by all `e_i`).
    /// The two must agree; disagreement signals a structural inconsistency.
    pub fn is_highest_weight_crystal(&self) -> Result<HighestWeightCheck> {
        let sources = self.highest_weight_elements();

        let mut by_generation = false;
        let mut generator = None;
        for &s in &sources {
            if self.f_closure_is_everything(s) {
                by_generation = true;
                generator = Some(s);
                break;
            }
        }

        let by_order = sources.len() == 1 && {
            let s = sources[0];
            let lam = &self.weights[s];
            (0..self.len())
                .filter(|&b| b != s)
                .try_fold(true, |acc, b| {
                    Ok::<bool, Error>(acc && self.datum.dominance_lt(&self.weights[b], lam)?)
                })?
        };

        if by_generation != by_order {
            return Err(Error::HighestWeightMismatch(format!(
                "generative characterization says {by_generation}, \
                 order characterization says {by_order}"
            )));
        }
        Ok(HighestWeightCheck {
            is_highest_weight: by_generation,
            source: generator,
            highest_weight: generator.map(|s| self.weights[s].clone()),
        })
    }

    fn f_closure_is_everything(&self, start: usize) -> bool {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![start];
        seen[start] = true;
        let mut count = 1;
        while let Some(b) = stack.pop() {
            for i in 0..self.rank() {
                if let Some(t) = self.f[i][b] {
                    if !seen[t] {
                        seen[t] = true;
                        count += 1;
                        stack.push(t);
                    }
                }
            }
        }
        count == self.len()
    }

    /// Whether two crystals over the same datum are isomorphic as colored
    /// weighted graphs. Comparing over different data is an error.
    pub fn crystal_isomorphic(&self, other: &Crystal) -> Result<bool> {
        if self.datum != other.datum {
            return Err(Error::DatumMismatch);
        }
        if self.len() != other.len() || self.character() != other.character() {
            return Ok(false);
        }
        let comps1 = self.components();
        let comps2 = other.components();
        if comps1.len() != comps2.len() {
            return Ok(false);
        }
        // Component isomorphism is transitive, so greedy matching suffices.
        let mut used = vec![false; comps2.len()];
        for c1 in &comps1 {
            let mut matched = false;
            for (k, c2) in comps2.iter().enumerate() {
                if used[k] || c1.len() != c2.len() {
                    continue;
                }
                if self.components_isomorphic(c1, other, c2) {
                    used[k] = true;
                    matched = true;
                    break;
                }
            }
            if !matched {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Anchored propagation: fix one element of `c1`, try each
    /// weight-compatible image in `c2`, and spread the matching along arrows.
    fn components_isomorphic(&self, c1: &[usize], other: &Crystal, c2: &[usize]) -> bool {
        let anchor = c1[0];
        'cands: for &cand in c2 {
            if other.weights[cand] != self.weights[anchor] {
                continue;
            }
            let mut map: BTreeMap<usize, usize> = BTreeMap::new();
            let mut image: BTreeMap<usize, usize> = BTreeMap::new();
            map.insert(anchor, cand);
            image.insert(cand, anchor);
            let mut queue = vec![anchor];
            while let Some(a) = queue.pop() {
                let b = map[&a];
                if other.weights[b] != self.weights[a] {
                    continue 'cands;
                }
                for i in 0..self.rank() {
                    for (na, nb) in [(self.f[i][a], other.f[i][b]), (self.e[i][a], other.e[i][b])] {
                        match (na, nb) {
                            (None, None) => {}
                            (Some(x), Some(y)) => {
                                let known = map.get(&x);
                                let known_rev = image.get(&y);
                                match (known, known_rev) {
                                    (None, None) => {
                                        map.insert(x, y);
                                        image.insert(y, x);
                                        queue.push(x);
                                    }
                                    (Some(&y2), Some(&x2)) if y2 == y && x2 == x => {}
                                    _ => continue 'cands,
                                }
                            }
                            _ => continue 'cands,
                        }
                    }
                }
            }
            if map.len() == c1.len() {
                return true;
            }
        }
        false
    }
}

impl fmt::Debug for Crystal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Crystal {{ rank: {}, elements: {} }}",
            self.rank(),
            self.len()
        )
    }
}

/// Outcome of [`Crystal::check_axioms`].
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub elements: usize,
    pub colors: usize,
    /// Number of (element, color) pairs examined.
    pub checks: usize,
    pub violation_count: usize,
    /// First few violation messages (at most [`MAX_REPORTED`]).
    pub violations: Vec<String>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.violation_count == 0
    }
}

/// Outcome of [`Crystal::is_highest_weight_crystal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighestWeightCheck {
    pub is_highest_weight: bool,
    /// The generating source element, when the crystal is highest weight.
    pub source: Option<usize>,
    pub highest_weight: Option<Weight>,
}

/// A multiset of weights with multiplicities.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Character(BTreeMap<Weight, u64>);

impl Character {
    pub fn mult(&self, w: &Weight) -> u64 {
        self.0.get(w).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.0.iter().map(|(w, &m)| (w, m))
    }

    pub fn support(&self) -> impl Iterator<Item = &Weight> {
        self.0.keys()
    }

    pub fn insert(&mut self, w: Weight, mult: u64) {
        if mult > 0 {
            *self.0.entry(w).or_insert(0) += mult;
        }
    }
}

impl FromIterator<(Weight, u64)> for Character {
    fn from_iter<T: IntoIterator<Item = (Weight, u64)>>(iter: T) -> Character {
        let mut c = Character::default();
        for (w, m) in iter {
            c.insert(w, m);
        }
        c
    }
}
