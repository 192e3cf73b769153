//! Tensor product of crystals.
//!
//! The product of `B₁` and `B₂` lives on the pairs `(b₁, b₂)`, flattened to
//! the id `b₁·|B₂| + b₂`. The arrows follow Kashiwara's case rule: `f_i`
//! acts on the left factor when `ε_i(b₁) ≥ φ_i(b₂)` and on the right factor
//! otherwise, with `e_i` acting on the left exactly when `ε_i(b₁) > φ_i(b₂)`.
//! Only the `f` arrows are constructed; the `e` arrows arise as their
//! inverses, and the closed-form expressions for `ε_i` and `φ_i` of a pair
//! are kept as test invariants rather than definitions.

use crate::crystal::Crystal;
use crate::error::Error;
use crate::Result;

/// Kashiwara tensor product. Both factors must share a root datum.
pub fn tensor(b1: &Crystal, b2: &Crystal) -> Result<Crystal> {
    if b1.datum() != b2.datum() {
        return Err(Error::DatumMismatch);
    }
    let (n1, n2) = (b1.len(), b2.len());
    let rank = b1.rank();
    let mut weights = Vec::with_capacity(n1 * n2);
    for x in 0..n1 {
        for y in 0..n2 {
            weights.push(b1.wt(x).add(b2.wt(y)));
        }
    }
    let mut f = vec![vec![None; n1 * n2]; rank];
    for i in 0..rank {
        for x in 0..n1 {
            for y in 0..n2 {
                let id = x * n2 + y;
                f[i][id] = if b1.epsilon(x, i) >= b2.phi(y, i) {
                    b1.f(x, i).map(|fx| fx * n2 + y)
                } else {
                    b2.f(y, i).map(|fy| x * n2 + fy)
                };
            }
        }
    }
    Crystal::new(b1.datum().clone(), weights, f)
}

/// Whether the identity on flattened indices carries `(B₁⊗B₂)⊗B₃` to
/// `B₁⊗(B₂⊗B₃)` preserving weights and all arrows. The two bracketings
/// flatten `(x, y, z)` to the same id `x·|B₂||B₃| + y·|B₃| + z`, so this is
/// an exact structural comparison.
pub fn check_associator(b1: &Crystal, b2: &Crystal, b3: &Crystal) -> Result<bool> {
    let left = tensor(&tensor(b1, b2)?, b3)?;
    let right = tensor(b1, &tensor(b2, b3)?)?;
    Ok(left.weights() == right.weights() && left.f_table() == right.f_table())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{sl2_crystal, standard_crystal_a};
    use crate::crystal::Character;
    use crate::root_data::Weight;

    #[test]
    fn rank_one_square_structure() {
        let b = sl2_crystal(1).unwrap();
        let t = tensor(&b, &b).unwrap();
        assert_eq!(t.len(), 4);
        // ids: 0 = top⊗top, 1 = top⊗bot, 2 = bot⊗top, 3 = bot⊗bot
        assert_eq!(t.f(0, 0), Some(1)); // right factor: ε(top)=0 < φ(top)=1
        assert_eq!(t.f(1, 0), Some(3)); // left factor: ε(top)=0 ≥ φ(bot)=0
        assert_eq!(t.f(2, 0), None);
        assert_eq!(t.f(3, 0), None);
        assert_eq!(t.e(3, 0), Some(1)); // raising bot⊗bot moves the left factor
        assert_eq!(t.wt(1), &Weight(vec![0]));
        assert_eq!(t.wt(3), &Weight(vec![-2]));
        let comps = t.components();
        assert_eq!(comps, vec![vec![0, 1, 3], vec![2]]);
        assert!(t.check_axioms().ok());
    }

    #[test]
    fn datum_mismatch_is_an_error() {
        let b1 = sl2_crystal(1).unwrap();
        let b2 = standard_crystal_a(2).unwrap();
        assert!(matches!(tensor(&b1, &b2), Err(Error::DatumMismatch)));
    }

    #[test]
    fn tensor_with_unit_is_isomorphic() {
        let unit_a1 = sl2_crystal(0).unwrap();
        for l in 0..=4 {
            let b = sl2_crystal(l).unwrap();
            assert!(tensor(&b, &unit_a1)
                .unwrap()
                .crystal_isomorphic(&b)
                .unwrap());
            assert!(tensor(&unit_a1, &b)
                .unwrap()
                .crystal_isomorphic(&b)
                .unwrap());
        }
        let std3 = standard_crystal_a(2).unwrap();
        let unit_a2 = Crystal::single(std3.datum().clone(), Weight::zero(2)).unwrap();
        assert!(tensor(&std3, &unit_a2)
            .unwrap()
            .crystal_isomorphic(&std3)
            .unwrap());
    }

    #[test]
    fn raising_rule_matches_the_case_split() {
        let pairs = [
            (sl2_crystal(2).unwrap(), sl2_crystal(3).unwrap()),
            (
                standard_crystal_a(2).unwrap(),
                standard_crystal_a(2).unwrap(),
            ),
        ];
        for (b1, b2) in &pairs {
            let t = tensor(b1, b2).unwrap();
            let n2 = b2.len();
            for x in 0..b1.len() {
                for y in 0..n2 {
                    for i in 0..t.rank() {
                        let expect = if b1.epsilon(x, i) > b2.phi(y, i) {
                            b1.e(x, i).map(|ex| ex * n2 + y)
                        } else {
                            b2.e(y, i).map(|ey| x * n2 + ey)
                        };
                        assert_eq!(t.e(x * n2 + y, i), expect);
                    }
                }
            }
        }
    }

    #[test]
    fn closed_forms_for_string_statistics() {
        let pairs = [
            (sl2_crystal(1).unwrap(), sl2_crystal(1).unwrap()),
            (sl2_crystal(3).unwrap(), sl2_crystal(2).unwrap()),
            (
                standard_crystal_a(2).unwrap(),
                standard_crystal_a(2).unwrap(),
            ),
            (
                standard_crystal_a(3).unwrap(),
                standard_crystal_a(3).unwrap(),
            ),
        ];
        for (b1, b2) in &pairs {
            let t = tensor(b1, b2).unwrap();
            let n2 = b2.len();
            for x in 0..b1.len() {
                for y in 0..n2 {
                    for i in 0..t.rank() {
                        let (e1, p1) = (b1.epsilon(x, i), b1.phi(x, i));
                        let (e2, p2) = (b2.epsilon(y, i), b2.phi(y, i));
                        let eps = e2.max(e1 - p2 + e2);
                        let phi = p1.max(p2 - e1 + p1);
                        assert_eq!(t.epsilon(x * n2 + y, i), eps);
                        assert_eq!(t.phi(x * n2 + y, i), phi);
                    }
                }
            }
        }
    }

    #[test]
    fn character_multiplies() {
        let b1 = sl2_crystal(2).unwrap();
        let b2 = sl2_crystal(1).unwrap();
        let t = tensor(&b1, &b2).unwrap();
        assert_eq!(t.len(), b1.len() * b2.len());
        let (c1, c2) = (b1.character(), b2.character());
        let mut expect = Character::default();
        for (w1, m1) in c1.iter() {
            for (w2, m2) in c2.iter() {
                expect.insert(w1.add(w2), m1 * m2);
            }
        }
        assert_eq!(t.character(), expect);
    }

    #[test]
    fn associativity_on_small_triples() {
        let b = sl2_crystal(1).unwrap();
        assert!(check_associator(&b, &b, &b).unwrap());
        let s = standard_crystal_a(2).unwrap();
        assert!(check_associator(&s, &s, &s).unwrap());
        let unit = Crystal::single(s.datum().clone(), Weight::zero(2)).unwrap();
        assert!(check_associator(&s, &unit, &unit).unwrap());
        let mixed = (
            sl2_crystal(2).unwrap(),
            sl2_crystal(1).unwrap(),
            sl2_crystal(3).unwrap(),
        );
        assert!(check_associator(&mixed.0, &mixed.1, &mixed.2).unwrap());
    }

    #[test]
    fn three_way_datum_check() {
        let a1 = sl2_crystal(1).unwrap();
        let a2 = standard_crystal_a(2).unwrap();
        assert!(check_associator(&a1, &a1, &a2).is_err());
    }
}
