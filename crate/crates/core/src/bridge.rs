//! Affine bridges between disjoint variable blocks.
//!
//! From a linear relation `Bx + Cy = b` with nonsingular `BᵀB`, the x-block
//! is an affine function of the y-block: premultiplying by `Bᵀ` and then by
//! the Gram inverse gives `x = C̄y + b̄` with `C̄ = -(BᵀB)⁻¹BᵀC` and
//! `b̄ = (BᵀB)⁻¹Bᵀb`. Optimizing a linear objective over the x-set then
//! needs no description of that set at all: push the objective through the
//! bridge, optimize over the y-set, and map the optimizer back.

use crate::error::{Error, Result};
use crate::matrix::{gram_inverse, GramInverse, RatMatrix};
use crate::poly::HPolyhedron;
use crate::rat::{dot, Rat};
use crate::simplex::{simplex_solve, LpOutcome, LpSense};

/// The relation `Bx + Cy = b` coupling an x-block to a y-block.
#[derive(Clone, Debug)]
pub struct GraphL {
    pub x_coeffs: RatMatrix,
    pub y_coeffs: RatMatrix,
    pub rhs: Vec<Rat>,
}

impl GraphL {
    pub fn new(x_coeffs: RatMatrix, y_coeffs: RatMatrix, rhs: Vec<Rat>) -> Result<Self> {
        if x_coeffs.rows() != y_coeffs.rows() || x_coeffs.rows() != rhs.len() {
            return Err(Error::DimensionMismatch(format!(
                "relation blocks disagree: {} x-rows, {} y-rows, {} rhs entries",
                x_coeffs.rows(),
                y_coeffs.rows(),
                rhs.len()
            )));
        }
        Ok(GraphL {
            x_coeffs,
            y_coeffs,
            rhs,
        })
    }

    pub fn x_dim(&self) -> usize {
        self.x_coeffs.cols()
    }

    pub fn y_dim(&self) -> usize {
        self.y_coeffs.cols()
    }
}

/// The derived affine map `x = map · y + offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineBridge {
    pub map: RatMatrix,
    pub offset: Vec<Rat>,
}

/// Outcome of deriving a bridge from a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BridgeDerivation {
    Bridge(AffineBridge),
    /// The Gram matrix `BᵀB` is singular; no bridge exists by this route.
    SingularGram,
}

impl BridgeDerivation {
    pub fn expect_bridge(self, context: &str) -> AffineBridge {
        match self {
            BridgeDerivation::Bridge(b) => b,
            BridgeDerivation::SingularGram => panic!("unexpected singular Gram matrix: {context}"),
        }
    }
}

/// Derive the affine bridge from a relation, or report the singular verdict.
pub fn derive_bridge(l: &GraphL) -> BridgeDerivation {
    let gram_inv = match gram_inverse(&l.x_coeffs) {
        GramInverse::Inverse(m) => m,
        GramInverse::Singular => return BridgeDerivation::SingularGram,
    };
    let bt = l.x_coeffs.transpose();
    let factor = gram_inv.mul(&bt).expect("Gram inverse matches Bᵀ");
    let map = factor
        .mul(&l.y_coeffs)
        .expect("Bᵀ rows match C rows")
        .scale(&Rat::from_int(-1));
    let offset = factor.mul_vec(&l.rhs).expect("Bᵀ rows match rhs");
    BridgeDerivation::Bridge(AffineBridge { map, offset })
}

/// Exact image of a y-point under the bridge.
pub fn apply_bridge(bridge: &AffineBridge, y: &[Rat]) -> Result<Vec<Rat>> {
    let mut x = bridge.map.mul_vec(y)?;
    for (xi, oi) in x.iter_mut().zip(&bridge.offset) {
        *xi += oi;
    }
    Ok(x)
}

/// Result of the two-step optimization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoStepSolution {
    pub y_opt: Vec<Rat>,
    pub x_opt: Vec<Rat>,
    pub value: Rat,
}

/// Minimize `objective · x` where `x = bridge(y)` ranges over `y_set`: solve
/// the pushed-through program over the y-set, then retrieve the x-optimizer.
/// The constant `objective · offset` does not influence the argmin and is
/// added back to the reported value.
pub fn two_step_optimize(
    objective: &[Rat],
    y_set: &HPolyhedron,
    bridge: &AffineBridge,
) -> Result<TwoStepSolution> {
    if objective.len() != bridge.map.rows() {
        return Err(Error::DimensionMismatch(format!(
            "objective has {} entries but the bridge lands in dimension {}",
            objective.len(),
            bridge.map.rows()
        )));
    }
    if y_set.dim != bridge.map.cols() {
        return Err(Error::DimensionMismatch(format!(
            "y-set has dimension {} but the bridge expects {}",
            y_set.dim,
            bridge.map.cols()
        )));
    }
    // Push the objective through the bridge: (alpha^T map) y.
    let pushed: Vec<Rat> = (0..bridge.map.cols())
        .map(|j| {
            (0..bridge.map.rows())
                .map(|i| &objective[i] * &bridge.map[(i, j)])
                .sum()
        })
        .collect();
    match simplex_solve(y_set, &pushed, LpSense::Min)? {
        LpOutcome::Optimal {
            point: y_opt,
            value,
        } => {
            let x_opt = apply_bridge(bridge, &y_opt)?;
            let constant = dot(objective, &bridge.offset);
            Ok(TwoStepSolution {
                y_opt,
                x_opt,
                value: value + constant,
            })
        }
        LpOutcome::Infeasible => Err(Error::InfeasibleSet),
        LpOutcome::Unbounded => Err(Error::UnboundedObjective),
    }
}

/// Report of checking two-step optimization against direct optimization.
#[derive(Clone, Debug)]
pub enum Theorem2Outcome {
    /// Both routes agree exactly and the retrieved optimizer is feasible.
    Verified {
        value: Rat,
        x_direct: Vec<Rat>,
        y_opt: Vec<Rat>,
        x_retrieved: Vec<Rat>,
    },
    /// One of the premises failed on this instance (singular Gram matrix,
    /// ill-posed programs, or an infeasible retrieved point).
    PremiseFailure { reason: String },
    /// Premises looked fine but the two optimal values differ.
    ValueMismatch { direct: Rat, two_step: Rat },
}

impl Theorem2Outcome {
    pub fn verified(&self) -> bool {
        matches!(self, Theorem2Outcome::Verified { .. })
    }
}

/// Check that minimizing `objective` directly over `x_set` and running the
/// two-step procedure through `l` against `y_set` produce the same exact
/// value, with the retrieved optimizer feasible for `x_set`.
pub fn verify_theorem2(
    x_set: &HPolyhedron,
    y_set: &HPolyhedron,
    l: &GraphL,
    objective: &[Rat],
) -> Result<Theorem2Outcome> {
    let bridge = match derive_bridge(l) {
        BridgeDerivation::Bridge(b) => b,
        BridgeDerivation::SingularGram => {
            return Ok(Theorem2Outcome::PremiseFailure {
                reason: "the Gram matrix of the x-block coefficients is singular".into(),
            })
        }
    };
    let direct = simplex_solve(x_set, objective, LpSense::Min)?;
    let (x_direct, direct_value) = match direct {
        LpOutcome::Optimal { point, value } => (point, value),
        LpOutcome::Infeasible => {
            return Ok(Theorem2Outcome::PremiseFailure {
                reason: "the x-set is empty".into(),
            })
        }
        LpOutcome::Unbounded => {
            return Ok(Theorem2Outcome::PremiseFailure {
                reason: "the objective is unbounded over the x-set".into(),
            })
        }
    };
    let two_step = match two_step_optimize(objective, y_set, &bridge) {
        Ok(sol) => sol,
        Err(Error::InfeasibleSet) => {
            return Ok(Theorem2Outcome::PremiseFailure {
                reason: "the y-set is empty".into(),
            })
        }
        Err(Error::UnboundedObjective) => {
            return Ok(Theorem2Outcome::PremiseFailure {
                reason: "the pushed objective is unbounded over the y-set".into(),
            })
        }
        Err(e) => return Err(e),
    };
    if !x_set.contains(&two_step.x_opt)? {
        return Ok(Theorem2Outcome::PremiseFailure {
            reason: "the retrieved optimizer is not feasible for the x-set".into(),
        });
    }
    if direct_value != two_step.value {
        return Ok(Theorem2Outcome::ValueMismatch {
            direct: direct_value,
            two_step: two_step.value,
        });
    }
    Ok(Theorem2Outcome::Verified {
        value: direct_value,
        x_direct,
        y_opt: two_step.y_opt,
        x_retrieved: two_step.x_opt,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::poly::LinRow;
    use crate::rat::ivec;

    #[test]
    fn identity_relation_gives_identity_bridge() {
        // x - y = 0 pins x = y.
        let l = GraphL::new(
            RatMatrix::identity(2),
            RatMatrix::identity(2).scale(&Rat::from_int(-1)),
            ivec(&[0, 0]),
        )
        .unwrap();
        let bridge = derive_bridge(&l).expect_bridge("identity");
        assert_eq!(bridge.map, RatMatrix::identity(2));
        assert_eq!(bridge.offset, ivec(&[0, 0]));
        assert_eq!(
            apply_bridge(&bridge, &ivec(&[1, 2])).unwrap(),
            ivec(&[1, 2])
        );
    }

    #[test]
    fn scalar_relation() {
        // 2x - 4y = 6 pins x = 2y + 3.
        let l = GraphL::new(
            RatMatrix::from_ints(&[&[2]]),
            RatMatrix::from_ints(&[&[-4]]),
            ivec(&[6]),
        )
        .unwrap();
        let bridge = derive_bridge(&l).expect_bridge("scalar");
        assert_eq!(bridge.map, RatMatrix::from_ints(&[&[2]]));
        assert_eq!(bridge.offset, ivec(&[3]));
        assert_eq!(apply_bridge(&bridge, &ivec(&[2])).unwrap(), ivec(&[7]));
        assert_eq!(apply_bridge(&bridge, &ivec(&[0])).unwrap(), ivec(&[3]));
    }

    #[test]
    fn singular_gram_verdict() {
        let l = GraphL::new(
            RatMatrix::from_ints(&[&[1, 1], &[1, 1]]),
            RatMatrix::from_ints(&[&[1], &[0]]),
            ivec(&[0, 0]),
        )
        .unwrap();
        assert_eq!(derive_bridge(&l), BridgeDerivation::SingularGram);
    }

    fn interval_0_5() -> HPolyhedron {
        HPolyhedron::new(
            1,
            vec![
                LinRow::le(ivec(&[-1]), Rat::zero()),
                LinRow::le(ivec(&[1]), Rat::from_int(5)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn two_step_monotone_objectives() {
        let bridge = AffineBridge {
            map: RatMatrix::from_ints(&[&[2]]),
            offset: ivec(&[3]),
        };
        let up = two_step_optimize(&ivec(&[1]), &interval_0_5(), &bridge).unwrap();
        assert_eq!(
            up,
            TwoStepSolution {
                y_opt: ivec(&[0]),
                x_opt: ivec(&[3]),
                value: Rat::from_int(3)
            }
        );
        let down = two_step_optimize(&ivec(&[-1]), &interval_0_5(), &bridge).unwrap();
        assert_eq!(
            down,
            TwoStepSolution {
                y_opt: ivec(&[5]),
                x_opt: ivec(&[13]),
                value: Rat::from_int(-13)
            }
        );
    }

    #[test]
    fn two_step_identity_on_square() {
        let square = HPolyhedron::new(
            2,
            vec![
                LinRow::le(ivec(&[-1, 0]), Rat::zero()),
                LinRow::le(ivec(&[1, 0]), Rat::one()),
                LinRow::le(ivec(&[0, -1]), Rat::zero()),
                LinRow::le(ivec(&[0, 1]), Rat::one()),
            ],
        )
        .unwrap();
        let bridge = AffineBridge {
            map: RatMatrix::identity(2),
            offset: ivec(&[0, 0]),
        };
        let sol = two_step_optimize(&ivec(&[1, 1]), &square, &bridge).unwrap();
        assert_eq!(sol.x_opt, ivec(&[0, 0]));
        assert_eq!(sol.value, Rat::zero());
    }

    #[test]
    fn two_step_unbounded_is_an_error() {
        let free = HPolyhedron::space(1);
        let bridge = AffineBridge {
            map: RatMatrix::identity(1),
            offset: ivec(&[0]),
        };
        assert!(matches!(
            two_step_optimize(&ivec(&[1]), &free, &bridge),
            Err(Error::UnboundedObjective)
        ));
    }

    #[test]
    fn segment_instance_agrees_both_ways() {
        let outcome = verify_theorem2(
            &fixtures::segment_p_hrep(),
            &fixtures::interval_y_hrep(),
            &fixtures::segment_graph(),
            &ivec(&[1, 0, 0]),
        )
        .unwrap();
        match outcome {
            Theorem2Outcome::Verified {
                value, x_retrieved, ..
            } => {
                assert_eq!(value, Rat::from_int(8));
                assert_eq!(x_retrieved, ivec(&[8, 10, 6]));
            }
            other => panic!("expected verification, got {other:?}"),
        }
    }

    #[test]
    fn shifted_square_instance_agrees() {
        // Y = unit square, X = 2Y + (1,1), coupled by x - 2y = (1,1).
        let y_set = HPolyhedron::new(
            2,
            vec![
                LinRow::le(ivec(&[-1, 0]), Rat::zero()),
                LinRow::le(ivec(&[1, 0]), Rat::one()),
                LinRow::le(ivec(&[0, -1]), Rat::zero()),
                LinRow::le(ivec(&[0, 1]), Rat::one()),
            ],
        )
        .unwrap();
        let x_set = HPolyhedron::new(
            2,
            vec![
                LinRow::le(ivec(&[-1, 0]), Rat::from_int(-1)),
                LinRow::le(ivec(&[1, 0]), Rat::from_int(3)),
                LinRow::le(ivec(&[0, -1]), Rat::from_int(-1)),
                LinRow::le(ivec(&[0, 1]), Rat::from_int(3)),
            ],
        )
        .unwrap();
        let l = GraphL::new(
            RatMatrix::identity(2),
            RatMatrix::from_ints(&[&[-2, 0], &[0, -2]]),
            ivec(&[1, 1]),
        )
        .unwrap();
        for objective in [ivec(&[3, -2]), ivec(&[-1, -1]), ivec(&[0, 5])] {
            let outcome = verify_theorem2(&x_set, &y_set, &l, &objective).unwrap();
            assert!(outcome.verified(), "objective {objective:?}: {outcome:?}");
        }
    }

    #[test]
    fn zero_objective_trivially_agrees() {
        let outcome = verify_theorem2(
            &fixtures::segment_p_hrep(),
            &fixtures::interval_y_hrep(),
            &fixtures::segment_graph(),
            &ivec(&[0, 0, 0]),
        )
        .unwrap();
        match outcome {
            Theorem2Outcome::Verified { value, .. } => assert!(value.is_zero()),
            other => panic!("expected verification, got {other:?}"),
        }
    }
}
